//! Irreducible character tables.
//!
//! Irrep 0 is always the trivial character. Row order per engine:
//! Murnaghan–Nakayama tables follow partitions in descending lexicographic
//! order, abelian tables follow the dual-group index, product tables follow
//! factor pairs `(π₁, π₂) ↦ π₁·k₂ + π₂`, and generic tables sort by
//! `(dim, values)` with larger real then imaginary parts first.

mod abelian;
pub mod cyclo;
pub mod dixon;
pub mod mn;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::group::Group;
use abelian::AbelianChars;
pub use cyclo::{Cyclo, RamanujanCache};
pub use mn::{mn_value, Partition};

/// Tables with more irreps than this are verified on sampled pairs.
const FULL_VERIFY_LIMIT: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    Abelian,
    Mn,
    Dixon,
    Product,
    /// Values supplied by the caller in floating point.
    Float,
}

impl FromStr for Engine {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "abelian" => Ok(Engine::Abelian),
            "mn" => Ok(Engine::Mn),
            "dixon" => Ok(Engine::Dixon),
            _ => Err(Error::parse(format!("unknown engine '{s}' (abelian|mn|dixon)"))),
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Engine::Abelian => "abelian",
            Engine::Mn => "mn",
            Engine::Dixon => "dixon",
            Engine::Product => "product",
            Engine::Float => "float",
        };
        f.write_str(s)
    }
}

enum Data {
    Dense {
        dims: Vec<u64>,
        values: Vec<Vec<Complex64>>,
        exact: Option<Vec<Vec<Cyclo>>>,
    },
    Abelian(AbelianChars),
    Product(Box<CharacterTable>, Box<CharacterTable>),
}

/// Character table of a group; immutable once built.
pub struct CharacterTable {
    group: Group,
    engine: Engine,
    /// Values are in `Q(ζ_modulus)` when exact.
    modulus: u64,
    data: Data,
}

impl fmt::Debug for CharacterTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CharacterTable({}, {}, k={})", self.group.name(), self.engine, self.irrep_count())
    }
}

impl CharacterTable {
    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn engine(&self) -> Engine {
        self.engine
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_exact(&self) -> bool {
        match &self.data {
            Data::Dense { exact, .. } => exact.is_some(),
            Data::Abelian(_) => true,
            Data::Product(a, b) => a.is_exact() && b.is_exact(),
        }
    }

    pub fn irrep_count(&self) -> usize {
        self.group.class_count()
    }

    /// Index of the trivial character.
    pub fn trivial(&self) -> usize {
        0
    }

    pub fn dim(&self, pi: usize) -> u64 {
        match &self.data {
            Data::Dense { dims, .. } => dims[pi],
            Data::Abelian(_) => 1,
            Data::Product(a, b) => {
                let k2 = b.irrep_count();
                a.dim(pi / k2) * b.dim(pi % k2)
            }
        }
    }

    pub fn dims(&self) -> Vec<u64> {
        (0..self.irrep_count()).map(|pi| self.dim(pi)).collect()
    }

    fn split_class(&self, c: usize) -> (usize, usize) {
        self.group.product_class_split(c).expect("product table on a product group")
    }

    pub fn value(&self, pi: usize, c: usize) -> Complex64 {
        match &self.data {
            Data::Dense { values, .. } => values[pi][c],
            Data::Abelian(a) => a.value(pi, c),
            Data::Product(a, b) => {
                let k2 = b.irrep_count();
                let (c1, c2) = self.split_class(c);
                a.value(pi / k2, c1) * b.value(pi % k2, c2)
            }
        }
    }

    pub fn row(&self, pi: usize) -> Vec<Complex64> {
        (0..self.group.class_count()).map(|c| self.value(pi, c)).collect()
    }

    /// Exact value in `Q(ζ_modulus)`, when the table is exact.
    pub fn exact_value(&self, pi: usize, c: usize) -> Option<Cyclo> {
        match &self.data {
            Data::Dense { exact, .. } => exact.as_ref().map(|v| v[pi][c].clone()),
            Data::Abelian(a) => Some(Cyclo::root(a.exponent(pi, c), a.e)),
            Data::Product(a, b) => {
                let k2 = b.irrep_count();
                let (c1, c2) = self.split_class(c);
                let x = a.exact_value(pi / k2, c1)?.lift(a.modulus, self.modulus);
                let y = b.exact_value(pi % k2, c2)?.lift(b.modulus, self.modulus);
                Some(x.mul(&y, self.modulus))
            }
        }
    }

    /// For abelian tables: `χ_π(x) = ζ_e^j`, returns `j`.
    pub fn abelian_exponent(&self, pi: usize, x: usize) -> Option<u64> {
        match &self.data {
            Data::Abelian(a) => Some(a.exponent(pi, x)),
            _ => None,
        }
    }

    /// Builds a floating-point table from caller-supplied rows (irrep × class).
    pub fn from_values(group: &Group, dims: Vec<u64>, values: Vec<Vec<Complex64>>) -> Result<Self> {
        let k = group.class_count();
        if dims.len() != k || values.len() != k || values.iter().any(|r| r.len() != k) {
            return Err(Error::invalid(format!("table for {} must be {k}×{k}", group.name())));
        }
        Ok(CharacterTable {
            group: group.clone(),
            engine: Engine::Float,
            modulus: 1,
            data: Data::Dense { dims, values, exact: None },
        })
    }

    fn dense_exact(group: &Group, engine: Engine, modulus: u64, dims: Vec<u64>, exact: Vec<Vec<Cyclo>>) -> Self {
        let values = exact
            .iter()
            .map(|row| row.iter().map(|v| v.to_complex(modulus)).collect())
            .collect();
        CharacterTable {
            group: group.clone(),
            engine,
            modulus,
            data: Data::Dense { dims, values, exact: Some(exact) },
        }
    }
}

/// Explicit one-dimensional characters of an abelian group.
pub fn abelian_table(g: &Group) -> Result<CharacterTable> {
    let chars = AbelianChars::build(g)?;
    Ok(CharacterTable { group: g.clone(), engine: Engine::Abelian, modulus: chars.e, data: Data::Abelian(chars) })
}

/// Murnaghan–Nakayama table of `S_n` as built by [`Group::build`].
pub fn mn_table(g: &Group) -> Result<CharacterTable> {
    let types = g
        .classes()
        .cycle_types()
        .ok_or_else(|| Error::invalid(format!("{} is not a symmetric group family", g.name())))?;
    let n = g.permutation_degree().expect("symmetric family") as u32;
    let ints = mn::integer_table(n, &types);
    let dims: Vec<u64> = ints.iter().map(|r| r[0] as u64).collect();
    let exact = ints.iter().map(|r| r.iter().map(|&v| Cyclo::integer(v)).collect()).collect();
    Ok(CharacterTable::dense_exact(g, Engine::Mn, 1, dims, exact))
}

/// Table of `S_n` for `n ≤ 10`.
pub fn symmetric_table(n: usize) -> Result<CharacterTable> {
    if n > 10 {
        return Err(Error::Budget(format!("symmetric tables are limited to n ≤ 10, got {n}")));
    }
    mn_table(&Group::build(&crate::group::GroupSpec::Symmetric(n))?)
}

fn cmp_rows(a: (u64, &[Complex64]), b: (u64, &[Complex64])) -> Ordering {
    const TOL: f64 = 1e-9;
    a.0.cmp(&b.0).then_with(|| {
        for (x, y) in a.1.iter().zip(b.1) {
            if (x.re - y.re).abs() > TOL {
                return y.re.total_cmp(&x.re);
            }
            if (x.im - y.im).abs() > TOL {
                return y.im.total_cmp(&x.im);
            }
        }
        Ordering::Equal
    })
}

/// Generic Dixon–Schneider table.
pub fn dixon_table(g: &Group) -> Result<CharacterTable> {
    let (dims, exact) = dixon::dixon_values(g)?;
    let e = g.exponent();
    let complex: Vec<Vec<Complex64>> = exact
        .iter()
        .map(|row| row.iter().map(|v| v.to_complex(e)).collect())
        .collect();
    let mut idx: Vec<usize> = (0..dims.len()).collect();
    idx.sort_by(|&i, &j| cmp_rows((dims[i], &complex[i]), (dims[j], &complex[j])));
    let dims: Vec<u64> = idx.iter().map(|&i| dims[i]).collect();
    let mut slots: Vec<Option<Vec<Cyclo>>> = exact.into_iter().map(Some).collect();
    let exact: Vec<Vec<Cyclo>> = idx.iter().map(|&i| slots[i].take().unwrap()).collect();
    let table = CharacterTable::dense_exact(g, Engine::Dixon, e, dims, exact);
    let report = verify_table(&table);
    if !report.pass {
        return Err(Error::LiftFailure(format!(
            "lifted table fails orthogonality (row residual {:.3e})",
            report.row_residual
        )));
    }
    Ok(table)
}

/// Table of a direct product from factor tables.
pub fn product_table(g: &Group, left: CharacterTable, right: CharacterTable) -> Result<CharacterTable> {
    match g.product_factors() {
        Some((a, b)) if a == left.group() && b == right.group() => {}
        _ => return Err(Error::GroupMismatch("factor tables do not match the product".into())),
    }
    let modulus = crate::nt::lcm(left.modulus, right.modulus);
    Ok(CharacterTable {
        group: g.clone(),
        engine: Engine::Product,
        modulus,
        data: Data::Product(Box::new(left), Box::new(right)),
    })
}

/// Table by a requested engine.
pub fn table_with_engine(g: &Group, engine: Engine) -> Result<CharacterTable> {
    match engine {
        Engine::Abelian => abelian_table(g),
        Engine::Mn => mn_table(g),
        Engine::Dixon => dixon_table(g),
        Engine::Product => {
            let (a, b) = g
                .product_factors()
                .ok_or_else(|| Error::invalid(format!("{} is not a direct product", g.name())))?;
            product_table(g, auto_table(a)?, auto_table(b)?)
        }
        Engine::Float => Err(Error::invalid("float tables are built from explicit values")),
    }
}

/// Picks the engine from the group family: products, abelian, symmetric, else generic.
pub fn auto_table(g: &Group) -> Result<CharacterTable> {
    if let Some((a, b)) = g.product_factors() {
        return product_table(g, auto_table(a)?, auto_table(b)?);
    }
    if g.is_abelian() {
        return abelian_table(g);
    }
    if g.classes().cycle_types().is_some() {
        return mn_table(g);
    }
    dixon_table(g)
}

/// Orthogonality and degree checks of a table.
#[derive(Debug, Clone, PartialEq)]
pub struct TableReport {
    pub row_residual: f64,
    pub col_residual: f64,
    pub dim_square_sum: u128,
    pub order: u64,
    /// Value at the identity equals the degree for every irrep.
    pub identity_column_ok: bool,
    /// Pointwise products of characters are characters (abelian groups of order ≤ 200).
    pub closed_under_product: Option<bool>,
    /// Orthogonality was checked on a deterministic sample of pairs.
    pub sampled: bool,
    pub pass: bool,
}

/// Residual threshold for a passing table.
pub const TABLE_TOLERANCE: f64 = 1e-10;

pub fn verify_table(t: &CharacterTable) -> TableReport {
    let g = t.group();
    let k = t.irrep_count();
    let n = g.order() as f64;
    let sizes: Vec<f64> = (0..k).map(|c| g.class_size(c) as f64).collect();
    let dims = t.dims();
    let dim_square_sum: u128 = dims.iter().map(|&d| d as u128 * d as u128).sum();
    let identity_column_ok = (0..k).all(|pi| (t.value(pi, 0) - Complex64::new(dims[pi] as f64, 0.0)).norm() < 1e-9);

    let sampled = k > FULL_VERIFY_LIMIT;
    let pairs: Vec<(usize, usize)> = if sampled {
        let mut state = 0x9e37_79b9_7f4a_7c15u64;
        (0..200)
            .map(|_| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((state >> 20) as usize % k, (state >> 40) as usize % k)
            })
            .chain((0..k.min(20)).map(|i| (i, i)))
            .collect()
    } else {
        (0..k).flat_map(|a| (a..k).map(move |b| (a, b))).collect()
    };
    let rows: Vec<Vec<Complex64>> = if sampled { Vec::new() } else { (0..k).map(|pi| t.row(pi)).collect() };
    let get = |pi: usize, c: usize| if sampled { t.value(pi, c) } else { rows[pi][c] };

    let mut row_residual = 0f64;
    let mut col_residual = 0f64;
    for &(a, b) in &pairs {
        let mut s = Complex64::new(0.0, 0.0);
        for c in 0..k {
            s += get(a, c) * get(b, c).conj() * sizes[c];
        }
        let target = if a == b { 1.0 } else { 0.0 };
        row_residual = row_residual.max((s / n - target).norm());
        let mut s = Complex64::new(0.0, 0.0);
        for pi in 0..k {
            s += get(pi, a) * get(pi, b).conj();
        }
        let target = if a == b { n / sizes[a] } else { 0.0 };
        col_residual = col_residual.max((s - target).norm() * sizes[a] / n);
    }

    let closed_under_product = (g.is_abelian() && g.order() <= 200).then(|| {
        (0..k).all(|a| {
            (0..k).all(|b| {
                let prod: Vec<Complex64> = (0..k).map(|c| get(a, c) * get(b, c)).collect();
                (0..k).any(|r| (0..k).all(|c| (get(r, c) - prod[c]).norm() < 1e-9))
            })
        })
    });

    let pass = row_residual <= TABLE_TOLERANCE
        && col_residual <= TABLE_TOLERANCE
        && dim_square_sum == g.order() as u128
        && identity_column_ok
        && closed_under_product.unwrap_or(true);
    TableReport {
        row_residual,
        col_residual,
        dim_square_sum,
        order: g.order() as u64,
        identity_column_ok,
        closed_under_product,
        sampled,
        pass,
    }
}
