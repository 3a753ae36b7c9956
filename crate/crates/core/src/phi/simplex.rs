//! Dense two-phase tableau simplex with Bland's rule, over exact rationals or `f64`.
//!
//! Standard form: minimize `c·x` subject to `A x = b`, `x ≥ 0`.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use nalgebra::DMatrix;
use num_traits::{Signed, ToPrimitive, Zero};

/// Scalars the simplex can pivot with.
pub trait LpNum: Clone + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn is_pos(&self) -> bool;
    fn is_neg(&self) -> bool;
    fn lt(&self, o: &Self) -> bool;
    fn to_f64(&self) -> f64;
    fn is_zero_num(&self) -> bool {
        !self.is_pos() && !self.is_neg()
    }
    /// Large enough to divide by without amplifying rounding.
    fn is_stable_pivot(&self) -> bool {
        !self.is_zero_num()
    }
    /// Inexact scalars rebuild the tableau from the original rows periodically.
    const INEXACT: bool = false;
    fn from_f64(v: f64) -> Self;
    fn neg(&self) -> Self {
        Self::zero().sub(self)
    }
}

/// Sign tolerance for floating-point pivoting.
pub const FLOAT_EPS: f64 = 1e-9;

/// Smallest magnitude accepted as a floating-point pivot.
pub const PIVOT_EPS: f64 = 1e-7;

/// Largest `‖Ax − b‖∞` accepted from the floating-point solver.
pub const RESIDUAL_TOLERANCE: f64 = 1e-7;

impl LpNum for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn is_pos(&self) -> bool {
        *self > FLOAT_EPS
    }
    fn is_neg(&self) -> bool {
        *self < -FLOAT_EPS
    }
    fn lt(&self, o: &Self) -> bool {
        *self < *o - FLOAT_EPS * (1.0 + o.abs())
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_stable_pivot(&self) -> bool {
        self.abs() > PIVOT_EPS
    }
    const INEXACT: bool = true;
    fn from_f64(v: f64) -> Self {
        v
    }
}

impl LpNum for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn is_pos(&self) -> bool {
        self.is_positive()
    }
    fn is_neg(&self) -> bool {
        self.is_negative()
    }
    fn lt(&self, o: &Self) -> bool {
        self < o
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn is_zero_num(&self) -> bool {
        self.is_zero()
    }
    fn from_f64(v: f64) -> Self {
        BigRational::from_float(v).unwrap_or_else(Zero::zero)
    }
}

/// `min c·x`, `A x = b`, `x ≥ 0`.
#[derive(Clone, Debug)]
pub struct Lp<T> {
    pub a: Vec<Vec<T>>,
    pub b: Vec<T>,
    pub c: Vec<T>,
}

#[derive(Clone, Debug)]
pub struct LpSolution<T> {
    pub x: Vec<T>,
    pub value: T,
    /// Multipliers `y` with `c − Aᵀy ≥ 0` at optimality.
    pub dual: Vec<T>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpError {
    Infeasible,
    Unbounded,
    IterationLimit,
    /// The float solution violates the constraints beyond tolerance.
    NumericalDrift,
}

struct Tableau<T> {
    /// `m` constraint rows, each `n + 1` wide (last entry is the right side).
    rows: Vec<Vec<T>>,
    /// The rows before any pivot, for refactorization.
    original: Vec<Vec<T>>,
    basis: Vec<usize>,
    n: usize,
}

enum RatioTest {
    Row(usize),
    Unbounded,
    /// Only pivots below the stability threshold are available.
    Unstable,
}

/// Pivots between refactorizations of an inexact tableau.
const REFACTOR_EVERY: usize = 25;

/// Base size of the float right-side perturbation.
const PERTURBATION: f64 = 5e-9;

impl<T: LpNum> Tableau<T> {
    fn pivot(&mut self, r: usize, col: usize) {
        let p = self.rows[r][col].clone();
        for v in self.rows[r].iter_mut() {
            *v = v.div(&p);
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero_num() {
                continue;
            }
            let f = row[col].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero_num() {
                    *v = v.sub(&f.mul(pv));
                }
            }
            row[col] = T::zero();
        }
        self.basis[r] = col;
    }

    /// Leaving row for `col` by the minimum-ratio test, ties to the smallest basic index.
    fn ratio_test(&self, col: usize) -> RatioTest {
        let mut best: Option<(usize, T)> = None;
        let mut any_positive = false;
        for (i, row) in self.rows.iter().enumerate() {
            if !row[col].is_pos() {
                continue;
            }
            any_positive = true;
            if !row[col].is_stable_pivot() {
                continue;
            }
            let ratio = row[self.n].div(&row[col]);
            let better = match &best {
                None => true,
                Some((bi, br)) => ratio.lt(br) || (!br.lt(&ratio) && self.basis[i] < self.basis[*bi]),
            };
            if better {
                best = Some((i, ratio));
            }
        }
        match best {
            Some((r, _)) => RatioTest::Row(r),
            None if any_positive => RatioTest::Unstable,
            None => RatioTest::Unbounded,
        }
    }

    /// Recomputes `B⁻¹ [A | b]` from the original rows, discarding accumulated
    /// rounding. Leaves the tableau unchanged if the basis is numerically singular.
    fn refactor(&mut self) {
        let m = self.rows.len();
        let b = DMatrix::from_fn(m, m, |i, k| self.original[i][self.basis[k]].to_f64());
        let Some(inv) = b.lu().try_inverse() else { return };
        let full = DMatrix::from_fn(m, self.n + 1, |i, j| self.original[i][j].to_f64());
        let fresh = inv * full;
        for (i, row) in self.rows.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                let x = fresh[(i, j)];
                *v = T::from_f64(if x.abs() < 1e-13 { 0.0 } else { x });
            }
            // Basic columns are unit vectors by construction.
            for (k, &bj) in self.basis.iter().enumerate() {
                row[bj] = if k == i { T::one() } else { T::zero() };
            }
        }
    }

    /// Reduced costs `c_j − c_B B⁻¹ A_j` for the allowed columns.
    fn reduced(&self, cost: &[T], j: usize) -> T {
        let mut d = cost[j].clone();
        for (i, row) in self.rows.iter().enumerate() {
            if !row[j].is_zero_num() {
                d = d.sub(&cost[self.basis[i]].mul(&row[j]));
            }
        }
        d
    }

    /// Minimizes `cost` over columns `< allowed` from the current basis.
    fn optimize(&mut self, cost: &[T], allowed: usize, limit: usize) -> Result<(), LpError> {
        // Reduced costs, kept current through pivots instead of recomputed per column.
        let mut z: Vec<T> = (0..allowed).map(|j| self.reduced(cost, j)).collect();
        let mut basic = vec![false; self.n];
        for &b in &self.basis {
            basic[b] = true;
        }
        // A refactorization costs about as much as `m / 4` pivots; amortize it.
        let refactor_every = REFACTOR_EVERY.max(self.rows.len() / 4);
        for step in 0..limit {
            if T::INEXACT && step > 0 && step % refactor_every == 0 {
                self.refactor();
                z = (0..allowed).map(|j| self.reduced(cost, j)).collect();
            }
            // Exact scalars use Bland's rule. Float programs are perturbed, hence
            // nondegenerate, so they take the most negative reduced cost first.
            // Columns whose only positive entries are too small to pivot on are
            // passed over, and optimality is declared if none remain.
            let mut order: Vec<usize> = (0..allowed).filter(|&j| !basic[j] && z[j].is_neg()).collect();
            if T::INEXACT {
                order.sort_by(|&a, &b| z[a].to_f64().total_cmp(&z[b].to_f64()));
            }
            let mut choice = None;
            for col in order {
                if T::INEXACT {
                    // Confirm the incrementally updated cost before acting on it.
                    z[col] = self.reduced(cost, col);
                    if !z[col].is_neg() {
                        continue;
                    }
                }
                match self.ratio_test(col) {
                    RatioTest::Row(r) => {
                        choice = Some((r, col));
                        break;
                    }
                    RatioTest::Unbounded => return Err(LpError::Unbounded),
                    RatioTest::Unstable => continue,
                }
            }
            let Some((r, col)) = choice else {
                if T::INEXACT && step > 0 {
                    self.refactor();
                }
                return Ok(());
            };
            basic[self.basis[r]] = false;
            basic[col] = true;
            self.pivot(r, col);
            let f = z[col].clone();
            for (zj, pj) in z.iter_mut().zip(&self.rows[r]) {
                if !pj.is_zero_num() {
                    *zj = zj.sub(&f.mul(pj));
                }
            }
            z[col] = T::zero();
        }
        Err(LpError::IterationLimit)
    }
}

/// Positive right-side shift for float programs, distinct per row, so that
/// degenerate vertices (many zero right sides) split and pivoting cannot cycle.
/// Its size stays an order below the residual tolerance.
fn perturbation<T: LpNum>(row: usize, b: &T) -> T {
    if !T::INEXACT {
        return T::zero();
    }
    let spread = ((row as f64 + 1.0) * 0.618_033_988_749_895).fract();
    T::from_f64(PERTURBATION * (1.0 + spread) * (1.0 + b.to_f64().abs()))
}

/// Solves the program by two-phase simplex.
pub fn solve<T: LpNum>(lp: &Lp<T>) -> Result<LpSolution<T>, LpError> {
    let m = lp.a.len();
    let n = lp.c.len();
    // Columns: n originals, then m artificials, then the right side.
    let width = n + m;
    // A column with a single nonzero entry, scaled to 1 with a nonnegative right
    // side, starts in the basis; only the remaining rows need an artificial.
    let mut start: Vec<Option<usize>> = vec![None; m];
    let mut scale: Vec<T> = lp.b.iter().map(|b| if b.is_neg() { T::from_i64(-1) } else { T::one() }).collect();
    for j in 0..n {
        let mut nonzero = (0..m).filter(|&i| !lp.a[i][j].is_zero_num());
        let (Some(i), None) = (nonzero.next(), nonzero.next()) else { continue };
        let a = &lp.a[i][j];
        let sign_ok = lp.b[i].is_zero_num() || (a.is_pos() == lp.b[i].is_pos());
        if start[i].is_none() && sign_ok && a.is_stable_pivot() {
            start[i] = Some(j);
            scale[i] = T::one().div(a);
        }
    }
    let rows: Vec<Vec<T>> = (0..m)
        .map(|i| {
            let mut row: Vec<T> = lp.a[i].iter().map(|v| v.mul(&scale[i])).collect();
            row.resize(n, T::zero());
            for k in 0..m {
                row.push(if k == i { T::one() } else { T::zero() });
            }
            row.push(lp.b[i].mul(&scale[i]).add(&perturbation::<T>(i, &lp.b[i])));
            if let Some(j) = start[i] {
                row[j] = T::one();
            }
            row
        })
        .collect();
    let basis = (0..m).map(|i| start[i].unwrap_or(n + i)).collect();
    let mut t = Tableau { original: rows.clone(), rows, basis, n: width };
    let limit = 50 * (width + m) + 1000;

    let mut phase1 = vec![T::zero(); width];
    for v in phase1.iter_mut().skip(n) {
        *v = T::one();
    }
    t.optimize(&phase1, width, limit)?;
    let infeas = t.rows.iter().enumerate().fold(T::zero(), |acc, (i, row)| {
        if t.basis[i] >= n {
            acc.add(&row[width])
        } else {
            acc
        }
    });
    if infeas.is_pos() {
        return Err(LpError::Infeasible);
    }
    // Drive remaining artificials out where a real column is available.
    for i in 0..m {
        if t.basis[i] >= n {
            let candidate = (0..n)
                .filter(|&j| !t.basis.contains(&j))
                .max_by(|&a, &b| t.rows[i][a].to_f64().abs().total_cmp(&t.rows[i][b].to_f64().abs()));
            if let Some(j) = candidate {
                if t.rows[i][j].is_stable_pivot() {
                    t.pivot(i, j);
                }
            }
        }
    }

    let mut cost = lp.c.clone();
    cost.resize(width, T::zero());
    t.optimize(&cost, n, limit)?;

    let mut x = vec![T::zero(); n];
    for (i, &bj) in t.basis.iter().enumerate() {
        if bj < n {
            x[bj] = t.rows[i][width].clone();
        }
    }
    // Rounding can drift the float tableau away from feasibility; reject rather than report.
    let residual = lp
        .a
        .iter()
        .zip(&lp.b)
        .map(|(row, bi)| row.iter().zip(&x).fold(bi.neg(), |acc, (a, xi)| acc.add(&a.mul(xi))).to_f64().abs())
        .fold(0.0, f64::max);
    if residual > RESIDUAL_TOLERANCE * (1.0 + x.iter().map(|v| v.to_f64().abs()).fold(0.0, f64::max)) {
        return Err(LpError::NumericalDrift);
    }
    let value = x.iter().zip(&lp.c).fold(T::zero(), |acc, (xi, ci)| acc.add(&xi.mul(ci)));
    // Artificial column i is e_i, so its reduced cost is −y_i.
    let dual = (0..m)
        .map(|i| {
            // The tableau row is `scale_i` times the original constraint.
            t.reduced(&cost, n + i).neg().mul(&scale[i])
        })
        .collect();
    Ok(LpSolution { x, value, dual })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn small_program_exact_and_float() {
        // min -x - y  s.t. x + 2y + s1 = 4, 3x + y + s2 = 6.
        let lp = Lp {
            a: vec![vec![q(1, 1), q(2, 1), q(1, 1), q(0, 1)], vec![q(3, 1), q(1, 1), q(0, 1), q(1, 1)]],
            b: vec![q(4, 1), q(6, 1)],
            c: vec![q(-1, 1), q(-1, 1), q(0, 1), q(0, 1)],
        };
        let s = solve(&lp).unwrap();
        assert_eq!(s.value, q(-14, 5));
        assert_eq!(s.x[0], q(8, 5));
        assert_eq!(s.x[1], q(6, 5));
        // Strong duality: b·y equals the optimum.
        let by = s.dual.iter().zip(&lp.b).fold(q(0, 1), |a, (y, b)| a + y * b);
        assert_eq!(by, s.value);

        let lpf = Lp {
            a: lp.a.iter().map(|r| r.iter().map(LpNum::to_f64).collect()).collect(),
            b: lp.b.iter().map(LpNum::to_f64).collect(),
            c: lp.c.iter().map(LpNum::to_f64).collect(),
        };
        // The float right side is perturbed below the residual tolerance.
        let sf = solve(&lpf).unwrap();
        assert!((sf.value + 2.8).abs() < RESIDUAL_TOLERANCE);
    }

    #[test]
    fn infeasible_and_unbounded() {
        // x = -1 with x ≥ 0.
        let lp = Lp { a: vec![vec![1.0]], b: vec![-1.0], c: vec![0.0] };
        assert_eq!(solve(&lp).unwrap_err(), LpError::Infeasible);
        // min -x with x - y = 0.
        let lp = Lp { a: vec![vec![1.0, -1.0]], b: vec![0.0], c: vec![-1.0, 0.0] };
        assert_eq!(solve(&lp).unwrap_err(), LpError::Unbounded);
    }

    #[test]
    fn redundant_rows() {
        let lp = Lp {
            a: vec![vec![q(1, 1), q(1, 1)], vec![q(2, 1), q(2, 1)]],
            b: vec![q(1, 1), q(2, 1)],
            c: vec![q(1, 1), q(3, 1)],
        };
        let s = solve(&lp).unwrap();
        assert_eq!(s.value, q(1, 1));
    }
}
