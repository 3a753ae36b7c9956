use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::group::Group;
use crate::sets::ClassSet;

/// A function constant on conjugacy classes, one value per class.
///
/// Rational values are kept alongside the floats when every operation that
/// produced the function was exact.
#[derive(Clone, Debug)]
pub struct ClassFunction {
    group: Group,
    values: Vec<Complex64>,
    exact: Option<Vec<BigRational>>,
}

fn to_complex(q: &BigRational) -> Complex64 {
    Complex64::new(q.to_f64().unwrap_or(f64::NAN), 0.0)
}

impl ClassFunction {
    pub fn new(group: &Group, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != group.class_count() {
            return Err(Error::invalid(format!(
                "class function has {} values, {} has {} classes",
                values.len(),
                group.name(),
                group.class_count()
            )));
        }
        if values.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::invalid("class function values must be finite"));
        }
        Ok(ClassFunction { group: group.clone(), values, exact: None })
    }

    pub fn real(group: &Group, values: Vec<f64>) -> Result<Self> {
        Self::new(group, values.into_iter().map(|x| Complex64::new(x, 0.0)).collect())
    }

    pub fn rational(group: &Group, values: Vec<BigRational>) -> Result<Self> {
        let mut f = Self::new(group, values.iter().map(to_complex).collect())?;
        f.exact = Some(values);
        Ok(f)
    }

    pub fn indicator(set: &ClassSet) -> Self {
        let values = set
            .mask()
            .iter()
            .map(|&b| if b { BigRational::one() } else { BigRational::zero() })
            .collect();
        Self::rational(set.group(), values).expect("mask has one entry per class")
    }

    pub fn constant(group: &Group, v: BigRational) -> Self {
        Self::rational(group, vec![v; group.class_count()]).expect("constant is finite")
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn exact(&self) -> Option<&[BigRational]> {
        self.exact.as_deref()
    }

    /// Value on class `c`.
    pub fn value(&self, c: usize) -> Complex64 {
        self.values[c]
    }

    /// Value at an element.
    pub fn at(&self, x: usize) -> Complex64 {
        self.values[self.group.class_of(x)]
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `Σ_g |f(g)|`.
    pub fn l1_mass(&self) -> f64 {
        (0..self.values.len()).map(|c| self.values[c].norm() * self.group.class_size(c) as f64).sum()
    }

    /// `Σ_g |f(g)|²`.
    pub fn l2_mass(&self) -> f64 {
        (0..self.values.len()).map(|c| self.values[c].norm_sqr() * self.group.class_size(c) as f64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|z| *z == Complex64::zero())
    }

    fn same_group(&self, other: &ClassFunction) -> Result<()> {
        if self.group != other.group {
            return Err(Error::GroupMismatch(format!(
                "class functions on {} and {}",
                self.group.name(),
                other.group.name()
            )));
        }
        Ok(())
    }

    fn combine(
        &self,
        other: &ClassFunction,
        op: impl Fn(Complex64, Complex64) -> Complex64,
        exact_op: impl Fn(&BigRational, &BigRational) -> BigRational,
    ) -> Result<ClassFunction> {
        self.same_group(other)?;
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| op(a, b)).collect();
        let exact = match (&self.exact, &other.exact) {
            (Some(a), Some(b)) => Some(a.iter().zip(b).map(|(x, y)| exact_op(x, y)).collect()),
            _ => None,
        };
        Ok(ClassFunction { group: self.group.clone(), values, exact })
    }

    pub fn add(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.combine(other, |a, b| a + b, |a, b| a + b)
    }

    pub fn sub(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.combine(other, |a, b| a - b, |a, b| a - b)
    }

    /// Pointwise product.
    pub fn mul(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.combine(other, |a, b| a * b, |a, b| a * b)
    }

    pub fn scale(&self, alpha: Complex64) -> ClassFunction {
        ClassFunction {
            group: self.group.clone(),
            values: self.values.iter().map(|&z| z * alpha).collect(),
            exact: None,
        }
    }

    pub fn scale_rational(&self, alpha: &BigRational) -> ClassFunction {
        let a = to_complex(alpha);
        ClassFunction {
            group: self.group.clone(),
            values: self.values.iter().map(|&z| z * a).collect(),
            exact: self.exact.as_ref().map(|e| e.iter().map(|x| x * alpha).collect()),
        }
    }

    pub fn conj(&self) -> ClassFunction {
        ClassFunction {
            group: self.group.clone(),
            values: self.values.iter().map(|z| z.conj()).collect(),
            exact: self.exact.clone(),
        }
    }

    /// Pulls back along a permutation of classes: `g(c) = f(perm[c])`.
    pub fn permute(&self, perm: &[usize]) -> Result<ClassFunction> {
        if perm.len() != self.values.len() {
            return Err(Error::invalid("class permutation has the wrong length"));
        }
        Ok(ClassFunction {
            group: self.group.clone(),
            values: perm.iter().map(|&c| self.values[c]).collect(),
            exact: self.exact.as_ref().map(|e| perm.iter().map(|&c| e[c].clone()).collect()),
        })
    }

    /// `x ↦ f(x⁻¹)`.
    pub fn compose_inverse(&self) -> ClassFunction {
        let perm: Vec<usize> = (0..self.values.len()).map(|c| self.group.inverse_class(c)).collect();
        self.permute(&perm).expect("one entry per class")
    }

    /// `x ↦ f(z x)` for a central element `z`.
    pub fn translate_central(&self, z: usize) -> Result<ClassFunction> {
        let g = &self.group;
        if g.class_size(g.class_of(z)) != 1 {
            return Err(Error::invalid("translation element is not central"));
        }
        let perm: Vec<usize> =
            (0..self.values.len()).map(|c| g.class_of(g.mul(z, g.class_rep(c)))).collect();
        self.permute(&perm)
    }

    /// Rational values from integers.
    pub fn integers(group: &Group, values: &[i64]) -> Result<Self> {
        Self::rational(group, values.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect())
    }
}
