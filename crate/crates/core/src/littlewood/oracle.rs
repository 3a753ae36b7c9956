use nalgebra::DMatrix;
use num_complex::Complex64;

use super::ClassFunction;
use crate::error::{Error, Result};

/// Largest group order for the dense trace-norm computation.
pub const ORACLE_MAX_ORDER: usize = 2000;

/// Sum of singular values of the convolution matrix `M[y][z] = f(z y⁻¹) / |G|`
/// on `L²(G)`; for class functions this equals λ(f).
pub fn trace_norm_oracle(f: &ClassFunction) -> Result<f64> {
    let g = f.group();
    let n = g.order();
    if n > ORACLE_MAX_ORDER {
        return Err(Error::Budget(format!("trace-norm oracle needs |G| ≤ {ORACLE_MAX_ORDER}, got {n}")));
    }
    let inv: Vec<usize> = (0..n).map(|y| g.inv(y)).collect();
    let scale = 1.0 / n as f64;
    let m = DMatrix::<Complex64>::from_fn(n, n, |y, z| f.at(g.mul(z, inv[y])) * scale);
    let sv = m.singular_values();
    Ok(sv.iter().sum())
}
