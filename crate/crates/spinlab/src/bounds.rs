//! Lower bounds for the smallest eigenvalue of the square of the Dirac
//! operator of a metric connection with parallel skew torsion.
//!
//! Three bounds are evaluated and compared. With `n` the frame dimension,
//! `n_k` the largest block of the holonomy splitting, `S` the minimum of the
//! Riemannian scalar curvature, `‖T‖²` the squared torsion norm and `μ²` a
//! squared eigenvalue of the torsion acting on spinors:
//!
//! ```text
//! β_split(μ) = n_k/(4(n_k-1))·S + n_k/(8(n_k-1))·‖T‖² - (1+n_k)/(4(n_k-1))·μ²
//! β_univ     = S/4 + ‖T‖²/8 - max(μ²)/4
//! β_tw       = n/(4(n-1))·S + n(n-5)/(8(n-3)²)·‖T‖² + n(4-n)/(4(n-3)²)·max(μ²)
//! ```
//!
//! `β_split` is undefined for `n_k = 1` and `β_tw` for `n = 3` (singular
//! coefficients); [`compare`] reports these as explicit notes instead of
//! failing. With `T = 0`, `μ = 0` and a single block (`n_k = n`) both
//! `β_split` and `β_tw` degenerate to the classical Riemannian bound
//! `n/(4(n-1))·S`.
//!
//! The kernels are generic over the scalar so that the same formulas run in
//! `f64` for the pipeline and in exact rational arithmetic in tests.

use num_rational::Ratio;
use std::ops::{Add, Div, Mul, Sub};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundsError {
    #[error("dimension n must be at least 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("largest block size {n_k} out of range 1..={n}")]
    BlockSize { n_k: usize, n: usize },
    #[error("‖T‖² must be nonnegative, got {0}")]
    NegativeTorsionNorm(f64),
    #[error("squared eigenvalue must be nonnegative, got {0}")]
    NegativeMu2(f64),
    #[error("mu2_list must not be empty")]
    EmptyMu2,
}

/// Scalar type the bound formulas are evaluated in.
pub trait BoundScalar:
    Clone + PartialOrd + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Div<Output = Self>
{
    fn from_int(v: i64) -> Self;
}

impl BoundScalar for f64 {
    fn from_int(v: i64) -> Self {
        v as f64
    }
}

impl BoundScalar for Ratio<i64> {
    fn from_int(v: i64) -> Self {
        Ratio::from_integer(v)
    }
}

/// `β_split(μ)`; `None` when `n_k < 2`.
pub fn beta_split_mu<T: BoundScalar>(scal_g_min: T, t_norm2: T, mu2: T, n_k: usize) -> Option<T> {
    if n_k < 2 {
        return None;
    }
    let nk = T::from_int(n_k as i64);
    let one = T::from_int(1);
    let four = T::from_int(4);
    let eight = T::from_int(8);
    let nk_m1 = nk.clone() - one.clone();
    let scal_term = nk.clone() / (four.clone() * nk_m1.clone()) * scal_g_min;
    let torsion_term = nk.clone() / (eight * nk_m1.clone()) * t_norm2;
    let mu_term = (one + nk) / (four * nk_m1) * mu2;
    Some(scal_term + torsion_term - mu_term)
}

/// `β_univ`; defined for every input.
pub fn beta_univ<T: BoundScalar>(scal_g_min: T, t_norm2: T, mu2_max: T) -> T {
    let four = T::from_int(4);
    let eight = T::from_int(8);
    scal_g_min / four.clone() + t_norm2 / eight - mu2_max / four
}

/// `β_tw`; `None` when `n = 3`.
pub fn beta_tw<T: BoundScalar>(n: usize, scal_g_min: T, t_norm2: T, mu2_max: T) -> Option<T> {
    if n == 3 || n < 2 {
        return None;
    }
    let ni = n as i64;
    let four = T::from_int(4);
    let eight = T::from_int(8);
    let nm3_sq = T::from_int((ni - 3) * (ni - 3));
    let scal_term = T::from_int(ni) / (four.clone() * T::from_int(ni - 1)) * scal_g_min;
    let torsion_term = T::from_int(ni * (ni - 5)) / (eight * nm3_sq.clone()) * t_norm2;
    let mu_term = T::from_int(ni * (4 - ni)) / (four * nm3_sq) * mu2_max;
    Some(scal_term + torsion_term + mu_term)
}

/// Inputs for the bound comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundsInput {
    pub n: usize,
    pub n_k: usize,
    pub scal_g_min: f64,
    pub t_norm2: f64,
    pub mu2_list: Vec<f64>,
}

impl BoundsInput {
    pub fn new(
        n: usize,
        n_k: usize,
        scal_g_min: f64,
        t_norm2: f64,
        mu2_list: Vec<f64>,
    ) -> Result<Self, BoundsError> {
        if n < 2 {
            return Err(BoundsError::DimensionTooSmall(n));
        }
        if n_k < 1 || n_k > n {
            return Err(BoundsError::BlockSize { n_k, n });
        }
        if t_norm2 < 0.0 {
            return Err(BoundsError::NegativeTorsionNorm(t_norm2));
        }
        if mu2_list.is_empty() {
            return Err(BoundsError::EmptyMu2);
        }
        for &m in &mu2_list {
            if m < 0.0 {
                return Err(BoundsError::NegativeMu2(m));
            }
        }
        Ok(BoundsInput {
            n,
            n_k,
            scal_g_min,
            t_norm2,
            mu2_list,
        })
    }

    pub fn mu2_max(&self) -> f64 {
        self.mu2_list.iter().copied().fold(0.0, f64::max)
    }

    /// `β_split` on the whole spinor module: the bound at the largest `μ²`,
    /// equivalently the minimum of the per-eigenvalue bounds.
    pub fn beta_split(&self) -> Option<f64> {
        beta_split_mu(self.scal_g_min, self.t_norm2, self.mu2_max(), self.n_k)
    }

    pub fn beta_univ(&self) -> f64 {
        beta_univ(self.scal_g_min, self.t_norm2, self.mu2_max())
    }

    pub fn beta_tw(&self) -> Option<f64> {
        beta_tw(self.n, self.scal_g_min, self.t_norm2, self.mu2_max())
    }
}

/// All bounds, the per-eigenvalue table and explanatory notes.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundsReport {
    pub beta_split: Option<f64>,
    pub beta_univ: f64,
    pub beta_tw: Option<f64>,
    /// `(μ², β_split(μ))` per supplied squared eigenvalue, input order.
    pub per_mu: Vec<(f64, Option<f64>)>,
    pub notes: Vec<String>,
}

/// Evaluates every defined bound and collects the undefined cases as notes.
pub fn compare(input: &BoundsInput) -> BoundsReport {
    let mut notes = Vec::new();
    let per_mu: Vec<(f64, Option<f64>)> = input
        .mu2_list
        .iter()
        .map(|&mu2| {
            (
                mu2,
                beta_split_mu(input.scal_g_min, input.t_norm2, mu2, input.n_k),
            )
        })
        .collect();
    let beta_split = input.beta_split();
    if beta_split.is_none() {
        notes.push("β_split undefined (largest block has dimension 1)".to_string());
    }
    let beta_tw = input.beta_tw();
    if beta_tw.is_none() {
        notes.push("β_tw undefined (n=3)".to_string());
    }
    notes.push(
        "β_split assumes split holonomy; a nonzero split torsion needs at least 3 blocks"
            .to_string(),
    );
    BoundsReport {
        beta_split,
        beta_univ: input.beta_univ(),
        beta_tw,
        per_mu,
        notes,
    }
}
