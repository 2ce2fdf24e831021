//! Sparse exterior algebra over an oriented orthonormal frame `e_1, ..., e_n`.
//!
//! A [`Form`] stores a map from strictly increasing index tuples to real
//! coefficients; exterior products `e_i ∧ e_j ∧ ...` are abbreviated
//! `e_{ij...}`. The evaluation normalization is fixed once and for all:
//! a basis monomial `e_{p1...pk}` evaluates to `1` on its own increasing
//! tuple (no `1/k!` factor). Every cross-module constant (the Bianchi
//! comparison in particular) relies on this convention.
//!
//! Coefficients are `f64`. All structural operations (wedge, contraction,
//! σ_T) use only addition and multiplication plus one factor `1/2`, so they
//! are exact whenever the inputs are dyadic rationals, which covers every
//! built-in geometry and keeps the structural test suite tolerance-free.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FormError {
    #[error("frame dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("frame index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("expected a homogeneous form of degree {expected}")]
    DegreeMismatch { expected: usize },
    #[error("tuple length {found} does not match form degree {expected}")]
    TupleLengthMismatch { expected: usize, found: usize },
}

/// Sorts `indices` increasingly and returns the permutation sign, or `None`
/// when an index repeats (the monomial vanishes).
fn canonical_tuple(indices: &[usize]) -> Option<(Vec<usize>, f64)> {
    let mut idx = indices.to_vec();
    let mut sign = 1.0;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    for w in idx.windows(2) {
        if w[0] == w[1] {
            return None;
        }
    }
    Some((idx, sign))
}

/// A sparse alternating form over an `n`-dimensional orthonormal frame.
///
/// Homogeneous of some degree `k` in almost all uses (torsion forms are
/// 3-forms, σ_T is a 4-form), but mixed degree is allowed and all operations
/// extend linearly over it.
#[derive(Debug, Clone, PartialEq)]
pub struct Form {
    n: usize,
    terms: BTreeMap<Vec<usize>, f64>,
}

impl Form {
    pub fn zero(n: usize) -> Self {
        Form {
            n,
            terms: BTreeMap::new(),
        }
    }

    /// The monomial `c·e_{indices}`. Indices are sorted with the permutation
    /// sign absorbed into the coefficient; a repeated index yields zero.
    pub fn monomial(n: usize, indices: &[usize], coeff: f64) -> Result<Self, FormError> {
        for &i in indices {
            if i < 1 || i > n {
                return Err(FormError::IndexOutOfRange { index: i, n });
            }
        }
        let mut form = Form::zero(n);
        if let Some((tuple, sign)) = canonical_tuple(indices) {
            form.add_term(tuple, sign * coeff);
        }
        Ok(form)
    }

    /// Builds a form from `(indices, coefficient)` pairs, accumulating
    /// repeated tuples.
    pub fn from_terms<'a, I>(n: usize, terms: I) -> Result<Self, FormError>
    where
        I: IntoIterator<Item = (&'a [usize], f64)>,
    {
        let mut form = Form::zero(n);
        for (indices, coeff) in terms {
            form = &form + &Form::monomial(n, indices, coeff)?;
        }
        Ok(form)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterates over `(increasing tuple, coefficient)` pairs in tuple order.
    pub fn terms(&self) -> impl Iterator<Item = (&[usize], f64)> {
        self.terms.iter().map(|(t, &c)| (t.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient on an arbitrary tuple, with antisymmetry applied.
    pub fn coeff(&self, indices: &[usize]) -> f64 {
        match canonical_tuple(indices) {
            Some((tuple, sign)) => sign * self.terms.get(&tuple).copied().unwrap_or(0.0),
            None => 0.0,
        }
    }

    /// Degree when homogeneous, `None` for genuinely mixed forms.
    /// The zero form reports degree 0.
    pub fn degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(|t| t.len());
        let first = match degrees.next() {
            Some(d) => d,
            None => return Some(0),
        };
        if degrees.all(|d| d == first) {
            Some(first)
        } else {
            None
        }
    }

    /// True when every stored term has length `k` (vacuously true for zero).
    pub fn is_homogeneous_of(&self, k: usize) -> bool {
        self.terms.keys().all(|t| t.len() == k)
    }

    fn add_term(&mut self, tuple: Vec<usize>, coeff: f64) {
        if coeff == 0.0 {
            return;
        }
        let entry = self.terms.entry(tuple);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let v = o.get() + coeff;
                if v == 0.0 {
                    o.remove();
                } else {
                    *o.get_mut() = v;
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
        }
    }

    /// Exterior product. Bilinear, associative and graded-commutative.
    pub fn wedge(&self, other: &Form) -> Result<Form, FormError> {
        if self.n != other.n {
            return Err(FormError::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let mut out = Form::zero(self.n);
        for (t1, c1) in &self.terms {
            for (t2, c2) in &other.terms {
                let mut joined = Vec::with_capacity(t1.len() + t2.len());
                joined.extend_from_slice(t1);
                joined.extend_from_slice(t2);
                if let Some((tuple, sign)) = canonical_tuple(&joined) {
                    out.add_term(tuple, sign * c1 * c2);
                }
            }
        }
        Ok(out)
    }

    /// Interior product `e_index ⌟ self`; an antiderivation dropping the
    /// degree by one.
    pub fn contract(&self, index: usize) -> Result<Form, FormError> {
        if index < 1 || index > self.n {
            return Err(FormError::IndexOutOfRange { index, n: self.n });
        }
        let mut out = Form::zero(self.n);
        for (tuple, &coeff) in &self.terms {
            if let Some(pos) = tuple.iter().position(|&i| i == index) {
                let mut rest = tuple.clone();
                rest.remove(pos);
                let sign = if pos % 2 == 0 { 1.0 } else { -1.0 };
                out.add_term(rest, sign * coeff);
            }
        }
        Ok(out)
    }

    /// Sum of squared coefficients over the increasing-tuple basis.
    pub fn norm2(&self) -> f64 {
        // fold from +0.0: the empty std sum is -0.0, which would leak a
        // negative zero into serialized reports
        self.terms.values().fold(0.0, |acc, c| acc + c * c)
    }

    /// Antisymmetric evaluation on a tuple of frame indices;
    /// `e_{p1...pk}` gives `1` on its own increasing tuple.
    pub fn evaluate(&self, indices: &[usize]) -> Result<f64, FormError> {
        for &i in indices {
            if i < 1 || i > self.n {
                return Err(FormError::IndexOutOfRange { index: i, n: self.n });
            }
        }
        match self.degree() {
            Some(k) if k == indices.len() || self.is_zero() => Ok(self.coeff(indices)),
            Some(k) => Err(FormError::TupleLengthMismatch {
                expected: k,
                found: indices.len(),
            }),
            None => Err(FormError::DegreeMismatch {
                expected: indices.len(),
            }),
        }
    }

    /// Drops terms with `|coefficient| <= eps`. Used at the boundary where
    /// floating-point curvature sums feed back into exact form bookkeeping.
    pub fn prune(mut self, eps: f64) -> Form {
        self.terms.retain(|_, c| c.abs() > eps);
        self
    }

    /// The set of tuples carrying nonzero coefficients.
    pub fn support(&self) -> Vec<Vec<usize>> {
        self.terms.keys().cloned().collect()
    }
}

impl Add for &Form {
    type Output = Form;
    fn add(self, rhs: &Form) -> Form {
        assert_eq!(self.n, rhs.n, "form dimension mismatch in addition");
        let mut out = self.clone();
        for (tuple, &coeff) in &rhs.terms {
            out.add_term(tuple.clone(), coeff);
        }
        out
    }
}

impl Sub for &Form {
    type Output = Form;
    fn sub(self, rhs: &Form) -> Form {
        assert_eq!(self.n, rhs.n, "form dimension mismatch in subtraction");
        let mut out = self.clone();
        for (tuple, &coeff) in &rhs.terms {
            out.add_term(tuple.clone(), -coeff);
        }
        out
    }
}

impl Neg for &Form {
    type Output = Form;
    fn neg(self) -> Form {
        let mut out = Form::zero(self.n);
        for (tuple, &coeff) in &self.terms {
            out.add_term(tuple.clone(), -coeff);
        }
        out
    }
}

impl Mul<f64> for &Form {
    type Output = Form;
    fn mul(self, scalar: f64) -> Form {
        let mut out = Form::zero(self.n);
        for (tuple, &coeff) in &self.terms {
            out.add_term(tuple.clone(), scalar * coeff);
        }
        out
    }
}

/// Canonical text rendering `c·e_{i j k} + ...` used in reports and goldens.
impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (pos, (tuple, &coeff)) in self.terms.iter().enumerate() {
            let (lead, magnitude) = if pos == 0 {
                (if coeff < 0.0 { "-" } else { "" }, coeff.abs())
            } else if coeff < 0.0 {
                (" - ", coeff.abs())
            } else {
                (" + ", coeff)
            };
            write!(f, "{lead}{}", fmt_coeff(magnitude))?;
            if !tuple.is_empty() {
                write!(f, "·e_{{")?;
                for (i, idx) in tuple.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{idx}")?;
                }
                write!(f, "}}")?;
            }
        }
        Ok(())
    }
}

fn fmt_coeff(c: f64) -> String {
    format!("{c}")
}

/// The 4-form `σ_T := ½ Σ_k (e_k ⌟ T) ∧ (e_k ⌟ T)` of a 3-form `T`.
///
/// Quadratic in `T`; vanishes whenever `T` is supported in a single
/// 3-element index set.
pub fn sigma_t(torsion: &Form) -> Result<Form, FormError> {
    if !torsion.is_homogeneous_of(3) {
        return Err(FormError::DegreeMismatch { expected: 3 });
    }
    let mut out = Form::zero(torsion.n());
    for k in 1..=torsion.n() {
        let ck = torsion.contract(k)?;
        out = &out + &ck.wedge(&ck)?;
    }
    Ok(&out * 0.5)
}
