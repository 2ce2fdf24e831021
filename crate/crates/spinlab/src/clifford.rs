//! Matrix representations of the Clifford algebra Cl(n) and the Clifford
//! action of exterior forms on the spinor module.
//!
//! Generators satisfy `e_i·e_j + e_j·e_i = -2δ_ij·Id` (so `e_i² = -1`) and
//! are skew-adjoint. The construction is the usual iterated 2×2 tensor-block
//! one and is fully deterministic: the same `(n, volume_sign)` always yields
//! bit-identical matrices, so golden matrices can be frozen in tests.
//!
//! For odd `n` there are two irreducible representations, distinguished by
//! the scalar through which the volume element `e_1⋯e_n` acts; the choice is
//! exposed as `volume_sign`. With `volume_sign = +1` the volume element acts
//! as `i^(3m+1)·Id` where `m = (n-1)/2`; flipping the sign negates it.

use nalgebra::{Complex, DMatrix};
use thiserror::Error;

use crate::exterior::Form;

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;

/// Largest supported frame dimension (spinor dimension 2^8 = 256).
pub const MAX_FRAME_DIM: usize = 16;

/// Default clustering tolerance for eigenvalue multiplicities.
pub const DEFAULT_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CliffordError {
    #[error("empty frame: n must be at least 1")]
    EmptyFrame,
    #[error("frame dimension {n} exceeds the supported maximum {max}")]
    FrameTooLarge { n: usize, max: usize },
    #[error("volume_sign must be +1 or -1, got {0}")]
    InvalidVolumeSign(i8),
    #[error("form lives on an n = {form_n} frame, representation has n = {rep_n}")]
    DimensionMismatch { form_n: usize, rep_n: usize },
    #[error("expected a homogeneous form of degree {expected}")]
    DegreeMismatch { expected: usize },
    #[error("endomorphism is not self-adjoint: residual {residual:.3e} exceeds {tol:.3e}")]
    NotSelfAdjoint { residual: f64, tol: f64 },
}

fn mat2(entries: [C64; 4]) -> CMatrix {
    DMatrix::from_row_slice(2, 2, &entries)
}

fn c(re: f64, im: f64) -> C64 {
    Complex::new(re, im)
}

/// The matrix realization of Cl(n) on the 2^⌊n/2⌋-dimensional spinor module.
#[derive(Debug, Clone)]
pub struct CliffordRep {
    n: usize,
    dim_spinor: usize,
    generators: Vec<CMatrix>,
    volume_sign: i8,
}

/// Builds the representation. `volume_sign` selects the irreducible
/// representation for odd `n` and is ignored for even `n`.
pub fn build_rep(n: usize, volume_sign: i8) -> Result<CliffordRep, CliffordError> {
    if n == 0 {
        return Err(CliffordError::EmptyFrame);
    }
    if n > MAX_FRAME_DIM {
        return Err(CliffordError::FrameTooLarge { n, max: MAX_FRAME_DIM });
    }
    if volume_sign != 1 && volume_sign != -1 {
        return Err(CliffordError::InvalidVolumeSign(volume_sign));
    }
    let pauli_x = mat2([c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
    let pauli_y = mat2([c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)]);
    let pauli_z = mat2([c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)]);
    let id2 = mat2([c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);

    let m = n / 2;
    let kron_chain = |slots: &[&CMatrix]| -> CMatrix {
        let mut out = DMatrix::from_element(1, 1, c(1.0, 0.0));
        for s in slots {
            out = out.kronecker(s);
        }
        out
    };

    // Hermitian anticommuting set squaring to +Id; e_i = i·γ_i then squares
    // to -Id and is skew-adjoint.
    let mut gammas: Vec<CMatrix> = Vec::with_capacity(n);
    for k in 1..=m {
        for sigma in [&pauli_x, &pauli_y] {
            let mut slots: Vec<&CMatrix> = vec![&pauli_z; k - 1];
            slots.push(sigma);
            slots.extend(std::iter::repeat_n(&id2, m - k));
            gammas.push(kron_chain(&slots));
        }
    }
    if n % 2 == 1 {
        let slots: Vec<&CMatrix> = vec![&pauli_z; m];
        let mut last = kron_chain(&slots);
        if volume_sign < 0 {
            last = -last;
        }
        gammas.push(last);
    }

    let i_unit = c(0.0, 1.0);
    let generators: Vec<CMatrix> = gammas.into_iter().take(n).map(|g| g * i_unit).collect();
    Ok(CliffordRep {
        n,
        dim_spinor: 1 << m,
        generators,
        volume_sign,
    })
}

impl CliffordRep {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim_spinor(&self) -> usize {
        self.dim_spinor
    }

    pub fn volume_sign(&self) -> i8 {
        self.volume_sign
    }

    /// The `i`-th generator, 1-based like frame indices.
    pub fn generator(&self, i: usize) -> &CMatrix {
        &self.generators[i - 1]
    }

    pub fn generators(&self) -> &[CMatrix] {
        &self.generators
    }

    pub fn identity(&self) -> SpinEndo {
        SpinEndo::new(CMatrix::identity(self.dim_spinor, self.dim_spinor), "identity")
    }

    /// The ordered product `e_1·e_2⋯e_n`; central for odd `n`.
    pub fn volume_element(&self) -> SpinEndo {
        let mut v = CMatrix::identity(self.dim_spinor, self.dim_spinor);
        for g in &self.generators {
            v *= g;
        }
        SpinEndo::new(v, "volume element")
    }

    /// Clifford action of a form: each basis monomial `e_{p1...pk}` with
    /// `p1 < ... < pk` maps to the ordered product of generators, extended
    /// linearly over the coefficients (mixed degree allowed).
    pub fn act(&self, form: &Form) -> Result<SpinEndo, CliffordError> {
        if form.n() != self.n {
            return Err(CliffordError::DimensionMismatch {
                form_n: form.n(),
                rep_n: self.n,
            });
        }
        let d = self.dim_spinor;
        let mut out = CMatrix::zeros(d, d);
        for (tuple, coeff) in form.terms() {
            let mut prod = CMatrix::identity(d, d);
            for &p in tuple {
                prod *= &self.generators[p - 1];
            }
            out += prod * c(coeff, 0.0);
        }
        Ok(SpinEndo::new(out, format!("act({form})")))
    }

    /// `act(T)²` for a 3-form `T`. Satisfies
    /// `act(T)² = ‖T‖²·Id - 2·act(σ_T)`.
    pub fn torsion_square(&self, torsion: &Form) -> Result<SpinEndo, CliffordError> {
        if !torsion.is_homogeneous_of(3) {
            return Err(CliffordError::DegreeMismatch { expected: 3 });
        }
        let a = self.act(torsion)?;
        Ok(SpinEndo::new(&a.matrix * &a.matrix, format!("act({torsion})²")))
    }
}

/// An endomorphism of the spinor module together with a tag recording what
/// produced it.
#[derive(Debug, Clone)]
pub struct SpinEndo {
    matrix: CMatrix,
    origin: String,
}

impl SpinEndo {
    pub fn new(matrix: CMatrix, origin: impl Into<String>) -> Self {
        assert!(matrix.is_square(), "spin endomorphisms are square");
        SpinEndo {
            matrix,
            origin: origin.into(),
        }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn origin(&self) -> &str {
        &self.origin
    }

    /// Max-entry residual of `A - A†`.
    pub fn self_adjoint_residual(&self) -> f64 {
        let adj = self.matrix.adjoint();
        (&self.matrix - adj).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Max-entry distance to another endomorphism.
    pub fn max_abs_diff(&self, other: &SpinEndo) -> f64 {
        (&self.matrix - &other.matrix)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn trace(&self) -> C64 {
        self.matrix.trace()
    }

    pub fn compose(&self, other: &SpinEndo) -> SpinEndo {
        SpinEndo::new(&self.matrix * &other.matrix, format!("{}·{}", self.origin, other.origin))
    }

    pub fn scale(&self, s: f64) -> SpinEndo {
        SpinEndo::new(&self.matrix * c(s, 0.0), self.origin.clone())
    }

    pub fn add(&self, other: &SpinEndo) -> SpinEndo {
        SpinEndo::new(&self.matrix + &other.matrix, format!("{} + {}", self.origin, other.origin))
    }

    pub fn sub(&self, other: &SpinEndo) -> SpinEndo {
        SpinEndo::new(&self.matrix - &other.matrix, format!("{} - {}", self.origin, other.origin))
    }
}

/// Real eigenvalues of a self-adjoint endomorphism, clustered at `tolerance`,
/// with multiplicities summing to the spinor dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    eigenvalues: Vec<(f64, usize)>,
    tolerance: f64,
}

impl Spectrum {
    /// `(eigenvalue, multiplicity)` pairs in increasing order.
    pub fn eigenvalues(&self) -> &[(f64, usize)] {
        &self.eigenvalues
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn distinct(&self) -> Vec<f64> {
        self.eigenvalues.iter().map(|&(v, _)| v).collect()
    }

    pub fn multiplicities(&self) -> Vec<usize> {
        self.eigenvalues.iter().map(|&(_, m)| m).collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.eigenvalues
            .iter()
            .map(|&(v, _)| v.abs())
            .fold(0.0, f64::max)
    }

    /// Squared eigenvalues, deduplicated at the clustering tolerance.
    pub fn squared_values(&self) -> Vec<f64> {
        let mut sq: Vec<f64> = self.eigenvalues.iter().map(|&(v, _)| v * v).collect();
        sq.sort_by(|a, b| a.partial_cmp(b).unwrap());
        sq.dedup_by(|a, b| (*a - *b).abs() <= self.tolerance);
        sq
    }
}

fn check_self_adjoint(endo: &SpinEndo, tol: f64) -> Result<(), CliffordError> {
    let residual = endo.self_adjoint_residual();
    if residual > tol {
        return Err(CliffordError::NotSelfAdjoint { residual, tol });
    }
    Ok(())
}

fn cluster(mut values: Vec<f64>, tol: f64) -> Vec<(f64, usize)> {
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut out: Vec<(f64, usize)> = Vec::new();
    let mut cluster: Vec<f64> = Vec::new();
    for v in values {
        if let Some(&last) = cluster.last() {
            if v - last > tol {
                let mean = cluster.iter().sum::<f64>() / cluster.len() as f64;
                out.push((mean, cluster.len()));
                cluster.clear();
            }
        }
        cluster.push(v);
    }
    if !cluster.is_empty() {
        let mean = cluster.iter().sum::<f64>() / cluster.len() as f64;
        out.push((mean, cluster.len()));
    }
    out
}

/// Eigenvalues of a self-adjoint endomorphism, clustered at `tol`.
pub fn spectrum(endo: &SpinEndo, tol: f64) -> Result<Spectrum, CliffordError> {
    check_self_adjoint(endo, tol)?;
    let eig = nalgebra::linalg::SymmetricEigen::new(endo.matrix.clone());
    let eigenvalues = cluster(eig.eigenvalues.iter().copied().collect(), tol);
    Ok(Spectrum {
        eigenvalues,
        tolerance: tol,
    })
}

/// One spectral projector of a self-adjoint endomorphism.
#[derive(Debug, Clone)]
pub struct EigenProjector {
    pub eigenvalue: f64,
    pub multiplicity: usize,
    pub projector: SpinEndo,
}

/// Spectral projectors onto the clustered eigenspaces: orthogonal
/// idempotents, mutually annihilating, summing to the identity.
pub fn eigen_projectors(endo: &SpinEndo, tol: f64) -> Result<Vec<EigenProjector>, CliffordError> {
    check_self_adjoint(endo, tol)?;
    let eig = nalgebra::linalg::SymmetricEigen::new(endo.matrix.clone());
    let d = endo.dim();
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());

    let mut out: Vec<EigenProjector> = Vec::new();
    let mut start = 0;
    while start < d {
        let mut end = start + 1;
        while end < d && eig.eigenvalues[order[end]] - eig.eigenvalues[order[end - 1]] <= tol {
            end += 1;
        }
        let members = &order[start..end];
        let mean = members.iter().map(|&i| eig.eigenvalues[i]).sum::<f64>() / members.len() as f64;
        let mut proj = CMatrix::zeros(d, d);
        for &i in members {
            let v = eig.eigenvectors.column(i);
            proj += v * v.adjoint();
        }
        out.push(EigenProjector {
            eigenvalue: mean,
            multiplicity: members.len(),
            projector: SpinEndo::new(proj, format!("projector(μ={mean})")),
        });
        start = end;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::{sigma_t, Form};

    fn t_nk() -> Form {
        Form::from_terms(
            6,
            [
                (&[2, 4, 5][..], 1.0),
                (&[1, 4, 6][..], 1.0),
                (&[2, 3, 6][..], -1.0),
                (&[1, 3, 5][..], 1.0),
            ],
        )
        .unwrap()
    }

    fn anticommutator_residual(rep: &CliffordRep) -> f64 {
        let d = rep.dim_spinor();
        let mut worst: f64 = 0.0;
        for i in 1..=rep.n() {
            for j in 1..=rep.n() {
                let gi = rep.generator(i);
                let gj = rep.generator(j);
                let mut anti = gi * gj + gj * gi;
                if i == j {
                    anti += CMatrix::identity(d, d) * c(2.0, 0.0);
                }
                worst = worst.max(anti.iter().map(|z| z.norm()).fold(0.0, f64::max));
            }
        }
        worst
    }

    #[test]
    fn dimensions() {
        assert_eq!(build_rep(2, 1).unwrap().dim_spinor(), 2);
        assert_eq!(build_rep(6, 1).unwrap().dim_spinor(), 8);
        assert_eq!(build_rep(7, 1).unwrap().dim_spinor(), 8);
        assert!(matches!(build_rep(0, 1), Err(CliffordError::EmptyFrame)));
        assert!(build_rep(17, 1).is_err());
        assert!(build_rep(3, 2).is_err());
    }

    #[test]
    fn defining_relations_hold_exactly() {
        for n in 1..=8 {
            let rep = build_rep(n, 1).unwrap();
            assert_eq!(anticommutator_residual(&rep), 0.0, "n = {n}");
            for i in 1..=n {
                let g = rep.generator(i);
                let skew = (g + g.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
                assert_eq!(skew, 0.0, "generator {i} of n = {n} not skew-adjoint");
            }
        }
    }

    #[test]
    fn construction_is_deterministic() {
        let a = build_rep(5, 1).unwrap();
        let b = build_rep(5, 1).unwrap();
        for i in 1..=5 {
            assert_eq!(a.generator(i), b.generator(i));
        }
    }

    #[test]
    fn golden_generators_n2() {
        // e_1 = i·σ_x, e_2 = i·σ_y with this construction
        let rep = build_rep(2, 1).unwrap();
        let e1 = rep.generator(1);
        assert_eq!(e1[(0, 1)], c(0.0, 1.0));
        assert_eq!(e1[(1, 0)], c(0.0, 1.0));
        let e2 = rep.generator(2);
        assert_eq!(e2[(0, 1)], c(1.0, 0.0));
        assert_eq!(e2[(1, 0)], c(-1.0, 0.0));
    }

    #[test]
    fn volume_element_scalar_for_odd_n() {
        // e_1⋯e_n = volume_sign · i^(3m+1) · Id for n = 2m+1
        for n in [3usize, 5, 7] {
            let m = (n - 1) / 2;
            let expected = c(0.0, 1.0).powu((3 * m + 1) as u32);
            for sign in [1i8, -1] {
                let rep = build_rep(n, sign).unwrap();
                let v = rep.volume_element();
                let target = rep.identity().matrix() * expected * c(sign as f64, 0.0);
                let diff = (v.matrix() - target).iter().map(|z| z.norm()).fold(0.0, f64::max);
                assert!(diff == 0.0, "n = {n}, sign = {sign}, diff = {diff}");
            }
        }
    }

    #[test]
    fn act_examples() {
        let rep2 = build_rep(2, 1).unwrap();
        let e1 = rep2.act(&Form::monomial(2, &[1], 1.0).unwrap()).unwrap();
        let sq = e1.compose(&e1);
        assert_eq!(sq.max_abs_diff(&rep2.identity().scale(-1.0)), 0.0);

        let rep3 = build_rep(3, 1).unwrap();
        let e123 = rep3.act(&Form::monomial(3, &[1, 2, 3], 1.0).unwrap()).unwrap();
        let sq = e123.compose(&e123);
        assert_eq!(sq.max_abs_diff(&rep3.identity()), 0.0);

        let rep6 = build_rep(6, 1).unwrap();
        let a = rep6.act(&t_nk()).unwrap();
        assert_eq!(a.self_adjoint_residual(), 0.0);
    }

    #[test]
    fn act_not_multiplicative_on_overlapping_wedges() {
        // e_1 ∧ e_1 = 0 but act(e_1)² = -Id: the action is only
        // multiplicative on disjoint-support monomials
        let rep = build_rep(3, 1).unwrap();
        let e1 = Form::monomial(3, &[1], 1.0).unwrap();
        let wedge_action = rep.act(&e1.wedge(&e1).unwrap()).unwrap();
        let product = rep.act(&e1).unwrap().compose(&rep.act(&e1).unwrap());
        assert!(wedge_action.max_abs_diff(&product) == 1.0);
    }

    #[test]
    fn act_dimension_mismatch() {
        let rep = build_rep(4, 1).unwrap();
        let form = Form::monomial(5, &[1], 1.0).unwrap();
        assert!(matches!(
            rep.act(&form),
            Err(CliffordError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn spectrum_examples() {
        let rep6 = build_rep(6, 1).unwrap();
        let a = rep6.act(&t_nk()).unwrap();
        let sp = spectrum(&a, DEFAULT_TOL).unwrap();
        let distinct = sp.distinct();
        assert_eq!(distinct.len(), 3);
        for (found, expected) in distinct.iter().zip([-4.0, 0.0, 4.0]) {
            assert!((found - expected).abs() < 1e-9, "{found} vs {expected}");
        }
        assert_eq!(sp.multiplicities(), vec![1, 6, 1]);
        assert_eq!(sp.multiplicities().iter().sum::<usize>(), 8);

        let zero = rep6.act(&Form::zero(6)).unwrap();
        let sp = spectrum(&zero, DEFAULT_TOL).unwrap();
        assert_eq!(sp.eigenvalues(), &[(0.0, 8)]);

        let rep3 = build_rep(3, 1).unwrap();
        let e123 = rep3.act(&Form::monomial(3, &[1, 2, 3], 1.0).unwrap()).unwrap();
        let sp = spectrum(&e123, DEFAULT_TOL).unwrap();
        for &(v, _) in sp.eigenvalues() {
            assert!((v - 1.0).abs() < 1e-9 || (v + 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn nk_multiplicities_match_trace_moments() {
        // Independent multiplicity computation from trace moments: with
        // eigenvalue set {-4, 0, 4}, tr(A) = 4(m₊ - m₋), tr(A²) = 16(m₊ + m₋).
        let rep6 = build_rep(6, 1).unwrap();
        let a = rep6.act(&t_nk()).unwrap();
        let tr1 = a.trace().re;
        let tr2 = a.compose(&a).trace().re;
        let plus_minus_sum = tr2 / 16.0;
        let plus_minus_diff = tr1 / 4.0;
        let m_plus = (plus_minus_sum + plus_minus_diff) / 2.0;
        let m_minus = (plus_minus_sum - plus_minus_diff) / 2.0;
        assert!((m_plus - 1.0).abs() < 1e-12);
        assert!((m_minus - 1.0).abs() < 1e-12);

        let sp = spectrum(&a, DEFAULT_TOL).unwrap();
        assert_eq!(sp.multiplicities(), vec![1, 6, 1]);
    }

    #[test]
    fn spectrum_rejects_non_self_adjoint() {
        let rep2 = build_rep(2, 1).unwrap();
        // a 1-form acts skew-adjointly
        let skew = rep2.act(&Form::monomial(2, &[1], 1.0).unwrap()).unwrap();
        let err = spectrum(&skew, DEFAULT_TOL).unwrap_err();
        match err {
            CliffordError::NotSelfAdjoint { residual, .. } => assert!(residual > 1.0),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn torsion_square_examples() {
        let rep3 = build_rep(3, 1).unwrap();
        let sq = rep3
            .torsion_square(&Form::monomial(3, &[1, 2, 3], 1.0).unwrap())
            .unwrap();
        assert_eq!(sq.max_abs_diff(&rep3.identity()), 0.0);

        // act(e_123 + e_145)² = 2·Id - 2·act(e_2345)
        let rep5 = build_rep(5, 1).unwrap();
        let t = Form::from_terms(5, [(&[1, 2, 3][..], 1.0), (&[1, 4, 5][..], 1.0)]).unwrap();
        let sq = rep5.torsion_square(&t).unwrap();
        let quad = rep5.act(&Form::monomial(5, &[2, 3, 4, 5], 1.0).unwrap()).unwrap();
        let expected = rep5.identity().scale(2.0).sub(&quad.scale(2.0));
        assert_eq!(sq.max_abs_diff(&expected), 0.0);

        let zero = rep5.torsion_square(&Form::zero(5)).unwrap();
        assert_eq!(zero.max_abs_diff(&rep5.identity().scale(0.0)), 0.0);

        assert!(rep5.torsion_square(&Form::monomial(5, &[1, 2], 1.0).unwrap()).is_err());
    }

    #[test]
    fn square_identity_for_nk() {
        let rep6 = build_rep(6, 1).unwrap();
        let t = t_nk();
        let lhs = rep6.torsion_square(&t).unwrap();
        let sigma = sigma_t(&t).unwrap();
        let rhs = rep6
            .identity()
            .scale(t.norm2())
            .sub(&rep6.act(&sigma).unwrap().scale(2.0));
        assert_eq!(lhs.max_abs_diff(&rhs), 0.0);
    }

    #[test]
    fn projector_examples() {
        let rep6 = build_rep(6, 1).unwrap();
        let id = rep6.identity();
        let projs = eigen_projectors(&id, DEFAULT_TOL).unwrap();
        assert_eq!(projs.len(), 1);
        assert_eq!(projs[0].multiplicity, 8);
        assert!((projs[0].eigenvalue - 1.0).abs() < 1e-12);

        let zero = id.scale(0.0);
        let projs = eigen_projectors(&zero, DEFAULT_TOL).unwrap();
        assert_eq!(projs.len(), 1);
        assert_eq!(projs[0].eigenvalue, 0.0);

        let a = rep6.act(&t_nk()).unwrap();
        let projs = eigen_projectors(&a, DEFAULT_TOL).unwrap();
        assert_eq!(projs.len(), 3);
        assert_eq!(
            projs.iter().map(|p| p.multiplicity).collect::<Vec<_>>(),
            vec![1, 6, 1]
        );
        // orthogonal idempotents, mutually annihilating, summing to Id
        let mut sum = id.scale(0.0);
        for p in &projs {
            let idem = p.projector.compose(&p.projector);
            assert!(idem.max_abs_diff(&p.projector) < 1e-10);
            let herm = p.projector.self_adjoint_residual();
            assert!(herm < 1e-10);
            sum = sum.add(&p.projector);
        }
        assert!(sum.max_abs_diff(&id) < 1e-10);
        for i in 0..projs.len() {
            for j in 0..projs.len() {
                if i != j {
                    let prod = projs[i].projector.compose(&projs[j].projector);
                    assert!(prod.max_abs_diff(&id.scale(0.0)) < 1e-10);
                }
            }
        }
    }

    #[test]
    fn volume_sign_flip_negates_odd_spectra() {
        let t = Form::from_terms(5, [(&[1, 3, 5][..], -1.0), (&[2, 4, 5][..], -1.0)]).unwrap();
        let plus = build_rep(5, 1).unwrap();
        let minus = build_rep(5, -1).unwrap();
        let sp = spectrum(&plus.act(&t).unwrap(), DEFAULT_TOL).unwrap();
        let sm = spectrum(&minus.act(&t).unwrap(), DEFAULT_TOL).unwrap();
        let mut negated: Vec<f64> = sp.distinct().iter().map(|v| -v).collect();
        negated.reverse();
        for (a, b) in negated.iter().zip(sm.distinct()) {
            assert!((a - b).abs() < 1e-9);
        }
    }
}
