//! Naturally reductive homogeneous data from Lie-algebra structure
//! constants: `𝔤 = 𝔥 ⊕ 𝔪` with an invariant metric on `𝔪`.
//!
//! The adapted basis is indexed `1..=dim_m` for `𝔪` followed by
//! `dim_m+1..=dim_m+dim_h` for `𝔥`. The canonical connection of such a
//! space has parallel torsion and curvature by construction; the
//! finite-dimensional witness of parallelism is invariance under the
//! isotropy action, which is checked rather than assumed.
//!
//! Sign conventions (fixed so that the built-in Stiefel bases reproduce
//! their reference torsion forms):
//!
//! ```text
//! T(x,y,z)    = -⟨[e_x, e_y]_𝔪, e_z⟩
//! R(x,y,z,v)  = -⟨[[e_x, e_y]_𝔥, e_z], e_v⟩
//! ```

use thiserror::Error;

use crate::curvature::AlgCurvature;
use crate::exterior::Form;

/// Residual gate for the structural validations.
pub const STRUCTURE_TOL: f64 = 1e-10;

/// Gram residual gate for the orthonormalization step.
pub const GRAM_TOL: f64 = 1e-12;

/// Coefficients below this threshold are treated as zero when assembling
/// derived forms from floating-point structure constants.
pub const COEFF_PRUNE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HomogeneousError {
    #[error("basis index {index} out of range 1..={dim_g}")]
    IndexOutOfRange { index: usize, dim_g: usize },
    #[error("conflicting bracket records for [{i},{j}] -> {k}: {a} vs {b}")]
    ConflictingBrackets {
        i: usize,
        j: usize,
        k: usize,
        a: f64,
        b: f64,
    },
    #[error("metric must have one positive entry per 𝔪 direction, got entry {value} at {index}")]
    InvalidMetric { index: usize, value: f64 },
    #[error("Gram residual {residual:.3e} exceeds {GRAM_TOL:.1e} after orthonormalization")]
    GramResidual { residual: f64 },
    #[error("Jacobi identity fails on basis triple ({i},{j},{k}): residual {residual:.3e}")]
    Jacobi {
        i: usize,
        j: usize,
        k: usize,
        residual: f64,
    },
    #[error("𝔥 is not a subalgebra: [{i},{j}] has 𝔪-component {residual:.3e}")]
    NotSubalgebra { i: usize, j: usize, residual: f64 },
    #[error("split is not reductive: [{i},{j}] has 𝔥-component {residual:.3e}")]
    NotReductive { i: usize, j: usize, residual: f64 },
    #[error("metric is not naturally reductive on triple ({i},{j},{k}): residual {residual:.3e}")]
    NotNaturallyReductive {
        i: usize,
        j: usize,
        k: usize,
        residual: f64,
    },
    #[error("canonical torsion is not totally antisymmetric: residual {residual:.3e}")]
    TorsionNotAntisymmetric { residual: f64 },
    #[error("canonical curvature fails symmetry validation: {report}")]
    CurvatureInvalid {
        report: crate::curvature::ValidationReport,
    },
}

/// Residuals recorded while validating the space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpaceDiagnostics {
    pub jacobi: f64,
    pub reductivity: f64,
    pub natural_reductivity: f64,
    pub gram: f64,
}

/// A validated naturally reductive homogeneous space.
#[derive(Debug, Clone, PartialEq)]
pub struct HomogeneousSpace {
    name: String,
    dim_m: usize,
    dim_h: usize,
    /// Structure constants on the orthonormalized adapted basis.
    structure: Vec<f64>,
    /// Bracket records as supplied (i < j, sorted), for serialization.
    input_brackets: Vec<(usize, usize, usize, f64)>,
    metric_diag: Vec<f64>,
    diagnostics: SpaceDiagnostics,
}

impl HomogeneousSpace {
    /// Validates and builds a space from bracket records
    /// `(i, j, k, value)` meaning `[e_i, e_j] = Σ_k value·e_k` on the adapted
    /// basis, and a diagonal metric on `𝔪` (`None` = normal metric, all 1).
    pub fn new(
        name: impl Into<String>,
        dim_m: usize,
        dim_h: usize,
        brackets: &[(usize, usize, usize, f64)],
        metric_diag: Option<Vec<f64>>,
    ) -> Result<Self, HomogeneousError> {
        let dim_g = dim_m + dim_h;
        let metric = metric_diag.unwrap_or_else(|| vec![1.0; dim_m]);
        if metric.len() != dim_m {
            return Err(HomogeneousError::InvalidMetric {
                index: metric.len(),
                value: f64::NAN,
            });
        }
        for (i, &g) in metric.iter().enumerate() {
            if !(g.is_finite() && g > 0.0) {
                return Err(HomogeneousError::InvalidMetric {
                    index: i + 1,
                    value: g,
                });
            }
        }

        // raw structure constants with antisymmetry enforced
        let mut raw = vec![0.0; dim_g * dim_g * dim_g];
        let mut set = vec![false; dim_g * dim_g * dim_g];
        let idx = |i: usize, j: usize, k: usize| ((i - 1) * dim_g + (j - 1)) * dim_g + (k - 1);
        let mut canonical_records: Vec<(usize, usize, usize, f64)> = Vec::new();
        for &(i, j, k, value) in brackets {
            for &x in &[i, j, k] {
                if x < 1 || x > dim_g {
                    return Err(HomogeneousError::IndexOutOfRange { index: x, dim_g });
                }
            }
            for (a, b, v) in [(i, j, value), (j, i, -value)] {
                let t = idx(a, b, k);
                if set[t] && raw[t] != v {
                    return Err(HomogeneousError::ConflictingBrackets {
                        i: a,
                        j: b,
                        k,
                        a: raw[t],
                        b: v,
                    });
                }
                raw[t] = v;
                set[t] = true;
            }
            if value != 0.0 && i != j {
                let (a, b, v) = if i < j { (i, j, value) } else { (j, i, -value) };
                canonical_records.push((a, b, k, v));
            }
        }
        canonical_records.sort_by_key(|&(i, j, k, _)| (i, j, k));
        canonical_records.dedup();

        // orthonormalize the 𝔪-basis against the diagonal metric
        let scale: Vec<f64> = (1..=dim_g)
            .map(|i| {
                if i <= dim_m {
                    1.0 / metric[i - 1].sqrt()
                } else {
                    1.0
                }
            })
            .collect();
        let mut structure = vec![0.0; dim_g * dim_g * dim_g];
        for i in 1..=dim_g {
            for j in 1..=dim_g {
                for k in 1..=dim_g {
                    structure[idx(i, j, k)] =
                        raw[idx(i, j, k)] * scale[i - 1] * scale[j - 1] / scale[k - 1];
                }
            }
        }
        let gram: f64 = (0..dim_m)
            .map(|i| (metric[i] * scale[i] * scale[i] - 1.0).abs())
            .fold(0.0, f64::max);
        if gram > GRAM_TOL {
            return Err(HomogeneousError::GramResidual { residual: gram });
        }

        let space = HomogeneousSpace {
            name: name.into(),
            dim_m,
            dim_h,
            structure,
            input_brackets: canonical_records,
            metric_diag: metric,
            diagnostics: SpaceDiagnostics {
                jacobi: 0.0,
                reductivity: 0.0,
                natural_reductivity: 0.0,
                gram,
            },
        };
        space.validated()
    }

    fn validated(mut self) -> Result<Self, HomogeneousError> {
        let dim_g = self.dim_g();
        let dim_m = self.dim_m;

        // Jacobi identity on all basis triples
        let mut jacobi_worst: f64 = 0.0;
        for i in 1..=dim_g {
            for j in (i + 1)..=dim_g {
                for k in (j + 1)..=dim_g {
                    let mut residual: f64 = 0.0;
                    for l in 1..=dim_g {
                        let mut sum = 0.0;
                        for m in 1..=dim_g {
                            sum += self.c(i, j, m) * self.c(m, k, l)
                                + self.c(j, k, m) * self.c(m, i, l)
                                + self.c(k, i, m) * self.c(m, j, l);
                        }
                        residual = residual.max(sum.abs());
                    }
                    if residual >= STRUCTURE_TOL {
                        return Err(HomogeneousError::Jacobi {
                            i,
                            j,
                            k,
                            residual,
                        });
                    }
                    jacobi_worst = jacobi_worst.max(residual);
                }
            }
        }

        // 𝔥 a subalgebra, [𝔥, 𝔪] ⊆ 𝔪
        for a in (dim_m + 1)..=dim_g {
            for b in (dim_m + 1)..=dim_g {
                let residual = (1..=dim_m)
                    .map(|k| self.c(a, b, k).abs())
                    .fold(0.0, f64::max);
                if residual >= STRUCTURE_TOL {
                    return Err(HomogeneousError::NotSubalgebra {
                        i: a,
                        j: b,
                        residual,
                    });
                }
            }
        }
        let mut reductivity_worst: f64 = 0.0;
        for a in (dim_m + 1)..=dim_g {
            for x in 1..=dim_m {
                let residual = ((dim_m + 1)..=dim_g)
                    .map(|b| self.c(a, x, b).abs())
                    .fold(0.0, f64::max);
                if residual >= STRUCTURE_TOL {
                    return Err(HomogeneousError::NotReductive {
                        i: a,
                        j: x,
                        residual,
                    });
                }
                reductivity_worst = reductivity_worst.max(residual);
            }
        }

        // natural reductivity: ⟨[x,y]_𝔪, z⟩ + ⟨y, [x,z]_𝔪⟩ = 0 on the
        // orthonormal frame
        let mut natural_worst: f64 = 0.0;
        for x in 1..=dim_m {
            for y in 1..=dim_m {
                for z in 1..=dim_m {
                    let residual = (self.c(x, y, z) + self.c(x, z, y)).abs();
                    if residual >= STRUCTURE_TOL {
                        return Err(HomogeneousError::NotNaturallyReductive {
                            i: x,
                            j: y,
                            k: z,
                            residual,
                        });
                    }
                    natural_worst = natural_worst.max(residual);
                }
            }
        }

        self.diagnostics.jacobi = jacobi_worst;
        self.diagnostics.reductivity = reductivity_worst;
        self.diagnostics.natural_reductivity = natural_worst;
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim_m(&self) -> usize {
        self.dim_m
    }

    pub fn dim_h(&self) -> usize {
        self.dim_h
    }

    pub fn dim_g(&self) -> usize {
        self.dim_m + self.dim_h
    }

    /// Structure constant `c^k_{ij}` on the orthonormalized adapted basis.
    pub fn c(&self, i: usize, j: usize, k: usize) -> f64 {
        let d = self.dim_g();
        self.structure[((i - 1) * d + (j - 1)) * d + (k - 1)]
    }

    pub fn diagnostics(&self) -> SpaceDiagnostics {
        self.diagnostics
    }

    /// Bracket records as supplied, canonicalized to `i < j`.
    pub fn input_brackets(&self) -> &[(usize, usize, usize, f64)] {
        &self.input_brackets
    }

    pub fn metric_diag(&self) -> &[f64] {
        &self.metric_diag
    }

    /// Torsion of the canonical connection,
    /// `T(x,y,z) = -⟨[e_x,e_y]_𝔪, e_z⟩`, as a 3-form.
    pub fn canonical_torsion(&self) -> Result<Form, HomogeneousError> {
        let n = self.dim_m;
        let mut worst: f64 = 0.0;
        for x in 1..=n {
            for y in 1..=n {
                for z in 1..=n {
                    let t = -self.c(x, y, z);
                    // total antisymmetry against all transpositions
                    worst = worst.max((t + -self.c(y, x, z)).abs().max(
                        (t + -self.c(x, z, y)).abs().max((t + -self.c(z, y, x)).abs()),
                    ));
                }
            }
        }
        if worst >= STRUCTURE_TOL {
            return Err(HomogeneousError::TorsionNotAntisymmetric { residual: worst });
        }
        let mut form = Form::zero(n);
        for x in 1..=n {
            for y in (x + 1)..=n {
                for z in (y + 1)..=n {
                    let t = -self.c(x, y, z);
                    if t.abs() > COEFF_PRUNE {
                        form = &form
                            + &Form::monomial(n, &[x, y, z], t).expect("indices in range");
                    }
                }
            }
        }
        Ok(form)
    }

    /// Curvature of the canonical connection,
    /// `R(x,y,z,v) = -⟨[[e_x,e_y]_𝔥, e_z], e_v⟩`. Pair symmetry holds by
    /// the theory and is asserted through the curvature validation.
    pub fn canonical_curvature(&self) -> Result<AlgCurvature, HomogeneousError> {
        let n = self.dim_m;
        let dim_g = self.dim_g();
        let mut data = vec![0.0; n * n * n * n];
        for x in 1..=n {
            for y in 1..=n {
                for z in 1..=n {
                    for v in 1..=n {
                        let mut sum = 0.0;
                        for a in (n + 1)..=dim_g {
                            sum += self.c(x, y, a) * self.c(a, z, v);
                        }
                        let val = -sum;
                        data[(((x - 1) * n + (y - 1)) * n + (z - 1)) * n + (v - 1)] =
                            if val.abs() > COEFF_PRUNE { val } else { 0.0 };
                    }
                }
            }
        }
        let curvature = AlgCurvature::from_dense(n, data).expect("n bounded by caller data");
        if !curvature.is_valid() {
            return Err(HomogeneousError::CurvatureInvalid {
                report: curvature.validate(),
            });
        }
        Ok(curvature)
    }

    /// Scalar curvature of the canonical connection.
    pub fn scal_nabla(&self) -> Result<f64, HomogeneousError> {
        let r = self.canonical_curvature()?;
        Ok(r.scal().expect("canonical curvature validated"))
    }

    /// Riemannian scalar curvature via `Scal^g = Scal^∇ + (3/2)‖T‖²`.
    pub fn scal_g(&self) -> Result<f64, HomogeneousError> {
        Ok(self.scal_nabla()? + 1.5 * self.canonical_torsion()?.norm2())
    }

    /// Matrix of the isotropy action of the `a`-th 𝔥-basis element on 𝔪:
    /// `[e_A, e_x] = Σ_w action[w][x]·e_w` (0-based rows/cols over 𝔪).
    pub fn isotropy_action(&self, a: usize) -> Vec<Vec<f64>> {
        let n = self.dim_m;
        let big_a = self.dim_m + a;
        let mut action = vec![vec![0.0; n]; n];
        for x in 1..=n {
            for w in 1..=n {
                action[w - 1][x - 1] = self.c(big_a, x, w);
            }
        }
        action
    }

    /// Max residual of `T(a·x, y, z) + T(x, a·y, z) + T(x, y, a·z)` over all
    /// isotropy generators and frame triples: the algebraic witness that the
    /// torsion is parallel.
    pub fn ad_invariance_torsion(&self, torsion: &Form) -> f64 {
        let n = self.dim_m;
        let mut worst: f64 = 0.0;
        for a in 1..=self.dim_h {
            let act = self.isotropy_action(a);
            for x in 1..=n {
                for y in (x + 1)..=n {
                    for z in (y + 1)..=n {
                        let mut sum = 0.0;
                        for w in 1..=n {
                            sum += act[w - 1][x - 1] * torsion.coeff(&[w, y, z])
                                + act[w - 1][y - 1] * torsion.coeff(&[x, w, z])
                                + act[w - 1][z - 1] * torsion.coeff(&[x, y, w]);
                        }
                        worst = worst.max(sum.abs());
                    }
                }
            }
        }
        worst
    }

    /// Same invariance residual for the curvature, over all index quadruples.
    pub fn ad_invariance_curvature(&self, curvature: &AlgCurvature) -> f64 {
        let n = self.dim_m;
        let mut worst: f64 = 0.0;
        for a in 1..=self.dim_h {
            let act = self.isotropy_action(a);
            for x in 1..=n {
                for y in 1..=n {
                    for z in 1..=n {
                        for v in 1..=n {
                            let mut sum = 0.0;
                            for w in 1..=n {
                                sum += act[w - 1][x - 1] * curvature.get(w, y, z, v)
                                    + act[w - 1][y - 1] * curvature.get(x, w, z, v)
                                    + act[w - 1][z - 1] * curvature.get(x, y, w, v)
                                    + act[w - 1][v - 1] * curvature.get(x, y, z, w);
                            }
                            worst = worst.max(sum.abs());
                        }
                    }
                }
            }
        }
        worst
    }
}
