//! Algebraic curvature tensors of connections with parallel skew torsion.
//!
//! An [`AlgCurvature`] stores dense coefficients `R(p,q,r,s)` that are
//! antisymmetric in `(p,q)` and `(r,s)` and symmetric under swapping the two
//! pairs. Derived quantities follow the trace convention
//!
//! ```text
//! Ric(q,s) = Σ_p ⟨R(e_p, e_q) e_s, e_p⟩ = Σ_p R(p, q, s, p),
//! ```
//!
//! the trace under which the partial scalar curvatures `Scal_i = tr Ric_i`
//! are exactly the scalar summands split off from the curvature 4-forms
//! σ̃ⁱ, and under which the canonical curvature of the built-in homogeneous
//! spaces reproduces the Riemannian scalar curvature through
//! `Scal^g = Scal^∇ + (3/2)‖T‖²`.

use thiserror::Error;

use crate::exterior::Form;
use crate::splitting::Partition;

/// Residual gate for the symmetry validation.
pub const SYMMETRY_TOL: f64 = 1e-10;

/// Dense storage bound: n⁴ coefficients.
pub const MAX_CURVATURE_DIM: usize = 10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CurvatureError {
    #[error("frame dimension {n} exceeds dense curvature bound {max}")]
    TooLarge { n: usize, max: usize },
    #[error("curvature index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("conflicting records for R({p},{q},{r},{s}): {a} vs {b}")]
    ConflictingRecords {
        p: usize,
        q: usize,
        r: usize,
        s: usize,
        a: f64,
        b: f64,
    },
    #[error("curvature fails symmetry validation: {0}")]
    Invalid(ValidationReport),
    #[error("partition covers n = {partition_n}, curvature has n = {curvature_n}")]
    PartitionMismatch { partition_n: usize, curvature_n: usize },
    #[error("block index {block} out of range 1..={k}")]
    BlockOutOfRange { block: usize, k: usize },
    #[error(transparent)]
    Partition(#[from] crate::splitting::PartitionError),
}

/// Maximal violations of the three defining symmetries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationReport {
    /// max |R(p,q,r,s) + R(q,p,r,s)|
    pub antisym_pq: f64,
    /// max |R(p,q,r,s) + R(p,q,s,r)|
    pub antisym_rs: f64,
    /// max |R(p,q,r,s) - R(r,s,p,q)|
    pub pair_symmetry: f64,
}

impl ValidationReport {
    pub fn passes(&self) -> bool {
        self.antisym_pq < SYMMETRY_TOL
            && self.antisym_rs < SYMMETRY_TOL
            && self.pair_symmetry < SYMMETRY_TOL
    }

    pub fn max_violation(&self) -> f64 {
        self.antisym_pq.max(self.antisym_rs).max(self.pair_symmetry)
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "antisym(p,q) {:.3e}, antisym(r,s) {:.3e}, pair symmetry {:.3e}",
            self.antisym_pq, self.antisym_rs, self.pair_symmetry
        )
    }
}

/// Algebraic curvature coefficients with validation performed at
/// construction; derived operations refuse tensors that failed it.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgCurvature {
    n: usize,
    data: Vec<f64>,
    report: ValidationReport,
}

impl AlgCurvature {
    pub fn zeros(n: usize) -> Result<Self, CurvatureError> {
        if n > MAX_CURVATURE_DIM {
            return Err(CurvatureError::TooLarge {
                n,
                max: MAX_CURVATURE_DIM,
            });
        }
        Ok(AlgCurvature {
            n,
            data: vec![0.0; n * n * n * n],
            report: ValidationReport {
                antisym_pq: 0.0,
                antisym_rs: 0.0,
                pair_symmetry: 0.0,
            },
        })
    }

    /// Wraps a dense coefficient array (row-major in `(p,q,r,s)`, 1-based
    /// indices mapped to 0-based storage). The symmetry report is computed
    /// here; an invalid tensor can be inspected but not used in derived
    /// operations.
    pub fn from_dense(n: usize, data: Vec<f64>) -> Result<Self, CurvatureError> {
        if n > MAX_CURVATURE_DIM {
            return Err(CurvatureError::TooLarge {
                n,
                max: MAX_CURVATURE_DIM,
            });
        }
        assert_eq!(data.len(), n * n * n * n, "dense curvature size");
        let mut c = AlgCurvature {
            n,
            data,
            report: ValidationReport {
                antisym_pq: 0.0,
                antisym_rs: 0.0,
                pair_symmetry: 0.0,
            },
        };
        c.report = c.compute_report();
        Ok(c)
    }

    /// Builds from sparse generating records `(p,q,r,s,value)`, completing
    /// each record over its symmetry orbit and cross-checking that records
    /// landing in the same orbit agree.
    pub fn from_records(
        n: usize,
        records: &[(usize, usize, usize, usize, f64)],
    ) -> Result<Self, CurvatureError> {
        if n > MAX_CURVATURE_DIM {
            return Err(CurvatureError::TooLarge {
                n,
                max: MAX_CURVATURE_DIM,
            });
        }
        let mut data = vec![0.0; n * n * n * n];
        let mut set = vec![false; n * n * n * n];
        let idx = |p: usize, q: usize, r: usize, s: usize| {
            (((p - 1) * n + (q - 1)) * n + (r - 1)) * n + (s - 1)
        };
        for &(p, q, r, s, value) in records {
            for &i in &[p, q, r, s] {
                if i < 1 || i > n {
                    return Err(CurvatureError::IndexOutOfRange { index: i, n });
                }
            }
            // symmetry orbit: pair swap × antisymmetry in each pair
            let orbit = [
                (p, q, r, s, value),
                (q, p, r, s, -value),
                (p, q, s, r, -value),
                (q, p, s, r, value),
                (r, s, p, q, value),
                (s, r, p, q, -value),
                (r, s, q, p, -value),
                (s, r, q, p, value),
            ];
            for &(a, b, cc, d, v) in &orbit {
                let i = idx(a, b, cc, d);
                if set[i] && data[i] != v {
                    return Err(CurvatureError::ConflictingRecords {
                        p: a,
                        q: b,
                        r: cc,
                        s: d,
                        a: data[i],
                        b: v,
                    });
                }
                data[i] = v;
                set[i] = true;
            }
        }
        Self::from_dense(n, data)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Coefficient `R(p,q,r,s)`, 1-based.
    pub fn get(&self, p: usize, q: usize, r: usize, s: usize) -> f64 {
        let n = self.n;
        self.data[(((p - 1) * n + (q - 1)) * n + (r - 1)) * n + (s - 1)]
    }

    fn compute_report(&self) -> ValidationReport {
        let n = self.n;
        let mut pq: f64 = 0.0;
        let mut rs: f64 = 0.0;
        let mut pair: f64 = 0.0;
        for p in 1..=n {
            for q in 1..=n {
                for r in 1..=n {
                    for s in 1..=n {
                        let v = self.get(p, q, r, s);
                        pq = pq.max((v + self.get(q, p, r, s)).abs());
                        rs = rs.max((v + self.get(p, q, s, r)).abs());
                        pair = pair.max((v - self.get(r, s, p, q)).abs());
                    }
                }
            }
        }
        ValidationReport {
            antisym_pq: pq,
            antisym_rs: rs,
            pair_symmetry: pair,
        }
    }

    /// The symmetry report computed at construction.
    pub fn validate(&self) -> ValidationReport {
        self.report
    }

    pub fn is_valid(&self) -> bool {
        self.report.passes()
    }

    fn require_valid(&self) -> Result<(), CurvatureError> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(CurvatureError::Invalid(self.report))
        }
    }

    /// `Ric(q,s) = Σ_p R(p,q,s,p)` as a dense row-major matrix.
    pub fn ricci(&self) -> Result<Vec<Vec<f64>>, CurvatureError> {
        self.require_valid()?;
        let n = self.n;
        let mut ric = vec![vec![0.0; n]; n];
        for q in 1..=n {
            for s in 1..=n {
                let mut sum = 0.0;
                for p in 1..=n {
                    sum += self.get(p, q, s, p);
                }
                ric[q - 1][s - 1] = sum;
            }
        }
        Ok(ric)
    }

    pub fn scal(&self) -> Result<f64, CurvatureError> {
        let ric = self.ricci()?;
        Ok((0..self.n).map(|i| ric[i][i]).sum())
    }

    /// Traces of the Ricci tensor over each block; sums to `scal` exactly.
    pub fn partial_scal(&self, partition: &Partition) -> Result<Vec<f64>, CurvatureError> {
        if partition.n() != self.n {
            return Err(CurvatureError::PartitionMismatch {
                partition_n: partition.n(),
                curvature_n: self.n,
            });
        }
        let ric = self.ricci()?;
        Ok(partition
            .blocks()
            .iter()
            .map(|block| block.iter().map(|&i| ric[i - 1][i - 1]).sum())
            .collect())
    }

    /// Block-structure report for a split frame. The first two entries must
    /// vanish for curvature arising from split holonomy; values with both
    /// pairs inside (different) blocks may legitimately survive and are only
    /// reported.
    pub fn block_checks(&self, partition: &Partition) -> Result<BlockReport, CurvatureError> {
        self.require_valid()?;
        if partition.n() != self.n {
            return Err(CurvatureError::PartitionMismatch {
                partition_n: partition.n(),
                curvature_n: self.n,
            });
        }
        let n = self.n;
        let mut cross_value: f64 = 0.0;
        let mut cross_argument: f64 = 0.0;
        let mut cross_pair: f64 = 0.0;
        for p in 1..=n {
            for q in 1..=n {
                for r in 1..=n {
                    for s in 1..=n {
                        let v = self.get(p, q, r, s).abs();
                        if v == 0.0 {
                            continue;
                        }
                        let bp = partition.block_of(p)?;
                        let bq = partition.block_of(q)?;
                        let br = partition.block_of(r)?;
                        let bs = partition.block_of(s)?;
                        if br != bs {
                            cross_value = cross_value.max(v);
                        }
                        if bp != bq {
                            cross_argument = cross_argument.max(v);
                        }
                        if bp == bq && br == bs && bp != br {
                            cross_pair = cross_pair.max(v);
                        }
                    }
                }
            }
        }
        let ric = self.ricci()?;
        let mut ricci_off_block: f64 = 0.0;
        for q in 1..=n {
            for s in 1..=n {
                if partition.block_of(q)? != partition.block_of(s)? {
                    ricci_off_block = ricci_off_block.max(ric[q - 1][s - 1].abs());
                }
            }
        }
        Ok(BlockReport {
            cross_value_max: cross_value,
            cross_argument_max: cross_argument,
            ricci_off_block_max: ricci_off_block,
            cross_pair_block_max: cross_pair,
        })
    }

    /// The block-`i` curvature 4-form
    /// `σ̃ⁱ = ½ Σ R(a,b,p,q)·e_{abpq}` over `a < b` inside block `i`,
    /// `p < q` global, keeping only quadruples of four distinct indices.
    /// The excluded same-index diagonal is exactly the partial scalar trace.
    pub fn sigma_tilde(
        &self,
        partition: &Partition,
        block: usize,
    ) -> Result<Form, CurvatureError> {
        self.require_valid()?;
        if partition.n() != self.n {
            return Err(CurvatureError::PartitionMismatch {
                partition_n: partition.n(),
                curvature_n: self.n,
            });
        }
        let members = partition
            .block(block)
            .map_err(|_| CurvatureError::BlockOutOfRange {
                block,
                k: partition.k(),
            })?;
        let mut out = Form::zero(self.n);
        for (ai, &a) in members.iter().enumerate() {
            for &b in &members[ai + 1..] {
                for p in 1..=self.n {
                    for q in (p + 1)..=self.n {
                        if p == a || p == b || q == a || q == b {
                            continue;
                        }
                        let v = 0.5 * self.get(a, b, p, q);
                        if v != 0.0 {
                            out = &out
                                + &Form::monomial(self.n, &[a, b, p, q], v)
                                    .expect("indices checked in range");
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// The cyclic sum `B(x,y,z,v) = R(x,y,z,v) + R(y,z,x,v) + R(z,x,y,v)`.
    pub fn bianchi_cyclic(&self) -> Result<CyclicSum, CurvatureError> {
        self.require_valid()?;
        let n = self.n;
        let mut data = vec![0.0; n * n * n * n];
        let idx = |x: usize, y: usize, z: usize, v: usize| {
            (((x - 1) * n + (y - 1)) * n + (z - 1)) * n + (v - 1)
        };
        for x in 1..=n {
            for y in 1..=n {
                for z in 1..=n {
                    for v in 1..=n {
                        data[idx(x, y, z, v)] =
                            self.get(x, y, z, v) + self.get(y, z, x, v) + self.get(z, x, y, v);
                    }
                }
            }
        }
        Ok(CyclicSum { n, data })
    }
}

/// Report of the block-structure checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockReport {
    /// max |R(·,·,r,s)| over r, s in different blocks.
    pub cross_value_max: f64,
    /// max |R(p,q,·,·)| over p, q in different blocks.
    pub cross_argument_max: f64,
    /// max |Ric(q,s)| over q, s in different blocks.
    pub ricci_off_block_max: f64,
    /// max |R(p,q,r,s)| with both pairs inside blocks but across two
    /// different blocks; may be nonzero, so it is reported, never asserted.
    pub cross_pair_block_max: f64,
}

impl BlockReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.cross_value_max < tol
            && self.cross_argument_max < tol
            && self.ricci_off_block_max < tol
    }
}

/// The first-Bianchi cyclic sum as a 4-index array.
#[derive(Debug, Clone, PartialEq)]
pub struct CyclicSum {
    n: usize,
    data: Vec<f64>,
}

impl CyclicSum {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, x: usize, y: usize, z: usize, v: usize) -> f64 {
        let n = self.n;
        self.data[(((x - 1) * n + (y - 1)) * n + (z - 1)) * n + (v - 1)]
    }

    /// Max violation of full antisymmetry in the first three slots;
    /// automatic for a tensor that passed validation, a flag otherwise.
    pub fn antisymmetry_residual(&self) -> f64 {
        let n = self.n;
        let mut worst: f64 = 0.0;
        for x in 1..=n {
            for y in 1..=n {
                for z in 1..=n {
                    for v in 1..=n {
                        let b = self.get(x, y, z, v);
                        worst = worst.max((b + self.get(y, x, z, v)).abs());
                        worst = worst.max((b + self.get(x, z, y, v)).abs());
                    }
                }
            }
        }
        worst
    }

    /// Max deviation `|B(x,y,z,v) - c·ω(x,y,z,v)|` over all index
    /// quadruples, with `ω` evaluated in the increasing-tuple normalization.
    pub fn max_deviation_from(&self, omega: &Form, c: f64) -> f64 {
        let n = self.n;
        let mut worst: f64 = 0.0;
        for x in 1..=n {
            for y in 1..=n {
                for z in 1..=n {
                    for v in 1..=n {
                        let target = c * omega.coeff(&[x, y, z, v]);
                        worst = worst.max((self.get(x, y, z, v) - target).abs());
                    }
                }
            }
        }
        worst
    }
}
