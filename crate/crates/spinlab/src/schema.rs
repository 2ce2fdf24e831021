//! The JSON geometry file format.
//!
//! A geometry file carries a frame dimension, a partition (array of arrays
//! of 1-based indices), the torsion 3-form as `{indices, value}` records,
//! and optionally: explicit curvature records (completed over the symmetry
//! orbit on load and cross-checked for conflicts), a homogeneous section
//! (bracket records on the adapted basis, 𝔪 first), and externally given
//! scalars. `curvature` and `homogeneous` are mutually exclusive; when the
//! homogeneous section is present the torsion records must agree with the
//! derived canonical torsion.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{CatalogEntry, CurvatureSource};
use crate::curvature::AlgCurvature;
use crate::exterior::Form;
use crate::homogeneous::HomogeneousSpace;
use crate::report::Geometry;
use crate::splitting::Partition;

/// Torsion records must match a homogeneous derivation this closely.
pub const TORSION_CROSS_CHECK_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum SchemaError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid geometry at {pointer}: {message}")]
    Invalid { pointer: String, message: String },
}

fn invalid(pointer: impl Into<String>, message: impl ToString) -> SchemaError {
    SchemaError::Invalid {
        pointer: pointer.into(),
        message: message.to_string(),
    }
}

/// One sparse tensor record: strictly increasing indices for forms,
/// generating indices for curvature.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermRecord {
    pub indices: Vec<usize>,
    pub value: f64,
}

/// One bracket record `[e_i, e_j] ∋ value·e_k` on the adapted basis
/// (1..=n for 𝔪, then h_dim indices for 𝔥).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketRecord {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub value: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomogeneousSection {
    pub h_dim: usize,
    pub brackets: Vec<BracketRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metric_diag: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScalarsSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scal_g_min: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu2_list: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometryFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub n: usize,
    pub partition: Vec<Vec<usize>>,
    pub torsion: Vec<TermRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curvature: Option<Vec<TermRecord>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub homogeneous: Option<HomogeneousSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scalars: Option<ScalarsSection>,
}

impl GeometryFile {
    pub fn from_json_str(text: &str) -> Result<Self, SchemaError> {
        let file: GeometryFile = serde_json::from_str(text)?;
        file.validate()?;
        Ok(file)
    }

    pub fn from_path(path: &Path) -> Result<Self, SchemaError> {
        let text = std::fs::read_to_string(path).map_err(|source| SchemaError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json_str(&text)
    }

    /// Structural validation with JSON-pointer style locations.
    pub fn validate(&self) -> Result<(), SchemaError> {
        if self.n < 2 {
            return Err(invalid("/n", "frame dimension must be at least 2"));
        }
        for (ti, term) in self.torsion.iter().enumerate() {
            let ptr = format!("/torsion/{ti}/indices");
            if term.indices.len() != 3 {
                return Err(invalid(&ptr, "torsion records need exactly 3 indices"));
            }
            if !term.indices.windows(2).all(|w| w[0] < w[1]) {
                return Err(invalid(&ptr, "torsion indices must be strictly increasing"));
            }
            for &i in &term.indices {
                if i < 1 || i > self.n {
                    return Err(invalid(&ptr, format!("index {i} out of range 1..={}", self.n)));
                }
            }
        }
        if let Some(curvature) = &self.curvature {
            if self.homogeneous.is_some() {
                return Err(invalid(
                    "/curvature",
                    "curvature and homogeneous sections are mutually exclusive",
                ));
            }
            for (ci, term) in curvature.iter().enumerate() {
                let ptr = format!("/curvature/{ci}/indices");
                if term.indices.len() != 4 {
                    return Err(invalid(&ptr, "curvature records need exactly 4 indices"));
                }
                for &i in &term.indices {
                    if i < 1 || i > self.n {
                        return Err(invalid(&ptr, format!("index {i} out of range 1..={}", self.n)));
                    }
                }
            }
        }
        if let Some(hom) = &self.homogeneous {
            let dim_g = self.n + hom.h_dim;
            for (bi, b) in hom.brackets.iter().enumerate() {
                for &i in &[b.i, b.j, b.k] {
                    if i < 1 || i > dim_g {
                        return Err(invalid(
                            format!("/homogeneous/brackets/{bi}"),
                            format!("basis index {i} out of range 1..={dim_g}"),
                        ));
                    }
                }
            }
            if let Some(metric) = &hom.metric_diag {
                if metric.len() != self.n {
                    return Err(invalid(
                        "/homogeneous/metric_diag",
                        format!("expected {} entries, got {}", self.n, metric.len()),
                    ));
                }
            }
        }
        if let Some(scalars) = &self.scalars {
            if let Some(mu2) = &scalars.mu2_list {
                for (mi, &m) in mu2.iter().enumerate() {
                    if m < 0.0 {
                        return Err(invalid(
                            format!("/scalars/mu2_list/{mi}"),
                            "squared eigenvalues must be nonnegative",
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Builds the runtime geometry: partition, forms, and (derived or
    /// explicit) curvature.
    pub fn to_geometry(&self, fallback_name: &str) -> Result<Geometry, SchemaError> {
        let partition = Partition::new(self.n, self.partition.clone())
            .map_err(|e| invalid("/partition", e))?;
        let mut torsion = Form::zero(self.n);
        for term in &self.torsion {
            torsion = &torsion
                + &Form::monomial(self.n, &term.indices, term.value)
                    .map_err(|e| invalid("/torsion", e))?;
        }

        let mut homogeneous = None;
        let mut curvature = None;
        if let Some(hom) = &self.homogeneous {
            let brackets: Vec<(usize, usize, usize, f64)> = hom
                .brackets
                .iter()
                .map(|b| (b.i, b.j, b.k, b.value))
                .collect();
            let space = HomogeneousSpace::new(
                self.name.clone().unwrap_or_else(|| fallback_name.to_string()),
                self.n,
                hom.h_dim,
                &brackets,
                hom.metric_diag.clone(),
            )
            .map_err(|e| invalid("/homogeneous", e))?;
            let derived = space.canonical_torsion().map_err(|e| invalid("/homogeneous", e))?;
            let mismatch = (&derived - &torsion)
                .terms()
                .map(|(_, c)| c.abs())
                .fold(0.0, f64::max);
            if mismatch > TORSION_CROSS_CHECK_TOL {
                return Err(invalid(
                    "/torsion",
                    format!(
                        "torsion records disagree with the canonical torsion of the \
                         homogeneous section (max coefficient gap {mismatch:.3e})"
                    ),
                ));
            }
            curvature = Some(space.canonical_curvature().map_err(|e| invalid("/homogeneous", e))?);
            homogeneous = Some(space);
        } else if let Some(records) = &self.curvature {
            let recs: Vec<(usize, usize, usize, usize, f64)> = records
                .iter()
                .map(|t| (t.indices[0], t.indices[1], t.indices[2], t.indices[3], t.value))
                .collect();
            let r = AlgCurvature::from_records(self.n, &recs)
                .map_err(|e| invalid("/curvature", e))?;
            curvature = Some(r);
        }

        Ok(Geometry {
            name: self
                .name
                .clone()
                .unwrap_or_else(|| fallback_name.to_string()),
            n: self.n,
            partition,
            torsion,
            curvature,
            homogeneous,
            given_scal_g_min: self.scalars.as_ref().and_then(|s| s.scal_g_min),
            given_mu2_list: self.scalars.as_ref().and_then(|s| s.mu2_list.clone()),
        })
    }
}

fn form_records(form: &Form) -> Vec<TermRecord> {
    form.terms()
        .map(|(indices, value)| TermRecord {
            indices: indices.to_vec(),
            value,
        })
        .collect()
}

/// Canonical generating records of a curvature tensor: the entries with
/// `p < q`, `r < s` and `(p,q) <= (r,s)`; the rest of the orbit is restored
/// by symmetry completion on load.
fn curvature_records(r: &AlgCurvature) -> Vec<TermRecord> {
    let n = r.n();
    let mut out = Vec::new();
    for p in 1..=n {
        for q in (p + 1)..=n {
            for rr in 1..=n {
                for s in (rr + 1)..=n {
                    if (rr, s) < (p, q) {
                        continue;
                    }
                    let v = r.get(p, q, rr, s);
                    if v != 0.0 {
                        out.push(TermRecord {
                            indices: vec![p, q, rr, s],
                            value: v,
                        });
                    }
                }
            }
        }
    }
    out
}

/// Exports a catalog entry to the geometry file format.
pub fn export_entry(entry: &CatalogEntry) -> GeometryFile {
    let homogeneous = match &entry.curvature_source {
        CurvatureSource::Homogeneous(space) => Some(HomogeneousSection {
            h_dim: space.dim_h(),
            brackets: space
                .input_brackets()
                .iter()
                .map(|&(i, j, k, value)| BracketRecord { i, j, k, value })
                .collect(),
            metric_diag: if space.metric_diag().iter().all(|&g| g == 1.0) {
                None
            } else {
                Some(space.metric_diag().to_vec())
            },
        }),
        _ => None,
    };
    let curvature = match &entry.curvature_source {
        CurvatureSource::Explicit(r) => Some(curvature_records(r)),
        _ => None,
    };
    let scalars = entry.given_scalars.as_ref().and_then(|gs| {
        if gs.scal_g.is_none() && gs.mu2_list.is_none() {
            None
        } else {
            Some(ScalarsSection {
                scal_g_min: gs.scal_g,
                mu2_list: gs.mu2_list.clone(),
            })
        }
    });
    GeometryFile {
        name: Some(entry.name.clone()),
        n: entry.n,
        partition: entry.partition.blocks().to_vec(),
        torsion: form_records(&entry.torsion),
        curvature,
        homogeneous,
        scalars,
    }
}
