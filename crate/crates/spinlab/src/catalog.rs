//! Built-in example geometries: the nearly Kähler flag manifold data, the
//! two Stiefel manifolds with their canonical homogeneous structure, and
//! small synthetic entries for the degenerate cases.
//!
//! Entries are defined in code rather than data files so that golden tests
//! cannot drift from the shipped catalog; the JSON geometry schema exists
//! for user geometries and every entry exports to it.

use thiserror::Error;

use crate::curvature::AlgCurvature;
use crate::exterior::Form;
use crate::homogeneous::HomogeneousSpace;
use crate::splitting::Partition;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CatalogError {
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
}

/// Where an entry's curvature comes from.
#[derive(Debug, Clone)]
pub enum CurvatureSource {
    None,
    Explicit(AlgCurvature),
    Homogeneous(HomogeneousSpace),
}

/// Externally supplied scalars with a provenance note.
#[derive(Debug, Clone, PartialEq)]
pub struct GivenScalars {
    pub scal_g: Option<f64>,
    pub t_norm2: Option<f64>,
    pub mu2_list: Option<Vec<f64>>,
    pub provenance: String,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub n: usize,
    pub partition: Partition,
    pub torsion: Form,
    pub curvature_source: CurvatureSource,
    pub given_scalars: Option<GivenScalars>,
    /// Named companion forms (the almost complex structure Ω, for example).
    pub extras: Vec<(String, Form)>,
    /// Free-text context: basis adaptations, aliases, caveats.
    pub notes: Vec<String>,
}

impl CatalogEntry {
    /// The curvature tensor, derived for homogeneous entries.
    pub fn curvature(&self) -> Option<AlgCurvature> {
        match &self.curvature_source {
            CurvatureSource::None => None,
            CurvatureSource::Explicit(r) => Some(r.clone()),
            CurvatureSource::Homogeneous(s) => {
                Some(s.canonical_curvature().expect("catalog space is valid"))
            }
        }
    }

    pub fn homogeneous(&self) -> Option<&HomogeneousSpace> {
        match &self.curvature_source {
            CurvatureSource::Homogeneous(s) => Some(s),
            _ => None,
        }
    }
}

/// Names of all entries, in catalog order.
pub fn names() -> Vec<&'static str> {
    vec![
        "nk_F12",
        "nk_CP3",
        "stiefel_v2r4",
        "stiefel_v2r5",
        "flat_trivial",
        "nonsplit_example",
    ]
}

/// Fetches an entry by name.
pub fn get(name: &str) -> Result<CatalogEntry, CatalogError> {
    match name {
        "nk_F12" => Ok(nk_entry("nk_F12")),
        "nk_CP3" => {
            let mut entry = nk_entry("nk_CP3");
            entry.notes.push(
                "shares the algebraic data of nk_F12; the two nearly Kähler twistor spaces \
                 have the same splitting pattern, torsion and scalars at frame level"
                    .to_string(),
            );
            Ok(entry)
        }
        "stiefel_v2r4" => Ok(stiefel_v2r4()),
        "stiefel_v2r5" => Ok(stiefel_v2r5()),
        "flat_trivial" => Ok(flat_trivial()),
        "nonsplit_example" => Ok(nonsplit_example()),
        other => Err(CatalogError::UnknownEntry(other.to_string())),
    }
}

/// The nearly Kähler torsion `e_245 + e_146 - e_236 + e_135`.
pub fn nearly_kaehler_torsion() -> Form {
    Form::from_terms(
        6,
        [
            (&[2, 4, 5][..], 1.0),
            (&[1, 4, 6][..], 1.0),
            (&[2, 3, 6][..], -1.0),
            (&[1, 3, 5][..], 1.0),
        ],
    )
    .expect("static data")
}

fn nk_entry(name: &str) -> CatalogEntry {
    let omega = Form::from_terms(
        6,
        [(&[1, 2][..], 1.0), (&[3, 4][..], -1.0), (&[5, 6][..], 1.0)],
    )
    .expect("static data");
    CatalogEntry {
        name: name.to_string(),
        n: 6,
        partition: Partition::new(6, vec![vec![1, 2], vec![3, 4], vec![5, 6]])
            .expect("static data"),
        torsion: nearly_kaehler_torsion(),
        curvature_source: CurvatureSource::None,
        given_scalars: Some(GivenScalars {
            scal_g: Some(30.0),
            t_norm2: Some(4.0),
            mu2_list: None,
            provenance: "nearly Kähler reference values (given, not derived here)".to_string(),
        }),
        extras: vec![("omega".to_string(), omega)],
        notes: vec![
            "the curvature is not part of this entry; deriving it needs the nearly Kähler \
             normalization of the underlying group data"
                .to_string(),
        ],
    }
}

/// Expands brackets of `so(N)` over a basis of signed elementary
/// skew-symmetric matrices `sign·E_pq` (p < q), using
/// `[E_ab, E_cd] = δ_bc·E_ad + δ_ad·E_bc - δ_ac·E_bd - δ_bd·E_ac`.
fn so_brackets(basis: &[(f64, usize, usize)]) -> Vec<(usize, usize, usize, f64)> {
    // canonicalizes E_uv to u < v with sign
    let canon = |u: usize, v: usize| -> Option<(usize, usize, f64)> {
        if u == v {
            None
        } else if u < v {
            Some((u, v, 1.0))
        } else {
            Some((v, u, -1.0))
        }
    };
    let mut records = Vec::new();
    for (bi, &(si, a, b)) in basis.iter().enumerate() {
        for (bj, &(sj, c, d)) in basis.iter().enumerate().skip(bi + 1) {
            // accumulate [E_ab, E_cd] as coefficients on canonical E_uv
            let mut parts: Vec<(usize, usize, f64)> = Vec::new();
            let mut push = |u: usize, v: usize, coeff: f64| {
                if coeff != 0.0 {
                    if let Some((p, q, s)) = canon(u, v) {
                        parts.push((p, q, coeff * s));
                    }
                }
            };
            if b == c {
                push(a, d, 1.0);
            }
            if a == d {
                push(b, c, 1.0);
            }
            if a == c {
                push(b, d, -1.0);
            }
            if b == d {
                push(a, c, -1.0);
            }
            for (p, q, coeff) in parts {
                // locate the basis element carrying E_pq
                let (bk, &(sk, _, _)) = basis
                    .iter()
                    .enumerate()
                    .find(|(_, &(_, u, v))| u == p && v == q)
                    .expect("so(N) basis closed under brackets");
                let value = si * sj * coeff * sk;
                if value != 0.0 {
                    records.push((bi + 1, bj + 1, bk + 1, value));
                }
            }
        }
    }
    records
}

/// The Stiefel manifold `V₂(ℝ⁴) = SO(4)/SO(2)` (n = 5) with the normal
/// metric. The adapted frame is `e1 = E13, e2 = E14, e3 = E23, e4 = E24,
/// e5 = -E12` and `𝔥 = ⟨E34⟩`; the orientation of the fifth direction is
/// chosen so the canonical torsion comes out as `-(e_135 + e_245)`.
pub fn stiefel_v2r4_space() -> HomogeneousSpace {
    let basis: Vec<(f64, usize, usize)> = vec![
        (1.0, 1, 3),
        (1.0, 1, 4),
        (1.0, 2, 3),
        (1.0, 2, 4),
        (-1.0, 1, 2),
        // 𝔥
        (1.0, 3, 4),
    ];
    let brackets = so_brackets(&basis);
    HomogeneousSpace::new("V₂(ℝ⁴) = SO(4)/SO(2)", 5, 1, &brackets, None)
        .expect("static catalog data is valid")
}

/// The Stiefel manifold `V₂(ℝ⁵) = SO(5)/SO(3)` (n = 7) with the normal
/// metric. Adapted frame `e1..e3 = E13, E14, E15`, `e4..e6 = E23, E24, E25`,
/// `e7 = -E12`; `𝔥 = ⟨E34, E35, E45⟩`. The canonical torsion is
/// `-(e_147 + e_257 + e_367)`.
pub fn stiefel_v2r5_space() -> HomogeneousSpace {
    let basis: Vec<(f64, usize, usize)> = vec![
        (1.0, 1, 3),
        (1.0, 1, 4),
        (1.0, 1, 5),
        (1.0, 2, 3),
        (1.0, 2, 4),
        (1.0, 2, 5),
        (-1.0, 1, 2),
        // 𝔥
        (1.0, 3, 4),
        (1.0, 3, 5),
        (1.0, 4, 5),
    ];
    let brackets = so_brackets(&basis);
    HomogeneousSpace::new("V₂(ℝ⁵) = SO(5)/SO(3)", 7, 3, &brackets, None)
        .expect("static catalog data is valid")
}

fn stiefel_v2r4() -> CatalogEntry {
    let space = stiefel_v2r4_space();
    let torsion = space.canonical_torsion().expect("catalog space is valid");
    CatalogEntry {
        name: "stiefel_v2r4".to_string(),
        n: 5,
        partition: Partition::new(5, vec![vec![1, 2], vec![3, 4], vec![5]]).expect("static data"),
        torsion,
        curvature_source: CurvatureSource::Homogeneous(space),
        given_scalars: None,
        extras: vec![],
        notes: vec![
            "frame adapted to so(4): e1=E13, e2=E14, e3=E23, e4=E24, e5=-E12; the Sasaki \
             direction is the one-dimensional block"
                .to_string(),
            "reference torsion -(e_135 + e_245); the normal metric fixes the overall scale"
                .to_string(),
        ],
    }
}

fn stiefel_v2r5() -> CatalogEntry {
    let space = stiefel_v2r5_space();
    let torsion = space.canonical_torsion().expect("catalog space is valid");
    CatalogEntry {
        name: "stiefel_v2r5".to_string(),
        n: 7,
        partition: Partition::new(7, vec![vec![1, 2, 3], vec![4, 5, 6], vec![7]])
            .expect("static data"),
        torsion,
        curvature_source: CurvatureSource::Homogeneous(space),
        given_scalars: None,
        extras: vec![],
        notes: vec![
            "frame adapted to so(5): e1=E13, e2=E14, e3=E15, e4=E23, e5=E24, e6=E25, e7=-E12"
                .to_string(),
            "reference torsion -(e_147 + e_257 + e_367); the normal metric fixes the overall \
             scale"
                .to_string(),
        ],
    }
}

fn flat_trivial() -> CatalogEntry {
    CatalogEntry {
        name: "flat_trivial".to_string(),
        n: 4,
        partition: Partition::trivial(4),
        torsion: Form::zero(4),
        curvature_source: CurvatureSource::Explicit(AlgCurvature::zeros(4).expect("n small")),
        given_scalars: Some(GivenScalars {
            scal_g: Some(0.0),
            t_norm2: Some(0.0),
            mu2_list: None,
            provenance: "flat space".to_string(),
        }),
        extras: vec![],
        notes: vec![],
    }
}

fn nonsplit_example() -> CatalogEntry {
    CatalogEntry {
        name: "nonsplit_example".to_string(),
        n: 3,
        partition: Partition::new(3, vec![vec![1, 2], vec![3]]).expect("static data"),
        torsion: Form::monomial(3, &[1, 2, 3], 1.0).expect("static data"),
        curvature_source: CurvatureSource::None,
        given_scalars: None,
        extras: vec![],
        notes: vec!["two torsion indices share a block: not of split type".to_string()],
    }
}
