//! Computational toolkit for the algebra of metric connections with parallel
//! skew torsion and split holonomy.
//!
//! The crate works pointwise over an oriented orthonormal frame `e_1, ..., e_n`:
//!
//! * [`exterior`]: sparse exterior algebra (wedge, contraction, the 4-form σ_T),
//! * [`clifford`]: matrix representations of Cl(n) and Clifford actions of forms,
//! * [`splitting`]: frame partitions and the split-type decomposition of 3-forms,
//! * [`curvature`]: algebraic curvature tensors with symmetries, Ricci traces,
//!   block structure, partial 4-forms σ̃ⁱ and the cyclic Bianchi sum,
//! * [`homogeneous`]: naturally reductive spaces from structure constants
//!   (canonical connection: torsion and curvature with ∇T = 0 built in),
//! * [`bounds`]: the Dirac eigenvalue bounds β_split, β_univ, β_tw,
//! * [`catalog`]: built-in example geometries,
//! * [`schema`] / [`report`]: the JSON geometry format and the analysis pipeline
//!   behind the `spinlab` command-line tool.

pub mod bounds;
pub mod catalog;
pub mod clifford;
pub mod curvature;
pub mod exterior;
pub mod homogeneous;
pub mod report;
pub mod schema;
pub mod splitting;
