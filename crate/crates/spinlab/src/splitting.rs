//! Frame partitions induced by a holonomy splitting and the resulting
//! decomposition of 3-forms.
//!
//! Under a splitting of the frame into blocks 𝒯_1, ..., 𝒯_k the space of
//! 3-forms decomposes into three invariant pieces: forms inside a single
//! block, forms with two indices in one block and one in another, and forms
//! hitting three distinct blocks. A 3-form is of *split type* when only the
//! third piece is present; together with a parallel torsion this is the
//! defining condition of split holonomy. A nonzero split-type torsion needs
//! at least three blocks.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::exterior::{Form, FormError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PartitionError {
    #[error("block {block} is empty")]
    EmptyBlock { block: usize },
    #[error("frame index {index} appears in more than one block")]
    Overlap { index: usize },
    #[error("frame index {index} is not covered by any block")]
    Gap { index: usize },
    #[error("frame index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("block index {block} out of range 1..={k}")]
    BlockOutOfRange { block: usize, k: usize },
    #[error(transparent)]
    Form(#[from] FormError),
}

/// An ordered decomposition of `{1..n}` into disjoint blocks, canonically
/// sorted by ascending size (ties broken by smallest element). The position
/// each block had in the input is kept for reporting.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    n: usize,
    blocks: Vec<Vec<usize>>,
    input_positions: Vec<usize>,
    block_of: Vec<usize>, // frame index (0-based) -> block index (0-based)
}

impl Partition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self, PartitionError> {
        let mut seen: BTreeSet<usize> = BTreeSet::new();
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(PartitionError::EmptyBlock { block: b + 1 });
            }
            for &i in block {
                if i < 1 || i > n {
                    return Err(PartitionError::IndexOutOfRange { index: i, n });
                }
                if !seen.insert(i) {
                    return Err(PartitionError::Overlap { index: i });
                }
            }
        }
        for i in 1..=n {
            if !seen.contains(&i) {
                return Err(PartitionError::Gap { index: i });
            }
        }
        let mut ordered: Vec<(Vec<usize>, usize)> = blocks
            .into_iter()
            .enumerate()
            .map(|(pos, mut b)| {
                b.sort_unstable();
                (b, pos)
            })
            .collect();
        ordered.sort_by(|(a, _), (b, _)| a.len().cmp(&b.len()).then(a[0].cmp(&b[0])));

        let mut block_of = vec![0usize; n];
        for (bi, (block, _)) in ordered.iter().enumerate() {
            for &i in block {
                block_of[i - 1] = bi;
            }
        }
        Ok(Partition {
            n,
            blocks: ordered.iter().map(|(b, _)| b.clone()).collect(),
            input_positions: ordered.iter().map(|&(_, p)| p).collect(),
            block_of,
        })
    }

    /// The single-block partition of `{1..n}`.
    pub fn trivial(n: usize) -> Self {
        Partition::new(n, vec![(1..=n).collect()]).expect("trivial partition is valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of blocks.
    pub fn k(&self) -> usize {
        self.blocks.len()
    }

    /// Blocks in canonical order.
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// 1-based canonical block containing a frame index.
    pub fn block_of(&self, index: usize) -> Result<usize, PartitionError> {
        if index < 1 || index > self.n {
            return Err(PartitionError::IndexOutOfRange { index, n: self.n });
        }
        Ok(self.block_of[index - 1] + 1)
    }

    pub fn block(&self, block: usize) -> Result<&[usize], PartitionError> {
        self.blocks
            .get(block.wrapping_sub(1))
            .map(|b| b.as_slice())
            .ok_or(PartitionError::BlockOutOfRange {
                block,
                k: self.blocks.len(),
            })
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.len()).collect()
    }

    /// Size of the largest block, `n_k`.
    pub fn n_k(&self) -> usize {
        self.blocks.last().map(|b| b.len()).unwrap_or(0)
    }

    /// Input position (0-based) of each canonical block.
    pub fn input_positions(&self) -> &[usize] {
        &self.input_positions
    }

    /// Classifies an index triple by the block membership of its entries.
    pub fn classify(&self, triple: (usize, usize, usize)) -> Result<MonomialClass, PartitionError> {
        let (a, b, c) = triple;
        let mut blocks = [self.block_of(a)?, self.block_of(b)?, self.block_of(c)?];
        blocks.sort_unstable();
        let [x, y, z] = blocks;
        Ok(if x == y && y == z {
            MonomialClass::Pure { block: x }
        } else if x == y {
            MonomialClass::TwoOne { pair: x, single: z }
        } else if y == z {
            MonomialClass::TwoOne { pair: y, single: x }
        } else {
            MonomialClass::Mixed {
                blocks: (x, y, z),
            }
        })
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (bi, block) in self.blocks.iter().enumerate() {
            if bi > 0 {
                write!(f, " | ")?;
            }
            for (i, idx) in block.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{idx}")?;
            }
        }
        write!(f, "}}")
    }
}

/// The block-membership type of a 3-form monomial. Block indices are
/// 1-based against the canonical block order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonomialClass {
    /// All three indices in one block.
    Pure { block: usize },
    /// Two indices in `pair`, one in `single`.
    TwoOne { pair: usize, single: usize },
    /// Three distinct blocks, ascending.
    Mixed { blocks: (usize, usize, usize) },
}

/// A 3-form split into its three invariant pieces. The pieces have disjoint
/// monomial supports and sum to the original form exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct Lambda3Decomposition {
    /// Component inside each block, in canonical block order.
    pub pure: Vec<Form>,
    /// Component with exactly two indices in a common block.
    pub two_one: Form,
    /// Component hitting three distinct blocks.
    pub mixed: Form,
}

impl Lambda3Decomposition {
    pub fn sum(&self) -> Form {
        let mut total = self.pure.iter().fold(
            Form::zero(self.two_one.n()),
            |acc, f| &acc + f,
        );
        total = &total + &self.two_one;
        &total + &self.mixed
    }
}

/// Splits a 3-form by classifying each monomial.
pub fn decompose_3form(
    torsion: &Form,
    partition: &Partition,
) -> Result<Lambda3Decomposition, PartitionError> {
    if torsion.n() != partition.n() {
        return Err(PartitionError::Form(FormError::DimensionMismatch {
            left: torsion.n(),
            right: partition.n(),
        }));
    }
    if !torsion.is_homogeneous_of(3) {
        return Err(PartitionError::Form(FormError::DegreeMismatch { expected: 3 }));
    }
    let n = torsion.n();
    let mut pure = vec![Form::zero(n); partition.k()];
    let mut two_one = Form::zero(n);
    let mut mixed = Form::zero(n);
    for (tuple, coeff) in torsion.terms() {
        let class = partition.classify((tuple[0], tuple[1], tuple[2]))?;
        let mono = Form::monomial(n, tuple, coeff)?;
        match class {
            MonomialClass::Pure { block } => pure[block - 1] = &pure[block - 1] + &mono,
            MonomialClass::TwoOne { .. } => two_one = &two_one + &mono,
            MonomialClass::Mixed { .. } => mixed = &mixed + &mono,
        }
    }
    Ok(Lambda3Decomposition {
        pure,
        two_one,
        mixed,
    })
}

/// True iff every monomial of the 3-form hits three distinct blocks.
/// A nonzero split-type form forces `k >= 3`.
pub fn is_split_type(torsion: &Form, partition: &Partition) -> Result<bool, PartitionError> {
    let d = decompose_3form(torsion, partition)?;
    Ok(d.pure.iter().all(Form::is_zero) && d.two_one.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

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

    fn p6() -> Partition {
        Partition::new(6, vec![vec![1, 2], vec![3, 4], vec![5, 6]]).unwrap()
    }

    #[test]
    fn construction_and_canonical_order() {
        let p = p6();
        assert_eq!(p.k(), 3);
        assert_eq!(p.n_k(), 2);
        assert_eq!(p.sizes(), vec![2, 2, 2]);

        let p = Partition::new(5, vec![vec![1, 2], vec![3, 4], vec![5]]).unwrap();
        assert_eq!(p.sizes(), vec![1, 2, 2]);
        assert_eq!(p.blocks()[0], vec![5]);
        assert_eq!(p.input_positions(), &[2, 0, 1]);

        assert!(matches!(
            Partition::new(3, vec![vec![1], vec![1, 2], vec![3]]),
            Err(PartitionError::Overlap { index: 1 })
        ));
        assert!(matches!(
            Partition::new(3, vec![vec![1], vec![2]]),
            Err(PartitionError::Gap { index: 3 })
        ));
        assert!(matches!(
            Partition::new(2, vec![vec![1, 2], vec![]]),
            Err(PartitionError::EmptyBlock { .. })
        ));
    }

    #[test]
    fn classify_examples() {
        let p = p6();
        assert_eq!(
            p.classify((2, 4, 5)).unwrap(),
            MonomialClass::Mixed { blocks: (1, 2, 3) }
        );
        assert_eq!(
            p.classify((1, 2, 3)).unwrap(),
            MonomialClass::TwoOne { pair: 1, single: 2 }
        );
        let p2 = Partition::new(6, vec![vec![1, 2, 3], vec![4, 5, 6]]).unwrap();
        assert_eq!(
            p2.classify((1, 2, 3)).unwrap(),
            MonomialClass::Pure { block: 1 }
        );
        assert!(p.classify((1, 2, 9)).is_err());
    }

    #[test]
    fn decompose_examples() {
        let d = decompose_3form(&t_nk(), &p6()).unwrap();
        assert!(d.pure.iter().all(Form::is_zero));
        assert!(d.two_one.is_zero());
        assert_eq!(d.mixed, t_nk());
        assert_eq!(d.sum(), t_nk());

        let p = Partition::new(4, vec![vec![1, 2, 3], vec![4]]).unwrap();
        let t = Form::monomial(4, &[1, 2, 3], 1.0).unwrap();
        let d = decompose_3form(&t, &p).unwrap();
        // canonical order puts {4} first, {1,2,3} second
        assert_eq!(d.pure[1], t);
        assert!(d.two_one.is_zero() && d.mixed.is_zero());

        let t7 = Form::from_terms(
            7,
            [
                (&[1, 4, 7][..], -1.0),
                (&[2, 5, 7][..], -1.0),
                (&[3, 6, 7][..], -1.0),
            ],
        )
        .unwrap();
        let p7 = Partition::new(7, vec![vec![1, 2, 3], vec![4, 5, 6], vec![7]]).unwrap();
        let d = decompose_3form(&t7, &p7).unwrap();
        assert_eq!(d.mixed, t7);
    }

    #[test]
    fn split_type_examples() {
        assert!(is_split_type(&t_nk(), &p6()).unwrap());

        let p = Partition::new(3, vec![vec![1, 2], vec![3]]).unwrap();
        let t = Form::monomial(3, &[1, 2, 3], 1.0).unwrap();
        assert!(!is_split_type(&t, &p).unwrap());

        let t5 = Form::from_terms(5, [(&[1, 3, 5][..], -1.0), (&[2, 4, 5][..], -1.0)]).unwrap();
        let p5 = Partition::new(5, vec![vec![1, 2], vec![3, 4], vec![5]]).unwrap();
        assert!(is_split_type(&t5, &p5).unwrap());
    }

    #[test]
    fn nonzero_split_type_needs_three_blocks() {
        // with k <= 2 any triple has two indices in a common block
        let p = Partition::new(6, vec![vec![1, 2, 3], vec![4, 5, 6]]).unwrap();
        for tuple in [[1, 2, 3], [1, 4, 5], [1, 2, 4], [4, 5, 6], [2, 4, 6]] {
            let t = Form::monomial(6, &tuple, 1.0).unwrap();
            assert!(!is_split_type(&t, &p).unwrap(), "{tuple:?}");
        }
        let trivial = Partition::trivial(4);
        let t = Form::monomial(4, &[1, 2, 4], 1.0).unwrap();
        assert!(!is_split_type(&t, &trivial).unwrap());
        // the zero form is vacuously split for any partition
        assert!(is_split_type(&Form::zero(6), &p).unwrap());
    }
}
