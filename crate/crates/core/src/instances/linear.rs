//! Linear algebra instances: GF(2) matrices and rational vector families.

use num::{BigInt, BigRational, One, Zero};

use crate::error::{Error, Result};
use crate::subset::{elements, Mask, Universe};
use crate::system::{ConnectivitySystem, SetFunction};

/// Bit matrix over GF(2) with at most 64 columns; row `i` is a column bitmask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gf2Matrix {
    cols: usize,
    rows: Vec<Mask>,
}

impl Gf2Matrix {
    pub fn from_rows(cols: usize, rows: Vec<Mask>) -> Self {
        Gf2Matrix { cols, rows }
    }

    pub fn from_dense(rows: &[Vec<u8>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let bits = rows
            .iter()
            .map(|r| r.iter().enumerate().fold(0, |acc, (j, &b)| if b & 1 == 1 { acc | 1 << j } else { acc }))
            .collect();
        Gf2Matrix { cols, rows: bits }
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    pub fn to_dense(&self) -> Vec<Vec<u8>> {
        (0..self.rows()).map(|i| (0..self.cols).map(|j| u8::from(self.get(i, j))).collect()).collect()
    }

    pub fn rank(&self) -> usize {
        gf2_rank(self.rows.iter().copied())
    }

    /// Column `j` as a row-bitmask.
    pub fn column(&self, j: usize) -> Mask {
        self.rows.iter().enumerate().fold(0, |acc, (i, &r)| if r >> j & 1 == 1 { acc | 1 << i } else { acc })
    }
}

/// Rank of a list of GF(2) vectors, via an xor basis keyed on the leading bit.
pub fn gf2_rank(vectors: impl IntoIterator<Item = Mask>) -> usize {
    let mut basis = [0u64; 64];
    let mut rank = 0;
    for mut v in vectors {
        while v != 0 {
            let top = 63 - v.leading_zeros() as usize;
            if basis[top] == 0 {
                basis[top] = v;
                rank += 1;
                break;
            }
            v ^= basis[top];
        }
    }
    rank
}

/// Rank function of the column matroid of `m` (universe = columns).
pub fn gf2_column_rank(m: &Gf2Matrix) -> SetFunction {
    let cols: Vec<Mask> = (0..m.cols()).map(|j| m.column(j)).collect();
    SetFunction::new(Universe::indexed(m.cols()), move |x| gf2_rank(elements(x).map(|j| cols[j])) as i64)
}

/// Finite family of vectors in `ℚ^d`, exact arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalVectorFamily {
    dimension: usize,
    vectors: Vec<Vec<BigRational>>,
    labels: Universe,
}

impl RationalVectorFamily {
    pub fn new(dimension: usize, vectors: Vec<Vec<BigRational>>, labels: Option<Vec<String>>) -> Result<Self> {
        if let Some((i, _)) = vectors.iter().enumerate().find(|(_, v)| v.len() != dimension) {
            return Err(Error::invalid("vector family", format!("vector {i} has the wrong length")));
        }
        let labels = match labels {
            Some(l) => Universe::new(l)?,
            None => Universe::new((0..vectors.len()).map(|i| format!("v{i}")))?,
        };
        if labels.len() != vectors.len() {
            return Err(Error::invalid("vector family", "label count differs from vector count"));
        }
        Ok(RationalVectorFamily { dimension, vectors, labels })
    }

    /// Integer vectors.
    pub fn from_integers(dimension: usize, rows: &[Vec<i64>], labels: Option<Vec<String>>) -> Result<Self> {
        let vs = rows
            .iter()
            .map(|r| r.iter().map(|&a| BigRational::from_integer(BigInt::from(a))).collect())
            .collect();
        RationalVectorFamily::new(dimension, vs, labels)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn universe(&self) -> &Universe {
        &self.labels
    }

    pub fn vectors(&self) -> &[Vec<BigRational>] {
        &self.vectors
    }

    /// `dim⟨X⟩` by exact Gaussian elimination.
    pub fn rank(&self, x: Mask) -> usize {
        let mut rows: Vec<Vec<BigRational>> = elements(x).map(|i| self.vectors[i].clone()).collect();
        rational_rank(&mut rows, self.dimension)
    }
}

fn rational_rank(rows: &mut [Vec<BigRational>], cols: usize) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else { continue };
        rows.swap(rank, p);
        let inv = BigRational::one() / rows[rank][c].clone();
        for j in c..cols {
            rows[rank][j] = &rows[rank][j] * &inv;
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let f = rows[r][c].clone();
                for j in c..cols {
                    let d = &f * &rows[rank][j];
                    rows[r][j] -= d;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `κ(X) = dim⟨X⟩ + dim⟨X̄⟩ − dim⟨U⟩`.
pub fn vector_connectivity(f: &RationalVectorFamily) -> ConnectivitySystem {
    let fam = f.clone();
    let all = f.universe().full();
    let total = f.rank(all) as i64;
    ConnectivitySystem::new(f.universe().clone(), move |x| {
        fam.rank(x) as i64 + fam.rank(all & !x) as i64 - total
    })
    .named("vector")
}

/// Rank function `X ↦ dim⟨X⟩` of a vector family.
pub fn vector_rank(f: &RationalVectorFamily) -> SetFunction {
    let fam = f.clone();
    SetFunction::new(f.universe().clone(), move |x| fam.rank(x) as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::Evaluate;

    #[test]
    fn gf2_rank_small() {
        assert_eq!(gf2_rank([0b11, 0b01, 0b10]), 2);
        assert_eq!(gf2_rank([]), 0);
        let m = Gf2Matrix::from_dense(&[vec![1, 1, 1, 0], vec![1, 0, 0, 1], vec![0, 1, 1, 1]]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn independent_vectors_are_disconnected() {
        let f = RationalVectorFamily::from_integers(3, &[vec![1, 0, 0], vec![0, 2, 0], vec![1, 1, 5]], None).unwrap();
        let k = vector_connectivity(&f);
        assert!((0..8).all(|x| k.eval(x) == 0));
    }

    #[test]
    fn fractions_are_exact() {
        use num::FromPrimitive;
        let half = BigRational::from_f64(0.5).unwrap();
        let f = RationalVectorFamily::new(
            2,
            vec![
                vec![half.clone(), BigRational::one()],
                vec![BigRational::one(), BigRational::from_integer(2.into())],
            ],
            None,
        )
        .unwrap();
        assert_eq!(f.rank(0b11), 1);
    }
}
