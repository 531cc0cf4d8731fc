//! Full-rank integer lattices held in canonical column Hermite normal form.

use serde::{Deserialize, Serialize};

use super::int::{checked, IntMatrix};
use crate::error::{Error, Result};

/// A full-rank sublattice of `Z^d`, spanned by the columns of `basis`.
///
/// `basis` is the canonical column HNF: upper triangular, positive diagonal,
/// off-diagonal entries of each row reduced into `[0, diagonal)`. Two equal
/// lattices therefore have identical bases, so `==` is lattice equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Lattice {
    basis: IntMatrix,
    determinant: i128,
}

impl Lattice {
    pub fn from_columns(a: &IntMatrix) -> Result<Lattice> {
        let d = a.rows();
        if a.cols() < d {
            return Err(Error::NotFullRank);
        }
        let (h, _) = a.hnf()?;
        let offset = a.cols() - d;
        for k in 0..offset {
            if h.column(k).iter().any(|&v| v != 0) {
                return Err(Error::NotFullRank);
            }
        }
        let mut basis = IntMatrix::zeros(d, d);
        for r in 0..d {
            for c in 0..d {
                basis[(r, c)] = h[(r, c + offset)];
            }
        }
        if (0..d).any(|i| basis[(i, i)] == 0) {
            return Err(Error::NotFullRank);
        }
        let determinant = (0..d).try_fold(1i128, |acc, i| checked(acc.checked_mul(basis[(i, i)])))?;
        Ok(Lattice { basis, determinant })
    }

    /// `Z^d` itself.
    pub fn standard(d: usize) -> Lattice {
        Lattice {
            basis: IntMatrix::identity(d),
            determinant: 1,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    /// Index of the lattice in `Z^d`.
    pub fn determinant(&self) -> i128 {
        self.determinant
    }

    /// Membership by exact back substitution against the triangular basis.
    pub fn contains(&self, v: &[i128]) -> Result<bool> {
        let d = self.dim();
        if v.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: v.len(),
            });
        }
        let mut rest = v.to_vec();
        for r in (0..d).rev() {
            let piv = self.basis[(r, r)];
            if rest[r] % piv != 0 {
                return Ok(false);
            }
            let coeff = rest[r] / piv;
            if coeff != 0 {
                for k in 0..=r {
                    let sub = checked(coeff.checked_mul(self.basis[(k, r)]))?;
                    rest[k] = checked(rest[k].checked_sub(sub))?;
                }
            }
        }
        Ok(true)
    }

    pub fn contains_lattice(&self, other: &Lattice) -> Result<bool> {
        for c in 0..other.dim() {
            if !self.contains(&other.basis.column(c))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The lattice `k * self`.
    pub fn scaled(&self, k: i128) -> Result<Lattice> {
        Lattice::from_columns(&self.basis.scale(k)?)
    }

    /// The image `M * self`; `M` must be nonsingular.
    pub fn image(&self, m: &IntMatrix) -> Result<Lattice> {
        Lattice::from_columns(&m.mul(&self.basis)?)
    }
}

/// Index `[big : small]`; errors unless `small ⊆ big`.
pub fn lattice_index(big: &Lattice, small: &Lattice) -> Result<i128> {
    if big.dim() != small.dim() {
        return Err(Error::DimensionMismatch {
            expected: big.dim(),
            got: small.dim(),
        });
    }
    if !big.contains_lattice(small)? {
        return Err(Error::NotSublattice);
    }
    Ok(small.determinant() / big.determinant())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_lattice() {
        let l = Lattice::from_columns(&IntMatrix::identity(3).scale(5).unwrap()).unwrap();
        assert_eq!(l.determinant(), 125);
        assert_eq!(l.basis(), &IntMatrix::diagonal(&[5, 5, 5]));
    }

    #[test]
    fn canonical_under_column_permutation() {
        let a = IntMatrix::from_rows(&[[2, 1, 7], [0, 3, 4], [1, 1, 5]]);
        let b = IntMatrix::from_rows(&[[7, 2, 1], [4, 0, 3], [5, 1, 1]]);
        assert_eq!(
            Lattice::from_columns(&a).unwrap(),
            Lattice::from_columns(&b).unwrap()
        );
    }

    #[test]
    fn rank_deficient_rejected() {
        let a = IntMatrix::from_rows(&[[1, 2], [2, 4]]);
        assert!(matches!(Lattice::from_columns(&a), Err(Error::NotFullRank)));
        let thin = IntMatrix::from_rows(&[[1], [0]]);
        assert!(matches!(Lattice::from_columns(&thin), Err(Error::NotFullRank)));
    }

    #[test]
    fn membership() {
        let l = Lattice::from_columns(&IntMatrix::identity(3).scale(2).unwrap()).unwrap();
        assert!(l.contains(&[0, 0, 0]).unwrap());
        assert!(!l.contains(&[1, 0, 0]).unwrap());
        assert!(l.contains(&[2, -4, 6]).unwrap());
        assert!(matches!(l.contains(&[0, 0]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn index_checks() {
        let z = Lattice::standard(2);
        let p = z.scaled(3).unwrap();
        assert_eq!(lattice_index(&z, &z).unwrap(), 1);
        assert_eq!(lattice_index(&z, &p).unwrap(), 9);
        assert!(matches!(lattice_index(&p, &z), Err(Error::NotSublattice)));
    }
}
