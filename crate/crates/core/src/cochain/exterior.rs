//! The exterior algebra `Λ*(Y)` on `p - 1` degree-one generators over `F_p`,
//! with zero differential.

use crate::error::{Error, Result};
use crate::linalg::{is_prime, Field};

/// Basis monomials are bitmasks over the generators `y_0, …, y_{n-1}`;
/// element vectors are indexed by mask.
#[derive(Clone, Debug)]
pub struct ExteriorAlgebra {
    field: Field,
    gens: usize,
}

impl ExteriorAlgebra {
    pub fn new(p: u32) -> Result<ExteriorAlgebra> {
        if !is_prime(u64::from(p)) || p > 13 {
            return Err(Error::InvalidParameter(format!(
                "exterior algebra needs a prime p <= 13, got {p}"
            )));
        }
        Ok(ExteriorAlgebra {
            field: Field::new(p as u8)?,
            gens: p as usize - 1,
        })
    }

    pub fn generators(&self) -> usize {
        self.gens
    }

    pub fn dim(&self) -> usize {
        1 << self.gens
    }

    pub fn grade(mask: usize) -> usize {
        mask.count_ones() as usize
    }

    /// Graded dimensions `C(p - 1, m)`.
    pub fn graded_dims(&self) -> Vec<usize> {
        let mut dims = vec![0; self.gens + 1];
        for mask in 0..self.dim() {
            dims[Self::grade(mask)] += 1;
        }
        dims
    }

    /// `y_a · y_b` for monomials: zero on overlap, otherwise the sign of the
    /// shuffle that sorts the concatenated indices.
    pub fn monomial_product(&self, a: usize, b: usize) -> Option<(bool, usize)> {
        if a & b != 0 {
            return None;
        }
        let mut swaps = 0;
        for j in 0..self.gens {
            if b >> j & 1 == 1 {
                swaps += (a >> (j + 1)).count_ones();
            }
        }
        Some((swaps % 2 == 1, a | b))
    }

    pub fn basis(&self, mask: usize) -> Vec<u8> {
        let mut v = vec![0; self.dim()];
        v[mask] = 1;
        v
    }

    pub fn generator(&self, j: usize) -> Vec<u8> {
        self.basis(1 << j)
    }

    pub fn mul(&self, x: &[u8], y: &[u8]) -> Vec<u8> {
        let f = self.field;
        let mut out = vec![0u8; self.dim()];
        for (a, &ca) in x.iter().enumerate().filter(|(_, &c)| c != 0) {
            for (b, &cb) in y.iter().enumerate().filter(|(_, &c)| c != 0) {
                if let Some((neg, m)) = self.monomial_product(a, b) {
                    let t = f.mul(ca, cb);
                    out[m] = if neg { f.sub(out[m], t) } else { f.add(out[m], t) };
                }
            }
        }
        out
    }

    pub fn add(&self, x: &[u8], y: &[u8]) -> Vec<u8> {
        x.iter().zip(y).map(|(&a, &b)| self.field.add(a, b)).collect()
    }

    pub fn scale(&self, c: u8, x: &[u8]) -> Vec<u8> {
        x.iter().map(|&a| self.field.mul(c, a)).collect()
    }
}

/// `[C(p-1, m)]` for `m = 0..=p-1`.
pub fn exterior_dims(p: u32) -> Result<Vec<usize>> {
    if !is_prime(u64::from(p)) {
        return Err(Error::NotPrime(u64::from(p)));
    }
    let n = u64::from(p) - 1;
    Ok((0..=n)
        .map(|m| (0..m).fold(1u64, |acc, j| acc * (n - j) / (j + 1)) as usize)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dims() {
        assert_eq!(exterior_dims(2).unwrap(), vec![1, 1]);
        assert_eq!(exterior_dims(3).unwrap(), vec![1, 2, 1]);
        assert_eq!(exterior_dims(5).unwrap(), vec![1, 4, 6, 4, 1]);
        assert!(exterior_dims(4).is_err());
        for p in [2, 3, 5, 7] {
            let e = ExteriorAlgebra::new(p).unwrap();
            assert_eq!(e.graded_dims(), exterior_dims(p).unwrap());
            assert_eq!(e.dim(), 1 << (p - 1));
        }
    }

    #[test]
    fn associativity_and_graded_commutativity() {
        for p in [2, 3, 5] {
            let e = ExteriorAlgebra::new(p).unwrap();
            let n = e.dim();
            for a in 0..n {
                for b in 0..n {
                    let (x, y) = (e.basis(a), e.basis(b));
                    let xy = e.mul(&x, &y);
                    let yx = e.mul(&y, &x);
                    let sign = if ExteriorAlgebra::grade(a) * ExteriorAlgebra::grade(b) % 2 == 1 {
                        p as u8 - 1
                    } else {
                        1
                    };
                    assert_eq!(xy, e.scale(sign, &yx), "p={p} a={a} b={b}");
                    for c in 0..n {
                        let z = e.basis(c);
                        assert_eq!(e.mul(&xy, &z), e.mul(&x, &e.mul(&y, &z)));
                    }
                }
            }
        }
    }

    #[test]
    fn generators_square_to_zero() {
        let e = ExteriorAlgebra::new(5).unwrap();
        for j in 0..4 {
            let y = e.generator(j);
            assert!(e.mul(&y, &y).iter().all(|&c| c == 0));
        }
        let y0y1 = e.mul(&e.generator(0), &e.generator(1));
        let y1y0 = e.mul(&e.generator(1), &e.generator(0));
        assert_eq!(e.add(&y0y1, &y1y0), vec![0; 16]);
    }
}
