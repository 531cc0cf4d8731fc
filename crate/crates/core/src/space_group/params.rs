use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::is_prime;

/// Prime `p` and exponent `x` of the point group `C_{p^x}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpaceGroupParams {
    p: u32,
    x: u32,
}

impl SpaceGroupParams {
    pub fn new(p: u32, x: u32) -> Result<SpaceGroupParams> {
        if !is_prime(u64::from(p)) {
            return Err(Error::NotPrime(u64::from(p)));
        }
        if p > 251 {
            return Err(Error::InvalidParameter(format!("p = {p} exceeds 251")));
        }
        if x == 0 {
            return Err(Error::InvalidParameter("x must be at least 1".into()));
        }
        let params = SpaceGroupParams { p, x };
        // keep the point order and lattice dimension comfortably small
        if params.checked_point_order().is_none_or(|n| n > 1 << 20) {
            return Err(Error::InvalidParameter(format!("p^x too large for p={p}, x={x}")));
        }
        Ok(params)
    }

    fn checked_point_order(&self) -> Option<u64> {
        u64::from(self.p).checked_pow(self.x)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn x(&self) -> u32 {
        self.x
    }

    /// Number of blocks `p^{x-1}` of the translation lattice.
    pub fn blocks(&self) -> usize {
        (self.p as usize).pow(self.x - 1)
    }

    /// `d_x = (p - 1) p^{x-1}`, the rank of the translation lattice.
    pub fn dim(&self) -> usize {
        (self.p as usize - 1) * self.blocks()
    }

    /// `p^x`, the order of the point group.
    pub fn point_order(&self) -> u64 {
        u64::from(self.p).pow(self.x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        let pr = SpaceGroupParams::new(3, 2).unwrap();
        assert_eq!(pr.dim(), 6);
        assert_eq!(pr.blocks(), 3);
        assert_eq!(pr.point_order(), 9);
        assert_eq!(SpaceGroupParams::new(2, 1).unwrap().dim(), 1);
    }

    #[test]
    fn validation() {
        assert!(matches!(SpaceGroupParams::new(1, 1), Err(Error::NotPrime(1))));
        assert!(matches!(SpaceGroupParams::new(4, 1), Err(Error::NotPrime(4))));
        assert!(SpaceGroupParams::new(3, 0).is_err());
        assert!(SpaceGroupParams::new(257, 1).is_err());
    }
}
