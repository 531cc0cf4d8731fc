//! A uniform handle on the concrete finite groups used throughout: quotients
//! `R_i`, the `B(3, r)` family, the wreath point group and small abelian
//! test groups. Elements are integer coordinate vectors.

use serde::{Deserialize, Serialize};

use super::params::SpaceGroupParams;
use super::quotient::{QuotientFamily, QuotientGroup};
use super::wreath::{WreathElement, WreathGroup};
use crate::error::{Error, Result};
use crate::linalg::is_prime;

/// `Z/n_1 × ⋯ × Z/n_k` with every `n_j` a power of `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroup {
    p: u32,
    invariants: Vec<i64>,
}

impl AbelianGroup {
    pub fn new(p: u32, invariants: &[i64]) -> Result<AbelianGroup> {
        if !is_prime(u64::from(p)) {
            return Err(Error::NotPrime(u64::from(p)));
        }
        for &n in invariants {
            let mut m = n;
            while m > 1 && m % i64::from(p) == 0 {
                m /= i64::from(p);
            }
            if n < 2 || m != 1 {
                return Err(Error::InvalidParameter(format!(
                    "invariant {n} is not a positive power of {p}"
                )));
            }
        }
        Ok(AbelianGroup {
            p,
            invariants: invariants.to_vec(),
        })
    }

    /// `C_p^k`.
    pub fn elementary(p: u32, k: usize) -> Result<AbelianGroup> {
        AbelianGroup::new(p, &vec![i64::from(p); k])
    }

    pub fn invariants(&self) -> &[i64] {
        &self.invariants
    }
}

#[derive(Clone, Debug)]
pub enum FiniteGroup {
    Quotient(QuotientGroup),
    Wreath(WreathGroup),
    Abelian(AbelianGroup),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDescriptor {
    pub model: String,
    pub p: u32,
    pub x: u32,
    pub i: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub r: Option<usize>,
    pub order: u128,
    pub snf: Vec<i128>,
    #[serde(rename = "matrixC")]
    pub matrix_c: Vec<Vec<i128>>,
}

impl FiniteGroup {
    pub fn prime(&self) -> u32 {
        match self {
            FiniteGroup::Quotient(g) => g.params().p(),
            FiniteGroup::Wreath(w) => w.params().p(),
            FiniteGroup::Abelian(a) => a.p,
        }
    }

    pub fn order(&self) -> u128 {
        match self {
            FiniteGroup::Quotient(g) => g.order(),
            FiniteGroup::Wreath(w) => w.order(),
            FiniteGroup::Abelian(a) => a.invariants.iter().map(|&n| n as u128).product(),
        }
    }

    pub fn identity(&self) -> Vec<i64> {
        match self {
            FiniteGroup::Quotient(g) => g.identity(),
            FiniteGroup::Wreath(w) => w.identity().encode(),
            FiniteGroup::Abelian(a) => vec![0; a.invariants.len()],
        }
    }

    pub fn mul(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        match self {
            FiniteGroup::Quotient(g) => g.mul(a, b),
            FiniteGroup::Wreath(w) => w
                .mul(&WreathElement::decode(a), &WreathElement::decode(b))
                .encode(),
            FiniteGroup::Abelian(g) => a
                .iter()
                .zip(b)
                .zip(&g.invariants)
                .map(|((x, y), n)| (x + y).rem_euclid(*n))
                .collect(),
        }
    }

    pub fn inverse(&self, a: &[i64]) -> Vec<i64> {
        match self {
            FiniteGroup::Quotient(g) => g.inverse(a),
            FiniteGroup::Wreath(w) => w.inverse(&WreathElement::decode(a)).encode(),
            FiniteGroup::Abelian(g) => a
                .iter()
                .zip(&g.invariants)
                .map(|(x, n)| (-x).rem_euclid(*n))
                .collect(),
        }
    }

    pub fn generators(&self) -> Vec<Vec<i64>> {
        match self {
            FiniteGroup::Quotient(g) => g.generators(),
            FiniteGroup::Wreath(w) => w.generators().iter().map(WreathElement::encode).collect(),
            FiniteGroup::Abelian(a) => (0..a.invariants.len())
                .map(|k| {
                    let mut e = vec![0; a.invariants.len()];
                    e[k] = 1;
                    e
                })
                .collect(),
        }
    }

    pub fn descriptor(&self) -> GroupDescriptor {
        match self {
            FiniteGroup::Quotient(g) => {
                let (model, r) = match g.family() {
                    QuotientFamily::Cyclotomic => ("quotient", None),
                    QuotientFamily::B3r { r } => ("b3r", Some(*r)),
                };
                GroupDescriptor {
                    model: model.into(),
                    p: g.params().p(),
                    x: g.params().x(),
                    i: g.level(),
                    r,
                    order: g.order(),
                    snf: g.translation_invariants(),
                    matrix_c: g.theta().to_rows(),
                }
            }
            FiniteGroup::Wreath(w) => GroupDescriptor {
                model: "wreath".into(),
                p: w.params().p(),
                x: w.params().x(),
                i: 0,
                r: None,
                order: w.order(),
                snf: vec![],
                matrix_c: w.action_matrix(&w.embed_theta()).to_rows(),
            },
            FiniteGroup::Abelian(a) => GroupDescriptor {
                model: "abelian".into(),
                p: a.p,
                x: 0,
                i: 0,
                r: None,
                order: self.order(),
                snf: a.invariants.iter().map(|&n| i128::from(n)).collect(),
                matrix_c: vec![],
            },
        }
    }

    /// Order of `g` by repeated multiplication.
    pub fn element_order(&self, g: &[i64]) -> u64 {
        let id = self.identity();
        let mut acc = g.to_vec();
        let mut n = 1;
        while acc != id {
            acc = self.mul(&acc, g);
            n += 1;
        }
        n
    }
}

impl From<QuotientGroup> for FiniteGroup {
    fn from(g: QuotientGroup) -> FiniteGroup {
        FiniteGroup::Quotient(g)
    }
}

impl From<WreathGroup> for FiniteGroup {
    fn from(w: WreathGroup) -> FiniteGroup {
        FiniteGroup::Wreath(w)
    }
}

impl From<AbelianGroup> for FiniteGroup {
    fn from(a: AbelianGroup) -> FiniteGroup {
        FiniteGroup::Abelian(a)
    }
}

pub fn wreath_group(params: SpaceGroupParams) -> FiniteGroup {
    FiniteGroup::Wreath(WreathGroup::new(params))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space_group::quotient::{b3r, quotient_group};

    #[test]
    fn abelian_validation() {
        assert!(AbelianGroup::new(2, &[4, 2]).is_ok());
        assert!(AbelianGroup::new(2, &[6]).is_err());
        assert!(AbelianGroup::new(3, &[1]).is_err());
        assert!(AbelianGroup::new(4, &[4]).is_err());
    }

    #[test]
    fn descriptors() {
        let g: FiniteGroup = b3r(4).unwrap().into();
        let d = g.descriptor();
        assert_eq!((d.model.as_str(), d.order, d.r), ("b3r", 81, Some(4)));
        let json = serde_json::to_string(&d).unwrap();
        assert!(json.contains("\"matrixC\":[[1,-3],[1,-2]]"));
        let back: GroupDescriptor = serde_json::from_str(&json).unwrap();
        assert_eq!(back, d);

        let q: FiniteGroup = quotient_group(SpaceGroupParams::new(2, 1).unwrap(), 1).unwrap().into();
        assert_eq!(q.descriptor().model, "quotient");
        assert_eq!(q.descriptor().snf, vec![4]);
    }

    #[test]
    fn abelian_law() {
        let g: FiniteGroup = AbelianGroup::new(2, &[4, 2]).unwrap().into();
        assert_eq!(g.order(), 8);
        assert_eq!(g.mul(&[3, 1], &[2, 1]), vec![1, 0]);
        assert_eq!(g.inverse(&[1, 1]), vec![3, 1]);
        assert_eq!(g.element_order(&[1, 0]), 4);
    }
}
