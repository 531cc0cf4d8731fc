//! Minimal free resolutions of `F_p` over `F_p[G]` for finite `p`-groups.
//!
//! A free module `F_k = F_p[G]^{β_k}` is stored as `F_p^{β_k |G|}` with
//! coordinate `(j, h) ↦ j |G| + h`, and `G` acts on the left by
//! `g · (e_j h) = e_j (g h)`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group_model::{burnside_basis, ElementTable};
use crate::linalg::{Echelon, FpMatrix};
use crate::space_group::GroupDescriptor;

/// Resource caps for resolution runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub order: u128,
    pub degree: usize,
    pub matrix: usize,
}

impl Default for Budget {
    fn default() -> Budget {
        Budget {
            order: 729,
            degree: 8,
            matrix: 20_000,
        }
    }
}

impl Budget {
    fn check(&self, what: &'static str, needed: u128, limit: u128) -> Result<()> {
        if needed > limit {
            return Err(Error::BudgetExceeded { what, needed, limit });
        }
        Ok(())
    }
}

/// `F_p[G]` for a `p`-group given by an element table.
pub struct GroupAlgebraContext<'a> {
    table: &'a ElementTable,
    p: u8,
    /// Row `g` holds the permutation `h ↦ g h`.
    lmul: Vec<u32>,
    /// Elements `g` such that `{g - 1}` generates the augmentation ideal.
    radical_gens: Vec<usize>,
}

impl<'a> GroupAlgebraContext<'a> {
    pub fn new(table: &'a ElementTable) -> Result<GroupAlgebraContext<'a>> {
        let p = table.group().prime();
        let n = table.len();
        let mut m = n;
        while m > 1 && m % p as usize == 0 {
            m /= p as usize;
        }
        if m != 1 || n < 2 {
            return Err(Error::NotPGroup {
                order: n as u128,
                p,
            });
        }
        let lmul: Vec<u32> = (0..n)
            .into_par_iter()
            .flat_map_iter(|g| (0..n).map(move |h| table.mul(g, h) as u32))
            .collect();
        Ok(GroupAlgebraContext {
            table,
            p: p as u8,
            lmul,
            radical_gens: burnside_basis(table),
        })
    }

    pub fn table(&self) -> &ElementTable {
        self.table
    }

    pub fn p(&self) -> u8 {
        self.p
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn radical_generators(&self) -> &[usize] {
        &self.radical_gens
    }

    /// Whether each row of the multiplication table is a permutation.
    pub fn actions_are_bijective(&self) -> bool {
        let n = self.order();
        self.lmul.chunks(n).all(|row| {
            let mut seen = vec![false; n];
            row.iter().all(|&h| !std::mem::replace(&mut seen[h as usize], true))
        })
    }

    /// `g · v` for `v` in a free module of any rank.
    pub fn act(&self, g: usize, v: &[u8]) -> Vec<u8> {
        let n = self.order();
        let perm = &self.lmul[g * n..(g + 1) * n];
        let mut out = vec![0u8; v.len()];
        for (block, src) in out.chunks_mut(n).zip(v.chunks(n)) {
            for (h, &c) in src.iter().enumerate() {
                block[perm[h] as usize] = c;
            }
        }
        out
    }

    /// `(g - 1) · v`.
    pub fn act_minus_one(&self, g: usize, v: &[u8]) -> Vec<u8> {
        let p = self.p;
        let mut out = self.act(g, v);
        for (o, &c) in out.iter_mut().zip(v) {
            *o = ((u16::from(*o) + u16::from(p) - u16::from(c)) % u16::from(p)) as u8;
        }
        out
    }

    /// Sum of coefficients in each `F_p[G]` block.
    pub fn augmentation(&self, v: &[u8]) -> Vec<u8> {
        let p = u32::from(self.p);
        v.chunks(self.order())
            .map(|b| (b.iter().map(|&c| u32::from(c)).sum::<u32>() % p) as u8)
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution {
    pub descriptor: Option<GroupDescriptor>,
    pub p: u8,
    pub group_order: usize,
    pub max_degree: usize,
    pub betti: Vec<usize>,
    /// `boundaries[k]` is `d_{k+1}: F_{k+1} → F_k`, of shape
    /// `β_k |G| × β_{k+1} |G|`.
    pub boundaries: Vec<FpMatrix>,
}

impl Resolution {
    /// `d_n`, for `1 ≤ n ≤ max_degree`.
    pub fn boundary(&self, n: usize) -> &FpMatrix {
        &self.boundaries[n - 1]
    }

    /// Every boundary column of every generator lies in the augmentation
    /// ideal of each block.
    pub fn is_minimal(&self) -> bool {
        let n = self.group_order;
        let p = u32::from(self.p);
        self.boundaries.iter().all(|d| {
            (0..d.cols()).step_by(n).all(|c| {
                d.column_vec(c)
                    .chunks(n)
                    .all(|b| b.iter().map(|&x| u32::from(x)).sum::<u32>() % p == 0)
            })
        })
    }

    /// `d_k ∘ d_{k+1} = 0` for all consecutive pairs, by full products.
    pub fn composites_vanish(&self) -> Result<bool> {
        for w in self.boundaries.windows(2) {
            if !w[0].mul(&w[1])?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn rows_matrix(p: u8, cols: usize, rows: &[Vec<u8>]) -> Result<FpMatrix> {
    FpMatrix::from_rows(p, cols, rows)
}

/// Minimal resolution through degree `max_degree` (Betti numbers
/// `β_0..=β_N`, boundaries `d_1..=d_N`).
pub fn minimal_resolution(
    table: &ElementTable,
    max_degree: usize,
    budget: &Budget,
) -> Result<Resolution> {
    budget.check("group order", table.len() as u128, budget.order)?;
    budget.check("degree", max_degree as u128, budget.degree as u128)?;
    let ctx = GroupAlgebraContext::new(table)?;
    let n = ctx.order();
    let p = ctx.p();
    let id = table.identity();

    let mut betti = vec![1usize];
    let mut boundaries = Vec::with_capacity(max_degree);
    // K_0 = augmentation ideal, basis e_h - e_1
    let mut kernel: Vec<Vec<u8>> = (0..n)
        .filter(|&h| h != id)
        .map(|h| {
            let mut v = vec![0u8; n];
            v[h] = 1;
            v[id] = p - 1;
            v
        })
        .collect();

    for k in 0..max_degree {
        let cols = betti[k] * n;
        let dim_k = kernel.len();
        let (c, kern) = (&ctx, &kernel);
        let radical: Vec<Vec<u8>> = c
            .radical_generators()
            .par_iter()
            .flat_map_iter(|&g| kern.iter().map(move |v| c.act_minus_one(g, v)))
            .collect();
        let mut echelon = Echelon::from_matrix(rows_matrix(p, cols, &radical)?);
        drop(radical);
        let next = dim_k - echelon.rank();
        budget.check("matrix side", (next * n) as u128, budget.matrix as u128)?;

        let mut gens = Vec::with_capacity(next);
        for v in &kernel {
            if gens.len() == next {
                break;
            }
            if echelon.insert(v) {
                gens.push(v.clone());
            }
        }
        drop(echelon);
        if gens.len() != next {
            return Err(Error::InvalidParameter(format!(
                "degree {}: found {} generators, expected {next}",
                k + 1,
                gens.len()
            )));
        }

        let mut d = FpMatrix::zeros(p, cols, next * n)?;
        for (j, kappa) in gens.iter().enumerate() {
            for g in 0..n {
                let col = j * n + g;
                for (r, &c) in ctx.act(g, kappa).iter().enumerate() {
                    if c != 0 {
                        d.set(r, col, c);
                    }
                }
            }
        }
        betti.push(next);
        if k + 1 < max_degree {
            kernel = d.kernel_vectors();
            if kernel.len() + dim_k != next * n {
                return Err(Error::InvalidParameter(format!(
                    "degree {}: image of dimension {} does not fill the kernel of dimension {dim_k}",
                    k + 1,
                    next * n - kernel.len()
                )));
            }
        }
        boundaries.push(d);
    }

    Ok(Resolution {
        descriptor: Some(table.group().descriptor()),
        p,
        group_order: n,
        max_degree,
        betti,
        boundaries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_model::DEFAULT_ORDER_BUDGET;
    use crate::space_group::{AbelianGroup, FiniteGroup};

    fn table(g: impl Into<FiniteGroup>) -> ElementTable {
        ElementTable::enumerate(&g.into(), DEFAULT_ORDER_BUDGET).unwrap()
    }

    #[test]
    fn cyclic_groups_are_periodic() {
        for (p, n) in [(2u32, 2i64), (3, 3), (5, 5), (2, 4), (3, 9)] {
            let r = minimal_resolution(&table(AbelianGroup::new(p, &[n]).unwrap()), 6, &Budget::default()).unwrap();
            assert_eq!(r.betti, vec![1; 7], "C_{n}");
            assert!(r.is_minimal());
            assert!(r.composites_vanish().unwrap());
        }
    }

    #[test]
    fn elementary_rank_two() {
        let r = minimal_resolution(&table(AbelianGroup::elementary(3, 2).unwrap()), 5, &Budget::default()).unwrap();
        assert_eq!(r.betti, vec![1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn budgets_are_enforced() {
        let t = table(AbelianGroup::elementary(2, 3).unwrap());
        let tight = Budget {
            matrix: 20,
            ..Budget::default()
        };
        assert!(minimal_resolution(&t, 4, &tight).unwrap_err().is_budget());
        let shallow = Budget {
            degree: 2,
            ..Budget::default()
        };
        assert!(minimal_resolution(&t, 3, &shallow).unwrap_err().is_budget());
    }

    #[test]
    fn context_actions() {
        let t = table(AbelianGroup::new(2, &[4]).unwrap());
        let ctx = GroupAlgebraContext::new(&t).unwrap();
        assert!(ctx.actions_are_bijective());
        let v = vec![1, 0, 0, 0];
        assert_eq!(ctx.augmentation(&ctx.act_minus_one(1, &v)), vec![0]);
    }
}
