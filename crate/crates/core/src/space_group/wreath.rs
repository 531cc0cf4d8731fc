//! The point group `W(x) = C_p ≀ (C_p ≀ ⋯ ≀ C_p)` acting on `T / pT`.
//!
//! An element `(a_1, …, a_k; σ)` with `k = p^{x-1}` acts on a vector made of
//! `k` blocks of length `p - 1` by
//! `(q·v)_j = A^{a_j} v_{σ^{-1}(j)}`, where `A` is the companion matrix of
//! `1 + y + ⋯ + y^{p-1}` reduced mod `p`. The top permutations are the tree
//! automorphisms of `Z/p^{x-1}` (`σ(j) mod p^l` depends only on `j mod p^l`),
//! which form a Sylow `p`-subgroup of the symmetric group.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::params::SpaceGroupParams;
use super::theta::{companion, cyclotomic_coefficients};
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WreathElement {
    pub base: Vec<u32>,
    /// Images `σ(0), …, σ(k-1)`.
    pub top: Vec<usize>,
}

impl WreathElement {
    pub fn encode(&self) -> Vec<i64> {
        self.base
            .iter()
            .map(|&a| i64::from(a))
            .chain(self.top.iter().map(|&s| s as i64))
            .collect()
    }

    pub fn decode(v: &[i64]) -> WreathElement {
        let k = v.len() / 2;
        WreathElement {
            base: v[..k].iter().map(|&a| a as u32).collect(),
            top: v[k..].iter().map(|&s| s as usize).collect(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct WreathGroup {
    params: SpaceGroupParams,
    /// Powers `A^0, …, A^{p-1}` of the block action, entries in `[0, p)`.
    block_powers: Vec<Vec<Vec<u8>>>,
}

fn mat_mul_mod(a: &[Vec<u8>], b: &[Vec<u8>], p: u32) -> Vec<Vec<u8>> {
    let n = a.len();
    (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    let s: u32 = (0..n).map(|k| u32::from(a[r][k]) * u32::from(b[k][c])).sum();
                    (s % p) as u8
                })
                .collect()
        })
        .collect()
}

impl WreathGroup {
    pub fn new(params: SpaceGroupParams) -> WreathGroup {
        let p = params.p();
        let base = SpaceGroupParams::new(p, 1).expect("validated prime");
        let a = companion(&cyclotomic_coefficients(base)).reduce_mod(i128::from(p));
        let a: Vec<Vec<u8>> = a.to_rows().iter().map(|r| r.iter().map(|&v| v as u8).collect()).collect();
        let n = a.len();
        let mut block_powers = vec![(0..n)
            .map(|r| (0..n).map(|c| u8::from(r == c)).collect())
            .collect::<Vec<Vec<u8>>>()];
        for _ in 1..p {
            let next = mat_mul_mod(&a, block_powers.last().unwrap(), p);
            block_powers.push(next);
        }
        WreathGroup { params, block_powers }
    }

    pub fn params(&self) -> SpaceGroupParams {
        self.params
    }

    pub fn blocks(&self) -> usize {
        self.params.blocks()
    }

    /// `A^e` for the block action.
    pub fn block_power(&self, e: u32) -> &[Vec<u8>] {
        &self.block_powers[(e % self.params.p()) as usize]
    }

    /// `p^{k + (k-1)/(p-1)}`: base `C_p^k` times the iterated wreath top.
    pub fn order(&self) -> u128 {
        let k = self.blocks() as u32;
        let p = u128::from(self.params.p());
        p.pow(k + (k - 1) / (self.params.p() - 1))
    }

    pub fn identity(&self) -> WreathElement {
        let k = self.blocks();
        WreathElement {
            base: vec![0; k],
            top: (0..k).collect(),
        }
    }

    /// `(a; σ)(b; τ) = (a + b∘σ^{-1}; στ)`.
    pub fn mul(&self, q1: &WreathElement, q2: &WreathElement) -> WreathElement {
        let p = self.params.p();
        let k = self.blocks();
        let mut base = q1.base.clone();
        for j in 0..k {
            // slot σ(j) receives b_j
            let t = q1.top[j];
            base[t] = (base[t] + q2.base[j]) % p;
        }
        let top = (0..k).map(|j| q1.top[q2.top[j]]).collect();
        WreathElement { base, top }
    }

    pub fn inverse(&self, q: &WreathElement) -> WreathElement {
        let p = self.params.p();
        let k = self.blocks();
        let mut top = vec![0; k];
        for j in 0..k {
            top[q.top[j]] = j;
        }
        // (-a∘σ; σ^{-1})
        let base = (0..k).map(|j| (p - q.base[q.top[j]] % p) % p).collect();
        WreathElement { base, top }
    }

    pub fn element_order(&self, q: &WreathElement) -> u64 {
        let id = self.identity();
        let mut acc = q.clone();
        let mut n = 1;
        while acc != id {
            acc = self.mul(&acc, q);
            n += 1;
        }
        n
    }

    /// Whether σ lies in the Sylow subgroup of tree automorphisms: digit `l`
    /// of `σ(j)` is digit `l` of `j` plus a shift depending only on
    /// `j mod p^l`.
    pub fn is_tree_automorphism(&self, top: &[usize]) -> bool {
        let k = self.blocks();
        if top.len() != k || top.iter().any(|&s| s >= k) {
            return false;
        }
        let p = self.params.p() as usize;
        let mut step = 1;
        while step < k {
            let shift = |j: usize| (top[j] / step % p + p - j / step % p) % p;
            if (0..k).any(|j| shift(j) != shift(j % step)) {
                return false;
            }
            step *= p;
        }
        true
    }

    pub fn contains(&self, q: &WreathElement) -> bool {
        q.base.len() == self.blocks()
            && q.base.iter().all(|&a| a < self.params.p())
            && self.is_tree_automorphism(&q.top)
    }

    /// The base generator in slot 0 followed by the tree generators `u_l`,
    /// where `u_l` adds one to digit `l` of `j` when the lower digits vanish.
    pub fn generators(&self) -> Vec<WreathElement> {
        let k = self.blocks();
        let p = self.params.p() as usize;
        let mut gens = vec![];
        let mut e = self.identity();
        e.base[0] = 1;
        gens.push(e);
        let mut step = 1;
        while step < k {
            let top = (0..k)
                .map(|j| {
                    if j % step != 0 {
                        return j;
                    }
                    let digit = (j / step) % p;
                    j - digit * step + ((digit + 1) % p) * step
                })
                .collect();
            gens.push(WreathElement {
                base: vec![0; k],
                top,
            });
            step *= p;
        }
        gens
    }

    /// `(q·v)_j = A^{a_j} v_{σ^{-1}(j)}` on a vector of `k` blocks.
    pub fn act(&self, q: &WreathElement, v: &[u8]) -> Result<Vec<u8>> {
        let width = self.params.p() as usize - 1;
        let k = self.blocks();
        if v.len() != width * k {
            return Err(Error::DimensionMismatch {
                expected: width * k,
                got: v.len(),
            });
        }
        let p = self.params.p();
        let mut out = vec![0u8; v.len()];
        for src in 0..k {
            let dst = q.top[src];
            let a = self.block_power(q.base[dst]);
            for r in 0..width {
                let s: u32 = (0..width)
                    .map(|c| u32::from(a[r][c]) * u32::from(v[src * width + c]))
                    .sum();
                out[dst * width + r] = (s % p) as u8;
            }
        }
        Ok(out)
    }

    /// A uniformly random element: random base, and a tree automorphism
    /// that shifts digit `l` by an independent amount for each residue
    /// class modulo `p^l`.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> WreathElement {
        let p = self.params.p();
        let k = self.blocks();
        let base = (0..k).map(|_| rng.gen_range(0..p)).collect();
        let mut top: Vec<usize> = (0..k).collect();
        let mut step = 1;
        while step < k {
            let shifts: Vec<usize> = (0..step).map(|_| rng.gen_range(0..p as usize)).collect();
            for (j, t) in top.iter_mut().enumerate() {
                let digit = (*t / step) % p as usize;
                let moved = (digit + shifts[j % step]) % p as usize;
                *t = *t - digit * step + moved * step;
            }
            step *= p as usize;
        }
        WreathElement { base, top }
    }

    /// Action of `q` as a `d × d` matrix with entries in `[0, p)`.
    pub fn action_matrix(&self, q: &WreathElement) -> IntMatrix {
        let d = self.params.dim();
        let mut m = IntMatrix::zeros(d, d);
        for c in 0..d {
            let mut e = vec![0u8; d];
            e[c] = 1;
            let col = self.act(q, &e).expect("length d");
            for (r, &v) in col.iter().enumerate() {
                m[(r, c)] = i128::from(v);
            }
        }
        m
    }

    /// A representative of θ of order `p^x`: the base generator in slot 0
    /// composed with the `k`-cycle `j ↦ j + 1`.
    pub fn embed_theta(&self) -> WreathElement {
        let k = self.blocks();
        let mut base = vec![0; k];
        base[0] = 1;
        WreathElement {
            base,
            top: (0..k).map(|j| (j + 1) % k).collect(),
        }
    }
}
