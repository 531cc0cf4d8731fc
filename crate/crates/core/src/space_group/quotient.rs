//! Finite quotients `R_i = (Z^d / N_i) ⋊ C_{p^x}` of the space group.
//!
//! Translations are stored in Smith coordinates: with `D = S B T` the Smith
//! form of a basis `B` of `N_i`, the class of `v` is `S v` reduced modulo the
//! invariant factors. Coordinates whose invariant factor is 1 are dropped.

use super::filtration::filtration_level;
use super::params::SpaceGroupParams;
use super::theta::{companion_cyclotomic, maximal_class_matrix};
use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, Lattice};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuotientFamily {
    /// θ is the companion matrix of the `p^x`-th cyclotomic polynomial.
    Cyclotomic,
    /// `B(3, r)`, built from the integral maximal class matrix for `p = 3`.
    B3r { r: usize },
}

#[derive(Clone, Debug)]
pub struct QuotientGroup {
    params: SpaceGroupParams,
    family: QuotientFamily,
    level: usize,
    theta: IntMatrix,
    lattice: Lattice,
    /// Smith invariant factors of `N_i` in `Z^d`, including ones.
    snf: Vec<i128>,
    /// Positions in the Smith basis with invariant factor > 1.
    active: Vec<usize>,
    /// Row `k` maps a lift in `Z^d` to Smith coordinate `active[k]`.
    to_coords: IntMatrix,
    /// Column `k` lifts Smith coordinate `active[k]` back to `Z^d`.
    from_coords: IntMatrix,
    /// Action of `θ^s` on active coordinates, `s = 0..p^x`.
    theta_powers: Vec<IntMatrix>,
}

impl QuotientGroup {
    pub fn new(
        params: SpaceGroupParams,
        family: QuotientFamily,
        theta: IntMatrix,
        level: usize,
    ) -> Result<QuotientGroup> {
        let d = params.dim();
        if theta.rows() != d || theta.cols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: theta.rows(),
            });
        }
        let lattice = filtration_level(&theta, params.p(), level)?.lattice;
        let (diag, s, _) = lattice.basis().snf()?;
        let snf = diag.diagonal_entries();
        let s_inv = s.inverse_unimodular()?;
        let active: Vec<usize> = (0..d).filter(|&k| snf[k] > 1).collect();
        let to_coords = IntMatrix::from_rows(&active.iter().map(|&k| s.row(k).to_vec()).collect::<Vec<_>>());
        let from_coords = IntMatrix::from_columns(&active.iter().map(|&k| s_inv.column(k)).collect::<Vec<_>>());
        let conj = s.mul(&theta)?.mul(&s_inv)?;
        let mut base = IntMatrix::zeros(active.len(), active.len());
        for (a, &ra) in active.iter().enumerate() {
            for (b, &cb) in active.iter().enumerate() {
                base[(a, b)] = conj[(ra, cb)].rem_euclid(snf[ra]);
            }
        }
        let mut theta_powers = vec![IntMatrix::identity(active.len())];
        for _ in 1..params.point_order() {
            let next = base.mul(theta_powers.last().unwrap())?;
            let mut reduced = next.clone();
            for (a, &ra) in active.iter().enumerate() {
                for b in 0..active.len() {
                    reduced[(a, b)] = next[(a, b)].rem_euclid(snf[ra]);
                }
            }
            theta_powers.push(reduced);
        }
        Ok(QuotientGroup {
            params,
            family,
            level,
            theta,
            lattice,
            snf,
            active,
            to_coords,
            from_coords,
            theta_powers,
        })
    }

    pub fn params(&self) -> SpaceGroupParams {
        self.params
    }

    pub fn family(&self) -> &QuotientFamily {
        &self.family
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn theta(&self) -> &IntMatrix {
        &self.theta
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// Smith invariant factors of `N_i` (including trivial ones).
    pub fn snf(&self) -> &[i128] {
        &self.snf
    }

    /// Abelian invariants of the translation subgroup `T / N_i`, ascending.
    pub fn translation_invariants(&self) -> Vec<i128> {
        self.active.iter().map(|&k| self.snf[k]).collect()
    }

    pub fn coord_len(&self) -> usize {
        self.active.len()
    }

    pub fn order(&self) -> u128 {
        self.translation_invariants()
            .iter()
            .fold(u128::from(self.params.point_order()), |acc, &m| acc * m as u128)
    }

    fn modulus(&self, k: usize) -> i64 {
        self.snf[self.active[k]] as i64
    }

    /// Smith coordinates of the class of `v ∈ Z^d`.
    pub fn project(&self, v: &[i128]) -> Result<Vec<i64>> {
        let raw = self.to_coords.mul_vec(v)?;
        Ok(raw
            .iter()
            .enumerate()
            .map(|(k, &c)| c.rem_euclid(i128::from(self.modulus(k))) as i64)
            .collect())
    }

    /// A lift in `Z^d` of Smith coordinates.
    pub fn lift(&self, u: &[i64]) -> Result<Vec<i128>> {
        let wide: Vec<i128> = u.iter().map(|&c| i128::from(c)).collect();
        self.from_coords.mul_vec(&wide)
    }

    /// `θ^s` applied to translation coordinates.
    pub fn act(&self, s: u64, u: &[i64]) -> Vec<i64> {
        let m = &self.theta_powers[(s % self.params.point_order()) as usize];
        (0..u.len())
            .map(|a| {
                let acc = (0..u.len()).fold(0i128, |acc, b| acc + m[(a, b)] * i128::from(u[b]));
                acc.rem_euclid(i128::from(self.modulus(a))) as i64
            })
            .collect()
    }

    pub fn identity(&self) -> Vec<i64> {
        vec![0; self.active.len() + 1]
    }

    /// `(u, s)(w, t) = (u + θ^s w, s + t)`.
    pub fn mul(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let r = self.active.len();
        let n = self.params.point_order() as i64;
        let s = a[r];
        let moved = self.act(s as u64, &b[..r]);
        let mut out: Vec<i64> = (0..r)
            .map(|k| (a[k] + moved[k]).rem_euclid(self.modulus(k)))
            .collect();
        out.push((s + b[r]).rem_euclid(n));
        out
    }

    pub fn inverse(&self, a: &[i64]) -> Vec<i64> {
        let r = self.active.len();
        let n = self.params.point_order() as i64;
        let back = (n - a[r]).rem_euclid(n);
        let moved = self.act(back as u64, &a[..r]);
        let mut out: Vec<i64> = (0..r).map(|k| (-moved[k]).rem_euclid(self.modulus(k))).collect();
        out.push(back);
        out
    }

    /// Unit translations in Smith coordinates followed by θ.
    pub fn generators(&self) -> Vec<Vec<i64>> {
        let r = self.active.len();
        let mut gens: Vec<Vec<i64>> = (0..r)
            .map(|k| {
                let mut e = vec![0; r + 1];
                e[k] = 1;
                e
            })
            .collect();
        let mut t = vec![0; r + 1];
        t[r] = 1;
        gens.push(t);
        gens
    }
}

/// `R_i` for the cyclotomic model of `T ⋊ C_{p^x}`.
pub fn quotient_group(params: SpaceGroupParams, i: usize) -> Result<QuotientGroup> {
    let theta = companion_cyclotomic(params).matrix().clone();
    QuotientGroup::new(params, QuotientFamily::Cyclotomic, theta, i)
}

/// `B(3, r)`, the quotient of order `3^r` of `(Z_3 × Z_3) ⋊ C_3`.
pub fn b3r(r: usize) -> Result<QuotientGroup> {
    if r < 3 {
        return Err(Error::InvalidParameter(format!("B(3,r) needs r >= 3, got {r}")));
    }
    let params = SpaceGroupParams::new(3, 1)?;
    QuotientGroup::new(params, QuotientFamily::B3r { r }, maximal_class_matrix(3)?, r - 3)
}
