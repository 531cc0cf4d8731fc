//! The generator θ of the point group acting on the translation lattice.

use super::params::SpaceGroupParams;
use crate::error::{Error, Result};
use crate::linalg::{is_prime, IntMatrix};

/// Coefficients (lowest degree first) of the `p^x`-th cyclotomic polynomial
/// `Φ_p(y^{p^{x-1}}) = Σ_{k<p} y^{k p^{x-1}}`.
pub fn cyclotomic_coefficients(params: SpaceGroupParams) -> Vec<i128> {
    let step = params.blocks();
    let mut c = vec![0i128; params.dim() + 1];
    for k in 0..params.p() as usize {
        c[k * step] = 1;
    }
    c
}

/// Companion matrix of a monic polynomial: ones on the subdiagonal and
/// `-c_0, …, -c_{n-1}` down the last column.
pub fn companion(monic: &[i128]) -> IntMatrix {
    let n = monic.len() - 1;
    assert_eq!(monic[n], 1, "polynomial must be monic");
    let mut m = IntMatrix::zeros(n, n);
    for r in 0..n {
        if r + 1 < n {
            m[(r + 1, r)] = 1;
        }
        m[(r, n - 1)] = -monic[r];
    }
    m
}

fn binomial(n: u64, k: u64) -> i128 {
    (0..k).fold(1i128, |acc, j| acc * i128::from(n - j) / i128::from(j + 1))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaAction {
    params: SpaceGroupParams,
    matrix: IntMatrix,
}

impl ThetaAction {
    pub fn params(&self) -> SpaceGroupParams {
        self.params
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn minus_identity(&self) -> IntMatrix {
        self.matrix
            .sub(&IntMatrix::identity(self.params.dim()))
            .expect("small entries")
    }

    /// `C^{p^x} = I`.
    pub fn has_point_order(&self) -> Result<bool> {
        Ok(self.matrix.pow(self.params.point_order())?.is_identity())
    }

    /// `Φ_{p^x}(C) = 0`.
    pub fn annihilated_by_cyclotomic(&self) -> Result<bool> {
        Ok(self
            .matrix
            .eval_poly(&cyclotomic_coefficients(self.params))?
            .is_zero())
    }
}

/// θ as the companion matrix of the `p^x`-th cyclotomic polynomial.
pub fn companion_cyclotomic(params: SpaceGroupParams) -> ThetaAction {
    ThetaAction {
        params,
        matrix: companion(&cyclotomic_coefficients(params)),
    }
}

/// The `(p-1)×(p-1)` integral action of θ on `Z_p[θ]` in the basis where
/// `θ - 1` acts by the companion matrix of `((X+1)^p - 1)/X`.
pub fn maximal_class_matrix(p: u32) -> Result<IntMatrix> {
    if !is_prime(u64::from(p)) {
        return Err(Error::NotPrime(u64::from(p)));
    }
    let n = p as usize - 1;
    // ((X+1)^p - 1)/X = Σ_{j=1}^{p} C(p,j) X^{j-1}
    let coeffs: Vec<i128> = (1..=u64::from(p)).map(|j| binomial(u64::from(p), j)).collect();
    let shifted = companion(&coeffs);
    shifted.add(&IntMatrix::identity(n))
}

/// Matrix of `a ↦ [a, θ] = a θ a^{-1} θ^{-1}` on the translation lattice,
/// written additively: `I - C`.
pub fn delta(theta: &IntMatrix) -> IntMatrix {
    IntMatrix::identity(theta.rows())
        .sub(theta)
        .expect("small entries")
}
