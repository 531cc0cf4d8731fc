//! The θ-invariant filtration `N_i = p (C - I)^i Z^d` of the translation
//! lattice and the exact checks of its defining identities.

use serde::Serialize;

use super::params::SpaceGroupParams;
use super::theta::{companion_cyclotomic, cyclotomic_coefficients, delta, ThetaAction};
use crate::error::Result;
use crate::linalg::{lattice_index, IntMatrix, Lattice};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationLattice {
    pub level: usize,
    pub lattice: Lattice,
}

/// `N_i` for an arbitrary θ matrix: the span of the columns of `p (C-I)^i`.
pub fn filtration_level(theta: &IntMatrix, p: u32, i: usize) -> Result<FiltrationLattice> {
    let n = theta.rows();
    let shifted = theta.sub(&IntMatrix::identity(n))?;
    let gens = shifted.pow(i as u64)?.scale(i128::from(p))?;
    Ok(FiltrationLattice {
        level: i,
        lattice: Lattice::from_columns(&gens)?,
    })
}

pub fn filtration(params: SpaceGroupParams, i: usize) -> Result<FiltrationLattice> {
    filtration_level(companion_cyclotomic(params).matrix(), params.p(), i)
}

/// Successive levels `N_0, N_1, …` computed by repeated images under `C - I`,
/// which avoids forming large matrix powers.
pub fn filtration_chain(theta: &IntMatrix, p: u32, top: usize) -> Result<Vec<Lattice>> {
    let n = theta.rows();
    let shifted = theta.sub(&IntMatrix::identity(n))?;
    let mut out = Vec::with_capacity(top + 1);
    let mut current = Lattice::standard(n).scaled(i128::from(p))?;
    out.push(current.clone());
    for _ in 0..top {
        current = current.image(&shifted)?;
        out.push(current.clone());
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub level: Option<usize>,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiltrationReport {
    pub p: u32,
    pub x: u32,
    #[serde(rename = "iMax")]
    pub i_max: usize,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl FiltrationReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Replaces a computed lattice before it is checked; used to inject faults.
pub type LatticeHook<'a> = &'a dyn Fn(usize, Lattice) -> Lattice;

/// Runs every filtration and δ identity for levels `0..=i_max`.
///
/// Level checks pair `N_i` with `N_{i+1}` (and `N_{i+d}`) only when both
/// indices are at most `i_max`, so `i_max = 0` checks `N_0 = pT` alone. The
/// matrix identities for θ and δ run whenever `i_max >= 1`.
pub fn verify_filtration(
    params: SpaceGroupParams,
    i_max: usize,
    hook: Option<LatticeHook<'_>>,
) -> Result<FiltrationReport> {
    let theta = companion_cyclotomic(params);
    let c = theta.matrix();
    let p = i128::from(params.p());
    let d = params.dim();
    let mut levels = filtration_chain(c, params.p(), i_max)?;
    if let Some(hook) = hook {
        levels = levels
            .into_iter()
            .enumerate()
            .map(|(i, l)| hook(i, l))
            .collect();
    }
    let mut checks = Vec::new();
    let mut push = |name: &str, level: Option<usize>, passed: bool| {
        checks.push(Check {
            name: name.to_string(),
            level,
            passed,
        })
    };

    push(
        "N_0 = pT",
        Some(0),
        levels[0] == Lattice::standard(d).scaled(p)?,
    );

    if i_max >= 1 {
        for (name, ok) in theta_identities(&theta)? {
            push(name, None, ok);
        }
    }

    let shifted = theta.minus_identity();
    let dl = delta(c);
    for i in 0..i_max {
        let (big, small) = (&levels[i], &levels[i + 1]);
        let index = lattice_index(big, small).ok();
        push("[N_i : N_{i+1}] = p", Some(i), index == Some(p));
        push("N_{i+1} strictly inside N_i", Some(i), index.is_some_and(|k| k > 1));
        push("(C - I) N_i = N_{i+1}", Some(i), big.image(&shifted)? == *small);
        push("delta(N_i) = N_{i+1}", Some(i), big.image(&dl)? == *small);
        push("C N_i = N_i", Some(i), big.image(c)? == *big);
        if i + d <= i_max {
            push("p N_i = N_{i+d}", Some(i), big.scaled(p)? == levels[i + d]);
        }
    }

    let passed = checks.iter().all(|c| c.passed);
    Ok(FiltrationReport {
        p: params.p(),
        x: params.x(),
        i_max,
        checks,
        passed,
    })
}

/// Matrix-level identities of θ and δ = I - C.
pub fn theta_identities(theta: &ThetaAction) -> Result<Vec<(&'static str, bool)>> {
    let params = theta.params();
    let c = theta.matrix();
    let p = i128::from(params.p());
    let dl = delta(c);
    let det = dl.det()?;
    let adj = dl.adjugate()?;
    // p * D^{-1} = p * adj(D) / det(D)
    let integral = {
        let scaled = adj.scale(p)?;
        (0..scaled.rows()).all(|r| (0..scaled.cols()).all(|k| scaled[(r, k)] % det == 0))
    };
    Ok(vec![
        ("C^{p^x} = I", theta.has_point_order()?),
        ("Phi_{p^x}(C) = 0", theta.annihilated_by_cyclotomic()?),
        (
            "deg Phi_{p^x} = d_x",
            cyclotomic_coefficients(params).len() - 1 == params.dim(),
        ),
        ("det(I - C) = ±p", det.abs() == p),
        ("delta C = C delta", dl.mul(c)? == c.mul(&dl)?),
        ("p (I - C)^{-1} integral", det != 0 && integral),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space_group::theta::maximal_class_matrix;

    fn params(p: u32, x: u32) -> SpaceGroupParams {
        SpaceGroupParams::new(p, x).unwrap()
    }

    #[test]
    fn level_zero_is_p_times_identity() {
        let f = filtration(params(3, 1), 0).unwrap();
        assert_eq!(f.lattice.basis(), &IntMatrix::diagonal(&[3, 3]));
    }

    #[test]
    fn level_one_for_p3_has_determinant_27() {
        let f = filtration(params(3, 1), 1).unwrap();
        assert_eq!(f.lattice.determinant(), 27);
        let direct = IntMatrix::from_rows(&[[0, -1], [1, -1]])
            .sub(&IntMatrix::identity(2))
            .unwrap()
            .scale(3)
            .unwrap();
        assert_eq!(direct.det().unwrap().abs(), 27);
    }

    #[test]
    fn index_p_steps_for_p3() {
        let chain = filtration_chain(
            companion_cyclotomic(params(3, 1)).matrix(),
            3,
            9,
        )
        .unwrap();
        for i in 0..=8 {
            assert_eq!(lattice_index(&chain[i], &chain[i + 1]).unwrap(), 3);
        }
        for i in 0..=6 {
            assert_eq!(chain[i].scaled(3).unwrap(), chain[i + 2]);
        }
    }

    #[test]
    fn chain_agrees_with_direct_powers() {
        let c = companion_cyclotomic(params(2, 2));
        let chain = filtration_chain(c.matrix(), 2, 6).unwrap();
        for (i, l) in chain.iter().enumerate() {
            assert_eq!(&filtration_level(c.matrix(), 2, i).unwrap().lattice, l);
        }
    }

    #[test]
    fn full_suite_passes() {
        for (p, x) in [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2)] {
            let r = verify_filtration(params(p, x), 10 + params(p, x).dim(), None).unwrap();
            assert!(r.passed, "{:?}", r.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn i_max_zero_checks_only_property_a() {
        let r = verify_filtration(params(5, 1), 0, None).unwrap();
        assert_eq!(r.checks.len(), 1);
        assert_eq!(r.checks[0].name, "N_0 = pT");
        assert!(r.passed);
    }

    #[test]
    fn tampered_lattice_is_caught() {
        let hook = |i: usize, l: Lattice| if i == 2 { l.scaled(2).unwrap() } else { l };
        let r = verify_filtration(params(3, 1), 4, Some(&hook)).unwrap();
        assert!(!r.passed);
        let names: Vec<_> = r.failures().map(|c| (c.name.as_str(), c.level)).collect();
        assert!(names.contains(&("[N_i : N_{i+1}] = p", Some(1))));
    }

    #[test]
    fn maximal_class_matrix_filtration_is_uniserial() {
        let m = maximal_class_matrix(3).unwrap();
        let chain = filtration_chain(&m, 3, 6).unwrap();
        for i in 0..6 {
            assert_eq!(lattice_index(&chain[i], &chain[i + 1]).unwrap(), 3);
        }
    }
}
