//! Pointwise checks of the equivariance identities for `η`, `δ` and
//! inflation. Each trial draws from its own ChaCha stream, so a report
//! depends only on the seed and the trial count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::tensor::{act_on_cochain, cross_product_eval, Cochain, ElementaryTensor};
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::space_group::{delta, quotient_group, QuotientGroup, SpaceGroupParams, WreathElement, WreathGroup};

/// Cap on the number of cases an exhaustive check may visit.
pub const EXHAUSTIVE_LIMIT: u128 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub trial: u64,
    pub lhs: i64,
    pub rhs: i64,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivarianceReport {
    pub identity: String,
    pub p: u32,
    pub x: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub level: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    pub trials: u64,
    pub failures: u64,
    #[serde(rename = "firstCounterexample")]
    pub first_counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exhaustive: Option<bool>,
}

impl EquivarianceReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Runs `trial` for every index in parallel and collects failures in index
/// order.
fn run_trials<F>(trials: u64, trial: F) -> (u64, Option<Counterexample>)
where
    F: Fn(u64) -> Option<Counterexample> + Sync + Send,
{
    let failures: Vec<Counterexample> = (0..trials).into_par_iter().filter_map(trial).collect();
    (failures.len() as u64, failures.into_iter().next())
}

fn random_vector<R: Rng + ?Sized>(p: u32, len: usize, rng: &mut R) -> Vec<u8> {
    (0..len).map(|_| rng.gen_range(0..p) as u8).collect()
}

/// Both sides of `q · η(f)(z) = η(q · f)(z)`, the left one computed as
/// `η(f)(q^{-1} z_1, …, q^{-1} z_m)`.
fn eta_sides(w: &WreathGroup, q: &WreathElement, t: &ElementaryTensor, z: &[Vec<u8>]) -> Result<(u8, u8)> {
    let q_inv = w.inverse(q);
    let moved = z.iter().map(|v| w.act(&q_inv, v)).collect::<Result<Vec<_>>>()?;
    let lhs = cross_product_eval(t, &moved)?;
    let rhs = cross_product_eval(&act_on_cochain(w, q, t), z)?;
    Ok((lhs, rhs))
}

fn eta_witness(q: &WreathElement, slot: usize, z: &[Vec<u8>]) -> String {
    format!("q = ({:?}; {:?}), slot {slot}, z = {z:?}", q.base, q.top)
}

/// Random trials of `q · η(f)(z) = η(q · f)(z)` for elementary tensors
/// `1 ⊗ ⋯ ⊗ f ⊗ ⋯ ⊗ 1` with `f` of the given degree.
pub fn check_eta_equivariance(params: SpaceGroupParams, degree: usize, trials: u64, seed: u64) -> Result<EquivarianceReport> {
    if degree == 0 || degree > 3 {
        return Err(Error::InvalidParameter(format!("degree must be 1..=3, got {degree}")));
    }
    let w = WreathGroup::new(params);
    let (p, k, width) = (params.p(), params.blocks(), params.p() as usize - 1);
    let (failures, first) = run_trials(trials, |trial| {
        let mut rng = trial_rng(seed, trial);
        let q = w.random_element(&mut rng);
        let slot = rng.gen_range(0..k);
        let f = Cochain::random(p as u8, width, degree, &mut rng);
        let t = ElementaryTensor::single(k, slot, f);
        let z: Vec<Vec<u8>> = (0..degree).map(|_| random_vector(p, params.dim(), &mut rng)).collect();
        let (lhs, rhs) = eta_sides(&w, &q, &t, &z).expect("shapes agree");
        (lhs != rhs).then(|| Counterexample {
            trial,
            lhs: lhs.into(),
            rhs: rhs.into(),
            witness: eta_witness(&q, slot, &z),
        })
    });
    Ok(EquivarianceReport {
        identity: "eta-equivariance".into(),
        p,
        x: params.x(),
        level: None,
        degree: Some(degree),
        trials,
        failures,
        first_counterexample: first,
        seed: Some(seed),
        exhaustive: None,
    })
}

/// All tuples in `(F_p^len)^m`, first coordinate fastest.
fn all_tuples(p: u32, len: usize, m: usize) -> Vec<Vec<Vec<u8>>> {
    let total = (p as usize).pow((len * m) as u32);
    (0..total)
        .map(|mut idx| {
            (0..m)
                .map(|_| {
                    (0..len)
                        .map(|_| {
                            let c = (idx % p as usize) as u8;
                            idx /= p as usize;
                            c
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// Every `q ∈ W(x)`, every slot, every basis cochain of the given degree and
/// every argument tuple.
pub fn check_eta_exhaustive(params: SpaceGroupParams, degree: usize) -> Result<EquivarianceReport> {
    let w = WreathGroup::new(params);
    let (p, k, width) = (params.p(), params.blocks(), params.p() as usize - 1);
    let basis_args: Vec<Vec<Vec<u8>>> = all_tuples(p, width, degree)
        .into_iter()
        .filter(|args| args.iter().all(|a| a.iter().any(|&c| c != 0)))
        .collect();
    let cases = w.order()
        * k as u128
        * basis_args.len() as u128
        * u128::from(p).pow((params.dim() * degree) as u32);
    if cases > EXHAUSTIVE_LIMIT {
        return Err(Error::BudgetExceeded {
            what: "exhaustive cases",
            needed: cases,
            limit: EXHAUSTIVE_LIMIT,
        });
    }
    let elements = {
        let gens = w.generators();
        let mut seen = std::collections::BTreeSet::from([w.identity()]);
        let mut stack = vec![w.identity()];
        while let Some(g) = stack.pop() {
            for s in &gens {
                let h = w.mul(&g, s);
                if seen.insert(h.clone()) {
                    stack.push(h);
                }
            }
        }
        seen.into_iter().collect::<Vec<_>>()
    };
    let zs = all_tuples(p, params.dim(), degree);
    let mut trials = 0u64;
    let mut failures = 0u64;
    let mut first = None;
    for q in &elements {
        for slot in 0..k {
            for args in &basis_args {
                let t = ElementaryTensor::single(k, slot, Cochain::indicator(p as u8, width, args)?);
                for z in &zs {
                    let (lhs, rhs) = eta_sides(&w, q, &t, z)?;
                    if lhs != rhs {
                        failures += 1;
                        first.get_or_insert_with(|| Counterexample {
                            trial: trials,
                            lhs: lhs.into(),
                            rhs: rhs.into(),
                            witness: eta_witness(q, slot, z),
                        });
                    }
                    trials += 1;
                }
            }
        }
    }
    Ok(EquivarianceReport {
        identity: "eta-equivariance".into(),
        p,
        x: params.x(),
        level: None,
        degree: Some(degree),
        trials,
        failures,
        first_counterexample: first,
        seed: None,
        exhaustive: Some(true),
    })
}

/// `π_i: T_i → T_0 = T / pT`, reducing a lift of the Smith coordinates.
pub fn project_to_t0(g: &QuotientGroup, z: &[i64]) -> Result<Vec<u8>> {
    let p = i128::from(g.params().p());
    Ok(g.lift(z)?.iter().map(|&c| c.rem_euclid(p) as u8).collect())
}

/// `inf(f)(z_1, …, z_m) = f(π_i z_1, …, π_i z_m)`.
pub fn inflate_eval(f: &Cochain, g: &QuotientGroup, z: &[Vec<i64>]) -> Result<u8> {
    let projected = z.iter().map(|v| project_to_t0(g, v)).collect::<Result<Vec<_>>>()?;
    let args: Vec<&[u8]> = projected.iter().map(Vec::as_slice).collect();
    f.eval(&args)
}

fn mod_p_rows(m: &IntMatrix, p: u32) -> Vec<Vec<u8>> {
    m.reduce_mod(i128::from(p))
        .to_rows()
        .iter()
        .map(|r| r.iter().map(|&c| c as u8).collect())
        .collect()
}

/// Random trials of `θ · inf(f)(z) = inf(θ · f)(z)` on `T_i`, where
/// `(θ · F)(z) = F(θ^{-1} z)`. The left side moves `z` inside `T_i`, the
/// right side moves the projected arguments inside `T / pT`.
pub fn check_inflation_equivariance(
    params: SpaceGroupParams,
    level: usize,
    degree: usize,
    trials: u64,
    seed: u64,
) -> Result<EquivarianceReport> {
    if degree == 0 || degree > 3 {
        return Err(Error::InvalidParameter(format!("degree must be 1..=3, got {degree}")));
    }
    let g = quotient_group(params, level)?;
    let p = params.p();
    let back = params.point_order() - 1;
    let c_inv = mod_p_rows(&g.theta().pow(back)?, p);
    let moduli: Vec<i64> = g.translation_invariants().iter().map(|&m| m as i64).collect();
    let (failures, first) = run_trials(trials, |trial| {
        let mut rng = trial_rng(seed, trial);
        let f = Cochain::random(p as u8, params.dim(), degree, &mut rng);
        let z: Vec<Vec<i64>> = (0..degree)
            .map(|_| moduli.iter().map(|&m| rng.gen_range(0..m)).collect())
            .collect();
        let moved: Vec<Vec<i64>> = z.iter().map(|v| g.act(back, v)).collect();
        let lhs = inflate_eval(&f, &g, &moved).expect("shapes agree");
        let rhs = inflate_eval(&f.precomposed(&c_inv), &g, &z).expect("shapes agree");
        (lhs != rhs).then(|| Counterexample {
            trial,
            lhs: lhs.into(),
            rhs: rhs.into(),
            witness: format!("z = {z:?}"),
        })
    });
    Ok(EquivarianceReport {
        identity: "inflation-equivariance".into(),
        p,
        x: params.x(),
        level: Some(level),
        degree: Some(degree),
        trials,
        failures,
        first_counterexample: first,
        seed: Some(seed),
        exhaustive: None,
    })
}

/// Random trials for `δ = I - C` at level `i`: the square
/// `T → T/N_i`, `T → T/N_{i+1}` commutes with the induced map,
/// `δ(N_i) ⊆ N_{i+1}`, and `δ(C v) = C δ(v)`.
pub fn check_delta(params: SpaceGroupParams, level: usize, trials: u64, seed: u64) -> Result<EquivarianceReport> {
    let here = quotient_group(params, level)?;
    let next = quotient_group(params, level + 1)?;
    let c = here.theta().clone();
    let dl = delta(&c);
    let basis = here.lattice().basis().clone();
    let d = params.dim();
    let (failures, first) = run_trials(trials, |trial| {
        let mut rng = trial_rng(seed, trial);
        let v: Vec<i128> = (0..d).map(|_| rng.gen_range(-50..=50)).collect();
        let coeffs: Vec<i128> = (0..d).map(|_| rng.gen_range(-5..=5)).collect();
        let n = basis.mul_vec(&coeffs).expect("square basis");
        let dv = dl.mul_vec(&v).expect("shapes agree");
        // projection then induced map, against δ then projection
        let via_quotient = next
            .project(&dl.mul_vec(&here.lift(&here.project(&v).unwrap()).unwrap()).unwrap())
            .unwrap();
        let direct = next.project(&dv).unwrap();
        let dn = dl.mul_vec(&n).unwrap();
        let in_next = next.lattice().contains(&dn).unwrap();
        let commutes = dl.mul_vec(&c.mul_vec(&v).unwrap()).unwrap() == c.mul_vec(&dv).unwrap();
        (via_quotient != direct || !in_next || !commutes).then(|| Counterexample {
            trial,
            lhs: i64::from(via_quotient == direct),
            rhs: i64::from(in_next && commutes),
            witness: format!("v = {v:?}, n = {n:?}"),
        })
    });
    Ok(EquivarianceReport {
        identity: "delta-equivariance".into(),
        p: params.p(),
        x: params.x(),
        level: Some(level),
        degree: None,
        trials,
        failures,
        first_counterexample: first,
        seed: Some(seed),
        exhaustive: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: u32, x: u32) -> SpaceGroupParams {
        SpaceGroupParams::new(p, x).unwrap()
    }

    #[test]
    fn single_block_case() {
        let r = check_eta_equivariance(params(5, 1), 2, 200, 1).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn eta_trials_pass_and_are_deterministic() {
        let a = check_eta_equivariance(params(3, 2), 2, 300, 7).unwrap();
        assert_eq!(a.failures, 0);
        assert_eq!(a, check_eta_equivariance(params(3, 2), 2, 300, 7).unwrap());
        assert!(check_eta_equivariance(params(3, 2), 4, 1, 7).is_err());
    }

    #[test]
    fn exhaustive_small_case() {
        let r = check_eta_exhaustive(params(2, 2), 1).unwrap();
        assert_eq!(r.trials, 8 * 2 * 4);
        assert!(r.passed());
    }

    #[test]
    fn untwisted_action_is_caught() {
        // dropping the twist breaks the identity for some q
        let w = WreathGroup::new(params(3, 1));
        let q = w.generators()[0].clone();
        let f = Cochain::indicator(3, 2, &[vec![1, 0]]).unwrap();
        let t = ElementaryTensor::single(1, 0, f);
        let z = vec![vec![1, 0]];
        let lhs = cross_product_eval(&t, &[w.act(&w.inverse(&q), &z[0]).unwrap()]).unwrap();
        let naive = cross_product_eval(&t, &z).unwrap();
        assert_ne!(lhs, naive);
        let (l, r) = eta_sides(&w, &q, &t, &z).unwrap();
        assert_eq!(l, r);
    }

    #[test]
    fn inflation() {
        let r = check_inflation_equivariance(params(3, 1), 2, 1, 500, 3).unwrap();
        assert!(r.passed(), "{r:?}");
        let g = quotient_group(params(3, 1), 0).unwrap();
        let mut rng = trial_rng(5, 0);
        let f = Cochain::random(3, 2, 1, &mut rng);
        // level 0: Smith coordinates already are T / pT
        for z in all_tuples(3, 2, 1) {
            let zi: Vec<Vec<i64>> = z.iter().map(|v| v.iter().map(|&c| i64::from(c)).collect()).collect();
            let proj = project_to_t0(&g, &zi[0]).unwrap();
            assert_eq!(inflate_eval(&f, &g, &zi).unwrap(), f.eval(&[&proj]).unwrap());
        }
    }

    #[test]
    fn delta_square_commutes() {
        for (p, x) in [(2, 1), (3, 1), (3, 2), (5, 1)] {
            let r = check_delta(params(p, x), 2, 200, 11).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }
}
