use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use coclass_core::cochain::{
    act_on_cochain, check_delta, check_eta_equivariance, check_inflation_equivariance, cross_product_eval,
    Cochain, ElementaryTensor,
};
use coclass_core::space_group::{SpaceGroupParams, WreathGroup};

fn params(p: u32, x: u32) -> SpaceGroupParams {
    SpaceGroupParams::new(p, x).unwrap()
}

#[test]
fn wrong_twist_is_caught() {
    // Moving the arguments by q instead of q^{-1} must break the identity.
    let pr = params(3, 2);
    let w = WreathGroup::new(pr);
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut failures = 0;
    for _ in 0..300 {
        let q = w.random_element(&mut rng);
        let slot = rng.gen_range(0..pr.blocks());
        let f = Cochain::random(3, 2, 1, &mut rng);
        let t = ElementaryTensor::single(pr.blocks(), slot, f);
        let z: Vec<u8> = (0..pr.dim()).map(|_| rng.gen_range(0..3)).collect();
        let wrong = cross_product_eval(&t, &[w.act(&q, &z).unwrap()]).unwrap();
        let right = cross_product_eval(&act_on_cochain(&w, &q, &t), &[z]).unwrap();
        if wrong != right {
            failures += 1;
        }
    }
    assert!(failures > 0);
}

#[test]
fn correct_twist_holds_pointwise() {
    let pr = params(2, 3);
    let w = WreathGroup::new(pr);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..300 {
        let q = w.random_element(&mut rng);
        let slot = rng.gen_range(0..pr.blocks());
        let t = ElementaryTensor::single(pr.blocks(), slot, Cochain::random(2, 1, 2, &mut rng));
        let z: Vec<Vec<u8>> = (0..2).map(|_| (0..pr.dim()).map(|_| rng.gen_range(0..2)).collect()).collect();
        let q_inv = w.inverse(&q);
        let moved: Vec<Vec<u8>> = z.iter().map(|v| w.act(&q_inv, v).unwrap()).collect();
        assert_eq!(
            cross_product_eval(&t, &moved).unwrap(),
            cross_product_eval(&act_on_cochain(&w, &q, &t), &z).unwrap()
        );
    }
}

#[test]
fn reports_are_deterministic() {
    let a = check_eta_equivariance(params(3, 1), 2, 200, 8).unwrap();
    let b = check_eta_equivariance(params(3, 1), 2, 200, 8).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    assert!(a.passed());
}

#[test]
fn inflation_and_delta_hold() {
    for (p, x, i) in [(2, 1, 3), (3, 1, 2), (2, 2, 2)] {
        let r = check_inflation_equivariance(params(p, x), i, 2, 200, 1).unwrap();
        assert!(r.passed(), "{r:?}");
        let r = check_delta(params(p, x), i, 200, 1).unwrap();
        assert!(r.passed(), "{r:?}");
    }
}

#[test]
fn degree_out_of_range_is_rejected() {
    assert!(check_eta_equivariance(params(3, 1), 0, 10, 0).is_err());
}
