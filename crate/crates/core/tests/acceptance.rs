//! Acceptance suite. Runs each criterion in turn and prints one
//! `PASS`/`FAIL` line per criterion; exits non-zero if any fails.

use std::fs;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use coclass_core::cochain::{check_eta_equivariance, check_eta_exhaustive};
use coclass_core::group_model::{frattini_rank, ElementTable};
use coclass_core::linalg::{fp_kernel, write_fpmx, FpMatrix};
use coclass_core::resolution::{
    bar_cohomology_dim, betti_numbers, cache_key, minimal_resolution, verify_theorem, Budget,
    ResolutionCache, DEFAULT_BAR_BUDGET,
};
use coclass_core::space_group::{
    b3r, quotient_group, verify_filtration, wreath_group, AbelianGroup, FiniteGroup,
    SpaceGroupParams,
};

type Outcome = Result<String, String>;

fn params(p: u32, x: u32) -> SpaceGroupParams {
    SpaceGroupParams::new(p, x).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn dihedral_theorem() -> Outcome {
    let report = verify_theorem(params(2, 1), 5, 8, &Budget::default(), None).map_err(|e| e.to_string())?;
    let expected: Vec<usize> = (1..=9).collect();
    let orders: Vec<u128> = report.levels.iter().map(|l| l.order).collect();
    ensure(orders == [4, 8, 16, 32, 64, 128], || format!("orders {orders:?}"))?;
    for l in &report.levels {
        ensure(l.betti == expected, || format!("R_{} has betti {:?}", l.i, l.betti))?;
    }
    ensure(report.all_equal, || "levels differ".into())?;
    Ok(format!("R_0..R_5 all {expected:?}"))
}

fn b3r_theorem() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cache = ResolutionCache::new(dir.path());
    let degree = 8;
    let mut vectors = Vec::new();
    for r in 3..=5 {
        let g: FiniteGroup = b3r(r).map_err(|e| e.to_string())?.into();
        ensure(g.order() == 3u128.pow(r as u32), || format!("B(3,{r}) has order {}", g.order()))?;
        let b = betti_numbers(&g, degree, &Budget::default(), Some(&cache)).map_err(|e| e.to_string())?;
        let again = betti_numbers(&g, degree, &Budget::default(), Some(&cache)).map_err(|e| e.to_string())?;
        ensure(b == again, || format!("cache changed B(3,{r})"))?;
        vectors.push(b);
    }
    ensure(vectors.windows(2).all(|w| w[0] == w[1]), || format!("betti differ: {vectors:?}"))?;
    Ok(format!("B(3,3..5) all {:?} through degree {degree}", vectors[0]))
}

const FILTRATION_CHECKS: [&str; 9] = [
    "[N_i : N_{i+1}] = p",
    "(C - I) N_i = N_{i+1}",
    "p N_i = N_{i+d}",
    "C^{p^x} = I",
    "Phi_{p^x}(C) = 0",
    "det(I - C) = ±p",
    "delta(N_i) = N_{i+1}",
    "p (I - C)^{-1} integral",
    "delta C = C delta",
];

fn filtration_suite() -> Outcome {
    let mut total = 0;
    for (p, x) in [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2)] {
        let report = verify_filtration(params(p, x), 10, None).map_err(|e| e.to_string())?;
        for name in FILTRATION_CHECKS {
            ensure(report.checks.iter().any(|c| c.name == name), || {
                format!("({p},{x}) never ran {name}")
            })?;
        }
        if let Some(c) = report.failures().next() {
            return Err(format!("({p},{x}): {} failed at {:?}", c.name, c.level));
        }
        total += report.checks.len();
    }
    Ok(format!("{total} identities hold for 5 parameter pairs, i <= 10"))
}

fn eta_equivariance() -> Outcome {
    let mut trials = 0;
    for degree in [1, 2] {
        let r = check_eta_equivariance(params(3, 2), degree, 1000, 20_240_601 + degree as u64)
            .map_err(|e| e.to_string())?;
        ensure(r.trials >= 1000 && r.failures == 0, || {
            format!("degree {degree}: {} failures, first {:?}", r.failures, r.first_counterexample)
        })?;
        trials += r.trials;
    }
    let ex = check_eta_exhaustive(params(2, 2), 1).map_err(|e| e.to_string())?;
    ensure(ex.failures == 0 && ex.trials > 0, || format!("exhaustive: {} failures", ex.failures))?;
    Ok(format!("{trials} sampled trials at p=3 x=2, {} exhaustive cases at p=2 x=2", ex.trials))
}

fn oracle_groups() -> Vec<(String, FiniteGroup)> {
    let mut groups: Vec<(String, FiniteGroup)> = Vec::new();
    for i in 0..=5 {
        groups.push((format!("R_{i}(2,1)"), quotient_group(params(2, 1), i).unwrap().into()));
    }
    for i in 0..=2 {
        groups.push((format!("R_{i}(3,1)"), quotient_group(params(3, 1), i).unwrap().into()));
    }
    groups.push(("R_0(2,2)".into(), quotient_group(params(2, 2), 0).unwrap().into()));
    for r in 3..=5 {
        groups.push((format!("B(3,{r})"), b3r(r).unwrap().into()));
    }
    groups.push(("W(2,2)".into(), wreath_group(params(2, 2))));
    groups.push(("W(3,1)".into(), wreath_group(params(3, 1))));
    for (name, inv) in [("C4xC2", vec![4, 2]), ("C9xC3", vec![9, 3]), ("C2^3", vec![2, 2, 2])] {
        let p = if inv[0] % 2 == 0 { 2 } else { 3 };
        groups.push((name.into(), AbelianGroup::new(p, &inv).unwrap().into()));
    }
    groups
}

fn oracle_equivalence() -> Outcome {
    let budget = Budget::default();
    let mut bar_checked = 0;
    let groups = oracle_groups();
    for (name, g) in &groups {
        let table = ElementTable::enumerate(g, budget.order).map_err(|e| e.to_string())?;
        let res = minimal_resolution(&table, 2, &budget).map_err(|e| e.to_string())?;
        let phi = frattini_rank(&table);
        ensure(res.betti[1] == phi, || format!("{name}: beta_1 {} vs Frattini rank {phi}", res.betti[1]))?;
        if table.len() <= 81 {
            let h2 = bar_cohomology_dim(&table, 2, DEFAULT_BAR_BUDGET).map_err(|e| e.to_string())?;
            ensure(res.betti[2] == h2, || format!("{name}: beta_2 {} vs bar {h2}", res.betti[2]))?;
            bar_checked += 1;
        }
    }
    for p in [2u32, 3, 5, 7] {
        let cyclic: FiniteGroup = AbelianGroup::new(p, &[i64::from(p)]).unwrap().into();
        let b = betti_numbers(&cyclic, 8, &budget, None).map_err(|e| e.to_string())?;
        ensure(b == vec![1; 9], || format!("C_{p}: {b:?}"))?;
        let square: FiniteGroup = AbelianGroup::elementary(p, 2).unwrap().into();
        let b = betti_numbers(&square, 8, &budget, None).map_err(|e| e.to_string())?;
        let closed: Vec<usize> = (1..=9).collect();
        ensure(b == closed, || format!("C_{p} x C_{p}: {b:?}"))?;
    }
    Ok(format!(
        "beta_1 on {} groups, beta_2 against bar on {bar_checked}, closed forms for C_p and C_p^2",
        groups.len()
    ))
}

/// Kernel of `a` by listing every vector of `F_p^cols`.
fn naive_kernel(a: &FpMatrix) -> Vec<Vec<u8>> {
    let (p, cols) = (a.p() as usize, a.cols());
    let mut out = Vec::new();
    for code in 0..p.pow(cols as u32) {
        let v: Vec<u8> = (0..cols).map(|j| (code / p.pow(j as u32) % p) as u8).collect();
        if a.mul_vec(&v).unwrap().iter().all(|&c| c == 0) {
            out.push(v);
        }
    }
    out
}

fn determinism() -> Outcome {
    let budget = Budget::default();
    for g in [
        FiniteGroup::from(quotient_group(params(2, 1), 2).unwrap()),
        b3r(4).unwrap().into(),
        wreath_group(params(2, 2)),
    ] {
        let table = ElementTable::enumerate(&g, budget.order).map_err(|e| e.to_string())?;
        let base = minimal_resolution(&table, 6, &budget).map_err(|e| e.to_string())?.betti;
        for seed in [1, 2, 3] {
            let shuffled = minimal_resolution(&table.permuted(seed), 6, &budget)
                .map_err(|e| e.to_string())?
                .betti;
            ensure(shuffled == base, || format!("{} seed {seed}: {shuffled:?} vs {base:?}", g.descriptor().model))?;
        }
    }

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cache = ResolutionCache::new(dir.path());
    let g: FiniteGroup = quotient_group(params(3, 1), 1).unwrap().into();
    let table = ElementTable::enumerate(&g, budget.order).map_err(|e| e.to_string())?;
    let res = minimal_resolution(&table, 5, &budget).map_err(|e| e.to_string())?;
    let key = cache.store(&res).map_err(|e| e.to_string())?;
    ensure(key == cache_key(&g.descriptor()).unwrap(), || "cache key mismatch".into())?;
    let loaded = cache.load(&key).map_err(|e| e.to_string())?.ok_or("entry missing")?;
    ensure(loaded == res, || "reloaded resolution differs".into())?;
    for (k, d) in res.boundaries.iter().enumerate() {
        let mut bytes = Vec::new();
        write_fpmx(d, &mut bytes).unwrap();
        let on_disk = fs::read(dir.path().join(&key).join(format!("{}.fpmx", k + 1))).map_err(|e| e.to_string())?;
        ensure(bytes == on_disk, || format!("d_{} bytes differ", k + 1))?;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for p in [2u8, 3, 5] {
        let max_cols = if p == 5 { 6 } else { 8 };
        for _ in 0..200 {
            let rows = rng.gen_range(1..=6);
            let cols = rng.gen_range(1..=max_cols);
            let a = FpMatrix::random(p, rows, cols, &mut rng).unwrap();
            let k = fp_kernel(&a);
            let naive = naive_kernel(&a);
            let dim = k.cols();
            ensure(naive.len() == (p as usize).pow(dim as u32), || {
                format!("p={p}: kernel has {} vectors, basis size {dim}", naive.len())
            })?;
            ensure(k.rows() == cols && k.transpose().rank() == dim, || format!("p={p}: basis not independent"))?;
            for c in 0..dim {
                let v = k.column_vec(c);
                ensure(naive.contains(&v), || format!("p={p}: {v:?} not in kernel"))?;
            }
        }
    }
    Ok("permuted orderings, cache round-trip and 600 kernels agree".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 6] = [
        ("1 dihedral theorem", dihedral_theorem),
        ("2 B(3,r) theorem", b3r_theorem),
        ("3 filtration suite", filtration_suite),
        ("4 eta equivariance", eta_equivariance),
        ("5 oracle equivalence", oracle_equivalence),
        ("6 determinism", determinism),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {name} ({secs:.1}s): {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name} ({secs:.1}s): {detail}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
