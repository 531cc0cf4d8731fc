//! Low-degree cohomology from the normalized bar complex with trivial
//! coefficients, independent of the resolution engine.
//!
//! A normalized 2-cochain is parametrized by its values `f(a, s)` on
//! generators `s`; the rest follows from the cocycle rule
//! `f(a, b s) = f(a, b) + f(a b, s) - f(b, s)` along a spanning tree. Since
//! `δf(a, b, c s)` is a combination of `δf(a, b, c)` and values with last
//! argument `s`, `f` is a cocycle exactly when `δf(a, b, s) = 0` for all
//! `a, b` and generators `s`. Degree 1 works the same way one level down.

use crate::error::{Error, Result};
use crate::group_model::ElementTable;
use crate::linalg::FpMatrix;

/// Default cap on the number of unknowns times constraints.
pub const DEFAULT_BAR_BUDGET: u128 = 1 << 28;

/// Breadth-first spanning tree from the identity along right
/// multiplication: `order` lists elements, `parent[x] = (y, s)` with
/// `x = y · gens[s]`.
fn spanning_tree(table: &ElementTable, gens: &[usize]) -> (Vec<usize>, Vec<Option<(usize, usize)>>) {
    let n = table.len();
    let id = table.identity();
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    seen[id] = true;
    let mut order = vec![id];
    let mut head = 0;
    while head < order.len() {
        let y = order[head];
        head += 1;
        for (k, &s) in gens.iter().enumerate() {
            let x = table.mul(y, s);
            if !seen[x] {
                seen[x] = true;
                parent[x] = Some((y, k));
                order.push(x);
            }
        }
    }
    (order, parent)
}

/// `dim H^n(G; F_p)` for `n ≤ 2`.
pub fn bar_cohomology_dim(table: &ElementTable, n: usize, budget: u128) -> Result<usize> {
    match n {
        0 => Ok(1),
        1 => cocycles_1(table, budget),
        2 => {
            let z1 = cocycles_1(table, budget)?;
            let z2 = cocycles_2(table, budget)?;
            // dim B^2 = dim C^1 - dim Z^1
            let b2 = table.len() - 1 - z1;
            Ok(z2 - b2)
        }
        _ => Err(Error::InvalidParameter(format!(
            "bar oracle supports degrees up to 2, got {n}"
        ))),
    }
}

fn rank_of(p: u8, cols: usize, rows: &[Vec<u8>]) -> Result<usize> {
    if rows.is_empty() || cols == 0 {
        return Ok(0);
    }
    Ok(FpMatrix::from_rows(p, cols, rows)?.rank())
}

/// Normalized 1-cocycles are homomorphisms `G → F_p`; they are determined
/// by their values on generators.
fn cocycles_1(table: &ElementTable, budget: u128) -> Result<usize> {
    let n = table.len();
    let gens = table.generators().to_vec();
    let r = gens.len();
    let rows_needed = (n * r) as u128 * r as u128;
    if rows_needed > budget {
        return Err(Error::BudgetExceeded {
            what: "bar complex",
            needed: rows_needed,
            limit: budget,
        });
    }
    let p = table.group().prime() as u8;
    let (order, parent) = spanning_tree(table, &gens);
    // f(x) as a combination of the r parameters f(s_k)
    let mut val = vec![vec![0u8; r]; n];
    for &x in order.iter().skip(1) {
        let (y, k) = parent[x].unwrap();
        let mut v = val[y].clone();
        v[k] = (v[k] + 1) % p;
        val[x] = v;
    }
    let mut rows = Vec::new();
    for (k, &s) in gens.iter().enumerate() {
        let mut row = val[s].clone();
        row[k] = (row[k] + p - 1) % p;
        if row.iter().any(|&c| c != 0) {
            rows.push(row);
        }
    }
    // δf(a, s) = f(s) - f(a s) + f(a) must vanish
    for a in 0..n {
        for &s in &gens {
            let (fs, fas, fa) = (&val[s], &val[table.mul(a, s)], &val[a]);
            let row: Vec<u8> = (0..r)
                .map(|k| ((u16::from(fs[k]) + u16::from(p - fas[k]) + u16::from(fa[k])) % u16::from(p)) as u8)
                .collect();
            if row.iter().any(|&c| c != 0) {
                rows.push(row);
            }
        }
    }
    Ok(r - rank_of(p, r, &rows)?)
}

fn cocycles_2(table: &ElementTable, budget: u128) -> Result<usize> {
    let n = table.len();
    let id = table.identity();
    let gens = table.generators().to_vec();
    let r = gens.len();
    let others: Vec<usize> = (0..n).filter(|&a| a != id).collect();
    let unknowns = (n - 1) * r;
    let needed = unknowns as u128 * ((n - 1) * (n - 1) * r) as u128;
    if needed > budget {
        return Err(Error::BudgetExceeded {
            what: "bar complex",
            needed,
            limit: budget,
        });
    }
    let p = table.group().prime() as u8;
    let pp = u16::from(p);
    // parameter index of f(a, s_k) for a ≠ 1
    let mut slot = vec![usize::MAX; n];
    for (i, &a) in others.iter().enumerate() {
        slot[a] = i;
    }
    let param = |a: usize, k: usize| slot[a] * r + k;

    let (order, parent) = spanning_tree(table, &gens);
    // f(a, x) as a vector over the parameters, indexed [a * n + x]
    let mut f: Vec<Vec<u8>> = vec![Vec::new(); n * n];
    let zero = vec![0u8; unknowns];
    for a in 0..n {
        f[a * n + id] = zero.clone();
    }
    for &x in order.iter().skip(1) {
        let (y, k) = parent[x].unwrap();
        for a in 0..n {
            if a == id {
                f[a * n + x] = zero.clone();
                continue;
            }
            // f(a, y s) = f(a, y) + f(a y, s) - f(y, s)
            let mut v = f[a * n + y].clone();
            let ay = table.mul(a, y);
            if ay != id {
                let i = param(ay, k);
                v[i] = ((u16::from(v[i]) + 1) % pp) as u8;
            }
            if y != id {
                let i = param(y, k);
                v[i] = ((u16::from(v[i]) + pp - 1) % pp) as u8;
            }
            f[a * n + x] = v;
        }
    }
    // unknown f(a, s) must agree with the tree value
    let mut rows = Vec::new();
    let mut push = |row: Vec<u8>| {
        if row.iter().any(|&c| c != 0) {
            rows.push(row);
        }
    };
    for &a in &others {
        for (k, &s) in gens.iter().enumerate() {
            let mut row = f[a * n + s].clone();
            let i = param(a, k);
            row[i] = ((u16::from(row[i]) + pp - 1) % pp) as u8;
            push(row);
        }
    }
    // δf(a, b, s) = f(b, s) - f(a b, s) + f(a, b s) - f(a, b)
    for &a in &others {
        for &b in &others {
            let ab = table.mul(a, b);
            for &s in &gens {
                let (t1, t2) = (&f[b * n + s], &f[ab * n + s]);
                let (t3, t4) = (&f[a * n + table.mul(b, s)], &f[a * n + b]);
                let row: Vec<u8> = (0..unknowns)
                    .map(|i| {
                        let v = u16::from(t1[i]) + (pp - u16::from(t2[i])) + u16::from(t3[i]) + (pp - u16::from(t4[i]));
                        (v % pp) as u8
                    })
                    .collect();
                push(row);
            }
        }
    }
    Ok(unknowns - rank_of(p, unknowns, &rows)?)
}
