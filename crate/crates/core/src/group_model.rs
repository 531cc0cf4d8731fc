//! Enumeration and elementary invariants of finite groups: element tables,
//! subgroup closures, Frattini rank and order census.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::space_group::FiniteGroup;

/// Default cap on the number of enumerated elements.
pub const DEFAULT_ORDER_BUDGET: u128 = 1 << 20;

#[derive(Clone, Debug)]
pub struct ElementTable {
    group: FiniteGroup,
    elements: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
    generators: Vec<usize>,
}

fn check_budget(group: &FiniteGroup, budget: u128) -> Result<()> {
    if group.order() > budget {
        return Err(Error::BudgetExceeded {
            what: "group order",
            needed: group.order(),
            limit: budget,
        });
    }
    Ok(())
}

impl ElementTable {
    /// Breadth-first closure from the generators: the identity first, then
    /// each layer sorted lexicographically by coordinates.
    pub fn enumerate(group: &FiniteGroup, budget: u128) -> Result<ElementTable> {
        check_budget(group, budget)?;
        let gens = group.generators();
        let id = group.identity();
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut layer = vec![0usize];
        while !layer.is_empty() {
            let mut fresh = BTreeSet::new();
            for &g in &layer {
                for s in &gens {
                    let h = group.mul(&elements[g], s);
                    if !index.contains_key(&h) {
                        fresh.insert(h);
                    }
                }
            }
            layer = Vec::with_capacity(fresh.len());
            for h in fresh {
                index.insert(h.clone(), elements.len());
                layer.push(elements.len());
                elements.push(h);
            }
            if elements.len() as u128 > group.order() {
                break;
            }
        }
        if elements.len() as u128 != group.order() {
            return Err(Error::InvalidParameter(format!(
                "closure has {} elements, expected {}",
                elements.len(),
                group.order()
            )));
        }
        let generators = gens.iter().map(|s| index[s]).collect();
        Ok(ElementTable {
            group: group.clone(),
            elements,
            index,
            generators,
        })
    }

    /// The same group with its elements listed in a seeded random order.
    pub fn permuted(&self, seed: u64) -> ElementTable {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let elements: Vec<Vec<i64>> = order.iter().map(|&k| self.elements[k].clone()).collect();
        let index = elements
            .iter()
            .enumerate()
            .map(|(k, e)| (e.clone(), k))
            .collect::<HashMap<_, _>>();
        let generators = self
            .generators
            .iter()
            .map(|&g| index[&self.elements[g]])
            .collect();
        ElementTable {
            group: self.group.clone(),
            elements,
            index,
            generators,
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Vec<i64>] {
        &self.elements
    }

    pub fn element(&self, k: usize) -> &[i64] {
        &self.elements[k]
    }

    pub fn index_of(&self, g: &[i64]) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn identity(&self) -> usize {
        self.index[&self.group.identity()]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&self.group.mul(&self.elements[a], &self.elements[b])]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.index[&self.group.inverse(&self.elements[a])]
    }

    pub fn power(&self, a: usize, n: u64) -> usize {
        (0..n).fold(self.identity(), |acc, _| self.mul(acc, a))
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        // [a, b] = a b a^{-1} b^{-1}
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(ab, self.inverse(ba))
    }

    pub fn element_order(&self, a: usize) -> u64 {
        let id = self.identity();
        let mut acc = a;
        let mut n = 1;
        while acc != id {
            acc = self.mul(acc, a);
            n += 1;
        }
        n
    }

    /// Whether the law is closed and associative on the given triples.
    pub fn spot_check_associativity(&self, triples: &[(usize, usize, usize)]) -> bool {
        triples.iter().all(|&(a, b, c)| {
            self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))
        })
    }
}

/// The subgroup generated by `set`, as sorted element indices.
pub fn subgroup_closure(table: &ElementTable, set: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; table.len()];
    let id = table.identity();
    seen[id] = true;
    let mut out = vec![id];
    let mut stack = vec![id];
    while let Some(g) = stack.pop() {
        for &s in set {
            let h = table.mul(g, s);
            if !seen[h] {
                seen[h] = true;
                out.push(h);
                stack.push(h);
            }
        }
    }
    out.sort_unstable();
    out
}

/// The smallest normal subgroup containing `set`.
pub fn normal_closure(table: &ElementTable, set: &[usize]) -> Vec<usize> {
    let mut gens: Vec<usize> = set.to_vec();
    loop {
        let h = subgroup_closure(table, &gens);
        let member: BTreeSet<usize> = h.iter().copied().collect();
        let mut grew = false;
        for &x in &h {
            for &g in table.generators() {
                let c = table.mul(table.mul(g, x), table.inverse(g));
                if !member.contains(&c) {
                    gens.push(c);
                    grew = true;
                }
            }
            if grew {
                break;
            }
        }
        if !grew {
            return h;
        }
    }
}

/// `Φ(G) = G^p [G, G]`, valid for `p`-groups.
pub fn frattini_subgroup(table: &ElementTable) -> Vec<usize> {
    let p = u64::from(table.group().prime());
    let mut set: BTreeSet<usize> = (0..table.len()).map(|g| table.power(g, p)).collect();
    let gens = table.generators();
    for &a in gens {
        for &b in gens {
            set.insert(table.commutator(a, b));
        }
    }
    normal_closure(table, &set.into_iter().collect::<Vec<_>>())
}

fn log_p(n: usize, p: u32) -> usize {
    let (mut n, mut k) = (n, 0);
    while n > 1 {
        n /= p as usize;
        k += 1;
    }
    k
}

/// Rank of `G / Φ(G)`, the minimal number of generators.
pub fn frattini_rank(table: &ElementTable) -> usize {
    let phi = frattini_subgroup(table);
    log_p(table.len() / phi.len(), table.group().prime())
}

/// Generators whose images form a basis of `G / Φ(G)`, chosen greedily
/// from the table's generators.
pub fn burnside_basis(table: &ElementTable) -> Vec<usize> {
    let phi = frattini_subgroup(table);
    let mut chosen = vec![];
    let mut span = phi.clone();
    for &g in table.generators() {
        if span.binary_search(&g).is_ok() {
            continue;
        }
        chosen.push(g);
        let mut gens = phi.clone();
        gens.extend(&chosen);
        span = subgroup_closure(table, &gens);
        if span.len() == table.len() {
            break;
        }
    }
    chosen
}

/// Element order → number of elements of that order.
pub fn order_census(table: &ElementTable) -> BTreeMap<u64, u64> {
    let mut census = BTreeMap::new();
    for g in 0..table.len() {
        *census.entry(table.element_order(g)).or_insert(0) += 1;
    }
    census
}

pub fn is_abelian(table: &ElementTable) -> bool {
    let gens = table.generators();
    gens.iter()
        .all(|&a| gens.iter().all(|&b| table.mul(a, b) == table.mul(b, a)))
}
