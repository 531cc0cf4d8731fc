//! Betti numbers `β_n = dim H^n(G; F_p)` of finite `p`-groups from minimal
//! resolutions, with a bar-complex oracle in low degrees and a disk cache.

pub mod bar;
pub mod cache;
pub mod engine;

use serde::Serialize;

pub use bar::{bar_cohomology_dim, DEFAULT_BAR_BUDGET};
pub use cache::{cache_key, Manifest, ResolutionCache, CACHE_VERSION};
pub use engine::{minimal_resolution, Budget, GroupAlgebraContext, Resolution};

use crate::error::{Error, Result};
use crate::group_model::ElementTable;
use crate::space_group::{quotient_group, FiniteGroup, SpaceGroupParams};

/// `β_0..=β_N` for `group`, served from `cache` when possible and stored
/// there after a fresh computation.
pub fn betti_numbers(
    group: &FiniteGroup,
    max_degree: usize,
    budget: &Budget,
    cache: Option<&ResolutionCache>,
) -> Result<Vec<usize>> {
    let descriptor = group.descriptor();
    if let Some(c) = cache {
        if let Some(b) = c.betti(&descriptor, max_degree)? {
            return Ok(b);
        }
    }
    let table = ElementTable::enumerate(group, budget.order)?;
    let res = minimal_resolution(&table, max_degree, budget)?;
    if let Some(c) = cache {
        c.store(&res)?;
    }
    Ok(res.betti)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelBetti {
    pub i: usize,
    pub order: u128,
    pub betti: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub p: u32,
    pub x: u32,
    #[serde(rename = "iMax")]
    pub i_max: usize,
    #[serde(rename = "maxDegree")]
    pub max_degree: usize,
    pub levels: Vec<LevelBetti>,
    #[serde(rename = "allEqual")]
    pub all_equal: bool,
    /// Equal Betti vectors certify the module isomorphism only through
    /// this degree.
    #[serde(rename = "verifiedThroughDegree")]
    pub verified_through_degree: Option<usize>,
}

/// Compares the Betti vectors of `R_0, …, R_{i_max}` through degree `N`.
pub fn verify_theorem(
    params: SpaceGroupParams,
    i_max: usize,
    max_degree: usize,
    budget: &Budget,
    cache: Option<&ResolutionCache>,
) -> Result<TheoremReport> {
    let mut levels = Vec::with_capacity(i_max + 1);
    for i in 0..=i_max {
        let at = |e: Error| Error::AtLevel {
            level: i,
            source: Box::new(e),
        };
        let group: FiniteGroup = quotient_group(params, i).map_err(at)?.into();
        let betti = betti_numbers(&group, max_degree, budget, cache).map_err(at)?;
        levels.push(LevelBetti {
            i,
            order: group.order(),
            betti,
        });
    }
    let all_equal = levels.windows(2).all(|w| w[0].betti == w[1].betti);
    Ok(TheoremReport {
        p: params.p(),
        x: params.x(),
        i_max,
        max_degree,
        all_equal,
        verified_through_degree: all_equal.then_some(max_degree),
        levels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space_group::AbelianGroup;

    #[test]
    fn dihedral_family_small() {
        let params = SpaceGroupParams::new(2, 1).unwrap();
        let r = verify_theorem(params, 3, 5, &Budget::default(), None).unwrap();
        assert!(r.all_equal);
        assert_eq!(r.levels[3].betti, vec![1, 2, 3, 4, 5, 6]);
        assert_eq!(r.levels[3].order, 32);
    }

    #[test]
    fn trivial_range() {
        let params = SpaceGroupParams::new(3, 1).unwrap();
        let r = verify_theorem(params, 0, 2, &Budget::default(), None).unwrap();
        assert!(r.all_equal);
        assert_eq!(r.verified_through_degree, Some(2));
    }

    #[test]
    fn budget_errors_name_the_level() {
        let params = SpaceGroupParams::new(2, 1).unwrap();
        let budget = Budget {
            order: 16,
            ..Budget::default()
        };
        let err = verify_theorem(params, 4, 2, &budget, None).unwrap_err();
        assert!(err.is_budget());
        assert!(matches!(err, Error::AtLevel { level: 3, .. }), "{err}");
    }

    #[test]
    fn cache_serves_repeat_queries() {
        let dir = tempfile::tempdir().unwrap();
        let cache = ResolutionCache::new(dir.path());
        let g: FiniteGroup = AbelianGroup::new(2, &[4, 2]).unwrap().into();
        let first = betti_numbers(&g, 4, &Budget::default(), Some(&cache)).unwrap();
        assert_eq!(cache.entries().unwrap().len(), 1);
        let again = betti_numbers(&g, 3, &Budget::default(), Some(&cache)).unwrap();
        assert_eq!(&first[..4], &again[..]);
        assert_eq!(cache.clear().unwrap(), 1);
        assert!(cache.entries().unwrap().is_empty());
    }
}
