use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{girth, realize, GirthValue, Graph, SpTerm};
use crate::error::{Error, Result};

/// Seeded random term with `leaf_count` edges, built by merging two random
/// pool members at a time with a fair coin between series and parallel.
/// A parallel merge that would join two direct terminal edges becomes a
/// series merge instead.
pub fn random_sp_term(leaf_count: usize, seed: u64) -> Result<SpTerm> {
    if leaf_count == 0 {
        return Err(Error::Count { what: "leaf count", value: 0 });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // (term, has an edge joining its own terminals)
    let mut pool: Vec<(SpTerm, bool)> = vec![(SpTerm::Edge, true); leaf_count];
    while pool.len() > 1 {
        let i = rng.gen_range(0..pool.len());
        let mut j = rng.gen_range(0..pool.len() - 1);
        if j >= i {
            j += 1;
        }
        let parallel = rng.gen_bool(0.5);
        let (hi, lo) = (i.max(j), i.min(j));
        let b = pool.swap_remove(hi);
        let a = pool.swap_remove(lo);
        let (a, b) = if i < j { (a, b) } else { (b, a) };
        let merged = if parallel && !(a.1 && b.1) {
            (SpTerm::Parallel(vec![a.0, b.0]), a.1 || b.1)
        } else {
            (SpTerm::Series(vec![a.0, b.0]), false)
        };
        pool.push(merged);
    }
    Ok(pool.pop().expect("non-empty pool").0)
}

/// A random term stretched just enough for its realization to have girth
/// at least `k`, together with that realization.
pub fn random_sp_graph(leaf_count: usize, seed: u64, k: u32) -> Result<(SpTerm, Graph)> {
    let term = random_sp_term(leaf_count, seed)?;
    let g = realize(&term)?;
    match girth(&g) {
        GirthValue::Finite(gv) if gv < k => {
            let s = k.div_ceil(gv);
            let stretched = term.stretch(u64::from(s))?;
            let g = realize(&stretched)?;
            Ok((stretched, g))
        }
        _ => Ok((term, g)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(random_sp_term(1, 9).unwrap(), SpTerm::Edge);
        assert_eq!(random_sp_term(2, 9).unwrap(), SpTerm::Series(vec![SpTerm::Edge, SpTerm::Edge]));
        assert!(random_sp_term(0, 9).is_err());
    }

    #[test]
    fn deterministic_and_realizable() {
        for seed in 0..50 {
            let t = random_sp_term(5, seed).unwrap();
            assert_eq!(t, random_sp_term(5, seed).unwrap());
            assert_eq!(t.leaf_count(), 5);
            realize(&t).unwrap();
        }
        assert_eq!(random_sp_term(5, 42).unwrap(), random_sp_term(5, 42).unwrap());
    }

    #[test]
    fn girth_targets_met() {
        for k in 3..=9 {
            for seed in 0..20 {
                let (_, g) = random_sp_graph(8, seed, k).unwrap();
                assert!(girth(&g).at_least(k));
            }
        }
    }
}
