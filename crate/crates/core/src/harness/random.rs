//! Seeded random convergences.

use rand::{Rng, RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::error::{Error, Result};
use crate::families::{Carrier, SetFamily, Subset, DEFAULT_CAP};
use crate::space::Convergence;

/// A generator seeded from `seed`.
pub fn rng(seed: u64) -> SplitMix64 {
    SplitMix64::seed_from_u64(seed)
}

/// An independent seed for item `index` of a run seeded with `seed`.
pub fn sub_seed(seed: u64, index: u64) -> u64 {
    let mut r = rng(seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    r.next_u64()
}

/// A random lawful convergence on `n` numbered points.
///
/// Each singleton limit is `{x}` plus every other point with probability
/// `density`. Bigger kernels, in order of size, keep each point of the meet
/// of their one-smaller subkernels' limits with probability `density`.
/// Density 1 gives a pseudotopology, density 0 the discrete pattern.
pub fn random_space(seed: u64, n: usize, density: f64) -> Result<Convergence> {
    if n > DEFAULT_CAP {
        return Err(Error::Capacity {
            size: n,
            cap: DEFAULT_CAP,
        });
    }
    let carrier = Carrier::numbered(n)?;
    let d = density.clamp(0.0, 1.0);
    let mut r = rng(seed);
    let mut kernels: Vec<Subset> = carrier.kernels().collect();
    kernels.sort_by_key(|k| (k.len(), k.0));
    let mut table = vec![Subset::EMPTY; 1 << n];
    for k in kernels {
        let pool = if k.len() == 1 {
            carrier.full()
        } else {
            k.iter()
                .fold(carrier.full(), |acc, a| acc.intersection(table[k.remove(a).0 as usize]))
        };
        let mut lim = Subset::EMPTY;
        for y in pool.iter() {
            if (k.len() == 1 && k.contains(y)) || r.random_bool(d) {
                lim = lim.insert(y);
            }
        }
        table[k.0 as usize] = lim;
    }
    Convergence::from_fn(&carrier, |k| table[k.0 as usize])
}

/// A random topology on `n` numbered points: the point limits are the
/// transitive closure of a random relation with edge probability `density`,
/// and every kernel converges to the meet of its points' limits.
pub fn random_topology(seed: u64, n: usize, density: f64) -> Result<Convergence> {
    if n > DEFAULT_CAP {
        return Err(Error::Capacity {
            size: n,
            cap: DEFAULT_CAP,
        });
    }
    let carrier = Carrier::numbered(n)?;
    let d = density.clamp(0.0, 1.0);
    let mut r = rng(seed);
    let mut up: Vec<Subset> = (0..n)
        .map(|x| {
            (0..n)
                .filter(|&y| y == x || r.random_bool(d))
                .fold(Subset::EMPTY, |acc, y| acc.insert(y))
        })
        .collect();
    for k in 0..n {
        for x in 0..n {
            if up[x].contains(k) {
                up[x] = up[x].union(up[k]);
            }
        }
    }
    Convergence::from_fn(&carrier, |k| {
        k.iter().fold(carrier.full(), |acc, a| acc.intersection(up[a]))
    })
}

/// A random family of `members` subsets of the carrier, each point kept with
/// probability one half.
pub fn random_family(r: &mut impl Rng, carrier: &Carrier, members: usize) -> SetFamily {
    let full = carrier.full().bits();
    SetFamily::new(carrier, (0..members).map(|_| Subset(r.next_u64() & full)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let a = random_space(7, 4, 0.5).unwrap();
        let b = random_space(7, 4, 0.5).unwrap();
        assert!(a.same_limits(&b));
    }

    #[test]
    fn density_extremes() {
        for seed in 0..20 {
            assert!(random_space(seed, 4, 1.0).unwrap().is_pseudotopology());
            let disc = random_space(seed, 4, 0.0).unwrap();
            assert!(disc
                .carrier()
                .kernels()
                .all(|k| disc.limit(k) == if k.len() == 1 { k } else { Subset::EMPTY }));
        }
    }

    #[test]
    fn topology_generator() {
        for seed in 0..100 {
            let c = random_topology(seed, 4, [0.2, 0.5][seed as usize % 2]).unwrap();
            assert!(c.validate().is_empty());
            assert!(c.is_topological());
        }
    }

    #[test]
    fn sub_seeds_differ() {
        assert_ne!(sub_seed(1, 0), sub_seed(1, 1));
        assert_eq!(sub_seed(1, 5), sub_seed(1, 5));
    }
}
