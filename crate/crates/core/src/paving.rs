//! Pavements, pseudopavements and dagger pseudopavements, with exact paving
//! numbers.
//!
//! The kernels converging to a point `x` form a down-set. A pavement must
//! dominate every one of them by inclusion, so its minimal size is the number
//! of maximal convergent kernels. A pseudopavement only has to cover the
//! points converging to `x`, and a dagger pseudopavement has to meet the
//! dagger closure of each of them; both reduce to exact set cover with the
//! maximal kernels as candidates, because both conditions are monotone in the
//! member kernel.

use std::collections::BTreeSet;

use crate::covers::{for_each_combination, FilterCollection};
use crate::error::{Error, Result};
use crate::families::{PFilter, Subset, DEFAULT_CAP};
use crate::graph::InducedGraph;
use crate::search;
use crate::space::{Convergence, Verdict, Witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PavingKind {
    Pavement,
    Pseudo,
    Dagger,
}

impl PavingKind {
    pub const ALL: [PavingKind; 3] = [PavingKind::Pavement, PavingKind::Pseudo, PavingKind::Dagger];

    pub fn name(self) -> &'static str {
        match self {
            PavingKind::Pavement => "pavement",
            PavingKind::Pseudo => "pseudo",
            PavingKind::Dagger => "dagger",
        }
    }
}

impl std::str::FromStr for PavingKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "pavement" => Ok(PavingKind::Pavement),
            "pseudo" => Ok(PavingKind::Pseudo),
            "dagger" => Ok(PavingKind::Dagger),
            _ => Err(format!("unknown paving kind `{s}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PavingResult {
    pub value: usize,
    pub witness: FilterCollection,
    pub kind: PavingKind,
    pub at: usize,
}

/// `{y : x ∈ lim{y}}`.
pub fn convergent_points(c: &Convergence, x: usize) -> Subset {
    Subset::from_indices((0..c.carrier().size()).filter(|&y| c.point_limit(y).contains(x)))
}

/// The ⊆-maximal kernels converging to `x`, by increasing mask.
pub fn maximal_convergent_kernels(c: &Convergence, x: usize) -> Vec<Subset> {
    let conv = |k: Subset| c.limit(k).contains(x);
    let pool = convergent_points(c, x);
    let mut found = BTreeSet::new();
    grow(&conv, pool, Subset::EMPTY, Subset::EMPTY, &mut found);
    found.into_iter().collect()
}

fn is_maximal(conv: &dyn Fn(Subset) -> bool, pool: Subset, k: Subset) -> bool {
    pool.difference(k).iter().all(|c| !conv(k.insert(c)))
}

fn grow(conv: &dyn Fn(Subset) -> bool, pool: Subset, cur: Subset, banned: Subset, found: &mut BTreeSet<Subset>) {
    let ext = Subset::from_indices(
        pool.difference(cur.union(banned))
            .iter()
            .filter(|&c| conv(cur.insert(c))),
    );
    if ext.is_empty() {
        if !cur.is_empty() && is_maximal(conv, pool, cur) {
            found.insert(cur);
        }
        return;
    }
    let all = cur.union(ext);
    if conv(all) {
        // every convergent extension of `cur` avoiding `banned` lies inside `all`
        if is_maximal(conv, pool, all) {
            found.insert(all);
        }
        return;
    }
    let e = ext.first().expect("nonempty");
    grow(conv, pool, cur.insert(e), banned, found);
    grow(conv, pool, cur, banned.insert(e), found);
}

fn check_members(c: &Convergence, d: &FilterCollection, x: usize) -> Result<()> {
    for &m in d.members() {
        if m.is_degenerate() || !c.limit(m.kernel).contains(x) {
            return Err(Error::NotConvergent {
                kernel: c.carrier().format(m.kernel),
                point: c.carrier().label(x).to_string(),
            });
        }
    }
    Ok(())
}

/// Checks the definition directly against every kernel converging to `x`.
pub fn is_pavement(c: &Convergence, d: &FilterCollection, x: usize, kind: PavingKind) -> Result<Verdict> {
    check_members(c, d, x)?;
    if c.carrier().size() > DEFAULT_CAP {
        return Err(Error::SearchTooLarge(c.carrier().size()));
    }
    let graph = (kind == PavingKind::Dagger).then(|| InducedGraph::new(c));
    let kernels: Vec<Subset> = d.members().iter().map(|m| m.kernel).collect();
    let pool = convergent_points(c, x);
    let fail = match kind {
        PavingKind::Pseudo => pool
            .iter()
            .find(|&y| !kernels.iter().any(|k| k.contains(y)))
            .map(Witness::Point),
        _ => pool
            .subsets()
            .skip(1)
            .filter(|&a| c.limit(a).contains(x))
            .find(|&a| {
                !kernels.iter().any(|&k| match &graph {
                    None => a.is_subset(k),
                    Some(g) => k.meets(g.dagger_closure(a)),
                })
            })
            .map(Witness::Kernel),
    };
    Ok(Verdict::from_failure(fail))
}

/// Exact paving number of the given kind at `x`, with the lexicographically
/// least optimal witness over the maximal convergent kernels.
pub fn paving_number(c: &Convergence, x: usize, kind: PavingKind) -> Result<PavingResult> {
    let maximal = maximal_convergent_kernels(c, x);
    let chosen: Vec<Subset> = match kind {
        PavingKind::Pavement => maximal,
        PavingKind::Pseudo => {
            let masks: Vec<u64> = maximal.iter().map(|k| k.bits()).collect();
            let idx = search::min_cover(convergent_points(c, x).bits(), &masks).expect("maximal kernels cover");
            idx.into_iter().map(|i| maximal[i]).collect()
        }
        PavingKind::Dagger => {
            let g = InducedGraph::new(c);
            let pool = convergent_points(c, x);
            let closures: Vec<(usize, Subset)> = pool
                .iter()
                .map(|y| (y, g.dagger_closure(Subset::singleton(y))))
                .collect();
            let masks: Vec<u64> = maximal
                .iter()
                .map(|&k| {
                    closures
                        .iter()
                        .filter(|(_, cl)| cl.meets(k))
                        .fold(0, |acc, &(y, _)| acc | 1 << y)
                })
                .collect();
            let idx = search::min_cover(pool.bits(), &masks).expect("maximal kernels meet every closure");
            idx.into_iter().map(|i| maximal[i]).collect()
        }
    };
    let witness = FilterCollection::new(chosen.into_iter().map(PFilter::principal).collect())?;
    Ok(PavingResult {
        value: witness.len(),
        witness,
        kind,
        at: x,
    })
}

/// The same number by enumerating collections of convergent kernels by size
/// and checking [`is_pavement`]. Carriers of at most five points.
pub fn paving_number_exhaustive(c: &Convergence, x: usize, kind: PavingKind) -> Result<usize> {
    let n = c.carrier().size();
    if n > 5 {
        return Err(Error::SearchTooLarge(n));
    }
    let convergent: Vec<PFilter> = c
        .carrier()
        .kernels()
        .filter(|&k| c.limit(k).contains(x))
        .map(PFilter::principal)
        .collect();
    for size in 1..=convergent.len() {
        let mut found = false;
        let mut err = None;
        for_each_combination(convergent.len(), size, &mut |idx| {
            let d = FilterCollection::new(idx.iter().map(|&i| convergent[i]).collect()).expect("nonempty");
            match is_pavement(c, &d, x, kind) {
                Ok(v) => found = v.holds(),
                Err(e) => err = Some(e),
            }
            found || err.is_some()
        });
        if let Some(e) = err {
            return Err(e);
        }
        if found {
            return Ok(size);
        }
    }
    unreachable!("all convergent kernels together form a pavement")
}

/// The three conditions of the pseudopavement characterization, for a
/// collection of filters converging to `x`:
/// pseudopavement; every convergent kernel meets some member; the member
/// kernels cover exactly the points converging to `x`.
pub fn pseudopavement_conditions(c: &Convergence, d: &FilterCollection, x: usize) -> Result<[bool; 3]> {
    let first = is_pavement(c, d, x, PavingKind::Pseudo)?.holds();
    let second = c
        .carrier()
        .kernels()
        .filter(|&a| c.limit(a).contains(x))
        .all(|a| d.members().iter().any(|m| m.kernel.meets(a)));
    let union = d.members().iter().fold(Subset::EMPTY, |acc, m| acc.union(m.kernel));
    let third = union == convergent_points(c, x);
    Ok([first, second, third])
}

fn maximal_members(sets: &[Subset]) -> usize {
    sets.iter()
        .filter(|&&s| !sets.iter().any(|&t| t != s && s.is_subset(t)))
        .count()
}

/// Smallest number of compact sets such that every compact set lies inside
/// one of them.
pub fn k_arens_number(c: &Convergence) -> Result<usize> {
    if !c.is_topological() {
        return Err(Error::NotTopological);
    }
    let compacts = c.compact_parts().compacts;
    Ok(maximal_members(&compacts.members().copied().collect::<Vec<_>>()))
}

/// Smallest base size of the filter of open sets containing `A`.
pub fn character_of(c: &Convergence, a: Subset) -> Result<usize> {
    if !c.is_topological() {
        return Err(Error::NotTopological);
    }
    let x = c.carrier();
    let opens: Vec<Subset> = c
        .closed_sets()
        .members()
        .map(|&f| x.complement(f))
        .filter(|o| a.is_subset(*o))
        .collect();
    // a base must contain a member inside each minimal open superset
    Ok(opens
        .iter()
        .filter(|&&o| !opens.iter().any(|&p| p != o && p.is_subset(o)))
        .count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::fixtures;

    fn kernels(ks: &[&[usize]]) -> FilterCollection {
        FilterCollection::new(
            ks.iter()
                .map(|k| PFilter::principal(Subset::from_indices(k.iter().copied())))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn convergent_points_examples() {
        let c = fixtures::chain();
        assert_eq!(convergent_points(&c, 2), Subset::full(3));
        assert_eq!(convergent_points(&c, 0), Subset::singleton(0));
        assert_eq!(convergent_points(&fixtures::ultra(), 0), Subset::full(3));
    }

    #[test]
    fn pavement_examples() {
        let u = fixtures::ultra();
        let all = kernels(&[&[0], &[1], &[2]]);
        assert!(is_pavement(&u, &all, 0, PavingKind::Pavement).unwrap().holds());
        let one = kernels(&[&[0]]);
        assert!(is_pavement(&u, &one, 0, PavingKind::Dagger).unwrap().holds());

        let o = fixtures::overlap();
        let pairs = kernels(&[&[0, 1], &[1, 2]]);
        assert!(is_pavement(&o, &pairs, 0, PavingKind::Pseudo).unwrap().holds());
        assert_eq!(
            is_pavement(&o, &pairs, 0, PavingKind::Pavement).unwrap(),
            Verdict::Fails(Witness::Kernel(Subset::from_indices([0, 2])))
        );
        let bad = kernels(&[&[0, 1, 2]]);
        assert!(matches!(
            is_pavement(&o, &bad, 0, PavingKind::Pseudo),
            Err(Error::NotConvergent { .. })
        ));
    }

    #[test]
    fn fixture_paving_numbers() {
        let u = fixtures::ultra();
        for x in 0..3 {
            let got: Vec<usize> = PavingKind::ALL
                .iter()
                .map(|&k| paving_number(&u, x, k).unwrap().value)
                .collect();
            assert_eq!(got, vec![3, 3, 1]);
        }
        let o = fixtures::overlap();
        let p = paving_number(&o, 0, PavingKind::Pavement).unwrap();
        assert_eq!(p.value, 3);
        assert_eq!(p.witness, kernels(&[&[0, 1], &[0, 2], &[1, 2]]));
        assert_eq!(paving_number(&o, 0, PavingKind::Pseudo).unwrap().value, 2);
        assert_eq!(paving_number(&o, 0, PavingKind::Dagger).unwrap().value, 1);
    }

    #[test]
    fn pseudotopologies_collapse() {
        for c in [fixtures::chain(), fixtures::disc2(), fixtures::antidiscrete(3)] {
            for x in 0..c.carrier().size() {
                assert_eq!(paving_number(&c, x, PavingKind::Pavement).unwrap().value, 1);
                assert_eq!(paving_number(&c, x, PavingKind::Pseudo).unwrap().value, 1);
            }
        }
    }

    #[test]
    fn matches_exhaustive_on_fixtures() {
        for c in [
            fixtures::chain(),
            fixtures::ultra(),
            fixtures::overlap(),
            fixtures::disc2(),
        ] {
            for x in 0..c.carrier().size() {
                for kind in PavingKind::ALL {
                    assert_eq!(
                        paving_number(&c, x, kind).unwrap().value,
                        paving_number_exhaustive(&c, x, kind).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn finite_shadows() {
        assert_eq!(k_arens_number(&fixtures::chain()).unwrap(), 1);
        let c = fixtures::chain();
        assert_eq!(character_of(&c, c.carrier().subset_of(&["c"]).unwrap()).unwrap(), 1);
        let d = fixtures::disc2();
        assert_eq!(character_of(&d, d.carrier().subset_of(&["p"]).unwrap()).unwrap(), 1);
        assert_eq!(k_arens_number(&fixtures::ultra()), Err(Error::NotTopological));
    }
}
