//! Covers, Cauchy filters, cocomplete filter collections and completeness
//! numbers.
//!
//! On a finite carrier every proper filter has nonempty adherence, so the
//! absolute notions (`adh 𝒢 = ∅`) are vacuous. Cocompleteness and the
//! completeness numbers therefore take a closed *target* `A` and read
//! "non-adherent" as "adherence inside `A`". The target `∅` recovers the
//! absolute notions.
//!
//! Two conventions are fixed here:
//!
//! * mesh-based (plain) cocompleteness quantifies over proper filters only,
//!   since the degenerate filter meshes nothing;
//! * refinement-based (ultra) cocompleteness quantifies over every filter,
//!   the degenerate one included, and admits it as a member.
//!
//! [`completeness_number`] reports both the minimum over nonempty collections
//! under these conventions and the minimum over possibly empty collections
//! quantifying over proper filters only. They differ exactly when the
//! empty collection already works.

use crate::error::{Error, Result};
use crate::families::{PFilter, SetFamily, Subset};
use crate::search;
use crate::space::{Convergence, Verdict, Witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverKind {
    Cover,
    Pseudocover,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CauchyKind {
    Cauchy,
    PreCauchy,
}

/// Plain (mesh) versus ultra (refinement) flavour of completeness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strength {
    Plain,
    Ultra,
}

/// A list of set families over one carrier.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CoverCollection(pub Vec<SetFamily>);

impl CoverCollection {
    pub fn families(&self) -> &[SetFamily] {
        &self.0
    }
}

/// A nonempty list of filters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilterCollection(Vec<PFilter>);

impl FilterCollection {
    pub fn new(members: Vec<PFilter>) -> Result<FilterCollection> {
        if members.is_empty() {
            Err(Error::EmptyCollection)
        } else {
            Ok(FilterCollection(members))
        }
    }

    pub fn members(&self) -> &[PFilter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn admits_degenerate(&self) -> bool {
        self.0.iter().any(|f| f.is_degenerate())
    }
}

/// A completeness number with its witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletenessResult {
    /// Minimum over nonempty collections.
    pub value: usize,
    /// Minimum over possibly empty collections, quantifying over proper
    /// filters only.
    pub value_with_empty: usize,
    pub witness: FilterCollection,
}

/// Cover: every convergent kernel lies inside some member. Pseudocover: every
/// point with a nonempty limit lies in some member.
pub fn is_cover(c: &Convergence, p: &SetFamily, kind: CoverKind) -> Verdict {
    let fails = match kind {
        CoverKind::Cover => c
            .carrier()
            .kernels()
            .filter(|&k| !c.limit(k).is_empty())
            .find(|&k| !p.members().any(|&m| k.is_subset(m)))
            .map(Witness::Kernel),
        CoverKind::Pseudocover => (0..c.carrier().size())
            .filter(|&y| !c.point_limit(y).is_empty())
            .find(|&y| !p.members().any(|m| m.contains(y)))
            .map(Witness::Point),
    };
    Verdict::from_failure(fails)
}

/// `P` is a cover iff the adherence of the complement family `P_c` is empty.
pub fn cover_criterion(c: &Convergence, p: &SetFamily) -> bool {
    c.adherence_of_family(&p.complements()).is_empty()
}

pub fn is_cauchy(f: PFilter, pp: &CoverCollection, kind: CauchyKind) -> Result<bool> {
    if f.is_degenerate() {
        return Err(Error::DegenerateFilter);
    }
    let k = f.kernel;
    Ok(pp.0.iter().all(|p| match kind {
        CauchyKind::Cauchy => p.members().any(|&m| k.is_subset(m)),
        CauchyKind::PreCauchy => p.members().any(|&m| m.meets(k)),
    }))
}

/// Every `pp`-Cauchy (ultra: preCauchy) proper filter has nonempty adherence.
pub fn is_complete_collection(c: &Convergence, pp: &CoverCollection, strength: Strength) -> Result<Verdict> {
    for p in &pp.0 {
        if !is_cover(c, p, CoverKind::Cover).holds() {
            return Err(Error::NotCover(format!("{p:?}")));
        }
    }
    let kind = match strength {
        Strength::Plain => CauchyKind::Cauchy,
        Strength::Ultra => CauchyKind::PreCauchy,
    };
    for k in c.carrier().kernels() {
        let f = PFilter::principal(k);
        if is_cauchy(f, pp, kind)? && c.adherence(f).is_empty() {
            return Ok(Verdict::Fails(Witness::Filter(f)));
        }
    }
    Ok(Verdict::Holds)
}

/// The `∪↓`-closure of each family, and the filter `P_c` of each closed
/// family: kernel = complement of the union of its members.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealTransforms {
    pub union_down: CoverCollection,
    pub filter_form: Vec<PFilter>,
}

pub fn ideal_transforms(pp: &CoverCollection) -> IdealTransforms {
    let union_down: Vec<SetFamily> = pp.0.iter().map(|p| p.union_closure().down_closure()).collect();
    let filter_form = union_down
        .iter()
        .map(|p| PFilter::principal(p.carrier().complement(p.union_all())))
        .collect();
    IdealTransforms {
        union_down: CoverCollection(union_down),
        filter_form,
    }
}

/// Relative (ultra)cocompleteness of `d` with respect to the target.
///
/// Plain: every proper filter with adherence inside `target` meshes a member.
/// Ultra: every filter, degenerate included, with adherence inside `target`
/// refines a member.
pub fn is_cocomplete_collection(
    c: &Convergence,
    d: &FilterCollection,
    target: Subset,
    strength: Strength,
) -> Result<Verdict> {
    let x = c.carrier();
    for &m in d.members() {
        let adh = c.adherence(m);
        if !adh.is_subset(target) {
            return Err(Error::Adherence {
                kernel: x.format(m.kernel),
                adherence: x.format(adh),
                target: x.format(target),
            });
        }
    }
    Ok(Verdict::from_failure(first_unhandled(
        c,
        d.members(),
        target,
        strength,
        true,
    )))
}

fn handles(members: &[PFilter], g: PFilter, strength: Strength) -> bool {
    members.iter().any(|&m| match strength {
        Strength::Plain => g.meshes(m),
        Strength::Ultra => g.finer_than(m),
    })
}

fn qualifying(
    c: &Convergence,
    target: Subset,
    strength: Strength,
    with_degenerate: bool,
) -> impl Iterator<Item = PFilter> + '_ {
    let skip_degenerate = strength == Strength::Plain || !with_degenerate;
    c.carrier()
        .full()
        .subsets()
        .filter(move |k| !(skip_degenerate && k.is_empty()))
        .map(PFilter::principal)
        .filter(move |&g| c.adherence(g).is_subset(target))
}

fn first_unhandled(
    c: &Convergence,
    members: &[PFilter],
    target: Subset,
    strength: Strength,
    with_degenerate: bool,
) -> Option<Witness> {
    qualifying(c, target, strength, with_degenerate)
        .find(|&g| !handles(members, g, strength))
        .map(Witness::Filter)
}

/// Filters whose adherence lies inside the target, degenerate first, then by
/// kernel mask.
pub fn admissible_filters(c: &Convergence, target: Subset) -> Vec<PFilter> {
    c.carrier()
        .full()
        .subsets()
        .map(PFilter::principal)
        .filter(|&g| c.adherence(g).is_subset(target))
        .collect()
}

/// Exact relative completeness number (plain or ultra) at a closed target.
///
/// The quantified filters are reduced to the ones that matter: for mesh, the
/// ⊆-minimal proper qualifiers (a member meeting a smaller kernel meets every
/// bigger one); for refinement, the ⊆-maximal qualifiers. The reduced problem
/// is an exact set cover over the admissible filters.
pub fn completeness_number(c: &Convergence, target: Subset, strength: Strength) -> Result<CompletenessResult> {
    if !c.is_closed(target) {
        return Err(Error::NotClosed(c.carrier().format(target)));
    }
    let candidates = admissible_filters(c, target);
    let solve = |with_degenerate: bool| -> Option<Vec<usize>> {
        let quals: Vec<PFilter> = qualifying(c, target, strength, with_degenerate).collect();
        let essential = essential_qualifiers(&quals, strength);
        if essential.len() > 64 {
            return None;
        }
        let universe = if essential.len() == 64 {
            u64::MAX
        } else {
            (1u64 << essential.len()) - 1
        };
        let masks: Vec<u64> = candidates
            .iter()
            .map(|&m| {
                essential
                    .iter()
                    .enumerate()
                    .filter(|(_, &g)| handles(&[m], g, strength))
                    .fold(0, |acc, (i, _)| acc | 1 << i)
            })
            .collect();
        search::min_cover(universe, &masks)
    };
    let with_empty = solve(false).ok_or(Error::SearchTooLarge(64))?;
    let mut chosen = solve(true).ok_or(Error::SearchTooLarge(64))?;
    if chosen.is_empty() {
        // nothing to handle: any admissible filter will do; take the first
        chosen.push(0);
    }
    let witness = FilterCollection::new(chosen.iter().map(|&i| candidates[i]).collect())?;
    Ok(CompletenessResult {
        value: witness.len(),
        value_with_empty: with_empty.len(),
        witness,
    })
}

fn essential_qualifiers(quals: &[PFilter], strength: Strength) -> Vec<PFilter> {
    quals
        .iter()
        .copied()
        .filter(|&g| {
            !quals.iter().any(|&h| {
                h != g
                    && match strength {
                        Strength::Plain => h.kernel.is_subset(g.kernel),
                        Strength::Ultra => g.kernel.is_subset(h.kernel),
                    }
            })
        })
        .collect()
}

/// The same number by brute force: try every collection of admissible
/// filters, by size, checking the cocompleteness definition directly.
/// Returns `(value, value_with_empty)`. Exponential; for small carriers only.
pub fn completeness_number_exhaustive(c: &Convergence, target: Subset, strength: Strength) -> Result<(usize, usize)> {
    if !c.is_closed(target) {
        return Err(Error::NotClosed(c.carrier().format(target)));
    }
    let candidates = admissible_filters(c, target);
    let smallest = |min_size: usize, with_degenerate: bool| -> usize {
        for size in min_size..=candidates.len() {
            let mut found = false;
            for_each_combination(candidates.len(), size, &mut |idx| {
                let members: Vec<PFilter> = idx.iter().map(|&i| candidates[i]).collect();
                if first_unhandled(c, &members, target, strength, with_degenerate).is_none() {
                    found = true;
                }
                found
            });
            if found {
                return size;
            }
        }
        unreachable!("all admissible filters together always suffice")
    };
    Ok((smallest(1, true), smallest(0, false)))
}

/// Calls `f` on every `size`-combination of `0..m` in lexicographic order
/// until it returns `true`.
pub(crate) fn for_each_combination(m: usize, size: usize, f: &mut dyn FnMut(&[usize]) -> bool) {
    fn go(start: usize, m: usize, size: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == size {
            return f(cur);
        }
        for i in start..m {
            if m - i < size - cur.len() {
                break;
            }
            cur.push(i);
            if go(i + 1, m, size, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }
    go(0, m, size, &mut Vec::with_capacity(size), f);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::Carrier;
    use crate::harness::fixtures;

    fn s(c: &Carrier, l: &[&str]) -> Subset {
        c.subset_of(l).unwrap()
    }

    fn fam(c: &Carrier, m: &[&[&str]]) -> SetFamily {
        SetFamily::from_labels(c, m).unwrap()
    }

    #[test]
    fn cover_examples() {
        let c = fixtures::chain();
        let x = c.carrier();
        let p = fam(x, &[&["a", "b"], &["c"]]);
        assert_eq!(
            is_cover(&c, &p, CoverKind::Cover),
            Verdict::Fails(Witness::Kernel(s(x, &["a", "c"])))
        );
        assert!(is_cover(&c, &p, CoverKind::Pseudocover).holds());
        assert!(is_cover(&c, &SetFamily::new(x, [x.full()]), CoverKind::Cover).holds());

        let u = fixtures::ultra();
        let p = fam(u.carrier(), &[&["1"], &["2"]]);
        assert_eq!(
            is_cover(&u, &p, CoverKind::Pseudocover),
            Verdict::Fails(Witness::Point(2))
        );
    }

    #[test]
    fn cover_criterion_agrees() {
        let c = fixtures::chain();
        let x = c.carrier();
        for p in [
            fam(x, &[&["a", "b"], &["b", "c"]]),
            SetFamily::new(x, [x.full()]),
            fam(x, &[&["a"]]),
        ] {
            assert_eq!(cover_criterion(&c, &p), is_cover(&c, &p, CoverKind::Cover).holds());
        }
        assert!(cover_criterion(&c, &SetFamily::new(x, [x.full()])));
        assert!(!cover_criterion(&c, &fam(x, &[&["a"]])));
    }

    #[test]
    fn cauchy_examples() {
        let c = fixtures::chain();
        let x = c.carrier();
        let pp = CoverCollection(vec![fam(x, &[&["a", "b"], &["c"]])]);
        let b = PFilter::principal(s(x, &["b"]));
        let ac = PFilter::principal(s(x, &["a", "c"]));
        assert!(is_cauchy(b, &pp, CauchyKind::Cauchy).unwrap());
        assert!(!is_cauchy(ac, &pp, CauchyKind::Cauchy).unwrap());
        assert!(is_cauchy(ac, &pp, CauchyKind::PreCauchy).unwrap());
        assert!(is_cauchy(ac, &CoverCollection::default(), CauchyKind::Cauchy).unwrap());
        assert_eq!(
            is_cauchy(PFilter::DEGENERATE, &pp, CauchyKind::Cauchy),
            Err(Error::DegenerateFilter)
        );
    }

    #[test]
    fn complete_collections_on_finite_spaces() {
        let c = fixtures::chain();
        let x = c.carrier();
        let pp = CoverCollection(vec![SetFamily::new(x, [x.full()])]);
        assert!(is_complete_collection(&c, &pp, Strength::Plain).unwrap().holds());
        assert!(is_complete_collection(&c, &pp, Strength::Ultra).unwrap().holds());
        let not_cover = CoverCollection(vec![fam(x, &[&["a"]])]);
        assert!(matches!(
            is_complete_collection(&c, &not_cover, Strength::Plain),
            Err(Error::NotCover(_))
        ));
    }

    #[test]
    fn ideal_transform_examples() {
        let c = fixtures::chain();
        let x = c.carrier();
        let t = ideal_transforms(&CoverCollection(vec![fam(x, &[&["a"], &["b"]])]));
        let fam0 = &t.union_down.0[0];
        assert!(fam0.contains(s(x, &["a", "b"])));
        assert!(fam0.contains(Subset::EMPTY));
        assert_eq!(fam0.len(), 4);
        assert_eq!(t.filter_form, vec![PFilter::principal(s(x, &["c"]))]);
        let t = ideal_transforms(&CoverCollection(vec![SetFamily::new(x, [x.full()])]));
        assert_eq!(t.filter_form, vec![PFilter::DEGENERATE]);
    }

    #[test]
    fn cocomplete_examples() {
        let c = fixtures::chain();
        let x = c.carrier();
        let target = s(x, &["c"]);
        let d = FilterCollection::new(vec![PFilter::principal(target)]).unwrap();
        assert!(is_cocomplete_collection(&c, &d, target, Strength::Plain)
            .unwrap()
            .holds());
        assert!(is_cocomplete_collection(&c, &d, target, Strength::Ultra)
            .unwrap()
            .holds());
        let deg = FilterCollection::new(vec![PFilter::DEGENERATE]).unwrap();
        assert_eq!(
            is_cocomplete_collection(&c, &deg, target, Strength::Ultra).unwrap(),
            Verdict::Fails(Witness::Filter(PFilter::principal(target)))
        );
        let all = FilterCollection::new(vec![PFilter::principal(x.full())]).unwrap();
        for st in [Strength::Plain, Strength::Ultra] {
            assert!(is_cocomplete_collection(&c, &all, x.full(), st).unwrap().holds());
        }
        let bad = FilterCollection::new(vec![PFilter::principal(s(x, &["b"]))]).unwrap();
        assert!(matches!(
            is_cocomplete_collection(&c, &bad, target, Strength::Plain),
            Err(Error::Adherence { .. })
        ));
        assert_eq!(FilterCollection::new(vec![]), Err(Error::EmptyCollection));
    }

    #[test]
    fn completeness_number_examples() {
        let c = fixtures::chain();
        let x = c.carrier();
        let r = completeness_number(&c, s(x, &["c"]), Strength::Ultra).unwrap();
        assert_eq!(r.value, 1);
        assert_eq!(r.witness.members(), &[PFilter::principal(s(x, &["c"]))]);

        let r = completeness_number(&c, Subset::EMPTY, Strength::Ultra).unwrap();
        assert_eq!((r.value, r.value_with_empty), (1, 0));
        assert_eq!(r.witness.members(), &[PFilter::DEGENERATE]);

        let r = completeness_number(&c, s(x, &["b", "c"]), Strength::Plain).unwrap();
        assert_eq!(r.value, 1);
        assert_eq!(r.witness.members(), &[PFilter::principal(s(x, &["b", "c"]))]);

        assert!(matches!(
            completeness_number(&c, s(x, &["a"]), Strength::Plain),
            Err(Error::NotClosed(_))
        ));
    }

    #[test]
    fn completeness_number_matches_brute_force_on_fixtures() {
        for c in [
            fixtures::chain(),
            fixtures::ultra(),
            fixtures::overlap(),
            fixtures::disc2(),
        ] {
            for a in c.closed_sets().members().copied() {
                for st in [Strength::Plain, Strength::Ultra] {
                    let fast = completeness_number(&c, a, st).unwrap();
                    let brute = completeness_number_exhaustive(&c, a, st).unwrap();
                    assert_eq!((fast.value, fast.value_with_empty), brute);
                    assert!(is_cocomplete_collection(&c, &fast.witness, a, st).unwrap().holds());
                }
            }
        }
    }

    #[test]
    fn combinations_in_lex_order() {
        let mut seen = Vec::new();
        for_each_combination(4, 2, &mut |c| {
            seen.push(c.to_vec());
            false
        });
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[0], vec![0, 1]);
        assert_eq!(seen[5], vec![2, 3]);
    }
}
