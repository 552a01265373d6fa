//! The dual space on closed sets.
//!
//! The points of the dual are the closed sets of a base convergence. A dual
//! kernel `G` (a set of closed sets) converges to the closed set `A` iff the
//! adherence of its reduced filter, the base filter with kernel `⋃G`, lies
//! inside `A`. For a topological base this is the upper Kuratowski
//! convergence.
//!
//! Dual points are labelled by joining member labels with `+`; `~` is `∅`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::families::{Carrier, PFilter, SetFamily, Subset, DEFAULT_CAP, WORD_BITS};
use crate::space::{Convergence, LimitRule, RuleKind};

struct DualRule {
    closed: Vec<Subset>,
    base_limits: Vec<Subset>,
}

impl DualRule {
    fn adherence(&self, k: Subset) -> Subset {
        k.iter().fold(Subset::EMPTY, |acc, y| acc.union(self.base_limits[y]))
    }
}

impl LimitRule for DualRule {
    fn limit(&self, kernel: Subset) -> Subset {
        let rdc = kernel.iter().fold(Subset::EMPTY, |acc, i| acc.union(self.closed[i]));
        let adh = self.adherence(rdc);
        Subset::from_indices((0..self.closed.len()).filter(|&i| adh.is_subset(self.closed[i])))
    }
}

/// The dual of a convergence, evaluated lazily.
#[derive(Clone, Debug)]
pub struct DualSpace {
    base: Convergence,
    closed: Vec<Subset>,
    conv: Convergence,
}

impl DualSpace {
    /// Fails if the base has more than 64 closed sets.
    pub fn new(base: &Convergence) -> Result<DualSpace> {
        let closed: Vec<Subset> = base.closed_sets().members().copied().collect();
        if closed.len() > WORD_BITS {
            return Err(Error::Capacity {
                size: closed.len(),
                cap: WORD_BITS,
            });
        }
        let carrier = Carrier::with_cap(dual_labels(base.carrier(), &closed), WORD_BITS)?;
        let rule = DualRule {
            closed: closed.clone(),
            base_limits: base.point_limits(),
        };
        let conv = Convergence::from_rule(&carrier, RuleKind::Dual, Arc::new(rule));
        Ok(DualSpace {
            base: base.clone(),
            closed,
            conv,
        })
    }

    pub fn base(&self) -> &Convergence {
        &self.base
    }

    pub fn carrier(&self) -> &Carrier {
        self.conv.carrier()
    }

    pub fn convergence(&self) -> &Convergence {
        &self.conv
    }

    /// Closed sets of the base, indexed as dual points.
    pub fn closed_sets(&self) -> &[Subset] {
        &self.closed
    }

    pub fn closed_set(&self, point: usize) -> Subset {
        self.closed[point]
    }

    /// The dual point of a closed base set.
    pub fn point_of(&self, c: Subset) -> Result<usize> {
        self.closed
            .iter()
            .position(|&d| d == c)
            .ok_or_else(|| Error::NotClosed(self.base.carrier().format(c)))
    }

    /// A dual subset from base closed sets.
    pub fn subset_of(&self, sets: &[Subset]) -> Result<Subset> {
        sets.iter()
            .try_fold(Subset::EMPTY, |acc, &c| Ok(acc.insert(self.point_of(c)?)))
    }

    /// The dual as a table, only within the default cap.
    pub fn tabulate(&self) -> Result<Convergence> {
        self.conv.tabulate()
    }

    /// `rdc G`: the union of the member closed sets.
    pub fn rdc(&self, g: Subset) -> Subset {
        g.iter().fold(Subset::EMPTY, |acc, i| acc.union(self.closed[i]))
    }

    /// `rdc` of a family of base sets, which must all be closed.
    pub fn rdc_family(&self, g: &SetFamily) -> Result<Subset> {
        g.members().try_fold(Subset::EMPTY, |acc, &c| {
            if self.base.is_closed(c) {
                Ok(acc.union(c))
            } else {
                Err(Error::NotClosed(self.base.carrier().format(c)))
            }
        })
    }

    /// The reduced filter; degenerate iff `G ⊆ {∅}`.
    pub fn rdc_filter(&self, g: PFilter) -> PFilter {
        PFilter::principal(self.rdc(g.kernel))
    }

    /// `e(F)`: the dual points inside `F`. Always contains `∅`.
    pub fn erected(&self, f: Subset) -> Subset {
        Subset::from_indices((0..self.closed.len()).filter(|&i| self.closed[i].is_subset(f)))
    }

    /// `e(F)` as a family of base sets.
    pub fn erected_family(&self, f: Subset) -> SetFamily {
        SetFamily::new(
            self.base.carrier(),
            self.closed.iter().copied().filter(|c| c.is_subset(f)),
        )
    }

    pub fn erected_filter(&self, f: PFilter) -> Result<PFilter> {
        if f.is_degenerate() {
            return Err(Error::DegenerateFilter);
        }
        Ok(PFilter::principal(self.erected(f.kernel)))
    }

    /// `e(rdc G)`: every closed subset of `⋃G`.
    pub fn saturate(&self, g: PFilter) -> Result<PFilter> {
        if g.is_degenerate() {
            return Err(Error::DegenerateFilter);
        }
        Ok(PFilter::principal(self.erected(self.rdc(g.kernel))))
    }

    /// Limit of a dual kernel in the upper Kuratowski form
    /// `{A : ⋂_{H ⊇ G} cl(⋃H) ⊆ A}`, intersecting over every member `H` of
    /// the principal filter. Exponential in the number of dual points outside
    /// `G`; only for small duals.
    pub fn upper_kuratowski_limit(&self, g: Subset) -> Result<Subset> {
        let outside = self.carrier().complement(g);
        if outside.len() > DEFAULT_CAP {
            return Err(Error::SearchTooLarge(outside.len()));
        }
        let meet = outside.subsets().fold(self.base.carrier().full(), |acc, extra| {
            acc.intersection(self.base.closure_of(self.rdc(g.union(extra))))
        });
        Ok(Subset::from_indices(
            (0..self.closed.len()).filter(|&i| meet.is_subset(self.closed[i])),
        ))
    }
}

fn dual_labels(base: &Carrier, closed: &[Subset]) -> Vec<String> {
    let joined: Vec<String> = closed
        .iter()
        .map(|&c| {
            if c.is_empty() {
                "~".to_string()
            } else {
                c.iter().map(|i| base.label(i)).collect::<Vec<_>>().join("+")
            }
        })
        .collect();
    let mut sorted = joined.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() == joined.len() {
        joined
    } else {
        (0..closed.len()).map(|i| format!("C{i}")).collect()
    }
}

/// The Alexandroff closures built from point closures of a convergence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlexandroffPair {
    point_closures: Vec<Subset>,
}

impl AlexandroffPair {
    pub fn new(c: &Convergence) -> AlexandroffPair {
        AlexandroffPair {
            point_closures: c.point_closures(),
        }
    }

    /// `{x : cl{x} ∩ B ≠ ∅}`.
    pub fn star_closure(&self, b: Subset) -> Subset {
        Subset::from_indices((0..self.point_closures.len()).filter(|&x| self.point_closures[x].meets(b)))
    }

    /// `⋃_{b∈B} cl{b}`.
    pub fn bullet_closure(&self, b: Subset) -> Subset {
        b.iter().fold(Subset::EMPTY, |acc, y| acc.union(self.point_closures[y]))
    }

    /// `{x : cl{x} ⊆ K}`, the interior for the star topology.
    pub fn star_interior(&self, k: Subset) -> Subset {
        Subset::from_indices((0..self.point_closures.len()).filter(|&x| self.point_closures[x].is_subset(k)))
    }
}

pub fn alexandroff(c: &Convergence) -> AlexandroffPair {
    AlexandroffPair::new(c)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Regularity {
    pub star_regular: bool,
    pub bullet_regular: bool,
    pub reciprocal: bool,
}

pub fn regularity_predicates(c: &Convergence) -> Regularity {
    let alex = AlexandroffPair::new(c);
    let stable = |close: &dyn Fn(Subset) -> Subset| c.carrier().kernels().all(|k| c.limit(close(k)) == c.limit(k));
    let lims = c.point_limits();
    let n = lims.len();
    let reciprocal = (0..n).all(|x| (0..n).all(|y| lims[y].contains(x) == lims[x].contains(y)));
    Regularity {
        star_regular: stable(&|k| alex.star_closure(k)),
        bullet_regular: stable(&|k| alex.bullet_closure(k)),
        reciprocal,
    }
}
