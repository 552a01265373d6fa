//! Convergence structures on finite carriers.
//!
//! A [`Convergence`] maps every nonempty kernel (a principal filter) to its
//! limit set. The axioms, transcribed to kernels, are:
//!
//! * centered: `x ∈ lim{x}` for every point `x`;
//! * antitone: `A ⊆ B ⇒ lim B ⊆ lim A` (a bigger kernel is a coarser filter).
//!
//! Structures are either tabulated (`2^n` entries) or lazy views whose rule is
//! evaluated on demand: reflectors, duals, final and initial structures. A lazy
//! view is lawful by construction; [`Convergence::validate`] only enumerates
//! kernels when the carrier is within [`DEFAULT_CAP`].

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::families::{Carrier, PFilter, SetFamily, Subset, DEFAULT_CAP};

/// The rule behind a convergence. `limit` is only called on nonempty kernels.
pub trait LimitRule: Send + Sync {
    fn limit(&self, kernel: Subset) -> Subset;
}

/// How a convergence is represented.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RuleKind {
    Tabulated,
    ReflectorS,
    ReflectorT,
    Dual,
    Final,
    Initial,
}

struct Table(Vec<Subset>);

impl LimitRule for Table {
    fn limit(&self, kernel: Subset) -> Subset {
        self.0[kernel.0 as usize]
    }
}

/// `lim A = ⋂_{a∈A} gen(a)`: the shape of both reflectors.
struct PointwiseMeet {
    full: Subset,
    per_point: Vec<Subset>,
}

impl LimitRule for PointwiseMeet {
    fn limit(&self, kernel: Subset) -> Subset {
        kernel
            .iter()
            .fold(self.full, |acc, a| acc.intersection(self.per_point[a]))
    }
}

/// A violation of the convergence axioms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `x ∉ lim{x}`.
    NotCentered { point: usize },
    /// `smaller ⊆ larger` but `lim larger ⊄ lim smaller`.
    NotAntitone { smaller: Subset, larger: Subset },
}

impl Violation {
    pub fn describe(&self, carrier: &Carrier) -> String {
        match *self {
            Violation::NotCentered { point } => {
                format!("not centered at {}", carrier.label(point))
            }
            Violation::NotAntitone { smaller, larger } => format!(
                "not antitone: {} ⊆ {} but lim {} ⊄ lim {}",
                carrier.format(smaller),
                carrier.format(larger),
                carrier.format(larger),
                carrier.format(smaller)
            ),
        }
    }
}

/// Why a predicate failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Witness {
    Point(usize),
    Kernel(Subset),
    Filter(PFilter),
}

impl Witness {
    pub fn describe(&self, carrier: &Carrier) -> String {
        match *self {
            Witness::Point(x) => format!("point {}", carrier.label(x)),
            Witness::Kernel(k) => format!("kernel {}", carrier.format(k)),
            Witness::Filter(f) => format!("filter with kernel {}", carrier.format(f.kernel)),
        }
    }
}

/// Outcome of a checked predicate, carrying a counterexample on failure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails(Witness),
}

impl Verdict {
    pub fn holds(self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(self) -> Option<Witness> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }

    pub(crate) fn from_failure(w: Option<Witness>) -> Verdict {
        w.map_or(Verdict::Holds, Verdict::Fails)
    }
}

/// Compactness data of a convergence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompactParts {
    pub compactoids: SetFamily,
    pub compacts: SetFamily,
    pub cocompactoid: PFilter,
    pub locally_compactoid: bool,
}

/// A convergence on a finite carrier.
#[derive(Clone)]
pub struct Convergence {
    carrier: Carrier,
    rule: Arc<dyn LimitRule>,
    kind: RuleKind,
}

impl fmt::Debug for Convergence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        if self.carrier.size() <= 6 {
            for k in self.carrier.kernels() {
                m.entry(&self.carrier.format(k), &self.carrier.format(self.limit(k)));
            }
        }
        m.finish()
    }
}

impl Convergence {
    /// Wraps a custom rule. The caller is responsible for lawfulness.
    pub fn from_rule(carrier: &Carrier, kind: RuleKind, rule: Arc<dyn LimitRule>) -> Convergence {
        Convergence {
            carrier: carrier.clone(),
            rule,
            kind,
        }
    }

    /// A tabulated structure from a rule evaluated once per kernel. Not validated.
    pub fn tabulate_fn(carrier: &Carrier, f: impl Fn(Subset) -> Subset) -> Result<Convergence> {
        let n = carrier.size();
        if n > DEFAULT_CAP {
            return Err(Error::Capacity {
                size: n,
                cap: DEFAULT_CAP,
            });
        }
        let full = carrier.full();
        let mut table = vec![Subset::EMPTY; 1usize << n];
        for k in carrier.kernels() {
            table[k.0 as usize] = f(k).intersection(full);
        }
        Ok(Convergence {
            carrier: carrier.clone(),
            rule: Arc::new(Table(table)),
            kind: RuleKind::Tabulated,
        })
    }

    /// Tabulated and validated.
    pub fn from_fn(carrier: &Carrier, f: impl Fn(Subset) -> Subset) -> Result<Convergence> {
        Self::tabulate_fn(carrier, f)?.validated()
    }

    /// Builds a validated structure from explicit `(kernel, limit)` pairs;
    /// unlisted kernels get an empty limit.
    pub fn from_entries(carrier: &Carrier, entries: &[(Subset, Subset)]) -> Result<Convergence> {
        let mut table = vec![Subset::EMPTY; 1usize << carrier.size().min(DEFAULT_CAP)];
        for &(k, l) in entries {
            if let Some(slot) = table.get_mut(k.0 as usize) {
                *slot = l;
            }
        }
        Self::from_fn(carrier, |k| table[k.0 as usize])
    }

    /// The topology with the given open sets, as a convergence:
    /// `lim A = {x : A ⊆ every open set containing x}`.
    pub fn from_open_sets(carrier: &Carrier, opens: &[Subset]) -> Result<Convergence> {
        let n = carrier.size();
        let nbhd_kernel: Vec<Subset> = (0..n)
            .map(|x| {
                opens
                    .iter()
                    .filter(|o| o.contains(x))
                    .fold(carrier.full(), |acc, &o| acc.intersection(o))
            })
            .collect();
        Self::from_fn(carrier, |a| {
            Subset::from_indices((0..n).filter(|&x| a.is_subset(nbhd_kernel[x])))
        })
    }

    /// The finest convergence with `L ⊆ lim S` for each generator `(S, L)`:
    /// `lim A = ⋃{L : A ⊆ S} ∪ ({x} if A = {x})`.
    pub fn generate(carrier: &Carrier, generators: &[(Subset, Subset)]) -> Result<Convergence> {
        Self::from_fn(carrier, |a| {
            let mut lim = generators
                .iter()
                .filter(|(s, _)| !s.is_empty() && a.is_subset(*s))
                .fold(Subset::EMPTY, |acc, &(_, l)| acc.union(l));
            if a.len() == 1 {
                lim = lim.union(a);
            }
            lim
        })
    }

    /// Fails with the violation list unless the axioms hold.
    pub fn validated(self) -> Result<Convergence> {
        let v = self.validate();
        if v.is_empty() {
            Ok(self)
        } else {
            Err(Error::Invalid(v))
        }
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn kind(&self) -> RuleKind {
        self.kind
    }

    /// The limit set of the principal filter with the given nonempty kernel.
    pub fn limit(&self, kernel: Subset) -> Subset {
        debug_assert!(!kernel.is_empty(), "limit of the degenerate filter");
        self.rule.limit(kernel)
    }

    pub fn point_limit(&self, x: usize) -> Subset {
        self.limit(Subset::singleton(x))
    }

    pub fn point_limits(&self) -> Vec<Subset> {
        (0..self.carrier.size()).map(|x| self.point_limit(x)).collect()
    }

    /// Axiom check. Antitonicity is checked on covering pairs
    /// `A ∖ {a} ⊆ A`. Lazy views beyond the cap are lawful by construction and
    /// return no violations.
    pub fn validate(&self) -> Vec<Violation> {
        let n = self.carrier.size();
        let mut out = Vec::new();
        for x in 0..n {
            if !self.point_limit(x).contains(x) {
                out.push(Violation::NotCentered { point: x });
            }
        }
        if n > DEFAULT_CAP {
            return out;
        }
        for k in self.carrier.kernels() {
            if k.len() < 2 {
                continue;
            }
            let lim = self.limit(k);
            for a in k.iter() {
                let smaller = k.remove(a);
                if !lim.is_subset(self.limit(smaller)) {
                    out.push(Violation::NotAntitone { smaller, larger: k });
                }
            }
        }
        out
    }

    /// Evaluates a lazy view into a table.
    pub fn tabulate(&self) -> Result<Convergence> {
        Self::tabulate_fn(&self.carrier, |k| self.limit(k))
    }

    /// Same limits on every nonempty kernel.
    pub fn same_limits(&self, other: &Convergence) -> bool {
        self.carrier == other.carrier && self.carrier.kernels().all(|k| self.limit(k) == other.limit(k))
    }

    /// `self ≥ other`: `lim_self A ⊆ lim_other A` for every kernel.
    pub fn finer_than(&self, other: &Convergence) -> Result<bool> {
        if self.carrier != other.carrier {
            return Err(Error::CarrierMismatch);
        }
        Ok(self.carrier.kernels().all(|k| self.limit(k).is_subset(other.limit(k))))
    }

    /// `adh F = ⋃_{y ∈ ker F} lim{y}`; empty for the degenerate filter.
    pub fn adherence(&self, f: PFilter) -> Subset {
        f.kernel
            .iter()
            .fold(Subset::EMPTY, |acc, y| acc.union(self.point_limit(y)))
    }

    /// Adherence of an arbitrary family: the union of limits of all proper
    /// filters meshing it, by enumeration of kernels.
    pub fn adherence_of_family(&self, family: &SetFamily) -> Subset {
        self.carrier
            .kernels()
            .filter(|&k| family.members().all(|&m| m.meets(k)))
            .fold(Subset::EMPTY, |acc, k| acc.union(self.limit(k)))
    }

    /// `{y : lim{y} ⊆ target}`: the largest kernel whose filter adheres inside
    /// `target`.
    pub fn adherence_core(&self, target: Subset) -> Subset {
        Subset::from_indices((0..self.carrier.size()).filter(|&y| self.point_limit(y).is_subset(target)))
    }

    /// `C` is closed iff `lim A ⊆ C` whenever `A` meets `C`; by antitonicity
    /// singletons inside `C` suffice.
    pub fn is_closed(&self, c: Subset) -> bool {
        c.iter().all(|y| self.point_limit(y).is_subset(c))
    }

    pub fn closed_sets(&self) -> SetFamily {
        let lims = self.point_limits();
        SetFamily::new(
            &self.carrier,
            self.carrier
                .full()
                .subsets()
                .filter(|&c| c.iter().all(|y| lims[y].is_subset(c))),
        )
    }

    /// Smallest closed superset.
    pub fn closure_of(&self, a: Subset) -> Subset {
        let lims = self.point_limits();
        let mut cur = a;
        loop {
            let next = cur.iter().fold(cur, |acc, y| acc.union(lims[y]));
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    /// `cl{x}` for every point.
    pub fn point_closures(&self) -> Vec<Subset> {
        (0..self.carrier.size())
            .map(|x| self.closure_of(Subset::singleton(x)))
            .collect()
    }

    /// Topological reflection: `lim_T A = ⋂_{a∈A} cl{a}`, the convergence of
    /// the topology of closed sets.
    pub fn reflector_t(&self) -> Convergence {
        Convergence {
            carrier: self.carrier.clone(),
            rule: Arc::new(PointwiseMeet {
                full: self.carrier.full(),
                per_point: self.point_closures(),
            }),
            kind: RuleKind::ReflectorT,
        }
    }

    /// Pseudotopological reflection: `lim_S A = ⋂_{a∈A} lim{a}`.
    pub fn reflector_s(&self) -> Convergence {
        Convergence {
            carrier: self.carrier.clone(),
            rule: Arc::new(PointwiseMeet {
                full: self.carrier.full(),
                per_point: self.point_limits(),
            }),
            kind: RuleKind::ReflectorS,
        }
    }

    pub fn is_pseudotopology(&self) -> bool {
        self.same_limits(&self.reflector_s())
    }

    pub fn is_topological(&self) -> bool {
        self.same_limits(&self.reflector_t())
    }

    pub fn compact_parts(&self) -> CompactParts {
        let lims = self.point_limits();
        let converging = Subset::from_indices((0..lims.len()).filter(|&y| !lims[y].is_empty()));
        let compactoids = SetFamily::new(&self.carrier, converging.subsets());
        let compacts = SetFamily::new(
            &self.carrier,
            self.carrier
                .full()
                .subsets()
                .filter(|&a| a.iter().all(|y| lims[y].meets(a))),
        );
        let locally_compactoid = self
            .carrier
            .kernels()
            .filter(|&k| !self.limit(k).is_empty())
            .all(|k| k.is_subset(converging));
        CompactParts {
            compactoids,
            compacts,
            cocompactoid: PFilter::principal(self.carrier.complement(converging)),
            locally_compactoid,
        }
    }

    /// `lim F`, or `None` for the degenerate filter.
    pub fn limit_of_filter(&self, f: PFilter) -> Option<Subset> {
        (!f.is_degenerate()).then(|| self.limit(f.kernel))
    }
}

/// Pointwise union of two convergences: coarser than both, still lawful.
pub fn union_structure(a: &Convergence, b: &Convergence) -> Result<Convergence> {
    if a.carrier() != b.carrier() {
        return Err(Error::CarrierMismatch);
    }
    Convergence::tabulate_fn(a.carrier(), |k| a.limit(k).union(b.limit(k)))
}
