//! Subsets, set families and filters on a finite carrier.
//!
//! Every subset of a carrier of size `n <= 64` is a bitmask in one `u64`
//! word. A filter on a finite set is principal, so a [`PFilter`] stores only
//! its kernel (the intersection of all its members); the empty kernel stands
//! for the degenerate filter `{∅}↑ = 2^X`.
//!
//! ```
//! use convspace::families::{Carrier, SetFamily};
//!
//! let x = Carrier::new(["a", "b", "c"]).unwrap();
//! let f = SetFamily::from_labels(&x, &[&["a"][..]]).unwrap();
//! assert_eq!(f.up_closure().len(), 4);
//! assert_eq!(x.format(f.complements().members().next().copied().unwrap()), "{b,c}");
//! ```

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Default cap on base carriers, so that a full limit table (`2^n` entries)
/// stays small.
pub const DEFAULT_CAP: usize = 16;

/// Largest carrier a [`Subset`] can index.
pub const WORD_BITS: usize = 64;

/// A subset of a carrier, as a bitmask over point indices.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Subset(pub u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn singleton(i: usize) -> Subset {
        Subset(1u64 << i)
    }

    /// The full subset `{0, .., n-1}`.
    pub fn full(n: usize) -> Subset {
        if n >= 64 {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Subset {
        Subset(it.into_iter().fold(0, |m, i| m | (1u64 << i)))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(self, i: usize) -> Subset {
        Subset(self.0 | 1u64 << i)
    }

    pub fn remove(self, i: usize) -> Subset {
        Subset(self.0 & !(1u64 << i))
    }

    pub fn union(self, o: Subset) -> Subset {
        Subset(self.0 | o.0)
    }

    pub fn intersection(self, o: Subset) -> Subset {
        Subset(self.0 & o.0)
    }

    pub fn difference(self, o: Subset) -> Subset {
        Subset(self.0 & !o.0)
    }

    pub fn meets(self, o: Subset) -> bool {
        self.0 & o.0 != 0
    }

    pub fn is_subset(self, o: Subset) -> bool {
        self.0 & !o.0 == 0
    }

    /// Lowest member index.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Member indices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                return None;
            }
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        })
    }

    /// All subsets of `self` (including `∅` and `self`), by increasing mask.
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        let full = self.0;
        let mut cur = Some(0u64);
        std::iter::from_fn(move || {
            let s = cur?;
            cur = if s == full {
                None
            } else {
                Some((s.wrapping_sub(full)) & full)
            };
            Some(Subset(s))
        })
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[derive(Debug)]
struct CarrierInner {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

/// A finite ground set with stable, labelled points.
///
/// Cloning is cheap; clones compare equal to the original.
#[derive(Clone, Debug)]
pub struct Carrier(Arc<CarrierInner>);

impl PartialEq for Carrier {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.labels == other.0.labels
    }
}

impl Eq for Carrier {}

fn label_ok(l: &str) -> bool {
    !l.is_empty()
        && l != "->"
        && !l
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, '{' | '}' | ',' | '#' | ':'))
}

impl Carrier {
    /// Builds a carrier with the default cap of [`DEFAULT_CAP`] points.
    pub fn new<I, S>(labels: I) -> Result<Carrier>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self::with_cap(labels, DEFAULT_CAP)
    }

    /// Builds a carrier allowing up to `cap` points (`cap <= 64`).
    pub fn with_cap<I, S>(labels: I, cap: usize) -> Result<Carrier>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let cap = cap.min(WORD_BITS);
        if labels.is_empty() {
            return Err(Error::EmptyCarrier);
        }
        if labels.len() > cap {
            return Err(Error::Capacity {
                size: labels.len(),
                cap,
            });
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if !label_ok(l) {
                return Err(Error::InvalidLabel(l.clone()));
            }
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(Carrier(Arc::new(CarrierInner { labels, index })))
    }

    /// Carrier with points labelled `1..=n`.
    pub fn numbered(n: usize) -> Result<Carrier> {
        Self::new((1..=n).map(|i| i.to_string()))
    }

    pub fn size(&self) -> usize {
        self.0.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.0.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.0.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.0
            .index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.size())
    }

    pub fn complement(&self, s: Subset) -> Subset {
        self.full().difference(s)
    }

    /// Nonempty subsets, by increasing mask.
    pub fn kernels(&self) -> impl Iterator<Item = Subset> {
        self.full().subsets().skip(1)
    }

    pub fn subset_of(&self, labels: &[&str]) -> Result<Subset> {
        labels
            .iter()
            .try_fold(Subset::EMPTY, |s, l| Ok(s.insert(self.index_of(l)?)))
    }

    /// Parses the literal syntax `{a,b}` (no spaces inside braces; `{}` is `∅`).
    pub fn parse_subset(&self, text: &str) -> Result<Subset> {
        let inner = text
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| Error::Syntax {
                line: 0,
                message: format!("expected a set literal like {{a,b}}, got `{text}`"),
            })?;
        if inner.is_empty() {
            return Ok(Subset::EMPTY);
        }
        inner
            .split(',')
            .try_fold(Subset::EMPTY, |s, l| Ok(s.insert(self.index_of(l)?)))
    }

    /// Renders a subset in the literal syntax, members in carrier order.
    pub fn format(&self, s: Subset) -> String {
        let mut out = String::from("{");
        for (k, i) in s.iter().enumerate() {
            if k > 0 {
                out.push(',');
            }
            out.push_str(self.label(i));
        }
        out.push('}');
        out
    }
}

/// A finite family of subsets of one carrier; duplicates collapse.
#[derive(Clone, PartialEq, Eq)]
pub struct SetFamily {
    carrier: Carrier,
    members: BTreeSet<Subset>,
}

impl fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `{{a,b}, {c}}`, members in mask order.
impl fmt::Display for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let members: Vec<String> = self.members.iter().map(|&s| self.carrier.format(s)).collect();
        write!(f, "{{{}}}", members.join(", "))
    }
}

impl SetFamily {
    pub fn new<I: IntoIterator<Item = Subset>>(carrier: &Carrier, members: I) -> SetFamily {
        let full = carrier.full();
        SetFamily {
            carrier: carrier.clone(),
            members: members.into_iter().map(|s| s.intersection(full)).collect(),
        }
    }

    pub fn empty(carrier: &Carrier) -> SetFamily {
        Self::new(carrier, [])
    }

    pub fn from_labels(carrier: &Carrier, members: &[&[&str]]) -> Result<SetFamily> {
        let sets = members
            .iter()
            .map(|m| carrier.subset_of(m))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(carrier, sets))
    }

    /// Every subset of the carrier.
    pub fn powerset(carrier: &Carrier) -> SetFamily {
        Self::new(carrier, carrier.full().subsets())
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn members(&self) -> impl Iterator<Item = &Subset> + '_ {
        self.members.iter()
    }

    pub fn contains(&self, s: Subset) -> bool {
        self.members.contains(&s)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Union of all members.
    pub fn union_all(&self) -> Subset {
        self.members.iter().fold(Subset::EMPTY, |acc, &s| acc.union(s))
    }

    /// All supersets of members.
    pub fn up_closure(&self) -> SetFamily {
        let full = self.carrier.full();
        let mut out = BTreeSet::new();
        for &m in &self.members {
            for extra in full.difference(m).subsets() {
                out.insert(m.union(extra));
            }
        }
        SetFamily {
            carrier: self.carrier.clone(),
            members: out,
        }
    }

    /// All subsets of members.
    pub fn down_closure(&self) -> SetFamily {
        let mut out = BTreeSet::new();
        for &m in &self.members {
            out.extend(m.subsets());
        }
        SetFamily {
            carrier: self.carrier.clone(),
            members: out,
        }
    }

    fn binary_closure(&self, op: fn(Subset, Subset) -> Subset) -> SetFamily {
        let mut out = self.members.clone();
        let mut frontier: Vec<Subset> = out.iter().copied().collect();
        while let Some(s) = frontier.pop() {
            let snapshot: Vec<Subset> = out.iter().copied().collect();
            for t in snapshot {
                let u = op(s, t);
                if out.insert(u) {
                    frontier.push(u);
                }
            }
        }
        SetFamily {
            carrier: self.carrier.clone(),
            members: out,
        }
    }

    /// Closure under unions of nonempty finite subfamilies.
    pub fn union_closure(&self) -> SetFamily {
        self.binary_closure(Subset::union)
    }

    /// Closure under intersections of nonempty finite subfamilies.
    pub fn intersection_closure(&self) -> SetFamily {
        self.binary_closure(Subset::intersection)
    }

    pub fn complements(&self) -> SetFamily {
        let c = &self.carrier;
        SetFamily {
            carrier: c.clone(),
            members: self.members.iter().map(|&s| c.complement(s)).collect(),
        }
    }

    /// `self # other`: every member of `self` meets every member of `other`.
    pub fn meshes(&self, other: &SetFamily) -> bool {
        self.members.iter().all(|&a| other.members.iter().all(|&b| a.meets(b)))
    }

    /// All subsets meeting every member.
    pub fn grill(&self) -> SetFamily {
        let members = self
            .carrier
            .full()
            .subsets()
            .filter(|&s| self.members.iter().all(|&m| m.meets(s)))
            .collect();
        SetFamily {
            carrier: self.carrier.clone(),
            members,
        }
    }

    /// Whether the family is a (proper) filter: nonempty members only, and
    /// closed under finite intersections and supersets.
    pub fn is_filter(&self) -> bool {
        !self.members.is_empty()
            && !self.members.contains(&Subset::EMPTY)
            && self.intersection_closure().up_closure() == *self
    }

    /// Whether the family is an ideal: proper subsets only, and closed under
    /// finite unions and subsets.
    pub fn is_ideal(&self) -> bool {
        let full = self.carrier.full();
        !self.members.is_empty() && !self.members.contains(&full) && self.union_closure().down_closure() == *self
    }

    /// Intersection of all members, if the family is nonempty.
    pub fn kernel(&self) -> Option<Subset> {
        let mut it = self.members.iter().copied();
        let first = it.next()?;
        Some(it.fold(first, Subset::intersection))
    }
}

/// A filter on a finite carrier, identified with its kernel.
///
/// `kernel = ∅` is the degenerate filter: finest of all, meshing nothing.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PFilter {
    pub kernel: Subset,
}

impl PFilter {
    pub const DEGENERATE: PFilter = PFilter { kernel: Subset::EMPTY };

    pub fn principal(kernel: Subset) -> PFilter {
        PFilter { kernel }
    }

    pub fn point(i: usize) -> PFilter {
        PFilter::principal(Subset::singleton(i))
    }

    pub fn is_degenerate(self) -> bool {
        self.kernel.is_empty()
    }

    /// `self ≥ other`: every member of `other` belongs to `self`.
    pub fn finer_than(self, other: PFilter) -> bool {
        self.kernel.is_subset(other.kernel)
    }

    pub fn meshes(self, other: PFilter) -> bool {
        self.kernel.meets(other.kernel)
    }

    /// Points whose principal ultrafilters refine this filter.
    pub fn ultra_set(self) -> Subset {
        self.kernel
    }

    /// The filter as a family of subsets.
    pub fn to_family(self, carrier: &Carrier) -> SetFamily {
        SetFamily::new(carrier, [self.kernel]).up_closure()
    }

    /// Reads a filter family back into kernel form; `None` if the family is
    /// not up-closed around a single smallest member.
    pub fn from_family(family: &SetFamily) -> Option<PFilter> {
        let k = family.kernel()?;
        let f = PFilter::principal(k);
        (f.to_family(family.carrier()) == *family).then_some(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain() -> Carrier {
        Carrier::new(["a", "b", "c"]).unwrap()
    }

    fn fam(c: &Carrier, m: &[&[&str]]) -> SetFamily {
        SetFamily::from_labels(c, m).unwrap()
    }

    #[test]
    fn up_and_down_closures() {
        let x = chain();
        let up = fam(&x, &[&["a"]]).up_closure();
        assert_eq!(up, fam(&x, &[&["a"], &["a", "b"], &["a", "c"], &["a", "b", "c"]]));
        let d = SetFamily::new(&x, [Subset::EMPTY]).down_closure();
        assert_eq!(d, SetFamily::new(&x, [Subset::EMPTY]));
        assert!(SetFamily::empty(&x).up_closure().is_empty());
    }

    #[test]
    fn union_and_intersection_closures() {
        let x = chain();
        assert_eq!(
            fam(&x, &[&["a"], &["b"]]).union_closure(),
            fam(&x, &[&["a"], &["b"], &["a", "b"]])
        );
        assert_eq!(
            fam(&x, &[&["a", "b"], &["b", "c"]]).intersection_closure(),
            fam(&x, &[&["a", "b"], &["b", "c"], &["b"]])
        );
        assert_eq!(fam(&x, &[&["c"]]).union_closure(), fam(&x, &[&["c"]]));
        // empty selections never inject ∅ or the carrier
        assert!(SetFamily::empty(&x).union_closure().is_empty());
        assert!(SetFamily::empty(&x).intersection_closure().is_empty());
    }

    #[test]
    fn complements_and_mesh() {
        let x = chain();
        assert_eq!(fam(&x, &[&["a"]]).complements(), fam(&x, &[&["b", "c"]]));
        let both = SetFamily::new(&x, [Subset::EMPTY, x.full()]);
        assert_eq!(both.complements(), both);
        assert!(fam(&x, &[&["a", "b"]]).meshes(&fam(&x, &[&["b", "c"]])));
        let empty_member = SetFamily::new(&x, [Subset::EMPTY]);
        assert!(!empty_member.meshes(&fam(&x, &[&["a"]])));
        assert!(!empty_member.meshes(&SetFamily::powerset(&x)));
    }

    #[test]
    fn grill_of_point_filter() {
        let x = chain();
        let b = x.subset_of(&["b"]).unwrap();
        let g = PFilter::principal(b).to_family(&x).grill();
        assert_eq!(g, fam(&x, &[&["b"], &["a", "b"], &["b", "c"], &["a", "b", "c"]]));
    }

    #[test]
    fn filter_operations() {
        let x = chain();
        let b = PFilter::principal(x.subset_of(&["b"]).unwrap());
        let ab = PFilter::principal(x.subset_of(&["a", "b"]).unwrap());
        assert!(b.finer_than(ab));
        assert!(!ab.finer_than(b));
        for k in x.full().subsets() {
            let g = PFilter::principal(k);
            assert!(!PFilter::DEGENERATE.meshes(g));
            assert!(PFilter::DEGENERATE.finer_than(g));
        }
        let ac = x.subset_of(&["a", "c"]).unwrap();
        assert_eq!(PFilter::principal(ac).ultra_set(), ac);
    }

    #[test]
    fn subset_literals() {
        let x = chain();
        assert_eq!(x.parse_subset("{}").unwrap(), Subset::EMPTY);
        assert_eq!(x.format(x.parse_subset("{c,a}").unwrap()), "{a,c}");
        assert!(matches!(x.parse_subset("{a,d}"), Err(Error::UnknownLabel(_))));
        assert!(x.parse_subset("a,b").is_err());
    }

    #[test]
    fn carrier_limits() {
        assert!(matches!(
            Carrier::numbered(17),
            Err(Error::Capacity { size: 17, cap: 16 })
        ));
        assert!(Carrier::with_cap((0..40).map(|i| format!("p{i}")), 64).is_ok());
        assert!(matches!(Carrier::new(["a", "a"]), Err(Error::DuplicateLabel(_))));
        assert!(matches!(Carrier::new(["a b"]), Err(Error::InvalidLabel(_))));
        assert!(matches!(Carrier::new(Vec::<String>::new()), Err(Error::EmptyCarrier)));
    }

    #[test]
    fn subset_enumeration() {
        let s = Subset::from_indices([0, 2, 5]);
        let all: Vec<_> = s.subsets().collect();
        assert_eq!(all.len(), 8);
        assert!(all.iter().all(|t| t.is_subset(s)));
        assert_eq!(Subset::full(64).len(), 64);
    }

    #[test]
    fn filter_and_ideal_recognition() {
        let x = chain();
        for k in x.kernels() {
            let f = PFilter::principal(k).to_family(&x);
            assert!(f.is_filter());
            assert!(f.complements().is_ideal());
            assert_eq!(PFilter::from_family(&f), Some(PFilter::principal(k)));
        }
        assert!(!fam(&x, &[&["a"], &["b"]]).is_filter());
    }
}
