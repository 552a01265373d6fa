//! The graph induced by a convergence and the dagger closure.
//!
//! `y → x` iff `x ∈ lim{y}`. Only point limits are read, so the graph of a
//! lazy dual is cheap to build.

use crate::dual::{AlexandroffPair, DualSpace};
use crate::families::Subset;
use crate::space::Convergence;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedGraph {
    forward: Vec<Subset>,
    backward: Vec<Subset>,
    roots: Subset,
    ends: Subset,
    not_left: Vec<Subset>,
    not_right: Vec<Subset>,
}

impl InducedGraph {
    pub fn new(c: &Convergence) -> InducedGraph {
        let forward = c.point_limits();
        let n = forward.len();
        let full = Subset::full(n);
        let backward: Vec<Subset> = (0..n)
            .map(|y| Subset::from_indices((0..n).filter(|&x| forward[x].contains(y))))
            .collect();
        let roots = Subset::from_indices((0..n).filter(|&r| forward[r] == full));
        let ends = forward.iter().fold(full, |acc, &f| acc.intersection(f));
        let not_left = (0..n)
            .map(|y| Subset::from_indices((0..n).filter(|&x| backward[y].intersection(backward[x]).is_subset(roots))))
            .collect();
        let not_right = (0..n)
            .map(|y| Subset::from_indices((0..n).filter(|&x| forward[y].intersection(forward[x]).is_subset(ends))))
            .collect();
        InducedGraph {
            forward,
            backward,
            roots,
            ends,
            not_left,
            not_right,
        }
    }

    pub fn size(&self) -> usize {
        self.forward.len()
    }

    /// `lim{y}`.
    pub fn forward(&self, y: usize) -> Subset {
        self.forward[y]
    }

    /// `{x : y ∈ lim{x}}`.
    pub fn backward(&self, y: usize) -> Subset {
        self.backward[y]
    }

    pub fn roots(&self) -> Subset {
        self.roots
    }

    pub fn ends(&self) -> Subset {
        self.ends
    }

    /// `cl†(∅) = ∅`. Implied by having no roots, but weaker.
    pub fn is_grounded(&self) -> bool {
        self.dagger_closure(Subset::EMPTY).is_empty()
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.size();
        (0..n).all(|y| self.forward[y] == self.backward[y])
    }

    /// `{x : N←(y) ∩ N←(x) ⊆ roots}`.
    pub fn not_left(&self, y: usize) -> Subset {
        self.not_left[y]
    }

    /// `{x : N→(y) ∩ N→(x) ⊆ ends}`.
    pub fn not_right(&self, y: usize) -> Subset {
        self.not_right[y]
    }

    /// `⋂_{a∈A} a^{¬←}`, the full carrier when `A` is empty.
    pub fn not_left_meet(&self, a: Subset) -> Subset {
        a.iter()
            .fold(Subset::full(self.size()), |acc, y| acc.intersection(self.not_left[y]))
    }

    /// `⋂_{c ∈ ⋂_{a∈A} a^{¬←}} c^{¬←}`. Empty intersections are the carrier.
    pub fn dagger_closure(&self, a: Subset) -> Subset {
        self.not_left_meet(self.not_left_meet(a))
    }
}

pub fn graph_of(c: &Convergence) -> InducedGraph {
    InducedGraph::new(c)
}

/// `e(cl*(rdc G))` for a set `G` of dual points.
pub fn dual_dagger_form(d: &DualSpace, g: Subset) -> Subset {
    let star = AlexandroffPair::new(d.base()).star_closure(d.rdc(g));
    d.erected(star)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::fixtures;

    #[test]
    fn roots_and_ends() {
        let c = fixtures::chain();
        let g = graph_of(&c);
        let x = c.carrier();
        assert_eq!(g.roots(), x.subset_of(&["a"]).unwrap());
        assert_eq!(g.ends(), x.subset_of(&["c"]).unwrap());
        assert!(!g.is_grounded());

        let d = DualSpace::new(&c).unwrap();
        let dg = graph_of(d.convergence());
        assert_eq!(dg.roots(), d.subset_of(&[Subset::EMPTY]).unwrap());
        assert_eq!(dg.ends(), d.subset_of(&[x.full()]).unwrap());

        let u = graph_of(&fixtures::ultra());
        assert_eq!(u.roots(), Subset::full(3));
        assert_eq!(u.ends(), Subset::full(3));
    }

    #[test]
    fn grounded_with_a_root() {
        // r converges everywhere, a and b each reach only r
        let x = crate::families::Carrier::new(["r", "a", "b"]).unwrap();
        let s = |l: &[&str]| x.subset_of(l).unwrap();
        let gens = [
            (s(&["r"]), x.full()),
            (s(&["a"]), s(&["a", "r"])),
            (s(&["b"]), s(&["b", "r"])),
        ];
        let g = graph_of(&Convergence::generate(&x, &gens).unwrap());
        assert_eq!(g.roots(), s(&["r"]));
        assert_eq!(g.dagger_closure(Subset::EMPTY), Subset::EMPTY);
        assert!(g.is_grounded());
    }

    #[test]
    fn not_left_examples() {
        let c = fixtures::chain();
        let g = graph_of(&c);
        let x = c.carrier();
        assert_eq!(g.not_left(1), x.subset_of(&["a"]).unwrap());
        assert_eq!(g.not_left(0), x.full());
    }

    #[test]
    fn dual_not_left_is_disjointness() {
        let c = fixtures::chain();
        let d = DualSpace::new(&c).unwrap();
        let g = graph_of(d.convergence());
        let m = d.closed_sets().len();
        for i in 0..m {
            let expect = Subset::from_indices((0..m).filter(|&j| !d.closed_set(i).meets(d.closed_set(j))));
            assert_eq!(g.not_left(i), expect);
        }
    }

    #[test]
    fn dagger_examples() {
        let c = fixtures::chain();
        let g = graph_of(&c);
        let x = c.carrier();
        assert_eq!(g.dagger_closure(Subset::EMPTY), x.subset_of(&["a"]).unwrap());
        assert_eq!(g.dagger_closure(x.subset_of(&["b"]).unwrap()), x.full());
        let u = graph_of(&fixtures::ultra());
        for a in Subset::full(3).subsets() {
            assert_eq!(u.dagger_closure(a), Subset::full(3));
        }
    }

    #[test]
    fn dual_dagger_examples() {
        let c = fixtures::chain();
        let x = c.carrier();
        let d = DualSpace::new(&c).unwrap();
        let dg = graph_of(d.convergence());
        let g = d.subset_of(&[x.subset_of(&["c"]).unwrap()]).unwrap();
        assert_eq!(dual_dagger_form(&d, g), d.carrier().full());
        let empty = d.subset_of(&[Subset::EMPTY]).unwrap();
        assert_eq!(dual_dagger_form(&d, empty), empty);
        for g in d.carrier().full().subsets() {
            assert_eq!(dual_dagger_form(&d, g), dg.dagger_closure(g));
        }
    }
}
