//! Reference spaces used throughout the docs and tests.

use crate::families::{Carrier, Subset};
use crate::space::Convergence;

/// `{a,b,c}` with open sets `∅, {a}, {a,b}, {a,b,c}`.
pub fn chain() -> Convergence {
    let x = Carrier::new(["a", "b", "c"]).expect("labels");
    let opens = [
        Subset::EMPTY,
        Subset::from_indices([0]),
        Subset::from_indices([0, 1]),
        x.full(),
    ];
    Convergence::from_open_sets(&x, &opens).expect("chain topology")
}

/// `{1,2,3}`, every point filter converges to every point, nothing else converges.
pub fn ultra() -> Convergence {
    let x = Carrier::numbered(3).expect("labels");
    let full = x.full();
    Convergence::from_fn(&x, |k| if k.len() == 1 { full } else { Subset::EMPTY }).expect("ultra")
}

/// `{1,2,3}`, kernels of size at most two converge everywhere, the whole
/// carrier converges nowhere.
pub fn overlap() -> Convergence {
    let x = Carrier::numbered(3).expect("labels");
    let full = x.full();
    Convergence::from_fn(&x, |k| if k.len() <= 2 { full } else { Subset::EMPTY }).expect("overlap")
}

/// Discrete topology on `{p,q}`.
pub fn disc2() -> Convergence {
    let x = Carrier::new(["p", "q"]).expect("labels");
    Convergence::generate(&x, &[]).expect("discrete")
}

/// Antidiscrete topology on `n` numbered points.
pub fn antidiscrete(n: usize) -> Convergence {
    let x = Carrier::numbered(n).expect("labels");
    let full = x.full();
    Convergence::from_fn(&x, |_| full).expect("antidiscrete")
}

/// Discrete topology on `n` numbered points.
pub fn discrete(n: usize) -> Convergence {
    let x = Carrier::numbered(n).expect("labels");
    Convergence::generate(&x, &[]).expect("discrete")
}
