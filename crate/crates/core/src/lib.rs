//! Finite convergence spaces, their duals, cover-based completeness and
//! pavings.
//!
//! Subsets of a carrier are bitmasks ([`Subset`]), finite filters are
//! identified with their kernels ([`PFilter`]) and a [`Convergence`] assigns a
//! limit set to every kernel.
//!
//! ```
//! use convspace::{Carrier, Convergence, Subset};
//!
//! let x = Carrier::new(["a", "b"]).unwrap();
//! let sierpinski = Convergence::from_open_sets(&x, &[Subset::EMPTY, x.subset_of(&["b"]).unwrap(), x.full()]).unwrap();
//! assert!(sierpinski.is_topological());
//! assert_eq!(sierpinski.closed_sets().len(), 3);
//! ```

pub mod covers;
pub mod dual;
pub mod error;
pub mod families;
pub mod graph;
pub mod harness;
pub mod maps;
pub mod paving;
pub mod search;
pub mod space;

pub use covers::{CoverCollection, FilterCollection, Strength};
pub use dual::DualSpace;
pub use error::{Error, Result};
pub use families::{Carrier, PFilter, SetFamily, Subset};
pub use graph::{graph_of, InducedGraph};
pub use maps::SpaceMap;
pub use paving::{paving_number, PavingKind};
pub use space::{Convergence, Verdict, Witness};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/spaces.md")]
    pub mod ch01_spaces {}
    #[doc = include_str!("../../../book/src/covers.md")]
    pub mod ch02_covers {}
    #[doc = include_str!("../../../book/src/duals.md")]
    pub mod ch03_duals {}
    #[doc = include_str!("../../../book/src/graph.md")]
    pub mod ch04_graph {}
    #[doc = include_str!("../../../book/src/paving.md")]
    pub mod ch05_paving {}
    #[doc = include_str!("../../../book/src/duality.md")]
    pub mod ch06_duality {}
    #[doc = include_str!("../../../book/src/maps.md")]
    pub mod ch07_maps {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod ch08_cli {}
}
