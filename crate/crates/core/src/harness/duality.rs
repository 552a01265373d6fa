//! Both duality equalities, checked at every closed target.
//!
//! For each closed set `A` of a *-regular base, the ultra completeness number
//! at `A` is compared with the paving number of the dual at the point `A`,
//! and the plain completeness number with the dagger pseudopaving number.
//! The two sides are computed by unrelated searches: filter collections on
//! the base against kernels of the lazily evaluated dual.

use crate::covers::{completeness_number, Strength};
use crate::dual::{regularity_predicates, DualSpace};
use crate::error::{Error, Result};
use crate::families::Subset;
use crate::paving::{paving_number, PavingKind};
use crate::space::Convergence;

/// Largest base carrier accepted.
pub const MAX_BASE: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityRow {
    pub target: Subset,
    pub compl: usize,
    pub ucompl: usize,
    /// Plain value when the empty collection is allowed.
    pub compl_with_empty: usize,
    pub ucompl_with_empty: usize,
    pub pave: usize,
    pub pave_dagger: usize,
    pub equal_ultra: bool,
    pub equal_plain: bool,
}

impl DualityRow {
    /// The empty collection already works here, so the two conventions
    /// disagree.
    pub fn convention_gap(&self) -> bool {
        self.compl_with_empty != self.compl || self.ucompl_with_empty != self.ucompl
    }
}

pub fn duality_check(c: &Convergence) -> Result<Vec<DualityRow>> {
    let n = c.carrier().size();
    if n > MAX_BASE {
        return Err(Error::SearchTooLarge(n));
    }
    if !regularity_predicates(c).star_regular {
        return Err(Error::NotStarRegular);
    }
    let dual = DualSpace::new(c)?;
    dual.closed_sets()
        .iter()
        .enumerate()
        .map(|(point, &a)| {
            let plain = completeness_number(c, a, Strength::Plain)?;
            let ultra = completeness_number(c, a, Strength::Ultra)?;
            let pave = paving_number(dual.convergence(), point, PavingKind::Pavement)?.value;
            let pave_dagger = paving_number(dual.convergence(), point, PavingKind::Dagger)?.value;
            Ok(DualityRow {
                target: a,
                compl: plain.value,
                ucompl: ultra.value,
                compl_with_empty: plain.value_with_empty,
                ucompl_with_empty: ultra.value_with_empty,
                pave,
                pave_dagger,
                equal_ultra: ultra.value == pave,
                equal_plain: plain.value == pave_dagger,
            })
        })
        .collect()
}
