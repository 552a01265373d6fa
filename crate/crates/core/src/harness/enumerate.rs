//! Exhaustive enumeration of lawful convergences on tiny carriers.
//!
//! Two independent orders produce the same set of limit tables: extension by
//! kernel size, choosing each limit inside the bound the axioms leave, and
//! brute force over every table followed by an axiom filter.

use crate::error::{Error, Result};
use crate::families::{Carrier, Subset};
use crate::space::Convergence;

/// Largest carrier the enumerators accept.
pub const MAX_POINTS: usize = 3;

/// A limit table indexed by kernel mask; entry 0 is unused.
pub type Table = Vec<Subset>;

fn guard(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::EmptyCarrier);
    }
    if n > MAX_POINTS {
        return Err(Error::SearchTooLarge(n));
    }
    Ok(())
}

/// Tables built kernel by kernel in order of size.
pub fn tables_by_extension(n: usize) -> Result<Vec<Table>> {
    guard(n)?;
    let full = Subset::full(n);
    let mut kernels: Vec<Subset> = full.subsets().skip(1).collect();
    kernels.sort_by_key(|k| (k.len(), k.0));
    let mut out = Vec::new();
    let mut table = vec![Subset::EMPTY; 1 << n];
    extend(&kernels, full, &mut table, &mut out);
    Ok(out)
}

fn extend(rest: &[Subset], full: Subset, table: &mut Table, out: &mut Vec<Table>) {
    let Some((&k, tail)) = rest.split_first() else {
        out.push(table.clone());
        return;
    };
    let bound = if k.len() == 1 {
        full
    } else {
        k.iter()
            .fold(full, |acc, a| acc.intersection(table[k.remove(a).0 as usize]))
    };
    for lim in bound.subsets() {
        if k.len() == 1 && !lim.meets(k) {
            continue;
        }
        table[k.0 as usize] = lim;
        extend(tail, full, table, out);
    }
}

/// Whether a raw table satisfies the axioms.
pub fn table_is_lawful(n: usize, table: &[Subset]) -> bool {
    let full = Subset::full(n);
    full.subsets().skip(1).all(|k| {
        if k.len() == 1 {
            return table[k.0 as usize].meets(k);
        }
        k.iter()
            .all(|a| table[k.0 as usize].is_subset(table[k.remove(a).0 as usize]))
    })
}

/// Every table over every kernel, filtered by the axioms.
pub fn tables_by_filtering(n: usize) -> Result<Vec<Table>> {
    guard(n)?;
    let kernels = (1usize << n) - 1;
    let choices = 1u64 << n;
    let total = choices.pow(kernels as u32);
    let mut out = Vec::new();
    let mut table = vec![Subset::EMPTY; 1 << n];
    for code in 0..total {
        let mut c = code;
        for slot in table.iter_mut().skip(1) {
            *slot = Subset(c % choices);
            c /= choices;
        }
        if table_is_lawful(n, &table) {
            out.push(table.clone());
        }
    }
    Ok(out)
}

/// Every lawful convergence on `n` numbered points.
pub fn all_convergences(n: usize) -> Result<Vec<Convergence>> {
    let carrier = Carrier::numbered(n)?;
    tables_by_extension(n)?
        .into_iter()
        .map(|t| Convergence::tabulate_fn(&carrier, |k| t[k.0 as usize]))
        .collect()
}
