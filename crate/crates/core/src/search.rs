//! Exact minimum set cover over small universes.
//!
//! Elements are bit positions of a `u64`; candidates are coverage masks. The
//! solver deepens the target size from a counting lower bound up to a greedy
//! upper bound and, at each size, walks index combinations in lexicographic
//! order. The first cover found is therefore optimal and lexicographically
//! least among optimal covers, independent of any scheduling.

/// Indices of a minimum subfamily of `candidates` whose union contains
/// `universe`, or `None` if no subfamily does. An empty universe is covered
/// by the empty selection.
pub fn min_cover(universe: u64, candidates: &[u64]) -> Option<Vec<usize>> {
    if universe == 0 {
        return Some(Vec::new());
    }
    let reach = candidates.iter().fold(0, |acc, c| acc | c);
    if universe & !reach != 0 {
        return None;
    }
    // suffix data for pruning
    let m = candidates.len();
    let mut suffix_union = vec![0u64; m + 1];
    let mut suffix_best = vec![0u32; m + 1];
    for i in (0..m).rev() {
        let c = candidates[i] & universe;
        suffix_union[i] = suffix_union[i + 1] | c;
        suffix_best[i] = suffix_best[i + 1].max(c.count_ones());
    }
    let upper = greedy(universe, candidates).len();
    let lower = (universe.count_ones()).div_ceil(suffix_best[0].max(1)) as usize;
    let mut picked = Vec::with_capacity(upper);
    for k in lower.max(1)..=upper {
        let search = Search {
            candidates,
            suffix_union: &suffix_union,
            suffix_best: &suffix_best,
            target: k,
        };
        if search.run(0, universe, &mut picked) {
            return Some(picked);
        }
        picked.clear();
    }
    // the greedy cover always succeeds at k = upper
    unreachable!("greedy bound is attainable")
}

/// Greedy cover: repeatedly take the candidate covering the most uncovered
/// elements, lowest index on ties. Assumes the universe is coverable.
pub fn greedy(universe: u64, candidates: &[u64]) -> Vec<usize> {
    let mut left = universe;
    let mut out = Vec::new();
    while left != 0 {
        let (best, gain) = candidates
            .iter()
            .enumerate()
            .map(|(i, c)| (i, (c & left).count_ones()))
            .fold((usize::MAX, 0), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
        if gain == 0 {
            break;
        }
        out.push(best);
        left &= !candidates[best];
    }
    out
}

struct Search<'a> {
    candidates: &'a [u64],
    suffix_union: &'a [u64],
    suffix_best: &'a [u32],
    target: usize,
}

impl Search<'_> {
    fn run(&self, start: usize, left: u64, picked: &mut Vec<usize>) -> bool {
        if left == 0 {
            return true;
        }
        let room = self.target - picked.len();
        if room == 0 {
            return false;
        }
        for i in start..self.candidates.len() {
            if left & !self.suffix_union[i] != 0 {
                return false;
            }
            if left.count_ones() > room as u32 * self.suffix_best[i] {
                return false;
            }
            let gain = self.candidates[i] & left;
            // at the optimum size no pick is redundant
            if gain == 0 {
                continue;
            }
            picked.push(i);
            if self.run(i + 1, left & !gain, picked) {
                return true;
            }
            picked.pop();
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute(universe: u64, candidates: &[u64]) -> Option<Vec<usize>> {
        let m = candidates.len();
        let mut best: Option<Vec<usize>> = None;
        for sel in 0u32..(1 << m) {
            let idx: Vec<usize> = (0..m).filter(|i| sel >> i & 1 == 1).collect();
            let cov = idx.iter().fold(0, |acc, &i| acc | candidates[i]);
            if universe & !cov != 0 {
                continue;
            }
            let better = match &best {
                None => true,
                Some(b) => idx.len() < b.len() || (idx.len() == b.len() && idx < *b),
            };
            if better {
                best = Some(idx);
            }
        }
        best
    }

    #[test]
    fn small_cases() {
        assert_eq!(min_cover(0, &[]), Some(vec![]));
        assert_eq!(min_cover(0b1, &[]), None);
        assert_eq!(min_cover(0b111, &[0b011, 0b110, 0b101]), Some(vec![0, 1]));
        assert_eq!(min_cover(0b111, &[0b001, 0b111]), Some(vec![1]));
        // greedy grabs the big middle set and needs three; two suffice
        let cands = [0b000111, 0b111000, 0b011110];
        assert_eq!(greedy(0b111111, &cands), vec![2, 0, 1]);
        assert_eq!(min_cover(0b111111, &cands), Some(vec![0, 1]));
    }

    proptest! {
        #[test]
        fn matches_brute_force(
            universe in 0u64..256,
            candidates in proptest::collection::vec(0u64..256, 0..9),
        ) {
            prop_assert_eq!(min_cover(universe, &candidates), brute(universe, &candidates));
        }
    }
}
