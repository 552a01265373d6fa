//! Maps between finite convergence spaces.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::families::{PFilter, SetFamily, Subset};
use crate::space::{Convergence, LimitRule, RuleKind, Verdict, Witness};

/// A total function between the carriers of two convergences.
#[derive(Clone, Debug)]
pub struct SpaceMap {
    source: Convergence,
    target: Convergence,
    image: Vec<usize>,
}

impl SpaceMap {
    pub fn new(source: &Convergence, target: &Convergence, image: Vec<usize>) -> Result<SpaceMap> {
        if image.len() != source.carrier().size() {
            return Err(Error::NotTotal(
                source
                    .carrier()
                    .label(image.len().min(source.carrier().size() - 1))
                    .to_string(),
            ));
        }
        if let Some(&bad) = image.iter().find(|&&y| y >= target.carrier().size()) {
            return Err(Error::UnknownLabel(bad.to_string()));
        }
        Ok(SpaceMap {
            source: source.clone(),
            target: target.clone(),
            image,
        })
    }

    /// From `(source label, target label)` pairs; every source point needs
    /// exactly one image.
    pub fn from_labels(source: &Convergence, target: &Convergence, pairs: &[(&str, &str)]) -> Result<SpaceMap> {
        let sx = source.carrier();
        let mut image = vec![None; sx.size()];
        for &(a, b) in pairs {
            let i = sx.index_of(a)?;
            let j = target.carrier().index_of(b)?;
            if image[i].replace(j).is_some_and(|old| old != j) {
                return Err(Error::Syntax {
                    line: 0,
                    message: format!("point `{a}` mapped twice"),
                });
            }
        }
        let image = image
            .into_iter()
            .enumerate()
            .map(|(i, y)| y.ok_or_else(|| Error::NotTotal(sx.label(i).to_string())))
            .collect::<Result<Vec<_>>>()?;
        SpaceMap::new(source, target, image)
    }

    pub fn source(&self) -> &Convergence {
        &self.source
    }

    pub fn target(&self) -> &Convergence {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.image
    }

    pub fn apply(&self, a: Subset) -> Subset {
        a.iter().fold(Subset::EMPTY, |acc, x| acc.insert(self.image[x]))
    }

    pub fn preimage(&self, b: Subset) -> Subset {
        Subset::from_indices((0..self.image.len()).filter(|&x| b.contains(self.image[x])))
    }

    pub fn is_onto(&self) -> bool {
        self.apply(self.source.carrier().full()) == self.target.carrier().full()
    }

    /// `f[F]`: the kernel is the direct image.
    pub fn image_filter(&self, f: PFilter) -> PFilter {
        PFilter::principal(self.apply(f.kernel))
    }

    /// `f(lim A) ⊆ lim f(A)` for every kernel `A`.
    pub fn is_continuous(&self) -> Verdict {
        Verdict::from_failure(
            self.source
                .carrier()
                .kernels()
                .find(|&a| {
                    !self
                        .apply(self.source.limit(a))
                        .is_subset(self.target.limit(self.apply(a)))
                })
                .map(Witness::Kernel),
        )
    }

    /// The finest convergence on the target carrier making the map
    /// continuous from the source: `lim B = ⋃ f(lim T)` over the transversals
    /// `T` of the fibres over `B`. Requires the map to be onto.
    pub fn final_convergence(&self) -> Result<Convergence> {
        if !self.is_onto() {
            return Err(Error::NotOnto);
        }
        let tc = self.target.carrier();
        let fibres = (0..tc.size()).map(|y| self.preimage(Subset::singleton(y))).collect();
        let rule = FinalRule {
            source: self.source.clone(),
            image: self.image.clone(),
            fibres,
        };
        Ok(Convergence::from_rule(tc, RuleKind::Final, Arc::new(rule)))
    }

    /// The coarsest convergence on the source carrier making the map
    /// continuous into the target: `lim A = f⁻(lim f(A))`.
    pub fn initial_convergence(&self) -> Convergence {
        let rule = InitialRule {
            target: self.target.clone(),
            image: self.image.clone(),
        };
        Convergence::from_rule(self.source.carrier(), RuleKind::Initial, Arc::new(rule))
    }

    pub fn map_class(&self) -> Result<MapClass> {
        if !self.is_continuous().holds() {
            return Err(Error::NotContinuous);
        }
        let fin = self.final_convergence()?;
        Ok(MapClass {
            almost_open: self.target.finer_than(&fin)?,
            biquotient: self.target.finer_than(&fin.reflector_s())?,
            quotient: self.target.finer_than(&fin.reflector_t())?,
        })
    }

    /// `{f(P) : P ∈ 𝒫}` on the target carrier.
    pub fn cover_image(&self, p: &SetFamily) -> SetFamily {
        SetFamily::new(self.target.carrier(), p.members().map(|&m| self.apply(m)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MapClass {
    pub almost_open: bool,
    pub biquotient: bool,
    pub quotient: bool,
}

struct FinalRule {
    source: Convergence,
    image: Vec<usize>,
    fibres: Vec<Subset>,
}

impl FinalRule {
    fn transversals(&self, rest: &[usize], cur: Subset, acc: &mut Subset) {
        match rest.split_first() {
            None => {
                let lim = self.source.limit(cur);
                *acc = lim.iter().fold(*acc, |s, x| s.insert(self.image[x]));
            }
            Some((&y, tail)) => {
                for x in self.fibres[y].iter() {
                    self.transversals(tail, cur.insert(x), acc);
                }
            }
        }
    }
}

impl LimitRule for FinalRule {
    fn limit(&self, kernel: Subset) -> Subset {
        let points: Vec<usize> = kernel.iter().collect();
        let mut acc = Subset::EMPTY;
        self.transversals(&points, Subset::EMPTY, &mut acc);
        acc
    }
}

struct InitialRule {
    target: Convergence,
    image: Vec<usize>,
}

impl LimitRule for InitialRule {
    fn limit(&self, kernel: Subset) -> Subset {
        let fa = kernel.iter().fold(Subset::EMPTY, |s, x| s.insert(self.image[x]));
        let lim = self.target.limit(fa);
        Subset::from_indices((0..self.image.len()).filter(|&x| lim.contains(self.image[x])))
    }
}

/// The identity map of a convergence onto another structure on the same
/// carrier.
pub fn identity(source: &Convergence, target: &Convergence) -> Result<SpaceMap> {
    if source.carrier() != target.carrier() {
        return Err(Error::CarrierMismatch);
    }
    SpaceMap::new(source, target, (0..source.carrier().size()).collect())
}

/// Every function from an `m`-point carrier onto an `n`-point carrier, in
/// lexicographic order of image vectors.
pub fn onto_functions(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0; m];
    loop {
        let hit = cur.iter().fold(Subset::EMPTY, |s, &y| s.insert(y));
        if hit.len() == n {
            out.push(cur.clone());
        }
        let mut i = m;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < n {
                break;
            }
            cur[i] = 0;
        }
    }
}
