//! The property suite.
//!
//! Every property runs over a pool of instances: all lawful convergences for
//! carriers of at most three points, and seeded random ones above that. Each
//! random instance draws its seed from `(seed, size, index)`, instances are
//! checked in parallel and tallies are merged in pool order, so a report is a
//! function of the parameters alone.
//!
//! Properties marked exploratory look for counterexamples to statements that
//! are not claimed to hold; what they find is reported, never counted as a
//! failure.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use rayon::prelude::*;

use crate::covers::{
    completeness_number, completeness_number_exhaustive, cover_criterion, ideal_transforms, is_cauchy,
    is_cocomplete_collection, is_complete_collection, is_cover, CauchyKind, CoverCollection, CoverKind,
    FilterCollection, Strength,
};
use crate::dual::{regularity_predicates, AlexandroffPair, DualSpace};
use crate::error::{Error, Result};
use crate::families::{Carrier, PFilter, SetFamily, Subset};
use crate::graph::{dual_dagger_form, graph_of};
use crate::harness::duality::{duality_check, MAX_BASE};
use crate::harness::enumerate::{self, tables_by_extension, tables_by_filtering};
use crate::harness::fixtures;
use crate::harness::random::{random_family, random_space, random_topology, sub_seed};
use crate::maps::{onto_functions, SpaceMap};
use crate::paving::{is_pavement, paving_number, paving_number_exhaustive, pseudopavement_conditions, PavingKind};
use crate::space::{union_structure, Convergence};

const MAX_TRANSCRIPTS: usize = 3;
const DENSITIES: [f64; 5] = [0.2, 0.4, 0.6, 0.8, 1.0];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteParams {
    pub n_min: usize,
    pub n_max: usize,
    /// Random instances per carrier size above three points.
    pub trials: usize,
    pub seed: u64,
    /// Property names to run; all when `None`.
    pub props: Option<Vec<String>>,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams {
            n_min: 1,
            n_max: 5,
            trials: 250,
            seed: 0x5eed,
            props: None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PropertyReport {
    pub name: &'static str,
    pub exploratory: bool,
    /// Instances on which at least one check ran.
    pub instances: usize,
    pub checks: u64,
    /// Failed checks, or findings for an exploratory property.
    pub failures: u64,
    pub transcripts: Vec<String>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.exploratory || self.failures == 0
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub params: SuiteParams,
    pub properties: Vec<PropertyReport>,
    pub wall_time: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(PropertyReport::passed)
    }

    pub fn property(&self, name: &str) -> Option<&PropertyReport> {
        self.properties.iter().find(|p| p.name == name)
    }

    /// `key=value` lines in a fixed order. Wall time is left out so equal
    /// parameters give byte-identical output.
    pub fn render(&self) -> String {
        let p = &self.params;
        let mut out = String::new();
        let _ = writeln!(out, "suite.seed={}", p.seed);
        let _ = writeln!(out, "suite.n={}..{}", p.n_min, p.n_max);
        let _ = writeln!(out, "suite.trials={}", p.trials);
        for r in &self.properties {
            let key = format!("prop[{}]", r.name);
            let status = match (r.exploratory, r.failures) {
                (true, 0) => "explored",
                (true, _) => "found",
                (false, 0) => "pass",
                (false, _) => "fail",
            };
            let _ = writeln!(out, "{key}.status={status}");
            let _ = writeln!(out, "{key}.instances={}", r.instances);
            let _ = writeln!(out, "{key}.checks={}", r.checks);
            let label = if r.exploratory { "findings" } else { "failures" };
            let _ = writeln!(out, "{key}.{label}={}", r.failures);
            for (i, t) in r.transcripts.iter().enumerate() {
                let _ = writeln!(out, "{key}.transcript[{i}]={t}");
            }
        }
        let _ = writeln!(out, "suite.status={}", if self.passed() { "pass" } else { "fail" });
        out
    }
}

/// One space in the pool.
#[derive(Clone, Debug)]
pub struct Instance {
    pub id: String,
    pub conv: Convergence,
    pub seed: u64,
    pub exhaustive: bool,
}

impl Instance {
    fn n(&self) -> usize {
        self.conv.carrier().size()
    }

    fn fmt(&self, s: Subset) -> String {
        self.conv.carrier().format(s)
    }
}

#[derive(Debug, Default)]
struct Tally {
    checks: u64,
    failures: u64,
    transcripts: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.transcripts.len() < MAX_TRANSCRIPTS {
                self.transcripts.push(what());
            }
        }
    }

    fn absorb(&mut self, other: Tally, report: &mut PropertyReport) {
        if other.checks > 0 {
            report.instances += 1;
        }
        self.checks += other.checks;
        self.failures += other.failures;
        for t in other.transcripts {
            if self.transcripts.len() < MAX_TRANSCRIPTS {
                self.transcripts.push(t);
            }
        }
    }
}

type Check = fn(&Instance, &Shared) -> Tally;

struct Property {
    name: &'static str,
    exploratory: bool,
    pool: Pool,
    run: Check,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Pool {
    All,
    StarRegular,
}

const PROPERTIES: &[Property] = &[
    Property {
        name: "axioms",
        exploratory: false,
        pool: Pool::All,
        run: axioms,
    },
    Property {
        name: "adherence",
        exploratory: false,
        pool: Pool::All,
        run: adherence,
    },
    Property {
        name: "reflectors",
        exploratory: false,
        pool: Pool::All,
        run: reflectors,
    },
    Property {
        name: "finite-compactness",
        exploratory: false,
        pool: Pool::All,
        run: finite_compactness,
    },
    Property {
        name: "cover-criterion",
        exploratory: false,
        pool: Pool::All,
        run: cover_criterion_prop,
    },
    Property {
        name: "cauchy-transfer",
        exploratory: false,
        pool: Pool::All,
        run: cauchy_transfer,
    },
    Property {
        name: "completeness",
        exploratory: false,
        pool: Pool::All,
        run: completeness,
    },
    Property {
        name: "rdc-e",
        exploratory: false,
        pool: Pool::All,
        run: rdc_e,
    },
    Property {
        name: "regularity",
        exploratory: false,
        pool: Pool::All,
        run: regularity,
    },
    Property {
        name: "dagger-closure",
        exploratory: false,
        pool: Pool::All,
        run: dagger_closure,
    },
    Property {
        name: "dagger-roots",
        exploratory: false,
        pool: Pool::All,
        run: dagger_roots,
    },
    Property {
        name: "dual-dagger",
        exploratory: false,
        pool: Pool::All,
        run: dual_dagger,
    },
    Property {
        name: "paving-solver",
        exploratory: false,
        pool: Pool::All,
        run: paving_solver,
    },
    Property {
        name: "pseudopavement",
        exploratory: false,
        pool: Pool::All,
        run: pseudopavement,
    },
    Property {
        name: "saturation",
        exploratory: false,
        pool: Pool::All,
        run: saturation,
    },
    Property {
        name: "duality-ultra",
        exploratory: false,
        pool: Pool::StarRegular,
        run: duality_ultra,
    },
    Property {
        name: "duality-plain",
        exploratory: false,
        pool: Pool::StarRegular,
        run: duality_plain,
    },
    Property {
        name: "maps",
        exploratory: false,
        pool: Pool::All,
        run: maps_prop,
    },
    Property {
        name: "cover-image",
        exploratory: false,
        pool: Pool::All,
        run: cover_image,
    },
    Property {
        name: "probe-dagger-additivity",
        exploratory: true,
        pool: Pool::All,
        run: probe_dagger_additivity,
    },
    Property {
        name: "probe-nonideal-cover-image",
        exploratory: true,
        pool: Pool::All,
        run: probe_nonideal_cover_image,
    },
    Property {
        name: "probe-biquotient-relative",
        exploratory: true,
        pool: Pool::All,
        run: probe_biquotient_relative,
    },
];

/// Names of every suite property, in report order.
pub fn property_names() -> Vec<&'static str> {
    PROPERTIES.iter().map(|p| p.name).collect()
}

/// Data shared by all instances of a run.
struct Shared {
    /// Limit tables of every lawful structure on one and two points.
    small_tables: Vec<Vec<Vec<Subset>>>,
}

impl Shared {
    fn new() -> Result<Shared> {
        Ok(Shared {
            small_tables: vec![Vec::new(), tables_by_extension(1)?, tables_by_extension(2)?],
        })
    }
}

fn random_instance(seed: u64, n: usize, index: usize) -> Result<Instance> {
    let s = sub_seed(seed, ((n as u64) << 32) | index as u64);
    let d = DENSITIES[index % DENSITIES.len()];
    Ok(Instance {
        id: format!("n{n}/r{index}/d{d}"),
        conv: random_space(s, n, d)?,
        seed: s,
        exhaustive: false,
    })
}

fn build_pool(params: &SuiteParams, kind: Pool) -> Result<Vec<Instance>> {
    let mut pool = Vec::new();
    for n in params.n_min.max(1)..=params.n_max {
        if n <= enumerate::MAX_POINTS {
            for (i, conv) in enumerate::all_convergences(n)?.into_iter().enumerate() {
                if kind == Pool::StarRegular && !regularity_predicates(&conv).star_regular {
                    continue;
                }
                pool.push(Instance {
                    id: format!("n{n}/e{i}"),
                    conv,
                    seed: sub_seed(params.seed, ((n as u64) << 32) | i as u64),
                    exhaustive: true,
                });
            }
        } else if kind == Pool::All {
            for i in 0..params.trials {
                pool.push(random_instance(params.seed, n, i)?);
            }
        } else if n <= MAX_BASE {
            // on a finite carrier the *-regular spaces are the topologies
            for i in 0..params.trials {
                let s = sub_seed(params.seed, ((n as u64) << 32) | i as u64);
                let d = DENSITIES[i % DENSITIES.len()] * 0.5;
                pool.push(Instance {
                    id: format!("n{n}/t{i}/d{d}"),
                    conv: random_topology(s, n, d)?,
                    seed: s,
                    exhaustive: false,
                });
            }
        }
    }
    Ok(pool)
}

pub fn run_suite(params: &SuiteParams) -> Result<SuiteReport> {
    let start = Instant::now();
    if params.n_min > params.n_max || params.n_max > crate::families::DEFAULT_CAP {
        return Err(Error::Capacity {
            size: params.n_max,
            cap: crate::families::DEFAULT_CAP,
        });
    }
    let selected: Vec<&Property> = match &params.props {
        None => PROPERTIES.iter().collect(),
        Some(names) => {
            for n in names {
                if !PROPERTIES.iter().any(|p| p.name == n) {
                    return Err(Error::UnknownLabel(n.clone()));
                }
            }
            PROPERTIES
                .iter()
                .filter(|p| names.iter().any(|n| n == p.name))
                .collect()
        }
    };
    let shared = Shared::new()?;
    let mut pools: Vec<(Pool, Vec<Instance>)> = Vec::new();
    for kind in [Pool::All, Pool::StarRegular] {
        if selected.iter().any(|p| p.pool == kind) {
            pools.push((kind, build_pool(params, kind)?));
        }
    }
    let mut properties = Vec::new();
    for prop in selected {
        let pool = &pools.iter().find(|(k, _)| *k == prop.pool).expect("pool built").1;
        let tallies: Vec<Tally> = pool.par_iter().map(|inst| (prop.run)(inst, &shared)).collect();
        let mut report = PropertyReport {
            name: prop.name,
            exploratory: prop.exploratory,
            ..Default::default()
        };
        let mut total = Tally::default();
        if prop.name == "axioms" {
            total.absorb(enumeration_orders(params)?, &mut report);
        }
        for t in tallies {
            total.absorb(t, &mut report);
        }
        report.checks = total.checks;
        report.failures = total.failures;
        report.transcripts = total.transcripts;
        properties.push(report);
    }
    Ok(SuiteReport {
        params: params.clone(),
        properties,
        wall_time: start.elapsed(),
    })
}

fn enumeration_orders(params: &SuiteParams) -> Result<Tally> {
    let mut t = Tally::default();
    for n in params.n_min.max(1)..=params.n_max.min(enumerate::MAX_POINTS) {
        let mut a = tables_by_extension(n)?;
        let mut b = tables_by_filtering(n)?;
        a.sort();
        b.sort();
        t.check(a == b, || {
            format!("n{n}: {} tables by extension, {} by filtering", a.len(), b.len())
        });
    }
    Ok(t)
}

fn rng_for(inst: &Instance, salt: u64) -> SplitMix64 {
    SplitMix64::seed_from_u64(sub_seed(inst.seed, salt))
}

// ---------------------------------------------------------------- space

fn axioms(inst: &Instance, _: &Shared) -> Tally {
    let mut t = Tally::default();
    let v = inst.conv.validate();
    t.check(v.is_empty(), || {
        format!("{}: {}", inst.id, v[0].describe(inst.conv.carrier()))
    });
    t
}

fn adherence(inst: &Instance, _: &Shared) -> Tally {
    let c = &inst.conv;
    let x = c.carrier();
    let mut t = Tally::default();
    for k in x.kernels() {
        let f = PFilter::principal(k);
        let point_form = c.adherence(f);
        let mesh_form = x
            .kernels()
            .filter(|h| h.meets(k))
            .fold(Subset::EMPTY, |acc, h| acc.union(c.limit(h)));
        t.check(point_form == mesh_form, || {
            format!(
                "{}: kernel {} gives {} and {}",
                inst.id,
                inst.fmt(k),
                inst.fmt(point_form),
                inst.fmt(mesh_form)
            )
        });
        if x.size() <= 4 {
            let family_form = c.adherence_of_family(&f.to_family(x));
            t.check(family_form == point_form, || {
                format!("{}: family form differs at {}", inst.id, inst.fmt(k))
            });
        }
    }
    t.check(c.adherence(PFilter::DEGENERATE).is_empty(), || {
        format!("{}: degenerate adheres", inst.id)
    });
    t
}

fn reflectors(inst: &Instance, _: &Shared) -> Tally {
    let c = &inst.conv;
    let x = c.carrier();
    let n = x.size();
    let mut t = Tally::default();
    let s = c.reflector_s().tabulate().expect("within cap");
    let tt = c.reflector_t().tabulate().expect("within cap");
    let finer = |a: &Convergence, b: &Convergence| a.finer_than(b).unwrap_or(false);
    t.check(finer(c, &s), || format!("{}: S not coarser", inst.id));
    t.check(finer(c, &tt), || format!("{}: T not coarser", inst.id));
    t.check(finer(&s, &tt), || format!("{}: S not finer than T", inst.id));
    t.check(s.reflector_s().same_limits(&s), || {
        format!("{}: S not idempotent", inst.id)
    });
    t.check(tt.reflector_t().same_limits(&tt), || {
        format!("{}: T not idempotent", inst.id)
    });
    t.check(s.is_pseudotopology(), || format!("{}: S not a pseudotopology", inst.id));
    t.check(tt.is_topological(), || format!("{}: T not topological", inst.id));
    if c.is_topological() {
        t.check(tt.same_limits(c), || format!("{}: T moves a topology", inst.id));
    }
    if c.is_pseudotopology() {
        t.check(s.same_limits(c), || format!("{}: S moves a pseudotopology", inst.id));
    }
    let partner = random_space(inst.seed, n, 0.5).expect("within cap");
    let partner = Convergence::tabulate_fn(x, |k| partner.limit(k)).expect("within cap");
    let coarser = union_structure(c, &partner).expect("same carrier");
    t.check(finer(&s, &coarser.reflector_s()), || {
        format!("{}: S not monotone", inst.id)
    });
    t.check(finer(&tt, &coarser.reflector_t()), || {
        format!("{}: T not monotone", inst.id)
    });
    for k in x.full().subsets() {
        let f = PFilter::principal(k);
        t.check(c.adherence(f) == s.adherence(f), || {
            format!("{}: adherence changes under S at {}", inst.id, inst.fmt(k))
        });
    }
    t.check(c.closed_sets() == tt.closed_sets(), || {
        format!("{}: T changes closed sets", inst.id)
    });
    t
}

fn finite_compactness(inst: &Instance, _: &Shared) -> Tally {
    let c = &inst.conv;
    let x = c.carrier();
    let mut t = Tally::default();
    let parts = c.compact_parts();
    t.check(parts.compactoids.len() == 1 << x.size(), || {
        format!("{}: a subset is not compactoid", inst.id)
    });
    t.check(parts.compacts.contains(x.full()), || {
        format!("{}: carrier not compact", inst.id)
    });
    t.check(parts.cocompactoid.is_degenerate(), || {
        format!("{}: cocompactoid filter proper", inst.id)
    });
    t.check(parts.locally_compactoid, || {
        format!("{}: not locally compactoid", inst.id)
    });
    for st in [Strength::Plain, Strength::Ultra] {
        let r = completeness_number(c, Subset::EMPTY, st).expect("empty set is closed");
        t.check(r.value_with_empty == 0, || {
            format!("{}: {st:?} number at {{}} is {}", inst.id, r.value_with_empty)
        });
        let whole = CoverCollection(vec![SetFamily::new(x, [x.full()])]);
        let complete = is_complete_collection(c, &whole, st).map(|v| v.holds());
        t.check(complete == Ok(true), || {
            format!("{}: {{X}} not {st:?}-complete", inst.id)
        });
    }
    t
}

// ---------------------------------------------------------------- covers

/// Candidate families: every family for tiny carriers, random ones above.
fn candidate_families(inst: &Instance, all_up_to: usize, random: usize) -> Vec<SetFamily> {
    let c = &inst.conv;
    let x = c.carrier();
    let subsets: Vec<Subset> = x.full().subsets().collect();
    if subsets.len() <= all_up_to {
        return (0u64..1 << subsets.len())
            .map(|sel| SetFamily::new(x, Subset(sel).iter().map(|i| subsets[i])))
            .collect();
    }
    let mut r = rng_for(inst, 1);
    (0..random).map(|i| random_family(&mut r, x, 1 + i % 3)).collect()
}

/// Adds one member holding every convergent kernel the family misses.
fn repair_cover(c: &Convergence, p: &SetFamily) -> SetFamily {
    let missing = c
        .carrier()
        .kernels()
        .filter(|&k| !c.limit(k).is_empty() && !p.members().any(|&m| k.is_subset(m)))
        .fold(Subset::EMPTY, |acc, k| acc.union(k));
    if missing.is_empty() {
        p.clone()
    } else {
        SetFamily::new(c.carrier(), p.members().copied().chain([missing]))
    }
}

fn cover_criterion_prop(inst: &Instance, _: &Shared) -> Tally {
    let c = &inst.conv;
    let mut t = Tally::default();
    for p in candidate_families(inst, 8, 24) {
        let direct = is_cover(c, &p, CoverKind::Cover).holds();
        t.check(cover_criterion(c, &p) == direct, || {
            format!("{}: criterion disagrees on {p}", inst.id)
        });
        if direct {
            t.check(is_cover(c, &p, CoverKind::Pseudocover).holds(), || {
                format!("{}: cover {p} is no pseudocover", inst.id)
            });
        }
    }
    t
}

/// Families of at most three members, all of them on tiny carriers.
fn small_families(inst: &Instance) -> Vec<SetFamily> {
    let c = &inst.conv;
    let x = c.carrier();
    if x.size() <= 3 {
        let subsets: Vec<Subset> = x.full().subsets().collect();
        let mut out = Vec::new();
        for size in 1..=3 {
            crate::covers::for_each_combination(subsets.len(), size, &mut |idx| {
                out.push(SetFamily::new(x, idx.iter().map(|&i| subsets[i])));
                false
            });
        }
        return out;
    }
    let mut r = rng_for(inst, 2);
    (0..6)
        .map(|i| repair_cover(c, &random_family(&mut r, x, 1 + i % 3)))
        .collect()
}

fn kernel_mask(c: &Convergence, pred: impl Fn(Subset) -> bool) -> u64 {
    c.carrier()
        .kernels()
        .filter(|&k| pred(k))
        .fold(0, |acc, k| acc | 1 << k.0)
}

fn cauchy_transfer(inst: &Instance, _: &Shared) -> Tally {
    let c = &inst.conv;
    let x = c.carrier();
    let mut t = Tally::default();
    struct Fam {
        family: SetFamily,
        filter_form: PFilter,
        cauchy: u64,
        pre: u64,
        cauchy_ud: u64,
        pre_ud: u64,
    }
    let mask =
        |pp: &CoverCollection, kind| kernel_mask(c, |k| is_cauchy(PFilter::principal(k), pp, kind).expect("proper"));
    let fams: Vec<Fam> = small_families(inst)
        .into_iter()
        .filter(|p| is_cover(c, p, CoverKind::Cover).holds())
        .map(|p| {
            let single = CoverCollection(vec![p.clone()]);
            let tr = ideal_transforms(&single);
            Fam {
                cauchy: mask(&single, CauchyKind::Cauchy),
                pre: mask(&single, CauchyKind::PreCauchy),
                cauchy_ud: mask(&tr.union_down, CauchyKind::Cauchy),
                pre_ud: mask(&tr.union_down, CauchyKind::PreCauchy),
                filter_form: tr.filter_form[0],
                family: p,
            }
        })
        .collect();
    let nonadherent = kernel_mask(c, |k| c.adherence(PFilter::principal(k)).is_empty());
    let mut counter = 0usize;
    for i in 0..fams.len() {
        for j in i..fams.len() {
            let pick: &[&Fam] = if i == j { &[&fams[i]] } else { &[&fams[i], &fams[j]] };
            let and = |f: fn(&Fam) -> u64| pick.iter().fold(u64::MAX, |acc, p| acc & f(p));
            let (cauchy, pre) = (and(|f| f.cauchy), and(|f| f.pre));
            let (cauchy_ud, pre_ud) = (and(|f| f.cauchy_ud), and(|f| f.pre_ud));
            let names = || {
                pick.iter()
                    .map(|f| f.family.to_string())
                    .collect::<Vec<_>>()
                    .join(" ; ")
            };
            t.check(pre == pre_ud, || {
                format!("{}: preCauchy changes under closure for {}", inst.id, names())
            });
            t.check(cauchy & !cauchy_ud == 0, || {
                format!("{}: Cauchy lost under closure for {}", inst.id, names())
            });
            let complete = cauchy & nonadherent == 0;
            let ultra = pre & nonadherent == 0;
            t.check(complete == (cauchy_ud & nonadherent == 0), || {
                format!("{}: completeness differs for {}", inst.id, names())
            });
            t.check(ultra == (pre_ud & nonadherent == 0), || {
                format!("{}: ultracompleteness differs for {}", inst.id, names())
            });
            let d = FilterCollection::new(pick.iter().map(|f| f.filter_form).collect()).expect("nonempty");
            for (st, expect) in [(Strength::Plain, complete), (Strength::Ultra, ultra)] {
                let co = is_cocomplete_collection(c, &d, Subset::EMPTY, st).map(|v| v.holds());
                t.check(co == Ok(expect), || {
                    format!("{}: {st:?} cocompleteness of filter forms for {}", inst.id, names())
                });
            }
            counter += 1;
            if counter % 61 == 1 {
                let pp = CoverCollection(pick.iter().map(|f| f.family.clone()).collect());
                for (st, expect) in [(Strength::Plain, complete), (Strength::Ultra, ultra)] {
                    let lib = is_complete_collection(c, &pp, st).map(|v| v.holds());
                    t.check(lib == Ok(expect), || {
                        format!("{}: library completeness differs for {}", inst.id, names())
                    });
                }
            }
        }
    }
    let _ = x;
    t
}

fn completeness(inst: &Instance, _: &Shared) -> Tally {
    let c = &inst.conv;
    let mut t = Tally::default();
    for a in c.closed_sets().members().copied() {
        let plain = completeness_number(c, a, Strength::Plain).expect("closed");
        let ultra = completeness_number(c, a, Strength::Ultra).expect("closed");
        t.check(plain.value <= ultra.value, || {
            format!("{}: compl > ucompl at {}", inst.id, inst.fmt(a))
        });
        t.check(plain.value_with_empty <= ultra.value_with_empty, || {
            format!(
                "{}: compl > ucompl with the empty collection at {}",
                inst.id,
                inst.fmt(a)
            )
        });
        for (st, r) in [(Strength::Plain, &plain), (Strength::Ultra, &ultra)] {
            let ok = is_cocomplete_collection(c, &r.witness, a, st).map(|v| v.holds());
            t.check(ok == Ok(true), || {
                format!("{}: {st:?} witness fails at {}", inst.id, inst.fmt(a))
            });
            t.check(r.value_with_empty <= r.value, || {
                format!("{}: value with the empty collection above value", inst.id)
            });
            if c.carrier().size() <= 4 {
                let brute = completeness_number_exhaustive(c, a, st).expect("closed");
                t.check(brute == (r.value, r.value_with_empty), || {
                    format!(
                        "{}: {st:?} at {}: search {:?}, brute force {brute:?}",
                        inst.id,
                        inst.fmt(a),
                        (r.value, r.value_with_empty)
                    )
                });
            }
        }
    }
    t
}

// ---------------------------------------------------------------- dual

fn sampled_subsets(full: Subset, limit_bits: usize, samples: usize, r: &mut SplitMix64) -> Vec<Subset> {
    if full.len() <= limit_bits {
        full.subsets().collect()
    } else {
        (0..samples).map(|_| Subset(r.random::<u64>() & full.bits())).collect()
    }
}

fn base_side_rdc_e(t: &mut Tally, id: &str, c: &Convergence) {
    let Ok(d) = DualSpace::new(c) else { return };
    let alex = AlexandroffPair::new(c);
    let x = c.carrier();
    let t1 = (0..x.size()).all(|y| c.point_limit(y) == Subset::singleton(y));
    for k in x.kernels() {
        let composite = d.rdc(d.erected(k));
        t.check(composite.is_subset(k), || {
            format!("{id}: rdc(e({})) not finer", x.format(k))
        });
        t.check(composite == alex.star_interior(k), || {
            format!("{id}: rdc(e({})) is not the star interior", x.format(k))
        });
        if t1 {
            t.check(composite == k, || format!("{id}: T1 composite moves {}", x.format(k)));
        }
    }
}

fn rdc_e(inst: &Instance, _: &Shared) -> Tally {
    let c = &inst.conv;
    let mut t = Tally::default();
    base_side_rdc_e(&mut t, &inst.id, c);
    let Ok(d) = DualSpace::new(c) else { return t };
    let mut r = rng_for(inst, 3);
    for g in sampled_subsets(d.carrier().full(), 12, 256, &mut r) {
        if g.is_empty() {
            continue;
        }
        let f = PFilter::principal(g);
        let sat = d.saturate(f).expect("proper");
        t.check(g.is_subset(sat.kernel), || {
            format!("{}: saturation not coarser", inst.id)
        });
        t.check(d.saturate(sat) == Ok(sat), || {
            format!("{}: saturation not idempotent", inst.id)
        });
        t.check(d.rdc(sat.kernel) == d.rdc(g), || {
            format!("{}: saturation changes rdc", inst.id)
        });
    }
    if inst.exhaustive {
        // the same identities with the dual as the base
        base_side_rdc_e(&mut t, &format!("{} (dual)", inst.id), d.convergence());
    }
    t
}

fn regularity(inst: &Instance, _: &Shared) -> Tally {
    let c = &inst.conv;
    let x = c.carrier();
    let mut t = Tally::default();
    for (label, space) in [
        ("space", c.clone()),
        ("T-reflection", c.reflector_t().tabulate().expect("cap")),
    ] {
        if space.is_topological() {
            t.check(regularity_predicates(&space).star_regular, || {
                format!("{}: {label} topology not *-regular", inst.id)
            });
        }
    }
    let reg = regularity_predicates(c);
    t.check(reg.star_regular == c.is_topological(), || {
        format!("{}: *-regular differs from topological", inst.id)
    });
    let alex = AlexandroffPair::new(c);
    for k in x.kernels() {
        let adh = c.adherence(PFilter::principal(k));
        if reg.star_regular {
            let b = c.adherence(PFilter::principal(alex.bullet_closure(k)));
            t.check(adh == b, || {
                format!(
                    "{}: *-regular but adh changes under bullet closure at {}",
                    inst.id,
                    inst.fmt(k)
                )
            });
        }
        if reg.bullet_regular {
            let s = c.adherence(PFilter::principal(alex.star_closure(k)));
            t.check(adh == s, || {
                format!(
                    "{}: bullet-regular but adh changes under star closure at {}",
                    inst.id,
                    inst.fmt(k)
                )
            });
        }
        for b in x.kernels() {
            t.check(k.meets(alex.bullet_closure(b)) == alex.star_closure(k).meets(b), || {
                format!(
                    "{}: mesh adjunction fails at {} and {}",
                    inst.id,
                    inst.fmt(k),
                    inst.fmt(b)
                )
            });
        }
    }
    for s in x.full().subsets() {
        let star_open = alex.star_closure(x.complement(s)) == x.complement(s);
        let bullet_closed = alex.bullet_closure(s) == s;
        t.check(star_open == bullet_closed, || {
            format!("{}: open/closed duality fails at {}", inst.id, inst.fmt(s))
        });
        if reg.reciprocal {
            t.check(alex.star_closure(s) == alex.bullet_closure(s), || {
                format!("{}: reciprocal but closures differ", inst.id)
            });
        }
    }
    t
}

// ---------------------------------------------------------------- graph

fn dagger_closure(inst: &Instance, _: &Shared) -> Tally {
    let c = &inst.conv;
    let x = c.carrier();
    let n = x.size();
    let g = graph_of(c);
    let mut t = Tally::default();
    let t1 = n >= 2
        && (0..n).all(|y| c.point_limit(y) == Subset::singleton(y))
        && g.roots().is_empty()
        && g.ends().is_empty();
    for a in x.full().subsets() {
        let cl = g.dagger_closure(a);
        t.check(a.is_subset(cl), || {
            format!("{}: not extensive at {}", inst.id, inst.fmt(a))
        });
        t.check(g.dagger_closure(cl) == cl, || {
            format!("{}: not idempotent at {}", inst.id, inst.fmt(a))
        });
        t.check(g.not_left_meet(cl) == g.not_left_meet(a), || {
            format!("{}: auxiliary identity fails at {}", inst.id, inst.fmt(a))
        });
        for y in x.complement(a).iter() {
            t.check(cl.is_subset(g.dagger_closure(a.insert(y))), || {
                format!("{}: not monotone at {}", inst.id, inst.fmt(a))
            });
        }
        if t1 {
            t.check(cl == a, || format!("{}: T1 closure moves {}", inst.id, inst.fmt(a)));
        }
    }
    if t1 {
        for y in 0..n {
            t.check(g.not_right(y) == x.complement(Subset::singleton(y)), || {
                format!("{}: T1 not-right set", inst.id)
            });
        }
    }
    let at_empty = g.dagger_closure(Subset::EMPTY);
    let fed_by_roots = Subset::from_indices((0..n).filter(|&y| g.backward(y).is_subset(g.roots())));
    t.check(at_empty == fed_by_roots, || {
        format!(
            "{}: closure of {{}} is {}, points fed only by roots {}",
            inst.id,
            inst.fmt(at_empty),
            inst.fmt(fed_by_roots)
        )
    });
    if g.roots().is_empty() {
        t.check(at_empty.is_empty(), || {
            format!("{}: rootless but not grounded", inst.id)
        });
    }
    t
}

/// `cl†(∅)` against the root set, and groundedness against rootlessness.
fn dagger_roots(inst: &Instance, _: &Shared) -> Tally {
    let g = graph_of(&inst.conv);
    let mut t = Tally::default();
    let at_empty = g.dagger_closure(Subset::EMPTY);
    t.check(at_empty == g.roots(), || {
        format!(
            "{}: closure of {{}} is {}, roots {}",
            inst.id,
            inst.fmt(at_empty),
            inst.fmt(g.roots())
        )
    });
    t.check(at_empty.is_empty() == g.roots().is_empty(), || {
        format!(
            "{}: grounded is {}, rootless is {}",
            inst.id,
            at_empty.is_empty(),
            g.roots().is_empty()
        )
    });
    t
}

fn dual_dagger(inst: &Instance, _: &Shared) -> Tally {
    let c = &inst.conv;
    let mut t = Tally::default();
    if c.carrier().size() > 4 {
        return t;
    }
    let d = DualSpace::new(c).expect("at most 16 closed sets");
    let dg = graph_of(d.convergence());
    let m = d.closed_sets().len();
    let reciprocal = regularity_predicates(c).reciprocal;
    t.check(dg.roots() == d.erected(Subset::EMPTY), || {
        format!("{}: dual roots", inst.id)
    });
    t.check(dg.ends() == Subset::singleton(m - 1), || {
        format!("{}: dual ends", inst.id)
    });
    for i in 0..m {
        let expect = Subset::from_indices((0..m).filter(|&j| !d.closed_set(i).meets(d.closed_set(j))));
        t.check(dg.not_left(i) == expect, || {
            format!("{}: dual not-left set of {}", inst.id, d.carrier().label(i))
        });
    }
    for g in d.carrier().full().subsets() {
        let form = dual_dagger_form(&d, g);
        t.check(form == dg.dagger_closure(g), || {
            format!("{}: dual dagger forms differ at {}", inst.id, d.carrier().format(g))
        });
        if reciprocal {
            t.check(form == d.erected(d.rdc(g)), || {
                format!(
                    "{}: reciprocal dagger form differs at {}",
                    inst.id,
                    d.carrier().format(g)
                )
            });
        }
    }
    t
}

// ---------------------------------------------------------------- paving

fn check_paving(t: &mut Tally, id: &str, c: &Convergence, naive: bool) {
    let pseudo = c.is_pseudotopology();
    for x in 0..c.carrier().size() {
        let mut values = Vec::new();
        for kind in PavingKind::ALL {
            let r = paving_number(c, x, kind).expect("lawful");
            let valid = is_pavement(c, &r.witness, x, kind).map(|v| v.holds());
            t.check(valid == Ok(true), || {
                format!("{id}: {} witness invalid at {}", kind.name(), c.carrier().label(x))
            });
            if naive {
                let brute = paving_number_exhaustive(c, x, kind).expect("small");
                t.check(brute == r.value, || {
                    format!(
                        "{id}: {} at {}: search {}, naive {brute}",
                        kind.name(),
                        c.carrier().label(x),
                        r.value
                    )
                });
            }
            values.push(r.value);
        }
        t.check(values[2] <= values[1] && values[1] <= values[0], || {
            format!("{id}: order fails at {}: {values:?}", c.carrier().label(x))
        });
        if pseudo {
            t.check(values[0] == 1 && values[1] == 1, || {
                format!("{id}: pseudotopology with values {values:?}")
            });
        }
    }
}

fn paving_solver(inst: &Instance, _: &Shared) -> Tally {
    let c = &inst.conv;
    let n = c.carrier().size();
    let mut t = Tally::default();
    check_paving(&mut t, &inst.id, c, n <= 4);
    let s = c.reflector_s().tabulate().expect("cap");
    check_paving(&mut t, &format!("{} (S)", inst.id), &s, n <= 4);
    if let Ok(d) = DualSpace::new(c) {
        if d.carrier().size() <= 4 {
            let dual = d.tabulate().expect("cap");
            check_paving(&mut t, &format!("{} (dual)", inst.id), &dual, true);
        }
    }
    if inst.id == "n3/e0" {
        // the named fixtures ride along with the first three-point instance
        let u = fixtures::ultra();
        for x in 0..3 {
            let v: Vec<usize> = PavingKind::ALL
                .iter()
                .map(|&k| paving_number(&u, x, k).unwrap().value)
                .collect();
            t.check(v == [3, 3, 1], || format!("ultra fixture at {x}: {v:?}"));
        }
        let o = fixtures::overlap();
        let v: Vec<usize> = [PavingKind::Pavement, PavingKind::Pseudo]
            .iter()
            .map(|&k| paving_number(&o, 0, k).unwrap().value)
            .collect();
        t.check(v == [3, 2], || format!("overlap fixture: {v:?}"));
    }
    t
}

fn pseudopavement(inst: &Instance, _: &Shared) -> Tally {
    let c = &inst.conv;
    let mut t = Tally::default();
    if !c.is_pseudotopology() {
        return t;
    }
    let mut r = rng_for(inst, 4);
    for x in 0..c.carrier().size() {
        let conv: Vec<PFilter> = c
            .carrier()
            .kernels()
            .filter(|&k| c.limit(k).contains(x))
            .map(PFilter::principal)
            .collect();
        let all = Subset::full(conv.len());
        for sel in sampled_subsets(all, 8, 64, &mut r) {
            if sel.is_empty() {
                continue;
            }
            let d = FilterCollection::new(sel.iter().map(|i| conv[i]).collect()).expect("nonempty");
            let v = pseudopavement_conditions(c, &d, x).expect("convergent members");
            t.check(v[0] == v[1] && v[1] == v[2], || {
                format!("{}: conditions {v:?} at {} for {d:?}", inst.id, c.carrier().label(x))
            });
        }
    }
    t
}

fn saturation(inst: &Instance, _: &Shared) -> Tally {
    let c = &inst.conv;
    let mut t = Tally::default();
    if c.carrier().size() > 4 {
        return t;
    }
    let d = DualSpace::new(c).expect("cap");
    let dual = d.convergence();
    for a in 0..d.closed_sets().len() {
        let w = paving_number(dual, a, PavingKind::Pavement).expect("lawful").witness;
        let sat: BTreeSet<PFilter> = w.members().iter().map(|&g| d.saturate(g).expect("proper")).collect();
        t.check(sat.len() == w.len(), || {
            format!(
                "{}: saturation changes the witness size at {}",
                inst.id,
                d.carrier().label(a)
            )
        });
        let sat = FilterCollection::new(sat.into_iter().collect()).expect("nonempty");
        for (g, s) in w.members().iter().zip(sat.members()) {
            t.check(g.kernel.is_subset(s.kernel) && dual.limit(s.kernel).contains(a), || {
                format!(
                    "{}: saturated member lost convergence at {}",
                    inst.id,
                    d.carrier().label(a)
                )
            });
        }
        if inst.exhaustive {
            let ok = is_pavement(dual, &sat, a, PavingKind::Pavement).map(|v| v.holds());
            t.check(ok == Ok(true), || {
                format!(
                    "{}: saturated witness is no pavement at {}",
                    inst.id,
                    d.carrier().label(a)
                )
            });
        }
    }
    t
}

// ---------------------------------------------------------------- duality

fn duality_rows(inst: &Instance, t: &mut Tally, ultra: bool) {
    let c = &inst.conv;
    let rows = match duality_check(c) {
        Ok(rows) => rows,
        Err(e) => {
            t.check(false, || format!("{}: {e}", inst.id));
            return;
        }
    };
    for r in &rows {
        let (ok, lhs, rhs) = if ultra {
            (r.equal_ultra, r.ucompl, r.pave)
        } else {
            (r.equal_plain, r.compl, r.pave_dagger)
        };
        t.check(ok && lhs == rhs, || {
            format!("{}: target {}: {lhs} vs {rhs}", inst.id, inst.fmt(r.target))
        });
    }
    if !ultra {
        let gaps: Vec<&_> = rows.iter().filter(|r| r.convention_gap()).collect();
        t.check(gaps.len() == 1 && gaps[0].target.is_empty(), || {
            format!("{}: {} convention gaps", inst.id, gaps.len())
        });
    }
    if inst.exhaustive {
        // both sides again by brute force
        let d = DualSpace::new(c).expect("cap");
        let dual = d.tabulate().ok();
        for (point, r) in rows.iter().enumerate() {
            let st = if ultra { Strength::Ultra } else { Strength::Plain };
            let brute = completeness_number_exhaustive(c, r.target, st).expect("closed");
            let lhs = if ultra { r.ucompl } else { r.compl };
            t.check(brute.0 == lhs, || {
                format!("{}: brute-force completeness {} vs {lhs}", inst.id, brute.0)
            });
            if let Some(dual) = dual.as_ref().filter(|dc| dc.carrier().size() <= 5) {
                let kind = if ultra {
                    PavingKind::Pavement
                } else {
                    PavingKind::Dagger
                };
                let naive = paving_number_exhaustive(dual, point, kind).expect("small dual");
                let rhs = if ultra { r.pave } else { r.pave_dagger };
                t.check(naive == rhs, || {
                    format!("{}: naive dual paving {naive} vs {rhs}", inst.id)
                });
            }
        }
    }
}

fn duality_ultra(inst: &Instance, _: &Shared) -> Tally {
    let mut t = Tally::default();
    duality_rows(inst, &mut t, true);
    t
}

fn duality_plain(inst: &Instance, _: &Shared) -> Tally {
    let mut t = Tally::default();
    duality_rows(inst, &mut t, false);
    t
}

// ---------------------------------------------------------------- maps

/// Onto maps from the instance: all of them on tiny carriers, a few random
/// ones above.
fn maps_of(inst: &Instance) -> Vec<Vec<usize>> {
    let n = inst.n();
    if inst.exhaustive {
        return (1..=n).flat_map(|k| onto_functions(n, k)).collect();
    }
    let mut r = rng_for(inst, 5);
    (0..3)
        .map(|_| {
            let k = r.random_range(2..=n);
            let mut img: Vec<usize> = (0..n).map(|i| if i < k { i } else { r.random_range(0..k) }).collect();
            // shuffle while keeping every target point hit
            for i in (1..n).rev() {
                let j = r.random_range(0..=i);
                img.swap(i, j);
            }
            img
        })
        .collect()
}

fn final_table(c: &Convergence, img: &[usize]) -> Convergence {
    let k = img.iter().max().map_or(0, |m| m + 1);
    let y = Carrier::numbered(k).expect("cap");
    let placeholder = Convergence::tabulate_fn(&y, |_| y.full()).expect("cap");
    let m = SpaceMap::new(c, &placeholder, img.to_vec()).expect("total");
    m.final_convergence().expect("onto").tabulate().expect("cap")
}

fn maps_prop(inst: &Instance, shared: &Shared) -> Tally {
    let c = &inst.conv;
    let n = inst.n();
    let mut t = Tally::default();
    let id = SpaceMap::new(c, c, (0..n).collect()).expect("total");
    t.check(id.final_convergence().map(|f| f.same_limits(c)) == Ok(true), || {
        format!("{}: identity final", inst.id)
    });
    t.check(id.initial_convergence().same_limits(c), || {
        format!("{}: identity initial", inst.id)
    });
    for img in maps_of(inst) {
        let fin = final_table(c, &img);
        let y = fin.carrier().clone();
        t.check(fin.validate().is_empty(), || {
            format!("{}: final structure unlawful for {img:?}", inst.id)
        });
        let mut taus = vec![
            fin.clone(),
            fin.reflector_s().tabulate().expect("cap"),
            fin.reflector_t().tabulate().expect("cap"),
        ];
        if inst.exhaustive && y.size() <= 2 {
            for table in &shared.small_tables[y.size()] {
                taus.push(Convergence::tabulate_fn(&y, |k| table[k.0 as usize]).expect("cap"));
            }
        }
        for tau in &taus {
            let m = SpaceMap::new(c, tau, img.clone()).expect("total");
            let cont = m.is_continuous().holds();
            t.check(cont == fin.finer_than(tau).unwrap_or(false), || {
                format!("{}: continuity vs final for {img:?}", inst.id)
            });
            t.check(cont == c.finer_than(&m.initial_convergence()).unwrap_or(false), || {
                format!("{}: continuity vs initial for {img:?}", inst.id)
            });
            if cont {
                let class = m.map_class().expect("continuous onto");
                t.check(
                    (!class.almost_open || class.biquotient) && (!class.biquotient || class.quotient),
                    || format!("{}: class chain broken for {img:?}: {class:?}", inst.id),
                );
            }
        }
    }
    t
}

fn cover_families(inst: &Instance) -> Vec<SetFamily> {
    let c = &inst.conv;
    if inst.exhaustive {
        return candidate_families(inst, 8, 0)
            .into_iter()
            .filter(|p| is_cover(c, p, CoverKind::Cover).holds())
            .collect();
    }
    let mut r = rng_for(inst, 6);
    let mut out = Vec::new();
    for i in 0..8 {
        let p = repair_cover(c, &random_family(&mut r, c.carrier(), 1 + i % 4));
        out.push(p.union_closure().down_closure());
        out.push(p);
    }
    out
}

fn is_ideal(p: &SetFamily) -> bool {
    p.union_closure().down_closure() == *p
}

fn cover_image(inst: &Instance, _: &Shared) -> Tally {
    let c = &inst.conv;
    let mut t = Tally::default();
    let covers = cover_families(inst);
    for img in maps_of(inst) {
        let fin = final_table(c, &img);
        let s = fin.reflector_s().tabulate().expect("cap");
        let open = SpaceMap::new(c, &fin, img.clone()).expect("total");
        let biq = SpaceMap::new(c, &s, img.clone()).expect("total");
        for p in &covers {
            let image = open.cover_image(p);
            t.check(is_cover(&fin, &image, CoverKind::Cover).holds(), || {
                format!("{}: almost open image of {p} under {img:?} is no cover", inst.id)
            });
            if is_ideal(p) {
                let image = biq.cover_image(p);
                t.check(is_cover(&s, &image, CoverKind::Cover).holds(), || {
                    format!("{}: biquotient image of ideal {p} under {img:?} is no cover", inst.id)
                });
            }
        }
        for st in [Strength::Plain, Strength::Ultra] {
            let src = completeness_number(c, Subset::EMPTY, st).expect("closed");
            let dst = completeness_number(&s, Subset::EMPTY, st).expect("closed");
            t.check(
                (src.value, src.value_with_empty) == (dst.value, dst.value_with_empty),
                || format!("{}: absolute {st:?} numbers differ across {img:?}", inst.id),
            );
        }
    }
    t
}

// ---------------------------------------------------------------- probes

fn probe_dagger_additivity(inst: &Instance, _: &Shared) -> Tally {
    let c = &inst.conv;
    let g = graph_of(c);
    let mut t = Tally::default();
    let mut r = rng_for(inst, 7);
    let subsets = sampled_subsets(c.carrier().full(), 4, 16, &mut r);
    for &a in &subsets {
        for &b in &subsets {
            let joint = g.dagger_closure(a.union(b));
            let split = g.dagger_closure(a).union(g.dagger_closure(b));
            t.check(joint == split, || {
                format!(
                    "{}: closure of {} ∪ {} is {}, union of closures {}",
                    inst.id,
                    inst.fmt(a),
                    inst.fmt(b),
                    inst.fmt(joint),
                    inst.fmt(split)
                )
            });
        }
    }
    t
}

fn probe_nonideal_cover_image(inst: &Instance, _: &Shared) -> Tally {
    let c = &inst.conv;
    let mut t = Tally::default();
    let covers: Vec<SetFamily> = cover_families(inst).into_iter().filter(|p| !is_ideal(p)).collect();
    for img in maps_of(inst) {
        let s = final_table(c, &img).reflector_s().tabulate().expect("cap");
        let biq = SpaceMap::new(c, &s, img.clone()).expect("total");
        for p in &covers {
            let image = biq.cover_image(p);
            t.check(is_cover(&s, &image, CoverKind::Cover).holds(), || {
                format!("{}: {p} under {img:?} gives {image}, no cover", inst.id)
            });
        }
    }
    t
}

fn probe_biquotient_relative(inst: &Instance, _: &Shared) -> Tally {
    let c = &inst.conv;
    let mut t = Tally::default();
    if !inst.exhaustive {
        return t;
    }
    for img in maps_of(inst) {
        let s = final_table(c, &img).reflector_s().tabulate().expect("cap");
        let m = SpaceMap::new(c, &s, img.clone()).expect("total");
        for a in c.closed_sets().members().copied() {
            let b = s.closure_of(m.apply(a));
            let src = completeness_number(c, a, Strength::Ultra).expect("closed");
            let dst = completeness_number(&s, b, Strength::Ultra).expect("closed");
            t.check(
                dst.value <= src.value && dst.value_with_empty <= src.value_with_empty,
                || {
                    format!(
                        "{}: {} ↦ {} under {img:?}: {} > {}",
                        inst.id,
                        inst.fmt(a),
                        s.carrier().format(b),
                        dst.value,
                        src.value
                    )
                },
            );
        }
    }
    t
}
