//! Acceptance criteria, one line each.
//!
//! Every criterion is evaluated in full and printed as PASS or FAIL. The test
//! then requires the failing set to equal `KNOWN_RED`: criteria whose stated
//! form does not hold and are recorded as such. A regression anywhere else,
//! or a known-red criterion turning green, fails the test.

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use convspace::dual::regularity_predicates;
use convspace::harness::duality::duality_check;
use convspace::harness::enumerate::{all_convergences, tables_by_extension, tables_by_filtering};
use convspace::harness::fixtures;
use convspace::harness::format::{parse_space, serialize_space};
use convspace::harness::suite::{run_suite, SuiteParams, SuiteReport};
use convspace::paving::{paving_number, PavingKind};

/// Criterion 7 asks for `cl†(∅) = roots` and "grounded iff rootless"; the
/// dagger closure as defined sends `∅` to the points all of whose incoming
/// arrows start at roots, and three-point counterexamples exist.
const KNOWN_RED: &[usize] = &[7];

const AXIOM_BUDGET: Duration = Duration::from_secs(10);
const DUALITY_BUDGET: Duration = Duration::from_secs(120);
const RANDOM_REGULAR_AT_FOUR: usize = 300;
const RANDOM_AT_FOUR_AND_FIVE: usize = 500;
const SEED: u64 = 0x5eed;

struct Verdict {
    id: usize,
    pass: bool,
    detail: String,
}

fn verdict(id: usize, pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        id,
        pass,
        detail: detail.into(),
    }
}

/// Properties of `report` that failed, with their first transcript.
fn failures(report: &SuiteReport, names: &[&str]) -> Vec<String> {
    names
        .iter()
        .map(|&n| report.property(n).unwrap_or_else(|| panic!("property {n} missing")))
        .filter(|p| !p.passed() || p.checks == 0)
        .map(|p| {
            format!(
                "{} ({} of {} checks failed; {})",
                p.name,
                p.failures,
                p.checks,
                p.transcripts.first().map_or("no transcript", String::as_str)
            )
        })
        .collect()
}

fn from_suite(id: usize, report: &SuiteReport, names: &[&str], extra: Option<String>) -> Verdict {
    let mut bad = failures(report, names);
    bad.extend(extra);
    let checks: u64 = names.iter().map(|&n| report.property(n).unwrap().checks).sum();
    if bad.is_empty() {
        verdict(id, true, format!("{} checks over {}", checks, names.join(", ")))
    } else {
        verdict(id, false, bad.join("; "))
    }
}

fn exhaustive_count() -> usize {
    (1..=3).map(|n| all_convergences(n).unwrap().len()).sum()
}

const CHAIN: &str = "space: chain\npoints: a b c\nmode: topology\nopen: {} {a} {a,b} {a,b,c}\n";
const ULTRA_EXPLICIT: &str = "space: ultra\npoints: 1 2 3\nmode: explicit\n\
lim: {1} -> {1,2,3}\nlim: {2} -> {1,2,3}\nlim: {3} -> {1,2,3}\n";
const ULTRA_GENERATORS: &str = "space: ultra\npoints: 1 2 3\nmode: generators\n\
lim: {1} -> {1,2,3}\nlim: {2} -> {1,2,3}\nlim: {3} -> {1,2,3}\n";

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let mut a = tables_by_extension(3).unwrap();
    let mut b = tables_by_filtering(3).unwrap();
    a.sort();
    b.sort();
    let orders_agree = a == b;
    let params = SuiteParams {
        props: Some(vec!["axioms".into()]),
        seed: SEED,
        ..SuiteParams::default()
    };
    let report = run_suite(&params).unwrap();
    let files = [CHAIN, ULTRA_EXPLICIT, ULTRA_GENERATORS]
        .iter()
        .all(|t| parse_space(t).is_ok_and(|f| f.convergence.validate().is_empty()));
    let fixtures_match = parse_space(CHAIN).unwrap().convergence.same_limits(&fixtures::chain())
        && parse_space(ULTRA_EXPLICIT)
            .unwrap()
            .convergence
            .same_limits(&fixtures::ultra())
        && parse_space(ULTRA_GENERATORS)
            .unwrap()
            .convergence
            .same_limits(&fixtures::ultra());
    let elapsed = start.elapsed();
    let pass = orders_agree && report.passed() && files && fixtures_match && elapsed < AXIOM_BUDGET;
    verdict(
        1,
        pass,
        format!(
            "{} tables at n=3 by both orders: {orders_agree}; {} instances validated; files parse: {}; {:.1}s of {}s",
            a.len(),
            report.property("axioms").unwrap().instances,
            files && fixtures_match,
            elapsed.as_secs_f64(),
            AXIOM_BUDGET.as_secs()
        ),
    )
}

fn random_count(report: &SuiteReport, name: &str) -> usize {
    report.property(name).unwrap().instances - exhaustive_count()
}

fn criteria_2_to_8_and_11() -> Vec<Verdict> {
    let names = [
        "adherence",
        "reflectors",
        "cover-criterion",
        "cauchy-transfer",
        "rdc-e",
        "regularity",
        "dagger-closure",
        "dagger-roots",
        "dual-dagger",
        "paving-solver",
        "pseudopavement",
        "maps",
        "cover-image",
    ];
    let params = SuiteParams {
        props: Some(names.iter().map(|s| s.to_string()).collect()),
        seed: SEED,
        ..SuiteParams::default()
    };
    let r = run_suite(&params).unwrap();
    let random = |name: &str| {
        let k = random_count(&r, name);
        (k < RANDOM_AT_FOUR_AND_FIVE).then(|| format!("{name}: only {k} random instances"))
    };

    let u = fixtures::ultra();
    let o = fixtures::overlap();
    let mut fixture_notes = Vec::new();
    for x in 0..3 {
        let v: Vec<usize> = PavingKind::ALL
            .iter()
            .map(|&k| paving_number(&u, x, k).unwrap().value)
            .collect();
        if v != [3, 3, 1] {
            fixture_notes.push(format!("ultra at {x}: {v:?}"));
        }
    }
    let ov = (
        paving_number(&o, 0, PavingKind::Pavement).unwrap().value,
        paving_number(&o, 0, PavingKind::Pseudo).unwrap().value,
    );
    if ov != (3, 2) {
        fixture_notes.push(format!("overlap: {ov:?}"));
    }
    let fixtures_ok = (!fixture_notes.is_empty()).then(|| fixture_notes.join(", "));

    vec![
        from_suite(2, &r, &["adherence"], random("adherence")),
        from_suite(3, &r, &["reflectors"], random("reflectors")),
        from_suite(4, &r, &["cover-criterion", "cauchy-transfer"], None),
        from_suite(5, &r, &["rdc-e"], None),
        from_suite(6, &r, &["regularity"], None),
        from_suite(7, &r, &["dagger-closure", "dagger-roots", "dual-dagger"], None),
        from_suite(8, &r, &["paving-solver"], fixtures_ok),
        from_suite(11, &r, &["pseudopavement", "maps", "cover-image"], None),
    ]
}

fn criteria_9_and_10() -> Vec<Verdict> {
    let start = Instant::now();
    let params = SuiteParams {
        n_min: 1,
        n_max: 4,
        trials: RANDOM_REGULAR_AT_FOUR,
        seed: SEED,
        props: Some(vec!["duality-ultra".into(), "duality-plain".into()]),
    };
    let r = run_suite(&params).unwrap();
    let elapsed = start.elapsed();
    let regular_small: usize = (1..=3)
        .map(|n| {
            all_convergences(n)
                .unwrap()
                .iter()
                .filter(|c| regularity_predicates(c).star_regular)
                .count()
        })
        .sum();
    let count = |name: &str| r.property(name).unwrap().instances.saturating_sub(regular_small);
    let budget = (elapsed >= DUALITY_BUDGET).then(|| format!("took {:.1}s", elapsed.as_secs_f64()));
    let enough = |name: &str| {
        let k = count(name);
        (k < RANDOM_REGULAR_AT_FOUR).then(|| format!("{name}: only {k} random *-regular instances at n=4"))
    };
    let rows = duality_check(&fixtures::chain()).unwrap();
    let gaps: Vec<_> = rows.iter().filter(|row| row.convention_gap()).collect();
    let chain_gap =
        !(gaps.len() == 1 && gaps[0].target.is_empty() && gaps[0].compl_with_empty == 0 && gaps[0].compl == 1);
    let mut nine = from_suite(9, &r, &["duality-ultra"], enough("duality-ultra").or(budget.clone()));
    let mut ten = from_suite(
        10,
        &r,
        &["duality-plain"],
        enough("duality-plain")
            .or(budget)
            .or(chain_gap.then(|| "chain gap row".to_string())),
    );
    for v in [&mut nine, &mut ten] {
        v.detail.push_str(&format!(
            "; {regular_small} exhaustive + {} random *-regular; {:.1}s",
            count("duality-plain"),
            elapsed.as_secs_f64()
        ));
    }
    vec![nine, ten]
}

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_convspace")
}

fn scratch() -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("acceptance");
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

/// Runs the binary and returns (exit code, stdout, stderr).
fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(bin()).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

/// Each step: arguments, expected exit code, a line the output must contain.
fn session(name: &str, steps: &[(Vec<String>, i32, &str)]) -> Option<String> {
    for (args, code, needle) in steps {
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let (got, out, err) = run(&refs);
        if got != *code || !(out.contains(needle) || err.contains(needle)) {
            return Some(format!(
                "{name}: `{}` exited {got}, expected {code} with `{needle}`",
                args.join(" ")
            ));
        }
    }
    None
}

fn criterion_12() -> Verdict {
    let mut bad = Vec::new();

    // random sizes only, where the seed matters
    let params = SuiteParams {
        n_min: 4,
        n_max: 5,
        trials: 20,
        seed: 11,
        props: None,
    };
    let a = run_suite(&params).unwrap().render();
    let b = run_suite(&params).unwrap().render();
    if a != b {
        bad.push("same seed gave different reports".to_string());
    }
    let other = run_suite(&SuiteParams {
        seed: 12,
        ..params.clone()
    })
    .unwrap();
    let first = run_suite(&params).unwrap();
    let statuses = |r: &SuiteReport| {
        r.properties
            .iter()
            .map(|p| (p.name, p.exploratory || p.failures == 0))
            .collect::<Vec<_>>()
    };
    let non_probe_same = statuses(&first).iter().zip(statuses(&other)).all(|(x, y)| x == &y);
    if !non_probe_same {
        bad.push("verdicts changed with the seed".to_string());
    }

    let mut round_trips = 0;
    for n in 1..=3 {
        for c in all_convergences(n).unwrap() {
            let text = serialize_space("t", &c);
            match parse_space(&text) {
                Ok(f) if f.convergence.same_limits(&c) && serialize_space("t", &f.convergence) == text => {
                    round_trips += 1
                }
                _ => bad.push(format!("round trip failed:\n{text}")),
            }
        }
    }

    let dir = scratch();
    let path = |f: &str| dir.join(f).to_string_lossy().into_owned();
    let write = |f: &str, text: &str| std::fs::write(dir.join(f), text).unwrap();
    write("chain.space", CHAIN);
    write("ultra.space", ULTRA_EXPLICIT);
    write(
        "bad.space",
        "points: p q\nmode: explicit\nlim: {p} -> {q}\nlim: {q} -> {q}\n",
    );
    write("typo.space", "points: a b\nmode: explicit\nlim {a} -> {a}\n");
    write(
        "two.space",
        "space: two\npoints: p q\nmode: topology\nopen: {} {p} {p,q}\n",
    );
    write("collapse.map", "map: a -> p\nmap: b -> p\nmap: c -> q\n");
    write(
        "irregular.space",
        "points: p q\nmode: explicit\nlim: {p} -> {p,q}\nlim: {q} -> {q}\n",
    );
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();

    let sessions = [
        session(
            "inspect",
            &[
                (s(&["validate", &path("chain.space")]), 0, "valid=true"),
                (s(&["info", &path("chain.space")]), 0, "roots={a}"),
                (
                    s(&["dual", &path("chain.space"), "--emit", &path("dual.space")]),
                    0,
                    "dual.points=4",
                ),
                (s(&["validate", &path("dual.space")]), 0, "valid=true"),
                (s(&["duality", &path("chain.space")]), 0, "duality.status=equal"),
                (
                    s(&["paving", &path("ultra.space"), "--at", "1", "--kind", "dagger"]),
                    0,
                    "value=1",
                ),
                (
                    s(&["complete", &path("chain.space"), "--target", "{}"]),
                    0,
                    "value_with_empty=0",
                ),
                (
                    s(&["map", &path("collapse.map"), &path("chain.space"), &path("two.space")]),
                    0,
                    "quotient=",
                ),
            ],
        ),
        session(
            "failures",
            &[
                (s(&["validate", &path("bad.space")]), 1, "violation[0]="),
                (
                    s(&["suite", "--n", "1..3", "--props", "dagger-roots"]),
                    1,
                    "suite.status=fail",
                ),
                (
                    s(&["suite", "--n", "1..2", "--trials", "3", "--props", "adherence,maps"]),
                    0,
                    "suite.status=pass",
                ),
            ],
        ),
        session(
            "input errors",
            &[
                (s(&["validate", &path("typo.space")]), 2, "line 3"),
                (
                    s(&["complete", &path("chain.space"), "--target", "{b}"]),
                    2,
                    "not closed",
                ),
                (s(&["duality", &path("irregular.space")]), 2, "not *-regular"),
                (
                    s(&["paving", &path("chain.space"), "--at", "z"]),
                    2,
                    "unknown point label",
                ),
                (s(&["suite", "--props", "nonsense"]), 2, "nonsense"),
                (s(&["info", &path("missing.space")]), 2, "missing.space"),
            ],
        ),
    ];
    bad.extend(sessions.into_iter().flatten());

    let (c1, out1, _) = run(&["suite", "--n", "4..5", "--trials", "5", "--seed", "3"]);
    let (c2, out2, _) = run(&["suite", "--n", "4..5", "--trials", "5", "--seed", "3"]);
    if c1 != c2 || out1 != out2 {
        bad.push("CLI suite output differs between runs".to_string());
    }

    let pass = bad.is_empty();
    let detail = if pass {
        format!("reports byte-identical; {round_trips} files round-trip; 3 CLI sessions honored exit codes")
    } else {
        bad.join("; ")
    };
    verdict(12, pass, detail)
}

#[test]
fn acceptance() {
    let mut verdicts = vec![criterion_1()];
    verdicts.extend(criteria_2_to_8_and_11());
    verdicts.extend(criteria_9_and_10());
    verdicts.push(criterion_12());
    verdicts.sort_by_key(|v| v.id);

    let mut err = std::io::stderr().lock();
    for v in &verdicts {
        let _ = writeln!(
            err,
            "criterion {:>2}: {} {}",
            v.id,
            if v.pass { "PASS" } else { "FAIL" },
            v.detail
        );
    }
    let red: Vec<usize> = verdicts.iter().filter(|v| !v.pass).map(|v| v.id).collect();
    assert_eq!(red, KNOWN_RED, "failing criteria differ from the recorded set");
}
