//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! A criterion that fails only on a row listed in `PRINTED_ERRATA` is
//! reported as FAIL but does not fail the run, provided an independent
//! check confirms the computed value and rules out the printed one: the
//! signed subset-sum oracle, or for even orbits with many roots the
//! Richardson weight.

use std::collections::HashMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use orbit_lmap::{
    all_orbits, check_reciprocity, compute_l, compute_table, gl_dual_weight, load_table,
    partitions, product_over_roots, richardson_weight, roots_le_one, self_consistency,
    tabulated_types, verify, CartanType, Family, LMapConfig, LMapResult, RowFlag, RowStatus,
    RootSystem, Strategy, Weight, WeightedDynkinDiagram, DEFAULT_TERM_CAP,
};
use orbit_lmap_cli::{parse_args, run};

/// Rows where the printed weight disagrees with the definition: (type, diagram, printed weight).
const PRINTED_ERRATA: &[(&str, &str, &str)] = &[
    ("C6", "101010", "002002"),
    ("E8", "00020022", "00100100"),
    ("E8", "00010102", "11001000"),
    ("E8", "00020020", "01100011"),
    ("E8", "01100012", "10010011"),
    ("E8", "00020002", "00020010"),
    ("E8", "10010122", "12010002"),
    ("E8", "10000102", "21100112"),
    ("E8", "20000000", "11101110"),
];

/// Above this many roots the oracle switches from subset enumeration to a running table.
const GRAY_CODE_LIMIT: usize = 24;

/// Term cap for the E7/E8 best-effort run; sized for a few GB of memory.
const EXCEPTIONAL_CAP: u64 = 10_000_000;

enum Verdict {
    Pass,
    Fail,
    /// Fails only on confirmed errata.
    Documented,
}

struct Line {
    id: u32,
    name: &'static str,
    verdict: Verdict,
    detail: String,
}

fn ty(s: &str) -> CartanType {
    s.parse().unwrap()
}

fn types_up_to_rank(max: usize) -> Vec<CartanType> {
    let mut out = Vec::new();
    for f in [Family::A, Family::B, Family::C, Family::D, Family::F, Family::G] {
        for n in 1..=max {
            if let Ok(t) = CartanType::new(f, n) {
                out.push(t);
            }
        }
    }
    out
}

/// Signed subset sums of `roots`, no group-ring code involved.
fn oracle_product(rs: &RootSystem, roots: &[Weight]) -> HashMap<Vec<i32>, i128> {
    let n = rs.rank();
    let mut acc: HashMap<Vec<i32>, i128> = HashMap::new();
    let mut w = vec![0i32; n];
    let mut sign = 1i128;
    *acc.entry(w.clone()).or_default() += 1;
    for i in 1u64..(1 << roots.len()) {
        let bit = i.trailing_zeros() as usize;
        let on = (i ^ (i >> 1)) >> bit & 1 == 1;
        for (x, r) in w.iter_mut().zip(roots[bit].coords()) {
            if on {
                *x += r;
            } else {
                *x -= r;
            }
        }
        sign = -sign;
        *acc.entry(w.clone()).or_default() += sign;
    }
    acc.retain(|_, c| *c != 0);
    acc
}

/// Same signed subset sums, accumulated one root at a time.
fn oracle_product_dp(rs: &RootSystem, roots: &[Weight]) -> HashMap<Vec<i32>, i128> {
    let mut acc: HashMap<Vec<i32>, i128> = HashMap::from([(vec![0; rs.rank()], 1)]);
    for r in roots {
        let mut next = acc.clone();
        for (k, c) in &acc {
            let shifted: Vec<i32> = k.iter().zip(r.coords()).map(|(x, y)| x + y).collect();
            *next.entry(shifted).or_default() -= c;
        }
        next.retain(|_, c| *c != 0);
        acc = next;
    }
    acc
}

fn oracle_symmetrized(rs: &RootSystem, h: &WeightedDynkinDiagram) -> HashMap<Weight, i128> {
    let roots: Vec<Weight> = roots_le_one(rs, h)
        .unwrap()
        .all()
        .iter()
        .map(|r| rs.root_as_weight(r))
        .collect();
    let product = if roots.len() <= GRAY_CODE_LIMIT {
        oracle_product(rs, &roots)
    } else {
        oracle_product_dp(rs, &roots)
    };
    let mut out: HashMap<Weight, i128> = HashMap::new();
    for (k, c) in product {
        *out.entry(rs.dominant_representative(&Weight::new(&k))).or_default() += c;
    }
    out.retain(|_, c| *c != 0);
    out
}

/// The computed weight is the oracle's unique maximum and the printed one does not occur.
/// Even orbits with many roots are checked against the Richardson weight instead.
fn erratum_confirmed(t: &str, diagram: &str, printed: &str, computed: &Weight) -> bool {
    let rs = RootSystem::new(ty(t));
    let h: WeightedDynkinDiagram = diagram.parse().unwrap();
    let printed: Weight = printed.parse().unwrap();
    if h.is_even() && roots_le_one(&rs, &h).unwrap().len() > GRAY_CODE_LIMIT {
        return richardson_weight(&rs, &h.zero_nodes()) == *computed && printed != *computed;
    }
    let sym = oracle_symmetrized(&rs, &h);
    let top = sym.keys().filter(|k| *k != computed).all(|k| rs.dominance_leq(k, computed));
    sym.contains_key(computed) && top && !sym.contains_key(&printed)
}

fn is_erratum(t: CartanType, d: &WeightedDynkinDiagram) -> Option<&'static (&'static str, &'static str, &'static str)> {
    PRINTED_ERRATA
        .iter()
        .find(|(et, ed, _)| ty(et) == t && d.to_string() == *ed)
}

fn secs(d: Duration) -> String {
    format!("{:.2} s", d.as_secs_f64())
}

fn criterion_1() -> Line {
    let start = Instant::now();
    let mut rows = 0;
    let mut issues = Vec::new();
    for t in tabulated_types() {
        let table = load_table(t).unwrap();
        rows += table.rows.iter().filter(|r| r.flag != RowFlag::Blank).count();
        issues.extend(self_consistency(&table).into_iter().map(|i| format!("{}: {i}", table.name)));
    }
    let elapsed = start.elapsed();
    let ok = issues.is_empty() && elapsed < Duration::from_secs(1);
    Line {
        id: 1,
        name: "fixture self-consistency",
        verdict: if ok { Verdict::Pass } else { Verdict::Fail },
        detail: format!("{rows} non-blank rows, {} inconsistent, {}{}", issues.len(), secs(elapsed), join(&issues)),
    }
}

fn join(v: &[String]) -> String {
    if v.is_empty() {
        String::new()
    } else {
        format!("; {}", v.join("; "))
    }
}

fn verify_type(t: CartanType, config: &LMapConfig) -> (orbit_lmap::VerificationReport, Vec<String>) {
    let table = load_table(t).unwrap();
    let rs = RootSystem::new(t);
    let orbits: Vec<_> = table.rows.iter().map(|r| (r.orbit.clone(), r.diagram.clone())).collect();
    let entries = compute_table(&rs, &orbits, config);
    let report = verify(t, &entries, &table.rows);
    let mismatches = report
        .rows
        .iter()
        .filter_map(|r| match &r.status {
            RowStatus::Mismatch { computed, computed_norm } => Some(format!(
                "{} {} {}: printed {} ({}), computed {} ({})",
                table.name,
                r.orbit,
                r.diagram,
                r.fixture_weight.as_ref().map(|w| w.compact()).unwrap_or_default(),
                r.fixture_norm.unwrap_or_default(),
                computed.compact(),
                computed_norm
            )),
            _ => None,
        })
        .collect();
    (report, mismatches)
}

/// Splits mismatches into confirmed errata and everything else.
fn classify_mismatches(t: CartanType, report: &orbit_lmap::VerificationReport) -> (Vec<String>, Vec<String>) {
    let mut documented = Vec::new();
    let mut undocumented = Vec::new();
    for r in &report.rows {
        let RowStatus::Mismatch { computed, .. } = &r.status else {
            continue;
        };
        let label = r.orbit.to_string();
        let diagram = r.diagram.to_string();
        let row = if label == diagram { label } else { format!("{label} {diagram}") };
        let msg = format!(
            "{t} {row}: printed {}, computed {}",
            r.fixture_weight.as_ref().map(|w| w.compact()).unwrap_or_default(),
            computed.compact()
        );
        match is_erratum(t, &r.diagram) {
            Some((et, ed, ep)) if erratum_confirmed(et, ed, ep, computed) => {
                documented.push(format!("{msg}, confirmed independently"))
            }
            _ => undocumented.push(msg),
        }
    }
    (documented, undocumented)
}

fn criterion_2() -> Line {
    let start = Instant::now();
    let mut total = 0;
    let mut bad = Vec::new();
    for name in ["B2", "C2", "B3", "C3", "D4", "B4", "C4", "G2"] {
        let (report, mismatches) = verify_type(ty(name), &LMapConfig::default());
        total += report.summary.total;
        bad.extend(mismatches);
        if report.summary.matched != report.summary.total {
            bad.push(format!("{name}: {}/{} match", report.summary.matched, report.summary.total));
        }
    }
    let elapsed = start.elapsed();
    let ok = bad.is_empty() && elapsed < Duration::from_secs(10);
    Line {
        id: 2,
        name: "small tables exact",
        verdict: if ok { Verdict::Pass } else { Verdict::Fail },
        detail: format!("{total} rows, {} problems, {}{}", bad.len(), secs(elapsed), join(&bad)),
    }
}

fn criterion_3() -> Line {
    let start = Instant::now();
    let mut rows = 0;
    let mut completed = 0;
    let mut unresolved_questions = 0;
    let mut questions = 0;
    let mut undocumented = Vec::new();
    let mut documented = Vec::new();
    for name in ["D5", "B5", "C5", "F4", "E6", "D6", "C6"] {
        let t = ty(name);
        let (report, _) = verify_type(t, &LMapConfig::default());
        rows += report.summary.total;
        completed += report.summary.completed();
        let (d, u) = classify_mismatches(t, &report);
        documented.extend(d);
        undocumented.extend(u);
        questions += report
            .rows
            .iter()
            .filter(|r| matches!(r.status, RowStatus::QuestionResolved { .. }))
            .count();
        let table = load_table(t).unwrap();
        let printed_q = table.rows.iter().filter(|r| r.flag == RowFlag::QuestionMark).count();
        unresolved_questions += printed_q.saturating_sub(
            report
                .rows
                .iter()
                .filter(|r| matches!(r.status, RowStatus::QuestionResolved { .. }))
                .count(),
        );
    }
    let elapsed = start.elapsed();
    let share = completed as f64 / rows as f64;
    let base_ok = share >= 0.9 && unresolved_questions == 0 && elapsed < Duration::from_secs(1800);
    let verdict = match (base_ok, undocumented.is_empty(), documented.is_empty()) {
        (true, true, true) => Verdict::Pass,
        (true, true, false) => Verdict::Documented,
        _ => Verdict::Fail,
    };
    let mut notes = undocumented;
    notes.extend(documented);
    Line {
        id: 3,
        name: "medium tables",
        verdict,
        detail: format!(
            "{completed}/{rows} rows complete, {} mismatches, {questions} question rows resolved, {}{}",
            notes.len(),
            secs(elapsed),
            join(&notes)
        ),
    }
}

fn criterion_4() -> Line {
    let start = Instant::now();
    let mut checked = 0;
    let mut bad = Vec::new();
    for n in 2..=6u32 {
        let t = CartanType::new(Family::A, n as usize - 1).unwrap();
        let rs = RootSystem::new(t);
        for p in partitions(n) {
            let h = orbit_lmap::diagram_from_partition(&p, None, t).unwrap();
            let r = compute_l(&rs, &h, &LMapConfig::default()).unwrap();
            checked += 1;
            if r.weight != gl_dual_weight(&p).unwrap() {
                bad.push(format!("{t} {p}"));
            }
        }
    }
    let elapsed = start.elapsed();
    let ok = bad.is_empty() && elapsed < Duration::from_secs(60);
    Line {
        id: 4,
        name: "GL_n transpose theorem, n <= 6",
        verdict: if ok { Verdict::Pass } else { Verdict::Fail },
        detail: format!("{checked} partitions, {} failures, {}{}", bad.len(), secs(elapsed), join(&bad)),
    }
}

fn criterion_5() -> Line {
    let mut checked = 0;
    let mut bad = Vec::new();
    for t in types_up_to_rank(4) {
        let rs = RootSystem::new(t);
        for (label, h) in all_orbits(t).unwrap() {
            if !h.is_even() {
                continue;
            }
            checked += 1;
            let r = compute_l(&rs, &h, &LMapConfig::default()).unwrap();
            if r.weight != richardson_weight(&rs, &h.zero_nodes()) {
                bad.push(format!("{t} {label}"));
            }
        }
    }
    Line {
        id: 5,
        name: "even orbits equal Richardson weight, rank <= 4",
        verdict: if bad.is_empty() { Verdict::Pass } else { Verdict::Fail },
        detail: format!("{checked} even orbits, {} failures{}", bad.len(), join(&bad)),
    }
}

fn computed(t: CartanType) -> (Vec<WeightedDynkinDiagram>, Vec<LMapResult>) {
    let rs = RootSystem::new(t);
    let orbits = all_orbits(t).unwrap();
    let entries = compute_table(&rs, &orbits, &LMapConfig::default());
    (
        orbits.into_iter().map(|(_, d)| d).collect(),
        entries.into_iter().map(|e| e.outcome.unwrap()).collect(),
    )
}

fn criterion_6() -> Line {
    let mut checks = 0;
    let mut bad = Vec::new();
    for (a, b) in [("B2", "C2"), ("B3", "C3"), ("B4", "C4"), ("D4", "D4"), ("G2", "G2"), ("F4", "F4")] {
        let (ad, ar) = computed(ty(a));
        let (bd, br) = computed(ty(b));
        for (from, to, results, dual_d, dual_r) in [(a, b, &ar, &bd, &br), (b, a, &br, &ad, &ar)] {
            let rep = check_reciprocity(results, ty(to), dual_d, dual_r);
            checks += rep.checks.len();
            for c in rep.checks.iter().filter(|c| c.status != orbit_lmap::ReciprocityStatus::Confirmed) {
                bad.push(format!("{from}->{to} {}: {:?}", c.diagram, c.status));
            }
            if a == b {
                break;
            }
        }
    }
    Line {
        id: 6,
        name: "reciprocity for even orbits",
        verdict: if bad.is_empty() && checks > 0 { Verdict::Pass } else { Verdict::Fail },
        detail: format!("{checks} pairs checked, {} failures{}", bad.len(), join(&bad)),
    }
}

fn criterion_7() -> Line {
    let mut checked = 0;
    let mut bad = Vec::new();
    for t in types_up_to_rank(4) {
        let rs = RootSystem::new(t);
        for (label, h) in all_orbits(t).unwrap() {
            let roots = roots_le_one(&rs, &h).unwrap().all();
            if roots.len() > 18 {
                continue;
            }
            checked += 1;
            let product = product_over_roots(&rs, &roots, DEFAULT_TERM_CAP).unwrap().sum;
            let weights: Vec<Weight> = roots.iter().map(|r| rs.root_as_weight(r)).collect();
            let oracle = oracle_product(&rs, &weights);
            let same = product.len() == oracle.len()
                && product
                    .iter()
                    .all(|(k, c)| oracle.get(k.coords()) == Some(&c));
            if !same {
                bad.push(format!("{t} {label}"));
            }
        }
    }
    Line {
        id: 7,
        name: "product equals subset-sum oracle",
        verdict: if bad.is_empty() && checked > 0 { Verdict::Pass } else { Verdict::Fail },
        detail: format!("{checked} orbits with at most 18 roots, {} failures{}", bad.len(), join(&bad)),
    }
}

fn criterion_8() -> Line {
    let mut checked = 0;
    let mut bad = Vec::new();
    for t in types_up_to_rank(4) {
        let rs = RootSystem::new(t);
        for (label, h) in all_orbits(t).unwrap() {
            checked += 1;
            let full = compute_l(&rs, &h, &LMapConfig::with_strategy(Strategy::FullProduct)).unwrap();
            let hybrid = compute_l(&rs, &h, &LMapConfig::with_strategy(Strategy::HybridLevi)).unwrap();
            if (full.weight.clone(), full.leading_sign, full.norm_sq)
                != (hybrid.weight.clone(), hybrid.leading_sign, hybrid.norm_sq)
            {
                bad.push(format!("{t} {label}"));
            }
        }
    }
    Line {
        id: 8,
        name: "full product equals hybrid, rank <= 4",
        verdict: if bad.is_empty() { Verdict::Pass } else { Verdict::Fail },
        detail: format!("{checked} orbits, {} failures{}", bad.len(), join(&bad)),
    }
}

fn criterion_9() -> Line {
    let start = Instant::now();
    let config = LMapConfig {
        cap: EXCEPTIONAL_CAP,
        ..LMapConfig::default()
    };
    let mut parts = Vec::new();
    let mut bad = Vec::new();
    let mut documented = Vec::new();
    for name in ["E7", "E8"] {
        let (report, _) = verify_type(ty(name), &config);
        let (d, u) = classify_mismatches(ty(name), &report);
        documented.extend(d);
        bad.extend(u);
        for r in &report.rows {
            if let RowStatus::Skipped { reason } = &r.status {
                if !reason.contains("resource limit") {
                    bad.push(format!("{name} {}: {reason}", r.diagram));
                }
            }
        }
        let s = report.summary;
        parts.push(format!(
            "{name} {}/{} complete ({} match, {} gap filled, {} question rows, {} skipped)",
            s.completed(),
            s.total,
            s.matched,
            s.gaps_filled,
            s.questions_agreed + s.questions_disagreed,
            s.skipped
        ));
    }
    // skipped rows carry no value in rendered output
    let doc = exec_json(&["verify", "--type", "B", "--rank", "4", "--cap", "50", "--strategy", "full", "--format", "json"]);
    let leaked = doc
        .rows
        .iter()
        .filter(|r| r.status == "skipped" && (r.weight.is_some() || r.norm_sq.is_some() || r.sign.is_some()))
        .count();
    if leaked > 0 {
        bad.push(format!("{leaked} skipped rows rendered with values"));
    }
    let verdict = match (bad.is_empty(), documented.is_empty()) {
        (true, true) => Verdict::Pass,
        (true, false) => Verdict::Documented,
        _ => Verdict::Fail,
    };
    bad.extend(documented);
    Line {
        id: 9,
        name: "E7/E8 best effort",
        verdict,
        detail: format!("cap {EXCEPTIONAL_CAP}: {}, {}{}", parts.join("; "), secs(start.elapsed()), join(&bad)),
    }
}

fn exec(args: &[&str]) -> orbit_lmap_cli::Outcome {
    let mut full = vec!["orbit-lmap"];
    full.extend_from_slice(args);
    run(&parse_args(full).unwrap())
}

fn exec_json(args: &[&str]) -> orbit_lmap_cli::Document {
    serde_json::from_str(&exec(args).output).unwrap()
}

fn criterion_10() -> Line {
    let mut checked = 0;
    let mut bad = Vec::new();
    for t in types_up_to_rank(4) {
        let family = t.family().letter().to_string();
        let rank = t.rank().to_string();
        for format in ["text", "json", "csv"] {
            let outputs: Vec<_> = ["1", "2", "4", "1"]
                .iter()
                .map(|n| exec(&["table", "--type", &family, "--rank", &rank, "--threads", n, "--format", format]))
                .collect();
            checked += 1;
            if outputs.windows(2).any(|w| w[0] != w[1]) {
                bad.push(format!("{t} {format}"));
            }
        }
    }
    Line {
        id: 10,
        name: "deterministic table output",
        verdict: if bad.is_empty() { Verdict::Pass } else { Verdict::Fail },
        detail: format!("{checked} type/format pairs, threads 1/2/4, {} differ{}", bad.len(), join(&bad)),
    }
}

fn main() -> ExitCode {
    let criteria: [fn() -> Line; 10] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
    ];
    let filter = std::env::args().skip(1).find(|a| !a.starts_with('-'));
    let mut failed = false;
    for (i, c) in criteria.iter().enumerate() {
        if filter.as_ref().is_some_and(|f| *f != (i + 1).to_string()) {
            continue;
        }
        let line = c();
        let tag = match line.verdict {
            Verdict::Pass => "PASS",
            Verdict::Documented => "FAIL (documented erratum)",
            Verdict::Fail => {
                failed = true;
                "FAIL"
            }
        };
        println!("criterion {:>2} {tag}: {}: {}", line.id, line.name, line.detail);
    }
    if failed {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
