//! Acceptance run: one PASS/FAIL line per criterion.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use subadd::exactla::Field;
use subadd::geometry::{
    build_corpus, reconstruct_proj, syzygy_tensor_identity, verify_adloc, verify_bcr, verify_cb_decomp,
    verify_pipoint, verify_point_modules, verify_sums, Corpus, CorpusConfig, SuiteConfig, SuiteReport,
};
use subadd::modrep::GroupDesc;

struct Outcome {
    lines: Vec<(usize, bool, String)>,
}

impl Outcome {
    fn record(&mut self, n: usize, pass: bool, what: String) {
        println!("criterion {n:>2}: {} {what}", if pass { "PASS" } else { "FAIL" });
        self.lines.push((n, pass, what));
    }
}

fn gf(p: u32, n: u32) -> Field {
    Field::new(p, n, None).expect("field")
}

fn failing(rep: &SuiteReport, names: &[&str]) -> Vec<String> {
    names
        .iter()
        .filter(|n| rep.assertion(n).map(|a| !a.pass).unwrap_or(true))
        .map(|n| n.to_string())
        .collect()
}

fn summary(failed: &[String]) -> String {
    if failed.is_empty() {
        String::new()
    } else {
        format!(" failing: {}", failed.join(", "))
    }
}

fn default_corpus() -> Corpus {
    build_corpus(&SuiteConfig::default().corpus_config().expect("config")).expect("corpus")
}

fn criterion_1(out: &mut Outcome, corpus: &Corpus, exts: &[Field]) {
    let start = Instant::now();
    let rep = verify_adloc(corpus, exts, 0).expect("adloc suite");
    let t = start.elapsed();
    let failed = failing(
        &rep,
        &[
            "adloc.definitional_iff_ext1_vanishes",
            "adloc.pair_count_at_least_200",
            "adloc.cover_and_three_pushouts_per_target",
        ],
    );
    let small = corpus.modules.iter().all(|m| m.dim() <= 10) && corpus.len() >= 30;
    let pass = failed.is_empty() && small && t < Duration::from_secs(60);
    out.record(
        1,
        pass,
        format!(
            "definitional locus iff Ext1 vanishing: {} pairs, {} modules (dims <= 10: {small}), {:.1}s{}",
            rep.data["pairs"],
            corpus.len(),
            t.as_secs_f64(),
            summary(&failed)
        ),
    );
}

fn criterion_2(out: &mut Outcome, corpus: &Corpus, exts: &[Field]) {
    let rep = verify_sums(corpus, exts, 0).expect("sums suite");
    let failed = failing(&rep, &["sums.census_of_sum_is_intersection", "sums.pair_count_at_least_20"]);
    out.record(
        2,
        failed.is_empty(),
        format!("census of a sum is the intersection: {} pairs{}", rep.data["pairs"], summary(&failed)),
    );
}

fn criterion_3(out: &mut Outcome, corpus: &Corpus, exts: &[Field]) {
    let rep = verify_pipoint(corpus, exts, 0).expect("pipoint suite");
    let failed = failing(&rep, &["pipoint.adloc_equals_thick", "pipoint.ext_oracle_equals_thick"]);
    out.record(
        3,
        failed.is_empty(),
        format!("locus of chi_alpha equals Thick(alpha) over GF(2) and GF(4): {} points{}", rep.data["points"], summary(&failed)),
    );
}

fn criterion_4(out: &mut Outcome) {
    let start = Instant::now();
    let cases = [(2, 2, 1, 3usize), (2, 2, 2, 5), (3, 2, 1, 4)];
    let mut pass = true;
    let mut parts = Vec::new();
    for (p, r, n, expected) in cases {
        let g = GroupDesc::new(p, r).expect("group");
        let k = gf(p, n);
        let rep = reconstruct_proj(&CorpusConfig::new(g, &k, 0, 30), &k, 2).expect("reconstruct");
        let got = rep.data["join_irreducible_classes"].as_u64().unwrap_or(0) as usize;
        let ok = rep.passed() && got == expected;
        pass &= ok;
        let failed: Vec<String> = rep.assertions.iter().filter(|a| !a.pass).map(|a| a.name.clone()).collect();
        parts.push(format!("p={p} r={r} GF({p}^{n}) {got}/{expected}{}", summary(&failed)));
    }
    let t = start.elapsed();
    pass &= t < Duration::from_secs(300);
    out.record(4, pass, format!("join-irreducible classes match closed points: {} in {:.1}s", parts.join("; "), t.as_secs_f64()));
}

fn criterion_5(out: &mut Outcome, corpus: &Corpus, exts: &[Field]) {
    let rep = verify_point_modules(corpus, exts, 0).expect("pointmodule suite");
    let failed = failing(&rep, &["pointmodule.chi_point_module_equals_chi_alpha"]);
    let residue_two = rep.data["point_modules"]
        .as_array()
        .map(|ms| ms.iter().any(|m| m["residue_degrees"].as_array().is_some_and(|e| e.iter().any(|v| v == 2))))
        .unwrap_or(false);
    out.record(
        5,
        failed.is_empty() && residue_two,
        format!("chi of the point module equals chi_alpha over GF(2) and GF(4), residue degree 2 seen: {residue_two}{}", summary(&failed)),
    );
}

fn criterion_6(out: &mut Outcome, mixed: &Corpus, exts: &[Field]) {
    let names = [
        "pointmodule.thick_equivalence_iff_point_module_equivalence",
        "pointmodule.equivalence_iff_same_point_orbit",
    ];
    let mut failed = Vec::new();
    // points over K, with modules over K itself: orbits are single points
    for n in [1, 2] {
        let g = GroupDesc::new(2, 2).expect("group");
        let k = gf(2, n);
        let corpus = build_corpus(&CorpusConfig::new(g, &k, 0, 30)).expect("corpus");
        let rep = verify_point_modules(&corpus, &[k], 0).expect("pointmodule suite");
        failed.extend(failing(&rep, &names).into_iter().map(|s| format!("GF(2^{n}): {s}")));
    }
    // modules over GF(2): conjugate points are identified
    let rep = verify_point_modules(mixed, exts, 0).expect("pointmodule suite");
    failed.extend(failing(&rep, &names).into_iter().map(|s| format!("GF(2)-modules: {s}")));
    out.record(
        6,
        failed.is_empty(),
        format!("equal thick censuses iff equal point-module censuses iff equal points{}", summary(&failed)),
    );
}

fn criterion_7(out: &mut Outcome, corpus: &Corpus) {
    let rep = verify_cb_decomp(corpus, 0).expect("cb-decomp suite");
    let failed = failing(
        &rep,
        &[
            "cb.chi_of_double_is_chi",
            "cb.double_pairs_at_least_20",
            "cb.chi_of_distinct_sum_is_sum",
            "cb.distinct_pair_coverage",
            "cb.irreducible_parts_sum_to_chi",
            "cb.irreducible_parts_match_distinct_summands",
        ],
    );
    let distinct = rep.data["distinct_pairs"].as_u64().unwrap_or(0);
    out.record(
        7,
        failed.is_empty() && distinct >= 20,
        format!(
            "endolength of sums and irreducible decomposition round trip: {} double and {distinct} distinct pairs{}",
            rep.data["double_pairs"],
            summary(&failed)
        ),
    );
}

fn criterion_8(out: &mut Outcome, corpus: &Corpus) {
    let rep = verify_bcr(corpus, 4, (-6, 8), (-3, 3), 0).expect("bcr suite");
    let failed = failing(
        &rep,
        &["bcr.no_gap_violations", "bcr.pair_count_at_least_100", "bcr.tate_window_census_matches_ext1_census"],
    );
    out.record(
        8,
        failed.is_empty(),
        format!(
            "gap sweep r_gap=4 window [-6,8]: {} pairs, {} triggered, Tate census matches Ext1{}",
            rep.data["pairs"],
            rep.data["triggered"],
            summary(&failed)
        ),
    );
}

fn criterion_9(out: &mut Outcome, corpus: &Corpus) {
    let a = syzygy_tensor_identity(corpus, 0).expect("syzygy check");
    out.record(
        9,
        a.pass,
        format!("Omega(X) and X (x) Omega(k) agree up to projectives on {} modules", corpus.len()),
    );
}

fn criterion_10(out: &mut Outcome) {
    let cfg = SuiteConfig::default().corpus_config().expect("config");
    let a = build_corpus(&cfg).expect("corpus").canonical_json();
    let b = build_corpus(&cfg).expect("corpus").canonical_json();
    let exts = SuiteConfig::default().extension_fields().expect("fields");
    let ca = build_corpus(&cfg).expect("corpus");
    let cb = build_corpus(&cfg).expect("corpus");
    let ra = serde_json::to_string(&verify_sums(&ca, &exts, 0).expect("sums")).expect("json");
    let rb = serde_json::to_string(&verify_sums(&cb, &exts, 0).expect("sums")).expect("json");
    let g = GroupDesc::new(2, 2).expect("group");
    let k = gf(2, 1);
    let reconstruct = || {
        serde_json::to_string(&reconstruct_proj(&CorpusConfig::new(g, &k, 7, 20), &k, 2).expect("reconstruct"))
            .expect("json")
    };
    let pass = a == b && ra == rb && reconstruct() == reconstruct();
    out.record(10, pass, format!("identical seeds give identical corpus dumps ({} bytes) and reports", a.len()));
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut out = Outcome { lines: Vec::new() };
    let corpus = default_corpus();
    let exts = vec![gf(2, 1), gf(2, 2)];
    criterion_1(&mut out, &corpus, &exts);
    criterion_2(&mut out, &corpus, &exts);
    criterion_3(&mut out, &corpus, &exts);
    criterion_4(&mut out);
    criterion_5(&mut out, &corpus, &exts);
    criterion_6(&mut out, &corpus, &exts);
    criterion_7(&mut out, &corpus);
    criterion_8(&mut out, &corpus);
    criterion_9(&mut out, &corpus);
    criterion_10(&mut out);
    let passed = out.lines.iter().filter(|l| l.1).count();
    println!("acceptance: {passed}/{} criteria passed in {:.1}s", out.lines.len(), start.elapsed().as_secs_f64());
    if passed == out.lines.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
