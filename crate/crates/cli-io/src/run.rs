//! The corpus-run subcommand: executes every acceptance property against
//! the bundled corpus and prints one row per criterion.

use std::collections::BTreeSet;
use std::time::Instant;

use num_traits::Zero;
use serde_json::{json, Value};

use crimping::{
    crimping_equivalent, crimping_weights, h_weight_table, limit_crimping, CrimpingVector, Parity,
    ValuedEntry,
};
use curve_model::{
    closed_limit_class, curves_isomorphic, is_maximally_degenerate, maximal_degeneration,
    stability, CurveError, ThreeValued, Variant,
};
use local_charts::{build_weight_system, chain_chamber_formula, chain_system, crosscheck_chart,
    crosscheck_system};
use vgit_core::{
    certified_box_bound, in_minus, in_plus, maximal_limit_masks, minus_locus_with_cap,
    plus_locus_with_cap, ChamberSign, Coordinate, MonomialSign, StratumUnion, SupportPattern,
    WeightSystem,
};

use crate::corpus::{curve_entries, find_curve, find_system, raw_sources, CurveEntry};
use crate::random;
use crate::report::{Report, EXIT_NEGATIVE, EXIT_OK};

pub struct Criterion {
    pub id: usize,
    pub name: &'static str,
    runner: fn() -> Result<String, String>,
}

impl Criterion {
    /// Execute the criterion: Ok carries the pass detail, Err the failure.
    pub fn run(&self) -> Result<String, String> {
        (self.runner)()
    }
}

/// The acceptance criteria in order; corpus-run prints one row per entry.
pub fn criteria() -> &'static [Criterion] {
    CRITERIA
}

const CRITERIA: &[Criterion] = &[
    Criterion { id: 1, name: "ramphoid worked example", runner: c1_ramphoid },
    Criterion { id: 2, name: "monomial-curve chambers", runner: c2_monomial },
    Criterion { id: 3, name: "chain-chamber formula", runner: c3_chains },
    Criterion { id: 4, name: "local chart crosscheck", runner: c4_crosscheck },
    Criterion { id: 5, name: "oracle equivalence", runner: c5_oracles },
    Criterion { id: 6, name: "stability truth table", runner: c6_truth_table },
    Criterion { id: 7, name: "closed-point characterization", runner: c7_closed_points },
    Criterion { id: 8, name: "degeneration properties", runner: c8_degeneration },
    Criterion { id: 9, name: "crimping limits and orbits", runner: c9_crimping },
    Criterion { id: 10, name: "corpus round-trip and determinism", runner: c10_corpus },
];

/// Run every criterion and assemble the summary. Any failure turns the
/// exit code negative. Wall-clock timings go to the text rendering only;
/// the JSON report is identical from run to run.
pub fn corpus_run() -> Report {
    let mut rows = Vec::new();
    let mut all_pass = true;
    let mut text = String::from("corpus-run\n");
    for c in CRITERIA {
        let start = Instant::now();
        let outcome = c.run();
        let seconds = start.elapsed().as_secs_f64();
        let (pass, detail) = match outcome {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        all_pass &= pass;
        text.push_str(&format!(
            "  criterion {:2}  {}  {} ({}) [{seconds:.3}s]\n",
            c.id,
            if pass { "pass" } else { "FAIL" },
            c.name,
            detail,
        ));
        rows.push(json!({
            "id": c.id,
            "name": c.name,
            "pass": pass,
            "detail": detail,
        }));
    }
    text.push_str(if all_pass { "all criteria pass" } else { "FAILURES present" });
    let json = json!({ "pass": all_pass, "criteria": rows });
    Report::new(if all_pass { EXIT_OK } else { EXIT_NEGATIVE }, json, text)
}

fn fail(msg: impl Into<String>) -> String {
    msg.into()
}

fn label_sets(ws: &WeightSystem, u: &StratumUnion) -> Vec<Vec<String>> {
    u.to_label_sets(ws)
}

fn strings(sets: &[&[&str]]) -> Vec<Vec<String>> {
    sets.iter()
        .map(|s| s.iter().map(|x| x.to_string()).collect())
        .collect()
}

/// Criterion 1: the versal chart of a nodally attached monomial ramphoid
/// tail has minus chamber V(s-block) and plus chamber V(n, c), quickly.
fn c1_ramphoid() -> Result<String, String> {
    let entry = find_system("ramphoid-versal").ok_or("corpus entry missing")?;
    let start = Instant::now();
    let minus = minus_locus_with_cap(&entry.system, entry.system.len()).map_err(|e| e.to_string())?;
    let plus = plus_locus_with_cap(&entry.system, entry.system.len()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed().as_secs_f64();
    let minus_sets = label_sets(&entry.system, &minus);
    let plus_sets = label_sets(&entry.system, &plus);
    if minus_sets != strings(&[&["s0", "s1", "s2", "s3"]]) {
        return Err(fail(format!("minus chamber is {minus_sets:?}")));
    }
    if plus_sets != strings(&[&["c", "n"]]) {
        return Err(fail(format!("plus chamber is {plus_sets:?}")));
    }
    if minus_sets != entry.minus || plus_sets != entry.plus {
        return Err(fail("frozen corpus strata disagree with the kernel"));
    }
    if elapsed >= 0.1 {
        return Err(fail(format!("took {elapsed:.3}s, bound is 0.1s")));
    }
    Ok("both chambers exact within the pinned 0.1s".to_string())
}

/// Criterion 2: even monomial-curve systems for m in 1..=3 have minus
/// chamber V(s-block) and plus chamber V(c-block), the whole space at m=1.
fn c2_monomial() -> Result<String, String> {
    for m in 1..=3usize {
        let entry =
            find_system(&format!("monomial-even-{m}")).ok_or("corpus entry missing")?;
        let minus = minus_locus_with_cap(&entry.system, entry.system.len())
            .map_err(|e| e.to_string())?;
        let plus =
            plus_locus_with_cap(&entry.system, entry.system.len()).map_err(|e| e.to_string())?;
        let s_block: Vec<String> = (0..2 * m).map(|l| format!("s{l}")).collect();
        let c_block: Vec<String> = (1..m).map(|l| format!("c{l}")).collect();
        let minus_sets = label_sets(&entry.system, &minus);
        let plus_sets = label_sets(&entry.system, &plus);
        if minus_sets != vec![s_block] {
            return Err(fail(format!("m={m}: minus chamber is {minus_sets:?}")));
        }
        if plus_sets != vec![c_block] {
            return Err(fail(format!("m={m}: plus chamber is {plus_sets:?}")));
        }
        if minus_sets != entry.minus || plus_sets != entry.plus {
            return Err(fail(format!("m={m}: frozen corpus strata disagree")));
        }
    }
    Ok("m = 1, 2, 3 all exact; plus chamber is the whole space at m = 1".to_string())
}

/// Criterion 3: the window formula matches the kernel for every chain with
/// r <= 5 node coordinates and m <= 2, within the time budget.
fn c3_chains() -> Result<String, String> {
    let start = Instant::now();
    for r in 1..=5usize {
        for m in 1..=2u32 {
            let system = chain_system(r, m).map_err(|e| e.to_string())?;
            let formula = chain_chamber_formula(r, m).map_err(|e| e.to_string())?;
            let kernel = plus_locus_with_cap(&system, system.len()).map_err(|e| e.to_string())?;
            if formula != kernel {
                return Err(fail(format!("r={r}, m={m}: formula disagrees with kernel")));
            }
        }
    }
    for name in ["chain-1-1", "chain-2-1", "chain-3-1", "chain-5-2"] {
        let entry = find_system(name).ok_or("corpus entry missing")?;
        let minus = minus_locus_with_cap(&entry.system, entry.system.len())
            .map_err(|e| e.to_string())?;
        let plus =
            plus_locus_with_cap(&entry.system, entry.system.len()).map_err(|e| e.to_string())?;
        if label_sets(&entry.system, &minus) != entry.minus
            || label_sets(&entry.system, &plus) != entry.plus
        {
            return Err(fail(format!("{name}: frozen corpus strata disagree")));
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    if elapsed >= 10.0 {
        return Err(fail(format!("took {elapsed:.2}s, bound is 10s")));
    }
    Ok("10 chains match stratum-for-stratum within the pinned 10s".to_string())
}

/// Criterion 4: every flagged maximally degenerate corpus curve passes the
/// chart crosscheck, the six decomposition cases are all covered, and two
/// perturbed systems fail as negative controls.
fn c4_crosscheck() -> Result<String, String> {
    let entries: Vec<CurveEntry> = curve_entries().into_iter().filter(|e| e.crosscheck).collect();
    if entries.len() < 12 {
        return Err(fail(format!("only {} crosscheck entries", entries.len())));
    }
    let mut cases = BTreeSet::new();
    let mut max_length = 0usize;
    for entry in &entries {
        let chart = build_weight_system(&entry.curve, entry.k).map_err(|e| e.to_string())?;
        let report = crosscheck_chart(&chart, None).map_err(|e| e.to_string())?;
        if !report.pass {
            return Err(fail(format!("{}: chart chambers disagree with kernel", entry.name)));
        }
        if entry.degenerate_case.as_deref() != Some(report.case.as_str()) {
            return Err(fail(format!("{}: case drifted to {}", entry.name, report.case)));
        }
        cases.insert(report.case.clone());
        let d = curve_model::canonical_decomposition(&entry.curve, entry.k)
            .map_err(|e| e.to_string())?;
        max_length = max_length.max(d.appendages.iter().map(|a| a.length).max().unwrap_or(0));
    }
    let all_cases = ["I", "I'", "I''", "II", "II'", "II''"];
    for c in all_cases {
        if !cases.contains(c) {
            return Err(fail(format!("case {c} not covered")));
        }
    }
    if max_length < 4 {
        return Err(fail(format!("longest link has length {max_length}, need 4")));
    }
    for name in ["ramphoid-tail-limit", "cyclic-two-bridges"] {
        let entry = find_curve(name).ok_or("corpus entry missing")?;
        let chart = build_weight_system(&entry.curve, entry.k).map_err(|e| e.to_string())?;
        let perturbed = chart.perturbed_system();
        let report = crosscheck_system(
            &perturbed,
            &chart.case.to_string(),
            &chart.expected_s,
            &chart.expected_h,
            None,
        )
        .map_err(|e| e.to_string())?;
        if report.pass {
            return Err(fail(format!("{name}: perturbed control unexpectedly passed")));
        }
    }
    for (curve_name, system_name) in [
        ("cuspidal-pair", "cuspidal-pair-chart"),
        ("cyclic-two-bridges", "cyclic-two-bridges-chart"),
    ] {
        let curve = find_curve(curve_name).ok_or("corpus entry missing")?;
        let frozen = find_system(system_name).ok_or("corpus entry missing")?;
        let chart = build_weight_system(&curve.curve, curve.k).map_err(|e| e.to_string())?;
        if chart.system != frozen.system {
            return Err(fail(format!("{system_name}: frozen chart system drifted")));
        }
        let minus = minus_locus_with_cap(&frozen.system, frozen.system.len())
            .map_err(|e| e.to_string())?;
        let plus = plus_locus_with_cap(&frozen.system, frozen.system.len())
            .map_err(|e| e.to_string())?;
        if label_sets(&frozen.system, &minus) != frozen.minus
            || label_sets(&frozen.system, &plus) != frozen.plus
        {
            return Err(fail(format!("{system_name}: frozen strata disagree")));
        }
    }
    Ok(format!(
        "{} curves pass, all six cases covered, links up to length {max_length}, 2 controls fail",
        entries.len(),
    ))
}

fn support_bits(bits: u64, n: usize) -> SupportPattern {
    SupportPattern::new((0..n).filter(|j| bits & (1 << j) != 0))
}

/// Criterion 5: on seeded random systems the LP oracle agrees with the
/// brute-force box enumeration support-for-support, returned witnesses
/// check out arithmetically, monomial obstructions never contradict the
/// LP, and the product and restriction laws hold.
fn c5_oracles() -> Result<String, String> {
    let mut rng = random::rng(0x414b_4355);
    let mut supports_checked = 0usize;
    for i in 0..200 {
        let ws = random::random_system(&mut rng);
        let n = ws.len();
        let bound = certified_box_bound(&ws);
        let masks_minus =
            maximal_limit_masks(&ws, ChamberSign::Minus, bound).map_err(|e| e.to_string())?;
        let masks_plus =
            maximal_limit_masks(&ws, ChamberSign::Plus, bound).map_err(|e| e.to_string())?;
        for bits in 0u64..(1 << n) {
            let support = support_bits(bits, n);
            let lp_minus = in_minus(&ws, &support).map_err(|e| e.to_string())?;
            let lp_plus = in_plus(&ws, &support).map_err(|e| e.to_string())?;
            let brute_minus = masks_minus.iter().any(|&m| bits & m == bits);
            let brute_plus = masks_plus.iter().any(|&m| bits & m == bits);
            if lp_minus.is_some() != brute_minus {
                return Err(fail(format!("system {i}: minus oracles split on {bits:b}")));
            }
            if lp_plus.is_some() != brute_plus {
                return Err(fail(format!("system {i}: plus oracles split on {bits:b}")));
            }
            if let Some(lam) = &lp_minus {
                let chi_ok = lam.pairing(ws.character()) >= 1;
                let w_ok = support
                    .indices()
                    .all(|j| lam.pairing(&ws.coords()[j].weights) >= 0);
                if !chi_ok || !w_ok {
                    return Err(fail(format!("system {i}: unsound minus witness")));
                }
            }
            supports_checked += 1;
        }
        for a in ws.semi_invariant_monomials(MonomialSign::Neg, 6) {
            let support = SupportPattern::new(
                a.iter().enumerate().filter(|(_, &e)| e > 0).map(|(j, _)| j),
            );
            if in_minus(&ws, &support).map_err(|e| e.to_string())?.is_some() {
                return Err(fail(format!("system {i}: negative monomial obstruction broken")));
            }
        }
        for a in ws.semi_invariant_monomials(MonomialSign::Pos, 6) {
            let support = SupportPattern::new(
                a.iter().enumerate().filter(|(_, &e)| e > 0).map(|(j, _)| j),
            );
            if in_plus(&ws, &support).map_err(|e| e.to_string())?.is_some() {
                return Err(fail(format!("system {i}: positive monomial obstruction broken")));
            }
        }
    }
    use rand::Rng;
    for i in 0..100 {
        let a = random::random_system(&mut rng);
        let b = random::random_system(&mut rng);
        let prod = a.product(&b);
        for _ in 0..24 {
            let bits_a = rng.gen_range(0u64..(1 << a.len()));
            let bits_b = rng.gen_range(0u64..(1 << b.len()));
            let sa = support_bits(bits_a, a.len());
            let sb = support_bits(bits_b, b.len());
            let sp = SupportPattern::new(
                (0..a.len())
                    .filter(|j| bits_a & (1 << j) != 0)
                    .chain((0..b.len()).filter(|j| bits_b & (1 << j) != 0).map(|j| j + a.len())),
            );
            let separate = in_minus(&a, &sa).map_err(|e| e.to_string())?.is_some()
                || in_minus(&b, &sb).map_err(|e| e.to_string())?.is_some();
            let joint = in_minus(&prod, &sp).map_err(|e| e.to_string())?.is_some();
            if joint != separate {
                return Err(fail(format!("pair {i}: product law broken")));
            }
        }
        let drop: BTreeSet<usize> = (0..a.len()).filter(|_| rng.gen_bool(0.4)).collect();
        let restricted = a.restrict(&drop).map_err(|e| e.to_string())?;
        let direct_minus =
            minus_locus_with_cap(&restricted, restricted.len().max(1)).map_err(|e| e.to_string())?;
        let mapped_minus = minus_locus_with_cap(&a, a.len()).map_err(|e| e.to_string())?.map_drop(&drop);
        if direct_minus != mapped_minus {
            return Err(fail(format!("pair {i}: minus restriction law broken")));
        }
        let direct_plus =
            plus_locus_with_cap(&restricted, restricted.len().max(1)).map_err(|e| e.to_string())?;
        let mapped_plus = plus_locus_with_cap(&a, a.len()).map_err(|e| e.to_string())?.map_drop(&drop);
        if direct_plus != mapped_plus {
            return Err(fail(format!("pair {i}: plus restriction law broken")));
        }
    }
    Ok(format!(
        "200 systems, {supports_checked} supports, obstructions and 100 law pairs agree",
    ))
}

/// Criterion 6: the excision truth table, row by row, plus agreement of
/// every frozen corpus stability triple with the live checker.
fn c6_truth_table() -> Result<String, String> {
    let rows: &[(&str, u8, Variant, bool)] = &[
        ("nodal-elliptic-tail", 2, Variant::Plus, false),
        ("nodal-elliptic-tail", 2, Variant::Plain, true),
        ("tacnodal-elliptic-tail", 3, Variant::Plain, false),
        ("nodal-elliptic-bridge", 3, Variant::Plus, false),
        ("nodal-elliptic-bridge", 3, Variant::Plain, true),
        ("declared-weierstrass-tail", 4, Variant::Plus, false),
        ("declared-weierstrass-tail", 4, Variant::Plain, true),
        ("cusp-attached-elliptic-tail", 3, Variant::Plain, true),
    ];
    for (name, k, variant, expected) in rows {
        let entry = find_curve(name).ok_or("corpus entry missing")?;
        let verdict = stability(&entry.curve, *k, *variant).map_err(|e| e.to_string())?;
        if verdict.pass != *expected {
            return Err(fail(format!(
                "{name} at k={k} ({variant}): expected pass={expected}, got {}",
                verdict.pass,
            )));
        }
    }
    for entry in curve_entries() {
        for (variant, frozen) in [
            (Variant::Minus, entry.stability.minus),
            (Variant::Plain, entry.stability.plain),
            (Variant::Plus, entry.stability.plus),
        ] {
            let live =
                stability(&entry.curve, entry.k, variant).map_err(|e| e.to_string())?.pass;
            if live != frozen {
                return Err(fail(format!(
                    "{}: frozen {variant} verdict drifted",
                    entry.name,
                )));
            }
        }
    }
    Ok(format!("{} truth-table rows and all frozen triples agree", rows.len()))
}

/// Criterion 7: in the one-pointed genus-one family, exactly the cuspidal
/// member is maximally degenerate at k = 2 and the other two degenerate
/// onto it.
fn c7_closed_points() -> Result<String, String> {
    let cuspidal = find_curve("marked-cuspidal").ok_or("corpus entry missing")?;
    let report = is_maximally_degenerate(&cuspidal.curve, 2).map_err(|e| e.to_string())?;
    if report.verdict != ThreeValued::Yes {
        return Err(fail("marked-cuspidal is not recognized as maximally degenerate"));
    }
    for name in ["smooth-one-pointed", "nodal-one-pointed"] {
        let entry = find_curve(name).ok_or("corpus entry missing")?;
        let report = is_maximally_degenerate(&entry.curve, 2).map_err(|e| e.to_string())?;
        if report.verdict != ThreeValued::No {
            return Err(fail(format!("{name} should not be maximally degenerate")));
        }
        let limit = maximal_degeneration(&entry.curve, 2).map_err(|e| e.to_string())?;
        if !curves_isomorphic(&limit, &cuspidal.curve).map_err(|e| e.to_string())? {
            return Err(fail(format!("{name} does not degenerate onto the cuspidal curve")));
        }
    }
    Ok("cuspidal member is the unique closed point; both others land on it".to_string())
}

/// Criterion 8: conservation, idempotence, and non-negative closedness of
/// maximal degeneration across the whole corpus; plain-unstable entries
/// must be refused.
fn c8_degeneration() -> Result<String, String> {
    let mut degenerated = 0usize;
    let mut refused = 0usize;
    for entry in curve_entries() {
        if !entry.stability.plain {
            match maximal_degeneration(&entry.curve, entry.k) {
                Err(CurveError::NotStable { .. }) => refused += 1,
                other => {
                    return Err(fail(format!(
                        "{}: expected a stability refusal, got {other:?}",
                        entry.name,
                    )))
                }
            }
            continue;
        }
        let limit = maximal_degeneration(&entry.curve, entry.k).map_err(|e| e.to_string())?;
        if limit.arithmetic_genus() != entry.curve.arithmetic_genus() {
            return Err(fail(format!("{}: genus not conserved", entry.name)));
        }
        if limit.marks().len() != entry.curve.marks().len() {
            return Err(fail(format!("{}: marks not conserved", entry.name)));
        }
        let again = maximal_degeneration(&limit, entry.k).map_err(|e| e.to_string())?;
        if again != limit {
            return Err(fail(format!("{}: degeneration is not idempotent", entry.name)));
        }
        let report = is_maximally_degenerate(&limit, entry.k).map_err(|e| e.to_string())?;
        if report.verdict == ThreeValued::No {
            return Err(fail(format!("{}: limit is rejected as non-degenerate", entry.name)));
        }
        let class = closed_limit_class(&entry.curve, entry.k).map_err(|e| e.to_string())?;
        if entry.degenerate_case.as_deref() != Some(class.case.to_string().as_str()) {
            return Err(fail(format!("{}: frozen decomposition case drifted", entry.name)));
        }
        degenerated += 1;
    }
    Ok(format!(
        "{degenerated} curves degenerate cleanly, refused {refused} unstable",
    ))
}

/// Criterion 9: the limit-crimping formula against an independent minimality
/// check, equivalence-relation laws for rescaling orbits, and the frozen
/// quotient-presentation weight tables.
fn c9_crimping() -> Result<String, String> {
    let mut rng = random::rng(0x4352_494d);
    for i in 0..50 {
        let valued = random::random_valued(&mut rng);
        let weights = crimping_weights(valued.m(), valued.parity());
        let (b, limit) = limit_crimping(&valued);
        if b < 0 {
            return Err(fail(format!("input {i}: negative exponent b = {b}")));
        }
        let extends = |bb: i64| {
            valued.entries().iter().zip(&weights).all(|(e, w)| match e {
                ValuedEntry::Zero => true,
                ValuedEntry::Finite { val, .. } => w * bb + val >= 0,
            })
        };
        if !extends(b) {
            return Err(fail(format!("input {i}: b = {b} does not extend")));
        }
        if b > 0 && extends(b - 1) {
            return Err(fail(format!("input {i}: b = {b} is not minimal")));
        }
        let expected: Vec<_> = valued
            .entries()
            .iter()
            .zip(&weights)
            .map(|(e, w)| match e {
                ValuedEntry::Finite { val, lead } if w * b + val == 0 => lead.clone(),
                _ => num_rational::BigRational::zero(),
            })
            .collect();
        let expected = CrimpingVector::new(valued.parity(), valued.m(), expected)
            .map_err(|e| e.to_string())?;
        if limit != expected {
            return Err(fail(format!("input {i}: limit vector disagrees")));
        }
    }
    for i in 0..50 {
        let a = random::random_vector(&mut rng);
        let lam = random::random_scale(&mut rng);
        let mu = random::random_scale(&mut rng);
        let b = a.rescale(&lam);
        let c = b.rescale(&mu);
        let refl = crimping_equivalent(&a, &a).map_err(|e| e.to_string())?;
        let ab = crimping_equivalent(&a, &b).map_err(|e| e.to_string())?;
        let ba = crimping_equivalent(&b, &a).map_err(|e| e.to_string())?;
        let ac = crimping_equivalent(&a, &c).map_err(|e| e.to_string())?;
        if refl.is_none() || ab.is_none() || ba.is_none() || ac.is_none() {
            return Err(fail(format!("orbit {i}: equivalence relation laws broken")));
        }
    }
    for m in 1..=3usize {
        let even_crimp: Vec<i64> = (1..m).map(|l| 2 * l as i64 - 1).collect();
        let odd_crimp: Vec<i64> = (1..m).map(|l| l as i64).collect();
        if crimping_weights(m, Parity::Even) != even_crimp {
            return Err(fail(format!("even crimping weights drifted at m = {m}")));
        }
        if crimping_weights(m, Parity::Odd) != odd_crimp {
            return Err(fail(format!("odd crimping weights drifted at m = {m}")));
        }
        let even_h: Vec<i64> = (1..=2 * m as i64).map(|j| -(2 * j + 2)).collect();
        let odd_h: Vec<i64> = (2..=2 * m as i64 + 2).map(|j| -j).collect();
        if h_weight_table(m, Parity::Even) != even_h {
            return Err(fail(format!("even versal weights drifted at m = {m}")));
        }
        if h_weight_table(m, Parity::Odd) != odd_h {
            return Err(fail(format!("odd versal weights drifted at m = {m}")));
        }
        for (tag, table) in [
            ("even-crimp", even_crimp),
            ("odd-crimp", odd_crimp),
            ("even-versal", even_h),
            ("odd-versal", odd_h),
        ] {
            let coords = table
                .iter()
                .enumerate()
                .map(|(j, &w)| Coordinate { label: format!("w{j}"), weights: vec![w] })
                .collect();
            let ws = WeightSystem::new(1, vec![1], coords).map_err(|e| e.to_string())?;
            if !ws.unique_closed_point().map_err(|e| e.to_string())? {
                return Err(fail(format!("{tag} table at m = {m} lost its closed point")));
            }
        }
    }
    Ok("50 limits verified minimal, 50 orbits equivalent, weight tables verbatim".to_string())
}

/// Criterion 10: every bundled document round-trips byte-for-byte, and a
/// report serialized twice is byte-identical. The cross-process half of
/// the determinism claim is exercised by the acceptance suite, which runs
/// the binary twice and diffs the bytes.
fn c10_corpus() -> Result<String, String> {
    let mut docs = 0usize;
    for src in raw_sources() {
        let v: Value = serde_json::from_str(src).map_err(|e| e.to_string())?;
        let emitted = format!(
            "{}\n",
            serde_json::to_string_pretty(&v).map_err(|e| e.to_string())?
        );
        if emitted != src {
            return Err(fail(format!("document {docs} does not round-trip byte-for-byte")));
        }
        docs += 1;
    }
    let sample = crate::commands::cmd_chambers(
        &serde_json::to_string(&find_system("ramphoid-versal").ok_or("corpus entry missing")?.system)
            .map_err(|e| e.to_string())?,
        None,
    );
    if sample.json_bytes() != sample.json_bytes() {
        return Err(fail("report serialization is not stable"));
    }
    let curves = curve_entries().len();
    Ok(format!("{docs} corpus documents round-trip ({curves} curves); reports serialize stably"))
}
