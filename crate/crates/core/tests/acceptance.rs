mod common;

use std::time::Instant;

use serde_json::Value;
use vinberg::catalog::{control_reports, emit_catalog, run_fixture, VerificationReport};
use vinberg::deformation::{sigma_cases, subregular_candidates};
use vinberg::DynkinType;

fn fixture(id: &str) -> (bool, String) {
    let r = run_fixture(id, 7).unwrap();
    (r.passing(), describe(&r))
}

fn describe(r: &VerificationReport) -> String {
    let fails: Vec<String> = r.checks.iter().filter(|c| !c.pass).map(|c| format!("{}: want {} got {}", c.name, c.expected, c.actual)).collect();
    if fails.is_empty() {
        format!("{} checks", r.checks.len())
    } else {
        fails.join("; ")
    }
}

fn criterion_6() -> (bool, String) {
    let small = common::small_gradings();
    let mut notes = Vec::new();
    let mut ok = true;
    let mut record = |name: &str, r: Result<String, String>| match r {
        Ok(s) => notes.push(format!("{} ok{}", name, s)),
        Err(e) => {
            ok = false;
            notes.push(format!("{} FAILED ({})", name, e));
        }
    };
    record("jacobi", common::jacobi_and_antisymmetry(1000, 11).map(|_| String::new()));
    record("graded closure", common::graded_closure(&small).map(|_| String::new()));
    record("rank balance", common::centralizer_balance(&small, 1000, 5).map(|_| " (1000 samples)".into()));
    record("z(e) = z(f)", common::triple_centralizers(&small, 7).map(|n| format!(" ({} triples)", n)));
    let runs = common::runs(&small, 7);
    record("slice weights", common::slice_properties(&runs).map(|_| String::new()));
    record("quotient dimension", common::quotient_dimension(&small, 3).map(|n| format!(" ({} stable)", n)));
    (ok, notes.join(", "))
}

fn main() {
    let mut lines: Vec<(usize, bool, String)> = Vec::new();

    let start = Instant::now();
    let cat = emit_catalog(30, true, 7).unwrap();
    let secs = start.elapsed().as_secs_f64();
    let rows = cat["rows"].as_array().unwrap().clone();
    let mismatched: Vec<&str> = rows.iter().filter(|r| r["table_match"] != Value::Bool(true)).map(|r| r["case"].as_str().unwrap()).collect();
    let g2_cases = sigma_cases(DynkinType::G, 2).into_iter().filter(|c| c.0 == 3).count();
    let g2_curves = subregular_candidates(DynkinType::G, 2, 3, 1).unwrap().len();
    let ok1 = mismatched.is_empty() && rows.len() == 29 && g2_cases == 2 && g2_curves == 1 && secs < 1800.0;
    lines.push((1, ok1, format!(
        "{} rows regenerated, mismatches {:?}, G2/3 {} sigma cases give {} curve, {:.1}s total",
        rows.len(), mismatched, g2_cases, g2_curves, secs
    )));

    let (ok, s) = fixture("F4/2");
    lines.push((2, ok, format!("F4/2 orbit listing: {}", s)));
    let (ok, s) = fixture("F4/8");
    lines.push((3, ok, format!("F4/8 orbit counts and curves: {}", s)));
    let (ok, s) = fixture("E8/5");
    lines.push((4, ok, format!("E8/5 weights, curve, degrees and discriminant: {}", s)));

    let controls = control_reports(7).unwrap();
    let lattice = &controls[0];
    lines.push((5, lattice.passing(), format!("coinvariants of the A4 x A4 element: {}", describe(lattice))));

    let (ok, s) = criterion_6();
    lines.push((6, ok, s));

    let flagged: Vec<&str> = rows.iter().filter(|r| r["cross_pipeline"].is_null()).map(|r| r["case"].as_str().unwrap()).collect();
    let disagree: Vec<&str> = rows.iter().filter(|r| r["cross_pipeline"] == Value::Bool(false)).map(|r| r["case"].as_str().unwrap()).collect();
    lines.push((7, disagree.is_empty(), format!(
        "{} cases compared, disagreements {:?}, search budget exceeded for {:?}",
        rows.len() - flagged.len(), disagree, flagged
    )));

    let again = control_reports(7).unwrap();
    let same = serde_json::to_value(&controls[1..].iter().map(|r| &r.checks).collect::<Vec<_>>()).unwrap()
        == serde_json::to_value(&again[1..].iter().map(|r| &r.checks).collect::<Vec<_>>()).unwrap();
    let ok8 = controls[1].passing() && controls[2].passing() && same;
    lines.push((8, ok8, format!("A2/2 inner: {}; E7/3: {}; repeatable {}", describe(&controls[1]), describe(&controls[2]), same)));

    for (n, ok, s) in &lines {
        println!("criterion {}: {} - {}", n, if *ok { "PASS" } else { "FAIL" }, s);
    }
    let failing = lines.iter().filter(|l| !l.1).count();
    println!("acceptance: {} of {} criteria pass", lines.len() - failing, lines.len());
    std::process::exit(failing as i32);
}
