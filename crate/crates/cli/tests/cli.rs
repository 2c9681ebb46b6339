use std::process::{Command, Output};

fn vinberg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vinberg")).args(args).output().expect("run vinberg")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn roots_g2() {
    let o = vinberg(&["roots", "--type", "G2"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("12 roots"), "{}", s);
    assert!(s.contains("degrees [2, 6]"), "{}", s);
}

#[test]
fn grade_f4_involution() {
    let o = vinberg(&["grade", "--type", "F4", "--m", "2"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("pieces [24,28]"));
}

#[test]
fn grade_json() {
    let o = vinberg(&["--json", "grade", "--type", "G2", "--m", "3"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v.is_object());
}

#[test]
fn unstable_inner_a2() {
    let o = vinberg(&["stable-check", "--type", "A2", "--m", "2"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("no witness"));
}

#[test]
fn orbits_json_lists_labels() {
    let o = vinberg(&["--json", "orbits", "--type", "G2", "--m", "2"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v.as_array().unwrap();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r.get("label").is_some()));
}

#[test]
fn slice_from_element() {
    let o = vinberg(&["slice", "--type", "A2", "--m", "3", "--e", "1*r[1] + 1*r[2]"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("label [2,2]"), "{}", s);
    assert!(s.contains("slice weights [[6,0]]"), "{}", s);
}

#[test]
fn bad_element_is_an_error() {
    let o = vinberg(&["slice", "--type", "A2", "--m", "3", "--e", "r[2,2]"]);
    assert!(!o.status.success());
}

#[test]
fn coinvariants_of_default_element() {
    let o = vinberg(&["coinvariants"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("invariant factors 5 5"));
}

#[test]
fn verify_single_fixture() {
    let o = vinberg(&["verify-paper", "--case", "F4/2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn unknown_fixture_fails() {
    let o = vinberg(&["verify-paper", "--case", "X9/2"]);
    assert_ne!(o.status.code(), Some(0));
}
