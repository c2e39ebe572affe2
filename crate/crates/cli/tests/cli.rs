use std::process::{Command, Output};

use hesspave_core::{Family, PavingReport, RootSystem};
use serde_json::Value;

/// Runs the binary with whitespace-separated arguments.
fn hesspave(args: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hesspave"))
        .args(args.split_whitespace())
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn run_ok(args: &str) -> String {
    let out = hesspave(args);
    assert!(out.status.success(), "{args} failed: {}", stderr(&out));
    stdout(&out)
}

fn json(args: &str) -> Value {
    serde_json::from_str(&run_ok(&format!("{args} --format json"))).unwrap()
}

fn exit_code(args: &str) -> Option<i32> {
    hesspave(args).status.code()
}

fn poincare_line(text: &str) -> &str {
    text.lines()
        .find_map(|l| l.strip_prefix("Poincare polynomial: "))
        .expect("polynomial line")
}

#[test]
fn pave_peterson_a3() {
    let args = "pave --family A --rank 3 --nilpotent 4 --hess peterson";
    assert_eq!(poincare_line(&run_ok(args)), "1 + 3x^2 + 3x^4 + x^6");
    assert_eq!(
        json(args)["poincare"],
        serde_json::json!([1, 0, 3, 0, 3, 0, 1])
    );
}

#[test]
fn pave_zero_nilpotent_full_space() {
    let text = run_ok("pave --family A --rank 2 --nilpotent 1,1,1 --hess full");
    assert_eq!(poincare_line(&text), "1 + 2x^2 + 2x^4 + x^6");
}

#[test]
fn pave_regular_springer_fiber_c2() {
    let text = run_ok("pave --family C --rank 2 --regular-nilpotent --hess borel");
    assert_eq!(poincare_line(&text), "1");
}

#[test]
fn space_counts() {
    for (system, count) in [("A 2", 5), ("A 3", 14), ("B 2", 6)] {
        let (family, rank) = system.split_once(' ').unwrap();
        let v = json(&format!("spaces --family {family} --rank {rank}"));
        assert_eq!(v["count"], count, "{system}");
        assert_eq!(v["spaces"].as_array().unwrap().len(), count);
    }
    let text = run_ok("spaces --family A --rank 2");
    assert!(text.starts_with("A2: 5 Hessenberg spaces"));
}

#[test]
fn roots_b2_a1_d4() {
    let v = json("roots --family B --rank 2");
    assert_eq!(v["positive_roots"].as_array().unwrap().len(), 4);
    assert_eq!(v["rows"].as_array().unwrap().len(), 2);

    let v = json("roots --family A --rank 1");
    assert_eq!(
        v["positive_roots"],
        serde_json::json!([{"root": [1], "height": 1, "row": 1}])
    );

    let v = json("roots --family D --rank 4");
    assert_eq!(v["positive_roots"].as_array().unwrap().len(), 12);
    assert_eq!(v["vertical"], true);
    let in_rows: usize = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|r| r["heights"].as_array().unwrap())
        .map(|h| h.as_array().unwrap().len())
        .sum();
    assert_eq!(in_rows, 12);
}

#[test]
fn verify_type_a_all_spaces() {
    let text = run_ok("verify --family A --rank 2 --nilpotent 2,1 --all-hess");
    assert!(text.contains("formula/tableau/oracle"));
    assert!(text.trim_end().ends_with("PASS"));
}

#[test]
fn verify_d3_regular_nilpotent() {
    let text = run_ok("verify --family D --rank 3 --regular-nilpotent --hess peterson --seed 7");
    assert!(text.trim_end().ends_with("PASS"));
}

#[test]
fn corrupted_formula_is_reported() {
    let out = hesspave(
        "verify --family A --rank 2 --nilpotent 2,1 --hess peterson --corrupt-formula 2,1,3",
    );
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("pi = [2 1 3]"), "{}", stderr(&out));
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn pave_json_round_trips() {
    for args in [
        "pave -f A -r 3 --nilpotent 2,2 --hess h=2,3,4,4",
        "pave -f B -r 2 --regular-nilpotent --hess peterson",
        "pave -f A -r 2 --general a=1;b=1,1 --hess full",
        "pave -f B -r 2 --semisimple regular --hess roots=[[-1,0]]",
    ] {
        let text = run_ok(&format!("{args} --format json"));
        let report: PavingReport = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string_pretty(&report).unwrap() + "\n", text);
    }
    let b2 = RootSystem::from_parts(Family::B, 2).unwrap();
    let v = json("pave -f B -r 2 --semisimple regular --hess roots=[[-1,0]]");
    assert_eq!(v["M_H"].as_array().unwrap().len(), b2.num_positive() + 1);
}

#[test]
fn other_reports_round_trip() {
    for args in [
        "roots -f C -r 3",
        "spaces -f D -r 4",
        "verify -f C -r 2 --regular-nilpotent --all-hess",
        "tableaux -f A -r 3 --nilpotent 3,1 --hess peterson",
        "orbit -f A -r 3 --nilpotent 4 --window 4,3,2,1",
    ] {
        let v = json(args);
        let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
        assert_eq!(v, again);
    }
}

#[test]
fn same_seed_same_bytes() {
    let args = "verify -f B -r 3 --regular-nilpotent --all-hess --seed 11 --format json";
    let a = hesspave(args);
    assert!(a.status.success());
    assert_eq!(a.stdout, hesspave(&format!("{args} --jobs 1")).stdout);
    let pave = "pave -f D -r 4 --regular-nilpotent --hess peterson --format csv";
    assert_eq!(
        hesspave(pave).stdout,
        hesspave(&format!("{pave} -j 3")).stdout
    );
}

#[test]
fn csv_has_one_row_per_element() {
    for (system, order) in [("A 3", 24), ("B 3", 48), ("D 4", 192)] {
        let (family, rank) = system.split_once(' ').unwrap();
        let text = run_ok(&format!(
            "pave -f {family} -r {rank} --regular-nilpotent --hess peterson --format csv"
        ));
        let mut reader = csv::Reader::from_reader(text.as_bytes());
        assert_eq!(
            reader.headers().unwrap().iter().collect::<Vec<_>>(),
            ["window", "length", "nonempty", "dim"]
        );
        assert_eq!(reader.records().count(), order, "{system}");
    }
}

#[test]
fn orbit_reproduces_gl4_entry() {
    let text = run_ok("orbit -f A -r 3 --nilpotent 4 --window 4,3,2,1");
    assert!(
        text.contains("a1+a2+a3: a_12*a_23 - a_12*a_34 - a_13 + a_24"),
        "{text}"
    );
}

#[test]
fn tableaux_match_pave() {
    let v = json("tableaux -f A -r 3 --nilpotent 2,2 --hess h=2,3,4,4");
    let p = json("pave -f A -r 3 --nilpotent 2,2 --hess h=2,3,4,4");
    let nonempty: Vec<(&Value, &Value)> = p["cells"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["nonempty"] == true)
        .map(|c| (&c["pi"], &c["dim"]))
        .collect();
    let cells: Vec<(&Value, &Value)> = v["cells"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (&c["pi"], &c["dim"]))
        .collect();
    assert_eq!(cells, nonempty);
}

#[test]
fn exit_codes() {
    // Jordan data outside type A, bad h, wrong partition size, two operators.
    assert_eq!(
        exit_code("pave -f B -r 2 --nilpotent 2,1 --hess full"),
        Some(2)
    );
    assert_eq!(
        exit_code("pave -f A -r 2 --nilpotent 3 --hess h=1,1,3"),
        Some(2)
    );
    assert_eq!(
        exit_code("pave -f A -r 2 --nilpotent 2,1,1 --hess full"),
        Some(2)
    );
    assert_eq!(
        exit_code("pave -f A -r 2 --nilpotent 3 --regular-nilpotent --hess full"),
        Some(2)
    );
    assert_eq!(
        exit_code("verify -f A -r 9 --regular-nilpotent --hess peterson"),
        Some(4)
    );
    assert_eq!(exit_code("spaces -f D -r 8"), Some(4));
}

#[test]
fn help_states_rank_convention() {
    assert!(run_ok("pave --help").contains("GL_{n+1}"));
    assert!(run_ok("--help").contains("GL_{n+1}"));
}
