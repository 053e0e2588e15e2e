use std::process::{Command, Output};

fn multiself(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_multiself"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const REFERENCE: &str = "bundled:prisoners_dilemma_multiself";

#[test]
fn solve_lists_four_conflicted_equilibria() {
    let o = multiself(&["solve", REFERENCE]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for eq in ["(C,D,C,D)", "(C,D,D,C)", "(D,C,C,D)", "(D,C,D,C)"] {
        assert!(text.contains(&format!("{eq}  in two minds: P Q")), "{text}");
    }
    assert!(text.contains("Nash equilibria (4)"));
}

#[test]
fn table_matches_golden() {
    let o = multiself(&["table", REFERENCE]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), include_str!("golden/reference_table.txt"));
}

#[test]
fn machine_output_is_deterministic_and_parses() {
    let a = multiself(&["framing", REFERENCE, "--all-orders", "--format", "machine"]);
    let b = multiself(&["framing", REFERENCE, "--all-orders", "--format", "machine"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let doc = multiself::io::parse_export(&stdout(&a)).unwrap();
    assert_eq!(doc.equilibria.len(), 4);
    assert_eq!(doc.framing.unwrap().orders.len(), 24);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("analysis.json");
    let o = multiself(&[
        "solve",
        REFERENCE,
        "--format",
        "machine",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(
        multiself::io::parse_export(&written)
            .unwrap()
            .equilibria
            .len(),
        4
    );
}

#[test]
fn spe_reports_order_and_outcomes() {
    let o = multiself(&["spe", REFERENCE, "--order", "Pm,Pa,Qm,Qa"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(
        text.contains("subgame-perfect outcomes (4): (C,D,C,D) (C,D,D,C) (D,C,C,D) (D,C,D,C)"),
        "{text}"
    );
    assert_eq!(text.matches(" plays ").count(), 15);

    let o = multiself(&["spe", REFERENCE, "--order", "Pa,Pm,Qa,Qm"]);
    assert!(stdout(&o).contains("subgame-perfect outcomes (1): (D,C,D,C)"));
}

#[test]
fn framing_with_explicit_orders() {
    let o = multiself(&[
        "framing",
        REFERENCE,
        "--order",
        "Pm,Pa,Qm,Qa",
        "--order",
        "Pa,Pm,Qa,Qm",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(
        text.contains("orders differ: 2 distinct outcome sets across 2 orders"),
        "{text}"
    );
}

#[test]
fn guilt_override_changes_equilibria() {
    let o = multiself(&["solve", REFERENCE, "--guilt", "0", "--format", "machine"]);
    let doc = multiself::io::parse_export(&stdout(&o)).unwrap();
    assert_eq!(
        doc.spec.composite.unwrap().persons[0].traits[1].guilt,
        Some(0)
    );
    assert!(doc
        .equilibria
        .contains(&vec!["D".into(), "D".into(), "D".into(), "D".into()]));
}

#[test]
fn raw_spec_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pd.json");
    std::fs::write(&path, multiself::io::bundled::CLASSIC_PD_RAW).unwrap();
    let o = multiself(&["table", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("(D,D)   | [2* 2*]"));
    let o = multiself(&["validate", path.to_str().unwrap()]);
    assert_eq!(
        stdout(&o),
        "ok: 2 players, 4 profiles (Classic two-player Prisoners' Dilemma)\n"
    );
}

#[test]
fn best_responses_text() {
    let o = multiself(&["best-responses", REFERENCE]);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 32);
    assert!(text.contains("Pm   | Pa=C Qm=C Qa=C -> {D}"));
    assert!(text.contains("Pm   | Pa=D Qm=C Qa=D -> {C,D}"));
}

#[test]
fn exit_codes() {
    assert_eq!(multiself(&[]).status.code(), Some(1));
    assert_eq!(multiself(&["solve"]).status.code(), Some(1));
    assert_eq!(
        multiself(&["solve", REFERENCE, "--format", "xml"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        multiself(&["spe", REFERENCE, "--order", "Pm,Pm,Qm,Qa"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(multiself(&["framing", REFERENCE]).status.code(), Some(1));
    assert_eq!(multiself(&["solve", "bundled:nope"]).status.code(), Some(1));
    assert_eq!(multiself(&["--help"]).status.code(), Some(0));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        "{\"schema_version\": 1, \"scale_max\": 4, \"mystery\": true}",
    )
    .unwrap();
    let o = multiself(&["validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("mystery"));

    let merc_guilt = dir.path().join("guilt.json");
    std::fs::write(
        &merc_guilt,
        multiself::io::bundled::PRISONERS_DILEMMA_MULTISELF.replacen(
            "\"generator\": \"mercenary\"",
            "\"generator\": \"mercenary\", \"guilt\": 2",
            1,
        ),
    )
    .unwrap();
    let o = multiself(&["solve", merc_guilt.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("composite.persons[0].traits[0].guilt"));

    assert_eq!(
        multiself(&["solve", "/no/such/file.json"]).status.code(),
        Some(2)
    );
}
