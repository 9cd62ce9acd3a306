use std::fs;
use std::process::{Command, Output};

fn pgiso(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pgiso"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn tmp(name: &str, text: &str) -> String {
    let dir = std::env::temp_dir().join(format!("pgiso-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn construct_psi1() {
    let o = pgiso(&["construct", "--u", "4", "--h", "2", "--poly", "19"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), pgiso_core::fixtures::PSI1);
    let b = pgiso(&["construct", "--u", "4", "--h", "2", "--poly", "0b10011"]);
    assert_eq!(stdout(&b), stdout(&o));
}

#[test]
fn construct_errors() {
    let o = pgiso(&["construct", "--u", "4", "--h", "3", "--poly", "19"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("no balanced spread exists"));
    let o = pgiso(&["construct", "--u", "4", "--h", "2", "--poly", "31"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("primitive"), "{}", stderr(&o));
}

#[test]
fn construct_and_lift_agree() {
    let direct = pgiso(&[
        "construct",
        "--u",
        "4",
        "--h",
        "2",
        "--poly",
        "19",
        "--t0",
        "1",
    ]);
    let lifted = pgiso(&["star", "@psi1", "--t0", "1"]);
    assert_eq!(stdout(&direct), stdout(&lifted));
    assert_eq!(stdout(&lifted), pgiso_core::fixtures::OMEGA1);
    assert_eq!(
        pgiso(&["star", "@omega1", "--t0", "1"]).status.code(),
        Some(2)
    );
}

#[test]
fn check_reports_validity() {
    let o = pgiso(&["check", "@psi3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "VALID spread(u=6, h=2)");

    let broken = pgiso_core::fixtures::PSI1.replace("CD, AC, AD\n", "");
    let o = pgiso(&["check", &tmp("broken.txt", &broken)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("not covering"));

    let garbage = tmp("garbage.txt", "pg four\n");
    assert_eq!(pgiso(&["check", &garbage]).status.code(), Some(2));
    assert_eq!(
        pgiso(&["check", "/nonexistent/file"]).status.code(),
        Some(2)
    );
    assert_eq!(pgiso(&["check", "@nope"]).status.code(), Some(2));
}

#[test]
fn numeric_notation_round_trip() {
    let o = pgiso(&[
        "--numeric",
        "construct",
        "--u",
        "4",
        "--h",
        "2",
        "--poly",
        "19",
    ]);
    let text = stdout(&o);
    assert!(text.contains("8, 6, 14"));
    let path = tmp("numeric.txt", &text);
    let eq = pgiso(&["--numeric", "equiv", &path, "@psi1"]);
    assert_eq!(eq.status.code(), Some(0), "{}", stdout(&eq));
}

#[test]
fn equiv_prints_signatures() {
    let o = pgiso(&["equiv", "@psi1", "@psi2"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.starts_with("NOT EQUIVALENT\n"));
    assert!(out.contains("(595, 1798, 5781, 9361, 10621)"));
    assert!(out.contains("(715, 1798, 4921, 5781, 16813)"));

    let o = pgiso(&["equiv", "@omega1", "@omega2", "--repr", "bitstring"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("0x"));

    let partial = "pg 4\nkind spread 4 2\nAD, CD, AC\nABD, A, BD\nC, ABC, AB\nABCD, ACD, B\n";
    let o = pgiso(&["equiv", "@psi1", &tmp("partial.txt", partial)]);
    assert_eq!(o.status.code(), Some(2), "five flats are required");
    let shuffled = format!("{partial}BCD, D, BC\n");
    let o = pgiso(&["equiv", "@psi1", &tmp("shuffled.txt", &shuffled)]);
    assert_eq!(o.status.code(), Some(0), "{}{}", stdout(&o), stderr(&o));

    assert_eq!(pgiso(&["equiv", "@psi1", "@psi3"]).status.code(), Some(2));
}

#[test]
fn iso_reports_witness() {
    let o = pgiso(&["iso", "@psi1", "@psi2", "--deterministic"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("ISOMORPHIC\nwitness (verified):\n"));
    assert!(out.contains("image signature: (715, 1798, 4921, 5781, 16813)"));

    let o = pgiso(&["iso", "@psi3", "@psi3", "--deterministic"]);
    let out = stdout(&o);
    assert!(out.contains(
        "1 0 0 0 0 0\n0 1 0 0 0 0\n0 0 1 0 0 0\n0 0 0 1 0 0\n0 0 0 0 1 0\n0 0 0 0 0 1\n"
    ));
    assert!(out.contains("relabellings tried: 1\n"));
}

#[test]
fn iso_non_isomorphic_pair() {
    let o = pgiso(&["iso", "@psi3", "@psi4", "--no-prune", "--jobs", "2"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.starts_with("NON-ISOMORPHIC\n"));
    assert!(out.contains("relabellings tried: 1723680\n"));

    let o = Command::new(env!("CARGO_BIN_EXE_pgiso"))
        .args(["iso", "@psi3", "@psi4"])
        .env("PGISO_JOBS", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("relabellings pruned: "));
    assert_eq!(
        pgiso(&["iso", "@psi1", "@psi2", "--jobs", "0"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn iso_stars() {
    let o = pgiso(&["iso", "@omega1", "@omega2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o)
            .lines()
            .filter(|l| l.len() == 9 && l.chars().all(|c| "01 ".contains(c)))
            .count(),
        5
    );
    assert_eq!(pgiso(&["iso", "@omega1", "@psi1"]).status.code(), Some(2));
}

#[test]
fn counts_table() {
    let o = pgiso(&["counts", "--n", "5", "--t", "3", "--t0", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("|E|: 390241927692288000000"));
    assert!(out.contains("|C_5|: 9999360"));
    assert!(out.contains("naive comparisons: 3902169522089156935680000000"));

    let out = stdout(&pgiso(&["counts", "--n", "6", "--t", "4", "--t0", "2"]));
    assert!(out.contains("|C_4|: 20160"));
    assert!(out.contains("|D|: 720"));

    assert_eq!(
        pgiso(&["counts", "--n", "5", "--t", "3", "--t0", "3"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn classify_small_cases() {
    let o = pgiso(&["classify", "--u", "4", "--h", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("spreads: 56\nisomorphism classes: 1\n"));
    for (u, h) in [("3", "1"), ("3", "3")] {
        let out = stdout(&pgiso(&["classify", "--u", u, "--h", h]));
        assert!(out.contains("isomorphism classes: 1\n"));
    }
    let o = pgiso(&["classify", "--u", "6", "--h", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("131044"));
}

#[test]
fn usage_errors() {
    assert_eq!(pgiso(&[]).status.code(), Some(2));
    assert_eq!(pgiso(&["iso", "@psi1"]).status.code(), Some(2));
    assert_eq!(
        pgiso(&["construct", "--u", "4", "--h", "2", "--poly", "zz"])
            .status
            .code(),
        Some(2)
    );
}
