use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use gecs::cli::{self, SetKind, EXIT_FAIL, EXIT_OK, EXIT_USAGE};
use tempfile::TempDir;

const REPETITION_PCM: &str = "10001\n01100\n01111\n01010\n";

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, body).unwrap();
    path
}

fn bin(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_gecs")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn genset_arm_writes_set_file() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("a32.txt");
    let res = cli::cmd_genset(SetKind::Arm, 3, Some(2), Some(&out));
    assert_eq!(res.exit_code, EXIT_OK);
    assert_eq!(res.stdout, "size: 3\n");
    assert_eq!(fs::read_to_string(&out).unwrap(), "100\n110\n101\n");
}

#[test]
fn genset_weber_and_bad_parameters() {
    let res = cli::cmd_genset(SetKind::Weber, 3, None, None);
    assert_eq!(res.exit_code, EXIT_OK);
    assert!(res.stdout.starts_with("size: 4\n"));
    assert_eq!(cli::cmd_genset(SetKind::Weber, 3, Some(2), None).exit_code, EXIT_USAGE);
    assert_eq!(cli::cmd_genset(SetKind::Arm, 2, Some(3), None).exit_code, EXIT_USAGE);
    assert_eq!(cli::cmd_genset(SetKind::Arm, 3, None, None).exit_code, EXIT_USAGE);
}

#[test]
fn verify_pass_fail_and_format_error() {
    let dir = TempDir::new().unwrap();
    let good = write(&dir, "good.txt", "100\n110\n101\n");
    let res = cli::cmd_verify(&good, Some(3), 2, 1, false);
    assert_eq!(res.exit_code, EXIT_OK);
    assert!(res.stdout.contains("status: PASS"), "{}", res.stdout);
    assert!(res.stdout.contains("matrices_checked: 21"));

    let bad = write(&dir, "bad.txt", "110\n101\n011\n");
    let res = cli::cmd_verify(&bad, None, 2, 1, false);
    assert_eq!(res.exit_code, EXIT_FAIL);
    assert!(res.stdout.contains("status: FAIL"));
    assert!(res.stdout.contains("counterexample: 010 101"), "{}", res.stdout);

    let ragged = write(&dir, "ragged.txt", "100\n11\n");
    let res = cli::cmd_verify(&ragged, None, 2, 1, false);
    assert_eq!(res.exit_code, EXIT_USAGE);
    assert!(res.stderr.starts_with("error:"));

    let missing = dir.path().join("nope.txt");
    assert_eq!(cli::cmd_verify(&missing, None, 2, 1, false).exit_code, EXIT_USAGE);
}

#[test]
fn search_outcomes() {
    let res = cli::cmd_search(5, 2, None, 1, 20);
    assert_eq!(res.exit_code, EXIT_OK);
    assert!(res.stdout.starts_with("budget: 10\nfound: yes\n"), "{}", res.stdout);
    let body: String = res.stdout.lines().skip(2).map(|l| format!("{l}\n")).collect();
    let found = gecs::GenericSet::parse(&body, Some(5)).unwrap();
    assert!(found.len() <= 10);
    assert!(gecs::verifier::verify_generic(&found, 5, 2).unwrap().passed());

    let res = cli::cmd_search(3, 1, Some(1), 0, 5);
    assert_eq!(res.exit_code, EXIT_FAIL);
    assert!(res.stdout.contains("found: no"));

    let res = cli::cmd_search(1, 1, Some(1), 0, 5);
    assert_eq!(res.exit_code, EXIT_OK);
    assert!(res.stdout.ends_with("found: yes\n1\n"), "{}", res.stdout);
}

#[test]
fn checks_from_set_and_pcm() {
    let dir = TempDir::new().unwrap();
    let pcm = write(&dir, "pcm.txt", REPETITION_PCM);
    let units = write(&dir, "units.txt", "1000\n0100\n0010\n0001\n");
    let out = dir.path().join("checks.txt");
    let res = cli::cmd_checks(&units, &pcm, Some(&out));
    assert_eq!(res.exit_code, EXIT_OK);
    assert_eq!(res.stdout, "checks: 4\n");
    let mut rows: Vec<String> = fs::read_to_string(&out).unwrap().lines().map(String::from).collect();
    rows.sort();
    let mut expected: Vec<String> = REPETITION_PCM.lines().map(String::from).collect();
    expected.sort();
    assert_eq!(rows, expected);

    let hamming: String = {
        let cols: Vec<u32> = (1..16).collect();
        (0..4)
            .map(|i| cols.iter().map(|c| if c >> i & 1 == 1 { '1' } else { '0' }).collect::<String>() + "\n")
            .collect()
    };
    let h4 = write(&dir, "h4.txt", &hamming);
    let a43 = dir.path().join("a43.txt");
    assert_eq!(cli::cmd_genset(SetKind::Arm, 4, Some(3), Some(&a43)).exit_code, EXIT_OK);
    let res = cli::cmd_checks(&a43, &h4, None);
    assert_eq!(res.exit_code, EXIT_OK);
    assert!(res.stdout.starts_with("checks: 7\n"), "{}", res.stdout);

    let deficient = write(&dir, "deficient.txt", "110\n110\n");
    let set = write(&dir, "set2.txt", "10\n01\n");
    assert_eq!(cli::cmd_checks(&set, &deficient, None).exit_code, EXIT_USAGE);
}

#[test]
fn decode_trace_and_exit_codes() {
    let dir = TempDir::new().unwrap();
    let checks = write(&dir, "checks.txt", REPETITION_PCM);
    let res = cli::cmd_decode(&checks, "????0");
    assert_eq!(res.exit_code, EXIT_FAIL);
    assert_eq!(res.stdout, "step 1: check 1 resolves pos 1 = 0\nstuck: {2,3,4}\n");

    let res = cli::cmd_decode(&checks, "00000");
    assert_eq!(res.exit_code, EXIT_OK);
    assert_eq!(res.stdout, "decoded: 00000\n");

    let res = cli::cmd_decode(&checks, "1?1?1");
    assert_eq!(res.exit_code, EXIT_OK);
    assert!(res.stdout.ends_with("decoded: 11111\n"), "{}", res.stdout);

    assert_eq!(cli::cmd_decode(&checks, "0?x00").exit_code, EXIT_USAGE);
    assert_eq!(cli::cmd_decode(&checks, "0?0").exit_code, EXIT_USAGE);
}

#[test]
fn stopping_sets_listing() {
    let dir = TempDir::new().unwrap();
    let checks = write(&dir, "checks.txt", REPETITION_PCM);
    let pcm = write(&dir, "pcm.txt", REPETITION_PCM);
    let res = cli::cmd_stopping(&checks, 3, Some(&pcm));
    assert_eq!(res.exit_code, EXIT_OK);
    assert!(res.stdout.starts_with("count: "));
    assert!(res.stdout.lines().any(|l| l == "{2,3,4} correctable"), "{}", res.stdout);

    let identity = write(&dir, "id.txt", "100\n010\n001\n");
    assert_eq!(cli::cmd_stopping(&identity, 3, None).stdout, "count: 0\n");
    assert_eq!(cli::cmd_stopping(&checks, 0, None).stdout, "count: 0\n");

    let wide = write(&dir, "wide.txt", &format!("{}\n", "1".repeat(21)));
    assert_eq!(cli::cmd_stopping(&wide, 2, None).exit_code, EXIT_USAGE);
}

#[test]
fn bounds_report() {
    let res = cli::cmd_bounds(10, 3);
    assert_eq!(res.exit_code, EXIT_OK);
    assert!(res.stdout.contains("lower: 10\n"));
    assert!(res.stdout.contains("upper_coefficient: 4.424"));
    assert!(res.stdout.contains("upper: 45\n"));
    assert!(res.stdout.contains("construction_size: 46\n"), "{}", res.stdout);
    assert_eq!(cli::cmd_bounds(2, 3).exit_code, EXIT_USAGE);
}

#[test]
fn binary_pipeline() {
    let dir = TempDir::new().unwrap();
    let set = dir.path().join("a.txt");
    let (code, stdout, _) = bin(&["genset", "arm", "--r", "5", "--m", "3", "--out", path_str(&set)]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "size: 11\n");

    let (code, stdout, _) = bin(&["verify", path_str(&set), "--m", "3", "--jobs", "2"]);
    assert_eq!(code, 0, "{stdout}");
    assert!(stdout.contains("status: PASS"));

    let (code, stdout, _) = bin(&["verify", path_str(&set), "--m", "4"]);
    assert_eq!(code, 1);
    assert!(stdout.contains("counterexample:"));

    let (code, _, stderr) = bin(&["verify", path_str(&set)]);
    assert_eq!(code, 2, "{stderr}");

    let (code, stdout, _) = bin(&["--help"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("genset"));

    let (code, _, _) = bin(&["frobnicate"]);
    assert_eq!(code, 2);
}

#[test]
fn binary_round_trip_through_checks_and_decode() {
    let dir = TempDir::new().unwrap();
    let set = dir.path().join("units.txt");
    fs::write(&set, "1000\n0100\n0010\n0001\n").unwrap();
    let pcm = write(&dir, "pcm.txt", REPETITION_PCM);
    let checks = dir.path().join("checks.txt");
    let (code, _, stderr) =
        bin(&["checks", path_str(&set), path_str(&pcm), "--out", path_str(&checks)]);
    assert_eq!(code, 0, "{stderr}");
    let (code, stdout, _) = bin(&["decode", path_str(&checks), "????0"]);
    assert_eq!(code, 1);
    assert!(stdout.ends_with("stuck: {2,3,4}\n"));
    let (code, stdout, _) = bin(&["stopping", path_str(&checks), "--max-size", "3"]);
    assert_eq!(code, 0);
    assert!(stdout.lines().any(|l| l == "{2,3,4}"), "{stdout}");
}
