use std::process::{Command, Output};

const FIRST: &str = "41,13,5,3,19";
const SECOND: &str = "5,29,7,11,3";

fn mild2(args: &[&str]) -> Output {
    run(args, &[])
}

fn run(args: &[&str], env: &[(&str, &str)]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mild2"))
        .args(args)
        .env_remove("MILD2_MEMORY_CAP_MIB")
        .envs(env.iter().copied())
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn linking_table() {
    let o = mild2(&["linking", "--primes", FIRST]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        stdout(&o),
        "a = 00011\nell -1011\nell 1-101\nell 01-10\nell 101-1\nell 1100-\n"
    );
    let j = json(&mild2(&["--format", "json", "linking", "--primes", FIRST]));
    assert_eq!(j["a"], serde_json::json!([0, 0, 0, 1, 1]));
    assert_eq!(j["ell"][4], serde_json::json!([1, 1, 0, 0, 0]));
}

#[test]
fn golden_presentation_text() {
    let o = mild2(&["present", "--primes", FIRST]);
    assert_eq!(
        stdout(&o),
        "r_1 = [x1,x2][x1,x4][x1,x5]\n\
         r_2 = [x2,x1][x2,x3][x2,x5]\n\
         r_3 = [x3,x2][x3,x4]\n\
         r_4 = x4^2[x4,x1][x4,x3][x4,x5]\n\
         r_5 = x5^2[x5,x1][x5,x2]\n\
         r = x4x5\n"
    );
    let o = mild2(&["reduce", "--primes", SECOND]);
    assert_eq!(
        stdout(&o),
        "r_1' = [x1,x4]\n\
         r_2' = [x2,x3]\n\
         r_3' = x3^2[x3,x1][x3,x4]\n\
         r_4' = x4^2[x4,x2][x4,x3]\n"
    );
}

#[test]
fn check_mild_exit_codes() {
    let o = mild2(&["check-mild", "--primes", FIRST]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("verdict: mild\ncriterion: circuit\nwitness: S={1,3} Sp={2,4}\n"));

    let j = json(&mild2(&["--format", "json", "check-mild", "--primes", SECOND]));
    assert_eq!(j["verdict"], "mild");
    assert_eq!(j["criterion"], "rank");
    assert_eq!(j["witness"]["Sp"], serde_json::json!([3, 4]));

    let o = mild2(&["check-mild", "--primes", "17,13,29"]);
    assert_eq!(code(&o), 4);
    assert!(stdout(&o).contains("verdict: inapplicable"));

    let o = mild2(&["check-mild", "--relators", "[x1,x2];[x1,x3];[x2,x3];x1^2;x2^2", "--d", "3"]);
    assert_eq!(code(&o), 3);
    assert!(stdout(&o).contains("verdict: not_shown"));
}

#[test]
fn check_mild_with_oracle() {
    let j = json(&mild2(&[
        "--format", "json", "check-mild", "--primes", FIRST, "--oracle-depth", "5", "--oracle-ring", "f2pi",
    ]));
    assert_eq!(j["oracle"]["status"], "match");
    assert_eq!(j["oracle"]["ring"], "F2[pi]");
    assert_eq!(j["oracle"]["quotient_dims"], serde_json::json!([1, 5, 17, 49, 129, 321]));
}

#[test]
fn input_errors_exit_two() {
    for args in [
        vec!["linking", "--primes", "4,9"],
        vec!["linking", "--primes", "3,3"],
        vec!["present", "--relators", "[x1,x9]", "--d", "2"],
        vec!["dims", "--d", "2", "--m", "2", "--kind", "reduced", "--max", "5"],
        vec!["check-mild", "--input", "/nonexistent/presentation.json"],
        vec!["oracle", "--primes", FIRST, "--memory-cap-mib", "0"],
    ] {
        let o = mild2(&args);
        assert_eq!(code(&o), 2, "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn json_round_trip_through_files() {
    let dir = std::env::temp_dir().join(format!("mild2-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let presented = dir.join("presented.json");
    let reduced = dir.join("reduced.json");
    std::fs::write(&presented, &mild2(&["--format", "json", "present", "--primes", SECOND]).stdout).unwrap();
    std::fs::write(&reduced, &mild2(&["--format", "json", "reduce", "--primes", SECOND]).stdout).unwrap();

    let again = mild2(&["present", "--input", presented.to_str().unwrap()]);
    assert_eq!(stdout(&again), stdout(&mild2(&["present", "--primes", SECOND])));
    for file in [&presented, &reduced] {
        let o = mild2(&["--format", "json", "check-mild", "--input", file.to_str().unwrap()]);
        assert_eq!(code(&o), 0);
        assert_eq!(json(&o)["witness"]["Sp"], serde_json::json!([3, 4]));
    }
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn oracle_outcomes() {
    let o = mild2(&["oracle", "--primes", FIRST, "--max", "5"]);
    assert_eq!(code(&o), 0);
    let o = mild2(&["oracle", "--relators", "[x1,x2];x1^2", "--d", "2", "--max", "5"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("mismatch at degree 3"));
}

#[test]
fn memory_cap_from_environment() {
    let o = run(&["oracle", "--primes", FIRST, "--max", "9"], &[("MILD2_MEMORY_CAP_MIB", "1")]);
    assert_eq!(code(&o), 5);
    assert!(String::from_utf8_lossy(&o.stderr).contains("memory guard"));
    let o = run(
        &["oracle", "--primes", FIRST, "--max", "5", "--memory-cap-mib", "64"],
        &[("MILD2_MEMORY_CAP_MIB", "1")],
    );
    assert_eq!(code(&o), 0);
}

#[test]
fn augmentation() {
    let j = json(&mild2(&["--format", "json", "augment", "--seed", "13,3"]));
    assert_eq!(j["S"], serde_json::json!([5, 13, 41, 3, 23]));
    assert_eq!(j["attempts"], 1);
    let o = mild2(&["augment", "--seed", "13,3", "--bound", "10"]);
    assert_eq!(code(&o), 5);
}

#[test]
fn series_and_dimensions() {
    let j = json(&mild2(&["--format", "json", "dims", "--d", "4", "--m", "3", "--kind", "lower-central", "--max", "4"]));
    assert_eq!(j["kind"], "lower_central_a");
    assert_eq!(j["values"], serde_json::json!([[1, 4], [2, 7], [3, 15], [4, 33]]));
    let o = mild2(&["series", "--d", "4", "--m", "3", "--kind", "cent-check", "--max", "10"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn selftest_passes() {
    let o = mild2(&["selftest"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("PASS")).count(), 9);
}
