mod common;

use std::process::Command;

use common::{check_case, covered_commands, ALL_COMMANDS, CASES};

#[test]
fn golden_outputs() {
    let failures: Vec<String> = CASES.iter().filter_map(|c| check_case(c).err()).collect();
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn every_command_has_a_golden() {
    let covered = covered_commands();
    for c in ALL_COMMANDS {
        assert!(covered.contains(c), "no successful golden case for {c}");
    }
}

#[test]
fn binary_exit_codes_and_stdout() {
    let bin = env!("CARGO_BIN_EXE_halfbranch");
    for name in ["sepideal_main", "blowup_limit", "member_parse_error", "sepideal_shared_center"] {
        let case = CASES.iter().find(|c| c.name == name).unwrap();
        let out = Command::new(bin)
            .args(case.args)
            .current_dir(env!("CARGO_MANIFEST_DIR"))
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(case.code), "{name}");
        let golden = std::fs::read_to_string(common::golden_path(name)).unwrap();
        assert_eq!(String::from_utf8(out.stdout).unwrap(), golden, "{name}");
    }
}

#[test]
fn stdin_input() {
    let alpha = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/main_alpha.json")).unwrap();
    let beta = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/main_beta.json");
    let args = ["halfbranch", "sepideal", "--alpha", "-", "--beta", beta];
    let out = halfbranch::cli::run(args, &mut alpha.as_bytes());
    assert_eq!(out.code, 0);
    let golden = std::fs::read_to_string(common::golden_path("sepideal_main")).unwrap();
    assert_eq!(out.stdout, golden);

    let twice = ["halfbranch", "sepideal", "--alpha", "-", "--beta", "-"];
    assert_eq!(halfbranch::cli::run(twice, &mut alpha.as_bytes()).code, 2);
}
