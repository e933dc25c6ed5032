use std::path::Path;
use std::process::{Command, Output};

use semiinf::format::{fixture, AlgebraDocument};
use semiinf::sharp::build_sharp;
use semiinf::Rationals;
use serde_json::Value;

fn root() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR")).parent().unwrap().parent().unwrap()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semiinf")).args(args).current_dir(root()).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn verify_exit_codes() {
    for f in ["f0_point", "f1_dual_numbers", "f2_quantum_plane", "f3_truncated_cubic", "f4_path_a2"] {
        let o = run(&["verify", &format!("fixtures/{f}.json")]);
        assert_eq!(code(&o), 0, "{f}");
        assert!(stdout(&o).contains("conditions (1)(2)(3): PASS"));
    }
    let o = run(&["verify", "fixtures/corrupted/degree0_nilpotent.json"]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).contains("[witness: x]"));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ \"schema\": ").unwrap();
    assert_eq!(code(&run(&["verify", bad.to_str().unwrap()])), 1);
    assert_eq!(code(&run(&["verify", "no-such-algebra"])), 1);
}

#[test]
fn emitted_sharp_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["F0", "F1", "F2"] {
        let out = dir.path().join(format!("{name}.json"));
        let o = run(&["sharp", name, "--emit", out.to_str().unwrap()]);
        assert_eq!(code(&o), 0, "{}", stdout(&o));
        let loaded = AlgebraDocument::from_json(&std::fs::read_to_string(&out).unwrap())
            .unwrap()
            .algebra(&Rationals)
            .unwrap();
        let sh = build_sharp(&fixture(name).unwrap().setup(&Rationals).unwrap()).unwrap();
        assert_eq!(loaded.left_matrices(), sh.a_sharp.left_matrices(), "{name}");
        assert_eq!(loaded.basis(), sh.a_sharp.basis());
    }
    assert!(stdout(&run(&["sharp", "F1"])).contains("Frobenius: A# ≅ A: PASS"));
}

#[test]
fn dual_numbers_table_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.json");
    let o = run(&["semiinf", "F1", "--i", "-3:1", "--n", "-1:3", "--json-out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("oracle tate: agrees"));
    let v = read_json(&out);
    assert_eq!(v["schema"], "semiinf/cli/v1");
    assert_eq!(v["result"]["schema"], "semiinf/ext-table/v1");
    for e in v["result"]["entries"].as_array().unwrap() {
        let (i, n) = (e["i"].as_i64().unwrap(), e["n"].as_i64().unwrap());
        assert_eq!(e["dim"].as_u64().unwrap(), u64::from(i <= 0 && n == -i), "({i},{n})");
        assert!(e["truncations"].as_array().unwrap().len() >= 3);
    }
}

#[test]
fn json_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let bytes = |k: usize| {
        let out = dir.path().join(format!("{k}.json"));
        assert_eq!(code(&run(&["semiinf", "F2", "--json-out", out.to_str().unwrap()])), 0);
        std::fs::read(out).unwrap()
    };
    assert_eq!(bytes(0), bytes(1));
}

#[test]
fn strategies_agree_through_the_cli() {
    let dir = tempfile::tempdir().unwrap();
    let dims = |s: &str| -> Vec<Value> {
        let out = dir.path().join(format!("{s}.json"));
        let o = run(&["semiinf", "F2", "--strategy", s, "--oracle", "none", "--json-out", out.to_str().unwrap()]);
        assert_eq!(code(&o), 0);
        read_json(&out)["result"]["entries"].as_array().unwrap().iter().map(|e| e["dim"].clone()).collect()
    };
    assert_eq!(dims("induction-step"), dims("bar"));
}

#[test]
fn module_documents_and_failures() {
    let dir = tempfile::tempdir().unwrap();
    let k = dir.path().join("k.json");
    std::fs::write(
        &k,
        r#"{"schema": "semiinf/module/v1", "over": "A", "basis": [{"name": "v", "degree": 0}], "action": []}"#,
    )
    .unwrap();
    let ks = k.to_str().unwrap();
    let a = run(&["semiinf", "F1", "--x", ks, "--y", ks, "--i", "-2:0", "--n", "0:2", "--oracle", "tate"]);
    let b = run(&["semiinf", "F1", "--i", "-2:0", "--n", "0:2", "--oracle", "tate"]);
    assert_eq!(code(&a), 0);
    assert_eq!(stdout(&a), stdout(&b));
    assert_eq!(code(&run(&["semiinf", "F1", "--depth-cap", "2"])), 4);
    assert_eq!(code(&run(&["semiinf", "F1", "--i", "2:1"])), 1);
    assert_eq!(code(&run(&["semiinf", "degree0-nilpotent"])), 2);
}

#[test]
fn other_subcommands() {
    let o = run(&["resolve", "F1", "--module", "k", "--depth", "3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).matches("dim   2").count(), 4);
    let o = run(&["oracle", "F4", "--name", "finite-projdim"]);
    assert_eq!(code(&o), 0);
    let o = run(&["stablehom", "F3", "--x", "regular", "--n", "-2:2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("exact sequence check: PASS"));
}
