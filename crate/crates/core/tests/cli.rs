use std::process::Command;

use serde_json::Value;

fn easyq(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_easyq")).args(args).output().unwrap();
    let code = out.status.code().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let json = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    (code, json, String::from_utf8(out.stderr).unwrap())
}

fn value_of(args: &[&str]) -> String {
    let (code, json, err) = easyq(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    json["value"]["value"].as_str().unwrap().to_string()
}

#[test]
fn documented_examples() {
    assert_eq!(value_of(&["moment", "--group", "S", "--n", "5", "--monomial", "u[1,1]"]), "1/5");
    assert_eq!(value_of(&["char", "--group", "O+", "--n", "4", "--s", "4", "--k", "4"]), "2");
    assert_eq!(value_of(&["char", "--category", "NC2", "--t", "1", "--k", "4"]), "2");
    assert_eq!(value_of(&["laws", "--derangements", "4"]), "3/8");
    assert_eq!(value_of(&["sphere", "--kind", "real", "--n", "3", "--indices", "1,1"]), "1/3");
    assert_eq!(value_of(&["pispace", "--group", "O", "--kappa", "1/2", "--lambda", "1/2", "--mu", "1", "--s", "2"]), "1/4");
    assert_eq!(value_of(&["oracle", "--engine", "sn", "--n", "4", "--monomial", "u[1,1] u[2,2]"]), "1/12");
}

#[test]
fn envelope_shape() {
    let (code, json, _) = easyq(&["gram", "--category", "NC2", "--legs", "4", "--n", "3"]);
    assert_eq!(code, 0);
    assert_eq!(json["command"][0], "gram");
    assert_eq!(json["inputHash"].as_str().unwrap().len(), 64);
    assert_eq!(json["provenance"]["kind"], "exact");
    assert_eq!(json["value"]["basisSize"], 2);
    assert_eq!(json["value"]["matrix"][0][0], "9");
    assert!(json["version"].is_string());

    let (_, again, _) = easyq(&["gram", "--category", "NC2", "--legs", "4", "--n", "3"]);
    assert_eq!(json["inputHash"], again["inputHash"]);
}

#[test]
fn monte_carlo_provenance_is_reproducible() {
    let args = ["oracle", "--engine", "mc", "--group", "O", "--n", "3", "--monomial", "u[1,1] u[1,1]", "--samples", "5000", "--seed", "3"];
    let (code, a, _) = easyq(&args);
    assert_eq!(code, 0);
    assert_eq!(a["provenance"]["kind"], "monte-carlo");
    assert_eq!(a["provenance"]["seed"], 3);
    assert_eq!(a["provenance"]["samples"], 5000);
    let (_, b, _) = easyq(&args);
    assert_eq!(a["value"], b["value"]);
}

#[test]
fn exit_codes() {
    assert_eq!(easyq(&["moment", "--group", "Q", "--n", "3", "--monomial", "u[1,1]"]).0, 2);
    assert_eq!(easyq(&["moment", "--n", "3"]).0, 2);
    assert_eq!(easyq(&["wg", "--group", "O", "--legs", "4", "--n", "1"]).0, 2);
    assert_eq!(easyq(&["wg", "--group", "O", "--legs", "4", "--n", "1", "--pseudo"]).0, 0);
    assert_eq!(easyq(&["verify", "no-such-check"]).0, 2);
    assert_eq!(easyq(&["verify", "derangements", "--quick"]).0, 0);
}

#[test]
fn closure_from_file() {
    let dir = std::env::temp_dir().join(format!("easyq-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("gens.txt");
    std::fs::write(&path, "# the crossing\noo|oo {u1,d2}{u2,d1}\n").unwrap();
    let (code, json, err) = easyq(&["closure", "--gen", path.to_str().unwrap(), "--bound", "4"]);
    assert_eq!(code, 0, "{err}");
    let parts = json["value"]["partitions"].as_array().unwrap();
    assert!(parts.iter().any(|p| p == "-|oooo {d1,d3}{d2,d4}"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn quick_verification_passes() {
    let (code, json, err) = easyq(&["verify", "all", "--quick"]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(json["value"]["failed"], 0);
    assert_eq!(json["value"]["checks"].as_array().unwrap().len(), 14);
}
