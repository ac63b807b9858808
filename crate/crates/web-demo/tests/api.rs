use serde_json::{json, Value};

use polyreal_web::{crystal_apply, explore, inequalities};

fn ok(response: String) -> Value {
    let v: Value = serde_json::from_str(&response).unwrap();
    assert!(v.get("error").is_none(), "{v}");
    v["ok"].clone()
}

fn error(response: String) -> String {
    let v: Value = serde_json::from_str(&response).unwrap();
    v["error"].as_str().expect("an error").to_string()
}

#[test]
fn inequalities_list() {
    let v =
        ok(inequalities(&json!({"family": "A1", "n": 3, "word": [2, 1, 3], "k": 2, "s": 1, "bound": 0}).to_string()));
    assert_eq!(v["forms"], json!(["x[1,2]"]));
    let v =
        ok(inequalities(&json!({"family": "A2", "n": 3, "word": [2, 1, 3], "k": 1, "s": 1, "bound": 4}).to_string()));
    assert!(v["forms"].as_array().unwrap().contains(&json!("x[2,3] - x[3,1]")), "{v}");
}

#[test]
fn bad_requests_report_errors() {
    assert!(error(inequalities("{")).starts_with("bad request"));
    let e = error(inequalities(
        &json!({"family": "A1", "n": 3, "word": [1, 1, 2, 3], "k": 1, "s": 1, "bound": 1}).to_string(),
    ));
    assert!(e.contains("consecutive positions"), "{e}");
    let e = error(crystal_apply(&json!({"family": "D2", "n": 3, "ops": "f1 x2"}).to_string()));
    assert!(e.contains("malformed"), "{e}");
    let e = error(explore(&json!({"family": "A1", "n": 3, "s": 1, "k": 1, "apply": 99}).to_string()));
    assert!(e.contains("99"), "{e}");
}

#[test]
fn explorer_walk_follows_the_predicted_deltas() {
    for family in ["A1", "C1", "A2", "D2"] {
        for k in 1..=3 {
            let base = json!({"family": family, "n": 3, "word": [2, 1, 3], "s": 2});
            let mut req = base.clone();
            req["k"] = json!(k);
            let mut state = ok(explore(&req.to_string()));
            assert_eq!(state["size"], 0);
            for _ in 0..4 {
                let moves = state["moves"].as_array().unwrap().clone();
                let pick = moves.iter().position(|m| m["adds"] == json!(true)).expect("an adding move");
                let mut req = base.clone();
                req["object"] = state["object"].clone();
                req["apply"] = json!(pick);
                let next = ok(explore(&req.to_string()));
                assert!(next["size"].as_u64() > state["size"].as_u64(), "{family} k={k}");
                assert_ne!(next["form"], state["form"]);
                state = next;
            }
        }
    }
}

#[test]
fn crystal_word() {
    let v = ok(crystal_apply(&json!({"family": "A1", "n": 2, "word": [1, 2], "ops": "f1 f1"}).to_string()));
    assert_eq!(v["coords"], json!([{"j": 1, "s": 1, "l": 1, "value": 2}]));
    let v = ok(crystal_apply(&json!({"family": "C1", "n": 3, "ops": "e3"}).to_string()));
    assert_eq!(v["annihilated"], true);
}
