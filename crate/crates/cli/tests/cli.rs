use std::process::Command;

use serde_json::Value;
use supell::field::Field;
use supell::json::{FromJson, ToJson};
use supell::simplicity::SimplicityReport;
use supell::units::DjkmCtx;

fn run(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_supell")).args(args).output().expect("binary runs");
    let text = String::from_utf8(out.stdout).expect("utf-8");
    let v = serde_json::from_str(text.trim()).unwrap_or_else(|e| panic!("{e}: {text}"));
    (out.status.code().expect("exit code"), v)
}

fn ok(args: &[&str]) -> Value {
    let (code, v) = run(args);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["ok"], true);
    assert_eq!(v["schema"], "supell/1");
    let certs = v["certificates"].as_array().unwrap();
    assert!(!certs.is_empty());
    assert!(certs.iter().all(|c| c["verified"] == true), "{v}");
    v["result"].clone()
}

const P_L1_N2: &str = r#"{"l":1,"roots":["1","-1"],"scale":"1"}"#;

#[test]
fn simplicity_of_a_squarefree_curve() {
    let r = ok(&["simplicity", "--m", "2", "--P", P_L1_N2, "--variant", "R"]);
    assert_eq!(r["simple"], true);
}

#[test]
fn simplicity_report_round_trips() {
    let r = ok(&["simplicity", "--m", "2", "--P", "[0,0,1]"]);
    assert_eq!(r["simple"], false);
    assert_eq!(r["reason"], "MonomialGcdTrap");
    let ctx = supell::ring::AlgebraCtx::new(2, supell::poly::Poly::from_ints(&Field::rationals(), &[0, 0, 1]), supell::ring::Variant::R).unwrap();
    let report = SimplicityReport::from_json(&ctx, &r).unwrap();
    assert_eq!(report.to_json(), r);
}

#[test]
fn centext_dimension_and_basis() {
    assert_eq!(ok(&["centext", "--dim", "--m", "2", "--P", P_L1_N2])["dim"], 3);
    assert_eq!(ok(&["centext", "--dim", "--m", "3", "--P", P_L1_N2])["dim"], 5);
    let basis = ok(&["centext", "--basis", "--m", "2", "--P", P_L1_N2]);
    assert_eq!(basis["labels"].as_array().unwrap().len(), 3);
    assert_eq!(ok(&["centext", "--dim", "--m", "3", "--P", "[-1,0,1]", "--variant", "S"])["dim"], 2);
}

#[test]
fn centext_cocycle_is_a_label_map() {
    let f = r#"{"comps":[{"lowdeg":-2,"coeffs":["1","0","3"]},["0","1"]]}"#;
    let g = r#"{"comps":[["1","2"],{"lowdeg":-1,"coeffs":["1"]}]}"#;
    let r = ok(&["centext", "--cocycle", f, g, "--m", "2", "--P", P_L1_N2]);
    let labels = ok(&["centext", "--basis", "--m", "2", "--P", P_L1_N2])["labels"].clone();
    for key in r.as_object().unwrap().keys() {
        assert!(labels.as_array().unwrap().iter().any(|l| l == key), "{key}");
    }
    let swapped = ok(&["centext", "--cocycle", g, f, "--m", "2", "--P", P_L1_N2]);
    for (k, v) in r.as_object().unwrap() {
        let neg = swapped[k].as_str().unwrap();
        let v = v.as_str().unwrap();
        assert_eq!(neg.trim_start_matches('-'), v.trim_start_matches('-'));
        assert_ne!(neg.starts_with('-'), v.starts_with('-'));
    }
}

#[test]
fn pell_finds_chebyshev_unit() {
    for cmd in [&["pell", "--P", "[-1,0,1]"][..], &["units", "--pell", "[-1,0,1]", "--bound", "3"]] {
        let r = ok(cmd);
        assert_eq!(r["status"], "Found");
        assert_eq!(r["solution"]["f"], serde_json::json!(["0", "1"]));
        assert_eq!(r["solution"]["g"], serde_json::json!(["1"]));
    }
    assert_eq!(ok(&["pell", "--P", "[0,-1,0,1]"])["reason"], "OddDegree");
}

#[test]
fn djkm_factors_a_word() {
    let field = Field::quadratic(2).unwrap();
    let dctx = DjkmCtx::new(field.from_int(3)).unwrap();
    let x = (dctx.lambda[1].pow_signed(2).unwrap() * dctx.lambda[2].pow_signed(-1).unwrap()).shift(3).scale(&field.from_int(5));
    let xs = serde_json::to_string(&x.to_json()).unwrap();
    let r = ok(&["--field", "[-2,0,1]", "djkm", "--beta", "\"3\"", "--factor", &xs]);
    assert_eq!((r["e_t"].as_i64(), r["e_1"].as_i64(), r["e_2"].as_i64()), (Some(3), Some(2), Some(-1)));
    assert_eq!(r["scalar"], serde_json::json!(["5", "0"]));
}

#[test]
fn iso_and_aut() {
    let r = ok(&["iso", "--a", r#"["1","2"]"#, "--b", r#"["2","4"]"#]);
    assert_eq!(r["isomorphic"], true);
    assert_eq!(ok(&["iso", "--a", r#"["1","2"]"#, "--b", r#"["1","3"]"#])["isomorphic"], false);
    let r = ok(&["aut", "--roots", r#"["1","-1"]"#]);
    assert_eq!((r["group"].as_str(), r["k"].as_u64()), (Some("DkTimesZ2"), Some(2)));
    let r = ok(&["aut", "--roots", r#"["1","2","3","4"]"#]);
    assert_eq!((r["group"].as_str(), r["k"].as_u64()), (Some("ZkTimesZ2"), Some(1)));
    let r = ok(&["--field", "[1,0,1]", "aut", "--roots", r#"["1","-1",["0","1"],["0","-1"]]"#]);
    assert_eq!((r["group"].as_str(), r["k"].as_u64()), (Some("DkTimesZ2"), Some(4)));
}

#[test]
fn oracle_subcommands() {
    assert_eq!(ok(&["oracle", "cokernel-dim", "--m", "2", "--P", P_L1_N2])["dim"], 3);
    let sols = ok(&["oracle", "pell", "--P", "[-1,0,1]", "--gmax", "2"])["solutions"].clone();
    assert_eq!(sols.as_array().unwrap().len(), 3);
}

#[test]
fn exit_codes() {
    let (code, v) = run(&["centext", "--dim", "--m", "2", "--P", "[0,0,1]"]);
    assert_eq!((code, v["ok"].as_bool()), (2, Some(false)));
    assert_eq!(v["error"]["kind"], "ShapeUnsupported");
    let (code, v) = run(&["simplicity", "--m", "2", "--P", "not json"]);
    assert_eq!((code, v["error"]["kind"].as_str()), (1, Some("MalformedInput")));
    let (code, _) = run(&["simplicity", "--m", "2"]);
    assert_eq!(code, 1);
    let (code, v) = run(&["aut", "--roots", r#"["0","1"]"#]);
    assert_eq!((code, v["error"]["kind"].as_str()), (1, Some("MalformedInput")));
}

#[test]
fn output_is_deterministic() {
    let args = ["aut", "--roots", r#"["1","-1","2","-2"]"#];
    let a = Command::new(env!("CARGO_BIN_EXE_supell")).args(args).output().unwrap().stdout;
    let b = Command::new(env!("CARGO_BIN_EXE_supell")).args(args).output().unwrap().stdout;
    assert_eq!(a, b);
}
