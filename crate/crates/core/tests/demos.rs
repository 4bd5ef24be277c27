use cvdv::demos::{demo_defaults, run_demo, DEMOS};
use serde_json::{json, Value};

fn result(name: &str, params: Value) -> Value {
    run_demo(name, &params, 3).unwrap()["result"].clone()
}

#[test]
fn defaults_echo_back() {
    for name in DEMOS {
        let r = run_demo(name, &Value::Null, 1).unwrap();
        assert_eq!(r["params"], demo_defaults(name).unwrap(), "{name}");
        assert_eq!(r["demo"], name);
    }
}

#[test]
fn shor_factors_fifteen() {
    assert_eq!(result("shor", json!({"N": 15}))["factors"], json!([3, 5]));
}

#[test]
fn lchs_default_is_accurate() {
    let r = result("lchs", Value::Null);
    assert!(r["relative_error"].as_f64().unwrap() < 1e-2, "{r}");
}

#[test]
fn maxcut_triangle_cuts_two() {
    let r = result("maxcut", Value::Null);
    assert_eq!(r["optimal_cut"].as_f64().unwrap(), 2.0);
    assert_eq!(r["cut"].as_f64().unwrap(), 2.0);
}

#[test]
fn qpe_error_is_within_bins() {
    let r = result("rotor-qpe", json!({"theta": 1.0}));
    assert!(r["error"].as_f64().unwrap() < 2.0 * r["bin_width"].as_f64().unwrap());
}

#[test]
fn qhd_finds_a_well() {
    let r = result("qhd", Value::Null);
    assert!((r["sample_mode"][0].as_f64().unwrap().abs() - 1.0).abs() < 0.15, "{r}");
}

#[test]
fn bose_hubbard_conserves_number() {
    let r = result("bose-hubbard", Value::Null);
    assert!((r["total_number"].as_f64().unwrap() - 3.0).abs() < 1e-10);
    assert!((r["energy_final"].as_f64().unwrap() - r["energy_initial"].as_f64().unwrap()).abs() < 1e-2);
}

#[test]
fn model_dynamics_stay_physical() {
    for (name, key) in [("lvc", "upper_population"), ("ivr", "survival")] {
        let r = result(name, Value::Null);
        for v in r[key].as_array().unwrap() {
            let p = v.as_f64().unwrap();
            assert!((-1e-12..=1.0 + 1e-12).contains(&p), "{name}: {p}");
        }
    }
    let r = result("spin-boson", Value::Null);
    assert!(r["sigma_z"].as_array().unwrap().iter().all(|v| v.as_f64().unwrap().abs() <= 1.0 + 1e-12));
}
