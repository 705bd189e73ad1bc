
use cluster_forge::cli::run;
use serde_json::Value;

fn data_path(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let mut argv = vec!["cluster-forge"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn cli_json(args: &[&str]) -> Value {
    let (code, out, err) = cli(args);
    assert_eq!(code, 0, "stderr: {err}");
    serde_json::from_str(&out).unwrap()
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array().unwrap().iter().map(|s| s.as_str().unwrap().to_string()).collect()
}

#[test]
fn mutate_a3_at_one() {
    let v = cli_json(&["mutate", &data_path("a3.json"), "--at", "1"]);
    assert_eq!(strings(&v["cluster"]), ["(1+x2)/x1", "x2", "x3"]);
}

#[test]
fn mutate_twice_round_trips_through_json() {
    let once = cli(&["mutate", &data_path("a2.json"), "--at", "1"]).1;
    let (code, twice, _) = cli(&["mutate", &once, "--at", "1"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&twice).unwrap();
    assert_eq!(strings(&v["cluster"]), ["x1", "x2"]);
    assert_eq!(v["matrix"], serde_json::json!([[0, 1], [-1, 0]]));
}

#[test]
fn mutate_output_formats() {
    let a2 = data_path("a2.json");
    let dot = cli(&["--format", "dot", "mutate", &a2, "--at", "1"]).1;
    assert!(dot.starts_with("digraph"), "{dot}");
    assert!(dot.contains("2 -> 1"));
    let table = cli(&["--format", "table", "mutate", &a2, "--at", "1,2"]).1;
    assert!(table.contains("(1+x2+x1)/(x1*x2)"), "{table}");
}

#[test]
fn class_and_exchange_graph() {
    assert_eq!(cli_json(&["class", &data_path("a3.json")])["size"], 4);
    let g = cli_json(&["exchange-graph", &data_path("a3.json")]);
    assert_eq!((g["vertices"].as_u64(), g["edges"].as_u64()), (Some(14), Some(21)));
    let dot = cli(&["--format", "dot", "exchange-graph", &data_path("a2.json")]).1;
    assert_eq!(dot.matches(" -- ").count(), 5);
}

#[test]
fn variables_flags_infinite_type() {
    let v = cli_json(&["variables", &data_path("kronecker.json"), "--limit", "200"]);
    assert_eq!(v["infinite_type"], true);
    let v = cli_json(&["variables", &data_path("a2.json")]);
    assert_eq!(v["count"], 5);
}

#[test]
fn tropical_commands() {
    let c3 = data_path("c3.json");
    let c = cli_json(&["cmatrix", &c3, "--seq", "1,2,3,1,2,3"]);
    assert_eq!(c["c"], serde_json::json!([[1, -1, 0], [1, 0, -2], [1, 0, -1]]));
    let g = cli_json(&["gmatrix", &data_path("b3.json"), "--seq", "1,2,3,1,2,3"]);
    assert_eq!(g["g"], serde_json::json!([[0, -1, 0], [-1, -1, -1], [2, 2, 1]]));
    let f = cli_json(&["fpoly", &data_path("a2.json"), "--seq", "1,2"]);
    assert_eq!(strings(&f["f"]), ["1+y1", "1+y1+y1*y2"]);
    let d = cli_json(&["--rng-seed", "7", "duality", &data_path("b3.json"), "--random", "20", "--depth", "8"]);
    assert_eq!((d["holds"].as_bool(), d["sequences"].as_u64()), (Some(true), Some(21)));
}

#[test]
fn quantum_commands() {
    assert_eq!(cli_json(&["pentagon", "--N", "6"])["holds"], true);
    let dt = cli_json(&["dt", &data_path("a2.json"), "--N", "4"]);
    assert_eq!(dt["sequence"], serde_json::json!([2, 1]));
    let id = cli_json(&["identity", &data_path("a2.json"), "--seq", "1,2,1", "--other", "2,1", "--N", "6"]);
    assert_eq!(id["holds"], true);
    let q = cli_json(&["quantum-mutate", &data_path("a2.json"), "--seq", "1"]);
    assert_eq!(strings(&q["specialized"])[0], "(x3+x2)/x1");
}

#[test]
fn qp_commands() {
    let v = cli_json(&["qp-mutate", &data_path("three_cycle_abc.json"), "--at", "2"]);
    assert_eq!(v["arrows"].as_array().unwrap().len(), 2);
    assert!(v["potential"].as_array().unwrap().is_empty());
    let table = cli(&["--format", "table", "qp-mutate", &data_path("three_cycle_abc2.json"), "--at", "2"]).1;
    assert!(table.contains("W = a*[ab]b* + c[ab]c[ab]"), "{table}");
    let j = cli_json(&["jacobian", &data_path("three_cycle_abc.json"), "--N", "6"]);
    assert_eq!((j["dimension"].as_u64(), j["saturated"].as_bool()), (Some(6), Some(true)));
}

#[test]
fn inline_json_input() {
    let v = cli_json(&["mutate", r#"{"m":2,"n":2,"matrix":[[0,1],[-1,0]]}"#, "--at", "2"]);
    assert_eq!(strings(&v["cluster"]), ["x1", "(1+x1)/x2"]);
}

#[test]
fn exit_codes() {
    let (code, _, err) = cli(&["mutate", &data_path("a3.json"), "--at", "4"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error: "), "{err}");
    assert_eq!(cli(&["mutate", &data_path("a3.json")]).0, 2);
    assert_eq!(cli(&["mutate", "/nonexistent.json", "--at", "1"]).0, 2);
    assert_eq!(cli(&["mutate", "{not json", "--at", "1"]).0, 2);
    assert_eq!(cli(&["--help"]).0, 0);
}
