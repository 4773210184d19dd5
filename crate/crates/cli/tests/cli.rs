use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

fn corpus(name: &str) -> PathBuf {
    [env!("CARGO_MANIFEST_DIR"), "..", "..", "corpus", name].iter().collect()
}

fn lrc(args: &[&str], stdin: &str) -> Output {
    lrc_env(args, stdin, &[])
}

fn lrc_env(args: &[&str], stdin: &str, env: &[(&str, &str)]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_lrc"))
        .args(args)
        .envs(env.iter().copied())
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    // the child may exit before reading stdin
    let _ = child.stdin.take().unwrap().write_all(stdin.as_bytes());
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn symbols(text: &str) -> Vec<u32> {
    text.split_whitespace().map(|t| t.parse().unwrap()).collect()
}

fn spec_arg(p: &Path) -> String {
    p.to_str().unwrap().to_string()
}

#[test]
fn gen_is_deterministic_and_matches_the_corpus() {
    let out = stdout(&lrc(&["gen", "--n", "9", "--k", "4", "--r", "2", "--q", "13"], ""));
    let shipped = std::fs::read_to_string(corpus("lrc-9-4-2-f13.json")).unwrap();
    assert_eq!(out, shipped);
    let again = stdout(&lrc(&["gen", "--n", "9", "--k", "4", "--r", "2", "--q", "13"], ""));
    assert_eq!(out, again);

    let rs: serde_json::Value = serde_json::from_str(&stdout(&lrc(&["gen", "--n", "9", "--k", "4", "--r", "4"], ""))).unwrap();
    assert_eq!(rs["construction"], "rs");
    let multi: serde_json::Value = serde_json::from_str(&stdout(&lrc(
        &["gen", "--n", "12", "--k", "4", "--r", "2", "--s", "3", "--multi"],
        "",
    )))
    .unwrap();
    assert_eq!(multi["construction"], "multi");
    assert_eq!(multi["params"]["n"], 12);
}

#[test]
fn gen_rejects_impossible_parameters() {
    let out = lrc(&["gen", "--n", "9", "--k", "4", "--r", "2", "--q", "7"], "");
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("do not fit"));
    let out = lrc(&["gen", "--n", "9", "--k", "4", "--r", "2", "--q", "12"], "");
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn encode_reproduces_the_worked_codeword() {
    let spec = spec_arg(&corpus("lrc-9-4-2-f13.json"));
    let out = stdout(&lrc(&["encode", "--spec", &spec], "1 1 1 1\n"));
    assert_eq!(out, "4\n8\n7\n1\n11\n2\n0\n0\n0\n");
    let zero = stdout(&lrc(&["encode", "--spec", &spec], "0\n0\n0\n0\n"));
    assert_eq!(symbols(&zero), vec![0; 9]);
    let short = lrc(&["encode", "--spec", &spec], "1 1 1\n");
    assert_eq!(short.status.code(), Some(2));
    let out_of_field = lrc(&["encode", "--spec", &spec], "1 1 1 13\n");
    assert_eq!(out_of_field.status.code(), Some(2));
}

#[test]
fn systematic_spec_places_message_verbatim() {
    let path = corpus("lrc-9-4-2-f13-systematic.json");
    let spec: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let points: Vec<u64> = spec["systematic"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|g| g.as_array().unwrap().iter().map(|v| v.as_u64().unwrap()))
        .collect();
    let locations: Vec<u64> = spec["position_locations"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap())
        .collect();
    let word = symbols(&stdout(&lrc(&["encode", "--spec", &spec_arg(&path)], "7 3 0 12")));
    for (point, want) in points.iter().zip([7, 3, 0, 12]) {
        let pos = locations.iter().position(|l| l == point).unwrap();
        assert_eq!(word[pos], want);
    }
}

#[test]
fn repair_recovers_erased_symbols() {
    let spec = spec_arg(&corpus("lrc-9-4-2-f13.json"));
    let out = stdout(&lrc(&["repair", "--spec", &spec, "--position", "0"], "?\n8\n7\n1\n11\n2\n0\n0\n0\n"));
    assert_eq!(out, "4\n");
    let zero = stdout(&lrc(&["repair", "--spec", &spec, "--position", "4"], "0 0 0 0 ? 0 0 0 0"));
    assert_eq!(zero, "0\n");
    let starved = lrc(&["repair", "--spec", &spec, "--position", "0"], "? ? 7 1 11 2 0 0 0");
    assert_eq!(starved.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&starved.stderr).contains("block 0"));
    let bad_via = lrc(&["repair", "--spec", &spec, "--position", "0", "--via", "2"], "? 8 7 1 11 2 0 0 0");
    assert_eq!(bad_via.status.code(), Some(2));
}

#[test]
fn both_routes_agree_on_two_set_codes() {
    for name in ["multi-12-4-2-3-f13.json", "product-81-16-2-2-f13.json"] {
        let spec = spec_arg(&corpus(name));
        let k = if name.starts_with("multi") { 4 } else { 16 };
        let message: String = (0..k).map(|i| format!("{}\n", (i * 5 + 3) % 13)).collect();
        let word = symbols(&stdout(&lrc(&["encode", "--spec", &spec], &message)));
        for pos in [0, 3, word.len() - 1] {
            let received: String = word
                .iter()
                .enumerate()
                .map(|(i, v)| if i == pos { "?\n".to_string() } else { format!("{v}\n") })
                .collect();
            let pos_arg = pos.to_string();
            for via in ["1", "2"] {
                let got = stdout(&lrc(&["repair", "--spec", &spec, "--position", &pos_arg, "--via", via], &received));
                assert_eq!(symbols(&got), vec![word[pos]], "{name} position {pos} via {via}");
            }
        }
    }
}

#[test]
fn product_codewords_print_as_a_grid() {
    let spec = spec_arg(&corpus("product-81-16-2-2-f13.json"));
    let out = stdout(&lrc(&["encode", "--spec", &spec], &"1\n".repeat(16)));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 9);
    assert!(lines.iter().all(|l| l.split(' ').count() == 9));
    // the all-ones message is u ⊗ u, so entry (0, 0) is 4 · 4
    assert_eq!(lines[0].split(' ').next(), Some("3"));
}

#[test]
fn decode_inverts_encode_and_reports_failures() {
    let spec = spec_arg(&corpus("lrc-9-4-2-f13.json"));
    let out = stdout(&lrc(&["decode", "--spec", &spec], "? ? 7 ? 11 ? 0 0 0"));
    assert_eq!(out, "1\n1\n1\n1\n");
    let out = lrc(&["decode", "--spec", &spec], "? ? ? ? ? ? 0 0 0");
    assert_eq!(out.status.code(), Some(3));
    let out = lrc(&["decode", "--spec", &spec], "5 8 7 1 11 2 0 0 0");
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn round_trip_over_every_shipped_spec() {
    let dir: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "corpus"].iter().collect();
    let mut seen = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let spec_text = std::fs::read_to_string(&path).unwrap();
        let spec_json: serde_json::Value = serde_json::from_str(&spec_text).unwrap();
        let q = {
            let f = &spec_json["field"];
            f["p"].as_u64().unwrap().pow(f["l"].as_u64().unwrap() as u32)
        };
        let spec = spec_arg(&path);
        let k = match spec_json.get("product") {
            Some(p) => p["c1"]["params"]["k"].as_u64().unwrap() * p["c2"]["params"]["k"].as_u64().unwrap(),
            None => spec_json["params"]["k"].as_u64().unwrap(),
        };
        let message: Vec<u64> = (0..k).map(|i| (i * 7 + 2) % q).collect();
        let text: String = message.iter().map(|v| format!("{v}\n")).collect();
        let word = symbols(&stdout(&lrc(&["encode", "--spec", &spec], &text)));
        let erased: String = word
            .iter()
            .enumerate()
            .map(|(i, v)| if i == 1 { "?\n".to_string() } else { format!("{v}\n") })
            .collect();
        let repaired = symbols(&stdout(&lrc(&["repair", "--spec", &spec, "--position", "1"], &erased)));
        assert_eq!(repaired, vec![word[1]], "{}", path.display());
        let decoded = symbols(&stdout(&lrc(&["decode", "--spec", &spec], &erased)));
        assert_eq!(decoded.iter().map(|&v| v as u64).collect::<Vec<_>>(), message, "{}", path.display());
        seen += 1;
    }
    assert!(seen >= 10);
}

#[test]
fn verify_reports_distance_and_locality() {
    let spec = spec_arg(&corpus("lrc-9-4-2-f13.json"));
    let rep: serde_json::Value = serde_json::from_str(&stdout(&lrc(&["verify", "--spec", &spec], ""))).unwrap();
    assert_eq!(rep["measured_d"], 5);
    assert_eq!(rep["bound_d"], 5);
    assert_eq!(rep["optimal"], true);
    assert_eq!(rep["locality"].as_array().unwrap().len(), 9);
    assert_eq!(rep["mds_blocks"].as_array().unwrap().len(), 3);

    let capped = lrc_env(&["verify", "--spec", &spec], "", &[("LRC_EXHAUSTIVE_CAP", "100")]);
    let rep: serde_json::Value = serde_json::from_str(&stdout(&capped)).unwrap();
    assert!(rep["measured_d"].is_null());
    assert_eq!(rep["optimal"], false);
    assert!(String::from_utf8_lossy(&capped.stderr).contains("sampled"));
}

#[test]
fn bounds_prints_json() {
    let rep: serde_json::Value = serde_json::from_str(&stdout(&lrc(
        &["bounds", "--n", "12", "--k", "4", "--r", "3", "--t", "2"],
        "",
    )))
    .unwrap();
    assert_eq!(rep["singleton_like_d"], 8);
    assert_eq!(rep["multi_lower_m"], 4);
    assert_eq!(rep["mr_upper_d"], 8);
    let bad = lrc(&["bounds", "--n", "3", "--k", "4", "--r", "2"], "");
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn malformed_specs_are_validation_errors() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    let text = std::fs::read_to_string(corpus("lrc-9-4-2-f13.json")).unwrap();
    std::fs::write(&path, text.replace("\"version\": 1", "\"version\": 7")).unwrap();
    let out = lrc(&["encode", "--spec", &spec_arg(&path)], "1 1 1 1");
    assert_eq!(out.status.code(), Some(2));
    std::fs::write(&path, "{").unwrap();
    let out = lrc(&["encode", "--spec", &spec_arg(&path)], "1 1 1 1");
    assert_eq!(out.status.code(), Some(2));
    let out = lrc(&["encode", "--spec", &spec_arg(&dir.path().join("missing.json"))], "");
    assert_eq!(out.status.code(), Some(2));
}
