use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)
}

fn domdim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_domdim")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let out = domdim(args);
    let text = String::from_utf8(out.stdout).unwrap();
    let line = text.lines().next().unwrap_or_else(|| panic!("no output; stderr {:?}", out.stderr));
    (serde_json::from_str(line).unwrap(), out.status.code().unwrap())
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn compute_reproduces_corpus_values() {
    for (file, dd) in [("counter1.qv", 0), ("counter1_core.qv", 1), ("linear5.qv", 1), ("truncated_10_3.qv", 5)] {
        let (v, code) = json(&["compute", "--json", path(&corpus(file))]);
        assert_eq!(code, 0, "{file}");
        assert_eq!(v["engine"]["dominant_dimension"], dd, "{file}");
        assert!(v.get("prediction").is_none() && v.get("verdict").is_none());
        assert_eq!(v["seed"], domdim::rep::DEFAULT_SEED);
    }
}

#[test]
fn compute_resolution_lists_terms() {
    let (v, _) = json(&["compute", "--json", "--resolution", path(&corpus("counter1_core.qv"))]);
    let p3 = &v["engine"]["resolutions"][2];
    assert_eq!(p3["projective"], "P(3)");
    assert_eq!(p3["basis"], serde_json::json!(["e3", "b", "t"]));
    let terms = p3["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 2);
    assert_eq!(terms[0].as_array().unwrap().len(), 2);
    assert_eq!(terms[1][0]["vertex"], "3");
    assert_eq!(terms[1][0]["projective"], false);
}

#[test]
fn prime_field_flag_gives_the_same_value() {
    let (v, code) = json(&["compute", "--json", "--field", "prime:3", path(&corpus("counter2.qv"))]);
    assert_eq!(code, 0);
    assert_eq!(v["field"], "prime:3");
    assert_eq!(v["engine"]["dominant_dimension"], 0);
    let (v, _) = json(&["compute", "--json", path(&corpus("prime7.qv"))]);
    assert_eq!(v["field"], "prime:7");
    assert_eq!(v["engine"]["dominant_dimension"], 3);
}

#[test]
fn exhausted_step_budget_is_a_defect() {
    let out = domdim(&["compute", "--max-steps", "3", path(&corpus("truncated_10_3.qv"))]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("exceeded 3 steps"));
}

#[test]
fn bad_input_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let cyclic = dir.path().join("cycle.qv");
    std::fs::write(&cyclic, "quiver c\nvertices 1 2\narrow a 1 -> 2\narrow b 2 -> 1\n").unwrap();
    let out = domdim(&["compute", path(&cyclic)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cycle detected"));

    let broken = dir.path().join("broken.qv");
    std::fs::write(&broken, "quiver b\nvertices 1 2\narrow a 1 => 2\n").unwrap();
    assert_eq!(domdim(&["check", path(&broken)]).status.code(), Some(1));
    assert_eq!(domdim(&["compute", path(&dir.path().join("missing.qv"))]).status.code(), Some(1));
}

#[test]
fn predict_examples() {
    let (v, code) = json(&["predict", "--json", path(&corpus("truncated_10_3.qv"))]);
    assert_eq!(code, 0);
    assert_eq!(v["prediction"]["theorem"], "truncated-formula");
    assert_eq!(v["prediction"]["value"], serde_json::json!({"kind": "exact", "value": 5}));
    assert!(v.get("engine").is_none());

    let (v, _) = json(&["predict", "--json", path(&corpus("star.qv"))]);
    assert_eq!(v["prediction"]["value"]["value"], 0);
    assert_eq!(v["prediction"]["theorem"], "hereditary-dichotomy");

    let (v, _) = json(&["predict", "--json", path(&corpus("reverse_star.qv"))]);
    assert_eq!(v["prediction"]["value"]["value"], 0);
    let star = v["prediction"]["conditions"]["star"].as_array().unwrap();
    let socles = star.iter().find(|c| c["name"] == "socles-at-sinks").unwrap();
    assert_eq!(socles["holds"], false);
    assert!(socles["witness"]["detail"].as_str().unwrap().contains("S(5)"));
}

#[test]
fn predict_out_of_scope_exits_three() {
    let (v, code) = json(&["predict", "--json", path(&corpus("diamond.qv"))]);
    assert_eq!(code, 3);
    assert_eq!(v["prediction"]["theorem"], "directed-upper-bound");
    assert_eq!(v["prediction"]["value"], serde_json::json!({"kind": "interval", "lo": 0, "hi": 4}));
}

#[test]
fn check_examples_agree() {
    for (file, dd) in [("truncated_4_3.qv", serde_json::json!(1)), ("counter2.qv", 0.into()), ("linear1.qv", "infinity".into())] {
        let (v, code) = json(&["check", "--json", path(&corpus(file))]);
        assert_eq!(code, 0, "{file}");
        assert_eq!(v["engine"]["dominant_dimension"], dd, "{file}");
        assert_eq!(v["prediction"]["value"]["value"], dd, "{file}");
        assert_eq!(v["verdict"], "agree", "{file}");
    }
}

#[test]
fn human_output_names_the_verdict() {
    let out = domdim(&["check", path(&corpus("counter1.qv"))]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("dom.dim = 0"));
    assert!(text.contains("right-arm-tops"));
    assert!(text.contains("verdict     agree"));
}

#[test]
fn generate_families() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.qv");
    let status = domdim(&["generate", "--family", "truncated", "--n", "6", "--m", "3", "-o", path(&out)]).status;
    assert!(status.success());
    let doc = domdim::quiver::dsl::parse(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let starts: Vec<&str> = doc.relations.sources().iter().map(|&v| doc.quiver.vertex_name(v)).collect();
    assert_eq!(starts, ["1", "2", "3"]);

    let text = String::from_utf8(domdim(&["generate", "--family", "linear", "--n", "4"]).stdout).unwrap();
    let doc = domdim::quiver::dsl::parse(&text).unwrap();
    assert_eq!(doc.quiver.vertex_count(), 4);
    assert!(doc.relations.is_empty());

    let tree = |file: &str| {
        let p = dir.path().join(file);
        domdim(&["generate", "--family", "random-tree", "--v", "7", "--seed", "11", "-o", path(&p)]);
        std::fs::read(p).unwrap()
    };
    assert_eq!(tree("a.qv"), tree("b.qv"));

    let infeasible = domdim(&["generate", "--family", "truncated", "--n", "3", "--m", "3"]);
    assert_eq!(infeasible.status.code(), Some(1));
    assert_eq!(domdim(&["generate", "--family", "nope", "--n", "3"]).status.code(), Some(1));
}

fn batch_lines(args: &[&str]) -> (Vec<Value>, i32) {
    let out = domdim(args);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    (lines, out.status.code().unwrap())
}

#[test]
fn batch_over_corpus_has_no_mismatch() {
    let dir = corpus("");
    let (lines, code) = batch_lines(&["batch", "--json", "--jobs", "4", path(&dir)]);
    assert_eq!(code, 0);
    let summary = &lines.last().unwrap()["summary"];
    assert_eq!(summary["mismatch"], 0);
    assert_eq!(summary["errors"], 0);
    assert_eq!(summary["inputs"].as_u64().unwrap() as usize, lines.len() - 1);
}

fn truncation_manifest(dir: &Path, ns: std::ops::RangeInclusive<usize>) -> PathBuf {
    let mut manifest = String::from("# truncations at length two\n");
    for n in ns {
        let file = format!("t{n}.qv");
        let mut args = vec!["generate".to_string(), "--family".into()];
        if n == 2 {
            args.extend(["linear".into(), "--n".into(), "2".into()]);
        } else {
            args.extend(["truncated".into(), "--n".into(), n.to_string(), "--m".into(), "2".into()]);
        }
        args.extend(["-o".into(), path(&dir.join(&file)).into()]);
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        assert!(domdim(&args).status.success());
        manifest.push_str(&file);
        manifest.push('\n');
    }
    let p = dir.join("manifest.txt");
    std::fs::write(&p, manifest).unwrap();
    p
}

#[test]
fn batch_truncation_sweep_hits_every_value() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = truncation_manifest(dir.path(), 2..=10);
    let (lines, code) = batch_lines(&["batch", "--json", "--jobs", "3", path(&manifest)]);
    assert_eq!(code, 0);
    let values: Vec<u64> = lines[..lines.len() - 1]
        .iter()
        .map(|l| l["engine"]["dominant_dimension"].as_u64().unwrap())
        .collect();
    assert_eq!(values, (1..=9).collect::<Vec<_>>());
    let histogram = lines.last().unwrap()["summary"]["histogram"].as_object().unwrap().clone();
    assert_eq!(histogram.len(), 9);
    assert!(histogram.values().all(|c| c == 1));
}

#[test]
fn batch_is_deterministic_up_to_timing() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = truncation_manifest(dir.path(), 3..=8);
    let run = |jobs: &str| {
        let (mut lines, _) = batch_lines(&["batch", "--json", "--jobs", jobs, "--seed", "7", path(&manifest)]);
        for l in &mut lines {
            if let Some(o) = l.as_object_mut() {
                o.remove("elapsed_ms");
            }
        }
        lines
    };
    let sequential = run("1");
    assert_eq!(sequential, run("4"));
    assert!(sequential[..sequential.len() - 1].iter().all(|l| l["seed"] == 7));
}

#[test]
fn batch_continues_past_bad_files() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::copy(corpus("star.qv"), dir.path().join("a.qv")).unwrap();
    std::fs::write(dir.path().join("b.qv"), "vertices 1\nnonsense\n").unwrap();
    std::fs::copy(corpus("linear5.qv"), dir.path().join("c.qv")).unwrap();
    let (lines, code) = batch_lines(&["batch", "--json", path(dir.path())]);
    assert_eq!(code, 1);
    assert_eq!(lines.len(), 4);
    assert!(lines[1]["error"].is_string());
    assert_eq!(lines[2]["verdict"], "agree");
    assert_eq!(lines[3]["summary"]["errors"], 1);
}
