use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const SMALL_PARAMS: &str = r#"
seed = 7

[graph]
n = 1000
k = 20
p_in = 0.5
p_out = 0.1
degree = "beta"
weight_range = [1, 100]

[evolution]
steps = 3
change_fraction = 0.5
perturbation = [-20.0, 20.0]

[outliers]
count = 4
time = 3
edges_per_outlier = [1, 2]
weight_range = [500.0, 1000.0]
"#;

fn tenc(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tenc")).args(args).current_dir(cwd).output().expect("binary runs")
}

fn ok(args: &[&str], cwd: &Path) -> Output {
    let out = tenc(args, cwd);
    assert!(out.status.success(), "tenc {args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    out
}

fn simulate(dir: &Path) -> PathBuf {
    fs::write(dir.join("params.toml"), SMALL_PARAMS).unwrap();
    ok(&["simulate", "--params", "params.toml", "--out", "sim", "--threads", "1"], dir);
    dir.join("sim")
}

fn data_files(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.file_name().unwrap() != "manifest.json")
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&p).unwrap()))
        .collect()
}

fn data_rows(path: &Path) -> Vec<String> {
    fs::read_to_string(path).unwrap().lines().skip(1).map(str::to_owned).collect()
}

#[test]
fn embed_writes_one_row_per_vertex_and_step() {
    let dir = tempfile::tempdir().unwrap();
    simulate(dir.path());
    ok(&["embed", "--edges", "sim/edges.csv", "--labels", "sim/labels.csv", "--out", "emb"], dir.path());
    let text = fs::read_to_string(dir.path().join("emb/embedding.csv")).unwrap();
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(header.iter().filter(|h| h.starts_with("z_")).count(), 20);
    assert_eq!(lines.count(), 3 * 1000);

    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("emb/manifest.json")).unwrap()).unwrap();
    for key in ["ingest", "embed", "write", "total"] {
        assert!(manifest["timings_seconds"][key].as_f64().unwrap() >= 0.0, "missing timing {key}");
    }
    let echo: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("emb/config.json")).unwrap()).unwrap();
    assert_eq!(manifest["config"], echo);
    assert!(Path::new(echo["inputs"]["edges"][0].as_str().unwrap()).is_absolute());
}

#[test]
fn every_command_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("params.toml"), SMALL_PARAMS).unwrap();
    let runs: Vec<(&str, Vec<&str>)> = vec![
        ("sim", vec!["simulate", "--params", "params.toml"]),
        ("emb", vec!["embed", "--edges", "sim/edges.csv", "--labels", "sim/labels.csv", "--format", "both"]),
        ("dyn", vec!["dynamics", "--embedding", "emb", "--window", "1:3"]),
        ("dyn_raw", vec!["dynamics", "--edges", "sim/edges.csv", "--labels", "sim/labels.csv"]),
        ("inj", vec!["inject-outliers", "--edges", "sim/edges.csv", "--labels", "sim/labels.csv", "--seed", "3"]),
        ("spec", vec!["spectral", "--edges", "sim/edges.csv", "--labels", "sim/labels.csv", "--dim", "4"]),
        (
            "cmp",
            vec!["compare", "--edges", "sim/edges.csv", "--labels", "sim/labels.csv", "--planted", "sim/outliers.csv"],
        ),
    ];
    for (out, args) in &runs {
        let mut first = args.clone();
        first.extend(["--out", out, "--threads", "1"]);
        ok(&first, d);
        let before = data_files(&d.join(out));
        assert!(!before.is_empty());
        fs::rename(d.join(out), d.join(format!("{out}.first"))).unwrap();
        ok(&first, d);
        assert_eq!(before, data_files(&d.join(out)), "{out} differs between runs");
        fs::remove_dir_all(d.join(format!("{out}.first"))).unwrap();
    }
}

#[test]
fn simulate_manifest_lists_planted_vertices() {
    let dir = tempfile::tempdir().unwrap();
    let sim = simulate(dir.path());
    let planted = data_rows(&sim.join("outliers.csv"));
    assert_eq!(planted.len(), 4);
    let manifest: serde_json::Value = serde_json::from_str(&fs::read_to_string(sim.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["seed"], 7);
    assert_eq!(manifest["summary"]["planted_outliers"], 4);
    let echoed = fs::read_to_string(sim.join("params.toml")).unwrap();
    assert!(echoed.contains("seed = 7"));

    ok(&["simulate", "--params", "params.toml", "--seed", "8", "--out", "other"], dir.path());
    assert_ne!(fs::read(sim.join("edges.csv")).unwrap(), fs::read(dir.path().join("other/edges.csv")).unwrap());
}

#[test]
fn presets_ship_with_the_binary() {
    let dir = tempfile::tempdir().unwrap();
    ok(&["simulate", "--preset", "outlier", "--out", "o"], dir.path());
    assert_eq!(data_rows(&dir.path().join("o/outliers.csv")).len(), 10);
    let params = fs::read_to_string(dir.path().join("o/params.toml")).unwrap();
    assert!(params.contains("n = 1000"));
    assert_eq!(tenc(&["simulate", "--preset", "missing", "--out", "x"], dir.path()).status.code(), Some(2));
}

#[test]
fn identical_steps_give_zero_dynamics() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let mut edges = String::from("src,dst,weight,t\n");
    for t in 1..=4 {
        edges.push_str(&format!("a,b,2,{t}\nb,c,1.5,{t}\nc,d,3,{t}\nd,a,1,{t}\n"));
    }
    fs::write(d.join("e.csv"), edges).unwrap();
    fs::write(d.join("l.csv"), "a,1\nb,1\nc,2\nd,2\n").unwrap();
    ok(&["dynamics", "--edges", "e.csv", "--labels", "l.csv", "--out", "dyn"], d);
    for row in data_rows(&d.join("dyn/vertex_dynamics.csv")) {
        assert!(row.ends_with(",0.0,0"), "{row}");
    }
    for row in data_rows(&d.join("dyn/graph_dynamics.csv")) {
        assert!(row.ends_with(",0.0"), "{row}");
    }
    for row in data_rows(&d.join("dyn/community_dynamics.csv")) {
        assert!(row.ends_with(",0.0"), "{row}");
    }
    let thresholds = data_rows(&d.join("dyn/thresholds.csv"));
    assert_eq!(thresholds[0], "1,0.5,0,0.0,0.1,4,1.0");
    let hist = data_rows(&d.join("dyn/histogram.csv"));
    assert_eq!(hist.len(), 20);
    assert_eq!(hist[0], "0.0,0.05,4");
}

#[test]
fn ranking_lists_planted_outliers() {
    let dir = tempfile::tempdir().unwrap();
    simulate(dir.path());
    ok(&["dynamics", "--edges", "sim/edges.csv", "--labels", "sim/labels.csv", "--out", "dyn"], dir.path());
    let ranked: Vec<String> = data_rows(&dir.path().join("dyn/ranking.csv"))
        .iter()
        .map(|r| r.split(',').nth(1).unwrap().to_owned())
        .collect();
    assert_eq!(ranked.len(), 1000);
    for v in data_rows(&dir.path().join("sim/outliers.csv")) {
        assert!(ranked.contains(&v));
    }
    ok(
        &["compare", "--edges", "sim/edges.csv", "--labels", "sim/labels.csv", "--planted", "sim/outliers.csv", "--out", "cmp"],
        dir.path(),
    );
    let recall = data_rows(&dir.path().join("cmp/recall.csv"));
    assert_eq!(recall.len(), 2);
    assert!(recall[0].starts_with("10,"));
}

#[test]
fn binary_and_text_embeddings_give_the_same_dynamics() {
    let dir = tempfile::tempdir().unwrap();
    simulate(dir.path());
    ok(&["embed", "--edges", "sim/edges.csv", "--labels", "sim/labels.csv", "--format", "both", "--out", "emb"], dir.path());
    ok(&["dynamics", "--embedding", "emb/embedding.csv", "--out", "a"], dir.path());
    ok(&["dynamics", "--embedding", "emb/embedding.bin", "--out", "b"], dir.path());
    for f in ["vertex_dynamics.csv", "community_dynamics.csv", "ranking.csv"] {
        assert_eq!(fs::read(dir.path().join("a").join(f)).unwrap(), fs::read(dir.path().join("b").join(f)).unwrap());
    }
}

#[test]
fn benchmark_single_cell() {
    let dir = tempfile::tempdir().unwrap();
    ok(
        &["benchmark", "--vertices", "400", "--steps", "2", "--replicates", "2", "--dim", "2", "--base-n", "400", "--out", "b"],
        dir.path(),
    );
    let rows = data_rows(&dir.path().join("b/benchmark.csv"));
    assert_eq!(rows.len(), 1);
    let fields: Vec<&str> = rows[0].split(',').collect();
    assert_eq!(&fields[..2], ["400", "2"]);
    assert_eq!(fields[3], "2");
    assert!(fields[6].parse::<f64>().unwrap() > 0.0);
}

#[test]
fn exit_codes_distinguish_failure_classes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    simulate(d);

    let out = tenc(&["dynamics", "--embedding", "nowhere", "--out", "x"], d);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("tenc embed"));

    let out = tenc(&["embed", "--edges", "missing.csv", "--labels", "sim/labels.csv", "--out", "x"], d);
    assert_eq!(out.status.code(), Some(3));

    fs::write(d.join("bad.csv"), "a,b,1\na,c,-2\n").unwrap();
    fs::write(d.join("l.csv"), "a,1\nb,1\nc,1\n").unwrap();
    let out = tenc(&["embed", "--edges", "bad.csv", "--labels", "l.csv", "--out", "x"], d);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("bad.csv:2: negative weight"), "{err}");

    fs::write(d.join("p.toml"), SMALL_PARAMS.replace("p_in = 0.5", "p_in = 1.5")).unwrap();
    assert_eq!(tenc(&["simulate", "--params", "p.toml", "--out", "x"], d).status.code(), Some(2));

    let out = tenc(&["spectral", "--edges", "sim/edges.csv", "--max-block-steps", "1", "--dim", "5", "--out", "x"], d);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("residual"));

    let out = tenc(&["spectral", "--edges", "sim/edges.csv", "--max-vertices", "10", "--out", "x"], d);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("encoder"));

    assert_eq!(tenc(&["embed", "--out", "x"], d).status.code(), Some(2));
}

#[test]
fn directed_flag_changes_the_embedding() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("e.csv"), "a,b,1\nb,c,2\n").unwrap();
    fs::write(d.join("l.csv"), "a,1\nb,2\nc,2\n").unwrap();
    ok(&["embed", "--edges", "e.csv", "--labels", "l.csv", "--out", "u"], d);
    ok(&["embed", "--edges", "e.csv", "--labels", "l.csv", "--directed", "--out", "v"], d);
    let u = data_rows(&d.join("u/embedding.csv"));
    let v = data_rows(&d.join("v/embedding.csv"));
    assert_eq!(u[2], "1,c,0.0,1.0,1");
    assert_eq!(v[2], "1,c,0.0,0.0,0");
}
