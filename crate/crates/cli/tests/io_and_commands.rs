use std::path::{Path, PathBuf};
use std::process::Command;

use ccd_cli::commands::{cluster_file, evaluate_files};
use ccd_cli::csvio::{dataset_to_csv, labels_to_csv, parse_dataset, parse_labels, read_dataset};
use ccd_cli::{run_bench, BenchSpec, CliError, MethodSettings};
use ccd_core::{Family, Method, PointSet64, SimSpec};

fn iris() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/iris.csv")
}

fn ccd(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_ccd"))
        .args(args)
        .output()
        .unwrap()
}

#[test]
fn csv_round_trip_is_bitwise() {
    let ds = SimSpec::new(Family::Gaussian, 4, 97, 3, 5)
        .with_noise(0.1)
        .generate()
        .unwrap();
    let bytes = dataset_to_csv(&ds.points, Some(&ds.labels)).unwrap();
    let back = parse_dataset(bytes.as_slice(), false).unwrap();
    assert_eq!(back.points.len(), ds.points.len());
    for (a, b) in back.points.rows().zip(ds.points.rows()) {
        let bits = |r: &[f64]| r.iter().map(|v| v.to_bits()).collect::<Vec<_>>();
        assert_eq!(bits(a), bits(b));
    }
    // labels are interned by first appearance, so compare as a partition
    let relabeled: Vec<String> = back
        .labels
        .unwrap()
        .iter()
        .map(|&l| back.label_names[l].clone())
        .collect();
    let original: Vec<String> = ds.labels.iter().map(usize::to_string).collect();
    assert_eq!(relabeled, original);

    // a second pass is idempotent
    let again = dataset_to_csv(&back.points, None).unwrap();
    assert_eq!(
        parse_dataset(again.as_slice(), false).unwrap().points,
        back.points
    );
}

#[test]
fn standardization_of_two_points() {
    let ds = parse_dataset("0,0\n2,0\n".as_bytes(), true).unwrap();
    assert_eq!(
        ds.points,
        PointSet64::from_rows(&[[-1.0, 0.0], [1.0, 0.0]]).unwrap()
    );
    assert!(ds.labels.is_none());
    assert_eq!(ds.columns, ["x0", "x1"]);
}

#[test]
fn standardized_columns_have_unit_variance() {
    let ds = read_dataset(&iris(), true).unwrap();
    let n = ds.points.len() as f64;
    for j in 0..ds.points.dim() {
        let col: Vec<f64> = ds.points.rows().map(|r| r[j]).collect();
        let mean = col.iter().sum::<f64>() / n;
        let var = col.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
        assert!(mean.abs() < 1e-12 && (var - 1.0).abs() < 1e-12);
    }
}

#[test]
fn iris_shape() {
    let ds = read_dataset(&iris(), false).unwrap();
    assert_eq!(
        (ds.points.len(), ds.points.dim(), ds.k_true()),
        (150, 4, Some(3))
    );
}

#[test]
fn malformed_input_is_reported_with_its_line() {
    let ragged = parse_dataset("a,b\n1,2\n3\n".as_bytes(), false).unwrap_err();
    assert!(
        matches!(&ragged, CliError::Input(m) if m.contains("line 3")),
        "{ragged}"
    );
    let text = parse_dataset("1,2\n3,x\n".as_bytes(), false).unwrap_err();
    assert!(
        matches!(&text, CliError::Input(m) if m.contains("line 2")),
        "{text}"
    );
    assert!(parse_dataset("".as_bytes(), false).is_err());
    assert!(parse_dataset("x,y\n".as_bytes(), false).is_err());
}

#[test]
fn label_files() {
    assert_eq!(
        parse_labels("label\nb\na\nb\n".as_bytes()).unwrap(),
        [0, 1, 0]
    );
    assert_eq!(parse_labels("3\n3\n1\n".as_bytes()).unwrap(), [0, 0, 1]);
    assert_eq!(
        parse_labels(labels_to_csv(&[2, 0, 2]).as_slice()).unwrap(),
        [0, 1, 0]
    );
}

#[test]
fn evaluate_scores_and_flags() {
    let dir = tempfile::tempdir().unwrap();
    let truth = dir.path().join("truth.csv");
    let one = dir.path().join("one.csv");
    let short = dir.path().join("short.csv");
    let ds = read_dataset(&iris(), false).unwrap();
    let labels = ds.labels.unwrap();
    std::fs::write(&truth, labels_to_csv(&labels)).unwrap();
    std::fs::write(&one, labels_to_csv(&vec![0; 150])).unwrap();
    std::fs::write(&short, labels_to_csv(&labels[..149])).unwrap();

    let same = evaluate_files(&truth, &truth, &iris(), false).unwrap();
    assert_eq!(same.ari, Some(1.0));
    assert_eq!(
        (same.k_hat, same.k_true, same.success),
        (3, Some(3), Some(true))
    );
    assert!(same.silhouette_defined);

    let single = evaluate_files(&one, &truth, &iris(), false).unwrap();
    assert_eq!(single.avg_silhouette, 0.0);
    assert!(!single.silhouette_defined);

    assert!(matches!(
        evaluate_files(&short, &truth, &iris(), false),
        Err(CliError::Input(_))
    ));
}

#[test]
fn cluster_reports_echo_their_settings() {
    let settings = MethodSettings {
        delta_roots: vec![0.5, 1.0],
        ..MethodSettings::default()
    };
    let report = cluster_file(&iris(), true, &[Method::Un, Method::Ks], &settings).unwrap();
    assert_eq!((report.n, report.d, report.k_true), (150, 4, Some(3)));
    let un = &report.results[0];
    assert!(un.alpha.is_some() && un.mc_replicates.is_some() && un.delta_root.is_none());
    let ks = &report.results[1];
    assert!(ks.alpha.is_none() && [Some(0.5), Some(1.0)].contains(&ks.delta_root));
    for r in &report.results {
        assert_eq!(r.labels.len(), 150);
        assert!(r.labels.iter().all(|&l| l < r.k_hat));
    }
}

fn small_bench() -> BenchSpec {
    let sim = SimSpec::new(Family::Uniform, 3, 60, 2, 0).with_noise(0.1);
    let mut spec = BenchSpec::new(sim, Method::ALL.to_vec(), 3, 11);
    spec.delta_roots = Some(vec![0.3, 1.0, 3.0]);
    spec.mc_replicates = Some(499);
    spec
}

#[test]
fn bench_aggregates_match_rows() {
    let report = run_bench(&small_bench()).unwrap();
    assert_eq!(report.rows.len(), 9);
    for s in &report.summary {
        let rows: Vec<_> = report
            .rows
            .iter()
            .filter(|r| r.method == s.method)
            .collect();
        let n = rows.len() as f64;
        assert_eq!(s.runs, rows.len());
        assert_eq!(s.mean_ari, rows.iter().map(|r| r.ari).sum::<f64>() / n);
        assert_eq!(
            s.mean_silhouette,
            rows.iter().map(|r| r.avg_silhouette).sum::<f64>() / n
        );
        let hits = rows.iter().filter(|r| r.k_hat == r.k_true).count() as f64;
        assert_eq!(s.success_rate, hits / n);
    }
    // replicates see different datasets
    assert_ne!(report.rows[0].dataset_seed, report.rows[3].dataset_seed);
    assert!(report.rows.iter().all(|r| r.runtime_ms.is_none()));
}

#[test]
fn binary_bench_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("spec.json");
    std::fs::write(&spec, serde_json::to_vec(&small_bench()).unwrap()).unwrap();
    let mut outputs = Vec::new();
    for name in ["a.json", "b.json"] {
        let out = dir.path().join(name);
        let run = ccd(&[
            "bench",
            "--spec",
            spec.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(
            run.status.success(),
            "{}",
            String::from_utf8_lossy(&run.stderr)
        );
        outputs.push(std::fs::read(out).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    // the echoed spec reproduces the run
    let report: ccd_cli::RunReport = serde_json::from_slice(&outputs[0]).unwrap();
    assert_eq!(run_bench(&report.spec).unwrap(), report);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("data.csv");
    let out = dir.path().join("r.json");
    let run = ccd(&[
        "simulate",
        "--family",
        "uniform",
        "--d",
        "2",
        "--n",
        "40",
        "--k",
        "2",
        "--seed",
        "4",
        "--out",
        data.to_str().unwrap(),
    ]);
    assert_eq!(run.status.code(), Some(0));
    let run = ccd(&[
        "cluster",
        "--input",
        data.to_str().unwrap(),
        "--mc-replicates",
        "499",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(
        run.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&run.stderr)
    );
    let report: serde_json::Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    assert_eq!(report["results"][0]["labels"].as_array().unwrap().len(), 40);

    let bad_alpha = ccd(&[
        "cluster",
        "--input",
        data.to_str().unwrap(),
        "--alpha",
        "1.5",
    ]);
    assert_eq!(bad_alpha.status.code(), Some(2));
    let few_replicates = ccd(&[
        "cluster",
        "--input",
        data.to_str().unwrap(),
        "--mc-replicates",
        "10",
    ]);
    assert_eq!(few_replicates.status.code(), Some(2));
    let bad_k = ccd(&[
        "simulate",
        "--family",
        "uniform",
        "--d",
        "2",
        "--n",
        "40",
        "--k",
        "4",
        "--out",
        data.to_str().unwrap(),
    ]);
    assert_eq!(bad_k.status.code(), Some(2));

    let missing = ccd(&[
        "cluster",
        "--input",
        dir.path().join("nope.csv").to_str().unwrap(),
    ]);
    assert_eq!(missing.status.code(), Some(3));
    let garbage = dir.path().join("bad.csv");
    std::fs::write(&garbage, "1,2\n3,oops\n").unwrap();
    let parse = ccd(&["cluster", "--input", garbage.to_str().unwrap()]);
    assert_eq!(parse.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&parse.stderr).contains("line 2"));
}
