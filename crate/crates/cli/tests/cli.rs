//! End-to-end tests of the `butterfly` binary: output shapes, exit codes,
//! and the cross-subcommand identities from the library level.

use std::io::Write;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::NamedTempFile;

fn butterfly<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    Command::new(env!("CARGO_BIN_EXE_butterfly"))
        .args(args)
        .env_remove("BUTTERFLY_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf8 stderr")
}

fn k22_file() -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    writeln!(f, "0\t0\t1\n0\t1\t1\n1\t0\t1\n1\t1\t1").unwrap();
    f
}

fn path_arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn count_bucket_on_k22() {
    let f = k22_file();
    let out = butterfly([
        "count",
        "--input",
        path_arg(f.path()),
        "--format",
        "signed-tsv",
        "--algo",
        "bucket",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("balanced=1 "), "{text}");
    assert!(text.contains("total=1 "), "{text}");
}

#[test]
fn count_json_schema_and_cross_algo_identity() {
    let f = k22_file();
    let mut values = Vec::new();
    for algo in ["brute", "base", "bucket", "parallel"] {
        let out = butterfly([
            "count",
            "--input",
            path_arg(f.path()),
            "--algo",
            algo,
            "--output",
            "json",
        ]);
        assert!(out.status.success(), "{algo}: {}", stderr(&out));
        let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
        for key in [
            "algo",
            "balanced",
            "unbalanced",
            "total",
            "wall_time_ms",
            "workers",
        ] {
            assert!(v.get(key).is_some(), "{algo} output missing {key}");
        }
        values.push(v);
    }
    for key in ["balanced", "unbalanced", "total"] {
        let reference = &values[0][key];
        for v in &values[1..] {
            assert_eq!(&v[key], reference, "count fields must agree across algos");
        }
    }
}

#[test]
fn count_is_reproducible_for_fixed_seed() {
    let run = || {
        let out = butterfly([
            "count",
            "--synthetic",
            "random:left=10,right=10,ep=0.5,pp=0.5,seed=42",
            "--algo",
            "bucket",
            "--output",
            "json",
        ]);
        assert!(out.status.success());
        let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
        (v["balanced"].clone(), v["unbalanced"].clone())
    };
    assert_eq!(run(), run());
}

#[test]
fn brute_force_guard_exits_3() {
    let out = butterfly([
        "count",
        "--synthetic",
        "random:left=2000,right=2000,ep=0.0,pp=0.5,seed=0",
        "--algo",
        "brute",
    ]);
    assert_eq!(out.status.code(), Some(3), "{}", stderr(&out));
    assert!(stderr(&out).contains("too large"));
}

#[test]
fn parse_errors_exit_2_and_name_the_line() {
    let mut f = NamedTempFile::new().unwrap();
    writeln!(f, "0\t0\t1\n0\t1\tWAT").unwrap();
    let out = butterfly(["count", "--input", path_arg(f.path()), "--algo", "bucket"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 2"), "{}", stderr(&out));
}

#[test]
fn unsigned_input_requires_sign_prob() {
    let mut f = NamedTempFile::new().unwrap();
    writeln!(f, "0\t0").unwrap();
    let out = butterfly([
        "count",
        "--input",
        path_arg(f.path()),
        "--format",
        "unsigned-tsv",
        "--algo",
        "bucket",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("sign-prob"));
}

#[test]
fn vertex_all_sums_to_four_times_balanced() {
    let f = k22_file();
    let out = butterfly(["vertex", "--input", path_arg(f.path()), "--all"]);
    assert!(out.status.success());
    let sum: u64 = stdout(&out)
        .lines()
        .map(|l| l.split('\t').nth(1).unwrap().parse::<u64>().unwrap())
        .sum();
    assert_eq!(sum, 4); // one balanced butterfly, four members

    let single = butterfly(["vertex", "--input", path_arg(f.path()), "--vertex", "2"]);
    assert_eq!(stdout(&single).trim(), "1");
}

#[test]
fn vertex_unknown_exits_4() {
    let f = k22_file();
    let out = butterfly(["vertex", "--input", path_arg(f.path()), "--vertex", "99"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn estimate_rho_one_is_exact() {
    let f = k22_file();
    let out = butterfly([
        "estimate",
        "--input",
        path_arg(f.path()),
        "--rho",
        "1",
        "--trials",
        "3",
        "--seed",
        "5",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["estimates"], serde_json::json!([1.0, 1.0, 1.0]));
    assert_eq!(v["mean"], serde_json::json!(1.0));
}

#[test]
fn estimate_bad_rho_exits_2() {
    let f = k22_file();
    let out = butterfly([
        "estimate",
        "--input",
        path_arg(f.path()),
        "--rho",
        "1.5",
        "--trials",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bench_emits_csv_with_stable_counts() {
    let out = butterfly([
        "bench",
        "--synthetic",
        "skewed:left=8,right=120,density=0.5,pp=0.5,seed=3",
        "--algos",
        "base,bucket,parallel",
        "--repeats",
        "2",
        "--threads-list",
        "1,2",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "algo,dataset,workers,repeat,balanced,unbalanced,total,wall_time_ms"
    );
    // 2 repeats x (base + bucket + parallel@1 + parallel@2) + 4 median rows.
    assert_eq!(text.lines().count(), 1 + 8 + 4);
    assert_eq!(text.lines().filter(|l| l.contains(",median,")).count(), 4);
}

#[test]
fn bench_single_run_single_algo() {
    let out = butterfly([
        "bench",
        "--synthetic",
        "random:left=6,right=6,ep=0.5,pp=0.5,seed=2",
        "--algos",
        "bucket",
        "--repeats",
        "1",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 3); // header + one run + median
}

#[test]
fn topk_degree_on_k22() {
    let f = k22_file();
    let out = butterfly([
        "topk",
        "--input",
        path_arg(f.path()),
        "--metric",
        "pos-degree",
        "-k",
        "4",
    ]);
    assert!(out.status.success());
    let rows: Vec<String> = stdout(&out).lines().map(str::to_string).collect();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[0], "1\t0\t2");
    assert!(rows.iter().all(|r| r.ends_with("\t2")));
}

#[test]
fn topk_rejects_bad_arguments() {
    let f = k22_file();
    let zero = butterfly([
        "topk",
        "--input",
        path_arg(f.path()),
        "--metric",
        "pos-degree",
        "-k",
        "0",
    ]);
    assert_eq!(zero.status.code(), Some(2));
    let bad_metric = butterfly([
        "topk",
        "--input",
        path_arg(f.path()),
        "--metric",
        "centrality",
        "-k",
        "2",
    ]);
    assert_eq!(bad_metric.status.code(), Some(2));
}

#[test]
fn pair_counts_and_partition_check() {
    let f = k22_file();
    let ok = butterfly([
        "pair",
        "--input",
        path_arg(f.path()),
        "--a",
        "0",
        "--b",
        "1",
    ]);
    assert_eq!(stdout(&ok).trim(), "1");

    let mixed = butterfly([
        "pair",
        "--input",
        path_arg(f.path()),
        "--a",
        "0",
        "--b",
        "2",
    ]);
    assert_eq!(mixed.status.code(), Some(2));

    let unknown = butterfly([
        "pair",
        "--input",
        path_arg(f.path()),
        "--a",
        "0",
        "--b",
        "42",
    ]);
    assert_eq!(unknown.status.code(), Some(4));
}

#[test]
fn convert_assigns_signs_and_round_trips() {
    let mut unsigned = NamedTempFile::new().unwrap();
    for l in 0..6 {
        for r in 0..6 {
            writeln!(unsigned, "{l}\t{r}").unwrap();
        }
    }
    let signed_path = NamedTempFile::new().unwrap();
    let map_path = NamedTempFile::new().unwrap();
    let out = butterfly([
        "convert",
        "--input",
        path_arg(unsigned.path()),
        "--format",
        "unsigned-tsv",
        "--sign-prob",
        "0.5",
        "--seed",
        "7",
        "--out",
        path_arg(signed_path.path()),
        "--id-map-out",
        path_arg(map_path.path()),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));

    let written = std::fs::read_to_string(signed_path.path()).unwrap();
    assert_eq!(written.lines().count(), 36);
    assert!(written
        .lines()
        .all(|l| l.ends_with("\t+1") || l.ends_with("\t-1")));

    let map = std::fs::read_to_string(map_path.path()).unwrap();
    assert_eq!(map.lines().count(), 12);

    // The converted file feeds straight back into counting.
    let count = butterfly([
        "count",
        "--input",
        path_arg(signed_path.path()),
        "--algo",
        "bucket",
    ]);
    assert!(count.status.success());

    // Labels from the id map show up in rankings.
    let ranked = butterfly([
        "topk",
        "--input",
        path_arg(signed_path.path()),
        "--metric",
        "pos-butterfly",
        "-k",
        "2",
        "--id-map",
        path_arg(map_path.path()),
    ]);
    assert!(ranked.status.success());
    assert!(stdout(&ranked).lines().all(|l| l.split('\t').count() == 4));
}

#[test]
fn convert_threshold_mode() {
    let mut konect = NamedTempFile::new().unwrap();
    writeln!(konect, "a m 8.1\na n 5.4\nb m 6.0").unwrap();
    let out = butterfly([
        "convert",
        "--input",
        path_arg(konect.path()),
        "--format",
        "konect",
        "--threshold",
        "6",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert_eq!(text, "a\tm\t+1\na\tn\t-1\nb\tm\t+1\n");
}

#[test]
fn threads_env_applies_only_without_flag() {
    let f = k22_file();
    let with_env = Command::new(env!("CARGO_BIN_EXE_butterfly"))
        .args([
            "count",
            "--input",
            path_arg(f.path()),
            "--algo",
            "parallel",
            "--output",
            "json",
        ])
        .env("BUTTERFLY_THREADS", "3")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_str(stdout(&with_env).trim()).unwrap();
    assert_eq!(v["workers"], serde_json::json!(3));

    let flag_wins = Command::new(env!("CARGO_BIN_EXE_butterfly"))
        .args([
            "count",
            "--input",
            path_arg(f.path()),
            "--algo",
            "parallel",
            "--threads",
            "2",
            "--output",
            "json",
        ])
        .env("BUTTERFLY_THREADS", "3")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_str(stdout(&flag_wins).trim()).unwrap();
    assert_eq!(v["workers"], serde_json::json!(2));
}
