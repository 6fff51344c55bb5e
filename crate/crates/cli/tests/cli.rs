use std::fs;
use std::process::{Command, Output};

use tempfile::TempDir;

fn juliadiff(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_juliadiff"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

#[test]
fn bounds_ratio_step_converges_at_c5() {
    let out = juliadiff(&["bounds", "--c-re", "5", "--c-im", "0", "--depth", "50"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("theorem_condition=true decay guaranteed"));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 50);
    let last: f64 = rows[49][5].parse().unwrap();
    assert!((last - 0.905541).abs() < 1e-4, "{last}");
}

#[test]
fn bounds_flags_missing_decay_below_threshold() {
    let out = juliadiff(&["bounds", "--c-re", "3", "--c-im", "0", "--depth", "50", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["theorem_condition"], false);
    assert_eq!(v["status"], "decay not guaranteed");
    assert!(v["decay"].is_null());
    assert!(stderr(&out).contains("decay not guaranteed"));
}

#[test]
fn connected_regime_is_an_argument_error() {
    let out = juliadiff(&["cover", "--c-re", "1.5", "--c-im", "-1", "--depth", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("error:"));
    assert!(out.stdout.is_empty());
}

#[test]
fn malformed_arguments_exit_2() {
    for args in [
        vec!["bounds", "--c-re", "5"],
        vec!["bounds", "--c-re", "five", "--c-im", "0"],
        vec!["diff", "--c-re", "5", "--c-im", "0", "--cell", "0"],
        vec!["cover", "--c-re", "5", "--c-im", "0", "--depth", "45"],
        vec!["cover", "--c-re", "5", "--c-im", "0", "--samples", "4"],
        vec!["bounds", "--c-re", "5", "--c-im", "0", "--epsilon", "-1"],
        vec!["bounds", "--c-re", "5", "--c-im", "0", "--epsilon", "3"],
        vec!["bounds", "--c-re", "5", "--c-im", "0", "--format", "pgm"],
        vec!["nonsense"],
    ] {
        let out = juliadiff(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", stderr(&out));
        assert!(stderr(&out).starts_with("error:"), "{args:?}");
    }
}

#[test]
fn env_cap_overrides_limits() {
    let out = Command::new(env!("CARGO_BIN_EXE_juliadiff"))
        .args(["cover", "--c-re", "5", "--c-im", "0", "--depth", "8"])
        .env("JULIADIFF_MAX_POINTS", "1000")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("error:"));
}

#[test]
fn verify_reference_configuration_exits_0() {
    let out = juliadiff(&["verify", "--c-re", "5", "--c-im", "0", "--depth", "5", "--cell", "0.01"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.lines().any(|l| l.starts_with("PASS lemma1.contraction")));
    assert!(text.trim_end().ends_with("ALL PASS"));
}

#[test]
fn verify_failure_exits_1() {
    let out = juliadiff(&["verify", "--c-re", "-5", "--c-im", "0", "--depth", "2", "--cell", "0.05"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL cover.generate"));
    assert!(stderr(&out).starts_with("error:"));
}

#[test]
fn cover_and_diff_layouts() {
    let cover = stdout(&juliadiff(&["cover", "--c-re", "5", "--c-im", "0", "--depth", "2"]));
    assert!(cover.starts_with("seq,center_re,center_im,radius,sampled_diam\n"));
    assert_eq!(cover.lines().count(), 1 + 8);
    assert!(cover.lines().nth(1).unwrap().starts_with("000,"));

    let diff = juliadiff(&["diff", "--c-re", "5", "--c-im", "0", "--depth", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&diff.stdout).unwrap();
    assert_eq!(v["disks"].as_array().unwrap().len(), 16);
    assert!(v["union_area"].as_f64().unwrap() <= v["sum_area"].as_f64().unwrap() + v["dilation_margin"].as_f64().unwrap());
}

#[test]
fn renders_and_masks_are_written() {
    let dir = TempDir::new().unwrap();
    let render = dir.path().join("cover.ppm");
    let out = juliadiff(&[
        "cover", "--c-re", "5", "--c-im", "0", "--depth", "3", "--render", render.to_str().unwrap(),
        "--render-size", "128",
    ]);
    assert!(out.status.success());
    let ppm = fs::read(&render).unwrap();
    assert!(ppm.starts_with(b"P6\n128 128\n255\n"));
    assert_eq!(ppm.len(), b"P6\n128 128\n255\n".len() + 3 * 128 * 128);

    let masks = dir.path().join("masks");
    let out = juliadiff(&[
        "oracle", "--c-re", "5", "--c-im", "0", "--depth", "2", "--cell", "0.05", "--format", "pgm",
        "--out", masks.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    for name in ["inner_n2", "outer_n2", "difference_n2"] {
        let pgm = fs::read(masks.join(format!("{name}.pgm"))).unwrap();
        assert!(pgm.starts_with(b"P5\n"));
        let side: serde_json::Value =
            serde_json::from_str(&fs::read_to_string(masks.join(format!("{name}.json"))).unwrap()).unwrap();
        for key in ["origin", "cell", "width", "height", "mode", "n", "c"] {
            assert!(!side[key].is_null(), "{name} sidecar lacks {key}");
        }
    }
}

fn run_with_threads(threads: &str, args: &[&str], out_file: &std::path::Path) -> Vec<u8> {
    let mut full = vec!["--threads", threads];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", out_file.to_str().unwrap()]);
    let out = juliadiff(&full);
    assert!(out.status.success(), "{args:?}: {}", stderr(&out));
    fs::read(out_file).unwrap()
}

#[test]
fn outputs_are_byte_identical_across_runs_and_threads() {
    let dir = TempDir::new().unwrap();
    let base = ["--c-re", "4", "--c-im", "3"];
    let cases: Vec<Vec<&str>> = vec![
        vec!["bounds", "--depth", "200", "--format", "json"],
        vec!["bounds", "--depth", "60"],
        vec!["cover", "--depth", "6"],
        vec!["cover", "--depth", "4", "--format", "ppm", "--render-size", "96"],
        vec!["diff", "--depth", "4", "--format", "json", "--cell", "0.02"],
        vec!["diff", "--depth", "3", "--format", "ppm", "--render-size", "96"],
        vec!["oracle", "--depth", "3", "--cell", "0.02", "--format", "json"],
        vec!["verify", "--depth", "3", "--cell", "0.02", "--format", "json", "--disk-pairs", "4"],
    ];
    for (k, case) in cases.iter().enumerate() {
        let mut args = vec![case[0]];
        args.extend_from_slice(&base);
        args.extend_from_slice(&case[1..]);
        let path = dir.path().join(format!("out{k}"));
        let one = run_with_threads("1", &args, &path);
        let again = run_with_threads("1", &args, &path);
        let many = run_with_threads("8", &args, &path);
        assert!(!one.is_empty());
        assert_eq!(one, again, "{args:?} differs between runs");
        assert_eq!(one, many, "{args:?} differs between thread counts");
    }
}
