use std::path::PathBuf;
use std::process::{Command, Output};

fn motzkin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_motzkin"))
        .args(args)
        .env_remove("MOTZKIN_OUTPUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = motzkin(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn scratch_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("motzkin-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn weighted_triangle_for_three() {
    let out = stdout(&["count", "--n", "3", "--weighted"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "n,d,count");
    for row in ["3,0,1", "3,1,2", "3,2,3"] {
        assert!(lines.contains(&row), "{row} missing from {out}");
    }
    assert_eq!(out, stdout(&["count", "--n", "3", "--weighted", "--mode", "full"]));
}

#[test]
fn unweighted_triangle_sums_to_motzkin_numbers() {
    let out = stdout(&["count", "--n", "10"]);
    let mut sums = vec![0u64; 11];
    for line in out.lines().skip(1) {
        let f: Vec<u64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        sums[f[0] as usize] += f[2];
    }
    assert_eq!(sums, [1, 1, 2, 4, 9, 21, 51, 127, 323, 835, 2188]);
}

#[test]
fn single_peak_sample() {
    assert_eq!(stdout(&["sample-dp", "--n", "2", "--area", "1", "--count", "1", "--emit", "path"]), "UD\n");
}

#[test]
fn sampled_permutations_have_the_right_displacement() {
    let out = stdout(&["sample-dp", "--n", "12", "--area", "20", "--count", "50", "--emit", "permutation", "--seed", "3"]);
    assert_eq!(out.lines().count(), 50);
    for line in out.lines() {
        let images: Vec<i64> = line.split(' ').map(|x| x.parse().unwrap()).collect();
        let d: i64 = images.iter().enumerate().map(|(i, &x)| (i as i64 + 1 - x).abs()).sum();
        assert_eq!(d, 40, "{line}");
    }
}

#[test]
fn sequence_samples_roundtrip() {
    let out = stdout(&["sample-seq", "--sequence", "1;1,1;2,2", "--count", "40", "--seed", "9"]);
    assert_eq!(out.lines().count(), 40);
    for line in out.lines() {
        let path: motzkin_core::MotzkinPath = line.parse().unwrap();
        assert_eq!(path.building_sequence().to_string(), "1;1,1;2,2");
    }
}

#[test]
fn enumeration_contains_the_worked_example() {
    let out = stdout(&["enumerate", "--n", "10", "--area", "12"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "sequence,m,perm,P");
    assert!(lines.contains(&"\"1;1,1;2,2\",18,1200,21600"));
    let sum = lines[lines.len() - 2].strip_prefix("sum,,,").unwrap();
    let d = lines[lines.len() - 1].strip_prefix("D,,,").unwrap();
    assert_eq!(sum, d);
}

#[test]
fn rolling_sampler_is_refused() {
    let out = motzkin(&["sample-dp", "--n", "6", "--area", "3", "--mode", "rolling"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("full table"));
}

#[test]
fn usage_errors_exit_with_one() {
    assert_eq!(motzkin(&["count"]).status.code(), Some(1));
    assert_eq!(motzkin(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(motzkin(&["sample-seq", "--sequence", "0;0,1"]).status.code(), Some(1));
    assert_eq!(motzkin(&["sample-dp", "--n", "4", "--area", "5"]).status.code(), Some(1));
    assert_eq!(motzkin(&["--help"]).status.code(), Some(0));
}

#[test]
fn identical_specs_give_identical_bytes() {
    let args = ["sample-dp", "--n", "15", "--area", "30", "--count", "200", "--seed", "42", "--weighted"];
    let a = stdout(&args);
    assert_eq!(a, stdout(&args));
    let mut threaded = args.to_vec();
    threaded.extend(["--threads", "3"]);
    assert_eq!(a, stdout(&threaded));
    let mut other = args.to_vec();
    other[8] = "43";
    assert_ne!(a, stdout(&other));

    let chain = ["mcmc", "--n", "8", "--area", "9", "--steps", "200", "--runs", "300", "--tv-every", "50"];
    assert_eq!(stdout(&chain), stdout(&chain));
}

#[test]
fn json_mirrors_csv_records() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&["count", "--n", "2", "--format", "json"])).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[3]["n"], 2);
    assert_eq!(rows[3]["d"], 1);
    assert_eq!(rows[3]["count"], "1");
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&["sample-dp", "--n", "2", "--area", "1", "--format", "json"])).unwrap();
    assert_eq!(v[0]["path"], "UD");
}

#[test]
fn relative_output_goes_to_the_output_directory() {
    let dir = scratch_dir("outdir");
    let status = Command::new(env!("CARGO_BIN_EXE_motzkin"))
        .args(["count", "--n", "4", "--output", "tri/count.csv"])
        .env("MOTZKIN_OUTPUT_DIR", &dir)
        .status()
        .unwrap();
    assert!(status.success());
    let written = std::fs::read_to_string(dir.join("tri/count.csv")).unwrap();
    assert_eq!(written, stdout(&["count", "--n", "4"]));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn mcmc_curve_layout() {
    let out = stdout(&["mcmc", "--n", "8", "--area", "9", "--steps", "1000", "--runs", "2000", "--tv-every", "100"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "t,tv_distance,visited_states");
    assert_eq!(lines.len(), 12);
    assert!(lines[1].starts_with("0,"));
    let tv = |l: &str| l.split(',').nth(1).unwrap().parse::<f64>().unwrap();
    assert!(tv(lines[1]) > tv(lines[11]));
}

#[test]
fn small_mixing_sweep() {
    let out = stdout(&["mixing-sweep", "--min-n", "4", "--max-n", "5", "--runs", "500"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "n,A,mixing_time");
    assert!(lines.len() > 2);
    for line in &lines[1..] {
        let f: Vec<&str> = line.split(',').collect();
        assert!(f[0] == "4" || f[0] == "5");
        f[2].parse::<u64>().expect("mixed within the horizon");
    }
}

#[test]
fn verify_passes_on_small_widths() {
    let out = stdout(&["verify", "--max-n", "6"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "check,result,detail");
    assert_eq!(lines.len(), 11);
    assert!(lines[1..].iter().all(|l| l.contains(",PASS,")), "{out}");
}
