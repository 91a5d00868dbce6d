use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn denergy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_denergy"))
        .args(args)
        .env_remove("DENERGY_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Header row and data rows of a CSV document, metadata lines dropped.
fn csv(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("#format=denergy-csv/1"));
    let mut body = lines.filter(|l| !l.starts_with('#'));
    let header = body.next().unwrap().split(',').map(String::from).collect();
    let rows = body
        .map(|l| l.split(',').map(String::from).collect())
        .collect();
    (header, rows)
}

fn assert_error(out: &Output, code: i32, kind: &str) {
    assert_eq!(
        out.status.code(),
        Some(code),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let err = String::from_utf8(out.stderr.clone()).unwrap();
    let lines: Vec<&str> = err.lines().collect();
    assert_eq!(lines.len(), 1, "{err}");
    assert!(
        lines[0].starts_with(&format!("error kind={kind} reason=\"")),
        "{err}"
    );
    assert!(lines[0].ends_with('"'));
}

#[test]
fn golden_headers() {
    let dir = tempfile::tempdir().unwrap();
    let pts = dir.path().join("p.txt");
    fs::write(&pts, "0 0\n1 0\n").unwrap();
    let cases: &[(&[&str], &str)] = &[
        (&["energy", "--grid", "2x3"], "N,k,E_k,d,holder_bound"),
        (&["energy", "--points", pts.to_str().unwrap()], "N,k,E_k,d,holder_bound"),
        (&["sums", "--xmax", "100"], "form,k,x,S_k"),
        (
            &["fit", "--xmin", "100", "--xmax", "10000"],
            "form,k,degree,power,coefficient,residual,condition,x_min,x_max",
        ),
        (&["zeta", "--form", "-3", "--s", "2", "--cutoff", "1000"], "a,b,c,s,k,method,value,error_estimate"),
        (
            &["lattice-compare", "--D=-1,-3", "--N", "100"],
            "rank,D,k,N,cutoff,E_k,reference,below_reference",
        ),
        (
            &["probe", "--D=-1", "--s", "2", "--cutoff", "1000"],
            "a,b,c,s,k,method,value,error_estimate,hexagonal_value,difference,asserted,exceeds_hexagonal",
        ),
        (&["scan", "--m", "2", "--sides", "3,5"], "kind,m,k,N,ratio"),
    ];
    for (args, header) in cases {
        let text = stdout(&denergy(args));
        assert_eq!(
            text.lines().next(),
            Some("#format=denergy-csv/1"),
            "{args:?}"
        );
        assert_eq!(csv(&text).0.join(","), *header, "{args:?}");
    }
}

#[test]
fn grid_energy_matches_pair_oracle() {
    let side = 40i64;
    let pts: Vec<(i64, i64)> = (1..=side)
        .flat_map(|x| (1..=side).map(move |y| (x, y)))
        .collect();
    let mut counts = std::collections::HashMap::<i64, u64>::new();
    for (i, p) in pts.iter().enumerate() {
        for (j, q) in pts.iter().enumerate() {
            if i != j {
                *counts
                    .entry((p.0 - q.0).pow(2) + (p.1 - q.1).pow(2))
                    .or_default() += 1;
            }
        }
    }
    let e2: u128 = counts
        .values()
        .map(|&c| u128::from(c) * u128::from(c))
        .sum();

    let (_, rows) = csv(&stdout(&denergy(&["energy", "--grid", "2x40", "--k", "2"])));
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][0], "1600");
    assert_eq!(rows[0][1], "2");
    assert_eq!(rows[0][2], e2.to_string());
    assert_eq!(rows[0][3], counts.len().to_string());
    let bound: f64 = rows[0][4].parse().unwrap();
    assert!(bound > 0.0 && bound <= counts.len() as f64);
}

#[test]
fn two_point_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("two.txt");
    fs::write(&path, "# a unit segment\n0 0\n1 0\n").unwrap();
    let (_, rows) = csv(&stdout(&denergy(&[
        "energy",
        "--points",
        path.to_str().unwrap(),
        "--k",
        "2",
    ])));
    assert_eq!(rows, vec![vec!["2", "2", "4", "1", "1.00000000000000e0"]]);
}

#[test]
fn large_grid_gives_one_row_per_order() {
    let (_, rows) = csv(&stdout(&denergy(&[
        "energy", "--grid", "2x1024", "--k", "2,3",
    ])));
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0][1], "2");
    assert_eq!(rows[1][1], "3");
    assert!(rows.iter().all(|r| r[0] == "1048576"));
}

#[test]
fn final_sum_matches_oracle() {
    let x = 1_000_000i64;
    let mut r = vec![0u64; x as usize + 1];
    let mut a = -1000i64;
    while a <= 1000 {
        for b in -1000i64..=1000 {
            let n = a * a + b * b;
            if n <= x {
                r[n as usize] += 1;
            }
        }
        a += 1;
    }
    let s2: u64 = r[1..].iter().map(|&v| v * v).sum();
    let (_, rows) = csv(&stdout(&denergy(&[
        "sums", "--k", "2", "--xmax", "1000000",
    ])));
    let last = rows.last().unwrap();
    assert_eq!(last[2], "1000000");
    assert_eq!(last[3], s2.to_string());
    let xs: Vec<u64> = rows.iter().map(|r| r[2].parse().unwrap()).collect();
    assert!(xs.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn zeta_methods_agree_within_bounds() {
    let (_, rows) = csv(&stdout(&denergy(&[
        "zeta", "--form", "-1", "--s", "2", "--method", "both",
    ])));
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0][5], "direct");
    assert_eq!(rows[1][5], "chowla_selberg");
    let v: Vec<f64> = rows.iter().map(|r| r[6].parse().unwrap()).collect();
    let e: Vec<f64> = rows.iter().map(|r| r[7].parse().unwrap()).collect();
    assert!((v[0] - v[1]).abs() <= e[0] + e[1] + 1e-14 * v[0].abs());
    // 4 zeta(2) beta(2) with Catalan's constant
    let exact = 4.0 * std::f64::consts::PI.powi(2) / 6.0 * 0.915_965_594_177_219;
    assert!((v[1] - exact).abs() < 1e-12);
}

#[test]
fn hexagonal_lattice_ranks_first() {
    let (_, rows) = csv(&stdout(&denergy(&[
        "lattice-compare",
        "--D=-1,-3",
        "--k",
        "2",
        "--N",
        "1000000",
    ])));
    assert_eq!(rows[0][1], "-3");
    assert_eq!(rows[1][1], "-1");
    // E_{-1,2}(N) is S_2(N) for two squares
    let (_, sums) = csv(&stdout(&denergy(&[
        "sums", "--k", "2", "--xmax", "1000000",
    ])));
    assert_eq!(rows[1][5], sums.last().unwrap()[3]);
}

#[test]
fn exit_codes() {
    assert_error(&denergy(&["energy", "--grid", "2x"]), 2, "usage");
    assert_error(&denergy(&["energy"]), 2, "usage");
    assert_error(&denergy(&["nonsense"]), 2, "usage");
    assert_error(
        &denergy(&["zeta", "--form", "1,3,1", "--s", "2"]),
        2,
        "usage",
    );
    assert_error(
        &denergy(&["lattice-compare", "--D=-4", "--N", "10"]),
        2,
        "usage",
    );
    assert_error(
        &denergy(&["energy", "--points", "/nonexistent/file"]),
        2,
        "input",
    );
    assert_error(&denergy(&["energy", "--grid", "3x100000"]), 3, "capacity");
    assert_error(&denergy(&["sums", "--xmax", "1e12"]), 3, "capacity");
    assert_error(
        &denergy(&["zeta", "--form", "-3", "--s", "1.0000001", "--method", "cs"]),
        4,
        "pole",
    );
    assert_error(
        &denergy(&["zeta", "--form", "-3", "--s", "0.9", "--method", "direct"]),
        4,
        "domain",
    );
    assert_error(
        &denergy(&["probe", "--D=-1", "--k", "2", "--s", "0.8"]),
        4,
        "domain",
    );
    let help = denergy(&["--help"]);
    assert!(help.status.success());
}

#[test]
fn json_carries_the_same_fields() {
    let args = ["probe", "--D=-1,-7", "--s", "0.8,2", "--cutoff", "20000"];
    let (header, rows) = csv(&stdout(&denergy(&args)));
    let mut json_args = args.to_vec();
    json_args.push("--json");
    let doc: serde_json::Value = serde_json::from_str(&stdout(&denergy(&json_args))).unwrap();
    assert_eq!(doc["format"], "denergy-json/1");
    assert_eq!(doc["command"], "probe");
    let cols: Vec<&str> = doc["columns"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_str().unwrap())
        .collect();
    assert_eq!(cols, header);
    let jrows = doc["rows"].as_array().unwrap();
    assert_eq!(jrows.len(), rows.len());
    for (j, c) in jrows.iter().zip(&rows) {
        let value: f64 = c[6].parse().unwrap();
        assert_eq!(j["value"].as_f64().unwrap(), value);
        assert_eq!(j["method"], c[5].as_str());
    }
}

#[test]
fn output_is_independent_of_worker_count() {
    for args in [
        &["energy", "--grid", "2x200", "--k", "2,3"][..],
        &["sums", "--k", "3", "--xmax", "300000"][..],
        &["scan", "--m", "3", "--sides", "4,8,12"][..],
        &["energy", "--random", "3x300", "--seed", "5"][..],
    ] {
        let one = stdout(&denergy(&[args, &["--workers", "1"]].concat()));
        let many = stdout(&denergy(&[args, &["--workers", "5"]].concat()));
        assert_eq!(one, many, "{args:?}");
    }
    let a = stdout(&denergy(&["energy", "--random", "2x100", "--seed", "1"]));
    let b = stdout(&denergy(&["energy", "--random", "2x100", "--seed", "2"]));
    assert_ne!(a, b);
}

fn cached_files(dir: &Path) -> Vec<String> {
    let mut v: Vec<String> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    v.sort();
    v
}

#[test]
fn cache_directory_from_flag_and_env() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let args = ["sums", "--form", "-7", "--k", "2", "--xmax", "50000"];
    let plain = stdout(&denergy(&args));

    let out = Command::new(env!("CARGO_BIN_EXE_denergy"))
        .args(args)
        .env("DENERGY_CACHE_DIR", &cache)
        .output()
        .unwrap();
    assert_eq!(stdout(&out), plain);
    assert_eq!(cached_files(&cache), vec!["form_1_1_2_x50000.rpt"]);

    // a corrupted entry is detected and rebuilt
    let file = cache.join("form_1_1_2_x50000.rpt");
    let mut bytes = fs::read(&file).unwrap();
    let mid = bytes.len() / 2;
    bytes[mid] ^= 0x5a;
    fs::write(&file, &bytes).unwrap();
    let flag = denergy(&[&args[..], &["--cache-dir", cache.to_str().unwrap()]].concat());
    assert_eq!(stdout(&flag), plain);
    assert!(String::from_utf8_lossy(&flag.stderr).contains("warning kind=cache"));
    let again = denergy(&[&args[..], &["--cache-dir", cache.to_str().unwrap()]].concat());
    assert_eq!(stdout(&again), plain);
    assert!(again.stderr.is_empty());
    assert_eq!(cached_files(&cache), vec!["form_1_1_2_x50000.rpt"]);
}

#[test]
fn output_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let out = denergy(&[
        "scan",
        "--m",
        "2",
        "--sides",
        "3,5",
        "--json",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(stdout(&out).is_empty());
    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["rows"].as_array().unwrap().len(), 2);
}
