use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_radix-census"))
        .args(args)
        .output()
        .expect("spawn radix-census")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn field<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(": ")))
        .unwrap_or_else(|| panic!("no {key} in {text}"))
}

#[test]
fn expand_examples() {
    let out = run(&["expand", "--num", "1", "--den", "5", "--base", "3"]);
    assert!(out.status.success());
    assert_eq!(field(&stdout(&out), "period"), "0121");

    let out = run(&["expand", "--num", "8", "--den", "9", "--base", "4"]);
    assert_eq!(field(&stdout(&out), "period"), "320");

    let text = stdout(&run(&[
        "expand", "--num", "1", "--den", "24", "--base", "4",
    ]));
    assert_eq!(field(&text, "preperiod"), "00");
    assert_eq!(field(&text, "period"), "2");
    assert_eq!(field(&text, "preperiod_length"), "2");
    assert_eq!(field(&text, "period_length"), "1");
}

#[test]
fn expand_truncates_but_reports_exact_lengths() {
    let out = run(&[
        "expand",
        "--num",
        "1",
        "--den",
        "49",
        "--base",
        "10",
        "--max-digits",
        "5",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["period"], "02040");
    assert_eq!(v["period_length"], 42);
    assert_eq!(v["truncated"], true);
}

#[test]
fn expand_rejects_improper_input() {
    for args in [
        ["expand", "--num", "5", "--den", "5", "--base", "3"],
        ["expand", "--num", "0", "--den", "5", "--base", "3"],
        ["expand", "--num", "1", "--den", "5", "--base", "1"],
        ["expand", "--num", "1", "--den", "0", "--base", "3"],
    ] {
        assert_eq!(run(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn census_examples() {
    let out = run(&["census", "--p", "5", "--m", "2", "--base", "3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "{0:7,1:6,2:7}\n");

    let out = run(&["census", "--p", "7", "--m", "1", "--base", "3", "--check"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("closed_form: {0:2,1:2,2:2}"));
    assert!(stdout(&out).contains("brute: {0:2,1:2,2:2}"));

    let out = run(&["census", "--p", "3", "--m", "2", "--base", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("formula inapplicable"));

    let out = run(&["census", "--p", "3", "--m", "2", "--base", "4", "--brute"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "{0:1,1:1,3:1}\n");
}

#[test]
fn census_json_has_ordered_digit_keys() {
    let out = run(&[
        "census", "--p", "5", "--m", "2", "--base", "3", "--format", "json",
    ]);
    assert!(stdout(&out).contains(r#""census":{"0":7,"1":6,"2":7}"#));
}

#[test]
fn stoneham_examples() {
    let cases: [(&[&str], &str); 3] = [
        (
            &["--b", "2", "--c", "3", "--digits", "9"],
            "stoneham b=2 c=3 radix=b count=9\n000010101\n",
        ),
        (
            &["--b", "2", "--c", "3", "--digits", "11", "--radix", "b2"],
            "stoneham b=2 c=3 radix=b2 count=11\n00222320320\n",
        ),
        (
            &["--b", "3", "--c", "5", "--digits", "10"],
            "stoneham b=3 c=5 radix=b count=10\n0000001210\n",
        ),
    ];
    for (extra, want) in cases {
        let mut args = vec!["stoneham"];
        args.extend_from_slice(extra);
        let fast = run(&args);
        assert!(fast.status.success());
        assert_eq!(stdout(&fast), want);
        assert!(String::from_utf8_lossy(&fast.stderr).contains("path=fast"));
        args.push("--oracle");
        let oracle = run(&args);
        assert_eq!(stdout(&oracle), want);
        assert!(String::from_utf8_lossy(&oracle.stderr).contains("path=oracle"));
    }
}

#[test]
fn stoneham_dump_wraps_at_eighty() {
    let out = run(&["stoneham", "--b", "2", "--c", "5", "--digits", "200"]);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[1].len(), 80);
    assert_eq!(lines[2].len(), 80);
    assert_eq!(lines[3].len(), 40);
}

#[test]
fn stoneham_rejects_bad_specs() {
    assert_eq!(
        run(&["stoneham", "--b", "2", "--c", "4", "--digits", "5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["stoneham", "--b", "5", "--c", "3", "--digits", "5", "--radix", "b2"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn verify_exit_codes() {
    assert_eq!(
        run(&["verify", "fc1", "--max-n", "8"]).status.code(),
        Some(0)
    );
    assert_eq!(
        run(&["verify", "fc2", "--max-n", "7", "--mode", "corrected"])
            .status
            .code(),
        Some(0)
    );

    let out = run(&["verify", "fc2", "--max-n", "0", "--mode", "literal"]);
    assert_eq!(out.status.code(), Some(1));
    let first: serde_json::Value =
        serde_json::from_str(stdout(&out).lines().next().unwrap()).unwrap();
    assert_eq!(
        first["sum"],
        serde_json::json!({"order": 6, "coeffs": [1, 3]})
    );
    assert_eq!(first["part_i_pass"], false);

    assert_eq!(
        run(&["verify", "fc1", "--max-n", "2", "--mode", "corrected"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["verify", "fc2", "--max-n", "99"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["verify", "fc3", "--max-n", "1"]).status.code(),
        Some(2)
    );
}

#[test]
fn verify_reports_come_in_ascending_order() {
    let out = Command::new(env!("CARGO_BIN_EXE_radix-census"))
        .args(["verify", "fc2", "--max-n", "4", "--mode", "both"])
        .env("RADIX_CENSUS_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let lines: Vec<serde_json::Value> = stdout(&out)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 11);
    for (i, v) in lines[..10].iter().enumerate() {
        assert_eq!(v["schema"], 1);
        assert_eq!(v["n"], (i / 2) as u64);
        assert_eq!(v["mode"], if i % 2 == 0 { "literal" } else { "corrected" });
        assert_eq!(v["part_i_pass"], i % 2 == 1);
    }
    assert_eq!(lines[10]["summary"]["passed"], 5);
}

#[test]
fn bad_thread_cap_is_a_usage_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_radix-census"))
        .args(["verify", "fc1", "--max-n", "1"])
        .env("RADIX_CENSUS_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn mahler_examples() {
    let out = run(&["mahler", "--c", "2", "--degree", "32"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "residual zero through degree 32\n");
    assert!(run(&["mahler", "--c", "3", "--degree", "243"])
        .status
        .success());
    assert_eq!(
        run(&["mahler", "--c", "5", "--degree", "4"]).status.code(),
        Some(2)
    );

    let out = run(&["mahler", "--c", "3", "--degree", "30", "--show-series"]);
    assert_eq!(
        stdout(&out),
        "3: 1/3\n9: 1/9\n27: 1/27\nresidual zero through degree 30\n"
    );
}

#[test]
fn output_is_deterministic() {
    let invocations: [&[&str]; 4] = [
        &["stoneham", "--b", "3", "--c", "5", "--digits", "5000"],
        &[
            "verify", "fc2", "--max-n", "3", "--mode", "both", "--format", "json",
        ],
        &[
            "census", "--p", "13", "--m", "2", "--base", "2", "--check", "--format", "csv",
        ],
        &[
            "expand", "--num", "3", "--den", "1000", "--base", "7", "--format", "json",
        ],
    ];
    for args in invocations {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.status.code(), b.status.code());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("radix-census-{}.txt", std::process::id()));
    let p = path.to_str().unwrap();
    let out = run(&[
        "stoneham", "--b", "2", "--c", "3", "--digits", "9", "--out", p,
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(written, "stoneham b=2 c=3 radix=b count=9\n000010101\n");
}
