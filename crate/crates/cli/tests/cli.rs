use std::process::{Command, Output};

use evenup::catalan::{expand_catalan_gf, CatalanVariant};
use evenup::genfunc::expand_gf;
use evenup::oeis::{compare, parse_bfile, to_bigints};
use evenup::words::WordClass;

fn evenup(args: &[&str]) -> Output {
    let cache = tempfile::tempdir().unwrap();
    Command::new(env!("CARGO_BIN_EXE_evenup"))
        .args(args)
        .env("OEIS_CACHE_DIR", cache.path())
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = evenup(args);
    assert!(out.status.success(), "{args:?} failed: {}", stderr(&out));
    stdout(&out)
}

#[test]
fn count_examples() {
    assert_eq!(ok(&["count", "--class", "even-up", "--k", "5", "--n", "10"]), "911219\n");
    assert_eq!(ok(&["count", "--catalan", "weakly-odd-up", "--n", "0"]), "1\n");
    for method in ["transfer", "gf", "brute"] {
        let args = ["count", "--class", "cyclic-weakly-even-up", "--k", "4", "--n", "9", "--method", method];
        assert_eq!(ok(&args), "5779\n", "{method}");
    }
    for method in ["enum", "dp", "gf", "conv"] {
        let args = ["count", "--catalan", "weakly-even-up", "--n", "10", "--method", method];
        assert_eq!(ok(&args), "4654\n", "{method}");
    }
}

#[test]
fn table_csv_grid() {
    let text = ok(&["table", "--class", "odd-up", "--k-max", "3", "--n-max", "4", "--format", "csv"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "k,n,count");
    assert_eq!(lines.len(), 1 + 3 * 5);
    assert!(lines.contains(&"2,4,8"));
    assert!(lines.contains(&"3,4,13"));
}

#[test]
fn table_catalan_all() {
    let text = ok(&["table", "--catalan", "all", "--n-max", "10", "--format", "csv"]);
    let rows = text.lines().skip(1).count();
    assert_eq!(rows, 8 * 11);
    assert!(text.contains("strict-odd-up-even-end,10,603\n"));
    assert!(text.contains("weakly-odd-up,10,5448\n"));
}

#[test]
fn crosscheck_agrees() {
    let text = ok(&["crosscheck", "--class", "cyclic-odd-up", "--k", "4", "--n-max", "9"]);
    assert!(text.contains("24914"));
    assert!(text.ends_with("all engines agree\n"));

    let text = ok(&["crosscheck", "--catalan", "strict-odd-up-even-end", "--n-max", "10"]);
    let last: Vec<&str> = text
        .lines()
        .filter(|l| l.trim_end().ends_with("agree") && !l.starts_with("all"))
        .map(|l| l.split_whitespace().nth(1).unwrap())
        .collect();
    assert_eq!(last, ["1", "0", "1", "1", "3", "6", "15", "36", "91", "232", "603"]);
}

#[test]
fn crosscheck_reports_skipped_brute_force() {
    let text = ok(&["crosscheck", "--class", "even-up", "--k", "3", "--n-max", "8", "--budget", "100"]);
    assert!(text.contains("note: brute skipped for n >= 5"));
    assert!(text.ends_with("all engines agree\n"));
}

#[test]
fn oeis_matches_vendored_snapshots() {
    let text = ok(&["oeis", "--class", "weakly-even-up", "--k", "5", "--id", "A012814"]);
    assert!(text.contains("full match"), "{text}");
    let text = ok(&["oeis", "--catalan", "strict-even-up-odd-end", "--id", "A001006"]);
    assert!(text.contains("full match"), "{text}");
}

#[test]
fn oeis_mismatch_exits_one() {
    let out = evenup(&["oeis", "--class", "even-up", "--k", "2", "--id", "A000045"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("first mismatch"));
}

#[test]
fn oeis_fetch_failure_exits_four() {
    let out = evenup(&["oeis", "--class", "even-up", "--k", "2", "--id", "A999999"]);
    assert_eq!(out.status.code(), Some(4), "{}", stderr(&out));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["count", "--class", "sideways-up", "--k", "2", "--n", "3"][..],
        &["count", "--class", "even-up", "--k", "0", "--n", "3"],
        &["count", "--catalan", "weakly-odd-up", "--n", "3", "--method", "transfer"],
        &["count", "--catalan", "strict-even-up-even-end", "--n", "3", "--method", "gf"],
        &["oeis", "--class", "even-up", "--k", "2", "--id", "B12"],
        &["table", "--class", "even-up", "--k-max", "3", "--n-max", "3", "--format", "bfile"],
        &["table", "--n-max", "3"],
    ] {
        let out = evenup(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", stderr(&out));
    }
}

#[test]
fn budget_exceeded_exits_three() {
    let out = evenup(&["count", "--class", "even-up", "--k", "9", "--n", "20", "--method", "brute", "--budget", "1000"]);
    assert_eq!(out.status.code(), Some(3));
    let out = evenup(&["count", "--catalan", "weakly-odd-up", "--n", "20", "--method", "enum", "--budget", "1000"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn bfile_round_trip() {
    let n_max = 15;
    for class in WordClass::ALL {
        for k in 1..=4u32 {
            let name = class.name();
            let k_arg = k.to_string();
            let n_arg = n_max.to_string();
            let text = ok(&["table", "--class", &name, "--k", &k_arg, "--n-max", &n_arg, "--format", "bfile"]);
            let seq = parse_bfile(&text).unwrap();
            let expected = to_bigints(&expand_gf(class, k, n_max).unwrap());
            let report = compare(&expected, &seq, 0);
            assert!(report.is_full_match() && report.matched == n_max + 1, "{name} k={k}: {report}");
        }
    }
    for v in CatalanVariant::WITH_CLOSED_FORM {
        let name = v.name();
        let text = ok(&["table", "--catalan", &name, "--n-max", "12", "--format", "bfile"]);
        let seq = parse_bfile(&text).unwrap();
        let expected = to_bigints(&expand_catalan_gf(v, 12).unwrap());
        let report = compare(&expected, &seq, 0);
        assert!(report.is_full_match() && report.matched == 13, "{name}: {report}");
    }
}

#[test]
fn formats_carry_the_same_numbers() {
    let base = ["table", "--class", "cyclic-weakly-odd-up", "--k-max", "4", "--n-max", "8", "--format"];
    let with = |f: &str| {
        let mut args = base.to_vec();
        args.push(f);
        ok(&args)
    };

    let from_csv: Vec<(u32, usize, String)> = with("csv")
        .lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[0].parse().unwrap(), f[1].parse().unwrap(), f[2].to_string())
        })
        .collect();

    let json: serde_json::Value = serde_json::from_str(&with("json")).unwrap();
    let from_json: Vec<(u32, usize, String)> = json
        .as_array()
        .unwrap()
        .iter()
        .map(|c| {
            (
                c["k"].as_u64().unwrap() as u32,
                c["n"].as_u64().unwrap() as usize,
                c["count"].as_str().unwrap().to_string(),
            )
        })
        .collect();

    let from_md: Vec<(u32, usize, String)> = with("markdown")
        .lines()
        .skip(2)
        .take_while(|l| l.starts_with('|'))
        .flat_map(|l| {
            let cells: Vec<String> = l.trim_matches('|').split('|').map(|c| c.trim().to_string()).collect();
            let k: u32 = cells[0].parse().unwrap();
            cells[1..].iter().enumerate().map(move |(n, c)| (k, n, c.clone())).collect::<Vec<_>>()
        })
        .collect();

    assert_eq!(from_csv.len(), 4 * 9);
    assert_eq!(from_csv, from_json);
    assert_eq!(from_csv, from_md);
}
