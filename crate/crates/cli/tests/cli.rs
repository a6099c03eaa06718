use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn vinc(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_vinc"));
    cmd.args(args).env_remove("VINC_CACHE").env_remove("THREADS");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn without_timing(mut v: Value) -> Value {
    fn strip(v: &mut Value) {
        match v {
            Value::Object(m) => {
                m.remove("elapsed_ms");
                m.values_mut().for_each(strip);
            }
            Value::Array(a) => a.iter_mut().for_each(strip),
            _ => {}
        }
    }
    strip(&mut v);
    v
}

fn report(out: &Output) -> Value {
    without_timing(serde_json::from_slice(&out.stdout).expect("stdout is one JSON report"))
}

#[test]
fn exit_codes() {
    let pass = vinc(&["equiv", "-p", "124-3", "-p", "134-2", "-n", "8", "-s", "first_letter"], &[]);
    assert_eq!(pass.status.code(), Some(0));
    assert_eq!(report(&pass)["verdict"], "pass");

    let fail = vinc(&["equiv", "-p", "124-3", "-p", "123-4", "-n", "6"], &[]);
    assert_eq!(fail.status.code(), Some(1));
    let r = report(&fail);
    assert_eq!(r["verdict"], "fail");
    assert_eq!(r["counterexample"]["n"], 5);

    for bad in [
        &["count", "-p", "1-1"][..],
        &["count", "-p", "12x"],
        &["equiv", "-p", "12"],
        &["bijection", "-m", "nope"],
        &["count", "-p", "12", "-n", "99"],
        &["frobnicate"],
    ] {
        let out = vinc(bad, &[]);
        assert_eq!(out.status.code(), Some(2), "{bad:?}");
        assert!(out.stdout.is_empty());
    }
    let bad = vinc(&["count", "-p", "12x"], &[]);
    assert!(String::from_utf8_lossy(&bad.stderr).contains("position 2"));
}

#[test]
fn conjecture_holds() {
    let out = vinc(&["conjecture", "-n", "9"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["results"]["parts"].as_array().unwrap().len(), 2);
}

fn run_twice_with_cache(args: &[&str], dir: &Path) -> (Value, Value) {
    let cache = dir.join("counts.json");
    let cache = cache.to_str().unwrap();
    let cold = vinc(args, &[("VINC_CACHE", cache)]);
    let warm = vinc(args, &[("VINC_CACHE", cache)]);
    assert_eq!(cold.status.code(), warm.status.code());
    assert!(warm.stderr.is_empty());
    (report(&cold), report(&warm))
}

#[test]
fn warm_cache_gives_identical_reports() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["count", "-p", "1-23-4", "-n", "8"][..],
        &["stat", "-p", "13-4-2", "-n", "7", "-s", "last_letter"],
        &["equiv", "-p", "124-3", "-p", "123-4", "-n", "7", "-s", "descent_set"],
    ] {
        let (cold, warm) = run_twice_with_cache(args, dir.path());
        assert_eq!(cold, warm, "{args:?}");
        assert!(dir.path().join("counts.json").exists());
        let plain = report(&vinc(args, &[]));
        assert_eq!(cold, plain, "{args:?}");
    }
}

#[test]
fn corrupt_cache_is_ignored() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("counts.json");
    std::fs::write(&cache, "{ truncated").unwrap();
    let args = ["count", "-p", "2-41-3", "-n", "7", "--cache", cache.to_str().unwrap()];
    let out = vinc(&args, &[]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
    let (mut with, mut without) = (report(&out), report(&vinc(&args[..5], &[])));
    with.as_object_mut().unwrap().remove("command");
    without.as_object_mut().unwrap().remove("command");
    assert_eq!(with, without);
    let rewritten: Value = serde_json::from_str(&std::fs::read_to_string(&cache).unwrap()).unwrap();
    assert_eq!(rewritten["schema_version"], 1);
}

#[test]
fn thread_count_does_not_change_reports() {
    for args in [
        &["count", "-p", "31-4-2", "-n", "8"][..],
        &["stat", "-p", "1243-5", "-n", "8", "-s", "descent_set"],
        &["bijection", "-m", "block-1342", "-n", "7"],
        &["suite", "--only", "1,5,12"],
    ] {
        let one = vinc(args, &[("THREADS", "1")]);
        let four = vinc(args, &[("THREADS", "4")]);
        assert_eq!(one.status.code(), Some(0), "{args:?}");
        assert_eq!(report(&one), report(&four), "{args:?}");
    }
}

#[test]
fn suite_verdicts_match_with_and_without_cache() {
    let dir = tempfile::tempdir().unwrap();
    let (cold, warm) = run_twice_with_cache(&["suite", "--only", "1,3,13"], dir.path());
    assert_eq!(cold, warm);
    assert_eq!(cold["verdict"], "pass");
    assert_eq!(cold["results"]["criteria"].as_array().unwrap().len(), 3);
}

#[test]
fn classify_partitions_by_count_vectors() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("patterns.txt");
    std::fs::write(&file, "# length 4\n124-3\n123-4\n\n134-2\n1-23-4\n1-32-4\n").unwrap();
    let out = vinc(&["classify", "-f", file.to_str().unwrap(), "-n", "7"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let classes = report(&out)["results"]["classes"].clone();
    let members: Vec<Vec<String>> = classes
        .as_array()
        .unwrap()
        .iter()
        .map(|c| serde_json::from_value(c["patterns"].clone()).unwrap())
        .collect();
    assert_eq!(members, [vec!["124-3", "134-2"], vec!["123-4"], vec!["1-23-4", "1-32-4"]]);

    std::fs::write(&file, "124-3\n12-2\n").unwrap();
    let bad = vinc(&["classify", "-f", file.to_str().unwrap()], &[]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains(":2:"));
}

#[test]
fn series_report_shape_and_csv() {
    let out = vinc(&["series", "-F", "F3_231_241", "-N", "6", "--check-bruteforce"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["results"]["family"], "F3_231_241");
    assert_eq!(r["results"]["N"], 6);
    let f = r["results"]["F"].as_array().unwrap();
    let at4: u64 = f.iter().filter(|t| t["n"] == 4).map(|t| t["coeff"].as_u64().unwrap()).sum();
    assert_eq!(at4, 23);

    let csv = vinc(&["series", "-F", "F3_231_241", "-N", "3", "--format", "csv"], &[]);
    let text = String::from_utf8(csv.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("family,part,n,a,coeff"));
    assert_eq!(lines.next(), Some("F3_231_241,F,1,1,1"));
}

#[test]
fn barred_and_revdel() {
    let ok = vinc(&["barred", "-v", "3-14-2", "-b", "41~352", "-n", "7"], &[]);
    assert_eq!(ok.status.code(), Some(0));
    let diff = vinc(&["barred", "-v", "1-24-3", "-b", "25~134", "-n", "6"], &[]);
    assert_eq!(diff.status.code(), Some(1));
    assert!(report(&diff)["counterexample"]["permutation"].is_string());

    let good = vinc(&["revdel", "-p", "132-4", "--prefix", "231", "--set", "1,2", "-n", "8"], &[]);
    assert_eq!(good.status.code(), Some(0));
    let bad = vinc(&["revdel", "-p", "1-2-3", "--prefix", "12", "--set", "1", "-n", "5"], &[]);
    assert_eq!(bad.status.code(), Some(1));
}
