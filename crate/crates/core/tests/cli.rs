use eisdepth::cli::{run, EXIT_INVARIANT, EXIT_OK, EXIT_USAGE};
use std::path::Path;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("eisdepth").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn with_cache<'a>(dir: &'a Path, args: &[&'a str]) -> Vec<&'a str> {
    let mut v = args.to_vec();
    v.extend(["--cache-dir", dir.to_str().unwrap()]);
    v
}

#[test]
fn compute_341_text() {
    let (code, out, _) = call(&["compute", "--level", "341", "--prime", "5", "--no-cache"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("D = 3 > val = 2 (strict)"), "{out}");
    assert!(out.contains("N = 341 = 11*31, p = 5"));
    assert!(out.contains("level | r | ramindex | resfield | orbit"));
    assert!(out.contains("verdict: NOT locally principal"), "{out}");
    let table_rows = out.lines().filter(|l| l.matches(" | ").count() == 4 && !l.contains("level")).count();
    assert_eq!(table_rows, 3);
}

#[test]
fn formats_agree() {
    let args = ["compute", "--level", "66", "--prime", "5", "--no-cache"];
    let (c1, text, _) = call(&args);
    let (c2, json, _) = call(&[&args[..], &["--format", "json"]].concat());
    let (c3, csv, _) = call(&[&args[..], &["--format", "csv"]].concat());
    assert_eq!((c1, c2, c3), (EXIT_OK, EXIT_OK, EXIT_OK));

    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["schema"], 1);
    let r = &v["reports"][0];
    assert_eq!(r["depth"], 2);
    assert_eq!(r["val_phi"], 1);
    assert_eq!(r["eisenstein_constant"], "5/6");
    assert_eq!(r["index"]["index"], "120");
    assert_eq!(r["index"]["local"]["minimal_generators"], 2);
    assert_eq!(r["verdict"], "not-locally-principal");
    assert!(text.contains(&format!("D = {} > val = {}", r["depth"], r["val_phi"])));
    assert!(text.contains("#T/J = 120"));

    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "N,p,level,r,ramindex,resfield,orbit,lambda");
    assert_eq!(lines.len() - 1, r["records"].as_array().unwrap().len());
    let mut levels: Vec<u64> = lines[1..].iter().map(|l| l.split(',').nth(2).unwrap().parse().unwrap()).collect();
    levels.sort_unstable();
    assert_eq!(levels, [11, 66]);
}

#[test]
fn default_primes() {
    let (code, out, _) = call(&["compute", "--level", "55", "--no-cache", "--no-index", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let ps: Vec<u64> = v["reports"].as_array().unwrap().iter().map(|r| r["p"].as_u64().unwrap()).collect();
    assert_eq!(ps, [3, 5]);
    assert!(v["reports"][0]["index"].is_null());
}

#[test]
fn usage_errors() {
    let (code, _, err) = call(&["compute", "--level", "12", "--prime", "5", "--no-cache"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("not squarefree"));
    let (code, _, err) = call(&["compute", "--level", "11", "--prime", "2", "--no-cache"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("p = 2"));
    let (code, _, _) = call(&["compute", "--level", "5", "--no-cache"]);
    assert_eq!(code, EXIT_USAGE);
    let (code, _, _) = call(&["frobnicate"]);
    assert_eq!(code, EXIT_USAGE);
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("compute"));
}

#[test]
fn cold_and_warm_runs_are_identical() {
    let dir = tempfile::tempdir().unwrap();
    let args = with_cache(dir.path(), &["compute", "--level", "66", "--format", "json"]);
    let (c1, cold, _) = call(&args);
    let (c2, warm, err) = call(&args);
    assert_eq!((c1, c2), (EXIT_OK, EXIT_OK));
    assert_eq!(cold, warm);
    assert!(err.is_empty());

    let (code, list, _) = call(&with_cache(dir.path(), &["cache", "list", "--format", "csv"]));
    assert_eq!(code, EXIT_OK);
    let levels: Vec<&str> = list.lines().skip(1).map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(levels, ["11", "22", "33", "66"]);

    let (code, _, _) = call(&with_cache(dir.path(), &["cache", "extend", "--level", "66", "--bound", "500"]));
    assert_eq!(code, EXIT_OK);
    let (_, extended, _) = call(&args);
    assert_eq!(cold, extended);

    let (code, out, _) = call(&with_cache(dir.path(), &["cache", "clear"]));
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("removed 4"));
}

#[test]
fn verify_detects_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out, _) = call(&with_cache(dir.path(), &["verify", "--max-level", "66", "--toy-count", "10"]));
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("0 failed"));

    let path = dir.path().join("level-11.txt");
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::write(&path, text.replacen("a 2 -2", "a 2 7", 1)).unwrap();
    let (code, out, _) = call(&with_cache(dir.path(), &["verify", "--max-level", "60", "--toy-count", "0", "--format", "json"]));
    assert_eq!(code, EXIT_INVARIANT);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["passed"], false);
    assert_eq!(v["failures"][0]["suite"], "cache");
}

#[test]
fn verify_single_level() {
    let (code, out, _) = call(&["verify", "--level", "55", "--prime", "5", "--no-cache"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("PASS invariants/55/5"));
}

#[test]
fn toy_subcommand() {
    let (code, out, _) = call(&["toy", "--count", "20", "--seed", "4"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("23/23 passed"), "{out}");
    let (_, again, _) = call(&["toy", "--count", "20", "--seed", "4"]);
    assert_eq!(out, again);
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_eisdepth");
    let out = std::process::Command::new(bin)
        .args(["compute", "--level", "11", "--prime", "5", "--no-cache", "--format", "csv"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "N,p,level,r,ramindex,resfield,orbit,lambda\n11,5,11,1,1,5,0,0\n");
    let out = std::process::Command::new(bin).args(["compute", "--level", "30", "--prime", "4"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
}
