use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_co2plex"));
    c.env_remove("CO2PLEX_CONFIG");
    c
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("co2plex-cli-{name}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    std::fs::create_dir_all(&d).unwrap();
    d
}

fn run(c: &mut Command) -> (i32, String, String) {
    let Output { status, stdout, stderr } = c.output().unwrap();
    (
        status.code().unwrap_or(-1),
        String::from_utf8_lossy(&stdout).into_owned(),
        String::from_utf8_lossy(&stderr).into_owned(),
    )
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn solve_star_and_cycle() {
    let d = scratch("solve");
    let star = write(&d, "star.col", "c star\np edge 4 3\ne 1 2\ne 1 3\ne 1 4\n");
    let (code, out, _) = run(bin().args(["solve", star.to_str().unwrap(), "--alg", "n2"]));
    assert_eq!(code, 0);
    assert!(out.contains("value 3"));
    assert!(out.contains("certificate 2 3 4"));
    let c5 = write(&d, "c5.col", "p edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n");
    for alg in ["n2", "n2-2plex", "e", "e-utter"] {
        let json = d.join(format!("{alg}.json"));
        let (code, out, _) = run(bin().args(["solve", c5.to_str().unwrap(), "--alg", alg, "--json", json.to_str().unwrap()]));
        assert_eq!(code, 0);
        assert!(out.contains("value 3"), "{alg}: {out}");
        let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(json).unwrap()).unwrap();
        assert_eq!(v["value"], "3");
        assert_eq!(v["stats"]["nodes"].as_u64().map(|n| n >= 1), Some(true));
    }
}

#[test]
fn weighted_solve() {
    let d = scratch("weights");
    let p3 = write(&d, "p3.col", "p edge 3 2\ne 1 2\ne 2 3\n");
    let w = write(&d, "w.txt", "1 5/2 1\n");
    let (code, out, _) = run(bin().args(["solve", p3.to_str().unwrap(), "--weights", w.to_str().unwrap()]));
    assert_eq!(code, 0);
    assert!(out.contains("value 7/2"), "{out}");
}

#[test]
fn malformed_instance_exits_one_with_line() {
    let d = scratch("bad");
    let bad = write(&d, "bad.col", "p edge 3 1\ne 1 x\n");
    let (code, _, err) = run(bin().args(["solve", bad.to_str().unwrap()]));
    assert_eq!(code, 1);
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn time_limit_exit_code() {
    let d = scratch("timeout");
    let (code, _, _) = run(bin().args(["gen", "--n", "60", "--p", "0.5", "--count", "1", "--seed", "5", "--outdir", d.to_str().unwrap()]));
    assert_eq!(code, 0);
    let inst = d.join("er_n60_p0.5_s5.col");
    let (code, out, _) = run(bin().args(["solve", inst.to_str().unwrap(), "--time-limit", "0.01", "--alg", "n2"]));
    assert_eq!(code, 2, "{out}");
    assert!(out.contains("status time_limit"));
}

#[test]
fn gen_is_deterministic_and_p0_is_edgeless() {
    let a = scratch("gen-a");
    let b = scratch("gen-b");
    for d in [&a, &b] {
        let (code, _, _) = run(bin().args(["gen", "--n", "10", "--p", "0.5", "--count", "3", "--seed", "1", "--outdir", d.to_str().unwrap()]));
        assert_eq!(code, 0);
    }
    for s in 1..=3 {
        let name = format!("er_n10_p0.5_s{s}.col");
        assert_eq!(std::fs::read(a.join(&name)).unwrap(), std::fs::read(b.join(&name)).unwrap());
    }
    assert_eq!(std::fs::read(a.join("manifest.json")).unwrap(), std::fs::read(b.join("manifest.json")).unwrap());
    let z = scratch("gen-zero");
    run(bin().args(["gen", "--n", "6", "--p", "0", "--count", "1", "--outdir", z.to_str().unwrap()]));
    let text = std::fs::read_to_string(z.join("er_n6_p0_s0.col")).unwrap();
    assert!(text.contains("p edge 6 0"));
}

#[test]
fn utter_dump() {
    let d = scratch("utter");
    let p3 = write(&d, "p3.col", "p edge 3 2\ne 1 2\ne 2 3\n");
    let out = d.join("u.col");
    let (code, _, _) = run(bin().args(["utter", p3.to_str().unwrap(), out.to_str().unwrap()]));
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains("p edge 5 9"));
    assert!(text.contains("c node 4 = edge 1 2"));
    let k2 = write(&d, "k2.col", "p edge 2 1\ne 1 2\n");
    run(bin().args(["utter", k2.to_str().unwrap(), out.to_str().unwrap()]));
    assert!(std::fs::read_to_string(&out).unwrap().contains("p edge 3 3"));
}

#[test]
fn lab_verdicts() {
    let (code, out, _) = run(bin().args(["lab", "hole-rank"]));
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["cases"], 8);
    let (code, _, _) = run(bin().args(["lab", "bijection", "--n-max", "6", "--count", "50"]));
    assert_eq!(code, 0);
    let (code, _, err) = run(bin().args(["lab", "no-such-check"]));
    assert_eq!(code, 1);
    assert!(err.contains("unknown check"));
}

#[test]
fn bench_with_missing_instance_and_config_file() {
    let d = scratch("bench");
    run(bin().args(["gen", "--n", "8", "--p", "0.5", "--count", "3", "--outdir", d.to_str().unwrap()]));
    let list = write(&d, "list.txt", "er_n8_p0.5_s0.col\ner_n8_p0.5_s1.col\nmissing.col\n");
    let cfg = write(&d, "run.cfg", "cut_rounds = 2\nseed = 4\n");
    let csv = d.join("out.csv");
    let (code, out, err) = run(bin()
        .env("CO2PLEX_CONFIG", &cfg)
        .args(["bench", list.to_str().unwrap(), "--algs", "n2,e", "--out", csv.to_str().unwrap(), "--audit"]));
    assert_eq!(code, 0, "{err}");
    assert!(err.contains("missing instance"));
    assert!(out.contains("audit ok"));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 7);
    assert_eq!(text.lines().filter(|l| l.contains(",error,")).count(), 2);
    assert!(text.lines().skip(1).all(|l| l.contains(",4,")));
}
