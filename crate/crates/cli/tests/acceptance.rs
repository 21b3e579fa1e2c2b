//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.

use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use immlab_cli::suite::{run_suite, Suite, Summary};
use immlab::Pattern;

const SEED: u64 = 20_240_601;

fn suite(s: Suite, count: usize) -> Result<Summary, String> {
    let sum = run_suite(s, count, SEED, 1).map_err(|e| e.to_string())?;
    if sum.reports.len() != count {
        return Err(format!("{}: {} reports for {count} instances", sum.suite, sum.reports.len()));
    }
    if let Some(v) = sum.violations.first() {
        return Err(format!("{}: claim violated on {}: {}", sum.suite, v.instance, v.violation));
    }
    if let Some(r) = sum.reports.iter().find(|r| !r.passed()) {
        return Err(format!("{}: {} failed: {:?}", sum.suite, r.instance, r.failures));
    }
    Ok(sum)
}

fn suites(list: &[(Suite, usize)]) -> Result<String, String> {
    let mut parts = Vec::new();
    for &(s, count) in list {
        let sum = suite(s, count)?;
        parts.push(format!("{} {}/{}", sum.suite, sum.passed, count));
    }
    Ok(parts.join(", "))
}

fn immlab(args: &[&str]) -> i32 {
    let out = Command::new(env!("CARGO_BIN_EXE_immlab"))
        .args(args)
        .output()
        .expect("spawn immlab");
    out.status.code().unwrap_or(-1)
}

fn round_trip() -> Result<String, String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let p = |name: String| dir.path().join(name).to_string_lossy().into_owned();
    let mut tampered = 0;
    for i in 0..20u64 {
        let graph = p(format!("g{i}.json"));
        let cert = p(format!("g{i}.cert.json"));
        // auto needs a free pattern or n <= 10, and dense alpha2 graphs rarely have one
        let n = (4 + i % 12).to_string();
        let small = (4 + i % 7).to_string();
        let seed = (SEED + i).to_string();
        let gen: Vec<&str> = match i % 4 {
            0 => vec!["gen", "--family", "alpha2", "--n", &small],
            1 => vec!["gen", "--family", "hfree", "--pattern", "C4", "--n", &n],
            2 => vec!["gen", "--family", "forbholes", "--alpha", "2"],
            _ => vec!["gen", "--family", "dominating", "--pattern", "P4", "--n", &small],
        };
        let mut gen = gen;
        gen.extend(["--seed", &seed, "--out", &graph]);
        for (step, args) in [
            ("gen", gen),
            ("solve", vec!["solve", &graph, "--out", &cert]),
            ("verify", vec!["verify", &graph, &cert]),
        ] {
            let code = immlab(&args);
            if code != 0 {
                return Err(format!("instance {i}: {step} exited {code}"));
            }
        }
        let text = std::fs::read_to_string(&cert).map_err(|e| e.to_string())?;
        let c: serde_json::Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
        let paths = c["paths"].as_array().map_or(0, Vec::len);
        for j in 0..paths {
            let mut bad = c.clone();
            let v = &mut bad["paths"][j]["walk"][0];
            *v = (v.as_u64().expect("vertex id") ^ 1).into();
            let bad_path = p(format!("g{i}.bad{j}.json"));
            std::fs::write(&bad_path, bad.to_string()).map_err(|e| e.to_string())?;
            let code = immlab(&["verify", &graph, &bad_path]);
            if code != 1 {
                return Err(format!("instance {i}: tampered path {j} gave exit {code}"));
            }
            tampered += 1;
        }
    }
    Ok(format!("20 round trips, {tampered} tampered paths rejected"))
}

type Check = Box<dyn Fn() -> Result<String, String>>;

fn main() -> ExitCode {
    let checks: Vec<(&str, Duration, Check)> = vec![
        ("path inflations", Duration::from_secs(10), Box::new(|| suites(&[(Suite::PathInflation, 200)]))),
        ("cycle inflations", Duration::from_secs(60), Box::new(|| suites(&[(Suite::CycleInflation, 200)]))),
        ("C5 with bags of two", Duration::from_secs(5), Box::new(|| suites(&[(Suite::Hajos, 1)]))),
        ("long-hole decomposition", Duration::from_secs(120), Box::new(|| suites(&[(Suite::Forbholes, 100)]))),
        (
            "dominating extensions",
            Duration::from_secs(120),
            Box::new(|| {
                suites(&[
                    (Suite::Dominating(Pattern::C4), 100),
                    (Suite::Dominating(Pattern::C5), 100),
                    (Suite::Dominating(Pattern::P4), 100),
                ])
            }),
        ),
        (
            "house-free and owh-free",
            Duration::from_secs(300),
            Box::new(|| suites(&[(Suite::House, 100), (Suite::Owh, 100)])),
        ),
        ("seven patterns end to end", Duration::from_secs(300), Box::new(|| suites(&[(Suite::Vergara, 350)]))),
        ("oracle agreement", Duration::from_secs(600), Box::new(|| suites(&[(Suite::OracleAgree, 100)]))),
        ("K4minus-free partitions", Duration::from_secs(30), Box::new(|| suites(&[(Suite::K4Minus, 51)]))),
        ("cli round trip", Duration::from_secs(10), Box::new(round_trip)),
    ];
    assert!(Path::new(env!("CARGO_BIN_EXE_immlab")).exists());
    let mut failed = 0;
    for (i, (name, limit, check)) in checks.iter().enumerate() {
        let start = Instant::now();
        let res = check();
        let took = start.elapsed();
        let res = match res {
            Ok(msg) if took > *limit => Err(format!("{msg}; took {took:.2?}, limit {limit:?}")),
            r => r,
        };
        match res {
            Ok(msg) => println!("PASS {:>2} {name}: {msg} ({took:.2?})", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {msg} ({took:.2?})", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", checks.len() - failed, checks.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
