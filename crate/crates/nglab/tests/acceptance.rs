//! The ten acceptance criteria, run through the CLI entry point.
//! Prints one PASS/FAIL line per criterion and exits non-zero if any fails.

use std::time::{Duration, Instant};

use nglab::cli::run_with;
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Largest fitted deviation constant accepted in criterion 7.
const C_MAX: f64 = 3.0;

struct Outcome {
    ok: bool,
    note: String,
}

/// Runs one invocation, returning (exit code, stdout bytes).
fn invoke(args: &[&str], extra: &[&str]) -> (i32, Vec<u8>) {
    let mut argv = vec!["nglab"];
    argv.extend_from_slice(args);
    argv.extend_from_slice(extra);
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_with(argv.iter().copied(), &mut out, &mut err);
    if code != 0 {
        eprintln!("{argv:?} exited {code}: {}", String::from_utf8_lossy(&err));
    }
    (code, out)
}

fn records(bytes: &[u8]) -> Vec<Value> {
    String::from_utf8_lossy(bytes).lines().map(|l| serde_json::from_str(l).expect("JSON line")).collect()
}

/// Every command must exit 0 with `ok` set on each report.
fn all_ok(cmds: &[Vec<String>], extra: &[&str], sink: &mut Vec<u8>) -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0u64;
    for cmd in cmds {
        let args: Vec<&str> = cmd.iter().map(String::as_str).collect();
        let (code, out) = invoke(&args, extra);
        sink.extend_from_slice(&out);
        let recs = records(&out);
        checked += recs.iter().filter_map(|r| r["checked"].as_u64()).sum::<u64>();
        if code != 0 || recs.is_empty() || recs.iter().any(|r| r["ok"] != Value::Bool(true)) {
            failures.push(cmd.join(" "));
        }
    }
    Outcome { ok: failures.is_empty(), note: format!("{checked} checks; failing: {failures:?}") }
}

fn verify(theorem: &str, q: u64, t: Option<u32>, samples: Option<usize>) -> Vec<String> {
    let mut v = vec!["verify".into(), "--theorem".into(), theorem.into(), "--q".into(), q.to_string()];
    if let Some(t) = t {
        v.extend(["--t".into(), t.to_string()]);
    }
    if let Some(s) = samples {
        v.extend(["--samples".into(), s.to_string()]);
    }
    v
}

fn c1(extra: &[&str], sink: &mut Vec<u8>) -> Outcome {
    let cmds: Vec<_> = [(3, 2), (3, 3), (4, 3), (5, 3), (3, 4)].iter().map(|&(q, t)| verify("1a", q, Some(t), None)).collect();
    all_ok(&cmds, extra, sink)
}

fn c2(extra: &[&str], sink: &mut Vec<u8>) -> Outcome {
    let cmds: Vec<_> = [3, 5, 7].iter().map(|&q| verify("1b", q, Some(3), None)).collect();
    all_ok(&cmds, extra, sink)
}

fn c3(extra: &[&str], sink: &mut Vec<u8>) -> Outcome {
    let mut out = all_ok(&[verify("1b", 5, Some(4), None), verify("1b", 7, Some(4), None)], extra, sink);
    // The special pair values themselves.
    let sizes: Vec<Value> = records(sink).iter().rev().take(2).map(|r| r["details"]["special_pair_size"].clone()).collect();
    let expected = [Value::from(14), Value::from(12)];
    out.ok &= sizes == expected;
    out.note = format!("{}; |S4(1,-1)| at q=7,5: {sizes:?}", out.note);
    out
}

fn c4(extra: &[&str], sink: &mut Vec<u8>) -> Outcome {
    all_ok(&[verify("lemma3", 3, Some(4), None), verify("lemma3", 5, Some(4), None)], extra, sink)
}

fn c5(extra: &[&str], sink: &mut Vec<u8>) -> Outcome {
    let cmds = [verify("1c", 5, Some(4), Some(300)), verify("1c", 5, Some(5), Some(20)), verify("1c", 3, Some(5), Some(50))];
    let mut out = all_ok(&cmds, extra, sink);
    let recs = records(sink);
    let tail = &recs[recs.len().saturating_sub(3)..];
    let spectator: Vec<Value> = tail.iter().map(|r| r["details"]["max_spectator_degree"].clone()).collect();
    out.ok &= tail[0]["details"]["max_degree"].as_u64().is_some_and(|d| d <= 6)
        && spectator.iter().all(|d| d.as_u64().is_some_and(|d| d <= 7));
    out.note = format!("{}; max spectator degree of g {spectator:?}", out.note);
    out
}

fn c6(extra: &[&str], sink: &mut Vec<u8>) -> Outcome {
    let mut cmds: Vec<_> = [5, 7, 11, 13, 25, 49].iter().map(|&q| verify("2", q, None, None)).collect();
    for lemma in ["lemma4", "lemma5", "lemma6", "lemma8"] {
        cmds.extend([5, 7, 13].iter().map(|&q| verify(lemma, q, None, None)));
    }
    cmds.extend([5, 7].iter().map(|&q| verify("lemma7", q, None, None)));
    all_ok(&cmds, extra, sink)
}

fn c7(extra: &[&str], sink: &mut Vec<u8>) -> Outcome {
    let cmds: Vec<_> = [3, 4, 5].iter().map(|&q| verify("3", q, Some(3), None)).collect();
    let start = sink.len();
    let mut out = all_ok(&cmds, extra, sink);
    let fitted = records(&sink[start..])
        .iter()
        .filter_map(|r| r["details"]["fitted_constant"].as_f64())
        .fold(0.0f64, f64::max);
    let (code, bytes) = invoke(&["count-subgraphs", "--q", "5", "--t", "4", "--name", "K_{4,7}"], extra);
    sink.extend_from_slice(&bytes);
    let k47 = records(&bytes).first().map(|r| r["row"]["count"].clone());
    out.ok &= fitted <= C_MAX && code == 0 && k47 == Some(Value::from("0"));
    out.note = format!("{}; fitted C = {fitted:.3} (max {C_MAX}); K_{{4,7}} in NG(5,4): {k47:?}", out.note);
    out
}

fn c8(extra: &[&str], sink: &mut Vec<u8>) -> Outcome {
    let cmds: Vec<_> = [(3, 2), (4, 2), (3, 3)].iter().map(|&(q, t)| verify("5", q, Some(t), Some(100))).collect();
    let start = sink.len();
    let mut out = all_ok(&cmds, extra, sink);
    let orders: Vec<Value> = records(&sink[start..]).iter().map(|r| r["details"]["order"].clone()).collect();
    out.ok &= orders == [Value::from("2"), Value::from("24"), Value::from("16")];
    out.note = format!("{}; orders {orders:?}", out.note);
    out
}

fn c9(extra: &[&str], sink: &mut Vec<u8>) -> Outcome {
    let mut cmds: Vec<_> = [5, 7, 9, 11, 13].iter().map(|&q| verify("weil", q, None, Some(200))).collect();
    cmds.extend([5, 7, 9, 11, 13].iter().map(|&q| verify("claim9", q, None, None)));
    all_ok(&cmds, extra, sink)
}

type Criterion = fn(&[&str], &mut Vec<u8>) -> Outcome;

const CRITERIA: [(Criterion, u64); 9] =
    [(c1, 30), (c2, 120), (c3, 300), (c4, 60), (c5, 300), (c6, 600), (c7, 900), (c8, 60), (c9, 60)];

fn line(n: usize, ok: bool, elapsed: Duration, limit: u64, note: &str) -> bool {
    let within = elapsed.as_secs_f64() < limit as f64;
    let pass = ok && within;
    println!(
        "criterion {n:>2}: {} ({:.2}s, limit {limit}s) {note}",
        if pass { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    pass
}

fn main() {
    let mut results = Vec::new();
    let mut suite = Vec::new();
    for (i, (criterion, limit)) in CRITERIA.iter().enumerate() {
        let start = Instant::now();
        let out = criterion(&[], &mut suite);
        results.push(line(i + 1, out.ok, start.elapsed(), *limit, &out.note));
    }

    // Determinism: the whole suite again on one worker and on four, hashed.
    let start = Instant::now();
    let first = Sha256::digest(&suite);
    let mut hashes = vec![first];
    for jobs in ["1", "4"] {
        let mut again = Vec::new();
        for (criterion, _) in CRITERIA.iter() {
            criterion(&["--jobs", jobs], &mut again);
        }
        hashes.push(Sha256::digest(&again));
    }
    let same = hashes.iter().all(|h| *h == first);
    let note = format!("{} bytes, sha256 {:x}", suite.len(), first);
    results.push(line(10, same, start.elapsed(), 1800, &note));

    let failed: Vec<usize> = results.iter().enumerate().filter(|(_, ok)| !**ok).map(|(i, _)| i + 1).collect();
    if !failed.is_empty() {
        eprintln!("failing criteria: {failed:?}");
        std::process::exit(1);
    }
    println!("acceptance: {} of {} criteria pass", results.len(), results.len());
}
