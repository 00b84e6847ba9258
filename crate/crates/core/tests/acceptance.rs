//! Acceptance suite: runs every criterion at its stated parameters and time
//! budget, printing one PASS/FAIL line each.
//!
//! Three criteria fail as stated (1, 3 and 11). For those, the process still
//! exits successfully only if the failures are exactly the known ones:
//!
//! * 1: at p = 3 the rank bound for S is also attained at points with exactly
//!   one zero coordinate; every failure is of that form and all of them occur.
//! * 3: at p = 3 those same points have the generic Jordan type of D(1), so
//!   the non-generic locus is strictly smaller than V(p_k) plus the
//!   coordinate hyperplanes.
//! * 11: Jordan types of M* and of wedge^r M agree with the predicted ones
//!   only at points where M has its generic type; at special points they
//!   depend on the choice of generators.
//!
//! Any other failure, or any time budget overrun, fails the target.

use std::process::ExitCode;
use std::time::Instant;

use eamod::gf::FieldCtx;
use eamod::modrep::{EAModule, Point};
use eamod::suite::{run_suite, Check, Suite, SuiteParams, SuiteReport};

fn count_points_with_one_zero(q: u64, k: u32) -> u64 {
    k as u64 * (q - 1).pow(k - 1)
}

/// Rank-lemma failures: clause (i) only, exactly at the points with one zero
/// coordinate, and only for p = 3.
fn criterion1_known(rep: &SuiteReport) -> Result<(), String> {
    for c in &rep.checks {
        let detail = c.detail.as_ref().ok_or("missing detail")?;
        let p = detail["p"].as_u64().unwrap();
        let k = detail["k"].as_u64().unwrap() as u32;
        let q: u64 = c.id.rsplit(".F").next().unwrap().parse().unwrap();
        let clauses = detail["clauses"].as_array().unwrap();
        let fails: Vec<&Vec<serde_json::Value>> =
            clauses.iter().map(|cl| cl["failures"].as_array().unwrap()).collect();
        if p != 3 {
            if c.pass != Some(true) {
                return Err(format!("{} fails at p = {p}", c.id));
            }
            continue;
        }
        if fails[1..].iter().any(|f| !f.is_empty()) {
            return Err(format!("{}: failures outside clause (i)", c.id));
        }
        for pt in fails[0] {
            let zeros = pt.as_array().unwrap().iter().filter(|x| x.as_str() == Some("0")).count();
            if zeros != 1 {
                return Err(format!("{}: failing point {pt} has {zeros} zero coordinates", c.id));
            }
        }
        let expected = count_points_with_one_zero(q, k);
        if fails[0].len() as u64 != expected {
            return Err(format!("{}: {} failures, expected {expected}", c.id, fails[0].len()));
        }
    }
    Ok(())
}

/// Maximal-set failures: generic types all correct; at p = 3 the missing
/// points are exactly the projective points with one zero coordinate.
fn criterion3_known(rep: &SuiteReport) -> Result<(), String> {
    for c in &rep.checks {
        let is_p3 = c.id.contains(".p3k");
        if c.id.contains(".generic.") || !is_p3 {
            if c.pass != Some(true) {
                return Err(format!("{} fails", c.id));
            }
            continue;
        }
        let d = c.detail.as_ref().ok_or("missing detail")?;
        if !d["only_in_first"].as_array().unwrap().is_empty() || c.actual != "ProperSubset" {
            return Err(format!("{}: unexpected verdict {}", c.id, c.actual));
        }
        let k = if c.id.contains("k2") { 2 } else { 3 };
        let missing = d["only_in_second"].as_array().unwrap();
        for pt in missing {
            let s = pt.as_str().unwrap();
            let zeros = s.trim_matches(|ch| ch == '(' || ch == ')').split(',').filter(|x| *x == "0").count();
            if zeros != 1 {
                return Err(format!("{}: missing point {s} has {zeros} zero coordinates", c.id));
            }
        }
        // projective points over F_9 with exactly one zero coordinate
        let expected = count_points_with_one_zero(9, k) / 8;
        if missing.len() as u64 != expected {
            return Err(format!("{}: {} missing points, expected {expected}", c.id, missing.len()));
        }
    }
    Ok(())
}

/// Property failures: only the literal dual and exterior-power laws, with
/// their generic-point forms passing.
fn criterion11_known(rep: &SuiteReport) -> Result<(), String> {
    for c in &rep.checks {
        let literal = c.id.contains(".dual.") || c.id.contains(".wedge.");
        if !literal && c.pass != Some(true) {
            return Err(format!("{} fails", c.id));
        }
    }
    // the smallest counterexample: X_1 + X_2 = 0 on M, but not on M*
    let f = FieldCtx::new(3, 1).unwrap();
    let m = EAModule::benson(&f, f.from_int(2), f.from_int(0)).unwrap();
    let a = Point::from_ints(&f, &[1, 1]);
    if !m.x_alpha(&a).unwrap().is_zero() || m.dual().x_alpha(&a).unwrap().is_zero() {
        return Err("Benson counterexample to the literal dual law no longer holds".into());
    }
    Ok(())
}

fn summarize(c: &Check) -> String {
    format!("{}: expected {}, got {}", c.id, c.expected, c.actual)
}

fn main() -> ExitCode {
    let mut unexpected = Vec::new();
    let total = Instant::now();
    for suite in Suite::ALL {
        let start = Instant::now();
        let rep = match run_suite(suite, &SuiteParams::default()) {
            Ok(r) => r,
            Err(e) => {
                println!("criterion {:>2} {:<15} FAIL  error: {e}", suite.criterion(), suite.name());
                unexpected.push(format!("{suite}: {e}"));
                continue;
            }
        };
        let secs = start.elapsed().as_secs_f64();
        let in_time = secs < suite.time_limit_secs() as f64;
        let verdict = if suite.exploratory() {
            "REPORT"
        } else if rep.passed() && in_time {
            "PASS"
        } else {
            "FAIL"
        };
        println!(
            "criterion {:>2} {:<15} {:<6} {} checks, {:.2} s (limit {} s)",
            suite.criterion(),
            suite.name(),
            verdict,
            rep.checks.len(),
            secs,
            suite.time_limit_secs()
        );
        for c in &rep.checks {
            match c.pass {
                Some(false) => println!("      fail   {}", summarize(c)),
                None => println!("      report {}", summarize(c)),
                Some(true) => {}
            }
        }
        if !in_time {
            unexpected.push(format!("{suite}: {secs:.2} s exceeds {} s", suite.time_limit_secs()));
        }
        let known = match suite {
            Suite::RankLemma => criterion1_known(&rep),
            Suite::Jtd1 => criterion3_known(&rep),
            Suite::Axioms => criterion11_known(&rep),
            _ if rep.passed() => Ok(()),
            _ => Err(rep.failures().iter().map(|c| summarize(c)).collect::<Vec<_>>().join("; ")),
        };
        match known {
            Ok(()) if !rep.passed() => println!("      known failure, matches the documented pattern"),
            Ok(()) => {}
            Err(e) => unexpected.push(format!("{suite}: {e}")),
        }
    }
    println!("acceptance total {:.2} s", total.elapsed().as_secs_f64());
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        for u in &unexpected {
            println!("UNEXPECTED {u}");
        }
        ExitCode::FAILURE
    }
}
