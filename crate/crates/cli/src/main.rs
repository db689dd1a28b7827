//! Command-line surface over the twosq library.
//!
//! Every invocation emits exactly one result: a single space-separated text
//! line by default, or one JSON object with `--json`. Exit codes: 0 ok,
//! 1 no solution / criterion false, 2 usage or domain error, 3 internal
//! invariant violation.

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use twosq::{
    classify, decompose_any, oracle_scan, solve, triple_from_params, universal_moduli,
    TripleParams, MAX_VALUE, ORACLE_MODULUS_LIMIT,
};

/// Default ceiling for moduli; raise with the TWOSQ_MAX_N environment
/// variable (clamped to the library's 63-bit range).
const DEFAULT_MAX_N: u64 = 1 << 40;

#[derive(Parser)]
#[command(
    name = "twosq",
    version,
    about = "Sums of two squares modulo n: classify moduli, solve congruences, verify exhaustively"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report which universality conditions the modulus n satisfies
    Classify {
        n: u64,
        /// Emit a JSON object instead of a text line
        #[arg(long)]
        json: bool,
    },
    /// Find x, y with x^2 + y^2 congruent to z mod n (nonzero squares unless --allow-zero)
    Solve {
        n: u64,
        z: u64,
        /// Accept witnesses with a zero square summand
        #[arg(long)]
        allow_zero: bool,
        #[arg(long)]
        json: bool,
    },
    /// Write the integer z as a sum of two squares (nonzero unless --allow-zero)
    Decompose {
        z: u64,
        #[arg(long)]
        allow_zero: bool,
        #[arg(long)]
        json: bool,
    },
    /// List every universal modulus up to the limit, ascending
    Enumerate {
        limit: u64,
        /// Use the zero-allowed notion of universality
        #[arg(long)]
        allow_zero: bool,
        #[arg(long)]
        json: bool,
    },
    /// Build the Pythagorean triple ((u^2-v^2)k, 2uvk, (u^2+v^2)k)
    Triple {
        u: u64,
        v: u64,
        k: u64,
        #[arg(long)]
        json: bool,
    },
    /// Cross-check classification and solvers against exhaustive search
    Selftest { limit: u64 },
}

fn max_n() -> u64 {
    match std::env::var("TWOSQ_MAX_N") {
        Ok(raw) => match raw.parse::<u64>() {
            Ok(v) => v.min(MAX_VALUE),
            Err(_) => {
                eprintln!("warning: ignoring unparsable TWOSQ_MAX_N={raw:?}");
                DEFAULT_MAX_N
            }
        },
        Err(_) => DEFAULT_MAX_N,
    }
}

fn emit(json_mode: bool, command: &str, inputs: Value, result: Value, status: &str, text: &str) {
    if json_mode {
        let record = json!({
            "command": command,
            "inputs": inputs,
            "result": result,
            "status": status,
        });
        println!("{record}");
    } else {
        println!("{text}");
    }
}

fn usage_error(json_mode: bool, command: &str, inputs: Value, message: &str) -> ExitCode {
    eprintln!("error: {message}");
    if json_mode {
        emit(true, command, inputs, Value::Null, "error", "");
    }
    ExitCode::from(2)
}

fn internal_error(message: &str) -> ExitCode {
    eprintln!("internal error: {message}");
    ExitCode::from(3)
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Classify { n, json } => run_classify(n, json),
        Command::Solve {
            n,
            z,
            allow_zero,
            json,
        } => run_solve(n, z, allow_zero, json),
        Command::Decompose {
            z,
            allow_zero,
            json,
        } => run_decompose(z, allow_zero, json),
        Command::Enumerate {
            limit,
            allow_zero,
            json,
        } => run_enumerate(limit, allow_zero, json),
        Command::Triple { u, v, k, json } => run_triple(u, v, k, json),
        Command::Selftest { limit } => run_selftest(limit),
    }
}

fn run_classify(n: u64, json: bool) -> ExitCode {
    let inputs = json!({ "n": n });
    if n < 2 || n > max_n() {
        return usage_error(
            json,
            "classify",
            inputs,
            &format!("n={n} is out of range [2, {}]", max_n()),
        );
    }
    let report = classify(n);
    let odd_case = match report.cond_odd_case {
        Some(v) => v.to_string(),
        None => "n/a".to_string(),
    };
    let text = format!(
        "modulus={} cond_no_q_squared={} cond_not_div_4={} cond_has_p1mod4={} cond_odd_case={} five_adic_k={} cofactor_m={} universal_nontrivial={} universal_with_zero={}",
        report.modulus,
        report.cond_no_q_squared,
        report.cond_not_div_4,
        report.cond_has_p1mod4,
        odd_case,
        report.five_adic_k,
        report.cofactor_m,
        report.universal_nontrivial,
        report.universal_with_zero,
    );
    let result = serde_json::to_value(report).expect("report serializes");
    emit(json, "classify", inputs, result, "ok", &text);
    ExitCode::SUCCESS
}

fn run_solve(n: u64, z: u64, allow_zero: bool, json: bool) -> ExitCode {
    let inputs = json!({ "n": n, "z": z, "allow_zero": allow_zero });
    if n < 2 || n > max_n() {
        return usage_error(
            json,
            "solve",
            inputs,
            &format!("n={n} is out of range [2, {}]", max_n()),
        );
    }
    match solve(z, n, !allow_zero) {
        Ok(Some(pair)) => {
            if !pair.verify() {
                return internal_error(&format!(
                    "emitted pair fails verification: x={} y={} z={} mod {}",
                    pair.x(),
                    pair.y(),
                    pair.z(),
                    pair.modulus()
                ));
            }
            let text = format!(
                "x={} y={} nontrivial={}",
                pair.x(),
                pair.y(),
                pair.nontrivial()
            );
            let result = serde_json::to_value(pair).expect("pair serializes");
            emit(json, "solve", inputs, result, "ok", &text);
            ExitCode::SUCCESS
        }
        Ok(None) => {
            emit(json, "solve", inputs, Value::Null, "no-solution", "no-solution");
            ExitCode::from(1)
        }
        Err(err) => usage_error(json, "solve", inputs, &err.to_string()),
    }
}

fn run_decompose(z: u64, allow_zero: bool, json: bool) -> ExitCode {
    let inputs = json!({ "z": z, "allow_zero": allow_zero });
    if z > MAX_VALUE {
        return usage_error(json, "decompose", inputs, &format!("z={z} exceeds {MAX_VALUE}"));
    }
    match decompose_any(z, !allow_zero) {
        Some(dec) => {
            if dec.a() * dec.a() + dec.b() * dec.b() != z {
                return internal_error(&format!(
                    "decomposition {}^2 + {}^2 does not reach {z}",
                    dec.a(),
                    dec.b()
                ));
            }
            let text = format!("a={} b={}", dec.a(), dec.b());
            let result = serde_json::to_value(dec).expect("decomposition serializes");
            emit(json, "decompose", inputs, result, "ok", &text);
            ExitCode::SUCCESS
        }
        None => {
            emit(
                json,
                "decompose",
                inputs,
                Value::Null,
                "no-solution",
                "no-solution",
            );
            ExitCode::from(1)
        }
    }
}

fn run_enumerate(limit: u64, allow_zero: bool, json: bool) -> ExitCode {
    let inputs = json!({ "limit": limit, "allow_zero": allow_zero });
    if limit > max_n() {
        return usage_error(
            json,
            "enumerate",
            inputs,
            &format!("limit={limit} exceeds the range guard {}", max_n()),
        );
    }
    let list = universal_moduli(limit, allow_zero);
    let text = list
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(" ");
    let result = serde_json::to_value(&list).expect("list serializes");
    emit(json, "enumerate", inputs, result, "ok", &text);
    ExitCode::SUCCESS
}

fn run_triple(u: u64, v: u64, k: u64, json: bool) -> ExitCode {
    let inputs = json!({ "u": u, "v": v, "k": k });
    let triple = TripleParams::new(u, v, k).and_then(|params| triple_from_params(&params));
    match triple {
        Ok((a, b, c)) => {
            if a as u128 * a as u128 + b as u128 * b as u128 != c as u128 * c as u128 {
                return internal_error(&format!("triple ({a}, {b}, {c}) is not Pythagorean"));
            }
            let text = format!("a={a} b={b} c={c}");
            emit(
                json,
                "triple",
                inputs,
                json!({ "a": a, "b": b, "c": c }),
                "ok",
                &text,
            );
            ExitCode::SUCCESS
        }
        Err(err) => usage_error(json, "triple", inputs, &err.to_string()),
    }
}

fn run_selftest(limit: u64) -> ExitCode {
    if !(2..=ORACLE_MODULUS_LIMIT).contains(&limit) {
        eprintln!("error: selftest limit must lie in [2, {ORACLE_MODULUS_LIMIT}]");
        return ExitCode::from(2);
    }
    let mut class_checked = 0u64;
    let mut class_mismatches = 0u64;
    let mut solve_checked = 0u64;
    let mut solve_failures = 0u64;
    for n in 2..=limit {
        let verdict = match oracle_scan(n) {
            Ok(v) => v,
            Err(err) => {
                eprintln!("error: {err}");
                return ExitCode::from(2);
            }
        };
        let report = classify(n);
        let oracle_nontrivial = verdict.nontrivially_representable_residues().len() == n as usize;
        let oracle_with_zero = verdict.representable_residues().len() == n as usize;
        class_checked += 1;
        if report.universal_nontrivial != oracle_nontrivial
            || report.universal_with_zero != oracle_with_zero
        {
            class_mismatches += 1;
            eprintln!("mismatch: classification of n={n} disagrees with the oracle");
        }
        for z in 0..n {
            for require_nontrivial in [true, false] {
                solve_checked += 1;
                let reachable = if require_nontrivial {
                    verdict.nontrivially_representable_residues().contains(&z)
                } else {
                    verdict.representable_residues().contains(&z)
                };
                let ok = match solve(z, n, require_nontrivial) {
                    Ok(Some(pair)) => {
                        reachable && pair.verify() && (!require_nontrivial || pair.nontrivial())
                    }
                    Ok(None) => !reachable,
                    Err(_) => false,
                };
                if !ok {
                    solve_failures += 1;
                    eprintln!(
                        "mismatch: solve(z={z}, n={n}, nontrivial={require_nontrivial}) disagrees with the oracle"
                    );
                }
            }
        }
    }
    println!("classification: checked={class_checked} mismatches={class_mismatches}");
    println!("solver: checked={solve_checked} failures={solve_failures}");
    let pass = class_mismatches == 0 && solve_failures == 0;
    println!("selftest: {}", if pass { "pass" } else { "fail" });
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    }
}
