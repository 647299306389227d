use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use omega_core::certificate::{certify, spectral_form_check, MAX_CERTIFY_K};
use omega_core::construction::ExtremalSetSpec;
use omega_core::exact_serde::rational_string;
use omega_core::hypercube::{parse_set, write_set, VertexSource, EXHAUSTIVE_LIMIT, MAX_DIM};
use omega_core::{
    a_n, chromatic_lower_bound, max_independent_set, max_independent_set_parity_class, ratio_bound,
    spectral_check, verify_independent, verify_independent_sampled, Error, IndependenceVerdict,
    VertexSet,
};
use serde_json::{json, Value};

use crate::report::{CliError, RunReport};
use crate::status::AlphaStatus;

pub const DEFAULT_TRIALS: u64 = 10_000_000;

fn s(v: impl ToString) -> Value {
    Value::String(v.to_string())
}

fn check_n(n: u32) -> Result<(), CliError> {
    if n == 0 || n > MAX_DIM {
        return Err(Error::Precondition(format!("n must lie in 1..={MAX_DIM}, got {n}")).into());
    }
    Ok(())
}

/// `alpha(Omega_n)` when it is established, else `None`.
fn known_alpha(n: u32) -> Option<BigInt> {
    match AlphaStatus::of(n) {
        AlphaStatus::Edgeless => Some(BigInt::one() << n),
        AlphaStatus::Bipartite => Some(BigInt::one() << (n - 1)),
        AlphaStatus::Conjectured => None,
        _ => a_n(n).ok(),
    }
}

fn ratio_text(n: u32) -> Option<BigRational> {
    n.is_multiple_of(2)
        .then(|| ratio_bound(n, n / 2).ok())
        .flatten()
}

/// What is known about `alpha(Omega_n)`, with cross-checks.
pub fn cmd_bound(n: u32) -> Result<RunReport, CliError> {
    check_n(n)?;
    let mut r = RunReport::new("bound").param("n", s(n));
    let status = AlphaStatus::of(n);
    r.set("status", status.label());
    r.set(
        "notes",
        Value::Array(AlphaStatus::notes(n).into_iter().map(s).collect()),
    );
    if n.is_multiple_of(4) {
        r.set("a_n", s(a_n(n)?));
    }
    let alpha = known_alpha(n);
    match &alpha {
        Some(a) => r.set("alpha", s(a)),
        None => r.set("alpha", Value::Null),
    }
    if let Some(rb) = ratio_text(n) {
        r.set("ratio_bound", s(rational_string(&rb)));
        let lower = alpha.clone().or_else(|| a_n(n).ok());
        if let Some(a) = lower {
            let consistent = rb >= BigRational::from_integer(a);
            r.set("ratio_bound_consistent", consistent);
            r.valid &= consistent;
        }
    }
    if status == AlphaStatus::Theorem {
        r.set("chromatic_lower_bound", s(chromatic_lower_bound(n)?));
    }
    Ok(r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyMode {
    Exact,
    Sampled,
}

#[derive(Debug, Clone, Default)]
pub struct ConstructOptions<'a> {
    pub out: Option<&'a Path>,
    pub mode: Option<VerifyMode>,
    pub seed: Option<u64>,
    pub trials: Option<u64>,
}

fn io_err(path: &Path, e: std::io::Error) -> CliError {
    CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    }
}

pub fn write_set_file(path: &Path, set: &VertexSet) -> Result<(), CliError> {
    let file = File::create(path).map_err(|e| io_err(path, e))?;
    let mut w = BufWriter::new(file);
    write_set(set, &mut w)
        .and_then(|_| w.flush())
        .map_err(|e| io_err(path, e))
}

pub fn read_set_file(path: &Path) -> Result<VertexSet, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    Ok(parse_set(&text)?)
}

/// Builds the double-ball set for `n`, verifies it and optionally writes it.
/// Exact verification is the default up to the pairwise-scan limit; beyond
/// that, sampled verification requires an explicit seed.
pub fn cmd_construct(n: u32, opts: &ConstructOptions<'_>) -> Result<RunReport, CliError> {
    let spec = ExtremalSetSpec::new(n)?;
    let count = spec.count();
    let mut r = RunReport::new("construct").param("n", s(n));
    let mode = opts.mode.unwrap_or(if count <= EXHAUSTIVE_LIMIT as u64 {
        VerifyMode::Exact
    } else {
        VerifyMode::Sampled
    });
    let a = a_n(n)?;
    r.set("size", s(count));
    r.set("a_n", s(&a));
    let size_ok = BigInt::from(count) == a;
    r.set("size_matches_a_n", size_ok);
    r.set("status", AlphaStatus::of(n).label());

    let materialized = if opts.out.is_some() || mode == VerifyMode::Exact {
        Some(spec.materialize()?)
    } else {
        None
    };

    let independent = match mode {
        VerifyMode::Exact => {
            r.parameters.insert("mode".into(), s("exact"));
            let set = materialized.as_ref().expect("materialized for exact mode");
            let verdict = verify_independent(set)?;
            let mut v = json!({ "mode": "exact", "independent": verdict.is_independent() });
            if let IndependenceVerdict::Violation(x, y) = verdict {
                v["violation"] = json!([x.to_string(), y.to_string()]);
            }
            r.set("verification", v);
            verdict.is_independent()
        }
        VerifyMode::Sampled => {
            let seed = opts.seed.ok_or_else(|| {
                Error::Precondition("sampled verification requires --seed".into())
            })?;
            let trials = opts.trials.unwrap_or(DEFAULT_TRIALS);
            r.parameters.insert("mode".into(), s("sampled"));
            r.parameters.insert("seed".into(), s(seed));
            r.parameters.insert("trials".into(), s(trials));
            let verdict = verify_independent_sampled(&spec, trials, seed)?;
            let ok = verdict.violation.is_none();
            r.set(
                "verification",
                json!({
                    "mode": "sampled",
                    "seed": seed.to_string(),
                    "trials": trials.to_string(),
                    "pairs_checked": verdict.pairs_checked.to_string(),
                    "exhaustive": verdict.exhaustive,
                    "independent": ok,
                    "violation": verdict.violation.map(|(x, y)| json!([x.to_string(), y.to_string()])),
                }),
            );
            ok
        }
    };

    if let (Some(path), Some(set)) = (opts.out, &materialized) {
        write_set_file(path, set)?;
        r.parameters.insert("out".into(), s(path.display()));
        r.set("lines_written", s(set.len()));
    }
    r.valid = size_ok && independent;
    Ok(r)
}

/// Runs the rank certificate for `n = 2^k`, optionally against a witness file.
pub fn cmd_certify(k: u32, set_path: Option<&Path>) -> Result<RunReport, CliError> {
    let mut r = RunReport::new("certify").param("k", s(k));
    if k > MAX_CERTIFY_K {
        return Err(Error::GuardExceeded {
            what: "exponent k",
            limit: MAX_CERTIFY_K.into(),
            got: k.into(),
        }
        .into());
    }
    let witness = match set_path {
        Some(p) => {
            r.parameters.insert("set".into(), s(p.display()));
            Some(read_set_file(p)?)
        }
        None => None,
    };
    let cert = certify(k, witness.as_ref())?;
    r.valid = cert.valid;
    r.set("n", s(cert.n));
    r.set("total_bound", s(&cert.total_bound));
    r.set("trivial", cert.trivial);
    if let Some(w) = &cert.witness {
        r.set("equality", w.equality);
    }
    r.set(
        "certificate",
        serde_json::to_value(&cert).expect("certificate serializes"),
    );
    Ok(r)
}

/// Exact `alpha(Omega_n)` by branch and bound, `n <= 8`.
pub fn cmd_alpha(n: u32, out: Option<&Path>) -> Result<RunReport, CliError> {
    let mut r = RunReport::new("alpha").param("n", s(n));
    let res = max_independent_set(n)?;
    let independent = verify_independent(&res.witness)?.is_independent();
    r.set("alpha", s(res.size));
    r.set("witness_size", s(res.witness.len()));
    r.set("witness_independent", independent);
    r.set("search_nodes", s(res.nodes));
    r.set("status", AlphaStatus::of(n).label());
    let mut ok = independent && res.witness.len() == res.size;
    if let Some(expected) = known_alpha(n) {
        let m = BigInt::from(res.size) == expected;
        r.set("expected", s(&expected));
        r.set("matches_expected", m);
        ok &= m;
    }
    if n.is_multiple_of(4) {
        let half = max_independent_set_parity_class(n)?;
        r.set("parity_class_alpha", s(half));
        let consistent = 2 * half == res.size;
        r.set("parity_consistent", consistent);
        ok &= consistent;
    }
    if let Some(path) = out {
        write_set_file(path, &res.witness)?;
        r.parameters.insert("out".into(), s(path.display()));
    }
    r.valid = ok;
    Ok(r)
}

pub fn cmd_spectral_check(m: u32) -> Result<RunReport, CliError> {
    let mut r = RunReport::new("spectral-check").param("m", s(m));
    let report = spectral_check(m)?;
    r.set("checks", s(report.checks.len()));
    r.set("passed", report.passed);
    r.set(
        "failures",
        serde_json::to_value(report.failures().collect::<Vec<_>>()).expect("serializes"),
    );
    let mut ok = report.passed;
    if m == 7 {
        let form = spectral_form_check(3)?;
        r.set("phi_spectral_form_k3", form);
        ok &= form;
    }
    r.valid = ok;
    Ok(r)
}

pub const TABLE_COLUMNS: [&str; 7] = [
    "n",
    "k",
    "a_n",
    "status",
    "certified_bound",
    "chromatic_lower_bound",
    "ratio_bound",
];

/// Summary rows for `n = 2^k`, `2 <= k <= max_k`, followed by any extra `n`.
pub fn cmd_table(max_k: u32, extra_n: &[u32]) -> Result<RunReport, CliError> {
    if !(2..=MAX_CERTIFY_K).contains(&max_k) {
        return Err(Error::GuardExceeded {
            what: "table max_k",
            limit: MAX_CERTIFY_K.into(),
            got: max_k.into(),
        }
        .into());
    }
    let mut r = RunReport::new("table")
        .param("max_k", s(max_k))
        .param("n", Value::Array(extra_n.iter().map(s).collect()));
    let mut rows = Vec::new();
    let ns: Vec<u32> = (2..=max_k)
        .map(|k| 1 << k)
        .chain(extra_n.iter().copied())
        .collect();
    for n in ns {
        check_n(n)?;
        let status = AlphaStatus::of(n);
        let mut row = serde_json::Map::new();
        row.insert("n".into(), s(n));
        let k = n.is_power_of_two().then(|| n.trailing_zeros());
        row.insert("k".into(), k.map_or(Value::Null, s));
        row.insert(
            "a_n".into(),
            if n % 4 == 0 { s(a_n(n)?) } else { Value::Null },
        );
        row.insert("status".into(), s(status.label()));
        let certified = match k {
            Some(k) if (2..=MAX_CERTIFY_K).contains(&k) => {
                let cert = certify(k, None)?;
                r.valid &= cert.valid;
                cert.valid.then(|| s(&cert.total_bound))
            }
            _ => None,
        };
        row.insert("certified_bound".into(), certified.unwrap_or(Value::Null));
        row.insert(
            "chromatic_lower_bound".into(),
            if status == AlphaStatus::Theorem {
                s(chromatic_lower_bound(n)?)
            } else {
                Value::Null
            },
        );
        row.insert(
            "ratio_bound".into(),
            ratio_text(n).map_or(Value::Null, |q| s(rational_string(&q))),
        );
        rows.push(Value::Object(row));
    }
    r.set(
        "columns",
        Value::Array(TABLE_COLUMNS.iter().map(s).collect()),
    );
    r.set("rows", Value::Array(rows));
    Ok(r)
}
