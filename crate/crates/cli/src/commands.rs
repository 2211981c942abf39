//! One function per subcommand. Each returns the records it produced, the
//! human rendering and the exit code; `main` decides which to print.

use std::fmt::Write as _;
use std::path::Path;

use hodgeci::conditions::{
    check_numeric, delta, delta_minus, excluded_small, is_classically_covered, numlin_conditions,
    NumericVerdict, TripleParams,
};
use hodgeci::fp::{quotient_dim, sample_witness, GHData, Prime};
use hodgeci::search::{
    enumerate_a, search_b, search_pairs_numlin, trial_seed, verify_triple, SearchConfig, Status,
    VerificationReport,
};
use hodgeci::{MultiDegree, PairParams};
use serde_json::json;

use crate::output::{key_values, OutputRecord, Provenance};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_FAILED: u8 = 2;
pub const EXIT_INCONCLUSIVE: u8 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] hodgeci::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(hodgeci::Error::Parse(_)) | CliError::Io { .. } => EXIT_USAGE,
            CliError::Core(_) => EXIT_FAILED,
        }
    }
}

type CmdResult = Result<Outcome, CliError>;

/// Randomization settings shared by the commands that sample witnesses.
#[derive(Debug, Clone, Copy)]
pub struct Settings {
    pub p: Prime,
    pub trials: u32,
    pub seed: u64,
}

impl Settings {
    fn config(&self) -> SearchConfig {
        SearchConfig {
            primes: vec![self.p],
            trials_per_prime: self.trials,
            base_seed: self.seed,
            ..SearchConfig::default()
        }
    }

    fn provenance(&self) -> Provenance {
        Provenance {
            p: self.p.get(),
            seed: self.seed,
            trials: self.trials,
        }
    }
}

pub struct Outcome {
    pub records: Vec<OutputRecord>,
    pub human: String,
    pub code: u8,
}

fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

pub fn delta_cmd(n: u32, a: &MultiDegree, ell: u32) -> CmdResult {
    let d = delta(n, a, ell);
    let dm = delta_minus(n, a, ell);
    let contains = dm >= 0.into();
    let human = key_values(&[
        ("delta", d.to_string()),
        ("delta_minus", dm.to_string()),
        ("contains_linear_subspace", yes_no(contains)),
    ]);
    let record = OutputRecord::new(
        "delta",
        json!({"n": n, "a": a, "ell": ell}),
        json!({
            "delta": d.to_string(),
            "delta_minus": dm.to_string(),
            "contains_linear_subspace": contains,
        }),
    );
    Ok(Outcome {
        records: vec![record],
        human,
        code: EXIT_OK,
    })
}

fn numeric_rows(v: &NumericVerdict) -> Vec<(&'static str, String)> {
    let d = &v.detail;
    vec![
        ("m", d.m.to_string()),
        ("l", d.l.to_string()),
        ("t_a, t_b", format!("{}, {}", d.t_a, d.t_b)),
        ("a_i >= b_i (i <= r)", yes_no(d.termwise)),
        ("a_r >= b_s", yes_no(d.top)),
        ("m - 2l >= t_b - t_a", yes_no(d.tail_slack)),
        ("m > 2l", yes_no(d.m_gt_2l)),
    ]
}

pub fn check_conditions_cmd(n: u32, a: &MultiDegree, b: &MultiDegree) -> CmdResult {
    let t = TripleParams::new(n, a.clone(), b.clone())?;
    let v = check_numeric(&t);
    let mut rows = numeric_rows(&v);
    rows.push(("first condition", yes_no(v.num1_ok)));
    rows.push(("second condition", yes_no(v.num2_ok)));
    rows.push(("passes", yes_no(v.passes())));
    let record = OutputRecord::new(
        "check-conditions",
        json!({"n": n, "a": a, "b": b}),
        json!({"verdict": v, "passes": v.passes()}),
    );
    Ok(Outcome {
        records: vec![record],
        human: key_values(&rows),
        code: if v.passes() { EXIT_OK } else { EXIT_FAILED },
    })
}

pub fn numlin_cmd(n: u32, a: &MultiDegree, a_prime: &MultiDegree, lambda: u32) -> CmdResult {
    let c = numlin_conditions(n, a, a_prime, lambda)?;
    let human = key_values(&[
        ("a''", c.a_complement.to_string()),
        ("linear subspace (delta_minus >= 0)", yes_no(c.linear_ok)),
        ("|a''| < lambda", yes_no(c.complement_ok)),
        ("n - r > 2(lambda - |a''|)", yes_no(c.codim_ok)),
        (
            "b",
            c.b.as_ref()
                .map_or_else(|| "-".to_string(), ToString::to_string),
        ),
    ]);
    let code = if c.b.is_some() { EXIT_OK } else { EXIT_FAILED };
    let record = OutputRecord::new(
        "numlin",
        json!({"n": n, "a": a, "a_prime": a_prime, "lambda": lambda}),
        json!(c),
    );
    Ok(Outcome {
        records: vec![record],
        human,
        code,
    })
}

pub enum DimSource<'a> {
    Sample {
        n: u32,
        a: &'a MultiDegree,
        b: &'a MultiDegree,
    },
    Dump(&'a Path),
}

pub fn dim_cmd(source: DimSource<'_>, settings: &Settings, dump_to: Option<&Path>) -> CmdResult {
    let (gh, seed) = match source {
        DimSource::Sample { n, a, b } => {
            TripleParams::new(n, a.clone(), b.clone())?;
            let seed = trial_seed(settings.seed, n, a, b, settings.p, 0);
            (sample_witness(n, a, b, settings.p, seed), seed)
        }
        DimSource::Dump(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.display().to_string(),
                source,
            })?;
            GHData::parse_dump(&text)?
        }
    };
    let t = TripleParams::new(gh.n, gh.a.clone(), gh.b.clone())?;
    let dim = quotient_dim(&gh)?;
    if let Some(path) = dump_to {
        std::fs::write(path, gh.dump(seed)).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
    }
    let human = key_values(&[
        ("p", gh.p.to_string()),
        ("witness seed", seed.to_string()),
        ("dim", dim.to_string()),
        ("n + r - s", t.target_dim().to_string()),
    ]);
    let record = OutputRecord::new(
        "dim",
        json!({"n": gh.n, "a": gh.a, "b": gh.b}),
        json!({"p": gh.p, "witness_seed": seed, "dim": dim, "target": t.target_dim()}),
    )
    .with_provenance(settings.provenance());
    Ok(Outcome {
        records: vec![record],
        human,
        code: EXIT_OK,
    })
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Verified => "verified",
        Status::Inconclusive => "inconclusive",
        Status::NumericFail => "numeric_fail",
    }
}

fn status_code(s: Status) -> u8 {
    match s {
        Status::Verified => EXIT_OK,
        Status::Inconclusive => EXIT_INCONCLUSIVE,
        Status::NumericFail => EXIT_FAILED,
    }
}

fn render_report(r: &VerificationReport) -> String {
    let mut rows = vec![
        ("n", r.n.to_string()),
        ("a", r.a.to_string()),
        ("b", r.b.to_string()),
    ];
    rows.extend(numeric_rows(&r.numeric));
    rows.push(("n + r - s", r.target.to_string()));
    let mut out = key_values(&rows);
    if !r.trials.is_empty() {
        out.push_str("\n  p  seed                  dim\n");
        for t in &r.trials {
            let _ = writeln!(out, "{:>3}  {:<20}  {}", t.prime, t.seed, t.dim);
        }
        out.push('\n');
    }
    let _ = writeln!(out, "status  {}", status_name(r.status));
    out
}

pub fn check_triple_cmd(
    n: u32,
    a: &MultiDegree,
    b: &MultiDegree,
    settings: &Settings,
) -> CmdResult {
    let report = verify_triple(n, a, b, &settings.config())?;
    let record = OutputRecord::new(
        "check-triple",
        json!({"n": n, "a": a, "b": b}),
        json!(report),
    )
    .with_provenance(settings.provenance());
    Ok(Outcome {
        human: render_report(&report),
        code: status_code(report.status),
        records: vec![record],
    })
}

pub fn search_b_cmd(n: u32, a: &MultiDegree, all: bool, settings: &Settings) -> CmdResult {
    let pair = PairParams::new(n, a.clone())?;
    let reports = search_b(&pair, &settings.config(), !all)?;
    let mut human = format!("n = {n}, a = {a}, k = {}\n", pair.k());
    for r in &reports {
        let w = r.witness().expect("search_b returns verified reports");
        let _ = writeln!(
            human,
            "{}  dim {}  p {}  seed {}",
            r.b, w.dim, w.prime, w.seed
        );
    }
    let _ = writeln!(human, "verified: {}", reports.len());
    let records = reports
        .iter()
        .map(|r| {
            OutputRecord::new("search-b", json!({"n": n, "a": a, "all": all}), json!(r))
                .with_provenance(settings.provenance())
        })
        .chain(std::iter::once(
            OutputRecord::new(
                "search-b",
                json!({"n": n, "a": a, "all": all}),
                json!({"verified": reports.len()}),
            )
            .with_provenance(settings.provenance()),
        ))
        .collect();
    Ok(Outcome {
        records,
        human,
        code: if reports.is_empty() {
            EXIT_INCONCLUSIVE
        } else {
            EXIT_OK
        },
    })
}

pub fn search_pairs_cmd(n_max: u32, out: Option<&Path>) -> CmdResult {
    let found = search_pairs_numlin(n_max);
    let params = json!({"n_max": n_max});
    let mut records = Vec::new();
    let mut human = String::new();
    let mut total = 0;
    for (n, hits) in &found {
        let list: Vec<String> = hits.iter().map(|h| h.a.to_string()).collect();
        let _ = writeln!(human, "{n}: {}", list.join(" "));
        total += hits.len();
        for h in hits {
            records.push(OutputRecord::new(
                "search-pairs",
                params.clone(),
                json!({"n": n, "a": h.a, "a_prime": h.a_prime, "lambda": h.lambda, "b": h.b}),
            ));
        }
    }
    let _ = writeln!(human, "total: {total} pairs");
    records.push(OutputRecord::new(
        "search-pairs",
        params,
        json!({"total": total}),
    ));
    if let Some(path) = out {
        let text: String = records.iter().map(|r| r.to_line() + "\n").collect();
        std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
    }
    Ok(Outcome {
        records,
        human,
        code: EXIT_OK,
    })
}

pub fn enumerate_a_cmd(n: u32) -> CmdResult {
    let mut human = format!("{:<16} {:>3} {:>3}  note\n", "a", "m", "k");
    let mut records = Vec::new();
    for a in enumerate_a(n) {
        let Ok(pair) = PairParams::new(n, a.clone()) else {
            continue;
        };
        let small = excluded_small(&pair);
        let covered = is_classically_covered(&pair);
        let note = match (small, covered) {
            (true, _) => "m <= 2k",
            (false, true) => "classical",
            (false, false) => "",
        };
        let _ = writeln!(
            human,
            "{:<16} {:>3} {:>3}  {note}",
            a.to_string(),
            pair.m(),
            pair.k()
        );
        records.push(OutputRecord::new(
            "enumerate-a",
            json!({"n": n}),
            json!({
                "a": a,
                "m": pair.m(),
                "k": pair.k(),
                "m_le_2k": small,
                "classical": covered,
            }),
        ));
    }
    Ok(Outcome {
        records,
        human,
        code: EXIT_OK,
    })
}
