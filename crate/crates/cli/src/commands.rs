//! Subcommand bodies. Each returns the complete output text.

use serde::Serialize;
use serde_json::{json, Map, Value};
use std::fmt::Write as _;

use crate::config::{Format, RunConfig};
use zonal_core::asymptotics::AngleWindow;
use zonal_core::harness::{
    bracket_rows, crossover_benchmark, fit_error_scaling, geometric_degrees, relative_bracket_error, run_oracle,
    CrossoverConfig, OracleConfig, ScalingOutcome, CSV_HEADER, SCHEMA_VERSION,
};
use zonal_core::{legendre_normalized, projector_kernel, Result, ZonalIndex};

const GRID_NOTE: &str = "rel_err maxima are taken over a uniform theta grid and bound the true sup from below";

/// `# key = value` lines for the resolved config, keys sorted.
fn echo(cfg: &RunConfig) -> String {
    let mut s = String::new();
    if let Value::Object(map) = serde_json::to_value(cfg).expect("config serializes") {
        for (k, v) in map {
            let _ = writeln!(s, "# {k} = {v}");
        }
    }
    s
}

fn envelope(cfg: &RunConfig, body: Value) -> String {
    let mut map = Map::new();
    map.insert("schema_version".into(), json!(SCHEMA_VERSION));
    map.insert("command".into(), serde_json::to_value(cfg.command).expect("serializes"));
    map.insert("seed".into(), json!(cfg.seed));
    map.insert("samples".into(), json!(cfg.samples));
    map.insert("config".into(), serde_json::to_value(cfg).expect("serializes"));
    if let Value::Object(b) = body {
        for (k, v) in b {
            map.insert(k, v);
        }
    }
    let mut out = serde_json::to_string_pretty(&Value::Object(map)).expect("serializes");
    out.push('\n');
    out
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializes")
}

fn sorted(ks: &[u32]) -> Vec<u32> {
    let mut v = ks.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

fn window(cfg: &RunConfig) -> Result<AngleWindow> {
    AngleWindow::new(cfg.c, cfg.delta)
}

pub fn eval(cfg: &RunConfig) -> Result<String> {
    #[derive(Serialize)]
    struct Row {
        n: u32,
        k: u32,
        theta: f64,
        legendre: f64,
        projector: f64,
    }
    let mut rows = Vec::new();
    for k in sorted(&cfg.k) {
        let idx = ZonalIndex::new(cfg.n, k)?;
        for &theta in &cfg.theta {
            let t = theta.cos();
            rows.push(Row {
                n: cfg.n,
                k,
                theta,
                legendre: legendre_normalized(idx, t)?,
                projector: projector_kernel(idx, t)?,
            });
        }
    }
    Ok(match cfg.format {
        Format::Json => envelope(cfg, json!({ "rows": to_value(&rows) })),
        Format::Csv => {
            let mut s = echo(cfg);
            s.push_str("n,k,theta,legendre,projector\n");
            for r in &rows {
                let _ = writeln!(s, "{},{},{},{},{}", r.n, r.k, r.theta, r.legendre, r.projector);
            }
            s
        }
    })
}

pub fn compare(cfg: &RunConfig) -> Result<String> {
    let w = window(cfg)?;
    let mut rows = Vec::new();
    let mut summary = Vec::new();
    for k in sorted(&cfg.k) {
        let idx = ZonalIndex::new(cfg.n, k)?;
        let r = bracket_rows(idx, &w, cfg.grid)?;
        let max = r.iter().fold(0.0f64, |m, x| m.max(x.rel_err));
        summary.push(json!({ "k": k, "max_rel_err": max }));
        rows.extend(r);
    }
    Ok(match cfg.format {
        Format::Json => envelope(
            cfg,
            json!({ "note": GRID_NOTE, "summary": summary, "rows": to_value(&rows) }),
        ),
        Format::Csv => {
            let mut s = echo(cfg);
            let _ = writeln!(s, "# note = {GRID_NOTE}");
            s.push_str(CSV_HEADER);
            s.push('\n');
            for r in &rows {
                s.push_str(&r.csv_line());
                s.push('\n');
            }
            s
        }
    })
}

pub fn oracle(cfg: &RunConfig) -> Result<String> {
    let oc = OracleConfig {
        n: cfg.n,
        ks: sorted(&cfg.k),
        samples: cfg.samples,
        pairs: cfg.pairs,
        seed: cfg.seed,
        decay_ks: sorted(&cfg.decay_k),
    };
    let report = run_oracle(&oc)?;
    Ok(match cfg.format {
        Format::Json => {
            let mut v = to_value(&report);
            if let Value::Object(m) = &mut v {
                m.remove("schema_version");
            }
            envelope(cfg, v)
        }
        Format::Csv => {
            let mut s = echo(cfg);
            if let Some(d) = &report.decay {
                let _ = writeln!(s, "# decay_strictly_decreasing = {}", d.strictly_decreasing);
                let _ = writeln!(s, "# decay_normalized = {:?}", d.normalized);
            }
            s.push_str("k,gram_stderr,residual,imag_ratio,diagonal_ratio,c_numeric,c_stderr,c_leading,c_ratio\n");
            for e in &report.entries {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{},{},{},{}",
                    e.k,
                    e.gram_stderr,
                    e.residual,
                    e.imag_ratio,
                    e.diagonal_ratio,
                    e.c_numeric,
                    e.c_stderr,
                    e.c_leading,
                    e.c_ratio
                );
            }
            s
        }
    })
}

pub fn scaling(cfg: &RunConfig) -> Result<String> {
    let w = window(cfg)?;
    let ks = geometric_degrees(cfg.k_min, cfg.k_max);
    let outcome = fit_error_scaling(cfg.n, &ks, &w, cfg.grid)?;
    let mut errors = Vec::new();
    for &k in &ks {
        errors.push((k, relative_bracket_error(ZonalIndex::new(cfg.n, k)?, &w, cfg.grid)?));
    }
    Ok(match cfg.format {
        Format::Json => {
            let pts: Vec<Value> = errors.iter().map(|(k, e)| json!({ "k": k, "rel_err": e })).collect();
            let mut body = json!({ "note": GRID_NOTE, "errors": pts, "fit": to_value(&outcome) });
            if let ScalingOutcome::Fit(f) = &outcome {
                body["slope"] = json!(f.slope);
                body["intercept"] = json!(f.intercept);
                body["r_squared"] = json!(f.r_squared);
            }
            envelope(cfg, body)
        }
        Format::Csv => {
            let mut s = echo(cfg);
            match &outcome {
                ScalingOutcome::Fit(f) => {
                    let _ = writeln!(s, "# slope = {}", f.slope);
                    let _ = writeln!(s, "# intercept = {}", f.intercept);
                    let _ = writeln!(s, "# r_squared = {}", f.r_squared);
                }
                ScalingOutcome::Exact { max_error } => {
                    let _ = writeln!(s, "# exact = true");
                    let _ = writeln!(s, "# max_error = {max_error}");
                }
            }
            s.push_str("k,log_k,rel_err,log_rel_err\n");
            for (k, e) in &errors {
                let _ = writeln!(s, "{},{},{},{}", k, f64::from(*k).ln(), e, e.ln());
            }
            s
        }
    })
}

pub fn bench(cfg: &RunConfig) -> Result<String> {
    let mut cc = CrossoverConfig::new(cfg.n, geometric_degrees(cfg.k_min, cfg.k_max), window(cfg)?, cfg.budget);
    cc.evaluations = cfg.evaluations;
    let report = crossover_benchmark(&cc)?;
    Ok(match cfg.format {
        Format::Json => envelope(cfg, json!({ "k_star": report.k_star, "report": to_value(&report) })),
        Format::Csv => {
            let mut s = echo(cfg);
            let _ = writeln!(s, "# k_star = {}", report.k_star.map_or("none".to_string(), |k| k.to_string()));
            s.push_str("k,exact_ns,asymptotic_ns,max_rel_err\n");
            for r in &report.rows {
                let _ = writeln!(s, "{},{},{},{}", r.k, r.exact_ns, r.asymptotic_ns, r.max_rel_err);
            }
            s
        }
    })
}
