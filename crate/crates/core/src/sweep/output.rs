use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::SweepResult;
use crate::error::{Error, Result};

pub const CSV_HEADER: [&str; 16] = [
    "experiment_id",
    "n",
    "m",
    "alpha",
    "p",
    "delta",
    "c_ball",
    "L",
    "t",
    "sigma",
    "r",
    "re_value",
    "im_value",
    "abs_value",
    "err_estimate",
    "flags",
];

const CONFIG_PREFIX: &str = "# config: ";

/// CSV text: a `# config:` comment line carrying the run configuration,
/// then a header and one row per grid point. Floats are written in
/// shortest round-trip form, so identical runs give identical bytes.
pub fn to_csv_string(result: &SweepResult, config: &serde_json::Value) -> Result<String> {
    let mut out = format!("{CONFIG_PREFIX}{}\n", serde_json::to_string(config)?);
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(CSV_HEADER)?;
    for row in &result.rows {
        let p = &row.params;
        writer.write_record([
            row.experiment_id.clone(),
            p.n.to_string(),
            p.m.to_string(),
            p.alpha.to_string(),
            p.p.to_string(),
            p.delta.to_string(),
            p.c_ball.to_string(),
            row.big_l.to_string(),
            row.t.to_string(),
            row.sigma.to_string(),
            row.r.to_string(),
            format!("{:e}", row.value.re),
            format!("{:e}", row.value.im),
            format!("{:e}", row.value.norm()),
            format!("{:e}", row.err_estimate),
            row.flags.join(";"),
        ])?;
    }
    let bytes = writer.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    out.push_str(&String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))?);
    Ok(out)
}

pub fn write_csv(result: &SweepResult, config: &serde_json::Value, path: &Path) -> Result<()> {
    fs::write(path, to_csv_string(result, config)?)?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub experiment_id: String,
    pub slope: Option<f64>,
    pub intercept: Option<f64>,
    pub r_squared: Option<f64>,
    pub target_slope: Option<f64>,
    pub point_count: usize,
    pub excluded_count: usize,
    pub config: serde_json::Value,
}

impl Summary {
    pub fn from_result(result: &SweepResult, config: &serde_json::Value) -> Self {
        Summary {
            experiment_id: result.experiment_id.clone(),
            slope: result.fit.map(|f| f.slope),
            intercept: result.fit.map(|f| f.intercept),
            r_squared: result.fit.map(|f| f.r_squared),
            target_slope: result.fit.and_then(|f| f.target),
            point_count: result.fit.map_or(0, |f| f.point_count),
            excluded_count: result.excluded_count,
            config: config.clone(),
        }
    }
}

pub fn write_summary(result: &SweepResult, config: &serde_json::Value, path: &Path) -> Result<()> {
    let summary = Summary::from_result(result, config);
    fs::write(path, serde_json::to_string_pretty(&summary)? + "\n")?;
    Ok(())
}

/// The configuration embedded in a CSV or summary file written above, or
/// the file itself if it is a plain configuration document.
pub fn read_embedded_config(path: &Path) -> Result<serde_json::Value> {
    let text = fs::read_to_string(path)?;
    if let Some(rest) = text.strip_prefix(CONFIG_PREFIX) {
        let line = rest.lines().next().unwrap_or_default();
        return Ok(serde_json::from_str(line)?);
    }
    let value: serde_json::Value = serde_json::from_str(&text)?;
    match value.get("config") {
        Some(config) if value.get("experiment_id").is_some() => Ok(config.clone()),
        _ => Ok(value),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::ModelParams;
    use crate::sweep::SweepRow;
    use num_complex::Complex64;

    fn sample() -> SweepResult {
        SweepResult {
            experiment_id: "born-growth".into(),
            rows: vec![SweepRow {
                experiment_id: "born-growth".into(),
                params: ModelParams::with_dimension(5, 1).unwrap(),
                big_l: 64.0,
                t: 1.0 / 64.0,
                sigma: 0.0,
                r: 0.0,
                value: Complex64::new(0.1, -2.5e-7),
                err_estimate: 1e-12,
                flags: vec!["flat".into(), "x".into()],
            }],
            fit: None,
            excluded_count: 0,
            failed_count: 0,
        }
    }

    #[test]
    fn csv_round_trips_config_and_floats() {
        let config = serde_json::json!({"n": 5, "out": "a.csv"});
        let text = to_csv_string(&sample(), &config).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), r#"# config: {"n":5,"out":"a.csv"}"#);
        assert_eq!(lines.next().unwrap(), CSV_HEADER.join(","));
        let row = lines.next().unwrap();
        assert!(row.starts_with("born-growth,5,1,0,inf,0.1,64,64,0.015625,0,0,1e-1,-2.5e-7,"));
        assert!(row.ends_with(",1e-12,flat;x"));
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("x.csv");
        write_csv(&sample(), &config, &path).unwrap();
        assert_eq!(read_embedded_config(&path).unwrap(), config);
        let path = dir.path().join("x.json");
        write_summary(&sample(), &config, &path).unwrap();
        assert_eq!(read_embedded_config(&path).unwrap(), config);
    }
}
