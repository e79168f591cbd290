//! Structured experiment reports and their JSON / CSV renderings.

use crate::config::ExperimentConfig;
use crate::error::LabError;
use crate::json::{fmt_f64, Json};

/// One pass/fail statement; every verdict carries the tolerance it was judged
/// against and the relation that was tested.
#[derive(Clone, Debug)]
pub struct Verdict {
    pub name: String,
    pub passed: bool,
    pub value: f64,
    pub tolerance: f64,
    /// Human-readable relation, e.g. `value < tolerance`.
    pub relation: String,
}

impl Verdict {
    pub fn less_than(name: &str, value: f64, tolerance: f64) -> Self {
        Verdict {
            name: name.to_string(),
            passed: value < tolerance,
            value,
            tolerance,
            relation: String::from("value < tolerance"),
        }
    }

    pub fn at_least(name: &str, value: f64, tolerance: f64) -> Self {
        Verdict {
            name: name.to_string(),
            passed: value >= tolerance,
            value,
            tolerance,
            relation: String::from("value >= tolerance"),
        }
    }
}

/// Tabular result block: one row per grid point.
#[derive(Clone, Debug, Default)]
pub struct Series {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Series {
    pub fn new(columns: &[&str]) -> Self {
        Series { columns: columns.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

#[derive(Clone, Debug)]
pub struct ExperimentReport {
    pub experiment: String,
    pub config: Vec<(String, Json)>,
    pub scalars: Vec<(String, f64)>,
    pub verdicts: Vec<Verdict>,
    pub series: Series,
}

impl ExperimentReport {
    pub fn new(cfg: &ExperimentConfig) -> Self {
        let mut config = vec![
            ("units".to_string(), Json::Str("natural (hbar = 1); times in units of tau".into())),
            ("tau".to_string(), Json::Num(cfg.tau)),
            ("half_width".to_string(), Json::Int(cfg.half_width as i64)),
            ("buffer".to_string(), Json::Int(cfg.buffer_or_default() as i64)),
            ("quad_nodes".to_string(), Json::Int(cfg.quad_nodes as i64)),
            ("seed".to_string(), Json::Int(cfg.seed as i64)),
        ];
        if !cfg.t_grid.is_empty() {
            config.push((
                "t_grid".to_string(),
                Json::Arr(cfg.t_grid.iter().map(|&t| Json::Num(t)).collect()),
            ));
        }
        if !cfg.k_grid.is_empty() {
            config.push((
                "k_grid".to_string(),
                Json::Arr(cfg.k_grid.iter().map(|&k| Json::Num(k)).collect()),
            ));
        }
        for (key, value) in [
            ("overlap", &cfg.overlap),
            ("system_d", &cfg.system_d),
            ("state", &cfg.state),
        ] {
            if let Some(v) = value {
                config.push((key.to_string(), Json::Str(v.clone())));
            }
        }
        ExperimentReport {
            experiment: cfg.experiment.clone(),
            config,
            scalars: Vec::new(),
            verdicts: Vec::new(),
            series: Series::default(),
        }
    }

    pub fn scalar(&mut self, name: &str, value: f64) {
        self.scalars.push((name.to_string(), value));
    }

    pub fn verdict(&mut self, v: Verdict) {
        self.verdicts.push(v);
    }

    pub fn all_passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    pub fn to_json(&self) -> String {
        let verdicts = self
            .verdicts
            .iter()
            .map(|v| {
                Json::Obj(vec![
                    ("name".to_string(), Json::Str(v.name.clone())),
                    ("passed".to_string(), Json::Bool(v.passed)),
                    ("value".to_string(), Json::Num(v.value)),
                    ("tolerance".to_string(), Json::Num(v.tolerance)),
                    ("relation".to_string(), Json::Str(v.relation.clone())),
                ])
            })
            .collect();
        let series = Json::Obj(vec![
            (
                "columns".to_string(),
                Json::Arr(self.series.columns.iter().map(|c| Json::Str(c.clone())).collect()),
            ),
            (
                "rows".to_string(),
                Json::Arr(
                    self.series
                        .rows
                        .iter()
                        .map(|row| Json::Arr(row.iter().map(|&x| Json::Num(x)).collect()))
                        .collect(),
                ),
            ),
        ]);
        Json::Obj(vec![
            ("experiment".to_string(), Json::Str(self.experiment.clone())),
            ("config".to_string(), Json::Obj(self.config.clone())),
            (
                "scalars".to_string(),
                Json::Obj(self.scalars.iter().map(|(k, v)| (k.clone(), Json::Num(*v))).collect()),
            ),
            ("verdicts".to_string(), Json::Arr(verdicts)),
            ("series".to_string(), series),
        ])
        .render()
    }

    /// Series block as RFC-4180 CSV; header-only when there are no rows,
    /// empty when the experiment produces no series at all.
    pub fn to_csv(&self) -> Result<String, LabError> {
        if self.series.columns.is_empty() {
            return Ok(String::new());
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.series.columns)
            .map_err(|e| LabError::Io(std::io::Error::other(e)))?;
        for row in &self.series.rows {
            let rec: Vec<String> = row.iter().map(|&x| fmt_f64(x)).collect();
            w.write_record(&rec).map_err(|e| LabError::Io(std::io::Error::other(e)))?;
        }
        let bytes = w.into_inner().map_err(|e| LabError::Io(std::io::Error::other(e)))?;
        String::from_utf8(bytes).map_err(|e| LabError::Io(std::io::Error::other(e)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ExperimentReport {
        let cfg = ExperimentConfig::new("covariance").unwrap();
        let mut rep = ExperimentReport::new(&cfg);
        rep.scalar("max_residual", 1.5e-3);
        rep.verdict(Verdict::less_than("residual_within_tolerance", 1.5e-3, 1e-5));
        rep.series = Series::new(&["t", "residual"]);
        rep.series.push(vec![0.1, 1.5e-3]);
        rep
    }

    #[test]
    fn json_contains_all_blocks() {
        let s = sample().to_json();
        for needle in ["experiment", "config", "scalars", "verdicts", "series", "tolerance"] {
            assert!(s.contains(needle), "missing {needle}");
        }
        assert!(s.contains("1.0000000000000001e-5"));
    }

    #[test]
    fn csv_has_header_and_rows() {
        let s = sample().to_csv().unwrap();
        let mut lines = s.lines();
        assert_eq!(lines.next().unwrap(), "t,residual");
        assert!(lines.next().unwrap().starts_with("1.0000000000000001e-1,"));
    }

    #[test]
    fn empty_series_is_header_only() {
        let cfg = ExperimentConfig::new("covariance").unwrap();
        let mut rep = ExperimentReport::new(&cfg);
        rep.series = Series::new(&["k", "boundary_mass", "weighted_norm"]);
        let s = rep.to_csv().unwrap();
        assert_eq!(s.trim_end(), "k,boundary_mass,weighted_norm");
    }

    #[test]
    fn verdict_helpers() {
        assert!(Verdict::less_than("a", 1e-6, 1e-5).passed);
        assert!(!Verdict::less_than("a", 1e-4, 1e-5).passed);
        assert!(Verdict::at_least("b", 0.5, 0.5).passed);
    }
}
