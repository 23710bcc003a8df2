//! Run configuration: command-line flags merged over an optional JSON file.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::QuadratureSpec;
use crate::spectrum::{BoundarySpec, LevelId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Spectrum,
    Wavefunction,
    Measures,
    Sweep,
    Crossings,
    Validate,
}

impl Command {
    pub fn as_str(self) -> &'static str {
        match self {
            Command::Spectrum => "spectrum",
            Command::Wavefunction => "wavefunction",
            Command::Measures => "measures",
            Command::Sweep => "sweep",
            Command::Crossings => "crossings",
            Command::Validate => "validate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Which side of the transform a wavefunction table samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Space {
    Position,
    Momentum,
}

/// Optional settings, as read from `--config` or collected from flags.
/// Unset fields fall back to the next layer.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize, clap::Args)]
#[serde(default, deny_unknown_fields)]
pub struct Settings {
    /// Wall condition: dirichlet, neumann or both.
    #[arg(long)]
    pub bc: Option<String>,
    /// Radial quantum numbers, `a..b` (inclusive) or a single value.
    #[arg(long)]
    pub n: Option<String>,
    /// Angular quantum numbers, `a..b` (inclusive) or a single value.
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<String>,
    /// Field grid `lin|log:min:max:count`.
    #[arg(long)]
    pub b_grid: Option<String>,
    /// Explicit comma-separated field values; overrides the grid.
    #[arg(long, value_delimiter = ',')]
    pub b: Option<Vec<f64>>,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Relative tolerance of the measure integrals.
    #[arg(long)]
    pub rel_tol: Option<f64>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    pub threads: Option<usize>,
    /// Wavefunction tables: position or momentum.
    #[arg(long, value_enum)]
    pub space: Option<Space>,
    /// Wavefunction tables: number of sample points.
    #[arg(long)]
    pub points: Option<usize>,
    /// Wavefunction tables: upper end of the momentum axis.
    #[arg(long)]
    pub k_max: Option<f64>,
    /// Validation: criterion numbers to run (default all).
    #[arg(long, value_delimiter = ',')]
    pub criteria: Option<Vec<u32>>,
}

impl Settings {
    /// `self` where set, `other` elsewhere.
    pub fn over(self, other: Settings) -> Settings {
        Settings {
            bc: self.bc.or(other.bc),
            n: self.n.or(other.n),
            m: self.m.or(other.m),
            b_grid: self.b_grid.or(other.b_grid),
            b: self.b.or(other.b),
            out: self.out.or(other.out),
            format: self.format.or(other.format),
            rel_tol: self.rel_tol.or(other.rel_tol),
            threads: self.threads.or(other.threads),
            space: self.space.or(other.space),
            points: self.points.or(other.points),
            k_max: self.k_max.or(other.k_max),
            criteria: self.criteria.or(other.criteria),
        }
    }

    pub fn from_file(path: &Path) -> Result<Settings> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Error::Config(format!("invalid config {}: {e}", path.display())))
    }

    /// Per-command defaults.
    pub fn defaults(command: Command) -> Settings {
        let mut s = Settings {
            bc: Some("both".into()),
            n: Some("0".into()),
            m: Some("0".into()),
            format: Some(Format::Csv),
            ..Settings::default()
        };
        match command {
            Command::Spectrum => s.b_grid = Some("lin:0:40:81".into()),
            Command::Sweep => s.b_grid = Some("log:0.01:100:60".into()),
            Command::Measures | Command::Wavefunction => s.b = Some(vec![0.0]),
            Command::Crossings => {
                s.bc = Some("neumann".into());
                s.format = Some(Format::Json);
            }
            Command::Validate => s.format = Some(Format::Json),
        }
        s
    }
}

/// Field values, either listed or as a grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FieldGrid {
    pub spacing: &'static str,
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl FieldGrid {
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || Error::Config(format!("field grid must be lin|log:min:max:count, got '{s}'"));
        let [spacing, min, max, count] = parts[..] else {
            return Err(bad());
        };
        let spacing = match spacing {
            "lin" => "lin",
            "log" => "log",
            _ => return Err(bad()),
        };
        let min: f64 = min.parse().map_err(|_| bad())?;
        let max: f64 = max.parse().map_err(|_| bad())?;
        let count: usize = count.parse().map_err(|_| bad())?;
        if !(min < max) || count < 2 || min < 0.0 || !max.is_finite() {
            return Err(Error::Config(format!(
                "field grid needs 0 <= min < max and count >= 2, got '{s}'"
            )));
        }
        if spacing == "log" && min <= 0.0 {
            return Err(Error::Config(format!("log grid needs min > 0, got '{s}'")));
        }
        Ok(Self {
            spacing,
            min,
            max,
            count,
        })
    }

    pub fn values(&self) -> Vec<f64> {
        let last = (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                let t = i as f64 / last;
                if i == self.count - 1 {
                    self.max
                } else if self.spacing == "log" {
                    self.min * (self.max / self.min).powf(t)
                } else {
                    self.min + (self.max - self.min) * t
                }
            })
            .collect()
    }
}

/// Inclusive integer range `a..b` or a single value.
pub fn parse_range(s: &str, what: &str) -> Result<(i64, i64)> {
    let bad = || Error::Config(format!("{what} must be an integer or a range a..b, got '{s}'"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (
            a.trim().parse().map_err(|_| bad())?,
            b.trim().parse().map_err(|_| bad())?,
        ),
        None => {
            let v = s.trim().parse().map_err(|_| bad())?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(Error::Config(format!("{what} range is empty: '{s}'")));
    }
    Ok((lo, hi))
}

pub fn parse_bcs(s: &str) -> Result<Vec<BoundarySpec>> {
    if s.trim().eq_ignore_ascii_case("both") {
        Ok(BoundarySpec::ALL.to_vec())
    } else {
        Ok(vec![s.parse()?])
    }
}

/// Fully resolved configuration of one run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub bcs: Vec<BoundarySpec>,
    pub levels: Vec<LevelId>,
    pub b_values: Vec<f64>,
    pub quad: QuadratureSpec,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub threads: Option<usize>,
    pub space: Space,
    pub points: usize,
    pub k_max: f64,
    pub criteria: Vec<u32>,
    /// The merged settings, recorded in output headers.
    pub settings: Settings,
}

impl RunConfig {
    /// Resolve flags over file over defaults.
    pub fn resolve(command: Command, flags: Settings, file: Option<&Path>) -> Result<RunConfig> {
        let file = match file {
            Some(p) => Settings::from_file(p)?,
            None => Settings::default(),
        };
        // the field list and grid come as a pair from the first layer that sets either
        let fields = [&flags, &file, &Settings::defaults(command)]
            .into_iter()
            .find(|l| l.b.is_some() || l.b_grid.is_some())
            .map(|l| (l.b.clone(), l.b_grid.clone()))
            .unwrap_or_default();
        let mut s = flags.over(file).over(Settings::defaults(command));
        (s.b, s.b_grid) = fields;
        let bcs = parse_bcs(s.bc.as_deref().unwrap_or("both"))?;
        let (n_lo, n_hi) = parse_range(s.n.as_deref().unwrap_or("0"), "--n")?;
        let (m_lo, m_hi) = parse_range(s.m.as_deref().unwrap_or("0"), "--m")?;
        if n_lo < 0 {
            return Err(Error::Config("--n must be non-negative".into()));
        }
        let to_u32 = |v: i64| u32::try_from(v).map_err(|_| Error::Config(format!("quantum number {v} out of range")));
        let to_i32 = |v: i64| i32::try_from(v).map_err(|_| Error::Config(format!("quantum number {v} out of range")));
        let mut levels = Vec::new();
        for n in n_lo..=n_hi {
            for m in m_lo..=m_hi {
                levels.push(LevelId::new(to_u32(n)?, to_i32(m)?));
            }
        }
        let b_values = match (&s.b, &s.b_grid) {
            (Some(list), _) => {
                if list.is_empty() || list.iter().any(|b| !(b.is_finite() && *b >= 0.0)) {
                    return Err(Error::Config("--b needs finite non-negative values".into()));
                }
                list.clone()
            }
            (None, Some(g)) => FieldGrid::parse(g)?.values(),
            (None, None) => vec![0.0],
        };
        let mut quad = QuadratureSpec::measures();
        if let Some(t) = s.rel_tol {
            quad = quad.with_rel_tol(t).map_err(|e| Error::Config(e.to_string()))?;
        }
        if s.threads == Some(0) {
            return Err(Error::Config("--threads must be positive".into()));
        }
        let points = s.points.unwrap_or(match s.space.unwrap_or(Space::Position) {
            Space::Position => 101,
            Space::Momentum => 301,
        });
        if points < 2 {
            return Err(Error::Config("--points must be at least 2".into()));
        }
        let k_max = s.k_max.unwrap_or(30.0);
        if !(k_max > 0.0 && k_max.is_finite()) {
            return Err(Error::Config("--k-max must be positive".into()));
        }
        let criteria = s
            .criteria
            .clone()
            .unwrap_or_else(|| (1..=crate::validation::CRITERION_COUNT).collect());
        if let Some(c) = criteria.iter().find(|c| !crate::validation::manifest().contains_key(c)) {
            return Err(Error::Config(format!("unknown criterion {c}")));
        }
        Ok(RunConfig {
            command,
            bcs,
            levels,
            b_values,
            quad,
            out: s.out.clone(),
            format: s.format.unwrap_or(Format::Csv),
            threads: s.threads,
            space: s.space.unwrap_or(Space::Position),
            points,
            k_max,
            criteria,
            settings: s,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("-2..2", "m").unwrap(), (-2, 2));
        assert_eq!(parse_range("3", "n").unwrap(), (3, 3));
        assert!(parse_range("2..1", "n").is_err());
        assert!(parse_range("a..b", "n").is_err());
    }

    #[test]
    fn grids() {
        let g = FieldGrid::parse("log:0.01:100:5").unwrap().values();
        assert_eq!(g.len(), 5);
        assert!((g[2] - 1.0).abs() < 1e-12 && g[4] == 100.0);
        let g = FieldGrid::parse("lin:0:40:81").unwrap().values();
        assert_eq!(g[1], 0.5);
        assert!(FieldGrid::parse("log:0:1:5").is_err());
        assert!(FieldGrid::parse("lin:2:1:5").is_err());
        assert!(FieldGrid::parse("lin:0:1:1").is_err());
        assert!(FieldGrid::parse("cubic:0:1:3").is_err());
    }

    #[test]
    fn flags_override_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.json");
        std::fs::write(&path, r#"{"bc": "dirichlet", "n": "0..1", "b": [1.0, 2.0]}"#).unwrap();
        let flags = Settings {
            bc: Some("neumann".into()),
            ..Default::default()
        };
        let c = RunConfig::resolve(Command::Measures, flags, Some(&path)).unwrap();
        assert_eq!(c.bcs, vec![BoundarySpec::Neumann]);
        assert_eq!(c.levels.len(), 2);
        assert_eq!(c.b_values, vec![1.0, 2.0]);

        let flags = Settings {
            b_grid: Some("lin:0:1:3".into()),
            ..Default::default()
        };
        let c = RunConfig::resolve(Command::Measures, flags, Some(&path)).unwrap();
        assert_eq!(c.b_values, vec![0.0, 0.5, 1.0]);
    }

    #[test]
    fn unknown_keys_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.json");
        std::fs::write(&path, r#"{"field": 3}"#).unwrap();
        assert!(RunConfig::resolve(Command::Spectrum, Settings::default(), Some(&path)).is_err());
    }
}
