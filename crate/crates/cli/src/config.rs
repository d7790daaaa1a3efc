//! Run configuration: a flat `key = value` file with command-line overrides.

use std::path::{Path, PathBuf};

use dualsurf::curve::Preset;
use dualsurf::{CurveSpec, SampledCurve, SmarandacheKind};

use crate::error::CliError;

/// Where the curve comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum CurveSource {
    Preset(Preset),
    File(PathBuf),
}

impl CurveSource {
    /// `file:<path>` or preset syntax such as `cone(0.8, 0.6)`.
    pub fn parse(text: &str, base_dir: Option<&Path>) -> Result<CurveSource, CliError> {
        match text.trim().strip_prefix("file:") {
            Some(path) => Ok(CurveSource::File(resolve(path.trim(), base_dir))),
            None => Ok(CurveSource::Preset(Preset::parse(text)?)),
        }
    }

    pub fn load(&self) -> Result<CurveSpec, CliError> {
        match self {
            CurveSource::Preset(p) => Ok(CurveSpec::Preset(*p)),
            CurveSource::File(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
                Ok(CurveSpec::Sampled(SampledCurve::parse(&text)?))
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            CurveSource::Preset(p) => p.to_string(),
            CurveSource::File(path) => path.display().to_string(),
        }
    }
}

fn resolve(path: &str, base_dir: Option<&Path>) -> PathBuf {
    let p = PathBuf::from(path);
    match base_dir {
        Some(dir) if p.is_relative() => dir.join(p),
        _ => p,
    }
}

/// Settings shared by all subcommands. Unset fields fall back to
/// per-command defaults.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RunConfig {
    pub curve: Option<CurveSource>,
    pub s_min: Option<f64>,
    pub s_max: Option<f64>,
    pub s_count: Option<usize>,
    pub u_min: Option<f64>,
    pub u_max: Option<f64>,
    pub u_count: Option<usize>,
    pub kinds: Option<Vec<SmarandacheKind>>,
    pub out: Option<PathBuf>,
    pub tol_re: Option<f64>,
    pub tol_du: Option<f64>,
}

pub const DEFAULT_S_COUNT: usize = 64;
pub const DEFAULT_U_COUNT: usize = 16;
pub const DEFAULT_U_RANGE: (f64, f64) = (-1.0, 1.0);

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, CliError> {
    value.trim().parse().map_err(|_| CliError::Config(format!("{key}: cannot parse {value:?}")))
}

pub fn parse_kinds(value: &str) -> Result<Vec<SmarandacheKind>, CliError> {
    let mut kinds = Vec::new();
    for part in value.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let kind = if part.eq_ignore_ascii_case("all") {
            kinds.extend(SmarandacheKind::ALL);
            continue;
        } else {
            part.parse::<SmarandacheKind>().map_err(|_| CliError::Config(format!("kinds: unknown kind {part:?}")))?
        };
        kinds.push(kind);
    }
    kinds.sort();
    kinds.dedup();
    if kinds.is_empty() {
        return Err(CliError::Config("kinds: empty list".into()));
    }
    Ok(kinds)
}

impl RunConfig {
    /// Parses the configuration file format.
    pub fn parse(text: &str, base_dir: Option<&Path>) -> Result<RunConfig, CliError> {
        let mut cfg = RunConfig::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Config(format!("line {}: expected key = value", n + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "curve" => cfg.curve = Some(CurveSource::parse(value, base_dir)?),
                "curve_file" => cfg.curve = Some(CurveSource::File(resolve(value, base_dir))),
                "s_min" => cfg.s_min = Some(parse_num(key, value)?),
                "s_max" => cfg.s_max = Some(parse_num(key, value)?),
                "s_count" => cfg.s_count = Some(parse_num(key, value)?),
                "u_min" => cfg.u_min = Some(parse_num(key, value)?),
                "u_max" => cfg.u_max = Some(parse_num(key, value)?),
                "u_count" => cfg.u_count = Some(parse_num(key, value)?),
                "kinds" => cfg.kinds = Some(parse_kinds(value)?),
                "out" => cfg.out = Some(resolve(value, base_dir)),
                "tol_re" => cfg.tol_re = Some(parse_num(key, value)?),
                "tol_du" => cfg.tol_du = Some(parse_num(key, value)?),
                other => return Err(CliError::Config(format!("line {}: unknown key {other:?}", n + 1))),
            }
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<RunConfig, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        RunConfig::parse(&text, path.parent())
    }

    /// Fields set in `other` replace those in `self`.
    pub fn overridden_by(self, other: RunConfig) -> RunConfig {
        RunConfig {
            curve: other.curve.or(self.curve),
            s_min: other.s_min.or(self.s_min),
            s_max: other.s_max.or(self.s_max),
            s_count: other.s_count.or(self.s_count),
            u_min: other.u_min.or(self.u_min),
            u_max: other.u_max.or(self.u_max),
            u_count: other.u_count.or(self.u_count),
            kinds: other.kinds.or(self.kinds),
            out: other.out.or(self.out),
            tol_re: other.tol_re.or(self.tol_re),
            tol_du: other.tol_du.or(self.tol_du),
        }
    }

    /// Checks the stated invariants: nonempty ranges, counts ≥ 2, positive tolerances.
    pub fn validate(&self) -> Result<(), CliError> {
        let pair = |lo: Option<f64>, hi: Option<f64>, name: &str| -> Result<(), CliError> {
            for v in [lo, hi].into_iter().flatten() {
                if !v.is_finite() {
                    return Err(CliError::Config(format!("{name} bounds must be finite")));
                }
            }
            if let (Some(lo), Some(hi)) = (lo, hi) {
                if !(hi > lo) {
                    return Err(CliError::Config(format!("{name} range [{lo}, {hi}] is empty")));
                }
            }
            Ok(())
        };
        pair(self.s_min, self.s_max, "s")?;
        pair(self.u_min, self.u_max, "u")?;
        for (name, c) in [("s_count", self.s_count), ("u_count", self.u_count)] {
            if matches!(c, Some(n) if n < 2) {
                return Err(CliError::Config(format!("{name} must be at least 2")));
            }
        }
        for (name, t) in [("tol_re", self.tol_re), ("tol_du", self.tol_du)] {
            if matches!(t, Some(v) if !(v > 0.0 && v.is_finite())) {
                return Err(CliError::Config(format!("{name} must be positive")));
            }
        }
        Ok(())
    }

    pub fn u_range(&self) -> (f64, f64) {
        (self.u_min.unwrap_or(DEFAULT_U_RANGE.0), self.u_max.unwrap_or(DEFAULT_U_RANGE.1))
    }

    pub fn kinds(&self) -> Vec<SmarandacheKind> {
        self.kinds.clone().unwrap_or_else(|| SmarandacheKind::ALL.to_vec())
    }

    pub fn out_dir(&self) -> PathBuf {
        self.out.clone().unwrap_or_else(|| PathBuf::from("."))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_overrides() {
        let text = "# sample\ncurve = cone(0.8, 0.6)\ns_min = 0.5\ns_max=3 # trailing\nkinds = eg, et\nout = results\n";
        let cfg = RunConfig::parse(text, Some(Path::new("/data"))).unwrap();
        assert_eq!(cfg.curve, Some(CurveSource::Preset(Preset::DEFAULT_CONE)));
        assert_eq!(cfg.kinds, Some(vec![SmarandacheKind::ET, SmarandacheKind::EG]));
        assert_eq!(cfg.out, Some(PathBuf::from("/data/results")));
        let cli = RunConfig { s_max: Some(4.0), ..Default::default() };
        let merged = cfg.overridden_by(cli);
        assert_eq!((merged.s_min, merged.s_max), (Some(0.5), Some(4.0)));
        merged.validate().unwrap();
    }

    #[test]
    fn rejects_bad_settings() {
        assert!(RunConfig::parse("colour = red", None).is_err());
        assert!(RunConfig::parse("s_count = many", None).is_err());
        assert!(RunConfig::parse("just words", None).is_err());
        assert!(RunConfig::parse("curve = torus", None).is_err());
        for text in ["s_min = 2\ns_max = 1", "u_count = 1", "tol_re = 0", "tol_du = -1"] {
            assert!(RunConfig::parse(text, None).unwrap().validate().is_err(), "{text}");
        }
    }

    #[test]
    fn file_curves_resolve_against_config_dir() {
        let cfg = RunConfig::parse("curve = file:curve.txt", Some(Path::new("/cfg"))).unwrap();
        assert_eq!(cfg.curve, Some(CurveSource::File(PathBuf::from("/cfg/curve.txt"))));
        assert_eq!(parse_kinds("all").unwrap().len(), 4);
    }
}
