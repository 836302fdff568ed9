//! `key = value` experiment configuration files.
//!
//! ```text
//! # comment
//! kind = design_sim
//! N = 1000
//! scale_list = 0.2, 0.4
//! map = mixture:1:0.7071067811865476,10:0.7071067811865476
//! ```
//!
//! Unknown and repeated keys are errors naming the offending line.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{io_at, Error, Result};
use crate::randproj::Family;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExperimentKind {
    DesignSim,
    QuantizationSim,
    UniversalScatter,
    Retrieval,
    BoundsSweep,
    MapEval,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 6] = [
        Self::DesignSim,
        Self::QuantizationSim,
        Self::UniversalScatter,
        Self::Retrieval,
        Self::BoundsSweep,
        Self::MapEval,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::DesignSim => "design_sim",
            Self::QuantizationSim => "quantization_sim",
            Self::UniversalScatter => "universal_scatter",
            Self::Retrieval => "retrieval",
            Self::BoundsSweep => "bounds_sweep",
            Self::MapEval => "map_eval",
        }
    }
}

impl FromStr for ExperimentKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s.trim())
            .ok_or_else(|| Error::ConfigValue(format!("unknown experiment kind `{}`", s.trim())))
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Everything an experiment run needs. Keys not used by a kind are ignored
/// by its runner but still validated.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    /// Signal dimension.
    pub n: usize,
    /// Embedding dimension.
    pub m: usize,
    /// Signal pairs per cell (or grid points for `map_eval`).
    pub pairs: usize,
    pub d_min: f64,
    pub d_max: f64,
    /// Map description, see [`crate::maps::PeriodicMap`]'s `FromStr`.
    pub map: String,
    pub family: Family,
    /// Projection scale (sigma or gamma).
    pub scale: f64,
    /// Quantizer step; 0 means "use `scale` as the period-1 scale directly".
    pub delta: f64,
    pub bits: u32,
    pub scale_list: Vec<f64>,
    pub delta_list: Vec<f64>,
    pub m_list: Vec<usize>,
    pub bits_list: Vec<u32>,
    pub n_list: Vec<usize>,
    /// `r / Delta` values for boundary-crossing sweeps.
    pub ratio_list: Vec<f64>,
    pub eps: f64,
    pub eps_list: Vec<f64>,
    /// Point-cloud size for bound sweeps.
    pub q: u64,
    pub c0: f64,
    /// Quantization sweep on the multibit universal maps instead of a quantized `map`.
    pub universal: bool,
    pub clusters: usize,
    pub cluster_size: usize,
    pub cluster_spread: f64,
    pub cluster_noise: f64,
    /// Retrieval vote size `J`.
    pub neighbors: usize,
    pub trials: usize,
    pub seed: u64,
    pub out: Option<PathBuf>,
}

/// The mixture used by the design and quantization simulations.
pub const DEFAULT_MIXTURE: &str = "mixture:1:0.7071067811865476,10:0.7071067811865476";

impl ExperimentConfig {
    /// Desk-scale defaults for `kind`.
    pub fn defaults(kind: ExperimentKind) -> Self {
        let mut c = Self {
            kind,
            n: 1000,
            m: 2000,
            pairs: 500,
            d_min: 0.0,
            d_max: 2.0,
            map: DEFAULT_MIXTURE.into(),
            family: Family::Gaussian,
            scale: 1.0,
            delta: 0.0,
            bits: 1,
            scale_list: vec![0.2, 0.4],
            delta_list: vec![0.5, 1.0],
            m_list: vec![250, 1000],
            bits_list: vec![1, 2, 4],
            n_list: vec![10, 100],
            ratio_list: vec![0.001, 0.01],
            eps: 0.1,
            eps_list: vec![0.5, 0.55, 0.6, 0.65],
            q: 2,
            c0: 0.0,
            universal: false,
            clusters: 50,
            cluster_size: 5,
            cluster_spread: 1.0,
            cluster_noise: 0.2,
            neighbors: 20,
            trials: 1,
            seed: 1,
            out: None,
        };
        match kind {
            ExperimentKind::DesignSim => {}
            ExperimentKind::QuantizationSim => {
                c.scale = 0.2;
                c.pairs = 300;
            }
            ExperimentKind::UniversalScatter => {
                c.map = "square".into();
                c.d_max = 3.0;
                c.pairs = 300;
            }
            ExperimentKind::Retrieval => {
                c.map = "square".into();
                c.n = 100;
                c.delta_list = vec![0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0];
                c.m_list = vec![32, 64, 128];
                c.trials = 4;
            }
            ExperimentKind::BoundsSweep => {
                c.m_list = vec![100, 1000, 10000];
                c.n_list = vec![10, 30, 100, 300];
                c.ratio_list = vec![0.01, 0.03, 0.1, 0.3];
                c.trials = 100_000;
            }
            ExperimentKind::MapEval => {
                c.map = "square".into();
                c.pairs = 101;
                c.d_max = 3.0;
            }
        }
        c
    }

    /// Parses a configuration file; `kind` may come from the file or from `fallback`.
    pub fn from_path(path: impl AsRef<Path>, fallback: Option<ExperimentKind>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(io_at(path))?;
        Self::parse(&text, fallback)
    }

    pub fn parse(text: &str, fallback: Option<ExperimentKind>) -> Result<Self> {
        let mut entries: Vec<(usize, &str, &str)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let (key, value) = body.split_once('=').ok_or_else(|| Error::Config {
                line,
                msg: format!("expected `key = value`, got `{body}`"),
            })?;
            let key = key.trim();
            if !KEYS.contains(&key) {
                return Err(Error::Config {
                    line,
                    msg: format!("unknown key `{key}`"),
                });
            }
            if let Some((first, _, _)) = entries.iter().find(|e| e.1 == key) {
                return Err(Error::Config {
                    line,
                    msg: format!("duplicate key `{key}` (first set on line {first})"),
                });
            }
            entries.push((line, key, value.trim()));
        }
        let kind = match entries.iter().find(|e| e.1 == "kind") {
            Some(&(line, _, v)) => {
                let k: ExperimentKind = v.parse().map_err(|e: Error| Error::Config {
                    line,
                    msg: e.to_string(),
                })?;
                if let Some(f) = fallback {
                    if f != k {
                        return Err(Error::Config {
                            line,
                            msg: format!("config is for `{k}` but `{f}` was requested"),
                        });
                    }
                }
                k
            }
            None => fallback.ok_or_else(|| Error::ConfigValue("missing `kind`".into()))?,
        };
        let mut cfg = Self::defaults(kind);
        for &(line, key, value) in &entries {
            cfg.set(key, value).map_err(|msg| Error::Config { line, msg })?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn set(&mut self, key: &str, v: &str) -> std::result::Result<(), String> {
        match key {
            "kind" => {}
            "N" => self.n = num(v)?,
            "M" => self.m = num(v)?,
            "pairs" => self.pairs = num(v)?,
            "d_min" => self.d_min = num(v)?,
            "d_max" => self.d_max = num(v)?,
            "map" => self.map = v.to_string(),
            "family" => self.family = v.parse().map_err(|e: Error| e.to_string())?,
            "scale" => self.scale = num(v)?,
            "delta" => self.delta = num(v)?,
            "bits" => self.bits = num(v)?,
            "scale_list" => self.scale_list = list(v)?,
            "delta_list" => self.delta_list = list(v)?,
            "m_list" => self.m_list = list(v)?,
            "bits_list" => self.bits_list = list(v)?,
            "n_list" => self.n_list = list(v)?,
            "ratio_list" => self.ratio_list = list(v)?,
            "eps" => self.eps = num(v)?,
            "eps_list" => self.eps_list = list(v)?,
            "q" => self.q = num(v)?,
            "c0" => self.c0 = num(v)?,
            "universal" => self.universal = num(v)?,
            "clusters" => self.clusters = num(v)?,
            "cluster_size" => self.cluster_size = num(v)?,
            "cluster_spread" => self.cluster_spread = num(v)?,
            "cluster_noise" => self.cluster_noise = num(v)?,
            "neighbors" => self.neighbors = num(v)?,
            "trials" => self.trials = num(v)?,
            "seed" => self.seed = num(v)?,
            "out" => self.out = Some(PathBuf::from(v)),
            _ => return Err(format!("unknown key `{key}`")),
        }
        Ok(())
    }

    /// Checks ranges and that the map description parses.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::ConfigValue(m));
        if self.n == 0 || self.m == 0 || self.pairs == 0 {
            return bad("N, M and pairs must be positive".into());
        }
        if !(self.d_min >= 0.0 && self.d_max > self.d_min && self.d_max.is_finite()) {
            return bad(format!(
                "need 0 <= d_min < d_max, got {} and {}",
                self.d_min, self.d_max
            ));
        }
        if !(self.scale > 0.0 && self.scale.is_finite()) {
            return bad(format!("scale must be positive, got {}", self.scale));
        }
        if !(self.delta >= 0.0 && self.delta.is_finite()) {
            return bad(format!("delta must be nonnegative, got {}", self.delta));
        }
        if !(self.eps > 0.0 && self.eps.is_finite()) {
            return bad(format!("eps must be positive, got {}", self.eps));
        }
        let lists: [(&str, bool, bool); 7] = [
            (
                "scale_list",
                self.scale_list.is_empty(),
                self.scale_list.iter().all(|v| *v > 0.0 && v.is_finite()),
            ),
            (
                "delta_list",
                self.delta_list.is_empty(),
                self.delta_list.iter().all(|v| *v > 0.0 && v.is_finite()),
            ),
            ("m_list", self.m_list.is_empty(), self.m_list.iter().all(|v| *v > 0)),
            (
                "bits_list",
                self.bits_list.is_empty(),
                self.bits_list.iter().all(|v| (1..=16).contains(v)),
            ),
            ("n_list", self.n_list.is_empty(), self.n_list.iter().all(|v| *v > 0)),
            (
                "ratio_list",
                self.ratio_list.is_empty(),
                self.ratio_list.iter().all(|v| *v > 0.0 && v.is_finite()),
            ),
            (
                "eps_list",
                self.eps_list.is_empty(),
                self.eps_list.iter().all(|v| *v > 0.0 && v.is_finite()),
            ),
        ];
        for (name, empty, ok) in lists {
            if empty {
                return bad(format!("{name} must be nonempty"));
            }
            if !ok {
                return bad(format!("{name} has out-of-range entries"));
            }
        }
        if !(1..=16).contains(&self.bits) {
            return bad(format!("bits must be in 1..=16, got {}", self.bits));
        }
        if self.q < 2 {
            return bad("q must be at least 2".into());
        }
        if !(self.c0 >= 0.0) {
            return bad("c0 must be nonnegative".into());
        }
        if self.clusters < 2 || self.cluster_size < 2 || self.neighbors == 0 || self.trials == 0 {
            return bad("clusters and cluster_size need >= 2; neighbors and trials >= 1".into());
        }
        if !(self.cluster_spread > 0.0 && self.cluster_noise >= 0.0) {
            return bad("cluster_spread must be positive and cluster_noise nonnegative".into());
        }
        self.map
            .parse::<crate::maps::PeriodicMap>()
            .map_err(|e| Error::ConfigValue(e.to_string()))?;
        Ok(())
    }
}

const KEYS: &[&str] = &[
    "kind",
    "N",
    "M",
    "pairs",
    "d_min",
    "d_max",
    "map",
    "family",
    "scale",
    "delta",
    "bits",
    "scale_list",
    "delta_list",
    "m_list",
    "bits_list",
    "n_list",
    "ratio_list",
    "eps",
    "eps_list",
    "q",
    "c0",
    "universal",
    "clusters",
    "cluster_size",
    "cluster_spread",
    "cluster_noise",
    "neighbors",
    "trials",
    "seed",
    "out",
];

fn num<T: FromStr>(v: &str) -> std::result::Result<T, String> {
    v.trim().parse().map_err(|_| format!("cannot parse `{}`", v.trim()))
}

fn list<T: FromStr>(v: &str) -> std::result::Result<Vec<T>, String> {
    v.split(',').filter(|s| !s.trim().is_empty()).map(num).collect()
}

fn join<T: fmt::Display>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for ExperimentConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "kind = {}", self.kind)?;
        writeln!(f, "N = {}", self.n)?;
        writeln!(f, "M = {}", self.m)?;
        writeln!(f, "pairs = {}", self.pairs)?;
        writeln!(f, "d_min = {}", self.d_min)?;
        writeln!(f, "d_max = {}", self.d_max)?;
        writeln!(f, "map = {}", self.map)?;
        writeln!(f, "family = {}", self.family)?;
        writeln!(f, "scale = {}", self.scale)?;
        writeln!(f, "delta = {}", self.delta)?;
        writeln!(f, "bits = {}", self.bits)?;
        writeln!(f, "scale_list = {}", join(&self.scale_list))?;
        writeln!(f, "delta_list = {}", join(&self.delta_list))?;
        writeln!(f, "m_list = {}", join(&self.m_list))?;
        writeln!(f, "bits_list = {}", join(&self.bits_list))?;
        writeln!(f, "n_list = {}", join(&self.n_list))?;
        writeln!(f, "ratio_list = {}", join(&self.ratio_list))?;
        writeln!(f, "eps = {}", self.eps)?;
        writeln!(f, "eps_list = {}", join(&self.eps_list))?;
        writeln!(f, "q = {}", self.q)?;
        writeln!(f, "c0 = {}", self.c0)?;
        writeln!(f, "universal = {}", self.universal)?;
        writeln!(f, "clusters = {}", self.clusters)?;
        writeln!(f, "cluster_size = {}", self.cluster_size)?;
        writeln!(f, "cluster_spread = {}", self.cluster_spread)?;
        writeln!(f, "cluster_noise = {}", self.cluster_noise)?;
        writeln!(f, "neighbors = {}", self.neighbors)?;
        writeln!(f, "trials = {}", self.trials)?;
        writeln!(f, "seed = {}", self.seed)?;
        if let Some(out) = &self.out {
            writeln!(f, "out = {}", out.display())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_values_and_lists() {
        let c = ExperimentConfig::parse(
            "kind = design_sim\nM = 2000 # trailing\n\n# c\ndelta_list = 0.5,0.75,1.0\n",
            None,
        )
        .unwrap();
        assert_eq!(c.m, 2000);
        assert_eq!(c.delta_list, vec![0.5, 0.75, 1.0]);
        assert_eq!(c.kind, ExperimentKind::DesignSim);
    }

    #[test]
    fn round_trip() {
        let mut c = ExperimentConfig::defaults(ExperimentKind::Retrieval);
        c.m = 2000;
        c.out = Some("results/x".into());
        let back = ExperimentConfig::parse(&c.to_string(), None).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn errors_name_lines() {
        let e = ExperimentConfig::parse("kind = design_sim\nsigm = 1\n", None).unwrap_err();
        assert!(matches!(e, Error::Config { line: 2, .. }), "{e}");
        assert!(e.to_string().contains("sigm"));
        let e = ExperimentConfig::parse("M = 1\nM = 2\n", Some(ExperimentKind::MapEval)).unwrap_err();
        assert!(matches!(e, Error::Config { line: 2, .. }));
        let e = ExperimentConfig::parse("kind = design_sim\nM = x\n", None).unwrap_err();
        assert!(matches!(e, Error::Config { line: 2, .. }));
        let e = ExperimentConfig::parse("just text\n", Some(ExperimentKind::MapEval)).unwrap_err();
        assert!(matches!(e, Error::Config { line: 1, .. }));
        assert!(ExperimentConfig::parse("kind = retrieval\n", Some(ExperimentKind::MapEval)).is_err());
        assert!(ExperimentConfig::parse("M = 3\n", None).is_err());
        assert!(ExperimentConfig::parse("kind = map_eval\nmap = triangle\n", None).is_err());
        assert!(ExperimentConfig::parse("kind = map_eval\ndelta_list =\n", None).is_err());
        assert!(ExperimentConfig::parse("kind = map_eval\nd_max = 0\n", None).is_err());
    }
}
