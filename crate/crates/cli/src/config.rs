//! Run configuration, read from a single TOML file.
//!
//! Every section rejects unknown keys. `validate` runs before any
//! computation and names the offending field.

use std::path::{Path, PathBuf};

use padelab_core::convergence::Shape;
use padelab_core::sequence::{build_schedule, ScheduleRule};
use padelab_core::series::{catalog_make, CatalogSpec};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub function: CatalogSpec,
    #[serde(default)]
    pub run: RunSection,
    pub schedule: Option<ScheduleRule>,
    pub table: Option<TableSection>,
    #[serde(default)]
    pub windows: WindowsSection,
    #[serde(default)]
    pub grids: Vec<GridSection>,
    pub overconv: Option<OverconvSection>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSection {
    /// Largest `n` on the ray.
    pub horizon: Option<usize>,
    #[serde(default = "default_precision")]
    pub precision: u32,
    #[serde(default = "default_eps")]
    pub eps: f64,
    /// Seed for grid jitter.
    #[serde(default)]
    pub seed: u64,
    pub out: Option<PathBuf>,
    /// Normalization radius; overrides the declared or estimated `R_m`.
    pub radius: Option<f64>,
    /// Points at which the difference identity is checked.
    #[serde(default = "default_probes")]
    pub probes: Vec<(f64, f64)>,
}

impl Default for RunSection {
    fn default() -> Self {
        RunSection {
            horizon: None,
            precision: default_precision(),
            eps: default_eps(),
            seed: 0,
            out: None,
            radius: None,
            probes: default_probes(),
        }
    }
}

fn default_precision() -> u32 {
    padelab_core::series::hp::DEFAULT_PRECISION
}

fn default_eps() -> f64 {
    0.1
}

fn default_probes() -> Vec<(f64, f64)> {
    vec![(0.3, 0.1), (-0.25, 0.2), (0.1, -0.35)]
}

/// Entries `0 ≤ n < n_max`, `0 ≤ m < m_max`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableSection {
    pub n_max: usize,
    pub m_max: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowsSection {
    #[serde(default = "default_margin")]
    pub margin: f64,
    #[serde(default = "default_min_ratio_gap")]
    pub min_ratio_gap: f64,
    /// ψ anchors; defaults to the right ends of the detected decay windows.
    pub anchors: Option<Vec<usize>>,
    #[serde(default)]
    pub psi: PsiSection,
    /// Replaces the computed decay profile.
    pub profile_override: Option<ProfileOverride>,
}

impl Default for WindowsSection {
    fn default() -> Self {
        WindowsSection {
            margin: default_margin(),
            min_ratio_gap: default_min_ratio_gap(),
            anchors: None,
            psi: PsiSection::default(),
            profile_override: None,
        }
    }
}

fn default_margin() -> f64 {
    0.05
}

fn default_min_ratio_gap() -> f64 {
    0.1
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PsiSection {
    #[serde(default = "one")]
    pub c1: f64,
    #[serde(default = "one")]
    pub c4: f64,
    /// Defaults to the largest `m_n` of the schedule.
    pub m: Option<f64>,
    #[serde(default)]
    pub tau: TauSetting,
}

impl Default for PsiSection {
    fn default() -> Self {
        PsiSection { c1: 1.0, c4: 1.0, m: None, tau: TauSetting::default() }
    }
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TauSetting {
    Fixed(f64),
    Policy(TauPolicy),
}

impl Default for TauSetting {
    fn default() -> Self {
        TauSetting::Policy(TauPolicy::Estimate)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TauPolicy {
    /// `τ = −ln(max_k profile[n_k]·R_m)`.
    Estimate,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileOverride {
    pub values: Vec<f64>,
    pub radius: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    pub name: String,
    pub region: Shape,
    #[serde(default = "default_density")]
    pub density: (usize, usize),
    #[serde(default)]
    pub jitter: bool,
    /// Allowed `|fitted − theory|` rate difference.
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
}

fn default_density() -> (usize, usize) {
    (64, 64)
}

fn default_tolerance() -> f64 {
    0.05
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WindowSource {
    /// Coefficient gaps when present, else stationary runs, else decay windows.
    #[default]
    Auto,
    CoeffGap,
    Stationary,
    Decay,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OverconvSection {
    /// Defaults to the first declared regular point.
    pub z0: Option<(f64, f64)>,
    pub radii: Vec<f64>,
    #[serde(default = "default_density")]
    pub density: (usize, usize),
    #[serde(default = "default_threshold")]
    pub threshold: f64,
    #[serde(default)]
    pub windows: WindowSource,
}

fn default_threshold() -> f64 {
    1e-6
}

fn bad(field: &str, reason: impl std::fmt::Display) -> CliError {
    CliError::Config(format!("`{field}`: {reason}"))
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Config(m) => CliError::Config(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn validate(&self) -> Result<(), CliError> {
        catalog_make(&self.function).map_err(|e| bad("function", e))?;
        let r = &self.run;
        if !(64..=8192).contains(&r.precision) {
            return Err(bad("run.precision", "must lie in [64, 8192] bits"));
        }
        if !(r.eps > 0.0 && r.eps < 1.0) {
            return Err(bad("run.eps", "must lie in (0, 1)"));
        }
        if r.horizon == Some(0) {
            return Err(bad("run.horizon", "must be at least 1"));
        }
        if let Some(radius) = r.radius {
            if !(radius > 0.0 && radius.is_finite()) {
                return Err(bad("run.radius", "must be finite and positive"));
            }
        }
        if r.probes.iter().any(|p| !(p.0.is_finite() && p.1.is_finite())) {
            return Err(bad("run.probes", "must be finite"));
        }
        if let Some(rule) = &self.schedule {
            let h = r.horizon.ok_or_else(|| bad("run.horizon", "required with a [schedule] section"))?;
            build_schedule(rule, h).map_err(|e| bad("schedule", e))?;
        }
        if let Some(t) = &self.table {
            if t.n_max < 1 || t.m_max < 1 {
                return Err(bad("table", "n_max and m_max must be at least 1"));
            }
        }
        let w = &self.windows;
        if !(0.0..1.0).contains(&w.margin) {
            return Err(bad("windows.margin", "must lie in [0, 1)"));
        }
        if !(w.min_ratio_gap > 0.0 && w.min_ratio_gap < 1.0) {
            return Err(bad("windows.min_ratio_gap", "must lie in (0, 1)"));
        }
        if w.psi.c1 < 1.0 || w.psi.c4 < 1.0 {
            return Err(bad("windows.psi", "c1 and c4 must be at least 1"));
        }
        if let Some(m) = w.psi.m {
            if !(m >= 0.0 && m.is_finite()) {
                return Err(bad("windows.psi.m", "must be finite and nonnegative"));
            }
        }
        if let TauSetting::Fixed(t) = w.psi.tau {
            if !(t > 0.0 && t.is_finite()) {
                return Err(bad("windows.psi.tau", "must be positive or \"estimate\""));
            }
        }
        if let Some(p) = &w.profile_override {
            if p.values.is_empty() || p.values.iter().any(|v| !(*v >= 0.0 && v.is_finite())) {
                return Err(bad("windows.profile_override.values", "must be a nonempty list of finite nonnegative numbers"));
            }
            if !(p.radius > 0.0 && p.radius.is_finite()) {
                return Err(bad("windows.profile_override.radius", "must be finite and positive"));
            }
        }
        let mut names = std::collections::BTreeSet::new();
        for (i, g) in self.grids.iter().enumerate() {
            let field = format!("grids[{i}]");
            if g.name.is_empty() || !g.name.chars().all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_') {
                return Err(bad(&format!("{field}.name"), "use letters, digits, `-` and `_` only"));
            }
            if !names.insert(g.name.as_str()) {
                return Err(bad(&format!("{field}.name"), format!("duplicate grid name `{}`", g.name)));
            }
            if !(g.tolerance > 0.0) {
                return Err(bad(&format!("{field}.tolerance"), "must be positive"));
            }
            padelab_core::convergence::CompactGrid::build(g.region.clone(), g.density, None, 64)
                .map_err(|e| bad(&format!("{field}.region"), e))?;
        }
        if let Some(o) = &self.overconv {
            if o.radii.is_empty() || o.radii.iter().any(|r| !(*r > 0.0 && r.is_finite())) {
                return Err(bad("overconv.radii", "must be a nonempty list of positive radii"));
            }
            if !(o.threshold > 0.0) {
                return Err(bad("overconv.threshold", "must be positive"));
            }
            if o.density.0 < 2 || o.density.1 < 1 {
                return Err(bad("overconv.density", "needs at least 2 radial and 1 angular samples"));
            }
        }
        Ok(())
    }

    pub fn require_schedule(&self) -> Result<(&ScheduleRule, usize), CliError> {
        let rule = self.schedule.as_ref().ok_or_else(|| bad("schedule", "this command needs a [schedule] section"))?;
        let h = self.run.horizon.ok_or_else(|| bad("run.horizon", "this command needs a horizon"))?;
        Ok((rule, h))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASE: &str = r#"
[function]
kind = "rational"
poles = ["1", "2"]
residues = ["1", "1"]

[run]
horizon = 40

[schedule]
rule = "constant"
m = 1
"#;

    #[test]
    fn minimal_config_parses() {
        let c = RunConfig::parse(BASE).unwrap();
        c.validate().unwrap();
        assert_eq!(c.run.precision, 256);
        assert_eq!(c.windows.psi.tau, TauSetting::Policy(TauPolicy::Estimate));
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let e = RunConfig::parse(&format!("{BASE}\nbogus = 1\n")).unwrap_err();
        assert!(e.to_string().contains("bogus"), "{e}");
        let e = RunConfig::parse(&BASE.replace("m = 1", "m = 1\nextra = 2")).unwrap_err();
        assert!(e.to_string().contains("extra"), "{e}");
    }

    #[test]
    fn invalid_schedule_names_the_field() {
        let c = RunConfig::parse(&BASE.replace("rule = \"constant\"\nm = 1", "rule = \"explicit\"\nvalues = [0, 2]")).unwrap();
        let e = c.validate().unwrap_err();
        assert!(e.to_string().contains("`schedule`"), "{e}");
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn tau_accepts_number_or_policy() {
        let c = RunConfig::parse(&format!("{BASE}\n[windows.psi]\ntau = 0.5\n")).unwrap();
        assert_eq!(c.windows.psi.tau, TauSetting::Fixed(0.5));
        assert!(RunConfig::parse(&format!("{BASE}\n[windows.psi]\ntau = \"guess\"\n")).is_err());
    }

    #[test]
    fn grid_region_is_validated() {
        let text = format!("{BASE}\n[[grids]]\nname = \"K\"\nregion = {{ shape = \"disk\", center = [0.0, 0.0], radius = -1.0 }}\n");
        let e = RunConfig::parse(&text).unwrap().validate().unwrap_err();
        assert!(e.to_string().contains("grids[0].region"), "{e}");
    }
}
