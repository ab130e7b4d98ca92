//! Close-to-row ray schedules `m_n`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ScheduleRule {
    /// `m_n = m`.
    Constant { m: usize },
    /// `m_n = ⌊c·√n⌋`.
    Sqrt { c: f64 },
    /// `m_n = ⌊c·n / log²(n+2)⌋`.
    NOverLog2 { c: f64 },
    /// `m_n = ⌊c·n / log(n+2)⌋`; grows like `o(n)` but not `o(n/log n)`.
    NOverLog { c: f64 },
    /// Values taken verbatim; must already satisfy the step constraints.
    Explicit { values: Vec<usize> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GrowthClass {
    Constant,
    /// `m_n = o(n / log n)`.
    SubNOverLog,
    /// `m_n = o(n)`.
    Sublinear,
    /// Finite explicit data says nothing about asymptotics.
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RaySchedule {
    pub rule: ScheduleRule,
    /// `m_n` for `n = 0..=horizon`.
    pub values: Vec<usize>,
    pub growth: GrowthClass,
    /// Indices where the raw rule value was clipped.
    pub clipped: Vec<usize>,
}

impl RaySchedule {
    pub fn horizon(&self) -> usize {
        self.values.len() - 1
    }

    pub fn m(&self, n: usize) -> usize {
        self.values[n]
    }

    pub fn max_m(&self) -> usize {
        self.values.iter().copied().max().unwrap_or(0)
    }
}

impl ScheduleRule {
    fn raw(&self, n: usize) -> usize {
        let x = n as f64;
        let v = match self {
            ScheduleRule::Constant { m } => return *m,
            ScheduleRule::Sqrt { c } => c * x.sqrt(),
            ScheduleRule::NOverLog2 { c } => {
                let l = (x + 2.0).ln();
                c * x / (l * l)
            }
            ScheduleRule::NOverLog { c } => c * x / (x + 2.0).ln(),
            ScheduleRule::Explicit { values } => return values[n],
        };
        // guard against x.sqrt() landing just below an integer
        (v + 1e-12).floor() as usize
    }

    pub fn growth(&self) -> GrowthClass {
        match self {
            ScheduleRule::Constant { .. } => GrowthClass::Constant,
            ScheduleRule::Sqrt { .. } | ScheduleRule::NOverLog2 { .. } => GrowthClass::SubNOverLog,
            ScheduleRule::NOverLog { .. } => GrowthClass::Sublinear,
            ScheduleRule::Explicit { .. } => GrowthClass::Undetermined,
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            ScheduleRule::Sqrt { c } | ScheduleRule::NOverLog2 { c } | ScheduleRule::NOverLog { c } => {
                if !(c.is_finite() && *c > 0.0) {
                    return Err(Error::param("schedule.c", "must be finite and positive"));
                }
            }
            ScheduleRule::Explicit { values } => {
                for (n, w) in values.iter().enumerate() {
                    if *w > n {
                        return Err(Error::Schedule(format!("m_{n} = {w} exceeds n")));
                    }
                    if n > 0 {
                        let prev = values[n - 1];
                        if *w < prev || *w > prev + 1 {
                            return Err(Error::Schedule(format!("step m_{} = {prev} -> m_{n} = {w} is not 0 or +1", n - 1)));
                        }
                    }
                }
            }
            ScheduleRule::Constant { .. } => {}
        }
        Ok(())
    }
}

/// Materialize `m_0..=m_horizon`, clipping so that `m_n ≤ n` and every step is 0 or +1.
pub fn build_schedule(rule: &ScheduleRule, horizon: usize) -> Result<RaySchedule> {
    if horizon < 1 {
        return Err(Error::param("horizon", "must be at least 1"));
    }
    rule.validate()?;
    if let ScheduleRule::Explicit { values } = rule {
        if values.len() < horizon + 1 {
            return Err(Error::Schedule(format!("explicit list has {} values, horizon needs {}", values.len(), horizon + 1)));
        }
    }
    let mut values = Vec::with_capacity(horizon + 1);
    let mut clipped = Vec::new();
    for n in 0..=horizon {
        let raw = rule.raw(n);
        let v = match values.last() {
            None => 0,
            Some(&prev) => raw.clamp(prev, prev + 1),
        };
        if v != raw {
            clipped.push(n);
        }
        values.push(v);
    }
    Ok(RaySchedule { rule: rule.clone(), values, growth: rule.growth(), clipped })
}
