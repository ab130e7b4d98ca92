//! `run_manifest.json`: config echo, tool version, per-phase timings and
//! artifact digests. Written when the run starts and rewritten when it ends.

use std::time::Instant;

use serde::Serialize;

use crate::config::RunConfig;
use crate::error::CliError;
use crate::output::{ArtifactRecord, Artifacts, SCHEMA_VERSION};

pub const MANIFEST: &str = "run_manifest.json";

#[derive(Debug, Clone, Serialize)]
pub struct Phase {
    pub name: String,
    pub status: &'static str,
    pub wall_seconds: f64,
}

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub schema_version: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub threads: usize,
    pub config: RunConfig,
    pub status: &'static str,
    pub error: Option<String>,
    pub phases: Vec<Phase>,
    pub artifacts: Vec<ArtifactRecord>,
}

impl RunManifest {
    pub fn start(command: &str, config: &RunConfig, out: &Artifacts) -> Result<Self, CliError> {
        let m = RunManifest {
            schema_version: SCHEMA_VERSION,
            tool: crate::TOOL,
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            threads: rayon::current_num_threads(),
            config: config.clone(),
            status: "running",
            error: None,
            phases: Vec::new(),
            artifacts: Vec::new(),
        };
        m.save(out)?;
        Ok(m)
    }

    /// Run one phase, recording its wall time and outcome.
    pub fn phase<T>(&mut self, name: &str, f: impl FnOnce() -> Result<T, CliError>) -> Result<T, CliError> {
        log::info!("phase {name}");
        let t = Instant::now();
        let r = f();
        self.phases.push(Phase {
            name: name.to_string(),
            status: if r.is_ok() { "ok" } else { "failed" },
            wall_seconds: t.elapsed().as_secs_f64(),
        });
        r
    }

    pub fn finish(mut self, out: &Artifacts, outcome: &Result<(), CliError>) -> Result<(), CliError> {
        self.artifacts = out.records.clone();
        match outcome {
            Ok(()) => self.status = "ok",
            Err(e) => {
                self.status = "failed";
                self.error = Some(e.to_string());
            }
        }
        self.save(out)
    }

    fn save(&self, out: &Artifacts) -> Result<(), CliError> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        std::fs::write(out.dir().join(MANIFEST), s)?;
        Ok(())
    }
}
