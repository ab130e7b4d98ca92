use padelab_core::pade::{block_scan, Block};
use padelab_core::series::Polynomial;
use serde::Serialize;

use super::Context;
use crate::error::CliError;
use crate::output::{rational, Csv};

#[derive(Serialize)]
struct BlocksFile<'a> {
    function: &'static str,
    n_max: usize,
    m_max: usize,
    blocks: &'a [Block],
}

fn coeffs(p: &Polynomial) -> String {
    (0..=p.deg0()).map(|j| rational(&p.coeff(j))).collect::<Vec<_>>().join(" ")
}

pub fn run(ctx: &mut Context) -> Result<(), CliError> {
    let t = ctx.cfg.table.as_ref().ok_or_else(|| CliError::Config("`table`: this command needs a [table] section".into()))?;
    let f = &ctx.f;
    let scan = ctx.manifest.phase("block-scan", || Ok(block_scan(f, t.n_max, t.m_max)?))?;

    let mut csv = Csv::new(
        &ctx.csv_meta(&[
            format!("entries 0 <= n < {}, 0 <= m < {}", t.n_max, t.m_max),
            "p and q: exact coefficients from z^0 upward; block_n, block_m: anchor of the containing block".into(),
        ]),
        &["n", "m", "deg_p", "deg_q", "tau", "a_lead", "block_n", "block_m", "p", "q"],
    );
    for n in 0..t.n_max {
        for m in 0..t.m_max {
            let e = scan.entry(n, m);
            let b = scan.block_of(n, m);
            csv.row(&[
                n.to_string(),
                m.to_string(),
                if e.p.is_zero() { "-inf".into() } else { e.deg_p().to_string() },
                e.mu.to_string(),
                e.defect.to_string(),
                rational(&e.a_lead),
                b.anchor.0.to_string(),
                b.anchor.1.to_string(),
                coeffs(&e.p),
                coeffs(&e.q),
            ]);
        }
    }
    let fmt = ctx.fmt;
    ctx.out.write("table.csv", &csv.finish())?;
    ctx.out.write_json(
        "blocks.json",
        &fmt,
        &BlocksFile { function: ctx.cfg.function.kind_name(), n_max: t.n_max, m_max: t.m_max, blocks: &scan.blocks },
    )
}
