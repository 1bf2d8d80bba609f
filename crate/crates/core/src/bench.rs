//! Eigendrop experiments: one record per (method, k), CSV output and an SVG chart.

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::immunize::{
    baseline_select, exhaustive_best_score, greedy1_baseline, Baseline, GreedyConfig,
    ImmunizationResult, ScoreParams, Selection,
};
use crate::sketch::estimate_walks;
use crate::spectral::PowerIterConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    GreedyWalk6,
    Greedy1,
    Degree,
    Random,
    Exhaustive,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::GreedyWalk6,
        Method::Greedy1,
        Method::Degree,
        Method::Random,
        Method::Exhaustive,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::GreedyWalk6 => "greedy-walk6",
            Method::Greedy1 => "greedy1",
            Method::Degree => "degree",
            Method::Random => "random",
            Method::Exhaustive => "exhaustive",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown method {s:?}")))
    }
}

/// Parameters shared by every cell of a run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub graph_name: String,
    pub ks: Vec<usize>,
    pub methods: Vec<Method>,
    pub greedy: GreedyConfig,
    pub power: PowerIterConfig,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.methods.is_empty() {
            return Err(Error::InvalidParameter(
                "at least one method is required".into(),
            ));
        }
        if self.ks.is_empty() || self.ks.contains(&0) {
            return Err(Error::InvalidParameter(
                "k values must be at least 1".into(),
            ));
        }
        self.power.validate()
    }

    /// Provenance lines written before the CSV header.
    pub fn provenance(&self, g: &Graph) -> Vec<String> {
        vec![
            format!("graph={} n={} m={}", self.graph_name, g.n(), g.m()),
            format!(
                "alpha={} beta={} base_seed={} gamma_mode={}",
                self.greedy.alpha_for(g),
                self.greedy.beta,
                self.greedy.base_seed,
                self.greedy.gamma_mode
            ),
            format!(
                "power_tolerance={} power_max_iterations={} power_seed={}",
                self.power.tolerance, self.power.max_iterations, self.power.seed
            ),
        ]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub graph: String,
    pub n: usize,
    pub m: usize,
    pub method: Method,
    pub k: usize,
    pub lambda_before: f64,
    pub lambda_after: f64,
    pub eigendrop: f64,
    pub eigendrop_pct: f64,
    pub select_ms: f64,
    pub eval_ms: f64,
    pub seed: u64,
    /// `ok`, `not-converged`, or `error: ...`.
    pub status: String,
    pub selected: Vec<i64>,
}

pub const CSV_HEADER: &str = "graph,n,m,method,k,lambda_before,lambda_after,eigendrop,\
eigendrop_pct,select_ms,eval_ms,seed,status,selected";

/// Index of the timing columns in [`CSV_HEADER`].
pub const TIMING_COLUMNS: [usize; 2] = [9, 10];

impl BenchRecord {
    fn from_result(
        g: &Graph,
        cfg: &RunConfig,
        method: Method,
        k: usize,
        r: &ImmunizationResult,
    ) -> Self {
        Self {
            graph: cfg.graph_name.clone(),
            n: g.n(),
            m: g.m(),
            method,
            k,
            lambda_before: r.spectra.before,
            lambda_after: r.spectra.after,
            eigendrop: r.spectra.drop,
            eigendrop_pct: r.spectra.drop_pct,
            select_ms: r.timings.select.as_secs_f64() * 1e3,
            eval_ms: r.timings.eval.as_secs_f64() * 1e3,
            seed: cfg.greedy.base_seed,
            status: if r.spectra.converged {
                "ok"
            } else {
                "not-converged"
            }
            .into(),
            selected: r.labels.clone(),
        }
    }

    fn failed(g: &Graph, cfg: &RunConfig, method: Method, k: usize, err: &Error) -> Self {
        Self {
            graph: cfg.graph_name.clone(),
            n: g.n(),
            m: g.m(),
            method,
            k,
            lambda_before: f64::NAN,
            lambda_after: f64::NAN,
            eigendrop: f64::NAN,
            eigendrop_pct: f64::NAN,
            select_ms: 0.0,
            eval_ms: 0.0,
            seed: cfg.greedy.base_seed,
            status: format!("error: {err}").replace(',', ";"),
            selected: Vec::new(),
        }
    }

    pub fn is_ok(&self) -> bool {
        self.status == "ok"
    }

    pub fn csv_row(&self) -> String {
        let selected: Vec<String> = self.selected.iter().map(i64::to_string).collect();
        format!(
            "{},{},{},{},{},{:.12},{:.12},{:.12},{:.9},{:.3},{:.3},{},{},{}",
            self.graph,
            self.n,
            self.m,
            self.method,
            self.k,
            self.lambda_before,
            self.lambda_after,
            self.eigendrop,
            self.eigendrop_pct,
            self.select_ms,
            self.eval_ms,
            self.seed,
            self.status,
            selected.join(" ")
        )
    }
}

/// Runs one method at budget `k`.
pub fn run_method(
    g: &Graph,
    cfg: &RunConfig,
    method: Method,
    k: usize,
) -> Result<ImmunizationResult> {
    let power = &cfg.power;
    match method {
        Method::GreedyWalk6 => crate::immunize::greedy_select(g, k, &cfg.greedy, power),
        Method::Greedy1 => greedy1_baseline(g, k, power),
        Method::Degree => baseline_select(g, k, Baseline::Degree, power),
        Method::Random => baseline_select(
            g,
            k,
            Baseline::Random {
                seed: cfg.greedy.base_seed,
            },
            power,
        ),
        Method::Exhaustive => {
            let started = Instant::now();
            let walks = estimate_walks(
                g,
                cfg.greedy.alpha_for(g),
                cfg.greedy.beta,
                cfg.greedy.base_seed,
            )?;
            let params = ScoreParams::resolve(cfg.greedy.gamma_mode, &walks.values, k)?;
            let (set, _) = exhaustive_best_score(g, &walks.values, k, &params)?;
            let selection = Selection {
                nodes: set.as_slice().to_vec(),
                steps: Vec::new(),
            };
            ImmunizationResult::evaluate(g, selection, started.elapsed(), power)
        }
    }
}

/// Single (method, k) run returning the result and its record.
pub fn cmd_immunize(
    g: &Graph,
    cfg: &RunConfig,
    method: Method,
    k: usize,
) -> Result<(ImmunizationResult, BenchRecord)> {
    cfg.validate()?;
    let result = run_method(g, cfg, method, k)?;
    let record = BenchRecord::from_result(g, cfg, method, k, &result);
    Ok((result, record))
}

/// Every (method, k) cell, run concurrently; failures become records with an error
/// status. Rows are ordered by method (as listed), then k.
pub fn sweep(g: &Graph, cfg: &RunConfig) -> Result<Vec<BenchRecord>> {
    cfg.validate()?;
    let cells: Vec<(usize, Method, usize)> = cfg
        .methods
        .iter()
        .enumerate()
        .flat_map(|(i, &m)| cfg.ks.iter().map(move |&k| (i, m, k)))
        .collect();
    let mut records: Vec<(usize, BenchRecord)> = cells
        .par_iter()
        .map(|&(order, method, k)| {
            let record = match run_method(g, cfg, method, k) {
                Ok(r) => BenchRecord::from_result(g, cfg, method, k, &r),
                Err(e) => {
                    log::warn!("{method} k={k}: {e}");
                    BenchRecord::failed(g, cfg, method, k, &e)
                }
            };
            (order, record)
        })
        .collect();
    records.sort_by_key(|(order, r)| (*order, r.k));
    Ok(records.into_iter().map(|(_, r)| r).collect())
}

pub fn write_csv<W: Write>(
    mut out: W,
    provenance: &[String],
    records: &[BenchRecord],
) -> std::io::Result<()> {
    for line in provenance {
        writeln!(out, "# {line}")?;
    }
    writeln!(out, "{CSV_HEADER}")?;
    for r in records {
        writeln!(out, "{}", r.csv_row())?;
    }
    Ok(())
}

const SVG_WIDTH: f64 = 640.0;
const SVG_HEIGHT: f64 = 420.0;
const MARGIN: f64 = 56.0;
const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b",
];

/// Line chart of eigendrop percentage against k, one series per method.
pub fn render_svg(title: &str, records: &[BenchRecord]) -> String {
    let mut methods: Vec<Method> = Vec::new();
    for r in records {
        if !methods.contains(&r.method) {
            methods.push(r.method);
        }
    }
    let ok: Vec<&BenchRecord> = records
        .iter()
        .filter(|r| r.eigendrop_pct.is_finite())
        .collect();
    let k_min = ok.iter().map(|r| r.k).min().unwrap_or(1) as f64;
    let k_max = ok.iter().map(|r| r.k).max().unwrap_or(1) as f64;
    let y_max = ok
        .iter()
        .map(|r| r.eigendrop_pct)
        .fold(0.0, f64::max)
        .clamp(1.0, 100.0)
        .ceil();
    let plot_w = SVG_WIDTH - 2.0 * MARGIN;
    let plot_h = SVG_HEIGHT - 2.0 * MARGIN;
    let x_of = |k: f64| {
        if k_max > k_min {
            MARGIN + (k - k_min) / (k_max - k_min) * plot_w
        } else {
            MARGIN + plot_w / 2.0
        }
    };
    let y_of = |pct: f64| SVG_HEIGHT - MARGIN - pct.clamp(0.0, y_max) / y_max * plot_h;

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SVG_WIDTH}\" height=\"{SVG_HEIGHT}\" \
         font-family=\"sans-serif\" font-size=\"12\">\n"
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">{}</text>\n",
        SVG_WIDTH / 2.0,
        escape(title)
    ));
    let (x0, y0, x1, y1) = (MARGIN, SVG_HEIGHT - MARGIN, SVG_WIDTH - MARGIN, MARGIN);
    svg.push_str(&format!(
        "<line x1=\"{x0}\" y1=\"{y0}\" x2=\"{x1}\" y2=\"{y0}\" stroke=\"black\"/>\n\
         <line x1=\"{x0}\" y1=\"{y0}\" x2=\"{x0}\" y2=\"{y1}\" stroke=\"black\"/>\n"
    ));
    let mut ks: Vec<usize> = ok.iter().map(|r| r.k).collect();
    ks.sort_unstable();
    ks.dedup();
    for k in &ks {
        let x = x_of(*k as f64);
        svg.push_str(&format!(
            "<text x=\"{x:.1}\" y=\"{:.1}\" text-anchor=\"middle\">{k}</text>\n",
            y0 + 16.0
        ));
    }
    for i in 0..=4 {
        let pct = y_max * i as f64 / 4.0;
        let y = y_of(pct);
        svg.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"end\">{pct:.0}</text>\n\
             <line x1=\"{x0}\" y1=\"{y:.1}\" x2=\"{x1}\" y2=\"{y:.1}\" stroke=\"#ddd\"/>\n",
            x0 - 6.0,
            y + 4.0
        ));
    }
    svg.push_str(&format!(
        "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"middle\">nodes immunized (k)</text>\n",
        SVG_WIDTH / 2.0,
        SVG_HEIGHT - 16.0
    ));
    svg.push_str(&format!(
        "<text x=\"16\" y=\"{:.1}\" text-anchor=\"middle\" transform=\"rotate(-90 16 {:.1})\">eigendrop (%)</text>\n",
        SVG_HEIGHT / 2.0,
        SVG_HEIGHT / 2.0
    ));
    for (i, method) in methods.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let mut pts: Vec<(f64, f64)> = ok
            .iter()
            .filter(|r| r.method == *method)
            .map(|r| (x_of(r.k as f64), y_of(r.eigendrop_pct)))
            .collect();
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
        let path: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.1},{y:.1}")).collect();
        svg.push_str(&format!(
            "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"2\" points=\"{}\"/>\n",
            path.join(" ")
        ));
        for (x, y) in &pts {
            svg.push_str(&format!(
                "<circle cx=\"{x:.1}\" cy=\"{y:.1}\" r=\"3\" fill=\"{color}\"/>\n"
            ));
        }
        let ly = MARGIN + 8.0 + 16.0 * i as f64;
        svg.push_str(&format!(
            "<line x1=\"{:.1}\" y1=\"{ly:.1}\" x2=\"{:.1}\" y2=\"{ly:.1}\" stroke=\"{color}\" stroke-width=\"2\"/>\n\
             <text x=\"{:.1}\" y=\"{:.1}\">{method}</text>\n",
            x1 - 130.0,
            x1 - 110.0,
            x1 - 104.0,
            ly + 4.0
        ));
    }
    svg.push_str("</svg>\n");
    svg
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
