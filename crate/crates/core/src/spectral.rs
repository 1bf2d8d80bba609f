//! Largest adjacency eigenvalue, eigendrop, and traces of adjacency powers.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId, NodeSet};
use crate::walks::all_diagonals;

/// Restarts with a fresh start vector after a run fails to converge.
const MAX_RESTARTS: u64 = 3;

/// Graphs at least this large use the parallel matrix-vector product.
const PARALLEL_MATVEC_MIN_NODES: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerIterConfig {
    /// Relative change in the Rayleigh quotient that counts as converged.
    pub tolerance: f64,
    pub max_iterations: usize,
    pub seed: u64,
}

impl Default for PowerIterConfig {
    fn default() -> Self {
        Self {
            tolerance: 1e-9,
            max_iterations: 10_000,
            seed: 0,
        }
    }
}

impl PowerIterConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "power iteration tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidParameter(
                "power iteration needs at least one iteration".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralReport {
    pub lambda_max: f64,
    pub iterations_used: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigendrop {
    pub before: f64,
    pub after: f64,
    pub drop: f64,
    /// `100 * drop / before`, or 0 when `before` is 0.
    pub drop_pct: f64,
    pub converged: bool,
}

fn matvec(g: &Graph, x: &[f64], y: &mut [f64]) {
    let row = |v: usize| -> f64 {
        g.neighbors(NodeId::from(v))
            .iter()
            .map(|&u| x[u as usize])
            .sum()
    };
    if g.n() >= PARALLEL_MATVEC_MIN_NODES {
        y.par_iter_mut()
            .enumerate()
            .for_each(|(v, out)| *out = row(v));
    } else {
        for (v, out) in y.iter_mut().enumerate() {
            *out = row(v);
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// One power-iteration run on `A + I`. The shift keeps the dominant eigenvalue
/// isolated on bipartite graphs, where `-lambda_max` is also an eigenvalue of `A`.
/// Returns `(rayleigh quotient of A, iterations, converged)`.
fn power_run(g: &Graph, cfg: &PowerIterConfig, seed: u64) -> (f64, usize, bool) {
    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Strictly positive start vector: has a component along the Perron vector of
    // every connected component.
    let mut x: Vec<f64> = (0..n).map(|_| rng.random_range(0.5..1.5)).collect();
    let norm = dot(&x, &x).sqrt();
    x.iter_mut().for_each(|xi| *xi /= norm);
    let mut ax = vec![0.0; n];
    let mut best = 0.0f64;
    let mut prev = f64::NAN;
    for it in 1..=cfg.max_iterations {
        matvec(g, &x, &mut ax);
        let rq = dot(&x, &ax);
        best = best.max(rq);
        if (rq - prev).abs() <= cfg.tolerance * rq.abs().max(f64::MIN_POSITIVE) {
            return (rq, it, true);
        }
        prev = rq;
        for (xi, axi) in x.iter_mut().zip(&ax) {
            *xi += axi;
        }
        let norm = dot(&x, &x).sqrt();
        x.iter_mut().for_each(|xi| *xi /= norm);
    }
    (best, cfg.max_iterations, false)
}

/// Spectral radius of the adjacency matrix by power iteration.
///
/// An edgeless graph returns exactly 0. If a run stalls, up to three restarts with
/// seeds `seed + 1 ..= seed + 3` follow; the Rayleigh quotient is a lower bound on
/// `lambda_max`, so the largest estimate seen is reported when none converge.
pub fn lambda_max(g: &Graph, cfg: &PowerIterConfig) -> Result<SpectralReport> {
    cfg.validate()?;
    if g.m() == 0 {
        return Ok(SpectralReport {
            lambda_max: 0.0,
            iterations_used: 0,
            converged: true,
        });
    }
    let mut best = 0.0f64;
    let mut total_iters = 0;
    for restart in 0..=MAX_RESTARTS {
        let (value, iters, converged) = power_run(g, cfg, cfg.seed.wrapping_add(restart));
        total_iters += iters;
        if converged {
            return Ok(SpectralReport {
                lambda_max: value,
                iterations_used: total_iters,
                converged: true,
            });
        }
        best = best.max(value);
        log::debug!("power iteration restart {} did not converge", restart + 1);
    }
    Ok(SpectralReport {
        lambda_max: best,
        iterations_used: total_iters,
        converged: false,
    })
}

/// `lambda_max(G) - lambda_max(G minus S)`.
pub fn eigendrop(g: &Graph, s: &NodeSet, cfg: &PowerIterConfig) -> Result<Eigendrop> {
    let before = lambda_max(g, cfg)?;
    eigendrop_from(g, before, s, cfg)
}

/// Like [`eigendrop`] but reuses a previously computed `lambda_max(G)`.
pub fn eigendrop_from(
    g: &Graph,
    before: SpectralReport,
    s: &NodeSet,
    cfg: &PowerIterConfig,
) -> Result<Eigendrop> {
    let after = if s.is_empty() {
        before
    } else {
        lambda_max(&g.remove_nodes(s).graph, cfg)?
    };
    let drop = before.lambda_max - after.lambda_max;
    let drop_pct = if before.lambda_max > 0.0 {
        100.0 * drop / before.lambda_max
    } else {
        0.0
    };
    Ok(Eigendrop {
        before: before.lambda_max,
        after: after.lambda_max,
        drop,
        drop_pct,
        converged: before.converged && after.converged,
    })
}

/// `trace(A^p)` for `p` in {2, 4, 6}, in exact integer arithmetic. Equals the
/// number of closed walks of length `p`, counted with start point and direction.
pub fn trace_power(g: &Graph, p: u32) -> Result<u128> {
    let diags = match p {
        2 => return Ok(2 * g.m() as u128),
        4 => all_diagonals(g, false)?,
        6 => all_diagonals(g, true)?,
        other => return Err(Error::UnsupportedPower(other)),
    };
    diags
        .iter()
        .map(|d| if p == 4 { d.a4 } else { d.a6 })
        .try_fold(0u128, |acc, x| acc.checked_add(x))
        .ok_or(Error::Overflow("trace of adjacency power"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> PowerIterConfig {
        PowerIterConfig::default()
    }

    fn triangle() -> Graph {
        Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    fn path3() -> Graph {
        Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn small_spectra() {
        let r = lambda_max(&triangle(), &cfg()).unwrap();
        assert!(r.converged);
        assert!((r.lambda_max - 2.0).abs() < 1e-7);
        let r = lambda_max(&path3(), &cfg()).unwrap();
        assert!((r.lambda_max - std::f64::consts::SQRT_2).abs() < 1e-7);
    }

    #[test]
    fn bipartite_does_not_oscillate() {
        // Even cycle: spectrum symmetric about 0, lambda_max = 2.
        let c6 = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]).unwrap();
        let r = lambda_max(&c6, &cfg()).unwrap();
        assert!(r.converged);
        assert!((r.lambda_max - 2.0).abs() < 1e-7);
    }

    #[test]
    fn edgeless_is_exactly_zero() {
        let r = lambda_max(&Graph::from_edges(4, &[]).unwrap(), &cfg()).unwrap();
        assert_eq!(r.lambda_max, 0.0);
        assert!(r.converged);
        let r = lambda_max(&Graph::from_edges(0, &[]).unwrap(), &cfg()).unwrap();
        assert_eq!(r.lambda_max, 0.0);
    }

    #[test]
    fn eigendrop_cases() {
        let d = eigendrop(&path3(), &NodeSet::from_indices(3, [1]).unwrap(), &cfg()).unwrap();
        assert_eq!(d.after, 0.0);
        assert!((d.drop_pct - 100.0).abs() < 1e-9);

        let d = eigendrop(&triangle(), &NodeSet::empty(), &cfg()).unwrap();
        assert_eq!(d.drop, 0.0);

        let d = eigendrop(&triangle(), &NodeSet::from_indices(3, [2]).unwrap(), &cfg()).unwrap();
        assert!((d.before - 2.0).abs() < 1e-7);
        assert!((d.after - 1.0).abs() < 1e-7);
        assert!((d.drop - 1.0).abs() < 1e-7);

        let edgeless = Graph::from_edges(3, &[]).unwrap();
        let d = eigendrop(&edgeless, &NodeSet::from_indices(3, [0]).unwrap(), &cfg()).unwrap();
        assert_eq!(d.drop_pct, 0.0);
    }

    #[test]
    fn traces() {
        assert_eq!(trace_power(&triangle(), 6).unwrap(), 66);
        assert_eq!(trace_power(&path3(), 6).unwrap(), 16);
        assert_eq!(trace_power(&triangle(), 2).unwrap(), 6);
        assert_eq!(trace_power(&triangle(), 4).unwrap(), 18);
        let edgeless = Graph::from_edges(5, &[]).unwrap();
        for p in [2, 4, 6] {
            assert_eq!(trace_power(&edgeless, p).unwrap(), 0);
        }
        assert!(matches!(
            trace_power(&triangle(), 3),
            Err(Error::UnsupportedPower(3))
        ));
    }

    #[test]
    fn invalid_config() {
        let bad = PowerIterConfig {
            tolerance: 0.0,
            ..Default::default()
        };
        assert!(lambda_max(&triangle(), &bad).is_err());
    }
}
