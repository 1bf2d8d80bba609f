//! Summary-graph estimator for per-vertex closed 6-walk counts.
//!
//! Vertices are hashed into `alpha` buckets (supernodes). The summary matrix `C`
//! counts edges between buckets, and the walk counts of `C` stand in for those of
//! `A`. A vertex receives the share `d(v)^p / D_p(i)` of its bucket's closed
//! `p`-walk mass, where `D_p(i)` sums `d(u)^p` over the bucket. Several
//! independent hashes are combined by taking the per-vertex minimum.

use std::io::Write;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

/// Number of hash functions when none is given.
pub const DEFAULT_BETA: usize = 5;

/// `max(16, ceil(sqrt(n)))`.
pub fn default_alpha(n: usize) -> usize {
    let mut root = (n as f64).sqrt().ceil() as usize;
    while root * root < n {
        root += 1;
    }
    root.max(16)
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Bucket of node `index` under hash `seed`, uniform on `[0, alpha)`.
pub fn bucket_of(seed: u64, index: usize, alpha: usize) -> u32 {
    let h = splitmix64(splitmix64(seed) ^ index as u64);
    ((h as u128 * alpha as u128) >> 64) as u32
}

/// Assignment of every node to one of `alpha` buckets. Buckets may be empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HashPartition {
    alpha: usize,
    seed: Option<u64>,
    assignment: Vec<u32>,
}

impl HashPartition {
    /// Seeded uniform assignment; a pure function of `(seed, node index, alpha)`.
    pub fn new(g: &Graph, alpha: usize, seed: u64) -> Result<Self> {
        check_alpha(alpha)?;
        let assignment = (0..g.n()).map(|v| bucket_of(seed, v, alpha)).collect();
        Ok(Self {
            alpha,
            seed: Some(seed),
            assignment,
        })
    }

    /// One bucket per node, bucket `v` holding node `v`.
    pub fn identity(n: usize) -> Self {
        Self {
            alpha: n,
            seed: None,
            assignment: (0..n as u32).collect(),
        }
    }

    pub fn from_assignment(alpha: usize, assignment: Vec<u32>) -> Result<Self> {
        check_alpha(alpha)?;
        if let Some(&b) = assignment.iter().find(|&&b| b as usize >= alpha) {
            return Err(Error::InvalidParameter(format!(
                "bucket {b} out of range for alpha = {alpha}"
            )));
        }
        Ok(Self {
            alpha,
            seed: None,
            assignment,
        })
    }

    pub fn alpha(&self) -> usize {
        self.alpha
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    #[inline]
    pub fn bucket(&self, v: NodeId) -> usize {
        self.assignment[v.index()] as usize
    }

    pub fn assignment(&self) -> &[u32] {
        &self.assignment
    }
}

fn check_alpha(alpha: usize) -> Result<()> {
    if alpha == 0 {
        return Err(Error::InvalidParameter("alpha must be at least 1".into()));
    }
    Ok(())
}

pub fn build_partition(g: &Graph, alpha: usize, seed: u64) -> Result<HashPartition> {
    HashPartition::new(g, alpha, seed)
}

/// Square and cube of the summary matrix with the diagonals of its 4th and 6th
/// powers. All `alpha x alpha`, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SummaryPowers {
    pub c2: Vec<u128>,
    pub c3: Vec<u128>,
    pub diag_c4: Vec<u128>,
    pub diag_c6: Vec<u128>,
}

fn dense_mul(alpha: usize, lhs: &[u128], rhs: &[u128]) -> Result<Vec<u128>> {
    let mut out = vec![0u128; alpha * alpha];
    for i in 0..alpha {
        let row = &mut out[i * alpha..(i + 1) * alpha];
        for k in 0..alpha {
            let a = lhs[i * alpha + k];
            if a == 0 {
                continue;
            }
            for (o, &b) in row.iter_mut().zip(&rhs[k * alpha..(k + 1) * alpha]) {
                *o = a
                    .checked_mul(b)
                    .and_then(|x| o.checked_add(x))
                    .ok_or(Error::Overflow("summary matrix power"))?;
            }
        }
    }
    Ok(out)
}

fn row_sum_squares(alpha: usize, m: &[u128]) -> Result<Vec<u128>> {
    m.chunks(alpha)
        .map(|row| {
            row.iter().try_fold(0u128, |acc, &x| {
                x.checked_mul(x)
                    .and_then(|sq| acc.checked_add(sq))
                    .ok_or(Error::Overflow("summary matrix power diagonal"))
            })
        })
        .collect()
}

/// `C^2`, `C^3`, `diag(C^4)`, `diag(C^6)` for a symmetric `alpha x alpha` matrix.
/// Costs `O(alpha^3)`.
pub fn summary_powers(alpha: usize, c: &[u64]) -> Result<SummaryPowers> {
    assert_eq!(c.len(), alpha * alpha);
    let c: Vec<u128> = c.iter().map(|&x| x as u128).collect();
    let c2 = dense_mul(alpha, &c, &c)?;
    let c3 = dense_mul(alpha, &c2, &c)?;
    let diag_c4 = row_sum_squares(alpha, &c2)?;
    let diag_c6 = row_sum_squares(alpha, &c3)?;
    Ok(SummaryPowers {
        c2,
        c3,
        diag_c4,
        diag_c6,
    })
}

/// Summary graph of one hash partition.
#[derive(Debug, Clone)]
pub struct SummarySketch {
    partition: HashPartition,
    c: Vec<u64>,
    powers: SummaryPowers,
    d3: Vec<u128>,
    d4: Vec<u128>,
    d6: Vec<u128>,
}

impl SummarySketch {
    pub fn alpha(&self) -> usize {
        self.partition.alpha
    }

    pub fn partition(&self) -> &HashPartition {
        &self.partition
    }

    /// Edge count between buckets `i` and `j`.
    pub fn c(&self, i: usize, j: usize) -> u64 {
        self.c[i * self.alpha() + j]
    }

    pub fn c3(&self, i: usize, j: usize) -> u128 {
        self.powers.c3[i * self.alpha() + j]
    }

    pub fn c2(&self, i: usize, j: usize) -> u128 {
        self.powers.c2[i * self.alpha() + j]
    }

    pub fn diag_c4(&self, i: usize) -> u128 {
        self.powers.diag_c4[i]
    }

    pub fn diag_c6(&self, i: usize) -> u128 {
        self.powers.diag_c6[i]
    }

    /// `D_p(i)` for `p` in {3, 4, 6}.
    pub fn degree_power_sum(&self, p: u32, i: usize) -> u128 {
        match p {
            3 => self.d3[i],
            4 => self.d4[i],
            6 => self.d6[i],
            _ => panic!("degree power sums are kept for p = 3, 4, 6 only"),
        }
    }

    /// Every vertex's estimate, before clamping.
    pub fn estimate_all(&self, g: &Graph) -> Vec<f64> {
        g.nodes().map(|v| estimate_vertex(self, g, v)).collect()
    }
}

/// Builds `C` with one increment per undirected edge (an intra-bucket edge lands on
/// the diagonal once), then its powers and the bucket degree sums `D_p`, which use
/// global degrees.
pub fn build_summary(g: &Graph, partition: &HashPartition) -> Result<SummarySketch> {
    if partition.assignment.len() != g.n() {
        return Err(Error::InvalidParameter(format!(
            "partition covers {} nodes, graph has {}",
            partition.assignment.len(),
            g.n()
        )));
    }
    let alpha = partition.alpha;
    let mut c = vec![0u64; alpha * alpha];
    for (u, v) in g.edges() {
        let (i, j) = (partition.bucket(u), partition.bucket(v));
        c[i * alpha + j] += 1;
        if i != j {
            c[j * alpha + i] += 1;
        }
    }
    let powers = summary_powers(alpha, &c)?;

    let of = || Error::Overflow("bucket degree power sum");
    let mut d3 = vec![0u128; alpha];
    let mut d4 = vec![0u128; alpha];
    let mut d6 = vec![0u128; alpha];
    for v in g.nodes() {
        let i = partition.bucket(v);
        let d = g.degree(v) as u128;
        let p3 = d * d * d;
        let p4 = p3 * d;
        let p6 = p4.checked_mul(d * d).ok_or_else(of)?;
        d3[i] = d3[i].checked_add(p3).ok_or_else(of)?;
        d4[i] = d4[i].checked_add(p4).ok_or_else(of)?;
        d6[i] = d6[i].checked_add(p6).ok_or_else(of)?;
    }
    Ok(SummarySketch {
        partition: partition.clone(),
        c,
        powers,
        d3,
        d4,
        d6,
    })
}

/// Estimated `cw6(v)`:
///
/// ```text
/// 6 C^6(i,i) d^6/D_6(i) - 6 d C^4(i,i) d^4/D_4(i) - 3 (C^3(i,i) d^3/D_3(i))^2 + 2 d^3
/// ```
///
/// with `i = h(v)` and `d = d_G(v)`. May be negative; see [`estimate_walks`].
pub fn estimate_vertex(sk: &SummarySketch, g: &Graph, v: NodeId) -> f64 {
    let deg = g.degree(v) as u128;
    if deg == 0 {
        return 0.0;
    }
    let i = sk.partition.bucket(v);
    // A bucket holding v with d(v) > 0 has D_p(i) >= d(v)^p > 0.
    let share = |p: u32, total: u128| (deg.pow(p) as f64) / (total as f64);
    let d = deg as f64;
    let six = 6.0 * sk.diag_c6(i) as f64 * share(6, sk.d6[i]);
    let four = 6.0 * d * sk.diag_c4(i) as f64 * share(4, sk.d4[i]);
    let three = sk.c3(i, i) as f64 * share(3, sk.d3[i]);
    six - four - 3.0 * three * three + 2.0 * d * d * d
}

/// Per-vertex walk estimates, minimum over `beta` hash functions.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkEstimates {
    pub values: Vec<f64>,
    pub alpha: usize,
    pub beta: usize,
    pub base_seed: u64,
}

impl WalkEstimates {
    pub fn get(&self, v: NodeId) -> f64 {
        self.values[v.index()]
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }

    /// `node_label,W` with a header row.
    pub fn write_csv<W: Write>(&self, g: &Graph, mut out: W) -> std::io::Result<()> {
        writeln!(out, "node_label,W")?;
        for v in g.nodes() {
            writeln!(out, "{},{}", g.label(v), self.get(v))?;
        }
        Ok(())
    }
}

/// Seeds used by hash `1..=beta`.
pub fn hash_seeds(base_seed: u64, beta: usize) -> impl Iterator<Item = u64> {
    (1..=beta as u64).map(move |i| base_seed.wrapping_add(i))
}

/// Clamped per-vertex estimates for one partition.
pub fn estimate_with_partition(g: &Graph, partition: &HashPartition) -> Result<Vec<f64>> {
    let sk = build_summary(g, partition)?;
    Ok(sk.estimate_all(g).into_iter().map(|w| w.max(0.0)).collect())
}

/// Runs `beta` independent summaries (hash seeds `base_seed + 1 ..= base_seed +
/// beta`) in parallel and keeps each vertex's smallest estimate. Negative estimates
/// are clamped to 0 first.
pub fn estimate_walks(
    g: &Graph,
    alpha: usize,
    beta: usize,
    base_seed: u64,
) -> Result<WalkEstimates> {
    check_alpha(alpha)?;
    if beta == 0 {
        return Err(Error::InvalidParameter("beta must be at least 1".into()));
    }
    let seeds: Vec<u64> = hash_seeds(base_seed, beta).collect();
    let per_hash = seeds
        .par_iter()
        .map(|&seed| estimate_with_partition(g, &HashPartition::new(g, alpha, seed)?))
        .collect::<Result<Vec<_>>>()?;
    let mut values = vec![f64::INFINITY; g.n()];
    for est in &per_hash {
        for (w, &e) in values.iter_mut().zip(est) {
            *w = w.min(e);
        }
    }
    Ok(WalkEstimates {
        values,
        alpha,
        beta,
        base_seed,
    })
}
