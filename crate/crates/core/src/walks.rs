//! Exact closed-walk counts.
//!
//! The number of closed walks of length six that visit a vertex `v` at least once
//! is
//!
//! ```text
//! cw6(v) = 6 A^6(v,v) - 6 A^4(v,v) A^2(v,v) - 3 A^3(v,v)^2 + 2 A^2(v,v)^3
//! ```
//!
//! The diagonals of `A^4` and `A^6` are sums of squares over rows of `A^2` and
//! `A^3`, so the routines here stream one row at a time and never hold an `n x n`
//! matrix unless [`DensePowerCache`] is asked for explicitly.

use std::io::Write;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId, NodeSet};
use crate::spectral::trace_power;

/// Default node cap for the exact per-vertex counts.
pub const EXACT_NODE_CAP: usize = 20_000;

/// Node cap for [`DensePowerCache`]; two `n x n` u64 matrices at this size take 256 MiB.
pub const DENSE_CACHE_NODE_CAP: usize = 4_096;

/// Brute-force enumeration is allowed when either bound holds.
pub const BRUTE_FORCE_MAX_NODES: usize = 14;
pub const BRUTE_FORCE_MAX_DEGREE: usize = 6;

/// Diagonal entries of `A^2, A^3, A^4, A^6` at one vertex.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub(crate) struct VertexDiagonals {
    pub a2: u128,
    pub a3: u128,
    pub a4: u128,
    pub a6: u128,
}

impl VertexDiagonals {
    fn cw6(&self) -> Result<u64> {
        cw6_from_diagonals(self.a2, self.a3, self.a4, self.a6)
    }
}

fn cw6_from_diagonals(a2: u128, a3: u128, a4: u128, a6: u128) -> Result<u64> {
    let of = || Error::Overflow("closed 6-walk count");
    let i = |x: u128| i128::try_from(x).map_err(|_| of());
    let (a2, a3, a4, a6) = (i(a2)?, i(a3)?, i(a4)?, i(a6)?);
    let t6 = a6.checked_mul(6).ok_or_else(of)?;
    let t4 = a4
        .checked_mul(a2)
        .and_then(|x| x.checked_mul(6))
        .ok_or_else(of)?;
    let t3 = a3
        .checked_mul(a3)
        .and_then(|x| x.checked_mul(3))
        .ok_or_else(of)?;
    let t2 = a2
        .checked_mul(a2)
        .and_then(|x| x.checked_mul(a2))
        .and_then(|x| x.checked_mul(2))
        .ok_or_else(of)?;
    let total = t6
        .checked_sub(t4)
        .and_then(|x| x.checked_sub(t3))
        .and_then(|x| x.checked_add(t2))
        .ok_or_else(of)?;
    u64::try_from(total).map_err(|_| of())
}

/// Sparse scatter buffers for one row of `A^2` and `A^3`.
pub(crate) struct RowScratch {
    r2: Vec<u64>,
    r3: Vec<u64>,
    touched2: Vec<u32>,
    touched3: Vec<u32>,
}

impl RowScratch {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            r2: vec![0; n],
            r3: vec![0; n],
            touched2: Vec::new(),
            touched3: Vec::new(),
        }
    }

    /// Computes the diagonals at `v`. With `with_cubes == false` only `a2` and `a4`
    /// are filled.
    pub(crate) fn diagonals(
        &mut self,
        g: &Graph,
        v: NodeId,
        with_cubes: bool,
    ) -> Result<VertexDiagonals> {
        let of = || Error::Overflow("row of adjacency power");
        let mut out = VertexDiagonals {
            a2: g.degree(v) as u128,
            ..Default::default()
        };
        for &u in g.neighbors(v) {
            for &w in g.neighbors(NodeId(u)) {
                if self.r2[w as usize] == 0 {
                    self.touched2.push(w);
                }
                self.r2[w as usize] += 1;
            }
        }
        for &w in &self.touched2 {
            let x = self.r2[w as usize] as u128;
            out.a4 = out.a4.checked_add(x * x).ok_or_else(of)?;
        }
        if with_cubes {
            for &w in &self.touched2 {
                let weight = self.r2[w as usize];
                for &x in g.neighbors(NodeId(w)) {
                    let slot = &mut self.r3[x as usize];
                    if *slot == 0 {
                        self.touched3.push(x);
                    }
                    *slot = slot.checked_add(weight).ok_or_else(of)?;
                }
            }
            out.a3 = self.r3[v.index()] as u128;
            for &x in &self.touched3 {
                let y = self.r3[x as usize] as u128;
                let sq = y.checked_mul(y).ok_or_else(of)?;
                out.a6 = out.a6.checked_add(sq).ok_or_else(of)?;
            }
        }
        self.reset();
        Ok(out)
    }

    fn reset(&mut self) {
        for &w in &self.touched2 {
            self.r2[w as usize] = 0;
        }
        for &x in &self.touched3 {
            self.r3[x as usize] = 0;
        }
        self.touched2.clear();
        self.touched3.clear();
    }
}

/// Per-vertex diagonals for the whole graph, computed in parallel.
pub(crate) fn all_diagonals(g: &Graph, with_cubes: bool) -> Result<Vec<VertexDiagonals>> {
    let n = g.n();
    (0..n)
        .into_par_iter()
        .map_init(
            || RowScratch::new(n),
            |scratch, v| scratch.diagonals(g, NodeId::from(v), with_cubes),
        )
        .collect()
}

/// Exact `cw6(v)` for every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkCountTable {
    counts: Vec<u64>,
}

impl WalkCountTable {
    pub fn get(&self, v: NodeId) -> u64 {
        self.counts[v.index()]
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.counts
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// `node_label,cw6` with a header row.
    pub fn write_csv<W: Write>(&self, g: &Graph, mut out: W) -> std::io::Result<()> {
        writeln!(out, "node_label,cw6")?;
        for v in g.nodes() {
            writeln!(out, "{},{}", g.label(v), self.get(v))?;
        }
        Ok(())
    }
}

pub fn exact_cw6_all(g: &Graph) -> Result<WalkCountTable> {
    exact_cw6_all_capped(g, EXACT_NODE_CAP)
}

pub fn exact_cw6_all_capped(g: &Graph, max_nodes: usize) -> Result<WalkCountTable> {
    if g.n() > max_nodes {
        return Err(Error::SizeLimit {
            what: "exact closed-walk counts",
            size: g.n() as u128,
            limit: max_nodes as u128,
            hint: "use the sketch estimator instead",
        });
    }
    let counts = all_diagonals(g, true)?
        .iter()
        .map(VertexDiagonals::cw6)
        .collect::<Result<Vec<_>>>()?;
    Ok(WalkCountTable { counts })
}

/// Materialised `A^2`, `A^3` and the diagonals of `A^4`, `A^6`.
#[derive(Debug, Clone)]
pub struct DensePowerCache {
    n: usize,
    a2: Vec<u64>,
    a3: Vec<u64>,
    diag_a4: Vec<u128>,
    diag_a6: Vec<u128>,
}

impl DensePowerCache {
    pub fn new(g: &Graph) -> Result<Self> {
        let n = g.n();
        if n > DENSE_CACHE_NODE_CAP {
            return Err(Error::SizeLimit {
                what: "dense power cache",
                size: n as u128,
                limit: DENSE_CACHE_NODE_CAP as u128,
                hint: "use the sketch estimator instead",
            });
        }
        let of = || Error::Overflow("dense adjacency power");
        // A2 = A * A and A3 = A2 * A, row by row through the sparse adjacency.
        let mut a2 = vec![0u64; n * n];
        for v in 0..n {
            let row = &mut a2[v * n..(v + 1) * n];
            for &u in g.neighbors(NodeId::from(v)) {
                for &w in g.neighbors(NodeId(u)) {
                    row[w as usize] += 1;
                }
            }
        }
        let mut a3 = vec![0u64; n * n];
        for v in 0..n {
            for j in 0..n {
                let mut acc = 0u64;
                for &k in g.neighbors(NodeId::from(j)) {
                    acc = acc.checked_add(a2[v * n + k as usize]).ok_or_else(of)?;
                }
                a3[v * n + j] = acc;
            }
        }
        let sum_sq = |m: &[u64], v: usize| -> Result<u128> {
            m[v * n..(v + 1) * n].iter().try_fold(0u128, |acc, &x| {
                let x = x as u128;
                x.checked_mul(x)
                    .and_then(|sq| acc.checked_add(sq))
                    .ok_or_else(of)
            })
        };
        let diag_a4 = (0..n).map(|v| sum_sq(&a2, v)).collect::<Result<_>>()?;
        let diag_a6 = (0..n).map(|v| sum_sq(&a3, v)).collect::<Result<_>>()?;
        Ok(Self {
            n,
            a2,
            a3,
            diag_a4,
            diag_a6,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a2(&self, i: usize, j: usize) -> u64 {
        self.a2[i * self.n + j]
    }

    pub fn a3(&self, i: usize, j: usize) -> u64 {
        self.a3[i * self.n + j]
    }

    pub fn diag_a4(&self, v: usize) -> u128 {
        self.diag_a4[v]
    }

    pub fn diag_a6(&self, v: usize) -> u128 {
        self.diag_a6[v]
    }

    pub fn cw6(&self, v: NodeId) -> Result<u64> {
        let v = v.index();
        cw6_from_diagonals(
            self.a2(v, v) as u128,
            self.a3(v, v) as u128,
            self.diag_a4[v],
            self.diag_a6[v],
        )
    }

    /// `cw6(v)` assembled from common-neighbour counts by how often `v` occurs in
    /// the walk:
    ///
    /// * once: `6 * sum_{b,d != v} d(v,b) d(v,d) [d(b,d) - A(v,b) A(v,d)]`
    /// * twice, at distance two: `6 * sum_{c != v} d(v,c)^2 d(v)`
    /// * twice, at distance three: `3 * sum_{b,d in N(v)} d(v,b) d(v,d)`
    /// * three times: `2 d(v)^3`
    ///
    /// where `d(x,y) = |N(x) ∩ N(y)|` is `A^2(x,y)` and `d(v) = A^2(v,v)`.
    pub fn case_form(&self, g: &Graph, v: NodeId) -> Result<u64> {
        let of = || Error::Overflow("closed 6-walk count (case form)");
        let n = self.n;
        let vi = v.index();
        let mut adj = vec![0i128; n];
        for &u in g.neighbors(v) {
            adj[u as usize] = 1;
        }
        let row: Vec<i128> = (0..n).map(|j| self.a2(vi, j) as i128).collect();
        let deg = row[vi];

        let mut once: i128 = 0;
        for b in (0..n).filter(|&b| b != vi && row[b] != 0) {
            let mut inner: i128 = 0;
            for d in (0..n).filter(|&d| d != vi && row[d] != 0) {
                let common = self.a2(b, d) as i128 - adj[b] * adj[d];
                inner = inner.checked_add(row[d] * common).ok_or_else(of)?;
            }
            once = inner
                .checked_mul(row[b])
                .and_then(|x| once.checked_add(x))
                .ok_or_else(of)?;
        }

        let twice_near: i128 = (0..n)
            .filter(|&c| c != vi)
            .map(|c| row[c] * row[c])
            .sum::<i128>()
            * deg;

        let nbr_sum: i128 = g.neighbors(v).iter().map(|&b| row[b as usize]).sum();
        let twice_far = nbr_sum * nbr_sum;

        let thrice = deg * deg * deg;

        let total = [
            once.checked_mul(6),
            twice_near.checked_mul(6),
            twice_far.checked_mul(3),
            thrice.checked_mul(2),
        ]
        .into_iter()
        .try_fold(0i128, |acc, t| t.and_then(|t| acc.checked_add(t)))
        .ok_or_else(of)?;
        u64::try_from(total).map_err(|_| of())
    }
}

/// `cw6(v)` through the case-by-case counting form. Builds a [`DensePowerCache`].
pub fn exact_cw6_case_form(g: &Graph, v: NodeId) -> Result<u64> {
    g.check_node(v)?;
    DensePowerCache::new(g)?.case_form(g, v)
}

/// Counts closed walks of length six through `v` by enumerating every walk from
/// every start vertex. Shares no code with the matrix routines.
pub fn brute_force_cw6(g: &Graph, v: NodeId) -> Result<u64> {
    g.check_node(v)?;
    Ok(enumerate_closed_six_walks(g)?[v.index()])
}

/// [`brute_force_cw6`] for every vertex from a single enumeration.
pub fn brute_force_cw6_all(g: &Graph) -> Result<Vec<u64>> {
    enumerate_closed_six_walks(g)
}

fn enumerate_closed_six_walks(g: &Graph) -> Result<Vec<u64>> {
    if g.n() > BRUTE_FORCE_MAX_NODES && g.max_degree() > BRUTE_FORCE_MAX_DEGREE {
        return Err(Error::SizeLimit {
            what: "closed-walk enumeration",
            size: g.n() as u128,
            limit: BRUTE_FORCE_MAX_NODES as u128,
            hint: "enumeration needs n <= 14 or max degree <= 6",
        });
    }

    fn extend(g: &Graph, walk: &mut [u32; 6], depth: usize, counts: &mut [u64]) {
        let last = walk[depth - 1];
        if depth == 6 {
            if g.has_edge(NodeId(last), NodeId(walk[0])) {
                for (i, &x) in walk.iter().enumerate() {
                    // Count each distinct vertex of the walk once.
                    if !walk[..i].contains(&x) {
                        counts[x as usize] += 1;
                    }
                }
            }
            return;
        }
        for &u in g.neighbors(NodeId(last)) {
            walk[depth] = u;
            extend(g, walk, depth + 1, counts);
        }
    }

    let mut counts = vec![0u64; g.n()];
    let mut walk = [0u32; 6];
    for start in g.nodes() {
        walk[0] = start.0;
        extend(g, &mut walk, 1, &mut counts);
    }
    Ok(counts)
}

/// `g_p(S) = trace((A^[S])^p)`: closed `p`-walks that survive removing `S`.
pub fn objective_g(g: &Graph, s: &NodeSet, p: u32) -> Result<u128> {
    trace_power(&g.remove_nodes(s).graph, p)
}

/// `f_p(S) = trace(A^p) - trace((A^[S])^p)`: closed `p`-walks touching `S`.
pub fn objective_f(g: &Graph, s: &NodeSet, p: u32) -> Result<u128> {
    let total = trace_power(g, p)?;
    let remaining = objective_g(g, s, p)?;
    Ok(total - remaining)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gnp;

    fn triangle() -> Graph {
        Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    fn path3() -> Graph {
        Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap()
    }

    fn star() -> Graph {
        Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap()
    }

    #[test]
    fn triangle_counts() {
        let g = triangle();
        let table = exact_cw6_all(&g).unwrap();
        assert_eq!(table.as_slice(), &[64, 64, 64]);
        for v in g.nodes() {
            assert_eq!(exact_cw6_case_form(&g, v).unwrap(), 64);
            assert_eq!(brute_force_cw6(&g, v).unwrap(), 64);
        }
    }

    #[test]
    fn path_counts() {
        let g = path3();
        assert_eq!(exact_cw6_all(&g).unwrap().as_slice(), &[14, 16, 14]);
        assert_eq!(brute_force_cw6(&g, NodeId(1)).unwrap(), 16);
    }

    #[test]
    fn star_center_matches_enumeration() {
        let g = star();
        assert_eq!(brute_force_cw6(&g, NodeId(0)).unwrap(), 54);
        assert_eq!(exact_cw6_case_form(&g, NodeId(0)).unwrap(), 54);
        assert_eq!(exact_cw6_all(&g).unwrap().get(NodeId(1)), 38);
    }

    #[test]
    fn single_edge() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(brute_force_cw6(&g, NodeId(0)).unwrap(), 2);
        assert_eq!(brute_force_cw6(&g, NodeId(1)).unwrap(), 2);
    }

    #[test]
    fn isolated_vertices_have_no_walks() {
        let g = Graph::from_edges(4, &[(0, 1)]).unwrap();
        let table = exact_cw6_all(&g).unwrap();
        assert_eq!(table.get(NodeId(2)), 0);
        assert_eq!(exact_cw6_case_form(&g, NodeId(3)).unwrap(), 0);
        assert_eq!(brute_force_cw6(&g, NodeId(3)).unwrap(), 0);
        let empty = Graph::from_edges(5, &[]).unwrap();
        assert!(exact_cw6_all(&empty)
            .unwrap()
            .as_slice()
            .iter()
            .all(|&c| c == 0));
    }

    #[test]
    fn size_guards() {
        let g = gnp(40, 0.5, 1);
        assert!(matches!(
            brute_force_cw6(&g, NodeId(0)),
            Err(Error::SizeLimit { .. })
        ));
        assert!(matches!(
            exact_cw6_all_capped(&g, 10),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn dense_diagonals_match_sixfold_product() {
        for seed in 0..20 {
            let g = gnp(9, 0.4, seed);
            let n = g.n();
            let cache = DensePowerCache::new(&g).unwrap();
            let mut a = vec![vec![0u64; n]; n];
            for (u, v) in g.edges() {
                a[u.index()][v.index()] = 1;
                a[v.index()][u.index()] = 1;
            }
            let mul = |x: &Vec<Vec<u64>>, y: &Vec<Vec<u64>>| {
                let mut z = vec![vec![0u64; n]; n];
                for i in 0..n {
                    for k in 0..n {
                        for j in 0..n {
                            z[i][j] += x[i][k] * y[k][j];
                        }
                    }
                }
                z
            };
            let mut p = a.clone();
            let mut powers = vec![a.clone()];
            for _ in 1..6 {
                p = mul(&p, &a);
                powers.push(p.clone());
            }
            for v in 0..n {
                assert_eq!(cache.a2(v, v), powers[1][v][v]);
                assert_eq!(cache.a3(v, v), powers[2][v][v]);
                assert_eq!(cache.diag_a4(v), powers[3][v][v] as u128);
                assert_eq!(cache.diag_a6(v), powers[5][v][v] as u128);
                for j in 0..n {
                    assert_eq!(cache.a2(v, j), cache.a2(j, v));
                    assert_eq!(cache.a3(v, j), cache.a3(j, v));
                }
            }
        }
    }

    #[test]
    fn objectives_on_small_graphs() {
        let k3 = triangle();
        let one = NodeSet::from_indices(3, [0]).unwrap();
        assert_eq!(objective_f(&k3, &one, 6).unwrap(), 64);
        assert_eq!(objective_g(&k3, &one, 6).unwrap(), 2);
        assert_eq!(objective_f(&k3, &NodeSet::empty(), 4).unwrap(), 0);
        assert_eq!(
            objective_g(&k3, &NodeSet::empty(), 6).unwrap(),
            trace_power(&k3, 6).unwrap()
        );
        assert_eq!(
            objective_f(&k3, &NodeSet::all(&k3), 6).unwrap(),
            trace_power(&k3, 6).unwrap()
        );
        let p3 = path3();
        let mid = NodeSet::from_indices(3, [1]).unwrap();
        assert_eq!(objective_g(&p3, &mid, 6).unwrap(), 0);
        assert!(matches!(
            objective_f(&p3, &mid, 5),
            Err(Error::UnsupportedPower(5))
        ));
    }

    #[test]
    fn csv_dump() {
        let g = path3();
        let mut buf = Vec::new();
        exact_cw6_all(&g).unwrap().write_csv(&g, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "node_label,cw6\n0,14\n1,16\n2,14\n"
        );
    }
}
