//! Finite connected simple graphs: BFS distance matrices, exhaustive
//! Fermat sets, medians, median-graph recognition, and the exact
//! best-constant sweep for the Fermat 3-distance.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::Rational64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::space::{self, tags};

/// Connected undirected simple graph on vertices `0..vertex_count`.
#[derive(Clone, Debug)]
pub struct Graph {
    vertex_count: usize,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Build from an edge list; rejects loops, parallel edges, vertices
    /// out of range, and disconnected graphs.
    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::Empty);
        }
        let mut adj = vec![Vec::new(); vertex_count];
        for &(u, v) in edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::NotSimple(format!(
                    "edge ({u}, {v}) out of range for {vertex_count} vertices"
                )));
            }
            if u == v {
                return Err(Error::NotSimple(format!("loop at vertex {u}")));
            }
            if adj[u].contains(&v) {
                return Err(Error::NotSimple(format!("parallel edge ({u}, {v})")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let g = Graph { vertex_count, adj };
        if g.bfs_from(0).iter().any(|&d| d == u32::MAX) {
            return Err(Error::Disconnected);
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, ns) in self.adj.iter().enumerate() {
            for &v in ns {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    fn bfs_from(&self, src: usize) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.vertex_count];
        dist[src] = 0;
        let mut queue = VecDeque::new();
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if dist[v] == u32::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Path on `n` vertices.
    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges)
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidConfig("cycle needs >= 3 vertices".into()));
        }
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((n - 1, 0));
        Graph::from_edges(n, &edges)
    }

    /// Complete graph on `n` vertices.
    pub fn complete(n: usize) -> Result<Self> {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges)
    }

    /// Complete bipartite graph K_{a,b} (parts `0..a` and `a..a+b`).
    pub fn complete_bipartite(a: usize, b: usize) -> Result<Self> {
        let mut edges = Vec::new();
        for u in 0..a {
            for v in 0..b {
                edges.push((u, a + v));
            }
        }
        Graph::from_edges(a + b, &edges)
    }

    /// Hypercube Q_dim with vertices labelled by their bit patterns.
    pub fn hypercube(dim: u32) -> Result<Self> {
        let n = 1usize << dim;
        let mut edges = Vec::new();
        for u in 0..n {
            for b in 0..dim {
                let v = u ^ (1 << b);
                if u < v {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(n, &edges)
    }

    /// `w x h` grid graph (vertex `(r, c)` is `r * w + c`).
    pub fn grid(w: usize, h: usize) -> Result<Self> {
        let mut edges = Vec::new();
        for r in 0..h {
            for c in 0..w {
                let v = r * w + c;
                if c + 1 < w {
                    edges.push((v, v + 1));
                }
                if r + 1 < h {
                    edges.push((v, v + w));
                }
            }
        }
        Graph::from_edges(w * h, &edges)
    }

    /// Uniform random attachment tree on `n` vertices, deterministic in
    /// `seed`.
    pub fn random_tree(n: usize, seed: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty);
        }
        let mut rng = space::stream(seed, tags::SHUFFLE, n as u64, 1);
        let edges: Vec<_> = (1..n).map(|i| (rng.random_range(0..i), i)).collect();
        Graph::from_edges(n, &edges)
    }
}

/// All-pairs shortest-path lengths.
#[derive(Clone, Debug)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u32>,
}

impl DistanceMatrix {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: usize, v: usize) -> u32 {
        self.d[u * self.n + v]
    }
}

/// Exact shortest-path lengths by BFS from every vertex.
pub fn bfs_all_pairs(g: &Graph) -> Result<DistanceMatrix> {
    let n = g.vertex_count();
    let mut d = Vec::with_capacity(n * n);
    for src in 0..n {
        let row = g.bfs_from(src);
        if row.iter().any(|&x| x == u32::MAX) {
            return Err(Error::Disconnected);
        }
        d.extend(row);
    }
    Ok(DistanceMatrix { n, d })
}

/// Minimum over all vertices `y` of `sum_i d(x_i, y)`, together with the
/// full set of minimizers (the Fermat set). Exhaustive and exact.
pub fn fermat_value_graph(dm: &DistanceMatrix, tuple: &[usize]) -> Result<(u32, Vec<usize>)> {
    for &x in tuple {
        if x >= dm.n {
            return Err(Error::IndexOutOfRange {
                index: x,
                arity: dm.n,
            });
        }
    }
    let mut best = u32::MAX;
    let mut set = Vec::new();
    for y in 0..dm.n {
        let total: u32 = tuple.iter().map(|&x| dm.get(x, y)).sum();
        if total < best {
            best = total;
            set.clear();
            set.push(y);
        } else if total == best {
            set.push(y);
        }
    }
    Ok((best, set))
}

/// Vertices lying on shortest paths between all three pairs of the triple.
fn medians_of(dm: &DistanceMatrix, u: usize, v: usize, w: usize) -> Vec<usize> {
    let (duv, duw, dvw) = (dm.get(u, v), dm.get(u, w), dm.get(v, w));
    (0..dm.n)
        .filter(|&y| {
            dm.get(u, y) + dm.get(y, v) == duv
                && dm.get(u, y) + dm.get(y, w) == duw
                && dm.get(v, y) + dm.get(y, w) == dvw
        })
        .collect()
}

/// The unique median of a vertex triple; an error names the triple when
/// zero or several medians exist.
pub fn median_vertex(dm: &DistanceMatrix, u: usize, v: usize, w: usize) -> Result<usize> {
    for &x in &[u, v, w] {
        if x >= dm.n {
            return Err(Error::IndexOutOfRange {
                index: x,
                arity: dm.n,
            });
        }
    }
    let meds = medians_of(dm, u, v, w);
    if meds.len() == 1 {
        Ok(meds[0])
    } else {
        Err(Error::NotMedian {
            u,
            v,
            w,
            count: meds.len(),
        })
    }
}

/// First triple (in lexicographic order) without a unique median, if any.
/// `None` means the graph is median. Exhaustive over unordered triples of
/// distinct vertices; quartic in the vertex count.
pub fn find_non_median_triple(g: &Graph) -> Result<Option<(usize, usize, usize, usize)>> {
    let dm = bfs_all_pairs(g)?;
    let n = g.vertex_count();
    for u in 0..n {
        for v in (u + 1)..n {
            for w in (v + 1)..n {
                let count = medians_of(&dm, u, v, w).len();
                if count != 1 {
                    return Ok(Some((u, v, w, count)));
                }
            }
        }
    }
    Ok(None)
}

/// Median-graph recognition straight from the definition.
pub fn is_median_graph(g: &Graph) -> Result<bool> {
    Ok(find_non_median_triple(g)?.is_none())
}

/// Table of Fermat 3-distance values for all vertex triples.
pub struct Fermat3Table {
    n: usize,
    v: Vec<u32>,
}

impl Fermat3Table {
    pub fn build(dm: &DistanceMatrix) -> Self {
        let n = dm.n;
        let mut v = vec![0u32; n * n * n];
        for u in 0..n {
            for w in 0..n {
                for x in 0..n {
                    let mut best = u32::MAX;
                    for y in 0..n {
                        let total = dm.get(u, y) + dm.get(w, y) + dm.get(x, y);
                        if total < best {
                            best = total;
                        }
                    }
                    v[(u * n + w) * n + x] = best;
                }
            }
        }
        Fermat3Table { n, v }
    }

    pub fn get(&self, u: usize, v: usize, w: usize) -> u32 {
        self.v[(u * self.n + v) * self.n + w]
    }
}

/// Exhaustive maximum of the simplex ratio of the Fermat 3-distance over
/// all `(u, v, w, z)`, as an exact rational, with a witness quadruple.
pub fn median_best_constant(g: &Graph) -> Result<(Rational64, (usize, usize, usize, usize))> {
    let dm = bfs_all_pairs(g)?;
    let table = Fermat3Table::build(&dm);
    let n = g.vertex_count();
    let mut best = Rational64::from_integer(0);
    let mut arg = (0, 0, 0, 0);
    for u in 0..n {
        for v in 0..n {
            for w in 0..n {
                let num = table.get(u, v, w);
                if num == 0 {
                    continue;
                }
                for z in 0..n {
                    let den = table.get(z, v, w) + table.get(u, z, w) + table.get(u, v, z);
                    // den = 0 with num > 0 is impossible: it would force
                    // u = v = w = z and hence num = 0
                    let ratio = Rational64::new(num as i64, den as i64);
                    if ratio > best {
                        best = ratio;
                        arg = (u, v, w, z);
                    }
                }
            }
        }
    }
    Ok((best, arg))
}
