//! Minimum-weight perfect matching of defects on a plaquette graph.

use std::collections::VecDeque;

use mwmatching::{Matching, SENTINEL};

use crate::error::{Error, Result};

/// Undirected multigraph; every edge carries the qubit whose Z flips both ends.
#[derive(Clone, Debug, Default)]
pub struct PlaquetteGraph {
    /// Sorted by (neighbour, qubit).
    adj: Vec<Vec<(usize, usize)>>,
}

impl PlaquetteGraph {
    pub fn new(num_vertices: usize, edges: &[(usize, usize, usize)]) -> Self {
        let mut adj = vec![Vec::new(); num_vertices];
        for &(a, b, q) in edges {
            adj[a].push((b, q));
            adj[b].push((a, q));
        }
        for l in adj.iter_mut() {
            l.sort_unstable();
        }
        PlaquetteGraph { adj }
    }

    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbours(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn distances_from(&self, s: usize) -> Vec<u32> {
        let mut d = vec![u32::MAX; self.adj.len()];
        d[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &(u, _) in &self.adj[v] {
                if d[u] == u32::MAX {
                    d[u] = d[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        d
    }

    /// Lexicographically smallest shortest path from `a` to `b`, as the qubits crossed.
    pub fn path(&self, a: usize, b: usize, dist_to_b: &[u32]) -> Result<Vec<usize>> {
        if dist_to_b[a] == u32::MAX {
            return Err(Error::Decoder(format!("vertices {a} and {b} are disconnected")));
        }
        let mut out = Vec::with_capacity(dist_to_b[a] as usize);
        let mut v = a;
        while v != b {
            let &(u, q) = self.adj[v].iter().find(|&&(u, _)| dist_to_b[u] + 1 == dist_to_b[v]).expect("bfs predecessor");
            out.push(q);
            v = u;
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairedDefects {
    pub pairs: Vec<(usize, usize)>,
    pub cost: u64,
    /// Qubits of the correcting chain for each pair.
    pub paths: Vec<Vec<usize>>,
}

fn pairwise(graph: &PlaquetteGraph, defects: &[usize]) -> Result<(Vec<Vec<u32>>, Vec<Vec<u32>>)> {
    if defects.len() % 2 == 1 {
        return Err(Error::Decoder(format!("odd number of defects ({})", defects.len())));
    }
    let bfs: Vec<Vec<u32>> = defects.iter().map(|&d| graph.distances_from(d)).collect();
    let dist: Vec<Vec<u32>> = bfs.iter().map(|row| defects.iter().map(|&d| row[d]).collect()).collect();
    Ok((bfs, dist))
}

fn finish(graph: &PlaquetteGraph, defects: &[usize], bfs: &[Vec<u32>], mates: Vec<(usize, usize)>) -> Result<PairedDefects> {
    let mut pairs = Vec::new();
    let mut paths = Vec::new();
    let mut cost = 0u64;
    for (i, j) in mates {
        let (a, b) = (defects[i], defects[j]);
        let p = graph.path(a, b, &bfs[j])?;
        cost += p.len() as u64;
        pairs.push((a, b));
        paths.push(p);
    }
    Ok(PairedDefects { pairs, cost, paths })
}

/// Exact minimum-weight perfect matching over shortest-path distances (blossom).
pub fn mwpm(graph: &PlaquetteGraph, defects: &[usize]) -> Result<PairedDefects> {
    let (bfs, dist) = pairwise(graph, defects)?;
    let m = defects.len();
    if m == 0 {
        return Ok(PairedDefects { pairs: vec![], cost: 0, paths: vec![] });
    }
    let maxd = dist.iter().flatten().filter(|&&d| d != u32::MAX).max().copied().unwrap_or(0) as i32;
    let mut edges = Vec::with_capacity(m * (m - 1) / 2);
    for i in 0..m {
        for j in i + 1..m {
            if dist[i][j] != u32::MAX {
                edges.push((i, j, maxd + 1 - dist[i][j] as i32));
            }
        }
    }
    let mates = Matching::new(edges).max_cardinality().solve();
    let mut out = Vec::new();
    for i in 0..m {
        let j = *mates.get(i).unwrap_or(&SENTINEL);
        if j == SENTINEL {
            return Err(Error::Decoder(format!("defect {} left unmatched", defects[i])));
        }
        if i < j {
            out.push((i, j));
        }
    }
    finish(graph, defects, &bfs, out)
}

/// Exhaustive search over all pairings; for small defect sets only.
pub fn brute_force_pairing(graph: &PlaquetteGraph, defects: &[usize]) -> Result<PairedDefects> {
    if defects.len() > 12 {
        return Err(Error::Decoder(format!("{} defects is too many for exhaustive pairing", defects.len())));
    }
    let (bfs, dist) = pairwise(graph, defects)?;
    fn rec(left: &mut Vec<usize>, dist: &[Vec<u32>], cur: u64, best: &mut Option<(u64, Vec<(usize, usize)>)>, acc: &mut Vec<(usize, usize)>) {
        if best.as_ref().is_some_and(|b| cur >= b.0) && !left.is_empty() {
            return;
        }
        let Some(&i) = left.first() else {
            if best.as_ref().is_none_or(|b| cur < b.0) {
                *best = Some((cur, acc.clone()));
            }
            return;
        };
        for k in 1..left.len() {
            let j = left[k];
            if dist[i][j] == u32::MAX {
                continue;
            }
            let mut rest: Vec<usize> = left.iter().copied().filter(|&x| x != i && x != j).collect();
            acc.push((i, j));
            rec(&mut rest, dist, cur + dist[i][j] as u64, best, acc);
            acc.pop();
        }
    }
    let mut best = None;
    rec(&mut (0..defects.len()).collect(), &dist, 0, &mut best, &mut Vec::new());
    let (_, pairs) = best.ok_or_else(|| Error::Decoder("no perfect pairing".into()))?;
    finish(graph, defects, &bfs, pairs)
}

/// Connected components, numbered by first vertex.
pub fn components(graph: &PlaquetteGraph) -> Vec<usize> {
    let mut comp = vec![usize::MAX; graph.num_vertices()];
    let mut next = 0;
    for s in 0..graph.num_vertices() {
        if comp[s] != usize::MAX {
            continue;
        }
        let d = graph.distances_from(s);
        for (v, &x) in d.iter().enumerate() {
            if x != u32::MAX {
                comp[v] = next;
            }
        }
        next += 1;
    }
    comp
}
