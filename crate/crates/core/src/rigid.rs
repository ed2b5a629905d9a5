//! Basic maximal rigid modules as maximal cliques of the Ext-compatibility
//! graph, and exchange graphs between summand sets.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::atlas::{Atlas, FORMAT_VERSION};
use crate::error::{Error, Result};
use crate::field::Field;

/// Largest vertex count handled by the bitset clique search.
pub const CLIQUE_LIMIT: usize = 128;

/// A basic module given by the sorted ids of its indecomposable summands.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RigidModule {
    pub summands: Vec<usize>,
}

impl RigidModule {
    pub fn new(mut summands: Vec<usize>) -> Self {
        summands.sort_unstable();
        summands.dedup();
        RigidModule { summands }
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn contains(&self, id: usize) -> bool {
        self.summands.binary_search(&id).is_ok()
    }
}

/// True iff `Ext¹` vanishes on all pairs of the given summands.
pub fn is_rigid<F: Field>(atlas: &Atlas<F>, ids: &[usize]) -> bool {
    ids.iter().all(|&i| ids.iter().all(|&j| atlas.ext(i, j) == 0))
}

/// Undirected graph on a subset of atlas ids, adjacency as bitsets.
#[derive(Clone, Debug)]
pub struct CompatibilityGraph {
    /// Atlas ids of the vertices, increasing.
    pub vertices: Vec<usize>,
    adjacency: Vec<u128>,
}

impl CompatibilityGraph {
    /// Vertices are the rigid indecomposables; `i ~ j` iff `Ext¹(X_i, X_j) = 0`.
    pub fn from_atlas<F: Field>(atlas: &Atlas<F>) -> Result<Self> {
        let vertices: Vec<usize> = (0..atlas.len()).filter(|&i| atlas.ext(i, i) == 0).collect();
        Self::from_relation(vertices, |i, j| atlas.ext(i, j) == 0)
    }

    /// Graph on `vertices` with `i ~ j` iff `compatible(i, j)` (for `i ≠ j`).
    pub fn from_relation(vertices: Vec<usize>, compatible: impl Fn(usize, usize) -> bool) -> Result<Self> {
        if vertices.len() > CLIQUE_LIMIT {
            return Err(Error::Input(format!(
                "{} vertices exceed the clique search limit {CLIQUE_LIMIT}",
                vertices.len()
            )));
        }
        let adjacency = vertices
            .iter()
            .enumerate()
            .map(|(a, &i)| {
                vertices
                    .iter()
                    .enumerate()
                    .filter(|&(b, &j)| a != b && compatible(i, j))
                    .fold(0u128, |acc, (b, _)| acc | (1u128 << b))
            })
            .collect();
        Ok(CompatibilityGraph { vertices, adjacency })
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        match (self.vertices.binary_search(&i), self.vertices.binary_search(&j)) {
            (Ok(a), Ok(b)) => self.adjacency[a] >> b & 1 == 1,
            _ => false,
        }
    }

    /// All maximal cliques (as sorted atlas ids), in lexicographic order.
    pub fn maximal_cliques(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let all = if self.vertices.len() == CLIQUE_LIMIT { u128::MAX } else { (1u128 << self.vertices.len()) - 1 };
        self.bron_kerbosch(0, all, 0, &mut out);
        let mut cliques: Vec<Vec<usize>> = out
            .into_iter()
            .map(|mask| bits(mask).map(|b| self.vertices[b]).collect())
            .collect();
        cliques.sort();
        cliques
    }

    fn bron_kerbosch(&self, r: u128, mut p: u128, mut x: u128, out: &mut Vec<u128>) {
        if p == 0 {
            if x == 0 {
                out.push(r);
            }
            return;
        }
        // pivot with the most neighbours in P
        let pivot = bits(p | x).max_by_key(|&u| (self.adjacency[u] & p).count_ones()).expect("P nonempty");
        for v in bits(p & !self.adjacency[pivot]) {
            let bit = 1u128 << v;
            self.bron_kerbosch(r | bit, p & self.adjacency[v], x & self.adjacency[v], out);
            p &= !bit;
            x |= bit;
        }
    }
}

fn bits(mut mask: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let b = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(b)
        }
    })
}

/// Basic maximal rigid modules: maximal cliques of the compatibility graph.
/// Every clique must contain all projectives and all cliques must have the
/// same size; either failure is a structure error.
pub fn enumerate_maximal_rigid<F: Field>(atlas: &Atlas<F>) -> Result<Vec<RigidModule>> {
    let graph = CompatibilityGraph::from_atlas(atlas)?;
    let cliques = graph.maximal_cliques();
    let projectives = atlas.projective_ids();
    let rigids: Vec<RigidModule> = cliques.into_iter().map(RigidModule::new).collect();
    if let Some(bad) = rigids.iter().find(|r| !projectives.iter().all(|&p| r.contains(p))) {
        return Err(Error::Structure(format!("maximal rigid set {:?} misses a projective", bad.summands)));
    }
    if let Some(first) = rigids.first() {
        if let Some(bad) = rigids.iter().find(|r| r.len() != first.len()) {
            return Err(Error::Structure(format!(
                "maximal rigid sets of sizes {} and {} found",
                first.len(),
                bad.len()
            )));
        }
    }
    Ok(rigids)
}

/// Vertices are summand sets of equal size `r`; edges join sets differing in
/// exactly one summand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExchangeGraph {
    pub quiver_type: String,
    /// Summand count of every vertex.
    pub r: usize,
    /// Vertex count of the quiver.
    pub n: usize,
    pub vertices: Vec<RigidModule>,
    /// Pairs `(a, b)` with `a < b`, sorted.
    pub edges: Vec<(usize, usize)>,
}

pub type MutationGraph = ExchangeGraph;

impl ExchangeGraph {
    /// Canonicalises the vertex order and finds edges by hashing each set with
    /// one summand removed.
    pub fn new(quiver_type: String, n: usize, mut vertices: Vec<RigidModule>) -> Result<Self> {
        vertices.sort();
        vertices.dedup();
        let r = vertices.first().map_or(0, RigidModule::len);
        if vertices.iter().any(|v| v.len() != r) {
            return Err(Error::Structure("vertices of an exchange graph must have equal size".into()));
        }
        let mut buckets: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
        for (k, v) in vertices.iter().enumerate() {
            for pos in 0..v.len() {
                let mut key = v.summands.clone();
                key.remove(pos);
                buckets.entry(key).or_default().push(k);
            }
        }
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for group in buckets.values() {
            for (i, &a) in group.iter().enumerate() {
                for &b in &group[i + 1..] {
                    edges.push((a.min(b), a.max(b)));
                }
            }
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(ExchangeGraph { quiver_type, r, n, vertices, edges })
    }

    pub fn mutation<F: Field>(atlas: &Atlas<F>, rigids: Vec<RigidModule>) -> Result<Self> {
        Self::new(atlas.dynkin().to_string(), atlas.algebra().vertices(), rigids)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertices.len()];
        for &(a, b) in &self.edges {
            d[a] += 1;
            d[b] += 1;
        }
        d
    }

    /// `Some(k)` if every vertex has degree `k`.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degrees();
        match d.first() {
            Some(&k) if d.iter().all(|&x| x == k) => Some(k),
            _ => None,
        }
    }

    pub fn neighbours(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return true;
        }
        let adj = self.neighbours();
        let mut seen = vec![false; adj.len()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    /// For each vertex and summand, at most one neighbour exchanges exactly that summand.
    pub fn partners_unique(&self) -> bool {
        let adj = self.neighbours();
        (0..self.vertices.len()).all(|v| {
            let mut dropped: Vec<usize> = adj[v]
                .iter()
                .map(|&w| {
                    *self.vertices[v]
                        .summands
                        .iter()
                        .find(|s| !self.vertices[w].contains(**s))
                        .expect("neighbours differ")
                })
                .collect();
            let before = dropped.len();
            dropped.sort_unstable();
            dropped.dedup();
            dropped.len() == before
        })
    }

    /// Index of the vertex with the given summands.
    pub fn find(&self, summands: &RigidModule) -> Option<usize> {
        self.vertices.binary_search(summands).ok()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.binary_search(&(a.min(b), a.max(b))).is_ok()
    }

    pub fn to_file(&self, names: &dyn Fn(usize) -> String) -> GraphFile {
        GraphFile {
            format_version: FORMAT_VERSION,
            quiver_type: self.quiver_type.clone(),
            r: self.r,
            n: self.n,
            vertices: self
                .vertices
                .iter()
                .enumerate()
                .map(|(id, v)| GraphVertex {
                    id,
                    summands: v.summands.clone(),
                    aliases: v.summands.iter().map(|&s| names(s)).collect(),
                })
                .collect(),
            edges: self.edges.iter().map(|&(a, b)| [a, b]).collect(),
        }
    }

    pub fn to_json(&self, names: &dyn Fn(usize) -> String) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_file(names))?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: GraphFile = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        if file.format_version != FORMAT_VERSION {
            return Err(Error::Format(format!("graph format version {} is not supported", file.format_version)));
        }
        let vertices = file.vertices.into_iter().map(|v| RigidModule::new(v.summands)).collect();
        let edges = file.edges.into_iter().map(|[a, b]| (a.min(b), a.max(b))).collect();
        Ok(ExchangeGraph { quiver_type: file.quiver_type, r: file.r, n: file.n, vertices, edges })
    }

    /// Undirected DOT; node ids are vertex indices, labels the summand names.
    pub fn to_dot(&self, names: &dyn Fn(usize) -> String) -> String {
        let mut out = String::from("graph exchange {\n");
        for (id, v) in self.vertices.iter().enumerate() {
            let label: Vec<String> = v.summands.iter().map(|&s| names(s)).collect();
            let _ = writeln!(out, "  {id} [label=\"{}\"];", label.join(" + ").replace('"', "\\\""));
        }
        for &(a, b) in &self.edges {
            let _ = writeln!(out, "  {a} -- {b};");
        }
        out.push_str("}\n");
        out
    }

    pub fn export(&self, path: &Path, format: GraphFormat, names: &dyn Fn(usize) -> String) -> Result<()> {
        let text = match format {
            GraphFormat::Dot => self.to_dot(names),
            GraphFormat::Json => self.to_json(names)? + "\n",
        };
        if let Some(dir) = path.parent() {
            if !dir.as_os_str().is_empty() {
                fs::create_dir_all(dir)?;
            }
        }
        fs::write(path, text)?;
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    Dot,
    Json,
}

impl std::str::FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dot" => Ok(GraphFormat::Dot),
            "json" => Ok(GraphFormat::Json),
            _ => Err(Error::Input(format!("unknown graph format {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphFile {
    pub format_version: u32,
    pub quiver_type: String,
    pub r: usize,
    pub n: usize,
    pub vertices: Vec<GraphVertex>,
    pub edges: Vec<[usize; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphVertex {
    pub id: usize,
    pub summands: Vec<usize>,
    pub aliases: Vec<String>,
}

/// Brute-force isomorphism test between small graphs given as edge lists on
/// `0..n`, by backtracking over degree-compatible assignments.
pub fn graphs_isomorphic(n: usize, a: &[(usize, usize)], b: &[(usize, usize)]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let adj = |edges: &[(usize, usize)]| {
        let mut m = vec![vec![false; n]; n];
        for &(x, y) in edges {
            m[x][y] = true;
            m[y][x] = true;
        }
        m
    };
    let (ma, mb) = (adj(a), adj(b));
    let deg = |m: &Vec<Vec<bool>>| m.iter().map(|r| r.iter().filter(|&&x| x).count()).collect::<Vec<_>>();
    let (da, db) = (deg(&ma), deg(&mb));
    let mut sa = da.clone();
    let mut sb = db.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return false;
    }
    fn extend(k: usize, map: &mut Vec<usize>, used: &mut Vec<bool>, ma: &[Vec<bool>], mb: &[Vec<bool>], da: &[usize], db: &[usize]) -> bool {
        let n = ma.len();
        if k == n {
            return true;
        }
        for c in 0..n {
            if used[c] || da[k] != db[c] {
                continue;
            }
            if (0..k).all(|j| ma[k][j] == mb[c][map[j]]) {
                map.push(c);
                used[c] = true;
                if extend(k + 1, map, used, ma, mb, da, db) {
                    return true;
                }
                map.pop();
                used[c] = false;
            }
        }
        false
    }
    extend(0, &mut Vec::new(), &mut vec![false; n], &ma, &mb, &da, &db)
}
