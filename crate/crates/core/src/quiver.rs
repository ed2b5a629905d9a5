//! Dynkin quivers, their doubles, and the graded basis of the preprojective
//! algebra.
//!
//! Vertices are `0..n` internally and printed as `1..=n`. Composition of
//! paths is function-style: a path is stored as the list of its arrows in the
//! order they are applied, and displayed right-to-left (`a2·a1` means `a1`
//! first).
//!
//! Relation convention: a representation `V` satisfies, at every vertex `i`,
//! `Σ_{a∈Q1, s(a)=i} V_{a*} V_a − Σ_{a∈Q1, t(a)=i} V_a V_{a*} = 0`.
//! With `sign(a) = +1` on unstarred and `−1` on starred arrows this is
//! `Σ_{b∈Q̄1, s(b)=i} sign(b) V_{b*} V_b = 0`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Matrix, Quotient};

/// Tag written into every persisted file so fixtures stay bit-stable.
pub const RELATION_CONVENTION: &str = "sum_{s(a)=i} a*a - sum_{t(a)=i} a a*";

/// The supported Dynkin types (linear orientation `α_i : i → i+1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DynkinType {
    A(usize),
}

impl DynkinType {
    pub const PRESETS: [DynkinType; 3] = [DynkinType::A(2), DynkinType::A(3), DynkinType::A(4)];

    pub fn rank(self) -> usize {
        match self {
            DynkinType::A(n) => n,
        }
    }

    /// `dim Λ`; for type A_n this is `n(n+1)(n+2)/6`.
    pub fn algebra_dim(self) -> usize {
        match self {
            DynkinType::A(n) => n * (n + 1) * (n + 2) / 6,
        }
    }

    /// True for the representation-finite presets covered by the test suites.
    pub fn is_preset(self) -> bool {
        Self::PRESETS.contains(&self)
    }

    pub fn quiver(self) -> Quiver {
        match self {
            DynkinType::A(n) => Quiver::linear_a(n),
        }
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A(n) => write!(f, "A{n}"),
        }
    }
}

impl FromStr for DynkinType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let rest = s
            .strip_prefix('A')
            .or_else(|| s.strip_prefix('a'))
            .ok_or_else(|| Error::Input(format!("unsupported quiver type {s:?}")))?;
        let n: usize = rest.parse().map_err(|_| Error::Input(format!("bad quiver type {s:?}")))?;
        if n == 0 {
            return Err(Error::Input("A0 is empty".into()));
        }
        Ok(DynkinType::A(n))
    }
}

/// A finite connected quiver without oriented cycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: usize,
    arrows: Vec<(usize, usize)>,
}

impl Quiver {
    pub fn new(vertices: usize, arrows: Vec<(usize, usize)>) -> Result<Self> {
        if vertices == 0 {
            return Err(Error::Input("quiver needs at least one vertex".into()));
        }
        if let Some(&(s, t)) = arrows.iter().find(|&&(s, t)| s >= vertices || t >= vertices) {
            return Err(Error::Input(format!("arrow {s}->{t} leaves the vertex set")));
        }
        let q = Quiver { vertices, arrows };
        if !q.is_connected() {
            return Err(Error::Input("quiver is not connected".into()));
        }
        if q.has_oriented_cycle() {
            return Err(Error::Input("quiver has an oriented cycle".into()));
        }
        Ok(q)
    }

    /// `1 → 2 → ... → n`
    pub fn linear_a(n: usize) -> Self {
        Quiver { vertices: n, arrows: (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect() }
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.vertices];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(s, t) in &self.arrows {
                for (a, b) in [(s, t), (t, s)] {
                    if a == v && !seen[b] {
                        seen[b] = true;
                        stack.push(b);
                    }
                }
            }
        }
        seen.iter().all(|&x| x)
    }

    fn has_oriented_cycle(&self) -> bool {
        // Kahn's algorithm
        let mut indeg = vec![0usize; self.vertices];
        for &(_, t) in &self.arrows {
            indeg[t] += 1;
        }
        let mut queue: Vec<usize> = (0..self.vertices).filter(|&v| indeg[v] == 0).collect();
        let mut removed = 0;
        while let Some(v) = queue.pop() {
            removed += 1;
            for &(s, t) in &self.arrows {
                if s == v {
                    indeg[t] -= 1;
                    if indeg[t] == 0 {
                        queue.push(t);
                    }
                }
            }
        }
        removed < self.vertices
    }
}

/// An arrow of the double quiver.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    /// Index of the underlying arrow of `Q`.
    pub base: usize,
    pub starred: bool,
}

/// `Q̄`: the arrows of `Q` (indices `0..m`) followed by their stars (`m..2m`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleQuiver {
    base: Quiver,
    arrows: Vec<Arrow>,
}

/// Doubles a quiver by adding `α* : j → i` for every `α : i → j`.
pub fn double(q: &Quiver) -> DoubleQuiver {
    let mut arrows: Vec<Arrow> = q
        .arrows
        .iter()
        .enumerate()
        .map(|(k, &(s, t))| Arrow { source: s, target: t, base: k, starred: false })
        .collect();
    arrows.extend(
        q.arrows
            .iter()
            .enumerate()
            .map(|(k, &(s, t))| Arrow { source: t, target: s, base: k, starred: true }),
    );
    DoubleQuiver { base: q.clone(), arrows }
}

impl DoubleQuiver {
    pub fn base(&self) -> &Quiver {
        &self.base
    }

    pub fn vertices(&self) -> usize {
        self.base.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, a: usize) -> Arrow {
        self.arrows[a]
    }

    /// The involution `α ↔ α*`.
    pub fn star(&self, a: usize) -> usize {
        let m = self.base.arrows.len();
        if a < m {
            a + m
        } else {
            a - m
        }
    }

    pub fn sign(&self, a: usize) -> i64 {
        if self.arrows[a].starred {
            -1
        } else {
            1
        }
    }

    /// `"a1"`, `"a1*"`, ... (1-based like the vertices).
    pub fn arrow_name(&self, a: usize) -> String {
        let arr = self.arrows[a];
        format!("a{}{}", arr.base + 1, if arr.starred { "*" } else { "" })
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<usize> {
        (0..self.arrows.len()).find(|&a| self.arrow_name(a) == name)
    }

    /// Arrows `b` with `s(b) = v`; the relation at `v` is `Σ sign(b) b* b`.
    pub fn outgoing(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].source == v)
    }
}

/// Dimension vector, one non-negative entry per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DimVector(pub Vec<usize>);

impl DimVector {
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `(d,e) = 2 Σ_i d_i e_i − Σ_{a∈Q̄1} d_{s(a)} e_{t(a)}`
pub fn symmetric_form(dq: &DoubleQuiver, d: &DimVector, e: &DimVector) -> Result<i64> {
    let n = dq.vertices();
    if d.len() != n || e.len() != n {
        return Err(Error::Input(format!(
            "dimension vectors of length {} and {} for a quiver with {n} vertices",
            d.len(),
            e.len()
        )));
    }
    let diag: i64 = (0..n).map(|i| (d.0[i] * e.0[i]) as i64).sum();
    let off: i64 = dq.arrows().iter().map(|a| (d.0[a.source] * e.0[a.target]) as i64).sum();
    Ok(2 * diag - off)
}

/// A basis element of `Λ`: the class of a path.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PathClass {
    pub source: usize,
    pub target: usize,
    /// Arrows in application order.
    pub arrows: Vec<usize>,
}

impl PathClass {
    pub fn degree(&self) -> usize {
        self.arrows.len()
    }

    pub fn display(&self, dq: &DoubleQuiver) -> String {
        if self.arrows.is_empty() {
            return format!("e{}", self.source + 1);
        }
        let names: Vec<String> = self.arrows.iter().rev().map(|&a| dq.arrow_name(a)).collect();
        names.join("·")
    }
}

/// The projective `Λe_i` on its path-class basis.
#[derive(Clone, Debug)]
pub(crate) struct ProjectiveData<F> {
    /// Basis of `e_j Λ e_i` for each vertex `j`.
    pub elements: Vec<Vec<PathClass>>,
    /// Left multiplication by each arrow, shape `dim_{t(a)} × dim_{s(a)}`.
    pub mats: Vec<Matrix<F>>,
}

/// Basis of `Λ = kQ̄/(ρ)` graded by path length, with its multiplication table.
#[derive(Clone, Debug)]
pub struct AlgebraBasis<F> {
    /// All basis elements, grouped by source vertex, then target, then degree.
    pub elements: Vec<PathClass>,
    /// `graded_dims[ℓ]` = dimension of the degree-ℓ part.
    pub graded_dims: Vec<usize>,
    /// `mult[(x, y)]` = coordinates of `x·y` (x after y) for composable pairs.
    pub mult: HashMap<(usize, usize), Vec<(usize, F)>>,
}

impl<F: Field> AlgebraBasis<F> {
    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    /// Indices of basis elements with the given source, target and degree.
    pub fn component(&self, source: usize, target: usize, degree: usize) -> Vec<usize> {
        (0..self.elements.len())
            .filter(|&k| {
                let e = &self.elements[k];
                e.source == source && e.target == target && e.degree() == degree
            })
            .collect()
    }

    pub fn top_degree(&self) -> usize {
        self.graded_dims.len().saturating_sub(1)
    }
}

/// A preprojective algebra with its projective modules.
#[derive(Debug)]
pub struct Preprojective<F> {
    dq: DoubleQuiver,
    dynkin: Option<DynkinType>,
    projectives: Vec<ProjectiveData<F>>,
    basis: AlgebraBasis<F>,
}

impl<F: Field> Preprojective<F> {
    pub fn new(t: DynkinType) -> Result<Arc<Self>> {
        let mut alg = Self::build(&double(&t.quiver()))?;
        alg.dynkin = Some(t);
        Ok(Arc::new(alg))
    }

    pub fn from_double(dq: &DoubleQuiver) -> Result<Arc<Self>> {
        Ok(Arc::new(Self::build(dq)?))
    }

    pub fn dq(&self) -> &DoubleQuiver {
        &self.dq
    }

    pub fn dynkin(&self) -> Option<DynkinType> {
        self.dynkin
    }

    pub fn basis(&self) -> &AlgebraBasis<F> {
        &self.basis
    }

    pub fn vertices(&self) -> usize {
        self.dq.vertices()
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub(crate) fn projective_data(&self, i: usize) -> &ProjectiveData<F> {
        &self.projectives[i]
    }

    fn build(dq: &DoubleQuiver) -> Result<Self> {
        let projectives = (0..dq.vertices())
            .map(|i| build_projective::<F>(dq, i))
            .collect::<Result<Vec<_>>>()?;
        let basis = assemble_basis(dq, &projectives);
        Ok(Preprojective { dq: dq.clone(), dynkin: None, projectives, basis })
    }
}

/// One graded piece of `Λe_i` under construction.
struct Level<F> {
    /// (vertex, path) of each basis element.
    elems: Vec<PathClass>,
    /// For each arrow `a` and each element `u` at `s(a)`: `a·u` in the next level.
    up: HashMap<(usize, usize), Vec<(usize, F)>>,
}

/// Builds `Λe_i` degree by degree: degree ℓ is the span of formal products
/// `a ⊗ u` (`u` of degree ℓ−1) modulo `ρ_v · w` for `w` of degree ℓ−2.
fn build_projective<F: Field>(dq: &DoubleQuiver, i: usize) -> Result<ProjectiveData<F>> {
    let n = dq.vertices();
    let cap = 2 * n;
    let mut levels: Vec<Level<F>> = vec![Level {
        elems: vec![PathClass { source: i, target: i, arrows: Vec::new() }],
        up: HashMap::new(),
    }];
    loop {
        let deg = levels.len();
        let prev = &levels[deg - 1];
        let mut formal: Vec<(usize, usize)> = Vec::new();
        let mut formal_index: HashMap<(usize, usize), usize> = HashMap::new();
        for (u, el) in prev.elems.iter().enumerate() {
            for a in dq.outgoing(el.target) {
                formal_index.insert((a, u), formal.len());
                formal.push((a, u));
            }
        }
        if formal.is_empty() {
            break;
        }
        if deg > cap {
            return Err(Error::DegreeCap { degree: deg, cap });
        }
        // relations ρ_v·w for w in degree deg-2
        let mut rels: Vec<Vec<F>> = Vec::new();
        if deg >= 2 {
            let prev2 = &levels[deg - 2];
            for (w, el) in prev2.elems.iter().enumerate() {
                let mut row = vec![F::zero(); formal.len()];
                for b in dq.outgoing(el.target) {
                    let sign = F::from_i64(dq.sign(b));
                    let bs = dq.star(b);
                    if let Some(bw) = prev2.up.get(&(b, w)) {
                        for &(u, c) in bw {
                            let k = formal_index[&(bs, u)];
                            row[k] += sign * c;
                        }
                    }
                }
                rels.push(row);
            }
        }
        let mut rel_cols = Matrix::zeros(formal.len(), rels.len());
        for (r, row) in rels.iter().enumerate() {
            for (k, &v) in row.iter().enumerate() {
                rel_cols[(k, r)] = v;
            }
        }
        let quotient = Quotient::new(formal.len(), &rel_cols);
        if quotient.dim() == 0 {
            break;
        }
        // basis elements = formal products at the complement positions
        let mut elems = Vec::with_capacity(quotient.dim());
        for k in 0..quotient.dim() {
            let pos = (0..formal.len()).find(|&f| !quotient.section[(f, k)].is_zero()).unwrap();
            let (a, u) = formal[pos];
            let mut arrows = prev.elems[u].arrows.clone();
            arrows.push(a);
            elems.push(PathClass { source: i, target: dq.arrow(a).target, arrows });
        }
        let mut up = HashMap::new();
        for (f, &(a, u)) in formal.iter().enumerate() {
            let coords: Vec<(usize, F)> = (0..quotient.dim())
                .filter_map(|k| {
                    let v = quotient.projection[(k, f)];
                    (!v.is_zero()).then_some((k, v))
                })
                .collect();
            up.insert((a, u), coords);
        }
        levels[deg - 1].up = up;
        levels.push(Level { elems, up: HashMap::new() });
    }

    // flatten: per vertex, elements ordered by degree then construction order
    let mut local: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n]; // (level, idx)
    for (l, level) in levels.iter().enumerate() {
        for (k, el) in level.elems.iter().enumerate() {
            local[el.target].push((l, k));
        }
    }
    let mut position: HashMap<(usize, usize), usize> = HashMap::new();
    for per_vertex in &local {
        for (pos, &key) in per_vertex.iter().enumerate() {
            position.insert(key, pos);
        }
    }
    let elements: Vec<Vec<PathClass>> = local
        .iter()
        .map(|v| v.iter().map(|&(l, k)| levels[l].elems[k].clone()).collect())
        .collect();
    let mats = (0..dq.arrows().len())
        .map(|a| {
            let arr = dq.arrow(a);
            let mut m = Matrix::zeros(local[arr.target].len(), local[arr.source].len());
            for (col, &(l, k)) in local[arr.source].iter().enumerate() {
                if let Some(img) = levels[l].up.get(&(a, k)) {
                    for &(k2, c) in img {
                        m[(position[&(l + 1, k2)], col)] = c;
                    }
                }
            }
            m
        })
        .collect();
    Ok(ProjectiveData { elements, mats })
}

fn assemble_basis<F: Field>(dq: &DoubleQuiver, projectives: &[ProjectiveData<F>]) -> AlgebraBasis<F> {
    let n = dq.vertices();
    let mut elements = Vec::new();
    // global index of (source i, vertex j, local k)
    let mut index: HashMap<(usize, usize, usize), usize> = HashMap::new();
    for (i, p) in projectives.iter().enumerate() {
        for j in 0..n {
            for (k, el) in p.elements[j].iter().enumerate() {
                index.insert((i, j, k), elements.len());
                elements.push(el.clone());
            }
        }
    }
    let top = elements.iter().map(PathClass::degree).max().unwrap_or(0);
    let mut graded_dims = vec![0; top + 1];
    for el in &elements {
        graded_dims[el.degree()] += 1;
    }
    let mut mult = HashMap::new();
    for (xi, x) in elements.iter().enumerate() {
        for (yi, y) in elements.iter().enumerate() {
            if y.target != x.source {
                continue;
            }
            // x·y inside Λe_{s(y)}: apply the arrows of x to y
            let p = &projectives[y.source];
            let local_y = p.elements[y.target].iter().position(|e| e == y).unwrap();
            let mut vec = vec![F::zero(); p.elements[y.target].len()];
            vec[local_y] = F::one();
            let mut at = y.target;
            for &a in &x.arrows {
                vec = p.mats[a].mul_vec(&vec);
                at = dq.arrow(a).target;
            }
            let coords = vec
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, &c)| (index[&(y.source, at, k)], c))
                .collect();
            mult.insert((xi, yi), coords);
        }
    }
    AlgebraBasis { elements, graded_dims, mult }
}
