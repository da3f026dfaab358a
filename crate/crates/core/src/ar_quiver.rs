//! The Auslander-Reiten quiver: vertices (i, n) with n + p(i) even,
//! edges counting maps to the next level.
//!
//! Two independent dimension engines live here. The character engine
//! computes hom/ext dimensions from exact inner products of symmetric
//! power characters; the mesh engine computes them as graded pieces of
//! the path algebra modulo mesh relations. Their agreement is the
//! central cross-check of the whole pipeline.
//!
//! On top of the engines sit the Grothendieck-group operations: integer
//! combinations of symbols [X_i(n)] modulo the AR relations, the
//! normalization onto the free basis indexed by a height function, the
//! lattice map to L(Q), twisting, rank/degree and polarization.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::fmt::Write as _;
use std::sync::Mutex;

use num_traits::One;

use crate::chartab::CharacterTable;
use crate::cyclo::Cyclo;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::mckay::McKayGraph;
use crate::orientation::HeightFunction;
use crate::root_lattice::RootVector;
use crate::{Check, Rat, RatMatrix};

/// Vertex (i, n) of the AR quiver; n + p(i) must be even.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ARVertex {
    pub vertex: usize,
    pub level: i64,
}

impl ARVertex {
    pub fn new(graph: &McKayGraph, vertex: usize, level: i64) -> Result<ARVertex> {
        if (level + graph.parities[vertex] as i64) % 2 != 0 {
            return Err(Error::ParityViolation(vertex, level));
        }
        Ok(ARVertex { vertex, level })
    }

    pub fn shifted(&self, by: i64) -> ARVertex {
        ARVertex {
            vertex: self.vertex,
            level: self.level + by,
        }
    }
}

impl fmt::Display for ARVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.vertex, self.level)
    }
}

/// Legal AR vertices with n_min <= n <= n_max, ordered by (level, vertex).
pub fn window_vertices(graph: &McKayGraph, n_min: i64, n_max: i64) -> Vec<ARVertex> {
    let mut out = Vec::new();
    for level in n_min..=n_max {
        for vertex in 0..graph.n_vertices {
            if (level + graph.parities[vertex] as i64) % 2 == 0 {
                out.push(ARVertex { vertex, level });
            }
        }
    }
    out
}

/// Directed edges of the AR quiver inside a window: one edge
/// (i, n) -> (j, n+1) per copy of each graph edge {i, j} with matching
/// parity.
pub fn window_edges(
    graph: &McKayGraph,
    n_min: i64,
    n_max: i64,
) -> Vec<(ARVertex, ARVertex, usize)> {
    let mut out = Vec::new();
    for level in n_min..n_max {
        for i in 0..graph.n_vertices {
            if (level + graph.parities[i] as i64) % 2 != 0 {
                continue;
            }
            for j in 0..graph.n_vertices {
                for copy in 0..graph.edges[i][j] {
                    out.push((
                        ARVertex { vertex: i, level },
                        ARVertex {
                            vertex: j,
                            level: level + 1,
                        },
                        copy,
                    ));
                }
            }
        }
    }
    out
}

/// The character-theoretic dimension engine with a cache of
/// tensor-multiplicity tables per symmetric power.
pub struct HomEngine<'a> {
    pub table: &'a CharacterTable,
    pub graph: &'a McKayGraph,
    mult: Mutex<Vec<Vec<Vec<usize>>>>,
    mult_dual: Mutex<Vec<Vec<Vec<usize>>>>,
}

impl<'a> HomEngine<'a> {
    pub fn new(table: &'a CharacterTable, graph: &'a McKayGraph) -> HomEngine<'a> {
        HomEngine {
            table,
            graph,
            mult: Mutex::new(Vec::new()),
            mult_dual: Mutex::new(Vec::new()),
        }
    }

    /// mult(i, V_k (x) X_j), cached per k.
    fn mult_table(&self, k: usize, dual: bool) -> Result<Vec<Vec<usize>>> {
        let cache = if dual { &self.mult_dual } else { &self.mult };
        {
            let seen = cache.lock().unwrap();
            if let Some(t) = seen.get(k) {
                return Ok(t.clone());
            }
        }
        let n = self.table.num_chars();
        let mut next_k = cache.lock().unwrap().len();
        while next_k <= k {
            let chi = self.table.sym_power_character(next_k)?;
            let chi = if dual {
                chi.iter().map(Cyclo::conj).collect::<Vec<_>>()
            } else {
                chi
            };
            let mut t = vec![vec![0usize; n]; n];
            for j in 0..n {
                let f = self.table.pointwise(&chi, &self.table.values[j])?;
                for (i, row) in t.iter_mut().enumerate() {
                    row[j] = self.table.mult(i, &f)?;
                }
            }
            let mut guard = cache.lock().unwrap();
            if guard.len() == next_k {
                guard.push(t);
            }
            next_k = guard.len();
        }
        Ok(cache.lock().unwrap()[k].clone())
    }

    /// dim Hom(X_q, X_q') by the cohomology formula.
    pub fn hom_dim(&self, q: ARVertex, qp: ARVertex) -> Result<usize> {
        if qp.level < q.level {
            return Ok(0);
        }
        let k = (qp.level - q.level) as usize;
        Ok(self.mult_table(k, false)?[q.vertex][qp.vertex])
    }

    /// dim Ext^1(X_q, X_q') by the cohomology formula (via the dual
    /// symmetric power).
    pub fn ext_dim(&self, q: ARVertex, qp: ARVertex) -> Result<usize> {
        if qp.level >= q.level - 1 {
            return Ok(0);
        }
        let k = (q.level - qp.level - 2) as usize;
        Ok(self.mult_table(k, true)?[q.vertex][qp.vertex])
    }

    /// Euler pairing on symbols: hom - ext.
    pub fn euler_symbol(&self, q: ARVertex, qp: ARVertex) -> Result<i64> {
        Ok(self.hom_dim(q, qp)? as i64 - self.ext_dim(q, qp)? as i64)
    }
}

/// Hom/Ext dimension tables over every vertex pair of a window.
pub struct HomTable {
    pub n_min: i64,
    pub n_max: i64,
    pub vertices: Vec<ARVertex>,
    pub hom: Vec<Vec<usize>>,
    pub ext: Vec<Vec<usize>>,
}

pub fn hom_table(engine: &HomEngine, n_min: i64, n_max: i64) -> Result<HomTable> {
    if n_min > n_max {
        return Err(Error::WindowTooSmall(n_min, n_max, n_min));
    }
    let vertices = window_vertices(engine.graph, n_min, n_max);
    let m = vertices.len();
    let mut hom = vec![vec![0; m]; m];
    let mut ext = vec![vec![0; m]; m];
    for a in 0..m {
        for b in 0..m {
            hom[a][b] = engine.hom_dim(vertices[a], vertices[b])?;
            ext[a][b] = engine.ext_dim(vertices[a], vertices[b])?;
        }
    }
    let t = HomTable {
        n_min,
        n_max,
        vertices,
        hom,
        ext,
    };
    t.validate(engine.graph)?;
    Ok(t)
}

impl HomTable {
    fn validate(&self, graph: &McKayGraph) -> Result<()> {
        // Predecessor order: hom(q, q') = 0 unless there is a path
        // q -> q' (equivalently for q != q': reachability in the window).
        let m = self.vertices.len();
        let mut reach = vec![vec![false; m]; m];
        let index: HashMap<ARVertex, usize> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i))
            .collect();
        for (a, &q) in self.vertices.iter().enumerate() {
            reach[a][a] = true;
            // BFS along edges (levels strictly increase).
            let mut stack = vec![q];
            while let Some(v) = stack.pop() {
                for (j, _) in graph.neighbors(v.vertex) {
                    let up = ARVertex {
                        vertex: j,
                        level: v.level + 1,
                    };
                    if let Some(&b) = index.get(&up) {
                        if !reach[a][b] {
                            reach[a][b] = true;
                            stack.push(up);
                        }
                    }
                }
            }
        }
        for a in 0..m {
            for b in 0..m {
                if self.hom[a][b] > 0 && !reach[a][b] {
                    return Err(Error::Internal(format!(
                        "hom({}, {}) nonzero without a path",
                        self.vertices[a], self.vertices[b]
                    )));
                }
                if self.ext[a][b] > 0 && self.vertices[b].level >= self.vertices[a].level - 1 {
                    return Err(Error::Internal(format!(
                        "ext({}, {}) nonzero at a high level",
                        self.vertices[a], self.vertices[b]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "schema": 1,
            "window": [self.n_min, self.n_max],
            "vertices": self.vertices.iter().map(|v| serde_json::json!([v.vertex, v.level])).collect::<Vec<_>>(),
            "hom": self.hom,
            "ext": self.ext,
        })
    }
}

/// Is the undirected window graph connected? (Holds whenever the window
/// spans at least two consecutive levels per parity.)
pub fn window_connected(graph: &McKayGraph, n_min: i64, n_max: i64) -> bool {
    let vertices = window_vertices(graph, n_min, n_max);
    if vertices.is_empty() {
        return false;
    }
    let index: HashMap<ARVertex, usize> =
        vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut seen = vec![false; vertices.len()];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(a) = stack.pop() {
        let v = vertices[a];
        for (j, _) in graph.neighbors(v.vertex) {
            for up in [v.level + 1, v.level - 1] {
                if let Some(&b) = index.get(&ARVertex {
                    vertex: j,
                    level: up,
                }) {
                    if !seen[b] {
                        seen[b] = true;
                        stack.push(b);
                    }
                }
            }
        }
    }
    seen.into_iter().all(|x| x)
}

/// DOT rendering of a window, levels as same-rank clusters.
pub fn window_dot(graph: &McKayGraph, n_min: i64, n_max: i64) -> String {
    let mut s = String::from("digraph arquiver {\n  rankdir=BT;\n");
    for level in n_min..=n_max {
        let _ = writeln!(s, "  {{ rank=same;");
        for v in window_vertices(graph, level, level) {
            let _ = writeln!(
                s,
                "    \"{} {}\" [label=\"({}, {})\"];",
                v.vertex, v.level, v.vertex, v.level
            );
        }
        let _ = writeln!(s, "  }}");
    }
    for (from, to, _) in window_edges(graph, n_min, n_max) {
        let _ = writeln!(
            s,
            "  \"{} {}\" -> \"{} {}\";",
            from.vertex, from.level, to.vertex, to.level
        );
    }
    s.push_str("}\n");
    s
}

// ---------------------------------------------------------------------
// Mesh engine
// ---------------------------------------------------------------------

/// Graded module of essential paths into a fixed target vertex: for each
/// source t in the window, the space of paths t -> target modulo the
/// two-sided mesh ideal, together with the precomposition maps along
/// edges.
pub struct MeshModule {
    pub target: ARVertex,
    pub n_min: i64,
    pub n_max: i64,
    dims: HashMap<ARVertex, usize>,
    /// Key (i, j, copy, n): the edge (i, n) -> (j, n+1); value: the
    /// precomposition map N(j, n+1) -> N(i, n).
    maps: HashMap<(usize, usize, usize, i64), RatMatrix>,
}

impl MeshModule {
    /// Build the module for `target` over the window [n_min, n_max].
    pub fn build(
        graph: &McKayGraph,
        n_min: i64,
        n_max: i64,
        target: ARVertex,
    ) -> Result<MeshModule> {
        if target.level < n_min || target.level > n_max {
            return Err(Error::WindowTooSmall(n_min, n_max, target.level));
        }
        let mut dims: HashMap<ARVertex, usize> = HashMap::new();
        let mut maps: HashMap<(usize, usize, usize, i64), RatMatrix> = HashMap::new();
        dims.insert(target, 1);
        // All other vertices at or above the target level are zero.
        for v in window_vertices(graph, target.level, n_max) {
            dims.entry(v).or_insert(0);
        }

        let dim_of = |dims: &HashMap<ARVertex, usize>, v: ARVertex| -> usize {
            dims.get(&v).copied().unwrap_or(0)
        };

        for level in (n_min..target.level).rev() {
            for i in 0..graph.n_vertices {
                if (level + graph.parities[i] as i64) % 2 != 0 {
                    continue;
                }
                let t = ARVertex { vertex: i, level };
                // Blocks: one per outgoing edge copy (i, level) -> (j, level+1).
                let mut blocks: Vec<(usize, usize, usize)> = Vec::new(); // (j, copy, dim)
                for j in 0..graph.n_vertices {
                    for c in 0..graph.edges[i][j] {
                        blocks.push((
                            j,
                            c,
                            dim_of(
                                &dims,
                                ARVertex {
                                    vertex: j,
                                    level: level + 1,
                                },
                            ),
                        ));
                    }
                }
                let total: usize = blocks.iter().map(|b| b.2).sum();
                let up2 = ARVertex {
                    vertex: i,
                    level: level + 2,
                };
                let d2 = if level + 2 > target.level {
                    0
                } else {
                    dim_of(&dims, up2)
                };

                // Mesh relation matrix: columns indexed by N(i, level+2),
                // rows by the block sum; the block for edge copy (j, c)
                // holds sign * (map of the edge (j, level+1) -> (i, level+2)).
                let mut relations = Matrix::zero(total, d2);
                if d2 > 0 {
                    let mut offset = 0;
                    for &(j, c, bdim) in &blocks {
                        let key = (j, i, c, level + 1);
                        let up_map = maps.get(&key).ok_or_else(|| {
                            Error::Internal(format!("missing edge map {:?}", key))
                        })?;
                        // up_map: N(i, level+2) -> N(j, level+1), shape bdim x d2.
                        let sign_pos = graph.parities[i] == 0;
                        for r in 0..bdim {
                            for cc in 0..d2 {
                                let v = up_map[(r, cc)].clone();
                                relations[(offset + r, cc)] = if sign_pos { v } else { -v };
                            }
                        }
                        offset += bdim;
                    }
                }

                // Quotient of the block sum by the relation image.
                let mut rel_rows = relations.transpose();
                let pivots = rel_rows.rref();
                let pivot_rows: Vec<(usize, usize)> =
                    pivots.iter().enumerate().map(|(r, &c)| (r, c)).collect();
                let is_pivot: Vec<bool> = {
                    let mut v = vec![false; total];
                    for &(_, c) in &pivot_rows {
                        v[c] = true;
                    }
                    v
                };
                let free: Vec<usize> = (0..total).filter(|&s| !is_pivot[s]).collect();
                let qdim = free.len();
                dims.insert(t, qdim);

                // Projection matrix onto the free coordinates.
                let mut proj = Matrix::zero(qdim, total);
                for (out_row, &s) in free.iter().enumerate() {
                    proj[(out_row, s)] = Rat::one();
                }
                for &(r, c) in &pivot_rows {
                    // e_c reduces to -(row r) off the pivot.
                    for (out_row, &s) in free.iter().enumerate() {
                        proj[(out_row, c)] = -rel_rows[(r, s)].clone();
                    }
                }

                // Edge maps: the projection restricted to each block.
                let mut offset = 0;
                for &(j, c, bdim) in &blocks {
                    let m = Matrix::from_fn(qdim, bdim, |r, s| proj[(r, offset + s)].clone());
                    maps.insert((i, j, c, level), m);
                    offset += bdim;
                }
            }
        }

        Ok(MeshModule {
            target,
            n_min,
            n_max,
            dims,
            maps,
        })
    }

    /// Dimension of the essential-path space source -> target.
    pub fn dim(&self, source: ARVertex) -> Result<usize> {
        if source.level > self.target.level {
            return Ok(0);
        }
        if source.level < self.n_min {
            return Err(Error::WindowTooSmall(self.n_min, self.n_max, source.level));
        }
        Ok(self.dims.get(&source).copied().unwrap_or(0))
    }

    /// Precomposition map N(j, n+1) -> N(i, n) along the edge copy
    /// (i, n) -> (j, n+1).
    pub fn edge_map(&self, i: usize, j: usize, copy: usize, level: i64) -> Result<&RatMatrix> {
        self.maps
            .get(&(i, j, copy, level))
            .ok_or(Error::WindowTooSmall(self.n_min, self.n_max, level))
    }
}

/// Essential-path space dimension between two vertices, with the
/// surrounding module (the second return carries bases and composition
/// maps for every source in the window).
pub fn mesh_quotient(
    graph: &McKayGraph,
    n_min: i64,
    n_max: i64,
    q: ARVertex,
    qp: ARVertex,
) -> Result<(usize, MeshModule)> {
    if q.level < n_min || q.level > n_max {
        return Err(Error::WindowTooSmall(n_min, n_max, q.level));
    }
    let module = MeshModule::build(graph, n_min, n_max, qp)?;
    let dim = module.dim(q)?;
    Ok((dim, module))
}

// ---------------------------------------------------------------------
// Grothendieck group
// ---------------------------------------------------------------------

/// Integer combination of symbols [X_i(n)] (modulo AR relations when
/// interpreted in the Grothendieck group).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct KClass {
    /// (vertex, level) -> coefficient; zero coefficients are not stored.
    pub terms: BTreeMap<(usize, i64), i64>,
}

impl KClass {
    pub fn zero() -> KClass {
        KClass::default()
    }

    pub fn symbol(graph: &McKayGraph, vertex: usize, level: i64) -> Result<KClass> {
        ARVertex::new(graph, vertex, level)?;
        let mut k = KClass::zero();
        k.add_term(vertex, level, 1);
        Ok(k)
    }

    pub fn add_term(&mut self, vertex: usize, level: i64, coeff: i64) {
        let e = self.terms.entry((vertex, level)).or_insert(0);
        *e += coeff;
        if *e == 0 {
            self.terms.remove(&(vertex, level));
        }
    }

    pub fn add(&self, rhs: &KClass) -> KClass {
        let mut out = self.clone();
        for (&(v, n), &c) in &rhs.terms {
            out.add_term(v, n, c);
        }
        out
    }

    pub fn sub(&self, rhs: &KClass) -> KClass {
        self.add(&rhs.scaled(-1))
    }

    pub fn scaled(&self, c: i64) -> KClass {
        if c == 0 {
            return KClass::zero();
        }
        KClass {
            terms: self.terms.iter().map(|(&k, &v)| (k, v * c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Twist [X_i(n)] -> [X_i(n+m)] for even m; the Coxeter map C is the
/// twist by -2 (the translate tau).
pub fn twist(x: &KClass, m: i64) -> Result<KClass> {
    if m % 2 != 0 {
        return Err(Error::OddTwist(m));
    }
    Ok(KClass {
        terms: x
            .terms
            .iter()
            .map(|(&(v, n), &c)| ((v, n + m), c))
            .collect(),
    })
}

/// The AR sequence 0 -> X_i(n) -> sum_j n(i,j) X_j(n+1) -> X_i(n+2) -> 0
/// as its three K-classes.
pub fn ar_sequence(graph: &McKayGraph, q: ARVertex) -> Result<(KClass, KClass, KClass)> {
    let left = KClass::symbol(graph, q.vertex, q.level)?;
    let mut middle = KClass::zero();
    for (j, m) in graph.neighbors(q.vertex) {
        middle.add_term(j, q.level + 1, m as i64);
    }
    let right = KClass::symbol(graph, q.vertex, q.level + 2)?;
    Ok((left, middle, right))
}

/// Rewrite a class onto the free basis {[X_{(v, h_v)}]}: symbols above
/// the band are rewritten downward with the AR relation, symbols below
/// upward. Returns coordinates indexed by vertex.
pub fn k_normalize(graph: &McKayGraph, h: &HeightFunction, x: &KClass) -> Result<Vec<i64>> {
    h.validate(graph)?;
    let mut work: BTreeMap<(i64, usize), i64> = BTreeMap::new();
    for (&(v, n), &c) in &x.terms {
        if c != 0 {
            *work.entry((n, v)).or_insert(0) += c;
        }
    }
    // Downward phase: always rewrite the highest symbol strictly above
    // its band position; products stay weakly above their own band.
    loop {
        let key = work
            .iter()
            .rev()
            .find(|(&(n, v), &c)| c != 0 && n > h.values[v])
            .map(|(&k, &c)| (k, c));
        let Some(((n, v), c)) = key else { break };
        work.remove(&(n, v));
        for (j, m) in graph.neighbors(v) {
            *work.entry((n - 1, j)).or_insert(0) += c * m as i64;
        }
        *work.entry((n - 2, v)).or_insert(0) -= c;
        work.retain(|_, c| *c != 0);
    }
    // Upward phase, mirrored.
    loop {
        let key = work
            .iter()
            .find(|(&(n, v), &c)| c != 0 && n < h.values[v])
            .map(|(&k, &c)| (k, c));
        let Some(((n, v), c)) = key else { break };
        work.remove(&(n, v));
        for (j, m) in graph.neighbors(v) {
            *work.entry((n + 1, j)).or_insert(0) += c * m as i64;
        }
        *work.entry((n + 2, v)).or_insert(0) -= c;
        work.retain(|_, c| *c != 0);
    }
    let mut coords = vec![0i64; graph.n_vertices];
    for (&(n, v), &c) in &work {
        debug_assert_eq!(n, h.values[v]);
        coords[v] = c;
    }
    Ok(coords)
}

/// The lattice map: `[F] -> sum_i (dim RHom(X_i(h_i), F)) alpha_i`,
/// extended linearly over the normalized representation.
pub fn rphi(engine: &HomEngine, h: &HeightFunction, x: &KClass) -> Result<RootVector> {
    let coords = k_normalize(engine.graph, h, x)?;
    let images = rphi_basis_images(engine, h)?;
    let mut out = RootVector::zero(engine.graph.n_vertices);
    for (v, &c) in coords.iter().enumerate() {
        if c != 0 {
            out = &out + &images[v].scaled(c);
        }
    }
    Ok(out)
}

/// Images of the basis classes [X_{(v, h_v)}] under the lattice map.
pub fn rphi_basis_images(engine: &HomEngine, h: &HeightFunction) -> Result<Vec<RootVector>> {
    let n = engine.graph.n_vertices;
    let mut images = Vec::with_capacity(n);
    for v in 0..n {
        let q = ARVertex {
            vertex: v,
            level: h.values[v],
        };
        let mut coords = vec![0i64; n];
        for (i, coord) in coords.iter_mut().enumerate() {
            let band = ARVertex {
                vertex: i,
                level: h.values[i],
            };
            *coord = engine.hom_dim(band, q)? as i64 - engine.ext_dim(band, q)? as i64;
        }
        images.push(RootVector { coords });
    }
    Ok(images)
}

/// Determinant of the basis-image matrix (must be +-1: the lattice map
/// is an isomorphism over the integers).
pub fn rphi_det(engine: &HomEngine, h: &HeightFunction) -> Result<i64> {
    let images = rphi_basis_images(engine, h)?;
    let n = images.len();
    let m = Matrix::from_fn(n, n, |i, j| Rat::from_integer(images[j].coords[i].into()));
    let d = m.det();
    if !d.is_integer() {
        return Err(Error::Internal("non-integral determinant".into()));
    }
    i64::try_from(d.to_integer()).map_err(|_| Error::Internal("determinant overflow".into()))
}

/// Inverse of the lattice map on a vector (exact; the basis-image matrix
/// is unimodular).
pub fn rphi_inverse(engine: &HomEngine, h: &HeightFunction, v: &RootVector) -> Result<KClass> {
    let images = rphi_basis_images(engine, h)?;
    let n = images.len();
    let m = Matrix::from_fn(n, n, |i, j| Rat::from_integer(images[j].coords[i].into()));
    let b: Vec<Rat> = v
        .coords
        .iter()
        .map(|&c| Rat::from_integer(c.into()))
        .collect();
    let x = m
        .solve(&b)
        .ok_or_else(|| Error::Internal("lattice map not invertible".into()))?;
    let mut out = KClass::zero();
    for (vtx, c) in x.iter().enumerate() {
        if !c.is_integer() {
            return Err(Error::Internal("non-integral preimage".into()));
        }
        let ci = i64::try_from(c.to_integer())
            .map_err(|_| Error::Internal("preimage overflow".into()))?;
        if ci != 0 {
            out.add_term(vtx, h.values[vtx], ci);
        }
    }
    Ok(out)
}

/// `delta_0 = sum_{even} d_i [X_i]`, `delta_1 = sum_{odd} d_i [X_i(-1)]`,
/// delta = delta_0 - delta_1.
pub fn delta_classes(graph: &McKayGraph) -> (KClass, KClass, KClass) {
    let mut d0 = KClass::zero();
    let mut d1 = KClass::zero();
    for v in 0..graph.n_vertices {
        if graph.parities[v] == 0 {
            d0.add_term(v, 0, graph.dims[v] as i64);
        } else {
            d1.add_term(v, -1, graph.dims[v] as i64);
        }
    }
    let delta = d0.sub(&d1);
    (d0, d1, delta)
}

/// Rank and degree functionals: rk[X_i(n)] = d_i, deg[X_i(n)] = n d_i.
/// Both vanish on the AR relations, so the raw symbol expansion is safe.
pub fn rank_degree(graph: &McKayGraph, x: &KClass) -> (i64, i64) {
    let mut rk = 0;
    let mut deg = 0;
    for (&(v, n), &c) in &x.terms {
        rk += c * graph.dims[v] as i64;
        deg += c * n * graph.dims[v] as i64;
    }
    (rk, deg)
}

/// Euler pairing <x, y> = dim Hom - dim Ext^1, extended bilinearly over
/// the coordinates normalized to the standard height band.
pub fn euler_pair(engine: &HomEngine, x: &KClass, y: &KClass) -> Result<i64> {
    let h = crate::orientation::standard_height(engine.graph);
    let cx = k_normalize(engine.graph, &h, x)?;
    let cy = k_normalize(engine.graph, &h, y)?;
    let mut acc = 0i64;
    for (v, &a) in cx.iter().enumerate() {
        if a == 0 {
            continue;
        }
        let q = ARVertex {
            vertex: v,
            level: h.values[v],
        };
        for (w, &b) in cy.iter().enumerate() {
            if b == 0 {
                continue;
            }
            let qp = ARVertex {
                vertex: w,
                level: h.values[w],
            };
            acc += a * b * engine.euler_symbol(q, qp)?;
        }
    }
    Ok(acc)
}

/// Symmetrized Euler form (x, y) = <x, y> + <y, x>.
pub fn sym_pair(engine: &HomEngine, x: &KClass, y: &KClass) -> Result<i64> {
    Ok(euler_pair(engine, x, y)? + euler_pair(engine, y, x)?)
}

/// Polarization of a root class by the rank/degree functionals.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Polarization {
    PositiveFree,
    NegativeFree,
    PositiveTorsion,
    NegativeTorsion,
    Zero,
}

impl fmt::Display for Polarization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Polarization::PositiveFree => "positive-free",
            Polarization::NegativeFree => "negative-free",
            Polarization::PositiveTorsion => "positive-torsion",
            Polarization::NegativeTorsion => "negative-torsion",
            Polarization::Zero => "zero",
        };
        write!(f, "{}", s)
    }
}

pub fn polarize(graph: &McKayGraph, x: &KClass) -> Result<Polarization> {
    if x.is_zero() {
        return Ok(Polarization::Zero);
    }
    let (rk, deg) = rank_degree(graph, x);
    Ok(match (rk.signum(), deg.signum()) {
        (1, _) => Polarization::PositiveFree,
        (-1, _) => Polarization::NegativeFree,
        (0, 1) => Polarization::PositiveTorsion,
        (0, -1) => Polarization::NegativeTorsion,
        _ => return Err(Error::Unpolarizable),
    })
}

/// Verify C^g(x) = x - 2 rk(x) delta for every basis class of the given
/// height band, plus classes [X_i(n)] with |n| <= bound, where
/// g = |G|/2 and C is the twist by -2.
pub fn verify_cg(engine: &HomEngine, h: &HeightFunction, bound: i64) -> Result<Vec<Check>> {
    let graph = engine.graph;
    let g = engine.table.group_order as i64 / 2;
    let (_, _, delta) = delta_classes(graph);
    let delta_coords = k_normalize(graph, h, &delta)?;
    let mut checks = Vec::new();
    let mut targets: Vec<KClass> = Vec::new();
    let mut names: Vec<String> = Vec::new();
    for v in 0..graph.n_vertices {
        targets.push(KClass::symbol(graph, v, h.values[v])?);
        names.push(format!("[X_({}, {})]", v, h.values[v]));
    }
    for v in 0..graph.n_vertices {
        for n in -bound..=bound {
            if (n + graph.parities[v] as i64) % 2 == 0 && n != h.values[v] {
                targets.push(KClass::symbol(graph, v, n)?);
                names.push(format!("[X_({}, {})]", v, n));
            }
        }
    }
    targets.push(delta.clone());
    names.push("delta".into());

    for (x, name) in targets.iter().zip(&names) {
        let (rk, _) = rank_degree(graph, x);
        let lhs = k_normalize(graph, h, &twist(x, -2 * g)?)?;
        let base = k_normalize(graph, h, x)?;
        // Translation coefficient: lhs - base must be t * delta with
        // t = -2 rk(x) (the defect identity).
        let diff: Vec<i64> = lhs.iter().zip(&base).map(|(a, b)| a - b).collect();
        let expected: Vec<i64> = delta_coords.iter().map(|d| -2 * rk * d).collect();
        if diff == expected {
            checks.push(Check::pass(
                format!("C^g on {}", name),
                format!("translation by {} delta", -2 * rk),
            ));
        } else {
            checks.push(Check::fail(
                format!("C^g on {}", name),
                format!("got {:?}, expected {:?} (rk = {})", diff, expected, rk),
            ));
        }
    }
    Ok(checks)
}

/// JSON for a k-class.
pub fn kclass_json(x: &KClass) -> serde_json::Value {
    serde_json::json!({
        "terms": x.terms.iter().map(|(&(v, n), &c)| serde_json::json!([v, n, c])).collect::<Vec<_>>(),
    })
}
