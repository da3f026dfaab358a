//! McKay graphs and their affine ADE classification.
//!
//! The graph on Irr(G) has n(i,j) = dim Hom(X_i, X_j (x) V) edges between
//! i and j; for G inside SU(2) with -I in G it is a connected bipartite
//! affine Dynkin diagram. The classifier also returns a deterministic
//! relabeling onto a fixed reference diagram, and the primitive radical
//! vector delta of the associated bilinear form.

use std::fmt;
use std::fmt::Write as _;

use num_integer::Integer;
use num_traits::Zero;

use crate::chartab::CharacterTable;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::root_lattice::RootVector;
use crate::Rat;

/// Affine ADE diagram label. `A(k)` is the (k+1)-cycle, `D(k)` has k+1
/// vertices, `E(6|7|8)` the affine exceptional stars.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AffineType {
    A(usize),
    D(usize),
    E(u8),
}

impl fmt::Display for AffineType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AffineType::A(k) => write!(f, "A~{}", k),
            AffineType::D(k) => write!(f, "D~{}", k),
            AffineType::E(k) => write!(f, "E~{}", k),
        }
    }
}

/// McKay graph of a character table.
pub struct McKayGraph {
    /// Number of vertices = number of irreducibles.
    pub n_vertices: usize,
    /// Symmetric multiplicity matrix with zero diagonal.
    pub edges: Vec<Vec<usize>>,
    /// Irreducible dimensions d_i (the coordinates of delta).
    pub dims: Vec<usize>,
    /// Parities p(i).
    pub parities: Vec<u8>,
    pub affine_type: AffineType,
    /// Primitive positive radical vector of the bilinear form.
    pub delta: RootVector,
    /// `canonical_order[t]` = original vertex at position t of the
    /// reference diagram.
    pub canonical_order: Vec<usize>,
}

impl McKayGraph {
    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges[i]
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(j, &m)| (j, m))
    }

    pub fn degree(&self, i: usize) -> usize {
        self.edges[i].iter().sum()
    }

    /// Undirected edge list with multiplicity expanded, (i, j, copy) with
    /// i of even parity; deterministic order.
    pub fn edge_copies(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n_vertices {
            if self.parities[i] != 0 {
                continue;
            }
            for j in 0..self.n_vertices {
                for c in 0..self.edges[i][j] {
                    out.push((i, j, c));
                }
            }
        }
        out
    }

    /// DOT rendering of the undirected graph.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph mckay {\n");
        for i in 0..self.n_vertices {
            let _ = writeln!(
                s,
                "  v{} [label=\"{} (d={}, p={})\"];",
                i, i, self.dims[i], self.parities[i]
            );
        }
        for i in 0..self.n_vertices {
            for j in i + 1..self.n_vertices {
                for _ in 0..self.edges[i][j] {
                    let _ = writeln!(s, "  v{} -- v{};", i, j);
                }
            }
        }
        s.push_str("}\n");
        s
    }
}

/// Build the McKay graph from a character table.
pub fn mckay_graph(table: &CharacterTable) -> Result<McKayGraph> {
    let n = table.num_chars();
    let mut edges = vec![vec![0usize; n]; n];
    for j in 0..n {
        let f = table.pointwise(&table.chi_v, &table.values[j])?;
        for i in 0..n {
            edges[i][j] = table.mult(i, &f)?;
        }
    }
    for i in 0..n {
        if edges[i][i] != 0 {
            return Err(Error::NotMcKay(format!("loop at vertex {}", i)));
        }
        for j in 0..n {
            if edges[i][j] != edges[j][i] {
                return Err(Error::NotMcKay(format!(
                    "asymmetric multiplicity at ({}, {})",
                    i, j
                )));
            }
            if edges[i][j] > 0 && table.parities[i] == table.parities[j] {
                return Err(Error::NotMcKay(format!(
                    "edge ({}, {}) within one parity",
                    i, j
                )));
            }
        }
    }

    if !is_connected(&edges) {
        return Err(Error::NotMcKay("graph is disconnected".into()));
    }

    // McKay identity 2 d_i = sum_j n(i,j) d_j.
    for i in 0..n {
        let s: usize = (0..n).map(|j| edges[i][j] * table.dims[j]).sum();
        if s != 2 * table.dims[i] {
            return Err(Error::NotMcKay(format!("2 d_i != sum n(i,j) d_j at {}", i)));
        }
    }

    let delta = radical_vector(&edges)?;
    for (i, &d) in table.dims.iter().enumerate() {
        if delta.coords[i] != d as i64 {
            return Err(Error::NotMcKay(format!("delta_{} != d_{}", i, i)));
        }
    }

    let (affine_type, canonical_order) = classify_affine(&edges)?;

    Ok(McKayGraph {
        n_vertices: n,
        edges,
        dims: table.dims.clone(),
        parities: table.parities.clone(),
        affine_type,
        delta,
        canonical_order,
    })
}

fn is_connected(edges: &[Vec<usize>]) -> bool {
    let n = edges.len();
    if n == 0 {
        return false;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for j in 0..n {
            if edges[v][j] > 0 && !seen[j] {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|b| b)
}

/// Primitive all-positive generator of the radical of the form
/// (a_i, a_j) = 2 delta_ij - n(i,j); errors unless the radical has rank 1.
pub fn radical_vector(edges: &[Vec<usize>]) -> Result<RootVector> {
    let n = edges.len();
    let gram = Matrix::from_fn(n, n, |i, j| {
        let v = if i == j { 2i64 } else { -(edges[i][j] as i64) };
        Rat::from_integer(v.into())
    });
    let kernel = gram.kernel_basis();
    if kernel.len() != 1 {
        return Err(Error::NotAffine(format!(
            "radical has rank {}",
            kernel.len()
        )));
    }
    // Scale to a primitive integer vector.
    let v = &kernel[0];
    let mut lcm: num_bigint::BigInt = 1.into();
    for c in v {
        lcm = lcm.lcm(c.denom());
    }
    let ints: Vec<num_bigint::BigInt> = v
        .iter()
        .map(|c| (c * Rat::from_integer(lcm.clone())).to_integer())
        .collect();
    let mut gcd: num_bigint::BigInt = 0.into();
    for c in &ints {
        gcd = gcd.gcd(c);
    }
    if gcd.is_zero() {
        return Err(Error::NotAffine("zero radical vector".into()));
    }
    let mut coords: Vec<i64> = ints
        .iter()
        .map(|c| i64::try_from(c / &gcd).map_err(|_| Error::Internal("radical overflow".into())))
        .collect::<Result<_>>()?;
    if coords.iter().any(|&c| c < 0) {
        for c in &mut coords {
            *c = -*c;
        }
    }
    if coords.iter().any(|&c| c <= 0) {
        return Err(Error::NotAffine(
            "radical vector has a non-positive coordinate".into(),
        ));
    }
    Ok(RootVector { coords })
}

/// Recognize a connected multiplicity matrix as an affine ADE diagram;
/// returns the type and a deterministic relabeling onto the reference
/// diagram (position -> original vertex).
pub fn classify_affine(edges: &[Vec<usize>]) -> Result<(AffineType, Vec<usize>)> {
    let n = edges.len();
    if n == 0 {
        return Err(Error::NotAffine("empty graph".into()));
    }
    if !is_connected(edges) {
        return Err(Error::NotAffine("disconnected".into()));
    }
    let max_mult = edges.iter().flatten().copied().max().unwrap_or(0);
    if n == 2 {
        if edges[0][1] == 2 {
            return Ok((AffineType::A(1), vec![0, 1]));
        }
        return Err(Error::NotAffine("two vertices need a double edge".into()));
    }
    if max_mult > 1 {
        return Err(Error::NotAffine(
            "multi-edge outside the 2-vertex case".into(),
        ));
    }

    let degree = |i: usize| -> usize { edges[i].iter().sum() };
    let degrees: Vec<usize> = (0..n).map(degree).collect();
    let neighbors = |i: usize| -> Vec<usize> { (0..n).filter(|&j| edges[i][j] > 0).collect() };

    if degrees.iter().all(|&d| d == 2) {
        // Cycle: A~(n-1). Start at vertex 0, walk toward its smaller
        // neighbor.
        let mut order = vec![0usize];
        let nb = neighbors(0);
        let mut prev = 0;
        let mut cur = nb[0];
        while cur != 0 {
            order.push(cur);
            let nb = neighbors(cur);
            let next = if nb[0] == prev { nb[1] } else { nb[0] };
            prev = cur;
            cur = next;
        }
        if order.len() != n {
            return Err(Error::NotAffine("cycle does not cover the graph".into()));
        }
        return Ok((AffineType::A(n - 1), order));
    }

    let deg4: Vec<usize> = (0..n).filter(|&i| degrees[i] == 4).collect();
    let deg3: Vec<usize> = (0..n).filter(|&i| degrees[i] == 3).collect();
    if degrees.iter().any(|&d| d > 4) || deg4.len() > 1 || (deg4.len() == 1 && !deg3.is_empty()) {
        return Err(Error::NotAffine(format!("degree sequence {:?}", degrees)));
    }

    if deg4.len() == 1 {
        // D~4: a 4-star.
        if n != 5 {
            return Err(Error::NotAffine("degree-4 vertex outside D~4".into()));
        }
        let c = deg4[0];
        let mut tips = neighbors(c);
        if tips.iter().any(|&t| degrees[t] != 1) {
            return Err(Error::NotAffine("D~4 arms must be single vertices".into()));
        }
        tips.sort_unstable();
        return Ok((
            AffineType::D(4),
            vec![tips[0], tips[1], c, tips[2], tips[3]],
        ));
    }

    // Walk an arm from `fork` starting into `first` until a vertex of
    // degree != 2 is hit; returns the interior path (excluding fork).
    let walk = |fork: usize, first: usize| -> Vec<usize> {
        let mut path = vec![first];
        let mut prev = fork;
        let mut cur = first;
        while degrees[cur] == 2 {
            let nb = neighbors(cur);
            let next = if nb[0] == prev { nb[1] } else { nb[0] };
            prev = cur;
            cur = next;
            path.push(cur);
        }
        path
    };

    match deg3.len() {
        2 => {
            // D~k, k >= 5: two forks, each with two pendant tips, joined
            // by a chain.
            let (f, g) = (deg3[0], deg3[1]);
            let mut f_tips: Vec<usize> = neighbors(f)
                .into_iter()
                .filter(|&v| degrees[v] == 1)
                .collect();
            let mut g_tips: Vec<usize> = neighbors(g)
                .into_iter()
                .filter(|&v| degrees[v] == 1)
                .collect();
            if f_tips.len() != 2 || g_tips.len() != 2 {
                return Err(Error::NotAffine(
                    "forks must carry two pendant tips each".into(),
                ));
            }
            f_tips.sort_unstable();
            g_tips.sort_unstable();
            let chain_start = neighbors(f)
                .into_iter()
                .find(|v| !f_tips.contains(v))
                .ok_or_else(|| Error::NotAffine("missing chain at fork".into()))?;
            let chain = walk(f, chain_start);
            if chain.last() != Some(&g) {
                return Err(Error::NotAffine("forks are not chain-connected".into()));
            }
            if 5 + chain.len() != n {
                return Err(Error::NotAffine(
                    "stray vertices outside the D shape".into(),
                ));
            }
            // Deterministic orientation: the fork with the smaller
            // minimal tip goes first.
            let (a, a_tips, b_tips, chain) = if f_tips[0] < g_tips[0] {
                (f, f_tips, g_tips, chain)
            } else {
                let mut rev: Vec<usize> = chain[..chain.len() - 1].iter().rev().copied().collect();
                rev.push(f);
                (g, g_tips, f_tips, rev)
            };
            let mut order = vec![a_tips[0], a_tips[1], a];
            order.extend(&chain);
            order.push(b_tips[0]);
            order.push(b_tips[1]);
            // positions: 0,1 tips, 2 fork, chain interior, far fork at
            // n-3, far tips at n-2, n-1 -- matches D(k) reference with
            // k = n - 1.
            if order.len() != n {
                return Err(Error::NotAffine("D-shape does not cover the graph".into()));
            }
            Ok((AffineType::D(n - 1), order))
        }
        1 => {
            // Star with three arms: E~6 (2,2,2), E~7 (1,3,3), E~8 (1,2,5).
            let c = deg3[0];
            let mut arms: Vec<Vec<usize>> = neighbors(c).into_iter().map(|v| walk(c, v)).collect();
            if arms.iter().any(|a| degrees[*a.last().unwrap()] != 1) {
                return Err(Error::NotAffine(
                    "arm does not end in a pendant vertex".into(),
                ));
            }
            arms.sort_by_key(|a| (a.len(), a[0]));
            let lens: Vec<usize> = arms.iter().map(Vec::len).collect();
            if 1 + lens.iter().sum::<usize>() != n {
                return Err(Error::NotAffine("stray vertices outside the star".into()));
            }
            let ty = match lens.as_slice() {
                [2, 2, 2] => AffineType::E(6),
                [1, 3, 3] => AffineType::E(7),
                [1, 2, 5] => AffineType::E(8),
                _ => return Err(Error::NotAffine(format!("arm lengths {:?}", lens))),
            };
            let mut order = vec![c];
            for arm in &arms {
                order.extend(arm);
            }
            Ok((ty, order))
        }
        _ => Err(Error::NotAffine(format!(
            "{} trivalent vertices",
            deg3.len()
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::character_table;
    use crate::group::{build_group, GroupSpec};

    fn graph(spec: &str) -> McKayGraph {
        let g = build_group(GroupSpec::parse(spec).unwrap(), 240).unwrap();
        let t = character_table(&g).unwrap();
        mckay_graph(&t).unwrap()
    }

    #[test]
    fn a1_double_edge() {
        let q = graph("cyclic:1");
        assert_eq!(q.n_vertices, 2);
        assert_eq!(q.edges[0][1], 2);
        assert_eq!(q.affine_type, AffineType::A(1));
        assert_eq!(q.delta.coords, vec![1, 1]);
    }

    #[test]
    fn cyclic_order_eight_is_a7() {
        let q = graph("cyclic:4");
        assert_eq!(q.affine_type, AffineType::A(7));
        for i in 0..8 {
            assert_eq!(q.degree(i), 2);
        }
        assert_eq!(q.delta.coords, vec![1; 8]);
    }

    #[test]
    fn icosa_is_e8() {
        let q = graph("icosa");
        assert_eq!(q.affine_type, AffineType::E(8));
        let canonical_dims: Vec<usize> = q.canonical_order.iter().map(|&v| q.dims[v]).collect();
        // Reference order: center, then arms (1), (2), (5) near-to-far.
        assert_eq!(canonical_dims, vec![6, 3, 4, 2, 5, 4, 3, 2, 1]);
    }

    #[test]
    fn family_types() {
        assert_eq!(graph("dihedral:2").affine_type, AffineType::D(4));
        assert_eq!(graph("dihedral:4").affine_type, AffineType::D(6));
        assert_eq!(graph("tetra").affine_type, AffineType::E(6));
        assert_eq!(graph("octa").affine_type, AffineType::E(7));
    }

    #[test]
    fn delta_equals_dims() {
        for spec in ["cyclic:3", "dihedral:3", "tetra", "octa", "icosa"] {
            let q = graph(spec);
            let dims: Vec<i64> = q.dims.iter().map(|&d| d as i64).collect();
            assert_eq!(q.delta.coords, dims);
        }
    }

    #[test]
    fn classify_rejects_non_affine() {
        // Path on 3 vertices (finite A3): radical is trivial.
        let edges = vec![vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, 0]];
        assert!(radical_vector(&edges).is_err());
        // Single simple edge.
        let edges = vec![vec![0, 1], vec![1, 0]];
        assert!(classify_affine(&edges).is_err());
        // Star with arms (1,1,4): not one of the affine shapes.
        let mut edges = vec![vec![0; 7]; 7];
        for (a, b) in [(0, 1), (0, 2), (0, 3), (3, 4), (4, 5), (5, 6)] {
            edges[a][b] = 1;
            edges[b][a] = 1;
        }
        assert!(classify_affine(&edges).is_err());
    }

    #[test]
    fn dot_output_is_stable() {
        let q = graph("cyclic:1");
        let dot = q.to_dot();
        assert!(dot.contains("v0 -- v1;"));
        assert_eq!(dot.matches("v0 -- v1;").count(), 2);
        assert_eq!(dot, q.to_dot());
    }
}
