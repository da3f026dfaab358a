//! Explicit representations of the oriented quiver over exact rationals:
//! reflection functors at sinks and sources, endomorphism rings and
//! indecomposability, realization of indecomposables for positive real
//! roots, and the hom functor from the mesh category to representations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::ar_quiver::{ARVertex, HomEngine, KClass, MeshModule};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::mckay::McKayGraph;
use crate::orientation::{orient, reverse_at, Dir, HeightFunction, OrientedQuiver};
use crate::root_lattice::{BilinearForm, RootVector};
use crate::scalar::{rational_reconstruct, Fp};
use crate::{Rat, RatMatrix};

/// Representation of Q_h: a rational vector space per vertex, a matrix
/// per arrow (target-dim x source-dim).
#[derive(Clone, Debug)]
pub struct QuiverRep {
    pub quiver: OrientedQuiver,
    pub dims: Vec<usize>,
    /// One matrix per arrow, indexed like `quiver.arrows`.
    pub maps: Vec<RatMatrix>,
}

impl QuiverRep {
    pub fn zero_rep(quiver: OrientedQuiver) -> QuiverRep {
        let dims = vec![0; quiver.n_vertices];
        let maps = quiver.arrows.iter().map(|_| Matrix::zero(0, 0)).collect();
        QuiverRep { quiver, dims, maps }
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn dim_vector(&self) -> RootVector {
        RootVector {
            coords: self.dims.iter().map(|&d| d as i64).collect(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (a, m) in self.quiver.arrows.iter().zip(&self.maps) {
            if m.nrows() != self.dims[a.to] || m.ncols() != self.dims[a.from] {
                return Err(Error::Internal(format!(
                    "map for {} -> {} has shape {}x{}",
                    a.from,
                    a.to,
                    m.nrows(),
                    m.ncols()
                )));
            }
        }
        Ok(())
    }

    pub fn direct_sum(&self, rhs: &QuiverRep) -> Result<QuiverRep> {
        if !self.quiver.same_orientation(&rhs.quiver) {
            return Err(Error::Internal(
                "direct sum across different orientations".into(),
            ));
        }
        let dims: Vec<usize> = self
            .dims
            .iter()
            .zip(&rhs.dims)
            .map(|(a, b)| a + b)
            .collect();
        let mut maps = Vec::with_capacity(self.maps.len());
        for (idx, a) in self.quiver.arrows.iter().enumerate() {
            // rhs arrow order may differ; find the matching arrow.
            let ridx = rhs
                .quiver
                .arrows
                .iter()
                .position(|b| b == a)
                .ok_or_else(|| Error::Internal("arrow missing in summand".into()))?;
            let (m1, m2) = (&self.maps[idx], &rhs.maps[ridx]);
            let mut m = Matrix::zero(dims[a.to], dims[a.from]);
            for r in 0..m1.nrows() {
                for c in 0..m1.ncols() {
                    m[(r, c)] = m1[(r, c)].clone();
                }
            }
            for r in 0..m2.nrows() {
                for c in 0..m2.ncols() {
                    m[(self.dims[a.to] + r, self.dims[a.from] + c)] = m2[(r, c)].clone();
                }
            }
            maps.push(m);
        }
        Ok(QuiverRep {
            quiver: self.quiver.clone(),
            dims,
            maps,
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let maps: Vec<serde_json::Value> = self
            .quiver
            .arrows
            .iter()
            .zip(&self.maps)
            .map(|(a, m)| {
                let rows: Vec<Vec<String>> = (0..m.nrows())
                    .map(|r| (0..m.ncols()).map(|c| rat_str(&m[(r, c)])).collect())
                    .collect();
                serde_json::json!({
                    "arrow": [a.from, a.to, a.copy],
                    "matrix": rows,
                })
            })
            .collect();
        serde_json::json!({
            "schema": 1,
            "heights": self.quiver.height.values,
            "dims": self.dims,
            "maps": maps,
        })
    }
}

pub fn rat_str(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Simple representation: one-dimensional at `i`, zero elsewhere.
pub fn simple_rep(quiver: OrientedQuiver, i: usize) -> QuiverRep {
    let mut dims = vec![0; quiver.n_vertices];
    dims[i] = 1;
    let maps = quiver
        .arrows
        .iter()
        .map(|a| Matrix::zero(dims[a.to], dims[a.from]))
        .collect();
    QuiverRep { quiver, dims, maps }
}

/// Reflection functor at a sink: replaces the space at `i` by the kernel
/// of the sum map into it and reverses the adjacent arrows.
pub fn reflect_plus(graph: &McKayGraph, m: &QuiverRep, i: usize) -> Result<QuiverRep> {
    if !m.quiver.height.is_sink(graph, i) {
        return Err(Error::NotASink(i));
    }
    let incoming = m.quiver.arrows_into(i);
    let blocks: Vec<(usize, usize)> = incoming.iter().map(|(idx, a)| (*idx, a.from)).collect();
    let total: usize = blocks.iter().map(|&(_, j)| m.dims[j]).sum();
    // Sum map: direct sum of sources -> M_i.
    let mut sum = Matrix::zero(m.dims[i], total);
    let mut off = 0;
    for &(aidx, j) in &blocks {
        let ma = &m.maps[aidx];
        for r in 0..ma.nrows() {
            for c in 0..ma.ncols() {
                sum[(r, off + c)] = ma[(r, c)].clone();
            }
        }
        off += m.dims[j];
    }
    let kernel = sum.kernel_basis();
    let kdim = kernel.len();

    let new_h = reverse_at(graph, &m.quiver.height, i, Dir::Plus)?;
    let new_quiver = orient(graph, &new_h)?;
    let mut dims = m.dims.clone();
    dims[i] = kdim;
    let mut maps = Vec::with_capacity(new_quiver.arrows.len());
    for a in &new_quiver.arrows {
        if a.from == i {
            // Projection of the kernel onto the block of the old arrow
            // (a.to -> i) with the same copy index.
            let (pos, _) = blocks
                .iter()
                .enumerate()
                .find(|(_, &(aidx, _))| {
                    let old = m.quiver.arrows[aidx];
                    old.from == a.to && old.copy == a.copy
                })
                .ok_or_else(|| Error::Internal("no matching reversed arrow".into()))?;
            let off: usize = blocks[..pos].iter().map(|&(_, j)| m.dims[j]).sum();
            let mat = Matrix::from_fn(m.dims[a.to], kdim, |r, c| kernel[c][off + r].clone());
            maps.push(mat);
        } else {
            let old_idx = m
                .quiver
                .arrows
                .iter()
                .position(|b| b == a)
                .ok_or_else(|| Error::Internal("arrow disappeared".into()))?;
            maps.push(m.maps[old_idx].clone());
        }
    }
    let out = QuiverRep {
        quiver: new_quiver,
        dims,
        maps,
    };
    out.validate()?;
    Ok(out)
}

/// Reflection functor at a source: replaces the space at `i` by the
/// cokernel of the map out of it.
pub fn reflect_minus(graph: &McKayGraph, m: &QuiverRep, i: usize) -> Result<QuiverRep> {
    if !m.quiver.height.is_source(graph, i) {
        return Err(Error::NotASource(i));
    }
    let outgoing = m.quiver.arrows_out_of(i);
    let blocks: Vec<(usize, usize)> = outgoing.iter().map(|(idx, a)| (*idx, a.to)).collect();
    let total: usize = blocks.iter().map(|&(_, j)| m.dims[j]).sum();
    // Stacked map M_i -> direct sum of targets.
    let mut stack = Matrix::zero(total, m.dims[i]);
    let mut off = 0;
    for &(aidx, j) in &blocks {
        let ma = &m.maps[aidx];
        for r in 0..ma.nrows() {
            for c in 0..ma.ncols() {
                stack[(off + r, c)] = ma[(r, c)].clone();
            }
        }
        off += m.dims[j];
    }
    // Cokernel: reduce the image row space, project onto free coords.
    let mut image_rows = stack.transpose();
    let pivots = image_rows.rref();
    let mut is_pivot = vec![false; total];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let free: Vec<usize> = (0..total).filter(|&s| !is_pivot[s]).collect();
    let qdim = free.len();
    let mut proj = Matrix::zero(qdim, total);
    for (row, &s) in free.iter().enumerate() {
        proj[(row, s)] = Rat::one();
    }
    for (r, &c) in pivots.iter().enumerate() {
        for (row, &s) in free.iter().enumerate() {
            proj[(row, c)] = -image_rows[(r, s)].clone();
        }
    }

    let new_h = reverse_at(graph, &m.quiver.height, i, Dir::Minus)?;
    let new_quiver = orient(graph, &new_h)?;
    let mut dims = m.dims.clone();
    dims[i] = qdim;
    let mut maps = Vec::with_capacity(new_quiver.arrows.len());
    for a in &new_quiver.arrows {
        if a.to == i {
            let (pos, _) = blocks
                .iter()
                .enumerate()
                .find(|(_, &(aidx, _))| {
                    let old = m.quiver.arrows[aidx];
                    old.to == a.from && old.copy == a.copy
                })
                .ok_or_else(|| Error::Internal("no matching reversed arrow".into()))?;
            let off: usize = blocks[..pos].iter().map(|&(_, j)| m.dims[j]).sum();
            let mat = Matrix::from_fn(qdim, m.dims[a.from], |r, c| proj[(r, off + c)].clone());
            maps.push(mat);
        } else {
            let old_idx = m
                .quiver
                .arrows
                .iter()
                .position(|b| b == a)
                .ok_or_else(|| Error::Internal("arrow disappeared".into()))?;
            maps.push(m.maps[old_idx].clone());
        }
    }
    let out = QuiverRep {
        quiver: new_quiver,
        dims,
        maps,
    };
    out.validate()?;
    Ok(out)
}

/// (dim End, dim rad End): the endomorphism algebra as the solution
/// space of the intertwining system, and the radical of its trace form
/// (which in characteristic zero is the Jacobson radical).
pub fn end_dim(m: &QuiverRep) -> Result<(usize, usize)> {
    let n = m.quiver.n_vertices;
    // Unknown layout: phi_v is dims[v] x dims[v], flattened row-major.
    let mut offsets = vec![0usize; n + 1];
    for v in 0..n {
        offsets[v + 1] = offsets[v] + m.dims[v] * m.dims[v];
    }
    let unknowns = offsets[n];
    if unknowns == 0 {
        return Ok((0, 0));
    }
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for (a, ma) in m.quiver.arrows.iter().zip(&m.maps) {
        let (ds, dt) = (m.dims[a.from], m.dims[a.to]);
        // phi_to * M_a - M_a * phi_from = 0, entry (r, c).
        for r in 0..dt {
            for c in 0..ds {
                let mut row = vec![Rat::zero(); unknowns];
                for k in 0..dt {
                    // phi_to[r][k] * M_a[k][c]
                    row[offsets[a.to] + r * dt + k] += &ma[(k, c)];
                }
                for k in 0..ds {
                    // - M_a[r][k] * phi_from[k][c]
                    row[offsets[a.from] + k * ds + c] -= &ma[(r, k)];
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let kernel = certified_kernel(rows, unknowns)?;
    let e = kernel.len();

    // Trace form on End: G[u][v] = sum_w tr(phi_w psi_w).
    let mut gram = Matrix::zero(e, e);
    for u in 0..e {
        for v in 0..e {
            let mut acc = Rat::zero();
            for w in 0..n {
                let d = m.dims[w];
                for r in 0..d {
                    for c in 0..d {
                        acc +=
                            &kernel[u][offsets[w] + r * d + c] * &kernel[v][offsets[w] + c * d + r];
                    }
                }
            }
            gram[(u, v)] = acc;
        }
    }
    let rad = e - gram.rank();
    Ok((e, rad))
}

/// Absolute indecomposability: dim End - dim rad End = 1.
pub fn is_indecomposable(m: &QuiverRep) -> Result<bool> {
    if m.is_zero() {
        return Err(Error::ZeroRepresentation);
    }
    let (e, rad) = end_dim(m)?;
    Ok(e - rad == 1)
}

/// Exact kernel basis of a sparse rational system: a prime-field kernel
/// with rational reconstruction, verified exactly, falling back to the
/// rational echelon form when verification fails.
fn certified_kernel(rows: Vec<Vec<Rat>>, unknowns: usize) -> Result<Vec<Vec<Rat>>> {
    const P: u64 = 2_147_483_647;
    if rows.is_empty() {
        return Ok((0..unknowns)
            .map(|i| {
                let mut v = vec![Rat::zero(); unknowns];
                v[i] = Rat::one();
                v
            })
            .collect());
    }
    if let Some(kernel) = fp_kernel_attempt(&rows, unknowns, P)? {
        return Ok(kernel);
    }
    // Exact fallback.
    let m = Matrix::from_rows(rows);
    Ok(m.kernel_basis())
}

fn fp_kernel_attempt(rows: &[Vec<Rat>], unknowns: usize, p: u64) -> Result<Option<Vec<Vec<Rat>>>> {
    let big_p = BigInt::from(p);
    let to_fp = |r: &Rat| -> Option<Fp> {
        let den = r.denom().mod_floor(&big_p);
        if den.is_zero() {
            return None;
        }
        let num = r.numer().mod_floor(&big_p);
        let den: u64 = den.try_into().ok()?;
        let num: u64 = num.try_into().ok()?;
        Some(Fp::new(num, p) * crate::scalar::Field::inv(&Fp::new(den, p)))
    };
    let mut fp_rows = Vec::with_capacity(rows.len());
    for row in rows {
        let mut out = Vec::with_capacity(unknowns);
        for r in row {
            match to_fp(r) {
                Some(v) => out.push(v),
                None => return Ok(None),
            }
        }
        fp_rows.push(out);
    }
    let m = Matrix::from_rows(fp_rows);
    let kernel_p = m.kernel_basis();
    // Reconstruct and verify exactly.
    let mut kernel = Vec::with_capacity(kernel_p.len());
    for v in &kernel_p {
        let mut exact = Vec::with_capacity(unknowns);
        for x in v {
            let Some((num, den)) = rational_reconstruct(x.value, p) else {
                return Ok(None);
            };
            exact.push(Rat::new(num.into(), den.into()));
        }
        kernel.push(exact);
    }
    for v in &kernel {
        for row in rows {
            let mut acc = Rat::zero();
            for (a, b) in row.iter().zip(v) {
                if !a.is_zero() && !b.is_zero() {
                    acc += a * b;
                }
            }
            if !acc.is_zero() {
                return Ok(None);
            }
        }
    }
    // The modular rank certifies rank over Q >= rank mod p, so the
    // verified vectors span the whole kernel.
    Ok(Some(kernel))
}

/// Realize the unique indecomposable representation with dimension
/// vector a given positive real root.
///
/// The root is descended to a simple one through rounds of reversal
/// moves on the evolving orientation (reflections with positive pairing
/// preferred, but each round eventually reverses every vertex, so the
/// descent amounts to iterating a Coxeter word); the representation is
/// then rebuilt by the matching functor chain. Classes of rank zero are
/// fixed by the Coxeter iteration up to bounded translation and are not
/// reachable from simples; the search reports a bound error for them.
pub fn realize_root(
    graph: &McKayGraph,
    h: &HeightFunction,
    beta: &RootVector,
) -> Result<QuiverRep> {
    let form = BilinearForm::from_graph(graph);
    if form.norm(beta) != 2 {
        return Err(Error::NotRealRoot(format!("norm {} != 2", form.norm(beta))));
    }
    if beta.coords.iter().any(|&c| c < 0) || beta.is_zero() {
        return Err(Error::NotRealRoot(format!(
            "{:?} is not positive",
            beta.coords
        )));
    }
    let n = graph.n_vertices;
    let level = crate::root_lattice::affine_vertex(graph)
        .map(|a| beta.coords[a].unsigned_abs())
        .unwrap_or(0);
    let g_bar: usize = graph.dims.iter().map(|&d| d * d).sum::<usize>() / 2;
    let bound = 2 * n * g_bar * (level as usize + 3);

    let descent = descend(graph, &form, h, beta, Dir::Plus, bound)
        .or_else(|| descend(graph, &form, h, beta, Dir::Minus, bound))
        .ok_or(Error::WordSearchBound(bound))?;
    let (steps, final_h, simple) = descent;

    let mut rep = simple_rep(orient(graph, &final_h)?, simple);
    for &(j, dir) in steps.iter().rev() {
        rep = match dir {
            // A sink step s_j^+ on heights unwinds through the source
            // functor, and vice versa.
            Dir::Plus => reflect_minus(graph, &rep, j)?,
            Dir::Minus => reflect_plus(graph, &rep, j)?,
        };
    }
    if rep.dim_vector() != *beta {
        return Err(Error::Internal(format!(
            "realized dimension {:?} != {:?}",
            rep.dim_vector().coords,
            beta.coords
        )));
    }
    Ok(rep)
}

/// One-directional descent: reverse sinks (dir = Plus) or sources
/// (dir = Minus) in rounds covering every vertex, preferring moves with
/// positive pairing. Returns the step list, the final height function,
/// and the simple-root vertex reached.
fn descend(
    graph: &McKayGraph,
    form: &BilinearForm,
    h: &HeightFunction,
    beta: &RootVector,
    dir: Dir,
    bound: usize,
) -> Option<(Vec<(usize, Dir)>, HeightFunction, usize)> {
    let n = graph.n_vertices;
    let mut cur = beta.clone();
    let mut cur_h = h.clone();
    let mut steps = Vec::new();
    let mut round_done = vec![false; n];
    loop {
        if let Some(j) = (0..n).find(|&j| cur == RootVector::simple(n, j)) {
            return Some((steps, cur_h, j));
        }
        if steps.len() >= bound {
            return None;
        }
        if round_done.iter().all(|&b| b) {
            round_done = vec![false; n];
        }
        let applicable = |j: usize| match dir {
            Dir::Plus => cur_h.is_sink(graph, j),
            Dir::Minus => cur_h.is_source(graph, j),
        };
        // Prefer positive pairing (strict height progress), then order
        // by height toward the move direction, then by index.
        let mut best: Option<(i64, i64, usize)> = None;
        for j in 0..n {
            if round_done[j] || !applicable(j) {
                continue;
            }
            let pairing = form.eval(&cur, &RootVector::simple(n, j));
            let height_key = match dir {
                Dir::Plus => cur_h.values[j],
                Dir::Minus => -cur_h.values[j],
            };
            let key = (-pairing.signum(), height_key, j);
            if best.map_or(true, |b| key < b) {
                best = Some(key);
            }
        }
        // A fresh round always has a sink and a source, so this only
        // triggers when the remaining unreflected vertices are interior;
        // restart the round.
        let Some((_, _, j)) = best else {
            round_done = vec![false; n];
            continue;
        };
        cur = form.reflect(j, &cur);
        if cur.coords.iter().any(|&c| c < 0) {
            // A positive real root can only exit the cone through a
            // simple root, which is caught above.
            return None;
        }
        cur_h = match reverse_at(graph, &cur_h, j, dir) {
            Ok(h) => h,
            Err(_) => return None,
        };
        round_done[j] = true;
        steps.push((j, dir));
    }
}

/// Object-level hom functor at a vertex weakly above the height band:
/// the space at i is the essential-path space from (i, h_i) to q, and
/// arrows act by precomposition.
pub fn phi_object(engine: &HomEngine, h: &HeightFunction, q: ARVertex) -> Result<QuiverRep> {
    let graph = engine.graph;
    h.validate(graph)?;
    ARVertex::new(graph, q.vertex, q.level)?;
    if q.level < h.values[q.vertex] {
        return Err(Error::BelowBand(q.vertex, q.level));
    }
    let n_min = *h.values.iter().min().unwrap();
    let module = MeshModule::build(graph, n_min, q.level.max(n_min), q)?;
    let quiver = orient(graph, h)?;
    let mut dims = vec![0usize; graph.n_vertices];
    for v in 0..graph.n_vertices {
        dims[v] = module.dim(ARVertex {
            vertex: v,
            level: h.values[v],
        })?;
    }
    let mut maps = Vec::with_capacity(quiver.arrows.len());
    for a in &quiver.arrows {
        // Arrow a: from -> to with h(to) = h(from) - 1; the
        // corresponding mesh edge is (to, h_to) -> (from, h_from), and
        // precomposition with it maps the space at `from` to the space
        // at `to`. Above the target level the source space vanishes.
        let mat = if h.values[a.to] >= q.level {
            Matrix::zero(dims[a.to], dims[a.from])
        } else {
            module
                .edge_map(a.to, a.from, a.copy, h.values[a.to])?
                .clone()
        };
        maps.push(mat);
    }
    let rep = QuiverRep { quiver, dims, maps };
    rep.validate()?;
    // The dimension vector must be the lattice image of [X_q].
    let class = KClass::symbol(graph, q.vertex, q.level)?;
    let expect = crate::ar_quiver::rphi(engine, h, &class)?;
    if rep.dim_vector() != expect {
        return Err(Error::Internal(format!(
            "hom-functor dimensions {:?} != lattice image {:?}",
            rep.dim_vector().coords,
            expect.coords
        )));
    }
    Ok(rep)
}
