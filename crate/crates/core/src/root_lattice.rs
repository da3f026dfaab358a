//! The affine root lattice L(Q) = Z^I: bilinear form, simple
//! reflections, Coxeter words, root enumeration, and the closed-form
//! model of the cycle case used as an independent oracle.

use std::collections::BTreeSet;
use std::ops::{Add, Neg, Sub};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::mckay::McKayGraph;
use crate::orientation::CoxeterWord;
use crate::Rat;

/// Integer lattice element, coordinates over the simple roots.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct RootVector {
    pub coords: Vec<i64>,
}

impl RootVector {
    pub fn zero(n: usize) -> RootVector {
        RootVector { coords: vec![0; n] }
    }

    pub fn simple(n: usize, i: usize) -> RootVector {
        let mut coords = vec![0; n];
        coords[i] = 1;
        RootVector { coords }
    }

    pub fn scaled(&self, c: i64) -> RootVector {
        RootVector {
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn height(&self) -> i64 {
        self.coords.iter().sum()
    }
}

impl Add for &RootVector {
    type Output = RootVector;
    fn add(self, rhs: &RootVector) -> RootVector {
        RootVector {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &RootVector {
    type Output = RootVector;
    fn sub(self, rhs: &RootVector) -> RootVector {
        RootVector {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &RootVector {
    type Output = RootVector;
    fn neg(self) -> RootVector {
        RootVector {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

/// The symmetric bilinear form (a_i, a_i) = 2, (a_i, a_j) = -n(i,j).
#[derive(Clone, Debug)]
pub struct BilinearForm {
    pub gram: Vec<Vec<i64>>,
}

impl BilinearForm {
    pub fn from_graph(graph: &McKayGraph) -> BilinearForm {
        let n = graph.n_vertices;
        let gram = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            2
                        } else {
                            -(graph.edges[i][j] as i64)
                        }
                    })
                    .collect()
            })
            .collect();
        BilinearForm { gram }
    }

    pub fn eval(&self, x: &RootVector, y: &RootVector) -> i64 {
        let mut acc = 0;
        for (i, &xi) in x.coords.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.coords.iter().enumerate() {
                acc += xi * self.gram[i][j] * yj;
            }
        }
        acc
    }

    pub fn norm(&self, x: &RootVector) -> i64 {
        self.eval(x, x)
    }

    /// Simple reflection s_i(x) = x - (x, a_i) a_i.
    pub fn reflect(&self, i: usize, x: &RootVector) -> RootVector {
        let mut coords = x.coords.clone();
        let pairing: i64 = (0..coords.len())
            .map(|j| self.gram[i][j] * x.coords[j])
            .sum();
        coords[i] -= pairing;
        RootVector { coords }
    }

    /// Apply the reflections of a Coxeter word in execution order.
    pub fn apply_word(&self, word: &CoxeterWord, x: &RootVector) -> RootVector {
        self.apply_sequence(&word.sequence, x)
    }

    pub fn apply_sequence(&self, seq: &[usize], x: &RootVector) -> RootVector {
        let mut cur = x.clone();
        for &i in seq {
            cur = self.reflect(i, &cur);
        }
        cur
    }
}

/// A root found by enumeration.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct TaggedRoot {
    pub vector: RootVector,
    pub imaginary: bool,
    /// Coefficient at the distinguished affine vertex; for imaginary
    /// roots this is the multiple of delta.
    pub delta_level: i64,
}

/// Distinguished affine vertex: the smallest index with delta_i = 1.
pub fn affine_vertex(graph: &McKayGraph) -> Result<usize> {
    graph
        .delta
        .coords
        .iter()
        .position(|&c| c == 1)
        .ok_or_else(|| Error::NotAffine("no delta coordinate equals 1".into()))
}

/// Roots of the finite system obtained by deleting the affine vertex,
/// embedded with coordinate 0 there: the reflection-orbit closure of the
/// remaining simple roots.
pub fn finite_roots(graph: &McKayGraph, form: &BilinearForm) -> Result<BTreeSet<RootVector>> {
    let a = affine_vertex(graph)?;
    let n = graph.n_vertices;
    let mut roots: BTreeSet<RootVector> = BTreeSet::new();
    let mut queue: Vec<RootVector> = (0..n)
        .filter(|&i| i != a)
        .map(|i| RootVector::simple(n, i))
        .collect();
    for r in &queue {
        roots.insert(r.clone());
    }
    while let Some(r) = queue.pop() {
        for i in 0..n {
            if i == a {
                continue;
            }
            let s = form.reflect(i, &r);
            if !roots.contains(&s) {
                roots.insert(s.clone());
                queue.push(s);
            }
        }
    }
    Ok(roots)
}

/// All real roots (norm 2) with every coordinate bounded by
/// `height_bound` in absolute value, plus the imaginary roots k delta
/// with 0 < |k| <= `delta_level` inside the same box.
pub fn enumerate_roots(
    graph: &McKayGraph,
    form: &BilinearForm,
    delta_level: i64,
    height_bound: i64,
) -> Result<Vec<TaggedRoot>> {
    let a = affine_vertex(graph)?;
    let delta = &graph.delta;
    let mut out = BTreeSet::new();
    for y in finite_roots(graph, form)? {
        // x = y + k delta; bound k so every coordinate stays in the box.
        let mut k_min = i64::MIN;
        let mut k_max = i64::MAX;
        for (i, &d) in delta.coords.iter().enumerate() {
            let lo = -(height_bound + y.coords[i]);
            let hi = height_bound - y.coords[i];
            k_min = k_min.max((lo + d - 1).div_euclid(d));
            k_max = k_max.min(hi.div_euclid(d));
        }
        for k in k_min..=k_max {
            let x = &y + &delta.scaled(k);
            debug_assert_eq!(form.norm(&x), 2);
            out.insert(TaggedRoot {
                delta_level: x.coords[a],
                vector: x,
                imaginary: false,
            });
        }
    }
    for k in -delta_level..=delta_level {
        if k == 0 {
            continue;
        }
        let x = delta.scaled(k);
        if x.coords.iter().all(|c| c.abs() <= height_bound) {
            out.insert(TaggedRoot {
                vector: x,
                imaginary: true,
                delta_level: k,
            });
        }
    }
    Ok(out.into_iter().collect())
}

/// The closed-form model of the affine root system of an even cycle of
/// length n: vectors in the basis (delta, e_0, ..., e_{n-1}) with
/// (e_i, e_j) = delta_ij and delta isotropic and orthogonal to all e_i.
pub struct AnModel {
    pub n: usize,
    /// Images of the abstract simple roots, in the cycle labeling:
    /// alpha_t -> e_t - e_{t+1} + (1/n) delta.
    pub simple_images: Vec<ModelVector>,
    /// `cycle[t]` = original graph vertex at cycle position t (parity of t
    /// matches the vertex parity).
    pub cycle: Vec<usize>,
    /// Inverse of `cycle`.
    pub position: Vec<usize>,
}

/// Vector a delta + sum c_i e_i with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModelVector {
    pub delta_coeff: Rat,
    pub e_coeffs: Vec<Rat>,
}

impl ModelVector {
    pub fn zero(n: usize) -> ModelVector {
        ModelVector {
            delta_coeff: Rat::zero(),
            e_coeffs: vec![Rat::zero(); n],
        }
    }

    pub fn basis_e(n: usize, i: usize) -> ModelVector {
        let mut v = ModelVector::zero(n);
        v.e_coeffs[i] = Rat::from_integer(1.into());
        v
    }

    pub fn delta(n: usize) -> ModelVector {
        let mut v = ModelVector::zero(n);
        v.delta_coeff = Rat::from_integer(1.into());
        v
    }

    pub fn add(&self, rhs: &ModelVector) -> ModelVector {
        ModelVector {
            delta_coeff: &self.delta_coeff + &rhs.delta_coeff,
            e_coeffs: self
                .e_coeffs
                .iter()
                .zip(&rhs.e_coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> ModelVector {
        ModelVector {
            delta_coeff: &self.delta_coeff * c,
            e_coeffs: self.e_coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Inner product: (e_i, e_j) = delta_ij, delta orthogonal to
    /// everything including itself.
    pub fn pair(&self, rhs: &ModelVector) -> Rat {
        self.e_coeffs
            .iter()
            .zip(&rhs.e_coeffs)
            .map(|(a, b)| a * b)
            .sum()
    }
}

impl AnModel {
    /// Build the model for the McKay graph of a cyclic group whose graph
    /// is an even cycle of length n >= 2 (the 2-vertex double-edge graph
    /// counts as the 2-cycle).
    pub fn new(graph: &McKayGraph) -> Result<AnModel> {
        let n = graph.n_vertices;
        let cycle_ok = match graph.affine_type {
            crate::mckay::AffineType::A(k) => k + 1 == n,
            _ => false,
        };
        if !cycle_ok {
            return Err(Error::NotAffine(format!(
                "model needs a cycle, got {}",
                graph.affine_type
            )));
        }
        if n % 2 != 0 {
            return Err(Error::OddCycle(n));
        }
        let cycle = graph.canonical_order.clone();
        // The canonical cycle order must start at an even-parity vertex;
        // position parity then matches vertex parity around the cycle.
        if graph.parities[cycle[0]] != 0 {
            return Err(Error::Internal(
                "canonical cycle starts at odd parity".into(),
            ));
        }
        let mut position = vec![0usize; n];
        for (t, &v) in cycle.iter().enumerate() {
            position[v] = t;
        }
        let frac = Rat::new(1.into(), (n as i64).into());
        let simple_images: Vec<ModelVector> = (0..n)
            .map(|t| {
                let mut v = ModelVector::zero(n);
                v.e_coeffs[t] = Rat::from_integer(1.into());
                v.e_coeffs[(t + 1) % n] = Rat::from_integer((-1).into());
                v.delta_coeff = frac.clone();
                v
            })
            .collect();
        let model = AnModel {
            n,
            simple_images,
            cycle,
            position,
        };
        // The map must be an isometry onto the simple roots, and their
        // sum must be delta.
        let form = BilinearForm::from_graph(graph);
        for s in 0..n {
            for t in 0..n {
                let lhs = model.simple_images[s].pair(&model.simple_images[t]);
                let rhs = form.eval(
                    &RootVector::simple(n, model.cycle[s]),
                    &RootVector::simple(n, model.cycle[t]),
                );
                if lhs != Rat::from_integer(rhs.into()) {
                    return Err(Error::Internal(format!(
                        "model form mismatch at ({}, {})",
                        s, t
                    )));
                }
            }
        }
        if model.to_model(&graph.delta) != ModelVector::delta(n) {
            return Err(Error::Internal("model delta mismatch".into()));
        }
        Ok(model)
    }

    /// Image of an abstract lattice vector.
    pub fn to_model(&self, x: &RootVector) -> ModelVector {
        let mut acc = ModelVector::zero(self.n);
        for (v, &c) in x.coords.iter().enumerate() {
            if c != 0 {
                let img = &self.simple_images[self.position[v]];
                acc = acc.add(&img.scale(&Rat::from_integer(c.into())));
            }
        }
        acc
    }

    /// Preimage of a model vector, if it lies in the lattice image.
    pub fn from_model(&self, v: &ModelVector) -> Result<RootVector> {
        // Solve sum_t c_t (e_t - e_{t+1} + delta/n) = v.
        let n = self.n;
        let rows = n + 1;
        let mat = Matrix::from_fn(rows, n, |r, t| {
            if r < n {
                let mut val = Rat::zero();
                if r == t {
                    val += Rat::from_integer(1.into());
                }
                if r == (t + 1) % n {
                    val -= Rat::from_integer(1.into());
                }
                val
            } else {
                Rat::new(1.into(), (n as i64).into())
            }
        });
        let mut b: Vec<Rat> = v.e_coeffs.clone();
        b.push(v.delta_coeff.clone());
        let x = mat
            .solve(&b)
            .ok_or_else(|| Error::Internal("model vector outside the lattice image".into()))?;
        if mat.mul_vec(&x) != b {
            return Err(Error::Internal("model solve mismatch".into()));
        }
        let mut coords = vec![0i64; n];
        for (t, c) in x.iter().enumerate() {
            if !c.is_integer() {
                return Err(Error::Internal(format!(
                    "non-integral model coordinate {}",
                    c
                )));
            }
            coords[self.cycle[t]] = i64::try_from(c.to_integer())
                .map_err(|_| Error::Internal("model coordinate overflow".into()))?;
        }
        Ok(RootVector { coords })
    }

    /// Model-side simple reflection at cycle position t.
    pub fn reflect(&self, t: usize, v: &ModelVector) -> ModelVector {
        let alpha = &self.simple_images[t];
        let c = v.pair(alpha);
        v.add(&alpha.scale(&-c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::character_table;
    use crate::group::{build_group, GroupSpec};
    use crate::mckay::mckay_graph;
    use crate::orientation::{coxeter_word, standard_height, Dir};

    fn graph(spec: &str) -> McKayGraph {
        let g = build_group(GroupSpec::parse(spec).unwrap(), 240).unwrap();
        mckay_graph(&character_table(&g).unwrap()).unwrap()
    }

    #[test]
    fn form_examples() {
        let q = graph("cyclic:1");
        let form = BilinearForm::from_graph(&q);
        let a0 = RootVector::simple(2, 0);
        let a1 = RootVector::simple(2, 1);
        assert_eq!(form.eval(&a0, &a0), 2);
        assert_eq!(form.eval(&a0, &a1), -2);
        for x in [&a0, &a1, &(&a0 - &a1)] {
            assert_eq!(form.eval(&q.delta, x), 0);
        }
    }

    #[test]
    fn reflection_examples() {
        let q = graph("tetra");
        let form = BilinearForm::from_graph(&q);
        let n = q.n_vertices;
        for i in 0..n {
            let ai = RootVector::simple(n, i);
            assert_eq!(form.reflect(i, &ai), ai.scaled(-1));
            assert_eq!(form.reflect(i, &q.delta), q.delta);
            let x = RootVector {
                coords: (0..n as i64).collect(),
            };
            assert_eq!(form.reflect(i, &form.reflect(i, &x)), x);
        }
    }

    #[test]
    fn coxeter_word_fixes_delta() {
        for spec in ["cyclic:2", "dihedral:3", "tetra"] {
            let q = graph(spec);
            let form = BilinearForm::from_graph(&q);
            let w = coxeter_word(&q, &standard_height(&q), Dir::Plus).unwrap();
            assert_eq!(form.apply_word(&w, &q.delta), q.delta);
        }
    }

    #[test]
    fn word_inverse_is_identity() {
        let q = graph("octa");
        let form = BilinearForm::from_graph(&q);
        let h = standard_height(&q);
        let plus = coxeter_word(&q, &h, Dir::Plus).unwrap();
        let x = RootVector {
            coords: (0..q.n_vertices).map(|i| (i as i64) - 3).collect(),
        };
        let y = form.apply_word(&plus, &x);
        let mut back = plus.sequence.clone();
        back.reverse();
        assert_eq!(form.apply_sequence(&back, &y), x);
    }

    #[test]
    fn enumerate_a1() {
        let q = graph("cyclic:1");
        let form = BilinearForm::from_graph(&q);
        let roots = enumerate_roots(&q, &form, 1, 1).unwrap();
        let reals: BTreeSet<Vec<i64>> = roots
            .iter()
            .filter(|r| !r.imaginary)
            .map(|r| r.vector.coords.clone())
            .collect();
        let expect: BTreeSet<Vec<i64>> = [vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]]
            .into_iter()
            .collect();
        assert_eq!(reals, expect);
        let imag: BTreeSet<Vec<i64>> = roots
            .iter()
            .filter(|r| r.imaginary)
            .map(|r| r.vector.coords.clone())
            .collect();
        assert_eq!(imag, [vec![1, 1], vec![-1, -1]].into_iter().collect());
    }

    #[test]
    fn a3_twelve_reals_per_level() {
        let q = graph("cyclic:2");
        let form = BilinearForm::from_graph(&q);
        let roots = enumerate_roots(&q, &form, 0, 6).unwrap();
        for level in -2i64..=2 {
            let count = roots
                .iter()
                .filter(|r| !r.imaginary && r.delta_level == level)
                .count();
            assert_eq!(count, 12, "level {}", level);
        }
        // delta/2 is not integral, so no imaginary root has level 1/2;
        // every imaginary root is an exact multiple of delta.
        let roots = enumerate_roots(&q, &form, 3, 6).unwrap();
        for r in roots.iter().filter(|r| r.imaginary) {
            assert_eq!(r.vector, q.delta.scaled(r.delta_level));
        }
    }

    #[test]
    fn brute_force_norm2_box_agrees() {
        // Independent check of the root enumeration on the 4-cycle: scan
        // the whole coordinate box for norm-2 vectors.
        let q = graph("cyclic:2");
        let form = BilinearForm::from_graph(&q);
        let h = 2i64;
        let mut brute = BTreeSet::new();
        let n = q.n_vertices;
        let mut v = vec![-h; n];
        loop {
            let x = RootVector { coords: v.clone() };
            if form.norm(&x) == 2 {
                brute.insert(x.coords.clone());
            }
            let mut k = 0;
            loop {
                if k == n {
                    break;
                }
                v[k] += 1;
                if v[k] <= h {
                    break;
                }
                v[k] = -h;
                k += 1;
            }
            if k == n {
                break;
            }
        }
        let enumerated: BTreeSet<Vec<i64>> = enumerate_roots(&q, &form, 0, h)
            .unwrap()
            .into_iter()
            .filter(|r| !r.imaginary)
            .map(|r| r.vector.coords)
            .collect();
        assert_eq!(enumerated, brute);
    }

    #[test]
    fn reflection_orbit_matches_enumeration() {
        // Reals in a window are exactly the reflection orbit of the
        // simples, intersected with the window (generated in a larger
        // box so orbits can re-enter).
        for spec in ["cyclic:2", "dihedral:2"] {
            let q = graph(spec);
            let form = BilinearForm::from_graph(&q);
            let inner = 2i64;
            let outer = inner + 4;
            let n = q.n_vertices;
            let mut orbit: BTreeSet<RootVector> = BTreeSet::new();
            let mut queue: Vec<RootVector> = (0..n).map(|i| RootVector::simple(n, i)).collect();
            queue.extend((0..n).map(|i| RootVector::simple(n, i).scaled(-1)));
            for r in &queue {
                orbit.insert(r.clone());
            }
            while let Some(r) = queue.pop() {
                for i in 0..n {
                    let s = form.reflect(i, &r);
                    if s.coords.iter().all(|c| c.abs() <= outer) && !orbit.contains(&s) {
                        orbit.insert(s.clone());
                        queue.push(s);
                    }
                }
            }
            let orbit_in_box: BTreeSet<Vec<i64>> = orbit
                .into_iter()
                .filter(|r| r.coords.iter().all(|c| c.abs() <= inner))
                .map(|r| r.coords)
                .collect();
            let enumerated: BTreeSet<Vec<i64>> = enumerate_roots(&q, &form, 0, inner)
                .unwrap()
                .into_iter()
                .filter(|r| !r.imaginary)
                .map(|r| r.vector.coords)
                .collect();
            assert_eq!(enumerated, orbit_in_box);
        }
    }

    #[test]
    fn coxeter_acts_freely_on_positive_rank_roots() {
        // Roots of positive rank (free-sheaf classes) are never fixed by
        // the Coxeter element.
        for spec in ["cyclic:2", "dihedral:2", "tetra"] {
            let q = graph(spec);
            let form = BilinearForm::from_graph(&q);
            let w = coxeter_word(&q, &standard_height(&q), Dir::Plus).unwrap();
            let rank_of = |v: &RootVector| -> i64 {
                (0..q.n_vertices)
                    .map(|i| {
                        let sign = if q.parities[i] == 0 { 1 } else { -1 };
                        sign * q.dims[i] as i64 * v.coords[i]
                    })
                    .sum()
            };
            for r in enumerate_roots(&q, &form, 0, 3).unwrap() {
                if r.imaginary || rank_of(&r.vector) <= 0 {
                    continue;
                }
                assert_ne!(form.apply_word(&w, &r.vector), r.vector, "{}", spec);
            }
        }
    }

    #[test]
    fn coxeter_element_independent_of_word() {
        // Different valid reversal words for the same height induce the
        // same lattice map: permute the order of independent sinks.
        let q = graph("octa");
        let form = BilinearForm::from_graph(&q);
        let h = standard_height(&q);
        let canonical = coxeter_word(&q, &h, Dir::Plus).unwrap();
        let sinks: Vec<usize> = (0..q.n_vertices).filter(|&i| q.parities[i] == 0).collect();
        let sources: Vec<usize> = (0..q.n_vertices).filter(|&i| q.parities[i] == 1).collect();
        // Any order within each parity class is a valid word for the
        // standard height (all of one class are independent sinks).
        let mut variant: Vec<usize> = sinks.iter().rev().copied().collect();
        variant.extend(sources.iter().rev().copied());
        for v in 0..q.n_vertices {
            let x = RootVector::simple(q.n_vertices, v);
            assert_eq!(
                form.apply_word(&canonical, &x),
                form.apply_sequence(&variant, &x)
            );
        }
    }

    #[test]
    fn an_model_basics() {
        let q = graph("cyclic:3");
        let form = BilinearForm::from_graph(&q);
        let model = AnModel::new(&q).unwrap();
        let n = model.n;
        // Sum of simple roots is delta; the abstract delta maps to the
        // model delta.
        assert_eq!(model.to_model(&q.delta), ModelVector::delta(n));
        // Form agreement on all pairs of simples.
        for s in 0..n {
            for t in 0..n {
                let lhs = model.simple_images[s].pair(&model.simple_images[t]);
                let rhs = form.eval(
                    &RootVector::simple(n, model.cycle[s]),
                    &RootVector::simple(n, model.cycle[t]),
                );
                assert_eq!(lhs, Rat::from_integer(rhs.into()));
            }
        }
        // s_t(e_t) = e_{t+1} - delta/n.
        for t in 0..n {
            let img = model.reflect(t, &ModelVector::basis_e(n, t));
            let mut expect = ModelVector::basis_e(n, (t + 1) % n);
            expect.delta_coeff = -Rat::new(1.into(), (n as i64).into());
            assert_eq!(img, expect);
        }
        // Round trip through the abstract lattice.
        for t in 0..n {
            let alpha = RootVector::simple(n, model.cycle[t]);
            assert_eq!(model.from_model(&model.to_model(&alpha)).unwrap(), alpha);
        }
    }

    #[test]
    fn an_model_rejects_non_cycles() {
        assert!(matches!(
            AnModel::new(&graph("dihedral:2")),
            Err(Error::NotAffine(_))
        ));
    }
}
