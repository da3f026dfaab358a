//! Height functions, the induced admissible orientations, elementary
//! reversal operations, and the constructive path between any two height
//! functions.

use std::fmt;

use crate::error::{Error, Result};
use crate::mckay::McKayGraph;

/// Height function h: I -> Z with |h(i) - h(j)| = 1 across edges and
/// h(i) = p(i) mod 2.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HeightFunction {
    pub values: Vec<i64>,
}

impl HeightFunction {
    pub fn new(graph: &McKayGraph, values: Vec<i64>) -> Result<HeightFunction> {
        let h = HeightFunction { values };
        h.validate(graph)?;
        Ok(h)
    }

    pub fn validate(&self, graph: &McKayGraph) -> Result<()> {
        if self.values.len() != graph.n_vertices {
            return Err(Error::BadHeight(format!(
                "{} values for {} vertices",
                self.values.len(),
                graph.n_vertices
            )));
        }
        for (i, &h) in self.values.iter().enumerate() {
            if h.rem_euclid(2) != graph.parities[i] as i64 {
                return Err(Error::BadHeight(format!(
                    "h({}) = {} has the wrong parity",
                    i, h
                )));
            }
            for (j, _) in graph.neighbors(i) {
                if (h - self.values[j]).abs() != 1 {
                    return Err(Error::BadHeight(format!(
                        "|h({}) - h({})| = {} across an edge",
                        i,
                        j,
                        (h - self.values[j]).abs()
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn shifted(&self, by: i64) -> HeightFunction {
        HeightFunction {
            values: self.values.iter().map(|v| v + by).collect(),
        }
    }

    /// Is `i` a sink of Q_h (local minimum of h)?
    pub fn is_sink(&self, graph: &McKayGraph, i: usize) -> bool {
        graph
            .neighbors(i)
            .all(|(j, _)| self.values[j] > self.values[i])
    }

    /// Is `i` a source of Q_h (local maximum of h)?
    pub fn is_source(&self, graph: &McKayGraph, i: usize) -> bool {
        graph
            .neighbors(i)
            .all(|(j, _)| self.values[j] < self.values[i])
    }

    /// Distance d(h, h') = sum |h(i) - h'(i)|.
    pub fn distance(&self, other: &HeightFunction) -> i64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .sum()
    }
}

/// The standard height function: 0 on even-parity vertices, 1 on odd.
pub fn standard_height(graph: &McKayGraph) -> HeightFunction {
    HeightFunction {
        values: graph.parities.iter().map(|&p| p as i64).collect(),
    }
}

/// Reversal direction: `Plus` raises a sink, `Minus` lowers a source.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Dir {
    Plus,
    Minus,
}

impl fmt::Display for Dir {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", if *self == Dir::Plus { "+" } else { "-" })
    }
}

/// Elementary reversal s_i^+/s_i^-: shift h at a sink/source by +-2.
pub fn reverse_at(
    graph: &McKayGraph,
    h: &HeightFunction,
    i: usize,
    dir: Dir,
) -> Result<HeightFunction> {
    match dir {
        Dir::Plus if !h.is_sink(graph, i) => return Err(Error::NotASink(i)),
        Dir::Minus if !h.is_source(graph, i) => return Err(Error::NotASource(i)),
        _ => {}
    }
    let mut values = h.values.clone();
    values[i] += if dir == Dir::Plus { 2 } else { -2 };
    let out = HeightFunction { values };
    out.validate(graph)?;
    Ok(out)
}

/// Directed arrow of Q_h; parallel edges appear as separate copies.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Arrow {
    pub from: usize,
    pub to: usize,
    pub copy: usize,
}

/// The quiver Q_h: edges of the McKay graph directed downhill.
#[derive(Clone, Debug)]
pub struct OrientedQuiver {
    pub height: HeightFunction,
    pub arrows: Vec<Arrow>,
    pub n_vertices: usize,
}

impl OrientedQuiver {
    pub fn arrows_into(&self, i: usize) -> Vec<(usize, Arrow)> {
        self.arrows
            .iter()
            .enumerate()
            .filter(|(_, a)| a.to == i)
            .map(|(idx, a)| (idx, *a))
            .collect()
    }

    pub fn arrows_out_of(&self, i: usize) -> Vec<(usize, Arrow)> {
        self.arrows
            .iter()
            .enumerate()
            .filter(|(_, a)| a.from == i)
            .map(|(idx, a)| (idx, *a))
            .collect()
    }

    /// Orientation equality: same arrow set regardless of the height
    /// representative.
    pub fn same_orientation(&self, other: &OrientedQuiver) -> bool {
        let mut a = self.arrows.clone();
        let mut b = other.arrows.clone();
        a.sort();
        b.sort();
        a == b
    }
}

/// Orient the graph along a height function: i -> j iff h(j) = h(i) - 1.
pub fn orient(graph: &McKayGraph, h: &HeightFunction) -> Result<OrientedQuiver> {
    h.validate(graph)?;
    let mut arrows = Vec::new();
    for (i, j, copy) in graph.edge_copies() {
        if h.values[j] == h.values[i] - 1 {
            arrows.push(Arrow {
                from: i,
                to: j,
                copy,
            });
        } else {
            arrows.push(Arrow {
                from: j,
                to: i,
                copy,
            });
        }
    }
    let q = OrientedQuiver {
        height: h.clone(),
        arrows,
        n_vertices: graph.n_vertices,
    };
    // No oriented cycles: heights strictly decrease along arrows, but
    // verify anyway to catch construction bugs.
    for a in &q.arrows {
        if q.height.values[a.to] >= q.height.values[a.from] {
            return Err(Error::Internal("arrow does not descend".into()));
        }
    }
    Ok(q)
}

/// Connect two height functions by elementary reversals. Each step
/// reduces the distance by exactly 2; the step count is d(h, h')/2.
///
/// Applicable moves are sinks below the target (raise) and sources above
/// it (lower); ties are broken by raising the lowest sink / lowering the
/// highest source first, then by vertex index.
pub fn connect_heights(
    graph: &McKayGraph,
    from: &HeightFunction,
    to: &HeightFunction,
) -> Result<Vec<(usize, Dir)>> {
    from.validate(graph)?;
    to.validate(graph)?;
    let mut cur = from.clone();
    let mut steps = Vec::new();
    let mut dist = cur.distance(to);
    if dist % 2 != 0 {
        return Err(Error::Internal(
            "odd distance between height functions".into(),
        ));
    }
    while dist > 0 {
        let mut best: Option<(i64, usize, Dir)> = None;
        for i in 0..graph.n_vertices {
            if cur.values[i] < to.values[i] && cur.is_sink(graph, i) {
                let key = (cur.values[i], i);
                if best.map_or(true, |(h, v, _)| (key.0, key.1) < (h, v)) {
                    best = Some((key.0, key.1, Dir::Plus));
                }
            } else if cur.values[i] > to.values[i] && cur.is_source(graph, i) {
                let key = (-cur.values[i], i);
                if best.map_or(true, |(h, v, _)| (key.0, key.1) < (h, v)) {
                    best = Some((key.0, key.1, Dir::Minus));
                }
            }
        }
        let Some((_, i, dir)) = best else {
            return Err(Error::Internal(
                "no applicable reversal although d > 0".into(),
            ));
        };
        cur = reverse_at(graph, &cur, i, dir)?;
        steps.push((i, dir));
        let next = cur.distance(to);
        if next != dist - 2 {
            return Err(Error::Internal(
                "reversal did not reduce the distance by 2".into(),
            ));
        }
        dist = next;
    }
    Ok(steps)
}

/// A reversal word moving h to h+-2; every vertex appears exactly once.
/// The sequence is stored in execution order (first reversal first), and
/// the induced Weyl-group element is the composition in that order.
#[derive(Clone, Debug)]
pub struct CoxeterWord {
    pub sequence: Vec<usize>,
    pub dir: Dir,
}

pub fn coxeter_word(graph: &McKayGraph, h: &HeightFunction, dir: Dir) -> Result<CoxeterWord> {
    let target = h.shifted(if dir == Dir::Plus { 2 } else { -2 });
    let steps = connect_heights(graph, h, &target)?;
    let sequence: Vec<usize> = steps.iter().map(|&(i, _)| i).collect();
    let mut seen = vec![false; graph.n_vertices];
    for &i in &sequence {
        if seen[i] {
            return Err(Error::Internal("vertex repeated in a Coxeter word".into()));
        }
        seen[i] = true;
    }
    if !seen.iter().all(|&b| b) {
        return Err(Error::Internal("Coxeter word misses a vertex".into()));
    }
    Ok(CoxeterWord { sequence, dir })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::character_table;
    use crate::group::{build_group, GroupSpec};
    use crate::mckay::mckay_graph;

    fn graph(spec: &str) -> McKayGraph {
        let g = build_group(GroupSpec::parse(spec).unwrap(), 240).unwrap();
        mckay_graph(&character_table(&g).unwrap()).unwrap()
    }

    #[test]
    fn standard_height_is_parity() {
        let q = graph("cyclic:1");
        assert_eq!(standard_height(&q).values, vec![0, 1]);
        let e8 = graph("icosa");
        let h = standard_height(&e8);
        for i in 0..e8.n_vertices {
            assert_eq!(h.values[i], e8.parities[i] as i64);
        }
        h.validate(&e8).unwrap();
    }

    #[test]
    fn orient_standard_points_down() {
        let q = graph("cyclic:2");
        let h = standard_height(&q);
        let oq = orient(&q, &h).unwrap();
        for a in &oq.arrows {
            assert_eq!(q.parities[a.from], 1);
            assert_eq!(q.parities[a.to], 0);
        }
    }

    #[test]
    fn a1_double_arrows() {
        let q = graph("cyclic:1");
        let oq = orient(&q, &standard_height(&q)).unwrap();
        assert_eq!(oq.arrows.len(), 2);
        assert!(oq.arrows.iter().all(|a| a.from == 1 && a.to == 0));
    }

    #[test]
    fn shift_by_two_same_orientation() {
        let q = graph("dihedral:3");
        let h = standard_height(&q);
        let a = orient(&q, &h).unwrap();
        let b = orient(&q, &h.shifted(2)).unwrap();
        assert!(a.same_orientation(&b));
    }

    #[test]
    fn reverse_examples() {
        let q = graph("tetra");
        let h = standard_height(&q);
        let i0 = (0..q.n_vertices).find(|&i| q.parities[i] == 0).unwrap();
        let up = reverse_at(&q, &h, i0, Dir::Plus).unwrap();
        assert_eq!(up.values[i0], 2);
        let back = reverse_at(&q, &up, i0, Dir::Minus).unwrap();
        assert_eq!(back, h);
        let i1 = (0..q.n_vertices).find(|&i| q.parities[i] == 1).unwrap();
        assert!(matches!(
            reverse_at(&q, &h, i1, Dir::Plus),
            Err(Error::NotASink(_))
        ));
    }

    #[test]
    fn connect_trivial_and_single() {
        let q = graph("dihedral:2");
        let h = standard_height(&q);
        assert!(connect_heights(&q, &h, &h).unwrap().is_empty());
        let i0 = (0..q.n_vertices).find(|&i| q.parities[i] == 0).unwrap();
        let h2 = reverse_at(&q, &h, i0, Dir::Plus).unwrap();
        assert_eq!(connect_heights(&q, &h, &h2).unwrap(), vec![(i0, Dir::Plus)]);
    }

    #[test]
    fn coxeter_word_standard_splits_by_parity() {
        for spec in ["cyclic:3", "dihedral:3", "octa", "icosa"] {
            let q = graph(spec);
            let h = standard_height(&q);
            let w = coxeter_word(&q, &h, Dir::Plus).unwrap();
            let n0 = q.parities.iter().filter(|&&p| p == 0).count();
            assert!(w.sequence[..n0].iter().all(|&i| q.parities[i] == 0));
            assert!(w.sequence[n0..].iter().all(|&i| q.parities[i] == 1));
            let wm = coxeter_word(&q, &h, Dir::Minus).unwrap();
            assert!(wm.sequence[..q.n_vertices - n0]
                .iter()
                .all(|&i| q.parities[i] == 1));
        }
    }

    #[test]
    fn word_length_is_half_distance() {
        let q = graph("octa");
        let h = standard_height(&q);
        let target = h.shifted(4);
        let steps = connect_heights(&q, &h, &target).unwrap();
        assert_eq!(steps.len() as i64, h.distance(&target) / 2);
    }
}
