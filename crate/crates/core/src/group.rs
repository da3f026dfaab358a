//! Finite subgroups of SU(2) containing -I: the binary cyclic, dihedral,
//! tetrahedral, octahedral and icosahedral families.
//!
//! Groups are built by breadth-first closure of explicit generator
//! matrices with exact cyclotomic entries; unitarity, determinant and
//! the expected order are all verified during construction.

use std::collections::HashMap;
use std::fmt;

use crate::cyclo::Cyclo;
use crate::error::{Error, Result};
use crate::Rat;

/// Default cap on the group order (`MCKAY_LAB_MAX_ORDER` overrides it in
/// the CLI).
pub const DEFAULT_MAX_ORDER: usize = 240;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Family {
    BinaryCyclic,
    BinaryDihedral,
    BinaryTetrahedral,
    BinaryOctahedral,
    BinaryIcosahedral,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::BinaryCyclic => "binary-cyclic",
            Family::BinaryDihedral => "binary-dihedral",
            Family::BinaryTetrahedral => "binary-tetrahedral",
            Family::BinaryOctahedral => "binary-octahedral",
            Family::BinaryIcosahedral => "binary-icosahedral",
        }
    }
}

/// Parsed group specification, e.g. `cyclic:3` or `icosa`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct GroupSpec {
    pub family: Family,
    pub param: usize,
}

impl GroupSpec {
    pub fn parse(s: &str) -> Result<GroupSpec> {
        let (head, param) = match s.split_once(':') {
            Some((h, p)) => {
                let n: usize = p.parse().map_err(|_| Error::BadGroupSpec(s.to_string()))?;
                (h, Some(n))
            }
            None => (s, None),
        };
        let spec = match (head, param) {
            ("cyclic", Some(n)) if n >= 1 => GroupSpec {
                family: Family::BinaryCyclic,
                param: n,
            },
            ("dihedral", Some(n)) if n >= 1 => GroupSpec {
                family: Family::BinaryDihedral,
                param: n,
            },
            ("tetra", None) => GroupSpec {
                family: Family::BinaryTetrahedral,
                param: 0,
            },
            ("octa", None) => GroupSpec {
                family: Family::BinaryOctahedral,
                param: 0,
            },
            ("icosa", None) => GroupSpec {
                family: Family::BinaryIcosahedral,
                param: 0,
            },
            _ => return Err(Error::BadGroupSpec(s.to_string())),
        };
        Ok(spec)
    }

    /// Order of the group this spec describes.
    pub fn order(&self) -> usize {
        match self.family {
            Family::BinaryCyclic => 2 * self.param,
            Family::BinaryDihedral => 4 * self.param,
            Family::BinaryTetrahedral => 24,
            Family::BinaryOctahedral => 48,
            Family::BinaryIcosahedral => 120,
        }
    }

    /// Conductor of the cyclotomic field housing all matrix entries and
    /// character values of this group.
    pub fn conductor(&self) -> u32 {
        match self.family {
            Family::BinaryCyclic => 2 * self.param as u32,
            Family::BinaryDihedral => num_integer::lcm(4, 2 * self.param as u32),
            Family::BinaryTetrahedral | Family::BinaryOctahedral => 24,
            Family::BinaryIcosahedral => 60,
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::BinaryCyclic => write!(f, "cyclic:{}", self.param),
            Family::BinaryDihedral => write!(f, "dihedral:{}", self.param),
            Family::BinaryTetrahedral => write!(f, "tetra"),
            Family::BinaryOctahedral => write!(f, "octa"),
            Family::BinaryIcosahedral => write!(f, "icosa"),
        }
    }
}

/// 2x2 matrix over a cyclotomic field; always unitary with determinant 1
/// once inside a [`FiniteSubgroup`].
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroupElement {
    /// Entries [a, b, c, d] for [[a, b], [c, d]].
    pub entries: [Cyclo; 4],
}

impl GroupElement {
    pub fn new(a: Cyclo, b: Cyclo, c: Cyclo, d: Cyclo) -> GroupElement {
        GroupElement {
            entries: [a, b, c, d],
        }
    }

    pub fn identity() -> GroupElement {
        GroupElement::new(Cyclo::one(), Cyclo::zero(), Cyclo::zero(), Cyclo::one())
    }

    pub fn minus_identity() -> GroupElement {
        GroupElement::new(
            Cyclo::from_int(-1),
            Cyclo::zero(),
            Cyclo::zero(),
            Cyclo::from_int(-1),
        )
    }

    pub fn mul(&self, rhs: &GroupElement) -> Result<GroupElement> {
        let [a, b, c, d] = &self.entries;
        let [e, f, g, h] = &rhs.entries;
        Ok(GroupElement::new(
            a.mul(e)?.add(&b.mul(g)?)?,
            a.mul(f)?.add(&b.mul(h)?)?,
            c.mul(e)?.add(&d.mul(g)?)?,
            c.mul(f)?.add(&d.mul(h)?)?,
        ))
    }

    /// Inverse of a determinant-1 matrix: the adjugate.
    pub fn inverse(&self) -> GroupElement {
        let [a, b, c, d] = &self.entries;
        GroupElement::new(d.clone(), b.neg(), c.neg(), a.clone())
    }

    pub fn trace(&self) -> Cyclo {
        self.entries[0].add(&self.entries[3]).expect("trace")
    }

    pub fn det(&self) -> Result<Cyclo> {
        let [a, b, c, d] = &self.entries;
        a.mul(d)?.sub(&b.mul(c)?)
    }

    pub fn is_unitary(&self) -> Result<bool> {
        let [a, b, c, d] = &self.entries;
        // Rows of U times conjugated rows of U: U U^dagger = I.
        let one = Rat::from_integer(1.into());
        let ones = [
            a.mul(&a.conj())?.add(&b.mul(&b.conj())?)?,
            c.mul(&c.conj())?.add(&d.mul(&d.conj())?)?,
        ];
        let cross = a.mul(&c.conj())?.add(&b.mul(&d.conj())?)?;
        Ok(ones.iter().all(|x| x.as_rational().as_ref() == Some(&one)) && cross.is_zero())
    }

    fn promote(&self, m: u32) -> Result<GroupElement> {
        let [a, b, c, d] = &self.entries;
        Ok(GroupElement::new(
            a.promote(m)?,
            b.promote(m)?,
            c.promote(m)?,
            d.promote(m)?,
        ))
    }
}

/// A finite subgroup of SU(2) with its conjugacy-class structure.
pub struct FiniteSubgroup {
    pub spec: GroupSpec,
    pub conductor: u32,
    pub elements: Vec<GroupElement>,
    index: HashMap<GroupElement, usize>,
    pub order: usize,
    /// Index of -I.
    pub minus_one: usize,
    /// Conjugacy classes as sorted element-index lists, ordered by their
    /// minimal element index (so the identity class comes first).
    pub classes: Vec<Vec<usize>>,
    /// Class index of each element.
    pub class_of: Vec<usize>,
    /// Representative (minimal index) of each class.
    pub reps: Vec<usize>,
}

impl FiniteSubgroup {
    pub fn g_bar_order(&self) -> usize {
        self.order / 2
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_size(&self, k: usize) -> usize {
        self.classes[k].len()
    }

    pub fn element_index(&self, g: &GroupElement) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn mul_idx(&self, a: usize, b: usize) -> Result<usize> {
        let prod = self.elements[a].mul(&self.elements[b])?;
        self.element_index(&prod)
            .ok_or_else(|| Error::Internal("product escaped the group".into()))
    }

    pub fn inv_idx(&self, a: usize) -> Result<usize> {
        let inv = self.elements[a].inverse();
        self.element_index(&inv)
            .ok_or_else(|| Error::Internal("inverse escaped the group".into()))
    }

    /// Multiplicative exponent: lcm of the element orders.
    pub fn exponent(&self) -> Result<usize> {
        let mut e = 1usize;
        for &r in &self.reps {
            e = num_integer::lcm(e, self.element_order(r)?);
        }
        Ok(e)
    }

    pub fn element_order(&self, idx: usize) -> Result<usize> {
        let mut cur = idx;
        let mut n = 1;
        while cur != 0 {
            cur = self.mul_idx(cur, idx)?;
            n += 1;
            if n > self.order {
                return Err(Error::Internal("element order overflow".into()));
            }
        }
        Ok(n)
    }
}

fn generators(spec: GroupSpec, m: u32) -> Result<Vec<GroupElement>> {
    let z = |k: i64, den: u32| -> Result<Cyclo> { Cyclo::zeta(den, k)?.promote(m) };
    let half = Rat::new(1.into(), 2.into());
    let gens = match spec.family {
        Family::BinaryCyclic => {
            let w = 2 * spec.param as u32;
            vec![GroupElement::new(
                z(1, w)?,
                Cyclo::zero(),
                Cyclo::zero(),
                z(-1, w)?,
            )]
        }
        Family::BinaryDihedral => {
            let w = 2 * spec.param as u32;
            vec![
                GroupElement::new(z(1, w)?, Cyclo::zero(), Cyclo::zero(), z(-1, w)?),
                GroupElement::new(
                    Cyclo::zero(),
                    Cyclo::one().promote(m)?,
                    Cyclo::from_int(-1).promote(m)?,
                    Cyclo::zero(),
                ),
            ]
        }
        Family::BinaryTetrahedral | Family::BinaryOctahedral => {
            let i = z(1, 4)?;
            let one = Cyclo::one().promote(m)?;
            let neg = Cyclo::from_int(-1).promote(m)?;
            // (1/2) [[1+i, -1+i], [1+i, 1-i]], an order-6 element that
            // extends the quaternion group to the binary tetrahedral one.
            let omega = GroupElement::new(
                one.add(&i)?.scale(&half),
                neg.add(&i)?.scale(&half),
                one.add(&i)?.scale(&half),
                one.sub(&i)?.scale(&half),
            );
            let mut v = vec![
                GroupElement::new(i.clone(), Cyclo::zero(), Cyclo::zero(), i.neg()),
                GroupElement::new(Cyclo::zero(), one.clone(), neg.clone(), Cyclo::zero()),
                omega,
            ];
            if spec.family == Family::BinaryOctahedral {
                v.push(GroupElement::new(
                    z(1, 8)?,
                    Cyclo::zero(),
                    Cyclo::zero(),
                    z(-1, 8)?,
                ));
            }
            v
        }
        Family::BinaryIcosahedral => {
            // Klein's pair: diag(z5^3, z5^2) and a trace-zero matrix with
            // entries (z5^a - z5^b)/sqrt(5).
            let z5 = |k: i64| z(k, 5);
            // sqrt(5) = z5 + z5^4 - z5^2 - z5^3, so 1/sqrt(5) = sqrt(5)/5.
            let sqrt5 = z5(1)?.add(&z5(4)?)?.sub(&z5(2)?)?.sub(&z5(3)?)?;
            let inv_sqrt5 = sqrt5.scale(&Rat::new(1.into(), 5.into()));
            let t11 = z5(1)?.sub(&z5(4)?)?.neg().mul(&inv_sqrt5)?;
            let t12 = z5(2)?.sub(&z5(3)?)?.mul(&inv_sqrt5)?;
            let t22 = z5(1)?.sub(&z5(4)?)?.mul(&inv_sqrt5)?;
            vec![
                GroupElement::new(z5(3)?, Cyclo::zero(), Cyclo::zero(), z5(2)?),
                GroupElement::new(t11, t12.clone(), t12, t22),
            ]
        }
    };
    Ok(gens)
}

/// Build a group by BFS closure of the family's generators, then compute
/// the conjugacy classes by orbit partition.
pub fn build_group(spec: GroupSpec, max_order: usize) -> Result<FiniteSubgroup> {
    let expected = spec.order();
    if expected > max_order {
        return Err(Error::OrderCap(expected, max_order));
    }
    let m = spec.conductor();
    let gens = generators(spec, m)?;
    for g in &gens {
        if g.det()?.as_rational() != Some(Rat::from_integer(1.into())) {
            return Err(Error::Internal(format!("{} generator has det != 1", spec)));
        }
        if !g.is_unitary()? {
            return Err(Error::Internal(format!(
                "{} generator is not unitary",
                spec
            )));
        }
    }

    let id = GroupElement::identity().promote(m)?;
    let mut elements = vec![id.clone()];
    let mut index = HashMap::new();
    index.insert(id, 0usize);
    let mut head = 0;
    while head < elements.len() {
        let cur = elements[head].clone();
        for g in &gens {
            let next = cur.mul(g)?;
            if !index.contains_key(&next) {
                if elements.len() >= 2 * expected {
                    return Err(Error::ClosureBug(elements.len(), spec.family.name().into()));
                }
                index.insert(next.clone(), elements.len());
                elements.push(next);
            }
        }
        head += 1;
    }
    if elements.len() != expected {
        return Err(Error::ClosureBug(elements.len(), spec.family.name().into()));
    }

    let minus_one = *index
        .get(&GroupElement::minus_identity().promote(m)?)
        .ok_or(Error::NoMinusOne)?;

    // Conjugation orbits under the generators partition the group into
    // classes; generator conjugation suffices because conjugation is a
    // group action.
    let order = elements.len();
    let mut class_of = vec![usize::MAX; order];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for start in 0..order {
        if class_of[start] != usize::MAX {
            continue;
        }
        let cid = classes.len();
        let mut orbit = vec![start];
        class_of[start] = cid;
        let mut pos = 0;
        while pos < orbit.len() {
            let x = orbit[pos];
            for g in &gens {
                let conj = g.mul(&elements[x])?.mul(&g.inverse())?;
                let y = *index
                    .get(&conj)
                    .ok_or_else(|| Error::Internal("conjugate escaped the group".into()))?;
                if class_of[y] == usize::MAX {
                    class_of[y] = cid;
                    orbit.push(y);
                }
            }
            pos += 1;
        }
        orbit.sort_unstable();
        classes.push(orbit);
    }
    let reps: Vec<usize> = classes.iter().map(|c| c[0]).collect();

    // -I is central: its class must be a singleton.
    if classes[class_of[minus_one]].len() != 1 {
        return Err(Error::Internal("-I is not central".into()));
    }
    if classes.iter().map(Vec::len).sum::<usize>() != order {
        return Err(Error::Internal("class sizes do not sum to |G|".into()));
    }

    Ok(FiniteSubgroup {
        spec,
        conductor: m,
        elements,
        index,
        order,
        minus_one,
        classes,
        class_of,
        reps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_specs() {
        assert_eq!(
            GroupSpec::parse("cyclic:3").unwrap(),
            GroupSpec {
                family: Family::BinaryCyclic,
                param: 3
            }
        );
        assert_eq!(GroupSpec::parse("tetra").unwrap().order(), 24);
        assert!(GroupSpec::parse("cyclic:0").is_err());
        assert!(GroupSpec::parse("frobnicate").is_err());
        assert!(GroupSpec::parse("icosa:2").is_err());
    }

    #[test]
    fn plus_minus_one_group() {
        let g = build_group(GroupSpec::parse("cyclic:1").unwrap(), 240).unwrap();
        assert_eq!(g.order, 2);
        assert_eq!(g.class_count(), 2);
        assert_eq!(
            g.elements[g.minus_one],
            GroupElement::minus_identity().promote(2).unwrap()
        );
    }

    #[test]
    fn quaternion_group() {
        let g = build_group(GroupSpec::parse("dihedral:2").unwrap(), 240).unwrap();
        assert_eq!(g.order, 8);
        assert_eq!(g.class_count(), 5);
    }

    #[test]
    fn binary_icosahedral() {
        let g = build_group(GroupSpec::parse("icosa").unwrap(), 240).unwrap();
        assert_eq!(g.order, 120);
        assert_eq!(g.class_count(), 9);
        assert_eq!(g.exponent().unwrap(), 60);
    }

    #[test]
    fn tetra_octa_orders() {
        let t = build_group(GroupSpec::parse("tetra").unwrap(), 240).unwrap();
        assert_eq!((t.order, t.class_count()), (24, 7));
        let o = build_group(GroupSpec::parse("octa").unwrap(), 240).unwrap();
        assert_eq!((o.order, o.class_count()), (48, 8));
    }

    #[test]
    fn all_elements_unitary_det_one() {
        let g = build_group(GroupSpec::parse("dihedral:3").unwrap(), 240).unwrap();
        for e in &g.elements {
            assert!(e.is_unitary().unwrap());
            assert_eq!(e.det().unwrap(), Cyclo::one().promote(g.conductor).unwrap());
        }
    }

    #[test]
    fn order_cap_respected() {
        assert!(matches!(
            build_group(GroupSpec::parse("cyclic:200").unwrap(), 240),
            Err(Error::OrderCap(400, 240))
        ));
    }

    #[test]
    fn minus_one_is_central_singleton() {
        for spec in ["cyclic:4", "dihedral:3", "tetra"] {
            let g = build_group(GroupSpec::parse(spec).unwrap(), 240).unwrap();
            assert_eq!(g.classes[g.class_of[g.minus_one]], vec![g.minus_one]);
        }
    }
}
