//! Exact arithmetic in cyclotomic fields Q(zeta_m).
//!
//! Elements are stored as rational coefficient vectors over the power
//! basis `1, z, ..., z^{m-1}` reduced to a canonical spanning set. The
//! reduction subspace is spanned by all rotations of the vanishing sums
//! `sum_{k<p} z^{k m/p} = 0`, one family per prime `p | m`; its reduced
//! row echelon form (pivots chosen on the highest exponent first) is
//! computed once per conductor and cached. Two elements of equal
//! conductor are equal iff their canonical vectors are equal.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::Rat;

/// Largest conductor the registry will materialize.
pub const MAX_CONDUCTOR: u32 = 240;

/// Canonical reduction data for one conductor.
struct Reduction {
    m: usize,
    /// (pivot exponent, reduction row); each row is supported on the
    /// pivot (coefficient 1) and on non-pivot exponents only.
    rows: Vec<(usize, Vec<Rat>)>,
    /// Exponents of the canonical spanning set, ascending. Always starts
    /// with 0, and has phi(m) members.
    support: Vec<usize>,
}

impl Reduction {
    fn build(m: usize) -> Reduction {
        let mut relations: Vec<Vec<Rat>> = Vec::new();
        for p in prime_divisors(m) {
            let step = m / p;
            for t in 0..step {
                let mut row = vec![Rat::zero(); m];
                for k in 0..p {
                    row[(t + k * step) % m] = Rat::one();
                }
                relations.push(row);
            }
        }
        // Echelonize with columns scanned from the highest exponent down,
        // so zeta^0 is never a pivot and rationals stay literal.
        let n = relations.len();
        let mut mat = Matrix::from_fn(n, m, |i, j| relations[i][m - 1 - j].clone());
        let pivots = mat.rref();
        let mut rows = Vec::new();
        let mut is_pivot = vec![false; m];
        for (r, &c) in pivots.iter().enumerate() {
            let exp = m - 1 - c;
            let mut row = vec![Rat::zero(); m];
            for j in 0..m {
                row[m - 1 - j] = mat[(r, j)].clone();
            }
            is_pivot[exp] = true;
            rows.push((exp, row));
        }
        let support = (0..m).filter(|&e| !is_pivot[e]).collect();
        Reduction { m, rows, support }
    }

    /// Reduce a raw power-basis vector to canonical form in place.
    fn reduce(&self, v: &mut [Rat]) {
        debug_assert_eq!(v.len(), self.m);
        for (pivot, row) in &self.rows {
            if v[*pivot].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut v[*pivot], Rat::zero());
            for (j, rj) in row.iter().enumerate() {
                if j != *pivot && !rj.is_zero() {
                    v[j] -= &c * rj;
                }
            }
        }
    }
}

fn registry(m: u32) -> Arc<Reduction> {
    static REGISTRY: OnceLock<Mutex<HashMap<u32, Arc<Reduction>>>> = OnceLock::new();
    let lock = REGISTRY.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = lock.lock().unwrap();
    map.entry(m)
        .or_insert_with(|| Arc::new(Reduction::build(m as usize)))
        .clone()
}

fn prime_divisors(mut m: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            out.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Element of Q(zeta_m) in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cyclo {
    conductor: u32,
    coeffs: Vec<Rat>,
}

impl Cyclo {
    fn from_raw(conductor: u32, mut coeffs: Vec<Rat>) -> Cyclo {
        registry(conductor).reduce(&mut coeffs);
        Cyclo { conductor, coeffs }
    }

    /// zeta_m^k.
    pub fn zeta(m: u32, k: i64) -> Result<Cyclo> {
        if m == 0 || m > MAX_CONDUCTOR {
            return Err(Error::ConductorOverflow(m, MAX_CONDUCTOR));
        }
        let mut v = vec![Rat::zero(); m as usize];
        v[k.rem_euclid(m as i64) as usize] = Rat::one();
        Ok(Cyclo::from_raw(m, v))
    }

    pub fn from_rat(r: Rat) -> Cyclo {
        Cyclo {
            conductor: 1,
            coeffs: vec![r],
        }
    }

    pub fn from_int(n: i64) -> Cyclo {
        Cyclo::from_rat(Rat::from_integer(n.into()))
    }

    pub fn zero() -> Cyclo {
        Cyclo::from_int(0)
    }

    pub fn one() -> Cyclo {
        Cyclo::from_int(1)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rat::is_zero)
    }

    /// Promote to a larger conductor (m | target).
    pub fn promote(&self, target: u32) -> Result<Cyclo> {
        if target == self.conductor {
            return Ok(self.clone());
        }
        if target > MAX_CONDUCTOR {
            return Err(Error::ConductorOverflow(target, MAX_CONDUCTOR));
        }
        if target % self.conductor != 0 {
            return Err(Error::Internal(format!(
                "cannot promote conductor {} to {}",
                self.conductor, target
            )));
        }
        let scale = (target / self.conductor) as usize;
        let mut v = vec![Rat::zero(); target as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                v[k * scale] = c.clone();
            }
        }
        Ok(Cyclo::from_raw(target, v))
    }

    fn common(a: &Cyclo, b: &Cyclo) -> Result<(Cyclo, Cyclo)> {
        if a.conductor == b.conductor {
            return Ok((a.clone(), b.clone()));
        }
        let m = num_integer::lcm(a.conductor, b.conductor);
        Ok((a.promote(m)?, b.promote(m)?))
    }

    pub fn add(&self, rhs: &Cyclo) -> Result<Cyclo> {
        let (a, b) = Cyclo::common(self, rhs)?;
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        // Canonical vectors are supported off the pivot set, which is
        // closed under addition; no re-reduction needed.
        Ok(Cyclo {
            conductor: a.conductor,
            coeffs,
        })
    }

    pub fn sub(&self, rhs: &Cyclo) -> Result<Cyclo> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Cyclo {
        Cyclo {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, rhs: &Cyclo) -> Result<Cyclo> {
        let (a, b) = Cyclo::common(self, rhs)?;
        let m = a.conductor as usize;
        let mut v = vec![Rat::zero(); m];
        for (i, ci) in a.coeffs.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            for (j, cj) in b.coeffs.iter().enumerate() {
                if !cj.is_zero() {
                    v[(i + j) % m] += ci * cj;
                }
            }
        }
        Ok(Cyclo::from_raw(a.conductor, v))
    }

    pub fn scale(&self, r: &Rat) -> Cyclo {
        Cyclo {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Exact division; the inverse is found by solving the
    /// multiplication-by-`rhs` linear system on the canonical support.
    pub fn div(&self, rhs: &Cyclo) -> Result<Cyclo> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (a, b) = Cyclo::common(self, rhs)?;
        let red = registry(a.conductor);
        let n = red.support.len();
        // Columns: b * zeta^e for e in the canonical support, expressed on
        // the canonical support.
        let mut cols = Vec::with_capacity(n);
        for &e in &red.support {
            let mut shifted = vec![Rat::zero(); red.m];
            for (k, c) in b.coeffs.iter().enumerate() {
                if !c.is_zero() {
                    shifted[(k + e) % red.m] += c;
                }
            }
            red.reduce(&mut shifted);
            cols.push(shifted);
        }
        let mat = Matrix::from_fn(n, n, |i, j| cols[j][red.support[i]].clone());
        let target: Vec<Rat> = red.support.iter().map(|&e| a.coeffs[e].clone()).collect();
        let x = mat
            .solve(&target)
            .ok_or_else(|| Error::Internal("cyclotomic division failed".into()))?;
        let mut v = vec![Rat::zero(); red.m];
        for (idx, &e) in red.support.iter().enumerate() {
            v[e] = x[idx].clone();
        }
        Ok(Cyclo {
            conductor: a.conductor,
            coeffs: v,
        })
    }

    /// Complex conjugation: zeta^k -> zeta^{m-k}, extended linearly.
    pub fn conj(&self) -> Cyclo {
        let m = self.conductor as usize;
        let mut v = vec![Rat::zero(); m];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                v[(m - k) % m] += c;
            }
        }
        Cyclo::from_raw(self.conductor, v)
    }

    /// The rational value if this element lies in Q, else `None`.
    pub fn as_rational(&self) -> Option<Rat> {
        if self.coeffs[1..].iter().all(Rat::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Nonzero canonical coefficients as (exponent, value) pairs.
    pub fn terms(&self) -> Vec<(usize, Rat)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, c.clone()))
            .collect()
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.terms() {
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            first = false;
            let a = c.abs();
            if k == 0 {
                write!(f, "{}", a)?;
            } else {
                if !a.is_one() {
                    write!(f, "{}*", a)?;
                }
                write!(f, "z{}^{}", self.conductor, k)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn zeta4_squared_is_minus_one() {
        let i = Cyclo::zeta(4, 1).unwrap();
        assert_eq!(i.mul(&i).unwrap(), Cyclo::from_int(-1).promote(4).unwrap());
    }

    #[test]
    fn golden_ratio_equation() {
        // a = z5 + z5^4 satisfies a^2 + a - 1 = 0.
        let z = Cyclo::zeta(5, 1).unwrap();
        let a = z.add(&Cyclo::zeta(5, 4).unwrap()).unwrap();
        let lhs = a
            .mul(&a)
            .unwrap()
            .add(&a)
            .unwrap()
            .sub(&Cyclo::one())
            .unwrap();
        assert!(lhs.is_zero());
    }

    #[test]
    fn additive_identity() {
        for k in 0..7 {
            let a = Cyclo::zeta(7, k).unwrap().scale(&q(3, 2));
            assert_eq!(a.add(&Cyclo::zero()).unwrap(), a);
        }
    }

    #[test]
    fn conjugation_examples() {
        let i = Cyclo::zeta(4, 1).unwrap();
        assert_eq!(i.conj(), i.neg());
        let r = Cyclo::from_rat(q(3, 2));
        assert_eq!(r.conj(), r);
        let z = Cyclo::zeta(7, 3).unwrap();
        assert_eq!(z.conj().conj(), z);
    }

    #[test]
    fn rationality() {
        let mut s = Cyclo::zero();
        for k in 1..5 {
            s = s.add(&Cyclo::zeta(5, k).unwrap()).unwrap();
        }
        assert_eq!(s.as_rational(), Some(q(-1, 1)));
        assert_eq!(Cyclo::zeta(8, 1).unwrap().as_rational(), None);
        assert_eq!(Cyclo::from_rat(q(3, 2)).as_rational(), Some(q(3, 2)));
    }

    #[test]
    fn division() {
        let a = Cyclo::zeta(12, 5)
            .unwrap()
            .add(&Cyclo::from_int(2))
            .unwrap();
        let b = Cyclo::zeta(12, 7)
            .unwrap()
            .sub(&Cyclo::from_rat(q(1, 3)))
            .unwrap();
        let c = a.div(&b).unwrap();
        assert_eq!(c.mul(&b).unwrap(), a);
        assert!(matches!(a.div(&Cyclo::zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn conductor_bound() {
        assert!(matches!(
            Cyclo::zeta(500, 1),
            Err(Error::ConductorOverflow(500, _))
        ));
    }

    #[test]
    fn mixed_conductor_promotion() {
        let i = Cyclo::zeta(4, 1).unwrap();
        let w = Cyclo::zeta(3, 1).unwrap();
        let prod = i.mul(&w).unwrap();
        assert_eq!(prod.conductor(), 12);
        assert_eq!(prod, Cyclo::zeta(12, 7).unwrap());
    }

    #[test]
    fn canonical_support_starts_at_one() {
        // The canonical spanning set always keeps exponent 0, so
        // rationals have a literal representation.
        for m in [2u32, 4, 5, 8, 12, 24, 60] {
            let one = Cyclo::zeta(m, 0).unwrap();
            assert_eq!(one.as_rational(), Some(Rat::one()));
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_cyclo(m: u32) -> impl Strategy<Value = Cyclo> {
            proptest::collection::vec((-4i64..=4, 1i64..=3), 1..=4).prop_map(move |terms| {
                let mut acc = Cyclo::zero();
                for (idx, (num, den)) in terms.into_iter().enumerate() {
                    let t = Cyclo::zeta(m, idx as i64 * 3 + 1)
                        .unwrap()
                        .scale(&Rat::new(num.into(), den.into()));
                    acc = acc.add(&t).unwrap();
                }
                acc
            })
        }

        fn conductors() -> impl Strategy<Value = u32> {
            prop_oneof![
                Just(4u32),
                Just(5),
                Just(8),
                Just(12),
                Just(24),
                Just(60),
                Just(120)
            ]
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            #[test]
            fn field_axioms((a, b, c) in conductors().prop_flat_map(|m| {
                (arb_cyclo(m), arb_cyclo(m), arb_cyclo(m))
            })) {
                let ab_c = a.add(&b).unwrap().add(&c).unwrap();
                let a_bc = a.add(&b.add(&c).unwrap()).unwrap();
                prop_assert_eq!(&ab_c, &a_bc);
                let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
                let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
                prop_assert_eq!(&lhs, &rhs);
                let mul_assoc_l = a.mul(&b).unwrap().mul(&c).unwrap();
                let mul_assoc_r = a.mul(&b.mul(&c).unwrap()).unwrap();
                prop_assert_eq!(&mul_assoc_l, &mul_assoc_r);
                if !b.is_zero() {
                    let quot = a.div(&b).unwrap();
                    prop_assert_eq!(&quot.mul(&b).unwrap(), &a);
                }
            }

            #[test]
            fn conj_is_ring_hom((a, b) in conductors().prop_flat_map(|m| {
                (arb_cyclo(m), arb_cyclo(m))
            })) {
                let lhs = a.mul(&b).unwrap().conj();
                let rhs = a.conj().mul(&b.conj()).unwrap();
                prop_assert_eq!(&lhs, &rhs);
                prop_assert_eq!(a.conj().conj(), a);
            }
        }
    }
}
