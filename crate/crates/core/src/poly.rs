//! Sparse multivariate polynomials in the three coordinates x, y, z.
//!
//! Terms are stored in a `BTreeMap` keyed by exponent triples under the
//! graded-lexicographic order (total degree first, then x > y > z), so a
//! polynomial has exactly one stored representation: no zero coefficients,
//! terms canonically ordered.  Coefficients are any [`Scalar`]; the crate
//! uses `Rat` almost everywhere and cyclotomic scalars where roots of unity
//! are required.

use std::collections::BTreeMap;
use std::fmt;

use num::BigInt;
use num_traits::One;

use crate::rat::Rat;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Var {
    X,
    Y,
    Z,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::X, Var::Y, Var::Z];

    pub fn index(self) -> usize {
        match self {
            Var::X => 0,
            Var::Y => 1,
            Var::Z => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
            Var::Z => "z",
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent triple (e_x, e_y, e_z).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub [u32; 3]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0, 0, 0])
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0, 0, 0];
        e[v.index()] = 1;
        Monomial(e)
    }

    pub fn is_one(&self) -> bool {
        self.0 == [0, 0, 0]
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(a, b)| a <= b)
    }

    /// Exact quotient o / self; caller must ensure divisibility.
    pub fn quotient_into(&self, o: &Monomial) -> Monomial {
        Monomial([o.0[0] - self.0[0], o.0[1] - self.0[1], o.0[2] - self.0[2]])
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, ties by exponents with x
    /// most significant.
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.total_degree()
            .cmp(&o.total_degree())
            .then(self.0.cmp(&o.0))
    }
}

/// Coefficient field abstraction.  Operations are method calls so the same
/// polynomial code serves `Rat` and cyclotomic scalars; `embed_rat` uses the
/// receiver only as a context donor (a cyclotomic scalar knows its field).
pub trait Scalar: Clone + PartialEq + Eq + std::hash::Hash + fmt::Debug + fmt::Display {
    fn is_zero(&self) -> bool;
    fn neg(&self) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self;
    /// Multiplicative inverse; caller guarantees the receiver is nonzero.
    fn inv(&self) -> Self;
    fn div(&self, o: &Self) -> Self {
        self.mul(&o.inv())
    }
    fn embed_rat(&self, r: &Rat) -> Self;
    /// True when `Display` output needs no parentheses inside a product.
    fn display_atomic(&self) -> bool {
        false
    }
    /// Canonical scaling of a reduced fraction num/den.  Both inputs are
    /// already coprime; the implementation fixes the remaining unit factor.
    fn normalize_fraction(
        num: MultiPolynomial<Self>,
        den: MultiPolynomial<Self>,
    ) -> (MultiPolynomial<Self>, MultiPolynomial<Self>)
    where
        Self: Sized;
}

impl Scalar for Rat {
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }

    fn neg(&self) -> Self {
        -self
    }

    fn add(&self, o: &Self) -> Self {
        self + o
    }

    fn sub(&self, o: &Self) -> Self {
        self - o
    }

    fn mul(&self, o: &Self) -> Self {
        self * o
    }

    fn inv(&self) -> Self {
        assert!(!Scalar::is_zero(self), "inverse of zero rational");
        Rat::new(self.denom().clone(), self.numer().clone())
    }

    fn embed_rat(&self, r: &Rat) -> Self {
        r.clone()
    }

    fn display_atomic(&self) -> bool {
        !crate::rat::is_negative(self)
    }

    /// Scales so that numerator and denominator have integer coefficients
    /// with coprime contents and the denominator's leading coefficient is
    /// positive.  `3/(16*x^2)` is stored as num `3`, den `16*x^2`.
    fn normalize_fraction(
        num: MultiPolynomial<Rat>,
        den: MultiPolynomial<Rat>,
    ) -> (MultiPolynomial<Rat>, MultiPolynomial<Rat>) {
        let (cn, pn) = num.rat_content_primitive();
        let (cd, pd) = den.rat_content_primitive();
        // num/den = (cn/cd) * pn/pd with pn, pd primitive integer polys.
        let ratio = &cn / &cd;
        let a = Rat::from_integer(ratio.numer().clone());
        let b = Rat::from_integer(ratio.denom().clone());
        (pn.mul_scalar(&a), pd.mul_scalar(&b))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiPolynomial<S: Scalar> {
    terms: BTreeMap<Monomial, S>,
}

impl<S: Scalar> MultiPolynomial<S> {
    pub fn zero() -> Self {
        MultiPolynomial {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: S) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        MultiPolynomial { terms }
    }

    pub fn from_terms(entries: impl IntoIterator<Item = (Monomial, S)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in entries {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            None => {
                self.terms.insert(m, c);
            }
            Some(old) => {
                let s = old.add(&c);
                if !s.is_zero() {
                    self.terms.insert(m, s);
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.contains_key(&Monomial::one()))
    }

    /// The constant coefficient, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<&S> {
        if self.is_zero() {
            None
        } else if self.is_constant() {
            self.terms.get(&Monomial::one())
        } else {
            None
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &S)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Leading term under the graded-lexicographic order.
    pub fn leading(&self) -> Option<(&Monomial, &S)> {
        self.terms.iter().next_back()
    }

    /// A coefficient usable as context donor for `embed_rat`.
    pub fn any_coeff(&self) -> Option<&S> {
        self.terms.values().next()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&S> {
        self.terms.get(m)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.total_degree())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms
            .keys()
            .map(|m| m.0[v.index()])
            .max()
            .unwrap_or(0)
    }

    pub fn vars_present(&self) -> [bool; 3] {
        let mut p = [false, false, false];
        for m in self.terms.keys() {
            for i in 0..3 {
                p[i] |= m.0[i] > 0;
            }
        }
        p
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in o.terms.iter() {
            r.add_term(*m, c.clone());
        }
        r
    }

    pub fn neg(&self) -> Self {
        MultiPolynomial {
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero();
        for (ma, ca) in self.terms.iter() {
            for (mb, cb) in o.terms.iter() {
                r.add_term(ma.mul(mb), ca.mul(cb));
            }
        }
        r
    }

    pub fn mul_scalar(&self, s: &S) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        MultiPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, c.mul(s)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> Self {
        MultiPolynomial {
            terms: self.terms.iter().map(|(m, c)| (m.mul(mono), c.clone())).collect(),
        }
    }

    /// Integer power; `pow(0)` requires a nonzero polynomial to donate the
    /// coefficient context for the constant 1.
    pub fn pow(&self, e: u32) -> Self {
        if e == 0 {
            let donor = self
                .any_coeff()
                .expect("pow(0) on the zero polynomial has no coefficient context");
            return Self::constant(donor.embed_rat(&Rat::one()));
        }
        let mut r = self.clone();
        for _ in 1..e {
            r = r.mul(self);
        }
        r
    }

    pub fn partial(&self, v: Var) -> Self {
        let i = v.index();
        let mut r = Self::zero();
        for (m, c) in self.terms.iter() {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut me = *m;
            me.0[i] -= 1;
            let factor = c.embed_rat(&Rat::from_integer(BigInt::from(e)));
            r.add_term(me, c.mul(&factor));
        }
        r
    }

    pub fn map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> T) -> MultiPolynomial<T> {
        MultiPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, f(c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// Evaluation at a rational point (all three coordinates).
    pub fn eval_rat(&self, point: &[Rat; 3]) -> Option<S> {
        let donor = match self.any_coeff() {
            None => return None,
            Some(d) => d,
        };
        let mut acc = donor.embed_rat(&Rat::new(BigInt::from(0), BigInt::from(1)));
        for (m, c) in self.terms.iter() {
            let mut v = Rat::one();
            for i in 0..3 {
                for _ in 0..m.0[i] {
                    v = &v * &point[i];
                }
            }
            acc = acc.add(&c.mul(&c.embed_rat(&v)));
        }
        Some(acc)
    }

    /// Coefficients with respect to `v`: index d holds the coefficient of
    /// v^d, a polynomial in the other variables.
    pub fn coeffs_in(&self, v: Var) -> Vec<Self> {
        let i = v.index();
        let d = self.degree_in(v) as usize;
        let mut out = vec![Self::zero(); d + 1];
        for (m, c) in self.terms.iter() {
            let e = m.0[i] as usize;
            let mut me = *m;
            me.0[i] = 0;
            out[e].add_term(me, c.clone());
        }
        out
    }

    pub fn from_coeffs_in(v: Var, coeffs: &[Self]) -> Self {
        let i = v.index();
        let mut r = Self::zero();
        for (e, c) in coeffs.iter().enumerate() {
            for (m, s) in c.terms.iter() {
                let mut me = *m;
                me.0[i] += e as u32;
                r.add_term(me, s.clone());
            }
        }
        r
    }

    /// Exact division; returns `None` when the divisor does not divide the
    /// receiver.  Standard leading-term elimination, valid over any field.
    pub fn divide_exact(&self, g: &Self) -> Option<Self> {
        assert!(!g.is_zero(), "division by the zero polynomial");
        let mut rem = self.clone();
        let mut quot = Self::zero();
        let (gm, gc) = {
            let (m, c) = g.leading().unwrap();
            (*m, c.clone())
        };
        let gc_inv = gc.inv();
        while !rem.is_zero() {
            let (rm, rc) = {
                let (m, c) = rem.leading().unwrap();
                (*m, c.clone())
            };
            if !gm.divides(&rm) {
                return None;
            }
            let qm = gm.quotient_into(&rm);
            let qc = rc.mul(&gc_inv);
            let mut t = Self::zero();
            t.add_term(qm, qc);
            quot = quot.add(&t);
            rem = rem.sub(&t.mul(g));
        }
        Some(quot)
    }
}

impl MultiPolynomial<Rat> {
    pub fn var(v: Var) -> Self {
        Self::from_terms([(Monomial::var(v), Rat::one())])
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(Rat::from_integer(BigInt::from(n)))
    }

    pub fn from_rat(r: Rat) -> Self {
        Self::constant(r)
    }

    /// Writes the polynomial as c * P with c a positive rational and P a
    /// primitive integer polynomial (content 1, positive leading
    /// coefficient).  The zero polynomial returns (0, 0).
    pub fn rat_content_primitive(&self) -> (Rat, MultiPolynomial<Rat>) {
        use num::Integer;
        if self.is_zero() {
            return (Rat::new(BigInt::from(0), BigInt::from(1)), Self::zero());
        }
        let mut num_gcd = BigInt::from(0);
        let mut den_lcm = BigInt::from(1);
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut content = Rat::new(num_gcd, den_lcm);
        let lead_negative = crate::rat::is_negative(self.leading().unwrap().1);
        if lead_negative {
            content = -content;
        }
        let inv = Scalar::inv(&content);
        (content.clone(), self.mul_scalar(&inv))
    }
}

impl<S: Scalar> fmt::Display for MultiPolynomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let coeff = if c.display_atomic() {
                format!("{c}")
            } else {
                format!("({c})")
            };
            let mono = display_monomial(m);
            match (coeff.as_str(), mono.as_str()) {
                (_, "") => f.write_str(&coeff)?,
                ("1", m) => f.write_str(m)?,
                (_, _) => write!(f, "{coeff}*{mono}")?,
            }
        }
        Ok(())
    }
}

fn display_monomial(m: &Monomial) -> String {
    let mut parts = Vec::new();
    for v in Var::ALL {
        let e = m.0[v.index()];
        if e == 1 {
            parts.push(v.name().to_string());
        } else if e > 1 {
            parts.push(format!("{}^{}", v.name(), e));
        }
    }
    parts.join("*")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    fn x() -> MultiPolynomial<Rat> {
        MultiPolynomial::var(Var::X)
    }

    fn y() -> MultiPolynomial<Rat> {
        MultiPolynomial::var(Var::Y)
    }

    #[test]
    fn grlex_order() {
        // x^2 > x*y > y^2 > x > y > 1 under graded lex with x > y > z.
        let m = |e: [u32; 3]| Monomial(e);
        assert!(m([2, 0, 0]) > m([1, 1, 0]));
        assert!(m([1, 1, 0]) > m([0, 2, 0]));
        assert!(m([0, 2, 0]) > m([1, 0, 0]));
        assert!(m([1, 0, 0]) > m([0, 1, 0]));
        assert!(m([0, 0, 1]) > m([0, 0, 0]));
    }

    #[test]
    fn arithmetic_and_canonical_storage() {
        let p = x().add(&y()).mul(&x().sub(&y()));
        let expect = x().mul(&x()).sub(&y().mul(&y()));
        assert_eq!(p, expect);
        let zero = p.sub(&expect);
        assert!(zero.is_zero());
        assert_eq!(zero.num_terms(), 0);
    }

    #[test]
    fn partial_derivative() {
        // d/dx (x^2 y + 3x) = 2xy + 3
        let p = x().pow(2).mul(&y()).add(&x().mul_scalar(&rat_int(3)));
        let d = p.partial(Var::X);
        let expect = x()
            .mul(&y())
            .mul_scalar(&rat_int(2))
            .add(&MultiPolynomial::from_int(3));
        assert_eq!(d, expect);
        assert!(p.partial(Var::Z).is_zero());
    }

    #[test]
    fn exact_division() {
        let p = x().pow(2).sub(&y().pow(2));
        let g = x().sub(&y());
        let q = p.divide_exact(&g).unwrap();
        assert_eq!(q, x().add(&y()));
        assert!(p.divide_exact(&x().add(&MultiPolynomial::from_int(1))).is_none());
    }

    #[test]
    fn content_and_primitive_part() {
        let p = x()
            .mul_scalar(&rat(4, 3))
            .add(&MultiPolynomial::from_rat(rat(2, 3)));
        let (c, prim) = p.rat_content_primitive();
        assert_eq!(c, rat(2, 3));
        let expect = x().mul_scalar(&rat_int(2)).add(&MultiPolynomial::from_int(1));
        assert_eq!(prim, expect);
        // Negative leading coefficient flips into the content.
        let q = p.neg();
        let (cq, pq) = q.rat_content_primitive();
        assert_eq!(cq, rat(-2, 3));
        assert_eq!(pq, expect);
    }

    #[test]
    fn eval_rat_point() {
        let p = x().pow(2).add(&y().mul_scalar(&rat(1, 2)));
        let v = p
            .eval_rat(&[rat(1, 2), rat_int(4), rat_int(0)])
            .unwrap();
        assert_eq!(v, rat(9, 4));
    }
}
