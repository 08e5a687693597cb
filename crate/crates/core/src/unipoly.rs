//! Dense univariate polynomials over the rationals.
//!
//! Coefficients are stored ascending with no trailing zeros.  This is the
//! workhorse representation for everything genuinely univariate:
//! factorisation, partial fractions, indicial computations, cyclotomic
//! arithmetic and series expansion of potentials.

use num::BigInt;
use num::Integer;
use num_traits::{One, Zero};

use crate::poly::{MultiPolynomial, Var};
use crate::rat::Rat;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly {
    /// coeffs[i] multiplies x^i; invariant: last entry (if any) is nonzero.
    pub coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::constant(Rat::one())
    }

    pub fn x() -> Self {
        UniPoly {
            coeffs: vec![Rat::zero(), Rat::one()],
        }
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = UniPoly { coeffs: vec![c] };
        p.trim();
        p
    }

    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        let mut p = UniPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_int_coeffs(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| Rat::from_integer(c.into())).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn deg_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(self.coeff(i) + o.coeff(i));
        }
        Self::from_coeffs(c)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![Rat::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        Self::from_coeffs(c)
    }

    pub fn mul_rat(&self, r: &Rat) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = UniPoly::one();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Euclidean division: self = q*o + r with deg r < deg o.
    pub fn div_rem(&self, o: &Self) -> (Self, Self) {
        assert!(!o.is_zero(), "division by zero polynomial");
        let do_ = o.degree().unwrap();
        let lead_inv = o.leading().unwrap().recip();
        let mut r = self.clone();
        let mut q = vec![Rat::zero(); self.coeffs.len().saturating_sub(do_)];
        while let Some(dr) = r.degree() {
            if dr < do_ {
                break;
            }
            let f = r.leading().unwrap() * &lead_inv;
            let shift = dr - do_;
            q[shift] = f.clone();
            for (i, c) in o.coeffs.iter().enumerate() {
                let t = &f * c;
                r.coeffs[shift + i] = &r.coeffs[shift + i] - &t;
            }
            r.trim();
        }
        (Self::from_coeffs(q), r)
    }

    pub fn rem(&self, o: &Self) -> Self {
        self.div_rem(o).1
    }

    pub fn divides(&self, o: &Self) -> bool {
        if self.is_zero() {
            return o.is_zero();
        }
        o.rem(self).is_zero()
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => self.mul_rat(&l.recip()),
        }
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended Euclid: returns (g, s, t) with s*self + t*o = g, g monic.
    pub fn xgcd(&self, o: &Self) -> (Self, Self, Self) {
        let mut r0 = self.clone();
        let mut r1 = o.clone();
        let mut s0 = UniPoly::one();
        let mut s1 = UniPoly::zero();
        let mut t0 = UniPoly::zero();
        let mut t1 = UniPoly::one();
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if let Some(l) = r0.leading().cloned() {
            let inv = l.recip();
            return (r0.mul_rat(&inv), s0.mul_rat(&inv), t0.mul_rat(&inv));
        }
        (r0, s0, t0)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rat::from_integer(BigInt::from(i)))
            .collect();
        Self::from_coeffs(c)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * x + c;
        }
        acc
    }

    /// Taylor shift: returns p(x + a).
    pub fn shift(&self, a: &Rat) -> Self {
        let mut acc = UniPoly::zero();
        let xa = UniPoly::from_coeffs(vec![a.clone(), Rat::one()]);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&xa).add(&UniPoly::constant(c.clone()));
        }
        acc
    }

    /// Writes self = content * P with content a signed rational and P a
    /// primitive integer polynomial with positive leading coefficient.
    pub fn content_primitive(&self) -> (Rat, Vec<BigInt>) {
        if self.is_zero() {
            return (Rat::zero(), Vec::new());
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in &self.coeffs {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut content = Rat::new(num_gcd, den_lcm);
        if crate::rat::is_negative(self.leading().unwrap()) {
            content = -content;
        }
        let inv = content.recip();
        let ints = self
            .coeffs
            .iter()
            .map(|c| {
                let v = c * &inv;
                debug_assert!(v.is_integer());
                v.to_integer()
            })
            .collect();
        (content, ints)
    }

    /// Yun's squarefree decomposition: pairwise-coprime monic squarefree
    /// parts with multiplicities, so self = lc * prod part_i ^ mult_i.
    pub fn squarefree_decomposition(&self) -> Vec<(UniPoly, u32)> {
        let f = self.monic();
        if f.deg_or_zero() == 0 {
            return Vec::new();
        }
        let df = f.derivative();
        let g = f.gcd(&df);
        if g.deg_or_zero() == 0 {
            return vec![(f, 1)];
        }
        let mut out = Vec::new();
        let mut c = f.div_rem(&g).0;
        let mut d = df.div_rem(&g).0.sub(&c.derivative());
        let mut mult = 1u32;
        loop {
            let p = c.gcd(&d);
            if p.deg_or_zero() > 0 {
                out.push((p.clone(), mult));
            }
            c = c.div_rem(&p).0;
            if c.deg_or_zero() == 0 {
                break;
            }
            d = d.div_rem(&p).0.sub(&c.derivative());
            mult += 1;
        }
        out
    }

    pub fn is_squarefree(&self) -> bool {
        if self.deg_or_zero() == 0 {
            return true;
        }
        self.gcd(&self.derivative()).deg_or_zero() == 0
    }

    pub fn to_multipoly(&self, v: Var) -> MultiPolynomial<Rat> {
        let coeffs: Vec<MultiPolynomial<Rat>> = self
            .coeffs
            .iter()
            .map(|c| MultiPolynomial::from_rat(c.clone()))
            .collect();
        MultiPolynomial::from_coeffs_in(v, &coeffs)
    }

    /// Extraction from a sparse polynomial that only involves `v`.
    pub fn from_multipoly(p: &MultiPolynomial<Rat>, v: Var) -> Option<Self> {
        let present = p.vars_present();
        for w in Var::ALL {
            if w != v && present[w.index()] {
                return None;
            }
        }
        let coeffs = p
            .coeffs_in(v)
            .iter()
            .map(|c| c.as_constant().cloned().unwrap_or_else(Rat::zero))
            .collect();
        Some(Self::from_coeffs(coeffs))
    }
}

impl std::fmt::Display for UniPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_multipoly(Var::X))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    #[test]
    fn division_and_gcd() {
        // (x^2 - 1) = (x + 1)(x - 1)
        let f = UniPoly::from_int_coeffs(&[-1, 0, 1]);
        let g = UniPoly::from_int_coeffs(&[1, 1]);
        let (q, r) = f.div_rem(&g);
        assert!(r.is_zero());
        assert_eq!(q, UniPoly::from_int_coeffs(&[-1, 1]));
        let h = f.gcd(&UniPoly::from_int_coeffs(&[-1, 1]));
        assert_eq!(h, UniPoly::from_int_coeffs(&[-1, 1]));
    }

    #[test]
    fn xgcd_bezout() {
        let a = UniPoly::from_int_coeffs(&[1, 0, 1]); // x^2 + 1
        let b = UniPoly::from_int_coeffs(&[1, 1]); // x + 1
        let (g, s, t) = a.xgcd(&b);
        assert_eq!(g, UniPoly::one());
        assert_eq!(s.mul(&a).add(&t.mul(&b)), UniPoly::one());
    }

    #[test]
    fn taylor_shift() {
        // p(x) = x^2, p(x + 1) = x^2 + 2x + 1
        let p = UniPoly::from_int_coeffs(&[0, 0, 1]);
        assert_eq!(p.shift(&rat_int(1)), UniPoly::from_int_coeffs(&[1, 2, 1]));
        // Shift is evaluation-consistent: p(x+a) at 0 equals p(a).
        let q = UniPoly::from_int_coeffs(&[3, -2, 0, 5]);
        let a = rat(7, 3);
        assert_eq!(q.shift(&a).eval(&Rat::zero()), q.eval(&a));
    }

    #[test]
    fn squarefree_decomposition_yun() {
        // f = (x-1)^2 (x+2)^3 x
        let f = UniPoly::from_int_coeffs(&[-1, 1])
            .pow(2)
            .mul(&UniPoly::from_int_coeffs(&[2, 1]).pow(3))
            .mul(&UniPoly::x());
        let parts = f.squarefree_decomposition();
        assert_eq!(
            parts,
            vec![
                (UniPoly::x(), 1),
                (UniPoly::from_int_coeffs(&[-1, 1]), 2),
                (UniPoly::from_int_coeffs(&[2, 1]), 3),
            ]
        );
        assert!(!f.is_squarefree());
        assert!(UniPoly::from_int_coeffs(&[-1, 0, 1]).is_squarefree());
    }

    #[test]
    fn content_primitive_integers() {
        let p = UniPoly::from_coeffs(vec![rat(2, 3), rat(4, 3)]);
        let (c, ints) = p.content_primitive();
        assert_eq!(c, rat(2, 3));
        assert_eq!(ints, vec![BigInt::from(1), BigInt::from(2)]);
    }

    #[test]
    fn multipoly_round_trip() {
        let p = UniPoly::from_int_coeffs(&[27, -32, 32]);
        let m = p.to_multipoly(Var::X);
        assert_eq!(UniPoly::from_multipoly(&m, Var::X), Some(p));
        let mixed = MultiPolynomial::var(Var::X).add(&MultiPolynomial::var(Var::Y));
        assert_eq!(UniPoly::from_multipoly(&mixed, Var::X), None);
    }
}
