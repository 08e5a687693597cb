//! Exact truncated power series with rational coefficients.
//!
//! `ExactSeries` expands in u = x - x0 around a rational base point and
//! tracks how many coefficients are certain: arithmetic truncates to the
//! shorter operand, differentiation drops one order.  All coefficients are
//! exact rationals, so agreement through the tracked order is a finite
//! exact statement, not an approximation.
//!
//! `BivarSeries` layers sparse polynomials in y and z on top, giving the
//! coefficient field used to check differential-form identities along the
//! x-direction jet.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::forms::CoeffField;
use crate::poly::Var;
use crate::rat::{rat_sqrt, Rat};
use crate::ratfunc::{AlgebraError, RatFn};
use crate::unipoly::UniPoly;

#[derive(Clone, Debug)]
pub struct ExactSeries {
    pub base: Rat,
    /// Exactly `order` coefficients: f = sum coeffs[k] (x - base)^k + O(u^order).
    pub coeffs: Vec<Rat>,
}

impl ExactSeries {
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn new(base: Rat, mut coeffs: Vec<Rat>, order: usize) -> Self {
        coeffs.resize(order, Rat::zero());
        ExactSeries { base, coeffs }
    }

    pub fn constant(base: Rat, c: Rat, order: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); order];
        if order > 0 {
            coeffs[0] = c;
        }
        ExactSeries { base, coeffs }
    }

    /// The coordinate x itself: base + u.
    pub fn x(base: Rat, order: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); order];
        if order > 0 {
            coeffs[0] = base.clone();
        }
        if order > 1 {
            coeffs[1] = Rat::one();
        }
        ExactSeries { base, coeffs }
    }

    fn check_base(&self, o: &Self) {
        assert_eq!(self.base, o.base, "mixed expansion points");
    }

    pub fn truncated(&self, order: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.truncate(order);
        ExactSeries {
            base: self.base.clone(),
            coeffs: c,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check_base(o);
        let n = self.order().min(o.order());
        let coeffs = (0..n).map(|k| &self.coeffs[k] + &o.coeffs[k]).collect();
        ExactSeries {
            base: self.base.clone(),
            coeffs,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        ExactSeries {
            base: self.base.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check_base(o);
        let n = self.order().min(o.order());
        let mut coeffs = vec![Rat::zero(); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().take(n - i).enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        ExactSeries {
            base: self.base.clone(),
            coeffs,
        }
    }

    pub fn mul_rat(&self, r: &Rat) -> Self {
        ExactSeries {
            base: self.base.clone(),
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Division; the divisor needs a nonzero constant term.
    pub fn div(&self, o: &Self) -> Option<Self> {
        self.check_base(o);
        let n = self.order().min(o.order());
        if n == 0 {
            return Some(ExactSeries {
                base: self.base.clone(),
                coeffs: Vec::new(),
            });
        }
        if o.coeffs[0].is_zero() {
            return None;
        }
        let inv0 = o.coeffs[0].recip();
        let mut coeffs = vec![Rat::zero(); n];
        for k in 0..n {
            let mut acc = self.coeffs[k].clone();
            for j in 0..k {
                acc -= &coeffs[j] * &o.coeffs[k - j];
            }
            coeffs[k] = acc * &inv0;
        }
        Some(ExactSeries {
            base: self.base.clone(),
            coeffs,
        })
    }

    /// Square root with rational constant term; None if the constant term
    /// is not a positive rational square.
    pub fn sqrt(&self) -> Option<Self> {
        let n = self.order();
        if n == 0 {
            return Some(self.clone());
        }
        if self.coeffs[0].is_zero() || self.coeffs[0].is_negative() {
            return None;
        }
        let s0 = rat_sqrt(&self.coeffs[0])?;
        let mut s = vec![Rat::zero(); n];
        s[0] = s0.clone();
        let two_s0_inv = (Rat::from_integer(2.into()) * &s0).recip();
        for k in 1..n {
            // a_k = sum_{j=0..k} s_j s_{k-j} => solve for s_k.
            let mut acc = self.coeffs[k].clone();
            for j in 1..k {
                acc -= &s[j] * &s[k - j];
            }
            s[k] = acc * &two_s0_inv;
        }
        Some(ExactSeries {
            base: self.base.clone(),
            coeffs: s,
        })
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * Rat::from_integer((k as i64).into()))
            .collect();
        ExactSeries {
            base: self.base.clone(),
            coeffs,
        }
    }

    /// Term-by-term antiderivative with constant 0. One coefficient longer
    /// than the input, so truncation order grows by one.
    pub fn antiderivative(&self) -> Self {
        let mut coeffs = vec![Rat::from_integer(0.into())];
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c / Rat::from_integer((k as i64 + 1).into())),
        );
        ExactSeries {
            base: self.base.clone(),
            coeffs,
        }
    }

    /// f'/f; None when f has a zero constant term.
    pub fn log_derivative(&self) -> Option<Self> {
        self.derivative().div(&self.truncated(self.order().saturating_sub(1)))
    }

    /// Evaluates the truncated polynomial at x (f64), for numeric work.
    pub fn eval_f64(&self, x: f64) -> f64 {
        let u = x - crate::rat::to_f64(&self.base);
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * u + crate::rat::to_f64(c);
        }
        acc
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }
}

impl PartialEq for ExactSeries {
    /// Agreement through the shared tracked order.
    fn eq(&self, o: &Self) -> bool {
        if self.base != o.base {
            return false;
        }
        let n = self.order().min(o.order());
        self.coeffs[..n] == o.coeffs[..n]
    }
}

impl fmt::Display for ExactSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let u = match k {
                0 => String::new(),
                1 => "u".to_string(),
                _ => format!("u^{}", k),
            };
            if u.is_empty() {
                parts.push(format!("{}", c));
            } else {
                parts.push(format!("{}*{}", c, u));
            }
            if parts.len() >= 6 {
                parts.push("...".to_string());
                break;
            }
        }
        if parts.is_empty() {
            parts.push("0".to_string());
        }
        write!(f, "{} + O(u^{})", parts.join(" + "), self.order())
    }
}

/// Expands a rational function of x alone around base; the denominator
/// must not vanish there.
pub fn expand_ratfn(r: &RatFn, base: &Rat, order: usize) -> Result<ExactSeries, AlgebraError> {
    let num = UniPoly::from_multipoly(r.num(), Var::X)
        .expect("expansion input must be univariate in x");
    let den = UniPoly::from_multipoly(r.den(), Var::X)
        .expect("expansion input must be univariate in x");
    // Taylor shift: p(u + base) gives coefficients in u.
    let nsh = num.shift(base);
    let dsh = den.shift(base);
    let to_series = |p: &UniPoly| {
        let mut c = p.coeffs.clone();
        c.resize(order.max(c.len()), Rat::zero());
        c.truncate(order);
        ExactSeries {
            base: base.clone(),
            coeffs: c,
        }
    };
    let ns = to_series(&nsh);
    let ds = to_series(&dsh);
    ns.div(&ds)
        .ok_or_else(|| AlgebraError::PoleAtPoint(format!("pole at x = {}", base)))
}

/// Solves f'' + q f = 0 as a series around base with f(base) = c0,
/// f'(base) = c1, via the convolution recurrence
///     (k+2)(k+1) c_{k+2} = - sum_j q_j c_{k-j}.
pub fn ode_series_solution(
    q: &RatFn,
    base: &Rat,
    c0: Rat,
    c1: Rat,
    order: usize,
) -> Result<ExactSeries, AlgebraError> {
    let qs = expand_ratfn(q, base, order)?;
    let mut c = vec![Rat::zero(); order];
    if order > 0 {
        c[0] = c0;
    }
    if order > 1 {
        c[1] = c1;
    }
    for k in 0..order.saturating_sub(2) {
        let mut acc = Rat::zero();
        for j in 0..=k {
            acc += &qs.coeffs[j] * &c[k - j];
        }
        let denom = Rat::from_integer((((k + 2) * (k + 1)) as i64).into());
        c[k + 2] = -acc / denom;
    }
    Ok(ExactSeries {
        base: base.clone(),
        coeffs: c,
    })
}

/// f g' - g f'.
pub fn wronskian(f: &ExactSeries, g: &ExactSeries) -> ExactSeries {
    f.mul(&g.derivative()).sub(&g.mul(&f.derivative()))
}

/// The canonical normalized solution pair at a base point:
/// f1(base) = 1, f1'(base) = 0 and f2(base) = 0, f2'(base) = 1, so the
/// Wronskian f1 f2' - f2 f1' is identically 1.
pub struct SolutionPair {
    pub f1: ExactSeries,
    pub f2: ExactSeries,
}

pub fn solution_pair(q: &RatFn, base: &Rat, order: usize) -> Result<SolutionPair, AlgebraError> {
    Ok(SolutionPair {
        f1: ode_series_solution(q, base, Rat::one(), Rat::zero(), order)?,
        f2: ode_series_solution(q, base, Rat::zero(), Rat::one(), order)?,
    })
}

// ---------------------------------------------------------------------------
// Bivariate layer: polynomials in y, z over x-series
// ---------------------------------------------------------------------------

/// Sparse polynomial in y and z whose coefficients are x-series, all
/// sharing one base point and one tracked order.
#[derive(Clone, Debug)]
pub struct BivarSeries {
    pub base: Rat,
    pub order: usize,
    /// (degree in y, degree in z) -> coefficient series; no zero entries.
    pub terms: BTreeMap<(u32, u32), ExactSeries>,
}

impl BivarSeries {
    pub fn zero(base: Rat, order: usize) -> Self {
        BivarSeries {
            base,
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_series(s: ExactSeries) -> Self {
        let base = s.base.clone();
        let order = s.order();
        let mut b = BivarSeries::zero(base, order);
        b.insert((0, 0), s);
        b
    }

    pub fn constant(base: Rat, c: Rat, order: usize) -> Self {
        BivarSeries::from_series(ExactSeries::constant(base, c, order))
    }

    fn insert(&mut self, key: (u32, u32), s: ExactSeries) {
        if !s.is_zero() {
            self.terms.insert(key, s.truncated(self.order));
        }
    }

    fn with_order(&self, order: usize) -> Self {
        let mut out = BivarSeries::zero(self.base.clone(), order);
        for (k, s) in &self.terms {
            out.insert(*k, s.truncated(order));
        }
        out
    }

    /// Coefficient of y^ey z^ez.
    pub fn coeff(&self, ey: u32, ez: u32) -> ExactSeries {
        self.terms
            .get(&(ey, ez))
            .cloned()
            .unwrap_or_else(|| ExactSeries::constant(self.base.clone(), Rat::zero(), self.order))
    }

    /// Substitutes numeric values for x, y, z on the truncation.
    pub fn eval_f64(&self, x: f64, y: f64, z: f64) -> f64 {
        let mut acc = 0.0;
        for (&(ey, ez), s) in &self.terms {
            acc += s.eval_f64(x) * y.powi(ey as i32) * z.powi(ez as i32);
        }
        acc
    }
}

impl PartialEq for BivarSeries {
    fn eq(&self, o: &Self) -> bool {
        self.sub(o).is_zero()
    }
}

impl CoeffField for BivarSeries {
    fn is_zero(&self) -> bool {
        self.terms.values().all(|s| s.is_zero())
    }

    fn add(&self, o: &Self) -> Self {
        assert_eq!(self.base, o.base, "mixed expansion points");
        let order = self.order.min(o.order);
        let mut out = self.with_order(order);
        for (k, s) in &o.terms {
            let merged = match out.terms.get(k) {
                Some(prev) => prev.add(s),
                None => s.truncated(order),
            };
            if merged.is_zero() {
                out.terms.remove(k);
            } else {
                out.terms.insert(*k, merged.truncated(order));
            }
        }
        out
    }

    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    fn neg(&self) -> Self {
        let mut out = BivarSeries::zero(self.base.clone(), self.order);
        for (k, s) in &self.terms {
            out.terms.insert(*k, s.neg());
        }
        out
    }

    fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.base, o.base, "mixed expansion points");
        let order = self.order.min(o.order);
        let mut out = BivarSeries::zero(self.base.clone(), order);
        for (&(ay, az), s) in &self.terms {
            for (&(by, bz), t) in &o.terms {
                let key = (ay + by, az + bz);
                let prod = s.mul(t).truncated(order);
                let merged = match out.terms.get(&key) {
                    Some(prev) => prev.add(&prod),
                    None => prod,
                };
                if merged.is_zero() {
                    out.terms.remove(&key);
                } else {
                    out.terms.insert(key, merged);
                }
            }
        }
        out
    }

    /// Division is supported only by units: a pure x-series with nonzero
    /// constant term.  Anything carrying y or z would need an infinite
    /// geometric tail.
    fn try_div(&self, o: &Self) -> Option<Self> {
        if o.terms.keys().any(|&k| k != (0, 0)) {
            return None;
        }
        let d = o.terms.get(&(0, 0))?;
        let order = self.order.min(o.order);
        let mut out = BivarSeries::zero(self.base.clone(), order);
        for (k, s) in &self.terms {
            let q = s.truncated(order).div(&d.truncated(order))?;
            out.insert(*k, q);
        }
        Some(out)
    }

    fn embed_rat(&self, r: &Rat) -> Self {
        BivarSeries::constant(self.base.clone(), r.clone(), self.order)
    }

    fn var(&self, v: Var) -> Self {
        match v {
            Var::X => BivarSeries::from_series(ExactSeries::x(self.base.clone(), self.order)),
            Var::Y => {
                let mut b = BivarSeries::zero(self.base.clone(), self.order);
                b.insert(
                    (1, 0),
                    ExactSeries::constant(self.base.clone(), Rat::one(), self.order),
                );
                b
            }
            Var::Z => {
                let mut b = BivarSeries::zero(self.base.clone(), self.order);
                b.insert(
                    (0, 1),
                    ExactSeries::constant(self.base.clone(), Rat::one(), self.order),
                );
                b
            }
        }
    }

    fn partial(&self, v: Var) -> Self {
        match v {
            Var::X => {
                let order = self.order.saturating_sub(1);
                let mut out = BivarSeries::zero(self.base.clone(), order);
                for (k, s) in &self.terms {
                    out.insert(*k, s.derivative());
                }
                out
            }
            Var::Y => {
                let mut out = BivarSeries::zero(self.base.clone(), self.order);
                for (&(ey, ez), s) in &self.terms {
                    if ey == 0 {
                        continue;
                    }
                    out.insert(
                        (ey - 1, ez),
                        s.mul_rat(&Rat::from_integer((ey as i64).into())),
                    );
                }
                out
            }
            Var::Z => {
                let mut out = BivarSeries::zero(self.base.clone(), self.order);
                for (&(ey, ez), s) in &self.terms {
                    if ez == 0 {
                        continue;
                    }
                    out.insert(
                        (ey, ez - 1),
                        s.mul_rat(&Rat::from_integer((ez as i64).into())),
                    );
                }
                out
            }
        }
    }
}

impl fmt::Display for BivarSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (&(ey, ez), s) in &self.terms {
            let mut head = format!("({})", s);
            if ey > 0 {
                head.push_str(&if ey == 1 {
                    "*y".to_string()
                } else {
                    format!("*y^{}", ey)
                });
            }
            if ez > 0 {
                head.push_str(&if ez == 1 {
                    "*z".to_string()
                } else {
                    format!("*z^{}", ez)
                });
            }
            parts.push(head);
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Lifts a rational function of (x, y, z) into the bivariate series field.
/// The denominator must be a unit (x-only with no zero at the base point).
pub fn lift_ratfn(r: &RatFn, base: &Rat, order: usize) -> Result<BivarSeries, AlgebraError> {
    let lift_poly = |p: &crate::poly::MultiPolynomial<Rat>| -> BivarSeries {
        let mut out = BivarSeries::zero(base.clone(), order);
        let xs = ExactSeries::x(base.clone(), order);
        for (mono, c) in p.terms() {
            let e = mono.0;
            let mut s = ExactSeries::constant(base.clone(), c.clone(), order);
            for _ in 0..e[0] {
                s = s.mul(&xs);
            }
            let key = (e[1], e[2]);
            let merged = match out.terms.get(&key) {
                Some(prev) => prev.add(&s),
                None => s,
            };
            if merged.is_zero() {
                out.terms.remove(&key);
            } else {
                out.terms.insert(key, merged);
            }
        }
        out
    };
    let n = lift_poly(r.num());
    let d = lift_poly(r.den());
    n.try_div(&d)
        .ok_or_else(|| AlgebraError::PoleAtPoint(format!("denominator not a unit at x = {}", base)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::TriangleParameters;
    use crate::rat::rat;

    fn base_half() -> Rat {
        rat(1, 2)
    }

    #[test]
    fn geometric_series() {
        // 1/(1-x) at 0: all coefficients 1.
        let x = RatFn::var(Var::X);
        let r = RatFn::one().div(&RatFn::one().sub(&x)).unwrap();
        let s = expand_ratfn(&r, &Rat::zero(), 8).unwrap();
        assert!(s.coeffs.iter().all(|c| c == &Rat::one()));
        // Pole detected at x = 1.
        assert!(expand_ratfn(&r, &Rat::one(), 4).is_err());
    }

    #[test]
    fn division_and_sqrt() {
        // sqrt(1+u) at 0: 1, 1/2, -1/8, 1/16, -5/128.
        let one_plus = ExactSeries::new(Rat::zero(), vec![rat(1, 1), rat(1, 1)], 5);
        let s = one_plus.sqrt().unwrap();
        assert_eq!(
            s.coeffs,
            vec![rat(1, 1), rat(1, 2), rat(-1, 8), rat(1, 16), rat(-5, 128)]
        );
        assert_eq!(s.mul(&s), one_plus);
        // Division round trip.
        let a = ExactSeries::new(Rat::zero(), vec![rat(2, 1), rat(0, 1), rat(3, 1)], 6);
        let b = ExactSeries::new(Rat::zero(), vec![rat(1, 1), rat(-1, 1)], 6);
        let q = a.div(&b).unwrap();
        assert_eq!(q.mul(&b), a);
        // Non-unit divisor refused.
        let u = ExactSeries::new(Rat::zero(), vec![rat(0, 1), rat(1, 1)], 4);
        assert!(a.div(&u).is_none());
    }

    #[test]
    fn orders_track_information_loss() {
        let a = ExactSeries::constant(Rat::zero(), rat(1, 1), 5);
        let b = ExactSeries::constant(Rat::zero(), rat(1, 1), 3);
        assert_eq!(a.add(&b).order(), 3);
        assert_eq!(a.mul(&b).order(), 3);
        assert_eq!(a.derivative().order(), 4);
    }

    #[test]
    fn free_equation_solution_is_affine() {
        let q = RatFn::zero();
        let f = ode_series_solution(&q, &base_half(), rat(2, 1), rat(-3, 1), 10).unwrap();
        assert_eq!(f.coeffs[0], rat(2, 1));
        assert_eq!(f.coeffs[1], rat(-3, 1));
        assert!(f.coeffs[2..].iter().all(|c| c.is_zero()));
    }

    #[test]
    fn dihedral_potential_second_coefficient() {
        // q(1/2) = 19/9 for (2,2,3), so f = 1 + 0 u - (19/18) u^2 + ...
        let q = TriangleParameters::new(2, 2, 3).unwrap().schwarz_potential();
        let qs = expand_ratfn(&q, &base_half(), 4).unwrap();
        assert_eq!(qs.coeffs[0], rat(19, 9));
        let f = ode_series_solution(&q, &base_half(), Rat::one(), Rat::zero(), 6).unwrap();
        assert_eq!(f.coeffs[2], rat(-19, 18));
    }

    #[test]
    fn wronskian_of_normalized_pair_is_one() {
        let q = TriangleParameters::new(2, 3, 4).unwrap().schwarz_potential();
        let pair = solution_pair(&q, &base_half(), 20).unwrap();
        let w = wronskian(&pair.f1, &pair.f2);
        assert_eq!(w.coeffs[0], Rat::one());
        assert!(w.coeffs[1..].iter().all(|c| c.is_zero()));
        assert_eq!(w.order(), 19);
    }

    #[test]
    fn bivar_arithmetic_and_partials() {
        let base = base_half();
        let donor = BivarSeries::zero(base.clone(), 8);
        let x = donor.var(Var::X);
        let y = donor.var(Var::Y);
        let z = donor.var(Var::Z);
        // d/dy (x y^2 z) = 2 x y z
        let e = x.mul(&y).mul(&y).mul(&z);
        let d = e.partial(Var::Y);
        let want = x.mul(&y).mul(&z).mul(&donor.embed_rat(&rat(2, 1)));
        assert!(d.sub(&want).is_zero());
        // d/dx x = 1 with one less order
        let dx = x.partial(Var::X);
        assert_eq!(dx.order, 7);
        assert!(dx.sub(&donor.embed_rat(&Rat::one()).with_order(7)).is_zero());
        // y is not a unit
        assert!(x.try_div(&y).is_none());
        // but series units divide
        let u = donor.embed_rat(&rat(3, 1)).add(&x);
        let r = y.try_div(&u).unwrap();
        assert!(r.mul(&u).sub(&y).is_zero());
    }

    #[test]
    fn lift_matches_direct_expansion() {
        // (y + x z)/(1 + x^2) lifted, then y-coefficient equals the
        // expansion of 1/(1+x^2).
        let x = RatFn::var(Var::X);
        let y = RatFn::var(Var::Y);
        let z = RatFn::var(Var::Z);
        let den = RatFn::one().add(&x.mul(&x));
        let r = y.add(&x.mul(&z)).div(&den).unwrap();
        let lifted = lift_ratfn(&r, &rat(1, 3), 10).unwrap();
        let inv = RatFn::one().div(&den).unwrap();
        let want = expand_ratfn(&inv, &rat(1, 3), 10).unwrap();
        assert_eq!(lifted.coeff(1, 0), want);
        let xs = ExactSeries::x(rat(1, 3), 10);
        assert_eq!(lifted.coeff(0, 1), want.mul(&xs));
        // Denominator with y is rejected.
        let bad = RatFn::one().div(&y.add(&RatFn::one())).unwrap();
        assert!(lift_ratfn(&bad, &rat(1, 3), 4).is_err());
    }
}
