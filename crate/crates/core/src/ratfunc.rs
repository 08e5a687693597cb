//! Reduced rational functions and the polynomial gcd that keeps them
//! canonical.
//!
//! A `RationalFunction` always stores num/den with gcd(num, den) = 1, den
//! nonzero, and the unit factor fixed by `Scalar::normalize_fraction` (for
//! rational scalars: integer coefficients, coprime contents, positive
//! leading denominator coefficient).  Structural equality therefore decides
//! mathematical equality.

use std::fmt;

use num_traits::One;

use crate::poly::{Monomial, MultiPolynomial, Scalar, Var};
use crate::rat::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraError {
    DivisionByZero,
    /// Evaluation hit a zero of the denominator.
    PoleAtPoint(String),
    /// Inverse of an element that is not a unit (radical arithmetic).
    NotInvertible(String),
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::DivisionByZero => write!(f, "division by zero"),
            AlgebraError::PoleAtPoint(p) => write!(f, "evaluation at a pole: {p}"),
            AlgebraError::NotInvertible(w) => write!(f, "element is not invertible: {w}"),
        }
    }
}

impl std::error::Error for AlgebraError {}

// ---------------------------------------------------------------------------
// Polynomial gcd
// ---------------------------------------------------------------------------

/// Monic gcd of two multivariate polynomials over the coefficient field.
/// Univariate inputs use ordinary Euclidean division; genuinely multivariate
/// inputs use the primitive pseudo-remainder sequence, recursing on the
/// number of variables through contents.
pub fn poly_gcd<S: Scalar>(a: &MultiPolynomial<S>, b: &MultiPolynomial<S>) -> MultiPolynomial<S> {
    if a.is_zero() {
        return make_monic(b.clone());
    }
    if b.is_zero() {
        return make_monic(a.clone());
    }
    let pa = a.vars_present();
    let pb = b.vars_present();
    let present: Vec<Var> = Var::ALL
        .into_iter()
        .filter(|v| pa[v.index()] || pb[v.index()])
        .collect();
    match present.len() {
        0 => one_like(a),
        1 => uni_gcd(a, b, present[0]),
        _ => {
            // Main variable: smallest joint degree keeps pseudo-division cheap.
            let v = *present
                .iter()
                .min_by_key(|v| a.degree_in(**v).max(b.degree_in(**v)))
                .unwrap();
            make_monic(mv_gcd(a, b, v))
        }
    }
}

fn one_like<S: Scalar>(donor: &MultiPolynomial<S>) -> MultiPolynomial<S> {
    let c = donor.any_coeff().expect("nonzero donor");
    MultiPolynomial::constant(c.embed_rat(&Rat::one()))
}

fn make_monic<S: Scalar>(p: MultiPolynomial<S>) -> MultiPolynomial<S> {
    match p.leading() {
        None => p,
        Some((_, c)) => {
            let inv = c.inv();
            p.mul_scalar(&inv)
        }
    }
}

/// Euclidean gcd for polynomials univariate in `v` over the scalar field.
fn uni_gcd<S: Scalar>(
    a: &MultiPolynomial<S>,
    b: &MultiPolynomial<S>,
    v: Var,
) -> MultiPolynomial<S> {
    let zero = a
        .any_coeff()
        .expect("nonzero input")
        .embed_rat(&Rat::new(0.into(), 1.into()));
    let to_vec = |p: &MultiPolynomial<S>| -> Vec<S> {
        p.coeffs_in(v)
            .iter()
            .map(|c| {
                if c.is_zero() {
                    zero.clone()
                } else {
                    c.as_constant().expect("univariate input").clone()
                }
            })
            .collect()
    };
    let mut f = to_vec(a);
    let mut g = to_vec(b);
    trim(&mut f);
    trim(&mut g);
    while !g.is_empty() {
        let r = uni_rem(&f, &g);
        f = g;
        g = r;
    }
    // Monic normalization.
    let lead_inv = f.last().expect("nonzero gcd").inv();
    let coeffs: Vec<MultiPolynomial<S>> = f
        .iter()
        .map(|c| MultiPolynomial::constant(c.mul(&lead_inv)))
        .collect();
    MultiPolynomial::from_coeffs_in(v, &coeffs)
}

fn trim<S: Scalar>(v: &mut Vec<S>) {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
}

fn uni_rem<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead_inv = b.last().unwrap().inv();
    while r.len() > db {
        let k = r.len() - 1;
        let q = r[k].mul(&lead_inv);
        if !q.is_zero() {
            for (i, bc) in b.iter().enumerate() {
                let t = q.mul(bc);
                r[k - db + i] = r[k - db + i].sub(&t);
            }
        }
        r.pop();
        trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    r
}

/// Content of `p` with respect to `v`: gcd of its `v`-coefficients.
fn content_wrt<S: Scalar>(p: &MultiPolynomial<S>, v: Var) -> MultiPolynomial<S> {
    let coeffs = p.coeffs_in(v);
    let mut c = MultiPolynomial::zero();
    for q in coeffs.iter() {
        if q.is_zero() {
            continue;
        }
        c = poly_gcd(&c, q);
        if c.is_constant() {
            break;
        }
    }
    c
}

/// Pseudo-remainder of f by g with respect to v (associate-level result).
fn pseudo_rem<S: Scalar>(
    f: &MultiPolynomial<S>,
    g: &MultiPolynomial<S>,
    v: Var,
) -> MultiPolynomial<S> {
    let dg = g.degree_in(v);
    let g_coeffs = g.coeffs_in(v);
    let lg = g_coeffs[dg as usize].clone();
    let mut r = f.clone();
    while !r.is_zero() {
        let dr = r.degree_in(v);
        if dr < dg {
            break;
        }
        let r_coeffs = r.coeffs_in(v);
        let lr = r_coeffs[dr as usize].clone();
        // r <- lg * r - lr * g * v^(dr-dg)
        let shift = crate::poly::Monomial({
            let mut e = [0, 0, 0];
            e[v.index()] = dr - dg;
            e
        });
        r = r.mul(&lg).sub(&g.mul(&lr).mul_monomial(&shift));
    }
    r
}

fn mv_gcd<S: Scalar>(
    a: &MultiPolynomial<S>,
    b: &MultiPolynomial<S>,
    v: Var,
) -> MultiPolynomial<S> {
    let ca = content_wrt(a, v);
    let cb = content_wrt(b, v);
    let c = poly_gcd(&ca, &cb);
    let mut f = a.divide_exact(&ca).expect("content divides");
    let mut g = b.divide_exact(&cb).expect("content divides");
    if f.degree_in(v) < g.degree_in(v) {
        std::mem::swap(&mut f, &mut g);
    }
    loop {
        if g.degree_in(v) == 0 {
            // g is v-free and f is v-primitive: the primitive gcd is trivial.
            return c;
        }
        let r = pseudo_rem(&f, &g, v);
        if r.is_zero() {
            let cg = content_wrt(&g, v);
            let pg = g.divide_exact(&cg).expect("content divides");
            return c.mul(&pg);
        }
        let cr = content_wrt(&r, v);
        f = g;
        g = r.divide_exact(&cr).expect("content divides");
    }
}

// ---------------------------------------------------------------------------
// Rational functions
// ---------------------------------------------------------------------------

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalFunction<S: Scalar> {
    num: MultiPolynomial<S>,
    den: MultiPolynomial<S>,
}

pub type RatFn = RationalFunction<Rat>;

impl<S: Scalar> RationalFunction<S> {
    pub fn new(
        num: MultiPolynomial<S>,
        den: MultiPolynomial<S>,
    ) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if num.is_zero() {
            let one = one_like(&den);
            return Ok(RationalFunction {
                num: MultiPolynomial::zero(),
                den: one,
            });
        }
        let g = poly_gcd(&num, &den);
        let num = num.divide_exact(&g).expect("gcd divides numerator");
        let den = den.divide_exact(&g).expect("gcd divides denominator");
        let (num, den) = S::normalize_fraction(num, den);
        Ok(RationalFunction { num, den })
    }

    pub fn from_poly(p: MultiPolynomial<S>) -> Self {
        if p.is_zero() {
            // A zero numerator with no coefficient context stores den = num's
            // context-free 1; this branch is only reachable for scalars whose
            // constants are context-free, so route through Rat-style callers.
            panic!("from_poly(zero) needs context; use sub(a, a) or a nonzero donor");
        }
        let one = one_like(&p);
        RationalFunction { num: p, den: one }
    }

    pub fn constant(c: S) -> Self {
        assert!(!c.is_zero(), "constant(zero) needs context");
        let one = MultiPolynomial::constant(c.embed_rat(&Rat::one()));
        RationalFunction {
            num: MultiPolynomial::constant(c),
            den: one,
        }
    }

    pub fn num(&self) -> &MultiPolynomial<S> {
        &self.num
    }

    pub fn den(&self) -> &MultiPolynomial<S> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// A scalar usable as context donor; every stored value has one because
    /// the denominator is nonzero.
    pub fn any_coeff(&self) -> &S {
        self.den.any_coeff().expect("denominator nonzero")
    }

    pub fn zero_like(&self) -> Self {
        let one = one_like(&self.den);
        RationalFunction {
            num: MultiPolynomial::zero(),
            den: one,
        }
    }

    pub fn one_like(&self) -> Self {
        let one = one_like(&self.den);
        RationalFunction {
            num: one.clone(),
            den: one,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let num = self.num.mul(&o.den).add(&o.num.mul(&self.den));
        let den = self.den.mul(&o.den);
        Self::new(num, den).expect("denominator product nonzero")
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        // Cross-cancellation: inputs are reduced, so after cancelling
        // gcd(self.num, o.den) and gcd(o.num, self.den) the product is
        // reduced up to unit normalization.
        if self.is_zero() || o.is_zero() {
            return self.zero_like();
        }
        let g1 = poly_gcd(&self.num, &o.den);
        let g2 = poly_gcd(&o.num, &self.den);
        let n1 = self.num.divide_exact(&g1).expect("gcd divides");
        let d2 = o.den.divide_exact(&g1).expect("gcd divides");
        let n2 = o.num.divide_exact(&g2).expect("gcd divides");
        let d1 = self.den.divide_exact(&g2).expect("gcd divides");
        let (num, den) = S::normalize_fraction(n1.mul(&n2), d1.mul(&d2));
        RationalFunction { num, den }
    }

    pub fn div(&self, o: &Self) -> Result<Self, AlgebraError> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn inv(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let (num, den) = S::normalize_fraction(self.den.clone(), self.num.clone());
        Ok(RationalFunction { num, den })
    }

    pub fn pow(&self, e: u32) -> Self {
        if e == 0 {
            return self.one_like();
        }
        let mut r = self.clone();
        for _ in 1..e {
            r = r.mul(self);
        }
        r
    }

    pub fn mul_rat(&self, r: &Rat) -> Self {
        let donor = self.any_coeff();
        let s = donor.embed_rat(r);
        Self::new(self.num.mul_scalar(&s), self.den.clone()).expect("den nonzero")
    }

    /// Partial derivative via the quotient rule, reduced.
    /// The coordinate v as a rational function, using the receiver as
    /// scalar-context donor.
    pub fn var_like(&self, v: Var) -> Self {
        let one = self.any_coeff().embed_rat(&Rat::one());
        let num = MultiPolynomial::from_terms([(Monomial::var(v), one.clone())]);
        RationalFunction {
            num,
            den: MultiPolynomial::constant(one),
        }
    }

    pub fn partial(&self, v: Var) -> Self {
        let n = self.num.partial(v).mul(&self.den).sub(&self.num.mul(&self.den.partial(v)));
        let d = self.den.mul(&self.den);
        Self::new(n, d).expect("den nonzero")
    }

    pub fn eval_rat(&self, point: &[Rat; 3]) -> Result<S, AlgebraError> {
        let dv = self
            .den
            .eval_rat(point)
            .expect("denominator nonzero");
        if dv.is_zero() {
            return Err(AlgebraError::PoleAtPoint(format!(
                "den vanishes at ({}, {}, {})",
                point[0], point[1], point[2]
            )));
        }
        let nv = match self.num.eval_rat(point) {
            None => return Ok(dv.embed_rat(&Rat::new(0.into(), 1.into()))),
            Some(v) => v,
        };
        Ok(nv.div(&dv))
    }

    pub fn vars_present(&self) -> [bool; 3] {
        let a = self.num.vars_present();
        let b = self.den.vars_present();
        [a[0] || b[0], a[1] || b[1], a[2] || b[2]]
    }

    pub fn is_univariate_in(&self, v: Var) -> bool {
        let p = self.vars_present();
        Var::ALL
            .into_iter()
            .all(|w| w == v || !p[w.index()])
    }

    pub fn map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> T) -> RationalFunction<T> {
        RationalFunction::new(self.num.map_scalars(&f), self.den.map_scalars(&f))
            .expect("nonzero denominator maps to nonzero")
    }
}

impl RationalFunction<Rat> {
    pub fn zero() -> Self {
        RationalFunction {
            num: MultiPolynomial::zero(),
            den: MultiPolynomial::from_int(1),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn var(v: Var) -> Self {
        RationalFunction {
            num: MultiPolynomial::var(v),
            den: MultiPolynomial::from_int(1),
        }
    }

    pub fn from_int(n: i64) -> Self {
        RationalFunction {
            num: MultiPolynomial::from_int(n),
            den: MultiPolynomial::from_int(1),
        }
    }

    pub fn from_rat(r: Rat) -> Self {
        RationalFunction {
            num: MultiPolynomial::from_rat(r),
            den: MultiPolynomial::from_int(1),
        }
    }
}

impl<S: Scalar> fmt::Display for RationalFunction<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() && self.den.as_constant().map_or(false, |c| {
            c == &c.embed_rat(&Rat::one())
        }) {
            return write!(f, "{}", self.num);
        }
        let num_simple = self.num.num_terms() == 1;
        let den_simple = self.den.num_terms() == 1 && self.den.total_degree() == 0;
        match (num_simple, den_simple) {
            (true, true) => write!(f, "{}/{}", self.num, self.den),
            (true, false) => write!(f, "{}/({})", self.num, self.den),
            (false, true) => write!(f, "({})/{}", self.num, self.den),
            (false, false) => write!(f, "({})/({})", self.num, self.den),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    fn x() -> RatFn {
        RatFn::var(Var::X)
    }

    fn y() -> RatFn {
        RatFn::var(Var::Y)
    }

    fn int(n: i64) -> RatFn {
        RatFn::from_int(n)
    }

    #[test]
    fn gcd_univariate() {
        // gcd(x^2 - 1, x^2 - 2x + 1) = x - 1
        let a = MultiPolynomial::var(Var::X).pow(2).sub(&MultiPolynomial::from_int(1));
        let b = MultiPolynomial::var(Var::X)
            .sub(&MultiPolynomial::from_int(1))
            .pow(2);
        let g = poly_gcd(&a, &b);
        let expect = MultiPolynomial::var(Var::X).sub(&MultiPolynomial::from_int(1));
        assert_eq!(g, expect);
    }

    #[test]
    fn gcd_multivariate() {
        // gcd((x+y)(x-y), (x+y)^2) = x + y (monic)
        let s = MultiPolynomial::var(Var::X).add(&MultiPolynomial::var(Var::Y));
        let d = MultiPolynomial::var(Var::X).sub(&MultiPolynomial::var(Var::Y));
        let g = poly_gcd(&s.mul(&d), &s.pow(2));
        assert_eq!(g, s);
    }

    #[test]
    fn gcd_coprime() {
        let a = MultiPolynomial::var(Var::X).pow(2).add(&MultiPolynomial::var(Var::Y));
        let b = MultiPolynomial::var(Var::Z).add(&MultiPolynomial::from_int(1));
        let g = poly_gcd(&a, &b);
        assert_eq!(g, MultiPolynomial::from_int(1));
    }

    #[test]
    fn canonical_normalization() {
        // x/x = 1; (x^2 - y^2)/(x + y) = x - y.
        let r = x().div(&x()).unwrap();
        assert_eq!(r, int(1));
        let n = x().mul(&x()).sub(&y().mul(&y()));
        let d = x().add(&y());
        let q = n.div(&d).unwrap();
        assert_eq!(q, x().sub(&y()));
    }

    #[test]
    fn canonical_scaling_keeps_integer_pair() {
        // 3/(16 x^2): numerator 3, denominator 16*x^2 exactly.
        let f = int(3)
            .div(&x().mul(&x()).mul_rat(&rat_int(16)))
            .unwrap();
        assert_eq!(f.num(), &MultiPolynomial::from_int(3));
        assert_eq!(
            f.den(),
            &MultiPolynomial::var(Var::X).pow(2).mul_scalar(&rat_int(16))
        );
    }

    #[test]
    fn same_function_same_representation() {
        let a = x().mul_rat(&rat(1, 2)).add(&int(1)); // x/2 + 1
        let b = x().add(&int(2)).div(&int(2)).unwrap(); // (x+2)/2
        assert_eq!(a, b);
    }

    #[test]
    fn field_laws_spot_checks() {
        let f = x().add(&y()).div(&x().sub(&y())).unwrap();
        let g = y().div(&x()).unwrap();
        let h = f.mul(&g).div(&g).unwrap();
        assert_eq!(h, f);
        assert!(f.sub(&f).is_zero());
        let inv = f.inv().unwrap();
        assert_eq!(f.mul(&inv), int(1));
    }

    #[test]
    fn partial_derivative_quotient_rule() {
        // d/dx (1/x) = -1/x^2
        let f = int(1).div(&x()).unwrap();
        let d = f.partial(Var::X);
        let expect = int(-1).div(&x().mul(&x())).unwrap();
        assert_eq!(d, expect);
        // Leibniz on a product.
        let g = y().add(&x().mul(&x()));
        let p = f.mul(&g);
        let lhs = p.partial(Var::X);
        let rhs = f.partial(Var::X).mul(&g).add(&f.mul(&g.partial(Var::X)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn evaluation_and_poles() {
        let f = int(1).div(&x().sub(&int(1))).unwrap();
        assert_eq!(
            f.eval_rat(&[rat_int(3), rat_int(0), rat_int(0)]).unwrap(),
            rat(1, 2)
        );
        assert!(f.eval_rat(&[rat_int(1), rat_int(0), rat_int(0)]).is_err());
    }
}
