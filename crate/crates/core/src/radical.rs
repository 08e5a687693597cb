//! Radical field extensions K(t) with t^m = g.
//!
//! The base field K is the rational-function field over a `Scalar`; an
//! element of the extension is stored as its coordinate vector in the
//! basis 1, t, ..., t^(m-1).  Multiplication wraps powers of t through
//! t^m = g, differentiation uses dt/dv = t * (d g / dv) / (m g), and the
//! Galois action of the cyclic group sends t to zeta_m^j t.
//!
//! Division runs the extended Euclidean algorithm against T^m - g, so it
//! also detects non-units when the extension is not a field.

use std::fmt;
use std::sync::Arc;

use crate::forms::{exterior_derivative_1, wedge_11, CoeffField, OneForm};
use crate::poly::{Scalar, Var};
use crate::rat::Rat;
use crate::ratfunc::RationalFunction;

#[derive(Debug)]
pub struct RadicalContext<S: Scalar> {
    pub index: u32,
    pub radicand: RationalFunction<S>,
    /// A primitive index-th root of unity in S, when S contains one.  For
    /// index 2 this is always available as -1.  Needed only by
    /// `conjugate`; averaging and descent work without it.
    pub zeta: Option<S>,
}

impl<S: Scalar> RadicalContext<S> {
    pub fn new(index: u32, radicand: RationalFunction<S>) -> Arc<Self> {
        assert!(index >= 2, "extension index must be at least 2");
        assert!(!radicand.is_zero(), "radicand must be nonzero");
        let zeta = if index == 2 {
            Some(radicand.any_coeff().embed_rat(&-Rat::from_integer(1.into())))
        } else {
            None
        };
        Arc::new(RadicalContext {
            index,
            radicand,
            zeta,
        })
    }

    pub fn with_zeta(index: u32, radicand: RationalFunction<S>, zeta: S) -> Arc<Self> {
        assert!(index >= 2);
        Arc::new(RadicalContext {
            index,
            radicand,
            zeta: Some(zeta),
        })
    }
}

/// Element a_0 + a_1 t + ... + a_{m-1} t^{m-1} of K(t).
#[derive(Clone, Debug)]
pub struct RadicalElement<S: Scalar> {
    pub ctx: Arc<RadicalContext<S>>,
    /// Always exactly `index` components.
    pub comps: Vec<RationalFunction<S>>,
}

impl<S: Scalar> PartialEq for RadicalElement<S> {
    fn eq(&self, o: &Self) -> bool {
        self.ctx.index == o.ctx.index
            && self.ctx.radicand == o.ctx.radicand
            && self.comps == o.comps
    }
}

impl<S: Scalar> RadicalElement<S> {
    pub fn zero(ctx: &Arc<RadicalContext<S>>) -> Self {
        let z = ctx.radicand.zero_like();
        RadicalElement {
            ctx: ctx.clone(),
            comps: vec![z; ctx.index as usize],
        }
    }

    pub fn from_base(ctx: &Arc<RadicalContext<S>>, a: RationalFunction<S>) -> Self {
        let mut e = Self::zero(ctx);
        e.comps[0] = a;
        e
    }

    pub fn one(ctx: &Arc<RadicalContext<S>>) -> Self {
        Self::from_base(ctx, ctx.radicand.one_like())
    }

    /// The generator t itself.
    pub fn radical(ctx: &Arc<RadicalContext<S>>) -> Self {
        let mut e = Self::zero(ctx);
        e.comps[1] = ctx.radicand.one_like();
        e
    }

    /// Component in degree i (coefficient of t^i).
    pub fn component(&self, i: usize) -> &RationalFunction<S> {
        &self.comps[i]
    }

    /// The base-field value if all higher components vanish.
    pub fn as_base(&self) -> Option<RationalFunction<S>> {
        if self.comps[1..].iter().all(|c| c.is_zero()) {
            Some(self.comps[0].clone())
        } else {
            None
        }
    }

    fn check_ctx(&self, o: &Self) {
        assert_eq!(self.ctx.index, o.ctx.index, "mixed radical contexts");
        assert!(
            self.ctx.radicand == o.ctx.radicand,
            "mixed radical contexts"
        );
    }

    /// Image under the Galois generator iterated j times: t -> zeta^j t.
    /// Panics if the context has no root of unity.
    pub fn conjugate(&self, j: i64) -> Self {
        let zeta = self
            .ctx
            .zeta
            .as_ref()
            .expect("conjugation needs a root of unity in the scalar field");
        let m = self.ctx.index as i64;
        let mut comps = Vec::with_capacity(self.comps.len());
        for (i, a) in self.comps.iter().enumerate() {
            let e = ((i as i64 * j) % m + m) % m;
            let mut w = a.any_coeff().embed_rat(&Rat::from_integer(1.into()));
            for _ in 0..e {
                w = Scalar::mul(&w, zeta);
            }
            comps.push(a.mul(&RationalFunction::constant(w)));
        }
        RadicalElement {
            ctx: self.ctx.clone(),
            comps,
        }
    }

    /// (1/m) sum of all Galois conjugates.  The root-of-unity sums kill
    /// every graded piece except degree zero, so this is simply the t^0
    /// component viewed in the base field.
    pub fn galois_average(&self) -> RationalFunction<S> {
        self.comps[0].clone()
    }
}

impl<S: Scalar> CoeffField for RadicalElement<S> {
    fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    fn add(&self, o: &Self) -> Self {
        self.check_ctx(o);
        RadicalElement {
            ctx: self.ctx.clone(),
            comps: self
                .comps
                .iter()
                .zip(&o.comps)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    fn neg(&self) -> Self {
        RadicalElement {
            ctx: self.ctx.clone(),
            comps: self.comps.iter().map(|c| c.neg()).collect(),
        }
    }

    fn mul(&self, o: &Self) -> Self {
        self.check_ctx(o);
        let m = self.ctx.index as usize;
        let mut out = Self::zero(&self.ctx);
        for (i, a) in self.comps.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.comps.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let prod = a.mul(b);
                let k = i + j;
                if k < m {
                    out.comps[k] = out.comps[k].add(&prod);
                } else {
                    out.comps[k - m] = out.comps[k - m].add(&prod.mul(&self.ctx.radicand));
                }
            }
        }
        out
    }

    fn try_div(&self, o: &Self) -> Option<Self> {
        if o.is_zero() {
            return None;
        }
        // Fast path: base-field divisor.
        if let Some(b) = o.as_base() {
            let inv = b.inv().ok()?;
            let scale = Self::from_base(&self.ctx, inv);
            return Some(self.mul(&scale));
        }
        // Extended Euclid of o against T^m - g in K[T].
        let m = self.ctx.index as usize;
        let zero = self.ctx.radicand.zero_like();
        let one = self.ctx.radicand.one_like();
        let mut modulus = vec![zero.clone(); m + 1];
        modulus[0] = self.ctx.radicand.neg();
        modulus[m] = one.clone();
        let a: Vec<RationalFunction<S>> = o.comps.clone();
        let (g, s) = kpoly_half_xgcd(&a, &modulus)?;
        // g is a nonzero constant (degree 0) iff o is a unit.
        if kpoly_deg(&g) != Some(0) {
            return None;
        }
        let ginv = g[0].inv().ok()?;
        let mut inv = Self::zero(&self.ctx);
        for (i, c) in s.iter().enumerate() {
            let red = i % m;
            let mut term = c.mul(&ginv);
            for _ in 0..(i / m) {
                term = term.mul(&self.ctx.radicand);
            }
            inv.comps[red] = inv.comps[red].add(&term);
        }
        Some(self.mul(&inv))
    }

    fn embed_rat(&self, r: &Rat) -> Self {
        let mut e = Self::zero(&self.ctx);
        e.comps[0] = self.ctx.radicand.zero_like().embed_rat(r);
        e
    }

    fn var(&self, v: Var) -> Self {
        Self::from_base(&self.ctx, self.ctx.radicand.var_like(v))
    }

    /// d/dv with dt/dv = t (dg/dv) / (m g): component i picks up
    /// a_i' + a_i * i * (dg/dv) / (m g).
    fn partial(&self, v: Var) -> Self {
        let g = &self.ctx.radicand;
        let m = self.ctx.index;
        let dg = g.partial(v);
        let mg = g.mul_rat(&Rat::from_integer(m.into()));
        let logd = dg.div(&mg).expect("radicand is nonzero");
        let mut comps = Vec::with_capacity(self.comps.len());
        for (i, a) in self.comps.iter().enumerate() {
            let scaled = a.mul(&logd).mul_rat(&Rat::from_integer(i.into()));
            comps.push(a.partial(v).add(&scaled));
        }
        RadicalElement {
            ctx: self.ctx.clone(),
            comps,
        }
    }
}

fn kpoly_deg<S: Scalar>(p: &[RationalFunction<S>]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

fn kpoly_trim<S: Scalar>(p: &mut Vec<RationalFunction<S>>) {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

/// Half extended Euclid over K[T]: returns (gcd, s) with s*a = gcd mod b.
/// None only on arithmetic failure (cannot happen for field coefficients).
fn kpoly_half_xgcd<S: Scalar>(
    a: &[RationalFunction<S>],
    b: &[RationalFunction<S>],
) -> Option<(Vec<RationalFunction<S>>, Vec<RationalFunction<S>>)> {
    let one = || a.iter().chain(b).next().unwrap().one_like();
    let mut r0: Vec<_> = a.to_vec();
    let mut r1: Vec<_> = b.to_vec();
    kpoly_trim(&mut r0);
    kpoly_trim(&mut r1);
    let mut s0 = vec![one()];
    let mut s1: Vec<RationalFunction<S>> = Vec::new();
    while !r1.is_empty() {
        let (q, r) = kpoly_divrem(&r0, &r1)?;
        let qs = kpoly_sub(&s0, &kpoly_mul(&q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = qs;
    }
    Some((r0, s0))
}

fn kpoly_mul<S: Scalar>(
    a: &[RationalFunction<S>],
    b: &[RationalFunction<S>],
) -> Vec<RationalFunction<S>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let zero = a[0].zero_like();
    let mut c = vec![zero; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            c[i + j] = c[i + j].add(&x.mul(y));
        }
    }
    kpoly_trim(&mut c);
    c
}

fn kpoly_sub<S: Scalar>(
    a: &[RationalFunction<S>],
    b: &[RationalFunction<S>],
) -> Vec<RationalFunction<S>> {
    let n = a.len().max(b.len());
    if n == 0 {
        return Vec::new();
    }
    let zero = a.iter().chain(b).next().unwrap().zero_like();
    let mut c = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(|| zero.clone());
        let y = b.get(i).cloned().unwrap_or_else(|| zero.clone());
        c.push(x.sub(&y));
    }
    kpoly_trim(&mut c);
    c
}

fn kpoly_divrem<S: Scalar>(
    a: &[RationalFunction<S>],
    b: &[RationalFunction<S>],
) -> Option<(Vec<RationalFunction<S>>, Vec<RationalFunction<S>>)> {
    let db = kpoly_deg(b)?;
    let lead_inv = b[db].inv().ok()?;
    let zero = b[db].zero_like();
    let mut r: Vec<_> = a.to_vec();
    kpoly_trim(&mut r);
    if r.len() < db + 1 {
        return Some((Vec::new(), r));
    }
    let mut q = vec![zero; r.len() - db];
    while r.len() >= db + 1 {
        let k = r.len() - 1;
        let f = r[k].mul(&lead_inv);
        q[k - db] = f.clone();
        for (i, bc) in b.iter().enumerate().take(db + 1) {
            let idx = k - db + i;
            r[idx] = r[idx].sub(&f.mul(bc));
        }
        r.pop();
        kpoly_trim(&mut r);
    }
    Some((q, r))
}

impl<S: Scalar> fmt::Display for RadicalElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, c) in self.comps.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let head = match i {
                0 => format!("{}", c),
                1 => format!("({})*t", c),
                _ => format!("({})*t^{}", c, i),
            };
            parts.push(head);
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Splits a 1-form with radical coefficients into its graded components:
/// omega = sum_i t^i beta_i with beta_i over the base field.  Given a base
/// field alpha with d(omega) = alpha ^ omega, each graded piece satisfies
/// d(beta_i) = alpha_i ^ beta_i for the shifted cocycle
/// alpha_i = alpha - (i/m) dg/g.  Returns the nonzero (i, beta_i, alpha_i)
/// triples after verifying both the hypothesis and every conclusion.
pub fn cyclic_descend<S: Scalar>(
    omega: &OneForm<RadicalElement<S>>,
    alpha: &OneForm<RadicalElement<S>>,
) -> Result<Vec<DescentComponent<S>>, DescentError> {
    let ctx = omega
        .dx
        .ctx
        .clone();
    // alpha must live in the base field.
    let base_alpha = match (
        alpha.dx.as_base(),
        alpha.dy.as_base(),
        alpha.dz.as_base(),
    ) {
        (Some(a), Some(b), Some(c)) => OneForm {
            dx: a,
            dy: b,
            dz: c,
        },
        _ => return Err(DescentError::AlphaNotInBase),
    };
    // Hypothesis d(omega) = alpha ^ omega over the extension.
    let lhs = exterior_derivative_1(omega);
    let rhs = wedge_11(alpha, omega);
    if !lhs.sub(&rhs).is_zero() {
        return Err(DescentError::HypothesisFails);
    }
    let m = ctx.index;
    let g = &ctx.radicand;
    let dg = OneForm {
        dx: g.partial(Var::X),
        dy: g.partial(Var::Y),
        dz: g.partial(Var::Z),
    };
    let mut out = Vec::new();
    for i in 0..m as usize {
        let beta = OneForm {
            dx: omega.dx.component(i).clone(),
            dy: omega.dy.component(i).clone(),
            dz: omega.dz.component(i).clone(),
        };
        if beta.is_zero() {
            continue;
        }
        // alpha_i = alpha - (i/m) dg/g
        let shift = Rat::new((i as i64).into(), (m as i64).into());
        let scale = g.inv().expect("radicand nonzero").mul_rat(&-shift);
        let alpha_i = base_alpha.add(&dg.scale(&scale));
        let li = exterior_derivative_1(&beta);
        let ri = wedge_11(&alpha_i, &beta);
        if !li.sub(&ri).is_zero() {
            return Err(DescentError::ComponentFails(i));
        }
        out.push(DescentComponent {
            degree: i,
            form: beta,
            cocycle: alpha_i,
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct DescentComponent<S: Scalar> {
    pub degree: usize,
    pub form: OneForm<RationalFunction<S>>,
    pub cocycle: OneForm<RationalFunction<S>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DescentError {
    AlphaNotInBase,
    HypothesisFails,
    ComponentFails(usize),
}

impl fmt::Display for DescentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DescentError::AlphaNotInBase => write!(f, "cocycle has radical components"),
            DescentError::HypothesisFails => write!(f, "d(omega) != alpha ^ omega"),
            DescentError::ComponentFails(i) => {
                write!(f, "graded component {} fails its descent equation", i)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;
    use crate::ratfunc::RatFn;

    fn sqrt_k_ctx() -> Arc<RadicalContext<Rat>> {
        // t^2 = x(x-1)
        let x = RatFn::var(Var::X);
        let k = x.mul(&x.sub(&RatFn::one()));
        RadicalContext::new(2, k)
    }

    #[test]
    fn square_of_radical_is_radicand() {
        let ctx = sqrt_k_ctx();
        let t = RadicalElement::radical(&ctx);
        let sq = t.mul(&t);
        assert_eq!(sq.as_base(), Some(ctx.radicand.clone()));
    }

    #[test]
    fn rationalizes_inverse() {
        // 1/(x + t) = (x - t)/x since (x+t)(x-t) = x^2 - (x^2-x) = x.
        let ctx = sqrt_k_ctx();
        let x = RadicalElement::from_base(&ctx, RatFn::var(Var::X));
        let t = RadicalElement::radical(&ctx);
        let one = RadicalElement::one(&ctx);
        let inv = one.try_div(&x.add(&t)).unwrap();
        let invx = RatFn::var(Var::X).inv().unwrap();
        let want = x.sub(&t).mul(&RadicalElement::from_base(&ctx, invx));
        assert_eq!(inv, want);
        // And the defining identity.
        assert_eq!(x.add(&t).mul(&inv), one);
    }

    #[test]
    fn derivative_of_radical() {
        // (sqrt g)' = g' / (2 sqrt g) = t g' / (2 g)
        let ctx = sqrt_k_ctx();
        let t = RadicalElement::radical(&ctx);
        let dt = t.partial(Var::X);
        let g = &ctx.radicand;
        let expect = g
            .partial(Var::X)
            .div(&g.mul_rat(&rat(2, 1)))
            .unwrap();
        assert!(dt.comps[0].is_zero());
        assert_eq!(dt.comps[1], expect);
        // Leibniz: (t*t)' = 2 t t' in the base field.
        let prod_d = t.mul(&t).partial(Var::X);
        let leib = t.mul(&dt).add(&dt.mul(&t));
        assert_eq!(prod_d, leib);
    }

    #[test]
    fn conjugation_and_average() {
        let ctx = sqrt_k_ctx();
        let x = RadicalElement::from_base(&ctx, RatFn::var(Var::X));
        let t = RadicalElement::radical(&ctx);
        let a = x.add(&t.mul(&t).add(&t));
        let c = a.conjugate(1);
        // t -> -t
        assert_eq!(c.comps[0], a.comps[0]);
        assert_eq!(c.comps[1], a.comps[1].neg());
        assert_eq!(a.conjugate(2), a);
        // Average equals the degree-zero component.
        let avg = a.galois_average();
        let manual = a.add(&c).comps[0].mul_rat(&rat(1, 2));
        assert_eq!(avg, manual);
        assert_eq!(avg, a.comps[0]);
    }

    #[test]
    fn inverse_of_generic_element() {
        let ctx = sqrt_k_ctx();
        let one = RadicalElement::one(&ctx);
        // a = 1 + (x+2) t
        let xp2 = RatFn::var(Var::X).add(&RatFn::from_int(2));
        let a = one.add(&RadicalElement::radical(&ctx).mul(&RadicalElement::from_base(&ctx, xp2)));
        let ainv = one.try_div(&a).unwrap();
        assert_eq!(a.mul(&ainv), one);
    }

    #[test]
    fn zero_divisor_rejected() {
        // With t^2 = x^2 the ring splits: (t - x)(t + x) = 0.
        let x = RatFn::var(Var::X);
        let ctx = RadicalContext::new(2, x.mul(&x));
        let t = RadicalElement::radical(&ctx);
        let xe = RadicalElement::from_base(&ctx, x);
        let d = t.sub(&xe);
        assert!(!d.is_zero());
        assert!(RadicalElement::one(&ctx).try_div(&d).is_none());
    }

    #[test]
    fn descent_splits_two_component_form() {
        // omega = (1+t) s dg with s = x free of poles, g = x(x-1):
        // d omega = alpha ^ omega for alpha = ds/s.  Components:
        // beta_0 = s dg (cocycle alpha) and beta_1 = s dg shifted by
        // -(1/2) dg/g.
        let ctx = sqrt_k_ctx();
        let g = ctx.radicand.clone();
        let s = RatFn::var(Var::Y);
        let dgx = g.partial(Var::X);
        let mk = |c: RatFn| RadicalElement::from_base(&ctx, c);
        let one_plus_t = RadicalElement::one(&ctx).add(&RadicalElement::radical(&ctx));
        let omega = OneForm {
            dx: one_plus_t.mul(&mk(s.mul(&dgx))),
            dy: RadicalElement::zero(&ctx),
            dz: RadicalElement::zero(&ctx),
        };
        // alpha = ds/s = dy/y
        let alpha = OneForm {
            dx: RadicalElement::zero(&ctx),
            dy: mk(s.inv().unwrap()),
            dz: RadicalElement::zero(&ctx),
        };
        let comps = cyclic_descend(&omega, &alpha).unwrap();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].degree, 0);
        assert_eq!(comps[1].degree, 1);
        // Degree-0 cocycle is alpha itself.
        assert_eq!(comps[0].cocycle.dy, s.inv().unwrap());
        assert!(comps[0].cocycle.dx.is_zero());
        // Degree-1 cocycle picks up -(1/2) g'/g in dx.
        let want = g.partial(Var::X).div(&g).unwrap().mul_rat(&rat(-1, 2));
        assert_eq!(comps[1].cocycle.dx, want);
    }

    #[test]
    fn descent_rejects_wrong_alpha() {
        let ctx = sqrt_k_ctx();
        let omega = OneForm {
            dx: RadicalElement::one(&ctx),
            dy: RadicalElement::zero(&ctx),
            dz: RadicalElement::zero(&ctx),
        };
        let alpha = OneForm {
            dx: RadicalElement::zero(&ctx),
            dy: RadicalElement::from_base(&ctx, RatFn::var(Var::X)),
            dz: RadicalElement::zero(&ctx),
        };
        // d(dx) = 0 but alpha ^ omega = -x dx^dy != 0.
        assert_eq!(
            cyclic_descend(&omega, &alpha),
            Err(DescentError::HypothesisFails)
        );
    }
}
