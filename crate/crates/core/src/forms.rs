//! Differential forms on 3-space over a pluggable coefficient field.
//!
//! The coefficient contract [`CoeffField`] is deliberately small: ring
//! operations, division where defined, the three partial derivatives and a
//! zero test.  Rational functions, radical extension elements and truncated
//! series coefficients all implement it, so the wedge products, the exterior
//! derivative and the integrability checks are written once.
//!
//! Conventions: orientation dx ^ dy ^ dz positive; a 2-form is stored by its
//! (dy^dz, dz^dx, dx^dy) coefficients, so the 2-form attached to a vector
//! field (P, Q, R) is P dy^dz + Q dz^dx + R dx^dy.

use std::fmt;

use crate::poly::{Scalar, Var};
use crate::rat::Rat;
use crate::ratfunc::{RatFn, RationalFunction};
use crate::report::VerificationReport;

/// Coefficient field abstraction for differential forms: a commutative ring
/// with partial division, an embedding of the rationals and the three
/// coordinate derivations.  `embed_rat` uses the receiver only as context
/// donor (a radical or cyclotomic element knows its own extension data).
pub trait CoeffField: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// Division; `None` when the divisor is zero or not a unit in the
    /// coefficient ring (a truncated series with vanishing constant term,
    /// for instance).
    fn try_div(&self, o: &Self) -> Option<Self>;
    fn embed_rat(&self, r: &Rat) -> Self;
    /// The coordinate function v as a field element, built from the
    /// receiver's context.
    fn var(&self, v: Var) -> Self;
    fn partial(&self, v: Var) -> Self;
}

impl<S: Scalar> CoeffField for RationalFunction<S> {
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }

    fn add(&self, o: &Self) -> Self {
        RationalFunction::add(self, o)
    }

    fn sub(&self, o: &Self) -> Self {
        RationalFunction::sub(self, o)
    }

    fn neg(&self) -> Self {
        RationalFunction::neg(self)
    }

    fn mul(&self, o: &Self) -> Self {
        RationalFunction::mul(self, o)
    }

    fn try_div(&self, o: &Self) -> Option<Self> {
        RationalFunction::div(self, o).ok()
    }

    fn embed_rat(&self, r: &Rat) -> Self {
        if num_traits::Zero::is_zero(r) {
            return self.zero_like();
        }
        let donor = self.any_coeff();
        RationalFunction::constant(donor.embed_rat(r))
    }

    fn var(&self, v: Var) -> Self {
        self.var_like(v)
    }

    fn partial(&self, v: Var) -> Self {
        RationalFunction::partial(self, v)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OneForm<C: CoeffField> {
    pub dx: C,
    pub dy: C,
    pub dz: C,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TwoForm<C: CoeffField> {
    pub dydz: C,
    pub dzdx: C,
    pub dxdy: C,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ThreeForm<C: CoeffField> {
    pub dxdydz: C,
}

/// Polynomial-coefficient vector field (P, Q, R) = (x', y', z').
#[derive(Clone, Debug, PartialEq)]
pub struct VectorField3 {
    pub p: RatFn,
    pub q: RatFn,
    pub r: RatFn,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExteriorError {
    /// The candidate 1-form is identically zero.
    ZeroOmega,
    /// Gauge factor or leading coefficient is zero / not invertible.
    NotInvertible(String),
}

impl fmt::Display for ExteriorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExteriorError::ZeroOmega => write!(f, "candidate 1-form is identically zero"),
            ExteriorError::NotInvertible(w) => write!(f, "cannot divide: {w}"),
        }
    }
}

impl std::error::Error for ExteriorError {}

impl<C: CoeffField> OneForm<C> {
    pub fn new(dx: C, dy: C, dz: C) -> Self {
        OneForm { dx, dy, dz }
    }

    pub fn is_zero(&self) -> bool {
        self.dx.is_zero() && self.dy.is_zero() && self.dz.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        OneForm::new(self.dx.add(&o.dx), self.dy.add(&o.dy), self.dz.add(&o.dz))
    }

    pub fn sub(&self, o: &Self) -> Self {
        OneForm::new(self.dx.sub(&o.dx), self.dy.sub(&o.dy), self.dz.sub(&o.dz))
    }

    pub fn neg(&self) -> Self {
        OneForm::new(self.dx.neg(), self.dy.neg(), self.dz.neg())
    }

    pub fn scale(&self, c: &C) -> Self {
        OneForm::new(self.dx.mul(c), self.dy.mul(c), self.dz.mul(c))
    }

    pub fn map<D: CoeffField>(&self, f: impl Fn(&C) -> D) -> OneForm<D> {
        OneForm::new(f(&self.dx), f(&self.dy), f(&self.dz))
    }

    pub fn coeffs(&self) -> [&C; 3] {
        [&self.dx, &self.dy, &self.dz]
    }
}

impl<C: CoeffField> TwoForm<C> {
    pub fn new(dydz: C, dzdx: C, dxdy: C) -> Self {
        TwoForm { dydz, dzdx, dxdy }
    }

    pub fn is_zero(&self) -> bool {
        self.dydz.is_zero() && self.dzdx.is_zero() && self.dxdy.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        TwoForm::new(
            self.dydz.add(&o.dydz),
            self.dzdx.add(&o.dzdx),
            self.dxdy.add(&o.dxdy),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        TwoForm::new(
            self.dydz.sub(&o.dydz),
            self.dzdx.sub(&o.dzdx),
            self.dxdy.sub(&o.dxdy),
        )
    }

    pub fn neg(&self) -> Self {
        TwoForm::new(self.dydz.neg(), self.dzdx.neg(), self.dxdy.neg())
    }

    pub fn scale(&self, c: &C) -> Self {
        TwoForm::new(self.dydz.mul(c), self.dzdx.mul(c), self.dxdy.mul(c))
    }

    pub fn map<D: CoeffField>(&self, f: impl Fn(&C) -> D) -> TwoForm<D> {
        TwoForm::new(f(&self.dydz), f(&self.dzdx), f(&self.dxdy))
    }
}

impl<C: CoeffField> ThreeForm<C> {
    pub fn is_zero(&self) -> bool {
        self.dxdydz.is_zero()
    }
}

impl VectorField3 {
    pub fn new(p: RatFn, q: RatFn, r: RatFn) -> Self {
        VectorField3 { p, q, r }
    }
}

/// The 2-form ι_V (dx^dy^dz) attached to a vector field: contraction of the
/// volume form, so that a 1-form ω annihilates V exactly when ω ^ Ω_V = 0.
pub fn vf_to_twoform(v: &VectorField3) -> TwoForm<RatFn> {
    TwoForm::new(v.p.clone(), v.q.clone(), v.r.clone())
}

pub fn wedge_11<C: CoeffField>(a: &OneForm<C>, b: &OneForm<C>) -> TwoForm<C> {
    TwoForm::new(
        a.dy.mul(&b.dz).sub(&a.dz.mul(&b.dy)),
        a.dz.mul(&b.dx).sub(&a.dx.mul(&b.dz)),
        a.dx.mul(&b.dy).sub(&a.dy.mul(&b.dx)),
    )
}

pub fn wedge_12<C: CoeffField>(a: &OneForm<C>, b: &TwoForm<C>) -> ThreeForm<C> {
    ThreeForm {
        dxdydz: a
            .dx
            .mul(&b.dydz)
            .add(&a.dy.mul(&b.dzdx))
            .add(&a.dz.mul(&b.dxdy)),
    }
}

pub fn exterior_derivative_0<C: CoeffField>(f: &C) -> OneForm<C> {
    OneForm::new(f.partial(Var::X), f.partial(Var::Y), f.partial(Var::Z))
}

pub fn exterior_derivative_1<C: CoeffField>(w: &OneForm<C>) -> TwoForm<C> {
    TwoForm::new(
        w.dz.partial(Var::Y).sub(&w.dy.partial(Var::Z)),
        w.dx.partial(Var::Z).sub(&w.dz.partial(Var::X)),
        w.dy.partial(Var::X).sub(&w.dx.partial(Var::Y)),
    )
}

pub fn exterior_derivative_2<C: CoeffField>(b: &TwoForm<C>) -> ThreeForm<C> {
    ThreeForm {
        dxdydz: b
            .dydz
            .partial(Var::X)
            .add(&b.dzdx.partial(Var::Y))
            .add(&b.dxdy.partial(Var::Z)),
    }
}

/// The three defining identities of an integrability triple: ω ^ Ω = 0,
/// dω = α ^ ω, dα = 0.  Every identity is decided exactly; witnesses carry
/// the offending coefficient on failure.
pub fn check_probsetup<C: CoeffField>(
    omega: &OneForm<C>,
    alpha: &OneForm<C>,
    big_omega: &TwoForm<C>,
) -> Result<VerificationReport, ExteriorError> {
    if omega.is_zero() {
        return Err(ExteriorError::ZeroOmega);
    }
    let mut report = VerificationReport::new();

    let ann = wedge_12(omega, big_omega);
    if ann.is_zero() {
        report.push_pass("omega ^ Omega = 0", "");
    } else {
        report.push_fail(
            "omega ^ Omega = 0",
            format!("residual coefficient {}", ann.dxdydz),
        );
    }

    let resid = exterior_derivative_1(omega).sub(&wedge_11(alpha, omega));
    if resid.is_zero() {
        report.push_pass("d(omega) = alpha ^ omega", "");
    } else {
        report.push_fail(
            "d(omega) = alpha ^ omega",
            format!(
                "residual ({}, {}, {})",
                resid.dydz, resid.dzdx, resid.dxdy
            ),
        );
    }

    let da = exterior_derivative_1(alpha);
    if da.is_zero() {
        report.push_pass("d(alpha) = 0", "");
    } else {
        report.push_fail(
            "d(alpha) = 0",
            format!("residual ({}, {}, {})", da.dydz, da.dzdx, da.dxdy),
        );
    }

    Ok(report)
}

/// Gauge change by a nonzero factor l: (ω, α) -> (ω / l, α - dl / l).
/// The output satisfies the integrability identities exactly when the input
/// does.
pub fn gauge_transform<C: CoeffField>(
    omega: &OneForm<C>,
    alpha: &OneForm<C>,
    l: &C,
) -> Result<(OneForm<C>, OneForm<C>), ExteriorError> {
    if l.is_zero() {
        return Err(ExteriorError::NotInvertible("gauge factor is zero".into()));
    }
    let div = |c: &C| -> Result<C, ExteriorError> {
        c.try_div(l)
            .ok_or_else(|| ExteriorError::NotInvertible(format!("gauge factor {l} is not a unit")))
    };
    let new_omega = OneForm::new(div(&omega.dx)?, div(&omega.dy)?, div(&omega.dz)?);
    let dl = exterior_derivative_0(l);
    let dlog = OneForm::new(div(&dl.dx)?, div(&dl.dy)?, div(&dl.dz)?);
    Ok((new_omega, alpha.sub(&dlog)))
}

/// Scales ω by the inverse of its first nonzero coefficient in dx, dy, dz
/// order, making that coefficient 1.
pub fn normalize_leading<C: CoeffField>(w: &OneForm<C>) -> Result<OneForm<C>, ExteriorError> {
    let lead = [&w.dx, &w.dy, &w.dz]
        .into_iter()
        .find(|c| !c.is_zero())
        .ok_or(ExteriorError::ZeroOmega)?
        .clone();
    let div = |c: &C| -> Result<C, ExteriorError> {
        c.try_div(&lead)
            .ok_or_else(|| ExteriorError::NotInvertible(format!("leading coefficient {lead} is not a unit")))
    };
    Ok(OneForm::new(div(&w.dx)?, div(&w.dy)?, div(&w.dz)?))
}

impl<C: CoeffField> fmt::Display for OneForm<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) dx + ({}) dy + ({}) dz", self.dx, self.dy, self.dz)
    }
}

impl<C: CoeffField> fmt::Display for TwoForm<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}) dy^dz + ({}) dz^dx + ({}) dx^dy",
            self.dydz, self.dzdx, self.dxdy
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn x() -> RatFn {
        RatFn::var(Var::X)
    }

    fn y() -> RatFn {
        RatFn::var(Var::Y)
    }

    fn z() -> RatFn {
        RatFn::var(Var::Z)
    }

    fn int(n: i64) -> RatFn {
        RatFn::from_int(n)
    }

    fn zero() -> RatFn {
        RatFn::zero()
    }

    #[test]
    fn wedge_of_coordinate_forms() {
        // dx ^ dy = dx^dy with positive orientation.
        let dx = OneForm::new(int(1), zero(), zero());
        let dy = OneForm::new(zero(), int(1), zero());
        let w = wedge_11(&dx, &dy);
        assert_eq!(w, TwoForm::new(zero(), zero(), int(1)));
        // Antisymmetry.
        let w2 = wedge_11(&dy, &dx);
        assert_eq!(w2, w.neg());
        assert!(wedge_11(&dx, &dx).is_zero());
    }

    #[test]
    fn volume_pairing() {
        // dz ^ (dx^dy) = dx^dy^dz.
        let dz = OneForm::new(zero(), zero(), int(1));
        let dxdy = TwoForm::new(zero(), zero(), int(1));
        let v = wedge_12(&dz, &dxdy);
        assert_eq!(v.dxdydz, int(1));
    }

    #[test]
    fn d_of_d_vanishes() {
        // f = x^2 y + z/x
        let f = x()
            .mul(&x())
            .mul(&y())
            .add(&z().div(&x()).unwrap());
        let df = exterior_derivative_0(&f);
        assert!(exterior_derivative_1(&df).is_zero());
        // And on a generic 1-form, d(d(omega)) through 3-forms.
        let w = OneForm::new(f.clone(), x().mul(&z()), y().div(&x()).unwrap());
        let dw = exterior_derivative_1(&w);
        assert!(exterior_derivative_2(&dw).is_zero());
    }

    #[test]
    fn leibniz_on_functions() {
        let f = x().add(&y().mul(&z()));
        let g = x().div(&y()).unwrap();
        let lhs = exterior_derivative_0(&f.mul(&g));
        let rhs = exterior_derivative_0(&f)
            .scale(&g)
            .add(&exterior_derivative_0(&g).scale(&f));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn probsetup_on_exact_form() {
        // omega = df annihilates any field tangent to the level sets; take
        // the closed triple (df, 0, Omega) with V tangent to f = x + y.
        let f = x().add(&y());
        let omega = exterior_derivative_0(&f);
        let alpha = OneForm::new(zero(), zero(), zero());
        // V = (1, -1, 0): f is a first integral.
        let vf = VectorField3::new(int(1), int(-1), zero());
        let report = check_probsetup(&omega, &alpha, &vf_to_twoform(&vf)).unwrap();
        assert!(report.all_pass(), "{report}");
    }

    #[test]
    fn probsetup_negative_control() {
        // (dx, 0, dy^dz): omega ^ Omega = dx^dy^dz != 0.
        let omega = OneForm::new(int(1), zero(), zero());
        let alpha = OneForm::new(zero(), zero(), zero());
        let big = TwoForm::new(int(1), zero(), zero());
        let report = check_probsetup(&omega, &alpha, &big).unwrap();
        assert!(!report.all_pass());
        let failed: Vec<_> = report.failures().map(|c| c.name.clone()).collect();
        assert_eq!(failed, vec!["omega ^ Omega = 0".to_string()]);
    }

    #[test]
    fn zero_omega_rejected() {
        let omega = OneForm::new(zero(), zero(), zero());
        let alpha = OneForm::new(zero(), zero(), zero());
        let big = TwoForm::new(int(1), zero(), zero());
        assert_eq!(
            check_probsetup(&omega, &alpha, &big),
            Err(ExteriorError::ZeroOmega)
        );
    }

    #[test]
    fn gauge_transform_preserves_identities() {
        // Valid pair: omega = y dx, alpha = dy/y.
        let omega = OneForm::new(y(), zero(), zero());
        let alpha = OneForm::new(zero(), int(1).div(&y()).unwrap(), zero());
        let vf = VectorField3::new(zero(), zero(), int(1)); // y dx annihilates d/dz
        let big = vf_to_twoform(&vf);
        assert!(check_probsetup(&omega, &alpha, &big).unwrap().all_pass());
        let l = x().mul(&y()).add(&int(1));
        let (w2, a2) = gauge_transform(&omega, &alpha, &l).unwrap();
        assert!(check_probsetup(&w2, &a2, &big).unwrap().all_pass());
        // Gauge by zero is rejected.
        assert!(gauge_transform(&omega, &alpha, &zero()).is_err());
    }

    #[test]
    fn normalize_leading_scales_first_nonzero() {
        let w = OneForm::new(zero(), x().mul_rat(&rat(3, 1)), y());
        let n = normalize_leading(&w).unwrap();
        assert_eq!(n.dy, int(1));
        assert_eq!(n.dz, y().div(&x().mul_rat(&rat(3, 1))).unwrap());
        assert!(normalize_leading(&OneForm::new(zero(), zero(), zero())).is_err());
    }
}
