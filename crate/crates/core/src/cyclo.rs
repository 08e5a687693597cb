//! Cyclotomic number fields Q(zeta_m).
//!
//! Elements are polynomials in zeta of degree below phi(m), reduced modulo
//! the m-th cyclotomic polynomial.  Every value carries a shared handle to
//! its field so arithmetic can check conductors and the trait machinery
//! from `poly` has a context to embed rationals into.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::poly::{MultiPolynomial, Scalar};
use crate::rat::{rat_int, Rat};
use crate::unipoly::UniPoly;

/// Computes the m-th cyclotomic polynomial (monic, integer coefficients)
/// by peeling proper-divisor factors off x^m - 1.
pub fn cyclotomic_poly(m: u32) -> UniPoly {
    assert!(m >= 1);
    let mut cache: Vec<Option<UniPoly>> = vec![None; (m + 1) as usize];
    for k in 1..=m {
        if m % k != 0 {
            continue;
        }
        // x^k - 1
        let mut c = vec![Rat::zero(); (k + 1) as usize];
        c[0] = -Rat::one();
        c[k as usize] = Rat::one();
        let mut p = UniPoly::from_coeffs(c);
        for d in 1..k {
            if k % d == 0 {
                let (q, r) = p.div_rem(cache[d as usize].as_ref().unwrap());
                debug_assert!(r.is_zero());
                p = q;
            }
        }
        cache[k as usize] = Some(p);
    }
    cache[m as usize].take().unwrap()
}

#[derive(Debug)]
pub struct CycloField {
    pub conductor: u32,
    pub minimal: UniPoly,
}

impl CycloField {
    pub fn new(conductor: u32) -> Arc<CycloField> {
        Arc::new(CycloField {
            conductor,
            minimal: cyclotomic_poly(conductor),
        })
    }

    pub fn degree(&self) -> usize {
        self.minimal.deg_or_zero()
    }
}

/// An element of Q(zeta_m).
#[derive(Clone, Debug)]
pub struct Cyclo {
    pub field: Arc<CycloField>,
    /// Polynomial in zeta, degree < phi(m), no trailing zeros.
    pub coeffs: Vec<Rat>,
}

impl PartialEq for Cyclo {
    fn eq(&self, o: &Self) -> bool {
        self.field.conductor == o.field.conductor && self.coeffs == o.coeffs
    }
}

impl Eq for Cyclo {}

impl PartialOrd for Cyclo {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Cyclo {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        (self.field.conductor, &self.coeffs).cmp(&(o.field.conductor, &o.coeffs))
    }
}

impl Hash for Cyclo {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.conductor.hash(state);
        self.coeffs.hash(state);
    }
}

impl Cyclo {
    fn reduce(field: &Arc<CycloField>, poly: UniPoly) -> Cyclo {
        let r = poly.rem(&field.minimal);
        Cyclo {
            field: field.clone(),
            coeffs: r.coeffs,
        }
    }

    pub fn from_unipoly(field: &Arc<CycloField>, p: UniPoly) -> Cyclo {
        Cyclo::reduce(field, p)
    }

    pub fn zero(field: &Arc<CycloField>) -> Cyclo {
        Cyclo {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &Arc<CycloField>) -> Cyclo {
        Cyclo::from_rat(field, Rat::one())
    }

    pub fn from_rat(field: &Arc<CycloField>, r: Rat) -> Cyclo {
        if num_traits::Zero::is_zero(&r) {
            return Cyclo::zero(field);
        }
        Cyclo {
            field: field.clone(),
            coeffs: vec![r],
        }
    }

    pub fn from_int(field: &Arc<CycloField>, n: i64) -> Cyclo {
        Cyclo::from_rat(field, rat_int(n))
    }

    /// zeta^k with k taken modulo the conductor.
    pub fn zeta_pow(field: &Arc<CycloField>, k: i64) -> Cyclo {
        let m = field.conductor as i64;
        let k = k.rem_euclid(m) as usize;
        let mut c = vec![Rat::zero(); k + 1];
        c[k] = Rat::one();
        Cyclo::reduce(field, UniPoly::from_coeffs(c))
    }

    pub fn zeta(field: &Arc<CycloField>) -> Cyclo {
        Cyclo::zeta_pow(field, 1)
    }

    fn unipoly(&self) -> UniPoly {
        UniPoly::from_coeffs(self.coeffs.clone())
    }

    /// The rational value if the element lies in Q.
    pub fn as_rat(&self) -> Option<Rat> {
        match self.coeffs.len() {
            0 => Some(Rat::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn pow(&self, e: u32) -> Cyclo {
        let mut acc = Cyclo::one(&self.field);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = Scalar::mul(&acc, &base);
            }
            base = Scalar::mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn same_field(&self, o: &Cyclo) {
        assert_eq!(
            self.field.conductor, o.field.conductor,
            "mixed cyclotomic conductors"
        );
    }
}

impl Scalar for Cyclo {
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn neg(&self) -> Self {
        Cyclo {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    fn add(&self, o: &Self) -> Self {
        self.same_field(o);
        Cyclo::reduce(&self.field, self.unipoly().add(&o.unipoly()))
    }

    fn mul(&self, o: &Self) -> Self {
        self.same_field(o);
        Cyclo::reduce(&self.field, self.unipoly().mul(&o.unipoly()))
    }

    fn inv(&self) -> Self {
        assert!(!self.coeffs.is_empty(), "inverse of zero");
        // Bezout against the minimal polynomial, which is irreducible.
        let (g, s, _) = self.unipoly().xgcd(&self.field.minimal);
        assert_eq!(g.deg_or_zero(), 0, "minimal polynomial must be irreducible");
        let scale = g.leading().unwrap().recip();
        Cyclo::reduce(&self.field, s.mul_rat(&scale))
    }

    fn embed_rat(&self, r: &Rat) -> Self {
        Cyclo::from_rat(&self.field, r.clone())
    }

    fn display_atomic(&self) -> bool {
        match self.coeffs.len() {
            0 => true,
            1 => self.coeffs[0].is_integer() && !self.coeffs[0].is_negative(),
            _ => false,
        }
    }

    fn normalize_fraction(
        num: MultiPolynomial<Self>,
        den: MultiPolynomial<Self>,
    ) -> (MultiPolynomial<Self>, MultiPolynomial<Self>) {
        // Make the denominator's leading coefficient one.
        match den.leading() {
            None => (num, den),
            Some((_, c)) => {
                if c == &c.embed_rat(&Rat::one()) {
                    return (num, den);
                }
                let inv = c.inv();
                (num.mul_scalar(&inv), den.mul_scalar(&inv))
            }
        }
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let m = self.field.conductor;
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if num_traits::Zero::is_zero(c) {
                continue;
            }
            let mag = if c.is_negative() { -c } else { c.clone() };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let power = match i {
                0 => String::new(),
                1 => format!("z{}", m),
                _ => format!("z{}^{}", m, i),
            };
            if power.is_empty() {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "{}", power)?;
            } else {
                write!(f, "{}*{}", mag, power)?;
            }
        }
        Ok(())
    }
}

use num_traits::Signed;
