//! Partial fraction decomposition over the rationals.
//!
//! A quotient num/den is rewritten as a polynomial part plus terms
//! n/(p^j) with p monic irreducible and deg n < deg p.  The splitting uses
//! Bezout inverses modulo each full prime power, then a p-adic digit
//! expansion inside the power.

use crate::factor::factor_unipoly;
use crate::unipoly::UniPoly;

/// One term numerator / denominator^power with deg numerator < deg denominator.
#[derive(Clone, Debug, PartialEq)]
pub struct PoleTerm {
    pub denominator: UniPoly,
    pub power: u32,
    pub numerator: UniPoly,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PartialFractions {
    pub polynomial_part: UniPoly,
    pub terms: Vec<PoleTerm>,
}

impl PartialFractions {
    /// Sum of all terms as a single (numerator, denominator) pair, not
    /// necessarily reduced.  Intended for verification by cross
    /// multiplication.
    pub fn reassemble(&self) -> (UniPoly, UniPoly) {
        let mut num = self.polynomial_part.clone();
        let mut den = UniPoly::one();
        for t in &self.terms {
            let td = t.denominator.pow(t.power);
            // num/den + t.num/td
            num = num.mul(&td).add(&t.numerator.mul(&den));
            den = den.mul(&td);
        }
        (num, den)
    }

    /// True when every pole is simple (all powers are 1).
    pub fn simple_poles_only(&self) -> bool {
        self.terms.iter().all(|t| t.power == 1)
    }
}

/// Decomposes num/den, den nonzero.
pub fn partial_fractions(num: &UniPoly, den: &UniPoly) -> PartialFractions {
    assert!(!den.is_zero(), "zero denominator");
    let (quot, rem) = num.div_rem(den);
    if rem.is_zero() {
        return PartialFractions {
            polynomial_part: quot,
            terms: Vec::new(),
        };
    }
    let fac = factor_unipoly(den);
    // rem / den = (rem / unit) / prod p_i^{m_i}
    let scaled = rem.mul_rat(&fac.unit.recip());
    let mut terms = Vec::new();
    for (p, m) in &fac.factors {
        let pm = p.pow(*m);
        // Complement of this prime power inside the denominator.
        let mut comp = UniPoly::one();
        for (q, k) in &fac.factors {
            if q != p {
                comp = comp.mul(&q.pow(*k));
            }
        }
        // Local component a = scaled * comp^{-1} mod p^m.
        let (g, s, _) = comp.rem(&pm).xgcd(&pm);
        assert!(g.deg_or_zero() == 0 && !g.is_zero(), "prime powers must be coprime");
        let inv = s.mul_rat(&g.leading().unwrap().recip());
        let a = scaled.rem(&pm).mul(&inv).rem(&pm);
        // p-adic digits: a = sum d_j p^j, term at power m - j gets d_j.
        let mut rest = a;
        let mut j = 0u32;
        while !rest.is_zero() {
            let (q2, digit) = rest.div_rem(p);
            if !digit.is_zero() {
                terms.push(PoleTerm {
                    denominator: p.clone(),
                    power: m - j,
                    numerator: digit,
                });
            }
            rest = q2;
            j += 1;
        }
    }
    terms.sort_by(|a, b| {
        a.denominator
            .coeffs
            .cmp(&b.denominator.coeffs)
            .then(b.power.cmp(&a.power))
    });
    PartialFractions {
        polynomial_part: quot,
        terms,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn poly(c: &[i64]) -> UniPoly {
        UniPoly::from_int_coeffs(c)
    }

    fn check_reassembly(num: &UniPoly, den: &UniPoly, pf: &PartialFractions) {
        let (rn, rd) = pf.reassemble();
        // num/den == rn/rd  <=>  num*rd == rn*den
        assert_eq!(num.mul(&rd), rn.mul(den));
    }

    #[test]
    fn two_simple_poles() {
        // 1/(x(x-1)) = 1/(x-1) - 1/x
        let num = UniPoly::one();
        let den = UniPoly::x().mul(&poly(&[-1, 1]));
        let pf = partial_fractions(&num, &den);
        assert!(pf.polynomial_part.is_zero());
        assert_eq!(
            pf.terms,
            vec![
                PoleTerm {
                    denominator: poly(&[-1, 1]),
                    power: 1,
                    numerator: UniPoly::one()
                },
                PoleTerm {
                    denominator: UniPoly::x(),
                    power: 1,
                    numerator: UniPoly::constant(rat(-1, 1))
                },
            ]
        );
        check_reassembly(&num, &den, &pf);
    }

    #[test]
    fn schwarz_potential_223_shape() {
        // (32x^2 - 32x + 27) / (144 x^2 (x-1)^2)
        //   = 3/(16x^2) + 11/(72x) + 3/(16(x-1)^2) - 11/(72(x-1))
        let num = poly(&[27, -32, 32]);
        let den = UniPoly::x().pow(2).mul(&poly(&[-1, 1]).pow(2)).mul_rat(&rat(144, 1));
        let pf = partial_fractions(&num, &den);
        assert!(pf.polynomial_part.is_zero());
        let want = vec![
            PoleTerm {
                denominator: poly(&[-1, 1]),
                power: 2,
                numerator: UniPoly::constant(rat(3, 16)),
            },
            PoleTerm {
                denominator: poly(&[-1, 1]),
                power: 1,
                numerator: UniPoly::constant(rat(-11, 72)),
            },
            PoleTerm {
                denominator: UniPoly::x(),
                power: 2,
                numerator: UniPoly::constant(rat(3, 16)),
            },
            PoleTerm {
                denominator: UniPoly::x(),
                power: 1,
                numerator: UniPoly::constant(rat(11, 72)),
            },
        ];
        assert_eq!(pf.terms, want);
        check_reassembly(&num, &den, &pf);
    }

    #[test]
    fn improper_fraction_gets_polynomial_part() {
        // (x^3 + 1)/(x - 1) = x^2 + x + 1 + 2/(x-1)
        let num = poly(&[1, 0, 0, 1]);
        let den = poly(&[-1, 1]);
        let pf = partial_fractions(&num, &den);
        assert_eq!(pf.polynomial_part, poly(&[1, 1, 1]));
        assert_eq!(
            pf.terms,
            vec![PoleTerm {
                denominator: poly(&[-1, 1]),
                power: 1,
                numerator: UniPoly::constant(rat(2, 1))
            }]
        );
        check_reassembly(&num, &den, &pf);
    }

    #[test]
    fn quadratic_irreducible_component() {
        // (x+3)/((x^2+1)(x-1)) = 2/(x-1) + (-2x-1)/(x^2+1)
        let num = poly(&[3, 1]);
        let den = poly(&[1, 0, 1]).mul(&poly(&[-1, 1]));
        let pf = partial_fractions(&num, &den);
        assert!(pf.polynomial_part.is_zero());
        assert_eq!(
            pf.terms,
            vec![
                PoleTerm {
                    denominator: poly(&[-1, 1]),
                    power: 1,
                    numerator: UniPoly::constant(rat(2, 1))
                },
                PoleTerm {
                    denominator: poly(&[1, 0, 1]),
                    power: 1,
                    numerator: poly(&[-1, -2])
                },
            ]
        );
        check_reassembly(&num, &den, &pf);
    }

    #[test]
    fn reassembly_on_assorted_inputs() {
        let cases: Vec<(UniPoly, UniPoly)> = vec![
            (poly(&[5, -3, 2, 7]), poly(&[0, -6, 6]).mul(&poly(&[2, 1]))),
            (poly(&[1]), poly(&[0, 0, 0, 1]).mul(&poly(&[1, 1, 1]).pow(2))),
            (poly(&[9, 1, 1, 1, 1]), poly(&[-2, 0, 1]).mul(&poly(&[3, 1]).pow(3))),
            (poly(&[4, 4]), poly(&[1, 2]).mul(&poly(&[-1, 3]))),
        ];
        for (num, den) in cases {
            let pf = partial_fractions(&num, &den);
            check_reassembly(&num, &den, &pf);
            for t in &pf.terms {
                assert!(t.numerator.deg_or_zero() < t.denominator.deg_or_zero());
                assert!(!t.numerator.is_zero());
            }
        }
    }
}
