//! Univariate factorisation over the rationals.
//!
//! Classical Zassenhaus pipeline: squarefree decomposition, factorisation
//! modulo a well-chosen odd prime (distinct-degree plus Cantor-Zassenhaus
//! equal-degree splitting), recursive quadratic Hensel lifting to a modulus
//! beyond the Mignotte bound, then subset recombination.  The squarefree
//! input is monicised as f*(y) = lc^(n-1) f(y/lc) so every lifted factor is
//! monic and leading coefficients never interfere.
//!
//! Degrees in this crate stay small (partial-fraction denominators, at most
//! a few dozen), so the subset search is never a bottleneck.

use num::bigint::Sign;
use num::{BigInt, BigUint, Integer};
use num_traits::{One, ToPrimitive, Zero};

use crate::rat::Rat;
use crate::unipoly::UniPoly;

/// Monic irreducible factors with multiplicities and the rational unit, so
/// input = unit * prod factor_i ^ mult_i exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct Factorization {
    pub unit: Rat,
    pub factors: Vec<(UniPoly, u32)>,
}

impl Factorization {
    pub fn reassemble(&self) -> UniPoly {
        let mut p = UniPoly::constant(self.unit.clone());
        for (f, m) in &self.factors {
            p = p.mul(&f.pow(*m));
        }
        p
    }
}

/// Factors a nonzero rational polynomial into monic irreducibles.
pub fn factor_unipoly(f: &UniPoly) -> Factorization {
    assert!(!f.is_zero(), "factorization of the zero polynomial");
    let lead = f.leading().unwrap().clone();
    if f.deg_or_zero() == 0 {
        return Factorization {
            unit: lead,
            factors: Vec::new(),
        };
    }
    let mut factors: Vec<(UniPoly, u32)> = Vec::new();
    for (part, mult) in f.squarefree_decomposition() {
        for irr in factor_squarefree(&part) {
            factors.push((irr, mult));
        }
    }
    factors.sort_by(|a, b| {
        a.0.deg_or_zero()
            .cmp(&b.0.deg_or_zero())
            .then_with(|| a.0.coeffs.cmp(&b.0.coeffs))
    });
    Factorization {
        unit: lead,
        factors,
    }
}

/// Monic irreducible factors of a squarefree monic rational polynomial.
fn factor_squarefree(f: &UniPoly) -> Vec<UniPoly> {
    let n = f.deg_or_zero();
    if n <= 1 {
        return vec![f.monic()];
    }
    // Primitive integer model.
    let (_, prim) = f.content_primitive();
    // Monicise: fstar(y) = lc^(n-1) * prim(y / lc).
    let lc = prim.last().unwrap().clone();
    let fstar = monicize(&prim, &lc);
    let factors_star = factor_monic_squarefree_int(&fstar);
    // Map back through y = lc * x and normalize monic.
    factors_star
        .iter()
        .map(|u| {
            let v = substitute_scaled(u, &lc);
            let vp = int_primitive(&v);
            int_to_unipoly(&vp).monic()
        })
        .collect()
}

/// fstar(y) = lc^(n-1) f(y/lc) for integer f with leading coefficient lc.
fn monicize(f: &[BigInt], lc: &BigInt) -> Vec<BigInt> {
    let n = f.len() - 1;
    // Coefficient of y^i is f_i * lc^(n-1-i).
    let mut out = Vec::with_capacity(f.len());
    for (i, c) in f.iter().enumerate() {
        if i == n {
            out.push(BigInt::one());
        } else {
            out.push(c * lc.pow((n - 1 - i) as u32));
        }
    }
    out
}

/// u(lc * x) for monic integer u.
fn substitute_scaled(u: &[BigInt], lc: &BigInt) -> Vec<BigInt> {
    u.iter()
        .enumerate()
        .map(|(i, c)| c * lc.pow(i as u32))
        .collect()
}

fn int_primitive(v: &[BigInt]) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for c in v {
        g = g.gcd(c);
    }
    if g.is_zero() {
        return v.to_vec();
    }
    if v.last().unwrap().sign() == Sign::Minus {
        g = -g;
    }
    v.iter().map(|c| c / &g).collect()
}

fn int_to_unipoly(v: &[BigInt]) -> UniPoly {
    UniPoly::from_coeffs(v.iter().map(|c| Rat::from_integer(c.clone())).collect())
}

// ---------------------------------------------------------------------------
// Arithmetic in F_p[x] (p odd, fits in u64; products via u128)
// ---------------------------------------------------------------------------

type Fpoly = Vec<u64>;

fn fp_trim(a: &mut Fpoly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn fp_sub(a: &Fpoly, b: &Fpoly, p: u64) -> Fpoly {
    let mut c = vec![0u64; a.len().max(b.len())];
    for (i, v) in c.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *v = (x + p - y) % p;
    }
    fp_trim(&mut c);
    c
}

fn fp_mul(a: &Fpoly, b: &Fpoly, p: u64) -> Fpoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            let t = (x as u128 * y as u128 + c[i + j] as u128) % p as u128;
            c[i + j] = t as u64;
        }
    }
    fp_trim(&mut c);
    c
}

fn fp_inv_scalar(a: u64, p: u64) -> u64 {
    // Fermat.
    let mut base = a % p;
    let mut e = p - 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * base as u128 % p as u128) as u64;
        }
        base = (base as u128 * base as u128 % p as u128) as u64;
        e >>= 1;
    }
    acc
}

fn fp_rem(a: &Fpoly, b: &Fpoly, p: u64) -> Fpoly {
    let db = b.len() - 1;
    let lead_inv = fp_inv_scalar(*b.last().unwrap(), p);
    let mut r = a.clone();
    while r.len() > db {
        let k = r.len() - 1;
        let f = (r[k] as u128 * lead_inv as u128 % p as u128) as u64;
        if f != 0 {
            for (i, &bc) in b.iter().enumerate() {
                let t = (f as u128 * bc as u128) % p as u128;
                let idx = k - db + i;
                r[idx] = ((r[idx] as u128 + p as u128 - t) % p as u128) as u64;
            }
        }
        r.pop();
        fp_trim(&mut r);
        if r.len() <= db {
            break;
        }
    }
    fp_trim(&mut r);
    r
}

fn fp_divrem(a: &Fpoly, b: &Fpoly, p: u64) -> (Fpoly, Fpoly) {
    let db = b.len() - 1;
    if a.len() <= db {
        return (Vec::new(), a.clone());
    }
    let lead_inv = fp_inv_scalar(*b.last().unwrap(), p);
    let mut r = a.clone();
    let mut q = vec![0u64; a.len() - db];
    while r.len() > db {
        let k = r.len() - 1;
        let f = (r[k] as u128 * lead_inv as u128 % p as u128) as u64;
        q[k - db] = f;
        if f != 0 {
            for (i, &bc) in b.iter().enumerate() {
                let t = (f as u128 * bc as u128) % p as u128;
                let idx = k - db + i;
                r[idx] = ((r[idx] as u128 + p as u128 - t) % p as u128) as u64;
            }
        }
        r.pop();
        fp_trim(&mut r);
    }
    fp_trim(&mut q);
    (q, r)
}

fn fp_monic(a: &Fpoly, p: u64) -> Fpoly {
    match a.last() {
        None => Vec::new(),
        Some(&l) => {
            let inv = fp_inv_scalar(l, p);
            a.iter()
                .map(|&c| (c as u128 * inv as u128 % p as u128) as u64)
                .collect()
        }
    }
}

fn fp_gcd(a: &Fpoly, b: &Fpoly, p: u64) -> Fpoly {
    let mut f = a.clone();
    let mut g = b.clone();
    while !g.is_empty() {
        let r = fp_rem(&f, &g, p);
        f = g;
        g = r;
    }
    fp_monic(&f, p)
}

fn fp_xgcd(a: &Fpoly, b: &Fpoly, p: u64) -> (Fpoly, Fpoly, Fpoly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = fp_divrem(&r0, &r1, p);
        let s = fp_sub(&s0, &fp_mul(&q, &s1, p), p);
        let t = fp_sub(&t0, &fp_mul(&q, &t1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        t0 = t1;
        t1 = t;
    }
    let l = *r0.last().expect("xgcd of nonzero inputs");
    let inv = fp_inv_scalar(l, p);
    let scale = |v: &Fpoly| -> Fpoly {
        v.iter()
            .map(|&c| (c as u128 * inv as u128 % p as u128) as u64)
            .collect()
    };
    (scale(&r0), scale(&s0), scale(&t0))
}

fn fp_powmod(base: &Fpoly, e: &BigUint, modulus: &Fpoly, p: u64) -> Fpoly {
    let mut acc = vec![1u64];
    let mut b = fp_rem(base, modulus, p);
    let bits = e.bits();
    for i in 0..bits {
        if e.bit(i) {
            acc = fp_rem(&fp_mul(&acc, &b, p), modulus, p);
        }
        b = fp_rem(&fp_mul(&b, &b, p), modulus, p);
    }
    acc
}

fn fp_derivative(a: &Fpoly, p: u64) -> Fpoly {
    if a.len() <= 1 {
        return Vec::new();
    }
    let mut c: Fpoly = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &v)| (v as u128 * (i as u64 % p) as u128 % p as u128) as u64)
        .collect();
    fp_trim(&mut c);
    c
}

// ---------------------------------------------------------------------------
// Factorisation mod p
// ---------------------------------------------------------------------------

struct XorShift(u64);

impl XorShift {
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }
}

/// Distinct-degree split of a monic squarefree polynomial mod p: pairs of
/// (product of irreducible factors of degree d, d).
fn distinct_degree(f: &Fpoly, p: u64) -> Vec<(Fpoly, usize)> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = vec![0u64, 1]; // x
    let mut d = 0usize;
    let pe = BigUint::from(p);
    while rest.len() - 1 >= 2 * (d + 1) {
        d += 1;
        h = fp_powmod(&h, &pe, &rest, p);
        let hx = fp_sub(&h, &[0, 1].to_vec(), p);
        let g = fp_gcd(&hx, &rest, p);
        if g.len() > 1 {
            out.push((g.clone(), d));
            rest = fp_divrem(&rest, &g, p).0;
            h = fp_rem(&h, &rest, p);
        }
        if rest.len() <= 1 {
            break;
        }
    }
    if rest.len() > 1 {
        out.push((rest.clone(), rest.len() - 1));
    }
    out
}

/// Cantor-Zassenhaus equal-degree splitting: factors a monic squarefree
/// product of degree-d irreducibles.
fn equal_degree(f: &Fpoly, d: usize, p: u64, rng: &mut XorShift) -> Vec<Fpoly> {
    let n = f.len() - 1;
    if n == d {
        return vec![f.clone()];
    }
    let exp = (BigUint::from(p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
    loop {
        // Random nonconstant poly of degree < n.
        let mut a: Fpoly = (0..n).map(|_| rng.next() % p).collect();
        fp_trim(&mut a);
        if a.len() <= 1 {
            continue;
        }
        let g1 = fp_gcd(&a, f, p);
        if g1.len() > 1 && g1.len() - 1 < n {
            let rest = fp_divrem(f, &g1, p).0;
            let mut out = equal_degree(&g1, d, p, rng);
            out.extend(equal_degree(&rest, d, p, rng));
            return out;
        }
        let b = fp_powmod(&a, &exp, f, p);
        let bm1 = fp_sub(&b, &[1].to_vec(), p);
        let g = fp_gcd(&bm1, f, p);
        if g.len() > 1 && g.len() - 1 < n {
            let rest = fp_divrem(f, &g, p).0;
            let mut out = equal_degree(&g, d, p, rng);
            out.extend(equal_degree(&rest, d, p, rng));
            return out;
        }
    }
}

fn factor_mod_p(f: &Fpoly, p: u64) -> Vec<Fpoly> {
    let mut rng = XorShift(0x9E37_79B9_7F4A_7C15);
    let mut out = Vec::new();
    for (prod, d) in distinct_degree(f, p) {
        out.extend(equal_degree(&prod, d, p, &mut rng));
    }
    out.sort();
    out
}

// ---------------------------------------------------------------------------
// Hensel lifting over Z/m
// ---------------------------------------------------------------------------

fn im_reduce(v: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut c: Vec<BigInt> = v.iter().map(|x| x.mod_floor(m)).collect();
    while c.last().map_or(false, |x| x.is_zero()) {
        c.pop();
    }
    c
}

fn im_add(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let mut c = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(BigInt::zero);
        let y = b.get(i).cloned().unwrap_or_else(BigInt::zero);
        c.push((x + y).mod_floor(m));
    }
    im_reduce(&c, m)
}

fn im_sub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let mut c = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(BigInt::zero);
        let y = b.get(i).cloned().unwrap_or_else(BigInt::zero);
        c.push((x - y).mod_floor(m));
    }
    im_reduce(&c, m)
}

fn im_mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            c[i + j] = (&c[i + j] + x * y).mod_floor(m);
        }
    }
    im_reduce(&c, m)
}

/// Division by a monic polynomial over Z/m.
fn im_divrem_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    let db = b.len() - 1;
    debug_assert!(b[db].is_one(), "divisor must be monic");
    let mut r: Vec<BigInt> = a.to_vec();
    if r.len() <= db {
        return (Vec::new(), im_reduce(&r, m));
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    while r.len() > db {
        let k = r.len() - 1;
        let f = r[k].clone();
        if !f.is_zero() {
            q[k - db] = f.clone();
            for (i, bc) in b.iter().enumerate() {
                r[k - db + i] = (&r[k - db + i] - &f * bc).mod_floor(m);
            }
        }
        r.pop();
        while r.last().map_or(false, |x| x.is_zero()) {
            r.pop();
        }
    }
    (im_reduce(&q, m), im_reduce(&r, m))
}

/// One quadratic Hensel step: f = g*h and s*g + t*h = 1 mod m become the
/// same statements mod m^2.  h stays exactly monic.
#[allow(clippy::too_many_arguments)]
fn hensel_step(
    f: &[BigInt],
    g: &mut Vec<BigInt>,
    h: &mut Vec<BigInt>,
    s: &mut Vec<BigInt>,
    t: &mut Vec<BigInt>,
    m: &BigInt,
) -> BigInt {
    let m2 = m * m;
    let e = im_sub(&im_reduce(f, &m2), &im_mul(g, h, &m2), &m2);
    let (q, r) = im_divrem_monic(&im_mul(s, &e, &m2), h, &m2);
    let g1 = im_add(&im_add(g, &im_mul(t, &e, &m2), &m2), &im_mul(&q, g, &m2), &m2);
    let h1 = im_add(h, &r, &m2);
    let b = im_sub(
        &im_add(&im_mul(s, &g1, &m2), &im_mul(t, &h1, &m2), &m2),
        &[BigInt::one()],
        &m2,
    );
    let (c, d) = im_divrem_monic(&im_mul(s, &b, &m2), &h1, &m2);
    let s1 = im_sub(s, &d, &m2);
    let t1 = im_sub(&im_sub(t, &im_mul(t, &b, &m2), &m2), &im_mul(&c, &g1, &m2), &m2);
    *g = g1;
    *h = h1;
    *s = s1;
    *t = t1;
    m2
}

/// Lifts the monic modular factors of a monic integer polynomial to factors
/// mod M >= target whose product is f mod M.  Recursive binary splitting;
/// each pair is lifted from p with its own Bezout data.
fn hensel_lift_group(
    f: &[BigInt],
    factors: &[Fpoly],
    p: u64,
    target: &BigInt,
    modulus: &BigInt,
) -> Vec<Vec<BigInt>> {
    if factors.len() == 1 {
        return vec![im_reduce(f, modulus)];
    }
    let mid = factors.len() / 2;
    let (left, right) = factors.split_at(mid);
    let mut g0: Fpoly = vec![1];
    for u in left {
        g0 = fp_mul(&g0, u, p);
    }
    let mut h0: Fpoly = vec![1];
    for u in right {
        h0 = fp_mul(&h0, u, p);
    }
    let (gg, sg, tg) = fp_xgcd(&g0, &h0, p);
    assert_eq!(gg, vec![1], "modular factors must be coprime");
    let to_int = |v: &Fpoly| -> Vec<BigInt> { v.iter().map(|&c| BigInt::from(c)).collect() };
    let mut g = to_int(&g0);
    let mut h = to_int(&h0);
    let mut s = to_int(&sg);
    let mut t = to_int(&tg);
    let mut m = BigInt::from(p);
    while &m < target {
        m = hensel_step(f, &mut g, &mut h, &mut s, &mut t, &m);
    }
    // The product g*h equals f mod m; recurse with the larger modulus.
    let mut out = hensel_lift_group(&g, left, p, target, &m);
    out.extend(hensel_lift_group(&h, right, p, target, &m));
    out
}

// ---------------------------------------------------------------------------
// Zassenhaus driver
// ---------------------------------------------------------------------------

fn primes() -> impl Iterator<Item = u64> {
    (3u64..).filter(|&n| {
        if n % 2 == 0 {
            return false;
        }
        let mut d = 3;
        while d * d <= n {
            if n % d == 0 {
                return false;
            }
            d += 2;
        }
        true
    })
}

fn to_fpoly(f: &[BigInt], p: u64) -> Fpoly {
    let pm = BigInt::from(p);
    let mut v: Fpoly = f
        .iter()
        .map(|c| c.mod_floor(&pm).to_u64().unwrap())
        .collect();
    fp_trim(&mut v);
    v
}

/// Symmetric residue in (-m/2, m/2].
fn balance(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// Factors a monic squarefree integer polynomial of degree >= 2 into monic
/// irreducible integer factors.
fn factor_monic_squarefree_int(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = f.len() - 1;
    debug_assert!(f[n].is_one());

    // Prime choice: f must stay squarefree mod p; among the first few
    // suitable primes keep the one with fewest modular factors.
    let mut best: Option<(u64, Vec<Fpoly>)> = None;
    let mut tried = 0;
    for p in primes() {
        let fp = to_fpoly(f, p);
        if fp.len() != f.len() {
            continue; // degree dropped (cannot happen for monic, but be safe)
        }
        let d = fp_derivative(&fp, p);
        if d.is_empty() || fp_gcd(&fp, &d, p).len() != 1 {
            continue;
        }
        let factors = factor_mod_p(&fp, p);
        let better = match &best {
            None => true,
            Some((_, bf)) => factors.len() < bf.len(),
        };
        if better {
            best = Some((p, factors));
        }
        tried += 1;
        if tried >= 4 || best.as_ref().map_or(false, |(_, bf)| bf.len() == 1) {
            break;
        }
    }
    let (p, modular) = best.expect("squarefree polynomial has good primes");
    if modular.len() == 1 {
        return vec![f.to_vec()]; // irreducible mod p, hence over Q
    }

    // Mignotte-style bound: coefficients of any monic factor are below
    // 2^n * l2norm(f); modulus must exceed twice that.
    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    let norm = norm2.sqrt() + BigInt::one();
    let bound = (BigInt::one() << n) * norm;
    let target = &bound * 4 + BigInt::one();

    let lifted = hensel_lift_group(f, &modular, p, &target, &target);
    // The actual working modulus is the power of p reached inside the lift;
    // recompute it (smallest p^k >= target).
    let mut modulus = BigInt::from(p);
    while modulus < target {
        modulus = &modulus * &modulus;
    }

    // Subset recombination over monic factors with symmetric residues.
    let mut remaining: Vec<Vec<BigInt>> = lifted;
    let mut current = f.to_vec();
    let mut out = Vec::new();
    let mut size = 1usize;
    'outer: while 2 * size <= remaining.len() {
        let idxs: Vec<usize> = (0..remaining.len()).collect();
        for combo in combinations(&idxs, size) {
            let mut cand = vec![BigInt::one()];
            for &i in &combo {
                cand = im_mul(&cand, &remaining[i], &modulus);
            }
            let cand: Vec<BigInt> = cand.iter().map(|c| balance(c, &modulus)).collect();
            if let Some(quot) = int_divide_exact(&current, &cand) {
                out.push(cand);
                current = quot;
                let keep: Vec<Vec<BigInt>> = remaining
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !combo.contains(i))
                    .map(|(_, v)| v.clone())
                    .collect();
                remaining = keep;
                continue 'outer;
            }
        }
        size += 1;
    }
    if current.len() > 1 {
        out.push(current);
    }
    out
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut combo: Vec<usize> = (0..k).collect();
    let n = items.len();
    if k > n {
        return out;
    }
    loop {
        out.push(combo.iter().map(|&i| items[i]).collect());
        // Advance.
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if combo[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        combo[i] += 1;
        for j in i + 1..k {
            combo[j] = combo[j - 1] + 1;
        }
    }
}

/// Exact division of integer polynomials (divisor monic); None if inexact.
fn int_divide_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    if a.len() < b.len() {
        return None;
    }
    let db = b.len() - 1;
    let mut r: Vec<BigInt> = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    while r.len() > db {
        let k = r.len() - 1;
        let f = r[k].clone();
        q[k - db] = f.clone();
        for (i, bc) in b.iter().enumerate() {
            r[k - db + i] = &r[k - db + i] - &f * bc;
        }
        r.pop();
        while r.last().map_or(false, |x| x.is_zero()) {
            r.pop();
        }
    }
    if r.is_empty() {
        Some(q)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn poly(c: &[i64]) -> UniPoly {
        UniPoly::from_int_coeffs(c)
    }

    #[test]
    fn linear_and_constant() {
        let f = poly(&[4]);
        let fac = factor_unipoly(&f);
        assert!(fac.factors.is_empty());
        assert_eq!(fac.reassemble(), f);
        let g = poly(&[1, 2]); // 2x + 1
        let fac = factor_unipoly(&g);
        assert_eq!(fac.factors.len(), 1);
        assert_eq!(fac.reassemble(), g);
    }

    #[test]
    fn splits_products_of_linears() {
        // x(x-1)(x+2)^2
        let f = UniPoly::x()
            .mul(&poly(&[-1, 1]))
            .mul(&poly(&[2, 1]).pow(2));
        let fac = factor_unipoly(&f);
        assert_eq!(fac.reassemble(), f);
        assert_eq!(
            fac.factors,
            vec![(poly(&[-1, 1]), 1), (UniPoly::x(), 1), (poly(&[2, 1]), 2)]
        );
    }

    #[test]
    fn keeps_irreducibles_whole() {
        // (x^2 + 1)(x^2 - 2): both irreducible over Q.
        let f = poly(&[1, 0, 1]).mul(&poly(&[-2, 0, 1]));
        let fac = factor_unipoly(&f);
        assert_eq!(fac.reassemble(), f);
        assert_eq!(fac.factors.len(), 2);
        assert!(fac.factors.iter().all(|(p, m)| p.deg_or_zero() == 2 && *m == 1));
    }

    #[test]
    fn nontrivial_leading_coefficient() {
        // (2x + 1)(3x - 1)(x^2 + x + 1)
        let f = poly(&[1, 2]).mul(&poly(&[-1, 3])).mul(&poly(&[1, 1, 1]));
        let fac = factor_unipoly(&f);
        assert_eq!(fac.reassemble(), f);
        assert_eq!(fac.factors.len(), 3);
        assert_eq!(fac.unit, rat(6, 1));
    }

    #[test]
    fn cyclotomic_like_splitting() {
        // x^8 - 1 = (x-1)(x+1)(x^2+1)(x^4+1)
        let mut c = vec![0i64; 9];
        c[0] = -1;
        c[8] = 1;
        let f = poly(&c);
        let fac = factor_unipoly(&f);
        assert_eq!(fac.reassemble(), f);
        let degs: Vec<usize> = fac.factors.iter().map(|(p, _)| p.deg_or_zero()).collect();
        assert_eq!(degs, vec![1, 1, 2, 4]);
    }

    #[test]
    fn irreducible_stays_whole() {
        // x^4 + x + 1 is irreducible over Q.
        let f = poly(&[1, 1, 0, 0, 1]);
        let fac = factor_unipoly(&f);
        assert_eq!(fac.factors.len(), 1);
        assert_eq!(fac.reassemble(), f);
    }

    #[test]
    fn rational_coefficients() {
        // (x/2 + 1/3)(x - 5) scaled arbitrarily.
        let f = UniPoly::from_coeffs(vec![rat(1, 3), rat(1, 2)]).mul(&poly(&[-5, 1]));
        let fac = factor_unipoly(&f);
        assert_eq!(fac.reassemble(), f);
        assert_eq!(fac.factors.len(), 2);
        assert!(fac.factors.iter().all(|(p, _)| p.leading() == Some(&Rat::one())));
    }
}
