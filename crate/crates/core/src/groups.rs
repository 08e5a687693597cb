//! Finite subgroups of SL(2, C) with exact cyclotomic entries.
//!
//! The catalog holds the groups that matter for the classification queries:
//! cyclic groups, binary dihedral groups, and the three binary Platonic
//! groups 2T, 2O, 2I. Entries live in Q(zeta_m), so element deduplication
//! is structural equality with no rounding concerns.

use std::collections::BTreeSet;
use std::str::FromStr;
use std::sync::Arc;

use crate::cyclo::{Cyclo, CycloField};
use crate::poly::Scalar;
use crate::rat::rat;

/// A 2x2 matrix [[a, b], [c, d]] over a fixed cyclotomic field.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Mat2 {
    pub a: Cyclo,
    pub b: Cyclo,
    pub c: Cyclo,
    pub d: Cyclo,
}

impl Mat2 {
    pub fn new(a: Cyclo, b: Cyclo, c: Cyclo, d: Cyclo) -> Mat2 {
        Mat2 { a, b, c, d }
    }

    pub fn identity(field: &Arc<CycloField>) -> Mat2 {
        let one = Cyclo::one(field);
        let zero = Cyclo::zero(field);
        Mat2::new(one.clone(), zero.clone(), zero, one)
    }

    pub fn diagonal(x: Cyclo, y: Cyclo) -> Mat2 {
        let zero = Cyclo::zero(&x.field);
        Mat2::new(x, zero.clone(), zero, y)
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2::new(
            self.a.mul(&o.a).add(&self.b.mul(&o.c)),
            self.a.mul(&o.b).add(&self.b.mul(&o.d)),
            self.c.mul(&o.a).add(&self.d.mul(&o.c)),
            self.c.mul(&o.b).add(&self.d.mul(&o.d)),
        )
    }

    pub fn det(&self) -> Cyclo {
        self.a.mul(&self.d).sub(&self.b.mul(&self.c))
    }

    pub fn trace(&self) -> Cyclo {
        self.a.add(&self.d)
    }

    pub fn neg(&self) -> Mat2 {
        Mat2::new(self.a.neg(), self.b.neg(), self.c.neg(), self.d.neg())
    }

    /// Inverse of a determinant-1 matrix is its adjugate.
    pub fn inverse(&self) -> Mat2 {
        Mat2::new(self.d.clone(), self.b.neg(), self.c.neg(), self.a.clone())
    }

    pub fn is_scalar(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.a == self.d
    }

    /// Multiplicative order; members of a finite group always terminate.
    pub fn order(&self) -> usize {
        let id = Mat2::identity(&self.a.field);
        let mut acc = self.clone();
        let mut n = 1usize;
        while acc != id {
            acc = acc.mul(self);
            n += 1;
            assert!(n <= 10_000, "element order runaway");
        }
        n
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum GroupError {
    /// Closure exceeded the element cap: the generators span an infinite
    /// (or simply unexpected) group.
    CapExceeded { cap: usize },
    /// A generator fails det = 1.
    NotUnimodular,
}

impl std::fmt::Display for GroupError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GroupError::CapExceeded { cap } => {
                write!(f, "closure exceeded the cap of {cap} elements")
            }
            GroupError::NotUnimodular => write!(f, "generator determinant is not 1"),
        }
    }
}

impl std::error::Error for GroupError {}

/// A finite matrix group, closed and deduplicated.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    pub field: Arc<CycloField>,
    pub generators: Vec<Mat2>,
    pub elements: BTreeSet<Mat2>,
}

pub const DEFAULT_CAP: usize = 1000;

/// Breadth-first product closure of the generators, with the identity.
/// A finite set closed under multiplication automatically contains
/// inverses (every element has finite order), so only products are taken.
pub fn closure(
    field: &Arc<CycloField>,
    generators: Vec<Mat2>,
    cap: usize,
) -> Result<MatrixGroup, GroupError> {
    let one = Cyclo::one(field);
    for g in &generators {
        if g.det() != one {
            return Err(GroupError::NotUnimodular);
        }
    }
    let mut elements: BTreeSet<Mat2> = BTreeSet::new();
    elements.insert(Mat2::identity(field));
    let mut frontier: Vec<Mat2> = Vec::new();
    for g in &generators {
        if elements.insert(g.clone()) {
            frontier.push(g.clone());
        }
    }
    while !frontier.is_empty() {
        let mut next: Vec<Mat2> = Vec::new();
        for f in &frontier {
            for g in &generators {
                let prod = f.mul(g);
                if elements.insert(prod.clone()) {
                    if elements.len() > cap {
                        return Err(GroupError::CapExceeded { cap });
                    }
                    next.push(prod);
                }
            }
        }
        frontier = next;
    }
    Ok(MatrixGroup {
        field: field.clone(),
        generators,
        elements,
    })
}

impl MatrixGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, m: &Mat2) -> bool {
        self.elements.contains(m)
    }

    pub fn contains_minus_identity(&self) -> bool {
        self.contains(&Mat2::identity(&self.field).neg())
    }
}

/// Catalog tags, also the CLI spelling: "C:n", "D:N", "2T", "2O", "2I".
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupTag {
    Cyclic(u32),
    Dihedral(u32),
    Tetrahedral,
    Octahedral,
    Icosahedral,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BadTag(pub String);

impl std::fmt::Display for BadTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "unknown group tag {:?} (expected C:n, D:N, 2T, 2O, or 2I)",
            self.0
        )
    }
}

impl std::error::Error for BadTag {}

impl FromStr for GroupTag {
    type Err = BadTag;

    fn from_str(s: &str) -> Result<GroupTag, BadTag> {
        match s {
            "2T" => return Ok(GroupTag::Tetrahedral),
            "2O" => return Ok(GroupTag::Octahedral),
            "2I" => return Ok(GroupTag::Icosahedral),
            _ => {}
        }
        let parse_n = |t: &str| t.parse::<u32>().ok().filter(|n| *n >= 1);
        if let Some(rest) = s.strip_prefix("C:") {
            if let Some(n) = parse_n(rest) {
                return Ok(GroupTag::Cyclic(n));
            }
        }
        if let Some(rest) = s.strip_prefix("D:") {
            if let Some(n) = parse_n(rest) {
                return Ok(GroupTag::Dihedral(n));
            }
        }
        Err(BadTag(s.to_string()))
    }
}

/// Embed the quaternion a + b i + c j + d k as [[a + b I, c + d I],
/// [-c + d I, a - b I]], where I is a square root of -1 in the field.
fn quaternion(im: &Cyclo, a: &Cyclo, b: &Cyclo, c: &Cyclo, d: &Cyclo) -> Mat2 {
    Mat2::new(
        a.add(&b.mul(im)),
        c.add(&d.mul(im)),
        c.neg().add(&d.mul(im)),
        a.sub(&b.mul(im)),
    )
}

/// Build a catalog group. Orders: cyclic(n) has n elements, dihedral(N)
/// has 4N, 2T has 24, 2O has 48, 2I has 120. Conductors: 2n for cyclic,
/// lcm(2N, 4) for dihedral, 8 for 2T and 2O, 20 for 2I.
pub fn binary_group(tag: GroupTag) -> MatrixGroup {
    match tag {
        GroupTag::Cyclic(n) => {
            let field = CycloField::new(2 * n);
            let r = Mat2::diagonal(
                Cyclo::zeta_pow(&field, 2),
                Cyclo::zeta_pow(&field, -2),
            );
            closure(&field, vec![r], DEFAULT_CAP).unwrap()
        }
        GroupTag::Dihedral(n) => {
            let m = num::integer::lcm(2 * n, 4);
            let field = CycloField::new(m);
            let step = (m / (2 * n)) as i64;
            let r = Mat2::diagonal(
                Cyclo::zeta_pow(&field, step),
                Cyclo::zeta_pow(&field, -step),
            );
            let s = Mat2::new(
                Cyclo::zero(&field),
                Cyclo::one(&field),
                Cyclo::from_int(&field, -1),
                Cyclo::zero(&field),
            );
            closure(&field, vec![r, s], DEFAULT_CAP).unwrap()
        }
        GroupTag::Tetrahedral => closure(&tet_field(), tet_generators(), DEFAULT_CAP).unwrap(),
        GroupTag::Octahedral => {
            let field = tet_field();
            let mut gens = tet_generators();
            // Adjoining diag(zeta_8, zeta_8^7) doubles 2T to 2O.
            gens.push(Mat2::diagonal(
                Cyclo::zeta(&field),
                Cyclo::zeta_pow(&field, 7),
            ));
            closure(&field, gens, DEFAULT_CAP).unwrap()
        }
        GroupTag::Icosahedral => {
            let field = CycloField::new(20);
            let im = Cyclo::zeta_pow(&field, 5);
            let half = Cyclo::from_rat(&field, rat(1, 2));
            let zero = Cyclo::zero(&field);
            // sqrt(5) = 1 + 2 zeta_5 + 2 zeta_5^4 inside Q(zeta_20).
            let sqrt5 = Cyclo::one(&field)
                .add(&Cyclo::zeta_pow(&field, 4).mul(&Cyclo::from_int(&field, 2)))
                .add(&Cyclo::zeta_pow(&field, 16).mul(&Cyclo::from_int(&field, 2)));
            let phi = Cyclo::one(&field).add(&sqrt5).mul(&half);
            let phi_inv = sqrt5.sub(&Cyclo::one(&field)).mul(&half);
            // sigma = (phi + phi^-1 i + j) / 2, tau = (-1 + i + j + k) / 2.
            let sigma = quaternion(
                &im,
                &phi.mul(&half),
                &phi_inv.mul(&half),
                &half,
                &zero,
            );
            let minus_half = half.neg();
            let tau = quaternion(&im, &minus_half, &half, &half, &half);
            closure(&field, vec![sigma, tau], DEFAULT_CAP).unwrap()
        }
    }
}

fn tet_field() -> Arc<CycloField> {
    CycloField::new(8)
}

/// Quaternion units i, j and the order-6 element (-1 + i + j + k) / 2
/// generate the binary tetrahedral group; i = zeta_8^2 in Q(zeta_8).
fn tet_generators() -> Vec<Mat2> {
    let field = tet_field();
    let im = Cyclo::zeta_pow(&field, 2);
    let one = Cyclo::one(&field);
    let zero = Cyclo::zero(&field);
    let half = Cyclo::from_rat(&field, rat(1, 2));
    let qi = quaternion(&im, &zero, &one, &zero, &zero);
    let qj = quaternion(&im, &zero, &zero, &one, &zero);
    let w = quaternion(&im, &half.neg(), &half, &half, &half);
    vec![qi, qj, w]
}

pub fn is_abelian(g: &MatrixGroup) -> bool {
    g.generators
        .iter()
        .enumerate()
        .all(|(i, a)| g.generators[i + 1..].iter().all(|b| a.mul(b) == b.mul(a)))
}

/// A projective common eigenvector over the group's own field, when one of
/// the generators has an eigenvalue there. Eigenvalues of finite-order
/// matrices are roots of unity, and the roots of unity in Q(zeta_m) are
/// exactly +/- zeta_m^j, so the search space is finite.
pub fn common_eigenvector(g: &MatrixGroup) -> Option<[Cyclo; 2]> {
    let field = &g.field;
    let zero = Cyclo::zero(field);
    let pick = g
        .generators
        .iter()
        .find(|m| !m.is_scalar())
        .cloned()
        .unwrap_or_else(|| Mat2::identity(field));
    if pick.is_scalar() {
        // Scalar group: every vector works.
        return Some([Cyclo::one(field), zero]);
    }
    let fixed_by_all = |v: &[Cyclo; 2]| {
        g.generators.iter().all(|m| {
            let w0 = m.a.mul(&v[0]).add(&m.b.mul(&v[1]));
            let w1 = m.c.mul(&v[0]).add(&m.d.mul(&v[1]));
            // projective fixedness: w parallel to v
            w0.mul(&v[1]) == w1.mul(&v[0])
        })
    };
    let m = field.conductor as i64;
    for j in 0..m {
        for sign in [1i64, -1] {
            let xi = if sign == 1 {
                Cyclo::zeta_pow(field, j)
            } else {
                Cyclo::zeta_pow(field, j).neg()
            };
            // det(pick - xi I) = 0?
            let shifted = Mat2::new(
                pick.a.sub(&xi),
                pick.b.clone(),
                pick.c.clone(),
                pick.d.sub(&xi),
            );
            if !shifted.det().is_zero() {
                continue;
            }
            let v = if !pick.b.is_zero() || pick.a != xi {
                [pick.b.clone(), xi.sub(&pick.a)]
            } else {
                [xi.sub(&pick.d), pick.c.clone()]
            };
            if v[0].is_zero() && v[1].is_zero() {
                continue;
            }
            if fixed_by_all(&v) {
                return Some(v);
            }
        }
    }
    None
}

/// For a finite subgroup of SL(2, C), a common eigenvector exists iff the
/// group is abelian. Forward: a common eigenvector conjugates the group
/// into triangular form; finite order then forces each matrix to be
/// diagonalizable with the same eigenline pair, so the group sits in a
/// torus and is abelian. Backward: a non-scalar finite-order matrix in
/// SL(2) has two distinct eigenvalues, and anything commuting with it
/// preserves each of the two eigenlines.
pub fn has_common_eigenvector(g: &MatrixGroup) -> bool {
    let abelian = is_abelian(g);
    if abelian {
        // Cross-check: exhibit an explicit eigenvector whenever the
        // eigenvalue lies in the coefficient field.
        if let Some(v) = common_eigenvector(g) {
            assert!(!(v[0].is_zero() && v[1].is_zero()));
        }
    }
    abelian
}

/// Order of the image in PGL(2, C): |G| divided by |G intersect {I, -I}|.
pub fn pgl_projection_order(g: &MatrixGroup) -> usize {
    let kernel = if g.contains_minus_identity() { 2 } else { 1 };
    g.order() / kernel
}

/// True iff some element's powers exhaust the group.
pub fn is_cyclic(g: &MatrixGroup) -> bool {
    let n = g.order();
    g.elements.iter().any(|m| m.order() == n)
}

/// Subgroup generated by a subset of the group's elements; stays inside
/// the ambient finite group, so plain product closure terminates.
fn generated_subgroup(g: &MatrixGroup, gens: &[Mat2]) -> BTreeSet<Mat2> {
    let mut set: BTreeSet<Mat2> = BTreeSet::new();
    set.insert(Mat2::identity(&g.field));
    let mut frontier: Vec<Mat2> = Vec::new();
    for m in gens {
        if set.insert(m.clone()) {
            frontier.push(m.clone());
        }
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for f in &frontier {
            for m in gens {
                let prod = f.mul(m);
                if set.insert(prod.clone()) {
                    next.push(prod);
                }
            }
        }
        frontier = next;
    }
    set
}

/// All index-2 subgroups. They are kernels of surjections onto the
/// 2-element group, and those factor through G / N where N is generated
/// by all squares: a quotient of exponent 2 is automatically abelian, so
/// N already contains every commutator. Subgroups of index 2 in G thus
/// correspond to hyperplanes in the F_2-vector space G / N.
pub fn index_two_subgroups(g: &MatrixGroup) -> Vec<MatrixGroup> {
    let squares: Vec<Mat2> = g.elements.iter().map(|m| m.mul(m)).collect();
    let n = generated_subgroup(g, &squares);
    if n.len() == g.order() {
        return Vec::new();
    }

    // Partition into cosets of N.
    let mut coset_of: std::collections::BTreeMap<Mat2, usize> = std::collections::BTreeMap::new();
    let mut reps: Vec<Mat2> = Vec::new();
    for el in &g.elements {
        if coset_of.contains_key(el) {
            continue;
        }
        let idx = reps.len();
        reps.push(el.clone());
        for h in &n {
            coset_of.insert(el.mul(h), idx);
        }
    }

    // Coordinates of each coset over a greedy F_2 basis of G / N.
    let count = reps.len();
    let mut coords: Vec<Option<u32>> = vec![None; count];
    coords[coset_of[&Mat2::identity(&g.field)]] = Some(0);
    let mut basis_bits = 0u32;
    for idx in 0..count {
        if coords[idx].is_some() {
            continue;
        }
        let bit = 1u32 << basis_bits;
        basis_bits += 1;
        let known: Vec<(usize, u32)> = coords
            .iter()
            .enumerate()
            .filter_map(|(i, c)| c.map(|v| (i, v)))
            .collect();
        for (i, v) in known {
            let product = coset_of[&reps[i].mul(&reps[idx])];
            coords[product] = Some(v | bit);
        }
    }
    let coords: Vec<u32> = coords.into_iter().map(Option::unwrap).collect();

    // Kernels of the nontrivial functionals G / N -> {+1, -1}.
    let mut out = Vec::new();
    for functional in 1u32..(1 << basis_bits) {
        let mut members: BTreeSet<Mat2> = BTreeSet::new();
        for el in &g.elements {
            let c = coords[coset_of[el]];
            if (c & functional).count_ones() % 2 == 0 {
                members.insert(el.clone());
            }
        }
        // Small generating set, greedily grown.
        let mut gens: Vec<Mat2> = Vec::new();
        let mut span = generated_subgroup(g, &gens);
        for el in &members {
            if !span.contains(el) {
                gens.push(el.clone());
                span = generated_subgroup(g, &gens);
                if span.len() == members.len() {
                    break;
                }
            }
        }
        out.push(MatrixGroup {
            field: g.field.clone(),
            generators: gens,
            elements: members,
        });
    }
    out
}
