//! GF(2^m) arithmetic in a fixed polynomial basis, bit-vector elements of
//! F_2^n, binary matrices, and the {1, delta} identification of F_q^2 with
//! F_{q^2}.

use std::fmt;
use thiserror::Error;

/// Largest supported extension degree. Everything downstream is exponential
/// in n = 2m, so a small cap keeps misuse obvious.
pub const MAX_DEGREE: u32 = 16;

/// Default modulus per degree: the least irreducible polynomial of degree m
/// over F_2 with nonzero constant term, encoded as an (m+1)-bit mask.
/// Index 0 holds the degree-1 entry (X + 1).
pub const CANONICAL_MODULI: [u32; MAX_DEGREE as usize] = [
    0x3, 0x7, 0xb, 0x13, 0x25, 0x43, 0x83, 0x11b, 0x203, 0x409, 0x805, 0x1009, 0x201b, 0x4021,
    0x8003, 0x1002b,
];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("modulus {modulus:#x} is reducible: divisible by {divisor:#x}")]
    ReducibleModulus { modulus: u32, divisor: u32 },
    #[error("modulus {modulus:#x} has degree {actual}, expected {expected}")]
    DegreeMismatch { modulus: u32, expected: u32, actual: u32 },
    #[error("division by zero in GF(2^{m})")]
    DivisionByZero { m: u32 },
    #[error("X^2 + {gamma:#x} X + 1 has a root in GF(2^{m})")]
    InvalidGamma { gamma: u32, m: u32 },
}

/// Carry-less product of two polynomials over F_2.
fn poly_mul(a: u32, b: u32) -> u64 {
    let mut acc = 0u64;
    let a = a as u64;
    let mut b = b as u64;
    let mut shift = 0;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a << shift;
        }
        b >>= 1;
        shift += 1;
    }
    acc
}

/// Remainder of a modulo m (both polynomials over F_2, m != 0).
fn poly_rem(mut a: u64, m: u32) -> u32 {
    let dm = 31 - m.leading_zeros();
    let m = m as u64;
    while a >> dm != 0 {
        let da = 63 - a.leading_zeros();
        if da < dm {
            break;
        }
        a ^= m << (da - dm);
    }
    a as u32
}

fn poly_degree(p: u32) -> u32 {
    debug_assert!(p != 0);
    31 - p.leading_zeros()
}

/// Trial division against every polynomial of degree 1..=deg/2.
pub fn is_irreducible(p: u32) -> Result<(), AlgebraError> {
    let d = poly_degree(p);
    if d == 0 {
        return Err(AlgebraError::ReducibleModulus { modulus: p, divisor: 1 });
    }
    for q in 2u32..(1 << (d / 2 + 1)) {
        if poly_degree(q) == 0 || poly_degree(q) > d / 2 {
            continue;
        }
        if poly_rem(p as u64, q) == 0 {
            return Err(AlgebraError::ReducibleModulus { modulus: p, divisor: q });
        }
    }
    Ok(())
}

/// Parameters of GF(2^m): extension degree and irreducible modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldParams {
    m: u32,
    modulus: u32,
}

impl FieldParams {
    /// Validated parameters; the canonical modulus is used when none is given.
    pub fn new(m: u32, modulus: Option<u32>) -> Result<Self, AlgebraError> {
        assert!((1..=MAX_DEGREE).contains(&m), "extension degree {m} out of range 1..={MAX_DEGREE}");
        let modulus = modulus.unwrap_or(CANONICAL_MODULI[(m - 1) as usize]);
        let actual = poly_degree(modulus);
        if actual != m {
            return Err(AlgebraError::DegreeMismatch { modulus, expected: m, actual });
        }
        is_irreducible(modulus)?;
        Ok(FieldParams { m, modulus })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Field order q = 2^m.
    pub fn order(&self) -> u32 {
        1 << self.m
    }

    pub fn element(&self, bits: u32) -> FieldElement {
        assert!(bits < self.order(), "bitmask {bits:#x} out of range for GF(2^{})", self.m);
        FieldElement { params: *self, bits }
    }

    pub fn zero(&self) -> FieldElement {
        self.element(0)
    }

    pub fn one(&self) -> FieldElement {
        self.element(1)
    }

    /// All field elements in bitmask order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order()).map(move |b| FieldElement { params: *self, bits: b })
    }
}

impl fmt::Display for FieldParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{:x}", self.m, self.modulus)
    }
}

/// Element of GF(2^m) as polynomial-basis coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    bits: u32,
    params: FieldParams,
}

impl FieldElement {
    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn params(&self) -> FieldParams {
        self.params
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn add(&self, rhs: &FieldElement) -> FieldElement {
        self.check_params(rhs);
        FieldElement { params: self.params, bits: self.bits ^ rhs.bits }
    }

    pub fn mul(&self, rhs: &FieldElement) -> FieldElement {
        self.check_params(rhs);
        let bits = poly_rem(poly_mul(self.bits, rhs.bits), self.params.modulus);
        FieldElement { params: self.params, bits }
    }

    pub fn square(&self) -> FieldElement {
        self.mul(self)
    }

    pub fn pow(&self, mut k: u64) -> FieldElement {
        let mut base = *self;
        let mut acc = self.params.one();
        while k != 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.square();
            k >>= 1;
        }
        acc
    }

    pub fn inv(&self) -> Result<FieldElement, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero { m: self.params.m });
        }
        // a^(q-2) by Lagrange.
        Ok(self.pow((self.params.order() - 2) as u64))
    }

    /// Absolute trace to F_2: sum of a^(2^i) for i = 0..m-1.
    pub fn trace(&self) -> u32 {
        let mut acc = self.params.zero();
        let mut x = *self;
        for _ in 0..self.params.m {
            acc = acc.add(&x);
            x = x.square();
        }
        debug_assert!(acc.bits <= 1);
        acc.bits
    }

    fn check_params(&self, rhs: &FieldElement) {
        assert_eq!(self.params, rhs.params, "mixed field parameters");
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:x}", self.bits)
    }
}

/// Element of the additive group F_2^n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    n: u32,
    bits: u32,
}

impl GroupElement {
    pub fn new(n: u32, bits: u32) -> Self {
        assert!((1..=2 * MAX_DEGREE).contains(&n), "dimension {n} out of range");
        assert!(n == 32 || bits < (1u32 << n), "bitmask {bits:#x} out of range for F_2^{n}");
        GroupElement { n, bits }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn add(&self, rhs: &GroupElement) -> GroupElement {
        assert_eq!(self.n, rhs.n, "mixed group dimensions");
        GroupElement { n: self.n, bits: self.bits ^ rhs.bits }
    }

    /// Fixed-width lowercase hex, ceil(n/4) digits.
    pub fn to_hex(&self) -> String {
        format!("{:0width$x}", self.bits, width = hex_width(self.n))
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// Number of hex digits used for an n-bit mask in the file formats.
pub fn hex_width(n: u32) -> usize {
    n.div_ceil(4) as usize
}

/// Affine point of AG(2, q).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlanePoint {
    pub x: FieldElement,
    pub y: FieldElement,
}

impl PlanePoint {
    pub fn new(x: FieldElement, y: FieldElement) -> Self {
        assert_eq!(x.params(), y.params(), "mixed field parameters in plane point");
        PlanePoint { x, y }
    }

    pub fn add(&self, rhs: &PlanePoint) -> PlanePoint {
        PlanePoint { x: self.x.add(&rhs.x), y: self.y.add(&rhs.y) }
    }
}

/// Least gamma (in bitmask order) such that X^2 + gamma X + 1 has no root in
/// GF(2^m), found by exhaustive root search.
pub fn choose_gamma(params: FieldParams) -> FieldElement {
    for gamma in params.elements() {
        if quadratic_is_irreducible(params, &gamma) {
            return gamma;
        }
    }
    // Half the elements of F_q have trace 1, so a valid gamma always exists.
    unreachable!("no valid gamma in GF(2^{})", params.m());
}

/// Whether X^2 + gamma X + 1 has no root in GF(2^m).
pub fn quadratic_is_irreducible(params: FieldParams, gamma: &FieldElement) -> bool {
    params
        .elements()
        .all(|x| !x.square().add(&gamma.mul(&x)).add(&params.one()).is_zero())
}

/// The identification Delta: (x, y) -> x + delta y of F_q^2 with F_{q^2},
/// where delta is a root of X^2 + gamma X + 1. Elements of GF(2^{2m}) are
/// 2m-bit masks in the basis {1, delta}: low m bits the 1-coordinate, high m
/// bits the delta-coordinate.
#[derive(Debug, Clone, Copy)]
pub struct DeltaMap {
    params: FieldParams,
    gamma: FieldElement,
}

impl DeltaMap {
    /// Uses the deterministic gamma from [`choose_gamma`].
    pub fn new(params: FieldParams) -> Self {
        DeltaMap { params, gamma: choose_gamma(params) }
    }

    pub fn with_gamma(params: FieldParams, gamma: FieldElement) -> Result<Self, AlgebraError> {
        if !quadratic_is_irreducible(params, &gamma) {
            return Err(AlgebraError::InvalidGamma { gamma: gamma.bits(), m: params.m() });
        }
        Ok(DeltaMap { params, gamma })
    }

    pub fn params(&self) -> FieldParams {
        self.params
    }

    pub fn gamma(&self) -> FieldElement {
        self.gamma
    }

    /// Dimension of the ambient group F_2^{2m}.
    pub fn ambient_dim(&self) -> u32 {
        2 * self.params.m()
    }

    /// delta itself, as a 2m-bit mask.
    pub fn delta_bits(&self) -> u32 {
        1 << self.params.m()
    }

    pub fn embed(&self, p: &PlanePoint) -> GroupElement {
        assert_eq!(p.x.params(), self.params, "point not over the map's field");
        GroupElement::new(self.ambient_dim(), p.x.bits() | (p.y.bits() << self.params.m()))
    }

    pub fn unembed(&self, g: &GroupElement) -> PlanePoint {
        assert_eq!(g.n(), self.ambient_dim());
        let m = self.params.m();
        PlanePoint::new(
            self.params.element(g.bits() & ((1 << m) - 1)),
            self.params.element(g.bits() >> m),
        )
    }

    /// Product in GF(2^{2m}) via delta^2 = gamma delta + 1.
    pub fn ext_mul(&self, z: u32, w: u32) -> u32 {
        let m = self.params.m();
        let mask = (1u32 << m) - 1;
        let (a, b) = (self.params.element(z & mask), self.params.element(z >> m));
        let (c, d) = (self.params.element(w & mask), self.params.element(w >> m));
        let bd = b.mul(&d);
        let lo = a.mul(&c).add(&bd);
        let hi = a.mul(&d).add(&b.mul(&c)).add(&self.gamma.mul(&bd));
        lo.bits() | (hi.bits() << m)
    }

    pub fn ext_pow(&self, z: u32, mut k: u64) -> u32 {
        let mut base = z;
        let mut acc = 1u32;
        while k != 0 {
            if k & 1 == 1 {
                acc = self.ext_mul(acc, base);
            }
            base = self.ext_mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Multiplicative order of a nonzero element of GF(2^{2m}).
    pub fn ext_order(&self, z: u32) -> u32 {
        assert!(z != 0);
        let mut k = 1u32;
        let mut acc = z;
        while acc != 1 {
            acc = self.ext_mul(acc, z);
            k += 1;
        }
        k
    }
}

/// Dense binary matrix with rows stored as bitmasks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinMatrix {
    rows: Vec<u32>,
    cols: u32,
}

impl BinMatrix {
    pub fn from_rows(rows: Vec<u32>, cols: u32) -> Self {
        assert!((1..=32).contains(&cols));
        BinMatrix { rows, cols }
    }

    pub fn identity(n: u32) -> Self {
        BinMatrix { rows: (0..n).map(|i| 1 << i).collect(), cols: n }
    }

    pub fn n_rows(&self) -> u32 {
        self.rows.len() as u32
    }

    pub fn n_cols(&self) -> u32 {
        self.cols
    }

    /// Matrix-vector product over F_2 (x as a column of bits).
    pub fn apply(&self, x: u32) -> u32 {
        let mut out = 0u32;
        for (i, row) in self.rows.iter().enumerate() {
            out |= ((row & x).count_ones() & 1) << i;
        }
        out
    }

    pub fn rank(&self) -> u32 {
        rank_of(&self.rows)
    }

    pub fn is_invertible(&self) -> bool {
        self.n_rows() == self.cols && self.rank() == self.cols
    }

    /// Uniformly sampled invertible n x n matrix (rejection sampling).
    pub fn random_invertible<R: rand::Rng>(n: u32, rng: &mut R) -> Self {
        loop {
            let rows: Vec<u32> =
                (0..n).map(|_| rng.gen_range(0..(1u64 << n)) as u32).collect();
            let m = BinMatrix { rows, cols: n };
            if m.is_invertible() {
                return m;
            }
        }
    }
}

/// Rank over F_2 of a list of bit vectors.
pub fn rank_of(vectors: &[u32]) -> u32 {
    let mut basis: Vec<u32> = Vec::new();
    for &v in vectors {
        let mut v = v;
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len() as u32
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn canonical_table_is_least_irreducible_with_constant_term() {
        for m in 1..=MAX_DEGREE {
            let mut p = 1u32 << m;
            let least = loop {
                if p & 1 == 1 && is_irreducible(p).is_ok() {
                    break p;
                }
                p += 1;
            };
            assert_eq!(
                CANONICAL_MODULI[(m - 1) as usize],
                least,
                "canonical modulus mismatch at m={m}"
            );
        }
    }

    #[test]
    fn field_new_validates() {
        // m=1 default is X+1, the prime field.
        let f1 = FieldParams::new(1, None).unwrap();
        assert_eq!(f1.modulus(), 0x3);
        assert_eq!(f1.one().mul(&f1.one()), f1.one());

        // X^4+X+1 accepted.
        assert!(FieldParams::new(4, Some(0x13)).is_ok());
        // X^4+X^2+1 = (X^2+X+1)^2 rejected.
        assert_eq!(
            FieldParams::new(4, Some(0x15)),
            Err(AlgebraError::ReducibleModulus { modulus: 0x15, divisor: 0x7 })
        );
        // Degree mismatch.
        assert!(matches!(
            FieldParams::new(4, Some(0xb)),
            Err(AlgebraError::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn inverse_law_and_lagrange() {
        for m in 1..=8 {
            let f = FieldParams::new(m, None).unwrap();
            for a in f.elements().skip(1) {
                assert_eq!(a.mul(&a.inv().unwrap()), f.one());
                assert_eq!(a.pow((f.order() - 1) as u64), f.one(), "Lagrange fails at m={m}");
            }
            assert_eq!(f.zero().inv(), Err(AlgebraError::DivisionByZero { m }));
        }
    }

    #[test]
    fn multiplicative_group_is_cyclic() {
        // Spot-check: some element has full order q-1.
        for m in [2, 3, 4, 6] {
            let f = FieldParams::new(m, None).unwrap();
            let has_generator = f.elements().skip(1).any(|g| {
                let mut acc = g;
                let mut ord = 1;
                while acc != f.one() {
                    acc = acc.mul(&g);
                    ord += 1;
                }
                ord == f.order() - 1
            });
            assert!(has_generator, "no generator found in GF(2^{m})");
        }
    }

    #[test]
    fn field_axioms_on_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for m in 1..=MAX_DEGREE {
            let f = FieldParams::new(m, None).unwrap();
            for _ in 0..50 {
                let a = f.element(rng.gen_range(0..f.order()));
                let b = f.element(rng.gen_range(0..f.order()));
                let c = f.element(rng.gen_range(0..f.order()));
                assert_eq!(a.mul(&b), b.mul(&a));
                assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
                assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            }
        }
    }

    #[test]
    fn frobenius_is_additive_and_bijective() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for m in 1..=MAX_DEGREE {
            let f = FieldParams::new(m, None).unwrap();
            for _ in 0..100 {
                let a = f.element(rng.gen_range(0..f.order()));
                let b = f.element(rng.gen_range(0..f.order()));
                assert_eq!(a.add(&b).square(), a.square().add(&b.square()));
            }
            if m <= 10 {
                let mut images: Vec<u32> = f.elements().map(|x| x.square().bits()).collect();
                images.sort_unstable();
                images.dedup();
                assert_eq!(images.len() as u32, f.order());
            }
        }
    }

    #[test]
    fn gamma_choice_is_deterministic_and_valid() {
        // m odd -> gamma = 1; the canonical moduli give gamma = 2 for even m <= 8.
        for (m, expect) in [(1, 1), (2, 2), (3, 1), (4, 2), (5, 1), (6, 2), (7, 1), (8, 2)] {
            let f = FieldParams::new(m, None).unwrap();
            let gamma = choose_gamma(f);
            assert_eq!(gamma.bits(), expect, "gamma mismatch at m={m}");
            assert!(quadratic_is_irreducible(f, &gamma));
            // Tr(1/gamma) = 1 is the classical irreducibility criterion.
            assert_eq!(gamma.inv().unwrap().trace(), 1);
        }
    }

    #[test]
    fn delta_embed_is_additive_and_injective() {
        for m in 1..=6 {
            let f = FieldParams::new(m, None).unwrap();
            let d = DeltaMap::new(f);
            assert_eq!(d.embed(&PlanePoint::new(f.zero(), f.zero())).bits(), 0);
            let mut seen = std::collections::HashSet::new();
            for x in f.elements() {
                // (x, 0) lands in the subfield copy.
                assert_eq!(d.embed(&PlanePoint::new(x, f.zero())).bits(), x.bits());
                for y in f.elements() {
                    let p = PlanePoint::new(x, y);
                    assert!(seen.insert(d.embed(&p).bits()), "embedding not injective");
                    for u in f.elements() {
                        let q = PlanePoint::new(u, u);
                        assert_eq!(
                            d.embed(&p).add(&d.embed(&q)),
                            d.embed(&p.add(&q)),
                            "embedding not additive"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn quadratic_extension_arithmetic() {
        let f = FieldParams::new(4, None).unwrap();
        let d = DeltaMap::new(f);
        // delta satisfies delta^2 + gamma delta + 1 = 0.
        let delta = d.delta_bits();
        let gamma = d.gamma().bits();
        let lhs = d.ext_mul(delta, delta) ^ d.ext_mul(gamma, delta) ^ 1;
        assert_eq!(lhs, 0);
        // The extension's multiplicative group has order q^2 - 1.
        let g = (2..1 << 8).find(|&z| d.ext_order(z) == 255).unwrap();
        assert_eq!(d.ext_pow(g, 255), 1);
    }

    #[test]
    fn group_element_xor_laws() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let n = rng.gen_range(1..=16);
            let lim = 1u32 << n;
            let a = GroupElement::new(n, rng.gen_range(0..lim));
            let b = GroupElement::new(n, rng.gen_range(0..lim));
            let c = GroupElement::new(n, rng.gen_range(0..lim));
            assert_eq!(a.add(&b), b.add(&a));
            assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            assert_eq!(a.add(&a).bits(), 0);
        }
    }

    #[test]
    fn rank_and_invertibility() {
        assert_eq!(rank_of(&[0b001, 0b010, 0b011]), 2);
        assert_eq!(rank_of(&[0]), 0);
        assert!(BinMatrix::identity(5).is_invertible());
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let m = BinMatrix::random_invertible(6, &mut rng);
            assert!(m.is_invertible());
            let mut images: Vec<u32> = (0..64).map(|x| m.apply(x)).collect();
            images.sort_unstable();
            images.dedup();
            assert_eq!(images.len(), 64);
        }
    }

    #[test]
    fn display_formats() {
        let f = FieldParams::new(4, None).unwrap();
        assert_eq!(f.to_string(), "4:13");
        assert_eq!(f.element(0xa).to_string(), "a");
        assert_eq!(GroupElement::new(8, 0xab).to_string(), "ab");
        assert_eq!(GroupElement::new(9, 0x1ab).to_string(), "1ab");
    }
}
