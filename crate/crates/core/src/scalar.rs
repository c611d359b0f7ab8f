//! Exact arithmetic over a fixed multiquadratic real field.
//!
//! A context fixes squarefree radicands `d_1, ..., d_k`; elements live in
//! `Q(sqrt(d_1), ..., sqrt(d_k))` and are stored as rational coordinates over
//! the basis of all `sqrt(m)` with `m` a squarefree subset product. Soundness
//! of the zero test rests on the classical fact that square roots of distinct
//! squarefree integers are linearly independent over `Q`; the context
//! validator enforces distinctness of all `2^k` subset products, which is
//! exactly what that theorem needs.
//!
//! Sign determination is a two-stage procedure: the zero test is purely
//! symbolic, and nonzero elements are separated from zero by interval
//! refinement at doubling precision. Refinement terminates for every nonzero
//! element, so no verdict ever depends on a precision heuristic.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::interval::{self, RatInterval};

/// Hard cap for sign refinement, in bits. Purely a diagnostic backstop:
/// a nonzero element always separates from zero at finite precision.
const SIGN_PRECISION_CAP: u32 = 1 << 20;

/// A fixed multiquadratic field `Q(sqrt(d_1), ..., sqrt(d_k))`.
///
/// The basis is indexed by subset bitmasks: bit `i` of a mask selects
/// `sqrt(d_i)`, and the basis label of a mask is the squarefree part of the
/// product of the selected radicands.
#[derive(Debug)]
pub struct FieldContext {
    radicands: Vec<u64>,
    /// `labels[mask]` = squarefree subset product for `mask`.
    labels: Vec<u64>,
    /// Inverse of `labels`, sorted by label for binary search.
    label_index: Vec<(u64, usize)>,
}

impl PartialEq for FieldContext {
    fn eq(&self, other: &Self) -> bool {
        self.radicands == other.radicands
    }
}
impl Eq for FieldContext {}

fn is_squarefree(mut n: u64) -> bool {
    if n == 0 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// Squarefree part of the product of two squarefree integers.
fn squarefree_product(a: u64, b: u64) -> u64 {
    let g = interval::gcd_u64(a, b);
    (a / g) * (b / g)
}

impl FieldContext {
    /// Build a context from pairwise distinct squarefree radicands `>= 2`.
    ///
    /// Rejects radicand sets whose subset products collide modulo squares
    /// (e.g. `{2, 3, 6}`), since those would break the coefficientwise zero
    /// test.
    pub fn new(radicands: &[u64]) -> Result<Arc<Self>> {
        if radicands.len() > 10 {
            return Err(Error::InvalidRadicands(
                "at most 10 radicands are supported".into(),
            ));
        }
        let mut sorted = radicands.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != radicands.len() {
            return Err(Error::InvalidRadicands("duplicate radicands".into()));
        }
        for &d in &sorted {
            if d < 2 {
                return Err(Error::InvalidRadicands(format!("radicand {d} is < 2")));
            }
            if !is_squarefree(d) {
                return Err(Error::InvalidRadicands(format!(
                    "radicand {d} is not squarefree"
                )));
            }
        }
        let k = sorted.len();
        let mut labels = vec![1u64; 1 << k];
        for mask in 1usize..(1 << k) {
            let low = mask & (mask - 1);
            let bit = mask.trailing_zeros() as usize;
            labels[mask] = squarefree_product(labels[low], sorted[bit]);
        }
        let mut label_index: Vec<(u64, usize)> =
            labels.iter().copied().enumerate().map(|(i, l)| (l, i)).collect();
        label_index.sort_unstable();
        if label_index.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidRadicands(
                "subset products collide modulo squares; radicands are multiplicatively dependent"
                    .into(),
            ));
        }
        Ok(Arc::new(FieldContext {
            radicands: sorted,
            labels,
            label_index,
        }))
    }

    /// The rational field: no radicands at all.
    pub fn rationals() -> Arc<Self> {
        FieldContext::new(&[]).expect("empty radicand set is valid")
    }

    pub fn radicands(&self) -> &[u64] {
        &self.radicands
    }

    /// Dimension of the field over `Q`.
    pub fn degree(&self) -> usize {
        self.labels.len()
    }

    /// Basis labels in mask order; `labels()[0] == 1`.
    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn mask_of_label(&self, label: u64) -> Option<usize> {
        self.label_index
            .binary_search_by_key(&label, |&(l, _)| l)
            .ok()
            .map(|i| self.label_index[i].1)
    }
}

/// An exact element of the field fixed by a [`FieldContext`].
#[derive(Clone)]
pub struct FieldElement {
    ctx: Arc<FieldContext>,
    /// Dense coordinates over the subset-product basis, indexed by mask.
    coeffs: Vec<BigRational>,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.coeffs == other.coeffs
    }
}
impl Eq for FieldElement {}

impl FieldElement {
    pub fn zero(ctx: &Arc<FieldContext>) -> Self {
        FieldElement {
            ctx: Arc::clone(ctx),
            coeffs: vec![BigRational::zero(); ctx.degree()],
        }
    }

    pub fn one(ctx: &Arc<FieldContext>) -> Self {
        Self::from_rational(ctx, BigRational::one())
    }

    pub fn from_rational(ctx: &Arc<FieldContext>, r: BigRational) -> Self {
        let mut e = Self::zero(ctx);
        e.coeffs[0] = r;
        e
    }

    pub fn from_int(ctx: &Arc<FieldContext>, n: i64) -> Self {
        Self::from_rational(ctx, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(ctx: &Arc<FieldContext>, n: &BigInt) -> Self {
        Self::from_rational(ctx, BigRational::from_integer(n.clone()))
    }

    /// `sqrt(n)` for a positive integer whose squarefree part is a basis
    /// label; returns `s * sqrt(m)` where `n = s^2 * m`.
    pub fn sqrt_of(ctx: &Arc<FieldContext>, n: u64) -> Result<Self> {
        if n == 0 {
            return Ok(Self::zero(ctx));
        }
        let mut square = 1u64;
        let mut rest = n;
        let mut p = 2u64;
        while p * p <= rest {
            while rest % (p * p) == 0 {
                rest /= p * p;
                square *= p;
            }
            p += 1;
        }
        let mask = ctx
            .mask_of_label(rest)
            .ok_or(Error::RadicalNotRepresentable(n))?;
        let mut e = Self::zero(ctx);
        e.coeffs[mask] = BigRational::from_integer(BigInt::from(square));
        Ok(e)
    }

    /// Build from a sparse map of `basis label -> coefficient`.
    pub fn from_coeff_pairs(
        ctx: &Arc<FieldContext>,
        pairs: &[(u64, BigRational)],
    ) -> Result<Self> {
        let mut e = Self::zero(ctx);
        for (label, c) in pairs {
            let mask = ctx
                .mask_of_label(*label)
                .ok_or(Error::RadicalNotRepresentable(*label))?;
            e.coeffs[mask] = &e.coeffs[mask] + c;
        }
        Ok(e)
    }

    pub fn context(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `sqrt(label)`, or zero for labels outside the basis.
    pub fn coeff_of_label(&self, label: u64) -> BigRational {
        match self.ctx.mask_of_label(label) {
            Some(m) => self.coeffs[m].clone(),
            None => BigRational::zero(),
        }
    }

    /// Sparse view: `(label, coefficient)` for the nonzero coordinates.
    pub fn nonzero_coeffs(&self) -> Vec<(u64, BigRational)> {
        let mut out: Vec<(u64, BigRational)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (self.ctx.labels[m], c.clone()))
            .collect();
        out.sort_by_key(|&(l, _)| l);
        out
    }

    /// Exact zero test: all basis coordinates vanish.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// `Some(r)` when the element is rational.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn assert_same_ctx(&self, other: &Self) {
        assert!(
            self.ctx == other.ctx,
            "field elements from different contexts"
        );
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        self.assert_same_ctx(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        FieldElement {
            ctx: Arc::clone(&self.ctx),
            coeffs,
        }
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.assert_same_ctx(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        FieldElement {
            ctx: Arc::clone(&self.ctx),
            coeffs,
        }
    }

    pub fn neg_ref(&self) -> Self {
        FieldElement {
            ctx: Arc::clone(&self.ctx),
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    /// Exact product via the radical multiplication rule
    /// `sqrt(m) * sqrt(n) = g * sqrt(mn / g^2)`, `g = gcd(m, n)`.
    pub fn mul_ref(&self, other: &Self) -> Self {
        self.assert_same_ctx(other);
        let n = self.ctx.degree();
        let mut coeffs = vec![BigRational::zero(); n];
        for (ma, ca) in self.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (mb, cb) in other.coeffs.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let g = interval::gcd_u64(self.ctx.labels[ma], self.ctx.labels[mb]);
                let mut term = ca * cb;
                if g != 1 {
                    term *= BigRational::from_integer(BigInt::from(g));
                }
                let target = ma ^ mb;
                coeffs[target] = &coeffs[target] + &term;
            }
        }
        FieldElement {
            ctx: Arc::clone(&self.ctx),
            coeffs,
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        FieldElement {
            ctx: Arc::clone(&self.ctx),
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn mul_int(&self, n: &BigInt) -> Self {
        self.scale(&BigRational::from_integer(n.clone()))
    }

    /// Conjugate over `sqrt(d_i)`: negate coordinates whose mask has bit `i`.
    fn conjugate(&self, bit: usize) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(m, c)| {
                if m & (1 << bit) != 0 {
                    -c.clone()
                } else {
                    c.clone()
                }
            })
            .collect();
        FieldElement {
            ctx: Arc::clone(&self.ctx),
            coeffs,
        }
    }

    /// Exact inverse, by norming down the quadratic tower: multiply by the
    /// conjugate over each radical in turn until a rational remains.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let k = self.ctx.radicands.len();
        let mut numerator = FieldElement::one(&self.ctx);
        let mut cur = self.clone();
        for bit in 0..k {
            let conj = cur.conjugate(bit);
            numerator = numerator.mul_ref(&conj);
            cur = cur.mul_ref(&conj);
        }
        let norm = cur
            .as_rational()
            .expect("tower norm must be rational after conjugating every radical");
        assert!(!norm.is_zero(), "nonzero element has zero tower norm");
        Ok(numerator.scale(&norm.recip()))
    }

    pub fn div_ref(&self, other: &Self) -> Result<Self> {
        Ok(self.mul_ref(&other.inv()?))
    }

    pub fn square(&self) -> Self {
        self.mul_ref(self)
    }

    /// Sound rational enclosure of the element at the given precision.
    pub fn to_interval(&self, bits: u32) -> RatInterval {
        let mut acc = RatInterval::point(self.coeffs[0].clone());
        for (mask, c) in self.coeffs.iter().enumerate().skip(1) {
            if c.is_zero() {
                continue;
            }
            let label = BigRational::from_integer(BigInt::from(self.ctx.labels[mask]));
            let term = interval::sqrt_bounds(&label, bits).scale(c);
            acc = acc.add(&term);
        }
        acc
    }

    /// Exact sign in `{-1, 0, +1}`.
    ///
    /// Zero is decided symbolically; otherwise intervals are refined with
    /// doubling precision until zero is excluded, which always happens for a
    /// nonzero element.
    pub fn sign(&self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        if let Some(r) = self.as_rational() {
            return if r.is_positive() { 1 } else { -1 };
        }
        let mut bits = 64u32;
        loop {
            if let Some(s) = self.to_interval(bits).definite_sign() {
                return s;
            }
            if bits >= SIGN_PRECISION_CAP {
                panic!(
                    "sign refinement exhausted at {bits} bits for a symbolically nonzero element; \
                     this indicates corrupted coefficient data"
                );
            }
            bits *= 2;
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.sign() < 0
    }

    pub fn abs(&self) -> Self {
        if self.sign() < 0 {
            self.neg_ref()
        } else {
            self.clone()
        }
    }

    /// Total order via the exact sign of the difference.
    pub fn cmp_exact(&self, other: &Self) -> Ordering {
        match self.sub_ref(other).sign() {
            1 => Ordering::Greater,
            -1 => Ordering::Less,
            _ => Ordering::Equal,
        }
    }

    /// Exact floor, via interval refinement plus exact boundary checks.
    pub fn floor(&self) -> BigInt {
        if let Some(r) = self.as_rational() {
            return r.floor().to_integer();
        }
        let mut bits = 64u32;
        loop {
            let iv = self.to_interval(bits);
            let lo = iv.lo.floor().to_integer();
            let hi = iv.hi.floor().to_integer();
            if lo == hi {
                return lo;
            }
            if &hi - &lo == BigInt::one() {
                // The cut point `hi` is the only ambiguity; decide exactly.
                let cut = FieldElement::from_bigint(&self.ctx, &hi);
                return if self.sub_ref(&cut).sign() >= 0 { hi } else { lo };
            }
            bits *= 2;
        }
    }

    /// Outward decimal rendition `(lo, hi)` with `digits` decimal places.
    pub fn decimal_interval(&self, digits: u32) -> (String, String) {
        // Refine until the printed endpoints are adjacent or equal.
        let mut bits = 64u32;
        loop {
            let iv = self.to_interval(bits);
            let wanted =
                BigRational::new(BigInt::one(), BigInt::from(10u32).pow(digits));
            if iv.width() <= wanted || bits >= 4096 {
                return interval::decimal_interval(&iv, digits);
            }
            bits *= 2;
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.nonzero_coeffs();
        if terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (label, c) in terms {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if label == 1 {
                write!(f, "{}", interval::rational_string(&mag))?;
            } else if mag.is_one() {
                write!(f, "sqrt({label})")?;
            } else {
                write!(f, "{}*sqrt({label})", interval::rational_string(&mag))?;
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $delegate:ident) => {
        impl std::ops::$trait for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$delegate(rhs)
            }
        }
        impl std::ops::$trait for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$delegate(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}
impl std::ops::Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

/// Division panics on a zero divisor; use [`FieldElement::div_ref`] where the
/// divisor is not known to be nonzero.
impl std::ops::Div for FieldElement {
    type Output = FieldElement;
    fn div(self, rhs: FieldElement) -> FieldElement {
        self.div_ref(&rhs).expect("division by zero field element")
    }
}
impl std::ops::Div for &FieldElement {
    type Output = FieldElement;
    fn div(self, rhs: &FieldElement) -> FieldElement {
        self.div_ref(rhs).expect("division by zero field element")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Arc<FieldContext> {
        FieldContext::new(&[2, 3, 5, 7]).unwrap()
    }

    fn sqrt(c: &Arc<FieldContext>, n: u64) -> FieldElement {
        FieldElement::sqrt_of(c, n).unwrap()
    }

    #[test]
    fn context_validation() {
        assert!(FieldContext::new(&[2, 3, 5, 7]).is_ok());
        assert!(FieldContext::new(&[4]).is_err()); // not squarefree
        assert!(FieldContext::new(&[1]).is_err()); // < 2
        assert!(FieldContext::new(&[2, 2]).is_err()); // duplicate
        assert!(FieldContext::new(&[2, 3, 6]).is_err()); // dependent mod squares
        let c = ctx();
        assert_eq!(c.degree(), 16);
        assert_eq!(c.labels()[0], 1);
        let mut all: Vec<u64> = c.labels().to_vec();
        all.sort_unstable();
        assert_eq!(
            all,
            vec![1, 2, 3, 5, 6, 7, 10, 14, 15, 21, 30, 35, 42, 70, 105, 210]
        );
    }

    #[test]
    fn radical_product_rule() {
        let c = ctx();
        // sqrt(2) * sqrt(3) = sqrt(6)
        assert_eq!(sqrt(&c, 2).mul_ref(&sqrt(&c, 3)), sqrt(&c, 6));
        // sqrt(6) * sqrt(10) = 2 sqrt(15)
        let lhs = sqrt(&c, 6).mul_ref(&sqrt(&c, 10));
        let rhs = sqrt(&c, 15).scale(&BigRational::from_integer(BigInt::from(2)));
        assert_eq!(lhs, rhs);
        // sqrt(8) = 2 sqrt(2)
        assert_eq!(
            sqrt(&c, 8),
            sqrt(&c, 2).scale(&BigRational::from_integer(BigInt::from(2)))
        );
    }

    #[test]
    fn difference_of_squares() {
        let c = ctx();
        let one = FieldElement::one(&c);
        let a = one.add_ref(&sqrt(&c, 2));
        let b = one.sub_ref(&sqrt(&c, 2));
        assert_eq!(a.mul_ref(&b), FieldElement::from_int(&c, -1));
    }

    #[test]
    fn inverse_of_one_plus_sqrt2() {
        let c = ctx();
        let a = FieldElement::one(&c).add_ref(&sqrt(&c, 2));
        let inv = a.inv().unwrap();
        // inv(1 + sqrt 2) = -1 + sqrt 2
        let expected = sqrt(&c, 2).sub_ref(&FieldElement::one(&c));
        assert_eq!(inv, expected);
        assert_eq!(a.mul_ref(&inv), FieldElement::one(&c));
    }

    #[test]
    fn signs() {
        let c = ctx();
        assert_eq!(FieldElement::zero(&c).sign(), 0);
        // sqrt(7) - sqrt(6) > 0
        assert_eq!(sqrt(&c, 7).sub_ref(&sqrt(&c, 6)).sign(), 1);
        // 13 sqrt(6) - 12 sqrt(7) > 0 (approximately 0.0944)
        let v = sqrt(&c, 6)
            .mul_int(&BigInt::from(13))
            .sub_ref(&sqrt(&c, 7).mul_int(&BigInt::from(12)));
        assert_eq!(v.sign(), 1);
        assert_eq!(v.neg_ref().sign(), -1);
    }

    #[test]
    fn interval_examples() {
        let c = ctx();
        let one = FieldElement::one(&c);
        let iv = one.to_interval(10);
        assert_eq!(iv.lo, iv.hi);

        let iv = sqrt(&c, 2).to_interval(30);
        assert!(iv.width() < BigRational::new(BigInt::one(), BigInt::from(1u64 << 20)));

        // sqrt(7) - sqrt(6) inside (0.196, 0.1963)
        let v = sqrt(&c, 7).sub_ref(&sqrt(&c, 6));
        let iv = v.to_interval(40);
        assert!(iv.lo > BigRational::new(BigInt::from(196), BigInt::from(1000)));
        assert!(iv.hi < BigRational::new(BigInt::from(1963), BigInt::from(10000)));
    }

    #[test]
    fn floor_values() {
        let c = ctx();
        assert_eq!(sqrt(&c, 2).floor(), BigInt::from(1));
        assert_eq!(sqrt(&c, 2).neg_ref().floor(), BigInt::from(-2));
        assert_eq!(FieldElement::from_int(&c, 3).floor(), BigInt::from(3));
        // floor(sqrt 7 / sqrt 6) = 1
        let q = sqrt(&c, 7).div_ref(&sqrt(&c, 6)).unwrap();
        assert_eq!(q.floor(), BigInt::from(1));
    }

    #[test]
    fn ring_axioms_randomized() {
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;
        let c = ctx();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let random_elem = |rng: &mut ChaCha8Rng| {
            let mut pairs = Vec::new();
            for _ in 0..3 {
                let mask = rng.gen_range(0..c.degree());
                let num = rng.gen_range(-9i64..=9);
                let den = rng.gen_range(1i64..=9);
                pairs.push((
                    c.labels()[mask],
                    BigRational::new(BigInt::from(num), BigInt::from(den)),
                ));
            }
            FieldElement::from_coeff_pairs(&c, &pairs).unwrap()
        };
        for _ in 0..200 {
            let a = random_elem(&mut rng);
            let b = random_elem(&mut rng);
            let d = random_elem(&mut rng);
            // associativity and commutativity of *
            assert_eq!(a.mul_ref(&b), b.mul_ref(&a));
            assert_eq!(a.mul_ref(&b).mul_ref(&d), a.mul_ref(&b.mul_ref(&d)));
            // distributivity
            assert_eq!(
                a.mul_ref(&b.add_ref(&d)),
                a.mul_ref(&b).add_ref(&a.mul_ref(&d))
            );
        }
    }

    #[test]
    fn inverse_randomized() {
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;
        let c = ctx();
        let one = FieldElement::one(&c);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut checked = 0usize;
        while checked < 1000 {
            let mut pairs = Vec::new();
            for _ in 0..2 {
                let mask = rng.gen_range(0..c.degree());
                let num = rng.gen_range(-20i64..=20);
                let den = rng.gen_range(1i64..=20);
                pairs.push((
                    c.labels()[mask],
                    BigRational::new(BigInt::from(num), BigInt::from(den)),
                ));
            }
            let a = FieldElement::from_coeff_pairs(&c, &pairs).unwrap();
            if a.is_zero() {
                continue;
            }
            assert_eq!(a.mul_ref(&a.inv().unwrap()), one);
            checked += 1;
        }
    }

    #[test]
    fn sign_agrees_with_interval_midpoint() {
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;
        let c = ctx();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..200 {
            let mask = rng.gen_range(0..c.degree());
            let num = rng.gen_range(-30i64..=30);
            let den = rng.gen_range(1i64..=30);
            let a = FieldElement::from_coeff_pairs(
                &c,
                &[(
                    c.labels()[mask],
                    BigRational::new(BigInt::from(num), BigInt::from(den)),
                )],
            )
            .unwrap();
            if a.is_zero() {
                continue;
            }
            let s = a.sign();
            let mut bits = 64;
            let iv = loop {
                let iv = a.to_interval(bits);
                if iv.definite_sign().is_some() {
                    break iv;
                }
                bits *= 2;
            };
            let mid = iv.midpoint();
            assert_eq!(s, if mid.is_positive() { 1 } else { -1 });
        }
    }

    #[test]
    fn division_by_zero_is_reported() {
        let c = ctx();
        assert!(matches!(
            FieldElement::zero(&c).inv(),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    #[should_panic(expected = "different contexts")]
    fn context_mismatch_panics() {
        let a = FieldElement::one(&FieldContext::new(&[2]).unwrap());
        let b = FieldElement::one(&FieldContext::new(&[3]).unwrap());
        let _ = a.add_ref(&b);
    }

    #[test]
    fn decimal_interval_of_sqrt7() {
        let c = ctx();
        let (lo, hi) = sqrt(&c, 7).decimal_interval(8);
        assert!(lo.starts_with("2.6457513"));
        assert!(hi.starts_with("2.6457513"));
    }
}
