//! The even lattice `E = Lambda^2(L^*)` of signature (3,3).
//!
//! Coordinates are taken in the fixed wedge basis
//! `v1 = u1^u2, v2 = u1^u3, v3 = u1^u4, v4 = u2^u3, v5 = u2^u4, v6 = u3^u4`
//! for an admissible basis `u1..u4` (orientation `u1^u2^u3^u4 = +1`). The cup
//! product pairing in this basis is the fixed Gram matrix with
//! `G[0][5] = G[5][0] = 1, G[1][4] = G[4][1] = -1, G[2][3] = G[3][2] = 1`,
//! obtained by expanding the four-fold wedge against the orientation class.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::{FieldContext, FieldElement};

/// Rank of the lattice.
pub const DIM: usize = 6;

/// The Gram matrix of the cup product pairing in the fixed wedge basis.
pub const GRAM: [[i64; DIM]; DIM] = [
    [0, 0, 0, 0, 0, 1],
    [0, 0, 0, 0, -1, 0],
    [0, 0, 0, 1, 0, 0],
    [0, 0, 1, 0, 0, 0],
    [0, -1, 0, 0, 0, 0],
    [1, 0, 0, 0, 0, 0],
];

/// An integral class in `E`, with unbounded coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LatticeVector {
    coords: [BigInt; DIM],
}

impl LatticeVector {
    pub fn new(coords: [BigInt; DIM]) -> Self {
        LatticeVector { coords }
    }

    pub fn from_i64(coords: [i64; DIM]) -> Self {
        LatticeVector {
            coords: coords.map(BigInt::from),
        }
    }

    pub fn zero() -> Self {
        LatticeVector {
            coords: std::array::from_fn(|_| BigInt::zero()),
        }
    }

    /// The basis vector `v_{i+1}` (zero-based index).
    pub fn basis(i: usize) -> Self {
        let mut v = Self::zero();
        v.coords[i] = BigInt::from(1);
        v
    }

    pub fn coords(&self) -> &[BigInt; DIM] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn neg(&self) -> Self {
        LatticeVector {
            coords: std::array::from_fn(|i| -self.coords[i].clone()),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        LatticeVector {
            coords: std::array::from_fn(|i| &self.coords[i] + &other.coords[i]),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        LatticeVector {
            coords: std::array::from_fn(|i| &self.coords[i] - &other.coords[i]),
        }
    }

    pub fn scaled(&self, n: &BigInt) -> Self {
        LatticeVector {
            coords: std::array::from_fn(|i| &self.coords[i] * n),
        }
    }

    pub fn sup_norm(&self) -> BigInt {
        self.coords
            .iter()
            .map(|c| c.abs())
            .max()
            .expect("nonempty coordinate array")
    }

    /// Cup product pairing `x^T G y`.
    pub fn pairing(&self, other: &Self) -> BigInt {
        let a = &self.coords;
        let b = &other.coords;
        &a[0] * &b[5] + &a[5] * &b[0] - &a[1] * &b[4] - &a[4] * &b[1]
            + &a[2] * &b[3]
            + &a[3] * &b[2]
    }

    /// `<x, x> = 2(x1 x6 - x2 x5 + x3 x4)`; always even.
    pub fn self_pairing(&self) -> BigInt {
        self.pairing(self)
    }

    pub fn is_isotropic(&self) -> bool {
        self.self_pairing().is_zero()
    }

    /// gcd of the coordinates (zero for the zero vector).
    pub fn content(&self) -> BigInt {
        self.coords
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// True when the class is not a nontrivial multiple: coordinate gcd 1.
    pub fn is_indivisible(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroVector);
        }
        Ok(self.content() == BigInt::from(1))
    }
}

/// Signature of `E`: exact congruence diagonalization of the Gram matrix.
pub fn signature() -> (usize, usize) {
    let g: Vec<Vec<BigRational>> = GRAM
        .iter()
        .map(|row| {
            row.iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect()
        })
        .collect();
    linalg::symmetric_signature(&g)
}

/// Signature of the pairing restricted to the span of the given vectors.
pub fn signature_of_span(vectors: &[LatticeVector]) -> (usize, usize) {
    let n = vectors.len();
    let gram: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| BigRational::from_integer(vectors[i].pairing(&vectors[j])))
                .collect()
        })
        .collect();
    if n == 0 {
        return (0, 0);
    }
    linalg::symmetric_signature(&gram)
}

/// A real class in `E (x) R` with exact multiquadratic coordinates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RealClass {
    coords: [FieldElement; DIM],
}

impl RealClass {
    pub fn new(coords: [FieldElement; DIM]) -> Self {
        let ctx = coords[0].context();
        assert!(
            coords.iter().all(|c| c.context() == ctx),
            "real class coordinates from different contexts"
        );
        RealClass { coords }
    }

    pub fn zero(ctx: &Arc<FieldContext>) -> Self {
        RealClass {
            coords: std::array::from_fn(|_| FieldElement::zero(ctx)),
        }
    }

    pub fn from_lattice(ctx: &Arc<FieldContext>, v: &LatticeVector) -> Self {
        RealClass {
            coords: std::array::from_fn(|i| FieldElement::from_bigint(ctx, &v.coords()[i])),
        }
    }

    pub fn context(&self) -> &Arc<FieldContext> {
        self.coords[0].context()
    }

    pub fn coords(&self) -> &[FieldElement; DIM] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        RealClass {
            coords: std::array::from_fn(|i| self.coords[i].add_ref(&other.coords[i])),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        RealClass {
            coords: std::array::from_fn(|i| self.coords[i].sub_ref(&other.coords[i])),
        }
    }

    pub fn neg(&self) -> Self {
        RealClass {
            coords: std::array::from_fn(|i| self.coords[i].neg_ref()),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        RealClass {
            coords: std::array::from_fn(|i| self.coords[i].mul_ref(c)),
        }
    }

    /// Pairing against another real class, via the same Gram matrix.
    pub fn pairing(&self, other: &Self) -> FieldElement {
        let a = &self.coords;
        let b = &other.coords;
        a[0].mul_ref(&b[5])
            .add_ref(&a[5].mul_ref(&b[0]))
            .sub_ref(&a[1].mul_ref(&b[4]))
            .sub_ref(&a[4].mul_ref(&b[1]))
            .add_ref(&a[2].mul_ref(&b[3]))
            .add_ref(&a[3].mul_ref(&b[2]))
    }

    /// Pairing against an integral class.
    pub fn pairing_int(&self, other: &LatticeVector) -> FieldElement {
        let a = &self.coords;
        let b = other.coords();
        a[0].mul_int(&b[5])
            .add_ref(&a[5].mul_int(&b[0]))
            .sub_ref(&a[1].mul_int(&b[4]))
            .sub_ref(&a[4].mul_int(&b[1]))
            .add_ref(&a[2].mul_int(&b[3]))
            .add_ref(&a[3].mul_int(&b[2]))
    }

    pub fn self_pairing(&self) -> FieldElement {
        self.pairing(self)
    }

    /// The vector `G u`, i.e. the coefficients of the functional
    /// `a -> <u, a>` in the coordinate basis.
    pub fn gram_apply(&self) -> [FieldElement; DIM] {
        let c = &self.coords;
        [
            c[5].clone(),
            c[4].neg_ref(),
            c[3].clone(),
            c[2].clone(),
            c[1].neg_ref(),
            c[0].clone(),
        ]
    }
}

/// A class on the blowup: `torus part + e_coeff * e` with `e^2 = -1` and `e`
/// orthogonal to the torus lattice.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BlowupClass {
    torus: RealClass,
    e_coeff: FieldElement,
}

impl BlowupClass {
    pub fn new(torus: RealClass, e_coeff: FieldElement) -> Self {
        assert!(
            torus.context() == e_coeff.context(),
            "blowup class parts from different contexts"
        );
        BlowupClass { torus, e_coeff }
    }

    pub fn from_lattice(ctx: &Arc<FieldContext>, v: &LatticeVector, e_coeff: i64) -> Self {
        BlowupClass {
            torus: RealClass::from_lattice(ctx, v),
            e_coeff: FieldElement::from_int(ctx, e_coeff),
        }
    }

    /// The exceptional class `e` itself.
    pub fn exceptional(ctx: &Arc<FieldContext>) -> Self {
        BlowupClass {
            torus: RealClass::zero(ctx),
            e_coeff: FieldElement::one(ctx),
        }
    }

    pub fn torus(&self) -> &RealClass {
        &self.torus
    }

    pub fn e_coeff(&self) -> &FieldElement {
        &self.e_coeff
    }

    /// Extended pairing `<(a,s),(b,t)> = <a,b> - s*t`.
    pub fn pairing(&self, other: &Self) -> FieldElement {
        self.torus
            .pairing(&other.torus)
            .sub_ref(&self.e_coeff.mul_ref(&other.e_coeff))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gram_matrix_pairings() {
        let v1 = LatticeVector::basis(0);
        let v6 = LatticeVector::basis(5);
        assert_eq!(v1.pairing(&v6), BigInt::from(1));
        assert_eq!(v1.pairing(&v1), BigInt::zero());
        // <(1,1,0,0,0,0),(0,0,0,0,1,1)> = 1*1 + 1*(-1) = 0
        let a = LatticeVector::from_i64([1, 1, 0, 0, 0, 0]);
        let b = LatticeVector::from_i64([0, 0, 0, 0, 1, 1]);
        assert_eq!(a.pairing(&b), BigInt::zero());
        // v2 pairs v5 with -1, v3 pairs v4 with +1
        assert_eq!(
            LatticeVector::basis(1).pairing(&LatticeVector::basis(4)),
            BigInt::from(-1)
        );
        assert_eq!(
            LatticeVector::basis(2).pairing(&LatticeVector::basis(3)),
            BigInt::from(1)
        );
    }

    #[test]
    fn lattice_is_even_signature_3_3() {
        assert_eq!(signature(), (3, 3));
        let v1 = LatticeVector::basis(0);
        let v6 = LatticeVector::basis(5);
        assert_eq!(signature_of_span(&[v1.clone(), v6]), (1, 1));
        assert_eq!(signature_of_span(&[v1]), (0, 0));
    }

    #[test]
    fn evenness_randomized() {
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..500 {
            let v = LatticeVector::from_i64(std::array::from_fn(|_| rng.gen_range(-50..=50)));
            assert!(v.self_pairing().is_even());
        }
    }

    #[test]
    fn indivisibility() {
        assert!(LatticeVector::from_i64([1, -1, 0, 0, 0, 0])
            .is_indivisible()
            .unwrap());
        assert!(!LatticeVector::from_i64([2, 0, 0, 0, 0, 0])
            .is_indivisible()
            .unwrap());
        assert!(LatticeVector::from_i64([-12, -13, 0, 0, 0, 0])
            .is_indivisible()
            .unwrap());
        assert!(matches!(
            LatticeVector::zero().is_indivisible(),
            Err(Error::ZeroVector)
        ));
    }

    #[test]
    fn blowup_pairing_expansion() {
        let ctx = FieldContext::new(&[2, 3, 5, 7]).unwrap();
        let e = BlowupClass::exceptional(&ctx);
        assert_eq!(e.pairing(&e), FieldElement::from_int(&ctx, -1));

        // <kappa - lambda e, delta - e> = <kappa, delta> - lambda
        let kappa = RealClass::new([
            FieldElement::one(&ctx),
            FieldElement::sqrt_of(&ctx, 2).unwrap(),
            FieldElement::sqrt_of(&ctx, 3).unwrap(),
            FieldElement::sqrt_of(&ctx, 5).unwrap(),
            FieldElement::sqrt_of(&ctx, 6).unwrap(),
            FieldElement::sqrt_of(&ctx, 7).unwrap(),
        ]);
        let lambda = FieldElement::from_int(&ctx, 2);
        let delta = LatticeVector::from_i64([1, 1, 0, 0, 0, 0]);
        let lhs = BlowupClass::new(kappa.clone(), lambda.neg_ref()).pairing(
            &BlowupClass::from_lattice(&ctx, &delta, -1),
        );
        let rhs = kappa.pairing_int(&delta).sub_ref(&lambda);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn real_pairing_matches_integer_pairing() {
        let ctx = FieldContext::rationals();
        let a = LatticeVector::from_i64([3, -2, 5, 0, 7, -1]);
        let b = LatticeVector::from_i64([1, 4, -6, 2, 0, 9]);
        let ra = RealClass::from_lattice(&ctx, &a);
        assert_eq!(
            ra.pairing_int(&b).as_rational().unwrap(),
            BigRational::from_integer(a.pairing(&b))
        );
    }
}
