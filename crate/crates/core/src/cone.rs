//! Analysis of the real class `kappa`: non-resonance certification, the
//! blowup admissibility bound for `lambda`, and the deflation threshold.
//!
//! Non-resonance quantifies over every nonzero integral class, so it cannot
//! be decided numerically. Instead the six pairing functionals `(G kappa)_i`
//! are stacked as rational coefficient vectors over the field basis; full
//! rank makes any integral relation impossible, and a rank defect yields an
//! explicit integral witness by clearing denominators on a kernel vector.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{LatticeVector, RealClass, DIM};
use crate::linalg;
use crate::scalar::FieldElement;

/// Outcome of the non-resonance test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Nonresonance {
    /// The six pairing functionals have full rational rank: `<kappa, a> != 0`
    /// for every nonzero integral `a`.
    Rank6,
    /// An explicit nonzero integral class with `<kappa, a> = 0`.
    Witness(LatticeVector),
}

/// `kappa` together with its certified resonance status and square.
#[derive(Clone, Debug)]
pub struct KappaProfile {
    kappa: RealClass,
    kappa_sq: FieldElement,
    certificate: Nonresonance,
}

impl KappaProfile {
    /// Analyze a real class; never fails, the certificate records the outcome.
    pub fn analyze(kappa: RealClass) -> Self {
        let certificate = certify_nonresonant(&kappa);
        let kappa_sq = kappa.self_pairing();
        KappaProfile {
            kappa,
            kappa_sq,
            certificate,
        }
    }

    pub fn kappa(&self) -> &RealClass {
        &self.kappa
    }

    pub fn kappa_sq(&self) -> &FieldElement {
        &self.kappa_sq
    }

    pub fn certificate(&self) -> &Nonresonance {
        &self.certificate
    }

    pub fn is_nonresonant(&self) -> bool {
        matches!(self.certificate, Nonresonance::Rank6)
    }

    pub fn require_nonresonant(&self) -> Result<()> {
        if self.is_nonresonant() {
            Ok(())
        } else {
            Err(Error::ResonantKappa)
        }
    }

    /// Exact pairing `<kappa, delta>`.
    pub fn pairing(&self, delta: &LatticeVector) -> FieldElement {
        self.kappa.pairing_int(delta)
    }
}

/// Decide non-resonance by exact rational rank of the coefficient matrix.
pub fn certify_nonresonant(kappa: &RealClass) -> Nonresonance {
    // The six functionals (G kappa)_i with <kappa, a> = sum a_i (G kappa)_i.
    let functionals = kappa.gram_apply();
    let rows: Vec<Vec<BigRational>> = functionals
        .iter()
        .map(|f| f.coeffs().to_vec())
        .collect();
    let (rank, kernel) = linalg::rank_with_left_kernel(&rows);
    if rank == DIM {
        return Nonresonance::Rank6;
    }
    let y = kernel.expect("rank defect must come with a kernel vector");
    // Clear denominators and strip the content to get a primitive witness.
    let lcm = y
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: Vec<BigInt> = y
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !content.is_zero() && !content.is_one() {
        for v in ints.iter_mut() {
            *v /= &content;
        }
    }
    let witness = LatticeVector::new(std::array::from_fn(|i| ints[i].clone()));
    debug_assert_eq!(kappa.pairing_int(&witness).sign(), 0);
    Nonresonance::Witness(witness)
}

/// `true` iff `0 < lambda` and `lambda^2 < <kappa, kappa>`, decided by exact
/// sign calls; no square roots are ever taken.
pub fn lambda_admissible(kappa: &RealClass, lambda: &FieldElement) -> bool {
    if lambda.sign() <= 0 {
        return false;
    }
    let gap = kappa.self_pairing().sub_ref(&lambda.square());
    gap.sign() > 0
}

/// Deflation threshold `mu_min = lambda - <kappa, delta>/2`: every
/// `mu in [mu_min, lambda)` satisfies `<2e - delta, kappa - (lambda - mu) e> <= 0`,
/// by the expansion `<2e - delta, kappa - (lambda - mu) e> = 2(lambda - mu) - <kappa, delta>`.
pub fn mu_threshold(
    kappa: &RealClass,
    delta: &LatticeVector,
    lambda: &FieldElement,
) -> FieldElement {
    let pairing = kappa.pairing_int(delta);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    lambda.sub_ref(&pairing.scale(&half))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::BlowupClass;
    use crate::scalar::FieldContext;
    use std::sync::Arc;

    pub(crate) fn kappa_star(ctx: &Arc<FieldContext>) -> RealClass {
        RealClass::new([
            FieldElement::one(ctx),
            FieldElement::sqrt_of(ctx, 2).unwrap(),
            FieldElement::sqrt_of(ctx, 3).unwrap(),
            FieldElement::sqrt_of(ctx, 5).unwrap(),
            FieldElement::sqrt_of(ctx, 6).unwrap(),
            FieldElement::sqrt_of(ctx, 7).unwrap(),
        ])
    }

    fn ctx() -> Arc<FieldContext> {
        FieldContext::new(&[2, 3, 5, 7]).unwrap()
    }

    #[test]
    fn kappa_star_is_nonresonant() {
        let c = ctx();
        let profile = KappaProfile::analyze(kappa_star(&c));
        assert!(profile.is_nonresonant());
        assert_eq!(profile.kappa_sq().sign(), 1);
    }

    #[test]
    fn repeated_rational_coordinate_is_resonant() {
        let c = ctx();
        // kappa = (1, 1, sqrt2, sqrt3, sqrt5, sqrt6): expected witness
        // a = (0,0,0,0,1,1) with <kappa, a> = -1 + 1 = 0.
        let kappa = RealClass::new([
            FieldElement::one(&c),
            FieldElement::one(&c),
            FieldElement::sqrt_of(&c, 2).unwrap(),
            FieldElement::sqrt_of(&c, 3).unwrap(),
            FieldElement::sqrt_of(&c, 5).unwrap(),
            FieldElement::sqrt_of(&c, 6).unwrap(),
        ]);
        match certify_nonresonant(&kappa) {
            Nonresonance::Witness(a) => {
                assert!(!a.is_zero());
                assert_eq!(kappa.pairing_int(&a).sign(), 0);
            }
            Nonresonance::Rank6 => panic!("resonant class certified as non-resonant"),
        }
    }

    #[test]
    fn rational_kappa_is_always_resonant() {
        let c = ctx();
        let kappa = RealClass::new(std::array::from_fn(|i| {
            FieldElement::from_int(&c, (i as i64) + 1)
        }));
        assert!(matches!(
            certify_nonresonant(&kappa),
            Nonresonance::Witness(_)
        ));
    }

    #[test]
    fn rank6_soundness_randomized() {
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;
        let c = ctx();
        let kappa = kappa_star(&c);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..2000 {
            let a = LatticeVector::from_i64(std::array::from_fn(|_| rng.gen_range(-100..=100)));
            if a.is_zero() {
                continue;
            }
            assert_ne!(kappa.pairing_int(&a).sign(), 0);
        }
    }

    #[test]
    fn lambda_admissibility() {
        let c = ctx();
        let kappa = kappa_star(&c);
        // <kappa*, kappa*> = 2(sqrt7 - sqrt12 + sqrt15) ~ 6.109
        assert!(lambda_admissible(&kappa, &FieldElement::from_int(&c, 2)));
        assert!(!lambda_admissible(&kappa, &FieldElement::from_int(&c, 3)));
        assert!(!lambda_admissible(&kappa, &FieldElement::zero(&c)));
        // monotone in lambda: admissible at 2 implies admissible below
        for num in 1..8 {
            let l = FieldElement::from_rational(
                &c,
                BigRational::new(BigInt::from(num), BigInt::from(4)),
            );
            assert!(lambda_admissible(&kappa, &l));
        }
    }

    #[test]
    fn mu_threshold_boundary_cases() {
        let c = ctx();
        let kappa = kappa_star(&c);
        let lambda = FieldElement::from_int(&c, 2);
        let delta = LatticeVector::from_i64([1, 1, 0, 0, 0, 0]);
        // <kappa*, delta> = sqrt7 - sqrt6
        let pairing = kappa.pairing_int(&delta);
        assert_eq!(
            pairing,
            FieldElement::sqrt_of(&c, 7)
                .unwrap()
                .sub_ref(&FieldElement::sqrt_of(&c, 6).unwrap())
        );
        let mu_min = mu_threshold(&kappa, &delta, &lambda);

        // At mu = mu_min the blowup pairing vanishes exactly.
        let check = |mu: &FieldElement| {
            let two_e_minus_delta = BlowupClass::new(
                RealClass::from_lattice(&c, &delta).neg(),
                FieldElement::from_int(&c, 2),
            );
            let form = BlowupClass::new(kappa.clone(), lambda.sub_ref(mu).neg_ref());
            two_e_minus_delta.pairing(&form)
        };
        assert_eq!(check(&mu_min).sign(), 0);
        // Strictly negative for mu_min < mu < lambda.
        let mid = mu_min.add_ref(&lambda).scale(&BigRational::new(
            BigInt::one(),
            BigInt::from(2),
        ));
        assert_eq!(check(&mid).sign(), -1);

        // <kappa, delta> = lambda gives mu_min = lambda / 2.
        let mu = mu_threshold(&kappa, &delta, &pairing);
        assert_eq!(
            mu,
            pairing.scale(&BigRational::new(BigInt::one(), BigInt::from(2)))
        );
    }
}
