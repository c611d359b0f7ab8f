//! Scratch probe for constrained polarized points (debugging aid).

use latcert_core::complex::ComplexFieldElement;
use latcert_core::cone::KappaProfile;
use latcert_core::lattice::{LatticeVector, RealClass};
use latcert_core::period;
use latcert_core::scalar::{FieldContext, FieldElement};

fn main() {
    let c = FieldContext::new(&[2, 3, 5, 7]).unwrap();
    let profile = KappaProfile::analyze(RealClass::new([
        FieldElement::one(&c),
        FieldElement::sqrt_of(&c, 2).unwrap(),
        FieldElement::sqrt_of(&c, 3).unwrap(),
        FieldElement::sqrt_of(&c, 5).unwrap(),
        FieldElement::sqrt_of(&c, 6).unwrap(),
        FieldElement::sqrt_of(&c, 7).unwrap(),
    ]));
    let delta0 = LatticeVector::from_i64([1, 1, 0, 0, 0, 0]);
    let z = |re: i64, im: i64| ComplexFieldElement::from_ints(&c, re, im);
    let s = |n: u64| FieldElement::sqrt_of(&c, n).unwrap();
    let zi = |x: FieldElement| ComplexFieldElement::new(FieldElement::zero(&c), x);
    let zr = |x: FieldElement| ComplexFieldElement::from_real(x);

    let candidates: Vec<(&str, [ComplexFieldElement; 4])> = vec![
        ("g1", [z(1, 0), z(0, 1), z(1, 1), z(1, -1)]),
        ("g2", [z(1, 0), z(0, 1), z(2, 1), z(1, -2)]),
        ("g3", [z(1, 1), z(0, 1), z(1, 0), z(2, -1)]),
        ("g4", [z(1, 0), z(2, 1), z(0, 1), z(1, 1)]),
        ("g5", [z(3, 0), z(0, 1), z(1, 2), z(2, -1)]),
        ("g6", [z(1, 0), z(0, 2), z(3, 1), z(1, -1)]),
        ("irr1", [zr(FieldElement::one(&c)), zi(s(2)), z(1, 1), zi(s(3))]),
        ("irr2", [zr(s(2)), z(0, 1), zr(s(3)), z(1, -1)]),
        (
            "irr3",
            [
                zr(FieldElement::one(&c)),
                zi(FieldElement::one(&c)),
                zr(s(2)).add_ref(&zi(s(3))),
                zr(s(5)).add_ref(&zi(s(7))),
            ],
        ),
        (
            "irr4",
            [
                zr(FieldElement::one(&c)),
                zi(s(7)),
                zr(s(3)).add_ref(&zi(s(2))),
                zr(s(6)).sub_ref(&zi(s(5))),
            ],
        ),
    ];

    let _ = candidates;
    // Systematic scan: gaussian-integer rho with entries in a small box.
    let mut pos = 0usize;
    let mut neg = 0usize;
    let mut wall = 0usize;
    let mut first_pos: Option<[i64; 8]> = None;
    let range: Vec<i64> = vec![-2, -1, 0, 1, 2];
    let mut count = 0usize;
    'outer: for a in &range {
        for b in &range {
            for cc in &range {
                for d in &range {
                    for e in &range {
                        for f in &range {
                            // fix two coords to cut the loop depth
                            let rho = [z(1, *a), z(*b, *cc), z(*d, *e), z(*f, 1)];
                            if rho.iter().all(|x| x.is_zero()) {
                                continue;
                            }
                            count += 1;
                            if count > 4000 {
                                break 'outer;
                            }
                            let Ok(basis) = period::polarized_nullspace(
                                &profile,
                                &rho,
                                std::slice::from_ref(&delta0),
                            ) else {
                                continue;
                            };
                            if basis.len() != 2 {
                                continue;
                            }
                            let h = period::positivity_form(&rho, &basis);
                            let s0 = h[0][0].re().sign();
                            let s1 = h[1][1].re().sign();
                            let s = s0.max(s1);
                            if s > 0 {
                                pos += 1;
                                if first_pos.is_none() {
                                    first_pos = Some([1, *a, *b, *cc, *d, *e, *f, 1]);
                                }
                            } else if s0 == 0 && s1 == 0 {
                                wall += 1;
                            } else {
                                neg += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    println!("scanned {count}: pos={pos} neg={neg} wall={wall}");
    println!("first positive rho (re/im pairs): {:?}", first_pos);
}
