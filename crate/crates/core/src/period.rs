//! Period matrices, Pluecker period points, polarized point construction,
//! and certified membership in the hyperplane-free locus.
//!
//! A period matrix is a 2x4 complex matrix whose columns span a lattice in
//! `C^2`; its six 2x2 column minors are the Pluecker coordinates of a point
//! on the quadric `<phi, phi> = 0`. The quadric condition is an identity of
//! minors, never a constraint to solve, which is why points are always
//! constructed through matrices. Positivity `<phi, conj phi> > 0` singles out
//! the component carrying honest complex structures; its sign is coupled to
//! the determinant of the real 4x4 form of the matrix (rows
//! `Re r1, Im r1, Re r2, Im r2`), a fact the test suite checks exactly.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use std::sync::Arc;

use crate::complex::ComplexFieldElement;
use crate::cone::KappaProfile;
use crate::enumerate::{self, DeltaClass};
use crate::error::{Error, Result};
use crate::interval;
use crate::lattice::{LatticeVector, RealClass, DIM};
use crate::linalg;
use crate::scalar::{FieldContext, FieldElement};

/// Pairing of complex 6-vectors through the fixed Gram matrix.
pub fn pairing_complex(
    a: &[ComplexFieldElement; DIM],
    b: &[ComplexFieldElement; DIM],
) -> ComplexFieldElement {
    a[0].mul_ref(&b[5])
        .add_ref(&a[5].mul_ref(&b[0]))
        .sub_ref(&a[1].mul_ref(&b[4]))
        .sub_ref(&a[4].mul_ref(&b[1]))
        .add_ref(&a[2].mul_ref(&b[3]))
        .add_ref(&a[3].mul_ref(&b[2]))
}

/// Pairing of a complex 6-vector against an integral class.
pub(crate) fn pairing_complex_int(
    a: &[ComplexFieldElement; DIM],
    b: &LatticeVector,
) -> ComplexFieldElement {
    let c = b.coords();
    a[0].mul_int(&c[5])
        .add_ref(&a[5].mul_int(&c[0]))
        .sub_ref(&a[1].mul_int(&c[4]))
        .sub_ref(&a[4].mul_int(&c[1]))
        .add_ref(&a[2].mul_int(&c[3]))
        .add_ref(&a[3].mul_int(&c[2]))
}

/// Pairing of a complex 6-vector against a real class.
pub(crate) fn pairing_complex_real(
    a: &[ComplexFieldElement; DIM],
    b: &RealClass,
) -> ComplexFieldElement {
    let c = b.coords();
    a[0].mul_real(&c[5])
        .add_ref(&a[5].mul_real(&c[0]))
        .sub_ref(&a[1].mul_real(&c[4]))
        .sub_ref(&a[4].mul_real(&c[1]))
        .add_ref(&a[2].mul_real(&c[3]))
        .add_ref(&a[3].mul_real(&c[2]))
}

/// Wedge of two complex 4-vectors: the six 2x2 minors in basis order.
pub fn wedge(
    r0: &[ComplexFieldElement; 4],
    r1: &[ComplexFieldElement; 4],
) -> [ComplexFieldElement; DIM] {
    let minor = |j: usize, k: usize| r0[j].mul_ref(&r1[k]).sub_ref(&r0[k].mul_ref(&r1[j]));
    [
        minor(0, 1),
        minor(0, 2),
        minor(0, 3),
        minor(1, 2),
        minor(1, 3),
        minor(2, 3),
    ]
}

/// A 2x4 complex matrix; columns are the images of the lattice basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PeriodMatrix {
    rows: [[ComplexFieldElement; 4]; 2],
}

impl PeriodMatrix {
    pub fn new(rows: [[ComplexFieldElement; 4]; 2]) -> Self {
        let ctx = rows[0][0].context();
        assert!(
            rows.iter().flatten().all(|e| e.context() == ctx),
            "period matrix entries from different contexts"
        );
        PeriodMatrix { rows }
    }

    pub fn rows(&self) -> &[[ComplexFieldElement; 4]; 2] {
        &self.rows
    }

    pub fn context(&self) -> &Arc<FieldContext> {
        self.rows[0][0].context()
    }

    /// Pluecker coordinates: the six column minors.
    pub fn wedge(&self) -> [ComplexFieldElement; DIM] {
        wedge(&self.rows[0], &self.rows[1])
    }

    /// The real 4x4 matrix with rows `Re r1, Im r1, Re r2, Im r2`; its
    /// determinant decides the lattice condition and the orientation.
    pub fn real_form_determinant(&self) -> FieldElement {
        let mut m: Vec<Vec<FieldElement>> = Vec::with_capacity(4);
        for row in &self.rows {
            m.push(row.iter().map(|e| e.re().clone()).collect());
            m.push(row.iter().map(|e| e.im().clone()).collect());
        }
        // Reorder to (Re r1, Im r1, Re r2, Im r2): rows were pushed as
        // (Re r1, Im r1, Re r2, Im r2) already.
        linalg::determinant(&m)
    }

    /// Lattice condition: the image of the basis spans `C^2` over `R`.
    pub fn is_lattice(&self) -> bool {
        self.real_form_determinant().sign() != 0
    }

    /// Conjugate the first row (an orientation-reversing repair that flips
    /// the sign of `<phi, conj phi>`).
    fn conjugate_first_row(&self) -> Self {
        let mut rows = self.rows.clone();
        for e in rows[0].iter_mut() {
            *e = e.conj();
        }
        PeriodMatrix { rows }
    }
}

/// A projective period point: on the quadric, with positive `<phi, conj phi>`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PeriodPoint {
    phi: [ComplexFieldElement; DIM],
}

impl PeriodPoint {
    /// Validate the defining conditions exactly.
    pub fn from_coords(phi: [ComplexFieldElement; DIM]) -> Result<Self> {
        let q = pairing_complex(&phi, &phi);
        if !q.is_zero() {
            return Err(Error::Json(
                "period point is not on the quadric: <phi,phi> != 0".into(),
            ));
        }
        let p = self_conj_pairing(&phi);
        if p.sign() <= 0 {
            return Err(Error::Json(
                "period point fails positivity: <phi, conj phi> <= 0".into(),
            ));
        }
        Ok(PeriodPoint { phi })
    }

    pub fn coords(&self) -> &[ComplexFieldElement; DIM] {
        &self.phi
    }

    pub fn context(&self) -> &Arc<FieldContext> {
        self.phi[0].context()
    }

    /// `<phi, delta>` for an integral class.
    pub fn pairing_int(&self, delta: &LatticeVector) -> ComplexFieldElement {
        pairing_complex_int(&self.phi, delta)
    }

    /// `<phi, u>` for a real class.
    pub fn pairing_real(&self, u: &RealClass) -> ComplexFieldElement {
        pairing_complex_real(&self.phi, u)
    }

    /// `<phi, conj phi>`, an exact real quantity; positive by construction.
    pub fn self_conj_pairing(&self) -> FieldElement {
        self_conj_pairing(&self.phi)
    }

    pub fn re_class(&self) -> RealClass {
        RealClass::new(std::array::from_fn(|i| self.phi[i].re().clone()))
    }

    pub fn im_class(&self) -> RealClass {
        RealClass::new(std::array::from_fn(|i| self.phi[i].im().clone()))
    }
}

fn self_conj_pairing(phi: &[ComplexFieldElement; DIM]) -> FieldElement {
    let conj: [ComplexFieldElement; DIM] = std::array::from_fn(|i| phi[i].conj());
    let p = pairing_complex(phi, &conj);
    assert!(
        p.im().is_zero(),
        "<phi, conj phi> must be real by symmetry of the pairing"
    );
    p.re().clone()
}

/// Pluecker point of a period matrix.
///
/// Degenerate rows (all minors zero) are rejected; a singular real form is a
/// failed lattice condition. A negative `<phi, conj phi>` is repaired by
/// conjugating one coordinate of `C^2` (the "other orientation"); the flag
/// reports whether the repair fired.
pub fn pluecker(m: &PeriodMatrix) -> Result<(PeriodPoint, bool)> {
    let phi = m.wedge();
    if phi.iter().all(|c| c.is_zero()) {
        return Err(Error::DegenerateRows);
    }
    // The quadric condition is the Pluecker identity; assert, don't solve.
    assert!(
        pairing_complex(&phi, &phi).is_zero(),
        "pluecker identity violated"
    );
    let p = self_conj_pairing(&phi);
    match p.sign() {
        0 => Err(Error::NotALattice),
        s if s > 0 => Ok((PeriodPoint { phi }, false)),
        _ => {
            let repaired = m.conjugate_first_row();
            let phi2 = repaired.wedge();
            let p2 = self_conj_pairing(&phi2);
            assert!(p2.sign() > 0, "orientation repair must flip positivity");
            Ok((PeriodPoint { phi: phi2 }, true))
        }
    }
}

/// Exact hyperplane membership: `<delta, phi> = 0`.
pub fn on_hyperplane(phi: &PeriodPoint, delta: &LatticeVector) -> bool {
    phi.pairing_int(delta).is_zero()
}

/// Deterministic stream of Gaussian-integer coefficient vectors, ordered by
/// max-norm shells and lexicographically inside each shell.
pub(crate) struct GaussianCombos {
    dim: usize,
    radius: i64,
    max_radius: i64,
    state: Vec<i64>,
    done_shell: bool,
}

impl GaussianCombos {
    pub(crate) fn new(dim: usize, max_radius: i64) -> Self {
        GaussianCombos {
            dim,
            radius: 1,
            max_radius,
            state: vec![-1; 2 * dim],
            done_shell: false,
        }
    }
}

impl Iterator for GaussianCombos {
    type Item = Vec<(i64, i64)>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            if self.radius > self.max_radius {
                return None;
            }
            if self.done_shell {
                self.radius += 1;
                if self.radius > self.max_radius {
                    return None;
                }
                self.state = vec![-self.radius; 2 * self.dim];
                self.done_shell = false;
            }
            let candidate: Vec<(i64, i64)> = (0..self.dim)
                .map(|i| (self.state[2 * i], self.state[2 * i + 1]))
                .collect();
            // Advance the odometer for next time.
            let mut i = self.state.len();
            loop {
                if i == 0 {
                    self.done_shell = true;
                    break;
                }
                i -= 1;
                if self.state[i] < self.radius {
                    self.state[i] += 1;
                    for x in self.state[i + 1..].iter_mut() {
                        *x = -self.radius;
                    }
                    break;
                }
            }
            // Emit only points on the current shell (not seen at smaller radius)
            // and not the zero vector.
            let norm = candidate
                .iter()
                .map(|&(a, b)| a.abs().max(b.abs()))
                .max()
                .unwrap_or(0);
            if norm == self.radius {
                return Some(candidate);
            }
        }
    }
}

/// Linear functional of the second row: coefficients `c_k = <w, rho ^ e_k>`
/// so that `<w, rho ^ sigma> = sum_k c_k sigma_k`.
fn row_functional_real(
    rho: &[ComplexFieldElement; 4],
    w: &RealClass,
    ctx: &Arc<FieldContext>,
) -> Vec<ComplexFieldElement> {
    (0..4)
        .map(|k| {
            let mut e: [ComplexFieldElement; 4] = std::array::from_fn(|_| {
                ComplexFieldElement::zero(ctx)
            });
            e[k] = ComplexFieldElement::one(ctx);
            pairing_complex_real(&wedge(rho, &e), w)
        })
        .collect()
}

fn row_functional_int(
    rho: &[ComplexFieldElement; 4],
    w: &LatticeVector,
    ctx: &Arc<FieldContext>,
) -> Vec<ComplexFieldElement> {
    (0..4)
        .map(|k| {
            let mut e: [ComplexFieldElement; 4] = std::array::from_fn(|_| {
                ComplexFieldElement::zero(ctx)
            });
            e[k] = ComplexFieldElement::one(ctx);
            pairing_complex_int(&wedge(rho, &e), w)
        })
        .collect()
}

/// Null-space basis of the linear conditions a polarized second row must
/// satisfy: `<kappa, rho ^ sigma> = 0` plus one condition per constraint.
pub fn polarized_nullspace(
    profile: &KappaProfile,
    rho: &[ComplexFieldElement; 4],
    constraints: &[LatticeVector],
) -> Result<Vec<[ComplexFieldElement; 4]>> {
    let ctx = profile.kappa().context();
    if rho.iter().all(|c| c.is_zero()) {
        return Err(Error::ZeroVector);
    }
    let mut rows: Vec<Vec<ComplexFieldElement>> = Vec::with_capacity(1 + constraints.len());
    rows.push(row_functional_real(rho, profile.kappa(), ctx));
    for delta in constraints {
        rows.push(row_functional_int(rho, delta, ctx));
    }
    let basis = linalg::null_space(&rows, 4);
    if basis.is_empty() {
        return Err(Error::TooManyConstraints);
    }
    Ok(basis
        .into_iter()
        .map(|v| std::array::from_fn(|i| v[i].clone()))
        .collect())
}

/// Assemble a second row from null-space coordinates.
pub(crate) fn combine_sigma(
    basis: &[[ComplexFieldElement; 4]],
    coeffs: &[ComplexFieldElement],
    ctx: &Arc<FieldContext>,
) -> [ComplexFieldElement; 4] {
    let mut sigma: [ComplexFieldElement; 4] =
        std::array::from_fn(|_| ComplexFieldElement::zero(ctx));
    for (b, scalar) in basis.iter().zip(coeffs) {
        if scalar.is_zero() {
            continue;
        }
        for (s, x) in sigma.iter_mut().zip(b.iter()) {
            *s = s.add_ref(&scalar.mul_ref(x));
        }
    }
    sigma
}

/// The Hermitian positivity form on a null-space basis:
/// `H[j][k] = < rho ^ n_j, conj(rho ^ n_k) >`, so that a second row
/// `sigma = sum c_j n_j` yields `<phi, conj phi> = c^H H c`.
pub fn positivity_form(
    rho: &[ComplexFieldElement; 4],
    basis: &[[ComplexFieldElement; 4]],
) -> Vec<Vec<ComplexFieldElement>> {
    let wedges: Vec<[ComplexFieldElement; DIM]> =
        basis.iter().map(|n| wedge(rho, n)).collect();
    let n = basis.len();
    (0..n)
        .map(|j| {
            (0..n)
                .map(|k| {
                    let conj_k: [ComplexFieldElement; DIM] =
                        std::array::from_fn(|i| wedges[k][i].conj());
                    pairing_complex(&wedges[j], &conj_k)
                })
                .collect()
        })
        .collect()
}

/// Search for `c` with `c^H H c > 0`, exactly.
///
/// Returns `None` when `H` is negative semidefinite (no such vector exists),
/// which is decided by the principal-minor criterion for `-H`. Otherwise a
/// violating principal block yields a positive vector: a diagonal entry
/// directly, an indefinite 2x2 block through an exact one-parameter
/// maximization, and larger blocks through a float hint that is always
/// verified exactly before use.
pub(crate) fn hermitian_positive_vector(
    h: &[Vec<ComplexFieldElement>],
) -> Option<Vec<ComplexFieldElement>> {
    let n = h.len();
    let ctx = h[0][0].context().clone();
    let real_part = |z: &ComplexFieldElement| -> FieldElement {
        debug_assert!(z.im().is_zero(), "hermitian minors must be real");
        z.re().clone()
    };
    // Scan principal subsets by size; stop at the first violation of
    // negative semidefiniteness: (-1)^{|S|} det(H_S) < 0.
    let mut violation: Option<Vec<usize>> = None;
    'outer: for size in 1..=n {
        for subset in subsets_of_size(n, size) {
            let block: Vec<Vec<ComplexFieldElement>> = subset
                .iter()
                .map(|&r| subset.iter().map(|&c| h[r][c].clone()).collect())
                .collect();
            let det = real_part(&linalg::determinant(&block));
            let sign = det.sign();
            let nsd_ok = if size % 2 == 0 { sign >= 0 } else { sign <= 0 };
            if !nsd_ok {
                violation = Some(subset);
                break 'outer;
            }
        }
    }
    let subset = violation?;
    let mut coeffs = vec![ComplexFieldElement::zero(&ctx); n];
    match subset.len() {
        1 => {
            coeffs[subset[0]] = ComplexFieldElement::one(&ctx);
            Some(coeffs)
        }
        2 => {
            let (i, j) = (subset[0], subset[1]);
            // All diagonal entries are <= 0 here (size-1 subsets passed), and
            // det < 0, so N = |H_ji|^2 > 0. With c_i = 1, c_j = s conj(H_ji)
            // for a real rational s:
            // Q(s) = H_ii + 2 s N + s^2 N H_jj, whose maximum is positive.
            let h_ii = real_part(&h[i][i]);
            let h_jj = real_part(&h[j][j]);
            let n_val = h[j][i].norm_sq();
            assert!(n_val.sign() > 0, "indefinite block needs a mixed term");
            let s_opt = if h_jj.sign() < 0 {
                // s* = -1 / H_jj
                h_jj.inv().expect("nonzero").neg_ref()
            } else {
                // H_jj = 0: Q is affine increasing in s; overshoot suffices.
                h_ii.div_ref(&n_val)
                    .expect("mixed term positive")
                    .neg_ref()
                    .add_ref(&FieldElement::one(&ctx))
            };
            // Rational s near the maximizer, refined until exactly positive.
            let mut bits = 32u32;
            for _ in 0..64 {
                let s = s_opt.to_interval(bits).midpoint();
                let s_f = FieldElement::from_rational(&ctx, s.clone());
                let q = h_ii
                    .add_ref(&n_val.mul_ref(&s_f).mul_int(&BigInt::from(2)))
                    .add_ref(&n_val.mul_ref(&h_jj).mul_ref(&s_f.square()));
                if q.sign() > 0 {
                    coeffs[i] = ComplexFieldElement::one(&ctx);
                    coeffs[j] = h[j][i].conj().mul_real(&s_f);
                    debug_assert!(hermitian_value(h, &coeffs).sign() > 0);
                    return Some(coeffs);
                }
                bits *= 2;
            }
            panic!("exact 2x2 positivity construction failed to converge");
        }
        _ => {
            // Larger violating block: float eigenvector hint, exact check.
            for round in 0..8u32 {
                if let Some(c) = float_positive_hint(h, &subset, round) {
                    return Some(c);
                }
            }
            panic!("float positivity hint failed on an exactly indefinite block");
        }
    }
}

fn subsets_of_size(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut stack = vec![(Vec::new(), 0usize)];
    while let Some((cur, next)) = stack.pop() {
        if cur.len() == size {
            out.push(cur);
            continue;
        }
        for i in next..n {
            let mut with = cur.clone();
            with.push(i);
            stack.push((with, i + 1));
        }
    }
    out.sort();
    out
}

/// Power-iteration hint for a positive direction of a Hermitian block, in
/// f64; the caller always re-checks positivity exactly.
fn float_positive_hint(
    h: &[Vec<ComplexFieldElement>],
    subset: &[usize],
    round: u32,
) -> Option<Vec<ComplexFieldElement>> {
    use num_rational::BigRational;
    let m = subset.len();
    let approx = |x: &FieldElement| -> f64 {
        let iv = x.to_interval(64);
        num_traits::ToPrimitive::to_f64(&iv.midpoint()).unwrap_or(0.0)
    };
    let hb: Vec<Vec<(f64, f64)>> = subset
        .iter()
        .map(|&r| {
            subset
                .iter()
                .map(|&c| (approx(h[r][c].re()), approx(h[r][c].im())))
                .collect()
        })
        .collect();
    // Shift to make the most positive eigenvalue dominant in magnitude.
    let shift = 1.0
        + hb.iter()
            .flatten()
            .map(|&(a, b)| a.abs() + b.abs())
            .fold(0.0f64, f64::max)
            * m as f64;
    let mut v: Vec<(f64, f64)> = (0..m).map(|i| (1.0 + i as f64 * 0.25, 0.1)).collect();
    let iters = 60 << round;
    for _ in 0..iters {
        let mut w: Vec<(f64, f64)> = vec![(0.0, 0.0); m];
        for r in 0..m {
            let mut acc = (shift * v[r].0, shift * v[r].1);
            for c in 0..m {
                let (hr, hi) = hb[r][c];
                let (vr, vi) = v[c];
                acc.0 += hr * vr - hi * vi;
                acc.1 += hr * vi + hi * vr;
            }
            w[r] = acc;
        }
        let norm = w.iter().map(|&(a, b)| a * a + b * b).sum::<f64>().sqrt();
        if !norm.is_finite() || norm == 0.0 {
            return None;
        }
        v = w.into_iter().map(|(a, b)| (a / norm, b / norm)).collect();
    }
    // Rationalize with dyadic denominators and verify exactly.
    let ctx = h[0][0].context();
    let denom = 1i64 << (12 + 2 * round).min(40);
    let to_rat = |x: f64| BigRational::new(((x * denom as f64) as i64).into(), denom.into());
    let n = h.len();
    let mut coeffs = vec![ComplexFieldElement::zero(ctx); n];
    for (slot, &idx) in subset.iter().enumerate() {
        coeffs[idx] =
            ComplexFieldElement::from_rationals(ctx, to_rat(v[slot].0), to_rat(v[slot].1));
    }
    if hermitian_value(h, &coeffs).sign() > 0 {
        Some(coeffs)
    } else {
        None
    }
}

/// Exact evaluation of `c^H H c` (a real quantity).
pub(crate) fn hermitian_value(
    h: &[Vec<ComplexFieldElement>],
    coeffs: &[ComplexFieldElement],
) -> FieldElement {
    let ctx = h[0][0].context();
    let n = h.len();
    let mut acc = ComplexFieldElement::zero(ctx);
    for j in 0..n {
        for k in 0..n {
            acc = acc.add_ref(&coeffs[j].mul_ref(&coeffs[k].conj()).mul_ref(&h[j][k]));
        }
    }
    assert!(acc.im().is_zero(), "hermitian value must be real");
    acc.re().clone()
}

/// Construct a period matrix whose Pluecker point is polarized
/// (`<kappa, phi> = 0`) and lies on every requested hyperplane.
///
/// The second row is found in the exact solution space of the linear
/// conditions. Positivity is decided exactly on that space through its
/// Hermitian form: if the form is negative semidefinite the request is
/// reported as unachievable, otherwise an explicitly positive combination is
/// constructed and verified.
pub fn polarized_period(
    profile: &KappaProfile,
    rho: &[ComplexFieldElement; 4],
    constraints: &[LatticeVector],
) -> Result<PeriodMatrix> {
    let ctx = profile.kappa().context();
    let basis = polarized_nullspace(profile, rho, constraints)?;
    let h = positivity_form(rho, &basis);
    let Some(coeffs) = hermitian_positive_vector(&h) else {
        return Err(Error::PositivityUnachievable(basis.len()));
    };
    let sigma = combine_sigma(&basis, &coeffs, ctx);
    let m = PeriodMatrix::new([rho.clone(), sigma]);
    let phi = m.wedge();
    assert!(
        self_conj_pairing(&phi).sign() > 0,
        "constructed second row must satisfy positivity"
    );
    // Exact verification of every requested condition.
    let point = PeriodPoint { phi };
    assert!(point.pairing_real(profile.kappa()).is_zero());
    for delta in constraints {
        assert!(on_hyperplane(&point, delta));
    }
    Ok(m)
}

/// Deterministic first-row candidates with spread-out coordinates, used when
/// the caller does not pin a first row. Rows with zero coordinates can make
/// a hyperplane constraint degenerate (the whole solution space may sit on
/// the positivity wall), so these avoid zeros and repeat no pattern.
pub fn default_rho_candidates(ctx: &Arc<FieldContext>) -> Vec<[ComplexFieldElement; 4]> {
    let z = |re: i64, im: i64| ComplexFieldElement::from_ints(ctx, re, im);
    vec![
        [z(1, 0), z(0, 1), z(1, 1), z(1, -1)],
        [z(1, 0), z(0, 1), z(2, 1), z(1, -2)],
        [z(1, 0), z(0, 2), z(1, 1), z(3, -1)],
        [z(1, 1), z(0, 1), z(1, 0), z(2, -1)],
        [z(1, 0), z(1, 2), z(2, -1), z(0, 1)],
        [z(2, 0), z(0, 1), z(1, 3), z(1, -1)],
        [z(1, 0), z(0, 3), z(2, 1), z(1, -1)],
        [z(1, 2), z(2, 1), z(1, -1), z(0, 1)],
    ]
}

/// Try [`polarized_period`] over the default first-row candidates.
pub fn polarized_period_auto(
    profile: &KappaProfile,
    constraints: &[LatticeVector],
) -> Result<PeriodMatrix> {
    let mut last = Error::PositivityUnachievable(0);
    for rho in default_rho_candidates(profile.kappa().context()) {
        match polarized_period(profile, &rho, constraints) {
            Ok(m) => return Ok(m),
            Err(e) => last = e,
        }
    }
    Err(last)
}

/// Verdict of a membership certification.
#[derive(Clone, Debug)]
pub enum Verdict {
    /// No qualifying class pairs to zero with the point.
    InDLambda,
    /// An explicit qualifying class with `<phi, delta> = 0`.
    Violated(DeltaClass),
}

/// Certified membership of a polarized point in the hyperplane-free locus.
#[derive(Clone, Debug)]
pub struct MembershipCertificate {
    point: PeriodPoint,
    lambda: FieldElement,
    bound: FieldElement,
    checked: usize,
    verdict: Verdict,
}

impl MembershipCertificate {
    pub fn point(&self) -> &PeriodPoint {
        &self.point
    }

    pub fn lambda(&self) -> &FieldElement {
        &self.lambda
    }

    pub fn bound(&self) -> &FieldElement {
        &self.bound
    }

    pub fn checked(&self) -> usize {
        self.checked
    }

    pub fn verdict(&self) -> &Verdict {
        &self.verdict
    }

    pub fn is_member(&self) -> bool {
        matches!(self.verdict, Verdict::InDLambda)
    }

    /// Replay the certification from the stored exact data.
    pub fn verify(&self, profile: &KappaProfile, jobs: usize) -> Result<()> {
        let fresh = certify_in_d_lambda(&self.point, profile, &self.lambda, jobs)?;
        if fresh.checked != self.checked {
            return Err(Error::Json(format!(
                "stored candidate count {} does not match replay {}",
                self.checked, fresh.checked
            )));
        }
        match (&self.verdict, &fresh.verdict) {
            (Verdict::InDLambda, Verdict::InDLambda) => Ok(()),
            (Verdict::Violated(a), Verdict::Violated(b)) if a.delta() == b.delta() => Ok(()),
            _ => Err(Error::Json("stored verdict does not match replay".into())),
        }
    }
}

/// Decide membership of a polarized point: enumerate every qualifying class
/// inside the finiteness ellipsoid of the point and test each hyperplane
/// exactly. Sound and complete: a qualifying class pairing to zero with the
/// point satisfies the ellipsoid bound with slack zero.
pub fn certify_in_d_lambda(
    phi: &PeriodPoint,
    profile: &KappaProfile,
    lambda: &FieldElement,
    jobs: usize,
) -> Result<MembershipCertificate> {
    if !phi.pairing_real(profile.kappa()).is_zero() {
        return Err(Error::NotPolarized);
    }
    let x1 = phi.re_class();
    let x2 = phi.im_class();
    let zero = FieldElement::zero(phi.context());
    let form = enumerate::finiteness_radius(profile, &x1, &x2, lambda, &zero)?;
    let candidates = enumerate::enumerate_delta_in_ellipsoid(&form, profile, lambda, jobs)?;
    let checked = candidates.len();
    let mut verdict = Verdict::InDLambda;
    for c in candidates {
        if on_hyperplane(phi, c.delta()) {
            verdict = Verdict::Violated(c);
            break;
        }
    }
    Ok(MembershipCertificate {
        point: phi.clone(),
        lambda: lambda.clone(),
        bound: form.bound().clone(),
        checked,
        verdict,
    })
}

/// Lexicographically first nonzero integral class `a` with `|a|_sup <= radius`
/// and `<phi, a> = 0`, if any.
pub fn orthogonal_class_in_box(
    phi: &PeriodPoint,
    radius: u32,
    jobs: usize,
) -> Result<Option<LatticeVector>> {
    if radius > enumerate::MAX_BOX_RADIUS {
        return Err(Error::BoxTooLarge(radius));
    }
    let b = radius as i64;
    if b == 0 {
        return Ok(None);
    }
    let ctx = phi.context();
    let functionals: [ComplexFieldElement; DIM] = {
        let mut out: [ComplexFieldElement; DIM] =
            std::array::from_fn(|_| ComplexFieldElement::zero(ctx));
        // (G phi)_i as complex functionals: <phi, a> = sum_i a_i (G phi)_i.
        let re = phi.re_class().gram_apply();
        let im = phi.im_class().gram_apply();
        for i in 0..DIM {
            out[i] = ComplexFieldElement::new(re[i].clone(), im[i].clone());
        }
        out
    };
    let re_screen = ZeroScreen::new(std::array::from_fn(|i| functionals[i].re().clone()));
    let im_screen = ZeroScreen::new(std::array::from_fn(|i| functionals[i].im().clone()));
    let work: Vec<i64> = (-b..=b).collect();
    let hits = enumerate::run_parallel(work, jobs, |a1| {
        let mut out = Vec::new();
        for a2 in -b..=b {
            for a3 in -b..=b {
                for a4 in -b..=b {
                    for a5 in -b..=b {
                        for a6 in -b..=b {
                            let coords = [a1, a2, a3, a4, a5, a6];
                            if coords.iter().all(|&x| x == 0) {
                                continue;
                            }
                            if !re_screen.may_vanish(&coords) || !im_screen.may_vanish(&coords) {
                                continue;
                            }
                            let v = LatticeVector::from_i64(coords);
                            if phi.pairing_int(&v).is_zero() {
                                out.push(v);
                                return out; // first hit in this slice suffices
                            }
                        }
                    }
                }
            }
        }
        out
    });
    Ok(hits.into_iter().next())
}

/// Partial genericity certificate: no nonzero integral class up to the given
/// sup-norm radius pairs to zero with the point. Full genericity quantifies
/// over the whole lattice and is not decidable by a finite scan.
pub fn genericity_up_to_radius(phi: &PeriodPoint, radius: u32, jobs: usize) -> Result<bool> {
    Ok(orthogonal_class_in_box(phi, radius, jobs)?.is_none())
}

/// Sound vanishing filter: fixed-point enclosure of one real linear
/// functional; a candidate whose enclosure excludes zero cannot vanish.
struct ZeroScreen {
    lo: [i128; DIM],
    hi: [i128; DIM],
}

impl ZeroScreen {
    fn new(functionals: [FieldElement; DIM]) -> Self {
        let mut lo = [0i128; DIM];
        let mut hi = [0i128; DIM];
        for i in 0..DIM {
            let iv = functionals[i].to_interval(64);
            lo[i] = screen_floor(&iv.lo);
            hi[i] = screen_ceil(&iv.hi);
        }
        ZeroScreen { lo, hi }
    }

    fn may_vanish(&self, coords: &[i64; DIM]) -> bool {
        let mut lo = 0i128;
        let mut hi = 0i128;
        for i in 0..DIM {
            let c = coords[i] as i128;
            if c == 0 {
                continue;
            }
            let a = c * self.lo[i];
            let b = c * self.hi[i];
            if a <= b {
                lo += a;
                hi += b;
            } else {
                lo += b;
                hi += a;
            }
        }
        lo <= 0 && hi >= 0
    }
}

const SCREEN_SHIFT: u32 = 48;
const SCREEN_CLAMP: i128 = 1 << 96;

fn screen_floor(x: &num_rational::BigRational) -> i128 {
    let scaled = (x * num_rational::BigRational::from_integer(BigInt::from(1u64) << SCREEN_SHIFT))
        .floor()
        .to_integer();
    scaled
        .to_i128()
        .unwrap_or(i128::MIN)
        .clamp(-SCREEN_CLAMP, SCREEN_CLAMP)
}

fn screen_ceil(x: &num_rational::BigRational) -> i128 {
    let scaled = (x * num_rational::BigRational::from_integer(BigInt::from(1u64) << SCREEN_SHIFT))
        .ceil()
        .to_integer();
    scaled
        .to_i128()
        .unwrap_or(i128::MAX)
        .clamp(-SCREEN_CLAMP, SCREEN_CLAMP)
}

/// Decimal digits used when intervals back exact data in reports.
pub const REPORT_DIGITS: u32 = 12;

/// Convenience: outward decimal strings for an exact value.
pub fn report_interval(x: &FieldElement) -> (String, String) {
    let iv = x.to_interval(96);
    (
        interval::decimal_floor(&iv.lo, REPORT_DIGITS),
        interval::decimal_ceil(&iv.hi, REPORT_DIGITS),
    )
}
