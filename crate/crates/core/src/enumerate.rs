//! Production and complete enumeration of the classes `delta` with
//! `<delta, delta> = 0`, `delta` indivisible, and `0 < <kappa, delta> <= lambda`.
//!
//! Two independent routes exist on purpose and are cross-checked in tests:
//!
//! * the *pump* walks continued-fraction convergents of a ratio of pairings
//!   inside the fixed totally isotropic plane `span(v1, v2)`, producing
//!   arbitrarily many classes with strictly decreasing pairings;
//! * the *ellipsoid enumeration* turns the signature obstruction into a
//!   positive-definite majorant form and lists every qualifying class inside
//!   a certified bound, with a brute-force box scan as the oracle.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cone::KappaProfile;
use crate::error::{Error, Result};
use crate::interval::{self, RatInterval};
use crate::lattice::{LatticeVector, RealClass, DIM, GRAM};
use crate::linalg;
use crate::scalar::FieldElement;
use crate::skew::{frobenius_normal_form, AlternatingForm};

/// Desk-scale cap for box scans: `(2*12+1)^6 ~ 2.4e8` candidates, prunable.
pub const MAX_BOX_RADIUS: u32 = 12;

const CF_ITERATION_CAP: usize = 20_000;

/// An element of the qualifying set with its cached certificates.
#[derive(Clone, Debug)]
pub struct DeltaClass {
    delta: LatticeVector,
    pairing: FieldElement,
    pairing_interval: RatInterval,
    d1: BigInt,
    d2: BigInt,
}

impl PartialEq for DeltaClass {
    fn eq(&self, other: &Self) -> bool {
        self.delta == other.delta
    }
}
impl Eq for DeltaClass {}

impl DeltaClass {
    /// Check every membership condition exactly and cache the certificates.
    pub fn certify(
        delta: LatticeVector,
        profile: &KappaProfile,
        lambda: &FieldElement,
    ) -> Result<Self> {
        if delta.is_zero() {
            return Err(Error::ZeroVector);
        }
        let sp = delta.self_pairing();
        if !sp.is_zero() {
            return Err(Error::NotIsotropic(sp.to_string()));
        }
        let content = delta.content();
        if !content.is_one() {
            return Err(Error::NotIndivisible(content.to_string()));
        }
        let pairing = profile.pairing(&delta);
        if pairing.sign() <= 0 {
            return Err(Error::PairingOutOfRange(pairing.to_string()));
        }
        if lambda.sub_ref(&pairing).sign() < 0 {
            return Err(Error::PairingOutOfRange(pairing.to_string()));
        }
        let f = frobenius_normal_form(&AlternatingForm::from_lattice_vector(&delta));
        // Indivisible isotropic classes always reduce to (1, 0).
        assert!(
            f.d1.is_one() && f.d2.is_zero(),
            "frobenius invariants of a certified class must be (1, 0)"
        );
        let pairing_interval = pairing.to_interval(64);
        Ok(DeltaClass {
            delta,
            pairing,
            pairing_interval,
            d1: f.d1,
            d2: f.d2,
        })
    }

    pub fn delta(&self) -> &LatticeVector {
        &self.delta
    }

    pub fn pairing(&self) -> &FieldElement {
        &self.pairing
    }

    pub fn pairing_interval(&self) -> &RatInterval {
        &self.pairing_interval
    }

    pub fn d1(&self) -> &BigInt {
        &self.d1
    }

    pub fn d2(&self) -> &BigInt {
        &self.d2
    }

    /// Replay every invariant from scratch.
    pub fn re_verify(&self, profile: &KappaProfile, lambda: &FieldElement) -> Result<()> {
        let fresh = DeltaClass::certify(self.delta.clone(), profile, lambda)?;
        if fresh.pairing != self.pairing {
            return Err(Error::Json("stored pairing does not match".into()));
        }
        Ok(())
    }
}

fn sort_classes(mut v: Vec<DeltaClass>) -> Vec<DeltaClass> {
    v.sort_by(|a, b| a.delta.cmp(&b.delta));
    v
}

/// Split `work` into at most `jobs` contiguous chunks and run them on scoped
/// threads; results are concatenated in chunk order, so output is
/// independent of the degree of parallelism.
pub(crate) fn run_parallel<T, R, F>(work: Vec<T>, jobs: usize, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> Vec<R> + Sync,
{
    let jobs = jobs.max(1).min(work.len().max(1));
    if jobs <= 1 {
        return work.into_iter().flat_map(&f).collect();
    }
    let chunk_size = work.len().div_ceil(jobs);
    let mut chunks: Vec<Vec<T>> = Vec::new();
    let mut it = work.into_iter();
    loop {
        let chunk: Vec<T> = it.by_ref().take(chunk_size).collect();
        if chunk.is_empty() {
            break;
        }
        chunks.push(chunk);
    }
    let outs: Vec<Vec<R>> = std::thread::scope(|s| {
        let handles: Vec<_> = chunks
            .into_iter()
            .map(|c| s.spawn(|| c.into_iter().flat_map(&f).collect::<Vec<R>>()))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker thread panicked"))
            .collect()
    });
    outs.into_iter().flatten().collect()
}

/// Find integers `(p1, p2)` with `0 < p1 a - p2 b < bound` by walking the
/// continued-fraction convergents of `a / b`.
///
/// Requires `a, b, bound > 0`. The ratio must be irrational; a rational ratio
/// is detected exactly and reported, since the walk would otherwise stall at
/// a zero remainder.
pub fn cf_small_combination(
    a: &FieldElement,
    b: &FieldElement,
    bound: &FieldElement,
) -> Result<(BigInt, BigInt)> {
    if a.sign() <= 0 || b.sign() <= 0 {
        return Err(Error::NotPositive("cf inputs must be positive".into()));
    }
    if bound.sign() <= 0 {
        return Err(Error::NotPositive("cf bound must be positive".into()));
    }
    let mut walker = ConvergentWalker::new(a, b)?;
    for _ in 0..CF_ITERATION_CAP {
        let (p1, p2, value) = walker.next_combination()?;
        if bound.sub_ref(&value).sign() > 0 {
            return Ok((p1, p2));
        }
    }
    Err(Error::IterationLimit(
        "continued-fraction walk exceeded the iteration cap".into(),
    ))
}

/// Convergent walker for `x = a / b`: step `n` yields `(p1, p2)` with
/// `p1 a - p2 b = |q_n a - p_n b| > 0`, strictly decreasing in `n`.
struct ConvergentWalker {
    a: FieldElement,
    b: FieldElement,
    x: FieldElement,
    h_prev: BigInt,
    h_prev2: BigInt,
    k_prev: BigInt,
    k_prev2: BigInt,
}

impl ConvergentWalker {
    fn new(a: &FieldElement, b: &FieldElement) -> Result<Self> {
        Ok(ConvergentWalker {
            a: a.clone(),
            b: b.clone(),
            x: a.div_ref(b)?,
            h_prev: BigInt::one(),
            h_prev2: BigInt::zero(),
            k_prev: BigInt::zero(),
            k_prev2: BigInt::one(),
        })
    }

    /// Advance one convergent; errors if the ratio turns out rational.
    fn next_combination(&mut self) -> Result<(BigInt, BigInt, FieldElement)> {
        let digit = self.x.floor();
        let h = &digit * &self.h_prev + &self.h_prev2;
        let k = &digit * &self.k_prev + &self.k_prev2;
        self.h_prev2 = std::mem::replace(&mut self.h_prev, h.clone());
        self.k_prev2 = std::mem::replace(&mut self.k_prev, k.clone());

        let value = self.a.mul_int(&k).sub_ref(&self.b.mul_int(&h));
        let sign = value.sign();
        if sign == 0 {
            return Err(Error::RationalRatio);
        }
        let remainder = self
            .x
            .sub_ref(&FieldElement::from_bigint(self.x.context(), &digit));
        if remainder.is_zero() {
            return Err(Error::RationalRatio);
        }
        self.x = remainder.inv()?;

        if sign > 0 {
            Ok((k, h, value))
        } else {
            Ok((-k, -h, value.neg_ref()))
        }
    }
}

/// Produce `n` distinct qualifying classes with strictly decreasing pairings.
///
/// The fixed orthogonal isotropic pair is `v1, v2` (their span is primitive
/// and totally isotropic, so any coprime combination is isotropic and
/// indivisible); signs are oriented so both base pairings are positive, and
/// the continued-fraction walk of their ratio does the rest.
pub fn generator_pump(
    profile: &KappaProfile,
    lambda: &FieldElement,
    n: usize,
) -> Result<Vec<DeltaClass>> {
    profile.require_nonresonant()?;
    if !crate::cone::lambda_admissible(profile.kappa(), lambda) {
        return Err(Error::LambdaInadmissible);
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let v1 = LatticeVector::basis(0);
    let v2 = LatticeVector::basis(1);
    let a0 = profile.pairing(&v1);
    let b0 = profile.pairing(&v2);
    let w1 = if a0.sign() > 0 { v1 } else { v1.neg() };
    let w2 = if b0.sign() > 0 { v2 } else { v2.neg() };
    let a = a0.abs();
    let b = b0.abs();

    let mut walker = ConvergentWalker::new(&a, &b)?;
    let mut out = Vec::with_capacity(n);
    let mut steps = 0usize;
    while out.len() < n {
        steps += 1;
        if steps > CF_ITERATION_CAP {
            return Err(Error::IterationLimit(
                "generator pump exceeded the iteration cap".into(),
            ));
        }
        let (p1, p2, value) = walker.next_combination()?;
        if lambda.sub_ref(&value).sign() < 0 {
            continue;
        }
        let delta = w1.scaled(&p1).sub(&w2.scaled(&p2));
        let class = DeltaClass::certify(delta, profile, lambda)?;
        debug_assert_eq!(class.pairing(), &value);
        out.push(class);
    }
    Ok(out)
}

/// A positive definite majorant form together with the bound that confines
/// every qualifying class.
#[derive(Clone, Debug)]
pub struct MajorantForm {
    matrix: Vec<Vec<FieldElement>>,
    bound: FieldElement,
}

impl MajorantForm {
    pub fn matrix(&self) -> &[Vec<FieldElement>] {
        &self.matrix
    }

    pub fn bound(&self) -> &FieldElement {
        &self.bound
    }

    /// Exact evaluation `v^T M v`.
    pub fn value(&self, v: &LatticeVector) -> FieldElement {
        let ctx = self.bound.context();
        let mut acc = FieldElement::zero(ctx);
        for (i, row) in self.matrix.iter().enumerate() {
            for (j, entry) in row.iter().enumerate() {
                if entry.is_zero() {
                    continue;
                }
                acc = acc.add_ref(&entry.mul_int(&v.coords()[i]).mul_int(&v.coords()[j]));
            }
        }
        acc
    }

    /// Leading principal minors, for positivity certification.
    pub fn leading_minors(&self) -> Vec<FieldElement> {
        (1..=DIM)
            .map(|k| {
                let sub: Vec<Vec<FieldElement>> = self.matrix[..k]
                    .iter()
                    .map(|row| row[..k].to_vec())
                    .collect();
                linalg::determinant(&sub)
            })
            .collect()
    }
}

/// Build the majorant attached to the positive 3-space spanned by
/// `kappa, x1, x2`, with box bounds `t_bounds` on the three pairings.
///
/// For isotropic `delta` the orthogonal decomposition gives
/// `q(delta) = 2 <delta_P, delta_P> = 2 t^T A^{-1} t` with
/// `t = (<delta,kappa>, <delta,x1>, <delta,x2>)`, so the quadratic maximum
/// over the box (attained at a vertex) bounds `q` on the whole qualifying set.
fn majorant_with_gram(
    profile: &KappaProfile,
    x1: &RealClass,
    x2: &RealClass,
    t_bounds: [&FieldElement; 3],
) -> Result<MajorantForm> {
    let ctx = profile.kappa().context();
    let basis = [profile.kappa(), x1, x2];
    let gram: Vec<Vec<FieldElement>> = (0..3)
        .map(|i| (0..3).map(|j| basis[i].pairing(basis[j])).collect())
        .collect();
    // Positive definiteness of the 3x3 Gram, by leading minors.
    for k in 1..=3 {
        let sub: Vec<Vec<FieldElement>> = gram[..k].iter().map(|r| r[..k].to_vec()).collect();
        if linalg::determinant(&sub).sign() <= 0 {
            return Err(Error::NotPositive(
                "span(kappa, x1, x2) is not positive definite".into(),
            ));
        }
    }
    let det = linalg::determinant(&gram);
    // Adjugate of the 3x3 Gram.
    let cof = |r: usize, c: usize| -> FieldElement {
        let rows: Vec<usize> = (0..3).filter(|&i| i != r).collect();
        let cols: Vec<usize> = (0..3).filter(|&j| j != c).collect();
        let m = gram[rows[0]][cols[0]]
            .mul_ref(&gram[rows[1]][cols[1]])
            .sub_ref(&gram[rows[0]][cols[1]].mul_ref(&gram[rows[1]][cols[0]]));
        if (r + c) % 2 == 0 {
            m
        } else {
            m.neg_ref()
        }
    };
    let det_inv = det.inv()?;
    let ainv: Vec<Vec<FieldElement>> = (0..3)
        .map(|i| (0..3).map(|j| cof(j, i).mul_ref(&det_inv)).collect())
        .collect();

    // Q_P = W A^{-1} W^T with W columns the pairing functionals G u_i.
    let w: Vec<[FieldElement; DIM]> = basis.iter().map(|u| u.gram_apply()).collect();
    let two = FieldElement::from_int(ctx, 2);
    let mut matrix = vec![vec![FieldElement::zero(ctx); DIM]; DIM];
    for r in 0..DIM {
        for s in r..DIM {
            let mut acc = FieldElement::zero(ctx);
            for i in 0..3 {
                for j in 0..3 {
                    if ainv[i][j].is_zero() {
                        continue;
                    }
                    acc = acc.add_ref(&w[i][r].mul_ref(&ainv[i][j]).mul_ref(&w[j][s]));
                }
            }
            let mut entry = two.mul_ref(&acc);
            entry = entry.sub_ref(&FieldElement::from_int(ctx, GRAM[r][s]));
            matrix[r][s] = entry.clone();
            matrix[s][r] = entry;
        }
    }

    // bound = 2 * max over sign vertices of t^T A^{-1} t (t and -t agree).
    let mut bound: Option<FieldElement> = None;
    for signs in [[1i64, 1, 1], [1, 1, -1], [1, -1, 1], [1, -1, -1]] {
        let t: Vec<FieldElement> = (0..3)
            .map(|i| {
                if signs[i] > 0 {
                    t_bounds[i].clone()
                } else {
                    t_bounds[i].neg_ref()
                }
            })
            .collect();
        let mut acc = FieldElement::zero(ctx);
        for i in 0..3 {
            for j in 0..3 {
                acc = acc.add_ref(&t[i].mul_ref(&ainv[i][j]).mul_ref(&t[j]));
            }
        }
        let acc = two.mul_ref(&acc);
        bound = Some(match bound {
            None => acc,
            Some(cur) => {
                if acc.sub_ref(&cur).sign() > 0 {
                    acc
                } else {
                    cur
                }
            }
        });
    }
    let form = MajorantForm {
        matrix,
        bound: bound.expect("at least one vertex evaluated"),
    };
    // The majorant of a positive 3-space in signature (3,3) is positive
    // definite; certify rather than trust.
    let pd = linalg::ldl(form.matrix())
        .map(|(_, d)| d.iter().all(|x| x.sign() > 0))
        .unwrap_or(false);
    if !pd {
        return Err(Error::NotPositiveDefinite);
    }
    Ok(form)
}

/// Majorant form for the pointwise finiteness bound: requires `kappa, x1, x2`
/// pairwise orthogonal with positive squares, and box bounds
/// `|<delta,kappa>| <= lambda`, `|<delta,x_i>| <= slack`.
pub fn finiteness_radius(
    profile: &KappaProfile,
    x1: &RealClass,
    x2: &RealClass,
    lambda: &FieldElement,
    slack: &FieldElement,
) -> Result<MajorantForm> {
    let kappa = profile.kappa();
    for (name, value) in [
        ("<kappa,x1>", kappa.pairing(x1)),
        ("<kappa,x2>", kappa.pairing(x2)),
        ("<x1,x2>", x1.pairing(x2)),
    ] {
        if !value.is_zero() {
            return Err(Error::NotOrthogonal(format!("{name} = {value}")));
        }
    }
    for (name, value) in [
        ("<kappa,kappa>", kappa.self_pairing()),
        ("<x1,x1>", x1.self_pairing()),
        ("<x2,x2>", x2.self_pairing()),
    ] {
        if value.sign() <= 0 {
            return Err(Error::NotPositive(format!("{name} = {value}")));
        }
    }
    if lambda.sign() < 0 || slack.sign() < 0 {
        return Err(Error::NotPositive(
            "pairing box bounds must be nonnegative".into(),
        ));
    }
    majorant_with_gram(profile, x1, x2, [lambda, slack, slack])
}

/// All qualifying classes inside the majorant ellipsoid `q(delta) <= bound`.
///
/// Enumeration runs a Fincke-Pohst style recursion over the exact `L D L^T`
/// factorization; coordinate ranges are rational outer roundings (interval
/// square roots), while every pruning and membership decision is exact, so
/// the listing is complete.
pub fn enumerate_delta_in_ellipsoid(
    form: &MajorantForm,
    profile: &KappaProfile,
    lambda: &FieldElement,
    jobs: usize,
) -> Result<Vec<DeltaClass>> {
    if form.bound.sign() <= 0 {
        return Ok(Vec::new());
    }
    let (l, d) = linalg::ldl(form.matrix()).ok_or(Error::NotPositiveDefinite)?;
    if d.iter().any(|x| x.sign() <= 0) {
        return Err(Error::NotPositiveDefinite);
    }
    let top = DIM - 1;
    let ctx = form.bound.context();
    let range = coordinate_range(&FieldElement::zero(ctx), &form.bound, &d[top]);
    let work: Vec<i64> = range.collect();
    let screen = PairingScreen::new(profile, lambda);
    let found = run_parallel(work, jobs, |x_top| {
        let mut coords = [0i64; DIM];
        coords[top] = x_top;
        let mut acc = Vec::new();
        let y = FieldElement::from_int(ctx, x_top);
        let rem = form.bound.sub_ref(&d[top].mul_ref(&y.square()));
        if rem.sign() >= 0 {
            descend(form, &l, &d, top, coords, &rem, profile, lambda, &screen, &mut acc);
        }
        acc
    });
    Ok(sort_classes(found))
}

/// Integer range for one recursion level: `|x + mu| <= sqrt(rem / d)`,
/// outer-rounded. `mu` is the exact offset accumulated from the coordinates
/// already chosen above this level.
fn coordinate_range(
    mu: &FieldElement,
    rem: &FieldElement,
    d: &FieldElement,
) -> std::ops::RangeInclusive<i64> {
    let t = rem
        .div_ref(d)
        .expect("positive definite diagonal entries are nonzero");
    let mut t_hi = t.to_interval(96).hi;
    if t_hi.is_negative() {
        t_hi = BigRational::zero();
    }
    let radius = interval::sqrt_upper(&t_hi, 96);
    let mu_iv = mu.to_interval(96);
    let lo = (-&mu_iv.hi - &radius).ceil().to_integer();
    let hi = (-&mu_iv.lo + &radius).floor().to_integer();
    let lo = lo.to_i64().expect("enumeration range exceeds i64");
    let hi = hi.to_i64().expect("enumeration range exceeds i64");
    lo..=hi
}

#[allow(clippy::too_many_arguments)]
fn descend(
    form: &MajorantForm,
    l: &[Vec<FieldElement>],
    d: &[FieldElement],
    level: usize,
    coords: [i64; DIM],
    rem: &FieldElement,
    profile: &KappaProfile,
    lambda: &FieldElement,
    screen: &PairingScreen,
    acc: &mut Vec<DeltaClass>,
) {
    let ctx = form.bound.context();
    let below = level - 1;
    let mu = offset(l, below, &coords, ctx);
    for x in coordinate_range(&mu, rem, &d[below]) {
        let mut next = coords;
        next[below] = x;
        let y = mu.add_ref(&FieldElement::from_int(ctx, x));
        let rem_next = rem.sub_ref(&d[below].mul_ref(&y.square()));
        if rem_next.sign() < 0 {
            continue;
        }
        if below == 0 {
            consider(next, profile, lambda, screen, acc);
        } else {
            descend(form, l, d, below, next, &rem_next, profile, lambda, screen, acc);
        }
    }
}

/// `mu_i = sum_{j > i} L[j][i] x_j` for the `L D L^T` recursion.
fn offset(
    l: &[Vec<FieldElement>],
    i: usize,
    coords: &[i64; DIM],
    ctx: &std::sync::Arc<crate::scalar::FieldContext>,
) -> FieldElement {
    let mut mu = FieldElement::zero(ctx);
    for j in i + 1..DIM {
        if coords[j] == 0 || l[j][i].is_zero() {
            continue;
        }
        mu = mu.add_ref(&l[j][i].mul_int(&BigInt::from(coords[j])));
    }
    mu
}

fn consider(
    coords: [i64; DIM],
    profile: &KappaProfile,
    lambda: &FieldElement,
    screen: &PairingScreen,
    acc: &mut Vec<DeltaClass>,
) {
    if coords.iter().all(|&c| c == 0) {
        return;
    }
    if gcd6(&coords) != 1 {
        return;
    }
    if !is_isotropic_i64(&coords) {
        return;
    }
    if !screen.might_qualify(&coords) {
        return;
    }
    if let Ok(class) = DeltaClass::certify(LatticeVector::from_i64(coords), profile, lambda) {
        acc.push(class);
    }
}

fn gcd6(c: &[i64; DIM]) -> u64 {
    c.iter()
        .fold(0u64, |acc, &x| interval::gcd_u64(acc, x.unsigned_abs()))
}

fn is_isotropic_i64(c: &[i64; DIM]) -> bool {
    let p =
        c[0] as i128 * c[5] as i128 - c[1] as i128 * c[4] as i128 + c[2] as i128 * c[3] as i128;
    p == 0
}

/// Fast sound rejection filter for `0 < <kappa, delta> <= lambda`, using
/// fixed-point integer enclosures of the pairing functionals. Never rejects
/// a qualifying class; survivors are re-checked exactly.
struct PairingScreen {
    lo: [i128; DIM],
    hi: [i128; DIM],
    lambda_hi: i128,
}

const SCREEN_SHIFT: u32 = 48;
const SCREEN_CLAMP: i128 = 1 << 96;

fn clamp_floor(x: &BigRational) -> i128 {
    let scaled = (x * BigRational::from_integer(BigInt::one() << SCREEN_SHIFT))
        .floor()
        .to_integer();
    scaled
        .to_i128()
        .unwrap_or(i128::MIN)
        .clamp(-SCREEN_CLAMP, SCREEN_CLAMP)
}

fn clamp_ceil(x: &BigRational) -> i128 {
    let scaled = (x * BigRational::from_integer(BigInt::one() << SCREEN_SHIFT))
        .ceil()
        .to_integer();
    scaled
        .to_i128()
        .unwrap_or(i128::MAX)
        .clamp(-SCREEN_CLAMP, SCREEN_CLAMP)
}

impl PairingScreen {
    fn new(profile: &KappaProfile, lambda: &FieldElement) -> Self {
        let functionals = profile.kappa().gram_apply();
        let mut lo = [0i128; DIM];
        let mut hi = [0i128; DIM];
        for i in 0..DIM {
            let iv = functionals[i].to_interval(64);
            lo[i] = clamp_floor(&iv.lo);
            hi[i] = clamp_ceil(&iv.hi);
        }
        let lambda_hi = clamp_ceil(&lambda.to_interval(64).hi);
        PairingScreen { lo, hi, lambda_hi }
    }

    fn might_qualify(&self, coords: &[i64; DIM]) -> bool {
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
        // hi <= 0 certifies pairing <= 0; lo > lambda_hi certifies > lambda.
        hi > 0 && lo <= self.lambda_hi
    }
}

/// Exhaustive oracle: every qualifying class with `sup norm <= radius`.
///
/// The sixth coordinate is solved from the isotropy equation whenever the
/// first one is nonzero, which prunes the scan to five free coordinates.
pub fn brute_force_delta_box(
    profile: &KappaProfile,
    lambda: &FieldElement,
    radius: u32,
    jobs: usize,
) -> Result<Vec<DeltaClass>> {
    if radius > MAX_BOX_RADIUS {
        return Err(Error::BoxTooLarge(radius));
    }
    let b = radius as i64;
    let screen = PairingScreen::new(profile, lambda);
    let work: Vec<i64> = (-b..=b).collect();
    let found = run_parallel(work, jobs, |d1| {
        let mut acc = Vec::new();
        for d2 in -b..=b {
            for d3 in -b..=b {
                for d4 in -b..=b {
                    for d5 in -b..=b {
                        let num = d2 as i128 * d5 as i128 - d3 as i128 * d4 as i128;
                        if d1 != 0 {
                            if num % d1 as i128 != 0 {
                                continue;
                            }
                            let d6 = num / d1 as i128;
                            if d6.unsigned_abs() > b as u128 {
                                continue;
                            }
                            let coords = [d1, d2, d3, d4, d5, d6 as i64];
                            consider(coords, profile, lambda, &screen, &mut acc);
                        } else {
                            if num != 0 {
                                continue;
                            }
                            for d6 in -b..=b {
                                let coords = [d1, d2, d3, d4, d5, d6];
                                consider(coords, profile, lambda, &screen, &mut acc);
                            }
                        }
                    }
                }
            }
        }
        acc
    });
    Ok(sort_classes(found))
}

/// Exact comparison helper shared by certificates: is `value <= bound`?
pub fn le_exact(value: &FieldElement, bound: &FieldElement) -> bool {
    bound.sub_ref(value).sign() >= 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::FieldContext;
    use std::sync::Arc;

    fn ctx() -> Arc<FieldContext> {
        FieldContext::new(&[2, 3, 5, 7]).unwrap()
    }

    fn kappa_star(c: &Arc<FieldContext>) -> KappaProfile {
        KappaProfile::analyze(RealClass::new([
            FieldElement::one(c),
            FieldElement::sqrt_of(c, 2).unwrap(),
            FieldElement::sqrt_of(c, 3).unwrap(),
            FieldElement::sqrt_of(c, 5).unwrap(),
            FieldElement::sqrt_of(c, 6).unwrap(),
            FieldElement::sqrt_of(c, 7).unwrap(),
        ]))
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn cf_examples() {
        let c = ctx();
        let a = FieldElement::sqrt_of(&c, 7).unwrap();
        let b = FieldElement::sqrt_of(&c, 6).unwrap();
        // bound 0.2 -> (1, 1): sqrt7 - sqrt6 ~ 0.19626
        let bound = FieldElement::from_rational(&c, rat(1, 5));
        assert_eq!(
            cf_small_combination(&a, &b, &bound).unwrap(),
            (BigInt::from(1), BigInt::from(1))
        );
        // bound 0.1 -> (-12, -13): 13 sqrt6 - 12 sqrt7 ~ 0.0944
        let bound = FieldElement::from_rational(&c, rat(1, 10));
        assert_eq!(
            cf_small_combination(&a, &b, &bound).unwrap(),
            (BigInt::from(-12), BigInt::from(-13))
        );
        // rational ratio is reported
        let two_b = b.mul_int(&BigInt::from(2));
        assert!(matches!(
            cf_small_combination(&two_b, &b, &bound),
            Err(Error::RationalRatio)
        ));
    }

    #[test]
    fn cf_output_satisfies_contract() {
        let c = ctx();
        let a = FieldElement::sqrt_of(&c, 7).unwrap();
        let b = FieldElement::sqrt_of(&c, 6).unwrap();
        for (num, den) in [(1i64, 5i64), (1, 10), (1, 100), (1, 10_000)] {
            let bound = FieldElement::from_rational(&c, rat(num, den));
            let (p1, p2) = cf_small_combination(&a, &b, &bound).unwrap();
            let v = a.mul_int(&p1).sub_ref(&b.mul_int(&p2));
            assert_eq!(v.sign(), 1);
            assert_eq!(bound.sub_ref(&v).sign(), 1);
        }
    }

    #[test]
    fn pump_first_two_elements() {
        let c = ctx();
        let profile = kappa_star(&c);
        let lambda = FieldElement::from_int(&c, 2);
        let out = generator_pump(&profile, &lambda, 2).unwrap();
        assert_eq!(out.len(), 2);
        assert_eq!(out[0].delta(), &LatticeVector::from_i64([1, 1, 0, 0, 0, 0]));
        assert_eq!(
            out[1].delta(),
            &LatticeVector::from_i64([-12, -13, 0, 0, 0, 0])
        );
        // pairing of the first element is sqrt7 - sqrt6, inside (0.196, 0.1963)
        let iv = out[0].pairing_interval();
        assert!(iv.lo > rat(196, 1000));
        assert!(iv.hi < rat(1963, 10000));
        // second inside (0.094, 0.095)
        let iv = out[1].pairing_interval();
        assert!(iv.lo > rat(94, 1000));
        assert!(iv.hi < rat(95, 1000));
    }

    #[test]
    fn pump_decreasing_and_distinct() {
        let c = ctx();
        let profile = kappa_star(&c);
        let lambda = FieldElement::from_int(&c, 2);
        let out = generator_pump(&profile, &lambda, 12).unwrap();
        assert_eq!(out.len(), 12);
        for w in out.windows(2) {
            assert_eq!(w[0].pairing().sub_ref(w[1].pairing()).sign(), 1);
            assert_ne!(w[0].delta(), w[1].delta());
        }
        // empty request
        assert!(generator_pump(&profile, &lambda, 0).unwrap().is_empty());
        // inadmissible lambda
        assert!(matches!(
            generator_pump(&profile, &FieldElement::from_int(&c, 3), 1),
            Err(Error::LambdaInadmissible)
        ));
    }

    #[test]
    fn finiteness_radius_orthogonal_case() {
        let c = ctx();
        let lambda = FieldElement::from_int(&c, 2);
        // A rational kappa with handpicked orthogonal positive classes keeps
        // the bound formula checkable by hand: bound = 2 lambda^2 / kappa^2.
        let kappa_rat = KappaProfile::analyze(RealClass::from_lattice(
            &c,
            &LatticeVector::from_i64([1, 0, 0, 0, 0, 1]),
        ));
        let x1 = RealClass::from_lattice(&c, &LatticeVector::from_i64([0, 1, 0, 0, -1, 0]));
        let x2 = RealClass::from_lattice(&c, &LatticeVector::from_i64([0, 0, 1, 1, 0, 0]));
        let zero = FieldElement::zero(&c);
        let form = finiteness_radius(&kappa_rat, &x1, &x2, &lambda, &zero).unwrap();
        // <kappa,kappa> = 2, so bound = 8/2 = 4
        assert_eq!(form.bound(), &FieldElement::from_int(&c, 4));
        for m in form.leading_minors() {
            assert_eq!(m.sign(), 1);
        }
        // non-orthogonal input reported
        let bad = RealClass::from_lattice(&c, &LatticeVector::from_i64([1, 0, 0, 0, 0, 0]));
        assert!(matches!(
            finiteness_radius(&kappa_rat, &bad, &x2, &lambda, &zero),
            Err(Error::NotOrthogonal(_))
        ));
        // lambda = 0 gives bound 0 and an empty ellipsoid
        let form0 = finiteness_radius(&kappa_rat, &x1, &x2, &zero, &zero).unwrap();
        assert!(form0.bound().is_zero());
        assert!(enumerate_delta_in_ellipsoid(&form0, &kappa_rat, &lambda, 1)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn box_oracle_at_radius_one() {
        let c = ctx();
        let profile = kappa_star(&c);
        let lambda = FieldElement::from_int(&c, 2);
        let found = brute_force_delta_box(&profile, &lambda, 1, 1).unwrap();
        // (1,1,0,0,0,0) qualifies; (1,0,0,0,0,0) has pairing sqrt7 > 2.
        assert!(found
            .iter()
            .any(|d| d.delta() == &LatticeVector::from_i64([1, 1, 0, 0, 0, 0])));
        assert!(!found
            .iter()
            .any(|d| d.delta() == &LatticeVector::from_i64([1, 0, 0, 0, 0, 0])));
        // every result passes certification independently
        for d in &found {
            d.re_verify(&profile, &lambda).unwrap();
        }
        // lambda below every pairing leaves the box empty
        let tiny = FieldElement::from_rational(&c, rat(1, 1000));
        assert!(brute_force_delta_box(&profile, &tiny, 1, 1)
            .unwrap()
            .is_empty());
        // radius 0 is empty
        assert!(brute_force_delta_box(&profile, &lambda, 0, 1)
            .unwrap()
            .is_empty());
        // cap enforced
        assert!(matches!(
            brute_force_delta_box(&profile, &lambda, 13, 1),
            Err(Error::BoxTooLarge(13))
        ));
    }

    #[test]
    fn box_oracle_deterministic_across_jobs() {
        let c = ctx();
        let profile = kappa_star(&c);
        let lambda = FieldElement::from_int(&c, 2);
        let a = brute_force_delta_box(&profile, &lambda, 2, 1).unwrap();
        let b = brute_force_delta_box(&profile, &lambda, 2, 4).unwrap();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.delta(), y.delta());
        }
    }

    #[test]
    fn delta_certify_rejections() {
        let c = ctx();
        let profile = kappa_star(&c);
        let lambda = FieldElement::from_int(&c, 2);
        assert!(matches!(
            DeltaClass::certify(LatticeVector::zero(), &profile, &lambda),
            Err(Error::ZeroVector)
        ));
        assert!(matches!(
            DeltaClass::certify(LatticeVector::from_i64([1, 0, 0, 0, 0, 1]), &profile, &lambda),
            Err(Error::NotIsotropic(_))
        ));
        assert!(matches!(
            DeltaClass::certify(LatticeVector::from_i64([2, 2, 0, 0, 0, 0]), &profile, &lambda),
            Err(Error::NotIndivisible(_))
        ));
        // pairing too large
        assert!(matches!(
            DeltaClass::certify(LatticeVector::from_i64([1, 0, 0, 0, 0, 0]), &profile, &lambda),
            Err(Error::PairingOutOfRange(_))
        ));
        // pairing negative
        assert!(matches!(
            DeltaClass::certify(
                LatticeVector::from_i64([-1, -1, 0, 0, 0, 0]),
                &profile,
                &lambda
            ),
            Err(Error::PairingOutOfRange(_))
        ));
    }

    /// Ellipsoid enumeration must agree with the box oracle on the common
    /// region.
    #[test]
    fn ellipsoid_matches_box_oracle() {
        let c = ctx();
        let kappa_rat = KappaProfile::analyze(RealClass::from_lattice(
            &c,
            &LatticeVector::from_i64([1, 0, 0, 0, 0, 1]),
        ));
        let lambda = FieldElement::from_int(&c, 2);
        let x1 = RealClass::from_lattice(&c, &LatticeVector::from_i64([0, 1, 0, 0, -1, 0]));
        let x2 = RealClass::from_lattice(&c, &LatticeVector::from_i64([0, 0, 1, 1, 0, 0]));
        let slack = FieldElement::from_int(&c, 2);
        let form = finiteness_radius(&kappa_rat, &x1, &x2, &lambda, &slack).unwrap();
        let listed = enumerate_delta_in_ellipsoid(&form, &kappa_rat, &lambda, 2).unwrap();
        let boxed = brute_force_delta_box(&kappa_rat, &lambda, 3, 2).unwrap();
        let boxed_in_ellipsoid: Vec<_> = boxed
            .iter()
            .filter(|d| le_exact(&form.value(d.delta()), form.bound()))
            .collect();
        for d in &boxed_in_ellipsoid {
            assert!(
                listed.iter().any(|e| e.delta() == d.delta()),
                "box oracle found {:?} missing from ellipsoid listing",
                d.delta()
            );
        }
        for d in &listed {
            assert!(le_exact(&form.value(d.delta()), form.bound()));
            if d.delta().sup_norm() <= BigInt::from(3) {
                assert!(boxed.iter().any(|e| e.delta() == d.delta()));
            }
        }
    }
}
