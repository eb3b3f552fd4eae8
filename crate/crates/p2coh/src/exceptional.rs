//! Exceptional slopes on the plane and the stability curve they generate.
//!
//! Exceptional slopes are indexed by dyadic rationals through the
//! correspondence `eps`, defined by `eps(n) = n` on integers and
//!
//! ```text
//! eps((2p+1)/2^(q+1)) = eps(p/2^q) . eps((p+1)/2^q)
//! a . b = (a+b)/2 + (D_b - D_a)/(3 + a - b)
//! ```
//!
//! where `D_a = (1 - 1/r_a^2)/2` and `r_a` is the denominator of `a`. Every
//! slope controls the stability curve `delta` on the interval
//! `I_a = (a - x_a, a + x_a)` with `x_a = (3 - sqrt(5 + 8 D_a))/2`; the
//! intervals are disjoint and their union misses only a Cantor set, so a
//! target slope is found by bisecting dyadic indices.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};

use crate::chern::{hilbert_p, ChernCharacter};
use crate::error::{Error, Result};
use crate::quadratic::{rat, rat_int, QuadraticNumber, Rational};

/// Default refinement bound for interval location. Quadratic-irrational
/// targets always terminate; the cap guards against near-transcendental
/// rational encodings.
pub const DEFAULT_MAX_ORDER: u32 = 64;

/// A dyadic index `p/2^q` in lowest form (`p` odd or `q = 0`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DyadicIndex {
    p: BigInt,
    q: u32,
}

impl DyadicIndex {
    pub fn new(p: BigInt, q: u32) -> Self {
        let mut idx = DyadicIndex { p, q };
        while idx.q > 0 && idx.p.is_even() {
            idx.p /= 2;
            idx.q -= 1;
        }
        idx
    }

    pub fn from_integer(n: i64) -> Self {
        DyadicIndex::new(BigInt::from(n), 0)
    }

    pub fn numerator(&self) -> &BigInt {
        &self.p
    }

    /// The order `q` of the reduced index.
    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn as_rational(&self) -> Rational {
        Rational::new(self.p.clone(), BigInt::one() << self.q as usize)
    }

    pub fn is_integer(&self) -> bool {
        self.q == 0
    }

    /// Dyadic neighbours `p-1/2^q .. p+1/2^q` of an odd-numerator index,
    /// reduced one level down.
    fn parents(&self) -> (DyadicIndex, DyadicIndex) {
        assert!(self.q > 0);
        (
            DyadicIndex::new((&self.p - 1) / 2, self.q - 1),
            DyadicIndex::new((&self.p + 1) / 2, self.q - 1),
        )
    }

    /// Index midpoint of two adjacent indices at a common level.
    pub fn mediant_of(a: &DyadicIndex, b: &DyadicIndex) -> DyadicIndex {
        let q = a.q.max(b.q);
        let pa = &a.p << (q - a.q) as usize;
        let pb = &b.p << (q - b.q) as usize;
        DyadicIndex::new(pa + pb, q + 1)
    }

    pub fn negate(&self) -> Self {
        DyadicIndex::new(-&self.p, self.q)
    }

    pub fn shift(&self, n: i64) -> Self {
        DyadicIndex::new(&self.p + BigInt::from(n) * (BigInt::one() << self.q as usize), self.q)
    }
}

impl fmt::Display for DyadicIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q == 0 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}/2^{}", self.p, self.q)
        }
    }
}

impl FromStr for DyadicIndex {
    type Err = Error;

    /// Accepts `p/2^q`, a reduced rational with power-of-two denominator,
    /// or an integer.
    fn from_str(s: &str) -> Result<DyadicIndex> {
        let t = s.trim();
        if let Some((num, den)) = t.split_once('/') {
            let p: BigInt = num
                .trim()
                .parse()
                .map_err(|e| Error::Parse(format!("bad dyadic numerator {num:?}: {e}")))?;
            let den = den.trim();
            if let Some(q) = den.strip_prefix("2^") {
                let q: u32 = q
                    .parse()
                    .map_err(|e| Error::Parse(format!("bad dyadic order {den:?}: {e}")))?;
                return Ok(DyadicIndex::new(p, q));
            }
            let d: BigInt = den
                .parse()
                .map_err(|e| Error::Parse(format!("bad dyadic denominator {den:?}: {e}")))?;
            if d <= BigInt::zero() {
                return Err(Error::Parse(format!("dyadic denominator must be positive: {t:?}")));
            }
            let bits = d.bits();
            if d != (BigInt::one() << (bits - 1) as usize) {
                return Err(Error::Parse(format!(
                    "dyadic denominator must be a power of two: {t:?}"
                )));
            }
            return Ok(DyadicIndex::new(p, (bits - 1) as u32));
        }
        let p: BigInt = t
            .parse()
            .map_err(|e| Error::Parse(format!("bad dyadic index {t:?}: {e}")))?;
        Ok(DyadicIndex::new(p, 0))
    }
}

/// An exceptional slope with its dyadic index, rank, discriminant and the
/// half-width of the interval it controls.
#[derive(Clone, Debug)]
pub struct ExceptionalSlope {
    index: DyadicIndex,
    mu: Rational,
    rank: BigInt,
    disc: Rational,
}

impl ExceptionalSlope {
    pub fn index(&self) -> &DyadicIndex {
        &self.index
    }

    pub fn mu(&self) -> &Rational {
        &self.mu
    }

    /// Smallest positive integer `r` with `r * mu` integral.
    pub fn rank(&self) -> &BigInt {
        &self.rank
    }

    /// `(1 - 1/rank^2)/2`.
    pub fn disc(&self) -> &Rational {
        &self.disc
    }

    pub fn order(&self) -> u32 {
        self.index.order()
    }

    /// Interval half-width `x = (3 - sqrt(5 + 8 disc))/2`.
    pub fn half_width(&self) -> QuadraticNumber {
        QuadraticNumber::new(rat(3, 2), rat(-1, 2), self.width_radicand())
    }

    fn width_radicand(&self) -> Rational {
        rat_int(5) + rat_int(8) * &self.disc
    }

    /// Left endpoint `mu - x` of the controlled interval.
    pub fn left_end(&self) -> QuadraticNumber {
        QuadraticNumber::new(&self.mu - rat(3, 2), rat(1, 2), self.width_radicand())
    }

    /// Right endpoint `mu + x` of the controlled interval.
    pub fn right_end(&self) -> QuadraticNumber {
        QuadraticNumber::new(&self.mu + rat(3, 2), rat(-1, 2), self.width_radicand())
    }

    pub fn position(&self, t: &QuadraticNumber) -> IntervalPosition {
        match t.compare(&self.left_end()) {
            Ordering::Less => return IntervalPosition::Below,
            Ordering::Equal => return IntervalPosition::LeftEndpoint,
            Ordering::Greater => {}
        }
        match t.compare(&self.right_end()) {
            Ordering::Less => IntervalPosition::Interior,
            Ordering::Equal => IntervalPosition::RightEndpoint,
            Ordering::Greater => IntervalPosition::Above,
        }
    }

    /// The Chern character of the exceptional bundle with this slope.
    pub fn character(&self) -> ChernCharacter {
        let r = Rational::from(self.rank.clone());
        let c1 = &r * &self.mu;
        let ch2 = &r * (&self.mu * &self.mu * rat(1, 2) - &self.disc);
        ChernCharacter::positive_rank(r, c1, ch2)
    }

    /// Slope `-mu`, also exceptional.
    pub fn negate(&self) -> ExceptionalSlope {
        epsilon(&self.index.negate())
    }

    /// Slope `mu + n`, also exceptional.
    pub fn shift(&self, n: i64) -> ExceptionalSlope {
        epsilon(&self.index.shift(n))
    }
}

impl PartialEq for ExceptionalSlope {
    fn eq(&self, other: &Self) -> bool {
        self.mu == other.mu
    }
}

impl Eq for ExceptionalSlope {}

impl PartialOrd for ExceptionalSlope {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExceptionalSlope {
    fn cmp(&self, other: &Self) -> Ordering {
        self.mu.cmp(&other.mu)
    }
}

impl fmt::Display for ExceptionalSlope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "eps({}) = {}", self.index, self.mu)
    }
}

/// Where a target sits relative to a controlled interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntervalPosition {
    Below,
    LeftEndpoint,
    Interior,
    RightEndpoint,
    Above,
}

/// Outcome of interval location.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocateResult {
    Interior(ExceptionalSlope),
    LeftEndpoint(ExceptionalSlope),
    RightEndpoint(ExceptionalSlope),
    DepthExceeded,
}

impl LocateResult {
    pub fn slope(&self) -> Option<&ExceptionalSlope> {
        match self {
            LocateResult::Interior(s)
            | LocateResult::LeftEndpoint(s)
            | LocateResult::RightEndpoint(s) => Some(s),
            LocateResult::DepthExceeded => None,
        }
    }
}

/// `a . b = (a+b)/2 + (D_b - D_a)/(3 + a - b)` for slopes `a < b`.
pub fn dot(a: &ExceptionalSlope, b: &ExceptionalSlope) -> Rational {
    assert!(a.mu < b.mu, "dot needs increasing slopes");
    (&a.mu + &b.mu) * rat(1, 2) + (&b.disc - &a.disc) / (rat_int(3) + &a.mu - &b.mu)
}

fn memo() -> &'static Mutex<HashMap<DyadicIndex, ExceptionalSlope>> {
    static MEMO: OnceLock<Mutex<HashMap<DyadicIndex, ExceptionalSlope>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The unique exceptional slope with the given dyadic index.
pub fn epsilon(index: &DyadicIndex) -> ExceptionalSlope {
    if let Some(hit) = memo().lock().unwrap().get(index) {
        return hit.clone();
    }
    let slope = if index.is_integer() {
        let mu = Rational::from(index.p.clone());
        ExceptionalSlope {
            index: index.clone(),
            mu,
            rank: BigInt::one(),
            disc: Rational::zero(),
        }
    } else {
        let (left, right) = index.parents();
        let a = epsilon(&left);
        let b = epsilon(&right);
        let mu = dot(&a, &b);
        let rank = mu.denom().clone();
        let r2 = Rational::new(BigInt::one(), &rank * &rank);
        let disc = (rat_int(1) - r2) * rat(1, 2);
        ExceptionalSlope {
            index: index.clone(),
            mu,
            rank,
            disc,
        }
    };
    memo()
        .lock()
        .unwrap()
        .insert(index.clone(), slope.clone());
    slope
}

/// `eps(p / 2^q)` by raw index.
pub fn epsilon_pq(p: i64, q: u32) -> ExceptionalSlope {
    epsilon(&DyadicIndex::new(BigInt::from(p), q))
}

/// `eps(n)` for an integer.
pub fn epsilon_int(n: i64) -> ExceptionalSlope {
    epsilon(&DyadicIndex::from_integer(n))
}

/// Parents of a slope under the dot operation: for a non-integer of index
/// `(2p+1)/2^(q+1)` the pair `(eps(p/2^q), eps((p+1)/2^q))`; an integer `n`
/// decomposes as `(n-1, n+1)` so the attached triad specializes to
/// consecutive line bundles.
pub fn decompose(nu: &ExceptionalSlope) -> (ExceptionalSlope, ExceptionalSlope) {
    if nu.index.is_integer() {
        (nu.shift(-1), nu.shift(1))
    } else {
        let (l, r) = nu.index.parents();
        (epsilon(&l), epsilon(&r))
    }
}

/// The four smaller-order slopes attached to a non-integer slope by the
/// standard mutation sequences
/// `0 -> E_zeta -> E_alpha (x) Hom(E_alpha, E_beta) -> E_beta -> 0` and
/// `0 -> E_beta -> E_eta (x) Hom(E_beta, E_eta)^* -> E_omega -> 0`.
#[derive(Clone, Debug)]
pub struct MutationSlopes {
    pub alpha: ExceptionalSlope,
    pub eta: ExceptionalSlope,
    pub zeta: ExceptionalSlope,
    pub omega: ExceptionalSlope,
}

pub fn mutation_slopes(beta: &ExceptionalSlope) -> Result<MutationSlopes> {
    if beta.index.is_integer() {
        return Err(Error::Unsupported(
            "mutation slopes are defined for non-integer slopes".into(),
        ));
    }
    let q = beta.index.order();
    // beta = eps((p+1)/2^q) with p even.
    let p: BigInt = &beta.index.p - 1;
    let two_q = BigInt::one() << q as usize;
    let i = p.mod_floor(&BigInt::from(4));
    let idx = |num: BigInt| DyadicIndex::new(num, q);
    let alpha = epsilon(&idx(p.clone()));
    let eta = epsilon(&idx(&p + 2));
    let (zeta, omega) = if i.is_zero() {
        (
            epsilon(&idx(&p + 4 - BigInt::from(3) * &two_q)),
            epsilon(&idx(&p + 4)),
        )
    } else {
        (
            epsilon(&idx(&p - 2)),
            epsilon(&idx(&p - 2 + BigInt::from(3) * &two_q)),
        )
    };
    debug_assert!(alpha.order() < q && eta.order() < q);
    debug_assert!(zeta.order() < q && omega.order() < q);
    Ok(MutationSlopes {
        alpha,
        eta,
        zeta,
        omega,
    })
}

/// Find the slope whose interval contains `t` by dyadic bisection, or the
/// exact endpoint hit; gives up after `max_order` refinements.
pub fn locate(t: &QuadraticNumber, max_order: u32) -> LocateResult {
    let n = t.floor();
    let mut left = DyadicIndex::new(n.clone(), 0);
    let mut right = DyadicIndex::new(&n + 1, 0);
    for idx in [&left, &right] {
        let s = epsilon(idx);
        match s.position(t) {
            IntervalPosition::Interior => return LocateResult::Interior(s),
            IntervalPosition::LeftEndpoint => return LocateResult::LeftEndpoint(s),
            IntervalPosition::RightEndpoint => return LocateResult::RightEndpoint(s),
            _ => {}
        }
    }
    for _ in 0..max_order {
        let mid = DyadicIndex::mediant_of(&left, &right);
        let s = epsilon(&mid);
        match s.position(t) {
            IntervalPosition::Interior => return LocateResult::Interior(s),
            IntervalPosition::LeftEndpoint => return LocateResult::LeftEndpoint(s),
            IntervalPosition::RightEndpoint => return LocateResult::RightEndpoint(s),
            IntervalPosition::Below => right = mid,
            IntervalPosition::Above => left = mid,
        }
    }
    LocateResult::DepthExceeded
}

/// The stability-curve value at a rational slope: `P(-|mu - a|) - D_a` for
/// the controlling slope `a`, and `1/2` at an exact endpoint hit.
pub fn delta_with_order(mu: &Rational, max_order: u32) -> Result<Rational> {
    match locate(&QuadraticNumber::from_rational(mu.clone()), max_order) {
        LocateResult::Interior(s) => {
            let dist = (mu - s.mu()).abs();
            Ok(hilbert_p(&-dist) - s.disc())
        }
        LocateResult::LeftEndpoint(_) | LocateResult::RightEndpoint(_) => Ok(rat(1, 2)),
        LocateResult::DepthExceeded => Err(Error::DepthExceeded),
    }
}

pub fn delta(mu: &Rational) -> Result<Rational> {
    delta_with_order(mu, DEFAULT_MAX_ORDER)
}

/// How the moduli of semistable sheaves of a character look.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StabilityClass {
    /// Rigid: the moduli space is a single reduced point.
    Exceptional,
    /// Positive-dimensional moduli space.
    PositiveDimensional,
    /// No semistable sheaves at all.
    Empty,
}

/// Classify an integral positive-rank character: positive-dimensional
/// moduli iff the discriminant is at least the stability-curve value,
/// with exceptional characters (and their rank multiples) as the rigid
/// boundary case.
pub fn stability_class(v: &ChernCharacter) -> Result<StabilityClass> {
    if v.is_torsion() {
        // Pure one-dimensional sheaves always move in positive-dimensional
        // families.
        return Ok(StabilityClass::PositiveDimensional);
    }
    let mu = v.mu();
    let dv = v.delta();
    let loc = locate(&QuadraticNumber::from_rational(mu.clone()), DEFAULT_MAX_ORDER);
    let del = match &loc {
        LocateResult::Interior(s) => {
            let dist = (&mu - s.mu()).abs();
            hilbert_p(&-dist) - s.disc()
        }
        LocateResult::LeftEndpoint(_) | LocateResult::RightEndpoint(_) => rat(1, 2),
        LocateResult::DepthExceeded => return Err(Error::DepthExceeded),
    };
    if dv >= del {
        return Ok(StabilityClass::PositiveDimensional);
    }
    if let LocateResult::Interior(s) = &loc {
        if s.mu() == &mu && s.disc() == &dv {
            return Ok(StabilityClass::Exceptional);
        }
    }
    Ok(StabilityClass::Empty)
}

/// Positive-dimensional moduli per the discriminant test `D >= delta(mu)`.
pub fn exists_positive_dimensional_moduli(v: &ChernCharacter) -> Result<bool> {
    Ok(stability_class(v)? == StabilityClass::PositiveDimensional)
}

/// Whether the character is (a rank multiple of) an exceptional bundle's.
pub fn is_exceptional_character(v: &ChernCharacter) -> Result<bool> {
    Ok(stability_class(v)? == StabilityClass::Exceptional)
}

/// Generic cohomology of the tensor product of two exceptional bundles:
/// at most one group is nonzero, placed by the total slope, with value
/// `|chi|`.
pub fn exc_pair_cohomology(a: &ExceptionalSlope, b: &ExceptionalSlope) -> (BigInt, BigInt, BigInt) {
    let mu = a.mu() + b.mu();
    let chi = Rational::from(a.rank() * b.rank())
        * (hilbert_p(&mu) - a.disc() - b.disc());
    assert!(chi.is_integer());
    let chi = chi.to_integer();
    let value = chi.abs();
    if mu >= Rational::zero() {
        (value, BigInt::zero(), BigInt::zero())
    } else if mu > rat_int(-3) {
        (BigInt::zero(), value, BigInt::zero())
    } else {
        (BigInt::zero(), BigInt::zero(), value)
    }
}

/// An exceptional bundle is globally generated iff its slope is nonnegative.
pub fn exc_globally_generated(e: &ExceptionalSlope) -> bool {
    !e.mu().is_negative()
}

/// The sheaf-Hom between two exceptional bundles is globally generated iff
/// some integer lies in the slope interval `[mu(e), mu(f)]`.
pub fn exc_hom_globally_generated(e: &ExceptionalSlope, f: &ExceptionalSlope) -> bool {
    integer_in_closed_interval(e.mu(), f.mu())
}

pub(crate) fn integer_in_closed_interval(lo: &Rational, hi: &Rational) -> bool {
    if lo > hi {
        return false;
    }
    lo.ceil() <= hi.floor()
}

/// All exceptional slopes of order at most `max_order` with slope in the
/// closed interval `[lo, hi]`.
pub fn enumerate_slopes(lo: &Rational, hi: &Rational, max_order: u32) -> Vec<ExceptionalSlope> {
    let mut out = Vec::new();
    let lo_int = lo.floor().to_integer();
    let hi_int = hi.ceil().to_integer();
    for q in 0..=max_order {
        let mut p = &lo_int * (BigInt::one() << q as usize);
        let p_end = &hi_int * (BigInt::one() << q as usize);
        while p <= p_end {
            let idx = DyadicIndex::new(p.clone(), q);
            if idx.order() == q {
                let s = epsilon(&idx);
                if s.mu() >= lo && s.mu() <= hi {
                    out.push(s);
                }
            }
            p += 1;
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn epsilon_small_table() {
        let e = epsilon_pq(1, 1);
        assert_eq!(e.mu(), &rat(1, 2));
        assert_eq!(e.rank(), &BigInt::from(2));
        assert_eq!(e.disc(), &rat(3, 8));

        let e = epsilon_pq(1, 2);
        assert_eq!(e.mu(), &rat(2, 5));
        assert_eq!(e.rank(), &BigInt::from(5));
        assert_eq!(e.disc(), &rat(12, 25));

        let e = epsilon_pq(3, 2);
        assert_eq!(e.mu(), &rat(3, 5));
        assert_eq!(e.rank(), &BigInt::from(5));

        let e = epsilon_pq(1, 3);
        assert_eq!(e.mu(), &rat(5, 13));
        assert_eq!(e.rank(), &BigInt::from(13));

        let e = epsilon_pq(3, 3);
        assert_eq!(e.mu(), &rat(12, 29));
        assert_eq!(e.rank(), &BigInt::from(29));
    }

    #[test]
    fn epsilon_reduces_indices() {
        assert_eq!(epsilon_pq(2, 1), epsilon_int(1));
        assert_eq!(epsilon_pq(4, 2), epsilon_int(1));
        assert_eq!(epsilon_pq(2, 2), epsilon_pq(1, 1));
    }

    #[test]
    fn dot_values() {
        let zero = epsilon_int(0);
        let one = epsilon_int(1);
        let half = epsilon_pq(1, 1);
        assert_eq!(dot(&zero, &one), rat(1, 2));
        assert_eq!(dot(&half, &one), rat(3, 5));
        assert_eq!(dot(&epsilon_int(-1), &one), rat_int(0));
    }

    #[test]
    fn decompose_matches_dot() {
        for (p, q) in [(1i64, 1u32), (1, 2), (3, 2), (1, 3), (5, 3), (0, 0), (2, 0)] {
            let nu = epsilon_pq(p, q);
            let (a, b) = decompose(&nu);
            assert_eq!(&dot(&a, &b), nu.mu(), "decompose failed for eps({p}/2^{q})");
        }
        let (a, b) = decompose(&epsilon_pq(1, 1));
        assert_eq!((a.mu(), b.mu()), (&rat_int(0), &rat_int(1)));
        let (a, b) = decompose(&epsilon_int(0));
        assert_eq!((a.mu(), b.mu()), (&rat_int(-1), &rat_int(1)));
        let (a, b) = decompose(&epsilon_pq(1, 2));
        assert_eq!((a.mu(), b.mu()), (&rat_int(0), &rat(1, 2)));
    }

    #[test]
    fn mutation_slope_table() {
        // beta = 1/2: p = 0, i = 0
        let m = mutation_slopes(&epsilon_pq(1, 1)).unwrap();
        assert_eq!(m.alpha.mu(), &rat_int(0));
        assert_eq!(m.eta.mu(), &rat_int(1));
        assert_eq!(m.zeta.mu(), &rat_int(-1));
        assert_eq!(m.omega.mu(), &rat_int(2));

        // beta = 2/5 (index 1/4): p = 0, i = 0
        let m = mutation_slopes(&epsilon_pq(1, 2)).unwrap();
        assert_eq!(m.alpha.mu(), &rat_int(0));
        assert_eq!(m.eta.mu(), &rat(1, 2));
        assert_eq!(m.zeta.mu(), &rat_int(-2));
        assert_eq!(m.omega.mu(), &rat_int(1));

        // beta = 3/5 (index 3/4): p = 2, i = 2
        let m = mutation_slopes(&epsilon_pq(3, 2)).unwrap();
        assert_eq!(m.alpha.mu(), &rat(1, 2));
        assert_eq!(m.eta.mu(), &rat_int(1));
        assert_eq!(m.zeta.mu(), &rat_int(0));
        assert_eq!(m.omega.mu(), &rat_int(3));

        assert!(mutation_slopes(&epsilon_int(2)).is_err());
    }

    #[test]
    fn locate_targets() {
        // (-3 + sqrt(29))/2 ~ 1.19 lies inside the interval of slope 1.
        let t = QuadraticNumber::of((-3, 2), (1, 2), (29, 1));
        match locate(&t, DEFAULT_MAX_ORDER) {
            LocateResult::Interior(s) => assert_eq!(s.mu(), &rat_int(1)),
            other => panic!("unexpected {other:?}"),
        }

        match locate(&QuadraticNumber::zero(), DEFAULT_MAX_ORDER) {
            LocateResult::Interior(s) => assert_eq!(s.mu(), &rat_int(0)),
            other => panic!("unexpected {other:?}"),
        }

        match locate(&QuadraticNumber::from_rational(rat(5, 4)), DEFAULT_MAX_ORDER) {
            LocateResult::Interior(s) => assert_eq!(s.mu(), &rat_int(1)),
            other => panic!("unexpected {other:?}"),
        }

        // Exact endpoint hit: left end of the interval of slope 0.
        let left = epsilon_int(0).left_end();
        match locate(&left, DEFAULT_MAX_ORDER) {
            LocateResult::LeftEndpoint(s) => assert_eq!(s.mu(), &rat_int(0)),
            other => panic!("unexpected {other:?}"),
        }

        // A target needing more depth than allowed.
        assert_eq!(
            locate(&QuadraticNumber::from_rational(rat(2, 5)), 0),
            LocateResult::DepthExceeded
        );
    }

    #[test]
    fn delta_values() {
        assert_eq!(delta(&rat_int(0)).unwrap(), rat_int(1));
        assert_eq!(delta(&rat(1, 2)).unwrap(), rat(5, 8));
        assert_eq!(delta(&rat(1, 8)).unwrap(), rat(105, 128));
        assert_eq!(delta(&epsilon_pq(1, 2).mu().clone()).unwrap(), rat(1, 2) + rat(1, 50));
    }

    #[test]
    fn stability_classification() {
        use StabilityClass::*;
        let o = ChernCharacter::line_bundle(0);
        assert_eq!(stability_class(&o).unwrap(), Exceptional);
        // slope 0, discriminant 3
        let v = ChernCharacter::of(2, 0, (-6, 1));
        assert_eq!(stability_class(&v).unwrap(), PositiveDimensional);
        // tangent-type character: slope 1/2, discriminant 3/8
        let t = ChernCharacter::of(2, 1, (-1, 2));
        assert_eq!(stability_class(&t).unwrap(), Exceptional);
        assert!(!exists_positive_dimensional_moduli(&t).unwrap());
        assert!(is_exceptional_character(&t).unwrap());
        // slope 0, discriminant 1/2: below the curve, not exceptional
        let bad = ChernCharacter::of(2, 0, (-1, 1));
        assert_eq!(stability_class(&bad).unwrap(), Empty);
    }

    #[test]
    fn pair_cohomology() {
        let zero = epsilon_int(0);
        let minus = epsilon_int(-1);
        let half = epsilon_pq(1, 1);
        assert_eq!(
            exc_pair_cohomology(&zero, &zero),
            (BigInt::one(), BigInt::zero(), BigInt::zero())
        );
        assert_eq!(
            exc_pair_cohomology(&zero, &minus),
            (BigInt::zero(), BigInt::zero(), BigInt::zero())
        );
        assert_eq!(
            exc_pair_cohomology(&half, &half),
            (BigInt::from(9), BigInt::zero(), BigInt::zero())
        );
    }

    #[test]
    fn hom_global_generation() {
        assert!(exc_hom_globally_generated(&epsilon_int(0), &epsilon_int(1)));
        assert!(!exc_hom_globally_generated(&epsilon_pq(1, 2), &epsilon_pq(1, 1)));
        assert!(exc_hom_globally_generated(&epsilon_pq(1, 1), &epsilon_int(1)));
        assert!(exc_globally_generated(&epsilon_int(0)));
        assert!(!exc_globally_generated(&epsilon_int(-1)));
    }

    #[test]
    fn dyadic_parsing() {
        assert_eq!("1/2".parse::<DyadicIndex>().unwrap(), DyadicIndex::new(BigInt::one(), 1));
        assert_eq!(
            "3/2^3".parse::<DyadicIndex>().unwrap(),
            DyadicIndex::new(BigInt::from(3), 3)
        );
        assert_eq!("-5".parse::<DyadicIndex>().unwrap(), DyadicIndex::from_integer(-5));
        assert_eq!("6/4".parse::<DyadicIndex>().unwrap(), DyadicIndex::new(BigInt::from(3), 1));
        assert!("1/3".parse::<DyadicIndex>().is_err());
        assert!("x/2".parse::<DyadicIndex>().is_err());
    }
}
