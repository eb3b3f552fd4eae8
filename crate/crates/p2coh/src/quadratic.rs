//! Exact arithmetic for real quadratic irrationals `a + b*sqrt(d)`.
//!
//! Slopes, interval endpoints and parabola intersections all live in real
//! quadratic extensions of Q with varying radicands, so comparisons must be
//! decided exactly. Comparison isolates one radical and squares with explicit
//! sign bookkeeping; at most two squarings decide any pair, and no floating
//! point is ever consulted.
//!
//! Arithmetic (`add`, `mul`, ...) is only provided within a single radicand
//! class; no formula downstream mixes radicands outside of comparisons.

use std::cmp::Ordering;
use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator. Parses and prints as `p/q` or `p`.
pub type Rational = BigRational;

/// Rational from an integer pair. Panics on zero denominator.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rational {
    Rational::from(BigInt::from(n))
}

/// Parse `p/q` or `p` into a rational in lowest terms.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    t.parse::<Rational>()
        .map_err(|e| Error::Parse(format!("bad rational {t:?}: {e}")))
}

/// A real quadratic irrational `a + b*sqrt(d)` with rational `a`, `b` and
/// rational radicand `d >= 0`.
///
/// The representation with `b = 0` or `d = 0` is canonically the rational
/// `a`, and perfect-square radicands are folded away. Equality and ordering
/// are those of the represented real numbers, independent of representation
/// (`1*sqrt(8)` equals `2*sqrt(2)`).
#[derive(Clone, Debug)]
pub struct QuadraticNumber {
    a: Rational,
    b: Rational,
    d: Rational,
}

impl QuadraticNumber {
    pub fn new(a: Rational, b: Rational, d: Rational) -> Self {
        assert!(!d.is_negative(), "radicand must be nonnegative");
        let mut q = QuadraticNumber { a, b, d };
        q.normalize();
        q
    }

    pub fn from_rational(a: Rational) -> Self {
        QuadraticNumber {
            a,
            b: Rational::zero(),
            d: Rational::zero(),
        }
    }

    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    /// `a + b*sqrt(d)` for integer arguments; convenience for tests.
    pub fn of(a: (i64, i64), b: (i64, i64), d: (i64, i64)) -> Self {
        Self::new(rat(a.0, a.1), rat(b.0, b.1), rat(d.0, d.1))
    }

    fn normalize(&mut self) {
        if self.b.is_zero() || self.d.is_zero() {
            self.b = Rational::zero();
            self.d = Rational::zero();
            return;
        }
        // Fold perfect-square radicands into the rational part.
        if let Some(root) = rational_sqrt(&self.d) {
            self.a = &self.a + &self.b * root;
            self.b = Rational::zero();
            self.d = Rational::zero();
        }
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn radical_coeff(&self) -> &Rational {
        &self.b
    }

    pub fn radicand(&self) -> &Rational {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        if self.is_rational() {
            Some(&self.a)
        } else {
            None
        }
    }

    // ---- Arithmetic within one radicand class ----

    pub fn neg(&self) -> Self {
        QuadraticNumber {
            a: -&self.a,
            b: -&self.b,
            d: self.d.clone(),
        }
    }

    pub fn add_rational(&self, r: &Rational) -> Self {
        QuadraticNumber {
            a: &self.a + r,
            b: self.b.clone(),
            d: self.d.clone(),
        }
    }

    pub fn sub_rational(&self, r: &Rational) -> Self {
        self.add_rational(&-r)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::new(&self.a * r, &self.b * r, self.d.clone())
    }

    /// Sum of two numbers in the same radicand class. Panics on mixed
    /// irrational radicands; cross-radicand arithmetic is out of scope.
    pub fn add(&self, other: &Self) -> Self {
        if other.is_rational() {
            return self.add_rational(&other.a);
        }
        if self.is_rational() {
            return other.add_rational(&self.a);
        }
        assert_eq!(self.d, other.d, "mixed radicands in quadratic arithmetic");
        Self::new(&self.a + &other.a, &self.b + &other.b, self.d.clone())
    }

    /// Product within one radicand class (see `add`).
    pub fn mul(&self, other: &Self) -> Self {
        if other.is_rational() {
            return self.scale(&other.a);
        }
        if self.is_rational() {
            return other.scale(&self.a);
        }
        assert_eq!(self.d, other.d, "mixed radicands in quadratic arithmetic");
        let a = &self.a * &other.a + &self.b * &other.b * &self.d;
        let b = &self.a * &other.b + &self.b * &other.a;
        Self::new(a, b, self.d.clone())
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    // ---- Comparison ----

    /// Sign of the represented real number.
    pub fn sign(&self) -> Ordering {
        sign_two_term(&self.a, &self.b, &self.d)
    }

    /// Exact order of the represented real numbers; total, never approximate.
    pub fn compare(&self, other: &Self) -> Ordering {
        if self.is_rational() && other.is_rational() {
            return self.a.cmp(&other.a);
        }
        if self.d == other.d {
            // Common radicand: one two-term sign decides.
            return sign_two_term(&(&self.a - &other.a), &(&self.b - &other.b), &self.d);
        }
        // x - y = A + B*sqrt(d1) + C*sqrt(d2)
        sign_three_term(
            &(&self.a - &other.a),
            &self.b,
            &self.d,
            &-&other.b,
            &other.d,
        )
    }

    pub fn compare_rational(&self, r: &Rational) -> Ordering {
        sign_two_term(&(&self.a - r), &self.b, &self.d)
    }

    /// Largest integer not exceeding the represented number.
    pub fn floor(&self) -> BigInt {
        if self.is_rational() {
            return self.a.floor().to_integer();
        }
        // Rational bounds on sqrt(d) sharp enough that the bracket for the
        // whole number is shorter than 1/2, then settle exactly.
        let n = self.d.numer().clone();
        let m = self.d.denom().clone();
        let nm = &n * &m;
        let mut shift: u32 = 0;
        let (lo, hi) = loop {
            let scaled = &nm << (2 * shift as usize);
            let s = scaled.sqrt();
            let denom = Rational::from(&m * (BigInt::one() << shift as usize));
            let lo = Rational::from(s.clone()) / denom.clone();
            let hi = Rational::from(s + 1) / denom;
            let width = (&hi - &lo) * self.b.abs();
            if width < rat(1, 2) {
                break (lo, hi);
            }
            shift += 2;
        };
        let (blo, bhi) = if self.b.is_positive() {
            (&self.a + &self.b * lo, &self.a + &self.b * hi)
        } else {
            (&self.a + &self.b * hi, &self.a + &self.b * lo)
        };
        let mut cand = blo.floor().to_integer();
        // blo <= x < bhi with bhi - blo < 1/2, so at most two candidates.
        while self.compare_rational(&Rational::from(&cand + 1)) != Ordering::Less {
            cand += 1;
        }
        let _ = bhi;
        cand
    }

    /// Floating approximation; for diagnostics and CSV columns only.
    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        let d = self.d.to_f64().unwrap_or(f64::NAN);
        a + b * d.sqrt()
    }
}

impl From<Rational> for QuadraticNumber {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl PartialEq for QuadraticNumber {
    fn eq(&self, other: &Self) -> bool {
        self.compare(other) == Ordering::Equal
    }
}

impl Eq for QuadraticNumber {}

impl PartialOrd for QuadraticNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadraticNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        self.compare(other)
    }
}

impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})+({})*sqrt({})", self.a, self.b, self.d)
    }
}

/// Exact square root of a rational if it is a perfect square.
fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let sn = r.numer().sqrt();
    let sd = r.denom().sqrt();
    if &(&sn * &sn) == r.numer() && &(&sd * &sd) == r.denom() {
        Some(Rational::new(sn, sd))
    } else {
        None
    }
}

/// Sign of `a + b*sqrt(d)` with `d >= 0`.
fn sign_two_term(a: &Rational, b: &Rational, d: &Rational) -> Ordering {
    if b.is_zero() || d.is_zero() {
        return a.cmp(&Rational::zero());
    }
    let sa = a.cmp(&Rational::zero());
    let sb = b.cmp(&Rational::zero());
    match (sa, sb) {
        (Ordering::Equal, s) | (s, Ordering::Equal) => s,
        (x, y) if x == y => x,
        _ => {
            // Opposite signs: |a| vs |b|*sqrt(d) decides.
            let lhs = a * a;
            let rhs = b * b * d;
            match lhs.cmp(&rhs) {
                Ordering::Greater => sa,
                Ordering::Less => sb,
                Ordering::Equal => Ordering::Equal,
            }
        }
    }
}

/// Sign of `A + B*sqrt(d1) + C*sqrt(d2)`: compare `A + B*sqrt(d1)` against
/// `-C*sqrt(d2)`; equal signs square once more, leaving a single radical.
fn sign_three_term(a: &Rational, b: &Rational, d1: &Rational, c: &Rational, d2: &Rational) -> Ordering {
    if b.is_zero() || d1.is_zero() {
        return sign_two_term(a, c, d2);
    }
    if c.is_zero() || d2.is_zero() {
        return sign_two_term(a, b, d1);
    }
    let left = sign_two_term(a, b, d1);
    let right = (-c).cmp(&Rational::zero());
    match (left, right) {
        (x, y) if x != y => x.cmp(&y),
        (Ordering::Equal, Ordering::Equal) => Ordering::Equal,
        (s, _) => {
            // L and R share the sign s; compare squares.
            // L^2 - R^2 = (A^2 + B^2 d1 - C^2 d2) + 2AB*sqrt(d1).
            let a2 = a * a + b * b * d1 - c * c * d2;
            let b2 = Rational::from(BigInt::from(2)) * a * b;
            let sq = sign_two_term(&a2, &b2, d1);
            if s == Ordering::Greater {
                sq
            } else {
                sq.reverse()
            }
        }
    }
}

/// Both roots of `x^2 + bx + c = 0`, smaller first, when the discriminant is
/// nonnegative; `None` otherwise.
pub fn solve_monic_quadratic(b: &Rational, c: &Rational) -> Option<(QuadraticNumber, QuadraticNumber)> {
    let disc = b * b - Rational::from(BigInt::from(4)) * c;
    if disc.is_negative() {
        return None;
    }
    let half = rat(1, 2);
    let mid = -b * &half;
    let small = QuadraticNumber::new(mid.clone(), -&half, disc.clone());
    let large = QuadraticNumber::new(mid, half, disc);
    Some((small, large))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: (i64, i64), b: (i64, i64), d: (i64, i64)) -> QuadraticNumber {
        QuadraticNumber::of(a, b, d)
    }

    #[test]
    fn compare_mixed_radicand() {
        // (3 - sqrt(5))/2 vs 1/3
        let x = q((3, 2), (-1, 2), (5, 1));
        let y = QuadraticNumber::from_rational(rat(1, 3));
        assert_eq!(x.compare(&y), Ordering::Greater);
    }

    #[test]
    fn compare_reflexive() {
        let x = q((-7, 3), (2, 5), (13, 1));
        assert_eq!(x.compare(&x), Ordering::Equal);
    }

    #[test]
    fn equal_across_representations() {
        // sqrt(8) == 2*sqrt(2)
        let x = q((0, 1), (1, 1), (8, 1));
        let y = q((0, 1), (2, 1), (2, 1));
        assert_eq!(x.compare(&y), Ordering::Equal);
        assert_eq!(x, y);
    }

    #[test]
    fn perfect_squares_fold() {
        let x = q((1, 2), (3, 1), (4, 9));
        assert!(x.is_rational());
        assert_eq!(x.as_rational().unwrap(), &rat(5, 2));
    }

    #[test]
    fn monic_roots() {
        // x^2 + 3x - 5
        let (r1, r2) = solve_monic_quadratic(&rat_int(3), &rat_int(-5)).unwrap();
        assert_eq!(r1, q((-3, 2), (-1, 2), (29, 1)));
        assert_eq!(r2, q((-3, 2), (1, 2), (29, 1)));
        assert!(r1 < r2);

        // double root
        let (r1, r2) = solve_monic_quadratic(&rat_int(0), &rat_int(0)).unwrap();
        assert_eq!(r1, QuadraticNumber::zero());
        assert_eq!(r2, QuadraticNumber::zero());

        // negative discriminant
        assert!(solve_monic_quadratic(&rat_int(0), &rat_int(1)).is_none());
    }

    #[test]
    fn root_sum_and_product() {
        let b = rat(7, 3);
        let c = rat(-11, 5);
        let (r1, r2) = solve_monic_quadratic(&b, &c).unwrap();
        let sum = r1.add(&r2);
        let prod = r1.mul(&r2);
        assert_eq!(sum.as_rational().unwrap(), &-&b);
        assert_eq!(prod.as_rational().unwrap(), &c);
    }

    #[test]
    fn floor_of_irrational() {
        // (3 + sqrt(5))/2 ~ 2.618
        let x = q((3, 2), (1, 2), (5, 1));
        assert_eq!(x.floor(), BigInt::from(2));
        let y = x.neg(); // ~ -2.618
        assert_eq!(y.floor(), BigInt::from(-3));
        // exact integers
        let z = q((4, 1), (0, 1), (7, 1));
        assert_eq!(z.floor(), BigInt::from(4));
    }

    #[test]
    fn display_form() {
        let x = q((1, 2), (-1, 3), (5, 1));
        assert_eq!(x.to_string(), "(1/2)+(-1/3)*sqrt(5)");
    }
}
