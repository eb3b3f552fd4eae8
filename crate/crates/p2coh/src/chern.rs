//! Exact Chern character algebra on the projective plane.
//!
//! A class is stored as `(r, c1, ch2)` so that integrality is primitive;
//! slope `mu = c1/r` and discriminant `Delta = mu^2/2 - ch2/r` are derived
//! views. Slope and discriminant are additive under tensor product, and the
//! Euler characteristic is `chi = r (P(mu) - Delta)` with `P` the Hilbert
//! polynomial of the plane.

use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::quadratic::{rat, rat_int, parse_rational, QuadraticNumber, Rational};

/// Hilbert polynomial of the plane: `P(x) = x^2/2 + 3x/2 + 1`.
pub fn hilbert_p(x: &Rational) -> Rational {
    x * x * rat(1, 2) + x * rat(3, 2) + rat_int(1)
}

/// `P` evaluated on a quadratic irrational (stays in its radicand class).
pub fn hilbert_p_quadratic(x: &QuadraticNumber) -> QuadraticNumber {
    x.square()
        .scale(&rat(1, 2))
        .add(&x.scale(&rat(3, 2)))
        .add_rational(&rat_int(1))
}

/// A point of the (slope, discriminant) plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlopeDiscPoint {
    pub mu: Rational,
    pub delta: Rational,
}

impl SlopeDiscPoint {
    pub fn new(mu: Rational, delta: Rational) -> Self {
        SlopeDiscPoint { mu, delta }
    }
}

/// An unconstrained K-theory class `(r, c1, ch2)`. Rank of any sign; used
/// for the class of the two-term complex attached to a general sheaf, whose
/// rank can be nonpositive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Class {
    pub r: Rational,
    pub c1: Rational,
    pub ch2: Rational,
}

impl Class {
    pub fn new(r: Rational, c1: Rational, ch2: Rational) -> Self {
        Class { r, c1, ch2 }
    }

    pub fn of(r: i64, c1: i64, ch2: (i64, i64)) -> Self {
        Class::new(rat_int(r), rat_int(c1), rat(ch2.0, ch2.1))
    }

    /// Euler characteristic `chi = r + (3/2) c1 + ch2` (Riemann-Roch).
    pub fn chi(&self) -> Rational {
        &self.r + rat(3, 2) * &self.c1 + &self.ch2
    }

    /// Product class of the tensor product.
    pub fn tensor(&self, other: &Class) -> Class {
        Class {
            r: &self.r * &other.r,
            c1: &self.r * &other.c1 + &other.r * &self.c1,
            ch2: &self.r * &other.ch2 + &self.c1 * &other.c1 + &other.r * &self.ch2,
        }
    }

    pub fn dual(&self) -> Class {
        Class {
            r: self.r.clone(),
            c1: -&self.c1,
            ch2: self.ch2.clone(),
        }
    }

    pub fn scale(&self, k: &Rational) -> Class {
        Class {
            r: &self.r * k,
            c1: &self.c1 * k,
            ch2: &self.ch2 * k,
        }
    }

    pub fn sub(&self, other: &Class) -> Class {
        Class {
            r: &self.r - &other.r,
            c1: &self.c1 - &other.c1,
            ch2: &self.ch2 - &other.ch2,
        }
    }

    pub fn add(&self, other: &Class) -> Class {
        Class {
            r: &self.r + &other.r,
            c1: &self.c1 + &other.c1,
            ch2: &self.ch2 + &other.ch2,
        }
    }

    /// `chi` of the tensor product of two classes.
    pub fn chi_tensor(&self, other: &Class) -> Rational {
        self.tensor(other).chi()
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.r, self.c1, self.ch2)
    }
}

/// Chern character of a sheaf on the plane: positive rank `(r, c1, ch2)`
/// or torsion `(0, d, chi)` keyed by first Chern class and Euler
/// characteristic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChernCharacter {
    PositiveRank {
        r: Rational,
        c1: Rational,
        ch2: Rational,
    },
    Torsion {
        d: BigInt,
        chi: BigInt,
    },
}

impl ChernCharacter {
    pub fn positive_rank(r: Rational, c1: Rational, ch2: Rational) -> Self {
        assert!(r.is_positive(), "rank must be positive");
        ChernCharacter::PositiveRank { r, c1, ch2 }
    }

    /// Integer-argument convenience: `(r, c1, ch2.0/ch2.1)`.
    pub fn of(r: i64, c1: i64, ch2: (i64, i64)) -> Self {
        Self::positive_rank(rat_int(r), rat_int(c1), rat(ch2.0, ch2.1))
    }

    pub fn torsion(d: BigInt, chi: BigInt) -> Self {
        assert!(d.is_positive(), "torsion class needs positive degree");
        ChernCharacter::Torsion { d, chi }
    }

    /// Structure sheaf twisted by `n`.
    pub fn line_bundle(n: i64) -> Self {
        Self::positive_rank(rat_int(1), rat_int(n), rat(n * n, 2))
    }

    pub fn is_torsion(&self) -> bool {
        matches!(self, ChernCharacter::Torsion { .. })
    }

    pub fn rank(&self) -> Rational {
        match self {
            ChernCharacter::PositiveRank { r, .. } => r.clone(),
            ChernCharacter::Torsion { .. } => Rational::zero(),
        }
    }

    /// The underlying K-theory class. Torsion uses `ch2 = chi - 3d/2`.
    pub fn as_class(&self) -> Class {
        match self {
            ChernCharacter::PositiveRank { r, c1, ch2 } => {
                Class::new(r.clone(), c1.clone(), ch2.clone())
            }
            ChernCharacter::Torsion { d, chi } => Class::new(
                Rational::zero(),
                Rational::from(d.clone()),
                Rational::from(chi.clone()) - rat(3, 2) * Rational::from(d.clone()),
            ),
        }
    }

    /// Slope `c1/r`. Positive rank only.
    pub fn mu(&self) -> Rational {
        match self {
            ChernCharacter::PositiveRank { r, c1, .. } => c1 / r,
            ChernCharacter::Torsion { .. } => panic!("slope of a torsion class"),
        }
    }

    /// Discriminant `mu^2/2 - ch2/r`. Positive rank only.
    pub fn delta(&self) -> Rational {
        match self {
            ChernCharacter::PositiveRank { r, c1, ch2 } => {
                let mu = c1 / r;
                &mu * &mu * rat(1, 2) - ch2 / r
            }
            ChernCharacter::Torsion { .. } => panic!("discriminant of a torsion class"),
        }
    }

    /// Euler characteristic of the class itself.
    pub fn chi(&self) -> Rational {
        match self {
            ChernCharacter::PositiveRank { .. } => self.as_class().chi(),
            ChernCharacter::Torsion { chi, .. } => Rational::from(chi.clone()),
        }
    }

    /// Second Chern class `c2 = c1^2/2 - ch2`. Positive rank only.
    pub fn c2(&self) -> Rational {
        match self {
            ChernCharacter::PositiveRank { c1, ch2, .. } => c1 * c1 * rat(1, 2) - ch2,
            ChernCharacter::Torsion { .. } => panic!("c2 of a torsion class"),
        }
    }

    /// Whether the class lies in the integral K-group: integer rank and
    /// first Chern class with integer `c2` (positive rank), or integer
    /// degree and Euler characteristic (torsion, true by construction).
    pub fn is_integral(&self) -> bool {
        match self {
            ChernCharacter::PositiveRank { r, c1, .. } => {
                r.is_integer() && c1.is_integer() && self.c2().is_integer()
            }
            ChernCharacter::Torsion { .. } => true,
        }
    }

    // ---- Ring operations ----

    /// Tensor product; at most one argument may be torsion.
    pub fn tensor(&self, other: &ChernCharacter) -> Result<ChernCharacter> {
        match (self, other) {
            (ChernCharacter::Torsion { .. }, ChernCharacter::Torsion { .. }) => Err(
                Error::Unsupported("tensor product of two torsion classes".into()),
            ),
            (ChernCharacter::PositiveRank { .. }, ChernCharacter::PositiveRank { .. }) => {
                let c = self.as_class().tensor(&other.as_class());
                Ok(ChernCharacter::PositiveRank {
                    r: c.r,
                    c1: c.c1,
                    ch2: c.ch2,
                })
            }
            _ => {
                let c = self.as_class().tensor(&other.as_class());
                // Rank zero: repackage as (0, d, chi).
                let chi = c.chi();
                let d = c.c1.clone();
                assert!(chi.is_integer() && d.is_integer() && d.is_positive());
                Ok(ChernCharacter::torsion(d.to_integer(), chi.to_integer()))
            }
        }
    }

    /// Dual class (negated first Chern class). Positive rank only.
    pub fn dual(&self) -> Result<ChernCharacter> {
        match self {
            ChernCharacter::PositiveRank { r, c1, ch2 } => Ok(ChernCharacter::PositiveRank {
                r: r.clone(),
                c1: -c1,
                ch2: ch2.clone(),
            }),
            ChernCharacter::Torsion { .. } => Err(Error::Unsupported(
                "dual of a torsion class".into(),
            )),
        }
    }

    /// Twist by the line bundle of degree `n`.
    pub fn twist(&self, n: i64) -> ChernCharacter {
        match self {
            ChernCharacter::PositiveRank { .. } => self
                .tensor(&ChernCharacter::line_bundle(n))
                .expect("positive rank twist"),
            ChernCharacter::Torsion { d, chi } => ChernCharacter::Torsion {
                d: d.clone(),
                chi: chi + d * BigInt::from(n),
            },
        }
    }

    /// Serre dual `v^D`: the dual twisted by the canonical degree `-3`.
    /// Exchanges `h^0` and `h^2` of tensor products; slope maps to
    /// `-mu - 3` and the discriminant is unchanged.
    pub fn serre_dual(&self) -> Result<ChernCharacter> {
        Ok(self.dual()?.twist(-3))
    }
}

impl fmt::Display for ChernCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChernCharacter::PositiveRank { r, c1, ch2 } => write!(f, "{r} {c1} {ch2}"),
            ChernCharacter::Torsion { d, chi } => write!(f, "0 {d} {chi}"),
        }
    }
}

impl FromStr for ChernCharacter {
    type Err = Error;

    /// Parse `r c1 ch2` (three whitespace-separated exact rationals) or the
    /// torsion form `0 d chi`.
    fn from_str(s: &str) -> Result<ChernCharacter> {
        let parts: Vec<&str> = s.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!(
                "expected three whitespace-separated rationals, got {s:?}"
            )));
        }
        let r = parse_rational(parts[0])?;
        let b = parse_rational(parts[1])?;
        let c = parse_rational(parts[2])?;
        if r.is_zero() {
            if !b.is_integer() || !c.is_integer() {
                return Err(Error::NonIntegral(format!(
                    "torsion class needs integer degree and chi: {s:?}"
                )));
            }
            if !b.is_positive() {
                return Err(Error::Parse(format!(
                    "torsion class needs positive degree: {s:?}"
                )));
            }
            return Ok(ChernCharacter::torsion(b.to_integer(), c.to_integer()));
        }
        if r.is_negative() {
            return Err(Error::Parse(format!("negative rank: {s:?}")));
        }
        Ok(ChernCharacter::PositiveRank { r, c1: b, ch2: c })
    }
}

/// Parse and additionally demand integrality.
pub fn parse_integral_character(s: &str) -> Result<ChernCharacter> {
    let v: ChernCharacter = s.parse()?;
    if !v.is_integral() {
        return Err(Error::NonIntegral(format!(
            "character {v} has non-integer rank, c1 or c2"
        )));
    }
    Ok(v)
}

/// `chi(v (x) w)`: for positive ranks `r_v r_w (P(mu_v + mu_w) - D_v - D_w)`;
/// for torsion `(0,d,chi)` against positive rank `w`, `r_w chi + d c1_w`.
/// Two torsion arguments are rejected.
pub fn chi_tensor(v: &ChernCharacter, w: &ChernCharacter) -> Result<Rational> {
    if v.is_torsion() && w.is_torsion() {
        return Err(Error::Unsupported(
            "chi of the tensor product of two torsion classes".into(),
        ));
    }
    Ok(v.as_class().chi_tensor(&w.as_class()))
}

/// Smallest-rank integral character of positive rank with the given slope
/// and discriminant: the rank is the least multiple of the slope denominator
/// that makes `c2` an integer.
pub fn minimal_integral_on_parabola_point(p: &SlopeDiscPoint) -> ChernCharacter {
    let q = Rational::from(p.mu.denom().clone());
    let ch2_per_rank = &p.mu * &p.mu * rat(1, 2) - &p.delta;
    let mut k = BigInt::one();
    loop {
        let r = &q * Rational::from(k.clone());
        let cand = ChernCharacter::positive_rank(
            r.clone(),
            &r * &p.mu,
            &r * &ch2_per_rank,
        );
        if cand.is_integral() {
            return cand;
        }
        k += 1;
    }
}
