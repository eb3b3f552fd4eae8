//! The two-vertex quiver with `N >= 3` arrows: Euler form, existence of
//! semistable modules, the exceptional dimension vectors, the canonical
//! decomposition of a general module, and generic hom/ext counts.
//!
//! For dimension vectors `f = (b', a')` and `e = (b, a)` the Euler form is
//! `chi(f, e) = b'b + a'a - N b'a`, the slope of `e` is `b/a` (infinite when
//! `a = 0`), and the moduli space of semistable modules of vector `(b, a)`
//! has expected dimension `1 - b^2 - a^2 + Nba`. It is nonempty exactly when
//! that number is nonnegative, which happens when the slope lies strictly
//! between the roots `psi^-1 < psi` of `x^2 - Nx + 1` or when `(b, a)` is
//! one of the exceptional solutions of `b^2 + a^2 - Nba = 1`.

use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::quadratic::{rat, QuadraticNumber, Rational};

/// Dimension data of a Kronecker module: arrow count `n >= 3` and the
/// dimension vector `(b, a) != (0, 0)` with nonnegative entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KroneckerShape {
    pub n: BigInt,
    pub b: BigInt,
    pub a: BigInt,
}

impl KroneckerShape {
    pub fn new(n: BigInt, b: BigInt, a: BigInt) -> Result<Self> {
        if n < BigInt::from(3) {
            return Err(Error::Parse(format!("arrow count must be at least 3, got {n}")));
        }
        if b.is_negative() || a.is_negative() || (b.is_zero() && a.is_zero()) {
            return Err(Error::Parse(format!(
                "dimension vector must be nonnegative and nonzero, got ({b},{a})"
            )));
        }
        Ok(KroneckerShape { n, b, a })
    }

    pub fn of(n: i64, b: i64, a: i64) -> Self {
        Self::new(BigInt::from(n), BigInt::from(b), BigInt::from(a)).unwrap()
    }

    /// Slope `b/a`; `None` encodes infinity (`a = 0`).
    pub fn slope(&self) -> Option<Rational> {
        if self.a.is_zero() {
            None
        } else {
            Some(Rational::new(self.b.clone(), self.a.clone()))
        }
    }

    /// `b^2 + a^2 - N b a`; `1` exactly on exceptional vectors.
    pub fn tits_form(&self) -> BigInt {
        &self.b * &self.b + &self.a * &self.a - &self.n * &self.b * &self.a
    }

    /// Expected dimension `1 - b^2 - a^2 + Nba` of the moduli space.
    pub fn expected_dimension(&self) -> BigInt {
        BigInt::one() - self.tits_form()
    }

    fn primitive(&self) -> (KroneckerShape, BigInt) {
        let g = self.b.gcd(&self.a);
        (
            KroneckerShape {
                n: self.n.clone(),
                b: &self.b / &g,
                a: &self.a / &g,
            },
            g,
        )
    }

    fn swap(&self) -> KroneckerShape {
        KroneckerShape {
            n: self.n.clone(),
            b: self.a.clone(),
            a: self.b.clone(),
        }
    }
}

impl fmt::Display for KroneckerShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{},{}", self.n, self.b, self.a)
    }
}

impl FromStr for KroneckerShape {
    type Err = Error;

    /// Parse `N:b,a`.
    fn from_str(s: &str) -> Result<KroneckerShape> {
        let t = s.trim();
        let (n, rest) = t
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected N:b,a, got {t:?}")))?;
        let (b, a) = rest
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected N:b,a, got {t:?}")))?;
        let parse = |x: &str, what: &str| -> Result<BigInt> {
            x.trim()
                .parse()
                .map_err(|e| Error::Parse(format!("bad {what} in {t:?}: {e}")))
        };
        KroneckerShape::new(parse(n, "arrow count")?, parse(b, "b")?, parse(a, "a")?)
    }
}

/// `psi_N = (N + sqrt(N^2 - 4))/2`, the upper root of `x^2 - Nx + 1`.
pub fn psi(n: &BigInt) -> QuadraticNumber {
    let n = Rational::from(n.clone());
    QuadraticNumber::new(&n * rat(1, 2), rat(1, 2), &n * &n - Rational::from(BigInt::from(4)))
}

fn check_same_arrows(f: &KroneckerShape, e: &KroneckerShape) -> Result<()> {
    if f.n != e.n {
        return Err(Error::Unsupported(format!(
            "mismatched arrow counts {} and {}",
            f.n, e.n
        )));
    }
    Ok(())
}

/// Euler form `chi(f, e) = b'b + a'a - N b'a`.
pub fn euler_form(f: &KroneckerShape, e: &KroneckerShape) -> Result<BigInt> {
    check_same_arrows(f, e)?;
    Ok(&f.b * &e.b + &f.a * &e.a - &f.n * &f.b * &e.a)
}

/// First `count` vectors of the orbit of `(0,1)` under `tau(b,a) = (a, Na-b)`;
/// these are the low-slope exceptional dimension vectors.
pub fn exceptional_orbit(n: &BigInt, count: usize) -> Result<Vec<KroneckerShape>> {
    if n < &BigInt::from(3) {
        return Err(Error::Parse(format!("arrow count must be at least 3, got {n}")));
    }
    if count == 0 {
        return Err(Error::Parse("orbit length must be positive".into()));
    }
    let mut out = Vec::with_capacity(count);
    let mut b = BigInt::zero();
    let mut a = BigInt::one();
    for _ in 0..count {
        out.push(KroneckerShape {
            n: n.clone(),
            b: b.clone(),
            a: a.clone(),
        });
        let next = n * &a - &b;
        b = std::mem::replace(&mut a, next);
    }
    Ok(out)
}

/// Whether a general module of this vector is semistable: expected
/// dimension at least 0. Proper multiples `m >= 2` of exceptional vectors
/// fail this (their general module is the polystable direct sum).
pub fn semistable_exists(s: &KroneckerShape) -> bool {
    !s.expected_dimension().is_negative()
}

/// Scaled exceptional vectors: the general module is a direct sum of `m`
/// copies of one exceptional module.
pub fn polystable_multiplicity(s: &KroneckerShape) -> Option<(KroneckerShape, BigInt)> {
    let (prim, g) = s.primitive();
    if prim.tits_form() == BigInt::one() && g > BigInt::one() {
        Some((prim, g))
    } else {
        None
    }
}

/// Isotypic decomposition of the general module of a dimension vector:
/// one semistable summand, one exceptional summand with multiplicity, or
/// the unique nonnegative combination of the two adjacent exceptional
/// vectors bracketing the slope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralDecomposition {
    /// `(shape, multiplicity)` with slopes increasing; at most two entries.
    pub summands: Vec<(KroneckerShape, BigInt)>,
}

impl GeneralDecomposition {
    /// Weighted sum of the summand vectors; equals the decomposed vector.
    pub fn total(&self) -> KroneckerShape {
        let mut b = BigInt::zero();
        let mut a = BigInt::zero();
        for (s, m) in &self.summands {
            b += &s.b * m;
            a += &s.a * m;
        }
        KroneckerShape {
            n: self.summands[0].0.n.clone(),
            b,
            a,
        }
    }
}

pub fn decompose_general(s: &KroneckerShape) -> GeneralDecomposition {
    if semistable_exists(s) {
        return GeneralDecomposition {
            summands: vec![(s.clone(), BigInt::one())],
        };
    }
    if let Some((prim, m)) = polystable_multiplicity(s) {
        return GeneralDecomposition {
            summands: vec![(prim, m)],
        };
    }
    // Slope strictly outside the semistable range and not on an exceptional
    // ray. Slopes below psi^-1 have b < a; the opposite side is handled by
    // swapping the two vertices, which preserves the Tits form.
    if s.b > s.a {
        let mut dec = decompose_general(&s.swap());
        for (shape, _) in dec.summands.iter_mut() {
            *shape = shape.swap();
        }
        dec.summands.reverse();
        let check = dec.total();
        debug_assert_eq!(&check, s);
        return dec;
    }
    let slope = s.slope().expect("vertical vectors are scaled exceptional");
    let mut prev = KroneckerShape {
        n: s.n.clone(),
        b: BigInt::zero(),
        a: BigInt::one(),
    };
    let mut cur = KroneckerShape {
        n: s.n.clone(),
        b: BigInt::one(),
        a: s.n.clone(),
    };
    loop {
        let cs = cur.slope().expect("orbit stays finite-slope");
        if cs > slope {
            break;
        }
        let next = KroneckerShape {
            n: s.n.clone(),
            b: cur.a.clone(),
            a: &s.n * &cur.a - &cur.b,
        };
        prev = std::mem::replace(&mut cur, next);
    }
    // Solve m1 * prev + m2 * cur = s; the bracketing pair is unimodular.
    let det = &prev.b * &cur.a - &prev.a * &cur.b;
    debug_assert!(det.abs().is_one());
    let m1 = (&s.b * &cur.a - &s.a * &cur.b) / &det;
    let m2 = (&prev.b * &s.a - &prev.a * &s.b) / &det;
    assert!(!m1.is_negative() && !m2.is_negative());
    let mut summands = Vec::new();
    if !m1.is_zero() {
        summands.push((prev, m1));
    }
    if !m2.is_zero() {
        summands.push((cur, m2));
    }
    let dec = GeneralDecomposition { summands };
    debug_assert_eq!(&dec.total(), s);
    dec
}

/// Generic `(hom, ext^1)` between general modules of two vectors. When at
/// least one side is semistable, at most one of the groups is nonzero and
/// the Euler form decides; otherwise both sides decompose into exceptional
/// summands and the counts add up pairwise.
pub fn general_hom_ext(f: &KroneckerShape, e: &KroneckerShape) -> Result<(BigInt, BigInt)> {
    check_same_arrows(f, e)?;
    let semi = |s: &KroneckerShape| semistable_exists(&s.primitive().0);
    let split = |chi: BigInt| -> (BigInt, BigInt) {
        if chi.is_negative() {
            (BigInt::zero(), -chi)
        } else {
            (chi, BigInt::zero())
        }
    };
    let (hom, ext) = if semi(f) || semi(e) {
        split(euler_form(f, e)?)
    } else {
        let df = decompose_general(f);
        let de = decompose_general(e);
        let mut hom = BigInt::zero();
        let mut ext = BigInt::zero();
        for (sf, mf) in &df.summands {
            for (se, me) in &de.summands {
                let (h, x) = split(euler_form(sf, se)?);
                let weight = mf * me;
                hom += h * &weight;
                ext += x * weight;
            }
        }
        (hom, ext)
    };
    debug_assert_eq!(&hom - &ext, euler_form(f, e)?);
    Ok((hom, ext))
}
