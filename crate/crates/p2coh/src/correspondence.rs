//! Derived data attached to a single character: corresponding exceptional
//! slopes, the two-term resolution of a general sheaf with its exponents
//! and the class of the attached complex, the Kronecker module shape, and
//! the corresponding orthogonal characters.

use num::bigint::BigInt;
use num::{Signed, Zero};

use crate::chern::{
    chi_tensor, minimal_integral_on_parabola_point, ChernCharacter, Class, SlopeDiscPoint,
};
use crate::error::{Error, Result};
use crate::exceptional::{
    decompose, dot, epsilon, exc_pair_cohomology, exists_positive_dimensional_moduli, locate,
    DyadicIndex, ExceptionalSlope, LocateResult, DEFAULT_MAX_ORDER,
};
use crate::kronecker::KroneckerShape;
use crate::quadratic::{rat, rat_int, QuadraticNumber, Rational};

/// Sign of `chi(v (x) E_+)` for the primary corresponding exceptional `E_+`;
/// decides which of the two degenerate resolution shapes applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignCase {
    PositiveChi,
    NonpositiveChi,
}

/// The corresponding exceptional slopes of a character. Torsion classes
/// have a vertical orthogonal line and hence no secondary slope.
#[derive(Clone, Debug)]
pub struct CorrespondingExceptionals {
    pub nu_plus: ExceptionalSlope,
    pub nu_minus: Option<ExceptionalSlope>,
}

fn require_moduli(v: &ChernCharacter) -> Result<()> {
    if v.is_torsion() {
        return Ok(());
    }
    if !exists_positive_dimensional_moduli(v)? {
        return Err(Error::NotStable(format!(
            "character {v} has no positive-dimensional moduli"
        )));
    }
    Ok(())
}

fn located_slope(t: &QuadraticNumber) -> Result<ExceptionalSlope> {
    // Exact endpoint hits resolve to the interval's own slope: the weak
    // form of the sign-change characterization accepts the boundary case.
    match locate(t, DEFAULT_MAX_ORDER) {
        LocateResult::Interior(s)
        | LocateResult::LeftEndpoint(s)
        | LocateResult::RightEndpoint(s) => Ok(s),
        LocateResult::DepthExceeded => Err(Error::DepthExceeded),
    }
}

/// Primary and secondary corresponding exceptional slopes: the intervals
/// met by the intersections of the orthogonal parabola of `v` with the
/// horizontal line at height 1/2. For torsion `v = (0, d, chi)` the line is
/// vertical and the primary slope is the one whose interval contains
/// `-chi/d`.
pub fn corresponding_exceptionals(v: &ChernCharacter) -> Result<CorrespondingExceptionals> {
    require_moduli(v)?;
    match v {
        ChernCharacter::Torsion { d, chi } => {
            let t = Rational::new(-chi.clone(), d.clone());
            let nu_plus = located_slope(&QuadraticNumber::from_rational(t))?;
            Ok(CorrespondingExceptionals {
                nu_plus,
                nu_minus: None,
            })
        }
        ChernCharacter::PositiveRank { .. } => {
            let mu = v.mu();
            let delta = v.delta();
            // P(x) = 1/2 + delta at x = mu + root slope.
            let radicand = rat_int(5) + rat_int(8) * &delta;
            let upper = QuadraticNumber::new(rat(-3, 2) - &mu, rat(1, 2), radicand.clone());
            let lower = QuadraticNumber::new(rat(-3, 2) - &mu, rat(-1, 2), radicand);
            let nu_plus = located_slope(&upper)?;
            let nu_minus = located_slope(&lower)?;
            debug_assert!(nu_plus.mu() - nu_minus.mu() >= rat_int(3));
            Ok(CorrespondingExceptionals {
                nu_plus,
                nu_minus: Some(nu_minus),
            })
        }
    }
}

/// The sign case, triad slopes, exponents and complex class of the
/// two-term resolution of a general sheaf of character `v`, together with
/// the dimension vector of the attached Kronecker module.
#[derive(Clone, Debug)]
pub struct ResolutionData {
    pub sign_case: SignCase,
    pub nu_plus: ExceptionalSlope,
    /// Decomposition `nu_plus = alpha . beta`.
    pub alpha: ExceptionalSlope,
    pub beta: ExceptionalSlope,
    pub m1: BigInt,
    pub m2: BigInt,
    pub m3: BigInt,
    /// Class of the two-term complex; its rank may be zero or negative.
    pub k_char: Class,
    pub kronecker: KroneckerShape,
}

fn chi_with(v: &ChernCharacter, e: &ExceptionalSlope) -> Rational {
    chi_tensor(v, &e.character()).expect("exceptional side is positive rank")
}

fn as_nonneg_int(x: Rational, what: &str) -> BigInt {
    assert!(x.is_integer(), "{what} must be an integer, got {x}");
    let n = x.to_integer();
    assert!(!n.is_negative(), "{what} must be nonnegative, got {n}");
    n
}

/// Exceptional slope one dot-step between two adjacent slopes, through the
/// dyadic index mediant.
pub(crate) fn mediant_slope(a: &ExceptionalSlope, b: &ExceptionalSlope) -> ExceptionalSlope {
    let m = epsilon(&DyadicIndex::mediant_of(a.index(), b.index()));
    debug_assert_eq!(m.mu(), &dot(a, b));
    m
}

pub fn resolution(v: &ChernCharacter) -> Result<ResolutionData> {
    let ce = corresponding_exceptionals(v)?;
    let nu_plus = ce.nu_plus;
    let chi_plus = chi_with(v, &nu_plus);
    let (alpha, beta) = decompose(&nu_plus);
    let v_class = v.as_class();

    let (sign_case, m1, m2, m3, k_char) = if chi_plus.is_positive() {
        let alpha_nu = mediant_slope(&alpha, &nu_plus);
        let m1 = as_nonneg_int(-chi_with(v, &alpha), "m1");
        let m2 = as_nonneg_int(-chi_with(v, &alpha_nu), "m2");
        let m3 = as_nonneg_int(chi_plus, "m3");
        let k = v_class.sub(
            &nu_plus
                .negate()
                .character()
                .as_class()
                .scale(&Rational::from(m3.clone())),
        );
        (SignCase::PositiveChi, m1, m2, m3, k)
    } else {
        let nu_beta = mediant_slope(&nu_plus, &beta);
        let m1 = as_nonneg_int(chi_with(v, &nu_beta), "m1");
        let m2 = as_nonneg_int(chi_with(v, &beta), "m2");
        let m3 = as_nonneg_int(-chi_plus, "m3");
        let k = v_class.add(
            &nu_plus
                .negate()
                .shift(-3)
                .character()
                .as_class()
                .scale(&Rational::from(m3.clone())),
        );
        (SignCase::NonpositiveChi, m1, m2, m3, k)
    };

    // The complex is E_{-alpha-3}^m1 -> E_{-beta}^m2 in either case.
    let rebuilt = beta
        .negate()
        .character()
        .as_class()
        .scale(&Rational::from(m2.clone()))
        .sub(
            &alpha
                .negate()
                .shift(-3)
                .character()
                .as_class()
                .scale(&Rational::from(m1.clone())),
        );
    assert_eq!(rebuilt, k_char, "complex class mismatch between routes");

    // Arrow count: hom between the two bundles of the complex.
    let (n, h1, h2) = {
        let (h0, h1, h2) = exc_pair_cohomology(&alpha.shift(3), &beta.negate());
        (h0, h1, h2)
    };
    assert!(h1.is_zero() && h2.is_zero(), "complex pair must be hom-only");
    let kronecker = KroneckerShape::new(n, m1.clone(), m2.clone())
        .map_err(|e| Error::Unsupported(format!("degenerate module shape: {e}")))?;

    Ok(ResolutionData {
        sign_case,
        nu_plus,
        alpha,
        beta,
        m1,
        m2,
        m3,
        k_char,
        kronecker,
    })
}

/// Dimension data of the Kronecker module attached to a general sheaf.
pub fn kronecker_fibration_shape(v: &ChernCharacter) -> Result<KroneckerShape> {
    Ok(resolution(v)?.kronecker)
}

/// Smallest integral positive-rank character on the intersection of the
/// orthogonal parabolas of `v` and of the exceptional bundle of slope `e`.
pub fn orthogonal_intersection(v: &ChernCharacter, e: &ExceptionalSlope) -> Result<ChernCharacter> {
    if v.is_torsion() {
        return Err(Error::Unsupported(
            "orthogonal intersections need a positive-rank character".into(),
        ));
    }
    let mu_v = v.mu();
    let delta_v = v.delta();
    if &mu_v == e.mu() {
        return Err(Error::Unsupported(
            "parallel parabolas have no intersection".into(),
        ));
    }
    // P(mu + mu_v) - D_v = P(mu + e) - D_e, linear in mu after cancelling.
    let diff = &delta_v - e.disc();
    let mu = (rat_int(2) * diff / (&mu_v - e.mu()) - &mu_v - e.mu() - rat_int(3)) * rat(1, 2);
    let delta = crate::chern::hilbert_p(&(&mu + &mu_v)) - &delta_v;
    Ok(minimal_integral_on_parabola_point(&SlopeDiscPoint::new(
        mu, delta,
    )))
}

/// Slope of the primary corresponding orthogonal character (the parabola
/// intersection slope only; cheaper than the full minimal character).
pub fn u_plus_slope(v: &ChernCharacter, res: &ResolutionData) -> Rational {
    let e = match res.sign_case {
        SignCase::PositiveChi => res.nu_plus.negate(),
        SignCase::NonpositiveChi => res.nu_plus.negate().shift(-3),
    };
    let mu_v = v.mu();
    let delta_v = v.delta();
    let diff = &delta_v - e.disc();
    (rat_int(2) * diff / (&mu_v - e.mu()) - &mu_v - e.mu() - rat_int(3)) * rat(1, 2)
}

/// The corresponding orthogonal characters `u+` and `u-` of `v`.
#[derive(Clone, Debug)]
pub struct OrthogonalPair {
    pub u_plus: ChernCharacter,
    pub u_minus: ChernCharacter,
}

/// `u+`: the minimal integral character orthogonal to `v` and to the
/// exceptional bundle `E_{-nu+}` (positive sign case) or `E_{-nu+-3}`
/// (otherwise). `u-`: the dual of the `u+` of the Serre dual character,
/// rank-doubled once if needed to reach rank at least 2.
pub fn orthogonal_characters(v: &ChernCharacter) -> Result<OrthogonalPair> {
    let u_plus = u_plus_of(v)?;
    let vd = v.serre_dual()?;
    let mut dual_primary = u_plus_of(&vd)?;
    if dual_primary.rank() == rat_int(1) {
        dual_primary = double_rank(&dual_primary);
    }
    let u_minus = dual_primary.dual()?;
    debug_assert!(chi_tensor(v, &u_plus).unwrap().is_zero());
    debug_assert!(chi_tensor(v, &u_minus).unwrap().is_zero());
    debug_assert!(u_plus.delta() > rat(1, 2) && u_minus.delta() > rat(1, 2));
    Ok(OrthogonalPair { u_plus, u_minus })
}

fn u_plus_of(v: &ChernCharacter) -> Result<ChernCharacter> {
    let res = resolution(v)?;
    let e = match res.sign_case {
        SignCase::PositiveChi => res.nu_plus.negate(),
        SignCase::NonpositiveChi => res.nu_plus.negate().shift(-3),
    };
    orthogonal_intersection(v, &e)
}

fn double_rank(v: &ChernCharacter) -> ChernCharacter {
    let c = v.as_class();
    let two = rat_int(2);
    ChernCharacter::positive_rank(&c.r * &two, &c.c1 * &two, &c.ch2 * &two)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exceptional::epsilon_int;

    fn figure_character() -> ChernCharacter {
        // rank 4, slope 1, discriminant 9/4
        ChernCharacter::of(4, 4, (-7, 1))
    }

    #[test]
    fn corresponding_slopes() {
        let ce = corresponding_exceptionals(&figure_character()).unwrap();
        assert_eq!(ce.nu_plus.mu(), &rat_int(0));
        assert_eq!(ce.nu_minus.unwrap().mu(), &rat_int(-5));

        let ce = corresponding_exceptionals(&ChernCharacter::of(2, 0, (-6, 1))).unwrap();
        assert_eq!(ce.nu_plus.mu(), &rat_int(1));
        assert_eq!(ce.nu_minus.unwrap().mu(), &rat_int(-4));

        let ce = corresponding_exceptionals(&ChernCharacter::of(1, 10, (-17, 1))).unwrap();
        assert_eq!(ce.nu_plus.mu(), &rat_int(0));

        // Torsion: the vertical line at -chi/d.
        let t = ChernCharacter::torsion(BigInt::from(1), BigInt::from(0));
        let ce = corresponding_exceptionals(&t).unwrap();
        assert_eq!(ce.nu_plus.mu(), &rat_int(0));
        assert!(ce.nu_minus.is_none());

        assert!(corresponding_exceptionals(&ChernCharacter::line_bundle(0)).is_err());
    }

    #[test]
    fn resolution_positive_case() {
        let r = resolution(&figure_character()).unwrap();
        assert_eq!(r.sign_case, SignCase::PositiveChi);
        assert_eq!(r.alpha.mu(), &rat_int(-1));
        assert_eq!(r.beta.mu(), &rat_int(1));
        assert_eq!(
            (&r.m1, &r.m2, &r.m3),
            (&BigInt::from(5), &BigInt::from(6), &BigInt::from(3))
        );
        assert_eq!(r.k_char, Class::of(1, 4, (-7, 1)));
        assert_eq!(r.kronecker, KroneckerShape::of(3, 5, 6));
    }

    #[test]
    fn resolution_negative_rank_complex() {
        // rank 3, slope 3, discriminant 26/3
        let v = ChernCharacter::of(3, 9, (-25, 2));
        let r = resolution(&v).unwrap();
        assert_eq!(r.nu_plus.mu(), &rat_int(0));
        assert_eq!(r.sign_case, SignCase::PositiveChi);
        assert_eq!(r.m3, BigInt::from(4));
        assert_eq!(r.k_char.r, rat_int(-1));
    }

    #[test]
    fn resolution_nonpositive_case() {
        let v = ChernCharacter::of(1, 10, (-17, 1));
        let r = resolution(&v).unwrap();
        assert_eq!(r.sign_case, SignCase::NonpositiveChi);
        assert_eq!(
            (&r.m1, &r.m2, &r.m3),
            (&BigInt::from(9), &BigInt::from(11), &BigInt::from(1))
        );
        assert_eq!(r.k_char, Class::of(2, 7, (-25, 2)));

        // chi(v (x) E_+) = 0 also routes through the nonpositive shape.
        let v = ChernCharacter::of(2, 0, (-6, 1));
        let r = resolution(&v).unwrap();
        assert_eq!(r.sign_case, SignCase::NonpositiveChi);
        assert_eq!(
            (&r.m1, &r.m2, &r.m3),
            (&BigInt::from(4), &BigInt::from(6), &BigInt::from(0))
        );
        assert_eq!(r.k_char, v.as_class());
        assert_eq!(r.kronecker, KroneckerShape::of(3, 4, 6));
    }

    #[test]
    fn orthogonal_pair_examples() {
        let p = orthogonal_characters(&figure_character()).unwrap();
        assert_eq!(p.u_plus, ChernCharacter::of(4, 1, (-11, 2)));
        assert_eq!(p.u_minus, ChernCharacter::of(4, -21, (99, 2)));

        let p = orthogonal_characters(&ChernCharacter::of(2, 0, (-6, 1))).unwrap();
        assert_eq!(p.u_plus, ChernCharacter::of(4, 5, (1, 2)));
    }

    #[test]
    fn orthogonal_intersection_example() {
        // The positive-sign-style intersection for a boundary character.
        let v = ChernCharacter::of(2, 0, (-6, 1));
        let u = orthogonal_intersection(&v, &epsilon_int(-1)).unwrap();
        assert_eq!(u, ChernCharacter::of(1, 2, (-1, 1)));
        assert_eq!(u.delta(), rat_int(3));
    }

    #[test]
    fn u_minus_rank_doubling() {
        // The Serre dual of (2,-7,21/2) has a rank-one primary orthogonal
        // character, so u- doubles it before dualizing.
        let v = ChernCharacter::of(2, -7, (21, 2));
        let p = orthogonal_characters(&v).unwrap();
        assert_eq!(p.u_minus, ChernCharacter::of(2, 0, (-2, 1)));
        assert_eq!(chi_tensor(&v, &p.u_minus).unwrap(), rat_int(0));
    }

    #[test]
    fn fibration_shape_is_semistable() {
        let shape = kronecker_fibration_shape(&figure_character()).unwrap();
        assert_eq!(shape, KroneckerShape::of(3, 5, 6));
        assert!(crate::kronecker::semistable_exists(&shape));
    }
}
