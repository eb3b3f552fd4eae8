//! Generic cohomology of a tensor product of two characters.
//!
//! The pair is classified into a region of the (slope, discriminant) plane
//! relative to the fixed character's resolution data. Each region carries a
//! one-sided vanishing; combining the classification of `(v, w)` with that
//! of the Serre-dual pair, the slope gates (`h0` needs total slope `>= 0`,
//! `h2` needs total slope `<= -3`) and the Euler characteristic pins down
//! the full `(h0, h1, h2)`. One region is genuinely special: there both
//! `h0` and `h1` are nonzero and given exactly by the resolution exponents.

use std::fmt;

use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};

use crate::chern::{chi_tensor, ChernCharacter, Class, SlopeDiscPoint};
use crate::correspondence::{
    corresponding_exceptionals, mediant_slope, orthogonal_characters, resolution, u_plus_slope,
    ResolutionData, SignCase,
};
use crate::error::{Error, Result};
use crate::exceptional::{
    exc_pair_cohomology, locate, ExceptionalSlope, LocateResult, StabilityClass,
    DEFAULT_MAX_ORDER,
};
use crate::quadratic::{rat, rat_int, QuadraticNumber, Rational};

/// Region of a pair, relative to the first character's correspondence data.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[allow(clippy::upper_case_acronyms)]
pub enum RegionLabel {
    I,
    II,
    IIIa,
    IIIb,
    IVa,
    IVb,
    IVc,
    IVd,
    Va,
    Vb,
    Vc,
    Vd,
    /// One side exceptional: handled by the twist rules, no region logic.
    ExceptionalPath,
    /// Torsion side: cohomology is concentrated in degrees 0 and 1 and
    /// decided by the Euler characteristic alone.
    TorsionPath,
}

impl RegionLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            RegionLabel::I => "I",
            RegionLabel::II => "II",
            RegionLabel::IIIa => "IIIa",
            RegionLabel::IIIb => "IIIb",
            RegionLabel::IVa => "IVa",
            RegionLabel::IVb => "IVb",
            RegionLabel::IVc => "IVc",
            RegionLabel::IVd => "IVd",
            RegionLabel::Va => "Va",
            RegionLabel::Vb => "Vb",
            RegionLabel::Vc => "Vc",
            RegionLabel::Vd => "Vd",
            RegionLabel::ExceptionalPath => "exceptional",
            RegionLabel::TorsionPath => "torsion",
        }
    }

    /// Regions where the vanishing theorems need no divisibility of the
    /// moving character.
    fn divisibility_free(&self) -> bool {
        matches!(
            self,
            RegionLabel::I
                | RegionLabel::II
                | RegionLabel::IIIa
                | RegionLabel::IIIb
                | RegionLabel::ExceptionalPath
        )
    }
}

impl fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// What a region classification says about the cohomology.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum RegionVerdict {
    H1Vanishes,
    H0Vanishes,
    /// Region IIIb under the positive sign case: both `h0` and `h1` live.
    SpecialCandidate,
}

/// Generic cohomology report for a pair of characters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyReport {
    pub h0: BigInt,
    pub h1: BigInt,
    pub h2: BigInt,
    pub chi: BigInt,
    pub region: RegionLabel,
    /// Two nonzero cohomology groups (the region-IIIb phenomenon, possibly
    /// seen through the Serre-dual pair). The rank-one `h2` surplus is not
    /// flagged here; it carries a note instead.
    pub special: bool,
    pub requires_divisibility: bool,
    /// Populated when `chi = 0` on the standard path: the smallest factor
    /// making the orthogonal-vanishing construction available.
    pub sufficient_multiple: Option<BigInt>,
    pub notes: Vec<String>,
}

impl CohomologyReport {
    fn check(self) -> Self {
        debug_assert!(!self.h0.is_negative() && !self.h1.is_negative() && !self.h2.is_negative());
        debug_assert_eq!(&self.h0 - &self.h1 + &self.h2, self.chi);
        debug_assert!(self.h0.is_zero() || self.h2.is_zero());
        self
    }
}

const NOTE_RANK_ONE_H2: &str =
    "rank-one: h2 computed from the twisted second factor; h1 completed from chi";
const NOTE_DUAL_SPECIAL: &str = "special values found on the Serre-dual pair";

fn stability(v: &ChernCharacter) -> Result<StabilityClass> {
    crate::exceptional::stability_class(v)
}

fn require_stable(v: &ChernCharacter) -> Result<StabilityClass> {
    let s = stability(v)?;
    if s == StabilityClass::Empty {
        return Err(Error::NotStable(format!("no semistable sheaves of character {v}")));
    }
    Ok(s)
}

fn require_integral(v: &ChernCharacter) -> Result<()> {
    if !v.is_integral() {
        return Err(Error::NonIntegral(format!("character {v} is not integral")));
    }
    Ok(())
}

/// The exceptional slope of an exceptional character, with the rank
/// multiplicity of the character over the primitive one.
fn exceptional_slope_of(v: &ChernCharacter) -> Result<(ExceptionalSlope, BigInt)> {
    let mu = v.mu();
    match locate(&QuadraticNumber::from_rational(mu.clone()), DEFAULT_MAX_ORDER) {
        LocateResult::Interior(s) if s.mu() == &mu => {
            let mult = v.rank() / Rational::from(s.rank().clone());
            assert!(mult.is_integer());
            Ok((s, mult.to_integer()))
        }
        _ => Err(Error::NotStable(format!("{v} is not an exceptional character"))),
    }
}

fn rational_to_int(x: Rational, what: &str) -> BigInt {
    assert!(x.is_integer(), "{what} must be an integer, got {x}");
    x.to_integer()
}

fn chi_class_with_slope(w: &Class, e: &ExceptionalSlope) -> Rational {
    w.chi_tensor(&e.character().as_class())
}

/// Cohomology of `v (x) E` for an exceptional bundle of slope `e`: at most
/// one nonzero group, placed by the Euler characteristic and the total
/// slope. Rank-one `v` in the `h2`-active slope range takes its `h2` from
/// the twisted exceptional bundle instead, since the defining subscheme
/// drops out of top cohomology.
pub fn twist_by_exceptional(v: &ChernCharacter, e: &ExceptionalSlope) -> Result<CohomologyReport> {
    require_integral(v)?;
    if v.is_torsion() {
        return Err(Error::Unsupported(
            "torsion classes pair through the torsion rule, not the twist rule".into(),
        ));
    }
    match require_stable(v)? {
        StabilityClass::Exceptional => {
            let (s, mult) = exceptional_slope_of(v)?;
            let (h0, h1, h2) = exc_pair_cohomology(&s, e);
            let chi = (&h0 - &h1 + &h2) * &mult;
            return Ok(CohomologyReport {
                h0: h0 * &mult,
                h1: h1 * &mult,
                h2: h2 * &mult,
                chi,
                region: RegionLabel::ExceptionalPath,
                special: false,
                requires_divisibility: false,
                sufficient_multiple: None,
                notes: Vec::new(),
            }
            .check());
        }
        StabilityClass::PositiveDimensional | StabilityClass::Empty => {}
    }
    let chi = rational_to_int(chi_tensor(v, &e.character())?, "chi");
    let mu_total = v.mu() + e.mu();
    let mut notes = Vec::new();
    let (h0, h1, h2) = if v.rank() == rat_int(1) && mu_total <= rat_int(-3) {
        // v = I_Z(a): top cohomology is that of E(a).
        let a = rational_to_int(v.as_class().c1.clone(), "twisting degree");
        let shift = epsilon(&crate::exceptional::DyadicIndex::new(a, 0));
        let (_, _, h2) = exc_pair_cohomology(e, &shift);
        let h1 = &h2 - &chi;
        assert!(!h1.is_negative());
        notes.push(NOTE_RANK_ONE_H2.to_string());
        (BigInt::zero(), h1, h2)
    } else if chi.is_zero() {
        (BigInt::zero(), BigInt::zero(), BigInt::zero())
    } else if chi.is_negative() {
        (BigInt::zero(), -&chi, BigInt::zero())
    } else if mu_total >= Rational::zero() {
        (chi.clone(), BigInt::zero(), BigInt::zero())
    } else {
        // chi > 0 with total slope in (-3, 0) cannot happen for stable v.
        assert!(mu_total <= rat_int(-3), "slope gap for positive chi");
        (BigInt::zero(), BigInt::zero(), chi.clone())
    };
    Ok(CohomologyReport {
        h0,
        h1,
        h2,
        chi,
        region: RegionLabel::ExceptionalPath,
        special: false,
        requires_divisibility: false,
        sufficient_multiple: None,
        notes,
    }
    .check())
}

use crate::exceptional::epsilon;

/// The moving side of a region test: slope plus K-class. The class may be a
/// formal rank-one stand-in for a plane point; every test below only uses
/// signs of Euler pairings, which are rank-scale invariant.
struct MovingSide {
    mu: Rational,
    class: Class,
    omega_plus: ExceptionalSlope,
}

impl MovingSide {
    fn of_character(w: &ChernCharacter) -> Result<MovingSide> {
        let ce = corresponding_exceptionals(w)?;
        Ok(MovingSide {
            mu: w.mu(),
            class: w.as_class(),
            omega_plus: ce.nu_plus,
        })
    }

    fn of_point(p: &SlopeDiscPoint) -> Result<MovingSide> {
        // Formal rank-one class with the point's slope and discriminant.
        let class = Class::new(
            Rational::one(),
            p.mu.clone(),
            &p.mu * &p.mu * rat(1, 2) - &p.delta,
        );
        let radicand = rat_int(5) + rat_int(8) * &p.delta;
        let root = QuadraticNumber::new(rat(-3, 2) - &p.mu, rat(1, 2), radicand);
        let omega_plus = match locate(&root, DEFAULT_MAX_ORDER) {
            LocateResult::Interior(s)
            | LocateResult::LeftEndpoint(s)
            | LocateResult::RightEndpoint(s) => s,
            LocateResult::DepthExceeded => return Err(Error::DepthExceeded),
        };
        Ok(MovingSide {
            mu: p.mu.clone(),
            class,
            omega_plus,
        })
    }
}

/// Everything about the fixed character a region test needs.
struct FixedSide {
    res: ResolutionData,
    v_class: Class,
    nu_beta: ExceptionalSlope,
    u_plus_mu: Rational,
}

impl FixedSide {
    fn of(v: &ChernCharacter) -> Result<FixedSide> {
        let res = resolution(v)?;
        let nu_beta = mediant_slope(&res.nu_plus, &res.beta);
        let u_plus_mu = u_plus_slope(v, &res);
        Ok(FixedSide {
            v_class: v.as_class(),
            nu_beta,
            u_plus_mu,
            res,
        })
    }
}

fn classify_core(fixed: &FixedSide, moving: &MovingSide) -> Result<(RegionLabel, RegionVerdict)> {
    let res = &fixed.res;
    let nu = &res.nu_plus;
    let beta = &res.beta;
    let omega = &moving.omega_plus;
    let zero = Rational::zero();

    let chi_w_beta = chi_class_with_slope(&moving.class, &beta.negate());
    let chi_w_nu_beta = chi_class_with_slope(&moving.class, &fixed.nu_beta.negate());
    let chi_w_nu = chi_class_with_slope(&moving.class, &nu.negate());
    let chi_k_w = fixed.res.k_char.chi_tensor(&moving.class);
    let chi_v_w = fixed.v_class.chi_tensor(&moving.class);

    let minus_beta = -beta.mu();
    let minus_nu_beta = -fixed.nu_beta.mu();
    let minus_nu = -nu.mu();

    // (I)
    if omega.mu() <= &minus_beta && chi_w_beta >= zero {
        return Ok((RegionLabel::I, RegionVerdict::H1Vanishes));
    }
    // (II)
    if &minus_beta <= omega.mu()
        && omega.mu() <= &minus_nu_beta
        && chi_w_beta <= zero
        && chi_w_nu_beta >= zero
    {
        return Ok((RegionLabel::II, RegionVerdict::H1Vanishes));
    }
    // (III)
    if &minus_nu_beta <= omega.mu()
        && omega.mu() <= &minus_nu
        && chi_w_nu_beta <= zero
        && chi_w_nu >= zero
    {
        if chi_k_w >= zero {
            return Ok((RegionLabel::IIIa, RegionVerdict::H1Vanishes));
        }
        if res.sign_case == SignCase::PositiveChi {
            return Ok((RegionLabel::IIIb, RegionVerdict::SpecialCandidate));
        }
        // Under the nonpositive sign case the would-be IIIb strip belongs
        // to region V and is handled below.
    }

    match res.sign_case {
        SignCase::PositiveChi => {
            // (IVa)-(IVd)
            if chi_v_w >= zero && chi_w_nu <= zero {
                return Ok((RegionLabel::IVa, RegionVerdict::H1Vanishes));
            }
            if moving.mu >= fixed.u_plus_mu && chi_v_w <= zero {
                return Ok((RegionLabel::IVb, RegionVerdict::H0Vanishes));
            }
            let left_of_interval = nu
                .left_end()
                .compare_rational(&moving.mu)
                .is_gt();
            if !left_of_interval && moving.mu <= fixed.u_plus_mu && chi_w_nu <= zero {
                return Ok((RegionLabel::IVc, RegionVerdict::H0Vanishes));
            }
            if left_of_interval {
                return Ok((RegionLabel::IVd, RegionVerdict::H0Vanishes));
            }
        }
        SignCase::NonpositiveChi => {
            // (Va)-(Vd)
            if chi_v_w >= zero && (chi_k_w <= zero || chi_w_nu <= zero) {
                return Ok((RegionLabel::Va, RegionVerdict::H1Vanishes));
            }
            if moving.mu >= fixed.u_plus_mu && chi_v_w <= zero {
                return Ok((RegionLabel::Vb, RegionVerdict::H0Vanishes));
            }
            if nu.mu() <= &moving.mu && moving.mu <= fixed.u_plus_mu {
                return Ok((RegionLabel::Vc, RegionVerdict::H0Vanishes));
            }
            if &moving.mu <= nu.mu() {
                return Ok((RegionLabel::Vd, RegionVerdict::H0Vanishes));
            }
        }
    }
    Err(Error::Unsupported(format!(
        "pair escaped the region decomposition (fixed nu+ = {}, moving slope {})",
        nu.mu(),
        moving.mu
    )))
}

/// Region tests against a fixed character, reusable across many moving
/// sides (grid emission classifies thousands of points against one `v`).
pub struct RegionClassifier {
    fixed: FixedSide,
}

impl RegionClassifier {
    pub fn new(v: &ChernCharacter) -> Result<RegionClassifier> {
        Ok(RegionClassifier {
            fixed: FixedSide::of(v)?,
        })
    }

    pub fn classify(&self, w: &ChernCharacter) -> Result<RegionLabel> {
        let moving = MovingSide::of_character(w)?;
        Ok(classify_core(&self.fixed, &moving)?.0)
    }

    /// Region of a formal point of the (slope, discriminant) plane. The
    /// caller only passes points on or above the stability curve.
    pub fn classify_point(&self, p: &SlopeDiscPoint) -> Result<RegionLabel> {
        let moving = MovingSide::of_point(p)?;
        Ok(classify_core(&self.fixed, &moving)?.0)
    }
}

/// Region of the pair `(v, w)`: `v` positive rank with positive-dimensional
/// moduli (or rank one), `w` positive rank stable with moduli.
pub fn classify_region(v: &ChernCharacter, w: &ChernCharacter) -> Result<RegionLabel> {
    RegionClassifier::new(v)?.classify(w)
}

/// Region of a formal point of the (slope, discriminant) plane relative to
/// `v`; see [`RegionClassifier::classify_point`].
pub fn classify_region_point(v: &ChernCharacter, p: &SlopeDiscPoint) -> Result<RegionLabel> {
    RegionClassifier::new(v)?.classify_point(p)
}

/// Special-case values carried by region IIIb: `h0` is the product of the
/// two evaluation counts, `h1` is minus the pairing with the complex class.
fn special_values(fixed: &FixedSide, w_class: &Class) -> (BigInt, BigInt) {
    let h0 = rational_to_int(
        Rational::from(fixed.res.m3.clone())
            * chi_class_with_slope(w_class, &fixed.res.nu_plus.negate()),
        "special h0",
    );
    let h1 = rational_to_int(-fixed.res.k_char.chi_tensor(w_class), "special h1");
    assert!(!h0.is_negative() && !h1.is_negative());
    (h0, h1)
}

/// Generic `(h0, h1, h2)` of the tensor product of general members of two
/// integral stable characters.
pub fn generic_cohomology(v: &ChernCharacter, w: &ChernCharacter) -> Result<CohomologyReport> {
    require_integral(v)?;
    require_integral(w)?;
    if v.is_torsion() && w.is_torsion() {
        return Err(Error::Unsupported(
            "tensor products of two torsion classes are out of range".into(),
        ));
    }
    // The pairing is symmetric; keep the torsion class on the fixed side.
    let (v, w) = if w.is_torsion() { (w, v) } else { (v, w) };

    if v.is_torsion() {
        require_stable(w)?;
        let chi = rational_to_int(chi_tensor(v, w)?, "chi");
        let (h0, h1) = if chi.is_negative() {
            (BigInt::zero(), -&chi)
        } else {
            (chi.clone(), BigInt::zero())
        };
        return Ok(CohomologyReport {
            h0,
            h1,
            h2: BigInt::zero(),
            chi,
            region: RegionLabel::TorsionPath,
            special: false,
            requires_divisibility: true,
            sufficient_multiple: None,
            notes: Vec::new(),
        }
        .check());
    }

    let stab_v = require_stable(v)?;
    let stab_w = require_stable(w)?;
    if stab_w == StabilityClass::Exceptional {
        let (slope, mult) = exceptional_slope_of(w)?;
        return Ok(scale_report(twist_by_exceptional(v, &slope)?, &mult));
    }
    if stab_v == StabilityClass::Exceptional {
        let (slope, mult) = exceptional_slope_of(v)?;
        return Ok(scale_report(twist_by_exceptional(w, &slope)?, &mult));
    }

    // Standard path: both sides have positive-dimensional moduli.
    let chi = rational_to_int(chi_tensor(v, w)?, "chi");
    let mu_total = v.mu() + w.mu();
    let fixed = FixedSide::of(v)?;
    let moving = MovingSide::of_character(w)?;
    let (label, verdict) = classify_core(&fixed, &moving)?;

    let mut notes = Vec::new();
    let mut region = label;
    let mut special = false;

    let (h0, h1, h2) = if verdict == RegionVerdict::SpecialCandidate {
        let (h0, h1) = special_values(&fixed, &moving.class);
        special = h0.is_positive() && h1.is_positive();
        debug_assert!(h0.is_zero() || mu_total >= Rational::zero());
        (h0, h1, BigInt::zero())
    } else if mu_total >= Rational::zero() {
        match verdict {
            RegionVerdict::H1Vanishes => {
                assert!(!chi.is_negative(), "vanishing h1 needs chi >= 0");
                (chi.clone(), BigInt::zero(), BigInt::zero())
            }
            RegionVerdict::H0Vanishes => {
                assert!(!chi.is_positive(), "vanishing h0 needs chi <= 0");
                (BigInt::zero(), -&chi, BigInt::zero())
            }
            RegionVerdict::SpecialCandidate => unreachable!(),
        }
    } else if mu_total > rat_int(-3) {
        assert!(!chi.is_positive(), "middle slope band needs chi <= 0");
        (BigInt::zero(), -&chi, BigInt::zero())
    } else if v.rank() == rat_int(1) {
        // Ideal-sheaf side: h2 survives restriction to the subscheme.
        let a = rational_to_int(v.as_class().c1.clone(), "twisting degree");
        let twist = epsilon(&crate::exceptional::DyadicIndex::new(a, 0));
        let h2 = twist_by_exceptional(w, &twist)?.h2;
        let h1 = &h2 - &chi;
        assert!(!h1.is_negative());
        notes.push(NOTE_RANK_ONE_H2.to_string());
        (BigInt::zero(), h1, h2)
    } else {
        // Slope at most -3: classify the Serre-dual pair to settle h1/h2.
        let vd = v.serre_dual()?;
        let wd = w.dual()?;
        let fixed_d = FixedSide::of(&vd)?;
        let moving_d = MovingSide::of_character(&wd)?;
        let (_label_d, verdict_d) = classify_core(&fixed_d, &moving_d)?;
        match verdict_d {
            RegionVerdict::SpecialCandidate => {
                let (h2, h1) = special_values(&fixed_d, &moving_d.class);
                special = h1.is_positive() && h2.is_positive();
                if special {
                    region = RegionLabel::IIIb;
                    notes.push(NOTE_DUAL_SPECIAL.to_string());
                }
                (BigInt::zero(), h1, h2)
            }
            RegionVerdict::H1Vanishes => {
                assert!(!chi.is_negative(), "vanishing h1 needs chi >= 0");
                (BigInt::zero(), BigInt::zero(), chi.clone())
            }
            RegionVerdict::H0Vanishes => {
                assert!(!chi.is_positive(), "vanishing h0 needs chi <= 0");
                (BigInt::zero(), -&chi, BigInt::zero())
            }
        }
    };

    let sufficient_multiple = if chi.is_zero() {
        Some(sufficient_multiple(v, w)?)
    } else {
        None
    };

    Ok(CohomologyReport {
        h0,
        h1,
        h2,
        chi,
        region,
        special,
        requires_divisibility: !region.divisibility_free(),
        sufficient_multiple,
        notes,
    }
    .check())
}

fn scale_report(mut r: CohomologyReport, mult: &BigInt) -> CohomologyReport {
    r.h0 *= mult;
    r.h1 *= mult;
    r.h2 *= mult;
    r.chi *= mult;
    r.check()
}

/// For an orthogonal pair (`chi(v (x) w) = 0`): whether the generic tensor
/// product has no cohomology once the moving character is divisible enough.
/// True exactly when the moving slope clears one of the two corresponding
/// orthogonal slopes; otherwise both `h0` and `h1` are generically nonzero.
pub fn cohomologically_orthogonal(v: &ChernCharacter, w: &ChernCharacter) -> Result<bool> {
    require_integral(v)?;
    require_integral(w)?;
    if v.is_torsion() || w.is_torsion() {
        return Err(Error::Unsupported(
            "orthogonality test needs positive-rank characters".into(),
        ));
    }
    if !chi_tensor(v, w)?.is_zero() {
        return Err(Error::Unsupported(
            "orthogonality test needs chi(v (x) w) = 0".into(),
        ));
    }
    require_stable(w)?;
    let pair = orthogonal_characters(v)?;
    let mu_w = w.mu();
    Ok(mu_w >= pair.u_plus.mu() || mu_w <= pair.u_minus.mu())
}

/// Integral coordinates `(rank, c1, chi)` of an integral character; this
/// basis identifies the integral K-group with Z^3.
fn integral_coords(v: &ChernCharacter) -> (BigInt, BigInt, BigInt) {
    let c = v.as_class();
    let chi = c.chi();
    assert!(c.r.is_integer() && c.c1.is_integer() && chi.is_integer());
    (c.r.to_integer(), c.c1.to_integer(), chi.to_integer())
}

/// Coordinates of the rank-two lattice orthogonal to `v` inside the
/// integral K-group, expressed in a fixed basis.
struct OrthogonalLattice {
    basis: [(BigInt, BigInt, BigInt); 2],
}

impl OrthogonalLattice {
    fn of(v: &ChernCharacter) -> OrthogonalLattice {
        // chi(v (x) u) = (chi_v - r_v) r_u + c1_v c1_u + r_v chi_u.
        let (r, c1, chi) = integral_coords(v);
        let l0 = &chi - &r;
        let l1 = c1;
        let l2 = r;
        let g = l0.gcd(&l1).gcd(&l2);
        let (l0, l1, l2) = (l0 / &g, l1 / &g, l2 / &g);
        let basis = if l1.is_zero() && l2.is_zero() {
            [
                (BigInt::zero(), BigInt::one(), BigInt::zero()),
                (BigInt::zero(), BigInt::zero(), BigInt::one()),
            ]
        } else {
            let e = l1.extended_gcd(&l2);
            let g12 = e.gcd;
            let (u, t) = (e.x, e.y);
            [
                (BigInt::zero(), -&l2 / &g12, &l1 / &g12),
                (g12.clone(), -&u * &l0, -&t * &l0),
            ]
        };
        debug_assert!({
            let dot = |b: &(BigInt, BigInt, BigInt)| &l0 * &b.0 + &l1 * &b.1 + &l2 * &b.2;
            dot(&basis[0]).is_zero() && dot(&basis[1]).is_zero()
        });
        OrthogonalLattice { basis }
    }

    /// Coordinates of an orthogonal integral character in the basis.
    fn coords(&self, u: &ChernCharacter) -> (BigInt, BigInt) {
        let (r, c1, chi) = integral_coords(u);
        let [b1, b2] = &self.basis;
        // b2 is the unique basis vector with nonzero first coordinate
        // (except in the degenerate axis case where b1 = (0,1,0)).
        let (c_b2, rem) = if b2.0.is_zero() {
            // Degenerate case: basis is the coordinate plane r = 0.
            assert!(r.is_zero());
            (c1.clone(), (BigInt::zero(), BigInt::zero(), chi.clone()))
        } else {
            assert!((&r % &b2.0).is_zero());
            let c = &r / &b2.0;
            (
                c.clone(),
                (
                    BigInt::zero(),
                    &c1 - &c * &b2.1,
                    &chi - &c * &b2.2,
                ),
            )
        };
        let c_b1 = if !b1.1.is_zero() {
            assert!((&rem.1 % &b1.1).is_zero());
            &rem.1 / &b1.1
        } else {
            assert!((&rem.2 % &b1.2).is_zero());
            &rem.2 / &b1.2
        };
        debug_assert_eq!(&c_b1 * &b1.1 + &c_b2 * &b2.1, c1);
        debug_assert_eq!(&c_b1 * &b1.2 + &c_b2 * &b2.2, chi);
        (c_b1, c_b2)
    }
}

/// The smallest positive `m` such that `m * w` lies in the sublattice
/// spanned by the corresponding orthogonal characters of `v` inside the
/// orthogonal lattice of `v`; any multiple of the result makes the
/// orthogonal-vanishing construction work.
pub fn sufficient_multiple(v: &ChernCharacter, w: &ChernCharacter) -> Result<BigInt> {
    require_integral(v)?;
    require_integral(w)?;
    if !chi_tensor(v, w)?.is_zero() {
        return Err(Error::Unsupported(
            "sufficient multiple needs chi(v (x) w) = 0".into(),
        ));
    }
    let pair = orthogonal_characters(v)?;
    let lattice = OrthogonalLattice::of(v);
    let (p1, q1) = lattice.coords(&pair.u_plus);
    let (p2, q2) = lattice.coords(&pair.u_minus);
    let det = &p1 * &q2 - &q1 * &p2;
    assert!(!det.is_zero(), "orthogonal characters must be independent");
    let (x, y) = lattice.coords(w);
    // Order of (x, y) in Z^2 / M Z^2 via the adjugate.
    let u1 = &q2 * &x - &p2 * &y;
    let u2 = -&q1 * &x + &p1 * &y;
    let d = det.abs();
    let g = d.gcd(&u1).gcd(&u2);
    Ok(d / g)
}

/// Exponent of the quotient of the orthogonal lattice of `v` by the span of
/// its corresponding orthogonal characters: the worst-case sufficient
/// multiple over all orthogonal `w`.
pub fn orthogonal_lattice_exponent(v: &ChernCharacter) -> Result<BigInt> {
    require_integral(v)?;
    let pair = orthogonal_characters(v)?;
    let lattice = OrthogonalLattice::of(v);
    let (p1, q1) = lattice.coords(&pair.u_plus);
    let (p2, q2) = lattice.coords(&pair.u_minus);
    let det = (&p1 * &q2 - &q1 * &p2).abs();
    assert!(!det.is_zero());
    let d1 = p1.gcd(&q1).gcd(&p2).gcd(&q2);
    Ok(det / d1)
}

/// One-directional global generation verdicts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GgVerdict {
    Guaranteed,
    NotImplied,
}

impl fmt::Display for GgVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GgVerdict::Guaranteed => "guaranteed",
            GgVerdict::NotImplied => "not-implied",
        })
    }
}

fn require_moduli_character(v: &ChernCharacter) -> Result<()> {
    require_integral(v)?;
    match require_stable(v)? {
        StabilityClass::PositiveDimensional => Ok(()),
        _ => Err(Error::NotStable(format!(
            "{v} must have positive-dimensional moduli (exceptional pairs go through the exceptional rules)"
        ))),
    }
}

/// Sufficient criterion for the sheaf-Hom from the general member of `w` to
/// the general member of `v` to be globally generated: the primary slope of
/// `v` at most two above the secondary slope of `w`.
pub fn hom_globally_generated(v: &ChernCharacter, w: &ChernCharacter) -> Result<GgVerdict> {
    require_moduli_character(v)?;
    require_moduli_character(w)?;
    let nu_plus = corresponding_exceptionals(v)?.nu_plus;
    let omega_minus = corresponding_exceptionals(w)?
        .nu_minus
        .expect("positive rank has a secondary slope");
    Ok(if nu_plus.mu() - omega_minus.mu() <= rat_int(2) {
        GgVerdict::Guaranteed
    } else {
        GgVerdict::NotImplied
    })
}

/// Sufficient criterion for the general tensor product to be globally
/// generated: primary slopes summing to at most -1.
pub fn tensor_globally_generated(v: &ChernCharacter, w: &ChernCharacter) -> Result<GgVerdict> {
    require_moduli_character(v)?;
    require_moduli_character(w)?;
    let a = corresponding_exceptionals(v)?.nu_plus;
    let b = corresponding_exceptionals(w)?.nu_plus;
    Ok(if a.mu() + b.mu() <= rat_int(-1) {
        GgVerdict::Guaranteed
    } else {
        GgVerdict::NotImplied
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exceptional::epsilon_int;

    fn v_figure() -> ChernCharacter {
        ChernCharacter::of(4, 4, (-7, 1))
    }

    fn w_special() -> ChernCharacter {
        ChernCharacter::of(8, 1, (-17, 2))
    }

    fn h(r: &CohomologyReport) -> (i64, i64, i64) {
        use num::ToPrimitive;
        (
            r.h0.to_i64().unwrap(),
            r.h1.to_i64().unwrap(),
            r.h2.to_i64().unwrap(),
        )
    }

    #[test]
    fn twist_examples() {
        let v = v_figure();
        let r = twist_by_exceptional(&v, &epsilon_int(0)).unwrap();
        assert_eq!(h(&r), (3, 0, 0));
        let r = twist_by_exceptional(&v, &epsilon_int(-1)).unwrap();
        assert_eq!(h(&r), (0, 5, 0));
        let r = twist_by_exceptional(&v, &epsilon_int(1)).unwrap();
        assert_eq!(h(&r), (15, 0, 0));
    }

    #[test]
    fn twist_rank_one_top_cohomology() {
        // I_p: chi(I_p(-3)) = 0 but both h1 and h2 are 1.
        let v = ChernCharacter::of(1, 0, (-1, 1));
        let r = twist_by_exceptional(&v, &epsilon_int(-3)).unwrap();
        assert_eq!(h(&r), (0, 1, 1));
        assert!(!r.notes.is_empty());
    }

    #[test]
    fn region_examples() {
        let v = v_figure();
        assert_eq!(classify_region(&v, &w_special()).unwrap(), RegionLabel::IIIb);
        let u_plus = ChernCharacter::of(4, 1, (-11, 2));
        assert_eq!(classify_region(&v, &u_plus).unwrap(), RegionLabel::IIIa);
        // Exceptional moving side is rejected before region logic.
        assert!(classify_region(&v, &ChernCharacter::line_bundle(5)).is_err());
    }

    #[test]
    fn special_pair_report() {
        let v = v_figure();
        let r = generic_cohomology(&v, &w_special()).unwrap();
        assert_eq!(h(&r), (3, 3, 0));
        assert!(r.special);
        assert_eq!(r.region, RegionLabel::IIIb);
        assert!(!r.requires_divisibility);
        assert_eq!(r.chi, BigInt::zero());
    }

    #[test]
    fn serre_dual_of_special_pair() {
        let v = v_figure().serre_dual().unwrap();
        let w = w_special().dual().unwrap();
        let r = generic_cohomology(&v, &w).unwrap();
        assert_eq!(h(&r), (0, 3, 3));
        assert!(r.special);
        assert_eq!(r.region, RegionLabel::IIIb);
        assert!(r.notes.iter().any(|n| n == NOTE_DUAL_SPECIAL));
    }

    #[test]
    fn orthogonal_pair_vanishes() {
        let v = v_figure();
        let pair = orthogonal_characters(&v).unwrap();
        let r = generic_cohomology(&v, &pair.u_plus).unwrap();
        assert_eq!(h(&r), (0, 0, 0));
        let r = generic_cohomology(&v, &pair.u_minus).unwrap();
        assert_eq!(h(&r), (0, 0, 0));
    }

    #[test]
    fn exceptional_path() {
        let v = v_figure();
        let r = generic_cohomology(&v, &ChernCharacter::line_bundle(1)).unwrap();
        assert_eq!(h(&r), (15, 0, 0));
        assert_eq!(r.region, RegionLabel::ExceptionalPath);
        // Symmetric: exceptional fixed side.
        let r = generic_cohomology(&ChernCharacter::line_bundle(1), &v).unwrap();
        assert_eq!(h(&r), (15, 0, 0));
    }

    #[test]
    fn torsion_path() {
        let t = ChernCharacter::torsion(BigInt::from(1), BigInt::from(0));
        let w = ChernCharacter::line_bundle(1);
        let r = generic_cohomology(&t, &w).unwrap();
        assert_eq!(h(&r), (1, 0, 0));
        assert_eq!(r.region, RegionLabel::TorsionPath);
        // Symmetric placement.
        let r = generic_cohomology(&w, &t).unwrap();
        assert_eq!(h(&r), (1, 0, 0));
        // Negative side.
        let t = ChernCharacter::torsion(BigInt::from(2), BigInt::from(-9));
        let v = ChernCharacter::of(2, 0, (-6, 1));
        let r = generic_cohomology(&t, &v).unwrap();
        assert_eq!(r.chi, BigInt::from(-18));
        assert_eq!(h(&r), (0, 18, 0));
        assert!(generic_cohomology(
            &t,
            &ChernCharacter::torsion(BigInt::one(), BigInt::zero())
        )
        .is_err());
    }

    #[test]
    fn orthogonality_criterion() {
        let v = v_figure();
        let pair = orthogonal_characters(&v).unwrap();
        assert!(cohomologically_orthogonal(&v, &pair.u_plus).unwrap());
        assert!(cohomologically_orthogonal(&v, &pair.u_minus).unwrap());
        assert!(!cohomologically_orthogonal(&v, &w_special()).unwrap());
        assert!(cohomologically_orthogonal(&v, &ChernCharacter::line_bundle(0)).is_err());
    }

    #[test]
    fn sufficient_multiple_basics() {
        let v = v_figure();
        let pair = orthogonal_characters(&v).unwrap();
        assert_eq!(sufficient_multiple(&v, &pair.u_plus).unwrap(), BigInt::one());
        assert_eq!(sufficient_multiple(&v, &pair.u_minus).unwrap(), BigInt::one());
        let exponent = orthogonal_lattice_exponent(&v).unwrap();
        assert!(exponent >= BigInt::one());
        // Reproducible and bounding: the per-character multiple divides it.
        assert_eq!(exponent, orthogonal_lattice_exponent(&v).unwrap());
        let m = sufficient_multiple(&v, &w_special()).unwrap();
        assert!(m >= BigInt::one());
        assert!((&exponent % &m).is_zero());
    }

    #[test]
    fn global_generation_thresholds() {
        let v = v_figure(); // primary slope 0
        let w = ChernCharacter::of(1, -1, (-1, 2)); // secondary slope -2
        assert_eq!(hom_globally_generated(&v, &w).unwrap(), GgVerdict::Guaranteed);
        let w = ChernCharacter::of(2, 0, (-6, 1)); // secondary slope -4
        assert_eq!(hom_globally_generated(&v, &w).unwrap(), GgVerdict::NotImplied);
        // Tensor criterion at the threshold.
        let a = ChernCharacter::of(4, 8, (-1, 1)); // primary slope -1
        assert_eq!(
            corresponding_exceptionals(&a).unwrap().nu_plus.mu(),
            &rat_int(-1)
        );
        assert_eq!(tensor_globally_generated(&a, &v).unwrap(), GgVerdict::Guaranteed);
        assert_eq!(tensor_globally_generated(&v, &v).unwrap(), GgVerdict::NotImplied);
    }
}
