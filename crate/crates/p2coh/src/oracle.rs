//! Independent verification engines.
//!
//! `kronecker_hom_oracle` computes the generic hom dimension between two
//! Kronecker modules by sampling the defining matrices over a prime field
//! and measuring the kernel of the intertwining system; non-generic loci are
//! proper closed subsets defined over the prime field, so the minimum over
//! a few trials is the generic value with failure probability `O(1/p)`.
//!
//! `delta_brute_force` evaluates the stability curve as a finite sup over
//! the exceptional slopes up to a given order.

use num::bigint::BigInt;
use num::{Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chern::hilbert_p;
use crate::error::{Error, Result};
use crate::exceptional::{enumerate_slopes, ExceptionalSlope};
use crate::kronecker::{euler_form, KroneckerShape};
use crate::quadratic::{rat_int, Rational};

/// Configuration for the finite-field oracle. Deterministic given `seed`.
#[derive(Clone, Debug)]
pub struct OracleConfig {
    pub prime: u64,
    pub trials: u32,
    pub seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            prime: 32003,
            trials: 5,
            seed: 0,
        }
    }
}

impl OracleConfig {
    pub fn validate(&self) -> Result<()> {
        if self.prime >= 1 << 31 {
            return Err(Error::OracleConfig(format!(
                "prime {} too large for word arithmetic",
                self.prime
            )));
        }
        if !is_prime(self.prime) {
            return Err(Error::OracleConfig(format!("{} is not prime", self.prime)));
        }
        if self.trials == 0 {
            return Err(Error::OracleConfig("need at least one trial".into()));
        }
        Ok(())
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Dense row-major matrix over `F_p`.
struct ModMatrix {
    rows: usize,
    cols: usize,
    p: u64,
    data: Vec<u64>,
}

impl ModMatrix {
    fn zeros(rows: usize, cols: usize, p: u64) -> Self {
        ModMatrix {
            rows,
            cols,
            p,
            data: vec![0; rows * cols],
        }
    }

    fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.p;
    }

    fn rank(mut self) -> usize {
        let p = self.p;
        let mut rank = 0;
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let pivot = (row..self.rows).find(|&i| self.data[i * self.cols + col] != 0);
            let Some(pivot) = pivot else { continue };
            self.data.swap_range(pivot, row, self.cols);
            let inv = mod_inverse(self.data[row * self.cols + col], p);
            for i in (row + 1)..self.rows {
                let factor = self.data[i * self.cols + col];
                if factor == 0 {
                    continue;
                }
                let scale = factor * inv % p;
                let (head, tail) = self.data.split_at_mut(i * self.cols);
                let src = &head[row * self.cols + col..(row + 1) * self.cols];
                let dst = &mut tail[col..self.cols];
                for (d, s) in dst.iter_mut().zip(src) {
                    *d = (*d + (p - scale) * *s % p) % p;
                }
            }
            row += 1;
            rank += 1;
        }
        rank
    }
}

trait SwapRange {
    fn swap_range(&mut self, i: usize, j: usize, width: usize);
}

impl SwapRange for Vec<u64> {
    fn swap_range(&mut self, i: usize, j: usize, width: usize) {
        if i == j {
            return;
        }
        let (lo, hi) = if i < j { (i, j) } else { (j, i) };
        let (a, b) = self.split_at_mut(hi * width);
        a[lo * width..(lo + 1) * width].swap_with_slice(&mut b[..width]);
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat: p is prime and a != 0 mod p.
    mod_pow(a % p, p - 2, p)
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

fn to_dim(x: &BigInt, what: &str) -> Result<usize> {
    x.to_usize()
        .filter(|&v| v <= 1 << 12)
        .ok_or_else(|| Error::OracleConfig(format!("{what} dimension {x} too large for the oracle")))
}

/// Generic `hom` between general modules of vectors `f` and `e`: minimum
/// kernel dimension of the intertwining system over `trials` samples.
///
/// A homomorphism is a pair `(beta, alpha)` with `e_k beta = alpha f_k` for
/// each of the `N` sampled matrix pairs; the kernel of that linear system in
/// the entries of `beta` and `alpha` is measured exactly over `F_p`.
pub fn kronecker_hom_oracle(
    f: &KroneckerShape,
    e: &KroneckerShape,
    cfg: &OracleConfig,
) -> Result<u64> {
    cfg.validate()?;
    if f.n != e.n {
        return Err(Error::Unsupported(format!(
            "mismatched arrow counts {} and {}",
            f.n, e.n
        )));
    }
    let n = to_dim(&f.n, "arrow")?;
    let bp = to_dim(&f.b, "b'")?;
    let ap = to_dim(&f.a, "a'")?;
    let b = to_dim(&e.b, "b")?;
    let a = to_dim(&e.a, "a")?;
    let max_entry = [bp, ap, b, a].into_iter().max().unwrap() as u64;
    if cfg.prime <= 2 * max_entry {
        return Err(Error::OracleConfig(format!(
            "prime {} not larger than twice the max dimension {}",
            cfg.prime, max_entry
        )));
    }

    // hom >= chi and hom >= 0 always; a trial attaining the bound is generic.
    let chi = euler_form(f, e)?;
    let floor = if chi.is_negative() {
        0u64
    } else {
        chi.to_u64()
            .ok_or_else(|| Error::OracleConfig("Euler form too large for the oracle".into()))?
    };

    let unknowns = b * bp + a * ap;
    let mut best: Option<u64> = None;
    for trial in 0..cfg.trials {
        let mut rng = ChaCha8Rng::seed_from_u64(
            cfg.seed ^ (trial as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15),
        );
        let sample =
            |rng: &mut ChaCha8Rng, rows: usize, cols: usize| -> Vec<u64> {
                (0..rows * cols).map(|_| rng.gen_range(0..cfg.prime)).collect()
            };
        // N matrices of the target (a x b) and the source (a' x b').
        let e_mats: Vec<Vec<u64>> = (0..n).map(|_| sample(&mut rng, a, b)).collect();
        let f_mats: Vec<Vec<u64>> = (0..n).map(|_| sample(&mut rng, ap, bp)).collect();

        // Unknowns: beta (b x b') then alpha (a x a'), row-major.
        // Equation (k, i, j): sum_m e_k[i,m] beta[m,j] - sum_m alpha[i,m] f_k[m,j] = 0.
        let rows = n * a * bp;
        let mut mat = ModMatrix::zeros(rows, unknowns, cfg.prime);
        let mut row = 0;
        for (ek, fk) in e_mats.iter().zip(&f_mats) {
            for i in 0..a {
                for j in 0..bp {
                    for m in 0..b {
                        mat.set(row, m * bp + j, ek[i * b + m]);
                    }
                    for m in 0..ap {
                        let v = fk[m * bp + j] % cfg.prime;
                        mat.set(row, b * bp + i * ap + m, (cfg.prime - v) % cfg.prime);
                    }
                    row += 1;
                }
            }
        }
        let kernel = (unknowns - mat.rank()) as u64;
        best = Some(best.map_or(kernel, |cur| cur.min(kernel)));
        if best == Some(floor) {
            break;
        }
    }
    Ok(best.expect("at least one trial"))
}

/// Precomputed slope table for brute-force evaluation of the stability
/// curve over many rational slopes.
pub struct CurveSampler {
    // Low orders first so the running max prunes aggressively.
    slopes: Vec<(ExceptionalSlope, BigInt)>, // (slope, rank^2)
}

impl CurveSampler {
    /// Table of all exceptional slopes of order at most `max_order` in
    /// `[lo, hi]`.
    pub fn new(lo: &Rational, hi: &Rational, max_order: u32) -> CurveSampler {
        let mut slopes: Vec<_> = enumerate_slopes(lo, hi, max_order)
            .into_iter()
            .map(|s| {
                let r2 = s.rank() * s.rank();
                (s, r2)
            })
            .collect();
        slopes.sort_by_key(|(s, _)| s.order());
        CurveSampler { slopes }
    }

    /// Finite sup `max P(-|mu - a|) - D_a` over the tabled slopes within
    /// distance 3 of `mu`. Bounded above by the exact curve, with equality
    /// whenever the controlling slope is in the table.
    pub fn value(&self, mu: &Rational) -> Rational {
        let three = rat_int(3);
        let mut best: Option<Rational> = None;
        for (s, r2) in &self.slopes {
            if let Some(b) = &best {
                // Contribution is at most P(0) - D = 1/2 + 1/(2 r^2): skip
                // when the running max already clears that, by the integer
                // test (2 num(b) - den(b)) r^2 >= den(b).
                let num2 = b.numer() * 2u32 - b.denom();
                if !num2.is_negative() && num2 * r2 >= *b.denom() {
                    continue;
                }
            }
            let dist = (mu - s.mu()).abs();
            if dist >= three {
                continue;
            }
            let value = hilbert_p(&-dist) - s.disc();
            if best.as_ref().is_none_or(|b| &value > b) {
                best = Some(value);
            }
        }
        best.expect("an integer slope is always within reach")
    }
}

/// Finite sup defining the stability curve: max over exceptional slopes of
/// order at most `max_order` within distance 3 of `mu` of
/// `P(-|mu - a|) - D_a`. Bounded above by the exact curve, with equality
/// whenever the controlling slope's order is within the bound.
pub fn delta_brute_force(mu: &Rational, max_order: u32) -> Rational {
    let lo = mu - rat_int(3);
    let hi = mu + rat_int(3);
    CurveSampler::new(&lo, &hi, max_order).value(mu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kronecker::general_hom_ext;
    use crate::quadratic::rat;
    use num::Zero;

    #[test]
    fn oracle_matches_counts() {
        let cfg = OracleConfig::default();
        let hom = kronecker_hom_oracle(
            &KroneckerShape::of(3, 1, 3),
            &KroneckerShape::of(3, 3, 8),
            &cfg,
        )
        .unwrap();
        assert_eq!(hom, 3);

        let hom = kronecker_hom_oracle(
            &KroneckerShape::of(3, 3, 8),
            &KroneckerShape::of(3, 3, 8),
            &cfg,
        )
        .unwrap();
        assert_eq!(hom, 1);

        let hom = kronecker_hom_oracle(
            &KroneckerShape::of(3, 0, 1),
            &KroneckerShape::of(3, 1, 3),
            &cfg,
        )
        .unwrap();
        assert_eq!(hom, 3);

        // Doubly-unstable witness with both hom and ext nonzero.
        let f = KroneckerShape::of(3, 4, 11);
        let e = KroneckerShape::of(3, 1, 4);
        let (h, x) = general_hom_ext(&f, &e).unwrap();
        assert_eq!((h, x), (BigInt::from(1), BigInt::from(1)));
        assert_eq!(kronecker_hom_oracle(&f, &e, &cfg).unwrap(), 1);
    }

    #[test]
    fn oracle_config_validation() {
        let bad = OracleConfig {
            prime: 32004,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let small = OracleConfig {
            prime: 5,
            ..Default::default()
        };
        // Prime must exceed twice the max dimension entry.
        assert!(kronecker_hom_oracle(
            &KroneckerShape::of(3, 1, 3),
            &KroneckerShape::of(3, 3, 8),
            &small
        )
        .is_err());
    }

    #[test]
    fn brute_force_curve() {
        assert_eq!(delta_brute_force(&rat_int(0), 0), rat_int(1));
        assert_eq!(delta_brute_force(&rat(1, 2), 1), rat(5, 8));
        assert_eq!(delta_brute_force(&rat(1, 8), 5), rat(105, 128));
        // Monotone in the order bound and below the exact value.
        let mu = rat(2, 5);
        let mut prev = Rational::zero();
        for q in 0..=6 {
            let v = delta_brute_force(&mu, q);
            assert!(v >= prev);
            prev = v;
        }
        assert_eq!(prev, crate::exceptional::delta(&mu).unwrap());
    }
}
