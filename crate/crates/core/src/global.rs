//! Global consequences over ℚ: densities of newforms paired with their
//! quadratic twists, multiplicity lower bounds, the Γ₁(p^m) multiplicity and
//! the n₀ stability predictor.
//!
//! The holomorphic analogue (weight k → ∞ over even integers) has exactly the
//! same density, so [`density`] covers it as well.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{self, factorize, is_squarefree};
use crate::charmod::{enumerate_unit_characters, jacobi_symbol};
use crate::error::{domain, unsupported, Error, Result};
use crate::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelFactorization {
    pub q: u64,
    pub factors: Vec<(u64, u32)>,
    /// Number of odd p with p² | q.
    pub s: u32,
    /// Product of the odd p with p² | q.
    pub q_prime_max: u64,
}

impl LevelFactorization {
    pub fn new(q: u64) -> Result<Self> {
        if q == 0 {
            return domain("level must be positive");
        }
        let factors = factorize(q);
        let square_odd: Vec<u64> = factors.iter().filter(|&&(p, e)| p != 2 && e >= 2).map(|&(p, _)| p).collect();
        Ok(LevelFactorization { q, s: square_odd.len() as u32, q_prime_max: square_odd.iter().product(), factors })
    }

    pub fn exponent_of(&self, p: u64) -> u32 {
        self.factors.iter().find(|&&(r, _)| r == p).map_or(0, |&(_, e)| e)
    }
}

/// 1 − p/(p² − p − 1) = (p² − 2p − 1)/(p² − p − 1).
pub fn local_density_factor(p: u64) -> Rational {
    let p = p as i64;
    rational::rat(p * p - 2 * p - 1, p * p - p - 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeFactor {
    pub p: u64,
    pub e: u32,
    #[serde(with = "crate::rational::wire")]
    pub factor: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DensityReport {
    pub q: u64,
    pub q_prime: u64,
    pub feasible: bool,
    #[serde(with = "crate::rational::wire")]
    pub density: Rational,
    pub factors: Vec<PrimeFactor>,
    /// The same density holds on the intersection of the nonmonomial space
    /// with the twist-paired space.
    pub intersection_note: bool,
}

/// Proportion of nonmonomial newforms of level q whose twist by the quadratic
/// character of conductor q′ again has level q. Zero when some p | q′ has
/// p² ∤ q, since then no such newform exists.
pub fn density(q: u64, q_prime: u64) -> Result<DensityReport> {
    if q_prime <= 1 || q_prime % 2 == 0 || !is_squarefree(q_prime) {
        return domain(format!("q' = {q_prime} must be odd, squarefree and greater than 1"));
    }
    let level = LevelFactorization::new(q)?;
    let mut feasible = true;
    let mut dens = Rational::one();
    let mut factors = Vec::new();
    for (p, _) in factorize(q_prime) {
        let e = level.exponent_of(p);
        let factor = match e {
            0 | 1 => {
                feasible = false;
                Rational::zero()
            }
            2 => local_density_factor(p),
            _ => Rational::one(),
        };
        dens *= &factor;
        factors.push(PrimeFactor { p, e, factor });
    }
    if !feasible {
        dens = Rational::zero();
    }
    Ok(DensityReport { q, q_prime, feasible, density: dens, factors, intersection_note: true })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicityReport {
    pub q: u64,
    pub s: u32,
    pub bound: u64,
    #[serde(with = "crate::rational::wire")]
    pub density: Rational,
}

/// A positive proportion of the newforms of level q occur with multiplicity at
/// least 2^{s(q)}; this returns the bound and that proportion.
pub fn multiplicity_bound(q: u64) -> Result<MultiplicityReport> {
    let level = LevelFactorization::new(q)?;
    let mut dens = Rational::one();
    for &(p, e) in &level.factors {
        // p = 2 lies outside the quadratic-character theory
        if p != 2 && e == 2 {
            dens *= local_density_factor(p);
        }
    }
    Ok(MultiplicityReport { q, s: level.s, bound: 1u64 << level.s, density: dens })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum N0Branch {
    Squarefree,
    Nonsquarefree,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct N0Witness {
    pub q_star: u64,
    pub least_prime: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct N0Prediction {
    pub q: u64,
    pub value: u64,
    pub branch: N0Branch,
    pub q_prime: u64,
    pub witnesses: Vec<N0Witness>,
}

fn least_prime_not_dividing(q: u64) -> u64 {
    let mut p = 2;
    while q % p == 0 {
        p = arith::next_prime(p);
    }
    p
}

/// Least prime p ∤ q with (p / q*) = −1, searched below 2·(q*)².
fn least_inert_prime(q: u64, q_star: u64) -> Result<u64> {
    let cap = 2u128 * q_star as u128 * q_star as u128;
    let mut p = 2u64;
    while (p as u128) < cap {
        if q % p != 0 && jacobi_symbol(p as i64, q_star)? == -1 {
            return Ok(p);
        }
        p = arith::next_prime(p);
    }
    Err(Error::SearchExhausted(format!("no prime p < {cap} with (p/{q_star}) = -1 and p not dividing {q}")))
}

/// The conjectured n₀(q): the least prime not dividing q for squarefree q,
/// otherwise the maximum over divisors q* > 1 of q′ of the least prime p ∤ q
/// that is inert for the quadratic character of conductor q*.
pub fn n0_prediction(q: u64) -> Result<N0Prediction> {
    if q == 0 || q % 2 == 0 {
        return unsupported(format!("n0 is conjectured for odd levels only (got {q})"));
    }
    let level = LevelFactorization::new(q)?;
    if is_squarefree(q) {
        let value = least_prime_not_dividing(q);
        return Ok(N0Prediction { q, value, branch: N0Branch::Squarefree, q_prime: 1, witnesses: Vec::new() });
    }
    let primes: Vec<u64> = factorize(level.q_prime_max).iter().map(|&(p, _)| p).collect();
    let mut witnesses = Vec::new();
    for mask in 1u64..(1 << primes.len()) {
        let q_star: u64 = primes.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, p)| p).product();
        witnesses.push(N0Witness { q_star, least_prime: least_inert_prime(q, q_star)? });
    }
    witnesses.sort_by_key(|w| w.q_star);
    let value = witnesses.iter().map(|w| w.least_prime).max().expect("q' > 1 has a divisor");
    Ok(N0Prediction { q, value, branch: N0Branch::Nonsquarefree, q_prime: level.q_prime_max, witnesses })
}

/// Lower bound p^{⌊m/2⌋−2}(p−1)² for multiplicities in the newforms of
/// Γ₁(p^m), m ≥ 4.
pub fn gamma1_multiplicity(p: u64, m: u32) -> Result<u64> {
    arith::require_odd_prime(p)?;
    if m < 4 {
        return domain(format!("m = {m}: the Γ₁(p^m) bound needs m ≥ 4"));
    }
    Ok(arith::checked_pow(p, m / 2 - 2)? * (p - 1) * (p - 1))
}

/// Number of primitive characters modulo p^{⌊m/2⌋}, by enumeration.
pub fn primitive_character_count(p: u64, level: u32) -> Result<u64> {
    Ok(enumerate_unit_characters(p, level, true)?.len() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn factorization() {
        let f = LevelFactorization::new(2025).unwrap();
        assert_eq!((f.s, f.q_prime_max), (2, 15));
        let f = LevelFactorization::new(4 * 9 * 7).unwrap();
        assert_eq!((f.s, f.q_prime_max), (1, 3));
        let f = LevelFactorization::new(1).unwrap();
        assert_eq!((f.s, f.q_prime_max), (0, 1));
        assert!(LevelFactorization::new(0).is_err());
    }

    #[test]
    fn densities() {
        let r = density(9, 3).unwrap();
        assert!(r.feasible);
        assert_eq!(r.density, rat(2, 5));
        let r = density(15, 3).unwrap();
        assert!(!r.feasible);
        assert_eq!(r.density, int(0));
        assert_eq!(density(27, 3).unwrap().density, int(1));
        assert_eq!(density(225, 15).unwrap().density, rat(28, 95));
        assert_eq!(density(2025, 15).unwrap().density, rat(14, 19));
        assert_eq!(density(36, 3).unwrap().density, rat(2, 5));
        assert!(density(9, 1).is_err());
        assert!(density(9, 6).is_err());
        assert!(density(9, 9).is_err());
    }

    #[test]
    fn density_multiplicative_in_q_prime() {
        let q = 9 * 25 * 49;
        let whole = density(q, 105).unwrap().density;
        let parts = density(q, 3).unwrap().density * density(q, 5).unwrap().density * density(q, 7).unwrap().density;
        assert_eq!(whole, parts);
    }

    #[test]
    fn multiplicities() {
        let cases = [(9, 2, rat(2, 5)), (6, 1, int(1)), (27, 2, int(1)), (45, 2, rat(2, 5)), (225, 4, rat(28, 95)), (2025, 4, rat(14, 19))];
        for (q, bound, dens) in cases {
            let r = multiplicity_bound(q).unwrap();
            assert_eq!((r.bound, r.density), (bound, dens), "q = {q}");
        }
        let r = multiplicity_bound(4).unwrap();
        assert_eq!((r.bound, r.density), (1, int(1)));
    }

    #[test]
    fn n0_values() {
        let cases = [(49, 3), (9, 2), (15, 2), (1, 2), (225, 7), (2025, 7), (441, 5), (1225, 3)];
        for (q, v) in cases {
            assert_eq!(n0_prediction(q).unwrap().value, v, "q = {q}");
        }
        assert_eq!(n0_prediction(49).unwrap().branch, N0Branch::Nonsquarefree);
        assert_eq!(n0_prediction(105).unwrap().value, 2);
        assert_eq!(n0_prediction(3 * 5 * 7 * 11 * 13).unwrap().value, 2);
        assert!(n0_prediction(6).is_err());
        assert_eq!(n0_prediction(225).unwrap().witnesses.len(), 3);
    }

    #[test]
    fn gamma1() {
        assert_eq!(gamma1_multiplicity(3, 4).unwrap(), 4);
        assert_eq!(gamma1_multiplicity(5, 4).unwrap(), 16);
        assert_eq!(gamma1_multiplicity(3, 7).unwrap(), 12);
        assert!(gamma1_multiplicity(3, 3).is_err());
        for p in [3u64, 5, 7] {
            for m in 4..=9 {
                assert_eq!(gamma1_multiplicity(p, m).unwrap(), primitive_character_count(p, m / 2).unwrap());
            }
        }
    }
}
