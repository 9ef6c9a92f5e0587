//! Multiplicative characters of (ℤ/p^m)^× and unitary characters of ℚ_p^×
//! for odd p.
//!
//! A [`UnitCharacter`] is stored as an exponent `k` against the canonical
//! primitive root `g` of (ℤ/p^m)^×: χ(g) = e^{2πik/N}, N = φ(p^m). The
//! canonical root is the least primitive root modulo p that stays primitive
//! modulo p², so one integer `g` serves every level and promoting a character
//! to a higher level is just scaling `k`.
//!
//! A [`PadicCharacter`] is ω = β·|·|^{s}: a unit part β, a torsion phase
//! giving ω(p) = e^{2πi·phase}, and an integer multiple of one symbolic
//! purely imaginary parameter `s` that never enters conductor arithmetic.

use std::fmt;

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{self, canonical_primitive_root, checked_pow, mul_mod, phi_prime_power, valuation};
use crate::error::{domain, Error, Result};
use crate::rational::{self, frac_part, rat, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "UnitWire", into = "UnitWire")]
pub struct UnitCharacter {
    p: u64,
    m: u32,
    k: u64,
}

#[derive(Serialize, Deserialize)]
struct UnitWire {
    p: u64,
    m: u32,
    k: u64,
}

impl TryFrom<UnitWire> for UnitCharacter {
    type Error = Error;
    fn try_from(w: UnitWire) -> Result<Self> {
        UnitCharacter::new(w.p, w.m, w.k)
    }
}

impl From<UnitCharacter> for UnitWire {
    fn from(c: UnitCharacter) -> Self {
        UnitWire { p: c.p, m: c.m, k: c.k }
    }
}

impl UnitCharacter {
    pub fn new(p: u64, m: u32, k: u64) -> Result<Self> {
        arith::require_odd_prime(p)?;
        let n = phi_prime_power(p, m)?;
        if k >= n {
            return domain(format!("exponent {k} out of range [0, {n}) for p = {p}, m = {m}"));
        }
        Ok(UnitCharacter { p, m, k })
    }

    pub fn trivial(p: u64) -> Result<Self> {
        Self::new(p, 0, 0)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn level(&self) -> u32 {
        self.m
    }

    pub fn exponent(&self) -> u64 {
        self.k
    }

    /// |(ℤ/p^m)^×|, the modulus of the exponent.
    pub fn group_order(&self) -> u64 {
        // validated at construction
        phi_prime_power(self.p, self.m).expect("group order fits")
    }

    /// Least f with χ trivial on 1 + p^f.
    ///
    /// Closed form: the subgroup 1 + p^f (f ≥ 1) is generated by
    /// g^{(p-1)p^{f-1}}, on which χ takes the value e^{2πik/p^{m-f}}.
    pub fn conductor_exponent(&self) -> u32 {
        if self.k == 0 {
            return 0;
        }
        let v = valuation(self.k, self.p);
        if v + 1 >= self.m {
            1
        } else {
            self.m - v
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.k == 0
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor_exponent() == self.m
    }

    pub fn order(&self) -> u64 {
        let n = self.group_order();
        n / self.k.gcd(&n)
    }

    /// Re-express at a level ≥ the current one.
    pub fn promote(&self, level: u32) -> Result<Self> {
        if level < self.m {
            return domain(format!("cannot promote level {} down to {level}", self.m));
        }
        let n = phi_prime_power(self.p, level)?;
        let k = if self.m == 0 {
            0
        } else {
            self.k * checked_pow(self.p, level - self.m)?
        };
        debug_assert!(k < n);
        Ok(UnitCharacter { p: self.p, m: level, k })
    }

    /// The same character presented at its conductor level.
    pub fn reduced(&self) -> Self {
        let c = self.conductor_exponent();
        if c == self.m {
            return self.clone();
        }
        if c == 0 {
            return UnitCharacter { p: self.p, m: 0, k: 0 };
        }
        let scale = self.p.pow(self.m - c);
        UnitCharacter { p: self.p, m: c, k: self.k / scale }
    }

    /// Equality as characters, regardless of presentation level.
    pub fn same_character(&self, other: &Self) -> bool {
        self.reduced() == other.reduced()
    }

    fn check_same_p(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return domain(format!("characters at different primes {} and {}", self.p, other.p));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_p(other)?;
        let level = self.m.max(other.m);
        let a = self.promote(level)?;
        let b = other.promote(level)?;
        let n = a.group_order();
        Ok(UnitCharacter { p: self.p, m: level, k: ((a.k as u128 + b.k as u128) % n as u128) as u64 })
    }

    pub fn inverse(&self) -> Self {
        let n = self.group_order();
        UnitCharacter { p: self.p, m: self.m, k: (n - self.k) % n }
    }

    pub fn pow(&self, e: i64) -> Self {
        let n = self.group_order() as i128;
        let k = (self.k as i128 * e as i128).rem_euclid(n) as u64;
        UnitCharacter { p: self.p, m: self.m, k }
    }

    /// Nontrivial with trivial square.
    pub fn is_quadratic(&self) -> bool {
        self.order() == 2
    }

    pub fn primitive_root(&self) -> u64 {
        canonical_primitive_root(self.p).expect("validated odd prime")
    }
}

impl fmt::Display for UnitCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "χ[p={}, m={}, k={}]", self.p, self.m, self.k)
    }
}

/// The unique nontrivial character of ℤ_p^× with trivial square: level 1,
/// exponent (p-1)/2, conductor exponent 1.
pub fn quadratic_character(p: u64) -> Result<UnitCharacter> {
    arith::require_odd_prime(p)?;
    UnitCharacter::new(p, 1, (p - 1) / 2)
}

/// All characters of (ℤ/p^m)^×, or only the primitive ones.
pub fn enumerate_unit_characters(p: u64, m: u32, only_primitive: bool) -> Result<Vec<UnitCharacter>> {
    arith::require_odd_prime(p)?;
    if m == 0 {
        return domain("enumeration needs level m ≥ 1");
    }
    let n = phi_prime_power(p, m)?;
    Ok((0..n)
        .map(|k| UnitCharacter { p, m, k })
        .filter(|c| !only_primitive || c.is_primitive())
        .collect())
}

/// Roots of unity shared by all Gauss sums modulo p^m.
struct GaussTables {
    modulus: u64,
    n: u64,
    g: u64,
    additive: Vec<Complex64>,
    multiplicative: Vec<Complex64>,
}

impl GaussTables {
    fn new(p: u64, m: u32) -> Result<Self> {
        let modulus = checked_pow(p, m)?;
        let n = phi_prime_power(p, m)?;
        let g = canonical_primitive_root(p)? % modulus;
        let tau = std::f64::consts::TAU;
        let additive = (0..modulus).map(|u| Complex64::from_polar(1.0, tau * u as f64 / modulus as f64)).collect();
        // χ̄(g^j) = e^{-2πi kj/N}
        let multiplicative = (0..n).map(|t| Complex64::from_polar(1.0, -tau * t as f64 / n as f64)).collect();
        Ok(GaussTables { modulus, n, g, additive, multiplicative })
    }

    fn sum(&self, k: u64) -> Complex64 {
        let mut acc = Complex64::zero();
        let (mut u, mut kj) = (1u64, 0u64);
        for _ in 0..self.n {
            acc += self.additive[u as usize] * self.multiplicative[kj as usize];
            u = mul_mod(u, self.g, self.modulus);
            kj += k;
            if kj >= self.n {
                kj -= self.n;
            }
        }
        acc
    }
}

/// τ(χ̄) = Σ_{u mod p^m} χ̄(u) e^{2πiu/p^m} for χ primitive at its level m ≥ 1.
pub fn gauss_sum(chi: &UnitCharacter) -> Result<Complex64> {
    if chi.m == 0 || !chi.is_primitive() {
        return domain(format!(
            "{chi} is not primitive at its presentation level (conductor exponent {})",
            chi.conductor_exponent()
        ));
    }
    Ok(GaussTables::new(chi.p, chi.m)?.sum(chi.k))
}

/// Gauss sums of every primitive character modulo p^m at once.
///
/// With u = g^j the sum over k is Σ_j e(g^j/p^m)·e^{-2πikj/N}, a length-N
/// discrete Fourier transform, so all N sums cost one FFT.
pub fn gauss_sums(p: u64, m: u32) -> Result<Vec<(UnitCharacter, Complex64)>> {
    let chars = enumerate_unit_characters(p, m, true)?;
    let modulus = checked_pow(p, m)?;
    let n = phi_prime_power(p, m)?;
    let g = canonical_primitive_root(p)? % modulus;
    let mut buf = Vec::with_capacity(n as usize);
    let mut u = 1u64;
    for _ in 0..n {
        buf.push(Complex64::from_polar(1.0, std::f64::consts::TAU * u as f64 / modulus as f64));
        u = mul_mod(u, g, modulus);
    }
    rustfft::FftPlanner::new().plan_fft_forward(n as usize).process(&mut buf);
    Ok(chars.into_iter().map(|c| {
        let t = buf[c.k as usize];
        (c, t)
    }).collect())
}

/// Jacobi symbol (a/n) for odd n ≥ 1, by quadratic reciprocity.
pub fn jacobi_symbol(a: i64, n: u64) -> Result<i8> {
    if n == 0 || n % 2 == 0 {
        return domain(format!("Jacobi symbol needs an odd positive modulus, got {n}"));
    }
    let mut a = (a as i128).rem_euclid(n as i128) as u64;
    let mut n = n;
    let mut sign = 1i8;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    Ok(if n == 1 { sign } else { 0 })
}

/// A unitary character of ℚ_p^×, modulo the continuous unramified family.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PadicWire", into = "PadicWire")]
pub struct PadicCharacter {
    unit: UnitCharacter,
    phase: Rational,
    s_coeff: i64,
}

#[derive(Serialize, Deserialize)]
struct PadicWire {
    p: u64,
    m: u32,
    k: u64,
    phase: String,
    generic: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    s_coeff: Option<i64>,
}

impl TryFrom<PadicWire> for PadicCharacter {
    type Error = Error;
    fn try_from(w: PadicWire) -> Result<Self> {
        let unit = UnitCharacter::new(w.p, w.m, w.k)?;
        let phase = rational::from_wire(&w.phase)?;
        let s = w.s_coeff.unwrap_or(if w.generic { 1 } else { 0 });
        if (s != 0) != w.generic {
            return domain("\"generic\" disagrees with \"s_coeff\"");
        }
        PadicCharacter::with_continuous(unit, phase, s)
    }
}

impl From<PadicCharacter> for PadicWire {
    fn from(c: PadicCharacter) -> Self {
        PadicWire {
            p: c.unit.p,
            m: c.unit.m,
            k: c.unit.k,
            phase: rational::to_wire(&c.phase),
            generic: c.s_coeff != 0,
            s_coeff: if c.s_coeff == 0 || c.s_coeff == 1 { None } else { Some(c.s_coeff) },
        }
    }
}

impl PadicCharacter {
    pub fn new(unit: UnitCharacter, phase: Rational, generic: bool) -> Result<Self> {
        Self::with_continuous(unit, phase, i64::from(generic))
    }

    /// `s_coeff` counts copies of the symbolic parameter s, so that ω and ω⁻¹
    /// carry opposite continuous parts and their product is exactly trivial.
    pub fn with_continuous(unit: UnitCharacter, phase: Rational, s_coeff: i64) -> Result<Self> {
        if phase < Rational::zero() || phase >= rat(1, 1) {
            return domain(format!("phase {} not in [0, 1)", rational::to_wire(&phase)));
        }
        Ok(PadicCharacter { unit, phase, s_coeff })
    }

    pub fn from_unit(unit: UnitCharacter) -> Self {
        PadicCharacter { unit, phase: Rational::zero(), s_coeff: 0 }
    }

    pub fn trivial(p: u64) -> Result<Self> {
        Ok(Self::from_unit(UnitCharacter::trivial(p)?))
    }

    /// The unramified character with ω(p) = e^{2πi·phase}.
    pub fn unramified(p: u64, phase: Rational) -> Result<Self> {
        Self::new(UnitCharacter::trivial(p)?, frac_part(&phase), false)
    }

    /// |·|^{πi/log p}: the unramified quadratic character (value −1 at p).
    pub fn unramified_quadratic(p: u64) -> Result<Self> {
        Self::unramified(p, rat(1, 2))
    }

    pub fn p(&self) -> u64 {
        self.unit.p
    }

    pub fn unit(&self) -> &UnitCharacter {
        &self.unit
    }

    pub fn phase(&self) -> &Rational {
        &self.phase
    }

    pub fn s_coeff(&self) -> i64 {
        self.s_coeff
    }

    pub fn generic(&self) -> bool {
        self.s_coeff != 0
    }

    pub fn conductor_exponent(&self) -> u32 {
        self.unit.conductor_exponent()
    }

    pub fn is_unramified(&self) -> bool {
        self.unit.is_trivial()
    }

    pub fn is_trivial(&self) -> bool {
        self.unit.is_trivial() && self.phase.is_zero() && self.s_coeff == 0
    }

    /// ω² = 1 (the trivial character included).
    pub fn is_quadratic(&self) -> bool {
        self.s_coeff == 0
            && self.unit.order() <= 2
            && (self.phase.is_zero() || self.phase == rat(1, 2))
    }

    /// Unit part equal to the quadratic character of ℤ_p^×.
    pub fn has_quadratic_unit_part(&self) -> bool {
        self.unit.is_quadratic()
    }

    /// Same character up to presentation level of the unit part.
    pub fn same_character(&self, other: &Self) -> bool {
        self.unit.same_character(&other.unit) && self.phase == other.phase && self.s_coeff == other.s_coeff
    }

    /// Canonical form: unit part at its conductor level.
    pub fn reduced(&self) -> Self {
        PadicCharacter { unit: self.unit.reduced(), phase: self.phase.clone(), s_coeff: self.s_coeff }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        Ok(PadicCharacter {
            unit: self.unit.mul(&other.unit)?,
            phase: frac_part(&(&self.phase + &other.phase)),
            s_coeff: self.s_coeff + other.s_coeff,
        })
    }

    pub fn inverse(&self) -> Self {
        PadicCharacter {
            unit: self.unit.inverse(),
            phase: frac_part(&-self.phase.clone()),
            s_coeff: -self.s_coeff,
        }
    }

    pub fn pow(&self, e: i64) -> Self {
        PadicCharacter {
            unit: self.unit.pow(e),
            phase: frac_part(&(&self.phase * Rational::from_integer(e.into()))),
            s_coeff: self.s_coeff * e,
        }
    }

    pub fn square(&self) -> Self {
        self.pow(2)
    }
}

impl fmt::Display for PadicCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·phase {}", self.unit, rational::to_wire(&self.phase))?;
        if self.s_coeff != 0 {
            write!(f, "·|·|^({}s)", self.s_coeff)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ch(p: u64, m: u32, k: u64) -> UnitCharacter {
        UnitCharacter::new(p, m, k).unwrap()
    }

    #[test]
    fn conductor_examples() {
        assert_eq!(ch(3, 2, 0).conductor_exponent(), 0);
        assert_eq!(ch(3, 2, 3).conductor_exponent(), 1);
        assert_eq!(ch(3, 2, 2).conductor_exponent(), 2);
        assert_eq!(ch(7, 2, 21).conductor_exponent(), 1);
    }

    #[test]
    fn construction_rejects_bad_inputs() {
        assert!(UnitCharacter::new(9, 1, 0).is_err());
        assert!(matches!(UnitCharacter::new(2, 1, 0), Err(Error::Unsupported(_))));
        assert!(UnitCharacter::new(3, 0, 1).is_err());
        assert!(UnitCharacter::new(3, 2, 6).is_err());
    }

    #[test]
    fn arithmetic_examples() {
        let chi = ch(7, 2, 5);
        assert!(chi.mul(&chi.inverse()).unwrap().is_trivial());
        assert_eq!(ch(3, 1, 1).mul(&ch(3, 1, 1)).unwrap(), ch(3, 1, 0));
        let sq = ch(5, 1, 1).pow(2);
        assert_eq!(sq, ch(5, 1, 2));
        assert_eq!(sq.conductor_exponent(), 1);
        assert!(ch(3, 1, 1).mul(&ch(5, 1, 1)).is_err());
        // mixed levels promote to the larger one
        let prod = ch(3, 1, 1).mul(&ch(3, 2, 2)).unwrap();
        assert_eq!(prod, ch(3, 2, 5));
    }

    #[test]
    fn reduction_and_promotion() {
        let c = ch(3, 3, 9);
        assert_eq!(c.reduced(), ch(3, 1, 1));
        assert_eq!(ch(3, 1, 1).promote(3).unwrap(), c);
        assert!(ch(3, 2, 3).same_character(&ch(3, 1, 1)));
        assert_eq!(ch(3, 2, 0).reduced(), UnitCharacter::trivial(3).unwrap());
    }

    #[test]
    fn quadratic_characters() {
        assert_eq!(quadratic_character(3).unwrap(), ch(3, 1, 1));
        assert_eq!(quadratic_character(5).unwrap(), ch(5, 1, 2));
        assert_eq!(quadratic_character(7).unwrap(), ch(7, 1, 3));
        assert!(matches!(quadratic_character(2), Err(Error::Unsupported(_))));
        for p in [3u64, 5, 7, 11, 13] {
            let quads: Vec<_> = enumerate_unit_characters(p, 1, false)
                .unwrap()
                .into_iter()
                .filter(|c| !c.is_trivial() && c.pow(2).is_trivial())
                .collect();
            assert_eq!(quads, vec![quadratic_character(p).unwrap()]);
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_unit_characters(3, 2, true).unwrap().len(), 4);
        assert_eq!(enumerate_unit_characters(3, 1, false).unwrap().len(), 2);
        assert_eq!(enumerate_unit_characters(5, 1, true).unwrap().len(), 3);
        assert!(enumerate_unit_characters(5, 0, true).is_err());
    }

    #[test]
    fn gauss_sum_examples() {
        let t = gauss_sum(&ch(3, 1, 1)).unwrap();
        assert!(t.re.abs() < 1e-12);
        assert!((t.im - 3f64.sqrt()).abs() < 1e-12);
        // primitive order-3 character mod 9: k = 2 (order 6/gcd(2,6) = 3)
        assert!((gauss_sum(&ch(3, 2, 2)).unwrap().norm_sqr() - 9.0).abs() < 1e-9);
        assert!((gauss_sum(&ch(7, 1, 3)).unwrap().norm_sqr() - 7.0).abs() < 1e-9);
        assert!(gauss_sum(&ch(3, 2, 3)).is_err());
        assert!(gauss_sum(&UnitCharacter::trivial(3).unwrap()).is_err());
        let all = gauss_sums(5, 2).unwrap();
        assert_eq!(all.len(), 16);
        for (chi, t) in all {
            assert!((t - gauss_sum(&chi).unwrap()).norm() < 1e-9);
            assert!((t.norm_sqr() - 25.0).abs() < 1e-9);
        }
    }

    #[test]
    fn jacobi_examples() {
        assert_eq!(jacobi_symbol(2, 3).unwrap(), -1);
        assert_eq!(jacobi_symbol(3, 7).unwrap(), -1);
        assert_eq!(jacobi_symbol(12345, 1).unwrap(), 1);
        assert_eq!(jacobi_symbol(-1, 1).unwrap(), 1);
        assert_eq!(jacobi_symbol(6, 9).unwrap(), 0);
        assert_eq!(jacobi_symbol(-1, 7).unwrap(), -1);
        assert!(jacobi_symbol(3, 8).is_err());
        assert!(jacobi_symbol(3, 0).is_err());
    }

    #[test]
    fn jacobi_matches_euler_criterion() {
        for p in [3u64, 5, 7, 11, 13, 17, 19, 23] {
            for a in 0..3 * p as i64 {
                let e = arith::pow_mod(a as u64 % p, (p - 1) / 2, p);
                let want = if e == 0 { 0 } else if e == 1 { 1 } else { -1 };
                assert_eq!(jacobi_symbol(a, p).unwrap(), want, "({a}/{p})");
            }
        }
    }

    #[test]
    fn padic_characters() {
        let p = 5;
        let beta = PadicCharacter::from_unit(quadratic_character(p).unwrap());
        assert!(beta.is_quadratic());
        let unr = PadicCharacter::unramified_quadratic(p).unwrap();
        assert!(unr.is_quadratic() && unr.is_unramified());
        assert!(unr.square().is_trivial());
        let generic = PadicCharacter::new(ch(p, 1, 1), rat(1, 3), true).unwrap();
        assert!(!generic.is_quadratic());
        assert!(generic.mul(&generic.inverse()).unwrap().is_trivial());
        assert!(PadicCharacter::new(ch(p, 1, 1), rat(3, 2), false).is_err());
    }

    #[test]
    fn padic_json_shape() {
        let c = PadicCharacter::new(ch(7, 2, 21), rat(1, 2), true).unwrap();
        let v = serde_json::to_value(&c).unwrap();
        assert_eq!(v, serde_json::json!({"p": 7, "m": 2, "k": 21, "phase": "1/2", "generic": true}));
        let back: PadicCharacter = serde_json::from_value(v).unwrap();
        assert_eq!(back, c);
        let inv = c.inverse();
        let v = serde_json::to_value(&inv).unwrap();
        assert_eq!(v["s_coeff"], -1);
        assert_eq!(serde_json::from_value::<PadicCharacter>(v).unwrap(), inv);
        assert!(serde_json::from_str::<PadicCharacter>(
            r#"{"p":4,"m":1,"k":0,"phase":"0/1","generic":false}"#
        )
        .is_err());
    }
}
