//! Monomial (CM) forms attached to a real quadratic field ℚ(√D).
//!
//! A Hecke character of E = ℚ(√D) that is unramified at both real places is
//! |·|_{w₁}^{s}|·|_{w₂}^{−s} up to finite data, and it must be trivial on the
//! units. On the fundamental unit ε₀ this forces s·Φ(ε₀) ∈ 2πiℤ + θ with
//! Φ(ε₀) = log(|ε₀|_{w₁}/|ε₀|_{w₂}) = 2 log ε₀. So the spectral parameters
//! t = −is of monomial forms lie on translates of the lattice (π/log ε₀)ℤ,
//! and their number up to T grows linearly in T.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::arith::is_squarefree;
use crate::error::{domain, Result};

fn as_string<S: Serializer>(n: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RealQuadraticField {
    #[serde(rename = "D")]
    pub d: u64,
    pub disc: u64,
    /// ε₀ = (a + b√D)/2.
    #[serde(serialize_with = "as_string")]
    pub a: BigInt,
    #[serde(serialize_with = "as_string")]
    pub b: BigInt,
    pub unit_norm: i8,
    pub regulator: f64,
}

impl RealQuadraticField {
    /// (a² − D·b²)/4, computed exactly; `None` if 4 does not divide.
    pub fn pell_value(&self) -> Option<BigInt> {
        let n = &self.a * &self.a - BigInt::from(self.d) * &self.b * &self.b;
        let (quo, rem) = n.div_rem(&BigInt::from(4));
        rem.is_zero().then_some(quo)
    }
}

fn ln_big(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        n.to_f64().expect("fits").ln()
    } else {
        let shift = bits - 64;
        (n >> shift).to_f64().expect("fits").ln() + shift as f64 * std::f64::consts::LN_2
    }
}

/// log ε₀ from a alone: a/2 = cosh(log ε₀) for norm +1, sinh(log ε₀) for −1.
fn regulator(a: &BigInt, norm: i8) -> f64 {
    if a.bits() > 60 {
        return ln_big(a);
    }
    let h = a.to_f64().expect("small") / 2.0;
    if norm > 0 {
        h.acosh()
    } else {
        h.asinh()
    }
}

/// Fundamental unit of the maximal order of ℚ(√D), from the continued
/// fraction of (P₀ + √D)/Q₀ with (P₀, Q₀) = (1, 2) if D ≡ 1 mod 4 and (0, 1)
/// otherwise. The first return of Q to Q₀ closes a period.
pub fn fundamental_unit(d: u64) -> Result<RealQuadraticField> {
    if d <= 1 || !is_squarefree(d) {
        return domain(format!("D = {d} must be squarefree and greater than 1"));
    }
    let s = d.sqrt() as i128;
    let di = d as i128;
    let (p0, q0): (i128, i128) = if d % 4 == 1 { (1, 2) } else { (0, 1) };
    let (mut p, mut q) = (p0, q0);
    let (mut a_prev, mut a_cur) = (BigInt::from(0), BigInt::from(1));
    let (mut b_prev, mut b_cur) = (BigInt::from(1), BigInt::from(0));
    let mut i = 0u64;
    loop {
        let num = if q > 0 { p + s } else { p + s + 1 };
        let partial_i = Integer::div_floor(&num, &q);
        let partial = BigInt::from(partial_i);
        let a_next = &partial * &a_cur + &a_prev;
        let b_next = &partial * &b_cur + &b_prev;
        (a_prev, a_cur) = (a_cur, a_next);
        (b_prev, b_cur) = (b_cur, b_next);
        let pq = partial_i * q - p;
        q = (di - pq * pq) / q;
        p = pq;
        i += 1;
        if q == q0 {
            break;
        }
    }
    let g = BigInt::from(q0) * &a_cur - BigInt::from(p0) * &b_cur;
    let (a, b) = if q0 == 2 { (g, b_cur) } else { (2 * g, 2 * b_cur) };
    let unit_norm: i8 = if i % 2 == 0 { 1 } else { -1 };
    let field = RealQuadraticField {
        d,
        disc: if d % 4 == 1 { d } else { 4 * d },
        regulator: regulator(&a, unit_norm),
        a,
        b,
        unit_norm,
    };
    debug_assert_eq!(field.pell_value(), Some(BigInt::from(unit_norm)));
    Ok(field)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MonomialLatticeReport {
    #[serde(rename = "D")]
    pub d: u64,
    pub field: RealQuadraticField,
    /// Φ(ε₀) = 2 log ε₀.
    pub phi_epsilon0: f64,
    /// Δt = 2π/Φ(ε₀).
    pub spacing: f64,
    /// Rank of the image of Φ: one real place pair over ℚ.
    pub lattice_rank: u32,
}

impl MonomialLatticeReport {
    /// Per-coset count of admissible t with |t| ≤ T: ⌊2T/Δt⌋ + 1.
    pub fn count_bound(&self, t: f64, cosets: u64) -> Result<u64> {
        if !(t > 0.0 && t.is_finite()) {
            return domain(format!("T = {t} must be a positive real"));
        }
        if cosets == 0 {
            return domain("cosets must be positive");
        }
        let per = (2.0 * t / self.spacing).floor();
        if per >= u64::MAX as f64 {
            return domain(format!("T = {t} is too large to count"));
        }
        (per as u64 + 1)
            .checked_mul(cosets)
            .ok_or_else(|| crate::Error::Domain("count overflows 64 bits".into()))
    }
}

pub fn monomial_spacing(d: u64) -> Result<MonomialLatticeReport> {
    let field = fundamental_unit(d)?;
    let phi = 2.0 * field.regulator;
    Ok(MonomialLatticeReport { d, phi_epsilon0: phi, spacing: 2.0 * std::f64::consts::PI / phi, field, lattice_rank: 1 })
}

/// Upper bound on monomial spectral parameters |t| ≤ T over `cosets`
/// finite-character cosets.
pub fn monomial_count_bound(d: u64, t: f64, cosets: u64) -> Result<u64> {
    monomial_spacing(d)?.count_bound(t, cosets)
}

/// Is there a unit (x + y√D)/2 with x, y ≥ 1 and y < `b_limit`? Direct search.
#[cfg(test)]
fn smaller_unit_by_search(d: u64, b_limit: u64) -> Option<(u64, u64)> {
    (1..b_limit).find_map(|y| {
        let dy2 = d as u128 * y as u128 * y as u128;
        [dy2 + 4, dy2.saturating_sub(4)].into_iter().find_map(|x2| {
            let x = x2.sqrt();
            (x > 0 && x * x == x2).then_some((x as u64, y))
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn unit(d: u64) -> (i64, i64, i8) {
        let f = fundamental_unit(d).unwrap();
        (f.a.to_i64().unwrap(), f.b.to_i64().unwrap(), f.unit_norm)
    }

    #[test]
    fn small_units() {
        assert_eq!(unit(5), (1, 1, -1));
        assert_eq!(unit(2), (2, 2, -1));
        assert_eq!(unit(3), (4, 2, 1));
        assert_eq!(unit(13), (3, 1, -1));
        assert_eq!(unit(21), (5, 1, 1));
        assert_eq!(unit(94), (4286590, 442128, 1));
        let f = fundamental_unit(199).unwrap();
        assert_eq!(f.a.to_string(), "32532393040");
        assert_eq!(f.b.to_string(), "2306160198");
        assert!(fundamental_unit(4).is_err());
        assert!(fundamental_unit(1).is_err());
    }

    #[test]
    fn pell_identity_up_to_ten_thousand() {
        for d in 2..=10_000u64 {
            if !is_squarefree(d) {
                continue;
            }
            let f = fundamental_unit(d).unwrap();
            assert_eq!(f.pell_value(), Some(BigInt::from(f.unit_norm)), "D = {d}");
            assert!(f.a.is_positive() && f.b.is_positive());
            assert!(f.regulator > 0.0);
            // maximal-order parity
            assert_eq!(f.a.is_even(), (BigInt::from(d) * &f.b).is_even());
        }
    }

    #[test]
    fn minimality_by_search() {
        for d in 2..=200u64 {
            if !is_squarefree(d) {
                continue;
            }
            let f = fundamental_unit(d).unwrap();
            let b = f.b.to_u64().unwrap();
            if b <= 200_000 {
                assert_eq!(smaller_unit_by_search(d, b), None, "D = {d}");
            }
        }
    }

    /// Every unit > 1 is a power of the fundamental one, so ε₀ is minimal iff
    /// it has no k-th root η > 1 in the ring for k ≥ 2.
    #[test]
    fn minimality_by_roots() {
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        for d in 2..=200u64 {
            if !is_squarefree(d) {
                continue;
            }
            let f = fundamental_unit(d).unwrap();
            let kmax = (f.regulator / golden.ln()).floor() as u32;
            for k in 2..=kmax.max(1) {
                let eta = (f.regulator / k as f64).exp();
                for n in [1.0, -1.0] {
                    let trace = (eta + n / eta).round() as u128;
                    // η = (trace + y√D)/2 with trace² − D·y² = 4·n
                    let t2 = trace * trace;
                    let rhs = if n > 0.0 { t2.checked_sub(4) } else { Some(t2 + 4) };
                    if let Some(rhs) = rhs {
                        if rhs > 0 && rhs % d as u128 == 0 {
                            let y = (rhs / d as u128).sqrt();
                            assert!(y * y * d as u128 != rhs, "D = {d}: ε₀ is a {k}-th power");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn spacing_values() {
        let cases = [(5, 6.52850260527, 0.962423650119), (3, 2.38549209578, 2.63391579385), (2, 3.56442795638, 1.76274717404), (13, 2.62946884214, 2.38952643457)];
        for (d, dt, phi) in cases {
            let r = monomial_spacing(d).unwrap();
            assert!((r.spacing - dt).abs() < 1e-9, "D = {d}");
            assert!((r.phi_epsilon0 - phi).abs() < 1e-9, "D = {d}");
            assert!((r.spacing * r.phi_epsilon0 - 2.0 * std::f64::consts::PI).abs() < 1e-12);
        }
    }

    #[test]
    fn count_bounds() {
        assert_eq!(monomial_count_bound(5, 6.5289, 1).unwrap(), 3);
        assert_eq!(monomial_count_bound(5, 1e-9, 1).unwrap(), 1);
        assert_eq!(monomial_count_bound(5, 6.5289, 4).unwrap(), 12);
        let expected = [(5, 307, 3064), (3, 839, 8385), (2, 562, 5611), (13, 761, 7607)];
        for (d, c3, c4) in expected {
            assert_eq!(monomial_count_bound(d, 1e3, 1).unwrap(), c3);
            assert_eq!(monomial_count_bound(d, 1e4, 1).unwrap(), c4);
        }
        for t in [1e3, 1e4] {
            let r = monomial_count_bound(5, 2.0 * t, 1).unwrap() as f64 / monomial_count_bound(5, t, 1).unwrap() as f64;
            assert!((r - 2.0).abs() < 0.02);
        }
        assert!(monomial_count_bound(5, 0.0, 1).is_err());
        assert!(monomial_count_bound(5, 1.0, 0).is_err());
    }
}
