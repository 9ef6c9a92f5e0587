//! Brute-force ground truth for the character and twist calculus.
//!
//! Everything here is computed from explicit multiplication tables of
//! (ℤ/p^m)^× and exhaustive searches, sharing nothing with the closed forms
//! in [`crate::charmod`] beyond the exponent encoding of characters. The
//! primitive root is found by walking powers, not by the order test used
//! elsewhere.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::charmod::{PadicCharacter, UnitCharacter};
use crate::error::{domain, unsupported, Result};
use crate::rational::{rat, Rational};
use crate::replocal::{atkin_li_bound, trivial_central_ps, Exactness, LocalRep, ScType};

/// Largest modulus the oracle will tabulate, and largest prime it accepts.
const MAX_TABLE: u64 = 10_000_000;
const MAX_PRIME: u64 = 1_000;

#[derive(Debug)]
pub struct GroupTable {
    pub p: u64,
    pub m: u32,
    pub modulus: u64,
    pub g: u64,
    pub order: u64,
    dlog: Vec<u64>,
}

const NOT_A_UNIT: u64 = u64::MAX;

fn order_by_walking(x: u64, modulus: u64) -> u64 {
    let mut y = x % modulus;
    let mut n = 1;
    while y != 1 {
        y = (y as u128 * x as u128 % modulus as u128) as u64;
        n += 1;
    }
    n
}

fn is_small_odd_prime(p: u64) -> bool {
    p >= 3 && p % 2 == 1 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl GroupTable {
    fn build(p: u64, m: u32) -> Result<Self> {
        if !is_small_odd_prime(p) {
            return domain(format!("oracle needs an odd prime, got {p}"));
        }
        let modulus = p.checked_pow(m).filter(|&n| n <= MAX_TABLE && p < MAX_PRIME);
        let Some(modulus) = modulus else {
            return unsupported(format!("{p}^{m} is beyond the oracle's table size"));
        };
        // least g whose order modulo p² is p(p − 1)
        let p2 = p * p;
        let g = (2..p).find(|&g| order_by_walking(g, p2) == p * (p - 1)).expect("primitive roots exist");
        let mut dlog = vec![NOT_A_UNIT; modulus as usize];
        let mut order = 0u64;
        let mut x = 1 % modulus;
        if modulus == 1 {
            dlog[0] = 0;
            order = 1;
        } else {
            loop {
                dlog[x as usize] = order;
                order += 1;
                x = (x as u128 * g as u128 % modulus as u128) as u64;
                if x == 1 {
                    break;
                }
            }
        }
        Ok(GroupTable { p, m, modulus, g, order, dlog })
    }

    /// Memoized table for (ℤ/p^m)^×.
    pub fn get(p: u64, m: u32) -> Result<Arc<GroupTable>> {
        static CACHE: OnceLock<Mutex<HashMap<(u64, u32), Arc<GroupTable>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(t) = cache.lock().expect("cache lock").get(&(p, m)) {
            return Ok(t.clone());
        }
        let table = Arc::new(Self::build(p, m)?);
        Ok(cache.lock().expect("cache lock").entry((p, m)).or_insert(table).clone())
    }

    pub fn dlog(&self, u: u64) -> Option<u64> {
        let d = self.dlog[(u % self.modulus) as usize];
        (d != NOT_A_UNIT).then_some(d)
    }

    pub fn units(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.modulus).filter(|&u| self.dlog[u as usize] != NOT_A_UNIT)
    }
}

/// χ(u) = e^{2πi·phase}, phase = k·log_g(u)/N mod 1.
pub fn char_eval(chi: &UnitCharacter, u: u64) -> Result<Rational> {
    if u % chi.p() == 0 {
        return domain(format!("{u} is not a unit modulo {}", chi.p()));
    }
    let t = GroupTable::get(chi.p(), chi.level())?;
    let d = t.dlog(u).expect("coprime to p");
    let num = (chi.exponent() as u128 * d as u128 % t.order as u128) as i64;
    Ok(rat(num, t.order as i64))
}

/// A character of ℤ_p^× given as a pointwise product of simple pieces.
#[derive(Clone, Debug)]
pub struct OracleChar {
    p: u64,
    atoms: Vec<Atom>,
}

#[derive(Clone, Debug)]
enum Atom {
    /// u ↦ e^{2πi k log_g(u)/φ(p^m)}, through the table at level m.
    Exponent { m: u32, k: u64 },
    /// The Legendre symbol, through Euler's criterion.
    Legendre,
}

impl OracleChar {
    pub fn of(chi: &UnitCharacter) -> Self {
        OracleChar { p: chi.p(), atoms: vec![Atom::Exponent { m: chi.level(), k: chi.exponent() }] }
    }

    pub fn legendre(p: u64) -> Self {
        OracleChar { p, atoms: vec![Atom::Legendre] }
    }

    pub fn times(&self, other: &OracleChar) -> OracleChar {
        assert_eq!(self.p, other.p);
        OracleChar { p: self.p, atoms: self.atoms.iter().chain(&other.atoms).cloned().collect() }
    }

    fn level(&self) -> u32 {
        self.atoms.iter().map(|a| if let Atom::Exponent { m, .. } = a { *m } else { 1 }).max().unwrap_or(0)
    }

    /// Is χ(u) = 1? Phases are summed over a common denominator.
    fn trivial_at(&self, u: u64) -> Result<bool> {
        let top = self.level();
        let common = GroupTable::get(self.p, top)?.order as u128;
        let mut acc = 0u128;
        for atom in &self.atoms {
            match *atom {
                Atom::Exponent { m, k } => {
                    let t = GroupTable::get(self.p, m)?;
                    let d = t.dlog(u).expect("unit") as u128;
                    acc += k as u128 * d % t.order as u128 * (common / t.order as u128);
                }
                Atom::Legendre => {
                    let e = pow_mod_u128(u % self.p, (self.p - 1) / 2, self.p);
                    if e != 1 {
                        acc += common / 2;
                    }
                }
            }
        }
        Ok(acc % common == 0)
    }

    /// Least f with χ trivial on every u ≡ 1 mod p^f.
    pub fn conductor(&self) -> Result<u32> {
        let top = self.level();
        let modulus = self.p.pow(top);
        for f in 0..=top {
            let step = self.p.pow(f);
            let mut trivial = true;
            let mut u = 1 % modulus.max(1);
            for _ in 0..modulus / step {
                if u % self.p != 0 && !self.trivial_at(u)? {
                    trivial = false;
                    break;
                }
                u += step;
            }
            if trivial {
                return Ok(f);
            }
        }
        Ok(top)
    }
}

fn pow_mod_u128(b: u64, mut e: u64, n: u64) -> u64 {
    let mut acc = 1u128;
    let n128 = n as u128;
    let mut base = b as u128 % n128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % n128;
        }
        base = base * base % n128;
        e >>= 1;
    }
    acc as u64
}

/// Least f such that χ is trivial on (1 + p^f ℤ)/(1 + p^m ℤ), by exhaustion.
pub fn conductor_by_search(chi: &UnitCharacter) -> Result<u32> {
    if chi.level() == 0 {
        return Ok(0);
    }
    OracleChar::of(chi).conductor()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub case: String,
    pub expected: u32,
    pub got: u32,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditReport {
    pub p: u64,
    pub m_max: u32,
    pub cases: u64,
    pub discrepancies: Vec<Discrepancy>,
    /// Exponents (at level m_max) of the β for which PS(β, β⁻¹) ⊗ β_Quad is
    /// unramified.
    pub ps_conductor_zero: Vec<u64>,
    pub bound_violations: Vec<Discrepancy>,
}

struct Auditor {
    p: u64,
    quad: OracleChar,
    cases: u64,
    discrepancies: Vec<Discrepancy>,
    bound_violations: Vec<Discrepancy>,
}

impl Auditor {
    fn compare(&mut self, case: String, expected: u32, got: u32, detail: &str) {
        if expected != got {
            self.discrepancies.push(Discrepancy { case, expected, got, detail: detail.into() });
        }
    }

    /// Twist by β_Quad through replocal and check it against `expected`.
    fn check(&mut self, rep: &LocalRep, expected: u32, c_central: u32, case: String) -> Result<u32> {
        self.cases += 1;
        let beta_q = PadicCharacter::from_unit(crate::charmod::quadratic_character(self.p)?);
        let out = rep.twist(&beta_q)?;
        self.compare(case.clone(), expected, out.conductor, "twisted conductor");
        self.compare(case.clone(), expected, out.rep.conductor_exponent(), "conductor of twisted representation");
        if out.exactness != Exactness::Exact {
            self.compare(case.clone(), 1, 0, "twist reported as a bound");
        }
        let back = out.rep.twist(&beta_q)?.rep;
        if back != *rep {
            self.compare(case.clone(), 1, 0, "twisting twice by β_Quad does not return the original");
        }
        let bound = atkin_li_bound(rep.conductor_exponent(), 1, c_central);
        if out.conductor > bound {
            self.bound_violations.push(Discrepancy { case, expected: bound, got: out.conductor, detail: "Atkin-Li bound".into() });
        }
        Ok(out.conductor)
    }
}

/// Twist every PS(β, β⁻¹) and Special(β) with c(β) ≤ m_max, with unramified
/// phase 0 and 1/2, by β_Quad, and compare replocal's answer to direct
/// character multiplication plus conductor search. Supercuspidals of each
/// conductor up to 2·m_max are checked against the Atkin-Li bound only.
pub fn exhaustive_twist_audit(p: u64, m_max: u32) -> Result<AuditReport> {
    crate::arith::require_odd_prime(p)?;
    if !(1..=4).contains(&m_max) {
        return domain(format!("m_max = {m_max} must lie in 1..=4"));
    }
    let mut a = Auditor { p, quad: OracleChar::legendre(p), cases: 0, discrepancies: Vec::new(), bound_violations: Vec::new() };
    let mut ps_zero = Vec::new();
    let table = GroupTable::get(p, m_max)?;
    for k in 0..table.order {
        let beta = UnitCharacter::new(p, m_max, k)?;
        let b = OracleChar::of(&beta);
        let b_inv = OracleChar::of(&beta.inverse());
        let c_beta = b.conductor()?;
        a.compare(format!("c({beta})"), c_beta, beta.conductor_exponent(), "closed-form character conductor");
        let ps_expected = b.times(&a.quad).conductor()? + b_inv.times(&a.quad).conductor()?;
        let c_omega_q = b.times(&a.quad).conductor()?;
        let sp_expected = if c_omega_q == 0 { 1 } else { 2 * c_omega_q };
        let c_central_sp = b.times(&b).conductor()?;
        for phase in [rat(0, 1), rat(1, 2)] {
            let ps = trivial_central_ps(&beta, phase.clone(), false)?;
            a.compare(format!("PS({beta}) phase {phase}"), 2 * c_beta, ps.conductor_exponent(), "untwisted conductor");
            let got = a.check(&ps, ps_expected, 0, format!("PS({beta}, {beta}⁻¹) phase {phase} ⊗ β_Quad"))?;
            if got == 0 && phase == rat(0, 1) {
                ps_zero.push(k);
            }
            let omega = PadicCharacter::new(beta.clone(), phase.clone(), false)?;
            let sp = LocalRep::special(omega)?;
            let sp_c = if c_beta == 0 { 1 } else { 2 * c_beta };
            a.compare(format!("Special({beta}) phase {phase}"), sp_c, sp.conductor_exponent(), "untwisted conductor");
            a.check(&sp, sp_expected, c_central_sp, format!("Special({beta}) phase {phase} ⊗ β_Quad"))?;
        }
    }
    for c in 2..=2 * m_max {
        let sc = LocalRep::supercuspidal(PadicCharacter::trivial(p)?, c, ScType::I, p - 1, format!("audit-{c}"))?;
        a.cases += 1;
        let beta_q = PadicCharacter::from_unit(crate::charmod::quadratic_character(p)?);
        let out = sc.twist(&beta_q)?;
        let bound = atkin_li_bound(c, 1, 0);
        if out.conductor > bound {
            a.bound_violations.push(Discrepancy { case: format!("SC(c={c}) ⊗ β_Quad"), expected: bound, got: out.conductor, detail: "Atkin-Li bound".into() });
        }
    }
    Ok(AuditReport { p, m_max, cases: a.cases, discrepancies: a.discrepancies, ps_conductor_zero: ps_zero, bound_violations: a.bound_violations })
}
