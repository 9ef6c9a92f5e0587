//! Similarity classes of local representations and their Weyl-law local
//! constants.
//!
//! Two representations are similar when they share a central character and
//! are both supercuspidal or both special and isomorphic up to the unramified
//! quadratic twist |·|^{πi/log p}, or both principal series whose unit parts
//! agree up to swap. For principal series the sum s₁ + s₂ is part of the
//! central character, so that condition is already covered.
//!
//! The census at conductor exponent 2 with trivial central character is:
//!
//! | class                      | count     | constant |
//! |----------------------------|-----------|----------|
//! | β_Quad·St                  | 1         | p − 1    |
//! | β_Quad ⊞ β_Quad            | 1         | 1        |
//! | β ⊞ β⁻¹, c(β) = 1, β² ≠ 1  | (p − 3)/2 | p + 1    |
//! | supercuspidal (type I)     | (p − 1)/2 | p − 1    |
//!
//! summing to p² − p − 1, of which the level-invariant part is p² − 2p − 1.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::arith::{self, factorize};
use crate::charmod::{enumerate_unit_characters, quadratic_character, PadicCharacter};
use crate::error::{domain, unsupported, Result};
use crate::rational::{self, int, rat, Rational};
use crate::replocal::{is_level_invariant, trivial_central_ps, LocalRep, ScType, Supercuspidal};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimilarityClass {
    p: u64,
    representative: LocalRep,
    constant: Rational,
}

impl SimilarityClass {
    /// The class containing `rep`.
    pub fn of(rep: &LocalRep) -> Self {
        SimilarityClass { p: rep.p(), representative: canonical_representative(rep), constant: local_constant(rep) }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn representative(&self) -> &LocalRep {
        &self.representative
    }

    pub fn constant(&self) -> &Rational {
        &self.constant
    }

    pub fn contains(&self, rep: &LocalRep) -> bool {
        rep.p() == self.p && canonical_representative(rep) == self.representative
    }
}

impl Serialize for SimilarityClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("SimilarityClass", 5)?;
        st.serialize_field("kind", self.representative.kind())?;
        st.serialize_field("label", &class_label(&self.representative))?;
        st.serialize_field("constant", &rational::to_wire(&self.constant))?;
        st.serialize_field("level_invariant", &is_level_invariant(&self.representative).ok())?;
        st.serialize_field("representative", &self.representative)?;
        st.end()
    }
}

fn class_label(rep: &LocalRep) -> &'static str {
    match rep {
        LocalRep::Special(sp) if sp.omega().is_unramified() => "unramified-special",
        LocalRep::Special(sp) if sp.omega().has_quadratic_unit_part() => "quadratic-special",
        LocalRep::Special(_) => "special",
        LocalRep::PrincipalSeries(ps) if ps.chi1().is_unramified() && ps.chi2().is_unramified() => {
            "unramified-ps"
        }
        LocalRep::PrincipalSeries(ps)
            if ps.chi1().has_quadratic_unit_part() && ps.chi2().has_quadratic_unit_part() =>
        {
            "quadratic-pair-ps"
        }
        LocalRep::PrincipalSeries(_) => "ramified-ps",
        LocalRep::Supercuspidal(_) => "supercuspidal",
    }
}

/// Unramified phase folded into [0, 1/2).
fn fold_half(phase: &Rational) -> Rational {
    let half = rat(1, 2);
    if *phase >= half {
        phase - half
    } else {
        phase.clone()
    }
}

/// A fixed member of the similarity class of `rep`.
pub fn canonical_representative(rep: &LocalRep) -> LocalRep {
    match rep {
        LocalRep::PrincipalSeries(ps) => {
            // keep the unit parts, move the whole unramified part onto χ₂
            let mut units = [ps.chi1().unit().reduced(), ps.chi2().unit().reduced()];
            units.sort_by_key(|u| (u.conductor_exponent(), u.exponent()));
            let [u1, u2] = units;
            let a = PadicCharacter::from_unit(u1);
            let shift = rational::frac_part(&(ps.chi1().phase() + ps.chi2().phase()));
            let b = PadicCharacter::with_continuous(
                u2,
                shift,
                ps.chi1().s_coeff() + ps.chi2().s_coeff(),
            )
            .expect("phase in range");
            LocalRep::principal_series(a, b).expect("same prime")
        }
        LocalRep::Special(sp) => {
            let w = sp.omega();
            let w = PadicCharacter::with_continuous(w.unit().clone(), fold_half(w.phase()), w.s_coeff())
                .expect("phase in range");
            LocalRep::special(w).expect("valid")
        }
        LocalRep::Supercuspidal(sc) => LocalRep::Supercuspidal(Supercuspidal::with_twist_phase_reduced(sc)),
    }
}

pub fn same_class(a: &LocalRep, b: &LocalRep) -> Result<bool> {
    if a.p() != b.p() {
        return domain(format!("representations at different primes {} and {}", a.p(), b.p()));
    }
    Ok(canonical_representative(a) == canonical_representative(b))
}

/// The local Weyl-law constant of the class of `rep`.
pub fn local_constant(rep: &LocalRep) -> Rational {
    let q = BigInt::from(rep.p());
    match rep {
        LocalRep::Special(_) => Rational::from_integer(q - 1),
        LocalRep::Supercuspidal(sc) => {
            let dim = Rational::from_integer(BigInt::from(sc.dim_rho()));
            match sc.sc_type() {
                ScType::I => dim,
                ScType::II => Rational::new(q + 1, BigInt::from(2)) * dim,
            }
        }
        LocalRep::PrincipalSeries(ps) => {
            let ratio = ps.chi1().unit().mul(&ps.chi2().unit().inverse()).expect("same prime");
            let c = ratio.conductor_exponent();
            if c == 0 {
                return int(1);
            }
            let num = num_traits::pow(q.clone(), c as usize) + num_traits::pow(q.clone(), c as usize - 1);
            let den = num_traits::pow(q, (c / 2) as usize) + 1;
            Rational::new(2 * num, den)
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassInventory {
    pub p: u64,
    pub c: u32,
    pub classes: Vec<SimilarityClass>,
    #[serde(with = "crate::rational::wire")]
    pub sum_constants: Rational,
}

/// All similarity classes with trivial central character and conductor
/// exponent `c` ∈ {0, 1, 2}.
pub fn enumerate_classes(p: u64, c: u32) -> Result<ClassInventory> {
    arith::require_odd_prime(p)?;
    let triv = PadicCharacter::trivial(p)?;
    let mut reps: Vec<LocalRep> = Vec::new();
    match c {
        0 => reps.push(LocalRep::principal_series(triv.clone(), triv)?),
        1 => reps.push(LocalRep::special(triv)?),
        2 => {
            let bq = PadicCharacter::from_unit(quadratic_character(p)?);
            reps.push(LocalRep::special(bq.clone())?);
            reps.push(LocalRep::principal_series(bq.clone(), bq)?);
            // β ⊞ β⁻¹ for level-1 β with β² ≠ 1, one per unordered pair {β, β⁻¹}
            for beta in enumerate_unit_characters(p, 1, false)? {
                if beta.pow(2).is_trivial() || beta.exponent() > beta.inverse().exponent() {
                    continue;
                }
                reps.push(trivial_central_ps(&beta, Rational::zero(), false)?);
            }
            for i in 0..(p - 1) / 2 {
                reps.push(LocalRep::supercuspidal(
                    PadicCharacter::trivial(p)?,
                    2,
                    ScType::I,
                    p - 1,
                    format!("depth-zero-p{p}-{i}"),
                )?);
            }
        }
        _ => {
            return unsupported(format!(
                "class census is available for conductor exponents 0, 1, 2 only (got {c})"
            ))
        }
    }
    let classes: Vec<SimilarityClass> = reps.iter().map(SimilarityClass::of).collect();
    let sum_constants = classes.iter().map(|k| k.constant.clone()).fold(Rational::zero(), |a, b| a + b);
    Ok(ClassInventory { p, c, classes, sum_constants })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassSums {
    pub p: u64,
    /// Σ C over the conductor-p² trivial-central classes.
    pub total: u64,
    /// Σ C over those classes that are level-invariant under the quadratic twist.
    pub invariant_total: u64,
    /// Both sums equal p² − p − 1 and p² − 2p − 1.
    pub closed_form_agrees: bool,
}

pub fn class_sums_closed_form(p: u64) -> (u64, u64) {
    (p * p - p - 1, p * p - 2 * p - 1)
}

pub fn class_sums(p: u64) -> Result<ClassSums> {
    let inv = enumerate_classes(p, 2)?;
    let mut invariant = Rational::zero();
    for class in &inv.classes {
        if is_level_invariant(class.representative())? {
            invariant += class.constant();
        }
    }
    let as_u64 = |r: &Rational| r.to_integer().to_u64().expect("class sums are nonnegative integers");
    let total = as_u64(&inv.sum_constants);
    let invariant_total = as_u64(&invariant);
    Ok(ClassSums { p, total, invariant_total, closed_form_agrees: (total, invariant_total) == class_sums_closed_form(p) })
}

/// Leading T² coefficient in the count of weight-0 newforms of level q with
/// trivial character and spectral parameter |s| ≤ T: (1/12)·Π S(p, e), the
/// product of local class sums. q must be odd and cube-free.
pub fn newform_weyl_constant(q: u64) -> Result<Rational> {
    if q == 0 || q % 2 == 0 {
        return unsupported(format!("level {q} must be odd and positive"));
    }
    let mut acc = rat(1, 12);
    for (p, e) in factorize(q) {
        if e > 2 {
            return unsupported(format!("{p}^{e} divides {q}: only cube-free levels are covered"));
        }
        acc *= enumerate_classes(p, e)?.sum_constants;
    }
    Ok(acc)
}
