//! Generic irreducible unitarisable representations of GL₂(ℚ_p), p odd, and
//! their conductor exponents under twisting.
//!
//! Principal series and special representations are modeled exactly through
//! their inducing characters. Supercuspidals are opaque: a tag plus type,
//! dim ρ, conductor exponent and central character. Twisting one outside the
//! cases where the conductor is known exactly yields a conductor marked as
//! an upper bound.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::charmod::{quadratic_character, PadicCharacter, UnitCharacter};
use crate::error::{domain, Error, Result};
use crate::rational::{self, rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ScType {
    /// induced from (a conjugate of) Z·GL₂(ℤ_p)
    I,
    /// induced from (a conjugate of) the normaliser of K₀(p)
    II,
}

/// χ₁ ⊞ χ₂, stored with χ₁ ≤ χ₂ in the canonical order so that the two
/// isomorphic presentations compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrincipalSeries {
    chi1: PadicCharacter,
    chi2: PadicCharacter,
}

impl PrincipalSeries {
    pub fn chi1(&self) -> &PadicCharacter {
        &self.chi1
    }

    pub fn chi2(&self) -> &PadicCharacter {
        &self.chi2
    }
}

/// ω·St.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Special {
    omega: PadicCharacter,
}

impl Special {
    pub fn omega(&self) -> &PadicCharacter {
        &self.omega
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Supercuspidal {
    central: PadicCharacter,
    conductor: u32,
    exact: bool,
    sc_type: ScType,
    dim_rho: u64,
    tag: String,
    /// Product of all characters this representation has been twisted by,
    /// relative to the tagged one. `None` when untwisted.
    twist: Option<PadicCharacter>,
}

impl Supercuspidal {
    pub fn central(&self) -> &PadicCharacter {
        &self.central
    }

    pub fn sc_type(&self) -> ScType {
        self.sc_type
    }

    pub fn dim_rho(&self) -> u64 {
        self.dim_rho
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }

    pub fn twist(&self) -> Option<&PadicCharacter> {
        self.twist.as_ref()
    }

    /// False when the stored conductor exponent is only an upper bound.
    pub fn conductor_is_exact(&self) -> bool {
        self.exact
    }

    pub(crate) fn with_twist_phase_reduced(&self) -> Self {
        let mut out = self.clone();
        if let Some(t) = &self.twist {
            let half = rat(1, 2);
            let mut ph = t.phase().clone();
            if ph >= half {
                ph -= half;
            }
            let t = PadicCharacter::with_continuous(t.unit().clone(), ph, t.s_coeff())
                .expect("phase stays in [0, 1)");
            out.twist = if t.is_trivial() { None } else { Some(t) };
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RepWire", into = "RepWire")]
pub enum LocalRep {
    PrincipalSeries(PrincipalSeries),
    Special(Special),
    Supercuspidal(Supercuspidal),
}

fn yes() -> bool {
    true
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind")]
enum RepWire {
    #[serde(rename = "ps")]
    Ps { chi1: PadicCharacter, chi2: PadicCharacter },
    #[serde(rename = "special")]
    Special { omega: PadicCharacter },
    #[serde(rename = "sc")]
    Sc {
        central: PadicCharacter,
        c: u32,
        sc_type: ScType,
        dim_rho: u64,
        tag: String,
        #[serde(default = "yes")]
        exact: bool,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        twist: Option<PadicCharacter>,
    },
}

impl TryFrom<RepWire> for LocalRep {
    type Error = Error;
    fn try_from(w: RepWire) -> Result<Self> {
        match w {
            RepWire::Ps { chi1, chi2 } => LocalRep::principal_series(chi1, chi2),
            RepWire::Special { omega } => LocalRep::special(omega),
            RepWire::Sc { central, c, sc_type, dim_rho, tag, exact, twist } => {
                let mut rep = LocalRep::supercuspidal(central, c, sc_type, dim_rho, tag)?;
                if let LocalRep::Supercuspidal(sc) = &mut rep {
                    sc.exact = exact;
                    if let Some(t) = &twist {
                        if t.p() != sc.central.p() {
                            return domain("twist character at a different prime");
                        }
                    }
                    sc.twist = twist.map(|t| t.reduced()).filter(|t| !t.is_trivial());
                }
                Ok(rep)
            }
        }
    }
}

impl From<LocalRep> for RepWire {
    fn from(r: LocalRep) -> Self {
        match r {
            LocalRep::PrincipalSeries(ps) => RepWire::Ps { chi1: ps.chi1, chi2: ps.chi2 },
            LocalRep::Special(sp) => RepWire::Special { omega: sp.omega },
            LocalRep::Supercuspidal(sc) => RepWire::Sc {
                central: sc.central,
                c: sc.conductor,
                sc_type: sc.sc_type,
                dim_rho: sc.dim_rho,
                tag: sc.tag,
                exact: sc.exact,
                twist: sc.twist,
            },
        }
    }
}

fn character_order(a: &PadicCharacter, b: &PadicCharacter) -> Ordering {
    (a.conductor_exponent(), a.unit().exponent(), a.phase(), a.s_coeff()).cmp(&(
        b.conductor_exponent(),
        b.unit().exponent(),
        b.phase(),
        b.s_coeff(),
    ))
}

fn same_prime(a: &PadicCharacter, b: &PadicCharacter) -> Result<()> {
    if a.p() != b.p() {
        return domain(format!("characters at different primes {} and {}", a.p(), b.p()));
    }
    Ok(())
}

impl LocalRep {
    /// χ₁ ⊞ χ₂. The characters are unitary by construction, so their ratio is
    /// never |·|^{±1} and the induced representation is always irreducible.
    pub fn principal_series(chi1: PadicCharacter, chi2: PadicCharacter) -> Result<Self> {
        same_prime(&chi1, &chi2)?;
        let (mut a, mut b) = (chi1.reduced(), chi2.reduced());
        if character_order(&a, &b) == Ordering::Greater {
            std::mem::swap(&mut a, &mut b);
        }
        Ok(LocalRep::PrincipalSeries(PrincipalSeries { chi1: a, chi2: b }))
    }

    pub fn special(omega: PadicCharacter) -> Result<Self> {
        Ok(LocalRep::Special(Special { omega: omega.reduced() }))
    }

    pub fn supercuspidal(
        central: PadicCharacter,
        c: u32,
        sc_type: ScType,
        dim_rho: u64,
        tag: impl Into<String>,
    ) -> Result<Self> {
        if c < 2 {
            return domain(format!("supercuspidal conductor exponent {c} < 2"));
        }
        if dim_rho == 0 {
            return domain("dim ρ must be positive");
        }
        if central.conductor_exponent() > c {
            return domain(format!(
                "central character conductor {} exceeds conductor exponent {c}",
                central.conductor_exponent()
            ));
        }
        Ok(LocalRep::Supercuspidal(Supercuspidal {
            central: central.reduced(),
            conductor: c,
            exact: true,
            sc_type,
            dim_rho,
            tag: tag.into(),
            twist: None,
        }))
    }

    pub fn p(&self) -> u64 {
        match self {
            LocalRep::PrincipalSeries(ps) => ps.chi1.p(),
            LocalRep::Special(sp) => sp.omega.p(),
            LocalRep::Supercuspidal(sc) => sc.central.p(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            LocalRep::PrincipalSeries(_) => "ps",
            LocalRep::Special(_) => "special",
            LocalRep::Supercuspidal(_) => "sc",
        }
    }

    pub fn conductor_exponent(&self) -> u32 {
        match self {
            LocalRep::PrincipalSeries(ps) => ps.chi1.conductor_exponent() + ps.chi2.conductor_exponent(),
            LocalRep::Special(sp) => match sp.omega.conductor_exponent() {
                0 => 1,
                c => 2 * c,
            },
            LocalRep::Supercuspidal(sc) => sc.conductor,
        }
    }

    pub fn conductor_is_exact(&self) -> bool {
        match self {
            LocalRep::Supercuspidal(sc) => sc.exact,
            _ => true,
        }
    }

    pub fn central_character(&self) -> PadicCharacter {
        match self {
            LocalRep::PrincipalSeries(ps) => ps.chi1.mul(&ps.chi2).expect("same prime").reduced(),
            LocalRep::Special(sp) => sp.omega.square().reduced(),
            LocalRep::Supercuspidal(sc) => sc.central.clone(),
        }
    }

    pub fn twist(&self, omega: &PadicCharacter) -> Result<TwistResult> {
        if omega.p() != self.p() {
            return domain(format!("twist character at p = {} for a representation at p = {}", omega.p(), self.p()));
        }
        let (rep, exactness) = match self {
            LocalRep::PrincipalSeries(ps) => (
                LocalRep::principal_series(ps.chi1.mul(omega)?, ps.chi2.mul(omega)?)?,
                Exactness::Exact,
            ),
            LocalRep::Special(sp) => (LocalRep::special(sp.omega.mul(omega)?)?, Exactness::Exact),
            LocalRep::Supercuspidal(sc) => {
                let twist = match &sc.twist {
                    Some(t) => t.mul(omega)?,
                    None => omega.clone(),
                }
                .reduced();
                let central = omega.square().mul(&sc.central)?.reduced();
                // Conductor known exactly for unramified twists, and for the
                // quadratic twist of a trivial-central-character supercuspidal.
                let known = omega.is_unramified()
                    || (sc.central.is_trivial() && omega.has_quadratic_unit_part());
                let (conductor, exact) = if known {
                    (sc.conductor, sc.exact)
                } else {
                    (
                        atkin_li_bound(sc.conductor, omega.conductor_exponent(), sc.central.conductor_exponent()),
                        false,
                    )
                };
                let rep = LocalRep::Supercuspidal(Supercuspidal {
                    central,
                    conductor,
                    exact,
                    sc_type: sc.sc_type,
                    dim_rho: sc.dim_rho,
                    tag: sc.tag.clone(),
                    twist: if twist.is_trivial() { None } else { Some(twist) },
                });
                (rep, if exact { Exactness::Exact } else { Exactness::Bound })
            }
        };
        Ok(TwistResult { conductor: rep.conductor_exponent(), exactness, rep })
    }

    pub fn has_trivial_central_character(&self) -> bool {
        self.central_character().is_trivial()
    }
}

impl fmt::Display for LocalRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocalRep::PrincipalSeries(ps) => write!(f, "PS({} ⊞ {})", ps.chi1, ps.chi2),
            LocalRep::Special(sp) => write!(f, "Special({})", sp.omega),
            LocalRep::Supercuspidal(sc) => {
                write!(f, "SC[{}](type {:?}, dim ρ {}, c {}", sc.tag, sc.sc_type, sc.dim_rho, sc.conductor)?;
                if let Some(t) = &sc.twist {
                    write!(f, ", twisted by {t}")?;
                }
                write!(f, ")")
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Exactness {
    Exact,
    Bound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistResult {
    pub rep: LocalRep,
    pub conductor: u32,
    pub exactness: Exactness,
}

/// Upper bound for c(π ⊗ ω) given c(π), c(ω) and c(ω_π).
pub fn atkin_li_bound(c_pi: u32, c_omega: u32, c_central: u32) -> u32 {
    c_pi.max(c_omega + c_central).max(2 * c_omega)
}

/// The ramified quadratic character β_Quad viewed on ℚ_p^× (trivial at p).
pub fn quadratic_twist_character(p: u64) -> Result<PadicCharacter> {
    Ok(PadicCharacter::from_unit(quadratic_character(p)?))
}

/// Every representation with conductor exponent 1 and trivial central
/// character: |·|^{s} St with s ∈ {0, πi/log p}.
pub fn classify_conductor_one(p: u64) -> Result<Vec<LocalRep>> {
    Ok(vec![
        LocalRep::special(PadicCharacter::trivial(p)?)?,
        LocalRep::special(PadicCharacter::unramified_quadratic(p)?)?,
    ])
}

/// Whether twisting by β_Quad preserves the conductor exponent.
pub fn is_level_invariant(rep: &LocalRep) -> Result<bool> {
    if !rep.has_trivial_central_character() {
        return domain(format!(
            "level invariance is classified for trivial central character only; {rep} has central character {}",
            rep.central_character()
        ));
    }
    let twisted = rep.twist(&quadratic_twist_character(rep.p())?)?;
    Ok(twisted.conductor == rep.conductor_exponent())
}

/// PS(β|·|^{phase}, β⁻¹|·|^{-phase}) with the given unit part: the general
/// principal series with trivial central character.
pub fn trivial_central_ps(beta: &UnitCharacter, phase: crate::rational::Rational, generic: bool) -> Result<LocalRep> {
    let chi = PadicCharacter::new(beta.clone(), rational::frac_part(&phase), generic)?;
    let inv = chi.inverse();
    LocalRep::principal_series(chi, inv)
}
