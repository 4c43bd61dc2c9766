//! Eigenvalue machinery for the singular oscillator under a self-adjoint
//! extension: the spectral function `f_P(E)`, the transcendental eigenvalue
//! equation, closed-form pure branches, bracketed root-finding, the
//! negative-level census, perturbative expansions, and the equidistance
//! diagnostics.
//!
//! The eigenvalue equation reads `f_P(E) = -tau Gamma(1-P)/Gamma(1+P)` with
//!
//! ```text
//! f_P(E) = Gamma(-E/4w + 1/2 - P/2) / Gamma(-E/4w + 1/2 + P/2)
//! ```
//!
//! `f_P` vanishes on the standard levels `2w(2n+1+P)`, has poles on the
//! additional levels `2w(2n+1-P)`, and increases strictly from `-inf` to
//! `+inf` between consecutive poles (and from `0` to `+inf` below the lowest
//! pole), so every root is bracketed and simple.

use crate::model::{DerivedParams, ExtensionParameter, Regime};
use crate::real::{cst, Real};
use crate::special::{gamma, gamma_ratio, lgamma_signed, ln_gamma_ratio_shifted, SpecialError};

/// Relative (in units of omega) distance to an additional level treated as a
/// pole of the spectral function.
pub const POLE_GUARD_OMEGA: f64 = 1e-10;

/// Bracket shrink distance from each pole endpoint, in units of omega.
const BRACKET_GUARD_OMEGA: f64 = 1e-8;

/// Root convergence: |dE| <= this times omega.
pub const ROOT_TOL_OMEGA: f64 = 1e-11;

/// Default left limit for the negative-level search, in units of omega.
pub const DEFAULT_SEARCH_FLOOR_OMEGA: f64 = -1e6;

const MAX_ROOT_ITER: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
pub enum SpectrumError {
    #[error("energy is within the pole guard of an additional level")]
    Pole,
    #[error("tau is the point at infinity; use the additional closed form")]
    InfiniteTau,
    #[error("additional-branch levels exist only in the SAE regime")]
    Regime,
    #[error("a nonzero finite tau requires the SAE regime")]
    TauOutsideSae,
    #[error("bracket [{lo}, {hi}] does not contain a sign change")]
    Bracket { lo: f64, hi: f64 },
    #[error("negative-level search reached the floor {floor} without a bracket")]
    Floor { floor: f64 },
    #[error("tau must be finite and negative for the negative-level census")]
    CensusDomain,
    #[error("perturbative shift |nu| = {nu} >= 0.1: expansion untrustworthy")]
    PerturbationTooLarge { nu: f64 },
    #[error(transparent)]
    Special(#[from] SpecialError),
}

/// A spectral problem: derived parameters plus the extension parameter.
///
/// Outside the SAE regime only `tau = Finite(0)` is accepted (the standard
/// family is all there is).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralProblem<T> {
    pub derived: DerivedParams<T>,
    pub tau: ExtensionParameter<T>,
}

impl<T: Real> SpectralProblem<T> {
    pub fn new(
        derived: DerivedParams<T>,
        tau: ExtensionParameter<T>,
    ) -> Result<Self, SpectrumError> {
        if derived.regime() != Regime::SaeRequired && !tau.is_standard() {
            return Err(SpectrumError::TauOutsideSae);
        }
        Ok(Self { derived, tau })
    }
}

/// Which formula a level satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Standard,
    Additional,
    GenericTau,
}

impl Branch {
    pub fn as_str(&self) -> &'static str {
        match self {
            Branch::Standard => "standard",
            Branch::Additional => "additional",
            Branch::GenericTau => "generic-tau",
        }
    }
}

/// One bound-state level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyLevel<T> {
    /// radial index: level ordinal in increasing energy (equals the node
    /// count of its wavefunction)
    pub n_r: u32,
    pub energy: T,
    pub branch: Branch,
}

/// Result of a spectrum solve: levels in strictly increasing energy order,
/// the brackets that located them (None for closed forms), and the
/// physicality flag raised for `tau > 0` (that half-line admits no negative
/// level and is excluded on physical grounds, but the equation itself is
/// well posed, so it is solved and flagged rather than rejected).
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumSolution<T> {
    pub levels: Vec<EnergyLevel<T>>,
    pub brackets: Vec<Option<(T, T)>>,
    pub physicality_warning: bool,
}

/// Additional (pole) level `E_n^inf = 2w(2n + 1 - P)`.
pub fn additional_level_energy<T: Real>(derived: &DerivedParams<T>, n: u32) -> T {
    cst::<T>(2.0) * derived.omega * (cst::<T>(2.0 * n as f64 + 1.0) - derived.p)
}

/// Standard (zero) level `E_n^0 = 2w(2n + 1 + P)`.
pub fn standard_level_energy<T: Real>(derived: &DerivedParams<T>, n: u32) -> T {
    cst::<T>(2.0) * derived.omega * (cst::<T>(2.0 * n as f64 + 1.0) + derived.p)
}

fn near_additional_level<T: Real>(energy: T, derived: &DerivedParams<T>) -> bool {
    let two_w = cst::<T>(2.0) * derived.omega;
    // nearest n solving E = 2w(2n + 1 - P)
    let n = ((energy / two_w - T::one() + derived.p) / cst(2.0)).round();
    if n < T::zero() {
        return false;
    }
    let pole = two_w * (cst::<T>(2.0) * n + T::one() - derived.p);
    (energy - pole).abs() < cst::<T>(POLE_GUARD_OMEGA) * derived.omega
}

/// The spectral function `f_P(E)`, evaluated in log space.
///
/// Returns exactly 0 on the standard levels (the denominator Gamma hits a
/// pole); energies within the pole guard of an additional level are an
/// error.
pub fn f_p<T: Real>(energy: T, derived: &DerivedParams<T>) -> Result<T, SpectrumError> {
    if near_additional_level(energy, derived) {
        return Err(SpectrumError::Pole);
    }
    let half = cst::<T>(0.5);
    let z = -energy / (cst::<T>(4.0) * derived.omega);
    let arg_num = z + half - derived.p * half;
    let arg_den = z + half + derived.p * half;
    if arg_num >= cst(30.0) {
        // deep below the spectrum (tau -> 0^- sends the ground level to
        // astronomical depths); the naive log-gamma difference cancels
        // there, the reorganized Stirling ratio does not
        return Ok(ln_gamma_ratio_shifted(z, half - derived.p * half, half + derived.p * half).exp());
    }
    let num = match lgamma_signed(arg_num) {
        Ok(v) => v,
        // numerator pole is an additional level; the guard above should have
        // caught it, but an exactly-representable hit still maps to an error
        Err(_) => return Err(SpectrumError::Pole),
    };
    let den = match lgamma_signed(arg_den) {
        Ok(v) => v,
        // denominator pole: f_P vanishes there (standard level)
        Err(_) => return Ok(T::zero()),
    };
    Ok(cst::<T>((num.sign * den.sign) as f64) * (num.log_abs - den.log_abs).exp())
}

/// Right-hand side of the eigenvalue equation, `-tau Gamma(1-P)/Gamma(1+P)`.
pub fn eigenvalue_rhs<T: Real>(
    tau: ExtensionParameter<T>,
    derived: &DerivedParams<T>,
) -> Result<T, SpectrumError> {
    match tau {
        ExtensionParameter::Infinity => Err(SpectrumError::InfiniteTau),
        ExtensionParameter::Finite(t) => {
            Ok(-t * gamma_ratio(T::one() - derived.p, T::one() + derived.p)?)
        }
    }
}

/// Closed-form level of a pure branch: `E = 2w(2 n_r + 1 +- P)`.
pub fn closed_form_level<T: Real>(
    derived: &DerivedParams<T>,
    branch: Branch,
    n_r: u32,
) -> Result<EnergyLevel<T>, SpectrumError> {
    match branch {
        Branch::Standard => Ok(EnergyLevel {
            n_r,
            energy: standard_level_energy(derived, n_r),
            branch,
        }),
        Branch::Additional => {
            if derived.regime() != Regime::SaeRequired {
                return Err(SpectrumError::Regime);
            }
            Ok(EnergyLevel {
                n_r,
                energy: additional_level_energy(derived, n_r),
                branch,
            })
        }
        Branch::GenericTau => Err(SpectrumError::Regime),
    }
}

/// Lower bound on physically admissible tau: below it even the single
/// negative level is lost. `tau_lower_bound < tau < 0` guarantees exactly
/// one negative level.
///
/// `-Gamma(1+P) Gamma(1/2 - P/2) / (Gamma(1-P) Gamma(1/2 + P/2))`; by
/// construction the eigenvalue-equation right-hand side evaluated at this
/// tau equals `f_P(0)` exactly, i.e. the negative level sits at `E = 0`.
pub fn tau_lower_bound<T: Real>(derived: &DerivedParams<T>) -> T {
    let half = cst::<T>(0.5);
    let p = derived.p;
    let num = gamma(T::one() + p).unwrap() * gamma(half - p * half).unwrap();
    let den = gamma(T::one() - p).unwrap() * gamma(half + p * half).unwrap();
    -num / den
}

/// Whether the problem has a negative level: `f_P(0) > -tau G(1-P)/G(1+P)`
/// (strict; the boundary case puts the level exactly at `E = 0` and is
/// classified as "no negative level").
pub fn negative_level_exists<T: Real>(problem: &SpectralProblem<T>) -> Result<bool, SpectrumError> {
    let t = match problem.tau {
        ExtensionParameter::Finite(t) if t < T::zero() => t,
        _ => return Err(SpectrumError::CensusDomain),
    };
    if problem.derived.regime() != Regime::SaeRequired {
        return Err(SpectrumError::CensusDomain);
    }
    let rhs = eigenvalue_rhs(ExtensionParameter::Finite(t), &problem.derived)?;
    let f0 = f_p(T::zero(), &problem.derived)?;
    Ok(f0 > rhs)
}

/// Safeguarded secant/bisection on a bracketed strictly monotone function.
///
/// The requested tolerance is floored at a few ulps of the endpoints: the
/// runaway ground level for `tau -> 0^-` reaches magnitudes where an
/// absolute `1e-11 omega` is finer than `f64` spacing.
fn bracketed_root<T: Real>(
    mut lo: T,
    mut hi: T,
    mut f_lo: T,
    mut f_hi: T,
    tol: T,
    f: &mut impl FnMut(T) -> Result<T, SpectrumError>,
) -> Result<T, SpectrumError> {
    if f_lo == T::zero() {
        return Ok(lo);
    }
    if f_hi == T::zero() {
        return Ok(hi);
    }
    debug_assert!(f_lo < T::zero() && f_hi > T::zero());
    for iter in 0..MAX_ROOT_ITER {
        let tol_eff = tol.max(cst::<T>(4.0) * T::epsilon() * lo.abs().max(hi.abs()));
        if (hi - lo).abs() <= tol_eff {
            break;
        }
        let width = hi - lo;
        // secant proposal, clamped into the middle 96% of the bracket;
        // force bisection on alternate iterations to guarantee progress
        let mid = lo + width * cst(0.5);
        let cand = if iter % 2 == 0 {
            let s = lo - f_lo * width / (f_hi - f_lo);
            let margin = width * cst(0.02);
            if s > lo + margin && s < hi - margin {
                s
            } else {
                mid
            }
        } else {
            mid
        };
        let fc = f(cand)?;
        if fc == T::zero() {
            return Ok(cand);
        }
        if fc < T::zero() {
            lo = cand;
            f_lo = fc;
        } else {
            hi = cand;
            f_hi = fc;
        }
    }
    Ok(lo + (hi - lo) * cst(0.5))
}

/// Solve for the lowest `count` levels.
///
/// * `tau = Finite(0)`: standard closed forms.
/// * `tau = Infinity`: additional closed forms.
/// * generic finite tau: bracketed roots of `f_P(E) = rhs`, one per
///   inter-pole interval, plus (for `tau < 0`) the single root below the
///   lowest pole, located by geometric leftward expansion down to
///   `search_floor`.
pub fn solve_spectrum<T: Real>(
    problem: &SpectralProblem<T>,
    count: usize,
    search_floor: T,
) -> Result<SpectrumSolution<T>, SpectrumError> {
    assert!(count >= 1, "count must be at least 1");
    let derived = &problem.derived;
    let t = match problem.tau {
        ExtensionParameter::Finite(t) if t == T::zero() => {
            let levels = (0..count)
                .map(|n| closed_form_level(derived, Branch::Standard, n as u32))
                .collect::<Result<Vec<_>, _>>()?;
            return Ok(SpectrumSolution {
                brackets: vec![None; levels.len()],
                levels,
                physicality_warning: false,
            });
        }
        ExtensionParameter::Infinity => {
            let levels = (0..count)
                .map(|n| closed_form_level(derived, Branch::Additional, n as u32))
                .collect::<Result<Vec<_>, _>>()?;
            return Ok(SpectrumSolution {
                brackets: vec![None; levels.len()],
                levels,
                physicality_warning: false,
            });
        }
        ExtensionParameter::Finite(t) => t,
    };

    let rhs = eigenvalue_rhs(problem.tau, derived)?;
    let omega = derived.omega;
    let guard = cst::<T>(BRACKET_GUARD_OMEGA) * omega;
    let tol = cst::<T>(ROOT_TOL_OMEGA) * omega;
    let mut g = |e: T| -> Result<T, SpectrumError> { Ok(f_p(e, derived)? - rhs) };

    let mut levels: Vec<EnergyLevel<T>> = Vec::with_capacity(count);
    let mut brackets = Vec::with_capacity(count);

    // single root below the lowest pole, possibly negative (tau < 0 only:
    // f_P > 0 there, so a negative rhs cannot be crossed). The geometric
    // expansion keeps the last still-positive point so the final bracket is
    // only a factor two wide no matter how deep the level sits.
    if t < T::zero() {
        let guard_min = cst::<T>(2.0 * POLE_GUARD_OMEGA) * omega;
        let pole0 = additional_level_energy(derived, 0);
        let mut guard_hi = guard;
        let (mut hi, mut f_hi) = loop {
            let hi = pole0 - guard_hi;
            let f_hi = g(hi)?;
            if f_hi > T::zero() || guard_hi <= guard_min {
                break (hi, f_hi);
            }
            guard_hi = (guard_hi * cst(0.1)).max(guard_min);
        };
        if f_hi > T::zero() {
            let mut lo = -omega;
            let mut bracket = None;
            loop {
                let f_lo = g(lo)?;
                if f_lo <= T::zero() {
                    bracket = Some((lo, f_lo));
                    break;
                }
                if lo <= search_floor {
                    break;
                }
                hi = lo;
                f_hi = f_lo;
                lo = (lo * cst(2.0)).max(search_floor);
            }
            let (lo, f_lo) = bracket.ok_or_else(|| SpectrumError::Floor {
                floor: search_floor.to_f64().unwrap_or(f64::NAN),
            })?;
            let root = bracketed_root(lo, hi, f_lo, f_hi, tol, &mut g)?;
            levels.push(EnergyLevel {
                n_r: 0,
                energy: root,
                branch: Branch::GenericTau,
            });
            brackets.push(Some((lo, hi)));
        }
    }

    // one root per inter-pole interval (E_k^inf, E_{k+1}^inf). For huge
    // |rhs| (tau near the projective point) the root hugs a pole, so the
    // guard shrinks adaptively; its floor stays above the spectral
    // function's own pole rejection zone.
    let guard_min = cst::<T>(2.0 * POLE_GUARD_OMEGA) * omega;
    let mut k = 0u32;
    while levels.len() < count {
        let pole_lo = additional_level_energy(derived, k);
        let pole_hi = additional_level_energy(derived, k + 1);
        let mut guard_lo = guard;
        let (lo, f_lo) = loop {
            let lo = pole_lo + guard_lo;
            let f_lo = g(lo)?;
            if f_lo < T::zero() || guard_lo <= guard_min {
                break (lo, f_lo);
            }
            guard_lo = (guard_lo * cst(0.1)).max(guard_min);
        };
        let mut guard_hi = guard;
        let (hi, f_hi) = loop {
            let hi = pole_hi - guard_hi;
            let f_hi = g(hi)?;
            if f_hi > T::zero() || guard_hi <= guard_min {
                break (hi, f_hi);
            }
            guard_hi = (guard_hi * cst(0.1)).max(guard_min);
        };
        if !(f_lo < T::zero() && f_hi > T::zero()) {
            return Err(SpectrumError::Bracket {
                lo: lo.to_f64().unwrap_or(f64::NAN),
                hi: hi.to_f64().unwrap_or(f64::NAN),
            });
        }
        let root = bracketed_root(lo, hi, f_lo, f_hi, tol, &mut g)?;
        levels.push(EnergyLevel {
            n_r: levels.len() as u32,
            energy: root,
            branch: Branch::GenericTau,
        });
        brackets.push(Some((lo, hi)));
        k += 1;
    }

    Ok(SpectrumSolution {
        levels,
        brackets,
        physicality_warning: t > T::zero(),
    })
}

/// A perturbatively shifted level together with its shift coefficient.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerturbedLevel<T> {
    pub n_r: u32,
    pub energy: T,
    /// shift coefficient; the expansion is valid to O(nu^2) and only
    /// trustworthy while |nu| << 1
    pub nu: T,
}

/// First-order level shift near a pure branch.
///
/// Near the standard branch (`|tau| <= 1`):
/// `E = 2w(2(n_r - nu) + 1 + P)` with
/// `nu = (-1)^(n_r + 1) Gamma(1-P) tau / (n_r! Gamma(1+P) Gamma(-n_r - P))`,
/// obtained by expanding the eigenvalue equation around the denominator
/// Gamma pole. Near the additional branch (`|tau| > 1` or infinity) the
/// mirrored rule applies: `P -> -P`, `tau -> 1/tau`.
pub fn perturbative_level<T: Real>(
    problem: &SpectralProblem<T>,
    n_r: u32,
) -> Result<PerturbedLevel<T>, SpectrumError> {
    let derived = &problem.derived;
    let (p_eff, small) = match problem.tau {
        ExtensionParameter::Finite(t) if t.abs() <= T::one() => (derived.p, t),
        ExtensionParameter::Finite(t) => (-derived.p, t.recip()),
        ExtensionParameter::Infinity => (-derived.p, T::zero()),
    };
    let nu = if small == T::zero() {
        T::zero()
    } else {
        // log-space: nu = s (-1)^(n_r+1) exp(lg(1-Pe) - lg(1+Pe) - lg(-n_r-Pe) - lg(n_r+1))
        let lg_num = lgamma_signed(T::one() - p_eff)?;
        let lg_den1 = lgamma_signed(T::one() + p_eff)?;
        let lg_den2 = lgamma_signed(-cst::<T>(n_r as f64) - p_eff)?;
        let lg_fact = lgamma_signed(cst::<T>(n_r as f64 + 1.0))?;
        let sign = cst::<T>((lg_num.sign * lg_den1.sign * lg_den2.sign * lg_fact.sign) as f64)
            * if n_r % 2 == 0 { -T::one() } else { T::one() };
        sign * small.signum()
            * (lg_num.log_abs - lg_den1.log_abs - lg_den2.log_abs - lg_fact.log_abs
                + small.abs().ln())
            .exp()
    };
    if nu.abs() >= cst(0.1) {
        return Err(SpectrumError::PerturbationTooLarge {
            nu: nu.to_f64().unwrap_or(f64::NAN),
        });
    }
    let two = cst::<T>(2.0);
    let energy =
        two * derived.omega * (two * (cst::<T>(n_r as f64) - nu) + T::one() + p_eff);
    Ok(PerturbedLevel { n_r, energy, nu })
}

/// Closed form of the spacing diagnostic `f_P(E + 4w) / f_P(E)`:
/// `(-E/4w + P/2 - 1/2) / (-E/4w - P/2 - 1/2)`.
///
/// Equal to 1 only in the degenerate limit `P = 0`; its departure from 1 is
/// exactly the violation of level equidistance away from the pure branches.
pub fn equidistance_ratio<T: Real>(
    energy: T,
    derived: &DerivedParams<T>,
) -> Result<T, SpectrumError> {
    let four_w = cst::<T>(4.0) * derived.omega;
    if near_additional_level(energy, derived) || near_additional_level(energy + four_w, derived) {
        return Err(SpectrumError::Pole);
    }
    let z = -energy / four_w;
    let half = cst::<T>(0.5);
    Ok((z + derived.p * half - half) / (z - derived.p * half - half))
}
