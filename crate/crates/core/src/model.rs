//! Physical parameters of the singular oscillator, the derived spectral
//! quantities, and the regime classification that decides whether the
//! boundary condition at the origin admits one solution family or two.
//!
//! Units: hbar = 1 throughout; mass, couplings and energies are all in
//! mutually consistent natural units. Everything here is an immutable value
//! type and every operation is pure.

use crate::real::{cst, Real};

/// Errors from parameter validation and derivation.
#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
pub enum ModelError {
    #[error("invalid physical parameters: {0}")]
    InvalidParams(&'static str),
    /// The attraction is strong enough that the spectrum is unbounded below
    /// ("fall to the center"); the solver refuses the whole regime.
    #[error(
        "2 m V0 = {two_m_v0} >= (l + 1/2)^2 = {threshold}: the particle would \
         fall to the center; no bound-state analysis is possible"
    )]
    FallToCenter { two_m_v0: f64, threshold: f64 },
    #[error("operation not applicable: {0}")]
    Domain(&'static str),
}

/// Input parameters of the potential `V(r) = -V0/r^2 + g r^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams<T> {
    /// particle mass (> 0)
    pub mass: T,
    /// inverse-square attraction strength (>= 0; energy * length^2)
    pub v0: T,
    /// oscillator coupling (> 0; energy / length^2)
    pub g: T,
    /// orbital quantum number
    pub l: u32,
}

impl<T: Real> PhysicalParams<T> {
    /// Validated constructor. `v0 = 0` is accepted as the pure-oscillator
    /// limit (useful for cross-checks); mass and `g` must be positive.
    pub fn new(mass: T, v0: T, g: T, l: u32) -> Result<Self, ModelError> {
        if !(mass > T::zero()) || !mass.is_finite() {
            return Err(ModelError::InvalidParams("mass must be positive"));
        }
        if !(v0 >= T::zero()) || !v0.is_finite() {
            return Err(ModelError::InvalidParams("v0 must be non-negative"));
        }
        if !(g > T::zero()) || !g.is_finite() {
            return Err(ModelError::InvalidParams("g must be positive"));
        }
        Ok(Self { mass, v0, g, l })
    }

    /// The combination `2 m V0` that every regime inequality is written in.
    pub fn two_m_v0(&self) -> T {
        cst::<T>(2.0) * self.mass * self.v0
    }
}

/// Quantities derived from the parameters that the spectral formulas are
/// actually written in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedParams<T> {
    /// `P = sqrt((l + 1/2)^2 - 2 m V0)`, the index of the small-r power pair
    /// `r^(-1/2 +- P)`
    pub p: T,
    /// `s = (P - 1/2)/2`, the exponent entering the kappa-variable solution
    pub s: T,
    /// `omega = sqrt(g / 2m)`; consecutive pure-branch levels are `4 omega`
    /// apart
    pub omega: T,
    /// `sqrt(2 m g)`, the inverse-length^2 scale: the hypergeometric argument
    /// is `kappa = kappa_scale * r^2`
    pub kappa_scale: T,
    /// quantum defect `P - (l + 1/2)` (negative whenever `V0 > 0`)
    pub defect: T,
}

impl<T: Real> DerivedParams<T> {
    /// `2m` recovered from the stored scales (`kappa_scale / omega`).
    pub fn two_m(&self) -> T {
        self.kappa_scale / self.omega
    }

    /// Regime implied by the stored index (fall-to-center never constructs).
    pub fn regime(&self) -> Regime {
        if self.p >= cst(0.5) {
            Regime::Regular
        } else {
            Regime::SaeRequired
        }
    }
}

/// Which solution families survive the boundary condition at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `P >= 1/2`: only the standard family; no extension freedom.
    Regular,
    /// `0 < P < 1/2`: both families are admissible and a one-parameter
    /// self-adjoint extension is required.
    SaeRequired,
    /// `2 m V0 >= (l + 1/2)^2`: rejected outright.
    FallToCenter,
}

/// The self-adjoint extension parameter tau as a projective real: a finite
/// value, or the single point at infinity (`tau = +inf` and `-inf` give
/// identical spectra, so they are collapsed).
///
/// `Finite(0)` is the pure standard branch; `Infinity` the pure additional
/// branch. tau is the ratio `D/C` of the two coefficient slots in the
/// general radial solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtensionParameter<T> {
    Finite(T),
    Infinity,
}

impl<T: Real> ExtensionParameter<T> {
    /// Collapse IEEE infinities onto the projective point.
    pub fn finite(value: T) -> Self {
        if value.is_infinite() {
            Self::Infinity
        } else {
            Self::Finite(value)
        }
    }

    pub fn is_standard(&self) -> bool {
        matches!(self, Self::Finite(v) if *v == T::zero())
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Self::Infinity)
    }
}

/// Derived quantities; fails in (and only in) the fall-to-center regime,
/// where the index `P` would be zero or imaginary.
pub fn derive<T: Real>(params: &PhysicalParams<T>) -> Result<DerivedParams<T>, ModelError> {
    let l_half = cst::<T>(params.l as f64) + cst(0.5);
    let threshold = l_half * l_half;
    let two_m_v0 = params.two_m_v0();
    if two_m_v0 >= threshold {
        return Err(ModelError::FallToCenter {
            two_m_v0: two_m_v0.to_f64().unwrap_or(f64::NAN),
            threshold: threshold.to_f64().unwrap_or(f64::NAN),
        });
    }
    let p = (threshold - two_m_v0).sqrt();
    let two = cst::<T>(2.0);
    Ok(DerivedParams {
        p,
        s: (p - cst(0.5)) / two,
        omega: (params.g / (two * params.mass)).sqrt(),
        kappa_scale: (two * params.mass * params.g).sqrt(),
        defect: p - l_half,
    })
}

/// Regime classification. The boundary `2 m V0 = l(l+1)` (`P = 1/2` exactly)
/// is Regular: only the standard member survives there. The boundary
/// `2 m V0 = (l + 1/2)^2` (`P = 0`) already falls to the center.
pub fn classify<T: Real>(params: &PhysicalParams<T>) -> Regime {
    let l = params.l as f64;
    let two_m_v0 = params.two_m_v0();
    let centrifugal = cst::<T>(l * (l + 1.0));
    let fall = cst::<T>((l + 0.5) * (l + 0.5));
    if two_m_v0 >= fall {
        Regime::FallToCenter
    } else if two_m_v0 > centrifugal {
        Regime::SaeRequired
    } else {
        Regime::Regular
    }
}

/// First-order quantum defect `-2 m V0 / (2l + 1)`, the small-`V0` expansion
/// of `DerivedParams::defect`; the difference is `O(V0^2)`.
pub fn quantum_defect_small_v0<T: Real>(params: &PhysicalParams<T>) -> T {
    -params.two_m_v0() / cst::<T>(2.0 * params.l as f64 + 1.0)
}

/// Small-`V0` expansion of `P` for `l = 0`: `(1/2)(1 - 4 m V0)`.
pub fn p_small_v0_l0<T: Real>(params: &PhysicalParams<T>) -> Result<T, ModelError> {
    if params.l != 0 {
        return Err(ModelError::Domain("the P expansion applies to l = 0 only"));
    }
    Ok(cst::<T>(0.5) * (T::one() - cst::<T>(4.0) * params.mass * params.v0))
}

/// Conversion factor from the coefficient-ratio convention `tau = D/C` to the
/// boundary-series ratio `a_add/a_st` of the small-r expansion:
/// `a_add/a_st = tau * (2 m g)^(-P/2)`, i.e. `tau` times this constant.
pub fn tau_to_boundary_ratio<T: Real>(derived: &DerivedParams<T>) -> T {
    derived.kappa_scale.powf(-derived.p)
}
