//! Radial wavefunction evaluation in three algebraically equivalent
//! representations, plus the closed-form normalization constant.
//!
//! With `kappa = sqrt(2mg) r^2` and `n = E/(4w) - (1+P)/2` the general bound
//! solution is a combination of the two small-r families
//!
//! ```text
//! R(r) = e^{-kappa/2} [ C (2mg)^{(P-1/2)/4} r^{-1/2+P} M(-n,   1+P; kappa)
//!                     + D (2mg)^{(-P-1/2)/4} r^{-1/2-P} M(-n-P, 1-P; kappa) ]
//! ```
//!
//! with `tau = D/C`. On eigenstates the same function collapses to a single
//! Tricomi term, and through the Whittaker reduction to
//! `R = C G (2mg)^{-3/8} r^{-3/2} W_{E/4w, P/2}(kappa)`. All three forms are
//! evaluated independently here; their agreement on eigenstates is one of
//! the verification criteria.
//!
//! The direct two-term form is cancellation-limited at large `kappa` for
//! generic tau (both terms grow like `e^{kappa/2}` while the eigenstate
//! decays), losing roughly `kappa/ln 10 - 16` digits; past `kappa ~ 30` only
//! the Tricomi/Whittaker forms carry accuracy. Evaluations are plain `f64`
//! (or `f32`) arithmetic, intended for `|n_eff|` up to order 50.

use crate::model::{DerivedParams, ExtensionParameter};
use crate::real::{cst, sin_pi, Real};
use crate::spectrum::{EnergyLevel, SpectralProblem};
use crate::special::{digamma, gamma, kummer_m, lgamma_signed, tricomi_u, whittaker_w};

/// Gaussian arguments beyond this underflow to an exact zero.
pub const UNDERFLOW_KAPPA: f64 = 1400.0;

#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
pub enum WavefnError {
    /// The closed-form norm degenerates on the pure branches (tau = 0 or
    /// infinity, where one Gamma factor sits on a pole); those states are
    /// normalized by quadrature instead.
    #[error("closed-form normalization degenerates on a pure branch")]
    DegenerateBranch,
}

/// A radial eigenfunction: coefficients, effective index, and the Kummer
/// parameters the representations are built from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialWavefunction<T> {
    pub derived: DerivedParams<T>,
    pub energy: T,
    /// generalized index `E/(4w) - 1/2 - P/2`; a non-negative integer
    /// exactly on standard levels
    pub n_eff: T,
    /// coefficient of the `r^{-1/2+P}` family (zero for the pure additional
    /// branch)
    pub c_coeff: T,
    /// coefficient of the `r^{-1/2-P}` family (`tau * c_coeff` for finite
    /// tau)
    pub d_coeff: T,
    /// first Kummer parameter of the standard term, `-n_eff`
    pub kummer_a: T,
    /// `1 + P`, in (1, 3/2)
    pub kummer_b_plus: T,
    /// `1 - P`, in (1/2, 1)
    pub kummer_b_minus: T,
}

/// Assemble the wavefunction for a solved level.
///
/// For finite tau, `d = tau * c`; for the point at infinity the given
/// coefficient is the additional-branch amplitude and the standard slot is
/// zero.
pub fn build<T: Real>(
    problem: &SpectralProblem<T>,
    level: &EnergyLevel<T>,
    c_coeff: T,
) -> RadialWavefunction<T> {
    let derived = problem.derived;
    let (c, d) = match problem.tau {
        ExtensionParameter::Finite(t) => (c_coeff, t * c_coeff),
        ExtensionParameter::Infinity => (T::zero(), c_coeff),
    };
    let half = cst::<T>(0.5);
    let n_eff = level.energy / (cst::<T>(4.0) * derived.omega) - half - derived.p * half;
    RadialWavefunction {
        derived,
        energy: level.energy,
        n_eff,
        c_coeff: c,
        d_coeff: d,
        kummer_a: -n_eff,
        kummer_b_plus: T::one() + derived.p,
        kummer_b_minus: T::one() - derived.p,
    }
}

impl<T: Real> RadialWavefunction<T> {
    fn kappa(&self, r: T) -> T {
        self.derived.kappa_scale * r * r
    }

    /// `(2mg)^e` written through the stored scale (`kappa_scale^2 = 2mg`).
    fn scale_pow(&self, e: f64) -> T {
        self.derived.kappa_scale.powf(cst(2.0 * e))
    }
}

/// The two-term Kummer representation (valid for any energy, not just
/// eigenstates). Returns exact 0 once `kappa > 1400` (the Gaussian factor
/// is below the representable range long before that; documented underflow).
pub fn eval_general<T: Real>(w: &RadialWavefunction<T>, r: T) -> T {
    assert!(r > T::zero(), "eval_general: r must be positive");
    let kappa = w.kappa(r);
    if kappa > cst(UNDERFLOW_KAPPA) {
        return T::zero();
    }
    let p = w.derived.p;
    let half = cst::<T>(0.5);
    let gauss = (-kappa * half).exp();
    let mut sum = T::zero();
    if w.c_coeff != T::zero() {
        let m = kummer_m(w.kummer_a, w.kummer_b_plus, kappa)
            .expect("b = 1 + P is never a non-positive integer");
        sum += w.c_coeff * w.scale_pow((p.to_f64().unwrap() - 0.5) / 4.0)
            * r.powf(p - half)
            * m;
    }
    if w.d_coeff != T::zero() {
        let m = kummer_m(w.kummer_a - p, w.kummer_b_minus, kappa)
            .expect("b = 1 - P is never a non-positive integer");
        sum += w.d_coeff * w.scale_pow((-p.to_f64().unwrap() - 0.5) / 4.0)
            * r.powf(-p - half)
            * m;
    }
    gauss * sum
}

/// The single-Tricomi representation. Requires the energy to solve the
/// eigenvalue equation (that identity is what collapses the two Kummer terms
/// into one Tricomi term); away from eigenstates it differs from
/// [`eval_general`].
pub fn eval_unified<T: Real>(w: &RadialWavefunction<T>, r: T) -> T {
    assert!(r > T::zero(), "eval_unified: r must be positive");
    let kappa = w.kappa(r);
    if kappa > cst(UNDERFLOW_KAPPA) {
        return T::zero();
    }
    let p = w.derived.p;
    let half = cst::<T>(0.5);
    let one = T::one();
    let gauss = (-kappa * half).exp();
    if w.c_coeff != T::zero() {
        // G = Gamma(1+P) Gamma(-n-P) sin(pi(1+P))/pi; equals 1 at n_eff = 0
        let g = gamma(one + p).unwrap()
            * gamma(-w.n_eff - p).expect("generic level index off the Gamma poles")
            * sin_pi(one + p)
            / T::PI();
        let u = tricomi_u(w.kummer_a, w.kummer_b_plus, kappa)
            .expect("b = 1 + P is never an integer");
        w.c_coeff
            * gauss
            * w.scale_pow((p.to_f64().unwrap() - 0.5) / 4.0)
            * r.powf(p - half)
            * g
            * u
    } else {
        // pure additional branch: mirrored identity (P -> -P)
        let g = gamma(one - p).unwrap()
            * gamma(-w.n_eff).expect("additional level index off the Gamma poles")
            * sin_pi(one - p)
            / T::PI();
        let u = tricomi_u(w.kummer_a - p, w.kummer_b_minus, kappa)
            .expect("b = 1 - P is never an integer");
        w.d_coeff
            * gauss
            * w.scale_pow((-p.to_f64().unwrap() - 0.5) / 4.0)
            * r.powf(-p - half)
            * g
            * u
    }
}

/// The Whittaker representation
/// `R = C G (2mg)^{-3/8} r^{-3/2} W_{E/4w, P/2}(kappa)`; both branches share
/// the same `W` (it is even in its second index), only the constant differs.
pub fn eval_whittaker<T: Real>(w: &RadialWavefunction<T>, r: T) -> T {
    assert!(r > T::zero(), "eval_whittaker: r must be positive");
    let kappa = w.kappa(r);
    if kappa > cst(UNDERFLOW_KAPPA) {
        return T::zero();
    }
    let p = w.derived.p;
    let half = cst::<T>(0.5);
    let one = T::one();
    let y = w.energy / (cst::<T>(4.0) * w.derived.omega);
    let ww = whittaker_w(y, p * half, kappa).expect("mu = P/2 keeps b non-integer");
    let (coeff, g) = if w.c_coeff != T::zero() {
        let g = gamma(one + p).unwrap() * gamma(-w.n_eff - p).unwrap() * sin_pi(one + p)
            / T::PI();
        (w.c_coeff, g)
    } else {
        let g = gamma(one - p).unwrap() * gamma(-w.n_eff).unwrap() * sin_pi(one - p) / T::PI();
        (w.d_coeff, g)
    };
    coeff * g * w.scale_pow(-3.0 / 8.0) * r.powf(cst(-1.5)) * ww
}

/// Closed-form normalization: the squared coefficient `C^2` such that the
/// state built with `c_coeff = sqrt(C^2)` has unit norm
/// `int_0^inf R^2 r^2 dr = 1`.
///
/// ```text
/// C^2 = 2 pi (2mg)^{3/4} Gamma(-n) /
///       [Gamma^2(1+P) Gamma(-n-P) sin(pi P) (psi(-n) - psi(-n-P))]
/// ```
///
/// Valid for `0 < P < 1/2` (the norm integral converges exactly there) and
/// genuinely mixed states; on the pure branches one Gamma factor sits on a
/// pole and the formula degenerates — normalize those by quadrature.
pub fn normalization_constant<T: Real>(w: &RadialWavefunction<T>) -> Result<T, WavefnError> {
    if w.c_coeff == T::zero() || w.d_coeff == T::zero() {
        return Err(WavefnError::DegenerateBranch);
    }
    let p = w.derived.p;
    if !(p > T::zero() && p < cst(0.5)) {
        return Err(WavefnError::DegenerateBranch);
    }
    let n = w.n_eff;
    let lg_num = lgamma_signed(-n).map_err(|_| WavefnError::DegenerateBranch)?;
    let lg_den = lgamma_signed(-n - p).map_err(|_| WavefnError::DegenerateBranch)?;
    let psi_diff = digamma(-n).map_err(|_| WavefnError::DegenerateBranch)?
        - digamma(-n - p).map_err(|_| WavefnError::DegenerateBranch)?;
    let gamma_1p = gamma(T::one() + p).unwrap();
    let ratio = cst::<T>((lg_num.sign * lg_den.sign) as f64)
        * (lg_num.log_abs - lg_den.log_abs).exp();
    let two_pi = cst::<T>(2.0) * T::PI();
    Ok(two_pi * w.derived.kappa_scale.powf(cst(1.5)) * ratio
        / (gamma_1p * gamma_1p * sin_pi(p) * psi_diff))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{derive, PhysicalParams};
    use crate::spectrum::{solve_spectrum, Branch};
    use rand::{Rng, SeedableRng};

    fn problem(p: f64, tau: ExtensionParameter<f64>) -> SpectralProblem<f64> {
        let params = PhysicalParams::new(0.5, 0.25 - p * p, 1.0, 0).unwrap();
        SpectralProblem::new(derive(&params).unwrap(), tau).unwrap()
    }

    // frozen 60-digit oracle values (canonical units m = 1/2, g = 1)
    const GROUND_P025_TAU_M1: f64 = -0.843_065_754_897_336_335;
    const C2_GROUND_P025_TAU_M1: f64 = 11.300_677_702_102_665_93;

    fn ground_state(tau: f64) -> (SpectralProblem<f64>, RadialWavefunction<f64>) {
        let pr = problem(0.25, ExtensionParameter::Finite(tau));
        let lvl = EnergyLevel {
            n_r: 0,
            energy: GROUND_P025_TAU_M1,
            branch: Branch::GenericTau,
        };
        let w = build(&pr, &lvl, 1.0);
        (pr, w)
    }

    #[test]
    fn build_standard_level() {
        let pr = problem(0.25, ExtensionParameter::Finite(0.0));
        let sol = solve_spectrum(&pr, 2, -1e6).unwrap();
        let w = build(&pr, &sol.levels[1], 2.0);
        assert_eq!(w.d_coeff, 0.0);
        assert!((w.n_eff - 1.0).abs() < 1e-9);
        assert!((w.kummer_a + 1.0).abs() < 1e-9);
        assert!((w.kummer_b_plus - 1.25).abs() < 1e-15);
        assert!((w.kummer_b_minus - 0.75).abs() < 1e-15);
    }

    #[test]
    fn build_additional_level() {
        let pr = problem(0.25, ExtensionParameter::Infinity);
        let sol = solve_spectrum(&pr, 1, -1e6).unwrap();
        let w = build(&pr, &sol.levels[0], 3.0);
        assert_eq!(w.c_coeff, 0.0);
        assert_eq!(w.d_coeff, 3.0);
        // n_eff = n_r - P on additional levels
        assert!((w.n_eff + 0.25).abs() < 1e-12);
    }

    #[test]
    fn build_generic_tau_coefficients() {
        let (_, w) = ground_state(-1.0);
        assert_eq!(w.c_coeff, 1.0);
        assert_eq!(w.d_coeff, -1.0);
        assert!((w.n_eff - (GROUND_P025_TAU_M1 / 4.0 - 0.625)).abs() < 1e-14);
    }

    #[test]
    fn general_reduces_to_standard_closed_form() {
        // tau = 0: the D term is absent, leaving the single-M closed form
        let pr = problem(0.25, ExtensionParameter::Finite(0.0));
        let sol = solve_spectrum(&pr, 1, -1e6).unwrap();
        let w = build(&pr, &sol.levels[0], 1.3);
        let p = 0.25_f64;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        for _ in 0..100 {
            let r: f64 = rng.gen_range(0.01..5.0);
            let kappa = r * r;
            let expect = 1.3
                * (-kappa / 2.0).exp()
                * r.powf(p - 0.5)
                * kummer_m(-0.0, 1.0 + p, kappa).unwrap();
            assert!((eval_general(&w, r) - expect).abs() <= 1e-12 * expect.abs());
        }
    }

    #[test]
    fn unified_prefactor_is_unity_at_n_zero() {
        // n_eff = 0 makes G = 1 and Psi(0, b, x) = 1
        let pr = problem(0.25, ExtensionParameter::Finite(0.0));
        let sol = solve_spectrum(&pr, 1, -1e6).unwrap();
        let w = build(&pr, &sol.levels[0], 1.0);
        for &r in &[0.3_f64, 1.0, 2.4] {
            let bare = (-r * r / 2.0_f64).exp() * r.powf(-0.25);
            assert!((eval_unified(&w, r) - bare).abs() < 1e-10 * bare.abs());
            assert!((eval_general(&w, r) - bare).abs() < 1e-10 * bare.abs());
        }
    }

    /// max pairwise relative deviation among the three representations,
    /// normalized by the largest magnitude
    fn representation_spread(w: &RadialWavefunction<f64>, r: f64) -> (f64, f64) {
        let a = eval_general(w, r);
        let b = eval_unified(w, r);
        let c = eval_whittaker(w, r);
        let m = a.abs().max(b.abs()).max(c.abs());
        let spread = (a - b).abs().max((a - c).abs()).max((b - c).abs());
        (spread / m.max(f64::MIN_POSITIVE), m)
    }

    #[test]
    fn three_representations_agree_on_pure_branches() {
        for tau in [ExtensionParameter::Finite(0.0), ExtensionParameter::Infinity] {
            let pr = problem(0.25, tau);
            let sol = solve_spectrum(&pr, 2, -1e6).unwrap();
            for lvl in &sol.levels {
                let w = build(&pr, lvl, 1.0);
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
                let mut max_r_value: f64 = 0.0;
                let mut samples = Vec::new();
                for _ in 0..100 {
                    let r: f64 = rng.gen_range(0.001_f64..7.0); // kappa up to 49
                    let (spread, mag) = representation_spread(&w, r);
                    max_r_value = max_r_value.max(mag);
                    samples.push((r, spread, mag));
                }
                for (r, spread, mag) in samples {
                    if mag > 1e-12 * max_r_value {
                        assert!(spread < 1e-8, "tau = {tau:?}, r = {r}: spread {spread}");
                    }
                }
            }
        }
    }

    #[test]
    fn three_representations_agree_on_generic_state() {
        let (_, w) = ground_state(-1.0);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(43);
        let mut max_mag: f64 = 0.0;
        let mut samples = Vec::new();
        for _ in 0..100 {
            // kappa <= 13.7: the two-term form cancels like e^kappa eps on
            // mixed states, so past that it has fewer than 8 digits left
            let r: f64 = rng.gen_range(0.001_f64..3.7);
            let (spread, mag) = representation_spread(&w, r);
            max_mag = max_mag.max(mag);
            samples.push((r, spread, mag));
        }
        for (r, spread, mag) in samples {
            if mag > 1e-12 * max_mag {
                assert!(spread < 1e-8, "r = {r}: spread {spread}");
            }
        }
        // beyond the cancellation window the two stable forms still agree
        for &r in &[4.5_f64, 5.5, 6.5] {
            let b = eval_unified(&w, r);
            let c = eval_whittaker(&w, r);
            assert!(((b - c) / c).abs() < 1e-8, "r = {r}");
        }
    }

    #[test]
    fn small_r_exponents() {
        let fit = |w: &RadialWavefunction<f64>, lo: f64, hi: f64| -> f64 {
            // slope of ln u vs ln r for u = r R
            let n = 24;
            let pts: Vec<(f64, f64)> = (0..n)
                .map(|i| {
                    let r = lo * (hi / lo).powf(i as f64 / (n - 1) as f64);
                    (r.ln(), (r * eval_general(w, r)).abs().ln())
                })
                .collect();
            let nn = n as f64;
            let sx: f64 = pts.iter().map(|p| p.0).sum();
            let sy: f64 = pts.iter().map(|p| p.1).sum();
            let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
            let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
            (nn * sxy - sx * sy) / (nn * sxx - sx * sx)
        };
        let p = 0.25;

        let pr = problem(p, ExtensionParameter::Finite(0.0));
        let sol = solve_spectrum(&pr, 1, -1e6).unwrap();
        let w = build(&pr, &sol.levels[0], 1.0);
        assert!((fit(&w, 1e-8, 1e-6) - (0.5 + p)).abs() < 1e-4);

        let pr = problem(p, ExtensionParameter::Infinity);
        let sol = solve_spectrum(&pr, 1, -1e6).unwrap();
        let w = build(&pr, &sol.levels[0], 1.0);
        assert!((fit(&w, 1e-8, 1e-6) - (0.5 - p)).abs() < 1e-4);

        // generic tau: the softer exponent dominates as r -> 0
        let (_, w) = ground_state(-1.0);
        assert!((fit(&w, 1e-8, 1e-6) - (0.5 - p)).abs() < 1e-3);

        // with a same-sign mixture the slope crosses over smoothly from the
        // additional exponent toward the standard one (a negative ratio
        // instead produces a node where the families cancel)
        let pr = problem(p, ExtensionParameter::Finite(0.5));
        let lvl = EnergyLevel {
            n_r: 0,
            energy: 1.0, // eval_general does not require an eigenstate
            branch: Branch::GenericTau,
        };
        let w = build(&pr, &lvl, 1.0);
        assert!((fit(&w, 1e-8, 1e-6) - (0.5 - p)).abs() < 1e-3);
        let mid_slope = fit(&w, 0.2, 0.6);
        assert!(
            mid_slope > 0.5 - p + 0.05 && mid_slope < 0.5 + p,
            "mid slope {mid_slope}"
        );
    }

    #[test]
    fn boundary_condition_r_times_r_vanishes() {
        // r R = u ~ r^{1/2 - P} -> 0, slowly (exponent 1/4 here)
        let (_, w) = ground_state(-1.0);
        let mut prev = f64::INFINITY;
        for i in 0..16 {
            let r = 1e-4 * 0.5_f64.powi(i);
            let v = (r * eval_general(&w, r)).abs();
            assert!(v < prev, "r R not decreasing at r = {r}");
            prev = v;
        }
        assert!(prev < 1e-4_f64.powf(0.25) * 0.1);
    }

    #[test]
    fn whittaker_decay_envelope() {
        // |R| <= envelope e^{-kappa/4} for kappa >= 25, tracked via the
        // stable representation
        let (_, w) = ground_state(-1.0);
        let at = |kappa: f64| {
            let r = kappa.sqrt();
            eval_whittaker(&w, r).abs() * (kappa / 4.0).exp()
        };
        let cap = at(25.0);
        for &kappa in &[30.0, 36.0, 42.0, 49.0] {
            assert!(at(kappa) <= cap, "envelope violated at kappa = {kappa}");
        }
    }

    #[test]
    fn whittaker_tail_grows_polynomially_after_gaussian_removed() {
        // ln(R e^{+kappa/2}) vs ln r slope ~ 2E/(4w) - 3/2 at large kappa
        let (_, w) = ground_state(-1.0);
        let pts: Vec<(f64, f64)> = (0..12)
            .map(|i| {
                let kappa = 30.0 + 1.5 * i as f64;
                let r = kappa.sqrt();
                let v = eval_whittaker(&w, r).abs();
                (r.ln(), (v * (kappa / 2.0).exp()).ln())
            })
            .collect();
        let n = pts.len() as f64;
        let sx: f64 = pts.iter().map(|p| p.0).sum();
        let sy: f64 = pts.iter().map(|p| p.1).sum();
        let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
        let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
        let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        let expect = 2.0 * (GROUND_P025_TAU_M1 / 4.0) - 1.5;
        assert!((slope - expect).abs() < 0.05, "slope {slope} vs {expect}");
    }

    #[test]
    fn underflow_beyond_kappa_cap() {
        let (_, w) = ground_state(-1.0);
        let r = (UNDERFLOW_KAPPA + 1.0).sqrt();
        assert_eq!(eval_general(&w, r), 0.0);
        assert_eq!(eval_unified(&w, r), 0.0);
        assert_eq!(eval_whittaker(&w, r), 0.0);
    }

    #[test]
    fn normalization_constant_matches_oracle() {
        let (_, w) = ground_state(-1.0);
        let c2 = normalization_constant(&w).unwrap();
        assert!(
            (c2 / C2_GROUND_P025_TAU_M1 - 1.0).abs() < 1e-10,
            "C^2 = {c2}"
        );
        assert!(c2 > 0.0);
    }

    #[test]
    fn normalization_degenerates_on_pure_branches() {
        for tau in [ExtensionParameter::Finite(0.0), ExtensionParameter::Infinity] {
            let pr = problem(0.3, tau);
            let sol = solve_spectrum(&pr, 1, -1e6).unwrap();
            let w = build(&pr, &sol.levels[0], 1.0);
            assert!(matches!(
                normalization_constant(&w),
                Err(WavefnError::DegenerateBranch)
            ));
        }
    }

    #[test]
    fn convergence_edge_of_p_range() {
        // P = 0.49 is accepted; P = 0.5 never reaches normalization because
        // the problem construction already pins tau to the standard branch
        let pr = problem(0.49, ExtensionParameter::Finite(-1.0));
        let sol = solve_spectrum(&pr, 1, -1e6).unwrap();
        let w = build(&pr, &sol.levels[0], 1.0);
        assert!(normalization_constant(&w).unwrap() > 0.0);

        let params = PhysicalParams::new(0.5, 0.0, 1.0, 0).unwrap();
        let d = derive(&params).unwrap();
        assert_eq!(d.p, 0.5);
        assert!(SpectralProblem::new(d, ExtensionParameter::Finite(-1.0)).is_err());
    }
}
