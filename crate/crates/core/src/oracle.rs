//! Independent verification machinery: direct Numerov integration of the
//! radial equation in `u = r R` form,
//!
//! ```text
//! u'' = Q(r) u,   Q(r) = (P^2 - 1/4)/r^2 + (2mg) r^2 - (2m) E,
//! ```
//!
//! two-sided shooting for eigenvalues, Simpson quadrature for norms and
//! overlaps, and small-r coefficient extraction. Nothing here goes through
//! the Gamma-function spectral machinery, so agreement between this module
//! and the `spectrum`/`wavefn` results is a genuine cross-check.
//!
//! Near the origin `u` behaves like `a_st r^{1/2+P} + a_add r^{1/2-P}`; a
//! uniform step cannot resolve that power layer, so the outward integration
//! seeds a Frobenius double series and hands over to Numerov only where the
//! series still converges to machine accuracy.

use crate::model::{DerivedParams, ExtensionParameter};
use crate::real::{cst, Real};
use crate::spectrum::{EnergyLevel, SpectralProblem};
use crate::wavefn::{self, RadialWavefunction};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OracleError {
    #[error("invalid radial grid: {0}")]
    Grid(&'static str),
    #[error("grid step too coarse: {0}")]
    Step(&'static str),
    #[error("no sign change of the matching mismatch across the bracket")]
    NoSignChange,
    #[error("sampled functions live on different grids")]
    GridMismatch,
}

/// Small-r coefficients of `u = r R`: `u ~ a_st r^{1/2+P} + a_add r^{1/2-P}`.
///
/// The bridge to the extension parameter is
/// `a_add/a_st = tau * (2mg)^{-P/2}` (see `model::tau_to_boundary_ratio`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundarySeries<T> {
    pub a_st: T,
    pub a_add: T,
}

impl<T: Real> BoundarySeries<T> {
    /// Boundary data matching a problem's tau, standard amplitude 1.
    pub fn for_problem(problem: &SpectralProblem<T>) -> Self {
        match problem.tau {
            ExtensionParameter::Finite(t) => Self {
                a_st: T::one(),
                a_add: t * crate::model::tau_to_boundary_ratio(&problem.derived),
            },
            ExtensionParameter::Infinity => Self {
                a_st: T::zero(),
                a_add: T::one(),
            },
        }
    }
}

/// Uniform radial grid `r_i = r_min + i * step`, `i = 0..=n_steps`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialGrid<T> {
    r_min: T,
    r_max: T,
    step: T,
    n_steps: usize,
}

impl<T: Real> RadialGrid<T> {
    /// `n_steps` must be even (Simpson) and at least 10^3.
    pub fn new(r_min: T, r_max: T, n_steps: usize) -> Result<Self, OracleError> {
        if !(r_min > T::zero() && r_max > r_min) {
            return Err(OracleError::Grid("need 0 < r_min < r_max"));
        }
        if n_steps < 1000 {
            return Err(OracleError::Grid("need at least 10^3 steps"));
        }
        if n_steps % 2 != 0 {
            return Err(OracleError::Grid("step count must be even"));
        }
        let step = (r_max - r_min) / cst(n_steps as f64);
        Ok(Self {
            r_min,
            r_max,
            step,
            n_steps,
        })
    }

    /// Default integration grid: `r_min = 1e-6 (2mg)^{-1/4}`, `r_max` where
    /// the Gaussian argument reaches 50, 2x10^5 steps.
    pub fn oracle_default(derived: &DerivedParams<T>) -> Self {
        let scale = derived.kappa_scale.sqrt().recip(); // (2mg)^{-1/4}
        Self::new(
            cst::<T>(1e-6) * scale,
            cst::<T>(50.0_f64.sqrt()) * scale,
            200_000,
        )
        .expect("default grid is valid")
    }

    /// Default quadrature grid: starts at `1e-8 (2mg)^{-1/4}` so the omitted
    /// head below `r_min` stays under the tightest orthogonality tolerance.
    pub fn quadrature_default(derived: &DerivedParams<T>) -> Self {
        let scale = derived.kappa_scale.sqrt().recip();
        Self::new(
            cst::<T>(1e-8) * scale,
            cst::<T>(50.0_f64.sqrt()) * scale,
            200_000,
        )
        .expect("default grid is valid")
    }

    pub fn r(&self, i: usize) -> T {
        self.r_min + self.step * cst(i as f64)
    }

    pub fn step(&self) -> T {
        self.step
    }

    pub fn r_min(&self) -> T {
        self.r_min
    }

    pub fn r_max(&self) -> T {
        self.r_max
    }

    /// Number of sample points (`n_steps + 1`).
    pub fn len(&self) -> usize {
        self.n_steps + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Index of the grid point nearest to `r`, clamped inward.
    pub fn index_near(&self, r: T, margin: usize) -> usize {
        let raw = ((r - self.r_min) / self.step).round();
        let idx = raw.to_usize().unwrap_or(0);
        idx.clamp(margin, self.n_steps - margin)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Outward,
    Inward,
}

/// Sampled solution with per-index log scaling: the true (unnormalized)
/// solution is `u[i] * exp(log_scale[i])` up to one global constant. The
/// rescaling keeps exponentially growing solutions representable; adjacent
/// indices always share a scale except across a renormalization boundary,
/// which `log_scale` records.
#[derive(Debug, Clone)]
pub struct NumerovSolution<T> {
    pub u: Vec<T>,
    pub log_scale: Vec<T>,
}

impl<T: Real> NumerovSolution<T> {
    /// `ln |u_true(i)|` up to the shared global constant.
    pub fn log_abs(&self, i: usize) -> T {
        self.u[i].abs().ln() + self.log_scale[i]
    }

    /// Logarithmic derivative `u'/u` at interior index `i` (central
    /// difference, scale-corrected).
    pub fn log_derivative(&self, i: usize, grid: &RadialGrid<T>) -> T {
        let left = self.u[i - 1] * (self.log_scale[i - 1] - self.log_scale[i]).exp();
        let right = self.u[i + 1] * (self.log_scale[i + 1] - self.log_scale[i]).exp();
        (right - left) / (cst::<T>(2.0) * grid.step()) / self.u[i]
    }
}

/// `Q(r)` of the Numerov form `u'' = Q u`.
fn q_at<T: Real>(derived: &DerivedParams<T>, energy: T, r: T) -> T {
    let c = derived.p * derived.p - cst(0.25);
    let k2 = derived.kappa_scale * derived.kappa_scale;
    c / (r * r) + k2 * r * r - derived.two_m() * energy
}

const FROBENIUS_TERMS: usize = 60;
/// Convergence floor for the boundary series, relative to the two-branch
/// envelope.
const SERIES_TOL: f64 = 1e-13;
/// Largest tolerated term/envelope ratio (limits cancellation inside the
/// series to ~3 digits).
const SERIES_PEAK_CAP: f64 = 1e3;

/// Frobenius coefficients for `u = sum_k c_k r^{sigma + 2k}`,
/// `c_k = (-2mE c_{k-1} + 2mg c_{k-2}) / (2k (2k ± 2P))`.
fn frobenius_coeffs<T: Real>(derived: &DerivedParams<T>, energy: T, plus_branch: bool) -> Vec<T> {
    let two_m_e = derived.two_m() * energy;
    let two_m_g = derived.kappa_scale * derived.kappa_scale;
    let two_p = derived.p + derived.p;
    let mut c = Vec::with_capacity(FROBENIUS_TERMS + 1);
    c.push(T::one());
    for k in 1..=FROBENIUS_TERMS {
        let kf = cst::<T>(2.0 * k as f64);
        let denom = kf * if plus_branch { kf + two_p } else { kf - two_p };
        let prev = c[k - 1];
        let prev2 = if k >= 2 { c[k - 2] } else { T::zero() };
        c.push((-two_m_e * prev + two_m_g * prev2) / denom);
    }
    c
}

struct BoundaryEvaluator<T> {
    sigma_plus: T,
    sigma_minus: T,
    a_st: T,
    a_add: T,
    coeffs_plus: Vec<T>,
    coeffs_minus: Vec<T>,
}

impl<T: Real> BoundaryEvaluator<T> {
    fn new(derived: &DerivedParams<T>, energy: T, boundary: &BoundarySeries<T>) -> Self {
        assert!(
            boundary.a_st != T::zero() || boundary.a_add != T::zero(),
            "boundary coefficients must not both vanish"
        );
        let half = cst::<T>(0.5);
        Self {
            sigma_plus: half + derived.p,
            sigma_minus: half - derived.p,
            a_st: boundary.a_st,
            a_add: boundary.a_add,
            coeffs_plus: if boundary.a_st != T::zero() {
                frobenius_coeffs(derived, energy, true)
            } else {
                Vec::new()
            },
            coeffs_minus: if boundary.a_add != T::zero() {
                frobenius_coeffs(derived, energy, false)
            } else {
                Vec::new()
            },
        }
    }

    /// Evaluate `u(r)`; `None` once the truncated series can no longer
    /// deliver near-machine accuracy at this radius.
    fn eval(&self, r: T) -> Option<T> {
        let r2 = r * r;
        let mut value = T::zero();
        let mut envelope = T::zero();
        for (amp, sigma, coeffs) in [
            (self.a_st, self.sigma_plus, &self.coeffs_plus),
            (self.a_add, self.sigma_minus, &self.coeffs_minus),
        ] {
            if amp == T::zero() {
                continue;
            }
            let scale = amp * r.powf(sigma);
            envelope += scale.abs();
            let mut sum = T::zero();
            let mut pow = T::one();
            let mut peak = T::zero();
            let mut last = T::one();
            for &ck in coeffs {
                last = ck * pow;
                peak = peak.max(last.abs());
                sum += last;
                pow *= r2;
            }
            if last.abs() > cst::<T>(SERIES_TOL) * sum.abs().max(T::one())
                || peak > cst::<T>(SERIES_PEAK_CAP) * sum.abs().max(T::one())
            {
                return None;
            }
            value += scale * sum;
        }
        Some(value)
    }
}

/// Wavelength criterion: the step must resolve the local oscillation in the
/// classically allowed region. The near-origin power layer (where the
/// `1/r^2` term dominates `Q`) is excluded: it is handled by the boundary
/// series, not by the difference scheme.
fn check_step<T: Real>(
    derived: &DerivedParams<T>,
    energy: T,
    grid: &RadialGrid<T>,
) -> Result<(), OracleError> {
    let c_abs = (derived.p * derived.p - cst::<T>(0.25)).abs();
    let k2 = derived.kappa_scale * derived.kappa_scale;
    let two_m_e_abs = (derived.two_m() * energy).abs();
    let mut k_max_sq = T::zero();
    for i in 0..grid.len() {
        let r = grid.r(i);
        let centrifugal = c_abs / (r * r);
        if centrifugal > two_m_e_abs + k2 * r * r {
            continue; // power layer
        }
        let minus_q = -q_at(derived, energy, r);
        if minus_q > k_max_sq {
            k_max_sq = minus_q;
        }
    }
    if grid.step() * k_max_sq.sqrt() > cst(0.5) {
        return Err(OracleError::Step(
            "step * sqrt(max |Q|) exceeds 0.5 in the oscillatory region",
        ));
    }
    Ok(())
}

const RENORM_EVERY: usize = 1000;

struct Marcher<T> {
    u: Vec<T>,
    log_scale: Vec<T>,
    log_acc: T,
}

impl<T: Real> Marcher<T> {
    fn new(len: usize) -> Self {
        Self {
            u: vec![T::zero(); len],
            log_scale: vec![T::zero(); len],
            log_acc: T::zero(),
        }
    }

    fn store(&mut self, i: usize, v: T) {
        self.u[i] = v;
        self.log_scale[i] = self.log_acc;
    }

    /// Rescale the marching pair when it leaves a safe magnitude window;
    /// `log_scale` keeps the ledger.
    fn renorm(&mut self, prev: &mut T, cur: &mut T) {
        let m = prev.abs().max(cur.abs());
        if m > cst(1e10) || (m > T::zero() && m < cst(1e-10)) {
            *prev /= m;
            *cur /= m;
            self.log_acc += m.ln();
        }
    }
}

fn numerov_t<T: Real>(derived: &DerivedParams<T>, energy: T, r: T, h: T) -> T {
    h * h * q_at(derived, energy, r) / cst(12.0)
}

/// Integrate the radial equation along the grid.
///
/// Outward: the two-branch boundary series fills the power layer (where it
/// converges below 1e-13) and Numerov continues from its last two points.
/// Inward: WKB seed at `r_max` (which must lie in the classically forbidden
/// region), marching down; samples below the inner turning point of a
/// deep-lying state are outside the scheme's validity and only the portion
/// down to the matching radius is used by the shooting method.
pub fn numerov_integrate<T: Real>(
    problem: &SpectralProblem<T>,
    energy: T,
    grid: &RadialGrid<T>,
    boundary: &BoundarySeries<T>,
    direction: Direction,
) -> Result<NumerovSolution<T>, OracleError> {
    match direction {
        Direction::Outward => integrate_outward(problem, energy, grid, boundary, grid.len() - 1),
        Direction::Inward => integrate_inward(problem, energy, grid, 0),
    }
}

fn integrate_outward<T: Real>(
    problem: &SpectralProblem<T>,
    energy: T,
    grid: &RadialGrid<T>,
    boundary: &BoundarySeries<T>,
    stop: usize,
) -> Result<NumerovSolution<T>, OracleError> {
    let derived = &problem.derived;
    check_step(derived, energy, grid)?;
    let series = BoundaryEvaluator::new(derived, energy, boundary);
    let mut m = Marcher::new(grid.len());

    // series fill
    let mut filled = 0usize;
    while filled <= stop {
        match series.eval(grid.r(filled)) {
            Some(v) => {
                m.store(filled, v);
                filled += 1;
            }
            None => break,
        }
    }
    if filled < 2 {
        return Err(OracleError::Step(
            "boundary series does not converge over the first grid points",
        ));
    }
    if filled > stop {
        return Ok(NumerovSolution {
            u: m.u,
            log_scale: m.log_scale,
        });
    }

    let h = grid.step();
    let mut prev = m.u[filled - 2];
    let mut cur = m.u[filled - 1];
    let mut t_prev = numerov_t(derived, energy, grid.r(filled - 2), h);
    let mut t_cur = numerov_t(derived, energy, grid.r(filled - 1), h);
    let two = cst::<T>(2.0);
    let ten = cst::<T>(10.0);
    for i in filled..=stop {
        let t_next = numerov_t(derived, energy, grid.r(i), h);
        let next = ((two + ten * t_cur) * cur - (T::one() - t_prev) * prev) / (T::one() - t_next);
        prev = cur;
        cur = next;
        t_prev = t_cur;
        t_cur = t_next;
        if i % RENORM_EVERY == 0 {
            m.renorm(&mut prev, &mut cur);
        }
        m.store(i, cur);
        // keep the stored predecessor consistent with the running pair
        m.u[i - 1] = prev;
        m.log_scale[i - 1] = m.log_acc;
    }
    Ok(NumerovSolution {
        u: m.u,
        log_scale: m.log_scale,
    })
}

fn integrate_inward<T: Real>(
    problem: &SpectralProblem<T>,
    energy: T,
    grid: &RadialGrid<T>,
    stop: usize,
) -> Result<NumerovSolution<T>, OracleError> {
    let derived = &problem.derived;
    check_step(derived, energy, grid)?;
    let n = grid.len() - 1;
    let h = grid.step();
    let q_n = q_at(derived, energy, grid.r(n));
    let q_n1 = q_at(derived, energy, grid.r(n - 1));
    if !(q_n > T::zero() && q_n1 > T::zero()) {
        return Err(OracleError::Step(
            "r_max lies inside the classically allowed region; enlarge the grid",
        ));
    }
    // WKB seed: u grows like exp(+int sqrt(Q)) marching inward
    let mid = grid.r(n) - h * cst(0.5);
    let q_mid = q_at(derived, energy, mid);
    let integral = h / cst::<T>(6.0)
        * (q_n1.sqrt() + cst::<T>(4.0) * q_mid.max(T::zero()).sqrt() + q_n.sqrt());
    let ratio = (q_n / q_n1).powf(cst(0.25));

    let mut m = Marcher::new(grid.len());
    m.store(n, T::one());
    m.store(n - 1, ratio * integral.exp());

    let mut prev = m.u[n]; // index i+1 during the downward march
    let mut cur = m.u[n - 1]; // index i
    let mut t_prev = numerov_t(derived, energy, grid.r(n), h);
    let mut t_cur = numerov_t(derived, energy, grid.r(n - 1), h);
    let two = cst::<T>(2.0);
    let ten = cst::<T>(10.0);
    let mut i = n - 1;
    while i > stop {
        let t_next = numerov_t(derived, energy, grid.r(i - 1), h);
        let next = ((two + ten * t_cur) * cur - (T::one() - t_prev) * prev) / (T::one() - t_next);
        prev = cur;
        cur = next;
        t_prev = t_cur;
        t_cur = t_next;
        if i % RENORM_EVERY == 0 {
            m.renorm(&mut prev, &mut cur);
        }
        i -= 1;
        m.store(i, cur);
        m.u[i + 1] = prev;
        m.log_scale[i + 1] = m.log_acc;
    }
    Ok(NumerovSolution {
        u: m.u,
        log_scale: m.log_scale,
    })
}

/// Outer turning point (`Q = 0`) for the matching radius.
fn turning_point<T: Real>(derived: &DerivedParams<T>, energy: T) -> T {
    let k2 = derived.kappa_scale * derived.kappa_scale;
    let two_m_e = derived.two_m() * energy;
    let c = derived.p * derived.p - cst::<T>(0.25);
    let disc = (two_m_e * two_m_e - cst::<T>(4.0) * k2 * c).max(T::zero());
    let t = (two_m_e + disc.sqrt()) / (cst::<T>(2.0) * k2);
    t.max(T::zero()).sqrt()
}

/// Normalized two-sided mismatch at the matching index: the discrete
/// Wronskian of the outward and inward solutions, which vanishes exactly at
/// the discrete eigenvalues and changes sign across each.
fn mismatch_at<T: Real>(
    problem: &SpectralProblem<T>,
    energy: T,
    grid: &RadialGrid<T>,
    boundary: &BoundarySeries<T>,
    idx: usize,
) -> Result<T, OracleError> {
    let out = integrate_outward(problem, energy, grid, boundary, idx + 1)?;
    let inw = integrate_inward(problem, energy, grid, idx)?;
    let e1 = out.log_scale[idx] + inw.log_scale[idx + 1];
    let e2 = out.log_scale[idx + 1] + inw.log_scale[idx];
    let base = e1.max(e2);
    let term1 = out.u[idx] * inw.u[idx + 1] * (e1 - base).exp();
    let term2 = out.u[idx + 1] * inw.u[idx] * (e2 - base).exp();
    let scale = term1.abs() + term2.abs();
    if scale == T::zero() {
        return Ok(T::zero());
    }
    Ok((term1 - term2) / scale)
}

/// Eigenvalue by bisection on the two-sided mismatch; the bracket must
/// contain exactly one eigenvalue. Converges to `|dE| <= 1e-9 omega`.
pub fn shoot_eigenvalue<T: Real>(
    problem: &SpectralProblem<T>,
    bracket: (T, T),
    grid: &RadialGrid<T>,
) -> Result<T, OracleError> {
    let tol = cst::<T>(1e-9) * problem.derived.omega;
    shoot_with_match(problem, bracket, grid, None, tol)
}

fn shoot_with_match<T: Real>(
    problem: &SpectralProblem<T>,
    (mut lo, mut hi): (T, T),
    grid: &RadialGrid<T>,
    match_override: Option<usize>,
    tol: T,
) -> Result<T, OracleError> {
    let boundary = BoundarySeries::for_problem(problem);
    let idx_for = |e: T| {
        match_override
            .unwrap_or_else(|| grid.index_near(turning_point(&problem.derived, e), 3))
    };
    let mut w_lo = mismatch_at(problem, lo, grid, &boundary, idx_for(lo))?;
    let w_hi = mismatch_at(problem, hi, grid, &boundary, idx_for(hi))?;
    if w_lo == T::zero() {
        return Ok(lo);
    }
    if w_hi == T::zero() {
        return Ok(hi);
    }
    if (w_lo > T::zero()) == (w_hi > T::zero()) {
        return Err(OracleError::NoSignChange);
    }
    for _ in 0..200 {
        if (hi - lo).abs() <= tol {
            break;
        }
        let mid = lo + (hi - lo) * cst(0.5);
        let w_mid = mismatch_at(problem, mid, grid, &boundary, idx_for(mid))?;
        if w_mid == T::zero() {
            return Ok(mid);
        }
        if (w_mid > T::zero()) == (w_lo > T::zero()) {
            lo = mid;
            w_lo = w_mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo + (hi - lo) * cst(0.5))
}

/// Composite-Simpson value of `int f g r^2 dr` over the grid. The omitted
/// tail beyond `r_max` is below 1e-12 of the integral for bound states on
/// the default grids (Gaussian decay), and the omitted head below `r_min`
/// is below the tightest orthogonality tolerance on the quadrature grid.
pub fn inner_product<T: Real>(
    f: &[T],
    g: &[T],
    grid: &RadialGrid<T>,
) -> Result<T, OracleError> {
    if f.len() != grid.len() || g.len() != grid.len() {
        return Err(OracleError::GridMismatch);
    }
    let n = grid.len() - 1;
    let mut sum = T::zero();
    let mut comp = T::zero();
    let mut add = |v: T| {
        let y = v - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    };
    for i in 0..=n {
        let w = if i == 0 || i == n {
            T::one()
        } else if i % 2 == 1 {
            cst(4.0)
        } else {
            cst(2.0)
        };
        let r = grid.r(i);
        add(w * f[i] * g[i] * r * r);
    }
    Ok(sum * grid.step() / cst(3.0))
}

/// Sample a level's radial function on the grid with unit coefficient,
/// switching from the two-term form to the stable decaying representation
/// past `kappa = 20` on genuinely mixed states.
pub fn sample_radial<T: Real>(
    problem: &SpectralProblem<T>,
    level: &EnergyLevel<T>,
    grid: &RadialGrid<T>,
) -> Vec<T> {
    let w = wavefn::build(problem, level, T::one());
    sample_wavefunction(&w, grid)
}

/// As [`sample_radial`] for an already-built wavefunction.
pub fn sample_wavefunction<T: Real>(
    w: &RadialWavefunction<T>,
    grid: &RadialGrid<T>,
) -> Vec<T> {
    let mixed = w.c_coeff != T::zero() && w.d_coeff != T::zero();
    let cross = cst::<T>(20.0);
    (0..grid.len())
        .map(|i| {
            let r = grid.r(i);
            if mixed && w.derived.kappa_scale * r * r > cross {
                wavefn::eval_whittaker(w, r)
            } else {
                wavefn::eval_general(w, r)
            }
        })
        .collect()
}

/// Quadrature normalization: the coefficient `c` such that the state built
/// with `c_coeff = c` has unit norm. Works on all branches (the pure ones
/// have no closed form).
pub fn normalize_coefficient<T: Real>(
    problem: &SpectralProblem<T>,
    level: &EnergyLevel<T>,
    grid: &RadialGrid<T>,
) -> Result<T, OracleError> {
    let samples = sample_radial(problem, level, grid);
    let norm = inner_product(&samples, &samples, grid)?;
    Ok(norm.sqrt().recip())
}

/// Gram matrix of the normalized eigenstates of one problem.
pub fn orthogonality_defect<T: Real>(
    problem: &SpectralProblem<T>,
    levels: &[EnergyLevel<T>],
    grid: &RadialGrid<T>,
) -> Result<Vec<Vec<T>>, OracleError> {
    let mut states = Vec::with_capacity(levels.len());
    for level in levels {
        let mut samples = sample_radial(problem, level, grid);
        let norm = inner_product(&samples, &samples, grid)?;
        let scale = norm.sqrt().recip();
        for v in &mut samples {
            *v *= scale;
        }
        states.push(samples);
    }
    let mut gram = vec![vec![T::zero(); levels.len()]; levels.len()];
    for i in 0..levels.len() {
        for j in i..levels.len() {
            let v = inner_product(&states[i], &states[j], grid)?;
            gram[i][j] = v;
            gram[j][i] = v;
        }
    }
    Ok(gram)
}

/// Least-squares extraction of the small-r coefficients `(a_st, a_add)` of
/// `u = r R` against `{r^{1/2+P}, r^{1/2-P}}` on a log-spaced sample of
/// `[r_lo, 100 r_lo]`.
pub fn fit_boundary_coefficients<T: Real>(
    radial: impl Fn(T) -> T,
    derived: &DerivedParams<T>,
    r_lo: T,
) -> BoundarySeries<T> {
    let half = cst::<T>(0.5);
    let sp = half + derived.p;
    let sm = half - derived.p;
    let n = 48;
    let mut s11 = T::zero();
    let mut s12 = T::zero();
    let mut s22 = T::zero();
    let mut b1 = T::zero();
    let mut b2 = T::zero();
    for i in 0..n {
        let r = r_lo * cst::<T>(100.0).powf(cst(i as f64 / (n - 1) as f64));
        let u = r * radial(r);
        let f1 = r.powf(sp);
        let f2 = r.powf(sm);
        s11 += f1 * f1;
        s12 += f1 * f2;
        s22 += f2 * f2;
        b1 += f1 * u;
        b2 += f2 * u;
    }
    let det = s11 * s22 - s12 * s12;
    BoundarySeries {
        a_st: (s22 * b1 - s12 * b2) / det,
        a_add: (s11 * b2 - s12 * b1) / det,
    }
}

/// Count strict sign changes, skipping samples below `threshold` times the
/// peak magnitude (node counting on sampled wavefunctions).
pub fn count_nodes<T: Real>(values: &[T], threshold: T) -> usize {
    let peak = values.iter().fold(T::zero(), |m, v| m.max(v.abs()));
    let cut = threshold * peak;
    let mut nodes = 0;
    let mut last_sign = T::zero();
    for &v in values {
        if v.abs() <= cut {
            continue;
        }
        let s = v.signum();
        if last_sign != T::zero() && s != last_sign {
            nodes += 1;
        }
        last_sign = s;
    }
    nodes
}
