//! Cross-module property tests: randomized invariants that tie the
//! analytic machinery, the wavefunctions and the integration oracle
//! together.

use proptest::prelude::*;
use singular_osc::model::{
    classify, derive, tau_to_boundary_ratio, ExtensionParameter, PhysicalParams, Regime,
};
use singular_osc::oracle::{
    self, count_nodes, fit_boundary_coefficients, inner_product, RadialGrid,
};
use singular_osc::spectrum::{
    eigenvalue_rhs, f_p, negative_level_exists, solve_spectrum, tau_lower_bound, SpectralProblem,
};
use singular_osc::wavefn;

fn sae_problem(p: f64, tau: f64) -> SpectralProblem<f64> {
    let params = PhysicalParams::new(0.5, 0.25 - p * p, 1.0, 0).unwrap();
    SpectralProblem::new(derive(&params).unwrap(), ExtensionParameter::finite(tau)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Regime classification agrees with the defining inequalities for
    /// arbitrary admissible parameters.
    #[test]
    fn classification_matches_inequalities(
        m in 0.05f64..5.0,
        v0 in 0.0f64..2.0,
        g in 0.05f64..5.0,
        l in 0u32..4,
    ) {
        let params = PhysicalParams::new(m, v0, g, l).unwrap();
        let two_m_v0 = 2.0 * m * v0;
        let lf = l as f64;
        let expected = if two_m_v0 >= (lf + 0.5) * (lf + 0.5) {
            Regime::FallToCenter
        } else if two_m_v0 > lf * (lf + 1.0) {
            Regime::SaeRequired
        } else {
            Regime::Regular
        };
        prop_assert_eq!(classify(&params), expected);
        match derive(&params) {
            Ok(d) => {
                prop_assert!(expected != Regime::FallToCenter);
                // index identity forced by the definition of s
                let lhs = (2.0 * d.s + 0.5) * (2.0 * d.s + 0.5);
                let rhs = (lf + 0.5) * (lf + 0.5) - two_m_v0;
                prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs().max(1.0));
            }
            Err(_) => prop_assert_eq!(expected, Regime::FallToCenter),
        }
    }

    /// Spectra scale like 1/lambda under (m, V0, g) -> (lam m, V0/lam, g/lam)
    /// and the spacing diagnostic is scale-free.
    #[test]
    fn spectra_are_dimensionally_covariant(
        lam in 0.2f64..5.0,
        p in 0.1f64..0.45,
        tau in -3.0f64..-0.1,
    ) {
        let v0 = 0.25 - p * p;
        let base = PhysicalParams::new(0.5, v0, 1.0, 0).unwrap();
        let scaled = PhysicalParams::new(0.5 * lam, v0 / lam, 1.0 / lam, 0).unwrap();
        let pr0 = SpectralProblem::new(derive(&base).unwrap(), ExtensionParameter::finite(tau)).unwrap();
        let pr1 = SpectralProblem::new(derive(&scaled).unwrap(), ExtensionParameter::finite(tau)).unwrap();
        // the ground level for small |tau| and small P can be very deep;
        // the solver tracks it in log space, so give it unlimited room
        let s0 = solve_spectrum(&pr0, 3, -1e20).unwrap();
        let s1 = solve_spectrum(&pr1, 3, -1e20 / lam).unwrap();
        for (a, b) in s0.levels.iter().zip(&s1.levels) {
            prop_assert!((a.energy / lam / b.energy - 1.0).abs() < 1e-9);
        }
    }

    /// The census predicate matches the solver across the admissible tau
    /// range, for arbitrary P.
    #[test]
    fn census_predicate_matches_solver(
        p in 0.08f64..0.45,
        frac in 0.02f64..0.98,
    ) {
        let d = derive(&PhysicalParams::new(0.5, 0.25 - p * p, 1.0, 0).unwrap()).unwrap();
        let tau = tau_lower_bound(&d) * frac;
        let pr = sae_problem(p, tau);
        let predicted = negative_level_exists(&pr).unwrap();
        let sol = solve_spectrum(&pr, 2, -1e40).unwrap();
        let negatives = sol.levels.iter().filter(|l| l.energy < 0.0).count();
        prop_assert!(negatives <= 1);
        prop_assert_eq!(negatives == 1, predicted);
    }
}

/// The fitted small-r coefficient ratio reproduces tau through the
/// documented conversion constant, in non-canonical units too.
#[test]
fn boundary_ratio_bridge_holds_in_odd_units() {
    let params = PhysicalParams::new(0.7_f64, 0.11, 2.3, 0).unwrap();
    let derived = derive(&params).unwrap();
    assert_eq!(classify(&params), Regime::SaeRequired);
    for tau in [-0.6, -1.7] {
        let pr = SpectralProblem::new(derived, ExtensionParameter::finite(tau)).unwrap();
        let sol = solve_spectrum(&pr, 1, -1e8).unwrap();
        let w = wavefn::build(&pr, &sol.levels[0], 1.0);
        let scale = derived.kappa_scale.sqrt().recip();
        let fit = fit_boundary_coefficients(
            |r| wavefn::eval_general(&w, r),
            &derived,
            1e-6 * scale,
        );
        let got = fit.a_add / fit.a_st;
        let expect = tau * tau_to_boundary_ratio(&derived);
        assert!(
            ((got - expect) / expect).abs() < 1e-5,
            "tau = {tau}: {got} vs {expect}"
        );
    }
}

/// Closed-form normalization agrees with quadrature away from canonical
/// units (exercises every (2mg) power in the prefactors).
#[test]
fn normalization_constant_in_odd_units() {
    let params = PhysicalParams::new(0.7_f64, 0.11, 2.3, 0).unwrap();
    let derived = derive(&params).unwrap();
    let pr = SpectralProblem::new(derived, ExtensionParameter::finite(-1.3)).unwrap();
    let grid = RadialGrid::quadrature_default(&derived);
    for idx in 0..2usize {
        let sol = solve_spectrum(&pr, idx + 1, -1e8).unwrap();
        let w = wavefn::build(&pr, &sol.levels[idx], 1.0);
        let c2 = wavefn::normalization_constant(&w).unwrap();
        let samples = oracle::sample_wavefunction(&w, &grid);
        let quad = inner_product(&samples, &samples, &grid).unwrap();
        assert!(
            (c2 * quad - 1.0).abs() < 1e-6,
            "level {idx}: C^2 * quad = {}",
            c2 * quad
        );
    }
}

/// Sturm oscillation: the k-th level's wavefunction has exactly k nodes,
/// and the oracle's integrated solution counts the same nodes.
#[test]
fn node_counts_match_between_wavefn_and_oracle() {
    let pr = sae_problem(0.3, -0.8);
    let grid = RadialGrid::new(1e-6, 6.5, 30_000).unwrap();
    let sol = solve_spectrum(&pr, 4, -1e8).unwrap();
    let boundary = singular_osc::oracle::BoundarySeries::for_problem(&pr);
    for (k, level) in sol.levels.iter().enumerate() {
        let analytic = oracle::sample_radial(&pr, level, &grid);
        assert_eq!(count_nodes(&analytic, 1e-9), k, "analytic, level {k}");
        let numerov = oracle::numerov_integrate(
            &pr,
            level.energy,
            &grid,
            &boundary,
            oracle::Direction::Outward,
        )
        .unwrap();
        // the outward march of a bound state is trustworthy only until the
        // decaying true solution meets the exponentially growing roundoff
        // contaminant (~15 e-foldings past the turning point); all nodes
        // sit well inside that, so count on the first 65% of the grid
        let interior = &numerov.u[..grid.len() * 65 / 100];
        assert_eq!(count_nodes(interior, 1e-5), k, "numerov, level {k}");
    }
}

/// Two-term representation and the pure-branch shortcut agree with the
/// solver in the small-|tau| limit, level by level.
#[test]
fn small_tau_limits_converge_to_pure_branches() {
    let d = derive(&PhysicalParams::new(0.5, 0.25 - 0.09, 1.0, 0).unwrap()).unwrap();
    // generic solutions approach the closed forms from either side
    let cases: [(f64, f64); 2] = [(-1e-7, 0.3), (-1e7, -0.3)];
    for (tau, sign) in cases {
        let base: Vec<f64> = (0..3).map(|n| 2.0 * (2.0 * n as f64 + 1.0 + sign)).collect();
        let pr = SpectralProblem::new(d, ExtensionParameter::finite(tau)).unwrap();
        let sol = solve_spectrum(&pr, 4, -1e40).unwrap();
        let skip = if tau.abs() < 1.0 { 1 } else { 0 }; // runaway ground level
        for (lvl, expect) in sol.levels[skip..].iter().zip(base) {
            assert!(
                (lvl.energy - expect).abs() < 1e-4,
                "tau = {tau}: {} vs {expect}",
                lvl.energy
            );
        }
    }
}

/// f_P evaluated against the eigenvalue right-hand side at the returned
/// roots: residuals sit at the root tolerance.
#[test]
fn returned_roots_satisfy_the_equation() {
    for (p, tau) in [(0.1, -0.4), (0.25, -1.0), (0.4, -2.2), (0.3, 0.7)] {
        let pr = sae_problem(p, tau);
        let rhs = eigenvalue_rhs(pr.tau, &pr.derived).unwrap();
        let sol = solve_spectrum(&pr, 4, -1e8).unwrap();
        for level in &sol.levels {
            let f = f_p(level.energy, &pr.derived).unwrap();
            // df/dE is O(1) or larger on every root, so the function
            // residual reflects the energy tolerance
            assert!(
                (f - rhs).abs() < 1e-7,
                "P={p}, tau={tau}, E={}: residual {}",
                level.energy,
                f - rhs
            );
        }
    }
}
