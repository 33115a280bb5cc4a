//! Brute-force oracles for the closed-form constructions: direct x-space
//! quadrature of the evaluators, finite differences of the evaluators and of
//! the mass–frequency map, and the defining equations themselves. Every
//! oracle here avoids the tail-integral substitution the implementation
//! uses.

use deltanls::analytic::{
    dmass_domega, ground_state, mass_derivative_bracket, mass_of_omega, omega_of_mass,
    pointwise_ground_state, soliton, GroundStateSolution,
};

/// Adaptive Simpson quadrature, independent of the crate's integrator.
fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let whole = (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b));
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let left = (m - a) / 6.0 * (f(a) + 4.0 * f(lm) + f(m));
    let right = (b - m) / 6.0 * (f(m) + 4.0 * f(rm) + f(b));
    if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
        left + right + (left + right - whole) / 15.0
    } else {
        simpson(f, a, m, 0.5 * tol, depth - 1) + simpson(f, m, b, 0.5 * tol, depth - 1)
    }
}

/// Squared L² norm of an even profile by direct quadrature out to where the
/// tail is negligible.
fn mass_by_quadrature(gs: &GroundStateSolution) -> f64 {
    let cutoff = 60.0 / gs.omega().sqrt();
    2.0 * simpson(&|x| gs.eval(x) * gs.eval(x), 0.0, cutoff, 1e-14, 48)
}

#[test]
fn stored_mass_agrees_with_direct_quadrature() {
    let cases: Vec<GroundStateSolution> = vec![
        ground_state(4.0, 3.0, 1.0).unwrap(),
        ground_state(6.0, 4.0, 1.0).unwrap(),
        ground_state(3.0, 3.5, 0.4).unwrap(),
        ground_state(5.5, 2.5, 2.0).unwrap(),
        pointwise_ground_state(3.0, 2.0).unwrap(),
        pointwise_ground_state(2.5, 0.7).unwrap(),
    ];
    for gs in &cases {
        let direct = mass_by_quadrature(gs);
        let stored = gs.mass();
        assert!(
            (direct - stored).abs() <= 1e-10 * stored,
            "stored {stored} vs quadrature {direct}"
        );
    }
}

#[test]
fn jump_condition_from_closed_form_derivatives() {
    // u'(0-) - u'(0+) = u(0)^{q-1} with both sides in closed form
    for (p, q, omega) in [
        (4.0, 3.0, 1.0),
        (6.0, 4.0, 0.5),
        (3.0, 2.5, 2.0),
        (5.0, 3.5, 0.1),
        (6.0, 3.0, 1.0),
    ] {
        let gs = ground_state(p, q, omega).unwrap();
        let jump = -2.0 * gs.derivative_at_origin_plus();
        let point = gs.origin_value().powf(q - 1.0);
        assert!(
            (jump - point).abs() <= 1e-10 * point,
            "p={p} q={q} omega={omega}: jump {jump} vs {point}"
        );
    }
}

#[test]
fn interior_ode_by_five_point_differences() {
    // |u'' + u^{p-1} - omega u| small away from the origin, with u'' from a
    // five-point stencil on the evaluator
    for (p, q, omega) in [(4.0, 3.0, 1.0), (6.0, 4.0, 1.0), (3.5, 2.5, 0.5)] {
        let gs = ground_state(p, q, omega).unwrap();
        let delta = 1e-2;
        let mut worst: f64 = 0.0;
        for k in 1..=400 {
            let x = 0.05 * k as f64 / omega.sqrt().max(0.3);
            let upp = (-gs.eval(x - 2.0 * delta) + 16.0 * gs.eval(x - delta) - 30.0 * gs.eval(x)
                + 16.0 * gs.eval(x + delta)
                - gs.eval(x + 2.0 * delta))
                / (12.0 * delta * delta);
            let r = upp + gs.eval(x).powf(p - 1.0) - omega * gs.eval(x);
            worst = worst.max(r.abs());
        }
        assert!(
            worst <= 1e-6,
            "p={p} q={q} omega={omega}: sup residual {worst}"
        );
    }
}

#[test]
fn soliton_solves_its_equation() {
    let phi = soliton(4.8, 0.9).unwrap();
    let delta = 1e-2;
    for k in 1..200 {
        let x = 0.04 * k as f64;
        let upp = (-phi.eval(x - 2.0 * delta) + 16.0 * phi.eval(x - delta) - 30.0 * phi.eval(x)
            + 16.0 * phi.eval(x + delta)
            - phi.eval(x + 2.0 * delta))
            / (12.0 * delta * delta);
        let r = upp + phi.eval(x).powf(3.8) - 0.9 * phi.eval(x);
        assert!(r.abs() <= 1e-6, "x={x}: residual {r}");
    }
}

#[test]
fn mass_derivative_agrees_with_central_differences() {
    for &(p, q) in &[(3.0, 3.0), (4.0, 3.0), (5.0, 3.5), (3.0, 4.0), (6.0, 3.0)] {
        for &omega in &[0.2, 1.0, 4.0] {
            let d = dmass_domega(p, q, omega).unwrap();
            let step = 1e-4 * omega;
            let fd = (mass_of_omega(p, q, omega + step).unwrap()
                - mass_of_omega(p, q, omega - step).unwrap())
                / (2.0 * step);
            assert!(
                (d - fd).abs() <= 1e-6 * d.abs().max(fd.abs()),
                "p={p} q={q} omega={omega}: {d} vs fd {fd}"
            );
            assert!(d > 0.0);
        }
    }
    // reference pair checked at a fixed small step
    let fd = (mass_of_omega(3.0, 3.5, 1.0 + 1e-5).unwrap()
        - mass_of_omega(3.0, 3.5, 1.0 - 1e-5).unwrap())
        / 2e-5;
    let d = dmass_domega(3.0, 3.5, 1.0).unwrap();
    assert!(d > 0.0 && (d - fd).abs() <= 1e-6 * d);
}

#[test]
fn mass_frequency_round_trip() {
    for &(p, q, mu) in &[
        (3.0, 3.0, 1.0),
        (4.0, 3.0, 0.25),
        (4.0, 3.0, 10.0),
        (5.0, 3.5, 0.5),
        (4.0, 2.5, 2.0),
        (6.0, 3.0, 1.5),
        (3.0, 4.0, 1.2),
    ] {
        let omega = omega_of_mass(p, q, mu).unwrap();
        let back = mass_of_omega(p, q, omega).unwrap();
        assert!(
            (back - mu).abs() <= 1e-10 * mu,
            "p={p} q={q} mu={mu}: round trip {back}"
        );
    }
}

#[test]
fn mass_derivative_bracket_positive() {
    // the sign kernel of the monotone mass map, sampled over its whole box
    for i in 1..20 {
        let t = i as f64 / 20.0;
        for j in 1..10 {
            let sigma = j as f64 * 0.2;
            for k in 1..8 {
                let q = 2.0 + k as f64 * 0.25;
                let b = mass_derivative_bracket(t, sigma, q);
                assert!(b > 0.0, "t={t} sigma={sigma} q={q}: bracket {b}");
            }
        }
    }
}
