mod common;

use std::f64::consts::{FRAC_PI_3, FRAC_PI_4};

use proptest::prelude::*;

use common::force_gap;
use prp3::dynamics::{solve_instant, static_hold, DynamicsResult};
use prp3::kinematics::{inverse_geometry, solve_legs, PlatformState};
use prp3::model::{standard_params, RobotParams};
use prp3::oracle::{body_motions, energy_report, newton_euler_solve};
use prp3::smallmat::{DenseLu, Vec3};

const SQRT3: f64 = 1.732_050_807_568_877_2;

fn state() -> impl Strategy<Value = PlatformState> {
    (prop::array::uniform3(-1.0..1.0f64), prop::array::uniform6(-1.0..1.0f64)).prop_map(|(p, m)| PlatformState {
        x: 0.05 * p[0],
        y: 0.05 * p[1],
        phi: FRAC_PI_4 * p[2],
        xd: 0.2 * m[0],
        yd: 0.2 * m[1],
        phid: 0.5 * m[2],
        xdd: m[3],
        ydd: m[4],
        phidd: 2.0 * m[5],
    })
}

fn forces(d: &DynamicsResult) -> Vec<f64> {
    d.legs.iter().flat_map(|l| [l.f10, l.f21y, l.f21z]).collect()
}

fn solve(params: &RobotParams, p: &PlatformState) -> Vec<f64> {
    forces(&solve_instant(params, p).unwrap().dynamics)
}

fn max_gap(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn with_load(force: [f64; 2], moment: f64) -> RobotParams {
    RobotParams { platform_force: Vec3::new(force[0], force[1], 0.0), platform_moment: moment, ..standard_params() }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn virtual_work_agrees_with_newton_euler(p in state(), f in prop::array::uniform2(-20.0..20.0f64), m in -2.0..2.0f64) {
        let params = with_load(f, m);
        let sol = solve_instant(&params, &p).unwrap();
        let ne = newton_euler_solve(&params, &p, &sol.legs).unwrap();
        prop_assert!(force_gap(&sol.dynamics, &ne) <= 1e-8);
        prop_assert!(ne.residual < 1e-10);
    }

    #[test]
    fn base_reactions_carry_the_whole_robot(p in state(), f in prop::array::uniform2(-20.0..20.0f64), m in -2.0..2.0f64) {
        let params = with_load(f, m);
        let legs = solve_legs(&params, &p).unwrap();
        let ne = newton_euler_solve(&params, &p, &legs).unwrap();
        let mut reaction = [0.0; 2];
        for (i, c) in ne.legs.iter().enumerate() {
            let (s, co) = params.alpha[i].sin_cos();
            reaction[0] += c.actuator * co - c.base_normal * s;
            reaction[1] += c.actuator * s + c.base_normal * co;
        }
        let mut need = [-f[0], -f[1]];
        for b in body_motions(&params, &p, &legs) {
            need[0] += b.mass * (b.acc[0] - params.gravity.x());
            need[1] += b.mass * (b.acc[1] - params.gravity.y());
        }
        prop_assert!((reaction[0] - need[0]).abs() < 1e-9 && (reaction[1] - need[1]).abs() < 1e-9);
    }

    #[test]
    fn gravity_enters_additively(p in state()) {
        let params = standard_params();
        let free = RobotParams { gravity: Vec3::ZERO, ..params.clone() };
        let full = solve(&params, &p);
        let inertial = solve(&free, &p);
        let weight = solve(&params, &PlatformState::at_rest(p.x, p.y, p.phi));
        let sum: Vec<f64> = inertial.iter().zip(&weight).map(|(a, b)| a + b).collect();
        prop_assert!(max_gap(&full, &sum) < 1e-10);
    }

    #[test]
    fn platform_load_is_linear(p in state(), f in prop::array::uniform2(-20.0..20.0f64), m in -2.0..2.0f64, s in -3.0..3.0f64) {
        let base = solve(&standard_params(), &p);
        let one = solve(&with_load(f, m), &p);
        let scaled = solve(&with_load([s * f[0], s * f[1]], s * m), &p);
        for i in 0..base.len() {
            prop_assert!((scaled[i] - base[i] - s * (one[i] - base[i])).abs() < 1e-9);
        }
    }

    #[test]
    fn actuator_power_balances_energy_rate(p in state(), f in prop::array::uniform2(-20.0..20.0f64), m in -2.0..2.0f64) {
        let params = with_load(f, m);
        let sol = solve_instant(&params, &p).unwrap();
        let e = energy_report(&params, &p, &sol.legs, sol.dynamics.total_power());
        prop_assert!(e.balance_residual().abs() < 1e-10);
    }

    #[test]
    fn turning_motion_and_gravity_relabels_forces(p in state()) {
        let params = standard_params();
        let (s, c) = (2.0 * FRAC_PI_3).sin_cos();
        let g = params.gravity;
        let turned = RobotParams { gravity: Vec3::new(c * g.x() - s * g.y(), s * g.x() + c * g.y(), 0.0), ..params.clone() };
        let a = solve_instant(&params, &p).unwrap().dynamics;
        let b = solve_instant(&turned, &p.rotated(2.0 * FRAC_PI_3)).unwrap().dynamics;
        for i in 0..3 {
            let (x, y) = (a.legs[i], b.legs[(i + 1) % 3]);
            prop_assert!((x.f10 - y.f10).abs() < 1e-9);
            prop_assert!((x.f21y - y.f21y).abs() < 1e-9);
            prop_assert!((x.f21z - y.f21z).abs() < 1e-9);
            prop_assert!((x.p10 - y.p10).abs() < 1e-9);
        }
    }
}

/// Static forces from the principle of virtual work alone: `Jᵀ f = ∇V`, with
/// `J = ∂λ10/∂(x, y, φ)` and `∇V` both by central differences.
fn static_forces_from_potential(params: &RobotParams, x: f64, y: f64, phi: f64) -> [f64; 3] {
    let h = 1e-6;
    let strokes = |q: [f64; 3]| inverse_geometry(params, &PlatformState::at_rest(q[0], q[1], q[2])).unwrap().map(|l| l.lambda10);
    let potential = |q: [f64; 3]| {
        let pose = PlatformState::at_rest(q[0], q[1], q[2]);
        energy_report(params, &pose, &inverse_geometry(params, &pose).unwrap(), 0.0).potential
    };
    let mut jt = [[0.0; 3]; 3];
    let mut grad = [0.0; 3];
    for j in 0..3 {
        let (mut qp, mut qm) = ([x, y, phi], [x, y, phi]);
        qp[j] += h;
        qm[j] -= h;
        let (sp, sm) = (strokes(qp), strokes(qm));
        for i in 0..3 {
            jt[j][i] = (sp[i] - sm[i]) / (2.0 * h);
        }
        grad[j] = (potential(qp) - potential(qm)) / (2.0 * h);
    }
    DenseLu::factor(&jt).unwrap().solve(&grad)
}

#[test]
fn static_hold_matches_potential_gradient() {
    let params = standard_params();
    for (x, y, phi) in [(0.0, 0.0, 0.0), (0.03, -0.02, 0.2), (-0.04, 0.05, -0.5), (0.0, 0.025, 0.0)] {
        let hold = static_hold(&params, &PlatformState::at_rest(x, y, phi)).unwrap();
        let expect = static_forces_from_potential(&params, x, y, phi);
        for i in 0..3 {
            assert!((hold.legs[i].f10 - expect[i]).abs() < 1e-6, "pose ({x}, {y}, {phi}) leg {i}: {} vs {}", hold.legs[i].f10, expect[i]);
            assert_eq!(hold.legs[i].p10, 0.0);
        }
    }
}

#[test]
fn central_static_hold_closed_form() {
    // At the central pose a platform rise y moves pistons A, B, C by
    // (2, -1, -1)·y/√3 and their bodies up by (1, 0, 1/2)·y; a sideways shift
    // x moves pistons by (0, -1, 1)·x and their bodies sideways by
    // (0, 1, 1/2)·x and up by (0, 0, -√3/2)·x.
    let hold = static_hold(&standard_params(), &PlatformState::default()).unwrap();
    let [a, b, c] = hold.legs.map(|l| l.f10);
    let pair = 1.0 + 0.75;
    assert!(((2.0 * a - b - c) / SQRT3 - 9.81 * (3.0 + 1.5 * pair)).abs() < 1e-9);
    assert!((c - b + 9.81 * pair * SQRT3 / 2.0).abs() < 1e-9);
}

#[test]
fn weightless_robot_at_rest_needs_no_force() {
    let params = RobotParams { gravity: Vec3::ZERO, ..standard_params() };
    let hold = static_hold(&params, &PlatformState::at_rest(0.02, -0.01, 0.3)).unwrap();
    assert!(forces(&hold).iter().all(|f| f.abs() < 1e-14));
}

#[test]
fn oracle_shares_no_code_with_the_recursive_solver() {
    let src = include_str!("../src/oracle.rs");
    assert!(!src.contains("dynamics"), "oracle module must not reference the dynamics module");
    assert!(!src.contains("virtual_rate_sets") && !src.contains("link_states"));
}
