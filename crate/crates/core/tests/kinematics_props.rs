use std::f64::consts::{FRAC_PI_3, FRAC_PI_4, PI};

use proptest::prelude::*;

use prp3::kinematics::{
    all_link_states, inverse_geometry, leg_connectivity_matrix, loop_closure_residual, solve_legs, virtual_rate_sets, PlatformState,
    VirtualLabel,
};
use prp3::model::{leg_rotations, standard_params, LegIndex};
use prp3::smallmat::{rot_z, Mat3};

fn pose() -> impl Strategy<Value = PlatformState> {
    (-0.1..0.1f64, -0.1..0.1f64, -FRAC_PI_4..FRAC_PI_4).prop_map(|(x, y, phi)| PlatformState::at_rest(x, y, phi))
}

fn state() -> impl Strategy<Value = PlatformState> {
    (pose(), prop::array::uniform6(-1.0..1.0f64)).prop_map(|(p, m)| PlatformState {
        xd: 0.2 * m[0],
        yd: 0.2 * m[1],
        phid: 0.5 * m[2],
        xdd: m[3],
        ydd: m[4],
        phidd: 2.0 * m[5],
        ..p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn loop_closes(p in pose()) {
        let params = standard_params();
        let legs = inverse_geometry(&params, &p).unwrap();
        for leg in LegIndex::ALL {
            prop_assert!(loop_closure_residual(&params, &p, leg, &legs[leg.idx()]) < 1e-12);
            prop_assert_eq!(legs[leg.idx()].phi21, p.phi);
        }
    }

    #[test]
    fn determinant_is_sin_phi_minus_sixty(phi in -PI..PI) {
        let params = standard_params();
        for leg in LegIndex::ALL {
            let m = leg_connectivity_matrix(&params, &PlatformState::at_rest(0.0, 0.0, phi), leg);
            prop_assert!((m[0][0] * m[1][1] - m[0][1] * m[1][0] - (phi - FRAC_PI_3).sin()).abs() < 1e-13);
        }
    }

    #[test]
    fn rot_z_is_a_rotation_group(a in -PI..PI, b in -PI..PI) {
        let (ra, rb) = (rot_z(a), rot_z(b));
        prop_assert!(ra.is_rotation(1e-14));
        prop_assert!((ra.transpose() * ra).max_abs_diff(&Mat3::IDENTITY) < 1e-15);
        prop_assert!((ra * rb).max_abs_diff(&rot_z(a + b)) < 1e-14);
        prop_assert!(ra.transpose().max_abs_diff(&rot_z(-a)) < 1e-15);
    }

    #[test]
    fn leg_rotations_are_orthonormal(phi in -FRAC_PI_4..FRAC_PI_4) {
        let params = standard_params();
        for leg in LegIndex::ALL {
            let r = leg_rotations(&params, leg, phi);
            for k in 1..=3 {
                prop_assert!(r.relative(k).is_rotation(1e-13));
                prop_assert!(r.absolute(k).is_rotation(1e-13));
            }
        }
    }

    #[test]
    fn rates_are_linear_in_platform_velocity(p in state(), s in -3.0..3.0f64) {
        let params = standard_params();
        let one = solve_legs(&params, &PlatformState { xdd: 0.0, ydd: 0.0, phidd: 0.0, ..p }).unwrap();
        let scaled = solve_legs(&params, &PlatformState { xd: s * p.xd, yd: s * p.yd, phid: s * p.phid, xdd: 0.0, ydd: 0.0, phidd: 0.0, ..p }).unwrap();
        for i in 0..3 {
            prop_assert!((scaled[i].lambda10d - s * one[i].lambda10d).abs() < 1e-12);
            prop_assert!((scaled[i].lambda32d - s * one[i].lambda32d).abs() < 1e-12);
        }
    }

    #[test]
    fn link_spin_is_about_the_base_normal(p in state()) {
        let params = standard_params();
        let legs = solve_legs(&params, &p).unwrap();
        for leg_links in all_link_states(&params, &legs) {
            prop_assert!(leg_links[0].omega_base().norm() < 1e-15);
            for l in &leg_links[1..] {
                let w = l.omega_base();
                prop_assert!(w.x().abs() < 1e-14 && w.y().abs() < 1e-14);
                prop_assert!((w.z() - p.phid).abs() < 1e-14);
                prop_assert!((l.epsilon_base().z() - p.phidd).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn virtual_motions_are_admissible(p in pose()) {
        let params = standard_params();
        let legs = inverse_geometry(&params, &p).unwrap();
        let sets = virtual_rate_sets(&params, &p, &legs).unwrap();
        for (set, label) in sets.iter().zip(VirtualLabel::ALL) {
            prop_assert_eq!(set.label, label);
            prop_assert!(set.connectivity_residual(&params, &p, &legs) < 1e-12);
            for leg in LegIndex::ALL {
                let r = &set.rates[leg.idx()];
                let (v10, y, z) = match label {
                    VirtualLabel::Actuator(l) => (f64::from(l == leg), 0.0, 0.0),
                    VirtualLabel::JointY(l) => (0.0, f64::from(l == leg), 0.0),
                    VirtualLabel::JointZ(l) => (0.0, 0.0, f64::from(l == leg)),
                };
                prop_assert_eq!((r.v10, r.v21y, r.v21z), (v10, y, z));
            }
        }
    }

    #[test]
    fn turning_the_motion_relabels_the_legs(p in state()) {
        let params = standard_params();
        let a = solve_legs(&params, &p).unwrap();
        let b = solve_legs(&params, &p.rotated(2.0 * FRAC_PI_3)).unwrap();
        for leg in LegIndex::ALL {
            let (x, y) = (a[leg.idx()], b[leg.next().idx()]);
            prop_assert!((x.lambda10 - y.lambda10).abs() < 1e-12);
            prop_assert!((x.lambda32 - y.lambda32).abs() < 1e-12);
            prop_assert!((x.lambda10d - y.lambda10d).abs() < 1e-12);
            prop_assert!((x.lambda32dd - y.lambda32dd).abs() < 1e-11);
        }
    }
}

#[test]
fn rates_match_central_differences_off_trajectory() {
    let params = standard_params();
    let p = PlatformState { x: 0.03, y: -0.02, phi: 0.3, xd: 0.1, yd: -0.05, phid: 0.4, xdd: 0.5, ydd: 0.2, phidd: -1.0 };
    let h = 1e-6;
    let at = |t: f64| {
        // constant-acceleration motion through p at t = 0
        let q = |v: f64, vd: f64, vdd: f64| v + vd * t + 0.5 * vdd * t * t;
        let pose = PlatformState {
            x: q(p.x, p.xd, p.xdd),
            y: q(p.y, p.yd, p.ydd),
            phi: q(p.phi, p.phid, p.phidd),
            xd: p.xd + p.xdd * t,
            yd: p.yd + p.ydd * t,
            phid: p.phid + p.phidd * t,
            ..p
        };
        solve_legs(&params, &pose).unwrap()
    };
    let (plus, minus, mid) = (at(h), at(-h), at(0.0));
    for i in 0..3 {
        let fd = (plus[i].lambda10 - minus[i].lambda10) / (2.0 * h);
        assert!((fd - mid[i].lambda10d).abs() <= 1e-6 * mid[i].lambda10d.abs() + 1e-10);
        let fd = (plus[i].lambda32d - minus[i].lambda32d) / (2.0 * h);
        assert!((fd - mid[i].lambda32dd).abs() <= 1e-5 * mid[i].lambda32dd.abs() + 1e-9);
    }
}

#[test]
fn singular_orientation_is_reported() {
    let params = standard_params();
    let err = inverse_geometry(&params, &PlatformState::at_rest(0.0, 0.0, FRAC_PI_3)).unwrap_err();
    assert!(err.is_singular());
    assert_eq!(err.exit_code(), 2);
}
