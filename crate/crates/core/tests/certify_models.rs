// Copyright 2026 The floquet-lindblad Authors
// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::PI;

use floquet_core::certify::*;
use floquet_core::floquet::{floquet_split, FloquetOptions};
use floquet_core::linalg::hermitian_eigen;
use floquet_core::models::{
    choi_from_xi_chi, m3_counterexample, DrivenTlsModel, Profile, RandomQubitModel,
};
use floquet_core::solver::integrate_general;

fn cosine_model(phases: [f64; 3]) -> RandomQubitModel {
    RandomQubitModel::new(phases.map(|p| Profile::cosine(1.0, 1.0, p)), 2.0 * PI).unwrap()
}

#[test]
fn kossakowski_window_is_middle_half() {
    let m = cosine_model([0.0; 3]);
    let spec = m.spec().unwrap();
    let t = spec.period();
    let grid = scan_grid(0.0, t, 129, &[]);
    let r = kossakowski_divisibility(&spec, &grid, BOUNDARY_TOL).unwrap();
    assert!(!r.markovian);
    assert_eq!(r.nonmarkovian_windows.len(), 1);
    let (a, b) = r.nonmarkovian_windows[0];
    let dt = t / 128.0;
    assert!(
        (a - t / 4.0).abs() <= dt + 1e-12 && (b - 3.0 * t / 4.0).abs() <= dt + 1e-12,
        "{a} {b}"
    );
}

#[test]
fn scan_local_margins_match_kossakowski_route() {
    let m = cosine_model([0.0, 2.0 * PI / 3.0, 4.0 * PI / 3.0]);
    let spec = m.spec().unwrap();
    let form = floquet_split(&spec, &FloquetOptions::default()).unwrap();
    let grid = scan_grid(0.0, spec.period(), 33, &[]);
    let scan = divisibility_scan(&|t| form.periodic_part(t), &grid, &[], BOUNDARY_TOL).unwrap();
    let kos = kossakowski_divisibility(&spec, &grid, BOUNDARY_TOL).unwrap();
    for (a, b) in scan.local.iter().zip(&kos.local) {
        assert!(
            (a.min_eig - b.min_eig).abs() < 1e-7,
            "t={} {} {}",
            a.t,
            a.min_eig,
            b.min_eig
        );
    }
    assert!(!scan.markovian);
    assert_eq!(
        scan.nonmarkovian_windows.is_empty(),
        kos.nonmarkovian_windows.is_empty()
    );
}

#[test]
fn full_dynamics_and_tls_periodic_part_are_divisible() {
    let tls = DrivenTlsModel::default_model();
    let spec = tls.spec().unwrap();
    let form = floquet_split(&spec, &FloquetOptions::default()).unwrap();
    let grid = scan_grid(0.0, 2.0 * spec.period(), 24, &[]);
    let r = divisibility_scan(&|t| form.periodic_part(t), &grid, &[], BOUNDARY_TOL).unwrap();
    assert!(r.markovian && r.nonmarkovian_windows.is_empty());
    let traj = integrate_general(&spec, 2.0 * spec.period(), spec.period() / 400.0).unwrap();
    let r = divisibility_scan(&|t| traj.at(t), &grid, &[], 1e-7).unwrap();
    assert!(r.markovian, "{:?}", r.violations.first());
}

#[test]
fn tls_pair_choi_spectrum_is_two_and_zeros() {
    let tls = DrivenTlsModel::default_model();
    for k in 0..8 {
        let t = 0.37 * k as f64 + 0.1;
        let v = tls.p_ref(t + 1.3).compose(&tls.p_ref(t).inverse().unwrap());
        let c = floquet_core::linalg::choi_matrix(&v);
        let e = hermitian_eigen(&c).values;
        assert!(
            (e[3] - 2.0).abs() < 1e-10 && e[..3].iter().all(|x| x.abs() < 1e-10),
            "{e:?}"
        );
    }
}

#[test]
fn region_matches_choi_of_periodic_part() {
    let m = cosine_model([0.0, 2.0, 4.0]);
    let t_max = 2.0 * m.period;
    for k in 0..200 {
        let t = t_max * (k as f64 + 0.5) / 200.0;
        let theta = m.thetas(t);
        let (member, _) = region_a_membership(theta);
        let cp = cptp_report(&m.p_ref(t)).cp;
        let margin = hermitian_eigen(&m.p_choi_ref(t)).values[0];
        if margin.abs() > 1e-9 {
            assert_eq!(member, cp, "t={t} theta={theta:?}");
        }
    }
}

#[test]
fn region_routes_agree_on_grid() {
    let n = 25;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let s = |q: usize| -3.0 + 6.0 * (q as f64 + 0.5) / n as f64;
                let theta = [s(i), s(j), s(k)];
                let alpha = theta.map(|x| (-x).exp());
                let (a, sub) = region_a_membership(theta);
                let (b, subb) = region_b_membership(alpha);
                let e = (-(theta[0] + theta[1])).exp();
                let x1 = 0.5 * (1.0 + e);
                let x2 = 0.5 * (1.0 - e);
                let c1 = 0.5 * (alpha[0] * alpha[2] + alpha[1] * alpha[2]);
                let c2 = 0.5 * (alpha[0] * alpha[2] - alpha[1] * alpha[2]);
                let min = hermitian_eigen(&choi_from_xi_chi(x1, x2, c1, c2)).values[0];
                if min.abs() < 1e-9 {
                    continue;
                }
                assert_eq!(a, min >= 0.0, "{theta:?}");
                assert_eq!(a, alpha_inequalities_hold(alpha), "{theta:?}");
                assert_eq!((a, sub), (b, subb), "{theta:?}");
            }
        }
    }
}

#[test]
fn semigroup_test_on_builtins() {
    let opts = FloquetOptions::default();
    for spec in [
        RandomQubitModel::default_model().spec().unwrap(),
        DrivenTlsModel::default_model().spec().unwrap(),
    ] {
        let form = floquet_split(&spec, &opts).unwrap();
        let r = semigroup_test(&form, &spec).unwrap();
        assert!(r.psd && r.x_standard_form, "{r:?}");
    }
    let spec = m3_counterexample();
    let form = floquet_split(&spec, &opts).unwrap();
    let r = semigroup_test(&form, &spec).unwrap();
    assert!(!r.psd && !r.x_standard_form, "{r:?}");
}

#[test]
fn m3_factors_fail_cp() {
    let spec = m3_counterexample();
    let form = floquet_split(&spec, &FloquetOptions::default()).unwrap();
    let e = cptp_report(&form.exp_tx(0.5).unwrap());
    let p = cptp_report(&form.periodic_part(4.32).unwrap());
    assert!(!e.cp && e.min_choi_eig < -1e-3, "{}", e.min_choi_eig);
    assert!(!p.cp && p.min_choi_eig < -1e-3, "{}", p.min_choi_eig);
    let spec_p: Vec<_> = form
        .periodic_part(4.32)
        .unwrap()
        .eigenvalues()
        .unwrap()
        .iter()
        .copied()
        .collect();
    assert!(conjugation_mismatch(&spec_p) > 1e-3);
}
