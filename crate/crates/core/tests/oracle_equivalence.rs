use eitsqueeze_core::eit::window_width;
use eitsqueeze_core::oracle::{self, cross_check, Setup};
use eitsqueeze_core::params::{default_paper_params, linspace, validate};
use eitsqueeze_core::point::OperatingPoint;

#[test]
fn closed_forms_match_mode_expansion() {
    let cfg = validate(default_paper_params()).unwrap();
    let half = 2.0 * window_width(cfg.eit(), 0.5).unwrap();
    let omegas = linspace(-half, half, 101);
    let phis = linspace(0.0, 7.0 * std::f64::consts::PI / 8.0, 8);
    let report = cross_check(&cfg, &omegas, &phis).unwrap();
    for d in report.deviations() {
        assert!(
            d.pass(),
            "{}: {:e} at {:e}",
            d.formula,
            d.max_abs,
            d.at_omega
        );
        assert!(d.points > 0);
    }
    assert_eq!(report.rows.len(), 808);
}

#[test]
fn measured_quadrature_is_canonical() {
    let cfg = validate(default_paper_params()).unwrap();
    for w in [-7.0e5, 0.0, 3.0e5] {
        let p = OperatingPoint::new(&cfg, w).unwrap();
        for setup in [Setup::Mismatched, Setup::Matched] {
            let (x, pq) = oracle::conjugate_expansions(&p, setup);
            let xm = oracle::expand_measured(&p, setup);
            assert!((oracle::noise(&x) - oracle::noise(&xm)).abs() < 1e-12);
            assert!((oracle::noise(&x) - oracle::noise(&pq)).abs() < 1e-10);
        }
    }
}

#[test]
fn blocked_eit_arm_leaves_only_vacuum_from_the_signal() {
    let cfg = validate(default_paper_params()).unwrap();
    let p = OperatingPoint::new(&cfg, 1.0e5)
        .unwrap()
        .with_transmission(0.0);
    let e = oracle::expand_eit_output(&p);
    use eitsqueeze_core::oracle::Mode;
    assert_eq!(e.a(Mode::O).norm(), 0.0);
    assert_eq!(e.adag(Mode::O).norm(), 0.0);
    assert!(e.a(Mode::V).norm() > 0.0);
}
