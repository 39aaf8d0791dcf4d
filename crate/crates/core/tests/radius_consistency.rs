use bohr_core::coefficients::f0_sequence;
use bohr_core::lambda::parse_lambda;
use bohr_core::solver::{classical_radius, laplace_radius, SolveError};
use bohr_core::sums::{
    capital_phi_gamma, fourier_majorant, fourier_upper_envelope, laplace_majorant,
    laplace_upper_bound_fn, Truncation,
};
use bohr_core::tables::{reproduce_table, TableId};
use bohr_core::verify::{sharpness_sweep_fourier, verify_refined_inequality, DEFAULT_A_GRID};

// The radius equations use closed forms; the refined check sums the
// extremal series directly. Both must put the crossing at the same place.
#[test]
fn refined_check_flips_at_solved_radius() {
    for table in [TableId::T1, TableId::T2] {
        for row in reproduce_table(table, 1e-12) {
            let lam = parse_lambda(&row.lambda_source).unwrap();
            let r = row.computed_radius.unwrap();
            let below = verify_refined_inequality(table.class(), &lam, r - 1e-6).unwrap();
            let above = verify_refined_inequality(table.class(), &lam, r + 1e-6).unwrap();
            assert!(below.pass, "{}: {below:?}", row.lambda_source);
            assert!(!above.pass, "{}: {above:?}", row.lambda_source);
            assert!(row.root.unwrap().is_unique());
        }
    }
}

#[test]
fn envelope_increasing_below_classical_radius() {
    for gamma in [0.0, 0.3, 0.7] {
        let r0 = classical_radius(gamma).unwrap();
        for r in [0.25 * r0, 0.5 * r0, r0] {
            let mut prev = fourier_upper_envelope(gamma, r, 0.0);
            for i in 1..=100 {
                let v = fourier_upper_envelope(gamma, r, i as f64 / 100.0);
                assert!(v >= prev - 1e-15, "γ={gamma}, r={r}");
                prev = v;
            }
        }
    }
}

#[test]
fn capital_phi_negative_before_laplace_radius() {
    for gamma in [0.0, 0.1, 0.2] {
        let root = laplace_radius(gamma, 1e-12).unwrap();
        assert_eq!(root.sign_changes, Some(1));
        for i in 1..200 {
            let r = root.root * i as f64 / 200.0;
            assert!(capital_phi_gamma(gamma, r).unwrap() < 0.0, "γ={gamma}, r={r}");
        }
        assert!(capital_phi_gamma(gamma, (root.root + 1.0) / 2.0).unwrap() > 0.0);
    }
}

#[test]
fn laplace_radius_missing_for_large_gamma() {
    assert!(matches!(laplace_radius(0.9, 1e-9), Err(SolveError::NoRoot { .. })));
}

#[test]
fn laplace_bound_increasing_in_a() {
    let gamma = 0.0;
    let r = 0.9;
    let mut prev = laplace_upper_bound_fn(gamma, r, 0.0).unwrap();
    for i in 1..=100 {
        let v = laplace_upper_bound_fn(gamma, r, i as f64 / 100.0).unwrap();
        assert!(v > prev);
        prev = v;
    }
}

#[test]
fn f0_majorants_below_their_bounds() {
    let trunc = Truncation::new(1e-13);
    for gamma in [0.0, 0.4] {
        let r0 = classical_radius(gamma).unwrap();
        for a in [0.1, 0.5, 0.9, 0.99] {
            let seq = f0_sequence(a, gamma).unwrap();
            let f = fourier_majorant(&seq, r0, trunc).unwrap().value;
            assert!(f <= 1.0 / (1.0 - r0) + 1e-12);
            let l = laplace_majorant(&seq, 0.5, trunc).unwrap().value;
            // the bound is stated in terms of |f(0)|
            assert!(l <= laplace_upper_bound_fn(gamma, 0.5, seq.modulus(0)).unwrap() + 1e-12);
        }
    }
}

#[test]
fn sharpness_sweep_finds_witness_above_radius() {
    for r in [0.34, 0.35, 0.4] {
        let rep = sharpness_sweep_fourier(0.0, r, &DEFAULT_A_GRID).unwrap();
        assert!(rep.pass, "r = {r}");
        assert!(rep.value > rep.bound);
    }
    assert!(sharpness_sweep_fourier(0.0, 1.0 / 3.0, &DEFAULT_A_GRID).is_err());
}
