mod support;

use pzf::numerics::{exponential_integral_scaled, SimRng};
use support::{relative_error, scaled_expint_quadrature};

#[test]
fn quadrature_oracle_reproduces_frozen_values() {
    // Frozen from the quadrature oracle (and a 30-digit reference check).
    let frozen = [
        (1, 1.0, 0.596_347_362_323_194_1),
        (2, 1.0, 0.403_652_637_676_805_9),
        (1, 0.01, 4.078_511_443_456_426),
        (16, 4.0, 0.052_037_851_941_364_03),
        (1024, 40.0, 0.000_940_700_443_308_239_6),
    ];
    for (n, x, expected) in frozen {
        let q = scaled_expint_quadrature(n, x);
        assert!(relative_error(q, expected) < 1e-12, "oracle n={n} x={x}: {q}");
    }
}

#[test]
fn matches_quadrature_on_grid() {
    for n in [1u32, 2, 16, 128, 1024] {
        for x in [0.01, 0.4, 4.0, 40.0] {
            let v = exponential_integral_scaled(n, x).unwrap();
            let q = scaled_expint_quadrature(n, x);
            assert!(relative_error(v, q) <= 1e-9, "n={n} x={x}: {v} vs {q}");
        }
    }
}

#[test]
fn accurate_across_documented_range() {
    let mut rng = SimRng::new(77);
    for _ in 0..200 {
        let x = 10f64.powf(-3.0 + 6.0 * rng.uniform());
        let n = 1 + (rng.uniform() * 2048.0) as u32;
        let v = exponential_integral_scaled(n, x).unwrap();
        let q = scaled_expint_quadrature(n, x);
        assert!(relative_error(v, q) <= 1e-10, "n={n} x={x}: {v} vs {q}");
    }
}

#[test]
fn e2_from_e1_identity() {
    // E_2(1) = e^{-1} - E_1(1)  ⇒  ẽ_2(1) = 1 - ẽ_1(1)
    let e1 = exponential_integral_scaled(1, 1.0).unwrap();
    let e2 = exponential_integral_scaled(2, 1.0).unwrap();
    assert!((e2 - (1.0 - e1)).abs() < 1e-14);
    assert!(relative_error(e2 / std::f64::consts::E, 0.148_495_506_775_922_05) < 1e-12);
}

#[test]
fn scaled_recurrence_holds() {
    let mut rng = SimRng::new(5150);
    for _ in 0..10_000 {
        let x = 100.0 * (1.0 - rng.uniform());
        let n = 1 + (rng.uniform() * 100.0) as u32;
        let lhs = exponential_integral_scaled(n + 1, x).unwrap();
        let rhs = (1.0 - x * exponential_integral_scaled(n, x).unwrap()) / f64::from(n);
        assert!(relative_error(lhs, rhs) <= 1e-9, "n={n} x={x}: {lhs} vs {rhs}");
    }
}
