//! Shared helpers for the statistical integration tests.

/// Pearson chi-square statistic for observed counts against expected counts.
pub fn chi_square(observed: &[u64], expected: &[f64]) -> f64 {
    assert_eq!(observed.len(), expected.len());
    observed
        .iter()
        .zip(expected)
        .map(|(&o, &e)| {
            assert!(e > 0.0);
            let d = o as f64 - e;
            d * d / e
        })
        .sum()
}

/// Upper critical values of the chi-square distribution at significance
/// 0.001, indexed by degrees of freedom (1-based up to 20), plus dof 50.
pub fn chi_square_critical_001(dof: usize) -> f64 {
    const SMALL: [f64; 20] = [
        10.828, 13.816, 16.266, 18.467, 20.515, 22.458, 24.322, 26.124, 27.877, 29.588, 31.264,
        32.909, 34.528, 36.123, 37.697, 39.252, 40.790, 42.312, 43.820, 45.315,
    ];
    match dof {
        1..=20 => SMALL[dof - 1],
        50 => 86.661,
        _ => panic!("no critical value tabulated for dof {dof}"),
    }
}
