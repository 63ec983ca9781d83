//! Special functions for displaced-oscillator algebra: Laguerre polynomials,
//! harmonic-oscillator eigenfunctions on the dimensionless position axis, and
//! matrix elements of the displacement operator in the number basis.

use crate::error::{Error, Result};

/// Tolerated probability loss when a displaced number state is truncated.
pub const TRUNCATION_TAIL_TOL: f64 = 1e-8;

/// Laguerre polynomial `L_n(x)` by the upward three-term recurrence
/// `(k+1) L_{k+1} = (2k+1-x) L_k - k L_{k-1}`.
pub fn laguerre(n: usize, x: f64) -> f64 {
    laguerre_assoc(n, 0, x)
}

/// Associated Laguerre polynomial `L_n^{(a)}(x)` for integer `a >= 0`.
pub fn laguerre_assoc(n: usize, a: usize, x: f64) -> f64 {
    let a = a as f64;
    let mut lm1 = 1.0;
    if n == 0 {
        return lm1;
    }
    let mut l = 1.0 + a - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + a - x) * l - (kf + a) * lm1) / (kf + 1.0);
        lm1 = l;
        l = next;
    }
    l
}

/// ln(n!) by direct summation; exact enough for the few hundred levels used.
pub fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// Normalized oscillator eigenfunction of the dimensionless coordinate in
/// which the ground state is `(2/pi)^{1/4} exp(-q^2)` and a coherent state
/// with real amplitude `alpha` peaks at `q = alpha`.
pub fn ho_wavefunction(n: usize, q: f64) -> f64 {
    let mut buf = vec![0.0; n + 1];
    ho_wavefunctions_upto(n + 1, q, &mut buf);
    buf[n]
}

/// Writes `psi_0(q) .. psi_{count-1}(q)` into `out[..count]`. Single
/// recurrence pass with the normalization folded into the coefficients, so
/// no factorial or raw Hermite value is ever formed and intermediate values
/// stay bounded for any level used here.
pub fn ho_wavefunctions_upto(count: usize, q: f64, out: &mut [f64]) {
    assert!(out.len() >= count);
    if count == 0 {
        return;
    }
    let x = std::f64::consts::SQRT_2 * q;
    out[0] = (2.0 / std::f64::consts::PI).powf(0.25) * (-q * q).exp();
    if count == 1 {
        return;
    }
    out[1] = std::f64::consts::SQRT_2 * x * out[0];
    for n in 2..count {
        let nf = n as f64;
        out[n] = (2.0 / nf).sqrt() * x * out[n - 1] - ((nf - 1.0) / nf).sqrt() * out[n - 2];
    }
}

/// Matrix element `<n| D[alpha] |m>` of the displacement operator
/// `D[alpha] = exp(alpha (a^dag - a))` for real `alpha`, via the associated
/// Laguerre closed form with the factorial ratio taken in log space.
pub fn displacement_element(n: usize, m: usize, alpha: f64) -> f64 {
    if alpha == 0.0 {
        return if n == m { 1.0 } else { 0.0 };
    }
    let (hi, lo) = if n >= m { (n, m) } else { (m, n) };
    let k = hi - lo;
    let x = alpha * alpha;
    // sign of alpha^{n-m} for n >= m, of (-alpha)^{m-n} otherwise
    let signed = if n >= m { alpha } else { -alpha };
    let sign = if k % 2 == 1 && signed < 0.0 { -1.0 } else { 1.0 };
    let log_mag = 0.5 * (ln_factorial(lo) - ln_factorial(hi)) + k as f64 * alpha.abs().ln()
        - 0.5 * x;
    sign * log_mag.exp() * laguerre_assoc(lo, k, x)
}

/// Overlap `<-alpha, N | alpha, N>` of two oppositely displaced copies of
/// the number state `|N>`; equals `exp(-2 alpha^2) L_N(4 alpha^2)`.
pub fn displaced_overlap(n: usize, alpha: f64) -> f64 {
    (-2.0 * alpha * alpha).exp() * laguerre(n, 4.0 * alpha * alpha)
}

/// Cross overlap `<-alpha, N | alpha, M>`, i.e. `<N| D[2 alpha] |M>`.
pub fn displaced_cross_overlap(n: usize, m: usize, alpha: f64) -> f64 {
    displacement_element(n, m, 2.0 * alpha)
}

/// Fock-basis coefficients of the displaced number state `D[alpha] |level>`
/// truncated to `count` oscillator levels. Fails if the dropped tail
/// carries more than [`TRUNCATION_TAIL_TOL`] probability.
pub fn displaced_number_state(alpha: f64, level: usize, count: usize) -> Result<Vec<f64>> {
    if level >= count {
        return Err(Error::InvalidInput(format!(
            "displaced level {level} does not fit into {count} retained levels"
        )));
    }
    let coeffs: Vec<f64> = (0..count)
        .map(|n| displacement_element(n, level, alpha))
        .collect();
    let captured: f64 = coeffs.iter().map(|c| c * c).sum();
    let tail = 1.0 - captured;
    if tail > TRUNCATION_TAIL_TOL {
        return Err(Error::TruncationTail {
            tail,
            n_levels: count,
        });
    }
    Ok(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    // closed-form L_0..L_5 coefficients for spot checks
    fn laguerre_closed(n: usize, x: f64) -> f64 {
        match n {
            0 => 1.0,
            1 => 1.0 - x,
            2 => 1.0 - 2.0 * x + x * x / 2.0,
            3 => 1.0 - 3.0 * x + 1.5 * x * x - x * x * x / 6.0,
            4 => {
                1.0 - 4.0 * x + 3.0 * x * x - 2.0 / 3.0 * x.powi(3) + x.powi(4) / 24.0
            }
            5 => {
                1.0 - 5.0 * x + 5.0 * x * x - 5.0 / 3.0 * x.powi(3) + 5.0 / 24.0 * x.powi(4)
                    - x.powi(5) / 120.0
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn laguerre_low_orders_match_closed_forms() {
        for n in 0..=5 {
            for &x in &[0.0, 0.3, 1.0, 2.0, 4.0, 15.4375] {
                assert_abs_diff_eq!(
                    laguerre(n, x),
                    laguerre_closed(n, x),
                    epsilon = 1e-12 * laguerre_closed(n, x).abs().max(1.0)
                );
            }
        }
    }

    #[test]
    fn laguerre_2_at_2_is_minus_one() {
        assert_abs_diff_eq!(laguerre(2, 2.0), -1.0, epsilon = 1e-14);
    }

    #[test]
    fn laguerre_at_zero_is_one() {
        for n in [0, 1, 7, 40, 200] {
            assert_abs_diff_eq!(laguerre(n, 0.0), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn laguerre_stays_finite_in_range() {
        for n in [0, 1, 10, 50, 100, 200] {
            for &x in &[0.0, 1.0, 10.0, 100.0, 1000.0] {
                assert!(laguerre(n, x).is_finite(), "L_{n}({x}) not finite");
            }
        }
    }

    #[test]
    fn associated_laguerre_reduces_to_plain() {
        for n in [0, 1, 3, 9] {
            for &x in &[0.2, 1.7, 8.0] {
                assert_abs_diff_eq!(laguerre_assoc(n, 0, x), laguerre(n, x), epsilon = 1e-13);
            }
        }
    }

    #[test]
    fn ln_factorial_small_values() {
        assert_eq!(ln_factorial(0), 0.0);
        assert_eq!(ln_factorial(1), 0.0);
        assert_abs_diff_eq!(ln_factorial(5), 120.0_f64.ln(), epsilon = 1e-13);
        assert_abs_diff_eq!(ln_factorial(12), 479001600.0_f64.ln(), epsilon = 1e-12);
    }

    #[test]
    fn ground_state_profile() {
        let norm = (2.0 / std::f64::consts::PI).powf(0.25);
        assert_abs_diff_eq!(ho_wavefunction(0, 0.0), norm, epsilon = 1e-14);
        assert_abs_diff_eq!(ho_wavefunction(0, 1.5), norm * (-2.25_f64).exp(), epsilon = 1e-14);
    }

    #[test]
    fn wavefunction_parity() {
        for n in 0..8 {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            for &q in &[0.3, 1.1, 2.7] {
                assert_abs_diff_eq!(
                    ho_wavefunction(n, -q),
                    sign * ho_wavefunction(n, q),
                    epsilon = 1e-12
                );
            }
        }
    }

    #[test]
    fn wavefunction_finite_at_extremes() {
        for n in [0, 1, 50, 150, 200] {
            for &q in &[0.0, 5.0, 40.0, 1000.0] {
                let v = ho_wavefunction(n, q);
                assert!(v.is_finite(), "psi_{n}({q}) = {v}");
            }
        }
    }

    #[test]
    fn displacement_element_zero_alpha_is_identity() {
        for n in 0..4 {
            for m in 0..4 {
                let expect = if n == m { 1.0 } else { 0.0 };
                assert_eq!(displacement_element(n, m, 0.0), expect);
            }
        }
    }

    #[test]
    fn displacement_diagonal_matches_displaced_overlap() {
        for n in [0, 1, 2, 5, 11] {
            for &alpha in &[0.4, 1.165, 1.96] {
                assert_abs_diff_eq!(
                    displacement_element(n, n, 2.0 * alpha),
                    displaced_overlap(n, alpha),
                    epsilon = 1e-13
                );
            }
        }
    }

    #[test]
    fn displaced_number_state_is_normalized_and_flags_truncation() {
        let c = displaced_number_state(-1.96, 0, 60).unwrap();
        let norm: f64 = c.iter().map(|x| x * x).sum();
        assert_abs_diff_eq!(norm, 1.0, epsilon = 1e-10);
        // far too few levels for this displacement
        match displaced_number_state(-1.96, 0, 4) {
            Err(Error::TruncationTail { tail, .. }) => assert!(tail > 1e-8),
            other => panic!("expected truncation failure, got {other:?}"),
        }
    }

    #[test]
    fn displaced_number_state_rejects_level_outside_basis() {
        assert!(matches!(
            displaced_number_state(0.5, 10, 5),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn coherent_state_coefficients() {
        // D[alpha]|0> has coefficients e^{-alpha^2/2} alpha^n / sqrt(n!)
        let alpha = 0.9;
        let c = displaced_number_state(alpha, 0, 40).unwrap();
        let mut expect = (-alpha * alpha / 2.0).exp();
        for n in 0..12 {
            assert_abs_diff_eq!(c[n], expect, epsilon = 1e-13);
            expect *= alpha / ((n + 1) as f64).sqrt();
        }
    }
}
