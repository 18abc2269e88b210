//! Finite differences for `∂_w∂_w̄ = ¼(∂²_x + ∂²_y)`.

use crate::C;

/// Fourth-order central second derivative.
fn second(f: &impl Fn(f64) -> f64, h: f64) -> f64 {
    (-f(2.0 * h) + 16.0 * f(h) - 30.0 * f(0.0) + 16.0 * f(-h) - f(-2.0 * h)) / (12.0 * h * h)
}

fn laplacian_quarter(f: &impl Fn(C) -> f64, w0: C, h: f64) -> f64 {
    let fx = |s: f64| f(w0 + C::new(s, 0.0));
    let fy = |s: f64| f(w0 + C::new(0.0, s));
    0.25 * (second(&fx, h) + second(&fy, h))
}

/// `∂_w∂_w̄ f(w₀)` for real `f`, Richardson-extrapolated over steps `h` and `h/2`.
pub fn mixed_second_derivative(f: impl Fn(C) -> f64, w0: C, step: f64) -> f64 {
    let coarse = laplacian_quarter(&f, w0, step);
    let fine = laplacian_quarter(&f, w0, step / 2.0);
    (16.0 * fine - coarse) / 15.0
}

/// `∂_s∂_s̄ f(z + s ξ)` at `s = 0` for a function of several complex variables.
pub fn directional_mixed(f: impl Fn(&[C]) -> f64, z: &[C], xi: &[C], step: f64) -> f64 {
    mixed_second_derivative(
        |s| {
            let p: Vec<C> = z.iter().zip(xi).map(|(a, b)| a + s * b).collect();
            f(&p)
        },
        C::new(0.0, 0.0),
        step,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn analytic_cases() {
        let w0 = C::new(0.3, -0.2);
        assert!((mixed_second_derivative(|w| w.norm_sqr(), w0, 1e-2) - 1.0).abs() < 1e-10);
        assert!(mixed_second_derivative(|w| (w * w).re, w0, 1e-2).abs() < 1e-10);
        let v = mixed_second_derivative(|w| (1.0 + w.norm_sqr()).ln(), C::new(0.0, 0.0), 1e-2);
        assert!((v - 1.0).abs() < 1e-9, "{v}");
    }
}
