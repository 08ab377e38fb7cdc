/// Number of nodes used by the integral checks over `[μ - 8σ, μ + 8σ]`.
pub const SIMPSON_POINTS: usize = 4001;

/// Half-width, in standard deviations, of the integration window.
pub const WINDOW_SIGMAS: f64 = 8.0;

/// Composite Simpson rule over `[a, b]` with `points` nodes.
///
/// `points` is rounded up to the next odd number, minimum 3.
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, points: usize) -> f64 {
    let points = points.max(3) | 1;
    let intervals = points - 1;
    let h = (b - a) / intervals as f64;
    let mut sum = f(a) + f(b);
    for i in 1..intervals {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(a + i as f64 * h);
    }
    sum * h / 3.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_for_cubics() {
        let got = simpson(|x| x * x * x - 2.0 * x + 1.0, -1.0, 2.0, 3);
        // ∫ x³ - 2x + 1 over [-1, 2] = 15/4 - 3 + 3
        assert!((got - 3.75).abs() < 1e-14);
    }

    #[test]
    fn even_point_count_rounds_up() {
        let got = simpson(f64::sin, 0.0, std::f64::consts::PI, 100);
        assert!((got - 2.0).abs() < 1e-7);
    }
}
