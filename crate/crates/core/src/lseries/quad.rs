use std::f64::consts::PI;

/// Composite Gauss–Legendre layout on `[0, u0] ∪ [u0, u_max]`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadConfig {
    /// Crossover between the modular rewrite and direct theta series.
    pub u0: f64,
    pub u_max: f64,
    pub nodes: usize,
    pub panels_inner: usize,
    pub panels_outer: usize,
    /// Absolute tolerance the error estimate must meet.
    pub tolerance: f64,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig { u0: 0.25, u_max: 40.0, nodes: 20, panels_inner: 4, panels_outer: 40, tolerance: 1e-9 }
    }
}

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[−1, 1]`.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let k = k as f64;
                let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 0 { 1.0 } else { p1 };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * pn - pm) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

pub(crate) struct QuadResult {
    pub value: f64,
    /// `∫|f|`, for rounding estimates.
    pub abs: f64,
    pub nodes: usize,
}

/// Composite rule with every panel split `refine` times.
pub(crate) fn composite(f: &mut impl FnMut(f64) -> f64, cfg: &QuadConfig, refine: usize) -> QuadResult {
    let rule = gauss_legendre(cfg.nodes);
    let mut res = QuadResult { value: 0.0, abs: 0.0, nodes: 0 };
    for (lo, hi, panels) in [(0.0, cfg.u0, cfg.panels_inner), (cfg.u0, cfg.u_max, cfg.panels_outer)] {
        let count = panels * refine;
        let h = (hi - lo) / count as f64;
        for p in 0..count {
            let mid = lo + h * (p as f64 + 0.5);
            for &(x, w) in &rule {
                let v = f(mid + 0.5 * h * x) * w * 0.5 * h;
                res.value += v;
                res.abs += v.abs();
                res.nodes += 1;
            }
        }
    }
    res
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_is_exact_for_polynomials() {
        let r = gauss_legendre(10);
        let w: f64 = r.iter().map(|p| p.1).sum();
        assert!((w - 2.0).abs() < 1e-14);
        let x18: f64 = r.iter().map(|(x, w)| w * x.powi(18)).sum();
        assert!((x18 - 2.0 / 19.0).abs() < 1e-14);
    }

    #[test]
    fn composite_integrates_exponential() {
        let cfg = QuadConfig { u0: 0.5, u_max: 30.0, nodes: 12, panels_inner: 1, panels_outer: 20, tolerance: 0.0 };
        let r = composite(&mut |u: f64| (-u).exp(), &cfg, 1);
        assert!((r.value - (1.0 - (-30f64).exp())).abs() < 1e-14);
    }
}
