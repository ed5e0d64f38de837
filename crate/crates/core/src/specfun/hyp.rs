use std::f64::consts::PI;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::gamma::{beta, gamma};
use super::SpecFunError;

/// Window on which `z(x) = ₂F₁(½,½;1;x)` is evaluated by its power series.
pub const Z_WINDOW: (f64, f64) = (0.05, 0.95);

/// `z(x) = ₂F₁(½, ½; 1; x)` by direct summation.
///
/// Accepts `0 ≤ x ≤ 0.95`; the lower bound of [`Z_WINDOW`] only matters to
/// [`nome_y`], which needs both `x` and `1 − x` inside the window.
pub fn hyp2f1_half(x: f64) -> Result<f64, SpecFunError> {
    if !(0.0..=Z_WINDOW.1).contains(&x) {
        return Err(SpecFunError::OutOfWindow { x });
    }
    let mut sum = 1.0;
    let mut term = 1.0;
    for n in 0..4000 {
        let m = n as f64;
        term *= (m + 0.5) * (m + 0.5) / ((m + 1.0) * (m + 1.0)) * x;
        sum += term;
        if term < 1e-18 * sum {
            break;
        }
    }
    Ok(sum)
}

/// `y(x) = π z(1−x)/z(x)`, with the nome `e^{−y}` of the elliptic modulus `√x`.
pub fn nome_y(x: f64) -> Result<f64, SpecFunError> {
    if !(Z_WINDOW.0..=Z_WINDOW.1).contains(&x) {
        return Err(SpecFunError::OutOfWindow { x });
    }
    Ok(PI * hyp2f1_half(1.0 - x)? / hyp2f1_half(x)?)
}

/// Parameters of `₃F₂[a, b, c; e, f; 1]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HypParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub e: f64,
    pub f: f64,
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}

impl HypParams {
    pub fn new(a: f64, b: f64, c: f64, e: f64, f: f64) -> Result<Self, SpecFunError> {
        for (v, name) in [(a, "a"), (b, "b"), (c, "c"), (e, "e"), (f, "f")] {
            if !v.is_finite() {
                return Err(SpecFunError::InvalidParameter { name, value: v });
            }
        }
        for (v, name) in [(e, "e"), (f, "f")] {
            if is_nonpositive_integer(v) {
                return Err(SpecFunError::InvalidParameter { name, value: v });
            }
        }
        Ok(HypParams { a, b, c, e, f })
    }

    /// Saalschützian excess `s = e + f − a − b − c`.
    pub fn s(&self) -> f64 {
        self.e + self.f - self.a - self.b - self.c
    }

    fn upper(&self) -> [f64; 3] {
        [self.a, self.b, self.c]
    }

    /// Index after which the series terminates, if an upper parameter is a
    /// non-positive integer.
    fn terminating_at(&self) -> Option<u64> {
        self.upper()
            .iter()
            .filter(|v| is_nonpositive_integer(**v))
            .map(|v| (-v) as u64)
            .min()
    }
}

/// Value with an estimate of its absolute error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HypValue {
    pub value: f64,
    pub error_bound: f64,
}

/// Tuning for [`hyp3f2_unit_with`].
#[derive(Clone, Copy, Debug)]
pub struct Hyp3f2Config {
    /// Terms summed directly before switching to the asymptotic tail.
    pub direct_terms: u64,
    /// Number of inverse powers kept in the tail expansion.
    pub tail_order: usize,
}

impl Default for Hyp3f2Config {
    fn default() -> Self {
        Hyp3f2Config { direct_terms: 2000, tail_order: 12 }
    }
}

#[derive(Default)]
struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

fn bernoulli_numbers() -> &'static [f64] {
    static B: OnceLock<Vec<f64>> = OnceLock::new();
    B.get_or_init(|| {
        // Σ_{j=0}^{m} C(m+1, j) B_j = 0, in exact arithmetic
        let n = 40;
        let mut b: Vec<BigRational> = vec![BigRational::from_integer(BigInt::from(1))];
        for m in 1..n {
            let mut acc = BigRational::zero();
            let mut binom = BigInt::from(1);
            for (j, bj) in b.iter().enumerate() {
                acc += BigRational::from_integer(binom.clone()) * bj;
                binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
            }
            b.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
        }
        b.iter().map(|r| r.to_f64().unwrap()).collect()
    })
}

/// Bernoulli polynomial `B_n(x)`.
fn bernoulli_poly(n: usize, x: f64) -> f64 {
    let b = bernoulli_numbers();
    let mut binom = 1.0;
    let mut acc = 0.0;
    for (j, bj) in b.iter().enumerate().take(n + 1) {
        acc += binom * bj * x.powi((n - j) as i32);
        binom = binom * (n - j) as f64 / (j + 1) as f64;
    }
    acc
}

/// Hurwitz zeta `Σ_{n ≥ N} n^{−σ}` for `σ > 1` by Euler–Maclaurin.
fn hurwitz_tail(sigma: f64, n: f64) -> f64 {
    let b = bernoulli_numbers();
    let mut acc = n.powf(1.0 - sigma) / (sigma - 1.0) + 0.5 * n.powf(-sigma);
    let mut rising = sigma;
    let mut fact = 2.0;
    let mut npow = n.powf(-sigma - 1.0);
    for j in 1..8 {
        acc += b[2 * j] / fact * rising * npow;
        rising *= (sigma + (2 * j) as f64 - 1.0) * (sigma + (2 * j) as f64);
        fact *= ((2 * j + 1) * (2 * j + 2)) as f64;
        npow /= n * n;
    }
    acc
}

/// Coefficients `c_k` with `t_n ∝ n^{−1−s} Σ_k c_k n^{−k}` for large `n`.
fn tail_coefficients(p: &HypParams, order: usize) -> Vec<f64> {
    let lower = [p.e, p.f, 1.0];
    let mut d = vec![0.0; order + 1];
    for (k, dk) in d.iter_mut().enumerate().skip(1) {
        let up: f64 = p.upper().iter().map(|&x| bernoulli_poly(k + 1, x)).sum();
        let lo: f64 = lower.iter().map(|&x| bernoulli_poly(k + 1, x)).sum();
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        *dk = sign * (up - lo) / (k * (k + 1)) as f64;
    }
    // exponentiate the series Σ d_k w^k
    let mut c = vec![0.0; order + 1];
    c[0] = 1.0;
    for k in 1..=order {
        let s: f64 = (1..=k).map(|j| j as f64 * d[j] * c[k - j]).sum();
        c[k] = s / k as f64;
    }
    c
}

/// `₃F₂[a, b, c; e, f; 1]` for `Re s > 0`, with default tuning.
pub fn hyp3f2_unit(p: &HypParams) -> Result<HypValue, SpecFunError> {
    hyp3f2_unit_with(p, Hyp3f2Config::default())
}

/// `₃F₂[a, b, c; e, f; 1]`: direct compensated summation followed by an
/// asymptotic expansion of the remaining tail.
pub fn hyp3f2_unit_with(p: &HypParams, cfg: Hyp3f2Config) -> Result<HypValue, SpecFunError> {
    let p = HypParams::new(p.a, p.b, p.c, p.e, p.f)?;
    let eps = f64::EPSILON;
    if let Some(last) = p.terminating_at() {
        let mut sum = Neumaier::default();
        let mut abs = 0.0;
        let mut t = 1.0;
        for n in 0..=last {
            sum.add(t);
            abs += t.abs() * (1.0 + 6.0 * n as f64);
            let m = n as f64;
            t *= (p.a + m) * (p.b + m) * (p.c + m) / ((p.e + m) * (p.f + m) * (m + 1.0));
        }
        return Ok(HypValue { value: sum.value(), error_bound: 4.0 * eps * abs });
    }
    let s = p.s();
    if !(s > 0.0) {
        return Err(SpecFunError::Divergent { s });
    }
    let big_n = cfg.direct_terms.max(200);
    let mut sum = Neumaier::default();
    let mut rounding = 0.0;
    let mut t = 1.0;
    for n in 0..big_n {
        sum.add(t);
        rounding += t.abs() * (1.0 + 6.0 * n as f64);
        let m = n as f64;
        t *= (p.a + m) * (p.b + m) * (p.c + m) / ((p.e + m) * (p.f + m) * (m + 1.0));
    }
    // t is now t_N
    let nf = big_n as f64;
    let c = tail_coefficients(&p, cfg.tail_order);
    let shape: f64 = c.iter().enumerate().map(|(k, ck)| ck * nf.powi(-(k as i32))).sum::<f64>()
        * nf.powf(-1.0 - s);
    let scale = t / shape;
    let pieces: Vec<f64> = c
        .iter()
        .enumerate()
        .map(|(k, ck)| scale * ck * hurwitz_tail(1.0 + s + k as f64, nf))
        .collect();
    let tail: f64 = pieces.iter().rev().sum();
    let truncation = pieces.last().map_or(0.0, |x| x.abs());
    let tail_rounding = tail.abs() * (6.0 * nf + 50.0) * eps;
    Ok(HypValue {
        value: sum.value() + tail,
        error_bound: truncation + tail_rounding + 2.0 * eps * rounding,
    })
}

/// Thomae transformation for Saalschützian `₃F₂(1)`.
///
/// Returns transformed parameters `(e−a, f−a, s; s+c, s+b)` and the prefactor
/// `Γ(e)Γ(f)Γ(s) / (Γ(a)Γ(s+b)Γ(s+c))`, so that the original value equals
/// `prefactor · ₃F₂(new; 1)`.
pub fn thomae(p: &HypParams) -> Result<(HypParams, f64), SpecFunError> {
    let s = p.s();
    let args = [p.e, p.f, s, p.a, s + p.b, s + p.c];
    if let Some(x) = args.iter().find(|x| !(**x > 0.0)) {
        return Err(SpecFunError::NonPositiveArgument { name: "thomae", x: *x });
    }
    let pre = gamma(p.e)? * gamma(p.f)? * gamma(s)? / (gamma(p.a)? * gamma(s + p.b)? * gamma(s + p.c)?);
    Ok((HypParams::new(p.e - p.a, p.f - p.a, s, s + p.c, s + p.b)?, pre))
}

/// Exponent pair `(α, β)` of the hypergeometric regulator function.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FtildeParams {
    pub alpha: f64,
    pub beta: f64,
}

impl FtildeParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self, SpecFunError> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(SpecFunError::InvalidParameter { name: "alpha", value: alpha });
        }
        if !(beta > 0.0 && beta < 1.0) {
            return Err(SpecFunError::InvalidParameter { name: "beta", value: beta });
        }
        Ok(FtildeParams { alpha, beta })
    }
}

fn scale_value(v: HypValue, k: f64) -> HypValue {
    HypValue {
        value: k * v.value,
        error_bound: (k * v.error_bound).abs() + 4.0 * f64::EPSILON * (k * v.value).abs(),
    }
}

/// `F̃(α, β) = B(α, β)² · ₃F₂[α, β, α+β−1; α+β, α+β; 1]`.
pub fn ftilde(q: FtildeParams) -> Result<HypValue, SpecFunError> {
    let FtildeParams { alpha, beta: b } = FtildeParams::new(q.alpha, q.beta)?;
    let g = alpha + b;
    let h = hyp3f2_unit(&HypParams::new(alpha, b, g - 1.0, g, g)?)?;
    let k = beta(alpha, b)?.powi(2);
    Ok(scale_value(h, k))
}

/// Second route to [`ftilde`], after one Thomae step:
/// `Γ(α)Γ(β) / (β Γ(α+β)) · ₃F₂[β, β, 1; α+β, β+1; 1]`.
pub fn ftilde_via_dixon(q: FtildeParams) -> Result<HypValue, SpecFunError> {
    let FtildeParams { alpha, beta: b } = FtildeParams::new(q.alpha, q.beta)?;
    let h = hyp3f2_unit(&HypParams::new(b, b, 1.0, alpha + b, b + 1.0)?)?;
    let k = beta(alpha, b)? / b;
    Ok(scale_value(h, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_table() {
        let b = bernoulli_numbers();
        assert_eq!(b[1], -0.5);
        assert!((b[2] - 1.0 / 6.0).abs() < 1e-16);
        assert_eq!(b[3], 0.0);
        assert!((b[12] + 691.0 / 2730.0).abs() < 1e-14);
        assert!((bernoulli_poly(2, 0.3) - (0.09 - 0.3 + 1.0 / 6.0)).abs() < 1e-15);
    }

    #[test]
    fn hurwitz_against_direct_sum() {
        let direct: f64 = (10..2_000_000).map(|n| (n as f64).powf(-2.5)).sum::<f64>()
            + hurwitz_tail(2.5, 2_000_000.0);
        assert!((hurwitz_tail(2.5, 10.0) - direct).abs() < 1e-13);
    }

    #[test]
    fn gauss_summation_special_case() {
        // ₃F₂ with c = f reduces to ₂F₁(½, ½; 3/2; 1) = π/2
        let p = HypParams::new(0.5, 0.5, 0.7, 1.5, 0.7).unwrap();
        let v = hyp3f2_unit(&p).unwrap();
        assert!((v.value - PI / 2.0).abs() < 1e-12, "{:?}", v);
        assert!(v.error_bound < 1e-10);
    }

    #[test]
    fn terminating_series() {
        // Pfaff–Saalschütz: ₃F₂[−n, a, b; c, 1+a+b−c−n; 1] = (c−a)_n (c−b)_n / ((c)_n (c−a−b)_n)
        use super::super::gamma::pochhammer;
        let (n, a, b, c) = (5u64, 0.3, 0.45, 1.7);
        let p = HypParams::new(-(n as f64), a, b, c, 1.0 + a + b - c - n as f64).unwrap();
        let want = pochhammer(c - a, n) * pochhammer(c - b, n) / (pochhammer(c, n) * pochhammer(c - a - b, n));
        let v = hyp3f2_unit(&p).unwrap();
        assert!((v.value - want).abs() < 1e-13);
    }

    #[test]
    fn divergence_and_bad_parameters() {
        let p = HypParams::new(0.5, 0.5, 1.0, 1.0, 1.0).unwrap();
        assert!(matches!(hyp3f2_unit(&p), Err(SpecFunError::Divergent { .. })));
        assert!(HypParams::new(0.5, 0.5, 1.0, -2.0, 1.0).is_err());
        assert!(HypParams::new(0.5, 0.5, 1.0, 0.0, 1.0).is_err());
        assert!(FtildeParams::new(0.0, 0.5).is_err());
    }

    #[test]
    fn z_window() {
        assert_eq!(hyp2f1_half(0.0).unwrap(), 1.0);
        assert!(hyp2f1_half(0.96).is_err());
        assert!(nome_y(0.01).is_err());
        // modulus 1/√2 gives the self-dual nome e^{−π}
        assert!((nome_y(0.5).unwrap() - PI).abs() < 1e-14);
    }
}
