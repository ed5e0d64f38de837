use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::constructors::is_integral;
use super::{FormalSeries, SeriesError, DENOM};
use crate::qexpr::{eval_expr, parse, ExprAst};

/// Real period of the normalized holomorphic differential, kept as a
/// symbolic tag so the constant is always computed rather than stored.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RealPeriod {
    /// `√(2π/√3)`
    Sqrt2PiOverSqrt3,
    /// `√(2π)`
    Sqrt2Pi,
    /// `√π`
    SqrtPi,
}

impl RealPeriod {
    pub fn value(self) -> f64 {
        use std::f64::consts::PI;
        match self {
            RealPeriod::Sqrt2PiOverSqrt3 => (2.0 * PI / 3f64.sqrt()).sqrt(),
            RealPeriod::Sqrt2Pi => (2.0 * PI).sqrt(),
            RealPeriod::SqrtPi => PI.sqrt(),
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            RealPeriod::Sqrt2PiOverSqrt3 => "sqrt(2*pi/sqrt(3))",
            RealPeriod::Sqrt2Pi => "sqrt(2*pi)",
            RealPeriod::SqrtPi => "sqrt(pi)",
        }
    }
}

/// One of the three CM curves: `y² = x³ − 27/4`, `y² = x³ + 4x`, `y² = x³ − 4x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveSpec {
    pub conductor: u32,
    /// Weight-2 newform as an eta quotient.
    pub cuspform: ExprAst,
    /// Sign of the functional equation.
    pub root_number: i32,
    pub real_period: RealPeriod,
}

impl CurveSpec {
    pub const CONDUCTORS: [u32; 3] = [27, 32, 64];

    pub fn new(conductor: u32) -> Option<Self> {
        let (form, period) = match conductor {
            27 => ("eta(q^3)^2 * eta(q^9)^2", RealPeriod::Sqrt2PiOverSqrt3),
            32 => ("eta(q^4)^2 * eta(q^8)^2", RealPeriod::Sqrt2Pi),
            64 => ("eta(q^8)^8 / (eta(q^4)^2 * eta(q^16)^2)", RealPeriod::SqrtPi),
            _ => return None,
        };
        Some(CurveSpec {
            conductor,
            cuspform: parse(form).expect("built-in cusp form parses"),
            root_number: 1,
            real_period: period,
        })
    }

    pub fn all() -> Vec<CurveSpec> {
        Self::CONDUCTORS.iter().filter_map(|&n| Self::new(n)).collect()
    }

    pub fn series(&self, order24: i64) -> Result<FormalSeries, SeriesError> {
        Ok(eval_expr(&self.cuspform, order24)?)
    }
}

type CoeffCache = Mutex<HashMap<u32, Arc<Vec<i64>>>>;

fn cache() -> &'static CoeffCache {
    static CACHE: OnceLock<CoeffCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Fourier coefficients `a_1, …, a_m` of the curve's cusp form.
///
/// Tables are memoized per conductor; a longer cached table serves every
/// shorter request.
pub fn cuspform_coeffs(curve: &CurveSpec, m: usize) -> Result<Vec<i64>, SeriesError> {
    if let Some(t) = cache().lock().unwrap().get(&curve.conductor) {
        if t.len() >= m {
            return Ok(t[..m].to_vec());
        }
    }
    let order = DENOM * m as i64;
    let s = curve.series(order)?;
    if s.order() < order {
        return Err(SeriesError::InsufficientOrder { needed: order, have: s.order() });
    }
    let mut a = vec![0i64; m];
    for (e, c) in s.terms() {
        if e % DENOM != 0 || e <= 0 {
            return Err(SeriesError::NotNormalized);
        }
        let n = e / DENOM;
        a[(n - 1) as usize] = is_integral(c).ok_or(SeriesError::NonIntegral { n })?;
    }
    if a.first() != Some(&1) {
        return Err(SeriesError::NotNormalized);
    }
    let table = Arc::new(a.clone());
    let mut guard = cache().lock().unwrap();
    let entry = guard.entry(curve.conductor).or_insert_with(|| table.clone());
    if entry.len() < table.len() {
        *entry = table;
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `a_p = p − #{(x, y) ∈ F_p² : y² = x³ + A x + B}` for odd `p ∤ disc`.
    fn point_count_ap(p: i64, a: i64, b: i64) -> i64 {
        let legendre = |v: i64| -> i64 {
            let v = v.rem_euclid(p);
            if v == 0 {
                return 0;
            }
            let mut r = 1i64;
            let mut base = v;
            let mut e = (p - 1) / 2;
            while e > 0 {
                if e & 1 == 1 {
                    r = r * base % p;
                }
                base = base * base % p;
                e >>= 1;
            }
            if r == 1 { 1 } else { -1 }
        };
        let affine: i64 = (0..p).map(|x| 1 + legendre(x * x * x + a * x + b)).sum();
        p - affine
    }

    fn inv_mod(v: i64, p: i64) -> i64 {
        (1..p).find(|w| (v * w).rem_euclid(p) == 1).unwrap()
    }

    fn primes(limit: i64) -> Vec<i64> {
        (2..=limit).filter(|n| (2..*n).take_while(|d| d * d <= *n).all(|d| n % d != 0)).collect()
    }

    #[test]
    fn conductor_32_small_coefficients() {
        let a = cuspform_coeffs(&CurveSpec::new(32).unwrap(), 10).unwrap();
        assert_eq!((a[0], a[1], a[2], a[4]), (1, 0, 0, -2));
        assert_eq!(point_count_ap(5, 4, 0), -2);
    }

    #[test]
    fn conductor_64_and_27_leading_terms() {
        let a = cuspform_coeffs(&CurveSpec::new(64).unwrap(), 4).unwrap();
        assert_eq!((a[0], a[1]), (1, 0));
        let a = cuspform_coeffs(&CurveSpec::new(27).unwrap(), 4).unwrap();
        assert_eq!(a[0], 1);
    }

    #[test]
    fn eta_quotients_match_point_counts() {
        for curve in CurveSpec::all() {
            let a = cuspform_coeffs(&curve, 100).unwrap();
            for p in primes(100).into_iter().filter(|p| *p > 3) {
                let ap = match curve.conductor {
                    27 => point_count_ap(p, 0, (-27 * inv_mod(4, p)).rem_euclid(p)),
                    32 => point_count_ap(p, 4, 0),
                    _ => point_count_ap(p, -4, 0),
                };
                assert_eq!(a[(p - 1) as usize], ap, "N={} p={}", curve.conductor, p);
            }
        }
    }

    #[test]
    fn unknown_conductor() {
        assert!(CurveSpec::new(11).is_none());
    }
}
