//! Fixed constructors for the q-series the identities are built from.
//!
//! All constructors take a multiplier `k` (meaning argument `q^k`) where it
//! makes sense and an `order24` truncation in units of `q^{1/24}`.

use num_rational::BigRational;
use num_traits::Zero;

use super::series::{rat, FormalSeries, DENOM};

/// The nontrivial character modulo 4, `Im(i^n)`.
pub fn chi4(n: i64) -> i64 {
    match n.rem_euclid(4) {
        1 => 1,
        3 => -1,
        _ => 0,
    }
}

/// Dedekind eta `η(q^k) = q^{k/24} ∏_{n≥1} (1 - q^{kn})`.
///
/// The product is written out with Euler's pentagonal expansion
/// `Σ_j (-1)^j q^{j(3j-1)/2}`, so only the nonzero terms are ever built.
pub fn eta(k: i64, order24: i64) -> FormalSeries {
    assert!(k >= 1, "eta multiplier must be positive");
    let lead = k;
    if order24 < lead {
        return FormalSeries::zero(order24);
    }
    let len = (order24 - lead) / (DENOM * k);
    let mut terms = vec![(lead, 1i64)];
    for j in 1i64.. {
        let sign = if j % 2 == 0 { 1 } else { -1 };
        let lo = j * (3 * j - 1) / 2;
        if lo > len {
            break;
        }
        terms.push((lead + DENOM * k * lo, sign));
        let hi = j * (3 * j + 1) / 2;
        if hi <= len {
            terms.push((lead + DENOM * k * hi, sign));
        }
    }
    FormalSeries::from_int_terms(order24, terms)
}

/// Which Jacobi theta constant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ThetaKind {
    Theta2,
    Theta3,
    Theta4,
}

impl ThetaKind {
    pub fn from_index(j: u8) -> Option<Self> {
        match j {
            2 => Some(ThetaKind::Theta2),
            3 => Some(ThetaKind::Theta3),
            4 => Some(ThetaKind::Theta4),
            _ => None,
        }
    }
}

/// Jacobi theta constants at `q^k`:
/// `θ₂ = Σ q^{k(n+1/2)²}`, `θ₃ = Σ q^{kn²}`, `θ₄ = Σ (-1)^n q^{kn²}`, `n ∈ Z`.
pub fn theta(kind: ThetaKind, k: i64, order24: i64) -> FormalSeries {
    assert!(k >= 1, "theta multiplier must be positive");
    let mut terms = Vec::new();
    match kind {
        ThetaKind::Theta2 => {
            // n and -n-1 give the same exponent 6k(2n+1)^2
            for n in 0i64.. {
                let e = 6 * k * (2 * n + 1) * (2 * n + 1);
                if e > order24 {
                    break;
                }
                terms.push((e, 2));
            }
        }
        ThetaKind::Theta3 | ThetaKind::Theta4 => {
            if order24 >= 0 {
                terms.push((0, 1));
            }
            for n in 1i64.. {
                let e = DENOM * k * n * n;
                if e > order24 {
                    break;
                }
                let sign = if kind == ThetaKind::Theta4 && n % 2 == 1 { -1 } else { 1 };
                terms.push((e, 2 * sign));
            }
        }
    }
    FormalSeries::from_int_terms(order24, terms)
}

/// Divisor sums `σ₁(n)` for `0 ≤ n ≤ max` (entry 0 unused).
fn sigma1_table(max: usize) -> Vec<i64> {
    let mut sigma = vec![0i64; max + 1];
    for d in 1..=max {
        for m in (d..=max).step_by(d) {
            sigma[m] += d as i64;
        }
    }
    sigma
}

/// Eisenstein series `L(q^k) = 1 - 24 Σ σ₁(n) q^{kn}`.
pub fn eisenstein_l(k: i64, order24: i64) -> FormalSeries {
    assert!(k >= 1, "Eisenstein multiplier must be positive");
    let max = (order24.max(0) / (DENOM * k)) as usize;
    let sigma = sigma1_table(max);
    let terms = std::iter::once((0, 1)).chain(
        (1..=max).map(|n| (DENOM * k * n as i64, -24 * sigma[n])),
    );
    FormalSeries::from_int_terms(order24, terms)
}

/// `4 Σ_{n,k≥1} χ₋₄(n) q^{n(k-1/2)}`, summed over the exact support
/// `12 n (2k-1) ≤ order24`.
pub fn lambert_theta2sq(order24: i64) -> FormalSeries {
    let mut terms = Vec::new();
    for n in 1i64.. {
        if 12 * n > order24 {
            break;
        }
        let c = chi4(n);
        if c == 0 {
            continue;
        }
        for k in 1i64.. {
            let e = 12 * n * (2 * k - 1);
            if e > order24 {
                break;
            }
            terms.push((e, 4 * c));
        }
    }
    FormalSeries::from_int_terms(order24, terms)
}

/// `1 + 4 Σ_{n≥1} q^n / (1 + q^{2n})`, expanded as
/// `1 + 4 Σ_{n≥1, m≥0} (-1)^m q^{n(2m+1)}`.
pub fn lambert_theta3sq(order24: i64) -> FormalSeries {
    let mut terms = vec![(0, 1)];
    for n in 1i64.. {
        if DENOM * n > order24 {
            break;
        }
        for m in 0i64.. {
            let e = DENOM * n * (2 * m + 1);
            if e > order24 {
                break;
            }
            terms.push((e, if m % 2 == 0 { 4 } else { -4 }));
        }
    }
    FormalSeries::from_int_terms(order24, terms)
}

/// `Σ_{n≥0} (-1)^n (2n+1) q^{(2n+1)²}`, the triple-product expansion of `η³(q⁸)`.
pub fn eta_cubed_series(order24: i64) -> FormalSeries {
    let mut terms = Vec::new();
    for n in 0i64.. {
        let e = DENOM * (2 * n + 1) * (2 * n + 1);
        if e > order24 {
            break;
        }
        let sign = if n % 2 == 0 { 1 } else { -1 };
        terms.push((e, sign * (2 * n + 1)));
    }
    FormalSeries::from_int_terms(order24, terms)
}

/// `Σ_{n,r≥1} r χ₋₄(nr) q^{nr}` by a direct double loop.
pub fn chi_series_lemma_lhs(order24: i64) -> FormalSeries {
    let max = order24.max(0) / DENOM;
    let mut terms = Vec::new();
    for n in 1..=max {
        for r in 1..=max / n {
            let c = chi4(n * r);
            if c != 0 {
                terms.push((DENOM * n * r, r * c));
            }
        }
    }
    FormalSeries::from_int_terms(order24, terms)
}

/// `½ θ₂(q⁴) θ₃(q⁴) (θ₃²(q⁴) − θ₂²(q⁴))` by theta arithmetic.
pub fn chi_series_lemma_rhs(order24: i64) -> FormalSeries {
    let t2 = theta(ThetaKind::Theta2, 4, order24);
    let t3 = theta(ThetaKind::Theta3, 4, order24);
    let diff = t3.mul(&t3).sub(&t2.mul(&t2));
    t2.mul(&t3).mul(&diff).scale(&rat(1, 2))
}

/// Splits a series with integral exponents `Σ c_e q^e` under `q -> iq` into
/// real and imaginary parts: `Σ Re(i^e) c_e q^e` and `Σ Im(i^e) c_e q^e`.
///
/// Returns `None` when some exponent is not a whole power of `q`.
pub fn twist_by_i(s: &FormalSeries) -> Option<(FormalSeries, FormalSeries)> {
    let mut re = Vec::new();
    let mut im = Vec::new();
    for (e, c) in s.terms() {
        if e % DENOM != 0 {
            return None;
        }
        let n = e / DENOM;
        let target = match n.rem_euclid(4) {
            0 => (&mut re, c.clone()),
            1 => (&mut im, c.clone()),
            2 => (&mut re, -c.clone()),
            _ => (&mut im, -c.clone()),
        };
        target.0.push((e, target.1));
    }
    Some((
        FormalSeries::from_terms(s.order(), re),
        FormalSeries::from_terms(s.order(), im),
    ))
}

/// Coefficient of `q^n` (numerator `24n`) as an exact rational.
pub fn coeff_at_q(s: &FormalSeries, n: i64) -> BigRational {
    s.coeff(DENOM * n)
}

pub(crate) fn is_integral(c: &BigRational) -> Option<i64> {
    if c.is_integer() {
        num_traits::ToPrimitive::to_i64(c.numer())
    } else if c.is_zero() {
        Some(0)
    } else {
        None
    }
}
