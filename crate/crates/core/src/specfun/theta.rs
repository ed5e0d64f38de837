//! Theta and eta functions at a real nome `0 ≤ q < 1`.

use super::SpecFunError;

fn check(q: f64) -> Result<(), SpecFunError> {
    if (0.0..1.0).contains(&q) {
        Ok(())
    } else {
        Err(SpecFunError::InvalidParameter { name: "q", value: q })
    }
}

/// `Σ_{n ≥ start, n ≡ start (mod 2)} q^{n²}`
fn square_sum(q: f64, start: u64) -> f64 {
    let mut acc = 0.0;
    let mut n = start;
    loop {
        let t = q.powf((n * n) as f64);
        acc += t;
        if t < 1e-20 * acc.max(1e-300) || n > 1_000_000 {
            return acc;
        }
        n += 2;
    }
}

/// `Σ_{n≥0} q^{n(n+1)}`, so that `θ₂(q) = 2 q^{1/4} · theta2_reduced(q)`.
pub fn theta2_reduced(q: f64) -> Result<f64, SpecFunError> {
    check(q)?;
    let mut acc = 0.0;
    let mut n = 0u64;
    loop {
        let t = q.powf((n * (n + 1)) as f64);
        acc += t;
        if t < 1e-20 * acc || n > 1_000_000 {
            return Ok(acc);
        }
        n += 1;
    }
}

pub fn theta2(q: f64) -> Result<f64, SpecFunError> {
    Ok(2.0 * q.powf(0.25) * theta2_reduced(q)?)
}

pub fn theta3(q: f64) -> Result<f64, SpecFunError> {
    check(q)?;
    Ok(1.0 + 2.0 * (square_sum(q, 1) + square_sum(q, 2)))
}

pub fn theta4(q: f64) -> Result<f64, SpecFunError> {
    check(q)?;
    Ok(1.0 + 2.0 * (square_sum(q, 2) - square_sum(q, 1)))
}

/// `θ₃ − θ₄ = 4 Σ_{n odd} q^{n²}`, without cancellation.
pub fn theta3_minus_theta4(q: f64) -> Result<f64, SpecFunError> {
    check(q)?;
    Ok(4.0 * square_sum(q, 1))
}

/// Dedekind eta `q^{1/24} ∏ (1 − q^n)`.
pub fn eta(q: f64) -> Result<f64, SpecFunError> {
    check(q)?;
    if q == 0.0 {
        return Ok(0.0);
    }
    let mut prod = 1.0;
    let mut qn = q;
    while qn > 1e-18 {
        prod *= 1.0 - qn;
        qn *= q;
    }
    Ok(q.powf(1.0 / 24.0) * prod)
}
