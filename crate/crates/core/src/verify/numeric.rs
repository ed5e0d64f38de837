use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{RegulatorConstants, VerifyConfig};
use crate::lseries::{lprime0, lvalue2_series, lvalue2_theta_integral, QuadConfig};
use crate::qseries::CurveSpec;
use crate::specfun::{
    beta, ftilde, ftilde_via_dixon, gamma, hyp2f1_half, hyp3f2_unit, nome_y, pochhammer, theta,
    thomae, FtildeParams, HypParams,
};

/// Worst-case comparison over a check's sample points.
#[derive(Clone, Debug)]
pub(crate) struct Measured {
    pub lhs: f64,
    pub rhs: f64,
    /// Judge by relative rather than absolute error.
    pub relative: bool,
}

impl Measured {
    fn abs(lhs: f64, rhs: f64) -> Self {
        Measured { lhs, rhs, relative: false }
    }

    fn rel(lhs: f64, rhs: f64) -> Self {
        Measured { lhs, rhs, relative: true }
    }

    pub fn abs_err(&self) -> f64 {
        (self.lhs - self.rhs).abs()
    }

    pub fn rel_err(&self) -> f64 {
        if self.rhs == 0.0 {
            self.abs_err()
        } else {
            self.abs_err() / self.rhs.abs()
        }
    }

    fn score(&self) -> f64 {
        if self.relative {
            self.rel_err()
        } else {
            self.abs_err()
        }
    }
}

fn worst(items: impl IntoIterator<Item = Measured>) -> Measured {
    items
        .into_iter()
        .reduce(|a, b| if b.score() > a.score() || b.score().is_nan() { b } else { a })
        .expect("at least one sample point")
}

type CheckResult = Result<Measured, String>;

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Fixed sample points plus `extra` seeded uniform draws from `range`.
///
/// The stream depends only on the seed and the check name, so results do
/// not depend on execution order.
fn samples(base: &[f64], range: (f64, f64), name: &str, cfg: &VerifyConfig) -> Vec<f64> {
    let mut out = base.to_vec();
    if let Some(seed) = cfg.seed {
        let tag = name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3));
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ tag);
        for _ in 0..cfg.extra_points {
            out.push(rng.random_range(range.0..range.1));
        }
    }
    out
}

pub(crate) fn num_seriescal1(cfg: &VerifyConfig) -> CheckResult {
    let mut rows = Vec::new();
    for u in samples(&[0.1, 0.2, 0.4], (0.1, 0.5), "num_seriescal1", cfg) {
        let c = PI / (4.0 * u);
        let mut lhs = 0.0;
        for k in 1..100_000 {
            let kh = k as f64 - 0.5;
            let mut inner = 0.0;
            for s in 1..100_000 {
                let t = (-c * (s as f64 - 0.5) * kh).exp();
                inner += t;
                if t < 1e-22 {
                    break;
                }
            }
            lhs += inner / kh;
            if inner / kh < 1e-22 {
                break;
            }
        }
        let q8 = (-16.0 * PI * u).exp();
        let rhs = 0.5 * (theta::theta3(q8).map_err(err)? / theta::theta2(q8).map_err(err)?).ln();
        rows.push(Measured::abs(lhs, rhs));
    }
    Ok(worst(rows))
}

pub(crate) fn num_eta_involution(cfg: &VerifyConfig) -> CheckResult {
    let eta = |q: f64| theta::eta(q).map_err(err);
    let mut rows = Vec::new();
    // η(e^{−2π/t}) = √t η(e^{−2πt})
    for t in samples(&[0.5, 0.8, 1.3], (0.4, 2.5), "num_eta_involution", cfg) {
        rows.push(Measured::abs(eta((-2.0 * PI / t).exp())?, t.sqrt() * eta((-2.0 * PI * t).exp())?));
    }
    // the eta quotient arising in the double-sum lemma, on both sides of τ ↦ −1/τ
    for u in [0.1, 0.2, 0.4] {
        let lhs = eta((-PI / (8.0 * u)).exp())?.powi(3)
            / (eta((-PI / (4.0 * u)).exp())? * eta((-PI / (16.0 * u)).exp())?.powi(2));
        let q = (-2.0 * PI * u).exp();
        let rhs = eta(q.powi(16))?.powi(3) / (2f64.sqrt() * eta(q.powi(8))? * eta(q.powi(32))?.powi(2));
        rows.push(Measured::abs(lhs, rhs));
    }
    Ok(worst(rows))
}

pub(crate) fn num_ramanujan_param(cfg: &VerifyConfig) -> CheckResult {
    let mut rows = Vec::new();
    for x in samples(&[0.2, 0.5, 0.8], (0.1, 0.9), "num_ramanujan_param", cfg) {
        let z = hyp2f1_half(x).map_err(err)?;
        let q = (-nome_y(x).map_err(err)?).exp();
        let rz = z.sqrt();
        let w = (1.0 - x).sqrt();
        let w4 = (1.0 - x).powf(0.25);
        let t2 = |q: f64| theta::theta2(q).map_err(err);
        let t3 = |q: f64| theta::theta3(q).map_err(err);
        rows.push(Measured::abs(t3(q)?, rz));
        rows.push(Measured::abs(t2(q)?, rz * x.powf(0.25)));
        rows.push(Measured::abs(t3(q * q)?, (z / 2.0).sqrt() * (1.0 + w).sqrt()));
        rows.push(Measured::abs(t2(q * q)?, (z / 2.0).sqrt() * (1.0 - w).sqrt()));
        rows.push(Measured::abs(t3(q.powi(4))?, 0.5 * rz * (1.0 + w4)));
        rows.push(Measured::abs(t2(q.powi(4))?, 0.5 * rz * (1.0 - w4)));
    }
    Ok(worst(rows))
}

pub(crate) fn num_measure(cfg: &VerifyConfig) -> CheckResult {
    let h = 1e-4;
    let mut rows = Vec::new();
    for x in samples(&[0.5], (0.2, 0.8), "num_measure", cfg) {
        let y = nome_y(x).map_err(err)?;
        let dy = (nome_y(x + h).map_err(err)? - nome_y(x - h).map_err(err)?) / (2.0 * h);
        let lhs = theta::theta3((-y).exp()).map_err(err)?.powi(4) * -dy;
        rows.push(Measured::abs(lhs, 1.0 / (x * (1.0 - x))));
    }
    Ok(worst(rows))
}

fn series_sum(term: impl Fn(f64) -> f64) -> f64 {
    let mut acc = 0.0;
    for n in 1..1_000_000 {
        let t = term(n as f64);
        acc += t;
        if t.abs() < 1e-20 {
            break;
        }
    }
    acc
}

pub(crate) fn num_log_expansion_32(cfg: &VerifyConfig) -> CheckResult {
    let rows = samples(&[0.3, 0.6, 0.9], (0.1, 0.95), "num_log_expansion_32", cfg)
        .into_iter()
        .map(|x| {
            let v = 1.0 - x;
            let lhs = ((1.0 - v.sqrt()) / x.sqrt()).ln();
            let rhs = series_sum(|n| (v.powf(n) - 2.0 * v.powf(n / 2.0)) / (2.0 * n));
            Measured::abs(lhs, rhs)
        });
    Ok(worst(rows))
}

pub(crate) fn num_log_expansion_64(cfg: &VerifyConfig) -> CheckResult {
    let rows = samples(&[0.3, 0.6, 0.9], (0.1, 0.95), "num_log_expansion_64", cfg)
        .into_iter()
        .map(|x| {
            let v = 1.0 - x;
            let r = v.powf(0.25);
            let lhs = ((1.0 + r) / (1.0 - r)).ln();
            let rhs = -2.0 * series_sum(|n| (v.powf(n / 2.0) - 2.0 * v.powf(n / 4.0)) / (2.0 * n));
            Measured::abs(lhs, rhs)
        });
    Ok(worst(rows))
}

pub(crate) fn num_beta_table(_cfg: &VerifyConfig) -> CheckResult {
    let g = |x: f64| gamma(x).map_err(err);
    let b = |x: f64, y: f64| beta(x, y).map_err(err);
    let (g14, g34, g12) = (g(0.25)?, g(0.75)?, g(0.5)?);
    let mut rows = Vec::new();
    for n in 1..=6u64 {
        let nf = n as f64;
        for (a, ga) in [(0.25, g14), (0.75, g34)] {
            let via_gamma = ga * g(nf)? / g(a + nf)?;
            rows.push(Measured::abs(b(a, nf)?, via_gamma));
            rows.push(Measured::abs(via_gamma, g(nf)? / pochhammer(a, n)));
        }
        let m = n / 2;
        let mf = m as f64;
        if n % 2 == 0 {
            rows.push(Measured::abs(b(0.25, nf / 2.0)?, g(mf)? / pochhammer(0.25, m)));
            rows.push(Measured::abs(b(0.75, nf / 2.0)?, g(mf)? / pochhammer(0.75, m)));
        } else {
            rows.push(Measured::abs(
                b(0.25, nf / 2.0)?,
                g14 * g12 * pochhammer(0.5, m) / (g34 * pochhammer(0.75, m)),
            ));
            rows.push(Measured::abs(
                b(0.75, nf / 2.0)?,
                4.0 * g34 * g12 * pochhammer(0.5, m) / (g14 * pochhammer(1.25, m)),
            ));
        }
    }
    Ok(worst(rows))
}

fn f32(a: f64, b: f64, c: f64, e: f64, f: f64) -> Result<f64, String> {
    let p = HypParams::new(a, b, c, e, f).map_err(err)?;
    Ok(hyp3f2_unit(&p).map_err(err)?.value)
}

/// Closed-form right-hand side of `L(E_N, 2)` in terms of `₃F₂(1)` values.
pub fn closed_form_l2(conductor: u32) -> Result<f64, String> {
    let g = |x: f64| gamma(x).map_err(err);
    let sp = PI.sqrt();
    let s2 = 2f64.sqrt();
    match conductor {
        32 => Ok(sp * g(0.25)?.powi(2) / (32.0 * s2) * f32(0.5, 0.5, 1.0, 1.5, 0.75)?
            - sp * g(0.75)?.powi(2) / (8.0 * s2) * f32(0.5, 0.5, 1.0, 1.5, 1.25)?),
        64 => Ok(sp * g(0.25)?.powi(2) / 32.0 * f32(0.25, 0.25, 1.0, 0.5, 1.25)?
            - sp * g(0.75)?.powi(2) / 48.0 * f32(0.75, 0.75, 1.0, 1.5, 1.75)?),
        27 => {
            let (t1, t2) = (1.0 / 3.0, 2.0 / 3.0);
            Ok(g(t1)?.powi(3) / 27.0 * f32(t1, t1, 1.0, t2, 4.0 / 3.0)?
                - g(t2)?.powi(3) / 18.0 * f32(t2, t2, 1.0, 4.0 / 3.0, 5.0 / 3.0)?)
        }
        _ => Err(format!("no closed form for conductor {}", conductor)),
    }
}

fn curve(n: u32) -> CurveSpec {
    CurveSpec::new(n).expect("registry conductors are known")
}

fn series_l2(n: u32, cfg: &VerifyConfig) -> Result<f64, String> {
    Ok(lvalue2_series(&curve(n), cfg.series_terms).map_err(err)?.value)
}

/// Both numerical routes (one for conductor 27) against the closed form.
pub(crate) fn thm_l(n: u32, cfg: &VerifyConfig) -> CheckResult {
    let rhs = closed_form_l2(n)?;
    let mut rows = vec![Measured::abs(series_l2(n, cfg)?, rhs)];
    if n != 27 {
        let i = lvalue2_theta_integral(&curve(n), &QuadConfig::default()).map_err(err)?;
        rows.push(Measured::abs(i.value, rhs));
    }
    Ok(worst(rows))
}

fn theorem_sets() -> Vec<HypParams> {
    let (t1, t2) = (1.0 / 3.0, 2.0 / 3.0);
    [
        (0.5, 0.5, 1.0, 1.5, 0.75),
        (0.5, 0.5, 1.0, 1.5, 1.25),
        (0.25, 0.25, 1.0, 0.5, 1.25),
        (0.75, 0.75, 1.0, 1.5, 1.75),
        (t1, t1, 1.0, t2, 4.0 / 3.0),
        (t2, t2, 1.0, 4.0 / 3.0, 5.0 / 3.0),
    ]
    .iter()
    .map(|&(a, b, c, e, f)| HypParams { a, b, c, e, f })
    .collect()
}

pub(crate) fn hyp_thomae_invariance(_cfg: &VerifyConfig) -> CheckResult {
    let mut rows = Vec::new();
    for p in theorem_sets() {
        let lhs = hyp3f2_unit(&p).map_err(err)?.value;
        let (q, pre) = thomae(&p).map_err(err)?;
        rows.push(Measured::abs(lhs, pre * hyp3f2_unit(&q).map_err(err)?.value));
    }
    Ok(worst(rows))
}

pub(crate) const FTILDE_PAIRS: [(f64, f64); 6] = [
    (1.0 / 3.0, 1.0 / 3.0),
    (2.0 / 3.0, 2.0 / 3.0),
    (0.25, 0.5),
    (0.75, 0.5),
    (0.25, 0.25),
    (0.75, 0.75),
];

fn ft(pair: (f64, f64)) -> Result<f64, String> {
    let q = FtildeParams::new(pair.0, pair.1).map_err(err)?;
    Ok(ftilde(q).map_err(err)?.value)
}

pub(crate) fn hyp_ftilde_routes(_cfg: &VerifyConfig) -> CheckResult {
    let mut rows = Vec::new();
    for pair in FTILDE_PAIRS {
        let q = FtildeParams::new(pair.0, pair.1).map_err(err)?;
        rows.push(Measured::abs(ftilde(q).map_err(err)?.value, ftilde_via_dixon(q).map_err(err)?.value));
    }
    Ok(worst(rows))
}

pub(crate) fn delta_ftilde(rc: &RegulatorConstants) -> Result<f64, String> {
    Ok(ft(rc.pairs.0)? - ft(rc.pairs.1)?)
}

/// Smallest `ΔF̃` over the three theorem pairs (as `lhs`), against zero.
pub(crate) fn hyp_ftilde_positive(_cfg: &VerifyConfig) -> Result<f64, String> {
    let mut min = f64::INFINITY;
    for rc in RegulatorConstants::all() {
        min = min.min(delta_ftilde(&rc)?);
    }
    Ok(min)
}

/// `ΔF̃ = ratio · L(E_N, 2)`, relative.
pub(crate) fn reg(n: u32, cfg: &VerifyConfig) -> CheckResult {
    let rc = RegulatorConstants::for_conductor(n).ok_or("unknown conductor")?;
    Ok(Measured::rel(delta_ftilde(&rc)?, rc.ratio * series_l2(n, cfg)?))
}

/// Final coefficient recomposed from `prefactor · ΔF̃ = c · L′(E, 0) · Ω_R`.
pub(crate) fn reg_final(n: u32, cfg: &VerifyConfig) -> CheckResult {
    let rc = RegulatorConstants::for_conductor(n).ok_or("unknown conductor")?;
    let c = curve(n);
    let lp = lprime0(&c, series_l2(n, cfg)?);
    let coeff = rc.prefactor * delta_ftilde(&rc)? / (lp * c.real_period.value());
    Ok(Measured::rel(coeff, rc.final_coefficient))
}
