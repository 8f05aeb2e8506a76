//! Convolution kernel `β` of the strip Hilbert transform and its derivative.
//!
//! ```text
//! β(s) = −s/d + (π/d) Σ_n { coth(π(s − 2πn)/(2d)) + sgn(n) }
//! −β′(s) = 1/d + (π²/(2d²)) Σ_n 1/sinh²(π(s − 2πn)/(2d))
//! ```
//!
//! Both series are summed in symmetric pairs `±n`. With `a = π/(2d)` the pair
//! terms decay like `exp(−2π²n/d)`, so the tail after `N` pairs is bounded by
//! a geometric series that is tracked alongside the value.

use std::f64::consts::PI;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use super::operators::check_depth;
use super::profile::wrap_to_pi;
use crate::error::{Result, WaveError};

/// Default relative truncation tolerance.
pub const DEFAULT_TOL: f64 = 1e-14;

const MAX_PAIRS: usize = 1_000_000;

/// A series value together with its truncation record.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    pub truncation_terms: usize,
    pub tail_bound: f64,
}

fn reduce(s: f64) -> Result<f64> {
    let r = wrap_to_pi(s);
    if r == 0.0 || !s.is_finite() {
        return Err(WaveError::Singularity(s));
    }
    Ok(r)
}

/// Upper bound on the sum of all pairs with index `> n_done`, for either
/// series, in units of its prefactor. `pair_bound(n) ≤ c·exp(−2a(2πn − π))`.
fn geometric_tail(a: f64, n_done: usize, c: f64) -> f64 {
    let first = (-2.0 * a * (2.0 * PI * (n_done + 1) as f64 - PI)).exp();
    let ratio = (-4.0 * PI * a).exp();
    c * first / (1.0 - ratio)
}

/// `β(s)` by the symmetric pair series.
pub fn beta_eval(s: f64, d: f64, tol: f64) -> Result<SeriesValue> {
    check_depth(d)?;
    let s = reduce(s)?;
    let a = PI / (2.0 * d);
    let pre = PI / d;
    let head = pre / (a * s).tanh();
    let scale = head.abs() + (s / d).abs() + pre;
    // 2/expm1(x) ≤ 2e^{−x}/(1 − e^{−x}); the first pair has x ≥ 2aπ
    let c = 4.0 / (1.0 - (-2.0 * a * PI).exp());
    let mut sum = 0.0;
    let mut n = 0;
    let mut tail = geometric_tail(a, 0, c) * pre;
    while tail > tol * scale && n < MAX_PAIRS {
        n += 1;
        let shift = 2.0 * PI * n as f64;
        // coth(a(s − 2πn)) + 1 and coth(a(s + 2πn)) − 1 in cancellation-free form
        let minus = -2.0 / (2.0 * a * (shift - s)).exp_m1();
        let plus = 2.0 / (2.0 * a * (shift + s)).exp_m1();
        sum += minus + plus;
        tail = geometric_tail(a, n, c) * pre;
    }
    Ok(SeriesValue {
        value: -s / d + head + pre * sum,
        truncation_terms: n,
        tail_bound: tail,
    })
}

/// `β′(s)` by the differentiated pair series.
pub fn beta_prime_eval(s: f64, d: f64, tol: f64) -> Result<SeriesValue> {
    check_depth(d)?;
    let s = reduce(s)?;
    let a = PI / (2.0 * d);
    let pre = PI * PI / (2.0 * d * d);
    let inv_sinh2 = |x: f64| {
        let sh = x.sinh();
        1.0 / (sh * sh)
    };
    let head = pre * inv_sinh2(a * s);
    let scale = 1.0 / d + head;
    // 1/sinh²(x) ≤ 4e^{−2x}/(1 − e^{−2x})², two terms per pair
    let q = 1.0 - (-2.0 * a * PI).exp();
    let c = 8.0 / (q * q);
    let mut sum = 0.0;
    let mut n = 0;
    let mut tail = geometric_tail(a, 0, c) * pre;
    while tail > tol * scale && n < MAX_PAIRS {
        n += 1;
        let shift = 2.0 * PI * n as f64;
        sum += inv_sinh2(a * (s - shift)) + inv_sinh2(a * (s + shift));
        tail = geometric_tail(a, n, c) * pre;
    }
    Ok(SeriesValue {
        value: -(1.0 / d + head + pre * sum),
        truncation_terms: n,
        tail_bound: tail,
    })
}

pub fn beta(s: f64, d: f64) -> Result<f64> {
    beta_eval(s, d, DEFAULT_TOL).map(|v| v.value)
}

pub fn beta_prime(s: f64, d: f64) -> Result<f64> {
    beta_prime_eval(s, d, DEFAULT_TOL).map(|v| v.value)
}

/// `β(π/2)` at depth `d`.
pub fn beta_half_pi(d: f64) -> Result<f64> {
    beta(0.5 * PI, d)
}

/// One tabulated kernel sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelSample {
    pub s: f64,
    pub beta: f64,
    pub beta_prime: f64,
    pub truncation_terms: usize,
    pub tail_bound: f64,
}

/// Sampled `β` and `β′` at a fixed depth.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelTable {
    pub depth: f64,
    pub samples: Vec<KernelSample>,
}

impl KernelTable {
    /// Tabulate on `n_samples` equispaced points of `[s_min, s_max]`.
    pub fn build(d: f64, s_min: f64, s_max: f64, n_samples: usize, tol: f64) -> Result<Self> {
        check_depth(d)?;
        if !(s_min > 0.0 && s_min < s_max && s_max < 2.0 * PI) {
            return Err(WaveError::Input(format!(
                "sample range must satisfy 0 < s_min < s_max < 2π, got [{s_min}, {s_max}]"
            )));
        }
        if n_samples < 2 {
            return Err(WaveError::Input("need at least two samples".into()));
        }
        let step = (s_max - s_min) / (n_samples - 1) as f64;
        let samples = (0..n_samples)
            .map(|i| {
                let s = s_min + step * i as f64;
                let b = beta_eval(s, d, tol)?;
                let bp = beta_prime_eval(s, d, tol)?;
                Ok(KernelSample {
                    s,
                    beta: b.value,
                    beta_prime: bp.value,
                    truncation_terms: b.truncation_terms.max(bp.truncation_terms),
                    tail_bound: b.tail_bound.max(bp.tail_bound),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { depth: d, samples })
    }

    pub fn max_abs_beta(&self) -> f64 {
        self.samples.iter().fold(0.0, |m, s| m.max(s.beta.abs()))
    }

    pub fn truncation_terms(&self) -> usize {
        self.samples.iter().map(|s| s.truncation_terms).max().unwrap_or(0)
    }

    pub fn tail_bound(&self) -> f64 {
        self.samples.iter().fold(0.0, |m, s| m.max(s.tail_bound))
    }

    /// CSV with header `s,beta,beta_prime,truncation_terms,tail_bound`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "s,beta,beta_prime,truncation_terms,tail_bound")?;
        for s in &self.samples {
            writeln!(
                w,
                "{},{},{},{},{}",
                crate::io::fmt17(s.s),
                crate::io::fmt17(s.beta),
                crate::io::fmt17(s.beta_prime),
                s.truncation_terms,
                crate::io::fmt17(s.tail_bound)
            )?;
        }
        Ok(())
    }

    /// Read a table written by [`KernelTable::write_csv`]. Lines starting
    /// with `#` are metadata and skipped.
    pub fn read_csv<R: BufRead>(r: R, depth: f64) -> Result<Self> {
        let mut samples = Vec::new();
        let mut header_seen = false;
        for line in r.lines() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if !header_seen {
                if line != "s,beta,beta_prime,truncation_terms,tail_bound" {
                    return Err(WaveError::Parse(format!("unexpected kernel header: {line}")));
                }
                header_seen = true;
                continue;
            }
            let cols: Vec<&str> = line.split(',').collect();
            if cols.len() != 5 {
                return Err(WaveError::Parse(format!("bad kernel row: {line}")));
            }
            let num = |i: usize| -> Result<f64> {
                cols[i]
                    .parse::<f64>()
                    .map_err(|e| WaveError::Parse(format!("{e}: {}", cols[i])))
            };
            samples.push(KernelSample {
                s: num(0)?,
                beta: num(1)?,
                beta_prime: num(2)?,
                truncation_terms: cols[3]
                    .parse()
                    .map_err(|e| WaveError::Parse(format!("{e}: {}", cols[3])))?,
                tail_bound: num(4)?,
            });
        }
        Ok(Self { depth, samples })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: `β(s) = cot(s/2) + 2 Σ_k (coth(kd) − 1) sin(ks)`.
    fn beta_fourier(s: f64, d: f64) -> f64 {
        let mut acc = 1.0 / (0.5 * s).tan();
        for k in 1..20_000 {
            let c = 1.0 / (k as f64 * d).tanh() - 1.0;
            if c < 1e-18 {
                break;
            }
            acc += 2.0 * c * (k as f64 * s).sin();
        }
        acc
    }

    #[test]
    fn matches_fourier_sine_series() {
        for &d in &[0.3, 1.0, 4.0] {
            for &s in &[0.05, 0.7, 1.5, 2.9, 3.1] {
                let b = beta(s, d).unwrap();
                let o = beta_fourier(s, d);
                assert!((b - o).abs() < 1e-10 * (1.0 + o.abs()), "d={d} s={s}: {b} vs {o}");
            }
        }
    }

    #[test]
    fn odd_and_periodic() {
        for &s in &[0.1, 1.0, 2.5] {
            let b = beta(s, 0.8).unwrap();
            assert!((beta(-s, 0.8).unwrap() + b).abs() < 1e-13);
            assert!((beta(s + 2.0 * PI, 0.8).unwrap() - b).abs() < 1e-11);
        }
    }

    #[test]
    fn singular_at_multiples_of_two_pi() {
        assert!(matches!(beta_eval(0.0, 1.0, 1e-14), Err(WaveError::Singularity(_))));
        assert!(matches!(
            beta_prime_eval(2.0 * PI, 1.0, 1e-14),
            Err(WaveError::Singularity(_))
        ));
    }

    #[test]
    fn half_pi_floor() {
        for &d in &[0.1, 1.0, 10.0] {
            assert!(beta_half_pi(d).unwrap() > 0.363);
        }
    }

    #[test]
    fn pole_strength_two() {
        for &s in &[1e-3, 1e-4] {
            let v = s * beta(s, 1.0).unwrap();
            assert!((v - 2.0).abs() < 2e-3, "{v}");
        }
    }

    #[test]
    fn derivative_matches_central_difference() {
        let h = 1e-5;
        let fd = (beta(1.0 + h, 1.0).unwrap() - beta(1.0 - h, 1.0).unwrap()) / (2.0 * h);
        assert!((fd - beta_prime(1.0, 1.0).unwrap()).abs() < 1e-6);
    }

    #[test]
    fn derivative_even_and_enveloped() {
        for &d in &[0.05, 1.0, 20.0] {
            for i in 1..=50 {
                let s = PI * i as f64 / 50.0;
                let bp = beta_prime(s, d).unwrap();
                assert!((bp - beta_prime(-s, d).unwrap()).abs() < 1e-12 * (1.0 + bp.abs()));
                assert!(-bp < 1.0 / d + 2.0 / (s * s) + 0.5);
            }
        }
    }

    #[test]
    fn tail_bound_below_tolerance() {
        let v = beta_eval(1.0, 50.0, 1e-14).unwrap();
        assert!(v.tail_bound < 1e-12 * v.value.abs());
        assert!(v.truncation_terms > 10);
    }

    #[test]
    fn table_rejects_bad_range() {
        assert!(KernelTable::build(1.0, 0.0, 1.0, 10, 1e-14).is_err());
        assert!(KernelTable::build(1.0, 2.0, 1.0, 10, 1e-14).is_err());
        assert!(KernelTable::build(1.0, 0.1, 7.0, 10, 1e-14).is_err());
    }

    #[test]
    fn table_csv_round_trip() {
        let t = KernelTable::build(1.0, 0.01, 3.1, 20, 1e-14).unwrap();
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let back = KernelTable::read_csv(&buf[..], 1.0).unwrap();
        assert_eq!(back.samples, t.samples);
    }
}
