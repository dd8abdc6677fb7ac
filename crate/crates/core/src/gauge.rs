//! Sublinear gauges `κ: N -> [1, ∞)`, monotone and concave.
//!
//! Values are exact rationals. Irrational families are evaluated in `f64`
//! and converted without further rounding, so comparisons between gauge
//! values and integer quantities are exact given the evaluated value.
//! `κ(0)` is defined as `κ(1)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum GaugeFamily {
    /// `κ ≡ c` with `c >= 1`: the Morse case.
    Constant(BigRational),
    /// `κ(t) = t^p`, `0 < p < 1`.
    Power(f64),
    /// `κ(t) = 1 + ln t`.
    Log,
    /// `κ(t) = t^p (1 + ln t)^q` with `p, q >= 0`, `p < 1` and `p + q <= 1`.
    LogPower { p: f64, q: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct SublinearGauge {
    family: GaugeFamily,
}

impl SublinearGauge {
    pub fn new(family: GaugeFamily) -> Result<Self> {
        let bad = |msg: String| Err(Error::Input(msg));
        match &family {
            GaugeFamily::Constant(c) if *c < BigRational::one() => {
                return bad(format!("constant gauge must be at least 1, got {c}"))
            }
            GaugeFamily::Power(p) if !(*p > 0.0 && *p < 1.0) => {
                return bad(format!("power exponent must lie in (0, 1), got {p}"))
            }
            GaugeFamily::LogPower { p, q }
                if !(p.is_finite() && q.is_finite() && *p >= 0.0 && *q >= 0.0 && *p < 1.0 && p + q <= 1.0) =>
            {
                return bad(format!(
                    "log-power needs p, q >= 0, p < 1 and p + q <= 1, got p={p} q={q}"
                ))
            }
            _ => {}
        }
        Ok(SublinearGauge { family })
    }

    /// `κ ≡ 1`.
    pub fn unit() -> Self {
        SublinearGauge {
            family: GaugeFamily::Constant(BigRational::one()),
        }
    }

    pub fn sqrt() -> Self {
        SublinearGauge {
            family: GaugeFamily::Power(0.5),
        }
    }

    pub fn family(&self) -> &GaugeFamily {
        &self.family
    }

    pub fn eval_f64(&self, t: u64) -> f64 {
        let t = t.max(1) as f64;
        match &self.family {
            GaugeFamily::Constant(c) => c.to_f64().unwrap_or(f64::INFINITY),
            GaugeFamily::Power(p) => t.powf(*p),
            GaugeFamily::Log => 1.0 + t.ln(),
            GaugeFamily::LogPower { p, q } => t.powf(*p) * (1.0 + t.ln()).powf(*q),
        }
    }

    pub fn eval(&self, t: u64) -> BigRational {
        match &self.family {
            GaugeFamily::Constant(c) => c.clone(),
            GaugeFamily::Power(p) if *p == 0.5 => exact_f64((t.max(1) as f64).sqrt()),
            _ => exact_f64(self.eval_f64(t)),
        }
    }

    /// Exponent `e < 1` of the declared envelope `κ(t) <= κ(1) (1 + ln t) t^e`.
    pub fn envelope_exponent(&self) -> f64 {
        match &self.family {
            GaugeFamily::Constant(_) | GaugeFamily::Log => 0.0,
            GaugeFamily::Power(p) => *p,
            GaugeFamily::LogPower { p, .. } => *p,
        }
    }

    /// Checks the gauge axioms on `0..=max_t`.
    pub fn check_invariants(&self, max_t: u64) -> std::result::Result<(), GaugeViolation> {
        let values: Vec<BigRational> = (0..=max_t).map(|t| self.eval(t)).collect();
        check_table(&values, |t| {
            let t = t.max(1) as f64;
            self.eval_f64(1) * (1.0 + t.ln()) * t.powf(self.envelope_exponent())
        })
    }
}

fn exact_f64(x: f64) -> BigRational {
    BigRational::from_float(x).expect("gauge values are finite")
}

/// A gauge axiom failing at a grid point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GaugeViolation {
    BelowOne {
        t: u64,
    },
    Decreasing {
        t: u64,
    },
    NotConcave {
        t: u64,
    },
    /// `κ(a t) > a κ(t)`.
    Superlinear {
        a: u64,
        t: u64,
    },
    AboveEnvelope {
        t: u64,
    },
}

impl fmt::Display for GaugeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GaugeViolation::BelowOne { t } => write!(f, "value below 1 at t={t}"),
            GaugeViolation::Decreasing { t } => write!(f, "decreasing from t={t}"),
            GaugeViolation::NotConcave { t } => write!(f, "positive second difference at t={t}"),
            GaugeViolation::Superlinear { a, t } => {
                write!(f, "value at {a}*{t} exceeds {a} times value at {t}")
            }
            GaugeViolation::AboveEnvelope { t } => {
                write!(f, "above the sublinear envelope at t={t}")
            }
        }
    }
}

const SCALE_FACTORS: [u64; 3] = [2, 3, 5];

/// Axioms on a table `values[t] = κ(t)`. Concavity is tested from `t = 2`,
/// since the flat extension below 1 is not concave at 1. The envelope is
/// tested on the top quarter of the grid.
pub fn check_table(values: &[BigRational], envelope: impl Fn(u64) -> f64) -> std::result::Result<(), GaugeViolation> {
    let one = BigRational::one();
    for (t, v) in values.iter().enumerate() {
        let t = t as u64;
        if *v < one {
            return Err(GaugeViolation::BelowOne { t });
        }
    }
    for t in 1..values.len() {
        if values[t] < values[t - 1] {
            return Err(GaugeViolation::Decreasing { t: t as u64 - 1 });
        }
    }
    for t in 2..values.len().saturating_sub(1) {
        let second = &values[t + 1] - &values[t] * BigRational::from_integer(BigInt::from(2)) + &values[t - 1];
        if second > BigRational::zero() {
            return Err(GaugeViolation::NotConcave { t: t as u64 });
        }
    }
    for a in SCALE_FACTORS {
        for t in 0..values.len() {
            let at = t * a as usize;
            if at >= values.len() {
                break;
            }
            if values[at] > &values[t] * BigRational::from_integer(BigInt::from(a)) {
                return Err(GaugeViolation::Superlinear { a, t: t as u64 });
            }
        }
    }
    let top = values.len().saturating_sub(1);
    for t in (top - top / 4).max(1)..values.len() {
        let bound = envelope(t as u64) * (1.0 + 1e-12);
        if values[t].to_f64().unwrap_or(f64::INFINITY) > bound {
            return Err(GaugeViolation::AboveEnvelope { t: t as u64 });
        }
    }
    Ok(())
}

impl fmt::Display for SublinearGauge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.family {
            GaugeFamily::Constant(c) if c.is_one() => write!(f, "const"),
            GaugeFamily::Constant(c) => write!(f, "const:{c}"),
            GaugeFamily::Power(p) if *p == 0.5 => write!(f, "sqrt"),
            GaugeFamily::Power(p) => write!(f, "pow:{p}"),
            GaugeFamily::Log => write!(f, "log"),
            GaugeFamily::LogPower { p, q } => write!(f, "logpow:{p}:{q}"),
        }
    }
}

/// Accepts `const`, `const:C`, `sqrt`, `log`, `pow:P` and `logpow:P:Q`.
impl FromStr for SublinearGauge {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let float = |x: &str| {
            x.parse::<f64>()
                .map_err(|_| Error::Input(format!("bad gauge parameter {x:?}")))
        };
        let family = match parts.as_slice() {
            ["const"] => GaugeFamily::Constant(BigRational::one()),
            ["const", c] => GaugeFamily::Constant(
                c.parse::<BigRational>()
                    .map_err(|_| Error::Input(format!("bad gauge constant {c:?}")))?,
            ),
            ["sqrt"] => GaugeFamily::Power(0.5),
            ["log"] => GaugeFamily::Log,
            ["pow", p] => GaugeFamily::Power(float(p)?),
            ["logpow", p, q] => GaugeFamily::LogPower {
                p: float(p)?,
                q: float(q)?,
            },
            _ => return Err(Error::Input(format!("unknown gauge {s:?}"))),
        };
        SublinearGauge::new(family)
    }
}
