//! Continued fractions, denominator-growth proxies, and Diophantine
//! certification for frequencies.
//!
//! Convergents are kept in exact big-integer arithmetic; the recurrence
//! `q_{k+1} = a_{k+1} q_k + q_{k-1}` holds exactly, never modulo overflow.
//! The growth exponent `limsup ln(q_{k+1}) / q_k` is not finitely
//! computable, so [`beta_estimate`] reports an honest finite-depth proxy
//! sequence instead.

use num_bigint::{BigInt, BigUint};

use crate::error::{Error, Result};
use crate::lattice::FrequencyVector;
use crate::numerics::dist_to_integers;

/// A simple continued fraction `[0; a_1, a_2, ...]` of a number in `(0, 1)`,
/// with its convergents `p_k / q_k`.
#[derive(Debug, Clone)]
pub struct ContinuedFraction {
    quotients: Vec<BigUint>,
    /// Convergents `(p_k, q_k)`, `k = 1..=depth`; coprime, `q_k` strictly
    /// increasing from `k = 2` on.
    convergents: Vec<(BigUint, BigUint)>,
}

impl ContinuedFraction {
    /// Expand `alpha` to the requested depth by exact Euclidean division of
    /// the rational number the float represents.
    ///
    /// Fails with [`Error::PrecisionExhausted`] once the convergent
    /// denominators are large enough that the expansion reflects the
    /// floating-point rounding of `alpha` rather than any nearby irrational:
    /// the cutoff is `2 q_k q_{k+1} * ulp(alpha) >= 1`.
    pub fn expand(alpha: f64, depth: usize) -> Result<Self> {
        if !(0.0..1.0).contains(&alpha) || alpha == 0.0 {
            return Err(Error::InvalidFrequency(format!(
                "alpha = {alpha} not in (0, 1)"
            )));
        }
        if depth == 0 {
            return Err(Error::InvalidArgument("depth must be positive".into()));
        }
        // alpha = mantissa * 2^exp exactly
        let (mantissa, exp, _sign) = integer_decode(alpha);
        let num = BigUint::from(mantissa);
        let den = BigUint::from(1u8) << (-exp) as usize;
        let ulp = (2.0f64).powi(exp as i32);
        Self::expand_rational(num, den, depth, ulp)
    }

    fn expand_rational(num: BigUint, den: BigUint, depth: usize, ulp: f64) -> Result<Self> {
        let mut quotients = Vec::with_capacity(depth);
        let mut convergents = Vec::with_capacity(depth);
        // p_{-1} = 1, p_0 = 0; q_{-1} = 0, q_0 = 1
        let (mut p_prev, mut p_cur) = (BigUint::from(1u8), BigUint::from(0u8));
        let (mut q_prev, mut q_cur) = (BigUint::from(0u8), BigUint::from(1u8));
        // Euclid on 1/alpha: a_{k+1} = floor(den / num) at each stage
        let (mut r_num, mut r_den) = (den, num);
        for _ in 0..depth {
            if r_den == BigUint::from(0u8) {
                // the float is exactly rational and fully expanded
                return Err(Error::PrecisionExhausted {
                    requested: depth,
                    reached: quotients.len(),
                    detail: "expansion terminated: input is rational at this precision".into(),
                });
            }
            let a = &r_num / &r_den;
            let rem = &r_num % &r_den;
            let p_next = &a * &p_cur + &p_prev;
            let q_next = &a * &q_cur + &q_prev;
            // precision guard: once 2 q_k q_{k+1} ulp >= 1 the quotients are
            // artifacts of rounding
            let growth = big_to_f64(&q_cur) * big_to_f64(&q_next);
            if 2.0 * growth * ulp >= 1.0 {
                return Err(Error::PrecisionExhausted {
                    requested: depth,
                    reached: quotients.len(),
                    detail: format!(
                        "q_k q_{{k+1}} ~ {growth:.3e} exceeds precision budget; \
                         supply a higher-precision input"
                    ),
                });
            }
            quotients.push(a.clone());
            convergents.push((p_next.clone(), q_next.clone()));
            p_prev = p_cur;
            p_cur = p_next;
            q_prev = q_cur;
            q_cur = q_next;
            r_num = r_den;
            r_den = rem;
        }
        Ok(Self {
            quotients,
            convergents,
        })
    }

    /// Build directly from partial quotients (all must be positive).
    pub fn from_quotients<I>(quotients: I) -> Result<Self>
    where
        I: IntoIterator<Item = BigUint>,
    {
        let quotients: Vec<BigUint> = quotients.into_iter().collect();
        if quotients.is_empty() {
            return Err(Error::InvalidArgument("no quotients".into()));
        }
        let mut convergents = Vec::with_capacity(quotients.len());
        let (mut p_prev, mut p_cur) = (BigUint::from(1u8), BigUint::from(0u8));
        let (mut q_prev, mut q_cur) = (BigUint::from(0u8), BigUint::from(1u8));
        for a in &quotients {
            if *a == BigUint::from(0u8) {
                return Err(Error::InvalidArgument("zero partial quotient".into()));
            }
            let p_next = a * &p_cur + &p_prev;
            let q_next = a * &q_cur + &q_prev;
            convergents.push((p_next.clone(), q_next.clone()));
            p_prev = p_cur;
            p_cur = p_next;
            q_prev = q_cur;
            q_cur = q_next;
        }
        Ok(Self {
            quotients,
            convergents,
        })
    }

    pub fn depth(&self) -> usize {
        self.quotients.len()
    }

    pub fn quotients(&self) -> &[BigUint] {
        &self.quotients
    }

    pub fn convergents(&self) -> &[(BigUint, BigUint)] {
        &self.convergents
    }

    /// The value `p_K / q_K` of the deepest convergent, as `f64`.
    pub fn value(&self) -> f64 {
        let (p, q) = self.convergents.last().expect("at least one convergent");
        big_ratio_to_f64(p, q)
    }
}

/// Finite-depth proxies for the denominator growth exponent
/// `limsup_k ln(q_{k+1}) / q_k`.
#[derive(Debug, Clone)]
pub struct BetaEstimate {
    /// `ln(q_{k+1}) / q_k` for `k = 1 .. depth-1`.
    pub proxies: Vec<f64>,
    /// Maximum over all available `k` (biased upward by early transients).
    pub max: f64,
    /// Maximum over the second half of the available `k` — the finite-depth
    /// stand-in for the limsup.
    pub tail_max: f64,
    pub depth: usize,
}

/// Growth-exponent proxy sequence of a continued fraction. Needs at least
/// three convergents.
pub fn beta_estimate(cf: &ContinuedFraction) -> Result<BetaEstimate> {
    let conv = cf.convergents();
    if conv.len() < 3 {
        return Err(Error::InvalidArgument(
            "beta estimate needs at least 3 convergents".into(),
        ));
    }
    let mut proxies = Vec::with_capacity(conv.len() - 1);
    for k in 0..conv.len() - 1 {
        let q_k = &conv[k].1;
        let q_next = &conv[k + 1].1;
        proxies.push(big_ln(q_next) / big_to_f64(q_k));
    }
    let max = proxies.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let tail = &proxies[proxies.len() / 2..];
    let tail_max = tail.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    Ok(BetaEstimate {
        max,
        tail_max,
        depth: cf.depth(),
        proxies,
    })
}

/// Partial quotients `a_{k+1} = ceil(exp(beta q_k) / q_k)` whose expansion
/// has growth exponent `beta`.
///
/// The denominators grow as a double exponential, so only the first few
/// levels are representable in any finite arithmetic; construction stops
/// with [`Error::PrecisionExhausted`] once the next quotient would exceed
/// `max_bits` binary digits. With the default budget the feasible depth for
/// `beta = 0.5` is 5.
pub fn liouville_like_quotients(beta: f64, depth: usize, max_bits: u64) -> Result<Vec<BigUint>> {
    if beta <= 0.0 {
        return Err(Error::InvalidArgument("beta must be positive".into()));
    }
    let mut quotients = Vec::new();
    let (mut q_prev, mut q_cur) = (BigUint::from(0u8), BigUint::from(1u8));
    for k in 0..depth {
        // bit length of a ~ (beta q_k - ln q_k) / ln 2
        let qk = big_to_f64(&q_cur);
        let ln_a = beta * qk - big_ln(&q_cur);
        if !ln_a.is_finite() || ln_a / std::f64::consts::LN_2 > max_bits as f64 {
            return Err(Error::PrecisionExhausted {
                requested: depth,
                reached: k,
                detail: format!(
                    "next quotient needs about {:.3e} bits, budget is {max_bits}",
                    ln_a / std::f64::consts::LN_2
                ),
            });
        }
        let a = ceil_exp_ratio(beta, &q_cur);
        let q_next = &a * &q_cur + &q_prev;
        quotients.push(a);
        q_prev = q_cur;
        q_cur = q_next;
    }
    Ok(quotients)
}

/// `ceil(exp(beta * q) / q)` as a big integer, via the float logarithm when
/// the value is large.
fn ceil_exp_ratio(beta: f64, q: &BigUint) -> BigUint {
    let qf = big_to_f64(q);
    let ln_val = beta * qf - qf.ln();
    if ln_val < 500.0 {
        BigUint::from(ln_val.exp().ceil().max(1.0) as u128)
    } else {
        // value = 2^(ln_val / ln 2); split into mantissa and shift
        let bits = ln_val / std::f64::consts::LN_2;
        let shift = (bits - 52.0).floor();
        let mantissa = (bits - shift).exp2().ceil() as u128;
        BigUint::from(mantissa) << shift as usize
    }
}

/// Exhaustive finite certification of the Diophantine condition
/// `dist(k . alpha, Z) >= c |k|^{-tau}` over `0 < |k|_inf <= K_max`.
#[derive(Debug, Clone)]
pub struct DiophantineCertificate {
    pub c: f64,
    pub tau: f64,
    pub k_max: i64,
    /// Whether the bound holds for every scanned `k`.
    pub verified: bool,
    /// The `k` minimizing `dist(k . alpha, Z) * |k|^tau`.
    pub worst_k: Vec<i64>,
    /// The minimum of `dist(k . alpha, Z) * |k|^tau` over the scan — the
    /// largest `c` that the scan can certify.
    pub max_feasible_c: f64,
}

/// Scan `0 < |k|_inf <= K_max`. By the symmetry `dist(-k.alpha) =
/// dist(k.alpha)` only half of each shell is visited.
pub fn diophantine_check(
    alpha: &FrequencyVector,
    c: f64,
    tau: f64,
    k_max: i64,
) -> Result<DiophantineCertificate> {
    if c <= 0.0 || tau <= 0.0 {
        return Err(Error::InvalidArgument("c and tau must be positive".into()));
    }
    if k_max < 1 {
        return Err(Error::InvalidArgument("K_max must be >= 1".into()));
    }
    let d = alpha.dim();
    // exact numerators when the frequency is a declared rational p/q, so
    // that k.alpha hitting an integer is detected exactly
    let exact: Option<(Vec<i128>, i128)> = alpha.rational_denominator().map(|q| {
        let ps = alpha
            .alpha()
            .iter()
            .map(|a| (a * q as f64).round() as i128)
            .collect();
        (ps, q as i128)
    });
    let mut worst_k = vec![0i64; d];
    let mut max_feasible_c = f64::INFINITY;
    let mut k = vec![-k_max; d];
    loop {
        if !k.iter().all(|ki| *ki == 0) && is_canonical_half(&k) {
            let norm = k.iter().map(|ki| ki.abs()).max().unwrap() as f64;
            let dist = match &exact {
                Some((ps, q)) => {
                    let s: i128 = k.iter().zip(ps).map(|(ki, p)| *ki as i128 * p).sum();
                    let r = s.rem_euclid(*q);
                    r.min(*q - r) as f64 / *q as f64
                }
                None => {
                    let phase: f64 = k
                        .iter()
                        .zip(alpha.alpha())
                        .map(|(ki, ai)| *ki as f64 * ai)
                        .sum();
                    dist_to_integers(phase)
                }
            };
            let margin = dist * norm.powf(tau);
            if margin < max_feasible_c {
                max_feasible_c = margin;
                worst_k.copy_from_slice(&k);
            }
        }
        // odometer over the box
        let mut carry = true;
        for slot in k.iter_mut().rev() {
            if *slot < k_max {
                *slot += 1;
                carry = false;
                break;
            }
            *slot = -k_max;
        }
        if carry {
            break;
        }
    }
    Ok(DiophantineCertificate {
        c,
        tau,
        k_max,
        verified: max_feasible_c >= c,
        worst_k,
        max_feasible_c,
    })
}

/// First nonzero coordinate positive: picks one of `{k, -k}`.
fn is_canonical_half(k: &[i64]) -> bool {
    for ki in k {
        if *ki > 0 {
            return true;
        }
        if *ki < 0 {
            return false;
        }
    }
    false
}

/// `(mantissa, exponent, sign)` with `value = sign * mantissa * 2^exponent`.
fn integer_decode(value: f64) -> (u64, i16, i8) {
    let bits = value.to_bits();
    let sign: i8 = if bits >> 63 == 0 { 1 } else { -1 };
    let mut exponent = ((bits >> 52) & 0x7ff) as i16;
    let mantissa = if exponent == 0 {
        (bits & 0xf_ffff_ffff_ffff) << 1
    } else {
        (bits & 0xf_ffff_ffff_ffff) | 0x10_0000_0000_0000
    };
    exponent -= 1075;
    (mantissa, exponent, sign)
}

/// `ln` of a big integer through its top bits; accurate to ~1e-15 relative
/// for any representable size.
pub(crate) fn big_ln(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 53 {
        return big_to_f64(x).ln();
    }
    let shift = bits - 53;
    let top: BigUint = x >> shift;
    let top_f = big_to_f64(&top);
    top_f.ln() + shift as f64 * std::f64::consts::LN_2
}

pub(crate) fn big_to_f64(x: &BigUint) -> f64 {
    let s = x.to_string();
    s.parse::<f64>().unwrap_or(f64::INFINITY)
}

fn big_ratio_to_f64(p: &BigUint, q: &BigUint) -> f64 {
    // scale both into f64 range through their bit lengths
    let bits = p.bits().max(q.bits());
    if bits <= 900 {
        big_to_f64(p) / big_to_f64(q)
    } else {
        let shift = bits - 512;
        big_to_f64(&(p >> shift)) / big_to_f64(&(q >> shift))
    }
}

/// Signed view of a convergent numerator (for display).
pub fn to_bigint(x: &BigUint) -> BigInt {
    BigInt::from(x.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn golden() -> f64 {
        (5.0f64.sqrt() - 1.0) / 2.0
    }

    #[test]
    fn golden_mean_gives_fibonacci() {
        let cf = ContinuedFraction::expand(golden(), 20).unwrap();
        let mut fib = (1u64, 1u64);
        for (k, (_, q)) in cf.convergents().iter().enumerate() {
            assert_eq!(cf.quotients()[k], BigUint::from(1u8));
            assert_eq!(*q, BigUint::from(fib.0));
            fib = (fib.1, fib.0 + fib.1);
        }
    }

    #[test]
    fn near_half_starts_with_two() {
        let cf = ContinuedFraction::expand(0.5 + 1e-9, 1).unwrap();
        assert_eq!(cf.quotients()[0], BigUint::from(1u8));
        // 1/(0.5 + tiny) is just under 2, so the first quotient is 1; the
        // classical statement is about 0.5 - tiny:
        let cf = ContinuedFraction::expand(0.5 - 1e-9, 1).unwrap();
        assert_eq!(cf.quotients()[0], BigUint::from(2u8));
    }

    #[test]
    fn convergents_approximate_to_inverse_square() {
        let alpha = golden();
        let cf = ContinuedFraction::expand(alpha, 15).unwrap();
        let (p, q) = cf.convergents().last().unwrap();
        let qf = big_to_f64(q);
        assert!((alpha - big_to_f64(p) / qf).abs() < 1.0 / (qf * qf));
    }

    #[test]
    fn precision_exhaustion_is_signalled() {
        let r = ContinuedFraction::expand(golden(), 60);
        match r {
            Err(Error::PrecisionExhausted { reached, .. }) => assert!(reached >= 30),
            other => panic!("expected precision exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn beta_proxy_golden_decreases_to_zero() {
        let cf = ContinuedFraction::expand(golden(), 20).unwrap();
        let est = beta_estimate(&cf).unwrap();
        assert!(est.proxies.last().unwrap() < &0.1);
        assert!(est.proxies.last().unwrap() < est.proxies.first().unwrap());
        assert!(est.tail_max < 0.1);
    }

    #[test]
    fn constructed_expansion_recovers_beta() {
        let beta = 0.5;
        // depth 10 is unreachable in any finite arithmetic (the denominators
        // are a double exponential); the generator stops at its bit budget
        let err = liouville_like_quotients(beta, 10, 1 << 14).unwrap_err();
        let reached = match err {
            Error::PrecisionExhausted { reached, .. } => reached,
            other => panic!("expected precision exhaustion, got {other:?}"),
        };
        assert!(reached >= 4, "reached only {reached} levels");
        let quotients = liouville_like_quotients(beta, reached, 1 << 14).unwrap();
        let cf = ContinuedFraction::from_quotients(quotients).unwrap();
        let est = beta_estimate(&cf).unwrap();
        assert!(
            (est.tail_max - beta).abs() < 0.15 * beta,
            "tail_max = {} vs beta = {beta}",
            est.tail_max
        );
    }

    #[test]
    fn diophantine_golden_certifies() {
        let alpha = FrequencyVector::golden();
        let cert = diophantine_check(&alpha, 0.27, 1.0, 1000).unwrap();
        assert!(cert.verified, "max feasible c = {}", cert.max_feasible_c);
        assert!(cert.max_feasible_c >= 0.27);
        // the asymptotic value of liminf k ||k alpha|| is 1/sqrt(5)
        assert!(cert.max_feasible_c < 1.0 / 5.0f64.sqrt() + 0.01);
    }

    #[test]
    fn diophantine_rational_fails_at_denominator() {
        let alpha = FrequencyVector::rational(&[1], 3).unwrap();
        let cert = diophantine_check(&alpha, 1e-9, 1.0, 10).unwrap();
        assert!(!cert.verified);
        assert_eq!(cert.worst_k, vec![3]);
        assert_eq!(cert.max_feasible_c, 0.0);
    }

    #[test]
    fn diophantine_monotone_in_c() {
        let alpha = FrequencyVector::golden();
        let strong = diophantine_check(&alpha, 0.27, 1.0, 1000).unwrap();
        let weak = diophantine_check(&alpha, 0.135, 1.0, 1000).unwrap();
        assert!(strong.verified && weak.verified);
        assert_eq!(strong.max_feasible_c, weak.max_feasible_c);
    }

    #[test]
    fn multifrequency_scan_runs() {
        let alpha = FrequencyVector::new(vec![golden(), 2.0f64.sqrt() - 1.0]).unwrap();
        let cert = diophantine_check(&alpha, 1e-4, 2.0, 30).unwrap();
        assert!(cert.max_feasible_c > 0.0);
        assert_eq!(cert.worst_k.len(), 2);
    }

    proptest! {
        #[test]
        fn recurrence_and_approximation_hold(seed in 1u64..2000) {
            let alpha = (seed as f64 * 0.618).fract().max(0.01).min(0.99);
            if let Ok(cf) = ContinuedFraction::expand(alpha, 8) {
                let conv = cf.convergents();
                // recurrence in exact arithmetic
                for k in 2..conv.len() {
                    let a = &cf.quotients()[k];
                    prop_assert_eq!(
                        conv[k].1.clone(),
                        a * &conv[k - 1].1 + &conv[k - 2].1
                    );
                    prop_assert_eq!(
                        conv[k].0.clone(),
                        a * &conv[k - 1].0 + &conv[k - 2].0
                    );
                }
                // |alpha - p_k / q_k| < 1 / (q_k q_{k+1})
                for k in 0..conv.len() - 1 {
                    let (p, q) = (&conv[k].0, &conv[k].1);
                    let err = (alpha - big_to_f64(p) / big_to_f64(q)).abs();
                    prop_assert!(err < 1.0 / (big_to_f64(q) * big_to_f64(&conv[k + 1].1)) + 1e-15);
                }
            }
        }
    }
}
