use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{self, serde_str};
use crate::seq::StageLedger;

pub const BIG_RANK_ASSUMPTION: &str = "assumed, not verified: a trivial projection e at stage m with \
     ||x e x* - p_m|| < 1/2 for some x has rank(e) >= r(m) + s(m)";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankInequality {
    pub m: usize,
    #[serde(with = "serde_str::bigint")]
    pub r_m: BigInt,
    #[serde(with = "serde_str::bigint")]
    pub s_m: BigInt,
    /// `M · r(m) / r(n)`, the rank of the pushed-forward trivial projection.
    #[serde(with = "serde_str::bigint")]
    pub pushed_rank: BigInt,
    /// `r(m) + s(m)`
    #[serde(with = "serde_str::bigint")]
    pub threshold: BigInt,
    pub divides: bool,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComparisonCertificate {
    pub nu: u64,
    #[serde(with = "serde_str::rational")]
    pub eta: BigRational,
    #[serde(with = "serde_str::rational")]
    pub lambda: BigRational,
    pub n: usize,
    #[serde(with = "serde_str::bigint")]
    pub r_n: BigInt,
    /// Smallest and largest admissible `M`.
    #[serde(with = "serde_str::bigint")]
    pub m_min: BigInt,
    #[serde(with = "serde_str::bigint")]
    pub m_max: BigInt,
    #[serde(rename = "M", with = "serde_str::bigint")]
    pub rank_m: BigInt,
    /// `M / (ν r(n))`, the trace of the trivial projection; exceeds `λ + 1/ν`.
    #[serde(with = "serde_str::rational")]
    pub trace_of_e: BigRational,
    pub checks: Vec<RankInequality>,
    pub all_hold: bool,
    /// Every check reproduced from the raw `d` values alone.
    pub recomputed_agrees: bool,
    pub assumption: &'static str,
}

fn rat_of(n: &BigInt) -> BigRational {
    BigRational::from_integer(n.clone())
}

/// Integers strictly inside `(lo, hi)`.
fn open_interval_integers(lo: &BigRational, hi: &BigRational) -> Option<(BigInt, BigInt)> {
    let first = lo.numer().div_floor(lo.denom()) + BigInt::one();
    let ceil_hi = -((-hi.numer()).div_floor(hi.denom()));
    let last = ceil_hi - BigInt::one();
    (first <= last).then_some((first, last))
}

/// The rank inequalities `M r(m)/r(n) < r(m) + s(m)` for `m ∈ (n, n + horizon]`.
pub fn rank_inequalities(
    r: impl Fn(usize) -> BigInt,
    s: impl Fn(usize) -> BigInt,
    n: usize,
    rank_m: &BigInt,
    horizon: usize,
) -> Vec<RankInequality> {
    let r_n = r(n);
    (n + 1..=n + horizon)
        .map(|m| {
            let (r_m, s_m) = (r(m), s(m));
            let (q, rem) = (rank_m * &r_m).div_rem(&r_n);
            let threshold = &r_m + &s_m;
            RankInequality {
                m,
                holds: rem.is_zero() && q < threshold,
                divides: rem.is_zero(),
                pushed_rank: q,
                threshold,
                r_m,
                s_m,
            }
        })
        .collect()
}

/// `(r(0..=len), s(0..=len))` rebuilt from `d` alone.
fn raw_products(m: u64, d: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
    let mut r = vec![BigInt::one()];
    let mut s = vec![BigInt::one()];
    for dn in d {
        r.push(r.last().unwrap() * (dn + BigInt::from(m)));
        s.push(s.last().unwrap() * dn);
    }
    (r, s)
}

/// Smallest stage `n` with `1/r(n) < η − λ` whose interval
/// `(νr(n)(λ + 1/ν), νr(n)(η + 1/ν))` contains an integer; `M` is the
/// smallest such integer.
pub fn find_certificate(
    ledger: &StageLedger,
    eta: &BigRational,
    lambda: &BigRational,
    horizon: usize,
) -> Result<ComparisonCertificate> {
    let nu = BigInt::from(ledger.m);
    if ledger.target != eta * rat_of(&nu) {
        return Err(Error::Inconsistent(format!(
            "ledger target {} is not nu * eta",
            scalar::fmt_rational(&ledger.target)
        )));
    }
    if lambda.is_negative() || lambda >= eta {
        return Err(Error::OutOfRange(format!(
            "lambda = {} must satisfy 0 <= lambda < eta = {}",
            scalar::fmt_rational(lambda),
            scalar::fmt_rational(eta)
        )));
    }
    let inv_nu = BigRational::new(BigInt::one(), nu.clone());
    let slack = eta - lambda;
    let found = (1..=ledger.len()).find_map(|n| {
        let r_n = ledger.r(n);
        if BigRational::new(BigInt::one(), r_n.clone()) >= slack {
            return None;
        }
        let scale = rat_of(&(&nu * &r_n));
        open_interval_integers(&(&scale * (lambda + &inv_nu)), &(&scale * (eta + &inv_nu))).map(|range| (n, range))
    });
    let Some((n, (m_min, m_max))) = found else {
        return Err(Error::LedgerTooShort(format!(
            "no admissible stage within {} stages; extend the ledger",
            ledger.len()
        )));
    };
    if n + horizon > ledger.len() {
        return Err(Error::LedgerTooShort(format!(
            "certificate at stage {n} with horizon {horizon} needs {} more stages",
            n + horizon - ledger.len()
        )));
    }
    let rank_m = m_min.clone();
    let checks = rank_inequalities(|k| ledger.r(k), |k| ledger.s(k), n, &rank_m, horizon);
    let (raw_r, raw_s) = raw_products(ledger.m, &ledger.d_values());
    let recomputed = rank_inequalities(|k| raw_r[k].clone(), |k| raw_s[k].clone(), n, &rank_m, horizon);
    Ok(ComparisonCertificate {
        nu: ledger.m,
        eta: eta.clone(),
        lambda: lambda.clone(),
        trace_of_e: BigRational::new(rank_m.clone(), &nu * ledger.r(n)),
        r_n: ledger.r(n),
        n,
        m_min,
        m_max,
        rank_m,
        all_hold: checks.iter().all(|c| c.holds),
        recomputed_agrees: recomputed == checks,
        checks,
        assumption: BIG_RANK_ASSUMPTION,
    })
}

/// Grows the ledger one stage at a time until a certificate exists, never
/// beyond `max_stages`.
pub fn search_certificate(
    m: u64,
    eta: &BigRational,
    lambda: &BigRational,
    horizon: usize,
    max_stages: usize,
) -> Result<(StageLedger, ComparisonCertificate)> {
    let target = eta * BigRational::from_integer(BigInt::from(m));
    for n in 1..=max_stages.saturating_sub(horizon) {
        let ledger = StageLedger::generate(m, &target, n + horizon)?;
        match find_certificate(&ledger, eta, lambda, horizon) {
            Ok(c) => return Ok((ledger, c)),
            Err(Error::LedgerTooShort(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::LedgerTooShort(format!(
        "no certificate with horizon {horizon} within {max_stages} stages"
    )))
}
