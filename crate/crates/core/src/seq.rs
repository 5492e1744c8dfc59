//! The greedy dimension sequence `d(n)` and its exact stage ledger.
//!
//! For a multiplicity `m` and a target `r ∈ (0, 1)`, each `d(n)` is the least
//! positive integer keeping the running product
//! `u(n) = ∏ (1 − m/(d(k) + m))` strictly above the target.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{self, serde_str};


/// Least positive integer `k` with `1 − m/(k + m) > q`.
///
/// `k/(k+m) > q` rearranges to `k > mq/(1−q)`, so `k = ⌊mq/(1−q)⌋ + 1`.
pub fn next_d(m: u64, q: &BigRational) -> Result<BigInt> {
    if m == 0 {
        return Err(Error::OutOfRange("multiplicity m must be positive".into()));
    }
    if !q.is_positive() || *q >= BigRational::one() {
        return Err(Error::OutOfRange(format!(
            "remainder q = {} must lie in (0, 1)",
            scalar::fmt_rational(q)
        )));
    }
    let bound = BigRational::from_integer(BigInt::from(m)) * q / (BigRational::one() - q);
    Ok(bound.numer().div_floor(bound.denom()) + BigInt::one())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StageRecord {
    pub n: usize,
    #[serde(with = "serde_str::bigint")]
    pub d: BigInt,
    #[serde(with = "serde_str::bigint")]
    pub l: BigInt,
    #[serde(with = "serde_str::bigint")]
    pub s: BigInt,
    #[serde(with = "serde_str::bigint")]
    pub r: BigInt,
    #[serde(with = "serde_str::rational")]
    pub u: BigRational,
    /// `target / u(n)`, the remainder the next stage must beat.
    #[serde(with = "serde_str::rational")]
    pub q: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StageLedger {
    pub m: u64,
    #[serde(with = "serde_str::rational")]
    pub target: BigRational,
    pub stages: Vec<StageRecord>,
}

impl StageLedger {
    pub fn generate(m: u64, target: &BigRational, count: usize) -> Result<Self> {
        generate_stages(m, target, count)
    }

    pub fn len(&self) -> usize {
        self.stages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stages.is_empty()
    }

    /// `d(n)` for `n ≥ 1`.
    pub fn d(&self, n: usize) -> &BigInt {
        &self.stages[n - 1].d
    }

    /// `s(n)`, with `s(0) = 1`.
    pub fn s(&self, n: usize) -> BigInt {
        if n == 0 {
            BigInt::one()
        } else {
            self.stages[n - 1].s.clone()
        }
    }

    /// `r(n)`, with `r(0) = 1`.
    pub fn r(&self, n: usize) -> BigInt {
        if n == 0 {
            BigInt::one()
        } else {
            self.stages[n - 1].r.clone()
        }
    }

    /// `u(n)`, with `u(0) = 1`.
    pub fn u(&self, n: usize) -> BigRational {
        if n == 0 {
            BigRational::one()
        } else {
            self.stages[n - 1].u.clone()
        }
    }

    pub fn d_values(&self) -> Vec<BigInt> {
        self.stages.iter().map(|s| s.d.clone()).collect()
    }

    /// Recomputes `l, s, r, u` from the raw `d` values and compares.
    pub fn is_self_consistent(&self) -> bool {
        let m = BigInt::from(self.m);
        let (mut s, mut r) = (BigInt::one(), BigInt::one());
        let mut u = BigRational::one();
        for (i, rec) in self.stages.iter().enumerate() {
            let l = &rec.d + &m;
            s *= &rec.d;
            r *= &l;
            u *= BigRational::one() - BigRational::new(m.clone(), l.clone());
            let ok = rec.n == i + 1
                && rec.l == l
                && rec.s == s
                && rec.r == r
                && rec.u == u
                && rec.u == BigRational::new(s.clone(), r.clone())
                && rec.q == &self.target / &u;
            if !ok {
                return false;
            }
        }
        true
    }
}

pub fn generate_stages(m: u64, target: &BigRational, count: usize) -> Result<StageLedger> {
    if !target.is_positive() || *target >= BigRational::one() {
        return Err(Error::OutOfRange(format!(
            "target {} must lie in (0, 1)",
            scalar::fmt_rational(target)
        )));
    }
    if count == 0 {
        return Err(Error::OutOfRange("stage count must be at least 1".into()));
    }
    let mb = BigInt::from(m);
    let mut stages: Vec<StageRecord> = Vec::with_capacity(count);
    let (mut s, mut r) = (BigInt::one(), BigInt::one());
    let mut q = target.clone();
    for n in 1..=count {
        let d = next_d(m, &q)?;
        let l = &d + &mb;
        s *= &d;
        r *= &l;
        let u = BigRational::new(s.clone(), r.clone());
        q = target / &u;
        stages.push(StageRecord {
            n,
            d,
            l,
            s: s.clone(),
            r: r.clone(),
            u,
            q: q.clone(),
        });
    }
    Ok(StageLedger {
        m,
        target: target.clone(),
        stages,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceReport {
    #[serde(with = "serde_str::rational")]
    pub target: BigRational,
    /// `u(n) − target` per stage.
    #[serde(with = "serde_str::rational_vec")]
    pub gaps: Vec<BigRational>,
    pub gaps_decimal: Vec<f64>,
    /// Partial sums of `m/(d(k) + m)`.
    #[serde(with = "serde_str::rational_vec")]
    pub partial_sums: Vec<BigRational>,
    /// `1 − ln(target)`; informational only.
    pub heuristic_sum_bound: f64,
    pub partial_sums_within_heuristic: bool,
    pub all_gaps_positive: bool,
    pub d_nondecreasing: bool,
    pub u_nonincreasing: bool,
}

pub fn convergence_report(ledger: &StageLedger) -> ConvergenceReport {
    let m = BigInt::from(ledger.m);
    let gaps: Vec<BigRational> = ledger.stages.iter().map(|s| &s.u - &ledger.target).collect();
    let mut acc = BigRational::zero();
    let partial_sums: Vec<BigRational> = ledger
        .stages
        .iter()
        .map(|s| {
            acc += BigRational::new(m.clone(), s.l.clone());
            acc.clone()
        })
        .collect();
    let heuristic_sum_bound = 1.0 - scalar::to_f64(&ledger.target).ln();
    ConvergenceReport {
        target: ledger.target.clone(),
        gaps_decimal: gaps.iter().map(scalar::to_f64).collect(),
        all_gaps_positive: gaps.iter().all(Signed::is_positive),
        gaps,
        partial_sums_within_heuristic: partial_sums.iter().all(|p| scalar::to_f64(p) <= heuristic_sum_bound),
        partial_sums,
        heuristic_sum_bound,
        d_nondecreasing: ledger.stages.windows(2).all(|w| w[0].d <= w[1].d),
        u_nonincreasing: ledger.stages.windows(2).all(|w| w[1].u <= w[0].u),
    }
}
