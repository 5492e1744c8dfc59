//! Acceptance suite. Run with `cargo test --test acceptance`; prints one
//! line per criterion and exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crossrc_core::comparison::{cuntz_leq_fd, find_certificate, rc_upper_table, RankVector};
use crossrc_core::crossed::{crossed_report, fixed_point_dimension, InnerAction};
use crossrc_core::group::{build_group, irrep_dimensions, regular_permutations, DEFAULT_CLUSTER_TOL, STANDARD_GROUPS};
use crossrc_core::linalg::{cut_down, fell_absorption_unitary, ExactMatrix, Permutation};
use crossrc_core::scalar::{self, rat, to_f64};
use crossrc_core::seq::generate_stages;
use crossrc_core::stages::{build_construction, check_equivariance, outerness_gap, rank_ledger, ConstructionPlan};

/// Gap to the target below which a bound counts as converged.
const CONVERGENCE_TOL: f64 = 1e-6;
/// Slack for floating-point norm inequalities.
const NORM_TOL: f64 = 1e-9;
const EQUIVARIANCE_TRIALS: usize = 20;
const CROSSED_TRIPLES: usize = 100;
/// Entry density of random crossed-product elements.
const CROSSED_DENSITY: f64 = 0.25;
const CUT_DOWN_SAMPLES: usize = 1000;
const SEED: u64 = 20_260_325;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Smallest `k ≥ 1` with `1 − m/(k + m) > q`, by linear scan.
fn scan_next_d(m: u64, q: &BigRational) -> BigInt {
    let mut k = BigInt::one();
    loop {
        if BigRational::one() - BigRational::new(BigInt::from(m), &k + BigInt::from(m)) > *q {
            return k;
        }
        k += 1;
    }
}

fn plan(spec: &str, eta: BigRational, stages: usize, cap: usize) -> Result<ConstructionPlan, String> {
    build_construction(&build_group(spec).map_err(err)?, &eta, stages, cap, SEED).map_err(err)
}

fn sequence() -> Outcome {
    let start = Instant::now();
    let target = rat(1, 2);
    let ledger = generate_stages(2, &target, 6).map_err(err)?;
    let elapsed = start.elapsed();
    let d: Vec<BigInt> = ledger.d_values();
    ensure(d[..3] == [3, 11, 131].map(BigInt::from), format!("d = {:?}", &d[..3]))?;
    let u: Vec<BigRational> = (1..=3).map(|n| ledger.u(n)).collect();
    ensure(u == vec![rat(3, 5), rat(33, 65), rat(4323, 8645)], "u(1..3) differ")?;
    // oracle: replay the greedy choice with a linear scan
    let mut q = target.clone();
    for n in 1..=4 {
        let k = scan_next_d(2, &q);
        ensure(&k == ledger.d(n), format!("d({n}) = {} but scan gives {k}", ledger.d(n)))?;
        q = &target / ledger.u(n);
    }
    for n in 1..=ledger.len() {
        ensure(ledger.u(n) > target, format!("u({n}) <= 1/2"))?;
        ensure(ledger.u(n) <= ledger.u(n - 1), format!("u({n}) > u({})", n - 1))?;
    }
    let converged = (1..=6)
        .find(|&n| to_f64(&(ledger.u(n) - &target)) < CONVERGENCE_TOL)
        .ok_or("gap never below 1e-6 by stage 6")?;
    ensure(elapsed < Duration::from_secs(1), format!("took {elapsed:?}"))?;
    Ok(format!("d=(3,11,131,...), gap < 1e-6 at stage {converged}, {elapsed:?}"))
}

fn fell_absorption() -> Outcome {
    let start = Instant::now();
    let mut identities = 0;
    for spec in STANDARD_GROUPS {
        let group = build_group(spec).map_err(err)?;
        let w = fell_absorption_unitary(&group).map_err(err)?;
        ensure(w.is_unitary(), format!("{spec}: w not unitary"))?;
        let one = Permutation::identity(group.order());
        for z in regular_permutations(&group) {
            let lhs = &(&w * &z.kron(&z).to_matrix()) * &w.adjoint();
            ensure(lhs == z.kron(&one).to_matrix(), format!("{spec}: identity fails"))?;
            identities += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(2), format!("took {elapsed:?}"))?;
    Ok(format!("{identities} identities over {} groups, {elapsed:?}", STANDARD_GROUPS.len()))
}

fn equivariance() -> Outcome {
    let mut comparisons = 0;
    for (spec, eta, steps) in [("Z2", rat(1, 4), vec![0, 1]), ("S3", rat(1, 12), vec![0])] {
        let p = plan(spec, eta, 2, 4096)?;
        for n in steps {
            let v = check_equivariance(&p, n, EQUIVARIANCE_TRIALS, SEED + n as u64).map_err(err)?;
            ensure(
                v.passed,
                format!("{spec} stage {n}->{}: {} mismatches", n + 1, v.mismatches.len()),
            )?;
            comparisons += v.comparisons;
        }
    }
    Ok(format!("{comparisons} exact comparisons, {EQUIVARIANCE_TRIALS} functions per step"))
}

fn rank_trace_ledger() -> Outcome {
    let p = plan("Z2", rat(1, 4), 3, 200)?;
    let report = rank_ledger(&p, 2, 4, SEED).map_err(err)?;
    let constants: Vec<BigInt> = report.entries[1..=2].iter().map(|e| e.constant_rank.clone()).collect();
    ensure(constants == [2, 32].map(BigInt::from), format!("constant ranks {constants:?}"))?;
    let mut points = 0;
    for c in &report.spot_checks {
        ensure(c.all_projections && c.matches_ledger, format!("stage {} disagrees", c.stage))?;
        for (i, t) in c.normalized_traces.iter().enumerate() {
            ensure(*t == rat(1, 2), format!("stage {} point {i}: trace {t}", c.stage))?;
        }
        points += c.points;
    }
    let s3 = plan("S3", rat(1, 12), 1, 100)?;
    let s3_report = rank_ledger(&s3, 1, 2, SEED).map_err(err)?;
    for c in &s3_report.spot_checks {
        ensure(c.normalized_traces.iter().all(|t| *t == rat(1, 6)), "S3 trace is not 1/6")?;
        points += c.points;
    }
    Ok(format!("constant ranks (2, 32); trace 1/nu exact at {points} points"))
}

fn outerness() -> Outcome {
    let mut count = 0;
    for spec in STANDARD_GROUPS {
        let group = build_group(spec).map_err(err)?;
        let eta = rat(1, 4 * group.order() as i64);
        let p = build_construction(&group, &eta, 1, 4096, SEED).map_err(err)?;
        for g in 1..group.order() {
            let gap = outerness_gap(&p, g).map_err(err)?;
            ensure(gap.norm == rat(1, 1), format!("{spec}, {}: norm {}", gap.group_element, gap.norm))?;
            ensure((gap.norm_float - 1.0).abs() < NORM_TOL, "float cross-check off")?;
            count += 1;
        }
    }
    Ok(format!("norm exactly 1 for {count} non-identity elements"))
}

fn crossed_product() -> Outcome {
    let start = Instant::now();
    for (i, spec) in STANDARD_GROUPS.iter().enumerate() {
        let group = build_group(spec).map_err(err)?;
        let act = InnerAction::regular(&group);
        let r = crossed_report(&act, CROSSED_TRIPLES, CROSSED_DENSITY, SEED + i as u64).map_err(err)?;
        ensure(r.associative && r.involutive, format!("{spec}: algebra identities"))?;
        ensure(r.averaging_is_projection, format!("{spec}: averaging element not a projection"))?;
        ensure(r.averaging_trace == rat(1, group.order() as i64), format!("{spec}: tau(p) = {}", r.averaging_trace))?;
        ensure(r.psi_multiplicative && r.psi_star_preserving && r.psi_unital, format!("{spec}: psi"))?;
        ensure(r.psi_norm_bound, format!("{spec}: norm ratio {}", r.psi_norm_ratio_max))?;
        ensure(r.trace_tracial && r.trace_positive, format!("{spec}: trace"))?;
    }
    Ok(format!(
        "{CROSSED_TRIPLES} triples per group over {} groups, {:?}",
        STANDARD_GROUPS.len(),
        start.elapsed()
    ))
}

fn fixed_points_and_irreps() -> Outcome {
    let mut solved = Vec::new();
    for (spec, eta, stages) in [("Z2", rat(1, 4), 2), ("S3", rat(1, 12), 1)] {
        let p = plan(spec, eta, stages, 4096)?;
        for n in 0..=stages {
            let dim = fixed_point_dimension(&InnerAction::stage(&p, n).map_err(err)?).map_err(err)?;
            let r = p.ledger().r(n);
            let expected = BigInt::from(p.nu()) * &r * &r;
            ensure(BigInt::from(dim) == expected, format!("{spec} stage {n}: {dim} vs {expected}"))?;
            solved.push(format!("{spec}/{n}={dim}"));
        }
    }
    ensure(solved.contains(&"Z2/1=50".to_string()), "Z2 stage 1 is not 50")?;
    for (spec, dims) in [
        ("Z2", vec![1, 1]),
        ("S3", vec![1, 1, 2]),
        ("Q8", vec![1, 1, 1, 1, 2]),
        ("D4", vec![1, 1, 1, 1, 2]),
    ] {
        let group = build_group(spec).map_err(err)?;
        let inv = irrep_dimensions(&group, SEED, DEFAULT_CLUSTER_TOL).map_err(err)?;
        ensure(inv.irrep_dims == dims, format!("{spec}: {:?}", inv.irrep_dims))?;
        inv.check(group.order()).map_err(err)?;
    }
    Ok(format!("fixed points {}; irreps match", solved.join(" ")))
}

fn rc_tables() -> Outcome {
    let mut notes = Vec::new();
    // (group, eta, stage by which the gap is below 1e-6)
    for (spec, eta, documented) in [
        ("Z2", rat(1, 4), 4),
        ("Z2", rat(1, 10), 5),
        ("S3", rat(1, 12), 3),
        ("Q8", rat(1, 16), 3),
    ] {
        let group = build_group(spec).map_err(err)?;
        let nu = group.order() as u64;
        let ledger = generate_stages(nu, &(&eta * BigRational::from_integer(BigInt::from(nu))), 5).map_err(err)?;
        let inv = irrep_dimensions(&group, SEED, DEFAULT_CLUSTER_TOL).map_err(err)?;
        let table = rc_upper_table(&ledger, &inv).map_err(err)?;
        ensure(table.columns_coincide(), format!("{spec}: columns differ"))?;
        ensure(table.strictly_decreasing_above_eta(), format!("{spec}: not strictly decreasing above eta"))?;
        let reached = table.first_stage_within(CONVERGENCE_TOL);
        ensure(
            reached == Some(documented),
            format!("{spec} eta={eta}: gap < 1e-6 first at {reached:?}, documented {documented}"),
        )?;
        notes.push(format!("{spec}@{eta}->stage {documented}"));
    }
    Ok(notes.join(", "))
}

fn certificate() -> Outcome {
    let ledger = generate_stages(2, &rat(1, 2), 12).map_err(err)?;
    let c = find_certificate(&ledger, &rat(1, 4), &rat(1, 5), 10).map_err(err)?;
    ensure(c.n == 2, format!("n = {}", c.n))?;
    let m = c.rank_m.clone();
    ensure(m >= BigInt::from(92) && m <= BigInt::from(97), format!("M = {m}"))?;
    ensure(c.all_hold && c.recomputed_agrees && c.checks.len() == 10, "library checks")?;
    // independent replay from the raw d values
    let (mut r, mut s) = (vec![BigInt::one()], vec![BigInt::one()]);
    for d in ledger.d_values() {
        r.push(r.last().unwrap() * (&d + 2));
        s.push(s.last().unwrap() * &d);
    }
    ensure(r[2] == BigInt::from(65), "r(2) != 65")?;
    let nu_r = BigRational::from_integer(BigInt::from(2) * &r[2]);
    let ratio = BigRational::from_integer(m.clone()) / &nu_r;
    ensure(ratio > rat(1, 5) + rat(1, 2) && ratio < rat(1, 4) + rat(1, 2), "M outside its interval")?;
    for (k, check) in (3..=12).zip(&c.checks) {
        let pushed = &m * &r[k];
        ensure((&pushed % &r[2]).is_zero(), format!("r(2) does not divide M r({k})"))?;
        let pushed = pushed / &r[2];
        let threshold = &r[k] + &s[k];
        ensure(pushed < threshold, format!("m={k}: {pushed} >= {threshold}"))?;
        ensure(check.pushed_rank == pushed && check.threshold == threshold, format!("m={k}: library disagrees"))?;
    }
    Ok(format!(
        "n=2, M={m}, m=3: {} < {}; 10 inequalities replayed",
        c.checks[0].pushed_rank, c.checks[0].threshold
    ))
}

fn random_diagonal(rng: &mut ChaCha8Rng, k: usize) -> ExactMatrix {
    let d: Vec<_> = (0..k)
        .map(|_| {
            let v = if rng.gen_bool(0.2) { 0 } else { rng.gen_range(0..50) };
            scalar::real(rat(v, rng.gen_range(1..10)))
        })
        .collect();
    ExactMatrix::diagonal(&d)
}

fn ranks(a: &ExactMatrix) -> usize {
    a.diagonal_entries().iter().filter(|z| !z.is_zero()).count()
}

fn cuntz_cut_down() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for i in 0..CUT_DOWN_SAMPLES {
        let k = rng.gen_range(1..7);
        let a = random_diagonal(&mut rng, k);
        let e1 = rat(rng.gen_range(0..20), rng.gen_range(1..6));
        let e2 = rat(rng.gen_range(0..20), rng.gen_range(1..6));
        let lhs = cut_down(cut_down(&a, &e1).map_err(err)?.exact().unwrap(), &e2).map_err(err)?;
        let rhs = cut_down(&a, &(&e1 + &e2)).map_err(err)?;
        ensure(lhs.exact() == rhs.exact(), format!("sample {i}: composition differs"))?;
        let cut = rhs.exact().unwrap();
        ensure(cut.diagonal_entries().iter().all(|z| !z.re.is_negative()), "negative cut-down")?;

        let rv = |m: &ExactMatrix| RankVector::new(vec![ranks(m)], vec![k]).unwrap();
        let (ra, rc) = (rv(&a), rv(cut));
        ensure(cuntz_leq_fd(&rc, &ra).map_err(err)?, format!("sample {i}: (a-e)_+ not below a"))?;
        ensure(cuntz_leq_fd(&ra, &ra).map_err(err)?, "reflexivity")?;
        let b = random_diagonal(&mut rng, k);
        let c = random_diagonal(&mut rng, k);
        let (rb, rcc) = (rv(&b), rv(&c));
        if cuntz_leq_fd(&ra, &rb).map_err(err)? && cuntz_leq_fd(&rb, &rcc).map_err(err)? {
            ensure(cuntz_leq_fd(&ra, &rcc).map_err(err)?, format!("sample {i}: transitivity"))?;
        }
        if cuntz_leq_fd(&rc, &rb).map_err(err)? {
            ensure(
                cuntz_leq_fd(&ra.direct_sum(&rc), &ra.direct_sum(&rb)).map_err(err)?,
                format!("sample {i}: direct sums"),
            )?;
        }
    }
    Ok(format!("{CUT_DOWN_SAMPLES} random diagonal matrices"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("sequence exactness", sequence),
        ("Fell absorption", fell_absorption),
        ("equivariance", equivariance),
        ("rank/trace ledger", rank_trace_ledger),
        ("outerness gap", outerness),
        ("crossed product", crossed_product),
        ("fixed points and irreps", fixed_points_and_irreps),
        ("rc tables", rc_tables),
        ("certificate", certificate),
        ("Cuntz/cut-down suite", cuntz_cut_down),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        let status = if outcome.is_ok() { "PASS" } else { "FAIL" };
        let detail = outcome.unwrap_or_else(|e| {
            failed += 1;
            e
        });
        println!("acceptance {:>2} {status} {name}: {detail} [{:.2?}]", i + 1, t.elapsed());
    }
    println!("acceptance total: {} of {} passed in {:.2?}", criteria.len() - failed, criteria.len(), start.elapsed());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
