use crossrc_core::group::build_group;
use crossrc_core::linalg::ExactMatrix;
use crossrc_core::scalar::{self, rat};
use crossrc_core::stages::*;
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn z2_plan(cap: usize) -> ConstructionPlan {
    build_construction(&build_group("Z2").unwrap(), &rat(1, 4), 4, cap, 7).unwrap()
}

#[test]
fn z2_fiber_dimensions() {
    let plan = z2_plan(200);
    let fibers: Vec<BigInt> = (0..4).map(|n| plan.fiber_dim(n)).collect();
    assert_eq!(fibers, [2, 10, 130, 17290].map(BigInt::from));
    assert!(plan.is_materializable(2));
    assert!(!plan.is_materializable(3));
    assert!(plan.base_point(1).is_some());
    assert!(plan.base_point(2).is_none());
}

#[test]
fn eta_out_of_range() {
    let g = build_group("Z2").unwrap();
    assert!(build_construction(&g, &rat(1, 2), 3, 200, 0).is_err());
    assert!(build_construction(&g, &rat(0, 1), 3, 200, 0).is_err());
    assert!(build_construction(&g, &rat(1, 4), 3, 5, 0).is_err());
}

#[test]
fn z2_equivariance_first_two_steps() {
    let plan = z2_plan(200);
    for n in 0..2 {
        let v = check_equivariance(&plan, n, 2, 11).unwrap();
        assert!(v.passed, "stage {n}: {:?}", v.mismatches);
        assert!(v.reduction_identity_holds);
        assert_eq!(v.comparisons, 2 * 2 * EQUIVARIANCE_TARGETS);
    }
}

#[test]
fn s3_equivariance_first_step() {
    let g = build_group("S3").unwrap();
    let plan = build_construction(&g, &rat(1, 12), 2, 100, 3).unwrap();
    assert_eq!(plan.fiber_dim(1), BigInt::from(78));
    let v = check_equivariance(&plan, 0, 1, 5).unwrap();
    assert!(v.passed);
    assert_eq!(v.comparisons, 6 * EQUIVARIANCE_TARGETS);
}

#[test]
fn equivariance_beyond_cap_is_refused() {
    let plan = z2_plan(200);
    assert!(check_equivariance(&plan, 2, 1, 0).is_err());
}

#[test]
fn wrong_action_breaks_equivariance() {
    // Γ commutes with α_g, but not with an arbitrary conjugation.
    let plan = z2_plan(200);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let targets: Vec<StagePoint> = (0..2).map(|_| plan.random_point(1, &mut rng).unwrap()).collect();
    let support = required_points(&plan, 0, &targets).unwrap();
    let f = MatFunc::random(0, 2, &support, &mut rng).unwrap();
    let twist = ExactMatrix::diagonal(&[scalar::one(), scalar::gauss(0, 1)]);
    let twisted = f.map(|v| &(&twist * v) * &twist.adjoint());
    let lhs = gamma_step(&twisted, &plan, &targets).unwrap();
    let rhs = act(1, &gamma_step(&f, &plan, &targets).unwrap(), &plan).unwrap();
    assert!(targets.iter().any(|x| lhs.eval(x).unwrap() != rhs.eval(x).unwrap()));
}

#[test]
fn gamma_is_a_homomorphism_pointwise() {
    let plan = z2_plan(200);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let targets: Vec<StagePoint> = (0..2).map(|_| plan.random_point(1, &mut rng).unwrap()).collect();
    let support = required_points(&plan, 0, &targets).unwrap();
    let f = MatFunc::random(0, 2, &support, &mut rng).unwrap();
    let h = MatFunc::random(0, 2, &support, &mut rng).unwrap();
    let fh = f.zip_with(&h, |a, b| a * b).unwrap();
    let gf = gamma_step(&f, &plan, &targets).unwrap();
    let gh = gamma_step(&h, &plan, &targets).unwrap();
    let gfh = gamma_step(&fh, &plan, &targets).unwrap();
    for x in &targets {
        assert_eq!(*gfh.eval(x).unwrap(), gf.eval(x).unwrap() * gh.eval(x).unwrap());
    }
}

#[test]
fn unit_maps_to_unit() {
    let plan = z2_plan(200);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let targets: Vec<StagePoint> = (0..3).map(|_| plan.random_point(2, &mut rng).unwrap()).collect();
    let one = push_forward(&plan, 2, &targets, |_| Ok(ExactMatrix::identity(2))).unwrap();
    for x in &targets {
        assert_eq!(*one.eval(x).unwrap(), ExactMatrix::identity(130));
    }
}

#[test]
fn bott_ranks_match_ledger() {
    let plan = z2_plan(200);
    let report = rank_ledger(&plan, 4, 2, 13).unwrap();
    let totals: Vec<BigInt> = report.entries.iter().map(|e| e.total_rank.clone()).collect();
    assert_eq!(totals[..4], [1, 5, 65, 8645].map(BigInt::from));
    for e in &report.entries {
        assert!(e.closed_form_agrees);
        assert_eq!(e.normalized_trace, rat(1, 2));
    }
    let constants: Vec<BigInt> = report.entries.iter().take(4).map(|e| e.constant_rank.clone()).collect();
    assert_eq!(constants, [0, 2, 32, 4322].map(BigInt::from));
    assert_eq!(report.spot_checks.len(), 3);
    assert_eq!(report.skipped_stages, vec![3, 4]);
    for c in &report.spot_checks {
        assert!(c.all_projections && c.matches_ledger);
    }
}

#[test]
fn bott_projection_is_a_projection_at_stage_two() {
    let plan = z2_plan(200);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let targets: Vec<StagePoint> = (0..2).map(|_| plan.random_point(2, &mut rng).unwrap()).collect();
    let p = bott_at_stage(&plan, 2, &targets).unwrap().tag_projection().unwrap();
    assert!(p.is_tagged_projection());
}

#[test]
fn outerness_gap_is_one() {
    for spec in ["Z2", "Z3", "S3"] {
        let g = build_group(spec).unwrap();
        let plan = build_construction(&g, &rat(1, 4 * g.order() as i64), 2, 4096, 0).unwrap();
        for h in 1..g.order() {
            let gap = outerness_gap(&plan, h).unwrap();
            assert_eq!(gap.norm, rat(1, 1));
            assert!((gap.norm_float - 1.0).abs() < 1e-9);
        }
        assert!(outerness_gap(&plan, 0).is_err());
    }
}

#[test]
fn plan_summary_serializes_big_numbers_as_strings() {
    let plan = z2_plan(200);
    let json = serde_json::to_value(plan.summary()).unwrap();
    assert_eq!(json["fiber_dims"][2], "17290");
    assert_eq!(json["eta"], "1/4");
}
