use edgebip::generate::random_termsep;
use edgebip::oracle::oracle_termsep;
use edgebip::reductions::{reduce_exhaustively, reduce_once, ReductionLog, ReductionOutcome, Reduced, Rule};
use edgebip::relaxation::{normalize, Normalized};
use edgebip::TermSepInstance;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn instance(seed: u64) -> TermSepInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs = (seed % 4) as usize;
    let core = (10 - 2 * pairs.min(3)).max(2);
    let edges = (seed as usize / 4) % (2 * core + 4) + 1;
    let mut inst = random_termsep(&mut rng, core, edges, pairs, 0, !seed.is_multiple_of(3));
    let opt = oracle_termsep(&inst).unwrap().0 as i64;
    inst.k = opt + (seed / 7 % 3) as i64 - 1;
    inst
}

fn opt(inst: &TermSepInstance) -> i64 {
    oracle_termsep(inst).unwrap().0 as i64
}

/// Applies rules one at a time, checking that each step keeps the answer.
fn check_steps(original: &TermSepInstance) -> Result<(), TestCaseError> {
    let opt0 = opt(original);
    let feasible = opt0 <= original.k;
    let mut inst = original.clone();
    if normalize(&mut inst).unwrap() == Normalized::NoSolution {
        prop_assert!(!feasible);
        return Ok(());
    }
    prop_assert_eq!(opt(&inst), opt0, "normalisation changed the optimum");
    loop {
        let before = inst.clone();
        let nu_before = before.nu2();
        match reduce_once(&mut inst).unwrap() {
            ReductionOutcome::NoSolution => {
                prop_assert!(!feasible, "rule reported no solution at opt {} <= k {}", opt0, original.k);
                return Ok(());
            }
            ReductionOutcome::Solved(sep) => {
                let cost = sep.cost2(&inst.graph).unwrap() as i64 / 2;
                prop_assert!(cost <= inst.k);
                break;
            }
            ReductionOutcome::NotApplicable => break,
            ReductionOutcome::Applied { rule, dk, .. } => {
                prop_assert_eq!(inst.k - before.k, dk);
                if normalize(&mut inst).unwrap() == Normalized::NoSolution {
                    prop_assert!(!feasible, "{} led to no solution", rule);
                    return Ok(());
                }
                prop_assert!(inst.nu2() <= nu_before, "{} raised nu", rule);
                let (o_before, o_after) = (opt(&before), opt(&inst));
                if o_before <= before.k {
                    prop_assert_eq!(o_after, o_before + dk, "{} changed the optimum", rule);
                } else {
                    prop_assert!(o_after > inst.k, "{} made an infeasible instance feasible", rule);
                }
                inst.validate().unwrap();
            }
        }
    }
    if !feasible {
        prop_assert!(opt(&inst) > inst.k);
        return Ok(());
    }
    // lift an optimum of the reduced instance back
    let (c, sep) = oracle_termsep(&inst).unwrap();
    let mut solved = inst.clone();
    solved.base = sep;
    let labels = solved.lift_labels().unwrap();
    let lifted = original.separation_from_labels(&labels).unwrap();
    original.check_separation(&lifted).unwrap();
    prop_assert!(lifted.extends(&original.base));
    let lifted_cost = lifted.cost2(&original.graph).unwrap() as i64 / 2;
    prop_assert_eq!(lifted_cost, c as i64 + (original.k - inst.k));
    prop_assert_eq!(lifted_cost, opt0);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]
    #[test]
    fn every_rule_preserves_the_answer(seed in 0u64..1_000_000) {
        check_steps(&instance(seed))?;
    }

    #[test]
    fn driver_reaches_a_consistent_fixpoint(seed in 0u64..1_000_000) {
        let original = instance(seed);
        let feasible = opt(&original) <= original.k;
        let mut inst = original.clone();
        let mut log = ReductionLog::recording();
        match reduce_exhaustively(&mut inst, &mut log).unwrap() {
            Reduced::NoSolution => prop_assert!(!feasible),
            Reduced::Solved(_) => prop_assert!(feasible),
            Reduced::Open => {
                prop_assert!(inst.unresolved_count() > 0);
                prop_assert_eq!(opt(&inst) <= inst.k, feasible);
                let mut again = inst.clone();
                let mut log2 = ReductionLog::default();
                prop_assert_eq!(reduce_exhaustively(&mut again, &mut log2).unwrap(), Reduced::Open);
                prop_assert_eq!(log2.total(), 0);
            }
        }
        let bound = original.k.max(0) + original.pair_count() as i64 + original.graph.vertex_count() as i64;
        prop_assert!(log.events.len() as i64 <= bound);
    }
}

#[test]
fn every_rule_fires_on_the_sample() {
    let mut total = ReductionLog::default();
    for seed in 0..3000u64 {
        let mut inst = instance(seed);
        let mut log = ReductionLog::default();
        reduce_exhaustively(&mut inst, &mut log).unwrap();
        total.absorb(&log);
    }
    for rule in Rule::ALL {
        assert!(total.counts.get(&rule).copied().unwrap_or(0) > 0, "{rule} never fired");
    }
}

/// Seeds on which an excess rule fires, for targeted checking.
#[test]
fn excess_rules_preserve_the_answer() {
    let mut checked = 0;
    for seed in 0..3000u64 {
        let inst = instance(seed);
        let mut probe = inst.clone();
        let mut log = ReductionLog::default();
        reduce_exhaustively(&mut probe, &mut log).unwrap();
        if log.counts.contains_key(&Rule::Excess1) || log.counts.contains_key(&Rule::Excess2) {
            check_steps(&inst).unwrap();
            checked += 1;
        }
    }
    assert!(checked > 0);
}
