//! Cross-check of the rewriting certificates against evaluation.

use qonsager::generators::{build_generator_table, AConstants, RhoPolicy};
use qonsager::reps::{evaluate, standard_fleet};
use qonsager::verify::{reduce_qdg, residuals, RelationId, RewriteSystem};
use qonsager::{NCPolynomial, ScalarFraction};

#[test]
fn zero_certificates_vanish_in_representations() {
    let table = build_generator_table(1, &AConstants::zero(), RhoPolicy::Formal).unwrap();
    let fleet = standard_fleet().unwrap();
    let mut certified = 0;
    for id in RelationId::ALL {
        for k in id.k_range(1) {
            let ls: Vec<Option<usize>> = if id.has_l() { (0..=1).map(Some).collect() } else { vec![None] };
            for l in ls {
                let Some(res) = residuals(&table, id, k, l).unwrap() else { continue };
                for p in res {
                    if p.is_zero() || !reduce_qdg(&p).unwrap().is_zero() {
                        continue;
                    }
                    certified += 1;
                    for rep in &fleet {
                        assert!(evaluate(&p, rep).unwrap().is_zero(), "{id} k={k} l={l:?} on {}", rep.id);
                    }
                }
            }
        }
    }
    assert!(certified >= 5, "only {certified} nontrivial certificates");
}

#[test]
fn relations_themselves_reduce_to_zero() {
    let system = RewriteSystem::new(&ScalarFraction::r());
    for s in RewriteSystem::source(&ScalarFraction::r()) {
        assert!(system.reduce(&s).unwrap().is_zero());
        let shifted = NCPolynomial::a().multiply(&s).unwrap().multiply(&NCPolynomial::b()).unwrap();
        assert!(system.reduce(&shifted).unwrap().is_zero());
    }
}
