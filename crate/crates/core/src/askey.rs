//! Askey-Wilson specializations: the parameter `omega` of a pair satisfying
//! the quadratic relations, and linear dependencies
//! `sum_k alpha_k W_{-k} = 0`, `sum_k alpha_k W_{k+1} = 0` shared by both
//! generator chains in a representation.

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::generators::GeneratorTable;
use crate::linalg;
use crate::reps::{evaluate, ExactMatrix, MatrixRep};
use crate::scalars::{beta, q_minus_inv, ScalarFraction};

/// Parameters of the quadratic relations, with `alpha = (omega - a_1 (q - q^-1)) / rho`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AWParams {
    pub omega: ScalarFraction,
    pub rho: ScalarFraction,
    pub alpha: ScalarFraction,
}

/// A relation of order `n`; `alphas[n] = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AWRelation {
    pub n: usize,
    pub alphas: Vec<ScalarFraction>,
    pub rep: String,
}

/// Left sides of the quadratic relations without the `omega` term:
/// `x y^2 + y^2 x - beta y x y - rho x`.
fn quadratic(x: &ExactMatrix, y: &ExactMatrix, beta: &ScalarFraction, rho: &ScalarFraction) -> ExactMatrix {
    let yy = y.mul(y);
    x.mul(&yy).add(&yy.mul(x)).add_scaled(&y.mul(x).mul(y), &-beta.clone()).add_scaled(x, &-rho.clone())
}

/// Solves both quadratic relations for a common `omega`.
pub fn extract_omega(rep: &MatrixRep, a1: &BigRational) -> Result<AWParams> {
    let n = rep.dim();
    let (a, b) = (&rep.mat_a, &rep.mat_b);
    let rows: Vec<Vec<ScalarFraction>> =
        vec![a.entries().to_vec(), b.entries().to_vec(), ExactMatrix::identity(n).entries().to_vec()];
    if linalg::rank(&rows) < 3 {
        return Err(Error::InvalidArgument("A, A* and the identity must be linearly independent".into()));
    }
    let beta = rep.specialize_scalar(&beta())?;
    let rho = rep.rho.clone();
    // A* A^2 + A^2 A* - beta A A* A - rho A* = omega A, and the exchanged form.
    let x1 = quadratic(b, a, &beta, &rho);
    let x2 = quadratic(a, b, &beta, &rho);
    let idx = a.entries().iter().position(|x| !x.is_zero()).expect("A is nonzero");
    let omega = x1.entries()[idx].checked_div(&a.entries()[idx])?;
    if x1 != a.scale(&omega) || x2 != b.scale(&omega) {
        return Err(Error::NotAskeyWilson(format!("no common omega on {}", rep.id)));
    }
    let shift = &ScalarFraction::from_rational(a1) * &rep.specialize_scalar(&q_minus_inv())?;
    let alpha = (&omega - &shift).checked_div(&rho)?;
    Ok(AWParams { omega, rho, alpha })
}

/// Images of `W_{-k}` and `W_{k+1}` for `k = 0..=n`.
struct Chains<'a> {
    table: &'a GeneratorTable,
    rep: &'a MatrixRep,
    wm: Vec<ExactMatrix>,
    wp: Vec<ExactMatrix>,
}

impl Chains<'_> {
    fn extend_to(&mut self, n: usize) -> Result<()> {
        while self.wm.len() <= n {
            let k = self.wm.len();
            self.wm.push(evaluate(&self.table.wm[k], self.rep)?);
            self.wp.push(evaluate(&self.table.wp[k], self.rep)?);
        }
        Ok(())
    }
}

/// Finds the smallest `N <= n_max` such that both chains satisfy a common
/// relation of order `N`.
pub fn discover_relations(rep: &MatrixRep, table: &GeneratorTable, n_max: usize) -> Result<AWRelation> {
    if n_max == 0 {
        return Err(Error::InvalidArgument("the maximal order must be at least 1".into()));
    }
    if table.wm.len() <= n_max {
        return Err(Error::InvalidArgument(format!(
            "order {n_max} needs W_{{-{n_max}}}; the table stops at W_{{-{}}}",
            table.wm.len() - 1
        )));
    }
    table.compatible_with(rep)?;
    let mut chains = Chains { table, rep, wm: Vec::new(), wp: Vec::new() };
    for n in 1..=n_max {
        chains.extend_to(n)?;
        let cells = rep.dim() * rep.dim();
        let mut rows = Vec::with_capacity(2 * cells);
        for chain in [&chains.wm, &chains.wp] {
            for idx in 0..cells {
                rows.push(chain[..=n].iter().map(|m| m.entries()[idx].clone()).collect::<Vec<_>>());
            }
        }
        let basis = linalg::nullspace(&rows, n + 1);
        if let Some(v) = basis.iter().find(|v| !v[n].is_zero()) {
            let lead = v[n].recip()?;
            let alphas = v.iter().map(|x| x * &lead).collect();
            return Ok(AWRelation { n, alphas, rep: rep.id.clone() });
        }
    }
    Err(Error::NoRelation(format!("no relation up to order {n_max} on {}", rep.id)))
}

/// Substitutes the alphas back into both chains.
pub fn witness_check(relation: &AWRelation, rep: &MatrixRep, table: &GeneratorTable) -> Result<bool> {
    if relation.alphas.len() != relation.n + 1 || table.wm.len() <= relation.n {
        return Err(Error::InvalidArgument("relation does not match the table".into()));
    }
    let dim = rep.dim();
    for chain in [&table.wm, &table.wp] {
        let mut acc = ExactMatrix::zeros(dim);
        for (p, a) in chain.iter().zip(&relation.alphas) {
            acc = acc.add_scaled(&evaluate(p, rep)?, a);
        }
        if !acc.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{build_generator_table, AConstants, RhoPolicy};
    use crate::reps::{pair_aw_tuned, pair_d2};

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn tuned_pair_has_first_order_relation() {
        let rep = pair_aw_tuned(&r(2, 1), 1).unwrap();
        let params = extract_omega(&rep, &r(0, 1)).unwrap();
        let table = build_generator_table(1, &AConstants::zero(), RhoPolicy::Formal).unwrap();
        let rel = discover_relations(&rep, &table, 2).unwrap();
        assert_eq!(rel.n, 1);
        assert_eq!(rel.alphas[0], params.alpha);
        assert!(witness_check(&rel, &rep, &table).unwrap());
    }

    #[test]
    fn generic_pair_is_not_askey_wilson() {
        let rep = pair_d2(&r(2, 1), &r(3, 1)).unwrap();
        assert!(matches!(extract_omega(&rep, &r(0, 1)), Err(Error::NotAskeyWilson(_))));
    }

    #[test]
    fn order_zero_is_rejected() {
        let rep = pair_d2(&r(2, 1), &r(3, 1)).unwrap();
        let table = build_generator_table(0, &AConstants::zero(), RhoPolicy::Formal).unwrap();
        assert!(discover_relations(&rep, &table, 0).is_err());
    }
}
