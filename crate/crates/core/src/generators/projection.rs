//! Representation-projection coefficients.
//!
//! The ansatz is imposed numerically-exactly in a fleet of verified
//! representations: at level `k` the unknowns `a_ij, b_ij, e_ij` must satisfy
//! `(q+q^-1)[W_0, W_{k+1}] = G~ - G`, `(q+q^-1)[W_{-k}, W_1] = G~ - G` and the
//! companion equalities `[W_0, G]_q = [G~, W_0]_q`, `[G, W_1]_q = [W_1, G~]_q`.
//! The ansatz is degenerate modulo `[W_{-i}, W_{j+1}] = [W_{-j}, W_{i+1}]`, so
//! the gauge conditions coming from the `W_0`-commutator expansion are added
//! as extra rows.
//!
//! Images of the generators are propagated with the matrix form of the
//! recursion, so no polynomial is ever evaluated here.

use std::collections::BTreeMap;

use num_rational::BigRational;

use super::{ab_indices, alpha, e_indices, kbar, CoefficientTable, GeneratorTable};
use crate::error::{Error, Result};
use crate::linalg;
use crate::reps::{pair_leonard, standard_fleet, ExactMatrix, MatrixRep};
use crate::scalars::{q_minus_inv, q_plus_inv, ScalarFraction};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Unknown {
    A(usize, usize),
    B(usize, usize),
    E(usize, usize),
}

struct Images {
    rep: MatrixRep,
    inv_rho: ScalarFraction,
    wm: Vec<ExactMatrix>,
    wp: Vec<ExactMatrix>,
    g: Vec<ExactMatrix>,
    gt: Vec<ExactMatrix>,
}

impl Images {
    /// Image of an ansatz term and of its exchange.
    fn term(&self, u: Unknown) -> (ExactMatrix, ExactMatrix) {
        match u {
            Unknown::A(i, j) => (self.wm[i].mul(&self.wp[j]), self.wp[i].mul(&self.wm[j])),
            Unknown::B(i, j) => (self.wp[i].mul(&self.wm[j]), self.wm[i].mul(&self.wp[j])),
            Unknown::E(i, j) => {
                let q2 = ScalarFraction::q_pow(2);
                let qm2 = ScalarFraction::q_pow(-2);
                let mm = self.wm[i].mul(&self.wm[j]);
                let pp = self.wp[i].mul(&self.wp[j]);
                let t = mm.scale(&q2).add_scaled(&pp, &qm2).add_scaled(&self.g[j].mul(&self.gt[i]), &self.inv_rho);
                let tt = pp.scale(&q2).add_scaled(&mm, &qm2).add_scaled(&self.gt[j].mul(&self.g[i]), &self.inv_rho);
                (t, tt)
            }
        }
    }
}

/// The default projection fleet: the two-dimensional pairs plus two
/// Leonard pairs, which are needed to pin the coefficients above `k = 4`.
pub fn projection_fleet() -> Result<Vec<MatrixRep>> {
    let mut fleet = standard_fleet()?;
    let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    fleet.push(pair_leonard(3, &r(2, 1), &r(3, 1), &r(5, 1))?);
    fleet.push(pair_leonard(4, &r(3, 1), &r(5, 2), &r(7, 1))?);
    Ok(fleet)
}

/// Incremental solver state: the fleet and the images of every generator
/// built so far.
pub struct ProjectionState {
    images: Vec<Images>,
}

impl ProjectionState {
    pub fn new() -> Result<Self> {
        Self::with_fleet(projection_fleet()?)
    }

    pub fn with_fleet(fleet: Vec<MatrixRep>) -> Result<Self> {
        let images = fleet
            .into_iter()
            .map(|rep| {
                if rep.q_point.is_some() {
                    return Err(Error::InvalidArgument(format!("{} is only valid at a fixed q", rep.id)));
                }
                Ok(Images {
                    inv_rho: rep.rho.recip()?,
                    wm: vec![rep.mat_a.clone()],
                    wp: vec![rep.mat_b.clone()],
                    g: Vec::new(),
                    gt: Vec::new(),
                    rep,
                })
            })
            .collect::<Result<_>>()?;
        Ok(Self { images })
    }

    /// Solves level `k`; `table` must hold levels `0..k`.
    pub fn solve_level(&mut self, table: &GeneratorTable, k: usize, constant: &ScalarFraction) -> Result<CoefficientTable> {
        let _ = table;
        if self.images.iter().any(|im| im.g.len() != k) {
            return Err(Error::Construction(format!("projection state out of sync at level {k}")));
        }
        let mut unknowns = Vec::new();
        for (i, j) in ab_indices(k) {
            unknowns.push(Unknown::A(i, j));
            unknowns.push(Unknown::B(i, j));
        }
        unknowns.extend(e_indices(k).into_iter().map(|(i, j)| Unknown::E(i, j)));
        let n = unknowns.len();
        let mut rows: Vec<Vec<ScalarFraction>> = Vec::new();
        let mut rhs: Vec<ScalarFraction> = Vec::new();
        gauge_rows(k, &unknowns, &mut rows, &mut rhs)?;
        let qp = q_plus_inv();
        for im in &self.images {
            let a = &im.rep.mat_a;
            let b = &im.rep.mat_b;
            let terms: Vec<_> = unknowns.iter().map(|&u| im.term(u)).collect();
            let diffs: Vec<_> = terms.iter().map(|(t, tt)| tt.sub(t)).collect();
            let c2: Vec<_> = terms.iter().map(|(t, tt)| a.q_commutator(t, 1).sub(&tt.q_commutator(a, 1))).collect();
            let c3: Vec<_> = terms.iter().map(|(t, tt)| t.q_commutator(b, 1).sub(&b.q_commutator(tt, 1))).collect();
            let r1 = a.commutator(&im.wp[k]).scale(&qp);
            let r2 = im.wm[k].commutator(b).scale(&qp);
            let zero = ExactMatrix::zeros(a.dim());
            for (lhs, target) in [(&diffs, &r1), (&diffs, &r2), (&c2, &zero), (&c3, &zero)] {
                for idx in 0..a.dim() * a.dim() {
                    let row: Vec<_> = lhs.iter().map(|m| m.entries()[idx].clone()).collect();
                    let t = target.entries()[idx].clone();
                    if row.iter().all(ScalarFraction::is_zero) && t.is_zero() {
                        continue;
                    }
                    rows.push(row);
                    rhs.push(t);
                }
            }
        }
        let x = linalg::solve_unique(&rows, &rhs).map_err(|e| Error::Construction(format!("projection at level {k}: {e}")))?;
        debug_assert_eq!(x.len(), n);
        let mut a = BTreeMap::new();
        let mut b = BTreeMap::new();
        let mut e = BTreeMap::new();
        for (u, v) in unknowns.iter().zip(x) {
            match *u {
                Unknown::A(i, j) => a.insert((i, j), v),
                Unknown::B(i, j) => b.insert((i, j), v),
                Unknown::E(i, j) => e.insert((i, j), v),
            };
        }
        Ok(CoefficientTable { k, a, b, e, constant: constant.clone() })
    }

    /// Propagates images through level `k` using the solved coefficients.
    pub fn absorb_level(&mut self, table: &GeneratorTable, k: usize) -> Result<()> {
        let coeffs = table.coeffs.get(k).ok_or_else(|| Error::Construction(format!("level {k} missing from table")))?;
        for im in self.images.iter_mut() {
            let dim = im.rep.dim();
            let mut g = ExactMatrix::scalar(dim, &coeffs.constant);
            let mut gt = g.clone();
            let terms: Vec<(Unknown, ScalarFraction)> = coeffs
                .a
                .iter()
                .map(|(&(i, j), v)| (Unknown::A(i, j), v.clone()))
                .chain(coeffs.b.iter().map(|(&(i, j), v)| (Unknown::B(i, j), v.clone())))
                .chain(coeffs.e.iter().map(|(&(i, j), v)| (Unknown::E(i, j), v.clone())))
                .collect();
            for (u, v) in terms {
                if v.is_zero() {
                    continue;
                }
                let (t, tt) = im.term(u);
                g = g.add_scaled(&t, &v);
                gt = gt.add_scaled(&tt, &v);
            }
            let a = &im.rep.mat_a;
            let b = &im.rep.mat_b;
            let wm_next = im.wp[k].add_scaled(&a.q_commutator(&g, 1), &im.inv_rho);
            let wp_next = im.wm[k].add_scaled(&b.q_commutator(&gt, 1), &im.inv_rho);
            im.g.push(g);
            im.gt.push(gt);
            im.wm.push(wm_next);
            im.wp.push(wp_next);
        }
        Ok(())
    }
}

/// Gauge rows from the expansion of `[W_0, q G + q^-1 G~]`, in terms of
/// `alpha_ij = (q a_ij + q^-1 b_ij)/(q+q^-1)` and
/// `alphabar_ij = (q b_ij + q^-1 a_ij)/(q+q^-1)`.
fn gauge_rows(k: usize, unknowns: &[Unknown], rows: &mut Vec<Vec<ScalarFraction>>, rhs: &mut Vec<ScalarFraction>) -> Result<()> {
    let kb = kbar(k) as i64;
    let al = alpha(k) as i64;
    let qp = q_plus_inv();
    let wa = ScalarFraction::q().checked_div(&qp)?;
    let wb = ScalarFraction::q_pow(-1).checked_div(&qp)?;
    let pos = |u: Unknown| unknowns.iter().position(|&x| x == u);
    let n = unknowns.len();
    let mut emit = |entries: Vec<(Option<usize>, ScalarFraction)>, target: ScalarFraction| {
        let mut row = vec![ScalarFraction::zero(); n];
        for (p, c) in entries {
            if let Some(p) = p {
                row[p] = &row[p] + &c;
            }
        }
        if row.iter().all(ScalarFraction::is_zero) && target.is_zero() {
            return;
        }
        rows.push(row);
        rhs.push(target);
    };
    let ab = |i: i64, j: i64| (pos(Unknown::A(i as usize, j as usize)), pos(Unknown::B(i as usize, j as usize)));
    let e = |i: i64, j: i64| -> Option<usize> {
        if i < 0 || j < 0 || i > j {
            return None;
        }
        pos(Unknown::E(i as usize, j as usize))
    };
    let alpha_of = |i: i64, j: i64| {
        let (pa, pb) = ab(i, j);
        vec![(pa, wa.clone()), (pb, wb.clone())]
    };
    let alphabar_of = |i: i64, j: i64| {
        let (pa, pb) = ab(i, j);
        vec![(pb, wa.clone()), (pa, wb.clone())]
    };
    let one = ScalarFraction::one();
    if kb == 1 && al >= 1 {
        emit(alpha_of(0, 0), ScalarFraction::zero());
        emit(alphabar_of(0, 0), ScalarFraction::zero());
    }
    for l in 0..=al {
        let s = 2 * l + 1 - kb;
        let delta = if l == al { q_minus_inv() } else { ScalarFraction::zero() };
        emit(alphabar_of(s, 0), delta);
        for i in 0..=s {
            let mut ra = alpha_of(s - i, i);
            if i <= l - kb {
                ra.push((e(i, 2 * l - kb - i), one.clone()));
            }
            emit(ra, ScalarFraction::zero());
            if i >= 1 {
                let mut rb = alphabar_of(s - i, i);
                if i <= l + 1 - kb {
                    rb.push((e(i - 1, s - i), one.clone()));
                }
                emit(rb, ScalarFraction::zero());
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::closed_form;

    #[test]
    fn low_levels_match_closed_form() {
        use crate::generators::{build_with_options, AConstants, Backend, BuildOptions, RhoPolicy};
        let opts = BuildOptions::new(Backend::Projection).unwrap();
        let table = build_with_options(2, &AConstants::zero(), RhoPolicy::Formal, &opts).unwrap();
        for k in 0..=2 {
            assert_eq!(table.coeffs[k], closed_form::solve(k, &ScalarFraction::zero()).unwrap(), "k = {k}");
        }
    }
}
