//! Closed-form coefficients: `a_ij`, `b_ij` as explicit linear forms in the
//! `e_ij`, and a reduced linear system fixing the `e_ij`.

use std::collections::BTreeMap;

use super::{ab_indices, alpha, e_indices, kbar, CoefficientTable};
use crate::error::{Error, Result};
use crate::linalg;
use crate::scalars::{q2_minus_inv, q_minus_inv, q_plus_inv, ScalarFraction};

type Idx = (usize, usize);

/// `constant + sum coeff_u * e_u` over the unknowns `e_u`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearForm {
    pub constant: ScalarFraction,
    pub coeffs: BTreeMap<Idx, ScalarFraction>,
}

impl LinearForm {
    pub fn constant(c: ScalarFraction) -> Self {
        Self { constant: c, coeffs: BTreeMap::new() }
    }

    fn unknown(u: Idx, c: ScalarFraction) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(u, c);
        }
        Self { constant: ScalarFraction::zero(), coeffs }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(other, &ScalarFraction::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(other, &-ScalarFraction::one())
    }

    pub fn add_scaled(&self, other: &Self, c: &ScalarFraction) -> Self {
        let mut out = self.clone();
        out.constant = &out.constant + &(&other.constant * c);
        for (u, x) in &other.coeffs {
            let v = &out.coeffs.get(u).cloned().unwrap_or_default() + &(x * c);
            if v.is_zero() {
                out.coeffs.remove(u);
            } else {
                out.coeffs.insert(*u, v);
            }
        }
        out
    }

    pub fn scale(&self, c: &ScalarFraction) -> Self {
        Self::default().add_scaled(self, c)
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.coeffs.is_empty()
    }

    pub fn eval(&self, values: &BTreeMap<Idx, ScalarFraction>) -> ScalarFraction {
        let mut acc = self.constant.clone();
        for (u, c) in &self.coeffs {
            acc = &acc + &(c * &values.get(u).cloned().unwrap_or_default());
        }
        acc
    }
}

/// Every intermediate quantity of the closed-form route at one level.
#[derive(Clone, Debug)]
pub struct ConstraintWorkspace {
    pub k: usize,
    pub kbar: usize,
    pub alpha: usize,
    pub unknowns: Vec<Idx>,
    pub a: BTreeMap<Idx, LinearForm>,
    pub b: BTreeMap<Idx, LinearForm>,
    pub a_plus: BTreeMap<Idx, LinearForm>,
    pub a_minus: BTreeMap<Idx, LinearForm>,
    abar: BTreeMap<Idx, LinearForm>,
    /// `v = (q - q^-1) / (rho (q + q^-1))`
    pub v: ScalarFraction,
    /// `w = 1 / (rho (q^2 - q^-2))`
    pub w: ScalarFraction,
}

/// A labelled equation `form = 0`.
#[derive(Clone, Debug)]
pub struct Equation {
    pub label: String,
    pub form: LinearForm,
}

/// Size summary of the reduced system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemReport {
    pub unknowns: usize,
    /// Nontrivial equations, counted with repetition.
    pub equations: usize,
    /// Distinct nontrivial equations.
    pub distinct: usize,
    pub rank: usize,
    pub consistent: bool,
}

impl ConstraintWorkspace {
    pub fn new(k: usize) -> Result<Self> {
        let kb = kbar(k);
        let al = alpha(k);
        let unknowns = e_indices(k);
        let q = ScalarFraction::q();
        let qi = ScalarFraction::q_pow(-1);
        let d = q_minus_inv();
        let inv_d = d.recip()?;
        let e = |i: i64, j: i64| -> LinearForm {
            if i < 0 || j < 0 || i > j || !unknowns.contains(&(i as usize, j as usize)) {
                return LinearForm::default();
            }
            LinearForm::unknown((i as usize, j as usize), ScalarFraction::one())
        };
        let mut a = BTreeMap::new();
        let mut b = BTreeMap::new();
        for l in 0..=al as i64 {
            let kb = kb as i64;
            let s = 2 * l + 1 - kb;
            let delta = if l == al as i64 { ScalarFraction::one() } else { ScalarFraction::zero() };
            for i in 0..=s {
                let key = ((s - i) as usize, i as usize);
                let (fa, fb) = if i == 0 {
                    let e0 = e(0, 2 * l - kb);
                    (
                        LinearForm::constant(-(&qi * &delta)).add_scaled(&e0, &-(&q * &inv_d)),
                        LinearForm::constant(&q * &delta).add_scaled(&e0, &(&qi * &inv_d)),
                    )
                } else if i <= l - kb {
                    let e1 = e(i, 2 * l - kb - i);
                    let e2 = e(i - 1, 2 * l + 1 - kb - i);
                    (
                        e1.scale(&q).sub(&e2.scale(&qi)).scale(&-inv_d.clone()),
                        e2.scale(&q).sub(&e1.scale(&qi)).scale(&-inv_d.clone()),
                    )
                } else if i == l + 1 - kb {
                    let e3 = e(l - kb, l);
                    (e3.scale(&(&qi * &inv_d)), e3.scale(&-(&q * &inv_d)))
                } else {
                    (LinearForm::default(), LinearForm::default())
                };
                a.insert(key, fa);
                b.insert(key, fb);
            }
        }
        let zero = LinearForm::default();
        let diff = |i: usize, j: usize| -> LinearForm { a.get(&(i, j)).unwrap_or(&zero).sub(b.get(&(i, j)).unwrap_or(&zero)) };
        let mut a_plus = BTreeMap::new();
        let mut a_minus = BTreeMap::new();
        for &(i, j) in a.keys() {
            a_plus.insert((i, j), diff(i, j).add(&diff(j, i)));
            a_minus.insert((i, j), diff(i, j).sub(&diff(j, i)));
        }
        let r = ScalarFraction::r();
        let v = d.checked_div(&(&r * &q_plus_inv()))?;
        let w = (&r * &q2_minus_inv()).recip()?;
        let mut ws = Self { k, kbar: kb, alpha: al, unknowns, a, b, a_plus, a_minus, abar: BTreeMap::new(), v, w };
        ws.abar = ws.compute_abar()?;
        Ok(ws)
    }

    fn e_form(&self, i: usize, j: usize) -> LinearForm {
        if self.unknowns.contains(&(i, j)) {
            LinearForm::unknown((i, j), ScalarFraction::one())
        } else {
            LinearForm::default()
        }
    }

    fn minus(&self, i: usize, j: usize) -> LinearForm {
        self.a_minus.get(&(i, j)).cloned().unwrap_or_default()
    }

    /// Every `abar_ij` with `i < j` and `i + j <= k`.
    fn compute_abar(&self) -> Result<BTreeMap<Idx, LinearForm>> {
        let c = q2_minus_inv();
        let kb = self.kbar;
        let mut out: BTreeMap<Idx, LinearForm> = BTreeMap::new();
        for total in 1..=self.k + 1 {
            for i in 0..total {
                let j = total - i;
                if i >= j {
                    continue;
                }
                let val = if i > 0 {
                    match out.get(&(i - 1, j - 1)) {
                        Some(prev) => self.minus(i, j).add(prev),
                        None => continue,
                    }
                } else if j == 1 + kb {
                    self.minus(0, j).add_scaled(&self.e_form(0, kb), &c)
                } else if j > 1 + kb {
                    match out.get(&(0, j - 2)) {
                        Some(prev) => self.minus(0, j).add_scaled(&self.e_form(0, j - 1), &c).add(prev),
                        None => continue,
                    }
                } else {
                    continue;
                };
                out.insert((i, j), val);
            }
        }
        Ok(out)
    }

    pub fn abar(&self, i: usize, j: usize) -> Result<LinearForm> {
        self.abar
            .get(&(i, j))
            .cloned()
            .ok_or_else(|| Error::Construction(format!("abar_{i},{j} is not defined at level {}", self.k)))
    }

    /// `s_l = sum_{i=0}^{l-kbar} a+_{i,2l+1-kbar-i} + [kbar = 1] a+_{ll} / 2`.
    pub fn s_form(&self, l: usize) -> LinearForm {
        let kb = self.kbar;
        let s = 2 * l + 1 - kb;
        let mut acc = LinearForm::default();
        if l >= kb {
            for i in 0..=l - kb {
                acc = acc.add(&self.a_plus.get(&(i, s - i)).cloned().unwrap_or_default());
            }
        }
        if kb == 1 {
            let half = ScalarFraction::from_int(2).recip().expect("nonzero");
            acc = acc.add_scaled(&self.a_plus.get(&(l, l)).cloned().unwrap_or_default(), &half);
        }
        acc
    }

    /// The reduced system in the `e_ij`.
    pub fn equations(&self) -> Result<Vec<Equation>> {
        let c = q2_minus_inv();
        let kb = self.kbar;
        let mut eqs = Vec::new();
        if self.alpha >= kb {
            for i in 0..=self.alpha - kb {
                eqs.push(Equation { label: format!("abar_{i},{}", self.k - i), form: self.abar(i, self.k - i)? });
            }
        }
        for l in 1..=self.alpha {
            let form = self.abar(l - 1, l + kb)?.add_scaled(&self.e_form(l, l + kb), &-c.clone());
            eqs.push(Equation { label: format!("diag_{l}"), form });
            for i in 1..l {
                let form = self
                    .abar(i, 2 * l - 1 + kb - i)?
                    .sub(&self.abar(i - 1, 2 * l + kb - i)?)
                    .add_scaled(&self.e_form(i, 2 * l + kb - i), &c);
                eqs.push(Equation { label: format!("step_{i},{l}"), form });
            }
        }
        Ok(eqs)
    }

    fn rows(&self) -> Result<(Vec<Vec<ScalarFraction>>, Vec<ScalarFraction>)> {
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for eq in self.equations()? {
            if eq.form.is_zero() {
                continue;
            }
            rows.push(self.unknowns.iter().map(|u| eq.form.coeffs.get(u).cloned().unwrap_or_default()).collect());
            rhs.push(-eq.form.constant.clone());
        }
        Ok((rows, rhs))
    }

    pub fn report(&self) -> Result<SystemReport> {
        let (rows, rhs) = self.rows()?;
        let mut distinct: Vec<(Vec<ScalarFraction>, ScalarFraction)> = Vec::new();
        for (r, b) in rows.iter().zip(&rhs) {
            if !distinct.iter().any(|(r2, b2)| r2 == r && b2 == b) {
                distinct.push((r.clone(), b.clone()));
            }
        }
        let rank = linalg::rank(&rows);
        let aug: Vec<Vec<ScalarFraction>> = rows
            .iter()
            .zip(&rhs)
            .map(|(r, b)| {
                let mut r = r.clone();
                r.push(b.clone());
                r
            })
            .collect();
        let consistent = rows.is_empty() || linalg::rank(&aug) == rank;
        Ok(SystemReport { unknowns: self.unknowns.len(), equations: rows.len(), distinct: distinct.len(), rank, consistent })
    }

    /// Solves for the `e_ij` (unique solution required).
    pub fn solve_e(&self) -> Result<BTreeMap<Idx, ScalarFraction>> {
        if self.unknowns.is_empty() {
            return Ok(BTreeMap::new());
        }
        let (rows, rhs) = self.rows()?;
        if rows.is_empty() {
            return Err(Error::Construction(format!("no equations for {} unknowns at level {}", self.unknowns.len(), self.k)));
        }
        let x = linalg::solve_unique(&rows, &rhs).map_err(|e| Error::Construction(format!("level {}: {e}", self.k)))?;
        Ok(self.unknowns.iter().cloned().zip(x).collect())
    }
}

/// Coefficients of `G_{k+1}` from the closed-form route.
pub fn solve(k: usize, constant: &ScalarFraction) -> Result<CoefficientTable> {
    let ws = ConstraintWorkspace::new(k)?;
    let e = ws.solve_e()?;
    let eval_all = |m: &BTreeMap<Idx, LinearForm>| -> BTreeMap<Idx, ScalarFraction> {
        m.iter().map(|(key, f)| (*key, f.eval(&e))).collect()
    };
    let mut a = eval_all(&ws.a);
    let mut b = eval_all(&ws.b);
    for key in ab_indices(k) {
        a.entry(key).or_default();
        b.entry(key).or_default();
    }
    Ok(CoefficientTable { k, a, b, e, constant: constant.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{beta, parse_scalar};

    fn s(t: &str) -> ScalarFraction {
        parse_scalar(t).unwrap()
    }

    #[test]
    fn level_zero() {
        let t = solve(0, &ScalarFraction::zero()).unwrap();
        assert_eq!(t.a[&(0, 0)], s("-1/q"));
        assert_eq!(t.b[&(0, 0)], s("q"));
        assert!(t.e.is_empty());
    }

    #[test]
    fn level_one() {
        let t = solve(1, &ScalarFraction::zero()).unwrap();
        let bt = beta();
        let over = |x: ScalarFraction| x.checked_div(&bt).unwrap();
        assert_eq!(t.e[&(0, 0)], over(-q_minus_inv()));
        assert_eq!(t.a[&(0, 1)], over(s("-1/q")));
        assert_eq!(t.b[&(0, 1)], over(s("q")));
        assert_eq!(t.a[&(1, 0)], over(s("-q^-3")));
        assert_eq!(t.b[&(1, 0)], over(s("q^3")));
    }

    #[test]
    fn level_two() {
        let t = solve(2, &ScalarFraction::zero()).unwrap();
        let bm1 = &beta() - &ScalarFraction::one();
        let over = |x: ScalarFraction| x.checked_div(&bm1).unwrap();
        assert_eq!(t.e[&(0, 1)], over(-q_minus_inv()));
        assert_eq!(t.a[&(1, 1)], over(s("-1/q")));
        assert_eq!(t.b[&(1, 1)], over(s("q")));
        assert_eq!(t.a[&(2, 0)], over(&s("q^-2") * &q_minus_inv()));
        assert_eq!(t.b[&(2, 0)], over(&s("q^2") * &q_minus_inv()));
        for key in [(0, 0), (0, 2)] {
            assert!(t.a[&key].is_zero() && t.b[&key].is_zero());
        }
    }

    #[test]
    fn reduced_system_has_full_rank() {
        for k in 0..=10 {
            let rep = ConstraintWorkspace::new(k).unwrap().report().unwrap();
            assert_eq!(rep.rank, rep.unknowns, "k = {k}");
            assert!(rep.consistent, "k = {k}");
        }
    }

    #[test]
    fn auxiliary_sums_vanish_identically() {
        for k in 1..=8 {
            let ws = ConstraintWorkspace::new(k).unwrap();
            let e = ws.solve_e().unwrap();
            for l in 1..=ws.alpha {
                let delta = if l == ws.alpha { q_plus_inv() } else { ScalarFraction::zero() };
                assert_eq!(&ws.s_form(l).eval(&e) + &delta, ScalarFraction::zero(), "k = {k}, l = {l}");
            }
            assert_eq!(ws.v, &ws.w * &(&q_minus_inv() * &q_minus_inv()));
        }
    }
}
