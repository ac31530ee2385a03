//! Recursive construction of the generators `W_{-k}`, `W_{k+1}`, `G_{k+1}`
//! and `G~_{k+1}` as polynomials in `A` and `A*`.
//!
//! Level `k` produces `G_{k+1}` from the ansatz (a quadratic combination of
//! lower generators whose coefficients come from one of two independent
//! backends), then `W_{-k-1}` and `W_{k+2}` from the q-commutator recursions.

pub mod closed_form;
pub mod projection;

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::ncpoly::{Alphabet, Letter, NCPolynomial};
use crate::reps::{evaluate, standard_fleet, MatrixRep};
use crate::scalars::ScalarFraction;

/// `kbar = 1` for even `k`, `0` for odd `k`.
pub fn kbar(k: usize) -> usize {
    usize::from(k.is_multiple_of(2))
}

/// `alpha = floor(k / 2)`.
pub fn alpha(k: usize) -> usize {
    k / 2
}

/// Index pairs carrying `a_ij`, `b_ij` at level `k`: `i + j = 2l + 1 - kbar`.
pub fn ab_indices(k: usize) -> Vec<(usize, usize)> {
    let kb = kbar(k);
    let mut out = Vec::new();
    for l in 0..=alpha(k) {
        let s = 2 * l + 1 - kb;
        out.extend((0..=s).map(|i| (i, s - i)));
    }
    out
}

/// Index pairs carrying `e_ij` at level `k`: `i + j = 2l + kbar`, `i <= j`.
pub fn e_indices(k: usize) -> Vec<(usize, usize)> {
    let kb = kbar(k);
    let mut out = Vec::new();
    if alpha(k) < kb {
        return out;
    }
    for l in 0..=alpha(k) - kb {
        let s = 2 * l + kb;
        out.extend((0..=s / 2).map(|i| (i, s - i)));
    }
    out
}

/// Constants `a_n` attached to `G_n` (`n >= 1`); unset entries are zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AConstants(BTreeMap<usize, BigRational>);

impl AConstants {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn set(&mut self, n: usize, value: BigRational) -> Result<()> {
        if n == 0 {
            return Err(Error::InvalidArgument("constants are indexed from a_1".into()));
        }
        if value.is_zero() {
            self.0.remove(&n);
        } else {
            self.0.insert(n, value);
        }
        Ok(())
    }

    pub fn with(mut self, n: usize, value: BigRational) -> Result<Self> {
        self.set(n, value)?;
        Ok(self)
    }

    pub fn get(&self, n: usize) -> ScalarFraction {
        self.0.get(&n).map(ScalarFraction::from_rational).unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&usize, &BigRational)> {
        self.0.iter()
    }
}

/// How rho appears in the output polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RhoPolicy {
    /// Keep rho as the symbol `r`.
    Formal,
    /// Substitute a fixed function of `q`.
    Explicit(ScalarFraction),
}

/// Symbolic coefficient in the ansatz for `G_{k+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CoeffSymbol {
    A(usize, usize),
    B(usize, usize),
    E(usize, usize),
    /// The constant `a_{k+1}`.
    Const(usize),
}

impl fmt::Display for CoeffSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffSymbol::A(i, j) => write!(f, "a_{i}{j}"),
            CoeffSymbol::B(i, j) => write!(f, "b_{i}{j}"),
            CoeffSymbol::E(i, j) => write!(f, "e_{i}{j}"),
            CoeffSymbol::Const(n) => write!(f, "a_{n}"),
        }
    }
}

/// The ansatz for `G_{k+1}` over the abstract alphabet: a list of
/// (coefficient symbol, abstract polynomial) pairs.
#[derive(Clone, Debug)]
pub struct AnsatzTemplate {
    pub k: usize,
    pub terms: Vec<(CoeffSymbol, NCPolynomial)>,
}

fn word(letters: &[Letter]) -> NCPolynomial {
    NCPolynomial::monomial(Alphabet::Abstract, letters.to_vec(), ScalarFraction::one())
}

/// Builds the ansatz for `G_{k+1}`:
/// `sum a_ij Wm(i)Wp(j) + b_ij Wp(i)Wm(j)`
/// `+ sum e_ij (q^2 Wm(i)Wm(j) + q^-2 Wp(i)Wp(j) + rho^-1 G(j)Gt(i)) + a_{k+1}`.
pub fn ansatz_template(k: usize) -> AnsatzTemplate {
    let idx = |i: usize| i as u16;
    let mut terms = Vec::new();
    for (i, j) in ab_indices(k) {
        terms.push((CoeffSymbol::A(i, j), word(&[Letter::Wm(idx(i)), Letter::Wp(idx(j))])));
        terms.push((CoeffSymbol::B(i, j), word(&[Letter::Wp(idx(i)), Letter::Wm(idx(j))])));
    }
    let inv_r = ScalarFraction::r().recip().expect("r is nonzero");
    for (i, j) in e_indices(k) {
        let f = word(&[Letter::Wm(idx(i)), Letter::Wm(idx(j))])
            .scale(&ScalarFraction::q_pow(2))
            .add_scaled(&word(&[Letter::Wp(idx(i)), Letter::Wp(idx(j))]), &ScalarFraction::q_pow(-2))
            .add_scaled(&word(&[Letter::G(idx(j)), Letter::Gt(idx(i))]), &inv_r);
        terms.push((CoeffSymbol::E(i, j), f));
    }
    terms.push((CoeffSymbol::Const(k + 1), NCPolynomial::one(Alphabet::Abstract)));
    AnsatzTemplate { k, terms }
}

impl AnsatzTemplate {
    /// Replaces every symbol by its value from `coeffs`.
    pub fn instantiate(&self, coeffs: &CoefficientTable) -> Result<NCPolynomial> {
        if coeffs.k != self.k {
            return Err(Error::InvalidArgument(format!("table for level {} used at level {}", coeffs.k, self.k)));
        }
        let mut out = NCPolynomial::zero(Alphabet::Abstract);
        for (sym, poly) in &self.terms {
            out.add_assign_scaled(poly, &coeffs.value(*sym));
        }
        Ok(out)
    }
}

impl fmt::Display for AnsatzTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(|(s, p)| format!("{s}*[{p}]")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Solved coefficients of the ansatz at one level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientTable {
    pub k: usize,
    pub a: BTreeMap<(usize, usize), ScalarFraction>,
    pub b: BTreeMap<(usize, usize), ScalarFraction>,
    pub e: BTreeMap<(usize, usize), ScalarFraction>,
    /// `a_{k+1}`
    pub constant: ScalarFraction,
}

impl CoefficientTable {
    pub fn value(&self, sym: CoeffSymbol) -> ScalarFraction {
        let get = |m: &BTreeMap<(usize, usize), ScalarFraction>, i, j| m.get(&(i, j)).cloned().unwrap_or_default();
        match sym {
            CoeffSymbol::A(i, j) => get(&self.a, i, j),
            CoeffSymbol::B(i, j) => get(&self.b, i, j),
            CoeffSymbol::E(i, j) => get(&self.e, i, j),
            CoeffSymbol::Const(_) => self.constant.clone(),
        }
    }

    /// All `(symbol, value)` pairs in a stable order.
    pub fn entries(&self) -> Vec<(CoeffSymbol, ScalarFraction)> {
        let mut out = Vec::new();
        out.extend(self.a.iter().map(|(&(i, j), v)| (CoeffSymbol::A(i, j), v.clone())));
        out.extend(self.b.iter().map(|(&(i, j), v)| (CoeffSymbol::B(i, j), v.clone())));
        out.extend(self.e.iter().map(|(&(i, j), v)| (CoeffSymbol::E(i, j), v.clone())));
        out.push((CoeffSymbol::Const(self.k + 1), self.constant.clone()));
        out
    }

    /// Whether no coefficient involves rho.
    pub fn is_rho_free(&self) -> bool {
        self.a.values().chain(self.b.values()).chain(self.e.values()).all(ScalarFraction::is_q_only)
    }
}

/// Which route computes the ansatz coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    /// Solved formulas plus the reduced linear system in the `e_ij`.
    ClosedForm,
    /// Level-k relations imposed in a fleet of representations.
    Projection,
}

/// Build settings.
#[derive(Clone, Debug)]
pub struct BuildOptions {
    pub backend: Backend,
    /// Representations used for the companion checks (and by the projection
    /// backend, which adds its own fleet on top).
    pub check_fleet: Vec<MatrixRep>,
}

impl BuildOptions {
    pub fn new(backend: Backend) -> Result<Self> {
        Ok(Self { backend, check_fleet: standard_fleet()?.into_iter().take(2).collect() })
    }
}

/// All generators up to level `k_max`, over the concrete alphabet.
#[derive(Clone, Debug)]
pub struct GeneratorTable {
    pub k_max: usize,
    /// `wm[i] = W_{-i}`, `i = 0..=k_max+1`
    pub wm: Vec<NCPolynomial>,
    /// `wp[i] = W_{i+1}`, `i = 0..=k_max+1`
    pub wp: Vec<NCPolynomial>,
    /// `g[i] = G_{i+1}`, `i = 0..=k_max`
    pub g: Vec<NCPolynomial>,
    /// `gt[i] = G~_{i+1}`, `i = 0..=k_max`
    pub gt: Vec<NCPolynomial>,
    pub coeffs: Vec<CoefficientTable>,
    pub a_consts: AConstants,
    pub rho: RhoPolicy,
}

impl GeneratorTable {
    /// `W_n` for any integer `n` within range.
    pub fn w(&self, n: i64) -> Result<&NCPolynomial> {
        let out = if n <= 0 { self.wm.get((-n) as usize) } else { self.wp.get((n - 1) as usize) };
        out.ok_or_else(|| Error::InvalidArgument(format!("W_{n} outside the table (k_max = {})", self.k_max)))
    }

    /// `G_n`, `n >= 1`.
    pub fn g_n(&self, n: usize) -> Result<&NCPolynomial> {
        n.checked_sub(1).and_then(|i| self.g.get(i)).ok_or_else(|| Error::InvalidArgument(format!("G_{n} outside the table")))
    }

    /// `G~_n`, `n >= 1`.
    pub fn gt_n(&self, n: usize) -> Result<&NCPolynomial> {
        n.checked_sub(1).and_then(|i| self.gt.get(i)).ok_or_else(|| Error::InvalidArgument(format!("G~_{n} outside the table")))
    }

    /// Concrete image of an abstract letter.
    pub fn image(&self, l: Letter) -> Result<NCPolynomial> {
        let pick = |v: &Vec<NCPolynomial>, i: u16| {
            v.get(i as usize).cloned().ok_or_else(|| Error::InvalidArgument(format!("letter {l} outside the table")))
        };
        match l {
            Letter::Wm(i) => pick(&self.wm, i),
            Letter::Wp(i) => pick(&self.wp, i),
            Letter::G(i) => pick(&self.g, i),
            Letter::Gt(i) => pick(&self.gt, i),
            Letter::A | Letter::B => Ok(NCPolynomial::letter(l)),
        }
    }

    /// Maps an abstract polynomial to the concrete alphabet.
    pub fn substitute(&self, p: &NCPolynomial) -> Result<NCPolynomial> {
        p.substitute(|l| self.image(l))
    }

    /// The value of rho under this table's policy.
    pub fn rho_value(&self) -> ScalarFraction {
        match &self.rho {
            RhoPolicy::Formal => ScalarFraction::r(),
            RhoPolicy::Explicit(v) => v.clone(),
        }
    }

    /// Checks that `rep` can evaluate this table.
    pub fn compatible_with(&self, rep: &MatrixRep) -> Result<()> {
        if let RhoPolicy::Explicit(v) = &self.rho {
            let lhs = v.specialize(rep.q_point.as_ref(), None)?;
            if lhs != rep.rho {
                return Err(Error::InvalidArgument(format!(
                    "table built for rho = {v} cannot be evaluated on {} (rho = {})",
                    rep.id, rep.rho
                )));
            }
        }
        Ok(())
    }
}

/// Builds the table with the closed-form backend and formal rho.
pub fn build_generator_table(k_max: usize, a_consts: &AConstants, rho: RhoPolicy) -> Result<GeneratorTable> {
    build_with_options(k_max, a_consts, rho, &BuildOptions::new(Backend::ClosedForm)?)
}

/// Builds the table level by level.
///
/// The recursion always runs with formal rho; an explicit policy is applied
/// to the finished polynomials.
pub fn build_with_options(k_max: usize, a_consts: &AConstants, rho: RhoPolicy, opts: &BuildOptions) -> Result<GeneratorTable> {
    let mut table = GeneratorTable {
        k_max: 0,
        wm: vec![NCPolynomial::a()],
        wp: vec![NCPolynomial::b()],
        g: Vec::new(),
        gt: Vec::new(),
        coeffs: Vec::new(),
        a_consts: a_consts.clone(),
        rho: RhoPolicy::Formal,
    };
    let mut proj_state = match opts.backend {
        Backend::Projection => Some(projection::ProjectionState::new()?),
        Backend::ClosedForm => None,
    };
    for k in 0..=k_max {
        let constant = a_consts.get(k + 1);
        let coeffs = match proj_state.as_mut() {
            Some(state) => state.solve_level(&table, k, &constant)?,
            None => closed_form::solve(k, &constant)?,
        };
        extend_g(&mut table, coeffs)?;
        extend_w(&mut table, k, &opts.check_fleet)?;
        if let Some(state) = proj_state.as_mut() {
            state.absorb_level(&table, k)?;
        }
    }
    table.k_max = k_max;
    if let RhoPolicy::Explicit(v) = &rho {
        let f = |c: &ScalarFraction| c.specialize(None, Some(v));
        for poly in table.wm.iter_mut().chain(table.wp.iter_mut()).chain(table.g.iter_mut()).chain(table.gt.iter_mut()) {
            *poly = poly.try_map_coeffs(f)?;
        }
    }
    table.rho = rho;
    Ok(table)
}

/// Appends `G_{k+1}` and `G~_{k+1}` from solved coefficients.
fn extend_g(table: &mut GeneratorTable, coeffs: CoefficientTable) -> Result<()> {
    let k = coeffs.k;
    if table.g.len() != k {
        return Err(Error::Construction(format!("level {k} requested with {} levels built", table.g.len())));
    }
    let abstract_g = ansatz_template(k).instantiate(&coeffs)?;
    let g = table.substitute(&abstract_g)?;
    table.gt.push(g.exchange());
    table.g.push(g);
    table.coeffs.push(coeffs);
    Ok(())
}

/// Appends `W_{-k-1} = W_{k+1} + rho^-1 [W_0, G_{k+1}]_q` and
/// `W_{k+2} = exchange(W_{-k-1})`, then checks in `fleet` that the companion
/// forms `[G~_{k+1}, W_0]_q` and `[G_{k+1}, W_1]_q` give the same elements.
pub fn extend_w(table: &mut GeneratorTable, k: usize, fleet: &[MatrixRep]) -> Result<()> {
    if table.wm.len() != k + 1 || table.g.len() != k + 1 {
        return Err(Error::Construction(format!("extend_w at level {k} out of order")));
    }
    let inv_r = ScalarFraction::r().recip()?;
    let g = &table.g[k];
    let gt = &table.gt[k];
    let wm_next = table.wp[k].add_scaled(&NCPolynomial::a().q_commutator(g, 1)?, &inv_r);
    let wp_next = wm_next.exchange();
    for rep in fleet {
        let mg = evaluate(g, rep)?;
        let mgt = evaluate(gt, rep)?;
        let (a, b) = (&rep.mat_a, &rep.mat_b);
        if a.q_commutator(&mg, 1) != mgt.q_commutator(a, 1) {
            return Err(Error::Construction(format!("[W0,G_{}]_q != [G~_{},W0]_q on {}", k + 1, k + 1, rep.id)));
        }
        if mg.q_commutator(b, 1) != b.q_commutator(&mgt, 1) {
            return Err(Error::Construction(format!("[G_{},W1]_q != [W1,G~_{}]_q on {}", k + 1, k + 1, rep.id)));
        }
    }
    table.wm.push(wm_next);
    table.wp.push(wp_next);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_set_sizes() {
        for k in 0..12 {
            let kb = kbar(k);
            let a = alpha(k);
            let expect_e = if a >= kb { (a - kb + 1) * (a - kb + 2) / 2 } else { 0 };
            assert_eq!(e_indices(k).len(), expect_e, "k = {k}");
            assert!(ab_indices(k).iter().all(|&(i, j)| i + j <= k));
            assert!(e_indices(k).iter().all(|&(i, j)| i <= j && i + j < k.max(1)));
        }
        assert_eq!(ab_indices(0), vec![(0, 0)]);
        assert_eq!(e_indices(1), vec![(0, 0)]);
        assert_eq!(e_indices(2), vec![(0, 1)]);
    }

    #[test]
    fn template_mentions_only_lower_generators() {
        for k in 0..6 {
            let t = ansatz_template(k);
            for (_, p) in &t.terms {
                for (w, _) in p.terms() {
                    for l in w {
                        match *l {
                            Letter::Wm(i) | Letter::Wp(i) => assert!(i as usize <= k),
                            Letter::G(i) | Letter::Gt(i) => assert!((i as usize) < k),
                            _ => unreachable!(),
                        }
                    }
                }
            }
        }
    }
}
