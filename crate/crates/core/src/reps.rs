//! Finite-dimensional representations of the q-Dolan-Grady relations.
//!
//! Every [`MatrixRep`] is gated: it is only constructed after both cubic
//! relations were checked exactly and the value of rho was read off.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ncpoly::{Alphabet, Letter, NCPolynomial};
use crate::scalars::upoly::{self, UPoly};
use crate::scalars::{parse_scalar, MultiPoly, ScalarFraction};

/// Square matrix over `Q(q, rho)`, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    n: usize,
    data: Vec<ScalarFraction>,
}

impl ExactMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![ScalarFraction::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, &ScalarFraction::one())
    }

    pub fn scalar(n: usize, c: &ScalarFraction) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    pub fn diagonal(entries: &[ScalarFraction]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n);
        for (i, x) in entries.iter().enumerate() {
            m.data[i * n + i] = x.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<ScalarFraction>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("matrix rows must form a square".into()));
        }
        Ok(Self { n, data: rows.into_iter().flatten().collect() })
    }

    pub(crate) fn from_data(n: usize, data: Vec<ScalarFraction>) -> Self {
        debug_assert_eq!(data.len(), n * n);
        Self { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &ScalarFraction {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: ScalarFraction) {
        self.data[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[ScalarFraction] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(ScalarFraction::is_zero)
    }

    fn check_dim(&self, other: &Self) {
        assert_eq!(self.n, other.n, "matrix dimension mismatch");
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_dim(other);
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let x = &self.data[i * n + k];
                if x.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let y = &other.data[k * n + j];
                    if !y.is_zero() {
                        out.data[i * n + j] = &out.data[i * n + j] + &(x * y);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(other, &ScalarFraction::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(other, &-ScalarFraction::one())
    }

    /// `self + c * other`
    pub fn add_scaled(&self, other: &Self, c: &ScalarFraction) -> Self {
        self.check_dim(other);
        let data = self.data.iter().zip(&other.data).map(|(x, y)| if y.is_zero() { x.clone() } else { x + &(y * c) }).collect();
        Self { n: self.n, data }
    }

    pub fn scale(&self, c: &ScalarFraction) -> Self {
        Self { n: self.n, data: self.data.iter().map(|x| x * c).collect() }
    }

    /// `q^s XY - q^-s YX`
    pub fn q_commutator(&self, other: &Self, s: i32) -> Self {
        let xy = self.mul(other);
        let yx = other.mul(self);
        xy.scale(&ScalarFraction::q_pow(s)).add_scaled(&yx, &-ScalarFraction::q_pow(-s))
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn try_map(&self, f: impl Fn(&ScalarFraction) -> Result<ScalarFraction>) -> Result<Self> {
        Ok(Self { n: self.n, data: self.data.iter().map(f).collect::<Result<_>>()? })
    }

    pub fn block_diag(blocks: &[&ExactMatrix]) -> Self {
        let n = blocks.iter().map(|b| b.n).sum();
        let mut out = Self::zeros(n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.n {
                for j in 0..b.n {
                    out.set(off + i, off + j, b.get(i, j).clone());
                }
            }
            off += b.n;
        }
        out
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.n;
        let mut m: Vec<Vec<ScalarFraction>> = (0..n)
            .map(|i| {
                let mut row: Vec<_> = self.data[i * n..(i + 1) * n].to_vec();
                row.extend((0..n).map(|j| if i == j { ScalarFraction::one() } else { ScalarFraction::zero() }));
                row
            })
            .collect();
        let pivots = crate::linalg::rref(&mut m);
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::InvalidArgument("matrix is singular".into()));
        }
        Ok(Self { n, data: m.into_iter().flat_map(|row| row[n..].to_vec()).collect() })
    }

    /// `P^-1 * self * P`
    pub fn conjugate(&self, p: &Self) -> Result<Self> {
        Ok(p.inverse()?.mul(self).mul(p))
    }

    /// Entries as rows of rationals; `None` if any entry is not constant.
    pub fn as_rational_rows(&self) -> Option<Vec<Vec<BigRational>>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j).as_rational()).collect()).collect()
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Left side of the cubic relation in `a`: `[a,[a,[a,b]_q]_{q^-1}]`.
pub fn qdg_cubic(a: &ExactMatrix, b: &ExactMatrix) -> ExactMatrix {
    a.commutator(&a.q_commutator(&a.q_commutator(b, 1), -1))
}

/// Reads rho off a pair of matrices satisfying both cubic relations.
///
/// Fails when `[A, A*]` vanishes (rho undetermined) or when either relation
/// does not hold with a single rho.
pub fn extract_rho(mat_a: &ExactMatrix, mat_b: &ExactMatrix) -> Result<ScalarFraction> {
    if mat_a.dim() != mat_b.dim() {
        return Err(Error::DimensionMismatch(format!("{} vs {}", mat_a.dim(), mat_b.dim())));
    }
    let c = mat_a.commutator(mat_b);
    let Some(idx) = c.entries().iter().position(|x| !x.is_zero()) else {
        return Err(Error::InvalidRepresentation("[A, A*] = 0 leaves rho undetermined".into()));
    };
    let x = qdg_cubic(mat_a, mat_b);
    let rho = x.entries()[idx].checked_div(&c.entries()[idx])?;
    if x != c.scale(&rho) {
        return Err(Error::InvalidRepresentation("cubic relation in A fails".into()));
    }
    let y = qdg_cubic(mat_b, mat_a);
    if y != c.scale(&-rho.clone()) {
        return Err(Error::InvalidRepresentation("cubic relation in A* fails".into()));
    }
    Ok(rho)
}

/// Construction parameters kept for reporting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RepKind {
    PairD2 { a: BigRational, b: BigRational },
    Leonard { d: usize, a: BigRational, b: BigRational, c: BigRational },
    AwTunedD2 { a: BigRational, sign: i8 },
    Scalar { a: BigRational, b: BigRational },
    DolanGrady2,
    DirectSum(Vec<RepKind>),
    Custom,
}

/// A verified pair `(A, A*)` together with its rho.
///
/// `q_point` is set when the pair only realizes the relations after
/// specializing `q` to that rational value (e.g. the undeformed `q = 1` case).
#[derive(Clone, Debug)]
pub struct MatrixRep {
    pub id: String,
    pub mat_a: ExactMatrix,
    pub mat_b: ExactMatrix,
    pub rho: ScalarFraction,
    pub q_point: Option<BigRational>,
    pub kind: RepKind,
}

impl MatrixRep {
    /// Gates an arbitrary pair through [`extract_rho`].
    pub fn from_matrices(
        id: impl Into<String>,
        mat_a: ExactMatrix,
        mat_b: ExactMatrix,
        q_point: Option<BigRational>,
    ) -> Result<Self> {
        let (sa, sb) = match &q_point {
            Some(qv) => {
                let f = |x: &ScalarFraction| x.specialize(Some(qv), None);
                (mat_a.try_map(f)?, mat_b.try_map(f)?)
            }
            None => (mat_a, mat_b),
        };
        let rho = match &q_point {
            Some(qv) => extract_rho_at(&sa, &sb, qv)?,
            None => extract_rho(&sa, &sb)?,
        };
        Ok(Self { id: id.into(), mat_a: sa, mat_b: sb, rho, q_point, kind: RepKind::Custom })
    }

    pub fn dim(&self) -> usize {
        self.mat_a.dim()
    }

    fn with_kind(mut self, kind: RepKind) -> Self {
        self.kind = kind;
        self
    }

    /// One-dimensional pair `(a), (b)`. Both cubic relations hold trivially,
    /// so rho must be supplied.
    pub fn scalar(a: &BigRational, b: &BigRational, rho: ScalarFraction) -> Self {
        Self {
            id: format!("scalar:a={a},b={b},rho={rho}"),
            mat_a: ExactMatrix::diagonal(&[ScalarFraction::from_rational(a)]),
            mat_b: ExactMatrix::diagonal(&[ScalarFraction::from_rational(b)]),
            rho,
            q_point: None,
            kind: RepKind::Scalar { a: a.clone(), b: b.clone() },
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.rho != other.rho {
            return Err(Error::InvalidRepresentation(format!("rho mismatch: {} vs {}", self.rho, other.rho)));
        }
        if self.q_point != other.q_point {
            return Err(Error::InvalidRepresentation("q specialization mismatch".into()));
        }
        let mut kinds = Vec::new();
        for r in [self, other] {
            match &r.kind {
                RepKind::DirectSum(v) => kinds.extend(v.iter().cloned()),
                k => kinds.push(k.clone()),
            }
        }
        Ok(Self {
            id: format!("dsum:({})+({})", self.id, other.id),
            mat_a: ExactMatrix::block_diag(&[&self.mat_a, &other.mat_a]),
            mat_b: ExactMatrix::block_diag(&[&self.mat_b, &other.mat_b]),
            rho: self.rho.clone(),
            q_point: self.q_point.clone(),
            kind: RepKind::DirectSum(kinds),
        })
    }

    /// Specializes a coefficient the way [`evaluate`] does.
    pub fn specialize_scalar(&self, c: &ScalarFraction) -> Result<ScalarFraction> {
        c.specialize(self.q_point.as_ref(), Some(&self.rho))
    }
}

fn extract_rho_at(a: &ExactMatrix, b: &ExactMatrix, q: &BigRational) -> Result<ScalarFraction> {
    let spec = |m: ExactMatrix| m.try_map(|x| x.specialize(Some(q), None));
    let c = a.commutator(b);
    let Some(idx) = c.entries().iter().position(|x| !x.is_zero()) else {
        return Err(Error::InvalidRepresentation("[A, A*] = 0 leaves rho undetermined".into()));
    };
    let x = spec(qdg_cubic(a, b))?;
    let y = spec(qdg_cubic(b, a))?;
    let rho = x.entries()[idx].checked_div(&c.entries()[idx])?;
    if x != c.scale(&rho) || y != c.scale(&-rho.clone()) {
        return Err(Error::InvalidRepresentation(format!("cubic relations fail at q = {q}")));
    }
    Ok(rho)
}

fn rat(x: &BigRational) -> ScalarFraction {
    ScalarFraction::from_rational(x)
}

/// `x q^n + x^-1 q^-n`
fn dual_power(x: &BigRational, n: i32) -> ScalarFraction {
    &(&rat(x) * &ScalarFraction::q_pow(n)) + &(&rat(&x.recip()) * &ScalarFraction::q_pow(-n))
}

fn nonzero(name: &str, x: &BigRational) -> Result<()> {
    if x.is_zero() {
        return Err(Error::InvalidArgument(format!("{name} must be nonzero")));
    }
    Ok(())
}

/// Two-dimensional pair: `A = diag(theta_0, theta_1)` and `A*` the companion
/// matrix with eigenvalues `mu_0, mu_1`, where
/// `theta_i = a q^{2i-1} + a^-1 q^{1-2i}` and likewise `mu_i` with `b`.
pub fn pair_d2(a: &BigRational, b: &BigRational) -> Result<MatrixRep> {
    nonzero("a", a)?;
    nonzero("b", b)?;
    let th = [dual_power(a, -1), dual_power(a, 1)];
    let mu = [dual_power(b, -1), dual_power(b, 1)];
    let mat_a = ExactMatrix::diagonal(&th);
    let mat_b = ExactMatrix::from_rows(vec![
        vec![ScalarFraction::zero(), ScalarFraction::one()],
        vec![-(&mu[0] * &mu[1]), &mu[0] + &mu[1]],
    ])?;
    let rep = MatrixRep::from_matrices(format!("d2:a={a},b={b}"), mat_a, mat_b, None)?;
    Ok(rep.with_kind(RepKind::PairD2 { a: a.clone(), b: b.clone() }))
}

/// q-Racah Leonard pair of dimension `d` in the basis diagonalizing `A`.
///
/// Built in split form (`A` lower bidiagonal, `A*` upper bidiagonal) and then
/// conjugated by the unitriangular eigenvector matrix of `A`, which makes `A`
/// diagonal and `A*` tridiagonal.
pub fn pair_leonard(d: usize, a: &BigRational, b: &BigRational, c: &BigRational) -> Result<MatrixRep> {
    if d < 2 {
        return Err(Error::InvalidArgument("Leonard pairs need dimension >= 2".into()));
    }
    nonzero("a", a)?;
    nonzero("b", b)?;
    nonzero("c", c)?;
    let diam = (d - 1) as i32;
    let q = |n: i32| ScalarFraction::q_pow(n);
    let th: Vec<_> = (0..=diam).map(|i| dual_power(a, 2 * i - diam)).collect();
    let ths: Vec<_> = (0..=diam).map(|i| dual_power(b, 2 * i - diam)).collect();
    let ab = a * b;
    let phi = |i: i32| -> ScalarFraction {
        let f1 = &q(i) - &q(-i);
        let f2 = &q(i - diam - 1) - &q(diam - i + 1);
        let f3 = &q(-i) - &(&rat(&(&ab * c)) * &q(i - diam - 1));
        let f4 = &q(-i) - &(&rat(&(&ab / c)) * &q(i - diam - 1));
        let pre = &q(diam + 1) * &rat(&ab.recip());
        pre * f1 * f2 * f3 * f4
    };
    let mut split_a = ExactMatrix::diagonal(&th);
    let mut split_b = ExactMatrix::diagonal(&ths);
    for i in 1..d {
        split_a.set(i, i - 1, ScalarFraction::one());
        let p = phi(i as i32);
        if p.is_zero() {
            return Err(Error::InvalidRepresentation(format!("degenerate Leonard parameters: phi_{i} = 0")));
        }
        split_b.set(i - 1, i, p);
    }
    // columns: eigenvectors of the lower bidiagonal split_a
    let mut p = ExactMatrix::zeros(d);
    for j in 0..d {
        let mut v = ScalarFraction::one();
        p.set(j, j, v.clone());
        for i in j + 1..d {
            let gap = &th[j] - &th[i];
            v = v.checked_div(&gap).map_err(|_| Error::InvalidRepresentation("repeated eigenvalues".into()))?;
            p.set(i, j, v.clone());
        }
    }
    let mat_a = split_a.conjugate(&p)?;
    let mat_b = split_b.conjugate(&p)?;
    let rep = MatrixRep::from_matrices(format!("leonard:d={d},a={a},b={b},c={c}"), mat_a, mat_b, None)?;
    Ok(rep.with_kind(RepKind::Leonard { d, a: a.clone(), b: b.clone(), c: c.clone() }))
}

/// Two-dimensional pair tuned to satisfy the Askey-Wilson relations with
/// a single structure constant omega. `sign` picks one of the two branches.
pub fn pair_aw_tuned(a: &BigRational, sign: i8) -> Result<MatrixRep> {
    nonzero("a", a)?;
    if a == &BigRational::one() || a == &-BigRational::one() {
        return Err(Error::InvalidArgument("a = +-1 degenerates the spectrum".into()));
    }
    if sign != 1 && sign != -1 {
        return Err(Error::InvalidArgument("sign must be +1 or -1".into()));
    }
    let s = ScalarFraction::from_int(sign as i64);
    let q = |n: i32| ScalarFraction::q_pow(n);
    let av = rat(a);
    let a2 = &av * &av;
    let one = ScalarFraction::one();
    let q2m1 = &q(2) - &one;
    let q2p1 = &q(2) + &one;
    let a2m1 = &a2 - &one;
    let z0 = -(&s * &(&(&a2 + &q(2)) * &(&(&a2 * &q(4)) - &one))).checked_div(&(&(&av * &q(3)) * &a2m1))?;
    let z1 = (&s * &(&(&q(4) - &a2) * &(&(&a2 * &q(2)) + &one))).checked_div(&(&(&av * &q(3)) * &a2m1))?;
    let y = -(&(&(&a2 + &q(2)) * &(&q2m1 * &q2m1)) * &(&(&q2p1 * &q2p1) * &(&(&a2 * &q(2)) + &one)))
        .checked_div(&(&q(6) * &(&a2m1 * &a2m1)))?;
    let mat_a = ExactMatrix::diagonal(&[dual_power(a, -1), dual_power(a, 1)]);
    let mat_b = ExactMatrix::from_rows(vec![vec![z0, ScalarFraction::one()], vec![y, z1]])?;
    let rep = MatrixRep::from_matrices(format!("aw2:a={a},s={sign}"), mat_a, mat_b, None)?;
    Ok(rep.with_kind(RepKind::AwTunedD2 { a: a.clone(), sign }))
}

/// The undeformed pair `A = diag(2, -2)`, `A* = [[0, 1], [4, 0]]` at `q = 1`,
/// which realizes the Dolan-Grady relations with rho = 16.
pub fn pair_dolan_grady() -> Result<MatrixRep> {
    let i = |x: i64| ScalarFraction::from_int(x);
    let mat_a = ExactMatrix::diagonal(&[i(2), i(-2)]);
    let mat_b = ExactMatrix::from_rows(vec![vec![i(0), i(1)], vec![i(4), i(0)]])?;
    let rep = MatrixRep::from_matrices("dg2", mat_a, mat_b, Some(BigRational::one()))?;
    Ok(rep.with_kind(RepKind::DolanGrady2))
}

/// Evaluates a concrete polynomial on a representation. Coefficients are
/// specialized to the representation's rho (and `q` point) first.
pub fn evaluate(p: &NCPolynomial, rep: &MatrixRep) -> Result<ExactMatrix> {
    evaluate_on(p, &rep.mat_a, &rep.mat_b, |c| rep.specialize_scalar(c))
}

/// Evaluates `p` on `(A, A*)` with a custom coefficient map.
pub fn evaluate_on(
    p: &NCPolynomial,
    mat_a: &ExactMatrix,
    mat_b: &ExactMatrix,
    coeff: impl Fn(&ScalarFraction) -> Result<ScalarFraction>,
) -> Result<ExactMatrix> {
    if p.alphabet() != Alphabet::Concrete {
        return Err(Error::AlphabetMismatch("evaluate expects a concrete polynomial".into()));
    }
    let mut terms: Vec<(&[Letter], ScalarFraction)> = Vec::with_capacity(p.len());
    for (w, c) in p.terms() {
        terms.push((w.as_slice(), coeff(c)?));
    }
    terms.sort_by(|x, y| x.0.cmp(y.0));
    let q_only =
        terms.iter().all(|(_, c)| c.is_q_only()) && mat_a.entries().iter().chain(mat_b.entries()).all(ScalarFraction::is_q_only);
    if q_only {
        return Ok(integral::evaluate(&terms, mat_a, mat_b));
    }
    Ok(horner(&terms, 0, mat_a, mat_b))
}

/// A matrix over `Q(q)` kept as an integral polynomial matrix over one
/// denominator. Products and sums take at most one gcd each; the zero test
/// needs none.
#[derive(Clone, Debug)]
pub struct ClearedMatrix {
    num: integral::PolyMat,
    den: UPoly,
}

impl ClearedMatrix {
    /// `None` when an entry involves rho.
    pub fn from_exact(m: &ExactMatrix) -> Option<Self> {
        if !m.entries().iter().all(ScalarFraction::is_q_only) {
            return None;
        }
        let (num, den) = integral::clear(m);
        Some(Self { num, den })
    }

    pub fn to_exact(&self) -> ExactMatrix {
        let den = MultiPoly::from_upoly(self.den.clone());
        let data = self
            .num
            .data
            .iter()
            .map(|x| ScalarFraction::new(MultiPoly::from_upoly(x.clone()), den.clone()).expect("nonzero denominator"))
            .collect();
        ExactMatrix::from_data(self.num.n, data)
    }

    pub fn dim(&self) -> usize {
        self.num.n
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self { num: self.num.mul(&other.num), den: upoly::mul(&self.den, &other.den) }
    }

    /// `self + c * other`; `c` must be free of rho.
    pub fn add_scaled(&self, other: &Self, c: &ScalarFraction) -> Self {
        assert!(c.is_q_only(), "cleared matrices take scalars in Q(q)");
        if c.is_zero() {
            return self.clone();
        }
        let cn = integral::q_part(c.numer());
        let od = upoly::mul(&other.den, &integral::q_part(c.denom()));
        if self.den == od {
            let mut num = self.num.clone();
            num.add_scaled(&other.num, &cn);
            return Self { num, den: od };
        }
        let den = integral::lcm(&self.den, &od);
        let mut num = integral::PolyMat::zeros(self.dim());
        num.add_scaled(&self.num, &upoly::div_exact(&den, &self.den).expect("lcm divides"));
        num.add_scaled(&other.num, &upoly::mul(&cn, &upoly::div_exact(&den, &od).expect("lcm divides")));
        Self { num, den }
    }

    pub fn scale(&self, c: &ScalarFraction) -> Self {
        assert!(c.is_q_only(), "cleared matrices take scalars in Q(q)");
        let mut num = integral::PolyMat::zeros(self.dim());
        num.add_scaled(&self.num, &integral::q_part(c.numer()));
        Self { num, den: upoly::mul(&self.den, &integral::q_part(c.denom())) }
    }

    pub fn is_zero(&self) -> bool {
        self.num.data.iter().all(Vec::is_empty)
    }
}

/// Evaluation over `Z[q]` with denominators cleared up front, so the only
/// gcds are taken once per output entry.
mod integral {
    use std::collections::HashMap;

    use num_bigint::BigInt;

    use super::ExactMatrix;
    use crate::ncpoly::Letter;
    use crate::scalars::upoly::{self, UPoly};
    use crate::scalars::{MultiPoly, ScalarFraction};

    #[derive(Clone, Debug, PartialEq, Eq)]
    pub(super) struct PolyMat {
        pub(super) n: usize,
        pub(super) data: Vec<UPoly>,
    }

    impl PolyMat {
        pub(super) fn zeros(n: usize) -> Self {
            Self { n, data: vec![UPoly::new(); n * n] }
        }

        pub(super) fn identity(n: usize) -> Self {
            let mut data = vec![UPoly::new(); n * n];
            for i in 0..n {
                data[i * n + i] = upoly::constant(BigInt::from(1));
            }
            Self { n, data }
        }

        pub(super) fn mul(&self, other: &Self) -> Self {
            let n = self.n;
            let mut data = vec![UPoly::new(); n * n];
            for i in 0..n {
                for k in 0..n {
                    let x = &self.data[i * n + k];
                    if x.is_empty() {
                        continue;
                    }
                    for j in 0..n {
                        let y = &other.data[k * n + j];
                        if !y.is_empty() {
                            data[i * n + j] = upoly::add(&data[i * n + j], &upoly::mul(x, y));
                        }
                    }
                }
            }
            Self { n, data }
        }

        pub(super) fn add_scaled(&mut self, other: &Self, c: &[BigInt]) {
            for (x, y) in self.data.iter_mut().zip(&other.data) {
                if !y.is_empty() {
                    *x = upoly::add(x, &upoly::mul(y, c));
                }
            }
        }
    }

    pub(super) fn q_part(x: &MultiPoly) -> UPoly {
        x.rows().first().cloned().unwrap_or_default()
    }

    pub(super) fn lcm(a: &[BigInt], b: &[BigInt]) -> UPoly {
        let g = upoly::gcd(a, b);
        upoly::mul(a, &upoly::div_exact(b, &g).expect("gcd divides"))
    }

    /// `M = M_int / D` with `M_int` integral.
    pub(super) fn clear(m: &ExactMatrix) -> (PolyMat, UPoly) {
        let mut d = upoly::constant(BigInt::from(1));
        for x in m.entries() {
            d = lcm(&d, &q_part(x.denom()));
        }
        let data = m
            .entries()
            .iter()
            .map(|x| upoly::mul(&q_part(x.numer()), &upoly::div_exact(&d, &q_part(x.denom())).expect("lcm divides")))
            .collect();
        (PolyMat { n: m.dim(), data }, d)
    }

    fn pow(p: &[BigInt], e: usize) -> UPoly {
        let mut out = upoly::constant(BigInt::from(1));
        for _ in 0..e {
            out = upoly::mul(&out, p);
        }
        out
    }

    struct Ctx<'a> {
        a: &'a PolyMat,
        b: &'a PolyMat,
        pow_a: Vec<UPoly>,
        pow_b: Vec<UPoly>,
        groups: HashMap<UPoly, PolyMat>,
    }

    impl Ctx<'_> {
        fn walk(&mut self, terms: &[(&[Letter], ScalarFraction)], depth: usize, prefix: &PolyMat, na: usize, nb: usize) {
            let mut rest = terms;
            if let Some((w, c)) = rest.first() {
                if w.len() == depth {
                    let scale = upoly::mul(&upoly::mul(&q_part(c.numer()), &self.pow_a[na]), &self.pow_b[nb]);
                    let n = prefix.n;
                    self.groups
                        .entry(q_part(c.denom()))
                        .or_insert_with(|| PolyMat { n, data: vec![UPoly::new(); n * n] })
                        .add_scaled(prefix, &scale);
                    rest = &rest[1..];
                }
            }
            let split = rest.partition_point(|(w, _)| w[depth] == Letter::A);
            let (ta, tb) = rest.split_at(split);
            if !ta.is_empty() {
                let next = prefix.mul(self.a);
                self.walk(ta, depth + 1, &next, na + 1, nb);
            }
            if !tb.is_empty() {
                let next = prefix.mul(self.b);
                self.walk(tb, depth + 1, &next, na, nb + 1);
            }
        }
    }

    /// `terms` must be sorted, with q-only coefficients and matrices.
    pub(super) fn evaluate(terms: &[(&[Letter], ScalarFraction)], a: &ExactMatrix, b: &ExactMatrix) -> ExactMatrix {
        let n = a.dim();
        let (a_int, da) = clear(a);
        let (b_int, db) = clear(b);
        let count = |l: Letter| terms.iter().map(|(w, _)| w.iter().filter(|&&x| x == l).count()).max().unwrap_or(0);
        let (max_a, max_b) = (count(Letter::A), count(Letter::B));
        // pow_a[i] = D_A^(max_a - i), so every word lands on the same denominator.
        let pow_a = (0..=max_a).map(|i| pow(&da, max_a - i)).collect();
        let pow_b = (0..=max_b).map(|i| pow(&db, max_b - i)).collect();
        let mut ctx = Ctx { a: &a_int, b: &b_int, pow_a, pow_b, groups: HashMap::new() };
        ctx.walk(terms, 0, &PolyMat::identity(n), 0, 0);
        let mut common = upoly::constant(BigInt::from(1));
        for d in ctx.groups.keys() {
            common = lcm(&common, d);
        }
        let mut total = PolyMat { n, data: vec![UPoly::new(); n * n] };
        for (d, m) in &ctx.groups {
            total.add_scaled(m, &upoly::div_exact(&common, d).expect("lcm divides"));
        }
        let den = MultiPoly::from_upoly(upoly::mul(&common, &upoly::mul(&pow(&da, max_a), &pow(&db, max_b))));
        let data = total
            .data
            .into_iter()
            .map(|x| ScalarFraction::new(MultiPoly::from_upoly(x), den.clone()).expect("nonzero denominator"))
            .collect();
        ExactMatrix::from_data(n, data)
    }
}

/// Trie evaluation: `M(T) = c_0 I + A M(T_A) + B M(T_B)` over sorted words.
fn horner(terms: &[(&[Letter], ScalarFraction)], depth: usize, a: &ExactMatrix, b: &ExactMatrix) -> ExactMatrix {
    let n = a.dim();
    let mut out = ExactMatrix::zeros(n);
    let mut rest = terms;
    if let Some((w, c)) = rest.first() {
        if w.len() == depth {
            out = ExactMatrix::scalar(n, c);
            rest = &rest[1..];
        }
    }
    let split = rest.partition_point(|(w, _)| w[depth] == Letter::A);
    let (ta, tb) = rest.split_at(split);
    if !ta.is_empty() {
        out = out.add(&a.mul(&horner(ta, depth + 1, a, b)));
    }
    if !tb.is_empty() {
        out = out.add(&b.mul(&horner(tb, depth + 1, a, b)));
    }
    out
}

fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    let parse_int = |s: &str| s.trim().parse::<BigInt>().map_err(|_| Error::Parse(format!("bad rational {text:?}")));
    match t.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(BigRational::new(parse_int(n)?, d))
        }
        None => Ok(BigRational::from_integer(parse_int(t)?)),
    }
}

fn parse_params(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    if text.trim().is_empty() {
        return Ok(out);
    }
    for part in text.split(',') {
        let (k, v) = part.split_once('=').ok_or_else(|| Error::Parse(format!("expected key=value, got {part:?}")))?;
        out.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

/// Splits `(x)+(y)+(z)` at top-level `+` signs.
fn split_sum(text: &str) -> Result<Vec<&str>> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = None;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => {
                if depth == 0 {
                    start = Some(i + 1);
                }
                depth += 1;
            }
            ')' => {
                depth -= 1;
                if depth == 0 {
                    parts.push(&text[start.take().unwrap_or(i)..i]);
                }
            }
            '+' | ' ' if depth == 0 => {}
            _ if depth == 0 => return Err(Error::Parse(format!("unexpected {ch:?} in direct sum"))),
            _ => {}
        }
        if depth < 0 {
            return Err(Error::Parse("unbalanced parentheses".into()));
        }
    }
    if depth != 0 || parts.len() < 2 {
        return Err(Error::Parse(format!("direct sum needs at least two parenthesized terms: {text:?}")));
    }
    Ok(parts)
}

/// Builds a representation from its textual description.
///
/// Accepted forms: `d2:a=2,b=3`, `leonard:d=4,a=2,b=3[,c=5]`,
/// `aw2:a=2[,s=-1]`, `scalar:a=1,b=1,rho=<scalar>`, `dg2` and
/// `dsum:(...)+(...)`.
pub fn parse_rep_spec(text: &str) -> Result<MatrixRep> {
    let text = text.trim();
    let (kind, rest) = text.split_once(':').unwrap_or((text, ""));
    if kind == "dsum" {
        let parts = split_sum(rest)?;
        let mut acc = parse_rep_spec(parts[0])?;
        for p in &parts[1..] {
            acc = acc.direct_sum(&parse_rep_spec(p)?)?;
        }
        return Ok(acc);
    }
    let params = parse_params(rest)?;
    let get = |k: &str| -> Result<BigRational> {
        params.get(k).ok_or_else(|| Error::Parse(format!("{kind} needs parameter {k}"))).and_then(|v| parse_rational(v))
    };
    let allowed: &[&str] = match kind {
        "d2" => &["a", "b"],
        "leonard" => &["d", "a", "b", "c"],
        "aw2" => &["a", "s"],
        "scalar" => &["a", "b", "rho"],
        "dg2" => &[],
        _ => return Err(Error::Parse(format!("unknown representation kind {kind:?}"))),
    };
    if let Some(k) = params.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(Error::Parse(format!("unknown parameter {k:?} for {kind}")));
    }
    match kind {
        "d2" => pair_d2(&get("a")?, &get("b")?),
        "leonard" => {
            let d = params
                .get("d")
                .ok_or_else(|| Error::Parse("leonard needs parameter d".into()))?
                .parse::<usize>()
                .map_err(|_| Error::Parse("leonard d must be a positive integer".into()))?;
            let c = if params.contains_key("c") { get("c")? } else { BigRational::from_integer(5.into()) };
            pair_leonard(d, &get("a")?, &get("b")?, &c)
        }
        "aw2" => {
            let s = match params.get("s").map(String::as_str) {
                None | Some("1") | Some("+1") => 1,
                Some("-1") => -1,
                Some(other) => return Err(Error::Parse(format!("aw2 sign must be +1 or -1, got {other:?}"))),
            };
            pair_aw_tuned(&get("a")?, s)
        }
        "scalar" => {
            let rho = parse_scalar(params.get("rho").ok_or_else(|| Error::Parse("scalar needs rho".into()))?)?;
            Ok(MatrixRep::scalar(&get("a")?, &get("b")?, rho))
        }
        "dg2" => pair_dolan_grady(),
        _ => unreachable!(),
    }
}

/// The default verification fleet: four generic two-dimensional pairs.
pub fn standard_fleet() -> Result<Vec<MatrixRep>> {
    ["d2:a=2,b=3", "d2:a=5,b=7", "d2:a=3/2,b=-4", "d2:a=-7/3,b=5/2"].iter().map(|s| parse_rep_spec(s)).collect()
}

/// Scales a pair by `lambda`: `(lambda A, lambda A*)` has rho scaled by `lambda^2`.
pub fn scaled(rep: &MatrixRep, lambda: &BigRational) -> Result<MatrixRep> {
    let l = rat(lambda);
    MatrixRep::from_matrices(
        format!("scaled({lambda}):{}", rep.id),
        rep.mat_a.scale(&l),
        rep.mat_b.scale(&l),
        rep.q_point.clone(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::standard_rho;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn d2_pair_has_standard_rho() {
        let rep = pair_d2(&r(2, 1), &r(3, 1)).unwrap();
        assert_eq!(rep.rho, standard_rho());
    }

    #[test]
    fn leonard_pairs_pass_the_gate() {
        for d in 3..=4 {
            let rep = pair_leonard(d, &r(2, 1), &r(3, 1), &r(5, 1)).unwrap();
            assert_eq!(rep.rho, standard_rho());
            for i in 0..d {
                for j in 0..d {
                    if i != j {
                        assert!(rep.mat_a.get(i, j).is_zero());
                    }
                    if i.abs_diff(j) > 1 {
                        assert!(rep.mat_b.get(i, j).is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn commuting_pair_is_rejected() {
        let i = |x: i64| ScalarFraction::from_int(x);
        let a = ExactMatrix::diagonal(&[i(1), i(2)]);
        let b = ExactMatrix::diagonal(&[i(3), i(4)]);
        assert!(matches!(extract_rho(&a, &b), Err(Error::InvalidRepresentation(_))));
    }

    #[test]
    fn random_pair_is_rejected() {
        let i = |x: i64| ScalarFraction::from_int(x);
        let a = ExactMatrix::from_rows(vec![vec![i(1), i(2)], vec![i(0), i(3)]]).unwrap();
        let b = ExactMatrix::from_rows(vec![vec![i(0), i(1)], vec![i(1), i(1)]]).unwrap();
        assert!(extract_rho(&a, &b).is_err());
    }

    #[test]
    fn aw_tuned_pairs_pass_the_gate() {
        for s in ["aw2:a=2", "aw2:a=3,s=-1", "aw2:a=5/2"] {
            assert_eq!(parse_rep_spec(s).unwrap().rho, standard_rho());
        }
        assert!(parse_rep_spec("aw2:a=1").is_err());
    }

    #[test]
    fn dolan_grady_pair_at_q_one() {
        let rep = pair_dolan_grady().unwrap();
        assert_eq!(rep.rho, ScalarFraction::from_int(16));
    }

    #[test]
    fn spec_strings() {
        let rep = parse_rep_spec("dsum:(d2:a=2,b=3)+(d2:a=5,b=7)").unwrap();
        assert_eq!(rep.dim(), 4);
        assert_eq!(rep.id, "dsum:(d2:a=2,b=3)+(d2:a=5,b=7)");
        assert!(parse_rep_spec("d2:a=2").is_err());
        assert!(parse_rep_spec("d2:a=0,b=3").is_err());
        assert!(parse_rep_spec("nope:a=1").is_err());
        assert!(parse_rep_spec("d2:a=2,b=3,z=1").is_err());
    }

    #[test]
    fn evaluation_of_a_word() {
        let rep = pair_d2(&r(2, 1), &r(3, 1)).unwrap();
        let p = NCPolynomial::a().multiply(&NCPolynomial::b()).unwrap();
        assert_eq!(evaluate(&p, &rep).unwrap(), rep.mat_a.mul(&rep.mat_b));
    }

    #[test]
    fn integral_path_matches_fraction_horner() {
        use crate::scalars::parse_scalar;
        let rep = pair_leonard(3, &r(2, 1), &r(3, 1), &r(5, 1)).unwrap();
        let p = NCPolynomial::from_terms(
            Alphabet::Concrete,
            [("", "1/(q-1)"), ("AB", "q^2+3"), ("BAA", "1/(q^2+q^-2)"), ("BBAB", "-7/q"), ("A", "2")]
                .map(|(w, c)| (crate::ncpoly::parse_word(w).unwrap(), parse_scalar(c).unwrap())),
        );
        let mut terms: Vec<_> = p.terms().map(|(w, c)| (w.as_slice(), c.clone())).collect();
        terms.sort_by(|x, y| x.0.cmp(y.0));
        let fast = integral::evaluate(&terms, &rep.mat_a, &rep.mat_b);
        assert_eq!(fast, horner(&terms, 0, &rep.mat_a, &rep.mat_b));
    }

    #[test]
    fn cleared_matrices_follow_exact_arithmetic() {
        use crate::scalars::parse_scalar;
        let rep = pair_leonard(3, &r(2, 1), &r(3, 1), &r(5, 1)).unwrap();
        let (a, b) = (&rep.mat_a, &rep.mat_b);
        let c = parse_scalar("(q^2+1)/(q-3)").unwrap();
        let exact = a.mul(b).add_scaled(&b.scale(&c), &parse_scalar("1/q").unwrap());
        let ca = ClearedMatrix::from_exact(a).unwrap();
        let cb = ClearedMatrix::from_exact(b).unwrap();
        let cleared = ca.mul(&cb).add_scaled(&cb.scale(&c), &parse_scalar("1/q").unwrap());
        assert_eq!(cleared.to_exact(), exact);
        let zero = ca.add_scaled(&ca, &-ScalarFraction::one());
        assert!(zero.is_zero());
        assert!(!cleared.is_zero());
    }
}
