//! Dense bivariate integer polynomials in `q` and `r`.
//!
//! A [`MultiPoly`] is stored as a list of `q`-polynomials indexed by the power
//! of `r`. The gcd treats `r` as the main variable with coefficients in `Z[q]`
//! and runs a primitive pseudo-remainder sequence.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::upoly::{self, UPoly};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MultiPoly {
    rows: Vec<UPoly>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self { rows: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_int(BigInt::one())
    }

    pub fn from_int(c: BigInt) -> Self {
        Self::from_rows(vec![upoly::constant(c)])
    }

    /// `c * q^eq * r^er`
    pub fn monomial(c: BigInt, eq: usize, er: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut rows = vec![Vec::new(); er + 1];
        rows[er] = upoly::shift(&[c], eq);
        Self { rows }
    }

    pub fn q() -> Self {
        Self::monomial(BigInt::one(), 1, 0)
    }

    pub fn r() -> Self {
        Self::monomial(BigInt::one(), 0, 1)
    }

    pub(crate) fn from_rows(mut rows: Vec<UPoly>) -> Self {
        for row in rows.iter_mut() {
            upoly::trim(row);
        }
        while rows.last().is_some_and(Vec::is_empty) {
            rows.pop();
        }
        Self { rows }
    }

    pub(crate) fn from_upoly(p: UPoly) -> Self {
        Self::from_rows(vec![p])
    }

    pub(crate) fn rows(&self) -> &[UPoly] {
        &self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.rows.len() == 1 && upoly::is_one(&self.rows[0])
    }

    /// Degree in `r`; zero for the zero polynomial.
    pub fn degree_r(&self) -> usize {
        self.rows.len().saturating_sub(1)
    }

    /// Degree in `q`; zero for the zero polynomial.
    pub fn degree_q(&self) -> usize {
        self.rows.iter().map(|r| r.len().saturating_sub(1)).max().unwrap_or(0)
    }

    /// Whether the polynomial is free of `r`.
    pub fn is_q_only(&self) -> bool {
        self.rows.len() <= 1
    }

    /// Coefficient of `q^eq r^er`.
    pub fn coeff(&self, eq: usize, er: usize) -> BigInt {
        self.rows.get(er).and_then(|row| row.get(eq)).cloned().unwrap_or_default()
    }

    /// Nonzero terms `(coeff, eq, er)` in descending graded order
    /// (total degree, then power of `q`).
    pub fn terms_desc(&self) -> Vec<(BigInt, usize, usize)> {
        let mut out = Vec::new();
        for (er, row) in self.rows.iter().enumerate() {
            for (eq, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    out.push((c.clone(), eq, er));
                }
            }
        }
        out.sort_by_key(|t| std::cmp::Reverse((t.1 + t.2, t.1)));
        out
    }

    /// Leading coefficient in descending graded order.
    pub fn leading_coeff(&self) -> BigInt {
        self.terms_desc().first().map(|t| t.0.clone()).unwrap_or_default()
    }

    pub fn neg(&self) -> Self {
        Self { rows: self.rows.iter().map(|r| upoly::neg(r)).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.rows.len().max(other.rows.len());
        let rows = (0..n)
            .map(|i| match (self.rows.get(i), other.rows.get(i)) {
                (Some(a), Some(b)) => upoly::add(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => Vec::new(),
            })
            .collect();
        Self::from_rows(rows)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let mut rows = vec![Vec::new(); self.rows.len() + other.rows.len() - 1];
        for (i, a) in self.rows.iter().enumerate() {
            if a.is_empty() {
                continue;
            }
            for (j, b) in other.rows.iter().enumerate() {
                if !b.is_empty() {
                    let prod = upoly::mul(a, b);
                    rows[i + j] = upoly::add(&rows[i + j], &prod);
                }
            }
        }
        Self::from_rows(rows)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_rows(self.rows.iter().map(|r| upoly::scale(r, c)).collect())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    fn mul_upoly(&self, c: &[BigInt]) -> Self {
        Self::from_rows(self.rows.iter().map(|r| upoly::mul(r, c)).collect())
    }

    /// Integer content (gcd of all coefficients, nonnegative).
    pub fn int_content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for row in &self.rows {
            g = num_integer::Integer::gcd(&g, &upoly::content(row));
        }
        g
    }

    /// Content with respect to `r`: the gcd in `Z[q]` of all `r`-coefficients.
    fn content_r(&self) -> UPoly {
        let mut g: UPoly = Vec::new();
        for row in &self.rows {
            g = upoly::gcd(&g, row);
            if upoly::is_one(&g) {
                break;
            }
        }
        g
    }

    fn div_upoly_exact(&self, c: &[BigInt]) -> Option<Self> {
        let rows = self.rows.iter().map(|r| upoly::div_exact(r, c)).collect::<Option<Vec<_>>>()?;
        Some(Self::from_rows(rows))
    }

    /// Lowest powers of `q` and `r` dividing every term.
    fn monomial_part(&self) -> (usize, usize) {
        let er = self.rows.iter().position(|r| !r.is_empty()).unwrap_or(0);
        let eq = self.rows.iter().filter(|r| !r.is_empty()).map(|r| upoly::low_degree(r)).min().unwrap_or(0);
        (eq, er)
    }

    fn strip_monomial(&self, eq: usize, er: usize) -> Self {
        Self::from_rows(self.rows[er..].iter().map(|r| if r.is_empty() { Vec::new() } else { r[eq..].to_vec() }).collect())
    }

    /// Pseudo-remainder with respect to `r`.
    fn prem_r(&self, b: &Self) -> Self {
        let db = b.rows.len() - 1;
        let lb = &b.rows[db];
        let mut rem = self.clone();
        while !rem.is_zero() && rem.rows.len() > db {
            let dr = rem.rows.len() - 1;
            let lr = rem.rows[dr].clone();
            let mut rows: Vec<UPoly> = rem.rows.iter().map(|r| upoly::mul(r, lb)).collect();
            for (i, c) in b.rows.iter().enumerate() {
                let t = upoly::mul(&lr, c);
                rows[dr - db + i] = upoly::sub(&rows[dr - db + i], &t);
            }
            rem = Self::from_rows(rows);
        }
        rem
    }

    fn primitive_r(&self) -> Self {
        let c = self.content_r();
        if upoly::is_one(&c) {
            self.clone()
        } else {
            self.div_upoly_exact(&c).expect("content divides")
        }
    }

    /// Greatest common divisor, normalized to a positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.normalize_sign();
        }
        if other.is_zero() {
            return self.normalize_sign();
        }
        let (aq, ar) = self.monomial_part();
        let (bq, br) = other.monomial_part();
        let mono = Self::monomial(BigInt::one(), aq.min(bq), ar.min(br));
        let a = self.strip_monomial(aq, ar);
        let b = other.strip_monomial(bq, br);
        let ca = a.content_r();
        let cb = b.content_r();
        let c = upoly::gcd(&ca, &cb);
        let core = if a.rows.len() == 1 || b.rows.len() == 1 {
            Self::one()
        } else {
            let mut x = a.div_upoly_exact(&ca).expect("content divides");
            let mut y = b.div_upoly_exact(&cb).expect("content divides");
            if x.rows.len() < y.rows.len() {
                std::mem::swap(&mut x, &mut y);
            }
            loop {
                if y.is_zero() {
                    break x.primitive_r();
                }
                if y.rows.len() == 1 {
                    break Self::one();
                }
                let rem = x.prem_r(&y);
                x = y;
                y = if rem.is_zero() { rem } else { rem.primitive_r() };
            }
        };
        core.mul_upoly(&c).mul(&mono).normalize_sign()
    }

    pub(crate) fn normalize_sign(&self) -> Self {
        if self.leading_coeff().is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Exact quotient, or `None` when `other` does not divide `self`.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if other.rows.len() == 1 {
            return self.div_upoly_exact(&other.rows[0]);
        }
        let db = other.rows.len() - 1;
        let lb = &other.rows[db];
        let mut rem = self.clone();
        if rem.rows.len() <= db {
            return None;
        }
        let mut quot = vec![Vec::new(); rem.rows.len() - db];
        while !rem.is_zero() {
            if rem.rows.len() <= db {
                return None;
            }
            let dr = rem.rows.len() - 1;
            let t = upoly::div_exact(&rem.rows[dr], lb)?;
            let sub = other.mul_upoly(&t);
            let shifted =
                Self::from_rows(std::iter::repeat_with(Vec::new).take(dr - db).chain(sub.rows.iter().cloned()).collect());
            rem = rem.sub(&shifted);
            quot[dr - db] = t;
            if rem.rows.len() > dr {
                return None;
            }
        }
        Some(Self::from_rows(quot))
    }

    /// Evaluates at rational `q`, leaving a polynomial in `r` with rational
    /// coefficients (index = power of `r`).
    pub fn eval_q(&self, q: &BigRational) -> Vec<BigRational> {
        self.rows
            .iter()
            .map(|row| {
                let mut acc = BigRational::zero();
                for c in row.iter().rev() {
                    acc = acc * q + BigRational::from_integer(c.clone());
                }
                acc
            })
            .collect()
    }

    /// Evaluates at rational `q` and `r`.
    pub fn eval(&self, q: &BigRational, r: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.eval_q(q).iter().rev() {
            acc = acc * r + c;
        }
        acc
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, eq: usize, er: usize) -> fmt::Result {
    let mut first = true;
    for (name, e) in [("q", eq), ("r", er)] {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        if e == 1 {
            write!(f, "{name}")?;
        } else {
            write!(f, "{name}^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms_desc();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, eq, er)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let is_const = *eq == 0 && *er == 0;
            if is_const {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write_monomial(f, *eq, *er)?;
            }
        }
        Ok(())
    }
}
