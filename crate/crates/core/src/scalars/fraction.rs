//! Reduced rational functions in `q` and `r` (`r` plays the role of rho).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::MultiPoly;
use crate::error::{Error, Result};

/// An element of `Q(q, r)` kept as `num / den` with `gcd(num, den) = 1`
/// and `den` having a positive leading coefficient.
#[derive(Clone, Debug)]
pub struct ScalarFraction {
    num: MultiPoly,
    den: MultiPoly,
}

impl ScalarFraction {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: MultiPoly, den: MultiPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_one() {
            return Self { num, den };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        if den.leading_coeff().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        Self { num, den }
    }

    pub fn zero() -> Self {
        Self { num: MultiPoly::zero(), den: MultiPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_poly(MultiPoly::one())
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        Self { num: p, den: MultiPoly::one() }
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_poly(MultiPoly::from_int(c.into()))
    }

    pub fn from_bigint(c: BigInt) -> Self {
        Self::from_poly(MultiPoly::from_int(c))
    }

    pub fn from_rational(c: &BigRational) -> Self {
        Self::reduce(MultiPoly::from_int(c.numer().clone()), MultiPoly::from_int(c.denom().clone()))
    }

    pub fn q() -> Self {
        Self::from_poly(MultiPoly::q())
    }

    pub fn r() -> Self {
        Self::from_poly(MultiPoly::r())
    }

    /// `q^n` for any integer `n`.
    pub fn q_pow(n: i32) -> Self {
        let m = MultiPoly::monomial(BigInt::one(), n.unsigned_abs() as usize, 0);
        if n >= 0 {
            Self::from_poly(m)
        } else {
            Self { num: MultiPoly::one(), den: m }
        }
    }

    pub fn numer(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denom(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Whether the value does not involve `r`.
    pub fn is_q_only(&self) -> bool {
        self.num.is_q_only() && self.den.is_q_only()
    }

    /// The value as a rational number if it is constant.
    pub fn as_rational(&self) -> Option<BigRational> {
        let n = &self.num;
        let d = &self.den;
        let is_const = |p: &MultiPoly| p.is_zero() || (p.degree_q() == 0 && p.degree_r() == 0);
        if is_const(n) && is_const(d) {
            Some(BigRational::new(n.coeff(0, 0), d.coeff(0, 0)))
        } else {
            None
        }
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self * &other.recip()?)
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let e = e.unsigned_abs();
        Ok(Self { num: base.num.pow(e), den: base.den.pow(e) })
    }

    /// Substitutes `r -> value`, leaving a function of `q` (and of `r` only
    /// if `value` contains it).
    pub fn subs_r(&self, value: &ScalarFraction) -> Result<Self> {
        if self.num.is_q_only() && self.den.is_q_only() {
            return Ok(self.clone());
        }
        let num = horner_r(&self.num, value);
        let den = horner_r(&self.den, value);
        if den.is_zero() {
            return Err(Error::Pole(format!("{self} at r = {value}")));
        }
        num.checked_div(&den)
    }

    /// Specializes `q` and/or `r`. `r` is substituted first; `q` second.
    /// The result stays reduced, so a vanishing denominator at the end is a
    /// genuine pole.
    pub fn specialize(&self, q_val: Option<&BigRational>, r_val: Option<&ScalarFraction>) -> Result<Self> {
        let mut out = match r_val {
            Some(v) => self.subs_r(v)?,
            None => self.clone(),
        };
        if let Some(qv) = q_val {
            out = out.subs_q(qv)?;
        }
        Ok(out)
    }

    fn subs_q(&self, q: &BigRational) -> Result<Self> {
        let to_poly = |coeffs: Vec<BigRational>| -> ScalarFraction {
            let mut acc = ScalarFraction::zero();
            for c in coeffs.iter().rev() {
                acc = &(&acc * &ScalarFraction::r()) + &ScalarFraction::from_rational(c);
            }
            acc
        };
        let num = to_poly(self.num.eval_q(q));
        let den = to_poly(self.den.eval_q(q));
        if den.is_zero() {
            return Err(Error::Pole(format!("{self} at q = {q}")));
        }
        num.checked_div(&den)
    }

    /// Evaluates at rational `q` and `r`.
    pub fn eval(&self, q: &BigRational, r: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(q, r);
        if d.is_zero() {
            return Err(Error::Pole(format!("{self} at q = {q}, r = {r}")));
        }
        Ok(self.num.eval(q, r) / d)
    }

    /// Canonical text; parses back to an equal value.
    pub fn to_canonical_string(&self) -> String {
        self.to_string()
    }
}

fn horner_r(p: &MultiPoly, value: &ScalarFraction) -> ScalarFraction {
    let mut acc = ScalarFraction::zero();
    for row in p.rows().iter().rev() {
        acc = &(&acc * value) + &ScalarFraction::from_poly(MultiPoly::from_upoly(row.clone()));
    }
    acc
}

impl PartialEq for ScalarFraction {
    fn eq(&self, other: &Self) -> bool {
        if self.num == other.num && self.den == other.den {
            return true;
        }
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl Eq for ScalarFraction {}

impl Default for ScalarFraction {
    fn default() -> Self {
        Self::zero()
    }
}

impl<'a> Add<&'a ScalarFraction> for &'a ScalarFraction {
    type Output = ScalarFraction;

    fn add(self, rhs: &ScalarFraction) -> ScalarFraction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return ScalarFraction::from_poly(self.num.add(&rhs.num));
        }
        if self.den == rhs.den {
            return ScalarFraction::reduce(self.num.add(&rhs.num), self.den.clone());
        }
        // Henrici: only the gcd of the denominators can cancel.
        let g = self.den.gcd(&rhs.den);
        if g.is_one() {
            let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
            let den = self.den.mul(&rhs.den);
            return ScalarFraction::reduce_with_hint(num, den, &g);
        }
        let d1 = self.den.div_exact(&g).expect("gcd divides");
        let d2 = rhs.den.div_exact(&g).expect("gcd divides");
        let num = self.num.mul(&d2).add(&rhs.num.mul(&d1));
        let den = d1.mul(&rhs.den);
        ScalarFraction::reduce_with_hint(num, den, &g)
    }
}

impl ScalarFraction {
    /// Reduces `num / den` knowing common factors can only come from `hint`.
    fn reduce_with_hint(num: MultiPoly, den: MultiPoly, hint: &MultiPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if hint.is_one() {
            // denominators coprime: the sum is already reduced up to sign
            let mut f = Self { num, den };
            if f.den.leading_coeff().is_negative() {
                f.num = f.num.neg();
                f.den = f.den.neg();
            }
            return f;
        }
        let g = num.gcd(hint);
        if g.is_one() {
            return Self::reduce_sign(num, den);
        }
        let num = num.div_exact(&g).expect("gcd divides");
        let den = den.div_exact(&g).expect("gcd divides");
        Self::reduce_sign(num, den)
    }

    fn reduce_sign(num: MultiPoly, den: MultiPoly) -> Self {
        if den.leading_coeff().is_negative() {
            Self { num: num.neg(), den: den.neg() }
        } else {
            Self { num, den }
        }
    }
}

impl<'a> Sub<&'a ScalarFraction> for &'a ScalarFraction {
    type Output = ScalarFraction;

    fn sub(self, rhs: &ScalarFraction) -> ScalarFraction {
        self + &(-rhs)
    }
}

impl Neg for &ScalarFraction {
    type Output = ScalarFraction;

    fn neg(self) -> ScalarFraction {
        ScalarFraction { num: self.num.neg(), den: self.den.clone() }
    }
}

impl Neg for ScalarFraction {
    type Output = ScalarFraction;

    fn neg(self) -> ScalarFraction {
        -&self
    }
}

impl<'a> Mul<&'a ScalarFraction> for &'a ScalarFraction {
    type Output = ScalarFraction;

    fn mul(self, rhs: &ScalarFraction) -> ScalarFraction {
        if self.is_zero() || rhs.is_zero() {
            return ScalarFraction::zero();
        }
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return ScalarFraction::from_poly(self.num.mul(&rhs.num));
        }
        // Henrici: cross-cancel before multiplying.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let (n1, d2) = if g1.is_one() {
            (self.num.clone(), rhs.den.clone())
        } else {
            (self.num.div_exact(&g1).unwrap(), rhs.den.div_exact(&g1).unwrap())
        };
        let (n2, d1) = if g2.is_one() {
            (rhs.num.clone(), self.den.clone())
        } else {
            (rhs.num.div_exact(&g2).unwrap(), self.den.div_exact(&g2).unwrap())
        };
        ScalarFraction::reduce_sign(n1.mul(&n2), d1.mul(&d2))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<ScalarFraction> for ScalarFraction {
            type Output = ScalarFraction;
            fn $m(self, rhs: ScalarFraction) -> ScalarFraction {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a ScalarFraction> for ScalarFraction {
            type Output = ScalarFraction;
            fn $m(self, rhs: &ScalarFraction) -> ScalarFraction {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Sum for ScalarFraction {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| &acc + &x)
    }
}

impl fmt::Display for ScalarFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> ScalarFraction {
        ScalarFraction::q()
    }

    #[test]
    fn canonical_text() {
        let x = &q() - &ScalarFraction::q_pow(-1);
        let sq = &x * &x;
        assert_eq!(sq.to_string(), "(q^4 - 2*q^2 + 1)/(q^2)");
        assert_eq!(ScalarFraction::from_int(-3).to_string(), "-3");
    }

    #[test]
    fn inverse_and_division() {
        let x = &q() + &ScalarFraction::r();
        let inv = x.recip().unwrap();
        assert!((&x * &inv).is_one());
        assert!(matches!(ScalarFraction::zero().recip(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn removable_singularity_at_q_one() {
        // (q^2 - 1)/(q - 1) = q + 1
        let num = &(&q() * &q()) - &ScalarFraction::one();
        let den = &q() - &ScalarFraction::one();
        let f = num.checked_div(&den).unwrap();
        let v = f.specialize(Some(&BigRational::one()), None).unwrap();
        assert_eq!(v, ScalarFraction::from_int(2));
    }

    #[test]
    fn genuine_pole_is_reported() {
        let f = ScalarFraction::one().checked_div(&(&q() - &ScalarFraction::one())).unwrap();
        assert!(matches!(f.specialize(Some(&BigRational::one()), None), Err(Error::Pole(_))));
    }

    #[test]
    fn rho_substitution_then_q() {
        // (r - 16)/(q - 1) with r = 16 q^2 -> 16 (q + 1) -> 32 at q = 1
        let r = ScalarFraction::r();
        let f = (&r - &ScalarFraction::from_int(16)).checked_div(&(&q() - &ScalarFraction::one())).unwrap();
        let rv = &ScalarFraction::from_int(16) * &(&q() * &q());
        let v = f.specialize(Some(&BigRational::one()), Some(&rv)).unwrap();
        assert_eq!(v, ScalarFraction::from_int(32));
    }
}
