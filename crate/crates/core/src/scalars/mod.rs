//! Exact coefficient arithmetic in `Q(q, rho)`.

mod fraction;
mod parse;
mod poly;
pub(crate) mod upoly;

pub use fraction::ScalarFraction;
pub use parse::parse_scalar;
pub use poly::MultiPoly;

/// `q + q^-1`
pub fn q_plus_inv() -> ScalarFraction {
    &ScalarFraction::q() + &ScalarFraction::q_pow(-1)
}

/// `q - q^-1`
pub fn q_minus_inv() -> ScalarFraction {
    &ScalarFraction::q() - &ScalarFraction::q_pow(-1)
}

/// `q^2 + q^-2`
pub fn beta() -> ScalarFraction {
    &ScalarFraction::q_pow(2) + &ScalarFraction::q_pow(-2)
}

/// `q^2 - q^-2`
pub fn q2_minus_inv() -> ScalarFraction {
    &ScalarFraction::q_pow(2) - &ScalarFraction::q_pow(-2)
}

/// `-(q^2 - q^-2)^2`, the value of rho realized by the built-in pair families.
pub fn standard_rho() -> ScalarFraction {
    let c = q2_minus_inv();
    -(&c * &c)
}
