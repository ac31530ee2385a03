//! JSON, LaTeX and text renderings of polynomials and scalars.

use qonsager::ncpoly::{parse_word, word_to_string};
use qonsager::{parse_scalar, Alphabet, Letter, MultiPoly, NCPolynomial, ScalarFraction};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Latex,
    Text,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub word: String,
    pub coeff: String,
}

/// `{"alphabet": "concrete", "terms": [{"word": "ABA", "coeff": "..."}]}`,
/// terms in canonical word order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub alphabet: String,
    pub terms: Vec<TermJson>,
}

fn alphabet_name(a: Alphabet) -> &'static str {
    match a {
        Alphabet::Concrete => "concrete",
        Alphabet::Abstract => "abstract",
    }
}

pub fn poly_to_json(p: &NCPolynomial) -> PolyJson {
    PolyJson {
        alphabet: alphabet_name(p.alphabet()).into(),
        terms: p.sorted_terms().into_iter().map(|(w, c)| TermJson { word: word_to_string(w), coeff: c.to_string() }).collect(),
    }
}

pub fn poly_from_json(j: &PolyJson) -> CliResult<NCPolynomial> {
    let alphabet = match j.alphabet.as_str() {
        "concrete" => Alphabet::Concrete,
        "abstract" => Alphabet::Abstract,
        other => return Err(CliError::Usage(format!("unknown alphabet {other:?}"))),
    };
    let mut out = NCPolynomial::zero(alphabet);
    for t in &j.terms {
        let word = parse_word(&t.word)?;
        if word.iter().any(|l| l.alphabet() != alphabet) {
            return Err(CliError::Usage(format!("word {:?} is not over the {} alphabet", t.word, j.alphabet)));
        }
        out.add_assign_scaled(&NCPolynomial::monomial(alphabet, word, ScalarFraction::one()), &parse_scalar(&t.coeff)?);
    }
    Ok(out)
}

fn latex_power(base: &str, e: usize) -> String {
    match e {
        0 => String::new(),
        1 => base.to_string(),
        _ => format!("{base}^{{{e}}}"),
    }
}

fn latex_multipoly(p: &MultiPoly) -> String {
    let terms = p.terms_desc();
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (c, eq, er)) in terms.iter().enumerate() {
        let negative = c.sign() == num_bigint::Sign::Minus;
        let mag = c.magnitude().to_string();
        let vars = [latex_power("q", *eq), latex_power("\\rho", *er)]
            .into_iter()
            .filter(|v| !v.is_empty())
            .collect::<Vec<_>>()
            .join(" ");
        let body = if vars.is_empty() {
            mag
        } else if mag == "1" {
            vars
        } else {
            format!("{mag} {vars}")
        };
        match (i, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    out
}

pub fn latex_scalar(c: &ScalarFraction) -> String {
    if c.denom().is_one() {
        latex_multipoly(c.numer())
    } else {
        format!("\\frac{{{}}}{{{}}}", latex_multipoly(c.numer()), latex_multipoly(c.denom()))
    }
}

fn latex_letter(l: Letter) -> String {
    match l {
        Letter::A => "\\textsf{A}".into(),
        Letter::B => "\\textsf{A}^*".into(),
        Letter::Wm(i) => format!("W_{{-{i}}}"),
        Letter::Wp(i) => format!("W_{{{}}}", i + 1),
        Letter::G(i) => format!("G_{{{}}}", i + 1),
        Letter::Gt(i) => format!("\\tilde{{G}}_{{{}}}", i + 1),
    }
}

/// Runs of a repeated letter become powers: `AAB` gives `\textsf{A}^{2}\textsf{A}^*`.
pub fn latex_word(w: &[Letter]) -> String {
    let mut out = String::new();
    let mut i = 0;
    while i < w.len() {
        let mut j = i;
        while j < w.len() && w[j] == w[i] {
            j += 1;
        }
        let base = latex_letter(w[i]);
        let n = j - i;
        if n == 1 {
            out.push_str(&base);
        } else if base.contains('^') || base.contains('_') {
            out.push_str(&format!("({base})^{{{n}}}"));
        } else {
            out.push_str(&format!("{base}^{{{n}}}"));
        }
        i = j;
    }
    out
}

pub fn latex_poly(p: &NCPolynomial) -> String {
    let terms = p.sorted_terms();
    if terms.is_empty() {
        return "0".into();
    }
    let parts: Vec<String> = terms
        .into_iter()
        .map(|(w, c)| match (w.is_empty(), c.is_one()) {
            (true, _) => format!("\\left({}\\right)", latex_scalar(c)),
            (false, true) => latex_word(w),
            (false, false) => format!("\\left({}\\right) {}", latex_scalar(c), latex_word(w)),
        })
        .collect();
    parts.join(" + ")
}

/// Display name of a generator in LaTeX (`W_-1` becomes `W_{-1}`).
pub fn latex_name(name: &str) -> String {
    match name.split_once('_') {
        Some(("Gt", idx)) => format!("\\tilde{{G}}_{{{idx}}}"),
        Some((head, idx)) => format!("{head}_{{{idx}}}"),
        None => name.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn latex_notation() {
        let w = parse_word("AABA").unwrap();
        assert_eq!(latex_word(&w), "\\textsf{A}^{2}\\textsf{A}^*\\textsf{A}");
        let w = parse_word("BB").unwrap();
        assert_eq!(latex_word(&w), "(\\textsf{A}^*)^{2}");
        let c = parse_scalar("(q^2 - 1)/(q*r)").unwrap();
        assert_eq!(latex_scalar(&c), "\\frac{q^{2} - 1}{q \\rho}");
    }

    #[test]
    fn json_round_trip() {
        let p = NCPolynomial::a().q_commutator(&NCPolynomial::b(), 1).unwrap();
        let j = poly_to_json(&p);
        assert_eq!(j.terms[0].word, "AB");
        assert_eq!(poly_from_json(&j).unwrap(), p);
    }

    proptest::proptest! {
        #[test]
        fn json_round_trip_is_exact(terms in proptest::collection::vec(("[AB]{0,4}", -5i64..=5, -3i32..=3, 0i32..=2), 0..6)) {
            let mut p = NCPolynomial::zero(Alphabet::Concrete);
            for (w, c, qe, re) in terms {
                let r = ScalarFraction::r().pow(re).unwrap();
                let coeff = &(&ScalarFraction::from_int(c) * &ScalarFraction::q_pow(qe)) * &r;
                p.add_assign_scaled(&NCPolynomial::monomial(Alphabet::Concrete, parse_word(&w).unwrap(), ScalarFraction::one()), &coeff);
            }
            let text = serde_json::to_string(&poly_to_json(&p)).unwrap();
            let back: PolyJson = serde_json::from_str(&text).unwrap();
            proptest::prop_assert_eq!(poly_from_json(&back).unwrap(), p.clone());
            proptest::prop_assert_eq!(serde_json::to_string(&poly_to_json(&poly_from_json(&back).unwrap())).unwrap(), text);
        }
    }
}
