//! The commuting charges `I_{2k+1} = k W_{-k} + k* W_{k+1} + k+ G_{k+1} + k- G~_{k+1}`
//! and their mutual commutation.

use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::generators::GeneratorTable;
use crate::ncpoly::NCPolynomial;
use crate::reps::{ClearedMatrix, ExactMatrix, MatrixRep};
use crate::scalars::ScalarFraction;
use crate::verify::{check_on_images, RelationId, RelationReport, RepImages, ReportEntry};

/// Coefficients of one charge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChargeSpec {
    pub k: usize,
    pub kappa: ScalarFraction,
    pub kappa_star: ScalarFraction,
    pub kappa_plus: ScalarFraction,
    pub kappa_minus: ScalarFraction,
}

impl ChargeSpec {
    pub fn new(k: usize, kappas: [ScalarFraction; 4]) -> Result<Self> {
        if kappas.iter().all(ScalarFraction::is_zero) {
            return Err(Error::InvalidArgument("at least one kappa must be nonzero".into()));
        }
        let [kappa, kappa_star, kappa_plus, kappa_minus] = kappas;
        Ok(Self { k, kappa, kappa_star, kappa_plus, kappa_minus })
    }

    /// `k f_k(A, A*) + k* f_k(A*, A)`.
    pub fn simple(k: usize, kappa: ScalarFraction, kappa_star: ScalarFraction) -> Result<Self> {
        Self::new(k, [kappa, kappa_star, ScalarFraction::zero(), ScalarFraction::zero()])
    }

    pub fn from_rationals(k: usize, kappas: &[BigRational; 4]) -> Result<Self> {
        Self::new(k, kappas.clone().map(|x| ScalarFraction::from_rational(&x)))
    }

    fn kappas(&self) -> [&ScalarFraction; 4] {
        [&self.kappa, &self.kappa_star, &self.kappa_plus, &self.kappa_minus]
    }
}

fn require_table(table: &GeneratorTable, k: usize) -> Result<()> {
    if k > table.k_max {
        return Err(Error::InvalidArgument(format!("level {k} exceeds the table (k_max = {})", table.k_max)));
    }
    Ok(())
}

/// `f_k(A, A*) = W_{-k}`, defined for tables with every constant `a_n = 0`.
pub fn build_f(k: usize, table: &GeneratorTable) -> Result<NCPolynomial> {
    require_table(table, k)?;
    if table.a_consts.iter().next().is_some() {
        return Err(Error::InvalidArgument("f_k is defined with all constants a_n = 0".into()));
    }
    Ok(table.wm[k].clone())
}

/// `f_k(A*, A) = W_{k+1}`.
pub fn build_f_star(k: usize, table: &GeneratorTable) -> Result<NCPolynomial> {
    Ok(build_f(k, table)?.exchange())
}

/// The charge as a polynomial in `A`, `A*`.
pub fn build_charge(spec: &ChargeSpec, table: &GeneratorTable) -> Result<NCPolynomial> {
    require_table(table, spec.k)?;
    let k = spec.k;
    let parts = [&table.wm[k], &table.wp[k], &table.g[k], &table.gt[k]];
    let mut out = NCPolynomial::zero(table.wm[k].alphabet());
    for (p, c) in parts.into_iter().zip(spec.kappas()) {
        out.add_assign_scaled(p, c);
    }
    Ok(out)
}

/// Image of a charge from precomputed generator images.
pub fn charge_image(spec: &ChargeSpec, images: &RepImages) -> Result<ExactMatrix> {
    let k = spec.k;
    let parts = [images.wm.get(k), images.wp.get(k), images.g.get(k), images.gt.get(k)];
    let mut out = ExactMatrix::zeros(images.rep.dim());
    for (m, c) in parts.into_iter().zip(spec.kappas()) {
        let m = m.ok_or_else(|| Error::InvalidArgument(format!("charge level {k} exceeds the images")))?;
        out = out.add_scaled(m, &images.rep.specialize_scalar(c)?);
    }
    Ok(out)
}

/// Seeded random kappa vectors with small nonzero rational entries.
pub fn random_kappas(seed: u64, count: usize) -> Vec<[BigRational; 4]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| loop {
        let n: i64 = rng.gen_range(-9..=9);
        let d: i64 = rng.gen_range(1..=7);
        if n != 0 {
            return BigRational::new(n.into(), d.into());
        }
    };
    (0..count).map(|_| std::array::from_fn(|_| draw(&mut rng))).collect()
}

/// Pairwise commutators of `specs` in every rep. Self-commutators pass
/// without evaluation.
pub fn check_commutation(specs: &[ChargeSpec], table: &GeneratorTable, reps: &[MatrixRep]) -> Result<RelationReport> {
    for s in specs {
        require_table(table, s.k)?;
    }
    let mut report = RelationReport::default();
    for rep in reps {
        let images = RepImages::new(table, rep)?;
        report.extend(commutation_on_images(specs, &images)?);
    }
    Ok(report)
}

fn commutation_on_images(specs: &[ChargeSpec], images: &RepImages) -> Result<RelationReport> {
    let mats = specs.iter().map(|s| charge_image(s, images)).collect::<Result<Vec<_>>>()?;
    let cleared: Option<Vec<ClearedMatrix>> = mats.iter().map(ClearedMatrix::from_exact).collect();
    let vanishes = |i: usize, j: usize| match &cleared {
        Some(c) => c[i].mul(&c[j]).add_scaled(&c[j].mul(&c[i]), &-ScalarFraction::one()).is_zero(),
        None => mats[i].commutator(&mats[j]).is_zero(),
    };
    let mut report = RelationReport::default();
    for i in 0..specs.len() {
        for j in i..specs.len() {
            report.entries.push(ReportEntry {
                relation: "commute".into(),
                k: specs[i].k,
                l: Some(specs[j].k),
                rep: images.rep.id.clone(),
                passed: i == j || vanishes(i, j),
                note: None,
            });
        }
    }
    Ok(report)
}

/// The hierarchy check: for each kappa vector, the charges of levels
/// `0..=k_max` commute pairwise in every rep; in addition the cross relations
/// that make commutation hold for arbitrary kappa are checked individually.
pub fn check_hierarchy(
    table: &GeneratorTable,
    reps: &[MatrixRep],
    k_max: usize,
    kappas: &[[BigRational; 4]],
) -> Result<RelationReport> {
    require_table(table, k_max)?;
    let mut report = RelationReport::default();
    for rep in reps {
        let images = RepImages::new(table, rep)?;
        for kv in kappas {
            if kv.iter().all(Zero::is_zero) {
                continue;
            }
            let specs = (0..=k_max).map(|k| ChargeSpec::from_rationals(k, kv)).collect::<Result<Vec<_>>>()?;
            report.extend(commutation_on_images(&specs, &images)?);
        }
        report.extend(check_on_images(&images, &RelationId::CROSS, k_max, k_max));
    }
    Ok(report)
}

/// Specializes a polynomial at `q = 1`, `rho = 16`.
pub fn specialize_dolan_grady(p: &NCPolynomial) -> Result<NCPolynomial> {
    let one = BigRational::from_integer(1.into());
    let sixteen = ScalarFraction::from_int(16);
    p.try_map_coeffs(|c| c.specialize(Some(&one), Some(&sixteen)))
}
