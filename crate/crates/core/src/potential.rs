//! Disk monomials `Z_b`, the superpotential, its Hori-Vafa leading part, and
//! the bulk-deformed potential for divisor classes.

use std::collections::BTreeMap;

use num_traits::{ToPrimitive, Zero};

use crate::disks::{enumerate_admissible, DiskClass};
use crate::error::{Error, Result};
use crate::homology::profile;
use crate::kahler::KahlerSpec;
use crate::laurent::{default_names, LaurentPoly, QPoly, Rational, ZExp};

/// `W` together with the class behind each summand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Superpotential {
    pub w: LaurentPoly,
    pub classes: Vec<(DiskClass, LaurentPoly)>,
}

/// q-exponents of `exp(-∫_b ω)`.
pub fn disk_exponents(spec: &KahlerSpec, b: &DiskClass) -> Vec<i32> {
    let area = spec.curve_area(&b.alpha).q_exponents();
    spec.disk_coefficient(b.i)
        .iter()
        .zip(area)
        .map(|(a, c)| a + c)
        .collect()
}

pub fn z_beta(spec: &KahlerSpec, b: &DiskClass) -> LaurentPoly {
    let v = spec.fan().ray(b.i);
    let z: ZExp = (v.0 as i32, v.1 as i32);
    LaurentPoly::term(z, QPoly::q_power(disk_exponents(spec, b)))
}

pub fn superpotential(spec: &KahlerSpec) -> Result<Superpotential> {
    if !spec.fan().is_semi_fano() {
        return Err(Error::NotSemiFano);
    }
    let classes: Vec<(DiskClass, LaurentPoly)> = enumerate_admissible(spec.fan())?
        .into_iter()
        .map(|b| {
            let z = z_beta(spec, &b);
            (b, z)
        })
        .collect();
    let w = classes
        .iter()
        .fold(LaurentPoly::zero(spec.k()), |acc, (_, z)| &acc + z);
    Ok(Superpotential { w, classes })
}

/// `W_0 = Σ_i Z_{β_i}`.
pub fn hori_vafa(spec: &KahlerSpec) -> LaurentPoly {
    let d = spec.fan().len();
    (0..d)
        .map(|i| z_beta(spec, &DiskClass::basic(d, i)))
        .fold(LaurentPoly::zero(spec.k()), |acc, z| &acc + &z)
}

/// `<b, D> = m_i + D . α`, which must be an integer.
pub fn bulk_pairing(spec: &KahlerSpec, b: &DiskClass, divisor: &[Rational]) -> Result<i64> {
    let fan = spec.fan();
    let mut acc = divisor[b.i].clone();
    for (k, &a) in b.alpha.iter().enumerate() {
        if a == 0 {
            continue;
        }
        let mut unit = vec![0; fan.len()];
        unit[k] = 1;
        let prof = profile(fan, &unit);
        for (m, &p) in divisor.iter().zip(&prof) {
            acc += m * Rational::from_integer((a * p).into());
        }
    }
    if !acc.is_integer() {
        return Err(Error::NonIntegralPairing);
    }
    acc.to_integer().to_i64().ok_or(Error::NonIntegralPairing)
}

/// `a + Σ_b exp(<b, D>) Z_b`, with `exp(1)` kept as an extra formal
/// parameter `e` after `q1..qk`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BulkPotential {
    pub poly: LaurentPoly,
}

impl BulkPotential {
    pub fn names(&self) -> Vec<String> {
        let mut n = default_names(self.poly.nparams() - 1);
        n.push("e".to_string());
        n
    }

    pub fn canonical_string(&self) -> String {
        self.poly.canonical_string_with(&self.names())
    }

    /// Coefficients of each `z`-monomial with `q` substituted and
    /// `e = exp(1)`.
    pub fn numeric(&self, qvals: &[f64]) -> BTreeMap<ZExp, f64> {
        let mut vals = qvals.to_vec();
        vals.push(std::f64::consts::E);
        self.poly
            .terms()
            .map(|(&z, c)| (z, c.evaluate_f64(&vals)))
            .collect()
    }
}

/// Bulk deformation by `a * 1 + D + point * [pt]`; only `point = 0` is
/// supported.
pub fn bulk_superpotential(
    spec: &KahlerSpec,
    a: &Rational,
    divisor: &[Rational],
    point: &Rational,
) -> Result<BulkPotential> {
    if !point.is_zero() {
        return Err(Error::UnsupportedBulk);
    }
    let d = spec.fan().len();
    if divisor.len() != d {
        return Err(Error::ConstantCount {
            expected: d,
            got: divisor.len(),
        });
    }
    let k = spec.k();
    let sp = superpotential(spec)?;
    let mut poly = LaurentPoly::constant(QPoly::constant(k + 1, a.clone()));
    for (b, z) in &sp.classes {
        let m = bulk_pairing(spec, b, divisor)?;
        let mut e = vec![0; k + 1];
        e[k] = i32::try_from(m).map_err(|_| Error::NonIntegralPairing)?;
        poly = &poly + &z.extend_params(1).scale_q(&QPoly::q_power(e));
    }
    Ok(BulkPotential { poly })
}
