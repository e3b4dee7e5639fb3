//! The map `ψ` from quantum cohomology to the Jacobian ring of `W`, and the
//! checks that it is a ring isomorphism.
//!
//! Symbolic identities are exact in the formal `q`. Ideal membership and
//! the ring dimension are decided at a rational sample of `q` with
//! [`crate::groebner`].

use std::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::groebner::{GroebnerBasis, MonomialOrder, Poly};
use crate::homology::{linear_relations, profile};
use crate::kahler::KahlerSpec;
use crate::laurent::{rat, LaurentPoly, QPoly, Rational};
use crate::par::{self, Execution};
use crate::potential::superpotential;
use crate::quantum::{primitive_pairs, quantum_sr_relations, QHElement};
use crate::surface_file::Surface;

/// `⟨z_1 ∂_1 W, z_2 ∂_2 W⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobianIdeal {
    pub g1: LaurentPoly,
    pub g2: LaurentPoly,
}

impl JacobianIdeal {
    pub fn new(w: &LaurentPoly) -> JacobianIdeal {
        JacobianIdeal {
            g1: w.log_derivative(1),
            g2: w.log_derivative(2),
        }
    }

    pub fn of(spec: &KahlerSpec) -> Result<JacobianIdeal> {
        Ok(JacobianIdeal::new(&superpotential(spec)?.w))
    }

    /// Gröbner basis of the specialized ideal in `Q[z1, z2, u]`, including
    /// `u z1 z2 - 1`.
    pub fn groebner(&self, qvals: &[Rational], order: MonomialOrder) -> Result<GroebnerBasis> {
        let unit = Poly::from_terms(
            order,
            [([1, 1, 1], Rational::one()), ([0, 0, 0], -Rational::one())],
        );
        let gens = [
            cleared(&self.g1.specialize_q(qvals)?, order),
            cleared(&self.g2.specialize_q(qvals)?, order),
            unit,
        ];
        Ok(GroebnerBasis::new(&gens, order))
    }
}

/// A specialized Laurent polynomial times the smallest monomial making it
/// polynomial.
pub fn cleared(p: &LaurentPoly, order: MonomialOrder) -> Poly {
    assert_eq!(p.nparams(), 0, "specialize before clearing");
    let (_, terms) = p.clear_denominators();
    Poly::from_terms(
        order,
        terms
            .into_iter()
            .map(|((a, b), c)| ([a as u32, b as u32, 0], c.constant_term())),
    )
}

/// `ψ(D_k)` for every `k`.
pub fn psi_divisors(spec: &KahlerSpec) -> Result<Vec<LaurentPoly>> {
    let fan = spec.fan();
    let sp = superpotential(spec)?;
    let d = fan.len();
    let mut out = vec![LaurentPoly::zero(spec.k()); d];
    for (b, z) in &sp.classes {
        let prof = profile(fan, &b.alpha);
        for (k, o) in out.iter_mut().enumerate() {
            let pairing = i64::from(k == b.i) + prof[k];
            if pairing != 0 {
                *o = &*o + &z.scale(&rat(pairing));
            }
        }
    }
    Ok(out)
}

/// `ψ(Σ m_k D_k) = Σ_b (D . b) Z_b`.
pub fn psi_divisor(spec: &KahlerSpec, m: &[Rational]) -> Result<LaurentPoly> {
    let d = spec.fan().len();
    if m.len() != d {
        return Err(Error::ConstantCount {
            expected: d,
            got: m.len(),
        });
    }
    let units = psi_divisors(spec)?;
    Ok(combine(
        &units,
        &QPoly::zero(spec.k()),
        &m.iter()
            .map(|c| QPoly::constant(spec.k(), c.clone()))
            .collect::<Vec<_>>(),
    ))
}

fn combine(units: &[LaurentPoly], scalar: &QPoly, divisor: &[QPoly]) -> LaurentPoly {
    let mut out = LaurentPoly::constant(scalar.clone());
    for (u, c) in units.iter().zip(divisor) {
        if !c.is_zero() {
            out = &out + &u.scale_q(c);
        }
    }
    out
}

/// `ψ(scalar + Σ c_k D_k) = scalar + Σ c_k ψ(D_k)`.
pub fn psi_element(spec: &KahlerSpec, e: &QHElement) -> Result<LaurentPoly> {
    let units = psi_divisors(spec)?;
    Ok(combine(&units, &e.scalar, &e.divisor))
}

/// `ψ(L_j) = z_j ∂_j W` for `j = 1, 2`, exactly.
pub fn verify_linear_identity(spec: &KahlerSpec) -> Result<bool> {
    let w = superpotential(spec)?.w;
    let units = psi_divisors(spec)?;
    let k = spec.k();
    Ok(linear_relations(spec.fan())
        .iter()
        .enumerate()
        .all(|(j, l)| {
            let coeffs: Vec<QPoly> = l.iter().map(|&c| QPoly::constant(k, rat(c))).collect();
            combine(&units, &QPoly::zero(k), &coeffs) == w.log_derivative(j + 1)
        }))
}

pub fn groebner_membership(
    p: &LaurentPoly,
    ideal: &JacobianIdeal,
    qvals: &[Rational],
) -> Result<bool> {
    groebner_membership_with(p, ideal, qvals, MonomialOrder::default())
}

pub fn groebner_membership_with(
    p: &LaurentPoly,
    ideal: &JacobianIdeal,
    qvals: &[Rational],
    order: MonomialOrder,
) -> Result<bool> {
    let gb = ideal.groebner(qvals, order)?;
    Ok(gb.contains(&cleared(&p.specialize_q(qvals)?, order)))
}

pub fn jac_dimension(spec: &KahlerSpec, qvals: &[Rational]) -> Result<usize> {
    JacobianIdeal::of(spec)?
        .groebner(qvals, MonomialOrder::default())?
        .dimension()
}

fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|p| p * p <= n)
            .all(|p| !n.is_multiple_of(p))
}

/// `q_l = 1 / p_{l + attempt}` where `p_0, p_1, ...` are the primes from 7.
pub fn default_q_sample(k: usize, attempt: usize) -> Vec<Rational> {
    (7u64..)
        .filter(|&n| is_prime(n))
        .skip(attempt)
        .take(k)
        .map(|p| Rational::new(1.into(), p.into()))
        .collect()
}

/// Number of samples tried before giving up.
pub const MAX_ATTEMPTS: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationVerdict {
    pub pair: (usize, usize),
    pub member: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub name: String,
    pub qvals: Vec<Rational>,
    /// Earlier samples that failed, with the reason.
    pub rejected: Vec<(Vec<Rational>, String)>,
    pub linear_identity: bool,
    /// `None` when relations are not checked (`P^2`).
    pub relations: Option<Vec<RelationVerdict>>,
    /// `None` when the quotient is infinite-dimensional at this sample.
    pub dimension: Option<usize>,
    pub expected_dimension: usize,
    pub pass: bool,
}

impl VerificationReport {
    fn finish(mut self) -> VerificationReport {
        self.pass = self.linear_identity
            && self.relations.iter().flatten().all(|r| r.member)
            && self.dimension == Some(self.expected_dimension);
        self
    }

    fn failure_reason(&self) -> String {
        if !self.linear_identity {
            return "linear identity failed".to_string();
        }
        if let Some(r) = self.relations.iter().flatten().find(|r| !r.member) {
            return format!(
                "relation D{}*D{} not in the ideal",
                r.pair.0 + 1,
                r.pair.1 + 1
            );
        }
        match self.dimension {
            None => "infinite-dimensional quotient".to_string(),
            Some(n) => format!("dimension {n}, expected {}", self.expected_dimension),
        }
    }
}

fn join(q: &[Rational]) -> String {
    q.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ok = |b: bool| if b { "ok" } else { "FAIL" };
        writeln!(f, "surface {}", self.name)?;
        for (q, why) in &self.rejected {
            writeln!(f, "rejected-sample q={} ({why})", join(q))?;
        }
        writeln!(f, "sample q={}", join(&self.qvals))?;
        writeln!(f, "linear-identity {}", ok(self.linear_identity))?;
        match &self.relations {
            None => writeln!(f, "relations skipped (P2)")?,
            Some(rs) => {
                for r in rs {
                    writeln!(
                        f,
                        "relation D{}*D{} {}",
                        r.pair.0 + 1,
                        r.pair.1 + 1,
                        ok(r.member)
                    )?;
                }
            }
        }
        match self.dimension {
            Some(n) => writeln!(
                f,
                "dimension {n} expected {} {}",
                self.expected_dimension,
                ok(n == self.expected_dimension)
            )?,
            None => writeln!(
                f,
                "dimension infinite expected {} FAIL",
                self.expected_dimension
            )?,
        }
        write!(f, "result {}", if self.pass { "PASS" } else { "FAIL" })
    }
}

/// Membership of `ψ(D_i) ψ(D_j) - ψ(D_i * D_j)` for every primitive pair,
/// the linear identity, and the Jacobian ring dimension, at one sample.
pub fn verify_homomorphism(
    spec: &KahlerSpec,
    qvals: &[Rational],
    exec: Execution,
) -> Result<VerificationReport> {
    let fan = spec.fan();
    if fan.is_p2() {
        return Err(Error::IsP2);
    }
    let products = quantum_sr_relations(spec, exec)?;
    let mut report = base_report(spec, qvals)?;
    let (gb, units) = (&report_basis(spec, qvals)?, specialized_units(spec, qvals)?);
    let verdicts: Vec<Result<RelationVerdict>> = par::map(exec, &products, |((i, j), prod)| {
        let lhs = &units[*i] * &units[*j];
        let rhs = combine(
            &units,
            &QPoly::constant(0, prod.scalar.evaluate(qvals)),
            &specialize_all(&prod.divisor, qvals),
        );
        let diff = &lhs - &rhs;
        Ok(RelationVerdict {
            pair: (*i, *j),
            member: gb.contains(&cleared(&diff, gb.order())),
        })
    });
    report.relations = Some(verdicts.into_iter().collect::<Result<_>>()?);
    report.dimension = gb.dimension().ok();
    Ok(report.finish())
}

fn specialize_all(cs: &[QPoly], qvals: &[Rational]) -> Vec<QPoly> {
    cs.iter()
        .map(|c| QPoly::constant(0, c.evaluate(qvals)))
        .collect()
}

fn specialized_units(spec: &KahlerSpec, qvals: &[Rational]) -> Result<Vec<LaurentPoly>> {
    psi_divisors(spec)?
        .iter()
        .map(|u| u.specialize_q(qvals))
        .collect()
}

fn report_basis(spec: &KahlerSpec, qvals: &[Rational]) -> Result<GroebnerBasis> {
    JacobianIdeal::of(spec)?.groebner(qvals, MonomialOrder::default())
}

fn base_report(spec: &KahlerSpec, qvals: &[Rational]) -> Result<VerificationReport> {
    if qvals.len() != spec.k() {
        return Err(Error::ParameterMismatch(spec.k(), qvals.len()));
    }
    Ok(VerificationReport {
        name: String::new(),
        qvals: qvals.to_vec(),
        rejected: Vec::new(),
        linear_identity: verify_linear_identity(spec)?,
        relations: None,
        dimension: None,
        expected_dimension: spec.fan().len(),
        pass: false,
    })
}

fn verify_once(
    spec: &KahlerSpec,
    qvals: &[Rational],
    exec: Execution,
) -> Result<VerificationReport> {
    if spec.fan().is_p2() {
        let mut report = base_report(spec, qvals)?;
        report.dimension = report_basis(spec, qvals)?.dimension().ok();
        return Ok(report.finish());
    }
    verify_homomorphism(spec, qvals, exec)
}

/// Full check of one surface. Without `q`, the default samples are tried in
/// turn until one passes; the failed ones are listed in the report.
pub fn verify_surface(
    surface: &Surface,
    q: Option<&[Rational]>,
    exec: Execution,
) -> Result<VerificationReport> {
    let spec = &surface.spec;
    let mut rejected = Vec::new();
    let mut attempt = 0;
    loop {
        let qvals = match q {
            Some(q) => q.to_vec(),
            None => default_q_sample(spec.k(), attempt),
        };
        let mut report = verify_once(spec, &qvals, exec)?;
        report.name = surface.name.clone();
        attempt += 1;
        if report.pass || q.is_some() || attempt == MAX_ATTEMPTS {
            report.rejected = rejected;
            return Ok(report);
        }
        rejected.push((qvals, report.failure_reason()));
    }
}

/// [`verify_surface`] at the default samples for each surface.
pub fn verify_batch(surfaces: &[Surface], exec: Execution) -> Vec<Result<VerificationReport>> {
    // the outer map carries the parallelism; each surface runs sequentially
    par::map(exec, surfaces, |s| {
        verify_surface(s, None, Execution::Sequential)
    })
}

/// Pairs of a surface other than `P^2` whose relation lies in the ideal.
pub fn count_members(report: &VerificationReport) -> usize {
    report
        .relations
        .iter()
        .flatten()
        .filter(|r| r.member)
        .count()
}

/// Number of relations checked for a fan, `0` for `P^2`.
pub fn relation_count(spec: &KahlerSpec) -> usize {
    primitive_pairs(spec.fan()).map(|p| p.len()).unwrap_or(0)
}
