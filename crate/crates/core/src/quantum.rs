//! Small quantum cohomology of a semi-Fano toric surface other than `P^2`.
//!
//! Closed invariants are 0 or 1 and are read off from the shape of the curve
//! class. For `c_1 = 2` (one point insertion) it is a fiber plus, at each of
//! its two sections, an optional admissible run on the (-2)-chain through
//! that section. For `c_1 = 1` it is a (-1)-curve with two all-ones arms.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::disks::{admissible_sequences, is_admissible_sequence};
use crate::error::{Error, Result};
use crate::fan::{det, Fan};
use crate::homology::{
    chern_number, dual_bases, dual_bases_with, fiber_classes, linear_relations, profile, DualBases,
};
use crate::kahler::KahlerSpec;
use crate::laurent::{default_names, monomial_body, rat, QPoly, Rational};
use crate::par::{self, Execution};

/// `scalar * 1 + Σ divisor[k] D_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QHElement {
    pub scalar: QPoly,
    pub divisor: Vec<QPoly>,
}

impl QHElement {
    pub fn zero(d: usize, k: usize) -> QHElement {
        QHElement {
            scalar: QPoly::zero(k),
            divisor: vec![QPoly::zero(k); d],
        }
    }

    /// `Σ m_k D_k` with constant coefficients.
    pub fn from_divisor(k: usize, m: &[Rational]) -> QHElement {
        QHElement {
            scalar: QPoly::zero(k),
            divisor: m.iter().map(|c| QPoly::constant(k, c.clone())).collect(),
        }
    }

    pub fn nparams(&self) -> usize {
        self.scalar.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero() && self.divisor.iter().all(QPoly::is_zero)
    }

    pub fn scale_q(&self, c: &QPoly) -> QHElement {
        QHElement {
            scalar: &self.scalar * c,
            divisor: self.divisor.iter().map(|x| x * c).collect(),
        }
    }

    /// The representative with no `D_p`, `D_q` terms, where `(p, q)` is the
    /// pair of largest indices whose rays are independent.
    pub fn reduce(&self, fan: &Fan) -> QHElement {
        let d = fan.len();
        assert_eq!(self.divisor.len(), d);
        let (p, q) = elimination_pair(fan);
        let (vp, vq) = (fan.ray(p), fan.ray(q));
        let dt = rat(det(vp, vq));
        let (mp, mq) = (&self.divisor[p], &self.divisor[q]);
        // x L1 + y L2 matches the D_p, D_q coefficients
        let x = (&mp.scale(&rat(vq.1)) - &mq.scale(&rat(vp.1))).scale(&dt.recip());
        let y = (&mq.scale(&rat(vp.0)) - &mp.scale(&rat(vq.0))).scale(&dt.recip());
        let [l1, l2] = linear_relations(fan);
        let divisor = (0..d)
            .map(|m| {
                let c = &(&self.divisor[m] - &x.scale(&rat(l1[m]))) - &y.scale(&rat(l2[m]));
                debug_assert!(m != p && m != q || c.is_zero());
                c
            })
            .collect();
        QHElement {
            scalar: self.scalar.clone(),
            divisor,
        }
    }

    pub fn render(&self) -> String {
        self.render_with(&default_names(self.nparams()))
    }

    /// Scalar part first, then `D1..Dd`. A coefficient with several terms is
    /// bracketed.
    pub fn render_with(&self, names: &[String]) -> String {
        let mut pieces: Vec<(bool, String)> = Vec::new();
        for (e, c) in self.scalar.terms() {
            pieces.push((c.is_negative(), monomial_body(c, e, names)));
        }
        for (k, c) in self.divisor.iter().enumerate() {
            let dk = format!("D{}", k + 1);
            match c.len() {
                0 => {}
                1 => {
                    let (e, a) = c.terms().next().expect("one term");
                    let body = monomial_body(a, e, names);
                    let body = if body == "1" {
                        dk
                    } else {
                        format!("{body}*{dk}")
                    };
                    pieces.push((a.is_negative(), body));
                }
                _ => pieces.push((false, format!("({})*{dk}", c.render_with(names)))),
            }
        }
        if pieces.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (neg, body)) in pieces.iter().enumerate() {
            out.push_str(match (i, neg) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            });
            out.push_str(body);
        }
        out
    }
}

impl fmt::Display for QHElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl std::ops::Add for &QHElement {
    type Output = QHElement;
    fn add(self, rhs: &QHElement) -> QHElement {
        QHElement {
            scalar: &self.scalar + &rhs.scalar,
            divisor: self
                .divisor
                .iter()
                .zip(&rhs.divisor)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl std::ops::Sub for &QHElement {
    type Output = QHElement;
    fn sub(self, rhs: &QHElement) -> QHElement {
        QHElement {
            scalar: &self.scalar - &rhs.scalar,
            divisor: self
                .divisor
                .iter()
                .zip(&rhs.divisor)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

fn elimination_pair(fan: &Fan) -> (usize, usize) {
    let d = fan.len();
    for q in (1..d).rev() {
        for p in (0..q).rev() {
            if det(fan.ray(p), fan.ray(q)) != 0 {
                return (p, q);
            }
        }
    }
    unreachable!("a complete fan spans the plane")
}

/// Unordered non-adjacent pairs `(i, j)` with `i < j`.
pub fn primitive_pairs(fan: &Fan) -> Result<Vec<(usize, usize)>> {
    if fan.is_p2() {
        return Err(Error::IsP2);
    }
    let d = fan.len();
    Ok((0..d)
        .flat_map(|i| (i + 1..d).map(move |j| (i, j)))
        .filter(|&(i, j)| !fan.adjacent(i, j))
        .collect())
}

/// Curve classes that can carry a nonzero invariant, one representative per
/// class, split by Chern number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveCandidates {
    pub c1_two: Vec<Vec<i64>>,
    pub c1_one: Vec<Vec<i64>>,
}

fn dedup_by_profile(fan: &Fan, classes: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    let mut seen = BTreeSet::new();
    classes
        .into_iter()
        .filter(|a| seen.insert(profile(fan, a)))
        .collect()
}

pub fn curve_candidates(fan: &Fan) -> Result<CurveCandidates> {
    if !fan.is_semi_fano() {
        return Err(Error::NotSemiFano);
    }
    let d = fan.len();
    let mut two = Vec::new();
    for ((a, b), f) in fiber_classes(fan) {
        // the fiber splits into the basic disks at its two sections; each
        // half may pick up an admissible run on the chain through its end
        let (ra, rb) = (end_runs(fan, a)?, end_runs(fan, b)?);
        for x in &ra {
            for y in &rb {
                let mut alpha = f.clone();
                for ((m, u), v) in alpha.iter_mut().zip(x).zip(y) {
                    *m += u + v;
                }
                two.push(alpha);
            }
        }
    }
    let mut one = Vec::new();
    for k0 in (0..d).filter(|&k| fan.self_intersection(k) == -1) {
        // walk each way through (-2)-divisors
        let arm = |step: &dyn Fn(usize) -> usize| -> Vec<usize> {
            let mut out = Vec::new();
            let mut k = step(k0);
            while k != k0 && fan.self_intersection(k) == -2 && !out.contains(&k) {
                out.push(k);
                k = step(k);
            }
            out
        };
        let left = arm(&|k| fan.prev(k));
        let right = arm(&|k| fan.next(k));
        for l in 0..=left.len() {
            for r in 0..=right.len() {
                let mut alpha = vec![0; d];
                alpha[k0] = 1;
                let mut overlap = false;
                for &k in left[..l].iter().chain(&right[..r]) {
                    overlap |= alpha[k] != 0;
                    alpha[k] = 1;
                }
                if !overlap {
                    one.push(alpha);
                }
            }
        }
    }
    let c1_two = dedup_by_profile(fan, two);
    let c1_one = dedup_by_profile(fan, one);
    for a in c1_two.iter().chain(&c1_one) {
        assert!(
            a.iter().all(|&m| m <= d as i64 + 2),
            "candidate {a:?} exceeds the entry bound"
        );
    }
    debug_assert!(c1_two.iter().all(|a| chern_number(fan, a) == 2));
    debug_assert!(c1_one.iter().all(|a| chern_number(fan, a) == 1));
    Ok(CurveCandidates { c1_two, c1_one })
}

/// The zero vector, then every admissible run centered at `end` on the
/// (-2)-chain through it.
fn end_runs(fan: &Fan, end: usize) -> Result<Vec<Vec<i64>>> {
    let d = fan.len();
    let mut out = vec![vec![0; d]];
    let Some(chain) = fan.chain_containing(end)? else {
        return Ok(out);
    };
    let p = chain.position(end).expect("on chain");
    for lo in 0..=p {
        for hi in p..chain.len() {
            for s in admissible_sequences(hi - lo + 1, p - lo) {
                let mut run = vec![0; d];
                for (pos, v) in (lo..=hi).zip(s) {
                    run[chain.indices[pos]] = v;
                }
                out.push(run);
            }
        }
    }
    Ok(out)
}

fn check_chern(fan: &Fan, alpha: &[i64], expected: i64) -> Result<()> {
    if alpha.len() != fan.len() {
        return Err(Error::ConstantCount {
            expected: fan.len(),
            got: alpha.len(),
        });
    }
    let got = chern_number(fan, alpha);
    if got != expected {
        return Err(Error::WrongChern { expected, got });
    }
    Ok(())
}

/// The one-point genus-zero invariant of a class with `c_1 = 2`, decided by
/// comparing intersection profiles with [`curve_candidates`].
pub fn gw_c1_2_point(fan: &Fan, alpha: &[i64]) -> Result<i64> {
    check_chern(fan, alpha, 2)?;
    let prof = profile(fan, alpha);
    let cands = curve_candidates(fan)?;
    Ok(i64::from(
        cands.c1_two.iter().any(|a| profile(fan, a) == prof),
    ))
}

/// The unpointed genus-zero invariant of a class with `c_1 = 1`, decided
/// directly on the coefficient vector.
pub fn gw_c1_1(fan: &Fan, alpha: &[i64]) -> Result<i64> {
    check_chern(fan, alpha, 1)?;
    if !fan.is_semi_fano() {
        return Err(Error::NotSemiFano);
    }
    let d = fan.len();
    if alpha.iter().any(|&m| m < 0) {
        return Ok(0);
    }
    let centers: Vec<usize> = (0..d)
        .filter(|&k| alpha[k] != 0 && fan.self_intersection(k) == -1)
        .collect();
    let [k0] = centers[..] else { return Ok(0) };
    if alpha[k0] != 1 {
        return Ok(0);
    }
    let mut covered = vec![false; d];
    covered[k0] = true;
    for step in [Fan::prev as fn(&Fan, usize) -> usize, Fan::next] {
        let mut values = vec![alpha[k0]];
        let mut k = step(fan, k0);
        while alpha[k] != 0 && !covered[k] {
            if fan.self_intersection(k) != -2 {
                return Ok(0);
            }
            covered[k] = true;
            values.push(alpha[k]);
            k = step(fan, k);
        }
        if !is_admissible_sequence(&values, 0) {
            return Ok(0);
        }
    }
    Ok(i64::from((0..d).all(|k| covered[k] || alpha[k] == 0)))
}

fn q_alpha(spec: &KahlerSpec, alpha: &[i64]) -> QPoly {
    QPoly::q_power(spec.curve_area(alpha).q_exponents())
}

fn check_pair(fan: &Fan, i: usize, j: usize) -> Result<()> {
    if fan.is_p2() {
        return Err(Error::IsP2);
    }
    if !fan.is_semi_fano() {
        return Err(Error::NotSemiFano);
    }
    fan.check_index(i)?;
    fan.check_index(j)?;
    if i == j || fan.adjacent(i, j) {
        return Err(Error::NotPrimitivePair(i, j));
    }
    Ok(())
}

fn product_with(
    spec: &KahlerSpec,
    i: usize,
    j: usize,
    dual: impl Fn(&[i64]) -> Vec<Rational>,
) -> Result<QHElement> {
    let fan = spec.fan();
    check_pair(fan, i, j)?;
    let (d, k) = (fan.len(), spec.k());
    let cands = curve_candidates(fan)?;
    let mut out = QHElement::zero(d, k);
    for a in &cands.c1_two {
        let p = profile(fan, a);
        let w = p[i] * p[j];
        if w != 0 {
            out.scalar = &out.scalar + &q_alpha(spec, a).scale(&rat(w));
        }
    }
    for a in &cands.c1_one {
        let p = profile(fan, a);
        let w = p[i] * p[j];
        if w == 0 {
            continue;
        }
        let qa = q_alpha(spec, a).scale(&rat(w));
        for (m, c) in dual(a).iter().enumerate() {
            if !c.is_zero() {
                out.divisor[m] = &out.divisor[m] + &qa.scale(c);
            }
        }
    }
    Ok(out)
}

/// `D_i * D_j`, reduced.
pub fn quantum_product(spec: &KahlerSpec, i: usize, j: usize) -> Result<QHElement> {
    check_pair(spec.fan(), i, j)?;
    let bases = dual_bases(spec.fan())?;
    quantum_product_in(spec, i, j, &bases)
}

/// `D_i * D_j` expanded in the dual of the given coordinate basis, reduced.
pub fn quantum_product_with_basis(
    spec: &KahlerSpec,
    i: usize,
    j: usize,
    basis: &[usize],
) -> Result<QHElement> {
    check_pair(spec.fan(), i, j)?;
    let bases = dual_bases_with(spec.fan(), basis)?;
    quantum_product_in(spec, i, j, &bases)
}

fn quantum_product_in(
    spec: &KahlerSpec,
    i: usize,
    j: usize,
    bases: &DualBases,
) -> Result<QHElement> {
    let fan = spec.fan();
    Ok(product_with(spec, i, j, |a| bases.expand(fan, a))?.reduce(fan))
}

/// `D_i * D_j` with each `c_1 = 1` class contributing its own coefficient
/// vector as the divisor part. Not reduced.
pub fn quantum_product_literal(spec: &KahlerSpec, i: usize, j: usize) -> Result<QHElement> {
    product_with(spec, i, j, |a| a.iter().map(|&m| rat(m)).collect())
}

/// `D_i * D_j` for every primitive pair.
pub fn quantum_sr_relations(
    spec: &KahlerSpec,
    exec: Execution,
) -> Result<Vec<((usize, usize), QHElement)>> {
    let pairs = primitive_pairs(spec.fan())?;
    let bases = dual_bases(spec.fan())?;
    par::map(exec, &pairs, |&(i, j)| {
        quantum_product_in(spec, i, j, &bases).map(|p| ((i, j), p))
    })
    .into_iter()
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::{hirzebruch, p2};

    fn spec(rays: &[(i64, i64)], k: usize, rows: &[&[i64]]) -> KahlerSpec {
        let fan = Fan::new(rays.to_vec()).unwrap();
        KahlerSpec::from_table(fan, k, rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn x3() -> KahlerSpec {
        spec(
            &[(1, 0), (0, 1), (-1, -1), (0, -1), (1, -1), (2, -1)],
            4,
            &[
                &[0, 0, 0, 0],
                &[0, 0, 0, 0],
                &[1, 1, 2, 3],
                &[1, 0, 1, 2],
                &[1, 0, 0, 1],
                &[1, 0, 0, 0],
            ],
        )
    }

    fn f0() -> KahlerSpec {
        spec(
            &[(1, 0), (0, 1), (-1, 0), (0, -1)],
            2,
            &[&[0, 0], &[0, 0], &[1, 0], &[0, 1]],
        )
    }

    fn q(k: usize, e: &[i32], c: i64) -> QPoly {
        assert_eq!(e.len(), k);
        QPoly::monomial(e.to_vec(), rat(c))
    }

    fn divisor(k: usize, d: usize, terms: &[(usize, QPoly)]) -> QHElement {
        let mut out = QHElement::zero(d, k);
        for (m, c) in terms {
            out.divisor[*m] = &out.divisor[*m] + c;
        }
        out
    }

    #[test]
    fn pairs() {
        assert_eq!(
            primitive_pairs(&hirzebruch(0)).unwrap(),
            vec![(0, 2), (1, 3)]
        );
        assert_eq!(primitive_pairs(x3().fan()).unwrap().len(), 9);
        assert_eq!(primitive_pairs(&p2()), Err(Error::IsP2));
    }

    #[test]
    fn invariants_on_x3() {
        let f = x3();
        let f = f.fan();
        assert_eq!(gw_c1_2_point(f, &[0, 0, 1, 0, 0, 0]).unwrap(), 1);
        assert_eq!(gw_c1_2_point(f, &[0, 0, 1, 1, 0, 0]).unwrap(), 1);
        assert_eq!(gw_c1_2_point(f, &[0, 0, 1, 0, 1, 0]).unwrap(), 0);
        assert_eq!(gw_c1_2_point(f, &[0, 0, 1, 1, 1, 0]).unwrap(), 1);
        assert_eq!(gw_c1_1(f, &[1, 0, 0, 0, 1, 1]).unwrap(), 1);
        assert_eq!(gw_c1_1(f, &[0, 0, 0, 0, 0, 1]).unwrap(), 1);
        assert_eq!(gw_c1_1(f, &[1, 0, 0, 1, 1, 1]).unwrap(), 1);
        assert_eq!(gw_c1_1(f, &[0, 0, 0, 1, 0, 1]).unwrap(), 0);
        assert_eq!(gw_c1_1(f, &[0, 0, 0, 0, 2, 1]).unwrap(), 0);
        assert_eq!(
            gw_c1_1(f, &[0, 0, 1, 0, 0, 0]),
            Err(Error::WrongChern {
                expected: 1,
                got: 2
            })
        );
        assert_eq!(
            gw_c1_2_point(f, &[0, 0, 0, 0, 0, 1]),
            Err(Error::WrongChern {
                expected: 2,
                got: 1
            })
        );
    }

    #[test]
    fn runs_at_both_sections() {
        // fiber D2 between the (-2)-sections D1 and D3
        let f = Fan::new(vec![
            (1, 0),
            (0, 1),
            (-1, 0),
            (-2, -1),
            (-1, -1),
            (0, -1),
            (1, -1),
            (2, -1),
        ])
        .unwrap();
        assert_eq!(gw_c1_2_point(&f, &[0, 1, 0, 0, 0, 0, 0, 0]).unwrap(), 1);
        assert_eq!(gw_c1_2_point(&f, &[1, 1, 0, 0, 0, 0, 0, 0]).unwrap(), 1);
        assert_eq!(gw_c1_2_point(&f, &[1, 1, 1, 0, 0, 0, 0, 0]).unwrap(), 1);
        assert_eq!(gw_c1_2_point(&f, &[2, 1, 1, 0, 0, 0, 0, 0]).unwrap(), 0);
    }

    #[test]
    fn candidates_agree_with_c1_1_predicate() {
        let s = x3();
        let f = s.fan();
        let c = curve_candidates(f).unwrap();
        assert!(c.c1_one.iter().all(|a| gw_c1_1(f, a).unwrap() == 1));
        assert_eq!(c.c1_one.len(), 6);
    }

    #[test]
    fn x3_product_d2_d4() {
        let s = x3();
        let fan = s.fan();
        let k = 4;
        // q1 q3 q4^2 - q1 q2 q3 q4^2 + q1 q3 q4 (D1 + D5 + D6) - q1 q2 q3 q4 (D1 + D4 + D5 + D6)
        let a = q(k, &[1, 0, 1, 1], 1);
        let b = q(k, &[1, 1, 1, 1], -1);
        let mut want = divisor(
            k,
            6,
            &[
                (0, a.clone()),
                (4, a.clone()),
                (5, a),
                (0, b.clone()),
                (3, b.clone()),
                (4, b.clone()),
                (5, b),
            ],
        );
        want.scalar = &q(k, &[1, 0, 1, 2], 1) - &q(k, &[1, 1, 1, 2], 1);
        let lit = quantum_product_literal(&s, 1, 3).unwrap();
        assert_eq!(lit, want);
        let red = quantum_product(&s, 1, 3).unwrap();
        assert_eq!(red, want.reduce(fan));
        assert_eq!(red.divisor[4], QPoly::zero(k));
        assert_eq!(red.divisor[5], QPoly::zero(k));
    }

    #[test]
    fn render() {
        let k = 2;
        let mut e = divisor(
            k,
            4,
            &[
                (0, QPoly::one(k)),
                (2, &q(k, &[1, 0], 1) + &q(k, &[0, 1], -2)),
                (3, q(k, &[1, 1], -1)),
            ],
        );
        e.scalar = q(k, &[0, 2], 3);
        assert_eq!(e.render(), "3*q2^2 + D1 + (-2*q2 + q1)*D3 - q1*q2*D4");
        assert_eq!(QHElement::zero(4, 2).render(), "0");
    }

    #[test]
    fn f0_fiber_relation() {
        let s = f0();
        let p = quantum_product(&s, 0, 2).unwrap();
        // D1 . f = 0 for f in the class of D1: the fiber through D2, D4
        assert!(p.divisor.iter().all(QPoly::is_zero));
        assert_eq!(p.scalar.len(), 1);
        let rels = quantum_sr_relations(&s, Execution::Sequential).unwrap();
        assert_eq!(rels.len(), 2);
        assert_eq!(rels, quantum_sr_relations(&s, Execution::Parallel).unwrap());
    }

    #[test]
    fn basis_independence() {
        let s = x3();
        let fan = s.fan();
        let d = fan.len();
        for (i, j) in primitive_pairs(fan).unwrap() {
            let reference = quantum_product(&s, i, j).unwrap();
            assert_eq!(
                quantum_product_literal(&s, i, j).unwrap().reduce(fan),
                reference
            );
            let mut tried = 0;
            for a in 0..d {
                for b in a + 1..d {
                    let basis: Vec<usize> = (0..d).filter(|&m| m != a && m != b).collect();
                    if let Ok(p) = quantum_product_with_basis(&s, i, j, &basis) {
                        assert_eq!(p, reference);
                        tried += 1;
                    }
                }
            }
            assert!(tried > 1);
        }
    }

    #[test]
    fn errors() {
        let s = x3();
        assert_eq!(
            quantum_product(&s, 1, 2),
            Err(Error::NotPrimitivePair(1, 2))
        );
        assert_eq!(
            quantum_product(&s, 3, 3),
            Err(Error::NotPrimitivePair(3, 3))
        );
        assert!(matches!(
            quantum_product(&s, 1, 9),
            Err(Error::IndexOutOfRange { .. })
        ));
    }
}
