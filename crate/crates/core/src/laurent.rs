//! Exact Laurent polynomials in `z1, z2` whose coefficients are Laurent
//! polynomials in the Kähler parameters `q1..qk` over the rationals.
//!
//! Both layers use sparse `BTreeMap` storage keyed by exponent vectors and
//! never store a zero coefficient, so structural equality is ring equality.
//!
//! The canonical text form produced by [`LaurentPoly::canonical_string`] is a
//! stable output contract: golden files and the CLI compare it byte for byte.
//!
//! * Each z-term renders as `(qpoly)*z1^a*z2^b`; zero exponents and unit
//!   exponents are omitted, and the parentheses appear only when the
//!   coefficient has at least two monomials.
//! * A single-monomial coefficient is printed inline (`q1^2*q2*z1^-1`), with
//!   `1` shown only when there is no z-part.
//! * Monomials inside a coefficient are sorted by exponent vector,
//!   ascending lexicographically; z-terms are sorted by their rendered text.
//! * Negative coefficients join with ` - `; the zero polynomial is `0`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Integer → exact rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num/den` as an exact rational.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// A Laurent polynomial in `q_1..q_k` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i32>, Rational>,
}

impl QPoly {
    pub fn zero(nvars: usize) -> Self {
        QPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn monomial(exponents: Vec<i32>, coeff: Rational) -> Self {
        let nvars = exponents.len();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exponents, coeff);
        }
        QPoly { nvars, terms }
    }

    /// The monomial `q^e` with unit coefficient.
    pub fn q_power(exponents: Vec<i32>) -> Self {
        Self::monomial(exponents, Rational::one())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i32], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    /// Coefficient of the `q^0` monomial.
    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&vec![0; self.nvars])
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, exponents: Vec<i32>, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exponents) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check(&self, other: &QPoly) {
        assert_eq!(self.nvars, other.nvars, "q-parameter count mismatch");
    }

    pub fn scale(&self, c: &Rational) -> QPoly {
        if c.is_zero() {
            return QPoly::zero(self.nvars);
        }
        QPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Multiply every monomial by `q^shift`.
    pub fn shift(&self, shift: &[i32]) -> QPoly {
        assert_eq!(shift.len(), self.nvars);
        QPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), v.clone()))
                .collect(),
        }
    }

    /// Append `extra` new variables with exponent zero.
    pub fn extend_vars(&self, extra: usize) -> QPoly {
        QPoly {
            nvars: self.nvars + extra,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| {
                    let mut e = e.clone();
                    e.resize(self.nvars + extra, 0);
                    (e, v.clone())
                })
                .collect(),
        }
    }

    /// Smallest total degree among the monomials, `None` for zero.
    pub fn min_total_degree(&self) -> Option<i64> {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as i64).sum())
            .min()
    }

    /// Substitute exact values for every `q_l`.
    pub fn evaluate(&self, qvals: &[Rational]) -> Rational {
        assert_eq!(qvals.len(), self.nvars);
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for (q, &x) in qvals.iter().zip(e) {
                if x != 0 {
                    m *= num_traits::pow::Pow::pow(q, x);
                }
            }
            acc += m;
        }
        acc
    }

    pub fn evaluate_f64(&self, qvals: &[f64]) -> f64 {
        use num_traits::ToPrimitive;
        assert_eq!(qvals.len(), self.nvars);
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut m = c.to_f64().unwrap_or(f64::NAN);
                for (q, &x) in qvals.iter().zip(e) {
                    m *= q.powi(x);
                }
                m
            })
            .sum()
    }

    /// Render with the given variable names (one per parameter).
    pub fn render_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let body = monomial_body(c, e, names);
            match (i, c.is_negative()) {
                (0, true) => {
                    out.push('-');
                    out.push_str(&body);
                }
                (0, false) => out.push_str(&body),
                (_, true) => {
                    out.push_str(" - ");
                    out.push_str(&body);
                }
                (_, false) => {
                    out.push_str(" + ");
                    out.push_str(&body);
                }
            }
        }
        out
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_with(&default_names(self.nvars)))
    }
}

/// `q1..qk`.
pub fn default_names(k: usize) -> Vec<String> {
    (1..=k).map(|l| format!("q{l}")).collect()
}

fn power_factors(exponents: &[i32], names: &[String]) -> String {
    exponents
        .iter()
        .zip(names)
        .filter(|(&x, _)| x != 0)
        .map(|(&x, name)| {
            if x == 1 {
                name.clone()
            } else {
                format!("{name}^{x}")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// Unsigned rendering of `|c| * q^e`.
pub(crate) fn monomial_body(c: &Rational, exponents: &[i32], names: &[String]) -> String {
    let factors = power_factors(exponents, names);
    let a = c.abs();
    if factors.is_empty() {
        a.to_string()
    } else if a.is_one() {
        factors
    } else {
        format!("{a}*{factors}")
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        self.check(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        self.check(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &QPoly) -> QPoly {
        self.check(rhs);
        let mut out = QPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        self.scale(&-Rational::one())
    }
}

/// z-exponent pair `(e1, e2)`.
pub type ZExp = (i32, i32);

/// Laurent polynomial in `z1, z2` with [`QPoly`] coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    nparams: usize,
    terms: BTreeMap<ZExp, QPoly>,
}

impl LaurentPoly {
    pub fn zero(nparams: usize) -> Self {
        LaurentPoly {
            nparams,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(coeff: QPoly) -> Self {
        Self::term((0, 0), coeff)
    }

    /// `coeff * z^exp`.
    pub fn term(exp: ZExp, coeff: QPoly) -> Self {
        let mut p = Self::zero(coeff.nvars());
        p.add_term(exp, coeff);
        p
    }

    /// `z^exp` with unit coefficient.
    pub fn z_power(nparams: usize, exp: ZExp) -> Self {
        Self::term(exp, QPoly::one(nparams))
    }

    pub fn nparams(&self) -> usize {
        self.nparams
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ZExp, &QPoly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exp: ZExp) -> QPoly {
        self.terms
            .get(&exp)
            .cloned()
            .unwrap_or_else(|| QPoly::zero(self.nparams))
    }

    fn add_term(&mut self, exp: ZExp, coeff: QPoly) {
        assert_eq!(coeff.nvars(), self.nparams, "q-parameter count mismatch");
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn try_add(&self, rhs: &LaurentPoly) -> Result<LaurentPoly> {
        self.same_params(rhs)?;
        Ok(self + rhs)
    }

    pub fn try_sub(&self, rhs: &LaurentPoly) -> Result<LaurentPoly> {
        self.same_params(rhs)?;
        Ok(self - rhs)
    }

    pub fn try_mul(&self, rhs: &LaurentPoly) -> Result<LaurentPoly> {
        self.same_params(rhs)?;
        Ok(self * rhs)
    }

    fn same_params(&self, rhs: &LaurentPoly) -> Result<()> {
        if self.nparams == rhs.nparams {
            Ok(())
        } else {
            Err(Error::ParameterMismatch(self.nparams, rhs.nparams))
        }
    }

    pub fn scale(&self, c: &Rational) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.nparams);
        for (e, v) in &self.terms {
            out.add_term(*e, v.scale(c));
        }
        out
    }

    pub fn scale_q(&self, c: &QPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.nparams);
        for (e, v) in &self.terms {
            out.add_term(*e, v * c);
        }
        out
    }

    /// `z_j ∂/∂z_j` for `j` in `{1, 2}`.
    pub fn log_derivative(&self, j: usize) -> LaurentPoly {
        assert!(j == 1 || j == 2, "z-variable index must be 1 or 2");
        let mut out = LaurentPoly::zero(self.nparams);
        for (&e, v) in &self.terms {
            let w = if j == 1 { e.0 } else { e.1 };
            out.add_term(e, v.scale(&rat(w as i64)));
        }
        out
    }

    /// Substitute exact values for the Kähler parameters. Each value must lie
    /// in the open interval `(0, 1)`.
    pub fn specialize_q(&self, qvals: &[Rational]) -> Result<LaurentPoly> {
        if qvals.len() != self.nparams {
            return Err(Error::ParameterMismatch(self.nparams, qvals.len()));
        }
        for (index, q) in qvals.iter().enumerate() {
            if !q.is_positive() || *q >= Rational::one() {
                return Err(Error::OutOfRange { index });
            }
        }
        let mut out = LaurentPoly::zero(0);
        for (e, v) in &self.terms {
            out.add_term(*e, QPoly::constant(0, v.evaluate(qvals)));
        }
        Ok(out)
    }

    /// Append `extra` formal parameters to every coefficient.
    pub fn extend_params(&self, extra: usize) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.nparams + extra);
        for (e, v) in &self.terms {
            out.add_term(*e, v.extend_vars(extra));
        }
        out
    }

    pub fn canonical_string(&self) -> String {
        self.canonical_string_with(&default_names(self.nparams))
    }

    pub fn canonical_string_with(&self, names: &[String]) -> String {
        assert_eq!(names.len(), self.nparams);
        let mut items: Vec<(String, bool)> = self
            .terms
            .iter()
            .map(|(&(e1, e2), coeff)| {
                let mut z = Vec::new();
                for (name, x) in [("z1", e1), ("z2", e2)] {
                    match x {
                        0 => {}
                        1 => z.push(name.to_string()),
                        _ => z.push(format!("{name}^{x}")),
                    }
                }
                let zpart = z.join("*");
                if coeff.len() >= 2 {
                    let body = format!("({})", coeff.render_with(names));
                    if zpart.is_empty() {
                        (body, false)
                    } else {
                        (format!("{body}*{zpart}"), false)
                    }
                } else {
                    let (e, c) = coeff.terms().next().expect("nonzero coefficient");
                    let mono = monomial_body(c, e, names);
                    let body = if zpart.is_empty() {
                        mono
                    } else if mono == "1" {
                        zpart
                    } else {
                        format!("{mono}*{zpart}")
                    };
                    (body, c.is_negative())
                }
            })
            .collect();
        if items.is_empty() {
            return "0".to_string();
        }
        items.sort();
        let mut out = String::new();
        for (i, (body, neg)) in items.iter().enumerate() {
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(body);
        }
        out
    }

    /// Multiply by the monomial `z1^a z2^b` with the smallest exponents that
    /// make every term polynomial. Returns the shift and the shifted terms.
    pub fn clear_denominators(&self) -> (ZExp, Vec<(ZExp, QPoly)>) {
        let a = self.terms.keys().map(|e| e.0).min().unwrap_or(0).min(0);
        let b = self.terms.keys().map(|e| e.1).min().unwrap_or(0).min(0);
        let shifted = self
            .terms
            .iter()
            .map(|(&(x, y), c)| ((x - a, y - b), c.clone()))
            .collect();
        ((-a, -b), shifted)
    }

    /// Rational value at numeric `z` with all parameters already specialized.
    pub fn evaluate_f64(&self, z: (f64, f64), qvals: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(&(a, b), c)| c.evaluate_f64(qvals) * z.0.powi(a) * z.1.powi(b))
            .sum()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nparams, rhs.nparams, "q-parameter count mismatch");
        let mut out = LaurentPoly::zero(self.nparams);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term((ea.0 + eb.0, ea.1 + eb.1), ca * cb);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&-Rational::one())
    }
}

impl std::iter::Sum for LaurentPoly {
    /// Panics on an empty iterator, which has no parameter count.
    fn sum<I: Iterator<Item = LaurentPoly>>(mut iter: I) -> LaurentPoly {
        let first = iter
            .next()
            .expect("sum of an empty iterator of Laurent polynomials");
        iter.fold(first, |acc, p| &acc + &p)
    }
}

/// Inverse of [`LaurentPoly::canonical_string`]; only used to check that the
/// printer is injective.
#[cfg(test)]
pub(crate) fn parse_canonical(s: &str, nparams: usize) -> LaurentPoly {
    fn split_signed(s: &str) -> Vec<(bool, &str)> {
        let mut out = Vec::new();
        let mut depth = 0;
        let bytes = s.as_bytes();
        let mut start = 0;
        let mut neg = false;
        if s.starts_with('-') {
            neg = true;
            start = 1;
        }
        let mut i = start;
        while i < bytes.len() {
            match bytes[i] {
                b'(' => depth += 1,
                b')' => depth -= 1,
                b' ' if depth == 0 => {
                    out.push((neg, &s[start..i]));
                    neg = bytes[i + 1] == b'-';
                    i += 3;
                    start = i;
                    continue;
                }
                _ => {}
            }
            i += 1;
        }
        out.push((neg, &s[start..]));
        out
    }
    fn parse_factors(s: &str, nparams: usize) -> (Rational, Vec<i32>, ZExp) {
        let mut c = Rational::one();
        let mut e = vec![0; nparams];
        let mut z = (0, 0);
        for f in s.split('*') {
            let (base, pow) = match f.split_once('^') {
                Some((b, p)) => (b, p.parse::<i32>().unwrap()),
                None => (f, 1),
            };
            if let Some(l) = base.strip_prefix('q') {
                e[l.parse::<usize>().unwrap() - 1] = pow;
            } else if base == "z1" {
                z.0 = pow;
            } else if base == "z2" {
                z.1 = pow;
            } else {
                c = match base.split_once('/') {
                    Some((n, d)) => ratio(n.parse().unwrap(), d.parse().unwrap()),
                    None => rat(base.parse().unwrap()),
                };
            }
        }
        (c, e, z)
    }
    let mut out = LaurentPoly::zero(nparams);
    if s == "0" {
        return out;
    }
    for (neg, term) in split_signed(s) {
        let sign = if neg {
            -Rational::one()
        } else {
            Rational::one()
        };
        if let Some(rest) = term.strip_prefix('(') {
            let close = rest.rfind(')').unwrap();
            let mut coeff = QPoly::zero(nparams);
            for (n, m) in split_signed(&rest[..close]) {
                let (c, e, _) = parse_factors(m, nparams);
                let c = if n { -c } else { c };
                coeff = &coeff + &QPoly::monomial(e, c);
            }
            let z = match rest[close + 1..].strip_prefix('*') {
                Some(zs) => parse_factors(zs, nparams).2,
                None => (0, 0),
            };
            out.add_term(z, coeff.scale(&sign));
        } else {
            let (c, e, z) = parse_factors(term, nparams);
            out.add_term(z, QPoly::monomial(e, c * sign));
        }
    }
    out
}
