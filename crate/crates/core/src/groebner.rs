//! Buchberger's algorithm over the rationals in three variables `z1, z2, u`.
//!
//! The Jacobian ring of a Laurent polynomial is presented as a quotient of
//! `Q[z1, z2, u]` by the cleared partials together with `u z1 z2 - 1`.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::laurent::Rational;

pub const NVARS: usize = 3;

/// Exponents of `z1, z2, u`.
pub type Mono = [u32; NVARS];

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic with `u` smallest.
    #[default]
    GrevLex,
    /// Graded lexicographic with `z1 > z2 > u`.
    DegLex,
}

impl MonomialOrder {
    pub fn cmp(self, a: &Mono, b: &Mono) -> Ordering {
        let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
        da.cmp(&db).then_with(|| match self {
            MonomialOrder::GrevLex => (0..NVARS)
                .rev()
                .map(|i| b[i].cmp(&a[i]))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal),
            MonomialOrder::DegLex => (0..NVARS)
                .map(|i| a[i].cmp(&b[i]))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal),
        })
    }
}

fn divides(a: &Mono, b: &Mono) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &Mono, b: &Mono) -> Mono {
    std::array::from_fn(|i| a[i].max(b[i]))
}

fn quotient(b: &Mono, a: &Mono) -> Mono {
    std::array::from_fn(|i| b[i] - a[i])
}

fn mul_mono(a: &Mono, b: &Mono) -> Mono {
    std::array::from_fn(|i| a[i] + b[i])
}

/// A polynomial with terms sorted from the largest monomial down.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    order: MonomialOrder,
    terms: Vec<(Mono, Rational)>,
}

impl Poly {
    pub fn zero(order: MonomialOrder) -> Poly {
        Poly {
            order,
            terms: Vec::new(),
        }
    }

    pub fn from_terms(
        order: MonomialOrder,
        terms: impl IntoIterator<Item = (Mono, Rational)>,
    ) -> Poly {
        let mut acc: HashMap<Mono, Rational> = HashMap::new();
        for (m, c) in terms {
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        let mut terms: Vec<(Mono, Rational)> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Poly { order, terms }
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Mono, Rational)] {
        &self.terms
    }

    pub fn leading(&self) -> Option<&(Mono, Rational)> {
        self.terms.first()
    }

    pub fn with_order(&self, order: MonomialOrder) -> Poly {
        Poly::from_terms(order, self.terms.iter().cloned())
    }

    fn monic(mut self) -> Poly {
        if let Some((_, lc)) = self.terms.first().cloned() {
            for (_, c) in self.terms.iter_mut() {
                *c /= &lc;
            }
        }
        self
    }

    /// `self - c * x^m * g`, merging the two sorted term lists.
    fn sub_scaled(&self, c: &Rational, m: &Mono, g: &Poly) -> Poly {
        let order = self.order;
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let (mut a, mut b) = (self.terms.iter().peekable(), g.terms.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some((mb, cb))) => {
                    out.push((mul_mono(m, mb), -(c * cb)));
                    b.next();
                }
                (Some((ma, ca)), Some((mb, cb))) => {
                    let mb2 = mul_mono(m, mb);
                    match order.cmp(ma, &mb2) {
                        Ordering::Greater => out.push(a.next().unwrap().clone()),
                        Ordering::Less => {
                            out.push((mb2, -(c * cb)));
                            b.next();
                        }
                        Ordering::Equal => {
                            let v = ca - c * cb;
                            if !v.is_zero() {
                                out.push((mb2, v));
                            }
                            a.next();
                            b.next();
                        }
                    }
                }
            }
        }
        Poly { order, terms: out }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        const NAMES: [&str; NVARS] = ["z1", "z2", "u"];
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let factors: Vec<String> = m
                .iter()
                .zip(NAMES)
                .filter(|(&e, _)| e > 0)
                .map(|(&e, n)| {
                    if e == 1 {
                        n.to_string()
                    } else {
                        format!("{n}^{e}")
                    }
                })
                .collect();
            let sign = match (i, c.is_negative()) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            let a = c.abs();
            let body = match (factors.is_empty(), a.is_one()) {
                (true, _) => a.to_string(),
                (false, true) => factors.join("*"),
                (false, false) => format!("{a}*{}", factors.join("*")),
            };
            write!(f, "{sign}{body}")?;
        }
        Ok(())
    }
}

/// Reduced Gröbner basis, monic and sorted by leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    order: MonomialOrder,
    polys: Vec<Poly>,
}

fn normal_form_in(p: &Poly, basis: &[Poly]) -> Poly {
    let order = p.order;
    let mut p = p.clone();
    let mut rem: Vec<(Mono, Rational)> = Vec::new();
    while let Some((lm, lc)) = p.terms.first().cloned() {
        match basis.iter().find(|g| divides(&g.terms[0].0, &lm)) {
            Some(g) => {
                let (glm, glc) = &g.terms[0];
                p = p.sub_scaled(&(&lc / glc), &quotient(&lm, glm), g);
            }
            None => {
                rem.push((lm, lc));
                p.terms.remove(0);
            }
        }
    }
    Poly { order, terms: rem }
}

fn s_polynomial(f: &Poly, g: &Poly) -> Poly {
    let (fm, fc) = &f.terms[0];
    let (gm, gc) = &g.terms[0];
    let l = lcm(fm, gm);
    let zero = Poly::zero(f.order);
    zero.sub_scaled(&-(Rational::one() / fc), &quotient(&l, fm), f)
        .sub_scaled(&(Rational::one() / gc), &quotient(&l, gm), g)
}

impl GroebnerBasis {
    pub fn new(generators: &[Poly], order: MonomialOrder) -> GroebnerBasis {
        let mut g: Vec<Poly> = generators
            .iter()
            .map(|p| p.with_order(order))
            .filter(|p| !p.is_zero())
            .map(Poly::monic)
            .collect();
        let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
        for j in 0..g.len() {
            for i in 0..j {
                pending.insert((i, j));
            }
        }
        let lcm_of = |g: &[Poly], (i, j): (usize, usize)| lcm(&g[i].terms[0].0, &g[j].terms[0].0);
        while !pending.is_empty() {
            // normal selection: smallest lcm first
            let &pair = pending
                .iter()
                .min_by(|&&a, &&b| order.cmp(&lcm_of(&g, a), &lcm_of(&g, b)))
                .expect("nonempty");
            pending.remove(&pair);
            let (i, j) = pair;
            let (mi, mj) = (g[i].terms[0].0, g[j].terms[0].0);
            let l = lcm(&mi, &mj);
            if l == mul_mono(&mi, &mj) {
                continue;
            }
            let key = |a: usize, b: usize| (a.min(b), a.max(b));
            let chain = (0..g.len()).any(|k| {
                k != i
                    && k != j
                    && divides(&g[k].terms[0].0, &l)
                    && !pending.contains(&key(i, k))
                    && !pending.contains(&key(j, k))
            });
            if chain {
                continue;
            }
            let h = normal_form_in(&s_polynomial(&g[i], &g[j]), &g);
            if h.is_zero() {
                continue;
            }
            let n = g.len();
            g.push(h.monic());
            for k in 0..n {
                pending.insert((k, n));
            }
        }
        // minimize, then interreduce
        let mut keep: Vec<Poly> = Vec::new();
        for (i, p) in g.iter().enumerate() {
            let lm = &p.terms[0].0;
            let redundant = g.iter().enumerate().any(|(j, q)| {
                let lq = &q.terms[0].0;
                j != i && divides(lq, lm) && (lq != lm || j < i)
            });
            if !redundant {
                keep.push(p.clone());
            }
        }
        let mut polys = Vec::with_capacity(keep.len());
        for i in 0..keep.len() {
            let (lm, others) = (keep[i].terms[0].clone(), {
                let mut o = keep.clone();
                o.remove(i);
                o
            });
            let tail = Poly {
                order,
                terms: keep[i].terms[1..].to_vec(),
            };
            let mut t = normal_form_in(&tail, &others).terms;
            t.insert(0, lm);
            polys.push(Poly { order, terms: t });
        }
        polys.sort_by(|a, b| order.cmp(&a.terms[0].0, &b.terms[0].0));
        GroebnerBasis { order, polys }
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    pub fn normal_form(&self, p: &Poly) -> Poly {
        normal_form_in(&p.with_order(self.order), &self.polys)
    }

    pub fn contains(&self, p: &Poly) -> bool {
        self.normal_form(p).is_zero()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.polys.iter().any(|p| p.terms[0].0 == [0; NVARS])
    }

    /// Monomials outside the leading-term ideal, in increasing order.
    pub fn standard_monomials(&self) -> Result<Vec<Mono>> {
        if self.is_unit_ideal() {
            return Ok(Vec::new());
        }
        let mut bound = [0u32; NVARS];
        for (v, b) in bound.iter_mut().enumerate() {
            *b = self
                .polys
                .iter()
                .map(|p| p.terms[0].0)
                .filter(|m| m.iter().enumerate().all(|(w, &e)| w == v || e == 0))
                .map(|m| m[v])
                .min()
                .ok_or(Error::InfiniteDimensional)?;
        }
        let mut out = Vec::new();
        for a in 0..bound[0] {
            for b in 0..bound[1] {
                for c in 0..bound[2] {
                    let m = [a, b, c];
                    if !self.polys.iter().any(|p| divides(&p.terms[0].0, &m)) {
                        out.push(m);
                    }
                }
            }
        }
        out.sort_by(|x, y| self.order.cmp(x, y));
        Ok(out)
    }

    pub fn dimension(&self) -> Result<usize> {
        self.standard_monomials().map(|s| s.len())
    }
}
