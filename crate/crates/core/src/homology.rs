//! Intersection pairing on toric divisors, Chern numbers, linear relations,
//! dual bases of `H^2` and fiber classes.
//!
//! Divisor and curve classes are plain coefficient vectors over `D_1..D_d`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fan::{det, Fan};
use crate::laurent::{rat, Rational};

/// `D_i . D_j`.
pub fn intersection(fan: &Fan, i: usize, j: usize) -> i64 {
    if i == j {
        fan.self_intersection(i)
    } else if fan.adjacent(i, j) {
        1
    } else {
        0
    }
}

pub fn intersection_matrix(fan: &Fan) -> Vec<Vec<i64>> {
    let d = fan.len();
    (0..d)
        .map(|i| (0..d).map(|j| intersection(fan, i, j)).collect())
        .collect()
}

/// `D . D_k` for every `k`.
pub fn profile(fan: &Fan, a: &[i64]) -> Vec<i64> {
    let d = fan.len();
    assert_eq!(a.len(), d);
    (0..d)
        .map(|k| a[fan.prev(k)] + a[fan.next(k)] + a[k] * fan.self_intersection(k))
        .collect()
}

pub fn pairing(fan: &Fan, a: &[i64], b: &[i64]) -> i64 {
    profile(fan, a).iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn pairing_rational(fan: &Fan, a: &[Rational], b: &[i64]) -> Rational {
    let mut acc = Rational::zero();
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            let m = intersection(fan, i, j) * bj;
            if m != 0 {
                acc += ai * rat(m);
            }
        }
    }
    acc
}

/// `c_1(α) = Σ m_k (2 + D_k^2)`.
pub fn chern_number(fan: &Fan, alpha: &[i64]) -> i64 {
    alpha
        .iter()
        .enumerate()
        .map(|(k, m)| m * (2 + fan.self_intersection(k)))
        .sum()
}

/// `L_j = Σ_i v_i^j D_i` for `j = 1, 2`.
pub fn linear_relations(fan: &Fan) -> [Vec<i64>; 2] {
    [
        fan.rays().iter().map(|v| v.0).collect(),
        fan.rays().iter().map(|v| v.1).collect(),
    ]
}

/// A basis of `H^2` made of coordinate divisors, together with its dual
/// under the intersection pairing (`basis[a] . dual[b] = δ_ab`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualBases {
    pub basis: Vec<usize>,
    pub dual: Vec<Vec<Rational>>,
}

impl DualBases {
    /// `Σ_m (D_{basis[m]} . α) dual[m]`, the class of `α` written in the
    /// dual basis.
    pub fn expand(&self, fan: &Fan, alpha: &[i64]) -> Vec<Rational> {
        let prof = profile(fan, alpha);
        let mut out = vec![Rational::zero(); fan.len()];
        for (m, &b) in self.basis.iter().enumerate() {
            let c = prof[b];
            if c == 0 {
                continue;
            }
            for (o, x) in out.iter_mut().zip(&self.dual[m]) {
                *o += x * rat(c);
            }
        }
        out
    }
}

/// First `(d-2)`-subset of coordinate divisors, in lexicographic order,
/// that is a basis of `H^2`.
pub fn dual_bases(fan: &Fan) -> Result<DualBases> {
    let d = fan.len();
    if d < 4 {
        return Err(Error::NoDualBasis(d));
    }
    for subset in combinations(d, d - 2) {
        if let Ok(b) = dual_bases_with(fan, &subset) {
            return Ok(b);
        }
    }
    Err(Error::SingularPairing)
}

pub fn dual_bases_with(fan: &Fan, basis: &[usize]) -> Result<DualBases> {
    let d = fan.len();
    if d < 4 {
        return Err(Error::NoDualBasis(d));
    }
    for &b in basis {
        fan.check_index(b)?;
    }
    let n = basis.len();
    if n != d - 2 {
        return Err(Error::SingularPairing);
    }
    let gram: Vec<Vec<Rational>> = basis
        .iter()
        .map(|&a| {
            basis
                .iter()
                .map(|&b| rat(intersection(fan, a, b)))
                .collect()
        })
        .collect();
    let inv = invert(gram).ok_or(Error::SingularPairing)?;
    // dual_b = Σ_c inv[c][b] D_{basis[c]}
    let dual = (0..n)
        .map(|b| {
            let mut v = vec![Rational::zero(); d];
            for (c, &bc) in basis.iter().enumerate() {
                v[bc] = inv[c][b].clone();
            }
            v
        })
        .collect();
    Ok(DualBases {
        basis: basis.to_vec(),
        dual,
    })
}

fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    rec(0, n, r, &mut cur, &mut out);
    out
}

/// Gauss-Jordan inverse over the rationals.
pub(crate) fn invert(mut m: Vec<Vec<Rational>>) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        inv.swap(col, piv);
        let p = m[col][col].clone();
        for x in m[col].iter_mut() {
            *x /= &p;
        }
        for x in inv[col].iter_mut() {
            *x /= &p;
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for c in 0..n {
                let (a, b) = (m[col][c].clone(), inv[col][c].clone());
                m[r][c] -= &f * a;
                inv[r][c] -= &f * b;
            }
        }
    }
    Some(inv)
}

/// For each pair of opposite rays `{a, b}`, the fiber class `f` with
/// `f.D_a = f.D_b = 1` and `f.D_k = 0` otherwise, as an effective divisor.
///
/// With `w` orthogonal to `v_a`, `Σ_{<w,v_k> > 0} <w,v_k> D_k` represents
/// `f`; of the two choices of sign, the one with smaller total multiplicity
/// is returned (ties go to the lexicographically larger vector).
pub fn fiber_classes(fan: &Fan) -> Vec<((usize, usize), Vec<i64>)> {
    let d = fan.len();
    let mut out = Vec::new();
    for a in 0..d {
        for b in a + 1..d {
            let (va, vb) = (fan.ray(a), fan.ray(b));
            if va.0 != -vb.0 || va.1 != -vb.1 {
                continue;
            }
            // <w, v> with w = (-va.1, va.0)
            let side = |sign: i64| -> Vec<i64> {
                fan.rays()
                    .iter()
                    .map(|&v| (sign * det(va, v)).max(0))
                    .collect()
            };
            let (p, n) = (side(1), side(-1));
            let (sp, sn): (i64, i64) = (p.iter().sum(), n.iter().sum());
            let f = if sp < sn || (sp == sn && p > n) { p } else { n };
            out.push(((a, b), f));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::{hirzebruch, p2};
    use proptest::prelude::*;

    fn x3() -> Fan {
        Fan::new(vec![(1, 0), (0, 1), (-1, -1), (0, -1), (1, -1), (2, -1)]).unwrap()
    }

    fn unit(d: usize, k: usize) -> Vec<i64> {
        let mut v = vec![0; d];
        v[k] = 1;
        v
    }

    #[test]
    fn intersections() {
        let f = x3();
        assert_eq!(intersection(&f, 1, 3), 0);
        assert_eq!(intersection(&f, 2, 3), 1);
        assert_eq!(intersection(&f, 0, 0), -2);
        let m = intersection_matrix(&f);
        for i in 0..6 {
            for j in 0..6 {
                assert_eq!(m[i][j], pairing(&f, &unit(6, i), &unit(6, j)));
            }
        }
    }

    #[test]
    fn chern_numbers() {
        let f = x3();
        assert_eq!(chern_number(&f, &[0, 0, 1, 0, 0, 0]), 2);
        assert_eq!(chern_number(&f, &[0, 0, 1, 1, 0, 0]), 2);
        assert_eq!(chern_number(&f, &[1, 0, 0, 0, 1, 1]), 1);
    }

    #[test]
    fn relations() {
        let [l1, l2] = linear_relations(&p2());
        assert_eq!(l1, vec![1, 0, -1]);
        assert_eq!(l2, vec![0, 1, -1]);
        // X3: same span as D1-D3+D5+2D6 and D2-D3-D4-D5-D6
        let [l1, l2] = linear_relations(&x3());
        assert_eq!(l1, vec![1, 0, -1, 0, 1, 2]);
        assert_eq!(l2, vec![0, 1, -1, -1, -1, -1]);
    }

    #[test]
    fn relations_pair_to_zero() {
        for f in [p2(), hirzebruch(0), hirzebruch(2), x3()] {
            for l in linear_relations(&f) {
                assert!(profile(&f, &l).iter().all(|&x| x == 0));
            }
        }
    }

    #[test]
    fn x3_dual_bases() {
        let f = x3();
        let b = dual_bases_with(&f, &[0, 3, 4, 5]).unwrap();
        // expected duals D2, D3, D4+2D3, D1+2D2, modulo linear equivalence
        let expected: [&[i64]; 4] = [
            &[0, 1, 0, 0, 0, 0],
            &[0, 0, 1, 0, 0, 0],
            &[0, 0, 2, 1, 0, 0],
            &[1, 2, 0, 0, 0, 0],
        ];
        for (m, e) in expected.iter().enumerate() {
            for k in 0..6 {
                assert_eq!(
                    pairing_rational(&f, &b.dual[m], &unit(6, k)),
                    rat(pairing(&f, e, &unit(6, k)))
                );
            }
        }
    }

    #[test]
    fn f0_dual_bases() {
        let f = hirzebruch(0);
        let b = dual_bases_with(&f, &[0, 1]).unwrap();
        assert_eq!(b.dual[0], vec![rat(0), rat(1), rat(0), rat(0)]);
        assert_eq!(b.dual[1], vec![rat(1), rat(0), rat(0), rat(0)]);
        assert_eq!(dual_bases(&p2()), Err(Error::NoDualBasis(3)));
        // D1 and D3 are linearly equivalent on F0
        assert_eq!(dual_bases_with(&f, &[0, 2]), Err(Error::SingularPairing));
    }

    #[test]
    fn gram_check_on_default_bases() {
        for f in [hirzebruch(0), hirzebruch(1), hirzebruch(2), x3()] {
            let b = dual_bases(&f).unwrap();
            for (a, &ba) in b.basis.iter().enumerate() {
                for (c, dual) in b.dual.iter().enumerate() {
                    let want = if a == c { rat(1) } else { rat(0) };
                    assert_eq!(pairing_rational(&f, dual, &unit(f.len(), ba)), want);
                }
            }
        }
    }

    #[test]
    fn fibers() {
        let f0 = fiber_classes(&hirzebruch(0));
        assert_eq!(f0.len(), 2);
        assert_eq!(f0[1], ((1, 3), vec![1, 0, 0, 0]));
        assert_eq!(fiber_classes(&x3()), vec![((1, 3), vec![0, 0, 1, 0, 0, 0])]);
        assert!(fiber_classes(&p2()).is_empty());
    }

    #[test]
    fn fiber_profiles() {
        for f in [hirzebruch(0), hirzebruch(1), hirzebruch(2), x3()] {
            for ((a, b), cls) in fiber_classes(&f) {
                let prof = profile(&f, &cls);
                for (k, &p) in prof.iter().enumerate() {
                    assert_eq!(p, i64::from(k == a || k == b));
                }
                assert_eq!(chern_number(&f, &cls), 2);
                assert_eq!(pairing(&f, &cls, &cls), 0);
            }
        }
    }

    proptest! {
        #[test]
        fn chern_number_is_linear(a in prop::collection::vec(0i64..4, 6), b in prop::collection::vec(0i64..4, 6)) {
            let f = x3();
            let ab: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
            prop_assert_eq!(chern_number(&f, &ab), chern_number(&f, &a) + chern_number(&f, &b));
            prop_assert_eq!(pairing(&f, &a, &b), pairing(&f, &b, &a));
        }
    }
}
