//! Complete smooth two-dimensional fans.

use std::collections::BTreeSet;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::par::{self, Execution};

/// Primitive lattice vector `(x, y)`.
pub type Ray = (i64, i64);

pub fn det(a: Ray, b: Ray) -> i64 {
    a.0 * b.1 - a.1 * b.0
}

/// Rays of a complete smooth fan in counterclockwise order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fan {
    rays: Vec<Ray>,
}

/// A maximal run of consecutive divisors with self-intersection -2, listed
/// in counterclockwise order. Cyclic, so it may wrap past index 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinusTwoChain {
    pub indices: Vec<usize>,
}

impl MinusTwoChain {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn position(&self, i: usize) -> Option<usize> {
        self.indices.iter().position(|&k| k == i)
    }
}

/// Checks the rays and builds a [`Fan`].
pub fn validate_fan(rays: &[Ray]) -> Result<Fan> {
    Fan::new(rays.to_vec())
}

impl Fan {
    pub fn new(rays: Vec<Ray>) -> Result<Fan> {
        let d = rays.len();
        if d < 3 {
            return Err(Error::TooFewRays(d));
        }
        for (index, &ray) in rays.iter().enumerate() {
            if ray.0.gcd(&ray.1) != 1 {
                return Err(Error::NotPrimitive { index, ray });
            }
        }
        for index in 1..d {
            if rays[..index].contains(&rays[index]) {
                return Err(Error::DuplicateRay { index });
            }
        }
        for index in 0..d {
            let next = (index + 1) % d;
            let dt = det(rays[index], rays[next]);
            if dt <= 0 {
                return Err(Error::NotCounterclockwise { index, next });
            }
            if dt != 1 {
                return Err(Error::NotSmooth {
                    index,
                    next,
                    det: dt,
                });
            }
        }
        // Each step turns by less than pi; count how often the sweep passes v0.
        let v0 = rays[0];
        let winding = (0..d)
            .filter(|&i| {
                let (a, b) = (rays[i], rays[(i + 1) % d]);
                det(a, v0) > 0 && det(v0, b) >= 0
            })
            .count();
        if winding != 1 {
            return Err(Error::NotComplete { winding });
        }
        Ok(Fan { rays })
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> Ray {
        self.rays[i % self.rays.len()]
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn prev(&self, i: usize) -> usize {
        (i + self.len() - 1) % self.len()
    }

    pub fn next(&self, i: usize) -> usize {
        (i + 1) % self.len()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && (self.next(i) == j || self.next(j) == i)
    }

    pub fn check_index(&self, index: usize) -> Result<()> {
        if index < self.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index,
                len: self.len(),
            })
        }
    }

    /// `D_i^2 = -det(v_{i-1}, v_{i+1})`.
    pub fn self_intersection(&self, i: usize) -> i64 {
        -det(self.rays[self.prev(i)], self.rays[self.next(i)])
    }

    pub fn self_intersections(&self) -> Vec<i64> {
        (0..self.len()).map(|i| self.self_intersection(i)).collect()
    }

    pub fn is_semi_fano(&self) -> bool {
        (0..self.len()).all(|i| self.self_intersection(i) >= -2)
    }

    pub fn is_fano(&self) -> bool {
        (0..self.len()).all(|i| self.self_intersection(i) >= -1)
    }

    pub fn is_p2(&self) -> bool {
        self.len() == 3
    }

    /// Maximal (-2)-chains, ordered by the index they start at.
    pub fn minus_two_chains(&self) -> Result<Vec<MinusTwoChain>> {
        let d = self.len();
        let m2: Vec<bool> = (0..d).map(|i| self.self_intersection(i) == -2).collect();
        if m2.iter().all(|&b| b) {
            return Err(Error::FullCycle);
        }
        let mut chains = Vec::new();
        for start in 0..d {
            if !m2[start] || m2[self.prev(start)] {
                continue;
            }
            let mut indices = vec![start];
            let mut k = self.next(start);
            while m2[k] {
                indices.push(k);
                k = self.next(k);
            }
            chains.push(MinusTwoChain { indices });
        }
        Ok(chains)
    }

    /// The maximal (-2)-chain through `i`, if `D_i^2 = -2`.
    pub fn chain_containing(&self, i: usize) -> Result<Option<MinusTwoChain>> {
        Ok(self
            .minus_two_chains()?
            .into_iter()
            .find(|c| c.indices.contains(&i)))
    }

    /// Blow up the torus fixed point of the cone `(v_i, v_{i+1})`.
    pub fn blowup(&self, i: usize) -> Fan {
        let i = i % self.len();
        let (a, b) = (self.rays[i], self.ray(i + 1));
        let mut rays = self.rays.clone();
        rays.insert(i + 1, (a.0 + b.0, a.1 + b.1));
        Fan { rays }
    }

    /// Smallest encoding over rotations, reflections and unimodular maps,
    /// normalized so the first two rays are `(1,0), (0,1)`.
    pub fn canonical_form(&self) -> Vec<Ray> {
        let d = self.len();
        let mut best: Option<Vec<Ray>> = None;
        for reversed in [false, true] {
            let order: Vec<Ray> = if reversed {
                self.rays.iter().rev().copied().collect()
            } else {
                self.rays.clone()
            };
            for r in 0..d {
                let w: Vec<Ray> = (0..d).map(|k| order[(r + k) % d]).collect();
                let ((a, b), (c, e)) = (w[0], w[1]);
                let dt = a * e - b * c;
                let image: Vec<Ray> = w
                    .iter()
                    .map(|&(x, y)| ((e * x - c * y) / dt, (-b * x + a * y) / dt))
                    .collect();
                if best.as_ref().is_none_or(|cur| image < *cur) {
                    best = Some(image);
                }
            }
        }
        best.expect("fan has rays")
    }

    pub fn canonical(&self) -> Fan {
        Fan {
            rays: self.canonical_form(),
        }
    }

    pub fn is_isomorphic(&self, other: &Fan) -> bool {
        self.len() == other.len() && self.canonical_form() == other.canonical_form()
    }
}

pub fn fans_isomorphic(f1: &Fan, f2: &Fan) -> bool {
    f1.is_isomorphic(f2)
}

pub fn p2() -> Fan {
    Fan {
        rays: vec![(1, 0), (0, 1), (-1, -1)],
    }
}

/// Hirzebruch surface `F_a`.
pub fn hirzebruch(a: i64) -> Fan {
    Fan {
        rays: vec![(1, 0), (0, 1), (-1, a), (0, -1)],
    }
}

/// Isomorphism classes of semi-Fano fans with at most `max_rays` rays, in
/// canonical form, sorted by ray count and then encoding.
pub fn classify_semi_fano(max_rays: usize, exec: Execution) -> Vec<Fan> {
    let mut seen: BTreeSet<(usize, Vec<Ray>)> = BTreeSet::new();
    let mut frontier: Vec<Fan> = Vec::new();
    for seed in [p2(), hirzebruch(0), hirzebruch(2)] {
        if seed.len() <= max_rays && seen.insert((seed.len(), seed.canonical_form())) {
            frontier.push(seed.canonical());
        }
    }
    while !frontier.is_empty() {
        let children: Vec<Vec<Vec<Ray>>> = par::map(exec, &frontier, |fan| {
            if fan.len() >= max_rays {
                return Vec::new();
            }
            (0..fan.len())
                .map(|i| fan.blowup(i))
                .filter(Fan::is_semi_fano)
                .map(|f| f.canonical_form())
                .collect()
        });
        let mut next = Vec::new();
        for form in children.into_iter().flatten() {
            if seen.insert((form.len(), form.clone())) {
                next.push(Fan { rays: form });
            }
        }
        next.sort_by(|a, b| a.rays.cmp(&b.rays));
        frontier = next;
    }
    seen.into_iter().map(|(_, rays)| Fan { rays }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fan(r: &[Ray]) -> Fan {
        Fan::new(r.to_vec()).unwrap()
    }

    fn x3() -> Fan {
        fan(&[(1, 0), (0, 1), (-1, -1), (0, -1), (1, -1), (2, -1)])
    }

    #[test]
    fn validation() {
        assert!(validate_fan(&[(1, 0), (0, 1), (-1, -1)]).is_ok());
        assert!(validate_fan(&[(1, 0), (0, 1), (-1, -2), (0, -1)]).is_ok());
        assert_eq!(
            validate_fan(&[(1, 0), (0, 2), (-1, -1)]),
            Err(Error::NotPrimitive {
                index: 1,
                ray: (0, 2)
            })
        );
        assert_eq!(validate_fan(&[(1, 0), (0, 1)]), Err(Error::TooFewRays(2)));
        assert_eq!(
            validate_fan(&[(1, 0), (-1, -1), (0, 1)]),
            Err(Error::NotCounterclockwise { index: 0, next: 1 })
        );
        assert_eq!(
            validate_fan(&[(1, 0), (-1, 2), (0, -1)]),
            Err(Error::NotSmooth {
                index: 0,
                next: 1,
                det: 2
            })
        );
        assert_eq!(
            validate_fan(&[(1, 0), (0, 1), (-1, -1), (1, 0)]),
            Err(Error::DuplicateRay { index: 3 })
        );
        let octagon = [
            (1, 0),
            (1, 1),
            (0, 1),
            (-1, 1),
            (-1, 0),
            (-1, -1),
            (0, -1),
            (1, -1),
        ];
        assert!(validate_fan(&octagon).is_ok());
    }

    #[test]
    fn winding_twice_is_incomplete() {
        // distinct rays, every adjacent det is +1, but two full turns
        let r = [(1, 0), (0, 1), (-1, -1), (2, 1), (1, 1), (-1, 0), (0, -1)];
        assert_eq!(validate_fan(&r), Err(Error::NotComplete { winding: 2 }));
    }

    #[test]
    fn self_intersections() {
        assert_eq!(p2().self_intersections(), vec![1, 1, 1]);
        let x1 = fan(&[(1, 0), (0, 1), (-1, -2), (0, -1)]);
        assert_eq!(x1.self_intersection(3), -2);
        assert_eq!(hirzebruch(0).self_intersections(), vec![0, 0, 0, 0]);
        assert_eq!(x3().self_intersections(), vec![-2, 1, 0, -2, -2, -1]);
    }

    #[test]
    fn semi_fano() {
        assert!(fan(&[(1, 0), (0, 1), (-1, -2), (0, -1)]).is_semi_fano());
        assert!(!fan(&[(1, 0), (0, 1), (-1, -3), (0, -1)]).is_semi_fano());
        assert!(p2().is_semi_fano());
    }

    #[test]
    fn chains() {
        let c = x3().minus_two_chains().unwrap();
        let idx: Vec<Vec<usize>> = c.into_iter().map(|c| c.indices).collect();
        assert_eq!(idx, vec![vec![0], vec![3, 4]]);
        assert!(p2().minus_two_chains().unwrap().is_empty());
        let x1 = fan(&[(1, 0), (0, 1), (-1, -2), (0, -1)]);
        assert_eq!(
            x1.minus_two_chains().unwrap(),
            vec![MinusTwoChain { indices: vec![3] }]
        );
    }

    #[test]
    fn chain_wrapping_past_zero() {
        // rotate X3 so the {4,5} chain straddles the end of the list
        let r = x3().rays().to_vec();
        let rot: Vec<Ray> = (0..6).map(|k| r[(k + 4) % 6]).collect();
        let f = fan(&rot);
        let idx: Vec<Vec<usize>> = f
            .minus_two_chains()
            .unwrap()
            .into_iter()
            .map(|c| c.indices)
            .collect();
        assert_eq!(idx, vec![vec![2], vec![5, 0]]);
    }

    #[test]
    fn blowups() {
        let f1 = p2().blowup(0);
        assert_eq!(f1.rays(), &[(1, 0), (1, 1), (0, 1), (-1, -1)]);
        assert!(f1.is_isomorphic(&hirzebruch(1)));
        let b = hirzebruch(0).blowup(0);
        assert_eq!(b.len(), 5);
        assert_eq!(b.self_intersection(1), -1);
    }

    #[test]
    fn isomorphisms() {
        let rotated = fan(&[(0, 1), (-1, -1), (1, 0)]);
        assert!(fans_isomorphic(&p2(), &rotated));
        let x1 = fan(&[(1, 0), (0, 1), (-1, -2), (0, -1)]);
        assert!(fans_isomorphic(&x1, &hirzebruch(2)));
        assert!(!fans_isomorphic(&hirzebruch(0), &hirzebruch(2)));
        assert!(!fans_isomorphic(&hirzebruch(0), &hirzebruch(1)));
    }

    #[test]
    fn small_classifications() {
        assert_eq!(
            classify_semi_fano(3, Execution::Sequential),
            vec![p2().canonical()]
        );
        let four = classify_semi_fano(4, Execution::Sequential);
        assert_eq!(four.len(), 4);
        for h in [hirzebruch(0), hirzebruch(1), hirzebruch(2)] {
            assert!(four.iter().any(|f| f.is_isomorphic(&h)));
        }
    }

    #[test]
    fn classification_up_to_nine_rays() {
        let all = classify_semi_fano(9, Execution::Parallel);
        assert_eq!(all.len(), 16);
        assert_eq!(all.iter().filter(|f| f.is_fano()).count(), 5);
        assert_eq!(all, classify_semi_fano(9, Execution::Sequential));
        assert_eq!(classify_semi_fano(12, Execution::Parallel).len(), 16);
    }

    /// Random complete smooth fans, grown from a seed by blowups.
    pub(crate) fn arb_fan() -> impl Strategy<Value = Fan> {
        (0usize..4, prop::collection::vec(0usize..64, 0..7)).prop_map(|(seed, cones)| {
            let mut f = match seed {
                0 => p2(),
                s => hirzebruch(s as i64 - 1),
            };
            for c in cones {
                f = f.blowup(c % f.len());
            }
            f
        })
    }

    proptest! {
        #[test]
        fn determinant_formula_matches_relation(f in arb_fan()) {
            for i in 0..f.len() {
                let a = f.self_intersection(i);
                let (u, v, w) = (f.ray(f.prev(i)), f.ray(i), f.ray(f.next(i)));
                prop_assert_eq!((u.0 + w.0 + a * v.0, u.1 + w.1 + a * v.1), (0, 0));
            }
        }

        #[test]
        fn noether_sum(f in arb_fan()) {
            let s: i64 = f.self_intersections().iter().sum();
            prop_assert_eq!(s, 12 - 3 * f.len() as i64);
        }

        #[test]
        fn blowup_changes_only_neighbours(f in arb_fan(), c in 0usize..64) {
            let i = c % f.len();
            let before = f.self_intersections();
            let g = f.blowup(i);
            prop_assert!(Fan::new(g.rays().to_vec()).is_ok());
            let after = g.self_intersections();
            prop_assert_eq!(after[i + 1], -1);
            for k in 0..f.len() {
                let k2 = if k <= i { k } else { k + 1 };
                let expected = if k == i || k == (i + 1) % f.len() { before[k] - 1 } else { before[k] };
                prop_assert_eq!(after[k2], expected);
            }
        }

        #[test]
        fn canonical_form_is_an_invariant(f in arb_fan(), r in 0usize..16, flip in any::<bool>()) {
            let d = f.len();
            let mut rays: Vec<Ray> = (0..d).map(|k| f.ray(k + r)).collect();
            if flip {
                // reflect (x, y) -> (y, x) and reverse to stay counterclockwise
                rays = rays.into_iter().rev().map(|(x, y)| (y, x)).collect();
            }
            let g = Fan::new(rays).unwrap();
            prop_assert!(f.is_isomorphic(&g));
            prop_assert!(Fan::new(f.canonical_form()).is_ok());
        }

        #[test]
        fn chains_satisfy_midpoint_relation(f in arb_fan()) {
            if f.is_semi_fano() {
                for c in f.minus_two_chains().unwrap() {
                    for &k in &c.indices {
                        let (u, v, w) = (f.ray(f.prev(k)), f.ray(k), f.ray(f.next(k)));
                        prop_assert_eq!((2 * v.0, 2 * v.1), (u.0 + w.0, u.1 + w.1));
                    }
                }
            }
        }
    }
}
