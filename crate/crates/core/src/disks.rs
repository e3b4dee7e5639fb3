//! Admissible sequences and classes, Maslov indices, and the enumeration of
//! Maslov-two disk classes with nonzero open invariant.

use crate::error::{Error, Result};
use crate::fan::{Fan, MinusTwoChain};
use crate::homology::chern_number;

/// `β_i + Σ alpha[k] D_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiskClass {
    pub i: usize,
    pub alpha: Vec<i64>,
}

impl DiskClass {
    pub fn basic(d: usize, i: usize) -> DiskClass {
        DiskClass {
            i,
            alpha: vec![0; d],
        }
    }

    pub fn is_basic(&self) -> bool {
        self.alpha.iter().all(|&m| m == 0)
    }
}

/// `μ(β_i + α) = 2 + 2 c_1(α)`.
pub fn maslov_index(fan: &Fan, b: &DiskClass) -> i64 {
    2 + 2 * chern_number(fan, &b.alpha)
}

/// `values[p]` is `s` at position `p`; `center` indexes into `values`.
pub fn is_admissible_sequence(values: &[i64], center: usize) -> bool {
    let n = values.len();
    if n == 0 {
        return true;
    }
    if center >= n || values.iter().any(|&s| s <= 0) {
        return false;
    }
    if values[0] > 1 || values[n - 1] > 1 {
        return false;
    }
    (0..n - 1).all(|p| {
        let (a, b) = (values[p], values[p + 1]);
        if p < center {
            a <= b && b <= a + 1
        } else {
            a >= b && b >= a - 1
        }
    })
}

/// Every admissible sequence of length `len` with the given center.
pub fn admissible_sequences(len: usize, center: usize) -> Vec<Vec<i64>> {
    if center >= len {
        return Vec::new();
    }
    // descend from the center to 1 at each end, dropping by 0 or 1 per step
    fn arms(steps: usize, from: i64, acc: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if steps == 0 {
            if from == 1 {
                out.push(acc.clone());
            }
            return;
        }
        for next in [from, from - 1] {
            if next >= 1 && next as usize <= steps {
                acc.push(next);
                arms(steps - 1, next, acc, out);
                acc.pop();
            }
        }
    }
    let (left, right) = (center, len - 1 - center);
    let top = left.min(right) as i64 + 1;
    let mut out = Vec::new();
    for peak in 1..=top {
        let (mut ls, mut rs) = (Vec::new(), Vec::new());
        let mut acc = Vec::new();
        if left == 0 {
            if peak == 1 {
                ls.push(Vec::new());
            }
        } else {
            arms(left, peak, &mut acc, &mut ls);
        }
        if right == 0 {
            if peak == 1 {
                rs.push(Vec::new());
            }
        } else {
            arms(right, peak, &mut acc, &mut rs);
        }
        for l in &ls {
            for r in &rs {
                let mut s: Vec<i64> = l.iter().rev().copied().collect();
                s.push(peak);
                s.extend(r);
                out.push(s);
            }
        }
    }
    out.sort();
    out
}

/// The support of `alpha` as a run of positions on `chain`, if it is one.
pub(crate) fn support_interval(chain: &MinusTwoChain, alpha: &[i64]) -> Option<(usize, usize)> {
    let support: Vec<usize> = (0..alpha.len()).filter(|&k| alpha[k] != 0).collect();
    let mut pos: Vec<usize> = support
        .iter()
        .map(|&k| chain.position(k))
        .collect::<Option<Vec<_>>>()?;
    pos.sort_unstable();
    let (lo, hi) = (*pos.first()?, *pos.last()?);
    (hi - lo + 1 == pos.len()).then_some((lo, hi))
}

pub fn is_admissible_class(fan: &Fan, b: &DiskClass) -> Result<bool> {
    fan.check_index(b.i)?;
    if b.is_basic() {
        return Ok(true);
    }
    if fan.self_intersection(b.i) != -2 || b.alpha.iter().any(|&m| m < 0) {
        return Ok(false);
    }
    let chain = fan
        .chain_containing(b.i)?
        .expect("a -2 divisor lies on a chain");
    let Some((lo, hi)) = support_interval(&chain, &b.alpha) else {
        return Ok(false);
    };
    let p = chain.position(b.i).expect("on chain");
    if p < lo || p > hi {
        return Ok(false);
    }
    let values: Vec<i64> = (lo..=hi).map(|q| b.alpha[chain.indices[q]]).collect();
    Ok(is_admissible_sequence(&values, p - lo))
}

/// The open invariant `n_b` of a Maslov-two class: 1 if admissible, else 0.
pub fn open_gw(fan: &Fan, b: &DiskClass) -> Result<i64> {
    let mu = maslov_index(fan, b);
    if mu != 2 {
        return Err(Error::WrongMaslov(mu));
    }
    Ok(i64::from(is_admissible_class(fan, b)?))
}

/// All classes with `n_b = 1`, ordered by `i`, then total multiplicity,
/// then `alpha` lexicographically.
pub fn enumerate_admissible(fan: &Fan) -> Result<Vec<DiskClass>> {
    if !fan.is_semi_fano() {
        return Err(Error::NotSemiFano);
    }
    let d = fan.len();
    let chains = fan.minus_two_chains()?;
    let mut out = Vec::new();
    for i in 0..d {
        let mut found = vec![DiskClass::basic(d, i)];
        if let Some(chain) = chains.iter().find(|c| c.indices.contains(&i)) {
            let p = chain.position(i).expect("on chain");
            for lo in 0..=p {
                for hi in p..chain.len() {
                    for s in admissible_sequences(hi - lo + 1, p - lo) {
                        let mut alpha = vec![0; d];
                        for (q, v) in (lo..=hi).zip(s) {
                            alpha[chain.indices[q]] = v;
                        }
                        found.push(DiskClass { i, alpha });
                    }
                }
            }
        }
        found.sort_by_key(|b| (b.alpha.iter().sum::<i64>(), b.alpha.clone()));
        out.extend(found);
    }
    Ok(out)
}
