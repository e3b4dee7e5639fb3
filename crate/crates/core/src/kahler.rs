//! Moment polytope data: polytope constants, vertices, edge lengths and
//! symplectic areas, all as integer linear forms in `t_1..t_k`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::fan::{Fan, Ray};

/// `Σ coeffs[l] * t_{l+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TForm(pub Vec<i64>);

impl TForm {
    pub fn zero(k: usize) -> TForm {
        TForm(vec![0; k])
    }

    /// The form `t_l` (0-based `l`).
    pub fn t(k: usize, l: usize) -> TForm {
        let mut v = vec![0; k];
        v[l] = 1;
        TForm(v)
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn scale(&self, s: i64) -> TForm {
        TForm(self.0.iter().map(|x| x * s).collect())
    }

    pub fn eval(&self, t: &[i64]) -> i64 {
        self.0.iter().zip(t).map(|(a, b)| a * b).sum()
    }

    /// Value at `t = (1, ..., 1)`.
    pub fn at_ones(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Exact division, if every coefficient is divisible by `s`.
    pub fn div_exact(&self, s: i64) -> Option<TForm> {
        if s == 0 || self.0.iter().any(|x| x % s != 0) {
            return None;
        }
        Some(TForm(self.0.iter().map(|x| x / s).collect()))
    }

    /// Exponents of `q = exp(-t)` for `exp(-self)`.
    pub fn q_exponents(&self) -> Vec<i32> {
        self.0
            .iter()
            .map(|&x| i32::try_from(x).expect("q-exponent fits in i32"))
            .collect()
    }
}

impl Add for &TForm {
    type Output = TForm;
    fn add(self, rhs: &TForm) -> TForm {
        assert_eq!(self.k(), rhs.k());
        TForm(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &TForm {
    type Output = TForm;
    fn sub(self, rhs: &TForm) -> TForm {
        assert_eq!(self.k(), rhs.k());
        TForm(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &TForm {
    type Output = TForm;
    fn neg(self) -> TForm {
        self.scale(-1)
    }
}

impl fmt::Display for TForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (l, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = c.abs();
            if mag == 1 {
                write!(f, "{sign}t{}", l + 1)?;
            } else {
                write!(f, "{sign}{mag}t{}", l + 1)?;
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Largest entry tried when searching for a point of the Kähler cone.
const WITNESS_BOUND: i64 = 4;

/// `t = (1, ..., 1)` if it works, else the first point of `{1..4}^k` in
/// lexicographic order at which all `lengths` are positive.
fn kahler_witness(lengths: &[TForm], k: usize) -> Option<Vec<i64>> {
    let ok = |t: &[i64]| lengths.iter().all(|l| l.eval(t) > 0);
    let mut t = vec![1; k];
    if ok(&t) {
        return Some(t);
    }
    loop {
        let mut l = k;
        loop {
            if l == 0 {
                return None;
            }
            l -= 1;
            if t[l] < WITNESS_BOUND {
                t[l] += 1;
                break;
            }
            t[l] = 1;
        }
        if ok(&t) {
            return Some(t);
        }
    }
}

/// Point of the polytope with coordinates in `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub x: (TForm, TForm),
}

/// Fan plus the constants `c_i` of the inequalities `<v_i, x> >= c_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KahlerSpec {
    fan: Fan,
    k: usize,
    c: Vec<TForm>,
    witness: Vec<i64>,
}

impl KahlerSpec {
    /// `c` holds the signed constants `c_i` themselves.
    pub fn new(fan: Fan, k: usize, c: Vec<TForm>) -> Result<KahlerSpec> {
        if c.len() != fan.len() {
            return Err(Error::ConstantCount {
                expected: fan.len(),
                got: c.len(),
            });
        }
        for (index, ci) in c.iter().enumerate() {
            if ci.k() != k {
                return Err(Error::ParameterCount {
                    index,
                    expected: k,
                    got: ci.k(),
                });
            }
        }
        let mut spec = KahlerSpec {
            fan,
            k,
            c,
            witness: vec![1; k],
        };
        let lengths = (0..spec.fan.len())
            .map(|i| spec.edge_length(i))
            .collect::<Result<Vec<_>>>()?;
        spec.witness = kahler_witness(&lengths, k).ok_or_else(|| {
            let index = lengths.iter().position(|l| l.at_ones() <= 0).unwrap_or(0);
            Error::NotKahler { index }
        })?;
        Ok(spec)
    }

    /// A point `t` with positive integer entries at which every edge has
    /// positive length.
    pub fn witness(&self) -> &[i64] {
        &self.witness
    }

    /// Constants given as in the tables: row `i` lists `C` with
    /// `c_i = -(C_1 t_1 + ... + C_k t_k)`.
    pub fn from_table(fan: Fan, k: usize, rows: Vec<Vec<i64>>) -> Result<KahlerSpec> {
        let c = rows.into_iter().map(|r| -&TForm(r)).collect();
        KahlerSpec::new(fan, k, c)
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn constants(&self) -> &[TForm] {
        &self.c
    }

    /// Intersection of facets `i` and `i + 1`.
    pub fn vertex(&self, i: usize) -> Vertex {
        let j = self.fan.next(i);
        let ((a, b), (c, d)) = (self.fan.ray(i), self.fan.ray(j));
        let (ci, cj) = (&self.c[i], &self.c[j]);
        // det(v_i, v_j) = 1, so the inverse is the adjugate
        let x1 = &ci.scale(d) - &cj.scale(b);
        let x2 = &cj.scale(a) - &ci.scale(c);
        Vertex { x: (x1, x2) }
    }

    /// Counterclockwise primitive direction of the edge `T_i`.
    pub fn edge_direction(&self, i: usize) -> Ray {
        let v = self.fan.ray(i);
        (v.1, -v.0)
    }

    /// Lattice length of the edge `T_i`, from `vertex(i-1)` to `vertex(i)`.
    pub fn edge_length(&self, i: usize) -> Result<TForm> {
        let start = self.vertex(self.fan.prev(i));
        let end = self.vertex(i);
        let diff = (&end.x.0 - &start.x.0, &end.x.1 - &start.x.1);
        let dir = self.edge_direction(i);
        let len = if dir.0 != 0 {
            diff.0.div_exact(dir.0)
        } else {
            diff.1.div_exact(dir.1)
        };
        let len = len.ok_or(Error::NonLatticeEdge { index: i })?;
        if len.scale(dir.0) != diff.0 || len.scale(dir.1) != diff.1 {
            return Err(Error::NonLatticeEdge { index: i });
        }
        if len.is_zero() {
            return Err(Error::DegenerateEdge { index: i });
        }
        Ok(len)
    }

    pub fn edge_lengths(&self) -> Vec<TForm> {
        (0..self.fan.len())
            .map(|i| self.edge_length(i).expect("validated at construction"))
            .collect()
    }

    /// `Σ m_k * edge_length(k)`.
    pub fn curve_area(&self, alpha: &[i64]) -> TForm {
        assert_eq!(alpha.len(), self.fan.len());
        alpha.iter().enumerate().filter(|(_, &m)| m != 0).fold(
            TForm::zero(self.k),
            |acc, (k, &m)| {
                &acc + &self
                    .edge_length(k)
                    .expect("validated at construction")
                    .scale(m)
            },
        )
    }

    /// q-exponents of `exp(c_i)`, the coefficient of the basic disk `β_i`.
    pub fn disk_coefficient(&self, i: usize) -> Vec<i32> {
        (-&self.c[i]).q_exponents()
    }
}
