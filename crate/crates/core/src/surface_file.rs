//! The `.fan` text format.
//!
//! ```text
//! # comment
//! surface X1
//! params 2
//! ray 1 0 : 0 0
//! ray 0 1 : 0 0
//! ray -1 -2 : 2 1
//! ray 0 -1 : 1 0
//! ```
//!
//! `ray A B : C1 .. CK` is the facet `A x1 + B x2 >= -(C1 t1 + ... + CK tK)`.
//! Rows come in counterclockwise order.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::fan::{Fan, Ray};
use crate::kahler::KahlerSpec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surface {
    pub name: String,
    pub spec: KahlerSpec,
}

impl Surface {
    pub fn fan(&self) -> &Fan {
        self.spec.fan()
    }
}

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        message: message.into(),
    }
}

fn at(line: usize, e: Error) -> Error {
    Error::AtLine {
        line,
        source: Box::new(e),
    }
}

pub fn parse_surface(text: &str) -> Result<Surface> {
    let mut name: Option<String> = None;
    let mut k: Option<usize> = None;
    let mut rays: Vec<Ray> = Vec::new();
    let mut rows: Vec<Vec<i64>> = Vec::new();
    let mut lines: Vec<usize> = Vec::new();
    let mut last = 0;
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        last = line;
        let s = raw.trim();
        if s.is_empty() || s.starts_with('#') {
            continue;
        }
        let mut words = s.split_whitespace();
        match words.next() {
            Some("surface") => {
                if name.is_some() {
                    return Err(syntax(line, "duplicate surface line"));
                }
                let rest: Vec<&str> = words.collect();
                if rest.len() != 1 {
                    return Err(syntax(line, "expected `surface NAME`"));
                }
                name = Some(rest[0].to_string());
            }
            Some("params") => {
                if name.is_none() {
                    return Err(syntax(line, "`params` before `surface`"));
                }
                if k.is_some() {
                    return Err(syntax(line, "duplicate params line"));
                }
                let rest: Vec<&str> = words.collect();
                let v = match rest.as_slice() {
                    [x] => x
                        .parse::<usize>()
                        .map_err(|_| syntax(line, "bad parameter count"))?,
                    _ => return Err(syntax(line, "expected `params K`")),
                };
                k = Some(v);
            }
            Some("ray") => {
                let Some(k) = k else {
                    return Err(syntax(line, "`ray` before `params`"));
                };
                let (lhs, rhs) = s["ray".len()..]
                    .split_once(':')
                    .ok_or_else(|| syntax(line, "expected `ray A B : C1 .. CK`"))?;
                let ints = |part: &str| -> Result<Vec<i64>> {
                    part.split_whitespace()
                        .map(|w| {
                            w.parse::<i64>()
                                .map_err(|_| syntax(line, format!("not an integer: {w}")))
                        })
                        .collect()
                };
                let v = ints(lhs)?;
                if v.len() != 2 {
                    return Err(syntax(line, "a ray needs two coordinates"));
                }
                let c = ints(rhs)?;
                if c.len() != k {
                    return Err(at(
                        line,
                        Error::ParameterCount {
                            index: rays.len(),
                            expected: k,
                            got: c.len(),
                        },
                    ));
                }
                rays.push((v[0], v[1]));
                rows.push(c);
                lines.push(line);
            }
            Some(w) => return Err(syntax(line, format!("unknown keyword `{w}`"))),
            None => unreachable!(),
        }
    }
    let name = name.ok_or_else(|| syntax(last.max(1), "missing `surface` line"))?;
    let k = k.ok_or_else(|| syntax(last.max(1), "missing `params` line"))?;
    let locate = |e: Error| -> Error {
        let index = match &e {
            Error::NotPrimitive { index, .. }
            | Error::DuplicateRay { index }
            | Error::NotCounterclockwise { index, .. }
            | Error::NotSmooth { index, .. }
            | Error::DegenerateEdge { index }
            | Error::NotKahler { index }
            | Error::NonLatticeEdge { index } => Some(*index),
            _ => None,
        };
        match index.and_then(|i| lines.get(i)) {
            Some(&l) => at(l, e),
            None => at(lines.first().copied().unwrap_or(last.max(1)), e),
        }
    };
    let fan = Fan::new(rays).map_err(locate)?;
    let spec = KahlerSpec::from_table(fan, k, rows).map_err(locate)?;
    Ok(Surface { name, spec })
}

/// Inverse of [`parse_surface`], without comments.
pub fn render_surface(s: &Surface) -> String {
    let mut out = String::new();
    writeln!(out, "surface {}", s.name).unwrap();
    writeln!(out, "params {}", s.spec.k()).unwrap();
    for (v, c) in s.fan().rays().iter().zip(s.spec.constants()) {
        let cs: Vec<String> = c.0.iter().map(|x| (-x).to_string()).collect();
        writeln!(out, "ray {} {} : {}", v.0, v.1, cs.join(" ")).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const X1: &str =
        "surface X1\nparams 2\nray 1 0 : 0 0\nray 0 1 : 0 0\nray -1 -2 : 2 1\nray 0 -1 : 1 0\n";

    #[test]
    fn parses_x1() {
        let s = parse_surface(X1).unwrap();
        assert_eq!(s.name, "X1");
        assert_eq!(s.fan().len(), 4);
        assert_eq!(s.spec.k(), 2);
        assert_eq!(render_surface(&s), X1);
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = format!("# header\n\n{}", X1.replace("params 2", "params 2   # two"));
        // trailing comments are not part of the grammar
        assert!(parse_surface(&text).is_err());
        let text = format!("# header\n\n   \n{X1}");
        assert!(parse_surface(&text).is_ok());
    }

    #[test]
    fn errors_carry_lines() {
        let bad = "surface P\nparams 1\nray 1 0 : 0\nray 0 2 : 0\nray -1 -1 : 1\n";
        match parse_surface(bad) {
            Err(Error::AtLine { line: 4, source }) => {
                assert!(matches!(*source, Error::NotPrimitive { index: 1, .. }))
            }
            other => panic!("{other:?}"),
        }
        let order = "surface P\nparams 1\nray 1 0 : 0\nray -1 -1 : 1\nray 0 1 : 0\n";
        match parse_surface(order) {
            Err(Error::AtLine { line: 3, source }) => {
                assert!(matches!(*source, Error::NotCounterclockwise { .. }))
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_surface("surface P\nparams 1\nray 1 x : 0\n"),
            Err(Error::Syntax { line: 3, .. })
        ));
        assert!(matches!(
            parse_surface("params 1\n"),
            Err(Error::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            parse_surface("surface P\nparams 1\nray 1 0 : 0 1\n"),
            Err(Error::AtLine { line: 3, .. })
        ));
        assert!(matches!(
            parse_surface("surface P\nbogus\n"),
            Err(Error::Syntax { line: 2, .. })
        ));
    }
}
