//! The sixteen semi-Fano surfaces shipped in `data/`, and their golden
//! superpotentials.

use crate::surface_file::{parse_surface, Surface};

/// Fano surfaces first, then `X1..X11`.
pub const NAMES: [&str; 16] = [
    "P2", "F0", "F1", "Bl2P2", "Bl3P2", "X1", "X2", "X3", "X4", "X5", "X6", "X7", "X8", "X9",
    "X10", "X11",
];

pub const FANO: [&str; 5] = ["P2", "F0", "F1", "Bl2P2", "Bl3P2"];

pub const NON_FANO: [&str; 11] = [
    "X1", "X2", "X3", "X4", "X5", "X6", "X7", "X8", "X9", "X10", "X11",
];

/// `NAME\tW` lines for `X1..X11`, exactly as printed by `toric-mirror table`.
pub const GOLDEN_TABLE: &str = include_str!("../../../data/golden/table.txt");

/// `NAME\tW` lines for all sixteen surfaces.
pub const GOLDEN_SUPERPOTENTIALS: &str = include_str!("../../../data/golden/superpotentials.tsv");

pub fn source(name: &str) -> Option<&'static str> {
    Some(match name {
        "P2" => include_str!("../../../data/P2.fan"),
        "F0" => include_str!("../../../data/F0.fan"),
        "F1" => include_str!("../../../data/F1.fan"),
        "Bl2P2" => include_str!("../../../data/Bl2P2.fan"),
        "Bl3P2" => include_str!("../../../data/Bl3P2.fan"),
        "X1" => include_str!("../../../data/X1.fan"),
        "X2" => include_str!("../../../data/X2.fan"),
        "X3" => include_str!("../../../data/X3.fan"),
        "X4" => include_str!("../../../data/X4.fan"),
        "X5" => include_str!("../../../data/X5.fan"),
        "X6" => include_str!("../../../data/X6.fan"),
        "X7" => include_str!("../../../data/X7.fan"),
        "X8" => include_str!("../../../data/X8.fan"),
        "X9" => include_str!("../../../data/X9.fan"),
        "X10" => include_str!("../../../data/X10.fan"),
        "X11" => include_str!("../../../data/X11.fan"),
        _ => return None,
    })
}

/// Parses a bundled surface. Panics if the shipped data is malformed.
pub fn surface(name: &str) -> Option<Surface> {
    source(name).map(|s| parse_surface(s).unwrap_or_else(|e| panic!("bundled {name}: {e}")))
}

pub fn all() -> Vec<Surface> {
    NAMES
        .iter()
        .map(|n| surface(n).expect("bundled name"))
        .collect()
}

/// Rows of the published table that disagree with their own polytope data,
/// as `(surface, published monomial, computed monomial)`.
///
/// * X10: the published constant for `v4` makes the polytope empty and is
///   contradicted by the published corrections on `v3` and `v5`.
/// * X11: the basic `v3` term disagrees with the published polytope and with
///   the area of `D2` used in the published corrections on `v1` and `v2`.
pub const PUBLISHED_DISCREPANCIES: [(&str, &str, &str); 2] = [
    (
        "X10",
        "q1^-1*q3^-1*q4^2*q5*z1^-2*z2",
        "q1^-1*q3*q4^2*q5*z1^-2*z2",
    ),
    (
        "X11",
        "q1^-2*q2*q3^2*q4^3*q5*q6^-1*q7^-1*z1^-1*z2^2",
        "q1^-2*q2*q3^2*q4^3*q5*q6^-1*q7^-3*z1^-1*z2^2",
    ),
];

/// The golden row with the known discrepancy (if any) replaced by the
/// computed monomial.
pub fn golden_corrected(name: &str) -> Option<String> {
    let g = golden(name)?;
    Some(
        match PUBLISHED_DISCREPANCIES.iter().find(|(n, _, _)| *n == name) {
            Some((_, published, computed)) => g.replace(published, computed),
            None => g.to_string(),
        },
    )
}

pub fn golden(name: &str) -> Option<&'static str> {
    GOLDEN_SUPERPOTENTIALS
        .lines()
        .filter_map(|l| l.split_once('\t'))
        .find(|(n, _)| *n == name)
        .map(|(_, w)| w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::{hori_vafa, superpotential};

    #[test]
    fn every_file_parses_with_its_name() {
        for s in all() {
            assert!(NAMES.contains(&s.name.as_str()));
            assert!(s.fan().is_semi_fano());
        }
        assert_eq!(all().iter().filter(|s| s.fan().is_fano()).count(), 5);
    }

    #[test]
    fn golden_superpotentials() {
        for s in all() {
            let w = superpotential(&s.spec).unwrap().w.canonical_string();
            let g = golden(&s.name).unwrap();
            let known = PUBLISHED_DISCREPANCIES.iter().any(|(n, _, _)| *n == s.name);
            assert_eq!(w != g, known, "{}", s.name);
            assert_eq!(w, golden_corrected(&s.name).unwrap(), "{}", s.name);
        }
    }

    #[test]
    fn fano_potentials_have_no_corrections() {
        for n in FANO {
            let s = surface(n).unwrap();
            assert_eq!(
                superpotential(&s.spec).unwrap().w,
                hori_vafa(&s.spec),
                "{n}"
            );
        }
    }
}
