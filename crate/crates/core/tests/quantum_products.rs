use toric_mirror::homology::chern_number;
use toric_mirror::quantum::{
    curve_candidates, gw_c1_1, gw_c1_2_point, primitive_pairs, quantum_product,
    quantum_product_literal, quantum_product_with_basis, quantum_sr_relations,
};
use toric_mirror::{bundled, Execution, Surface};

fn non_p2() -> Vec<Surface> {
    bundled::all()
        .into_iter()
        .filter(|s| !s.fan().is_p2())
        .collect()
}

#[test]
fn corrections_vanish_as_areas_grow() {
    // weight each q_l by the Kähler witness t_l: every monomial is a curve area
    for s in non_p2() {
        let w = s.spec.witness().to_vec();
        for ((i, j), p) in quantum_sr_relations(&s.spec, Execution::default()).unwrap() {
            for c in std::iter::once(&p.scalar).chain(&p.divisor) {
                for (e, _) in c.terms() {
                    let weight: i64 = e.iter().zip(&w).map(|(&x, &t)| i64::from(x) * t).sum();
                    assert!(weight > 0, "{} D{}*D{}", s.name, i + 1, j + 1);
                }
            }
        }
    }
}

#[test]
fn relation_counts() {
    for s in non_p2() {
        let d = s.fan().len();
        assert_eq!(
            primitive_pairs(s.fan()).unwrap().len(),
            d * (d - 3) / 2,
            "{}",
            s.name
        );
    }
}

#[test]
fn products_do_not_depend_on_the_dual_basis() {
    for s in non_p2() {
        let fan = s.fan();
        let d = fan.len();
        for (i, j) in primitive_pairs(fan).unwrap() {
            let reference = quantum_product(&s.spec, i, j).unwrap();
            assert_eq!(
                quantum_product_literal(&s.spec, i, j).unwrap().reduce(fan),
                reference
            );
            // drop the last two and the first two divisors
            for basis in [(0..d - 2).collect::<Vec<_>>(), (2..d).collect()] {
                if let Ok(p) = quantum_product_with_basis(&s.spec, i, j, &basis) {
                    assert_eq!(p, reference, "{} {basis:?}", s.name);
                }
            }
        }
    }
}

#[test]
fn invariants_are_zero_or_one() {
    for s in non_p2() {
        let fan = s.fan();
        let c = curve_candidates(fan).unwrap();
        for a in &c.c1_two {
            assert_eq!(chern_number(fan, a), 2);
            assert_eq!(gw_c1_2_point(fan, a).unwrap(), 1);
        }
        for a in &c.c1_one {
            assert_eq!(gw_c1_1(fan, a).unwrap(), 1);
        }
        // twice a (-1)-curve has c1 = 2
        for k in 0..fan.len() {
            let mut a = vec![0; fan.len()];
            a[k] = 2;
            if chern_number(fan, &a) == 2 {
                assert!(gw_c1_2_point(fan, &a).unwrap() <= 1);
            }
        }
    }
}

#[test]
fn f0_relations_are_fiber_classes() {
    let s = bundled::surface("F0").unwrap();
    let rels = quantum_sr_relations(&s.spec, Execution::Sequential).unwrap();
    assert_eq!(rels.len(), 2);
    let rendered: Vec<String> = rels.iter().map(|(_, p)| p.render()).collect();
    assert_eq!(rendered, vec!["q1", "q2"]);
}
