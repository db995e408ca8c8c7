use extremalkit_core::geometry::{
    analyze, check_legality, orientation, segments_properly_cross, Drawing, Point,
};
use extremalkit_core::graph::thrackle_bound;
use extremalkit_core::rational::{self, Rational};
use extremalkit_core::Tree;
use proptest::prelude::*;

fn pt(x: i64, y: i64) -> Point<i64> {
    Point::new(x, y)
}

fn to_rational(d: &Drawing<i64>) -> Drawing {
    d.map(|p| Point::new(rational::from_int(p.x), rational::from_int(p.y)))
}

/// A random recursive tree with a point per vertex on a small grid, so that
/// degenerate configurations are common.
fn tree_drawing() -> impl Strategy<Value = Drawing<i64>> {
    (2usize..9).prop_flat_map(|n| {
        let parents: Vec<_> = (1..n).map(|v| 0..v).collect();
        let points = prop::collection::vec((-4i64..=4, -4i64..=4), n);
        (parents, points).prop_map(move |(parents, points)| {
            let edges: Vec<_> = parents.iter().enumerate().map(|(i, &p)| (p, i + 1)).collect();
            let tree = Tree::from_edges(n, &edges).unwrap();
            Drawing::new(tree.graph().clone(), points.into_iter().map(|(x, y)| pt(x, y)).collect()).unwrap()
        })
    })
}

fn positive_rational() -> impl Strategy<Value = Rational> {
    (1i64..40, 1i64..40).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

fn any_rational() -> impl Strategy<Value = Rational> {
    (-40i64..40, 1i64..40).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

proptest! {
    #[test]
    fn crossing_is_symmetric(a in (-5i64..5, -5i64..5), b in (-5i64..5, -5i64..5),
                             c in (-5i64..5, -5i64..5), d in (-5i64..5, -5i64..5)) {
        let (a, b, c, d) = (pt(a.0, a.1), pt(b.0, b.1), pt(c.0, c.1), pt(d.0, d.1));
        let x = segments_properly_cross(&a, &b, &c, &d);
        prop_assert_eq!(x, segments_properly_cross(&c, &d, &a, &b));
        prop_assert_eq!(x, segments_properly_cross(&b, &a, &d, &c));
    }

    #[test]
    fn orientation_is_antisymmetric(a in (-9i64..9, -9i64..9), b in (-9i64..9, -9i64..9), c in (-9i64..9, -9i64..9)) {
        let (a, b, c) = (pt(a.0, a.1), pt(b.0, b.1), pt(c.0, c.1));
        prop_assert_eq!(orientation(&a, &b, &c).sign(), -orientation(&b, &a, &c).sign());
        prop_assert_eq!(orientation(&a, &b, &c), orientation(&b, &c, &a));
    }

    #[test]
    fn crossings_and_missed_pairs_fill_the_thrackle_bound(d in tree_drawing()) {
        if let Ok(s) = analyze(&d) {
            prop_assert_eq!(s.crossing_count() + s.missed.len() as u64, thrackle_bound(d.graph()));
        }
    }

    #[test]
    fn integer_and_rational_predicates_agree(d in tree_drawing()) {
        let r = to_rational(&d);
        prop_assert_eq!(check_legality(&d), check_legality(&r));
        prop_assert_eq!(analyze(&d).ok(), analyze(&r).ok());
    }

    #[test]
    fn positive_affine_maps_preserve_everything(
        d in tree_drawing(),
        sx in positive_rational(), sy in positive_rational(),
        tx in any_rational(), ty in any_rational(),
    ) {
        let r = to_rational(&d);
        let mapped = r.map(|p| Point::new(p.x.clone() * &sx + &tx, p.y.clone() * &sy + &ty));
        prop_assert_eq!(check_legality(&r), check_legality(&mapped));
        prop_assert_eq!(analyze(&r).ok(), analyze(&mapped).ok());
    }

    #[test]
    fn reflection_preserves_counts(d in tree_drawing()) {
        let mirrored = d.map(|p| pt(-p.x, p.y));
        prop_assert_eq!(check_legality(&d).is_legal(), check_legality(&mirrored).is_legal());
        if let (Ok(a), Ok(b)) = (analyze(&d), analyze(&mirrored)) {
            prop_assert_eq!(a.crossings, b.crossings);
        }
    }
}
