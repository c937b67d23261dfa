use groupoid_homology::abelian::{cokernel, smith_invariants, tensor, tor, FgAbGroup, IntMatrix};
use groupoid_homology::graded::{ext_sym_dims, poincare_full, GradedAbGroup, GradedDims};
use groupoid_homology::homology::{kunneth, kunneth_truncated};
use num_bigint::BigInt;
use proptest::prelude::*;

fn group() -> impl Strategy<Value = FgAbGroup> {
    (0usize..3, prop::collection::vec(2i64..13, 0..3)).prop_map(|(r, t)| {
        FgAbGroup::from_cyclic_orders(t.into_iter().map(BigInt::from)).direct_sum(&FgAbGroup::free(r))
    })
}

fn graded() -> impl Strategy<Value = GradedAbGroup> {
    prop::collection::vec(group(), 1..4).prop_map(|gs| GradedAbGroup::from_degrees(gs.into_iter().enumerate()))
}

fn matrix() -> impl Strategy<Value = IntMatrix> {
    (0usize..6, 0usize..6).prop_flat_map(|(r, c)| {
        prop::collection::vec(-20i64..20, r * c)
            .prop_map(move |e| IntMatrix::from_entries(r, c, e.into_iter().map(BigInt::from).collect()).unwrap())
    })
}

proptest! {
    #[test]
    fn kunneth_is_symmetric_and_unital(a in graded(), b in graded()) {
        prop_assert_eq!(kunneth(&a, &b).unwrap(), kunneth(&b, &a).unwrap());
        prop_assert_eq!(kunneth(&a, &GradedAbGroup::point()).unwrap(), a.clone());
        prop_assert!(kunneth(&a, &GradedAbGroup::zero()).unwrap().is_all_trivial());
    }

    #[test]
    fn kunneth_is_associative(a in graded(), b in graded(), c in graded()) {
        let l = kunneth(&kunneth(&a, &b).unwrap(), &c).unwrap();
        let r = kunneth(&a, &kunneth(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn truncated_kunneth_agrees_where_known(a in graded(), b in graded(), t in 0usize..4) {
        let bt = b.truncate(t);
        let full = kunneth(&a, &b).unwrap();
        let part = kunneth_truncated(&a, &bt);
        let k = part.known_through().unwrap();
        prop_assert!(k >= t);
        for n in 0..=k {
            prop_assert_eq!(part.get(n), full.get(n));
        }
    }

    #[test]
    fn tensor_and_tor_are_symmetric(a in group(), b in group()) {
        prop_assert_eq!(tensor(&a, &b), tensor(&b, &a));
        prop_assert_eq!(tor(&a, &b), tor(&b, &a));
        prop_assert_eq!(tensor(&a, &FgAbGroup::free(1)), a.clone());
        prop_assert!(tor(&a, &FgAbGroup::free(2)).is_trivial());
    }

    #[test]
    fn cokernel_is_invariant_under_unimodular_moves(m in matrix(), k in -3i64..4) {
        let mut moved = m.clone();
        if m.rows() >= 2 {
            // row 1 += k · row 0, then swap
            let rows: Vec<Vec<BigInt>> = (0..m.rows()).map(|i| {
                let mut r = m.row(i).to_vec();
                if i == 1 {
                    for (x, y) in r.iter_mut().zip(m.row(0)) {
                        *x += BigInt::from(k) * y;
                    }
                }
                r
            }).collect();
            let mut rows = rows;
            rows.swap(0, 1);
            moved = IntMatrix::from_rows(&rows).unwrap();
        }
        prop_assert_eq!(cokernel(&moved), cokernel(&m));
        prop_assert_eq!(smith_invariants(&m.transpose()), smith_invariants(&m));
    }

    #[test]
    fn series_product_matches_counting(pairs in prop::collection::vec((1usize..7, 0i64..4), 0..6)) {
        let d = GradedDims::from_pairs(pairs);
        let n = 14;
        let counted = ext_sym_dims(&d.odd_part(), &d.even_positive_part(), n).unwrap();
        prop_assert_eq!(counted.dense(n), poincare_full(&d, n).coeffs().to_vec());
    }
}
