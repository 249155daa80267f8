use num_bigint::BigInt;
use proptest::prelude::*;
use tourlab::{
    aut_size, bias_polynomial, canonical_form, enumerate, fas_dominance_condition, in_f, min_fas, Rational, Tournament,
};

fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[test]
fn fas_condition_implies_membership() {
    let xs = [q(1, 10), q(1, 5), q(3, 10)];
    let mut fired = 0;
    for h in 3..=6 {
        for t in enumerate(h).unwrap().tournaments() {
            let a = min_fas(&t).a;
            for x in &xs {
                if fas_dominance_condition(h, a, x).unwrap() {
                    fired += 1;
                    assert!(in_f(&t, x).unwrap(), "{t:?} at {x}");
                }
            }
        }
    }
    assert!(fired > 0);
}

#[test]
fn fas_witnesses_through_h8() {
    for h in 1..=8 {
        let m = tourlab::pair_count(h);
        for t in enumerate(h).unwrap().tournaments() {
            let r = min_fas(&t);
            assert_eq!(t.forward_edges(&r.witness_order), r.max_forward);
            assert_eq!(r.a + r.max_forward, m);
            assert!(2 * r.a <= m);
            assert_eq!(r.a == 0, t.is_transitive());
        }
    }
}

fn tournament(max_h: usize) -> impl Strategy<Value = Tournament> {
    (1..=max_h).prop_flat_map(|h| {
        let m = h * (h - 1) / 2;
        (Just(h), 0..1u64 << m).prop_map(|(h, code)| Tournament::from_code(h, code).unwrap())
    })
}

fn with_permutation(max_h: usize) -> impl Strategy<Value = (Tournament, Vec<usize>)> {
    tournament(max_h).prop_flat_map(|t| {
        let order = Just((0..t.h()).collect::<Vec<_>>()).prop_shuffle();
        (Just(t), order)
    })
}

proptest! {
    #[test]
    fn canonical_form_ignores_labels((t, order) in with_permutation(8)) {
        let r = t.relabel(&order);
        prop_assert_eq!(canonical_form(&t), canonical_form(&r));
        prop_assert_eq!(aut_size(&t), aut_size(&r));
        prop_assert_eq!(min_fas(&t).a, min_fas(&r).a);
        let c = canonical_form(&t);
        prop_assert_eq!(canonical_form(&c.tournament()), c);
    }

    #[test]
    fn reversal_preserves_invariants(t in tournament(7)) {
        let r = t.reverse();
        prop_assert_eq!(r.reverse(), t);
        prop_assert_eq!(aut_size(&t), aut_size(&r));
        prop_assert_eq!(min_fas(&t).a, min_fas(&r).a);
        prop_assert_eq!(bias_polynomial(&t).unwrap(), bias_polynomial(&r).unwrap());
    }

    #[test]
    fn induced_composes(t in tournament(9), mask in 1u16..512, inner in 1u16..512) {
        let s1: Vec<usize> = (0..t.h()).filter(|v| mask >> v & 1 == 1).collect();
        prop_assume!(!s1.is_empty());
        let s2: Vec<usize> = (0..s1.len()).filter(|v| inner >> v & 1 == 1).collect();
        prop_assume!(!s2.is_empty());
        let composed: Vec<usize> = s2.iter().map(|&i| s1[i]).collect();
        let once = t.induced(&s1).unwrap().induced(&s2).unwrap();
        prop_assert_eq!(once, t.induced(&composed).unwrap());
    }
}
