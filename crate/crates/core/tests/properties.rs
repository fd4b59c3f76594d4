use proptest::prelude::*;
use std::sync::Arc;
use weylq::cayley::cayley_matrix;
use weylq::ordering::{build_adapted_ordering, elementary_transpositions, is_normal};
use weylq::qalgebra::{reduce_mod_serre, Letter, QAlgebra};
use weylq::slice::slice_dims;
use weylq::weyl::{adapted_positive_system, involution_decompose, PlaneOrder};
use weylq::{NormalOrdering, RootSystem, WeylElement};

fn system() -> impl Strategy<Value = Arc<RootSystem>> {
    prop::sample::select(vec!["A2", "A3", "B2", "B3", "C3", "G2"])
        .prop_map(|l| RootSystem::build(l).unwrap())
}

fn element() -> impl Strategy<Value = WeylElement> {
    system().prop_flat_map(|sys| {
        let r = sys.rank;
        prop::collection::vec(1..=r, 0..12)
            .prop_map(move |w| WeylElement::from_word(&sys, &w).unwrap())
    })
}

/// A random reduced word for `w0`, grown one simple reflection at a time.
fn w0_ordering() -> impl Strategy<Value = NormalOrdering> {
    (
        system(),
        prop::collection::vec(any::<prop::sample::Index>(), 16),
    )
        .prop_map(|(sys, picks)| {
            let mut w = WeylElement::identity(&sys);
            let mut word = vec![];
            let d = sys.num_positive();
            for k in 0..d {
                let ascents: Vec<usize> = (1..=sys.rank)
                    .filter(|&i| {
                        let s = WeylElement::from_word(&sys, &[i]).unwrap();
                        w.compose(&s).length() > w.length()
                    })
                    .collect();
                let i = ascents[picks[k % picks.len()].index(ascents.len())];
                w = w.compose(&WeylElement::from_word(&sys, &[i]).unwrap());
                word.push(i);
            }
            NormalOrdering::from_reduced_word(&sys, &word).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn inversion_set_has_length_many_roots(w in element()) {
        prop_assert_eq!(w.inversion_set().len(), w.length());
        prop_assert!(w.compose(&w.inverse()).is_identity());
        let again = WeylElement::from_word(w.system(), w.word()).unwrap();
        prop_assert_eq!(again.matrix(), w.matrix());
    }

    #[test]
    fn w0_words_give_normal_orderings(o in w0_ordering()) {
        prop_assert!(is_normal(o.system(), o.sequence()).unwrap());
        for t in elementary_transpositions(&o) {
            prop_assert!(is_normal(t.system(), t.sequence()).unwrap());
        }
    }

    #[test]
    fn slice_identities_and_cayley_closed_form(s in element()) {
        let dec = involution_decompose(&s).unwrap();
        let cd = cayley_matrix(&s, &dec).unwrap();
        prop_assert!(cd.closed_form_mismatches(s.system()).is_empty());
        prop_assert!(cd.check(s.system()).is_ok());
        let aps = adapted_positive_system(&s, PlaneOrder::default(), Some(&dec)).unwrap();
        let seg = build_adapted_ordering(&s, &dec, &aps).unwrap();
        let dims = slice_dims(&s, &seg).unwrap();
        prop_assert_eq!(2 * dims.dim_m_plus + dims.dim_ts, dims.dim_g);
        prop_assert_eq!(dims.dim_m_plus, seg.m_plus_roots().len());
    }
}

fn letters(rank: usize) -> impl Strategy<Value = Vec<Letter>> {
    let letter = prop_oneof![
        (0..rank).prop_map(Letter::E),
        (0..rank).prop_map(Letter::F),
        (0..rank, -1i64..=1).prop_map(move |(i, p)| {
            let mut c = vec![weylq::Q::from_integer(0.into()); rank];
            c[i] = weylq::Q::from_integer(p.into());
            Letter::K(c)
        }),
    ];
    prop::collection::vec(letter, 0..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn normal_form_is_associative(a in letters(2), b in letters(2), c in letters(2)) {
        let sys = RootSystem::build("B2").unwrap();
        let alg = QAlgebra::new(&sys);
        let (x, y, z) = (alg.normal_form(&a), alg.normal_form(&b), alg.normal_form(&c));
        prop_assert_eq!(alg.mul(&alg.mul(&x, &y), &z), alg.mul(&x, &alg.mul(&y, &z)));
    }

    // Braid operators are automorphisms of the quotient by the Serre
    // relations, so the two sides are compared after reduction.
    #[test]
    fn braid_operators_are_multiplicative(a in letters(2), b in letters(2), i in 0usize..2) {
        let sys = RootSystem::build("A2").unwrap();
        let alg = QAlgebra::new(&sys);
        let (x, y) = (alg.normal_form(&a), alg.normal_form(&b));
        let lhs = alg.braid_t(i, &alg.mul(&x, &y));
        let rhs = alg.mul(&alg.braid_t(i, &x), &alg.braid_t(i, &y));
        prop_assert_eq!(
            reduce_mod_serre(&alg, &lhs).unwrap(),
            reduce_mod_serre(&alg, &rhs).unwrap()
        );
    }
}
