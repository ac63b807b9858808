use proptest::prelude::*;

use polyreal::eyd::ExtendedYoungDiagram;
use polyreal::forms::{beta_index, beta_pair, evaluate};
use polyreal::generators::{enumerate, Generator};
use polyreal::lattice::{apply_ops, epsilon, etilde, ftilde, phi, Op};
use polyreal::{AdaptedSequence, DoubleIndex, Family, LatticeElement, LinearForm};

const WORDS: [&[usize]; 4] = [&[2, 1, 3], &[1, 2, 3], &[3, 1, 2], &[2, 4, 1, 3]];

fn sequence() -> impl Strategy<Value = AdaptedSequence> {
    (0..4usize, 0..WORDS.len()).prop_map(|(f, w)| {
        let word = WORDS[w].to_vec();
        AdaptedSequence::build(Family::ALL[f], word.len(), word).unwrap()
    })
}

fn ops(n: usize) -> impl Strategy<Value = Vec<Op>> {
    prop::collection::vec((1..=n, any::<bool>()), 0..12)
        .prop_map(|v| v.into_iter().map(|(i, f)| if f { Op::F(i) } else { Op::E(i) }).collect())
}

fn image_element() -> impl Strategy<Value = (AdaptedSequence, LatticeElement)> {
    sequence().prop_flat_map(|seq| {
        let n = seq.n();
        prop::collection::vec(1..=n, 0..10).prop_map(move |word| {
            let a = word.iter().fold(LatticeElement::zero(), |a, &i| ftilde(&seq, &a, i));
            (seq.clone(), a)
        })
    })
}

fn form() -> impl Strategy<Value = LinearForm> {
    prop::collection::vec((1..5usize, 1..=3usize, -3i64..=3), 0..6)
        .prop_map(|terms| LinearForm::from_terms(terms.into_iter().map(|(s, l, c)| (DoubleIndex { s, l }, c))))
}

proptest! {
    #[test]
    fn e_undoes_f((seq, a) in image_element(), pick in 0usize..4) {
        let i = 1 + pick % seq.n();
        let b = ftilde(&seq, &a, i);
        prop_assert_eq!(etilde(&seq, &b, i), Some(a.clone()));
        prop_assert_eq!(epsilon(&seq, &b, i), epsilon(&seq, &a, i) + 1);
        prop_assert_eq!(phi(&seq, &b, i), phi(&seq, &a, i) - 1);
    }

    #[test]
    fn image_stays_nonnegative((seq, a) in image_element()) {
        prop_assert!(a.is_nonnegative());
        for i in 1..=seq.n() {
            prop_assert!(epsilon(&seq, &a, i) >= 0);
        }
    }

    #[test]
    fn operator_words_never_leave_the_image(seq in sequence(), word in ops(4)) {
        let word: Vec<Op> = word
            .into_iter()
            .map(|op| match op {
                Op::F(i) => Op::F(1 + (i - 1) % seq.n()),
                Op::E(i) => Op::E(1 + (i - 1) % seq.n()),
            })
            .collect();
        if let Some(a) = apply_ops(&seq, &LatticeElement::zero(), &word).unwrap() {
            prop_assert!(a.is_nonnegative());
            prop_assert!(a.total() <= word.len() as i64);
        }
    }

    #[test]
    fn lattice_json_round_trip((_seq, a) in image_element()) {
        let text = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<LatticeElement>(&text).unwrap(), a);
    }

    #[test]
    fn form_arithmetic(f in form(), g in form()) {
        prop_assert_eq!((f.clone() + g.clone()) - g.clone(), f.clone());
        prop_assert_eq!(f.clone() - f.clone(), LinearForm::zero());
        prop_assert_eq!(-(-f.clone()), f.clone());
        prop_assert!(f.terms().all(|(_, c)| c != 0));
        let text = serde_json::to_string(&f).unwrap();
        prop_assert_eq!(serde_json::from_str::<LinearForm>(&text).unwrap(), f);
    }

    #[test]
    fn evaluation_is_linear((seq, a) in image_element(), f in form(), g in form()) {
        let lhs = evaluate(&seq, &(f.clone() + g.clone()), &a);
        prop_assert_eq!(lhs, evaluate(&seq, &f, &a) + evaluate(&seq, &g, &a));
    }

    #[test]
    fn beta_matches_under_the_bijection(seq in sequence(), j in 1usize..30) {
        let d = seq.index_to_pair(j);
        prop_assert_eq!(seq.pair_to_index(d), j);
        prop_assert_eq!(beta_index(&seq, j), beta_pair(&seq, d.s, d.l));
    }

    #[test]
    fn eyd_json_round_trip(k in -3i64..4, cols in prop::collection::vec(0i64..4, 0..5)) {
        let mut ys: Vec<i64> = cols.iter().map(|c| k - 1 - c).collect();
        ys.sort_unstable();
        let t = ExtendedYoungDiagram::new(k, ys).unwrap();
        let text = serde_json::to_string(&t).unwrap();
        prop_assert_eq!(serde_json::from_str::<ExtendedYoungDiagram>(&text).unwrap(), t);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn generators_round_trip_and_satisfy_image(seq in sequence(), k_pick in 0usize..4, s in 1usize..3) {
        let k = 1 + k_pick % seq.n();
        for g in enumerate(&seq, k, 3).unwrap() {
            let text = serde_json::to_string(&g).unwrap();
            prop_assert_eq!(&serde_json::from_str::<Generator>(&text).unwrap(), &g);
            let f = g.assign(&seq, s).unwrap();
            let a = (0..seq.n()).fold(LatticeElement::zero(), |a, i| ftilde(&seq, &a, i + 1));
            prop_assert!(evaluate(&seq, &f, &a) >= 0, "{} at {:?}", f, a);
        }
    }
}
