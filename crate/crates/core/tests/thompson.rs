use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wreath_distortion::oracle::{self, ThompsonGroup, DEFAULT_LIMIT};
use wreath_distortion::thompson::{
    classify_carets, normal_form_to_tree_pair, tree_pair_to_normal_form, BinaryTree, FNormalForm,
    FWord, Generator, TreePair,
};

fn pair() -> impl Strategy<Value = TreePair> {
    prop::collection::vec(0usize..4, 0..10).prop_map(|gs| {
        gs.into_iter().fold(TreePair::identity(), |p, g| {
            p.apply_generator(Generator::ALL[g])
        })
    })
}

#[test]
fn normal_forms_round_trip_on_radius_4() {
    let ball = oracle::ball(&ThompsonGroup, 4, DEFAULT_LIMIT).unwrap();
    for key in ball.distances.keys() {
        let p = TreePair::from_key(key);
        let nf = tree_pair_to_normal_form(&p);
        nf.validate().unwrap();
        assert_eq!(normal_form_to_tree_pair(&nf).unwrap(), p);
    }
}

#[test]
fn reduction_is_confluent() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let mut p = TreePair::identity();
        for _ in 0..rng.gen_range(0..8) {
            p = p.apply_generator(Generator::ALL[rng.gen_range(0..4)]);
        }
        let reduced = p.clone();
        let mut q = p;
        while q.caret_count() < 12 {
            let k = rng.gen_range(0..=q.caret_count());
            q.expand_leaf(k);
        }
        assert_eq!(q.clone().reduce(), reduced);
        let mut r = q;
        loop {
            let options = r.removable_carets();
            let Some(&k) = options.choose(&mut rng) else {
                break;
            };
            r.remove_caret(k);
        }
        assert_eq!(r, reduced);
    }
}

#[test]
fn classification_covers_every_caret() {
    let ball = oracle::ball(&ThompsonGroup, 4, DEFAULT_LIMIT).unwrap();
    for key in ball.distances.keys() {
        let p = TreePair::from_key(key);
        assert_eq!(classify_carets(&p).len(), p.caret_count());
    }
}

#[test]
fn malformed_inputs_are_rejected() {
    assert!(BinaryTree::parse("((..)").is_err());
    assert!(FWord::parse("x").is_err());
    assert!(FNormalForm::parse("x0 x0^-1")
        .and_then(|nf| nf.validate())
        .is_err());
    let a = BinaryTree::parse("(..)").unwrap();
    let b = BinaryTree::parse("((..).)").unwrap();
    assert!(TreePair::new(a, b).is_err());
}

proptest! {
    #[test]
    fn associative(p in pair(), q in pair(), r in pair()) {
        prop_assert_eq!(p.multiply(&q).multiply(&r), p.multiply(&q.multiply(&r)));
    }

    #[test]
    fn inverse_cancels(p in pair()) {
        prop_assert!(p.multiply(&p.inverse()).is_identity());
    }

    #[test]
    fn products_are_reduced(p in pair(), q in pair()) {
        prop_assert!(p.multiply(&q).is_reduced());
    }

    #[test]
    fn key_and_json_round_trip(p in pair()) {
        prop_assert_eq!(TreePair::from_key(&p.key()), p.clone());
        prop_assert_eq!(TreePair::from_json(&p.to_json()).unwrap(), p);
    }

    #[test]
    fn normal_form_round_trip(p in pair()) {
        let nf = tree_pair_to_normal_form(&p);
        prop_assert_eq!(nf.to_word().evaluate(), p);
    }
}
