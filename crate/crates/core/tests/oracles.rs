mod common;

use std::collections::BTreeSet;

use common::*;
use proptest::prelude::*;

use sepreg_core::oracles::{
    bounded_zigzag_search, layer_separation_finite, pt_oracle, simon_level_sep, subseq_profile,
    verify_layer_separation, Layer, LayerSeparation, PtOracle, Side, ZigzagCertificate,
};
use sepreg_core::{Limits, Nfa, Word};

fn brute_subsequences(x: &Word, n: usize) -> BTreeSet<Word> {
    let s = x.symbols();
    (0u32..1 << s.len())
        .map(|mask| Word::new((0..s.len()).filter(|i| mask & (1 << i) != 0).map(|i| s[i]).collect()))
        .filter(|v| v.len() <= n)
        .collect()
}

fn recheck_zigzag(k: &Nfa, l: &Nfa, z: &ZigzagCertificate) -> bool {
    z.words.len() == z.in_k.len()
        && z.words.iter().zip(&z.in_k).all(|(x, &ink)| member(if ink { k } else { l }, x))
        && z.words.windows(2).all(|p| p[0].is_subsequence_of(&p[1]))
        && z.in_k.windows(2).all(|p| p[0] != p[1])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn profiles_match_enumeration(seed in any::<u64>(), n in 0usize..=3) {
        let x = random_word(&mut rng(seed), sigma(3), 7);
        prop_assert_eq!(subseq_profile(&x, n).subseqs, brute_subsequences(&x, n));
    }

    #[test]
    fn levels_are_monotone(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = random_nfa(&mut r, 4, 2, 1.2);
        let l = random_nfa(&mut r, 4, 2, 1.2);
        let limits = Limits::default();
        let mut before = false;
        for n in 0..=4 {
            let now = simon_level_sep(&k, &l, n, &limits).unwrap();
            prop_assert!(!before || now.separable, "level {}", n);
            if let Some((u, v)) = &now.cross_pair {
                prop_assert!(member(&k, u) && member(&l, v));
                prop_assert_eq!(brute_subsequences(u, n), brute_subsequences(v, n));
            }
            before = now.separable;
        }
    }

    #[test]
    fn zigzags_recheck(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = random_nfa(&mut r, 4, 2, 1.2);
        let l = random_nfa(&mut r, 4, 2, 1.2);
        if let Some(z) = bounded_zigzag_search(&k, &l, 5, 10) {
            prop_assert!(z.validate(&k, &l));
            prop_assert!(recheck_zigzag(&k, &l, &z), "{}", z);
        }
    }

    #[test]
    fn finite_layers_verify(seed in any::<u64>()) {
        let (k, l) = random_finite_pair(&mut rng(seed), sigma(2), 5, 5);
        let kv: Vec<Word> = k.iter().cloned().collect();
        let lv: Vec<Word> = l.iter().cloned().collect();
        let sep = layer_separation_finite(&kv, &lv).unwrap();
        let (kn, ln) = (finite_nfa(&k, sigma(2)), finite_nfa(&l, sigma(2)));
        prop_assert!(verify_layer_separation(&kn, &ln, &sep, 1 << 14).unwrap());
    }
}

#[test]
fn oracle_examples() {
    let limits = Limits::default();
    match pt_oracle(&re("a+aaa"), &re("aa+aaaa"), 4, &limits) {
        PtOracle::Conclusive { separable: true, level } => assert!(level <= 4),
        other => panic!("{other:?}"),
    }
    let k = re("a(abab)*c(acac)*");
    let l = re("bab(abab)*cac(acac)*");
    assert_eq!(pt_oracle(&k, &l, 3, &limits), PtOracle::NecessaryConditionHolds { level: 3 });
    assert_eq!(
        pt_oracle(&re("#"), &re("#"), 0, &limits),
        PtOracle::Conclusive { separable: true, level: 0 }
    );
}

#[test]
fn example_zigzag() {
    let k = re("a(abab)*c(acac)*");
    let l = re("bab(abab)*cac(acac)*");
    let z = bounded_zigzag_search(&k, &l, 6, 30).expect("zigzag");
    assert_eq!(z.len(), 6);
    assert!(recheck_zigzag(&k, &l, &z));
}

#[test]
fn figure_layers() {
    let words = |xs: &[&str]| xs.iter().map(|x| w(x)).collect::<Vec<_>>();
    let sep = layer_separation_finite(&words(&["a", "aaa"]), &words(&["aa", "aaaa"])).unwrap();
    let atoms: Vec<Vec<Word>> = sep.layers.iter().map(|x| x.atoms.clone()).collect();
    assert_eq!(atoms, [words(&["aaaa"]), words(&["aaa"]), words(&["aa"]), words(&["a"])]);
    let sides: Vec<Side> = sep.layers.iter().map(|x| x.side).collect();
    assert_eq!(sides, [Side::L, Side::K, Side::L, Side::K]);
    assert!(verify_layer_separation(&re("a+aaa"), &re("aa+aaaa"), &sep, 1 << 12).unwrap());
}

#[test]
fn bad_layers_rejected() {
    let everything = LayerSeparation {
        layers: vec![Layer {
            atoms: vec![Word::epsilon()],
            side: Side::K,
        }],
    };
    assert!(!verify_layer_separation(&re("a"), &re("b"), &everything, 1 << 12).unwrap());
    assert!(!verify_layer_separation(&re("a"), &re("b"), &LayerSeparation::default(), 1 << 12).unwrap());
    assert!(layer_separation_finite(&[w("a")], &[w("a")]).is_err());
    let single = layer_separation_finite(&[w("a")], &[]).unwrap();
    assert_eq!(single.layers.len(), 1);
}
