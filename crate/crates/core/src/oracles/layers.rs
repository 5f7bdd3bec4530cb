use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::nfa::Nfa;
use crate::symbol::{Alphabet, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    K,
    L,
    Neither,
}

/// One layer: the upward closure of `atoms`, claimed for `side`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layer {
    pub atoms: Vec<Word>,
    pub side: Side,
}

impl Layer {
    pub fn language(&self, ambient: Alphabet) -> Nfa {
        Nfa::from_words(&self.atoms, ambient).upward_subseq_closure(ambient)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LayerSeparation {
    pub layers: Vec<Layer>,
}

/// Words of `x` lying below no word of `y`.
pub fn layer(x: &BTreeSet<Word>, y: &BTreeSet<Word>) -> BTreeSet<Word> {
    x.iter()
        .filter(|w| !y.iter().any(|v| w.is_subsequence_of(v)))
        .cloned()
        .collect()
}

/// Peels layers off finite K and L alternately, K first, until both are
/// exhausted. Empty layers are dropped.
pub fn layer_separation_finite(k_words: &[Word], l_words: &[Word]) -> Result<LayerSeparation> {
    let mut k: BTreeSet<Word> = k_words.iter().cloned().collect();
    let mut l: BTreeSet<Word> = l_words.iter().cloned().collect();
    if let Some(w) = k.intersection(&l).next() {
        return Err(Error::OverlappingInputs(w.clone()));
    }
    let mut out = LayerSeparation::default();
    while !k.is_empty() || !l.is_empty() {
        let from_k = layer(&k, &l);
        let from_l = layer(&l, &k);
        for (atoms, side) in [(&from_k, Side::K), (&from_l, Side::L)] {
            if !atoms.is_empty() {
                out.layers.push(Layer {
                    atoms: atoms.iter().cloned().collect(),
                    side,
                });
            }
        }
        k.retain(|w| !from_k.contains(w));
        l.retain(|w| !from_l.contains(w));
    }
    Ok(out)
}

/// Checks that each layer minus the earlier ones meets at most one of K and
/// L (the one it is tagged with, if tagged), and that the layers cover K or
/// L.
pub fn verify_layer_separation(k: &Nfa, l: &Nfa, sep: &LayerSeparation, cap: usize) -> Result<bool> {
    let ambient = sep
        .layers
        .iter()
        .flat_map(|x| x.atoms.iter())
        .fold(k.alphabet().union(l.alphabet()), |a, w| a.union(w.alphabet()));
    let mut covered = Nfa::empty_language(ambient);
    for layer in &sep.layers {
        let fresh = layer
            .language(ambient)
            .intersect(&covered.complement_bounded(ambient, cap)?);
        let meets_k = !fresh.intersect(k).is_empty();
        let meets_l = !fresh.intersect(l).is_empty();
        let ok = match layer.side {
            Side::K => !meets_l,
            Side::L => !meets_k,
            Side::Neither => !(meets_k && meets_l),
        };
        if !ok {
            return Ok(false);
        }
        covered = covered.union(&layer.language(ambient));
    }
    let outside = covered.complement_bounded(ambient, cap)?;
    Ok(k.intersect(&outside).is_empty() || l.intersect(&outside).is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regex::compile;

    fn ws(list: &[&str]) -> Vec<Word> {
        list.iter().map(|s| Word::parse(s).unwrap()).collect()
    }

    #[test]
    fn four_alternating_layers() {
        let sep = layer_separation_finite(&ws(&["a", "aaa"]), &ws(&["aa", "aaaa"])).unwrap();
        let atoms: Vec<Vec<Word>> = sep.layers.iter().map(|x| x.atoms.clone()).collect();
        assert_eq!(atoms, vec![ws(&["aaaa"]), ws(&["aaa"]), ws(&["aa"]), ws(&["a"])]);
        let sides: Vec<Side> = sep.layers.iter().map(|x| x.side).collect();
        assert_eq!(sides, [Side::L, Side::K, Side::L, Side::K]);
        let (k, l) = (compile("a+aaa").unwrap(), compile("aa+aaaa").unwrap());
        assert!(verify_layer_separation(&k, &l, &sep, 1024).unwrap());
    }

    #[test]
    fn single_and_overlapping() {
        let sep = layer_separation_finite(&ws(&["a"]), &[]).unwrap();
        assert_eq!(sep.layers.len(), 1);
        assert_eq!(sep.layers[0].atoms, ws(&["a"]));
        assert!(matches!(
            layer_separation_finite(&ws(&["a"]), &ws(&["a"])),
            Err(Error::OverlappingInputs(_))
        ));
    }

    #[test]
    fn verifier_rejects_bad_layers() {
        let (k, l) = (compile("a").unwrap(), compile("b").unwrap());
        let everything = LayerSeparation {
            layers: vec![Layer {
                atoms: ws(&["@"]),
                side: Side::Neither,
            }],
        };
        assert!(!verify_layer_separation(&k, &l, &everything, 64).unwrap());
        assert!(!verify_layer_separation(&k, &l, &LayerSeparation::default(), 64).unwrap());
    }
}
