//! JSON and text renderings of verdicts and oracle results.

use serde_json::{json, Value};

use sepreg_core::pt::{PairVertex, SynchEdge, SynchPath};
use sepreg_core::suffix::SuffixWitness;
use sepreg_core::{Certificate, Family, Stats, SymbolSet, Verdict, Witness, Word};

pub fn word(w: &Word) -> Value {
    Value::String(w.to_string())
}

fn words(ws: &[Word]) -> Value {
    Value::Array(ws.iter().map(word).collect())
}

fn pair(v: PairVertex) -> Value {
    json!([v.a, v.b])
}

fn glyphs(s: SymbolSet) -> Value {
    Value::Array(s.iter().map(|x| Value::String(x.to_string())).collect())
}

pub fn stats(s: &Stats) -> Value {
    json!({
        "elapsed_ms": s.elapsed.as_millis() as u64,
        "vertices": s.vertices,
        "caps_hit": s.caps_hit,
    })
}

fn is_prefix_family(f: Family) -> bool {
    matches!(f, Family::PrefixSingle | Family::PrefixUnion | Family::PrefixBc)
}

pub fn witness(w: &Witness, family: Family) -> Value {
    let order = if is_prefix_family(family) { "prefix" } else { "suffix" };
    match w {
        Witness::SubseqWord(w) => json!({"kind": "subseq-word", "word": word(w)}),
        Witness::SubseqClosure {
            closure,
            minimal_words,
            complete,
        } => json!({
            "kind": "subseq-closure",
            "closure_states": closure.state_count(),
            "minimal_words": words(minimal_words),
            "complete": complete,
        }),
        Witness::Affix(SuffixWitness::SingleWord(w)) => {
            json!({"kind": "single", "order": order, "word": word(w)})
        }
        Witness::Affix(SuffixWitness::UnionOfSuffixes(ws)) => {
            json!({"kind": "union", "order": order, "words": words(ws)})
        }
        Witness::Affix(SuffixWitness::BcCells {
            k,
            exact_words,
            suffix_classes,
        }) => json!({
            "kind": "bc",
            "order": order,
            "k": k,
            "exact_words": words(exact_words),
            "classes": words(suffix_classes),
        }),
    }
}

fn synch_path(p: &SynchPath) -> Value {
    let steps: Vec<Value> = p
        .steps
        .iter()
        .map(|&(e, to)| match e {
            SynchEdge::Symbol(s) => json!({"symbol": s.to_string(), "to": pair(to)}),
            SynchEdge::Cycle { sigma0, via } => {
                json!({"sigma0": glyphs(sigma0), "via": pair(via), "to": pair(to)})
            }
        })
        .collect();
    json!({"kind": "synch-path", "start": pair(p.start), "steps": steps})
}

pub fn certificate(c: &Certificate) -> Value {
    match c {
        Certificate::SynchPath(p) => synch_path(p),
        Certificate::SharedWord(w) => json!({"kind": "shared-word", "word": word(w)}),
        Certificate::Embedding { k_word, l_word } => {
            json!({"kind": "embedding", "k_word": word(k_word), "l_word": word(l_word)})
        }
        Certificate::LcsCovered { lcs, l_word } => {
            json!({"kind": "lcs-covered", "lcs": word(lcs), "l_word": word(l_word)})
        }
        Certificate::UnboundedCommonAffix {
            affix,
            k_word,
            l_word,
        } => json!({
            "kind": "unbounded-common-affix",
            "affix": word(affix),
            "k_word": word(k_word),
            "l_word": word(l_word),
        }),
        Certificate::SearchExhausted { depth } => json!({"kind": "search-exhausted", "depth": depth}),
        Certificate::NoAvoidingWord => json!({"kind": "no-avoiding-word"}),
    }
}

pub fn verdict(v: &Verdict, with_witness: bool) -> Value {
    json!({
        "family": v.family.name(),
        "separable": v.separable,
        "witness": v.witness.as_ref().filter(|_| with_witness).map(|w| witness(w, v.family)),
        "certificate": v.certificate.as_ref().map(certificate),
        "stats": stats(&v.stats),
    })
}

pub fn error(code: &str, message: &str) -> Value {
    json!({"error": {"code": code, "message": message}})
}

fn word_list(ws: &[Word]) -> String {
    let shown: Vec<String> = ws.iter().map(Word::display_or_eps).collect();
    format!("{{{}}}", shown.join(", "))
}

pub fn witness_text(w: &Witness, family: Family) -> String {
    let (star_left, star_right) = if is_prefix_family(family) { ("", "Σ*") } else { ("Σ*", "") };
    let affix = |w: &Word| format!("{star_left}{}{star_right}", w.display_or_eps());
    match w {
        Witness::SubseqWord(w) => format!("closure of {}", w.display_or_eps()),
        Witness::SubseqClosure {
            minimal_words,
            complete,
            ..
        } => format!(
            "closure of K, minimal words {}{}",
            word_list(minimal_words),
            if *complete { "" } else { " (partial)" }
        ),
        Witness::Affix(SuffixWitness::SingleWord(w)) => affix(w),
        Witness::Affix(SuffixWitness::UnionOfSuffixes(ws)) => {
            ws.iter().map(affix).collect::<Vec<_>>().join(" + ")
        }
        Witness::Affix(SuffixWitness::BcCells {
            k,
            exact_words,
            suffix_classes,
        }) => format!(
            "k = {k}, exact words {}, classes {}",
            word_list(exact_words),
            word_list(suffix_classes)
        ),
    }
}

pub fn certificate_text(c: &Certificate) -> String {
    match c {
        Certificate::SynchPath(p) => format!("synchronizing path {p}"),
        Certificate::SharedWord(w) => format!("shared word {}", w.display_or_eps()),
        Certificate::Embedding { k_word, l_word } => {
            format!("{} ∈ K below {} ∈ L", k_word.display_or_eps(), l_word.display_or_eps())
        }
        Certificate::LcsCovered { lcs, l_word } => {
            format!("common affix {} of K occurs in {} ∈ L", lcs.display_or_eps(), l_word.display_or_eps())
        }
        Certificate::UnboundedCommonAffix {
            affix,
            k_word,
            l_word,
        } => format!(
            "pumpable common affix {} of {} ∈ K and {} ∈ L",
            affix.display_or_eps(),
            k_word.display_or_eps(),
            l_word.display_or_eps()
        ),
        Certificate::SearchExhausted { depth } => format!("no separating word up to length {depth}"),
        Certificate::NoAvoidingWord => "every word lies below a word of L".into(),
    }
}

pub fn verdict_text(v: &Verdict, with_witness: bool) -> String {
    let mut out = format!("family: {}\n", v.family);
    let answer = match v.separable {
        Some(true) => "separable",
        Some(false) => "not separable",
        None => "inconclusive",
    };
    out.push_str(&format!("verdict: {answer}\n"));
    if with_witness {
        if let Some(w) = &v.witness {
            out.push_str(&format!("witness: {}\n", witness_text(w, v.family)));
        }
    }
    if let Some(c) = &v.certificate {
        out.push_str(&format!("certificate: {}\n", certificate_text(c)));
    }
    for cap in &v.stats.caps_hit {
        out.push_str(&format!("cap: {cap}\n"));
    }
    out.push_str(&format!(
        "stats: {} ms, {} vertices\n",
        v.stats.elapsed.as_millis(),
        v.stats.vertices
    ));
    out
}
