//! The `sepreg-nfa v1` text format.
//!
//! ```text
//! # sepreg-nfa v1
//! alphabet ab
//! states 3
//! initial 0
//! accepting 2
//! 0 a 1
//! 1 b 2
//! ```
//!
//! Lines starting with `#` are comments. `alphabet`, `states` and `initial`
//! are mandatory; `accepting` may be omitted or empty. Transition lines
//! follow the directives.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::nfa::{Nfa, StateId};
use crate::symbol::{Symbol, SymbolSet};

pub const HEADER: &str = "# sepreg-nfa v1";

fn format_err<T>(line: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Format {
        line,
        message: message.into(),
    })
}

fn parse_states(line: usize, args: &[&str], states: Option<usize>) -> Result<Vec<StateId>> {
    let n = match states {
        Some(n) => n,
        None => return format_err(line, "`states` must come before state lists"),
    };
    args.iter()
        .map(|a| {
            let q: StateId = a
                .parse()
                .or_else(|_| format_err(line, format!("bad state index `{a}`")))?;
            if q >= n {
                return format_err(line, format!("state {q} out of range (states {n})"));
            }
            Ok(q)
        })
        .collect()
}

pub fn parse_automaton_file(text: &str) -> Result<Nfa> {
    let mut alphabet: Option<SymbolSet> = None;
    let mut states: Option<usize> = None;
    let mut initial: Option<Vec<StateId>> = None;
    let mut accepting: Option<Vec<StateId>> = None;
    let mut transitions = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        let (head, args) = (fields[0], &fields[1..]);
        let duplicate = |seen: bool| {
            if seen {
                format_err(line, format!("duplicate `{head}` directive"))
            } else {
                Ok(())
            }
        };
        match head {
            "alphabet" => {
                duplicate(alphabet.is_some())?;
                let glyphs: String = args.concat();
                let set = SymbolSet::from_glyphs(&glyphs)
                    .or_else(|e| format_err(line, e.to_string()))?;
                if set.len() != glyphs.chars().count() {
                    return format_err(line, "duplicate glyph in alphabet");
                }
                alphabet = Some(set);
            }
            "states" => {
                duplicate(states.is_some())?;
                let n = match args {
                    [n] => n
                        .parse::<usize>()
                        .ok()
                        .filter(|&n| n > 0)
                        .map_or_else(|| format_err(line, "`states` needs a positive count"), Ok)?,
                    _ => return format_err(line, "`states` takes exactly one count"),
                };
                states = Some(n);
            }
            "initial" => {
                duplicate(initial.is_some())?;
                let list = parse_states(line, args, states)?;
                if list.is_empty() {
                    return format_err(line, "`initial` needs at least one state");
                }
                initial = Some(list);
            }
            "accepting" => {
                duplicate(accepting.is_some())?;
                accepting = Some(parse_states(line, args, states)?);
            }
            _ => {
                let (Some(n), Some(sigma)) = (states, alphabet) else {
                    return format_err(line, "transitions must follow `alphabet` and `states`");
                };
                let [from, glyph, to] = fields[..] else {
                    return format_err(line, format!("unknown directive `{head}`"));
                };
                let from = parse_states(line, &[from], Some(n))?[0];
                let to = parse_states(line, &[to], Some(n))?[0];
                let mut chars = glyph.chars();
                let s = match (chars.next().and_then(Symbol::from_glyph), chars.next()) {
                    (Some(s), None) if sigma.contains(s) => s,
                    _ => return format_err(line, format!("`{glyph}` is not an alphabet symbol")),
                };
                transitions.push((from, s, to));
            }
        }
    }
    let last = text.lines().count().max(1);
    let alphabet = alphabet.map_or_else(|| format_err(last, "missing `alphabet`"), Ok)?;
    let states = states.map_or_else(|| format_err(last, "missing `states`"), Ok)?;
    let initial = initial.map_or_else(|| format_err(last, "missing `initial`"), Ok)?;
    Nfa::new(
        states,
        alphabet,
        transitions,
        initial,
        accepting.unwrap_or_default(),
    )
    .or_else(|e| format_err(last, e.to_string()))
}

pub fn write_automaton_file(a: &Nfa) -> String {
    let mut out = String::new();
    let join = |it: &mut dyn Iterator<Item = StateId>| {
        it.map(|q| format!(" {q}")).collect::<String>()
    };
    writeln!(out, "{HEADER}").unwrap();
    writeln!(out, "alphabet {}", a.alphabet().iter().map(|s| s.glyph()).collect::<String>())
        .unwrap();
    writeln!(out, "states {}", a.state_count()).unwrap();
    writeln!(out, "initial{}", join(&mut a.initial().iter().copied())).unwrap();
    writeln!(out, "accepting{}", join(&mut a.accepting_states())).unwrap();
    for (p, s, q) in a.transitions() {
        writeln!(out, "{p} {s} {q}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regex::compile;

    #[test]
    fn round_trip_small() {
        let text = "alphabet ab\nstates 3\ninitial 0\naccepting 2\n0 a 1\n1 b 2\n1 a 1\n";
        let a = parse_automaton_file(text).unwrap();
        assert_eq!(a.state_count(), 3);
        let again = parse_automaton_file(&write_automaton_file(&a)).unwrap();
        assert_eq!(again, a);
        assert!(write_automaton_file(&a).starts_with(HEADER));
    }

    #[test]
    fn running_example_round_trip() {
        let a = compile("a(b*a)*a(bb)*abcabb(bc)* + (ab*c)* + b*c(cb)*").unwrap();
        let b = parse_automaton_file(&write_automaton_file(&a)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn initial_out_of_range() {
        let err = parse_automaton_file("alphabet a\nstates 3\ninitial 7\n").unwrap_err();
        assert!(matches!(err, Error::Format { line: 3, .. }), "{err}");
    }

    #[test]
    fn other_format_errors() {
        let bad = [
            ("states 2\ninitial 0\n", "missing `alphabet`"),
            ("alphabet a\ninitial 0\n", "`states` must come before"),
            ("alphabet a\nstates 2\n", "missing `initial`"),
            ("alphabet a\nstates 2\ninitial 0\n0 b 1\n", "not an alphabet symbol"),
            ("alphabet a\nstates 2\ninitial 0\n0 a 5\n", "out of range"),
            ("alphabet a\nstates 2\nstates 2\n", "duplicate"),
            ("alphabet aa\nstates 2\ninitial 0\n", "duplicate glyph"),
            ("alphabet a\nstates 0\ninitial 0\n", "positive"),
            ("alphabet a\nstates 2\ninitial 0\nfoo\n", "unknown directive"),
        ];
        for (text, needle) in bad {
            let err = parse_automaton_file(text).unwrap_err().to_string();
            assert!(err.contains(needle), "{text:?}: {err}");
        }
    }

    #[test]
    fn comments_and_empty_accepting() {
        let text = "# sepreg-nfa v1\n# note\nalphabet a b\nstates 1\ninitial 0\naccepting\n0 a 0\n";
        let a = parse_automaton_file(text).unwrap();
        assert!(a.is_empty());
        assert_eq!(a.alphabet(), SymbolSet::from_glyphs("ab").unwrap());
    }
}
