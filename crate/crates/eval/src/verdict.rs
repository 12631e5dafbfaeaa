//! Free-text answers to per-statement verdicts.

use std::sync::OnceLock;

use regex::Regex;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    True,
    False,
    Unknown,
}

#[derive(Debug, Error)]
#[error("keyword rules: {0}")]
pub struct RulesError(String);

#[derive(Debug, Clone, Deserialize)]
pub struct KeywordRules {
    #[serde(rename = "true")]
    pub true_phrases: Vec<String>,
    #[serde(rename = "false")]
    pub false_phrases: Vec<String>,
    pub negations: Vec<String>,
    pub hedges: Vec<String>,
    pub negation_window: usize,
}

const DEFAULT_RULES: &str = include_str!("../data/keywords.toml");

impl KeywordRules {
    pub fn from_toml(text: &str) -> Result<KeywordRules, RulesError> {
        let mut rules: KeywordRules = toml::from_str(text).map_err(|e| RulesError(e.to_string()))?;
        for list in [&mut rules.true_phrases, &mut rules.false_phrases, &mut rules.negations, &mut rules.hedges] {
            for p in list.iter_mut() {
                *p = p.to_lowercase();
            }
            if list.iter().any(|p| p.trim().is_empty()) {
                return Err(RulesError("empty phrase".into()));
            }
        }
        Ok(rules)
    }

    /// The rules shipped in `data/keywords.toml`.
    pub fn builtin() -> &'static KeywordRules {
        static RULES: OnceLock<KeywordRules> = OnceLock::new();
        RULES.get_or_init(|| KeywordRules::from_toml(DEFAULT_RULES).expect("bundled keyword file parses"))
    }
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

fn at_boundary(text: &str, start: usize, end: usize) -> bool {
    let before = text[..start].chars().next_back().is_none_or(|c| !is_word_char(c));
    let after = text[end..].chars().next().is_none_or(|c| !is_word_char(c));
    before && after
}

struct Hit {
    start: usize,
    end: usize,
    positive: bool,
}

/// Non-overlapping phrase matches, left to right, longest first.
fn phrase_hits(text: &str, rules: &KeywordRules) -> Vec<Hit> {
    let mut phrases: Vec<(&str, bool)> =
        rules.true_phrases.iter().map(|p| (p.as_str(), true)).chain(rules.false_phrases.iter().map(|p| (p.as_str(), false))).collect();
    phrases.sort_by_key(|(p, _)| std::cmp::Reverse(p.len()));
    let mut hits = Vec::new();
    let mut i = 0;
    while i < text.len() {
        let found = phrases.iter().find(|(p, _)| text[i..].starts_with(p) && at_boundary(text, i, i + p.len()));
        match found {
            Some((p, positive)) => {
                hits.push(Hit { start: i, end: i + p.len(), positive: *positive });
                i += p.len();
            }
            None => i += text[i..].chars().next().map_or(1, char::len_utf8),
        }
    }
    hits
}

fn negated(text: &str, hit: &Hit, rules: &KeywordRules) -> bool {
    let clause_start = text[..hit.start].rfind(['.', ',', ';', ':', '!', '?', '\n']).map_or(0, |i| i + 1);
    let words: Vec<&str> = text[clause_start..hit.start].split(|c: char| !is_word_char(c)).filter(|w| !w.is_empty()).collect();
    words.iter().rev().take(rules.negation_window).any(|w| rules.negations.iter().any(|n| n == w))
}

fn hedged(text: &str, hit: &Hit, rules: &KeywordRules) -> bool {
    let stops = ['.', '!', '?', '\n'];
    let start = text[..hit.start].rfind(stops).map_or(0, |i| i + 1);
    let end = text[hit.end..].find(stops).map_or(text.len(), |i| hit.end + i);
    let sentence = &text[start..end];
    rules.hedges.iter().any(|h| sentence.match_indices(h.as_str()).any(|(i, _)| at_boundary(sentence, i, i + h.len())))
}

/// Verdict for one answer segment.
pub fn classify_segment(segment: &str, rules: &KeywordRules) -> Verdict {
    let text = segment.to_lowercase();
    let Some(hit) = phrase_hits(&text, rules).pop() else {
        return Verdict::Unknown;
    };
    if hedged(&text, &hit, rules) {
        return Verdict::Unknown;
    }
    match hit.positive != negated(&text, &hit, rules) {
        true => Verdict::True,
        false => Verdict::False,
    }
}

fn marker() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"(?m)^[ \t>*#-]*\**(\d+)\**[.)]").expect("valid regex"))
}

/// Splits a response into numbered segments. Entry `i` holds the text after
/// the first marker `i+1.`; an answer that never numbers its parts counts
/// as the first segment when only one is expected.
pub fn segments(response: &str, n_items: usize) -> Vec<Option<String>> {
    let mut out: Vec<Option<String>> = vec![None; n_items];
    let marks: Vec<(usize, usize, usize)> = marker()
        .captures_iter(response)
        .filter_map(|c| {
            let m = c.get(0)?;
            let n: usize = c[1].parse().ok()?;
            Some((n, m.start(), m.end()))
        })
        .collect();
    if marks.is_empty() {
        if n_items == 1 && !response.trim().is_empty() {
            out[0] = Some(response.to_string());
        }
        return out;
    }
    for (k, &(n, _, body_start)) in marks.iter().enumerate() {
        let body_end = marks.get(k + 1).map_or(response.len(), |m| m.1);
        if (1..=n_items).contains(&n) && out[n - 1].is_none() {
            out[n - 1] = Some(response[body_start..body_end].to_string());
        }
    }
    out
}

pub fn parse_verdicts_with(response: &str, n_items: usize, rules: &KeywordRules) -> Vec<Verdict> {
    segments(response, n_items).into_iter().map(|s| s.map_or(Verdict::Unknown, |s| classify_segment(&s, rules))).collect()
}

/// One verdict per item, using the bundled keyword rules.
pub fn parse_verdicts(response: &str, n_items: usize) -> Vec<Verdict> {
    parse_verdicts_with(response, n_items, KeywordRules::builtin())
}
