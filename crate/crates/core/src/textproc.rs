//! Tokenization and syllable counting driven by per-language rule packs.
//!
//! A rule pack is a small key-value text file:
//!
//! ```text
//! # comment
//! version = 1
//! language = de
//! letters = abcdefghijklmnopqrstuvwxyzäöüß
//! vowels = aeiouäöü
//! diphthong_exceptions =
//! final_e_silent = false
//! apostrophe = split
//! ```
//!
//! `diphthong_exceptions` is a comma-separated list of vowel clusters that
//! count as two nuclei. `apostrophe` is `split` (elided forms become separate
//! tokens) or `join` (an apostrophe between two letters stays inside the token).
//!
//! Syllables are counted as maximal vowel clusters. Text is NFC-normalized and
//! case-folded before tokenization.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use unicode_normalization::UnicodeNormalization;

use crate::error::{Error, PathContext, Result};

pub const RULES_FORMAT_VERSION: u32 = 1;

/// Every token has at least this many syllables.
pub const MIN_SYLLABLES: u32 = 1;

const BUILTIN_PACKS: &[(&str, &str)] = &[
    ("de", include_str!("../rules/de.rules")),
    ("en", include_str!("../rules/en.rules")),
    ("es", include_str!("../rules/es.rules")),
    ("fr", include_str!("../rules/fr.rules")),
    ("it", include_str!("../rules/it.rules")),
    ("sv", include_str!("../rules/sv.rules")),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ApostrophePolicy {
    Split,
    Join,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LanguageRules {
    language_code: String,
    letters: BTreeSet<char>,
    vowels: BTreeSet<char>,
    diphthong_exceptions: Vec<Vec<char>>,
    final_e_silent: bool,
    apostrophe: ApostrophePolicy,
}

impl LanguageRules {
    /// One of the shipped packs: en, fr, de, sv, es, it.
    pub fn builtin(code: &str) -> Option<Self> {
        BUILTIN_PACKS
            .iter()
            .find(|(c, _)| *c == code)
            .map(|(_, src)| src.parse().expect("builtin rule pack is valid"))
    }

    pub fn builtin_codes() -> impl Iterator<Item = &'static str> {
        BUILTIN_PACKS.iter().map(|(c, _)| *c)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        std::fs::read_to_string(path).at(path)?.parse()
    }

    pub fn language_code(&self) -> &str {
        &self.language_code
    }

    pub fn is_letter(&self, c: char) -> bool {
        self.letters.contains(&c)
    }

    pub fn is_vowel(&self, c: char) -> bool {
        self.vowels.contains(&c)
    }

    pub fn final_e_silent(&self) -> bool {
        self.final_e_silent
    }

    pub fn apostrophe(&self) -> ApostrophePolicy {
        self.apostrophe
    }

    pub fn min_syllables(&self) -> u32 {
        MIN_SYLLABLES
    }
}

impl FromStr for LanguageRules {
    type Err = Error;

    fn from_str(src: &str) -> Result<Self> {
        let mut fields: BTreeMap<&str, (usize, &str)> = BTreeMap::new();
        for (idx, raw) in src.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| Error::Parse {
                line: line_no,
                message: format!("expected `key = value`, got `{line}`"),
            })?;
            let key = key.trim();
            if fields.insert(key, (line_no, value.trim())).is_some() {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("duplicate key `{key}`"),
                });
            }
        }

        let get = |key: &str| -> Result<(usize, &str)> {
            fields.get(key).copied().ok_or_else(|| Error::Parse {
                line: 0,
                message: format!("missing key `{key}`"),
            })
        };
        let bad = |line: usize, message: String| Error::Parse { line, message };

        let (line, version) = get("version")?;
        match version.parse::<u32>() {
            Ok(RULES_FORMAT_VERSION) => {}
            _ => return Err(bad(line, format!("unsupported rules version `{version}`"))),
        }

        let (line, code) = get("language")?;
        if code.is_empty() {
            return Err(bad(line, "empty language code".into()));
        }
        let fold = |s: &str| -> BTreeSet<char> {
            caseless::default_case_fold_str(&s.nfc().collect::<String>())
                .chars()
                .filter(|c| !c.is_whitespace())
                .collect()
        };
        let (_, letters) = get("letters")?;
        let mut letters = fold(letters);
        let (line, vowels) = get("vowels")?;
        let vowels = fold(vowels);
        if let Some(c) = vowels.iter().find(|c| !letters.contains(c)) {
            return Err(bad(line, format!("vowel `{c}` is not in letters")));
        }
        if vowels.is_empty() {
            return Err(bad(line, "vowel set is empty".into()));
        }

        let mut diphthong_exceptions = Vec::new();
        if let Some(&(line, list)) = fields.get("diphthong_exceptions") {
            for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                let cluster: Vec<char> = caseless::default_case_fold_str(item).chars().collect();
                if cluster.len() < 2 || cluster.iter().any(|c| !vowels.contains(c)) {
                    return Err(bad(
                        line,
                        format!("exception `{item}` must be two or more vowels"),
                    ));
                }
                diphthong_exceptions.push(cluster);
            }
        }

        let final_e_silent = match fields.get("final_e_silent") {
            None => false,
            Some(&(line, v)) => v
                .parse::<bool>()
                .map_err(|_| bad(line, format!("expected true/false, got `{v}`")))?,
        };

        let apostrophe = match fields.get("apostrophe").map(|&(l, v)| (l, v)) {
            None | Some((_, "split")) => ApostrophePolicy::Split,
            Some((_, "join")) => ApostrophePolicy::Join,
            Some((line, v)) => return Err(bad(line, format!("unknown apostrophe policy `{v}`"))),
        };
        if apostrophe == ApostrophePolicy::Join {
            letters.insert('\'');
        }

        Ok(LanguageRules {
            language_code: code.to_string(),
            letters,
            vowels,
            diphthong_exceptions,
            final_e_silent,
            apostrophe,
        })
    }
}

impl fmt::Display for LanguageRules {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let set = |s: &BTreeSet<char>| s.iter().filter(|&&c| c != '\'').collect::<String>();
        writeln!(f, "version = {RULES_FORMAT_VERSION}")?;
        writeln!(f, "language = {}", self.language_code)?;
        writeln!(f, "letters = {}", set(&self.letters))?;
        writeln!(f, "vowels = {}", set(&self.vowels))?;
        let exc: Vec<String> = self
            .diphthong_exceptions
            .iter()
            .map(|c| c.iter().collect())
            .collect();
        writeln!(f, "diphthong_exceptions = {}", exc.join(","))?;
        writeln!(f, "final_e_silent = {}", self.final_e_silent)?;
        let policy = match self.apostrophe {
            ApostrophePolicy::Split => "split",
            ApostrophePolicy::Join => "join",
        };
        writeln!(f, "apostrophe = {policy}")
    }
}

/// Rule packs by language code: the builtins plus any loaded from disk.
#[derive(Debug, Clone)]
pub struct RuleRegistry {
    packs: BTreeMap<String, LanguageRules>,
}

impl Default for RuleRegistry {
    fn default() -> Self {
        let packs = LanguageRules::builtin_codes()
            .map(|c| (c.to_string(), LanguageRules::builtin(c).unwrap()))
            .collect();
        RuleRegistry { packs }
    }
}

impl RuleRegistry {
    pub fn empty() -> Self {
        RuleRegistry {
            packs: BTreeMap::new(),
        }
    }

    /// Adds (or replaces) a pack under its own language code.
    pub fn insert(&mut self, rules: LanguageRules) {
        self.packs.insert(rules.language_code.clone(), rules);
    }

    /// Loads every `*.rules` file in `dir`, overriding builtins of the same code.
    pub fn load_dir(&mut self, dir: &Path) -> Result<()> {
        let mut paths: Vec<_> = std::fs::read_dir(dir)
            .at(dir)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|e| e == "rules"))
            .collect();
        paths.sort();
        for p in paths {
            self.insert(LanguageRules::from_path(&p)?);
        }
        Ok(())
    }

    pub fn get(&self, code: &str) -> Result<&LanguageRules> {
        self.packs
            .get(code)
            .ok_or_else(|| Error::UnknownLanguage(code.to_string()))
    }

    pub fn contains(&self, code: &str) -> bool {
        self.packs.contains_key(code)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TokenStream {
    pub source_id: String,
    pub tokens: Vec<String>,
}

impl TokenStream {
    pub fn new(source_id: impl Into<String>, tokens: Vec<String>) -> Self {
        TokenStream {
            source_id: source_id.into(),
            tokens,
        }
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

fn is_apostrophe(c: char) -> bool {
    matches!(c, '\'' | '\u{2019}' | '\u{02BC}')
}

/// Splits text into lowercased word tokens: maximal runs of the pack's letters.
pub fn tokenize(text: &str, rules: &LanguageRules) -> Vec<String> {
    let folded = caseless::default_case_fold_str(&text.nfc().collect::<String>());
    let chars: Vec<char> = folded.chars().collect();
    let mut tokens = Vec::new();
    let mut current = String::new();
    for (i, &c) in chars.iter().enumerate() {
        if c != '\'' && rules.is_letter(c) {
            current.push(c);
            continue;
        }
        let joins = rules.apostrophe == ApostrophePolicy::Join
            && is_apostrophe(c)
            && !current.is_empty()
            && chars
                .get(i + 1)
                .is_some_and(|&n| n != '\'' && rules.is_letter(n));
        if joins {
            current.push('\'');
        } else if !current.is_empty() {
            tokens.push(std::mem::take(&mut current));
        }
    }
    if !current.is_empty() {
        tokens.push(current);
    }
    tokens
}

pub fn tokenize_stream(
    source_id: impl Into<String>,
    text: &str,
    rules: &LanguageRules,
) -> TokenStream {
    TokenStream::new(source_id, tokenize(text, rules))
}

fn count_occurrences(haystack: &[char], needle: &[char]) -> u32 {
    let mut n = 0;
    let mut i = 0;
    while i + needle.len() <= haystack.len() {
        if haystack[i..i + needle.len()] == *needle {
            n += 1;
            i += needle.len();
        } else {
            i += 1;
        }
    }
    n
}

/// Number of vowel clusters in `word`, never less than one.
pub fn count_syllables(word: &str, rules: &LanguageRules) -> u32 {
    let chars: Vec<char> = word.chars().collect();
    let mut nuclei = 0u32;
    let mut clusters = 0u32;
    let mut i = 0;
    while i < chars.len() {
        if !rules.is_vowel(chars[i]) {
            i += 1;
            continue;
        }
        let start = i;
        while i < chars.len() && rules.is_vowel(chars[i]) {
            i += 1;
        }
        let cluster = &chars[start..i];
        clusters += 1;
        nuclei += 1;
        for exc in &rules.diphthong_exceptions {
            nuclei += count_occurrences(cluster, exc);
        }
    }

    if rules.final_e_silent && clusters > 1 {
        let n = chars.len();
        let lone_final_e = n >= 2 && chars[n - 1] == 'e' && !rules.is_vowel(chars[n - 2]);
        if lone_final_e {
            nuclei -= 1;
        }
    }
    nuclei.max(MIN_SYLLABLES)
}
