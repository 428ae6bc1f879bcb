//! Alphabets, words and special presentations, with their text and JSON formats.
//!
//! Presentation files look like
//!
//! ```text
//! # the bicyclic monoid
//! alphabet: a b
//! relator: a b
//! ```
//!
//! Words are whitespace-separated symbol names, `.` is the empty word, and when
//! every symbol name is a single character an unspaced string such as `aabb` is
//! accepted as well.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{At, Error, Location, Result};
use crate::matcher::Matcher;

/// Index of a symbol inside its [`Alphabet`].
pub type Letter = u32;

/// Token that stands for the empty word.
pub const EMPTY_WORD_TOKEN: &str = ".";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<String>,
    index: HashMap<String, Letter>,
    compact: bool,
}

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::syntax(
                "alphabet must contain at least one symbol",
                None,
            ));
        }
        let mut index = HashMap::with_capacity(symbols.len());
        for (i, name) in symbols.iter().enumerate() {
            check_symbol_name(name)?;
            if index.insert(name.clone(), i as Letter).is_some() {
                return Err(Error::syntax(format!("duplicate symbol `{name}`"), None));
            }
        }
        let compact = symbols.iter().all(|s| s.chars().count() == 1);
        Ok(Alphabet {
            symbols,
            index,
            compact,
        })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn name(&self, letter: Letter) -> &str {
        &self.symbols[letter as usize]
    }

    pub fn lookup(&self, name: &str) -> Option<Letter> {
        self.index.get(name).copied()
    }

    /// True when every symbol name is one character, so unspaced words are unambiguous.
    pub fn is_compact(&self) -> bool {
        self.compact
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.symbols.len()).map(|i| i as Letter)
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        parse_word_at(self, text, None)
    }

    /// Renders a word so that [`Alphabet::parse_word`] reads it back unchanged.
    pub fn render(&self, word: &Word) -> String {
        if word.is_empty() {
            return EMPTY_WORD_TOKEN.to_string();
        }
        let sep = if self.compact { "" } else { " " };
        word.letters()
            .iter()
            .map(|&l| self.name(l))
            .collect::<Vec<_>>()
            .join(sep)
    }

    /// Space-separated rendering, independent of compactness.
    pub fn render_spaced(&self, word: &Word) -> String {
        if word.is_empty() {
            return EMPTY_WORD_TOKEN.to_string();
        }
        word.letters()
            .iter()
            .map(|&l| self.name(l))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Builds a word from symbol names; panics on unknown names. Handy in tests.
    pub fn word(&self, text: &str) -> Word {
        self.parse_word(text)
            .unwrap_or_else(|e| panic!("bad word {text:?}: {e}"))
    }
}

fn check_symbol_name(name: &str) -> Result<()> {
    let bad = name.is_empty()
        || name == EMPTY_WORD_TOKEN
        || name == "="
        || name
            .chars()
            .any(|c| c.is_whitespace() || c.is_control() || c == '#' || c == ':');
    if bad {
        return Err(Error::syntax(format!("invalid symbol name `{name}`"), None));
    }
    Ok(())
}

/// A word over some alphabet. The empty word is the identity.
///
/// Words are ordered length-lexicographically (shortlex), letters by their
/// position in the alphabet.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> Word {
        Word(self.0[range].to_vec())
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn is_suffix_of(&self, other: &Word) -> bool {
        other.0.ends_with(&self.0)
    }

    /// Removes `len` letters starting at `start`.
    pub fn delete(&self, start: usize, len: usize) -> Word {
        let mut v = Vec::with_capacity(self.len() - len);
        v.extend_from_slice(&self.0[..start]);
        v.extend_from_slice(&self.0[start + len..]);
        Word(v)
    }

    pub fn to_json(&self) -> Value {
        json!(self.0)
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Splits `text` on whitespace, keeping the 0-based character column of each token.
pub(crate) fn tokens(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    for (col, (byte, ch)) in text.char_indices().enumerate() {
        if ch.is_whitespace() {
            if let Some((c, b)) = start.take() {
                out.push((c, &text[b..byte]));
            }
        } else if start.is_none() {
            start = Some((col, byte));
        }
    }
    if let Some((c, b)) = start {
        out.push((c, &text[b..]));
    }
    out
}

fn shift(base: Option<Location>, columns: usize) -> Option<Location> {
    base.map(|l| Location {
        line: l.line,
        column: l.column + columns,
    })
}

/// Parses a word; `base` is the location of the first character of `text`.
pub(crate) fn parse_word_at(
    alphabet: &Alphabet,
    text: &str,
    base: Option<Location>,
) -> Result<Word> {
    let mut letters = Vec::new();
    for (col, tok) in tokens(text) {
        append_token(alphabet, tok, shift(base, col), &mut letters)?;
    }
    Ok(Word(letters))
}

/// Appends the letters of one whitespace-free token (symbol, `.`, or compact word).
pub(crate) fn append_token(
    alphabet: &Alphabet,
    tok: &str,
    at: Option<Location>,
    letters: &mut Vec<Letter>,
) -> Result<()> {
    if tok == EMPTY_WORD_TOKEN {
        return Ok(());
    }
    if let Some(l) = alphabet.lookup(tok) {
        letters.push(l);
        return Ok(());
    }
    if alphabet.is_compact() {
        for (i, ch) in tok.chars().enumerate() {
            let mut buf = [0u8; 4];
            match alphabet.lookup(ch.encode_utf8(&mut buf)) {
                Some(l) => letters.push(l),
                None => {
                    return Err(Error::UnknownSymbol {
                        name: ch.to_string(),
                        at: At(shift(at, i)),
                    })
                }
            }
        }
        return Ok(());
    }
    if segmentable(alphabet, tok) {
        return Err(Error::AmbiguousCompactForm {
            text: tok.to_string(),
            at: At(at),
        });
    }
    Err(Error::UnknownSymbol {
        name: tok.to_string(),
        at: At(at),
    })
}

/// Whether `tok` splits into a concatenation of symbol names.
fn segmentable(alphabet: &Alphabet, tok: &str) -> bool {
    let n = tok.len();
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for i in 0..n {
        if !reach[i] || !tok.is_char_boundary(i) {
            continue;
        }
        for name in alphabet.symbols() {
            if tok[i..].starts_with(name.as_str()) {
                reach[i + name.len()] = true;
            }
        }
    }
    reach[n]
}

/// A special presentation `⟨A | u_1 = 1, …, u_k = 1⟩`.
///
/// Construction validates the relators and builds the occurrence automaton
/// that the rewriting code uses; the value is immutable afterwards.
#[derive(Debug, Clone)]
pub struct SpecialSystem {
    alphabet: Alphabet,
    relators: Vec<Word>,
    matcher: Matcher,
}

impl PartialEq for SpecialSystem {
    fn eq(&self, other: &Self) -> bool {
        self.alphabet == other.alphabet && self.relators == other.relators
    }
}

impl Eq for SpecialSystem {}

impl SpecialSystem {
    pub fn new(alphabet: Alphabet, relators: Vec<Word>) -> Result<Self> {
        let mut seen: HashMap<&Word, usize> = HashMap::new();
        for (i, r) in relators.iter().enumerate() {
            if r.is_empty() {
                return Err(Error::EmptyRelator { at: At(None) });
            }
            if r.letters().iter().any(|&l| l as usize >= alphabet.len()) {
                return Err(Error::syntax(
                    format!("relator {i} uses a letter outside the alphabet"),
                    None,
                ));
            }
            if let Some(&first) = seen.get(r) {
                return Err(Error::DuplicateRelator {
                    first,
                    at: At(None),
                });
            }
            seen.insert(r, i);
        }
        let matcher = Matcher::new(alphabet.len(), &relators);
        Ok(SpecialSystem {
            alphabet,
            relators,
            matcher,
        })
    }

    /// Convenience constructor from symbol names and relator strings.
    pub fn from_strs(symbols: &[&str], relators: &[&str]) -> Result<Self> {
        let alphabet = Alphabet::new(symbols.iter().copied())?;
        let words = relators
            .iter()
            .map(|r| alphabet.parse_word(r))
            .collect::<Result<Vec<_>>>()?;
        SpecialSystem::new(alphabet, words)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn relator(&self, i: usize) -> &Word {
        &self.relators[i]
    }

    pub fn max_relator_len(&self) -> usize {
        self.relators.iter().map(Word::len).max().unwrap_or(0)
    }

    pub(crate) fn matcher(&self) -> &Matcher {
        &self.matcher
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        self.alphabet.parse_word(text)
    }

    pub fn render(&self, word: &Word) -> String {
        self.alphabet.render(word)
    }

    /// The presentation file text; parses back to an identical system.
    pub fn to_text(&self) -> String {
        let mut out = format!("alphabet: {}\n", self.alphabet.symbols().join(" "));
        for r in &self.relators {
            out.push_str("relator: ");
            out.push_str(&self.alphabet.render_spaced(r));
            out.push('\n');
        }
        out
    }

    /// Canonical JSON: `{"alphabet":[...], "relators":[[indices...], ...]}`.
    pub fn to_json(&self) -> Value {
        json!({
            "alphabet": self.alphabet.symbols(),
            "relators": self.relators.iter().map(Word::to_json).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for SpecialSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self
            .relators
            .iter()
            .map(|r| self.alphabet.render(r))
            .collect();
        write!(
            f,
            "⟨{} | {}⟩",
            self.alphabet.symbols().join(", "),
            rels.join(", ")
        )
    }
}

/// Strips a `#` comment and returns the remaining text.
pub(crate) fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

/// Splits `keyword: rest`, returning the byte offset of `rest` inside `line`.
pub(crate) fn split_directive(line: &str) -> Option<(&str, &str, usize)> {
    let colon = line.find(':')?;
    let key = line[..colon].trim();
    Some((key, &line[colon + 1..], colon + 1))
}

pub(crate) fn char_column(line: &str, byte: usize) -> usize {
    line[..byte].chars().count() + 1
}

pub(crate) fn first_token_column(line: &str) -> usize {
    line.chars().take_while(|c| c.is_whitespace()).count() + 1
}

/// Parses a presentation file. Relator order is preserved.
pub fn parse_presentation(text: &str) -> Result<SpecialSystem> {
    let mut alphabet: Option<Alphabet> = None;
    let mut relators: Vec<(Location, &str, usize)> = Vec::new();

    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = strip_comment(raw);
        if line.trim().is_empty() {
            continue;
        }
        let head = Location {
            line: line_no,
            column: first_token_column(line),
        };
        let Some((key, rest, offset)) = split_directive(line) else {
            return Err(Error::syntax(
                "expected `alphabet:` or `relator:` directive",
                Some(head),
            ));
        };
        let rest_loc = Location {
            line: line_no,
            column: char_column(line, offset),
        };
        match key {
            "alphabet" => {
                if alphabet.is_some() {
                    return Err(Error::syntax("second `alphabet:` line", Some(head)));
                }
                let names: Vec<&str> = tokens(rest).into_iter().map(|(_, t)| t).collect();
                alphabet = Some(Alphabet::new(names).map_err(|e| e.located(rest_loc))?);
            }
            "relator" => relators.push((rest_loc, rest, line_no)),
            other => {
                return Err(Error::syntax(
                    format!("unknown directive `{other}`"),
                    Some(head),
                ))
            }
        }
    }

    let alphabet = alphabet.ok_or_else(|| Error::syntax("missing `alphabet:` line", None))?;
    let mut words: Vec<Word> = Vec::with_capacity(relators.len());
    let mut seen: HashMap<Word, usize> = HashMap::new();
    for (loc, rest, _) in relators {
        let w = parse_word_at(&alphabet, rest, Some(loc))?;
        if w.is_empty() {
            return Err(Error::EmptyRelator { at: At(Some(loc)) });
        }
        if let Some(&first) = seen.get(&w) {
            return Err(Error::DuplicateRelator {
                first,
                at: At(Some(loc)),
            });
        }
        seen.insert(w.clone(), words.len());
        words.push(w);
    }
    SpecialSystem::new(alphabet, words)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_bicyclic() {
        let sys = parse_presentation("alphabet: a b\nrelator: a b").unwrap();
        assert_eq!(sys.alphabet().symbols(), ["a", "b"]);
        assert_eq!(sys.relators(), [Word::from(vec![0, 1])]);
    }

    #[test]
    fn parses_z2_with_comments() {
        let sys = parse_presentation(
            "# cyclic of order two\nalphabet: a  # one letter\n\nrelator: a a\n",
        )
        .unwrap();
        assert_eq!(sys.relators(), [Word::from(vec![0, 0])]);
    }

    #[test]
    fn empty_relator_rejected() {
        let err = parse_presentation("alphabet: a\nrelator:").unwrap_err();
        assert!(matches!(err, Error::EmptyRelator { .. }), "{err}");
        let err = parse_presentation("alphabet: a\nrelator: .").unwrap_err();
        assert!(matches!(err, Error::EmptyRelator { .. }), "{err}");
    }

    #[test]
    fn duplicate_relator_rejected() {
        let err = parse_presentation("alphabet: a b\nrelator: a b\nrelator: ab").unwrap_err();
        match err {
            Error::DuplicateRelator { first, at } => {
                assert_eq!(first, 0);
                assert_eq!(at.0.unwrap().line, 3);
            }
            other => panic!("{other}"),
        }
    }

    #[test]
    fn unknown_symbol_has_location() {
        let err = parse_presentation("alphabet: a b\nrelator: a c b").unwrap_err();
        match err {
            Error::UnknownSymbol { name, at } => {
                assert_eq!(name, "c");
                assert_eq!(
                    at.0,
                    Some(Location {
                        line: 2,
                        column: 12
                    })
                );
            }
            other => panic!("{other}"),
        }
        let err = parse_presentation("alphabet: a b\nrelator: acb").unwrap_err();
        match err {
            Error::UnknownSymbol { name, at } => {
                assert_eq!(name, "c");
                assert_eq!(
                    at.0,
                    Some(Location {
                        line: 2,
                        column: 11
                    })
                );
            }
            other => panic!("{other}"),
        }
    }

    #[test]
    fn syntax_errors() {
        for text in [
            "relator: a",
            "alphabet: a\nalphabet: b",
            "alphabet: a\nrule: a",
            "alphabet: a\njust words",
            "alphabet:",
            "alphabet: a a",
            "alphabet: a .",
        ] {
            let err = parse_presentation(text).unwrap_err();
            assert!(matches!(err, Error::Syntax { .. }), "{text:?}: {err}");
        }
    }

    #[test]
    fn parse_word_forms() {
        let ab = Alphabet::new(["a", "b"]).unwrap();
        assert_eq!(ab.parse_word("ab").unwrap(), Word::from(vec![0, 1]));
        assert_eq!(ab.parse_word("a b").unwrap(), Word::from(vec![0, 1]));
        assert_eq!(ab.parse_word(".").unwrap(), Word::empty());
        assert_eq!(ab.parse_word("").unwrap(), Word::empty());
        assert_eq!(
            ab.parse_word("ab ba").unwrap(),
            Word::from(vec![0, 1, 1, 0])
        );
    }

    #[test]
    fn multi_char_symbols() {
        let abcd = Alphabet::new(["ab", "cd"]).unwrap();
        assert!(!abcd.is_compact());
        assert!(matches!(
            abcd.parse_word("abcd"),
            Err(Error::AmbiguousCompactForm { .. })
        ));
        assert_eq!(abcd.parse_word("ab cd").unwrap(), Word::from(vec![0, 1]));
        assert!(matches!(
            abcd.parse_word("ab xy"),
            Err(Error::UnknownSymbol { .. })
        ));
        let w = Word::from(vec![1, 0, 0]);
        assert_eq!(abcd.render(&w), "cd ab ab");
        assert_eq!(abcd.parse_word(&abcd.render(&w)).unwrap(), w);
    }

    #[test]
    fn shortlex_order() {
        let mut ws = vec![
            Word::from(vec![1]),
            Word::from(vec![0, 0]),
            Word::empty(),
            Word::from(vec![0]),
        ];
        ws.sort();
        assert_eq!(
            ws,
            vec![
                Word::empty(),
                Word::from(vec![0]),
                Word::from(vec![1]),
                Word::from(vec![0, 0])
            ]
        );
    }

    #[test]
    fn canonical_json() {
        let sys = SpecialSystem::from_strs(&["a", "b"], &["ab", "ba"]).unwrap();
        assert_eq!(
            sys.to_json().to_string(),
            r#"{"alphabet":["a","b"],"relators":[[0,1],[1,0]]}"#
        );
    }
}
