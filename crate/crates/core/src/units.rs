//! Invertible words, minimal factorizations, the sets Λ and Δ, and the decision
//! whether the group of units `U(M)` is trivial.
//!
//! A word is right invertible when some extension of it equals 1, left
//! invertible when some word times it equals 1, and invertible when both hold.
//! It is minimal when no proper nonempty prefix is invertible. Minimal words form
//! a biprefix code, so each relator factors uniquely into minimal words; Λ
//! collects those factors and generates `U(M)`.
//!
//! Triviality is decided in two ways:
//!
//! * **overlap-free**: a special system in which no two relators overlap
//!   (self-overlaps included) has trivial group of units, and every relator is
//!   a single minimal factor. No search is needed.
//! * **generator check** (confluent systems): compute Λ via exact invertibility
//!   and test whether every `λ ∈ Λ` reduces to the empty word.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::presentation::{Letter, SpecialSystem, Word};
use crate::rewrite::{is_confluent, is_overlap_free, normal_form};
use crate::wp_language::{erasable_oracle, WpRecognizers};
use crate::Limits;

/// Search depth used by [`invertibility`] on non-confluent systems when no bound is given.
pub const DEFAULT_SEARCH_BOUND: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Answer {
    Yes,
    No,
    Unknown,
}

impl Answer {
    fn from_bool(b: bool) -> Self {
        if b {
            Answer::Yes
        } else {
            Answer::No
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Answer::Yes => "yes",
            Answer::No => "no",
            Answer::Unknown => "unknown",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Membership in the prefix/suffix closures of the word-problem grammar.
    Grammar,
    BoundedSearch,
    /// Decided from the relators alone: prefixes (suffixes) of relators are
    /// right (left) invertible.
    RelatorPrefix,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Grammar => "grammar",
            Method::BoundedSearch => "bounded_search",
            Method::RelatorPrefix => "relator_prefix",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Invertibility {
    pub right: Answer,
    pub left: Answer,
    pub method: Method,
}

impl Invertibility {
    pub fn two_sided(&self) -> Answer {
        match (self.right, self.left) {
            (Answer::Yes, Answer::Yes) => Answer::Yes,
            (Answer::No, _) | (_, Answer::No) => Answer::No,
            _ => Answer::Unknown,
        }
    }
}

/// Exact invertibility on a confluent system via the word-problem grammar.
#[derive(Debug, Clone)]
pub struct InvertibilityOracle<'a> {
    sys: &'a SpecialSystem,
    recognizers: WpRecognizers,
}

impl<'a> InvertibilityOracle<'a> {
    /// Fails with [`Error::NotConfluent`] unless `sys` is confluent.
    pub fn new(sys: &'a SpecialSystem, limits: &Limits) -> Result<Self> {
        if !is_confluent(sys, limits)? {
            return Err(Error::NotConfluent);
        }
        Ok(Self::new_unchecked(sys))
    }

    /// Skips the confluence check; answers are only meaningful for confluent systems.
    pub fn new_unchecked(sys: &'a SpecialSystem) -> Self {
        InvertibilityOracle {
            sys,
            recognizers: WpRecognizers::new(sys),
        }
    }

    pub fn system(&self) -> &SpecialSystem {
        self.sys
    }

    pub fn right_invertible(&self, w: &[Letter]) -> bool {
        self.recognizers.prefixes.accepts_letters(w)
    }

    pub fn left_invertible(&self, w: &[Letter]) -> bool {
        self.recognizers.suffixes.accepts_letters(w)
    }

    pub fn is_invertible(&self, w: &[Letter]) -> bool {
        self.right_invertible(w) && self.left_invertible(w)
    }

    /// Membership in the word problem.
    pub fn equals_one(&self, w: &[Letter]) -> bool {
        self.recognizers.language.accepts_letters(w)
    }

    pub fn invertibility(&self, w: &Word) -> Invertibility {
        Invertibility {
            right: Answer::from_bool(self.right_invertible(w.letters())),
            left: Answer::from_bool(self.left_invertible(w.letters())),
            method: Method::Grammar,
        }
    }

    /// Greedy factorization into minimal invertible words.
    pub fn minimal_factorization(&self, w: &Word) -> Result<Vec<Word>> {
        let letters = w.letters();
        if !self.is_invertible(letters) {
            return Err(Error::NotInvertible {
                word: self.sys.render(w),
            });
        }
        let right = self.recognizers.prefixes.spans(letters);
        let left = self.recognizers.suffixes.spans(letters);
        let mut factors = Vec::new();
        let mut pos = 0;
        while pos < letters.len() {
            // the rest is invertible, so some cut point exists
            let end = (pos + 1..=letters.len())
                .find(|&end| right.accepts(pos, end) && left.accepts(pos, end))
                .expect("suffix of an invertible word past an invertible prefix is invertible");
            factors.push(Word::from(letters[pos..end].to_vec()));
            pos = end;
        }
        Ok(factors)
    }

    pub fn factorizations(&self) -> Vec<Vec<Word>> {
        self.sys
            .relators()
            .iter()
            .map(|u| {
                self.minimal_factorization(u)
                    .expect("relators equal 1 and are therefore invertible")
            })
            .collect()
    }

    pub fn lambda_set(&self) -> BTreeSet<Word> {
        self.factorizations().into_iter().flatten().collect()
    }

    /// Minimal words `δ` with `|δ| ≤ |λ|` and `δ = λ` for some `λ ∈ lambda`.
    ///
    /// Scans every word up to the longest `λ`, skipping only extensions that
    /// cannot be invertible (a prefix that is not right invertible) or cannot be
    /// minimal (a proper prefix that is already invertible).
    pub fn delta_set(&self, lambda: &BTreeSet<Word>, limits: &Limits) -> Result<BTreeSet<Word>> {
        let maxlen = lambda.iter().map(Word::len).max().unwrap_or(0);
        let cap = limits.enumeration;
        let width = self.sys.alphabet().len();
        if candidate_count(width, maxlen) > cap as u128 {
            return Err(Error::budget("enumerating candidates for Δ", cap));
        }
        // normal form of each λ with the longest λ of that class
        let mut targets: HashMap<Word, usize> = HashMap::new();
        for l in lambda {
            let e = targets.entry(normal_form(self.sys, l)).or_insert(0);
            *e = (*e).max(l.len());
        }
        let mut out = BTreeSet::new();
        let mut stack: Vec<Vec<Letter>> = vec![Vec::new()];
        while let Some(prefix) = stack.pop() {
            if prefix.len() == maxlen {
                continue;
            }
            for l in (0..width as Letter).rev() {
                let mut w = prefix.clone();
                w.push(l);
                if !self.right_invertible(&w) {
                    continue;
                }
                if self.left_invertible(&w) {
                    let word = Word::from(w);
                    let nf = normal_form(self.sys, &word);
                    if targets.get(&nf).is_some_and(|&len| word.len() <= len) {
                        out.insert(word);
                    }
                } else {
                    stack.push(w);
                }
            }
        }
        Ok(out)
    }

    /// Decides triviality of `U(M)` from Λ.
    pub fn generator_check(&self) -> UnitsReport {
        let factorizations = self.factorizations();
        let lambda: BTreeSet<Word> = factorizations.iter().flatten().cloned().collect();
        let witness = lambda
            .iter()
            .find(|l| !normal_form(self.sys, l).is_empty())
            .cloned();
        UnitsReport {
            verdict: match witness {
                None => Verdict::Trivial,
                Some(w) => Verdict::NonTrivial { witness: w },
            },
            certificate: Certificate::GeneratorCheck,
            lambda_set: lambda,
            delta_set: None,
            factorizations,
        }
    }
}

fn candidate_count(width: usize, maxlen: usize) -> u128 {
    let mut total: u128 = 0;
    let mut level: u128 = 1;
    for _ in 0..maxlen {
        level = level.saturating_mul(width as u128);
        total = total.saturating_add(level);
    }
    total
}

/// Exact (grammar) invertibility on confluent systems; bounded search otherwise.
pub fn invertibility(
    sys: &SpecialSystem,
    w: &Word,
    bound: Option<usize>,
    limits: &Limits,
) -> Result<Invertibility> {
    if is_confluent(sys, limits)? {
        return Ok(InvertibilityOracle::new_unchecked(sys).invertibility(w));
    }
    bounded_invertibility(sys, w, bound.unwrap_or(DEFAULT_SEARCH_BOUND), limits)
}

/// Searches for inverses of length at most `bound` on both sides.
///
/// A side is `Yes` when `w` is a prefix (suffix) of a relator or some `x` with
/// `|x| ≤ bound` makes `w·x` (`x·w`) erasable; it is `Unknown` otherwise. Sound
/// for every special system, since erasable words equal 1.
pub fn bounded_invertibility(
    sys: &SpecialSystem,
    w: &Word,
    bound: usize,
    limits: &Limits,
) -> Result<Invertibility> {
    let right_shortcut = w.is_empty() || sys.relators().iter().any(|u| w.is_prefix_of(u));
    let left_shortcut = w.is_empty() || sys.relators().iter().any(|u| w.is_suffix_of(u));
    if right_shortcut && left_shortcut {
        return Ok(Invertibility {
            right: Answer::Yes,
            left: Answer::Yes,
            method: Method::RelatorPrefix,
        });
    }
    let width = sys.alphabet().len();
    if candidate_count(width, bound) > limits.enumeration as u128 {
        return Err(Error::budget("searching for inverses", limits.enumeration));
    }
    let search = |right: bool| -> Result<bool> {
        let mut level = vec![Word::empty()];
        for _ in 0..=bound {
            for x in &level {
                let probe = if right { w.concat(x) } else { x.concat(w) };
                if erasable_oracle(sys, &probe, limits)? {
                    return Ok(true);
                }
            }
            level = extend_all(&level, width);
        }
        Ok(false)
    };
    let yes_or_unknown = |b: bool| if b { Answer::Yes } else { Answer::Unknown };
    let right = right_shortcut || search(true)?;
    let left = left_shortcut || search(false)?;
    Ok(Invertibility {
        right: yes_or_unknown(right),
        left: yes_or_unknown(left),
        method: Method::BoundedSearch,
    })
}

fn extend_all(level: &[Word], width: usize) -> Vec<Word> {
    let mut next = Vec::with_capacity(level.len() * width);
    for x in level {
        for l in 0..width as Letter {
            let mut v = x.letters().to_vec();
            v.push(l);
            next.push(Word::from(v));
        }
    }
    next
}

pub fn minimal_factorization(sys: &SpecialSystem, w: &Word, limits: &Limits) -> Result<Vec<Word>> {
    InvertibilityOracle::new(sys, limits)?.minimal_factorization(w)
}

pub fn lambda_set(sys: &SpecialSystem, limits: &Limits) -> Result<BTreeSet<Word>> {
    Ok(InvertibilityOracle::new(sys, limits)?.lambda_set())
}

pub fn delta_set(sys: &SpecialSystem, limits: &Limits) -> Result<BTreeSet<Word>> {
    let oracle = InvertibilityOracle::new(sys, limits)?;
    let lambda = oracle.lambda_set();
    oracle.delta_set(&lambda, limits)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Trivial,
    NonTrivial { witness: Word },
    Unknown,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Trivial => "trivial",
            Verdict::NonTrivial { .. } => "nontrivial",
            Verdict::Unknown => "unknown",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Certificate {
    /// No two relators overlap, which forces trivial units.
    OverlapFreeLemma,
    /// Every minimal factor of every relator was checked directly.
    GeneratorCheck,
    None,
}

impl Certificate {
    pub fn as_str(self) -> &'static str {
        match self {
            Certificate::OverlapFreeLemma => "overlap_free_lemma",
            Certificate::GeneratorCheck => "generator_check",
            Certificate::None => "none",
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitsReport {
    pub lambda_set: BTreeSet<Word>,
    /// `None` when Δ was not computed (non-confluent system or enumeration over budget).
    pub delta_set: Option<BTreeSet<Word>>,
    pub factorizations: Vec<Vec<Word>>,
    pub verdict: Verdict,
    pub certificate: Certificate,
}

impl UnitsReport {
    pub fn to_json(&self) -> Value {
        let words = |s: &BTreeSet<Word>| s.iter().map(Word::to_json).collect::<Vec<_>>();
        let witness = match &self.verdict {
            Verdict::NonTrivial { witness } => witness.to_json(),
            _ => Value::Null,
        };
        json!({
            "verdict": self.verdict.as_str(),
            "certificate": match self.certificate {
                Certificate::None => Value::Null,
                c => json!(c.as_str()),
            },
            "lambda": words(&self.lambda_set),
            "delta": self.delta_set.as_ref().map(words),
            "witness": witness,
            "factorizations": self
                .factorizations
                .iter()
                .map(|f| f.iter().map(Word::to_json).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }

    pub fn to_text(&self, sys: &SpecialSystem) -> String {
        let render_set = |s: &BTreeSet<Word>| {
            s.iter()
                .map(|w| sys.render(w))
                .collect::<Vec<_>>()
                .join(", ")
        };
        let mut out = String::new();
        let verdict = match &self.verdict {
            Verdict::NonTrivial { witness } => {
                format!("nontrivial (witness {})", sys.render(witness))
            }
            v => v.as_str().to_string(),
        };
        out.push_str(&format!("units: {verdict}\n"));
        out.push_str(&format!("certificate: {}\n", self.certificate));
        out.push_str(&format!("lambda: {{{}}}\n", render_set(&self.lambda_set)));
        match &self.delta_set {
            Some(d) => out.push_str(&format!("delta: {{{}}}\n", render_set(d))),
            None => out.push_str("delta: not computed\n"),
        }
        for (u, f) in sys.relators().iter().zip(&self.factorizations) {
            let parts: Vec<String> = f.iter().map(|w| sys.render(w)).collect();
            out.push_str(&format!(
                "factorization: {} = {}\n",
                sys.render(u),
                parts.join(" · ")
            ));
        }
        out
    }
}

/// Report for an overlap-free system, or `None` if some pair of relators overlaps.
///
/// Every relator is its own single minimal factor, Λ is the set of relators,
/// and every λ equals 1, so the group of units is trivial.
pub fn overlap_free_certificate(sys: &SpecialSystem) -> Option<UnitsReport> {
    if !is_overlap_free(sys) {
        return None;
    }
    Some(UnitsReport {
        lambda_set: sys.relators().iter().cloned().collect(),
        delta_set: None,
        factorizations: sys.relators().iter().map(|u| vec![u.clone()]).collect(),
        verdict: Verdict::Trivial,
        certificate: Certificate::OverlapFreeLemma,
    })
}

/// Runs the generator check regardless of overlap-freeness.
pub fn generator_check(sys: &SpecialSystem, limits: &Limits) -> Result<UnitsReport> {
    Ok(InvertibilityOracle::new(sys, limits)?.generator_check())
}

/// Decides whether `U(M)` is trivial: overlap-free fast path first, then the
/// generator check on confluent systems, `Unknown` otherwise.
///
/// Δ is filled in when its candidate enumeration fits the budget.
pub fn units_trivial(sys: &SpecialSystem, limits: &Limits) -> Result<UnitsReport> {
    let lemma = overlap_free_certificate(sys);
    if lemma.is_none() && !is_confluent(sys, limits)? {
        return Ok(UnitsReport {
            lambda_set: BTreeSet::new(),
            delta_set: None,
            factorizations: Vec::new(),
            verdict: Verdict::Unknown,
            certificate: Certificate::None,
        });
    }
    let mut oracle = None;
    let mut report = match lemma {
        Some(report) => {
            if cfg!(debug_assertions) {
                let check = oracle
                    .get_or_insert_with(|| InvertibilityOracle::new_unchecked(sys))
                    .generator_check();
                debug_assert_eq!(
                    check.verdict,
                    Verdict::Trivial,
                    "lemma contradicted on {sys}"
                );
            }
            report
        }
        None => oracle
            .get_or_insert_with(|| InvertibilityOracle::new_unchecked(sys))
            .generator_check(),
    };
    let maxlen = report.lambda_set.iter().map(Word::len).max().unwrap_or(0);
    if candidate_count(sys.alphabet().len(), maxlen) <= limits.enumeration as u128 {
        let oracle = oracle.get_or_insert_with(|| InvertibilityOracle::new_unchecked(sys));
        report.delta_set = Some(oracle.delta_set(&report.lambda_set, limits)?);
    }
    Ok(report)
}
