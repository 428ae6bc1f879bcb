//! Context-free grammar of the word problem `{w : w = 1}` and the grammar
//! machinery around it.
//!
//! For a special system the erasable words `{w : w →* 1}` are generated by
//!
//! ```text
//! S -> .  |  S S  |  a_1 S a_2 S … S a_k     (one production per relator a_1…a_k)
//! ```
//!
//! and for confluent systems the erasable words are exactly the word problem.
//! Membership goes through Chomsky normal form and CYK. The prefix and suffix
//! closures answer right and left invertibility. [`erasable_oracle`] decides
//! erasability by brute-force rewriting and shares no code with the grammar
//! side, so the two can be checked against each other.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::presentation::{Alphabet, Letter, SpecialSystem, Word};
use crate::rewrite;
use crate::Limits;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Terminal(Letter),
    Nonterminal(usize),
}

use Symbol::{Nonterminal as N, Terminal as T};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Production {
    pub lhs: usize,
    pub rhs: Vec<Symbol>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grammar {
    terminals: Alphabet,
    nonterminals: Vec<String>,
    start: usize,
    productions: Vec<Production>,
}

impl Grammar {
    pub fn new(
        terminals: Alphabet,
        nonterminals: Vec<String>,
        start: usize,
        productions: Vec<Production>,
    ) -> Result<Self> {
        if start >= nonterminals.len() {
            return Err(Error::syntax(
                "start symbol is not a declared nonterminal",
                None,
            ));
        }
        for p in &productions {
            let ok_lhs = p.lhs < nonterminals.len();
            let ok_rhs = p.rhs.iter().all(|s| match *s {
                T(l) => (l as usize) < terminals.len(),
                N(n) => n < nonterminals.len(),
            });
            if !ok_lhs || !ok_rhs {
                return Err(Error::syntax("production uses an undeclared symbol", None));
            }
        }
        Ok(Grammar {
            terminals,
            nonterminals,
            start,
            productions,
        })
    }

    pub fn terminals(&self) -> &Alphabet {
        &self.terminals
    }

    pub fn nonterminals(&self) -> &[String] {
        &self.nonterminals
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn productions(&self) -> &[Production] {
        &self.productions
    }

    /// Chomsky normal form check: `A -> B C`, `A -> a`, or `S -> .` for the start
    /// symbol, which then never appears on a right-hand side.
    pub fn is_cnf(&self) -> bool {
        let start_on_rhs = self
            .productions
            .iter()
            .any(|p| p.rhs.contains(&N(self.start)));
        self.productions.iter().all(|p| match p.rhs.as_slice() {
            [] => p.lhs == self.start && !start_on_rhs,
            [T(_)] => true,
            [N(_), N(_)] => true,
            _ => false,
        })
    }

    fn symbol_name(&self, s: Symbol) -> &str {
        match s {
            T(l) => self.terminals.name(l),
            N(n) => &self.nonterminals[n],
        }
    }

    /// One production per line: `S -> a S b`, with `.` for an empty body.
    /// Productions of the start symbol come first.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let (first, rest): (Vec<_>, Vec<_>) =
            self.productions.iter().partition(|p| p.lhs == self.start);
        for p in first.into_iter().chain(rest) {
            out.push_str(&self.nonterminals[p.lhs]);
            out.push_str(" ->");
            if p.rhs.is_empty() {
                out.push_str(" .");
            }
            for &s in &p.rhs {
                out.push(' ');
                out.push_str(self.symbol_name(s));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let prods: Vec<Value> = self
            .productions
            .iter()
            .map(|p| {
                let rhs: Vec<Value> = p
                    .rhs
                    .iter()
                    .map(|s| match *s {
                        T(l) => json!({ "terminal": l }),
                        N(n) => json!({ "nonterminal": n }),
                    })
                    .collect();
                json!({ "lhs": p.lhs, "rhs": rhs })
            })
            .collect();
        json!({
            "terminals": self.terminals.symbols(),
            "nonterminals": self.nonterminals,
            "start": self.start,
            "productions": prods,
        })
    }
}

impl fmt::Display for Grammar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// `S -> . | S S | a_1 S a_2 … S a_k` for every relator.
pub fn wp_grammar(sys: &SpecialSystem) -> Grammar {
    let mut productions = vec![
        Production {
            lhs: 0,
            rhs: vec![],
        },
        Production {
            lhs: 0,
            rhs: vec![N(0), N(0)],
        },
    ];
    for r in sys.relators() {
        let mut rhs = Vec::with_capacity(2 * r.len() - 1);
        for (i, &l) in r.letters().iter().enumerate() {
            if i > 0 {
                rhs.push(N(0));
            }
            rhs.push(T(l));
        }
        productions.push(Production { lhs: 0, rhs });
    }
    Grammar {
        terminals: sys.alphabet().clone(),
        nonterminals: vec!["S".to_string()],
        start: 0,
        productions,
    }
}

/// The word-problem grammar together with whether its language is exactly the
/// word problem (true for confluent systems) or only the erasable words.
#[derive(Debug, Clone)]
pub struct WordProblemGrammar {
    pub grammar: Grammar,
    pub confluent: bool,
}

impl WordProblemGrammar {
    pub fn warning(&self) -> Option<&'static str> {
        (!self.confluent).then_some(
            "system is not confluent: the grammar generates the erasable words, \
             which may be a proper subset of the word problem",
        )
    }
}

pub fn word_problem_grammar(sys: &SpecialSystem, limits: &Limits) -> Result<WordProblemGrammar> {
    Ok(WordProblemGrammar {
        grammar: wp_grammar(sys),
        confluent: rewrite::is_confluent(sys, limits)?,
    })
}

/// Names in use, plus the next suffix to try for each base name.
#[derive(Default)]
struct Taken {
    names: HashSet<String>,
    next: HashMap<String, usize>,
}

impl Taken {
    fn of(names: &[String]) -> Self {
        Taken {
            names: names.iter().cloned().collect(),
            next: HashMap::new(),
        }
    }
}

fn fresh_name(names: &mut Vec<String>, taken: &mut Taken, base: &str) -> usize {
    let mut name = base.to_string();
    if taken.names.contains(&name) {
        let k = taken.next.entry(base.to_string()).or_insert(1);
        loop {
            name = format!("{base}{k}");
            *k += 1;
            if !taken.names.contains(&name) {
                break;
            }
        }
    }
    taken.names.insert(name.clone());
    names.push(name);
    names.len() - 1
}

/// Converts to Chomsky normal form: fresh start symbol, terminals lifted out of
/// long bodies, binarization, ε-elimination, unit elimination, then removal of
/// useless nonterminals.
pub fn to_cnf(g: &Grammar) -> Grammar {
    let mut names = g.nonterminals.clone();
    let mut taken = Taken::of(&names);
    let mut prods: Vec<(usize, Vec<Symbol>)> = g
        .productions
        .iter()
        .map(|p| (p.lhs, p.rhs.clone()))
        .collect();

    let start = fresh_name(
        &mut names,
        &mut taken,
        &format!("{}0", g.nonterminals[g.start]),
    );
    prods.push((start, vec![N(g.start)]));

    // terminals inside bodies of length >= 2
    let mut lifted: HashMap<Letter, usize> = HashMap::new();
    let mut extra = Vec::new();
    for (_, rhs) in prods.iter_mut() {
        if rhs.len() < 2 {
            continue;
        }
        for s in rhs.iter_mut() {
            if let T(l) = *s {
                let nt = *lifted.entry(l).or_insert_with(|| {
                    let base = format!("T_{}", g.terminals.name(l));
                    let nt = fresh_name(&mut names, &mut taken, &base);
                    extra.push((nt, vec![T(l)]));
                    nt
                });
                *s = N(nt);
            }
        }
    }
    prods.extend(extra);

    // binarize
    let mut binary: Vec<(usize, Vec<Symbol>)> = Vec::with_capacity(prods.len());
    for (lhs, rhs) in prods {
        if rhs.len() <= 2 {
            binary.push((lhs, rhs));
            continue;
        }
        let base = names[lhs].clone();
        let mut head = lhs;
        for (i, &sym) in rhs[..rhs.len() - 2].iter().enumerate() {
            let next = fresh_name(&mut names, &mut taken, &format!("{base}_{}", i + 1));
            binary.push((head, vec![sym, N(next)]));
            head = next;
        }
        binary.push((head, rhs[rhs.len() - 2..].to_vec()));
    }

    // ε-elimination
    let n = names.len();
    let mut nullable = vec![false; n];
    loop {
        let mut changed = false;
        for (lhs, rhs) in &binary {
            if !nullable[*lhs] && rhs.iter().all(|s| matches!(*s, N(x) if nullable[x])) {
                nullable[*lhs] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let is_nullable = |s: Symbol| matches!(s, N(x) if nullable[x]);
    let mut no_eps: HashSet<(usize, Vec<Symbol>)> = HashSet::new();
    for (lhs, rhs) in &binary {
        match rhs.as_slice() {
            [] => {}
            [x] => {
                no_eps.insert((*lhs, vec![*x]));
            }
            [x, y] => {
                no_eps.insert((*lhs, vec![*x, *y]));
                if is_nullable(*x) {
                    no_eps.insert((*lhs, vec![*y]));
                }
                if is_nullable(*y) {
                    no_eps.insert((*lhs, vec![*x]));
                }
            }
            _ => unreachable!("bodies are binarized"),
        }
    }

    // unit elimination
    let mut unit_edges: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut proper: Vec<Vec<Vec<Symbol>>> = vec![Vec::new(); n];
    let mut sorted: Vec<(usize, Vec<Symbol>)> = no_eps.into_iter().collect();
    sorted.sort();
    for (lhs, rhs) in sorted {
        match rhs.as_slice() {
            [N(b)] => {
                if *b != lhs {
                    unit_edges[lhs].push(*b);
                }
            }
            _ => proper[lhs].push(rhs),
        }
    }
    let mut out: Vec<(usize, Vec<Symbol>)> = Vec::new();
    let mut out_seen: HashSet<(usize, Vec<Symbol>)> = HashSet::new();
    if nullable[start] {
        out_seen.insert((start, vec![]));
        out.push((start, vec![]));
    }
    // reach[c] == a + 1 marks c as unit-reachable from a
    let mut reach = vec![0usize; n];
    for a in 0..n {
        let mut queue = VecDeque::from([a]);
        reach[a] = a + 1;
        while let Some(b) = queue.pop_front() {
            for body in &proper[b] {
                if out_seen.insert((a, body.clone())) {
                    out.push((a, body.clone()));
                }
            }
            for &c in &unit_edges[b] {
                if reach[c] != a + 1 {
                    reach[c] = a + 1;
                    queue.push_back(c);
                }
            }
        }
    }

    let cnf = Grammar {
        terminals: g.terminals.clone(),
        nonterminals: names,
        start,
        productions: out
            .into_iter()
            .map(|(lhs, rhs)| Production { lhs, rhs })
            .collect(),
    };
    remove_useless(&cnf)
}

fn productive_set(g: &Grammar) -> Vec<bool> {
    let mut productive = vec![false; g.nonterminals.len()];
    loop {
        let mut changed = false;
        for p in &g.productions {
            if !productive[p.lhs]
                && p.rhs.iter().all(|s| match *s {
                    T(_) => true,
                    N(x) => productive[x],
                })
            {
                productive[p.lhs] = true;
                changed = true;
            }
        }
        if !changed {
            return productive;
        }
    }
}

/// Drops non-productive and unreachable nonterminals, renumbering the rest.
/// The start symbol is always kept.
pub fn remove_useless(g: &Grammar) -> Grammar {
    let productive = productive_set(g);
    let useful_prod = |p: &Production| {
        productive[p.lhs]
            && p.rhs.iter().all(|s| match *s {
                T(_) => true,
                N(x) => productive[x],
            })
    };
    let n = g.nonterminals.len();
    let mut reach = vec![false; n];
    reach[g.start] = true;
    let mut queue = VecDeque::from([g.start]);
    let mut by_lhs: Vec<Vec<&Production>> = vec![Vec::new(); n];
    for p in g.productions.iter().filter(|p| useful_prod(p)) {
        by_lhs[p.lhs].push(p);
    }
    while let Some(a) = queue.pop_front() {
        for p in &by_lhs[a] {
            for s in &p.rhs {
                if let N(x) = *s {
                    if !reach[x] {
                        reach[x] = true;
                        queue.push_back(x);
                    }
                }
            }
        }
    }
    let mut renumber = vec![usize::MAX; n];
    let mut names = Vec::new();
    for a in 0..n {
        if reach[a] {
            renumber[a] = names.len();
            names.push(g.nonterminals[a].clone());
        }
    }
    let productions = g
        .productions
        .iter()
        .filter(|p| reach[p.lhs] && useful_prod(p))
        .map(|p| Production {
            lhs: renumber[p.lhs],
            rhs: p
                .rhs
                .iter()
                .map(|s| match *s {
                    T(l) => T(l),
                    N(x) => N(renumber[x]),
                })
                .collect(),
        })
        .collect();
    Grammar {
        terminals: g.terminals.clone(),
        nonterminals: names,
        start: renumber[g.start],
        productions,
    }
}

/// Prefix or suffix closure, sharing the nonterminal-doubling construction.
fn closure(g: &Grammar, suffix: bool) -> Grammar {
    let g = remove_useless(g);
    let productive = productive_set(&g);
    let n = g.nonterminals.len();
    let mut names = g.nonterminals.clone();
    let mut taken = Taken::of(&names);
    let tag = if suffix { "suf" } else { "pre" };
    let primed: Vec<usize> = (0..n)
        .map(|a| {
            let base = format!("{}_{tag}", g.nonterminals[a]);
            fresh_name(&mut names, &mut taken, &base)
        })
        .collect();
    let mut productions = g.productions.clone();
    for a in (0..n).filter(|&a| productive[a]) {
        productions.push(Production {
            lhs: primed[a],
            rhs: vec![],
        });
    }
    let lift = |s: Symbol| match s {
        T(l) => T(l),
        N(x) => N(primed[x]),
    };
    for p in &g.productions {
        let k = p.rhs.len();
        for i in 0..k {
            let rhs = if suffix {
                // Y_i X_{i+1} … X_k
                std::iter::once(lift(p.rhs[i]))
                    .chain(p.rhs[i + 1..].iter().copied())
                    .collect()
            } else {
                // X_1 … X_{i-1} Y_i
                p.rhs[..i]
                    .iter()
                    .copied()
                    .chain(std::iter::once(lift(p.rhs[i])))
                    .collect()
            };
            productions.push(Production {
                lhs: primed[p.lhs],
                rhs,
            });
        }
    }
    remove_useless(&Grammar {
        terminals: g.terminals.clone(),
        nonterminals: names,
        start: primed[g.start],
        productions,
    })
}

/// Grammar for `{p : p·x ∈ L(g) for some x}`.
pub fn prefix_closure(g: &Grammar) -> Grammar {
    closure(g, false)
}

/// Grammar for `{s : x·s ∈ L(g) for some x}`.
pub fn suffix_closure(g: &Grammar) -> Grammar {
    closure(g, true)
}

/// CYK recognizer over the CNF of a grammar; build once, query many times.
#[derive(Debug, Clone)]
pub struct Cyk {
    nonterminals: usize,
    start: usize,
    accepts_empty: bool,
    by_letter: Vec<Vec<usize>>,
    /// for each B: the rules A -> B C as (C, A)
    by_left: Vec<Vec<(usize, usize)>>,
    cnf_productions: usize,
}

impl Cyk {
    pub fn new(g: &Grammar) -> Self {
        Self::from_cnf(&to_cnf(g))
    }

    pub fn from_cnf(cnf: &Grammar) -> Self {
        debug_assert!(cnf.is_cnf());
        let n = cnf.nonterminals.len();
        let mut by_letter = vec![Vec::new(); cnf.terminals.len()];
        let mut by_left = vec![Vec::new(); n];
        let mut accepts_empty = false;
        for p in &cnf.productions {
            match p.rhs.as_slice() {
                [] => accepts_empty = true,
                [T(l)] => by_letter[*l as usize].push(p.lhs),
                [N(b), N(c)] => by_left[*b].push((*c, p.lhs)),
                _ => panic!("grammar is not in Chomsky normal form"),
            }
        }
        Cyk {
            nonterminals: n,
            start: cnf.start,
            accepts_empty,
            by_letter,
            by_left,
            cnf_productions: cnf.productions.len(),
        }
    }

    pub fn cnf_size(&self) -> (usize, usize) {
        (self.nonterminals, self.cnf_productions)
    }

    pub fn accepts(&self, w: &Word) -> bool {
        self.accepts_letters(w.letters())
    }

    pub fn accepts_letters(&self, w: &[Letter]) -> bool {
        self.spans(w).accepts(0, w.len())
    }

    /// One CYK table for `w`, answering membership of every factor `w[i..j]`.
    pub fn spans(&self, w: &[Letter]) -> Spans {
        let len = w.len();
        let words = self.nonterminals.div_ceil(64).max(1);
        let mut spans = Spans {
            len,
            words,
            start: self.start,
            accepts_empty: self.accepts_empty,
            table: Vec::new(),
        };
        if len == 0 {
            return spans;
        }
        // cell(l, i): span of length l starting at i
        let idx = |l: usize, i: usize| ((l - 1) * len + i) * words;
        let mut table = vec![0u64; len * len * words];
        for (i, &letter) in w.iter().enumerate() {
            // letters outside the alphabet leave their cells empty
            let Some(heads) = self.by_letter.get(letter as usize) else {
                continue;
            };
            let base = idx(1, i);
            for &a in heads {
                table[base + a / 64] |= 1 << (a % 64);
            }
        }
        let mut cell = vec![0u64; words];
        for l in 2..=len {
            for i in 0..=len - l {
                cell.iter_mut().for_each(|x| *x = 0);
                for k in 1..l {
                    let left = idx(k, i);
                    let right = idx(l - k, i + k);
                    for wi in 0..words {
                        let mut bits = table[left + wi];
                        while bits != 0 {
                            let b = wi * 64 + bits.trailing_zeros() as usize;
                            bits &= bits - 1;
                            for &(c, a) in &self.by_left[b] {
                                if table[right + c / 64] >> (c % 64) & 1 == 1 {
                                    cell[a / 64] |= 1 << (a % 64);
                                }
                            }
                        }
                    }
                }
                let base = idx(l, i);
                table[base..base + words].copy_from_slice(&cell);
            }
        }
        spans.table = table;
        spans
    }
}

/// Filled CYK table of one word; see [`Cyk::spans`].
#[derive(Debug, Clone)]
pub struct Spans {
    len: usize,
    words: usize,
    start: usize,
    accepts_empty: bool,
    table: Vec<u64>,
}

impl Spans {
    /// Whether the factor `w[i..j]` is in the language.
    pub fn accepts(&self, i: usize, j: usize) -> bool {
        assert!(i <= j && j <= self.len);
        if i == j {
            return self.accepts_empty;
        }
        let base = ((j - i - 1) * self.len + i) * self.words;
        self.table[base + self.start / 64] >> (self.start % 64) & 1 == 1
    }
}

/// CYK membership. Builds the CNF on every call; use [`Cyk`] for repeated queries.
pub fn member(g: &Grammar, w: &Word) -> bool {
    Cyk::new(g).accepts(w)
}

/// All words of length at most `maxlen` generated by `g`, in shortlex order.
///
/// Works directly on the given productions by least fixpoint, without going
/// through CNF.
pub fn enumerate(g: &Grammar, maxlen: usize, cap: usize) -> Result<BTreeSet<Word>> {
    let n = g.nonterminals.len();
    let mut sets: Vec<HashSet<Word>> = vec![HashSet::new(); n];
    let mut total = 0usize;
    loop {
        let mut changed = false;
        for p in &g.productions {
            let mut partial: HashSet<Word> = HashSet::from([Word::empty()]);
            for &s in &p.rhs {
                let mut next = HashSet::new();
                match s {
                    T(l) => {
                        for w in &partial {
                            if w.len() < maxlen {
                                next.insert(w.concat(&Word::from(vec![l])));
                            }
                        }
                    }
                    N(x) => {
                        for w in &partial {
                            for v in &sets[x] {
                                if w.len() + v.len() <= maxlen {
                                    next.insert(w.concat(v));
                                }
                            }
                        }
                    }
                }
                if next.len() > cap {
                    return Err(Error::budget("enumerating a grammar", cap));
                }
                partial = next;
                if partial.is_empty() {
                    break;
                }
            }
            for w in partial {
                if sets[p.lhs].insert(w) {
                    changed = true;
                    total += 1;
                    if total > cap {
                        return Err(Error::budget("enumerating a grammar", cap));
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    Ok(std::mem::take(&mut sets[g.start]).into_iter().collect())
}

/// Whether `w →* 1`, by exhaustive search over all rewrite sequences.
///
/// Occurrences are found by direct comparison against every relator, not by
/// the automaton the rest of the crate uses.
pub fn erasable_oracle(sys: &SpecialSystem, w: &Word, limits: &Limits) -> Result<bool> {
    let cap = limits.descendants;
    let mut dead: HashSet<Vec<Letter>> = HashSet::new();
    let mut stack: Vec<Vec<Letter>> = vec![w.letters().to_vec()];
    while let Some(v) = stack.pop() {
        if v.is_empty() {
            return Ok(true);
        }
        if !dead.insert(v.clone()) {
            continue;
        }
        if dead.len() > cap {
            return Err(Error::budget("searching for an erasing sequence", cap));
        }
        for r in sys.relators() {
            let r = r.letters();
            if r.len() > v.len() {
                continue;
            }
            for s in 0..=v.len() - r.len() {
                if &v[s..s + r.len()] == r {
                    let mut next = Vec::with_capacity(v.len() - r.len());
                    next.extend_from_slice(&v[..s]);
                    next.extend_from_slice(&v[s + r.len()..]);
                    if !dead.contains(&next) {
                        stack.push(next);
                    }
                }
            }
        }
    }
    Ok(false)
}

/// Recognizers for the word-problem language and its two closures.
#[derive(Debug, Clone)]
pub struct WpRecognizers {
    pub language: Cyk,
    pub prefixes: Cyk,
    pub suffixes: Cyk,
}

impl WpRecognizers {
    pub fn new(sys: &SpecialSystem) -> Self {
        let g = wp_grammar(sys);
        WpRecognizers {
            language: Cyk::new(&g),
            prefixes: Cyk::new(&prefix_closure(&g)),
            suffixes: Cyk::new(&suffix_closure(&g)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(alpha: &[&str], rels: &[&str]) -> SpecialSystem {
        SpecialSystem::from_strs(alpha, rels).unwrap()
    }

    fn words(s: &SpecialSystem, ws: &[&str]) -> BTreeSet<Word> {
        ws.iter().map(|w| s.alphabet().word(w)).collect()
    }

    fn all_words(n_letters: u32, maxlen: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        let mut level = vec![Word::empty()];
        for _ in 0..maxlen {
            let mut next = Vec::new();
            for w in &level {
                for l in 0..n_letters {
                    next.push(w.concat(&Word::from(vec![l])));
                }
            }
            out.extend(next.iter().cloned());
            level = next;
        }
        out
    }

    #[test]
    fn grammar_text() {
        assert_eq!(
            wp_grammar(&sys(&["a", "b"], &["ab"])).to_text(),
            "S -> .\nS -> S S\nS -> a S b\n"
        );
        assert_eq!(
            wp_grammar(&sys(&["a"], &["aa"])).to_text(),
            "S -> .\nS -> S S\nS -> a S a\n"
        );
        assert_eq!(
            wp_grammar(&sys(&["a", "b"], &["ab", "ba"])).to_text(),
            "S -> .\nS -> S S\nS -> a S b\nS -> b S a\n"
        );
    }

    #[test]
    fn grammar_rejects_undeclared_symbols() {
        let a = Alphabet::new(["a"]).unwrap();
        let bad = Grammar::new(
            a.clone(),
            vec!["S".into()],
            0,
            vec![Production {
                lhs: 0,
                rhs: vec![N(3)],
            }],
        );
        assert!(bad.is_err());
        assert!(Grammar::new(a, vec!["S".into()], 1, vec![]).is_err());
    }

    #[test]
    fn erasable_examples() {
        let l = Limits::default();
        let b = sys(&["a", "b"], &["ab"]);
        assert!(erasable_oracle(&b, &b.alphabet().word("aabb"), &l).unwrap());
        assert!(!erasable_oracle(&b, &b.alphabet().word("ba"), &l).unwrap());
        assert!(erasable_oracle(&b, &Word::empty(), &l).unwrap());
    }

    #[test]
    fn cnf_preserves_language() {
        for s in [
            sys(&["a", "b"], &["ab"]),
            sys(&["a"], &["aa"]),
            sys(&["a", "b"], &["ab", "ba"]),
            sys(&["a", "b", "c"], &["abc", "cb"]),
        ] {
            let g = wp_grammar(&s);
            let cnf = to_cnf(&g);
            assert!(cnf.is_cnf(), "{cnf}");
            assert_eq!(
                enumerate(&g, 6, 1_000_000).unwrap(),
                enumerate(&cnf, 6, 1_000_000).unwrap(),
                "{s}"
            );
        }
    }

    #[test]
    fn cnf_spot_checks() {
        let b = sys(&["a", "b"], &["ab"]);
        let cnf = to_cnf(&wp_grammar(&b));
        let e = enumerate(&cnf, 4, 1000).unwrap();
        assert!(e.contains(&b.alphabet().word("aabb")));
        assert!(!e.contains(&b.alphabet().word("ba")));
        let z2 = sys(&["a"], &["aa"]);
        let cnf = to_cnf(&wp_grammar(&z2));
        let e = enumerate(&cnf, 6, 1000).unwrap();
        assert!(e.contains(&z2.alphabet().word("aa")));
        assert!(e.contains(&z2.alphabet().word("aaaa")));
        assert!(!e.contains(&z2.alphabet().word("a")));
    }

    #[test]
    fn cnf_of_epsilon_only() {
        let a = Alphabet::new(["a"]).unwrap();
        let g = Grammar::new(
            a,
            vec!["S".into()],
            0,
            vec![Production {
                lhs: 0,
                rhs: vec![],
            }],
        )
        .unwrap();
        let cnf = to_cnf(&g);
        assert!(cnf.is_cnf());
        assert_eq!(cnf.productions().len(), 1);
        assert!(cnf.productions()[0].rhs.is_empty());
        assert_eq!(cnf.productions()[0].lhs, cnf.start());
        assert_eq!(
            enumerate(&cnf, 3, 10).unwrap(),
            BTreeSet::from([Word::empty()])
        );
    }

    #[test]
    fn membership_examples() {
        let b = sys(&["a", "b"], &["ab"]);
        let g = wp_grammar(&b);
        assert!(member(&g, &b.alphabet().word("ab")));
        assert!(!member(&g, &b.alphabet().word("b")));
        assert!(member(&g, &b.alphabet().word("abab")));
        assert!(member(&g, &Word::empty()));
    }

    #[test]
    fn enumerate_examples() {
        let b = sys(&["a", "b"], &["ab"]);
        assert_eq!(
            enumerate(&wp_grammar(&b), 4, 1000).unwrap(),
            words(&b, &[".", "ab", "aabb", "abab"])
        );
        assert_eq!(
            enumerate(&wp_grammar(&b), 0, 1000).unwrap(),
            words(&b, &["."])
        );
        let z2 = sys(&["a"], &["aa"]);
        assert_eq!(
            enumerate(&wp_grammar(&z2), 3, 1000).unwrap(),
            words(&z2, &[".", "aa"])
        );
        assert!(matches!(
            enumerate(&wp_grammar(&b), 12, 10),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn enumerate_matches_oracle_on_desk_systems() {
        let l = Limits::default();
        for s in [
            sys(&["a", "b"], &["ab"]),
            sys(&["a"], &["aa"]),
            sys(&["a", "b"], &["ab", "ba"]),
        ] {
            let expected: BTreeSet<Word> = all_words(s.alphabet().len() as u32, 6)
                .into_iter()
                .filter(|w| erasable_oracle(&s, w, &l).unwrap())
                .collect();
            assert_eq!(enumerate(&wp_grammar(&s), 6, 100_000).unwrap(), expected);
        }
    }

    #[test]
    fn closure_examples() {
        let b = sys(&["a", "b"], &["ab"]);
        let g = wp_grammar(&b);
        let pre = Cyk::new(&prefix_closure(&g));
        let suf = Cyk::new(&suffix_closure(&g));
        let w = |t: &str| b.alphabet().word(t);
        assert!(pre.accepts(&w("a")));
        assert!(pre.accepts(&w("aab")));
        assert!(!pre.accepts(&w("b")));
        assert!(suf.accepts(&w("b")));
        assert!(!suf.accepts(&w("a")));
        assert!(pre.accepts(&Word::empty()) && suf.accepts(&Word::empty()));
    }

    #[test]
    fn closure_of_epsilon_language() {
        let a = Alphabet::new(["a"]).unwrap();
        let g = Grammar::new(
            a,
            vec!["S".into()],
            0,
            vec![Production {
                lhs: 0,
                rhs: vec![],
            }],
        )
        .unwrap();
        let pre = prefix_closure(&g);
        assert_eq!(
            enumerate(&pre, 4, 100).unwrap(),
            BTreeSet::from([Word::empty()])
        );
        let suf = suffix_closure(&g);
        assert_eq!(
            enumerate(&suf, 4, 100).unwrap(),
            BTreeSet::from([Word::empty()])
        );
    }

    #[test]
    fn closure_of_empty_language() {
        let a = Alphabet::new(["a"]).unwrap();
        // S -> a S has no finite derivation
        let g = Grammar::new(
            a,
            vec!["S".into()],
            0,
            vec![Production {
                lhs: 0,
                rhs: vec![T(0), N(0)],
            }],
        )
        .unwrap();
        assert!(enumerate(&prefix_closure(&g), 4, 100).unwrap().is_empty());
        assert!(!Cyk::new(&prefix_closure(&g)).accepts(&Word::empty()));
    }

    #[test]
    fn prefix_closure_matches_enumeration() {
        // for these systems a prefix p extends into L within |p| * max relator length letters
        let maxlen = 3;
        for s in [
            sys(&["a", "b"], &["ab"]),
            sys(&["a", "b"], &["ab", "ba"]),
            sys(&["a", "b", "c"], &["abc", "cb"]),
        ] {
            let g = wp_grammar(&s);
            let lang = enumerate(&g, maxlen * s.max_relator_len(), 1_000_000).unwrap();
            let pre = Cyk::new(&prefix_closure(&g));
            let suf = Cyk::new(&suffix_closure(&g));
            for p in all_words(s.alphabet().len() as u32, maxlen) {
                let is_pre = lang.iter().any(|w| p.is_prefix_of(w));
                let is_suf = lang.iter().any(|w| p.is_suffix_of(w));
                assert_eq!(pre.accepts(&p), is_pre, "{s} prefix {}", s.render(&p));
                assert_eq!(suf.accepts(&p), is_suf, "{s} suffix {}", s.render(&p));
            }
        }
    }
}
