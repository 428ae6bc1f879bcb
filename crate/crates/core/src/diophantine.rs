//! Systems of word equations over a special monoid and a bounded search for
//! solutions.
//!
//! Solvability of such systems is undecidable in general, so [`solve_bounded`]
//! is a semi-decision procedure: it either returns a verified solution, reports
//! that none exists up to the length bound, or, for the equations `w·x = 1`
//! and `x·w = 1`, proves unsatisfiability from invertibility of `w`.
//!
//! Equation files:
//!
//! ```text
//! vars: x y
//! eq: x a y = .
//! ```

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{At, Error, Location, Result};
use crate::presentation::{
    append_token, char_column, first_token_column, split_directive, strip_comment, tokens, Letter,
    SpecialSystem, Word, EMPTY_WORD_TOKEN,
};
use crate::rewrite::{irreducible_words, is_confluent, normal_form};
use crate::units::InvertibilityOracle;
use crate::Limits;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Token {
    Const(Letter),
    Var(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    pub lhs: Vec<Token>,
    pub rhs: Vec<Token>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquationSystem {
    variables: Vec<String>,
    equations: Vec<Equation>,
}

impl EquationSystem {
    pub fn new(variables: Vec<String>, equations: Vec<Equation>) -> Result<Self> {
        if equations.is_empty() {
            return Err(Error::syntax("a system needs at least one equation", None));
        }
        for (i, v) in variables.iter().enumerate() {
            if variables[..i].contains(v) {
                return Err(Error::syntax(
                    format!("variable `{v}` declared twice"),
                    None,
                ));
            }
        }
        for eq in &equations {
            for t in eq.lhs.iter().chain(&eq.rhs) {
                if let Token::Var(i) = *t {
                    if i >= variables.len() {
                        return Err(Error::UndeclaredVariable {
                            name: format!("#{i}"),
                            at: At(None),
                        });
                    }
                }
            }
        }
        Ok(EquationSystem {
            variables,
            equations,
        })
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn equations(&self) -> &[Equation] {
        &self.equations
    }

    pub fn render_side(&self, sys: &SpecialSystem, side: &[Token]) -> String {
        if side.is_empty() {
            return EMPTY_WORD_TOKEN.to_string();
        }
        side.iter()
            .map(|t| match *t {
                Token::Const(l) => sys.alphabet().name(l).to_string(),
                Token::Var(v) => self.variables[v].clone(),
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Parses an equation file against the alphabet of `sys`.
///
/// Tokens naming a declared variable are variables; every other token must be
/// a symbol, `.`, or (for single-character alphabets) a compact word.
pub fn parse_equations(sys: &SpecialSystem, text: &str) -> Result<EquationSystem> {
    let alphabet = sys.alphabet();
    let mut variables: Option<Vec<String>> = None;
    let mut eq_lines: Vec<(usize, &str)> = Vec::new();
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
                "expected `vars:` or `eq:` directive",
                Some(head),
            ));
        };
        match key {
            "vars" => {
                if variables.is_some() {
                    return Err(Error::syntax("second `vars:` line", Some(head)));
                }
                let mut names = Vec::new();
                for (col, tok) in tokens(rest) {
                    let at = Location {
                        line: line_no,
                        column: char_column(line, offset) + col,
                    };
                    if tok == EMPTY_WORD_TOKEN || tok == "=" || names.iter().any(|n| n == tok) {
                        return Err(Error::syntax(format!("invalid variable `{tok}`"), Some(at)));
                    }
                    names.push(tok.to_string());
                }
                variables = Some(names);
            }
            "eq" => eq_lines.push((line_no, line)),
            other => {
                return Err(Error::syntax(
                    format!("unknown directive `{other}`"),
                    Some(head),
                ))
            }
        }
    }
    let variables = variables.unwrap_or_default();
    let mut equations = Vec::new();
    for (line_no, line) in eq_lines {
        let (_, rest, offset) = split_directive(line).expect("checked above");
        let base = char_column(line, offset);
        let mut sides: Vec<Vec<Token>> = vec![Vec::new()];
        for (col, tok) in tokens(rest) {
            let at = Location {
                line: line_no,
                column: base + col,
            };
            if tok == "=" {
                if sides.len() == 2 {
                    return Err(Error::syntax("more than one `=`", Some(at)));
                }
                sides.push(Vec::new());
                continue;
            }
            let side = sides.last_mut().expect("nonempty");
            if let Some(v) = variables.iter().position(|v| v == tok) {
                side.push(Token::Var(v));
                continue;
            }
            let mut letters = Vec::new();
            append_token(alphabet, tok, Some(at), &mut letters)?;
            side.extend(letters.into_iter().map(Token::Const));
        }
        if sides.len() != 2 {
            return Err(Error::syntax(
                "equation needs exactly one `=`",
                Some(Location {
                    line: line_no,
                    column: first_token_column(line),
                }),
            ));
        }
        let rhs = sides.pop().expect("two sides");
        let lhs = sides.pop().expect("two sides");
        equations.push(Equation { lhs, rhs });
    }
    if equations.is_empty() {
        return Err(Error::syntax("no `eq:` lines", None));
    }
    EquationSystem::new(variables, equations)
}

/// Values for the variables of an equation system, by name.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Assignment(BTreeMap<String, Word>);

impl Assignment {
    pub fn new() -> Self {
        Assignment(BTreeMap::new())
    }

    pub fn with(mut self, var: &str, value: Word) -> Self {
        self.0.insert(var.to_string(), value);
        self
    }

    pub fn set(&mut self, var: &str, value: Word) {
        self.0.insert(var.to_string(), value);
    }

    pub fn get(&self, var: &str) -> Option<&Word> {
        self.0.get(var)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Word)> {
        self.0.iter()
    }

    pub fn to_json(&self) -> Value {
        Value::Object(
            self.0
                .iter()
                .map(|(k, v)| (k.clone(), v.to_json()))
                .collect(),
        )
    }

    pub fn to_text(&self, sys: &SpecialSystem) -> String {
        self.0
            .iter()
            .map(|(k, v)| format!("{k}={}", sys.render(v)))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

/// Replaces every variable of `side` by its value.
pub fn substitute(eqs: &EquationSystem, side: &[Token], asg: &Assignment) -> Result<Word> {
    let mut letters = Vec::new();
    for t in side {
        match *t {
            Token::Const(l) => letters.push(l),
            Token::Var(v) => {
                let name = &eqs.variables[v];
                let value = asg.get(name).ok_or_else(|| Error::UndeclaredVariable {
                    name: name.clone(),
                    at: At(None),
                })?;
                letters.extend_from_slice(value.letters());
            }
        }
    }
    Ok(Word::from(letters))
}

fn satisfies(sys: &SpecialSystem, eqs: &EquationSystem, asg: &Assignment) -> Result<bool> {
    for eq in &eqs.equations {
        let l = normal_form(sys, &substitute(eqs, &eq.lhs, asg)?);
        let r = normal_form(sys, &substitute(eqs, &eq.rhs, asg)?);
        if l != r {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `asg` solves every equation; equality is decided by normal forms.
pub fn check(
    sys: &SpecialSystem,
    eqs: &EquationSystem,
    asg: &Assignment,
    limits: &Limits,
) -> Result<bool> {
    if let Some((name, _)) = asg.iter().find(|(k, _)| !eqs.variables.contains(k)) {
        return Err(Error::UndeclaredVariable {
            name: name.clone(),
            at: At(None),
        });
    }
    if !is_confluent(sys, limits)? {
        return Err(Error::NotConfluent);
    }
    satisfies(sys, eqs, asg)
}

/// Proof that an equation of the form `w·x = 1` or `x·w = 1` has no solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UnsatCertificate {
    /// `w·x = 1` is unsolvable: `w` is not a prefix of any word equal to 1.
    NotRightInvertible(Word),
    /// `x·w = 1` is unsolvable: `w` is not a suffix of any word equal to 1.
    NotLeftInvertible(Word),
}

impl UnsatCertificate {
    pub fn render(&self, sys: &SpecialSystem) -> String {
        match self {
            UnsatCertificate::NotRightInvertible(w) => format!("{} ∉ Prefix(WP)", sys.render(w)),
            UnsatCertificate::NotLeftInvertible(w) => format!("{} ∉ Suffix(WP)", sys.render(w)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Solution(Assignment),
    NoSolutionWithinBound,
    Unsatisfiable(UnsatCertificate),
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Solution(_) => "solution",
            Status::NoSolutionWithinBound => "no_solution_within_bound",
            Status::Unsatisfiable(_) => "unsatisfiable",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOutcome {
    pub status: Status,
    /// Number of assignments examined.
    pub checked: u64,
}

impl SolveOutcome {
    pub fn to_json(&self, sys: &SpecialSystem) -> Value {
        let (assignment, certificate) = match &self.status {
            Status::Solution(a) => (a.to_json(), Value::Null),
            Status::Unsatisfiable(c) => (Value::Null, json!(c.render(sys))),
            Status::NoSolutionWithinBound => (Value::Null, Value::Null),
        };
        json!({
            "status": self.status.as_str(),
            "assignment": assignment,
            "checked": self.checked,
            "certificate": certificate,
        })
    }

    pub fn to_text(&self, sys: &SpecialSystem) -> String {
        match &self.status {
            Status::Solution(a) => {
                format!("solution: {}\nchecked: {}\n", a.to_text(sys), self.checked)
            }
            Status::NoSolutionWithinBound => {
                format!("no solution within bound\nchecked: {}\n", self.checked)
            }
            Status::Unsatisfiable(c) => format!("unsatisfiable: {}\n", c.render(sys)),
        }
    }
}

enum Pattern {
    /// `w·x = 1`
    RightInverse(Word),
    /// `x·w = 1`
    LeftInverse(Word),
}

/// Recognizes a single equation `w·x = c` or `x·w = c` with `c = 1` and `x`
/// occurring once.
fn invertibility_pattern(sys: &SpecialSystem, eqs: &EquationSystem) -> Option<Pattern> {
    let [eq] = eqs.equations.as_slice() else {
        return None;
    };
    let is_const = |side: &[Token]| side.iter().all(|t| matches!(t, Token::Const(_)));
    let consts = |side: &[Token]| -> Word {
        Word::from(
            side.iter()
                .filter_map(|t| match *t {
                    Token::Const(l) => Some(l),
                    Token::Var(_) => None,
                })
                .collect::<Vec<_>>(),
        )
    };
    let (var_side, const_side) = if is_const(&eq.rhs) {
        (&eq.lhs, &eq.rhs)
    } else if is_const(&eq.lhs) {
        (&eq.rhs, &eq.lhs)
    } else {
        return None;
    };
    if !normal_form(sys, &consts(const_side)).is_empty() {
        return None;
    }
    let var_positions: Vec<usize> = var_side
        .iter()
        .enumerate()
        .filter(|(_, t)| matches!(t, Token::Var(_)))
        .map(|(i, _)| i)
        .collect();
    match var_positions.as_slice() {
        [i] if *i + 1 == var_side.len() => Some(Pattern::RightInverse(consts(var_side))),
        [0] => Some(Pattern::LeftInverse(consts(var_side))),
        _ => None,
    }
}

/// Bounded search with exact unsatisfiability certificates for `w·x = 1` and `x·w = 1`.
pub fn solve_bounded(
    sys: &SpecialSystem,
    eqs: &EquationSystem,
    maxlen: usize,
    limits: &Limits,
) -> Result<SolveOutcome> {
    if !is_confluent(sys, limits)? {
        return Err(Error::NotConfluent);
    }
    if let Some(pattern) = invertibility_pattern(sys, eqs) {
        let oracle = InvertibilityOracle::new_unchecked(sys);
        let cert = match pattern {
            Pattern::RightInverse(w) if !oracle.right_invertible(w.letters()) => {
                Some(UnsatCertificate::NotRightInvertible(w))
            }
            Pattern::LeftInverse(w) if !oracle.left_invertible(w.letters()) => {
                Some(UnsatCertificate::NotLeftInvertible(w))
            }
            _ => None,
        };
        if let Some(cert) = cert {
            return Ok(SolveOutcome {
                status: Status::Unsatisfiable(cert),
                checked: 0,
            });
        }
    }
    search(sys, eqs, maxlen, limits)
}

/// Plain exhaustive search over irreducible assignments, without certificates.
///
/// Assignments are tried by total length, then by each variable's value in
/// shortlex order (first variable most significant); the first solution found
/// is therefore the least one in that order.
pub fn search_bounded(
    sys: &SpecialSystem,
    eqs: &EquationSystem,
    maxlen: usize,
    limits: &Limits,
) -> Result<SolveOutcome> {
    if !is_confluent(sys, limits)? {
        return Err(Error::NotConfluent);
    }
    search(sys, eqs, maxlen, limits)
}

fn search(
    sys: &SpecialSystem,
    eqs: &EquationSystem,
    maxlen: usize,
    limits: &Limits,
) -> Result<SolveOutcome> {
    let candidates = irreducible_words(sys, maxlen, limits.enumeration)?;
    let k = eqs.variables.len();
    let total = (candidates.len() as u128).saturating_pow(k as u32);
    if total > limits.assignments as u128 {
        return Err(Error::budget("searching assignments", limits.assignments));
    }
    let mut by_len: Vec<Vec<Word>> = vec![Vec::new(); maxlen + 1];
    for w in candidates {
        by_len[w.len()].push(w);
    }
    let mut walker = Walker {
        sys,
        eqs,
        by_len: &by_len,
        maxlen,
        asg: Assignment::new(),
        checked: 0,
    };
    for budget in 0..=k * maxlen {
        if walker.assign(0, budget)? {
            return Ok(SolveOutcome {
                status: Status::Solution(walker.asg),
                checked: walker.checked,
            });
        }
    }
    Ok(SolveOutcome {
        status: Status::NoSolutionWithinBound,
        checked: walker.checked,
    })
}

struct Walker<'a> {
    sys: &'a SpecialSystem,
    eqs: &'a EquationSystem,
    by_len: &'a [Vec<Word>],
    maxlen: usize,
    asg: Assignment,
    checked: u64,
}

impl Walker<'_> {
    /// Assigns variables `var..` with lengths summing to exactly `remaining`.
    fn assign(&mut self, var: usize, remaining: usize) -> Result<bool> {
        let k = self.eqs.variables.len();
        if var == k {
            if remaining != 0 {
                return Ok(false);
            }
            self.checked += 1;
            return satisfies(self.sys, self.eqs, &self.asg);
        }
        let rest_capacity = (k - var - 1) * self.maxlen;
        let lo = remaining.saturating_sub(rest_capacity);
        let hi = remaining.min(self.maxlen);
        let name = self.eqs.variables[var].clone();
        for len in lo..=hi {
            for w in &self.by_len[len] {
                self.asg.set(&name, w.clone());
                if self.assign(var + 1, remaining - len)? {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}
