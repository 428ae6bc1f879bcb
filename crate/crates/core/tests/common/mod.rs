//! Naive reference implementations used as oracles.
//!
//! Everything here works on raw letter vectors with direct slice comparison,
//! sharing no code with the library beyond the word type.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use specmon::{Letter, SpecialSystem, Word};

pub fn rels(sys: &SpecialSystem) -> Vec<Vec<Letter>> {
    sys.relators()
        .iter()
        .map(|r| r.letters().to_vec())
        .collect()
}

/// Every `(position, rule)` where a relator occurs in `w`.
pub fn occurrences(rels: &[Vec<Letter>], w: &[Letter]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for p in 0..w.len() {
        for (i, r) in rels.iter().enumerate() {
            if w[p..].starts_with(r) {
                out.push((p, i));
            }
        }
    }
    out
}

fn delete(w: &[Letter], p: usize, len: usize) -> Vec<Letter> {
    let mut v = w[..p].to_vec();
    v.extend_from_slice(&w[p + len..]);
    v
}

pub fn is_irreducible(rels: &[Vec<Letter>], w: &[Letter]) -> bool {
    occurrences(rels, w).is_empty()
}

/// All words reachable from `w` by any sequence of deletions.
pub fn descendants(rels: &[Vec<Letter>], w: &[Letter]) -> HashSet<Vec<Letter>> {
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(w.to_vec());
    queue.push_back(w.to_vec());
    while let Some(v) = queue.pop_front() {
        for (p, i) in occurrences(rels, &v) {
            let d = delete(&v, p, rels[i].len());
            if seen.insert(d.clone()) {
                queue.push_back(d);
            }
        }
    }
    seen
}

pub fn irreducible_descendants(rels: &[Vec<Letter>], w: &[Letter]) -> BTreeSet<Vec<Letter>> {
    descendants(rels, w)
        .into_iter()
        .filter(|v| is_irreducible(rels, v))
        .collect()
}

/// Whether `w` can be rewritten to the empty word.
pub struct Erasable<'a> {
    rels: &'a [Vec<Letter>],
    memo: HashMap<Vec<Letter>, bool>,
}

impl<'a> Erasable<'a> {
    pub fn new(rels: &'a [Vec<Letter>]) -> Self {
        Erasable {
            rels,
            memo: HashMap::new(),
        }
    }

    pub fn check(&mut self, w: &[Letter]) -> bool {
        if w.is_empty() {
            return true;
        }
        if let Some(&b) = self.memo.get(w) {
            return b;
        }
        let mut result = false;
        for (p, i) in occurrences(self.rels, w) {
            let d = delete(w, p, self.rels[i].len());
            if self.check(&d) {
                result = true;
                break;
            }
        }
        self.memo.insert(w.to_vec(), result);
        result
    }
}

/// Overlaps as `(kind, left, right, offset)` from a direct scan of factors,
/// suffixes and prefixes.
pub fn brute_overlaps(rels: &[Vec<Letter>]) -> BTreeSet<(&'static str, usize, usize, usize)> {
    let mut out = BTreeSet::new();
    for (i, u) in rels.iter().enumerate() {
        for (j, v) in rels.iter().enumerate() {
            if v.len() <= u.len() {
                for p in 0..=u.len() - v.len() {
                    if &u[p..p + v.len()] == v.as_slice() && !(i == j && p == 0) {
                        out.insert(("inclusion", i, j, p));
                    }
                }
            }
            for s in 1..u.len().min(v.len()) {
                if u[u.len() - s..] == v[..s] {
                    out.insert(("suffix_prefix", i, j, u.len() - s));
                }
            }
        }
    }
    out
}

/// All words of length exactly `n` over `width` letters.
pub fn words_of_len(width: usize, n: usize) -> Vec<Vec<Letter>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..width as Letter).map(move |l| {
                    let mut v = w.clone();
                    v.push(l);
                    v
                })
            })
            .collect();
    }
    out
}

pub fn word(letters: Vec<Letter>) -> Word {
    Word::from(letters)
}
