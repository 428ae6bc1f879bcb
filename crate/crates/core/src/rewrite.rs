//! The rewriting system `{u_i → 1}`: single steps, normal forms, overlaps,
//! critical pairs and confluence.
//!
//! Every rule deletes a nonempty factor, so rewriting always terminates and
//! local confluence (joinability of all critical pairs) is the same as
//! confluence.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::matcher::Matcher;
use crate::presentation::{Letter, SpecialSystem, Word};
use crate::Limits;

/// One rewriting step: the occurrence of relator `rule` at `position` was deleted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub word: Word,
    pub position: usize,
    pub rule: usize,
}

/// Deletes the leftmost relator occurrence (longest relator, then lowest index on ties).
pub fn rewrite_step(sys: &SpecialSystem, w: &Word) -> Option<Step> {
    let occ = sys.matcher().leftmost(w.letters(), 0)?;
    // relators are pairwise distinct, so (start, len) already pins the rule
    Some(Step {
        word: w.delete(occ.start, occ.len),
        position: occ.start,
        rule: occ.rule,
    })
}

pub fn is_irreducible(sys: &SpecialSystem, w: &Word) -> bool {
    !sys.matcher().contains_match(w.letters())
}

/// Normal form under the deterministic strategy of [`rewrite_step`].
pub fn normal_form(sys: &SpecialSystem, w: &Word) -> Word {
    normal_form_traced(sys, w).0
}

/// Like [`normal_form`], also returning the `(position, rule)` of every step.
pub fn normal_form_traced(sys: &SpecialSystem, w: &Word) -> (Word, Vec<(usize, usize)>) {
    let m = sys.matcher();
    let back = m.max_len().saturating_sub(1);
    let mut letters = w.letters().to_vec();
    let mut trace = Vec::new();
    let mut from = 0;
    while let Some(occ) = m.leftmost(&letters, from) {
        letters.drain(occ.start..occ.start + occ.len);
        trace.push((occ.start, occ.rule));
        // new occurrences must straddle the splice point
        from = occ.start.saturating_sub(back);
    }
    (Word::from(letters), trace)
}

/// All words reachable by exactly one step.
pub fn one_step_reducts(sys: &SpecialSystem, w: &Word) -> Vec<Word> {
    let mut out: Vec<Word> = sys
        .matcher()
        .all(w.letters())
        .into_iter()
        .map(|o| w.delete(o.start, o.len))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// `{v : w →* v}`, including `w` itself.
pub fn descendants(sys: &SpecialSystem, w: &Word, limits: &Limits) -> Result<HashSet<Word>> {
    let cap = limits.descendants;
    let mut seen: HashSet<Word> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(w.clone());
    queue.push_back(w.clone());
    while let Some(v) = queue.pop_front() {
        for r in one_step_reducts(sys, &v) {
            if seen.insert(r.clone()) {
                if seen.len() > cap {
                    return Err(Error::budget("computing descendants", cap));
                }
                queue.push_back(r);
            }
        }
    }
    Ok(seen)
}

/// Every irreducible word of length at most `maxlen`, in shortlex order.
///
/// Walks the occurrence automaton and never enters a state where a relator
/// ends, so each word is produced without being rewritten.
pub fn irreducible_words(sys: &SpecialSystem, maxlen: usize, cap: usize) -> Result<Vec<Word>> {
    let m = sys.matcher();
    let width = sys.alphabet().len() as Letter;
    let mut out = vec![Word::empty()];
    let mut level: Vec<(Vec<Letter>, u32)> = vec![(Vec::new(), Matcher::START)];
    for _ in 0..maxlen {
        let mut next = Vec::new();
        for (w, state) in &level {
            for l in 0..width {
                let t = m.next(*state, l);
                if m.is_match(t) {
                    continue;
                }
                let mut v = w.clone();
                v.push(l);
                next.push((v, t));
            }
        }
        if out.len() + next.len() > cap {
            return Err(Error::budget("enumerating irreducible words", cap));
        }
        out.extend(next.iter().map(|(v, _)| Word::from(v.clone())));
        level = next;
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OverlapKind {
    /// The right rule occurs strictly inside the left rule.
    Inclusion,
    /// A proper suffix of the left rule is a proper prefix of the right rule.
    SuffixPrefix,
}

impl OverlapKind {
    pub fn as_str(self) -> &'static str {
        match self {
            OverlapKind::Inclusion => "inclusion",
            OverlapKind::SuffixPrefix => "suffix_prefix",
        }
    }
}

impl fmt::Display for OverlapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Overlap {
    pub kind: OverlapKind,
    pub left_rule: usize,
    pub right_rule: usize,
    /// Where the right rule's occurrence starts inside `word`.
    pub offset: usize,
    pub word: Word,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalPair {
    pub source: Overlap,
    /// `word` with the left rule's occurrence (at 0) deleted.
    pub left_reduct: Word,
    /// `word` with the right rule's occurrence (at `offset`) deleted.
    pub right_reduct: Word,
}

impl CriticalPair {
    pub fn to_json(&self) -> Value {
        json!({
            "kind": self.source.kind.as_str(),
            "left_rule": self.source.left_rule,
            "right_rule": self.source.right_rule,
            "offset": self.source.offset,
            "word": self.source.word.to_json(),
            "reducts": [self.left_reduct.to_json(), self.right_reduct.to_json()],
        })
    }
}

/// Every overlap between relators, ordered by `(left_rule, right_rule, offset)`.
pub fn overlaps(sys: &SpecialSystem) -> Vec<Overlap> {
    let rels = sys.relators();
    let mut out = Vec::new();
    for (i, u) in rels.iter().enumerate() {
        let u = u.letters();
        for (j, v) in rels.iter().enumerate() {
            let v = v.letters();
            for offset in 0..u.len() {
                let rest = &u[offset..];
                if offset + v.len() <= u.len() {
                    // v inside u; equal words only when i == j at offset 0
                    if i != j && rest.starts_with(v) {
                        out.push(Overlap {
                            kind: OverlapKind::Inclusion,
                            left_rule: i,
                            right_rule: j,
                            offset,
                            word: Word::from(u.to_vec()),
                        });
                    }
                } else if offset > 0 && v.starts_with(rest) {
                    let mut word = u[..offset].to_vec();
                    word.extend_from_slice(v);
                    out.push(Overlap {
                        kind: OverlapKind::SuffixPrefix,
                        left_rule: i,
                        right_rule: j,
                        offset,
                        word: Word::from(word),
                    });
                }
            }
        }
    }
    out
}

impl Overlap {
    pub fn critical_pair(&self, sys: &SpecialSystem) -> CriticalPair {
        let left_len = sys.relator(self.left_rule).len();
        let right_len = sys.relator(self.right_rule).len();
        CriticalPair {
            left_reduct: self.word.delete(0, left_len),
            right_reduct: self.word.delete(self.offset, right_len),
            source: self.clone(),
        }
    }
}

pub fn critical_pairs(sys: &SpecialSystem) -> Vec<CriticalPair> {
    overlaps(sys).iter().map(|o| o.critical_pair(sys)).collect()
}

/// No two relators overlap at all (including self-overlaps).
pub fn is_overlap_free(sys: &SpecialSystem) -> bool {
    let rels = sys.relators();
    rels.iter().enumerate().all(|(i, u)| {
        rels.iter().enumerate().all(|(j, v)| {
            let (u, v) = (u.letters(), v.letters());
            (0..u.len()).all(|offset| {
                let rest = &u[offset..];
                if offset + v.len() <= u.len() {
                    i == j || !rest.starts_with(v)
                } else {
                    offset == 0 || !v.starts_with(rest)
                }
            })
        })
    })
}

/// Whether `p` and `q` have a common descendant.
pub fn joinable(sys: &SpecialSystem, p: &Word, q: &Word, limits: &Limits) -> Result<bool> {
    if p == q {
        return Ok(true);
    }
    let dp = descendants(sys, p, limits)?;
    if dp.contains(q) {
        return Ok(true);
    }
    let dq = descendants(sys, q, limits)?;
    Ok(dq.iter().any(|v| dp.contains(v)))
}

/// Exact confluence decision: every critical pair is joinable.
pub fn is_confluent(sys: &SpecialSystem, limits: &Limits) -> Result<bool> {
    for cp in critical_pairs(sys) {
        if !joinable(sys, &cp.left_reduct, &cp.right_reduct, limits)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// First critical pair that is not joinable, if any.
pub fn non_joinable_pair(sys: &SpecialSystem, limits: &Limits) -> Result<Option<CriticalPair>> {
    for cp in critical_pairs(sys) {
        if !joinable(sys, &cp.left_reduct, &cp.right_reduct, limits)? {
            return Ok(Some(cp));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(alpha: &[&str], rels: &[&str]) -> SpecialSystem {
        SpecialSystem::from_strs(alpha, rels).unwrap()
    }

    #[test]
    fn step_examples() {
        let bicyclic = sys(&["a", "b"], &["ab"]);
        let a = bicyclic.alphabet();
        let s = rewrite_step(&bicyclic, &a.word("aabb")).unwrap();
        assert_eq!((s.word, s.position, s.rule), (a.word("ab"), 1, 0));
        assert!(rewrite_step(&bicyclic, &a.word("ba")).is_none());

        let z2 = sys(&["a"], &["aa"]);
        let s = rewrite_step(&z2, &z2.alphabet().word("aaa")).unwrap();
        assert_eq!(
            (s.word, s.position, s.rule),
            (z2.alphabet().word("a"), 0, 0)
        );
    }

    #[test]
    fn step_tie_break_longest() {
        let s = sys(&["a", "b", "c"], &["ab", "abc"]);
        let st = rewrite_step(&s, &s.alphabet().word("cabc")).unwrap();
        assert_eq!((st.position, st.rule), (1, 1));
        assert_eq!(st.word, s.alphabet().word("c"));
    }

    #[test]
    fn normal_form_examples() {
        let bicyclic = sys(&["a", "b"], &["ab"]);
        let a = bicyclic.alphabet();
        assert_eq!(normal_form(&bicyclic, &a.word("aabb")), Word::empty());
        assert_eq!(normal_form(&bicyclic, &a.word("ba")), a.word("ba"));
        let z2 = sys(&["a"], &["aa"]);
        assert_eq!(
            normal_form(&z2, &z2.alphabet().word("aaa")),
            z2.alphabet().word("a")
        );
    }

    #[test]
    fn normal_form_rescans_left_of_splice() {
        // deleting "cd" exposes "ab" which starts left of the splice point
        let s = sys(&["a", "b", "c", "d"], &["cd", "ab", "aabb"]);
        let w = s.alphabet().word("aacdbb");
        let (nf, trace) = normal_form_traced(&s, &w);
        assert_eq!(trace, vec![(2, 0), (0, 2)]);
        assert!(nf.is_empty());
    }

    #[test]
    fn overlap_examples() {
        assert!(overlaps(&sys(&["a", "b"], &["ab"])).is_empty());

        let z2 = sys(&["a"], &["aa"]);
        let ov = overlaps(&z2);
        assert_eq!(
            ov,
            vec![Overlap {
                kind: OverlapKind::SuffixPrefix,
                left_rule: 0,
                right_rule: 0,
                offset: 1,
                word: z2.alphabet().word("aaa"),
            }]
        );

        let z = sys(&["a", "b"], &["ab", "ba"]);
        let ov = overlaps(&z);
        let summary: Vec<_> = ov
            .iter()
            .map(|o| {
                (
                    o.kind,
                    o.left_rule,
                    o.right_rule,
                    o.offset,
                    z.render(&o.word),
                )
            })
            .collect();
        assert_eq!(
            summary,
            vec![
                (OverlapKind::SuffixPrefix, 0, 1, 1, "aba".to_string()),
                (OverlapKind::SuffixPrefix, 1, 0, 1, "bab".to_string()),
            ]
        );
    }

    #[test]
    fn inclusion_overlap_pair() {
        let s = sys(&["a", "b", "c"], &["abc", "b"]);
        let cps = critical_pairs(&s);
        assert_eq!(cps.len(), 1);
        let cp = &cps[0];
        assert_eq!(cp.source.kind, OverlapKind::Inclusion);
        assert_eq!(
            (cp.source.left_rule, cp.source.right_rule, cp.source.offset),
            (0, 1, 1)
        );
        assert_eq!(cp.left_reduct, Word::empty());
        assert_eq!(cp.right_reduct, s.alphabet().word("ac"));
        // "ac" is irreducible and nonempty: not joinable
        assert!(!is_confluent(&s, &Limits::default()).unwrap());
    }

    #[test]
    fn critical_pair_examples() {
        let z2 = sys(&["a"], &["aa"]);
        let cps = critical_pairs(&z2);
        assert_eq!(cps.len(), 1);
        assert_eq!(z2.render(&cps[0].left_reduct), "a");
        assert_eq!(z2.render(&cps[0].right_reduct), "a");

        let z = sys(&["a", "b"], &["ab", "ba"]);
        let got: Vec<_> = critical_pairs(&z)
            .iter()
            .map(|c| (z.render(&c.left_reduct), z.render(&c.right_reduct)))
            .collect();
        assert_eq!(
            got,
            vec![("a".into(), "a".into()), ("b".into(), "b".into())]
        );
    }

    #[test]
    fn overlap_free_examples() {
        assert!(is_overlap_free(&sys(&["a", "b"], &["ab"])));
        assert!(!is_overlap_free(&sys(&["a"], &["aa"])));
        assert!(is_overlap_free(&sys(
            &["a", "b", "c", "d"],
            &["acb", "adb"]
        )));
        assert!(!is_overlap_free(&sys(&["a", "b"], &["ab", "ba"])));
    }

    #[test]
    fn descendants_examples() {
        let l = Limits::default();
        let bicyclic = sys(&["a", "b"], &["ab"]);
        let a = bicyclic.alphabet();
        let d = descendants(&bicyclic, &a.word("ab"), &l).unwrap();
        assert_eq!(d, HashSet::from([a.word("ab"), Word::empty()]));
        let d = descendants(&bicyclic, &a.word("ba"), &l).unwrap();
        assert_eq!(d, HashSet::from([a.word("ba")]));
        let z2 = sys(&["a"], &["aa"]);
        let d = descendants(&z2, &z2.alphabet().word("aaa"), &l).unwrap();
        assert_eq!(
            d,
            HashSet::from([z2.alphabet().word("aaa"), z2.alphabet().word("a")])
        );
    }

    #[test]
    fn descendants_budget() {
        let s = sys(&["a", "b"], &["ab"]);
        let w = s.alphabet().word("abababababab");
        let tight = Limits {
            descendants: 3,
            ..Limits::default()
        };
        assert!(matches!(
            descendants(&s, &w, &tight),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn irreducible_enumeration() {
        let b = sys(&["a", "b"], &["ab"]);
        let got: Vec<String> = irreducible_words(&b, 3, 100)
            .unwrap()
            .iter()
            .map(|w| b.render(w))
            .collect();
        assert_eq!(
            got,
            [".", "a", "b", "aa", "ba", "bb", "aaa", "baa", "bba", "bbb"]
        );
        assert!(irreducible_words(&b, 10, 20).is_err());
    }

    #[test]
    fn confluence_examples() {
        let l = Limits::default();
        assert!(is_confluent(&sys(&["a", "b"], &["ab"]), &l).unwrap());
        assert!(is_confluent(&sys(&["a"], &["aa"]), &l).unwrap());
        assert!(is_confluent(&sys(&["a", "b"], &["ab", "ba"]), &l).unwrap());
        // self-overlap "ababa" gives the irreducible pair ("ba", "ab")
        let s = sys(&["a", "b"], &["aba", "bab"]);
        assert!(!is_confluent(&s, &l).unwrap());
        assert!(non_joinable_pair(&s, &l).unwrap().is_some());
    }
}
