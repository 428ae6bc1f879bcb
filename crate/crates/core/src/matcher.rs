//! Aho–Corasick automaton over relator words, compiled to a dense DFA.

use std::collections::VecDeque;

use crate::presentation::{Letter, Word};

const NONE: u32 = u32::MAX;

/// A relator occurrence `word[start..start + len]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Occurrence {
    pub start: usize,
    pub len: usize,
    pub rule: usize,
}

#[derive(Debug, Clone)]
pub(crate) struct Matcher {
    width: usize,
    delta: Vec<u32>,
    /// Relator whose word is exactly this state's string.
    terminal: Vec<u32>,
    /// Longest relator that is a suffix of this state's string, as (rule, len).
    longest: Vec<(u32, u32)>,
    /// Nearest proper-suffix state that is terminal.
    dict: Vec<u32>,
    depth: Vec<u32>,
    max_len: usize,
}

impl Matcher {
    pub fn new(width: usize, patterns: &[Word]) -> Self {
        let width = width.max(1);
        // trie
        let mut goto: Vec<u32> = vec![NONE; width];
        let mut terminal = vec![NONE];
        let mut depth = vec![0u32];
        for (rule, p) in patterns.iter().enumerate() {
            let mut s = 0usize;
            for &l in p.letters() {
                let slot = s * width + l as usize;
                if goto[slot] == NONE {
                    let fresh = terminal.len() as u32;
                    goto[slot] = fresh;
                    goto.extend(std::iter::repeat_n(NONE, width));
                    terminal.push(NONE);
                    depth.push(depth[s] + 1);
                }
                s = goto[slot] as usize;
            }
            if terminal[s] == NONE {
                terminal[s] = rule as u32;
            }
        }

        let n = terminal.len();
        let mut fail = vec![0u32; n];
        let mut longest = vec![(NONE, 0u32); n];
        let mut dict = vec![NONE; n];
        let mut delta = goto;
        let mut queue = VecDeque::new();

        for slot in delta.iter_mut().take(width) {
            let t = *slot;
            if t == NONE {
                *slot = 0;
            } else {
                fail[t as usize] = 0;
                queue.push_back(t);
            }
        }
        while let Some(s) = queue.pop_front() {
            let s = s as usize;
            let f = fail[s] as usize;
            dict[s] = if terminal[f] != NONE {
                f as u32
            } else {
                dict[f]
            };
            longest[s] = if terminal[s] != NONE {
                (terminal[s], depth[s])
            } else {
                longest[f]
            };
            for l in 0..width {
                let slot = s * width + l;
                let t = delta[slot];
                if t == NONE {
                    delta[slot] = delta[f * width + l];
                } else {
                    fail[t as usize] = delta[f * width + l];
                    queue.push_back(t);
                }
            }
        }

        let max_len = patterns.iter().map(Word::len).max().unwrap_or(0);
        Matcher {
            width,
            delta,
            terminal,
            longest,
            dict,
            depth,
            max_len,
        }
    }

    pub const START: u32 = 0;

    #[inline]
    pub fn next(&self, state: u32, letter: Letter) -> u32 {
        self.delta[state as usize * self.width + letter as usize]
    }

    /// True when some relator ends at this state.
    #[inline]
    pub fn is_match(&self, state: u32) -> bool {
        self.longest[state as usize].0 != NONE
    }

    #[inline]
    fn longest_at(&self, state: u32) -> Option<(usize, usize)> {
        let (rule, len) = self.longest[state as usize];
        (rule != NONE).then_some((rule as usize, len as usize))
    }

    /// All relators that are suffixes of the state's string, longest first.
    fn outputs(&self, state: u32) -> impl Iterator<Item = (usize, usize)> + '_ {
        let first = if self.terminal[state as usize] != NONE {
            state
        } else {
            self.dict[state as usize]
        };
        std::iter::successors((first != NONE).then_some(first), move |&s| {
            let d = self.dict[s as usize];
            (d != NONE).then_some(d)
        })
        .map(move |s| {
            (
                self.terminal[s as usize] as usize,
                self.depth[s as usize] as usize,
            )
        })
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    /// The occurrence with the smallest start position, ties broken by the
    /// longest relator. Occurrences starting before `from` are assumed absent.
    pub fn leftmost(&self, word: &[Letter], from: usize) -> Option<Occurrence> {
        let mut state = Self::START;
        let mut best: Option<Occurrence> = None;
        for (j, &l) in word.iter().enumerate().skip(from) {
            if let Some(b) = best {
                if j + 1 > b.start + self.max_len {
                    break;
                }
            }
            state = self.next(state, l);
            if let Some((rule, len)) = self.longest_at(state) {
                let start = j + 1 - len;
                let better = match best {
                    None => true,
                    Some(b) => start < b.start || (start == b.start && len > b.len),
                };
                if better {
                    best = Some(Occurrence { start, len, rule });
                }
            }
        }
        best
    }

    /// Every relator occurrence in `word`, ordered by end position, longest first.
    pub fn all(&self, word: &[Letter]) -> Vec<Occurrence> {
        let mut out = Vec::new();
        let mut state = Self::START;
        for (j, &l) in word.iter().enumerate() {
            state = self.next(state, l);
            for (rule, len) in self.outputs(state) {
                out.push(Occurrence {
                    start: j + 1 - len,
                    len,
                    rule,
                });
            }
        }
        out
    }

    pub fn contains_match(&self, word: &[Letter]) -> bool {
        let mut state = Self::START;
        for &l in word {
            state = self.next(state, l);
            if self.is_match(state) {
                return true;
            }
        }
        false
    }
}
