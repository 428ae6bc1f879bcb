//! Built-in sample presentations and seeded random systems.

use std::collections::BTreeSet;
use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::presentation::{parse_presentation, Alphabet, Letter, SpecialSystem, Word};

/// `(name, presentation file text)` for the built-in samples.
pub const SAMPLES: &[(&str, &str)] = &[
    (
        "bicyclic",
        "# bicyclic monoid: overlap-free, trivial group of units\nalphabet: a b\nrelator: a b\n",
    ),
    (
        "z2",
        "# cyclic group of order two: one self-overlap\nalphabet: a\nrelator: a a\n",
    ),
    (
        "z",
        "# infinite cyclic group: a and b are mutually inverse\nalphabet: a b\nrelator: a b\nrelator: b a\n",
    ),
];

pub fn sample(name: &str) -> Option<SpecialSystem> {
    SAMPLES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| parse_presentation(text).expect("built-in samples parse"))
}

/// Shape of the random overlap-free systems.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OverlapFreeShape {
    pub rules: RangeInclusive<usize>,
    /// Number of interior letters between the leading `a` and trailing `b`.
    pub interior: RangeInclusive<usize>,
}

impl Default for OverlapFreeShape {
    fn default() -> Self {
        OverlapFreeShape {
            rules: 2..=8,
            interior: 1..=6,
        }
    }
}

/// Random system over `{a, b, c, d}` whose relators all look like `a x_1…x_m b`
/// with every `x_i ∈ {c, d}`.
///
/// `a` only ever starts a relator and `b` only ever ends one, so no relator
/// occurs inside another and no proper suffix is a prefix: the system is
/// overlap-free by construction.
pub fn random_overlap_free(seed: u64, shape: &OverlapFreeShape) -> Result<SpecialSystem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rules = rng.gen_range(shape.rules.clone());
    let available: u128 = shape
        .interior
        .clone()
        .map(|m| 1u128.checked_shl(m as u32).unwrap_or(u128::MAX))
        .fold(0u128, u128::saturating_add);
    if (rules as u128) > available {
        return Err(Error::syntax(
            format!("only {available} distinct relators of the requested shape exist"),
            None,
        ));
    }
    let alphabet = Alphabet::new(["a", "b", "c", "d"])?;
    let mut seen = BTreeSet::new();
    let mut relators = Vec::with_capacity(rules);
    while relators.len() < rules {
        let m = rng.gen_range(shape.interior.clone());
        let mut letters: Vec<Letter> = Vec::with_capacity(m + 2);
        letters.push(0);
        letters.extend((0..m).map(|_| rng.gen_range(2..4)));
        letters.push(1);
        let w = Word::from(letters);
        if seen.insert(w.clone()) {
            relators.push(w);
        }
    }
    SpecialSystem::new(alphabet, relators)
}

/// Random system with distinct relators of length `1..=max_len` over `letters` symbols.
/// Nothing about overlaps or confluence is guaranteed.
pub fn random_system(seed: u64, letters: usize, rules: usize, max_len: usize) -> SpecialSystem {
    assert!((1..=26).contains(&letters) && max_len >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names: Vec<String> = (0..letters)
        .map(|i| char::from(b'a' + i as u8).to_string())
        .collect();
    let alphabet = Alphabet::new(names).expect("distinct single letters");
    let mut seen = BTreeSet::new();
    let mut relators = Vec::new();
    let mut attempts = 0;
    while relators.len() < rules && attempts < 100 * rules {
        attempts += 1;
        let len = rng.gen_range(1..=max_len);
        let w = Word::from(
            (0..len)
                .map(|_| rng.gen_range(0..letters as Letter))
                .collect::<Vec<_>>(),
        );
        if seen.insert(w.clone()) {
            relators.push(w);
        }
    }
    SpecialSystem::new(alphabet, relators).expect("relators are distinct and nonempty")
}

/// Random word of length `0..=max_len` over the system's alphabet.
pub fn random_word(rng: &mut impl Rng, sys: &SpecialSystem, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    let width = sys.alphabet().len() as Letter;
    Word::from(
        (0..len)
            .map(|_| rng.gen_range(0..width))
            .collect::<Vec<_>>(),
    )
}

/// Random erasable word: relators inserted at random positions into the empty word.
pub fn random_erasable_word(rng: &mut impl Rng, sys: &SpecialSystem, insertions: usize) -> Word {
    let mut letters: Vec<Letter> = Vec::new();
    if sys.relators().is_empty() {
        return Word::empty();
    }
    for _ in 0..insertions {
        let r = &sys.relators()[rng.gen_range(0..sys.relators().len())];
        let at = rng.gen_range(0..=letters.len());
        letters.splice(at..at, r.letters().iter().copied());
    }
    Word::from(letters)
}
