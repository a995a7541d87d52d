//! Words over the generators of an adapted presentation.

use num_bigint::BigInt;

/// A single letter-block of a word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Syllable {
    /// The element of the vertex group at `vertex` with the given coordinates.
    Vertex { vertex: usize, exponents: Vec<BigInt> },
    /// The stable letter `t_e`. Its inverse is the letter of the reverse edge.
    Stable(usize),
}

/// A product of syllables, read left to right. Words are plain data: two
/// different words may represent the same group element, and equality in
/// the group is decided by [`crate::Group::is_trivial`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word {
    syllables: Vec<Syllable>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn from_syllables(syllables: Vec<Syllable>) -> Self {
        Word { syllables }
    }

    pub fn vertex(vertex: usize, exponents: Vec<BigInt>) -> Self {
        Word { syllables: vec![Syllable::Vertex { vertex, exponents }] }
    }

    pub fn vertex_i64(vertex: usize, exponents: &[i64]) -> Self {
        Word::vertex(vertex, exponents.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn stable(edge: usize) -> Self {
        Word { syllables: vec![Syllable::Stable(edge)] }
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn push(&mut self, s: Syllable) {
        self.syllables.push(s);
    }

    /// Concatenation `self · other`.
    pub fn mul(&self, other: &Word) -> Word {
        let mut syllables = self.syllables.clone();
        syllables.extend(other.syllables.iter().cloned());
        Word { syllables }
    }

    pub fn product<'a>(words: impl IntoIterator<Item = &'a Word>) -> Word {
        let mut out = Word::identity();
        for w in words {
            out.syllables.extend(w.syllables.iter().cloned());
        }
        out
    }
}
