//! Freely reduced words over a finite alphabet of generators.

use alloc::vec::Vec;
use core::cmp::Ordering;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: GenId,
    pub sign: Sign,
}

impl Letter {
    pub fn pos(gen: GenId) -> Letter {
        Letter { gen, sign: Sign::Pos }
    }

    pub fn neg(gen: GenId) -> Letter {
        Letter { gen, sign: Sign::Neg }
    }

    pub fn inverse(self) -> Letter {
        Letter { gen: self.gen, sign: self.sign.flip() }
    }
}

/// A freely reduced word; the representation never contains a letter
/// followed by its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ReducedWord {
    letters: Vec<Letter>,
}

impl ReducedWord {
    pub fn empty() -> ReducedWord {
        ReducedWord { letters: Vec::new() }
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn reduce<I: IntoIterator<Item = Letter>>(letters: I) -> ReducedWord {
        let mut stack: Vec<Letter> = Vec::new();
        for l in letters {
            if stack.last() == Some(&l.inverse()) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        ReducedWord { letters: stack }
    }

    /// Whether the sequence is already reduced (used by strict parsing).
    pub fn is_reduced(letters: &[Letter]) -> bool {
        letters.windows(2).all(|w| w[1] != w[0].inverse())
    }

    pub fn generator(gen: GenId) -> ReducedWord {
        ReducedWord { letters: alloc::vec![Letter::pos(gen)] }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> ReducedWord {
        ReducedWord {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// Concatenation followed by free reduction at the seam.
    pub fn concat(&self, other: &ReducedWord) -> ReducedWord {
        Self::reduce(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn append(&self, l: Letter) -> ReducedWord {
        self.concat(&ReducedWord { letters: alloc::vec![l] })
    }

    /// The geodesic prefix of the first `i` letters; prefixes of a
    /// reduced word are reduced.
    pub fn prefix(&self, i: usize) -> ReducedWord {
        ReducedWord { letters: self.letters[..i].to_vec() }
    }

    /// True when `|self . l| = |self| + 1`, i.e. appending does not
    /// cancel.
    pub fn grows_by(&self, l: Letter) -> bool {
        self.letters.last() != Some(&l.inverse())
    }
}

/// Shortlex: length first, then letter sequence.  Used for all
/// deterministic listings of words.
impl Ord for ReducedWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for ReducedWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
