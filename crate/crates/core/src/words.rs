//! Reduced words over a finite alphabet and their inverses.
//!
//! Text syntax: `a`..`z` are the generators in alphabet order and `A`..`Z`
//! their inverses, so `baB` is b·a·b⁻¹. Generators past the 26th print as
//! `x27` / `X27` and cannot be parsed back.

use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};

/// Largest alphabet the text syntax can address.
pub const MAX_TEXT_RANK: usize = 26;

/// A generator or the inverse of a generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub const fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub const fn positive(generator: usize) -> Self {
        Letter { generator, inverse: false }
    }

    pub const fn inv(self) -> Self {
        Letter { generator: self.generator, inverse: !self.inverse }
    }

    /// Dense index in `0..2*rank`: `2g` for a generator, `2g+1` for its inverse.
    pub const fn index(self) -> usize {
        2 * self.generator + self.inverse as usize
    }

    pub const fn from_index(index: usize) -> Self {
        Letter { generator: index / 2, inverse: index % 2 == 1 }
    }

    pub fn from_char(c: char) -> Option<Self> {
        if c.is_ascii_lowercase() {
            Some(Letter::positive((c as u8 - b'a') as usize))
        } else if c.is_ascii_uppercase() {
            Some(Letter::new((c as u8 - b'A') as usize, true))
        } else {
            None
        }
    }

    pub fn to_char(self) -> Option<char> {
        if self.generator >= MAX_TEXT_RANK {
            return None;
        }
        let base = if self.inverse { b'A' } else { b'a' };
        Some((base + self.generator as u8) as char)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_char() {
            Some(c) => write!(f, "{c}"),
            None if self.inverse => write!(f, "X{}", self.generator + 1),
            None => write!(f, "x{}", self.generator + 1),
        }
    }
}

/// A freely reduced word. The empty word is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    /// Builds the free reduction of an arbitrary letter sequence.
    pub fn new<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut w = Word::identity();
        for l in letters {
            w.push(l);
        }
        w
    }

    pub fn letter(l: Letter) -> Self {
        Word { letters: vec![l] }
    }

    pub fn generator(g: usize) -> Self {
        Word::letter(Letter::positive(g))
    }

    /// Parses the text syntax without an alphabet bound.
    pub fn parse(text: &str) -> Result<Self> {
        let mut letters = Vec::with_capacity(text.len());
        for c in text.chars() {
            if c.is_whitespace() {
                continue;
            }
            if c == '1' && text.trim() == "1" {
                return Ok(Word::identity());
            }
            let l = Letter::from_char(c)
                .ok_or_else(|| Error::Parse(format!("unexpected character {c:?} in word {text:?}")))?;
            letters.push(l);
        }
        Ok(Word::new(letters))
    }

    /// Parses and checks every letter against an alphabet of `rank` generators.
    pub fn parse_in_rank(text: &str, rank: usize) -> Result<Self> {
        let w = Word::parse(text)?;
        w.check_rank(rank)?;
        Ok(w)
    }

    fn push(&mut self, l: Letter) {
        if self.letters.last() == Some(&l.inv()) {
            self.letters.pop();
        } else {
            self.letters.push(l);
        }
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

    pub fn first(&self) -> Option<Letter> {
        self.letters.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.letters.last().copied()
    }

    /// Smallest alphabet rank containing every letter of the word.
    pub fn min_rank(&self) -> usize {
        self.letters.iter().map(|l| l.generator + 1).max().unwrap_or(0)
    }

    pub fn check_rank(&self, rank: usize) -> Result<()> {
        match self.letters.iter().find(|l| l.generator >= rank) {
            Some(l) => Err(Error::LetterOutOfRange { generator: l.generator, rank }),
            None => Ok(()),
        }
    }

    pub fn multiply(&self, other: &Word) -> Word {
        let mut out = self.clone();
        for &l in &other.letters {
            out.push(l);
        }
        out
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|l| l.inv()).collect() }
    }

    /// `self^n` for any integer `n`.
    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..n.unsigned_abs() {
            out = out.multiply(&base);
        }
        out
    }

    /// Splits `self` as `conjugator · core · conjugator⁻¹` with `core`
    /// cyclically reduced.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let n = self.letters.len();
        let mut k = 0;
        while 2 * k + 1 < n && self.letters[k] == self.letters[n - 1 - k].inv() {
            k += 1;
        }
        let conjugator = Word { letters: self.letters[..k].to_vec() };
        let core = Word { letters: self.letters[k..n - k].to_vec() };
        (conjugator, core)
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.first(), self.last()) {
            (Some(f), Some(l)) => self.len() == 1 || f != l.inv(),
            _ => true,
        }
    }
}

impl Mul for &Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        self.multiply(rhs)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for l in &self.letters {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Word::parse(s)
    }
}

/// Parses a comma separated list of words; blank entries are skipped.
pub fn parse_word_list(text: &str, rank: usize) -> Result<Vec<Word>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| Word::parse_in_rank(s, rank))
        .collect()
}

/// An endomorphism of the free group of the given rank, given by the image
/// of each generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Endomorphism {
    rank: usize,
    images: Vec<Word>,
}

impl Endomorphism {
    pub fn new(rank: usize, images: Vec<Word>) -> Result<Self> {
        if images.len() != rank {
            return Err(Error::RankMismatch { expected: rank, found: images.len() });
        }
        for w in &images {
            w.check_rank(rank)?;
        }
        Ok(Endomorphism { rank, images })
    }

    pub fn identity(rank: usize) -> Self {
        Endomorphism { rank, images: (0..rank).map(Word::generator).collect() }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn image_of(&self, l: Letter) -> Word {
        let w = &self.images[l.generator];
        if l.inverse {
            w.inverse()
        } else {
            w.clone()
        }
    }

    pub fn apply(&self, u: &Word) -> Result<Word> {
        u.check_rank(self.rank)
            .map_err(|_| Error::RankMismatch { expected: self.rank, found: u.min_rank() })?;
        let mut out = Word::identity();
        for &l in u.letters() {
            let img = &self.images[l.generator];
            if l.inverse {
                for &m in img.letters.iter().rev() {
                    out.push(m.inv());
                }
            } else {
                for &m in &img.letters {
                    out.push(m);
                }
            }
        }
        Ok(out)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Endomorphism) -> Result<Endomorphism> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch { expected: self.rank, found: other.rank });
        }
        let images = other.images.iter().map(|w| self.apply(w)).collect::<Result<Vec<_>>>()?;
        Ok(Endomorphism { rank: self.rank, images })
    }
}

pub fn multiply(u: &Word, v: &Word) -> Word {
    u.multiply(v)
}

pub fn invert(u: &Word) -> Word {
    u.inverse()
}

pub fn cyclic_reduce(u: &Word) -> (Word, Word) {
    u.cyclic_reduce()
}

pub fn apply_endomorphism(e: &Endomorphism, u: &Word) -> Result<Word> {
    e.apply(u)
}
