use std::fmt;

use serde::{Serialize, Serializer};

/// A generator or its inverse, packed as `2 * generator + inverse_bit`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(pub u16);

impl Letter {
    pub const fn gen(generator: usize) -> Self {
        Letter((generator as u16) << 1)
    }

    pub const fn gen_inv(generator: usize) -> Self {
        Letter(((generator as u16) << 1) | 1)
    }

    pub const fn generator(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub const fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    pub const fn inverse(self) -> Self {
        Letter(self.0 ^ 1)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_inverse() {
            write!(f, "X{}", self.generator())
        } else {
            write!(f, "x{}", self.generator())
        }
    }
}

/// A word in the generators. Displayed as space-separated `x<i>` / `X<i>`
/// tokens, uppercase meaning inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// Free reduction of `self * other`.
    pub fn concat_reduced(&self, other: &Word) -> Word {
        let mut out = self.0.clone();
        for &l in &other.0 {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[1] != w[0].inverse())
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.0.first(), self.0.last()) {
            (Some(&f), Some(&l)) => self.is_reduced() && (self.0.len() == 1 || l != f.inverse()),
            _ => false,
        }
    }

    /// Lexicographically least rotation of the word or of its inverse.
    pub fn canonical(&self) -> Word {
        let inv = self.inverse();
        let mut best = self.0.clone();
        for w in [&self.0, &inv.0] {
            for r in 0..w.len() {
                let rot: Vec<Letter> = w[r..].iter().chain(&w[..r]).copied().collect();
                if rot < best {
                    best = rot;
                }
            }
        }
        Word(best)
    }

    pub fn is_canonical(&self) -> bool {
        is_canonical(&self.0)
    }

    /// `w = u^n` for some `n >= 2`, as strings.
    pub fn is_proper_power(&self) -> bool {
        is_proper_power(&self.0)
    }

    pub fn parse(s: &str) -> Option<Word> {
        s.split_whitespace()
            .map(|tok| {
                let mut chars = tok.chars();
                let head = chars.next()?;
                let g: usize = chars.as_str().parse().ok()?;
                match head {
                    'x' => Some(Letter::gen(g)),
                    'X' => Some(Letter::gen_inv(g)),
                    _ => None,
                }
            })
            .collect::<Option<Vec<_>>>()
            .map(Word)
    }
}

pub(crate) fn is_canonical(w: &[Letter]) -> bool {
    let n = w.len();
    for r in 1..n {
        if w[r..].iter().chain(&w[..r]).lt(w.iter()) {
            return false;
        }
    }
    let inv: Vec<Letter> = w.iter().rev().map(|l| l.inverse()).collect();
    for r in 0..n {
        if inv[r..].iter().chain(&inv[..r]).lt(w.iter()) {
            return false;
        }
    }
    true
}

pub(crate) fn is_proper_power(w: &[Letter]) -> bool {
    let n = w.len();
    (1..n).filter(|&d| n.is_multiple_of(d)).any(|d| (d..n).all(|i| w[i] == w[i - d]))
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn reduction_and_inverse() {
        assert_eq!(w("x0 x1").concat_reduced(&w("X1 x2")), w("x0 x2"));
        assert_eq!(w("x0 X1 x2").inverse(), w("X2 x1 X0"));
        assert!(!w("x0 X0").is_reduced());
        assert!(!w("x0 x1 X0").is_cyclically_reduced());
        assert!(w("x0").is_cyclically_reduced());
    }

    #[test]
    fn canonical_form() {
        let a = w("x2 x0 x1");
        assert_eq!(a.canonical(), w("x0 x1 x2"));
        assert_eq!(a.inverse().canonical(), a.canonical());
        assert!(w("x0 x1 x2").is_canonical());
        assert!(!w("x1 x2 x0").is_canonical());
        // Inverse rotation wins: X1 X0 -> inverse x0 x1.
        assert_eq!(w("X1 X0").canonical(), w("x0 x1"));
    }

    #[test]
    fn proper_powers() {
        assert!(w("x0 x1 x0 x1").is_proper_power());
        assert!(w("x0 x0").is_proper_power());
        assert!(!w("x0 x1 x0").is_proper_power());
        assert!(!w("x0").is_proper_power());
    }

    #[test]
    fn display_round_trip() {
        let a = w("x0 X3 x12");
        assert_eq!(a.to_string(), "x0 X3 x12");
        assert_eq!(Word::parse(&a.to_string()).unwrap(), a);
    }
}
