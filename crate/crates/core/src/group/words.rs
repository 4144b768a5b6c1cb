//! Generator words such as `a^2*b`, `(db)^4da` or `a^{-1}`.
//!
//! Juxtaposition and `*` both denote multiplication. A generator name followed
//! directly by digits (`b3`) is read as a power. `e` denotes the identity unless
//! it is itself a generator name.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Word {
    Identity,
    Gen(usize),
    Seq(Vec<Word>),
    Pow(Box<Word>, i64),
}

impl Word {
    /// Expands the word into signed letters `(generator, inverted)`.
    pub fn letters(&self) -> Vec<(usize, bool)> {
        let mut out = Vec::new();
        self.push_letters(false, &mut out);
        out
    }

    fn push_letters(&self, inverted: bool, out: &mut Vec<(usize, bool)>) {
        match self {
            Word::Identity => {}
            Word::Gen(g) => out.push((*g, inverted)),
            Word::Seq(parts) => {
                if inverted {
                    for p in parts.iter().rev() {
                        p.push_letters(true, out);
                    }
                } else {
                    for p in parts {
                        p.push_letters(false, out);
                    }
                }
            }
            Word::Pow(base, k) => {
                let flip = inverted ^ (*k < 0);
                for _ in 0..k.unsigned_abs() {
                    base.push_letters(flip, out);
                }
            }
        }
    }
}

pub fn parse_word(input: &str, names: &[&str]) -> Result<Word> {
    let chars: Vec<char> = input.chars().filter(|c| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Err(Error::Parse("empty word".into()));
    }
    let mut p = Parser { chars, pos: 0, names };
    let w = p.word()?;
    if p.pos != p.chars.len() {
        return Err(Error::Parse(format!(
            "unexpected `{}` at position {} in `{input}`",
            p.chars[p.pos], p.pos
        )));
    }
    Ok(w)
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    names: &'a [&'a str],
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn word(&mut self) -> Result<Word> {
        let mut parts = Vec::new();
        loop {
            match self.peek() {
                None | Some(')') => break,
                Some('*') => {
                    self.pos += 1;
                    continue;
                }
                _ => parts.push(self.factor()?),
            }
        }
        match parts.len() {
            0 => Err(Error::Parse("empty factor list".into())),
            1 => Ok(parts.pop().unwrap()),
            _ => Ok(Word::Seq(parts)),
        }
    }

    fn factor(&mut self) -> Result<Word> {
        let atom = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let braced = self.peek() == Some('{');
            if braced {
                self.pos += 1;
            }
            let k = self.integer()?;
            if braced {
                if self.peek() != Some('}') {
                    return Err(Error::Parse("missing `}` in exponent".into()));
                }
                self.pos += 1;
            }
            return Ok(Word::Pow(Box::new(atom), k));
        }
        Ok(atom)
    }

    fn atom(&mut self) -> Result<Word> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let w = self.word()?;
                if self.peek() != Some(')') {
                    return Err(Error::Parse("missing `)`".into()));
                }
                self.pos += 1;
                Ok(w)
            }
            Some(_) => {
                let rest: String = self.chars[self.pos..].iter().collect();
                let best = self
                    .names
                    .iter()
                    .enumerate()
                    .filter(|(_, n)| !n.is_empty() && rest.starts_with(*n))
                    .max_by_key(|(_, n)| n.chars().count());
                let base = match best {
                    Some((i, n)) => {
                        self.pos += n.chars().count();
                        Word::Gen(i)
                    }
                    None if rest.starts_with('e') => {
                        self.pos += 1;
                        Word::Identity
                    }
                    None => {
                        return Err(Error::Parse(format!("unknown generator at `{rest}`")));
                    }
                };
                if self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    let k = self.integer()?;
                    return Ok(Word::Pow(Box::new(base), k));
                }
                Ok(base)
            }
            None => Err(Error::Parse("unexpected end of word".into())),
        }
    }

    fn integer(&mut self) -> Result<i64> {
        let start = self.pos;
        if self.peek() == Some('-') {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse()
            .map_err(|_| Error::Parse(format!("bad exponent `{s}`")))
    }
}

/// Renders a sequence of generator indices as a compressed word, e.g. `a^2*b`.
pub fn render_letters(letters: &[usize], names: &[String]) -> String {
    if letters.is_empty() {
        return "e".into();
    }
    let mut parts = Vec::new();
    let mut i = 0;
    while i < letters.len() {
        let mut j = i;
        while j < letters.len() && letters[j] == letters[i] {
            j += 1;
        }
        let name = &names[letters[i]];
        if j - i == 1 {
            parts.push(name.clone());
        } else {
            parts.push(format!("{name}^{}", j - i));
        }
        i = j;
    }
    parts.join("*")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_exponent_words() {
        let names = ["a", "b", "c", "d"];
        let w = parse_word("(db)^4da", &names).unwrap();
        let l = w.letters();
        assert_eq!(l.len(), 10);
        assert_eq!(l[0], (3, false));
        assert_eq!(l[9], (0, false));
        let w = parse_word("a^{-2}*b", &names).unwrap();
        assert_eq!(w.letters(), vec![(0, true), (0, true), (1, false)]);
    }

    #[test]
    fn digit_suffix_is_power() {
        let w = parse_word("b3", &["a", "b"]).unwrap();
        assert_eq!(w.letters(), vec![(1, false); 3]);
    }

    #[test]
    fn inverse_of_sequence_reverses() {
        let w = parse_word("(ab)^-1", &["a", "b"]).unwrap();
        assert_eq!(w.letters(), vec![(1, true), (0, true)]);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_word("x", &["a"]).is_err());
        assert!(parse_word("(a", &["a"]).is_err());
        assert!(parse_word("", &["a"]).is_err());
    }

    #[test]
    fn renders_runs() {
        let names = vec!["a".to_string(), "b".to_string()];
        assert_eq!(render_letters(&[0, 0, 1], &names), "a^2*b");
        assert_eq!(render_letters(&[], &names), "e");
    }
}
