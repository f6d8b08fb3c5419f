//! Text grammar for monomials and ideals.
//!
//! A monomial is `x<k>` optionally followed by `^<e>`, joined by `*`; the unit
//! is `1`. An ideal is a comma-separated list of monomials. Whitespace is
//! ignored anywhere. Printing goes through the `Display` impls in
//! [`crate::monomial`], which emit the same grammar.

use thiserror::Error;

use crate::monomial::{minimalize, Monomial, MonomialError, MonomialIdeal, MAX_VARS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("variable x{index} at byte {position} is out of range for {n} variables")]
    IndexOutOfRange {
        position: usize,
        index: usize,
        n: usize,
    },
    #[error("exponent at byte {position} does not fit in 16 bits")]
    ExponentOverflow { position: usize },
    #[error("the unit monomial cannot be an ideal generator (generator {generator})")]
    UnitGenerator { generator: usize },
    #[error("empty input")]
    Empty,
    #[error(transparent)]
    Monomial(#[from] MonomialError),
}

/// An ideal parsed from text, plus the generators minimalization dropped.
#[derive(Debug, Clone)]
pub struct ParsedIdeal {
    pub ideal: MonomialIdeal,
    /// Input generators that were duplicates or multiples of another generator.
    pub dropped: Vec<Monomial>,
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor {
            src: text.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn syntax(&self, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            position: self.pos,
            message: message.into(),
        }
    }

    /// Digits may not be split by whitespace; `x1 2` is an error, not `x12`.
    fn number(&mut self) -> Result<(usize, u64), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let mut value: u64 = 0;
        while let Some(&c) = self.src.get(self.pos) {
            if !c.is_ascii_digit() {
                break;
            }
            value = value.saturating_mul(10).saturating_add((c - b'0') as u64);
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.syntax("expected a number"));
        }
        Ok((start, value))
    }

    fn monomial(&mut self, n: usize) -> Result<Monomial, ParseError> {
        let mut m = Monomial::one(n)?;
        match self.peek() {
            Some(b'1') => {
                let (start, value) = self.number()?;
                if value != 1 {
                    return Err(ParseError::Syntax {
                        position: start,
                        message: "the only numeric monomial is 1".into(),
                    });
                }
                return Ok(m);
            }
            Some(b'x') | Some(b'X') => {}
            Some(_) => return Err(self.syntax("expected `x<k>` or `1`")),
            None => return Err(self.syntax("expected a monomial")),
        }
        loop {
            if !(self.eat(b'x') || self.eat(b'X')) {
                return Err(self.syntax("expected `x<k>`"));
            }
            let (start, index) = self.number()?;
            if index == 0 || index as usize > n {
                return Err(ParseError::IndexOutOfRange {
                    position: start,
                    index: index.min(usize::MAX as u64) as usize,
                    n,
                });
            }
            let mut exp = 1u64;
            if self.eat(b'^') {
                let (start, e) = self.number()?;
                if e > u16::MAX as u64 {
                    return Err(ParseError::ExponentOverflow { position: start });
                }
                exp = e;
            }
            let mut exps = m.exponents().to_vec();
            let slot = &mut exps[index as usize - 1];
            let total = *slot as u64 + exp;
            if total > u16::MAX as u64 {
                return Err(ParseError::ExponentOverflow { position: start });
            }
            *slot = total as u16;
            m = Monomial::from_exponents(&exps)?;
            if !self.eat(b'*') {
                return Ok(m);
            }
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.syntax("unexpected trailing input")),
        }
    }
}

fn check_ambient(n: usize) -> Result<(), ParseError> {
    if n == 0 || n > MAX_VARS {
        return Err(MonomialError::BadAmbient(n).into());
    }
    Ok(())
}

pub fn parse_monomial(text: &str, n: usize) -> Result<Monomial, ParseError> {
    check_ambient(n)?;
    let mut cur = Cursor::new(text);
    if cur.peek().is_none() {
        return Err(ParseError::Empty);
    }
    let m = cur.monomial(n)?;
    cur.finish()?;
    Ok(m)
}

/// Parses a comma-separated generator list verbatim (no minimalization).
pub fn parse_generators(text: &str, n: usize) -> Result<Vec<Monomial>, ParseError> {
    check_ambient(n)?;
    let mut cur = Cursor::new(text);
    if cur.peek().is_none() {
        return Err(ParseError::Empty);
    }
    let mut gens = Vec::new();
    loop {
        gens.push(cur.monomial(n)?);
        if !cur.eat(b',') {
            break;
        }
    }
    cur.finish()?;
    Ok(gens)
}

/// Parses and minimalizes an ideal, recording which generators were redundant.
pub fn parse_ideal(text: &str, n: usize) -> Result<ParsedIdeal, ParseError> {
    let gens = parse_generators(text, n)?;
    if let Some(generator) = gens.iter().position(Monomial::is_one) {
        return Err(ParseError::UnitGenerator {
            generator: generator + 1,
        });
    }
    let ideal = minimalize(gens.iter().copied())?;
    let mut dropped = Vec::new();
    let mut seen = Vec::new();
    for g in gens {
        if ideal.generators().contains(&g) && !seen.contains(&g) {
            seen.push(g);
        } else {
            dropped.push(g);
        }
    }
    Ok(ParsedIdeal { ideal, dropped })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_two_generator_ideal() {
        let p = parse_ideal("x1^2*x2, x1*x3", 3).unwrap();
        assert_eq!(p.ideal.len(), 2);
        assert!(p.dropped.is_empty());
        assert_eq!(p.ideal.to_string(), "x1*x3, x1^2*x2");
    }

    #[test]
    fn minimalization_is_reported() {
        let p = parse_ideal("x1, x1*x2", 2).unwrap();
        assert_eq!(p.ideal.to_string(), "x1");
        assert_eq!(p.dropped.len(), 1);
        assert_eq!(p.dropped[0].to_string(), "x1*x2");

        let p = parse_ideal("x2, x2", 2).unwrap();
        assert_eq!(p.ideal.len(), 1);
        assert_eq!(p.dropped.len(), 1);
    }

    #[test]
    fn index_out_of_range() {
        assert!(matches!(
            parse_ideal("x4", 3),
            Err(ParseError::IndexOutOfRange { index: 4, n: 3, .. })
        ));
        assert!(matches!(
            parse_ideal("x0", 3),
            Err(ParseError::IndexOutOfRange { index: 0, .. })
        ));
    }

    #[test]
    fn unit_generator_rejected() {
        assert_eq!(
            parse_ideal("x1, 1", 2).unwrap_err(),
            ParseError::UnitGenerator { generator: 2 }
        );
        assert!(parse_monomial("1", 2).unwrap().is_one());
    }

    #[test]
    fn whitespace_and_repeats() {
        let m = parse_monomial(" x1 ^ 2 *  x2*x1 ", 2).unwrap();
        assert_eq!(m.exponents(), &[3, 1]);
        assert!(parse_monomial("x1 2", 2).is_err());
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_ideal("x1, y2", 2) {
            Err(ParseError::Syntax { position, .. }) => assert_eq!(position, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_ideal("x1,", 2),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            parse_ideal("x1*", 2),
            Err(ParseError::Syntax { .. })
        ));
        assert_eq!(parse_ideal("   ", 2).unwrap_err(), ParseError::Empty);
        assert!(matches!(
            parse_monomial("x1^70000", 2),
            Err(ParseError::ExponentOverflow { .. })
        ));
        assert!(parse_ideal("x1", 0).is_err());
    }

    fn arb_gens() -> impl Strategy<Value = (usize, Vec<Vec<u16>>)> {
        (1usize..=5).prop_flat_map(|n| {
            (
                Just(n),
                prop::collection::vec(prop::collection::vec(0u16..4, n), 1..6),
            )
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip((n, raw) in arb_gens()) {
            let gens: Vec<Monomial> = raw
                .iter()
                .map(|e| Monomial::from_exponents(e).unwrap())
                .filter(|m| !m.is_one())
                .collect();
            prop_assume!(!gens.is_empty());
            let ideal = minimalize(gens).unwrap();
            let text = ideal.to_string();
            let reparsed = parse_ideal(&text, n).unwrap();
            prop_assert_eq!(&reparsed.ideal, &ideal);
            prop_assert!(reparsed.dropped.is_empty());
            prop_assert_eq!(reparsed.ideal.to_string(), text);
        }
    }
}
