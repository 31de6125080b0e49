//! Expression parser for the `w` / `k` / `k+` ordinal notation.
//!
//! Grammar, with the usual precedence `^` > `*` > `+` and `^`
//! right-associative:
//!
//! ```text
//! expr    := product ("+" product)*
//! product := power ("*" power)*
//! power   := atom ("^" power)?
//! atom    := NAT | "w" | "k" | "k+" | "(" expr ")"
//! ```
//!
//! Lexing `k+`: a `k` immediately followed by `+` reads as the κ⁺ atom
//! exactly when the character after the `+` cannot start an atom. So
//! `k+1` is κ+1, `k++1` is κ⁺+1, `k+*2` is κ⁺·2 and a trailing `k+` is κ⁺.
//!
//! Expressions evaluate during parsing, so arithmetic outside the supported
//! fragment (for example `k+^2`) surfaces as the corresponding arithmetic
//! error rather than a parse error.

use crate::{Error, Ordinal, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok {
    Nat(u64),
    W,
    K,
    KPlus,
    Plus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tok_name(t: Tok) -> &'static str {
    match t {
        Tok::Nat(_) => "number",
        Tok::W => "'w'",
        Tok::K => "'k'",
        Tok::KPlus => "'k+'",
        Tok::Plus => "'+'",
        Tok::Star => "'*'",
        Tok::Caret => "'^'",
        Tok::LParen => "'('",
        Tok::RParen => "')'",
    }
}

fn starts_atom(b: u8) -> bool {
    b.is_ascii_digit() || matches!(b, b'w' | b'k' | b'(')
}

fn lex(text: &str, allow_kplus: bool) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'+' => {
                toks.push((Tok::Plus, i));
                i += 1;
            }
            b'*' => {
                toks.push((Tok::Star, i));
                i += 1;
            }
            b'^' => {
                toks.push((Tok::Caret, i));
                i += 1;
            }
            b'(' => {
                toks.push((Tok::LParen, i));
                i += 1;
            }
            b')' => {
                toks.push((Tok::RParen, i));
                i += 1;
            }
            b'w' => {
                toks.push((Tok::W, i));
                i += 1;
            }
            b'k' => {
                let plus_next = bytes.get(i + 1) == Some(&b'+');
                let plus_is_operator = bytes.get(i + 2).is_some_and(|&b| starts_atom(b));
                if plus_next && !plus_is_operator {
                    if !allow_kplus {
                        return Err(Error::KappaPlusDisabled { pos: i });
                    }
                    toks.push((Tok::KPlus, i));
                    i += 2;
                } else {
                    toks.push((Tok::K, i));
                    i += 1;
                }
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let lit = &text[start..i];
                let n: u64 = lit.parse().map_err(|_| Error::Parse {
                    pos: start,
                    message: format!("number {lit} does not fit in 64 bits"),
                })?;
                toks.push((Tok::Nat(n), start));
            }
            _ => {
                let ch = text[i..].chars().next().expect("in-bounds index");
                return Err(Error::Parse {
                    pos: i,
                    message: format!("unexpected character {ch:?}"),
                });
            }
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    /// Byte length of the input, used as the position of end-of-input errors.
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<(Tok, usize)> {
        self.toks.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Ordinal> {
        let mut acc = self.product()?;
        while matches!(self.peek(), Some((Tok::Plus, _))) {
            self.pos += 1;
            let rhs = self.product()?;
            acc = acc.add(&rhs)?;
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<Ordinal> {
        let mut acc = self.power()?;
        while matches!(self.peek(), Some((Tok::Star, _))) {
            self.pos += 1;
            let rhs = self.power()?;
            acc = acc.mul(&rhs)?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Ordinal> {
        let base = self.atom()?;
        if matches!(self.peek(), Some((Tok::Caret, _))) {
            self.pos += 1;
            let exp = self.power()?;
            return base.pow(&exp);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Ordinal> {
        match self.peek() {
            Some((Tok::Nat(n), _)) => {
                self.pos += 1;
                Ok(Ordinal::from_nat(n))
            }
            Some((Tok::W, _)) => {
                self.pos += 1;
                Ok(Ordinal::omega())
            }
            Some((Tok::K, _)) => {
                self.pos += 1;
                Ok(Ordinal::kappa())
            }
            Some((Tok::KPlus, _)) => {
                self.pos += 1;
                Ok(Ordinal::kappa_plus())
            }
            Some((Tok::LParen, _)) => {
                self.pos += 1;
                let v = self.expr()?;
                match self.peek() {
                    Some((Tok::RParen, _)) => {
                        self.pos += 1;
                        Ok(v)
                    }
                    Some((t, at)) => Err(Error::Parse {
                        pos: at,
                        message: format!("expected ')', found {}", tok_name(t)),
                    }),
                    None => Err(Error::Parse { pos: self.end, message: "expected ')'".into() }),
                }
            }
            Some((t, at)) => Err(Error::Parse {
                pos: at,
                message: format!("expected an ordinal expression, found {}", tok_name(t)),
            }),
            None => Err(Error::Parse {
                pos: self.end,
                message: "expected an ordinal expression".into(),
            }),
        }
    }
}

pub(crate) fn parse_gated(text: &str, allow_kplus: bool) -> Result<Ordinal> {
    let toks = lex(text, allow_kplus)?;
    let mut p = Parser { toks: &toks, pos: 0, end: text.len() };
    let v = p.expr()?;
    if let Some((t, at)) = p.peek() {
        return Err(Error::Parse {
            pos: at,
            message: format!("unexpected trailing {}", tok_name(t)),
        });
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use crate::{Error, Ordinal};

    fn o(s: &str) -> Ordinal {
        Ordinal::parse(s).unwrap()
    }

    #[test]
    fn kplus_lexing() {
        assert_eq!(o("k+"), Ordinal::kappa_plus());
        assert_eq!(o("k+1"), Ordinal::kappa().succ().unwrap());
        assert_eq!(o("k+k"), Ordinal::kappa().mul(&Ordinal::from_nat(2)).unwrap());
        assert_eq!(o("k++1"), Ordinal::kappa_plus().succ().unwrap());
        assert_eq!(o("k+*2"), Ordinal::kappa_plus().mul(&Ordinal::from_nat(2)).unwrap());
        assert_eq!(o("k+w"), Ordinal::kappa().add(&Ordinal::omega()).unwrap());
        assert_eq!(o("k++k"), Ordinal::kappa_plus().add(&Ordinal::kappa()).unwrap());
        assert_eq!(o("w^(k+)"), Ordinal::kappa_plus());
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(o("w^2*3+4"), o("(w^2)*3 + 4"));
        assert_eq!(o("w^w^2"), o("w^(w^2)"));
        assert_eq!(o("2*3"), Ordinal::from_nat(6));
        assert_eq!(o("w*2+w*3"), o("w*5"));
        assert_eq!(o("  w +   1 "), o("w+1"));
    }

    #[test]
    fn gating() {
        assert!(Ordinal::parse_gated("k+1", false).is_ok());
        let err = Ordinal::parse_gated("w + k+", false).unwrap_err();
        assert_eq!(err, Error::KappaPlusDisabled { pos: 4 });
        assert!(Ordinal::parse_gated("k", false).is_ok());
    }

    #[test]
    fn errors_carry_positions() {
        match Ordinal::parse("w + ") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("expected parse error, got {other:?}"),
        }
        match Ordinal::parse("w @ 1") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
        match Ordinal::parse("(w + 1") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(Ordinal::parse("").is_err());
        assert!(Ordinal::parse("w w").is_err());
    }

    #[test]
    fn arithmetic_errors_surface() {
        assert!(matches!(Ordinal::parse("k+*w"), Err(Error::ProductOutsideFragment)));
        assert!(matches!(Ordinal::parse("k^k"), Err(Error::PowerOutsideFragment(_))));
    }

    #[test]
    fn display_round_trip() {
        for s in [
            "0",
            "7",
            "w",
            "w+1",
            "w*2",
            "w^2 + w + 3",
            "w^w",
            "w^w^w",
            "w^(w+1)*4",
            "w^k",
            "w^k*3 + w^2 + 5",
            "w^(k+)",
            "w^(k+) + w^(k*2) + w^(k+2)",
            "w^(k*(w^2+w))",
            "w^(k+)*9 + w^k*2 + w + 1",
        ] {
            let v = o(s);
            assert_eq!(o(&v.to_string()), v, "round trip failed for {s}");
        }
    }
}
