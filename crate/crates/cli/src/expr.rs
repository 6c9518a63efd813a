//! Group expressions.
//!
//! ```text
//! expr := sum | free | "1"
//! sum  := term ("+" term)*
//! term := "Z" ("_" INT)? ("^" INT)?
//! free := "F" "_" INT
//! ```
//!
//! Whitespace between tokens is ignored. Positions in errors are character
//! offsets into the input.

use std::fmt;

use domlab_core::free::MAX_RANK;
use domlab_core::{AbelianGroup, FreeGroup};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupExpression {
    Abelian(AbelianGroup),
    Free(FreeGroup),
}

impl fmt::Display for GroupExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupExpression::Abelian(g) => write!(f, "{g}"),
            GroupExpression::Free(g) => write!(f, "{g}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("invalid value at position {position}: {message}")]
    Value { position: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Z,
    F,
    Underscore,
    Caret,
    Plus,
    Int(String),
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Z => write!(f, "'Z'"),
            Token::F => write!(f, "'F'"),
            Token::Underscore => write!(f, "'_'"),
            Token::Caret => write!(f, "'^'"),
            Token::Plus => write!(f, "'+'"),
            Token::Int(digits) => write!(f, "integer {digits}"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ExprError> {
    let mut tokens = Vec::new();
    let mut chars = text.chars().enumerate().peekable();
    while let Some((position, c)) = chars.next() {
        let token = match c {
            c if c.is_whitespace() => continue,
            'Z' => Token::Z,
            'F' => Token::F,
            '_' => Token::Underscore,
            '^' => Token::Caret,
            '+' => Token::Plus,
            '0'..='9' => {
                let mut digits = c.to_string();
                while let Some(&(_, d)) = chars.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    digits.push(d);
                    chars.next();
                }
                Token::Int(digits)
            }
            other => {
                return Err(ExprError::Syntax {
                    position,
                    message: format!("unexpected character {other:?}"),
                })
            }
        };
        tokens.push((position, token));
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    next: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.next).map(|(_, t)| t)
    }

    fn position(&self) -> usize {
        self.tokens.get(self.next).map_or(self.end, |(p, _)| *p)
    }

    fn eat(&mut self, wanted: &Token) -> bool {
        if self.peek() == Some(wanted) {
            self.next += 1;
            true
        } else {
            false
        }
    }

    fn unexpected(&self, expected: &str) -> ExprError {
        let found = match self.peek() {
            Some(token) => token.to_string(),
            None => "end of input".to_string(),
        };
        ExprError::Syntax {
            position: self.position(),
            message: format!("expected {expected}, found {found}"),
        }
    }

    fn expect(&mut self, wanted: Token) -> Result<(), ExprError> {
        if self.eat(&wanted) {
            Ok(())
        } else {
            Err(self.unexpected(&wanted.to_string()))
        }
    }

    fn int(&mut self) -> Result<(usize, u64), ExprError> {
        let position = self.position();
        match self.peek() {
            Some(Token::Int(digits)) => {
                let value = digits.parse::<u64>().map_err(|_| ExprError::Value {
                    position,
                    message: format!("{digits} does not fit in 64 bits"),
                })?;
                self.next += 1;
                Ok((position, value))
            }
            _ => Err(self.unexpected("an integer")),
        }
    }

    fn finish(&self) -> Result<(), ExprError> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.unexpected("end of input")),
        }
    }

    fn free(&mut self) -> Result<GroupExpression, ExprError> {
        self.expect(Token::F)?;
        self.expect(Token::Underscore)?;
        let (position, rank) = self.int()?;
        let group = FreeGroup::new(rank).map_err(|_| ExprError::Value {
            position,
            message: format!("rank {rank} exceeds the maximum {MAX_RANK}"),
        })?;
        Ok(GroupExpression::Free(group))
    }

    fn term(&mut self) -> Result<(u64, u32), ExprError> {
        if self.peek() == Some(&Token::F) {
            return Err(ExprError::Syntax {
                position: self.position(),
                message: "free groups cannot appear in a sum".into(),
            });
        }
        self.expect(Token::Z)?;
        let mut modulus = 0;
        if self.eat(&Token::Underscore) {
            let (position, m) = self.int()?;
            if m < 2 {
                return Err(ExprError::Value {
                    position,
                    message: format!(
                        "Z_{m} is not accepted: write \"Z\" for the infinite cyclic group and \"1\" for the trivial group"
                    ),
                });
            }
            if m > i64::MAX as u64 {
                return Err(ExprError::Value {
                    position,
                    message: format!("modulus {m} exceeds 2^63 - 1"),
                });
            }
            modulus = m;
        }
        let mut multiplicity = 1;
        if self.eat(&Token::Caret) {
            let (position, k) = self.int()?;
            if k == 0 {
                return Err(ExprError::Value {
                    position,
                    message: "multiplicity must be at least 1".into(),
                });
            }
            multiplicity = u32::try_from(k).map_err(|_| ExprError::Value {
                position,
                message: format!("multiplicity {k} exceeds {}", u32::MAX),
            })?;
        }
        Ok((modulus, multiplicity))
    }

    fn expression(&mut self) -> Result<GroupExpression, ExprError> {
        let result = match self.peek() {
            Some(Token::F) => self.free()?,
            Some(Token::Int(digits)) if digits == "1" => {
                self.next += 1;
                GroupExpression::Abelian(AbelianGroup::trivial())
            }
            Some(Token::Z) => {
                let mut raw = vec![self.term()?];
                while self.eat(&Token::Plus) {
                    raw.push(self.term()?);
                }
                GroupExpression::Abelian(AbelianGroup::canonicalize(&raw))
            }
            _ => return Err(self.unexpected("'Z', 'F' or '1'")),
        };
        self.finish()?;
        Ok(result)
    }
}

pub fn parse_expression(text: &str) -> Result<GroupExpression, ExprError> {
    let mut parser = Parser {
        tokens: tokenize(text)?,
        next: 0,
        end: text.chars().count(),
    };
    parser.expression()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abelian(text: &str) -> String {
        match parse_expression(text).unwrap() {
            GroupExpression::Abelian(g) => g.to_string(),
            other => panic!("not abelian: {other}"),
        }
    }

    #[test]
    fn parses_sums() {
        assert_eq!(abelian("Z_2 + Z^2"), "Z^2 + Z_2");
        assert_eq!(abelian("Z_6"), "Z_2 + Z_3");
        assert_eq!(abelian(" Z _ 4 ^ 2+Z_2"), "Z_2 + Z_4^2");
        assert_eq!(abelian("1"), "1");
        assert_eq!(abelian("Z"), "Z");
    }

    #[test]
    fn parses_free_groups() {
        assert_eq!(
            parse_expression("F_3").unwrap(),
            GroupExpression::Free(FreeGroup::new(3).unwrap())
        );
        assert_eq!(parse_expression("F_0").unwrap().to_string(), "F_0");
    }

    #[test]
    fn value_errors() {
        for text in [
            "Z_0",
            "Z_1",
            "Z^0",
            "Z_99999999999999999999",
            "Z^4294967296",
            "F_4294967296",
        ] {
            assert!(
                matches!(parse_expression(text), Err(ExprError::Value { .. })),
                "{text}"
            );
        }
        assert_eq!(
            parse_expression("Z + Z_1").unwrap_err(),
            ExprError::Value {
                position: 6,
                message: "Z_1 is not accepted: write \"Z\" for the infinite cyclic group and \"1\" for the trivial group".into()
            }
        );
        assert!(matches!(
            parse_expression("Z_9223372036854775808"),
            Err(ExprError::Value { .. })
        ));
        assert!(parse_expression("Z_9223372036854775807").is_ok());
    }

    #[test]
    fn syntax_errors() {
        let position = |text: &str| match parse_expression(text) {
            Err(ExprError::Syntax { position, .. }) => position,
            other => panic!("{text}: {other:?}"),
        };
        assert_eq!(position(""), 0);
        assert_eq!(position("Z +"), 3);
        assert_eq!(position("Z + F_2"), 4);
        assert_eq!(position("F_2 + Z"), 4);
        assert_eq!(position("1 + Z"), 2);
        assert_eq!(position("Z_"), 2);
        assert_eq!(position("Q"), 0);
        assert_eq!(position("2"), 0);
        assert_eq!(position("Z Z"), 2);
    }

    #[test]
    fn rendering_reparses() {
        for text in [
            "Z_2 + Z^2",
            "Z_12^3 + Z_5 + Z^4",
            "1",
            "F_7",
            "Z_9223372036854775807",
        ] {
            let parsed = parse_expression(text).unwrap();
            assert_eq!(parse_expression(&parsed.to_string()).unwrap(), parsed);
        }
    }
}
