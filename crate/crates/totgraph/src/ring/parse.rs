//! Parser for ring expressions.
//!
//! Grammar (case-insensitive, whitespace-insensitive):
//!
//! ```text
//! expr  := atom ( "x" atom )*
//! atom  := "Z" INT
//!        | "F" INT
//!        | "Z" INT "[x]/(" poly ("," poly)* ")"
//!        | "F" INT "[x]/(" poly ")"
//!        | "Z" INT "[x,y]/(x,y)^2"
//! poly  := ["+"|"-"] term ( ("+"|"-") term )*
//! term  := INT [ "*"? "x" [ "^" INT ] ] | "x" [ "^" INT ]
//! ```
//!
//! Accepted examples: `Z8`, `F4`, `Z4[x]/(2x,x^2)`, `Z4[x]/(x^2+x+1)`,
//! `Z2[x,y]/(x,y)^2`, `Z2xF4`, `Z2xZ2xZ2`.

use std::fmt;

use thiserror::Error;

use super::spec::{IntPoly, RingSpec};

#[derive(Debug, Error)]
#[error("parse error at position {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    fn new(position: usize, message: impl fmt::Display) -> Self {
        ParseError {
            position,
            message: message.to_string(),
        }
    }
}

struct Lexer {
    // Lowercased characters with their original byte positions.
    chars: Vec<(char, usize)>,
    pos: usize,
    end: usize,
}

impl Lexer {
    fn new(text: &str) -> Self {
        let chars: Vec<(char, usize)> = text
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .map(|(i, c)| (c.to_ascii_lowercase(), i))
            .collect();
        Lexer {
            chars,
            pos: 0,
            end: text.len(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(c, _)| c)
    }

    fn here(&self) -> usize {
        self.chars.get(self.pos).map_or(self.end, |&(_, i)| i)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(ParseError::new(
                self.here(),
                format!("expected '{c}', found {}", describe(self.peek())),
            ))
        }
    }

    fn parse_int(&mut self) -> Result<u64, ParseError> {
        let start = self.here();
        let mut value: u64 = 0;
        let mut any = false;
        while let Some(c) = self.peek() {
            if let Some(d) = c.to_digit(10) {
                value = value
                    .checked_mul(10)
                    .and_then(|v| v.checked_add(d as u64))
                    .ok_or_else(|| ParseError::new(start, "integer too large"))?;
                any = true;
                self.pos += 1;
            } else {
                break;
            }
        }
        if any {
            Ok(value)
        } else {
            Err(ParseError::new(
                self.here(),
                format!("expected an integer, found {}", describe(self.peek())),
            ))
        }
    }
}

fn describe(c: Option<char>) -> String {
    match c {
        Some(c) => format!("'{c}'"),
        None => "end of input".to_string(),
    }
}

/// Parses a ring expression into a validated [`RingSpec`].
pub fn parse_ring_expression(text: &str) -> Result<RingSpec, ParseError> {
    let mut lx = Lexer::new(text);
    let mut factors = vec![parse_atom(&mut lx)?];
    while lx.peek() == Some('x') {
        lx.bump();
        factors.push(parse_atom(&mut lx)?);
    }
    if lx.peek().is_some() {
        return Err(ParseError::new(
            lx.here(),
            format!("unexpected trailing input starting at {}", describe(lx.peek())),
        ));
    }
    let spec = if factors.len() == 1 {
        factors.pop().unwrap()
    } else {
        RingSpec::Product(factors)
    };
    spec.validate()
        .map_err(|e| ParseError::new(0, e.to_string()))?;
    Ok(spec)
}

fn parse_atom(lx: &mut Lexer) -> Result<RingSpec, ParseError> {
    let kind_pos = lx.here();
    let kind = match lx.bump() {
        Some('z') => 'z',
        Some('f') => 'f',
        other => {
            return Err(ParseError::new(
                kind_pos,
                format!("expected a ring atom starting with 'Z' or 'F', found {}", describe(other)),
            ))
        }
    };
    let int_pos = lx.here();
    let n = lx.parse_int()?;
    if lx.peek() != Some('[') {
        return match kind {
            'z' => {
                if n < 2 {
                    Err(ParseError::new(int_pos, format!("Z{n}: modulus must be >= 2")))
                } else {
                    Ok(RingSpec::Modular(n))
                }
            }
            _ => RingSpec::galois(n).map_err(|e| ParseError::new(int_pos, e)),
        };
    }
    lx.expect('[')?;
    lx.expect('x')?;
    if kind == 'z' && lx.peek() == Some(',') {
        // Z n [x,y]/(x,y)^2
        for c in [',', 'y', ']', '/', '(', 'x', ',', 'y', ')', '^', '2'] {
            lx.expect(c)?;
        }
        if n < 2 {
            return Err(ParseError::new(int_pos, format!("Z{n}: modulus must be >= 2")));
        }
        return Ok(RingSpec::bivariate_square(RingSpec::Modular(n)));
    }
    lx.expect(']')?;
    lx.expect('/')?;
    lx.expect('(')?;
    let mut relations = vec![parse_poly(lx)?];
    while lx.eat(',') {
        relations.push(parse_poly(lx)?);
    }
    lx.expect(')')?;
    let base = match kind {
        'z' => {
            if n < 2 {
                return Err(ParseError::new(int_pos, format!("Z{n}: modulus must be >= 2")));
            }
            RingSpec::Modular(n)
        }
        _ => {
            if relations.len() != 1 {
                return Err(ParseError::new(
                    int_pos,
                    "a field quotient takes exactly one relation",
                ));
            }
            RingSpec::galois(n).map_err(|e| ParseError::new(int_pos, e))?
        }
    };
    Ok(RingSpec::quotient(base, relations))
}

fn parse_poly(lx: &mut Lexer) -> Result<IntPoly, ParseError> {
    let mut coeffs: Vec<i64> = Vec::new();
    loop {
        let sign = if lx.eat('-') {
            -1
        } else {
            lx.eat('+');
            1
        };
        let term_pos = lx.here();
        let coeff: i64 = match lx.peek() {
            Some(c) if c.is_ascii_digit() => {
                let v = lx.parse_int()?;
                i64::try_from(v).map_err(|_| ParseError::new(term_pos, "coefficient too large"))?
            }
            Some('x') => 1,
            other => {
                return Err(ParseError::new(
                    term_pos,
                    format!("expected a polynomial term, found {}", describe(other)),
                ))
            }
        };
        lx.eat('*');
        let degree = if lx.eat('x') {
            if lx.eat('^') {
                let d = lx.parse_int()?;
                if d > 64 {
                    return Err(ParseError::new(term_pos, "exponent too large"));
                }
                d as usize
            } else {
                1
            }
        } else {
            0
        };
        if coeffs.len() <= degree {
            coeffs.resize(degree + 1, 0);
        }
        coeffs[degree] += sign * coeff;
        match lx.peek() {
            Some('+') | Some('-') => continue,
            _ => break,
        }
    }
    Ok(IntPoly::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_named_examples() {
        for (text, display) in [
            ("Z8", "Z8"),
            ("F4", "F4"),
            ("Z4[x]/(2x,x^2)", "Z4[x]/(2x,x^2)"),
            ("Z4[x]/(x^2+x+1)", "Z4[x]/(x^2+x+1)"),
            ("Z2[x,y]/(x,y)^2", "Z2[x,y]/(x,y)^2"),
            ("Z2xF4", "Z2xF4"),
            ("Z2xZ2xZ2", "Z2xZ2xZ2"),
            ("Z4[x]/(2x,x^2-2)", "Z4[x]/(2x,x^2-2)"),
            ("F4[x]/(x^2)", "F4[x]/(x^2)"),
        ] {
            let spec = parse_ring_expression(text).unwrap_or_else(|e| panic!("{text}: {e}"));
            assert_eq!(spec.to_string(), display, "{text}");
        }
    }

    #[test]
    fn case_and_whitespace_insensitive() {
        let a = parse_ring_expression("z4[X]/( 2X , X^2 )").unwrap();
        let b = parse_ring_expression("Z4[x]/(2x,x^2)").unwrap();
        assert_eq!(a, b);
        let c = parse_ring_expression("Z2 x F4").unwrap();
        assert_eq!(c.to_string(), "Z2xF4");
    }

    #[test]
    fn quotient_parses_into_the_right_shape() {
        let spec = parse_ring_expression("Z4[x]/(2x,x^2)").unwrap();
        match spec {
            RingSpec::QuotientUnivariate { base, relations } => {
                assert_eq!(*base, RingSpec::Modular(4));
                assert_eq!(relations[0].coeffs(), &[0, 2]);
                assert_eq!(relations[1].coeffs(), &[0, 0, 1]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn product_parses_flat() {
        let spec = parse_ring_expression("Z2xZ2xZ2").unwrap();
        match spec {
            RingSpec::Product(f) => assert_eq!(f.len(), 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn errors_carry_positions() {
        // F6 is not a prime power.
        let err = parse_ring_expression("F6").unwrap_err();
        assert_eq!(err.position, 1);
        // Missing factor after the product separator.
        let err = parse_ring_expression("Z2x").unwrap_err();
        assert!(err.message.contains("'Z' or 'F'"));
        // Trailing garbage.
        assert!(parse_ring_expression("Z4)").is_err());
        // Z1 is not a ring with 0 != 1.
        assert!(parse_ring_expression("Z1").is_err());
        // Empty relation list.
        assert!(parse_ring_expression("Z4[x]/()").is_err());
    }

    #[test]
    fn negative_and_implicit_coefficients() {
        let spec = parse_ring_expression("Z4[x]/(x^2-2)").unwrap();
        match spec {
            RingSpec::QuotientUnivariate { relations, .. } => {
                assert_eq!(relations[0].coeffs(), &[-2, 0, 1]);
            }
            other => panic!("unexpected {other:?}"),
        }
        let spec = parse_ring_expression("Z2[x]/(x^3)").unwrap();
        match spec {
            RingSpec::QuotientUnivariate { relations, .. } => {
                assert_eq!(relations[0].coeffs(), &[0, 0, 0, 1]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
