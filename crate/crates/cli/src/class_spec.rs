//! Text syntax for tautological classes.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := power ('*' power)*
//! power  := atom ('^' int)*
//! atom   := int | 'c' int ['^' 'dual'] | 'theta' int | 'eta' int | '(' expr ')'
//! ```
//!
//! `c{k}` is the `k`-th Chern class of `W ⊗ O^{[d]}` and `c{k}^dual` that of
//! its dual, so `c2^dual^3` is the cube of the dual class.

use nahilb_algebra::{BigInt, BigRational, Poly};
use nahilb_localization::{chern_taut, eta, theta, TautClass};

use crate::error::CliError;

/// Largest total degree a parsed class may reach.
pub const MAX_DEGREE: u32 = 24;
/// Largest number of terms in any intermediate polynomial.
pub const MAX_TERMS: usize = 5_000;
/// Largest number of term pairs a single multiplication may combine.
const MAX_PAIRS: usize = 100_000;
/// Largest bit length of a coefficient's numerator plus denominator.
pub const MAX_COEFF_BITS: u64 = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Int(BigInt),
    Ident(String, u32),
    Dual,
    Plus,
    Minus,
    Star,
    Caret,
    Open,
    Close,
}

fn tokenize(text: &str) -> Result<Vec<Token>, CliError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let single = match b {
            b'+' => Some(Token::Plus),
            b'-' => Some(Token::Minus),
            b'*' => Some(Token::Star),
            b'^' => Some(Token::Caret),
            b'(' => Some(Token::Open),
            b')' => Some(Token::Close),
            _ => None,
        };
        if let Some(t) = single {
            out.push(t);
            i += 1;
        } else if b.is_ascii_whitespace() {
            i += 1;
        } else if b.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let digits = &text[start..i];
            if digits.len() > 40 {
                return Err(CliError::Parse(format!("integer literal {digits} is too long")));
            }
            out.push(Token::Int(digits.parse().expect("ascii digits")));
        } else if b.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_alphabetic() {
                i += 1;
            }
            let name = &text[start..i];
            let digits_start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let digits = &text[digits_start..i];
            match (name, digits.is_empty()) {
                ("dual", true) => out.push(Token::Dual),
                ("c" | "theta" | "eta", false) => {
                    let index = digits
                        .parse()
                        .map_err(|_| CliError::Parse(format!("index {digits} out of range")))?;
                    out.push(Token::Ident(name.to_string(), index));
                }
                _ => return Err(CliError::Parse(format!("unknown symbol '{}'", &text[start..i]))),
            }
        } else {
            return Err(CliError::Parse(format!("unexpected character {:?} at byte {i}", b as char)));
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    q: usize,
    d: usize,
}

fn degree(p: &Poly) -> u32 {
    p.total_degree().unwrap_or(0)
}

fn too_large() -> CliError {
    CliError::Parse(format!("expansion exceeds {MAX_TERMS} terms"))
}

fn check_size(p: &Poly) -> Result<(), CliError> {
    if p.len() > MAX_TERMS {
        return Err(too_large());
    }
    let bits = p.terms().map(|(_, c)| c.numer().bits() + c.denom().bits()).max().unwrap_or(0);
    if bits > MAX_COEFF_BITS {
        return Err(CliError::Parse(format!("a coefficient exceeds {MAX_COEFF_BITS} bits")));
    }
    Ok(())
}

fn checked_mul(a: &Poly, b: &Poly) -> Result<Poly, CliError> {
    if a.len().saturating_mul(b.len()) > MAX_PAIRS {
        return Err(too_large());
    }
    let out = a * b;
    check_size(&out)?;
    Ok(out)
}

/// Repeated multiplication with a size check after every step. Only a
/// constant base can meet a large exponent past the degree guard, and that
/// case uses square-and-multiply.
fn checked_pow(base: &Poly, mut e: u32) -> Result<Poly, CliError> {
    let mut acc = Poly::one();
    if degree(base) > 0 {
        for _ in 0..e {
            acc = checked_mul(&acc, base)?;
        }
        return Ok(acc);
    }
    let mut square = base.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = checked_mul(&acc, &square)?;
        }
        e >>= 1;
        if e > 0 {
            square = checked_mul(&square, &square)?;
        }
    }
    Ok(acc)
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, t: &Token) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly, CliError> {
        let negate = self.eat(&Token::Minus);
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            if self.eat(&Token::Plus) {
                acc += self.term()?;
            } else if self.eat(&Token::Minus) {
                acc -= &self.term()?;
            } else {
                return Ok(acc);
            }
            check_size(&acc)?;
        }
    }

    fn term(&mut self) -> Result<Poly, CliError> {
        let mut acc = self.power()?;
        while self.eat(&Token::Star) {
            let rhs = self.power()?;
            if degree(&acc) + degree(&rhs) > MAX_DEGREE {
                return Err(CliError::Parse(format!("degree exceeds {MAX_DEGREE}")));
            }
            acc = checked_mul(&acc, &rhs)?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Poly, CliError> {
        let mut base = self.atom()?;
        while self.eat(&Token::Caret) {
            let Some(Token::Int(e)) = self.peek().cloned() else {
                return Err(CliError::Parse("expected an integer exponent after '^'".into()));
            };
            self.pos += 1;
            let e: u32 = u32::try_from(&e).map_err(|_| CliError::Parse(format!("exponent {e} is too large")))?;
            if u64::from(degree(&base)) * u64::from(e) > u64::from(MAX_DEGREE) {
                return Err(CliError::Parse(format!("degree exceeds {MAX_DEGREE}")));
            }
            base = checked_pow(&base, e)?;
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly, CliError> {
        let token = self
            .peek()
            .cloned()
            .ok_or_else(|| CliError::Parse("unexpected end of input".into()))?;
        self.pos += 1;
        match token {
            Token::Int(v) => Ok(Poly::constant(BigRational::from_integer(v))),
            Token::Open => {
                let inner = self.expr()?;
                if !self.eat(&Token::Close) {
                    return Err(CliError::Parse("missing ')'".into()));
                }
                Ok(inner)
            }
            Token::Ident(name, index) => self.symbol(&name, index as usize),
            other => Err(CliError::Parse(format!("unexpected token {other:?}"))),
        }
    }

    fn symbol(&mut self, name: &str, index: usize) -> Result<Poly, CliError> {
        match name {
            "theta" if (1..=self.q).contains(&index) => Ok(Poly::var(theta(index))),
            "theta" => Err(CliError::Parse(format!("theta{index} needs 1 <= index <= q = {}", self.q))),
            "eta" if (1..self.d).contains(&index) => Ok(Poly::var(eta(index))),
            "eta" => Err(CliError::Parse(format!("eta{index} needs 1 <= index < d = {}", self.d))),
            _ => {
                let dual = self.tokens.get(self.pos) == Some(&Token::Caret)
                    && self.tokens.get(self.pos + 1) == Some(&Token::Dual);
                if dual {
                    self.pos += 2;
                }
                Ok(chern_taut(index, self.q, self.d, dual)?.poly().clone())
            }
        }
    }
}

/// Parses the polynomial without any symmetry check.
pub fn parse_class_poly(text: &str, q: usize, d: usize) -> Result<Poly, CliError> {
    if d == 0 {
        return Err(CliError::Parse("d must be positive".into()));
    }
    let mut parser = Parser {
        tokens: tokenize(text)?,
        pos: 0,
        q,
        d,
    };
    if parser.tokens.is_empty() {
        return Err(CliError::Parse("empty class".into()));
    }
    let poly = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(CliError::Parse(format!("trailing input at token {}", parser.pos + 1)));
    }
    Ok(poly)
}

/// Parses a class for the nested Hilbert scheme with layer sizes `dims` and
/// checks its symmetry.
pub fn parse_class_spec(text: &str, q: usize, dims: &[usize]) -> Result<TautClass, CliError> {
    let poly = parse_class_poly(text, q, dims.iter().sum())?;
    Ok(TautClass::with_blocks(poly, q, dims)?)
}
