//! Ring specifications and their text grammar.
//!
//! ```text
//! spec := term ( '*' term )*
//! term := 'GF(' INT ')' [ '[' IDENT ']' '/' '(' poly ')' ]
//! poly := mono ( ('+'|'-') mono )*
//! mono := INT | [INT '*'] IDENT [ '^' INT ]
//! ```
//!
//! Whitespace between tokens is ignored. `*` between terms is the direct
//! product and associates to the left.

use std::fmt;

use thiserror::Error;

use crate::poly::{is_prime, Polynomial};

/// Largest exponent accepted in a polynomial expression.
pub const MAX_EXPONENT: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingSpec {
    PrimeField {
        p: u32,
    },
    /// `GF(p)[var]/(modulus)`; the modulus has degree at least one.
    PolyQuotient {
        p: u32,
        var: String,
        modulus: Polynomial,
    },
    Product(Box<RingSpec>, Box<RingSpec>),
}

impl RingSpec {
    pub fn product(left: RingSpec, right: RingSpec) -> Self {
        RingSpec::Product(Box::new(left), Box::new(right))
    }

    /// Number of elements of the described ring, or `None` on overflow.
    pub fn cardinality(&self) -> Option<u64> {
        match self {
            RingSpec::PrimeField { p } => Some(u64::from(*p)),
            RingSpec::PolyQuotient { p, modulus, .. } => {
                let d = u32::try_from(modulus.degree()?).ok()?;
                u64::from(*p).checked_pow(d)
            }
            RingSpec::Product(l, r) => l.cardinality()?.checked_mul(r.cardinality()?),
        }
    }
}

/// Canonical text form: reduced modulus, no whitespace.
///
/// Right-nested products print without grouping, since the grammar has none.
impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::PrimeField { p } => write!(f, "GF({p})"),
            RingSpec::PolyQuotient { p, var, modulus } => {
                write!(f, "GF({p})[{var}]/({})", modulus.display_with(var))
            }
            RingSpec::Product(l, r) => write!(f, "{l}*{r}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("syntax error at offset {position}: expected {}, found {found}", expected.join(" or "))]
    Syntax {
        position: usize,
        expected: Vec<String>,
        found: String,
    },
    #[error("GF({p}) at offset {position}: {p} is not prime")]
    NotPrime { p: u64, position: usize },
    #[error("modulus at offset {position} must have degree at least 1")]
    DegenerateModulus { position: usize },
    #[error("unknown indeterminate `{found}` at offset {position}, expected `{expected}`")]
    UnknownVariable {
        found: String,
        expected: String,
        position: usize,
    },
    #[error("integer at offset {position} is too large")]
    Overflow { position: usize },
}

impl SpecError {
    /// Byte offset into the input where the problem was detected.
    pub fn position(&self) -> usize {
        match self {
            SpecError::Syntax { position, .. }
            | SpecError::NotPrime { position, .. }
            | SpecError::DegenerateModulus { position }
            | SpecError::UnknownVariable { position, .. }
            | SpecError::Overflow { position } => *position,
        }
    }
}

/// Parses `text` into a [`RingSpec`].
pub fn parse_ring_spec(text: &str) -> Result<RingSpec, SpecError> {
    let mut parser = Parser::new(text)?;
    let spec = parser.spec()?;
    parser.expect_end()?;
    Ok(spec)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Int(u64),
    Ident(String),
    Sym(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "integer {n}"),
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Sym(c) => write!(f, "'{c}'"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, SpecError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c.is_ascii_digit() {
            let mut value: u64 = 0;
            while let Some(&(_, d)) = chars.peek() {
                let Some(digit) = d.to_digit(10) else { break };
                value = value
                    .checked_mul(10)
                    .and_then(|v| v.checked_add(u64::from(digit)))
                    .ok_or(SpecError::Overflow { position: pos })?;
                chars.next();
            }
            out.push((Tok::Int(value), pos));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut ident = String::new();
            while let Some(&(_, d)) = chars.peek() {
                if d.is_ascii_alphanumeric() || d == '_' {
                    ident.push(d);
                    chars.next();
                } else {
                    break;
                }
            }
            out.push((Tok::Ident(ident), pos));
        } else if "()[]/*+-^,".contains(c) {
            out.push((Tok::Sym(c), pos));
            chars.next();
        } else {
            return Err(SpecError::Syntax {
                position: pos,
                expected: vec!["a token".into()],
                found: format!("'{c}'"),
            });
        }
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

/// Token cursor shared by the spec grammar and the element-name grammar.
pub(crate) struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
}

impl Parser {
    pub(crate) fn new(text: &str) -> Result<Self, SpecError> {
        Ok(Self {
            toks: lex(text)?,
            at: 0,
        })
    }

    pub(crate) fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    pub(crate) fn position(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    pub(crate) fn error(&self, expected: &[&str]) -> SpecError {
        SpecError::Syntax {
            position: self.position(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().to_string(),
        }
    }

    pub(crate) fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, c: char) -> Result<(), SpecError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&[&format!("'{c}'")]))
        }
    }

    pub(crate) fn expect_end(&self) -> Result<(), SpecError> {
        match self.peek() {
            Tok::End => Ok(()),
            _ => Err(self.error(&["end of input"])),
        }
    }

    pub(crate) fn int(&mut self) -> Result<u64, SpecError> {
        match self.peek() {
            Tok::Int(n) => {
                let n = *n;
                self.bump();
                Ok(n)
            }
            _ => Err(self.error(&["integer"])),
        }
    }

    fn ident(&mut self) -> Result<String, SpecError> {
        match self.peek() {
            Tok::Ident(s) => {
                let s = s.clone();
                self.bump();
                Ok(s)
            }
            _ => Err(self.error(&["identifier"])),
        }
    }

    fn spec(&mut self) -> Result<RingSpec, SpecError> {
        let mut acc = self.term()?;
        while self.eat('*') {
            let rhs = self.term()?;
            acc = RingSpec::product(acc, rhs);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RingSpec, SpecError> {
        match self.peek() {
            Tok::Ident(s) if s == "GF" => {
                self.bump();
            }
            _ => return Err(self.error(&["`GF`"])),
        }
        self.expect('(')?;
        let p_pos = self.position();
        let p = self.int()?;
        if !is_prime(p) {
            return Err(SpecError::NotPrime { p, position: p_pos });
        }
        let p = u32::try_from(p).map_err(|_| SpecError::Overflow { position: p_pos })?;
        self.expect(')')?;
        if !self.eat('[') {
            return Ok(RingSpec::PrimeField { p });
        }
        let var = self.ident()?;
        self.expect(']')?;
        self.expect('/')?;
        self.expect('(')?;
        let mod_pos = self.position();
        let modulus = self.poly(p, Some(&var))?;
        self.expect(')')?;
        if modulus.degree().unwrap_or(0) == 0 {
            return Err(SpecError::DegenerateModulus { position: mod_pos });
        }
        Ok(RingSpec::PolyQuotient { p, var, modulus })
    }

    /// `poly := mono (('+'|'-') mono)*`. With `var == None` only constants are accepted.
    pub(crate) fn poly(&mut self, p: u32, var: Option<&str>) -> Result<Polynomial, SpecError> {
        let mut acc = self.mono(p, var)?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.mono(p, var)?);
            } else if self.eat('-') {
                acc = acc.sub(&self.mono(p, var)?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn mono(&mut self, p: u32, var: Option<&str>) -> Result<Polynomial, SpecError> {
        let coeff = match self.peek() {
            Tok::Int(n) => {
                let c = (*n % u64::from(p)) as u32;
                self.bump();
                if var.is_none() || !self.eat('*') {
                    return Ok(Polynomial::monomial(p, c, 0));
                }
                c
            }
            Tok::Ident(_) if var.is_some() => 1,
            _ if var.is_some() => return Err(self.error(&["integer", "indeterminate"])),
            _ => return Err(self.error(&["integer"])),
        };
        let expected = var.unwrap_or_default();
        let pos = self.position();
        let name = self.ident()?;
        if name != expected {
            return Err(SpecError::UnknownVariable {
                found: name,
                expected: expected.to_string(),
                position: pos,
            });
        }
        let degree = if self.eat('^') {
            let pos = self.position();
            let e = self.int()?;
            if e > MAX_EXPONENT {
                return Err(SpecError::Overflow { position: pos });
            }
            e as usize
        } else {
            1
        };
        Ok(Polynomial::monomial(p, coeff, degree))
    }
}
