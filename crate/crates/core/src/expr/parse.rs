use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Pow;

use super::{Expr, Func, Symbol};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown function '{name}' at position {pos}")]
    UnknownFunction { name: String, pos: usize },
}

impl ParseError {
    pub fn position(&self) -> usize {
        match self {
            ParseError::Syntax { pos, .. } | ParseError::UnknownFunction { pos, .. } => *pos,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigRational),
    Ident(String),
    Op(char),
    LParen,
    RParen,
    Comma,
    End,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

fn syntax(pos: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        pos,
        message: message.into(),
    }
}

impl<'a> Lexer<'a> {
    fn tokens(mut self) -> Result<Vec<(Tok, usize)>, ParseError> {
        let mut out = Vec::new();
        loop {
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
                self.pos += 1;
            }
            let start = self.pos;
            let Some(&c) = self.src.get(self.pos) else {
                out.push((Tok::End, start));
                return Ok(out);
            };
            let tok = match c {
                b'0'..=b'9' | b'.' => self.number()?,
                b'A'..=b'Z' | b'a'..=b'z' | b'_' => {
                    while self.src.get(self.pos).is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_') {
                        self.pos += 1;
                    }
                    Tok::Ident(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
                }
                b'+' | b'-' | b'*' | b'/' | b'^' => {
                    self.pos += 1;
                    Tok::Op(c as char)
                }
                b'(' => {
                    self.pos += 1;
                    Tok::LParen
                }
                b')' => {
                    self.pos += 1;
                    Tok::RParen
                }
                b',' => {
                    self.pos += 1;
                    Tok::Comma
                }
                _ => return Err(syntax(start, format!("unexpected character '{}'", c as char))),
            };
            out.push((tok, start));
        }
    }

    fn digits(&mut self) -> &'a [u8] {
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    /// Decimal literal converted to an exact rational.
    fn number(&mut self) -> Result<Tok, ParseError> {
        let start = self.pos;
        let int_part = self.digits();
        let mut frac_part: &[u8] = &[];
        if self.src.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            frac_part = self.digits();
        }
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(syntax(start, "malformed number"));
        }
        let mut exp10: i64 = -(frac_part.len() as i64);
        if matches!(self.src.get(self.pos), Some(b'e' | b'E')) {
            let save = self.pos;
            self.pos += 1;
            let neg = match self.src.get(self.pos) {
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                _ => false,
            };
            let ed = self.digits();
            if ed.is_empty() {
                // a bare exponent marker
                self.pos = save;
                return Err(syntax(save, "malformed exponent"));
            }
            let e: i64 = std::str::from_utf8(ed)
                .ok()
                .and_then(|s| s.parse().ok())
                .filter(|e: &i64| *e <= 4000)
                .ok_or_else(|| syntax(save, "exponent too large"))?;
            exp10 += if neg { -e } else { e };
        }
        let mut mantissa = String::from_utf8_lossy(int_part).into_owned();
        mantissa.push_str(&String::from_utf8_lossy(frac_part));
        let m: BigInt = mantissa.parse().map_err(|_| syntax(start, "malformed number"))?;
        let ten = BigInt::from(10);
        let value = if exp10 >= 0 {
            BigRational::from_integer(m * Pow::pow(&ten, exp10 as u64))
        } else {
            BigRational::new(m, Pow::pow(&ten, (-exp10) as u64))
        };
        Ok(Tok::Num(value))
    }
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    i: usize,
}

const BP_SUM: u8 = 1;
const BP_PRODUCT: u8 = 2;
const BP_NEG: u8 = 3;
const BP_POW: u8 = 4;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].0
    }

    fn pos(&self) -> usize {
        self.toks[self.i].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.i].clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(syntax(self.pos(), format!("expected {what}")))
        }
    }

    fn expr(&mut self, min_bp: u8) -> Result<Expr, ParseError> {
        let mut lhs = self.prefix()?;
        loop {
            let (op, lbp, rbp) = match self.peek() {
                Tok::Op('+') => ('+', BP_SUM, BP_SUM + 1),
                Tok::Op('-') => ('-', BP_SUM, BP_SUM + 1),
                Tok::Op('*') => ('*', BP_PRODUCT, BP_PRODUCT + 1),
                Tok::Op('/') => ('/', BP_PRODUCT, BP_PRODUCT + 1),
                Tok::Op('^') => ('^', BP_POW, BP_POW),
                _ => break,
            };
            if lbp < min_bp {
                break;
            }
            self.bump();
            let rhs = self.expr(rbp)?;
            lhs = match op {
                '+' => lhs + rhs,
                '-' => lhs - rhs,
                '*' => lhs * rhs,
                '/' => lhs / rhs,
                _ => lhs.pow(&rhs),
            };
        }
        Ok(lhs)
    }

    fn prefix(&mut self) -> Result<Expr, ParseError> {
        let (tok, pos) = self.bump();
        match tok {
            Tok::Num(r) => Ok(Expr::rational(r)),
            Tok::Op('-') => Ok(-self.expr(BP_NEG)?),
            Tok::Op('+') => self.expr(BP_NEG),
            Tok::LParen => {
                let e = self.expr(0)?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::Ident(name) => {
                if *self.peek() == Tok::LParen {
                    self.bump();
                    return self.call(&name, pos);
                }
                Ok(match name.as_str() {
                    "I" => Expr::imag_unit(),
                    "pi" => Expr::pi(),
                    _ => Expr::symbol(&name),
                })
            }
            Tok::End => Err(syntax(pos, "unexpected end of input")),
            other => Err(syntax(pos, format!("unexpected token {other:?}"))),
        }
    }

    fn call(&mut self, name: &str, pos: usize) -> Result<Expr, ParseError> {
        if name == "int" {
            let integrand = self.expr(0)?;
            self.expect(Tok::Comma, "','")?;
            let (tok, vpos) = self.bump();
            let Tok::Ident(v) = tok else {
                return Err(syntax(vpos, "expected integration variable"));
            };
            let var = Symbol::new(&v);
            let upper = if *self.peek() == Tok::Comma {
                self.bump();
                self.expr(0)?
            } else {
                Expr::sym(&var)
            };
            self.expect(Tok::RParen, "')'")?;
            return Ok(Expr::integral(integrand, &var, upper));
        }
        let f = Func::from_name(name).ok_or_else(|| ParseError::UnknownFunction {
            name: name.to_string(),
            pos,
        })?;
        let arg = self.expr(0)?;
        self.expect(Tok::RParen, "')'")?;
        Ok(Expr::apply(f, arg))
    }
}

/// Parses the ASCII expression grammar into a normalized [`Expr`].
///
/// `int(f, s)` is `∫₀^s f ds`; the three-argument form `int(f, s, u)` sets the
/// upper limit to `u`. Decimal literals are read as exact rationals.
pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let toks = Lexer {
        src: text.as_bytes(),
        pos: 0,
    }
    .tokens()?;
    let mut p = Parser { toks, i: 0 };
    let e = p.expr(0)?;
    if *p.peek() != Tok::End {
        return Err(syntax(p.pos(), "unexpected trailing input"));
    }
    Ok(e)
}
