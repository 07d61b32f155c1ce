//! Minimal arithmetic expressions for user-supplied model data.
//!
//! Grammar: numbers, one variable (`x` or `n`), `pi`, `+ - * / ^`, unary minus,
//! parentheses and the functions `exp log sin cos sinh cosh tanh sqrt`.
//! `^` binds tighter than unary minus and is right-associative.
//! Expressions can be differentiated symbolically, which is what lets
//! custom models carry exact `w'`, `w''`, `η'`, `η''`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Exp,
    Log,
    Sin,
    Cos,
    Sinh,
    Cosh,
    Tanh,
    Sqrt,
}

impl Func {
    fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "exp" => Func::Exp,
            "log" => Func::Log,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "sinh" => Func::Sinh,
            "cosh" => Func::Cosh,
            "tanh" => Func::Tanh,
            "sqrt" => Func::Sqrt,
            _ => return None,
        })
    }

    fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Tanh => "tanh",
            Func::Sqrt => "sqrt",
        }
    }

    fn apply(self, v: f64) -> f64 {
        match self {
            Func::Exp => v.exp(),
            Func::Log => v.ln(),
            Func::Sin => v.sin(),
            Func::Cos => v.cos(),
            Func::Sinh => v.sinh(),
            Func::Cosh => v.cosh(),
            Func::Tanh => v.tanh(),
            Func::Sqrt => v.sqrt(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    Var,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

impl Expr {
    /// Parse `src`, accepting `var` as the only free variable.
    pub fn parse(src: &str, var: &str) -> Result<Expr> {
        let tokens = tokenize(src)?;
        let mut p = Parser {
            tokens,
            pos: 0,
            var,
            len: src.len(),
        };
        let e = p.expr()?;
        if let Some(t) = p.peek() {
            return Err(Error::Parse {
                position: t.pos,
                message: format!("unexpected {}", t.kind),
            });
        }
        Ok(e)
    }

    pub fn eval(&self, v: f64) -> f64 {
        match self {
            Expr::Num(c) => *c,
            Expr::Var => v,
            Expr::Neg(a) => -a.eval(v),
            Expr::Add(a, b) => a.eval(v) + b.eval(v),
            Expr::Sub(a, b) => a.eval(v) - b.eval(v),
            Expr::Mul(a, b) => a.eval(v) * b.eval(v),
            Expr::Div(a, b) => a.eval(v) / b.eval(v),
            Expr::Pow(a, b) => pow(a.eval(v), b.eval(v)),
            Expr::Call(f, a) => f.apply(a.eval(v)),
        }
    }

    fn is_const(&self) -> bool {
        match self {
            Expr::Num(_) => true,
            Expr::Var => false,
            Expr::Neg(a) | Expr::Call(_, a) => a.is_const(),
            Expr::Add(a, b)
            | Expr::Sub(a, b)
            | Expr::Mul(a, b)
            | Expr::Div(a, b)
            | Expr::Pow(a, b) => a.is_const() && b.is_const(),
        }
    }

    /// Symbolic derivative with respect to the variable.
    pub fn derivative(&self) -> Expr {
        use Expr::*;
        if self.is_const() {
            return Num(0.0);
        }
        match self {
            Num(_) => Num(0.0),
            Var => Num(1.0),
            Neg(a) => neg(a.derivative()),
            Add(a, b) => add(a.derivative(), b.derivative()),
            Sub(a, b) => sub(a.derivative(), b.derivative()),
            Mul(a, b) => add(
                mul(a.derivative(), (**b).clone()),
                mul((**a).clone(), b.derivative()),
            ),
            Div(a, b) => div(
                sub(
                    mul(a.derivative(), (**b).clone()),
                    mul((**a).clone(), b.derivative()),
                ),
                Pow(b.clone(), Box::new(Num(2.0))),
            ),
            Pow(a, b) if b.is_const() => {
                let c = b.eval(0.0);
                mul(
                    mul(Num(c), Pow(a.clone(), Box::new(Num(c - 1.0)))),
                    a.derivative(),
                )
            }
            Pow(a, b) => {
                // d(a^b) = a^b (b' log a + b a'/a)
                mul(
                    self.clone(),
                    add(
                        mul(b.derivative(), Call(Func::Log, a.clone())),
                        div(mul((**b).clone(), a.derivative()), (**a).clone()),
                    ),
                )
            }
            Call(f, a) => {
                let inner = a.derivative();
                let outer = match f {
                    Func::Exp => self.clone(),
                    Func::Log => div(Num(1.0), (**a).clone()),
                    Func::Sin => Call(Func::Cos, a.clone()),
                    Func::Cos => neg(Call(Func::Sin, a.clone())),
                    Func::Sinh => Call(Func::Cosh, a.clone()),
                    Func::Cosh => Call(Func::Sinh, a.clone()),
                    Func::Tanh => sub(Num(1.0), Pow(Box::new(self.clone()), Box::new(Num(2.0)))),
                    Func::Sqrt => div(Num(0.5), self.clone()),
                };
                mul(outer, inner)
            }
        }
    }
}

fn pow(a: f64, b: f64) -> f64 {
    if b.fract() == 0.0 && b.abs() < 1024.0 {
        a.powi(b as i32)
    } else {
        a.powf(b)
    }
}

fn neg(a: Expr) -> Expr {
    match a {
        Expr::Num(c) => Expr::Num(-c),
        other => Expr::Neg(Box::new(other)),
    }
}

fn add(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (Expr::Num(x), Expr::Num(y)) => Expr::Num(x + y),
        (Expr::Num(z), e) | (e, Expr::Num(z)) if z == 0.0 => e,
        (a, b) => Expr::Add(Box::new(a), Box::new(b)),
    }
}

fn sub(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (Expr::Num(x), Expr::Num(y)) => Expr::Num(x - y),
        (e, Expr::Num(z)) if z == 0.0 => e,
        (Expr::Num(z), e) if z == 0.0 => neg(e),
        (a, b) => Expr::Sub(Box::new(a), Box::new(b)),
    }
}

fn mul(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (Expr::Num(x), Expr::Num(y)) => Expr::Num(x * y),
        (Expr::Num(z), _) | (_, Expr::Num(z)) if z == 0.0 => Expr::Num(0.0),
        (Expr::Num(o), e) | (e, Expr::Num(o)) if o == 1.0 => e,
        (a, b) => Expr::Mul(Box::new(a), Box::new(b)),
    }
}

fn div(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (Expr::Num(z), _) if z == 0.0 => Expr::Num(0.0),
        (e, Expr::Num(o)) if o == 1.0 => e,
        (a, b) => Expr::Div(Box::new(a), Box::new(b)),
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(c) => write!(f, "{c}"),
            Expr::Var => write!(f, "v"),
            Expr::Neg(a) => write!(f, "(-{a})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Div(a, b) => write!(f, "({a} / {b})"),
            Expr::Pow(a, b) => write!(f, "({a} ^ {b})"),
            Expr::Call(func, a) => write!(f, "{}({a})", func.name()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum TokenKind {
    Num(f64),
    Ident(String),
    Op(char),
    LParen,
    RParen,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenKind::Num(c) => write!(f, "number {c}"),
            TokenKind::Ident(s) => write!(f, "identifier '{s}'"),
            TokenKind::Op(c) => write!(f, "'{c}'"),
            TokenKind::LParen => write!(f, "'('"),
            TokenKind::RParen => write!(f, "')'"),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    kind: TokenKind,
    pos: usize,
}

fn tokenize(src: &str) -> Result<Vec<Token>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        if c.is_ascii_digit() || c == '.' {
            while i < bytes.len() && ((bytes[i] as char).is_ascii_digit() || bytes[i] == b'.') {
                i += 1;
            }
            if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                let mut j = i + 1;
                if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                    j += 1;
                }
                if j < bytes.len() && bytes[j].is_ascii_digit() {
                    i = j;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let text = &src[start..i];
            let v: f64 = text.parse().map_err(|_| Error::Parse {
                position: start,
                message: format!("malformed number '{text}'"),
            })?;
            out.push(Token {
                kind: TokenKind::Num(v),
                pos: start,
            });
        } else if c.is_ascii_alphabetic() || c == '_' {
            while i < bytes.len() && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push(Token {
                kind: TokenKind::Ident(src[start..i].to_string()),
                pos: start,
            });
        } else {
            let kind = match c {
                '+' | '-' | '*' | '/' | '^' => TokenKind::Op(c),
                '(' => TokenKind::LParen,
                ')' => TokenKind::RParen,
                _ => {
                    return Err(Error::Parse {
                        position: start,
                        message: format!("unexpected character '{c}'"),
                    })
                }
            };
            i += c.len_utf8();
            out.push(Token { kind, pos: start });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    var: &'a str,
    len: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat_op(&mut self, op: char) -> bool {
        if matches!(self.peek(), Some(Token { kind: TokenKind::Op(c), .. }) if *c == op) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn end_error(&self, what: &str) -> Error {
        Error::Parse {
            position: self.len,
            message: format!("unexpected end of input, expected {what}"),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat_op('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat_op('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat_op('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat_op('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat_op('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat_op('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat_op('^') {
            let exp = self.unary()?;
            return Ok(Expr::Pow(Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let tok = self.peek().cloned().ok_or_else(|| self.end_error("a value"))?;
        self.pos += 1;
        match tok.kind {
            TokenKind::Num(v) => Ok(Expr::Num(v)),
            TokenKind::LParen => {
                let e = self.expr()?;
                self.expect_rparen()?;
                Ok(e)
            }
            TokenKind::Ident(name) => {
                if name == self.var {
                    return Ok(Expr::Var);
                }
                if name == "pi" {
                    return Ok(Expr::Num(std::f64::consts::PI));
                }
                let func = Func::from_name(&name).ok_or_else(|| Error::Parse {
                    position: tok.pos,
                    message: format!("unknown identifier '{name}' (variable is '{}')", self.var),
                })?;
                match self.peek() {
                    Some(Token {
                        kind: TokenKind::LParen,
                        ..
                    }) => self.pos += 1,
                    Some(t) => {
                        return Err(Error::Parse {
                            position: t.pos,
                            message: format!("expected '(' after {name}"),
                        })
                    }
                    None => return Err(self.end_error("'('")),
                }
                let arg = self.expr()?;
                self.expect_rparen()?;
                Ok(Expr::Call(func, Box::new(arg)))
            }
            other => Err(Error::Parse {
                position: tok.pos,
                message: format!("unexpected {other}"),
            }),
        }
    }

    fn expect_rparen(&mut self) -> Result<()> {
        match self.peek() {
            Some(Token {
                kind: TokenKind::RParen,
                ..
            }) => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => Err(Error::Parse {
                position: t.pos,
                message: format!("expected ')', found {}", t.kind),
            }),
            None => Err(self.end_error("')'")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn eval(src: &str, x: f64) -> f64 {
        Expr::parse(src, "x").unwrap().eval(x)
    }

    #[test]
    fn precedence_and_associativity() {
        assert_abs_diff_eq!(eval("1 + 2 * 3", 0.0), 7.0);
        assert_abs_diff_eq!(eval("2 ^ 3 ^ 2", 0.0), 512.0);
        assert_abs_diff_eq!(eval("-x^2", 3.0), -9.0);
        assert_abs_diff_eq!(eval("(1 - x) / 2", 5.0), -2.0);
        assert_abs_diff_eq!(eval("x^2/2 - 1.5e-1*log(x)", 2.0), 2.0 - 0.15 * 2.0_f64.ln());
        assert_abs_diff_eq!(eval("2*pi", 0.0), 2.0 * std::f64::consts::PI);
    }

    #[test]
    fn derivatives() {
        let cases: &[(&str, fn(f64) -> f64)] = &[
            ("x^2/2", |x| x),
            ("3*log(cosh(x))", |x| 3.0 * x.tanh()),
            ("sinh(x)", |x| x.cosh()),
            ("sqrt(1 + x^2)", |x| x / (1.0 + x * x).sqrt()),
            ("x^x", |x| x.powf(x) * (x.ln() + 1.0)),
            ("tanh(2*x)", |x| 2.0 / (2.0 * x).cosh().powi(2)),
            ("exp(-x)*sin(x)/cos(x)", |x| {
                (-x).exp() * (-(x.tan()) + 1.0 / x.cos().powi(2))
            }),
        ];
        for (src, d) in cases {
            let e = Expr::parse(src, "x").unwrap().derivative();
            for &x in &[0.3, 0.9, 1.7] {
                assert_abs_diff_eq!(e.eval(x), d(x), epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn parse_errors_carry_position() {
        match Expr::parse("1 + * x", "x") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 4),
            other => panic!("{other:?}"),
        }
        match Expr::parse("sin x", "x") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 4),
            other => panic!("{other:?}"),
        }
        match Expr::parse("(x + 1", "x") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 6),
            other => panic!("{other:?}"),
        }
        match Expr::parse("2*y", "x") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 2),
            other => panic!("{other:?}"),
        }
        assert!(matches!(Expr::parse("x $ 2", "x"), Err(Error::Parse { position: 2, .. })));
    }

    #[test]
    fn variable_n() {
        let e = Expr::parse("(n + 1.5)^2", "n").unwrap();
        assert_abs_diff_eq!(e.eval(2.0), 12.25);
        assert!(Expr::parse("x", "n").is_err());
    }
}
