//! A small expression language for describing test functions of one
//! variable `t`: constants, `+ - * /`, integer powers `^`, and the calls
//! `sin`, `cos`, `exp`, `log`.
//!
//! Grammar (whitespace insignificant, no implicit multiplication):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | power
//! power  := atom ('^' INT)?
//! atom   := NUMBER | 't' | IDENT '(' expr ')' | '(' expr ')'
//! ```
//!
//! `^` binds tighter than unary minus (`-t^2` is `-(t^2)`), binary operators
//! associate left, and exponents are non-negative integer literals, which
//! keeps every expression smooth on its domain.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::calculus::RealFunction;

/// The functions the language knows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnaryFn {
    Sin,
    Cos,
    Exp,
    Log,
}

impl UnaryFn {
    pub fn name(self) -> &'static str {
        match self {
            UnaryFn::Sin => "sin",
            UnaryFn::Cos => "cos",
            UnaryFn::Exp => "exp",
            UnaryFn::Log => "log",
        }
    }

    fn from_name(name: &str) -> Option<Self> {
        match name {
            "sin" => Some(UnaryFn::Sin),
            "cos" => Some(UnaryFn::Cos),
            "exp" => Some(UnaryFn::Exp),
            "log" => Some(UnaryFn::Log),
            _ => None,
        }
    }
}

/// Parsed abstract syntax tree of a test function.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(f64),
    Var,
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Call(UnaryFn, Box<Expr>),
}

#[derive(Debug, Error, PartialEq)]
pub enum ParseError {
    #[error("syntax error at {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown function '{name}' at {position}")]
    UnknownFunction { name: String, position: usize },
}

#[derive(Debug, Error, PartialEq)]
pub enum EvalError {
    #[error("domain error at t = {t}: {reason}")]
    Domain { t: f64, reason: &'static str },
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(Token, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                tokens.push((Token::Plus, i));
                i += 1;
            }
            '-' => {
                tokens.push((Token::Minus, i));
                i += 1;
            }
            '*' => {
                tokens.push((Token::Star, i));
                i += 1;
            }
            '/' => {
                tokens.push((Token::Slash, i));
                i += 1;
            }
            '^' => {
                tokens.push((Token::Caret, i));
                i += 1;
            }
            '(' => {
                tokens.push((Token::LParen, i));
                i += 1;
            }
            ')' => {
                tokens.push((Token::RParen, i));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'.' {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
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
                let lit = &text[start..i];
                let value = lit.parse::<f64>().map_err(|_| ParseError::Syntax {
                    position: start,
                    message: format!("bad number literal '{lit}'"),
                })?;
                tokens.push((Token::Number(value), start));
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                tokens.push((Token::Ident(text[start..i].to_string()), start));
            }
            _ => {
                return Err(ParseError::Syntax {
                    position: i,
                    message: format!("unexpected character '{c}'"),
                })
            }
        }
    }
    Ok(tokens)
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|&(_, p)| p)
            .unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            position: self.here(),
            message: message.into(),
        })
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Token::Minus) => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Some(Token::Slash) => {
                    self.bump();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if matches!(self.peek(), Some(Token::Minus)) {
            self.bump();
            let inner = self.factor()?;
            // Fold the sign into numeric literals; otherwise scale by -1.
            return Ok(match inner {
                Expr::Const(c) => Expr::Const(-c),
                other => Expr::Mul(Box::new(Expr::Const(-1.0)), Box::new(other)),
            });
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Token::Caret)) {
            self.bump();
            let at = self.here();
            match self.bump() {
                Some(Token::Number(n)) => {
                    if n.fract() != 0.0 || n < 0.0 || n > u32::MAX as f64 {
                        return Err(ParseError::Syntax {
                            position: at,
                            message: "exponent must be a non-negative integer".into(),
                        });
                    }
                    Ok(Expr::Pow(Box::new(base), n as u32))
                }
                _ => Err(ParseError::Syntax {
                    position: at,
                    message: "exponent must be a non-negative integer".into(),
                }),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let at = self.here();
        match self.bump() {
            Some(Token::Number(n)) => Ok(Expr::Const(n)),
            Some(Token::Ident(name)) => {
                if matches!(self.peek(), Some(Token::LParen)) {
                    let func = UnaryFn::from_name(&name).ok_or(ParseError::UnknownFunction {
                        name: name.clone(),
                        position: at,
                    })?;
                    self.bump(); // '('
                    let arg = self.expr()?;
                    match self.bump() {
                        Some(Token::RParen) => Ok(Expr::Call(func, Box::new(arg))),
                        _ => Err(ParseError::Syntax {
                            position: self.here().min(self.end),
                            message: "expected ')'".into(),
                        }),
                    }
                } else if name == "t" {
                    Ok(Expr::Var)
                } else {
                    Err(ParseError::Syntax {
                        position: at,
                        message: format!("unknown name '{name}' (the variable is 't')"),
                    })
                }
            }
            Some(Token::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Token::RParen) => Ok(inner),
                    _ => Err(ParseError::Syntax {
                        position: self.here().min(self.end),
                        message: "expected ')'".into(),
                    }),
                }
            }
            _ => Err(ParseError::Syntax {
                position: at,
                message: "expected a value".into(),
            }),
        }
    }
}

/// Parses `text` into an [`Expr`].
pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(ParseError::Syntax {
            position: 0,
            message: "empty expression".into(),
        });
    }
    let mut parser = Parser {
        tokens,
        pos: 0,
        end: text.len(),
    };
    let expr = parser.expr()?;
    if parser.pos < parser.tokens.len() {
        return parser.syntax("unexpected trailing input");
    }
    Ok(expr)
}

impl FromStr for Expr {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

/// Evaluates `e` at `t`. Division by zero and `log` of a non-positive
/// argument report a domain error.
pub fn eval_expr(e: &Expr, t: f64) -> Result<f64, EvalError> {
    match e {
        Expr::Const(c) => Ok(*c),
        Expr::Var => Ok(t),
        Expr::Add(a, b) => Ok(eval_expr(a, t)? + eval_expr(b, t)?),
        Expr::Sub(a, b) => Ok(eval_expr(a, t)? - eval_expr(b, t)?),
        Expr::Mul(a, b) => Ok(eval_expr(a, t)? * eval_expr(b, t)?),
        Expr::Div(a, b) => {
            let denom = eval_expr(b, t)?;
            if denom == 0.0 {
                return Err(EvalError::Domain {
                    t,
                    reason: "division by zero",
                });
            }
            Ok(eval_expr(a, t)? / denom)
        }
        Expr::Pow(base, n) => Ok(eval_expr(base, t)?.powi(*n as i32)),
        Expr::Call(func, arg) => {
            let x = eval_expr(arg, t)?;
            match func {
                UnaryFn::Sin => Ok(x.sin()),
                UnaryFn::Cos => Ok(x.cos()),
                UnaryFn::Exp => Ok(x.exp()),
                UnaryFn::Log => {
                    if x <= 0.0 {
                        return Err(EvalError::Domain {
                            t,
                            reason: "log of a non-positive argument",
                        });
                    }
                    Ok(x.ln())
                }
            }
        }
    }
}

/// Expressions evaluate as [`RealFunction`]s; domain errors surface as NaN so
/// downstream numerics report them instead of silently continuing.
impl RealFunction for Expr {
    fn eval(&self, t: f64) -> f64 {
        eval_expr(self, t).unwrap_or(f64::NAN)
    }
}

// ---------------------------------------------------------------------------
// Symbolic differentiation
// ---------------------------------------------------------------------------

fn add(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (Expr::Const(x), Expr::Const(y)) => Expr::Const(x + y),
        (Expr::Const(x), b) if x == 0.0 => b,
        (a, Expr::Const(y)) if y == 0.0 => a,
        (a, b) => Expr::Add(Box::new(a), Box::new(b)),
    }
}

fn sub(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (Expr::Const(x), Expr::Const(y)) => Expr::Const(x - y),
        (a, Expr::Const(y)) if y == 0.0 => a,
        (a, b) => Expr::Sub(Box::new(a), Box::new(b)),
    }
}

fn mul(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (Expr::Const(x), Expr::Const(y)) => Expr::Const(x * y),
        (Expr::Const(x), _) | (_, Expr::Const(x)) if x == 0.0 => Expr::Const(0.0),
        (Expr::Const(x), b) if x == 1.0 => b,
        (a, Expr::Const(y)) if y == 1.0 => a,
        (a, b) => Expr::Mul(Box::new(a), Box::new(b)),
    }
}

fn div(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (Expr::Const(x), Expr::Const(y)) if y != 0.0 => Expr::Const(x / y),
        (a, Expr::Const(y)) if y == 1.0 => a,
        (Expr::Const(x), b) if x == 0.0 => {
            let _ = b;
            Expr::Const(0.0)
        }
        (a, b) => Expr::Div(Box::new(a), Box::new(b)),
    }
}

fn pow(base: Expr, n: u32) -> Expr {
    if n == 0 {
        return Expr::Const(1.0);
    }
    match base {
        Expr::Const(c) => Expr::Const(c.powi(n as i32)),
        base => Expr::Pow(Box::new(base), n),
    }
}

/// Symbolic derivative of `e` with respect to `t`, folded at constants but
/// otherwise unsimplified.
pub fn classical_derivative(e: &Expr) -> Expr {
    match e {
        Expr::Const(_) => Expr::Const(0.0),
        Expr::Var => Expr::Const(1.0),
        Expr::Add(a, b) => add(classical_derivative(a), classical_derivative(b)),
        Expr::Sub(a, b) => sub(classical_derivative(a), classical_derivative(b)),
        Expr::Mul(a, b) => {
            let da = classical_derivative(a);
            let db = classical_derivative(b);
            add(mul(da, (**b).clone()), mul((**a).clone(), db))
        }
        Expr::Div(a, b) => {
            let da = classical_derivative(a);
            let db = classical_derivative(b);
            let num = sub(mul(da, (**b).clone()), mul((**a).clone(), db));
            div(num, pow((**b).clone(), 2))
        }
        Expr::Pow(base, n) => {
            let db = classical_derivative(base);
            mul(
                mul(Expr::Const(*n as f64), pow((**base).clone(), n - 1)),
                db,
            )
        }
        Expr::Call(func, arg) => {
            let da = classical_derivative(arg);
            let outer = match func {
                UnaryFn::Sin => Expr::Call(UnaryFn::Cos, arg.clone()),
                UnaryFn::Cos => mul(
                    Expr::Const(-1.0),
                    Expr::Call(UnaryFn::Sin, arg.clone()),
                ),
                UnaryFn::Exp => Expr::Call(UnaryFn::Exp, arg.clone()),
                UnaryFn::Log => {
                    return div(da, (**arg).clone());
                }
            };
            mul(outer, da)
        }
    }
}

// ---------------------------------------------------------------------------
// Canonical printer
// ---------------------------------------------------------------------------

fn precedence(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) | Expr::Div(..) => 2,
        Expr::Pow(..) => 3,
        Expr::Const(_) | Expr::Var | Expr::Call(..) => 4,
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, child: &Expr, min_prec: u8) -> fmt::Result {
    // A bare negative constant needs parentheses wherever an operator
    // would otherwise clash, e.g. `3 * (-1)`.
    let negative_const = matches!(child, Expr::Const(c) if *c < 0.0);
    if precedence(child) < min_prec || (negative_const && min_prec > 1) {
        write!(f, "({child})")
    } else {
        write!(f, "{child}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) => write!(f, "{c}"),
            Expr::Var => write!(f, "t"),
            Expr::Add(a, b) => {
                write_child(f, a, 1)?;
                write!(f, " + ")?;
                write_child(f, b, 2)
            }
            Expr::Sub(a, b) => {
                write_child(f, a, 1)?;
                write!(f, " - ")?;
                write_child(f, b, 2)
            }
            Expr::Mul(a, b) => {
                write_child(f, a, 2)?;
                write!(f, "*")?;
                write_child(f, b, 3)
            }
            Expr::Div(a, b) => {
                write_child(f, a, 2)?;
                write!(f, "/")?;
                write_child(f, b, 4)
            }
            Expr::Pow(base, n) => {
                write_child(f, base, 4)?;
                write!(f, "^{n}")
            }
            Expr::Call(func, arg) => write!(f, "{}({})", func.name(), arg),
        }
    }
}
