//! Expression parser for user-defined systems, with forward-mode
//! differentiation through dual numbers.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! sum     := product (('+' | '-') product)*
//! product := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' unary)?          right-associative
//! atom    := number | variable | func '(' sum ')' | '(' sum ')'
//! func    := exp | log | sin | cos | sqrt
//! ```

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::real::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Exp,
    Log,
    Sin,
    Cos,
    Sqrt,
}

impl Func {
    fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "exp" => Func::Exp,
            "log" => Func::Log,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
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
            Func::Sqrt => "sqrt",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
            BinOp::Pow => '^',
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    Var(usize),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

impl Expr {
    fn has_vars(&self) -> bool {
        match self {
            Expr::Num(_) => false,
            Expr::Var(_) => true,
            Expr::Neg(e) | Expr::Call(_, e) => e.has_vars(),
            Expr::Bin(_, l, r) => l.has_vars() || r.has_vars(),
        }
    }

    /// Fully parenthesized rendering that parses back to the same tree.
    pub fn display<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        Render { expr: self, names }
    }
}

struct Render<'a> {
    expr: &'a Expr,
    names: &'a [String],
}

impl fmt::Display for Render<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sub = |e| Render { expr: e, names: self.names };
        match self.expr {
            Expr::Num(v) => write!(f, "{v:?}"),
            Expr::Var(i) => f.write_str(&self.names[*i]),
            Expr::Neg(e) => write!(f, "(-{})", sub(e)),
            Expr::Bin(op, l, r) => write!(f, "({} {} {})", sub(l), op.symbol(), sub(r)),
            Expr::Call(func, e) => write!(f, "{}({})", func.name(), sub(e)),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(f64),
    Ident(String),
    Op(char),
    LParen,
    RParen,
}

fn tokenize(src: &str, base: usize) -> Result<Vec<(usize, Token)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                i += 1;
            }
            if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                let mut j = i + 1;
                if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                    j += 1;
                }
                if j < bytes.len() && bytes[j].is_ascii_digit() {
                    while j < bytes.len() && bytes[j].is_ascii_digit() {
                        j += 1;
                    }
                    i = j;
                }
            }
            let text = &src[start..i];
            let v: f64 = text
                .parse()
                .map_err(|_| Error::Parse { position: base + start, message: format!("malformed number '{text}'") })?;
            out.push((base + start, Token::Num(v)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((base + start, Token::Ident(src[start..i].to_string())));
        } else {
            let tok = match c {
                '+' | '-' | '*' | '/' | '^' => Token::Op(c),
                '(' => Token::LParen,
                ')' => Token::RParen,
                _ => {
                    return Err(Error::Parse { position: base + start, message: format!("unexpected character '{c}'") })
                }
            };
            out.push((base + start, tok));
            i += 1;
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
    vars: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { position: self.here(), message: message.into() })
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut lhs = self.product()?;
        while let Some(Token::Op(c @ ('+' | '-'))) = self.peek() {
            let op = if *c == '+' { BinOp::Add } else { BinOp::Sub };
            self.pos += 1;
            let rhs = self.product()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn product(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while let Some(Token::Op(c @ ('*' | '/'))) = self.peek() {
            let op = if *c == '*' { BinOp::Mul } else { BinOp::Div };
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if let Some(Token::Op('-')) = self.peek() {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if let Some(Token::Op('^')) = self.peek() {
            self.pos += 1;
            let exponent = self.unary()?;
            return Ok(Expr::Bin(BinOp::Pow, Box::new(base), Box::new(exponent)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let Some(tok) = self.peek().cloned() else {
            return self.error("unexpected end of expression");
        };
        match tok {
            Token::Num(v) => {
                self.pos += 1;
                Ok(Expr::Num(v))
            }
            Token::LParen => {
                self.pos += 1;
                let e = self.sum()?;
                self.expect_rparen()?;
                Ok(e)
            }
            Token::Ident(name) => {
                if let Some(func) = Func::from_name(&name) {
                    self.pos += 1;
                    if self.peek() != Some(&Token::LParen) {
                        return self.error(format!("expected '(' after {name}"));
                    }
                    self.pos += 1;
                    let arg = self.sum()?;
                    self.expect_rparen()?;
                    Ok(Expr::Call(func, Box::new(arg)))
                } else if let Some(i) = self.vars.iter().position(|v| *v == name) {
                    self.pos += 1;
                    Ok(Expr::Var(i))
                } else {
                    self.error(format!("unknown identifier '{name}'"))
                }
            }
            Token::RParen => self.error("unexpected ')'"),
            Token::Op(c) => self.error(format!("unexpected operator '{c}'")),
        }
    }

    fn expect_rparen(&mut self) -> Result<()> {
        if self.peek() == Some(&Token::RParen) {
            self.pos += 1;
            Ok(())
        } else {
            self.error("expected ')'")
        }
    }
}

/// Parses one expression over `vars`; `base` offsets reported positions.
pub fn parse_expr(src: &str, vars: &[String], base: usize) -> Result<Expr> {
    let tokens = tokenize(src, base)?;
    let mut parser = Parser { tokens, pos: 0, end: base + src.len(), vars };
    let e = parser.sum()?;
    if parser.pos < parser.tokens.len() {
        return parser.error("trailing input");
    }
    Ok(e)
}

/// Value and directional derivative.
#[derive(Debug, Clone, PartialEq)]
pub struct Dual<R> {
    pub re: R,
    pub du: R,
}

impl<R: Real> Dual<R> {
    pub fn constant(re: R) -> Self {
        let du = re.zero_like();
        Self { re, du }
    }

    pub fn variable(re: R) -> Self {
        let du = re.one_like();
        Self { re, du }
    }

    fn add(self, o: Self) -> Self {
        Self { re: self.re + o.re, du: self.du + o.du }
    }

    fn sub(self, o: Self) -> Self {
        Self { re: self.re - o.re, du: self.du - o.du }
    }

    fn mul(self, o: Self) -> Self {
        let du = self.du * o.re.clone() + self.re.clone() * o.du;
        Self { re: self.re * o.re, du }
    }

    fn div(self, o: Self) -> Result<Self> {
        if o.re.is_zero() {
            return Err(Error::EvalDomain { function: "division".into(), value: 0.0 });
        }
        let re = self.re / o.re.clone();
        let du = (self.du - re.clone() * o.du) / o.re;
        Ok(Self { re, du })
    }

    fn neg(self) -> Self {
        Self { re: -self.re, du: -self.du }
    }

    fn powi(self, n: i32) -> Result<Self> {
        if n < 0 && self.re.is_zero() {
            return Err(Error::EvalDomain { function: "negative power".into(), value: 0.0 });
        }
        let re = self.re.powi(n);
        let du = if n == 0 { self.du.zero_like() } else { self.re.lift(f64::from(n)) * self.re.powi(n - 1) * self.du };
        Ok(Self { re, du })
    }

    fn call(self, func: Func) -> Result<Self> {
        let x = self.re.clone();
        let undefined = || Error::EvalDomain { function: func.name().into(), value: x.to_f64() };
        Ok(match func {
            Func::Exp => {
                let e = self.re.exp();
                Self { du: e.clone() * self.du, re: e }
            }
            Func::Log => {
                if !(self.re > self.re.zero_like()) {
                    return Err(undefined());
                }
                Self { re: self.re.ln(), du: self.du / self.re }
            }
            Func::Sin => Self { re: self.re.sin(), du: self.re.cos() * self.du },
            Func::Cos => Self { re: self.re.cos(), du: -(self.re.sin() * self.du) },
            Func::Sqrt => {
                let zero = self.re.zero_like();
                if self.re < zero {
                    return Err(undefined());
                }
                let s = self.re.sqrt();
                if s.is_zero() {
                    if !self.du.is_zero() {
                        return Err(undefined());
                    }
                    Self { re: s, du: zero }
                } else {
                    let two = s.lift(2.0);
                    Self { du: self.du / (two * s.clone()), re: s }
                }
            }
        })
    }

    fn pow(self, exponent: Self, constant_exponent: bool) -> Result<Self> {
        let e = exponent.re.to_f64();
        if constant_exponent && e.fract() == 0.0 && e.abs() <= f64::from(i32::MAX) {
            return self.powi(e as i32);
        }
        if !(self.re > self.re.zero_like()) {
            return Err(Error::EvalDomain { function: "^".into(), value: self.re.to_f64() });
        }
        // a^b = exp(b ln a)
        let ln = self.call(Func::Log)?;
        exponent.mul(ln).call(Func::Exp)
    }
}

fn eval<R: Real>(e: &Expr, x: &[Dual<R>]) -> Result<Dual<R>> {
    Ok(match e {
        Expr::Num(v) => Dual::constant(x[0].re.lift(*v)),
        Expr::Var(i) => x[*i].clone(),
        Expr::Neg(a) => eval(a, x)?.neg(),
        Expr::Call(f, a) => eval(a, x)?.call(*f)?,
        Expr::Bin(op, l, r) => {
            let a = eval(l, x)?;
            let b = eval(r, x)?;
            match op {
                BinOp::Add => a.add(b),
                BinOp::Sub => a.sub(b),
                BinOp::Mul => a.mul(b),
                BinOp::Div => a.div(b)?,
                BinOp::Pow => a.pow(b, !r.has_vars())?,
            }
        }
    })
}

/// Square system of parsed expressions.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedSystem {
    names: Vec<String>,
    equations: Vec<Expr>,
}

impl ParsedSystem {
    pub fn new(names: &[String], equations: &[String]) -> Result<Self> {
        if names.len() != equations.len() {
            return Err(Error::Arity { expressions: equations.len(), variables: names.len() });
        }
        if names.is_empty() {
            return Err(Error::Parse { position: 0, message: "empty system".into() });
        }
        let mut base = 0;
        let mut parsed = Vec::with_capacity(equations.len());
        for src in equations {
            parsed.push(parse_expr(src, names, base)?);
            base += src.len() + 1;
        }
        Ok(Self { names: names.to_vec(), equations: parsed })
    }

    /// Parses `"e1; e2; ...; en"` over variables `x1..xn`.
    pub fn parse(source: &str) -> Result<Self> {
        let mut pieces: Vec<(usize, &str)> = Vec::new();
        let mut offset = 0;
        for piece in source.split(';') {
            pieces.push((offset, piece));
            offset += piece.len() + 1;
        }
        while pieces.len() > 1 && pieces.last().is_some_and(|(_, p)| p.trim().is_empty()) {
            pieces.pop();
        }
        let n = pieces.len();

        // Highest xk index referenced anywhere.
        let mut max_var = 0;
        for (base, piece) in &pieces {
            for (_, tok) in tokenize(piece, *base)? {
                if let Token::Ident(name) = tok {
                    if let Some(k) = name.strip_prefix('x').and_then(|d| d.parse::<usize>().ok()) {
                        max_var = max_var.max(k);
                    }
                }
            }
        }
        if max_var > n {
            return Err(Error::Arity { expressions: n, variables: max_var });
        }
        let names: Vec<String> = (1..=n).map(|k| format!("x{k}")).collect();
        let mut equations = Vec::with_capacity(n);
        for (base, piece) in &pieces {
            equations.push(parse_expr(piece, &names, *base)?);
        }
        Ok(Self { names, equations })
    }

    pub fn dimension(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn equations(&self) -> &[Expr] {
        &self.equations
    }

    /// Source text that parses back into the same system.
    pub fn to_source(&self) -> String {
        self.equations.iter().map(|e| e.display(&self.names).to_string()).collect::<Vec<_>>().join("; ")
    }

    pub fn evaluate<R: Real>(&self, x: &[R]) -> Result<Vec<R>> {
        let duals: Vec<Dual<R>> = x.iter().cloned().map(Dual::constant).collect();
        self.equations.iter().map(|e| eval(e, &duals).map(|d| d.re)).collect()
    }

    /// Jacobian by one forward-mode sweep per column.
    pub fn jacobian<R: Real>(&self, x: &[R]) -> Result<Matrix<R>> {
        let n = self.dimension();
        let mut jac = Matrix::from_fn(n, n, |_, _| x[0].zero_like());
        for j in 0..n {
            let seeded: Vec<Dual<R>> = x
                .iter()
                .enumerate()
                .map(|(k, v)| if k == j { Dual::variable(v.clone()) } else { Dual::constant(v.clone()) })
                .collect();
            for (i, e) in self.equations.iter().enumerate() {
                jac.set(i, j, eval(e, &seeded)?.du);
            }
        }
        Ok(jac)
    }
}
