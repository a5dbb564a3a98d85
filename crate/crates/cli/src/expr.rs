//! Integer expressions over `p`, `q` and named variables: `+ - * ^ ( )`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{msg} at column {col} of {input:?}")]
pub struct ExprError {
    pub input: String,
    /// 1-based.
    pub col: usize,
    pub msg: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Node {
    Num(i128),
    Var(String, usize),
    Neg(Box<Node>),
    Bin(char, Box<Node>, Box<Node>, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expr {
    text: String,
    root: Node,
}

struct Parser<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, at: usize, msg: impl Into<String>) -> ExprError {
        ExprError {
            input: self.text.to_string(),
            col: at + 1,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<Node, ExprError> {
        let mut lhs = self.product()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            let at = self.pos;
            self.pos += 1;
            let rhs = self.product()?;
            lhs = Node::Bin(c as char, Box::new(lhs), Box::new(rhs), at);
        }
        Ok(lhs)
    }

    fn product(&mut self) -> Result<Node, ExprError> {
        let mut lhs = self.unary()?;
        while let Some(b'*') = self.peek() {
            let at = self.pos;
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = Node::Bin('*', Box::new(lhs), Box::new(rhs), at);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Node, ExprError> {
        if let Some(b'-') = self.peek() {
            self.pos += 1;
            return Ok(Node::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Node, ExprError> {
        let base = self.atom()?;
        if let Some(b'^') = self.peek() {
            let at = self.pos;
            self.pos += 1;
            let exp = self.unary()?;
            return Ok(Node::Bin('^', Box::new(base), Box::new(exp), at));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Node, ExprError> {
        let start = match self.peek() {
            None => return Err(self.err(self.pos, "unexpected end")),
            Some(_) => self.pos,
        };
        let c = self.bytes[start];
        if c == b'(' {
            self.pos += 1;
            let inner = self.sum()?;
            if self.peek() != Some(b')') {
                return Err(self.err(self.pos, "expected ')'"));
            }
            self.pos += 1;
            return Ok(inner);
        }
        if c.is_ascii_digit() {
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let n = self.text[start..self.pos]
                .parse::<i128>()
                .map_err(|_| self.err(start, "integer too large"))?;
            return Ok(Node::Num(n));
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            while self.pos < self.bytes.len() && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_') {
                self.pos += 1;
            }
            return Ok(Node::Var(self.text[start..self.pos].to_string(), start));
        }
        Err(self.err(start, format!("unexpected {:?}", c as char)))
    }
}

impl Expr {
    pub fn parse(text: &str) -> Result<Expr, ExprError> {
        let mut ps = Parser {
            text,
            bytes: text.as_bytes(),
            pos: 0,
        };
        let root = ps.sum()?;
        if ps.peek().is_some() {
            return Err(ps.err(ps.pos, "trailing input"));
        }
        Ok(Expr {
            text: text.to_string(),
            root,
        })
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    /// Names used, in order of first appearance.
    pub fn variables(&self) -> Vec<String> {
        fn walk(n: &Node, out: &mut Vec<String>) {
            match n {
                Node::Var(v, _) => {
                    if !out.contains(v) {
                        out.push(v.clone());
                    }
                }
                Node::Neg(x) => walk(x, out),
                Node::Bin(_, a, b, _) => {
                    walk(a, out);
                    walk(b, out);
                }
                Node::Num(_) => {}
            }
        }
        let mut out = Vec::new();
        walk(&self.root, &mut out);
        out
    }

    pub fn eval(&self, env: &Env) -> Result<i128, ExprError> {
        let err = |at: usize, msg: String| ExprError {
            input: self.text.clone(),
            col: at + 1,
            msg,
        };
        fn go(n: &Node, env: &Env, err: &dyn Fn(usize, String) -> ExprError) -> Result<i128, ExprError> {
            match n {
                Node::Num(x) => Ok(*x),
                Node::Var(v, at) => env.get(v).ok_or_else(|| err(*at, format!("unknown variable {v:?}"))),
                Node::Neg(x) => Ok(-go(x, env, err)?),
                Node::Bin(op, a, b, at) => {
                    let (x, y) = (go(a, env, err)?, go(b, env, err)?);
                    let r = match op {
                        '+' => x.checked_add(y),
                        '-' => x.checked_sub(y),
                        '*' => x.checked_mul(y),
                        _ => {
                            if y < 0 {
                                return Err(err(*at, "negative exponent".into()));
                            }
                            u32::try_from(y).ok().and_then(|e| x.checked_pow(e))
                        }
                    };
                    r.ok_or_else(|| err(*at, "overflow".into()))
                }
            }
        }
        go(&self.root, env, &err)
    }

    /// Evaluate and require a value that fits `u64`.
    pub fn eval_u64(&self, env: &Env) -> Result<u64, ExprError> {
        let v = self.eval(env)?;
        u64::try_from(v).map_err(|_| ExprError {
            input: self.text.clone(),
            col: 1,
            msg: format!("value {v} is not a non-negative integer"),
        })
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

/// Variable bindings; `p` and `q = 2(p-1)` are always present.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Env {
    vars: BTreeMap<String, i128>,
}

impl Env {
    pub fn new(p: u64) -> Self {
        let mut vars = BTreeMap::new();
        vars.insert("p".to_string(), p as i128);
        vars.insert("q".to_string(), 2 * (p as i128 - 1));
        Env { vars }
    }

    pub fn get(&self, name: &str) -> Option<i128> {
        self.vars.get(name).copied()
    }

    pub fn set(&mut self, name: &str, v: i128) {
        self.vars.insert(name.to_string(), v);
    }

    /// Bind variables whose definitions may refer to each other, in any order.
    pub fn bind_all(&mut self, defs: &BTreeMap<String, String>) -> Result<(), ExprError> {
        let mut pending: Vec<(&String, Expr)> = Vec::new();
        for (k, v) in defs {
            if k == "p" || k == "q" {
                return Err(ExprError {
                    input: v.clone(),
                    col: 1,
                    msg: format!("cannot rebind {k}"),
                });
            }
            pending.push((k, Expr::parse(v)?));
        }
        while !pending.is_empty() {
            let before = pending.len();
            let mut rest = Vec::new();
            for (k, e) in pending {
                if e.variables().iter().all(|v| self.vars.contains_key(v)) {
                    let v = e.eval(self)?;
                    self.set(k, v);
                } else {
                    rest.push((k, e));
                }
            }
            if rest.len() == before {
                let (_, e) = &rest[0];
                return e.eval(self).map(|_| ());
            }
            pending = rest;
        }
        Ok(())
    }
}

/// Parse and evaluate in one go.
pub fn eval_str(text: &str, env: &Env) -> Result<i128, ExprError> {
    Expr::parse(text)?.eval(env)
}
