//! Textual definitions of rings and ideals.
//!
//! ```text
//! ring R = [a, b, c];                  # one block named R
//! tensor T = R (*) S;                  # concatenates blocks
//! I = ideal(R; a^2, a*b, c^3);
//! m = maxideal(R);                     # or maxideal(T; R) for a block of T
//! F = fiber(I, J);
//! G = (I + m*J)^2 : (a*b) & dstar(I);
//! P = (a, b)^4 * (c^2, a*c);           # parenthesised generator list
//! ```
//!
//! Binary operators: `+` (sum) and `&` (intersection) bind loosest, then
//! `*` (product) and `:` (colon), then `^` with an integer exponent.
//! Bare variable names denote principal ideals; they are placed in the ring
//! of the ideal they are combined with, or else in the first declared ring
//! that has all of them. An ideal over a factor ring combined with an ideal
//! over a tensor ring containing it is extended to the tensor ring.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ideal::{fiber_product, MonomialIdeal};
use crate::monomial::Monomial;
use crate::ring::Ring;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(u64),
    Sym(char),
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    pos: usize,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c == '#' {
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
        } else if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(text[start..i].to_string()),
                pos: start,
            });
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let v = text[start..i]
                .parse()
                .map_err(|_| Error::syntax(start, "integer literal too large"))?;
            out.push(Token {
                tok: Tok::Int(v),
                pos: start,
            });
        } else if "=;[],()+*^:&-".contains(c) {
            out.push(Token {
                tok: Tok::Sym(c),
                pos: i,
            });
            i += 1;
        } else {
            return Err(Error::syntax(i, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
enum Expr {
    Name(String, usize),
    Int(u64),
    Binary(char, Box<Expr>, Box<Expr>, usize),
    Pow(Box<Expr>, u32),
    Call(String, Vec<Expr>, usize),
    IdealLit(String, Vec<Expr>, usize),
    MaxIdeal(String, Option<String>, usize),
}

struct Parser<'a> {
    toks: &'a [Token],
    at: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn new(toks: &'a [Token], end: usize) -> Self {
        Parser { toks, at: 0, end }
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.pos)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.tok)
    }

    fn peek_sym(&self, c: char) -> bool {
        self.peek() == Some(&Tok::Sym(c))
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.peek_sym(c) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            Err(Error::syntax(self.pos(), format!("expected `{c}`")))
        }
    }

    fn ident(&mut self) -> Result<(String, usize)> {
        let pos = self.pos();
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.at += 1;
                Ok((s, pos))
            }
            _ => Err(Error::syntax(pos, "expected a name")),
        }
    }

    fn int(&mut self) -> Result<u64> {
        let pos = self.pos();
        match self.peek() {
            Some(Tok::Int(v)) => {
                let v = *v;
                self.at += 1;
                Ok(v)
            }
            Some(Tok::Sym('-')) => Err(Error::syntax(pos, "negative exponent")),
            _ => Err(Error::syntax(pos, "expected an integer")),
        }
    }

    fn done(&self) -> bool {
        self.at >= self.toks.len()
    }

    // expr := term (('+' | '&') term)*
    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            let pos = self.pos();
            let op = if self.eat_sym('+') {
                '+'
            } else if self.eat_sym('&') {
                '&'
            } else {
                return Ok(lhs);
            };
            let rhs = self.term()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs), pos);
        }
    }

    // term := factor (('*' | ':') factor)*
    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        loop {
            let pos = self.pos();
            let op = if self.eat_sym('*') {
                '*'
            } else if self.eat_sym(':') {
                ':'
            } else {
                return Ok(lhs);
            };
            let rhs = self.factor()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs), pos);
        }
    }

    // factor := atom ('^' int)*
    fn factor(&mut self) -> Result<Expr> {
        let mut base = self.atom()?;
        while self.peek_sym('^') {
            let pos = self.pos();
            self.at += 1;
            let k = self.int()?;
            let k = u32::try_from(k).map_err(|_| Error::syntax(pos, "exponent too large"))?;
            base = Expr::Pow(Box::new(base), k);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let mut e = self.expr()?;
                // `(u, v, ...)` is the ideal generated by the listed items.
                while self.peek_sym(',') {
                    let pos = self.pos();
                    self.at += 1;
                    let rhs = self.expr()?;
                    e = Expr::Binary('+', Box::new(e), Box::new(rhs), pos);
                }
                self.expect_sym(')')?;
                Ok(e)
            }
            Some(Tok::Int(v)) => {
                self.at += 1;
                Ok(Expr::Int(v))
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                if !self.peek_sym('(') {
                    return Ok(Expr::Name(name, pos));
                }
                self.at += 1;
                match name.as_str() {
                    "ideal" => {
                        let (ring, _) = self.ident()?;
                        let mut gens = Vec::new();
                        if self.eat_sym(';') && !self.peek_sym(')') {
                            gens.push(self.term()?);
                            while self.eat_sym(',') {
                                gens.push(self.term()?);
                            }
                        }
                        self.expect_sym(')')?;
                        Ok(Expr::IdealLit(ring, gens, pos))
                    }
                    "maxideal" => {
                        let (first, _) = self.ident()?;
                        let second = if self.eat_sym(';') || self.eat_sym(',') {
                            Some(self.ident()?.0)
                        } else {
                            None
                        };
                        self.expect_sym(')')?;
                        Ok(Expr::MaxIdeal(first, second, pos))
                    }
                    _ => {
                        let mut args = Vec::new();
                        if !self.peek_sym(')') {
                            args.push(self.expr()?);
                            while self.eat_sym(',') {
                                args.push(self.expr()?);
                            }
                        }
                        self.expect_sym(')')?;
                        Ok(Expr::Call(name, args, pos))
                    }
                }
            }
            _ => Err(Error::syntax(pos, "expected an expression")),
        }
    }
}

/// A product of named variables not yet placed in a ring.
type FreeMonomial = BTreeMap<String, u32>;

#[derive(Debug, Clone)]
enum Value {
    Ideal(MonomialIdeal),
    Free(FreeMonomial),
    Int(u64),
}

/// Parses a single `ring Name = [v1, ...];` declaration.
pub fn parse_ring(text: &str) -> Result<Ring> {
    let toks = lex(text)?;
    let mut p = Parser::new(&toks, text.len());
    let ring = parse_ring_stmt(&mut p)?;
    if !p.done() {
        return Err(Error::syntax(p.pos(), "trailing input after ring declaration"));
    }
    Ok(ring)
}

fn parse_ring_stmt(p: &mut Parser<'_>) -> Result<Ring> {
    let (kw, pos) = p.ident()?;
    if kw != "ring" {
        return Err(Error::syntax(pos, "expected `ring`"));
    }
    let (name, _) = p.ident()?;
    p.expect_sym('=')?;
    p.expect_sym('[')?;
    let mut vars = vec![p.ident()?.0];
    while p.eat_sym(',') {
        vars.push(p.ident()?.0);
    }
    p.expect_sym(']')?;
    p.expect_sym(';')?;
    Ring::new(name, vars)
}

/// Parses a monomial such as `a^2*b` (or `1`) over `ring`.
pub fn parse_monomial(ring: &Ring, text: &str) -> Result<Monomial> {
    let toks = lex(text)?;
    let mut p = Parser::new(&toks, text.len());
    let m = parse_monomial_tokens(ring, &mut p)?;
    if !p.done() {
        return Err(Error::syntax(p.pos(), "trailing input after monomial"));
    }
    Ok(m)
}

fn parse_monomial_tokens(ring: &Ring, p: &mut Parser<'_>) -> Result<Monomial> {
    let mut m = Monomial::one(ring.nvars());
    loop {
        let pos = p.pos();
        match p.peek().cloned() {
            Some(Tok::Int(1)) => {
                p.at += 1;
            }
            Some(Tok::Ident(v)) => {
                p.at += 1;
                let i = ring.var_index(&v).ok_or(Error::UnknownVariable(v))?;
                let mut e = 1u64;
                if p.eat_sym('^') {
                    e = p.int()?;
                }
                let e = u32::try_from(e).map_err(|_| Error::syntax(pos, "exponent too large"))?;
                m.set_exponent(i, m.exponent(i) + e);
            }
            _ => return Err(Error::syntax(pos, "malformed monomial")),
        }
        if !p.eat_sym('*') {
            return Ok(m);
        }
    }
}

/// Prints a monomial so that [`parse_monomial`] reads it back.
pub fn print_monomial(ring: &Ring, m: &Monomial) -> String {
    m.format(ring)
}

/// Prints an ideal as a definition statement.
pub fn print_ideal(name: &str, ideal: &MonomialIdeal) -> String {
    let gens = if ideal.is_zero() {
        String::new()
    } else {
        ideal.format_gens()
    };
    format!("{name} = ideal({}; {gens});", ideal.ring().name())
}

/// A parsed definition file: rings and named ideals in declaration order.
#[derive(Debug, Clone, Default)]
pub struct Definitions {
    rings: Vec<Arc<Ring>>,
    ring_index: HashMap<String, usize>,
    ideals: Vec<(String, MonomialIdeal)>,
    ideal_index: HashMap<String, usize>,
}

impl Definitions {
    pub fn parse(text: &str) -> Result<Definitions> {
        let mut defs = Definitions::default();
        defs.extend(text)?;
        Ok(defs)
    }

    /// Parses further statements into the same scope.
    pub fn extend(&mut self, text: &str) -> Result<()> {
        let toks = lex(text)?;
        // Split on top-level ';' so each statement is parsed on its own.
        let mut start = 0;
        let mut depth = 0i32;
        for (k, t) in toks.iter().enumerate() {
            match t.tok {
                Tok::Sym('(') => depth += 1,
                Tok::Sym(')') => depth -= 1,
                Tok::Sym(';') if depth == 0 => {
                    self.statement(&toks[start..=k], text.len())?;
                    start = k + 1;
                }
                _ => {}
            }
        }
        if start < toks.len() {
            return Err(Error::syntax(toks[start].pos, "statement is missing its `;`"));
        }
        Ok(())
    }

    fn statement(&mut self, toks: &[Token], end: usize) -> Result<()> {
        let mut p = Parser::new(toks, end);
        match p.peek() {
            Some(Tok::Ident(kw)) if kw == "ring" && toks.get(2).map(|t| &t.tok) == Some(&Tok::Sym('=')) => {
                let ring = parse_ring_stmt(&mut p)?;
                self.add_ring(ring, toks[1].pos)
            }
            Some(Tok::Ident(kw)) if kw == "tensor" && toks.get(2).map(|t| &t.tok) == Some(&Tok::Sym('=')) => {
                p.at += 1;
                let (name, pos) = p.ident()?;
                p.expect_sym('=')?;
                let (a, apos) = p.ident()?;
                p.expect_sym('(')?;
                p.expect_sym('*')?;
                p.expect_sym(')')?;
                let (b, bpos) = p.ident()?;
                p.expect_sym(';')?;
                let ra = self.ring_at(&a, apos)?;
                let rb = self.ring_at(&b, bpos)?;
                let t = Ring::tensor(name, &ra, &rb)?;
                self.add_ring(t, pos)
            }
            _ => {
                let (name, pos) = p.ident()?;
                p.expect_sym('=')?;
                let e = p.expr()?;
                p.expect_sym(';')?;
                if !p.done() {
                    return Err(Error::syntax(p.pos(), "unexpected input"));
                }
                let ideal = self.resolve(self.eval_expr(&e)?, None)?;
                self.bind(name, ideal, pos)
            }
        }
    }

    fn add_ring(&mut self, ring: Ring, pos: usize) -> Result<()> {
        let name = ring.name().to_string();
        if self.ring_index.contains_key(&name) || self.ideal_index.contains_key(&name) {
            return Err(Error::syntax(pos, format!("`{name}` is already defined")));
        }
        self.ring_index.insert(name, self.rings.len());
        self.rings.push(Arc::new(ring));
        Ok(())
    }

    /// Binds (or rebinds) a named ideal.
    pub fn bind(&mut self, name: String, ideal: MonomialIdeal, pos: usize) -> Result<()> {
        if self.ring_index.contains_key(&name) {
            return Err(Error::syntax(pos, format!("`{name}` names a ring")));
        }
        match self.ideal_index.get(&name) {
            Some(&k) => self.ideals[k].1 = ideal,
            None => {
                self.ideal_index.insert(name.clone(), self.ideals.len());
                self.ideals.push((name, ideal));
            }
        }
        Ok(())
    }

    fn ring_at(&self, name: &str, pos: usize) -> Result<Arc<Ring>> {
        self.ring(name).map_err(|_| Error::syntax(pos, format!("unknown ring `{name}`")))
    }

    pub fn ring(&self, name: &str) -> Result<Arc<Ring>> {
        self.ring_index
            .get(name)
            .map(|&k| self.rings[k].clone())
            .ok_or_else(|| Error::UnknownBlock(name.to_string()))
    }

    pub fn rings(&self) -> &[Arc<Ring>] {
        &self.rings
    }

    pub fn ideal(&self, name: &str) -> Result<&MonomialIdeal> {
        self.ideal_index
            .get(name)
            .map(|&k| &self.ideals[k].1)
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    pub fn ideals(&self) -> impl Iterator<Item = (&str, &MonomialIdeal)> {
        self.ideals.iter().map(|(n, i)| (n.as_str(), i))
    }

    /// Evaluates an expression in the scope of these definitions.
    pub fn eval(&self, text: &str) -> Result<MonomialIdeal> {
        let toks = lex(text)?;
        let mut p = Parser::new(&toks, text.len());
        let e = p.expr()?;
        if !p.done() {
            return Err(Error::syntax(p.pos(), "unexpected input after expression"));
        }
        self.resolve(self.eval_expr(&e)?, None)
    }

    /// Places a value in a ring: ideals pass through (extended to `target`
    /// when their ring is a block of it), free monomials become principal
    /// ideals.
    fn resolve(&self, v: Value, target: Option<&Arc<Ring>>) -> Result<MonomialIdeal> {
        match v {
            Value::Ideal(i) => match target {
                Some(t) if i.ring() != t => i.embed(t),
                _ => Ok(i),
            },
            Value::Free(f) => {
                let ring = match target {
                    Some(t) => t.clone(),
                    None => self.ring_for(&f)?,
                };
                let mut m = Monomial::one(ring.nvars());
                for (v, e) in &f {
                    let i = ring.var_index(v).ok_or_else(|| Error::UnknownVariable(v.clone()))?;
                    m.set_exponent(i, e + m.exponent(i));
                }
                MonomialIdeal::principal(&ring, m)
            }
            Value::Int(0) => Err(Error::Type("a bare `0` needs a ring; use ideal(R;)".into())),
            Value::Int(1) => Err(Error::Type("a bare `1` needs a ring; use ideal(R; 1)".into())),
            Value::Int(v) => Err(Error::Type(format!("integer {v} where an ideal was expected"))),
        }
    }

    fn ring_for(&self, f: &FreeMonomial) -> Result<Arc<Ring>> {
        self.rings
            .iter()
            .find(|r| f.keys().all(|v| r.var_index(v).is_some()))
            .cloned()
            .ok_or_else(|| {
                Error::UnknownVariable(f.keys().cloned().collect::<Vec<_>>().join("*"))
            })
    }

    /// Common ring for a binary operation, extending a factor-ring ideal to
    /// the tensor ring when needed.
    fn unify(&self, a: Value, b: Value, pos: usize) -> Result<(MonomialIdeal, MonomialIdeal)> {
        match (&a, &b) {
            (Value::Ideal(x), Value::Ideal(y)) => {
                if x.ring() == y.ring() {
                    return Ok((x.clone(), y.clone()));
                }
                if y.ring().block_of(x.ring()).is_ok() {
                    return Ok((x.embed(y.ring())?, y.clone()));
                }
                if x.ring().block_of(y.ring()).is_ok() {
                    return Ok((x.clone(), y.embed(x.ring())?));
                }
                Err(Error::RingMismatch(format!(
                    "at byte {pos}: ideals over `{}` and `{}`",
                    x.ring().name(),
                    y.ring().name()
                )))
            }
            (Value::Ideal(x), _) => {
                let r = x.ring().clone();
                Ok((x.clone(), self.resolve(b, Some(&r))?))
            }
            (_, Value::Ideal(y)) => {
                let r = y.ring().clone();
                Ok((self.resolve(a, Some(&r))?, y.clone()))
            }
            _ => {
                let x = self.resolve(a, None)?;
                let r = x.ring().clone();
                Ok((x, self.resolve(b, Some(&r))?))
            }
        }
    }

    fn eval_expr(&self, e: &Expr) -> Result<Value> {
        match e {
            Expr::Name(name, _) => {
                if let Some(&k) = self.ideal_index.get(name) {
                    return Ok(Value::Ideal(self.ideals[k].1.clone()));
                }
                if self.ring_index.contains_key(name) {
                    return Err(Error::Type(format!("`{name}` is a ring, not an ideal")));
                }
                if self.rings.iter().any(|r| r.var_index(name).is_some()) {
                    return Ok(Value::Free(BTreeMap::from([(name.clone(), 1)])));
                }
                Err(Error::UnknownName(name.clone()))
            }
            Expr::Int(v) => Ok(Value::Int(*v)),
            Expr::Pow(base, k) => match self.eval_expr(base)? {
                Value::Free(mut f) => {
                    f.values_mut().for_each(|e| *e *= k);
                    Ok(Value::Free(f))
                }
                Value::Ideal(i) => Ok(Value::Ideal(i.power(*k))),
                Value::Int(v) => Err(Error::Type(format!("cannot raise integer {v} to a power"))),
            },
            Expr::Binary(op, a, b, pos) => {
                let a = self.eval_expr(a)?;
                let b = self.eval_expr(b)?;
                if *op == '*' {
                    match (&a, &b) {
                        (Value::Free(x), Value::Free(y)) => {
                            let mut f = x.clone();
                            for (v, e) in y {
                                *f.entry(v.clone()).or_insert(0) += e;
                            }
                            return Ok(Value::Free(f));
                        }
                        (Value::Int(1), _) => return Ok(b),
                        (_, Value::Int(1)) => return Ok(a),
                        _ => {}
                    }
                }
                let (x, y) = self.unify(a, b, *pos)?;
                let r = match op {
                    '+' => x.sum(&y)?,
                    '&' => x.intersect(&y)?,
                    '*' => x.product(&y)?,
                    ':' => x.colon(&y)?,
                    _ => unreachable!("parser only emits + & * :"),
                };
                Ok(Value::Ideal(r))
            }
            Expr::IdealLit(ring, gens, pos) => {
                let ring = self.ring_at(ring, *pos)?;
                let mut ms = Vec::new();
                for g in gens {
                    match self.eval_expr(g)? {
                        Value::Int(0) => {}
                        Value::Int(1) => ms.push(Monomial::one(ring.nvars())),
                        Value::Free(f) => {
                            let mut m = Monomial::one(ring.nvars());
                            for (v, e) in f {
                                let i = ring.var_index(&v).ok_or(Error::UnknownVariable(v))?;
                                m.set_exponent(i, e);
                            }
                            ms.push(m);
                        }
                        _ => {
                            return Err(Error::Type(
                                "ideal(...) takes monomials in the ring's variables".into(),
                            ))
                        }
                    }
                }
                Ok(Value::Ideal(MonomialIdeal::new(&ring, ms)?))
            }
            Expr::MaxIdeal(first, second, pos) => {
                let ideal = match second {
                    Some(block) => {
                        let ring = self.ring_at(first, *pos)?;
                        MonomialIdeal::maxideal_power(&ring, Some(block), 1)?
                    }
                    None => match self.ring(first) {
                        Ok(ring) => MonomialIdeal::maximal(&ring),
                        Err(_) => {
                            let ring = self
                                .rings
                                .iter()
                                .find(|r| r.block(first).is_some())
                                .ok_or_else(|| Error::UnknownBlock(first.clone()))?;
                            MonomialIdeal::maxideal_power(ring, Some(first), 1)?
                        }
                    },
                };
                Ok(Value::Ideal(ideal))
            }
            Expr::Call(name, args, pos) => self.call(name, args, *pos),
        }
    }

    fn call(&self, name: &str, args: &[Expr], pos: usize) -> Result<Value> {
        let arity = |n: usize| {
            if args.len() != n {
                Err(Error::syntax(pos, format!("`{name}` takes {n} argument(s)")))
            } else {
                Ok(())
            }
        };
        let ideal_arg = |k: usize| -> Result<MonomialIdeal> { self.resolve(self.eval_expr(&args[k])?, None) };
        let int_arg = |k: usize| -> Result<u64> {
            match self.eval_expr(&args[k])? {
                Value::Int(v) => Ok(v),
                _ => Err(Error::Type(format!("argument {} of `{name}` must be an integer", k + 1))),
            }
        };
        let r = match name {
            "fiber" => {
                arity(2)?;
                let (i, j) = (ideal_arg(0)?, ideal_arg(1)?);
                let t = self.tensor_for(i.ring(), j.ring())?;
                fiber_product(&i, &j, &t)?
            }
            "dstar" => {
                arity(1)?;
                ideal_arg(0)?.star_derivative()?
            }
            "component" => {
                arity(2)?;
                let d = u32::try_from(int_arg(1)?).map_err(|_| Error::syntax(pos, "degree too large"))?;
                ideal_arg(0)?.component(d)?
            }
            "embed" => {
                arity(2)?;
                let target = match &args[1] {
                    Expr::Name(r, p) => self.ring_at(r, *p)?,
                    _ => return Err(Error::syntax(pos, "`embed` takes a ring name")),
                };
                ideal_arg(0)?.embed(&target)?
            }
            _ => return Err(Error::syntax(pos, format!("unknown function `{name}`"))),
        };
        Ok(Value::Ideal(r))
    }

    /// A declared tensor ring of `r` and `s`, or a fresh one.
    fn tensor_for(&self, r: &Arc<Ring>, s: &Arc<Ring>) -> Result<Arc<Ring>> {
        let fresh = Ring::tensor(format!("{}_{}", r.name(), s.name()), r, s)?;
        Ok(self
            .rings
            .iter()
            .find(|t| ***t == fresh)
            .cloned()
            .unwrap_or_else(|| Arc::new(fresh)))
    }
}
