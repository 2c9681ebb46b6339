//! Sparse multivariate polynomials with cyclotomic coefficients and a small
//! equation parser.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalars::{CycloScalar, Field};

pub type Monomial = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Poly {
    pub vars: Vec<String>,
    pub terms: BTreeMap<Monomial, CycloScalar>,
}

impl Poly {
    pub fn zero(vars: &[String]) -> Self {
        Poly { vars: vars.to_vec(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &[String], c: CycloScalar) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(vec![0; vars.len()], c);
        p
    }

    pub fn var(vars: &[String], i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::monomial(vars, e, CycloScalar::one())
    }

    pub fn var_named(vars: &[String], name: &str) -> Self {
        let i = vars.iter().position(|v| v == name).expect("unknown variable");
        Self::var(vars, i)
    }

    pub fn monomial(vars: &[String], e: Monomial, c: CycloScalar) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(e, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn add_term(&mut self, e: Monomial, c: CycloScalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e.clone()).or_insert_with(CycloScalar::zero);
        *entry = entry.plus(&c);
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let o = o.with_vars(&self.vars);
        let mut r = self.clone();
        for (e, c) in o.terms {
            r.add_term(e, c);
        }
        r
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Poly {
        self.scale(&CycloScalar::int(-1))
    }

    pub fn scale(&self, c: &CycloScalar) -> Poly {
        let mut r = Poly::zero(&self.vars);
        for (e, x) in &self.terms {
            r.add_term(e.clone(), x.times(c));
        }
        r
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let o = o.with_vars(&self.vars);
        let mut r = Poly::zero(&self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Monomial = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, c1.times(c2));
            }
        }
        r
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut r = Poly::constant(&self.vars, CycloScalar::one());
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    /// Re-express over a variable list containing all variables that occur.
    pub fn with_vars(&self, vars: &[String]) -> Poly {
        if vars == self.vars.as_slice() {
            return self.clone();
        }
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v).unwrap_or(usize::MAX))
            .collect();
        let mut r = Poly::zero(vars);
        for (e, c) in &self.terms {
            let mut ne = vec![0; vars.len()];
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    assert!(map[i] != usize::MAX, "variable {} missing from target list", self.vars[i]);
                    ne[map[i]] = k;
                }
            }
            r.add_term(ne, c.clone());
        }
        r
    }

    pub fn derivative(&self, i: usize) -> Poly {
        let mut r = Poly::zero(&self.vars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut ne = e.clone();
                ne[i] -= 1;
                r.add_term(ne, c.times(&CycloScalar::int(e[i] as i64)));
            }
        }
        r
    }

    /// Substitute every variable by a polynomial over a common target list.
    pub fn compose(&self, images: &[Poly], target: &[String]) -> Poly {
        let imgs: Vec<Poly> = images.iter().map(|p| p.with_vars(target)).collect();
        let mut r = Poly::zero(target);
        for (e, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = t.mul(&imgs[i].pow(k));
                }
            }
            r = r.add(&t);
        }
        r
    }

    /// Set the named variables to zero.
    pub fn set_zero(&self, idx: &[usize]) -> Poly {
        let mut r = Poly::zero(&self.vars);
        for (e, c) in &self.terms {
            if idx.iter().all(|&i| e[i] == 0) {
                r.add_term(e.clone(), c.clone());
            }
        }
        r
    }

    /// Drop variables that do not occur.
    pub fn prune_vars(&self) -> Poly {
        let used: Vec<String> = self
            .vars
            .iter()
            .enumerate()
            .filter(|(i, _)| self.terms.keys().any(|e| e[*i] > 0))
            .map(|(_, v)| v.clone())
            .collect();
        self.with_vars(&used)
    }

    pub fn weight_of(e: &[u32], w: &[i64]) -> i64 {
        e.iter().zip(w).map(|(&a, &b)| a as i64 * b).sum()
    }

    /// Common weight of all terms, if homogeneous.
    pub fn weighted_degree(&self, w: &[i64]) -> Option<i64> {
        let mut it = self.terms.keys().map(|e| Self::weight_of(e, w));
        let first = it.next()?;
        it.all(|x| x == first).then_some(first)
    }

    pub fn support(&self) -> Vec<Monomial> {
        self.terms.keys().cloned().collect()
    }

    pub fn coeff(&self, e: &[u32]) -> CycloScalar {
        self.terms.get(e).cloned().unwrap_or_else(CycloScalar::zero)
    }

    /// Coefficient of the given variable power, as a polynomial in the rest.
    pub fn coefficient_of(&self, i: usize, k: u32) -> Poly {
        let mut r = Poly::zero(&self.vars);
        for (e, c) in &self.terms {
            if e[i] == k {
                let mut ne = e.clone();
                ne[i] = 0;
                r.add_term(ne, c.clone());
            }
        }
        r
    }

    pub fn monomial_string(vars: &[String], e: &[u32]) -> String {
        let parts: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, &k)| if k == 1 { vars[i].clone() } else { format!("{}^{}", vars[i], k) })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    /// Terms in a stable display order: descending total degree, then lex.
    pub fn ordered_terms(&self) -> Vec<(Monomial, CycloScalar)> {
        let mut v: Vec<(Monomial, CycloScalar)> = self.terms.iter().map(|(e, c)| (e.clone(), c.clone())).collect();
        v.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then(b.0.cmp(&a.0))
        });
        v
    }
}

fn fmt_coeff(c: &CycloScalar) -> (bool, String) {
    if let Some(r) = c.to_rational() {
        let neg = r < crate::scalars::q(0);
        let a = crate::scalars::q_abs(&r);
        return (neg, if a.is_integer() { a.numer().to_string() } else { crate::scalars::fmt_q(&a) });
    }
    (false, format!("({})", c))
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.ordered_terms() {
            let (neg, mag) = fmt_coeff(&c);
            let mono = Poly::monomial_string(&self.vars, &e);
            let body = match (mag.as_str(), mono.as_str()) {
                (m, "1") => m.to_string(),
                ("1", mo) => mo.to_string(),
                (m, mo) => format!("{}*{}", m, mo),
            };
            if first {
                write!(f, "{}{}", if neg { "-" } else { "" }, body)?;
            } else {
                write!(f, " {} {}", if neg { "-" } else { "+" }, body)?;
            }
            first = false;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// parsing

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(i64),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let t: String = cs[st..i].iter().collect();
            out.push(Tok::Num(t.parse().map_err(|_| Error::Parse(t.clone()))?));
        } else if c.is_ascii_alphabetic() {
            let st = i;
            i += 1;
            while i < cs.len() && (cs[i].is_ascii_alphanumeric() || cs[i] == '_' || cs[i] == '\'') {
                i += 1;
            }
            out.push(Tok::Ident(cs[st..i].iter().collect()));
        } else if "+-*^()/".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {:?}", c)));
        }
    }
    Ok(out)
}

enum Expr {
    Num(i64),
    Var(String),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, i64),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut l = self.term()?;
        while let Some(Tok::Op(c)) = self.peek().cloned() {
            if c == '+' || c == '-' {
                self.pos += 1;
                let r = self.term()?;
                l = if c == '+' { Expr::Add(Box::new(l), Box::new(r)) } else { Expr::Sub(Box::new(l), Box::new(r)) };
            } else {
                break;
            }
        }
        Ok(l)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut l = self.factor()?;
        loop {
            match self.peek().cloned() {
                Some(Tok::Op('*')) => {
                    self.pos += 1;
                    let r = self.factor()?;
                    l = Expr::Mul(Box::new(l), Box::new(r));
                }
                Some(Tok::Op('/')) => {
                    self.pos += 1;
                    match self.peek().cloned() {
                        Some(Tok::Num(n)) if n != 0 => {
                            self.pos += 1;
                            l = Expr::Div(Box::new(l), n);
                        }
                        _ => return Err(Error::Parse("division only by nonzero integers".into())),
                    }
                }
                Some(Tok::Ident(_)) | Some(Tok::Num(_)) | Some(Tok::Op('(')) => {
                    let r = self.factor()?;
                    l = Expr::Mul(Box::new(l), Box::new(r));
                }
                _ => break,
            }
        }
        Ok(l)
    }

    fn factor(&mut self) -> Result<Expr> {
        if let Some(Tok::Op('-')) = self.peek() {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let base = self.base()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Num(n)) if n >= 0 => {
                    self.pos += 1;
                    return Ok(Expr::Pow(Box::new(base), n as u32));
                }
                _ => return Err(Error::Parse("exponent must be a nonnegative integer".into())),
            }
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Expr::Num(n))
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(Expr::Var(s))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::Op(')')) {
                    return Err(Error::Parse("missing ')'".into()));
                }
                self.pos += 1;
                Ok(e)
            }
            t => Err(Error::Parse(format!("unexpected token {:?}", t))),
        }
    }
}

fn collect_vars(e: &Expr, out: &mut Vec<String>) {
    match e {
        Expr::Var(s) => {
            if !out.contains(s) {
                out.push(s.clone())
            }
        }
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
            collect_vars(a, out);
            collect_vars(b, out);
        }
        Expr::Neg(a) | Expr::Pow(a, _) | Expr::Div(a, _) => collect_vars(a, out),
        Expr::Num(_) => {}
    }
}

fn eval(e: &Expr, vars: &[String]) -> Poly {
    match e {
        Expr::Num(n) => Poly::constant(vars, CycloScalar::int(*n)),
        Expr::Var(s) => Poly::var_named(vars, s),
        Expr::Add(a, b) => eval(a, vars).add(&eval(b, vars)),
        Expr::Sub(a, b) => eval(a, vars).sub(&eval(b, vars)),
        Expr::Mul(a, b) => eval(a, vars).mul(&eval(b, vars)),
        Expr::Div(a, n) => eval(a, vars).scale(&CycloScalar::rational(crate::scalars::qq(1, *n))),
        Expr::Neg(a) => eval(a, vars).neg(),
        Expr::Pow(a, k) => eval(a, vars).pow(*k),
    }
}

/// Variable order: x, y, z first, then everything else sorted by name.
fn order_vars(mut v: Vec<String>) -> Vec<String> {
    let rank = |s: &str| match s {
        "x" => 0,
        "y" => 1,
        "z" => 2,
        _ => 3,
    };
    v.sort_by(|a, b| rank(a).cmp(&rank(b)).then_with(|| param_key(a).cmp(&param_key(b))));
    v
}

fn param_key(s: &str) -> (i64, String) {
    let digits: String = s.chars().skip(1).take_while(|c| c.is_ascii_digit()).collect();
    (digits.parse().unwrap_or(0), s.to_string())
}

/// Parse a polynomial expression.
pub fn parse_poly(s: &str) -> Result<Poly> {
    let toks = tokenize(s)?;
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in {:?}", s)));
    }
    let mut vars = Vec::new();
    collect_vars(&e, &mut vars);
    let vars = order_vars(vars);
    Ok(eval(&e, &vars))
}

/// Parse `lhs = rhs` into lhs - rhs.
pub fn parse_equation(s: &str) -> Result<Poly> {
    let parts: Vec<&str> = s.split('=').collect();
    match parts.as_slice() {
        [one] => parse_poly(one),
        [l, r] => {
            let a = parse_poly(l)?;
            let b = parse_poly(r)?;
            let mut vars = a.vars.clone();
            for v in &b.vars {
                if !vars.contains(v) {
                    vars.push(v.clone());
                }
            }
            let vars = order_vars(vars);
            Ok(a.with_vars(&vars).sub(&b.with_vars(&vars)))
        }
        _ => Err(Error::Parse(format!("more than one '=' in {:?}", s))),
    }
}

// ---------------------------------------------------------------------------
// univariate helpers

/// Multiplicities of the distinct roots over the algebraic closure (Yun).
pub fn root_multiplicities<F: Field>(p: &[F]) -> Vec<usize> {
    use crate::chevalley::{poly_derivative, poly_divrem, poly_gcd, poly_trim};
    let p = poly_trim(p.to_vec());
    if p.len() <= 1 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let d = poly_derivative(&p);
    let mut a = poly_gcd(&p, &d);
    let mut b = poly_divrem(&p, &a).0;
    let mut c = poly_divrem(&d, &a).0;
    let mut i = 1;
    loop {
        let bd = poly_derivative(&b);
        let dd: Vec<F> = {
            let n = c.len().max(bd.len());
            (0..n)
                .map(|k| {
                    let x = c.get(k).cloned().unwrap_or_else(F::zero);
                    let y = bd.get(k).cloned().unwrap_or_else(F::zero);
                    x.minus(&y)
                })
                .collect()
        };
        let dd = poly_trim(dd);
        let g = poly_gcd(&b, &dd);
        let deg = g.len().saturating_sub(1);
        out.extend(std::iter::repeat(i).take(deg));
        b = poly_divrem(&b, &g).0;
        if b.len() <= 1 {
            break;
        }
        c = poly_divrem(&dd, &g).0;
        i += 1;
        if i > p.len() + 1 {
            break;
        }
    }
    let _ = &mut a;
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Q;

    #[test]
    fn parse_and_print() {
        let p = parse_equation("y^2 = x^3 + p20*x + p30").unwrap();
        assert_eq!(p.vars, vec!["x", "y", "p20", "p30"]);
        assert_eq!(p.terms.len(), 4);
        assert_eq!(p.weighted_degree(&[20, 30, 40, 60]), Some(60));
        let q = parse_equation("y(x*y + p4') = x^3 + p2*x^2").unwrap();
        assert!(q.index_of("p4'").is_some());
        assert_eq!(q.terms.len(), 4);
    }

    #[test]
    fn derivative_and_compose() {
        let p = parse_poly("x^3 + y^3").unwrap();
        assert_eq!(p.derivative(0).to_string(), "3*x^2");
        let vars = p.vars.clone();
        let img = vec![Poly::var(&vars, 1), Poly::var(&vars, 0)];
        assert_eq!(p.compose(&img, &vars), p);
    }

    #[test]
    fn yun_multiplicities() {
        let q = |n: i64| Q::from_integer(n.into());
        // (t - 1)^2 (t + 2) = t^3 - 3t + 2
        assert_eq!(root_multiplicities(&[q(2), q(-3), q(0), q(1)]), vec![1, 2]);
        assert_eq!(root_multiplicities(&[q(-1), q(0), q(1)]), vec![1, 1]);
        assert_eq!(root_multiplicities(&[q(0), q(0), q(0), q(1)]), vec![3]);
    }
}
