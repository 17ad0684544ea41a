//! Sparse polynomials in the four surface invariants `d, pi, kappa, e`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::ParseError;
use crate::rational::{self, int, Rational};

pub const VARS: [&str; 4] = ["d", "pi", "kappa", "e"];

/// Exponents of `d, pi, kappa, e`.
pub type Exponents = [u32; 4];

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UnivPoly {
    terms: BTreeMap<Exponents, Rational>,
}

impl UnivPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::term([0; 4], c)
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn term(exps: Exponents, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(exps, c);
        p
    }

    /// The variable with the given index into [`VARS`].
    pub fn var(i: usize) -> Self {
        let mut e = [0; 4];
        e[i] = 1;
        Self::term(e, Rational::one())
    }

    pub fn add_term(&mut self, exps: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn coeff(&self, exps: &Exponents) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            out.add_term(*e, c * s);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3]];
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, point: &[Rational; 4]) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e.iter()) {
                t *= rational::pow(x, k);
            }
            acc += t;
        }
        acc
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Homogeneous of degree one: `x d + y pi + z kappa + w e`.
    pub fn is_linear_form(&self) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<u32>() == 1)
    }

    /// Terms in descending lexicographic order of `(d, pi, kappa, e)` exponents.
    pub fn sorted_terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter().rev()
    }

    /// `{"d^2*pi": "p/q", ...}` with the constant term under the key `"1"`.
    pub fn to_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .sorted_terms()
            .map(|(e, c)| (monomial_name(e), serde_json::Value::String(rational::render(c))))
            .collect();
        serde_json::Value::Object(map)
    }
}

pub fn monomial_name(e: &Exponents) -> String {
    let parts: Vec<String> = VARS
        .iter()
        .zip(e.iter())
        .filter(|(_, &k)| k > 0)
        .map(|(v, &k)| if k == 1 { v.to_string() } else { format!("{v}^{k}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

impl fmt::Display for UnivPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.sorted_terms().enumerate() {
            let neg = c < &Rational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let name = monomial_name(e);
            if name == "1" {
                f.write_str(&rational::render(&mag))?;
            } else if mag.is_one() {
                f.write_str(&name)?;
            } else {
                write!(f, "{}*{}", rational::render(&mag), name)?;
            }
        }
        Ok(())
    }
}

/// Parses arithmetic expressions over `d, pi, kappa, e` with `+ - * / ^`,
/// parentheses and rational literals, e.g. `d^3 - 3*d*(5*pi + kappa - e)`.
/// Division is only by numeric constants.
impl FromStr for UnivPoly {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let tokens = tokenize(s).ok_or_else(|| ParseError::Poly(s.to_string()))?;
        let mut p = Parser { tokens, pos: 0 };
        let out = p.expr().ok_or_else(|| ParseError::Poly(s.to_string()))?;
        if p.pos != p.tokens.len() {
            return Err(ParseError::Poly(s.to_string()));
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(Rational),
    Var(usize),
    Op(char),
}

fn tokenize(s: &str) -> Option<Vec<Token>> {
    let s = s.replace('\u{2212}', "-").replace('\u{3c0}', "pi").replace('\u{3ba}', "kappa");
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        if ch.is_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let lit: String = chars[start..i].iter().collect();
            out.push(Token::Num(rational::parse(&lit).ok()?));
        } else if ch.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphabetic() {
                i += 1;
            }
            let name: String = chars[start..i].iter().collect();
            out.push(Token::Var(VARS.iter().position(|v| *v == name)?));
        } else if "+-*/^()".contains(ch) {
            out.push(Token::Op(ch));
            i += 1;
        } else {
            return None;
        }
    }
    Some(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek_op(&self) -> Option<char> {
        match self.tokens.get(self.pos) {
            Some(Token::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> Option<UnivPoly> {
        let mut acc = match self.peek_op() {
            Some('-') => {
                self.pos += 1;
                self.term()?.scale(&int(-1))
            }
            Some('+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let t = self.term()?;
            acc = if op == '+' { acc.add(&t) } else { acc.sub(&t) };
        }
        Some(acc)
    }

    fn term(&mut self) -> Option<UnivPoly> {
        let mut acc = self.power()?;
        while let Some(op @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.power()?;
            if op == '*' {
                acc = acc.mul(&rhs);
            } else {
                let c = as_constant(&rhs)?;
                if c.is_zero() {
                    return None;
                }
                acc = acc.scale(&c.recip());
            }
        }
        Some(acc)
    }

    fn power(&mut self) -> Option<UnivPoly> {
        let base = self.atom()?;
        if self.peek_op() == Some('^') {
            self.pos += 1;
            let exp = match self.tokens.get(self.pos) {
                Some(Token::Num(k)) if rational::is_integer(k) => u32::try_from(k.to_integer()).ok()?,
                _ => return None,
            };
            self.pos += 1;
            return Some(base.pow(exp));
        }
        Some(base)
    }

    fn atom(&mut self) -> Option<UnivPoly> {
        let tok = self.tokens.get(self.pos)?.clone();
        self.pos += 1;
        match tok {
            Token::Num(c) => Some(UnivPoly::constant(c)),
            Token::Var(i) => Some(UnivPoly::var(i)),
            Token::Op('(') => {
                let inner = self.expr()?;
                (self.peek_op() == Some(')')).then_some(())?;
                self.pos += 1;
                Some(inner)
            }
            Token::Op('-') => Some(self.atom()?.scale(&int(-1))),
            _ => None,
        }
    }
}

fn as_constant(p: &UnivPoly) -> Option<Rational> {
    match p.terms.len() {
        0 => Some(Rational::zero()),
        1 => p.terms.get(&[0; 4]).cloned(),
        _ => None,
    }
}
