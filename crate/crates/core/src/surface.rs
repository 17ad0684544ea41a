//! Parametric model of the even rational cohomology ring of a surface.
//!
//! The basis is `1, h, k, u_1, ..., u_b, pt` with `h^2 = d pt`, `hk = pi pt`,
//! `k^2 = kappa pt`, `u_i u_j = delta_ij pt` and all other degree-two products
//! zero. `k` plays the canonical class. The Euler number of the model is the
//! rank of the ring, `4 + b`, because `cup(delta(1))` is forced to equal
//! `rank * pt`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{ModelError, ParseError};
use crate::rational::{self, int, Rational};

/// Basis symbol. The derived order `1 < h < k < u_1 < ... < pt` is the
/// canonical order used everywhere (monomials, rendering, hashing).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Basis {
    One,
    H,
    K,
    U(u8),
    Pt,
}

impl Basis {
    /// Real cohomological degree.
    pub fn degree(self) -> u32 {
        match self {
            Basis::One => 0,
            Basis::H | Basis::K | Basis::U(_) => 2,
            Basis::Pt => 4,
        }
    }

    pub fn symbol(self) -> String {
        match self {
            Basis::One => "1".into(),
            Basis::H => "h".into(),
            Basis::K => "k".into(),
            Basis::U(i) => format!("u{}", i as u32 + 1),
            Basis::Pt => "pt".into(),
        }
    }

    fn from_symbol(s: &str) -> Option<Basis> {
        match s {
            "1" => Some(Basis::One),
            "h" | "H" => Some(Basis::H),
            "k" | "K" => Some(Basis::K),
            "pt" => Some(Basis::Pt),
            _ => {
                let i: u32 = s.strip_prefix('u')?.parse().ok()?;
                if (1..=255).contains(&i) {
                    Some(Basis::U((i - 1) as u8))
                } else {
                    None
                }
            }
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.symbol())
    }
}

/// A cohomology class in sparse canonical form (no zero coefficients).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct CohClass {
    terms: BTreeMap<Basis, Rational>,
}

impl CohClass {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::basis(Basis::One)
    }

    pub fn basis(b: Basis) -> Self {
        Self::term(b, Rational::one())
    }

    pub fn term(b: Basis, c: Rational) -> Self {
        let mut out = Self::zero();
        out.add_term(b, c);
        out
    }

    pub fn h() -> Self {
        Self::basis(Basis::H)
    }

    pub fn k() -> Self {
        Self::basis(Basis::K)
    }

    pub fn pt() -> Self {
        Self::basis(Basis::Pt)
    }

    pub fn add_term(&mut self, b: Basis, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(b).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&b);
        }
    }

    pub fn coeff(&self, b: Basis) -> Rational {
        self.terms.get(&b).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Basis, &Rational)> {
        self.terms.iter().map(|(b, c)| (*b, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = Self::zero();
        for (b, c) in self.terms() {
            out.add_term(b, c * s);
        }
        out
    }

    /// Component of real degree `deg`.
    pub fn part(&self, deg: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| b.degree() == deg)
                .map(|(b, c)| (*b, c.clone()))
                .collect(),
        }
    }

    pub fn is_homogeneous_of(&self, deg: u32) -> bool {
        self.terms.keys().all(|b| b.degree() == deg)
    }

    pub fn max_aux(&self) -> Option<u8> {
        self.terms
            .keys()
            .filter_map(|b| match b {
                Basis::U(i) => Some(*i),
                _ => None,
            })
            .max()
    }
}

impl std::ops::Add for &CohClass {
    type Output = CohClass;
    fn add(self, rhs: &CohClass) -> CohClass {
        let mut out = self.clone();
        for (b, c) in rhs.terms() {
            out.add_term(b, c.clone());
        }
        out
    }
}

impl std::ops::Sub for &CohClass {
    type Output = CohClass;
    fn sub(self, rhs: &CohClass) -> CohClass {
        let mut out = self.clone();
        for (b, c) in rhs.terms() {
            out.add_term(b, -c.clone());
        }
        out
    }
}

impl std::ops::Neg for &CohClass {
    type Output = CohClass;
    fn neg(self) -> CohClass {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for CohClass {
    /// Compact rendering such as `1+h`, `1-h+3*pt`, `-1/2*k`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (b, c) in self.terms() {
            let neg = c < &Rational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if neg {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            first = false;
            match b {
                Basis::One => f.write_str(&rational::render(&mag))?,
                _ if mag.is_one() => f.write_str(&b.symbol())?,
                _ => write!(f, "{}*{}", rational::render(&mag), b.symbol())?,
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for CohClass {
    type Err = ParseError;

    /// Parses sums like `2h-k`, `1 - h + 3/2*pt`, `u2`, `0`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseError::Class(s.to_string());
        let src: String = s
            .replace('\u{2212}', "-")
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect();
        if src.is_empty() {
            return Err(bad());
        }
        let mut out = CohClass::zero();
        let mut chunks = Vec::new();
        let mut cur = String::new();
        for (i, ch) in src.char_indices() {
            if (ch == '+' || ch == '-') && i > 0 {
                chunks.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        chunks.push(cur);
        for chunk in chunks {
            let (neg, body) = match chunk.chars().next() {
                Some('-') => (true, &chunk[1..]),
                Some('+') => (false, &chunk[1..]),
                _ => (false, chunk.as_str()),
            };
            if body.is_empty() {
                return Err(bad());
            }
            let (coef, sym) = split_coefficient(body).ok_or_else(bad)?;
            let b = Basis::from_symbol(sym).ok_or_else(bad)?;
            let mut c = match coef {
                Some(text) => rational::parse(text).map_err(|_| bad())?,
                None => Rational::one(),
            };
            if neg {
                c = -c;
            }
            out.add_term(b, c);
        }
        Ok(out)
    }
}

/// Splits `3/2*pt`, `2h`, `pt`, `5` into coefficient text and symbol.
fn split_coefficient(body: &str) -> Option<(Option<&str>, &str)> {
    if let Some((c, s)) = body.split_once('*') {
        return Some((Some(c), s));
    }
    let cut = body
        .find(|c: char| !(c.is_ascii_digit() || c == '/'))
        .unwrap_or(body.len());
    if cut == body.len() {
        // bare number: a multiple of the unit class
        return Some((Some(body), "1"));
    }
    if cut == 0 {
        Some((None, body))
    } else {
        Some((Some(&body[..cut]), &body[cut..]))
    }
}

/// The model ring with its precomputed multiplication, dual basis and
/// diagonal tables.
#[derive(Clone, Debug)]
pub struct SurfaceModel {
    d: Rational,
    pi: Rational,
    kappa: Rational,
    b2_extra: usize,
    basis: Vec<Basis>,
    /// `products[i][j] = Some((l, c))` iff `b_i b_j = c * b_l`.
    products: Vec<Vec<Option<(usize, Rational)>>>,
    duals: Vec<CohClass>,
    /// `deltas[i]` expands `delta(b_i)` over basis pairs.
    deltas: Vec<Vec<(Basis, Basis, Rational)>>,
}

impl SurfaceModel {
    pub fn new(
        d: Rational,
        pi: Rational,
        kappa: Rational,
        b2_extra: usize,
    ) -> Result<Self, ModelError> {
        let det = &d * &kappa - &pi * &pi;
        if det.is_zero() {
            return Err(ModelError::DegeneratePairing {
                d: rational::render(&d),
                pi: rational::render(&pi),
                kappa: rational::render(&kappa),
            });
        }
        assert!(b2_extra < 255, "at most 254 auxiliary classes");
        let mut basis = vec![Basis::One, Basis::H, Basis::K];
        basis.extend((0..b2_extra).map(|i| Basis::U(i as u8)));
        basis.push(Basis::Pt);
        let n = basis.len();

        let mut model = SurfaceModel {
            d,
            pi,
            kappa,
            b2_extra,
            basis,
            products: Vec::new(),
            duals: Vec::new(),
            deltas: Vec::new(),
        };

        model.products = (0..n)
            .map(|i| (0..n).map(|j| model.raw_product(model.basis[i], model.basis[j])).collect())
            .collect();

        // Poincare duals: 1 <-> pt, u_i self-dual, inverse Gram matrix on (h, k).
        let dual_h = &CohClass::term(Basis::H, &model.kappa / &det)
            + &CohClass::term(Basis::K, -&model.pi / &det);
        let dual_k = &CohClass::term(Basis::H, -&model.pi / &det)
            + &CohClass::term(Basis::K, &model.d / &det);
        model.duals = model
            .basis
            .iter()
            .map(|b| match b {
                Basis::One => CohClass::pt(),
                Basis::Pt => CohClass::one(),
                Basis::H => dual_h.clone(),
                Basis::K => dual_k.clone(),
                Basis::U(_) => CohClass::basis(*b),
            })
            .collect();

        model.deltas = model
            .basis
            .iter()
            .map(|&a| model.delta_expansion(&CohClass::basis(a)))
            .collect();
        Ok(model)
    }

    pub fn from_ints(d: i64, pi: i64, kappa: i64, b2_extra: usize) -> Result<Self, ModelError> {
        Self::new(int(d), int(pi), int(kappa), b2_extra)
    }

    pub fn d(&self) -> &Rational {
        &self.d
    }

    pub fn pi(&self) -> &Rational {
        &self.pi
    }

    pub fn kappa(&self) -> &Rational {
        &self.kappa
    }

    pub fn b2_extra(&self) -> usize {
        self.b2_extra
    }

    /// Euler number `4 + b2_extra`.
    pub fn euler(&self) -> usize {
        4 + self.b2_extra
    }

    pub fn basis(&self) -> &[Basis] {
        &self.basis
    }

    pub fn index(&self, b: Basis) -> usize {
        match b {
            Basis::One => 0,
            Basis::H => 1,
            Basis::K => 2,
            Basis::U(i) => {
                debug_assert!((i as usize) < self.b2_extra, "u{} not in model", i + 1);
                3 + i as usize
            }
            Basis::Pt => 3 + self.b2_extra,
        }
    }

    pub fn contains(&self, b: Basis) -> bool {
        match b {
            Basis::U(i) => (i as usize) < self.b2_extra,
            _ => true,
        }
    }

    fn raw_product(&self, a: Basis, b: Basis) -> Option<(usize, Rational)> {
        use Basis::*;
        let pt = 3 + self.b2_extra;
        match (a, b) {
            (One, x) | (x, One) => Some((self.index(x), Rational::one())),
            (H, H) => Some((pt, self.d.clone())),
            (H, K) | (K, H) => Some((pt, self.pi.clone())),
            (K, K) => Some((pt, self.kappa.clone())),
            (U(i), U(j)) if i == j => Some((pt, Rational::one())),
            _ => None,
        }
        .filter(|(_, c)| !c.is_zero())
    }

    /// Product of two basis symbols as `coefficient * basis`, or `None` if zero.
    pub fn basis_product(&self, a: Basis, b: Basis) -> Option<(Basis, &Rational)> {
        self.products[self.index(a)][self.index(b)]
            .as_ref()
            .map(|(l, c)| (self.basis[*l], c))
    }

    pub fn mul(&self, a: &CohClass, b: &CohClass) -> CohClass {
        let mut out = CohClass::zero();
        for (x, cx) in a.terms() {
            for (y, cy) in b.terms() {
                if let Some((z, c)) = self.basis_product(x, y) {
                    out.add_term(z, cx * cy * c);
                }
            }
        }
        out
    }

    pub fn power(&self, a: &CohClass, k: u32) -> CohClass {
        (0..k).fold(CohClass::one(), |acc, _| self.mul(&acc, a))
    }

    /// Canonical class.
    pub fn canonical(&self) -> CohClass {
        CohClass::k()
    }

    /// Second Chern class `e * pt`.
    pub fn c2(&self) -> CohClass {
        CohClass::term(Basis::Pt, int(self.euler() as i64))
    }

    /// `int_X a` is the `pt` coefficient.
    pub fn integrate(a: &CohClass) -> Rational {
        a.coeff(Basis::Pt)
    }

    pub fn pairing(&self, a: &CohClass, b: &CohClass) -> Rational {
        Self::integrate(&self.mul(a, b))
    }

    /// `int_X a*b` for basis symbols.
    pub fn basis_pairing(&self, a: Basis, b: Basis) -> Rational {
        match self.basis_product(a, b) {
            Some((Basis::Pt, c)) => c.clone(),
            _ => Rational::zero(),
        }
    }

    /// Gram matrix of the pairing in basis order.
    pub fn gram(&self) -> Vec<Vec<Rational>> {
        self.basis
            .iter()
            .map(|&a| self.basis.iter().map(|&b| self.basis_pairing(a, b)).collect())
            .collect()
    }

    pub fn dual(&self, b: Basis) -> &CohClass {
        &self.duals[self.index(b)]
    }

    /// `delta(a) = sum_i (a b_i) (x) b^i` as a list of class pairs.
    pub fn diagonal(&self, a: &CohClass) -> Vec<(CohClass, CohClass)> {
        self.basis
            .iter()
            .map(|&b| (self.mul(a, &CohClass::basis(b)), self.dual(b).clone()))
            .filter(|(x, y)| !x.is_zero() && !y.is_zero())
            .collect()
    }

    fn delta_expansion(&self, a: &CohClass) -> Vec<(Basis, Basis, Rational)> {
        let mut acc: BTreeMap<(Basis, Basis), Rational> = BTreeMap::new();
        for (x, y) in self.diagonal(a) {
            for (bx, cx) in x.terms() {
                for (by, cy) in y.terms() {
                    *acc.entry((bx, by)).or_insert_with(Rational::zero) += cx * cy;
                }
            }
        }
        acc.into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((x, y), c)| (x, y, c))
            .collect()
    }

    /// `delta(b)` for a basis symbol, fully expanded over basis pairs.
    pub fn delta_basis(&self, b: Basis) -> &[(Basis, Basis, Rational)] {
        &self.deltas[self.index(b)]
    }

    pub fn delta_tensor(&self, a: &CohClass) -> Vec<(Basis, Basis, Rational)> {
        self.delta_expansion(a)
    }
}

/// A K-theory class on the surface described by rank and Chern classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KClassSpec {
    pub rank: i64,
    pub c1: CohClass,
    pub c2: CohClass,
}

impl KClassSpec {
    pub fn new(rank: i64, c1: CohClass, c2: CohClass) -> Self {
        debug_assert!(c1.is_homogeneous_of(2), "c1 must be of pure degree 2");
        debug_assert!(c2.is_homogeneous_of(4), "c2 must be of pure degree 4");
        KClassSpec { rank, c1, c2 }
    }

    pub fn zero() -> Self {
        Self::new(0, CohClass::zero(), CohClass::zero())
    }

    /// Class of a line bundle with first Chern class `c1`.
    pub fn line_bundle(c1: CohClass) -> Self {
        Self::new(1, c1, CohClass::zero())
    }

    /// Negative of a line bundle class: `c(-L) = 1/(1 + c1) = 1 - c1 + c1^2`.
    pub fn neg_line_bundle(c1: &CohClass, model: &SurfaceModel) -> Self {
        Self::new(-1, -c1, model.mul(c1, c1))
    }

    /// `c_k(u)` for `k = 0, 1, 2`; zero above.
    pub fn chern(&self, k: u32) -> CohClass {
        match k {
            0 => CohClass::one(),
            1 => self.c1.clone(),
            2 => self.c2.clone(),
            _ => CohClass::zero(),
        }
    }

    /// Parses `L(c1=h)`, `-L(c1=h)`, `O`, or `K(rank=2,c1=h,c2=3*pt)`.
    pub fn parse(s: &str, model: &SurfaceModel) -> Result<Self, ParseError> {
        let bad = || ParseError::Bundle(s.to_string());
        let t: String = s
            .replace('\u{2212}', "-")
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect();
        if t == "O" {
            return Ok(Self::line_bundle(CohClass::zero()));
        }
        if t == "0" {
            return Ok(Self::zero());
        }
        let (neg, rest) = match t.strip_prefix('-') {
            Some(r) => (true, r),
            None => (false, t.as_str()),
        };
        let (head, args) = rest
            .strip_suffix(')')
            .and_then(|r| r.split_once('('))
            .ok_or_else(bad)?;
        let mut fields: BTreeMap<&str, &str> = BTreeMap::new();
        for kv in args.split(',').filter(|p| !p.is_empty()) {
            let (k, v) = kv.split_once('=').ok_or_else(bad)?;
            if fields.insert(k, v).is_some() {
                return Err(bad());
            }
        }
        let class = |key: &str| -> Result<CohClass, ParseError> {
            match fields.get(key) {
                Some(v) => v.parse::<CohClass>().map_err(|_| bad()),
                None => Ok(CohClass::zero()),
            }
        };
        let check = |c: &CohClass, deg: u32| -> Result<(), ParseError> {
            let in_model = c.terms().all(|(b, _)| model.contains(b));
            if c.is_homogeneous_of(deg) && in_model {
                Ok(())
            } else {
                Err(bad())
            }
        };
        let spec = match head {
            "L" => {
                if fields.keys().any(|k| *k != "c1") {
                    return Err(bad());
                }
                let c1 = class("c1")?;
                check(&c1, 2)?;
                if neg {
                    return Ok(Self::neg_line_bundle(&c1, model));
                }
                Self::line_bundle(c1)
            }
            "K" => {
                if fields.keys().any(|k| !matches!(*k, "rank" | "c1" | "c2")) {
                    return Err(bad());
                }
                let rank: i64 = match fields.get("rank") {
                    Some(r) => r.parse().map_err(|_| bad())?,
                    None => 0,
                };
                let c1 = class("c1")?;
                let c2 = class("c2")?;
                check(&c1, 2)?;
                check(&c2, 4)?;
                if neg {
                    return Err(bad());
                }
                Self::new(rank, c1, c2)
            }
            _ => return Err(bad()),
        };
        Ok(spec)
    }
}

/// Total Chern class and Chern character of `u`, both up to degree 4.
pub fn chern_data(u: &KClassSpec, model: &SurfaceModel) -> (CohClass, CohClass) {
    let c = &(&CohClass::one() + &u.c1) + &u.c2;
    let half = rational::frac(1, 2);
    let quad = &model.mul(&u.c1, &u.c1) - &u.c2.scale(&int(2));
    let ch = &(&CohClass::term(Basis::One, int(u.rank)) + &u.c1) + &quad.scale(&half);
    (c, ch)
}
