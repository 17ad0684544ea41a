//! Truncated univariate power series over exact rationals.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::SeriesError;
use crate::rational::{self, int, Rational};

/// `c_0 + c_1 z + ... + c_N z^N`, with all higher terms discarded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<Rational>,
}

impl PowerSeries {
    pub fn new(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        PowerSeries { coeffs }
    }

    pub fn from_ints(cs: &[i64], order: usize) -> Self {
        Self::new(cs.iter().map(|&c| int(c)).collect(), order)
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    /// The series `z`.
    pub fn var(order: usize) -> Self {
        Self::new(vec![Rational::zero(), Rational::one()], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs[..=order.min(self.order())].to_vec(), order)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::new((0..=n).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect(), n)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect(), self.order())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut out = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                out[i + j] += a * b;
            }
        }
        Self::new(out, n)
    }

    /// Formal derivative, losing one order.
    pub fn derivative(&self) -> Self {
        let n = self.order().saturating_sub(1);
        Self::new(
            (1..=self.order()).map(|k| &self.coeffs[k] * int(k as i64)).collect(),
            n,
        )
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(SeriesError::InvalidConstantTerm {
                op: "inverse",
                expected: "nonzero",
                found: rational::render(c0),
            });
        }
        let n = self.order();
        let inv0 = c0.recip();
        let mut out = vec![Rational::zero(); n + 1];
        out[0] = inv0.clone();
        for k in 1..=n {
            let mut acc = Rational::zero();
            for j in 1..=k {
                acc += &self.coeffs[j] * &out[k - j];
            }
            out[k] = -acc * &inv0;
        }
        Ok(Self::new(out, n))
    }

    /// `exp(s)` for `s(0) = 0`, via `E' = s' E`.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        self.expect_constant("exp", "0", Rational::zero())?;
        let n = self.order();
        let mut out = vec![Rational::zero(); n + 1];
        out[0] = Rational::one();
        for k in 1..=n {
            let mut acc = Rational::zero();
            for j in 1..=k {
                acc += &self.coeffs[j] * int(j as i64) * &out[k - j];
            }
            out[k] = acc / int(k as i64);
        }
        Ok(Self::new(out, n))
    }

    /// `log(s)` for `s(0) = 1`, via `L' = s'/s`.
    pub fn log(&self) -> Result<Self, SeriesError> {
        self.expect_constant("log", "1", Rational::one())?;
        let n = self.order();
        let quotient = self.derivative().mul(&self.inverse()?.truncate(n.saturating_sub(1)));
        let mut out = vec![Rational::zero(); n + 1];
        for k in 1..=n {
            out[k] = quotient.coeffs[k - 1].clone() / int(k as i64);
        }
        Ok(Self::new(out, n))
    }

    /// `s^a = exp(a log s)` for `s(0) = 1` and rational `a`.
    pub fn pow(&self, a: &Rational) -> Result<Self, SeriesError> {
        self.expect_constant("pow", "1", Rational::one())?;
        self.log()?.scale(a).exp()
    }

    /// `self(inner(z))` for `inner(0) = 0`.
    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        inner.expect_constant("compose", "0", Rational::zero())?;
        let n = self.order().min(inner.order());
        let mut acc = Self::zero(n);
        for c in self.coeffs[..=n].iter().rev() {
            acc = acc.mul(inner).add(&Self::constant(c.clone(), n));
        }
        Ok(acc)
    }

    /// Compositional inverse `t` with `self(t(z)) = z`, by Lagrange
    /// inversion: `[z^k] t = 1/k [w^{k-1}] (w / self(w))^k`.
    pub fn revert(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() || self.order() == 0 || self.coeffs[1].is_zero() {
            return Err(SeriesError::NotInvertible(format!(
                "need c0 = 0 and c1 != 0, got c0 = {}, c1 = {}",
                rational::render(&self.coeffs[0]),
                self.coeffs.get(1).map(rational::render).unwrap_or_else(|| "0".into()),
            )));
        }
        let n = self.order();
        let shifted = Self::new(self.coeffs[1..].to_vec(), n - 1);
        let ratio = shifted.inverse()?;
        let mut out = vec![Rational::zero(); n + 1];
        let mut power = Self::one(n - 1);
        for k in 1..=n {
            power = power.mul(&ratio);
            out[k] = power.coeffs[k - 1].clone() / int(k as i64);
        }
        Ok(Self::new(out, n))
    }

    fn expect_constant(&self, op: &'static str, expected: &'static str, want: Rational) -> Result<(), SeriesError> {
        if self.coeffs[0] != want {
            return Err(SeriesError::InvalidConstantTerm {
                op,
                expected,
                found: rational::render(&self.coeffs[0]),
            });
        }
        Ok(())
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Rational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let body = match k {
                0 => rational::render(&mag),
                _ => {
                    let var = if k == 1 { "z".to_string() } else { format!("z^{k}") };
                    if mag.is_one() {
                        var
                    } else {
                        format!("{}*{}", rational::render(&mag), var)
                    }
                }
            };
            f.write_str(&body)?;
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(z^{})", self.order() + 1)
    }
}

/// Exponents `(a, b, c)` of the closed-form Segre generating function,
/// with `chi = (e + kappa)/12`.
pub fn conjecture_exponents(d: &Rational, pi: &Rational, kappa: &Rational, e: &Rational) -> (Rational, Rational, Rational) {
    let chi = (e + kappa) / int(12);
    let a = pi - kappa * int(2);
    let b = d - pi * int(2) + kappa + &chi * int(3);
    let c = (d - pi) / int(2) + chi;
    (a, b, c)
}

/// `k(z)`: the reversion of `k (1-k) (1-2k)^4 / (1-6k+6k^2)^3`.
pub fn k_series(order: usize) -> PowerSeries {
    if order == 0 {
        return PowerSeries::zero(0);
    }
    let k = PowerSeries::var(order);
    let one = PowerSeries::one(order);
    let one_minus_k = one.sub(&k);
    let one_minus_2k = PowerSeries::from_ints(&[1, -2], order);
    let quad = PowerSeries::from_ints(&[1, -6, 6], order);
    let num = k
        .mul(&one_minus_k)
        .mul(&one_minus_2k.pow(&int(4)).expect("unit constant"));
    let den = quad.pow(&int(3)).expect("unit constant").inverse().expect("unit constant");
    num.mul(&den).revert().expect("linear term is 1")
}

/// `(1-k)^a (1-2k)^b (1-6k+6k^2)^{-c}` with `k = k(z)`, to order `order`.
pub fn conjecture_series(d: &Rational, pi: &Rational, kappa: &Rational, e: &Rational, order: usize) -> PowerSeries {
    let (a, b, c) = conjecture_exponents(d, pi, kappa, e);
    let k = k_series(order);
    let one = PowerSeries::one(order);
    let f1 = one.sub(&k).pow(&a).expect("unit constant");
    let f2 = one.sub(&k.scale(&int(2))).pow(&b).expect("unit constant");
    let quad = one.sub(&k.scale(&int(6))).add(&k.mul(&k).scale(&int(6)));
    let f3 = quad.pow(&-c).expect("unit constant");
    f1.mul(&f2).mul(&f3)
}
