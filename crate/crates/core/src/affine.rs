//! The affine plane: the Fock space is the polynomial ring `Q[q_1, q_2, ...]`
//! and the derived operators become honest differential operators.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::Rng;
use smallvec::SmallVec;

use crate::linalg::rank;
use crate::rational::{self, int, Rational};

/// Parts of a partition in descending order; `[3, 1, 1]` is `q_3 q_1^2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(SmallVec<[u32; 8]>);

impl Partition {
    pub fn new(parts: impl IntoIterator<Item = u32>) -> Self {
        let mut v: SmallVec<[u32; 8]> = parts.into_iter().filter(|&p| p > 0).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition(v)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `m[i]` is the multiplicity of the part `i + 1`, for parts up to `n`.
    pub fn multiplicities(&self, n: u32) -> Vec<u32> {
        let mut m = vec![0; n as usize];
        for &p in &self.0 {
            m[p as usize - 1] += 1;
        }
        m
    }

    /// Inverse of [`Partition::multiplicities`].
    pub fn from_multiplicities(m: &[u32]) -> Self {
        Self::new(
            m.iter()
                .enumerate()
                .flat_map(|(i, &k)| std::iter::repeat_n(i as u32 + 1, k as usize)),
        )
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let mut i = 0;
        let mut first = true;
        while i < self.0.len() {
            let p = self.0[i];
            let k = self.0[i..].iter().take_while(|&&x| x == p).count();
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if k == 1 {
                write!(f, "q{p}")?;
            } else {
                write!(f, "q{p}^{k}")?;
            }
            i += k;
        }
        Ok(())
    }
}

/// All partitions of `n`, descending lexicographically by parts.
pub fn partitions(n: u32) -> Vec<Partition> {
    fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition::new(cur.iter().copied()));
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// A polynomial in `q_1, q_2, ...` with exact coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightedPoly {
    terms: BTreeMap<Partition, Rational>,
}

impl WeightedPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Partition::new([]), Rational::one())
    }

    pub fn monomial(p: Partition, c: Rational) -> Self {
        let mut out = Self::zero();
        out.add_term(p, c);
        out
    }

    /// `q_1^n / n!`, the unit of the weight-`n` piece.
    pub fn fundamental(n: u32) -> Self {
        Self::monomial(
            Partition::new(std::iter::repeat_n(1, n as usize)),
            Rational::new(One::one(), rational::factorial(n)),
        )
    }

    pub fn add_term(&mut self, p: Partition, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(p.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&p);
        }
    }

    pub fn coeff(&self, p: &Partition) -> Rational {
        self.terms.get(p).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = Self::zero();
        for (p, c) in &self.terms {
            out.add_term(p.clone(), c * s);
        }
        out
    }

    /// Multiplication by `q_n`.
    pub fn times_q(&self, n: u32) -> Self {
        let mut out = Self::zero();
        for (p, c) in &self.terms {
            out.add_term(Partition::new(p.parts().iter().copied().chain([n])), c.clone());
        }
        out
    }

    pub fn max_weight(&self) -> u32 {
        self.terms.keys().map(Partition::weight).max().unwrap_or(0)
    }
}

impl fmt::Display for WeightedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (p, c)) in self.terms.iter().rev().enumerate() {
            let neg = c < &Rational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            f.write_str(match (i, neg) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            })?;
            if p.parts().is_empty() {
                f.write_str(&rational::render(&mag))?;
            } else if mag.is_one() {
                write!(f, "{p}")?;
            } else {
                write!(f, "{}*{p}", rational::render(&mag))?;
            }
        }
        Ok(())
    }
}

/// `D_{n,v} = sum_{n_1..n_v > 0} q_{n + sum n_i} prod d_{n_i}` with
/// `d_m = m d/dq_m`, `D_{n,0} = q_n` and `D_{0,0} = 0`.
pub fn d_op(n: u32, nu: u32, p: &WeightedPoly) -> WeightedPoly {
    if nu == 0 {
        return if n == 0 { WeightedPoly::zero() } else { p.times_q(n) };
    }
    let mut out = WeightedPoly::zero();
    let orderings = Rational::from_integer(rational::factorial(nu));
    for (part, c) in p.terms() {
        let parts = part.parts();
        if parts.len() < nu as usize {
            continue;
        }
        for subset in combinations(parts.len(), nu as usize) {
            let prod: u64 = subset.iter().map(|&i| parts[i] as u64).product();
            let merged: u32 = n + subset.iter().map(|&i| parts[i]).sum::<u32>();
            let rest = parts
                .iter()
                .enumerate()
                .filter(|(i, _)| !subset.contains(i))
                .map(|(_, &x)| x)
                .chain([merged]);
            out.add_term(Partition::new(rest), c * &orderings * int(prod as i64));
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Chern character component `ch_v = (-1)^v / (v+1)! D_{0,v+1}`.
pub fn ch_op(nu: u32, p: &WeightedPoly) -> WeightedPoly {
    let c = rational::sign(nu as i64) / Rational::from_integer(rational::factorial(nu + 1));
    d_op(0, nu + 1, p).scale(&c)
}

/// Boundary operator `-1/2 D_{0,2}`.
pub fn boundary(p: &WeightedPoly) -> WeightedPoly {
    d_op(0, 2, p).scale(&rational::frac(-1, 2))
}

/// `q_n^{(v)} p` by iterating `f' = [d, f]` starting from multiplication by `q_n`.
pub fn q_derivative(n: u32, nu: u32, p: &WeightedPoly) -> WeightedPoly {
    if nu == 0 {
        return p.times_q(n);
    }
    let inner = q_derivative(n, nu - 1, p);
    boundary(&inner).sub(&q_derivative(n, nu - 1, &boundary(p)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenerationReport {
    pub n: u32,
    pub rank: usize,
    pub partitions: usize,
    pub words: usize,
    pub max_word_len: usize,
}

impl GenerationReport {
    pub fn generated(&self) -> bool {
        self.rank == self.partitions
    }
}

/// Rank of the span of `ch_{v_1} ... ch_{v_k} (q_1^n / n!)` inside the
/// weight-`n` piece, over words with `1 <= v_i` and `sum v_i <= n - 1`
/// (the top cohomological degree); such words have length at most `n`.
pub fn generation_check(n: u32) -> GenerationReport {
    assert!(n >= 1);
    let basis = partitions(n);
    let index: BTreeMap<&Partition, usize> = basis.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut rows = Vec::new();
    let mut max_len = 0;
    let mut stack = vec![(WeightedPoly::fundamental(n), 1u32, 0u32, 0usize)];
    while let Some((v, min_nu, used, len)) = stack.pop() {
        let mut row = vec![Rational::zero(); basis.len()];
        for (p, c) in v.terms() {
            row[index[p]] = c.clone();
        }
        rows.push(row);
        max_len = max_len.max(len);
        for nu in min_nu..=(n - 1 - used) {
            let next = ch_op(nu, &v);
            if !next.is_zero() {
                stack.push((next, nu, used + nu, len + 1));
            }
        }
    }
    assert!(max_len <= n as usize, "word length bound");
    GenerationReport {
        n,
        rank: rank(&rows),
        partitions: basis.len(),
        words: rows.len(),
        max_word_len: max_len,
    }
}

/// A random polynomial with `terms` monomials of weight `<= max_weight`.
pub fn random_poly<R: Rng>(rng: &mut R, max_weight: u32, terms: usize) -> WeightedPoly {
    let pool: Vec<Partition> = (0..=max_weight).flat_map(partitions).collect();
    let mut out = WeightedPoly::zero();
    for _ in 0..terms {
        let p = pool[rng.gen_range(0..pool.len())].clone();
        out.add_term(p, int(rng.gen_range(-4i64..=4)));
    }
    out
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::rational::frac;

    fn q(parts: &[u32]) -> WeightedPoly {
        WeightedPoly::monomial(Partition::new(parts.iter().copied()), int(1))
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (1..=8).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11, 15, 22]);
        let p = Partition::new([1, 3, 1]);
        assert_eq!(p.multiplicities(3), vec![2, 0, 1]);
        assert_eq!(Partition::from_multiplicities(&[2, 0, 1]), p);
        assert_eq!(p.to_string(), "q3*q1^2");
    }

    #[test]
    fn d_op_examples() {
        let p = q(&[2, 1]);
        assert_eq!(d_op(1, 0, &p), q(&[2, 1, 1]));
        assert!(d_op(0, 0, &p).is_zero());
        assert_eq!(d_op(0, 2, &q(&[1, 1])), q(&[2]).scale(&int(2)));
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for m in 1..=3 {
            let v = random_poly(&mut rng, 5, 6);
            let lhs = d_op(0, 2, &d_op(m, 0, &v)).sub(&d_op(m, 0, &d_op(0, 2, &v)));
            assert_eq!(lhs, d_op(m, 1, &v).scale(&int(2 * m as i64)));
        }
    }

    #[test]
    fn ch_op_examples() {
        for n in 0..=5 {
            let f = WeightedPoly::fundamental(n);
            assert_eq!(ch_op(0, &f), f.scale(&int(n as i64)));
        }
        let two = WeightedPoly::fundamental(2);
        assert_eq!(ch_op(1, &two), q(&[2]).scale(&frac(-1, 2)));
        for nu in 0..4 {
            assert!(ch_op(nu, &WeightedPoly::one()).is_zero());
        }
    }

    #[test]
    fn generation_small() {
        let r1 = generation_check(1);
        assert_eq!((r1.rank, r1.generated()), (1, true));
        let r3 = generation_check(3);
        assert_eq!((r3.rank, r3.generated()), (3, true));
        let r5 = generation_check(5);
        assert_eq!((r5.rank, r5.generated()), (7, true));
    }

    #[test]
    fn leading_term_of_induction_step() {
        for n in 2..=8u32 {
            for lam in partitions(n) {
                let mult = lam.multiplicities(n);
                let Some(a) = (2..=n).find(|&i| mult[i as usize - 1] > 0) else {
                    continue;
                };
                let mut prev = mult.clone();
                prev[0] += a;
                prev[a as usize - 1] -= 1;
                let source = WeightedPoly::monomial(Partition::from_multiplicities(&prev), int(1));
                let image = ch_op(a - 1, &source);
                let want = rational::sign(a as i64 - 1) * rational::binomial_int((mult[0] + a) as i64, a);
                assert_eq!(image.coeff(&lam), want, "{lam}");
                for (p, _) in image.terms() {
                    assert!(p == &lam || p.multiplicities(n) > mult, "{p} not below {lam}");
                }
            }
        }
    }
}
