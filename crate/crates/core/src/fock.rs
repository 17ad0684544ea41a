//! The Fock space: sparse exact vectors over normal-ordered creation
//! monomials `q_{n_1}(b_1) ... q_{n_k}(b_k) 1`.
//!
//! All model classes are even, so creation operators commute and a monomial
//! is a multiset of `(index, basis)` factors. Annihilators act as
//! derivations contracting one factor `q_n(b)` against `q_{-n}(a)` with the
//! scalar `-n * int(a b)`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use rayon::prelude::*;
use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use crate::rational::{self, int, Rational};
use crate::surface::{Basis, CohClass, SurfaceModel};

const PARALLEL_THRESHOLD: usize = 512;

/// One factor `q_index(class)` of a creation monomial.
pub type Factor = (u8, Basis);

fn factor_order(a: &Factor, b: &Factor) -> Ordering {
    b.0.cmp(&a.0).then(a.1.cmp(&b.1))
}

/// Real cohomological degree contributed by `q_n(b)`.
pub fn factor_degree(f: &Factor) -> u32 {
    2 * f.0 as u32 - 2 + f.1.degree()
}

/// A canonical creation monomial (indices descending, then basis order).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FockMonomial(SmallVec<[Factor; 8]>);

impl FockMonomial {
    pub fn vacuum() -> Self {
        Self::default()
    }

    pub fn new(factors: impl IntoIterator<Item = Factor>) -> Self {
        let mut v: SmallVec<[Factor; 8]> = factors.into_iter().collect();
        assert!(v.iter().all(|f| f.0 > 0), "creation indices must be positive");
        v.sort_unstable_by(factor_order);
        FockMonomial(v)
    }

    pub fn factors(&self) -> &[Factor] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().map(|f| f.0 as u32).sum()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(factor_degree).sum()
    }

    pub fn with(&self, f: Factor) -> Self {
        debug_assert!(f.0 > 0);
        let mut v = self.0.clone();
        let pos = v
            .iter()
            .position(|g| factor_order(&f, g) == Ordering::Less)
            .unwrap_or(v.len());
        v.insert(pos, f);
        FockMonomial(v)
    }

    /// Drops the factors at the given (sorted, distinct) positions and
    /// inserts `add`.
    pub fn replace(&self, drop: &[usize], add: &[Factor]) -> Self {
        let mut v: SmallVec<[Factor; 8]> = self
            .0
            .iter()
            .enumerate()
            .filter(|(i, _)| !drop.contains(i))
            .map(|(_, f)| *f)
            .collect();
        v.extend_from_slice(add);
        v.sort_unstable_by(factor_order);
        FockMonomial(v)
    }

    /// Total order used for deterministic output: weight, degree, then factors.
    pub fn render_order(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then(self.degree().cmp(&other.degree()))
            .then_with(|| {
                for (a, b) in self.0.iter().zip(other.0.iter()) {
                    let o = factor_order(a, b);
                    if o != Ordering::Equal {
                        return o;
                    }
                }
                self.0.len().cmp(&other.0.len())
            })
    }
}

impl fmt::Display for FockMonomial {
    /// `q3[h]*q1[pt]`; the vacuum renders as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, (n, b)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "q{}[{}]", n, b)?;
        }
        Ok(())
    }
}

/// Sparse exact vector in the Fock space.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FockVector {
    terms: FxHashMap<FockMonomial, Rational>,
}

impl FockVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn vacuum() -> Self {
        Self::monomial(FockMonomial::vacuum(), Rational::one())
    }

    pub fn monomial(m: FockMonomial, c: Rational) -> Self {
        let mut v = Self::zero();
        v.add_term(m, c);
        v
    }

    pub fn add_term(&mut self, m: FockMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &FockVector, s: &Rational) {
        if s.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c * s);
        }
    }

    pub fn add_assign(&mut self, other: &FockVector) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn scale(&self, s: &Rational) -> FockVector {
        let mut out = FockVector::zero();
        out.add_scaled(self, s);
        out
    }

    pub fn sub(&self, other: &FockVector) -> FockVector {
        let mut out = self.clone();
        out.add_scaled(other, &-Rational::one());
        out
    }

    pub fn add(&self, other: &FockVector) -> FockVector {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FockMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &FockMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Applies a linear map given on monomials, in parallel for large inputs.
    pub fn map_monomials<F>(&self, f: F) -> FockVector
    where
        F: Fn(&FockMonomial, &Rational, &mut FockVector) + Sync,
    {
        if self.terms.len() < PARALLEL_THRESHOLD {
            let mut out = FockVector::zero();
            for (m, c) in &self.terms {
                f(m, c, &mut out);
            }
            return out;
        }
        self.terms
            .par_iter()
            .fold(FockVector::zero, |mut acc, (m, c)| {
                f(m, c, &mut acc);
                acc
            })
            .reduce(FockVector::zero, FockVector::merge)
    }

    fn merge(mut self, mut other: FockVector) -> FockVector {
        if self.terms.len() < other.terms.len() {
            std::mem::swap(&mut self, &mut other);
        }
        for (m, c) in other.terms {
            self.add_term(m, c);
        }
        self
    }

    pub fn filter(&self, keep: impl Fn(&FockMonomial) -> bool) -> FockVector {
        FockVector {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn weight_part(&self, n: u32) -> FockVector {
        self.filter(|m| m.weight() == n)
    }

    pub fn degree_part(&self, deg: u32) -> FockVector {
        self.filter(|m| m.degree() == deg)
    }

    /// Drops every term of degree above `max_degree`.
    pub fn truncate_degree(&self, max_degree: u32) -> FockVector {
        self.filter(|m| m.degree() <= max_degree)
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(FockMonomial::degree).min()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(FockMonomial::degree).max()
    }

    pub fn max_weight(&self) -> Option<u32> {
        self.terms.keys().map(FockMonomial::weight).max()
    }

    /// Terms in deterministic render order.
    pub fn sorted_terms(&self) -> Vec<(&FockMonomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.render_order(b.0));
        v
    }

    /// Canonical text rendering; single-factor terms of equal index are
    /// collected as `q1[1+h]`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut singles: Vec<(u8, CohClass, u32)> = Vec::new();
        let mut rest: Vec<(&FockMonomial, &Rational)> = Vec::new();
        for (m, c) in self.sorted_terms() {
            if let [(n, b)] = m.factors() {
                match singles.iter_mut().find(|(k, _, _)| k == n) {
                    Some((_, class, _)) => class.add_term(*b, c.clone()),
                    None => singles.push((*n, CohClass::term(*b, c.clone()), m.weight())),
                }
            } else {
                rest.push((m, c));
            }
        }
        let mut ordered: Vec<(u32, u32, String, bool)> = Vec::new();
        for (n, class, w) in singles {
            ordered.push((w, 0, format!("q{}[{}]", n, class), false));
        }
        for (m, c) in rest {
            let neg = c < &Rational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            let body = if mag.is_one() {
                m.to_string()
            } else if m.is_empty() {
                rational::render(&mag)
            } else {
                format!("{}*{}", rational::render(&mag), m)
            };
            ordered.push((m.weight(), if m.is_empty() { 0 } else { 1 }, body, neg));
        }
        // stable: singles before multi-factor terms of the same weight
        ordered.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
        for (_, _, body, neg) in ordered {
            pieces.push((neg, body));
        }
        let mut out = String::new();
        for (i, (neg, body)) in pieces.into_iter().enumerate() {
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(&body);
        }
        out
    }
}

impl fmt::Display for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

pub fn vacuum() -> FockVector {
    FockVector::vacuum()
}

/// `q_n(a) v` for a creation index `n >= 1`.
pub fn create(n: u8, a: &CohClass, v: &FockVector) -> FockVector {
    assert!(n >= 1, "creation index must be positive");
    let mut out = FockVector::zero();
    for (m, c) in v.terms() {
        for (b, ca) in a.terms() {
            out.add_term(m.with((n, b)), c * ca);
        }
    }
    out
}

/// `q_{-n}(a) v` for `n >= 1`: contracts each factor `q_n(b)` to `-n * int(a b)`.
pub fn annihilate(n: u8, a: &CohClass, v: &FockVector, model: &SurfaceModel) -> FockVector {
    assert!(n >= 1, "annihilation index must be positive");
    let mut out = FockVector::zero();
    let scale = int(-(n as i64));
    for (m, c) in v.terms() {
        for (pos, &(k, b)) in m.factors().iter().enumerate() {
            if k != n {
                continue;
            }
            let mut contraction = Rational::zero();
            for (x, cx) in a.terms() {
                let p = model.basis_pairing(x, b);
                if !p.is_zero() {
                    contraction += cx * p;
                }
            }
            if contraction.is_zero() {
                continue;
            }
            out.add_term(m.replace(&[pos], &[]), c * &contraction * &scale);
        }
    }
    out
}

/// `q_m(a) v` for any signed index; `q_0 = 0`.
pub fn apply_q(m: i32, a: &CohClass, v: &FockVector, model: &SurfaceModel) -> FockVector {
    match m.cmp(&0) {
        Ordering::Greater => create(index_u8(m), a, v),
        Ordering::Less => annihilate(index_u8(-m), a, v, model),
        Ordering::Equal => FockVector::zero(),
    }
}

pub(crate) fn index_u8(m: i32) -> u8 {
    u8::try_from(m).expect("operator index out of range")
}

/// Poincare pairing `int_{X^[n]} v w`, extended bilinearly.
///
/// For a monomial `v = prod q_{n_i}(a_i) 1` this is `(-1)^{sum n_i}` times
/// the vacuum coefficient of `prod q_{-n_i}(a_i) w`; evaluated here as a
/// product of permanents over groups of equal index.
pub fn pairing(v: &FockVector, w: &FockVector, model: &SurfaceModel) -> Rational {
    let mut by_signature: FxHashMap<SmallVec<[u8; 8]>, Vec<(&FockMonomial, &Rational)>> =
        FxHashMap::default();
    for (m, c) in w.terms() {
        by_signature.entry(signature(m)).or_default().push((m, c));
    }
    let mut total = Rational::zero();
    for (mv, cv) in v.terms() {
        let Some(partners) = by_signature.get(&signature(mv)) else {
            continue;
        };
        for (mw, cw) in partners {
            let p = monomial_pairing(mv, mw, model);
            if !p.is_zero() {
                total += cv * *cw * p;
            }
        }
    }
    total
}

fn signature(m: &FockMonomial) -> SmallVec<[u8; 8]> {
    m.factors().iter().map(|f| f.0).collect()
}

/// Pairing of two monomials with identical index multisets.
fn monomial_pairing(a: &FockMonomial, b: &FockMonomial, model: &SurfaceModel) -> Rational {
    let fa = a.factors();
    let fb = b.factors();
    let mut total = Rational::one();
    let mut start = 0;
    while start < fa.len() {
        let n = fa[start].0;
        let end = start + fa[start..].iter().take_while(|f| f.0 == n).count();
        let block: Vec<Vec<Rational>> = (start..end)
            .map(|i| (start..end).map(|j| model.basis_pairing(fa[i].1, fb[j].1)).collect())
            .collect();
        let perm = permanent(&block);
        if perm.is_zero() {
            return Rational::zero();
        }
        // each contraction contributes (-1)^n * (-n)
        let per = rational::sign(n as i64 + 1) * int(n as i64);
        total *= perm * rational::pow(&per, (end - start) as u32);
        start = end;
    }
    total
}

fn permanent(m: &[Vec<Rational>]) -> Rational {
    fn go(m: &[Vec<Rational>], row: usize, used: &mut Vec<bool>) -> Rational {
        if row == m.len() {
            return Rational::one();
        }
        let mut acc = Rational::zero();
        for j in 0..m.len() {
            if used[j] || m[row][j].is_zero() {
                continue;
            }
            used[j] = true;
            acc += &m[row][j] * go(m, row + 1, used);
            used[j] = false;
        }
        acc
    }
    go(m, 0, &mut vec![false; m.len()])
}

/// `1_{X^[n]} = q_1(1)^n / n! 1`.
pub fn fundamental_class(n: u32) -> FockVector {
    let coef = Rational::new(BigInt::one(), rational::factorial(n));
    let m = FockMonomial::new((0..n).map(|_| (1u8, Basis::One)));
    FockVector::monomial(m, coef)
}

/// `int_{X^[n]} v`: pairing of the weight-`n` part against `1_{X^[n]}`.
///
/// Only pure `q_1` monomials pair nontrivially with the fundamental class;
/// such a monomial integrates to `prod int(b_i)`, i.e. only `q_1(pt)^n`
/// survives.
pub fn integrate_hilb(v: &FockVector, n: u32) -> Rational {
    let top = FockMonomial::new((0..n).map(|_| (1u8, Basis::Pt)));
    v.coeff(&top)
}

/// All canonical monomials of the given weight over the model basis.
pub fn monomials_of_weight(n: u32, model: &SurfaceModel) -> Vec<FockMonomial> {
    let mut out = Vec::new();
    let atoms: Vec<Factor> = (1..=n as u8)
        .rev()
        .flat_map(|k| model.basis().iter().map(move |&b| (k, b)))
        .collect();
    let mut cur: Vec<Factor> = Vec::new();
    fn go(
        atoms: &[Factor],
        from: usize,
        remaining: u32,
        cur: &mut Vec<Factor>,
        out: &mut Vec<FockMonomial>,
    ) {
        if remaining == 0 {
            out.push(FockMonomial::new(cur.iter().copied()));
            return;
        }
        for i in from..atoms.len() {
            let a = atoms[i];
            if a.0 as u32 > remaining {
                continue;
            }
            cur.push(a);
            go(atoms, i, remaining - a.0 as u32, cur, out);
            cur.pop();
        }
    }
    go(&atoms, 0, n, &mut cur, &mut out);
    out
}

/// Number of canonical monomials of weight `n` and real degree `i`.
pub fn dimension(n: u32, i: u32, model: &SurfaceModel) -> usize {
    monomials_of_weight(n, model)
        .iter()
        .filter(|m| m.degree() == i)
        .count()
}

/// Betti numbers of `X^[n]` for `n <= n_max` from the product formula
/// `prod_m (1 - t^{2m-2} q^m)^{-1} (1 - t^{2m} q^m)^{-(e-2)} (1 - t^{2m+2} q^m)^{-1}`.
///
/// Returns `table[n][i]` for real degrees `i <= 4 n_max`.
pub fn goettsche_betti(n_max: u32, euler: usize) -> Vec<Vec<u64>> {
    let nq = n_max as usize + 1;
    let nt = 4 * n_max as usize + 1;
    let mut table = vec![vec![0u64; nt]; nq];
    table[0][0] = 1;
    // multiply by 1/(1 - t^a q^m) = sum_j t^{aj} q^{mj}, `mult` times
    let factors = |m: usize| [(2 * m - 2, 1usize), (2 * m, euler - 2), (2 * m + 2, 1usize)];
    for m in 1..nq {
        for (a, mult) in factors(m) {
            for _ in 0..mult {
                for q in m..nq {
                    for t in a..nt {
                        table[q][t] += table[q - m][t - a];
                    }
                }
            }
        }
    }
    table
}

/// A random vector with up to `terms` monomials of weight `<= max_weight`
/// and small integer coefficients.
pub fn random_vector<R: Rng>(rng: &mut R, model: &SurfaceModel, max_weight: u32, terms: usize) -> FockVector {
    random_vector_in(rng, &monomial_pool(model, max_weight), terms)
}

/// All monomials of weight `<= max_weight`.
pub fn monomial_pool(model: &SurfaceModel, max_weight: u32) -> Vec<FockMonomial> {
    (0..=max_weight).flat_map(|w| monomials_of_weight(w, model)).collect()
}

/// A random vector supported on monomials drawn from `pool`.
pub fn random_vector_in<R: Rng>(rng: &mut R, pool: &[FockMonomial], terms: usize) -> FockVector {
    let mut v = FockVector::zero();
    for _ in 0..terms {
        let m = pool[rng.gen_range(0..pool.len())].clone();
        let c = loop {
            let c = rng.gen_range(-5i64..=5);
            if c != 0 {
                break c;
            }
        };
        v.add_term(m, int(c));
    }
    v
}

/// A random class with small integer coefficients over the model basis.
pub fn random_class<R: Rng>(rng: &mut R, model: &SurfaceModel) -> CohClass {
    let mut a = CohClass::zero();
    for &b in model.basis() {
        if rng.gen_bool(0.5) {
            a.add_term(b, int(rng.gen_range(-3i64..=3)));
        }
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model() -> SurfaceModel {
        SurfaceModel::from_ints(1, 0, -1, 0).unwrap()
    }

    fn cls(s: &str) -> CohClass {
        s.parse().unwrap()
    }

    #[test]
    fn vacuum_is_weight_and_degree_zero() {
        let v = vacuum();
        assert_eq!(v.num_terms(), 1);
        let (m, c) = v.terms().next().unwrap();
        assert!(m.is_empty());
        assert!(c.is_one());
        assert_eq!(m.weight(), 0);
        assert_eq!(m.degree(), 0);
        assert_eq!(v.render(), "1");
    }

    #[test]
    fn creation_is_free_and_linear() {
        let v = create(2, &CohClass::h(), &vacuum());
        assert_eq!(v, FockVector::monomial(FockMonomial::new([(2, Basis::H)]), int(1)));
        let v = create(1, &cls("3h+pt"), &vacuum());
        assert_eq!(v.coeff(&FockMonomial::new([(1, Basis::H)])), int(3));
        assert_eq!(v.coeff(&FockMonomial::new([(1, Basis::Pt)])), int(1));
        let v = create(1, &CohClass::one(), &create(2, &CohClass::pt(), &vacuum()));
        let m = FockMonomial::new([(1, Basis::One), (2, Basis::Pt)]);
        assert_eq!(m.factors(), &[(2, Basis::Pt), (1, Basis::One)]);
        assert_eq!(v, FockVector::monomial(m, int(1)));
    }

    #[test]
    fn annihilation_contracts_with_sign() {
        let m = model();
        let v = create(1, &CohClass::one(), &vacuum());
        assert_eq!(annihilate(1, &CohClass::pt(), &v, &m), vacuum().scale(&int(-1)));
        let v = create(2, &CohClass::pt(), &vacuum());
        assert_eq!(annihilate(2, &CohClass::one(), &v, &m), vacuum().scale(&int(-2)));
        let v = create(2, &CohClass::h(), &vacuum());
        assert!(annihilate(1, &CohClass::h(), &v, &m).is_zero());
        assert!(annihilate(3, &CohClass::one(), &vacuum(), &m).is_zero());
    }

    #[test]
    fn pairing_examples() {
        let m = model();
        for n in 1..=8u8 {
            let a = create(n, &CohClass::pt(), &vacuum());
            let b = create(n, &CohClass::one(), &vacuum());
            let want = rational::sign(n as i64 - 1) * int(n as i64);
            assert_eq!(pairing(&a, &b, &m), want, "n={n}");
        }
        let h = create(1, &CohClass::h(), &vacuum());
        assert_eq!(pairing(&h, &h, &m), int(1));
        let a = create(1, &CohClass::one(), &vacuum());
        let b = create(2, &CohClass::pt(), &vacuum());
        assert!(pairing(&a, &b, &m).is_zero());
    }

    #[test]
    fn pairing_matches_annihilator_route() {
        let m = SurfaceModel::from_ints(2, 1, 3, 1).unwrap();
        let monos: Vec<_> = (0..=4).flat_map(|w| monomials_of_weight(w, &m)).collect();
        for a in monos.iter().step_by(7) {
            for b in monos.iter().step_by(5) {
                let va = FockVector::monomial(a.clone(), int(1));
                let vb = FockVector::monomial(b.clone(), int(1));
                // (-1)^{sum n_i} <1, prod q_{-n_i}(a_i) w>
                let mut w = vb.clone();
                for &(n, basis) in a.factors() {
                    w = annihilate(n, &CohClass::basis(basis), &w, &m);
                }
                let oracle = rational::sign(a.weight() as i64) * w.coeff(&FockMonomial::vacuum());
                assert_eq!(pairing(&va, &vb, &m), oracle, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn hilbert_integrals() {
        let one_pt = create(1, &CohClass::pt(), &vacuum());
        assert_eq!(integrate_hilb(&one_pt, 1), int(1));
        let two_pt = create(1, &CohClass::pt(), &one_pt);
        assert_eq!(integrate_hilb(&two_pt, 2), int(1));
        let q2 = create(2, &CohClass::pt(), &vacuum());
        assert!(integrate_hilb(&q2, 2).is_zero());
    }

    #[test]
    fn hilbert_integral_is_pairing_with_fundamental_class() {
        let m = SurfaceModel::from_ints(3, -1, 2, 1).unwrap();
        for n in 0..=4 {
            for mono in monomials_of_weight(n, &m) {
                let v = FockVector::monomial(mono.clone(), int(1));
                assert_eq!(
                    integrate_hilb(&v, n),
                    pairing(&v, &fundamental_class(n), &m),
                    "{mono}"
                );
            }
        }
    }

    #[test]
    fn dimension_examples() {
        let m = model();
        assert_eq!(dimension(1, 0, &m), 1);
        assert_eq!(dimension(1, 2, &m), 2);
        assert_eq!(dimension(2, 0, &m), 1);
    }

    #[test]
    fn goettsche_small_cases() {
        let t = goettsche_betti(2, 4);
        assert_eq!(t[1][..5], [1, 0, 2, 0, 1]);
        // X^[2] for e = 4: b0=1, b2=1+2=3
        assert_eq!(t[2][0], 1);
        assert_eq!(t[2][2], 3);
    }

    #[test]
    fn rendering_groups_single_factors() {
        let v = create(1, &cls("1+h"), &vacuum());
        assert_eq!(v.render(), "q1[1+h]");
        let w = create(3, &CohClass::h(), &create(1, &CohClass::pt(), &vacuum()));
        assert_eq!(w.render(), "q3[h]*q1[pt]");
        let z = w.scale(&rational::frac(-1, 2));
        assert_eq!(z.render(), "-1/2*q3[h]*q1[pt]");
        assert_eq!(FockVector::zero().render(), "0");
    }
}
