//! Derived operators on the Fock space: the boundary operator, Virasoro and
//! `e` operators, derivatives of `q_n`, Chern operators and the vertex
//! operator.

use num_traits::{One, Zero};

use crate::fock::{create, FockMonomial, FockVector};
use crate::rational::{self, frac, int, Rational};
use crate::surface::{chern_data, Basis, CohClass, KClassSpec, SurfaceModel};

/// Boundary operator: a derivation of the creation algebra with
/// `d(q_n(a)) = n L_n(a) + n(n-1)/2 q_n(K a)` on creators.
///
/// On a monomial this expands into cut terms `q_n(b) -> n/2 sum q_v q_{n-v} delta(b)`,
/// canonical terms `q_n(b) -> n(n-1)/2 q_n(K b)` and join terms
/// `q_n(b) q_m(c) -> -n m q_{n+m}(b c)`.
pub fn boundary(v: &FockVector, model: &SurfaceModel) -> FockVector {
    v.map_monomials(|m, c, out| boundary_monomial(m, c, model, out))
}

fn boundary_monomial(m: &FockMonomial, c: &Rational, model: &SurfaceModel, out: &mut FockVector) {
    let f = m.factors();
    for (p, &(n, b)) in f.iter().enumerate() {
        if n >= 2 {
            for nu in 1..=n / 2 {
                let weight = if 2 * nu == n { frac(n as i64, 2) } else { int(n as i64) };
                let cw = c * weight;
                for (x, y, cd) in model.delta_basis(b) {
                    out.add_term(m.replace(&[p], &[(nu, *x), (n - nu, *y)]), &cw * cd);
                }
            }
            if let Some((z, ck)) = model.basis_product(Basis::K, b) {
                let s = int(n as i64 * (n as i64 - 1) / 2);
                out.add_term(m.replace(&[p], &[(n, z)]), c * ck * s);
            }
        }
        for (r, &(n2, b2)) in f.iter().enumerate().skip(p + 1) {
            if let Some((z, cz)) = model.basis_product(b, b2) {
                let s = int(-(n as i64) * n2 as i64);
                out.add_term(m.replace(&[p, r], &[(n + n2, z)]), c * cz * s);
            }
        }
    }
}

pub fn boundary_power(v: &FockVector, k: u32, model: &SurfaceModel) -> FockVector {
    (0..k).fold(v.clone(), |acc, _| boundary(&acc, model))
}

/// Which normal-ordered pieces of `1/2 sum_v :q_v q_{m-v}: delta(a)` to apply.
#[derive(Clone, Copy)]
struct Pieces {
    creation: bool,
    mixed: bool,
    annihilation: bool,
}

fn quadratic(m: i32, a: &CohClass, v: &FockVector, model: &SurfaceModel, pieces: Pieces) -> FockVector {
    let delta = if pieces.creation && m >= 2 { model.delta_tensor(a) } else { Vec::new() };
    let half = frac(1, 2);
    v.map_monomials(|mono, c, out| {
        if pieces.creation && m >= 2 {
            let cw = c * &half;
            for nu in 1..m {
                for (x, y, cd) in &delta {
                    let t = mono.with((nu as u8, *x)).with(((m - nu) as u8, *y));
                    out.add_term(t, &cw * cd);
                }
            }
        }
        let f = mono.factors();
        if pieces.mixed {
            for (p, &(n, b)) in f.iter().enumerate() {
                let target = m + n as i32;
                if target <= 0 {
                    continue;
                }
                let s = c * int(-(n as i64));
                for (x, cx) in a.terms() {
                    if let Some((z, cz)) = model.basis_product(x, b) {
                        out.add_term(mono.replace(&[p], &[(target as u8, z)]), &s * cx * cz);
                    }
                }
            }
        }
        if pieces.annihilation && m <= -2 {
            for p in 0..f.len() {
                for r in p + 1..f.len() {
                    let (np, bp) = f[p];
                    let (nr, br) = f[r];
                    if np as i32 + nr as i32 != -m {
                        continue;
                    }
                    let Some((z, cz)) = model.basis_product(bp, br) else {
                        continue;
                    };
                    let mut integral = Rational::zero();
                    for (x, cx) in a.terms() {
                        if let Some((Basis::Pt, cp)) = model.basis_product(x, z) {
                            integral += cx * cp;
                        }
                    }
                    if integral.is_zero() {
                        continue;
                    }
                    let s = int(np as i64 * nr as i64) * cz * integral;
                    out.add_term(mono.replace(&[p, r], &[]), c * s);
                }
            }
        }
    })
}

const ALL: Pieces = Pieces { creation: true, mixed: true, annihilation: true };

/// Virasoro operator `L_m(a)`; the infinite normal-ordered sum is finite on
/// any vector since annihilators beyond its weight act as zero.
pub fn virasoro(m: i32, a: &CohClass, v: &FockVector, model: &SurfaceModel) -> FockVector {
    quadratic(m, a, v, model, ALL)
}

/// `e_n(a) = 1/2 sum_{0<v<n} q_v q_{n-v} delta(a) - L_n(a)`.
pub fn e_op(n: u32, a: &CohClass, v: &FockVector, model: &SurfaceModel) -> FockVector {
    let n = n as i32;
    let creation = quadratic(n, a, v, model, Pieces { creation: true, mixed: false, annihilation: false });
    creation.sub(&virasoro(n, a, v, model))
}

/// `q_n^{(order)}(a) v` with the derivative taken against the boundary
/// operator, via `ad(d)^k f = sum_j binom(k, j) (-1)^j d^{k-j} f d^j`.
pub fn q_derivative(n: i32, order: u32, a: &CohClass, v: &FockVector, model: &SurfaceModel) -> FockVector {
    assert!(n != 0, "q_0 is zero");
    let mut classes = vec![CohClass::zero(); order as usize + 1];
    classes[order as usize] = a.clone();
    derivative_series(n, &classes, v, u32::MAX, model)
}

/// `q_n^{(k)}(a) v` by the defining recursion `d(f v) - f(d v)`.
pub fn q_derivative_recursive(n: i32, order: u32, a: &CohClass, v: &FockVector, model: &SurfaceModel) -> FockVector {
    if order == 0 {
        return crate::fock::apply_q(n, a, v, model);
    }
    let inner = q_derivative_recursive(n, order - 1, a, v, model);
    let swapped = q_derivative_recursive(n, order - 1, a, &boundary(v, model), model);
    boundary(&inner, model).sub(&swapped)
}

/// `sum_k q_n^{(k)}(classes[k]) v`, dropping every term of degree above
/// `budget`.
///
/// Written as `sum_{s,j} binom(s+j, j) (-1)^j d^s q_n(x_{s+j}) d^j v` and
/// evaluated Horner-style in `s`; both the boundary operator and `q_n(x)`
/// never lower the degree, so truncation is exact.
pub fn derivative_series(
    n: i32,
    classes: &[CohClass],
    v: &FockVector,
    budget: u32,
    model: &SurfaceModel,
) -> FockVector {
    let Some(top) = classes.iter().rposition(|c| !c.is_zero()) else {
        return FockVector::zero();
    };
    let Some(min_deg) = v.min_degree() else {
        return FockVector::zero();
    };
    if min_deg > budget {
        return FockVector::zero();
    }
    let top = top.min(((budget - min_deg) / 2) as usize);
    let room = |s: usize| budget.saturating_sub(2 * s as u32);

    let mut powers = Vec::with_capacity(top + 1);
    powers.push(v.truncate_degree(budget));
    for j in 1..=top {
        let next = boundary(&powers[j - 1].truncate_degree(room(1)), model);
        powers.push(next.truncate_degree(budget));
    }

    let mut acc = FockVector::zero();
    for s in (0..=top).rev() {
        if !acc.is_zero() {
            acc = boundary(&acc.truncate_degree(room(s + 1)), model);
        }
        for (j, w) in powers.iter().enumerate().take(top - s + 1) {
            let x = &classes[s + j];
            if x.is_zero() {
                continue;
            }
            let coef = rational::binomial_int((s + j) as i64, j as u32) * rational::sign(j as i64);
            let term = crate::fock::apply_q(n, &x.scale(&coef), &w.truncate_degree(room(s)), model);
            acc.add_assign(&term.truncate_degree(room(s)));
        }
    }
    acc
}

/// Degree budget that loses nothing for one weight-raising step from `v`.
pub fn full_budget(v: &FockVector) -> u32 {
    4 * (v.max_weight().unwrap_or(0) + 1)
}

/// Classes `x_v = sum_k binom(r - k, v) c_k(u)` for `v = 0..=max`.
pub fn big_c_classes(u: &KClassSpec, max: u32) -> Vec<CohClass> {
    (0..=max)
        .map(|nu| {
            (0..=2u32).fold(CohClass::zero(), |acc, k| {
                let coef = rational::binomial_int(u.rank - k as i64, nu);
                &acc + &u.chern(k).scale(&coef)
            })
        })
        .collect()
}

/// `C(u) v = sum_{v,k} binom(r-k, v) q_1^{(v)}(c_k(u)) v`, truncated above
/// `budget`.
pub fn big_c_apply(u: &KClassSpec, v: &FockVector, budget: u32, model: &SurfaceModel) -> FockVector {
    let classes = big_c_classes(u, budget / 2);
    derivative_series(1, &classes, v, budget, model)
}

/// Weight components `c(u^[n])` of `exp(C(u)) 1` for `n = 0..=max_n`.
pub fn total_chern_classes(u: &KClassSpec, max_n: u32, model: &SurfaceModel) -> Vec<FockVector> {
    let mut out = vec![FockVector::vacuum()];
    for k in 1..=max_n {
        let prev = &out[k as usize - 1];
        let next = big_c_apply(u, prev, 4 * k, model).scale(&frac(1, k as i64));
        out.push(next);
    }
    out
}

/// `[ch(u), q_1(a)] w = sum_v 1/v! q_1^{(v)}(ch(u) a) w`.
fn ch_bracket_q1(ch: &CohClass, a: &CohClass, w: &FockVector, shift: u32, model: &SurfaceModel) -> FockVector {
    let budget = full_budget(w);
    let x = model.mul(ch, a);
    let max = budget / 2 + shift;
    let mut classes = vec![CohClass::zero(); max as usize + 1];
    for nu in 0..=budget / 2 {
        let inv = Rational::new(One::one(), rational::factorial(nu));
        classes[(nu + shift) as usize] = x.scale(&inv);
    }
    derivative_series(1, &classes, w, budget, model)
}

/// `ch(u^[n])` as a vector, by peeling `q_1(1)` factors off
/// `q_1(1)^n / n! 1` and using `ch(u) 1 = 0`.
pub fn chern_char_class(u: &KClassSpec, n: u32, model: &SurfaceModel) -> FockVector {
    let (_, ch) = chern_data(u, model);
    let one = CohClass::one();
    let mut power = FockVector::vacuum();
    let mut acc = FockVector::zero();
    for _ in 0..n {
        let bracket = ch_bracket_q1(&ch, &one, &power, 0, model);
        acc = create(1, &one, &acc).add(&bracket);
        power = create(1, &one, &power);
    }
    acc.scale(&Rational::new(One::one(), rational::factorial(n)))
}

/// `ch(u) q_1(a) q_1(b) 1` computed by peeling either factor first.
pub fn chern_char_peeled(u: &KClassSpec, a: &CohClass, b: &CohClass, a_first: bool, model: &SurfaceModel) -> FockVector {
    let (_, ch) = chern_data(u, model);
    let (outer, inner) = if a_first { (a, b) } else { (b, a) };
    let vac = FockVector::vacuum();
    let inner_v = create(1, inner, &vac);
    let t1 = ch_bracket_q1(&ch, outer, &inner_v, 0, model);
    let t2 = create(1, outer, &ch_bracket_q1(&ch, inner, &vac, 0, model));
    t1.add(&t2)
}

/// Multiplication by `ch(u^[n])` on arbitrary vectors.
///
/// Uses `ch(u) 1 = 0`, the `q_1` bracket above and, for higher indices,
/// `q_{n+1}(a) = -1/n [q_1'(1), q_n(a)]` together with `[ch(u), d] = 0`.
pub fn chern_char_apply(u: &KClassSpec, v: &FockVector, model: &SurfaceModel) -> FockVector {
    let (_, ch) = chern_data(u, model);
    let mut out = FockVector::zero();
    for (m, c) in v.terms() {
        out.add_scaled(&ch_monomial(&ch, m, model), c);
    }
    out
}

fn ch_monomial(ch: &CohClass, m: &FockMonomial, model: &SurfaceModel) -> FockVector {
    let Some((&(n, b), _)) = m.factors().split_last() else {
        return FockVector::zero();
    };
    let last = m.factors().len() - 1;
    let rest = FockVector::monomial(m.replace(&[last], &[]), Rational::one());
    let a = CohClass::basis(b);
    let head = ch_bracket_qn(ch, n as i32, &a, &rest, model);
    let tail = create(n, &a, &ch_monomial(ch, &m.replace(&[last], &[]), model));
    head.add(&tail)
}

/// `[ch(u), q_n(a)] w` for `n >= 1`.
fn ch_bracket_qn(ch: &CohClass, n: i32, a: &CohClass, w: &FockVector, model: &SurfaceModel) -> FockVector {
    if n == 1 {
        return ch_bracket_q1(ch, a, w, 0, model);
    }
    let k = n - 1;
    let one = CohClass::one();
    let qk = |x: &FockVector| crate::fock::apply_q(k, a, x, model);
    let d_q1 = |x: &FockVector| q_derivative(1, 1, &one, x, model);
    let ch_d_q1 = |x: &FockVector| ch_bracket_q1(ch, &one, x, 1, model);
    let lower = |x: &FockVector| ch_bracket_qn(ch, k, a, x, model);
    let mut acc = ch_d_q1(&qk(w));
    acc = acc.sub(&qk(&ch_d_q1(w)));
    acc.add_assign(&d_q1(&lower(w)));
    acc = acc.sub(&lower(&d_q1(w)));
    acc.scale(&frac(-1, k as i64))
}

/// `S_m(gamma) v` for `m = 0..=max`, from `m S_m = sum_k (-1)^{k-1} q_k(gamma) S_{m-k}`.
pub fn vertex_on(gamma: &CohClass, max: u32, v: &FockVector) -> Vec<FockVector> {
    let mut out = vec![v.clone()];
    for m in 1..=max {
        let mut acc = FockVector::zero();
        for k in 1..=m {
            let term = create(k as u8, gamma, &out[(m - k) as usize]);
            acc.add_scaled(&term, &rational::sign(k as i64 - 1));
        }
        out.push(acc.scale(&frac(1, m as i64)));
    }
    out
}

/// Components `S_m(gamma) 1` of the vertex operator on the vacuum.
pub fn vertex(gamma: &CohClass, max: u32) -> Vec<FockVector> {
    vertex_on(gamma, max, &FockVector::vacuum())
}

/// Homogeneous degree of a class, if it has one.
pub fn class_degree(a: &CohClass) -> Option<u32> {
    let mut it = a.terms().map(|(b, _)| b.degree());
    let first = it.next()?;
    it.all(|d| d == first).then_some(first)
}

/// Weight shift and (when homogeneous) degree shift of an operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bidegree {
    pub weight: i32,
    pub degree: Option<i32>,
}

#[derive(Clone, Debug)]
pub enum Operator {
    Boundary,
    Virasoro { m: i32, a: CohClass },
    EOp { n: u32, a: CohClass },
    QDeriv { n: i32, order: u32, a: CohClass },
    BigC(KClassSpec),
    ChernChar(KClassSpec),
    Vertex { gamma: CohClass, weight: u32 },
}

impl Operator {
    pub fn apply(&self, v: &FockVector, model: &SurfaceModel) -> FockVector {
        match self {
            Operator::Boundary => boundary(v, model),
            Operator::Virasoro { m, a } => virasoro(*m, a, v, model),
            Operator::EOp { n, a } => e_op(*n, a, v, model),
            Operator::QDeriv { n, order, a } => q_derivative(*n, *order, a, v, model),
            Operator::BigC(u) => big_c_apply(u, v, full_budget(v), model),
            Operator::ChernChar(u) => chern_char_apply(u, v, model),
            Operator::Vertex { gamma, weight } => {
                vertex_on(gamma, *weight, v).pop().expect("nonempty")
            }
        }
    }

    pub fn bidegree(&self) -> Bidegree {
        let deg = |a: &CohClass, base: i32| class_degree(a).map(|d| base + d as i32);
        match self {
            Operator::Boundary => Bidegree { weight: 0, degree: Some(2) },
            Operator::Virasoro { m, a } => Bidegree { weight: *m, degree: deg(a, 2 * m) },
            Operator::EOp { n, a } => Bidegree { weight: *n as i32, degree: deg(a, 2 * *n as i32) },
            Operator::QDeriv { n, order, a } => Bidegree {
                weight: *n,
                degree: deg(a, 2 * n - 2 + 2 * *order as i32),
            },
            Operator::BigC(_) => Bidegree { weight: 1, degree: None },
            Operator::ChernChar(_) => Bidegree { weight: 0, degree: None },
            Operator::Vertex { gamma, weight } => Bidegree {
                weight: *weight as i32,
                degree: match class_degree(gamma) {
                    Some(2) => Some(2 * *weight as i32),
                    _ if *weight == 0 => Some(0),
                    _ => None,
                },
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::fock::{apply_q, monomials_of_weight, random_class, random_vector, vacuum};

    fn model() -> SurfaceModel {
        SurfaceModel::from_ints(3, -1, 2, 1).unwrap()
    }

    fn cls(s: &str) -> CohClass {
        s.parse().unwrap()
    }

    fn q(n: u8, a: &str) -> FockVector {
        create(n, &cls(a), &vacuum())
    }

    /// Leibniz rule with `q_n' = n L_n + n(n-1)/2 q_n(K .)` on creators.
    fn boundary_oracle(m: &FockMonomial, model: &SurfaceModel) -> FockVector {
        let Some((&(n, b), _)) = m.factors().split_first() else {
            return FockVector::zero();
        };
        let rest = m.replace(&[0], &[]);
        let rest_v = FockVector::monomial(rest.clone(), int(1));
        let a = CohClass::basis(b);
        let ni = n as i64;
        let mut out = virasoro(n as i32, &a, &rest_v, model).scale(&int(ni));
        let ka = model.mul(&model.canonical(), &a);
        out.add_scaled(&create(n, &ka, &rest_v), &int(ni * (ni - 1) / 2));
        out.add_assign(&create(n, &a, &boundary_oracle(&rest, model)));
        out
    }

    #[test]
    fn boundary_examples() {
        let m = model();
        assert!(boundary(&vacuum(), &m).is_zero());
        assert!(boundary(&q(1, "1"), &m).is_zero());
        let two = create(1, &CohClass::one(), &q(1, "1")).scale(&frac(1, 2));
        assert_eq!(boundary(&two, &m), q(2, "1").scale(&frac(-1, 2)));
    }

    #[test]
    fn boundary_matches_leibniz_oracle() {
        for m in [model(), SurfaceModel::from_ints(1, 0, -1, 0).unwrap()] {
            for w in 0..=4 {
                for mono in monomials_of_weight(w, &m) {
                    let v = FockVector::monomial(mono.clone(), int(1));
                    assert_eq!(boundary(&v, &m), boundary_oracle(&mono, &m), "{mono}");
                }
            }
        }
    }

    #[test]
    fn virasoro_examples() {
        let m = model();
        let v = q(3, "h");
        assert_eq!(virasoro(0, &CohClass::one(), &v, &m), v.scale(&int(-3)));
        let a = cls("h+pt");
        let mut want = FockVector::zero();
        for (x, y) in m.diagonal(&a) {
            want.add_assign(&create(1, &x, &create(1, &y, &vacuum())));
        }
        assert_eq!(virasoro(2, &a, &vacuum(), &m), want.scale(&frac(1, 2)));
        assert!(virasoro(1, &a, &vacuum(), &m).is_zero());
    }

    #[test]
    fn e_op_examples() {
        let m = model();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let v = random_vector(&mut rng, &m, 3, 6);
        let a = cls("1-k");
        assert_eq!(e_op(0, &a, &v, &m), virasoro(0, &a, &v, &m).scale(&int(-1)));
        let b = cls("h");
        let lhs = e_op(1, &a, &create(1, &b, &vacuum()), &m);
        assert_eq!(lhs, create(2, &m.mul(&a, &b), &vacuum()));
        let c = cls("k");
        let w = q(1, "pt");
        let bracket = e_op(2, &a, &apply_q(-1, &b, &w, &m), &m)
            .sub(&apply_q(-1, &b, &e_op(2, &a, &w, &m), &m));
        assert!(bracket.is_zero());
        let w = create(1, &c, &vacuum());
        let bracket = e_op(2, &a, &apply_q(-1, &b, &w, &m), &m)
            .sub(&apply_q(-1, &b, &e_op(2, &a, &w, &m), &m));
        assert!(bracket.is_zero());
    }

    #[test]
    fn derivative_binomial_form_matches_recursion() {
        let m = model();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..6 {
            let v = random_vector(&mut rng, &m, 3, 5);
            let a = random_class(&mut rng, &m);
            for n in [-2, -1, 1, 2, 3] {
                for order in 0..=3 {
                    assert_eq!(
                        q_derivative(n, order, &a, &v, &m),
                        q_derivative_recursive(n, order, &a, &v, &m),
                        "n={n} order={order}"
                    );
                }
            }
        }
    }

    #[test]
    fn derivative_examples() {
        let m = model();
        let x = cls("1+h");
        let y = cls("k-pt");
        let lhs = q_derivative(1, 1, &x, &create(1, &y, &vacuum()), &m);
        assert_eq!(lhs, create(2, &m.mul(&x, &y), &vacuum()).scale(&int(-1)));
        let lhs = q_derivative(2, 2, &x, &vacuum(), &m);
        let rhs = q_derivative(2, 1, &m.mul(&m.canonical(), &x), &vacuum(), &m)
            .sub(&create(2, &m.mul(&m.c2(), &x), &vacuum()));
        assert_eq!(lhs, rhs);
        for order in 1..=4 {
            assert!(q_derivative(1, order, &x, &vacuum(), &m).is_zero());
        }
    }

    #[test]
    fn big_c_of_negative_hyperplane_bundle() {
        let m = model();
        let u = KClassSpec::neg_line_bundle(&CohClass::h(), &m);
        let alpha = cls("1-h+3*pt");
        assert_eq!(big_c_apply(&u, &vacuum(), 4, &m), create(1, &alpha, &vacuum()));
        let classes = big_c_classes(&u, 4);
        for (nu, x) in classes.iter().enumerate() {
            let want = m.power(&alpha, nu as u32 + 1).scale(&rational::sign(nu as i64));
            assert_eq!(x, &want, "nu={nu}");
        }
    }

    #[test]
    fn big_c_of_line_bundle() {
        let m = model();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for c1 in ["h", "k", "2h-k"] {
            let u = KClassSpec::line_bundle(cls(c1));
            let c = &CohClass::one() + &cls(c1);
            for _ in 0..3 {
                let v = random_vector(&mut rng, &m, 3, 4);
                let want = create(1, &c, &v).add(&q_derivative(1, 1, &CohClass::one(), &v, &m));
                assert_eq!(big_c_apply(&u, &v, full_budget(&v), &m), want);
            }
        }
    }

    #[test]
    fn worked_example_second_chern_class() {
        let m = model();
        let u = KClassSpec::neg_line_bundle(&CohClass::h(), &m);
        let alpha = cls("1-h+3*pt");
        let p = |k| m.power(&alpha, k);
        let qa = create(1, &alpha, &vacuum());
        let mut want = create(1, &alpha, &qa).add(&create(2, &p(3), &vacuum()));
        for (order, sign) in [(1, -1), (2, 1), (3, -1)] {
            let t = q_derivative(2, order, &p(3 + order), &vacuum(), &m);
            want.add_scaled(&t, &int(sign));
        }
        let classes = total_chern_classes(&u, 2, &m);
        assert_eq!(classes[2], want.scale(&frac(1, 2)));
    }

    #[test]
    fn chern_character_basics() {
        let m = model();
        let u = KClassSpec::new(2, cls("h-k"), cls("5*pt"));
        let (_, ch) = chern_data(&u, &m);
        assert!(chern_char_class(&u, 0, &m).is_zero());
        assert_eq!(chern_char_class(&u, 1, &m), create(1, &ch, &vacuum()));
        for n in 1..=4 {
            let v = chern_char_class(&u, n, &m);
            let fund = crate::fock::fundamental_class(n);
            assert_eq!(v.degree_part(0), fund.scale(&int(2 * n as i64)), "n={n}");
        }
    }

    #[test]
    fn chern_character_peeling_order() {
        let m = model();
        let u = KClassSpec::new(-1, cls("2h"), cls("-pt"));
        let a = cls("1+k");
        let b = cls("h-pt");
        assert_eq!(
            chern_char_peeled(&u, &a, &b, true, &m),
            chern_char_peeled(&u, &a, &b, false, &m)
        );
    }

    #[test]
    fn chern_character_operator() {
        let m = model();
        let u = KClassSpec::line_bundle(cls("h"));
        for n in 0..=3 {
            let fund = crate::fock::fundamental_class(n);
            assert_eq!(chern_char_apply(&u, &fund, &m), chern_char_class(&u, n, &m));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let v = random_vector(&mut rng, &m, 3, 4);
        let lhs = chern_char_apply(&u, &boundary(&v, &m), &m);
        let rhs = boundary(&chern_char_apply(&u, &v, &m), &m);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn vertex_components() {
        let g = cls("h+pt");
        let s = vertex(&g, 2);
        assert_eq!(s[0], vacuum());
        assert_eq!(s[1], create(1, &g, &vacuum()));
        let want = create(1, &g, &create(1, &g, &vacuum()))
            .scale(&frac(1, 2))
            .sub(&create(2, &g, &vacuum()).scale(&frac(1, 2)));
        assert_eq!(s[2], want);
    }

    #[test]
    fn operators_respect_bidegree() {
        let m = model();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let ops = vec![
            Operator::Boundary,
            Operator::Virasoro { m: 2, a: cls("h") },
            Operator::Virasoro { m: -1, a: cls("pt") },
            Operator::Virasoro { m: 0, a: cls("1") },
            Operator::EOp { n: 1, a: cls("k") },
            Operator::QDeriv { n: 2, order: 2, a: cls("h") },
            Operator::QDeriv { n: -1, order: 1, a: cls("pt") },
            Operator::BigC(KClassSpec::line_bundle(cls("h"))),
            Operator::ChernChar(KClassSpec::line_bundle(cls("k"))),
            Operator::Vertex { gamma: cls("h"), weight: 2 },
        ];
        for _ in 0..4 {
            let mono = random_vector(&mut rng, &m, 3, 1);
            let (src, _) = mono.terms().next().unwrap();
            let (w0, d0) = (src.weight() as i32, src.degree() as i32);
            for op in &ops {
                let bd = op.bidegree();
                for (t, _) in op.apply(&mono, &m).terms() {
                    assert_eq!(t.weight() as i32, w0 + bd.weight, "{op:?}");
                    if let Some(d) = bd.degree {
                        assert_eq!(t.degree() as i32, d0 + d, "{op:?}");
                    }
                }
            }
        }
    }
}
