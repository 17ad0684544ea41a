//! Named invariant suites. Each suite checks an identity exactly and
//! reports the first counterexample it finds.

use std::fmt;

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::affine::{self, WeightedPoly};
use crate::fock::{
    self, apply_q, create, dimension, goettsche_betti, monomial_pool, pairing, random_vector_in, vacuum,
    FockVector,
};
use crate::operators::{self, boundary, e_op, q_derivative, q_derivative_recursive, total_chern_classes, virasoro};
use crate::poly::UnivPoly;
use crate::rational::{self, frac, int, Rational};
use crate::segre::{self, DirectSampler, FitOptions};
use crate::surface::{Basis, CohClass, KClassSpec, SurfaceModel};

pub const SUITES: [&str; 10] = [
    "oscillator",
    "virasoro",
    "derivative",
    "e-op",
    "vertex-integral",
    "goettsche-dim",
    "chern-line",
    "pairing",
    "affine",
    "worked-example",
];

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: String,
    pub max_n: u32,
    pub checks: usize,
    pub counterexample: Option<String>,
    /// Extra computed output shown alongside the verdict.
    pub details: Vec<String>,
}

impl SuiteReport {
    fn new(suite: &str, max_n: u32) -> Self {
        SuiteReport { suite: suite.into(), max_n, checks: 0, counterexample: None, details: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }

    /// Records one check; keeps the first failure.
    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) -> bool {
        self.checks += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(describe());
        }
        ok
    }

    fn eq(&mut self, lhs: &FockVector, rhs: &FockVector, context: impl FnOnce() -> String) -> bool {
        self.check(lhs == rhs, || {
            format!("{}; lhs - rhs = {}", context(), lhs.sub(rhs))
        })
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "pass" } else { "FAIL" };
        writeln!(f, "suite {}: {} ({} checks, max-n {})", self.suite, verdict, self.checks, self.max_n)?;
        for d in &self.details {
            writeln!(f, "  {d}")?;
        }
        if let Some(c) = &self.counterexample {
            writeln!(f, "  counterexample: {c}")?;
        }
        Ok(())
    }
}

#[derive(Debug, thiserror::Error)]
#[error("unknown suite `{0}`")]
pub struct UnknownSuite(pub String);

/// Default weight bound per suite.
pub fn default_max_n(suite: &str) -> u32 {
    match suite {
        "oscillator" => 6,
        "virasoro" => 4,
        "derivative" => 5,
        "e-op" => 4,
        "vertex-integral" => 5,
        "goettsche-dim" => 6,
        "chern-line" => 5,
        "pairing" => 8,
        "affine" => 8,
        _ => 2,
    }
}

pub fn run_suite(suite: &str, max_n: u32, seed: u64) -> Result<SuiteReport, UnknownSuite> {
    Ok(match suite {
        "oscillator" => oscillator(max_n, seed, 200),
        "virasoro" => virasoro_suite(max_n, seed),
        "derivative" => derivative_suite(max_n, seed),
        "e-op" => e_op_suite(max_n, seed),
        "vertex-integral" => vertex_integral(max_n),
        "goettsche-dim" => goettsche_dim(max_n),
        "chern-line" => chern_line(max_n),
        "pairing" => pairing_suite(max_n, seed),
        "affine" => affine_suite(max_n, seed),
        "worked-example" => worked_example(seed),
        other => return Err(UnknownSuite(other.to_string())),
    })
}

/// The two models every suite runs on.
pub fn test_models() -> [SurfaceModel; 2] {
    [
        SurfaceModel::from_ints(1, 0, -1, 0).expect("nondegenerate"),
        SurfaceModel::from_ints(3, -1, 2, 1).expect("nondegenerate"),
    ]
}

fn model_tag(m: &SurfaceModel) -> String {
    format!(
        "model(d={}, pi={}, kappa={}, b2_extra={})",
        rational::render(m.d()),
        rational::render(m.pi()),
        rational::render(m.kappa()),
        m.b2_extra()
    )
}

fn signed_range(k: i32) -> impl Iterator<Item = i32> {
    (-k..=k).filter(|&m| m != 0)
}

fn basis_classes(m: &SurfaceModel) -> Vec<(Basis, CohClass)> {
    m.basis().iter().map(|&b| (b, CohClass::basis(b))).collect()
}

/// `[q_m(a), q_m'(b)] = m delta_{m+m'} int(ab)` on random vectors.
pub fn oscillator(max_n: u32, seed: u64, vectors_per_model: usize) -> SuiteReport {
    let mut r = SuiteReport::new("oscillator", max_n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for model in test_models() {
        let pool = monomial_pool(&model, max_n);
        let classes = basis_classes(&model);
        for _ in 0..vectors_per_model {
            let v = random_vector_in(&mut rng, &pool, 3);
            for m1 in signed_range(4) {
                for m2 in signed_range(4) {
                    for (ba, a) in &classes {
                        for (bb, b) in &classes {
                            let lhs = apply_q(m1, a, &apply_q(m2, b, &v, &model), &model)
                                .sub(&apply_q(m2, b, &apply_q(m1, a, &v, &model), &model));
                            let scalar = if m1 + m2 == 0 {
                                int(m1 as i64) * model.basis_pairing(*ba, *bb)
                            } else {
                                Rational::zero()
                            };
                            let ok = r.eq(&lhs, &v.scale(&scalar), || {
                                format!("{} m={m1} m'={m2} a={ba} b={bb} v={v}", model_tag(&model))
                            });
                            if !ok {
                                return r;
                            }
                        }
                    }
                }
            }
        }
    }
    r
}

/// Pairing values, symmetry and adjointness.
pub fn pairing_suite(max_n: u32, seed: u64) -> SuiteReport {
    let mut r = SuiteReport::new("pairing", max_n);
    for model in test_models() {
        for n in 1..=max_n.max(1) as u8 {
            let a = create(n, &CohClass::pt(), &vacuum());
            let b = create(n, &CohClass::one(), &vacuum());
            let want = rational::sign(n as i64 - 1) * int(n as i64);
            let got = pairing(&a, &b, &model);
            r.check(got == want, || format!("<q{n}[pt], q{n}[1]> = {got}, want {want}"));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let top = max_n.min(5);
        let by_weight: Vec<_> = (0..=top).map(|w| fock::monomials_of_weight(w, &model)).collect();
        for k in 0..=top as usize {
            let v = random_vector_in(&mut rng, &by_weight[k], 6);
            let w = random_vector_in(&mut rng, &by_weight[k], 6);
            let (x, y) = (pairing(&v, &w, &model), pairing(&w, &v, &model));
            r.check(x == y, || format!("symmetry: v={v} w={w}"));
            for n in 1..=3u8 {
                let Some(pool) = by_weight.get(k + n as usize) else {
                    continue;
                };
                let w = random_vector_in(&mut rng, pool, 6);
                for (bn, a) in basis_classes(&model) {
                    let lhs = pairing(&create(n, &a, &v), &w, &model);
                    let rhs = rational::sign(n as i64) * pairing(&v, &apply_q(-(n as i32), &a, &w, &model), &model);
                    r.check(lhs == rhs, || format!("adjointness n={n} a={bn} v={v} w={w}"));
                }
            }
        }
    }
    r
}

/// Both Virasoro brackets, including the central term `e`.
pub fn virasoro_suite(max_n: u32, seed: u64) -> SuiteReport {
    let mut r = SuiteReport::new("virasoro", max_n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for model in test_models() {
        let pool = monomial_pool(&model, max_n);
        let pool_q = monomial_pool(&model, max_n + 1);
        let classes = basis_classes(&model);
        for _ in 0..3 {
            let v = random_vector_in(&mut rng, &pool_q, 4);
            for n in -3..=3 {
                for m in signed_range(3) {
                    for (ba, a) in &classes {
                        for (bb, b) in &classes {
                            let lhs = virasoro(n, a, &apply_q(m, b, &v, &model), &model)
                                .sub(&apply_q(m, b, &virasoro(n, a, &v, &model), &model));
                            let rhs = if n + m == 0 {
                                FockVector::zero()
                            } else {
                                apply_q(n + m, &model.mul(a, b), &v, &model).scale(&int(-(m as i64)))
                            };
                            if !r.eq(&lhs, &rhs, || format!("[L_{n}({ba}), q_{m}({bb})] {} v={v}", model_tag(&model))) {
                                return r;
                            }
                        }
                    }
                }
            }
            let v = random_vector_in(&mut rng, &pool, 4);
            let c2 = model.c2();
            for n in -2..=2 {
                for m in -2..=2 {
                    for (ba, a) in &classes {
                        for (bb, b) in &classes {
                            let lhs = virasoro(n, a, &virasoro(m, b, &v, &model), &model)
                                .sub(&virasoro(m, b, &virasoro(n, a, &v, &model), &model));
                            let ab = model.mul(a, b);
                            let mut rhs = virasoro(n + m, &ab, &v, &model).scale(&int((n - m) as i64));
                            if n + m == 0 {
                                let central = frac((n * n * n - n) as i64, 12)
                                    * SurfaceModel::integrate(&model.mul(&c2, &ab));
                                rhs = rhs.sub(&v.scale(&central));
                            }
                            if !r.eq(&lhs, &rhs, || format!("[L_{n}({ba}), L_{m}({bb})] {} v={v}", model_tag(&model))) {
                                return r;
                            }
                        }
                    }
                }
            }
        }
    }
    r
}

/// `q_n'` bracket with the canonical-class correction, the Leibniz form of
/// the derivative, and the binomial expansion of higher derivatives.
pub fn derivative_suite(max_n: u32, seed: u64) -> SuiteReport {
    let mut r = SuiteReport::new("derivative", max_n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for model in test_models() {
        let pool = monomial_pool(&model, max_n);
        let classes = basis_classes(&model);
        let canon = model.canonical();
        for _ in 0..2 {
            let v = random_vector_in(&mut rng, &pool, 4);
            for n in signed_range(3) {
                for m in signed_range(3) {
                    for (ba, a) in &classes {
                        for (bb, b) in &classes {
                            let lhs = q_derivative(n, 1, a, &apply_q(m, b, &v, &model), &model)
                                .sub(&apply_q(m, b, &q_derivative(n, 1, a, &v, &model), &model));
                            let ab = model.mul(a, b);
                            let mut inner = apply_q(n + m, &ab, &v, &model);
                            if n + m == 0 {
                                let k = frac(n.abs() as i64 - 1, 2)
                                    * SurfaceModel::integrate(&model.mul(&canon, &ab));
                                inner = v.scale(&k);
                            }
                            let rhs = inner.scale(&int(-(n as i64) * m as i64));
                            if !r.eq(&lhs, &rhs, || format!("[q_{n}'({ba}), q_{m}({bb})] {} v={v}", model_tag(&model))) {
                                return r;
                            }
                        }
                    }
                }
            }
            for n in signed_range(4) {
                for (ba, a) in &classes {
                    let lhs = boundary(&apply_q(n, a, &v, &model), &model)
                        .sub(&apply_q(n, a, &boundary(&v, &model), &model));
                    let ka = model.mul(&canon, a);
                    let ni = n as i64;
                    let rhs = virasoro(n, a, &v, &model)
                        .scale(&int(ni))
                        .add(&apply_q(n, &ka, &v, &model).scale(&frac(ni * (ni.abs() - 1), 2)));
                    if !r.eq(&lhs, &rhs, || format!("Leibniz q_{n}({ba}) {} v={v}", model_tag(&model))) {
                        return r;
                    }
                }
            }
            for n in [-2, -1, 1, 2, 3] {
                let a = fock::random_class(&mut rng, &model);
                for order in 0..=3 {
                    let lhs = q_derivative(n, order, &a, &v, &model);
                    let rhs = q_derivative_recursive(n, order, &a, &v, &model);
                    if !r.eq(&lhs, &rhs, || format!("q_{n}^({order})({a}) {} v={v}", model_tag(&model))) {
                        return r;
                    }
                }
            }
        }
    }
    r
}

/// `[e_n(a), q_m(b)] = m q_{n+m}(ab)` for `m > 0` or `m < -n`, else zero.
pub fn e_op_suite(max_n: u32, seed: u64) -> SuiteReport {
    let mut r = SuiteReport::new("e-op", max_n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for model in test_models() {
        let pool = monomial_pool(&model, max_n);
        let classes = basis_classes(&model);
        for _ in 0..3 {
            let v = random_vector_in(&mut rng, &pool, 4);
            for n in 0..=3u32 {
                let ni = n as i32;
                for m in signed_range(4) {
                    for (ba, a) in &classes {
                        for (bb, b) in &classes {
                            let lhs = e_op(n, a, &apply_q(m, b, &v, &model), &model)
                                .sub(&apply_q(m, b, &e_op(n, a, &v, &model), &model));
                            let rhs = if m > 0 || m < -ni {
                                apply_q(ni + m, &model.mul(a, b), &v, &model).scale(&int(m as i64))
                            } else {
                                FockVector::zero()
                            };
                            if !r.eq(&lhs, &rhs, || format!("[e_{n}({ba}), q_{m}({bb})] {} v={v}", model_tag(&model))) {
                                return r;
                            }
                        }
                    }
                }
            }
        }
    }
    r
}

/// `<q_n(1) 1, d S_n(g) 1> = binom(n, 2) int(K g + g^2)`.
pub fn vertex_integral(max_n: u32) -> SuiteReport {
    let mut r = SuiteReport::new("vertex-integral", max_n);
    for model in test_models() {
        for g in ["h", "k", "h+k"] {
            let gamma: CohClass = g.parse().expect("class literal");
            let s = operators::vertex(&gamma, max_n);
            let target = SurfaceModel::integrate(&(&model.mul(&model.canonical(), &gamma) + &model.mul(&gamma, &gamma)));
            for n in 2..=max_n {
                let lhs = pairing(&create(n as u8, &CohClass::one(), &vacuum()), &boundary(&s[n as usize], &model), &model);
                let want = rational::binomial_int(n as i64, 2) * &target;
                r.check(lhs == want, || format!("n={n} gamma={g} {}: {lhs} != {want}", model_tag(&model)));
                let alt = lhs * int(-2);
                let want2 = int(-(n as i64) * (n as i64 - 1)) * &target;
                r.check(alt == want2, || format!("n={n} gamma={g}: -2x form"));
            }
        }
    }
    r
}

/// Monomial counts against the Betti-number product formula, `e = 4, 6`.
pub fn goettsche_dim(max_n: u32) -> SuiteReport {
    let mut r = SuiteReport::new("goettsche-dim", max_n);
    for b2 in [0usize, 2] {
        let model = SurfaceModel::from_ints(1, 0, -1, b2).expect("nondegenerate");
        let table = goettsche_betti(max_n, model.euler());
        for n in 0..=max_n {
            let mut counts = vec![0u64; 4 * max_n as usize + 1];
            for m in fock::monomials_of_weight(n, &model) {
                counts[m.degree() as usize] += 1;
            }
            for i in 0..=4 * max_n as usize {
                let want = table[n as usize][i];
                r.check(counts[i] == want, || format!("e={} n={n} i={i}: {} != {want}", model.euler(), counts[i]));
            }
        }
        if max_n >= 2 {
            r.check(dimension(2, 2, &model) as u64 == table[2][2], || "dimension(2,2)".into());
        }
    }
    r
}

/// `c(L^[n])` from the conjugation formula against the vertex exponential
/// `exp(sum (-1)^{m-1}/m q_m(c(L))) 1`.
pub fn chern_line(max_n: u32) -> SuiteReport {
    let mut r = SuiteReport::new("chern-line", max_n);
    for model in test_models() {
        for c1 in ["h", "k", "2h-k"] {
            let c1c: CohClass = c1.parse().expect("class literal");
            let u = KClassSpec::line_bundle(c1c.clone());
            let total = &CohClass::one() + &c1c;
            let conj = total_chern_classes(&u, max_n, &model);
            let vert = operators::vertex(&total, max_n);
            for n in 0..=max_n as usize {
                r.eq(&conj[n], &vert[n], || format!("n={n} c1={c1} {}", model_tag(&model)));
            }
        }
    }
    r
}

/// Differential-operator identities on the affine plane and generation.
pub fn affine_suite(max_n: u32, seed: u64) -> SuiteReport {
    let mut r = SuiteReport::new("affine", max_n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let peq = |r: &mut SuiteReport, lhs: &WeightedPoly, rhs: &WeightedPoly, ctx: String| {
        r.check(lhs == rhs, || format!("{ctx}; lhs - rhs = {}", lhs.sub(rhs)))
    };
    for _ in 0..3 {
        let p = affine::random_poly(&mut rng, max_n, 5);
        for n in 0..=3 {
            for nu in 0..=3 {
                for m in 0..=3 {
                    for mu in 0..=3 {
                        let lhs = affine::d_op(n, nu, &affine::d_op(m, mu, &p))
                            .sub(&affine::d_op(m, mu, &affine::d_op(n, nu, &p)));
                        let c = nu as i64 * m as i64 - mu as i64 * n as i64;
                        let rhs = if nu + mu == 0 {
                            WeightedPoly::zero()
                        } else {
                            affine::d_op(n + m, nu + mu - 1, &p).scale(&int(c))
                        };
                        peq(&mut r, &lhs, &rhs, format!("[D_({n},{nu}), D_({m},{mu})] p={p}"));
                    }
                }
            }
        }
        for n in 1..=3u32 {
            for nu in 0..=3u32 {
                let lhs = affine::q_derivative(n, nu, &p);
                let rhs = affine::d_op(n, nu, &p).scale(&rational::pow(&int(-(n as i64)), nu));
                peq(&mut r, &lhs, &rhs, format!("q_{n}^({nu}) p={p}"));
            }
        }
        for n in 0..=4u32 {
            for m in 1..=4u32 {
                let lhs = affine::ch_op(n, &p.times_q(m)).sub(&affine::ch_op(n, &p).times_q(m));
                let c = rational::sign(n as i64) * int(m as i64) / Rational::from_integer(rational::factorial(n));
                let rhs = affine::d_op(m, n, &p).scale(&c);
                peq(&mut r, &lhs, &rhs, format!("[ch_{n}, q_{m}] p={p}"));
            }
            for k in 0..=4u32 {
                let lhs = affine::ch_op(n, &affine::ch_op(k, &p));
                let rhs = affine::ch_op(k, &affine::ch_op(n, &p));
                peq(&mut r, &lhs, &rhs, format!("[ch_{n}, ch_{k}] p={p}"));
            }
        }
    }
    for n in 1..=max_n {
        let g = affine::generation_check(n);
        r.check(g.generated() && g.max_word_len <= n as usize, || {
            format!("n={n}: rank {} of {} (words {}, max length {})", g.rank, g.partitions, g.words, g.max_word_len)
        });
        r.details.push(format!("n={n}: rank {} = p(n) {}", g.rank, g.partitions));
    }
    r
}

/// The expansion of `C(-O(H))^2 1` and the resulting `N_2`.
pub fn worked_example(seed: u64) -> SuiteReport {
    let mut r = SuiteReport::new("worked-example", 2);
    let model = SurfaceModel::from_ints(1, 0, -1, 0).expect("nondegenerate");
    let u = KClassSpec::neg_line_bundle(&CohClass::h(), &model);
    let alpha = &(&CohClass::one() - &CohClass::h()) + &CohClass::term(Basis::Pt, model.d().clone());
    let p = |k| model.power(&alpha, k);

    let squared = total_chern_classes(&u, 2, &model)[2].scale(&int(2));
    let qa = create(1, &alpha, &vacuum());
    let base = create(1, &alpha, &qa).add(&create(2, &p(3), &vacuum()));
    let expansion = |last_sign: i64| {
        let mut v = base.clone();
        v.add_scaled(&q_derivative(2, 1, &p(4), &vacuum(), &model), &int(-1));
        v.add_scaled(&q_derivative(2, 2, &p(5), &vacuum(), &model), &int(1));
        v.add_scaled(&q_derivative(2, 3, &p(6), &vacuum(), &model), &int(last_sign));
        v
    };
    let minus = expansion(-1);
    let plus = expansion(1);
    r.eq(&squared, &minus, || "C^2 1 against the alternating expansion".into());
    r.check(squared != plus, || "the '+' reading of the last term also matches".into());
    r.details.push(format!("C(-O(H))^2 1 = {squared}"));
    let n2_minus = fock::integrate_hilb(&minus, 2) / int(2);
    let n2_plus = fock::integrate_hilb(&plus, 2) / int(2);
    r.details.push(format!(
        "N_2 at (d,pi,kappa,e)=(1,0,-1,4): {} with -q2'''(a^6), {} with +q2'''(a^6)",
        rational::render(&n2_minus),
        rational::render(&n2_plus)
    ));

    let opts = FitOptions { seed, ..FitOptions::default() };
    match segre::segre_polynomial(2, &DirectSampler, &opts) {
        Ok(poly) => {
            let want: UnivPoly = "(d^2 - 10*d - 5*pi - kappa + e)/2".parse().expect("literal");
            r.check(poly == want, || format!("interpolated N_2 = {poly}"));
            let at = poly.eval(&[int(1), int(0), int(-1), int(4)]);
            r.check(at == n2_minus, || format!("N_2 polynomial gives {at}, expansion gives {n2_minus}"));
            r.check(at != n2_plus || n2_plus == n2_minus, || "sign not determined".into());
            r.details.push(format!("N_2 = {poly}"));
        }
        Err(e) => {
            r.check(false, || format!("interpolation failed: {e}"));
        }
    }
    r
}
