use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};

use hilb_core::affine;
use hilb_core::fock::{self, FockVector};
use hilb_core::linalg::solve_exact;
use hilb_core::poly::UnivPoly;
use hilb_core::rational::{self, int, Rational};
use hilb_core::segre::{
    check_conjecture, dm_coefficients, dm_linear_fit, known_dm, sample_points, segre_polynomial, DirectSampler,
    FitOptions,
};
use hilb_core::series::conjecture_series;
use hilb_core::surface::{CohClass, SurfaceModel};
use hilb_core::verify::{self, SuiteReport};

const SEED: u64 = 20240;

const PRINTED_SEGRE: [(u32, &str); 4] = [
    (2, "d^2-10*d-5*pi-kappa+e"),
    (3, "d^3-30*d^2+224*d-3*d*(5*pi+kappa-e)+192*pi+56*kappa-40*e"),
    (
        4,
        "d^4-60*d^3+d^2*(1196-30*pi+6*e-6*kappa)-d*(7920-1068*pi+220*e-284*kappa)+3*e^2+1944*e-6*e*kappa\
         -30*e*pi+75*pi^2+3*kappa^2+30*kappa*pi-9042*pi-3300*kappa",
    ),
    (
        5,
        "d^5-100*d^4+d^3*(3740+10*e-50*pi-10*kappa)-d^2*(62000-3420*pi+700*e-860*kappa)\
         +d*(384384+15*e^2+15960*e-30*e*kappa-150*pi*e+15*kappa^2+150*kappa*pi-75610*pi-24340*kappa+375*pi^2)\
         -400*e^2-117120*e+3920*pi*e+960*kappa*e+226560*kappa-4720*kappa*pi-560*kappa^2+530880*pi-9600*pi^2",
    ),
];

struct Outcome {
    pass: bool,
    summary: String,
}

impl Outcome {
    fn new(pass: bool, summary: impl Into<String>) -> Self {
        Outcome { pass, summary: summary.into() }
    }

    fn suite(r: &SuiteReport) -> Self {
        match &r.counterexample {
            None => Outcome::new(true, format!("{} checks", r.checks)),
            Some(c) => Outcome::new(false, format!("{} checks, counterexample: {c}", r.checks)),
        }
    }

    fn all(parts: Vec<Outcome>) -> Self {
        let pass = parts.iter().all(|p| p.pass);
        let summary = parts.iter().map(|p| p.summary.as_str()).collect::<Vec<_>>().join("; ");
        Outcome::new(pass, summary)
    }
}

struct Runner {
    failures: usize,
}

impl Runner {
    fn criterion(&mut self, id: &str, title: &str, limit: Option<Duration>, f: impl FnOnce() -> Outcome) {
        let start = Instant::now();
        let mut out = f();
        let elapsed = start.elapsed();
        if let Some(limit) = limit {
            if elapsed > limit {
                out.pass = false;
                out.summary = format!("{} (over time limit {}s)", out.summary, limit.as_secs());
            }
        }
        if !out.pass {
            self.failures += 1;
        }
        let verdict = if out.pass { "PASS" } else { "FAIL" };
        println!("[{verdict}] {id:>3} {title} ({:.1}s): {}", elapsed.as_secs_f64(), out.summary);
    }
}

fn minutes(m: u64) -> Option<Duration> {
    Some(Duration::from_secs(60 * m))
}

fn pairing_values() -> Outcome {
    let model = SurfaceModel::from_ints(1, 0, -1, 0).unwrap();
    let mut bad = Vec::new();
    for n in 1..=8u8 {
        let a = fock::create(n, &CohClass::pt(), &FockVector::vacuum());
        let b = fock::create(n, &CohClass::one(), &FockVector::vacuum());
        let got = fock::pairing(&a, &b, &model);
        let want = rational::sign(n as i64 - 1) * int(n as i64);
        if got != want {
            bad.push(format!("n={n}: {} != {}", rational::render(&got), rational::render(&want)));
        }
    }
    if bad.is_empty() {
        Outcome::new(true, "<q_n(pt)1, q_n(1)1> = (-1)^(n-1) n for n = 1..8")
    } else {
        Outcome::new(false, bad.join(", "))
    }
}

fn segre_polys(max_n: u32) -> Vec<UnivPoly> {
    let opts = FitOptions::default();
    let mut polys = vec![UnivPoly::constant(Rational::one())];
    for n in 1..=max_n {
        polys.push(segre_polynomial(n, &DirectSampler, &opts).expect("interpolation"));
    }
    polys
}

fn printed_segre(polys: &[UnivPoly]) -> Outcome {
    let mut parts = Vec::new();
    for (n, text) in PRINTED_SEGRE {
        let printed: UnivPoly = text.parse().expect("printed polynomial parses");
        let scaled = polys[n as usize].scale(&Rational::from_integer(rational::factorial(n)));
        let ok = scaled == printed;
        parts.push(Outcome::new(
            ok,
            if ok {
                format!("N{n} ({} terms) matches", printed.sorted_terms().count())
            } else {
                format!("N{n} differs: {n}!*N{n} - printed = {}", scaled.sub(&printed))
            },
        ));
    }
    Outcome::all(parts)
}

fn is_linear_without_constant(p: &UnivPoly) -> bool {
    p.is_linear_form() && p.coeff(&[0; 4]).is_zero()
}

fn dm_table(polys: &[UnivPoly]) -> Outcome {
    let dms = dm_coefficients(6, polys);
    let mut parts = Vec::new();
    for (i, dm) in dms.iter().enumerate() {
        let m = i + 1;
        let want = known_dm(m).expect("table entry");
        let ok = *dm == want && is_linear_without_constant(dm);
        parts.push(Outcome::new(ok, if ok { format!("d{m} ok") } else { format!("d{m} = {dm} vs {want}") }));
    }
    let out = Outcome::all(parts);
    Outcome::new(out.pass, format!("{}; d6 = {}", out.summary, dms[5]))
}

/// `d_m` at a point from the closed-form series: `(-1)^{m-1} m [z^m] log`.
fn closed_form_dm(m: usize, point: &[Rational; 4]) -> Rational {
    let [d, pi, kappa, e] = point;
    let log = conjecture_series(d, pi, kappa, e, m).log().expect("unit constant");
    log.coeff(m) * rational::sign(m as i64 - 1) * int(m as i64)
}

fn closed_form_linear_dm(m: usize) -> UnivPoly {
    let monomials: [[u32; 4]; 5] = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [0, 0, 0, 0]];
    let points = sample_points(11, 1, 7);
    let rows: Vec<Vec<Rational>> = points
        .iter()
        .map(|p| {
            let x = p.invariants();
            monomials.iter().map(|e| (0..4).fold(Rational::one(), |acc, i| acc * rational::pow(&x[i], e[i]))).collect()
        })
        .collect();
    let rhs: Vec<Rational> = points.iter().map(|p| closed_form_dm(m, &p.invariants())).collect();
    let coeffs = solve_exact(&rows, &rhs).expect("closed form is linear");
    let mut out = UnivPoly::zero();
    for (e, c) in monomials.iter().zip(coeffs) {
        out.add_term(*e, c);
    }
    out
}

fn stretch_d7() -> Outcome {
    let dms = dm_linear_fit(7, &DirectSampler, &FitOptions::default()).expect("linear fit");
    let engine = &dms[6];
    let closed = closed_form_linear_dm(7);
    let printed = known_dm(7).expect("table entry");
    let low_ok = (0..6).all(|i| Some(&dms[i]) == known_dm(i + 1).as_ref());
    let pass = low_ok && *engine == closed && is_linear_without_constant(engine);
    let diff = engine.sub(&printed);
    Outcome::new(
        pass,
        format!(
            "engine d7 = {engine}; closed-form series agrees: {}; printed table entry differs by {diff}",
            *engine == closed
        ),
    )
}

fn conjecture_consistency() -> Outcome {
    let tuples = [(1, 0, -1, 0), (2, 1, -3, 1), (-3, 2, 5, 2)];
    let mut parts = Vec::new();
    for (d, pi, kappa, b2) in tuples {
        let model = SurfaceModel::from_ints(d, pi, kappa, b2).unwrap();
        let report = check_conjecture(6, &model);
        let n6 = rational::render(&report.rows[6].engine);
        parts.push(Outcome::new(
            report.all_equal(),
            format!("(d={d}, pi={pi}, kappa={kappa}, b2_extra={b2}): n<=6 equal={} N6={n6}", report.all_equal()),
        ));
    }
    Outcome::all(parts)
}

fn affine_criterion() -> Outcome {
    let suite = verify::affine_suite(8, SEED);
    let mut parts = vec![Outcome::suite(&suite)];
    let ranks: Vec<String> = (1..=8)
        .map(|n| {
            let g = affine::generation_check(n);
            parts.push(Outcome::new(g.generated(), String::new()));
            format!("{}/{}", g.rank, g.partitions)
        })
        .collect();
    let pass = parts.iter().all(|p| p.pass);
    Outcome::new(pass, format!("{} checks; generation ranks n=1..8: {}", suite.checks, ranks.join(" ")))
}

fn main() -> ExitCode {
    let mut run = Runner { failures: 0 };
    println!("acceptance criteria");
    run.criterion("1", "oscillator relations", minutes(1), || {
        Outcome::suite(&verify::oscillator(6, SEED, 200))
    });
    run.criterion("2", "pairing oracle", None, pairing_values);
    run.criterion("3", "Virasoro brackets with central term", minutes(5), || {
        Outcome::suite(&verify::virasoro_suite(4, SEED))
    });
    run.criterion("4", "derivative bracket with K-correction", None, || {
        Outcome::suite(&verify::derivative_suite(5, SEED))
    });
    run.criterion("5", "vertex-integral identity", None, || Outcome::suite(&verify::vertex_integral(5)));
    run.criterion("6", "line-bundle Chern classes", minutes(5), || Outcome::suite(&verify::chern_line(5)));
    let mut polys = Vec::new();
    run.criterion("7", "Segre polynomials N2..N5", minutes(10), || {
        polys = segre_polys(5);
        printed_segre(&polys)
    });
    run.criterion("8", "d_m table d1..d6", None, || {
        polys.push(segre_polynomial(6, &DirectSampler, &FitOptions::default()).expect("interpolation"));
        dm_table(&polys)
    });
    run.criterion("8*", "stretch: d7", None, stretch_d7);
    run.criterion("9", "closed-form series vs engine", None, conjecture_consistency);
    run.criterion("10", "Goettsche dimensions", None, || Outcome::suite(&verify::goettsche_dim(6)));
    run.criterion("11", "affine-plane operators and generation", minutes(2), affine_criterion);
    run.criterion("12", "worked example N2", None, || {
        let r = verify::worked_example(SEED);
        let out = Outcome::suite(&r);
        Outcome::new(out.pass, format!("{}; {}", out.summary, r.details.join("; ")))
    });
    if run.failures == 0 {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {} criteria failed", run.failures);
        ExitCode::FAILURE
    }
}
