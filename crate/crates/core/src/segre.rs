//! Segre numbers `N_n`, their interpolation to universal polynomials in
//! `(d, pi, kappa, e)`, the linear coefficients `d_m`, and comparison with
//! the closed-form series.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{CacheError, FitError, ModelError};
use crate::fock::{integrate_hilb, FockVector};
use crate::linalg::solve_exact;
use crate::operators::big_c_apply;
use crate::poly::{Exponents, UnivPoly};
use crate::rational::{self, int, Rational};
use crate::series::conjecture_series;
use crate::surface::{CohClass, KClassSpec, SurfaceModel};

pub const ENGINE_VERSION: &str = concat!("hilb-core ", env!("CARGO_PKG_VERSION"));

/// `N_n = 1/n! int C(-O(H))^n 1`.
pub fn segre_number(n: u32, model: &SurfaceModel) -> Rational {
    let u = KClassSpec::neg_line_bundle(&CohClass::h(), model);
    let mut v = FockVector::vacuum();
    for _ in 0..n {
        v = big_c_apply(&u, &v, 4 * n, model);
    }
    integrate_hilb(&v, n) / Rational::from_integer(rational::factorial(n))
}

/// Parameters of one model surface.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SamplePoint {
    pub d: Rational,
    pub pi: Rational,
    pub kappa: Rational,
    pub b2_extra: usize,
}

impl SamplePoint {
    pub fn new(d: Rational, pi: Rational, kappa: Rational, b2_extra: usize) -> Self {
        SamplePoint { d, pi, kappa, b2_extra }
    }

    pub fn from_ints(d: i64, pi: i64, kappa: i64, b2_extra: usize) -> Self {
        Self::new(int(d), int(pi), int(kappa), b2_extra)
    }

    pub fn euler(&self) -> Rational {
        int(4 + self.b2_extra as i64)
    }

    /// `(d, pi, kappa, e)`.
    pub fn invariants(&self) -> [Rational; 4] {
        [self.d.clone(), self.pi.clone(), self.kappa.clone(), self.euler()]
    }

    pub fn model(&self) -> Result<SurfaceModel, ModelError> {
        SurfaceModel::new(self.d.clone(), self.pi.clone(), self.kappa.clone(), self.b2_extra)
    }
}

/// One line of the sample cache.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub n: u32,
    pub d: String,
    pub pi: String,
    pub kappa: String,
    pub b2_extra: usize,
    pub value: String,
}

impl SampleRecord {
    pub fn new(n: u32, p: &SamplePoint, value: &Rational) -> Self {
        SampleRecord {
            n,
            d: rational::render(&p.d),
            pi: rational::render(&p.pi),
            kappa: rational::render(&p.kappa),
            b2_extra: p.b2_extra,
            value: rational::render(value),
        }
    }

    pub fn point(&self) -> Result<SamplePoint, CacheError> {
        Ok(SamplePoint::new(
            rational::parse(&self.d)?,
            rational::parse(&self.pi)?,
            rational::parse(&self.kappa)?,
            self.b2_extra,
        ))
    }
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
struct CacheHeader {
    engine_version: String,
}

/// An oracle for `N_n` at a sample point.
pub trait SegreSampler: Sync {
    fn sample(&self, n: u32, p: &SamplePoint) -> Result<Rational, ModelError>;
}

/// Evaluates every sample directly.
pub struct DirectSampler;

impl SegreSampler for DirectSampler {
    fn sample(&self, n: u32, p: &SamplePoint) -> Result<Rational, ModelError> {
        Ok(segre_number(n, &p.model()?))
    }
}

/// Direct evaluation backed by an append-only line-delimited cache file.
///
/// A file whose header names a different engine version is discarded and
/// rewritten; malformed records are ignored and recomputed.
pub struct CachedSampler {
    path: PathBuf,
    known: Mutex<HashMap<(u32, SamplePoint), Rational>>,
    writer: Mutex<File>,
}

impl CachedSampler {
    pub fn open(path: impl AsRef<Path>) -> Result<Self, CacheError> {
        let path = path.as_ref().to_path_buf();
        let mut known = HashMap::new();
        let mut valid = false;
        if path.exists() {
            let reader = BufReader::new(File::open(&path)?);
            let mut lines = reader.lines();
            if let Some(first) = lines.next() {
                let header: Option<CacheHeader> = serde_json::from_str(&first?).ok();
                valid = header.is_some_and(|h| h.engine_version == ENGINE_VERSION);
            }
            if valid {
                for line in lines {
                    let line = line?;
                    let Ok(rec) = serde_json::from_str::<SampleRecord>(&line) else {
                        continue;
                    };
                    let (Ok(p), Ok(v)) = (rec.point(), rational::parse(&rec.value)) else {
                        continue;
                    };
                    known.insert((rec.n, p), v);
                }
            }
        }
        let writer = if valid {
            OpenOptions::new().append(true).open(&path)?
        } else {
            let mut f = File::create(&path)?;
            let header = CacheHeader { engine_version: ENGINE_VERSION.to_string() };
            writeln!(f, "{}", serde_json::to_string(&header)?)?;
            f
        };
        Ok(CachedSampler { path, known: Mutex::new(known), writer: Mutex::new(writer) })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn len(&self) -> usize {
        self.known.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl SegreSampler for CachedSampler {
    fn sample(&self, n: u32, p: &SamplePoint) -> Result<Rational, ModelError> {
        let key = (n, p.clone());
        if let Some(v) = self.known.lock().expect("cache lock").get(&key) {
            return Ok(v.clone());
        }
        let value = DirectSampler.sample(n, p)?;
        let line = serde_json::to_string(&SampleRecord::new(n, p, &value)).expect("record serializes");
        {
            let mut w = self.writer.lock().expect("cache lock");
            let _ = writeln!(w, "{line}").and_then(|_| w.flush());
        }
        self.known.lock().expect("cache lock").insert(key, value.clone());
        Ok(value)
    }
}

/// Monomials `d^a pi^b kappa^c e^f` with `a+b+c+f <= n` and `b+c+f <= n/2`.
pub fn support(n: u32) -> Vec<Exponents> {
    let half = n / 2;
    let mut out = Vec::new();
    for f in 0..=half {
        for b in 0..=half - f {
            for c in 0..=half - f - b {
                for a in 0..=n - b - c - f {
                    out.push([a, b, c, f]);
                }
            }
        }
    }
    out.sort_unstable_by(|x, y| y.cmp(x));
    out
}

/// All monomials of total degree at most `n`.
pub fn full_support(n: u32) -> Vec<Exponents> {
    let mut out = Vec::new();
    for a in 0..=n {
        for b in 0..=n - a {
            for c in 0..=n - a - b {
                for f in 0..=n - a - b - c {
                    out.push([a, b, c, f]);
                }
            }
        }
    }
    out.sort_unstable_by(|x, y| y.cmp(x));
    out
}

/// `count` distinct, nondegenerate points with pairwise-distinct `d, pi,
/// kappa`, cycling `b2_extra` through `0..=max_b2`.
pub fn sample_points(count: usize, max_b2: usize, seed: u64) -> Vec<SamplePoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let b2 = out.len() % (max_b2 + 1);
        let (d, pi, kappa) = (
            rng.gen_range(-12i64..=12),
            rng.gen_range(-12i64..=12),
            rng.gen_range(-12i64..=12),
        );
        if d == pi || pi == kappa || d == kappa || d * kappa == pi * pi {
            continue;
        }
        let p = SamplePoint::from_ints(d, pi, kappa, b2);
        if seen.insert(p.clone()) {
            out.push(p);
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct FitOptions {
    /// Surplus samples beyond the number of unknowns; all must fit exactly.
    pub extra_points: usize,
    pub seed: u64,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions { extra_points: 6, seed: 0x5e9e }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SegreError {
    #[error(transparent)]
    Fit(#[from] FitError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Interpolates `N_n` on [`support`].
pub fn segre_polynomial(n: u32, sampler: &dyn SegreSampler, opts: &FitOptions) -> Result<UnivPoly, SegreError> {
    fit_on_support(n, &support(n), (n / 2) as usize, sampler, opts)
}

/// Interpolates `N_n` over an explicit monomial support; `max_b2` bounds the
/// auxiliary classes and must exceed the largest `e` exponent.
pub fn fit_on_support(
    n: u32,
    monomials: &[Exponents],
    max_b2: usize,
    sampler: &dyn SegreSampler,
    opts: &FitOptions,
) -> Result<UnivPoly, SegreError> {
    let unknowns = monomials.len();
    let mut count = unknowns + opts.extra_points;
    loop {
        let points = sample_points(count, max_b2, opts.seed);
        let values: Vec<Rational> = points
            .par_iter()
            .map(|p| sampler.sample(n, p))
            .collect::<Result<_, _>>()?;
        let rows: Vec<Vec<Rational>> = points
            .iter()
            .map(|p| {
                let x = p.invariants();
                monomials
                    .iter()
                    .map(|e| (0..4).fold(Rational::one(), |acc, i| acc * rational::pow(&x[i], e[i])))
                    .collect()
            })
            .collect();
        match solve_exact(&rows, &values) {
            Ok(coeffs) => {
                let mut p = UnivPoly::zero();
                for (e, c) in monomials.iter().zip(coeffs) {
                    p.add_term(*e, c);
                }
                return Ok(p);
            }
            Err(FitError::RankDeficient { .. }) if count < 3 * unknowns + opts.extra_points => {
                count += unknowns / 2 + 1;
            }
            Err(e) => return Err(e.into()),
        }
    }
}

/// `d_1..d_max` from `sum N_n z^n = exp(sum (-1)^{m-1}/m d_m z^m)`;
/// `polys[n]` is `N_n` with `polys[0] = 1`.
pub fn dm_coefficients(max_m: usize, polys: &[UnivPoly]) -> Vec<UnivPoly> {
    assert!(polys.len() > max_m, "need N_0..N_max");
    let mut g: Vec<UnivPoly> = vec![UnivPoly::zero(); max_m + 1];
    for m in 1..=max_m {
        let mut acc = polys[m].scale(&int(m as i64));
        for k in 1..m {
            acc = acc.sub(&g[k].mul(&polys[m - k]).scale(&int(k as i64)));
        }
        g[m] = acc.scale(&Rational::new(BigInt::one(), BigInt::from(m)));
    }
    (1..=max_m)
        .map(|m| g[m].scale(&(rational::sign(m as i64 - 1) * int(m as i64))))
        .collect()
}

/// `d_1..d_max` as linear forms in `(d, pi, kappa, e)` fitted from numeric
/// `N_1..N_max` at a few sample points, with a constant term kept as an
/// unknown. Every surplus point must fit exactly.
pub fn dm_linear_fit(max_m: usize, sampler: &dyn SegreSampler, opts: &FitOptions) -> Result<Vec<UnivPoly>, SegreError> {
    let monomials: [Exponents; 5] = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [0, 0, 0, 0]];
    let points = sample_points(monomials.len() + opts.extra_points, 1, opts.seed);
    let jobs: Vec<(usize, u32)> = (0..points.len()).flat_map(|i| (1..=max_m as u32).map(move |n| (i, n))).collect();
    let values: Vec<Rational> = jobs
        .par_iter()
        .map(|&(i, n)| sampler.sample(n, &points[i]))
        .collect::<Result<_, _>>()?;
    let per_point: Vec<Vec<Rational>> = values
        .chunks(max_m)
        .map(|ns| {
            let polys: Vec<UnivPoly> = std::iter::once(UnivPoly::constant(Rational::one()))
                .chain(ns.iter().map(|v| UnivPoly::constant(v.clone())))
                .collect();
            dm_coefficients(max_m, &polys).iter().map(|p| p.coeff(&[0; 4])).collect()
        })
        .collect();
    let rows: Vec<Vec<Rational>> = points
        .iter()
        .map(|p| {
            let x = p.invariants();
            monomials
                .iter()
                .map(|e| (0..4).fold(Rational::one(), |acc, i| acc * rational::pow(&x[i], e[i])))
                .collect()
        })
        .collect();
    (0..max_m)
        .map(|m| {
            let rhs: Vec<Rational> = per_point.iter().map(|v| v[m].clone()).collect();
            let coeffs = solve_exact(&rows, &rhs)?;
            let mut p = UnivPoly::zero();
            for (e, c) in monomials.iter().zip(coeffs) {
                p.add_term(*e, c);
            }
            Ok(p)
        })
        .collect()
}

/// Known linear coefficients `d_1..d_7`.
pub const KNOWN_DM: [&str; 7] = [
    "d",
    "10*d + 5*pi - e + kappa",
    "112*d + 96*pi - 20*e + 28*kappa",
    "1320*d + 1507*pi - 324*e + 550*kappa",
    "16016*d + 22120*pi - 4880*e + 9440*kappa",
    "198016*d + 314738*pi - 70976*e + 151260*kappa",
    "2480640*d + 4402720*pi - 1012032*e + 2326192*kappa",
];

pub fn known_dm(m: usize) -> Option<UnivPoly> {
    KNOWN_DM.get(m.checked_sub(1)?).map(|s| s.parse().expect("table parses"))
}

/// `N_n` evaluated by the closed form: `exp(sum (-1)^{m-1}/m d_m z^m)`
/// at a point, from a list of linear `d_m`.
pub fn series_from_dm(dms: &[UnivPoly], point: &[Rational; 4]) -> Vec<Rational> {
    use crate::series::PowerSeries;
    let order = dms.len();
    let mut coeffs = vec![Rational::zero(); order + 1];
    for (i, dm) in dms.iter().enumerate() {
        let m = i + 1;
        coeffs[m] = dm.eval(point) * rational::sign(m as i64 - 1) / int(m as i64);
    }
    PowerSeries::new(coeffs, order).exp().expect("zero constant").coeffs().to_vec()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureRow {
    pub n: u32,
    pub engine: Rational,
    pub conjecture: Rational,
}

impl ConjectureRow {
    pub fn equal(&self) -> bool {
        self.engine == self.conjecture
    }
}

#[derive(Clone, Debug)]
pub struct ConjectureReport {
    pub rows: Vec<ConjectureRow>,
}

impl ConjectureReport {
    pub fn all_equal(&self) -> bool {
        self.rows.iter().all(ConjectureRow::equal)
    }
}

/// Compares `N_n` against the closed-form series for `n = 0..=n_max`.
pub fn check_conjecture(n_max: u32, model: &SurfaceModel) -> ConjectureReport {
    let e = int(model.euler() as i64);
    let series = conjecture_series(model.d(), model.pi(), model.kappa(), &e, n_max as usize);
    let rows = (0..=n_max)
        .map(|n| ConjectureRow {
            n,
            engine: if n == 0 { Rational::one() } else { segre_number(n, model) },
            conjecture: series.coeff(n as usize).clone(),
        })
        .collect();
    ConjectureReport { rows }
}
