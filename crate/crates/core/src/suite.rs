//! Seeded verification suites over every module.
//!
//! A suite is a module name (`groth`, `fv`, `pm`, `mc`, `sv6`), a single
//! part of one (`fv.ybe`), or `all`. Each part draws its random points from
//! its own generator seeded by the suite seed and the part name, so a part
//! sees the same points whether it runs alone or inside `all`.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{format_rational, int, rat, Rational};
use crate::five_vertex as fv;
use crate::grothendieck as gr;
use crate::melting_crystal as mc;
use crate::partitions::{admissible, complement, enumerate_boxed, partitions_in_box};
use crate::phase_model as pm;
use crate::six_vertex as sv;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    Small,
    Full,
}

impl Scale {
    fn pick<T>(self, small: T, full: T) -> T {
        match self {
            Scale::Small => small,
            Scale::Full => full,
        }
    }
}

impl FromStr for Scale {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "small" => Ok(Scale::Small),
            "full" => Ok(Scale::Full),
            other => Err(Error::Usage(format!("unknown scale '{other}', expected small or full"))),
        }
    }
}

impl fmt::Display for Scale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.pick("small", "full"))
    }
}

/// One failed case.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Failure {
    pub case: String,
    pub inputs: String,
    pub expected: String,
    pub got: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PartSummary {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub scale: Scale,
    pub seed: u64,
    pub cases: usize,
    pub parts: Vec<PartSummary>,
    pub failures: Vec<Failure>,
    /// Only filled in on request, so that reports are reproducible byte for byte.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_s: Option<f64>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// All module names and their parts, in run order.
pub const SUITES: &[(&str, &[&str])] = &[
    ("groth", &["cauchy", "summation", "addition", "chain", "branching"]),
    ("fv", &["ybe", "rll", "thm22", "skew", "ham"]),
    ("pm", &["rll", "thm52", "lemma53", "scalar", "sum", "ham", "commute", "bethe"]),
    ("mc", &["zbox", "beta0", "macmahon", "entropy"]),
    ("sv6", &["rll", "reduction"]),
];

/// Runs `name` (`all`, a module, or `module.part`).
pub fn run_suite(name: &str, scale: Scale, seed: u64) -> Result<SuiteReport> {
    run_suite_timed(name, scale, seed, false)
}

/// As [`run_suite`], optionally recording wall time.
pub fn run_suite_timed(name: &str, scale: Scale, seed: u64, timing: bool) -> Result<SuiteReport> {
    let start = Instant::now();
    let parts = resolve(name)?;
    let mut report = SuiteReport {
        suite: name.to_string(),
        scale,
        seed,
        cases: 0,
        parts: Vec::new(),
        failures: Vec::new(),
        wall_time_s: None,
    };
    for (module, part) in parts {
        let full = format!("{module}.{part}");
        let mut run = Run::new(&full, seed);
        dispatch(module, part, scale, &mut run);
        report.cases += run.cases;
        report.parts.push(PartSummary { name: full, cases: run.cases, failures: run.failures.len() });
        report.failures.extend(run.failures);
    }
    if timing {
        report.wall_time_s = Some(start.elapsed().as_secs_f64());
    }
    Ok(report)
}

fn resolve(name: &str) -> Result<Vec<(&'static str, &'static str)>> {
    let unknown = || {
        let names: Vec<&str> = SUITES.iter().map(|(m, _)| *m).collect();
        Error::Usage(format!("unknown suite '{name}', expected all, {} or module.part", names.join(", ")))
    };
    if name == "all" {
        return Ok(SUITES.iter().flat_map(|(m, ps)| ps.iter().map(move |p| (*m, *p))).collect());
    }
    let (module, part) = match name.split_once('.') {
        Some((m, p)) => (m, Some(p)),
        None => (name, None),
    };
    let (m, parts) = SUITES.iter().find(|(m, _)| *m == module).ok_or_else(unknown)?;
    match part {
        None => Ok(parts.iter().map(|p| (*m, *p)).collect()),
        Some(p) => {
            let p = parts.iter().find(|q| **q == p).ok_or_else(unknown)?;
            Ok(vec![(*m, *p)])
        }
    }
}

fn dispatch(module: &str, part: &str, s: Scale, run: &mut Run) {
    match (module, part) {
        ("groth", "cauchy") => groth_cauchy(s, run),
        ("groth", "summation") => groth_summation(s, run),
        ("groth", "addition") => groth_addition(s, run),
        ("groth", "chain") => groth_chain(s, run),
        ("groth", "branching") => groth_branching(s, run),
        ("fv", "ybe") => fv_ybe(s, run),
        ("fv", "rll") => fv_rll(s, run),
        ("fv", "thm22") => fv_thm22(s, run),
        ("fv", "skew") => fv_skew(s, run),
        ("fv", "ham") => fv_ham(s, run),
        ("pm", "rll") => pm_rll(s, run),
        ("pm", "thm52") => pm_thm52(s, run),
        ("pm", "lemma53") => pm_lemma53(s, run),
        ("pm", "scalar") => pm_scalar(s, run),
        ("pm", "sum") => pm_sum(s, run),
        ("pm", "ham") => pm_ham(s, run),
        ("pm", "commute") => pm_commute(s, run),
        ("pm", "bethe") => pm_bethe(s, run),
        ("mc", "zbox") => mc_zbox(s, run),
        ("mc", "beta0") => mc_beta0(s, run),
        ("mc", "macmahon") => mc_macmahon(s, run),
        ("mc", "entropy") => mc_entropy(s, run),
        ("sv6", "rll") => sv6_rll(s, run),
        ("sv6", "reduction") => sv6_reduction(s, run),
        _ => unreachable!("resolve only yields known parts"),
    }
}

const PRIMES: [i64; 11] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31];

/// Seeded source of small generic rationals `±(p + k)/p'` with `p, p'` prime.
pub struct PointGen {
    rng: ChaCha8Rng,
}

impl PointGen {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Generator for one named part: FNV-1a of the name mixed into the seed.
    pub fn for_part(seed: u64, part: &str) -> Self {
        let h = part.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3));
        Self::new(seed ^ h)
    }

    pub fn rational(&mut self) -> Rational {
        let p = PRIMES[self.rng.gen_range(0..PRIMES.len())];
        let k = self.rng.gen_range(0..4);
        let d = PRIMES[self.rng.gen_range(0..PRIMES.len())];
        let sign = if self.rng.gen_bool(0.5) { 1 } else { -1 };
        rat(sign * (p + k), d)
    }

    pub fn rationals(&mut self, n: usize) -> Vec<Rational> {
        (0..n).map(|_| self.rational()).collect()
    }

    /// Rational in `(0, 1)`.
    pub fn unit_interval(&mut self) -> Rational {
        let d = PRIMES[self.rng.gen_range(2..PRIMES.len())];
        rat(self.rng.gen_range(1..d), d)
    }

    /// Redraws until `f` succeeds; generic points fail only on measure-zero
    /// coincidences, so a handful of attempts is plenty.
    pub fn draw<T>(&mut self, mut f: impl FnMut(&mut Self) -> Result<T>) -> Result<T> {
        let mut last = None;
        for _ in 0..200 {
            match f(self) {
                Ok(x) => return Ok(x),
                Err(e) => last = Some(e),
            }
        }
        Err(last.unwrap_or_else(|| Error::Evaluation("no admissible point".into())))
    }
}

/// Text form of a compared value.
trait Render {
    fn render(&self) -> String;
}

impl Render for Rational {
    fn render(&self) -> String {
        format_rational(self)
    }
}

impl Render for bool {
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Render for u64 {
    fn render(&self) -> String {
        self.to_string()
    }
}

impl<T: Render> Render for Vec<T> {
    fn render(&self) -> String {
        format!("[{}]", self.iter().map(Render::render).collect::<Vec<_>>().join(", "))
    }
}

impl Render for crate::exact::RingMatrix<Rational> {
    fn render(&self) -> String {
        let rows: Vec<String> = (0..self.rows())
            .map(|i| (0..self.cols()).map(|j| self.get(i, j).render()).collect::<Vec<_>>().join(", "))
            .collect();
        format!("[[{}]]", rows.join("], ["))
    }
}

struct Run {
    part: String,
    gen: PointGen,
    cases: usize,
    failures: Vec<Failure>,
}

impl Run {
    fn new(part: &str, seed: u64) -> Self {
        Self { part: part.to_string(), gen: PointGen::for_part(seed, part), cases: 0, failures: Vec::new() }
    }

    fn fail(&mut self, inputs: String, expected: String, got: String) {
        self.failures.push(Failure { case: self.part.clone(), inputs, expected, got });
    }

    fn eq<T: PartialEq + Render>(&mut self, inputs: impl FnOnce() -> String, expected: Result<T>, got: Result<T>) {
        self.cases += 1;
        match (expected, got) {
            (Ok(e), Ok(g)) if e == g => {}
            (e, g) => {
                let show = |r: Result<T>| r.map(|x| x.render()).unwrap_or_else(|err| format!("error: {err}"));
                self.fail(inputs(), show(e), show(g));
            }
        }
    }

    fn holds(&mut self, inputs: impl FnOnce() -> String, got: Result<bool>) {
        self.eq(inputs, Ok(true), got);
    }

    fn fails(&mut self, inputs: impl FnOnce() -> String, got: Result<bool>) {
        self.eq(inputs, Ok(false), got);
    }

    fn below(&mut self, inputs: impl FnOnce() -> String, value: Result<f64>, tol: f64) {
        self.cases += 1;
        match value {
            Ok(v) if v.abs() < tol => {}
            Ok(v) => self.fail(inputs(), format!("|x| < {tol:e}"), format!("{v:e}")),
            Err(e) => self.fail(inputs(), format!("|x| < {tol:e}"), format!("error: {e}")),
        }
    }

    /// A point that could not be drawn is recorded as a failure.
    fn point<T>(&mut self, f: impl FnMut(&mut PointGen) -> Result<T>) -> Option<T> {
        match self.gen.draw(f) {
            Ok(x) => Some(x),
            Err(e) => {
                self.cases += 1;
                self.fail("point generation".into(), "admissible point".into(), format!("error: {e}"));
                None
            }
        }
    }
}

fn show(xs: &[Rational]) -> String {
    format!("[{}]", xs.iter().map(format_rational).collect::<Vec<_>>().join(", "))
}

fn nonzero_beta(g: &mut PointGen) -> Result<Rational> {
    let b = g.rational();
    if b.is_zero() {
        return Err(Error::Parameter("beta = 0".into()));
    }
    Ok(b)
}

fn distinct(xs: &[Rational]) -> Result<()> {
    gr::ensure_distinct(xs)
}

// ---- Grothendieck polynomials ----

fn groth_point(g: &mut PointGen, n: usize) -> Result<(Vec<Rational>, Vec<Rational>, Rational)> {
    let z = g.rationals(n);
    let w = g.rationals(n);
    let b = nonzero_beta(g)?;
    distinct(&z)?;
    distinct(&w)?;
    if z.iter().any(|x| w.contains(x)) {
        return Err(Error::DegeneratePoint("z and w overlap".into()));
    }
    Ok((z, w, b))
}

fn groth_cauchy(s: Scale, run: &mut Run) {
    for _ in 0..s.pick(2, 5) {
        for n in 1..=3 {
            let Some((z, w, b)) = run.point(|g| groth_point(g, n)) else { return };
            for l in 0..=3 {
                run.eq(
                    || format!("N={n} L={l} z={} w={} beta={}", show(&z), show(&w), b),
                    gr::cauchy_rhs(n, l, &z, &w, &b),
                    gr::cauchy_lhs(n, l, &z, &w, &b),
                );
            }
        }
    }
}

fn groth_summation(s: Scale, run: &mut Run) {
    for _ in 0..s.pick(2, 5) {
        for n in 1..=3 {
            let Some((z, _, b)) = run.point(|g| groth_point(g, n)) else { return };
            for l in 0..=3 {
                run.eq(
                    || format!("N={n} L={l} z={} beta={}", show(&z), b),
                    gr::summation_rhs(n, l, &z, &b),
                    gr::summation_lhs(n, l, &z, &b),
                );
            }
        }
    }
}

fn groth_addition(s: Scale, run: &mut Run) {
    for _ in 0..s.pick(1, 2) {
        let Some((z, _, b)) = run.point(|g| groth_point(g, 3)) else { return };
        let head = gr::EvalPoint::new(z[..2].to_vec(), b.clone()).expect("distinct");
        let whole = gr::EvalPoint::new(z.clone(), b.clone()).expect("distinct");
        for mu in partitions_in_box(3, 3) {
            let rhs = (|| -> Result<Rational> {
                let mut acc = Rational::zero();
                for lam in partitions_in_box(2, 3) {
                    let sk = gr::skew_single(&mu, &lam, &z[2], &b)?;
                    if !sk.is_zero() {
                        acc += sk * gr::groth_det(&lam, &head)?;
                    }
                }
                Ok(acc)
            })();
            run.eq(|| format!("mu={mu} z={} beta={}", show(&z), b), gr::groth_det(&mu, &whole), rhs);
        }
    }
}

fn groth_chain(s: Scale, run: &mut Run) {
    for _ in 0..s.pick(1, 2) {
        let Some((z, _, b)) = run.point(|g| groth_point(g, 3)) else { return };
        let p = gr::EvalPoint::new(z.clone(), b.clone()).expect("distinct");
        for lam in partitions_in_box(3, 3) {
            run.eq(
                || format!("lambda={lam} z={} beta={}", show(&z), b),
                gr::groth_det(&lam, &p),
                gr::groth_chain(&lam, &p),
            );
        }
    }
}

fn groth_branching(s: Scale, run: &mut Run) {
    for _ in 0..s.pick(1, 2) {
        let Some((z, _, b)) = run.point(|g| groth_point(g, 3)) else { return };
        let whole = gr::EvalPoint::new(z.clone(), b.clone()).expect("distinct");
        let tail = gr::EvalPoint::new(z[2..].to_vec(), b.clone()).expect("distinct");
        for lam in partitions_in_box(3, 3) {
            let rhs = (|| -> Result<Rational> {
                let mut acc = Rational::zero();
                for nu in partitions_in_box(1, 3) {
                    acc += gr::skew_multi(&lam, &nu, &z[..2], &b)? * gr::groth_det(&nu, &tail)?;
                }
                Ok(acc)
            })();
            run.eq(|| format!("lambda={lam} z={} beta={}", show(&z), b), gr::groth_det(&lam, &whole), rhs);
        }
    }
}

// ---- five-vertex model ----

fn fv_point(g: &mut PointGen, n: usize) -> Result<(Vec<Rational>, Rational)> {
    let us = g.rationals(n);
    let b = nonzero_beta(g)?;
    let z = us.iter().map(|u| fv::spectral_to_z(u, &b)).collect::<Result<Vec<_>>>()?;
    distinct(&z)?;
    let sq: Vec<Rational> = us.iter().map(|u| u * u).collect();
    distinct(&sq)?;
    Ok((us, b))
}

fn fv_ybe(s: Scale, run: &mut Run) {
    for _ in 0..s.pick(3, 10) {
        let Some((us, _)) = run.point(|g| fv_point(g, 3)) else { return };
        run.holds(|| format!("u,v,w={}", show(&us)), fv::check_ybe(&us[0], &us[1], &us[2]));
    }
}

fn fv_rll(s: Scale, run: &mut Run) {
    for _ in 0..s.pick(3, 10) {
        let Some((us, b)) = run.point(|g| fv_point(g, 2)) else { return };
        run.holds(|| format!("u,v={} beta={}", show(&us), b), fv::check_rll(&us[0], &us[1], &b));
    }
    run.holds(|| "u=2 v=3 beta=-1".into(), fv::check_rll(&int(2), &int(3), &int(-1)));
}

fn fv_thm22(s: Scale, run: &mut Run) {
    let max_m = s.pick(5, 7);
    for _ in 0..s.pick(1, 3) {
        let Some((us, b)) = run.point(|g| fv_point(g, 3)) else { return };
        for m in 1..=max_m {
            for n in 0..=3.min(m) {
                let u = &us[..n];
                let psi = match fv::state_vector_5v(m, u, &b) {
                    Ok(p) => p,
                    Err(e) => {
                        run.eq(|| format!("M={m} u={}", show(u)), Ok(int(0)), Err(e));
                        continue;
                    }
                };
                for x in fv::sector_configs(m, n) {
                    let inputs = || format!("M={m} x={:?} u={} beta={}", x.positions(), show(u), b);
                    run.eq(
                        inputs,
                        fv::wavefunction_5v_closed(&x, u, &b),
                        Ok(psi.amplitude(fv::SpinState::from_config(&x))),
                    );
                    run.eq(
                        inputs,
                        fv::dual_wavefunction_5v_closed(&x, u, &b),
                        fv::dual_wavefunction_5v(&x, u, &b),
                    );
                }
            }
        }
    }
}

fn fv_skew(s: Scale, run: &mut Run) {
    let m = s.pick(5, 6);
    for _ in 0..s.pick(1, 2) {
        let Some((us, b)) = run.point(|g| fv_point(g, 1)) else { return };
        let u = &us[0];
        let Ok(z) = fv::spectral_to_z(u, &b) else { continue };
        for n in 0..m {
            for x in fv::sector_configs(m, n) {
                for y in fv::sector_configs(m, n + 1) {
                    let inputs = || format!("M={m} y={:?} x={:?} u={u} beta={b}", y.positions(), x.positions());
                    let elem = fv::skew_matrix_element(&y, &x, u, &b);
                    run.eq(inputs, fv::skew_closed(&y, &x, u, &b), elem.clone());
                    let dual = (|| -> Result<Rational> {
                        let mu_v = complement(&y.to_partition(), n + 1, (m - n - 1) as u32)?;
                        let lam_v = complement(&x.to_partition(), n, (m - n) as u32)?;
                        gr::skew_single(&mu_v, &lam_v, &z, &b)
                    })();
                    run.eq(inputs, dual, fv::skew_matrix_element_c(&x, &y, u, &b));
                    run.eq(inputs, elem, fv::skew_matrix_element_c(&x.reversed(), &y.reversed(), u, &b));
                }
            }
        }
    }
}

fn fv_ham(s: Scale, run: &mut Run) {
    for b in [int(-1), int(-4), rat(-1, 4)] {
        for m in 2..=s.pick(5, 6) {
            for n in 0..=m {
                run.eq(
                    || format!("M={m} N={n} beta={b}"),
                    fv::hamiltonian_5v_local(m, n, &b),
                    fv::hamiltonian_5v_log_derivative(m, n, &b),
                );
            }
        }
    }
}

// ---- phase model ----

fn pm_point(g: &mut PointGen, n: usize) -> Result<(Vec<Rational>, Rational)> {
    let vs = g.rationals(n);
    let b = g.rational();
    let z = vs.iter().map(|v| pm::phase_z(v, &b)).collect::<Result<Vec<_>>>()?;
    distinct(&z)?;
    let sq: Vec<Rational> = vs.iter().map(|v| v * v).collect();
    distinct(&sq)?;
    Ok((vs, b))
}

fn pm_rll(s: Scale, run: &mut Run) {
    let cap = s.pick(3, 4);
    for _ in 0..s.pick(3, 10) {
        let Some((vs, b)) = run.point(|g| pm_point(g, 2)) else { return };
        run.holds(
            || format!("u,v={} beta={b} cap={cap}", show(&vs)),
            pm::check_rll_phase(&vs[0], &vs[1], &b, cap),
        );
    }
}

fn pm_thm52(s: Scale, run: &mut Run) {
    for _ in 0..s.pick(1, 3) {
        let Some((vs, b)) = run.point(|g| pm_point(g, 3)) else { return };
        for m in 1..=5 {
            for n in 0..=3u32 {
                let v = &vs[..n as usize];
                let psi = match pm::state_vector_phase(m, v, &b) {
                    Ok(p) => p,
                    Err(e) => {
                        run.eq(|| format!("M={m} v={}", show(v)), Ok(int(0)), Err(e));
                        continue;
                    }
                };
                for c in pm::FockSector::new(m, n).basis() {
                    let inputs = || format!("M={m} n={:?} v={} beta={b}", c.occupations(), show(v));
                    run.eq(inputs, pm::wavefunction_phase_closed(c, v, &b), Ok(psi.amplitude(c)));
                    run.eq(
                        inputs,
                        pm::dual_wavefunction_phase_closed(c, v, &b),
                        pm::dual_wavefunction_phase(c, v, &b),
                    );
                }
            }
        }
    }
}

fn pm_lemma53(s: Scale, run: &mut Run) {
    for _ in 0..s.pick(1, 2) {
        let Some((vs, b)) = run.point(|g| pm_point(g, 1)) else { return };
        let v = &vs[0];
        let Ok(z) = pm::phase_z(v, &b) else { continue };
        for m in 1..=5usize {
            for n in 0..=2u32 {
                for lower in pm::FockSector::new(m, n).basis() {
                    let raw = pm::apply_B_phase(v, &b, &pm::FockVector::basis(lower.clone()));
                    for upper in pm::FockSector::new(m, n + 1).basis() {
                        let inputs =
                            || format!("M={m} m={:?} n={:?} v={v} beta={b}", upper.occupations(), lower.occupations());
                        run.eq(
                            inputs,
                            pm::skew_phase_closed(upper, lower, v, &b),
                            pm::skew_element_phase(upper, lower, v, &b),
                        );
                        let support = raw.as_ref().map(|r| !r.amplitude(upper).is_zero()).map_err(Clone::clone);
                        run.eq(inputs, admissible(upper, lower), support);
                        let dual = (|| -> Result<Rational> {
                            let mu_v = complement(&upper.to_partition(), n as usize + 1, m as u32 - 1)?;
                            let lam_v = complement(&lower.to_partition(), n as usize, m as u32 - 1)?;
                            gr::skew_single(&mu_v, &lam_v, &z, &b)
                        })();
                        run.eq(inputs, dual, pm::skew_element_phase_c(lower, upper, v, &b));
                    }
                }
            }
        }
    }
}

fn pm_scalar(s: Scale, run: &mut Run) {
    for _ in 0..s.pick(2, 5) {
        for n in 1..=2 {
            let Some((us, vs, b)) = run.point(|g| {
                let (us, b) = pm_point(g, n)?;
                let vs = g.rationals(n);
                let z = vs.iter().map(|v| pm::phase_z(v, &b)).collect::<Result<Vec<_>>>()?;
                distinct(&z)?;
                let all: Vec<Rational> = us.iter().chain(&vs).map(|x| x * x).collect();
                distinct(&all)?;
                Ok((us, vs, b))
            }) else {
                return;
            };
            for m in 1..=4 {
                run.eq(
                    || format!("M={m} u={} v={} beta={b}", show(&us), show(&vs)),
                    pm::scalar_product(&us, &vs, m, &b),
                    pm::scalar_product_bruteforce(&us, &vs, m, &b),
                );
            }
        }
    }
}

fn pm_sum(s: Scale, run: &mut Run) {
    for _ in 0..s.pick(2, 5) {
        for n in 1..=2 {
            let Some((vs, b)) = run.point(|g| {
                let (vs, b) = pm_point(g, n)?;
                if b.is_zero() {
                    return Err(Error::Parameter("beta = 0".into()));
                }
                Ok((vs, b))
            }) else {
                return;
            };
            for m in 1..=4 {
                run.eq(
                    || format!("M={m} v={} beta={b}", show(&vs)),
                    pm::summation_wavefunctions(&vs, m, &b),
                    pm::summation_wavefunctions_bruteforce(&vs, m, &b),
                );
            }
        }
    }
}

fn pm_ham(s: Scale, run: &mut Run) {
    let mut betas = vec![int(-1), int(0), rat(1, 2)];
    for _ in 0..s.pick(1, 3) {
        betas.push(run.gen.rational());
    }
    for b in betas {
        for m in 2..=3 {
            for n in 0..=2 {
                run.eq(
                    || format!("M={m} N={n} beta={b}"),
                    pm::hamiltonian_phase_local(m, n, &b),
                    pm::hamiltonian_phase_from_transfer(m, n, &b),
                );
            }
        }
    }
}

fn pm_commute(s: Scale, run: &mut Run) {
    for _ in 0..s.pick(1, 3) {
        let Some((vs, b)) = run.point(|g| pm_point(g, 2)) else { return };
        for m in 1..=3 {
            for n in 0..=2 {
                let commutes = (|| -> Result<bool> {
                    let t = pm::transfer_matrix_phase(m, n, &b)?;
                    Ok(t.eval(&vs[0])?.commutator(&t.eval(&vs[1])?)?.is_zero())
                })();
                run.holds(|| format!("tau M={m} N={n} u,v={} beta={b}", show(&vs)), commutes);
                for c in pm::FockSector::new(m, n).basis() {
                    let e = pm::FockVector::basis(c.clone());
                    let ab = pm::apply_B_phase(&vs[1], &b, &e).and_then(|x| pm::apply_B_phase(&vs[0], &b, &x));
                    let ba = pm::apply_B_phase(&vs[0], &b, &e).and_then(|x| pm::apply_B_phase(&vs[1], &b, &x));
                    run.holds(
                        || format!("B M={m} n={:?} u,v={} beta={b}", c.occupations(), show(&vs)),
                        Ok(matches!((ab, ba), (Ok(x), Ok(y)) if x == y)),
                    );
                }
            }
        }
    }
}

fn pm_bethe(_: Scale, run: &mut Run) {
    for m in [2, 3, 4] {
        for b in [int(0), int(-1), rat(1, 2)] {
            run.below(
                || format!("M={m} beta={b}"),
                pm::bethe_verify_n1(m, &b).map(|r| r.max_residual),
                1e-10,
            );
        }
    }
}

// ---- melting crystal ----

fn mc_zbox(s: Scale, run: &mut Run) {
    let qs = s.pick(vec![rat(1, 2)], vec![rat(1, 2), rat(1, 3), rat(2, 5)]);
    for n in 1..=3 {
        for l in 0..=3 {
            for q in &qs {
                for b in [int(0), int(-1), int(1), rat(1, 2)] {
                    let p = mc::CrystalParams::new(n, l, q.clone(), b.clone()).expect("valid parameters");
                    run.eq(
                        || format!("N={n} L={l} q={q} beta={b}"),
                        mc::z_box_bruteforce(&p),
                        mc::z_box_det(&p),
                    );
                }
            }
        }
    }
}

fn mc_beta0(s: Scale, run: &mut Run) {
    let order = s.pick(10, 20);
    for n in 1..=3 {
        for l in 0..=3 {
            run.eq(
                || format!("series N={n} L={l} order={order}"),
                mc::z_box_beta0_series(n, n, l, order).map(|x| x.coefficients()),
                mc::z_box_det_series(n, l, &int(0), order).map(|x| x.coefficients()),
            );
            let q = run.gen.unit_interval();
            let p = mc::CrystalParams::new(n, l, q.clone(), int(0)).expect("valid parameters");
            run.eq(|| format!("N={n} L={l} q={q}"), mc::z_box_beta0(n, n, l, &q), mc::z_box_bruteforce(&p));
        }
    }
    for (n1, n2, l) in [(2, 2, 2), (2, 3, 2), (3, 3, 1)] {
        let count = enumerate_boxed(n1, n2, l).count() as u64;
        run.eq(
            || format!("q->1 count N1={n1} N2={n2} L={l}"),
            Ok(count),
            Ok(u64::try_from(mc::z_box_beta0_count(n1, n2, l)).unwrap_or(u64::MAX)),
        );
    }
}

fn counts_as_rationals(c: Vec<u64>) -> Vec<Rational> {
    c.into_iter().map(|x| Rational::from_integer(x.into())).collect()
}

fn mc_macmahon(s: Scale, run: &mut Run) {
    let pp = counts_as_rationals(mc::plane_partition_counts(5));
    run.eq(|| "beta=0 order=5".into(), Ok(pp), Ok(mc::z_infinite(&int(0), 5).coefficients()));
    let euler_order = s.pick(7, 10);
    let p = counts_as_rationals(mc::partition_counts(euler_order));
    run.eq(
        || format!("beta=-1 order={euler_order}"),
        Ok(p),
        Ok(mc::z_infinite(&int(-1), euler_order).coefficients()),
    );
    let order = s.pick(4, 5);
    for b in [int(0), int(-1), rat(1, 2)] {
        run.eq(
            || format!("boxed limit beta={b} order={order}"),
            Ok(mc::z_infinite(&b, order).coefficients()),
            mc::z_box_series_limit(&b, order).map(|x| x.coefficients()),
        );
    }
    for b in [int(0), rat(1, 2), int(1)] {
        let c = mc::z_infinite(&b, 15).coefficients();
        run.holds(|| format!("positivity beta={b} order=15"), Ok(c.iter().all(|x| *x > Rational::zero())));
    }
}

fn mc_entropy(_: Scale, run: &mut Run) {
    let p = mc::EntropyParams::new(1.0, 1.0).expect("valid");
    let s: Result<Vec<f64>> = [-1.0, 0.0, 1.0].iter().map(|&b| mc::entropy(&p, b)).collect();
    run.holds(
        || "monotone in beta over -1, 0, 1 at mu=1 T=1".into(),
        s.map(|s| s[0] < s[1] && s[1] < s[2]),
    );
    for b in [-1.0, 0.0, 1.0] {
        let gap = (|| -> Result<f64> {
            let e = mc::internal_energy_fd(&p, b, 1e-4)?;
            Ok(mc::entropy(&p, b)? - (mc::log_z(&p, b)? + e / p.t))
        })();
        run.below(|| format!("S - (log Z + E/T) at mu=1 T=1 beta={b}"), gap, 1e-6);
    }
    let cold = mc::EntropyParams::new(1.0, 0.05).expect("valid");
    run.below(|| "S at mu=1 T=0.05 beta=0".into(), mc::entropy(&cold, 0.0), 1e-6);
}

// ---- six-vertex family ----

fn sv6_params(g: &mut PointGen) -> Result<sv::SixVertexParams> {
    let t = g.rational();
    let a: Vec<Rational> = g.rationals(4);
    sv::SixVertexParams::complete(t, a[0].clone(), a[1].clone(), a[2].clone(), a[3].clone())
}

fn uv_pair(g: &mut PointGen) -> Result<(Rational, Rational)> {
    let (u, v) = (g.rational(), g.rational());
    if &u * &u == &v * &v {
        return Err(Error::Pole("u^2 = v^2".into()));
    }
    Ok((u, v))
}

fn sv6_rll(s: Scale, run: &mut Run) {
    let sets = s.pick(2, 5);
    let points = s.pick(3, 10);
    for _ in 0..sets {
        let Some(p) = run.point(sv6_params) else { return };
        let mut alpha: Vec<Rational> = (1..=6).map(|k| p.alpha(k).clone()).collect();
        alpha[5] += Rational::one();
        let bad = sv::SixVertexParams::new_unchecked(alpha.try_into().expect("six"), p.t().clone());
        let text = serde_json::to_string(&p).unwrap_or_default();
        for _ in 0..points {
            let Some((u, v)) = run.point(uv_pair) else { return };
            run.holds(|| format!("u={u} v={v} params={text}"), sv::check_rll_six(&u, &v, &p));
            run.fails(|| format!("perturbed a6: u={u} v={v} params={text}"), sv::check_rll_six(&u, &v, &bad));
        }
    }
}

fn sv6_reduction(s: Scale, run: &mut Run) {
    for _ in 0..s.pick(2, 5) {
        let Some(((u, v), b)) = run.point(|g| Ok((uv_pair(g)?, nonzero_beta(g)?))) else { return };
        let p = sv::SixVertexParams::five_vertex(&b);
        run.eq(
            || format!("L five-vertex point u={u} beta={b}"),
            fv::l_matrix(&u, &b),
            p.as_ref().map_err(Clone::clone).and_then(|p| sv::l_six(&u, p)),
        );
        run.eq(|| format!("R at t=0 u={u} v={v}"), fv::r_matrix(&u, &v), sv::r_six(&u, &v, &int(0)));
        let t = run.gen.rational();
        let scaled = sv::r_six(&u, &int(1), &t).map(|r| r.map(|x| x * (&u - u.recip())));
        let lr = sv::SixVertexParams::r_matrix_point(t.clone()).and_then(|p| sv::l_six(&u, &p));
        run.eq(|| format!("R-matrix point u={u} t={t}"), scaled, lr);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_resolve() {
        assert_eq!(resolve("fv.ybe").unwrap(), vec![("fv", "ybe")]);
        assert_eq!(resolve("sv6").unwrap().len(), 2);
        assert!(matches!(resolve("nope"), Err(Error::Usage(_))));
        assert!(matches!(resolve("fv.nope"), Err(Error::Usage(_))));
        assert!(matches!("medium".parse::<Scale>(), Err(Error::Usage(_))));
    }

    #[test]
    fn part_generators_are_independent_of_context() {
        let a = PointGen::for_part(7, "fv.ybe").rationals(5);
        let b = PointGen::for_part(7, "fv.ybe").rationals(5);
        let c = PointGen::for_part(8, "fv.ybe").rationals(5);
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn groth_small_passes_and_is_reproducible() {
        let r = run_suite("groth", Scale::Small, 1).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert!(r.cases > 0);
        let again = run_suite("groth", Scale::Small, 1).unwrap();
        assert_eq!(serde_json::to_string(&r).unwrap(), serde_json::to_string(&again).unwrap());
    }

    #[test]
    fn failures_are_reported() {
        let mut run = Run::new("x.y", 0);
        run.eq(|| "in".into(), Ok(int(1)), Ok(int(2)));
        run.holds(|| "in".into(), Err(Error::Pole("p".into())));
        assert_eq!(run.cases, 2);
        assert_eq!(run.failures[0].expected, "1/1");
        assert_eq!(run.failures[0].got, "2/1");
        assert_eq!(run.failures[1].got, "error: pole: p");
    }
}
