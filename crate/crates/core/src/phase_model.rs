//! The non-Hermitian phase model: bosons on sites `0..M-1`.
//!
//! The local operator on `W_a ⊗ F_j` has weights, for auxiliary transitions
//! `a_in -> a_out` on a site holding `n` bosons,
//!
//! * `0 -> 0`: `1/v - βv` if `n = 0`, else `1/v` (site unchanged)
//! * `1 -> 0`: `1`, the site gains a boson
//! * `0 -> 1`: `1`, the site loses a boson (needs `n >= 1`)
//! * `1 -> 1`: `v` (site unchanged)
//!
//! The monodromy `L_{M-1}(v) ⋯ L_0(v)` meets site 0 first, and
//! `B(v) = ⟨0|_a T(v) |1⟩_a`. On two sites this gives
//! `B(v)|0,0⟩ = (1/v - βv)|1,0⟩ + v|0,1⟩`.
//!
//! Particle number is conserved by everything except `B` and `C`, so a
//! sector with `N` bosons never needs occupations above `N`: no truncation
//! is involved anywhere outside [`check_rll_phase`].

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{binomial, pow, rational_det, upow, ComplexF, LaurentPoly, Rational, Ring, RingMatrix};
use crate::five_vertex::r_matrix;
use crate::grothendieck::{ensure_distinct, groth_det, skew_single, EvalPoint};
use crate::partitions::{admissible, complement, BosonConfig};

/// All `N`-boson configurations on `M` sites in ascending lexicographic order.
#[derive(Clone, Debug, PartialEq)]
pub struct FockSector {
    sites: usize,
    particles: u32,
    basis: Vec<BosonConfig>,
    index: BTreeMap<BosonConfig, usize>,
}

impl FockSector {
    pub fn new(sites: usize, particles: u32) -> Self {
        fn rec(left: u32, slots: usize, prefix: &mut Vec<u32>, out: &mut Vec<BosonConfig>) {
            if slots == 1 {
                prefix.push(left);
                out.push(BosonConfig::new(prefix.clone()));
                prefix.pop();
                return;
            }
            for k in 0..=left {
                prefix.push(k);
                rec(left - k, slots - 1, prefix, out);
                prefix.pop();
            }
        }
        let mut basis = Vec::new();
        if sites > 0 {
            rec(particles, sites, &mut Vec::with_capacity(sites), &mut basis);
        } else if particles == 0 {
            basis.push(BosonConfig::new(Vec::new()));
        }
        let index = basis.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
        Self { sites, particles, basis, index }
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn particles(&self) -> u32 {
        self.particles
    }

    pub fn basis(&self) -> &[BosonConfig] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, c: &BosonConfig) -> Option<usize> {
        self.index.get(c).copied()
    }
}

/// Finite linear combination of occupation states.
#[derive(Clone, PartialEq, Debug)]
pub struct FockVector {
    sites: usize,
    amps: BTreeMap<BosonConfig, Rational>,
}

impl FockVector {
    pub fn zero(sites: usize) -> Self {
        Self { sites, amps: BTreeMap::new() }
    }

    pub fn vacuum(sites: usize) -> Self {
        Self::basis(BosonConfig::new(vec![0; sites]))
    }

    pub fn basis(c: BosonConfig) -> Self {
        let sites = c.sites();
        let mut amps = BTreeMap::new();
        amps.insert(c, Rational::one());
        Self { sites, amps }
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn amplitude(&self, c: &BosonConfig) -> Rational {
        self.amps.get(c).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BosonConfig, &Rational)> {
        self.amps.iter()
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn add_term(&mut self, c: BosonConfig, x: Rational) {
        if x.is_zero() {
            return;
        }
        let slot = self.amps.entry(c.clone()).or_insert_with(Rational::zero);
        *slot += x;
        if slot.is_zero() {
            self.amps.remove(&c);
        }
    }
}

/// Local weights over a ring: `1/v - βv`, `1/v`, `v` and the hop weight `1`.
#[derive(Clone, Debug)]
struct PhaseWeights<T> {
    empty: T,
    occupied: T,
    pass: T,
    hop: T,
}

impl PhaseWeights<Rational> {
    fn at(v: &Rational, beta: &Rational) -> Result<Self> {
        if v.is_zero() {
            return Err(Error::Pole("spectral parameter v = 0".into()));
        }
        let inv = v.recip();
        Ok(Self { empty: &inv - beta * v, occupied: inv, pass: v.clone(), hop: Rational::one() })
    }
}

impl PhaseWeights<LaurentPoly> {
    fn laurent(beta: &Rational) -> Self {
        Self {
            empty: LaurentPoly::from_terms([(-1, Rational::one()), (1, -beta.clone())]),
            occupied: LaurentPoly::monomial(Rational::one(), -1),
            pass: LaurentPoly::var(),
            hop: LaurentPoly::one(),
        }
    }
}

impl PhaseWeights<ComplexF> {
    fn complex(v: ComplexF, beta: f64) -> Self {
        let inv = v.inv();
        Self { empty: inv - v * beta, occupied: inv, pass: v, hop: ComplexF::one() }
    }
}

/// Sum over auxiliary paths through sites `0..M-1` for one input configuration.
fn propagate<T: Ring>(
    occ: &[u32],
    a_in: usize,
    a_out: usize,
    w: &PhaseWeights<T>,
) -> Vec<(BosonConfig, T)> {
    let mut layer: BTreeMap<(usize, Vec<u32>), T> = BTreeMap::new();
    layer.insert((a_in, Vec::with_capacity(occ.len())), T::one());
    for &n in occ {
        let mut next: BTreeMap<(usize, Vec<u32>), T> = BTreeMap::new();
        let mut push = |key: (usize, Vec<u32>), x: T| match next.remove(&key) {
            Some(prev) => {
                let s = prev + x;
                if !s.is_zero() {
                    next.insert(key, s);
                }
            }
            None => {
                next.insert(key, x);
            }
        };
        for ((a, out), amp) in layer {
            let with = |k: u32| {
                let mut o = out.clone();
                o.push(k);
                o
            };
            if a == 0 {
                let stay = if n == 0 { &w.empty } else { &w.occupied };
                push((0, with(n)), amp.clone() * stay.clone());
                if n >= 1 {
                    push((1, with(n - 1)), amp * w.hop.clone());
                }
            } else {
                push((1, with(n)), amp.clone() * w.pass.clone());
                push((0, with(n + 1)), amp * w.hop.clone());
            }
        }
        layer = next;
    }
    layer
        .into_iter()
        .filter(|((a, _), _)| *a == a_out)
        .map(|((_, out), x)| (BosonConfig::new(out), x))
        .collect()
}

fn apply_entry(a_in: usize, a_out: usize, v: &Rational, beta: &Rational, state: &FockVector) -> Result<FockVector> {
    let w = PhaseWeights::at(v, beta)?;
    let mut out = FockVector::zero(state.sites());
    for (c, amp) in state.iter() {
        for (o, x) in propagate(c.occupations(), a_in, a_out, &w) {
            out.add_term(o, amp * x);
        }
    }
    Ok(out)
}

/// `B(v)` applied to a state; adds one boson.
#[allow(non_snake_case)]
pub fn apply_B_phase(v: &Rational, beta: &Rational, state: &FockVector) -> Result<FockVector> {
    apply_entry(1, 0, v, beta, state)
}

/// `C(v)` applied to a state; removes one boson.
#[allow(non_snake_case)]
pub fn apply_C_phase(v: &Rational, beta: &Rational, state: &FockVector) -> Result<FockVector> {
    apply_entry(0, 1, v, beta, state)
}

/// `z = 1/(v^{-2} - β)`.
pub fn phase_z(v: &Rational, beta: &Rational) -> Result<Rational> {
    if v.is_zero() {
        return Err(Error::Pole("spectral parameter v = 0".into()));
    }
    let d = (v * v).recip() - beta;
    if d.is_zero() {
        return Err(Error::Parameter(format!("v^-2 = beta at v = {v}")));
    }
    Ok(d.recip())
}

/// `1/v - βv`, required to be nonzero.
fn phase_factor(v: &Rational, beta: &Rational) -> Result<Rational> {
    phase_z(v, beta)?;
    Ok(v.recip() - beta * v)
}

fn induced_z(vs: &[Rational], beta: &Rational) -> Result<Vec<Rational>> {
    let z = vs.iter().map(|v| phase_z(v, beta)).collect::<Result<Vec<_>>>()?;
    ensure_distinct(&z)?;
    Ok(z)
}

/// `(1/v - βv)^{1-M} ⟨m|B(v)|n⟩`.
pub fn skew_element_phase(m: &BosonConfig, n: &BosonConfig, v: &Rational, beta: &Rational) -> Result<Rational> {
    check_pair(m, n)?;
    let out = apply_B_phase(v, beta, &FockVector::basis(n.clone()))?;
    Ok(pow(&phase_factor(v, beta)?, 1 - m.sites() as i64)? * out.amplitude(m))
}

/// `(1/v - βv)^{1-M} ⟨n|C(v)|m⟩`.
pub fn skew_element_phase_c(n: &BosonConfig, m: &BosonConfig, v: &Rational, beta: &Rational) -> Result<Rational> {
    check_pair(m, n)?;
    let out = apply_C_phase(v, beta, &FockVector::basis(m.clone()))?;
    Ok(pow(&phase_factor(v, beta)?, 1 - m.sites() as i64)? * out.amplitude(n))
}

fn check_pair(m: &BosonConfig, n: &BosonConfig) -> Result<()> {
    // `admissible` validates site counts and particle numbers.
    admissible(m, n).map(|_| ())
}

/// `|Ψ({v})⟩ = ∏ B(v_j) |Ω⟩` on `m` sites.
pub fn state_vector_phase(m: usize, vs: &[Rational], beta: &Rational) -> Result<FockVector> {
    let mut s = FockVector::vacuum(m);
    for v in vs {
        s = apply_B_phase(v, beta, &s)?;
    }
    Ok(s)
}

/// `⟨n|Ψ({v})⟩` on the lattice.
pub fn wavefunction_phase(n: &BosonConfig, vs: &[Rational], beta: &Rational) -> Result<Rational> {
    check_count(n, vs)?;
    induced_z(vs, beta)?;
    Ok(state_vector_phase(n.sites(), vs, beta)?.amplitude(n))
}

/// `⟨Ψ({v})|n⟩ = ⟨Ω| ∏ C(v_j) |n⟩` on the lattice.
pub fn dual_wavefunction_phase(n: &BosonConfig, vs: &[Rational], beta: &Rational) -> Result<Rational> {
    check_count(n, vs)?;
    induced_z(vs, beta)?;
    let mut s = FockVector::basis(n.clone());
    for v in vs.iter().rev() {
        s = apply_C_phase(v, beta, &s)?;
    }
    Ok(s.amplitude(&BosonConfig::new(vec![0; n.sites()])))
}

fn check_count(n: &BosonConfig, vs: &[Rational]) -> Result<()> {
    if n.particles() as usize != vs.len() {
        return Err(Error::Dimension(format!(
            "{} bosons but {} spectral parameters",
            n.particles(),
            vs.len()
        )));
    }
    if n.sites() == 0 {
        return Err(Error::Dimension("no sites".into()));
    }
    Ok(())
}

fn closed_prefactor(m: usize, vs: &[Rational], beta: &Rational) -> Result<Rational> {
    let mut acc = Rational::one();
    for v in vs {
        acc *= upow(&phase_factor(v, beta)?, m as u32 - 1);
    }
    Ok(acc)
}

/// `∏ (1/v_j - βv_j)^{M-1} G_λ(z)`.
pub fn wavefunction_phase_closed(n: &BosonConfig, vs: &[Rational], beta: &Rational) -> Result<Rational> {
    check_count(n, vs)?;
    let z = induced_z(vs, beta)?;
    let g = groth_det(&n.to_partition(), &EvalPoint::new(z, beta.clone())?)?;
    Ok(closed_prefactor(n.sites(), vs, beta)? * g)
}

/// `∏ (1/v_j - βv_j)^{M-1} G_{λ∨}(z)` with `λ∨_j = M - 1 - λ_{N+1-j}`.
pub fn dual_wavefunction_phase_closed(n: &BosonConfig, vs: &[Rational], beta: &Rational) -> Result<Rational> {
    check_count(n, vs)?;
    let z = induced_z(vs, beta)?;
    let dual = complement(&n.to_partition(), vs.len(), n.sites() as u32 - 1)?;
    let g = groth_det(&dual, &EvalPoint::new(z, beta.clone())?)?;
    Ok(closed_prefactor(n.sites(), vs, beta)? * g)
}

/// `G_{μ/λ}(z)` for the diagrams of `m` and `n`.
pub fn skew_phase_closed(m: &BosonConfig, n: &BosonConfig, v: &Rational, beta: &Rational) -> Result<Rational> {
    check_pair(m, n)?;
    skew_single(&m.to_partition(), &n.to_partition(), &phase_z(v, beta)?, beta)
}

fn squares_distinct(xs: &[Rational]) -> Result<()> {
    let sq: Vec<Rational> = xs.iter().map(|x| x * x).collect();
    ensure_distinct(&sq)
}

/// Determinant formula for `⟨Ψ({u})|Ψ({v})⟩` on `m` sites.
pub fn scalar_product(us: &[Rational], vs: &[Rational], m: usize, beta: &Rational) -> Result<Rational> {
    let n = us.len();
    if vs.len() != n {
        return Err(Error::Dimension("u and v lists differ in length".into()));
    }
    induced_z(us, beta)?;
    induced_z(vs, beta)?;
    squares_distinct(us)?;
    squares_distinct(vs)?;
    for (j, v) in vs.iter().enumerate() {
        for (k, u) in us.iter().enumerate() {
            if v * v == u * u {
                return Err(Error::Pole(format!("v_{} / u_{} = u_{} / v_{}", j + 1, k + 1, k + 1, j + 1)));
            }
        }
    }
    let e = (m + 2 * n.saturating_sub(1)) as u32;
    let mat = RingMatrix::try_from_fn(n, n, |j, k| -> Result<Rational> {
        let (v, u) = (&vs[j], &us[k]);
        let num = upow(&phase_factor(u, beta)?, m as u32) * upow(v, e)
            - upow(&phase_factor(v, beta)?, m as u32) * upow(u, e);
        Ok(num / (v / u - u / v))
    })?;
    let mut den = Rational::one();
    for j in 0..n {
        for k in j + 1..n {
            den *= (&vs[j] * &vs[j] - &vs[k] * &vs[k]) * (&us[k] * &us[k] - &us[j] * &us[j]);
        }
    }
    Ok(rational_det(&mat)? / den)
}

/// `Σ_n ⟨Ψ({u})|n⟩⟨n|Ψ({v})⟩` with both factors computed on the lattice.
pub fn scalar_product_bruteforce(us: &[Rational], vs: &[Rational], m: usize, beta: &Rational) -> Result<Rational> {
    if vs.len() != us.len() {
        return Err(Error::Dimension("u and v lists differ in length".into()));
    }
    let ket = state_vector_phase(m, vs, beta)?;
    let mut acc = Rational::zero();
    for c in FockSector::new(m, us.len() as u32).basis() {
        let a = ket.amplitude(c);
        if !a.is_zero() {
            acc += dual_wavefunction_phase(c, us, beta)? * a;
        }
    }
    Ok(acc)
}

/// Determinant formula for `Σ_n (-β)^{Σ j n_j} ⟨n|Ψ({v})⟩`; needs `β ≠ 0`.
pub fn summation_wavefunctions(vs: &[Rational], m: usize, beta: &Rational) -> Result<Rational> {
    if beta.is_zero() {
        return Err(Error::Parameter("summation formula needs a nonzero beta".into()));
    }
    let n = vs.len();
    induced_z(vs, beta)?;
    squares_distinct(vs)?;
    let big = (m + n - 1) as i64;
    let minus_beta = -beta.clone();
    let mat = RingMatrix::try_from_fn(n, n, |j0, k| -> Result<Rational> {
        let j = j0 as i64 + 1;
        let base = Rational::one() - beta * &vs[k] * &vs[k];
        let mut acc = Rational::zero();
        if j < n as i64 {
            for mm in 0..j {
                let term = binomial(big, mm) * pow(&base, 1 - mm + j - n as i64)?;
                acc += if mm % 2 == 0 { term } else { -term };
            }
            acc *= pow(&minus_beta, j - n as i64)?;
        } else {
            for mm in (n as i64 - 1).max(1)..=big {
                let term = binomial(big, mm) * pow(&base, 1 - mm)?;
                acc -= if mm % 2 == 0 { term } else { -term };
            }
        }
        Ok(acc)
    })?;
    let mut pre = Rational::one();
    for v in vs {
        pre *= upow(v, n as u32 - 1) * upow(&phase_factor(v, beta)?, (m + n - 2) as u32);
    }
    for j in 0..n {
        for k in j + 1..n {
            pre /= &vs[k] * &vs[k] - &vs[j] * &vs[j];
        }
    }
    Ok(pre * rational_det(&mat)?)
}

/// `Σ_n (-β)^{Σ j n_j} ⟨n|Ψ({v})⟩` from the lattice state.
pub fn summation_wavefunctions_bruteforce(vs: &[Rational], m: usize, beta: &Rational) -> Result<Rational> {
    let ket = state_vector_phase(m, vs, beta)?;
    let minus_beta = -beta.clone();
    let mut acc = Rational::zero();
    for (c, a) in ket.iter() {
        let w: u32 = c.occupations().iter().enumerate().map(|(j, &k)| j as u32 * k).sum();
        acc += upow(&minus_beta, w) * a;
    }
    Ok(acc)
}

/// `τ(v)` on the `n`-boson sector, entries Laurent in `v`.
pub fn transfer_matrix_phase(m: usize, n: u32, beta: &Rational) -> Result<RingMatrix<LaurentPoly>> {
    let sector = FockSector::new(m, n);
    let w = PhaseWeights::laurent(beta);
    let mut t: RingMatrix<LaurentPoly> = RingMatrix::zeros(sector.dim(), sector.dim());
    for (col, c) in sector.basis().iter().enumerate() {
        for a in 0..2 {
            for (o, x) in propagate(c.occupations(), a, a, &w) {
                let row = sector
                    .index_of(&o)
                    .ok_or_else(|| Error::Evaluation("transfer matrix left the sector".into()))?;
                let s = t.get(row, col).clone() + x;
                t.set(row, col, s);
            }
        }
    }
    Ok(t)
}

/// `Σ_j φ†_{j+1} φ_j - β Σ_j π_j` on the `n`-boson sector (periodic).
pub fn hamiltonian_phase_local(m: usize, n: u32, beta: &Rational) -> Result<RingMatrix<Rational>> {
    if m == 0 {
        return Err(Error::Parameter("need at least one site".into()));
    }
    let sector = FockSector::new(m, n);
    let mut h: RingMatrix<Rational> = RingMatrix::zeros(sector.dim(), sector.dim());
    for (col, c) in sector.basis().iter().enumerate() {
        let occ = c.occupations();
        let empty = occ.iter().filter(|&&k| k == 0).count() as i64;
        let d = h.get(col, col) - beta * Rational::from_integer(empty.into());
        h.set(col, col, d);
        for j in 0..m {
            if occ[j] == 0 {
                continue;
            }
            let mut o = occ.to_vec();
            o[j] -= 1;
            o[(j + 1) % m] += 1;
            let row = sector.index_of(&BosonConfig::new(o)).expect("hop stays in sector");
            let x = h.get(row, col) + Rational::one();
            h.set(row, col, x);
        }
    }
    Ok(h)
}

/// Coefficient of `v²` in `v^M τ(v)`. On a single site the all-pass term
/// `v^{2M}` lands on the same power, so at least two sites are required.
pub fn hamiltonian_phase_from_transfer(m: usize, n: u32, beta: &Rational) -> Result<RingMatrix<Rational>> {
    if m < 2 {
        return Err(Error::Parameter("the Hamiltonian needs at least two sites".into()));
    }
    let t = transfer_matrix_phase(m, n, beta)?.shift(m as i32);
    Ok(t.map(|p| p.coefficient(2)))
}

/// The phase-model Hamiltonian, built both ways and checked.
pub fn hamiltonian_phase(m: usize, n: u32, beta: &Rational) -> Result<RingMatrix<Rational>> {
    let direct = hamiltonian_phase_local(m, n, beta)?;
    let derived = hamiltonian_phase_from_transfer(m, n, beta)?;
    if direct != derived {
        return Err(Error::Evaluation(format!(
            "local and transfer-matrix Hamiltonians differ on M={m}, N={n}"
        )));
    }
    Ok(direct)
}

/// Phase-model local operator on `W_a ⊗ span{|0⟩..|cap⟩}`, indexed `a (cap+1) + n`.
pub fn l_phase(v: &Rational, beta: &Rational, cap: u32) -> Result<RingMatrix<Rational>> {
    let w = PhaseWeights::at(v, beta)?;
    let d = cap as usize + 1;
    let mut l: RingMatrix<Rational> = RingMatrix::zeros(2 * d, 2 * d);
    for n in 0..d {
        l.set(n, n, if n == 0 { w.empty.clone() } else { w.occupied.clone() });
        l.set(d + n, d + n, w.pass.clone());
        if n + 1 < d {
            l.set(n + 1, d + n, w.hop.clone());
        }
        if n >= 1 {
            l.set(d + n - 1, n, w.hop.clone());
        }
    }
    Ok(l)
}

/// RLL relation with the five-vertex `R`, compared on all inputs with
/// fewer than `cap` bosons, where the truncation cannot interfere.
pub fn check_rll_phase(u: &Rational, v: &Rational, beta: &Rational, cap: u32) -> Result<bool> {
    if cap == 0 {
        return Err(Error::Parameter("cap must be at least 1".into()));
    }
    let r = r_matrix(u, v)?;
    let (lu, lv) = (l_phase(u, beta, cap)?, l_phase(v, beta, cap)?);
    let d = cap as usize + 1;
    let dims = [2, 2, d];
    let rab = r.on_factors(&dims, 0, 1)?;
    let laj = lu.on_factors(&dims, 0, 2)?;
    let lbj = lv.on_factors(&dims, 1, 2)?;
    let lhs = rab.mul(&laj)?.mul(&lbj)?;
    let rhs = lbj.mul(&laj)?.mul(&rab)?;
    for col in 0..lhs.cols() {
        if col % d == d - 1 {
            continue;
        }
        for row in 0..lhs.rows() {
            if lhs.get(row, col) != rhs.get(row, col) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// One on-shell root of the single-boson Bethe equation.
#[derive(Clone, Debug, Serialize)]
pub struct BetheRoot {
    pub k: usize,
    pub v2: [f64; 2],
    pub energy: [f64; 2],
    pub bae_residual: f64,
    pub eigen_residual: f64,
    pub transfer_residual: f64,
}

/// On-shell check of all single-boson Bethe states on `M` sites.
#[derive(Clone, Debug, Serialize)]
pub struct BetheReport {
    pub sites: usize,
    pub beta: String,
    pub roots: Vec<BetheRoot>,
    /// Root-of-unity indices `k` with `ω_k = -β`, where `v²` is infinite.
    pub skipped: Vec<usize>,
    pub max_residual: f64,
}

/// Real test points for the transfer-matrix eigenvalue check.
const TRANSFER_POINTS: [f64; 3] = [0.37, 0.81, 1.93];

/// For `N = 1` the Bethe equation is `(v^{-2} - β)^M = 1`. Every root
/// `v² = 1/(β + ω_k)` is built, `B(v)|Ω⟩` is evaluated in complex floats and
/// checked against `H ψ = E ψ`, `E = -βM + v^{-2}`, and the eigenvalue of
/// `τ(u)`. Residuals are measured after scaling `ψ` to unit max-norm.
pub fn bethe_verify_n1(m: usize, beta: &Rational) -> Result<BetheReport> {
    if m < 2 {
        return Err(Error::Parameter("need at least two sites".into()));
    }
    let b = beta.to_f64().ok_or_else(|| Error::Parameter("beta out of f64 range".into()))?;
    let sector = FockSector::new(m, 1);
    let to_c = |mat: &RingMatrix<Rational>| -> Vec<Vec<ComplexF>> {
        (0..mat.rows())
            .map(|i| (0..mat.cols()).map(|j| ComplexF::new(mat.get(i, j).to_f64().unwrap_or(f64::NAN), 0.0)).collect())
            .collect()
    };
    let h = to_c(&hamiltonian_phase(m, 1, beta)?);
    let tau = transfer_matrix_phase(m, 1, beta)?;
    let mut report = BetheReport {
        sites: m,
        beta: crate::exact::format_rational(beta),
        roots: Vec::new(),
        skipped: Vec::new(),
        max_residual: 0.0,
    };
    for k in 0..m {
        let omega = ComplexF::from_polar(1.0, 2.0 * PI * k as f64 / m as f64);
        let denom = omega + b;
        if denom.norm() < 1e-12 {
            report.skipped.push(k);
            continue;
        }
        let v2 = denom.inv();
        let v = v2.sqrt();
        let w = PhaseWeights::complex(v, b);
        let mut psi = vec![ComplexF::zero(); sector.dim()];
        for (c, x) in propagate(&vec![0; m], 1, 0, &w) {
            psi[sector.index_of(&c).expect("one boson")] += x;
        }
        let scale = psi.iter().map(|x| x.norm()).fold(0.0, f64::max);
        psi.iter_mut().for_each(|x| *x /= scale);

        let energy = ComplexF::new(-b * m as f64, 0.0) + v2.inv();
        let eigen_residual = max_residual(&h, &psi, energy);
        let bae_residual = ((v2.inv() - b).powu(m as u32) - 1.0).norm();

        let mut transfer_residual: f64 = 0.0;
        for &u in &TRANSFER_POINTS {
            let tu: Vec<Vec<ComplexF>> = (0..tau.rows())
                .map(|i| (0..tau.cols()).map(|j| ComplexF::new(tau.get(i, j).eval_f64(u), 0.0)).collect())
                .collect();
            let uc = ComplexF::new(u, 0.0);
            let lam = (uc.inv() - uc * b).powu(m as u32) * v2 / (v2 - uc * uc)
                + uc.powu(m as u32) * (uc * uc) / (uc * uc - v2);
            transfer_residual = transfer_residual.max(max_residual(&tu, &psi, lam));
        }
        let worst = eigen_residual.max(bae_residual).max(transfer_residual);
        report.max_residual = report.max_residual.max(worst);
        report.roots.push(BetheRoot {
            k,
            v2: [v2.re, v2.im],
            energy: [energy.re, energy.im],
            bae_residual,
            eigen_residual,
            transfer_residual,
        });
    }
    Ok(report)
}

fn max_residual(a: &[Vec<ComplexF>], x: &[ComplexF], lambda: ComplexF) -> f64 {
    a.iter()
        .zip(x)
        .map(|(row, xi)| {
            let ax: ComplexF = row.iter().zip(x).map(|(aij, xj)| aij * xj).sum();
            (ax - lambda * xi).norm()
        })
        .fold(0.0, f64::max)
}
