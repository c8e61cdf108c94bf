//! The integrable five-vertex model on `M` sites.
//!
//! Conventions used throughout this module:
//!
//! * A [`SpinState`] is a bitmask; bit `j - 1` set means site `j` is occupied.
//! * The local operator acts on `W_a ⊗ V_j` and is indexed by `2a + s`. Its
//!   nonzero weights, written `(a_in, s_in) -> (a_out, s_out)`, are
//!   `(0,0)->(0,0) = u`, `(1,0)->(0,1) = 1` (the auxiliary line drops its
//!   particle on the site), `(0,1)->(1,0) = 1` (it picks one up),
//!   `(1,0)->(1,0) = -u/β - 1/u` and `(1,1)->(1,1) = -u/β`.
//! * The monodromy is `T(u) = L_M(u) ⋯ L_1(u)`, so the auxiliary line meets
//!   site 1 first. `B(u) = ⟨0|_a T(u) |1⟩_a` adds a particle and
//!   `C(u) = ⟨1|_a T(u) |0⟩_a` removes one.
//!
//! Worked example fixing the `B` entry: on two sites,
//! `B(u)|00⟩ = u |site 1⟩ + (-u/β - 1/u) |site 2⟩`, which is
//! `u^{M-1} G_∅` and `u^{M-1} G_{(1)}(z)` with `z = -1/β - 1/u²`.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{pow, upow, LaurentPoly, Rational, Ring, RingMatrix};
use crate::grothendieck::{ensure_distinct, groth_det, skew_single, EvalPoint};
use crate::partitions::{complement, positions_from_partition, FermionConfig, Partition};

/// Largest supported lattice; states are stored in a `u32` mask.
pub const MAX_SITES: usize = 24;

/// Basis vector of `V^{⊗M}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct SpinState(pub u32);

impl SpinState {
    pub fn particles(self) -> u32 {
        self.0.count_ones()
    }

    pub fn occupied(self, site: usize) -> bool {
        self.0 & (1 << (site - 1)) != 0
    }

    pub fn from_config(x: &FermionConfig) -> Self {
        Self(x.to_mask())
    }

    pub fn to_config(self, sites: usize) -> FermionConfig {
        FermionConfig::from_mask(self.0, sites)
    }
}

/// Finite linear combination of [`SpinState`]s with exact coefficients.
#[derive(Clone, PartialEq, Debug)]
pub struct SpinVector {
    sites: usize,
    amps: BTreeMap<u32, Rational>,
}

impl SpinVector {
    pub fn zero(sites: usize) -> Self {
        Self { sites, amps: BTreeMap::new() }
    }

    /// The empty lattice `|Ω⟩`.
    pub fn vacuum(sites: usize) -> Self {
        Self::basis(sites, SpinState(0))
    }

    pub fn basis(sites: usize, s: SpinState) -> Self {
        let mut v = Self::zero(sites);
        v.amps.insert(s.0, Rational::one());
        v
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn amplitude(&self, s: SpinState) -> Rational {
        self.amps.get(&s.0).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (SpinState, &Rational)> {
        self.amps.iter().map(|(&m, a)| (SpinState(m), a))
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn add_term(&mut self, s: SpinState, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.amps.entry(s.0).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.amps.remove(&s.0);
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (s, a) in other.iter() {
            out.add_term(s, -a.clone());
        }
        out
    }
}

/// Vertex weights indexed `[a_in][s_in][a_out][s_out]`.
type VertexTable<T> = [[[[T; 2]; 2]; 2]; 2];

fn table<T: Ring>(u: T, exchange: T, pass_empty: T, pass_full: T) -> VertexTable<T> {
    let z = T::zero;
    let mut t: VertexTable<T> = [
        [[[z(), z()], [z(), z()]], [[z(), z()], [z(), z()]]],
        [[[z(), z()], [z(), z()]], [[z(), z()], [z(), z()]]],
    ];
    t[0][0][0][0] = u;
    t[1][0][0][1] = exchange.clone();
    t[0][1][1][0] = exchange;
    t[1][0][1][0] = pass_empty;
    t[1][1][1][1] = pass_full;
    t
}

/// The five nonzero weights at spectral parameter `u`.
#[derive(Clone, Debug, PartialEq)]
pub struct FiveVertexWeights {
    pub empty: Rational,
    pub exchange: Rational,
    pub pass_empty: Rational,
    pub pass_full: Rational,
}

impl FiveVertexWeights {
    pub fn new(u: &Rational, beta: &Rational) -> Result<Self> {
        check_nonzero(u, "u")?;
        check_nonzero(beta, "beta")?;
        let pass_full = -(u / beta);
        Ok(Self {
            empty: u.clone(),
            exchange: Rational::one(),
            pass_empty: &pass_full - u.recip(),
            pass_full,
        })
    }

    fn table(&self) -> VertexTable<Rational> {
        table(
            self.empty.clone(),
            self.exchange.clone(),
            self.pass_empty.clone(),
            self.pass_full.clone(),
        )
    }
}

/// Same weights as Laurent polynomials in `u`.
fn laurent_table(beta: &Rational) -> Result<VertexTable<LaurentPoly>> {
    check_nonzero(beta, "beta")?;
    let inv = -beta.recip();
    Ok(table(
        LaurentPoly::var(),
        LaurentPoly::one(),
        LaurentPoly::from_terms([(1, inv.clone()), (-1, -Rational::one())]),
        LaurentPoly::monomial(inv, 1),
    ))
}

fn check_nonzero(x: &Rational, name: &str) -> Result<()> {
    if x.is_zero() {
        return Err(Error::Parameter(format!("{name} must be nonzero")));
    }
    Ok(())
}

fn check_sites(m: usize) -> Result<()> {
    if m > MAX_SITES {
        return Err(Error::Parameter(format!("at most {MAX_SITES} sites are supported, got {m}")));
    }
    Ok(())
}

/// `z = -1/β - 1/u²`.
pub fn spectral_to_z(u: &Rational, beta: &Rational) -> Result<Rational> {
    check_nonzero(u, "u")?;
    check_nonzero(beta, "beta")?;
    Ok(-beta.recip() - (u * u).recip())
}

/// Sums over all auxiliary paths through sites `1..=m` starting in `a_in`
/// and ending in `a_out`, for one input basis state.
fn propagate<T: Ring>(
    m: usize,
    input: u32,
    a_in: usize,
    a_out: usize,
    w: &VertexTable<T>,
) -> BTreeMap<u32, T> {
    let mut layer: BTreeMap<(usize, u32), T> = BTreeMap::new();
    layer.insert((a_in, 0), T::one());
    for j in 0..m {
        let s = ((input >> j) & 1) as usize;
        let mut next: BTreeMap<(usize, u32), T> = BTreeMap::new();
        for ((a, out), amp) in layer {
            for ao in 0..2 {
                for so in 0..2 {
                    let x = &w[a][s][ao][so];
                    if x.is_zero() {
                        continue;
                    }
                    let key = (ao, out | ((so as u32) << j));
                    let term = amp.clone() * x.clone();
                    match next.remove(&key) {
                        Some(prev) => {
                            let sum = prev + term;
                            if !sum.is_zero() {
                                next.insert(key, sum);
                            }
                        }
                        None => {
                            next.insert(key, term);
                        }
                    }
                }
            }
        }
        layer = next;
    }
    layer
        .into_iter()
        .filter(|((a, _), _)| *a == a_out)
        .map(|((_, out), amp)| (out, amp))
        .collect()
}

fn apply_entry(a_in: usize, a_out: usize, u: &Rational, beta: &Rational, state: &SpinVector) -> Result<SpinVector> {
    check_sites(state.sites())?;
    let w = FiveVertexWeights::new(u, beta)?.table();
    let mut out = SpinVector::zero(state.sites());
    for (s, amp) in state.iter() {
        for (mask, x) in propagate(state.sites(), s.0, a_in, a_out, &w) {
            out.add_term(SpinState(mask), amp * x);
        }
    }
    Ok(out)
}

/// `B(u)` applied to a state; adds one particle.
#[allow(non_snake_case)]
pub fn apply_B(u: &Rational, beta: &Rational, state: &SpinVector) -> Result<SpinVector> {
    apply_entry(1, 0, u, beta, state)
}

/// `C(u)` applied to a state; removes one particle.
#[allow(non_snake_case)]
pub fn apply_C(u: &Rational, beta: &Rational, state: &SpinVector) -> Result<SpinVector> {
    apply_entry(0, 1, u, beta, state)
}

fn induced_z(us: &[Rational], beta: &Rational) -> Result<Vec<Rational>> {
    let z = us.iter().map(|u| spectral_to_z(u, beta)).collect::<Result<Vec<_>>>()?;
    ensure_distinct(&z)?;
    Ok(z)
}

/// `∏_j B(u_j) |Ω⟩` on `m` sites.
pub fn state_vector_5v(m: usize, us: &[Rational], beta: &Rational) -> Result<SpinVector> {
    let mut v = SpinVector::vacuum(m);
    for u in us {
        v = apply_B(u, beta, &v)?;
    }
    Ok(v)
}

/// `⟨x|ψ({u})⟩` computed on the lattice.
pub fn wavefunction_5v(x: &FermionConfig, us: &[Rational], beta: &Rational) -> Result<Rational> {
    check_len(x, us)?;
    induced_z(us, beta)?;
    Ok(state_vector_5v(x.sites(), us, beta)?.amplitude(SpinState::from_config(x)))
}

/// `⟨ψ({u})|x⟩ = ⟨Ω| ∏ C(u_j) |x⟩` computed on the lattice.
pub fn dual_wavefunction_5v(x: &FermionConfig, us: &[Rational], beta: &Rational) -> Result<Rational> {
    check_len(x, us)?;
    induced_z(us, beta)?;
    let mut v = SpinVector::basis(x.sites(), SpinState::from_config(x));
    for u in us.iter().rev() {
        v = apply_C(u, beta, &v)?;
    }
    Ok(v.amplitude(SpinState(0)))
}

fn check_len(x: &FermionConfig, us: &[Rational]) -> Result<()> {
    if x.particles() != us.len() {
        return Err(Error::Dimension(format!(
            "{} particles but {} spectral parameters",
            x.particles(),
            us.len()
        )));
    }
    Ok(())
}

fn closed_prefactor(m: usize, us: &[Rational], beta: &Rational) -> Result<Rational> {
    let n = us.len() as i64;
    let mut acc = pow(&-beta.recip(), n * (n - 1) / 2)?;
    for u in us {
        acc *= upow(u, m as u32 - 1);
    }
    Ok(acc)
}

/// `(-1/β)^{N(N-1)/2} ∏ u_j^{M-1} G_λ(z)` with `λ` read off from `x`.
pub fn wavefunction_5v_closed(x: &FermionConfig, us: &[Rational], beta: &Rational) -> Result<Rational> {
    check_len(x, us)?;
    let z = induced_z(us, beta)?;
    let lambda = x.to_partition();
    let g = groth_det(&lambda, &EvalPoint::new(z, beta.clone())?)?;
    Ok(closed_prefactor(x.sites(), us, beta)? * g)
}

/// Dual closed form with the complement `λ∨` in the `N x (M-N)` box.
pub fn dual_wavefunction_5v_closed(x: &FermionConfig, us: &[Rational], beta: &Rational) -> Result<Rational> {
    check_len(x, us)?;
    let z = induced_z(us, beta)?;
    let n = x.particles();
    let dual = complement(&x.to_partition(), n, (x.sites() - n) as u32)?;
    let g = groth_det(&dual, &EvalPoint::new(z, beta.clone())?)?;
    Ok(closed_prefactor(x.sites(), us, beta)? * g)
}

/// `(-β)^N u^{1-M} ⟨y|B(u)|x⟩` with `N = len(x)`.
pub fn skew_matrix_element(y: &FermionConfig, x: &FermionConfig, u: &Rational, beta: &Rational) -> Result<Rational> {
    check_pair(y, x)?;
    let out = apply_B(u, beta, &SpinVector::basis(x.sites(), SpinState::from_config(x)))?;
    Ok(skew_scale(x, u, beta)? * out.amplitude(SpinState::from_config(y)))
}

/// `(-β)^N u^{1-M} ⟨x|C(u)|y⟩`, which equals `G_{μ∨/λ∨}(z)`.
pub fn skew_matrix_element_c(x: &FermionConfig, y: &FermionConfig, u: &Rational, beta: &Rational) -> Result<Rational> {
    check_pair(y, x)?;
    let out = apply_C(u, beta, &SpinVector::basis(y.sites(), SpinState::from_config(y)))?;
    Ok(skew_scale(x, u, beta)? * out.amplitude(SpinState::from_config(x)))
}

fn check_pair(y: &FermionConfig, x: &FermionConfig) -> Result<()> {
    if y.sites() != x.sites() || y.particles() != x.particles() + 1 {
        return Err(Error::Dimension(format!(
            "expected {} particles on {} sites above {x:?}",
            x.particles() + 1,
            x.sites()
        )));
    }
    Ok(())
}

fn skew_scale(x: &FermionConfig, u: &Rational, beta: &Rational) -> Result<Rational> {
    Ok(upow(&-beta.clone(), x.particles() as u32) * pow(u, 1 - x.sites() as i64)?)
}

/// Skew polynomial `G_{μ/λ}(z)` for the diagrams attached to `y` and `x`,
/// where `y` lives in the `(N+1) x (M-N-1)` box.
pub fn skew_closed(y: &FermionConfig, x: &FermionConfig, u: &Rational, beta: &Rational) -> Result<Rational> {
    check_pair(y, x)?;
    skew_single(&y.to_partition(), &x.to_partition(), &spectral_to_z(u, beta)?, beta)
}

/// Basis of the `n`-particle sector: masks with `n` bits set, ascending.
pub fn sector_basis(m: usize, n: usize) -> Vec<SpinState> {
    (0u32..(1u32 << m))
        .filter(|s| s.count_ones() as usize == n)
        .map(SpinState)
        .collect()
}

/// `t(u) = Tr_a T_a(u)` on the `n`-particle sector, entries Laurent in `u`.
pub fn transfer_matrix(m: usize, n: usize, beta: &Rational) -> Result<RingMatrix<LaurentPoly>> {
    check_sites(m)?;
    let w = laurent_table(beta)?;
    let basis = sector_basis(m, n);
    let index: BTreeMap<u32, usize> = basis.iter().enumerate().map(|(i, s)| (s.0, i)).collect();
    let mut t: RingMatrix<LaurentPoly> = RingMatrix::zeros(basis.len(), basis.len());
    for (col, s) in basis.iter().enumerate() {
        for a in 0..2 {
            for (out, x) in propagate(m, s.0, a, a, &w) {
                let row = *index.get(&out).ok_or_else(|| {
                    Error::Evaluation("transfer matrix left the particle sector".into())
                })?;
                let v = t.get(row, col).clone() + x;
                t.set(row, col, v);
            }
        }
    }
    Ok(t)
}

/// Local form of the Hamiltonian on the `n`-particle sector.
///
/// Each bond `(j, j+1)`, taken periodically, moves a particle from site `j`
/// to an empty site `j+1` with amplitude `-1/β` and adds `-1/2` to the
/// diagonal when its two sites differ. This fixes the reading of `σ^±` in
/// `-β^{-1} σ_j^+ σ_{j+1}^-`: the log-derivative of the transfer matrix
/// produces exactly these moves.
pub fn hamiltonian_5v_local(m: usize, n: usize, beta: &Rational) -> Result<RingMatrix<Rational>> {
    check_nonzero(beta, "beta")?;
    if m < 2 {
        return Err(Error::Parameter("the periodic chain needs at least two sites".into()));
    }
    let basis = sector_basis(m, n);
    let index: BTreeMap<u32, usize> = basis.iter().enumerate().map(|(i, s)| (s.0, i)).collect();
    let hop = -beta.recip();
    let half = Rational::new(1.into(), 2.into());
    let mut h: RingMatrix<Rational> = RingMatrix::zeros(basis.len(), basis.len());
    for (col, s) in basis.iter().enumerate() {
        for j in 0..m {
            let k = (j + 1) % m;
            let (bj, bk) = ((s.0 >> j) & 1, (s.0 >> k) & 1);
            if bj != bk {
                let d = h.get(col, col) - &half;
                h.set(col, col, d);
            }
            if bj == 1 && bk == 0 {
                let row = index[&(s.0 ^ (1 << j) ^ (1 << k))];
                let v = h.get(row, col) + &hop;
                h.set(row, col, v);
            }
        }
    }
    Ok(h)
}

/// `(u₀/2) F(u₀)^{-1} F'(u₀)` with `F(u) = u^{-M} t(u)` and `u₀ = √(-β)`.
pub fn hamiltonian_5v_log_derivative(m: usize, n: usize, beta: &Rational) -> Result<RingMatrix<Rational>> {
    let u0 = rational_sqrt(&-beta.clone()).ok_or_else(|| {
        Error::Parameter(format!("-beta = {} is not the square of a rational", -beta.clone()))
    })?;
    let f = transfer_matrix(m, n, beta)?.shift(-(m as i32));
    let f0 = f.eval(&u0)?;
    let df0 = f.derivative().eval(&u0)?;
    let prod = f0.inverse()?.mul(&df0)?;
    let scale = &u0 / Rational::from_integer(2.into());
    Ok(prod.map(|x| x * &scale))
}

/// The Hamiltonian on the `n`-particle sector, built both ways and checked.
pub fn hamiltonian_5v_sector(m: usize, n: usize, beta: &Rational) -> Result<RingMatrix<Rational>> {
    let direct = hamiltonian_5v_local(m, n, beta)?;
    let derived = hamiltonian_5v_log_derivative(m, n, beta)?;
    if direct != derived {
        return Err(Error::Evaluation(format!(
            "local and log-derivative Hamiltonians differ on sector M={m}, N={n}"
        )));
    }
    Ok(direct)
}

/// Full `2^M x 2^M` Hamiltonian indexed by mask, assembled from the sectors
/// after checking each one against the transfer-matrix route.
pub fn hamiltonian_5v(m: usize, beta: &Rational) -> Result<RingMatrix<Rational>> {
    if m > 12 {
        return Err(Error::Parameter(format!("full Hamiltonian limited to 12 sites, got {m}")));
    }
    let dim = 1usize << m;
    let mut h: RingMatrix<Rational> = RingMatrix::zeros(dim, dim);
    for n in 0..=m {
        let basis = sector_basis(m, n);
        let block = hamiltonian_5v_sector(m, n, beta)?;
        for (i, si) in basis.iter().enumerate() {
            for (j, sj) in basis.iter().enumerate() {
                h.set(si.0 as usize, sj.0 as usize, block.get(i, j).clone());
            }
        }
    }
    Ok(h)
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
pub fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let (n, d) = (x.numer(), x.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (&rn * &rn == *n && &rd * &rd == *d).then(|| Rational::new(rn, rd))
}

fn r_entries(u: &Rational, v: &Rational) -> Result<(Rational, Rational)> {
    let (u2, v2) = (u * u, v * v);
    if u2 == v2 {
        return Err(Error::Pole(format!("u² = v² at u = {u}, v = {v}")));
    }
    let d = &u2 - &v2;
    Ok((&u2 / &d, u * v / d))
}

/// `R(u, v)` on `W_a ⊗ W_b`, indexed `2a + b`.
pub fn r_matrix(u: &Rational, v: &Rational) -> Result<RingMatrix<Rational>> {
    let (f, g) = r_entries(u, v)?;
    let z = Rational::zero;
    RingMatrix::new(
        4,
        4,
        vec![
            f.clone(), z(), z(), z(),
            z(), z(), g.clone(), z(),
            z(), g, Rational::one(), z(),
            z(), z(), z(), f,
        ],
    )
}

/// `L(u)` on `W_a ⊗ V_j`, indexed `2a + s`.
pub fn l_matrix(u: &Rational, beta: &Rational) -> Result<RingMatrix<Rational>> {
    let w = FiveVertexWeights::new(u, beta)?.table();
    Ok(RingMatrix::from_fn(4, 4, |row, col| w[col / 2][col % 2][row / 2][row % 2].clone()))
}

fn check_spectral(xs: &[&Rational]) -> Result<()> {
    for (i, a) in xs.iter().enumerate() {
        if a.is_zero() {
            return Err(Error::Pole("spectral parameter is zero".into()));
        }
        for b in &xs[i + 1..] {
            if *a * *a == *b * *b {
                return Err(Error::Pole(format!("coinciding squares at {a} and {b}")));
            }
        }
    }
    Ok(())
}

/// `R_ab(u,v) R_ac(u,w) R_bc(v,w) = R_bc(v,w) R_ac(u,w) R_ab(u,v)` on `(C²)^{⊗3}`.
pub fn check_ybe(u: &Rational, v: &Rational, w: &Rational) -> Result<bool> {
    check_spectral(&[u, v, w])?;
    let dims = [2, 2, 2];
    let r12 = r_matrix(u, v)?.on_factors(&dims, 0, 1)?;
    let r13 = r_matrix(u, w)?.on_factors(&dims, 0, 2)?;
    let r23 = r_matrix(v, w)?.on_factors(&dims, 1, 2)?;
    let lhs = r12.mul(&r13)?.mul(&r23)?;
    let rhs = r23.mul(&r13)?.mul(&r12)?;
    Ok(lhs == rhs)
}

/// `R_ab(u,v) L_aj(u) L_bj(v) = L_bj(v) L_aj(u) R_ab(u,v)` on `W_a ⊗ W_b ⊗ V_j`.
pub fn check_rll(u: &Rational, v: &Rational, beta: &Rational) -> Result<bool> {
    check_spectral(&[u, v])?;
    check_rll_with(&r_matrix(u, v)?, &l_matrix(u, beta)?, &l_matrix(v, beta)?)
}

pub(crate) fn check_rll_with(
    r: &RingMatrix<Rational>,
    lu: &RingMatrix<Rational>,
    lv: &RingMatrix<Rational>,
) -> Result<bool> {
    let dj = lu.rows() / 2;
    let dims = [2, 2, dj];
    let rab = r.on_factors(&dims, 0, 1)?;
    let laj = lu.on_factors(&dims, 0, 2)?;
    let lbj = lv.on_factors(&dims, 1, 2)?;
    Ok(rab.mul(&laj)?.mul(&lbj)? == lbj.mul(&laj)?.mul(&rab)?)
}

/// All `n`-particle configurations on `m` sites, as fermion configurations.
pub fn sector_configs(m: usize, n: usize) -> Vec<FermionConfig> {
    sector_basis(m, n).into_iter().map(|s| s.to_config(m)).collect()
}

/// Configuration attached to `λ ⊆ (M-N)^N`.
pub fn config_of(lambda: &Partition, m: usize) -> Result<FermionConfig> {
    positions_from_partition(lambda, lambda.len(), m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use crate::partitions::interlaces;

    fn cfg(pos: &[usize], m: usize) -> FermionConfig {
        FermionConfig::new(pos.to_vec(), m).unwrap()
    }

    fn st(pos: &[usize]) -> SpinState {
        SpinState(pos.iter().fold(0, |m, &x| m | (1 << (x - 1))))
    }

    /// `⟨y|B(u)|x⟩` from the segment-by-segment path decomposition.
    fn b_element_oracle(y: &[usize], x: &[usize], m: usize, u: &Rational, beta: &Rational) -> Rational {
        let n = x.len();
        let ok = (0..n).all(|j| y[j] <= x[j] && x[j] < y[j + 1]) && y[n] <= m;
        if !ok {
            return Rational::zero();
        }
        let pass = -(u / beta) - u.recip();
        let ys: i64 = y.iter().map(|&v| v as i64).sum();
        let xs: i64 = x.iter().map(|&v| v as i64).sum();
        let mut acc = pow(&pass, -1 - n as i64 + ys - xs).unwrap() * upow(u, (m - y[n]) as u32);
        for j in 0..n {
            acc *= if x[j] == y[j] {
                -(u / beta)
            } else {
                upow(u, (x[j] - y[j] - 1) as u32)
            };
        }
        acc
    }

    #[test]
    fn two_site_b_and_c() {
        let (u, b) = (rat(3, 2), rat(-2, 5));
        let w = FiveVertexWeights::new(&u, &b).unwrap();
        let out = apply_B(&u, &b, &SpinVector::vacuum(2)).unwrap();
        assert_eq!(out.amplitude(st(&[1])), u);
        assert_eq!(out.amplitude(st(&[2])), w.pass_empty);
        assert_eq!(out.len(), 2);
        // C removes the particle at site 2 by picking it up at the last vertex.
        let c = apply_C(&u, &b, &SpinVector::basis(2, st(&[2]))).unwrap();
        assert_eq!(c.amplitude(SpinState(0)), u);
        let c = apply_C(&u, &b, &SpinVector::basis(2, st(&[1]))).unwrap();
        assert_eq!(c.amplitude(SpinState(0)), w.pass_empty);
        assert!(apply_C(&u, &b, &SpinVector::vacuum(3)).unwrap().is_empty());
    }

    #[test]
    fn passing_weight_is_u_times_z() {
        let (u, b) = (rat(-5, 3), rat(7, 4));
        let w = FiveVertexWeights::new(&u, &b).unwrap();
        assert_eq!(w.pass_empty, &u * spectral_to_z(&u, &b).unwrap());
    }

    #[test]
    fn b_action_matches_closed_form() {
        let b = rat(-3, 7);
        let m = 5;
        for u in [rat(2, 3), rat(-5, 4)] {
            for n in 0..=2 {
                for x in sector_configs(m, n) {
                    let out = apply_B(&u, &b, &SpinVector::basis(m, SpinState::from_config(&x))).unwrap();
                    for y in sector_configs(m, n + 1) {
                        let want = b_element_oracle(y.positions(), x.positions(), m, &u, &b);
                        assert_eq!(out.amplitude(SpinState::from_config(&y)), want, "{x:?} -> {y:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn non_interlacing_pair_vanishes() {
        let (mu, lam) = (Partition::new(vec![4, 3, 3, 1, 0]).unwrap(), Partition::new(vec![3, 2, 1, 1]).unwrap());
        let y = config_of(&mu, 9).unwrap();
        let x = config_of(&lam, 9).unwrap();
        assert!(skew_matrix_element(&y, &x, &rat(3, 2), &int(-1)).unwrap().is_zero());
        let (mu2, lam2) = (Partition::new(vec![4, 3, 3, 1, 0]).unwrap(), Partition::new(vec![3, 3, 1, 1]).unwrap());
        let (y2, x2) = (config_of(&mu2, 9).unwrap(), config_of(&lam2, 9).unwrap());
        let (u, b) = (rat(3, 2), int(-1));
        let z = spectral_to_z(&u, &b).unwrap();
        let got = skew_matrix_element(&y2, &x2, &u, &b).unwrap();
        assert!(!got.is_zero());
        assert_eq!(got, skew_single(&mu2, &lam2, &z, &b).unwrap());
    }

    #[test]
    fn skew_elements_exhaustive() {
        let m = 6;
        for (u, b) in [(rat(5, 3), rat(2, 7)), (rat(-1, 2), rat(-4, 3))] {
            for n in 0..=2 {
                for x in sector_configs(m, n) {
                    for y in sector_configs(m, n + 1) {
                        let got = skew_matrix_element(&y, &x, &u, &b).unwrap();
                        let want = skew_closed(&y, &x, &u, &b).unwrap();
                        assert_eq!(got, want);
                        assert_eq!(got.is_zero(), !interlaces(&y.to_partition(), &x.to_partition()));
                        // The C element equals the skew polynomial of the complements.
                        let (mu_v, lam_v) = (
                            complement(&y.to_partition(), n + 1, (m - n - 1) as u32).unwrap(),
                            complement(&x.to_partition(), n, (m - n) as u32).unwrap(),
                        );
                        let z = spectral_to_z(&u, &b).unwrap();
                        assert_eq!(
                            skew_matrix_element_c(&x, &y, &u, &b).unwrap(),
                            skew_single(&mu_v, &lam_v, &z, &b).unwrap()
                        );
                        // 180 degree rotation relates B and C elements.
                        assert_eq!(
                            skew_matrix_element_c(&x.reversed(), &y.reversed(), &u, &b).unwrap(),
                            got
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn wavefunctions_small() {
        let (u, b) = (rat(4, 3), rat(-1, 2));
        assert_eq!(wavefunction_5v(&cfg(&[1], 2), &[u.clone()], &b).unwrap(), u);
        let z = spectral_to_z(&u, &b).unwrap();
        assert_eq!(wavefunction_5v(&cfg(&[2], 2), &[u.clone()], &b).unwrap(), &u * z);
    }

    #[test]
    fn wavefunctions_match_grothendieck() {
        let b = rat(-2, 3);
        let us = [rat(3, 2), rat(-5, 7), rat(2, 9)];
        for m in 1..=6 {
            for n in 0..=3.min(m) {
                let psi = state_vector_5v(m, &us[..n], &b).unwrap();
                for x in sector_configs(m, n) {
                    let want = wavefunction_5v_closed(&x, &us[..n], &b).unwrap();
                    assert_eq!(psi.amplitude(SpinState::from_config(&x)), want);
                    assert_eq!(
                        dual_wavefunction_5v(&x, &us[..n], &b).unwrap(),
                        dual_wavefunction_5v_closed(&x, &us[..n], &b).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn degenerate_spectral_parameters() {
        let x = cfg(&[1, 2], 4);
        // u and -u give the same z.
        let err = wavefunction_5v(&x, &[rat(3, 2), rat(-3, 2)], &int(1));
        assert!(matches!(err, Err(Error::DegeneratePoint(_))));
    }

    #[test]
    fn b_and_c_commute() {
        let b = rat(5, 3);
        let (u, v) = (rat(2, 3), rat(-7, 5));
        let m = 5;
        for s in 0u32..(1 << m) {
            let e = SpinVector::basis(m, SpinState(s));
            let uv = apply_B(&u, &b, &apply_B(&v, &b, &e).unwrap()).unwrap();
            let vu = apply_B(&v, &b, &apply_B(&u, &b, &e).unwrap()).unwrap();
            assert_eq!(uv, vu);
            let uv = apply_C(&u, &b, &apply_C(&v, &b, &e).unwrap()).unwrap();
            let vu = apply_C(&v, &b, &apply_C(&u, &b, &e).unwrap()).unwrap();
            assert_eq!(uv, vu);
        }
    }

    #[test]
    fn yang_baxter_and_rll() {
        assert!(check_ybe(&int(2), &int(3), &int(5)).unwrap());
        assert!(check_rll(&int(2), &int(3), &int(-1)).unwrap());
        assert!(matches!(check_ybe(&int(2), &int(2), &int(5)), Err(Error::Pole(_))));
        assert!(matches!(check_rll(&int(1), &int(1), &int(-1)), Err(Error::Pole(_))));
        assert!(matches!(check_rll(&int(1), &int(-1), &int(-1)), Err(Error::Pole(_))));
    }

    #[test]
    fn transfer_matrices_commute() {
        let b = rat(-3, 2);
        let m = 4;
        for n in 0..=m {
            let t = transfer_matrix(m, n, &b).unwrap();
            let (u, v) = (rat(2, 5), rat(7, 3));
            let (tu, tv) = (t.eval(&u).unwrap(), t.eval(&v).unwrap());
            assert!(tu.commutator(&tv).unwrap().is_zero(), "N={n}");
        }
    }

    #[test]
    fn empty_sector_transfer() {
        // Both auxiliary states pass straight through: u^M + (-u/β - 1/u)^M.
        let b = rat(2, 3);
        let t = transfer_matrix(2, 0, &b).unwrap();
        let pass = LaurentPoly::from_terms([(1, -b.recip()), (-1, int(-1))]);
        let want = LaurentPoly::monomial(int(1), 2) + pass.pow(2);
        assert_eq!(t.get(0, 0), &want);
    }

    #[test]
    fn hamiltonian_routes_agree() {
        for b in [int(-1), int(-4), rat(-1, 4)] {
            for m in 2..=5 {
                let h = hamiltonian_5v(m, &b).unwrap();
                assert_eq!(h.rows(), 1 << m);
            }
        }
        assert!(matches!(hamiltonian_5v(3, &int(-2)), Err(Error::Parameter(_))));
    }

    #[test]
    fn tasep_point_is_a_generator() {
        let h = hamiltonian_5v(4, &int(-1)).unwrap();
        for c in 0..h.cols() {
            let mut col = Rational::zero();
            for r in 0..h.rows() {
                if r != c {
                    let x = h.get(r, c);
                    assert!(x.is_zero() || x.is_one());
                }
                col += h.get(r, c);
            }
            assert!(col.is_zero(), "column {c}");
        }
    }

    #[test]
    fn sqrt_helper() {
        assert_eq!(rational_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rational_sqrt(&int(2)), None);
        assert_eq!(rational_sqrt(&int(-4)), None);
    }
}
