//! Melting crystal with the weight `Φ(q, β; π)` on plane partitions in an
//! `N × N × L` box.
//!
//! The partition function is evaluated three ways: by enumeration, by the
//! determinant formula, and (at `β = 0`) by the boxed MacMahon product. The
//! determinant code is written once against [`QMode`] and runs either at a
//! rational `q` or on truncated power series in `q`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{int, upow, Rational, Ring, RingMatrix, TruncatedSeries};
use crate::partitions::{diagonal_slice, enumerate_boxed, partitions_in_box, PlanePartition};

/// Box and weight parameters for numeric evaluation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrystalParams {
    pub n: usize,
    pub l: u32,
    #[serde(with = "crate::serde_rational")]
    pub q: Rational,
    #[serde(with = "crate::serde_rational")]
    pub beta: Rational,
}

impl CrystalParams {
    /// Requires `N >= 1` and `0 < q < 1`.
    pub fn new(n: usize, l: u32, q: Rational, beta: Rational) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parameter("box side N must be at least 1".into()));
        }
        if !(q > Rational::zero() && q < Rational::one()) {
            return Err(Error::Parameter(format!("q = {q} is not in (0, 1)")));
        }
        Ok(Self { n, l, q, beta })
    }

    /// Whether `β >= -1`, the range where every weight is nonnegative in the limit.
    pub fn is_physical(&self) -> bool {
        self.beta >= int(-1)
    }
}

/// Arithmetic in `q`: either a fixed rational or power series through some order.
pub trait QMode {
    type T: Ring;
    fn constant(&self, c: &Rational) -> Self::T;
    /// `q^n`.
    fn q_pow(&self, n: u64) -> Self::T;
    fn inverse(&self, x: &Self::T) -> Result<Self::T>;
    /// `x / q^s`, where `x` is known to be divisible.
    fn div_q_pow(&self, x: Self::T, s: u64) -> Result<Self::T>;
}

/// `q` is a fixed nonzero rational.
#[derive(Clone, Debug)]
pub struct Numeric(pub Rational);

impl QMode for Numeric {
    type T = Rational;

    fn constant(&self, c: &Rational) -> Rational {
        c.clone()
    }

    fn q_pow(&self, n: u64) -> Rational {
        upow(&self.0, n as u32)
    }

    fn inverse(&self, x: &Rational) -> Result<Rational> {
        if x.is_zero() {
            return Err(Error::Pole(format!("vanishing denominator at q = {}", self.0)));
        }
        Ok(x.recip())
    }

    fn div_q_pow(&self, x: Rational, s: u64) -> Result<Rational> {
        Ok(x / self.q_pow(s))
    }
}

/// `q` is formal; values are series known through `q^order`.
#[derive(Clone, Debug)]
pub struct Series(pub usize);

impl QMode for Series {
    type T = TruncatedSeries;

    fn constant(&self, c: &Rational) -> TruncatedSeries {
        TruncatedSeries::constant(c.clone(), self.0)
    }

    fn q_pow(&self, n: u64) -> TruncatedSeries {
        if n > self.0 as u64 {
            return TruncatedSeries::zero().truncate(self.0);
        }
        TruncatedSeries::monomial(Rational::one(), n as usize, self.0)
    }

    fn inverse(&self, x: &TruncatedSeries) -> Result<TruncatedSeries> {
        x.truncate(self.0).inverse()
    }

    fn div_q_pow(&self, x: TruncatedSeries, s: u64) -> Result<TruncatedSeries> {
        x.shift_down(s as usize)
    }
}

fn ring_pow<T: Ring>(x: &T, n: u64) -> T {
    (0..n).fold(T::one(), |acc, _| acc * x.clone())
}

/// `∏_{j=1}^{N} ∏_{k=1}^{N-j} a_j^{-δ(π^{(j)}_k, π^{(j-1)}_{k+1})} b_j^{1-δ(π^{(-j)}_k, π^{(1-j)}_k)}`
/// with `a_j`, `b_j` given as rationals (indexed from `j = 1`).
fn phi_factors(pi: &PlanePartition, a: &[Rational], b: &[Rational], n: usize) -> Result<Rational> {
    let mut acc = Rational::one();
    for j in 1..=n {
        let (up, up_prev) = (diagonal_slice(pi, j as i32), diagonal_slice(pi, j as i32 - 1));
        let (dn, dn_prev) = (diagonal_slice(pi, -(j as i32)), diagonal_slice(pi, 1 - j as i32));
        for k in 1..=n - j {
            if up.part(k) == up_prev.part(k + 1) {
                if a[j - 1].is_zero() {
                    return Err(Error::Pole(format!("1 + beta q^{j} vanishes with a negative exponent")));
                }
                acc /= &a[j - 1];
            }
            if dn.part(k) != dn_prev.part(k) {
                acc *= &b[j - 1];
            }
        }
    }
    Ok(acc)
}

fn check_in_box(pi: &PlanePartition, n: usize) -> Result<()> {
    if pi.num_rows() > n || pi.num_cols() > n {
        return Err(Error::OutOfBox {
            rows: pi.num_rows(),
            cols: pi.num_cols(),
            detail: format!("plane partition does not fit an {n}x{n} base"),
        });
    }
    Ok(())
}

/// `Φ(q, β; π)` for `π` inside an `N × N` base.
pub fn weight_phi(pi: &PlanePartition, q: &Rational, beta: &Rational, n: usize) -> Result<Rational> {
    check_in_box(pi, n)?;
    if q.is_zero() {
        return Err(Error::Parameter("q must be nonzero".into()));
    }
    let a: Vec<Rational> = (1..=n).map(|j| Rational::one() + beta * upow(q, j as u32)).collect();
    let b: Vec<Rational> = (1..=n)
        .map(|j| Rational::one() + beta * crate::exact::pow(q, 1 - j as i64).expect("q is nonzero"))
        .collect();
    phi_factors(pi, &a, &b, n)
}

/// `Σ_{π ⊆ [N,N,L]} Φ(q, β; π) q^{|π|}` by enumeration.
pub fn z_box_bruteforce(p: &CrystalParams) -> Result<Rational> {
    let mut acc = Rational::zero();
    for pi in enumerate_boxed(p.n, p.n, p.l) {
        acc += weight_phi(&pi, &p.q, &p.beta, p.n)? * upow(&p.q, pi.size() as u32);
    }
    Ok(acc)
}

/// The two-alphabet sum behind the determinant formula:
/// `Σ_π ∏_j z_j^{|π^{(j-1)}|-|π^{(j)}|} w_j^{|π^{(-j)}|-|π^{(1-j)}|}` times the
/// `Φ`-type factors with `1 + βz_j`, `1 + βw_j`. Setting `z_j = q^j`,
/// `w_j = q^{1-j}` recovers the summand `Φ q^{|π|}`.
pub fn z_box_two_alphabet(n: usize, l: u32, z: &[Rational], w: &[Rational], beta: &Rational) -> Result<Rational> {
    if z.len() != n || w.len() != n {
        return Err(Error::Dimension(format!("need {n} values of z and of w")));
    }
    if z.iter().chain(w).any(Zero::is_zero) {
        return Err(Error::Pole("zero spectral variable".into()));
    }
    let a: Vec<Rational> = z.iter().map(|x| Rational::one() + beta * x).collect();
    let b: Vec<Rational> = w.iter().map(|x| Rational::one() + beta * x).collect();
    let mut acc = Rational::zero();
    for pi in enumerate_boxed(n, n, l) {
        let size = |m: i32| diagonal_slice(&pi, m).size() as i64;
        let mut mono = Rational::one();
        for j in 1..=n as i32 {
            mono *= crate::exact::pow(&z[j as usize - 1], size(j - 1) - size(j))?;
            mono *= crate::exact::pow(&w[j as usize - 1], size(-j) - size(1 - j))?;
        }
        acc += mono * phi_factors(&pi, &a, &b, n)?;
    }
    Ok(acc)
}

/// Determinant formula, rewritten with nonnegative powers of `q` only:
/// the entry is
/// `[1 - q^{(j+k-1)(L+N)-(k-1)(N-1)} (q^{k-1}+β)^{N-1} / (1+βq^j)^{N-1}] / (1-q^{j+k-1})`
/// and the prefactor is `q^{N(N-1)/2 - V} ∏ (1+βq^j)^{j-1} / ∏_{j<k} (1-q^{k-j})²`
/// with `V = N(N-1)(N+1)/3`.
pub fn z_box_det_in<M: QMode>(mode: &M, n: usize, l: u32, beta: &Rational) -> Result<M::T> {
    if n == 0 {
        return Err(Error::Parameter("box side N must be at least 1".into()));
    }
    let nn = n as u64;
    let one = mode.constant(&Rational::one());
    let b = mode.constant(beta);
    let one_plus = |j: u64| one.clone() + b.clone() * mode.q_pow(j);
    let inv_a: Vec<M::T> = (1..=nn).map(|j| mode.inverse(&one_plus(j))).collect::<Result<_>>()?;
    let mat = RingMatrix::try_from_fn(n, n, |j0, k0| -> Result<M::T> {
        let (j, k) = (j0 as u64 + 1, k0 as u64 + 1);
        let e = (j + k - 1) * (l as u64 + nn) - (k - 1) * (nn - 1);
        let ratio = (mode.q_pow(k - 1) + b.clone()) * inv_a[j0].clone();
        let num = one.clone() - mode.q_pow(e) * ring_pow(&ratio, nn - 1);
        Ok(num * mode.inverse(&(one.clone() - mode.q_pow(j + k - 1)))?)
    })?;
    let mut pre = one.clone();
    for j in 1..=nn {
        pre = pre * ring_pow(&one_plus(j), j - 1);
        for k in j + 1..=nn {
            let inv = mode.inverse(&(one.clone() - mode.q_pow(k - j)))?;
            pre = pre * inv.clone() * inv;
        }
    }
    let shift = nn * (nn - 1) * (nn + 1) / 3 - nn * (nn - 1) / 2;
    mode.div_q_pow(pre * mat.det()?, shift)
}

/// Order a series computation must carry so that after dividing by the
/// prefactor power the result is known through `q^order`.
fn series_working_order(n: usize, order: usize) -> usize {
    let nn = n;
    order + nn * (nn - 1) * (nn + 1) / 3 - nn * (nn - 1) / 2
}

/// Determinant formula at a rational `q`.
pub fn z_box_det(p: &CrystalParams) -> Result<Rational> {
    z_box_det_in(&Numeric(p.q.clone()), p.n, p.l, &p.beta)
}

/// Determinant formula as a power series in `q` through `q^order`.
pub fn z_box_det_series(n: usize, l: u32, beta: &Rational, order: usize) -> Result<TruncatedSeries> {
    z_box_det_in(&Series(series_working_order(n, order)), n, l, beta)
}

/// `∏_{j<=N1, k<=N2} (1 - q^{L+j+k-1}) / (1 - q^{j+k-1})`.
pub fn z_box_beta0_in<M: QMode>(mode: &M, n1: usize, n2: usize, l: u32) -> Result<M::T> {
    let one = mode.constant(&Rational::one());
    let mut acc = one.clone();
    for j in 1..=n1 as u64 {
        for k in 1..=n2 as u64 {
            acc = acc * (one.clone() - mode.q_pow(l as u64 + j + k - 1));
            acc = acc * mode.inverse(&(one.clone() - mode.q_pow(j + k - 1)))?;
        }
    }
    Ok(acc)
}

/// Boxed MacMahon product at a rational `q`.
pub fn z_box_beta0(n1: usize, n2: usize, l: u32, q: &Rational) -> Result<Rational> {
    z_box_beta0_in(&Numeric(q.clone()), n1, n2, l)
}

/// Boxed MacMahon product as a series through `q^order`.
pub fn z_box_beta0_series(n1: usize, n2: usize, l: u32, order: usize) -> Result<TruncatedSeries> {
    z_box_beta0_in(&Series(order), n1, n2, l)
}

/// The `q → 1` limit `∏ (L+j+k-1)/(j+k-1)`: the number of plane partitions in the box.
pub fn z_box_beta0_count(n1: usize, n2: usize, l: u32) -> BigInt {
    let mut acc = Rational::one();
    for j in 1..=n1 as i64 {
        for k in 1..=n2 as i64 {
            acc *= Rational::new(BigInt::from(l as i64 + j + k - 1), BigInt::from(j + k - 1));
        }
    }
    debug_assert!(acc.is_integer());
    acc.to_integer()
}

/// `∏_{n>=1} (1+βq^n)^{n-1} / (1-q^n)^n` through `q^order`.
pub fn z_infinite(beta: &Rational, order: usize) -> TruncatedSeries {
    let mut acc = TruncatedSeries::constant(Rational::one(), order);
    for n in 1..=order {
        let lin = &TruncatedSeries::constant(Rational::one(), order)
            + &TruncatedSeries::monomial(beta.clone(), n, order);
        let geo = TruncatedSeries::geometric(n, order);
        for _ in 0..n - 1 {
            acc = &acc * &lin;
        }
        for _ in 0..n {
            acc = &acc * &geo;
        }
    }
    acc
}

/// Boxed determinant in series mode at `N = L = order + 1`, truncated to
/// `q^order` and checked against [`z_infinite`].
pub fn z_box_series_limit(beta: &Rational, order: usize) -> Result<TruncatedSeries> {
    let n = order + 1;
    let boxed = z_box_det_series(n, n as u32, beta, order)?.truncate(order);
    let inf = z_infinite(beta, order);
    if boxed.coefficients() != inf.coefficients() {
        return Err(Error::Evaluation(format!(
            "boxed series {:?} has not stabilized to the infinite product {:?}",
            boxed.coefficients(),
            inf.coefficients()
        )));
    }
    Ok(boxed)
}

/// Number of plane partitions of each size `0..=order`, by enumeration.
///
/// Rows are generated one at a time as partitions dominated entrywise by
/// the row above, with the remaining size as a budget.
pub fn plane_partition_counts(order: usize) -> Vec<u64> {
    fn rows_below(above: &[u32], k: usize, budget: u32, row: &mut Vec<u32>, out: &mut Vec<(Vec<u32>, u32)>) {
        let used: u32 = row.iter().sum();
        out.push((row.clone(), used));
        if k >= above.len() {
            return;
        }
        let cap = above[k].min(row.last().copied().unwrap_or(u32::MAX)).min(budget - used);
        for x in 1..=cap {
            row.push(x);
            rows_below(above, k + 1, budget, row, out);
            row.pop();
        }
    }
    fn stack(above: &[u32], budget: u32, total: u32, counts: &mut [u64]) {
        counts[total as usize] += 1;
        let mut rows = Vec::new();
        rows_below(above, 0, budget, &mut Vec::new(), &mut rows);
        for (row, used) in rows {
            if used > 0 {
                stack(&row, budget - used, total + used, counts);
            }
        }
    }
    let mut counts = vec![0u64; order + 1];
    let top = vec![order as u32; order];
    stack(&top, order as u32, 0, &mut counts);
    counts
}

/// Number of partitions of each size `0..=order`, by enumeration.
pub fn partition_counts(order: usize) -> Vec<u64> {
    let mut counts = vec![0u64; order + 1];
    let side = order.max(1);
    for lam in partitions_in_box(side, side as u32) {
        if let Some(c) = counts.get_mut(lam.size() as usize) {
            *c += 1;
        }
    }
    counts
}

/// Thermodynamic inputs; `q = exp(-μ/T)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntropyParams {
    pub mu: f64,
    pub t: f64,
    /// Upper bound on the number of terms summed.
    pub cutoff: usize,
}

impl EntropyParams {
    pub const DEFAULT_CUTOFF: usize = 100_000;

    pub fn new(mu: f64, t: f64) -> Result<Self> {
        if !(mu > 0.0 && t > 0.0 && mu.is_finite() && t.is_finite()) {
            return Err(Error::Parameter(format!("need mu > 0 and T > 0, got mu = {mu}, T = {t}")));
        }
        Ok(Self { mu, t, cutoff: Self::DEFAULT_CUTOFF })
    }

    pub fn q(&self) -> f64 {
        (-self.mu / self.t).exp()
    }
}

const TERM_TOLERANCE: f64 = 1e-14;

fn check_beta(beta: f64) -> Result<()> {
    if !(beta >= -1.0) {
        return Err(Error::Parameter(format!(
            "beta = {beta} < -1 is outside the physical range"
        )));
    }
    Ok(())
}

/// Sums `f(n)` for `n = 1, 2, ...` until a term falls below the tolerance
/// after the terms have started to decay.
fn sum_terms(cutoff: usize, mut f: impl FnMut(f64) -> f64) -> Result<f64> {
    let mut acc = 0.0;
    for n in 1..=cutoff {
        let term = f(n as f64);
        if !term.is_finite() {
            return Err(Error::Evaluation(format!("non-finite term at n = {n}")));
        }
        acc += term;
        if term.abs() < TERM_TOLERANCE && n > 1 {
            return Ok(acc);
        }
    }
    Err(Error::Evaluation(format!("series did not converge within {cutoff} terms")))
}

/// `log Z(β) = Σ_n [(n-1) log(1+βq^n) - n log(1-q^n)]`.
pub fn log_z(p: &EntropyParams, beta: f64) -> Result<f64> {
    check_beta(beta)?;
    let q = p.q();
    sum_terms(p.cutoff, |n| {
        let qn = q.powf(n);
        let lead = if n == 1.0 { 0.0 } else { (n - 1.0) * (beta * qn).ln_1p() };
        lead - n * (-qn).ln_1p()
    })
}

/// `S(β) = Σ_n (μn/T)[β(n-1)/(β+q^{-n}) + n/(q^{-n}-1)] + log Z(β)`.
pub fn entropy(p: &EntropyParams, beta: f64) -> Result<f64> {
    check_beta(beta)?;
    let q = p.q();
    let energy_part = sum_terms(p.cutoff, |n| {
        let qn = q.powf(n);
        // β(n-1)/(β+q^{-n}) = β(n-1)q^n/(1+βq^n) and n/(q^{-n}-1) = n q^n/(1-q^n).
        p.mu * n / p.t * (beta * (n - 1.0) * qn / (1.0 + beta * qn) + n * qn / (1.0 - qn))
    })?;
    Ok(energy_part + log_z(p, beta)?)
}

/// Internal energy `E = T² ∂ log Z / ∂T` by a central difference with step `h`.
pub fn internal_energy_fd(p: &EntropyParams, beta: f64, h: f64) -> Result<f64> {
    if !(h > 0.0 && h < p.t) {
        return Err(Error::Parameter(format!("step h = {h} must lie in (0, T)")));
    }
    let at = |t: f64| log_z(&EntropyParams { t, ..p.clone() }, beta);
    Ok(p.t * p.t * (at(p.t + h)? - at(p.t - h)?) / (2.0 * h))
}

/// One row of the entropy table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntropyRow {
    pub t: f64,
    pub beta: f64,
    pub s: f64,
}

/// `S(β)` on a grid of temperatures and `β` values, `T` varying fastest.
pub fn entropy_table(mu: f64, temperatures: &[f64], betas: &[f64]) -> Result<Vec<EntropyRow>> {
    let mut rows = Vec::with_capacity(temperatures.len() * betas.len());
    for &beta in betas {
        for &t in temperatures {
            rows.push(EntropyRow { t, beta, s: entropy(&EntropyParams::new(mu, t)?, beta)? });
        }
    }
    Ok(rows)
}

/// CSV text with header `T,beta,S`.
pub fn entropy_csv(rows: &[EntropyRow]) -> String {
    let mut out = String::from("T,beta,S\n");
    for r in rows {
        out.push_str(&format!("{},{},{:.12e}\n", r.t, r.beta, r.s));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::grothendieck::{cauchy_lhs, cauchy_rhs};

    fn pp(rows: &[&[u32]]) -> PlanePartition {
        PlanePartition::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn phi_examples() {
        let q = rat(1, 2);
        assert_eq!(weight_phi(&PlanePartition::empty(), &q, &int(1), 2).unwrap(), rat(2, 3));
        assert_eq!(weight_phi(&PlanePartition::empty(), &q, &int(1), 1).unwrap(), int(1));
        // One box: slice 0 is (1), so δ(π^{(1)}_1, π^{(0)}_2) = δ(0, 0) still holds and
        // δ(π^{(-1)}_1, π^{(0)}_1) = δ(0, 1) fails, bringing in 1 + βq^0.
        let b = rat(1, 3);
        let one_box = weight_phi(&pp(&[&[1]]), &q, &b, 2).unwrap();
        assert_eq!(one_box, (int(1) + &b) / (int(1) + &b * &q));
        assert!(matches!(weight_phi(&pp(&[&[1, 1, 1]]), &q, &b, 2), Err(Error::OutOfBox { .. })));
    }

    #[test]
    fn phi_trivial_at_beta_zero() {
        for pi in enumerate_boxed(3, 3, 3) {
            assert_eq!(weight_phi(&pi, &rat(2, 7), &int(0), 3).unwrap(), int(1));
        }
    }

    #[test]
    fn small_boxes() {
        let q = rat(2, 5);
        for l in 0..4 {
            let p = CrystalParams::new(1, l, q.clone(), rat(3, 2)).unwrap();
            let geo: Rational = (0..=l).map(|k| upow(&q, k)).sum();
            assert_eq!(z_box_bruteforce(&p).unwrap(), geo);
            assert_eq!(z_box_det(&p).unwrap(), geo);
        }
        let p = CrystalParams::new(2, 1, rat(1, 2), int(1)).unwrap();
        assert_eq!(z_box_det(&p).unwrap(), z_box_bruteforce(&p).unwrap());
    }

    #[test]
    fn brute_force_equals_determinant() {
        for n in 1..=3 {
            for l in 0..=3 {
                for q in [rat(1, 2), rat(1, 3), rat(2, 5)] {
                    for b in [int(0), int(-1), int(1), rat(1, 2)] {
                        let p = CrystalParams::new(n, l, q.clone(), b).unwrap();
                        assert_eq!(z_box_bruteforce(&p).unwrap(), z_box_det(&p).unwrap(), "{p:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn two_alphabet_sum_is_cauchy() {
        let z = [rat(2, 3), rat(-1, 4)];
        let w = [rat(5, 7), rat(3, 2)];
        let b = rat(-2, 5);
        // Each chain step j contributes (1 + βz_j)^{N-j} before the δ factors
        // are divided out, and the dual side carries w^L per variable.
        let norm: Rational = (1..=2).map(|j| upow(&(int(1) + &b * &z[j - 1]), 2 - j as u32)).product();
        for l in 0..=3u32 {
            let wl: Rational = w.iter().map(|x| upow(x, l)).product();
            let lhs = z_box_two_alphabet(2, l, &z, &w, &b).unwrap() * wl * &norm;
            assert_eq!(lhs, cauchy_lhs(2, l, &z, &w, &b).unwrap());
            assert_eq!(lhs, cauchy_rhs(2, l, &z, &w, &b).unwrap());
        }
        let q = rat(1, 3);
        let zq = [q.clone(), &q * &q];
        let wq = [int(1), q.recip()];
        let p = CrystalParams::new(2, 2, q, b.clone()).unwrap();
        assert_eq!(z_box_two_alphabet(2, 2, &zq, &wq, &b).unwrap(), z_box_bruteforce(&p).unwrap());
    }

    #[test]
    fn beta_zero_is_macmahon() {
        assert_eq!(z_box_beta0_count(2, 2, 2), BigInt::from(20));
        assert_eq!(enumerate_boxed(2, 2, 2).count(), 20);
        assert_eq!(z_box_beta0_count(2, 3, 2), BigInt::from(enumerate_boxed(2, 3, 2).count()));
        let q = rat(1, 2);
        let unweighted: Rational = enumerate_boxed(2, 3, 2).map(|pi| upow(&q, pi.size() as u32)).sum();
        assert_eq!(z_box_beta0(2, 3, 2, &q).unwrap(), unweighted);
        let q = rat(1, 3);
        let p = CrystalParams::new(2, 2, q.clone(), int(0)).unwrap();
        assert_eq!(z_box_det(&p).unwrap(), z_box_beta0(2, 2, 2, &q).unwrap());
        for n in 1..=3 {
            for l in 0..=3 {
                assert_eq!(
                    z_box_det_series(n, l, &int(0), 20).unwrap().coefficients(),
                    z_box_beta0_series(n, n, l, 20).unwrap().coefficients()
                );
            }
        }
    }

    #[test]
    fn generalized_macmahon() {
        let pp_counts: Vec<Rational> = plane_partition_counts(5).into_iter().map(|c| int(c as i64)).collect();
        assert_eq!(pp_counts, [1, 1, 3, 6, 13, 24].map(int));
        assert_eq!(z_infinite(&int(0), 5).coefficients(), pp_counts);
        let p_counts: Vec<Rational> = partition_counts(10).into_iter().map(|c| int(c as i64)).collect();
        assert_eq!(z_infinite(&int(-1), 10).coefficients(), p_counts);
        assert_eq!(p_counts[..8], [1, 1, 2, 3, 5, 7, 11, 15].map(int));
        for b in [int(0), int(-1), rat(1, 2)] {
            z_box_series_limit(&b, 5).unwrap();
        }
    }

    #[test]
    fn positivity_and_stability() {
        for b in [int(0), rat(1, 2), int(2)] {
            let s = z_infinite(&b, 15);
            assert!(s.coefficients().iter().all(|c| *c > Rational::zero()));
            let longer = z_infinite(&b, 20);
            assert_eq!(longer.truncate(15).coefficients(), s.coefficients());
        }
    }

    #[test]
    fn entropy_properties() {
        let p = EntropyParams::new(1.0, 1.0).unwrap();
        let s: Vec<f64> = [-1.0, 0.0, 1.0].iter().map(|&b| entropy(&p, b).unwrap()).collect();
        assert!(s[0] < s[1] && s[1] < s[2], "{s:?}");
        for b in [-1.0, 0.0, 1.0] {
            let e = internal_energy_fd(&p, b, 1e-4).unwrap();
            let gap = entropy(&p, b).unwrap() - (log_z(&p, b).unwrap() + e / p.t);
            assert!(gap.abs() < 1e-6, "beta {b}: {gap}");
        }
        let cold = EntropyParams::new(1.0, 0.05).unwrap();
        assert!(entropy(&cold, 0.0).unwrap().abs() < 1e-6);
        assert!(matches!(entropy(&p, -1.5), Err(Error::Parameter(_))));
        let csv = entropy_csv(&entropy_table(1.0, &[0.5, 1.0], &[0.0]).unwrap());
        assert_eq!(csv.lines().count(), 3);
        assert!(csv.starts_with("T,beta,S\n0.5,0,"));
    }
}
