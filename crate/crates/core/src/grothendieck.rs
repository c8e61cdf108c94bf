//! Grothendieck polynomials evaluated at exact rational points.
//!
//! `G_λ(z; β)` is the ratio of `det(z_j^{λ_k+N-k} (1+βz_j)^{k-1})` to the
//! Vandermonde `∏_{j<k} (z_j - z_k)`. The skew versions come from a closed
//! single-variable formula and are chained to build multivariable ones.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{binomial, rational_det, upow, Rational, RingMatrix};
use crate::partitions::{complement, interlaced_below, interlaces, partitions_in_box, Partition};

/// Pairwise distinct variables `z` together with the deformation parameter `β`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalPoint {
    #[serde(with = "crate::serde_rational::vec")]
    z: Vec<Rational>,
    #[serde(with = "crate::serde_rational")]
    beta: Rational,
}

impl EvalPoint {
    pub fn new(z: Vec<Rational>, beta: Rational) -> Result<Self> {
        ensure_distinct(&z)?;
        Ok(Self { z, beta })
    }

    pub fn z(&self) -> &[Rational] {
        &self.z
    }

    pub fn beta(&self) -> &Rational {
        &self.beta
    }

    pub fn len(&self) -> usize {
        self.z.len()
    }

    pub fn is_empty(&self) -> bool {
        self.z.is_empty()
    }
}

pub(crate) fn ensure_distinct(z: &[Rational]) -> Result<()> {
    for j in 0..z.len() {
        for k in j + 1..z.len() {
            if z[j] == z[k] {
                return Err(Error::DegeneratePoint(format!(
                    "variables {} and {} coincide",
                    j + 1,
                    k + 1
                )));
            }
        }
    }
    Ok(())
}

/// `∏_{j<k} (z_j - z_k)`.
fn vandermonde(z: &[Rational]) -> Rational {
    let mut acc = Rational::one();
    for j in 0..z.len() {
        for k in j + 1..z.len() {
            acc *= &z[j] - &z[k];
        }
    }
    acc
}

/// `G_λ(z_1, ..., z_N; β)` from the bialternant-type determinant.
pub fn groth_det(lambda: &Partition, p: &EvalPoint) -> Result<Rational> {
    let n = p.len();
    if lambda.len() != n {
        return Err(Error::Dimension(format!("{lambda} has {} parts but {n} variables", lambda.len())));
    }
    let beta = p.beta();
    let m = RingMatrix::from_fn(n, n, |j, k| {
        let z = &p.z()[j];
        let e = lambda.parts()[k] + (n - k - 1) as u32;
        upow(z, e) * upow(&(Rational::one() + beta * z), k as u32)
    });
    Ok(rational_det(&m)? / vandermonde(p.z()))
}

/// Single-variable skew polynomial `G_{μ/λ}(z; β)`, zero unless `μ ≻ λ`.
///
/// `μ` must have exactly one more part than `λ`.
pub fn skew_single(mu: &Partition, lambda: &Partition, z: &Rational, beta: &Rational) -> Result<Rational> {
    if mu.len() != lambda.len() + 1 {
        return Err(Error::Dimension(format!(
            "skew {mu}/{lambda} needs one more part on top"
        )));
    }
    if !interlaces(mu, lambda) {
        return Ok(Rational::zero());
    }
    let deg = (mu.size() - lambda.size()) as u32;
    let mut acc = upow(z, deg);
    let bz = beta * z;
    for j in 1..=lambda.len() {
        if mu.part(j + 1) != lambda.part(j) {
            acc *= Rational::one() + &bz;
        }
    }
    Ok(acc)
}

/// Multivariable skew polynomial `G_{λ/ν}(z_1, ..., z_n; β)` summed over
/// interlacing chains `λ = λ^{(0)} ≻ λ^{(1)} ≻ ... ≻ λ^{(n)} = ν`, with `z_j`
/// attached to the step `λ^{(j-1)} ≻ λ^{(j)}`.
pub fn skew_multi(lambda: &Partition, nu: &Partition, z: &[Rational], beta: &Rational) -> Result<Rational> {
    if lambda.len() != nu.len() + z.len() {
        return Err(Error::Dimension(format!(
            "{lambda}/{nu} does not match {} variables",
            z.len()
        )));
    }
    let mut layer: BTreeMap<Partition, Rational> = BTreeMap::new();
    layer.insert(lambda.clone(), Rational::one());
    for zj in z {
        let mut next: BTreeMap<Partition, Rational> = BTreeMap::new();
        for (kappa, w) in &layer {
            for below in interlaced_below(kappa) {
                let s = skew_single(kappa, &below, zj, beta)?;
                let e = next.entry(below).or_insert_with(Rational::zero);
                *e += w * s;
            }
        }
        layer = next;
    }
    Ok(layer.remove(nu).unwrap_or_else(Rational::zero))
}

/// `G_λ` as the sum over all interlacing chains down to the empty diagram.
pub fn groth_chain(lambda: &Partition, p: &EvalPoint) -> Result<Rational> {
    if lambda.len() != p.len() {
        return Err(Error::Dimension(format!("{lambda} has {} parts but {} variables", lambda.len(), p.len())));
    }
    skew_multi(lambda, &Partition::zeros(0), p.z(), p.beta())
}

/// Determinant side of the Cauchy identity for `λ ⊆ L^N`.
pub fn cauchy_rhs(n: usize, l: u32, z: &[Rational], w: &[Rational], beta: &Rational) -> Result<Rational> {
    if z.len() != n || w.len() != n {
        return Err(Error::Dimension(format!("need {n} values of z and of w")));
    }
    ensure_distinct(z)?;
    ensure_distinct(w)?;
    if let Some((j, k)) = (0..n).flat_map(|j| (0..n).map(move |k| (j, k))).find(|&(j, k)| z[j] == w[k]) {
        return Err(Error::Pole(format!("z_{} equals w_{}", j + 1, k + 1)));
    }
    let e = l + n as u32;
    let m = RingMatrix::from_fn(n, n, |j, k| {
        let one = Rational::one();
        let a = upow(&z[j], e) * upow(&(&one + beta * &w[k]), n as u32 - 1);
        let b = upow(&w[k], e) * upow(&(&one + beta * &z[j]), n as u32 - 1);
        (a - b) / (&z[j] - &w[k])
    });
    // ∏_{j<k} (w_k - w_j) is (-1)^{N(N-1)/2} times the Vandermonde of w.
    let mut den = vandermonde(z) * vandermonde(w);
    if (n * n.saturating_sub(1) / 2) % 2 == 1 {
        den = -den;
    }
    Ok(rational_det(&m)? / den)
}

/// `Σ_{λ ⊆ L^N} G_λ(z) G_{λ∨}(w)`.
pub fn cauchy_lhs(n: usize, l: u32, z: &[Rational], w: &[Rational], beta: &Rational) -> Result<Rational> {
    let pz = EvalPoint::new(z.to_vec(), beta.clone())?;
    let pw = EvalPoint::new(w.to_vec(), beta.clone())?;
    let mut acc = Rational::zero();
    for lam in partitions_in_box(n, l) {
        let dual = complement(&lam, n, l)?;
        acc += groth_det(&lam, &pz)? * groth_det(&dual, &pw)?;
    }
    Ok(acc)
}

/// Closed form of `Σ_{λ ⊆ L^N} (-β)^{|λ|} G_λ(z)`; requires `β ≠ 0`.
pub fn summation_rhs(n: usize, l: u32, z: &[Rational], beta: &Rational) -> Result<Rational> {
    if z.len() != n {
        return Err(Error::Dimension(format!("need {n} values of z")));
    }
    if beta.is_zero() {
        return Err(Error::Parameter("summation formula needs a nonzero beta".into()));
    }
    ensure_distinct(z)?;
    let big = (l as usize + n) as i64;
    let minus_beta = -beta.clone();
    let m = RingMatrix::try_from_fn(n, n, |j0, k| -> Result<Rational> {
        let j = j0 + 1;
        let base = Rational::one() + beta * &z[k];
        let mut acc = Rational::zero();
        if j < n {
            let scale = crate::exact::pow(&minus_beta, j as i64 - n as i64)?;
            for m in 0..j {
                let term = binomial(big, m as i64) * upow(&base, (m + n - 1 - j) as u32);
                acc += if m % 2 == 0 { term } else { -term };
            }
            acc *= scale;
        } else {
            for m in (n - 1).max(1)..=big as usize {
                let term = binomial(big, m as i64) * upow(&base, (m - 1) as u32);
                acc -= if m % 2 == 0 { term } else { -term };
            }
        }
        Ok(acc)
    })?;
    let mut den = vandermonde(z);
    if (n * n.saturating_sub(1) / 2) % 2 == 1 {
        den = -den;
    }
    Ok(rational_det(&m)? / den)
}

/// `Σ_{λ ⊆ L^N} (-β)^{|λ|} G_λ(z)` by direct summation.
pub fn summation_lhs(n: usize, l: u32, z: &[Rational], beta: &Rational) -> Result<Rational> {
    let p = EvalPoint::new(z.to_vec(), beta.clone())?;
    let minus_beta = -beta.clone();
    let mut acc = Rational::zero();
    for lam in partitions_in_box(n, l) {
        acc += upow(&minus_beta, lam.size() as u32) * groth_det(&lam, &p)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use proptest::prelude::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn pt(z: &[Rational], b: Rational) -> EvalPoint {
        EvalPoint::new(z.to_vec(), b).unwrap()
    }

    /// Schur polynomial as a sum over semistandard tableaux with entries in `1..=N`.
    fn schur_tableaux(lambda: &Partition, z: &[Rational]) -> Rational {
        let shape: Vec<usize> = lambda.parts().iter().map(|&x| x as usize).filter(|&x| x > 0).collect();
        let cells: Vec<(usize, usize)> =
            shape.iter().enumerate().flat_map(|(i, &len)| (0..len).map(move |j| (i, j))).collect();
        let mut fill = vec![vec![0usize; shape.first().copied().unwrap_or(0)]; shape.len()];
        fn rec(
            idx: usize,
            cells: &[(usize, usize)],
            fill: &mut Vec<Vec<usize>>,
            z: &[Rational],
            acc: &mut Rational,
        ) {
            if idx == cells.len() {
                let mut mono = Rational::one();
                for &(i, j) in cells {
                    mono *= &z[fill[i][j] - 1];
                }
                *acc += mono;
                return;
            }
            let (i, j) = cells[idx];
            let lo_row = if j > 0 { fill[i][j - 1] } else { 1 };
            let lo_col = if i > 0 { fill[i - 1][j] + 1 } else { 1 };
            for v in lo_row.max(lo_col)..=z.len() {
                fill[i][j] = v;
                rec(idx + 1, cells, fill, z, acc);
            }
        }
        let mut acc = Rational::zero();
        rec(0, &cells, &mut fill, z, &mut acc);
        acc
    }

    fn generic(n: usize, shift: i64) -> Vec<Rational> {
        (0..n as i64).map(|i| rat(2 * i + 3 + shift, i + 2 + shift.abs())).collect()
    }

    #[test]
    fn small_values() {
        let z = [int(1), int(2)];
        assert_eq!(groth_det(&p(&[0, 0]), &pt(&z, int(7))).unwrap(), int(1));
        assert_eq!(groth_det(&p(&[1, 0]), &pt(&z, int(1))).unwrap(), int(5));
        let z3 = [int(1), int(2), int(3)];
        // s_{(2,1)} = m_{(2,1)} + 2 m_{(1,1,1)} = 48 + 12 at (1, 2, 3).
        assert_eq!(groth_det(&p(&[2, 1, 0]), &pt(&z3, int(0))).unwrap(), int(60));
    }

    #[test]
    fn first_row_hand_expansion() {
        let (z1, z2, b) = (rat(3, 5), rat(-7, 2), rat(2, 3));
        let want = &z1 + &z2 + &b * &z1 * &z2;
        assert_eq!(groth_det(&p(&[1, 0]), &pt(&[z1.clone(), z2.clone()], b.clone())).unwrap(), want);
        assert_eq!(groth_chain(&p(&[1, 0]), &pt(&[z1, z2], b)).unwrap(), want);
    }

    #[test]
    fn repeated_variables_rejected() {
        let err = EvalPoint::new(vec![int(2), int(2)], int(1));
        assert!(matches!(err, Err(Error::DegeneratePoint(_))));
    }

    #[test]
    fn skew_single_examples() {
        let (z, b) = (rat(2, 7), rat(-3, 4));
        assert_eq!(skew_single(&p(&[1, 0]), &p(&[0]), &z, &b).unwrap(), z);
        assert_eq!(
            skew_single(&p(&[2, 0]), &p(&[1]), &z, &b).unwrap(),
            &z * (int(1) + &b * &z)
        );
        assert!(skew_single(&p(&[4, 3, 3, 1, 0]), &p(&[3, 2, 1, 1]), &z, &b).unwrap().is_zero());
        // β = 0 leaves the monomial z^{|μ|-|λ|}.
        assert_eq!(
            skew_single(&p(&[4, 3, 3, 1, 0]), &p(&[3, 3, 1, 1]), &z, &int(0)).unwrap(),
            upow(&z, 3)
        );
    }

    #[test]
    fn schur_limit_matches_tableaux() {
        let z = [rat(1, 2), int(3), rat(-2, 5)];
        for lam in partitions_in_box(3, 3) {
            let g = groth_det(&lam, &pt(&z, int(0))).unwrap();
            assert_eq!(g, schur_tableaux(&lam, &z), "{lam}");
        }
    }

    #[test]
    fn chain_sum_equals_determinant() {
        for (shift, b) in [(0, rat(1, 3)), (5, int(-1)), (11, rat(-7, 2))] {
            let z = generic(3, shift);
            for lam in partitions_in_box(3, 3) {
                let point = pt(&z, b.clone());
                assert_eq!(groth_chain(&lam, &point).unwrap(), groth_det(&lam, &point).unwrap());
            }
        }
    }

    #[test]
    fn addition_theorem_exhaustive() {
        let b = rat(-5, 3);
        let z = generic(3, 2);
        for mu in partitions_in_box(3, 3) {
            let lhs = groth_det(&mu, &pt(&z, b.clone())).unwrap();
            let mut rhs = Rational::zero();
            for lam in partitions_in_box(2, 3) {
                let s = skew_single(&mu, &lam, &z[2], &b).unwrap();
                if !s.is_zero() {
                    rhs += s * groth_det(&lam, &pt(&z[..2], b.clone())).unwrap();
                }
            }
            assert_eq!(lhs, rhs, "{mu}");
        }
    }

    #[test]
    fn multivariable_branching() {
        let b = rat(3, 4);
        let zs = generic(3, 1);
        for lam in partitions_in_box(3, 2) {
            let whole = groth_det(&lam, &pt(&zs, b.clone())).unwrap();
            let mut sum = Rational::zero();
            for nu in partitions_in_box(1, 2) {
                let s = skew_multi(&lam, &nu, &zs[..2], &b).unwrap();
                sum += s * groth_det(&nu, &pt(&zs[2..], b.clone())).unwrap();
            }
            assert_eq!(whole, sum, "{lam}");
        }
        // A single variable reduces to the closed form.
        let (mu, lam) = (p(&[2, 1, 0]), p(&[1, 1]));
        assert_eq!(
            skew_multi(&mu, &lam, &zs[..1], &b).unwrap(),
            skew_single(&mu, &lam, &zs[0], &b).unwrap()
        );
    }

    #[test]
    fn cauchy_small_cases() {
        let (z, w, b) = (rat(2, 3), rat(-5, 7), rat(1, 2));
        assert_eq!(cauchy_rhs(1, 1, &[z.clone()], &[w.clone()], &b).unwrap(), &z + &w);
        assert!(matches!(
            cauchy_rhs(1, 1, &[z.clone()], &[z.clone()], &b),
            Err(Error::Pole(_))
        ));
        for n in 1..=3 {
            for l in 0..=3 {
                let (z, w) = (generic(n, 1), generic(n, -13));
                assert_eq!(
                    cauchy_lhs(n, l, &z, &w, &b).unwrap(),
                    cauchy_rhs(n, l, &z, &w, &b).unwrap(),
                    "N={n} L={l}"
                );
            }
        }
    }

    #[test]
    fn cauchy_schur_limit() {
        let (z, w) = (generic(2, 3), generic(2, -17));
        let mut lhs = Rational::zero();
        for lam in partitions_in_box(2, 2) {
            lhs += schur_tableaux(&lam, &z) * schur_tableaux(&complement(&lam, 2, 2).unwrap(), &w);
        }
        assert_eq!(lhs, cauchy_rhs(2, 2, &z, &w, &int(0)).unwrap());
    }

    #[test]
    fn summation_small_cases() {
        let (z, b) = (rat(4, 9), rat(-2, 3));
        assert_eq!(summation_rhs(1, 1, &[z.clone()], &b).unwrap(), int(1) - &b * &z);
        assert_eq!(summation_rhs(2, 0, &generic(2, 0), &b).unwrap(), int(1));
        assert!(matches!(summation_rhs(1, 1, &[z], &int(0)), Err(Error::Parameter(_))));
        for n in 1..=3 {
            for l in 0..=3 {
                let z = generic(n, 7);
                assert_eq!(
                    summation_lhs(n, l, &z, &b).unwrap(),
                    summation_rhs(n, l, &z, &b).unwrap(),
                    "N={n} L={l}"
                );
            }
        }
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-9i64..=9, 1i64..=6).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #[test]
        fn symmetric_in_the_variables(
            a in small_rational(), b in small_rational(), c in small_rational(),
            beta in small_rational(), idx in 0usize..10,
        ) {
            prop_assume!(a != b && b != c && a != c);
            let lam = partitions_in_box(3, 2)[idx].clone();
            let g1 = groth_det(&lam, &pt(&[a.clone(), b.clone(), c.clone()], beta.clone())).unwrap();
            let g2 = groth_det(&lam, &pt(&[c, a, b], beta)).unwrap();
            prop_assert_eq!(g1, g2);
        }
    }
}
