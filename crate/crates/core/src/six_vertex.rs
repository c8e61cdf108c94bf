//! A six-vertex `L`-operator family with parameters `α_1..α_6` and `t`,
//! intertwined by the six-vertex `R`-matrix
//!
//! ```text
//! R(u,v) = [[f,0,0,0],[0,t,g,0],[0,g,1,0],[0,0,0,f]],
//! f = (u² - tv²)/(u² - v²),  g = (1-t)uv/(u² - v²).
//! ```
//!
//! At `t = 0` this is the five-vertex `R`-matrix, and the choice
//! `t = α_4 = 0`, `α_1 = α_2 = α_3 = 1`, `α_5 = -1/β`, `α_6 = -1` gives the
//! five-vertex `L`-operator.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{int, Rational, RingMatrix};
use crate::five_vertex::check_rll_with;

/// `α_1..α_6` and `t`. Built through [`SixVertexParams::new`] the pair of
/// constraints is guaranteed to hold.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SixVertexParams {
    #[serde(with = "crate::serde_rational::vec")]
    alpha: Vec<Rational>,
    #[serde(with = "crate::serde_rational")]
    t: Rational,
}

impl SixVertexParams {
    /// Validated constructor.
    pub fn new(alpha: [Rational; 6], t: Rational) -> Result<Self> {
        let p = Self::new_unchecked(alpha, t);
        p.validate()?;
        Ok(p)
    }

    /// No constraint check; used for negative controls.
    pub fn new_unchecked(alpha: [Rational; 6], t: Rational) -> Self {
        Self { alpha: alpha.to_vec(), t }
    }

    /// Re-checks the constraints, e.g. after deserialization.
    pub fn validate(&self) -> Result<()> {
        if self.alpha.len() != 6 {
            return Err(Error::Parameter(format!("expected 6 alphas, got {}", self.alpha.len())));
        }
        let [first, second] = self.constraint_residuals();
        if !first.is_zero() {
            return Err(Error::Parameter(format!(
                "(1-t)a1a2 + a3a6 - a4a5 = {first}, expected 0"
            )));
        }
        if !second.is_zero() {
            return Err(Error::Parameter(format!(
                "(t^2-t)a1a2 + t^2a3a6 - a4a5 = {second}, expected 0"
            )));
        }
        Ok(())
    }

    /// `α_k` for `k = 1..=6`.
    pub fn alpha(&self, k: usize) -> &Rational {
        &self.alpha[k - 1]
    }

    pub fn t(&self) -> &Rational {
        &self.t
    }

    pub fn constraint_residuals(&self) -> [Rational; 2] {
        let a = |k: usize| &self.alpha[k - 1];
        let t = &self.t;
        let a12 = a(1) * a(2);
        let a36 = a(3) * a(6);
        let a45 = a(4) * a(5);
        [
            (int(1) - t) * &a12 + &a36 - &a45,
            (t * t - t) * &a12 + t * t * &a36 - &a45,
        ]
    }

    pub fn satisfies_constraints(&self) -> bool {
        self.constraint_residuals().iter().all(Zero::is_zero)
    }

    /// For `t² ≠ 1` the constraints say `α_3 α_6 = -α_1 α_2` and
    /// `α_4 α_5 = -t α_1 α_2`; this fills in `α_5` and `α_6`.
    pub fn complete(t: Rational, a1: Rational, a2: Rational, a3: Rational, a4: Rational) -> Result<Self> {
        if &t * &t == Rational::one() {
            return Err(Error::Parameter("t = ±1 leaves the constraints degenerate".into()));
        }
        if a3.is_zero() || a4.is_zero() {
            return Err(Error::Parameter("a3 and a4 must be nonzero to solve for a5, a6".into()));
        }
        let a12 = &a1 * &a2;
        let a6 = -&a12 / &a3;
        let a5 = -&t * &a12 / &a4;
        Self::new([a1, a2, a3, a4, a5, a6], t)
    }

    /// `t = α_4 = 0`, `α_1 = α_2 = α_3 = 1`, `α_5 = -1/β`, `α_6 = -1`.
    pub fn five_vertex(beta: &Rational) -> Result<Self> {
        if beta.is_zero() {
            return Err(Error::Parameter("beta must be nonzero".into()));
        }
        Self::new([int(1), int(1), int(1), int(0), -beta.recip(), int(-1)], int(0))
    }

    /// `α_1 = α_2 = α_3 = α_5 = 1`, `α_6 = -1`, `α_4 = -t`: the `L`-operator
    /// becomes `(u - 1/u) R(u, 1)`.
    pub fn r_matrix_point(t: Rational) -> Result<Self> {
        Self::new([int(1), int(1), int(1), -t.clone(), int(1), int(-1)], t)
    }
}

/// Six-vertex `R(u, v)`.
pub fn r_six(u: &Rational, v: &Rational, t: &Rational) -> Result<RingMatrix<Rational>> {
    let d = u * u - v * v;
    if d.is_zero() {
        return Err(Error::Pole(format!("u^2 = v^2 at u = {u}, v = {v}")));
    }
    let f = (u * u - t * v * v) / &d;
    let g = (int(1) - t) * u * v / &d;
    let z = Rational::zero;
    RingMatrix::new(
        4,
        4,
        vec![
            f.clone(), z(), z(), z(),
            z(), t.clone(), g.clone(), z(),
            z(), g, Rational::one(), z(),
            z(), z(), z(), f,
        ],
    )
}

/// The `L`-operator on `W_a ⊗ V_j`, row `2a' + j'`, column `2a + j`.
///
/// The bottom-right entry is `α_5 u + α_6 t u^{-1}`; with `α_6 t u` there
/// the relation fails for generic `t`.
pub fn l_six(u: &Rational, p: &SixVertexParams) -> Result<RingMatrix<Rational>> {
    if u.is_zero() {
        return Err(Error::Pole("spectral parameter u = 0".into()));
    }
    let a = |k: usize| p.alpha(k);
    let t = p.t();
    let inv = u.recip();
    let one_t = int(1) - t;
    let z = Rational::zero;
    RingMatrix::new(
        4,
        4,
        vec![
            a(3) * u + a(4) * &inv, z(), z(), z(),
            z(), a(3) * t * u + a(4) * &inv, &one_t * a(1), z(),
            z(), &one_t * a(2), a(5) * u + a(6) * &inv, z(),
            z(), z(), z(), a(5) * u + a(6) * t * &inv,
        ],
    )
}

/// Exact `R_{ab} L_{aj}(u) L_{bj}(v) = L_{bj}(v) L_{aj}(u) R_{ab}` on the 8-dimensional space.
pub fn check_rll_six(u: &Rational, v: &Rational, p: &SixVertexParams) -> Result<bool> {
    if v.is_zero() {
        return Err(Error::Pole("spectral parameter v = 0".into()));
    }
    check_rll_with(&r_six(u, v, p.t())?, &l_six(u, p)?, &l_six(v, p)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::five_vertex::{check_rll, l_matrix, r_matrix};

    fn generic() -> SixVertexParams {
        SixVertexParams::new([int(1), int(1), int(2), int(1), rat(-1, 2), rat(-1, 2)], rat(1, 2)).unwrap()
    }

    #[test]
    fn constraints_are_checked() {
        let bad = [int(1), int(1), int(2), int(1), rat(-1, 2), rat(1, 2)];
        let err = SixVertexParams::new(bad.clone(), rat(1, 2)).unwrap_err();
        assert!(matches!(err, Error::Parameter(ref m) if m.starts_with("(1-t)")));
        assert!(!SixVertexParams::new_unchecked(bad, rat(1, 2)).satisfies_constraints());
        assert_eq!(SixVertexParams::complete(rat(1, 2), int(1), int(1), int(2), int(1)).unwrap(), generic());
    }

    #[test]
    fn generic_point_intertwines() {
        let p = generic();
        for (u, v) in [(int(2), int(3)), (rat(-3, 5), rat(7, 4)), (rat(1, 3), rat(-2, 9))] {
            assert!(check_rll_six(&u, &v, &p).unwrap());
        }
    }

    #[test]
    fn literal_corner_entry_fails() {
        let p = generic();
        let (u, v) = (int(2), int(3));
        let mut lu = l_six(&u, &p).unwrap();
        let mut lv = l_six(&v, &p).unwrap();
        for (l, x) in [(&mut lu, &u), (&mut lv, &v)] {
            l.set(3, 3, p.alpha(5) * x + p.alpha(6) * p.t() * x);
        }
        assert!(!check_rll_with(&r_six(&u, &v, p.t()).unwrap(), &lu, &lv).unwrap());
    }

    #[test]
    fn reduces_to_r_matrix() {
        let t = rat(1, 2);
        let p = SixVertexParams::r_matrix_point(t.clone()).unwrap();
        let u = rat(5, 3);
        let scaled = r_six(&u, &int(1), &t).unwrap().map(|x| x * (&u - u.recip()));
        assert_eq!(l_six(&u, &p).unwrap(), scaled);
        assert!(check_rll_six(&rat(2, 7), &rat(-5, 4), &p).unwrap());
    }

    #[test]
    fn reduces_to_five_vertex() {
        let b = int(-1);
        let p = SixVertexParams::five_vertex(&b).unwrap();
        for u in [int(2), rat(-3, 7)] {
            assert_eq!(l_six(&u, &p).unwrap(), l_matrix(&u, &b).unwrap());
        }
        let (u, v) = (int(2), int(3));
        assert_eq!(r_six(&u, &v, &int(0)).unwrap(), r_matrix(&u, &v).unwrap());
        assert!(check_rll_six(&u, &v, &p).unwrap());
        assert_eq!(check_rll_six(&u, &v, &p).unwrap(), check_rll(&u, &v, &b).unwrap());
    }

    #[test]
    fn perturbed_parameters_fail() {
        let p = generic();
        let mut alpha: Vec<Rational> = (1..=6).map(|k| p.alpha(k).clone()).collect();
        alpha[5] += int(1);
        let bad = SixVertexParams::new_unchecked(alpha.try_into().unwrap(), p.t().clone());
        assert!(!check_rll_six(&int(2), &int(3), &bad).unwrap());
    }

    #[test]
    fn serde_round_trip() {
        let p = generic();
        let s = serde_json::to_string(&p).unwrap();
        let back: SixVertexParams = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        back.validate().unwrap();
    }
}
