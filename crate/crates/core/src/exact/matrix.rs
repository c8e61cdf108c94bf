use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::laurent::LaurentPoly;
use super::rational::Rational;
use super::Ring;
use crate::error::{Error, Result};

/// Dense row-major matrix over an exact commutative ring.
#[derive(Clone, PartialEq)]
pub struct RingMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Ring> RingMatrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn try_from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Result<T>,
    ) -> Result<Self> {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j)?);
            }
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn map<U: Ring>(&self, f: impl FnMut(&T) -> U) -> RingMatrix<U> {
        RingMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * rhs.cols + j;
                    out.data[idx] = out.data[idx].clone() + a.clone() * b.clone();
                }
            }
        }
        Ok(out)
    }

    fn zip(&self, rhs: &Self, what: &str, f: impl Fn(T, T) -> T) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Dimension(format!(
                "cannot {what} {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| f(a.clone(), b.clone()))
            .collect();
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.zip(rhs, "add", |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.zip(rhs, "subtract", |a, b| a - b)
    }

    /// Commutator `self * rhs - rhs * self`.
    pub fn commutator(&self, rhs: &Self) -> Result<Self> {
        self.mul(rhs)?.sub(&rhs.mul(self)?)
    }

    /// Kronecker product; `self` is the outer (more significant) factor.
    pub fn kron(&self, rhs: &Self) -> Self {
        Self::from_fn(self.rows * rhs.rows, self.cols * rhs.cols, |i, j| {
            self.get(i / rhs.rows, j / rhs.cols).clone() * rhs.get(i % rhs.rows, j % rhs.cols).clone()
        })
    }

    /// Lift an operator on factors `(first, second)` of a tensor product
    /// with factor dimensions `dims` (factor 0 most significant) to the
    /// whole space. `self` is indexed as `first ⊗ second`.
    pub fn on_factors(&self, dims: &[usize], first: usize, second: usize) -> Result<Self> {
        let (d1, d2) = (dims[first], dims[second]);
        if first == second || self.rows != d1 * d2 || !self.is_square() {
            return Err(Error::Dimension(format!(
                "{}x{} operator cannot act on factors {first},{second} of {dims:?}",
                self.rows, self.cols
            )));
        }
        let total: usize = dims.iter().product();
        let digits = |mut idx: usize| {
            let mut d = vec![0; dims.len()];
            for f in (0..dims.len()).rev() {
                d[f] = idx % dims[f];
                idx /= dims[f];
            }
            d
        };
        let mut out = Self::zeros(total, total);
        for col in 0..total {
            let cd = digits(col);
            let local_col = cd[first] * d2 + cd[second];
            for local_row in 0..d1 * d2 {
                let x = self.get(local_row, local_col);
                if x.is_zero() {
                    continue;
                }
                let mut rd = cd.clone();
                rd[first] = local_row / d2;
                rd[second] = local_row % d2;
                let row = rd.iter().zip(dims).fold(0, |acc, (d, n)| acc * n + d);
                out.set(row, col, x.clone());
            }
        }
        Ok(out)
    }

    /// Division-free determinant by Laplace expansion over column subsets,
    /// `O(2^n n)` ring operations. Works over any commutative ring.
    pub fn det(&self) -> Result<T> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "determinant of a non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(T::one());
        }
        assert!(n <= 24, "subset expansion limited to n <= 24");
        let mut dp: Vec<Option<T>> = vec![None; 1 << n];
        dp[0] = Some(T::one());
        for mask in 0usize..(1 << n) {
            let Some(acc) = dp[mask].take() else { continue };
            let row = mask.count_ones() as usize;
            if row == n {
                return Ok(acc);
            }
            for c in 0..n {
                if mask & (1 << c) != 0 {
                    continue;
                }
                let a = self.get(row, c);
                if a.is_zero() {
                    continue;
                }
                let term = acc.clone() * a.clone();
                let term = if (mask >> (c + 1)).count_ones() % 2 == 1 { -term } else { term };
                let slot = &mut dp[mask | (1 << c)];
                *slot = Some(match slot.take() {
                    Some(s) => s + term,
                    None => term,
                });
            }
        }
        Ok(T::zero())
    }
}

impl RingMatrix<Rational> {
    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a.get(r, col).is_zero())
                .ok_or_else(|| Error::Evaluation("matrix is singular".into()))?;
            if pivot != col {
                for j in 0..n {
                    a.data.swap(pivot * n + j, col * n + j);
                    inv.data.swap(pivot * n + j, col * n + j);
                }
            }
            let p = a.get(col, col).recip();
            for j in 0..n {
                a.data[col * n + j] *= &p;
                inv.data[col * n + j] *= &p;
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let f = a.get(r, col).clone();
                for j in 0..n {
                    let da = a.get(col, j) * &f;
                    let di = inv.get(col, j) * &f;
                    a.data[r * n + j] -= da;
                    inv.data[r * n + j] -= di;
                }
            }
        }
        Ok(inv)
    }
}

impl RingMatrix<LaurentPoly> {
    pub fn eval(&self, at: &Rational) -> Result<RingMatrix<Rational>> {
        RingMatrix::try_from_fn(self.rows, self.cols, |i, j| self.get(i, j).eval(at))
    }

    pub fn derivative(&self) -> Self {
        self.map(LaurentPoly::derivative)
    }

    /// Multiply every entry by `u^k`.
    pub fn shift(&self, k: i32) -> Self {
        self.map(|p| p.shift(k))
    }
}

/// Exact determinant of a rational matrix.
///
/// Rows are scaled to integers and reduced with fraction-free (Bareiss)
/// elimination, so every intermediate is an exact integer minor.
pub fn rational_det(m: &RingMatrix<Rational>) -> Result<Rational> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "determinant of a non-square {}x{} matrix",
            m.rows, m.cols
        )));
    }
    let n = m.rows;
    if n == 0 {
        return Ok(Rational::one());
    }
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for i in 0..n {
        let row = &m.data[i * n..(i + 1) * n];
        let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        a.push(row.iter().map(|x| x.numer() * (&l / x.denom())).collect());
        scale *= l;
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return Ok(Rational::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let det = Rational::new(a[n - 1][n - 1].clone(), scale);
    Ok(if negate { -det } else { det })
}

impl<T: fmt::Debug> fmt::Debug for RingMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RingMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[i * self.cols..(i + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use proptest::prelude::*;

    fn ints(rows: usize, cols: usize, v: &[i64]) -> RingMatrix<Rational> {
        RingMatrix::new(rows, cols, v.iter().map(|&x| int(x)).collect()).unwrap()
    }

    #[test]
    fn identity_and_small_cases() {
        assert_eq!(rational_det(&RingMatrix::identity(3)).unwrap(), int(1));
        assert_eq!(rational_det(&ints(2, 2, &[1, 2, 3, 4])).unwrap(), int(-2));
        assert_eq!(rational_det(&ints(0, 0, &[])).unwrap(), int(1));
    }

    #[test]
    fn vandermonde_on_one_two_three() {
        let z = [1i64, 2, 3];
        let m = RingMatrix::from_fn(3, 3, |i, j| int(z[i].pow(j as u32)));
        // (2-1)(3-1)(3-2)
        assert_eq!(rational_det(&m).unwrap(), int(2));
        assert_eq!(m.det().unwrap(), int(2));
    }

    #[test]
    fn non_square_is_a_dimension_error() {
        let m = ints(2, 3, &[1, 2, 3, 4, 5, 6]);
        assert!(matches!(rational_det(&m), Err(Error::Dimension(_))));
        assert!(matches!(m.det(), Err(Error::Dimension(_))));
    }

    #[test]
    fn pivoting_through_zero_leading_entry() {
        let m = ints(3, 3, &[0, 1, 2, 1, 0, 3, 4, -3, 8]);
        assert_eq!(rational_det(&m).unwrap(), m.det().unwrap());
        assert_eq!(rational_det(&m).unwrap(), int(-2));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = RingMatrix::new(2, 2, vec![rat(1, 2), int(3), int(-1), rat(2, 3)]).unwrap();
        let p = m.mul(&m.inverse().unwrap()).unwrap();
        assert_eq!(p, RingMatrix::identity(2));
        assert!(ints(2, 2, &[1, 2, 2, 4]).inverse().is_err());
    }

    #[test]
    fn on_factors_matches_kron_for_adjacent_pairs() {
        let x = RingMatrix::from_fn(4, 4, |i, j| int((3 * i + j) as i64));
        let id = RingMatrix::<Rational>::identity(2);
        assert_eq!(x.on_factors(&[2, 2, 2], 0, 1).unwrap(), x.kron(&id));
        assert_eq!(x.on_factors(&[2, 2, 2], 1, 2).unwrap(), id.kron(&x));
    }

    fn arb_matrix(n: usize) -> impl Strategy<Value = RingMatrix<Rational>> {
        prop::collection::vec((-9i64..10, 1i64..6), n * n).prop_map(move |v| {
            RingMatrix::new(n, n, v.into_iter().map(|(a, b)| rat(a, b)).collect()).unwrap()
        })
    }

    proptest! {
        #[test]
        fn det_is_multiplicative((a, b) in (1usize..6).prop_flat_map(|n| (arb_matrix(n), arb_matrix(n)))) {
            let ab = a.mul(&b).unwrap();
            prop_assert_eq!(rational_det(&ab).unwrap(), rational_det(&a).unwrap() * rational_det(&b).unwrap());
        }

        #[test]
        fn bareiss_agrees_with_expansion(a in (1usize..6).prop_flat_map(arb_matrix)) {
            prop_assert_eq!(rational_det(&a).unwrap(), a.det().unwrap());
        }
    }
}
