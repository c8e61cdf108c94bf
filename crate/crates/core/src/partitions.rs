//! Young diagrams, plane partitions and their particle encodings.
//!
//! A [`Partition`] keeps its trailing zeros: the fermion positions and the
//! complement inside an `L x N` box both depend on the declared length.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Weakly decreasing sequence of nonnegative integers with explicit length.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if let Some(w) = parts.windows(2).find(|w| w[0] < w[1]) {
            return Err(Error::Contract(format!(
                "partition parts must be weakly decreasing, found {} < {} in {parts:?}",
                w[0], w[1]
            )));
        }
        Ok(Self(parts))
    }

    /// The all-zero partition of length `n`.
    pub fn zeros(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|λ|`.
    pub fn size(&self) -> u64 {
        self.0.iter().map(|&p| p as u64).sum()
    }

    /// Largest part, 0 for the empty partition.
    pub fn first(&self) -> u32 {
        self.0.first().copied().unwrap_or(0)
    }

    /// 1-based part `λ_k`, zero beyond the stored length.
    pub fn part(&self, k: usize) -> u32 {
        if k == 0 {
            return self.first();
        }
        self.0.get(k - 1).copied().unwrap_or(0)
    }

    /// Same diagram with length exactly `n`; fails if a nonzero part would be cut.
    pub fn padded(&self, n: usize) -> Result<Self> {
        if self.0.iter().skip(n).any(|&p| p > 0) {
            return Err(Error::Contract(format!("{self} has more than {n} nonzero parts")));
        }
        let mut v: Vec<u32> = self.0.iter().copied().take(n).collect();
        v.resize(n, 0);
        Ok(Self(v))
    }

    /// Drops trailing zeros.
    pub fn trimmed(&self) -> Self {
        let mut v = self.0.clone();
        while v.last() == Some(&0) {
            v.pop();
        }
        Self(v)
    }

    /// Whether the diagram fits in `n` rows of width `l`.
    pub fn fits(&self, n: usize, l: u32) -> bool {
        self.first() <= l && self.0.iter().skip(n).all(|&p| p == 0)
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition{self}")
    }
}

/// All partitions with exactly `n` parts, each at most `l`, in ascending
/// lexicographic order.
pub fn partitions_in_box(n: usize, l: u32) -> Vec<Partition> {
    fn rec(n: usize, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if prefix.len() == n {
            out.push(Partition(prefix.clone()));
            return;
        }
        for p in 0..=max {
            prefix.push(p);
            rec(n, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, l, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Partitions `κ` of length `μ.len() - 1` with `μ ≻ κ`, ascending lexicographically.
pub fn interlaced_below(mu: &Partition) -> Vec<Partition> {
    let n = mu.len().saturating_sub(1);
    let mut out = Vec::new();
    fn rec(mu: &Partition, n: usize, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        let j = prefix.len() + 1;
        if j > n {
            out.push(Partition(prefix.clone()));
            return;
        }
        for v in mu.part(j + 1)..=mu.part(j) {
            prefix.push(v);
            rec(mu, n, prefix, out);
            prefix.pop();
        }
    }
    if mu.is_empty() {
        return out;
    }
    rec(mu, n, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Strictly increasing particle positions `1 <= x_1 < ... < x_N <= M`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct FermionConfig {
    positions: Vec<usize>,
    sites: usize,
}

impl FermionConfig {
    pub fn new(positions: Vec<usize>, sites: usize) -> Result<Self> {
        if positions.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Contract(format!(
                "positions must be strictly increasing: {positions:?}"
            )));
        }
        if positions.first().is_some_and(|&x| x < 1) || positions.last().is_some_and(|&x| x > sites)
        {
            return Err(Error::Contract(format!(
                "positions {positions:?} outside 1..={sites}"
            )));
        }
        Ok(Self { positions, sites })
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn particles(&self) -> usize {
        self.positions.len()
    }

    /// Bitmask with bit `x - 1` set for every occupied site `x`.
    pub fn to_mask(&self) -> u32 {
        self.positions.iter().fold(0, |m, &x| m | (1 << (x - 1)))
    }

    pub fn from_mask(mask: u32, sites: usize) -> Self {
        let positions = (0..sites).filter(|b| mask & (1 << b) != 0).map(|b| b + 1).collect();
        Self { positions, sites }
    }

    /// The diagram `λ_j = x_{N-j+1} - N + j - 1`.
    pub fn to_partition(&self) -> Partition {
        let n = self.positions.len();
        Partition(
            (1..=n)
                .map(|j| (self.positions[n - j] + j - n - 1) as u32)
                .collect(),
        )
    }

    /// Mirror image `x_j -> M - x_{N+1-j} + 1`.
    pub fn reversed(&self) -> Self {
        let positions = self.positions.iter().rev().map(|&x| self.sites - x + 1).collect();
        Self { positions, sites: self.sites }
    }
}

/// `x_j = λ_{N-j+1} + j` on `M` sites.
pub fn positions_from_partition(lambda: &Partition, n: usize, m: usize) -> Result<FermionConfig> {
    if lambda.len() != n {
        return Err(Error::Dimension(format!("{lambda} does not have {n} parts")));
    }
    if n > m || lambda.first() as usize > m - n {
        return Err(Error::OutOfBox {
            rows: n,
            cols: m.saturating_sub(n),
            detail: format!("{lambda} on {m} sites"),
        });
    }
    let positions = (1..=n).map(|j| lambda.part(n - j + 1) as usize + j).collect();
    FermionConfig::new(positions, m)
}

/// `λ∨_j = L - λ_{N+1-j}`, the complement inside the `N x L` rectangle.
pub fn complement(lambda: &Partition, n: usize, l: u32) -> Result<Partition> {
    if lambda.len() != n {
        return Err(Error::Dimension(format!("{lambda} does not have {n} parts")));
    }
    if lambda.first() > l {
        return Err(Error::OutOfBox { rows: n, cols: l as usize, detail: lambda.to_string() });
    }
    Ok(Partition((1..=n).map(|j| l - lambda.part(n + 1 - j)).collect()))
}

/// `μ ≻ λ`: `μ_j >= λ_j >= μ_{j+1}`. Both sides are zero padded so that `μ`
/// has one more part than `λ`.
pub fn interlaces(mu: &Partition, lambda: &Partition) -> bool {
    let n = lambda.len().max(mu.len().saturating_sub(1));
    if mu.parts().iter().skip(n + 1).any(|&p| p > 0) || lambda.parts().iter().skip(n).any(|&p| p > 0)
    {
        return false;
    }
    (1..=n).all(|j| mu.part(j) >= lambda.part(j) && lambda.part(j) >= mu.part(j + 1))
}

/// Occupation numbers `n_0, ..., n_{M-1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BosonConfig(Vec<u32>);

impl BosonConfig {
    pub fn new(occupations: Vec<u32>) -> Self {
        Self(occupations)
    }

    pub fn occupations(&self) -> &[u32] {
        &self.0
    }

    pub fn sites(&self) -> usize {
        self.0.len()
    }

    pub fn particles(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `λ = ((M-1)^{n_{M-1}}, ..., 1^{n_1}, 0^{n_0})`.
    pub fn to_partition(&self) -> Partition {
        let mut v = Vec::with_capacity(self.particles() as usize);
        for (k, &n) in self.0.iter().enumerate().rev() {
            v.extend(std::iter::repeat_n(k as u32, n as usize));
        }
        Partition(v)
    }

    /// Tail sums `Σ_{k >= j} n_k` for `j = 0..M`.
    pub fn tail_sums(&self) -> Vec<u32> {
        let mut out = vec![0; self.0.len() + 1];
        for j in (0..self.0.len()).rev() {
            out[j] = out[j + 1] + self.0[j];
        }
        out
    }
}

/// Multiplicities of `0..M-1` in `λ`.
pub fn occupation_from_partition(lambda: &Partition, n: usize, m: usize) -> Result<BosonConfig> {
    if lambda.len() != n {
        return Err(Error::Dimension(format!("{lambda} does not have {n} parts")));
    }
    if m == 0 || lambda.first() as usize >= m {
        return Err(Error::OutOfBox {
            rows: n,
            cols: m.saturating_sub(1),
            detail: format!("{lambda} on {m} sites"),
        });
    }
    let mut occ = vec![0; m];
    for &p in lambda.parts() {
        occ[p as usize] += 1;
    }
    Ok(BosonConfig(occ))
}

/// `{m} ▷ {n}`: tail sums from site 1 on differ by 0 or 1.
pub fn admissible(m: &BosonConfig, n: &BosonConfig) -> Result<bool> {
    if m.sites() != n.sites() {
        return Err(Error::Dimension(format!(
            "configurations on {} and {} sites",
            m.sites(),
            n.sites()
        )));
    }
    if m.particles() != n.particles() + 1 {
        return Err(Error::Contract(format!(
            "particle numbers {} and {} do not differ by one",
            m.particles(),
            n.particles()
        )));
    }
    let (tm, tn) = (m.tail_sums(), n.tail_sums());
    Ok((1..m.sites()).all(|j| tm[j] >= tn[j] && tm[j] - tn[j] <= 1))
}

/// Two-dimensional array with rows and columns weakly decreasing.
///
/// Stored without zero rows or trailing zeros, so equal plane partitions
/// compare equal regardless of the box they were built in.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<u32>>", into = "Vec<Vec<u32>>")]
pub struct PlanePartition {
    rows: Vec<Vec<u32>>,
}

impl PlanePartition {
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self> {
        let get = |i: usize, j: usize| rows.get(i).and_then(|r| r.get(j)).copied().unwrap_or(0);
        for (i, row) in rows.iter().enumerate() {
            for j in 0..row.len() {
                let v = row[j];
                if v < get(i, j + 1) || v < get(i + 1, j) {
                    return Err(Error::Contract(format!(
                        "plane partition not decreasing at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
            // Entries beyond a short row are zero and must not sit above positive ones.
            if let Some(next) = rows.get(i + 1) {
                if next.iter().skip(row.len()).any(|&v| v > 0) {
                    return Err(Error::Contract(format!("row {} is longer than row {}", i + 2, i + 1)));
                }
            }
        }
        let mut rows: Vec<Vec<u32>> = rows
            .into_iter()
            .map(|mut r| {
                while r.last() == Some(&0) {
                    r.pop();
                }
                r
            })
            .collect();
        while rows.last().is_some_and(Vec::is_empty) {
            rows.pop();
        }
        Ok(Self { rows })
    }

    pub fn empty() -> Self {
        Self { rows: Vec::new() }
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// 1-based entry `π_{ij}`, zero outside the support.
    pub fn get(&self, i: usize, j: usize) -> u32 {
        if i == 0 || j == 0 {
            return 0;
        }
        self.rows.get(i - 1).and_then(|r| r.get(j - 1)).copied().unwrap_or(0)
    }

    pub fn size(&self) -> u64 {
        self.rows.iter().flatten().map(|&v| v as u64).sum()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn height(&self) -> u32 {
        self.get(1, 1)
    }

    pub fn fits(&self, n1: usize, n2: usize, l: u32) -> bool {
        self.num_rows() <= n1 && self.num_cols() <= n2 && self.height() <= l
    }
}

impl TryFrom<Vec<Vec<u32>>> for PlanePartition {
    type Error = Error;
    fn try_from(v: Vec<Vec<u32>>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<PlanePartition> for Vec<Vec<u32>> {
    fn from(p: PlanePartition) -> Self {
        p.rows
    }
}

/// The `m`-th diagonal slice, `π^{(m)}_k = π_{k, k+m}` for `m >= 0` and
/// `π_{k-m, k}` for `m < 0`, with trailing zeros removed.
pub fn diagonal_slice(pi: &PlanePartition, m: i32) -> Partition {
    let (di, dj) = if m >= 0 { (0, m as usize) } else { ((-m) as usize, 0) };
    let mut v = Vec::new();
    for k in 1.. {
        let x = pi.get(k + di, k + dj);
        if x == 0 {
            break;
        }
        v.push(x);
    }
    Partition(v)
}

/// Rebuilds a plane partition from consecutive slices `π^{(start)}, π^{(start+1)}, ...`.
/// Slices outside the given range are empty; the whole chain, including the
/// empty slices at either end, must satisfy `... ≺ π^{(-1)} ≺ π^{(0)} ≻ π^{(1)} ≻ ...`.
pub fn assemble_from_slices(start: i32, slices: &[Partition]) -> Result<PlanePartition> {
    let slice = |m: i32| -> Partition {
        let idx = m - start;
        if idx < 0 || idx as usize >= slices.len() {
            Partition(Vec::new())
        } else {
            slices[idx as usize].trimmed()
        }
    };
    let end = start + slices.len() as i32;
    let (lo, hi) = (start.min(0) - 1, end.max(1));
    for m in lo..hi {
        let (a, b) = (slice(m), slice(m + 1));
        let ok = if m < 0 { interlaces(&b, &a) } else { interlaces(&a, &b) };
        if !ok {
            return Err(Error::Contract(format!(
                "slices {m} and {} do not interlace: {a} vs {b}",
                m + 1
            )));
        }
    }
    let n1 = (1..=(-lo) as usize).take_while(|&i| !slice(-(i as i32) + 1).is_empty()).count();
    let n2 = (0..hi as usize).take_while(|&j| !slice(j as i32).is_empty()).count();
    let mut rows = vec![vec![0u32; n2.max(1)]; n1.max(1)];
    for m in lo..=hi {
        let s = slice(m);
        for (k0, &v) in s.parts().iter().enumerate() {
            let k = k0 + 1;
            let (i, j) = if m >= 0 { (k, k + m as usize) } else { (k + (-m) as usize, k) };
            if i > rows.len() || j > rows[0].len() {
                let (ni, nj) = (rows.len().max(i), rows[0].len().max(j));
                rows.iter_mut().for_each(|r| r.resize(nj, 0));
                rows.resize(ni, vec![0; nj]);
            }
            rows[i - 1][j - 1] = v;
        }
    }
    PlanePartition::new(rows)
}

/// Iterator over all plane partitions in an `n1 x n2 x l` box, in ascending
/// lexicographic order of their row-major entries.
pub struct BoxedPlanePartitions {
    n1: usize,
    n2: usize,
    l: u32,
    cells: Vec<u32>,
    done: bool,
}

impl BoxedPlanePartitions {
    fn bound(&self, idx: usize) -> u32 {
        let (i, j) = (idx / self.n2, idx % self.n2);
        let mut b = self.l;
        if i > 0 {
            b = b.min(self.cells[idx - self.n2]);
        }
        if j > 0 {
            b = b.min(self.cells[idx - 1]);
        }
        b
    }
}

impl Iterator for BoxedPlanePartitions {
    type Item = PlanePartition;

    fn next(&mut self) -> Option<PlanePartition> {
        if self.done {
            return None;
        }
        let rows: Vec<Vec<u32>> = if self.n2 == 0 {
            Vec::new()
        } else {
            self.cells.chunks(self.n2).map(<[u32]>::to_vec).collect()
        };
        let current = PlanePartition::new(rows).expect("enumeration keeps monotonicity");
        // Lexicographic successor: bump the last cell with room, zero the rest.
        match (0..self.cells.len()).rev().find(|&k| self.cells[k] < self.bound(k)) {
            Some(k) => {
                self.cells[k] += 1;
                self.cells[k + 1..].iter_mut().for_each(|c| *c = 0);
            }
            None => self.done = true,
        }
        Some(current)
    }
}

/// Every `π ⊆ [n1, n2, l]` exactly once.
pub fn enumerate_boxed(n1: usize, n2: usize, l: u32) -> BoxedPlanePartitions {
    BoxedPlanePartitions { n1, n2, l, cells: vec![0; n1 * n2], done: false }
}

impl BoxedPlanePartitions {
    pub fn dims(&self) -> (usize, usize, u32) {
        (self.n1, self.n2, self.l)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn positions_examples() {
        let x = positions_from_partition(&p(&[4, 3, 1, 1]), 4, 8).unwrap();
        assert_eq!(x.positions(), &[2, 3, 6, 8]);
        assert_eq!(x.to_partition(), p(&[4, 3, 1, 1]));
        let x = positions_from_partition(&Partition::zeros(3), 3, 7).unwrap();
        assert_eq!(x.positions(), &[1, 2, 3]);
        let x = positions_from_partition(&p(&[4, 4, 4]), 3, 7).unwrap();
        assert_eq!(x.positions(), &[5, 6, 7]);
        assert!(matches!(
            positions_from_partition(&p(&[5, 0, 0]), 3, 7),
            Err(Error::OutOfBox { .. })
        ));
    }

    #[test]
    fn complement_examples() {
        assert_eq!(complement(&p(&[4, 3, 1, 1]), 4, 4).unwrap(), p(&[3, 3, 1, 0]));
        assert_eq!(complement(&Partition::zeros(3), 3, 5).unwrap(), p(&[5, 5, 5]));
        assert!(complement(&p(&[6, 0]), 2, 5).is_err());
    }

    #[test]
    fn complement_reverses_positions() {
        let (n, m) = (4, 8);
        for lam in partitions_in_box(n, (m - n) as u32) {
            let x = positions_from_partition(&lam, n, m).unwrap();
            let dual = complement(&lam, n, (m - n) as u32).unwrap();
            let xv = positions_from_partition(&dual, n, m).unwrap();
            assert_eq!(xv, x.reversed());
        }
    }

    #[test]
    fn interlacing_examples() {
        assert!(interlaces(&p(&[4, 3, 3, 1, 0]), &p(&[3, 3, 1, 1])));
        assert!(!interlaces(&p(&[4, 3, 3, 1, 0]), &p(&[3, 2, 1, 1])));
        assert!(interlaces(&p(&[3, 2, 2, 0]), &p(&[3, 2, 2])));
        assert!(interlaces(&Partition::zeros(1), &Partition::zeros(0)));
    }

    #[test]
    fn interlaced_below_enumerates_exactly_the_interlacing_set() {
        let mu = p(&[3, 2, 2, 0]);
        let all: Vec<Partition> =
            partitions_in_box(3, 3).into_iter().filter(|l| interlaces(&mu, l)).collect();
        assert_eq!(interlaced_below(&mu), all);
    }

    #[test]
    fn occupation_examples() {
        let lam = p(&[6, 5, 5, 5, 2, 2, 0]);
        let n = occupation_from_partition(&lam, 7, 8).unwrap();
        assert_eq!(n.occupations(), &[1, 0, 2, 0, 0, 3, 1, 0]);
        assert_eq!(n.to_partition(), lam);
        let empty = occupation_from_partition(&Partition::zeros(0), 0, 4).unwrap();
        assert_eq!(empty.occupations(), &[0, 0, 0, 0]);
        assert!(occupation_from_partition(&p(&[8]), 1, 8).is_err());
    }

    #[test]
    fn admissibility_examples() {
        let m = occupation_from_partition(&p(&[6, 5, 5, 5, 2, 2, 0]), 7, 8).unwrap();
        let good = occupation_from_partition(&p(&[5, 5, 5, 2, 2, 1]), 6, 8).unwrap();
        let bad = occupation_from_partition(&p(&[5, 5, 3, 2, 2, 1]), 6, 8).unwrap();
        assert!(admissible(&m, &good).unwrap());
        assert!(!admissible(&m, &bad).unwrap());
        assert!(matches!(admissible(&m, &m), Err(Error::Contract(_))));
    }

    #[test]
    fn admissible_iff_interlacing_exhaustive() {
        for m_sites in 1..=5usize {
            for n in 0..=3usize {
                let lower = partitions_in_box(n, m_sites as u32 - 1);
                let upper = partitions_in_box(n + 1, m_sites as u32 - 1);
                for mu in &upper {
                    for lam in &lower {
                        let a = occupation_from_partition(mu, n + 1, m_sites).unwrap();
                        let b = occupation_from_partition(lam, n, m_sites).unwrap();
                        assert_eq!(admissible(&a, &b).unwrap(), interlaces(mu, lam), "{mu} {lam}");
                    }
                }
            }
        }
    }

    #[test]
    fn interlacing_commutes_with_complement() {
        for n in 0..=3usize {
            for l in 0..=3u32 {
                for mu in partitions_in_box(n + 1, l) {
                    for lam in partitions_in_box(n, l) {
                        let mv = complement(&mu, n + 1, l).unwrap();
                        let lv = complement(&lam, n, l).unwrap();
                        assert_eq!(interlaces(&mu, &lam), interlaces(&mv, &lv));
                    }
                }
            }
        }
    }

    fn sample_58() -> PlanePartition {
        PlanePartition::new(vec![
            vec![8, 6, 5, 4],
            vec![6, 5, 4, 2],
            vec![5, 4, 2, 1],
            vec![3, 2, 1],
        ])
        .unwrap()
    }

    #[test]
    fn slices_of_a_58_box_partition() {
        let pi = sample_58();
        assert_eq!(pi.size(), 58);
        assert_eq!(diagonal_slice(&pi, 0), p(&[8, 5, 2]));
        assert_eq!(diagonal_slice(&pi, 1), p(&[6, 4, 1]));
        assert_eq!(diagonal_slice(&pi, 3), p(&[4]));
        assert_eq!(diagonal_slice(&pi, -1), p(&[6, 4, 1]));
        assert_eq!(diagonal_slice(&pi, -3), p(&[3]));
        assert!(diagonal_slice(&pi, 4).is_empty());
        let slices: Vec<Partition> = (-3..=3).map(|m| diagonal_slice(&pi, m)).collect();
        assert_eq!(assemble_from_slices(-3, &slices).unwrap(), pi);
    }

    #[test]
    fn empty_plane_partition_slices() {
        let e = PlanePartition::empty();
        assert!((-3..=3).all(|m| diagonal_slice(&e, m).is_empty()));
        let slices = vec![Partition::zeros(2), Partition::zeros(3), Partition::zeros(0)];
        assert_eq!(assemble_from_slices(-1, &slices).unwrap(), e);
    }

    #[test]
    fn assemble_rejects_broken_chain() {
        // π^{(0)} = (2), π^{(1)} = (3) violates π^{(0)} ≻ π^{(1)}.
        let err = assemble_from_slices(0, &[p(&[2]), p(&[3])]);
        assert!(matches!(err, Err(Error::Contract(_))));
        // π^{(1)} = (1, 1) cannot follow the empty slice π^{(2)}.
        let err = assemble_from_slices(0, &[p(&[2, 2, 1]), p(&[1, 1])]);
        assert!(matches!(err, Err(Error::Contract(_))));
    }

    #[test]
    fn boxed_counts() {
        assert_eq!(enumerate_boxed(1, 1, 1).count(), 2);
        assert_eq!(enumerate_boxed(2, 2, 2).count(), 20);
        for l in 0..6 {
            assert_eq!(enumerate_boxed(1, 1, l).count(), l as usize + 1);
        }
        assert_eq!(enumerate_boxed(0, 3, 2).count(), 1);
    }

    #[test]
    fn boxed_order_is_lexicographic_and_distinct() {
        let all: Vec<Vec<u32>> = enumerate_boxed(2, 2, 2)
            .map(|pi| (1..=2).flat_map(|i| (1..=2).map(move |j| (i, j))).map(|(i, j)| pi.get(i, j)).collect())
            .collect();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn boxed_count_symmetric_under_permutation() {
        for a in 0..=3usize {
            for b in 0..=3usize {
                for c in 0..=3usize {
                    let n = enumerate_boxed(a, b, c as u32).count();
                    assert_eq!(n, enumerate_boxed(b, c, a as u32).count());
                    assert_eq!(n, enumerate_boxed(c, a, b as u32).count());
                    assert_eq!(n, enumerate_boxed(b, a, c as u32).count());
                }
            }
        }
    }

    fn arb_partition(n: usize, l: u32) -> impl Strategy<Value = Partition> {
        prop::collection::vec(0..=l, n).prop_map(|mut v| {
            v.sort_unstable_by(|a, b| b.cmp(a));
            Partition::new(v).unwrap()
        })
    }

    fn arb_boxed(n1: usize, n2: usize, l: u32) -> impl Strategy<Value = PlanePartition> {
        let all: Vec<PlanePartition> = enumerate_boxed(n1, n2, l).collect();
        (0..all.len()).prop_map(move |i| all[i].clone())
    }

    proptest! {
        #[test]
        fn complement_is_an_involution(lam in arb_partition(4, 5)) {
            let once = complement(&lam, 4, 5).unwrap();
            prop_assert_eq!(complement(&once, 4, 5).unwrap(), lam);
        }

        #[test]
        fn occupation_roundtrip(lam in arb_partition(5, 6)) {
            let n = occupation_from_partition(&lam, 5, 7).unwrap();
            prop_assert_eq!(n.particles(), 5);
            prop_assert_eq!(n.to_partition(), lam);
        }

        #[test]
        fn positions_roundtrip(lam in arb_partition(3, 4)) {
            let x = positions_from_partition(&lam, 3, 7).unwrap();
            prop_assert_eq!(x.to_partition(), lam);
            prop_assert_eq!(FermionConfig::from_mask(x.to_mask(), 7), x);
        }

        #[test]
        fn slices_form_an_interlacing_chain(pi in arb_boxed(3, 3, 3)) {
            for m in -4..4 {
                let (a, b) = (diagonal_slice(&pi, m), diagonal_slice(&pi, m + 1));
                if m < 0 {
                    prop_assert!(interlaces(&b, &a));
                } else {
                    prop_assert!(interlaces(&a, &b));
                }
            }
        }

        #[test]
        fn slices_roundtrip(pi in arb_boxed(3, 4, 3)) {
            let slices: Vec<Partition> = (-3..=4).map(|m| diagonal_slice(&pi, m)).collect();
            prop_assert_eq!(assemble_from_slices(-3, &slices).unwrap(), pi);
        }
    }
}
