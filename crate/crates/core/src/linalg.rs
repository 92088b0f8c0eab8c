//! Exact rational matrices.
//!
//! Rank, kernel and solve go through fraction-free (Bareiss) elimination on
//! integer rows. Rows are cleared of denominators first, which never changes
//! the row space. A checked `i128` pass handles the common small-entry case
//! and falls back to `BigInt` on overflow.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};
use petgraph::unionfind::UnionFind;

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RationalMatrix { rows, cols, data }
    }

    /// Panics if the rows are ragged.
    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self::from_fn(rows.len(), cols, |i, j| rat(rows[i][j]))
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let n = rows.len();
        RationalMatrix {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in add");
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in sub");
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    /// `[self | other]`
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "row mismatch in hstack");
        Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "column mismatch in vstack");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        RationalMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Self::from_fn(self.rows, cols.len(), |i, j| self[(i, cols[j])].clone())
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        Self::from_fn(rows.len(), self.cols, |i, j| self[(rows[i], j)].clone())
    }

    /// Entries as `i64` when every entry is an integer that fits.
    pub fn to_i64(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| if x.is_integer() { x.numer().to_i64() } else { None })
                    .collect()
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }

    pub fn kernel_basis(&self) -> RationalMatrix {
        kernel_basis(self)
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<RationalMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let x = solve(self, &Self::identity(self.rows))?;
        Some(x)
    }
}

impl Index<(usize, usize)> for RationalMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &RationalMatrix {
    type Output = RationalMatrix;
    fn mul(self, rhs: &RationalMatrix) -> RationalMatrix {
        RationalMatrix::mul(self, rhs)
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            write!(f, "[{}]", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Scale each row to integers by the lcm of its denominators.
fn integer_rows(m: &RationalMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows)
        .map(|i| {
            let row = m.row(i);
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect()
}

fn small_rows(rows: &[Vec<BigInt>]) -> Option<Vec<Vec<i128>>> {
    rows.iter()
        .map(|r| r.iter().map(|x| x.to_i64().map(i128::from)).collect())
        .collect()
}

/// Forward Bareiss elimination in `i128`; `None` on overflow.
fn bareiss_small(mut a: Vec<Vec<i128>>, ncols: usize) -> Option<Vec<usize>> {
    let m = a.len();
    let mut pivots = Vec::new();
    let mut prev: i128 = 1;
    let mut r = 0;
    for c in 0..ncols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&p| a[p][c] != 0) else {
            continue;
        };
        a.swap(r, p);
        let (top, rest) = a.split_at_mut(r + 1);
        let pr = &top[r];
        let pv = pr[c];
        for row in rest.iter_mut() {
            let f = row[c];
            if f == 0 {
                if pv != 1 || prev != 1 {
                    for x in &mut row[c + 1..ncols] {
                        *x = pv.checked_mul(*x)? / prev;
                    }
                }
                continue;
            }
            for j in c + 1..ncols {
                let v = pv.checked_mul(row[j])?.checked_sub(f.checked_mul(pr[j])?)?;
                row[j] = v / prev;
            }
            row[c] = 0;
        }
        prev = pv;
        pivots.push(c);
        r += 1;
    }
    Some(pivots)
}

/// Forward Bareiss elimination in `BigInt`; returns the echelon rows and pivot columns.
fn bareiss_big(mut a: Vec<Vec<BigInt>>, ncols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let m = a.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&p| !a[p][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (top, rest) = a.split_at_mut(r + 1);
        let pr = &top[r];
        let pv = pr[c].clone();
        for row in rest.iter_mut() {
            let f = row[c].clone();
            for j in c + 1..ncols {
                let v = &pv * &row[j] - &f * &pr[j];
                row[j] = v / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = pv;
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

pub fn rank(m: &RationalMatrix) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    let rows = integer_rows(m);
    if let Some(small) = small_rows(&rows) {
        if let Some(p) = bareiss_small(small, m.cols) {
            return p.len();
        }
    }
    bareiss_big(rows, m.cols).1.len()
}

/// Back substitution on echelon rows: the solution with the given free values.
fn back_substitute(
    echelon: &[Vec<BigInt>],
    pivots: &[usize],
    ncols: usize,
    free_values: &[(usize, Rational)],
) -> Vec<Rational> {
    let mut x = vec![Rational::zero(); ncols];
    for (j, v) in free_values {
        x[*j] = v.clone();
    }
    for (k, &p) in pivots.iter().enumerate().rev() {
        let row = &echelon[k];
        let mut acc = Rational::zero();
        for j in p + 1..ncols {
            if !row[j].is_zero() && !x[j].is_zero() {
                acc += Rational::from_integer(row[j].clone()) * &x[j];
            }
        }
        x[p] = -acc / Rational::from_integer(row[p].clone());
    }
    x
}

pub fn kernel_basis(m: &RationalMatrix) -> RationalMatrix {
    let n = m.cols;
    let (echelon, pivots) = bareiss_big(integer_rows(m), n);
    let free: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
    let mut out = RationalMatrix::zeros(n, free.len());
    for (c, &f) in free.iter().enumerate() {
        let x = back_substitute(&echelon, &pivots, n, &[(f, Rational::one())]);
        for (i, v) in x.into_iter().enumerate() {
            out[(i, c)] = v;
        }
    }
    out
}

/// Some `x` with `a * x = b`, or `None` when the system is inconsistent.
pub fn solve(a: &RationalMatrix, b: &RationalMatrix) -> Option<RationalMatrix> {
    assert_eq!(a.rows, b.rows, "row mismatch in solve");
    let n = a.cols;
    let mut x = RationalMatrix::zeros(n, b.cols);
    for c in 0..b.cols {
        let aug = a.hstack(&b.select_columns(&[c]));
        let (echelon, pivots) = bareiss_big(integer_rows(&aug), n + 1);
        if pivots.last() == Some(&n) {
            return None;
        }
        // the augmented column acts as a free variable fixed to -1
        let sol = back_substitute(&echelon, &pivots, n + 1, &[(n, -Rational::one())]);
        for i in 0..n {
            x[(i, c)] = sol[i].clone();
        }
    }
    Some(x)
}

/// `dim(Im a ∩ Im b)`
pub fn image_intersection_dim(a: &RationalMatrix, b: &RationalMatrix) -> usize {
    assert_eq!(a.rows, b.rows, "row mismatch in image intersection");
    rank(a) + rank(b) - rank(&a.hstack(b))
}

/// A linear system given by sparse rows, solved block by block.
///
/// Unknowns that never share a row are independent, so the system splits
/// into connected components before any dense elimination happens.
#[derive(Clone, Debug, Default)]
pub struct SparseSystem {
    ncols: usize,
    rows: Vec<Vec<(usize, Rational)>>,
}

impl SparseSystem {
    pub fn new(ncols: usize) -> Self {
        SparseSystem {
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Duplicate columns are summed; zero rows are dropped.
    pub fn push_row(&mut self, mut entries: Vec<(usize, Rational)>) {
        entries.sort_by_key(|(c, _)| *c);
        let mut merged: Vec<(usize, Rational)> = Vec::with_capacity(entries.len());
        for (c, v) in entries {
            assert!(c < self.ncols, "column {c} out of range");
            match merged.last_mut() {
                Some((lc, lv)) if *lc == c => *lv += v,
                _ => merged.push((c, v)),
            }
        }
        merged.retain(|(_, v)| !v.is_zero());
        if !merged.is_empty() {
            self.rows.push(merged);
        }
    }

    /// Connected components as (columns, rows), both sorted.
    fn blocks(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        let mut uf = UnionFind::<usize>::new(self.ncols);
        for row in &self.rows {
            for w in row.windows(2) {
                uf.union(w[0].0, w[1].0);
            }
        }
        let labels = uf.into_labeling();
        let mut index = vec![usize::MAX; self.ncols];
        let mut blocks: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
        for (c, &l) in labels.iter().enumerate().take(self.ncols) {
            if index[l] == usize::MAX {
                index[l] = blocks.len();
                blocks.push((Vec::new(), Vec::new()));
            }
            blocks[index[l]].0.push(c);
        }
        for (r, row) in self.rows.iter().enumerate() {
            blocks[index[labels[row[0].0]]].1.push(r);
        }
        blocks
    }

    fn dense_block(&self, cols: &[usize], rows: &[usize]) -> RationalMatrix {
        let mut local = vec![usize::MAX; self.ncols];
        for (k, &c) in cols.iter().enumerate() {
            local[c] = k;
        }
        let mut m = RationalMatrix::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (c, v) in &self.rows[r] {
                m[(i, local[*c])] = v.clone();
            }
        }
        m
    }

    pub fn rank(&self) -> usize {
        self.blocks()
            .iter()
            .filter(|(_, rows)| !rows.is_empty())
            .map(|(cols, rows)| rank(&self.dense_block(cols, rows)))
            .sum()
    }

    pub fn nullity(&self) -> usize {
        self.ncols - self.rank()
    }

    /// Kernel basis as dense columns of length `ncols`.
    pub fn kernel_basis(&self) -> RationalMatrix {
        let mut vectors: Vec<Vec<(usize, Rational)>> = Vec::new();
        for (cols, rows) in self.blocks() {
            if rows.is_empty() {
                vectors.extend(cols.iter().map(|&c| vec![(c, Rational::one())]));
                continue;
            }
            let k = kernel_basis(&self.dense_block(&cols, &rows));
            for j in 0..k.cols() {
                vectors.push(
                    (0..k.rows())
                        .filter(|&i| !k[(i, j)].is_zero())
                        .map(|i| (cols[i], k[(i, j)].clone()))
                        .collect(),
                );
            }
        }
        let mut out = RationalMatrix::zeros(self.ncols, vectors.len());
        for (j, v) in vectors.into_iter().enumerate() {
            for (i, x) in v {
                out[(i, j)] = x;
            }
        }
        out
    }
}

/// Exact integer check used by callers that need integral solutions.
pub fn as_integer(x: &Rational) -> Option<i64> {
    if x.is_integer() {
        x.numer().to_i64()
    } else {
        None
    }
}

pub fn is_nonneg_integer(x: &Rational) -> bool {
    x.is_integer() && !x.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_i64_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&RationalMatrix::identity(3)), 3);
        assert_eq!(rank(&RationalMatrix::zeros(2, 2)), 0);
        assert_eq!(rank(&m(&[&[1, 2], &[2, 4]])), 1);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&RationalMatrix::identity(2)).shape(), (2, 0));
        let k = kernel_basis(&m(&[&[1, -1]]));
        assert_eq!(k.shape(), (2, 1));
        assert_eq!(k[(0, 0)], k[(1, 0)]);
        let a = m(&[&[1, 2], &[2, 4]]);
        let k = kernel_basis(&a);
        assert_eq!(k.cols(), 1);
        assert_eq!(k[(0, 0)], -rat(2) * &k[(1, 0)]);
        assert!(a.mul(&k).is_zero());
    }

    #[test]
    fn solve_examples() {
        let b = m(&[&[3, 1], &[-2, 5]]);
        assert_eq!(solve(&RationalMatrix::identity(2), &b), Some(b));
        let x = solve(&m(&[&[1, 1]]), &m(&[&[2]])).unwrap();
        assert_eq!(&x[(0, 0)] + &x[(1, 0)], rat(2));
        assert_eq!(solve(&m(&[&[1], &[1]]), &m(&[&[0], &[1]])), None);
    }

    #[test]
    fn intersection_examples() {
        let id = RationalMatrix::identity(2);
        assert_eq!(image_intersection_dim(&id, &id), 2);
        assert_eq!(image_intersection_dim(&m(&[&[1], &[0]]), &m(&[&[0], &[1]])), 0);
        assert_eq!(image_intersection_dim(&m(&[&[1], &[1]]), &id), 1);
    }

    #[test]
    fn rational_entries() {
        let half = Rational::new(BigInt::from(1), BigInt::from(2));
        let a = RationalMatrix::from_rows(vec![vec![half.clone(), rat(1)], vec![rat(1), rat(2)]], 2);
        assert_eq!(rank(&a), 1);
        let inv = RationalMatrix::from_rows(vec![vec![half.clone(), rat(0)], vec![rat(0), rat(3)]], 2)
            .inverse()
            .unwrap();
        assert_eq!(inv[(0, 0)], rat(2));
    }

    #[test]
    fn overflow_falls_back() {
        // Hilbert-like integer matrix with large entries forces the BigInt path
        let big = 1i64 << 40;
        let a = RationalMatrix::from_fn(6, 6, |i, j| rat(big / (i as i64 + j as i64 + 1)));
        assert_eq!(rank(&a), 6);
        assert_eq!(rank(&a.vstack(&a)), 6);
    }

    #[test]
    fn sparse_system_splits_blocks() {
        let mut s = SparseSystem::new(5);
        s.push_row(vec![(0, rat(1)), (1, rat(-1))]);
        s.push_row(vec![(3, rat(2)), (4, rat(2))]);
        s.push_row(vec![(1, rat(1)), (0, rat(-1))]);
        assert_eq!(s.rank(), 2);
        let k = s.kernel_basis();
        assert_eq!(k.cols(), 3);
        assert_eq!(k.rank(), 3);
    }
}
