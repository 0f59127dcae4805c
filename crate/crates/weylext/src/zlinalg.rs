//! Exact linear algebra over the integers.
//!
//! Matrices hold arbitrary-precision entries. Every routine pivots
//! deterministically (smallest nonzero absolute value, then lowest row, then
//! lowest column) so that repeated runs give identical output.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

pub type Int = BigInt;

pub fn int(v: i64) -> Int {
    BigInt::from(v)
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("denominator lattice is not contained in the numerator lattice")]
    NotContained,
    #[error("malformed matrix dump: {0}")]
    Parse(String),
}

/// Dense integer matrix stored row by row.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Int>>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for (i, r) in self.data.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let s: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            write!(f, "{}", s.join(" "))?;
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![vec![Int::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = Int::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Int>>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntMatrix { rows: rows.len(), cols, data: rows }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect(), cols)
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_cols(cols: &[Vec<Int>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, x) in c.iter().enumerate() {
                m.data[i][j] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Int {
        &self.data[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Int) {
        self.data[r][c] = v;
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &Int) {
        self.data[r][c] += v;
    }

    pub fn row(&self, r: usize) -> &[Int] {
        &self.data[r]
    }

    pub fn row_vecs(&self) -> &[Vec<Int>] {
        &self.data
    }

    pub fn into_rows(self) -> Vec<Vec<Int>> {
        self.data
    }

    pub fn col(&self, c: usize) -> Vec<Int> {
        self.data.iter().map(|r| r[c].clone()).collect()
    }

    pub fn col_vecs(&self) -> Vec<Vec<Int>> {
        (0..self.cols).map(|c| self.col(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.iter().all(|x| x.is_zero()))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j][i] = self.data[i][j].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k][j];
                    if !b.is_zero() {
                        out.data[i][j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        self.data
            .iter()
            .map(|r| {
                let mut s = Int::zero();
                for (a, b) in r.iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        s += a * b;
                    }
                }
                s
            })
            .collect()
    }

    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.iter().chain(b).cloned().collect())
            .collect();
        IntMatrix { rows: self.rows, cols: self.cols + other.cols, data }
    }

    pub fn vstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        IntMatrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn select_cols(&self, idx: &[usize]) -> IntMatrix {
        let data = self.data.iter().map(|r| idx.iter().map(|&j| r[j].clone()).collect()).collect();
        IntMatrix { rows: self.rows, cols: idx.len(), data }
    }

    pub fn scale(&self, k: &Int) -> IntMatrix {
        let data = self.data.iter().map(|r| r.iter().map(|x| x * k).collect()).collect();
        IntMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        IntMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        self.add(&other.scale(&int(-1)))
    }

    /// Determinant by fraction-free elimination.
    pub fn det(&self) -> Int {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.data.clone();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return Int::zero();
            };
            if p != k {
                a.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
                a[i][k] = Int::zero();
            }
            prev = a[k][k].clone();
        }
        if n == 0 {
            Int::one()
        } else {
            sign * &a[n - 1][n - 1]
        }
    }

    pub fn rank(&self) -> usize {
        row_echelon(self.data.clone(), self.cols, false).pivots.len()
    }

    /// Dump format: one row per line, entries separated by single spaces.
    pub fn to_dump(&self) -> String {
        let mut s = String::new();
        for r in &self.data {
            let line: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn from_dump(text: &str) -> Result<IntMatrix, LinalgError> {
        let mut rows = Vec::new();
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let row: Result<Vec<Int>, _> = line.split_whitespace().map(|t| t.parse::<Int>()).collect();
            rows.push(row.map_err(|e| LinalgError::Parse(e.to_string()))?);
        }
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(LinalgError::Parse("ragged rows".into()));
        }
        Ok(IntMatrix::from_rows(rows, cols))
    }
}

fn pick_pivot<'a>(cands: impl Iterator<Item = (usize, usize, &'a Int)>) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, Int)> = None;
    for (r, c, v) in cands {
        if v.is_zero() {
            continue;
        }
        let a = v.abs();
        let better = match &best {
            None => true,
            Some((br, bc, bv)) => a < *bv || (a == *bv && (r, c) < (*br, *bc)),
        };
        if better {
            best = Some((r, c, a));
        }
    }
    best.map(|(r, c, _)| (r, c))
}

fn axpy_row(target: &mut [Int], q: &Int, src: &[Int]) {
    for (t, s) in target.iter_mut().zip(src) {
        if !s.is_zero() {
            *t -= q * s;
        }
    }
}

pub(crate) struct Echelon {
    pub rows: Vec<Vec<Int>>,
    pub transform: Option<Vec<Vec<Int>>>,
    pub pivots: Vec<usize>,
}

/// Integer row echelon form `T * M = E` with `T` unimodular. Pivot columns are
/// strictly increasing and the first `pivots.len()` rows are nonzero.
pub(crate) fn row_echelon(mut m: Vec<Vec<Int>>, cols: usize, track: bool) -> Echelon {
    let nrows = m.len();
    let mut t: Option<Vec<Vec<Int>>> = track.then(|| IntMatrix::identity(nrows).data);
    let mut pivots = Vec::new();
    let mut cur = 0;
    for c in 0..cols {
        if cur == nrows {
            break;
        }
        loop {
            let Some((p, _)) = pick_pivot((cur..nrows).map(|r| (r, c, &m[r][c]))) else {
                break;
            };
            if p != cur {
                m.swap(p, cur);
                if let Some(t) = t.as_mut() {
                    t.swap(p, cur);
                }
            }
            let mut done = true;
            for r in cur + 1..nrows {
                if m[r][c].is_zero() {
                    continue;
                }
                let q = m[r][c].div_floor(&m[cur][c]);
                let (top, bottom) = m.split_at_mut(r);
                axpy_row(&mut bottom[0], &q, &top[cur]);
                if let Some(t) = t.as_mut() {
                    let (top, bottom) = t.split_at_mut(r);
                    axpy_row(&mut bottom[0], &q, &top[cur]);
                }
                if !m[r][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if !m[cur][c].is_zero() {
            if m[cur][c].is_negative() {
                for x in m[cur].iter_mut() {
                    *x = -x.clone();
                }
                if let Some(t) = t.as_mut() {
                    for x in t[cur].iter_mut() {
                        *x = -x.clone();
                    }
                }
            }
            pivots.push(c);
            cur += 1;
        }
    }
    Echelon { rows: m, transform: t, pivots }
}

/// Row-style Hermite normal form: echelon, positive pivots, entries above a
/// pivot reduced into `[0, pivot)`. Zero rows are dropped.
pub fn hnf(a: &IntMatrix) -> IntMatrix {
    let e = row_echelon(a.data.clone(), a.cols, false);
    let mut rows: Vec<Vec<Int>> = e.rows.into_iter().take(e.pivots.len()).collect();
    for (i, &pc) in e.pivots.iter().enumerate() {
        for k in 0..i {
            let q = rows[k][pc].div_floor(&rows[i][pc]);
            if !q.is_zero() {
                let (top, bottom) = rows.split_at_mut(i);
                axpy_row(&mut top[k], &q, &bottom[0]);
            }
        }
    }
    let n = rows.len();
    IntMatrix { rows: n, cols: a.cols, data: rows }
}

/// Canonical basis (as HNF rows) of the lattice spanned by the columns.
pub fn column_lattice(a: &IntMatrix) -> IntMatrix {
    hnf(&a.transpose())
}

#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub invariant_factors: Vec<Int>,
}

/// Smith normal form with transforms: `u * a * v = s`.
pub fn snf(a: &IntMatrix) -> SmithDecomposition {
    let (m, n) = (a.rows, a.cols);
    let mut s = a.data.clone();
    let mut u = IntMatrix::identity(m).data;
    // v is kept transposed so column operations become row operations
    let mut vt = IntMatrix::identity(n).data;
    let mut t = 0;
    while t < m.min(n) {
        let cand = (t..m).flat_map(|r| (t..n).map(move |c| (r, c)));
        let Some((pr, pc)) = pick_pivot(cand.map(|(r, c)| (r, c, &s[r][c]))) else {
            break;
        };
        s.swap(pr, t);
        u.swap(pr, t);
        if pc != t {
            for row in s.iter_mut() {
                row.swap(pc, t);
            }
            vt.swap(pc, t);
        }
        loop {
            let mut dirty = false;
            for r in t + 1..m {
                if s[r][t].is_zero() {
                    continue;
                }
                let q = s[r][t].div_floor(&s[t][t]);
                let (top, bottom) = s.split_at_mut(r);
                axpy_row(&mut bottom[0], &q, &top[t]);
                let (top, bottom) = u.split_at_mut(r);
                axpy_row(&mut bottom[0], &q, &top[t]);
                if !s[r][t].is_zero() {
                    dirty = true;
                }
            }
            for c in t + 1..n {
                if s[t][c].is_zero() {
                    continue;
                }
                let q = s[t][c].div_floor(&s[t][t]);
                for row in s.iter_mut() {
                    let d = &q * &row[t];
                    if !d.is_zero() {
                        row[c] -= d;
                    }
                }
                let (top, bottom) = vt.split_at_mut(c);
                axpy_row(&mut bottom[0], &q, &top[t]);
                if !s[t][c].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                // divisibility of the remaining block by the pivot
                let bad = (t + 1..m)
                    .flat_map(|r| (t + 1..n).map(move |c| (r, c)))
                    .find(|&(r, c)| !s[r][c].is_zero() && !s[r][c].is_multiple_of(&s[t][t]));
                match bad {
                    None => break,
                    Some((r, _)) => {
                        let (top, bottom) = s.split_at_mut(r);
                        axpy_row(&mut top[t], &int(-1), &bottom[0]);
                        let (top, bottom) = u.split_at_mut(r);
                        axpy_row(&mut top[t], &int(-1), &bottom[0]);
                    }
                }
            }
            // move a smaller entry of row/column t into the pivot slot
            let cand = (t..m)
                .map(|r| (r, t))
                .chain((t + 1..n).map(|c| (t, c)))
                .map(|(r, c)| (r, c, &s[r][c]));
            let (pr, pc) = pick_pivot(cand).expect("pivot row and column cannot vanish");
            if (pr, pc) != (t, t) {
                s.swap(pr, t);
                u.swap(pr, t);
                if pc != t {
                    for row in s.iter_mut() {
                        row.swap(pc, t);
                    }
                    vt.swap(pc, t);
                }
            }
        }
        if s[t][t].is_negative() {
            for x in s[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
        t += 1;
    }
    let invariant_factors = (0..m.min(n)).map(|i| s[i][i].clone()).filter(|x| !x.is_zero()).collect();
    SmithDecomposition {
        u: IntMatrix { rows: m, cols: m, data: u },
        s: IntMatrix { rows: m, cols: n, data: s },
        v: IntMatrix { rows: n, cols: n, data: vt }.transpose(),
        invariant_factors,
    }
}

/// Invariant factors only, without transforms.
pub fn invariant_factors(a: &IntMatrix) -> Vec<Int> {
    // the row echelon form shrinks the problem before the full reduction
    let e = row_echelon(a.data.clone(), a.cols, false);
    let r = e.pivots.len();
    let sub = IntMatrix { rows: r, cols: a.cols, data: e.rows.into_iter().take(r).collect() };
    let sub = if sub.cols > sub.rows { sub.transpose() } else { sub };
    let e2 = row_echelon(sub.data.clone(), sub.cols, false);
    let r2 = e2.pivots.len();
    let sq = IntMatrix { rows: r2, cols: sub.cols, data: e2.rows.into_iter().take(r2).collect() };
    snf(&sq).invariant_factors
}

#[cfg(test)]
fn kernel_basis_echelon(a: &IntMatrix) -> IntMatrix {
    let e = row_echelon(a.transpose().data, a.rows, true);
    let t = e.transform.unwrap();
    let k: Vec<Vec<Int>> = t.into_iter().skip(e.pivots.len()).collect();
    IntMatrix::from_cols(&k, a.cols)
}

fn divide_content(r: &mut [Int]) {
    let mut g = Int::zero();
    for x in r.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                return;
            }
        }
    }
    if !g.is_zero() {
        for x in r.iter_mut() {
            if !x.is_zero() {
                *x /= &g;
            }
        }
    }
}

/// Kernel of a matrix without unit entries: a unimodular change of variables
/// creates one (row contents are 1), then elimination resumes.
fn residual_kernel(mut r: IntMatrix) -> IntMatrix {
    let c = r.cols;
    let mut t = IntMatrix::identity(c).data;
    let row = (0..r.rows).min_by_key(|&i| nnz(&r.data[i])).expect("nonempty residual");
    divide_content(&mut r.data[row]);
    loop {
        let nz: Vec<usize> = (0..c).filter(|&j| !r.data[row][j].is_zero()).collect();
        if nz.len() <= 1 {
            break;
        }
        let jm = *nz.iter().min_by(|&&a, &&b| r.data[row][a].magnitude().cmp(r.data[row][b].magnitude())).unwrap();
        for &j in &nz {
            if j == jm {
                continue;
            }
            let q = r.data[row][j].div_floor(&r.data[row][jm]);
            for x in r.data.iter_mut().chain(t.iter_mut()) {
                if !x[jm].is_zero() {
                    let d = &q * &x[jm];
                    x[j] -= d;
                }
            }
        }
    }
    let k = Kernel::new(&r).basis;
    IntMatrix::from_rows(t, c).mul(&k)
}

fn nnz(r: &[Int]) -> usize {
    r.iter().filter(|x| !x.is_zero()).count()
}

/// Saturated integer kernel of a matrix, with coordinates read off a set of
/// free positions.
#[derive(Clone, Debug)]
pub struct Kernel {
    pub basis: IntMatrix,
    free: Vec<usize>,
    free_solver: Solver,
}

impl Kernel {
    pub fn new(a: &IntMatrix) -> Self {
        let n = a.cols;
        let mut rows: Vec<Vec<Int>> = a.data.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
        for r in rows.iter_mut() {
            divide_content(r);
        }
        // Gauss-Jordan on unit entries only; rows[..done] are pivot rows
        let mut pivots: Vec<usize> = Vec::new();
        let mut done = 0;
        loop {
            rows.retain(|r| r.iter().any(|x| !x.is_zero()));
            let mut best: Option<(usize, usize, usize)> = None;
            for (r, row) in rows.iter().enumerate().skip(done) {
                let weight = nnz(row);
                if best.is_some_and(|(_, _, w)| w <= weight) {
                    continue;
                }
                if let Some(c) = row.iter().position(|x| x.magnitude().is_one()) {
                    best = Some((r, c, weight));
                }
            }
            let Some((r, c, _)) = best else {
                break;
            };
            rows.swap(r, done);
            if rows[done][c].is_negative() {
                for x in rows[done].iter_mut() {
                    *x = -&*x;
                }
            }
            let (head, tail) = rows.split_at_mut(done);
            let (prow, tail) = tail.split_first_mut().unwrap();
            let support: Vec<usize> = (0..n).filter(|&j| !prow[j].is_zero()).collect();
            for row in head.iter_mut().chain(tail.iter_mut()) {
                if row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for &j in &support {
                    row[j] -= &f * &prow[j];
                }
            }
            for row in tail.iter_mut() {
                divide_content(row);
            }
            pivots.push(c);
            done += 1;
        }
        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
        let residual = IntMatrix::from_rows(
            rows[done..].iter().map(|r| free.iter().map(|&f| r[f].clone()).collect()).collect(),
            free.len(),
        );
        let inner = if residual.rows == 0 { IntMatrix::identity(free.len()) } else { residual_kernel(residual) };
        let cols: Vec<Vec<Int>> = inner
            .col_vecs()
            .into_iter()
            .map(|y| {
                let mut x = vec![Int::zero(); n];
                for (&f, v) in free.iter().zip(&y) {
                    x[f] = v.clone();
                }
                for (i, &p) in pivots.iter().enumerate() {
                    let mut acc = Int::zero();
                    for (&f, v) in free.iter().zip(&y) {
                        if !v.is_zero() && !rows[i][f].is_zero() {
                            acc -= &rows[i][f] * v;
                        }
                    }
                    x[p] = acc;
                }
                x
            })
            .collect();
        Self::from_basis(IntMatrix::from_cols(&cols, n), free)
    }

    fn from_basis(basis: IntMatrix, free: Vec<usize>) -> Self {
        let restricted = IntMatrix::from_rows(free.iter().map(|&f| basis.row(f).to_vec()).collect(), basis.cols);
        Kernel { free_solver: Solver::new(&restricted), basis, free }
    }

    /// The same lattice with the basis order reversed.
    pub fn reversed(&self) -> Self {
        let idx: Vec<usize> = (0..self.basis.cols).rev().collect();
        Self::from_basis(self.basis.select_cols(&idx), self.free.clone())
    }

    pub fn dim(&self) -> usize {
        self.basis.cols
    }

    /// Coordinates of `x` in the basis, if `x` lies in the kernel.
    pub fn coords(&self, x: &[Int]) -> Option<Vec<Int>> {
        let y: Vec<Int> = self.free.iter().map(|&f| x[f].clone()).collect();
        let c = self.free_solver.solve(&y)?;
        (self.basis.mul_vec(&c) == x).then_some(c)
    }
}

/// Basis of the saturated integer kernel, one vector per column.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    Kernel::new(a).basis
}

/// Repeated solves of `A x = b` against a fixed matrix.
#[derive(Clone, Debug)]
pub struct Solver {
    rows: usize,
    basis: Vec<Vec<Int>>,
    pivots: Vec<usize>,
    transform: Vec<Vec<Int>>,
}

impl Solver {
    pub fn new(a: &IntMatrix) -> Self {
        let e = row_echelon(a.transpose().data, a.rows, true);
        let r = e.pivots.len();
        Solver {
            rows: a.rows,
            basis: e.rows.into_iter().take(r).collect(),
            pivots: e.pivots,
            transform: e.transform.unwrap().into_iter().take(r).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn solve(&self, b: &[Int]) -> Option<Vec<Int>> {
        assert_eq!(b.len(), self.rows, "right-hand side has the wrong length");
        let mut res = b.to_vec();
        let ncols = self.transform.first().map_or(0, |t| t.len());
        let mut x = vec![Int::zero(); ncols];
        for (i, &pc) in self.pivots.iter().enumerate() {
            if res[pc].is_zero() {
                continue;
            }
            let (q, rem) = res[pc].div_rem(&self.basis[i][pc]);
            if !rem.is_zero() {
                return None;
            }
            axpy_row(&mut res, &q, &self.basis[i]);
            for (xj, tj) in x.iter_mut().zip(&self.transform[i]) {
                if !tj.is_zero() {
                    *xj += &q * tj;
                }
            }
        }
        res.iter().all(|v| v.is_zero()).then_some(x)
    }

    pub fn contains(&self, b: &[Int]) -> bool {
        self.solve(b).is_some()
    }
}

pub fn solve(a: &IntMatrix, b: &[Int]) -> Result<Option<Vec<Int>>, LinalgError> {
    if a.rows != b.len() {
        return Err(LinalgError::Dimension(format!("{} rows vs rhs of length {}", a.rows, b.len())));
    }
    if a.cols == 0 {
        return Ok(b.iter().all(|x| x.is_zero()).then(Vec::new));
    }
    Ok(Solver::new(a).solve(b))
}

/// Isomorphism type of a finitely generated abelian group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
pub struct AbelianGroupType {
    pub free_rank: usize,
    pub torsion: Vec<Int>,
}

impl AbelianGroupType {
    pub fn trivial() -> Self {
        AbelianGroupType { free_rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroupType { free_rank: rank, torsion: Vec::new() }
    }

    pub fn cyclic(order: i64) -> Self {
        let torsion = if order > 1 { vec![int(order)] } else { Vec::new() };
        AbelianGroupType { free_rank: 0, torsion }
    }

    /// Builds the canonical type from arbitrary diagonal entries: units are
    /// dropped, zeros count as free summands, the rest is brought into a
    /// divisibility chain.
    pub fn from_diagonal(free_extra: usize, diag: &[Int]) -> Self {
        let mut free_rank = free_extra;
        let mut primes: Vec<(Int, Vec<Int>)> = Vec::new();
        for d in diag {
            let d = d.abs();
            if d.is_zero() {
                free_rank += 1;
                continue;
            }
            for (p, e) in factorize(&d) {
                let pe = num_traits::pow(p.clone(), e);
                match primes.iter_mut().find(|(q, _)| *q == p) {
                    Some((_, v)) => v.push(pe),
                    None => primes.push((p, vec![pe])),
                }
            }
        }
        let len = primes.iter().map(|(_, v)| v.len()).max().unwrap_or(0);
        let mut torsion = vec![Int::one(); len];
        for (_, mut v) in primes {
            v.sort();
            let off = len - v.len();
            for (i, pe) in v.into_iter().enumerate() {
                torsion[off + i] *= pe;
            }
        }
        AbelianGroupType { free_rank, torsion }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn order(&self) -> Option<Int> {
        self.is_finite().then(|| self.torsion.iter().fold(Int::one(), |a, b| a * b))
    }

    /// Number of cyclic factors whose order is divisible by `p`.
    pub fn p_rank(&self, p: &Int) -> usize {
        self.torsion.iter().filter(|d| d.is_multiple_of(p)).count()
    }
}

impl fmt::Display for AbelianGroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 { "Z".into() } else { format!("Z^{}", self.free_rank) });
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

fn factorize(n: &Int) -> Vec<(Int, usize)> {
    let mut n = n.clone();
    let mut out = Vec::new();
    let mut p = int(2);
    while &p * &p <= n {
        let mut e = 0;
        while n.is_multiple_of(&p) {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p += 1;
    }
    if n > Int::one() {
        out.push((n, 1));
    }
    out
}

/// Target lattice modulo the column span.
pub fn cokernel(a: &IntMatrix) -> AbelianGroupType {
    let f = invariant_factors(a);
    let free = a.rows - f.len();
    AbelianGroupType::from_diagonal(free, &f)
}

/// Quotient of the lattice spanned by the numerator columns by the lattice
/// spanned by the denominator columns, inside `Z^ambient`.
pub fn subquotient(
    ambient: usize,
    numerator: &IntMatrix,
    denominator: &IntMatrix,
) -> Result<AbelianGroupType, LinalgError> {
    if numerator.rows != ambient || denominator.rows != ambient {
        return Err(LinalgError::Dimension("generators must live in the ambient lattice".into()));
    }
    let e = row_echelon(numerator.transpose().data, ambient, false);
    let k = e.pivots.len();
    let basis: Vec<Vec<Int>> = e.rows.into_iter().take(k).collect();
    if denominator.cols == 0 {
        return Ok(AbelianGroupType::free(k));
    }
    let b = IntMatrix::from_cols(&basis, ambient);
    let solver = Solver::new(&b);
    let mut coords = Vec::with_capacity(denominator.cols);
    for c in denominator.col_vecs() {
        coords.push(solver.solve(&c).ok_or(LinalgError::NotContained)?);
    }
    Ok(cokernel(&IntMatrix::from_cols(&coords, k)))
}

/// True when the two column spans coincide.
pub fn same_lattice(a: &IntMatrix, b: &IntMatrix) -> bool {
    a.rows == b.rows && column_lattice(a) == column_lattice(b)
}

/// Content of a vector: gcd of its entries.
pub fn content(v: &[Int]) -> Int {
    v.iter().fold(Int::zero(), |g, x| g.gcd(x))
}

/// Sizes of the Z/m-solution group of `a x = 0`, as cyclic orders.
pub fn kernel_mod(a: &IntMatrix, m: &Int) -> AbelianGroupType {
    let f = invariant_factors(a);
    let null = a.cols - f.len();
    let mut orders: Vec<Int> = f.iter().map(|d| d.gcd(m)).collect();
    orders.extend(std::iter::repeat(m.clone()).take(null));
    AbelianGroupType::from_diagonal(0, &orders)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_i64(rows)
    }

    #[test]
    fn unit_pivot_kernel_matches_echelon() {
        let cases = [
            m(&[vec![2, 4, 6, 1], vec![3, 6, 9, 0]]),
            m(&[vec![6, 10, 15]]),
            m(&[vec![1, 1, 0, 0], vec![0, 1, 1, 0], vec![2, 0, 0, 4]]),
            m(&[vec![4, 6, 0], vec![0, 10, 15], vec![6, 0, 9]]),
        ];
        for a in &cases {
            let k = Kernel::new(a);
            assert!(same_lattice(&k.basis, &kernel_basis_echelon(a)));
            assert!(a.mul(&k.basis).is_zero());
        }
    }

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn snf_small_cases() {
        assert_eq!(snf(&IntMatrix::identity(3)).invariant_factors, ints(&[1, 1, 1]));
        assert_eq!(snf(&m(&[vec![2, 4], vec![6, 8]])).invariant_factors, ints(&[2, 4]));
        assert!(snf(&IntMatrix::zeros(2, 3)).invariant_factors.is_empty());
    }

    #[test]
    fn kernel_is_saturated() {
        let k = kernel_basis(&m(&[vec![1, 1]])).col(0);
        assert!(k == ints(&[1, -1]) || k == ints(&[-1, 1]));
        assert_eq!(kernel_basis(&IntMatrix::identity(3)).cols(), 0);
        let k = kernel_basis(&m(&[vec![2, 2]]));
        assert_eq!(k.cols(), 1);
        assert_eq!(content(&k.col(0)), int(1));
    }

    #[test]
    fn solve_cases() {
        assert_eq!(solve(&m(&[vec![2]]), &ints(&[4])).unwrap(), Some(ints(&[2])));
        assert_eq!(solve(&m(&[vec![2]]), &ints(&[3])).unwrap(), None);
        assert_eq!(solve(&IntMatrix::identity(3), &ints(&[5, -1, 7])).unwrap(), Some(ints(&[5, -1, 7])));
        assert!(solve(&IntMatrix::identity(2), &ints(&[1])).is_err());
    }

    #[test]
    fn cokernel_cases() {
        assert_eq!(cokernel(&m(&[vec![2]])), AbelianGroupType::cyclic(2));
        assert!(cokernel(&IntMatrix::identity(2)).is_trivial());
        assert_eq!(cokernel(&m(&[vec![2, 4], vec![6, 8]])).torsion, ints(&[2, 4]));
    }

    #[test]
    fn subquotient_cases() {
        let e1 = m(&[vec![1]]);
        assert_eq!(subquotient(1, &e1, &m(&[vec![3]])).unwrap(), AbelianGroupType::cyclic(3));
        assert!(subquotient(1, &e1, &e1).unwrap().is_trivial());
        let n = IntMatrix::identity(2);
        assert_eq!(subquotient(2, &n, &m(&[vec![1], vec![0]])).unwrap(), AbelianGroupType::free(1));
        let two = m(&[vec![2]]);
        assert_eq!(subquotient(1, &two, &e1), Err(LinalgError::NotContained));
    }

    #[test]
    fn diagonal_normalizes_to_chain() {
        let g = AbelianGroupType::from_diagonal(0, &ints(&[6, 4, 1]));
        assert_eq!(g.torsion, ints(&[2, 12]));
    }

    #[test]
    fn dump_round_trip() {
        let a = m(&[vec![1, -2], vec![30, 4]]);
        assert_eq!(a.to_dump(), "1 -2\n30 4\n");
        assert_eq!(IntMatrix::from_dump(&a.to_dump()).unwrap(), a);
    }

    #[test]
    fn mod_kernel() {
        // 3x = 0 mod 6 has solutions {0, 2, 4}
        assert_eq!(kernel_mod(&m(&[vec![3]]), &int(6)), AbelianGroupType::cyclic(3));
        assert_eq!(kernel_mod(&m(&[vec![0]]), &int(5)), AbelianGroupType::cyclic(5));
    }
}
