//! Divided and exterior power modules, the symmetrizer `d'`, Weyl modules of
//! skew shapes, contravariant duals and tensor products.
//!
//! Every operator is an element of the integral Schur algebra. The element
//! indexed by an `n x n` matrix `A` of nonnegative integers (a [`SchurMatrix`])
//! is the coefficient of `∏ t_ij^{A_ij}` in the action of the generic matrix
//! `g e_j = Σ_i t_ij e_i`. It maps the weight given by the column sums of `A`
//! to the weight given by its row sums. The divided raising and lowering
//! operators are the special cases with a single off-diagonal entry.

use crate::combinatorics::{enumerate_standard_tableaux, render_multiset, SkewShape, Tableau};
use crate::zlinalg::{int, Int, IntMatrix, Solver};
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

pub type Weight = Vec<usize>;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum AbwError {
    #[error("modules use different numbers of letters ({0} vs {1})")]
    LetterMismatch(usize, usize),
    #[error("modules have different degrees ({0} vs {1})")]
    DegreeMismatch(usize, usize),
    #[error("element is not in the span of the standard basis (convention bug)")]
    NotInSpan,
    #[error("shape {0} needs at least {1} letters")]
    TooFewLetters(String, usize),
    #[error("cannot parse element {0:?}")]
    Parse(String),
}

/// An `n x n` matrix of nonnegative integers indexing a Schur algebra element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SchurMatrix {
    n: usize,
    a: Vec<usize>,
}

impl SchurMatrix {
    pub fn zeros(n: usize) -> Self {
        SchurMatrix { n, a: vec![0; n * n] }
    }

    pub fn diagonal(w: &[usize]) -> Self {
        let mut m = Self::zeros(w.len());
        for (i, &x) in w.iter().enumerate() {
            m.set(i, i, x);
        }
        m
    }

    /// Divided lowering `f_i^{(m)}` on weight `w` (0-based `i`).
    pub fn lower(w: &[usize], i: usize, m: usize) -> Option<Self> {
        (i + 1 < w.len() && w[i] >= m).then(|| {
            let mut a = Self::diagonal(w);
            a.set(i, i, w[i] - m);
            a.set(i + 1, i, m);
            a
        })
    }

    /// Divided raising `e_i^{(m)}` on weight `w` (0-based `i`).
    pub fn raise(w: &[usize], i: usize, m: usize) -> Option<Self> {
        (i + 1 < w.len() && w[i + 1] >= m).then(|| {
            let mut a = Self::diagonal(w);
            a.set(i + 1, i + 1, w[i + 1] - m);
            a.set(i, i + 1, m);
            a
        })
    }

    pub fn from_rows(rows: &[Vec<usize>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "square matrix expected");
        SchurMatrix { n, a: rows.iter().flatten().copied().collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        self.a[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: usize) {
        self.a[i * self.n + j] = v;
    }

    pub fn source(&self) -> Weight {
        (0..self.n).map(|j| (0..self.n).map(|i| self.get(i, j)).sum()).collect()
    }

    pub fn target(&self) -> Weight {
        (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j)).sum()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.get(i, j) == 0))
    }

    /// All matrices with the given row sums (`target`) and column sums
    /// (`source`), in a fixed order.
    pub fn enumerate(target: &[usize], source: &[usize]) -> Vec<SchurMatrix> {
        let n = target.len();
        assert_eq!(n, source.len());
        let mut out = Vec::new();
        if target.iter().sum::<usize>() != source.iter().sum::<usize>() {
            return out;
        }
        let mut m = SchurMatrix::zeros(n);
        let mut rows_left = target.to_vec();
        fn fill_col(
            j: usize,
            i: usize,
            left_in_col: usize,
            m: &mut SchurMatrix,
            rows_left: &mut Vec<usize>,
            source: &[usize],
            out: &mut Vec<SchurMatrix>,
        ) {
            let n = m.n;
            if j == n {
                out.push(m.clone());
                return;
            }
            if i == n - 1 {
                if left_in_col <= rows_left[i] {
                    m.set(i, j, left_in_col);
                    rows_left[i] -= left_in_col;
                    let next = if j + 1 < n { source[j + 1] } else { 0 };
                    fill_col(j + 1, 0, next, m, rows_left, source, out);
                    rows_left[i] += left_in_col;
                    m.set(i, j, 0);
                }
                return;
            }
            let hi = left_in_col.min(rows_left[i]);
            for v in (0..=hi).rev() {
                m.set(i, j, v);
                rows_left[i] -= v;
                fill_col(j, i + 1, left_in_col - v, m, rows_left, source, out);
                rows_left[i] += v;
            }
            m.set(i, j, 0);
        }
        if n == 0 {
            return vec![m];
        }
        fill_col(0, 0, source[0], &mut m, &mut rows_left, source, &mut out);
        out
    }
}

impl fmt::Display for SchurMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

pub fn binomial(n: usize, k: usize) -> Int {
    if k > n {
        return Int::zero();
    }
    let k = k.min(n - k);
    let mut r = Int::one();
    for i in 0..k {
        r = r * int((n - i) as i64) / int((i + 1) as i64);
    }
    r
}

fn multinomial(parts: &[usize]) -> Int {
    let mut total = 0;
    let mut r = Int::one();
    for &p in parts {
        total += p;
        r *= binomial(total, p);
    }
    r
}

/// Kind of a tensor factor in an ambient module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Factor {
    Divided(usize),
    Exterior(usize),
}

impl Factor {
    pub fn len(&self) -> usize {
        match *self {
            Factor::Divided(l) | Factor::Exterior(l) => l,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Basis label of an ambient tensor: sorted letters per factor.
pub type Label = Vec<Vec<u8>>;

/// Sparse integer combination of ambient labels.
pub type Sparse = BTreeMap<Label, Int>;

pub fn sparse_add(acc: &mut Sparse, label: Label, c: Int) {
    if c.is_zero() {
        return;
    }
    match acc.entry(label) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

pub fn render_label(label: &Label, kinds: &[Factor]) -> String {
    label
        .iter()
        .zip(kinds)
        .map(|(l, k)| match k {
            Factor::Divided(_) => render_multiset(l),
            Factor::Exterior(_) => {
                if l.is_empty() {
                    "-".into()
                } else {
                    l.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("^")
                }
            }
        })
        .collect::<Vec<_>>()
        .join(" | ")
}

/// A finite free module with a weight-graded basis and an action of the
/// Schur algebra elements `ξ_A`.
pub trait BasedModule: Send + Sync {
    fn n(&self) -> usize;
    fn degree(&self) -> usize;
    fn descriptor(&self) -> String;
    fn dim(&self, w: &[usize]) -> usize;
    /// Human-readable basis labels of the weight space.
    fn labels(&self, w: &[usize]) -> Vec<String>;
    /// Matrix of `ξ_A` from the `A.source()` to the `A.target()` weight space.
    fn xi(&self, a: &SchurMatrix) -> IntMatrix;

    fn lower(&self, w: &[usize], i: usize, m: usize) -> Option<IntMatrix> {
        SchurMatrix::lower(w, i, m).map(|a| self.xi(&a))
    }

    fn raise(&self, w: &[usize], i: usize, m: usize) -> Option<IntMatrix> {
        SchurMatrix::raise(w, i, m).map(|a| self.xi(&a))
    }

    /// Weights (compositions of the degree into `n` parts) with nonzero space.
    fn support(&self) -> Vec<Weight> {
        crate::combinatorics::compositions(self.degree(), self.n()).into_iter().filter(|w| self.dim(w) > 0).collect()
    }

    /// Partitions (padded to length `n`) with nonzero weight space.
    fn dominant_support(&self) -> Vec<Weight> {
        crate::combinatorics::partitions_of(self.degree(), self.n())
            .into_iter()
            .map(|p| p.padded(self.n()))
            .filter(|w| self.dim(w) > 0)
            .collect()
    }

    fn rank(&self) -> usize {
        self.support().iter().map(|w| self.dim(w)).sum()
    }
}

pub type ModuleRef = Arc<dyn BasedModule>;

/// Tensor product of divided and exterior powers of the defining module.
pub struct Ambient {
    n: usize,
    kinds: Vec<Factor>,
    bases: Mutex<HashMap<Weight, Arc<Vec<Label>>>>,
    index: Mutex<HashMap<Weight, Arc<HashMap<Label, usize>>>>,
}

impl Ambient {
    pub fn new(n: usize, kinds: Vec<Factor>) -> Self {
        Ambient { n, kinds, bases: Mutex::new(HashMap::new()), index: Mutex::new(HashMap::new()) }
    }

    pub fn divided(lengths: &[usize], n: usize) -> Self {
        Self::new(n, lengths.iter().map(|&l| Factor::Divided(l)).collect())
    }

    pub fn exterior(lengths: &[usize], n: usize) -> Self {
        Self::new(n, lengths.iter().map(|&l| Factor::Exterior(l)).collect())
    }

    pub fn kinds(&self) -> &[Factor] {
        &self.kinds
    }

    pub fn weight_of(&self, label: &Label) -> Weight {
        let mut w = vec![0; self.n];
        for &x in label.iter().flatten() {
            w[x as usize - 1] += 1;
        }
        w
    }

    /// Basis labels of weight `w` in lexicographic order.
    pub fn basis(&self, w: &[usize]) -> Arc<Vec<Label>> {
        if let Some(b) = self.bases.lock().unwrap().get(w) {
            return b.clone();
        }
        let mut out = Vec::new();
        if w.len() == self.n && w.iter().sum::<usize>() == self.degree() {
            let mut remaining = w.to_vec();
            let mut cur: Label = Vec::new();
            self.enum_basis(0, &mut remaining, &mut cur, &mut out);
        }
        let b = Arc::new(out);
        self.bases.lock().unwrap().insert(w.to_vec(), b.clone());
        b
    }

    fn enum_basis(&self, t: usize, remaining: &mut Vec<usize>, cur: &mut Label, out: &mut Vec<Label>) {
        if t == self.kinds.len() {
            if remaining.iter().all(|&x| x == 0) {
                out.push(cur.clone());
            }
            return;
        }
        let kind = self.kinds[t];
        let mut factor = Vec::with_capacity(kind.len());
        self.enum_factor(kind, 1, kind.len(), remaining, &mut factor, t, cur, out);
    }

    #[allow(clippy::too_many_arguments)]
    fn enum_factor(
        &self,
        kind: Factor,
        min_letter: usize,
        left: usize,
        remaining: &mut Vec<usize>,
        factor: &mut Vec<u8>,
        t: usize,
        cur: &mut Label,
        out: &mut Vec<Label>,
    ) {
        if left == 0 {
            cur.push(factor.clone());
            self.enum_basis(t + 1, remaining, cur, out);
            cur.pop();
            return;
        }
        for x in min_letter..=self.n {
            if remaining[x - 1] == 0 {
                continue;
            }
            remaining[x - 1] -= 1;
            factor.push(x as u8);
            let next = if matches!(kind, Factor::Exterior(_)) { x + 1 } else { x };
            self.enum_factor(kind, next, left - 1, remaining, factor, t, cur, out);
            factor.pop();
            remaining[x - 1] += 1;
        }
    }

    pub fn index_of(&self, w: &[usize]) -> Arc<HashMap<Label, usize>> {
        if let Some(ix) = self.index.lock().unwrap().get(w) {
            return ix.clone();
        }
        let b = self.basis(w);
        let ix: Arc<HashMap<Label, usize>> = Arc::new(b.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect());
        self.index.lock().unwrap().insert(w.to_vec(), ix.clone());
        ix
    }

    /// `ξ_A` applied to a single basis label whose weight is `A.source()`.
    pub fn xi_label(&self, a: &SchurMatrix, label: &Label) -> Vec<(Label, Int)> {
        let mut rem = a.clone();
        let mut out = Vec::new();
        let mut cur: Label = Vec::with_capacity(label.len());
        self.xi_factor(0, label, &mut rem, &mut cur, Int::one(), &mut out);
        out
    }

    fn xi_factor(
        &self,
        t: usize,
        label: &Label,
        rem: &mut SchurMatrix,
        cur: &mut Label,
        coef: Int,
        out: &mut Vec<(Label, Int)>,
    ) {
        if t == label.len() {
            out.push((cur.clone(), coef));
            return;
        }
        let src = &label[t];
        match self.kinds[t] {
            Factor::Divided(_) => {
                let mut counts = vec![0usize; self.n];
                for &x in src {
                    counts[x as usize - 1] += 1;
                }
                let letters: Vec<usize> = (0..self.n).filter(|&j| counts[j] > 0).collect();
                let mut b = vec![vec![0usize; self.n]; self.n];
                self.xi_divided(0, &letters, &counts, &mut b, t, label, rem, cur, &coef, out);
            }
            Factor::Exterior(_) => {
                let mut imgs = Vec::with_capacity(src.len());
                self.xi_exterior(0, src, &mut imgs, t, label, rem, cur, &coef, out);
            }
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn xi_divided(
        &self,
        k: usize,
        letters: &[usize],
        counts: &[usize],
        b: &mut Vec<Vec<usize>>,
        t: usize,
        label: &Label,
        rem: &mut SchurMatrix,
        cur: &mut Label,
        coef: &Int,
        out: &mut Vec<(Label, Int)>,
    ) {
        if k == letters.len() {
            let mut c = coef.clone();
            let mut factor = Vec::new();
            for (i, row) in b.iter().enumerate() {
                let tot: usize = row.iter().sum();
                if tot > 0 {
                    c *= multinomial(row);
                    factor.extend(std::iter::repeat((i + 1) as u8).take(tot));
                }
            }
            cur.push(factor);
            self.xi_factor(t + 1, label, rem, cur, c, out);
            cur.pop();
            return;
        }
        let j = letters[k];
        self.distribute(0, counts[j], j, k, letters, counts, b, t, label, rem, cur, coef, out);
    }

    #[allow(clippy::too_many_arguments)]
    fn distribute(
        &self,
        i: usize,
        left: usize,
        j: usize,
        k: usize,
        letters: &[usize],
        counts: &[usize],
        b: &mut Vec<Vec<usize>>,
        t: usize,
        label: &Label,
        rem: &mut SchurMatrix,
        cur: &mut Label,
        coef: &Int,
        out: &mut Vec<(Label, Int)>,
    ) {
        if left == 0 {
            self.xi_divided(k + 1, letters, counts, b, t, label, rem, cur, coef, out);
            return;
        }
        if i == self.n {
            return;
        }
        let avail = rem.get(i, j);
        let hi = avail.min(left);
        for v in (0..=hi).rev() {
            b[i][j] = v;
            rem.set(i, j, avail - v);
            self.distribute(i + 1, left - v, j, k, letters, counts, b, t, label, rem, cur, coef, out);
        }
        b[i][j] = 0;
        rem.set(i, j, avail);
    }

    #[allow(clippy::too_many_arguments)]
    fn xi_exterior(
        &self,
        k: usize,
        src: &[u8],
        imgs: &mut Vec<u8>,
        t: usize,
        label: &Label,
        rem: &mut SchurMatrix,
        cur: &mut Label,
        coef: &Int,
        out: &mut Vec<(Label, Int)>,
    ) {
        if k == src.len() {
            let sign = crate::combinatorics::permutation_sign(imgs);
            let mut sorted = imgs.clone();
            sorted.sort_unstable();
            cur.push(sorted);
            self.xi_factor(t + 1, label, rem, cur, coef * int(sign), out);
            cur.pop();
            return;
        }
        let j = src[k] as usize - 1;
        for i in 0..self.n {
            let avail = rem.get(i, j);
            if avail == 0 || imgs.contains(&((i + 1) as u8)) {
                continue;
            }
            rem.set(i, j, avail - 1);
            imgs.push((i + 1) as u8);
            self.xi_exterior(k + 1, src, imgs, t, label, rem, cur, coef, out);
            imgs.pop();
            rem.set(i, j, avail);
        }
    }

    /// `ξ_A` applied to a sparse element.
    pub fn xi_sparse(&self, a: &SchurMatrix, v: &Sparse) -> Sparse {
        let mut acc = Sparse::new();
        for (label, c) in v {
            for (l, d) in self.xi_label(a, label) {
                sparse_add(&mut acc, l, d * c);
            }
        }
        acc
    }

    pub fn to_dense(&self, w: &[usize], v: &Sparse) -> Vec<Int> {
        let ix = self.index_of(w);
        let mut out = vec![Int::zero(); ix.len()];
        for (l, c) in v {
            out[*ix.get(l).expect("label of the wrong weight")] += c;
        }
        out
    }
}

impl BasedModule for Ambient {
    fn n(&self) -> usize {
        self.n
    }

    fn degree(&self) -> usize {
        self.kinds.iter().map(|k| k.len()).sum()
    }

    fn descriptor(&self) -> String {
        let d: Vec<String> = self
            .kinds
            .iter()
            .map(|k| match k {
                Factor::Divided(l) => format!("D{l}"),
                Factor::Exterior(l) => format!("L{l}"),
            })
            .collect();
        format!("{} (n={})", d.join("x"), self.n)
    }

    fn dim(&self, w: &[usize]) -> usize {
        self.basis(w).len()
    }

    fn labels(&self, w: &[usize]) -> Vec<String> {
        self.basis(w).iter().map(|l| render_label(l, &self.kinds)).collect()
    }

    fn xi(&self, a: &SchurMatrix) -> IntMatrix {
        let (src, tgt) = (a.source(), a.target());
        let sb = self.basis(&src);
        let tix = self.index_of(&tgt);
        let mut m = IntMatrix::zeros(tix.len(), sb.len());
        for (c, label) in sb.iter().enumerate() {
            for (l, d) in self.xi_label(a, label) {
                m.add_to(tix[&l], c, &d);
            }
        }
        m
    }
}

pub fn build_divided(row_lengths: &[usize], n: usize) -> Ambient {
    Ambient::divided(row_lengths, n)
}

pub fn build_exterior(column_lengths: &[usize], n: usize) -> Ambient {
    Ambient::exterior(column_lengths, n)
}

/// Labels for a D-element of a shape, one multiset per row.
pub fn tableau_label(t: &Tableau) -> Label {
    t.rows
        .iter()
        .map(|r| {
            let mut v = r.clone();
            v.sort_unstable();
            v
        })
        .collect()
}

/// The symmetrizer `d'`: full comultiplication of each row into single
/// letters, then exterior multiplication down each column.
pub fn d_prime(shape: &SkewShape, label: &Label) -> Sparse {
    let rows = shape.rows();
    // column index of each occupied column
    let width = shape.outer.part(1);
    let mut col_slot = vec![usize::MAX; width + 1];
    let mut k = 0;
    for c in 1..=width {
        if (1..=shape.outer.len()).any(|r| shape.contains_cell(r, c)) {
            col_slot[c] = k;
            k += 1;
        }
    }
    let mut columns: Vec<Vec<u8>> = vec![Vec::new(); k];
    let mut out = Sparse::new();
    let mut counts: Vec<Vec<usize>> = label
        .iter()
        .map(|r| {
            let mut c = vec![0usize; 256];
            for &x in r {
                c[x as usize] += 1;
            }
            c
        })
        .collect();
    fn go(
        r: usize,
        pos: usize,
        rows: &[(usize, usize)],
        col_slot: &[usize],
        counts: &mut Vec<Vec<usize>>,
        columns: &mut Vec<Vec<u8>>,
        out: &mut Sparse,
    ) {
        if r == rows.len() {
            let mut sign = 1i64;
            let mut label = Vec::with_capacity(columns.len());
            for col in columns.iter() {
                sign *= crate::combinatorics::permutation_sign(col);
                let mut s = col.clone();
                s.sort_unstable();
                label.push(s);
            }
            sparse_add(out, label, int(sign));
            return;
        }
        let (start, len) = rows[r];
        if pos == len {
            go(r + 1, 0, rows, col_slot, counts, columns, out);
            return;
        }
        let slot = col_slot[start + pos];
        for x in 1..256usize {
            if counts[r][x] == 0 {
                continue;
            }
            if columns[slot].contains(&(x as u8)) {
                continue;
            }
            counts[r][x] -= 1;
            columns[slot].push(x as u8);
            go(r, pos + 1, rows, col_slot, counts, columns, out);
            columns[slot].pop();
            counts[r][x] += 1;
        }
    }
    go(0, 0, &rows, &col_slot, &mut counts, &mut columns, &mut out);
    out
}

struct WeightData {
    tableaux: Vec<Tableau>,
    images: Vec<Sparse>,
    solver: Solver,
    rows: HashMap<Label, usize>,
}

/// The skew Weyl module `K_{λ/μ}`: the image of `d'` inside the exterior
/// ambient, with basis `d'(X_T)` for standard tableaux `T`.
pub struct WeylModule {
    shape: SkewShape,
    n: usize,
    ambient: Ambient,
    data: Mutex<HashMap<Weight, Arc<WeightData>>>,
    xi_cache: Mutex<HashMap<SchurMatrix, Arc<IntMatrix>>>,
}

impl WeylModule {
    pub fn new(shape: SkewShape, n: usize) -> Self {
        let ambient = Ambient::exterior(&shape.column_lengths(), n);
        WeylModule { shape, n, ambient, data: Mutex::new(HashMap::new()), xi_cache: Mutex::new(HashMap::new()) }
    }

    /// Uses the number of rows of the outer partition as `n`.
    pub fn with_default_n(shape: SkewShape) -> Self {
        let n = shape.num_rows().max(1);
        Self::new(shape, n)
    }

    pub fn shape(&self) -> &SkewShape {
        &self.shape
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    fn data(&self, w: &[usize]) -> Arc<WeightData> {
        if let Some(d) = self.data.lock().unwrap().get(w) {
            return d.clone();
        }
        let tableaux = if w.len() == self.n {
            enumerate_standard_tableaux(&self.shape, self.n, Some(w))
        } else {
            Vec::new()
        };
        let images: Vec<Sparse> = tableaux.iter().map(|t| d_prime(&self.shape, &tableau_label(t))).collect();
        let mut rows: HashMap<Label, usize> = HashMap::new();
        let mut order: Vec<Label> = Vec::new();
        for img in &images {
            for l in img.keys() {
                if !rows.contains_key(l) {
                    rows.insert(l.clone(), order.len());
                    order.push(l.clone());
                }
            }
        }
        let mut m = IntMatrix::zeros(order.len(), images.len());
        for (c, img) in images.iter().enumerate() {
            for (l, v) in img {
                m.set(rows[l], c, v.clone());
            }
        }
        let solver = Solver::new(&m);
        assert_eq!(solver.rank(), tableaux.len(), "standard basis images are dependent");
        let d = Arc::new(WeightData { tableaux, images, solver, rows });
        self.data.lock().unwrap().insert(w.to_vec(), d.clone());
        d
    }

    pub fn standard_tableaux(&self, w: &[usize]) -> Vec<Tableau> {
        self.data(w).tableaux.clone()
    }

    /// Image of the standard basis element in the exterior ambient.
    pub fn embed(&self, w: &[usize], idx: usize) -> Sparse {
        self.data(w).images[idx].clone()
    }

    /// Coordinates of an ambient element of weight `w` in the standard basis.
    pub fn coords(&self, w: &[usize], v: &Sparse) -> Result<Vec<Int>, AbwError> {
        let d = self.data(w);
        let mut b = vec![Int::zero(); d.rows.len()];
        for (l, c) in v {
            match d.rows.get(l) {
                Some(&i) => b[i] += c,
                None => return Err(AbwError::NotInSpan),
            }
        }
        if d.tableaux.is_empty() {
            return if v.is_empty() { Ok(Vec::new()) } else { Err(AbwError::NotInSpan) };
        }
        d.solver.solve(&b).ok_or(AbwError::NotInSpan)
    }

    /// Straightening: coordinates of `d'(x)` for a D-element given as a
    /// combination of row labels.
    pub fn straighten(&self, element: &[(Label, Int)]) -> Result<(Weight, Vec<Int>), AbwError> {
        let mut acc = Sparse::new();
        let mut weight: Option<Weight> = None;
        for (label, c) in element {
            let w = self.label_weight(label);
            if weight.as_ref().is_some_and(|x| *x != w) {
                return Err(AbwError::Parse("mixed weights".into()));
            }
            weight = Some(w);
            for (l, d) in d_prime(&self.shape, label) {
                sparse_add(&mut acc, l, d * c);
            }
        }
        let w = weight.unwrap_or_else(|| vec![0; self.n]);
        let c = self.coords(&w, &acc)?;
        Ok((w, c))
    }

    pub fn label_weight(&self, label: &Label) -> Weight {
        let mut w = vec![0; self.n];
        for &x in label.iter().flatten() {
            w[x as usize - 1] += 1;
        }
        w
    }

    /// The canonical generator weight (row lengths, padded).
    pub fn canonical_weight(&self) -> Weight {
        let mut w = self.shape.row_lengths();
        w.resize(self.n, 0);
        w
    }

    /// Coordinates of `d'(C)` for the canonical tableau.
    pub fn canonical_coords(&self) -> Vec<Int> {
        let label = tableau_label(&Tableau::canonical(&self.shape));
        self.straighten(&[(label, Int::one())]).expect("canonical tableau").1
    }
}

impl BasedModule for WeylModule {
    fn n(&self) -> usize {
        self.n
    }

    fn degree(&self) -> usize {
        self.shape.degree()
    }

    fn descriptor(&self) -> String {
        format!("K[{}] (n={})", self.shape, self.n)
    }

    fn dim(&self, w: &[usize]) -> usize {
        if w.len() != self.n || w.iter().sum::<usize>() != self.degree() {
            return 0;
        }
        self.data(w).tableaux.len()
    }

    fn labels(&self, w: &[usize]) -> Vec<String> {
        self.data(w).tableaux.iter().map(|t| t.to_string()).collect()
    }

    fn xi(&self, a: &SchurMatrix) -> IntMatrix {
        if let Some(m) = self.xi_cache.lock().unwrap().get(a) {
            return (**m).clone();
        }
        let (src, tgt) = (a.source(), a.target());
        let sd = self.data(&src);
        let td = self.data(&tgt);
        let mut cols = Vec::with_capacity(sd.images.len());
        for img in &sd.images {
            let v = self.ambient.xi_sparse(a, img);
            cols.push(self.coords(&tgt, &v).expect("operators preserve the image of d'"));
        }
        let m = IntMatrix::from_cols(&cols, td.tableaux.len());
        self.xi_cache.lock().unwrap().insert(a.clone(), Arc::new(m.clone()));
        m
    }
}

/// Contravariant dual: the same weight spaces with `ξ_A` acting by the
/// transpose of `ξ_{A^T}`.
pub struct DualModule {
    inner: ModuleRef,
}

impl DualModule {
    pub fn new(inner: ModuleRef) -> Self {
        DualModule { inner }
    }

    pub fn inner(&self) -> &ModuleRef {
        &self.inner
    }
}

impl BasedModule for DualModule {
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn degree(&self) -> usize {
        self.inner.degree()
    }

    fn descriptor(&self) -> String {
        format!("dual({})", self.inner.descriptor())
    }

    fn dim(&self, w: &[usize]) -> usize {
        self.inner.dim(w)
    }

    fn labels(&self, w: &[usize]) -> Vec<String> {
        self.inner.labels(w).into_iter().map(|l| format!("({l})*")).collect()
    }

    fn xi(&self, a: &SchurMatrix) -> IntMatrix {
        self.inner.xi(&a.transpose()).transpose()
    }
}

pub fn contravariant_dual(m: ModuleRef) -> ModuleRef {
    Arc::new(DualModule::new(m))
}

/// The Schur module `L` with highest weight `λ̃`, as the dual of `K_λ`.
pub fn schur_module(shape: SkewShape, n: usize) -> ModuleRef {
    contravariant_dual(Arc::new(WeylModule::new(shape, n)))
}

/// Tensor product; the weight space basis is ordered by the splitting
/// `w = w1 + w2` (lexicographically decreasing `w1`) and then by pairs.
pub struct TensorModule {
    a: ModuleRef,
    b: ModuleRef,
}

impl TensorModule {
    pub fn new(a: ModuleRef, b: ModuleRef) -> Result<Self, AbwError> {
        if a.n() != b.n() {
            return Err(AbwError::LetterMismatch(a.n(), b.n()));
        }
        Ok(TensorModule { a, b })
    }

    fn splits(&self, w: &[usize]) -> Vec<(Weight, Weight, usize)> {
        let mut out = Vec::new();
        let mut offset = 0;
        for w1 in sub_weights(w, self.a.degree()) {
            let w2: Weight = w.iter().zip(&w1).map(|(x, y)| x - y).collect();
            let d = self.a.dim(&w1) * self.b.dim(&w2);
            if d > 0 {
                out.push((w1, w2, offset));
                offset += d;
            }
        }
        out
    }
}

/// All `v <= w` entrywise with `|v| = total`, lexicographically decreasing.
pub fn sub_weights(w: &[usize], total: usize) -> Vec<Weight> {
    let mut out = Vec::new();
    fn go(i: usize, w: &[usize], left: usize, cur: &mut Weight, out: &mut Vec<Weight>) {
        if i == w.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let rest: usize = w[i + 1..].iter().sum();
        for v in (0..=w[i].min(left)).rev() {
            if left - v > rest {
                break;
            }
            cur.push(v);
            go(i + 1, w, left - v, cur, out);
            cur.pop();
        }
    }
    go(0, w, total, &mut Vec::new(), &mut out);
    out
}

fn kron(x: &IntMatrix, y: &IntMatrix) -> IntMatrix {
    let mut m = IntMatrix::zeros(x.rows() * y.rows(), x.cols() * y.cols());
    for i in 0..x.rows() {
        for j in 0..x.cols() {
            let a = x.get(i, j);
            if a.is_zero() {
                continue;
            }
            for k in 0..y.rows() {
                for l in 0..y.cols() {
                    let b = y.get(k, l);
                    if !b.is_zero() {
                        m.set(i * y.rows() + k, j * y.cols() + l, a * b);
                    }
                }
            }
        }
    }
    m
}

impl BasedModule for TensorModule {
    fn n(&self) -> usize {
        self.a.n()
    }

    fn degree(&self) -> usize {
        self.a.degree() + self.b.degree()
    }

    fn descriptor(&self) -> String {
        format!("({}) x ({})", self.a.descriptor(), self.b.descriptor())
    }

    fn dim(&self, w: &[usize]) -> usize {
        if w.len() != self.n() || w.iter().sum::<usize>() != self.degree() {
            return 0;
        }
        self.splits(w).iter().map(|(w1, w2, _)| self.a.dim(w1) * self.b.dim(w2)).sum()
    }

    fn labels(&self, w: &[usize]) -> Vec<String> {
        let mut out = Vec::new();
        for (w1, w2, _) in self.splits(w) {
            for x in self.a.labels(&w1) {
                for y in self.b.labels(&w2) {
                    out.push(format!("{x} (x) {y}"));
                }
            }
        }
        out
    }

    fn xi(&self, a: &SchurMatrix) -> IntMatrix {
        let (src, tgt) = (a.source(), a.target());
        let ss = self.splits(&src);
        let ts = self.splits(&tgt);
        let mut m = IntMatrix::zeros(self.dim(&tgt), self.dim(&src));
        let da = self.a.degree();
        for (s1, _, soff) in &ss {
            // A1 ranges over matrices with column sums s1 bounded by A
            for a1 in bounded_matrices(a, s1) {
                let t1 = a1.target();
                if t1.iter().sum::<usize>() != da {
                    continue;
                }
                let Some((_, _, toff)) = ts.iter().find(|(w1, _, _)| *w1 == t1) else {
                    continue;
                };
                let mut a2 = SchurMatrix::zeros(a.n());
                for i in 0..a.n() {
                    for j in 0..a.n() {
                        a2.set(i, j, a.get(i, j) - a1.get(i, j));
                    }
                }
                let block = kron(&self.a.xi(&a1), &self.b.xi(&a2));
                for i in 0..block.rows() {
                    for j in 0..block.cols() {
                        let v = block.get(i, j);
                        if !v.is_zero() {
                            m.add_to(toff + i, soff + j, v);
                        }
                    }
                }
            }
        }
        m
    }
}

/// Matrices `B <= A` entrywise whose column sums are `cols`.
fn bounded_matrices(a: &SchurMatrix, cols: &[usize]) -> Vec<SchurMatrix> {
    let n = a.n();
    let mut out = Vec::new();
    let mut b = SchurMatrix::zeros(n);
    fn go(j: usize, i: usize, left: usize, a: &SchurMatrix, cols: &[usize], b: &mut SchurMatrix, out: &mut Vec<SchurMatrix>) {
        let n = a.n();
        if j == n {
            out.push(b.clone());
            return;
        }
        if i == n {
            if left == 0 {
                let next = if j + 1 < n { cols[j + 1] } else { 0 };
                go(j + 1, 0, next, a, cols, b, out);
            }
            return;
        }
        let rest: usize = (i + 1..n).map(|k| a.get(k, j)).sum();
        for v in (0..=a.get(i, j).min(left)).rev() {
            if left - v > rest {
                break;
            }
            b.set(i, j, v);
            go(j, i + 1, left - v, a, cols, b, out);
        }
        b.set(i, j, 0);
    }
    if n == 0 {
        return vec![b];
    }
    go(0, 0, cols[0], a, cols, &mut b, &mut out);
    out
}

pub fn tensor(a: ModuleRef, b: ModuleRef) -> Result<ModuleRef, AbwError> {
    Ok(Arc::new(TensorModule::new(a, b)?))
}

/// The Schur matrix `A_T` with `A_T[i][t]` the multiplicity of letter `i + 1`
/// in row `t + 1`, so that `X_T = ξ_{A_T} C`.
pub fn tableau_matrix(label: &Label, n: usize) -> SchurMatrix {
    let mut a = SchurMatrix::zeros(n);
    for (t, row) in label.iter().enumerate() {
        for &x in row {
            let i = x as usize - 1;
            a.set(i, t, a.get(i, t) + 1);
        }
    }
    a
}

/// One relation of the presentation of `K_shape`, as the Schur matrix that
/// carries the canonical tableau onto it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub rows: (usize, usize),
    pub t: usize,
    pub matrix: SchurMatrix,
    pub label: Label,
}

/// For adjacent rows `k, k+1` of lengths `p, q` with overlap `r`, the images of
/// the canonical tableau under the polarizations moving `t` letters from row
/// `k+1` up, `q - r + 1 <= t <= q`.
pub fn relations_generators(shape: &SkewShape, n: usize) -> Vec<Relation> {
    let rows = shape.rows();
    let lens = shape.row_lengths();
    let mut out = Vec::new();
    for k in 0..rows.len().saturating_sub(1) {
        let (s1, p) = rows[k];
        let (s2, q) = rows[k + 1];
        if p == 0 || q == 0 {
            continue;
        }
        let lo = s1.max(s2);
        let hi = (s1 + p).min(s2 + q);
        let r = hi.saturating_sub(lo);
        if r == 0 {
            continue;
        }
        for t in (q - r + 1)..=q {
            let mut a = SchurMatrix::zeros(n);
            for (i, &l) in lens.iter().enumerate() {
                a.set(i, i, l);
            }
            a.set(k + 1, k + 1, q - t);
            a.set(k, k + 1, t);
            let label = relation_label(&a, &lens);
            out.push(Relation { rows: (k + 1, k + 2), t, matrix: a, label });
        }
    }
    out
}

fn relation_label(a: &SchurMatrix, lens: &[usize]) -> Label {
    (0..lens.len())
        .map(|t| {
            let mut v = Vec::new();
            for i in 0..a.n() {
                v.extend(std::iter::repeat((i + 1) as u8).take(a.get(i, t)));
            }
            v
        })
        .collect()
}

/// Parses `1^2 2 | 2^2 3 | 1` into a row label.
pub fn parse_label(s: &str) -> Result<Label, AbwError> {
    s.split('|')
        .map(|row| {
            let mut v = Vec::new();
            for tok in row.split_whitespace() {
                if tok == "-" {
                    continue;
                }
                let (b, e) = match tok.split_once('^') {
                    Some((b, e)) => (b, e.parse::<usize>().map_err(|_| AbwError::Parse(s.into()))?),
                    None => (tok, 1),
                };
                let x = b.parse::<u8>().map_err(|_| AbwError::Parse(s.into()))?;
                if x == 0 {
                    return Err(AbwError::Parse(s.into()));
                }
                v.extend(std::iter::repeat(x).take(e));
            }
            v.sort_unstable();
            Ok(v)
        })
        .collect()
}

/// An equivariant map recorded by its weight blocks.
#[derive(Clone)]
pub struct ModuleMap {
    pub source: ModuleRef,
    pub target: ModuleRef,
    pub blocks: BTreeMap<Weight, IntMatrix>,
    pub equivariant: Option<bool>,
}

impl fmt::Debug for ModuleMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ModuleMap")
            .field("source", &self.source.descriptor())
            .field("target", &self.target.descriptor())
            .field("blocks", &self.blocks)
            .field("equivariant", &self.equivariant)
            .finish()
    }
}

impl ModuleMap {
    pub fn block(&self, w: &[usize]) -> IntMatrix {
        self.blocks
            .get(w)
            .cloned()
            .unwrap_or_else(|| IntMatrix::zeros(self.target.dim(w), self.source.dim(w)))
    }

    /// Checks commutation with every divided raising and lowering operator on
    /// the recorded weights, and records the outcome.
    pub fn check_equivariance(&mut self) -> bool {
        let ok = maps_commute(&*self.source, &*self.target, &|w| self.block(w), &self.blocks.keys().cloned().collect::<Vec<_>>());
        self.equivariant = Some(ok);
        ok
    }

    /// Composite `other ∘ self`.
    pub fn then(&self, other: &ModuleMap) -> ModuleMap {
        let blocks = self.blocks.iter().map(|(w, m)| (w.clone(), other.block(w).mul(m))).collect();
        ModuleMap { source: self.source.clone(), target: other.target.clone(), blocks, equivariant: None }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(|m| m.is_zero())
    }

    /// Matrix over all recorded weights, blocks placed along the diagonal in
    /// weight order.
    pub fn to_matrix(&self) -> IntMatrix {
        let rows: usize = self.blocks.values().map(|m| m.rows()).sum();
        let cols: usize = self.blocks.values().map(|m| m.cols()).sum();
        let mut out = IntMatrix::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for m in self.blocks.values() {
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    out.set(r0 + i, c0 + j, m.get(i, j).clone());
                }
            }
            r0 += m.rows();
            c0 += m.cols();
        }
        out
    }
}

/// Whether weight blocks `phi` commute with all divided raising/lowering
/// operators starting at the given weights.
pub fn maps_commute(
    source: &dyn BasedModule,
    target: &dyn BasedModule,
    phi: &dyn Fn(&[usize]) -> IntMatrix,
    weights: &[Weight],
) -> bool {
    let n = source.n();
    for w in weights {
        for i in 0..n.saturating_sub(1) {
            for m in 1..=source.degree() {
                for a in [SchurMatrix::lower(w, i, m), SchurMatrix::raise(w, i, m)].into_iter().flatten() {
                    let w2 = a.target();
                    let lhs = phi(&w2).mul(&source.xi(&a));
                    let rhs = target.xi(&a).mul(&phi(w));
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// The map from a Weyl module sending the canonical generator to `m` (given
/// in the target's coordinates at the canonical weight), on the weights listed.
/// Each standard basis element `d'(X_T) = ξ_{A_T} d'(C)` goes to `ξ_{A_T} m`.
pub fn map_from_canonical(source: Arc<WeylModule>, target: ModuleRef, m: &[Int], weights: &[Weight]) -> ModuleMap {
    let n = source.n();
    let cw = source.canonical_weight();
    let mut blocks = BTreeMap::new();
    for w in weights {
        let ts = source.standard_tableaux(w);
        let mut cols = Vec::with_capacity(ts.len());
        for t in &ts {
            let a = tableau_matrix(&tableau_label(t), n);
            debug_assert_eq!(a.source(), cw);
            cols.push(target.xi(&a).mul_vec(m));
        }
        blocks.insert(w.clone(), IntMatrix::from_cols(&cols, target.dim(w)));
    }
    let src: ModuleRef = source;
    ModuleMap { source: src, target, blocks, equivariant: None }
}

/// The map `D_ν -> N` sending the canonical generator to `m`.
pub fn map_from_divided(nu: &[usize], target: ModuleRef, m: &[Int], weights: &[Weight]) -> ModuleMap {
    let n = target.n();
    let d = Arc::new(Ambient::divided(nu, n));
    let mut blocks = BTreeMap::new();
    for w in weights {
        let basis = d.basis(w);
        let cols: Vec<Vec<Int>> = basis.iter().map(|l| target.xi(&tableau_matrix(l, n)).mul_vec(m)).collect();
        blocks.insert(w.clone(), IntMatrix::from_cols(&cols, target.dim(w)));
    }
    let src: ModuleRef = d;
    ModuleMap { source: src, target, blocks, equivariant: None }
}

/// Map between two Weyl modules sharing the same row lengths, induced by
/// `d'_a(X) -> d'_b(σX)` where `σ` permutes rows (`perm[i]` is the source row
/// placed at target row `i`). Defined on the listed weights.
pub fn row_permutation_map(a: Arc<WeylModule>, b: Arc<WeylModule>, perm: &[usize], weights: &[Weight]) -> Result<ModuleMap, AbwError> {
    let mut blocks = BTreeMap::new();
    for w in weights {
        let ts = a.standard_tableaux(w);
        let mut cols = Vec::with_capacity(ts.len());
        for t in &ts {
            let label = tableau_label(t);
            let permuted: Label = perm.iter().map(|&i| label[i].clone()).collect();
            cols.push(b.straighten(&[(permuted, Int::one())])?.1);
        }
        blocks.insert(w.clone(), IntMatrix::from_cols(&cols, b.dim(w)));
    }
    let (src, tgt): (ModuleRef, ModuleRef) = (a, b);
    Ok(ModuleMap { source: src, target: tgt, blocks, equivariant: None })
}

/// Natural maps attached to `ν`: `ι: K_ν -> K_{λ/1}`, the surjection
/// `K_{ν⊗1} -> K_λ` and `π: K_{ν⊗1} -> K_ξ`.
pub struct PieriMaps {
    pub inj: ModuleMap,
    pub surj: ModuleMap,
    pub pi: ModuleMap,
}

/// The element `e_1^{(λ_1-1)} ⊗ e_1 e_2^{(λ_2-1)} ⊗ e_2 e_3^{(λ_3-1)} ⊗ ...` of
/// `D_{λ/1}`, as a Schur matrix applied to the canonical tableau.
pub fn iota_matrix(lambda: &[usize], n: usize) -> SchurMatrix {
    let mut a = SchurMatrix::zeros(n);
    a.set(0, 0, lambda[0] - 1);
    for j in 1..lambda.len() {
        a.set(j, j, lambda[j] - 1);
        a.set(j - 1, j, 1);
    }
    a
}

pub fn pieri_maps(nu: &crate::combinatorics::Partition, n: usize, weights: &[Weight]) -> Result<PieriMaps, AbwError> {
    let b = crate::combinatorics::block_decomposition(nu).map_err(|e| AbwError::Parse(e.to_string()))?;
    let lambda = b.lambda();
    if n < lambda.len() {
        return Err(AbwError::TooFewLetters(lambda.to_string(), lambda.len()));
    }
    let k_nu = Arc::new(WeylModule::new(SkewShape::straight(nu.clone()), n));
    let k_l1 = Arc::new(WeylModule::new(b.lambda_skew_one(), n));
    let k_nu1 = Arc::new(WeylModule::new(b.nu_tensor_one(), n));
    let k_lam = Arc::new(WeylModule::new(SkewShape::straight(lambda.clone()), n));
    let k_xi = Arc::new(WeylModule::new(b.xi_shape(), n));
    let ia = iota_matrix(lambda.parts(), n);
    let m = k_l1.xi(&ia).mul_vec(&k_l1.canonical_coords());
    let nu_weights: Vec<Weight> = weights.iter().filter(|w| w.iter().sum::<usize>() == nu.degree()).cloned().collect();
    let mut inj = map_from_canonical(k_nu, k_l1, &m, &nu_weights);
    inj.check_equivariance();
    let rows = lambda.len();
    let ident: Vec<usize> = (0..rows).collect();
    let lam_weights: Vec<Weight> = weights.iter().filter(|w| w.iter().sum::<usize>() == lambda.degree()).cloned().collect();
    let mut surj = row_permutation_map(k_nu1.clone(), k_lam, &ident, &lam_weights)?;
    surj.check_equivariance();
    let mut last_first = vec![rows - 1];
    last_first.extend(0..rows - 1);
    let mut pi = row_permutation_map(k_nu1, k_xi, &last_first, &lam_weights)?;
    pi.check_equivariance();
    Ok(PieriMaps { inj, surj, pi })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(s: &str) -> SkewShape {
        s.parse().unwrap()
    }

    #[test]
    fn divided_and_exterior_ranks() {
        assert_eq!(build_divided(&[2], 2).rank(), 3);
        assert_eq!(build_divided(&[2, 1], 2).rank(), 6);
        assert_eq!(build_exterior(&[2], 2).rank(), 1);
        assert_eq!(build_exterior(&[2], 3).rank(), 3);
        assert_eq!(build_exterior(&[1, 1], 2).rank(), 4);
    }

    #[test]
    fn divided_transfer() {
        let d = build_divided(&[2], 2);
        let m = d.lower(&[2, 0], 0, 2).unwrap();
        assert_eq!(m, IntMatrix::from_i64(&[vec![1]]));
        let m = d.lower(&[1, 1], 0, 1).unwrap();
        assert_eq!(m, IntMatrix::from_i64(&[vec![2]]));
    }

    #[test]
    fn leibniz_on_tensor() {
        let f: ModuleRef = Arc::new(build_divided(&[1], 2));
        let ff = tensor(f.clone(), f).unwrap();
        assert_eq!(ff.rank(), 4);
        let m = ff.lower(&[2, 0], 0, 1).unwrap();
        assert_eq!(m, IntMatrix::from_i64(&[vec![1], vec![1]]));
        let d2: ModuleRef = Arc::new(build_divided(&[2], 2));
        let t = tensor(d2, Arc::new(build_divided(&[1], 2))).unwrap();
        assert_eq!(t.dim(&[2, 1]), 2);
    }

    #[test]
    fn weyl_ranks() {
        assert_eq!(WeylModule::new(shape("2,1"), 2).rank(), 2);
        assert_eq!(WeylModule::new(shape("2,1"), 3).rank(), 8);
        assert_eq!(WeylModule::new(shape("2"), 2).rank(), 3);
        assert_eq!(WeylModule::new(shape("1,1,1"), 3).rank(), 1);
    }

    #[test]
    fn straightening_examples() {
        for a in 2..=4u8 {
            let k = WeylModule::new(shape(&format!("{a},1")), 2);
            let mut row = vec![1u8; a as usize - 1];
            row.push(2);
            let (w, c) = k.straighten(&[(vec![row, vec![1]], Int::one())]).unwrap();
            assert_eq!(w, vec![a as usize, 1]);
            let std = k.standard_tableaux(&w);
            let idx = std.iter().position(|t| t.rows[1] == vec![2]).unwrap();
            let mut expect = vec![Int::zero(); std.len()];
            expect[idx] = int(-1);
            assert_eq!(c, expect);
        }
    }

    #[test]
    fn relation_counts() {
        assert_eq!(relations_generators(&shape("3,1"), 2).len(), 1);
        let r = relations_generators(&shape("3,3,1"), 3);
        assert_eq!(r.len(), 4);
        assert_eq!(r[3].label, vec![vec![1, 1, 1], vec![2, 2, 2], vec![2]]);
        assert_eq!(relations_generators(&shape("3,2,1"), 3).len(), 3);
    }

    #[test]
    fn relations_die_under_d_prime() {
        for s in ["3,1", "2,2,1", "3,2,1", "3,2/1", "2,2/1"] {
            let sh = shape(s);
            for r in relations_generators(&sh, sh.num_rows()) {
                assert!(d_prime(&sh, &r.label).is_empty(), "{s} {:?}", r.label);
            }
        }
    }

    #[test]
    fn contravariant_dual_ranks() {
        let k: ModuleRef = Arc::new(WeylModule::new(shape("2,1"), 3));
        let l = contravariant_dual(k.clone());
        assert_eq!(l.rank(), 8);
        let a = SchurMatrix::lower(&[2, 1, 0], 0, 1).unwrap();
        assert_eq!(contravariant_dual(l).xi(&a), k.xi(&a));
    }

    #[test]
    fn label_round_trip() {
        let l = parse_label("1^2 2 | 2^2 3 | 1").unwrap();
        assert_eq!(l, vec![vec![1, 1, 2], vec![2, 2, 3], vec![1]]);
        let kinds = vec![Factor::Divided(3); 3];
        assert_eq!(render_label(&l, &kinds), "1^2 2 | 2^2 3 | 1");
    }

    #[test]
    fn contingency_tables() {
        assert_eq!(SchurMatrix::enumerate(&[1, 1], &[1, 1]).len(), 2);
        assert_eq!(SchurMatrix::enumerate(&[2, 1], &[1, 2]).len(), 2);
        for m in SchurMatrix::enumerate(&[2, 1, 1], &[1, 1, 2]) {
            assert_eq!(m.target(), vec![2, 1, 1]);
            assert_eq!(m.source(), vec![1, 1, 2]);
        }
    }
}
