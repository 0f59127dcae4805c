//! Partitions, skew shapes, tableaux and the block data attached to a
//! partition.
//!
//! Cells are addressed as 1-based `(row, col)` pairs. Letters in tableaux are
//! 1-based as well, so the canonical tableau of a shape has row `i` filled with
//! letter `i`.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CombError {
    #[error("cannot parse partition {0:?}")]
    Parse(String),
    #[error("parts are not weakly decreasing: {0:?}")]
    NotDecreasing(Vec<i64>),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("cell ({0}, {1}) is outside the diagram")]
    CellOutside(usize, usize),
    #[error("{0} is not contained in {1}")]
    NotContained(String, String),
    #[error("the empty partition has no blocks")]
    Empty,
    #[error("index {0:?} is out of range")]
    IndexOutOfRange(Vec<usize>),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),
}

/// A partition with trailing zeros removed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self, CombError> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(CombError::NotDecreasing(parts.iter().map(|&x| x as i64).collect()));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    /// Sorts the parts, so any multiset of row lengths is accepted.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts).expect("sorted")
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Part `i` (1-based), zero beyond the last row.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn contains_cell(&self, row: usize, col: usize) -> bool {
        row >= 1 && col >= 1 && self.part(row) >= col
    }

    /// Parts padded with zeros to length `n`.
    pub fn padded(&self, n: usize) -> Vec<usize> {
        let mut v = self.0.clone();
        v.resize(n.max(v.len()), 0);
        v
    }

    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.0.iter().enumerate().all(|(i, &p)| p <= self.0[i])
    }

    /// Removes the first row.
    pub fn strip_first_row(&self) -> Partition {
        Partition(self.0.iter().skip(1).copied().collect())
    }

    /// Removes the first `c` columns.
    pub fn strip_columns(&self, c: usize) -> Partition {
        Partition(self.0.iter().filter(|&&p| p > c).map(|&p| p - c).collect())
    }

    /// Run-length form `[(a_1, p_1), ...]` with `a_1 > a_2 > ...`.
    pub fn runs(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((a, m)) if *a == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = CombError;

    /// Accepts `3,2,1`, exponent forms such as `3^2,1`, and `` or `0` for the
    /// empty partition. Parentheses and spaces are ignored.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t: String = s.chars().filter(|c| !c.is_whitespace() && *c != '(' && *c != ')').collect();
        if t.is_empty() || t == "0" {
            return Ok(Partition::empty());
        }
        let bad = || CombError::Parse(s.to_string());
        let mut parts = Vec::new();
        for tok in t.split(',') {
            let (base, exp) = match tok.split_once('^') {
                Some((b, e)) => (b, e.parse::<usize>().map_err(|_| bad())?),
                None => (tok, 1),
            };
            let b = base.parse::<usize>().map_err(|_| bad())?;
            parts.extend(std::iter::repeat(b).take(exp));
        }
        Partition::new(parts)
    }
}

pub fn conjugate(p: &Partition) -> Partition {
    let first = p.part(1);
    Partition((1..=first).map(|c| p.0.iter().filter(|&&x| x >= c).count()).collect())
}

pub fn dominance_leq(p: &Partition, q: &Partition) -> Result<bool, CombError> {
    if p.degree() != q.degree() {
        return Err(CombError::DegreeMismatch(p.degree(), q.degree()));
    }
    Ok(dominance_leq_unchecked(p.parts(), q.parts()))
}

/// Partial-sum comparison of two weights of equal degree.
pub fn dominance_leq_unchecked(p: &[usize], q: &[usize]) -> bool {
    let n = p.len().max(q.len());
    let (mut sp, mut sq) = (0usize, 0usize);
    for i in 0..n {
        sp += p.get(i).copied().unwrap_or(0);
        sq += q.get(i).copied().unwrap_or(0);
        if sp > sq {
            return false;
        }
    }
    true
}

pub fn hook_length(p: &Partition, row: usize, col: usize) -> Result<usize, CombError> {
    if !p.contains_cell(row, col) {
        return Err(CombError::CellOutside(row, col));
    }
    let arm = p.part(row) - col;
    let leg = conjugate(p).part(col) - row;
    Ok(arm + leg + 1)
}

/// All partitions of `r` with at most `max_parts` parts, in reverse
/// lexicographic order (largest first).
pub fn partitions_of(r: usize, max_parts: usize) -> Vec<Partition> {
    fn go(r: usize, max_part: usize, parts_left: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if r == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        if parts_left == 0 {
            return;
        }
        for p in (1..=max_part.min(r)).rev() {
            cur.push(p);
            go(r - p, p, parts_left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(r, r, max_parts, &mut Vec::new(), &mut out);
    out
}

/// All compositions of `r` into exactly `n` nonnegative parts, in
/// lexicographically decreasing order.
pub fn compositions(r: usize, n: usize) -> Vec<Vec<usize>> {
    fn go(r: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 1 {
            cur.push(r);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for p in (0..=r).rev() {
            cur.push(p);
            go(r - p, n - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if r == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(r, n, &mut Vec::new(), &mut out);
    out
}

pub fn pieri_add_box(p: &Partition) -> Vec<Partition> {
    let mut out = Vec::new();
    for i in 1..=p.len() + 1 {
        if i == 1 || p.part(i - 1) > p.part(i) {
            let mut v = p.padded(i);
            v[i - 1] += 1;
            out.push(Partition(v));
        }
    }
    out
}

pub fn pieri_remove_box(p: &Partition) -> Vec<Partition> {
    let mut out = Vec::new();
    for i in 1..=p.len() {
        if p.part(i) > p.part(i + 1) {
            let mut v = p.0.clone();
            v[i - 1] -= 1;
            out.push(Partition::new(v).expect("corner removal keeps the order"));
        }
    }
    out
}

/// Skew diagram `outer / inner`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SkewShape {
    pub outer: Partition,
    pub inner: Partition,
}

impl SkewShape {
    pub fn new(outer: Partition, inner: Partition) -> Result<Self, CombError> {
        if !outer.contains(&inner) {
            return Err(CombError::NotContained(inner.to_string(), outer.to_string()));
        }
        Ok(SkewShape { outer, inner })
    }

    pub fn straight(p: Partition) -> Self {
        SkewShape { outer: p, inner: Partition::empty() }
    }

    pub fn is_straight(&self) -> bool {
        self.inner.is_empty()
    }

    pub fn num_rows(&self) -> usize {
        self.outer.len()
    }

    /// Per row: (first column, length).
    pub fn rows(&self) -> Vec<(usize, usize)> {
        (1..=self.outer.len())
            .map(|i| (self.inner.part(i) + 1, self.outer.part(i) - self.inner.part(i)))
            .collect()
    }

    pub fn row_lengths(&self) -> Vec<usize> {
        self.rows().into_iter().map(|(_, l)| l).collect()
    }

    /// Per column (left to right): the rows occupied, top to bottom.
    pub fn columns(&self) -> Vec<Vec<usize>> {
        let width = self.outer.part(1);
        (1..=width)
            .map(|c| (1..=self.outer.len()).filter(|&r| self.contains_cell(r, c)).collect::<Vec<_>>())
            .filter(|v| !v.is_empty())
            .collect()
    }

    pub fn column_lengths(&self) -> Vec<usize> {
        self.columns().into_iter().map(|v| v.len()).collect()
    }

    pub fn contains_cell(&self, row: usize, col: usize) -> bool {
        self.outer.contains_cell(row, col) && !self.inner.contains_cell(row, col)
    }

    pub fn degree(&self) -> usize {
        self.outer.degree() - self.inner.degree()
    }

    /// Transpose of the diagram.
    pub fn conjugate(&self) -> SkewShape {
        SkewShape { outer: conjugate(&self.outer), inner: conjugate(&self.inner) }
    }
}

impl fmt::Display for SkewShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.is_empty() {
            write!(f, "{}", self.outer)
        } else {
            write!(f, "{}/{}", self.outer, self.inner)
        }
    }
}

impl FromStr for SkewShape {
    type Err = CombError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.split_once('/') {
            Some((o, i)) => SkewShape::new(o.parse()?, i.parse()?),
            None => Ok(SkewShape::straight(s.parse()?)),
        }
    }
}

/// A filling of a skew shape, stored row by row from left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Tableau {
    pub shape: SkewShape,
    pub rows: Vec<Vec<u8>>,
}

impl Tableau {
    pub fn new(shape: SkewShape, rows: Vec<Vec<u8>>) -> Self {
        assert_eq!(shape.row_lengths(), rows.iter().map(|r| r.len()).collect::<Vec<_>>(), "row lengths");
        Tableau { shape, rows }
    }

    /// Row `i` filled with letter `i`.
    pub fn canonical(shape: &SkewShape) -> Self {
        let rows = shape.row_lengths().iter().enumerate().map(|(i, &l)| vec![(i + 1) as u8; l]).collect();
        Tableau { shape: shape.clone(), rows }
    }

    pub fn entry(&self, row: usize, col: usize) -> Option<u8> {
        if !self.shape.contains_cell(row, col) {
            return None;
        }
        let start = self.shape.inner.part(row) + 1;
        Some(self.rows[row - 1][col - start])
    }

    pub fn weight(&self, n: usize) -> Vec<usize> {
        let mut w = vec![0; n];
        for &x in self.rows.iter().flatten() {
            w[x as usize - 1] += 1;
        }
        w
    }

    pub fn max_letter(&self) -> u8 {
        self.rows.iter().flatten().copied().max().unwrap_or(0)
    }

    /// Weakly increasing rows, strictly increasing columns.
    pub fn is_standard(&self) -> bool {
        if self.rows.iter().any(|r| r.windows(2).any(|w| w[0] > w[1])) {
            return false;
        }
        for (r, c) in self.cells() {
            if r > 1 && self.shape.contains_cell(r - 1, c) && self.entry(r - 1, c) >= self.entry(r, c) {
                return false;
            }
        }
        true
    }

    pub fn cells(&self) -> Vec<(usize, usize)> {
        self.shape
            .rows()
            .iter()
            .enumerate()
            .flat_map(|(i, &(s, l))| (s..s + l).map(move |c| (i + 1, c)))
            .collect()
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.rows.iter().map(|r| render_multiset(r)).collect();
        write!(f, "{}", rows.join(" | "))
    }
}

/// Renders sorted letters as `1^2 2`.
pub fn render_multiset(letters: &[u8]) -> String {
    let mut sorted = letters.to_vec();
    sorted.sort_unstable();
    let mut parts = Vec::new();
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        parts.push(if j - i == 1 { sorted[i].to_string() } else { format!("{}^{}", sorted[i], j - i) });
        i = j;
    }
    if parts.is_empty() {
        "-".into()
    } else {
        parts.join(" ")
    }
}

/// Standard tableaux of `shape` in letters `1..=n`, optionally of a fixed
/// weight, in lexicographic order of their row-major reading word.
pub fn enumerate_standard_tableaux(shape: &SkewShape, n: usize, weight: Option<&[usize]>) -> Vec<Tableau> {
    if let Some(w) = weight {
        if w.len() != n || w.iter().sum::<usize>() != shape.degree() {
            return Vec::new();
        }
    }
    let rows = shape.rows();
    let cells: Vec<(usize, usize)> = rows
        .iter()
        .enumerate()
        .flat_map(|(i, &(s, l))| (s..s + l).map(move |c| (i + 1, c)))
        .collect();
    let mut fill: Vec<Vec<u8>> = rows.iter().map(|&(_, l)| vec![0; l]).collect();
    let mut remaining: Vec<usize> = weight.map_or_else(|| vec![usize::MAX; n], |w| w.to_vec());
    let mut out = Vec::new();

    #[allow(clippy::too_many_arguments)]
    fn go(
        k: usize,
        cells: &[(usize, usize)],
        shape: &SkewShape,
        n: usize,
        fill: &mut Vec<Vec<u8>>,
        remaining: &mut Vec<usize>,
        out: &mut Vec<Tableau>,
    ) {
        if k == cells.len() {
            out.push(Tableau { shape: shape.clone(), rows: fill.clone() });
            return;
        }
        let (r, c) = cells[k];
        let start = shape.inner.part(r) + 1;
        let mut lo = 1u8;
        if c > start {
            lo = lo.max(fill[r - 1][c - start - 1]);
        }
        if r > 1 && shape.contains_cell(r - 1, c) {
            let above_start = shape.inner.part(r - 1) + 1;
            lo = lo.max(fill[r - 2][c - above_start] + 1);
        }
        for x in lo..=n as u8 {
            if remaining[x as usize - 1] == 0 {
                continue;
            }
            remaining[x as usize - 1] -= 1;
            fill[r - 1][c - start] = x;
            go(k + 1, cells, shape, n, fill, remaining, out);
            remaining[x as usize - 1] += 1;
        }
        fill[r - 1][c - start] = 0;
    }

    go(0, &cells, shape, n, &mut fill, &mut remaining, &mut out);
    out
}

/// Rectangular-run decomposition `a_1^{p_1} ... a_k^{p_k}` of a partition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDecomposition {
    /// `(a_j, p_j)`: row length and multiplicity.
    pub blocks: Vec<(usize, usize)>,
}

impl BlockDecomposition {
    pub fn k(&self) -> usize {
        self.blocks.len()
    }

    pub fn a(&self, j: usize) -> usize {
        self.blocks[j - 1].0
    }

    pub fn p(&self, j: usize) -> usize {
        self.blocks[j - 1].1
    }

    /// `ℓ_j = a_j + p_{j+1} + ... + p_k`.
    pub fn ell(&self, j: usize) -> usize {
        self.a(j) + self.blocks[j..].iter().map(|b| b.1).sum::<usize>()
    }

    pub fn h(&self, j: usize) -> usize {
        self.ell(j) + self.p(j)
    }

    pub fn ells(&self) -> Vec<usize> {
        (1..=self.k()).map(|j| self.ell(j)).collect()
    }

    pub fn hs(&self) -> Vec<usize> {
        (1..=self.k()).map(|j| self.h(j)).collect()
    }

    pub fn num_rows(&self) -> usize {
        self.blocks.iter().map(|b| b.1).sum()
    }

    /// First row (1-based) of block `j`.
    pub fn start_row(&self, j: usize) -> usize {
        1 + self.blocks[..j - 1].iter().map(|b| b.1).sum::<usize>()
    }

    pub fn partition(&self) -> Partition {
        Partition(self.blocks.iter().flat_map(|&(a, p)| std::iter::repeat(a).take(p)).collect())
    }

    /// `λ`: one box appended in the first column.
    pub fn lambda(&self) -> Partition {
        let mut v = self.partition().0;
        v.push(1);
        Partition(v)
    }

    /// `μ`: one box appended to the first row.
    pub fn mu(&self) -> Partition {
        let mut v = self.partition().0;
        v[0] += 1;
        Partition(v)
    }

    /// The skew shape `(a_1+1)^{p_1} ... (a_k+1)^{p_k} 1 / 1^{p_1+...+p_k}`.
    pub fn nu_tensor_one(&self) -> SkewShape {
        let mut outer: Vec<usize> = self.partition().0.iter().map(|a| a + 1).collect();
        outer.push(1);
        let inner = vec![1; self.num_rows()];
        SkewShape { outer: Partition(outer), inner: Partition(inner) }
    }

    /// `ξ = a_1^{p_1+1} a_2^{p_2} ... / (a_1 - 1)`.
    pub fn xi_shape(&self) -> SkewShape {
        let mut outer = vec![self.a(1)];
        outer.extend(self.partition().0);
        SkewShape { outer: Partition(outer), inner: Partition::new(vec![self.a(1) - 1]).unwrap() }
    }

    /// `λ / 1`: the first box of `λ` removed.
    pub fn lambda_skew_one(&self) -> SkewShape {
        SkewShape { outer: self.lambda(), inner: Partition(vec![1]) }
    }

    /// All indices `(i_1, ..., i_k)` with `0 <= i_j <= p_j`, lexicographically.
    pub fn indices(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for &(_, p) in &self.blocks {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..=p).map(move |i| {
                        let mut w = v.clone();
                        w.push(i);
                        w
                    })
                })
                .collect();
        }
        out
    }
}

pub fn block_decomposition(p: &Partition) -> Result<BlockDecomposition, CombError> {
    if p.is_empty() {
        return Err(CombError::Empty);
    }
    Ok(BlockDecomposition { blocks: p.runs() })
}

/// Sign of a permutation given as a sequence of distinct values.
pub fn permutation_sign<T: Ord>(seq: &[T]) -> i64 {
    let mut inv = 0usize;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// A tableau `T_i` of shape `ν ⊗ 1` together with the sign of the cyclic
/// relocation applied to its rightmost border strip.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexedTableau {
    pub index: Vec<usize>,
    pub tableau: Tableau,
    pub sign: i64,
}

/// Rightmost entries of the rows of `T_i`, the last one being the lone box.
fn relocated_strip(blocks: &BlockDecomposition, index: &[usize]) -> Vec<u8> {
    let x = blocks.num_rows();
    let mut strip: Vec<u8> = (1..=x as u8 + 1).collect();
    let mut first_removed: Option<u8> = None;
    let mut hole: Option<usize> = None;
    for j in 1..=blocks.k() {
        let i = index[j - 1];
        if i == 0 {
            continue;
        }
        let start = blocks.start_row(j) - 1;
        let end = start + blocks.p(j) - 1;
        let pos = start + i - 1;
        let removed = strip[pos];
        for r in pos..end {
            strip[r] = strip[r + 1];
        }
        match hole {
            None => first_removed = Some(removed),
            Some(h) => strip[h] = removed,
        }
        hole = Some(end);
    }
    if let (Some(h), Some(first)) = (hole, first_removed) {
        strip[h] = strip[x];
        strip[x] = first;
    }
    strip
}

pub fn ti(blocks: &BlockDecomposition, index: &[usize]) -> Result<IndexedTableau, CombError> {
    if index.len() != blocks.k() || index.iter().zip(&blocks.blocks).any(|(&i, &(_, p))| i > p) {
        return Err(CombError::IndexOutOfRange(index.to_vec()));
    }
    let strip = relocated_strip(blocks, index);
    let shape = blocks.nu_tensor_one();
    let mut rows = Vec::with_capacity(strip.len());
    for j in 1..=blocks.k() {
        for r in blocks.start_row(j)..blocks.start_row(j) + blocks.p(j) {
            let mut row = vec![r as u8; blocks.a(j) - 1];
            row.push(strip[r - 1]);
            rows.push(row);
        }
    }
    rows.push(vec![*strip.last().unwrap()]);
    Ok(IndexedTableau { index: index.to_vec(), tableau: Tableau::new(shape, rows), sign: permutation_sign(&strip) })
}

pub fn enumerate_ti(blocks: &BlockDecomposition) -> Vec<IndexedTableau> {
    blocks.indices().iter().map(|i| ti(blocks, i).expect("index in range")).collect()
}

/// A root `ε_r - ε_s` with `r < s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PositiveRoot {
    pub r: usize,
    pub s: usize,
}

impl PositiveRoot {
    pub fn new(r: usize, s: usize) -> Option<Self> {
        (1 <= r && r < s).then_some(PositiveRoot { r, s })
    }

    /// The root `μ - λ` when it has the form `ε_r - ε_s`.
    pub fn between(lambda: &Partition, mu: &Partition) -> Option<Self> {
        let n = lambda.len().max(mu.len());
        let d: Vec<i64> = (1..=n).map(|i| mu.part(i) as i64 - lambda.part(i) as i64).collect();
        let plus: Vec<usize> = (0..n).filter(|&i| d[i] == 1).collect();
        let minus: Vec<usize> = (0..n).filter(|&i| d[i] == -1).collect();
        let others = d.iter().filter(|&&x| x != 0).count();
        if plus.len() == 1 && minus.len() == 1 && others == 2 {
            PositiveRoot::new(plus[0] + 1, minus[0] + 1)
        } else {
            None
        }
    }

    /// `λ + α`, when it is a partition.
    pub fn apply(&self, lambda: &Partition) -> Option<Partition> {
        let mut v = lambda.padded(self.s);
        if v[self.s - 1] == 0 {
            return None;
        }
        v[self.r - 1] += 1;
        v[self.s - 1] -= 1;
        Partition::new(v).ok()
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Base-`prime` digits of the parts, one row per part, least significant digit
/// in the last column, padded to a common width.
pub fn digit_tableau(p: &Partition, prime: u64) -> Result<Vec<Vec<u64>>, CombError> {
    if !is_prime(prime) {
        return Err(CombError::NotPrime(prime));
    }
    let digits = |mut x: u64| {
        let mut d = Vec::new();
        while x > 0 {
            d.push(x % prime);
            x /= prime;
        }
        d
    };
    let all: Vec<Vec<u64>> = p.parts().iter().map(|&x| digits(x as u64)).collect();
    let width = all.iter().map(|d| d.len()).max().unwrap_or(0);
    Ok(all
        .into_iter()
        .map(|mut d| {
            d.resize(width, 0);
            d.reverse();
            d
        })
        .collect())
}

/// Every digit strictly above and weakly to the right of a nonzero digit is
/// `prime - 1`.
pub fn hom_criterion(p: &Partition, prime: u64) -> Result<bool, CombError> {
    let t = digit_tableau(p, prime)?;
    for (i, row) in t.iter().enumerate() {
        for (c, &d) in row.iter().enumerate() {
            if d == 0 {
                continue;
            }
            if t[..i].iter().any(|above| above[c..].iter().any(|&x| x != prime - 1)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Each digit column reads as a run of `prime - 1` possibly followed by one
/// other digit, with zeros after that.
pub fn comp_factor_criterion(p: &Partition, prime: u64) -> Result<bool, CombError> {
    let t = digit_tableau(p, prime)?;
    let width = t.first().map_or(0, |r| r.len());
    for c in 0..width {
        let mut ended = false;
        for row in &t {
            let d = row[c];
            if ended {
                if d != 0 {
                    return Ok(false);
                }
            } else if d != prime - 1 {
                ended = true;
            }
        }
    }
    Ok(true)
}

/// Shifts two dominant integer weights of equal degree by the smallest common
/// constant that makes both nonnegative. Returns the shift as well.
pub fn normalize_pair(w1: &[i64], w2: &[i64]) -> Result<(Partition, Partition, i64), CombError> {
    for w in [w1, w2] {
        if w.windows(2).any(|p| p[0] < p[1]) {
            return Err(CombError::NotDominant(w.to_vec()));
        }
    }
    let (s1, s2): (i64, i64) = (w1.iter().sum(), w2.iter().sum());
    if s1 != s2 || w1.len() != w2.len() {
        return Err(CombError::DegreeMismatch(s1.max(0) as usize, s2.max(0) as usize));
    }
    let low = w1.iter().chain(w2).copied().min().unwrap_or(0);
    let c = if low < 0 { -low } else { 0 };
    let shift = |w: &[i64]| Partition::new(w.iter().map(|&x| (x + c) as usize).collect()).expect("dominant");
    Ok((shift(w1), shift(w2), c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn parse_forms() {
        assert_eq!(p("3^2,1"), p("3,3,1"));
        assert_eq!(p("2,1,0"), p("2,1"));
        assert!(p("").is_empty());
        assert!("1,2".parse::<Partition>().is_err());
        let s: SkewShape = "3,2/1".parse().unwrap();
        assert_eq!(s.rows(), vec![(2, 2), (1, 2)]);
        assert!("2/3".parse::<SkewShape>().is_err());
    }

    #[test]
    fn conjugates() {
        assert_eq!(conjugate(&p("3,1")), p("2,1,1"));
        assert_eq!(conjugate(&p("")), p(""));
        assert_eq!(conjugate(&p("4")), p("1,1,1,1"));
    }

    #[test]
    fn dominance() {
        assert!(dominance_leq(&p("2,1"), &p("3")).unwrap());
        assert!(!dominance_leq(&p("3"), &p("2,1")).unwrap());
        assert!(dominance_leq(&p("2,2"), &p("3,1")).unwrap());
        assert!(dominance_leq(&p("2"), &p("3")).is_err());
    }

    #[test]
    fn hooks() {
        assert_eq!(hook_length(&p("3,1"), 1, 1).unwrap(), 4);
        assert_eq!(hook_length(&p("1"), 1, 1).unwrap(), 1);
        assert_eq!(hook_length(&p("2,1"), 1, 1).unwrap(), 3);
        assert!(hook_length(&p("2,1"), 2, 2).is_err());
    }

    #[test]
    fn blocks() {
        let b = block_decomposition(&p("3,3,1")).unwrap();
        assert_eq!(b.blocks, vec![(3, 2), (1, 1)]);
        assert_eq!(b.ells(), vec![4, 1]);
        assert_eq!(b.hs(), vec![6, 2]);
        let b = block_decomposition(&p("5")).unwrap();
        assert_eq!((b.ell(1), b.h(1)), (5, 6));
        let b = block_decomposition(&p("2,2")).unwrap();
        assert_eq!((b.ell(1), b.h(1)), (2, 4));
        assert!(block_decomposition(&p("")).is_err());
    }

    #[test]
    fn standard_tableaux_counts() {
        let s = SkewShape::straight(p("2,1"));
        assert_eq!(enumerate_standard_tableaux(&s, 2, None).len(), 2);
        assert_eq!(enumerate_standard_tableaux(&s, 3, Some(&[1, 1, 1])).len(), 2);
        assert_eq!(enumerate_standard_tableaux(&SkewShape::straight(p("1,1,1")), 2, None).len(), 0);
        assert_eq!(enumerate_standard_tableaux(&s, 3, None).len(), 8);
    }

    #[test]
    fn pieri() {
        assert_eq!(pieri_add_box(&p("2,1")), vec![p("3,1"), p("2,2"), p("2,1,1")]);
        assert_eq!(pieri_remove_box(&p("2,1")), vec![p("1,1"), p("2")]);
        assert_eq!(pieri_add_box(&p("")), vec![p("1")]);
    }

    #[test]
    fn relocation_matches_worked_example() {
        let b = BlockDecomposition { blocks: vec![(5, 5), (3, 2), (2, 3)] };
        assert_eq!(relocated_strip(&b, &[3, 0, 2]), vec![1, 2, 4, 5, 9, 6, 7, 8, 10, 11, 3]);
    }

    #[test]
    fn ti_signs() {
        let b = block_decomposition(&p("3,2")).unwrap();
        let signs: Vec<i64> = enumerate_ti(&b).iter().map(|t| t.sign).collect();
        assert_eq!(signs, vec![1, -1, -1, 1]);
        let t0 = ti(&b, &[0, 0]).unwrap();
        assert_eq!(t0.tableau, Tableau::canonical(&b.nu_tensor_one()));
        assert_eq!(enumerate_ti(&block_decomposition(&p("3,3,1")).unwrap()).len(), 6);
        assert!(ti(&b, &[2, 0]).is_err());
        for t in enumerate_ti(&b) {
            assert!(t.tableau.is_standard());
        }
    }

    #[test]
    fn digits() {
        assert!(hom_criterion(&p("1,1"), 2).unwrap());
        assert!(!hom_criterion(&p("2,1"), 2).unwrap());
        assert_eq!(digit_tableau(&p("2,1"), 2).unwrap(), vec![vec![1, 0], vec![0, 1]]);
        assert!(hom_criterion(&p("1"), 5).unwrap());
        assert!(comp_factor_criterion(&p("1"), 5).unwrap());
        assert!(digit_tableau(&p("1"), 4).is_err());
    }

    #[test]
    fn normalize() {
        assert_eq!(normalize_pair(&[2, 1], &[3, 0]).unwrap(), (p("2,1"), p("3"), 0));
        assert_eq!(normalize_pair(&[1, -1], &[2, -2]).unwrap(), (p("3,1"), p("4"), 2));
        assert_eq!(normalize_pair(&[0, 0], &[1, -1]).unwrap(), (p("1,1"), p("2"), 1));
        assert!(normalize_pair(&[1, 2], &[3, 0]).is_err());
        assert!(normalize_pair(&[2, 1], &[2, 0]).is_err());
    }
}
