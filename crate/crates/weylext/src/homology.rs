//! Equivariant Hom lattices, presentations, projective resolutions and Ext
//! groups over the integers.
//!
//! Ext is computed over the truncated Schur algebra attached to the set of
//! dominant weights below those of the two modules, reduced to its dominant
//! weight idempotents. That algebra is realized on the direct sum of the
//! Weyl modules of the truncation set together with the two modules
//! themselves, which makes the action on both modules available directly.
//! Projectives are `B e_ν`, whose `κ` weight space is the block `e_κ B e_ν`.

use crate::abw::{
    map_from_divided, Ambient, AbwError, BasedModule, ModuleMap, ModuleRef,
    SchurMatrix, Weight, WeylModule,
};
use crate::combinatorics::{compositions, dominance_leq_unchecked, partitions_of, Partition, SkewShape};
use crate::zlinalg::{
    column_lattice, hnf, int, kernel_basis, kernel_mod, Kernel, snf, subquotient, AbelianGroupType, Int, IntMatrix,
    LinalgError, Solver,
};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

#[derive(Debug, thiserror::Error)]
pub enum HomologyError {
    #[error("modules use different numbers of letters ({0} vs {1})")]
    LetterMismatch(usize, usize),
    #[error("modules have different degrees ({0} vs {1})")]
    DegreeMismatch(usize, usize),
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(i64),
    #[error("map anchored at weight {0:?} is not equivariant")]
    NotEquivariant(Weight),
    #[error("element has weight {0:?}, expected {1:?}")]
    WrongWeight(Weight, Weight),
    #[error("Ext^{i} has positive free rank ({group}); the resolution is broken")]
    InfiniteExt { i: usize, group: String },
    #[error("resolution check failed: {0}")]
    BadResolution(String),
    #[error("universal coefficients need Ext^{0}, which was not computed")]
    MissingDegree(usize),
    #[error(transparent)]
    Abw(#[from] AbwError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

pub type Result<T> = std::result::Result<T, HomologyError>;

fn check_compatible(m: &dyn BasedModule, n: &dyn BasedModule) -> Result<()> {
    if m.n() != n.n() {
        return Err(HomologyError::LetterMismatch(m.n(), n.n()));
    }
    if m.degree() != n.degree() {
        return Err(HomologyError::DegreeMismatch(m.degree(), n.degree()));
    }
    Ok(())
}

/// Linear constraints on weight blocks `φ_w: M_w -> N_w` expressing
/// commutation with the divided raising and lowering operators, or with every
/// `ξ_A` when `strict` is set.
struct HomSystem {
    blocks: Vec<(Weight, usize, usize, usize)>,
    constraints: IntMatrix,
}

fn hom_system(m: &dyn BasedModule, n: &dyn BasedModule, strict: bool) -> Result<HomSystem> {
    check_compatible(m, n)?;
    let mut blocks = Vec::new();
    let mut offset = 0;
    let mut index: HashMap<Weight, usize> = HashMap::new();
    for w in m.support() {
        let (dn, dm) = (n.dim(&w), m.dim(&w));
        if dn > 0 {
            index.insert(w.clone(), blocks.len());
            blocks.push((w, offset, dn, dm));
            offset += dn * dm;
        }
    }
    let nvars = offset;
    let mut rows: Vec<Vec<Int>> = Vec::new();
    let mut acc = IntMatrix::zeros(0, nvars);
    let all_weights = compositions(m.degree(), m.n());
    for w in m.support() {
        let mut ops: Vec<SchurMatrix> = Vec::new();
        if strict {
            for t in &all_weights {
                ops.extend(SchurMatrix::enumerate(t, &w).into_iter().filter(|a| !a.is_diagonal()));
            }
        } else {
            for i in 0..m.n().saturating_sub(1) {
                for k in 1..=m.degree() {
                    ops.extend(SchurMatrix::lower(&w, i, k));
                    ops.extend(SchurMatrix::raise(&w, i, k));
                }
            }
        }
        for a in ops {
            let w2 = a.target();
            let dn2 = n.dim(&w2);
            if dn2 == 0 {
                continue;
            }
            let dm = m.dim(&w);
            let na = n.xi(&a);
            let ma = m.xi(&a);
            let src = index.get(&w).map(|&b| blocks[b].clone());
            let dst = index.get(&w2).map(|&b| blocks[b].clone());
            for r in 0..dn2 {
                for c in 0..dm {
                    let mut row = vec![Int::zero(); nvars];
                    if let Some((_, off, dn, dmw)) = &src {
                        for k in 0..*dn {
                            let v = na.get(r, k);
                            if !v.is_zero() {
                                row[off + k * dmw + c] += v;
                            }
                        }
                    }
                    if let Some((_, off, _, dm2)) = &dst {
                        for k in 0..*dm2 {
                            let v = ma.get(k, c);
                            if !v.is_zero() {
                                row[off + r * dm2 + k] -= v;
                            }
                        }
                    }
                    if row.iter().any(|x| !x.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
        if rows.len() > 2 * nvars.max(8) {
            acc = hnf(&acc.vstack(&IntMatrix::from_rows(std::mem::take(&mut rows), nvars)));
        }
    }
    if !rows.is_empty() {
        acc = hnf(&acc.vstack(&IntMatrix::from_rows(rows, nvars)));
    }
    Ok(HomSystem { blocks, constraints: acc })
}

fn kernel_of_rows(a: &IntMatrix, nvars: usize) -> IntMatrix {
    if a.rows() == 0 {
        IntMatrix::identity(nvars)
    } else {
        kernel_basis(a)
    }
}

fn system_to_maps(sys: &HomSystem, m: &ModuleRef, n: &ModuleRef, basis: &IntMatrix) -> Vec<ModuleMap> {
    (0..basis.cols())
        .map(|j| {
            let v = basis.col(j);
            let mut blocks = BTreeMap::new();
            for (w, off, dn, dm) in &sys.blocks {
                let rows: Vec<Vec<Int>> = (0..*dn).map(|r| v[off + r * dm..off + (r + 1) * dm].to_vec()).collect();
                blocks.insert(w.clone(), IntMatrix::from_rows(rows, *dm));
            }
            ModuleMap { source: m.clone(), target: n.clone(), blocks, equivariant: None }
        })
        .collect()
}

/// Lattice basis of equivariant maps `M -> N`, each re-checked against every
/// raising and lowering operator after solving.
pub fn hom_group(m: &ModuleRef, n: &ModuleRef) -> Result<Vec<ModuleMap>> {
    hom_group_with(m, n, false)
}

/// As [`hom_group`]; `strict` imposes commutation with every `ξ_A`.
pub fn hom_group_with(m: &ModuleRef, n: &ModuleRef, strict: bool) -> Result<Vec<ModuleMap>> {
    let sys = hom_system(&**m, &**n, strict)?;
    let nvars = sys.blocks.iter().map(|(_, _, a, b)| a * b).sum();
    let basis = kernel_of_rows(&sys.constraints, nvars);
    let mut maps = system_to_maps(&sys, m, n, &basis);
    for f in &mut maps {
        let w = f.blocks.keys().next().cloned().unwrap_or_default();
        if !f.check_equivariance() {
            return Err(HomologyError::NotEquivariant(w));
        }
    }
    Ok(maps)
}

/// Structure of the group of equivariant maps after reduction modulo `modulus`.
pub fn hom_mod_m(m: &dyn BasedModule, n: &dyn BasedModule, modulus: i64) -> Result<AbelianGroupType> {
    if modulus < 2 {
        return Err(HomologyError::BadModulus(modulus));
    }
    let sys = hom_system(m, n, false)?;
    let nvars: usize = sys.blocks.iter().map(|(_, _, a, b)| a * b).sum();
    Ok(mod_kernel(&sys.constraints, nvars, modulus))
}

fn mod_kernel(a: &IntMatrix, nvars: usize, modulus: i64) -> AbelianGroupType {
    if a.rows() == 0 {
        return AbelianGroupType::from_diagonal(0, &vec![int(modulus); nvars]);
    }
    kernel_mod(a, &int(modulus))
}

/// Stacked relation constraints on `N_ν` for a Weyl module source given by
/// its cyclic presentation.
fn cyclic_constraints(shape: &SkewShape, target: &dyn BasedModule) -> (Weight, IntMatrix) {
    let n = target.n();
    let mut nu = shape.row_lengths();
    nu.resize(n, 0);
    let d = target.dim(&nu);
    let mut acc = IntMatrix::zeros(0, d);
    for rel in crate::abw::relations_generators(shape, n) {
        acc = acc.vstack(&target.xi(&rel.matrix));
    }
    (nu, acc)
}

/// `Hom(K_shape, N)` as the sublattice of `N_ν` killed by the relations,
/// `ν` the row lengths. Columns are a basis.
pub fn hom_cyclic(shape: &SkewShape, target: &dyn BasedModule) -> Result<(Weight, IntMatrix)> {
    if shape.degree() != target.degree() {
        return Err(HomologyError::DegreeMismatch(shape.degree(), target.degree()));
    }
    let (nu, a) = cyclic_constraints(shape, target);
    let d = target.dim(&nu);
    Ok((nu, kernel_of_rows(&a, d)))
}

/// The reduction modulo `modulus` of the cyclic presentation route.
pub fn hom_cyclic_mod(shape: &SkewShape, target: &dyn BasedModule, modulus: i64) -> Result<AbelianGroupType> {
    if modulus < 2 {
        return Err(HomologyError::BadModulus(modulus));
    }
    if shape.degree() != target.degree() {
        return Err(HomologyError::DegreeMismatch(shape.degree(), target.degree()));
    }
    let (nu, a) = cyclic_constraints(shape, target);
    Ok(mod_kernel(&a, target.dim(&nu), modulus))
}

/// The map `D_ν -> N` sending the canonical generator to `m`, on every weight,
/// checked for equivariance.
pub fn hom_from_weight_space(nu: &[usize], target: &ModuleRef, m: &[Int]) -> Result<ModuleMap> {
    let n = target.n();
    let mut nu_p = nu.to_vec();
    nu_p.resize(n, 0);
    if m.len() != target.dim(&nu_p) {
        return Err(HomologyError::Linalg(LinalgError::Dimension(format!(
            "element of length {} in a weight space of rank {}",
            m.len(),
            target.dim(&nu_p)
        ))));
    }
    let weights = compositions(nu.iter().sum(), n);
    let mut f = map_from_divided(&nu_p, target.clone(), m, &weights);
    if !f.check_equivariance() {
        return Err(HomologyError::NotEquivariant(nu_p));
    }
    Ok(f)
}

/// The kernel of `d'` on `D_shape`, with the induced operators.
pub struct RelationModule {
    shape: SkewShape,
    divided: Arc<Ambient>,
    weyl: Arc<WeylModule>,
    bases: Mutex<HashMap<Weight, Arc<(IntMatrix, Solver)>>>,
}

impl RelationModule {
    pub fn new(shape: SkewShape, n: usize) -> Self {
        let mut rows = shape.row_lengths();
        rows.retain(|&x| x > 0);
        let divided = Arc::new(Ambient::divided(&shape.row_lengths(), n));
        let weyl = Arc::new(WeylModule::new(shape.clone(), n));
        RelationModule { shape, divided, weyl, bases: Mutex::new(HashMap::new()) }
    }

    pub fn divided(&self) -> &Arc<Ambient> {
        &self.divided
    }

    /// Matrix of `d'` at weight `w`: exterior labels by divided labels.
    pub fn d_prime_matrix(&self, w: &[usize]) -> IntMatrix {
        let labels = self.divided.basis(w);
        let ix = self.weyl.ambient().index_of(w);
        let mut m = IntMatrix::zeros(ix.len(), labels.len());
        for (c, l) in labels.iter().enumerate() {
            for (el, v) in crate::abw::d_prime(&self.shape, l) {
                m.set(ix[&el], c, v);
            }
        }
        m
    }

    /// Kernel basis (columns, in divided-label coordinates) at weight `w`.
    pub fn basis(&self, w: &[usize]) -> IntMatrix {
        self.data(w).0.clone()
    }

    fn data(&self, w: &[usize]) -> Arc<(IntMatrix, Solver)> {
        if let Some(d) = self.bases.lock().unwrap().get(w) {
            return d.clone();
        }
        let k = if self.divided.dim(w) == 0 {
            IntMatrix::zeros(0, 0)
        } else {
            kernel_basis(&self.d_prime_matrix(w))
        };
        let s = Solver::new(&k);
        let d = Arc::new((k, s));
        self.bases.lock().unwrap().insert(w.to_vec(), d.clone());
        d
    }
}

impl BasedModule for RelationModule {
    fn n(&self) -> usize {
        self.divided.n()
    }

    fn degree(&self) -> usize {
        self.shape.degree()
    }

    fn descriptor(&self) -> String {
        format!("ker d'[{}] (n={})", self.shape, self.n())
    }

    fn dim(&self, w: &[usize]) -> usize {
        if self.divided.dim(w) == 0 {
            return 0;
        }
        self.data(w).0.cols()
    }

    fn labels(&self, w: &[usize]) -> Vec<String> {
        (0..self.dim(w)).map(|i| format!("r{i}")).collect()
    }

    fn xi(&self, a: &SchurMatrix) -> IntMatrix {
        let (src, tgt) = (a.source(), a.target());
        let (sd, td) = (self.dim(&src), self.dim(&tgt));
        if sd == 0 || td == 0 {
            return IntMatrix::zeros(td, sd);
        }
        let big = self.divided.xi(a).mul(&self.data(&src).0);
        let t = self.data(&tgt);
        let cols: Vec<Vec<Int>> =
            big.col_vecs().iter().map(|c| t.1.solve(c).expect("kernel of d' is operator-stable")).collect();
        IntMatrix::from_cols(&cols, td)
    }
}

/// The presentation `0 -> R -> D_shape -> K_shape -> 0`.
pub struct Presentation {
    pub divided: Arc<Ambient>,
    pub relations: Arc<RelationModule>,
}

pub fn presentation(shape: &SkewShape, n: usize) -> Presentation {
    let relations = Arc::new(RelationModule::new(shape.clone(), n));
    Presentation { divided: relations.divided.clone(), relations }
}

/// Lattices spanned at each weight by the submodule generated by the given
/// weight vectors, as HNF rows.
pub fn module_closure(ambient: &dyn BasedModule, gens: &[(Weight, Vec<Int>)]) -> BTreeMap<Weight, IntMatrix> {
    let mut out = BTreeMap::new();
    for k in ambient.support() {
        let mut cols: Vec<Vec<Int>> = Vec::new();
        for (w, v) in gens {
            for a in SchurMatrix::enumerate(&k, w) {
                let c = ambient.xi(&a).mul_vec(v);
                if c.iter().any(|x| !x.is_zero()) {
                    cols.push(c);
                }
            }
        }
        let d = ambient.dim(&k);
        out.insert(k, column_lattice(&IntMatrix::from_cols(&cols, d)));
    }
    out
}

/// The relation elements of `K_shape` in divided-label coordinates.
pub fn relation_vectors(shape: &SkewShape, n: usize, divided: &Ambient) -> Vec<(Weight, Vec<Int>)> {
    crate::abw::relations_generators(shape, n)
        .into_iter()
        .map(|r| {
            let w = r.matrix.target();
            let ix = divided.index_of(&w);
            let mut v = vec![Int::zero(); ix.len()];
            v[ix[&r.label]] = Int::one();
            (w, v)
        })
        .collect()
}

/// One block `e_κ B e_ν`: a lattice basis, each element recorded as its
/// matrices on the realizing modules, plus a coordinate solver.
struct Block {
    basis: Vec<Vec<IntMatrix>>,
    solver: Option<Solver>,
}

impl Block {
    fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// The algebra `e S(π) e` for a saturated set `π` of dominant weights,
/// realized on a list of modules that includes a Weyl module for each weight
/// of `π`.
pub struct TruncatedSchurAlgebra {
    n: usize,
    degree: usize,
    weights: Vec<Weight>,
    components: Vec<ModuleRef>,
    blocks: Mutex<HashMap<(usize, usize), Arc<Block>>>,
    products: Mutex<HashMap<(usize, usize, usize), Arc<Vec<IntMatrix>>>>,
}

fn flatten(ms: &[IntMatrix]) -> Vec<Int> {
    ms.iter().flat_map(|m| m.row_vecs().iter().flatten().cloned()).collect()
}

fn unflatten(v: &[Int], shapes: &[(usize, usize)]) -> Vec<IntMatrix> {
    let mut out = Vec::with_capacity(shapes.len());
    let mut pos = 0;
    for &(r, c) in shapes {
        let rows: Vec<Vec<Int>> = (0..r).map(|i| v[pos + i * c..pos + (i + 1) * c].to_vec()).collect();
        out.push(IntMatrix::from_rows(rows, c));
        pos += r * c;
    }
    out
}

/// Dominant weights (padded) below some weight of `tops`, largest first.
pub fn saturated_set(tops: &[Weight], degree: usize, n: usize) -> Vec<Weight> {
    partitions_of(degree, n)
        .into_iter()
        .map(|p| p.padded(n))
        .filter(|w| tops.iter().any(|t| dominance_leq_unchecked(w, t)))
        .collect()
}

const PRIME: u64 = (1 << 61) - 1;

fn mod_prime(x: &Int) -> u64 {
    let r = x.mod_floor(&Int::from(PRIME));
    r.to_u64().expect("reduced")
}

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn inv_mod(a: u64) -> u64 {
    let (mut r, mut b, mut e) = (1u64, a, PRIME - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b);
        }
        b = mul_mod(b, b);
        e >>= 1;
    }
    r
}

/// Indices of a maximal subset of `rows` independent modulo a large prime.
fn independent_rows(rows: &[Vec<Int>]) -> Vec<usize> {
    let mut reduced: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut chosen = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        let mut v: Vec<u64> = r.iter().map(mod_prime).collect();
        for (p, b) in &reduced {
            if v[*p] != 0 {
                let f = v[*p];
                for (x, y) in v.iter_mut().zip(b) {
                    if *y != 0 {
                        *x = (*x + PRIME - mul_mod(f, *y)) % PRIME;
                    }
                }
            }
        }
        if let Some(p) = v.iter().position(|&x| x != 0) {
            let inv = inv_mod(v[p]);
            for x in v.iter_mut() {
                *x = mul_mod(*x, inv);
            }
            reduced.push((p, v));
            chosen.push(i);
        }
    }
    chosen
}

/// A basis of the lattice spanned by `rows`, taken from the rows themselves
/// when they contain one, else the Hermite basis.
fn block_basis(rows: Vec<Vec<Int>>, len: usize) -> IntMatrix {
    let chosen = independent_rows(&rows);
    let sub = IntMatrix::from_rows(chosen.iter().map(|&i| rows[i].clone()).collect(), len);
    let solver = Solver::new(&sub.transpose());
    if rows.iter().all(|r| solver.contains(r)) {
        sub
    } else {
        hnf(&IntMatrix::from_rows(rows, len))
    }
}

impl TruncatedSchurAlgebra {
    /// `π` is the saturated set below the dominant weights of `extra`, or all
    /// dominant weights when `full` is set.
    pub fn new(n: usize, degree: usize, extra: &[ModuleRef], full: bool) -> Self {
        let weights = if full {
            partitions_of(degree, n).into_iter().map(|p| p.padded(n)).collect()
        } else {
            let tops: Vec<Weight> = extra.iter().flat_map(|m| m.dominant_support()).collect();
            saturated_set(&tops, degree, n)
        };
        let mut components: Vec<ModuleRef> = weights
            .iter()
            .map(|w| {
                let p = Partition::from_unsorted(w.clone());
                Arc::new(WeylModule::new(SkewShape::straight(p), n)) as ModuleRef
            })
            .collect();
        components.extend(extra.iter().cloned());
        TruncatedSchurAlgebra {
            n,
            degree,
            weights,
            components,
            blocks: Mutex::new(HashMap::new()),
            products: Mutex::new(HashMap::new()),
        }
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Index of an extra module passed at construction.
    pub fn extra_index(&self, k: usize) -> usize {
        self.weights.len() + k
    }

    fn shapes(&self, t: usize, s: usize) -> Vec<(usize, usize)> {
        self.components.iter().map(|c| (c.dim(&self.weights[t]), c.dim(&self.weights[s]))).collect()
    }

    fn block(&self, t: usize, s: usize) -> Arc<Block> {
        if let Some(b) = self.blocks.lock().unwrap().get(&(t, s)) {
            return b.clone();
        }
        let shapes = self.shapes(t, s);
        let len: usize = shapes.iter().map(|(r, c)| r * c).sum();
        let mut rows = Vec::new();
        for a in SchurMatrix::enumerate(&self.weights[t], &self.weights[s]) {
            let ms: Vec<IntMatrix> = self
                .components
                .iter()
                .zip(&shapes)
                .map(|(c, &(r, cc))| if r * cc == 0 { IntMatrix::zeros(r, cc) } else { c.xi(&a) })
                .collect();
            let v = flatten(&ms);
            if v.iter().any(|x| !x.is_zero()) {
                rows.push(v);
            }
        }
        let h = if rows.is_empty() { IntMatrix::zeros(0, len) } else { block_basis(rows, len) };
        let basis: Vec<Vec<IntMatrix>> = h.row_vecs().iter().map(|r| unflatten(r, &shapes)).collect();
        let solver = (h.rows() > 0).then(|| Solver::new(&h.transpose()));
        let b = Arc::new(Block { basis, solver });
        self.blocks.lock().unwrap().insert((t, s), b.clone());
        b
    }

    pub fn block_dim(&self, t: usize, s: usize) -> usize {
        self.block(t, s).dim()
    }

    /// Matrix of the `k`-th basis element of `e_t B e_s` on component `c`.
    pub fn act(&self, t: usize, s: usize, k: usize, c: usize) -> IntMatrix {
        self.block(t, s).basis[k][c].clone()
    }

    /// For each basis element `β` of `e_t B e_s`, the matrix of left
    /// multiplication `e_s B e_u -> e_t B e_u`.
    fn left_mult(&self, t: usize, s: usize, u: usize) -> Arc<Vec<IntMatrix>> {
        if let Some(p) = self.products.lock().unwrap().get(&(t, s, u)) {
            return p.clone();
        }
        let bts = self.block(t, s);
        let bsu = self.block(s, u);
        let btu = self.block(t, u);
        let mut out = Vec::with_capacity(bts.dim());
        for beta in &bts.basis {
            let cols: Vec<Vec<Int>> = bsu
                .basis
                .iter()
                .map(|x| {
                    let prod: Vec<IntMatrix> = beta.iter().zip(x).map(|(b, xx)| b.mul(xx)).collect();
                    let v = flatten(&prod);
                    match &btu.solver {
                        Some(s) => s.solve(&v).expect("blocks are closed under products"),
                        None => Vec::new(),
                    }
                })
                .collect();
            out.push(IntMatrix::from_cols(&cols, btu.dim()));
        }
        let p = Arc::new(out);
        self.products.lock().unwrap().insert((t, s, u), p.clone());
        p
    }
}

/// Options for building resolutions.
#[derive(Clone, Debug, Default)]
pub struct ResolutionOptions {
    /// Use every dominant weight instead of the saturated set of the modules.
    pub full_truncation: bool,
    /// Order in which weights are visited when choosing generators.
    pub weight_order: Option<Vec<Weight>>,
    /// Reverse the kernel basis before choosing generators.
    pub reverse_kernels: bool,
}

/// One level of a resolution: generators `(weight index, image)` where the
/// image lies in the previous level (or the resolved module at level 0), and
/// the differential at each weight.
#[derive(Clone)]
pub struct Level {
    pub gens: Vec<(usize, Vec<Int>)>,
    pub differential: Vec<IntMatrix>,
}

/// A resolution `... -> P_1 -> P_0 -> M` by sums of projectives `B e_ν`.
pub struct Resolution {
    pub algebra: Arc<TruncatedSchurAlgebra>,
    pub module_index: usize,
    pub levels: Vec<Level>,
    order: Vec<usize>,
    reverse_kernels: bool,
}

/// Vectors of `Z^d` generating `Z^d / L` minimally, for `L` spanned by
/// `rels`. Coordinates carrying a unit entry of some relation are eliminated
/// first, so the Smith form only sees the small residual presentation.
fn quotient_generators(rels: Vec<Vec<Int>>, d: usize) -> Vec<Vec<Int>> {
    let mut rels: Vec<Vec<Int>> = rels.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect();
    let mut eliminated = vec![false; d];
    loop {
        let mut best: Option<(usize, usize, usize)> = None;
        for (r, rel) in rels.iter().enumerate() {
            let weight = rel.iter().filter(|x| !x.is_zero()).count();
            if best.is_some_and(|(_, _, w)| w <= weight) {
                continue;
            }
            if let Some(j) = rel.iter().position(|x| x.magnitude().is_one()) {
                best = Some((r, j, weight));
            }
        }
        let Some((r, j, _)) = best else {
            break;
        };
        let mut p = rels.swap_remove(r);
        if p[j].is_negative() {
            for x in p.iter_mut() {
                *x = -&*x;
            }
        }
        let support: Vec<usize> = (0..d).filter(|&i| !p[i].is_zero()).collect();
        for rel in rels.iter_mut() {
            if rel[j].is_zero() {
                continue;
            }
            let f = rel[j].clone();
            for &i in &support {
                rel[i] -= &f * &p[i];
            }
        }
        rels.retain(|r| r.iter().any(|x| !x.is_zero()));
        eliminated[j] = true;
    }
    let kept: Vec<usize> = (0..d).filter(|&j| !eliminated[j]).collect();
    let m = kept.len();
    let lift = |y: &[Int]| {
        let mut g = vec![Int::zero(); d];
        for (&j, x) in kept.iter().zip(y) {
            g[j] = x.clone();
        }
        g
    };
    if rels.is_empty() {
        return (0..m)
            .map(|i| {
                let mut e = vec![Int::zero(); m];
                e[i] = Int::one();
                lift(&e)
            })
            .collect();
    }
    let residual: Vec<Vec<Int>> = rels.iter().map(|r| kept.iter().map(|&j| r[j].clone()).collect()).collect();
    let rel = column_lattice(&IntMatrix::from_cols(&residual, m)).transpose();
    let dec = snf(&rel);
    let rank = dec.invariant_factors.len();
    let usolver = Solver::new(&dec.u);
    let mut out = Vec::new();
    for i in 0..m {
        if i < rank && dec.invariant_factors[i].is_one() {
            continue;
        }
        let mut e = vec![Int::zero(); m];
        e[i] = Int::one();
        out.push(lift(&usolver.solve(&e).expect("unimodular")));
    }
    out
}

impl Resolution {
    pub fn new(algebra: Arc<TruncatedSchurAlgebra>, module_index: usize, opts: &ResolutionOptions) -> Self {
        let ws = algebra.weights().to_vec();
        let order = match &opts.weight_order {
            Some(o) => o.iter().filter_map(|w| ws.iter().position(|x| x == w)).collect(),
            None => (0..ws.len()).collect(),
        };
        Resolution { algebra, module_index, levels: Vec::new(), order, reverse_kernels: opts.reverse_kernels }
    }

    /// Generator weights of each level.
    pub fn projectives(&self) -> Vec<Vec<Weight>> {
        let ws = self.algebra.weights();
        self.levels.iter().map(|l| l.gens.iter().map(|(i, _)| ws[*i].clone()).collect()).collect()
    }

    fn target_dim(&self, level: usize, k: usize) -> usize {
        if level == 0 {
            self.algebra.components[self.module_index].dim(&self.algebra.weights()[k])
        } else {
            self.levels[level - 1].gens.iter().map(|(s, _)| self.algebra.block_dim(k, *s)).sum()
        }
    }

    /// Image of the `j`-th basis element of `e_k B e_s` applied to `y`, an
    /// element of weight `s` in the target of `level`.
    fn apply(&self, level: usize, k: usize, s: usize, j: usize, y: &[Int]) -> Vec<Int> {
        let alg = &self.algebra;
        if level == 0 {
            return alg.act(k, s, j, self.module_index).mul_vec(y);
        }
        let prev = &self.levels[level - 1];
        let mut out = Vec::new();
        let mut pos = 0;
        for (u, _) in &prev.gens {
            let d = alg.block_dim(s, *u);
            let lm = alg.left_mult(k, s, *u);
            out.extend(lm[j].mul_vec(&y[pos..pos + d]));
            pos += d;
        }
        out
    }

    fn spanning(&self, level: usize, k: usize, gens: &[(usize, Vec<Int>)]) -> IntMatrix {
        let mut cols = Vec::new();
        for (s, y) in gens {
            for j in 0..self.algebra.block_dim(k, *s) {
                cols.push(self.apply(level, k, *s, j, y));
            }
        }
        IntMatrix::from_cols(&cols, self.target_dim(level, k))
    }

    fn kernel_at(&self, level: usize, k: usize) -> Kernel {
        let d = self.target_dim(level, k);
        let z = if level == 0 {
            Kernel::new(&IntMatrix::zeros(0, d))
        } else {
            Kernel::new(&self.levels[level - 1].differential[k])
        };
        if self.reverse_kernels && z.dim() > 1 {
            z.reversed()
        } else {
            z
        }
    }

    /// Adds one more level.
    pub fn extend(&mut self) {
        let level = self.levels.len();
        let mut gens: Vec<(usize, Vec<Int>)> = Vec::new();
        let kernels: Vec<Kernel> = (0..self.algebra.weights().len()).map(|k| self.kernel_at(level, k)).collect();
        for &k in &self.order {
            let z = &kernels[k];
            if z.dim() == 0 {
                continue;
            }
            let s = self.spanning(level, k, &gens);
            let coords: Vec<Vec<Int>> =
                s.col_vecs().iter().map(|c| z.coords(c).expect("image lies in the kernel")).collect();
            for g in quotient_generators(coords, z.dim()) {
                gens.push((k, z.basis.mul_vec(&g)));
            }
        }
        let differential = (0..self.algebra.weights().len()).map(|k| self.spanning(level, k, &gens)).collect();
        self.levels.push(Level { gens, differential });
    }

    pub fn extend_to(&mut self, len: usize) {
        while self.levels.len() < len {
            self.extend();
        }
    }

    /// Consecutive differentials compose to zero and each image equals the
    /// kernel of the next map, at every weight.
    pub fn check(&self) -> Result<()> {
        let nw = self.algebra.weights().len();
        for level in 0..self.levels.len() {
            for k in 0..nw {
                let d = &self.levels[level].differential[k];
                let z = self.kernel_at(level, k);
                let img = column_lattice(d);
                if img != column_lattice(&z.basis) {
                    return Err(HomologyError::BadResolution(format!(
                        "level {level}, weight {:?}: image differs from kernel",
                        self.algebra.weights()[k]
                    )));
                }
                if level > 0 && !self.levels[level - 1].differential[k].mul(d).is_zero() {
                    return Err(HomologyError::BadResolution(format!("d^2 != 0 at level {level}")));
                }
            }
        }
        Ok(())
    }

    /// Cochain complex `Hom(P_i, N)` for the extra module at `target_index`;
    /// returns the ranks of the cochain groups and the coboundaries.
    pub fn hom_complex(&self, target_index: usize) -> (Vec<usize>, Vec<IntMatrix>) {
        let alg = &self.algebra;
        let ws = alg.weights();
        let nmod = &alg.components[target_index];
        let dims: Vec<usize> =
            self.levels.iter().map(|l| l.gens.iter().map(|(s, _)| nmod.dim(&ws[*s])).sum()).collect();
        let mut cob = Vec::new();
        for i in 0..self.levels.len().saturating_sub(1) {
            let (cur, next) = (&self.levels[i], &self.levels[i + 1]);
            let mut m = IntMatrix::zeros(dims[i + 1], dims[i]);
            let mut roff = 0;
            for (t, y) in &next.gens {
                let rdim = nmod.dim(&ws[*t]);
                let mut coff = 0;
                let mut pos = 0;
                for (s, _) in &cur.gens {
                    let cdim = nmod.dim(&ws[*s]);
                    let bd = alg.block_dim(*t, *s);
                    for j in 0..bd {
                        let c = &y[pos + j];
                        if c.is_zero() || rdim == 0 || cdim == 0 {
                            continue;
                        }
                        let a = alg.act(*t, *s, j, target_index);
                        for r in 0..rdim {
                            for cc in 0..cdim {
                                let v = a.get(r, cc);
                                if !v.is_zero() {
                                    m.add_to(roff + r, coff + cc, &(c * v));
                                }
                            }
                        }
                    }
                    pos += bd;
                    coff += cdim;
                }
                roff += rdim;
            }
            cob.push(m);
        }
        (dims, cob)
    }
}

/// Cohomology of a cochain complex given by ranks and coboundaries
/// `δ^i: C^i -> C^{i+1}`; degree `i` needs `δ^i`.
pub fn cohomology(dims: &[usize], cob: &[IntMatrix], max_i: usize) -> Result<Vec<AbelianGroupType>> {
    let mut out = Vec::new();
    for i in 0..=max_i {
        let d = dims.get(i).copied().unwrap_or(0);
        let ker = match cob.get(i) {
            Some(m) if m.rows() > 0 => kernel_basis(m),
            _ => IntMatrix::identity(d),
        };
        let im = if i == 0 { IntMatrix::zeros(d, 0) } else { cob[i - 1].clone() };
        out.push(subquotient(d, &ker, &im)?);
    }
    Ok(out)
}

fn finite_check(groups: &[AbelianGroupType]) -> Result<()> {
    for (i, g) in groups.iter().enumerate().skip(1) {
        if g.free_rank > 0 {
            return Err(HomologyError::InfiniteExt { i, group: g.to_string() });
        }
    }
    Ok(())
}

/// `Ext^i(M, N)` for `0 <= i <= max_i`.
pub fn ext_modules(m: ModuleRef, n: ModuleRef, max_i: usize, opts: &ResolutionOptions) -> Result<Vec<AbelianGroupType>> {
    check_compatible(&*m, &*n)?;
    let alg = Arc::new(TruncatedSchurAlgebra::new(m.n(), m.degree(), &[m.clone(), n.clone()], opts.full_truncation));
    let (mi, ni) = (alg.extra_index(0), alg.extra_index(1));
    let mut res = Resolution::new(alg, mi, opts);
    res.extend_to(max_i + 2);
    let (dims, cob) = res.hom_complex(ni);
    let groups = cohomology(&dims, &cob, max_i)?;
    finite_check(&groups)?;
    Ok(groups)
}

/// One Ext group with the data needed to reproduce it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtResult {
    pub source: String,
    pub target: String,
    pub n: usize,
    pub i: usize,
    pub group: AbelianGroupType,
    pub resolution_length: usize,
}

#[derive(Serialize, Deserialize)]
struct ExtJson {
    lambda: String,
    mu: String,
    n: usize,
    i: usize,
    free_rank: usize,
    torsion: Vec<u64>,
}

impl Serialize for ExtResult {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ExtJson {
            lambda: self.source.clone(),
            mu: self.target.clone(),
            n: self.n,
            i: self.i,
            free_rank: self.group.free_rank,
            torsion: self.group.torsion.iter().map(|t| t.to_u64().unwrap_or(u64::MAX)).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExtResult {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = ExtJson::deserialize(d)?;
        let diag: Vec<Int> = j.torsion.iter().map(|&t| Int::from(t)).collect();
        Ok(ExtResult {
            source: j.lambda,
            target: j.mu,
            n: j.n,
            i: j.i,
            group: AbelianGroupType::from_diagonal(j.free_rank, &diag),
            resolution_length: j.i + 2,
        })
    }
}

/// `Ext^i(K_shape, N)` for `i <= max_i`.
pub fn ext_groups(shape: &SkewShape, target: ModuleRef, max_i: usize) -> Result<Vec<ExtResult>> {
    ext_groups_with(shape, target, max_i, &ResolutionOptions::default())
}

pub fn ext_groups_with(
    shape: &SkewShape,
    target: ModuleRef,
    max_i: usize,
    opts: &ResolutionOptions,
) -> Result<Vec<ExtResult>> {
    let n = target.n();
    let m: ModuleRef = Arc::new(WeylModule::new(shape.clone(), n));
    let label = target.descriptor();
    let groups = ext_modules(m, target, max_i, opts)?;
    Ok(groups
        .into_iter()
        .enumerate()
        .map(|(i, group)| ExtResult {
            source: shape.to_string(),
            target: label.clone(),
            n,
            i,
            group,
            resolution_length: max_i + 2,
        })
        .collect())
}

/// `Ext^i(K_λ, K_μ)`, with `n` defaulting to the larger number of rows.
pub fn ext_weyl(lambda: &Partition, mu: &Partition, n: Option<usize>, max_i: usize) -> Result<Vec<ExtResult>> {
    let n = n.unwrap_or(lambda.len().max(mu.len()).max(1));
    if n < lambda.len().max(mu.len()) {
        return Err(HomologyError::Abw(AbwError::TooFewLetters(format!("{lambda} / {mu}"), lambda.len().max(mu.len()))));
    }
    let target: ModuleRef = Arc::new(WeylModule::new(SkewShape::straight(mu.clone()), n));
    let mut out = ext_groups(&SkewShape::straight(lambda.clone()), target, max_i)?;
    for r in &mut out {
        r.target = mu.to_string();
    }
    Ok(out)
}

/// Positive compositions of `r` with exactly `k` parts, lexicographically
/// decreasing.
pub fn positive_compositions(r: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return if r == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    if r < k {
        return Vec::new();
    }
    compositions(r - k, k).into_iter().map(|c| c.into_iter().map(|x| x + 1).collect()).collect()
}

/// The merge matrix sending part `t` of `beta` to the part of `alpha` it
/// came from, when `beta` splits part `j` of `alpha`.
fn merge_matrix(beta: &[usize], j: usize, n: usize) -> SchurMatrix {
    let mut a = SchurMatrix::zeros(n);
    for (t, &b) in beta.iter().enumerate() {
        let row = if t <= j { t } else { t - 1 };
        a.set(row, t, b);
    }
    a
}

/// Cochains `Hom(P_i, N) = ⊕ N_α` over compositions `α` of `r` with `r - i`
/// parts, for the resolution of `Λ_r` by sums of `D_α` whose differential
/// splits one part at a time.
pub fn exterior_hom_complex(r: usize, target: &dyn BasedModule, levels: usize) -> (Vec<usize>, Vec<IntMatrix>) {
    let n = target.n();
    let pad = |a: &[usize]| {
        let mut w = a.to_vec();
        w.resize(n, 0);
        w
    };
    let mut comps: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut dims = Vec::new();
    for i in 0..levels {
        let cs = if i < r && r - i <= n { positive_compositions(r, r - i) } else { Vec::new() };
        dims.push(cs.iter().map(|a| target.dim(&pad(a))).sum());
        comps.push(cs);
    }
    let mut cob = Vec::new();
    for i in 0..levels.saturating_sub(1) {
        let mut m = IntMatrix::zeros(dims[i + 1], dims[i]);
        let offsets: HashMap<&Vec<usize>, usize> = {
            let mut o = HashMap::new();
            let mut pos = 0;
            for b in &comps[i] {
                o.insert(b, pos);
                pos += target.dim(&pad(b));
            }
            o
        };
        let mut roff = 0;
        for alpha in &comps[i + 1] {
            let rdim = target.dim(&pad(alpha));
            for j in 0..alpha.len() {
                for a in 1..alpha[j] {
                    let mut beta = alpha[..j].to_vec();
                    beta.push(a);
                    beta.push(alpha[j] - a);
                    beta.extend_from_slice(&alpha[j + 1..]);
                    let coff = offsets[&beta];
                    let x = target.xi(&merge_matrix(&beta, j, n));
                    let sign = if j % 2 == 0 { Int::one() } else { -Int::one() };
                    for rr in 0..x.rows() {
                        for cc in 0..x.cols() {
                            let v = x.get(rr, cc);
                            if !v.is_zero() {
                                m.add_to(roff + rr, coff + cc, &(v * &sign));
                            }
                        }
                    }
                }
            }
            roff += rdim;
        }
        cob.push(m);
    }
    (dims, cob)
}

/// `Ext^i(Λ_r, N)` from the splitting resolution; needs `n >= r`.
pub fn ext_from_exterior(r: usize, target: &dyn BasedModule, max_i: usize) -> Result<Vec<AbelianGroupType>> {
    if target.degree() != r {
        return Err(HomologyError::DegreeMismatch(r, target.degree()));
    }
    if target.n() < r {
        return Err(HomologyError::Abw(AbwError::TooFewLetters(format!("1^{r}"), r)));
    }
    let (dims, cob) = exterior_hom_complex(r, target, max_i + 2);
    let groups = cohomology(&dims, &cob, max_i)?;
    finite_check(&groups)?;
    Ok(groups)
}

/// Dimensions over the prime field, degree by degree, from the integral
/// groups through one degree beyond. The last input degree only feeds the
/// Tor term and gets no entry of its own.
pub fn mod_p_dimensions(groups: &[AbelianGroupType], p: i64) -> Result<Vec<usize>> {
    if groups.len() < 2 {
        return Err(HomologyError::MissingDegree(groups.len()));
    }
    let p = int(p);
    Ok((0..groups.len() - 1)
        .map(|i| groups[i].free_rank + groups[i].p_rank(&p) + groups[i + 1].p_rank(&p))
        .collect())
}

/// The element `d'(X_T)` of a Weyl module for the canonical tableau, in the
/// standard basis, as a column for [`hom_from_weight_space`].
pub fn canonical_vector(k: &WeylModule) -> Vec<Int> {
    k.canonical_coords()
}

/// `|x|` for the first nonzero coordinate, used to normalize signs.
pub fn leading_sign(v: &[Int]) -> i64 {
    v.iter().find(|x| !x.is_zero()).map_or(0, |x| if x.is_negative() { -1 } else { 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn weyl(s: &str, n: usize) -> ModuleRef {
        Arc::new(WeylModule::new(s.parse().unwrap(), n))
    }

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn hom_examples() {
        assert_eq!(hom_group(&weyl("2,1", 2), &weyl("2,1", 2)).unwrap().len(), 1);
        assert_eq!(hom_group(&weyl("2,1", 2), &weyl("3", 2)).unwrap().len(), 0);
        let d21: ModuleRef = Arc::new(Ambient::divided(&[2, 1], 2));
        let d3: ModuleRef = Arc::new(Ambient::divided(&[3], 2));
        assert_eq!(hom_group(&d21, &d3).unwrap().len(), 1);
    }

    #[test]
    fn presentation_ranks() {
        let pr = presentation(&"2,1".parse().unwrap(), 2);
        assert_eq!(pr.relations.rank(), 4);
        assert_eq!(presentation(&"2".parse().unwrap(), 2).relations.rank(), 0);
    }

    #[test]
    fn ext_lambda2_d2() {
        let g = ext_weyl(&p("1,1"), &p("2"), None, 2).unwrap();
        assert!(g[0].group.is_trivial());
        assert_eq!(g[1].group, AbelianGroupType::cyclic(2));
        assert!(g[2].group.is_trivial());
    }

    #[test]
    fn ext_21_3() {
        let g = ext_weyl(&p("2,1"), &p("3"), None, 2).unwrap();
        assert_eq!(g[1].group, AbelianGroupType::cyclic(3));
        assert!(g[2].group.is_trivial());
    }

    #[test]
    fn exterior_route_small() {
        let d2: ModuleRef = Arc::new(Ambient::divided(&[2], 2));
        let g = ext_from_exterior(2, &*d2, 2).unwrap();
        assert_eq!(g[1], AbelianGroupType::cyclic(2));
        assert!(g[0].is_trivial() && g[2].is_trivial());
    }

    #[test]
    fn uct() {
        let g = vec![AbelianGroupType::trivial(), AbelianGroupType::cyclic(3), AbelianGroupType::trivial()];
        assert_eq!(mod_p_dimensions(&g, 3).unwrap(), vec![1, 1]);
        assert_eq!(mod_p_dimensions(&g, 2).unwrap(), vec![0, 0]);
    }

    #[test]
    fn json_shape() {
        let r = ExtResult {
            source: "2,1".into(),
            target: "3".into(),
            n: 2,
            i: 1,
            group: AbelianGroupType::cyclic(3),
            resolution_length: 3,
        };
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"lambda":"2,1","mu":"3","n":2,"i":1,"free_rank":0,"torsion":[3]}"#
        );
    }
}
