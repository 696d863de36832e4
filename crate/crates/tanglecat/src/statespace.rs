//! Subset-indexed state spaces, sparse matrices over `QuarterLaurent`, the
//! window-to-global extension, modified-basis change matrices and exact
//! inversion over the Laurent ring.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use thiserror::Error;

use crate::diagram::OrientSeq;
use crate::gradedring::{apply_varmap, Ctx, QuarterLaurent, RingError, VarContext, VarMap};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StateError {
    #[error("descriptor mismatch: {0} vs {1}")]
    Descriptor(String, String),
    #[error("window index {0} out of range")]
    Window(usize),
    #[error("matrix is not square")]
    NotSquare,
    #[error("determinant is not a unit monomial")]
    NotUnit,
    #[error(transparent)]
    Ring(#[from] RingError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Right,
    Left,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Framework {
    Rt,
    Viro,
    Osz,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BasisKind {
    /// Tensor basis `w_x` (for Viro: the standard basis).
    Native,
    /// Viro's dual basis (`v_1^* = -t^2 v_1`); for RT the same as native.
    Dual,
    /// `l_x`, indices `1..n` (right) or `0..n-1` (left).
    Modified(Side),
    /// Idempotents `I_x` over regions, truncated on one side.
    Idempotent(Side),
    /// Subsets of a window of the given size, indexed by local bits.
    Local(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BasisDescriptor {
    pub n: usize,
    pub orient: OrientSeq,
    pub kind: BasisKind,
    pub framework: Framework,
}

impl BasisDescriptor {
    pub fn new(orient: OrientSeq, kind: BasisKind, framework: Framework) -> Self {
        BasisDescriptor { n: orient.n, orient, kind, framework }
    }

    pub fn local(size: usize, framework: Framework) -> Self {
        BasisDescriptor { n: size, orient: OrientSeq::empty(), kind: BasisKind::Local(size), framework }
    }

    /// The index labels this basis draws its subsets from.
    pub fn index_set(&self) -> Vec<usize> {
        match self.kind {
            BasisKind::Native | BasisKind::Dual => (1..=self.n).collect(),
            BasisKind::Modified(Side::Right) | BasisKind::Idempotent(Side::Right) => (1..=self.n).collect(),
            BasisKind::Modified(Side::Left) | BasisKind::Idempotent(Side::Left) => (0..self.n).collect(),
            BasisKind::Local(m) => (0..m).collect(),
        }
    }

    pub fn mask(&self) -> u64 {
        self.index_set().iter().fold(0, |a, &j| a | 1 << j)
    }

    /// All subsets, in increasing order of their bit encoding.
    pub fn subsets(&self) -> Vec<u64> {
        subsets_of(&self.index_set())
    }

    pub fn dim(&self) -> usize {
        1 << self.index_set().len()
    }

    fn same_space(&self, o: &Self) -> bool {
        self.index_set() == o.index_set() && self.kind_class() == o.kind_class()
    }

    fn kind_class(&self) -> u8 {
        match self.kind {
            BasisKind::Native => 0,
            BasisKind::Dual => 1,
            BasisKind::Modified(_) | BasisKind::Idempotent(_) => 2,
            BasisKind::Local(_) => 3,
        }
    }
}

impl fmt::Display for BasisDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}/{:?} n={} orient={}", self.framework, self.kind, self.n, self.orient)
    }
}

pub fn subsets_of(idx: &[usize]) -> Vec<u64> {
    let mut out: Vec<u64> = (0..1u64 << idx.len())
        .map(|b| idx.iter().enumerate().filter(|(k, _)| b >> k & 1 == 1).fold(0, |a, (_, &j)| a | 1 << j))
        .collect();
    out.sort_unstable();
    out
}

/// Printed order of subsets of a 3-element window `{A, B, C}` in local bits.
pub const PRINTED_ORDER_3: [u64; 8] = [0b000, 0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMatrix {
    pub domain: BasisDescriptor,
    pub codomain: BasisDescriptor,
    pub ctx: Ctx,
    entries: BTreeMap<(u64, u64), QuarterLaurent>,
}

impl GradedMatrix {
    pub fn zero(domain: BasisDescriptor, codomain: BasisDescriptor, ctx: &Ctx) -> Self {
        GradedMatrix { domain, codomain, ctx: ctx.clone(), entries: BTreeMap::new() }
    }

    pub fn identity(desc: BasisDescriptor, ctx: &Ctx) -> Self {
        let mut m = Self::zero(desc, desc, ctx);
        for s in desc.subsets() {
            m.set(s, s, QuarterLaurent::one(ctx));
        }
        m
    }

    /// Local matrix from rows listed in a given subset order.
    pub fn from_rows(domain: BasisDescriptor, codomain: BasisDescriptor, ctx: &Ctx, row_order: &[u64], col_order: &[u64], rows: Vec<Vec<QuarterLaurent>>) -> Self {
        let mut m = Self::zero(domain, codomain, ctx);
        assert_eq!(rows.len(), row_order.len());
        for (r, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), col_order.len());
            for (c, v) in row.into_iter().enumerate() {
                m.set(row_order[r], col_order[c], v);
            }
        }
        m
    }

    pub fn get(&self, row: u64, col: u64) -> QuarterLaurent {
        self.entries.get(&(row, col)).cloned().unwrap_or_else(|| QuarterLaurent::zero(&self.ctx))
    }

    pub fn get_ref(&self, row: u64, col: u64) -> Option<&QuarterLaurent> {
        self.entries.get(&(row, col))
    }

    pub fn set(&mut self, row: u64, col: u64, v: QuarterLaurent) {
        if v.is_zero() {
            self.entries.remove(&(row, col));
        } else {
            let v = v.rebase(&self.ctx);
            self.entries.insert((row, col), v);
        }
    }

    pub fn add_to(&mut self, row: u64, col: u64, v: &QuarterLaurent) {
        let cur = self.get(row, col);
        self.set(row, col, &cur + v);
    }

    pub fn entries(&self) -> impl Iterator<Item = (u64, u64, &QuarterLaurent)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn with_descriptors(mut self, domain: BasisDescriptor, codomain: BasisDescriptor) -> Self {
        self.domain = domain;
        self.codomain = codomain;
        self
    }

    pub fn map_entries(&self, m: &VarMap) -> Result<Self, StateError> {
        let mut out = Self::zero(self.domain, self.codomain, &m.target);
        for (&k, v) in &self.entries {
            let w = apply_varmap(m, v)?;
            if !w.is_zero() {
                out.entries.insert(k, w);
            }
        }
        Ok(out)
    }

    /// Apply `f` to every entry; `ctx` is the context of the results.
    pub fn map_polys(&self, ctx: &Ctx, f: impl Fn(&QuarterLaurent) -> QuarterLaurent) -> Self {
        let mut out = Self::zero(self.domain, self.codomain, ctx);
        for (&k, v) in &self.entries {
            let w = f(v);
            if !w.is_zero() {
                out.entries.insert(k, w.rebase(ctx));
            }
        }
        out
    }

    pub fn scale(&self, s: &QuarterLaurent) -> Self {
        let mut out = Self::zero(self.domain, self.codomain, &self.ctx);
        for (&k, v) in &self.entries {
            let w = v * s;
            if !w.is_zero() {
                out.entries.insert(k, w);
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&QuarterLaurent::constant(&self.ctx, -1))
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.codomain, self.domain, &self.ctx);
        for (&(r, c), v) in &self.entries {
            out.entries.insert((c, r), v.clone());
        }
        out
    }

    /// First entry where the two matrices differ, if any.
    pub fn first_difference(&self, o: &Self) -> Option<(u64, u64, QuarterLaurent, QuarterLaurent)> {
        let mut keys: Vec<(u64, u64)> = self.entries.keys().chain(o.entries.keys()).copied().collect();
        keys.sort_unstable();
        keys.dedup();
        for (r, c) in keys {
            let a = self.get(r, c);
            let b = o.get(r, c);
            if a.ctx() != b.ctx() || a.to_string() != b.to_string() {
                return Some((r, c, a, b));
            }
        }
        None
    }

    /// Equal entries (descriptors ignored).
    pub fn same_entries(&self, o: &Self) -> bool {
        self.first_difference(o).is_none()
    }

    /// Every nonzero entry changes subset size by exactly `delta`.
    pub fn respects_cardinality(&self, delta: i32) -> bool {
        self.entries.keys().all(|&(r, c)| r.count_ones() as i32 - c.count_ones() as i32 == delta)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<serde_json::Value> = self.entries.iter().map(|(&(r, c), v)| serde_json::json!([r, c, v.to_string()])).collect();
        serde_json::json!({
            "domain": self.domain.to_string(),
            "codomain": self.codomain.to_string(),
            "entries": entries,
        })
    }
}

/// Matrix product `a * b` (apply `b` first).
pub fn compose(a: &GradedMatrix, b: &GradedMatrix) -> Result<GradedMatrix, StateError> {
    if !a.domain.same_space(&b.codomain) {
        return Err(StateError::Descriptor(a.domain.to_string(), b.codomain.to_string()));
    }
    if a.ctx != b.ctx {
        return Err(RingError::ContextMismatch(a.ctx.names().join(","), b.ctx.names().join(",")).into());
    }
    Ok(mul_unchecked(a, b))
}

pub(crate) fn mul_unchecked(a: &GradedMatrix, b: &GradedMatrix) -> GradedMatrix {
    let mut by_row: HashMap<u64, Vec<(u64, &QuarterLaurent)>> = HashMap::new();
    for (&(r, c), v) in &b.entries {
        by_row.entry(r).or_default().push((c, v));
    }
    let mut acc: BTreeMap<(u64, u64), QuarterLaurent> = BTreeMap::new();
    for (&(r, k), va) in &a.entries {
        if let Some(list) = by_row.get(&k) {
            for &(c, vb) in list {
                acc.entry((r, c)).or_insert_with(|| QuarterLaurent::zero(&a.ctx)).add_product(va, vb);
            }
        }
    }
    acc.retain(|_, v| !v.is_zero());
    GradedMatrix { domain: b.domain, codomain: a.codomain, ctx: a.ctx.clone(), entries: acc }
}

/// Extend a window matrix to all subsets. Local bit `k` of a column stands
/// for global index `win_in[k]`, of a row for `win_out[k]`; indices off the
/// window travel along `shift`. Local rows or columns that mention an index
/// outside the global index sets are dropped.
pub fn local_to_global(
    local: &GradedMatrix,
    win_in: &[usize],
    win_out: &[usize],
    shift: &dyn Fn(usize) -> usize,
    domain: BasisDescriptor,
    codomain: BasisDescriptor,
) -> Result<GradedMatrix, StateError> {
    let dmask = domain.mask();
    let cmask = codomain.mask();
    for &w in win_in.iter().chain(win_out) {
        if w > 62 {
            return Err(StateError::Window(w));
        }
    }
    let to_global = |bits: u64, win: &[usize]| -> u64 { win.iter().enumerate().filter(|(k, _)| bits >> k & 1 == 1).fold(0, |a, (_, &j)| a | 1 << j) };
    let win_in_mask = win_in.iter().fold(0u64, |a, &j| a | 1 << j);
    let win_out_mask = win_out.iter().fold(0u64, |a, &j| a | 1 << j);
    let mut by_col: HashMap<u64, Vec<(u64, &QuarterLaurent)>> = HashMap::new();
    for (&(r, c), v) in &local.entries {
        let gr = to_global(r, win_out);
        let gc = to_global(c, win_in);
        if gr & !cmask != 0 || gc & !dmask != 0 {
            continue;
        }
        by_col.entry(gc).or_default().push((gr, v));
    }
    let mut out = GradedMatrix::zero(domain, codomain, &local.ctx);
    for y in domain.subsets() {
        let y_win = y & win_in_mask;
        let Some(list) = by_col.get(&y_win) else { continue };
        let mut rest = 0u64;
        let mut ok = true;
        for j in 0..63 {
            if (y & !win_in_mask) >> j & 1 == 1 {
                let t = shift(j);
                if t > 62 || (1u64 << t) & (!cmask | win_out_mask) != 0 {
                    ok = false;
                    break;
                }
                rest |= 1 << t;
            }
        }
        if !ok {
            return Err(StateError::Window(y.trailing_zeros() as usize));
        }
        for &(x_win, v) in list {
            out.entries.insert((rest | x_win, y), v.clone());
        }
    }
    Ok(out)
}

/// Gauss-Jordan elimination using only unit-monomial pivots. Succeeds on
/// every matrix used here (all have a unit determinant and admit such
/// pivots); reports `NotUnit` otherwise.
pub fn invert_unit(m: &GradedMatrix) -> Result<GradedMatrix, StateError> {
    let rows = m.codomain.subsets();
    let cols = m.domain.subsets();
    if rows.len() != cols.len() {
        return Err(StateError::NotSquare);
    }
    let n = rows.len();
    let rpos: HashMap<u64, usize> = rows.iter().enumerate().map(|(k, &s)| (s, k)).collect();
    let cpos: HashMap<u64, usize> = cols.iter().enumerate().map(|(k, &s)| (s, k)).collect();
    // augmented rows: a[r] = (left part, right part) as sparse maps
    let mut a: Vec<BTreeMap<usize, QuarterLaurent>> = vec![BTreeMap::new(); n];
    let mut b: Vec<BTreeMap<usize, QuarterLaurent>> = vec![BTreeMap::new(); n];
    for (&(r, c), v) in &m.entries {
        a[rpos[&r]].insert(cpos[&c], v.clone());
    }
    for (k, row) in b.iter_mut().enumerate() {
        row.insert(k, QuarterLaurent::one(&m.ctx));
    }
    let mut used = vec![false; n];
    let mut pivot_of_col = vec![usize::MAX; n];
    for col in 0..n {
        let Some(p) = (0..n).find(|&r| !used[r] && a[r].get(&col).is_some_and(|v| v.is_unit())) else {
            return Err(StateError::NotUnit);
        };
        used[p] = true;
        pivot_of_col[col] = p;
        let inv = a[p][&col].unit_inverse()?;
        scale_row(&mut a[p], &inv);
        scale_row(&mut b[p], &inv);
        let (pa, pb) = (a[p].clone(), b[p].clone());
        for r in 0..n {
            if r == p {
                continue;
            }
            if let Some(f) = a[r].get(&col).cloned() {
                axpy(&mut a[r], &f, &pa);
                axpy(&mut b[r], &f, &pb);
            }
        }
    }
    // row pivot_of_col[c] now reads e_c on the left, so it is row c of the inverse
    let mut out = GradedMatrix::zero(m.codomain, m.domain, &m.ctx);
    for (c, &p) in pivot_of_col.iter().enumerate() {
        for (&k, v) in &b[p] {
            out.entries.insert((cols[c], rows[k]), v.clone());
        }
    }
    Ok(out)
}

fn scale_row(row: &mut BTreeMap<usize, QuarterLaurent>, s: &QuarterLaurent) {
    for v in row.values_mut() {
        *v = &*v * s;
    }
}

/// `row -= f * pivot`
fn axpy(row: &mut BTreeMap<usize, QuarterLaurent>, f: &QuarterLaurent, pivot: &BTreeMap<usize, QuarterLaurent>) {
    for (&k, v) in pivot {
        let d = f * v;
        let cur = row.remove(&k);
        let nv = match cur {
            Some(c) => &c - &d,
            None => -&d,
        };
        if !nv.is_zero() {
            row.insert(k, nv);
        }
    }
}

/// Wedge the vectors `vecs[0] ^ vecs[1] ^ ...` (each a sparse combination of
/// generator indices) into a combination of subsets; sign = parity of the
/// sort that brings each product to increasing order.
pub fn wedge(ctx: &Ctx, vecs: &[Vec<(usize, QuarterLaurent)>]) -> BTreeMap<u64, QuarterLaurent> {
    let mut acc: BTreeMap<u64, QuarterLaurent> = BTreeMap::new();
    acc.insert(0, QuarterLaurent::one(ctx));
    for v in vecs {
        acc = wedge_extend(ctx, &acc, v);
    }
    acc
}

/// `acc ^ v` for a combination of subsets `acc` and a vector `v`.
fn wedge_extend(ctx: &Ctx, acc: &BTreeMap<u64, QuarterLaurent>, v: &[(usize, QuarterLaurent)]) -> BTreeMap<u64, QuarterLaurent> {
    let mut next: BTreeMap<u64, QuarterLaurent> = BTreeMap::new();
    for (&set, c) in acc {
        for (j, a) in v {
            if set >> j & 1 == 1 {
                continue;
            }
            // move w_j left past every element greater than j
            let greater = (set >> (j + 1)).count_ones();
            let mut term = c * a;
            if greater % 2 == 1 {
                term = -&term;
            }
            let key = set | 1 << j;
            let cur = next.remove(&key).unwrap_or_else(|| QuarterLaurent::zero(ctx));
            let nv = &cur + &term;
            if !nv.is_zero() {
                next.insert(key, nv);
            }
        }
    }
    next
}

/// Every wedge `vecs[k1] ^ vecs[k2] ^ ...` (increasing `k`), keyed by the
/// subset `{pos[k1], pos[k2], ...}`. Each product extends a smaller one.
fn exterior_columns(ctx: &Ctx, pos: &[usize], vecs: &[Vec<(usize, QuarterLaurent)>]) -> Vec<(u64, BTreeMap<u64, QuarterLaurent>)> {
    let k = pos.len();
    let mut out: Vec<(u64, BTreeMap<u64, QuarterLaurent>)> = Vec::with_capacity(1 << k);
    out.push((0, BTreeMap::from([(0, QuarterLaurent::one(ctx))])));
    for local in 1u64..1 << k {
        let top = 63 - local.leading_zeros() as usize;
        let prev = local & !(1 << top);
        let col = wedge_extend(ctx, &out[prev as usize].1, &vecs[top]);
        out.push((out[prev as usize].0 | 1 << pos[top], col));
    }
    out
}

/// The special element `l_i` as a combination of `w_j` (over the point
/// variables `t1..tn` for Viro, over `t` with `q = t^(1/2)` for RT).
pub fn special_element(o: &OrientSeq, i: usize, framework: Framework, ctx: &Ctx) -> Vec<(usize, QuarterLaurent)> {
    let n = o.n;
    let q = |k: i64| QuarterLaurent::q_pow(ctx, 1, k);
    let c = |k: i64| QuarterLaurent::constant(ctx, k);
    let tsq = |j: usize| QuarterLaurent::mono(ctx, 1, &[(&format!("t{j}"), 8)]);
    let neg = |p: QuarterLaurent| -&p;
    match framework {
        Framework::Rt => {
            if i == 0 {
                return vec![(1, if o.is_up(1) { neg(q(-1)) } else { c(1) })];
            }
            if i == n {
                return vec![(n, if o.is_up(n) { c(1) } else { q(-1) })];
            }
            match (o.is_up(i), o.is_up(i + 1)) {
                (true, true) => vec![(i, c(1)), (i + 1, neg(q(-1)))],
                (true, false) => vec![(i, c(1)), (i + 1, c(1))],
                (false, true) => vec![(i, q(-1)), (i + 1, neg(q(-1)))],
                (false, false) => vec![(i, q(-1)), (i + 1, c(1))],
            }
        }
        Framework::Viro | Framework::Osz => {
            if i == 0 {
                return vec![(1, if o.is_up(1) { c(-1) } else { tsq(1) })];
            }
            if i == n {
                return vec![(n, if o.is_up(n) { tsq(n) } else { c(1) })];
            }
            match (o.is_up(i), o.is_up(i + 1)) {
                (true, true) => vec![(i, tsq(i)), (i + 1, c(-1))],
                (true, false) => vec![(i, tsq(i)), (i + 1, tsq(i + 1))],
                (false, true) => vec![(i, c(1)), (i + 1, c(-1))],
                (false, false) => vec![(i, c(1)), (i + 1, tsq(i + 1))],
            }
        }
    }
}

/// Context in which `change_of_basis` is expressed.
pub fn boundary_ctx(n: usize, framework: Framework) -> Ctx {
    match framework {
        Framework::Rt => VarContext::single(),
        _ => VarContext::points(n, &[]),
    }
}

/// Columns are the modified elements `l_x` written in the `w` basis (RT's
/// tensor basis, Viro's dual basis). Viro entries are in the point
/// variables `t1..tn` of this boundary.
pub fn change_of_basis(o: &OrientSeq, side: Side, framework: Framework) -> GradedMatrix {
    (*shared_change_of_basis(o, side, framework)).clone()
}

/// Inverse of [`change_of_basis`], via the exterior power of the inverse of
/// the `n x n` matrix of special elements.
pub fn change_of_basis_inverse(o: &OrientSeq, side: Side, framework: Framework) -> GradedMatrix {
    (*shared_change_of_basis_inverse(o, side, framework)).clone()
}

type BasisKey = (OrientSeq, Side, Framework);
type BasisCache = OnceLock<Mutex<HashMap<BasisKey, Arc<GradedMatrix>>>>;

// both are pure functions of the key and get rebuilt for every event otherwise
static BASIS_CACHE: BasisCache = OnceLock::new();
static INVERSE_CACHE: BasisCache = OnceLock::new();

pub(crate) fn shared_change_of_basis(o: &OrientSeq, side: Side, framework: Framework) -> Arc<GradedMatrix> {
    cached(&BASIS_CACHE, (*o, side, framework), || build_change_of_basis(o, side, framework))
}

pub(crate) fn shared_change_of_basis_inverse(o: &OrientSeq, side: Side, framework: Framework) -> Arc<GradedMatrix> {
    cached(&INVERSE_CACHE, (*o, side, framework), || build_change_of_basis_inverse(o, side, framework))
}

fn cached(cache: &BasisCache, key: BasisKey, build: impl FnOnce() -> GradedMatrix) -> Arc<GradedMatrix> {
    let map = cache.get_or_init(Default::default);
    if let Some(m) = map.lock().unwrap().get(&key) {
        return m.clone();
    }
    let m = Arc::new(build());
    map.lock().unwrap().insert(key, m.clone());
    m
}

fn build_change_of_basis(o: &OrientSeq, side: Side, framework: Framework) -> GradedMatrix {
    let ctx = boundary_ctx(o.n, framework);
    let idx: Vec<usize> = match side {
        Side::Right => (1..=o.n).collect(),
        Side::Left => (0..o.n).collect(),
    };
    let native = if framework == Framework::Rt { BasisKind::Native } else { BasisKind::Dual };
    let dom = BasisDescriptor::new(*o, BasisKind::Modified(side), framework);
    let cod = BasisDescriptor::new(*o, native, framework);
    let elems: Vec<Vec<(usize, QuarterLaurent)>> = idx.iter().map(|&i| special_element(o, i, framework, &ctx)).collect();
    let mut m = GradedMatrix::zero(dom, cod, &ctx);
    for (x, col) in exterior_columns(&ctx, &idx, &elems) {
        for (y, v) in col {
            m.set(y, x, v);
        }
    }
    m
}

fn build_change_of_basis_inverse(o: &OrientSeq, side: Side, framework: Framework) -> GradedMatrix {
    let ctx = boundary_ctx(o.n, framework);
    let native = if framework == Framework::Rt { BasisKind::Native } else { BasisKind::Dual };
    let modified = BasisDescriptor::new(*o, BasisKind::Modified(side), framework);
    let tensor = BasisDescriptor::new(*o, native, framework);
    let idx: Vec<usize> = match side {
        Side::Right => (1..=o.n).collect(),
        Side::Left => (0..o.n).collect(),
    };
    // n x n block: rows w_j (j in 1..n), columns l_i (i in idx)
    let mut p = vec![vec![QuarterLaurent::zero(&ctx); o.n]; o.n];
    for (col, &i) in idx.iter().enumerate() {
        for (j, v) in special_element(o, i, framework, &ctx) {
            p[j - 1][col] = v;
        }
    }
    let inv = invert_dense(p, &ctx).expect("special elements form a unit-triangular system");
    // w_j = sum_i inv[i][j] l_i
    let mut m = GradedMatrix::zero(tensor, modified, &ctx);
    let vecs: Vec<Vec<(usize, QuarterLaurent)>> =
        (0..o.n).map(|j| (0..o.n).filter(|&c| !inv[c][j].is_zero()).map(|c| (idx[c], inv[c][j].clone())).collect()).collect();
    let pos: Vec<usize> = (1..=o.n).collect();
    for (y, col) in exterior_columns(&ctx, &pos, &vecs) {
        for (x, v) in col {
            m.set(x, y, v);
        }
    }
    m
}

/// Gauss-Jordan inverse of a small dense matrix whose pivots can all be
/// chosen among units; `None` otherwise.
fn invert_dense(mut a: Vec<Vec<QuarterLaurent>>, ctx: &Ctx) -> Option<Vec<Vec<QuarterLaurent>>> {
    let n = a.len();
    let mut b: Vec<Vec<QuarterLaurent>> =
        (0..n).map(|r| (0..n).map(|c| if r == c { QuarterLaurent::one(ctx) } else { QuarterLaurent::zero(ctx) }).collect()).collect();
    for col in 0..n {
        let p = (col..n).find(|&r| a[r][col].is_unit())?;
        a.swap(col, p);
        b.swap(col, p);
        let inv = a[col][col].unit_inverse().ok()?;
        for k in 0..n {
            a[col][k] = &a[col][k] * &inv;
            b[col][k] = &b[col][k] * &inv;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for k in 0..n {
                a[r][k] = &a[r][k] - &(&f * &a[col][k]);
                b[r][k] = &b[r][k] - &(&f * &b[col][k]);
            }
        }
    }
    Some(b)
}

/// Convert a Viro dual-basis matrix to the standard basis or back: the
/// vacuum vector on a downward point `j` is `v_1^* = -t_j^2 v_1`.
pub fn dual_scaling(o: &OrientSeq, ctx: &Ctx, point: &dyn Fn(usize) -> String) -> BTreeMap<u64, QuarterLaurent> {
    let desc = BasisDescriptor::new(*o, BasisKind::Dual, Framework::Viro);
    let mut out = BTreeMap::new();
    for x in desc.subsets() {
        let mut f = QuarterLaurent::one(ctx);
        for j in 1..=o.n {
            if !o.is_up(j) && x >> j & 1 == 0 {
                f = &f * &QuarterLaurent::mono(ctx, -1, &[(&point(j), 8)]);
            }
        }
        out.insert(x, f);
    }
    out
}

/// Diagonal matrix from a subset-indexed scaling.
pub fn diagonal(desc_dom: BasisDescriptor, desc_cod: BasisDescriptor, ctx: &Ctx, d: &BTreeMap<u64, QuarterLaurent>) -> GradedMatrix {
    let mut m = GradedMatrix::zero(desc_dom, desc_cod, ctx);
    for (&s, v) in d {
        m.set(s, s, v.clone());
    }
    m
}

pub fn big(k: i64) -> BigInt {
    BigInt::from(k)
}

/// Where an elementary map acts, read in the direction of the map:
/// `Insert` creates a pair at `i+1, i+2` (n to n+2), `Remove` deletes one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EventShape {
    Cross(usize),
    Insert(usize),
    Remove(usize),
}

pub type Shift = Box<dyn Fn(usize) -> usize>;

impl EventShape {
    /// Windows (in, out) and off-window index map for tensor-basis matrices.
    pub fn native_windows(self) -> (Vec<usize>, Vec<usize>, Shift) {
        match self {
            EventShape::Cross(i) => (vec![i, i + 1], vec![i, i + 1], Box::new(|j| j)),
            EventShape::Insert(i) => (vec![], vec![i + 1, i + 2], Box::new(move |j| if j <= i { j } else { j + 2 })),
            EventShape::Remove(i) => (vec![i + 1, i + 2], vec![], Box::new(move |j| if j <= i { j } else { j - 2 })),
        }
    }

    /// Windows (in, out) and off-window index map for modified bases and
    /// idempotent bases: one extra index on each side of the action.
    pub fn modified_windows(self) -> (Vec<usize>, Vec<usize>, Shift) {
        match self {
            EventShape::Cross(i) => (vec![i - 1, i, i + 1], vec![i - 1, i, i + 1], Box::new(|j| j)),
            EventShape::Insert(i) => (vec![i], vec![i, i + 1, i + 2], Box::new(move |j| if j < i { j } else { j + 2 })),
            EventShape::Remove(i) => (vec![i, i + 1, i + 2], vec![i], Box::new(move |j| if j < i { j } else { j - 2 })),
        }
    }

    /// Change in subset size caused by the map.
    pub fn degree(self) -> i32 {
        match self {
            EventShape::Cross(_) => 0,
            EventShape::Insert(_) => 1,
            EventShape::Remove(_) => -1,
        }
    }
}

/// Entries of `m` on the local window, read with every off-window index
/// absent; rows and columns that fall outside the index sets are skipped.
pub fn extract_local(m: &GradedMatrix, win_in: &[usize], win_out: &[usize]) -> GradedMatrix {
    let dmask = m.domain.mask();
    let cmask = m.codomain.mask();
    let mut out = GradedMatrix::zero(BasisDescriptor::local(win_in.len(), m.domain.framework), BasisDescriptor::local(win_out.len(), m.codomain.framework), &m.ctx);
    let g = |bits: u64, win: &[usize]| -> u64 { win.iter().enumerate().filter(|(k, _)| bits >> k & 1 == 1).fold(0, |a, (_, &j)| a | 1 << j) };
    for y in 0..1u64 << win_in.len() {
        let gy = g(y, win_in);
        if gy & !dmask != 0 {
            continue;
        }
        for x in 0..1u64 << win_out.len() {
            let gx = g(x, win_out);
            if gx & !cmask != 0 {
                continue;
            }
            if let Some(v) = m.get_ref(gx, gy) {
                out.set(x, y, v.clone());
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(ctx: &Ctx, k: i64) -> QuarterLaurent {
        QuarterLaurent::q_pow(ctx, 1, k)
    }

    #[test]
    fn rt_right_basis_n2() {
        let o = OrientSeq::new(2, 0b110);
        let b = change_of_basis(&o, Side::Right, Framework::Rt);
        let c = b.ctx.clone();
        // l1 = w1 - q^-1 w2
        assert_eq!(b.get(0b010, 0b010), QuarterLaurent::one(&c));
        assert_eq!(b.get(0b100, 0b010), -&q(&c, -1));
        // l1 ^ l2 = w1 ^ w2
        assert_eq!(b.get(0b110, 0b110), QuarterLaurent::one(&c));
        assert_eq!(b.nnz(), 5);
    }

    #[test]
    fn rt_left_l0() {
        let o = OrientSeq::new(1, 0b10);
        let b = change_of_basis(&o, Side::Left, Framework::Rt);
        assert_eq!(b.get(0b10, 0b01), -&q(&b.ctx, -1));
    }

    #[test]
    fn viro_right_n2() {
        let o = OrientSeq::new(2, 0b110);
        let b = change_of_basis(&o, Side::Right, Framework::Viro);
        let c = b.ctx.clone();
        assert_eq!(b.get(0b010, 0b010), QuarterLaurent::mono(&c, 1, &[("t1", 8)]));
        assert_eq!(b.get(0b100, 0b010), QuarterLaurent::constant(&c, -1));
    }

    #[test]
    fn inverse_pairs() {
        for n in 0..=4 {
            for o in OrientSeq::all(n) {
                for side in [Side::Right, Side::Left] {
                    for fw in [Framework::Rt, Framework::Viro] {
                        let b = change_of_basis(&o, side, fw);
                        let bi = change_of_basis_inverse(&o, side, fw);
                        let id = compose(&bi, &b).unwrap();
                        assert!(id.same_entries(&GradedMatrix::identity(b.domain, &b.ctx)));
                        let gi = invert_unit(&b).unwrap();
                        assert!(gi.same_entries(&bi));
                    }
                }
            }
        }
    }

    #[test]
    fn invert_uu_block() {
        let c = VarContext::single();
        let d = BasisDescriptor::local(2, Framework::Rt);
        let z = QuarterLaurent::zero(&c);
        let one = QuarterLaurent::one(&c);
        let order = [0b00, 0b01, 0b10];
        // pad the 4th basis vector as identity so the descriptor stays square
        let mut m = GradedMatrix::from_rows(
            d,
            d,
            &c,
            &order,
            &order,
            vec![vec![q(&c, 1), z.clone(), z.clone()], vec![one.clone(), -&q(&c, -1), one.clone()], vec![z.clone(), z.clone(), q(&c, 1)]],
        );
        m.set(0b11, 0b11, one.clone());
        let inv = invert_unit(&m).unwrap();
        assert_eq!(inv.get(0b00, 0b00), q(&c, -1));
        assert_eq!(inv.get(0b01, 0b00), one);
        assert_eq!(inv.get(0b01, 0b01), -&q(&c, 1));
        assert_eq!(inv.get(0b10, 0b10), q(&c, -1));
        assert!(compose(&m, &inv).unwrap().same_entries(&GradedMatrix::identity(d, &c)));
    }

    #[test]
    fn non_square_rejected() {
        let c = VarContext::single();
        let m = GradedMatrix::zero(BasisDescriptor::local(1, Framework::Rt), BasisDescriptor::local(2, Framework::Rt), &c);
        assert_eq!(invert_unit(&m).unwrap_err(), StateError::NotSquare);
    }

    #[test]
    fn empty_window_identity() {
        let c = VarContext::single();
        let local = GradedMatrix::identity(BasisDescriptor::local(0, Framework::Rt), &c);
        let d = BasisDescriptor::new(OrientSeq::new(3, 0b1010), BasisKind::Native, Framework::Rt);
        let g = local_to_global(&local, &[], &[], &|j| j, d, d).unwrap();
        assert!(g.same_entries(&GradedMatrix::identity(d, &c)));
    }
}
