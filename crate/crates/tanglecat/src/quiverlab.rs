//! The two-vertex quiver dg algebra `C_r(2,1,{1})`, the one-generator
//! Type D structure with `δ¹(x) = R₂C₁L₂ ⊗ x`, and its homology over F₂ in
//! a window of intrinsic degrees.
//!
//! Words are written left to right and act right to left: in `R₂C₁L₂` the
//! `L₂` comes first. Vertex `Dot` is `|•|`, vertex `Other` is `| |•`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::gradedring::QExp;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("cutoff {cutoff} too small: the interior must reach {needed} quarter-units")]
    WindowTooSmall { cutoff: i64, needed: i64 },
    #[error("cutoff must be non-negative, got {0}")]
    NegativeCutoff(i64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Vertex {
    Dot,
    Other,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    R2,
    L2,
    C1,
    Ct1,
    U1,
}

impl Gen {
    pub const ALL: [Gen; 5] = [Gen::R2, Gen::L2, Gen::C1, Gen::Ct1, Gen::U1];

    fn shape(self) -> Shape {
        match self {
            Gen::R2 => Shape::Path { source: Vertex::Other, target: Vertex::Dot, m: 1, c: false },
            Gen::L2 => Shape::Path { source: Vertex::Dot, target: Vertex::Other, m: 1, c: false },
            Gen::C1 => Shape::Path { source: Vertex::Other, target: Vertex::Other, m: 0, c: true },
            Gen::Ct1 => Shape::Loop { u: 0, ct: true },
            Gen::U1 => Shape::Loop { u: 1, ct: false },
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Gen::R2 => "R2",
            Gen::L2 => "L2",
            Gen::C1 => "C1",
            Gen::Ct1 => "C~1",
            Gen::U1 => "U1",
        })
    }
}

/// Nonzero monomials up to equality. A loop at `Dot` without `R₂`/`L₂` is
/// `C̃₁^ct U₁^u`; anything else is an alternating `R₂`/`L₂` path of `m`
/// letters with at most one `C` on it (`U₁` kills both letters and `C̃₁`
/// slides onto `C₁` across them).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Shape {
    Loop { u: u32, ct: bool },
    Path { source: Vertex, target: Vertex, m: u32, c: bool },
}

impl Shape {
    fn source(self) -> Vertex {
        match self {
            Shape::Loop { .. } => Vertex::Dot,
            Shape::Path { source, .. } => source,
        }
    }

    fn target(self) -> Vertex {
        match self {
            Shape::Loop { .. } => Vertex::Dot,
            Shape::Path { target, .. } => target,
        }
    }

    fn idempotent(v: Vertex) -> Self {
        match v {
            Vertex::Dot => Shape::Loop { u: 0, ct: false },
            Vertex::Other => Shape::Path { source: Vertex::Other, target: Vertex::Other, m: 0, c: false },
        }
    }

    /// `self · o`, i.e. `o` first.
    fn mul(self, o: Shape) -> Option<Shape> {
        if self.source() != o.target() {
            return None;
        }
        let add_c = |p: Shape| match p {
            Shape::Path { c: true, .. } => None,
            Shape::Path { source, target, m, .. } => Some(Shape::Path { source, target, m, c: true }),
            Shape::Loop { .. } => unreachable!(),
        };
        match (self, o) {
            (Shape::Loop { u: a, ct: x }, Shape::Loop { u: b, ct: y }) => (!(x && y)).then_some(Shape::Loop { u: a + b, ct: x || y }),
            (Shape::Loop { u, ct }, p @ Shape::Path { .. }) | (p @ Shape::Path { .. }, Shape::Loop { u, ct }) => match (u, ct) {
                (0, false) => Some(p),
                (0, true) => add_c(p),
                _ => None,
            },
            (Shape::Path { target, m: m1, c: c1, .. }, Shape::Path { source, m: m2, c: c2, .. }) => {
                (!(c1 && c2)).then_some(Shape::Path { source, target, m: m1 + m2, c: c1 || c2 })
            }
        }
    }

    fn word(self) -> Vec<Gen> {
        match self {
            Shape::Loop { u, ct } => {
                let mut w = Vec::new();
                if ct {
                    w.push(Gen::Ct1);
                }
                w.extend(std::iter::repeat_n(Gen::U1, u as usize));
                w
            }
            Shape::Path { source, target, m, c } => {
                // letters from the right: L2 leaves Dot, R2 leaves Other
                let mut w: Vec<Gen> = Vec::new();
                let mut at = source;
                for _ in 0..m {
                    let g = if at == Vertex::Dot { Gen::L2 } else { Gen::R2 };
                    w.push(g);
                    at = if at == Vertex::Dot { Vertex::Other } else { Vertex::Dot };
                }
                w.reverse();
                if c {
                    // C1 sits at the leftmost visit of Other
                    let k = if target == Vertex::Other { 0 } else { 1 };
                    w.insert(k, Gen::C1);
                }
                w
            }
        }
    }

    fn d(self) -> Option<Shape> {
        match self {
            Shape::Loop { u, ct: true } => Some(Shape::Loop { u: u + 1, ct: false }),
            _ => None,
        }
    }
}

/// A basis monomial with its gradings. `intrinsic` is the degree in
/// `H¹(W, ∂W)` (`R₂`, `L₂` weigh `e/2`, the others `-e`); `weight` is the
/// pair of `e₁`, `e₂` coefficients of the algebra grading.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuiverMonomial {
    pub word: Vec<Gen>,
    pub source: Vertex,
    pub target: Vertex,
    pub maslov: i64,
    pub intrinsic: QExp,
    pub weight: [QExp; 2],
}

impl QuiverMonomial {
    fn of(s: Shape) -> Self {
        let word = s.word();
        let mut maslov = 0;
        let mut intrinsic = 0;
        let mut weight = [0, 0];
        for g in &word {
            match g {
                Gen::R2 | Gen::L2 => {
                    intrinsic += 2;
                    weight[1] += 2;
                }
                Gen::C1 | Gen::Ct1 => {
                    maslov += 1;
                    intrinsic -= 4;
                    weight[0] += 4;
                }
                Gen::U1 => {
                    maslov += 2;
                    intrinsic -= 4;
                    weight[0] += 4;
                }
            }
        }
        QuiverMonomial { word, source: s.source(), target: s.target(), maslov, intrinsic: QExp(intrinsic), weight: [QExp(weight[0]), QExp(weight[1])] }
    }

    pub fn total_weight(&self) -> i64 {
        self.weight[0].0 + self.weight[1].0
    }
}

impl fmt::Display for QuiverMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str(if self.source == Vertex::Dot { "|.|" } else { "| |." });
        }
        for g in &self.word {
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Normal form of a word, `None` when it vanishes. Composable-but-zero and
/// non-composable words both vanish.
pub fn reduce(word: &[Gen]) -> Option<QuiverMonomial> {
    reduce_shape(word).map(QuiverMonomial::of)
}

fn reduce_shape(word: &[Gen]) -> Option<Shape> {
    let (last, rest) = word.split_last()?;
    rest.iter().rev().try_fold(last.shape(), |acc, g| g.shape().mul(acc))
}

/// Product of two normal forms.
pub fn multiply(a: &QuiverMonomial, b: &QuiverMonomial) -> Option<QuiverMonomial> {
    let sa = shape_of(a)?;
    let sb = shape_of(b)?;
    sa.mul(sb).map(QuiverMonomial::of)
}

fn shape_of(m: &QuiverMonomial) -> Option<Shape> {
    if m.word.is_empty() {
        Some(Shape::idempotent(m.source))
    } else {
        reduce_shape(&m.word)
    }
}

pub fn idempotent(v: Vertex) -> QuiverMonomial {
    QuiverMonomial::of(Shape::idempotent(v))
}

/// The seven defining relations as pairs of words; a missing right side is zero.
pub fn relations() -> Vec<(Vec<Gen>, Option<Vec<Gen>>)> {
    use Gen::*;
    vec![
        (vec![C1, C1], None),
        (vec![Ct1, Ct1], None),
        (vec![Ct1, R2], Some(vec![R2, C1])),
        (vec![L2, Ct1], Some(vec![C1, L2])),
        (vec![U1, Ct1], Some(vec![Ct1, U1])),
        (vec![U1, R2], None),
        (vec![L2, U1], None),
    ]
}

/// Every shape with source `src` up to the given limits.
fn shapes_from(src: Vertex, max_m: u32, max_u: u32) -> Vec<Shape> {
    let mut v = Vec::new();
    if src == Vertex::Dot {
        for u in 0..=max_u {
            v.push(Shape::Loop { u, ct: false });
            v.push(Shape::Loop { u, ct: true });
        }
    }
    for m in 0..=max_m {
        if m == 0 && src == Vertex::Dot {
            continue;
        }
        let target = if (m % 2 == 0) == (src == Vertex::Dot) { Vertex::Dot } else { Vertex::Other };
        for c in [false, true] {
            // a C needs a visit to Other
            if c && m == 0 && src == Vertex::Dot {
                continue;
            }
            v.push(Shape::Path { source: src, target, m, c });
        }
    }
    v
}

/// Basis of the algebra with total algebra weight `e₁ + e₂` at most
/// `cutoff` quarter-units, sorted by (weight, word).
pub fn quiver_basis(cutoff: QExp) -> Vec<QuiverMonomial> {
    let k = cutoff.0.max(0);
    let max_m = (k / 2) as u32;
    let max_u = (k / 4) as u32;
    let mut v: Vec<QuiverMonomial> = [Vertex::Dot, Vertex::Other]
        .into_iter()
        .flat_map(|s| shapes_from(s, max_m, max_u))
        .map(QuiverMonomial::of)
        .filter(|m| m.total_weight() <= k)
        .collect();
    v.sort_by(|a, b| (a.total_weight(), &a.word).cmp(&(b.total_weight(), &b.word)));
    v
}

/// Ω¹ restricted to intrinsic degrees in `[-cutoff, cutoff]`: basis
/// elements `a·x` with `a` leaving `|•|`, and the differential over F₂ as
/// sparse columns.
#[derive(Clone, Debug)]
pub struct TruncatedDgModule {
    pub cutoff: QExp,
    pub basis: Vec<QuiverMonomial>,
    /// `differential[j]` lists the basis indices in `d(basis[j])`.
    pub differential: Vec<Vec<usize>>,
}

/// One margin step: the largest intrinsic degree of a single generator.
pub const MARGIN: i64 = 4;

/// Intrinsic degree of `C₁L₂·x`, and its homological degree.
pub const GENERATOR_BIDEGREE: (i64, QExp) = (1, QExp(-2));

impl TruncatedDgModule {
    pub fn new(cutoff: QExp) -> Self {
        let k = cutoff.0.max(0);
        let shapes: Vec<Shape> = shapes_from(Vertex::Dot, (k / 2 + 2) as u32, (k / 4 + 1) as u32)
            .into_iter()
            .filter(|s| QuiverMonomial::of(*s).intrinsic.0.abs() <= k)
            .collect();
        let mut order: Vec<(QuiverMonomial, Shape)> = shapes.into_iter().map(|s| (QuiverMonomial::of(s), s)).collect();
        order.sort_by(|a, b| (a.0.intrinsic, a.0.maslov, &a.0.word).cmp(&(b.0.intrinsic, b.0.maslov, &b.0.word)));
        let index: BTreeMap<Shape, usize> = order.iter().enumerate().map(|(i, (_, s))| (*s, i)).collect();
        let delta = reduce_shape(&[Gen::R2, Gen::C1, Gen::L2]).expect("nonzero");
        let differential = order
            .iter()
            .map(|(_, s)| {
                // d(a·x) = d(a)·x + a·R₂C₁L₂·x, over F₂
                let mut col: Vec<usize> = [s.d(), s.mul(delta)].into_iter().flatten().filter_map(|t| index.get(&t).copied()).collect();
                col.sort_unstable();
                let mut out = Vec::new();
                for j in col {
                    if out.last() == Some(&j) {
                        out.pop();
                    } else {
                        out.push(j);
                    }
                }
                out
            })
            .collect();
        TruncatedDgModule { cutoff: QExp(k), basis: order.into_iter().map(|(m, _)| m).collect(), differential }
    }

    /// Degrees whose every basis element, and every image of one, lies in
    /// the window.
    pub fn interior(&self) -> (QExp, QExp) {
        (QExp(-self.cutoff.0 + MARGIN), QExp(self.cutoff.0 - MARGIN))
    }

    pub fn in_interior(&self, q: QExp) -> bool {
        let (lo, hi) = self.interior();
        lo <= q && q <= hi
    }

    /// Basis indices whose `d∘d` image is nonzero.
    pub fn d_squared_failures(&self) -> Vec<usize> {
        (0..self.basis.len())
            .filter(|&j| {
                let mut acc: BTreeMap<usize, bool> = BTreeMap::new();
                for &k in &self.differential[j] {
                    for &l in &self.differential[k] {
                        *acc.entry(l).or_default() ^= true;
                    }
                }
                acc.values().any(|&b| b)
            })
            .collect()
    }

    /// Homology ranks by `(homological, intrinsic)` over the whole window,
    /// zeros omitted.
    pub fn homology(&self) -> BTreeMap<(i64, QExp), usize> {
        let mut by_deg: BTreeMap<(i64, QExp), Vec<usize>> = BTreeMap::new();
        for (j, m) in self.basis.iter().enumerate() {
            by_deg.entry((m.maslov, m.intrinsic)).or_default().push(j);
        }
        let rank_from = |h: i64, q: QExp| -> usize {
            let Some(cols) = by_deg.get(&(h, q)) else { return 0 };
            let rows: Vec<u128> = cols
                .iter()
                .map(|&j| {
                    let mut r = 0u128;
                    for &k in &self.differential[j] {
                        let pos = by_deg[&(h + 1, q)].iter().position(|&x| x == k).expect("d preserves intrinsic degree");
                        r |= 1 << pos;
                    }
                    r
                })
                .collect();
            f2_rank(rows)
        };
        let mut out = BTreeMap::new();
        for (&(h, q), cols) in &by_deg {
            let r = cols.len() - rank_from(h, q) - rank_from(h - 1, q);
            if r > 0 {
                out.insert((h, q), r);
            }
        }
        out
    }
}

fn f2_rank(mut rows: Vec<u128>) -> usize {
    let mut rank = 0;
    for bit in 0..128 {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i] >> bit & 1 == 1) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank];
        for (i, r) in rows.iter_mut().enumerate() {
            if i != rank && *r >> bit & 1 == 1 {
                *r ^= pivot;
            }
        }
        rank += 1;
    }
    rank
}

/// Interior homology ranks of Ω¹ in the window `[-cutoff, cutoff]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyTable {
    pub cutoff: QExp,
    pub interior: (QExp, QExp),
    pub basis_size: usize,
    pub ranks: BTreeMap<(i64, QExp), usize>,
}

impl HomologyTable {
    pub fn total(&self) -> usize {
        self.ranks.values().sum()
    }
}

impl fmt::Display for HomologyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "window [-{0}, {0}] interior [{1}, {2}] basis {3}", self.cutoff, self.interior.0, self.interior.1, self.basis_size)?;
        for ((h, q), r) in &self.ranks {
            writeln!(f, "homological {h} intrinsic {q}: rank {r}")?;
        }
        write!(f, "total {}", self.total())
    }
}

/// Homology of Ω¹ in the interior of the window. The interior must contain
/// the bidegree of `C₁L₂·x` with one margin step to spare.
pub fn omega_homology(cutoff: QExp) -> Result<HomologyTable, QuiverError> {
    if cutoff.0 < 0 {
        return Err(QuiverError::NegativeCutoff(cutoff.0));
    }
    let needed = GENERATOR_BIDEGREE.1 .0.abs() + MARGIN;
    if cutoff.0 < needed {
        return Err(QuiverError::WindowTooSmall { cutoff: cutoff.0, needed });
    }
    let m = TruncatedDgModule::new(cutoff);
    let ranks = m.homology().into_iter().filter(|((_, q), _)| m.in_interior(*q)).collect();
    Ok(HomologyTable { cutoff, interior: m.interior(), basis_size: m.basis.len(), ranks })
}

/// Interior ranks at `cutoff` agree with those at `cutoff + extra` on the
/// smaller interior.
pub fn ranks_stable(cutoff: QExp, extra: i64) -> Result<bool, QuiverError> {
    let a = omega_homology(cutoff)?;
    let b = omega_homology(QExp(cutoff.0 + extra))?;
    let (lo, hi) = a.interior;
    let b_in: BTreeMap<_, _> = b.ranks.into_iter().filter(|((_, q), _)| lo <= *q && *q <= hi).collect();
    Ok(a.ranks == b_in)
}

/// Basis counts by family name for the algebra truncation, in a fixed order.
pub fn family_counts(cutoff: QExp) -> Vec<(&'static str, usize)> {
    let mut counts: BTreeMap<&'static str, usize> = BTreeMap::new();
    for m in quiver_basis(cutoff) {
        *counts.entry(family(&m)).or_default() += 1;
    }
    FAMILIES.iter().map(|f| (*f, counts.get(f).copied().unwrap_or(0))).collect()
}

pub const FAMILIES: [&str; 12] = [
    "e(|.|)",
    "U1^(k+1)",
    "C~1 U1^k",
    "(R2L2)^(k+1)",
    "L2(R2L2)^k",
    "C1L2(R2L2)^k",
    "R2C1L2(R2L2)^k",
    "e(| |.)",
    "(L2R2)^(k+1)",
    "R2(L2R2)^k",
    "C1(L2R2)^k",
    "R2C1(L2R2)^k",
];

/// Family label of a basis monomial.
pub fn family(m: &QuiverMonomial) -> &'static str {
    let s = shape_of(m).expect("basis monomial");
    match s {
        Shape::Loop { u: 0, ct: false } => FAMILIES[0],
        Shape::Loop { ct: false, .. } => FAMILIES[1],
        Shape::Loop { ct: true, .. } => FAMILIES[2],
        Shape::Path { source: Vertex::Dot, target: Vertex::Dot, c, .. } => FAMILIES[if c { 6 } else { 3 }],
        Shape::Path { source: Vertex::Dot, target: Vertex::Other, c, .. } => FAMILIES[if c { 5 } else { 4 }],
        Shape::Path { source: Vertex::Other, target: Vertex::Other, m: 0, c: false, .. } => FAMILIES[7],
        Shape::Path { source: Vertex::Other, target: Vertex::Other, c, .. } => FAMILIES[if c { 10 } else { 8 }],
        Shape::Path { source: Vertex::Other, target: Vertex::Dot, c, .. } => FAMILIES[if c { 11 } else { 9 }],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Gen::*;

    fn w(s: &str) -> Vec<Gen> {
        s.split_whitespace()
            .map(|g| match g {
                "R" => R2,
                "L" => L2,
                "C" => C1,
                "T" => Ct1,
                "U" => U1,
                _ => panic!("{g}"),
            })
            .collect()
    }

    #[test]
    fn relations_hold() {
        for (l, r) in relations() {
            assert_eq!(reduce(&l), r.and_then(|r| reduce(&r)), "{l:?}");
        }
    }

    #[test]
    fn normal_forms() {
        assert_eq!(reduce(&w("T R L")).unwrap().word, w("R C L"));
        assert_eq!(reduce(&w("L R C L")).unwrap().word, w("C L R L"));
        assert_eq!(reduce(&w("C L R C L")), None);
        assert_eq!(reduce(&w("U T")).unwrap().word, w("T U"));
        assert_eq!(reduce(&w("R R")), None);
    }

    #[test]
    fn smallest_window_is_idempotents() {
        let b = quiver_basis(QExp(0));
        assert_eq!(b.len(), 2);
        assert!(b.iter().all(|m| m.word.is_empty()));
    }

    #[test]
    fn k_zero_window_contains_c_words() {
        let b: Vec<String> = quiver_basis(QExp(8)).iter().map(|m| m.to_string()).collect();
        assert!(b.contains(&"C1L2".to_string()) && b.contains(&"R2C1L2".to_string()), "{b:?}");
    }

    #[test]
    fn differential_on_ct_u() {
        let m = TruncatedDgModule::new(QExp(12));
        let j = m.basis.iter().position(|x| x.word == w("T U")).unwrap();
        let img: Vec<String> = m.differential[j].iter().map(|&k| m.basis[k].to_string()).collect();
        assert_eq!(img, vec!["U1U1"]);
    }

    #[test]
    fn homology_is_one_dimensional() {
        let h = omega_homology(QExp(8)).unwrap();
        assert_eq!(h.total(), 1);
        assert_eq!(h.ranks.get(&GENERATOR_BIDEGREE), Some(&1));
        assert!(matches!(omega_homology(QExp(5)), Err(QuiverError::WindowTooSmall { .. })));
    }
}
