//! Decategorified Ozsváth–Szabó bimodules: matrices over idempotent bases
//! for crossings, maxima, minima and the terminal minimum, in single and
//! multiple Alexander gradings, plus the partial Kauffman states that
//! generate them.
//!
//! Maps read top to bottom: columns are incoming idempotents (above the
//! slice), rows outgoing ones (below). Regions are numbered `0..n` left to
//! right; right truncation forbids region 0, left forbids region `n`.

use std::fmt;

use thiserror::Error;

use crate::diagram::{CrossPattern, Event, OrientSeq, Pattern, Sign};
use crate::gradedring::{Ctx, QuarterLaurent, RingError, VarContext, VarMap};
use crate::rtmaps::{crossing_table, extremum_table, Extremum};
use crate::statespace::{invert_unit, local_to_global, BasisDescriptor, BasisKind, EventShape, Framework, GradedMatrix, Side, StateError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OszError {
    #[error("index {index} out of range for {n} strands")]
    Index { index: usize, n: usize },
    #[error("orientation mismatch: {0}")]
    Orientation(String),
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Grading {
    Single,
    Multi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Corner {
    N,
    S,
    E,
    W,
}

impl fmt::Display for Corner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Restriction of a dot set to a three-region window; bit 0 is `A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LocalForm(pub u8);

impl LocalForm {
    pub fn of(x: u64, window: [usize; 3]) -> Self {
        LocalForm(window.iter().enumerate().filter(|(_, &j)| x >> j & 1 == 1).fold(0, |a, (k, _)| a | 1 << k))
    }
}

impl fmt::Display for LocalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "∅");
        }
        for (k, c) in ['A', 'B', 'C'].iter().enumerate() {
            if self.0 >> k & 1 == 1 {
                write!(f, "{c}")?;
            }
        }
        Ok(())
    }
}

/// A signed monomial `(-1)^maslov * sigma_i^(a/4) * sigma_{i+1}^(b/4)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CornerWeight {
    pub maslov: i32,
    pub alex: [i64; 2],
}

impl CornerWeight {
    const fn new(maslov: i32, a: i64, b: i64) -> Self {
        CornerWeight { maslov, alex: [a, b] }
    }

    fn inv(self) -> Self {
        CornerWeight::new(self.maslov, -self.alex[0], -self.alex[1])
    }

    fn mul(self, o: Self) -> Self {
        CornerWeight::new((self.maslov + o.maslov) % 2, self.alex[0] + o.alex[0], self.alex[1] + o.alex[1])
    }

    fn neg(self) -> Self {
        CornerWeight::new((self.maslov + 1) % 2, self.alex[0], self.alex[1])
    }

    fn swap(self) -> Self {
        CornerWeight::new(self.maslov, self.alex[1], self.alex[0])
    }

    /// Single Alexander degree in quarter units of `t`.
    pub fn single(self) -> i64 {
        self.alex[0] + self.alex[1]
    }
}

/// Weights of the four corners at a positive crossing; `pattern` is read
/// just below the crossing, `sigma_i` is the strand ending at position `i`.
fn positive_corner(pattern: CrossPattern, corner: Corner) -> CornerWeight {
    use CrossPattern::*;
    use Corner::*;
    let w = CornerWeight::new;
    match (corner, pattern) {
        (S, UU) => w(0, 1, 1),
        (S, DU) => w(0, -1, 1),
        (S, UD) => w(0, 1, -1),
        (S, DD) => w(1, -1, -1),
        (N, UU) => w(1, -1, -1),
        (N, DU) => w(0, 1, -1),
        (N, UD) => w(0, -1, 1),
        (N, DD) => w(0, 1, 1),
        (W, UU) => w(0, -1, 1),
        (W, DU) => w(1, 1, 1),
        (W, UD) => w(0, -1, -1),
        (W, DD) => w(0, 1, -1),
        (E, UU) => w(0, 1, -1),
        (E, DU) => w(0, -1, -1),
        (E, UD) => w(1, 1, 1),
        (E, DD) => w(0, -1, 1),
    }
}

/// Corner weights for either sign. A negative crossing inverts the positive
/// crossing read from its other side, whose strand labels trade places:
/// diagonal corners invert, and a turning corner `c` becomes
/// `-c / (S N)`.
pub fn corner_weight(pattern: CrossPattern, sign: Sign, corner: Corner) -> CornerWeight {
    match sign {
        Sign::Pos => positive_corner(pattern, corner),
        Sign::Neg => {
            let p = pattern.swapped();
            let f = |c| positive_corner(p, c).swap();
            match corner {
                Corner::S | Corner::N => f(corner).inv(),
                Corner::W | Corner::E => f(corner).neg().mul(f(Corner::S).mul(f(Corner::N)).inv()),
            }
        }
    }
}

fn sm(c: &Ctx, k: i64, a: i64, b: i64) -> QuarterLaurent {
    QuarterLaurent::mono(c, k, &[("s1", a), ("s2", b)])
}

/// Positive crossing tables as printed, transcribed entry by entry.
fn printed_crossing(pattern: CrossPattern, grading: Grading) -> GradedMatrix {
    match grading {
        Grading::Single => {
            let c = VarContext::single();
            let t = |k: i64, h: i64| QuarterLaurent::single_term(&c, k, 2 * h);
            let (d, x) = match pattern {
                CrossPattern::UU => ([t(1, 1), t(1, 1), t(-1, -1), t(1, 1), t(-1, -1), t(1, 1), t(-1, -1), t(-1, -1)], [t(1, 0), t(1, 0), t(1, 0), t(1, 0)]),
                CrossPattern::DU => (std::array::from_fn(|_| t(1, 0)), [t(-1, 1), t(1, -1), t(1, -1), t(-1, 1)]),
                CrossPattern::UD => (std::array::from_fn(|_| t(1, 0)), [t(1, -1), t(-1, 1), t(-1, 1), t(1, -1)]),
                CrossPattern::DD => ([t(-1, -1), t(-1, -1), t(1, 1), t(-1, -1), t(1, 1), t(-1, -1), t(1, 1), t(1, 1)], [t(1, 0), t(1, 0), t(1, 0), t(1, 0)]),
            };
            crossing_table(Framework::Osz, &c, d, x)
        }
        Grading::Multi => {
            let c = VarContext::strands(2);
            let p = |a, b| sm(&c, 1, a, b);
            let n = |a, b| sm(&c, -1, a, b);
            let (d, x) = match pattern {
                CrossPattern::UU => ([p(1, 1), p(1, 1), n(-1, -1), p(1, 1), n(-1, -1), p(1, 1), n(-1, -1), n(-1, -1)], [p(-1, 1), p(1, -1), p(1, -1), p(-1, 1)]),
                CrossPattern::DU => ([p(-1, 1), p(-1, 1), p(1, -1), p(-1, 1), p(1, -1), p(-1, 1), p(1, -1), p(1, -1)], [n(1, 1), p(-1, -1), p(-1, -1), n(1, 1)]),
                CrossPattern::UD => ([p(1, -1), p(1, -1), p(-1, 1), p(1, -1), p(-1, 1), p(1, -1), p(-1, 1), p(-1, 1)], [p(-1, -1), n(1, 1), n(1, 1), p(-1, -1)]),
                CrossPattern::DD => ([n(-1, -1), n(-1, -1), p(1, 1), n(-1, -1), p(1, 1), n(-1, -1), p(1, 1), p(1, 1)], [p(1, -1), p(-1, 1), p(-1, 1), p(1, -1)]),
            };
            crossing_table(Framework::Osz, &c, d, x)
        }
    }
}

fn swap_strands(m: &GradedMatrix) -> GradedMatrix {
    let sw = VarMap::rename(&m.ctx, &m.ctx, |s| if s == "s1" { "s2".into() } else { "s1".into() }, 1).unwrap();
    m.map_entries(&sw).unwrap()
}

/// 8x8 crossing matrix over local idempotents `(A, B, C) = (i-1, i, i+1)`.
/// Single grading is over `t`, multi over `s1 = sigma_i`, `s2 = sigma_{i+1}`.
pub fn osz_crossing_local(pattern: CrossPattern, sign: Sign, grading: Grading) -> GradedMatrix {
    match sign {
        Sign::Pos => printed_crossing(pattern, grading),
        Sign::Neg => {
            let p = printed_crossing(pattern.swapped(), grading);
            let p = if grading == Grading::Multi { swap_strands(&p) } else { p };
            invert_unit(&p).expect("crossing table is invertible")
        }
    }
}

/// Where an extremum sits relative to the ends of the boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Position {
    Interior,
    LeftEdge,
    RightEdge,
}

/// Max (8x2, `Omega`) or min (2x8, `mho`) over local idempotents; at an
/// edge, only local forms allowed by the truncation survive. Entries carry
/// no grading, so `ctx` is only the ring they live in.
pub fn osz_extremum_local(kind: Extremum, position: Position, trunc: Side, ctx: &Ctx) -> GradedMatrix {
    let one = QuarterLaurent::one(ctx);
    // Γ's maximum creates the pair, so it has the shape of an inserting map.
    let full = match kind {
        Extremum::Max => extremum_table(Framework::Osz, ctx, Extremum::Min, one),
        Extremum::Min => extremum_table(Framework::Osz, ctx, Extremum::Max, one),
    };
    // forbidden local bits on the one-region side and the three-region side
    let (single_bad, triple_bad) = match (position, trunc) {
        (Position::LeftEdge, Side::Right) => (1u64, 0b001u64),
        (Position::RightEdge, Side::Left) => (1, 0b100),
        _ => (0, 0),
    };
    let (row_bad, col_bad) = match kind {
        Extremum::Max => (triple_bad, single_bad),
        Extremum::Min => (single_bad, triple_bad),
    };
    let mut out = GradedMatrix::zero(full.domain, full.codomain, ctx);
    for (r, c, v) in full.entries() {
        if r & row_bad == 0 && c & col_bad == 0 {
            out.set(r, c, v.clone());
        }
    }
    out
}

/// Terminal row vector over the local forms of the last two strands'
/// regions, window `(A, B, C) = (0, 1, 2)`.
pub fn osz_terminal(pattern: Pattern, trunc: Side, ctx: &Ctx) -> GradedMatrix {
    let cols: &[u64] = match (pattern, trunc) {
        (Pattern::Lr, Side::Right) => &[0b010],
        (Pattern::Lr, Side::Left) => &[0b001, 0b010],
        (Pattern::Rl, Side::Right) => &[0b010, 0b100],
        (Pattern::Rl, Side::Left) => &[0b010],
    };
    let mut m = GradedMatrix::zero(BasisDescriptor::local(3, Framework::Osz), BasisDescriptor::local(0, Framework::Osz), ctx);
    for &c in cols {
        m.set(0, c, QuarterLaurent::one(ctx));
    }
    m
}

/// The ring of an event's matrix: `t`, or one strand variable per position
/// of the level below the event.
pub fn event_ctx(below: usize, grading: Grading) -> Ctx {
    match grading {
        Grading::Single => VarContext::single(),
        Grading::Multi => VarContext::strands(below),
    }
}

/// Apply a diagram event to `above`, checking indices and orientations.
pub fn level_below(e: Event, above: &OrientSeq) -> Result<OrientSeq, OszError> {
    let n = above.n;
    match e {
        Event::PosCross(i) | Event::NegCross(i) => {
            if i < 1 || i + 1 > n {
                return Err(OszError::Index { index: i, n });
            }
            Ok(above.swap(i))
        }
        Event::Max(i, p) => {
            if i > n {
                return Err(OszError::Index { index: i, n });
            }
            let (l, r) = p.max_pair();
            Ok(above.insert_pair(i, l, r))
        }
        Event::Min(i, p) => {
            if i + 2 > n {
                return Err(OszError::Index { index: i, n });
            }
            if (above.is_up(i + 1), above.is_up(i + 2)) != p.min_pair() {
                return Err(OszError::Orientation(format!("{e} on {above}")));
            }
            Ok(above.remove_pair(i))
        }
        Event::Terminal(p) => {
            if n != 2 || (above.is_up(1), above.is_up(2)) != p.min_pair() {
                return Err(OszError::Orientation(format!("{e} on {above}")));
            }
            Ok(OrientSeq::empty())
        }
    }
}

/// The event's matrix from `above` to the level below, over the idempotent
/// bases with the given truncation.
pub fn osz_event_global(e: Event, above: &OrientSeq, trunc: Side, grading: Grading) -> Result<GradedMatrix, OszError> {
    let below = level_below(e, above)?;
    let ctx = event_ctx(below.n, grading);
    let dom = BasisDescriptor::new(*above, BasisKind::Idempotent(trunc), Framework::Osz);
    let cod = BasisDescriptor::new(below, BasisKind::Idempotent(trunc), Framework::Osz);
    let (shape, local) = match e {
        Event::PosCross(i) | Event::NegCross(i) => {
            let sign = if matches!(e, Event::PosCross(_)) { Sign::Pos } else { Sign::Neg };
            let l = osz_crossing_local(below.cross_pattern(i), sign, grading);
            let l = match grading {
                Grading::Single => l,
                Grading::Multi => {
                    let names = |s: &str| if s == "s1" { format!("s{i}") } else { format!("s{}", i + 1) };
                    l.map_entries(&VarMap::rename(&l.ctx, &ctx, names, 1)?)?
                }
            };
            (EventShape::Cross(i), l)
        }
        Event::Max(i, _) => (EventShape::Insert(i), osz_extremum_local(Extremum::Max, Position::Interior, trunc, &ctx)),
        Event::Min(i, _) => (EventShape::Remove(i), osz_extremum_local(Extremum::Min, Position::Interior, trunc, &ctx)),
        Event::Terminal(p) => {
            let t = osz_terminal(p, trunc, &ctx);
            return Ok(local_to_global(&t, &[0, 1, 2], &[], &|j| j, dom, cod)?);
        }
    };
    let (wi, wo, sh) = shape.modified_windows();
    Ok(local_to_global(&local, &wi, &wo, &*sh, dom, cod)?)
}

/// A generator of a crossing bimodule: incoming dots `y`, outgoing dots
/// `x`, and the corner occupied at the crossing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialKauffmanState {
    pub x: u64,
    pub y: u64,
    pub corner: Corner,
    pub maslov: i32,
    /// Quarter exponents of `sigma_1..sigma_n` (positions below).
    pub alex: Vec<i64>,
}

impl PartialKauffmanState {
    /// `(-1)^maslov` times the Alexander monomial in the chosen grading.
    pub fn weight(&self, grading: Grading) -> QuarterLaurent {
        let sign = if self.maslov % 2 == 0 { 1 } else { -1 };
        match grading {
            Grading::Single => QuarterLaurent::single_term(&VarContext::single(), sign, self.alex.iter().sum()),
            Grading::Multi => {
                let c = VarContext::strands(self.alex.len());
                let names: Vec<String> = (1..=self.alex.len()).map(|j| format!("s{j}")).collect();
                let vars: Vec<(&str, i64)> = names.iter().map(|s| s.as_str()).zip(self.alex.iter().copied()).filter(|(_, e)| *e != 0).collect();
                QuarterLaurent::mono(&c, sign, &vars)
            }
        }
    }
}

impl fmt::Display for PartialKauffmanState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x={:b} y={:b} corner={} maslov={} alex={}", self.x, self.y, self.corner, self.maslov, self.weight(Grading::Multi))
    }
}

/// Every partial Kauffman state of crossing `i` below `above`. States are
/// built from the corner constraints alone, with weights from the corner
/// table.
pub fn enumerate_crossing_states(above: &OrientSeq, i: usize, sign: Sign, trunc: Side) -> Result<Vec<PartialKauffmanState>, OszError> {
    let n = above.n;
    if i < 1 || i + 1 > n {
        return Err(OszError::Index { index: i, n });
    }
    let below = above.swap(i);
    let pattern = below.cross_pattern(i);
    let dom = BasisDescriptor::new(*above, BasisKind::Idempotent(trunc), Framework::Osz);
    let cmask = BasisDescriptor::new(below, BasisKind::Idempotent(trunc), Framework::Osz).mask();
    let has = |s: u64, j: usize| s >> j & 1 == 1;
    let mut out = vec![];
    for y in dom.subsets() {
        let mut cands = vec![];
        if has(y, i) {
            cands.push((y, Corner::N));
        } else {
            cands.push((y, Corner::S));
            if i >= 1 && has(y, i - 1) {
                cands.push((y & !(1 << (i - 1)) | 1 << i, Corner::W));
            }
            if has(y, i + 1) {
                cands.push((y & !(1 << (i + 1)) | 1 << i, Corner::E));
            }
        }
        for (x, corner) in cands {
            if x & !cmask != 0 {
                continue;
            }
            let w = corner_weight(pattern, sign, corner);
            let mut alex = vec![0; n];
            alex[i - 1] = w.alex[0];
            alex[i] = w.alex[1];
            out.push(PartialKauffmanState { x, y, corner, maslov: w.maslov, alex });
        }
    }
    Ok(out)
}

/// Sum of state weights grouped by `(x, y)`.
pub fn state_sum_matrix(above: &OrientSeq, i: usize, sign: Sign, trunc: Side, grading: Grading) -> Result<GradedMatrix, OszError> {
    let below = above.swap(i);
    let ctx = event_ctx(below.n, grading);
    let dom = BasisDescriptor::new(*above, BasisKind::Idempotent(trunc), Framework::Osz);
    let cod = BasisDescriptor::new(below, BasisKind::Idempotent(trunc), Framework::Osz);
    let mut m = GradedMatrix::zero(dom, cod, &ctx);
    for s in enumerate_crossing_states(above, i, sign, trunc)? {
        m.add_to(s.x, s.y, &s.weight(grading).rebase(&ctx));
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gradedring::{collapse_single, Target};
    use crate::statespace::compose;

    #[test]
    fn uu_single_entries() {
        let m = osz_crossing_local(CrossPattern::UU, Sign::Pos, Grading::Single);
        assert_eq!(m.get(0, 0).to_string(), "1*t^(1/2)");
        assert_eq!(m.get(0b010, 0b010).to_string(), "-1*t^(-1/2)");
        assert_eq!(m.get(0b010, 0b001).to_string(), "1");
        assert_eq!(m.get(0b010, 0b100).to_string(), "1");
    }

    #[test]
    fn uu_multi_corner() {
        let m = osz_crossing_local(CrossPattern::UU, Sign::Pos, Grading::Multi);
        assert_eq!(m.get(0, 0), sm(&m.ctx, 1, 1, 1));
    }

    #[test]
    fn multi_collapses_to_single() {
        for p in CrossPattern::ALL {
            for s in [Sign::Pos, Sign::Neg] {
                let m = osz_crossing_local(p, s, Grading::Multi);
                let c = m.map_polys(&VarContext::single(), |x| collapse_single(x, Target::T));
                assert!(c.same_entries(&osz_crossing_local(p, s, Grading::Single)), "{p:?} {s:?}");
            }
        }
    }

    #[test]
    fn corner_table_reproduces_printed_entries() {
        let c = VarContext::strands(2);
        for p in CrossPattern::ALL {
            let m = printed_crossing(p, Grading::Multi);
            for (row, col, corner) in [(0u64, 0u64, Corner::S), (0b010, 0b010, Corner::N), (0b010, 0b001, Corner::W), (0b010, 0b100, Corner::E)] {
                let w = positive_corner(p, corner);
                let want = sm(&c, if w.maslov == 0 { 1 } else { -1 }, w.alex[0], w.alex[1]);
                assert_eq!(m.get(row, col), want, "{p:?} {corner:?}");
            }
        }
    }

    #[test]
    fn negative_inverts_positive() {
        // the inverse pairs the negative crossing on one side with the
        // positive crossing from the other
        let above = OrientSeq::new(3, 0b0100);
        for trunc in [Side::Right, Side::Left] {
            for g in [Grading::Single, Grading::Multi] {
                let n = osz_event_global(Event::NegCross(1), &above, trunc, g).unwrap();
                let mid = above.swap(1);
                let p = osz_event_global(Event::PosCross(1), &mid, trunc, g).unwrap();
                let p = if g == Grading::Multi { p.map_entries(&VarMap::rename(&p.ctx, &n.ctx, |s| if s == "s1" { "s2".into() } else if s == "s2" { "s1".into() } else { s.into() }, 1).unwrap()).unwrap() } else { p };
                let id = compose(&p, &n).unwrap();
                assert!(id.same_entries(&GradedMatrix::identity(n.domain, &n.ctx)), "{trunc:?} {g:?}");
            }
        }
    }

    #[test]
    fn s_and_w_states() {
        let above = OrientSeq::new(3, 0b1110);
        let st = enumerate_crossing_states(&above, 2, Sign::Pos, Side::Right).unwrap();
        let empty: Vec<_> = st.iter().filter(|s| s.y == 0).collect();
        assert_eq!(empty.len(), 1);
        assert_eq!(empty[0].corner, Corner::S);
        let left: Vec<_> = st.iter().filter(|s| s.y == 0b0010).map(|s| (s.corner, s.x)).collect();
        assert_eq!(left, vec![(Corner::S, 0b0010), (Corner::W, 0b0100)]);
    }

    #[test]
    fn right_truncation_avoids_region_zero() {
        let above = OrientSeq::new(2, 0b110);
        for s in enumerate_crossing_states(&above, 1, Sign::Pos, Side::Right).unwrap() {
            assert_eq!((s.x | s.y) & 1, 0);
        }
    }

    #[test]
    fn extremum_edges() {
        let c = VarContext::single();
        let m = osz_extremum_local(Extremum::Max, Position::Interior, Side::Right, &c);
        assert_eq!(m.nnz(), 3);
        assert_eq!(m.get(0b010, 0).to_string(), "1");
        assert_eq!(m.get(0b011, 1).to_string(), "1");
        assert_eq!(m.get(0b110, 1).to_string(), "1");
        let e = osz_extremum_local(Extremum::Max, Position::LeftEdge, Side::Right, &c);
        assert_eq!(e.nnz(), 1);
        let mn = osz_extremum_local(Extremum::Min, Position::Interior, Side::Left, &c);
        assert_eq!(mn.get(0, 0b001).to_string(), "1");
        assert_eq!(mn.get(0, 0b100).to_string(), "1");
        assert_eq!(mn.get(1, 0b101).to_string(), "1");
    }

    #[test]
    fn terminal_vectors() {
        let c = VarContext::single();
        assert_eq!(osz_terminal(Pattern::Lr, Side::Right, &c).nnz(), 1);
        assert_eq!(osz_terminal(Pattern::Rl, Side::Right, &c).nnz(), 2);
        assert_eq!(osz_terminal(Pattern::Rl, Side::Left, &c).get(0, 0b010).to_string(), "1");
    }

    #[test]
    fn unknot_composes_to_one() {
        for trunc in [Side::Right, Side::Left] {
            let top = OrientSeq::empty();
            let m = osz_event_global(Event::Max(0, Pattern::Lr), &top, trunc, Grading::Single).unwrap();
            let mid = level_below(Event::Max(0, Pattern::Lr), &top).unwrap();
            let t = osz_event_global(Event::Terminal(Pattern::Rl), &mid, trunc, Grading::Single).unwrap();
            let r = compose(&t, &m).unwrap();
            assert_eq!(r.get(0, 0).to_string(), "1", "{trunc:?}");
        }
    }
}
