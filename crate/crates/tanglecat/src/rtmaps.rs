//! One-variable gl(1|1) Reshetikhin-Turaev matrices: R-matrices for the four
//! orientation patterns, the twisted duality maps, and their forms in the
//! modified bases. Maps read bottom to top; `q = t^(1/2)`.

use thiserror::Error;

use crate::diagram::{CrossPattern, ElemEvent, OrientSeq, Pattern, Sign};
use crate::gradedring::{Ctx, QuarterLaurent, VarContext};
use crate::statespace::{
    shared_change_of_basis, shared_change_of_basis_inverse, extract_local, invert_unit, local_to_global, mul_unchecked, BasisDescriptor, BasisKind, EventShape,
    Framework, GradedMatrix, Side, StateError, PRINTED_ORDER_3,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("event {0:?} does not fit boundary {1}")]
    Mismatch(ElemEvent, String),
    #[error("index {0} invalid for this boundary")]
    Index(usize),
    #[error(transparent)]
    State(#[from] StateError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Extremum {
    Min,
    Max,
}

fn q(c: &Ctx, k: i64) -> QuarterLaurent {
    QuarterLaurent::q_pow(c, 1, k)
}

fn k(c: &Ctx, v: i64) -> QuarterLaurent {
    QuarterLaurent::constant(c, v)
}

const ORDER_2: [u64; 4] = [0b00, 0b01, 0b10, 0b11];

pub(crate) fn local4(framework: Framework, ctx: &Ctx, rows: Vec<Vec<QuarterLaurent>>) -> GradedMatrix {
    let d = BasisDescriptor::local(2, framework);
    GradedMatrix::from_rows(d, d, ctx, &ORDER_2, &ORDER_2, rows)
}

/// The positive R-matrix in the order `(1, w_i, w_{i+1}, w_i ^ w_{i+1})`,
/// with `pattern` the orientation at the bottom. A negative crossing is the
/// inverse of the positive one read from its other boundary.
pub fn rt_crossing_local(pattern: CrossPattern, sign: Sign) -> GradedMatrix {
    match sign {
        Sign::Pos => rt_r_matrix(pattern),
        Sign::Neg => invert_unit(&rt_r_matrix(pattern.swapped())).expect("R-matrix is invertible"),
    }
}

fn rt_r_matrix(pattern: CrossPattern) -> GradedMatrix {
    let c = VarContext::single();
    let z = || k(&c, 0);
    let qq = &q(&c, 1) - &q(&c, -1);
    let rows = match pattern {
        CrossPattern::UU => vec![
            vec![q(&c, 1), z(), z(), z()],
            vec![z(), z(), k(&c, 1), z()],
            vec![z(), k(&c, 1), qq, z()],
            vec![z(), z(), z(), -&q(&c, -1)],
        ],
        CrossPattern::DU => vec![
            vec![k(&c, 1), z(), z(), z()],
            vec![z(), z(), -&q(&c, 1), z()],
            vec![z(), q(&c, -1), -&qq, z()],
            vec![z(), z(), z(), k(&c, 1)],
        ],
        CrossPattern::UD => vec![
            vec![k(&c, 1), z(), z(), z()],
            vec![z(), z(), q(&c, -1), z()],
            vec![z(), -&q(&c, 1), qq, z()],
            vec![z(), z(), z(), k(&c, 1)],
        ],
        CrossPattern::DD => vec![
            vec![-&q(&c, -1), z(), z(), z()],
            vec![z(), z(), k(&c, 1), z()],
            vec![z(), k(&c, 1), qq, z()],
            vec![z(), z(), z(), q(&c, 1)],
        ],
    };
    local4(Framework::Rt, &c, rows)
}

/// Twisted coevaluation (`Min`, a column creating the pair at the top) or
/// evaluation (`Max`, a row consuming the pair at the bottom). The pattern
/// names the pair orientation as in the diagram format.
pub fn rt_duality_local(kind: Extremum, pattern: Pattern) -> GradedMatrix {
    let c = VarContext::single();
    let v: [QuarterLaurent; 2] = match (kind, pattern) {
        (Extremum::Min, Pattern::Rl) => [k(&c, 1), k(&c, 1)],
        (Extremum::Min, Pattern::Lr) => [q(&c, -1), -&q(&c, -1)],
        (Extremum::Max, Pattern::Rl) => [k(&c, 1), k(&c, 1)],
        (Extremum::Max, Pattern::Lr) => [-&q(&c, 1), q(&c, 1)],
    };
    duality_matrix(Framework::Rt, &c, kind, v)
}

/// 4x1 or 1x4 matrix with `v` at the `w_i` and `w_{i+1}` slots.
pub(crate) fn duality_matrix(framework: Framework, c: &Ctx, kind: Extremum, v: [QuarterLaurent; 2]) -> GradedMatrix {
    let one = BasisDescriptor::local(0, framework);
    let two = BasisDescriptor::local(2, framework);
    let [a, b] = v;
    match kind {
        Extremum::Min => {
            let mut m = GradedMatrix::zero(one, two, c);
            m.set(0b01, 0, a);
            m.set(0b10, 0, b);
            m
        }
        Extremum::Max => {
            let mut m = GradedMatrix::zero(two, one, c);
            m.set(0, 0b01, a);
            m.set(0, 0b10, b);
            m
        }
    }
}

/// Shape and target boundary of an event read bottom to top on `dom`.
pub fn apply_upward(e: ElemEvent, dom: &OrientSeq) -> Result<(EventShape, OrientSeq), MapError> {
    let bad = || MapError::Mismatch(e, dom.to_string());
    match e {
        ElemEvent::Cross { i, pattern, .. } => {
            if i < 1 || i + 1 > dom.n {
                return Err(MapError::Index(i));
            }
            if dom.cross_pattern(i) != pattern {
                return Err(bad());
            }
            let (a, b) = pattern.bits();
            let mut up = dom.up & !(1 << i) & !(1 << (i + 1));
            up |= (b as u64) << i | (a as u64) << (i + 1);
            Ok((EventShape::Cross(i), OrientSeq::new(dom.n, up)))
        }
        ElemEvent::Min { i, pattern } => {
            if i > dom.n {
                return Err(MapError::Index(i));
            }
            let (l, r) = pattern.min_pair();
            Ok((EventShape::Insert(i), dom.insert_pair(i, l, r)))
        }
        ElemEvent::Max { i, pattern } => {
            if i + 2 > dom.n {
                return Err(MapError::Index(i));
            }
            if (dom.is_up(i + 1), dom.is_up(i + 2)) != pattern.max_pair() {
                return Err(bad());
            }
            Ok((EventShape::Remove(i), dom.remove_pair(i)))
        }
    }
}

/// Tensor-basis matrix of the event on `V^{dom}`.
pub fn rt_native_global(e: ElemEvent, dom: &OrientSeq) -> Result<GradedMatrix, MapError> {
    let (shape, cod) = apply_upward(e, dom)?;
    let local = match e {
        ElemEvent::Cross { sign, pattern, .. } => rt_crossing_local(pattern, sign),
        ElemEvent::Min { pattern, .. } => rt_duality_local(Extremum::Min, pattern),
        ElemEvent::Max { pattern, .. } => rt_duality_local(Extremum::Max, pattern),
    };
    let (wi, wo, sh) = shape.native_windows();
    let d = BasisDescriptor::new(*dom, BasisKind::Native, Framework::Rt);
    let c = BasisDescriptor::new(cod, BasisKind::Native, Framework::Rt);
    Ok(local_to_global(&local, &wi, &wo, &*sh, d, c)?)
}

/// Modified-basis matrix obtained by conjugating the tensor-basis matrix.
pub fn rt_modified_global(e: ElemEvent, dom: &OrientSeq, side: Side) -> Result<GradedMatrix, MapError> {
    let (_, cod) = apply_upward(e, dom)?;
    let n = rt_native_global(e, dom)?;
    let b_in = shared_change_of_basis(dom, side, Framework::Rt);
    let b_out_inv = shared_change_of_basis_inverse(&cod, side, Framework::Rt);
    Ok(mul_unchecked(&b_out_inv, &mul_unchecked(&n, &b_in)))
}

/// Local window of [`rt_modified_global`], read with every other index absent.
pub fn rt_modified_local(e: ElemEvent, dom: &OrientSeq, side: Side) -> Result<GradedMatrix, MapError> {
    let (shape, _) = apply_upward(e, dom)?;
    let g = rt_modified_global(e, dom, side)?;
    let (wi, wo, _) = shape.modified_windows();
    Ok(extract_local(&g, &wi, &wo))
}

/// The modified-basis tables as printed, in the order
/// `(1, l_{i-1}, l_i, l_{i+1}, l_{i-1}l_i, l_{i-1}l_{i+1}, l_il_{i+1}, l_{i-1}l_il_{i+1})`
/// for crossings, and `(1, l_i)` against the three-element window for extrema.
pub fn rt_modified_table(e: ElemEvent) -> GradedMatrix {
    let c = VarContext::single();
    match e {
        ElemEvent::Cross { sign: Sign::Neg, pattern, i } => {
            let pos = rt_modified_table(ElemEvent::Cross { i, sign: Sign::Pos, pattern: pattern.swapped() });
            invert_unit(&pos).expect("table is invertible")
        }
        ElemEvent::Cross { pattern, .. } => {
            let one = || k(&c, 1);
            let qi = || q(&c, -1);
            let nq = || -&q(&c, 1);
            let nqi = || -&q(&c, -1);
            let (d, x) = match pattern {
                CrossPattern::UU => ([q(&c, 1), q(&c, 1), nqi(), q(&c, 1), nqi(), q(&c, 1), nqi(), nqi()], [one(), one(), one(), one()]),
                CrossPattern::DU => (std::array::from_fn(|_| one()), [qi(), nq(), nq(), qi()]),
                CrossPattern::UD => (std::array::from_fn(|_| one()), [nq(), qi(), qi(), nq()]),
                CrossPattern::DD => ([nqi(), nqi(), q(&c, 1), nqi(), q(&c, 1), nqi(), q(&c, 1), q(&c, 1)], [one(), one(), one(), one()]),
            };
            crossing_table(Framework::Rt, &c, d, x)
        }
        ElemEvent::Min { .. } => extremum_table(Framework::Rt, &c, Extremum::Min, k(&c, 1)),
        ElemEvent::Max { .. } => extremum_table(Framework::Rt, &c, Extremum::Max, k(&c, 1)),
    }
}

/// 8x8 crossing table from its diagonal (printed order) and the four
/// off-diagonal entries `(l_i, l_{i-1})`, `(l_i, l_{i+1})`,
/// `(l_{i-1}l_i, l_{i-1}l_{i+1})`, `(l_il_{i+1}, l_{i-1}l_{i+1})`.
pub(crate) fn crossing_table(framework: Framework, c: &Ctx, d: [QuarterLaurent; 8], x: [QuarterLaurent; 4]) -> GradedMatrix {
    let desc = BasisDescriptor::local(3, framework);
    let mut m = GradedMatrix::zero(desc, desc, c);
    for (s, v) in PRINTED_ORDER_3.iter().zip(d) {
        m.set(*s, *s, v);
    }
    let [x1, x2, x3, x4] = x;
    m.set(0b010, 0b001, x1);
    m.set(0b010, 0b100, x2);
    m.set(0b011, 0b101, x3);
    m.set(0b110, 0b101, x4);
    m
}

/// Extremum tables with every nonzero entry equal to `v`.
pub(crate) fn extremum_table(framework: Framework, c: &Ctx, kind: Extremum, v: QuarterLaurent) -> GradedMatrix {
    let one = BasisDescriptor::local(1, framework);
    let three = BasisDescriptor::local(3, framework);
    match kind {
        Extremum::Min => {
            let mut m = GradedMatrix::zero(one, three, c);
            m.set(0b010, 0b0, v.clone());
            m.set(0b011, 0b1, v.clone());
            m.set(0b110, 0b1, v);
            m
        }
        Extremum::Max => {
            let mut m = GradedMatrix::zero(three, one, c);
            m.set(0b0, 0b001, v.clone());
            m.set(0b0, 0b100, v.clone());
            m.set(0b1, 0b101, v);
            m
        }
    }
}

/// Globalize a modified-basis table for an event on `dom`.
pub fn globalize_modified(table: &GradedMatrix, e: ElemEvent, dom: &OrientSeq, side: Side, framework: Framework) -> Result<GradedMatrix, MapError> {
    let (shape, cod) = apply_upward(e, dom)?;
    let (wi, wo, sh) = shape.modified_windows();
    let d = BasisDescriptor::new(*dom, BasisKind::Modified(side), framework);
    let c = BasisDescriptor::new(cod, BasisKind::Modified(side), framework);
    Ok(local_to_global(table, &wi, &wo, &*sh, d, c)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statespace::compose;

    #[test]
    fn uu_entries() {
        let m = rt_crossing_local(CrossPattern::UU, Sign::Pos);
        let c = m.ctx.clone();
        assert_eq!(m.get(0, 0), q(&c, 1));
        assert_eq!(m.get(0b01, 0b10), k(&c, 1));
        assert_eq!(m.get(0b10, 0b01), k(&c, 1));
        assert_eq!(m.get(0b10, 0b10), &q(&c, 1) - &q(&c, -1));
        assert_eq!(m.get(0b11, 0b11), -&q(&c, -1));
    }

    #[test]
    fn du_entries() {
        let m = rt_crossing_local(CrossPattern::DU, Sign::Pos);
        let c = m.ctx.clone();
        assert_eq!(m.get(0b10, 0b01), q(&c, -1));
        assert_eq!(m.get(0b10, 0b10), &q(&c, -1) - &q(&c, 1));
    }

    #[test]
    fn neg_times_pos() {
        // the negative crossing sits on the positive one's top boundary
        for p in CrossPattern::ALL {
            let a = rt_crossing_local(p.swapped(), Sign::Neg);
            let b = rt_crossing_local(p, Sign::Pos);
            assert!(compose(&a, &b).unwrap().same_entries(&GradedMatrix::identity(b.domain, &b.ctx)));
        }
    }

    #[test]
    fn duality_maps() {
        let m = rt_duality_local(Extremum::Min, Pattern::Lr);
        let c = m.ctx.clone();
        assert_eq!(m.get(0b01, 0), q(&c, -1));
        assert_eq!(m.get(0b10, 0), -&q(&c, -1));
        let m = rt_duality_local(Extremum::Max, Pattern::Lr);
        assert_eq!(m.get(0, 0b01), -&q(&c, 1));
        assert_eq!(m.get(0, 0b10), q(&c, 1));
        let m = rt_duality_local(Extremum::Min, Pattern::Rl);
        assert_eq!(m.nnz(), 2);
    }

    #[test]
    fn worked_entry_uuuu() {
        // l_{i-1} ^ l_i  ->  -q^-1 l_{i-1} ^ l_i  for four upward strands
        let dom = OrientSeq::new(4, 0b11110);
        let e = ElemEvent::Cross { i: 2, sign: Sign::Pos, pattern: CrossPattern::UU };
        let g = rt_modified_global(e, &dom, Side::Right).unwrap();
        assert_eq!(g.get(0b0110, 0b0110), -&q(&g.ctx, -1));
    }

    #[test]
    fn boundary_crossing_is_submatrix() {
        let dom = OrientSeq::new(3, 0b0110);
        let e = ElemEvent::Cross { i: 1, sign: Sign::Pos, pattern: CrossPattern::UU };
        let loc = rt_modified_local(e, &dom, Side::Right).unwrap();
        // l_0 rows/columns are absent
        assert!(loc.entries().all(|(r, c, _)| r & 1 == 0 && c & 1 == 0));
        let tab = rt_modified_table(e);
        for (r, c, v) in loc.entries() {
            assert_eq!(&tab.get(r, c), v);
        }
    }
}
