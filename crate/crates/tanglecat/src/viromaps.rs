//! Viro's multivariable functor for the universal 1-palette with zero
//! T-components: Boltzmann-weight crossing matrices (standard and dual
//! bases), duality maps, modified-basis forms, and the bookkeeping that moves
//! boundary point variables onto strand variables.

use crate::diagram::{extremum_strand_map, CrossPattern, ElemEvent, OrientSeq, Pattern, Sign};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::gradedring::{Ctx, QExp, QuarterLaurent, VarContext, VarMap};
use crate::rtmaps::{apply_upward, crossing_table, duality_matrix, extremum_table, local4, Extremum, MapError};
use crate::statespace::{
    shared_change_of_basis, shared_change_of_basis_inverse, diagonal, dual_scaling, extract_local, invert_unit, local_to_global, mul_unchecked, BasisDescriptor,
    BasisKind, EventShape, Framework, GradedMatrix, Side,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ViroBasis {
    Standard,
    Dual,
}

/// `c * t1^a * t2^b` (whole exponents).
fn m(c: &Ctx, k: i64, a: i64, b: i64) -> QuarterLaurent {
    QuarterLaurent::mono(c, k, &[("t1", 4 * a), ("t2", 4 * b)])
}

/// Boltzmann weights over the strand variables `t1` (the strand leaving the
/// bottom-left point) and `t2`; order `(1, w_i, w_{i+1}, w_i ^ w_{i+1})`,
/// pattern read at the bottom. A negative crossing inverts the positive one
/// read from its other boundary, where the strand names trade places.
pub fn viro_crossing_local(pattern: CrossPattern, sign: Sign, basis: ViroBasis) -> GradedMatrix {
    match sign {
        Sign::Pos => boltzmann(pattern, basis),
        Sign::Neg => invert_unit(&swap_names(&boltzmann(pattern.swapped(), basis))).expect("Boltzmann matrix is invertible"),
    }
}

fn swap_names(mat: &GradedMatrix) -> GradedMatrix {
    let sw = VarMap::rename(&mat.ctx, &mat.ctx, |s| if s == "t1" { "t2".into() } else { "t1".into() }, 1).unwrap();
    mat.map_entries(&sw).unwrap()
}

fn boltzmann(pattern: CrossPattern, basis: ViroBasis) -> GradedMatrix {
    let c = VarContext::points(2, &[]);
    let z = || QuarterLaurent::zero(&c);
    let one = QuarterLaurent::one(&c);
    let t14 = &m(&c, 1, 4, 0) - &one; // t1^4 - 1
    let rows = match (pattern, basis) {
        (CrossPattern::UU, _) => vec![
            vec![m(&c, 1, 1, 1), z(), z(), z()],
            vec![z(), z(), m(&c, 1, -1, 1), z()],
            vec![z(), m(&c, 1, 1, -1), &t14 * &m(&c, 1, -1, -1), z()],
            vec![z(), z(), z(), m(&c, -1, -1, -1)],
        ],
        (CrossPattern::DU, b) => {
            let mid = match b {
                // (1 - t1^-4) t1 t2^-1
                ViroBasis::Standard => &(&one - &m(&c, 1, -4, 0)) * &m(&c, 1, 1, -1),
                ViroBasis::Dual => &(-&t14) * &m(&c, 1, -1, -1),
            };
            vec![
                vec![m(&c, 1, -1, 1), z(), z(), z()],
                vec![z(), z(), m(&c, -1, 1, 1), z()],
                vec![z(), m(&c, 1, -1, -1), mid, z()],
                vec![z(), z(), z(), m(&c, 1, 1, -1)],
            ]
        }
        (CrossPattern::UD, b) => {
            let mid = match b {
                // (1 - t1^4) t1^-1 t2
                ViroBasis::Standard => &(-&t14) * &m(&c, 1, -1, 1),
                ViroBasis::Dual => &t14 * &m(&c, 1, -1, -1),
            };
            vec![
                vec![m(&c, 1, 1, -1), z(), z(), z()],
                vec![z(), z(), m(&c, 1, -1, -1), z()],
                vec![z(), m(&c, -1, 1, 1), mid, z()],
                vec![z(), z(), z(), m(&c, 1, -1, 1)],
            ]
        }
        (CrossPattern::DD, b) => {
            let mid = match b {
                // (1 - t1^-4) t1 t2
                ViroBasis::Standard => &(&one - &m(&c, 1, -4, 0)) * &m(&c, 1, 1, 1),
                ViroBasis::Dual => &t14 * &m(&c, 1, -1, -1),
            };
            vec![
                vec![m(&c, -1, -1, -1), z(), z(), z()],
                vec![z(), z(), m(&c, 1, 1, -1), z()],
                vec![z(), m(&c, 1, -1, 1), mid, z()],
                vec![z(), z(), z(), m(&c, 1, 1, 1)],
            ]
        }
    };
    local4(Framework::Viro, &c, rows)
}

/// Duality maps over the critical strand's variable `t`.
pub fn viro_duality_local(kind: Extremum, pattern: Pattern, basis: ViroBasis) -> GradedMatrix {
    let c = VarContext::points(0, &["t"]);
    let t = |k: i64, e: i64| QuarterLaurent::mono(&c, k, &[("t", 4 * e)]);
    let v = match (kind, pattern, basis) {
        (Extremum::Min, Pattern::Rl, ViroBasis::Standard) => [t(-1, 2), t(1, 0)],
        (Extremum::Min, Pattern::Rl, ViroBasis::Dual) => [t(1, 0), t(1, 0)],
        (Extremum::Min, Pattern::Lr, ViroBasis::Standard) => [t(1, -2), t(1, 0)],
        (Extremum::Min, Pattern::Lr, ViroBasis::Dual) => [t(1, -2), t(-1, -2)],
        (Extremum::Max, Pattern::Rl, ViroBasis::Standard) => [t(1, 0), t(-1, -2)],
        (Extremum::Max, Pattern::Rl, ViroBasis::Dual) => [t(1, 0), t(1, 0)],
        (Extremum::Max, Pattern::Lr, ViroBasis::Standard) => [t(1, 0), t(1, 2)],
        (Extremum::Max, Pattern::Lr, ViroBasis::Dual) => [t(-1, 2), t(1, 2)],
    };
    duality_matrix(Framework::Viro, &c, kind, v)
}

/// The strand context of an event on `dom`, with maps sending the point
/// variables of the incoming and outgoing boundaries into it. Crossings
/// label strands by their incoming position; extrema add `t` for the arc
/// through the critical point.
pub fn boundary_maps(e: ElemEvent, dom: &OrientSeq) -> Result<(Ctx, VarMap, VarMap), MapError> {
    let (shape, cod) = apply_upward(e, dom)?;
    let ren = |src: &Ctx, tgt: &Ctx| VarMap::rename(src, tgt, |s| s.to_string(), 1).expect("names present");
    Ok(match shape {
        EventShape::Cross(i) => {
            let c = VarContext::points(dom.n, &[]);
            let swap = VarMap::rename(
                &c,
                &c,
                |s| {
                    let j: usize = s[1..].parse().unwrap();
                    let to = if j == i { i + 1 } else if j == i + 1 { i } else { j };
                    format!("t{to}")
                },
                1,
            )
            .unwrap();
            (c.clone(), VarMap::identity(&c), swap)
        }
        EventShape::Insert(i) => {
            let s = VarContext::points(dom.n, &["t"]);
            let pin = ren(&VarContext::points(dom.n, &[]), &s);
            let pout = extremum_strand_map(dom.n, i).expect("extremum map");
            (s, pin, pout)
        }
        EventShape::Remove(i) => {
            let s = VarContext::points(cod.n, &["t"]);
            let pin = extremum_strand_map(cod.n, i).expect("extremum map");
            let pout = ren(&VarContext::points(cod.n, &[]), &s);
            (s, pin, pout)
        }
    })
}

/// Dual-basis (or standard-basis) matrix of the event on all of `dom`,
/// over the event's strand variables.
pub fn viro_native_global(e: ElemEvent, dom: &OrientSeq, basis: ViroBasis) -> Result<GradedMatrix, MapError> {
    let (shape, cod) = apply_upward(e, dom)?;
    let (sctx, pin, pout) = boundary_maps(e, dom)?;
    let local = match e {
        ElemEvent::Cross { i, sign, pattern } => {
            let l = viro_crossing_local(pattern, sign, ViroBasis::Dual);
            let names = |s: &str| if s == "t1" { format!("t{i}") } else { format!("t{}", i + 1) };
            l.map_entries(&VarMap::rename(&l.ctx, &sctx, names, 1).unwrap())?
        }
        ElemEvent::Min { pattern, .. } | ElemEvent::Max { pattern, .. } => {
            let kind = if matches!(e, ElemEvent::Min { .. }) { Extremum::Min } else { Extremum::Max };
            let l = viro_duality_local(kind, pattern, ViroBasis::Dual);
            l.map_entries(&VarMap::rename(&l.ctx, &sctx, |s| s.to_string(), 1).unwrap())?
        }
    };
    let (wi, wo, sh) = shape.native_windows();
    let kind = match basis {
        ViroBasis::Dual => BasisKind::Dual,
        ViroBasis::Standard => BasisKind::Native,
    };
    let d = BasisDescriptor::new(*dom, kind, Framework::Viro);
    let c = BasisDescriptor::new(cod, kind, Framework::Viro);
    let dual = local_to_global(&local, &wi, &wo, &*sh, d, c)?;
    match basis {
        ViroBasis::Dual => Ok(dual),
        ViroBasis::Standard => {
            // standard = D_out * dual * D_in^-1
            let din = scaling(dom, &pin, &sctx, true);
            let dout = scaling(&cod, &pout, &sctx, false);
            let a = diagonal(c, c, &sctx, &dout);
            let b = diagonal(d, d, &sctx, &din);
            Ok(mul_unchecked(&a, &mul_unchecked(&dual, &b)))
        }
    }
}

/// Diagonal dual-to-standard factors on a boundary, pushed to strand
/// variables; inverted when `invert`.
fn scaling(o: &OrientSeq, to_strand: &VarMap, sctx: &Ctx, invert: bool) -> std::collections::BTreeMap<u64, QuarterLaurent> {
    let pctx = VarContext::points(o.n, &[]);
    let d = dual_scaling(o, &pctx, &|j| format!("t{j}"));
    d.into_iter()
        .map(|(k, v)| {
            let w = crate::gradedring::apply_varmap(&to_strand.clone(), &v.rebase(&to_strand.source)).unwrap().rebase(sctx);
            (k, if invert { w.unit_inverse().unwrap() } else { w })
        })
        .collect()
}

/// Modified-basis matrix: `B_out^-1 * dual * B_in`, each change of basis
/// carried to strand variables.
pub fn viro_modified_global(e: ElemEvent, dom: &OrientSeq, side: Side) -> Result<GradedMatrix, MapError> {
    let (_, cod) = apply_upward(e, dom)?;
    let (_, pin, pout) = boundary_maps(e, dom)?;
    let n = viro_native_global(e, dom, ViroBasis::Dual)?;
    let b_in = carried_basis(dom, side, false, &pin)?;
    let b_out_inv = carried_basis(&cod, side, true, &pout)?;
    Ok(mul_unchecked(&b_out_inv, &mul_unchecked(&n, &b_in)))
}

type CarriedKey = (OrientSeq, Side, bool, (Vec<String>, Vec<Vec<QExp>>));

static CARRIED: OnceLock<Mutex<HashMap<CarriedKey, Arc<GradedMatrix>>>> = OnceLock::new();

/// Change of basis (or its inverse) on `o` carried along `m`, memoized:
/// the same few maps recur for every event on a boundary.
fn carried_basis(o: &OrientSeq, side: Side, inverse: bool, m: &VarMap) -> Result<Arc<GradedMatrix>, MapError> {
    assert_eq!(m.source.arity(), o.n);
    let key = (*o, side, inverse, m.key());
    let cache = CARRIED.get_or_init(Default::default);
    if let Some(b) = cache.lock().unwrap().get(&key) {
        return Ok(b.clone());
    }
    let b = if inverse { shared_change_of_basis_inverse(o, side, Framework::Viro) } else { shared_change_of_basis(o, side, Framework::Viro) };
    let b = Arc::new(b.map_entries(m)?);
    cache.lock().unwrap().insert(key, b.clone());
    Ok(b)
}

pub fn viro_modified_local(e: ElemEvent, dom: &OrientSeq, side: Side) -> Result<GradedMatrix, MapError> {
    let (shape, _) = apply_upward(e, dom)?;
    let g = viro_modified_global(e, dom, side)?;
    let (wi, wo, _) = shape.modified_windows();
    Ok(extract_local(&g, &wi, &wo))
}

/// Modified-basis tables as printed: crossings over `t1 = t_i`,
/// `t2 = t_{i+1}`; extrema over `t`.
pub fn viro_modified_table(e: ElemEvent) -> GradedMatrix {
    match e {
        ElemEvent::Cross { sign: Sign::Neg, pattern, i } => {
            let pos = viro_modified_table(ElemEvent::Cross { i, sign: Sign::Pos, pattern: pattern.swapped() });
            invert_unit(&swap_names(&pos)).expect("table is invertible")
        }
        ElemEvent::Cross { pattern, .. } => {
            let c = VarContext::points(2, &[]);
            let p = |a, b| m(&c, 1, a, b);
            let n = |a, b| m(&c, -1, a, b);
            let (d, x) = match pattern {
                CrossPattern::UU => ([p(1, 1), p(1, 1), n(-1, -1), p(1, 1), n(-1, -1), p(1, 1), n(-1, -1), n(-1, -1)], [p(1, -1), p(-1, 1), p(-1, 1), p(1, -1)]),
                CrossPattern::DU => ([p(-1, 1), p(-1, 1), p(1, -1), p(-1, 1), p(1, -1), p(-1, 1), p(1, -1), p(1, -1)], [p(-1, -1), n(1, 1), n(1, 1), p(-1, -1)]),
                CrossPattern::UD => ([p(1, -1), p(1, -1), p(-1, 1), p(1, -1), p(-1, 1), p(1, -1), p(-1, 1), p(-1, 1)], [n(1, 1), p(-1, -1), p(-1, -1), n(1, 1)]),
                CrossPattern::DD => ([n(-1, -1), n(-1, -1), p(1, 1), n(-1, -1), p(1, 1), n(-1, -1), p(1, 1), p(1, 1)], [p(-1, 1), p(1, -1), p(1, -1), p(-1, 1)]),
            };
            crossing_table(Framework::Viro, &c, d, x)
        }
        ElemEvent::Min { .. } | ElemEvent::Max { .. } => {
            let c = VarContext::points(0, &["t"]);
            let (kind, e) = if matches!(e, ElemEvent::Min { .. }) { (Extremum::Min, -2) } else { (Extremum::Max, 2) };
            extremum_table(Framework::Viro, &c, kind, QuarterLaurent::mono(&c, 1, &[("t", 4 * e)]))
        }
    }
}

/// Globalize a Viro modified-basis table, renaming its variables into the
/// event's strand context.
pub fn viro_globalize_table(table: &GradedMatrix, e: ElemEvent, dom: &OrientSeq, side: Side) -> Result<GradedMatrix, MapError> {
    let (sctx, _, _) = boundary_maps(e, dom)?;
    let t = match e {
        ElemEvent::Cross { i, .. } => {
            let names = |s: &str| if s == "t1" { format!("t{i}") } else { format!("t{}", i + 1) };
            table.map_entries(&VarMap::rename(&table.ctx, &sctx, names, 1).unwrap())?
        }
        _ => table.map_entries(&VarMap::rename(&table.ctx, &sctx, |s| s.to_string(), 1).unwrap())?,
    };
    crate::rtmaps::globalize_modified(&t, e, dom, side, Framework::Viro)
}

/// `t_j -> q^(1/2)` for every variable: the one-variable specialization.
pub fn specialize_to_q(mat: &GradedMatrix) -> GradedMatrix {
    let single = VarContext::single();
    mat.map_polys(&single, |p| crate::gradedring::collapse_single(p, crate::gradedring::Target::T))
}
