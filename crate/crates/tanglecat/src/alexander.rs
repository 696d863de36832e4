//! Whole-diagram composition in any of the three frameworks, Alexander
//! polynomial normalization, and a global Kauffman-state oracle.

use std::collections::HashMap;

use thiserror::Error;

use crate::diagram::{tilde_partner, DiagramError, Event, OrientSeq, TangleDiagram};
use crate::gradedring::{collapse_single, Ctx, QExp, QuarterLaurent, RingError, Target, VarContext, VarMap};
use crate::oszdecat::{corner_weight, osz_event_global, osz_terminal, Corner, Grading, OszError};
use crate::rtmaps::{apply_upward, rt_modified_global, rt_native_global, MapError};
use crate::statespace::{
    change_of_basis_inverse, compose, diagonal, dual_scaling, local_to_global, BasisDescriptor, BasisKind, EventShape, Framework, GradedMatrix, Side,
    StateError,
};
use crate::viromaps::{viro_modified_global, viro_native_global, ViroBasis};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlexError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Osz(#[from] OszError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("diagram is not a closed knot diagram: {0}")]
    NotClosed(String),
    #[error("basis {0:?} is not available for this framework")]
    Basis(BasisKind),
    #[error("composite {0} cannot be normalized")]
    Normalize(String),
}

/// What to compose: framework, basis (ignored by `Osz`, which always uses
/// idempotents), truncation side and grading.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PipelineSpec {
    pub framework: Framework,
    pub basis: BasisKind,
    pub trunc: Side,
    pub grading: Grading,
}

impl PipelineSpec {
    pub fn osz(trunc: Side, grading: Grading) -> Self {
        PipelineSpec { framework: Framework::Osz, basis: BasisKind::Idempotent(trunc), trunc, grading }
    }
}

fn descriptor(spec: &PipelineSpec, o: OrientSeq) -> BasisDescriptor {
    let kind = match spec.framework {
        Framework::Osz => BasisKind::Idempotent(spec.trunc),
        _ => spec.basis,
    };
    BasisDescriptor::new(o, kind, spec.framework)
}

/// Variables of a Viro event's strand ring sent to the component ring.
fn viro_to_components(d: &TangleDiagram, k: usize, shape: EventShape, src: &Ctx) -> Result<VarMap, AlexError> {
    let comp = d.component_ctx();
    let kap = |lvl: usize, j: usize| format!("s{}", d.kappa[lvl][j - 1] + 1);
    let (lvl, extra) = match shape {
        EventShape::Cross(_) => (k, None),
        EventShape::Insert(i) => (k, Some(kap(k + 1, i + 1))),
        EventShape::Remove(i) => (k + 1, Some(kap(k, i + 1))),
    };
    let n = d.levels[lvl].n;
    let mut names: Vec<String> = (1..=n).map(|j| kap(lvl, j)).collect();
    names.extend(extra);
    let imgs: Vec<Vec<(&str, i64)>> = names.iter().map(|s| vec![(s.as_str(), 1)]).collect();
    Ok(VarMap::new(src, &comp, &imgs)?)
}

/// Terminal row vector for the representation-theoretic pipelines, written
/// in the requested basis of the two-strand level.
fn endcap(d: &TangleDiagram, k: usize, p: crate::diagram::Pattern, spec: &PipelineSpec, ctx: &Ctx) -> Result<GradedMatrix, AlexError> {
    let level = d.levels[k];
    let side = spec.trunc;
    let fw = spec.framework;
    let local_ctx = match fw {
        Framework::Rt => VarContext::single(),
        _ => VarContext::points(level.n, &[]),
    };
    let mdom = BasisDescriptor::new(level, BasisKind::Modified(side), fw);
    let mcod = BasisDescriptor::new(OrientSeq::empty(), BasisKind::Modified(side), fw);
    let row = local_to_global(&osz_terminal(p, side, &local_ctx), &[0, 1, 2], &[], &|j| j, mdom, mcod)?;
    let row = match spec.basis {
        BasisKind::Modified(s) if s == side => row,
        BasisKind::Native | BasisKind::Dual => {
            let binv = change_of_basis_inverse(&level, side, fw);
            let mut r = compose(&row, &binv)?;
            if fw == Framework::Viro && spec.basis == BasisKind::Native {
                // standard coordinates are the dual ones scaled by D
                let dscale = dual_scaling(&level, &local_ctx, &|j| format!("t{j}"));
                let inv: std::collections::BTreeMap<u64, QuarterLaurent> = dscale.into_iter().map(|(x, v)| (x, v.unit_inverse().unwrap())).collect();
                let nd = BasisDescriptor::new(level, BasisKind::Native, fw);
                let dual_d = BasisDescriptor::new(level, BasisKind::Dual, fw);
                r = compose(&r, &diagonal(nd, dual_d, &local_ctx, &inv))?;
            }
            let cod = BasisDescriptor::new(OrientSeq::empty(), spec.basis, fw);
            r.with_descriptors(BasisDescriptor::new(level, spec.basis, fw), cod)
        }
        other => return Err(AlexError::Basis(other)),
    };
    Ok(match fw {
        Framework::Rt => row,
        _ => row.map_entries(&d.points_to_components(k)?)?.with_descriptors(row.domain, row.codomain).rebased(ctx),
    })
}

trait Rebased {
    fn rebased(self, ctx: &Ctx) -> Self;
}

impl Rebased for GradedMatrix {
    fn rebased(self, ctx: &Ctx) -> Self {
        self.map_polys(ctx, |p| p.rebase(ctx))
    }
}

/// Matrix of event `k` over the pipeline's ring.
pub fn event_matrix(d: &TangleDiagram, k: usize, spec: &PipelineSpec) -> Result<GradedMatrix, AlexError> {
    let above = d.levels[k];
    let e = d.events[k];
    match spec.framework {
        Framework::Osz => {
            let m = osz_event_global(e, &above, spec.trunc, spec.grading)?;
            Ok(match spec.grading {
                Grading::Single => m,
                Grading::Multi => m.map_entries(&d.strands_to_components(k + 1)?)?,
            })
        }
        Framework::Rt | Framework::Viro => {
            if let Event::Terminal(p) = e {
                let ctx = pipeline_ctx(d, spec);
                return endcap(d, k, p, spec, &ctx);
            }
            let pe = tilde_partner(e, &above)?;
            if spec.framework == Framework::Rt {
                return Ok(match spec.basis {
                    BasisKind::Native | BasisKind::Dual => rt_native_global(pe, &above)?,
                    BasisKind::Modified(s) => rt_modified_global(pe, &above, s)?,
                    other => return Err(AlexError::Basis(other)),
                });
            }
            let m = match spec.basis {
                BasisKind::Native => viro_native_global(pe, &above, ViroBasis::Standard)?,
                BasisKind::Dual => viro_native_global(pe, &above, ViroBasis::Dual)?,
                BasisKind::Modified(s) => viro_modified_global(pe, &above, s)?,
                other => return Err(AlexError::Basis(other)),
            };
            let (shape, _) = apply_upward(pe, &above)?;
            let vm = viro_to_components(d, k, shape, &m.ctx)?;
            Ok(m.map_entries(&vm)?)
        }
    }
}

fn pipeline_ctx(d: &TangleDiagram, spec: &PipelineSpec) -> Ctx {
    match (spec.framework, spec.grading) {
        (Framework::Rt, _) | (Framework::Osz, Grading::Single) => VarContext::single(),
        _ => d.component_ctx(),
    }
}

/// Product of the event matrices, top to bottom. Viro composites stay in
/// component variables under multi grading and are collapsed to `t` under
/// single grading.
pub fn compose_diagram(d: &TangleDiagram, spec: &PipelineSpec) -> Result<GradedMatrix, AlexError> {
    if spec.framework != Framework::Osz && d.has_terminal() && !matches!(spec.basis, BasisKind::Native | BasisKind::Dual | BasisKind::Modified(_)) {
        return Err(AlexError::Basis(spec.basis));
    }
    let ctx = pipeline_ctx(d, spec);
    let mut acc = GradedMatrix::identity(descriptor(spec, d.top), &ctx);
    for k in 0..d.events.len() {
        let m = event_matrix(d, k, spec)?;
        acc = compose(&m, &acc)?;
    }
    if spec.framework == Framework::Viro && spec.grading == Grading::Single {
        acc = acc.map_polys(&VarContext::single(), |p| collapse_single(p, Target::T));
    }
    Ok(acc)
}

/// The unique `±t^(k/2) * p` that is symmetric under `t -> t^-1` and takes
/// the value 1 at `t = 1`.
pub fn normalize(p: &QuarterLaurent) -> Result<QuarterLaurent, AlexError> {
    let bad = || AlexError::Normalize(p.to_string());
    if p.is_zero() || p.ctx().arity() != 1 {
        return Err(bad());
    }
    let exps: Vec<i64> = p.terms().map(|(e, _)| e[0].0).collect();
    let (lo, hi) = (*exps.iter().min().unwrap(), *exps.iter().max().unwrap());
    if (lo + hi) % 2 != 0 {
        return Err(bad());
    }
    let shift = QuarterLaurent::monomial(p.ctx(), 1, &[QExp(-(lo + hi) / 2)]);
    let mut q = p * &shift;
    let coeffs: HashMap<i64, _> = q.terms().map(|(e, c)| (e[0].0, c.clone())).collect();
    if coeffs.iter().any(|(e, c)| coeffs.get(&-e) != Some(c)) {
        return Err(bad());
    }
    let v = q.eval_at_one();
    if v == (-1).into() {
        q = -&q;
    } else if v != 1.into() {
        return Err(bad());
    }
    Ok(q)
}

/// Normalized Alexander polynomial from the single-graded idempotent
/// pipeline with right truncation.
pub fn alexander_poly(d: &TangleDiagram) -> Result<QuarterLaurent, AlexError> {
    let m = closed_scalar(d, &PipelineSpec::osz(Side::Right, Grading::Single))?;
    normalize(&m)
}

/// The 1x1 composite of a closed diagram.
pub fn closed_scalar(d: &TangleDiagram, spec: &PipelineSpec) -> Result<QuarterLaurent, AlexError> {
    if !d.is_closed() {
        return Err(AlexError::NotClosed("needs an empty top and a terminal minimum".into()));
    }
    Ok(compose_diagram(d, spec)?.get(0, 0))
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, a: usize) -> usize {
        if self.0[a] != a {
            let r = self.find(self.0[a]);
            self.0[a] = r;
        }
        self.0[a]
    }
    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        self.0[a] = b;
    }
}

/// Result of the global state sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateSum {
    pub value: QuarterLaurent,
    pub states: usize,
}

/// Sum over global Kauffman states: each crossing claims one adjacent
/// region through a corner, every region but the two beside the terminal
/// arc is claimed exactly once. Weighted by the corner table in one
/// variable.
pub fn oracle_state_sum(d: &TangleDiagram) -> Result<StateSum, AlexError> {
    if !d.is_closed() {
        return Err(AlexError::NotClosed("needs an empty top and a terminal minimum".into()));
    }
    // region (k, j) lies between strands j and j+1 of level k
    let mut offs = vec![0];
    for l in &d.levels {
        offs.push(offs.last().unwrap() + l.n + 1);
    }
    let id = |k: usize, j: usize| offs[k] + j;
    let mut dsu = Dsu((0..*offs.last().unwrap()).collect());
    let mut crossings = vec![];
    let mut marked = vec![];
    for (k, e) in d.events.iter().enumerate() {
        let n = d.levels[k].n;
        match *e {
            Event::PosCross(i) | Event::NegCross(i) => {
                for j in 0..=n {
                    if j != i {
                        dsu.union(id(k, j), id(k + 1, j));
                    }
                }
                let sign = if matches!(e, Event::PosCross(_)) { crate::diagram::Sign::Pos } else { crate::diagram::Sign::Neg };
                let pattern = d.levels[k + 1].cross_pattern(i);
                let corners = [(Corner::N, id(k, i)), (Corner::S, id(k + 1, i)), (Corner::W, id(k, i - 1)), (Corner::E, id(k, i + 1))];
                crossings.push(corners.map(|(c, r)| (r, corner_weight(pattern, sign, c))));
            }
            Event::Max(i, _) => {
                for j in 0..=n {
                    if j < i {
                        dsu.union(id(k, j), id(k + 1, j));
                    } else if j == i {
                        dsu.union(id(k, i), id(k + 1, i));
                        dsu.union(id(k, i), id(k + 1, i + 2));
                    } else {
                        dsu.union(id(k, j), id(k + 1, j + 2));
                    }
                }
            }
            Event::Min(i, _) => {
                for j in 0..=n {
                    if j < i {
                        dsu.union(id(k, j), id(k + 1, j));
                    } else if j == i || j == i + 2 {
                        dsu.union(id(k, j), id(k + 1, i));
                    } else if j > i + 2 {
                        dsu.union(id(k, j), id(k + 1, j - 2));
                    }
                }
            }
            Event::Terminal(_) => {
                dsu.union(id(k, 0), id(k, 2));
                dsu.union(id(k, 0), id(k + 1, 0));
                marked = vec![id(k, 0), id(k, 1)];
            }
        }
    }
    let mut label = HashMap::new();
    let mut region = |a: usize, dsu: &mut Dsu| {
        let r = dsu.find(a);
        let next = label.len();
        *label.entry(r).or_insert(next)
    };
    let cand: Vec<Vec<(usize, crate::oszdecat::CornerWeight)>> = crossings.iter().map(|cs| cs.iter().map(|&(r, w)| (region(r, &mut dsu), w)).collect()).collect();
    let excluded: Vec<usize> = marked.iter().map(|&r| region(r, &mut dsu)).collect();
    for a in 0..*offs.last().unwrap() {
        region(a, &mut dsu);
    }
    let nreg = label.len();
    let ctx = VarContext::single();
    if nreg != crossings.len() + 2 {
        return Err(AlexError::NotClosed(format!("{nreg} regions for {} crossings", crossings.len())));
    }
    let mut used = vec![false; nreg];
    for &r in &excluded {
        used[r] = true;
    }
    let mut acc: HashMap<i64, i64> = HashMap::new();
    let mut count = 0;
    fn go(k: usize, cand: &[Vec<(usize, crate::oszdecat::CornerWeight)>], used: &mut [bool], m: i32, a: i64, acc: &mut HashMap<i64, i64>, count: &mut usize) {
        if k == cand.len() {
            *acc.entry(a).or_default() += if m % 2 == 0 { 1 } else { -1 };
            *count += 1;
            return;
        }
        for &(r, w) in &cand[k] {
            if !used[r] {
                used[r] = true;
                go(k + 1, cand, used, m + w.maslov, a + w.single(), acc, count);
                used[r] = false;
            }
        }
    }
    go(0, &cand, &mut used, 0, 0, &mut acc, &mut count);
    let mut value = QuarterLaurent::zero(&ctx);
    for (e, c) in acc {
        value = &value + &QuarterLaurent::single_term(&ctx, c, e);
    }
    Ok(StateSum { value, states: count })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_diagram;

    const TREFOIL: &str = "max 0 lr\nmax 2 rl\nxp 2\nxp 2\nxp 2\nmin 2 lr\nterm rl\n";

    #[test]
    fn unknot_is_one() {
        let d = parse_diagram("max 0 lr\nterm rl\n").unwrap();
        assert_eq!(alexander_poly(&d).unwrap().pretty_single(), "1");
    }

    #[test]
    fn empty_diagram_identity() {
        let d = parse_diagram("").unwrap();
        let m = compose_diagram(&d, &PipelineSpec::osz(Side::Right, Grading::Single)).unwrap();
        assert_eq!(m.get(0, 0).to_string(), "1");
    }

    #[test]
    fn trefoil() {
        let d = parse_diagram(TREFOIL).unwrap();
        assert_eq!(alexander_poly(&d).unwrap().pretty_single(), "t - 1 + t^-1");
        let o = oracle_state_sum(&d).unwrap();
        assert_eq!(o.states, 3);
        assert_eq!(normalize(&o.value).unwrap().pretty_single(), "t - 1 + t^-1");
    }

    #[test]
    fn normalize_rejects_asymmetric() {
        let c = VarContext::single();
        let p = &QuarterLaurent::single_term(&c, 1, 4) + &QuarterLaurent::single_term(&c, 2, 0);
        assert!(normalize(&p).is_err());
    }
}
