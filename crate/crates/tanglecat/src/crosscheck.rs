//! Exact comparison of the decategorified event matrices with the
//! representation-theoretic and Viro matrices of the rotated, reversed
//! tangle, plus braid / R2 / zigzag relation suites.

use std::fmt;

use rayon::prelude::*;

use crate::alexander::{compose_diagram, PipelineSpec};
use crate::diagram::{tilde_partner, CrossPattern, Event, OrientSeq, Pattern, Sign, TangleDiagram};
use crate::gradedring::{Ctx, QExp, QuarterLaurent, VarContext, VarMap};
use crate::oszdecat::{osz_crossing_local, osz_event_global, Grading};
use crate::rtmaps::{apply_upward, rt_modified_global, rt_modified_table};
use crate::statespace::{BasisKind, EventShape, Framework, GradedMatrix, Side};
use crate::viromaps::{boundary_maps, viro_modified_global};

/// One failed comparison: what was checked and where it first broke.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub case: String,
    pub detail: String,
}

/// Outcome of a batch of checks. Failures are kept in sweep order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: usize,
    pub failures: Vec<Failure>,
}

impl Report {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }

    fn one(case: String, res: Result<(), String>) -> Self {
        Report { checks: 1, failures: res.err().map(|detail| Failure { case, detail }).into_iter().collect() }
    }

    pub fn merge(mut self, o: Report) -> Report {
        self.checks += o.checks;
        self.failures.extend(o.failures);
        self
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for x in &self.failures {
            writeln!(f, "FAIL {}: {}", x.case, x.detail)?;
        }
        write!(f, "{} {} checks, {} failed", if self.pass() { "PASS" } else { "FAIL" }, self.checks, self.failures.len())
    }
}

fn bits(x: u64) -> String {
    let v: Vec<String> = (0..64).filter(|b| x >> b & 1 == 1).map(|b| b.to_string()).collect();
    format!("{{{}}}", v.join(","))
}

/// Entry-by-entry equality; the first mismatch is reported by row/column
/// subsets.
pub fn compare(lhs: &GradedMatrix, rhs: &GradedMatrix) -> Result<(), String> {
    match lhs.first_difference(rhs) {
        None => Ok(()),
        Some((r, c, a, b)) => Err(format!("entry ({}, {}): {} vs {}", bits(r), bits(c), a, b)),
    }
}

fn err<E: fmt::Display>(e: E) -> String {
    e.to_string()
}

/// `s_j -> (image of t_j)^4`: the Osz strand variables carried
/// into a Viro strand ring through the point map `pout`.
fn strands_to_viro(n: usize, pout: &VarMap) -> VarMap {
    let src = VarContext::strands(n);
    let tgt = pout.target.clone();
    let imgs: Vec<Vec<(&str, i64)>> = (1..=n)
        .map(|j| {
            pout.image_exps(j - 1)
                .iter()
                .enumerate()
                .filter(|(_, e)| !e.is_zero())
                .map(|(k, e)| (tgt.name(k), 4 * e.0))
                .collect()
        })
        .collect();
    VarMap::new(&src, &tgt, &imgs).expect("names present")
}

fn case(e: Event, above: &OrientSeq, trunc: Side, grading: Grading) -> String {
    format!("{e} on {above} trunc={trunc:?} grading={grading:?}")
}

/// The decategorified matrix of `e` against the partner event of the
/// rotated tangle in modified coordinates: RT under one variable, Viro
/// with strand variables otherwise. Extremum scalars are exact.
pub fn check_event(e: Event, above: &OrientSeq, trunc: Side, grading: Grading) -> Report {
    Report::one(case(e, above, trunc, grading), event_equality(e, above, trunc, grading))
}

fn event_equality(e: Event, above: &OrientSeq, trunc: Side, grading: Grading) -> Result<(), String> {
    let osz = osz_event_global(e, above, trunc, grading).map_err(err)?;
    let pe = tilde_partner(e, above).map_err(err)?;
    match grading {
        Grading::Single => compare(&osz, &rt_modified_global(pe, above, trunc).map_err(err)?),
        Grading::Multi => {
            let viro = viro_modified_global(pe, above, trunc).map_err(err)?;
            let (shape, _) = apply_upward(pe, above).map_err(err)?;
            let (sctx, _, pout) = boundary_maps(pe, above).map_err(err)?;
            let below = osz.codomain.orient.n;
            // Osz strands are labelled by outgoing position; `pout` carries
            // outgoing points to the strand ring, exchanging i and i+1 at a crossing
            let vm = strands_to_viro(below, &pout);
            let scalar = match shape {
                EventShape::Cross(_) => None,
                EventShape::Insert(_) => Some(8),
                EventShape::Remove(_) => Some(-8),
            };
            let lhs = osz.map_entries(&vm).map_err(err)?;
            let rhs = match scalar {
                None => viro,
                Some(q) => viro.scale(&critical_power(&sctx, q)),
            };
            compare(&lhs, &rhs)
        }
    }
}

fn critical_power(ctx: &Ctx, quarters: i64) -> QuarterLaurent {
    let mut exps = vec![QExp::ZERO; ctx.arity()];
    exps[ctx.index_of("t").expect("critical strand")] = QExp(quarters);
    QuarterLaurent::monomial(ctx, 1, &exps)
}

pub fn check_crossing(above: &OrientSeq, i: usize, sign: Sign, trunc: Side, grading: Grading) -> Report {
    let e = match sign {
        Sign::Pos => Event::PosCross(i),
        Sign::Neg => Event::NegCross(i),
    };
    check_event(e, above, trunc, grading)
}

/// `kind` is the extremum as drawn: `Max` creates a pair below, `Min`
/// removes one. The direction label is read from `above` for minima.
pub fn check_extremum(above: &OrientSeq, i: usize, kind: crate::rtmaps::Extremum, pattern: Pattern, trunc: Side, grading: Grading) -> Report {
    let e = match kind {
        crate::rtmaps::Extremum::Max => Event::Max(i, pattern),
        crate::rtmaps::Extremum::Min => Event::Min(i, pattern),
    };
    check_event(e, above, trunc, grading)
}

/// Every crossing event on every boundary with at most `max_n` points.
pub fn crossing_cases(max_n: usize) -> Vec<(Event, OrientSeq)> {
    let mut v = Vec::new();
    for n in 2..=max_n {
        for o in OrientSeq::all(n) {
            for i in 1..n {
                v.push((Event::PosCross(i), o));
                v.push((Event::NegCross(i), o));
            }
        }
    }
    v
}

/// Every cap and cup whose both boundaries have at most `max_n` points.
pub fn extremum_cases(max_n: usize) -> Vec<(Event, OrientSeq)> {
    let mut v = Vec::new();
    for n in 0..=max_n {
        for o in OrientSeq::all(n) {
            for p in [Pattern::Lr, Pattern::Rl] {
                if n + 2 <= max_n {
                    for i in 0..=n {
                        v.push((Event::Max(i, p), o));
                    }
                }
                for i in 0..n.saturating_sub(1) {
                    if (o.is_up(i + 1), o.is_up(i + 2)) == p.min_pair() {
                        v.push((Event::Min(i, p), o));
                    }
                }
            }
        }
    }
    v
}

fn sweep(cases: &[(Event, OrientSeq)]) -> Report {
    let parts: Vec<Report> = cases
        .par_iter()
        .flat_map_iter(|(e, o)| {
            [Side::Right, Side::Left]
                .into_iter()
                .flat_map(move |s| [Grading::Single, Grading::Multi].into_iter().map(move |g| check_event(*e, o, s, g)))
        })
        .collect();
    parts.into_iter().fold(Report::default(), Report::merge)
}

pub fn sweep_crossings(max_n: usize) -> Report {
    sweep(&crossing_cases(max_n))
}

pub fn sweep_extrema(max_n: usize) -> Report {
    sweep(&extremum_cases(max_n))
}

/// A relabelling of crossing patterns used to match Osz crossings with
/// RT crossings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bijection {
    /// UU, DD fixed; UD and DU exchanged.
    Tilde,
    Identity,
    /// UU and DD exchanged, UD and DU exchanged.
    SwapAll,
    /// UU and DD exchanged, mixed patterns fixed.
    SwapUniform,
}

impl Bijection {
    pub const ALL: [Bijection; 4] = [Bijection::Tilde, Bijection::Identity, Bijection::SwapAll, Bijection::SwapUniform];

    pub fn apply(self, p: CrossPattern) -> CrossPattern {
        use CrossPattern::*;
        let swap_uniform = |p| match p {
            UU => DD,
            DD => UU,
            x => x,
        };
        match self {
            Bijection::Tilde => p.tilde(),
            Bijection::Identity => p,
            Bijection::SwapAll => swap_uniform(p.tilde()),
            Bijection::SwapUniform => swap_uniform(p),
        }
    }
}

/// Local Osz crossing tables (single grading) against the RT modified
/// tables selected through `bij`.
pub fn check_bijection(bij: Bijection) -> Report {
    let mut r = Report::default();
    for p in [CrossPattern::UU, CrossPattern::UD, CrossPattern::DU, CrossPattern::DD] {
        for sign in [Sign::Pos, Sign::Neg] {
            let osz = osz_crossing_local(p, sign, Grading::Single);
            let rt = rt_modified_table(crate::diagram::ElemEvent::Cross { i: 1, sign, pattern: bij.apply(p) });
            r = r.merge(Report::one(format!("{bij:?} {p:?} {sign:?}"), compare(&osz, &rt)));
        }
    }
    r
}

/// Pairs of diagrams on a common top boundary that must compose to the
/// same matrix. A missing right-hand side means the identity.
pub fn relation_cases(n: usize) -> Vec<(String, TangleDiagram, Option<TangleDiagram>)> {
    let mut v = Vec::new();
    let mk = |top: OrientSeq, ev: Vec<Event>| TangleDiagram::new(top, ev).ok();
    for top in OrientSeq::all(n) {
        for i in 1..n {
            for (a, b) in [(Event::PosCross(i), Event::NegCross(i)), (Event::NegCross(i), Event::PosCross(i))] {
                if let Some(d) = mk(top, vec![a, b]) {
                    v.push((format!("R2 {a},{b} on {top}"), d, None));
                }
            }
            if i + 2 <= n {
                for s in [Sign::Pos, Sign::Neg] {
                    let x = |j| if s == Sign::Pos { Event::PosCross(j) } else { Event::NegCross(j) };
                    if let (Some(l), Some(r)) = (mk(top, vec![x(i), x(i + 1), x(i)]), mk(top, vec![x(i + 1), x(i), x(i + 1)])) {
                        v.push((format!("braid {s:?} at {i} on {top}"), l, Some(r)));
                    }
                }
            }
        }
        for j in 1..=n {
            for p in [Pattern::Lr, Pattern::Rl] {
                for q in [Pattern::Lr, Pattern::Rl] {
                    // strand j bends back through a new pair on either side
                    for ev in [vec![Event::Max(j, p), Event::Min(j - 1, q)], vec![Event::Max(j - 1, p), Event::Min(j, q)]] {
                        if let Some(d) = mk(top, ev.clone()) {
                            if d.bottom() == top {
                                v.push((format!("zigzag {},{} on {top}", ev[0], ev[1]), d, None));
                            }
                        }
                    }
                }
            }
        }
    }
    v
}

/// Pipeline variants exercised for a framework.
pub fn relation_specs(fw: Framework) -> Vec<PipelineSpec> {
    let sides = [Side::Right, Side::Left];
    match fw {
        Framework::Osz => sides.iter().flat_map(|&s| [Grading::Single, Grading::Multi].map(|g| PipelineSpec::osz(s, g))).collect(),
        Framework::Rt => [BasisKind::Native, BasisKind::Modified(Side::Right), BasisKind::Modified(Side::Left)]
            .map(|b| PipelineSpec { framework: fw, basis: b, trunc: Side::Right, grading: Grading::Single })
            .to_vec(),
        Framework::Viro => [BasisKind::Native, BasisKind::Dual, BasisKind::Modified(Side::Right), BasisKind::Modified(Side::Left)]
            .map(|b| PipelineSpec { framework: fw, basis: b, trunc: Side::Right, grading: Grading::Multi })
            .to_vec(),
    }
}

fn relation_holds(l: &TangleDiagram, r: &Option<TangleDiagram>, spec: &PipelineSpec) -> Result<(), String> {
    let a = compose_diagram(l, spec).map_err(err)?;
    let b = match r {
        Some(r) => compose_diagram(r, spec).map_err(err)?,
        None => GradedMatrix::identity(a.domain, &a.ctx),
    };
    compare(&a, &b)
}

/// Braid, R2 and zigzag relations on boundaries with `n` points.
pub fn check_relations(fw: Framework, n: usize) -> Report {
    let specs = relation_specs(fw);
    let parts: Vec<Report> = relation_cases(n)
        .par_iter()
        .flat_map_iter(|(name, l, r)| specs.iter().map(move |s| Report::one(format!("{name} {fw:?} {:?} {:?}", s.basis, s.grading), relation_holds(l, r, s))))
        .collect();
    parts.into_iter().fold(Report::default(), Report::merge)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Crossings,
    Extrema,
    Relations,
    All,
}

/// Run a suite; relations are capped at four points regardless of `max_n`.
pub fn run_suite(suite: Suite, max_n: usize) -> Vec<(String, Report)> {
    let mut out = Vec::new();
    if matches!(suite, Suite::Crossings | Suite::All) {
        out.push(("crossings".to_string(), sweep_crossings(max_n)));
        let mut b = Report::default();
        for bij in Bijection::ALL {
            let r = check_bijection(bij);
            let want = bij == Bijection::Tilde;
            b = b.merge(Report::one(
                format!("bijection {bij:?}"),
                if r.pass() == want { Ok(()) } else { Err(format!("expected {}", if want { "agreement" } else { "a mismatch" })) },
            ));
        }
        out.push(("bijections".to_string(), b));
    }
    if matches!(suite, Suite::Extrema | Suite::All) {
        out.push(("extrema".to_string(), sweep_extrema(max_n)));
    }
    if matches!(suite, Suite::Relations | Suite::All) {
        for fw in [Framework::Rt, Framework::Viro, Framework::Osz] {
            let r = (1..=max_n.min(4)).map(|n| check_relations(fw, n)).fold(Report::default(), Report::merge);
            out.push((format!("relations {fw:?}"), r));
        }
    }
    out
}
