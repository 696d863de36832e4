//! Enumerated partial Kauffman states against the event matrices, and
//! coherence of the Osz tables.

use tanglecat::diagram::{CrossPattern, Event, OrientSeq, Sign};
use tanglecat::gradedring::{collapse_single, Target, VarMap};
use tanglecat::oszdecat::{osz_crossing_local, osz_event_global, state_sum_matrix, Grading};
use tanglecat::statespace::{compose, extract_local, BasisDescriptor, EventShape, Framework, GradedMatrix, Side};

const PATTERNS: [CrossPattern; 4] = [CrossPattern::UU, CrossPattern::UD, CrossPattern::DU, CrossPattern::DD];

fn crossings(max_n: usize) -> impl Iterator<Item = (OrientSeq, usize, Sign)> {
    (2..=max_n).flat_map(|n| OrientSeq::all(n).flat_map(move |o| (1..n).flat_map(move |i| [Sign::Pos, Sign::Neg].map(|s| (o, i, s)))))
}

fn event(i: usize, s: Sign) -> Event {
    if s == Sign::Pos {
        Event::PosCross(i)
    } else {
        Event::NegCross(i)
    }
}

#[test]
fn state_sum_reproduces_tables() {
    let mut checked = 0;
    for (o, i, s) in crossings(6) {
        for trunc in [Side::Right, Side::Left] {
            for g in [Grading::Single, Grading::Multi] {
                let ss = state_sum_matrix(&o, i, s, trunc, g).unwrap();
                let m = osz_event_global(event(i, s), &o, trunc, g).unwrap();
                assert!(ss.same_entries(&m), "{o} {i} {s:?} {trunc:?} {g:?}: {:?}", ss.first_difference(&m));
                checked += 1;
            }
        }
    }
    assert_eq!(checked, 4128);
}

#[test]
fn single_is_collapsed_multi() {
    for n in 0..=5 {
        for o in OrientSeq::all(n) {
            let mut evs: Vec<Event> = (1..n).flat_map(|i| [Event::PosCross(i), Event::NegCross(i)]).collect();
            for p in [tanglecat::diagram::Pattern::Lr, tanglecat::diagram::Pattern::Rl] {
                evs.extend((0..=n).map(|i| Event::Max(i, p)));
                evs.extend((0..n.saturating_sub(1)).filter(|&i| (o.is_up(i + 1), o.is_up(i + 2)) == p.min_pair()).map(|i| Event::Min(i, p)));
            }
            for e in evs {
                for trunc in [Side::Right, Side::Left] {
                    let m = osz_event_global(e, &o, trunc, Grading::Multi).unwrap();
                    let s = osz_event_global(e, &o, trunc, Grading::Single).unwrap();
                    let c = m.map_polys(&s.ctx, |p| collapse_single(p, Target::T));
                    assert!(c.same_entries(&s), "{e} on {o} {trunc:?}");
                }
            }
        }
    }
}

/// The truncated matrices are the local table with the forbidden region
/// dropped: entries at the edge window agree with the table exactly on
/// subsets avoiding the forbidden region, and nothing else survives.
#[test]
fn truncation_is_a_submatrix() {
    for n in 2..=5 {
        for o in OrientSeq::all(n) {
            for i in [1, n - 1] {
                for s in [Sign::Pos, Sign::Neg] {
                    for trunc in [Side::Right, Side::Left] {
                        let below = o.swap(i);
                        let table = osz_crossing_local(below.cross_pattern(i), s, Grading::Single);
                        let g = osz_event_global(event(i, s), &o, trunc, Grading::Single).unwrap();
                        let (wi, wo, _) = EventShape::Cross(i).modified_windows();
                        let local = extract_local(&g, &wi, &wo);
                        let forbidden = match trunc {
                            Side::Right => 0,
                            Side::Left => n,
                        };
                        let bit = wi.iter().position(|&w| w == forbidden);
                        for x in 0..8u64 {
                            for y in 0..8u64 {
                                let hits = |b: u64| bit.is_some_and(|k| b >> k & 1 == 1);
                                let want = if hits(x) || hits(y) { tanglecat::gradedring::QuarterLaurent::zero(&table.ctx) } else { table.get(x, y) };
                                assert_eq!(local.get(x, y), want, "{o} i={i} {s:?} {trunc:?} ({x:03b},{y:03b})");
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn negative_inverts_positive() {
    for p in PATTERNS {
        for g in [Grading::Single, Grading::Multi] {
            let pos = osz_crossing_local(p, Sign::Pos, g);
            let mut neg = osz_crossing_local(p.swapped(), Sign::Neg, g);
            if g == Grading::Multi {
                // the strands trade places across the first crossing
                let sw = VarMap::rename(&neg.ctx, &neg.ctx, |s| if s == "s1" { "s2".into() } else { "s1".into() }, 1).unwrap();
                neg = neg.map_entries(&sw).unwrap();
            }
            let id = GradedMatrix::identity(BasisDescriptor::local(3, Framework::Osz), &pos.ctx);
            assert!(compose(&neg, &pos).unwrap().same_entries(&id), "{p:?} {g:?}");
            assert!(compose(&pos, &neg).unwrap().same_entries(&id), "{p:?} {g:?}");
        }
    }
}
