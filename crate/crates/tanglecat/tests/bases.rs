//! State-space dimensions, change-of-basis inverses, and the Viro
//! standard/dual relationship.

use tanglecat::diagram::{CrossPattern, OrientSeq, Pattern, Sign};
use tanglecat::gradedring::VarMap;
use tanglecat::rtmaps::{rt_crossing_local, rt_duality_local, Extremum};
use tanglecat::statespace::{change_of_basis, change_of_basis_inverse, compose, invert_unit, local_to_global, BasisDescriptor, BasisKind, Framework, GradedMatrix, Side};
use tanglecat::viromaps::{specialize_to_q, viro_crossing_local, viro_duality_local, viro_native_global, ViroBasis};
use tanglecat::diagram::ElemEvent;

const PATTERNS: [CrossPattern; 4] = [CrossPattern::UU, CrossPattern::UD, CrossPattern::DU, CrossPattern::DD];

#[test]
fn every_state_space_has_dimension_two_to_the_n() {
    for n in 0..=6 {
        for o in OrientSeq::all(n) {
            for kind in [BasisKind::Native, BasisKind::Dual, BasisKind::Modified(Side::Right), BasisKind::Modified(Side::Left), BasisKind::Idempotent(Side::Right), BasisKind::Idempotent(Side::Left)] {
                for fw in [Framework::Rt, Framework::Viro, Framework::Osz] {
                    let d = BasisDescriptor::new(o, kind, fw);
                    assert_eq!(d.dim(), 1 << n);
                    assert_eq!(d.subsets().len(), 1 << n);
                }
            }
        }
    }
}

#[test]
fn change_of_basis_inverts_exactly() {
    for n in 0..=6 {
        for o in OrientSeq::all(n) {
            for side in [Side::Right, Side::Left] {
                for fw in [Framework::Rt, Framework::Viro] {
                    let b = change_of_basis(&o, side, fw);
                    let binv = change_of_basis_inverse(&o, side, fw);
                    let id_m = GradedMatrix::identity(b.domain, &b.ctx);
                    let id_n = GradedMatrix::identity(b.codomain, &b.ctx);
                    assert!(compose(&binv, &b).unwrap().same_entries(&id_m), "{o} {side:?} {fw:?}");
                    assert!(compose(&b, &binv).unwrap().same_entries(&id_n), "{o} {side:?} {fw:?}");
                    if n <= 4 {
                        assert!(invert_unit(&b).unwrap().same_entries(&binv), "{o} {side:?} {fw:?}");
                    }
                }
            }
        }
    }
}

/// Independent route to the standard basis: extend the local standard
/// Boltzmann matrix directly and compare with the dual matrix rescaled.
#[test]
fn viro_standard_from_local_tables() {
    for n in 2..=5 {
        for o in OrientSeq::all(n) {
            for i in 1..n {
                for sign in [Sign::Pos, Sign::Neg] {
                    let e = ElemEvent::Cross { i, sign, pattern: o.cross_pattern(i) };
                    let global = viro_native_global(e, &o, ViroBasis::Standard).unwrap();
                    let l = viro_crossing_local(o.cross_pattern(i), sign, ViroBasis::Standard);
                    let names = |s: &str| if s == "t1" { format!("t{i}") } else { format!("t{}", i + 1) };
                    let l = l.map_entries(&VarMap::rename(&l.ctx, &global.ctx, names, 1).unwrap()).unwrap();
                    let (_, cod) = tanglecat::rtmaps::apply_upward(e, &o).unwrap();
                    let d = BasisDescriptor::new(o, BasisKind::Native, Framework::Viro);
                    let c = BasisDescriptor::new(cod, BasisKind::Native, Framework::Viro);
                    let direct = local_to_global(&l, &[i, i + 1], &[i, i + 1], &|j| j, d, c).unwrap();
                    assert!(direct.same_entries(&global), "{e:?} on {o}: {:?}", direct.first_difference(&global));
                }
            }
        }
    }
}

#[test]
fn viro_dual_specializes_to_rt() {
    for p in PATTERNS {
        for s in [Sign::Pos, Sign::Neg] {
            let v = specialize_to_q(&viro_crossing_local(p, s, ViroBasis::Dual));
            assert!(v.same_entries(&rt_crossing_local(p, s)), "{p:?} {s:?}");
        }
    }
    for k in [Extremum::Min, Extremum::Max] {
        for p in [Pattern::Lr, Pattern::Rl] {
            let v = specialize_to_q(&viro_duality_local(k, p, ViroBasis::Dual));
            assert!(v.same_entries(&rt_duality_local(k, p)), "{k:?} {p:?}");
        }
    }
}
