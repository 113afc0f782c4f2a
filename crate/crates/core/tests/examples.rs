use std::sync::Arc;

use profinite::lattice::{all_down_sets, FiniteLattice};
use profinite::limit::{
    find_atom_below, ideal_inf, ideal_sup, induced_limit_quotient, principal_decomposition, IdealSystem, IdealThread,
    InverseSystem, Thread,
};
use profinite::quotient::{induce, meet_preservation_criterion};
use profinite::ternary::quotient_isomorphism_criterion;
use profinite::universal::{build_universal_quotient, lift_through_quotient, triangle_commutes};
use profinite::{classify, FinitePoset, PosetMap, UniversalSequence};

fn seq() -> UniversalSequence {
    UniversalSequence::new(6).unwrap()
}

fn point_system(levels: usize) -> InverseSystem {
    let pt = Arc::new(FinitePoset::point());
    let steps = (1..levels).map(|_| PosetMap::identity(pt.clone())).collect();
    InverseSystem::new(vec![pt; levels], steps).unwrap()
}

#[test]
fn point_system_has_constant_family() {
    let seq = seq();
    let sys = point_system(3);
    let fam = build_universal_quotient(&seq, &sys).unwrap();
    fam.check(&seq, &sys).unwrap();
    assert_eq!(fam.indices[0], 1);
    for f in &fam.maps {
        assert!(f.assignment().iter().all(|&v| v == 0));
    }
}

#[test]
fn p_system_maps_onto_itself() {
    let seq = seq();
    let sys = InverseSystem::universal(&seq, 2).unwrap();
    let fam = build_universal_quotient(&seq, &sys).unwrap();
    fam.check(&seq, &sys).unwrap();
    assert!(fam.indices.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn lift_point_through_chain() {
    let seq = seq();
    let a = Arc::new(FinitePoset::point());
    let b = Arc::new(FinitePoset::chain(2).unwrap());
    let p1 = seq.level(1).unwrap();
    let t = PosetMap::constant(p1, a.clone(), 0).unwrap();
    let g = PosetMap::constant(b, a, 0).unwrap();
    let l = lift_through_quotient(&seq, &t, 1, &g).unwrap();
    assert!(classify(&l.g).is_quotient);
    assert!(triangle_commutes(&seq, &l, &g, &t, 1));
}

#[test]
fn lift_through_identity() {
    let seq = seq();
    let p1 = seq.level(1).unwrap();
    let target = Arc::new(FinitePoset::chain(2).unwrap());
    let t = PosetMap::new(p1, target.clone(), vec![0, 1, 0, 1]).unwrap();
    let g = PosetMap::identity(target);
    let l = lift_through_quotient(&seq, &t, 1, &g).unwrap();
    assert!(triangle_commutes(&seq, &l, &g, &t, 1));
}

#[test]
fn induced_quotient_on_threads() {
    let seq = seq();
    let target = InverseSystem::new(
        vec![Arc::new(FinitePoset::chain(2).unwrap()), Arc::new(FinitePoset::chain(3).unwrap())],
        vec![PosetMap::new(
            Arc::new(FinitePoset::chain(3).unwrap()),
            Arc::new(FinitePoset::chain(2).unwrap()),
            vec![0, 1, 1],
        )
        .unwrap()],
    )
    .unwrap();
    let fam = build_universal_quotient(&seq, &target).unwrap();
    fam.check(&seq, &target).unwrap();
    let depth = *fam.indices.iter().max().unwrap();
    let psys = IdealSystem::new(InverseSystem::universal(&seq, depth).unwrap());
    let tsys = IdealSystem::new(target.clone());

    let zero = IdealThread::zero(&psys, depth);
    assert!(induced_limit_quotient(&fam, &tsys, &zero).unwrap().is_zero());

    // the principal thread of 0,0,0,... lands on the principal thread of its images
    let origin = Thread::new(psys.base(), vec![0; depth]).unwrap();
    let q = induced_limit_quotient(&fam, &tsys, &IdealThread::principal(&psys, &origin)).unwrap();
    let images: Vec<usize> = fam.maps.iter().map(|f| f.apply(0)).collect();
    let expected = IdealThread::principal(&tsys, &Thread::new(&target, images).unwrap());
    assert_eq!(q, expected);

    let mut rng = profinite::random::rng(3);
    for _ in 0..50 {
        let a = profinite::random::ideal_thread(&mut rng, &psys, depth);
        let b = profinite::random::ideal_thread(&mut rng, &psys, depth);
        let qa = induced_limit_quotient(&fam, &tsys, &a).unwrap();
        let qb = induced_limit_quotient(&fam, &tsys, &b).unwrap();
        let qab = induced_limit_quotient(&fam, &tsys, &ideal_sup(&a, &b).unwrap()).unwrap();
        assert_eq!(qab, ideal_sup(&qa, &qb).unwrap());
        IdealThread::new(&tsys, qab.entries.clone()).unwrap();
    }
}

#[test]
fn thread_lattice_identities() {
    let seq = seq();
    let psys = IdealSystem::new(InverseSystem::universal(&seq, 2).unwrap());
    let zero = IdealThread::zero(&psys, 2);
    let top = IdealThread::top(&psys, 2);
    let mut rng = profinite::random::rng(5);
    for _ in 0..20 {
        let a = profinite::random::ideal_thread(&mut rng, &psys, 2);
        assert_eq!(ideal_sup(&a, &zero).unwrap(), a);
        assert_eq!(ideal_inf(&psys, &a, &a).unwrap(), a);
        assert_eq!(ideal_inf(&psys, &a, &zero).unwrap(), zero);
    }
    let atom = find_atom_below(&psys, &top).unwrap();
    assert_eq!(find_atom_below(&psys, &atom).unwrap(), atom);
    assert!(atom.as_principal(&psys).is_some());
    let parts = principal_decomposition(&psys, &atom).unwrap();
    assert_eq!(parts, vec![atom]);
}

#[test]
fn chain_to_point_preserves_meets() {
    let c2 = Arc::new(FinitePoset::chain(2).unwrap());
    let pt = Arc::new(FinitePoset::point());
    let p = PosetMap::constant(c2.clone(), pt, 0).unwrap();
    assert!(meet_preservation_criterion(&p).unwrap().is_none());
    let hat = induce(&p).unwrap();
    let ideals = all_down_sets(c2).unwrap();
    for a in ideals.ideals() {
        for b in ideals.ideals() {
            assert_eq!(hat.apply(&a.intersection(b)), hat.apply(a).intersection(&hat.apply(b)));
            assert_eq!(hat.apply(&a.union(b)), hat.apply(a).union(&hat.apply(b)));
        }
    }
}

#[test]
fn isomorphism_criterion_examples() {
    let l = FiniteLattice::of_ideals(Arc::new(FinitePoset::chain(2).unwrap())).unwrap();
    let id: Vec<usize> = (0..l.len()).collect();
    assert!(quotient_isomorphism_criterion(&l, &l, &id).unwrap().holds());

    // O(antichain 2) is the square; send an atom to the top element, which
    // is join-reducible
    let sq = FiniteLattice::of_ideals(Arc::new(FinitePoset::antichain(2).unwrap())).unwrap();
    let top = sq.top();
    let atoms = sq.atoms();
    let mut table: Vec<usize> = (0..sq.len()).collect();
    table[atoms[0]] = top;
    let r = quotient_isomorphism_criterion(&sq, &sq, &table).unwrap();
    assert!(!r.irreducibles_onto);
    assert!(!r.holds());
}
