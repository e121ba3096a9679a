use eisdepth::hecke::*;
use eisdepth::newform::{Engine, EngineConfig};
use eisdepth::Error;
use num_bigint::BigInt;
use num_traits::Zero;

fn engine() -> Engine {
    Engine::new(EngineConfig::default()).unwrap()
}

fn build(e: &mut Engine, n: u64) -> (HeckeLattice, EisensteinIdeal) {
    let t = HeckeLattice::build(e, n, None).unwrap();
    let j = EisensteinIdeal::new(&t).unwrap();
    (t, j)
}

fn reduce(v: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    v.iter().map(|x| ((x % m) + m) % m).collect()
}

#[test]
fn level_11_is_z() {
    let mut e = engine();
    let (t, j) = build(&mut e, 11);
    assert_eq!(t.rank(), 1);
    assert!(t.algebra().check_axioms());
    // T = Z, J = (t_2 - 3) = (-5).
    assert_eq!(j.index(), &BigInt::from(5));
    assert_eq!(j.val_index(5), 1);
    assert_eq!(j.val_index(3), 0);

    let local = LocalAlgebra::new(t.algebra(), &j.generator_vectors(), 5, 8).unwrap();
    assert_eq!(local.rank(), 1);
    assert_eq!(local.kappa(), 8);
    let m = BigInt::from(5u32.pow(8));
    let id = local.idempotent();
    assert_eq!(reduce(&t.algebra().mul(id, id), &m), reduce(id, &m));
    assert_eq!(local.colength_j(), 1);
    assert_eq!(local.minimal_generators(), 1);

    let inv = local_invariants(t.algebra(), &j.generator_vectors(), 5, 1).unwrap();
    assert_eq!((inv.local_rank, inv.minimal_generators, inv.multiplicity), (1, 1, 1));
}

#[test]
fn prime_levels_are_principal() {
    let mut e = engine();
    // num((N - 1)/12): 23 -> 11, 31 -> 5, 67 -> 11.
    for (n, p, index) in [(23u64, 11u64, 11u64), (31, 5, 5), (67, 11, 11)] {
        let (t, j) = build(&mut e, n);
        assert_eq!(j.index(), &BigInt::from(index), "N = {n}");
        let d = index_data(&t, &j, p).unwrap();
        assert_eq!(d.val_index, 1);
        let loc = d.local.unwrap();
        assert_eq!((loc.minimal_generators, loc.multiplicity), (1, 1), "N = {n}");
        assert_eq!(principality_verdict(1, d.val_index).unwrap(), Verdict::LocallyPrincipal);
    }
}

#[test]
fn level_66() {
    let mut e = engine();
    let (t, j) = build(&mut e, 66);
    // One system each from 11 and 33 and three new ones.
    assert_eq!(t.rank(), 5);
    assert_eq!(t.components().len(), 5);
    assert!(t.algebra().check_axioms());
    assert_eq!(j.index(), &BigInt::from(120));
    let alg = t.algebra();
    let (a, b) = (t.hecke_element(5).unwrap(), t.hecke_element(7).unwrap());
    assert_eq!(alg.mul(a, b), alg.mul(b, a));
    assert!(t.hecke_element(11).is_none());

    let d = index_data(&t, &j, 5).unwrap();
    assert_eq!(d.val_index, 1);
    let loc = d.local.unwrap();
    assert_eq!((loc.minimal_generators, loc.multiplicity), (2, 2));

    // Same answers one precision step up.
    let gens = j.generator_vectors();
    let a = LocalAlgebra::new(alg, &gens, 5, loc.kappa).unwrap();
    let b = LocalAlgebra::new(alg, &gens, 5, loc.kappa + 2).unwrap();
    assert_eq!(a.rank(), b.rank());
    assert_eq!(a.colength_j(), b.colength_j());
    assert_eq!(a.minimal_generators(), b.minimal_generators());
    let (ha, hb) = (a.hilbert_function(1), b.hilbert_function(1));
    assert_eq!(ha[..], hb[..ha.len()]);

    assert!(matches!(local_invariants(alg, &gens, 7, 0), Err(Error::Computation(_))));
    assert!(matches!(local_invariants(alg, &gens, 5, 2), Err(Error::Invariant(_))));
}

#[test]
fn level_341_multiplicity_three() {
    let mut e = engine();
    let (t, j) = build(&mut e, 341);
    assert_eq!(j.index(), &BigInt::from(1200));
    let d = index_data(&t, &j, 5).unwrap();
    assert_eq!(d.val_index, 2);
    let loc = d.local.unwrap();
    assert_eq!(loc.multiplicity, 3);
    assert_eq!(loc.minimal_generators, 2);
    assert_eq!(principality_verdict(3, 2).unwrap(), Verdict::NotLocallyPrincipal);
}

#[test]
fn ideal_index_annihilates_one() {
    let mut e = engine();
    let (t, j) = build(&mut e, 55);
    let one = t.algebra().one().to_vec();
    let mut closure = t.algebra().span(j.closure());
    let n1: Vec<BigInt> = one.iter().map(|x| x * j.index()).collect();
    assert!(!closure.insert(&n1));
    assert!(j.index() > &BigInt::zero());
    assert_eq!(eisenstein_index(&j), j.index());
}

#[test]
fn doubling_the_generator_bound_changes_nothing() {
    let mut e = engine();
    for n in [11u64, 35, 55, 57, 66, 91, 105] {
        let t = HeckeLattice::build(&mut e, n, None).unwrap();
        let wide = HeckeLattice::build(&mut e, n, Some(2 * t.bound())).unwrap();
        assert_eq!(t.basis(), wide.basis(), "N = {n}");
        let (j, jw) = (EisensteinIdeal::new(&t).unwrap(), EisensteinIdeal::new(&wide).unwrap());
        assert_eq!(j.index(), jw.index(), "N = {n}");
    }
}

#[test]
fn verdicts() {
    assert_eq!(principality_verdict(1, 1).unwrap(), Verdict::LocallyPrincipal);
    assert_eq!(principality_verdict(4, 1).unwrap(), Verdict::NotLocallyPrincipal);
    assert!(matches!(principality_verdict(1, 2), Err(Error::Invariant(_))));
}

#[test]
fn worked_toy_examples() {
    let ex = ToySubalgebra::hand_examples();
    assert_eq!(ex.len(), 3);

    // T = Z5(1,1) + Z5(0,5), J = ((5,5), (0,5)): closure (5,5),(0,5) has index 5 in T.
    let r = ex[0].verify().unwrap();
    assert_eq!(r.colength, 1);
    assert_eq!(r.block_colengths, [1, 1]);
    assert_eq!(r.minimal_generators, 2);
    assert!(!r.principal);
    assert_eq!(r.inequality, Some(true));
    assert!(r.passed());

    // Same T, J = ((5,5)): closure (5,5),(0,25).
    let r = ex[1].verify().unwrap();
    assert_eq!(r.colength, 2);
    assert_eq!(r.block_colengths.iter().sum::<u32>(), 2);
    assert_eq!(r.minimal_generators, 1);
    assert!(r.principal);
    assert!(r.passed());

    // T = Z5^2, J = 5T.
    let r = ex[2].verify().unwrap();
    assert!(!r.local);
    assert_eq!(r.colength, 2);
    assert_eq!(r.multiplicity, 2);
    assert!(r.containment_equal);
    assert!(r.passed());
}

#[test]
fn random_toy_instances() {
    let start = std::time::Instant::now();
    let inst = toy::random_instances(11, 100);
    assert_eq!(inst, toy::random_instances(11, 100));
    assert_ne!(inst, toy::random_instances(12, 100));
    for (k, i) in inst.iter().enumerate() {
        assert!(i.n() <= 4 && i.blocks.len() <= 3 && [5, 7].contains(&i.p), "instance {k}");
        let r = i.verify().unwrap();
        assert!(r.passed(), "instance {k}: {r:?}");
        assert!(r.block_colengths.iter().sum::<u32>() >= r.colength || !r.theorem_applies);
    }
    assert!(start.elapsed().as_secs() < 10);
}
