mod common;

use std::fs;

use common::{ap_curve, X0_11};

use eisdepth::arith::primes_up_to;
use eisdepth::linalg::UniPoly;
use eisdepth::newform::cache::{StoredChunk, StoredLevel};
use eisdepth::newform::{EigenCache, Engine, EngineConfig};
use eisdepth::Error;
use num_bigint::BigInt;

fn engine(seed: u64) -> Engine {
    Engine::new(EngineConfig {
        cache_dir: None,
        seed,
        threads: Some(2),
    })
    .unwrap()
}

fn cached_engine(dir: &std::path::Path) -> Engine {
    Engine::new(EngineConfig {
        cache_dir: Some(dir.to_path_buf()),
        seed: 1,
        threads: Some(2),
    })
    .unwrap()
}

fn rational(e: &mut Engine, m: u64, orbit: usize, l: u64) -> i64 {
    let (n, d) = e.level(m).unwrap().eigenvalue(orbit, l).unwrap().as_rational().unwrap();
    assert_eq!(d, BigInt::from(1));
    n.try_into().unwrap()
}

#[test]
fn level_11_eigenvalues_are_point_counts() {
    let mut e = engine(3);
    let ld = e.level(11).unwrap();
    assert_eq!(ld.orbits().len(), 1);
    assert_eq!(ld.orbits()[0].degree(), 1);
    for l in primes_up_to(97).into_iter().filter(|&l| l != 11) {
        assert_eq!(rational(&mut e, 11, 0, l), ap_curve(X0_11, l), "l = {l}");
    }
}

#[test]
fn level_37_has_both_curves() {
    let mut e = engine(3);
    assert_eq!(e.level(37).unwrap().orbits().len(), 2);
    let mut got: Vec<Vec<i64>> = (0..2)
        .map(|o| [2u64, 3, 5, 7, 11].iter().map(|&l| rational(&mut e, 37, o, l)).collect())
        .collect();
    got.sort();
    let mut want: Vec<Vec<i64>> = [[0, 0, 1, -1, 0], [0, 1, 1, -23, -50]]
        .iter()
        .map(|c| [2u64, 3, 5, 7, 11].iter().map(|&l| ap_curve(*c, l)).collect())
        .collect();
    want.sort();
    assert_eq!(got, want);
}

#[test]
fn level_23_golden_ratio_orbit() {
    let mut e = engine(3);
    let ld = e.level(23).unwrap();
    assert_eq!(ld.orbits().len(), 1);
    let o = &ld.orbits()[0];
    assert_eq!(o.degree(), 2);
    let a2 = ld.eigenvalue(0, 2).unwrap();
    let f = o.field().charpoly_of(a2).unwrap();
    assert_eq!(f, UniPoly::from_i64(&[-1, 1, 1]));
    // a_2 = (-1 + sqrt 5)/2 has trace -1.
    assert_eq!(o.trace(a2).unwrap(), BigInt::from(-1));
}

#[test]
fn level_66_orbits() {
    let mut e = engine(3);
    let ld = e.level(66).unwrap();
    assert_eq!(ld.orbits().len(), 3);
    assert!(ld.orbits().iter().all(|o| o.degree() == 1));
    let orbits: Vec<(u64, usize)> = e.orbits_dividing(66).unwrap();
    let per_level = |m: u64| orbits.iter().filter(|(l, _)| *l == m).count();
    assert_eq!((per_level(11), per_level(22), per_level(33), per_level(66)), (1, 0, 1, 3));
}

#[test]
fn eigenvectors_verify() {
    let mut e = engine(3);
    e.ensure_bound(66, 30).unwrap();
    let ld = e.level(66).unwrap();
    for (k, o) in ld.orbits().iter().enumerate() {
        for l in [5u64, 7, 13, 29] {
            let a = ld.eigenvalue(k, l).unwrap();
            assert!(o.verify_eigenvector(ld.space(), l, a).unwrap(), "orbit {k}, l = {l}");
            assert_eq!(&o.eigenvalue(ld.space(), l).unwrap(), a);
        }
    }
}

#[test]
fn seed_does_not_change_results() {
    let table = |seed| {
        let mut e = engine(seed);
        e.ensure_bound(91, 50).unwrap();
        let ld = e.level(91).unwrap();
        let polys: Vec<UniPoly> = ld.orbits().iter().map(|o| o.poly().clone()).collect();
        let vals: Vec<String> = ld
            .primes()
            .iter()
            .flat_map(|&l| ld.eigenvalues(l).unwrap().iter().map(|a| a.to_string_coeffs()))
            .collect();
        (polys, vals)
    };
    let a = table(1);
    assert_eq!(a, table(1));
    let b = table(0xdead_beef);
    // Orbits and their order are canonical; the defining polynomials may differ
    // but the degrees and traces of a_l must agree.
    assert_eq!(a.0.len(), b.0.len());
    let degs = |p: &[UniPoly]| p.iter().map(|f| f.degree()).collect::<Vec<_>>();
    assert_eq!(degs(&a.0), degs(&b.0));
    let tr = |seed| {
        let mut e = engine(seed);
        e.ensure_bound(91, 50).unwrap();
        let ld = e.level(91).unwrap();
        ld.orbits()
            .iter()
            .enumerate()
            .map(|(k, o)| o.trace(ld.eigenvalue(k, 47).unwrap()).unwrap())
            .collect::<Vec<_>>()
    };
    assert_eq!(tr(1), tr(0xdead_beef));
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cold = {
        let mut e = cached_engine(dir.path());
        e.ensure_bound(66, 40).unwrap();
        (0..3).map(|k| rational(&mut e, 66, k, 37)).collect::<Vec<_>>()
    };
    let cache = EigenCache::new(dir.path()).unwrap();
    assert_eq!(cache.levels().unwrap(), vec![11, 22, 33, 66]);
    let stored = cache.load(66).unwrap().unwrap();
    assert_eq!(stored.orbits.len(), 3);
    assert!(stored.bound() >= 40);
    assert!(cache.load(22).unwrap().is_some());

    let mut e = cached_engine(dir.path());
    let warm: Vec<i64> = (0..3).map(|k| rational(&mut e, 66, k, 37)).collect();
    assert_eq!(cold, warm);
    assert!(e.warnings().is_empty());
}

#[test]
fn extending_appends_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let path = {
        let mut e = cached_engine(dir.path());
        e.level(11).unwrap();
        e.cache().unwrap().path(11)
    };
    let before = fs::read(&path).unwrap();
    let mut e = cached_engine(dir.path());
    e.ensure_bound(11, 400).unwrap();
    let after = fs::read(&path).unwrap();
    assert!(after.len() > before.len());
    assert_eq!(&after[..before.len()], &before[..]);
    assert!(e.level(11).unwrap().bound() >= 400);
    assert_eq!(rational(&mut e, 11, 0, 389), ap_curve(X0_11, 389));
}

#[test]
fn corrupt_cache_is_detected_and_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let path = {
        let mut e = cached_engine(dir.path());
        e.level(11).unwrap();
        e.cache().unwrap().path(11)
    };
    let good = fs::read_to_string(&path).unwrap();
    let cache = EigenCache::new(dir.path()).unwrap();

    fs::write(&path, &good[..good.len() - 10]).unwrap();
    assert!(matches!(cache.load(11), Err(Error::Cache(_))));

    let tampered = good.replacen("a 2 -2", "a 2 -3", 1);
    assert_ne!(tampered, good);
    fs::write(&path, &tampered).unwrap();
    assert!(matches!(cache.load(11), Err(Error::Cache(_))));

    let mut e = cached_engine(dir.path());
    assert_eq!(rational(&mut e, 11, 0, 2), -2);
    assert_eq!(e.warnings().len(), 1);
    assert_eq!(fs::read_to_string(&path).unwrap(), good);
}

#[test]
fn save_then_load_is_identity() {
    let dir = tempfile::tempdir().unwrap();
    let mut e = cached_engine(dir.path());
    e.ensure_bound(37, 20).unwrap();
    let cache = EigenCache::new(dir.path()).unwrap();
    let stored = cache.load(37).unwrap().unwrap();
    let copy = StoredLevel {
        level: 37,
        orbits: stored.orbits.clone(),
        chunks: stored.chunks.clone(),
    };
    let other = tempfile::tempdir().unwrap();
    let c2 = EigenCache::new(other.path()).unwrap();
    c2.save(&copy).unwrap();
    assert_eq!(c2.load(37).unwrap().unwrap(), stored);
    assert_eq!(fs::read(c2.path(37)).unwrap(), fs::read(cache.path(37)).unwrap());

    let gap = StoredChunk {
        lo: stored.bound() + 10,
        hi: stored.bound() + 20,
        values: Vec::new(),
    };
    c2.append(37, &gap).unwrap();
    assert!(matches!(c2.load(37), Err(Error::Cache(_))));
    assert_eq!(c2.clear().unwrap(), 1);
    assert!(c2.load(37).unwrap().is_none());
}
