//! Orbits at every level dividing `N` and their eigenvalue tables, computed in
//! one merged Heilbronn pass per prime and persisted in the eigenvalue cache.

use std::collections::BTreeMap;
use std::path::PathBuf;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::cache::{EigenCache, StoredChunk, StoredLevel, StoredOrbit};
use super::decompose::{decompose_new, LowerOrbit};
use super::orbit::NewformOrbit;
use crate::arith::{divisors, primes_up_to};
use crate::error::{Error, Result};
use crate::modsym::heilbronn::for_each_cremona;
use crate::modsym::{ModularSymbols, P1List};
use crate::numfield::FieldElement;

/// Bound to which eigenvalues are computed when a level is first seen.
pub const DEFAULT_CACHED_BOUND: u64 = 100;
pub const DEFAULT_SEED: u64 = 0x5eed_2024;
const SPOT_CHECKS: usize = 3;

#[derive(Clone, Debug)]
pub struct EngineConfig {
    pub cache_dir: Option<PathBuf>,
    pub seed: u64,
    pub threads: Option<usize>,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            cache_dir: None,
            seed: DEFAULT_SEED,
            threads: None,
        }
    }
}

#[derive(Debug)]
pub struct LevelData {
    space: ModularSymbols,
    orbits: Vec<NewformOrbit>,
    primes: Vec<u64>,
    values: Vec<Vec<FieldElement>>,
    bound: u64,
}

impl LevelData {
    pub fn level(&self) -> u64 {
        self.space.level()
    }

    pub fn space(&self) -> &ModularSymbols {
        &self.space
    }

    pub fn orbits(&self) -> &[NewformOrbit] {
        &self.orbits
    }

    /// Eigenvalues are known for all primes `l <= bound` not dividing the level.
    pub fn bound(&self) -> u64 {
        if self.orbits.is_empty() {
            u64::MAX
        } else {
            self.bound
        }
    }

    /// Primes with stored eigenvalues, ascending.
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// `a_l` of every orbit, if stored.
    pub fn eigenvalues(&self, l: u64) -> Option<&[FieldElement]> {
        let k = self.primes.binary_search(&l).ok()?;
        Some(&self.values[k])
    }

    pub fn eigenvalue(&self, orbit: usize, l: u64) -> Option<&FieldElement> {
        self.eigenvalues(l).map(|v| &v[orbit])
    }

    fn stored(&self) -> StoredLevel {
        StoredLevel {
            level: self.level(),
            orbits: self
                .orbits
                .iter()
                .map(|o| StoredOrbit {
                    index: o.index(),
                    theta_prime: o.theta_prime(),
                    poly: o.poly().clone(),
                    dual: o.dual_vectors().to_vec(),
                })
                .collect(),
            chunks: Vec::new(),
        }
    }
}

pub struct Engine {
    config: EngineConfig,
    cache: Option<EigenCache>,
    levels: BTreeMap<u64, LevelData>,
    pool: rayon::ThreadPool,
    warnings: Vec<String>,
}

/// `a mod m` for `a < 2^32` by multiplication (Lemire).
#[derive(Clone, Copy)]
struct FastMod {
    m: u64,
    c: u64,
}

impl FastMod {
    fn new(m: u64) -> Self {
        FastMod {
            m,
            c: (u64::MAX / m).wrapping_add(1),
        }
    }

    #[inline]
    fn reduce(self, a: u64) -> u64 {
        let low = self.c.wrapping_mul(a);
        ((low as u128 * self.m as u128) >> 64) as u64
    }
}

struct Job<'a> {
    level: u64,
    p1: &'a P1List,
    fm: FastMod,
    symbols: Vec<(i64, i64)>,
    orbit_symbol: Vec<usize>,
    orbits: &'a [NewformOrbit],
    from: u64,
}

impl Engine {
    pub fn new(config: EngineConfig) -> Result<Self> {
        let cache = config.cache_dir.as_ref().map(EigenCache::new).transpose()?;
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(t) = config.threads {
            builder = builder.num_threads(t);
        }
        let pool = builder
            .build()
            .map_err(|e| Error::Computation(format!("thread pool: {e}")))?;
        Ok(Engine {
            config,
            cache,
            levels: BTreeMap::new(),
            pool,
            warnings: Vec::new(),
        })
    }

    pub fn cache(&self) -> Option<&EigenCache> {
        self.cache.as_ref()
    }

    /// Warnings raised while reading the cache (corrupt files are recomputed).
    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn level(&mut self, m: u64) -> Result<&LevelData> {
        self.ensure_level(m)?;
        Ok(&self.levels[&m])
    }

    pub fn level_data(&self, m: u64) -> Option<&LevelData> {
        self.levels.get(&m)
    }

    fn warn(&mut self, msg: String) {
        log::warn!("{msg}");
        self.warnings.push(msg);
    }

    fn ensure_level(&mut self, m: u64) -> Result<()> {
        if self.levels.contains_key(&m) {
            return Ok(());
        }
        let divs = divisors(m);
        for &d in divs.iter().filter(|&&d| d < m) {
            self.ensure_level(d)?;
        }
        let space = ModularSymbols::new(m)?;
        if space.cuspidal_dim() == 0 {
            self.levels.insert(
                m,
                LevelData {
                    space,
                    orbits: Vec::new(),
                    primes: Vec::new(),
                    values: Vec::new(),
                    bound: 0,
                },
            );
            return Ok(());
        }
        if let Some(cache) = self.cache.clone() {
            match cache.load(m).and_then(|s| match s {
                Some(stored) => restore(&space, stored).map(Some),
                None => Ok(None),
            }) {
                Ok(Some(data)) => {
                    self.levels.insert(m, data);
                    return Ok(());
                }
                Ok(None) => {}
                Err(Error::Cache(msg)) => {
                    self.warn(format!("discarding cache for level {m}: {msg}"));
                    cache.remove(m)?;
                }
                Err(e) => return Err(e),
            }
        }
        let orbits = {
            let lower: Vec<LowerOrbit<'_>> = divs
                .iter()
                .filter(|&&d| d < m)
                .flat_map(|d| {
                    let ld = &self.levels[d];
                    ld.orbits.iter().map(move |o| LowerOrbit {
                        orbit: o,
                        space: &ld.space,
                    })
                })
                .collect();
            let mut rng = ChaCha8Rng::seed_from_u64(self.config.seed ^ m.wrapping_mul(0x9e37_79b9_7f4a_7c15));
            decompose_new(&space, &lower, &mut rng)?
        };
        let data = LevelData {
            space,
            orbits,
            primes: Vec::new(),
            values: Vec::new(),
            bound: 0,
        };
        if let Some(cache) = &self.cache {
            cache.save(&data.stored())?;
        }
        self.levels.insert(m, data);
        if !self.levels[&m].orbits.is_empty() {
            self.extend(&[m], DEFAULT_CACHED_BOUND)?;
        }
        Ok(())
    }

    /// Makes `a_l` available for every orbit at every level dividing `n` and
    /// every prime `l <= bound` not dividing that level.
    pub fn ensure_bound(&mut self, n: u64, bound: u64) -> Result<()> {
        self.ensure_level(n)?;
        let todo: Vec<u64> = divisors(n)
            .into_iter()
            .filter(|m| self.levels[m].bound() < bound)
            .collect();
        if !todo.is_empty() {
            self.extend(&todo, bound)?;
        }
        Ok(())
    }

    /// Orbits at all levels dividing `n`, by level then orbit index.
    pub fn orbits_dividing(&mut self, n: u64) -> Result<Vec<(u64, usize)>> {
        self.ensure_level(n)?;
        Ok(divisors(n)
            .into_iter()
            .flat_map(|m| (0..self.levels[&m].orbits.len()).map(move |i| (m, i)))
            .collect())
    }

    fn extend(&mut self, levels: &[u64], bound: u64) -> Result<()> {
        let jobs: Vec<Job<'_>> = levels
            .iter()
            .map(|m| {
                let ld = &self.levels[m];
                let mut symbols = Vec::new();
                let mut orbit_symbol = Vec::new();
                for o in &ld.orbits {
                    let (c, d) = ld.space.presentation().p1().rep(o.pairing_symbol(&ld.space));
                    let s = (c as i64, d as i64);
                    let k = symbols.iter().position(|&t| t == s).unwrap_or_else(|| {
                        symbols.push(s);
                        symbols.len() - 1
                    });
                    orbit_symbol.push(k);
                }
                Job {
                    level: *m,
                    p1: ld.space.presentation().p1(),
                    fm: FastMod::new(*m),
                    symbols,
                    orbit_symbol,
                    orbits: &ld.orbits,
                    from: ld.bound,
                }
            })
            .collect();
        let start = jobs.iter().map(|j| j.from).min().unwrap_or(bound);
        let primes: Vec<u64> = primes_up_to(bound).into_iter().filter(|&l| l > start).collect();
        let results: Vec<(u64, Vec<Option<Vec<FieldElement>>>)> = self.pool.install(|| {
            primes
                .par_iter()
                .map(|&l| (l, eigenvalues_at(&jobs, l)))
                .collect()
        });
        drop(jobs);
        for (ji, &m) in levels.iter().enumerate() {
            let ld = self.levels.get_mut(&m).expect("level present");
            let lo = ld.bound;
            let mut chunk = StoredChunk {
                lo,
                hi: bound,
                values: Vec::new(),
            };
            for (l, per_job) in &results {
                if let Some(vals) = &per_job[ji] {
                    ld.primes.push(*l);
                    ld.values.push(vals.clone());
                    chunk.values.push((*l, vals.clone()));
                }
            }
            ld.bound = bound;
            if let Some(cache) = &self.cache {
                cache.append(m, &chunk)?;
            }
        }
        Ok(())
    }
}

/// `a_l` for every orbit of every job with `from < l` and `l` not dividing the level.
fn eigenvalues_at(jobs: &[Job<'_>], l: u64) -> Vec<Option<Vec<FieldElement>>> {
    let active: Vec<usize> = (0..jobs.len())
        .filter(|&j| jobs[j].from < l && !jobs[j].level.is_multiple_of(l))
        .collect();
    let mut counts: Vec<Vec<Vec<u32>>> = active
        .iter()
        .map(|&j| vec![vec![0u32; jobs[j].p1.len()]; jobs[j].symbols.len()])
        .collect();
    let li = l as i64;
    let fits = active
        .iter()
        .all(|&j| 4 * (jobs[j].level as i64) * li < (1i64 << 32));
    for_each_cremona(l, |x1, x2, y1, y2| {
        for (slot, &j) in counts.iter_mut().zip(&active) {
            let job = &jobs[j];
            let m = job.level as i64;
            for (cnt, &(u, v)) in slot.iter_mut().zip(&job.symbols) {
                let a = u * x1 + v * y1;
                let b = u * x2 + v * y2;
                let (a, b) = if fits {
                    let off = 2 * m * li;
                    (job.fm.reduce((a + off) as u64), job.fm.reduce((b + off) as u64))
                } else {
                    (a.rem_euclid(m) as u64, b.rem_euclid(m) as u64)
                };
                let k = job.p1.index_reduced(a, b);
                if k != u32::MAX {
                    cnt[k as usize] += 1;
                }
            }
        }
    });
    let mut out: Vec<Option<Vec<FieldElement>>> = vec![None; jobs.len()];
    for (slot, &j) in counts.iter().zip(&active) {
        let job = &jobs[j];
        out[j] = Some(
            job.orbits
                .iter()
                .zip(&job.orbit_symbol)
                .map(|(o, &s)| o.eigenvalue_from_counts(&slot[s]))
                .collect(),
        );
    }
    out
}

fn restore(space: &ModularSymbols, stored: StoredLevel) -> Result<LevelData> {
    let m = space.level();
    let orbits = stored
        .orbits
        .iter()
        .map(|o| NewformOrbit::from_parts(space, o.index, o.poly.clone(), o.theta_prime, o.dual.clone()))
        .collect::<Result<Vec<_>>>()?;
    let mut primes = Vec::new();
    let mut values = Vec::new();
    for c in &stored.chunks {
        for (l, v) in &c.values {
            primes.push(*l);
            values.push(v.clone());
        }
    }
    let expected: Vec<u64> = primes_up_to(stored.bound())
        .into_iter()
        .filter(|l| !m.is_multiple_of(*l))
        .collect();
    if !orbits.is_empty() && primes != expected {
        return Err(Error::Cache(format!("level {m}: stored primes are incomplete")));
    }
    for (l, vals) in primes.iter().zip(&values).take(SPOT_CHECKS) {
        for (o, v) in orbits.iter().zip(vals) {
            if &o.eigenvalue(space, *l)? != v {
                return Err(Error::Cache(format!("level {m}: stored a_{l} disagrees with recomputation")));
            }
        }
    }
    Ok(LevelData {
        space: space.clone(),
        orbits,
        primes,
        values,
        bound: stored.bound(),
    })
}
