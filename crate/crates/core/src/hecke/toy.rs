//! Small orders `T` inside `Z_p^n` with an ideal `J`, split into blocks
//! `T_i = T|block i`, and checks of the length inequality relating `T/J` to the
//! product of the `T_i/J_i`.
//!
//! Everything is modelled by `Z`-lattices in `Z^n` with componentwise product;
//! lengths over `Z_p` are `p`-adic valuations of lattice indices.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

use super::algebra::basis_rows;
use crate::arith::{big_mod_u64, val_big};
use crate::error::{Error, Result};
use crate::linalg::HnfBuilder;

const HILBERT_WINDOW: usize = 3;
const HILBERT_MAX: usize = 40;
const RANDOM_ATTEMPTS: usize = 1000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ToySubalgebra {
    pub p: u64,
    /// Block sizes; they sum to `n`.
    pub blocks: Vec<usize>,
    /// Algebra generators of `T` besides `1`.
    pub t_gens: Vec<Vec<i64>>,
    /// Ideal generators of `J`.
    pub j_gens: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ToyReport {
    pub p: u64,
    pub n: usize,
    pub s: usize,
    pub local: bool,
    /// `length(T/J)`.
    pub colength: u32,
    /// `length(T_i/J_i)` per block.
    pub block_colengths: Vec<u32>,
    /// Largest `dim J/mJ` over the maximal ideals `m` of `T`.
    pub minimal_generators: u32,
    pub principal: bool,
    pub blocks_principal: bool,
    /// `J * prod T_i` is contained in `prod J_i`.
    pub containment: bool,
    pub containment_equal: bool,
    pub multiplicity: u32,
    pub theorem_applies: bool,
    pub notes: Vec<String>,
    pub inequality: Option<bool>,
    pub equality_iff_principal: Option<bool>,
    pub product_containment: Option<bool>,
    pub multiplicity_identity: Option<bool>,
}

impl ToyReport {
    pub fn passed(&self) -> bool {
        [
            self.inequality,
            self.equality_iff_principal,
            self.product_containment,
            self.multiplicity_identity,
        ]
        .iter()
        .all(|c| c.unwrap_or(true))
    }
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn hadamard(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x * y).collect()
}

fn span(n: usize, vecs: &[Vec<BigInt>]) -> HnfBuilder {
    let mut b = HnfBuilder::new(n);
    for v in vecs {
        b.insert(v);
    }
    b
}

fn product(n: usize, a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> HnfBuilder {
    let mut out = HnfBuilder::new(n);
    for x in a {
        for y in b {
            out.insert(&hadamard(x, y));
        }
    }
    out
}

fn vdet(b: &HnfBuilder, p: u64) -> Result<u32> {
    let d = b
        .det()
        .ok_or_else(|| Error::Invariant("lattice is not of full rank".into()))?;
    Ok(val_big(&d, p).expect("nonzero determinant"))
}

/// A full-rank order with its ideal, as HNF bases in `Z^n`.
struct Order {
    n: usize,
    p: u64,
    t: Vec<Vec<BigInt>>,
    j: Vec<Vec<BigInt>>,
}

impl Order {
    /// Coordinate classes: `i ~ k` when every element of `T` has `x_i = x_k` mod p.
    fn classes(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        for i in 0..self.n {
            let same = |k: usize| {
                self.t
                    .iter()
                    .all(|b| big_mod_u64(&(&b[i] - &b[k]), self.p) == 0)
            };
            match out.iter_mut().find(|c| same(c[0])) {
                Some(c) => c.push(i),
                None => out.push(vec![i]),
            }
        }
        out
    }

    fn colength(&self, ideal: &HnfBuilder) -> Result<u32> {
        Ok(vdet(ideal, self.p)? - vdet(&span(self.n, &self.t), self.p)?)
    }

    /// Largest `dim J / m J` over maximal ideals `m`.
    fn minimal_generators(&self) -> Result<u32> {
        let pb = BigInt::from(self.p);
        let jv = vdet(&span(self.n, &self.j), self.p)?;
        let mut best = 0;
        for class in self.classes() {
            let i0 = class[0];
            let mut m: Vec<Vec<BigInt>> = self.t.iter().map(|b| b.iter().map(|x| x * &pb).collect()).collect();
            for b in &self.t {
                let c = BigInt::from(big_mod_u64(&b[i0], self.p));
                m.push(b.iter().map(|x| x - &c).collect());
            }
            let mj = product(self.n, &m, &self.j);
            best = best.max(vdet(&mj, self.p)? - jv);
        }
        Ok(best)
    }

    fn hilbert_multiplicity(&self) -> Result<u32> {
        let mut cur = self.t.clone();
        let mut prev = 0;
        let mut h = Vec::new();
        for _ in 0..HILBERT_MAX {
            let next = product(self.n, &cur, &self.j);
            let len = self.colength(&next)?;
            h.push(len - prev);
            prev = len;
            cur = basis_rows(&next);
            if h.len() >= HILBERT_WINDOW {
                let tail = &h[h.len() - HILBERT_WINDOW..];
                if tail.iter().all(|&x| x == tail[0]) {
                    return Ok(tail[0]);
                }
            }
        }
        Err(Error::Computation("Hilbert function did not stabilize".into()))
    }
}

impl ToySubalgebra {
    pub fn n(&self) -> usize {
        self.blocks.iter().sum()
    }

    /// The three worked examples in `Z_5^2` with blocks of size one.
    pub fn hand_examples() -> Vec<ToySubalgebra> {
        vec![
            ToySubalgebra {
                p: 5,
                blocks: vec![1, 1],
                t_gens: vec![vec![0, 5]],
                j_gens: vec![vec![5, 5], vec![0, 5]],
            },
            ToySubalgebra {
                p: 5,
                blocks: vec![1, 1],
                t_gens: vec![vec![0, 5]],
                j_gens: vec![vec![5, 5]],
            },
            ToySubalgebra {
                p: 5,
                blocks: vec![1, 1],
                t_gens: vec![vec![1, 0]],
                j_gens: vec![vec![5, 5]],
            },
        ]
    }

    /// A random local instance with `n <= 4`, at most 3 blocks and `p` in {5, 7}.
    pub fn random<R: Rng>(rng: &mut R) -> ToySubalgebra {
        for _ in 0..RANDOM_ATTEMPTS {
            let p = if rng.gen_bool(0.5) { 5 } else { 7 };
            let n = rng.gen_range(1..=4usize);
            let s = rng.gen_range(1..=n.min(3));
            let mut cuts: Vec<usize> = (1..n).collect();
            while cuts.len() > s - 1 {
                cuts.remove(rng.gen_range(0..cuts.len()));
            }
            let mut blocks = Vec::with_capacity(s);
            let mut last = 0;
            for &c in cuts.iter().chain(std::iter::once(&n)) {
                blocks.push(c - last);
                last = c;
            }
            let pi = p as i64;
            let t_gens: Vec<Vec<i64>> = (0..rng.gen_range(1..=2))
                .map(|_| {
                    let c = rng.gen_range(0..pi);
                    (0..n).map(|_| c + pi * rng.gen_range(-3..=3)).collect()
                })
                .collect();
            let Some(t) = closure(n, &t_gens) else { continue };
            let j_gens: Vec<Vec<i64>> = (0..rng.gen_range(1..=2))
                .map(|_| {
                    let mut x = vec![0i64; n];
                    for b in &t {
                        let c = rng.gen_range(-2..=2i64);
                        for (xi, bi) in x.iter_mut().zip(b) {
                            *xi += c * i64::try_from(bi).unwrap_or(0);
                        }
                    }
                    let shift = x[0].rem_euclid(pi);
                    x.iter().map(|v| v - shift).collect()
                })
                .collect();
            let cand = ToySubalgebra { p, blocks, t_gens, j_gens };
            if cand.order().is_ok() {
                return cand;
            }
        }
        unreachable!("random toy generation keeps failing")
    }

    fn order(&self) -> Result<Order> {
        let n = self.n();
        if self.t_gens.iter().chain(&self.j_gens).any(|v| v.len() != n) {
            return Err(Error::Computation("generator length does not match the block sizes".into()));
        }
        let t = closure(n, &self.t_gens)
            .ok_or_else(|| Error::Invariant("T is not of full rank".into()))?;
        let tb = span(n, &t);
        let gens: Vec<Vec<BigInt>> = self.j_gens.iter().map(|g| big(g)).collect();
        if gens.iter().any(|g| !tb.contains(g)) {
            return Err(Error::Computation("an ideal generator lies outside T".into()));
        }
        let j = product(n, &t, &gens);
        if !j.is_full_rank() {
            return Err(Error::Invariant("J does not have finite index".into()));
        }
        Ok(Order {
            n,
            p: self.p,
            t,
            j: basis_rows(&j),
        })
    }

    /// The order and ideal restricted to one block.
    fn block(&self, whole: &Order, i: usize) -> Order {
        let start: usize = self.blocks[..i].iter().sum();
        let len = self.blocks[i];
        let proj = |rows: &[Vec<BigInt>]| -> Vec<Vec<BigInt>> {
            basis_rows(&span(len, &rows.iter().map(|r| r[start..start + len].to_vec()).collect::<Vec<_>>()))
        };
        Order {
            n: len,
            p: self.p,
            t: proj(&whole.t),
            j: proj(&whole.j),
        }
    }

    fn embed(&self, i: usize, v: &[BigInt]) -> Vec<BigInt> {
        let start: usize = self.blocks[..i].iter().sum();
        let mut out = vec![BigInt::zero(); self.n()];
        out[start..start + v.len()].clone_from_slice(v);
        out
    }

    pub fn verify(&self) -> Result<ToyReport> {
        let o = self.order()?;
        let (n, s, p) = (o.n, self.blocks.len(), self.p);
        let colength = o.colength(&span(n, &o.j))?;
        let nu = o.minimal_generators()?;
        let local = o.classes().len() == 1;
        let blocks: Vec<Order> = (0..s).map(|i| self.block(&o, i)).collect();
        let block_colengths = blocks
            .iter()
            .map(|b| b.colength(&span(b.n, &b.j)))
            .collect::<Result<Vec<_>>>()?;
        let blocks_principal = blocks
            .iter()
            .map(|b| b.minimal_generators())
            .collect::<Result<Vec<_>>>()?
            .iter()
            .all(|&v| v == 1);

        let prod_t: Vec<Vec<BigInt>> = blocks
            .iter()
            .enumerate()
            .flat_map(|(i, b)| b.t.iter().map(move |r| (i, r)))
            .map(|(i, r)| self.embed(i, r))
            .collect();
        let prod_j: Vec<Vec<BigInt>> = blocks
            .iter()
            .enumerate()
            .flat_map(|(i, b)| b.j.iter().map(move |r| (i, r)))
            .map(|(i, r)| self.embed(i, r))
            .collect();
        let jt = product(n, &o.j, &prod_t);
        let pj = span(n, &prod_j);
        let containment = basis_rows(&jt).iter().all(|r| pj.contains(r));
        let containment_equal = containment && jt.det() == pj.det();
        let multiplicity = o.hilbert_multiplicity()?;

        let mut notes = Vec::new();
        if !local {
            notes.push("T is not local".to_string());
        }
        if p - 1 < s as u64 - 1 {
            notes.push(format!("residue field too small for {s} blocks"));
        }
        if !blocks_principal {
            notes.push("some J_i is not principal".to_string());
        }
        let theorem_applies = notes.is_empty();
        let total: u32 = block_colengths.iter().sum();
        let principal = nu == 1;
        Ok(ToyReport {
            p,
            n,
            s,
            local,
            colength,
            block_colengths,
            minimal_generators: nu,
            principal,
            blocks_principal,
            containment,
            containment_equal,
            multiplicity,
            theorem_applies,
            notes,
            inequality: theorem_applies.then_some(total >= colength),
            equality_iff_principal: theorem_applies.then_some((total == colength) == principal),
            product_containment: Some(containment && (!blocks_principal || containment_equal)),
            multiplicity_identity: blocks_principal.then_some(multiplicity == total),
        })
    }
}

/// HNF basis of the ring generated by `1` and `gens`, if of full rank.
fn closure(n: usize, gens: &[Vec<i64>]) -> Option<Vec<Vec<BigInt>>> {
    let mut b = HnfBuilder::new(n);
    b.insert(&vec![BigInt::one(); n]);
    for g in gens {
        b.insert(&big(g));
    }
    loop {
        let rows = basis_rows(&b);
        let mut grew = false;
        for i in 0..rows.len() {
            for j in i..rows.len() {
                grew |= b.insert(&hadamard(&rows[i], &rows[j]));
            }
        }
        if !grew {
            break;
        }
    }
    b.is_full_rank().then(|| basis_rows(&b))
}

/// Seeded batch of random instances.
pub fn random_instances(seed: u64, count: usize) -> Vec<ToySubalgebra> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| ToySubalgebra::random(&mut rng)).collect()
}
