//! Primes above p in a p-maximal order, via idempotents of `O/pO`, and
//! lambda-adic valuations through an anti-uniformizer.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{inv_mod, mul_mod, val_big};
use crate::error::{Error, Result};
use crate::linalg::hnf::HnfBuilder;
use crate::linalg::modp::{self, sub_m, ModMatrix};
use crate::linalg::IntMatrix;

use super::field::FieldElement;
use super::order::{POrderData, ResidueAlgebra};

/// A prime `lambda` above `p`.
#[derive(Clone, Debug)]
pub struct PrimeIdealData {
    pub p: u64,
    /// Ramification index `v_lambda(p)`.
    pub e: u32,
    /// Residue degree; `#(O/lambda) = p^f`.
    pub f: u32,
    /// `alpha` with `lambda = pO + alpha O`.
    pub alpha: FieldElement,
    /// `beta` with `v_lambda(beta) = -1` and `v_mu(beta) >= 0` for the other primes.
    pub beta: FieldElement,
    order: Arc<POrderData>,
    // beta * p as an element of O, and its multiplication matrix
    beta_mult: IntMatrix,
    // HNF of lambda in order coordinates
    lattice: IntMatrix,
}

/// `v_lambda(x)`; `None` stands for `+infinity` (x = 0).
pub type Valuation = Option<i64>;

impl PrimeIdealData {
    pub fn order(&self) -> &POrderData {
        &self.order
    }

    /// `#(O/lambda) = p^f`.
    pub fn residue_field_size(&self) -> u64 {
        self.p.pow(self.f)
    }

    /// HNF basis of lambda in order coordinates.
    pub fn lattice(&self) -> &IntMatrix {
        &self.lattice
    }

    pub fn valuation(&self, x: &FieldElement) -> Valuation {
        if x.is_zero() {
            return None;
        }
        let (z, den) = self.order.to_coords(x);
        let s = val_big(&den, self.p).unwrap_or(0) as i64;
        Some(self.valuation_integral(z, Some(self.e)) - s * self.e as i64)
    }

    /// Valuation of a nonzero element of `O` given in order coordinates.
    fn valuation_integral(&self, mut z: Vec<BigInt>, e: Option<u32>) -> i64 {
        let pb = BigInt::from(self.p);
        let mut v = 0i64;
        loop {
            if let Some(e) = e {
                if z.iter().all(|x| x.is_multiple_of(&pb)) {
                    for x in z.iter_mut() {
                        *x /= &pb;
                    }
                    v += e as i64;
                    continue;
                }
            }
            let w = self.beta_mult.vec_mul(&z);
            if w.iter().all(|x| x.is_multiple_of(&pb)) {
                z = w.into_iter().map(|x| x / &pb).collect();
                v += 1;
            } else {
                return v;
            }
        }
    }
}

fn to_big(v: &[u64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Splits `1` into primitive orthogonal idempotents of `O/pO`.
fn primitive_idempotents(alg: &ResidueAlgebra, rng: &mut ChaCha8Rng) -> Vec<Vec<u64>> {
    let p = alg.p;
    let d = alg.d;
    let mut fm = alg.frobenius();
    for i in 0..d {
        let v = sub_m(fm.get(i, i), 1, p);
        fm.set(i, i, v);
    }
    let fixed = fm.left_kernel();
    let s = fixed.len();
    let mut done: Vec<Vec<u64>> = Vec::new();
    let mut todo: Vec<Vec<u64>> = vec![alg.one.clone()];
    while let Some(e) = todo.pop() {
        // e * B, the Frobenius-fixed part of the component cut out by e
        let comp: Vec<Vec<u64>> = fixed.iter().map(|b| alg.mul(&e, b)).collect();
        let dim = ModMatrix::from_rows(&comp, d, p).rank();
        if dim <= 1 {
            done.push(e);
            continue;
        }
        loop {
            let mut x = vec![0u64; d];
            for b in &comp {
                let c = rng.gen_range(0..p);
                for (xi, &bi) in x.iter_mut().zip(b) {
                    *xi = (*xi + mul_mod(c, bi, p)) % p;
                }
            }
            let mp = min_poly(alg, &e, &x);
            let roots: Vec<u64> = (0..p).filter(|&r| modp::peval(&mp, r, p) == 0).collect();
            if roots.len() < 2 {
                continue;
            }
            for &c in &roots {
                let mut idem = e.clone();
                for &c2 in roots.iter().filter(|&&c2| c2 != c) {
                    // (x - c2 e) / (c - c2)
                    let factor: Vec<u64> = x
                        .iter()
                        .zip(&e)
                        .map(|(&xi, &ei)| sub_m(xi, mul_mod(c2, ei, p), p))
                        .collect();
                    let inv = inv_mod(sub_m(c, c2, p), p);
                    idem = alg.mul(&idem, &factor);
                    idem = idem.iter().map(|&v| mul_mod(v, inv, p)).collect();
                }
                todo.push(idem);
            }
            break;
        }
    }
    debug_assert_eq!(done.len(), s);
    done
}

/// Minimal polynomial of `x` inside the unital algebra `e A`.
fn min_poly(alg: &ResidueAlgebra, e: &[u64], x: &[u64]) -> Vec<u64> {
    let p = alg.p;
    let d = alg.d;
    let mut powers: Vec<Vec<u64>> = vec![e.to_vec()];
    loop {
        let k = powers.len();
        let next = alg.mul(powers.last().unwrap(), x);
        // Solve next = sum c_i powers[i]
        let mut rows = powers.clone();
        rows.push(next.clone());
        let m = ModMatrix::from_rows(&rows, d, p);
        let kern = m.left_kernel();
        if let Some(v) = kern.into_iter().find(|v| v[k] != 0) {
            let inv = inv_mod(v[k], p);
            return v.iter().map(|&c| mul_mod(c, inv, p)).collect();
        }
        powers.push(next);
    }
}

fn lattice_mod_p(d: usize, p: u64, gens: &[Vec<u64>]) -> IntMatrix {
    let mut b = HnfBuilder::with_modulus(d, BigInt::from(p));
    for g in gens {
        b.insert(&to_big(g));
    }
    b.to_matrix()
}

/// All primes above `p` of a p-maximal order, sorted canonically by
/// `(e, f, HNF of lambda)`.
pub fn primes_above(order: &POrderData) -> Result<Vec<PrimeIdealData>> {
    let order = Arc::new(order.clone());
    let p = order.p;
    let d = order.degree();
    let pb = BigInt::from(p);
    let alg = ResidueAlgebra::new(&order);
    let mut rng = ChaCha8Rng::seed_from_u64(p ^ 0x9e37_79b9);
    let rad = alg.radical();
    let idems = primitive_idempotents(&alg, &mut rng);

    struct Partial {
        f: u32,
        lattice: IntMatrix,
        beta_int: Vec<BigInt>,
    }
    let mut partials = Vec::new();
    for e in &idems {
        let one_minus_e: Vec<u64> = alg.one.iter().zip(e).map(|(&a, &b)| sub_m(a, b, p)).collect();
        let mut gens = rad.clone();
        for i in 0..d {
            gens.push(alg.mul(&alg.basis_vec(i), &one_minus_e));
        }
        let lam_bar: Vec<Vec<u64>> = {
            let mut m = ModMatrix::from_rows(&gens, d, p);
            let piv = m.rref();
            (0..piv.len()).map(|i| m.row(i).to_vec()).collect()
        };
        let f = (d - lam_bar.len()) as u32;
        let lattice = lattice_mod_p(d, p, &lam_bar);
        // beta in O with beta * lambda in pO and beta not in pO
        let mut rows = Vec::with_capacity(d);
        for i in 0..d {
            let mut row = Vec::with_capacity(d * lam_bar.len());
            for y in &lam_bar {
                row.extend(alg.mul(&alg.basis_vec(i), y));
            }
            rows.push(row);
        }
        let kern = ModMatrix::from_rows(&rows, d * lam_bar.len(), p).left_kernel();
        let beta = kern
            .into_iter()
            .find(|v| v.iter().any(|&x| x != 0))
            .ok_or_else(|| Error::Invariant("no anti-uniformizer found".into()))?;
        partials.push(Partial {
            f,
            lattice,
            beta_int: to_big(&beta),
        });
    }

    let mut primes: Vec<PrimeIdealData> = Vec::new();
    for part in partials {
        let beta_mult = order.mult_matrix(&part.beta_int);
        let beta = order.from_coords(&part.beta_int, &pb);
        let mut lam = PrimeIdealData {
            p,
            e: 0,
            f: part.f,
            alpha: FieldElement::zero(d),
            beta,
            order: order.clone(),
            beta_mult,
            lattice: part.lattice,
        };
        let p_coords = order.to_coords(&FieldElement::from_int(d, pb.clone())).0;
        lam.e = lam.valuation_integral(p_coords, None) as u32;
        if lam.e == 0 {
            return Err(Error::Invariant("prime does not contain p".into()));
        }
        primes.push(lam);
    }
    let sum: u32 = primes.iter().map(|l| l.e * l.f).sum();
    if sum as usize != d {
        return Err(Error::Invariant(format!(
            "sum of e*f is {sum}, expected degree {d}"
        )));
    }
    primes.sort_by(|a, b| {
        (a.e, a.f)
            .cmp(&(b.e, b.f))
            .then_with(|| a.lattice.to_rows().cmp(&b.lattice.to_rows()))
    });
    for i in 0..primes.len() {
        let alpha = two_element(&primes, i, &mut rng)?;
        primes[i].alpha = alpha;
    }
    Ok(primes)
}

/// Finds `alpha` with `lambda = pO + alpha O`, checked by HNF equality.
fn two_element(primes: &[PrimeIdealData], i: usize, rng: &mut ChaCha8Rng) -> Result<FieldElement> {
    let lam = &primes[i];
    let order = &lam.order;
    let p = lam.p;
    let d = order.degree();
    let basis = lam.lattice.clone();
    for attempt in 0..2000 {
        let coeffs: Vec<i64> = if attempt < basis.rows() {
            (0..basis.rows()).map(|k| i64::from(k == attempt)).collect()
        } else {
            (0..basis.rows()).map(|_| rng.gen_range(-(p as i64)..=p as i64)).collect()
        };
        let mut a = vec![BigInt::zero(); d];
        for (k, c) in coeffs.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            for (ai, b) in a.iter_mut().zip(basis.row(k)) {
                *ai += b * c;
            }
        }
        if a.iter().all(Zero::is_zero) {
            continue;
        }
        let x = order.from_coords(&a, &BigInt::one());
        let ok = primes.iter().enumerate().all(|(j, mu)| {
            let v = mu.valuation(&x).unwrap_or(i64::MAX);
            if j == i {
                v == 1 || (lam.e == 1 && v >= 1)
            } else {
                v == 0
            }
        });
        if !ok {
            continue;
        }
        // Verify pO + alpha O == lambda.
        let mut b = HnfBuilder::with_modulus(d, BigInt::from(p));
        let am = order.mult_matrix(&a);
        for r in 0..d {
            b.insert(am.row(r));
        }
        if b.to_matrix() == basis {
            return Ok(x);
        }
    }
    Err(Error::Invariant("no two-element representation found".into()))
}
