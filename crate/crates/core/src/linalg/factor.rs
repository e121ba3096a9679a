//! Factorization over the rationals: squarefree decomposition, factorization
//! modulo a small prime, quadratic Hensel lifting, recombination.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::{ceil_sqrt, primes_up_to, symmetric_mod};
use crate::error::{Error, Result};

use super::modp::{self, ModPoly};
use super::poly::UniPoly;

/// Irreducible factors with multiplicities. Factors are primitive with
/// positive leading coefficient (monic whenever the input is monic), sorted by
/// degree and then coefficients. Constants contribute nothing.
pub fn factor_rational(f: &UniPoly) -> Result<Vec<(UniPoly, u32)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    for (part, mult) in f.primitive().squarefree_decomposition() {
        for g in factor_squarefree(&part) {
            out.push((g, mult));
        }
    }
    out.sort_by(|a, b| a.0.deg().cmp(&b.0.deg()).then_with(|| a.0.cmp(&b.0)));
    Ok(out)
}

/// Whether a nonzero polynomial of positive degree is irreducible over Q.
pub fn is_irreducible(f: &UniPoly) -> bool {
    match factor_rational(f) {
        Ok(fs) => fs.len() == 1 && fs[0].1 == 1,
        Err(_) => false,
    }
}

/// Factors a primitive squarefree polynomial with positive leading coefficient.
fn factor_squarefree(f: &UniPoly) -> Vec<UniPoly> {
    let n = f.deg();
    if n <= 1 {
        return vec![f.clone()];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d);
    let lc = f.lc();
    let df = f.derivative();

    // Try a handful of good primes; keep the one with fewest local factors and
    // intersect the achievable factor degrees across all of them.
    let mut best: Option<(u64, Vec<(ModPoly, usize)>)> = None;
    let mut allowed: Option<BTreeSet<usize>> = None;
    let mut good = 0;
    for q in primes_up_to(2000).into_iter().skip(1) {
        if (&lc % BigInt::from(q)).is_zero() {
            continue;
        }
        let fq = f.to_mod(q);
        let g = modp::pgcd(&fq, &df.to_mod(q), q);
        if modp::deg(&g).unwrap_or(0) > 0 {
            continue;
        }
        let parts = modp::ddf(&fq, q);
        let mut degs = Vec::new();
        for (g, d) in &parts {
            degs.extend(std::iter::repeat_n(*d, modp::deg(g).unwrap() / d));
        }
        let sums = subset_sums(&degs, n);
        allowed = Some(match allowed {
            None => sums,
            Some(a) => a.intersection(&sums).cloned().collect(),
        });
        if degs.len() == 1 || allowed.as_ref().unwrap().iter().all(|&d| d == 0 || d == n) {
            return vec![f.clone()];
        }
        let count = degs.len();
        if best.as_ref().is_none_or(|(_, p)| count < local_count(p)) {
            best = Some((q, parts));
        }
        good += 1;
        if good >= 7 {
            break;
        }
    }
    let (q, parts) = best.expect("a good prime exists below 2000");
    let allowed = allowed.unwrap();
    let mut local: Vec<ModPoly> = Vec::new();
    for (g, d) in parts {
        local.extend(modp::edf(&g, d, q, &mut rng));
    }

    // Lift past twice the coefficient bound of lc * (any factor).
    let bound = BigInt::from(2) * lc.abs() * (BigInt::one() << n) * ceil_sqrt(&f.norm2_sq());
    let qb = BigInt::from(q);
    let mut modulus = qb.clone();
    let mut k = 1u32;
    while modulus <= bound {
        modulus *= &qb;
        k += 1;
    }
    let lifted = hensel_lift_all(f, &local, q, k);
    recombine(f, lifted, &modulus, &allowed)
}

fn local_count(parts: &[(ModPoly, usize)]) -> usize {
    parts
        .iter()
        .map(|(g, d)| modp::deg(g).unwrap() / d)
        .sum()
}

fn subset_sums(degs: &[usize], n: usize) -> BTreeSet<usize> {
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for &d in degs {
        for s in (d..=n).rev() {
            if reach[s - d] {
                reach[s] = true;
            }
        }
    }
    (0..=n).filter(|&s| reach[s]).collect()
}

/// Polynomial with coefficients reduced into `[0, m)`.
fn reduce(f: &UniPoly, m: &BigInt) -> UniPoly {
    UniPoly::new(f.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

/// Division by a monic polynomial modulo `m`.
fn divrem_monic(f: &UniPoly, h: &UniPoly, m: &BigInt) -> (UniPoly, UniPoly) {
    let dh = h.deg();
    let mut r: Vec<BigInt> = reduce(f, m).coeffs().to_vec();
    if r.len() <= dh {
        return (UniPoly::zero(), UniPoly::new(r));
    }
    let mut q = vec![BigInt::zero(); r.len() - dh];
    for k in (0..q.len()).rev() {
        let c = r[k + dh].mod_floor(m);
        if !c.is_zero() {
            for (j, hj) in h.coeffs().iter().enumerate() {
                r[k + j] = (&r[k + j] - &c * hj).mod_floor(m);
            }
        }
        q[k] = c;
    }
    r.truncate(dh);
    (UniPoly::new(q), reduce(&UniPoly::new(r), m))
}

/// Extended gcd over `F_q`: `(s, t)` with `s a + t b = 1`, deg s < deg b, deg t < deg a.
fn xgcd_mod(a: &[u64], b: &[u64], q: u64) -> (ModPoly, ModPoly) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1): (ModPoly, ModPoly) = (vec![1], vec![]);
    let (mut t0, mut t1): (ModPoly, ModPoly) = (vec![], vec![1]);
    while !r1.is_empty() {
        let (quo, rem) = modp::pdivrem(&r0, &r1, q);
        r0 = std::mem::replace(&mut r1, rem);
        let s2 = modp::psub(&s0, &modp::pmul(&quo, &s1, q), q);
        s0 = std::mem::replace(&mut s1, s2);
        let t2 = modp::psub(&t0, &modp::pmul(&quo, &t1, q), q);
        t0 = std::mem::replace(&mut t1, t2);
    }
    assert_eq!(r0.len(), 1, "factors not coprime modulo {q}");
    let inv = crate::arith::inv_mod(r0[0], q);
    (modp::pscale(&s0, inv, q), modp::pscale(&t0, inv, q))
}

fn lift_mod(f: &[u64]) -> UniPoly {
    UniPoly::new(f.iter().map(|&c| BigInt::from(c)).collect())
}

/// Lifts `f = g h (mod q)` with monic `h` to modulus `q^k`.
fn hensel_pair(f: &UniPoly, g: &[u64], h: &[u64], q: u64, k: u32) -> (UniPoly, UniPoly) {
    let (s0, t0) = xgcd_mod(g, h, q);
    let (mut g, mut h) = (lift_mod(g), lift_mod(h));
    let (mut s, mut t) = (lift_mod(&s0), lift_mod(&t0));
    let target = BigInt::from(q).pow(k);
    let mut m = BigInt::from(q);
    while m < target {
        let mut m2 = &m * &m;
        if m2 > target {
            m2 = target.clone();
        }
        let e = reduce(&f.sub(&g.mul(&h)), &m2);
        let (qq, r) = divrem_monic(&s.mul(&e), &h, &m2);
        let g_new = reduce(&g.add(&t.mul(&e)).add(&qq.mul(&g)), &m2);
        let h_new = reduce(&h.add(&r), &m2);
        let b = reduce(&s.mul(&g_new).add(&t.mul(&h_new)).sub(&UniPoly::one()), &m2);
        let (c, d) = divrem_monic(&s.mul(&b), &h_new, &m2);
        s = reduce(&s.sub(&d), &m2);
        t = reduce(&t.sub(&t.mul(&b)).sub(&c.mul(&g_new)), &m2);
        g = g_new;
        h = h_new;
        m = m2;
    }
    (g, h)
}

/// Lifts the complete monic local factorization of `f / lc(f)` to `q^k`.
fn hensel_lift_all(f: &UniPoly, local: &[ModPoly], q: u64, k: u32) -> Vec<UniPoly> {
    let m = BigInt::from(q).pow(k);
    let lc_inv = f
        .lc()
        .mod_floor(&m)
        .modinv(&m)
        .expect("leading coefficient is a unit");
    let monic_f = reduce(&f.scale(&lc_inv), &m);
    let mut out = Vec::with_capacity(local.len());
    lift_tree(&monic_f, local, q, k, &mut out);
    out
}

fn lift_tree(f: &UniPoly, local: &[ModPoly], q: u64, k: u32, out: &mut Vec<UniPoly>) {
    if local.len() == 1 {
        out.push(f.clone());
        return;
    }
    let mid = local.len() / 2;
    let prod = |fs: &[ModPoly]| fs.iter().fold(vec![1u64], |acc, g| modp::pmul(&acc, g, q));
    let (gl, hl) = (prod(&local[..mid]), prod(&local[mid..]));
    let (g, h) = hensel_pair(f, &gl, &hl, q, k);
    lift_tree(&g, &local[..mid], q, k, out);
    lift_tree(&h, &local[mid..], q, k, out);
}

fn recombine(
    f: &UniPoly,
    mut lifted: Vec<UniPoly>,
    m: &BigInt,
    allowed: &BTreeSet<usize>,
) -> Vec<UniPoly> {
    let mut f = f.clone();
    let mut out = Vec::new();
    let mut size = 1;
    'outer: while 2 * size <= lifted.len() {
        let r = lifted.len();
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let deg: usize = idx.iter().map(|&i| lifted[i].deg()).sum();
            if allowed.contains(&deg) && constant_term_ok(&f, &lifted, &idx, m) {
                let lc = f.lc();
                let mut g = UniPoly::constant(lc.clone());
                for &i in &idx {
                    g = reduce(&g.mul(&lifted[i]), m);
                }
                let g = UniPoly::new(g.coeffs().iter().map(|c| symmetric_mod(c, m)).collect())
                    .primitive();
                if let Some(quot) = f.div_exact(&g) {
                    out.push(g);
                    f = quot.primitive();
                    let keep: Vec<UniPoly> = lifted
                        .into_iter()
                        .enumerate()
                        .filter(|(i, _)| !idx.contains(i))
                        .map(|(_, u)| u)
                        .collect();
                    lifted = keep;
                    continue 'outer;
                }
            }
            if !next_combination(&mut idx, r) {
                break;
            }
        }
        size += 1;
    }
    if f.deg() > 0 {
        out.push(f.primitive());
    }
    out
}

fn constant_term_ok(f: &UniPoly, lifted: &[UniPoly], idx: &[usize], m: &BigInt) -> bool {
    let f0 = f.coeff(0);
    let mut c = f.lc().mod_floor(m);
    for &i in idx {
        c = (c * lifted[i].coeff(0)).mod_floor(m);
    }
    let c = symmetric_mod(&c, m);
    if c.is_zero() {
        return f0.is_zero();
    }
    (f.lc() * f0).is_multiple_of(&c)
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_i64(c)
    }

    #[test]
    fn spec_examples() {
        let fs = factor_rational(&p(&[-1, 0, 0, 0, 1])).unwrap();
        assert_eq!(fs, vec![(p(&[-1, 1]), 1), (p(&[1, 1]), 1), (p(&[1, 0, 1]), 1)]);
        let fs = factor_rational(&p(&[-1, -1, 1])).unwrap();
        assert_eq!(fs, vec![(p(&[-1, -1, 1]), 1)]);
        let f = p(&[-1, 1]).pow(2).mul(&p(&[1, 0, 1]));
        let fs = factor_rational(&f).unwrap();
        assert_eq!(fs, vec![(p(&[-1, 1]), 2), (p(&[1, 0, 1]), 1)]);
        assert!(factor_rational(&UniPoly::zero()).is_err());
    }

    #[test]
    fn swinnerton_dyer_like_recombination() {
        // x^4 - 10x^2 + 1 is irreducible but splits into linear or quadratic
        // factors modulo every prime.
        let f = p(&[1, 0, -10, 0, 1]);
        assert!(is_irreducible(&f));
        let g = f.mul(&p(&[-2, 0, 1])).mul(&p(&[3, 2]));
        let fs = factor_rational(&g).unwrap();
        assert_eq!(fs.len(), 3);
        let prod = fs.iter().fold(UniPoly::one(), |acc, (h, e)| acc.mul(&h.pow(*e)));
        assert_eq!(prod, g);
    }

    #[test]
    fn non_monic_input() {
        let f = p(&[1, 2]).mul(&p(&[-3, 0, 5]));
        let fs = factor_rational(&f).unwrap();
        assert_eq!(fs, vec![(p(&[1, 2]), 1), (p(&[-3, 0, 5]), 1)]);
    }
}
