use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::hnf::HnfBuilder;
use super::matrix::IntMatrix;

/// Lattice in `Q^n`: `(1/den) * rowspan(basis)` with `basis` in HNF and
/// `den` minimal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    n: usize,
    basis: IntMatrix,
    den: BigInt,
}

impl Lattice {
    pub fn zero(n: usize) -> Self {
        Lattice {
            n,
            basis: IntMatrix::zeros(0, n),
            den: BigInt::one(),
        }
    }

    /// Wraps an HNF basis, normalizing the denominator.
    pub fn from_hnf(basis: IntMatrix, den: BigInt) -> Self {
        let n = basis.cols();
        let mut g = den.clone();
        for i in 0..basis.rows() {
            for x in basis.row(i) {
                g = g.gcd(x);
            }
        }
        if g.is_one() || g.is_zero() {
            return Lattice { n, basis, den };
        }
        let rows = basis
            .to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(|x| x / &g).collect())
            .collect();
        Lattice {
            n,
            basis: IntMatrix::from_rows(n, rows),
            den: den / g,
        }
    }

    /// Lattice generated by rational vectors given as (numerators, denominator).
    pub fn from_generators(n: usize, gens: &[(Vec<BigInt>, BigInt)]) -> Self {
        let den = gens.iter().fold(BigInt::one(), |acc, (_, d)| acc.lcm(d));
        let mut b = HnfBuilder::new(n);
        for (v, d) in gens {
            let s = &den / d;
            let scaled: Vec<BigInt> = v.iter().map(|x| x * &s).collect();
            b.insert(&scaled);
        }
        Lattice::from_hnf(b.to_matrix(), den)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    /// Membership of `v / d`.
    pub fn contains(&self, v: &[BigInt], d: &BigInt) -> bool {
        // v/d in (1/den) L  <=>  v * den / d in L (must be integral first)
        let scaled: Vec<BigInt> = v.iter().map(|x| x * &self.den).collect();
        if scaled.iter().any(|x| !x.is_multiple_of(d)) {
            return false;
        }
        let w: Vec<BigInt> = scaled.into_iter().map(|x| x / d).collect();
        let mut b = HnfBuilder::new(self.n).without_auto_modulus();
        for i in 0..self.basis.rows() {
            b.insert(self.basis.row(i));
        }
        b.contains(&w)
    }

    /// Index `[Z^n : L]` as a rational `(num, den)` for full-rank lattices.
    pub fn covolume(&self) -> Option<(BigInt, BigInt)> {
        if self.rank() != self.n {
            return None;
        }
        let det: BigInt = (0..self.n).fold(BigInt::one(), |acc, i| acc * &self.basis[(i, i)]);
        let dn = self.den.pow(self.n as u32);
        let g = det.gcd(&dn);
        Some((det / &g, dn / g))
    }
}
