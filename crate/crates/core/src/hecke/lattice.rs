//! The anemic Hecke algebra as a lattice in the product of the coefficient
//! fields of all newform orbits of level dividing `N`, and its Eisenstein ideal.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::algebra::{annihilator_index, basis_rows, solve_triangular, StructAlgebra};
use crate::arith::{primes_up_to, val_big};
use crate::congruence::{sturm_bound, validate_level};
use crate::error::{Error, Result};
use crate::linalg::{HnfBuilder, Lattice};
use crate::newform::Engine;
use crate::numfield::{FieldElement, NumberField};

#[derive(Clone, Debug)]
pub struct HeckeComponent {
    pub level: u64,
    pub orbit: usize,
    pub field: NumberField,
}

/// Row lattice of rational vectors `v / den` with a growing common denominator.
struct ScaledBuilder {
    n: usize,
    den: BigInt,
    hnf: HnfBuilder,
}

impl ScaledBuilder {
    fn new(n: usize) -> Self {
        ScaledBuilder {
            n,
            den: BigInt::one(),
            hnf: HnfBuilder::new(n),
        }
    }

    fn insert(&mut self, v: &[BigInt], d: &BigInt) -> bool {
        if !self.den.is_multiple_of(d) {
            let l = self.den.lcm(d);
            let c = &l / &self.den;
            let mut fresh = HnfBuilder::new(self.n);
            for row in basis_rows(&self.hnf) {
                fresh.insert(&row.iter().map(|x| x * &c).collect::<Vec<_>>());
            }
            self.hnf = fresh;
            self.den = l;
        }
        let s = &self.den / d;
        self.hnf.insert(&v.iter().map(|x| x * &s).collect::<Vec<_>>())
    }
}

#[derive(Clone, Debug)]
pub struct HeckeLattice {
    level: u64,
    bound: u64,
    components: Vec<HeckeComponent>,
    offsets: Vec<usize>,
    basis: Lattice,
    algebra: StructAlgebra,
    /// `(l, coordinates of t_l)` for primes `l <= bound` not dividing `N`.
    hecke: Vec<(u64, Vec<BigInt>)>,
}

impl HeckeLattice {
    /// Z-algebra generated by `1` and `t_l` for primes `l <= bound`, `l` not
    /// dividing `n` (default bound: the Sturm bound).
    pub fn build(engine: &mut Engine, n: u64, bound: Option<u64>) -> Result<Self> {
        validate_level(n)?;
        let bound = match bound {
            Some(b) => b,
            None => sturm_bound(n)?,
        };
        engine.ensure_bound(n, bound)?;
        let mut components = Vec::new();
        for (m, i) in engine.orbits_dividing(n)? {
            let ld = engine.level_data(m).expect("level computed");
            components.push(HeckeComponent {
                level: m,
                orbit: i,
                field: ld.orbits()[i].field().clone(),
            });
        }
        let mut offsets = vec![0];
        for c in &components {
            offsets.push(offsets.last().unwrap() + c.field.degree());
        }
        let dim = *offsets.last().unwrap();
        if dim == 0 {
            return Err(Error::Computation(format!("no cusp forms of level dividing {n}")));
        }
        let primes: Vec<u64> = primes_up_to(bound).into_iter().filter(|l| !n.is_multiple_of(*l)).collect();
        let mut images = Vec::with_capacity(primes.len());
        for &l in &primes {
            let vals: Vec<FieldElement> = components
                .iter()
                .map(|c| {
                    engine
                        .level_data(c.level)
                        .and_then(|ld| ld.eigenvalue(c.orbit, l))
                        .cloned()
                        .ok_or_else(|| Error::Computation(format!("a_{l} missing at level {}", c.level)))
                })
                .collect::<Result<_>>()?;
            images.push(vals);
        }

        let mut this = HeckeLattice {
            level: n,
            bound,
            components,
            offsets,
            basis: Lattice::zero(dim),
            algebra: StructAlgebra::new(Vec::new(), Vec::new(), None),
            hecke: Vec::new(),
        };
        let mut sb = ScaledBuilder::new(dim);
        let one: Vec<FieldElement> = this.components.iter().map(|c| FieldElement::one(c.field.degree())).collect();
        let (v, d) = this.flatten(&one);
        sb.insert(&v, &d);
        for vals in &images {
            let (v, d) = this.flatten(vals);
            sb.insert(&v, &d);
        }
        // Close under multiplication.
        loop {
            let rows = basis_rows(&sb.hnf);
            let elems: Vec<Vec<FieldElement>> = rows.iter().map(|r| this.split(r, &sb.den)).collect();
            let mut grew = false;
            for i in 0..elems.len() {
                for j in i..elems.len() {
                    let prod = this.mul(&elems[i], &elems[j]);
                    let (v, d) = this.flatten(&prod);
                    grew |= sb.insert(&v, &d);
                }
            }
            if !grew {
                break;
            }
        }
        if !sb.hnf.is_full_rank() {
            return Err(Error::Invariant(format!(
                "Hecke lattice at level {n} has rank {} < {dim}",
                sb.hnf.rank()
            )));
        }
        let rows = basis_rows(&sb.hnf);
        let elems: Vec<Vec<FieldElement>> = rows.iter().map(|r| this.split(r, &sb.den)).collect();
        let coords = |x: &[FieldElement]| -> Result<Vec<BigInt>> {
            let (v, d) = this.flatten(x);
            let scaled: Vec<BigInt> = v.iter().map(|a| a * &sb.den).collect();
            if scaled.iter().any(|a| !a.is_multiple_of(&d)) {
                return Err(Error::Invariant("element outside the Hecke lattice".into()));
            }
            let w: Vec<BigInt> = scaled.into_iter().map(|a| a / &d).collect();
            solve_triangular(&rows, &w).ok_or_else(|| Error::Invariant("element outside the Hecke lattice".into()))
        };
        let mut mult = vec![vec![Vec::new(); dim]; dim];
        for i in 0..dim {
            for j in i..dim {
                let c = coords(&this.mul(&elems[i], &elems[j]))?;
                mult[j][i] = c.clone();
                mult[i][j] = c;
            }
        }
        let one_c = coords(&one)?;
        let hecke = primes
            .iter()
            .zip(&images)
            .map(|(&l, vals)| Ok((l, coords(vals)?)))
            .collect::<Result<Vec<_>>>()?;
        this.algebra = StructAlgebra::new(mult, one_c, None);
        this.hecke = hecke;
        this.basis = Lattice::from_hnf(sb.hnf.to_matrix(), sb.den.clone());
        Ok(this)
    }

    fn flatten(&self, x: &[FieldElement]) -> (Vec<BigInt>, BigInt) {
        let den = x.iter().fold(BigInt::one(), |acc, e| acc.lcm(e.den()));
        let mut v = Vec::with_capacity(*self.offsets.last().unwrap());
        for e in x {
            let s = &den / e.den();
            v.extend(e.num().iter().map(|a| a * &s));
        }
        (v, den)
    }

    fn split(&self, v: &[BigInt], den: &BigInt) -> Vec<FieldElement> {
        self.offsets
            .windows(2)
            .map(|w| FieldElement::new(v[w[0]..w[1]].to_vec(), den.clone()))
            .collect()
    }

    fn mul(&self, x: &[FieldElement], y: &[FieldElement]) -> Vec<FieldElement> {
        self.components
            .iter()
            .zip(x.iter().zip(y))
            .map(|(c, (a, b))| c.field.mul(a, b))
            .collect()
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    /// `n = sum of the orbit degrees`.
    pub fn rank(&self) -> usize {
        self.algebra.rank()
    }

    pub fn components(&self) -> &[HeckeComponent] {
        &self.components
    }

    /// Basis in concatenated power-basis coordinates.
    pub fn basis(&self) -> &Lattice {
        &self.basis
    }

    /// Structure constants in the lattice basis.
    pub fn algebra(&self) -> &StructAlgebra {
        &self.algebra
    }

    /// Lattice coordinates of `t_l`.
    pub fn hecke_element(&self, l: u64) -> Option<&[BigInt]> {
        self.hecke
            .binary_search_by_key(&l, |(q, _)| *q)
            .ok()
            .map(|k| self.hecke[k].1.as_slice())
    }

    pub fn hecke_elements(&self) -> &[(u64, Vec<BigInt>)] {
        &self.hecke
    }
}

/// The ideal of the Hecke lattice generated by `t_l - (1 + l)`.
#[derive(Clone, Debug)]
pub struct EisensteinIdeal {
    /// Ideal generators actually needed, in lattice coordinates, with their `l`.
    generators: Vec<(u64, Vec<BigInt>)>,
    closure: Vec<Vec<BigInt>>,
    index: BigInt,
}

impl EisensteinIdeal {
    pub fn new(t: &HeckeLattice) -> Result<Self> {
        let alg = t.algebra();
        let n = alg.rank();
        let mut b = HnfBuilder::new(n);
        let mut generators = Vec::new();
        for (l, x) in t.hecke_elements() {
            let g = alg.sub_scalar(x, &BigInt::from(1 + l));
            if g.iter().all(Zero::is_zero) || b.contains(&g) {
                continue;
            }
            for k in 0..n {
                b.insert(&alg.mul_basis(&g, k));
            }
            generators.push((*l, g));
        }
        if !b.is_full_rank() {
            return Err(Error::Invariant(format!(
                "Eisenstein ideal at level {} does not have finite index",
                t.level()
            )));
        }
        let closure = basis_rows(&b);
        let index = annihilator_index(&closure, alg.one());
        if b.det().as_ref() != Some(&index) {
            return Err(Error::Invariant("T/J is not cyclic".into()));
        }
        Ok(EisensteinIdeal {
            generators,
            closure,
            index,
        })
    }

    pub fn generators(&self) -> &[(u64, Vec<BigInt>)] {
        &self.generators
    }

    pub fn generator_vectors(&self) -> Vec<Vec<BigInt>> {
        self.generators.iter().map(|(_, g)| g.clone()).collect()
    }

    /// HNF basis in lattice coordinates.
    pub fn closure(&self) -> &[Vec<BigInt>] {
        &self.closure
    }

    /// `n0 = #(T / J)`.
    pub fn index(&self) -> &BigInt {
        &self.index
    }

    pub fn val_index(&self, p: u64) -> u32 {
        val_big(&self.index, p).expect("finite index")
    }
}
