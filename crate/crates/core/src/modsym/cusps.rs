//! Cusps of `Gamma_0(M)` modulo `alpha ~ -alpha`, and the boundary map on the
//! plus quotient.

use num_bigint::BigInt;
use num_integer::Integer;

use super::manin::ManinPresentation;
use crate::linalg::IntMatrix;

/// A reduced fraction `a / c` with `c >= 0`; infinity is `1 / 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cusp {
    pub a: i64,
    pub c: i64,
}

impl Cusp {
    pub fn new(a: i64, c: i64) -> Self {
        if c == 0 {
            return Cusp { a: 1, c: 0 };
        }
        let g = a.gcd(&c);
        let (mut a, mut c) = (a / g, c / g);
        if c < 0 {
            a = -a;
            c = -c;
        }
        Cusp { a, c }
    }
}

impl std::ops::Neg for Cusp {
    type Output = Cusp;

    fn neg(self) -> Cusp {
        Cusp::new(-self.a, self.c)
    }
}

/// `a1/c1 ~ a2/c2` iff `s1 c2 = s2 c1 (mod gcd(c1 c2, M))` with `a_j s_j = 1 (mod c_j)`.
pub fn equivalent(x: Cusp, y: Cusp, m: u64) -> bool {
    let s = |z: Cusp| -> i128 {
        if z.c <= 1 {
            return 1;
        }
        let e = (z.a as i128).extended_gcd(&(z.c as i128));
        (e.x * e.gcd).rem_euclid(z.c as i128)
    };
    let g = ((x.c as i128) * (y.c as i128)).gcd(&(m as i128));
    if g == 0 {
        return true;
    }
    (s(x) * y.c as i128 - s(y) * x.c as i128).rem_euclid(g) == 0
}

/// Class representatives, grown on demand.
#[derive(Clone, Debug, Default)]
pub struct CuspClasses {
    m: u64,
    reps: Vec<Cusp>,
}

impl CuspClasses {
    pub fn new(m: u64) -> Self {
        CuspClasses { m, reps: Vec::new() }
    }

    /// Index of the class of `x` with `x` and `-x` identified.
    pub fn class_of(&mut self, x: Cusp) -> usize {
        let nx = -x;
        if let Some(i) = self
            .reps
            .iter()
            .position(|&r| equivalent(r, x, self.m) || equivalent(r, nx, self.m))
        {
            return i;
        }
        self.reps.push(x);
        self.reps.len() - 1
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn reps(&self) -> &[Cusp] {
        &self.reps
    }
}

/// Lifts `(c : d)` to an integer matrix `[a b; c' d']` of determinant 1.
pub fn lift_to_sl2(c: u64, d: u64, m: u64) -> [i64; 4] {
    let m = m as i64;
    let mut c = c as i64;
    let d0 = d as i64;
    if m == 1 {
        return [1, 0, 0, 1];
    }
    if c == 0 {
        c = m;
    }
    let mut d = d0;
    while c.gcd(&d) != 1 {
        d += m;
    }
    // a d - b c = 1
    let e = d.extended_gcd(&c);
    let (a, b) = (e.x * e.gcd, -e.y * e.gcd);
    [a, b, c, d]
}

/// Boundary of each free generator: `[g(inf)] - [g(0)] = [a/c] - [b/d]`.
pub fn boundary_matrix(pres: &ManinPresentation) -> (IntMatrix, CuspClasses) {
    let m = pres.level();
    let mut classes = CuspClasses::new(m);
    let mut entries = Vec::with_capacity(pres.dim());
    for &g in pres.gens() {
        let (c, d) = pres.p1().rep(g);
        let [a, b, c, d] = lift_to_sl2(c, d, m);
        let i = classes.class_of(Cusp::new(a, c));
        let j = classes.class_of(Cusp::new(b, d));
        entries.push((i, j));
    }
    let mut mat = IntMatrix::zeros(pres.dim(), classes.len());
    for (k, (i, j)) in entries.into_iter().enumerate() {
        mat[(k, i)] += BigInt::from(1);
        mat[(k, j)] -= BigInt::from(1);
    }
    (mat, classes)
}
