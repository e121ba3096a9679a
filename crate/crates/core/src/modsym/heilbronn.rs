//! Heilbronn matrices of determinant `l`, stored as `[x1, x2, y1, y2]` for
//! `[x1 x2; y1 y2]`; a Manin symbol `(u : v)` maps to `(u x1 + v y1 : u x2 + v y2)`.

/// Continued-fraction family (Cremona's), visited without allocating.
pub fn for_each_cremona<F: FnMut(i64, i64, i64, i64)>(l: u64, mut f: F) {
    let p = l as i64;
    if p == 2 {
        f(1, 0, 0, 2);
        f(2, 0, 0, 1);
        f(2, 1, 0, 1);
        f(1, 0, 1, 2);
        return;
    }
    f(1, 0, 0, p);
    for r in -(p / 2)..=(p / 2) {
        let (mut x1, mut x2, mut y1, mut y2) = (p, -r, 0i64, 1i64);
        let (mut a, mut b) = (-p, r);
        f(x1, x2, y1, y2);
        while b != 0 {
            let q = round_div(a, b);
            let c = a - b * q;
            a = -b;
            b = c;
            let x3 = q * x2 - x1;
            x1 = x2;
            x2 = x3;
            let y3 = q * y2 - y1;
            y1 = y2;
            y2 = y3;
            f(x1, x2, y1, y2);
        }
    }
}

pub fn cremona(l: u64) -> Vec<[i64; 4]> {
    let mut out = Vec::new();
    for_each_cremona(l, |a, b, c, d| out.push([a, b, c, d]));
    out
}

/// `a > b >= 0`, `d > c >= 0`, `ad - bc = l` (Merel's family).
pub fn merel(l: u64) -> Vec<[i64; 4]> {
    let l = l as i64;
    let mut out = Vec::new();
    for a in 1..=l {
        for d in 1..=l {
            let bc = a * d - l;
            if bc < 0 {
                continue;
            }
            if bc == 0 {
                for c in 0..d {
                    out.push([a, 0, c, d]);
                }
                for b in 1..a {
                    out.push([a, b, 0, d]);
                }
                continue;
            }
            for b in 1..a {
                if bc % b == 0 && bc / b < d {
                    out.push([a, b, bc / b, d]);
                }
            }
        }
    }
    out
}

/// `a / b` rounded to the nearest integer, halves away from zero.
fn round_div(a: i64, b: i64) -> i64 {
    let neg = (a < 0) != (b < 0);
    let (a, b) = (a.abs(), b.abs());
    let q = (2 * a + b) / (2 * b);
    if neg {
        -q
    } else {
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinants() {
        for l in [2u64, 3, 5, 7, 11, 13, 97] {
            for [a, b, c, d] in cremona(l) {
                assert_eq!(a * d - b * c, l as i64);
            }
            for [a, b, c, d] in merel(l) {
                assert_eq!(a * d - b * c, l as i64);
            }
        }
    }

    #[test]
    fn rounding() {
        assert_eq!(round_div(5, 2), 3);
        assert_eq!(round_div(-5, 2), -3);
        assert_eq!(round_div(7, -3), -2);
        assert_eq!(round_div(1, 3), 0);
    }
}
