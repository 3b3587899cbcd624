//! Integer 2x2 matrices and small modular-arithmetic helpers.

use std::fmt;

use serde::Serialize;

/// Integer matrix `[[a, b], [c, d]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Matrix2 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Matrix2 {
    pub const IDENTITY: Self = Self::new(1, 0, 0, 1);
    pub const S: Self = Self::new(0, -1, 1, 0);

    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self { a, b, c, d }
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    pub fn is_sl2(&self) -> bool {
        self.det() == 1
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }

    /// Matrix in SL2(Z) with first column `(a, c)`, for coprime `a, c`.
    pub fn with_first_column(a: i64, c: i64) -> Option<Self> {
        let (g, x, y) = ext_gcd(a, c);
        if g.abs() != 1 {
            return None;
        }
        // a*x + c*y = g, so [[a, -y*g], [c, x*g]] has determinant g^2 = 1
        Some(Self::new(a, -y * g, c, x * g))
    }
}

impl fmt::Display for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: i64, b: i64) -> i64 {
    if a == 0 || b == 0 {
        0
    } else {
        (a / gcd(a, b) * b).abs()
    }
}

/// `(g, x, y)` with `a x + b y = g = gcd(a, b)` up to sign.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_t, mut t) = (0i64, 1i64);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    (old_r, old_s, old_t)
}

/// Inverse of `a` modulo `m >= 1` in `[0, m)`; modulus 1 gives 0.
pub fn mod_inv(a: i64, m: i64) -> Option<i64> {
    assert!(m >= 1);
    if m == 1 {
        return Some(0);
    }
    let (g, x, _) = ext_gcd(a.rem_euclid(m), m);
    (g == 1).then(|| x.rem_euclid(m))
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_column_completion() {
        for (a, c) in [(1, 0), (0, 1), (1, 2), (3, 7), (-2, 5), (5, 12)] {
            let m = Matrix2::with_first_column(a, c).unwrap();
            assert!(m.is_sl2(), "{m}");
            assert_eq!((m.a, m.c), (a, c));
        }
        assert!(Matrix2::with_first_column(2, 4).is_none());
    }

    #[test]
    fn inverses() {
        assert_eq!(mod_inv(3, 7), Some(5));
        assert_eq!(mod_inv(-3, 7), Some(2));
        assert_eq!(mod_inv(2, 4), None);
        assert_eq!(mod_inv(5, 1), Some(0));
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
    }
}
