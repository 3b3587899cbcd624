//! Exponential sums: Kronecker symbols, Dedekind sums, the eta multiplier,
//! quadratic Gauss sums and the Jacobi and classical Kloosterman sums.
//!
//! Every root of unity is produced from an exact rational angle by
//! [`ComplexValue::root_of_unity`]; only the summation is floating point.

use num::rational::Ratio;
use num::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{gcd, lcm, mod_inv, Matrix2};
use crate::numeric::{ComplexValue, DoubleDouble};

/// Kronecker symbol `(a/n)`.
pub fn kronecker(a: i64, n: i64) -> i32 {
    if n == 0 {
        return i32::from(a == 1 || a == -1);
    }
    let mut result = 1;
    let mut n = n;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    let twos = n.trailing_zeros();
    n >>= twos;
    if twos > 0 {
        if a % 2 == 0 {
            return 0;
        }
        if twos % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
            result = -result;
        }
    }
    result * jacobi(a, n)
}

/// Jacobi symbol `(a/n)` for odd positive `n`.
pub fn jacobi(a: i64, n: i64) -> i32 {
    assert!(n > 0 && n % 2 == 1, "Jacobi symbol needs odd positive n");
    let mut a = a.rem_euclid(n);
    let mut n = n;
    let mut t = 1;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

/// The character `(-4/r)`.
pub fn chi_minus4(r: i64) -> i32 {
    match r.rem_euclid(4) {
        1 => 1,
        3 => -1,
        _ => 0,
    }
}

/// `epsilon_d`: 1 for `d = 1 mod 4`, `i` for `d = 3 mod 4`.
pub fn eps_d(d: i64) -> Result<ComplexValue> {
    match d.rem_euclid(4) {
        1 => Ok(ComplexValue::ONE),
        3 => Ok(ComplexValue::I),
        _ => Err(Error::EvenArgument(d)),
    }
}

/// `((x))`: `x - floor(x) - 1/2` off the integers, 0 on them.
pub fn sawtooth(x: Ratio<i64>) -> Ratio<i64> {
    if x.is_integer() {
        Ratio::zero()
    } else {
        x - x.floor() - Ratio::new(1, 2)
    }
}

/// Dedekind sum `s(a, c)` straight from its definition.
pub fn dedekind_s(a: i64, c: i64) -> Result<Ratio<i64>> {
    if c < 1 {
        return Err(Error::InvalidArgument(format!(
            "Dedekind sum needs c >= 1, got {c}"
        )));
    }
    // ((n/c)) = (2u - c)/(2c) for u = n mod c nonzero
    let mut num: i128 = 0;
    let a_mod = a.rem_euclid(c) as i128;
    let c128 = c as i128;
    for n in 1..c128 {
        let v = (n * a_mod) % c128;
        if v != 0 {
            num += (2 * n - c128) * (2 * v - c128);
        }
    }
    let r = Ratio::new(num, 4 * c128 * c128);
    Ok(Ratio::new(*r.numer() as i64, *r.denom() as i64))
}

/// Dedekind sum through the reciprocity law, `O(log c)` steps.
pub fn dedekind_s_fast(a: i64, c: i64) -> Result<Ratio<i64>> {
    if c < 1 {
        return Err(Error::InvalidArgument(format!(
            "Dedekind sum needs c >= 1, got {c}"
        )));
    }
    let g = gcd(a, c);
    let (mut a, mut c) = ((a / g).rem_euclid(c / g) as i128, (c / g) as i128);
    let mut acc = Ratio::<i128>::zero();
    let mut sign = 1i128;
    while c > 1 && a != 0 {
        let term = Ratio::new(-1, 4) + Ratio::new(a * a + c * c + 1, 12 * a * c);
        acc += term * sign;
        (a, c) = (c % a, a);
        sign = -sign;
    }
    Ok(Ratio::new(*acc.numer() as i64, *acc.denom() as i64))
}

/// `6 c s(d, c)`, an integer for coprime `d, c`.
pub fn dedekind_6c(d: i64, c: i64) -> i64 {
    let s = dedekind_s_fast(d, c).expect("c >= 1");
    let v = s * Ratio::from_integer(6 * c);
    debug_assert!(v.is_integer() || gcd(d, c) != 1);
    v.to_integer()
}

/// `s(a,c) - s(-c,a) - (-1/4 + (c/a + a/c + 1/(ac))/12)`, with both Dedekind
/// sums taken from the definition.
pub fn dedekind_reciprocity_defect(a: i64, c: i64) -> Result<Ratio<i64>> {
    if a < 1 || c < 1 {
        return Err(Error::InvalidArgument(format!(
            "reciprocity needs positive arguments, got ({a}, {c})"
        )));
    }
    if gcd(a, c) != 1 {
        return Err(Error::NotCoprime { a, c });
    }
    let lhs = dedekind_s(a, c)? - dedekind_s(-c, a)?;
    let rhs = Ratio::new(-1, 4)
        + (Ratio::new(c, a) + Ratio::new(a, c) + Ratio::new(1, a * c)) / 12;
    Ok(lhs - rhs)
}

fn check_sl2_positive_c(g: &Matrix2) -> Result<()> {
    let reject = |reason| Error::InvalidMatrix {
        a: g.a,
        b: g.b,
        c: g.c,
        d: g.d,
        reason,
    };
    if !g.is_sl2() {
        return Err(reject("determinant is not 1"));
    }
    if g.c <= 0 {
        return Err(reject("lower-left entry must be positive"));
    }
    Ok(())
}

/// Phase of the eta multiplier in turns, reduced to `[0, 1)`:
/// `eta(g tau) = e(turns) (c tau + d)^{1/2} eta(tau)` with the principal root.
pub fn eta_multiplier_turns(g: &Matrix2) -> Result<Ratio<i64>> {
    check_sl2_positive_c(g)?;
    let s = dedekind_s_fast(g.d, g.c)?;
    let t = -s / 2 + Ratio::new(g.a + g.d, 24 * g.c) - Ratio::new(1, 8);
    Ok(t - t.floor())
}

/// The eta multiplier `epsilon(g)` for `c > 0`.
pub fn eta_multiplier(g: &Matrix2) -> Result<ComplexValue> {
    let t = eta_multiplier_turns(g)?;
    Ok(ComplexValue::root_of_unity(
        *t.numer() as i128,
        *t.denom() as i128,
    ))
}

/// `rho_{N|h}(g) = e(-cd/(Nh))` on `Gamma_0(N)`.
pub fn rho_nh(g: &Matrix2, level: i64, h: i64) -> Result<ComplexValue> {
    if level < 1 || h < 1 || g.c % level != 0 {
        return Err(Error::LevelMismatch(format!(
            "{g} is not in Gamma0({level})"
        )));
    }
    if gcd(level, 24) % h != 0 {
        return Err(Error::LevelMismatch(format!(
            "h = {h} does not divide gcd({level}, 24)"
        )));
    }
    Ok(ComplexValue::root_of_unity(
        -(g.c as i128) * g.d as i128,
        (level * h) as i128,
    ))
}

/// Parameters of `G(a, b, c) = sum_{n mod |c|} e_c(a n^2 + b n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GaussSumParams {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl GaussSumParams {
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        Self { a, b, c }
    }
}

/// Powers `e(k/n)` for `0 <= k < n`.
#[derive(Clone, Debug)]
pub struct RootTable {
    n: i64,
    roots: Vec<ComplexValue>,
}

impl RootTable {
    pub fn new(n: i64) -> Self {
        assert!(n >= 1);
        let roots = (0..n)
            .map(|k| ComplexValue::root_of_unity(k as i128, n as i128))
            .collect();
        Self { n, roots }
    }

    pub fn get(&self, k: i64) -> ComplexValue {
        self.roots[k.rem_euclid(self.n) as usize]
    }

    /// `sum_k counts[k] e(k/n)`.
    pub fn weighted_sum(&self, counts: &[i64]) -> ComplexValue {
        let mut acc = ComplexValue::ZERO;
        for (k, &m) in counts.iter().enumerate() {
            if m != 0 {
                acc += self.roots[k].scale(DoubleDouble::from_i128(m as i128));
            }
        }
        acc
    }
}

/// Residue histogram of `a n^2 + b n mod c` over `n mod c`.
fn quadratic_histogram(a: i64, b: i64, c: i64) -> Vec<i64> {
    let mut counts = vec![0i64; c as usize];
    let a = a.rem_euclid(c) as i128;
    let b = b.rem_euclid(c) as i128;
    let c128 = c as i128;
    let mut value: i128 = 0;
    for n in 0..c128 {
        counts[value as usize] += 1;
        // f(n+1) - f(n) = a(2n+1) + b
        value = (value + a * (2 * n + 1) + b) % c128;
    }
    counts
}

/// `G(a, b, c)` by direct summation over `n mod |c|`.
pub fn gauss_brute(p: GaussSumParams) -> Result<ComplexValue> {
    if p.c == 0 {
        return Err(Error::InvalidArgument("Gauss sum modulus is 0".into()));
    }
    let c = p.c.abs();
    let v = gauss_brute_with(&RootTable::new(c), p.a, p.b);
    Ok(if p.c < 0 { v.conj() } else { v })
}

/// Brute-force Gauss sum with a caller-supplied root table for modulus `c > 0`.
pub fn gauss_brute_with(table: &RootTable, a: i64, b: i64) -> ComplexValue {
    table.weighted_sum(&quadratic_histogram(a, b, table.n))
}

fn sqrt_int(n: i64) -> DoubleDouble {
    DoubleDouble::from_i128(n as i128).sqrt()
}

fn e_frac(num: i128, den: i128) -> ComplexValue {
    ComplexValue::root_of_unity(num, den)
}

/// `G(a, b, c)` through the reduction rules: gcd pull-out, multiplicative
/// splitting, the `b = 0` evaluations, vanishing for `4 | c` with odd `b`,
/// and completing the square.
pub fn gauss_closed(p: GaussSumParams) -> Result<ComplexValue> {
    if p.c == 0 {
        return Err(Error::InvalidArgument("Gauss sum modulus is 0".into()));
    }
    let v = gauss_closed_pos(p.a, p.b, p.c.abs())?;
    Ok(if p.c < 0 { v.conj() } else { v })
}

fn gauss_closed_pos(a: i64, b: i64, c: i64) -> Result<ComplexValue> {
    let a = a.rem_euclid(c);
    let b = b.rem_euclid(c);
    if c == 1 {
        return Ok(ComplexValue::ONE);
    }
    if c == 2 {
        let v = if (a + b) % 2 == 0 { 2 } else { 0 };
        return Ok(ComplexValue::from_i128(v));
    }
    let g = gcd(a, c);
    if g > 1 {
        if b % g != 0 {
            return Ok(ComplexValue::ZERO);
        }
        let inner = gauss_closed_pos(a / g, b / g, c / g)?;
        return Ok(inner.scale(DoubleDouble::from_i128(g as i128)));
    }
    if b == 0 {
        return Ok(if c % 4 == 2 {
            ComplexValue::ZERO
        } else if c % 2 == 1 {
            eps_d(c)?.scale(sqrt_int(c) * DoubleDouble::new(jacobi(a, c) as f64))
        } else {
            let one_plus_i = ComplexValue::from_f64(1.0, 1.0);
            let eps_inv = eps_d(a)?.conj();
            (one_plus_i * eps_inv).scale(sqrt_int(c) * DoubleDouble::new(jacobi(c, a) as f64))
        });
    }
    if c % 4 == 0 && b % 2 == 1 {
        return Ok(ComplexValue::ZERO);
    }
    if c % 2 == 1 {
        let inv4a = mod_inv(4 * a, c).expect("4a is a unit mod odd c");
        let shift = (inv4a as i128 * (b as i128 * b as i128)) % c as i128;
        return Ok(e_frac(-shift, c as i128) * gauss_closed_pos(a, 0, c)?);
    }
    if b % 2 == 0 {
        let inva = mod_inv(a, c).expect("a is a unit");
        let half = (b / 2) as i128;
        let shift = (inva as i128 * half * half) % c as i128;
        return Ok(e_frac(-shift, c as i128) * gauss_closed_pos(a, 0, c)?);
    }
    if c % 4 == 2 {
        let h = c / 2;
        return Ok(gauss_closed_pos(2 * a, b, h)? * gauss_closed_pos(h * a, b, 2)?);
    }
    Err(Error::UnhandledCase { a, b, c })
}

/// Closed form for `G(2 d', d' - r', c)` with `d'` an inverse of `d` mod `c`.
pub fn gauss_skew_closed(d: i64, rprime: i64, c: i64) -> Result<ComplexValue> {
    gauss_skew_closed_with_lift(d, rprime, c, 0)
}

/// As [`gauss_skew_closed`], using the inverse representative `d' + lift*c`.
pub fn gauss_skew_closed_with_lift(
    d: i64,
    rprime: i64,
    c: i64,
    lift: i64,
) -> Result<ComplexValue> {
    if c < 1 {
        return Err(Error::InvalidArgument(format!("modulus must be positive, got {c}")));
    }
    let dbar = mod_inv(d, c).ok_or(Error::NotCoprime { a: d, c })? + lift * c;
    let nu = c.trailing_zeros();
    let cp = c >> nu;
    let cp128 = cp as i128;
    let two_inv = mod_inv(2, cp).expect("odd modulus") as i128;
    let mut pow = 1i128;
    for _ in 0..nu + 3 {
        pow = (pow * two_inv) % cp128;
    }
    let diff = (dbar - rprime) as i128;
    let arg = (pow * (d as i128).rem_euclid(cp128) % cp128 * (diff * diff % cp128)) % cp128;
    let two_nu1 = 1i64 << (nu + 1);
    let pre = e_frac(-arg, cp128)
        * eps_d(cp)?.scale(sqrt_int(cp) * DoubleDouble::new(jacobi(two_nu1 * (d % cp), cp) as f64));
    let beta = if nu == 0 {
        ComplexValue::ONE
    } else if rprime % 2 == 0 {
        ComplexValue::ZERO
    } else if nu == 1 {
        ComplexValue::from_i128(2)
    } else if nu == 2 {
        if diff.rem_euclid(4) == 0 {
            ComplexValue::ZERO
        } else {
            ComplexValue::from_i128(4)
        }
    } else if diff.rem_euclid(4) != 0 {
        ComplexValue::ZERO
    } else {
        let m = 1i64 << (nu - 1);
        let cb = mod_inv(cp, m).expect("odd") as i128;
        let dd = d.rem_euclid(c);
        let x = (diff * diff / 16).rem_euclid(m as i128);
        let phase = e_frac(-(cb * dd as i128 % m as i128) * x, m as i128);
        let eps_inv = eps_d((dd % 4) * (cp % 4))?.conj();
        let j = jacobi(two_nu1, cp * dd) as f64;
        (ComplexValue::from_f64(1.0, 1.0) * phase * eps_inv)
            .scale(sqrt_int(two_nu1) * DoubleDouble::new(j))
    };
    Ok(pre * beta)
}

fn require_unit(a: i64, c: i64) -> Result<()> {
    if c < 1 {
        return Err(Error::InvalidArgument(format!("modulus must be positive, got {c}")));
    }
    if gcd(a, c) != 1 {
        return Err(Error::NotCoprime { a, c });
    }
    Ok(())
}

/// `f(c, a, r) = e_{4c}(-r) G(2a, a - r, c) / sqrt(c)`, Gauss sum by brute force.
pub fn f_single(c: i64, a: i64, r: i64) -> Result<ComplexValue> {
    require_unit(a, c)?;
    let g = gauss_brute(GaussSumParams::new(2 * a, a - r, c))?;
    Ok((e_frac(-(r as i128), 4 * c as i128) * g).scale(sqrt_int(c).recip()))
}

/// `F(c, a, r) = f(c, a, r) - f(c, a, -r)` for odd `r`.
pub fn f_fun(c: i64, a: i64, r: i64) -> Result<ComplexValue> {
    if r % 2 == 0 {
        return Err(Error::EvenR(r));
    }
    f_fun_any_parity(c, a, r)
}

/// `F(c, a, r)` without the parity restriction on `r`.
pub fn f_fun_any_parity(c: i64, a: i64, r: i64) -> Result<ComplexValue> {
    Ok(f_single(c, a, r)? - f_single(c, a, -r)?)
}

/// `g_0(c, a, r) = i (-4/r) e_{8c}(a'(1 - r^2)) e^{-3 pi i s(a, c)}`, `a'` the
/// inverse of `a` mod `c`.
pub fn g0_fun(c: i64, a: i64, r: i64) -> Result<ComplexValue> {
    if r % 2 == 0 {
        return Err(Error::EvenR(r));
    }
    g0_fun_with_lift(c, a, r, 0)
}

/// `g_0` with the inverse representative `a' + lift*c`; any parity of `r`.
pub fn g0_fun_with_lift(c: i64, a: i64, r: i64, lift: i64) -> Result<ComplexValue> {
    require_unit(a, c)?;
    let chi = chi_minus4(r);
    if chi == 0 {
        return Ok(ComplexValue::ZERO);
    }
    let abar = (mod_inv(a, c).expect("unit") + lift * c) as i128;
    let s6 = dedekind_6c(a, c) as i128;
    // e_{8c}(a'(1-r^2)) e(-s6/(4c))
    let num = abar * (1 - (r as i128) * (r as i128)) - 2 * s6;
    let v = e_frac(num, 8 * c as i128).mul_i();
    Ok(if chi < 0 { -v } else { v })
}

/// Parameters of the Jacobi-Kloosterman sum `K_c(n, r, n', r'; N|h)` of index `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct KloostermanParams {
    pub n: i64,
    pub r: i64,
    pub nprime: i64,
    pub rprime: i64,
    pub c: i64,
    pub level: i64,
    pub h: i64,
    pub m: i64,
}

impl KloostermanParams {
    /// The `(n, r) = (0, 1)`, index 2 sums used by the Poincare coefficients.
    pub fn principal(c: i64, nprime: i64, rprime: i64, level: i64, h: i64) -> Self {
        Self {
            n: 0,
            r: 1,
            nprime,
            rprime,
            c,
            level,
            h,
            m: 2,
        }
    }
}

/// `K_c` as the full double sum over units `d` and `lambda mod c`.
pub fn kloosterman_jacobi(p: &KloostermanParams) -> Result<ComplexValue> {
    kloosterman_jacobi_with_lift(p, 0)
}

/// `K_c` with inverse representatives `d' + lift*c`.
pub fn kloosterman_jacobi_with_lift(p: &KloostermanParams, lift: i64) -> Result<ComplexValue> {
    let c = p.c;
    if c < 1 || p.level < 1 || p.h < 1 || p.m < 1 {
        return Err(Error::InvalidArgument(format!("bad Kloosterman parameters {p:?}")));
    }
    let table = RootTable::new(c);
    let nh = p.level * p.h;
    let den = lcm(nh, c) as i128;
    let mut total = ComplexValue::ZERO;
    for d in 0..c {
        if gcd(d, c) != 1 {
            continue;
        }
        let dbar = mod_inv(d, c).expect("unit") + lift * c;
        // sum over lambda of e_c(d' m lambda^2 + (d' r - r') lambda)
        let inner = gauss_brute_with(&table, dbar * p.m, dbar * p.r - p.rprime);
        let num = -(c as i128) * d as i128 * (den / nh as i128)
            + ((p.nprime * d) as i128 + dbar as i128 * p.n as i128) * (den / c as i128);
        total += e_frac(num, den) * inner;
    }
    let pre = e_frac(-(p.r as i128) * p.rprime as i128, 2 * p.m as i128 * c as i128);
    Ok(pre * total)
}

/// `K_c(0, 1, n', r'; N|h)` at index 2 through the skew Gauss-sum closed
/// form, `O(c)` work.
pub fn kloosterman_principal_fast(
    c: i64,
    nprime: i64,
    rprime: i64,
    level: i64,
    h: i64,
) -> Result<ComplexValue> {
    if c < 1 || level < 1 || h < 1 {
        return Err(Error::InvalidArgument(format!(
            "bad Kloosterman parameters c={c}, N={level}, h={h}"
        )));
    }
    let nh = level * h;
    let den = lcm(nh, c) as i128;
    let mut total = ComplexValue::ZERO;
    for d in 0..c {
        if gcd(d, c) != 1 {
            continue;
        }
        let num = -(c as i128) * d as i128 * (den / nh as i128)
            + (nprime * d) as i128 * (den / c as i128);
        total += e_frac(num, den) * gauss_skew_closed(d, rprime, c)?;
    }
    Ok(e_frac(-(rprime as i128), 4 * c as i128) * total)
}

/// `S(k, c) = sum_{d mod c unit} e^{-3 pi i s(d, c)} e(-cd/(Nh)) e(kd/c)`.
pub fn kloosterman_classical(k: i64, c: i64, level: i64, h: i64) -> Result<ComplexValue> {
    if c < 1 || level < 1 || h < 1 {
        return Err(Error::InvalidArgument(format!(
            "bad Kloosterman parameters c={c}, N={level}, h={h}"
        )));
    }
    let nh = (level * h) as i128;
    let c128 = c as i128;
    let den = (lcm(4 * c, level * h)) as i128;
    let mut total = ComplexValue::ZERO;
    for d in 0..c {
        if gcd(d, c) != 1 {
            continue;
        }
        let s6 = dedekind_6c(d, c) as i128;
        let d128 = d as i128;
        let num = -s6 * (den / (4 * c128)) - c128 * d128 * (den / nh)
            + (k as i128 * d128).rem_euclid(c128) * (den / c128);
        total += e_frac(num.rem_euclid(den), den);
    }
    Ok(total)
}

/// `k = (1 - D')/8` for `D' = r'^2 - 8n'`; defined exactly when `r'` is odd.
pub fn classical_index(nprime: i64, rprime: i64) -> Result<i64> {
    let dp = rprime * rprime - 8 * nprime;
    if (1 - dp).rem_euclid(8) != 0 {
        return Err(Error::ParityViolation(dp));
    }
    Ok((1 - dp) / 8)
}

/// Both sides of the reduction of Jacobi-Kloosterman sums to classical ones.
#[derive(Clone, Copy, Debug)]
pub struct ReductionSides {
    pub lhs: ComplexValue,
    pub rhs: ComplexValue,
}

impl ReductionSides {
    pub fn defect(&self) -> ComplexValue {
        self.lhs - self.rhs
    }
}

/// `(K_c(r') - K_c(-r'))/sqrt(c)` against `2 (-4/r') e(3/4) S(k, c)`; the
/// Jacobi-Kloosterman sums are evaluated by the full double sum.
pub fn reduction_identity_sides(
    c: i64,
    nprime: i64,
    rprime: i64,
    level: i64,
    h: i64,
) -> Result<ReductionSides> {
    if level < 1 || c < 1 || c % level != 0 {
        return Err(Error::LevelMismatch(format!("{level} does not divide {c}")));
    }
    let k = classical_index(nprime, rprime)?;
    let kp = kloosterman_jacobi(&KloostermanParams::principal(c, nprime, rprime, level, h))?;
    let km = kloosterman_jacobi(&KloostermanParams::principal(c, nprime, -rprime, level, h))?;
    let lhs = (kp - km).scale(sqrt_int(c).recip());
    let s = kloosterman_classical(k, c, level, h)?;
    let rhs = (e_frac(3, 4) * s).scale(DoubleDouble::new(2.0 * chi_minus4(rprime) as f64));
    Ok(ReductionSides { lhs, rhs })
}

/// LHS minus RHS of [`reduction_identity_sides`].
pub fn reduction_identity_defect(
    c: i64,
    nprime: i64,
    rprime: i64,
    level: i64,
    h: i64,
) -> Result<ComplexValue> {
    Ok(reduction_identity_sides(c, nprime, rprime, level, h)?.defect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: ComplexValue, b: ComplexValue, tol: f64) -> bool {
        (a - b).abs_f64() < tol
    }

    #[test]
    fn kronecker_values() {
        assert_eq!(kronecker(3, 5), -1);
        assert_eq!(kronecker(2, 7), 1);
        for n in 1..40 {
            assert_eq!(kronecker(1, n), 1);
        }
        // Legendre symbol oracle for p = 11 via Euler's criterion
        for a in 0..11i64 {
            let e = (0..5).fold(1i64, |acc, _| acc * a % 11);
            let leg = match e {
                0 => 0,
                1 => 1,
                _ => -1,
            };
            assert_eq!(kronecker(a, 11), leg, "a = {a}");
        }
        assert_eq!(kronecker(5, 8), -1);
        assert_eq!(kronecker(-1, -1), -1);
        assert_eq!(kronecker(4, 2), 0);
    }

    #[test]
    fn eps_values() {
        assert_eq!(eps_d(1).unwrap(), ComplexValue::ONE);
        assert_eq!(eps_d(3).unwrap(), ComplexValue::I);
        assert_eq!(eps_d(-1).unwrap(), ComplexValue::I);
        assert!(matches!(eps_d(4), Err(Error::EvenArgument(4))));
    }

    #[test]
    fn sawtooth_values() {
        assert_eq!(sawtooth(Ratio::new(1, 3)), Ratio::new(-1, 6));
        assert_eq!(sawtooth(Ratio::from_integer(2)), Ratio::zero());
        assert_eq!(sawtooth(Ratio::new(-1, 4)), Ratio::new(1, 4));
    }

    #[test]
    fn dedekind_values() {
        assert_eq!(dedekind_s(0, 1).unwrap(), Ratio::zero());
        assert_eq!(dedekind_s(1, 3).unwrap(), Ratio::new(1, 18));
        // definition via sawtooth, as an independent oracle
        for c in 1..30i64 {
            for a in -c..2 * c {
                let mut s = Ratio::zero();
                for n in 0..c {
                    s += sawtooth(Ratio::new(n, c)) * sawtooth(Ratio::new(n * a, c));
                }
                assert_eq!(dedekind_s(a, c).unwrap(), s);
                assert_eq!(dedekind_s_fast(a, c).unwrap(), s, "({a},{c})");
                assert_eq!(dedekind_s(-a, c).unwrap(), -s);
            }
        }
    }

    #[test]
    fn reciprocity_examples() {
        for (a, c) in [(1, 1), (2, 5), (7, 311)] {
            assert_eq!(dedekind_reciprocity_defect(a, c).unwrap(), Ratio::zero());
        }
        assert!(matches!(
            dedekind_reciprocity_defect(4, 6),
            Err(Error::NotCoprime { .. })
        ));
    }

    #[test]
    fn gauss_examples() {
        let g = gauss_brute(GaussSumParams::new(1, 0, 3)).unwrap();
        assert!(close(g, ComplexValue::from_f64(0.0, 3f64.sqrt()), 1e-15));
        assert!(gauss_brute(GaussSumParams::new(1, 0, 2)).unwrap().abs_f64() < 1e-30);
        assert!(close(
            gauss_brute(GaussSumParams::new(0, 0, 9)).unwrap(),
            ComplexValue::from_i128(9),
            1e-30
        ));
        let g15 = gauss_closed(GaussSumParams::new(1, 0, 15)).unwrap();
        assert!(close(g15, ComplexValue::from_f64(0.0, 15f64.sqrt()), 1e-15));
        let split = gauss_brute(GaussSumParams::new(3, 0, 5)).unwrap()
            * gauss_brute(GaussSumParams::new(5, 0, 3)).unwrap();
        assert!(close(g15, split, 1e-28));
        assert!(gauss_closed(GaussSumParams::new(2, 1, 4)).unwrap().abs_f64() < 1e-30);
        let lhs = gauss_closed(GaussSumParams::new(2, 2, 4)).unwrap();
        let rhs = gauss_brute(GaussSumParams::new(1, 1, 2)).unwrap().scale(DoubleDouble::new(2.0));
        assert!(close(lhs, rhs, 1e-28));
    }

    #[test]
    fn gauss_closed_small_sweep() {
        for c in 1..=40 {
            let table = RootTable::new(c);
            for a in 0..c {
                for b in 0..c {
                    let brute = gauss_brute_with(&table, a, b);
                    let closed = gauss_closed(GaussSumParams::new(a, b, c)).unwrap();
                    assert!(close(brute, closed, 1e-20), "G({a},{b},{c})");
                }
            }
        }
        let neg = gauss_closed(GaussSumParams::new(3, 2, -7)).unwrap();
        let negb = gauss_brute(GaussSumParams::new(3, 2, -7)).unwrap();
        assert!(close(neg, negb, 1e-25));
    }

    #[test]
    fn gauss_skew_small_sweep() {
        for c in 1..=64 {
            let table = RootTable::new(c);
            for d in 0..c {
                if gcd(d, c) != 1 {
                    continue;
                }
                let dbar = mod_inv(d, c).unwrap();
                for rp in -9..=9 {
                    let brute = gauss_brute_with(&table, 2 * dbar, dbar - rp);
                    let closed = gauss_skew_closed(d, rp, c).unwrap();
                    assert!(close(brute, closed, 1e-20), "c={c} d={d} r'={rp}");
                }
            }
        }
        assert!(close(gauss_skew_closed(0, 3, 1).unwrap(), ComplexValue::ONE, 1e-30));
        assert!(matches!(
            gauss_skew_closed(2, 1, 4),
            Err(Error::NotCoprime { .. })
        ));
    }

    #[test]
    fn f_and_g0_anchors() {
        for r in [-5i64, -3, -1, 1, 3, 5, 7] {
            let f = f_fun(1, 0, r).unwrap();
            let expect = e_frac(-(r as i128), 4) - e_frac(r as i128, 4);
            assert!(close(f, expect, 1e-30));
            let chi = chi_minus4(r) as f64;
            assert!(close(expect, ComplexValue::from_f64(0.0, -2.0 * chi), 1e-30));
            let g0 = g0_fun(1, 0, r).unwrap();
            assert!(close(g0, ComplexValue::from_f64(0.0, chi), 1e-30));
        }
        let f = f_fun(5, 2, 3).unwrap();
        let g = g0_fun(5, 2, 3).unwrap();
        assert!(close(f, -g.scale(DoubleDouble::new(2.0)), 1e-25));
        assert!(matches!(f_fun(5, 2, 2), Err(Error::EvenR(2))));
    }

    #[test]
    fn f_translation_and_even_vanishing() {
        for (c, a) in [(7, 3), (12, 5), (9, 2)] {
            for r in [-3, 1, 5] {
                let x = f_fun(c, a, r).unwrap();
                let y = f_fun(c, a + c, r).unwrap();
                assert!(close(x, y, 1e-25));
            }
            for r in [-4, 0, 2, 6] {
                assert!(f_fun_any_parity(c, a, r).unwrap().abs_f64() < 1e-25);
                assert!(g0_fun_with_lift(c, a, r, 0).unwrap().abs_f64() < 1e-30);
            }
        }
    }

    #[test]
    fn g0_inversion_law() {
        // g0(c,a,r) = g0(a,-c,r) zeta_8^3 e_{8ac}(-a^2 - c^2 - r^2)
        for c in 1..25i64 {
            for a in 1..25i64 {
                if gcd(a, c) != 1 {
                    continue;
                }
                for r in [-5i64, -1, 1, 3, 7] {
                    let lhs = g0_fun(c, a, r).unwrap();
                    let rhs = g0_fun(a, -c, r).unwrap()
                        * e_frac(3, 8)
                        * e_frac(-(a * a + c * c + r * r) as i128, 8 * (a * c) as i128);
                    assert!(close(lhs, rhs, 1e-25), "c={c} a={a} r={r}");
                }
            }
        }
    }

    #[test]
    fn eta_multiplier_against_product() {
        use num::complex::Complex64;
        fn eta(t: Complex64) -> Complex64 {
            let q = (Complex64::i() * 2.0 * std::f64::consts::PI * t).exp();
            let mut p = Complex64::new(1.0, 0.0);
            let mut qn = q;
            for _ in 1..400 {
                p *= Complex64::new(1.0, 0.0) - qn;
                qn *= q;
            }
            (Complex64::i() * 2.0 * std::f64::consts::PI * t / 24.0).exp() * p
        }
        let tau = Complex64::new(0.1, 0.9);
        for g in [
            Matrix2::S,
            Matrix2::new(1, 0, 3, 1),
            Matrix2::new(2, 1, 5, 3),
            Matrix2::new(1, 1, 3, 4),
            Matrix2::new(3, 2, 7, 5),
            Matrix2::new(-2, 1, 5, -3),
        ] {
            let (a, b, c, d) = (g.a as f64, g.b as f64, g.c as f64, g.d as f64);
            let gt = (tau * a + b) / (tau * c + d);
            let lhs = eta(gt) / ((tau * c + d).sqrt() * eta(tau));
            let (re, im) = eta_multiplier(&g).unwrap().to_pair();
            assert!((lhs - Complex64::new(re, im)).norm() < 1e-10, "{g}");
        }
        let at_i = eta(Complex64::new(0.0, 1.0));
        let si = Complex64::new(0.0, 1.0);
        let (re, im) = eta_multiplier(&Matrix2::S).unwrap().to_pair();
        let rhs = Complex64::new(re, im) * si.sqrt() * at_i;
        assert!((eta(-si.inv()) - rhs).norm() < 1e-12);
        assert!(eta_multiplier(&Matrix2::new(1, 0, 0, 1)).is_err());
        assert!(eta_multiplier(&Matrix2::new(2, 0, 1, 1)).is_err());
    }

    #[test]
    fn rho_examples() {
        let v = rho_nh(&Matrix2::new(1, 0, 2, 1), 2, 2).unwrap();
        assert!(close(v, ComplexValue::from_i128(-1), 1e-30));
        let v = rho_nh(&Matrix2::new(1, 0, 4, 1), 2, 2).unwrap();
        assert!(close(v, ComplexValue::ONE, 1e-30));
        assert!(rho_nh(&Matrix2::new(1, 0, 3, 1), 2, 1).is_err());
        assert!(rho_nh(&Matrix2::new(1, 0, 5, 1), 5, 5).is_err());
    }

    #[test]
    fn kloosterman_basics() {
        for rp in [-3i64, -1, 1, 3] {
            let k = kloosterman_jacobi(&KloostermanParams::principal(1, 1, rp, 1, 1)).unwrap();
            assert!(close(k, e_frac(-(rp as i128), 4), 1e-30));
        }
        let s = kloosterman_classical(5, 1, 1, 1).unwrap();
        assert!(close(s, ComplexValue::ONE, 1e-30));
        for c in 1..30 {
            let p = KloostermanParams::principal(c, 2, 1, 1, 1);
            let brute = kloosterman_jacobi(&p).unwrap();
            let fast = kloosterman_principal_fast(c, 2, 1, 1, 1).unwrap();
            assert!(close(brute, fast, 1e-20), "c = {c}");
            let lifted = kloosterman_jacobi_with_lift(&p, 3).unwrap();
            assert!(close(brute, lifted, 1e-20));
        }
    }

    #[test]
    fn reduction_examples() {
        let sides = reduction_identity_sides(1, 1, 1, 1, 1).unwrap();
        assert!(close(sides.lhs, ComplexValue::from_f64(0.0, -2.0), 1e-30));
        assert!(sides.defect().abs_f64() < 1e-30);
        assert!(reduction_identity_defect(2, 1, 1, 2, 1).unwrap().abs_f64() < 1e-10);
        assert!(reduction_identity_defect(4, 1, 1, 4, 4).unwrap().abs_f64() < 1e-10);
        assert!(matches!(
            reduction_identity_defect(4, 1, 2, 4, 4),
            Err(Error::ParityViolation(_))
        ));
        assert!(matches!(
            reduction_identity_defect(3, 1, 1, 2, 1),
            Err(Error::LevelMismatch(_))
        ));
    }
}
