//! Exact integer number theory: Möbius function, divisor sums, Gauss's
//! formula for irreducible counts and the number of extension-field elements
//! that lie in a proper subfield.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact non-negative integer. Counts such as `q^n`, `I_q(n)` and the
/// subfield count never round.
pub type NaturalBig = BigUint;

/// Möbius function. Returns `1`, `0` or `-1`.
pub fn mobius(m: u64) -> Result<i8> {
    if m == 0 {
        return Err(Error::domain("mobius is undefined at 0"));
    }
    let mut value = 1i8;
    for (_, exp) in factorize(m) {
        if exp > 1 {
            return Ok(0);
        }
        value = -value;
    }
    Ok(value)
}

/// Prime factorisation by trial division, ascending primes with exponents.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Distinct prime divisors of `n`, ascending.
pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// All positive divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    if n == 0 {
        return Err(Error::domain("divisors of 0 are not enumerable"));
    }
    let mut divs = vec![1u64];
    for (p, e) in factorize(n) {
        let prev = divs.len();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            for i in 0..prev {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    Ok(divs)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for the whole `u64` range.
///
/// The first twelve primes as witnesses are sufficient for every n < 3.3·10^24.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest prime `>= n`, if one fits in `u64`.
pub fn next_prime(n: u64) -> Option<u64> {
    let mut c = n.max(2);
    loop {
        if is_prime(c) {
            return Some(c);
        }
        c = c.checked_add(1)?;
    }
}

/// Largest prime `<= n`.
pub fn prev_prime(n: u64) -> Option<u64> {
    let mut c = n;
    while c >= 2 {
        if is_prime(c) {
            return Some(c);
        }
        c -= 1;
    }
    None
}

/// Returns `(prime, exponent)` when `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    match factorize(q).as_slice() {
        [(p, e)] => Some((*p, *e)),
        _ => None,
    }
}

fn check_field_size(q: u64, n: u64) -> Result<()> {
    if q < 2 || prime_power(q).is_none() {
        return Err(Error::domain(format!("q = {q} is not a prime power")));
    }
    if n == 0 {
        return Err(Error::domain("extension degree must be at least 1"));
    }
    Ok(())
}

/// Number of monic irreducible polynomials of degree `n` over the field
/// with `q` elements: `(1/n) Σ_{d|n} μ(d) q^{n/d}`.
pub fn count_irreducibles(q: u64, n: u64) -> Result<NaturalBig> {
    check_field_size(q, n)?;
    let q_big = BigInt::from(q);
    let mut sum = BigInt::zero();
    for d in divisors(n)? {
        let term = num_traits::pow(q_big.clone(), (n / d) as usize);
        match mobius(d)? {
            1 => sum += term,
            -1 => sum -= term,
            _ => {}
        }
    }
    let n_big = BigInt::from(n);
    let rem = &sum % &n_big;
    assert!(
        rem.is_zero(),
        "Gauss divisor sum for q={q}, n={n} not divisible by n"
    );
    let (sign, mag) = (sum / n_big).into_parts();
    assert!(sign != Sign::Minus, "negative irreducible count");
    Ok(mag)
}

/// Number of elements of the degree-`n` extension of `F_q` lying in some
/// proper subfield, `q^n - n·I_q(n)`.
pub fn count_subfield_elements(q: u64, n: u64) -> Result<NaturalBig> {
    let irreducible = count_irreducibles(q, n)?;
    let total = num_traits::pow(BigUint::from(q), n as usize);
    Ok(total - irreducible * BigUint::from(n))
}

/// Base-2 logarithm of a positive big integer from its top 64 bits and bit length.
pub fn log2_of_big(x: &NaturalBig) -> Result<f64> {
    if x.is_zero() {
        return Err(Error::domain("log2 of zero"));
    }
    if x.is_one() {
        return Ok(0.0);
    }
    let bits = x.bits();
    if bits <= 64 {
        let v = x.to_u64().expect("fits in 64 bits");
        return Ok((v as f64).log2());
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().expect("top 64 bits");
    Ok((top as f64).log2() + shift as f64)
}
