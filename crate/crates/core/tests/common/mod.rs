//! Oracles shared by the integration tests. None of them goes through the
//! closed forms they are compared against.
#![allow(dead_code)]

use fcbound_core::gf::{monic_irreducibles, PolyModP};
use fcbound_core::ntheory::prime_power;

/// Positive root of `Bx + x·log2 x = A` by bisection.
pub fn bisect_root(a: f64, b: f64) -> f64 {
    let h = |x: f64| b * x + x * x.log2() - a;
    // h < 0 here: B·x + x·(-B - 2) = -2x
    let mut lo = (-b - 2.0).exp2();
    let mut hi = lo.max(1.0) * 2.0;
    while h(hi) < 0.0 {
        hi *= 2.0;
    }
    while h(lo) >= 0.0 {
        lo *= 0.5;
    }
    for _ in 0..2000 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if h(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Addition and multiplication tables of `F_q`, elements numbered by their
/// base-`p` digits over a fixed polynomial basis.
pub struct FqTables {
    pub q: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
}

impl FqTables {
    pub fn new(q: u64) -> Self {
        let (p, m) = prime_power(q).expect("prime power");
        let modulus = monic_irreducibles(p, m as usize, u64::MAX)
            .unwrap()
            .next()
            .unwrap();
        let to_poly = |mut i: u64| {
            let mut c = Vec::new();
            for _ in 0..m {
                c.push(i % p);
                i /= p;
            }
            PolyModP::new(p, c).unwrap()
        };
        let to_index = |f: &PolyModP| {
            (0..m as usize)
                .rev()
                .fold(0u64, |acc, i| acc * p + f.coeff(i))
        };
        let q = q as usize;
        let polys: Vec<PolyModP> = (0..q as u64).map(to_poly).collect();
        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        for a in 0..q {
            for b in 0..q {
                add[a * q + b] = to_index(&polys[a].add(&polys[b]).rem(&modulus)) as u16;
                mul[a * q + b] = to_index(&polys[a].mul(&polys[b]).rem(&modulus)) as u16;
            }
        }
        Self { q, add, mul }
    }

    fn add(&self, a: u16, b: u16) -> u16 {
        self.add[a as usize * self.q + b as usize]
    }

    fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.q + b as usize]
    }

    // monic polynomial of degree d from the index of its lower coefficients
    fn monic(&self, d: usize, mut idx: usize) -> Vec<u16> {
        let mut c = Vec::with_capacity(d + 1);
        for _ in 0..d {
            c.push((idx % self.q) as u16);
            idx /= self.q;
        }
        c.push(1);
        c
    }

    fn product_index(&self, f: &[u16], g: &[u16]) -> usize {
        let mut r = vec![0u16; f.len() + g.len() - 1];
        for (i, &a) in f.iter().enumerate() {
            for (j, &b) in g.iter().enumerate() {
                r[i + j] = self.add(r[i + j], self.mul(a, b));
            }
        }
        r[..r.len() - 1]
            .iter()
            .rev()
            .fold(0usize, |acc, &c| acc * self.q + c as usize)
    }
}

/// Monic irreducibles of degree `n` over `F_q`: all monic polynomials minus
/// every product of two monic factors of positive degree.
pub fn irreducible_count_by_sieve(q: u64, n: usize) -> u64 {
    let total = (q as usize).pow(n as u32);
    if n == 1 {
        return total as u64;
    }
    let t = FqTables::new(q);
    let mut reducible = vec![false; total];
    for a in 1..=n / 2 {
        let b = n - a;
        let fs: Vec<Vec<u16>> = (0..t.q.pow(a as u32)).map(|i| t.monic(a, i)).collect();
        for j in 0..t.q.pow(b as u32) {
            let g = t.monic(b, j);
            for f in &fs {
                reducible[t.product_index(f, &g)] = true;
            }
        }
    }
    reducible.iter().filter(|&&r| !r).count() as u64
}
