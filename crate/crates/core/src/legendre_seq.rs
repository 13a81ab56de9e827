//! Legendre symbols and the binary sequences `E_p(f) = (e_1, …, e_p)` with
//! `e_n = (f(n)/p)`, patched to `+1` where `p | f(n)`.

use crate::error::{Error, Result};
use crate::gf::{enumerate_irreducibles, PolyModP};
use crate::ntheory::is_prime;

/// Legendre symbol `(a/p)` by the Jacobi-symbol reciprocity recursion.
pub fn legendre_symbol(a: i64, p: u64) -> Result<i8> {
    if p.is_multiple_of(2) || !is_prime(p) {
        return Err(Error::domain(format!(
            "legendre symbol needs an odd prime modulus, got {p}"
        )));
    }
    Ok(jacobi((a as i128).rem_euclid(p as i128) as u64, p))
}

/// Jacobi symbol `(a/n)` for odd `n`.
pub(crate) fn jacobi(mut a: u64, mut n: u64) -> i8 {
    debug_assert!(n % 2 == 1);
    let mut sign = 1i8;
    a %= n;
    while a != 0 {
        let tz = a.trailing_zeros();
        a >>= tz;
        // (2/n) = -1 iff n ≡ ±3 (mod 8)
        if tz % 2 == 1 && matches!(n % 8, 3 | 5) {
            sign = -sign;
        }
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut n);
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

/// A length-`p` sequence over `{-1, +1}` generated by a polynomial over `F_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LegendreSequence {
    p: u64,
    values: Vec<i8>,
    source: PolyModP,
}

impl LegendreSequence {
    pub fn p(&self) -> u64 {
        self.p
    }

    /// `values()[n - 1] = e_n`.
    pub fn values(&self) -> &[i8] {
        &self.values
    }

    pub fn source(&self) -> &PolyModP {
        &self.source
    }
}

/// Builds `E_p(f)`. Rejects `f` with repeated factors (`gcd(f, f') ≠ 1`).
pub fn build_sequence(f: &PolyModP) -> Result<LegendreSequence> {
    let p = f.modulus();
    if p.is_multiple_of(2) {
        return Err(Error::domain("p must be an odd prime"));
    }
    if f.degree().unwrap_or(0) == 0 {
        return Err(Error::domain("generating polynomial must have degree >= 1"));
    }
    if !f.is_squarefree() {
        return Err(Error::domain(format!("{f} has multiple zeros")));
    }
    Ok(sequence_of(f))
}

fn sequence_of(f: &PolyModP) -> LegendreSequence {
    let p = f.modulus();
    // e_n for n = 1..p, the last entry evaluating at residue 0
    let values = (1..=p)
        .map(|n| match jacobi(f.eval_unchecked(n % p), p) {
            0 => 1,
            s => s,
        })
        .collect();
    LegendreSequence {
        p,
        values,
        source: f.clone(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    /// Generated by every monic irreducible polynomial of one degree.
    Irreducible,
}

/// `F_irred(k, p)`: one sequence per monic irreducible of degree `k`, in
/// lexicographic polynomial order. Equal sequences stay separate members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceFamily {
    pub p: u64,
    pub k: usize,
    pub kind: FamilyKind,
    pub members: Vec<LegendreSequence>,
}

pub fn build_family(p: u64, k: usize, budget: u64) -> Result<SequenceFamily> {
    let members = enumerate_irreducibles(p, k, budget)?
        .map(|f| sequence_of(&f))
        .collect();
    Ok(SequenceFamily {
        p,
        k,
        kind: FamilyKind::Irreducible,
        members,
    })
}
