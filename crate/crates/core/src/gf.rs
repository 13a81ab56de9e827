//! Polynomial arithmetic over prime fields and arithmetic in the extension
//! fields `F_{p^k} = F_p[t]/(m(t))`.
//!
//! Besides the usual ring operations this module provides the norm, trace and
//! quadratic character of extension elements, the coefficient-wise Frobenius
//! twist `τ_s` of a polynomial with extension coefficients together with the
//! norm polynomial `τ_0(f)·τ_1(f)⋯τ_{k-1}(f)`, and an exhaustive counter for
//! quadratic-character patterns `γ(α + i_s) = ε_s`.

use std::fmt;

use crate::error::{Error, Result};
use crate::ntheory::{is_prime, prime_divisors};

/// Default cap on the number of field elements (or candidate polynomials) a
/// single enumeration may visit.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 1 << 20;

#[inline]
fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % p as u128) as u64
}

#[inline]
fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        p - (b - a)
    }
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::domain(format!("p = {p} is not prime")))
    }
}

fn require_odd_prime(p: u64) -> Result<()> {
    if p % 2 == 1 && is_prime(p) {
        Ok(())
    } else {
        Err(Error::domain("p must be an odd prime"))
    }
}

/// Dense polynomial over `F_p`, lowest degree first, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyModP {
    p: u64,
    coeffs: Vec<u64>,
}

impl PolyModP {
    /// Builds a polynomial from low-to-high coefficients, reducing them mod `p`.
    pub fn new(p: u64, coeffs: Vec<u64>) -> Result<Self> {
        require_prime(p)?;
        Ok(Self::from_raw(p, coeffs))
    }

    /// Builds a polynomial from signed low-to-high coefficients.
    pub fn from_signed(p: u64, coeffs: &[i64]) -> Result<Self> {
        require_prime(p)?;
        let pi = p as i128;
        let reduced = coeffs
            .iter()
            .map(|&c| (c as i128).rem_euclid(pi) as u64)
            .collect();
        Ok(Self::from_raw(p, reduced))
    }

    pub(crate) fn from_raw(p: u64, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { p, coeffs }
    }

    pub fn zero(p: u64) -> Self {
        Self {
            p,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(p: u64, c: u64) -> Self {
        Self::from_raw(p, vec![c])
    }

    /// The polynomial `x`.
    pub fn x(p: u64) -> Self {
        Self {
            p,
            coeffs: vec![0, 1],
        }
    }

    /// The `index`-th monic polynomial of degree `k` in lexicographic order of
    /// `(a_{k-1}, …, a_0)`, i.e. `index = Σ a_i p^i`.
    pub fn monic_from_index(p: u64, k: usize, mut index: u64) -> Self {
        let mut coeffs = Vec::with_capacity(k + 1);
        for _ in 0..k {
            coeffs.push(index % p);
            index /= p;
        }
        coeffs.push(1);
        Self { p, coeffs }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Coefficients, lowest degree first.
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    /// Horner evaluation at a residue `x ∈ [0, p)`.
    pub fn eval(&self, x: u64) -> Result<u64> {
        if x >= self.p {
            return Err(Error::domain(format!(
                "{x} is not a residue mod {}",
                self.p
            )));
        }
        Ok(self.eval_unchecked(x))
    }

    pub(crate) fn eval_unchecked(&self, x: u64) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| add_mod(mul_mod(acc, x, self.p), c, self.p))
    }

    fn same_field(&self, other: &Self) {
        assert_eq!(self.p, other.p, "polynomials over different prime fields");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_field(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| add_mod(self.coeff(i), other.coeff(i), self.p))
            .collect();
        Self::from_raw(self.p, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.same_field(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| sub_mod(self.coeff(i), other.coeff(i), self.p))
            .collect();
        Self::from_raw(self.p, coeffs)
    }

    pub fn scale(&self, c: u64) -> Self {
        let c = c % self.p;
        Self::from_raw(
            self.p,
            self.coeffs.iter().map(|&a| mul_mod(a, c, self.p)).collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same_field(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p as u128;
        let mut acc = vec![0u128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u128 * b as u128) % p;
            }
        }
        Self::from_raw(self.p, acc.into_iter().map(|c| c as u64).collect())
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        self.same_field(divisor);
        let dd = divisor.degree().expect("division by the zero polynomial");
        let p = self.p;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(p), self.clone());
        }
        let lead_inv = inv_mod(divisor.leading(), p);
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = mul_mod(rem[i], lead_inv, p);
            if c == 0 {
                continue;
            }
            quot[i - dd] = c;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = sub_mod(rem[idx], mul_mod(c, d, p), p);
            }
        }
        rem.truncate(dd);
        (Self::from_raw(p, quot), Self::from_raw(p, rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Scales to leading coefficient 1 (zero stays zero).
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.leading(), self.p))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mul_mod(c, i as u64 % self.p, self.p))
            .collect();
        Self::from_raw(self.p, coeffs)
    }

    /// `self^exp mod modulus` by square-and-multiply.
    pub fn pow_mod(&self, mut exp: u64, modulus: &Self) -> Self {
        let mut base = self.rem(modulus);
        let mut acc = Self::constant(self.p, 1).rem(modulus);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            exp >>= 1;
        }
        acc
    }

    /// `gcd(f, f') = 1`.
    pub fn is_squarefree(&self) -> bool {
        let d = self.derivative();
        if d.is_zero() {
            return self.degree() == Some(0);
        }
        self.gcd(&d).degree() == Some(0)
    }
}

impl fmt::Display for PolyModP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}x")?,
                (i, 1) => write!(f, "x^{i}")?,
                (i, c) => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Rabin's test: a monic `f` of degree `k` is irreducible iff
/// `x^{p^k} ≡ x (mod f)` and `gcd(x^{p^{k/r}} - x, f) = 1` for each prime `r | k`.
pub fn is_irreducible(f: &PolyModP) -> Result<bool> {
    if !f.is_monic() {
        return Err(Error::domain(
            "irreducibility test expects a monic polynomial",
        ));
    }
    let k = match f.degree() {
        Some(0) | None => return Err(Error::domain("irreducibility test expects degree >= 1")),
        Some(k) => k,
    };
    if k == 1 {
        return Ok(true);
    }
    let p = f.modulus();
    let x = PolyModP::x(p).rem(f);
    // frob[i] = x^{p^i} mod f
    let mut frob = Vec::with_capacity(k + 1);
    frob.push(x.clone());
    for i in 1..=k {
        let next = frob[i - 1].pow_mod(p, f);
        frob.push(next);
    }
    if frob[k] != x {
        return Ok(false);
    }
    for r in prime_divisors(k as u64) {
        let h = frob[k / r as usize].sub(&x);
        if f.gcd(&h).degree() != Some(0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Lexicographic stream of the monic irreducible polynomials of a fixed degree.
#[derive(Debug, Clone)]
pub struct MonicIrreducibles {
    p: u64,
    k: usize,
    next: u64,
    end: u64,
}

impl Iterator for MonicIrreducibles {
    type Item = PolyModP;

    fn next(&mut self) -> Option<PolyModP> {
        while self.next < self.end {
            let f = PolyModP::monic_from_index(self.p, self.k, self.next);
            self.next += 1;
            if is_irreducible(&f).expect("candidate is monic of degree >= 1") {
                return Some(f);
            }
        }
        None
    }
}

fn candidate_count(p: u64, k: usize, budget: u64) -> Result<u64> {
    let total = u32::try_from(k)
        .ok()
        .and_then(|k| p.checked_pow(k))
        .filter(|&n| n <= budget)
        .ok_or_else(|| {
            Error::resource(format!(
                "{p}^{k} candidates exceed the enumeration budget of {budget}"
            ))
        })?;
    Ok(total)
}

/// Monic irreducibles of degree `k` over any prime field, including `p = 2`.
pub fn monic_irreducibles(p: u64, k: usize, budget: u64) -> Result<MonicIrreducibles> {
    require_prime(p)?;
    if k == 0 {
        return Err(Error::domain("degree must be at least 1"));
    }
    let end = candidate_count(p, k, budget)?;
    Ok(MonicIrreducibles { p, k, next: 0, end })
}

/// Monic irreducibles of degree `k` over `F_p` for an odd prime `p`, in
/// lexicographic order of `(a_{k-1}, …, a_0)`.
pub fn enumerate_irreducibles(p: u64, k: usize, budget: u64) -> Result<MonicIrreducibles> {
    require_odd_prime(p)?;
    monic_irreducibles(p, k, budget)
}

/// The extension `F_{p^k} = F_p[t]/(m(t))` for a monic irreducible `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtField {
    p: u64,
    k: usize,
    modulus: PolyModP,
    order: u64,
}

impl ExtField {
    /// Uses the lexicographically first monic irreducible of degree `k` as modulus.
    pub fn new(p: u64, k: usize) -> Result<Self> {
        require_odd_prime(p)?;
        if k == 0 {
            return Err(Error::domain("extension degree must be at least 1"));
        }
        let order = candidate_count(p, k, u64::MAX)?;
        let modulus = MonicIrreducibles {
            p,
            k,
            next: 0,
            end: order,
        }
        .next()
        .expect("irreducibles of every degree exist");
        Ok(Self {
            p,
            k,
            modulus,
            order,
        })
    }

    pub fn with_modulus(modulus: PolyModP) -> Result<Self> {
        let p = modulus.modulus();
        require_odd_prime(p)?;
        if !is_irreducible(&modulus)? {
            return Err(Error::domain(format!("modulus {modulus} is reducible")));
        }
        let k = modulus.degree().expect("irreducible has a degree");
        let order = candidate_count(p, k, u64::MAX)?;
        Ok(Self {
            p,
            k,
            modulus,
            order,
        })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn modulus(&self) -> &PolyModP {
        &self.modulus
    }

    /// Number of elements, `p^k`.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Reduces a prime-field polynomial into the field.
    pub fn element(&self, rep: &PolyModP) -> Result<ExtFieldElement<'_>> {
        if rep.modulus() != self.p {
            return Err(Error::FieldMismatch);
        }
        Ok(ExtFieldElement {
            field: self,
            rep: rep.rem(&self.modulus),
        })
    }

    pub fn zero(&self) -> ExtFieldElement<'_> {
        ExtFieldElement {
            field: self,
            rep: PolyModP::zero(self.p),
        }
    }

    pub fn one(&self) -> ExtFieldElement<'_> {
        self.constant(1)
    }

    /// Embeds a prime-field residue.
    pub fn constant(&self, c: u64) -> ExtFieldElement<'_> {
        ExtFieldElement {
            field: self,
            rep: PolyModP::constant(self.p, c),
        }
    }

    /// The class of `t`, a root of the modulus.
    pub fn root(&self) -> ExtFieldElement<'_> {
        ExtFieldElement {
            field: self,
            rep: PolyModP::x(self.p).rem(&self.modulus),
        }
    }

    /// Element with coefficient vector given by the base-`p` digits of `index`.
    pub fn element_at(&self, mut index: u64) -> ExtFieldElement<'_> {
        assert!(index < self.order, "element index out of range");
        let mut coeffs = Vec::with_capacity(self.k);
        for _ in 0..self.k {
            coeffs.push(index % self.p);
            index /= self.p;
        }
        ExtFieldElement {
            field: self,
            rep: PolyModP::from_raw(self.p, coeffs),
        }
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = ExtFieldElement<'_>> + '_ {
        (0..self.order).map(move |i| self.element_at(i))
    }

    /// Quadratic character of every element, indexed like [`Self::element_at`].
    pub fn quad_char_table(&self, budget: u64) -> Result<Vec<i8>> {
        if self.order > budget {
            return Err(Error::resource(format!(
                "field of size {} exceeds the enumeration budget of {budget}",
                self.order
            )));
        }
        Ok(self.elements().map(|a| a.quad_char()).collect())
    }
}

/// An element of an [`ExtField`], stored as its reduced residue polynomial.
#[derive(Clone, Debug)]
pub struct ExtFieldElement<'a> {
    field: &'a ExtField,
    rep: PolyModP,
}

impl PartialEq for ExtFieldElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.rep == other.rep && self.field == other.field
    }
}

impl Eq for ExtFieldElement<'_> {}

impl<'a> ExtFieldElement<'a> {
    pub fn field(&self) -> &'a ExtField {
        self.field
    }

    pub fn rep(&self) -> &PolyModP {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    /// Position in [`ExtField::elements`].
    pub fn index(&self) -> u64 {
        self.rep
            .coeffs()
            .iter()
            .rev()
            .fold(0, |acc, &c| acc * self.field.p + c)
    }

    /// The residue if this element lies in the prime subfield.
    pub fn as_prime_field(&self) -> Option<u64> {
        match self.rep.degree() {
            None => Some(0),
            Some(0) => Some(self.rep.coeff(0)),
            _ => None,
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if std::ptr::eq(self.field, other.field) || self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn with_rep(&self, rep: PolyModP) -> Self {
        Self {
            field: self.field,
            rep,
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with_rep(self.rep.add(&other.rep)))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with_rep(self.rep.sub(&other.rep)))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        self.with_rep(self.rep.mul(&other.rep).rem(&self.field.modulus))
    }

    pub fn neg(&self) -> Self {
        self.with_rep(PolyModP::zero(self.field.p).sub(&self.rep))
    }

    /// Adds a prime-field residue.
    pub fn add_scalar(&self, c: u64) -> Self {
        self.with_rep(self.rep.add(&PolyModP::constant(self.field.p, c)))
    }

    pub fn pow(&self, exp: u64) -> Self {
        self.with_rep(self.rep.pow_mod(exp, &self.field.modulus))
    }

    /// `self^{p^s}`.
    pub fn frobenius(&self, s: usize) -> Self {
        (0..s % self.field.k).fold(self.clone(), |a, _| a.pow(self.field.p))
    }

    /// `α·α^p⋯α^{p^{k-1}}`, an element of the prime field.
    pub fn norm(&self) -> u64 {
        let mut acc = self.field.one();
        let mut conj = self.clone();
        for _ in 0..self.field.k {
            acc = acc.mul_unchecked(&conj);
            conj = conj.pow(self.field.p);
        }
        acc.as_prime_field().expect("norm lies in the prime field")
    }

    /// `α + α^p + ⋯ + α^{p^{k-1}}`, an element of the prime field.
    pub fn trace(&self) -> u64 {
        let mut acc = self.field.zero();
        let mut conj = self.clone();
        for _ in 0..self.field.k {
            acc = acc.with_rep(acc.rep.add(&conj.rep));
            conj = conj.pow(self.field.p);
        }
        acc.as_prime_field().expect("trace lies in the prime field")
    }

    /// Quadratic character `α^{(p^k-1)/2}` read as `±1`, and `0` at zero.
    pub fn quad_char(&self) -> i8 {
        if self.is_zero() {
            return 0;
        }
        let v = self.pow((self.field.order - 1) / 2);
        match v.as_prime_field() {
            Some(1) => 1,
            Some(c) if c == self.field.p - 1 => -1,
            _ => unreachable!("Euler criterion yields ±1"),
        }
    }
}

impl fmt::Display for ExtFieldElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep.to_string().replace('x', "t"))
    }
}

/// Polynomial in `x` with coefficients in an extension field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtPoly<'a> {
    field: &'a ExtField,
    coeffs: Vec<ExtFieldElement<'a>>,
}

impl<'a> ExtPoly<'a> {
    pub fn new(field: &'a ExtField, coeffs: Vec<ExtFieldElement<'a>>) -> Result<Self> {
        for c in &coeffs {
            if c.field != field {
                return Err(Error::FieldMismatch);
            }
        }
        let mut poly = Self { field, coeffs };
        poly.trim();
        Ok(poly)
    }

    /// Views a prime-field polynomial as one over the extension.
    pub fn lift(field: &'a ExtField, f: &PolyModP) -> Result<Self> {
        if f.modulus() != field.p {
            return Err(Error::FieldMismatch);
        }
        Self::new(
            field,
            f.coeffs().iter().map(|&c| field.constant(c)).collect(),
        )
    }

    /// `x + α`.
    pub fn linear(alpha: &ExtFieldElement<'a>) -> Self {
        Self {
            field: alpha.field,
            coeffs: vec![alpha.clone(), alpha.field.one()],
        }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[ExtFieldElement<'a>] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::new(self.field, Vec::new());
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].try_add(&a.mul_unchecked(b))?;
            }
        }
        Self::new(self.field, out)
    }

    pub fn eval(&self, x: &ExtFieldElement<'a>) -> Result<ExtFieldElement<'a>> {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.try_mul(x)?.try_add(c)?;
        }
        Ok(acc)
    }

    /// `τ_s(f)`: every coefficient raised to the power `p^s`, for `0 <= s < k`.
    pub fn tau(&self, s: usize) -> Result<Self> {
        if s >= self.field.k {
            return Err(Error::domain(format!(
                "twist index {s} outside 0..{} for a degree-{} extension",
                self.field.k, self.field.k
            )));
        }
        Ok(Self {
            field: self.field,
            coeffs: self.coeffs.iter().map(|c| c.frobenius(s)).collect(),
        })
    }

    /// `τ_0(f)·τ_1(f)⋯τ_{k-1}(f)`, which has all coefficients in `F_p`.
    pub fn norm_poly(&self) -> Result<PolyModP> {
        if self.coeffs.is_empty() {
            return Err(Error::domain("norm polynomial of the zero polynomial"));
        }
        let mut acc = self.clone();
        for s in 1..self.field.k {
            acc = acc.mul(&self.tau(s)?)?;
        }
        let coeffs = acc
            .coeffs
            .iter()
            .map(|c| {
                c.as_prime_field()
                    .expect("norm polynomial coefficient escaped F_p")
            })
            .collect();
        Ok(PolyModP::from_raw(self.field.p, coeffs))
    }
}

/// Exhaustive counter of quadratic-character patterns over one field.
///
/// Patterns are encoded as bit masks over the positions: bit `s` is set when
/// `ε_s = -1`. Elements with `α + i_s = 0` for some `s` have character value 0
/// at that position and are not counted under any pattern.
#[derive(Debug, Clone)]
pub struct PatternCounter<'a> {
    field: &'a ExtField,
    chi: Vec<i8>,
}

impl<'a> PatternCounter<'a> {
    pub fn new(field: &'a ExtField, budget: u64) -> Result<Self> {
        Ok(Self {
            field,
            chi: field.quad_char_table(budget)?,
        })
    }

    fn check_positions(&self, positions: &[u64]) -> Result<()> {
        if positions.is_empty() {
            return Err(Error::domain("at least one position is required"));
        }
        if positions.len() >= 64 {
            return Err(Error::domain("at most 63 positions are supported"));
        }
        for (i, &a) in positions.iter().enumerate() {
            if a >= self.field.p {
                return Err(Error::domain(format!(
                    "position {a} is not a residue mod {}",
                    self.field.p
                )));
            }
            if positions[..i].contains(&a) {
                return Err(Error::domain(format!("position {a} repeated")));
            }
        }
        Ok(())
    }

    /// Count for every sign pattern at once; entry `mask` is `N(ε)`.
    pub fn histogram(&self, positions: &[u64]) -> Result<Vec<u64>> {
        self.check_positions(positions)?;
        let p = self.field.p;
        let mut hist = vec![0u64; 1usize << positions.len()];
        'elements: for idx in 0..self.field.order {
            let c0 = idx % p;
            let base = idx - c0;
            let mut mask = 0usize;
            for (s, &shift) in positions.iter().enumerate() {
                let shifted = base + (c0 + shift) % p;
                match self.chi[shifted as usize] {
                    0 => continue 'elements,
                    -1 => mask |= 1 << s,
                    _ => {}
                }
            }
            hist[mask] += 1;
        }
        Ok(hist)
    }

    /// `N(ε_1, …, ε_j)`: the number of `α` with `γ(α + i_s) = ε_s` for all `s`.
    pub fn count(&self, positions: &[u64], signs: &[i8]) -> Result<u64> {
        if positions.len() != signs.len() {
            return Err(Error::domain("positions and signs differ in length"));
        }
        let mut mask = 0usize;
        for (s, &e) in signs.iter().enumerate() {
            match e {
                1 => {}
                -1 => mask |= 1 << s,
                _ => return Err(Error::domain("signs must be +1 or -1")),
            }
        }
        Ok(self.histogram(positions)?[mask])
    }

    /// Calls `visit(positions, histogram)` for every strictly increasing
    /// `j`-tuple drawn from `0..p`, in lexicographic order.
    ///
    /// Works on bit sets of the elements with character `+1` / `-1` at each
    /// shift, refining the intersections one position at a time.
    pub fn for_each_histogram(
        &self,
        j: usize,
        mut visit: impl FnMut(&[u64], &[u64]) -> Result<()>,
    ) -> Result<()> {
        if j == 0 || j >= 64 {
            return Err(Error::domain("tuple length must lie in 1..=63"));
        }
        let p = self.field.p;
        if j as u64 > p {
            return Ok(());
        }
        let order = self.field.order;
        let words = order.div_ceil(64) as usize;
        let mut plus = vec![0u64; p as usize * words];
        let mut minus = vec![0u64; p as usize * words];
        for shift in 0..p {
            let row = shift as usize * words;
            for idx in 0..order {
                let c0 = idx % p;
                let shifted = idx - c0 + (c0 + shift) % p;
                let (w, bit) = (row + (idx / 64) as usize, 1u64 << (idx % 64));
                match self.chi[shifted as usize] {
                    1 => plus[w] |= bit,
                    -1 => minus[w] |= bit,
                    _ => {}
                }
            }
        }
        let mut all = vec![u64::MAX; words];
        if !order.is_multiple_of(64) {
            all[words - 1] = (1u64 << (order % 64)) - 1;
        }
        let mut walk = TupleWalk {
            p,
            j,
            words,
            plus: &plus,
            minus: &minus,
            levels: (0..j).map(|d| vec![0u64; (1usize << d) * words]).collect(),
            positions: Vec::with_capacity(j),
            hist: vec![0u64; 1 << j],
        };
        walk.levels[0].copy_from_slice(&all);
        walk.descend(0, 0, &mut visit)
    }
}

struct TupleWalk<'b> {
    p: u64,
    j: usize,
    words: usize,
    plus: &'b [u64],
    minus: &'b [u64],
    // levels[d] holds the 2^d intersections for the first d positions
    levels: Vec<Vec<u64>>,
    positions: Vec<u64>,
    hist: Vec<u64>,
}

impl TupleWalk<'_> {
    fn descend(
        &mut self,
        depth: usize,
        first: u64,
        visit: &mut impl FnMut(&[u64], &[u64]) -> Result<()>,
    ) -> Result<()> {
        let w = self.words;
        let last = self.p - (self.j - depth) as u64;
        for shift in first..=last {
            let row = shift as usize * w;
            let (pl, mi) = (&self.plus[row..row + w], &self.minus[row..row + w]);
            self.positions.push(shift);
            if depth + 1 == self.j {
                let cur = &self.levels[depth];
                for m in 0..1usize << depth {
                    let set = &cur[m * w..(m + 1) * w];
                    let mut np = 0u64;
                    let mut nm = 0u64;
                    for i in 0..w {
                        np += (set[i] & pl[i]).count_ones() as u64;
                        nm += (set[i] & mi[i]).count_ones() as u64;
                    }
                    self.hist[m] = np;
                    self.hist[m | 1 << depth] = nm;
                }
                visit(&self.positions, &self.hist)?;
            } else {
                let (lower, upper) = self.levels.split_at_mut(depth + 1);
                let (cur, next) = (&lower[depth], &mut upper[0]);
                let half = (1usize << depth) * w;
                for m in 0..1usize << depth {
                    for i in 0..w {
                        let v = cur[m * w + i];
                        next[m * w + i] = v & pl[i];
                        next[half + m * w + i] = v & mi[i];
                    }
                }
                self.descend(depth + 1, shift + 1, visit)?;
            }
            self.positions.pop();
        }
        Ok(())
    }
}

/// `N(ε_1, …, ε_j)` by full enumeration of the field.
pub fn pattern_count(
    field: &ExtField,
    positions: &[u64],
    signs: &[i8],
    budget: u64,
) -> Result<u64> {
    PatternCounter::new(field, budget)?.count(positions, signs)
}
