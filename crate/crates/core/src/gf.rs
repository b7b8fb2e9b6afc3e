//! Finite-field towers GF(p) ⊆ GF(q) ⊆ GF(q^m) with exact arithmetic.
//!
//! Every element is identified by its integer code: the digit evaluation of
//! its coefficient list over the immediate base field (base p for GF(q)
//! elements, base q for GF(q^m) elements). Codes give a total order, which
//! makes the modulus and primitive-element scans deterministic: the first
//! irreducible monic polynomial in increasing code order wins, and the first
//! element of full multiplicative order becomes `alpha`.
//!
//! Field sizes are capped at q^m <= 2^63 so all codes fit in u64 and products
//! fit in u128. No tables are built; arithmetic reduces coefficient vectors
//! on the fly, which is plenty at the sizes this crate works with.

use crate::error::{Error, Result};
use crate::numutil;

/// Which level of the tower an element or polynomial lives at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldLevel {
    /// GF(p)
    Prime,
    /// GF(q) = GF(p^e)
    Mid,
    /// GF(q^m)
    Top,
}

/// A prime power q = p^e.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimePower {
    p: u64,
    e: u32,
    q: u64,
}

impl PrimePower {
    pub fn new(p: u64, e: u32) -> Result<Self> {
        if !numutil::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::InvalidInput("exponent e must be positive".into()));
        }
        let q = (p as u128).checked_pow(e).filter(|&q| q <= 1 << 63);
        match q {
            Some(q) => Ok(Self { p, e, q: q as u64 }),
            None => Err(Error::DegreeOverflow(p, e)),
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn e(&self) -> u32 {
        self.e
    }
    pub fn q(&self) -> u64 {
        self.q
    }
}

/// An element of one level of a [`FieldTower`], stored as its integer code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FieldElement {
    pub level: FieldLevel,
    pub code: u64,
}

impl FieldElement {
    /// Coefficient list over the immediate base field, lowest degree first,
    /// padded to the extension degree of the level.
    pub fn coeffs(&self, tower: &FieldTower) -> Vec<u64> {
        let (base, width) = match self.level {
            FieldLevel::Prime => (tower.base.p, 1),
            FieldLevel::Mid => (tower.base.p, tower.base.e),
            FieldLevel::Top => (tower.base.q, tower.m),
        };
        digits_lsb(self.code, base, width)
    }
}

/// Polynomial over one field level; coefficients are integer codes, lowest
/// degree first, with no trailing zeros. The zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    pub level: FieldLevel,
    pub coeffs: Vec<u64>,
}

impl Poly {
    pub fn new(level: FieldLevel, mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { level, coeffs }
    }

    pub fn zero(level: FieldLevel) -> Self {
        Self { level, coeffs: Vec::new() }
    }

    pub fn one(level: FieldLevel) -> Self {
        Self { level, coeffs: vec![1] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    /// Digit evaluation of the coefficient list in the size of the
    /// coefficient field (the polynomial's integer code), highest degree
    /// first.
    pub fn code(&self, tower: &FieldTower) -> u128 {
        let base = match self.level {
            FieldLevel::Prime => tower.base.p as u128,
            FieldLevel::Mid => tower.base.q as u128,
            FieldLevel::Top => tower.order as u128,
        };
        self.coeffs.iter().rev().fold(0u128, |acc, &c| acc * base + c as u128)
    }
}

fn digits_lsb(mut v: u64, base: u64, width: u32) -> Vec<u64> {
    let mut out = Vec::with_capacity(width as usize);
    for _ in 0..width {
        out.push(v % base);
        v /= base;
    }
    debug_assert_eq!(v, 0);
    out
}

fn encode_lsb(digits: &[u64], base: u64) -> u64 {
    digits.iter().rev().fold(0u64, |acc, &d| acc * base + d)
}

/// GF(p) ⊆ GF(q) ⊆ GF(q^m) with fixed moduli and primitive element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldTower {
    base: PrimePower,
    m: u32,
    /// Monic irreducible of degree e over GF(p); None when e = 1.
    mid_modulus: Option<Vec<u64>>,
    /// Monic irreducible of degree m over GF(q), coefficients as GF(q) codes.
    top_modulus: Vec<u64>,
    /// Code of a generator of GF(q^m)*.
    alpha: u64,
    /// q^m
    order: u64,
}

/// Build the tower for GF(p^(e*m)).
///
/// Moduli and alpha are chosen by the smallest-integer-code rule, so the
/// construction is reproducible bit for bit.
pub fn build_tower(p: u64, e: u32, m: u32) -> Result<FieldTower> {
    let base = PrimePower::new(p, e)?;
    if m == 0 {
        return Err(Error::InvalidInput("extension degree m must be positive".into()));
    }
    let order = (base.q as u128).checked_pow(m).filter(|&o| o <= 1 << 63);
    let order = match order {
        Some(o) => o as u64,
        None => return Err(Error::DegreeOverflow(base.q, m)),
    };

    let mid_modulus = if e == 1 {
        None
    } else {
        Some(first_irreducible(p, 1, None, e))
    };
    let top_modulus = first_irreducible(base.p, base.e, mid_modulus.as_deref(), m);

    let mut tower = FieldTower { base, m, mid_modulus, top_modulus, alpha: 0, order };
    let group = order - 1;
    tower.alpha = if group == 0 {
        1
    } else {
        (1..order)
            .find(|&c| tower.ext_order(c) == group)
            .expect("GF(q^m)* is cyclic, a generator exists")
    };
    debug_assert_eq!(tower.ext_order(tower.alpha), group.max(1));
    Ok(tower)
}

/// First monic irreducible of degree `d` over GF(Q), Q = p^eq with modulus
/// `mid` when eq > 1, scanning integer codes upward.
fn first_irreducible(p: u64, eq: u32, mid: Option<&[u64]>, d: u32) -> Vec<u64> {
    let q = p.pow(eq);
    let qd = (q as u128).pow(d);
    let field = SubArith { p, e: eq, q, modulus: mid };
    let mut code = qd;
    loop {
        let f: Vec<u64> = {
            let mut v = code;
            let mut out = Vec::with_capacity(d as usize + 1);
            for _ in 0..=d {
                out.push((v % q as u128) as u64);
                v /= q as u128;
            }
            out
        };
        if field.is_irreducible(&f) {
            return f;
        }
        code += 1;
        assert!(code < 2 * qd, "no irreducible of degree {d} found");
    }
}

/// Polynomial arithmetic over GF(q) where q = p^e; coefficients are codes.
/// Used both for the modulus scans and for the tower's code-level arithmetic.
struct SubArith<'a> {
    p: u64,
    e: u32,
    q: u64,
    /// Modulus for the GF(p^e) coefficients themselves (None when e = 1).
    modulus: Option<&'a [u64]>,
}

impl SubArith<'_> {
    fn add(&self, a: u64, b: u64) -> u64 {
        if self.e == 1 {
            (a + b) % self.p
        } else {
            let (mut da, db) = (digits_lsb(a, self.p, self.e), digits_lsb(b, self.p, self.e));
            for (x, y) in da.iter_mut().zip(db) {
                *x = (*x + y) % self.p;
            }
            encode_lsb(&da, self.p)
        }
    }

    fn neg(&self, a: u64) -> u64 {
        if self.e == 1 {
            (self.p - a) % self.p
        } else {
            let mut d = digits_lsb(a, self.p, self.e);
            for x in d.iter_mut() {
                *x = (self.p - *x) % self.p;
            }
            encode_lsb(&d, self.p)
        }
    }

    fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        if self.e == 1 {
            return numutil::mulmod(a, b, self.p);
        }
        let modulus = self.modulus.expect("e > 1 requires a mid modulus");
        let (da, db) = (digits_lsb(a, self.p, self.e), digits_lsb(b, self.p, self.e));
        let mut prod = vec![0u64; 2 * self.e as usize];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        // Reduce mod the monic modulus of degree e.
        for i in (self.e as usize..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for (k, &mk) in modulus.iter().enumerate().take(self.e as usize) {
                let idx = i - self.e as usize + k;
                prod[idx] = (prod[idx] + c * (self.p - mk)) % self.p;
            }
        }
        encode_lsb(&prod[..self.e as usize], self.p)
    }

    fn pow(&self, a: u64, mut ex: u128) -> u64 {
        let mut acc = 1u64;
        let mut base = a;
        while ex > 0 {
            if ex & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            ex >>= 1;
        }
        acc
    }

    fn inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.q as u128 - 2))
    }

    // --- polynomial layer over GF(q), coefficients as codes ---

    fn poly_trim(mut f: Vec<u64>) -> Vec<u64> {
        while f.last() == Some(&0) {
            f.pop();
        }
        f
    }

    fn poly_mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y != 0 {
                    out[i + j] = self.add(out[i + j], self.mul(x, y));
                }
            }
        }
        Self::poly_trim(out)
    }

    fn poly_rem(&self, a: &[u64], b: &[u64]) -> Result<Vec<u64>> {
        if b.is_empty() {
            return Err(Error::DivisionByZero);
        }
        let mut r = a.to_vec();
        let lead_inv = self.inv(*b.last().unwrap())?;
        while r.len() >= b.len() {
            let c = self.mul(*r.last().unwrap(), lead_inv);
            let shift = r.len() - b.len();
            if c != 0 {
                for (k, &bk) in b.iter().enumerate() {
                    r[shift + k] = self.sub(r[shift + k], self.mul(c, bk));
                }
            }
            debug_assert_eq!(*r.last().unwrap(), 0);
            r.pop();
            while r.last() == Some(&0) {
                r.pop();
            }
            if r.len() < b.len() {
                break;
            }
        }
        Ok(r)
    }

    fn poly_gcd(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let (mut a, mut b) = (a.to_vec(), b.to_vec());
        while !b.is_empty() {
            let r = self.poly_rem(&a, &b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        // Normalize monic.
        if let Some(&lead) = a.last() {
            if lead != 1 {
                let inv = self.inv(lead).unwrap();
                for c in a.iter_mut() {
                    *c = self.mul(*c, inv);
                }
            }
        }
        a
    }

    fn poly_powmod_x_q(&self, t: &[u64], f: &[u64]) -> Vec<u64> {
        // t^q mod f
        let mut acc = vec![1u64];
        let mut base = t.to_vec();
        let mut ex = self.q;
        while ex > 0 {
            if ex & 1 == 1 {
                acc = self.poly_rem(&self.poly_mul(&acc, &base), f).unwrap();
            }
            base = self.poly_rem(&self.poly_mul(&base, &base), f).unwrap();
            ex >>= 1;
        }
        acc
    }

    /// Irreducibility over GF(q): no factor of degree <= d/2, checked through
    /// gcd(f, x^(q^k) - x) = 1 for k = 1..d/2, plus x^(q^d) = x mod f.
    fn is_irreducible(&self, f: &[u64]) -> bool {
        let d = f.len() - 1;
        if d == 0 {
            return false;
        }
        if d == 1 {
            return true;
        }
        let x = vec![0u64, 1];
        let mut t = x.clone();
        for _ in 1..=d / 2 {
            t = self.poly_powmod_x_q(&t, f);
            // gcd(f, t - x)
            let diff = Self::poly_trim(
                (0..t.len().max(2))
                    .map(|i| {
                        let a = t.get(i).copied().unwrap_or(0);
                        let b = x.get(i).copied().unwrap_or(0);
                        self.sub(a, b)
                    })
                    .collect(),
            );
            let g = self.poly_gcd(f, &diff);
            if g.len() != 1 {
                return false;
            }
        }
        for _ in d / 2 + 1..=d {
            t = self.poly_powmod_x_q(&t, f);
        }
        t == x
    }
}

impl FieldTower {
    pub fn base(&self) -> PrimePower {
        self.base
    }
    pub fn q(&self) -> u64 {
        self.base.q
    }
    pub fn m(&self) -> u32 {
        self.m
    }
    /// q^m
    pub fn order(&self) -> u64 {
        self.order
    }

    /// The mid modulus as a Prime-level polynomial (None when e = 1).
    pub fn mid_modulus(&self) -> Option<Poly> {
        self.mid_modulus.as_ref().map(|c| Poly::new(FieldLevel::Prime, c.clone()))
    }

    /// The top modulus as a Mid-level polynomial.
    pub fn top_modulus(&self) -> Poly {
        Poly::new(FieldLevel::Mid, self.top_modulus.clone())
    }

    /// The chosen generator of GF(q^m)*.
    pub fn alpha(&self) -> FieldElement {
        FieldElement { level: FieldLevel::Top, code: self.alpha }
    }

    fn level_size(&self, level: FieldLevel) -> u64 {
        match level {
            FieldLevel::Prime => self.base.p,
            FieldLevel::Mid => self.base.q,
            FieldLevel::Top => self.order,
        }
    }

    /// Validated element constructor.
    pub fn element(&self, level: FieldLevel, code: u64) -> Result<FieldElement> {
        if code >= self.level_size(level) {
            return Err(Error::ResidueOutOfRange { t: code, n: self.level_size(level) });
        }
        Ok(FieldElement { level, code })
    }

    fn sub_arith(&self) -> SubArith<'_> {
        SubArith {
            p: self.base.p,
            e: self.base.e,
            q: self.base.q,
            modulus: self.mid_modulus.as_deref(),
        }
    }

    // --- code-level arithmetic per level ---

    pub(crate) fn code_add(&self, level: FieldLevel, a: u64, b: u64) -> u64 {
        match level {
            FieldLevel::Prime => (a + b) % self.base.p,
            FieldLevel::Mid => self.sub_arith().add(a, b),
            FieldLevel::Top => {
                if self.base.p == 2 {
                    a ^ b
                } else {
                    let q = self.base.q;
                    let (mut da, db) =
                        (digits_lsb(a, q, self.m), digits_lsb(b, q, self.m));
                    let f = self.sub_arith();
                    for (x, y) in da.iter_mut().zip(db) {
                        *x = f.add(*x, y);
                    }
                    encode_lsb(&da, q)
                }
            }
        }
    }

    pub(crate) fn code_neg(&self, level: FieldLevel, a: u64) -> u64 {
        match level {
            FieldLevel::Prime => (self.base.p - a) % self.base.p,
            FieldLevel::Mid => self.sub_arith().neg(a),
            FieldLevel::Top => {
                if self.base.p == 2 {
                    a
                } else {
                    let q = self.base.q;
                    let mut d = digits_lsb(a, q, self.m);
                    let f = self.sub_arith();
                    for x in d.iter_mut() {
                        *x = f.neg(*x);
                    }
                    encode_lsb(&d, q)
                }
            }
        }
    }

    pub(crate) fn code_sub(&self, level: FieldLevel, a: u64, b: u64) -> u64 {
        self.code_add(level, a, self.code_neg(level, b))
    }

    pub(crate) fn code_mul(&self, level: FieldLevel, a: u64, b: u64) -> u64 {
        match level {
            FieldLevel::Prime => numutil::mulmod(a, b, self.base.p),
            FieldLevel::Mid => self.sub_arith().mul(a, b),
            FieldLevel::Top => self.ext_mul(a, b),
        }
    }

    pub(crate) fn code_inv(&self, level: FieldLevel, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        let size = self.level_size(level);
        Ok(self.code_pow(level, a, size as u128 - 2))
    }

    pub(crate) fn code_pow(&self, level: FieldLevel, a: u64, mut e: u128) -> u64 {
        let mut acc = 1u64;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.code_mul(level, acc, base);
            }
            base = self.code_mul(level, base, base);
            e >>= 1;
        }
        acc
    }

    fn ext_mul(&self, a: u64, b: u64) -> u64 {
        let q = self.base.q;
        let m = self.m as usize;
        let (da, db) = (digits_lsb(a, q, self.m), digits_lsb(b, q, self.m));
        let f = self.sub_arith();
        let mut prod = vec![0u64; 2 * m];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                if y != 0 {
                    prod[i + j] = f.add(prod[i + j], f.mul(x, y));
                }
            }
        }
        for i in (m..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for (k, &mk) in self.top_modulus.iter().enumerate().take(m) {
                if mk != 0 {
                    let idx = i - m + k;
                    prod[idx] = f.sub(prod[idx], f.mul(c, mk));
                }
            }
        }
        encode_lsb(&prod[..m], q)
    }

    /// Multiplicative order of a nonzero Top element.
    pub fn ext_order(&self, code: u64) -> u64 {
        assert!(code != 0 && code < self.order);
        let group = self.order - 1;
        if group == 0 {
            return 1;
        }
        // Walk down from the group order through its prime factors.
        let mut ord = group;
        for (p, _) in numutil::factorize(group) {
            while ord % p == 0 && self.code_pow(FieldLevel::Top, code, (ord / p) as u128) == 1 {
                ord /= p;
            }
        }
        debug_assert_eq!(self.code_pow(FieldLevel::Top, code, ord as u128), 1);
        ord
    }

    // --- element API ---

    fn check_pair(a: FieldElement, b: FieldElement) -> Result<FieldLevel> {
        if a.level != b.level {
            return Err(Error::MixedFields);
        }
        Ok(a.level)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        let level = Self::check_pair(a, b)?;
        Ok(FieldElement { level, code: self.code_add(level, a.code, b.code) })
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        let level = Self::check_pair(a, b)?;
        Ok(FieldElement { level, code: self.code_sub(level, a.code, b.code) })
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        let level = Self::check_pair(a, b)?;
        Ok(FieldElement { level, code: self.code_mul(level, a.code, b.code) })
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        let level = Self::check_pair(a, b)?;
        let binv = self.code_inv(level, b.code)?;
        Ok(FieldElement { level, code: self.code_mul(level, a.code, binv) })
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        Ok(FieldElement { level: a.level, code: self.code_inv(a.level, a.code)? })
    }

    pub fn pow(&self, a: FieldElement, e: u128) -> FieldElement {
        FieldElement { level: a.level, code: self.code_pow(a.level, a.code, e) }
    }

    /// (q^m - 1) / n for a length n dividing the group order.
    pub fn beta_exponent(&self, n: u64) -> Result<u64> {
        let group = self.order - 1;
        if n == 0 || group % n != 0 {
            return Err(Error::LengthMismatch { n, group });
        }
        Ok(group / n)
    }

    /// The fixed primitive n-th root of unity beta = alpha^((q^m-1)/n).
    pub fn beta(&self, n: u64) -> Result<FieldElement> {
        let e = self.beta_exponent(n)?;
        Ok(self.pow(self.alpha(), e as u128))
    }

    // --- polynomial API (any single level) ---

    pub fn poly_mul(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        if a.level != b.level {
            return Err(Error::MixedFields);
        }
        let mut out = vec![0u64; (a.coeffs.len() + b.coeffs.len()).saturating_sub(1)];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                if y != 0 {
                    out[i + j] = self.code_add(a.level, out[i + j], self.code_mul(a.level, x, y));
                }
            }
        }
        Ok(Poly::new(a.level, out))
    }

    /// Remainder of a mod b.
    pub fn poly_rem(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        if a.level != b.level {
            return Err(Error::MixedFields);
        }
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let level = a.level;
        let mut r = a.coeffs.clone();
        let lead_inv = self.code_inv(level, *b.coeffs.last().unwrap())?;
        while r.len() >= b.coeffs.len() {
            let c = self.code_mul(level, *r.last().unwrap(), lead_inv);
            let shift = r.len() - b.coeffs.len();
            if c != 0 {
                for (k, &bk) in b.coeffs.iter().enumerate() {
                    r[shift + k] = self.code_sub(level, r[shift + k], self.code_mul(level, c, bk));
                }
            }
            r.pop();
            while r.last() == Some(&0) {
                r.pop();
            }
        }
        Ok(Poly::new(level, r))
    }

    /// Exact quotient; errors if the division has a remainder.
    pub fn poly_div_exact(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        if a.level != b.level {
            return Err(Error::MixedFields);
        }
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let level = a.level;
        let mut r = a.coeffs.clone();
        let mut quot = vec![0u64; a.coeffs.len().saturating_sub(b.coeffs.len()) + 1];
        let lead_inv = self.code_inv(level, *b.coeffs.last().unwrap())?;
        while r.len() >= b.coeffs.len() {
            let c = self.code_mul(level, *r.last().unwrap(), lead_inv);
            let shift = r.len() - b.coeffs.len();
            quot[shift] = c;
            if c != 0 {
                for (k, &bk) in b.coeffs.iter().enumerate() {
                    r[shift + k] = self.code_sub(level, r[shift + k], self.code_mul(level, c, bk));
                }
            }
            r.pop();
            while r.last() == Some(&0) {
                r.pop();
            }
        }
        if !r.is_empty() {
            return Err(Error::IntegralityViolation("polynomial division left a remainder".into()));
        }
        Ok(Poly::new(level, quot))
    }

    /// true iff a divides b.
    pub fn poly_divides(&self, a: &Poly, b: &Poly) -> Result<bool> {
        Ok(self.poly_rem(b, a)?.is_zero())
    }

    pub fn poly_gcd(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        if a.level != b.level {
            return Err(Error::MixedFields);
        }
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = self.poly_rem(&x, &y)?;
            x = y;
            y = r;
        }
        self.poly_monic(&x)
    }

    /// Monic least common multiple.
    pub fn poly_lcm(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        if a.is_zero() || b.is_zero() {
            return Ok(Poly::zero(a.level));
        }
        let g = self.poly_gcd(a, b)?;
        let prod = self.poly_mul(a, b)?;
        self.poly_monic(&self.poly_div_exact(&prod, &g)?)
    }

    fn poly_monic(&self, a: &Poly) -> Result<Poly> {
        match a.coeffs.last() {
            None | Some(1) => Ok(a.clone()),
            Some(&lead) => {
                let inv = self.code_inv(a.level, lead)?;
                Ok(Poly::new(
                    a.level,
                    a.coeffs.iter().map(|&c| self.code_mul(a.level, c, inv)).collect(),
                ))
            }
        }
    }

    /// Evaluate f at a point. The point's level must be at or above the
    /// coefficient level; base-field codes embed into extensions unchanged.
    pub fn poly_eval(&self, f: &Poly, at: FieldElement) -> Result<FieldElement> {
        let ok = matches!(
            (f.level, at.level),
            (FieldLevel::Prime, _)
                | (FieldLevel::Mid, FieldLevel::Mid | FieldLevel::Top)
                | (FieldLevel::Top, FieldLevel::Top)
        );
        if !ok {
            return Err(Error::MixedFields);
        }
        let level = at.level;
        let mut acc = 0u64;
        for &c in f.coeffs.iter().rev() {
            acc = self.code_add(level, self.code_mul(level, acc, at.code), c);
        }
        Ok(FieldElement { level, code: acc })
    }

    /// x^n - 1 over GF(q).
    pub fn x_n_minus_1(&self, n: u64) -> Poly {
        let mut coeffs = vec![0u64; n as usize + 1];
        coeffs[0] = self.code_neg(FieldLevel::Mid, 1);
        coeffs[n as usize] = 1;
        Poly::new(FieldLevel::Mid, coeffs)
    }

    /// Minimal polynomial of beta^i over GF(q), where beta is the fixed
    /// primitive n-th root of unity: the monic product of (x - beta^j) over
    /// the q-cyclotomic coset of i modulo n.
    pub fn minimal_polynomial(&self, n: u64, i: u64) -> Result<Poly> {
        let exp = self.beta_exponent(n)?;
        if i >= n {
            return Err(Error::ResidueOutOfRange { t: i, n });
        }
        let q = self.base.q;
        // Walk the coset of i under multiplication by q.
        let mut coset = Vec::new();
        let mut t = i;
        loop {
            coset.push(t);
            t = numutil::mulmod(t, q, n);
            if t == i {
                break;
            }
        }
        let mut prod = Poly::one(FieldLevel::Top);
        for &j in &coset {
            let root = self.code_pow(
                FieldLevel::Top,
                self.alpha,
                exp as u128 * j as u128 % (self.order - 1).max(1) as u128,
            );
            let factor = Poly::new(FieldLevel::Top, vec![self.code_neg(FieldLevel::Top, root), 1]);
            prod = self.poly_mul(&prod, &factor)?;
        }
        // Conjugate-closed products have subfield coefficients: Top codes < q.
        let coeffs = prod
            .coeffs
            .iter()
            .map(|&c| {
                assert!(c < q, "minimal polynomial coefficient escaped the subfield");
                c
            })
            .collect();
        Ok(Poly::new(FieldLevel::Mid, coeffs))
    }
}
