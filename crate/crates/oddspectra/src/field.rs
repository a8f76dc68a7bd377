//! Arithmetic in F_{p^n} for odd p, over a canonical index encoding.
//!
//! An element with polynomial-basis coefficients (c_0, ..., c_{n-1}) is stored
//! as the index sum c_i * p^i, so index 0 is zero, index 1 is one, and
//! enumeration by index is the canonical element order. Extension fields are
//! reduced modulo a deterministic modulus: the lexicographically smallest
//! monic irreducible polynomial of degree n, comparing coefficient tuples
//! constant term first.

use crate::error::{Error, Result};

/// Hard ceiling on the field order; every analysis here is an O(q)-or-worse
/// exact sweep, so larger orders are refused up front.
pub const MAX_Q: u64 = 1 << 20;

/// An element of a specific field, identified by canonical index.
///
/// Elements carry the (p, n) signature of their field so that operands from
/// different fields are rejected instead of silently combined.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FieldElement {
    idx: u32,
    fid: u32,
}

impl FieldElement {
    /// Canonical index in `0..q`.
    pub fn index(self) -> u64 {
        self.idx as u64
    }
}

/// F_{p^n} with precomputed negation and quadratic-character tables.
pub struct Field {
    p: u64,
    n: u32,
    q: u64,
    fid: u32,
    /// Monic modulus of degree n, constant term first (so length n+1).
    modulus: Vec<u64>,
    /// (q+1)/4 when q = 3 (mod 4).
    r: Option<u64>,
    chi: Vec<i8>,
    neg: Vec<u32>,
    generator: u32,
}

impl std::fmt::Debug for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("n", &self.n)
            .field("q", &self.q)
            .field("modulus", &self.modulus)
            .finish_non_exhaustive()
    }
}

fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors of m, ascending.
fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            out.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

// Dense polynomial helpers over F_p, little-endian coefficients. Only used
// for modulus selection, so clarity beats speed.
mod poly {
    pub fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut a = a.to_vec();
        trim(&mut a);
        let dm = m.len() - 1;
        let lead_inv = inv_mod(m[dm], p);
        while a.len() > dm {
            let da = a.len() - 1;
            let c = a[da] * lead_inv % p;
            if c != 0 {
                for j in 0..=dm {
                    let t = c * m[j] % p;
                    a[da - dm + j] = (a[da - dm + j] + p - t) % p;
                }
            }
            a.pop();
            trim(&mut a);
        }
        a
    }

    pub fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut conv = vec![0u64; a.len() + b.len() - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                conv[i + j] = (conv[i + j] + ai * bj) % p;
            }
        }
        rem(&conv, m, p)
    }

    /// x^e mod m.
    pub fn x_pow_mod(e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut result = vec![1u64];
        let mut base = rem(&[0, 1], m, p);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = mulmod(&result, &base, m, p);
            }
            base = mulmod(&base, &base, m, p);
            e >>= 1;
        }
        result
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    fn inv_mod(a: u64, p: u64) -> u64 {
        // p is prime and a != 0 here.
        pow_mod(a, p - 2, p)
    }

    fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
        let mut acc = 1u64;
        b %= p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        acc
    }
}

/// Rabin irreducibility test for a monic polynomial of degree n over F_p.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let n = (f.len() - 1) as u64;
    // x^(p^n) = x (mod f) ...
    let pn = p.pow(n as u32);
    let mut t = poly::x_pow_mod(pn, f, p);
    // ... minus x must vanish.
    if t.len() < 2 {
        t.resize(2, 0);
    }
    t[1] = (t[1] + p - 1) % p;
    poly::trim(&mut t);
    if !t.is_empty() {
        return false;
    }
    // ... and x^(p^(n/t)) - x must be coprime to f for every prime t | n.
    for t in prime_factors(n) {
        let e = p.pow((n / t) as u32);
        let mut g = poly::x_pow_mod(e, f, p);
        if g.len() < 2 {
            g.resize(2, 0);
        }
        g[1] = (g[1] + p - 1) % p;
        let d = poly::gcd(f, &g, p);
        if d.len() != 1 {
            return false;
        }
    }
    true
}

/// Smallest monic irreducible of degree n over F_p, comparing the coefficient
/// tuple (c_0, ..., c_{n-1}) lexicographically with the constant term most
/// significant.
fn smallest_irreducible(p: u64, n: u32) -> Vec<u64> {
    let mut key = 0u64;
    let total = p.pow(n);
    while key < total {
        // c_0 is the highest-order digit of `key`, so it varies slowest.
        let mut coeffs = vec![0u64; n as usize + 1];
        coeffs[n as usize] = 1;
        let mut k = key;
        for i in (0..n as usize).rev() {
            coeffs[i] = k % p;
            k /= p;
        }
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
        key += 1;
    }
    unreachable!("irreducible polynomials of every degree exist over F_p");
}

impl Field {
    /// Construct F_{p^n}. The modulus is deterministic, so two fields with the
    /// same (p, n) are interchangeable.
    pub fn new(p: u64, n: u32) -> Result<Field> {
        if p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 {
            return Err(Error::InvalidDegree);
        }
        let q128 = (p as u128).pow(n);
        if q128 > MAX_Q as u128 {
            return Err(Error::FieldTooLarge { q: q128, max: MAX_Q });
        }
        let q = q128 as u64;
        let modulus = if n == 1 {
            vec![0, 1]
        } else {
            smallest_irreducible(p, n)
        };
        let r = if q % 4 == 3 { Some((q + 1) / 4) } else { None };
        let fid = ((p as u32) << 5) | n;
        let mut f = Field {
            p,
            n,
            q,
            fid,
            modulus,
            r,
            chi: Vec::new(),
            neg: Vec::new(),
            generator: 0,
        };
        f.neg = (0..q as u32).map(|i| f.neg_raw(i)).collect();
        f.generator = f.find_generator();
        f.chi = f.build_chi();
        Ok(f)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// (q+1)/4, the exponent the analyzed family is built around; only
    /// defined when q = 3 (mod 4).
    pub fn r(&self) -> Option<u64> {
        self.r
    }

    /// Monic modulus coefficients, constant term first (length n+1).
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// A fixed multiplicative generator (the one with smallest index).
    pub fn generator(&self) -> FieldElement {
        self.wrap(self.generator)
    }

    pub(crate) fn wrap(&self, idx: u32) -> FieldElement {
        FieldElement { idx, fid: self.fid }
    }

    /// The canonical index of `e`, after checking it belongs to this field.
    pub fn check(&self, e: FieldElement) -> Result<u32> {
        if e.fid != self.fid {
            return Err(Error::MixedFields);
        }
        Ok(e.idx)
    }

    fn own(&self, e: FieldElement) -> Result<u32> {
        self.check(e)
    }

    pub fn zero(&self) -> FieldElement {
        self.wrap(0)
    }

    pub fn one(&self) -> FieldElement {
        self.wrap(1)
    }

    /// The image of the integer k in the prime subfield.
    pub fn embed(&self, k: i64) -> FieldElement {
        self.wrap(k.rem_euclid(self.p as i64) as u32)
    }

    pub fn element(&self, idx: u64) -> Result<FieldElement> {
        if idx >= self.q {
            return Err(Error::IndexOutOfRange { idx, q: self.q });
        }
        Ok(self.wrap(idx as u32))
    }

    /// Element with the given polynomial-basis coefficients (constant first,
    /// at most n entries, reduced mod p).
    pub fn element_from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() > self.n as usize {
            return Err(Error::InvalidArgument("more coefficients than the extension degree"));
        }
        let mut idx = 0u64;
        let mut mult = 1u64;
        for &c in coeffs {
            idx += (c % self.p) * mult;
            mult *= self.p;
        }
        Ok(self.wrap(idx as u32))
    }

    /// Polynomial-basis coefficients of e, constant term first (length n).
    pub fn coeffs(&self, e: FieldElement) -> Result<Vec<u64>> {
        let mut idx = self.own(e)? as u64;
        let mut out = Vec::with_capacity(self.n as usize);
        for _ in 0..self.n {
            out.push(idx % self.p);
            idx /= self.p;
        }
        Ok(out)
    }

    /// All q elements in canonical index order.
    pub fn enumerate(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q as u32).map(move |i| self.wrap(i))
    }

    // ----- raw index arithmetic -------------------------------------------
    //
    // The brute-force sweeps work directly on indices; these are total on
    // indices < q and panic (via slice bounds) otherwise.

    #[inline]
    pub fn add_idx(&self, a: u32, b: u32) -> u32 {
        if self.n == 1 {
            let s = a as u64 + b as u64;
            return if s >= self.q { (s - self.q) as u32 } else { s as u32 };
        }
        let p = self.p;
        let (mut a, mut b) = (a as u64, b as u64);
        let mut out = 0u64;
        let mut mult = 1u64;
        for _ in 0..self.n {
            let mut s = a % p + b % p;
            if s >= p {
                s -= p;
            }
            out += s * mult;
            mult *= p;
            a /= p;
            b /= p;
        }
        out as u32
    }

    #[inline]
    pub fn sub_idx(&self, a: u32, b: u32) -> u32 {
        self.add_idx(a, self.neg[b as usize])
    }

    #[inline]
    pub fn neg_idx(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    fn neg_raw(&self, a: u32) -> u32 {
        let p = self.p;
        let mut a = a as u64;
        let mut out = 0u64;
        let mut mult = 1u64;
        for _ in 0..self.n {
            let d = a % p;
            if d != 0 {
                out += (p - d) * mult;
            }
            mult *= p;
            a /= p;
        }
        out as u32
    }

    pub fn mul_idx(&self, a: u32, b: u32) -> u32 {
        let p = self.p;
        if self.n == 1 {
            return ((a as u64 * b as u64) % p) as u32;
        }
        let n = self.n as usize;
        let mut da = [0u64; 32];
        let mut db = [0u64; 32];
        let (mut ai, mut bi) = (a as u64, b as u64);
        for i in 0..n {
            da[i] = ai % p;
            db[i] = bi % p;
            ai /= p;
            bi /= p;
        }
        let mut conv = [0u64; 63];
        for i in 0..n {
            if da[i] == 0 {
                continue;
            }
            for j in 0..n {
                conv[i + j] += da[i] * db[j];
            }
        }
        // Fold x^(n+k) down via x^n = -(m_0 + ... + m_{n-1} x^{n-1}).
        for i in (n..2 * n - 1).rev() {
            let c = conv[i] % p;
            if c != 0 {
                for j in 0..n {
                    conv[i - n + j] += c * (p - self.modulus[j] % p);
                }
            }
            conv[i] = 0;
        }
        let mut out = 0u64;
        let mut mult = 1u64;
        for c in conv.iter().take(n) {
            out += (c % p) * mult;
            mult *= p;
        }
        out as u32
    }

    pub fn pow_idx(&self, a: u32, e: u64) -> u32 {
        let mut acc = 1u32;
        let mut base = a;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_idx(acc, base);
            }
            base = self.mul_idx(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by index; index 0 panics in debug and loops to 0
    /// otherwise, so callers must guard (the element API returns an error).
    pub fn inv_idx(&self, a: u32) -> u32 {
        debug_assert!(a != 0, "inverse of zero");
        self.pow_idx(a, self.q - 2)
    }

    /// Quadratic character by index: +1 on nonzero squares, -1 on
    /// non-squares, 0 at zero.
    #[inline]
    pub fn chi_idx(&self, a: u32) -> i32 {
        self.chi[a as usize] as i32
    }

    // ----- element API ------------------------------------------------------

    pub fn add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.wrap(self.add_idx(self.own(a)?, self.own(b)?)))
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.wrap(self.sub_idx(self.own(a)?, self.own(b)?)))
    }

    pub fn neg_elt(&self, a: FieldElement) -> Result<FieldElement> {
        Ok(self.wrap(self.neg_idx(self.own(a)?)))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.wrap(self.mul_idx(self.own(a)?, self.own(b)?)))
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        let i = self.own(a)?;
        if i == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.wrap(self.inv_idx(i)))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> Result<FieldElement> {
        Ok(self.wrap(self.pow_idx(self.own(a)?, e)))
    }

    pub fn chi(&self, a: FieldElement) -> Result<i32> {
        Ok(self.chi_idx(self.own(a)?))
    }

    /// The square root with smaller canonical index, if one exists. Only
    /// supported for q = 3 (mod 4), where x^((q+1)/4) squares to x*chi(x).
    pub fn sqrt_if_square(&self, a: FieldElement) -> Result<Option<FieldElement>> {
        let i = self.own(a)?;
        let r = self.r.ok_or(Error::SqrtUnsupported { q: self.q })?;
        if i == 0 {
            return Ok(Some(self.zero()));
        }
        if self.chi_idx(i) != 1 {
            return Ok(None);
        }
        let y = self.pow_idx(i, r);
        debug_assert_eq!(self.mul_idx(y, y), i);
        Ok(Some(self.wrap(y.min(self.neg_idx(y)))))
    }

    // ----- construction internals -------------------------------------------

    fn find_generator(&self) -> u32 {
        let factors = prime_factors(self.q - 1);
        'outer: for g in 1..self.q as u32 {
            for &f in &factors {
                if self.pow_idx(g, (self.q - 1) / f) == 1 {
                    continue 'outer;
                }
            }
            return g;
        }
        unreachable!("F_q* is cyclic");
    }

    /// chi over all indices, built by walking powers of the generator (the
    /// generator is a non-square, so chi alternates along the walk).
    fn build_chi(&self) -> Vec<i8> {
        let mut chi = vec![0i8; self.q as usize];
        let mut x = 1u32;
        let mut sign = 1i8;
        loop {
            chi[x as usize] = sign;
            x = self.mul_idx(x, self.generator);
            sign = -sign;
            if x == 1 {
                break;
            }
        }
        chi
    }

    // ----- formatting ---------------------------------------------------------

    /// `fmt_element` by canonical index.
    pub fn fmt_element_idx(&self, idx: u32) -> String {
        self.fmt_element(self.wrap(idx))
    }

    /// Render an element: the plain residue for prime fields, otherwise the
    /// index with its coefficient tuple.
    pub fn fmt_element(&self, e: FieldElement) -> String {
        match self.coeffs(e) {
            Ok(c) if self.n == 1 => format!("{}", c[0]),
            Ok(c) => {
                let tuple: Vec<String> = c.iter().map(|d| d.to_string()).collect();
                format!("{}=({})", e.idx, tuple.join(","))
            }
            Err(_) => "<foreign element>".into(),
        }
    }

    /// Render the modulus as a polynomial in x.
    pub fn modulus_string(&self) -> String {
        let mut parts = Vec::new();
        for (i, &c) in self.modulus.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let part = match (i, c) {
                (0, c) => format!("{c}"),
                (1, 1) => "x".into(),
                (1, c) => format!("{c}x"),
                (i, 1) => format!("x^{i}"),
                (i, c) => format!("{c}x^{i}"),
            };
            parts.push(part);
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}
