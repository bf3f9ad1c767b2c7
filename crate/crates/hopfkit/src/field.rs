//! Exact arithmetic in F_{p^k}, realized as polynomial residues modulo a
//! deterministically chosen irreducible polynomial over F_p.

use crate::{Error, Result};
use arrayvec::ArrayVec;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

/// Hard cap on extension degree; every desk-scale computation stays far below.
pub const MAX_K: usize = 16;

type Coeffs = ArrayVec<u64, MAX_K>;

#[derive(Debug, PartialEq, Eq)]
struct FieldData {
    p: u64,
    k: usize,
    /// Monic modulus of degree k, coefficients low-to-high (length k+1).
    /// For k = 1 this is T itself, so residues are plain F_p scalars.
    modulus: Vec<u64>,
}

/// The field F_{p^k}. Cheap to clone; equality is by (p, k, modulus).
#[derive(Clone)]
pub struct Field(Arc<FieldData>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.k == other.0.k && self.0.modulus == other.0.modulus)
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.k == 1 {
            write!(f, "F_{}", self.0.p)
        } else {
            write!(f, "F_{{{}^{}}}", self.0.p, self.0.k)
        }
    }
}

/// An element of a [`Field`], carrying its owner for checked arithmetic.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    coeffs: Coeffs,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

// -- dense F_p[T] helpers (little-endian coefficient vectors) --

fn pnorm(p: u64, v: &mut Vec<u64>) {
    for c in v.iter_mut() {
        *c %= p;
    }
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
}

fn pmul(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    pnorm(p, &mut out);
    out
}

/// Remainder of a modulo monic m.
fn prem(p: u64, a: &[u64], m: &[u64]) -> Vec<u64> {
    let dm = m.len() - 1;
    let mut r: Vec<u64> = a.iter().map(|c| c % p).collect();
    if r.is_empty() {
        r.push(0);
    }
    if r.len() > dm {
        for deg in (dm..r.len()).rev() {
            let lead = r[deg];
            if lead == 0 {
                continue;
            }
            let shift = deg - dm;
            for i in 0..=dm {
                let sub = lead * m[i] % p;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
            debug_assert_eq!(r[deg], 0);
        }
        r.truncate(dm);
        if r.is_empty() {
            r.push(0);
        }
    }
    while r.len() > 1 && *r.last().unwrap() == 0 {
        r.pop();
    }
    r
}

fn pgcd(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    pnorm(p, &mut x);
    pnorm(p, &mut y);
    while !(y.len() == 1 && y[0] == 0) {
        // make y monic before reducing
        let inv = mod_inv(p, *y.last().unwrap());
        let my: Vec<u64> = y.iter().map(|c| c * inv % p).collect();
        let r = prem(p, &x, &my);
        x = my;
        y = r;
    }
    x
}

fn mod_inv(p: u64, a: u64) -> u64 {
    // p prime, a != 0 mod p
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// T^(p^e) mod m, by repeated p-th powering.
fn frobenius_power(p: u64, e: usize, m: &[u64]) -> Vec<u64> {
    let mut t = vec![0, 1]; // T
    t = prem(p, &t, m);
    for _ in 0..e {
        t = ppowmod(p, &t, p, m);
    }
    t
}

fn ppowmod(p: u64, a: &[u64], mut e: u64, m: &[u64]) -> Vec<u64> {
    let mut result = vec![1u64];
    let mut base = prem(p, a, m);
    while e > 0 {
        if e & 1 == 1 {
            result = prem(p, &pmul(p, &result, &base), m);
        }
        base = prem(p, &pmul(p, &base, &base), m);
        e >>= 1;
    }
    result
}

fn is_irreducible(p: u64, f: &[u64]) -> bool {
    let k = f.len() - 1;
    if k == 1 {
        return true;
    }
    if f[0] == 0 {
        return false; // divisible by T
    }
    // T^(p^k) == T mod f
    let mut t = frobenius_power(p, k, f);
    // subtract T
    while t.len() < 2 {
        t.push(0);
    }
    t[1] = (t[1] + p - 1) % p;
    pnorm(p, &mut t);
    if !(t.len() == 1 && t[0] == 0) {
        return false;
    }
    // gcd(T^(p^(k/r)) - T, f) = 1 for every prime r | k
    for (r, _) in factor_u64(k as u64) {
        let d = k / r as usize;
        let mut u = frobenius_power(p, d, f);
        while u.len() < 2 {
            u.push(0);
        }
        u[1] = (u[1] + p - 1) % p;
        pnorm(p, &mut u);
        let g = pgcd(p, f, &u);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

fn field_cache() -> &'static Mutex<HashMap<(u64, usize), Field>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, usize), Field>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Build F_{p^k} with the deterministic modulus: the monic irreducible of
/// degree k over F_p whose non-leading coefficient vector, read as base-p
/// digits (constant term least significant), is smallest.
pub fn make_field(p: u64, k: usize) -> Result<Field> {
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    if k < 1 {
        return Err(Error::InvalidInput("extension degree must be >= 1".into()));
    }
    if k > MAX_K {
        return Err(Error::InvalidInput(format!(
            "extension degree {k} exceeds supported bound {MAX_K}"
        )));
    }
    if let Some(f) = field_cache().lock().unwrap().get(&(p, k)) {
        return Ok(f.clone());
    }
    let modulus = if k == 1 {
        vec![0, 1]
    } else {
        let mut found = None;
        let total = (p as u128).pow(k as u32);
        let mut n: u128 = 0;
        while n < total {
            let mut f = vec![0u64; k + 1];
            f[k] = 1;
            let mut m = n;
            for c in f.iter_mut().take(k) {
                *c = (m % p as u128) as u64;
                m /= p as u128;
            }
            if f[0] != 0 && is_irreducible(p, &f) {
                found = Some(f);
                break;
            }
            n += 1;
        }
        found.ok_or_else(|| Error::Verification("no irreducible modulus found".into()))?
    };
    let field = Field(Arc::new(FieldData { p, k, modulus }));
    field_cache()
        .lock()
        .unwrap()
        .insert((p, k), field.clone());
    Ok(field)
}

impl Field {
    pub fn p(&self) -> u64 {
        self.0.p
    }
    pub fn k(&self) -> usize {
        self.0.k
    }
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }
    /// Number of elements p^k.
    pub fn order(&self) -> u64 {
        (self.0.p as u128).pow(self.0.k as u32) as u64
    }

    pub fn zero(&self) -> FieldElement {
        let mut coeffs = Coeffs::new();
        for _ in 0..self.0.k {
            coeffs.push(0);
        }
        FieldElement {
            field: self.clone(),
            coeffs,
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_u64(1)
    }

    /// The prime-field scalar n mod p, embedded as a constant.
    pub fn from_u64(&self, n: u64) -> FieldElement {
        let mut e = self.zero();
        e.coeffs[0] = n % self.0.p;
        e
    }

    pub fn from_i64(&self, n: i64) -> FieldElement {
        let p = self.0.p as i64;
        self.from_u64(n.rem_euclid(p) as u64)
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() != self.0.k {
            return Err(Error::InvalidInput(format!(
                "expected {} coefficients, got {}",
                self.0.k,
                coeffs.len()
            )));
        }
        let mut e = self.zero();
        for (i, &c) in coeffs.iter().enumerate() {
            e.coeffs[i] = c % self.0.p;
        }
        Ok(e)
    }

    /// Element with canonical index n (base-p digits are the coefficients).
    pub fn element_by_index(&self, n: u64) -> FieldElement {
        let mut e = self.zero();
        let mut m = n;
        for i in 0..self.0.k {
            e.coeffs[i] = m % self.0.p;
            m /= self.0.p;
        }
        e
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order()).map(move |n| self.element_by_index(n))
    }

    /// The residue class of T, a generator of the extension over F_p.
    pub fn generator(&self) -> FieldElement {
        if self.0.k == 1 {
            self.one()
        } else {
            self.element_by_index(self.0.p)
        }
    }

    pub fn random(&self, rng: &mut impl rand::Rng) -> FieldElement {
        self.element_by_index(rng.gen_range(0..self.order()))
    }

    fn reduce_product(&self, prod: &[u64]) -> Coeffs {
        let r = prem(self.0.p, prod, &self.0.modulus);
        let mut coeffs = Coeffs::new();
        for i in 0..self.0.k {
            coeffs.push(*r.get(i).unwrap_or(&0));
        }
        coeffs
    }
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs.iter().skip(1).all(|&c| c == 0)
    }

    /// Canonical index: coefficients as base-p digits, constant term first.
    pub fn index(&self) -> u64 {
        let p = self.field.p();
        let mut n = 0u64;
        for &c in self.coeffs.iter().rev() {
            n = n * p + c;
        }
        n
    }

    pub fn pow(&self, mut e: u64) -> FieldElement {
        let mut result = self.field.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        result
    }

    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::InvalidInput("inverse of zero".into()));
        }
        // a^(q-2) with q = p^k
        Ok(self.pow(self.field.order() - 2))
    }

    /// 1/n for a prime-field integer n (used for factorials with n < p).
    pub fn from_inverse_u64(field: &Field, n: u64) -> Result<FieldElement> {
        field.from_u64(n).inv()
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.k() == 1 {
            write!(f, "{}", self.coeffs[0])
        } else {
            write!(f, "{:?}", self.coeffs.as_slice())
        }
    }
}

macro_rules! binop {
    ($trait:ident, $fn:ident, $impl:ident) => {
        impl std::ops::$trait for &FieldElement {
            type Output = FieldElement;
            fn $fn(self, rhs: &FieldElement) -> FieldElement {
                debug_assert!(self.field == rhs.field, "field mismatch");
                self.$impl(rhs)
            }
        }
        impl std::ops::$trait for FieldElement {
            type Output = FieldElement;
            fn $fn(self, rhs: FieldElement) -> FieldElement {
                (&self).$fn(&rhs)
            }
        }
    };
}

impl FieldElement {
    fn add_impl(&self, rhs: &FieldElement) -> FieldElement {
        let p = self.field.p();
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            *a = (*a + b) % p;
        }
        out
    }
    fn sub_impl(&self, rhs: &FieldElement) -> FieldElement {
        let p = self.field.p();
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            *a = (*a + p - b) % p;
        }
        out
    }
    fn mul_impl(&self, rhs: &FieldElement) -> FieldElement {
        let k = self.field.k();
        if k == 1 {
            let mut out = self.clone();
            out.coeffs[0] = self.coeffs[0] * rhs.coeffs[0] % self.field.p();
            return out;
        }
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in self.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in rhs.coeffs.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        let p = self.field.p();
        for c in prod.iter_mut() {
            *c %= p;
        }
        FieldElement {
            field: self.field.clone(),
            coeffs: self.field.reduce_product(&prod),
        }
    }
}

binop!(Add, add, add_impl);
binop!(Sub, sub, sub_impl);
binop!(Mul, mul, mul_impl);

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        let p = self.field.p();
        let mut out = self.clone();
        for a in out.coeffs.iter_mut() {
            *a = (p - *a) % p;
        }
        out
    }
}
impl std::ops::Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

/// Field homomorphism F_{p^k} -> F_{p^(k*d)}, determined by sending the
/// source generator to the canonically least root of the source modulus.
pub struct Embedding {
    pub source: Field,
    pub target: Field,
    powers: Vec<FieldElement>,
}

impl Embedding {
    pub fn identity(f: &Field) -> Embedding {
        Embedding {
            source: f.clone(),
            target: f.clone(),
            powers: (0..f.k()).map(|i| f.generator().pow(i as u64)).collect(),
        }
    }

    pub fn new(source: &Field, target: &Field) -> Result<Embedding> {
        if source.p() != target.p() || target.k() % source.k() != 0 {
            return Err(Error::InvalidInput(format!(
                "no embedding {:?} -> {:?}",
                source, target
            )));
        }
        if source == target {
            return Ok(Embedding::identity(source));
        }
        if source.k() == 1 {
            // prime field embeds as constants
            return Ok(Embedding {
                source: source.clone(),
                target: target.clone(),
                powers: vec![target.one()],
            });
        }
        // least root of the source modulus in the target
        let p = source.p();
        let modulus = source.modulus().to_vec();
        let root = target
            .elements()
            .find(|x| {
                // Horner evaluation
                let mut acc = target.zero();
                for &c in modulus.iter().rev() {
                    acc = &(&acc * x) + &target.from_u64(c % p);
                }
                acc.is_zero()
            })
            .ok_or_else(|| Error::Verification("modulus has no root in extension".into()))?;
        let powers = (0..source.k()).map(|i| root.pow(i as u64)).collect();
        Ok(Embedding {
            source: source.clone(),
            target: target.clone(),
            powers,
        })
    }

    pub fn apply(&self, e: &FieldElement) -> FieldElement {
        debug_assert!(e.field() == &self.source);
        let mut acc = self.target.zero();
        for (i, &c) in e.coeffs().iter().enumerate() {
            if c != 0 {
                acc = &acc + &(&self.powers[i] * &self.target.from_u64(c));
            }
        }
        acc
    }
}

/// Extend F_{p^k} by degree d, returning the new field and the embedding.
pub fn extend_field(f: &Field, d: usize) -> Result<(Field, Embedding)> {
    let target = make_field(f.p(), f.k() * d)?;
    let emb = Embedding::new(f, &target)?;
    Ok((target, emb))
}

/// Least root of X^(p^n) - X - c, extending the field minimally if needed.
/// Returns the root (over the possibly extended field) and the extension
/// degree used (1 = no extension).
pub fn solve_additive(field: &Field, n: usize, c: &FieldElement) -> Result<(FieldElement, usize)> {
    if c.field() != field {
        return Err(Error::InvalidInput("c not in the given field".into()));
    }
    let p = field.p();
    let pn = (p as u128).pow(n as u32) as u64;
    let mut d = 1;
    while field.k() * d <= MAX_K {
        let (target, emb) = extend_field(field, d)?;
        let ct = emb.apply(c);
        if let Some(root) = least_additive_root(&target, pn, &ct) {
            return Ok((root, d));
        }
        d += 1;
    }
    Err(Error::NeedsExtension(format!(
        "root of X^{pn} - X - c lies beyond the supported extension bound"
    )))
}

/// All roots of z^(p^n) - z = c form an affine subspace over F_p; return the
/// canonically least one if any exist.
fn least_additive_root(field: &Field, pn: u64, c: &FieldElement) -> Option<FieldElement> {
    use crate::linalg::Matrix;
    let prime = make_field(field.p(), 1).unwrap();
    let kk = field.k();
    // matrix of z -> z^(p^n) - z over F_p in the coefficient basis
    let mut cols = Vec::with_capacity(kk);
    for i in 0..kk {
        let mut basis = field.zero();
        basis.coeffs[i] = 1;
        let img = &basis.pow(pn) - &basis;
        cols.push(img);
    }
    let mat = Matrix::from_fn(&prime, kk, kk, |r, ccol| {
        prime.from_u64(cols[ccol].coeffs()[r])
    });
    let rhs: Vec<FieldElement> = (0..kk).map(|i| prime.from_u64(c.coeffs()[i])).collect();
    let particular = mat.solve(&rhs)?;
    let kernel = mat.kernel();
    // enumerate the affine space particular + kernel, take least index
    let kd = kernel.dim();
    let p = field.p();
    let count = (p as u128).pow(kd as u32) as u64;
    let mut best: Option<FieldElement> = None;
    for sel in 0..count {
        let mut coeffs: Vec<u64> = particular.iter().map(|e| e.coeffs()[0]).collect();
        let mut s = sel;
        for r in 0..kd {
            let mult = s % p;
            s /= p;
            if mult != 0 {
                for (j, coeff) in coeffs.iter_mut().enumerate() {
                    *coeff = (*coeff + mult * kernel.basis_row(r)[j].coeffs()[0]) % p;
                }
            }
        }
        let cand = field.from_coeffs(&coeffs).unwrap();
        if best.as_ref().map_or(true, |b| cand.index() < b.index()) {
            best = Some(cand);
        }
    }
    best
}

/// Multiplicative order of a mod n (gcd(a, n) = 1).
pub fn multiplicative_order_mod(a: u64, n: u64) -> u64 {
    let mut x = a % n;
    let mut ord = 1;
    while x != 1 {
        x = x * a % n;
        ord += 1;
    }
    ord
}

/// Element of exact multiplicative order n, extending the field minimally
/// (degree = order of p^k mod n). Errors when p | n.
pub fn root_of_unity(field: &Field, n: u64) -> Result<(FieldElement, usize)> {
    let p = field.p();
    if n == 0 || n % p == 0 {
        return Err(Error::InvalidInput(format!(
            "no primitive {n}-th root of unity in characteristic {p}"
        )));
    }
    if n == 1 {
        return Ok((field.one(), 1));
    }
    let d = multiplicative_order_mod(field.order() % n, n) as usize;
    let (target, _) = extend_field(field, d)?;
    let m = target.order() - 1;
    debug_assert!(m % n == 0);
    let primes: Vec<u64> = factor_u64(n).into_iter().map(|(r, _)| r).collect();
    for cand in target.elements() {
        if cand.is_zero() {
            continue;
        }
        let w = cand.pow(m / n);
        if w.pow(n).is_one() && primes.iter().all(|&r| !w.pow(n / r).is_one()) {
            return Ok((w, d));
        }
    }
    Err(Error::Verification(
        "no primitive root found in computed extension".into(),
    ))
}

pub fn element_order(x: &FieldElement) -> Result<u64> {
    if x.is_zero() {
        return Err(Error::InvalidInput("zero has no multiplicative order".into()));
    }
    let m = x.field().order() - 1;
    let mut ord = m;
    for (r, e) in factor_u64(m) {
        for _ in 0..e {
            if ord % r == 0 && x.pow(ord / r).is_one() {
                ord /= r;
            } else {
                break;
            }
        }
    }
    Ok(ord)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    #[test]
    fn f5_arithmetic() {
        let f = make_field(5, 1).unwrap();
        let two = f.from_u64(2);
        let three = f.from_u64(3);
        assert!((&two * &three).is_one());
        assert_eq!(two.inv().unwrap(), three);
    }

    #[test]
    fn f4_modulus_is_least_irreducible() {
        // enumerate degree-2 monic polynomials over F_2 directly
        let mut expected = None;
        for n in 0..4u64 {
            let f = vec![n % 2, n / 2, 1];
            if is_irreducible(2, &f) {
                expected = Some(f);
                break;
            }
        }
        assert_eq!(expected.unwrap(), vec![1, 1, 1]); // x^2 + x + 1
        let f4 = make_field(2, 2).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        // multiplicative group has order 3
        let g = f4.generator();
        assert!(!g.is_one());
        assert!(g.pow(3).is_one());
    }

    #[test]
    fn f3_minus_one_squares_to_one() {
        let f = make_field(3, 1).unwrap();
        let m1 = -f.one();
        assert!((&m1 * &m1).is_one());
    }

    #[test]
    fn non_prime_rejected() {
        assert!(make_field(6, 1).is_err());
        assert!(make_field(5, 0).is_err());
    }

    #[test]
    fn field_axioms_randomized() {
        for (p, k) in [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2), (5, 2), (2, 4)] {
            let f = make_field(p, k).unwrap();
            let mut rng = ChaCha12Rng::seed_from_u64(7 + p * 100 + k as u64);
            for _ in 0..1000 {
                let a = f.random(&mut rng);
                let b = f.random(&mut rng);
                let c = f.random(&mut rng);
                assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
                assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                assert_eq!(&a + &b, &b + &a);
                assert_eq!(&a * &b, &b * &a);
                assert_eq!(&a + &f.zero(), a);
                assert_eq!(&a * &f.one(), a);
                assert_eq!(&a - &a, f.zero());
                if !a.is_zero() {
                    assert!((&a * &a.inv().unwrap()).is_one());
                }
            }
        }
    }

    #[test]
    fn solve_additive_examples() {
        let f2 = make_field(2, 1).unwrap();
        let (r, d) = solve_additive(&f2, 1, &f2.zero()).unwrap();
        assert!(r.is_zero());
        assert_eq!(d, 1);

        // X^2 - X - 1 over F_2 needs F_4; oracle: enumerate F_4
        let (r, d) = solve_additive(&f2, 1, &f2.one()).unwrap();
        assert_eq!(d, 2);
        let f4 = r.field().clone();
        assert_eq!(f4.order(), 4);
        let brute: Vec<_> = f4
            .elements()
            .filter(|x| (&x.pow(2) - x) == f4.one())
            .collect();
        assert!(!brute.is_empty());
        assert!(brute.contains(&r));
        assert_eq!(&r.pow(2), &(&r + &f4.one())); // a^2 = a + 1

        let f5 = make_field(5, 1).unwrap();
        let (r, d) = solve_additive(&f5, 1, &f5.zero()).unwrap();
        assert!(r.is_zero()); // least of the five roots 0..4
        assert_eq!(d, 1);
    }

    #[test]
    fn roots_of_unity() {
        let f2 = make_field(2, 1).unwrap();
        let (w, d) = root_of_unity(&f2, 3).unwrap();
        assert_eq!(d, 2);
        assert_eq!(element_order(&w).unwrap(), 3);

        let f5 = make_field(5, 1).unwrap();
        let (w, d) = root_of_unity(&f5, 4).unwrap();
        assert_eq!(d, 1);
        assert_eq!(w, f5.from_u64(2)); // 2 has order 4 mod 5: 2,4,3,1

        let f3 = make_field(3, 1).unwrap();
        assert!(root_of_unity(&f3, 3).is_err());
    }

    #[test]
    fn embeddings_are_homomorphisms() {
        let f4 = make_field(2, 2).unwrap();
        let (f16, emb) = extend_field(&f4, 2).unwrap();
        assert_eq!(f16.order(), 16);
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        for _ in 0..200 {
            let a = f4.random(&mut rng);
            let b = f4.random(&mut rng);
            assert_eq!(emb.apply(&(&a + &b)), &emb.apply(&a) + &emb.apply(&b));
            assert_eq!(emb.apply(&(&a * &b)), &emb.apply(&a) * &emb.apply(&b));
        }
        assert!(emb.apply(&f4.one()).is_one());
    }
}
