//! Exact arithmetic in `GF(p^h)`.
//!
//! Elements are stored as integer codes in `[0, q)`: the base-`p` digits of a
//! code, little-endian, are the coefficients of the representative polynomial.
//! Code 0 is the additive identity and code 1 the multiplicative identity.
//! The modulus is the monic irreducible polynomial of degree `h` with the
//! smallest integer encoding, so a field is reproducible bit-for-bit from
//! `(p, h)` alone.

use crate::{Error, Result};

/// Largest supported field order (enumeration budget).
pub const MAX_FIELD_ORDER: u64 = 1 << 16;

/// Orders up to this bound get full addition/multiplication lookup tables.
const TABLE_MAX: u64 = 512;

/// An element of a finite field, encoded as an integer code in `[0, q)`.
///
/// A `Felt` is only meaningful relative to the [`Field`] that produced it;
/// all arithmetic goes through `Field` methods.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Felt(u32);

impl Felt {
    /// The integer code of this element.
    pub fn code(self) -> u64 {
        self.0 as u64
    }
}

/// A finite field `GF(p^h)` with `q = p^h <= 2^16`.
///
/// Immutable after construction; all operations are pure functions, so a
/// `Field` can be shared read-only among any number of threads.
#[derive(Debug, Clone)]
pub struct Field {
    p: u64,
    h: u32,
    q: u64,
    /// Monic modulus, little-endian coefficients, length h+1. For h = 1 this
    /// is the polynomial x, i.e. `[0, 1]`.
    modulus: Vec<u64>,
    neg_t: Vec<u32>,
    inv_t: Vec<u32>,
    add_t: Option<Vec<u32>>,
    mul_t: Option<Vec<u32>>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.h == other.h
    }
}
impl Eq for Field {}

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

/// Remainder of polynomial division over GF(p), little-endian coefficients.
fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = a.to_vec();
    let db = b.len() - 1;
    debug_assert_eq!(b[db], 1, "divisor must be monic");
    while r.len() > db {
        let lead = *r.last().unwrap() % p;
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for i in 0..=db {
                let sub = (lead * b[i]) % p;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
        }
        r.pop();
    }
    while r.last() == Some(&0) {
        r.pop();
    }
    r
}

impl Field {
    /// Construct `GF(p^h)` with the canonically chosen modulus.
    pub fn new(p: u64, h: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if h < 1 {
            return Err(Error::DegreeZero);
        }
        let q128 = (p as u128).pow(h);
        if q128 > MAX_FIELD_ORDER as u128 {
            return Err(Error::FieldTooLarge {
                q: q128,
                max: MAX_FIELD_ORDER,
            });
        }
        let q = q128 as u64;
        let modulus = if h == 1 {
            vec![0, 1]
        } else {
            Self::smallest_irreducible(p, h)
        };
        let mut f = Field {
            p,
            h,
            q,
            modulus,
            neg_t: Vec::new(),
            inv_t: Vec::new(),
            add_t: None,
            mul_t: None,
        };
        f.neg_t = (0..q).map(|a| f.slow_neg(a) as u32).collect();
        f.inv_t = (0..q)
            .map(|a| if a == 0 { 0 } else { f.slow_pow(a, q - 2) as u32 })
            .collect();
        if q <= TABLE_MAX {
            let mut add = vec![0u32; (q * q) as usize];
            let mut mul = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    add[(a * q + b) as usize] = f.slow_add(a, b) as u32;
                    mul[(a * q + b) as usize] = f.slow_mul(a, b) as u32;
                }
            }
            f.add_t = Some(add);
            f.mul_t = Some(mul);
        }
        Ok(f)
    }

    /// The monic irreducible polynomial of degree h over GF(p) whose
    /// non-leading coefficients, read as a base-p integer, are smallest.
    fn smallest_irreducible(p: u64, h: u32) -> Vec<u64> {
        let count = (p as u128).pow(h) as u64;
        for tail in 0..count {
            let mut poly: Vec<u64> = Vec::with_capacity(h as usize + 1);
            let mut t = tail;
            for _ in 0..h {
                poly.push(t % p);
                t /= p;
            }
            poly.push(1);
            if Self::is_irreducible(&poly, p) {
                return poly;
            }
        }
        unreachable!("irreducible polynomials of every degree exist over GF(p)")
    }

    /// Trial division by every monic polynomial of degree 1..=h/2.
    fn is_irreducible(poly: &[u64], p: u64) -> bool {
        let h = poly.len() - 1;
        for d in 1..=(h / 2) {
            let count = (p as u128).pow(d as u32) as u64;
            for tail in 0..count {
                let mut div: Vec<u64> = Vec::with_capacity(d + 1);
                let mut t = tail;
                for _ in 0..d {
                    div.push(t % p);
                    t /= p;
                }
                div.push(1);
                if poly_rem(poly, &div, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    /// The order q = p^h.
    pub fn q(&self) -> u64 {
        self.q
    }

    /// Little-endian coefficients of the monic modulus (length h+1).
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> Felt {
        Felt(0)
    }

    pub fn one(&self) -> Felt {
        Felt(1)
    }

    /// The element with the given code. Panics if the code is out of range;
    /// use [`Field::try_felt`] for validated input.
    pub fn felt(&self, code: u64) -> Felt {
        assert!(code < self.q, "code {code} out of range for GF({})", self.q);
        Felt(code as u32)
    }

    pub fn try_felt(&self, code: u64) -> Result<Felt> {
        if code < self.q {
            Ok(Felt(code as u32))
        } else {
            Err(Error::CodeOutOfRange { code, q: self.q })
        }
    }

    /// All q field elements in code order.
    pub fn elements(&self) -> impl Iterator<Item = Felt> + '_ {
        (0..self.q).map(|c| Felt(c as u32))
    }

    fn decode(&self, code: u64) -> Vec<u64> {
        let mut digits = Vec::with_capacity(self.h as usize);
        let mut c = code;
        for _ in 0..self.h {
            digits.push(c % self.p);
            c /= self.p;
        }
        digits
    }

    fn encode(&self, digits: &[u64]) -> u64 {
        let mut code = 0;
        for &d in digits.iter().rev() {
            code = code * self.p + (d % self.p);
        }
        code
    }

    fn slow_add(&self, a: u64, b: u64) -> u64 {
        if self.h == 1 {
            return (a + b) % self.p;
        }
        let da = self.decode(a);
        let db = self.decode(b);
        let sum: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.encode(&sum)
    }

    fn slow_neg(&self, a: u64) -> u64 {
        if self.h == 1 {
            return (self.p - a % self.p) % self.p;
        }
        let da = self.decode(a);
        let neg: Vec<u64> = da.iter().map(|x| (self.p - x) % self.p).collect();
        self.encode(&neg)
    }

    fn slow_mul(&self, a: u64, b: u64) -> u64 {
        if self.h == 1 {
            return (a * b) % self.p;
        }
        let da = self.decode(a);
        let db = self.decode(b);
        let mut prod = vec![0u64; 2 * self.h as usize - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        let rem = poly_rem(&prod, &self.modulus, self.p);
        self.encode(&rem)
    }

    fn slow_pow(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.slow_mul(acc, base);
            }
            base = self.slow_mul(base, base);
            e >>= 1;
        }
        acc
    }

    #[inline]
    pub fn add(&self, a: Felt, b: Felt) -> Felt {
        match &self.add_t {
            Some(t) => Felt(t[(a.0 as u64 * self.q + b.0 as u64) as usize]),
            None => Felt(self.slow_add(a.0 as u64, b.0 as u64) as u32),
        }
    }

    #[inline]
    pub fn neg(&self, a: Felt) -> Felt {
        Felt(self.neg_t[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Felt, b: Felt) -> Felt {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Felt, b: Felt) -> Felt {
        match &self.mul_t {
            Some(t) => Felt(t[(a.0 as u64 * self.q + b.0 as u64) as usize]),
            None => Felt(self.slow_mul(a.0 as u64, b.0 as u64) as u32),
        }
    }

    pub fn inv(&self, a: Felt) -> Result<Felt> {
        if a.0 == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(Felt(self.inv_t[a.0 as usize]))
    }

    pub fn div(&self, a: Felt, b: Felt) -> Result<Felt> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Felt, e: u64) -> Felt {
        Felt(self.slow_pow(a.0 as u64, e) as u32)
    }

    /// Evaluate a polynomial with little-endian coefficients at x (Horner).
    pub fn eval_poly(&self, coeffs: &[Felt], x: Felt) -> Felt {
        let mut acc = self.zero();
        for &c in coeffs.iter().rev() {
            acc = self.add(self.mul(acc, x), c);
        }
        acc
    }

    /// True iff some element of the field is a root of the polynomial.
    ///
    /// This is the exhaustive evaluation over all q elements; it is the
    /// existence test behind the parameter conditions of the constant-rank
    /// orbits.
    pub fn poly_has_root(&self, coeffs: &[Felt]) -> bool {
        assert!(!coeffs.is_empty(), "polynomial must have coefficients");
        self.elements()
            .any(|x| self.eval_poly(coeffs, x) == self.zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_fields() {
        for p in [2u64, 3, 5, 7, 11, 13] {
            let f = Field::new(p, 1).unwrap();
            assert_eq!(f.q(), p);
            assert_eq!(f.modulus(), &[0, 1]);
        }
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(Field::new(4, 1), Err(Error::NonPrime(4))));
        assert!(matches!(Field::new(6, 1), Err(Error::NonPrime(6))));
        assert!(matches!(Field::new(1, 1), Err(Error::NonPrime(1))));
        assert!(matches!(Field::new(2, 0), Err(Error::DegreeZero)));
        assert!(matches!(
            Field::new(2, 17),
            Err(Error::FieldTooLarge { .. })
        ));
        assert!(Field::new(2, 16).is_ok());
    }

    /// Independent oracle for the GF(4) modulus: enumerate all monic
    /// quadratics over GF(2) and root-search each one. Degree <= 3 is
    /// irreducible iff rootless.
    #[test]
    fn gf4_modulus_is_the_unique_irreducible_quadratic() {
        let f2 = Field::new(2, 1).unwrap();
        let mut irreducible = Vec::new();
        for c0 in 0..2u64 {
            for c1 in 0..2u64 {
                let coeffs = vec![f2.felt(c0), f2.felt(c1), f2.one()];
                if !f2.poly_has_root(&coeffs) {
                    irreducible.push(vec![c0, c1, 1]);
                }
            }
        }
        assert_eq!(irreducible, vec![vec![1, 1, 1]]);
        let f4 = Field::new(2, 2).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
    }

    #[test]
    fn gf4_multiplication() {
        // code 2 = x, code 3 = x + 1; x * x = x^2 = x + 1 mod x^2+x+1.
        let f4 = Field::new(2, 2).unwrap();
        assert_eq!(f4.mul(f4.felt(2), f4.felt(2)), f4.felt(3));
        assert_eq!(f4.mul(f4.felt(2), f4.felt(3)), f4.one());
    }

    #[test]
    fn gf16_modulus() {
        // Over GF(2): x^4, x^4+1, x^4+x all factor; x^4+x+1 is the first
        // irreducible quartic by tail encoding.
        let f = Field::new(2, 4).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 0, 0, 1]);
    }

    #[test]
    fn gf3_inverse() {
        let f3 = Field::new(3, 1).unwrap();
        assert_eq!(f3.inv(f3.felt(2)).unwrap(), f3.felt(2));
        assert!(matches!(f3.inv(f3.zero()), Err(Error::ZeroInverse)));
    }

    /// Every prime power q <= 64.
    fn small_orders() -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61] {
            let mut h = 1;
            while p.pow(h) <= 64 {
                out.push((p, h));
                h += 1;
            }
        }
        out
    }

    #[test]
    fn field_axioms_exhaustive() {
        for (p, h) in small_orders() {
            let f = Field::new(p, h).unwrap();
            let elems: Vec<Felt> = f.elements().collect();
            for &a in &elems {
                assert_eq!(f.add(a, f.zero()), a);
                assert_eq!(f.mul(a, f.one()), a);
                assert_eq!(f.add(a, f.neg(a)), f.zero());
                if a != f.zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
                }
                for &b in &elems {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for &c in &elems {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn poly_root_detection() {
        let f2 = Field::new(2, 1).unwrap();
        // x^3 + x^2 + 1 evaluates to 1 at both elements of GF(2).
        let cubic = [f2.one(), f2.zero(), f2.one(), f2.one()];
        assert!(!f2.poly_has_root(&cubic));
        // x^2 + x has the root 0.
        let sq = [f2.zero(), f2.one(), f2.one()];
        assert!(f2.poly_has_root(&sq));

        let f3 = Field::new(3, 1).unwrap();
        // x^2 + 1: 0 -> 1, 1 -> 2, 2 -> 2.
        let quad = [f3.one(), f3.zero(), f3.one()];
        assert!(!f3.poly_has_root(&quad));
    }

    #[test]
    fn poly_root_agrees_with_factored_products() {
        // (x - r)(x - s) expanded must always report a root.
        for q in [(2u64, 1u32), (3, 1), (2, 2), (5, 1)] {
            let f = Field::new(q.0, q.1).unwrap();
            for r in f.elements() {
                for s in f.elements() {
                    let c0 = f.mul(r, s);
                    let c1 = f.neg(f.add(r, s));
                    assert!(f.poly_has_root(&[c0, c1, f.one()]));
                }
            }
        }
    }
}
