//! Arithmetic in GF(q) for prime powers q <= 2^16.
//!
//! Elements are encoded as integers `0..q` whose base-`p` digits are the polynomial
//! coefficients, lowest degree first. Extension fields are built from the smallest monic
//! irreducible polynomial, comparing coefficient tuples lowest degree first.

use crate::error::{GroundError, Result};

pub type Elem = u32;

pub const MAX_FIELD_ORDER: u64 = 1 << 16;

#[derive(Clone, Debug)]
pub struct FiniteField {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// Splits `q` as `p^k`, if it is a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let mut rest = q;
    let mut k = 0;
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p as u32, k))
}

fn digits(x: u32, p: u32, k: u32) -> Vec<u32> {
    let mut d = Vec::with_capacity(k as usize);
    let mut x = x;
    for _ in 0..k {
        d.push(x % p);
        x /= p;
    }
    d
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Remainder of `a` modulo the monic polynomial `m` over GF(p) (coefficients lowest first).
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                let idx = shift + i;
                r[idx] = (r[idx] + p - (lead * c) % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn poly_mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut prod = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    let mut r = poly_rem(&prod, m, p);
    r.resize(m.len() - 1, 0);
    r
}

fn is_irreducible(m: &[u32], p: u32) -> bool {
    let k = m.len() - 1;
    for d in 1..=k / 2 {
        for low in 0..p.pow(d as u32) {
            let mut f = digits(low, p, d as u32);
            f.push(1);
            if poly_rem(m, &f, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Smallest monic irreducible polynomial of degree `k` over GF(p), comparing the
/// coefficient tuples `(c_0, ..., c_{k-1})` lexicographically.
pub fn smallest_irreducible(p: u32, k: u32) -> Vec<u32> {
    let total = p.pow(k);
    for v in 0..total {
        // c_0 is the most significant position of the enumeration counter
        let mut coeffs: Vec<u32> = digits(v, p, k).into_iter().rev().collect();
        coeffs.push(1);
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl FiniteField {
    pub fn new(q: u64) -> Result<FiniteField> {
        if q > MAX_FIELD_ORDER {
            return Err(GroundError::SizeLimit {
                what: "field order",
                value: q,
                limit: MAX_FIELD_ORDER,
            });
        }
        let (p, k) = prime_power(q).ok_or(GroundError::NotPrimePower(q))?;
        let q = q as u32;
        let modulus = if k == 1 { vec![0, 1] } else { smallest_irreducible(p, k) };
        let slow_mul = |a: u32, b: u32| -> u32 {
            if k == 1 {
                ((a as u64 * b as u64) % p as u64) as u32
            } else {
                undigits(&poly_mul_mod(&digits(a, p, k), &digits(b, p, k), &modulus, p), p)
            }
        };
        let slow_pow = |a: u32, mut e: u32| -> u32 {
            let mut base = a;
            let mut acc = 1;
            while e > 0 {
                if e & 1 == 1 {
                    acc = slow_mul(acc, base);
                }
                base = slow_mul(base, base);
                e >>= 1;
            }
            acc
        };
        let order = q - 1;
        let factors = prime_factors(order);
        let generator = (1..q)
            .find(|&g| factors.iter().all(|&r| slow_pow(g, order / r) != 1))
            .expect("the multiplicative group of a finite field is cyclic");
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![0u32; q as usize];
        let mut x = 1;
        for i in 0..order {
            exp.push(x);
            log[x as usize] = i;
            x = slow_mul(x, generator);
        }
        Ok(FiniteField {
            p,
            k,
            q,
            modulus,
            exp,
            log,
        })
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    /// Defining polynomial, coefficients lowest degree first (`x` for prime fields).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.q
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            return a ^ b;
        }
        if self.k == 1 {
            return (a + b) % self.p;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.k {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if self.p == 2 {
            return a;
        }
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.k {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        let order = self.q - 1;
        let e = (self.log[a as usize] + self.log[b as usize]) % order;
        self.exp[e as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a == 0 {
            return None;
        }
        let order = self.q - 1;
        let e = (order - self.log[a as usize]) % order;
        Some(self.exp[e as usize])
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let order = (self.q - 1) as u64;
        let l = (self.log[a as usize] as u64 * (e % order)) % order;
        self.exp[l as usize]
    }

    /// `x ↦ x^p`.
    pub fn frobenius(&self, a: Elem) -> Elem {
        self.pow(a, self.p as u64)
    }

    /// A generator of the multiplicative group.
    pub fn primitive_element(&self) -> Elem {
        if self.q == 2 {
            1
        } else {
            self.exp[1]
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: Elem) -> u32 {
        let mut x = a;
        let mut n = 1;
        while x != 1 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf4_modulus_and_product() {
        let f = FiniteField::new(4).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        // the two non-unit nonzero elements are x (=2) and x+1 (=3)
        assert_eq!(f.mul(2, 3), 1);
    }

    #[test]
    fn gf5_inverse() {
        let f = FiniteField::new(5).unwrap();
        assert_eq!(f.mul(2, 3), 1);
        assert_eq!(f.inv(2), Some(3));
    }

    #[test]
    fn not_prime_power() {
        assert!(matches!(FiniteField::new(6), Err(GroundError::NotPrimePower(6))));
        assert!(matches!(FiniteField::new(1), Err(GroundError::NotPrimePower(1))));
        assert!(FiniteField::new(1 << 17).is_err());
    }

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(97), Some((97, 1)));
        assert_eq!(prime_power(12), None);
    }

    #[test]
    fn gf9_modulus() {
        // x^2+1 is irreducible over GF(3) and comes before x^2+x+2 in (c0,c1) order
        assert_eq!(smallest_irreducible(3, 2), vec![1, 0, 1]);
    }
}
