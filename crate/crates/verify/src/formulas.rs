//! Closed forms evaluated exactly. Nothing here enumerates a poset; these are the values the
//! enumerations are compared against.

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub fn int(x: i64) -> BigInt {
    BigInt::from(x)
}

pub fn rat(x: BigInt) -> BigRational {
    BigRational::from_integer(x)
}

pub fn sign(k: usize) -> BigInt {
    if k % 2 == 0 {
        int(1)
    } else {
        int(-1)
    }
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

pub fn choose(n: usize, k: usize) -> BigInt {
    if k > n {
        BigInt::zero()
    } else {
        binomial(BigInt::from(n), BigInt::from(k))
    }
}

/// `|GL_n(q)| = ∏_{i<n} (q^n - q^i)`.
pub fn gl_order(q: &BigInt, n: usize) -> BigInt {
    let qn = q.pow(n as u32);
    (0..n).fold(BigInt::one(), |acc, i| acc * (&qn - q.pow(i as u32)))
}

/// `∏_{i=1}^{m} (x^i - 1)`.
pub fn q_factorial_part(x: &BigInt, m: usize) -> BigInt {
    (1..=m).fold(BigInt::one(), |acc, i| acc * (x.pow(i as u32) - 1))
}

/// Ordered sequences of positive integers summing to `n`.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Flag count on the right of the Solomon identity:
/// `Σ_k (-1)^{len k} |GL_n| / ∏ |GL_{k_i}| · q^{-Σ_{i<j} k_i k_j}`.
pub fn solomon_sum(q: u64, n: usize) -> BigRational {
    let q = BigInt::from(q);
    let gn = gl_order(&q, n);
    let mut total = BigRational::zero();
    for k in compositions(n) {
        let denom = k.iter().fold(BigInt::one(), |acc, &ki| acc * gl_order(&q, ki));
        let cross: usize = (0..k.len())
            .flat_map(|i| (i + 1..k.len()).map(move |j| (i, j)))
            .map(|(i, j)| k[i] * k[j])
            .sum();
        let term = BigRational::new(sign(k.len()) * &gn, denom * q.pow(cross as u32));
        total += term;
    }
    total
}

/// `(-1)^n q^{C(n,2)}`.
pub fn subspace_proper_euler(q: u64, n: usize) -> BigInt {
    sign(n) * BigInt::from(q).pow((n * (n - 1) / 2) as u32)
}

/// `-q^{n(n-1)}`.
pub fn opd_gl(q: u64, n: usize) -> BigInt {
    -BigInt::from(q).pow((n * (n - 1)) as u32)
}

/// `-(1/n) q^{C(n,2)} ∏_{i<n} (q^i - 1)`.
pub fn pd_gl(q: u64, n: usize) -> BigRational {
    let qb = BigInt::from(q);
    BigRational::new(
        -(qb.pow((n * (n - 1) / 2) as u32) * q_factorial_part(&qb, n - 1)),
        BigInt::from(n),
    )
}

/// `(-1)^n / n · ∏_{i<n} (q^i - 1)`, the factor in front of `f_n(q)`.
pub fn d_gl_prefactor(q: &BigInt, n: usize) -> BigRational {
    BigRational::new(sign(n) * q_factorial_part(q, n - 1), BigInt::from(n))
}

/// The prefactor of the general linear case evaluated at `-q`:
/// `(-1)^n / n · ∏_{i<n} ((-q)^i - 1)`.
pub fn unitary_prefactor(q: u64, n: usize) -> BigRational {
    d_gl_prefactor(&-BigInt::from(q), n)
}

/// `(-1)^n / n · ∏_{i<n} (q^{2i} - 1)`.
pub fn symplectic_prefactor(q: u64, n: usize) -> BigRational {
    let q2 = BigInt::from(q).pow(2);
    BigRational::new(sign(n) * q_factorial_part(&q2, n - 1), BigInt::from(n))
}

/// `(-1)^{n-1} (n-1)^{n-2}`.
pub fn hypertree(n: usize) -> BigInt {
    sign(n - 1) * BigInt::from(n - 1).pow((n - 2) as u32)
}

/// `-(n-2)!`.
pub fn hyperforest(n: usize) -> BigInt {
    -factorial(n - 2)
}

/// `m! Σ_i (-1)^i / i!`.
pub fn derangement_count(m: usize) -> BigInt {
    let mf = factorial(m);
    (0..=m).map(|i| sign(i) * (&mf / factorial(i))).sum()
}

/// Evaluates `Σ c_i x^i` with coefficients listed from the constant term up.
pub fn eval_int(coeffs: &[i64], x: &BigInt) -> BigInt {
    coeffs.iter().rev().fold(BigInt::zero(), |acc, &c| acc * x + c)
}

/// The tabulated values of `(-1)^{n-1} χ̃(OF(GF(q)^n))`, for `2 <= n <= 5`.
pub fn ordered_frames_table(n: usize, q: u64) -> Option<BigInt> {
    let q = BigInt::from(q);
    let q2 = q.pow(2);
    let value = match n {
        2 => q2,
        3 => q2 * eval_int(&[1, 1], &q) * eval_int(&[-1, 0, 1, 1], &q),
        4 => {
            let c = eval_int(&[1, 1, 1], &q);
            q2 * eval_int(&[1, -1, -1, 0, 0, 1, 1], &q) * &c * &c
        }
        5 => {
            q2 * eval_int(&[1, 1], &q)
                * eval_int(&[1, 0, 1], &q)
                * eval_int(&[-1, 0, 1, 2, 2, 0, -3, -5, -5, -2, 2, 5, 6, 5, 3, 1], &q)
        }
        _ => return None,
    };
    Some(value)
}

/// The tabulated values of `(-1)^{n-1} n! χ̃(F(GF(q)^n))`, for `2 <= n <= 5`.
pub fn frames_table(n: usize, q: u64) -> Option<BigInt> {
    let q = BigInt::from(q);
    let base = &q * (&q - 1);
    let value = match n {
        2 => base,
        3 => base * (q.pow(2) - 1) * eval_int(&[3, 3, 1], &q),
        4 => base * (q.pow(3) - 1) * eval_int(&[-12, -12, -4, 8, 12, 9, 4, 1], &q),
        5 => {
            base * (&q - 1)
                * (q.pow(4) - 1)
                * eval_int(
                    &[-60, -120, -140, -100, 0, 105, 170, 180, 145, 94, 49, 20, 6, 1],
                    &q,
                )
        }
        _ => return None,
    };
    Some(value)
}

/// A polynomial with rational coefficients, constant term first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial(pub Vec<BigRational>);

impl Polynomial {
    fn trimmed(mut c: Vec<BigRational>) -> Polynomial {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        Polynomial(c)
    }

    pub fn from_ints(c: &[i64]) -> Polynomial {
        Polynomial::trimmed(c.iter().map(|&x| rat(int(x))).collect())
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigRational {
        self.0.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.0.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// True when every coefficient is a positive integer.
    pub fn positive_integral(&self) -> bool {
        !self.0.is_empty() && self.0.iter().all(|c| c.is_integer() && c.is_positive())
    }

    /// Lagrange interpolation through the given points (distinct abscissae).
    pub fn interpolate(points: &[(BigRational, BigRational)]) -> Polynomial {
        let mut total = vec![BigRational::zero(); points.len()];
        for (i, (xi, yi)) in points.iter().enumerate() {
            let mut basis = vec![BigRational::one()];
            let mut denom = BigRational::one();
            for (j, (xj, _)) in points.iter().enumerate() {
                if i == j {
                    continue;
                }
                let mut next = vec![BigRational::zero(); basis.len() + 1];
                for (k, c) in basis.iter().enumerate() {
                    next[k + 1] += c;
                    next[k] -= c * xj;
                }
                basis = next;
                denom *= xi - xj;
            }
            let scale = yi / denom;
            for (k, c) in basis.iter().enumerate() {
                total[k] += c * &scale;
            }
        }
        Polynomial::trimmed(total)
    }
}

impl std::fmt::Display for Polynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (d, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let coeff = if a.is_one() && d > 0 { String::new() } else { a.to_string() };
            match d {
                0 => write!(f, "{a}")?,
                1 => write!(f, "{coeff}q")?,
                _ => write!(f, "{coeff}q^{d}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solomon_sum_is_the_closed_form() {
        for (q, n) in [(2, 1), (2, 2), (2, 3), (3, 2), (3, 3), (4, 2), (5, 4)] {
            assert_eq!(solomon_sum(q, n), rat(subspace_proper_euler(q, n)), "q={q} n={n}");
        }
    }

    #[test]
    fn small_values() {
        assert_eq!(opd_gl(2, 3), int(-64));
        assert_eq!(hyperforest(4), int(-2));
        assert_eq!(hypertree(4), int(-9));
        assert_eq!(pd_gl(2, 2), rat(int(-1)));
        assert_eq!(gl_order(&int(2), 3), int(168));
        assert_eq!(compositions(3).len(), 4);
        assert_eq!(unitary_prefactor(3, 3), BigRational::new(int(32), int(3)));
        let d: Vec<BigInt> = (0..=5).map(derangement_count).collect();
        assert_eq!(d, [1, 0, 1, 2, 9, 44].map(int));
    }

    #[test]
    fn tables_at_q2() {
        assert_eq!(ordered_frames_table(2, 2), Some(int(4)));
        assert_eq!(ordered_frames_table(3, 2), Some(int(132)));
        assert_eq!(frames_table(3, 2), Some(int(78)));
        assert_eq!(frames_table(6, 2), None);
    }

    #[test]
    fn interpolation_recovers_a_line() {
        let pts: Vec<_> = [2, 3, 4, 5].iter().map(|&q| (rat(int(q)), rat(int(q + 2)))).collect();
        let p = Polynomial::interpolate(&pts);
        assert_eq!(p, Polynomial::from_ints(&[2, 1]));
        assert_eq!(p.to_string(), "q + 2");
        assert_eq!(Polynomial::from_ints(&[-1, 0, 3]).to_string(), "3q^2 - 1");
    }
}
