//! Dense univariate polynomials over a prime field `Z/pZ`.

use std::fmt;

/// Polynomial with coefficients in `{0, .., p-1}`, lowest degree first.
///
/// Trailing zero coefficients are never stored, so the zero polynomial is the
/// empty coefficient vector and structural equality is polynomial equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    modulus: u32,
    coeffs: Vec<u32>,
}

impl Polynomial {
    pub fn zero(p: u32) -> Self {
        Self {
            modulus: p,
            coeffs: Vec::new(),
        }
    }

    /// Builds a polynomial from arbitrary signed coefficients, reducing each into `{0, .., p-1}`.
    pub fn from_signed(p: u32, coeffs: &[i64]) -> Self {
        let m = i64::from(p);
        let reduced = coeffs.iter().map(|c| c.rem_euclid(m) as u32).collect();
        Self::from_reduced(p, reduced)
    }

    pub fn from_coeffs(p: u32, coeffs: Vec<u32>) -> Self {
        let reduced = coeffs.into_iter().map(|c| c % p).collect();
        Self::from_reduced(p, reduced)
    }

    fn from_reduced(p: u32, mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { modulus: p, coeffs }
    }

    /// `c * var^k`.
    pub fn monomial(p: u32, coeff: u32, degree: usize) -> Self {
        let mut coeffs = vec![0; degree + 1];
        coeffs[degree] = coeff % p;
        Self::from_reduced(p, coeffs)
    }

    /// The characteristic of the coefficient field.
    pub fn prime(&self) -> u32 {
        self.modulus
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> u32 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn leading_coeff(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    /// Number of non-zero terms.
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    pub fn add(&self, other: &Self) -> Self {
        let p = u64::from(self.modulus);
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|k| ((u64::from(self.coeff(k)) + u64::from(other.coeff(k))) % p) as u32)
            .collect();
        Self::from_reduced(self.modulus, coeffs)
    }

    pub fn neg(&self) -> Self {
        let p = self.modulus;
        let coeffs = self.coeffs.iter().map(|&c| (p - c) % p).collect();
        Self::from_reduced(p, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.modulus);
        }
        let p = u64::from(self.modulus);
        let mut acc = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + u64::from(a) * u64::from(b)) % p;
            }
        }
        Self::from_reduced(self.modulus, acc.into_iter().map(|c| c as u32).collect())
    }

    /// Remainder of division by `divisor`, which must be non-zero.
    pub fn rem(&self, divisor: &Self) -> Self {
        let d = divisor.degree().expect("division by the zero polynomial");
        let p = u64::from(self.modulus);
        let lead_inv = u64::from(inverse_mod(divisor.leading_coeff(), self.modulus));
        let mut rem: Vec<u64> = self.coeffs.iter().map(|&c| u64::from(c)).collect();
        while rem.len() > d {
            let top = rem.len() - 1;
            let factor = rem[top] * lead_inv % p;
            if factor != 0 {
                let shift = top - d;
                for (k, &c) in divisor.coeffs.iter().enumerate() {
                    let sub = factor * u64::from(c) % p;
                    rem[shift + k] = (rem[shift + k] + p - sub) % p;
                }
            }
            rem.pop();
            while rem.last() == Some(&0) {
                rem.pop();
            }
        }
        Self::from_reduced(self.modulus, rem.into_iter().map(|c| c as u32).collect())
    }

    /// Scales so the leading coefficient is one. The zero polynomial is returned unchanged.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let p = u64::from(self.modulus);
        let inv = u64::from(inverse_mod(self.leading_coeff(), self.modulus));
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| (u64::from(c) * inv % p) as u32)
            .collect();
        Self::from_reduced(self.modulus, coeffs)
    }

    /// Formats using `var` as the indeterminate, highest degree first,
    /// eliding unit coefficients and zero terms (`"0"` for zero).
    pub fn display_with<'a>(&'a self, var: &'a str) -> impl fmt::Display + 'a {
        PolyDisplay { poly: self, var }
    }
}

struct PolyDisplay<'a> {
    poly: &'a Polynomial,
    var: &'a str,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, &c) in self.poly.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            match (k, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "{}", self.var)?,
                (1, c) => write!(f, "{c}*{}", self.var)?,
                (k, 1) => write!(f, "{}^{k}", self.var)?,
                (k, c) => write!(f, "{c}*{}^{k}", self.var)?,
            }
        }
        Ok(())
    }
}

/// Multiplicative inverse of a non-zero residue modulo a prime.
pub(crate) fn inverse_mod(a: u32, p: u32) -> u32 {
    // Fermat: a^(p-2)
    let p64 = u64::from(p);
    let mut base = u64::from(a) % p64;
    assert!(base != 0, "zero has no inverse modulo {p}");
    let mut exp = p - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p64;
        }
        base = base * base % p64;
        exp >>= 1;
    }
    acc as u32
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
