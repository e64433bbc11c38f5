//! Arithmetic in GF(p^n) for small prime powers.
//!
//! Elements are indices `0..q` (base-p digit vectors of the polynomial
//! coefficients, constant term least significant). Addition and
//! multiplication are table-driven; the tables are built once from a fixed
//! irreducible modulus and the construction verifies irreducibility by
//! checking that every nonzero element is invertible.

use thiserror::Error;

/// Largest supported field order.
pub const MAX_ORDER: usize = 81;
/// Largest supported extension degree.
pub const MAX_DEGREE: u32 = 4;

#[derive(Debug, Error)]
pub enum GfError {
    #[error("{0} is not a prime power")]
    NotPrimePower(usize),
    #[error("field order {0} exceeds the supported limit of {MAX_ORDER}")]
    OrderTooLarge(usize),
    #[error("extension degree {0} exceeds the supported limit of {MAX_DEGREE}")]
    DegreeTooLarge(u32),
    #[error("modulus for GF({0}^{1}) failed the irreducibility check")]
    ReducibleModulus(u64, u32),
}

/// Monic irreducible moduli for the extension fields with order ≤ 81,
/// coefficients listed constant-term first (degree-n coefficient omitted).
/// These are the usual Conway-style choices.
fn builtin_modulus(p: u64, n: u32) -> Option<Vec<u64>> {
    let tail: &[u64] = match (p, n) {
        (2, 2) => &[1, 1],          // x^2 + x + 1
        (2, 3) => &[1, 1, 0],       // x^3 + x + 1
        (2, 4) => &[1, 1, 0, 0],    // x^4 + x + 1
        (3, 2) => &[2, 2],          // x^2 + 2x + 2
        (3, 3) => &[1, 2, 0],       // x^3 + 2x + 1
        (3, 4) => &[2, 0, 0, 2],    // x^4 + 2x^3 + 2
        (5, 2) => &[2, 4],          // x^2 + 4x + 2
        (7, 2) => &[3, 6],          // x^2 + 6x + 3
        _ => return None,
    };
    Some(tail.to_vec())
}

/// GF(p^n) with table-driven arithmetic.
#[derive(Debug, Clone)]
pub struct GaloisField {
    p: u64,
    n: u32,
    q: usize,
    modulus: Vec<u64>,
    add: Vec<u16>,
    mul: Vec<u16>,
}

impl GaloisField {
    /// Construct GF(p^n). `p` must be prime, `n ≥ 1`, and `p^n ≤ 81`.
    pub fn new(p: u64, n: u32) -> Result<Self, GfError> {
        if !is_prime(p) {
            return Err(GfError::NotPrimePower(p.pow(n.max(1)) as usize));
        }
        if n == 0 || n > MAX_DEGREE {
            return Err(GfError::DegreeTooLarge(n));
        }
        let q = (p as usize).pow(n);
        if q > MAX_ORDER {
            return Err(GfError::OrderTooLarge(q));
        }
        let modulus = if n == 1 {
            vec![0] // x ≡ 0: the prime field itself
        } else {
            builtin_modulus(p, n).ok_or(GfError::OrderTooLarge(q))?
        };
        let field = Self::build_tables(p, n, q, modulus)?;
        Ok(field)
    }

    /// Construct the field of the given order.
    pub fn for_order(q: usize) -> Result<Self, GfError> {
        let (p, n) = factor_prime_power(q).ok_or(GfError::NotPrimePower(q))?;
        Self::new(p, n)
    }

    fn build_tables(p: u64, n: u32, q: usize, modulus: Vec<u64>) -> Result<Self, GfError> {
        let digits = |x: usize| -> Vec<u64> {
            let mut v = vec![0u64; n as usize];
            let mut x = x as u64;
            for d in v.iter_mut() {
                *d = x % p;
                x /= p;
            }
            v
        };
        let index = |v: &[u64]| -> usize {
            v.iter()
                .rev()
                .fold(0usize, |acc, &d| acc * p as usize + d as usize)
        };

        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        for x in 0..q {
            let dx = digits(x);
            for y in 0..q {
                let dy = digits(y);
                let sum: Vec<u64> = dx.iter().zip(&dy).map(|(a, b)| (a + b) % p).collect();
                add[x * q + y] = index(&sum) as u16;

                // polynomial product reduced mod the modulus
                let mut prod = vec![0u64; 2 * n as usize - 1];
                for (i, &a) in dx.iter().enumerate() {
                    for (j, &b) in dy.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + a * b) % p;
                    }
                }
                for deg in (n as usize..prod.len()).rev() {
                    let c = prod[deg];
                    if c == 0 {
                        continue;
                    }
                    prod[deg] = 0;
                    // x^deg = x^(deg-n) * (-modulus tail)
                    for (k, &m) in modulus.iter().enumerate() {
                        let idx = deg - n as usize + k;
                        prod[idx] = (prod[idx] + c * (p - m % p)) % p;
                    }
                }
                mul[x * q + y] = index(&prod[..n as usize]) as u16;
            }
        }

        let field = Self { p, n, q, modulus, add, mul };

        // the quotient ring is a field iff the modulus is irreducible
        for x in 1..q {
            if !(1..q).any(|y| field.mul(x, y) == 1) {
                return Err(GfError::ReducibleModulus(p, n));
            }
        }
        Ok(field)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    /// Field order `q = p^n`.
    pub fn order(&self) -> usize {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    #[inline]
    pub fn add(&self, x: usize, y: usize) -> usize {
        self.add[x * self.q + y] as usize
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.q + y] as usize
    }

    pub fn neg(&self, x: usize) -> usize {
        (1..self.q)
            .chain(std::iter::once(0))
            .find(|&y| self.add(x, y) == 0)
            .unwrap_or(0)
    }

    pub fn pow(&self, x: usize, mut k: u64) -> usize {
        let mut base = x;
        let mut acc = 1usize;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Field trace `tr(x) = x + x^p + … + x^{p^{n-1}}`, reduced to the prime
    /// subfield and returned as an integer in `0..p`.
    pub fn trace(&self, x: usize) -> u64 {
        let mut acc = 0usize;
        let mut frob = x;
        for _ in 0..self.n {
            acc = self.add(acc, frob);
            frob = self.pow(frob, self.p);
        }
        debug_assert!(acc < self.p as usize, "trace must land in the prime subfield");
        acc as u64
    }

    /// The standard F_p-basis element `x^j` (index `p^j`).
    pub fn basis_element(&self, j: u32) -> usize {
        (self.p as usize).pow(j)
    }
}

pub fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= m {
        if m % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

/// Decompose `q = p^n` if `q` is a prime power.
pub fn factor_prime_power(q: usize) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q as u64 {
        if q as u64 % p == 0 {
            let mut m = q as u64;
            let mut n = 0u32;
            while m % p == 0 {
                m /= p;
                n += 1;
            }
            return (m == 1).then_some((p, n));
        }
        p += 1;
    }
    Some((q as u64, 1))
}

/// Smallest prime power `≥ d`.
pub fn least_prime_power(d: usize) -> usize {
    let mut m = d.max(2);
    loop {
        if factor_prime_power(m).is_some() {
            return m;
        }
        m += 1;
    }
}
