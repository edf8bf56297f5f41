//! Exact arithmetic over `Z_n`: the divisor lattice, subgroups, unit groups
//! and cyclotomic polynomials.
//!
//! Subgroups of `Z_n` are identified with their order: for every `d | n`
//! there is exactly one subgroup of order `d`, namely the multiples of `n/d`.

use crate::bitset::ResidueSet;
use crate::error::{Error, Result};

pub fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u32, b: u32) -> u32 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// Euler's totient, by trial division.
pub fn totient(n: u32) -> u32 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Distinct prime factors of `n`, ascending.
pub fn prime_factors(n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            out.push(p);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

pub fn is_prime(n: u32) -> bool {
    n >= 2 && prime_factors(n) == [n]
}

/// True iff `n` is a power of a single prime (`n = 1` is not).
pub fn is_prime_power(n: u32) -> bool {
    prime_factors(n).len() == 1
}

/// `n` is composite when it has a proper nontrivial divisor.
pub fn is_composite(n: u32) -> bool {
    n >= 4 && !is_prime(n)
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u32) -> Vec<u32> {
    assert!(n >= 1, "divisors of zero requested");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// The unique subgroup of order `d` in `Z_n`.
pub fn subgroup(n: u32, d: u32) -> Result<ResidueSet> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    if d == 0 || !n.is_multiple_of(d) {
        return Err(Error::NotADivisor { d, n });
    }
    let step = n / d;
    Ok(ResidueSet::from_iter(n, (0..d).map(|k| k * step)))
}

/// Multiplicative inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: u32, m: u32) -> Option<u32> {
    if m == 1 {
        return Some(1);
    }
    let (mut old_r, mut r) = (i64::from(a % m), i64::from(m));
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(i64::from(m)) as u32)
}

/// Reduces a unit modulo `m`. The single unit of `Z_1` is written as 1.
pub fn unit_mod(k: u32, m: u32) -> u32 {
    if m == 1 {
        1
    } else {
        k % m
    }
}

pub fn mul_mod(a: u32, b: u32, m: u32) -> u32 {
    unit_mod(((u64::from(a) * u64::from(b)) % u64::from(m)) as u32, m)
}

/// `x^e mod m` by repeated squaring.
pub fn pow_mod(x: u32, mut e: u32, m: u32) -> u32 {
    let m64 = u64::from(m);
    let mut base = u64::from(x) % m64;
    let mut acc = 1 % m64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m64;
        }
        base = base * base % m64;
        e >>= 1;
    }
    acc as u32
}

/// The cyclic group `Z_n`, elements `0..n` written additively.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CyclicGroup {
    n: u32,
}

impl CyclicGroup {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroOrder);
        }
        Ok(Self { n })
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn divisors(&self) -> Vec<u32> {
        divisors(self.n)
    }

    pub fn subgroup(&self, d: u32) -> Result<ResidueSet> {
        subgroup(self.n, d)
    }

    /// Order of the element `x`.
    pub fn element_order(&self, x: u32) -> u32 {
        self.n / gcd(self.n, x % self.n)
    }
}

/// The multiplicative group of units modulo `m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UnitGroup {
    modulus: u32,
    elements: Vec<u32>,
}

impl UnitGroup {
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, k: u32) -> bool {
        self.elements
            .binary_search(&unit_mod(k, self.modulus))
            .is_ok()
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        mul_mod(a, b, self.modulus)
    }

    pub fn inverse(&self, a: u32) -> u32 {
        mod_inverse(a, self.modulus).expect("element of a unit group is invertible")
    }
}

/// Residues in `[1, m)` coprime to `m`; for `m = 1` the single unit 1.
pub fn units(m: u32) -> UnitGroup {
    assert!(m >= 1, "unit group of Z_0 requested");
    let elements = if m == 1 {
        vec![1]
    } else {
        (1..m).filter(|&k| gcd(k, m) == 1).collect()
    };
    UnitGroup {
        modulus: m,
        elements,
    }
}

/// Integer polynomial division by a monic divisor; panics if inexact.
fn div_exact_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    debug_assert_eq!(den[dd], 1);
    if rem.len() < den.len() {
        return vec![0];
    }
    let mut quot = vec![0i64; rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    assert!(rem.iter().all(|&c| c == 0), "inexact polynomial division");
    quot
}

/// Coefficients of the `n`-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_poly(n: u32) -> Vec<i64> {
    assert!(n >= 1);
    // x^n - 1
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in divisors(n) {
        if d < n {
            num = div_exact_monic(&num, &cyclotomic_poly(d));
        }
    }
    num
}
