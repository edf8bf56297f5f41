//! Exact character sums and the dual S-ring.
//!
//! The character group of `Z_n` is identified with `Z_n` through
//! `a ↦ χ_a`, `χ_a(x) = ζ^{ax}`. Character values live in `Z[x]/(Φ_n)`
//! with integer coefficients, so equality tests are exact.

use std::collections::HashMap;

use crate::bitset::ResidueSet;
use crate::error::{Error, Result};
use crate::modarith::cyclotomic_poly;
use crate::section::Section;
use crate::sring::SRing;

/// An element of `Z[ζ_n]`, as coefficients of `1, x, …, x^{φ(n)-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicInt {
    n: u32,
    coeffs: Vec<i64>,
}

impl CyclotomicInt {
    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// The integer constant `c`.
    pub fn constant(n: u32, c: i64) -> Self {
        let mut coeffs = vec![0; cyclotomic_poly(n).len() - 1];
        coeffs[0] = c;
        Self { n, coeffs }
    }
}

/// Powers of `ζ_n` reduced modulo `Φ_n`.
#[derive(Debug, Clone)]
pub struct CyclotomicField {
    n: u32,
    degree: usize,
    powers: Vec<Vec<i64>>,
}

impl CyclotomicField {
    pub fn new(n: u32) -> Self {
        let phi = cyclotomic_poly(n);
        let degree = phi.len() - 1;
        let mut powers = Vec::with_capacity(n as usize);
        let mut cur = vec![0i64; degree];
        cur[0] = 1;
        for _ in 0..n {
            powers.push(cur.clone());
            // multiply by x, then reduce the overflow term with the monic Φ_n
            let top = cur[degree - 1];
            cur.rotate_right(1);
            cur[0] = 0;
            if top != 0 {
                for (i, c) in cur.iter_mut().enumerate() {
                    *c -= top * phi[i];
                }
            }
        }
        Self { n, degree, powers }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `ζ^e` reduced.
    pub fn power(&self, e: u32) -> &[i64] {
        &self.powers[(e % self.n) as usize]
    }

    /// `χ_a(X) = Σ_{x∈X} ζ^{ax}`.
    pub fn character_sum(&self, x: &ResidueSet, a: u32) -> CyclotomicInt {
        let n = u64::from(self.n);
        let mut coeffs = vec![0i64; self.degree];
        for v in x.iter() {
            let e = (u64::from(a) * u64::from(v) % n) as u32;
            for (c, p) in coeffs.iter_mut().zip(self.power(e)) {
                *c += p;
            }
        }
        CyclotomicInt { n: self.n, coeffs }
    }
}

pub fn character_sum(n: u32, x: &ResidueSet, a: u32) -> CyclotomicInt {
    CyclotomicField::new(n).character_sum(x, a)
}

/// The dual S-ring: characters grouped by their values on every class.
pub fn dual_sring(a: &SRing) -> Result<SRing> {
    let n = a.n();
    let field = CyclotomicField::new(n);
    let mut ids: HashMap<Vec<i64>, u32> = HashMap::new();
    let mut labels = Vec::with_capacity(n as usize);
    for ch in 0..n {
        let mut key = Vec::with_capacity(a.rank() * field.degree());
        for c in a.classes() {
            key.extend_from_slice(field.character_sum(c, ch).coeffs());
        }
        let next = ids.len() as u32;
        labels.push(*ids.entry(key).or_insert(next));
    }
    let count = ids.len();
    let dual = SRing::from_canonical_labels(n, labels, count);
    dual.check_axioms()
        .map_err(|e| Error::DualNotAnSRing(e.to_string()))?;
    if dual.rank() != a.rank() {
        return Err(Error::DualNotAnSRing(format!(
            "rank {} differs from rank {}",
            dual.rank(),
            a.rank()
        )));
    }
    Ok(dual)
}

/// The section of the character group dual to `S`: `(n/u, n/l)`.
pub fn dual_section(s: &Section) -> Section {
    s.dual()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: u32, xs: &[u32]) -> ResidueSet {
        ResidueSet::from_iter(n, xs.iter().copied())
    }

    #[test]
    fn character_sum_examples() {
        let x = set(5, &[1, 4]);
        assert_eq!(character_sum(5, &x, 0), CyclotomicInt::constant(5, 2));
        assert_eq!(character_sum(5, &x, 1).coeffs(), &[-1, 0, -1, -1]);
        for n in 2..=20 {
            let rest = ResidueSet::full(n).difference(&set(n, &[0]));
            for a in 1..n {
                assert_eq!(character_sum(n, &rest, a), CyclotomicInt::constant(n, -1));
            }
        }
    }

    #[test]
    fn dual_examples() {
        for n in 1..=12 {
            assert_eq!(dual_sring(&SRing::full(n)).unwrap(), SRing::full(n));
            assert_eq!(dual_sring(&SRing::trivial(n)).unwrap(), SRing::trivial(n));
        }
        let z5c = SRing::validate(5, &[vec![0], vec![1, 4], vec![2, 3]]).unwrap();
        assert_eq!(dual_sring(&z5c).unwrap(), z5c);
    }

    #[test]
    fn dual_of_wreath() {
        // W4 = {0},{2},{1,3}: characters a=0; a=2 (value 1 on {2}, -2 on {1,3}); a=1,3 (-1, 0)
        let w4 = SRing::validate(4, &[vec![0], vec![2], vec![1, 3]]).unwrap();
        assert_eq!(dual_sring(&w4).unwrap(), w4);
        // {0},{3},{1,5},{2,4} over Z_6 is self-dual up to the identification
        let a = SRing::validate(6, &[vec![0], vec![3], vec![1, 5], vec![2, 4]]).unwrap();
        assert_eq!(dual_sring(&dual_sring(&a).unwrap()).unwrap(), a);
    }

    #[test]
    fn dual_section_examples() {
        let s = Section::new(12, 1, 4).unwrap();
        assert_eq!(dual_section(&s), Section::new(12, 3, 12).unwrap());
    }
}
