//! S-rings over `Z_n`: validation, structure constants, Schur–Wielandt
//! closure and elementary structure theory.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bitset::ResidueSet;
use crate::error::{Error, Result};
use crate::modarith::{divisors, gcd, subgroup};
use crate::section::Section;

/// A Schur ring over `Z_n`, given by its partition into basic sets.
///
/// Classes are kept in canonical order: sorted by minimal element, so class
/// 0 is always `{0}`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SRingJson", into = "SRingJson")]
pub struct SRing {
    n: u32,
    classes: Vec<ResidueSet>,
    class_of: Vec<u32>,
}

/// Wire form `{"n": int, "classes": [[int,...],...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SRingJson {
    pub n: u32,
    pub classes: Vec<Vec<u32>>,
}

impl TryFrom<SRingJson> for SRing {
    type Error = Error;

    fn try_from(value: SRingJson) -> Result<Self> {
        SRing::validate(value.n, &value.classes)
    }
}

impl From<SRing> for SRingJson {
    fn from(a: SRing) -> Self {
        SRingJson {
            n: a.n,
            classes: a.class_vecs(),
        }
    }
}

impl fmt::Debug for SRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}; {:?}}}", self.n, self.class_vecs())
    }
}

/// Relabels by first occurrence in ascending residue order, so label order
/// is the order of minimal elements.
fn relabel<K: std::hash::Hash + Eq>(keys: impl Iterator<Item = K>) -> (Vec<u32>, usize) {
    let mut ids: HashMap<K, u32> = HashMap::new();
    let labels: Vec<u32> = keys
        .map(|k| {
            let next = ids.len() as u32;
            *ids.entry(k).or_insert(next)
        })
        .collect();
    (labels, ids.len())
}

fn classes_from_labels(n: u32, labels: &[u32], count: usize) -> Vec<ResidueSet> {
    let mut classes = vec![ResidueSet::empty(n); count];
    for (x, &c) in labels.iter().enumerate() {
        classes[c as usize].insert(x as u32);
    }
    classes
}

impl SRing {
    /// Builds from a labelling whose label order already follows minimal
    /// elements. No axioms are checked.
    pub(crate) fn from_canonical_labels(n: u32, labels: Vec<u32>, count: usize) -> Self {
        let classes = classes_from_labels(n, &labels, count);
        SRing {
            n,
            classes,
            class_of: labels,
        }
    }

    /// Builds from an arbitrary partition of `Z_n`, canonicalizing order.
    /// No axioms are checked.
    pub(crate) fn from_partition_unchecked(n: u32, mut classes: Vec<ResidueSet>) -> Self {
        classes.sort_by_key(|c| c.min());
        let mut class_of = vec![0; n as usize];
        for (i, c) in classes.iter().enumerate() {
            for x in c.iter() {
                class_of[x as usize] = i as u32;
            }
        }
        SRing {
            n,
            classes,
            class_of,
        }
    }

    /// Checks the S-ring axioms for the given classes.
    pub fn validate(n: u32, classes: &[Vec<u32>]) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroOrder);
        }
        let mut sets = Vec::with_capacity(classes.len());
        let mut seen = ResidueSet::empty(n);
        for c in classes {
            if c.is_empty() {
                return Err(Error::NotAPartition {
                    n,
                    reason: "empty class".into(),
                });
            }
            let mut s = ResidueSet::empty(n);
            for &x in c {
                if x >= n {
                    return Err(Error::NotAPartition {
                        n,
                        reason: format!("residue {x} out of range"),
                    });
                }
                if seen.contains(x) {
                    return Err(Error::NotAPartition {
                        n,
                        reason: format!("residue {x} occurs twice"),
                    });
                }
                seen.insert(x);
                s.insert(x);
            }
            sets.push(s);
        }
        if seen.len() != n as usize {
            let missing = seen.complement().min().unwrap();
            return Err(Error::NotAPartition {
                n,
                reason: format!("residue {missing} not covered"),
            });
        }
        Self::validate_sets(n, sets)
    }

    /// Checks the S-ring axioms for a partition given as residue sets.
    pub fn validate_sets(n: u32, sets: Vec<ResidueSet>) -> Result<Self> {
        let a = Self::from_partition_unchecked(n, sets);
        a.check_axioms()?;
        Ok(a)
    }

    /// Identity class, inverse closure and multiplicative closure; assumes
    /// the classes already partition `Z_n`.
    pub fn check_axioms(&self) -> Result<()> {
        if self.classes[0].len() != 1 {
            return Err(Error::MissingIdentityClass {
                class: self.classes[0].to_vec(),
            });
        }
        for c in &self.classes {
            let neg = c.negated();
            let target = &self.classes[self.class_of(neg.min().unwrap()) as usize];
            if *target != neg {
                return Err(Error::NotInverseClosed {
                    class: c.to_vec(),
                    negation: neg.to_vec(),
                });
            }
        }
        for i in 0..self.rank() {
            for j in i..self.rank() {
                let coeffs = self.product_coefficients(i, j);
                for z in &self.classes {
                    let z1 = z.min().unwrap();
                    let c1 = coeffs[z1 as usize];
                    if let Some(z2) = z.iter().find(|&w| coeffs[w as usize] != c1) {
                        return Err(Error::NotMultiplicativelyClosed {
                            x: self.classes[i].to_vec(),
                            y: self.classes[j].to_vec(),
                            z: z.to_vec(),
                            z1,
                            c1,
                            z2,
                            c2: coeffs[z2 as usize],
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// The group ring `Z[Z_n]`: all singletons.
    pub fn full(n: u32) -> Self {
        Self::from_canonical_labels(n, (0..n).collect(), n as usize)
    }

    /// The rank-2 S-ring `{0}, Z_n \ {0}` (or the single class when `n = 1`).
    pub fn trivial(n: u32) -> Self {
        let labels: Vec<u32> = (0..n).map(|x| u32::from(x != 0)).collect();
        Self::from_canonical_labels(n, labels, if n == 1 { 1 } else { 2 })
    }

    /// Orbit partition of the subgroup of `units(n)` generated by `gens`.
    pub fn cyclotomic(n: u32, gens: &[u32]) -> Self {
        let mut labels = vec![u32::MAX; n as usize];
        let mut count = 0;
        for x in 0..n {
            if labels[x as usize] != u32::MAX {
                continue;
            }
            let mut stack = vec![x];
            labels[x as usize] = count;
            while let Some(y) = stack.pop() {
                for &g in gens {
                    let z = ((u64::from(y) * u64::from(g)) % u64::from(n)) as u32;
                    if labels[z as usize] == u32::MAX {
                        labels[z as usize] = count;
                        stack.push(z);
                    }
                }
            }
            count += 1;
        }
        Self::from_canonical_labels(n, labels, count as usize)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[ResidueSet] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> &ResidueSet {
        &self.classes[i]
    }

    pub fn class_of(&self, x: u32) -> u32 {
        self.class_of[x as usize]
    }

    pub fn labels(&self) -> &[u32] {
        &self.class_of
    }

    pub fn class_vecs(&self) -> Vec<Vec<u32>> {
        self.classes.iter().map(ResidueSet::to_vec).collect()
    }

    /// Index of the class `-X` for class `X = classes[i]`.
    pub fn negation_class(&self, i: usize) -> usize {
        let x = self.classes[i].min().unwrap();
        self.class_of((self.n - x) % self.n) as usize
    }

    /// True iff `set` is a union of classes.
    pub fn is_union_of_classes(&self, set: &ResidueSet) -> bool {
        set.iter()
            .all(|x| self.classes[self.class_of(x) as usize].is_subset(set))
    }

    /// Index of `set` among the classes, if it is one.
    pub fn index_of_class(&self, set: &ResidueSet) -> Option<usize> {
        let i = self.class_of(set.min()?) as usize;
        (self.classes[i] == *set).then_some(i)
    }

    /// Coefficient of every `z` in the group ring product `X_i · X_j`.
    pub fn product_coefficients(&self, i: usize, j: usize) -> Vec<u32> {
        product_coefficients(self.n, &self.classes[i], &self.classes[j])
    }

    /// The structure constant `c^Z_{XY}` for class indices `x, y, z`.
    pub fn structure_constant(&self, x: usize, y: usize, z: usize) -> u32 {
        let w = self.classes[z].min().unwrap();
        let n = self.n;
        self.classes[x]
            .iter()
            .filter(|&a| self.classes[y].contains((w + n - a) % n))
            .count() as u32
    }

    /// Full table of structure constants.
    pub fn structure_constants(&self) -> StructureConstants {
        let k = self.rank();
        let mut table = vec![0u32; k * k * k];
        for x in 0..k {
            for y in 0..k {
                let coeffs = self.product_coefficients(x, y);
                for z in 0..k {
                    table[(x * k + y) * k + z] = coeffs[self.classes[z].min().unwrap() as usize];
                }
            }
        }
        StructureConstants { rank: k, table }
    }

    /// Orders of the A-groups: subgroups that are unions of classes.
    pub fn a_subgroups(&self) -> Vec<u32> {
        divisors(self.n)
            .into_iter()
            .filter(|&d| self.is_a_group(d))
            .collect()
    }

    pub fn is_a_group(&self, d: u32) -> bool {
        match subgroup(self.n, d) {
            Ok(h) => self.is_union_of_classes(&h),
            Err(_) => false,
        }
    }

    /// All A-sections `(l, u)` with `l | u`, ordered by `(l, u)`.
    pub fn sections(&self) -> Vec<Section> {
        let groups = self.a_subgroups();
        let mut out = Vec::new();
        for &l in &groups {
            for &u in &groups {
                if u % l == 0 {
                    out.push(Section::new_unchecked(self.n, l, u));
                }
            }
        }
        out
    }

    pub fn is_section(&self, s: &Section) -> bool {
        s.n() == self.n && self.is_a_group(s.l()) && self.is_a_group(s.u())
    }

    pub(crate) fn check_section(&self, s: &Section) -> Result<()> {
        if self.is_section(s) {
            Ok(())
        } else {
            Err(Error::NotASection {
                n: self.n,
                l: s.l(),
                u: s.u(),
            })
        }
    }

    /// Classes of A contained in `H_u` of the section.
    pub fn classes_in_section(&self, s: &Section) -> Vec<usize> {
        let step = self.n / s.u();
        (0..self.rank())
            .filter(|&i| self.classes[i].min().unwrap().is_multiple_of(step))
            .collect()
    }

    /// The restriction `A_S` in canonical coordinates `Z_{u/l}`.
    pub fn restriction(&self, s: &Section) -> Result<SRing> {
        self.check_section(s)?;
        let m = s.order();
        let mut images: Vec<ResidueSet> = Vec::new();
        let mut covered = ResidueSet::empty(m);
        for i in self.classes_in_section(s) {
            let img = s.project_set(&self.classes[i]);
            let first = img.min().unwrap();
            if !covered.contains(first) {
                covered.union_with(&img);
                images.push(img);
            }
        }
        Ok(SRing::from_partition_unchecked(m, images))
    }

    /// Order of `{g : g + X = X}`.
    pub fn radical_of_class(&self, i: usize) -> u32 {
        radical(self.n, &self.classes[i])
    }

    /// True iff A is the `U/L`-wreath product, i.e. every class outside
    /// `H_u` is a union of `H_l`-cosets.
    pub fn is_wreath(&self, u: u32, l: u32) -> Result<bool> {
        let s = Section::new(self.n, l, u)?;
        self.check_section(&s)?;
        let step = self.n / u;
        Ok(self
            .classes
            .iter()
            .filter(|c| c.iter().any(|x| x % step != 0))
            .all(|c| radical(self.n, c).is_multiple_of(l)))
    }

    /// Number of distinct classes hit by `k·X`, or the class map `X ↦ kX`
    /// when `k` permutes classes.
    pub fn unit_class_map(&self, k: u32) -> Option<Vec<u32>> {
        self.classes
            .iter()
            .map(|c| self.index_of_class(&c.scaled(k)).map(|i| i as u32))
            .collect()
    }
}

/// Dense `c^Z_{XY}` table indexed `[(x*k + y)*k + z]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureConstants {
    rank: usize,
    table: Vec<u32>,
}

impl StructureConstants {
    #[inline]
    pub fn get(&self, x: usize, y: usize, z: usize) -> u32 {
        self.table[(x * self.rank + y) * self.rank + z]
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

pub fn product_coefficients(n: u32, x: &ResidueSet, y: &ResidueSet) -> Vec<u32> {
    let mut coeffs = vec![0u32; n as usize];
    let ys: Vec<u32> = y.iter().collect();
    for a in x.iter() {
        for &b in &ys {
            let z = a + b;
            coeffs[(if z >= n { z - n } else { z }) as usize] += 1;
        }
    }
    coeffs
}

/// Order of the radical `{g : g + X = X}` of a non-empty set.
pub fn radical(n: u32, x: &ResidueSet) -> u32 {
    divisors(n)
        .into_iter()
        .rev()
        .find(|&d| x.shifted(n / d) == *x)
        .unwrap_or(1)
}

/// Order of the subgroup generated by `X`.
pub fn generated(n: u32, x: &ResidueSet) -> u32 {
    let g = x.iter().fold(n, gcd);
    n / g
}

/// Schur–Wielandt closure: the smallest S-ring in which every seed is a
/// union of classes.
pub fn closure(n: u32, seeds: &[ResidueSet]) -> SRing {
    assert!(n >= 1);
    // atoms of the boolean algebra generated by the seeds and {0}
    let (mut labels, mut count) = relabel((0..n).map(|x| {
        let mut key: Vec<bool> = seeds.iter().map(|s| s.contains(x)).collect();
        key.push(x == 0);
        key
    }));
    loop {
        let before = count;

        let neg = labels.clone();
        (labels, count) = relabel((0..n).map(|x| (neg[x as usize], neg[((n - x) % n) as usize])));

        let classes = classes_from_labels(n, &labels, count);
        let pairs = count * (count + 1) / 2;
        let mut profile = vec![0u32; n as usize * (pairs + 1)];
        let width = pairs + 1;
        for x in 0..n as usize {
            profile[x * width] = labels[x];
        }
        let mut p = 1;
        for i in 0..count {
            for j in i..count {
                let coeffs = product_coefficients(n, &classes[i], &classes[j]);
                for (z, &c) in coeffs.iter().enumerate() {
                    profile[z * width + p] = c;
                }
                p += 1;
            }
        }
        (labels, count) = relabel(profile.chunks(width));

        if count == before {
            return SRing::from_canonical_labels(n, labels, count);
        }
    }
}

/// Tensor product over `Z_{ab}` for coprime `a, b`, via `z ↦ (z mod a, z mod b)`.
pub fn tensor(a: &SRing, b: &SRing) -> Result<SRing> {
    let (na, nb) = (a.n(), b.n());
    if gcd(na, nb) != 1 {
        return Err(Error::NotCoprime { a: na, b: nb });
    }
    let n = na * nb;
    let (labels, count) = relabel((0..n).map(|z| (a.class_of(z % na), b.class_of(z % nb))));
    Ok(SRing::from_canonical_labels(n, labels, count))
}

/// Parses seed sets written as semicolon-separated residue lists, e.g.
/// `"1,4;2"`. Residues are reduced modulo `n`.
pub fn parse_seed_sets(n: u32, text: &str) -> Result<Vec<ResidueSet>> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    text.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|part| {
            let values = part
                .split(',')
                .map(|v| {
                    v.trim().parse::<u32>().map_err(|e| {
                        Error::InvalidInput(format!("bad residue `{}`: {e}", v.trim()))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(ResidueSet::from_iter(n, values))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: u32, xs: &[u32]) -> ResidueSet {
        ResidueSet::from_iter(n, xs.iter().copied())
    }

    fn z5c() -> SRing {
        SRing::validate(5, &[vec![0], vec![1, 4], vec![2, 3]]).unwrap()
    }

    fn a8() -> SRing {
        SRing::validate(8, &[vec![0], vec![4], vec![2, 6], vec![1, 3, 5, 7]]).unwrap()
    }

    fn w4() -> SRing {
        SRing::validate(4, &[vec![0], vec![2], vec![1, 3]]).unwrap()
    }

    fn r4() -> SRing {
        SRing::validate(4, &[vec![0], vec![1, 2, 3]]).unwrap()
    }

    #[test]
    fn validate_examples() {
        assert_eq!(z5c().rank(), 3);
        assert!(matches!(
            SRing::validate(4, &[vec![0], vec![1], vec![2, 3]]),
            Err(Error::NotInverseClosed { class, .. }) if class == vec![1]
        ));
        for n in 1..=12 {
            let classes: Vec<Vec<u32>> = (0..n).map(|x| vec![x]).collect();
            assert_eq!(SRing::validate(n, &classes).unwrap(), SRing::full(n));
        }
    }

    #[test]
    fn validate_errors() {
        assert!(matches!(
            SRing::validate(4, &[vec![0, 1], vec![2], vec![3]]),
            Err(Error::MissingIdentityClass { .. })
        ));
        assert!(matches!(
            SRing::validate(4, &[vec![0], vec![1, 3]]),
            Err(Error::NotAPartition { .. })
        ));
        assert!(matches!(
            SRing::validate(4, &[vec![0], vec![1, 3], vec![3, 2]]),
            Err(Error::NotAPartition { .. })
        ));
        // {1,5}^2 = 2·0 + 2 + 4 misses 3
        assert!(matches!(
            SRing::validate(6, &[vec![0], vec![1, 5], vec![2, 3, 4]]),
            Err(Error::NotMultiplicativelyClosed { .. })
        ));
    }

    #[test]
    fn structure_constant_examples() {
        let a = z5c();
        assert_eq!(a.structure_constant(1, 1, 2), 1);
        assert_eq!(a.structure_constant(1, 1, 0), 2);
        for x in 0..a.rank() {
            assert_eq!(a.structure_constant(x, 0, x), 1);
        }
    }

    #[test]
    fn closure_examples() {
        assert_eq!(closure(5, &[set(5, &[1, 4])]), z5c());
        assert_eq!(
            closure(7, &[ResidueSet::full(7).difference(&set(7, &[0]))]),
            SRing::trivial(7)
        );
        assert_eq!(
            closure(4, &[set(4, &[1]), set(4, &[2]), set(4, &[3])]),
            SRing::full(4)
        );
        // a seed that is not inverse closed forces the negation split
        assert_eq!(closure(5, &[set(5, &[1])]), SRing::full(5));
        let a = a8();
        assert_eq!(closure(8, a.classes()), a);
    }

    #[test]
    fn a_subgroup_examples() {
        assert_eq!(a8().a_subgroups(), vec![1, 2, 4, 8]);
        assert_eq!(SRing::full(12).a_subgroups(), divisors(12));
        assert_eq!(r4().a_subgroups(), vec![1, 4]);
    }

    #[test]
    fn section_lists() {
        let got: Vec<(u32, u32)> = SRing::full(4)
            .sections()
            .iter()
            .map(|s| (s.l(), s.u()))
            .collect();
        assert_eq!(got, vec![(1, 1), (1, 2), (1, 4), (2, 2), (2, 4), (4, 4)]);
        let got: Vec<(u32, u32)> = r4().sections().iter().map(|s| (s.l(), s.u())).collect();
        assert_eq!(got, vec![(1, 1), (1, 4), (4, 4)]);
        assert_eq!(a8().sections().len(), 10);
    }

    #[test]
    fn restriction_examples() {
        let a = a8();
        let s = Section::new(8, 2, 8).unwrap();
        assert_eq!(a.restriction(&s).unwrap(), w4());
        assert_eq!(a.restriction(&Section::whole(8)).unwrap(), a);
        let s = Section::new(8, 4, 8).unwrap();
        assert_eq!(a.restriction(&s).unwrap(), SRing::full(2));
        let bad = Section::new(4, 1, 2).unwrap();
        assert!(matches!(
            r4().restriction(&bad),
            Err(Error::NotASection { .. })
        ));
    }

    #[test]
    fn radical_and_generated() {
        assert_eq!(radical(8, &set(8, &[1, 3, 5, 7])), 4);
        assert_eq!(radical(8, &set(8, &[4])), 1);
        assert_eq!(radical(4, &set(4, &[1, 3])), 2);
        assert_eq!(generated(8, &set(8, &[2, 6])), 4);
        assert_eq!(generated(8, &set(8, &[1, 3, 5, 7])), 8);
        assert_eq!(generated(12, &set(12, &[4, 8])), 3);
    }

    #[test]
    fn wreath_examples() {
        assert!(w4().is_wreath(2, 2).unwrap());
        assert!(!SRing::full(4).is_wreath(2, 2).unwrap());
        assert!(a8().is_wreath(8, 1).unwrap());
        assert!(matches!(
            r4().is_wreath(2, 2),
            Err(Error::NotASection { .. })
        ));
    }

    #[test]
    fn tensor_examples() {
        assert_eq!(
            tensor(&SRing::full(2), &SRing::full(3)).unwrap(),
            SRing::full(6)
        );
        let t = tensor(&SRing::full(2), &SRing::trivial(3)).unwrap();
        assert_eq!(
            t.class_vecs(),
            vec![vec![0], vec![1, 5], vec![2, 4], vec![3]]
        );
        assert_eq!(tensor(&z5c(), &SRing::full(1)).unwrap(), z5c());
        assert!(tensor(&SRing::full(2), &SRing::full(4)).is_err());
        t.check_axioms().unwrap();
    }

    #[test]
    fn canonical_order() {
        let a = SRing::validate(8, &[vec![7, 5, 3, 1], vec![6, 2], vec![4], vec![0]]).unwrap();
        assert_eq!(a, a8());
        assert_eq!(a.class_vecs()[0], vec![0]);
    }

    #[test]
    fn json_round_trip() {
        let a = a8();
        let text = serde_json::to_string(&a).unwrap();
        assert_eq!(text, r#"{"n":8,"classes":[[0],[1,3,5,7],[2,6],[4]]}"#);
        let b: SRing = serde_json::from_str(&text).unwrap();
        assert_eq!(a, b);
        let bad: std::result::Result<SRing, _> =
            serde_json::from_str(r#"{"n":4,"classes":[[0],[1],[2,3]]}"#);
        assert!(bad.is_err());
    }
}
