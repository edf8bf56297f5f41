//! Similarities: bijections of basic sets preserving structure constants.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modarith::units;
use crate::multiplier::{Coset, MultiplierDomain, OuterMultiplier};
use crate::section::{is_quasidense, principal_sections, Section};
use crate::sring::{SRing, StructureConstants};

/// A class map `X ↦ X^φ`, indexed by canonical class index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Similarity {
    pub map: Vec<u32>,
}

impl Similarity {
    pub fn identity(rank: usize) -> Self {
        Self {
            map: (0..rank as u32).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i] as usize
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Similarity) -> Similarity {
        Similarity {
            map: self.map.iter().map(|&j| other.map[j as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Similarity {
        let mut map = vec![0; self.map.len()];
        for (i, &j) in self.map.iter().enumerate() {
            map[j as usize] = i as u32;
        }
        Similarity { map }
    }
}

/// Checks that `map` is a size-preserving bijection fixing `{0}` and
/// preserving every structure constant.
pub fn is_similarity(a: &SRing, b: &SRing, sim: &Similarity) -> bool {
    let k = a.rank();
    if b.rank() != k || a.n() != b.n() || sim.map.len() != k {
        return false;
    }
    let mut seen = vec![false; k];
    for (i, &j) in sim.map.iter().enumerate() {
        let j = j as usize;
        if j >= k || seen[j] || a.class(i).len() != b.class(j).len() {
            return false;
        }
        seen[j] = true;
    }
    if sim.map[0] != 0 {
        return false;
    }
    let ta = a.structure_constants();
    let tb = b.structure_constants();
    (0..k).all(|x| {
        (0..k).all(|y| {
            (0..k).all(|z| ta.get(x, y, z) == tb.get(sim.apply(x), sim.apply(y), sim.apply(z)))
        })
    })
}

struct Search<'a> {
    ta: &'a StructureConstants,
    tb: &'a StructureConstants,
    order: Vec<usize>,
    candidates: Vec<Vec<usize>>,
    map: Vec<usize>,
    used: Vec<bool>,
    out: Vec<Similarity>,
}

impl Search<'_> {
    fn consistent(&self, depth: usize, i: usize, j: usize) -> bool {
        let (ta, tb) = (self.ta, self.tb);
        let assigned = self.order[..depth]
            .iter()
            .copied()
            .chain(std::iter::once(i));
        for a in assigned {
            let fa = if a == i { j } else { self.map[a] };
            for b in self.order[..depth]
                .iter()
                .copied()
                .chain(std::iter::once(i))
            {
                let fb = if b == i { j } else { self.map[b] };
                if ta.get(i, a, b) != tb.get(j, fa, fb) || ta.get(a, b, i) != tb.get(fa, fb, j) {
                    return false;
                }
            }
        }
        true
    }

    fn run(&mut self, depth: usize) {
        if depth == self.order.len() {
            self.out.push(Similarity {
                map: self.map.iter().map(|&j| j as u32).collect(),
            });
            return;
        }
        let i = self.order[depth];
        for ci in 0..self.candidates[i].len() {
            let j = self.candidates[i][ci];
            if self.used[j] || !self.consistent(depth, i, j) {
                continue;
            }
            self.used[j] = true;
            self.map[i] = j;
            self.run(depth + 1);
            self.used[j] = false;
        }
    }
}

/// All similarities from `a` to `b`, sorted by class map.
pub fn similarities(a: &SRing, b: &SRing) -> Vec<Similarity> {
    let k = a.rank();
    if a.n() != b.n() || b.rank() != k {
        return Vec::new();
    }
    let mut sizes_a: Vec<usize> = a.classes().iter().map(|c| c.len()).collect();
    let mut sizes_b: Vec<usize> = b.classes().iter().map(|c| c.len()).collect();
    let (sa, sb) = (sizes_a.clone(), sizes_b.clone());
    sizes_a.sort_unstable();
    sizes_b.sort_unstable();
    if sizes_a != sizes_b {
        return Vec::new();
    }
    let ta = a.structure_constants();
    let tb = b.structure_constants();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&i| (sa[i], a.class(i).min()));
    let candidates: Vec<Vec<usize>> = (0..k)
        .map(|i| {
            if i == 0 {
                vec![0]
            } else {
                (1..k).filter(|&j| sb[j] == sa[i]).collect()
            }
        })
        .collect();
    let mut search = Search {
        ta: &ta,
        tb: &tb,
        order,
        candidates,
        map: vec![0; k],
        used: vec![false; k],
        out: Vec::new(),
    };
    search.run(0);
    let mut out = search.out;
    out.sort();
    out
}

/// The similarity induced on `A_S` by a similarity of `A`.
pub fn restrict(a: &SRing, sim: &Similarity, s: &Section) -> Result<Similarity> {
    let r = a.restriction(s)?;
    let step = a.n() / s.u();
    let mut map = vec![u32::MAX; r.rank()];
    for i in a.classes_in_section(s) {
        let target = a.class(sim.apply(i));
        let tmin = target.min().unwrap();
        if !tmin.is_multiple_of(step) {
            return Err(Error::InvalidSimilarity(format!(
                "class {:?} leaves the A-group of order {}",
                a.class(i).to_vec(),
                s.u()
            )));
        }
        let src = r.class_of(s.project(a.class(i).min().unwrap())) as usize;
        let dst = r.class_of(s.project(tmin));
        if map[src] != u32::MAX && map[src] != dst {
            return Err(Error::InvalidSimilarity(format!(
                "restriction to {s} is not well defined"
            )));
        }
        map[src] = dst;
    }
    Ok(Similarity { map })
}

/// The similarity `X ↦ k·X` when multiplication by `k` permutes classes.
pub fn from_unit(r: &SRing, k: u32) -> Option<Similarity> {
    r.unit_class_map(k).map(|map| Similarity { map })
}

/// Smallest unit of `Z_m` inducing `psi` on `r`, if any.
pub fn inducing_unit(r: &SRing, psi: &Similarity) -> Option<u32> {
    units(r.n())
        .elements()
        .iter()
        .copied()
        .find(|&k| r.unit_class_map(k).as_deref() == Some(&psi.map[..]))
}

/// The outer multiplier `{aut_A(S)·σ_S}` of a similarity of a quasidense
/// S-ring.
pub fn fs_of(a: &SRing, sim: &Similarity) -> Result<OuterMultiplier> {
    if !is_quasidense(a) {
        return Err(Error::NotQuasidense);
    }
    fs_of_in(&MultiplierDomain::new(a)?, a, sim)
}

pub fn fs_of_in(domain: &MultiplierDomain, a: &SRing, sim: &Similarity) -> Result<OuterMultiplier> {
    let mut entries = Vec::with_capacity(domain.len());
    for (idx, s) in domain.sections().iter().enumerate() {
        let r = a.restriction(s)?;
        let psi = restrict(a, sim, s)?;
        let k = inducing_unit(&r, &psi).ok_or(Error::NoInducingUnit(*s))?;
        entries.push((*s, Coset::new(domain.stabilizer(idx), k, s.order())));
    }
    Ok(OuterMultiplier { entries })
}

/// Rebuilds the similarity of a quasidense S-ring from its outer
/// multiplier, class by class through principal sections.
pub fn similarity_from_outer(a: &SRing, fs: &OuterMultiplier) -> Result<Similarity> {
    let n = a.n();
    let mut map = Vec::with_capacity(a.rank());
    for x in a.classes() {
        let p = Section::new(
            n,
            crate::sring::radical(n, x),
            crate::sring::generated(n, x),
        )?;
        let coset = fs.get(&p).ok_or_else(|| {
            Error::ReconstructionFailed(format!(
                "principal section {p} missing from the multiplier"
            ))
        })?;
        let image = p.project_set(x).scaled(coset.rep());
        let lifted = p.lift_set(&image);
        let j = a.index_of_class(&lifted).ok_or_else(|| {
            Error::ReconstructionFailed(format!("image of {:?} is not a class", x.to_vec()))
        })?;
        map.push(j as u32);
    }
    let sim = Similarity { map };
    if !is_similarity(a, a, &sim) {
        return Err(Error::ReconstructionFailed(format!(
            "{:?} is not a similarity",
            sim.map
        )));
    }
    Ok(sim)
}

/// Principal sections are enough to pin a similarity: two similarities
/// agreeing on every principal restriction are equal.
pub fn agree_on_principal(a: &SRing, s1: &Similarity, s2: &Similarity) -> Result<bool> {
    for p in principal_sections(a) {
        if restrict(a, s1, &p)? != restrict(a, s2, &p)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modarith::totient;
    use crate::section::frs0;

    fn z5c() -> SRing {
        SRing::validate(5, &[vec![0], vec![1, 4], vec![2, 3]]).unwrap()
    }

    fn swap() -> Similarity {
        Similarity { map: vec![0, 2, 1] }
    }

    #[test]
    fn similarity_examples() {
        let sims = similarities(&z5c(), &z5c());
        assert_eq!(sims, vec![Similarity::identity(3), swap()]);
        for n in 1..=8 {
            let full = SRing::full(n);
            let sims = similarities(&full, &full);
            assert_eq!(sims.len() as u32, totient(n));
            for s in sims.iter().filter(|_| n > 1) {
                let k = s.map[1];
                assert_eq!(from_unit(&full, k).as_ref(), Some(s));
            }
        }
        assert!(similarities(&z5c(), &SRing::full(5)).is_empty());
    }

    #[test]
    fn restrict_examples() {
        let a = z5c();
        assert_eq!(restrict(&a, &swap(), &Section::whole(5)).unwrap(), swap());
        let a8 = SRing::validate(8, &[vec![0], vec![4], vec![2, 6], vec![1, 3, 5, 7]]).unwrap();
        for s in a8.sections() {
            let id = restrict(&a8, &Similarity::identity(4), &s).unwrap();
            assert!(id.is_identity());
        }
    }

    #[test]
    fn unit_examples() {
        let a = z5c();
        assert_eq!(from_unit(&a, 2), Some(swap()));
        assert_eq!(from_unit(&a, 1), Some(Similarity::identity(3)));
        assert_eq!(inducing_unit(&a, &swap()), Some(2));
        assert_eq!(inducing_unit(&a, &Similarity::identity(3)), Some(1));
        let t = SRing::trivial(9);
        assert_eq!(inducing_unit(&t, &Similarity::identity(2)), Some(1));
        let a6 = SRing::validate(6, &[vec![0], vec![1, 5], vec![2, 4], vec![3]]).unwrap();
        assert_eq!(
            from_unit(&SRing::full(6), 5).unwrap().map,
            vec![0, 5, 4, 3, 2, 1]
        );
        assert!(from_unit(&a6, 5).unwrap().is_identity());
    }

    #[test]
    fn fs_of_examples() {
        let a = z5c();
        let fs = fs_of(&a, &swap()).unwrap();
        let c = fs.get(&Section::whole(5)).unwrap();
        assert_eq!(c.elements(), &[2, 3]);
        let id = fs_of(&a, &Similarity::identity(3)).unwrap();
        assert!(id.is_trivial());

        let full = SRing::full(12);
        let sim = from_unit(&full, 5).unwrap();
        let fs = fs_of(&full, &sim).unwrap();
        for (s, c) in &fs.entries {
            assert_eq!(c.elements(), &[crate::modarith::unit_mod(5, s.order())]);
        }
        assert_eq!(fs.entries.len(), frs0(&full).len());
    }

    #[test]
    fn reconstruction_examples() {
        let a = z5c();
        let fs = fs_of(&a, &swap()).unwrap();
        assert_eq!(similarity_from_outer(&a, &fs).unwrap(), swap());
        let full = SRing::full(10);
        let sim = from_unit(&full, 3).unwrap();
        assert_eq!(
            similarity_from_outer(&full, &fs_of(&full, &sim).unwrap()).unwrap(),
            sim
        );
    }

    #[test]
    fn not_quasidense_rejected() {
        let r4 = SRing::trivial(4);
        assert_eq!(
            fs_of(&r4, &Similarity::identity(2)),
            Err(Error::NotQuasidense)
        );
    }

    #[test]
    fn group_structure() {
        let a = SRing::cyclotomic(13, &[3]);
        let sims = similarities(&a, &a);
        for s in &sims {
            assert!(is_similarity(&a, &a, s));
            assert!(sims.contains(&s.inverse()));
            for t in &sims {
                assert!(sims.contains(&s.then(t)));
            }
        }
    }
}
