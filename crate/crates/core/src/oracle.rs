//! Ground truth at small orders: S-ring enumeration, brute-force
//! isomorphism search, `Φ_∞`, intersection and coset closure.
//!
//! Every search here is bounded by [`OracleLimits`] and reports
//! [`Error::LimitExceeded`] instead of running unbounded.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::bitset::ResidueSet;
use crate::error::{Error, Result};
use crate::modarith::{divisors, gcd, subgroup, units};
use crate::section::is_quasidense;
use crate::similarity::{similarities, Similarity};
use crate::sring::{closure, SRing};

/// Size bounds for the exhaustive searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleLimits {
    pub enumerate: u32,
    pub isomorphism: u32,
    pub coset_closure: u32,
}

impl Default for OracleLimits {
    fn default() -> Self {
        Self {
            enumerate: 36,
            isomorphism: 20,
            coset_closure: 16,
        }
    }
}

fn check_limit(what: &'static str, n: u32, bound: u32) -> Result<()> {
    if n > bound {
        Err(Error::LimitExceeded { what, n, bound })
    } else {
        Ok(())
    }
}

/// All subgroups of the unit group modulo `n`, each as a sorted element list.
fn unit_subgroups(n: u32) -> Vec<Vec<u32>> {
    let g = units(n);
    let generate = |gens: &[u32]| -> Vec<u32> {
        let mut set = BTreeSet::from([g.elements()[0].min(1)]);
        let mut frontier: Vec<u32> = set.iter().copied().collect();
        while let Some(x) = frontier.pop() {
            for &h in gens {
                let y = g.mul(x, h);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set.into_iter().collect()
    };
    let mut found: BTreeSet<Vec<u32>> = BTreeSet::from([generate(&[])]);
    let mut frontier: Vec<Vec<u32>> = found.iter().cloned().collect();
    while let Some(h) = frontier.pop() {
        for &x in g.elements() {
            if h.contains(&x) {
                continue;
            }
            let mut gens = h.clone();
            gens.push(x);
            let bigger = generate(&gens);
            if found.insert(bigger.clone()) {
                frontier.push(bigger);
            }
        }
    }
    found.into_iter().collect()
}

struct Enumerator {
    n: u32,
    unit_elems: Vec<u32>,
    subgroups: Vec<Vec<u32>>,
    /// elements of each order, keyed by the order
    by_order: Vec<(u32, Vec<u32>)>,
    out: BTreeSet<Vec<Vec<u32>>>,
}

impl Enumerator {
    fn new(n: u32) -> Self {
        let by_order = divisors(n)
            .into_iter()
            .map(|d| (d, (0..n).filter(|&x| n / gcd(n, x) == d).collect()))
            .collect();
        Self {
            n,
            unit_elems: units(n).elements().to_vec(),
            subgroups: unit_subgroups(n),
            by_order,
            out: BTreeSet::new(),
        }
    }

    fn scale(&self, x: u32, k: u32) -> u32 {
        ((u64::from(x) * u64::from(k)) % u64::from(self.n)) as u32
    }

    /// Units congruent to 1 modulo `d`: they fix every element of order `d`.
    fn fixes_order(&self, d: u32) -> Vec<u32> {
        self.unit_elems
            .iter()
            .copied()
            .filter(|&k| k % d == 1 % d)
            .collect()
    }

    /// Candidate classes through `r` inside `avail`, built as one orbit of a
    /// unit subgroup per element order.
    fn candidates(&self, r: u32, avail: &ResidueSet) -> Vec<ResidueSet> {
        let n = self.n;
        let ord_r = n / gcd(n, r);
        let mut out = Vec::new();
        for k in &self.subgroups {
            let contains_all = |ks: &[u32]| ks.iter().all(|x| k.contains(x));
            if !contains_all(&self.fixes_order(ord_r)) {
                continue;
            }
            let base = ResidueSet::from_iter(n, k.iter().map(|&g| self.scale(r, g)));
            if !base.is_subset(avail) {
                continue;
            }
            // per other order: the K-orbits lying inside avail
            let mut options: Vec<Vec<ResidueSet>> = Vec::new();
            for (d, elems) in &self.by_order {
                if *d == ord_r || *d == 1 || !contains_all(&self.fixes_order(*d)) {
                    continue;
                }
                let mut seen = ResidueSet::empty(n);
                let mut orbits = Vec::new();
                for &x in elems {
                    if seen.contains(x) || !avail.contains(x) {
                        continue;
                    }
                    let orbit = ResidueSet::from_iter(n, k.iter().map(|&g| self.scale(x, g)));
                    seen.union_with(&orbit);
                    if orbit.is_subset(avail) {
                        orbits.push(orbit);
                    }
                }
                if !orbits.is_empty() {
                    options.push(orbits);
                }
            }
            let mut partial = vec![base];
            for opts in &options {
                let mut next = Vec::with_capacity(partial.len() * (opts.len() + 1));
                for p in &partial {
                    next.push(p.clone());
                    for o in opts {
                        next.push(p.union(o));
                    }
                }
                partial = next;
            }
            for x in partial {
                // keep X only under its exact stabilizer, so each X appears once
                let stab: Vec<u32> = self
                    .unit_elems
                    .iter()
                    .copied()
                    .filter(|&g| x.scaled(g) == x)
                    .collect();
                if stab == *k {
                    out.push(x);
                }
            }
        }
        out
    }

    /// The distinct images `g·X` over all units, if pairwise disjoint.
    fn unit_orbit(&self, x: &ResidueSet) -> Option<Vec<ResidueSet>> {
        let mut images: Vec<ResidueSet> = Vec::new();
        let mut covered = ResidueSet::empty(self.n);
        for &g in &self.unit_elems {
            let y = x.scaled(g);
            if images.contains(&y) {
                continue;
            }
            if !y.is_disjoint(&covered) {
                return None;
            }
            covered.union_with(&y);
            images.push(y);
        }
        Some(images)
    }

    fn run(&mut self, chosen: &mut Vec<ResidueSet>, assigned: &ResidueSet) {
        let n = self.n;
        let Some(r) = assigned.complement().min() else {
            let a = SRing::from_partition_unchecked(n, chosen.clone());
            if a.check_axioms().is_ok() {
                self.out.insert(a.class_vecs());
            }
            return;
        };
        let c = closure(n, chosen);
        let cell = c.class(c.class_of(r) as usize);
        let avail = cell.difference(assigned);
        for x in self.candidates(r, &avail) {
            let Some(images) = self.unit_orbit(&x) else {
                continue;
            };
            if images.iter().any(|y| !y.is_disjoint(assigned)) {
                continue;
            }
            let before = chosen.len();
            chosen.extend(images.iter().cloned());
            let c2 = closure(n, chosen);
            if chosen.iter().all(|s| c2.index_of_class(s).is_some()) {
                let mut next = assigned.clone();
                for y in &images {
                    next.union_with(y);
                }
                self.run(chosen, &next);
            }
            chosen.truncate(before);
        }
    }
}

/// All S-rings over `Z_n`, in canonical form, sorted by class lists.
pub fn enumerate_srings(n: u32, limits: &OracleLimits) -> Result<Vec<SRing>> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    check_limit("enumerate_srings", n, limits.enumerate)?;
    let mut e = Enumerator::new(n);
    let zero = ResidueSet::singleton(n, 0);
    e.run(&mut vec![zero.clone()], &zero);
    Ok(e.out
        .into_iter()
        .map(|classes| {
            let sets = classes
                .into_iter()
                .map(|c| ResidueSet::from_iter(n, c))
                .collect();
            SRing::from_partition_unchecked(n, sets)
        })
        .collect())
}

/// A normalized bijection `f` with `f(X + y) = X^φ + f(y)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Isomorphism {
    pub table: Vec<u32>,
}

/// Independent recheck of the isomorphism condition for every class and point.
pub fn is_isomorphism(a: &SRing, b: &SRing, sim: &Similarity, f: &Isomorphism) -> bool {
    let n = a.n();
    if f.table.len() != n as usize || f.table[0] != 0 {
        return false;
    }
    let image = ResidueSet::from_iter(n, f.table.iter().copied());
    if image.len() != n as usize {
        return false;
    }
    (0..a.rank()).all(|i| {
        let x = a.class(i);
        let target = b.class(sim.apply(i));
        (0..n).all(|y| {
            let lhs = ResidueSet::from_iter(n, x.iter().map(|v| f.table[((v + y) % n) as usize]));
            lhs == target.shifted(f.table[y as usize])
        })
    })
}

struct IsoSearch<'a> {
    n: u32,
    a: &'a SRing,
    /// `target[c]`: the B-class paired with A-class `c` by `φ`
    target: Vec<&'a ResidueSet>,
    table: Vec<u32>,
}

impl IsoSearch<'_> {
    fn propagate(&self, domains: &mut [ResidueSet], y: u32, v: u32) -> bool {
        let n = self.n;
        for z in (y + 1)..n {
            let c = self.a.class_of((z + n - y) % n) as usize;
            let allowed = self.target[c].shifted(v);
            let d = &mut domains[z as usize];
            *d = d.intersection(&allowed);
            d.remove(v);
            if d.is_empty() {
                return false;
            }
        }
        true
    }

    fn run(&mut self, y: u32, domains: &[ResidueSet]) -> bool {
        if y == self.n {
            return true;
        }
        let candidates: Vec<u32> = domains[y as usize].iter().collect();
        for v in candidates {
            let mut next = domains.to_vec();
            if self.propagate(&mut next, y, v) {
                self.table[y as usize] = v;
                if self.run(y + 1, &next) {
                    return true;
                }
            }
        }
        false
    }
}

/// Searches for a normalized isomorphism inducing `sim`.
pub fn find_isomorphism(
    a: &SRing,
    b: &SRing,
    sim: &Similarity,
    limits: &OracleLimits,
) -> Result<Option<Isomorphism>> {
    let n = a.n();
    check_limit("find_isomorphism", n, limits.isomorphism)?;
    if b.n() != n || sim.map.len() != a.rank() {
        return Ok(None);
    }
    let mut search = IsoSearch {
        n,
        a,
        target: (0..a.rank()).map(|i| b.class(sim.apply(i))).collect(),
        table: vec![0; n as usize],
    };
    let mut domains = vec![ResidueSet::full(n); n as usize];
    domains[0] = ResidueSet::singleton(n, 0);
    if !search.propagate(&mut domains, 0, 0) {
        return Ok(None);
    }
    if search.run(1, &domains) {
        Ok(Some(Isomorphism {
            table: search.table,
        }))
    } else {
        Ok(None)
    }
}

/// Similarities of `A` induced by some isomorphism.
pub fn phi_infty(a: &SRing, limits: &OracleLimits) -> Result<Vec<Similarity>> {
    check_limit("phi_infty", a.n(), limits.isomorphism)?;
    let mut out = Vec::new();
    for sim in similarities(a, a) {
        if find_isomorphism(a, a, &sim, limits)?.is_some() {
            out.push(sim);
        }
    }
    Ok(out)
}

/// Separable iff every similarity is induced by an isomorphism.
pub fn is_separable_bruteforce(a: &SRing, limits: &OracleLimits) -> Result<bool> {
    check_limit("is_separable_bruteforce", a.n(), limits.isomorphism)?;
    for sim in similarities(a, a) {
        if find_isomorphism(a, a, &sim, limits)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn find(parent: &mut [u32], x: u32) -> u32 {
    let mut r = x;
    while parent[r as usize] != r {
        r = parent[r as usize];
    }
    let mut c = x;
    while parent[c as usize] != r {
        let next = parent[c as usize];
        parent[c as usize] = r;
        c = next;
    }
    r
}

/// The S-ring `A ∩ B`: blocks are the minimal common unions of classes.
pub fn intersect(a: &SRing, b: &SRing) -> Result<SRing> {
    if a.n() != b.n() {
        return Err(Error::OrderMismatch(a.n(), b.n()));
    }
    let n = a.n();
    let mut parent: Vec<u32> = (0..n).collect();
    for ring in [a, b] {
        for c in ring.classes() {
            let first = c.min().unwrap();
            for x in c.iter() {
                let (rx, rf) = (find(&mut parent, x), find(&mut parent, first));
                if rx != rf {
                    parent[rx.max(rf) as usize] = rx.min(rf);
                }
            }
        }
    }
    let mut blocks: Vec<ResidueSet> = Vec::new();
    let mut root_block = vec![usize::MAX; n as usize];
    for x in 0..n {
        let r = find(&mut parent, x) as usize;
        if root_block[r] == usize::MAX {
            root_block[r] = blocks.len();
            blocks.push(ResidueSet::empty(n));
        }
        blocks[root_block[r]].insert(x);
    }
    SRing::validate_sets(n, blocks).map_err(|e| Error::IntersectionNotAnSRing(e.to_string()))
}

/// True iff `x` is a coset of a subgroup.
pub fn is_coset(n: u32, x: &ResidueSet) -> bool {
    let d = x.len() as u32;
    n.is_multiple_of(d) && x.shifted(n - x.min().unwrap()) == subgroup(n, d).unwrap()
}

pub fn is_coset_sring(a: &SRing) -> bool {
    a.classes().iter().all(|c| is_coset(a.n(), c))
}

/// Partitions of `rest` into cosets, each inside one class of `cells`.
fn coset_partitions(
    n: u32,
    rest: &ResidueSet,
    cells: &SRing,
    acc: &mut Vec<ResidueSet>,
    out: &mut Vec<Vec<ResidueSet>>,
) {
    let Some(x) = rest.min() else {
        out.push(acc.clone());
        return;
    };
    let cell = cells.class(cells.class_of(x) as usize);
    for d in divisors(n) {
        let coset = subgroup(n, d).unwrap().shifted(x);
        if coset.is_subset(rest) && coset.is_subset(cell) {
            acc.push(coset.clone());
            coset_partitions(n, &rest.difference(&coset), cells, acc, out);
            acc.pop();
        }
    }
}

struct CosetSearch<'a> {
    a: &'a SRing,
    found: Vec<SRing>,
}

impl CosetSearch<'_> {
    fn run(&mut self, class: usize, pieces: &mut Vec<ResidueSet>) {
        let n = self.a.n();
        if class == self.a.rank() {
            let b = SRing::from_partition_unchecked(n, pieces.clone());
            if b.check_axioms().is_ok() {
                self.found.push(b);
            }
            return;
        }
        let mut seeds = pieces.clone();
        seeds.extend(self.a.classes().iter().cloned());
        let cells = closure(n, &seeds);
        let mut splits = Vec::new();
        coset_partitions(n, self.a.class(class), &cells, &mut Vec::new(), &mut splits);
        for split in splits {
            let before = pieces.len();
            pieces.extend(split);
            let mut seeds = pieces.clone();
            seeds.extend(self.a.classes().iter().cloned());
            let c = closure(n, &seeds);
            if pieces.iter().all(|p| c.index_of_class(p).is_some()) {
                self.run(class + 1, pieces);
            }
            pieces.truncate(before);
        }
    }
}

/// The coset S-rings whose partition refines `A`.
pub fn coset_srings_containing(a: &SRing, limits: &OracleLimits) -> Result<Vec<SRing>> {
    check_limit("coset_closure", a.n(), limits.coset_closure)?;
    let mut search = CosetSearch {
        a,
        found: Vec::new(),
    };
    search.run(1, &mut vec![a.class(0).clone()]);
    let mut found = search.found;
    found.sort_by_key(|b| b.class_vecs());
    found.dedup();
    Ok(found)
}

/// Coset closure and whether it is itself a coset S-ring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CosetClosure {
    pub closure: SRing,
    pub is_coset: bool,
    pub coset_srings: usize,
}

/// Intersection of all coset S-rings containing `A`.
///
/// Fails with [`Error::CosetClosureNotCoset`] only for quasidense input;
/// otherwise the flag is reported.
pub fn coset_closure(a: &SRing, limits: &OracleLimits) -> Result<CosetClosure> {
    let all = coset_srings_containing(a, limits)?;
    let mut acc = SRing::full(a.n());
    for b in &all {
        acc = intersect(&acc, b)?;
    }
    let is_coset = is_coset_sring(&acc);
    if !is_coset && is_quasidense(a) {
        return Err(Error::CosetClosureNotCoset);
    }
    Ok(CosetClosure {
        closure: acc,
        is_coset,
        coset_srings: all.len(),
    })
}

/// The similarity of `A` induced by a similarity of a finer S-ring `fine`,
/// when it maps classes of `A` onto classes of `A`.
pub fn induced_similarity(fine: &SRing, coarse: &SRing, sim: &Similarity) -> Option<Similarity> {
    let mut map = Vec::with_capacity(coarse.rank());
    for x in coarse.classes() {
        let mut image = ResidueSet::empty(coarse.n());
        for i in 0..fine.rank() {
            if fine.class(i).is_subset(x) {
                image.union_with(fine.class(sim.apply(i)));
            }
        }
        map.push(coarse.index_of_class(&image)? as u32);
    }
    Some(Similarity { map })
}

/// `Φ(A_0)^A`: similarities of `A` induced from `Φ(A_0)`.
pub fn induced_from_closure(a0: &SRing, a: &SRing) -> Vec<Similarity> {
    let set: BTreeSet<Similarity> = similarities(a0, a0)
        .iter()
        .filter_map(|s| induced_similarity(a0, a, s))
        .collect();
    set.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::similarity::from_unit;

    fn z5c() -> SRing {
        SRing::validate(5, &[vec![0], vec![1, 4], vec![2, 3]]).unwrap()
    }

    fn w4() -> SRing {
        SRing::validate(4, &[vec![0], vec![2], vec![1, 3]]).unwrap()
    }

    fn limits() -> OracleLimits {
        OracleLimits::default()
    }

    /// Every set partition of `1..n`, with `{0}` added, that satisfies the axioms.
    fn brute_force_srings(n: u32) -> BTreeSet<Vec<Vec<u32>>> {
        fn rec(x: u32, n: u32, blocks: &mut Vec<Vec<u32>>, out: &mut BTreeSet<Vec<Vec<u32>>>) {
            if x == n {
                let mut classes = vec![vec![0]];
                classes.extend(blocks.iter().cloned());
                if let Ok(a) = SRing::validate(n, &classes) {
                    out.insert(a.class_vecs());
                }
                return;
            }
            for i in 0..blocks.len() {
                blocks[i].push(x);
                rec(x + 1, n, blocks, out);
                blocks[i].pop();
            }
            blocks.push(vec![x]);
            rec(x + 1, n, blocks, out);
            blocks.pop();
        }
        let mut out = BTreeSet::new();
        rec(1, n, &mut Vec::new(), &mut out);
        if n == 1 {
            out.insert(vec![vec![0]]);
        }
        out
    }

    #[test]
    fn enumeration_matches_set_partition_search() {
        for n in 1..=9 {
            let got: BTreeSet<Vec<Vec<u32>>> = enumerate_srings(n, &limits())
                .unwrap()
                .iter()
                .map(SRing::class_vecs)
                .collect();
            assert_eq!(got, brute_force_srings(n), "n = {n}");
        }
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(
            enumerate_srings(1, &limits()).unwrap(),
            vec![SRing::full(1)]
        );
        assert_eq!(enumerate_srings(5, &limits()).unwrap().len(), 3);
        let four = enumerate_srings(4, &limits()).unwrap();
        for a in [SRing::full(4), w4(), SRing::trivial(4)] {
            assert!(four.contains(&a));
        }
        assert!(matches!(
            enumerate_srings(40, &limits()),
            Err(Error::LimitExceeded { .. })
        ));
    }

    #[test]
    fn isomorphism_examples() {
        let full = SRing::full(9);
        let sim = from_unit(&full, 2).unwrap();
        let f = find_isomorphism(&full, &full, &sim, &limits())
            .unwrap()
            .unwrap();
        assert_eq!(f.table, (0..9).map(|y| (2 * y) % 9).collect::<Vec<_>>());
        let a = SRing::cyclotomic(12, &[5]);
        let id = Similarity::identity(a.rank());
        let f = find_isomorphism(&a, &a, &id, &limits()).unwrap().unwrap();
        assert_eq!(f.table, (0..12).collect::<Vec<_>>());
        let swap = Similarity { map: vec![0, 2, 1] };
        let f = find_isomorphism(&z5c(), &z5c(), &swap, &limits())
            .unwrap()
            .unwrap();
        assert!(is_isomorphism(&z5c(), &z5c(), &swap, &f));
        assert_eq!(f.table, vec![0, 2, 4, 1, 3]);
    }

    #[test]
    fn phi_infty_examples() {
        assert_eq!(phi_infty(&SRing::full(10), &limits()).unwrap().len(), 4);
        assert_eq!(phi_infty(&z5c(), &limits()).unwrap().len(), 2);
        assert!(is_separable_bruteforce(&SRing::trivial(4), &limits()).unwrap());
        let a8 = SRing::validate(8, &[vec![0], vec![4], vec![2, 6], vec![1, 3, 5, 7]]).unwrap();
        assert!(is_separable_bruteforce(&a8, &limits()).unwrap());
    }

    #[test]
    fn intersect_examples() {
        let a = z5c();
        assert_eq!(intersect(&a, &a).unwrap(), a);
        assert_eq!(intersect(&SRing::full(5), &a).unwrap(), a);
        assert_eq!(
            intersect(&w4(), &SRing::trivial(4)).unwrap(),
            SRing::trivial(4)
        );
    }

    #[test]
    fn coset_closure_examples() {
        let c = coset_closure(&SRing::full(6), &limits()).unwrap();
        assert_eq!(c.closure, SRing::full(6));
        assert_eq!(coset_closure(&w4(), &limits()).unwrap().closure, w4());
        let c = coset_closure(&z5c(), &limits()).unwrap();
        assert_eq!(c.closure, SRing::full(5));
        assert!(c.is_coset);
    }

    #[test]
    fn coset_predicate() {
        assert!(is_coset(8, &ResidueSet::from_iter(8, [1, 3, 5, 7])));
        assert!(is_coset(8, &ResidueSet::from_iter(8, [3])));
        assert!(!is_coset(8, &ResidueSet::from_iter(8, [1, 3])));
    }

    #[test]
    fn unit_subgroup_counts() {
        // (Z/8)^* ≅ C2×C2 has 5 subgroups, (Z/7)^* ≅ C6 has 4
        assert_eq!(unit_subgroups(8).len(), 5);
        assert_eq!(unit_subgroups(7).len(), 4);
        assert_eq!(unit_subgroups(1).len(), 1);
    }
}
