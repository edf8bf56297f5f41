//! Sections of `Z_n`, the multiple relation and projective equivalence,
//! principal sections, `frS_0`, singular classes and the reduction to the
//! quasidense case.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::bitset::ResidueSet;
use crate::error::{Error, Result};
use crate::modarith::{divisors, gcd, is_composite, lcm, mod_inverse, mul_mod, subgroup, unit_mod};
use crate::sring::{closure, generated, radical, SRing};

/// A section `H_u / H_l` of `Z_n`, with subgroups named by their orders.
///
/// Canonical coordinates identify it with `Z_{u/l}` via
/// `j·(n/u) + H_l ↦ j mod (u/l)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Section {
    n: u32,
    l: u32,
    u: u32,
}

impl fmt::Debug for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.l, self.u)
    }
}

impl fmt::Display for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.l, self.u)
    }
}

impl Serialize for Section {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("Section", 2)?;
        st.serialize_field("l", &self.l)?;
        st.serialize_field("u", &self.u)?;
        st.end()
    }
}

impl Section {
    pub fn new(n: u32, l: u32, u: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroOrder);
        }
        if u == 0 || !n.is_multiple_of(u) {
            return Err(Error::NotADivisor { d: u, n });
        }
        if l == 0 || !u.is_multiple_of(l) {
            return Err(Error::NotADivisor { d: l, n: u });
        }
        Ok(Self { n, l, u })
    }

    pub(crate) fn new_unchecked(n: u32, l: u32, u: u32) -> Self {
        debug_assert!(n.is_multiple_of(u) && u.is_multiple_of(l));
        Self { n, l, u }
    }

    /// The section `G/1`.
    pub fn whole(n: u32) -> Self {
        Self { n, l: 1, u: n }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn u(&self) -> u32 {
        self.u
    }

    /// `|S| = u/l`.
    pub fn order(&self) -> u32 {
        self.u / self.l
    }

    pub fn is_trivial(&self) -> bool {
        self.l == self.u
    }

    /// Canonical coordinate of `x ∈ H_u`.
    pub fn project(&self, x: u32) -> u32 {
        let step = self.n / self.u;
        debug_assert_eq!(x % step, 0);
        (x / step) % self.order()
    }

    pub fn project_set(&self, x: &ResidueSet) -> ResidueSet {
        ResidueSet::from_iter(self.order(), x.iter().map(|v| self.project(v)))
    }

    /// Full preimage in `H_u` of a set of canonical coordinates.
    pub fn lift_set(&self, img: &ResidueSet) -> ResidueSet {
        let step = self.n / self.u;
        let m = self.order();
        ResidueSet::from_iter(
            self.n,
            (0..self.u)
                .filter(|j| img.contains(j % m))
                .map(|j| j * step),
        )
    }

    /// `self ⪯ s`: `H_{s.l} ≤ H_l ≤ H_u ≤ H_{s.u}`.
    pub fn is_subsection_of(&self, s: &Section) -> bool {
        self.l.is_multiple_of(s.l) && s.u.is_multiple_of(self.u)
    }

    /// True iff `self` is a multiple of `s`: `U·L' = U'` and `U ∩ L' = L`.
    pub fn is_multiple_of(&self, s: &Section) -> bool {
        is_multiple(self, s)
    }

    /// The section of the dual group: `(n/u, n/l)`.
    pub fn dual(&self) -> Section {
        Section {
            n: self.n,
            l: self.n / self.u,
            u: self.n / self.l,
        }
    }

    /// Image of a subsection `sub ⪯ self` in an equivalent section `target`
    /// under the projective isomorphism.
    pub fn transport_subsection(&self, sub: &Section, target: &Section) -> Section {
        debug_assert!(sub.is_subsection_of(self));
        let lo = sub.l / self.l;
        let hi = sub.u / self.l;
        Section::new_unchecked(self.n, target.l * lo, target.l * hi)
    }
}

/// All sections of `Z_n`, ordered by `(l, u)`.
pub fn all_sections(n: u32) -> Vec<Section> {
    let ds = divisors(n);
    let mut out = Vec::new();
    for &l in &ds {
        for &u in &ds {
            if u % l == 0 {
                out.push(Section::new_unchecked(n, l, u));
            }
        }
    }
    out
}

/// `sp` is a multiple of `s`, in divisor form: `lcm(u, l') = u'` and
/// `gcd(u, l') = l`.
pub fn is_multiple(sp: &Section, s: &Section) -> bool {
    sp.n == s.n && lcm(s.u, sp.l) == sp.u && gcd(s.u, sp.l) == s.l
}

/// Unit of the canonical projective isomorphism for one multiple step
/// between `a` and `b` (either direction).
fn step_unit(a: &Section, b: &Section) -> u32 {
    let m = a.order();
    if is_multiple(b, a) {
        unit_mod(b.l / a.l, m)
    } else {
        debug_assert!(is_multiple(a, b));
        mod_inverse(a.l / b.l, m).expect("multiple step ratio is a unit")
    }
}

/// Projective equivalence on all sections of `Z_n`.
#[derive(Debug, Clone)]
pub struct ProjectiveLattice {
    n: u32,
    sections: Vec<Section>,
    index: HashMap<Section, usize>,
    adjacent: Vec<Vec<usize>>,
    component: Vec<usize>,
}

impl ProjectiveLattice {
    pub fn new(n: u32) -> Self {
        let sections = all_sections(n);
        let index: HashMap<Section, usize> =
            sections.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let k = sections.len();
        let mut adjacent = vec![Vec::new(); k];
        for i in 0..k {
            for j in 0..k {
                if i != j
                    && (is_multiple(&sections[i], &sections[j])
                        || is_multiple(&sections[j], &sections[i]))
                {
                    adjacent[i].push(j);
                }
            }
        }
        let mut component = vec![usize::MAX; k];
        let mut next = 0;
        for start in 0..k {
            if component[start] != usize::MAX {
                continue;
            }
            component[start] = next;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &w in &adjacent[v] {
                    if component[w] == usize::MAX {
                        component[w] = next;
                        queue.push_back(w);
                    }
                }
            }
            next += 1;
        }
        Self {
            n,
            sections,
            index,
            adjacent,
            component,
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn sections(&self) -> &[Section] {
        &self.sections
    }

    pub fn component_of(&self, s: &Section) -> usize {
        self.component[self.index[s]]
    }

    pub fn equivalent(&self, s: &Section, t: &Section) -> bool {
        self.component_of(s) == self.component_of(t)
    }

    /// Sections adjacent to `s` under the symmetric multiple relation.
    pub fn neighbours(&self, s: &Section) -> impl Iterator<Item = Section> + '_ {
        self.adjacent[self.index[s]]
            .iter()
            .map(|&j| self.sections[j])
    }

    /// A shortest chain of multiple steps from `s` to `t`.
    pub fn path(&self, s: &Section, t: &Section) -> Option<Vec<Section>> {
        let (src, dst) = (self.index[s], self.index[t]);
        let mut parent = vec![usize::MAX; self.sections.len()];
        parent[src] = src;
        let mut queue = VecDeque::from([src]);
        while let Some(v) = queue.pop_front() {
            if v == dst {
                let mut path = vec![self.sections[v]];
                let mut cur = v;
                while cur != src {
                    cur = parent[cur];
                    path.push(self.sections[cur]);
                }
                path.reverse();
                return Some(path);
            }
            for &w in &self.adjacent[v] {
                if parent[w] == usize::MAX {
                    parent[w] = v;
                    queue.push_back(w);
                }
            }
        }
        None
    }

    /// The canonical projective isomorphism `S → T` as a unit mod `|S|`.
    pub fn f_unit(&self, s: &Section, t: &Section) -> Result<u32> {
        let path = self.path(s, t).ok_or(Error::NotEquivalent(*s, *t))?;
        Ok(unit_along(&path))
    }
}

/// Composes the multiple-step units along a chain of sections.
pub fn unit_along(path: &[Section]) -> u32 {
    let m = path[0].order();
    path.windows(2).fold(unit_mod(1, m), |acc, w| {
        mul_mod(acc, step_unit(&w[0], &w[1]), m)
    })
}

/// `f_{S,T}` as a unit; fails unless `S ~ T`.
pub fn f_unit(s: &Section, t: &Section) -> Result<u32> {
    ProjectiveLattice::new(s.n).f_unit(s, t)
}

/// A class of projectively equivalent sections, restricted to the input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProjClass {
    pub members: Vec<Section>,
    pub smallest: Option<Section>,
    pub largest: Option<Section>,
}

impl ProjClass {
    fn from_members(members: Vec<Section>) -> Self {
        let smallest = members
            .iter()
            .copied()
            .find(|s| members.iter().all(|t| is_multiple(t, s)));
        let largest = members
            .iter()
            .copied()
            .find(|s| members.iter().all(|t| is_multiple(s, t)));
        Self {
            members,
            smallest,
            largest,
        }
    }

    pub fn order(&self) -> u32 {
        self.members[0].order()
    }
}

/// Partitions `sections` by projective equivalence computed over all
/// sections of `Z_n`.
pub fn proj_classes(n: u32, sections: &[Section]) -> Vec<ProjClass> {
    proj_classes_in(&ProjectiveLattice::new(n), sections)
}

pub fn proj_classes_in(lattice: &ProjectiveLattice, sections: &[Section]) -> Vec<ProjClass> {
    let mut groups: Vec<(usize, Vec<Section>)> = Vec::new();
    for s in sections {
        let c = lattice.component_of(s);
        match groups.iter_mut().find(|(id, _)| *id == c) {
            Some((_, members)) => members.push(*s),
            None => groups.push((c, vec![*s])),
        }
    }
    groups
        .into_iter()
        .map(|(_, mut members)| {
            members.sort();
            members.dedup();
            ProjClass::from_members(members)
        })
        .collect()
}

/// The sections `⟨X⟩/rad(X)` over all classes `X`, sorted and deduplicated.
pub fn principal_sections(a: &SRing) -> Vec<Section> {
    let n = a.n();
    let mut out: Vec<Section> = a
        .classes()
        .iter()
        .map(|x| Section::new_unchecked(n, radical(n, x), generated(n, x)))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// A-sections projectively equivalent to an A-subsection of a principal
/// section; includes trivial sections.
pub fn frs0(a: &SRing) -> Vec<Section> {
    frs0_in(&ProjectiveLattice::new(a.n()), a)
}

pub fn frs0_in(lattice: &ProjectiveLattice, a: &SRing) -> Vec<Section> {
    let sections = a.sections();
    let principal = principal_sections(a);
    let mut reached = vec![false; lattice.sections().len()];
    for q in &sections {
        if principal.iter().any(|p| q.is_subsection_of(p)) {
            reached[lattice.component_of(q)] = true;
        }
    }
    sections
        .into_iter()
        .filter(|t| reached[lattice.component_of(t)])
        .collect()
}

fn rank_of_restriction(a: &SRing, s: &Section) -> usize {
    let mut seen = ResidueSet::empty(s.order());
    let mut count = 0;
    for i in a.classes_in_section(s) {
        let p = s.project(a.class(i).min().unwrap());
        if !seen.contains(p) {
            seen.union_with(&s.project_set(a.class(i)));
            count += 1;
        }
    }
    count
}

/// True iff no A-section has a rank-2 restriction of composite order.
pub fn is_quasidense(a: &SRing) -> bool {
    first_dense_section(a).is_none()
}

fn first_dense_section(a: &SRing) -> Option<Section> {
    a.sections()
        .into_iter()
        .find(|s| is_composite(s.order()) && rank_of_restriction(a, s) == 2)
}

/// A rank-2 composite-order projective class, with its smallest section
/// `L1/L0` and largest section `U1/U0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SingularWitness {
    pub class: ProjClass,
    pub smallest: Section,
    pub largest: Section,
}

/// True iff `r` over `Z_{ab}` equals the internal tensor product of its
/// restrictions to the subgroups of orders `a` and `b` (coprime).
pub fn is_internal_tensor(r: &SRing, a: u32, b: u32) -> bool {
    let n = r.n();
    if a * b != n || gcd(a, b) != 1 {
        return false;
    }
    let ha = subgroup(n, a).unwrap();
    let hb = subgroup(n, b).unwrap();
    if !r.is_union_of_classes(&ha) || !r.is_union_of_classes(&hb) {
        return false;
    }
    let rank_a = (0..r.rank()).filter(|&i| r.class(i).is_subset(&ha)).count();
    let rank_b = (0..r.rank()).filter(|&i| r.class(i).is_subset(&hb)).count();
    if rank_a * rank_b != r.rank() {
        return false;
    }
    // z = x + y with x ∈ H_a, y ∈ H_b: x ≡ z (mod n/a) and x ≡ 0 (mod n/b)
    let split = |z: u32| -> (u32, u32) {
        let x = ha.iter().find(|&x| hb.contains((z + n - x) % n)).unwrap();
        (x, (z + n - x) % n)
    };
    r.classes().iter().all(|zc| {
        let (x, y) = split(zc.min().unwrap());
        let xc = r.class(r.class_of(x) as usize);
        let yc = r.class(r.class_of(y) as usize);
        let mut sum = ResidueSet::empty(n);
        for p in xc.iter() {
            sum.union_with(&yc.shifted(p));
        }
        sum == *zc
    })
}

/// Finds a singular class when A is not quasidense, checking the wreath
/// (S1) and tensor (S2) conditions on its smallest and largest sections.
pub fn singular_witness(a: &SRing) -> Result<Option<SingularWitness>> {
    let Some(s) = first_dense_section(a) else {
        return Ok(None);
    };
    let lattice = ProjectiveLattice::new(a.n());
    let members: Vec<Section> = a
        .sections()
        .into_iter()
        .filter(|t| lattice.equivalent(t, &s))
        .collect();
    let class = ProjClass::from_members(members);
    let (Some(smallest), Some(largest)) = (class.smallest, class.largest) else {
        return Err(Error::SingularConditionViolated(format!(
            "class of {s} has no unique smallest/largest A-section: {:?}",
            class.members
        )));
    };
    let (l0, l1) = (smallest.l(), smallest.u());
    let (u0, u1) = (largest.l(), largest.u());
    for &t in &class.members {
        if rank_of_restriction(a, &t) != 2 {
            return Err(Error::SingularConditionViolated(format!(
                "member {t} of the class of {s} is not of rank 2"
            )));
        }
    }
    if !a.is_wreath(u0, l0)? || !a.is_wreath(u1, l1)? {
        return Err(Error::SingularConditionViolated(format!(
            "wreath condition fails for ({l0},{u0}) / ({l1},{u1})"
        )));
    }
    let big = a.restriction(&Section::new(a.n(), l0, u1)?)?;
    if !is_internal_tensor(&big, l1 / l0, u0 / l0) {
        return Err(Error::SingularConditionViolated(format!(
            "restriction to ({l0},{u1}) is not the tensor product of ({l0},{l1}) and ({l0},{u0})"
        )));
    }
    Ok(Some(SingularWitness {
        class,
        smallest,
        largest,
    }))
}

/// The smallest S-ring `A' ≥ A` whose restriction to `S` is the full group ring.
pub fn s_extension(a: &SRing, s: &Section) -> Result<SRing> {
    a.check_section(s)?;
    let n = a.n();
    let h_l = subgroup(n, s.l())?;
    let step = n / s.u();
    let mut seeds: Vec<ResidueSet> = a.classes().to_vec();
    seeds.extend((0..s.order()).map(|j| h_l.shifted(j * step)));
    Ok(closure(n, &seeds))
}

/// Result of repeated S-extension at singular classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub reduct: SRing,
    pub trace: Vec<Section>,
    pub ranks: Vec<usize>,
}

/// Extends A at singular classes until it is quasidense.
pub fn reduce_to_quasidense(a: &SRing) -> Result<Reduction> {
    let mut cur = a.clone();
    let mut trace = Vec::new();
    let mut ranks = vec![cur.rank()];
    while let Some(w) = singular_witness(&cur)? {
        let next = s_extension(&cur, &w.smallest)?;
        if next.rank() <= cur.rank() {
            return Err(Error::SingularConditionViolated(format!(
                "extension at {} did not increase rank {}",
                w.smallest,
                cur.rank()
            )));
        }
        trace.push(w.smallest);
        ranks.push(next.rank());
        cur = next;
    }
    Ok(Reduction {
        reduct: cur,
        trace,
        ranks,
    })
}
