//! Multipliers, outer multipliers, the coset map `θ` between them, and the
//! separability decision built on it.

use std::collections::BTreeSet;

use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::error::Result;
use crate::modarith::{mul_mod, unit_mod, units};
use crate::section::{frs0_in, reduce_to_quasidense, ProjectiveLattice, Section};
use crate::sring::SRing;

/// `aut_A(S)`: units of `Z_{|S|}` fixing every class of `A_S`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AutStabilizer {
    pub section: Section,
    pub elements: Vec<u32>,
}

pub fn aut_stabilizer(a: &SRing, s: &Section) -> Result<AutStabilizer> {
    let r = a.restriction(s)?;
    let elements = units(s.order())
        .elements()
        .iter()
        .copied()
        .filter(|&k| r.classes().iter().all(|c| c.scaled(k) == *c))
        .collect();
    Ok(AutStabilizer {
        section: *s,
        elements,
    })
}

/// A coset `aut_A(S)·k` inside the units modulo `m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coset {
    modulus: u32,
    elements: Vec<u32>,
}

impl Coset {
    pub fn new(stabilizer: &[u32], k: u32, m: u32) -> Self {
        let mut elements: Vec<u32> = stabilizer.iter().map(|&s| mul_mod(s, k, m)).collect();
        elements.sort_unstable();
        elements.dedup();
        Self {
            modulus: m,
            elements,
        }
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Smallest representative.
    pub fn rep(&self) -> u32 {
        self.elements[0]
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn contains(&self, k: u32) -> bool {
        self.elements
            .binary_search(&unit_mod(k, self.modulus))
            .is_ok()
    }

    /// Every element reduced modulo `other.modulus` lies in `other`.
    pub fn reduces_into(&self, other: &Coset) -> bool {
        self.elements
            .iter()
            .all(|&k| other.contains(k % other.modulus.max(1)))
    }
}

/// A family `{k_S}` of units over `frS_0(A)`, sorted by section.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multiplier {
    pub entries: Vec<(Section, u32)>,
}

impl Multiplier {
    pub fn get(&self, s: &Section) -> Option<u32> {
        self.entries.iter().find(|(t, _)| t == s).map(|&(_, k)| k)
    }

    pub fn mul(&self, other: &Multiplier) -> Multiplier {
        Multiplier {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&(s, a), &(_, b))| (s, mul_mod(a, b, s.order())))
                .collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.entries.iter().all(|&(_, k)| k == 1)
    }
}

impl Serialize for Multiplier {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            l: u32,
            u: u32,
            k: u32,
        }
        let mut seq = serializer.serialize_seq(Some(self.entries.len()))?;
        for &(s, k) in &self.entries {
            seq.serialize_element(&Entry {
                l: s.l(),
                u: s.u(),
                k,
            })?;
        }
        seq.end()
    }
}

/// A family `{C_S}` of `aut_A(S)`-cosets over `frS_0(A)`, sorted by section.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OuterMultiplier {
    pub entries: Vec<(Section, Coset)>,
}

impl OuterMultiplier {
    pub fn get(&self, s: &Section) -> Option<&Coset> {
        self.entries.iter().find(|(t, _)| t == s).map(|(_, c)| c)
    }

    /// Vector of smallest representatives; equal families have equal keys.
    pub fn canonical(&self) -> Vec<u32> {
        self.entries.iter().map(|(_, c)| c.rep()).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.entries.iter().all(|(_, c)| c.contains(1))
    }

    /// Componentwise coset product.
    pub fn mul(&self, other: &OuterMultiplier, domain: &MultiplierDomain) -> OuterMultiplier {
        OuterMultiplier {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .enumerate()
                .map(|(i, ((s, a), (_, b)))| {
                    let k = mul_mod(a.rep(), b.rep(), s.order());
                    (*s, Coset::new(domain.stabilizer(i), k, s.order()))
                })
                .collect(),
        }
    }

    /// The subfamily indexed by `sections`.
    pub fn restricted_to(&self, sections: &[Section]) -> Option<OuterMultiplier> {
        let entries = sections
            .iter()
            .map(|s| self.get(s).map(|c| (*s, c.clone())))
            .collect::<Option<Vec<_>>>()?;
        Some(OuterMultiplier { entries })
    }
}

impl Serialize for OuterMultiplier {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct Entry<'a>(&'a Section, &'a Coset);
        impl Serialize for Entry<'_> {
            fn serialize<S: Serializer>(
                &self,
                serializer: S,
            ) -> std::result::Result<S::Ok, S::Error> {
                let mut st = serializer.serialize_struct("Entry", 4)?;
                st.serialize_field("l", &self.0.l())?;
                st.serialize_field("u", &self.0.u())?;
                st.serialize_field("k", &self.1.rep())?;
                st.serialize_field("coset", &self.1.elements)?;
                st.end()
            }
        }
        let mut seq = serializer.serialize_seq(Some(self.entries.len()))?;
        for (s, c) in &self.entries {
            seq.serialize_element(&Entry(s, c))?;
        }
        seq.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Relation {
    /// first is a subsection of second
    Below,
    /// second is a subsection of first
    Above,
    Equivalent,
    None,
}

/// `frS_0(A)` with everything the multiplier conditions need.
#[derive(Debug, Clone)]
pub struct MultiplierDomain {
    sections: Vec<Section>,
    stabilizers: Vec<Vec<u32>>,
    relations: Vec<Vec<Relation>>,
    /// DFS order: decreasing section order.
    order: Vec<usize>,
}

impl MultiplierDomain {
    pub fn new(a: &SRing) -> Result<Self> {
        let lattice = ProjectiveLattice::new(a.n());
        Self::with_lattice(&lattice, a)
    }

    pub fn with_lattice(lattice: &ProjectiveLattice, a: &SRing) -> Result<Self> {
        let sections = frs0_in(lattice, a);
        let stabilizers = sections
            .iter()
            .map(|s| aut_stabilizer(a, s).map(|st| st.elements))
            .collect::<Result<Vec<_>>>()?;
        let relations = sections
            .iter()
            .map(|s| {
                sections
                    .iter()
                    .map(|t| {
                        if s == t {
                            Relation::Equivalent
                        } else if s.is_subsection_of(t) {
                            Relation::Below
                        } else if t.is_subsection_of(s) {
                            Relation::Above
                        } else if lattice.equivalent(s, t) {
                            Relation::Equivalent
                        } else {
                            Relation::None
                        }
                    })
                    .collect()
            })
            .collect();
        let mut order: Vec<usize> = (0..sections.len()).collect();
        order.sort_by_key(|&i| (std::cmp::Reverse(sections[i].order()), sections[i]));
        Ok(Self {
            sections,
            stabilizers,
            relations,
            order,
        })
    }

    pub fn sections(&self) -> &[Section] {
        &self.sections
    }

    pub fn len(&self) -> usize {
        self.sections.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sections.is_empty()
    }

    pub fn stabilizer(&self, i: usize) -> &[u32] {
        &self.stabilizers[i]
    }

    /// Checks (SM1) and (SM2).
    pub fn is_multiplier(&self, mu: &Multiplier) -> bool {
        if mu.entries.len() != self.len() {
            return false;
        }
        let ks: Vec<u32> = mu.entries.iter().map(|&(_, k)| k).collect();
        (0..self.len()).all(|i| {
            units(self.sections[i].order()).contains(ks[i])
                && (0..self.len()).all(|j| self.units_compatible(i, ks[i], j, ks[j]))
        })
    }

    fn units_compatible(&self, i: usize, ki: u32, j: usize, kj: u32) -> bool {
        let (mi, mj) = (self.sections[i].order(), self.sections[j].order());
        match self.relations[i][j] {
            Relation::Below => unit_mod(kj % mi.max(1), mi) == ki,
            Relation::Above => unit_mod(ki % mj.max(1), mj) == kj,
            Relation::Equivalent => ki == kj,
            Relation::None => true,
        }
    }

    /// Checks (M1) in its compatibility reading and (M2).
    pub fn is_outer_multiplier(&self, fs: &OuterMultiplier) -> bool {
        if fs.entries.len() != self.len() {
            return false;
        }
        (0..self.len()).all(|i| {
            let c = &fs.entries[i].1;
            c.modulus == self.sections[i].order()
                && *c == Coset::new(&self.stabilizers[i], c.rep(), c.modulus)
                && (0..self.len()).all(|j| self.cosets_compatible(i, c, j, &fs.entries[j].1))
        })
    }

    fn cosets_compatible(&self, i: usize, ci: &Coset, j: usize, cj: &Coset) -> bool {
        match self.relations[i][j] {
            Relation::Below => cj.reduces_into(ci),
            Relation::Above => ci.reduces_into(cj),
            Relation::Equivalent => ci.elements == cj.elements,
            Relation::None => true,
        }
    }

    /// `θ(μ)`: each unit replaced by its `aut_A(S)`-coset.
    pub fn theta(&self, mu: &Multiplier) -> OuterMultiplier {
        OuterMultiplier {
            entries: mu
                .entries
                .iter()
                .enumerate()
                .map(|(i, &(s, k))| (s, Coset::new(&self.stabilizers[i], k, s.order())))
                .collect(),
        }
    }

    /// All multipliers, by depth-first search with congruence filtering.
    pub fn mult_group(&self) -> Vec<Multiplier> {
        let mut out = Vec::new();
        let mut ks = vec![0u32; self.len()];
        self.mult_dfs(0, &mut ks, &mut out);
        out.sort();
        out
    }

    fn mult_dfs(&self, depth: usize, ks: &mut [u32], out: &mut Vec<Multiplier>) {
        if depth == self.order.len() {
            out.push(Multiplier {
                entries: self
                    .sections
                    .iter()
                    .copied()
                    .zip(ks.iter().copied())
                    .collect(),
            });
            return;
        }
        let i = self.order[depth];
        for &k in units(self.sections[i].order()).elements() {
            let ok = self.order[..depth]
                .iter()
                .all(|&j| self.units_compatible(i, k, j, ks[j]));
            if ok {
                ks[i] = k;
                self.mult_dfs(depth + 1, ks, out);
            }
        }
    }

    fn cosets_of(&self, i: usize) -> Vec<Coset> {
        let m = self.sections[i].order();
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &k in units(m).elements() {
            if seen.contains(&k) {
                continue;
            }
            let c = Coset::new(&self.stabilizers[i], k, m);
            seen.extend(c.elements.iter().copied());
            out.push(c);
        }
        out
    }

    /// All outer multipliers, by the same search over coset representatives.
    pub fn fmult_group(&self) -> Vec<OuterMultiplier> {
        let choices: Vec<Vec<Coset>> = (0..self.len()).map(|i| self.cosets_of(i)).collect();
        let mut out = Vec::new();
        let mut picked: Vec<usize> = vec![0; self.len()];
        self.fmult_dfs(0, &choices, &mut picked, &mut out);
        out.sort();
        out
    }

    fn fmult_dfs(
        &self,
        depth: usize,
        choices: &[Vec<Coset>],
        picked: &mut [usize],
        out: &mut Vec<OuterMultiplier>,
    ) {
        if depth == self.order.len() {
            out.push(OuterMultiplier {
                entries: (0..self.len())
                    .map(|i| (self.sections[i], choices[i][picked[i]].clone()))
                    .collect(),
            });
            return;
        }
        let i = self.order[depth];
        for (ci, c) in choices[i].iter().enumerate() {
            let ok = self.order[..depth]
                .iter()
                .all(|&j| self.cosets_compatible(i, c, j, &choices[j][picked[j]]));
            if ok {
                picked[i] = ci;
                self.fmult_dfs(depth + 1, choices, picked, out);
            }
        }
    }
}

pub fn mult_group(a: &SRing) -> Result<Vec<Multiplier>> {
    Ok(MultiplierDomain::new(a)?.mult_group())
}

pub fn fmult_group(a: &SRing) -> Result<Vec<OuterMultiplier>> {
    Ok(MultiplierDomain::new(a)?.fmult_group())
}

pub fn theta(a: &SRing, mu: &Multiplier) -> Result<OuterMultiplier> {
    Ok(MultiplierDomain::new(a)?.theta(mu))
}

/// Outcome of the multiplier criterion.
#[derive(Debug, Clone, Serialize)]
pub struct SeparabilityReport {
    pub separable: bool,
    pub quasidense_input: bool,
    pub reduct: SRing,
    pub reduction_trace: Vec<Section>,
    pub frs0: Vec<Section>,
    pub mult_order: usize,
    pub fmult_order: usize,
    pub image_order: usize,
    /// An outer multiplier not in the image of `θ`, when not separable.
    pub uncovered: Option<OuterMultiplier>,
}

/// Decides separability: reduce to the quasidense case, then test whether
/// `θ: mult → fmult` is onto.
pub fn is_separable(a: &SRing) -> Result<SeparabilityReport> {
    let reduction = reduce_to_quasidense(a)?;
    let reduct = reduction.reduct;
    let domain = MultiplierDomain::new(&reduct)?;
    let mult = domain.mult_group();
    let fmult = domain.fmult_group();
    let image: BTreeSet<Vec<u32>> = mult.iter().map(|mu| domain.theta(mu).canonical()).collect();
    let uncovered = fmult
        .iter()
        .find(|fs| !image.contains(&fs.canonical()))
        .cloned();
    Ok(SeparabilityReport {
        separable: uncovered.is_none(),
        quasidense_input: reduction.trace.is_empty(),
        frs0: domain.sections().to_vec(),
        reduct,
        reduction_trace: reduction.trace,
        mult_order: mult.len(),
        fmult_order: fmult.len(),
        image_order: image.len(),
        uncovered,
    })
}
