//! Named verification suites over enumerated S-rings.
//!
//! Each suite walks every S-ring over `Z_n` for `n` up to a bound, checks a
//! family of properties, and returns the failures in canonical order.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::duality::{dual_section, dual_sring};
use crate::error::{Error, Result};
use crate::modarith::{divisors, gcd, is_prime, is_prime_power, mod_inverse, pow_mod, units};
use crate::multiplier::{aut_stabilizer, is_separable, MultiplierDomain};
use crate::oracle::{
    coset_closure, enumerate_srings, induced_from_closure, is_separable_bruteforce, phi_infty,
    OracleLimits,
};
use crate::section::{
    all_sections, frs0, is_quasidense, proj_classes, reduce_to_quasidense, unit_along,
    ProjectiveLattice, Section,
};
use crate::similarity::{fs_of_in, similarities, similarity_from_outer};
use crate::sring::{closure, SRing};

/// The available suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Axioms,
    Pgroups,
    Duality,
    PhiIso,
    Oracle,
    CosetClosure,
    Reduction,
    Projective,
    Burnside,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Axioms,
        Suite::Pgroups,
        Suite::Duality,
        Suite::PhiIso,
        Suite::Oracle,
        Suite::CosetClosure,
        Suite::Reduction,
        Suite::Projective,
        Suite::Burnside,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Axioms => "axioms",
            Suite::Pgroups => "pgroups",
            Suite::Duality => "duality",
            Suite::PhiIso => "phi-iso",
            Suite::Oracle => "oracle",
            Suite::CosetClosure => "coset-closure",
            Suite::Reduction => "reduction",
            Suite::Projective => "projective",
            Suite::Burnside => "burnside",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

/// One failed check.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Failure {
    pub n: u32,
    pub classes: Vec<Vec<u32>>,
    pub reason: String,
}

impl Failure {
    fn new(a: &SRing, reason: impl Into<String>) -> Self {
        Self {
            n: a.n(),
            classes: a.class_vecs(),
            reason: reason.into(),
        }
    }

    fn bare(n: u32, reason: impl Into<String>) -> Self {
        Self {
            n,
            classes: Vec::new(),
            reason: reason.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub max_n: u32,
    /// instances examined
    pub checked: usize,
    pub failures: Vec<Failure>,
    /// observations that do not count as failures
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyConfig {
    pub limits: OracleLimits,
    pub seed: u64,
    /// random paths per section pair in the projective suite
    pub paths_per_pair: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            limits: OracleLimits::default(),
            seed: 0x5eed,
            paths_per_pair: 4,
        }
    }
}

pub fn run(suite: Suite, max_n: u32, cfg: &VerifyConfig) -> Result<SuiteReport> {
    let (checked, mut failures, notes) = match suite {
        Suite::Axioms => per_sring(1..=max_n, cfg, |a| Ok(axioms(a)))?,
        Suite::Pgroups => pgroups(max_n, cfg)?,
        Suite::Duality => per_sring(1..=max_n, cfg, duality)?,
        Suite::PhiIso => per_sring(1..=max_n, cfg, phi_iso)?,
        Suite::Oracle => oracle(max_n, cfg)?,
        Suite::CosetClosure => per_sring(1..=max_n, cfg, |a| coset_closure_check(a, &cfg.limits))?,
        Suite::Reduction => per_sring(1..=max_n, cfg, |a| reduction(a, &cfg.limits))?,
        Suite::Projective => projective(max_n, cfg)?,
        Suite::Burnside => burnside(max_n, cfg)?,
    };
    failures.sort();
    Ok(SuiteReport {
        suite,
        max_n,
        checked,
        failures,
        notes,
    })
}

type Outcome = (usize, Vec<Failure>, Vec<String>);

fn enumerate_all(orders: impl IntoIterator<Item = u32>, cfg: &VerifyConfig) -> Result<Vec<SRing>> {
    let orders: Vec<u32> = orders.into_iter().collect();
    let lists: Vec<Vec<SRing>> = orders
        .par_iter()
        .map(|&n| enumerate_srings(n, &cfg.limits))
        .collect::<Result<_>>()?;
    Ok(lists.into_iter().flatten().collect())
}

fn per_sring<F>(
    orders: impl IntoIterator<Item = u32>,
    cfg: &VerifyConfig,
    check: F,
) -> Result<Outcome>
where
    F: Fn(&SRing) -> Result<Vec<String>> + Sync,
{
    let rings = enumerate_all(orders, cfg)?;
    let results: Vec<Vec<Failure>> = rings
        .par_iter()
        .map(|a| -> Result<Vec<Failure>> {
            Ok(check(a)?.into_iter().map(|r| Failure::new(a, r)).collect())
        })
        .collect::<Result<_>>()?;
    Ok((
        rings.len(),
        results.into_iter().flatten().collect(),
        Vec::new(),
    ))
}

fn fail_if(cond: bool, out: &mut Vec<String>, msg: impl FnOnce() -> String) {
    if cond {
        out.push(msg());
    }
}

fn axioms(a: &SRing) -> Vec<String> {
    let mut out = Vec::new();
    if let Err(e) = SRing::validate(a.n(), &a.class_vecs()) {
        out.push(format!("validate: {e}"));
    }
    fail_if(closure(a.n(), a.classes()) != *a, &mut out, || {
        "closure is not idempotent".into()
    });
    for s in a.sections() {
        match a.restriction(&s) {
            Ok(r) => {
                if let Err(e) = SRing::validate(r.n(), &r.class_vecs()) {
                    out.push(format!("restriction to {s}: {e}"));
                }
            }
            Err(e) => out.push(format!("restriction to {s}: {e}")),
        }
    }
    out
}

fn pgroups(max_n: u32, cfg: &VerifyConfig) -> Result<Outcome> {
    let orders: Vec<u32> = (2..=max_n).filter(|&q| is_prime_power(q)).collect();
    let oracle_bound = cfg.limits.isomorphism.min(16);
    per_sring(orders, cfg, |a| {
        let mut out = Vec::new();
        let r = is_separable(a)?;
        fail_if(!r.separable, &mut out, || {
            "criterion declares it non-separable".into()
        });
        if a.n() <= oracle_bound && !is_separable_bruteforce(a, &cfg.limits)? {
            out.push("oracle finds a similarity with no isomorphism".into());
        }
        Ok(out)
    })
}

fn duality(a: &SRing) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let n = a.n();
    let d = match dual_sring(a) {
        Ok(d) => d,
        Err(e) => return Ok(vec![format!("dual: {e}")]),
    };
    if let Err(e) = SRing::validate(n, &d.class_vecs()) {
        out.push(format!("dual does not validate: {e}"));
    }
    match dual_sring(&d) {
        Ok(dd) => fail_if(dd != *a, &mut out, || "double dual differs".into()),
        Err(e) => out.push(format!("double dual: {e}")),
    }
    fail_if(d.rank() != a.rank(), &mut out, || {
        "rank not preserved".into()
    });
    let mut dualized: Vec<u32> = a.a_subgroups().iter().map(|g| n / g).collect();
    dualized.sort_unstable();
    fail_if(dualized != d.a_subgroups(), &mut out, || {
        "A-groups do not dualize".into()
    });
    let qd = is_quasidense(a);
    fail_if(qd != is_quasidense(&d), &mut out, || {
        "quasidensity differs from the dual".into()
    });
    let (s1, s2) = (is_separable(a)?.separable, is_separable(&d)?.separable);
    fail_if(s1 != s2, &mut out, || {
        format!("separable {s1} but dual separable {s2}")
    });
    if qd {
        let mut expected: Vec<Section> = frs0(a).iter().map(dual_section).collect();
        expected.sort();
        fail_if(expected != frs0(&d), &mut out, || {
            "frs0 does not dualize".into()
        });
    }
    for s in a.sections() {
        let lhs = aut_stabilizer(a, &s)?.elements;
        let rhs = aut_stabilizer(&d, &dual_section(&s))?.elements;
        fail_if(lhs != rhs, &mut out, || {
            format!("stabilizer of {s} does not dualize")
        });
    }
    Ok(out)
}

fn phi_iso(a: &SRing) -> Result<Vec<String>> {
    if !is_quasidense(a) {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let domain = MultiplierDomain::new(a)?;
    let sims = similarities(a, a);
    let fmult = domain.fmult_group();
    fail_if(sims.len() != fmult.len(), &mut out, || {
        format!(
            "{} similarities but {} outer multipliers",
            sims.len(),
            fmult.len()
        )
    });
    let fmult_keys: BTreeSet<Vec<u32>> = fmult.iter().map(|f| f.canonical()).collect();
    let mut images = BTreeSet::new();
    for sim in &sims {
        let fs = fs_of_in(&domain, a, sim)?;
        fail_if(!fmult_keys.contains(&fs.canonical()), &mut out, || {
            format!("fS of {:?} is not an outer multiplier", sim.map)
        });
        images.insert(fs.canonical());
        match similarity_from_outer(a, &fs) {
            Ok(back) => fail_if(back != *sim, &mut out, || {
                format!("round trip changes {:?}", sim.map)
            }),
            Err(e) => out.push(format!("reconstruction of {:?}: {e}", sim.map)),
        }
    }
    fail_if(images.len() != sims.len(), &mut out, || {
        "fS is not injective".into()
    });
    for fs in &fmult {
        match similarity_from_outer(a, fs) {
            Ok(sim) => {
                let again = fs_of_in(&domain, a, &sim)?;
                fail_if(again.canonical() != fs.canonical(), &mut out, || {
                    "outer multiplier round trip differs".into()
                });
            }
            Err(e) => out.push(format!("outer multiplier without similarity: {e}")),
        }
    }
    Ok(out)
}

fn oracle(max_n: u32, cfg: &VerifyConfig) -> Result<Outcome> {
    if max_n > cfg.limits.isomorphism {
        return Err(Error::LimitExceeded {
            what: "oracle suite",
            n: max_n,
            bound: cfg.limits.isomorphism,
        });
    }
    let rings = enumerate_all(1..=max_n, cfg)?;
    let results: Vec<(Option<Failure>, Option<String>)> = rings
        .par_iter()
        .map(|a| -> Result<_> {
            let crit = is_separable(a)?.separable;
            let brute = is_separable_bruteforce(a, &cfg.limits)?;
            let failure = (crit != brute)
                .then(|| Failure::new(a, format!("criterion says {crit}, oracle says {brute}")));
            let note = (!brute).then(|| format!("non-separable: {:?}", a));
            Ok((failure, note))
        })
        .collect::<Result<_>>()?;
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    for (f, note) in results {
        failures.extend(f);
        notes.extend(note);
    }
    Ok((rings.len(), failures, notes))
}

fn coset_closure_check(a: &SRing, limits: &OracleLimits) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let c = match coset_closure(a, limits) {
        Ok(c) => c,
        Err(Error::CosetClosureNotCoset) => {
            return Ok(vec![
                "coset closure of a quasidense S-ring is not a coset S-ring".into(),
            ])
        }
        Err(e) => return Err(e),
    };
    fail_if(
        !a.classes().iter().all(|x| c.closure.is_union_of_classes(x)),
        &mut out,
        || "coset closure does not contain A".into(),
    );
    let lhs = phi_infty(a, limits)?;
    let rhs = induced_from_closure(&c.closure, a);
    fail_if(lhs != rhs, &mut out, || {
        format!(
            "phi_infty has {} elements, induced set has {}",
            lhs.len(),
            rhs.len()
        )
    });
    Ok(out)
}

fn reduction(a: &SRing, limits: &OracleLimits) -> Result<Vec<String>> {
    if is_quasidense(a) {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let red = match reduce_to_quasidense(a) {
        Ok(r) => r,
        Err(e) => return Ok(vec![format!("reduction: {e}")]),
    };
    fail_if(red.trace.is_empty(), &mut out, || {
        "no reduction step taken".into()
    });
    fail_if(!red.ranks.windows(2).all(|w| w[0] < w[1]), &mut out, || {
        format!("ranks do not increase: {:?}", red.ranks)
    });
    fail_if(!is_quasidense(&red.reduct), &mut out, || {
        "reduct is not quasidense".into()
    });
    fail_if(
        !a.classes()
            .iter()
            .all(|x| red.reduct.is_union_of_classes(x)),
        &mut out,
        || "reduct does not contain A".into(),
    );
    if a.n() <= limits.isomorphism {
        let before = is_separable_bruteforce(a, limits)?;
        let after = is_separable_bruteforce(&red.reduct, limits)?;
        fail_if(before != after, &mut out, || {
            format!("oracle: input separable {before}, reduct separable {after}")
        });
        let crit = is_separable(a)?.separable;
        fail_if(crit != before, &mut out, || {
            format!("criterion {crit}, oracle {before}")
        });
    }
    Ok(out)
}

/// `f_{S,T}` from the closed form `l_T / l_S mod m`.
pub fn f_unit_closed_form(s: &Section, t: &Section) -> u32 {
    let m = s.order();
    if m == 1 {
        return 1;
    }
    let g = gcd(s.l(), t.l());
    let (num, den) = (t.l() / g, s.l() / g);
    let inv = mod_inverse(den % m, m).expect("ratio of equivalent sections is a unit");
    ((u64::from(num) * u64::from(inv)) % u64::from(m)) as u32
}

/// Closed-form projective equivalence: equal order and equal `p`-parts of
/// both subgroups for every prime `p | m`.
pub fn equivalent_closed_form(s: &Section, t: &Section) -> bool {
    let m = s.order();
    if m != t.order() {
        return false;
    }
    let p_part = |x: u32, p: u32| {
        let mut r = 1;
        let mut y = x;
        while y.is_multiple_of(p) {
            y /= p;
            r *= p;
        }
        r
    };
    divisors(m)
        .into_iter()
        .filter(|&p| is_prime(p))
        .all(|p| p_part(s.l(), p) == p_part(t.l(), p) && p_part(s.u(), p) == p_part(t.u(), p))
}

/// Failures and the number of paths checked.
fn projective_order(n: u32, cfg: &VerifyConfig) -> (usize, Vec<Failure>) {
    let lattice = ProjectiveLattice::new(n);
    let sections = lattice.sections().to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ u64::from(n));
    let mut out = Vec::new();
    let mut paths = 0;
    for s in &sections {
        for t in &sections {
            let eq = lattice.equivalent(s, t);
            if eq != equivalent_closed_form(s, t) {
                out.push(Failure::bare(
                    n,
                    format!("equivalence of {s} and {t} disagrees"),
                ));
            }
            if !eq {
                continue;
            }
            let direct = lattice.f_unit(s, t).expect("equivalent");
            if direct != f_unit_closed_form(s, t) {
                out.push(Failure::bare(
                    n,
                    format!("f_unit {s}->{t} = {direct}, closed form differs"),
                ));
            }
            let component: Vec<&Section> = sections
                .iter()
                .filter(|w| lattice.equivalent(w, s))
                .collect();
            for _ in 0..cfg.paths_per_pair {
                // detour through one or two random members of the class
                let mut path = vec![*s];
                let stops = 1 + usize::from(rng.gen_bool(0.5));
                for _ in 0..stops {
                    let w = **component.choose(&mut rng).unwrap();
                    let leg = lattice.path(path.last().unwrap(), &w).unwrap();
                    path.extend_from_slice(&leg[1..]);
                }
                let leg = lattice.path(path.last().unwrap(), t).unwrap();
                path.extend_from_slice(&leg[1..]);
                let c = unit_along(&path);
                paths += 1;
                if c != direct {
                    out.push(Failure::bare(
                        n,
                        format!("path {path:?} gives {c}, expected {direct}"),
                    ));
                }
            }
        }
    }
    (paths, out)
}

fn projective(max_n: u32, cfg: &VerifyConfig) -> Result<Outcome> {
    let mut orders: Vec<u32> = [12, 24, 30, 36]
        .into_iter()
        .filter(|&n| n <= max_n)
        .collect();
    if orders.is_empty() {
        orders = (1..=max_n).collect();
    }
    let per_order: Vec<(usize, Vec<Failure>)> = orders
        .par_iter()
        .map(|&n| projective_order(n, cfg))
        .collect();
    let paths: usize = per_order.iter().map(|(p, _)| p).sum();
    let mut failures: Vec<Failure> = per_order.into_iter().flat_map(|(_, f)| f).collect();
    let prime_powers: Vec<u32> = (2..=max_n.max(32)).filter(|&q| is_prime_power(q)).collect();
    for &q in &prime_powers {
        for class in proj_classes(q, &all_sections(q)) {
            if class.order() > 1 && class.members.len() != 1 {
                failures.push(Failure::bare(
                    q,
                    format!("class {:?} is not a singleton", class.members),
                ));
            }
        }
    }
    Ok((paths + prime_powers.len(), failures, Vec::new()))
}

fn burnside(max_n: u32, cfg: &VerifyConfig) -> Result<Outcome> {
    let primes: Vec<u32> = (3..=max_n).filter(|&p| is_prime(p)).collect();
    let mut failures = Vec::new();
    for &p in &primes {
        let found: BTreeSet<Vec<Vec<u32>>> = enumerate_srings(p, &cfg.limits)?
            .iter()
            .map(SRing::class_vecs)
            .collect();
        let expected = divisors(p - 1).len();
        if found.len() != expected {
            failures.push(Failure::bare(
                p,
                format!("{} S-rings, expected {expected}", found.len()),
            ));
        }
        // orbit partitions of the unit subgroups, one per divisor of p-1
        let g = units(p);
        let generator = g
            .elements()
            .iter()
            .copied()
            .find(|&x| (1..p - 1).all(|e| pow_mod(x, e, p) != 1))
            .unwrap();
        let orbits: BTreeSet<Vec<Vec<u32>>> = divisors(p - 1)
            .into_iter()
            .map(|d| SRing::cyclotomic(p, &[pow_mod(generator, (p - 1) / d, p)]).class_vecs())
            .collect();
        if orbits != found {
            failures.push(Failure::bare(
                p,
                "enumeration differs from the orbit construction",
            ));
        }
    }
    Ok((primes.len(), failures, Vec::new()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_runs_pass() {
        let cfg = VerifyConfig::default();
        for s in Suite::ALL {
            let r = run(s, 8, &cfg).unwrap();
            assert!(r.passed(), "{s}: {:?}", r.failures);
        }
        let r = run(Suite::Axioms, 1, &cfg).unwrap();
        assert_eq!(r.checked, 1);
    }

    #[test]
    fn closed_form_examples() {
        let s = Section::new(12, 1, 4).unwrap();
        let t = Section::new(12, 3, 12).unwrap();
        assert!(equivalent_closed_form(&s, &t));
        assert_eq!(f_unit_closed_form(&s, &t), 3);
        let u = Section::new(12, 2, 4).unwrap();
        assert!(!equivalent_closed_form(
            &Section::new(12, 1, 2).unwrap(),
            &u
        ));
    }
}
