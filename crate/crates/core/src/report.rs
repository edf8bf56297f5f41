//! A serializable summary of one S-ring.

use std::time::Instant;

use serde::Serialize;

use crate::error::Result;
use crate::multiplier::is_separable;
use crate::section::{
    frs0, is_quasidense, principal_sections, singular_witness, Section, SingularWitness,
};
use crate::sring::SRing;

/// Wall-clock microseconds per phase.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Timings {
    pub structure_us: u64,
    pub separability_us: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub n: u32,
    pub rank: usize,
    pub a_subgroups: Vec<u32>,
    pub sections: usize,
    pub principal_sections: Vec<Section>,
    pub frs0: Vec<Section>,
    pub quasidense: bool,
    pub singular: Option<SingularWitness>,
    /// sections at which the input was extended to reach a quasidense S-ring
    pub reduction_trace: Vec<Section>,
    pub mult_order: usize,
    pub fmult_order: usize,
    pub separable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

/// Builds the report; `timed` adds per-phase timings, which makes the
/// output vary between runs. Without it the clock is never read, so this
/// also runs where `Instant` is unavailable.
pub fn analyze(a: &SRing, timed: bool) -> Result<AnalysisReport> {
    let now = || timed.then(Instant::now);
    let t0 = now();
    let sections = a.sections().len();
    let principal = principal_sections(a);
    let frs = frs0(a);
    let quasidense = is_quasidense(a);
    let singular = singular_witness(a)?;
    let t1 = now();
    let sep = is_separable(a)?;
    let t2 = now();
    Ok(AnalysisReport {
        n: a.n(),
        rank: a.rank(),
        a_subgroups: a.a_subgroups(),
        sections,
        principal_sections: principal,
        frs0: frs,
        quasidense,
        singular,
        reduction_trace: sep.reduction_trace,
        mult_order: sep.mult_order,
        fmult_order: sep.fmult_order,
        separable: sep.separable,
        timings: match (t0, t1, t2) {
            (Some(t0), Some(t1), Some(t2)) => Some(Timings {
                structure_us: (t1 - t0).as_micros() as u64,
                separability_us: (t2 - t1).as_micros() as u64,
            }),
            _ => None,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_of_a8() {
        let a8 = SRing::validate(8, &[vec![0], vec![4], vec![2, 6], vec![1, 3, 5, 7]]).unwrap();
        let r = analyze(&a8, false).unwrap();
        assert_eq!(r.rank, 4);
        assert_eq!(r.a_subgroups, vec![1, 2, 4, 8]);
        assert!(r.separable);
        assert!(r.timings.is_none());
        assert_eq!(r.principal_sections.len(), 4);
    }

    #[test]
    fn report_of_r4_is_reduced() {
        let r4 = SRing::trivial(4);
        let r = analyze(&r4, true).unwrap();
        assert!(!r.quasidense);
        assert!(r.singular.is_some());
        assert!(!r.reduction_trace.is_empty());
        assert!(r.timings.is_some());
    }
}
