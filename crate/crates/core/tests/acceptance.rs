//! Acceptance run: one line per criterion, non-zero exit if any fails.

use std::process::ExitCode;
use std::time::Instant;

use sring::multiplier::is_separable;
use sring::oracle::{enumerate_srings, OracleLimits};
use sring::verify::{run, Suite, SuiteReport, VerifyConfig};

struct Criterion {
    id: u32,
    title: &'static str,
    suite: Suite,
    max_n: u32,
}

const CRITERIA: [Criterion; 9] = [
    Criterion {
        id: 1,
        title: "axioms, closure idempotence, restrictions (n <= 24)",
        suite: Suite::Axioms,
        max_n: 24,
    },
    Criterion {
        id: 2,
        title: "criterion equals brute-force oracle (n <= 20)",
        suite: Suite::Oracle,
        max_n: 20,
    },
    Criterion {
        id: 3,
        title: "similarities biject with outer multipliers, quasidense (n <= 24)",
        suite: Suite::PhiIso,
        max_n: 24,
    },
    Criterion {
        id: 4,
        title: "cyclic p-groups separable, oracle concurs up to 16 (p^k <= 32)",
        suite: Suite::Pgroups,
        max_n: 32,
    },
    Criterion {
        id: 5,
        title: "dual S-ring: involution, rank, separability, frs0, stabilizers (n <= 24)",
        suite: Suite::Duality,
        max_n: 24,
    },
    Criterion {
        id: 6,
        title: "phi_infty equals similarities induced from the coset closure (n <= 12)",
        suite: Suite::CosetClosure,
        max_n: 12,
    },
    Criterion {
        id: 7,
        title: "reduction raises rank, reaches quasidense, keeps separability (n <= 36)",
        suite: Suite::Reduction,
        max_n: 36,
    },
    Criterion {
        id: 8,
        title: "f_unit path independence (12, 24, 30, 36), singleton classes (p^k <= 32)",
        suite: Suite::Projective,
        max_n: 36,
    },
    Criterion {
        id: 9,
        title: "S-rings over Z_p number d(p-1) (p <= 13)",
        suite: Suite::Burnside,
        max_n: 13,
    },
];

fn line(c: &Criterion, report: &Result<SuiteReport, sring::Error>, secs: f64) -> bool {
    match report {
        Ok(r) if r.passed() => {
            println!(
                "PASS [{}] {} ({} checked, {secs:.2}s)",
                c.id, c.title, r.checked
            );
            true
        }
        Ok(r) => {
            println!(
                "FAIL [{}] {} ({} failures of {} checked)",
                c.id,
                c.title,
                r.failures.len(),
                r.checked
            );
            for f in r.failures.iter().take(10) {
                println!("       n={} {:?}: {}", f.n, f.classes, f.reason);
            }
            false
        }
        Err(e) => {
            println!("FAIL [{}] {} (error: {e})", c.id, c.title);
            false
        }
    }
}

fn main() -> ExitCode {
    let cfg = VerifyConfig::default();
    let mut ok = true;
    for c in &CRITERIA {
        let t = Instant::now();
        let report = run(c.suite, c.max_n, &cfg);
        ok &= line(c, &report, t.elapsed().as_secs_f64());
        if let Ok(r) = &report {
            for note in &r.notes {
                println!("       note: {note}");
            }
        }
    }

    // informational: non-separable S-rings by the criterion, up to the enumeration bound
    let limits = OracleLimits::default();
    let mut witnesses = Vec::new();
    let mut total = 0;
    for n in 1..=limits.enumerate {
        for a in enumerate_srings(n, &limits).expect("within bound") {
            total += 1;
            if !is_separable(&a).expect("criterion runs").separable {
                witnesses.push(a);
            }
        }
    }
    println!(
        "INFO non-separable S-rings among {total} over Z_n, n <= {}: {}",
        limits.enumerate,
        witnesses.len()
    );
    for a in &witnesses {
        println!("       {a:?}");
    }

    if ok {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: FAILED");
        ExitCode::FAILURE
    }
}
