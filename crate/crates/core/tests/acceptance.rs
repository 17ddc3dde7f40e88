//! Acceptance criteria. Runs without the libtest harness so that the
//! PASS/FAIL lines are always printed; exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_rational::BigRational;

use qdisc::flag::{self, Localized, QuantumSL2, Spherical};
use qdisc::fock;
use qdisc::integral;
use qdisc::modalg::{self, ExtendedFinite, ModuleAlgebra, PolCq, UqModule};
use qdisc::ncpoly;
use qdisc::report::CheckReport;
use qdisc::rootdata;
use qdisc::scalars::q;
use qdisc::verify;
use qdisc::{LinComb, Scalar};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

struct Outcome {
    ok: bool,
    detail: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { ok: true, detail: Vec::new() }
    }

    fn check(&mut self, r: CheckReport) {
        if !r.passed() {
            self.ok = false;
            for w in &r.failures {
                self.detail.push(format!("{}: {w}", r.name));
            }
        }
        self.detail.extend(r.notes.iter().map(|n| format!("{}: {n}", r.name)));
    }

    fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.ok = false;
            self.detail.push(what.into());
        }
    }
}

fn c1() -> Outcome {
    let mut o = Outcome::new();
    o.check(verify::rmatrix_check());
    o
}

fn c2() -> Outcome {
    let mut o = Outcome::new();
    o.check(fock::relation_kernel_check(&[8, 32, 64]));
    o.check(fock::orthonormal_check(32, &[rat(1, 4), rat(1, 2), rat(9, 10)], 1e-12));
    o
}

fn c3() -> Outcome {
    let mut o = Outcome::new();
    o.check(fock::vacuum_check(32));
    o
}

fn c4() -> Outcome {
    let mut o = Outcome::new();
    match fock::monomial_rank(3, 8) {
        Ok(r) => o.require(r == 16, format!("rank {r}, expected 16")),
        Err(e) => o.require(false, e.to_string()),
    }
    for q0 in [rat(1, 2), rat(9, 10)] {
        match fock::commutant_dimension(12, &q0) {
            Ok(d) => o.require(d == 1, format!("commutant dimension {d} at q0 = {q0}")),
            Err(e) => o.require(false, e.to_string()),
        }
    }
    o
}

fn c5() -> Outcome {
    let mut o = Outcome::new();
    let sl2 = QuantumSL2::new();
    let ((a, b), (c, d)) = rayon::join(
        || {
            rayon::join(
                || modalg::module_algebra_check(&PolCq::new(), "Pol(C)_q", 4),
                || modalg::module_algebra_check(&ExtendedFinite::new(), "ExtendedFinite", 4),
            )
        },
        || {
            rayon::join(
                || modalg::module_algebra_check(&sl2, "C[SL2]_q", 4),
                || modalg::module_algebra_check(&Localized, "localized", 4),
            )
        },
    );
    for r in [a, b, c, d] {
        o.check(r);
    }
    o
}

fn c6() -> Outcome {
    let mut o = Outcome::new();
    o.check(integral::invariance_check(10));
    o.check(integral::uniqueness_check(&[2, 4, 6, 8]));
    o.check(integral::positivity_check(4, &rat(1, 4)));
    o.check(integral::positivity_check(4, &rat(9, 16)));
    o
}

fn c7() -> Outcome {
    let mut o = Outcome::new();
    let sl2 = QuantumSL2::new();
    let expected = [q(-2), Scalar::one(), q(2)];
    for (g, l) in Spherical::ALL.into_iter().zip(expected) {
        let got = flag::quasi_commute(&sl2, g);
        o.require(got.as_ref() == Some(&l), format!("λ_{} = {got:?}", g.name()));
    }
    let zz = Localized.mul(&flag::z_class(), &flag::z_prime_class());
    o.require(zz == LinComb::basis((0, 0)), format!("z z' = {}", Localized.format(&zz)));
    o.check(flag::spherical_dimension_check(&sl2, 8));
    let m = flag::laurent_action_match(6);
    o.require(m.scale.is_some(), "no single scalar relates the two actions");
    o.check(m.report);
    o
}

fn c8() -> Outcome {
    let mut o = Outcome::new();
    o.check(rootdata::rootdata_check(8));
    o
}

fn c9() -> Outcome {
    let mut o = Outcome::new();
    o.check(verify::verma_check(8));
    o
}

fn c10() -> Outcome {
    let mut o = Outcome::new();
    o.check(verify::confluence_check(&ncpoly::pol_c_q(), 6));
    o.check(verify::confluence_check(&flag::qsl2_presentation(), 6));
    o
}

type Criterion = (&'static str, &'static str, Option<Duration>, fn() -> Outcome);

fn main() -> ExitCode {
    // the libtest flags cargo may pass (e.g. --nocapture) are ignored
    let criteria: [Criterion; 10] = [
        ("1", "rmatrix braiding and derived relations", Some(Duration::from_secs(1)), c1),
        ("2", "fock relations at N = 8, 32, 64 and orthonormal entries to 1e-12", Some(Duration::from_secs(5)), c2),
        ("3", "fock vacuum kernel is one-dimensional for N = 1..32", None, c3),
        ("4", "fock rank 16 and commutant dimension 1", None, c4),
        ("5", "module-algebra axioms to degree 4 on four algebras", Some(Duration::from_secs(30)), c5),
        ("6", "integral invariance, uniqueness and Gram positivity", None, c6),
        ("7", "flag quasi-commutation, z z' = 1, spherical dimensions, Laurent match", None, c7),
        ("8", "rootdata tables and l0 sets up to rank 8", None, c8),
        ("9", "verma duality at truncation 8", None, c9),
        ("10", "confluence to degree 6 for Pol(C)_q and C[SL2]_q", None, c10),
    ];
    let mut failed = 0;
    for (id, what, budget, run) in criteria {
        let start = Instant::now();
        let mut outcome = run();
        let elapsed = start.elapsed();
        if let Some(b) = budget {
            outcome.require(elapsed <= b, format!("took {elapsed:.2?}, budget {b:?}"));
        }
        let tag = if outcome.ok { "PASS" } else { "FAIL" };
        println!("{tag} criterion {id:>2}: {what} ({elapsed:.2?})");
        if !outcome.ok {
            failed += 1;
            for d in &outcome.detail {
                println!("      {d}");
            }
        }
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
