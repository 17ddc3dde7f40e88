//! The verification suites behind `verify`, one per module, with a stable JSON report.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::flag::{self, Localized, QuantumSL2};
use crate::fock;
use crate::integral;
use crate::modalg::{self, AntiHolo, ExtendedFinite, HoloPoly, LaurentPoly, ModuleAlgebra, PolCq};
use crate::ncpoly::{self, NCExpr, Presentation, Word};
use crate::report::{CheckMode, CheckReport};
use crate::rmatrix;
use crate::rootdata;
use crate::scalars::{IntPoly, Scalar};
use crate::uqsl2;

pub const SCHEMA_VERSION: &str = "qdisc-verify/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Scalars,
    Ncpoly,
    Uqsl2,
    Modalg,
    Rmatrix,
    Fock,
    Integral,
    Flag,
    Rootdata,
    Verma,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Scalars,
        Suite::Ncpoly,
        Suite::Uqsl2,
        Suite::Modalg,
        Suite::Rmatrix,
        Suite::Fock,
        Suite::Integral,
        Suite::Flag,
        Suite::Rootdata,
        Suite::Verma,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Scalars => "scalars",
            Suite::Ncpoly => "ncpoly",
            Suite::Uqsl2 => "uqsl2",
            Suite::Modalg => "modalg",
            Suite::Rmatrix => "rmatrix",
            Suite::Fock => "fock",
            Suite::Integral => "integral",
            Suite::Flag => "flag",
            Suite::Rootdata => "rootdata",
            Suite::Verma => "verma",
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

/// Expand a selector list; `all` selects every suite. Empty selections are rejected.
pub fn select(selectors: &[String]) -> Result<Vec<Suite>, String> {
    if selectors.is_empty() {
        return Err("no suite selected".into());
    }
    let mut out = Vec::new();
    for s in selectors {
        if s == "all" {
            out.extend(Suite::ALL);
        } else {
            out.push(s.parse()?);
        }
    }
    let mut seen = Vec::new();
    out.retain(|s| {
        let fresh = !seen.contains(s);
        seen.push(*s);
        fresh
    });
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyOptions {
    pub degree: usize,
    pub truncation: usize,
    #[serde(serialize_with = "ser_rational")]
    pub q0: BigRational,
    pub seed: u64,
}

fn ser_rational<S: serde::Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            degree: 4,
            truncation: 32,
            q0: BigRational::new(1.into(), 4.into()),
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<CheckReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub schema_version: &'static str,
    pub options: VerifyOptions,
    pub suites: Vec<SuiteReport>,
    pub checks: usize,
    pub failed_checks: usize,
    pub passed: bool,
}

impl VerifyReport {
    pub fn all_checks(&self) -> impl Iterator<Item = &CheckReport> {
        self.suites.iter().flat_map(|s| s.checks.iter())
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.suites {
            out.push_str(&format!("[{}]\n", s.suite.name()));
            for c in &s.checks {
                out.push_str(&format!("  {}\n", c.summary_line()));
                for w in &c.failures {
                    out.push_str(&format!("      witness: {w}\n"));
                }
                for n in &c.notes {
                    out.push_str(&format!("      note: {n}\n"));
                }
            }
        }
        out.push_str(&format!(
            "{} checks, {} failed: {}\n",
            self.checks,
            self.failed_checks,
            if self.passed { "PASS" } else { "FAIL" }
        ));
        out
    }
}

/// Run the selected suites in parallel; the report keeps the selection order.
pub fn run_verify(suites: &[Suite], opts: &VerifyOptions) -> VerifyReport {
    let reports: Vec<SuiteReport> = suites
        .par_iter()
        .map(|&s| SuiteReport {
            suite: s,
            checks: run_suite(s, opts),
        })
        .collect();
    let checks = reports.iter().map(|r| r.checks.len()).sum();
    let failed_checks = reports.iter().flat_map(|r| &r.checks).filter(|c| !c.passed()).count();
    VerifyReport {
        schema_version: SCHEMA_VERSION,
        options: opts.clone(),
        suites: reports,
        checks,
        failed_checks,
        passed: failed_checks == 0,
    }
}

pub fn run_suite(s: Suite, o: &VerifyOptions) -> Vec<CheckReport> {
    match s {
        Suite::Scalars => vec![field_check(200, o.seed), evaluation_check(100, o.seed)],
        Suite::Ncpoly => {
            let disc = ncpoly::pol_c_q();
            let sl2 = flag::qsl2_presentation();
            vec![
                confluence_check(&disc, 6),
                confluence_check(&sl2, 6),
                rewriting_check(&disc, o.degree, o.seed),
                rewriting_check(&sl2, o.degree.min(3), o.seed),
            ]
        }
        Suite::Uqsl2 => vec![uqsl2::hopf_check(o.degree.min(3) as u32)],
        Suite::Modalg => {
            let pol = PolCq::new();
            let ext = ExtendedFinite::new();
            let d = o.degree;
            vec![
                modalg::module_algebra_check(&HoloPoly, "C[z]", 2 * d),
                modalg::module_algebra_check(&LaurentPoly, "C[z,z^-1]", 2 * d),
                modalg::module_algebra_check(&AntiHolo::new(), "C[z*]", 2 * d),
                modalg::module_algebra_check(&pol, "Pol(C)_q", d),
                modalg::module_algebra_check(&ext, "ExtendedFinite", d),
                modalg::star_compat_check(&pol, "Pol(C)_q", d),
                modalg::star_compat_check(&ext, "ExtendedFinite", d),
                modalg::representation_check(&pol, "Pol(C)_q", d),
                modalg::representation_check(&ext, "ExtendedFinite", d),
                modalg::relation_ideal_check(&pol, 6),
                modalg::weight_check(d),
                modalg::z_low_check(),
                modalg::vacuum_projection_check(d),
            ]
        }
        Suite::Rmatrix => vec![rmatrix_check()],
        Suite::Fock => {
            let n = o.truncation;
            let points = vec![o.q0.clone()];
            vec![
                fock::relation_kernel_check(&[8, n]),
                fock::orthonormal_check(n, &points, 1e-12),
                fock::vacuum_check(n),
                fock::faithfulness_check(3, 8),
                fock::irreducibility_check(12, &o.q0),
                fock::adjointness_check(n),
                fock::multiplicativity_check(o.degree.min(3), 8),
                fock::norm_positivity_check(n, &points),
            ]
        }
        Suite::Integral => {
            let bounds: Vec<usize> = (2..=o.degree.max(2)).step_by(2).collect();
            vec![
                integral::invariance_check(o.degree),
                integral::uniqueness_check(&bounds),
                integral::positivity_check(o.degree.min(4), &o.q0),
                integral::trace_consistency_check(o.degree.min(4)),
            ]
        }
        Suite::Flag => {
            let sl2 = QuantumSL2::new();
            vec![
                flag::highest_weight_check(&sl2),
                flag::quasi_commutation_check(&sl2),
                flag::spherical_dimension_check(&sl2, 8),
                flag::ore_check(&sl2, 50, o.seed),
                flag::localization_check(),
                flag::omega_check(o.degree),
                flag::embedding_check(&sl2, o.degree.min(3)),
                flag::grading_check(&sl2, 30, o.seed),
                flag::laurent_action_match(6).report,
                modalg::module_algebra_check(&sl2, "C[SL2]_q", o.degree),
                modalg::module_algebra_check(&Localized, "localized", o.degree),
            ]
        }
        Suite::Rootdata => vec![rootdata::rootdata_check(8)],
        Suite::Verma => vec![verma_check(o.truncation.min(8))],
    }
}

// --- checks that live with the runner ----------------------------------------------

fn random_poly(rng: &mut ChaCha8Rng, max_degree: usize) -> IntPoly {
    let d = rng.gen_range(0..=max_degree);
    IntPoly::from_i64s(&(0..=d).map(|_| rng.gen_range(-4..=4)).collect::<Vec<_>>())
}

/// A random element of `Q(q^(1/2))`, possibly zero.
pub fn random_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    let num = random_poly(rng, 4);
    let mut den = random_poly(rng, 3);
    if den.is_zero() {
        den = IntPoly::one();
    }
    let shift = rng.gen_range(-3..=3);
    Scalar::from_parts(num, den).expect("nonzero denominator") * Scalar::s_pow(shift)
}

pub fn field_check(samples: usize, seed: u64) -> CheckReport {
    let mut report = CheckReport::new(
        format!("scalars/field n={samples}"),
        "Q(q^(1/2)) field axioms",
        CheckMode::Exact,
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let (a, b, c) = (random_scalar(&mut rng), random_scalar(&mut rng), random_scalar(&mut rng));
        report.record(&a + &b == &b + &a, || format!("a + b, a = {a}, b = {b}"));
        report.record(&a * &b == &b * &a, || format!("a b, a = {a}, b = {b}"));
        report.record((&a * &b) * &c == &a * &(&b * &c), || format!("(ab)c, a = {a}"));
        report.record(&a * &(&b + &c) == &a * &b + &a * &c, || format!("distributivity, a = {a}"));
        report.record((&a + &(-a.clone())).is_zero(), || format!("a + (-a), a = {a}"));
        if !a.is_zero() {
            report.record(&a * &a.inv().unwrap() == Scalar::one(), || format!("a a^-1, a = {a}"));
        }
    }
    report
}

/// Evaluation at `q^(1/2) = s0` is a ring homomorphism where defined.
pub fn evaluation_check(samples: usize, seed: u64) -> CheckReport {
    let mut report = CheckReport::new(
        format!("scalars/evaluation n={samples}"),
        "ev(a + b) = ev a + ev b, ev(ab) = ev a · ev b",
        CheckMode::Exact,
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    for _ in 0..samples {
        let a = random_scalar(&mut rng);
        let b = random_scalar(&mut rng);
        let s0 = BigRational::new(BigInt::from(rng.gen_range(1..=9)), BigInt::from(rng.gen_range(2..=11)));
        let ev = |x: &Scalar| x.eval_at_s(&s0);
        if let (Ok(ea), Ok(eb), Ok(es), Ok(ep)) = (ev(&a), ev(&b), ev(&(&a + &b)), ev(&(&a * &b))) {
            report.record(es == &ea + &eb, || format!("sum at s = {s0}: {a}, {b}"));
            report.record(ep == &ea * &eb, || format!("product at s = {s0}: {a}, {b}"));
        }
    }
    report
}

pub fn confluence_check(p: &Presentation, degree_bound: usize) -> CheckReport {
    let mut report = CheckReport::new(
        format!("ncpoly/confluence {} d={degree_bound}", p.name),
        "every overlap and inclusion ambiguity resolves",
        CheckMode::Exact,
    );
    match p.check_local_confluence(degree_bound) {
        Ok(r) => {
            report.note(format!("{} ambiguities", r.ambiguities.len()));
            for a in &r.ambiguities {
                report.record(a.resolved, || {
                    format!("{}: {} vs {}", a.word, a.first_reduction, a.second_reduction)
                });
            }
        }
        Err(e) => report.fail(e.to_string()),
    }
    report
}

/// Normal forms are idempotent, linear, and give an associative product.
pub fn rewriting_check(p: &Presentation, max_len: usize, seed: u64) -> CheckReport {
    let mut report = CheckReport::new(
        format!("ncpoly/rewriting {} len≤{max_len}", p.name),
        "nf∘nf = nf; nf linear; (ab)c = a(bc) on normal words",
        CheckMode::Exact,
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n_gens = p.alphabet().len();
    let random_word = |rng: &mut ChaCha8Rng| -> Word {
        let len = rng.gen_range(0..=max_len);
        Word((0..len).map(|_| rng.gen_range(0..n_gens) as ncpoly::GenId).collect())
    };
    for _ in 0..60 {
        let (w1, w2) = (random_word(&mut rng), random_word(&mut rng));
        let c = random_scalar(&mut rng);
        let (e1, e2) = (NCExpr::basis(w1.clone()), NCExpr::basis(w2.clone()));
        let (Ok(n1), Ok(n2)) = (p.normal_form(&e1), p.normal_form(&e2)) else {
            report.fail(format!("rewriting failed on {w1:?} or {w2:?}"));
            continue;
        };
        report.record(p.normal_form(&n1).as_ref() == Ok(&n1), || format!("idempotence on {w1:?}"));
        let lin = p.normal_form(&e1.add(&e2.scale(&c)));
        report.record(lin == Ok(n1.add(&n2.scale(&c))), || format!("linearity on {w1:?}, {w2:?}"));
        report.record(n1.keys().all(|w| p.is_normal_word(w)), || format!("normal words of {w1:?}"));
    }
    let words: Vec<NCExpr> = (0..=2).flat_map(|n| p.normal_words(n)).map(NCExpr::basis).collect();
    for a in &words {
        for b in &words {
            for c in &words {
                let l = p.mul(a, b).and_then(|ab| p.mul(&ab, c));
                let r = p.mul(b, c).and_then(|bc| p.mul(a, &bc));
                report.record(l == r, || format!("associativity {a:?} {b:?} {c:?}"));
            }
        }
    }
    report
}

pub fn rmatrix_check() -> CheckReport {
    let mut report = CheckReport::new(
        "rmatrix/derivation",
        "m∘Ř(z*⊗z) = q²zz* + (1−q²) reproduces the presentation of Pol(C)_q",
        CheckMode::Exact,
    );
    let t = rmatrix::WeightTensor::basis((1, 1));
    let mut expected = rmatrix::SwappedTensor::term((1, 1), crate::scalars::q(2));
    expected.add_term((0, 0), rmatrix::relation_constant());
    match rmatrix::braiding(&t) {
        Ok(b) => report.record(b == expected, || format!("Ř(z*⊗z) = {b:?}")),
        Err(e) => report.fail(e.to_string()),
    }
    match rmatrix::derive_relations() {
        Ok(p) => report.record(p.rules() == ncpoly::pol_c_q().rules(), || "derived rules differ".into()),
        Err(e) => report.fail(e.to_string()),
    }
    let pol = PolCq::new();
    for x in [(0u32, 1u32), (1, 1), (2, 1), (3, 0)] {
        for y in [(1u32, 0u32), (1, 2), (0, 3)] {
            if x.1.min(y.0) > 1 {
                continue;
            }
            match rmatrix::braided_product(x, y) {
                Ok(p) => report.record(p == pol.mul_keys(&x, &y), || format!("braided product {x:?}·{y:?}")),
                Err(e) => report.fail(e.to_string()),
            }
        }
    }
    report
}

pub fn verma_check(truncation: usize) -> CheckReport {
    let mut report = CheckReport::new(
        format!("verma/duality N={truncation}"),
        "dual of Δ(F^n)(v0⊗v0) is the product of C[z] with its q-difference action",
        CheckMode::Exact,
    );
    let r = uqsl2::verma_duality_check(truncation);
    report.checked = r.structure_constants.len();
    for f in &r.failures {
        report.fail(f.clone());
    }
    if let Some(g1) = r.gamma.get(1) {
        report.note(format!("z = ({g1}) φ_1"));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selection() {
        assert!(select(&[]).is_err());
        assert_eq!(select(&["all".into()]).unwrap().len(), 10);
        assert_eq!(select(&["fock".into(), "fock".into()]).unwrap(), vec![Suite::Fock]);
        assert!(select(&["nope".into()]).is_err());
    }

    #[test]
    fn quick_suites_pass() {
        let o = VerifyOptions {
            degree: 2,
            truncation: 8,
            ..Default::default()
        };
        let r = run_verify(&[Suite::Scalars, Suite::Ncpoly, Suite::Rmatrix, Suite::Rootdata, Suite::Verma], &o);
        for c in r.all_checks() {
            assert!(c.passed(), "{}", c.summary_line());
        }
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["schema_version"], SCHEMA_VERSION);
        assert_eq!(json["options"]["q0"], "1/4");
    }
}
