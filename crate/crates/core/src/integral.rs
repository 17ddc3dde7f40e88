//! The invariant integral on finite functions `sum c_ab z^a f0 (z^*)^b`,
//! realized as the q-trace `ν(f) = tr(T_F(f) q^-H)` normalized by `ν(f0) = 1`.

use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::fock;
use crate::linalg;
use crate::linear::LinComb;
use crate::modalg::{ExtKey, ExtendedElement, ExtendedFinite, ModuleAlgebra, UqModule};
use crate::report::{CheckMode, CheckReport};
use crate::scalars::{q, Scalar, SqrtMode};
use crate::uqsl2::{self, UqGen};

/// `sum c_ab z^a f0 (z^*)^b`, keyed by `(a, b)`.
pub type FiniteFunction = LinComb<(u32, u32)>;

pub fn to_extended(f: &FiniteFunction) -> ExtendedElement {
    f.iter().map(|((a, b), c)| (ExtKey::Fin(*a, *b), c.clone())).collect()
}

/// The finite-function part; `None` if a polynomial term is present.
pub fn from_extended(f: &ExtendedElement) -> Option<FiniteFunction> {
    let mut out = FiniteFunction::zero();
    for (k, c) in f {
        match k {
            ExtKey::Fin(a, b) => out.add_term((*a, *b), c.clone()),
            ExtKey::Pol(..) => return None,
        }
    }
    Some(out)
}

pub fn star_ff(f: &FiniteFunction) -> FiniteFunction {
    f.iter().map(|((a, b), c)| ((*b, *a), crate::ncpoly::conjugate(c))).collect()
}

pub fn multiply_ff(ext: &ExtendedFinite, f: &FiniteFunction, g: &FiniteFunction) -> FiniteFunction {
    from_extended(&ext.mul(&to_extended(f), &to_extended(g))).expect("finite functions form an ideal")
}

fn max_index(f: &FiniteFunction) -> usize {
    f.keys().map(|(a, b)| (*a).max(*b) as usize).max().unwrap_or(0)
}

/// `tr(T q^-H)` for a Fock matrix, `q^-H E_n = q^(-2n) E_n`.
pub fn q_trace(m: &fock::FockMatrix) -> Scalar {
    (0..m.dim()).fold(Scalar::zero(), |acc, n| acc + m.get(n, n) * &q(-2 * n as i64))
}

/// `ν(f) = tr(T_F(f) q^-H)`.
pub fn integrate(f: &FiniteFunction) -> Scalar {
    if f.is_zero() {
        return Scalar::zero();
    }
    let n = max_index(f) + 1;
    let m = fock::represent(&to_extended(f), n).expect("truncation covers every index");
    q_trace(&m)
}

/// `ν(z^a f0 (z^*)^b) = δ_ab q^(-2a) g_a`.
pub fn closed_form(a: u32, b: u32) -> Scalar {
    if a != b {
        return Scalar::zero();
    }
    fock::norm_weight(a as usize) * q(-2 * i64::from(a))
}

fn fin_basis(bound: usize) -> Vec<(u32, u32)> {
    let d = bound as u32;
    (0..=d).flat_map(|a| (0..=d).map(move |b| (a, b))).collect()
}

/// `ν(ξ f) = ε(ξ) ν(f)` for every generator and `z^a f0 (z^*)^b`, `a, b <= bound`.
pub fn invariance_check(degree_bound: usize) -> CheckReport {
    let ext = ExtendedFinite::new();
    let mut report = CheckReport::new(
        format!("integral/invariance d={degree_bound}"),
        "ν(ξf) = ε(ξ)ν(f)",
        CheckMode::Exact,
    );
    let outcomes: Vec<Option<String>> = fin_basis(degree_bound)
        .par_iter()
        .flat_map_iter(|&(a, b)| {
            let f = FiniteFunction::basis((a, b));
            let nu_f = integrate(&f);
            let ext = &ext;
            UqGen::ALL.into_iter().map(move |g| {
                let image = ext.act_gen_elem(g, &to_extended(&f));
                let Some(image) = from_extended(&image) else {
                    return Some(format!("{g} z^{a} f0 z*^{b} left the finite functions"));
                };
                let lhs = integrate(&image);
                let rhs = uqsl2::counit(&g.element()) * &nu_f;
                (lhs != rhs).then(|| format!("{g} on z^{a} f0 z*^{b}: {lhs} vs {rhs}"))
            })
        })
        .collect();
    report.absorb(outcomes);
    report
}

#[derive(Debug, Clone, Serialize)]
pub struct UniquenessResult {
    pub degree_bound: usize,
    pub unknowns: usize,
    pub equations: usize,
    pub dimension: usize,
    /// Solutions normalized at `f0` when possible, as `((a, b), value)` lists.
    pub basis: Vec<Vec<((u32, u32), Scalar)>>,
}

/// Solve for all functionals on `span{z^a f0 (z^*)^b : a, b <= D}` with
/// `ν(ξ f) = ε(ξ) ν(f)` whenever `ξ f` stays inside the span.
pub fn uniqueness_solve(degree_bound: usize) -> UniquenessResult {
    let ext = ExtendedFinite::new();
    let keys = fin_basis(degree_bound);
    let index = |k: &(u32, u32)| keys.iter().position(|x| x == k);
    let rows: Vec<Vec<Scalar>> = keys
        .par_iter()
        .flat_map_iter(|&k| {
            let ext = &ext;
            let keys = &keys;
            UqGen::ALL.into_iter().filter_map(move |g| {
                let image = from_extended(&ext.act_gen_elem(g, &to_extended(&FiniteFunction::basis(k))))?;
                let mut row = vec![Scalar::zero(); keys.len()];
                for (key, c) in &image {
                    let i = keys.iter().position(|x| x == key)?;
                    row[i] += c;
                }
                let i = keys.iter().position(|x| *x == k).unwrap();
                row[i] -= uqsl2::counit(&g.element());
                row.iter().any(|c| !c.is_zero()).then_some(row)
            })
        })
        .collect();
    let equations = rows.len();
    let null = linalg::nullspace(&rows, keys.len());
    let f0 = index(&(0, 0)).unwrap();
    let basis = null
        .into_iter()
        .map(|v| {
            let scale = v[f0].inv().unwrap_or_else(|_| Scalar::one());
            keys.iter()
                .zip(v)
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (*k, c * &scale))
                .collect()
        })
        .collect::<Vec<Vec<_>>>();
    UniquenessResult {
        degree_bound,
        unknowns: keys.len(),
        equations,
        dimension: basis.len(),
        basis,
    }
}

pub fn uniqueness_check(bounds: &[usize]) -> CheckReport {
    let mut report = CheckReport::new(
        "integral/uniqueness",
        "invariant functionals on truncated finite functions form a line through the q-trace",
        CheckMode::Exact,
    );
    report.note("constraints imposed for every basis f whose images ξf stay inside the span");
    for &d in bounds {
        let r = uniqueness_solve(d);
        report.note(format!("bound {d}: {} unknowns, {} equations, dimension {}", r.unknowns, r.equations, r.dimension));
        report.record(r.dimension == 1, || format!("bound {d}: dimension {}", r.dimension));
        if let Some(sol) = r.basis.first() {
            let fin = fin_basis(d);
            for (a, b) in fin {
                let value = sol.iter().find(|(k, _)| *k == (a, b)).map(|(_, c)| c.clone()).unwrap_or_default();
                let expected = integrate(&FiniteFunction::basis((a, b)));
                report.record(value == expected, || format!("bound {d}: ν({a},{b}) = {value}, q-trace gives {expected}"));
            }
        }
    }
    report
}

/// Gram matrix `G[(a,b),(c,d)] = ν((z^c f0 z*^d)^* (z^a f0 z*^b))`.
pub fn gram_matrix(degree_bound: usize) -> (Vec<(u32, u32)>, Vec<Vec<Scalar>>) {
    let ext = ExtendedFinite::new();
    let keys = fin_basis(degree_bound);
    let g = keys
        .iter()
        .map(|&x| {
            keys.iter()
                .map(|&y| {
                    let prod = multiply_ff(&ext, &star_ff(&FiniteFunction::basis(y)), &FiniteFunction::basis(x));
                    integrate(&prod)
                })
                .collect()
        })
        .collect();
    (keys, g)
}

pub fn positivity_check(degree_bound: usize, q0: &BigRational) -> CheckReport {
    let mut report = CheckReport::new(
        format!("integral/positivity d={degree_bound} q0={q0}"),
        "ν(f*f) > 0 for f ≠ 0 (Gram matrix positive definite)",
        CheckMode::Exact,
    );
    let (_, g) = gram_matrix(degree_bound);
    let mut numeric = Vec::with_capacity(g.len());
    for row in &g {
        let mut r = Vec::with_capacity(row.len());
        for c in row {
            match c.eval_numeric(q0, SqrtMode::ExactSquare) {
                Ok(v) => r.push(v),
                Err(e) => {
                    report.fail(e.to_string());
                    return report;
                }
            }
        }
        numeric.push(r);
    }
    let symmetric = (0..g.len()).all(|i| (0..g.len()).all(|j| numeric[i][j] == numeric[j][i]));
    report.record(symmetric, || "Gram matrix is not symmetric".into());
    let pd = linalg::positive_definite(&numeric);
    report.record(pd.is_ok(), || format!("nonpositive pivot {:?}", pd.clone().err()));
    report
}

/// `ν(fg) = tr(T(f) T(g) q^-H)` through the Fock matrices.
pub fn trace_consistency_check(degree_bound: usize) -> CheckReport {
    let ext = ExtendedFinite::new();
    let mut report = CheckReport::new(
        format!("integral/q_trace d={degree_bound}"),
        "ν(fg) = tr(T(f)T(g)q^{-H}), ν(z^a f0 z*^b) = δ_ab q^{-2a} g_a",
        CheckMode::Exact,
    );
    let keys = fin_basis(degree_bound);
    let n = degree_bound + 1;
    for &x in &keys {
        let fx = FiniteFunction::basis(x);
        report.record(integrate(&fx) == closed_form(x.0, x.1), || format!("closed form at {x:?}"));
        let tx = fock::represent(&to_extended(&fx), n).unwrap();
        for &y in &keys {
            let fy = FiniteFunction::basis(y);
            let ty = fock::represent(&to_extended(&fy), n).unwrap();
            let lhs = integrate(&multiply_ff(&ext, &fx, &fy));
            let rhs = q_trace(&tx.mul(&ty));
            report.record(lhs == rhs, || format!("{x:?}·{y:?}: {lhs} vs {rhs}"));
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::int;

    fn ff(a: u32, b: u32) -> FiniteFunction {
        FiniteFunction::basis((a, b))
    }

    #[test]
    fn products() {
        let ext = ExtendedFinite::new();
        assert_eq!(multiply_ff(&ext, &ff(0, 0), &ff(0, 0)), ff(0, 0));
        assert_eq!(multiply_ff(&ext, &ff(1, 0), &ff(0, 1)), ff(1, 1));
        assert_eq!(multiply_ff(&ext, &ff(0, 1), &ff(1, 0)), ff(0, 0).scale(&(int(1) - q(2))));
    }

    #[test]
    fn integral_values() {
        assert_eq!(integrate(&ff(0, 0)), Scalar::one());
        assert_eq!(integrate(&ff(1, 1)), (int(1) - q(2)) * q(-2));
        assert!(integrate(&ff(2, 1)).is_zero());
        for a in 0..5 {
            // ν(a+1) = q^-2 (1 - q^(2(a+1))) ν(a)
            let next = integrate(&ff(a + 1, a + 1));
            let rec = q(-2) * (int(1) - q(2 * i64::from(a + 1))) * integrate(&ff(a, a));
            assert_eq!(next, rec);
        }
    }

    #[test]
    fn invariance_examples() {
        let ext = ExtendedFinite::new();
        let e_f0 = from_extended(&ext.act_gen_elem(UqGen::E, &to_extended(&ff(0, 0)))).unwrap();
        assert!(integrate(&e_f0).is_zero());
        let f_zf0z = from_extended(&ext.act_gen_elem(UqGen::F, &to_extended(&ff(1, 1)))).unwrap();
        assert!(integrate(&f_zf0z).is_zero());
        assert!(invariance_check(3).passed());
    }

    #[test]
    fn uniqueness_small() {
        let r = uniqueness_solve(2);
        assert_eq!(r.dimension, 1);
        for ((a, b), v) in &r.basis[0] {
            assert_eq!(a, b);
            assert_eq!(v, &closed_form(*a, *b));
        }
    }

    #[test]
    fn positivity_small() {
        let r = positivity_check(2, &BigRational::new(1.into(), 4.into()));
        assert!(r.passed(), "{:?}", r.failures);
        let (_, g) = gram_matrix(0);
        assert_eq!(g, vec![vec![Scalar::one()]]);
    }

    #[test]
    fn trace_consistency_small() {
        let r = trace_consistency_check(2);
        assert!(r.passed(), "{:?}", r.failures);
    }
}
