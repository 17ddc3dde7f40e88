//! The Fock representation on the truncated weighted basis `E_0 .. E_N`.
//!
//! `z E_n = E_(n+1)`, `z^* E_n = (1 - q^(2n)) E_(n-1)`, `f0 E_n = δ_(n0) E_0`,
//! with `<E_m, E_n> = δ_mn g_n`, `g_n = prod_(k=1..n) (1 - q^(2k))`. Rescaling by
//! `sqrt(g_n)` gives the orthonormal picture
//! `z e_n = (1 - q^(2(n+1)))^(1/2) e_(n+1)`.
//!
//! `E_N` is sent past the truncation by `z`; a word that can raise the index by
//! `r` is exact only on columns `n <= N - r`.

use nalgebra::DMatrix;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;
use thiserror::Error;

use crate::linalg;
use crate::linear::LinComb;
use crate::modalg::{ExtKey, ExtendedElement};
use crate::ncpoly::{self, GenId, NCExpr, Word};
use crate::report::{CheckMode, CheckReport};
use crate::scalars::{int, q, Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FockError {
    #[error("truncation N = {given} is too small; this element needs N >= {required}")]
    TruncationTooSmall { required: usize, given: usize },
    #[error("generator id {0} has no Fock operator")]
    UnknownGenerator(GenId),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// `g_n = prod_(k=1..n) (1 - q^(2k))`.
pub fn norm_weight(n: usize) -> Scalar {
    (1..=n as i64).fold(Scalar::one(), |acc, k| acc * (int(1) - q(2 * k)))
}

#[derive(Debug, Clone)]
pub struct FockSpace {
    pub truncation: usize,
    weights: Vec<Scalar>,
}

impl FockSpace {
    pub fn new(truncation: usize) -> Self {
        let mut weights = vec![Scalar::one()];
        for k in 1..=truncation {
            let next = &weights[k - 1] * &(int(1) - q(2 * k as i64));
            weights.push(next);
        }
        FockSpace { truncation, weights }
    }

    pub fn weight(&self, n: usize) -> &Scalar {
        &self.weights[n]
    }

    /// `<E_m, E_n>`.
    pub fn inner(&self, m: usize, n: usize) -> Scalar {
        if m == n {
            self.weights[n].clone()
        } else {
            Scalar::zero()
        }
    }
}

/// One generator on `E_n`: the target index and coefficient, or `None` for zero.
fn apply_generator(truncation: usize, g: GenId, n: usize) -> Result<Option<(usize, Scalar)>, FockError> {
    Ok(match g {
        ncpoly::Z => (n < truncation).then(|| (n + 1, Scalar::one())),
        ncpoly::ZSTAR => (n > 0).then(|| (n - 1, int(1) - q(2 * n as i64))),
        ncpoly::F0 => (n == 0).then(|| (0, Scalar::one())),
        other => return Err(FockError::UnknownGenerator(other)),
    })
}

/// A word on `E_n`, rightmost letter first.
fn apply_word(truncation: usize, w: &Word, n: usize) -> Result<Option<(usize, Scalar)>, FockError> {
    let mut idx = n;
    let mut coeff = Scalar::one();
    for &g in w.0.iter().rev() {
        match apply_generator(truncation, g, idx)? {
            Some((i, c)) => {
                idx = i;
                coeff *= c;
            }
            None => return Ok(None),
        }
    }
    Ok(Some((idx, coeff)))
}

/// Largest amount by which a word can raise the basis index while it is applied.
pub fn raise(w: &Word) -> usize {
    let mut level: i64 = 0;
    let mut top: i64 = 0;
    for &g in w.0.iter().rev() {
        match g {
            ncpoly::Z => level += 1,
            ncpoly::ZSTAR => level -= 1,
            _ => {}
        }
        top = top.max(level);
    }
    top as usize
}

/// Exact matrix of an element on `E_0 .. E_N`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockMatrix {
    pub truncation: usize,
    /// Row-major `(N+1) x (N+1)` entries.
    pub entries: Vec<Vec<Scalar>>,
    /// Columns `>= boundary_start` may be affected by truncation.
    pub boundary_start: usize,
}

impl FockMatrix {
    pub fn zero(truncation: usize) -> Self {
        let n = truncation + 1;
        FockMatrix {
            truncation,
            entries: vec![vec![Scalar::zero(); n]; n],
            boundary_start: n,
        }
    }

    pub fn dim(&self) -> usize {
        self.truncation + 1
    }

    pub fn get(&self, row: usize, col: usize) -> &Scalar {
        &self.entries[row][col]
    }

    /// True when every column outside the boundary band is zero.
    pub fn is_zero_off_boundary(&self) -> bool {
        (0..self.boundary_start).all(|c| self.entries.iter().all(|row| row[c].is_zero()))
    }

    pub fn mul(&self, other: &FockMatrix) -> FockMatrix {
        let n = self.dim();
        let mut out = FockMatrix::zero(self.truncation);
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.entries[k][j];
                    if !b.is_zero() {
                        out.entries[i][j] += a * b;
                    }
                }
            }
        }
        out.boundary_start = self.boundary_start.min(other.boundary_start);
        out
    }

    /// Columns `0 .. boundary_start`, flattened column by column.
    pub fn valid_entries(&self, columns: usize) -> Vec<Scalar> {
        (0..columns).flat_map(|c| self.entries.iter().map(move |row| row[c].clone())).collect()
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.entries.iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect()
    }
}

impl Serialize for FockMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("FockMatrix", 3)?;
        st.serialize_field("truncation", &self.truncation)?;
        st.serialize_field("boundary_start", &self.boundary_start)?;
        st.serialize_field("entries", &self.to_strings())?;
        st.end()
    }
}

/// Matrix of an expression in `z`, `z^*`, `f0` (ids of [`ncpoly::finite_alphabet`]).
pub fn represent_expr(e: &NCExpr, truncation: usize) -> Result<FockMatrix, FockError> {
    let needed = e.keys().map(raise).max().unwrap_or(0);
    if needed > truncation {
        return Err(FockError::TruncationTooSmall {
            required: needed,
            given: truncation,
        });
    }
    let mut m = FockMatrix::zero(truncation);
    m.boundary_start = truncation + 1 - needed;
    for (w, c) in e {
        for col in 0..=truncation {
            if let Some((row, v)) = apply_word(truncation, w, col)? {
                m.entries[row][col] += c * &v;
            }
        }
    }
    Ok(m)
}

pub fn ext_key_word(k: &ExtKey) -> Word {
    let (a, b, f0) = match *k {
        ExtKey::Pol(a, b) => (a, b, false),
        ExtKey::Fin(a, b) => (a, b, true),
    };
    let mut v = vec![ncpoly::Z; a as usize];
    if f0 {
        v.push(ncpoly::F0);
    }
    v.extend(std::iter::repeat_n(ncpoly::ZSTAR, b as usize));
    Word(v)
}

pub fn ext_to_ncexpr(f: &ExtendedElement) -> NCExpr {
    f.iter().map(|(k, c)| (ext_key_word(k), c.clone())).collect()
}

/// Matrix of an element of `Pol(C)_q` extended by `f0`.
pub fn represent(f: &ExtendedElement, truncation: usize) -> Result<FockMatrix, FockError> {
    represent_expr(&ext_to_ncexpr(f), truncation)
}

pub fn represent_pol(f: &LinComb<(u32, u32)>, truncation: usize) -> Result<FockMatrix, FockError> {
    let e: ExtendedElement = f.iter().map(|((a, b), c)| (ExtKey::Pol(*a, *b), c.clone())).collect();
    represent(&e, truncation)
}

fn generator_matrix(g: GenId, truncation: usize) -> FockMatrix {
    represent_expr(&NCExpr::basis(Word(vec![g])), truncation).expect("generators fit any truncation")
}

/// `diag(sqrt g) M diag(sqrt g)^-1` evaluated at `q0`.
pub fn orthonormal_numeric(m: &FockMatrix, q0: &BigRational) -> Result<DMatrix<f64>, FockError> {
    let n = m.dim();
    // g_k as a float product; each factor is accurate, so the product is too
    let q2 = q0.to_f64().unwrap_or(f64::NAN).powi(2);
    let mut sqrt_g = Vec::with_capacity(n);
    let mut g = 1.0f64;
    for k in 0..n {
        if k > 0 {
            g *= 1.0 - q2.powi(k as i32);
        }
        sqrt_g.push(g.sqrt());
    }
    let mut out = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let v = &m.entries[i][j];
            if !v.is_zero() {
                out[(i, j)] = sqrt_g[i] * v.to_f64_at(q0)? / sqrt_g[j];
            }
        }
    }
    Ok(out)
}

/// `(1 - q0^(2n))^(1/2)`, the orthonormal matrix element `<e_n, z e_(n-1)>`.
pub fn orthonormal_coefficient(n: usize, q0: &BigRational) -> f64 {
    let q0f = q0.to_f64().unwrap_or(f64::NAN);
    (1.0 - q0f.powi(2 * n as i32)).sqrt()
}

/// Basis of `ker z^*` on `E_0 .. E_N`.
pub fn vacuum_vectors(truncation: usize) -> Vec<Vec<Scalar>> {
    let m = generator_matrix(ncpoly::ZSTAR, truncation);
    linalg::nullspace(&m.entries, truncation + 1)
}

/// Rank of the matrices of `z^a (z^*)^b`, `a, b <= degree_bound`, on the columns
/// where all of them are exact.
pub fn monomial_rank(degree_bound: usize, truncation: usize) -> Result<usize, FockError> {
    let columns = (truncation + 1).saturating_sub(degree_bound);
    let mut rows = Vec::new();
    for a in 0..=degree_bound {
        for b in 0..=degree_bound {
            let w = ncpoly::disc_monomial(a, b);
            let m = represent_expr(&NCExpr::basis(w), truncation)?;
            rows.push(m.valid_entries(columns));
        }
    }
    Ok(linalg::rank(&rows))
}

pub fn faithfulness_check(degree_bound: usize, truncation: usize) -> CheckReport {
    let mut report = CheckReport::new(
        format!("fock/faithfulness d={degree_bound} N={truncation}"),
        "z^a z*^b (a, b ≤ d) act by linearly independent operators",
        CheckMode::Exact,
    );
    let expected = (degree_bound + 1) * (degree_bound + 1);
    match monomial_rank(degree_bound, truncation) {
        Ok(r) => {
            report.note(format!("rank {r} of {expected}"));
            report.record(r == expected, || format!("rank {r}, expected {expected}"));
        }
        Err(e) => report.fail(e.to_string()),
    }
    report
}

/// Dimension of the commutant of the orthonormal `z`, `z^*` at `q0`.
pub fn commutant_dimension(truncation: usize, q0: &BigRational) -> Result<usize, FockError> {
    let a = orthonormal_numeric(&generator_matrix(ncpoly::Z, truncation), q0)?;
    let b = orthonormal_numeric(&generator_matrix(ncpoly::ZSTAR, truncation), q0)?;
    let n = truncation + 1;
    let id = DMatrix::<f64>::identity(n, n);
    // vec(XA - AX) = (A^T ⊗ I - I ⊗ A) vec(X)
    let ca = a.transpose().kronecker(&id) - id.kronecker(&a);
    let cb = b.transpose().kronecker(&id) - id.kronecker(&b);
    let mut system = DMatrix::<f64>::zeros(2 * n * n, n * n);
    system.view_mut((0, 0), (n * n, n * n)).copy_from(&ca);
    system.view_mut((n * n, 0), (n * n, n * n)).copy_from(&cb);
    let sv = system.singular_values();
    let top = sv.max();
    let tol = 1e-9 * top.max(1.0);
    Ok(sv.iter().filter(|s| **s <= tol).count())
}

pub fn irreducibility_check(truncation: usize, q0: &BigRational) -> CheckReport {
    let mut report = CheckReport::new(
        format!("fock/irreducibility N={truncation} q0={q0}"),
        "commutant of {z, z*} is the scalars",
        CheckMode::Numeric,
    );
    report.note("finite truncation of the infinite-dimensional statement; singular-value tolerance 1e-9");
    match commutant_dimension(truncation, q0) {
        Ok(d) => {
            report.note(format!("commutant dimension {d}"));
            report.record(d == 1, || format!("commutant dimension {d}"));
        }
        Err(e) => report.fail(e.to_string()),
    }
    report
}

/// `<z E_m, E_n> = <E_m, z^* E_n>` for all `m < N`, `n <= N`.
pub fn adjointness_check(truncation: usize) -> CheckReport {
    let mut report = CheckReport::new(
        format!("fock/adjointness N={truncation}"),
        "⟨z E_m, E_n⟩ = ⟨E_m, z* E_n⟩, ⟨E_m, E_n⟩ = δ_mn g_n",
        CheckMode::Exact,
    );
    let space = FockSpace::new(truncation);
    let z = generator_matrix(ncpoly::Z, truncation);
    let zs = generator_matrix(ncpoly::ZSTAR, truncation);
    for m in 0..truncation {
        for n in 0..=truncation {
            let lhs = (0..=truncation).fold(Scalar::zero(), |acc, k| acc + z.get(k, m) * &space.inner(k, n));
            let rhs = (0..=truncation).fold(Scalar::zero(), |acc, k| acc + zs.get(k, n) * &space.inner(m, k));
            report.record(lhs == rhs, || format!("m = {m}, n = {n}: {lhs} vs {rhs}"));
        }
    }
    report
}

/// The defining relations vanish off the boundary band.
pub fn relation_kernel_check(truncations: &[usize]) -> CheckReport {
    let mut report = CheckReport::new(
        "fock/relations",
        "z*z − q²zz* − (1−q²), f0² − f0, f0 z, z* f0, zy − q⁻²yz, z*y − q²yz* (y = 1 − zz*) vanish",
        CheckMode::Exact,
    );
    let alpha = ncpoly::finite_alphabet();
    let w = |names: &[&str]| alpha.expr(names).expect("known generators");
    let one = NCExpr::basis(Word::empty());
    let y = one.sub(&w(&["z", "z^*"]));
    let z = w(&["z"]);
    let zs = w(&["z^*"]);
    let relations: Vec<(&str, NCExpr)> = vec![
        (
            "disc",
            w(&["z^*", "z"]).sub(&w(&["z", "z^*"]).scale(&q(2))).sub(&one.scale(&(int(1) - q(2)))),
        ),
        ("f0 idempotent", w(&["f0", "f0"]).sub(&w(&["f0"]))),
        ("f0 z", w(&["f0", "z"])),
        ("z* f0", w(&["z^*", "f0"])),
        (
            "z y",
            ncpoly::free_mul(&z, &y).sub(&ncpoly::free_mul(&y, &z).scale(&q(-2))),
        ),
        (
            "z* y",
            ncpoly::free_mul(&zs, &y).sub(&ncpoly::free_mul(&y, &zs).scale(&q(2))),
        ),
    ];
    for &n in truncations {
        for (name, r) in &relations {
            match represent_expr(r, n) {
                Ok(m) => report.record(m.is_zero_off_boundary(), || format!("{name} at N = {n}")),
                Err(e) => report.fail(format!("{name} at N = {n}: {e}")),
            }
        }
    }
    report
}

/// `represent(fg) = represent(f) represent(g)` on normal monomials.
pub fn multiplicativity_check(degree_bound: usize, truncation: usize) -> CheckReport {
    use crate::modalg::{ExtendedFinite, ModuleAlgebra};
    let mut report = CheckReport::new(
        format!("fock/multiplicative d={degree_bound} N={truncation}"),
        "T(fg) = T(f)T(g)",
        CheckMode::Exact,
    );
    let ext = ExtendedFinite::new();
    let basis: Vec<ExtKey> = ext
        .basis(degree_bound)
        .into_iter()
        .filter(|k| match *k {
            ExtKey::Pol(a, b) | ExtKey::Fin(a, b) => (a + b) as usize <= degree_bound,
        })
        .collect();
    for f in &basis {
        for g in &basis {
            let fe = ExtendedElement::basis(*f);
            let ge = ExtendedElement::basis(*g);
            let prod = ext.mul(&fe, &ge);
            let (Ok(tf), Ok(tg), Ok(tfg)) = (
                represent(&fe, truncation),
                represent(&ge, truncation),
                represent(&prod, truncation),
            ) else {
                report.fail(format!("truncation too small for {f:?} {g:?}"));
                continue;
            };
            let rf = truncation + 1 - tf.boundary_start;
            let rg = truncation + 1 - tg.boundary_start;
            let rfg = truncation + 1 - tfg.boundary_start;
            let cols = (truncation + 1).saturating_sub(rf + rg).min(truncation + 1 - rfg);
            let tt = tf.mul(&tg);
            report.record(tt.valid_entries(cols) == tfg.valid_entries(cols), || format!("{f:?} · {g:?}"));
        }
    }
    report
}

/// `g_n > 0` at each sample point.
pub fn norm_positivity_check(truncation: usize, points: &[BigRational]) -> CheckReport {
    let mut report = CheckReport::new("fock/inner_product", "g_n = ∏(1 − q^{2k}) > 0 for 0 < q < 1", CheckMode::Exact);
    let space = FockSpace::new(truncation);
    for q0 in points {
        for n in 0..=truncation {
            let v = space.weight(n).eval_numeric(q0, crate::scalars::SqrtMode::ExactSquare);
            report.record(v.as_ref().is_ok_and(|v| v.is_positive()), || format!("g_{n} at q0 = {q0}: {v:?}"));
        }
    }
    report
}

/// Orthonormal entries `(n+1, n)` of `z` and `(n, n+1)` of `z^*` against `(1 - q0^(2(n+1)))^(1/2)`.
pub fn orthonormal_check(truncation: usize, points: &[BigRational], tol: f64) -> CheckReport {
    let mut report = CheckReport::new(
        format!("fock/orthonormal N={truncation}"),
        "T_F(z)e_n = (1−q^{2(n+1)})^{1/2} e_{n+1}, T_F(z*)e_n = (1−q^{2n})^{1/2} e_{n−1}",
        CheckMode::Numeric,
    );
    let z = generator_matrix(ncpoly::Z, truncation);
    let zs = generator_matrix(ncpoly::ZSTAR, truncation);
    for q0 in points {
        let (Ok(a), Ok(b)) = (orthonormal_numeric(&z, q0), orthonormal_numeric(&zs, q0)) else {
            report.fail(format!("evaluation failed at {q0}"));
            continue;
        };
        for i in 0..=truncation {
            for j in 0..=truncation {
                let ez = if i == j + 1 { orthonormal_coefficient(i, q0) } else { 0.0 };
                let ezs = if j == i + 1 { orthonormal_coefficient(j, q0) } else { 0.0 };
                report.record((a[(i, j)] - ez).abs() <= tol, || format!("z ({i},{j}) at {q0}: {}", a[(i, j)]));
                report.record((b[(i, j)] - ezs).abs() <= tol, || format!("z* ({i},{j}) at {q0}: {}", b[(i, j)]));
            }
        }
    }
    report
}

/// `ker z^*` on `E_0 .. E_N` is spanned by the vacuum, for every `N` in `1..=max_truncation`.
pub fn vacuum_check(max_truncation: usize) -> CheckReport {
    let mut report = CheckReport::new(
        format!("fock/vacuum N≤{max_truncation}"),
        "ker z* = C·E_0",
        CheckMode::Exact,
    );
    for n in 1..=max_truncation {
        let v = vacuum_vectors(n);
        let is_vacuum = v.len() == 1 && v[0][1..].iter().all(Scalar::is_zero);
        report.record(is_vacuum, || format!("N = {n}: kernel dimension {}", v.len()));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn expr(names: &[&str]) -> NCExpr {
        ncpoly::finite_alphabet().expr(names).unwrap()
    }

    #[test]
    fn generator_matrices() {
        let z = represent_expr(&expr(&["z"]), 2).unwrap();
        assert_eq!(z.get(1, 0), &Scalar::one());
        assert_eq!(z.get(2, 1), &Scalar::one());
        assert_eq!(z.boundary_start, 2);
        let f0 = represent_expr(&expr(&["f0"]), 2).unwrap();
        assert_eq!(f0.get(0, 0), &Scalar::one());
        assert_eq!(f0.entries.iter().flatten().filter(|c| !c.is_zero()).count(), 1);
    }

    #[test]
    fn weights() {
        assert_eq!(norm_weight(0), Scalar::one());
        assert_eq!(norm_weight(2), (int(1) - q(2)) * (int(1) - q(4)));
        assert_eq!(FockSpace::new(3).weight(3), &norm_weight(3));
    }

    #[test]
    fn too_small_truncation() {
        let e = expr(&["z", "z", "z"]);
        assert_eq!(
            represent_expr(&e, 2),
            Err(FockError::TruncationTooSmall { required: 3, given: 2 })
        );
    }

    #[test]
    fn orthonormal_entries() {
        let z = represent_expr(&expr(&["z"]), 3).unwrap();
        let a = orthonormal_numeric(&z, &rat(1, 4)).unwrap();
        assert!((a[(1, 0)] - 15f64.sqrt() / 4.0).abs() < 1e-12);
        let zs = represent_expr(&expr(&["z^*"]), 3).unwrap();
        let b = orthonormal_numeric(&zs, &rat(1, 4)).unwrap();
        assert!((b[(0, 1)] - 15f64.sqrt() / 4.0).abs() < 1e-12);
        let one = represent_expr(&NCExpr::basis(Word::empty()), 3).unwrap();
        assert_eq!(orthonormal_numeric(&one, &rat(1, 4)).unwrap(), DMatrix::identity(4, 4));
    }

    #[test]
    fn vacuum() {
        for n in [1, 8] {
            let v = vacuum_vectors(n);
            assert_eq!(v.len(), 1);
            assert!(v[0][1..].iter().all(|c| c.is_zero()));
        }
    }

    #[test]
    fn ranks() {
        assert_eq!(monomial_rank(0, 3).unwrap(), 1);
        assert_eq!(monomial_rank(1, 4).unwrap(), 4);
    }

    #[test]
    fn small_checks() {
        for r in [
            adjointness_check(4),
            relation_kernel_check(&[2, 5]),
            multiplicativity_check(2, 8),
            norm_positivity_check(6, &[rat(1, 4)]),
            orthonormal_check(4, &[rat(1, 2)], 1e-12),
            irreducibility_check(1, &rat(1, 2)),
            irreducibility_check(5, &rat(1, 2)),
        ] {
            assert!(r.passed(), "{}: {:?}", r.name, r.failures);
        }
    }

    #[test]
    fn adjoint_examples() {
        let space = FockSpace::new(4);
        // <z E_0, E_1> = g_1
        assert_eq!(space.inner(1, 1), int(1) - q(2));
    }

    #[test]
    fn vacuum_is_unique() {
        assert!(vacuum_check(6).passed());
    }
}
