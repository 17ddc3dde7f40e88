//! Cartan matrices of the simple Lie algebras (Bourbaki numbering), positive
//! roots by closure under root strings, the maximal root, and the
//! Z-gradation `g = p⁻ ⊕ k ⊕ p⁺` attached to a simple root with coefficient 1.
//!
//! Indices in the public API are 1-based. `matrix[i][j] = a_ij = α_j(H_i)`.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::report::{CheckMode, CheckReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum LieType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl LieType {
    pub const ALL: [LieType; 7] = [LieType::A, LieType::B, LieType::C, LieType::D, LieType::E, LieType::F, LieType::G];

    pub fn parse(s: &str) -> Option<LieType> {
        Some(match s.to_ascii_uppercase().as_str() {
            "A" => LieType::A,
            "B" => LieType::B,
            "C" => LieType::C,
            "D" => LieType::D,
            "E" => LieType::E,
            "F" => LieType::F,
            "G" => LieType::G,
            _ => return None,
        })
    }

    /// Admissible ranks.
    pub fn ranks(self) -> Vec<usize> {
        match self {
            LieType::A => (1..=12).collect(),
            LieType::B | LieType::C => (2..=12).collect(),
            LieType::D => (4..=12).collect(),
            LieType::E => vec![6, 7, 8],
            LieType::F => vec![4],
            LieType::G => vec![2],
        }
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootDataError {
    #[error("no simple Lie algebra of type {0}{1}")]
    InvalidRank(LieType, usize),
    #[error("not a Cartan matrix: {0}")]
    InvalidMatrix(String),
    #[error("l0 = {l0} is not admissible (coefficient {coefficient} in the maximal root)")]
    NotAdmissible { l0: usize, coefficient: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CartanData {
    pub label: String,
    pub rank: usize,
    pub matrix: Vec<Vec<i64>>,
    /// Coprime positive integers with `d_i a_ij = d_j a_ji`.
    pub symmetrizers: Vec<i64>,
}

fn chain(l: usize) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0; l]; l];
    for i in 0..l {
        m[i][i] = 2;
        if i + 1 < l {
            m[i][i + 1] = -1;
            m[i + 1][i] = -1;
        }
    }
    m
}

fn link(m: &mut [Vec<i64>], i: usize, j: usize) {
    m[i - 1][j - 1] = -1;
    m[j - 1][i - 1] = -1;
}

fn unlink(m: &mut [Vec<i64>], i: usize, j: usize) {
    m[i - 1][j - 1] = 0;
    m[j - 1][i - 1] = 0;
}

/// Cartan data for type `t` and rank `l`.
pub fn build(t: LieType, l: usize) -> Result<CartanData, RootDataError> {
    if !t.ranks().contains(&l) {
        return Err(RootDataError::InvalidRank(t, l));
    }
    let mut m = chain(l);
    match t {
        LieType::A => {}
        // α_l short
        LieType::B => m[l - 1][l - 2] = -2,
        // α_l long
        LieType::C => m[l - 2][l - 1] = -2,
        LieType::D => {
            unlink(&mut m, l - 1, l);
            link(&mut m, l - 2, l);
        }
        LieType::E => {
            // 1 - 3 - 4 - 5 - ... with 2 attached to 4
            unlink(&mut m, 1, 2);
            unlink(&mut m, 2, 3);
            link(&mut m, 1, 3);
            link(&mut m, 2, 4);
        }
        LieType::F => m[2][1] = -2,
        LieType::G => m[0][1] = -3,
    }
    CartanData::from_matrix(format!("{t}{l}"), m)
}

impl CartanData {
    /// Validate a Cartan matrix and compute its symmetrizers.
    pub fn from_matrix(label: String, matrix: Vec<Vec<i64>>) -> Result<Self, RootDataError> {
        let l = matrix.len();
        let bad = |s: String| Err(RootDataError::InvalidMatrix(s));
        if l == 0 || matrix.iter().any(|r| r.len() != l) {
            return bad("not square".into());
        }
        for i in 0..l {
            if matrix[i][i] != 2 {
                return bad(format!("a_{0}{0} != 2", i + 1));
            }
            for j in 0..l {
                if i != j && (matrix[i][j] > 0 || (matrix[i][j] == 0) != (matrix[j][i] == 0)) {
                    return bad(format!("entries at ({}, {})", i + 1, j + 1));
                }
            }
        }
        // propagate d_j = d_i a_ij / a_ji along the Dynkin graph
        let mut d: Vec<Option<Rational64>> = vec![None; l];
        d[0] = Some(Rational64::one());
        let mut stack = vec![0];
        while let Some(i) = stack.pop() {
            let di = d[i].unwrap();
            for j in 0..l {
                if i == j || matrix[i][j] == 0 {
                    continue;
                }
                let dj = di * Rational64::new(matrix[i][j], matrix[j][i]);
                match d[j] {
                    None => {
                        d[j] = Some(dj);
                        stack.push(j);
                    }
                    Some(x) if x != dj => return bad("not symmetrizable".into()),
                    Some(_) => {}
                }
            }
        }
        let Some(d) = d.into_iter().collect::<Option<Vec<_>>>() else {
            return bad("Dynkin diagram is disconnected".into());
        };
        let den = d.iter().fold(1i64, |acc, x| acc.lcm(x.denom()));
        let ints: Vec<i64> = d.iter().map(|x| (x * den).to_integer()).collect();
        let g = ints.iter().fold(0i64, |acc, x| acc.gcd(x));
        Ok(CartanData {
            label,
            rank: l,
            matrix,
            symmetrizers: ints.iter().map(|x| x / g).collect(),
        })
    }

    /// `<β, α_i^∨> = sum_j c_j a_ij`.
    pub fn pairing(&self, beta: &[i64], i: usize) -> i64 {
        beta.iter().zip(&self.matrix[i]).map(|(c, a)| c * a).sum()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RootSystem {
    /// Positive roots in increasing height, as coefficients over the simple roots.
    pub positive_roots: Vec<Vec<i64>>,
    pub maximal_root: Vec<i64>,
}

/// Positive roots: `β + α_i` is a root iff `q > 0` in the `α_i`-string
/// `β - pα_i, ..., β + qα_i`, where `p - q = <β, α_i^∨>`.
pub fn positive_roots(c: &CartanData) -> Vec<Vec<i64>> {
    let l = c.rank;
    let simple: Vec<Vec<i64>> = (0..l)
        .map(|i| {
            let mut v = vec![0; l];
            v[i] = 1;
            v
        })
        .collect();
    let mut all: BTreeSet<Vec<i64>> = simple.iter().cloned().collect();
    let mut out = simple.clone();
    let mut level = simple;
    while !level.is_empty() {
        let mut next = BTreeSet::new();
        for beta in &level {
            for i in 0..l {
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if !all.contains(&down) {
                        break;
                    }
                    p += 1;
                }
                let q = p - c.pairing(beta, i);
                if q > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    next.insert(up);
                }
            }
        }
        let next: Vec<Vec<i64>> = next.into_iter().filter(|r| !all.contains(r)).collect();
        all.extend(next.iter().cloned());
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}

/// Highest root by enumeration.
pub fn maximal_root(c: &CartanData) -> Vec<i64> {
    positive_roots(c)
        .into_iter()
        .max_by_key(|r| r.iter().sum::<i64>())
        .expect("at least one root")
}

/// Stored highest-root coefficients.
pub fn maximal_root_table(t: LieType, l: usize) -> Option<Vec<i64>> {
    if !t.ranks().contains(&l) {
        return None;
    }
    Some(match t {
        LieType::A => vec![1; l],
        LieType::B => std::iter::once(1).chain(std::iter::repeat_n(2, l - 1)).collect(),
        LieType::C => std::iter::repeat_n(2, l - 1).chain(std::iter::once(1)).collect(),
        LieType::D => {
            let mut v = vec![2; l];
            v[0] = 1;
            v[l - 2] = 1;
            v[l - 1] = 1;
            v
        }
        LieType::E => match l {
            6 => vec![1, 2, 2, 3, 2, 1],
            7 => vec![2, 2, 3, 4, 3, 2, 1],
            _ => vec![2, 3, 4, 6, 5, 4, 3, 2],
        },
        LieType::F => vec![2, 3, 4, 2],
        LieType::G => vec![3, 2],
    })
}

/// Stored number of positive roots.
pub fn positive_root_count_table(t: LieType, l: usize) -> usize {
    match t {
        LieType::A => l * (l + 1) / 2,
        LieType::B | LieType::C => l * l,
        LieType::D => l * (l - 1),
        LieType::E => match l {
            6 => 36,
            7 => 63,
            _ => 120,
        },
        LieType::F => 24,
        LieType::G => 6,
    }
}

pub fn root_system(c: &CartanData) -> RootSystem {
    let positive_roots = positive_roots(c);
    let maximal_root = positive_roots.iter().max_by_key(|r| r.iter().sum::<i64>()).unwrap().clone();
    RootSystem {
        positive_roots,
        maximal_root,
    }
}

/// 1-based indices `i` with `n_i = 1`.
pub fn l0_candidates(c: &CartanData) -> Vec<usize> {
    maximal_root(c)
        .iter()
        .enumerate()
        .filter(|(_, n)| **n == 1)
        .map(|(i, _)| i + 1)
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct GradationData {
    pub l0: usize,
    /// `H = sum h_j H_j` with `α_i(H) = 2 δ_{i,l0}`, as strings of rationals.
    pub h: Vec<String>,
    pub dim_k: usize,
    pub dim_p_plus: usize,
    pub dim_p_minus: usize,
    pub dim_g: usize,
}

/// Solve `A x = b` for square invertible `A` over the rationals.
fn solve(a: &[Vec<Rational64>], b: &[Rational64]) -> Option<Vec<Rational64>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational64>> = a.iter().zip(b).map(|(r, x)| r.iter().cloned().chain([*x]).collect()).collect();
    for col in 0..n {
        let p = (col..n).find(|&i| !m[i][col].is_zero())?;
        m.swap(col, p);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x *= inv;
        }
        let pivot = m[col].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != col && !row[col].is_zero() {
                let f = row[col];
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x -= f * p;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n]).collect())
}

pub fn gradation(c: &CartanData, l0: usize) -> Result<GradationData, RootDataError> {
    let delta = maximal_root(c);
    if l0 == 0 || l0 > c.rank {
        return Err(RootDataError::NotAdmissible { l0, coefficient: 0 });
    }
    if delta[l0 - 1] != 1 {
        return Err(RootDataError::NotAdmissible {
            l0,
            coefficient: delta[l0 - 1],
        });
    }
    let l = c.rank;
    // α_i(H) = sum_j h_j α_i(H_j) = sum_j h_j a_ji
    let at: Vec<Vec<Rational64>> = (0..l).map(|i| (0..l).map(|j| Rational64::from(c.matrix[j][i])).collect()).collect();
    let rhs: Vec<Rational64> = (0..l).map(|i| Rational64::from(if i + 1 == l0 { 2 } else { 0 })).collect();
    let h = solve(&at, &rhs).expect("Cartan matrices are invertible");
    let roots = positive_roots(c);
    let p = roots.iter().filter(|r| r[l0 - 1] == 1).count();
    let k_roots = roots.iter().filter(|r| r[l0 - 1] == 0).count();
    Ok(GradationData {
        l0,
        h: h.iter().map(|x| x.to_string()).collect(),
        dim_k: l + 2 * k_roots,
        dim_p_plus: p,
        dim_p_minus: p,
        dim_g: l + 2 * roots.len(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct RhoData {
    /// Half the sum of the positive roots, over the simple roots.
    pub rho: Vec<String>,
    /// `½ sum n_i d_i H_i`, over the coroots `H_i`.
    pub rho_check: Vec<String>,
    /// `½ sum n_i α_i`, the other reading of `ρ`.
    pub half_delta: Vec<String>,
    /// Whether the half-sum and `½ δ` agree.
    pub readings_agree: bool,
}

pub fn rho_and_check(c: &CartanData) -> RhoData {
    let roots = positive_roots(c);
    let delta = maximal_root(c);
    let half = Rational64::new(1, 2);
    let rho: Vec<Rational64> = (0..c.rank)
        .map(|i| half * Rational64::from(roots.iter().map(|r| r[i]).sum::<i64>()))
        .collect();
    let half_delta: Vec<Rational64> = delta.iter().map(|n| half * Rational64::from(*n)).collect();
    let rho_check = delta
        .iter()
        .zip(&c.symmetrizers)
        .map(|(n, d)| (half * Rational64::from(n * d)).to_string())
        .collect();
    RhoData {
        rho: rho.iter().map(ToString::to_string).collect(),
        rho_check,
        readings_agree: rho == half_delta,
        half_delta: half_delta.iter().map(ToString::to_string).collect(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RootDataReport {
    pub cartan: CartanData,
    pub positive_roots: Vec<Vec<i64>>,
    pub maximal_root: Vec<i64>,
    pub l0_candidates: Vec<usize>,
    pub gradations: Vec<GradationData>,
    pub rho: RhoData,
}

pub fn describe(c: &CartanData) -> RootDataReport {
    let rs = root_system(c);
    let l0 = l0_candidates(c);
    RootDataReport {
        gradations: l0.iter().map(|&i| gradation(c, i).expect("admissible")).collect(),
        cartan: c.clone(),
        positive_roots: rs.positive_roots,
        maximal_root: rs.maximal_root,
        l0_candidates: l0,
        rho: rho_and_check(c),
    }
}

/// Every type up to `max_rank`.
pub fn all_types(max_rank: usize) -> Vec<(LieType, usize)> {
    LieType::ALL
        .iter()
        .flat_map(|&t| t.ranks().into_iter().filter(move |&l| l <= max_rank).map(move |l| (t, l)))
        .collect()
}

/// Tables against enumeration, symmetrizers, gradations, and the `l0` criterion.
pub fn rootdata_check(max_rank: usize) -> CheckReport {
    let mut report = CheckReport::new(
        format!("rootdata/tables rank≤{max_rank}"),
        "maximal root δ = Σ n_i α_i; l₀ with n_{l₀} = 1 exists except for E₈, F₄, G₂",
        CheckMode::Exact,
    );
    for (t, l) in all_types(max_rank) {
        let c = build(t, l).expect("admissible rank");
        let name = &c.label;
        let sym_ok = (0..l).all(|i| (0..l).all(|j| c.symmetrizers[i] * c.matrix[i][j] == c.symmetrizers[j] * c.matrix[j][i]));
        report.record(sym_ok, || format!("{name}: symmetrizers {:?}", c.symmetrizers));
        let rs = root_system(&c);
        let count = positive_root_count_table(t, l);
        report.record(rs.positive_roots.len() == count, || {
            format!("{name}: {} positive roots, table says {count}", rs.positive_roots.len())
        });
        let table = maximal_root_table(t, l).unwrap();
        report.record(rs.maximal_root == table, || format!("{name}: δ = {:?}, table {table:?}", rs.maximal_root));
        let dominates = rs.positive_roots.iter().all(|r| r.iter().zip(&rs.maximal_root).all(|(a, n)| a <= n));
        report.record(dominates, || format!("{name}: δ does not dominate"));
        let l0 = l0_candidates(&c);
        let exceptional = matches!((t, l), (LieType::E, 8) | (LieType::F, 4) | (LieType::G, 2));
        report.record(l0.is_empty() == exceptional, || format!("{name}: l0 candidates {l0:?}"));
        for &i in &l0 {
            let g = gradation(&c, i).unwrap();
            report.record(g.dim_k + g.dim_p_plus + g.dim_p_minus == g.dim_g, || format!("{name}, l0 = {i}: dimensions"));
            let graded = rs.positive_roots.iter().all(|r| r[i - 1] <= 1);
            report.record(graded, || format!("{name}, l0 = {i}: a root has α_l0-coefficient > 1"));
        }
        // <ρ, α_i^∨> = 1
        let rho = rho_and_check(&c);
        let twice_rho: Vec<i64> = (0..l).map(|i| rs.positive_roots.iter().map(|r| r[i]).sum()).collect();
        report.record((0..l).all(|i| c.pairing(&twice_rho, i) == 2), || format!("{name}: ρ({:?}) is not ρ", rho.rho));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_examples() {
        let a1 = build(LieType::A, 1).unwrap();
        assert_eq!(a1.matrix, vec![vec![2]]);
        assert_eq!(a1.symmetrizers, vec![1]);
        let a2 = build(LieType::A, 2).unwrap();
        assert_eq!(a2.matrix, vec![vec![2, -1], vec![-1, 2]]);
        assert_eq!(a2.symmetrizers, vec![1, 1]);
        let g2 = build(LieType::G, 2).unwrap();
        assert_eq!(g2.matrix, vec![vec![2, -3], vec![-1, 2]]);
        assert_eq!(g2.symmetrizers, vec![1, 3]);
        assert!(build(LieType::E, 5).is_err());
        assert!(build(LieType::D, 3).is_err());
    }

    #[test]
    fn e_series_shape() {
        let e6 = build(LieType::E, 6).unwrap();
        let neighbours = |i: usize| (1..=6).filter(|&j| j != i && e6.matrix[i - 1][j - 1] != 0).collect::<Vec<_>>();
        assert_eq!(neighbours(4), vec![2, 3, 5]);
        assert_eq!(neighbours(1), vec![3]);
        assert_eq!(neighbours(2), vec![4]);
    }

    #[test]
    fn maximal_root_examples() {
        assert_eq!(maximal_root(&build(LieType::A, 1).unwrap()), vec![1]);
        assert_eq!(maximal_root(&build(LieType::A, 2).unwrap()), vec![1, 1]);
        assert_eq!(maximal_root(&build(LieType::C, 3).unwrap()), vec![2, 2, 1]);
    }

    #[test]
    fn l0_examples() {
        assert!(l0_candidates(&build(LieType::E, 8).unwrap()).is_empty());
        assert!(l0_candidates(&build(LieType::G, 2).unwrap()).is_empty());
        assert_eq!(l0_candidates(&build(LieType::A, 5).unwrap()), vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn gradation_examples() {
        let a1 = gradation(&build(LieType::A, 1).unwrap(), 1).unwrap();
        assert_eq!((a1.dim_p_plus, a1.dim_k), (1, 1));
        let a2 = gradation(&build(LieType::A, 2).unwrap(), 1).unwrap();
        assert_eq!(a2.dim_p_plus, 2);
        assert_eq!(a2.h, vec!["4/3", "2/3"]);
        let c2 = gradation(&build(LieType::C, 2).unwrap(), 2).unwrap();
        assert_eq!(c2.dim_p_plus, 3);
        assert!(matches!(
            gradation(&build(LieType::C, 2).unwrap(), 1),
            Err(RootDataError::NotAdmissible { coefficient: 2, .. })
        ));
    }

    #[test]
    fn rho_examples() {
        let a1 = rho_and_check(&build(LieType::A, 1).unwrap());
        assert_eq!(a1.rho_check, vec!["1/2"]);
        let a2 = rho_and_check(&build(LieType::A, 2).unwrap());
        assert_eq!(a2.rho_check, vec!["1/2", "1/2"]);
        assert_eq!(a2.rho, vec!["1", "1"]);
        assert!(!a2.readings_agree);
    }

    #[test]
    fn tables_agree_with_enumeration() {
        let r = rootdata_check(8);
        assert!(r.passed(), "{:?}", r.failures);
    }
}
