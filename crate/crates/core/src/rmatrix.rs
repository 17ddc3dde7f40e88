//! Truncated action of the universal R-matrix on `C[z^*] ⊗ C[z]` and the
//! braided product that recovers the disc relation.
//!
//! `R = (1 + (q^-1 - q) E⊗F + ...) q^(-H⊗H/2)`; on weight vectors of weights
//! `w1, w2` the Cartan factor is the scalar `q^(-w1 w2 / 2)`.

use serde::Serialize;
use thiserror::Error;

use crate::linear::LinComb;
use crate::modalg::{AntiHolo, HoloPoly, UqModule};
use crate::ncpoly::{self, NCExpr, Presentation, Rule, Word};
use crate::scalars::{int, q, Scalar};
use crate::uqsl2::UqGen;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RMatrixError {
    #[error("tensor leg is not a weight vector (weights {0:?})")]
    NotWeight(Vec<i64>),
    #[error("the E^{n}⊗F^{n} term is nonzero on (z^*)^{b} ⊗ z^{a}; its coefficient is not available")]
    HigherOrder { n: u32, b: u32, a: u32 },
    #[error("derived relation {derived} differs from the built-in rule {builtin}")]
    Mismatch { derived: String, builtin: String },
}

/// `sum c (z^*)^b ⊗ z^a`, keyed by `(b, a)`.
pub type WeightTensor = LinComb<(u32, u32)>;

/// `sum c z^a ⊗ (z^*)^b`, keyed by `(a, b)`: the target of the braiding.
pub type SwappedTensor = LinComb<(u32, u32)>;

/// Build `left ⊗ right`, requiring both legs to be weight vectors.
pub fn weight_tensor(left: &LinComb<u32>, right: &LinComb<i64>) -> Result<WeightTensor, RMatrixError> {
    let wl: Vec<i64> = dedup(left.keys().map(|b| -2 * i64::from(*b)));
    let wr: Vec<i64> = dedup(right.keys().map(|a| 2 * a));
    if wl.len() > 1 {
        return Err(RMatrixError::NotWeight(wl));
    }
    if wr.len() > 1 || right.keys().any(|a| *a < 0) {
        return Err(RMatrixError::NotWeight(wr));
    }
    let mut out = WeightTensor::zero();
    for (b, cb) in left {
        for (a, ca) in right {
            out.add_term((*b, *a as u32), cb * ca);
        }
    }
    Ok(out)
}

fn dedup(it: impl Iterator<Item = i64>) -> Vec<i64> {
    let mut v: Vec<i64> = it.collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// Coefficients `c_n` of `E^n ⊗ F^n` that are fixed: `c_0 = 1`, `c_1 = q^-1 - q`.
pub fn r_coefficient(n: u32) -> Option<Scalar> {
    match n {
        0 => Some(Scalar::one()),
        1 => Some(q(-1) - q(1)),
        _ => None,
    }
}

/// `q^(-H⊗H/2)` on `(z^*)^b ⊗ z^a`: weights `-2b` and `2a` give `q^(2ab)`.
pub fn cartan_factor(b: u32, a: u32) -> Scalar {
    let w1 = -2 * i64::from(b);
    let w2 = 2 * i64::from(a);
    q(-(w1 * w2) / 2)
}

fn e_power_on_anti(anti: &AntiHolo, n: u32, b: u32) -> LinComb<u32> {
    let mut v = LinComb::basis(b);
    for _ in 0..n {
        v = anti.act_gen_elem(UqGen::E, &v);
    }
    v
}

fn f_power_on_holo(n: u32, a: u32) -> LinComb<i64> {
    let mut v = LinComb::basis(i64::from(a));
    for _ in 0..n {
        v = HoloPoly.act_gen_elem(UqGen::F, &v);
    }
    v
}

/// Apply `R` truncated after `E^order ⊗ F^order`.
///
/// Fails if a dropped term would act nontrivially, or if a needed term has no
/// known coefficient.
pub fn r_apply(t: &WeightTensor, order: u32) -> Result<WeightTensor, RMatrixError> {
    let anti = AntiHolo::new();
    let mut out = WeightTensor::zero();
    for ((b, a), c) in t {
        let c = c * &cartan_factor(*b, *a);
        let mut n = 0;
        loop {
            let left = e_power_on_anti(&anti, n, *b);
            let right = f_power_on_holo(n, *a);
            if left.is_zero() || right.is_zero() {
                break;
            }
            let cn = match (n <= order).then(|| r_coefficient(n)).flatten() {
                Some(cn) => cn,
                None => return Err(RMatrixError::HigherOrder { n, b: *b, a: *a }),
            };
            for (lb, lc) in &left {
                for (ra, rc) in &right {
                    out.add_term((*lb, *ra as u32), &c * &cn * lc * rc);
                }
            }
            n += 1;
        }
    }
    Ok(out)
}

/// `Ř = flip ∘ R`.
pub fn braiding(t: &WeightTensor) -> Result<SwappedTensor, RMatrixError> {
    let r = r_apply(t, 1)?;
    Ok(r.iter().map(|((b, a), c)| ((*a, *b), c.clone())).collect())
}

/// `m(z^a ⊗ (z^*)^b) = z^a (z^*)^b` as a word.
fn multiply_swapped(t: &SwappedTensor) -> NCExpr {
    t.iter()
        .map(|((a, b), c)| (ncpoly::disc_monomial(*a as usize, *b as usize), c.clone()))
        .collect()
}

/// `z^* z` computed as `m ∘ Ř (z^* ⊗ z)`, packaged as a rewrite rule.
pub fn derived_rule() -> Result<Rule, RMatrixError> {
    let t = WeightTensor::basis((1, 1));
    let rhs = multiply_swapped(&braiding(&t)?);
    Ok(Rule {
        lhs: Word(vec![ncpoly::ZSTAR, ncpoly::Z]),
        rhs,
    })
}

/// The presentation generated by the braided product; must equal the built-in one.
pub fn derive_relations() -> Result<Presentation, RMatrixError> {
    let rule = derived_rule()?;
    let builtin = ncpoly::pol_c_q();
    let alpha = builtin.alphabet().clone();
    let same = builtin.rules().len() == 1
        && builtin.rules()[0].lhs == rule.lhs
        && builtin.rules()[0].rhs == rule.rhs;
    if !same {
        return Err(RMatrixError::Mismatch {
            derived: alpha.format(&rule.rhs),
            builtin: alpha.format(&builtin.rules()[0].rhs),
        });
    }
    Ok(Presentation::new("derived", alpha, vec![rule]).expect("derived rule decreases the order"))
}

/// Braided product `(z^a (z^*)^b)(z^c (z^*)^d) = z^a m(Ř((z^*)^b ⊗ z^c)) (z^*)^d`,
/// available while the first-order truncation is exact (`min(b, c) <= 1`).
pub fn braided_product(x: (u32, u32), y: (u32, u32)) -> Result<LinComb<(u32, u32)>, RMatrixError> {
    let (a, b) = x;
    let (c, d) = y;
    let swapped = braiding(&WeightTensor::basis((b, c)))?;
    Ok(swapped.iter().map(|((i, j), s)| ((a + i, j + d), s.clone())).collect())
}

#[derive(Debug, Clone, Serialize)]
pub struct DemoStep {
    pub label: String,
    pub value: String,
}

/// The derivation of the disc relation, one line per step.
pub fn demo() -> Result<Vec<DemoStep>, RMatrixError> {
    let alpha = ncpoly::disc_alphabet();
    let t = WeightTensor::basis((1, 1));
    let fmt_t = |t: &WeightTensor| {
        crate::linear::format_lincomb(t, |(b, a)| format!("{}⊗{}", leg("z^*", *b), leg("z", *a)))
    };
    let fmt_s = |t: &SwappedTensor| {
        crate::linear::format_lincomb(t, |(a, b)| format!("{}⊗{}", leg("z", *a), leg("z^*", *b)))
    };
    let cartan: WeightTensor = t.iter().map(|((b, a), c)| ((*b, *a), c * &cartan_factor(*b, *a))).collect();
    let anti = AntiHolo::new();
    let e_zs = e_power_on_anti(&anti, 1, 1);
    let f_z = f_power_on_holo(1, 1);
    let r = r_apply(&t, 1)?;
    let br = braiding(&t)?;
    let rule = derive_relations()?;
    Ok(vec![
        DemoStep { label: "q^(-H⊗H/2)(z^*⊗z)".into(), value: fmt_t(&cartan) },
        DemoStep { label: "E z^*".into(), value: anti.format(&e_zs) },
        DemoStep { label: "F z".into(), value: HoloPoly.format(&f_z) },
        DemoStep { label: "R(z^*⊗z)".into(), value: fmt_t(&r) },
        DemoStep { label: "Ř(z^*⊗z)".into(), value: fmt_s(&br) },
        DemoStep {
            label: "z^* z".into(),
            value: alpha.format(&rule.rules()[0].rhs),
        },
    ])
}

fn leg(name: &str, n: u32) -> String {
    match n {
        0 => "1".into(),
        1 => name.into(),
        _ => format!("{name}^{n}"),
    }
}

/// `1 - q^2`, the constant term of the disc relation.
pub fn relation_constant() -> Scalar {
    int(1) - q(2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modalg::{ModuleAlgebra, PolCq};

    #[test]
    fn cartan_factor_on_zstar_z() {
        assert_eq!(cartan_factor(1, 1), q(2));
        assert_eq!(cartan_factor(0, 3), Scalar::one());
    }

    #[test]
    fn r_on_degree_one_one() {
        let r = r_apply(&WeightTensor::basis((1, 1)), 1).unwrap();
        let mut expected = WeightTensor::term((1, 1), q(2));
        expected.add_term((0, 0), relation_constant());
        assert_eq!(r, expected);
        assert_eq!(r_apply(&WeightTensor::basis((0, 1)), 1).unwrap(), WeightTensor::basis((0, 1)));
    }

    #[test]
    fn braiding_examples() {
        let br = braiding(&WeightTensor::basis((1, 1))).unwrap();
        let mut expected = SwappedTensor::term((1, 1), q(2));
        expected.add_term((0, 0), relation_constant());
        assert_eq!(br, expected);
        assert_eq!(braiding(&WeightTensor::basis((0, 0))).unwrap(), SwappedTensor::basis((0, 0)));
        assert_eq!(braiding(&WeightTensor::basis((0, 1))).unwrap(), SwappedTensor::basis((1, 0)));
    }

    #[test]
    fn higher_order_is_refused() {
        let err = r_apply(&WeightTensor::basis((2, 2)), 1).unwrap_err();
        assert_eq!(err, RMatrixError::HigherOrder { n: 2, b: 2, a: 2 });
    }

    #[test]
    fn second_order_term_vanishes_in_degree_one_one() {
        let anti = AntiHolo::new();
        assert!(e_power_on_anti(&anti, 2, 1).is_zero());
        assert!(f_power_on_holo(2, 1).is_zero());
    }

    #[test]
    fn non_weight_leg_is_refused() {
        let left = LinComb::basis(0u32).add(&LinComb::basis(1));
        assert!(matches!(weight_tensor(&left, &LinComb::basis(1)), Err(RMatrixError::NotWeight(_))));
    }

    #[test]
    fn derived_presentation_matches() {
        let p = derive_relations().unwrap();
        let again = derive_relations().unwrap();
        assert_eq!(p.rules(), again.rules());
        let z = p.alphabet().expr(&["z"]).unwrap();
        let zs = p.alphabet().expr(&["z^*"]).unwrap();
        let left = p.mul(&p.mul(&zs, &z).unwrap(), &z).unwrap();
        let right = p.mul(&zs, &p.mul(&z, &z).unwrap()).unwrap();
        assert_eq!(left, right);
    }

    #[test]
    fn braided_product_agrees_with_rewriting() {
        let pol = PolCq::new();
        for x in [(0, 1), (2, 1), (1, 0)] {
            for y in [(1, 0), (1, 3), (3, 2)] {
                if x.1.min(y.0) > 1 {
                    continue;
                }
                assert_eq!(braided_product(x, y).unwrap(), pol.mul_keys(&x, &y));
            }
        }
    }
}
