//! Dense univariate polynomials with arbitrary-precision integer coefficients.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A polynomial in one indeterminate over `Z`, stored little-endian
/// (`coeffs[k]` is the coefficient of `s^k`) without trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * s^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        IntPoly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::from_coeffs(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Lowest exponent carrying a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// True when the polynomial is `c * s^k` for some nonzero `c`.
    pub fn is_monomial(&self) -> bool {
        match self.valuation() {
            Some(v) => v + 1 == self.coeffs.len(),
            None => false,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// gcd of all coefficients (nonnegative); zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Exact division of every coefficient by `c`.
    pub fn div_exact_int(&self, c: &BigInt) -> Self {
        if c.is_one() {
            return self.clone();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|x| x / c).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        IntPoly {
            coeffs: self.coeffs.iter().map(|x| -x).collect(),
        }
    }

    /// Multiply by `s^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    /// Divide by `s^k`; the caller guarantees `k <= valuation`.
    pub fn shift_down(&self, k: usize) -> Self {
        if k == 0 {
            return self.clone();
        }
        IntPoly {
            coeffs: self.coeffs[k..].to_vec(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let c = match (self.coeffs.get(k), other.coeffs.get(k)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            };
            out.push(c);
        }
        Self::from_coeffs(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if other.is_monomial() {
            let v = other.coeffs.len() - 1;
            return self.scale(&other.coeffs[v]).shift_up(v);
        }
        if self.is_monomial() {
            return other.mul(self);
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self::from_coeffs(out)
    }

    /// Pseudo-remainder of `self` by a nonzero `divisor`.
    fn pseudo_rem(&self, divisor: &Self) -> Self {
        let dd = divisor.degree().expect("nonzero divisor");
        let lc = divisor.leading().unwrap().clone();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let lr = r.leading().unwrap().clone();
            // r <- lc * r - lr * s^(dr-dd) * divisor
            r = r.scale(&lc).sub(&divisor.scale(&lr).shift_up(dr - dd));
        }
        r
    }

    pub fn primitive_part(&self) -> Self {
        let c = self.content();
        if c.is_zero() {
            return Self::zero();
        }
        let mut p = self.div_exact_int(&c);
        if p.leading().is_some_and(|l| l.is_negative()) {
            p = p.neg();
        }
        p
    }

    /// Primitive gcd with positive leading coefficient (zero iff both are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive_part();
        }
        if other.is_zero() {
            return self.primitive_part();
        }
        let va = self.valuation().unwrap();
        let vb = other.valuation().unwrap();
        let v = va.min(vb);
        let a = self.shift_down(va);
        let b = other.shift_down(vb);
        let core = if a.is_constant() || b.is_constant() {
            IntPoly::one()
        } else {
            let (mut a, mut b) = if a.degree() >= b.degree() {
                (a.primitive_part(), b.primitive_part())
            } else {
                (b.primitive_part(), a.primitive_part())
            };
            loop {
                let r = a.pseudo_rem(&b);
                if r.is_zero() {
                    break b;
                }
                if r.is_constant() {
                    break IntPoly::one();
                }
                a = b;
                b = r.primitive_part();
            }
        };
        core.shift_up(v)
    }

    /// Exact quotient `self / divisor`; the caller guarantees divisibility in `Z[s]`.
    pub fn div_exact(&self, divisor: &Self) -> Self {
        if divisor.is_one() {
            return self.clone();
        }
        if divisor.is_monomial() {
            let v = divisor.coeffs.len() - 1;
            return self.shift_down(v).div_exact_int(&divisor.coeffs[v]);
        }
        let dd = divisor.degree().expect("nonzero divisor");
        let lc = divisor.leading().unwrap();
        let mut r = self.clone();
        let mut q = vec![BigInt::zero(); r.coeffs.len().saturating_sub(dd)];
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let (c, rem) = r.leading().unwrap().div_rem(lc);
            debug_assert!(rem.is_zero(), "inexact polynomial division");
            let _ = rem;
            r = r.sub(&divisor.scale(&c).shift_up(dr - dd));
            q[dr - dd] = c;
        }
        debug_assert!(r.is_zero(), "inexact polynomial division");
        Self::from_coeffs(q)
    }

    /// Evaluate at an exact rational point.
    pub fn eval(&self, x: &num_rational::BigRational) -> num_rational::BigRational {
        let mut acc = num_rational::BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + num_rational::BigRational::from_integer(c.clone());
        }
        acc
    }

    /// True when only even powers of `s` occur.
    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(|c| c.is_zero())
    }

    /// Total order used for canonical tie-breaking (degree, then coefficients from the top).
    pub fn cmp_canonical(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}*s^{k}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> IntPoly {
        IntPoly::from_i64s(cs)
    }

    #[test]
    fn gcd_of_cyclotomic_products() {
        // (1 - s^2)(1 + s) and (1 - s^2)(2 - s)
        let a = p(&[1, 0, -1]).mul(&p(&[1, 1]));
        let b = p(&[1, 0, -1]).mul(&p(&[2, -1]));
        let g = a.gcd(&b);
        assert_eq!(g, p(&[-1, 0, 1]));
    }

    #[test]
    fn gcd_strips_common_s_power() {
        let a = p(&[0, 0, 3, 3]);
        let b = p(&[0, 6]);
        assert_eq!(a.gcd(&b), p(&[0, 1]));
    }

    #[test]
    fn exact_division_roundtrip() {
        let a = p(&[3, -1, 4, 1, -5]);
        let b = p(&[2, 0, 7]);
        assert_eq!(a.mul(&b).div_exact(&b), a);
    }
}
