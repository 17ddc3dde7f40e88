//! Exact coefficients: the rational function field `Q(s)` with `s^2 = q`.
//!
//! Every structure constant in this crate lives here. Values are kept as a
//! reduced quotient of integer polynomials in `s`, so equality is structural.

mod poly;

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use poly::IntPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at the evaluation point q = {0}")]
    Pole(BigRational),
    #[error("q = {0} is not the square of a rational; use approximate square-root mode")]
    NotASquare(BigRational),
    #[error("evaluation point q = {0} lies outside (0, 1)")]
    OutOfRange(BigRational),
}

/// An element of `Q(s)`, `s = q^(1/2)`, in canonical reduced form.
///
/// Invariants: the denominator is nonzero with positive leading coefficient,
/// numerator and denominator share no polynomial factor and no integer
/// content, and zero is stored as `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: IntPoly,
    den: IntPoly,
}

/// How `s = sqrt(q0)` is obtained when evaluating at a rational `q0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SqrtMode {
    /// `q0` must be the square of a rational; evaluation is exact.
    ExactSquare,
    /// Use a dyadic rational approximation of `sqrt(q0)` with this many fractional bits.
    Approximate { bits: u32 },
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            num: IntPoly::zero(),
            den: IntPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_bigint(BigInt::from(n))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Scalar {
            num: IntPoly::constant(n),
            den: IntPoly::one(),
        }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::from_parts(
            IntPoly::constant(r.numer().clone()),
            IntPoly::constant(r.denom().clone()),
        )
        .expect("rational has nonzero denominator")
    }

    pub fn from_ratio(n: i64, d: i64) -> Result<Self, ScalarError> {
        Self::from_parts(
            IntPoly::constant(BigInt::from(n)),
            IntPoly::constant(BigInt::from(d)),
        )
    }

    /// `num / den`, reduced.
    pub fn from_parts(num: IntPoly, den: IntPoly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: IntPoly, den: IntPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (mut num, mut den) = if den.is_one() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_exact(&g), den.div_exact(&g))
            }
        };
        let c = num.content().gcd(&den.content());
        if !c.is_one() {
            num = num.div_exact_int(&c);
            den = den.div_exact_int(&c);
        }
        if den.leading().is_some_and(|l| l.is_negative()) {
            num = num.neg();
            den = den.neg();
        }
        Scalar { num, den }
    }

    /// `s^k = q^(k/2)` for any integer `k`.
    pub fn s_pow(k: i64) -> Self {
        let m = IntPoly::monomial(BigInt::one(), k.unsigned_abs() as usize);
        if k >= 0 {
            Scalar {
                num: m,
                den: IntPoly::one(),
            }
        } else {
            Scalar {
                num: IntPoly::one(),
                den: m,
            }
        }
    }

    /// `q^k`.
    pub fn q_pow(k: i64) -> Self {
        Self::s_pow(2 * k)
    }

    /// `q`.
    pub fn q() -> Self {
        Self::q_pow(1)
    }

    /// `q^(1/2)`.
    pub fn sqrt_q() -> Self {
        Self::s_pow(1)
    }

    /// Symmetric q-integer `[n] = (q^n - q^-n)/(q - q^-1)`.
    pub fn q_int(n: i64) -> Self {
        let top = Self::q_pow(n) - Self::q_pow(-n);
        let bottom = Self::q() - Self::q_pow(-1);
        top.try_div(&bottom).expect("q - q^-1 is nonzero")
    }

    pub fn numerator(&self) -> &IntPoly {
        &self.num
    }

    pub fn denominator(&self) -> &IntPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True for values `c * q^(k/2)` (a single term, including constants).
    pub fn is_monomial(&self) -> bool {
        self.num.is_monomial() && self.den.is_monomial()
    }

    /// The constant value when the scalar does not depend on `q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num.is_constant() && self.den.is_constant() {
            let n = self.num.coeffs().first().cloned().unwrap_or_default();
            Some(BigRational::new(n, self.den.coeffs()[0].clone()))
        } else {
            None
        }
    }

    /// True when the value is a rational function of `q` alone.
    pub fn is_even_in_s(&self) -> bool {
        self.num.is_even() && self.den.is_even()
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, ScalarError> {
        if other.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::reduce(
            self.num.mul(&other.den),
            self.den.mul(&other.num),
        ))
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        Self::one().try_div(self)
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, k: i64) -> Result<Self, ScalarError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }

    /// Value at `s = s0`.
    pub fn eval_at_s(&self, s0: &BigRational) -> Result<BigRational, ScalarError> {
        let d = self.den.eval(s0);
        if d.is_zero() {
            return Err(ScalarError::Pole(s0 * s0));
        }
        Ok(self.num.eval(s0) / d)
    }

    /// Value at the parameter `q = q0`, `0 < q0 < 1`.
    ///
    /// Functions of `q` alone are evaluated exactly for every `q0`. Otherwise
    /// `s0 = sqrt(q0)` is taken according to `mode`.
    pub fn eval_numeric(&self, q0: &BigRational, mode: SqrtMode) -> Result<BigRational, ScalarError> {
        if !q0.is_positive() || *q0 >= BigRational::one() {
            return Err(ScalarError::OutOfRange(q0.clone()));
        }
        if self.is_even_in_s() {
            let n = eval_even(&self.num, q0);
            let d = eval_even(&self.den, q0);
            if d.is_zero() {
                return Err(ScalarError::Pole(q0.clone()));
            }
            return Ok(n / d);
        }
        let s0 = match mode {
            SqrtMode::ExactSquare => rational_sqrt(q0).ok_or_else(|| ScalarError::NotASquare(q0.clone()))?,
            SqrtMode::Approximate { bits } => rational_sqrt(q0).unwrap_or_else(|| approx_sqrt(q0, bits)),
        };
        self.eval_at_s(&s0).map_err(|e| match e {
            ScalarError::Pole(_) => ScalarError::Pole(q0.clone()),
            other => other,
        })
    }

    /// Floating-point value at `q0` (numeric checks only).
    pub fn to_f64_at(&self, q0: &BigRational) -> Result<f64, ScalarError> {
        let v = self.eval_numeric(q0, SqrtMode::Approximate { bits: 128 })?;
        Ok(v.to_f64().unwrap_or(f64::NAN))
    }
}

fn eval_even(p: &IntPoly, q0: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.coeffs().iter().step_by(2).rev() {
        acc = acc * q0 + BigRational::from_integer(c.clone());
    }
    acc
}

/// Exact rational square root, when it exists.
pub fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer();
    let d = x.denom();
    let rn = n.sqrt();
    let rd = d.sqrt();
    if &(&rn * &rn) == n && &(&rd * &rd) == d {
        Some(BigRational::new(rn, rd))
    } else {
        None
    }
}

/// Dyadic approximation `floor(sqrt(x) * 2^bits) / 2^bits`.
pub fn approx_sqrt(x: &BigRational, bits: u32) -> BigRational {
    let scale = BigInt::one() << (2 * bits as usize);
    let scaled = (x.numer() * &scale).div_floor(x.denom());
    BigRational::new(scaled.sqrt(), BigInt::one() << bits as usize)
}

impl Default for Scalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return Scalar::reduce(self.num.add(&rhs.num), self.den.clone());
        }
        Scalar::reduce(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        Scalar::reduce(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident, $atr:ident, $am:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
        impl $atr<Scalar> for Scalar {
            fn $am(&mut self, rhs: Scalar) {
                *self = (&*self).$m(&rhs);
            }
        }
        impl<'a> $atr<&'a Scalar> for Scalar {
            fn $am(&mut self, rhs: &Scalar) {
                *self = (&*self).$m(rhs);
            }
        }
    };
}

forward_owned!(Add, add, AddAssign, add_assign);
forward_owned!(Sub, sub, SubAssign, sub_assign);
forward_owned!(Mul, mul, MulAssign, mul_assign);

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::one()
    }
}

// Printing: polynomials are written as sums of `c*q^(k/2)` terms in
// ascending exponent; a monomial denominator is folded into the exponents.

fn format_q_power(half_exp: i64) -> String {
    if half_exp % 2 == 0 {
        match half_exp / 2 {
            1 => "q".to_string(),
            k => format!("q^{k}"),
        }
    } else {
        format!("q^({half_exp}/2)")
    }
}

fn format_terms(terms: &[(BigRational, i64)]) -> String {
    let mut out = String::new();
    for (idx, (c, e)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let coeff = if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("({}/{})", a.numer(), a.denom())
        };
        if *e == 0 {
            out.push_str(&a.to_string());
        } else if a.is_one() {
            out.push_str(&format_q_power(*e));
        } else {
            out.push_str(&coeff);
            out.push('*');
            out.push_str(&format_q_power(*e));
        }
    }
    out
}

fn poly_terms(p: &IntPoly, divisor: &BigInt, shift: i64) -> Vec<(BigRational, i64)> {
    p.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (BigRational::new(c.clone(), divisor.clone()), k as i64 - shift))
        .collect()
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let v = self.den.valuation().unwrap();
        let rest = self.den.shift_down(v);
        if rest.is_constant() {
            let terms = poly_terms(&self.num, &rest.coeffs()[0], v as i64);
            return write!(f, "{}", format_terms(&terms));
        }
        // Orient the displayed denominator so that its constant term is positive.
        let flip = rest.coeffs()[0].is_negative();
        let (n, d) = if flip { (self.num.neg(), rest.neg()) } else { (self.num.clone(), rest) };
        let nt = poly_terms(&n, &BigInt::one(), v as i64);
        let dt = poly_terms(&d, &BigInt::one(), 0);
        let ns = format_terms(&nt);
        if nt.len() == 1 && nt[0].0.is_integer() {
            write!(f, "{}/({})", ns, format_terms(&dt))
        } else {
            write!(f, "({})/({})", ns, format_terms(&dt))
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// Shorthand for building scalar constants in code and tests.
pub fn q(k: i64) -> Scalar {
    Scalar::q_pow(k)
}

/// Shorthand for `q^(k/2)`.
pub fn qh(k: i64) -> Scalar {
    Scalar::s_pow(k)
}

pub fn int(n: i64) -> Scalar {
    Scalar::from_int(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn arith_examples() {
        assert_eq!(q(1) * q(1), q(2));
        assert_eq!(int(1) - q(2), Scalar::from_parts(IntPoly::from_i64s(&[1, 0, 0, 0, -1]), IntPoly::one()).unwrap());
        let a = int(1) - q(2);
        let b = q(-2) - int(1);
        // q^-2 - 1 = (1 - q^2)/q^2, so the quotient is q^2.
        assert_eq!(a.try_div(&b).unwrap(), q(2));
        assert_eq!(&b * &q(2), a);
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(q(1).try_div(&Scalar::zero()), Err(ScalarError::DivisionByZero));
        assert_eq!(Scalar::zero().inv(), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn q_integers() {
        assert_eq!(Scalar::q_int(0), Scalar::zero());
        assert_eq!(Scalar::q_int(1), Scalar::one());
        assert_eq!(Scalar::q_int(2), q(1) + q(-1));
        assert_eq!(Scalar::q_int(-3), -Scalar::q_int(3));
    }

    #[test]
    fn numeric_examples() {
        let quarter = rat(1, 4);
        assert_eq!(q(2).eval_numeric(&quarter, SqrtMode::ExactSquare).unwrap(), rat(1, 16));
        assert_eq!((int(1) - q(2)).eval_numeric(&quarter, SqrtMode::ExactSquare).unwrap(), rat(15, 16));
        assert_eq!(qh(1).eval_numeric(&quarter, SqrtMode::ExactSquare).unwrap(), rat(1, 2));
    }

    #[test]
    fn numeric_errors() {
        let pole = (int(1) - int(4) * q(1)).inv().unwrap();
        assert_eq!(pole.eval_numeric(&rat(1, 4), SqrtMode::ExactSquare), Err(ScalarError::Pole(rat(1, 4))));
        assert!(matches!(qh(1).eval_numeric(&rat(1, 2), SqrtMode::ExactSquare), Err(ScalarError::NotASquare(_))));
        let approx = qh(1).eval_numeric(&rat(1, 2), SqrtMode::Approximate { bits: 64 }).unwrap();
        assert!((approx.to_f64().unwrap() - 0.5f64.sqrt()).abs() < 1e-15);
        assert!(matches!(q(1).eval_numeric(&rat(3, 2), SqrtMode::ExactSquare), Err(ScalarError::OutOfRange(_))));
    }

    #[test]
    fn even_functions_evaluate_exactly_at_any_point() {
        let x = (int(1) - q(2)).try_div(&(int(1) + q(1))).unwrap();
        assert_eq!(x.eval_numeric(&rat(1, 2), SqrtMode::ExactSquare).unwrap(), rat(1, 2));
    }

    #[test]
    fn display_forms() {
        assert_eq!(q(2).to_string(), "q^2");
        assert_eq!((int(1) - q(2)).to_string(), "1 - q^2");
        assert_eq!(qh(-3).to_string(), "q^(-3/2)");
        assert_eq!(qh(1).to_string(), "q^(1/2)");
        assert_eq!(Scalar::from_ratio(3, -2).unwrap().to_string(), "-3/2");
        let f = qh(1).try_div(&(int(1) - q(2))).unwrap();
        assert_eq!(f.to_string(), "q^(1/2)/(1 - q^2)");
    }

    #[test]
    fn canonical_forms_are_unique() {
        let a = (q(1) + int(1)).try_div(&(q(2) - int(1))).unwrap();
        let b = int(1).try_div(&(q(1) - int(1))).unwrap();
        assert_eq!(a, b);
        assert_eq!(format!("{a}"), format!("{b}"));
    }
}
