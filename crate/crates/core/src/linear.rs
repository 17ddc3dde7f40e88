//! Finite formal linear combinations over [`Scalar`].

use std::collections::btree_map::{self, BTreeMap};
use std::fmt;

use crate::scalars::Scalar;

/// `sum c_k * key_k` with nonzero coefficients, ordered by the key's `Ord`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinComb<K: Ord> {
    terms: BTreeMap<K, Scalar>,
}

impl<K: Ord> Default for LinComb<K> {
    fn default() -> Self {
        LinComb {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(key: K, c: Scalar) -> Self {
        let mut out = Self::zero();
        out.add_term(key, c);
        out
    }

    pub fn basis(key: K) -> Self {
        Self::term(key, Scalar::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &K) -> Scalar {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, Scalar> {
        self.terms.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, K, Scalar> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, key: K, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::one());
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::from_int(-1));
        out
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LinComb {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&Scalar::from_int(-1))
    }

    /// Apply a linear map given on basis keys.
    pub fn map_linear<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> LinComb<K2>) -> LinComb<K2> {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), c);
        }
        out
    }

    /// Fallible variant of [`LinComb::map_linear`].
    pub fn try_map_linear<K2: Ord + Clone, E>(
        &self,
        mut f: impl FnMut(&K) -> Result<LinComb<K2>, E>,
    ) -> Result<LinComb<K2>, E> {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k)?, c);
        }
        Ok(out)
    }

    /// Bilinear extension of a product given on basis keys.
    pub fn bilinear<K2: Ord + Clone, K3: Ord + Clone>(
        &self,
        other: &LinComb<K2>,
        mut f: impl FnMut(&K, &K2) -> LinComb<K3>,
    ) -> LinComb<K3> {
        let mut out = LinComb::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_scaled(&f(a, b), &(ca * cb));
            }
        }
        out
    }

    /// Keep only terms whose key satisfies `pred`.
    pub fn filter(&self, mut pred: impl FnMut(&K) -> bool) -> Self {
        LinComb {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| pred(k))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    /// The unique coefficient when `self` is a multiple of `other` (`other` nonzero).
    pub fn ratio_to(&self, other: &Self) -> Option<Scalar> {
        let (k0, c0) = other.terms.iter().next()?;
        let r = self.coeff(k0).try_div(c0).ok()?;
        if other.scale(&r) == *self {
            Some(r)
        } else {
            None
        }
    }
}

impl<K: Ord + Clone> FromIterator<(K, Scalar)> for LinComb<K> {
    fn from_iter<I: IntoIterator<Item = (K, Scalar)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }
}

impl<'a, K: Ord> IntoIterator for &'a LinComb<K> {
    type Item = (&'a K, &'a Scalar);
    type IntoIter = btree_map::Iter<'a, K, Scalar>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

impl<K: Ord + fmt::Debug> fmt::Debug for LinComb<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})*{k:?}")?;
        }
        Ok(())
    }
}

/// Writes `sum c*basis` using `show` for basis elements (empty string for the unit).
pub(crate) fn format_lincomb<K: Ord>(
    lc: &LinComb<K>,
    mut show: impl FnMut(&K) -> String,
) -> String {
    if lc.terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (k, c)) in lc.terms.iter().enumerate() {
        let word = show(k);
        let cs = c.to_string();
        let (neg, body) = match cs.strip_prefix('-') {
            Some(rest) if c.is_monomial() => (true, rest.to_string()),
            _ => (false, cs),
        };
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let simple = c.is_monomial()
            && !body.starts_with('(')
            && (body.contains('q') || !body.contains('/'));
        let coeff = if simple { body } else { format!("({body})") };
        if word.is_empty() {
            out.push_str(&coeff);
        } else if coeff == "1" {
            out.push_str(&word);
        } else {
            out.push_str(&coeff);
            out.push(' ');
            out.push_str(&word);
        }
    }
    out
}
