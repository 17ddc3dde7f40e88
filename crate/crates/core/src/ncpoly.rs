//! Free associative *-algebras over `Q(s)` modulo oriented rewrite rules.
//!
//! A [`Presentation`] is a finite rewrite system on words in a generator
//! alphabet. Normal forms are computed by repeatedly replacing the leftmost
//! occurrence of a rule's leading word, always reducing the largest pending
//! monomial first so that equal words are merged before they are expanded.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::linear::{format_lincomb, LinComb};
use crate::scalars::{int, q, Scalar};

pub type GenId = u8;

/// Default bound on rewrite steps for one normal-form computation.
pub const DEFAULT_STEP_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("rewriting exceeded the step budget of {budget} (last word {word})")]
    BudgetExhausted { budget: usize, word: String },
    #[error("rule {index} does not decrease the monomial order: {detail}")]
    NotDecreasing { index: usize, detail: String },
    #[error("two rules share the leading word {0}")]
    DuplicateLeadingWord(String),
    #[error("star partners do not form an involution at generator {0}")]
    BadStar(String),
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub star_partner: GenId,
    /// Eigenvalue exponents under the `K_i` (one entry per rank).
    pub weight: Vec<i64>,
}

/// Generators in order of precedence (index order is the lexicographic order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    gens: Vec<Generator>,
}

impl Alphabet {
    pub fn new(gens: Vec<Generator>) -> Result<Self, RewriteError> {
        for (i, g) in gens.iter().enumerate() {
            let partner = gens
                .get(g.star_partner as usize)
                .ok_or_else(|| RewriteError::BadStar(g.name.clone()))?;
            if partner.star_partner as usize != i {
                return Err(RewriteError::BadStar(g.name.clone()));
            }
        }
        Ok(Alphabet { gens })
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn lookup(&self, name: &str) -> Option<GenId> {
        self.gens.iter().position(|g| g.name == name).map(|i| i as GenId)
    }

    pub fn name(&self, g: GenId) -> &str {
        &self.gens[g as usize].name
    }

    /// Word from generator names.
    pub fn word(&self, names: &[&str]) -> Result<Word, RewriteError> {
        names
            .iter()
            .map(|n| self.lookup(n).ok_or_else(|| RewriteError::UnknownGenerator(n.to_string())))
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }

    pub fn expr(&self, names: &[&str]) -> Result<NCExpr, RewriteError> {
        Ok(NCExpr::basis(self.word(names)?))
    }

    /// Antilinear antiautomorphism: reverse each word and swap star partners.
    ///
    /// Coefficients pass through [`conjugate`], which is the identity on `Q(s)`.
    pub fn star(&self, e: &NCExpr) -> NCExpr {
        e.iter()
            .map(|(w, c)| {
                let rev = w.0.iter().rev().map(|&g| self.gens[g as usize].star_partner).collect();
                (Word(rev), conjugate(c))
            })
            .collect()
    }

    /// Total weight of a word under the `K_i`.
    pub fn word_weight(&self, w: &Word) -> Vec<i64> {
        let rank = self.gens.first().map_or(0, |g| g.weight.len());
        let mut out = vec![0; rank];
        for &g in &w.0 {
            for (o, x) in out.iter_mut().zip(&self.gens[g as usize].weight) {
                *o += x;
            }
        }
        out
    }

    pub fn format_word(&self, w: &Word) -> String {
        format_word_with(w, |g| self.gens[g as usize].name.clone())
    }

    pub fn format(&self, e: &NCExpr) -> String {
        format_lincomb(e, |w| self.format_word(w))
    }
}

/// Complex conjugation on coefficients; all coefficients here are real.
pub fn conjugate(c: &Scalar) -> Scalar {
    c.clone()
}

pub(crate) fn format_word_with(w: &Word, name: impl Fn(GenId) -> String) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < w.0.len() {
        let g = w.0[i];
        let mut j = i;
        while j < w.0.len() && w.0[j] == g {
            j += 1;
        }
        let n = name(g);
        if j - i == 1 {
            parts.push(n);
        } else {
            parts.push(format!("{}^{}", n, j - i));
        }
        i = j;
    }
    parts.join(" ")
}

/// A word in the generators. Ordered by length, then lexicographically by precedence.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<GenId>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Leftmost position at which `pat` occurs.
    pub fn find(&self, pat: &Word) -> Option<usize> {
        if pat.0.is_empty() || pat.0.len() > self.0.len() {
            return None;
        }
        self.0.windows(pat.0.len()).position(|w| w == pat.0.as_slice())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Element of a free associative algebra: a finite combination of words.
pub type NCExpr = LinComb<Word>;

/// Concatenation product in the free algebra (no reduction).
pub fn free_mul(a: &NCExpr, b: &NCExpr) -> NCExpr {
    a.bilinear(b, |u, v| LinComb::basis(u.concat(v)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: NCExpr,
}

/// Which side of an ambiguity produced a reduction.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub enum AmbiguityKind {
    Overlap,
    Inclusion,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct Ambiguity {
    pub kind: AmbiguityKind,
    pub rules: (usize, usize),
    pub word: String,
    pub first_reduction: String,
    pub second_reduction: String,
    pub resolved: bool,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct ConfluenceReport {
    pub presentation: String,
    pub degree_bound: usize,
    pub ambiguities: Vec<Ambiguity>,
}

impl ConfluenceReport {
    pub fn all_resolved(&self) -> bool {
        self.ambiguities.iter().all(|a| a.resolved)
    }

    pub fn broken(&self) -> impl Iterator<Item = &Ambiguity> {
        self.ambiguities.iter().filter(|a| !a.resolved)
    }
}

/// A presented algebra: alphabet, rewrite rules and a monomial order.
///
/// The order compares words by length, then by the sum of `order_weights`
/// over the letters, then lexicographically by generator precedence.
#[derive(Debug, Clone)]
pub struct Presentation {
    pub name: String,
    alphabet: Alphabet,
    rules: Vec<Rule>,
    order_weights: Vec<i64>,
    step_budget: usize,
}

type OrderKey = (usize, i64, Word);

impl Presentation {
    /// Degree-lexicographic order by generator precedence.
    pub fn new(name: &str, alphabet: Alphabet, rules: Vec<Rule>) -> Result<Self, RewriteError> {
        let n = alphabet.len();
        Self::with_order_weights(name, alphabet, rules, vec![0; n])
    }

    pub fn with_order_weights(
        name: &str,
        alphabet: Alphabet,
        rules: Vec<Rule>,
        order_weights: Vec<i64>,
    ) -> Result<Self, RewriteError> {
        let p = Presentation {
            name: name.to_string(),
            alphabet,
            rules,
            order_weights,
            step_budget: DEFAULT_STEP_BUDGET,
        };
        let mut seen = BTreeSet::new();
        for (i, r) in p.rules.iter().enumerate() {
            if !seen.insert(r.lhs.clone()) {
                return Err(RewriteError::DuplicateLeadingWord(p.alphabet.format_word(&r.lhs)));
            }
            let lk = p.order_key(&r.lhs);
            for (w, _) in &r.rhs {
                if p.order_key(w) >= lk {
                    return Err(RewriteError::NotDecreasing {
                        index: i,
                        detail: format!(
                            "{} is not below {}",
                            p.alphabet.format_word(w),
                            p.alphabet.format_word(&r.lhs)
                        ),
                    });
                }
            }
        }
        Ok(p)
    }

    pub fn with_step_budget(mut self, budget: usize) -> Self {
        self.step_budget = budget;
        self
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    fn order_key(&self, w: &Word) -> OrderKey {
        let wt = w.0.iter().map(|&g| self.order_weights[g as usize]).sum();
        (w.len(), wt, w.clone())
    }

    pub fn compare(&self, a: &Word, b: &Word) -> Ordering {
        self.order_key(a).cmp(&self.order_key(b))
    }

    /// Leftmost rule occurrence in `w`: (position, rule index).
    fn find_redex(&self, w: &Word) -> Option<(usize, usize)> {
        for pos in 0..w.len() {
            for (ri, r) in self.rules.iter().enumerate() {
                if w.0[pos..].starts_with(&r.lhs.0) {
                    return Some((pos, ri));
                }
            }
        }
        None
    }

    pub fn is_normal_word(&self, w: &Word) -> bool {
        self.find_redex(w).is_none()
    }

    /// Replace the occurrence of rule `ri` at `pos` in `w`.
    fn rewrite_at(&self, w: &Word, pos: usize, ri: usize) -> NCExpr {
        let r = &self.rules[ri];
        let prefix = &w.0[..pos];
        let suffix = &w.0[pos + r.lhs.len()..];
        r.rhs
            .iter()
            .map(|(m, c)| {
                let mut v = Vec::with_capacity(prefix.len() + m.len() + suffix.len());
                v.extend_from_slice(prefix);
                v.extend_from_slice(&m.0);
                v.extend_from_slice(suffix);
                (Word(v), c.clone())
            })
            .collect()
    }

    pub fn normal_form(&self, e: &NCExpr) -> Result<NCExpr, RewriteError> {
        let mut pending: BTreeMap<OrderKey, Scalar> = BTreeMap::new();
        for (w, c) in e {
            push_term(&mut pending, self.order_key(w), c.clone());
        }
        let mut out = NCExpr::zero();
        let mut steps = 0usize;
        while let Some((key, c)) = pending.pop_last() {
            let w = key.2;
            match self.find_redex(&w) {
                None => out.add_term(w, c),
                Some((pos, ri)) => {
                    steps += 1;
                    if steps > self.step_budget {
                        return Err(RewriteError::BudgetExhausted {
                            budget: self.step_budget,
                            word: self.alphabet.format_word(&w),
                        });
                    }
                    for (m, d) in &self.rewrite_at(&w, pos, ri) {
                        push_term(&mut pending, self.order_key(m), d * &c);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Normal form of a product.
    pub fn mul(&self, a: &NCExpr, b: &NCExpr) -> Result<NCExpr, RewriteError> {
        self.normal_form(&free_mul(a, b))
    }

    /// Normal form of the product of a sequence of factors.
    pub fn product(&self, factors: &[NCExpr]) -> Result<NCExpr, RewriteError> {
        let mut acc = NCExpr::basis(Word::empty());
        for f in factors {
            acc = self.mul(&acc, f)?;
        }
        Ok(acc)
    }

    /// Star followed by normal form.
    pub fn star(&self, e: &NCExpr) -> Result<NCExpr, RewriteError> {
        self.normal_form(&self.alphabet.star(e))
    }

    /// All normal words of the given length.
    pub fn normal_words(&self, len: usize) -> Vec<Word> {
        let n = self.alphabet.len() as GenId;
        let mut layer = vec![Word::empty()];
        for _ in 0..len {
            let mut next = Vec::new();
            for w in &layer {
                for g in 0..n {
                    let mut v = w.0.clone();
                    v.push(g);
                    let nw = Word(v);
                    // Only suffixes can create a new redex.
                    let fresh = self.rules.iter().any(|r| nw.0.ends_with(&r.lhs.0));
                    if !fresh {
                        next.push(nw);
                    }
                }
            }
            layer = next;
        }
        layer.sort();
        layer
    }

    /// Enumerate overlap and inclusion ambiguities up to `degree_bound` and
    /// test whether both reductions reach the same normal form.
    pub fn check_local_confluence(&self, degree_bound: usize) -> Result<ConfluenceReport, RewriteError> {
        let mut ambiguities = Vec::new();
        let fmt = |e: &NCExpr| self.alphabet.format(e);
        for (i, ri) in self.rules.iter().enumerate() {
            for (j, rj) in self.rules.iter().enumerate() {
                let a = &ri.lhs.0;
                let b = &rj.lhs.0;
                // Overlaps: a proper suffix of a equals a proper prefix of b.
                for k in 1..a.len().min(b.len()) {
                    if a[a.len() - k..] == b[..k] {
                        let mut w = a.clone();
                        w.extend_from_slice(&b[k..]);
                        if w.len() > degree_bound {
                            continue;
                        }
                        let word = Word(w);
                        let first = self.normal_form(&self.rewrite_at(&word, 0, i))?;
                        let second = self.normal_form(&self.rewrite_at(&word, a.len() - k, j))?;
                        ambiguities.push(Ambiguity {
                            kind: AmbiguityKind::Overlap,
                            rules: (i, j),
                            word: self.alphabet.format_word(&word),
                            resolved: first == second,
                            first_reduction: fmt(&first),
                            second_reduction: fmt(&second),
                        });
                    }
                }
                // Inclusions: b occurs inside a (distinct rules).
                if i != j && b.len() <= a.len() && a.len() <= degree_bound {
                    for pos in 0..=a.len() - b.len() {
                        if a[pos..pos + b.len()] == b[..] {
                            let word = ri.lhs.clone();
                            let first = self.normal_form(&self.rewrite_at(&word, 0, i))?;
                            let second = self.normal_form(&self.rewrite_at(&word, pos, j))?;
                            ambiguities.push(Ambiguity {
                                kind: AmbiguityKind::Inclusion,
                                rules: (i, j),
                                word: self.alphabet.format_word(&word),
                                resolved: first == second,
                                first_reduction: fmt(&first),
                                second_reduction: fmt(&second),
                            });
                        }
                    }
                }
            }
        }
        Ok(ConfluenceReport {
            presentation: self.name.clone(),
            degree_bound,
            ambiguities,
        })
    }
}

fn push_term(pending: &mut BTreeMap<OrderKey, Scalar>, key: OrderKey, c: Scalar) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match pending.entry(key) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            let s = o.get() + &c;
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

/// Split `e` by total degree, `grading[g]` being the degree of generator `g`.
pub fn grade(e: &NCExpr, grading: &[i64]) -> BTreeMap<i64, NCExpr> {
    let mut out: BTreeMap<i64, NCExpr> = BTreeMap::new();
    for (w, c) in e {
        let d = w.0.iter().map(|&g| grading[g as usize]).sum();
        out.entry(d).or_default().add_term(w.clone(), c.clone());
    }
    out
}

/// Generator ids of `Pol(C)_q`.
pub const Z: GenId = 0;
pub const ZSTAR: GenId = 1;

/// Alphabet `{z, z^*}` with `z < z^*`, weights `+2` and `-2`.
pub fn disc_alphabet() -> Alphabet {
    Alphabet::new(vec![
        Generator {
            name: "z".into(),
            star_partner: ZSTAR,
            weight: vec![2],
        },
        Generator {
            name: "z^*".into(),
            star_partner: Z,
            weight: vec![-2],
        },
    ])
    .expect("z and z^* are star partners")
}

/// Generator id of the vacuum projection in [`finite_alphabet`].
pub const F0: GenId = 2;

/// Alphabet `{z, z^*, f0}`; `f0` is self-adjoint of weight 0.
pub fn finite_alphabet() -> Alphabet {
    let mut gens = disc_alphabet().generators().to_vec();
    gens.push(Generator {
        name: "f0".into(),
        star_partner: F0,
        weight: vec![0],
    });
    Alphabet::new(gens).expect("star partners are consistent")
}

/// The disc relation oriented as `z^* z -> q^2 z z^* + (1 - q^2)`.
pub fn disc_rule() -> Rule {
    let mut rhs = NCExpr::term(Word(vec![Z, ZSTAR]), q(2));
    rhs.add_term(Word::empty(), int(1) - q(2));
    Rule {
        lhs: Word(vec![ZSTAR, Z]),
        rhs,
    }
}

/// `Pol(C)_q`: one generator `z` with `z^* z = q^2 z z^* + 1 - q^2`.
pub fn pol_c_q() -> Presentation {
    Presentation::new("pol_c_q", disc_alphabet(), vec![disc_rule()]).expect("valid presentation")
}

/// The normal monomial `z^a (z^*)^b`.
pub fn disc_monomial(a: usize, b: usize) -> Word {
    let mut v = vec![Z; a];
    v.extend(std::iter::repeat_n(ZSTAR, b));
    Word(v)
}

/// Exponents `(a, b)` of a normal word `z^a (z^*)^b`, if it is one.
pub fn disc_exponents(w: &Word) -> Option<(usize, usize)> {
    let a = w.0.iter().take_while(|&&g| g == Z).count();
    if w.0[a..].iter().all(|&g| g == ZSTAR) {
        Some((a, w.len() - a))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one() -> NCExpr {
        NCExpr::basis(Word::empty())
    }

    #[test]
    fn disc_relation_normal_form() {
        let p = pol_c_q();
        let zs_z = NCExpr::basis(Word(vec![ZSTAR, Z]));
        let mut expected = NCExpr::term(Word(vec![Z, ZSTAR]), q(2));
        expected.add_term(Word::empty(), int(1) - q(2));
        assert_eq!(p.normal_form(&zs_z).unwrap(), expected);
        assert_eq!(p.normal_form(&one()).unwrap(), one());
    }

    #[test]
    fn y_quasi_commutes_with_z() {
        // y = 1 - z z^*; z y - q^-2 y z = 0 and z^* y - q^2 y z^* = 0.
        let p = pol_c_q();
        let z = NCExpr::basis(Word(vec![Z]));
        let zs = NCExpr::basis(Word(vec![ZSTAR]));
        let y = one().sub(&NCExpr::basis(Word(vec![Z, ZSTAR])));
        let lhs = p.mul(&z, &y).unwrap().sub(&p.mul(&y, &z).unwrap().scale(&q(-2)));
        assert!(lhs.is_zero());
        let lhs = p.mul(&zs, &y).unwrap().sub(&p.mul(&y, &zs).unwrap().scale(&q(2)));
        assert!(lhs.is_zero());
    }

    #[test]
    fn creation_annihilation_form() {
        // a = (1-q^2)^(-1/2) z^*, a+ = (1-q^2)^(-1/2) z: a a+ - q^2 a+ a = 1
        // becomes z^* z - q^2 z z^* = 1 - q^2 after clearing the common factor.
        let p = pol_c_q();
        let e = NCExpr::basis(Word(vec![ZSTAR, Z]))
            .sub(&NCExpr::term(Word(vec![Z, ZSTAR]), q(2)))
            .sub(&one().scale(&(int(1) - q(2))));
        assert!(p.normal_form(&e).unwrap().is_zero());
    }

    #[test]
    fn star_examples() {
        let a = disc_alphabet();
        let p = pol_c_q();
        assert_eq!(a.star(&NCExpr::basis(Word(vec![Z]))), NCExpr::basis(Word(vec![ZSTAR])));
        let zzs = NCExpr::basis(Word(vec![Z, ZSTAR]));
        assert_eq!(a.star(&zzs), zzs);
        let nf = p.normal_form(&NCExpr::basis(Word(vec![ZSTAR, Z]))).unwrap();
        assert_eq!(p.star(&nf).unwrap(), nf);
    }

    #[test]
    fn grading_examples() {
        let p = pol_c_q();
        let deg = [1, -1];
        let z2 = NCExpr::basis(Word(vec![Z, Z]));
        assert_eq!(grade(&z2, &deg), BTreeMap::from([(2, z2.clone())]));
        let e = NCExpr::basis(Word(vec![Z])).add(&NCExpr::basis(Word(vec![Z, ZSTAR])));
        let g = grade(&e, &deg);
        assert_eq!(g[&1], NCExpr::basis(Word(vec![Z])));
        assert_eq!(g[&0], NCExpr::basis(Word(vec![Z, ZSTAR])));
        let nf = p.normal_form(&NCExpr::basis(Word(vec![ZSTAR, Z]))).unwrap();
        let g = grade(&nf, &deg);
        assert_eq!(g.len(), 1);
        assert_eq!(g[&0], nf);
    }

    fn xy_alphabet() -> Alphabet {
        Alphabet::new(vec![
            Generator { name: "x".into(), star_partner: 1, weight: vec![0] },
            Generator { name: "y".into(), star_partner: 0, weight: vec![0] },
        ])
        .unwrap()
    }

    #[test]
    fn confluence_fixtures() {
        let p = pol_c_q();
        let r = p.check_local_confluence(6).unwrap();
        assert!(r.all_resolved());

        let inverse_pair = Presentation::new(
            "inverse_pair",
            xy_alphabet(),
            vec![
                Rule { lhs: Word(vec![0, 1]), rhs: one() },
                Rule { lhs: Word(vec![1, 0]), rhs: one() },
            ],
        )
        .unwrap();
        let r = inverse_pair.check_local_confluence(4).unwrap();
        assert!(!r.ambiguities.is_empty());
        assert!(r.all_resolved());

        let broken = Presentation::new(
            "broken",
            xy_alphabet(),
            vec![
                Rule { lhs: Word(vec![0, 1]), rhs: NCExpr::basis(Word(vec![0])) },
                Rule { lhs: Word(vec![1, 0]), rhs: NCExpr::basis(Word(vec![1])) },
            ],
        )
        .unwrap();
        let r = broken.check_local_confluence(3).unwrap();
        let bad: Vec<_> = r.broken().collect();
        assert!(bad.iter().any(|a| a.word == "x y x"));
    }

    #[test]
    fn rejects_increasing_rules_and_duplicates() {
        let err = Presentation::new(
            "bad",
            xy_alphabet(),
            vec![Rule { lhs: Word(vec![0, 1]), rhs: NCExpr::basis(Word(vec![1, 0])) }],
        )
        .unwrap_err();
        assert!(matches!(err, RewriteError::NotDecreasing { .. }));
        let err = Presentation::new(
            "dup",
            xy_alphabet(),
            vec![
                Rule { lhs: Word(vec![1, 0]), rhs: one() },
                Rule { lhs: Word(vec![1, 0]), rhs: NCExpr::zero() },
            ],
        )
        .unwrap_err();
        assert!(matches!(err, RewriteError::DuplicateLeadingWord(_)));
    }

    #[test]
    fn step_budget_guards_rewriting() {
        let p = pol_c_q().with_step_budget(3);
        let w = NCExpr::basis(Word(vec![ZSTAR, ZSTAR, ZSTAR, Z, Z, Z]));
        assert!(matches!(p.normal_form(&w), Err(RewriteError::BudgetExhausted { .. })));
    }

    #[test]
    fn normal_words_are_z_then_zstar() {
        let p = pol_c_q();
        for n in 0..6 {
            let ws = p.normal_words(n);
            assert_eq!(ws.len(), n + 1);
            assert!(ws.iter().all(|w| disc_exponents(w).is_some()));
        }
    }
}
