//! `U_q(sl2)`-module algebras: q-difference operators on polynomials in `z`,
//! the conjugate action on polynomials in `z^*`, their extension to
//! `Pol(C)_q`, and the algebra with the vacuum projection `f0` adjoined.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use parking_lot::RwLock;
use rayon::prelude::*;

use crate::linear::{format_lincomb, LinComb};
use crate::ncpoly::{self, conjugate, disc_exponents, disc_monomial, NCExpr, Presentation, Word};
use crate::report::{CheckMode, CheckReport};
use crate::scalars::{int, q, qh, Scalar};
use crate::uqsl2::{self, Pbw, UqElement, UqGen};

/// A weight module given by the action of `E`, `F`, `K^±1` on basis keys.
pub trait UqModule: Sync {
    type Key: Ord + Clone + fmt::Debug + Send + Sync;

    fn act_generator(&self, g: UqGen, key: &Self::Key) -> LinComb<Self::Key>;

    /// `k` such that `K key = q^k key`.
    fn weight(&self, key: &Self::Key) -> i64;

    /// Printed form of a basis key; the unit prints as the empty string.
    fn format_key(&self, key: &Self::Key) -> String;

    fn format(&self, f: &LinComb<Self::Key>) -> String {
        format_lincomb(f, |k| self.format_key(k))
    }

    fn act_gen_elem(&self, g: UqGen, f: &LinComb<Self::Key>) -> LinComb<Self::Key> {
        f.map_linear(|k| self.act_generator(g, k))
    }

    /// Action of an arbitrary element; `F^a K^b E^c` applies `E` first.
    fn act(&self, x: &UqElement, f: &LinComb<Self::Key>) -> LinComb<Self::Key> {
        let mut out = LinComb::zero();
        for (m, c) in x {
            out.add_scaled(&self.act_pbw(m, f), c);
        }
        out
    }

    fn act_pbw(&self, m: &Pbw, f: &LinComb<Self::Key>) -> LinComb<Self::Key> {
        let mut v = f.clone();
        for _ in 0..m.e {
            v = self.act_gen_elem(UqGen::E, &v);
        }
        let kg = if m.k >= 0 { UqGen::K } else { UqGen::KInv };
        for _ in 0..m.k.unsigned_abs() {
            v = self.act_gen_elem(kg, &v);
        }
        for _ in 0..m.f {
            v = self.act_gen_elem(UqGen::F, &v);
        }
        v
    }
}

pub trait ModuleAlgebra: UqModule {
    fn unit_key(&self) -> Self::Key;

    fn mul_keys(&self, a: &Self::Key, b: &Self::Key) -> LinComb<Self::Key>;

    /// Basis keys of "degree" at most `degree_bound` (carrier-specific).
    fn basis(&self, degree_bound: usize) -> Vec<Self::Key>;

    fn unit(&self) -> LinComb<Self::Key> {
        LinComb::basis(self.unit_key())
    }

    fn mul(&self, a: &LinComb<Self::Key>, b: &LinComb<Self::Key>) -> LinComb<Self::Key> {
        a.bilinear(b, |x, y| self.mul_keys(x, y))
    }

    fn product(&self, factors: &[LinComb<Self::Key>]) -> LinComb<Self::Key> {
        factors.iter().fold(self.unit(), |acc, f| self.mul(&acc, f))
    }
}

pub trait StarAlgebra: ModuleAlgebra {
    fn star_key(&self, key: &Self::Key) -> LinComb<Self::Key>;

    fn star(&self, f: &LinComb<Self::Key>) -> LinComb<Self::Key> {
        let mut out = LinComb::zero();
        for (k, c) in f {
            out.add_scaled(&self.star_key(k), &conjugate(c));
        }
        out
    }
}

/// `ξ(f_1 ... f_n) = sum ξ_(1)(f_1) ... ξ_(n)(f_n)` using the iterated coproduct.
pub fn act_on_factors<M: ModuleAlgebra + ?Sized>(m: &M, g: UqGen, factors: &[LinComb<M::Key>]) -> LinComb<M::Key> {
    if factors.is_empty() {
        return m.unit().scale(&uqsl2::counit(&g.element()));
    }
    let delta = uqsl2::iterated_coproduct(g, factors.len());
    let mut out = LinComb::zero();
    for (legs, c) in &delta {
        let parts: Vec<_> = legs.iter().zip(factors).map(|(p, f)| m.act_pbw(p, f)).collect();
        if parts.iter().any(|p| p.is_zero()) {
            continue;
        }
        out.add_scaled(&m.product(&parts), c);
    }
    out
}

/// Split into `K`-eigencomponents, keyed by the exponent `k` of `q^k`.
pub fn weights<M: UqModule + ?Sized>(m: &M, f: &LinComb<M::Key>) -> BTreeMap<i64, LinComb<M::Key>> {
    let mut out: BTreeMap<i64, LinComb<M::Key>> = BTreeMap::new();
    for (k, c) in f {
        out.entry(m.weight(k)).or_default().add_term(k.clone(), c.clone());
    }
    out
}

// --- q-difference operators ---------------------------------------------------

/// `f(q^k z)` for a Laurent polynomial `f`.
pub fn dilate(f: &LinComb<i64>, k: i64) -> LinComb<i64> {
    f.iter().map(|(n, c)| (*n, c * &q(k * n))).collect()
}

/// Shift exponents by `d`, i.e. multiply by `z^d`.
fn shift(f: &LinComb<i64>, d: i64) -> LinComb<i64> {
    f.iter().map(|(n, c)| (n + d, c.clone())).collect()
}

/// `F f(z) = q^(1/2) (f(q^-2 z) - f(z)) / (q^-2 z - z)`.
pub fn q_difference_f(f: &LinComb<i64>) -> LinComb<i64> {
    let numer = dilate(f, -2).sub(f);
    debug_assert!(numer.coeff(&0).is_zero());
    let c = qh(1).try_div(&(q(-2) - int(1))).unwrap();
    shift(&numer, -1).scale(&c)
}

/// `E f(z) = -q^(1/2) z^2 (f(z) - f(q^2 z)) / (z - q^2 z)`.
pub fn q_difference_e(f: &LinComb<i64>) -> LinComb<i64> {
    let numer = f.sub(&dilate(f, 2));
    debug_assert!(numer.coeff(&0).is_zero());
    let c = -qh(1).try_div(&(int(1) - q(2))).unwrap();
    shift(&numer, 1).scale(&c)
}

fn q_difference_action(g: UqGen, f: &LinComb<i64>) -> LinComb<i64> {
    match g {
        UqGen::K => dilate(f, 2),
        UqGen::KInv => dilate(f, -2),
        UqGen::F => q_difference_f(f),
        UqGen::E => q_difference_e(f),
    }
}

fn format_power(name: &str, n: i64) -> String {
    match n {
        0 => String::new(),
        1 => name.to_string(),
        _ => format!("{name}^{n}"),
    }
}

/// `C[z]` with the q-difference action; key `n` is `z^n`.
#[derive(Debug, Clone, Copy, Default)]
pub struct HoloPoly;

impl UqModule for HoloPoly {
    type Key = i64;

    fn act_generator(&self, g: UqGen, key: &i64) -> LinComb<i64> {
        q_difference_action(g, &LinComb::basis(*key))
    }

    fn weight(&self, key: &i64) -> i64 {
        2 * key
    }

    fn format_key(&self, key: &i64) -> String {
        format_power("z", *key)
    }
}

impl ModuleAlgebra for HoloPoly {
    fn unit_key(&self) -> i64 {
        0
    }

    fn mul_keys(&self, a: &i64, b: &i64) -> LinComb<i64> {
        LinComb::basis(a + b)
    }

    fn basis(&self, degree_bound: usize) -> Vec<i64> {
        (0..=degree_bound as i64).collect()
    }
}

/// `C[z, z^-1]`, the same operators on Laurent polynomials.
#[derive(Debug, Clone, Copy, Default)]
pub struct LaurentPoly;

impl UqModule for LaurentPoly {
    type Key = i64;

    fn act_generator(&self, g: UqGen, key: &i64) -> LinComb<i64> {
        q_difference_action(g, &LinComb::basis(*key))
    }

    fn weight(&self, key: &i64) -> i64 {
        2 * key
    }

    fn format_key(&self, key: &i64) -> String {
        format_power("z", *key)
    }
}

impl ModuleAlgebra for LaurentPoly {
    fn unit_key(&self) -> i64 {
        0
    }

    fn mul_keys(&self, a: &i64, b: &i64) -> LinComb<i64> {
        LinComb::basis(a + b)
    }

    fn basis(&self, degree_bound: usize) -> Vec<i64> {
        let d = degree_bound as i64;
        (-d..=d).collect()
    }
}

/// `C[z^*]` with `η f^* = (S(η)^* f)^*`; key `n` is `(z^*)^n`.
#[derive(Debug, Clone)]
pub struct AntiHolo {
    twisted: HashMap<UqGen, UqElement>,
}

impl Default for AntiHolo {
    fn default() -> Self {
        Self::new()
    }
}

impl AntiHolo {
    pub fn new() -> Self {
        let twisted = UqGen::ALL
            .iter()
            .map(|&g| (g, uqsl2::star_of_antipode(&g.element())))
            .collect();
        AntiHolo { twisted }
    }
}

impl UqModule for AntiHolo {
    type Key = u32;

    fn act_generator(&self, g: UqGen, key: &u32) -> LinComb<u32> {
        let image = HoloPoly.act(&self.twisted[&g], &LinComb::basis(i64::from(*key)));
        image.iter().map(|(n, c)| (*n as u32, conjugate(c))).collect()
    }

    fn weight(&self, key: &u32) -> i64 {
        -2 * i64::from(*key)
    }

    fn format_key(&self, key: &u32) -> String {
        format_power("z^*", i64::from(*key))
    }
}

impl ModuleAlgebra for AntiHolo {
    fn unit_key(&self) -> u32 {
        0
    }

    fn mul_keys(&self, a: &u32, b: &u32) -> LinComb<u32> {
        LinComb::basis(a + b)
    }

    fn basis(&self, degree_bound: usize) -> Vec<u32> {
        (0..=degree_bound as u32).collect()
    }
}

// --- Pol(C)_q ------------------------------------------------------------------

/// `Pol(C)_q` in the normal basis `z^a (z^*)^b`, key `(a, b)`.
///
/// Products are normal-ordered by the rewrite engine; the action on a mixed
/// monomial comes from the coproduct applied to `z^a` and `(z^*)^b`.
pub struct PolCq {
    presentation: Presentation,
    anti: AntiHolo,
    swap_cache: RwLock<HashMap<(u32, u32), LinComb<(u32, u32)>>>,
}

impl Default for PolCq {
    fn default() -> Self {
        Self::new()
    }
}

impl PolCq {
    pub fn new() -> Self {
        PolCq {
            presentation: ncpoly::pol_c_q(),
            anti: AntiHolo::new(),
            swap_cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    /// Convert a normal-form expression to the `(a, b)` basis.
    pub fn from_ncexpr(&self, e: &NCExpr) -> LinComb<(u32, u32)> {
        let nf = self.presentation.normal_form(e).expect("Pol(C)_q rewriting terminates");
        nf.iter()
            .map(|(w, c)| {
                let (a, b) = disc_exponents(w).expect("normal words are z^a z*^b");
                ((a as u32, b as u32), c.clone())
            })
            .collect()
    }

    pub fn to_ncexpr(&self, f: &LinComb<(u32, u32)>) -> NCExpr {
        f.iter()
            .map(|((a, b), c)| (disc_monomial(*a as usize, *b as usize), c.clone()))
            .collect()
    }

    /// Normal form of `(z^*)^b z^c`.
    pub fn swap(&self, b: u32, c: u32) -> LinComb<(u32, u32)> {
        if b == 0 || c == 0 {
            return LinComb::basis((c, b));
        }
        if let Some(v) = self.swap_cache.read().get(&(b, c)) {
            return v.clone();
        }
        let mut letters = vec![ncpoly::ZSTAR; b as usize];
        letters.extend(std::iter::repeat_n(ncpoly::Z, c as usize));
        let v = self.from_ncexpr(&NCExpr::basis(Word(letters)));
        self.swap_cache.write().insert((b, c), v.clone());
        v
    }

    fn holo_part(&self, g: UqGen, a: u32) -> LinComb<(u32, u32)> {
        HoloPoly
            .act_generator(g, &i64::from(a))
            .iter()
            .map(|(n, c)| ((*n as u32, 0), c.clone()))
            .collect()
    }

    fn anti_part(&self, g: UqGen, b: u32) -> LinComb<(u32, u32)> {
        self.anti.act_generator(g, &b).iter().map(|(n, c)| ((0, *n), c.clone())).collect()
    }
}

impl UqModule for PolCq {
    type Key = (u32, u32);

    fn act_generator(&self, g: UqGen, key: &(u32, u32)) -> LinComb<(u32, u32)> {
        let (a, b) = *key;
        if b == 0 {
            return self.holo_part(g, a);
        }
        if a == 0 {
            return self.anti_part(g, b);
        }
        act_on_factors(self, g, &[LinComb::basis((a, 0)), LinComb::basis((0, b))])
    }

    fn weight(&self, key: &(u32, u32)) -> i64 {
        2 * (i64::from(key.0) - i64::from(key.1))
    }

    fn format_key(&self, key: &(u32, u32)) -> String {
        let parts: Vec<String> = [format_power("z", i64::from(key.0)), format_power("z^*", i64::from(key.1))]
            .into_iter()
            .filter(|s| !s.is_empty())
            .collect();
        parts.join(" ")
    }
}

impl ModuleAlgebra for PolCq {
    fn unit_key(&self) -> (u32, u32) {
        (0, 0)
    }

    fn mul_keys(&self, x: &(u32, u32), y: &(u32, u32)) -> LinComb<(u32, u32)> {
        let (a, b) = *x;
        let (c, d) = *y;
        self.swap(b, c).iter().map(|((i, j), s)| ((a + i, j + d), s.clone())).collect()
    }

    /// All `z^a (z^*)^b` with `a, b <= degree_bound`.
    fn basis(&self, degree_bound: usize) -> Vec<(u32, u32)> {
        let d = degree_bound as u32;
        (0..=d).flat_map(|a| (0..=d).map(move |b| (a, b))).collect()
    }
}

impl StarAlgebra for PolCq {
    fn star_key(&self, key: &(u32, u32)) -> LinComb<(u32, u32)> {
        LinComb::basis((key.1, key.0))
    }
}

// --- f0-extended algebra ------------------------------------------------------

/// Basis of the algebra generated by `Pol(C)_q` and `f0`:
/// `Pol(a, b) = z^a (z^*)^b` and `Fin(a, b) = z^a f0 (z^*)^b`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtKey {
    Pol(u32, u32),
    Fin(u32, u32),
}

impl fmt::Debug for ExtKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtKey::Pol(a, b) => write!(f, "z^{a} z*^{b}"),
            ExtKey::Fin(a, b) => write!(f, "z^{a} f0 z*^{b}"),
        }
    }
}

pub type ExtendedElement = LinComb<ExtKey>;

/// `E f0 = c z f0` with `c = -q^(1/2)/(1 - q^2)`.
pub fn f0_e_coefficient() -> Scalar {
    -qh(1).try_div(&(int(1) - q(2))).unwrap()
}

/// `F f0 = c f0 z^*` with `c = -q^(1/2)/(q^-2 - 1)`.
pub fn f0_f_coefficient() -> Scalar {
    -qh(1).try_div(&(q(-2) - int(1))).unwrap()
}

/// The algebra of finite functions together with `Pol(C)_q`.
///
/// `f0^2 = f0`, `f0^* = f0`, `f0 z = 0 = z^* f0`, so between two `f0`'s only the
/// scalar part of a normal-ordered `(z^*)^b z^c` survives.
#[derive(Default)]
pub struct ExtendedFinite {
    pol: PolCq,
    fin_actions: RwLock<HashMap<(UqGen, ExtKey), ExtendedElement>>,
}

impl ExtendedFinite {
    pub fn new() -> Self {
        ExtendedFinite {
            pol: PolCq::new(),
            fin_actions: RwLock::new(HashMap::new()),
        }
    }

    pub fn pol(&self) -> &PolCq {
        &self.pol
    }

    fn lift(f: &LinComb<(u32, u32)>) -> ExtendedElement {
        f.iter().map(|((a, b), c)| (ExtKey::Pol(*a, *b), c.clone())).collect()
    }

    fn act_f0(&self, g: UqGen) -> ExtendedElement {
        match g {
            UqGen::K | UqGen::KInv => ExtendedElement::basis(ExtKey::Fin(0, 0)),
            UqGen::E => ExtendedElement::term(ExtKey::Fin(1, 0), f0_e_coefficient()),
            UqGen::F => ExtendedElement::term(ExtKey::Fin(0, 1), f0_f_coefficient()),
        }
    }
}

impl UqModule for ExtendedFinite {
    type Key = ExtKey;

    fn act_generator(&self, g: UqGen, key: &ExtKey) -> ExtendedElement {
        match *key {
            ExtKey::Pol(a, b) => Self::lift(&self.pol.act_generator(g, &(a, b))),
            ExtKey::Fin(0, 0) => self.act_f0(g),
            ExtKey::Fin(a, b) => {
                if let Some(hit) = self.fin_actions.read().get(&(g, *key)) {
                    return hit.clone();
                }
                let mut factors = Vec::new();
                if a > 0 {
                    factors.push(ExtendedElement::basis(ExtKey::Pol(a, 0)));
                }
                factors.push(ExtendedElement::basis(ExtKey::Fin(0, 0)));
                if b > 0 {
                    factors.push(ExtendedElement::basis(ExtKey::Pol(0, b)));
                }
                let out = act_on_factors(self, g, &factors);
                self.fin_actions.write().insert((g, *key), out.clone());
                out
            }
        }
    }

    fn weight(&self, key: &ExtKey) -> i64 {
        match *key {
            ExtKey::Pol(a, b) | ExtKey::Fin(a, b) => 2 * (i64::from(a) - i64::from(b)),
        }
    }

    fn format_key(&self, key: &ExtKey) -> String {
        let (a, b, mid) = match *key {
            ExtKey::Pol(a, b) => (a, b, None),
            ExtKey::Fin(a, b) => (a, b, Some("f0".to_string())),
        };
        [Some(format_power("z", i64::from(a))), mid, Some(format_power("z^*", i64::from(b)))]
            .into_iter()
            .flatten()
            .filter(|s| !s.is_empty())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl ModuleAlgebra for ExtendedFinite {
    fn unit_key(&self) -> ExtKey {
        ExtKey::Pol(0, 0)
    }

    fn mul_keys(&self, x: &ExtKey, y: &ExtKey) -> ExtendedElement {
        match (*x, *y) {
            (ExtKey::Pol(a, b), ExtKey::Pol(c, d)) => Self::lift(&self.pol.mul_keys(&(a, b), &(c, d))),
            // z^a (z*)^b z^c f0 (z*)^d: z^* f0 = 0 kills every term with a z^* left over.
            (ExtKey::Pol(a, b), ExtKey::Fin(c, d)) => self
                .pol
                .swap(b, c)
                .iter()
                .filter(|((_, j), _)| *j == 0)
                .map(|((i, _), s)| (ExtKey::Fin(a + i, d), s.clone()))
                .collect(),
            // z^a f0 (z*)^b z^c (z*)^d: f0 z = 0.
            (ExtKey::Fin(a, b), ExtKey::Pol(c, d)) => self
                .pol
                .swap(b, c)
                .iter()
                .filter(|((i, _), _)| *i == 0)
                .map(|((_, j), s)| (ExtKey::Fin(a, j + d), s.clone()))
                .collect(),
            (ExtKey::Fin(a, b), ExtKey::Fin(c, d)) => {
                let s = self.pol.swap(b, c).coeff(&(0, 0));
                ExtendedElement::term(ExtKey::Fin(a, d), s)
            }
        }
    }

    /// `Pol(a, b)` and `Fin(a, b)` with `a, b <= degree_bound`.
    fn basis(&self, degree_bound: usize) -> Vec<ExtKey> {
        let d = degree_bound as u32;
        let pol = (0..=d).flat_map(|a| (0..=d).map(move |b| ExtKey::Pol(a, b)));
        let fin = (0..=d).flat_map(|a| (0..=d).map(move |b| ExtKey::Fin(a, b)));
        pol.chain(fin).collect()
    }
}

impl StarAlgebra for ExtendedFinite {
    fn star_key(&self, key: &ExtKey) -> ExtendedElement {
        match *key {
            ExtKey::Pol(a, b) => ExtendedElement::basis(ExtKey::Pol(b, a)),
            ExtKey::Fin(a, b) => ExtendedElement::basis(ExtKey::Fin(b, a)),
        }
    }
}

// --- carriers by name ---------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Carrier {
    Holomorphic,
    Laurent,
    Antiholomorphic,
    PolCq,
    Extended,
}

impl Carrier {
    pub const ALL: [Carrier; 5] = [
        Carrier::Holomorphic,
        Carrier::Laurent,
        Carrier::Antiholomorphic,
        Carrier::PolCq,
        Carrier::Extended,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Carrier::Holomorphic => "holo",
            Carrier::Laurent => "laurent",
            Carrier::Antiholomorphic => "antiholo",
            Carrier::PolCq => "pol",
            Carrier::Extended => "extended",
        }
    }

    pub fn from_name(s: &str) -> Option<Carrier> {
        match s {
            "holo" | "C[z]" => Some(Carrier::Holomorphic),
            "laurent" | "C[z,z^-1]" => Some(Carrier::Laurent),
            "antiholo" | "C[z^*]" => Some(Carrier::Antiholomorphic),
            "pol" | "pol_c_q" | "Pol(C)_q" => Some(Carrier::PolCq),
            "extended" | "finite" => Some(Carrier::Extended),
            _ => None,
        }
    }
}

// --- checks ---------------------------------------------------------------------

fn counit_of(g: UqGen) -> Scalar {
    uqsl2::counit(&g.element())
}

/// `ξ(fg) = sum ξ_(1)(f) ξ_(2)(g)` on basis pairs and `ξ 1 = ε(ξ) 1`.
pub fn module_algebra_check<M: ModuleAlgebra>(m: &M, name: &str, degree_bound: usize) -> CheckReport {
    let mut report = CheckReport::new(
        format!("module_algebra/{name}"),
        "ξ(fg) = Σ ξ_(1)(f) ξ_(2)(g), ξ·1 = ε(ξ)1",
        CheckMode::Exact,
    );
    for g in UqGen::ALL {
        let lhs = m.act_gen_elem(g, &m.unit());
        let rhs = m.unit().scale(&counit_of(g));
        report.record(lhs == rhs, || format!("{g}·1 = {}", m.format(&lhs)));
    }
    let basis = m.basis(degree_bound);
    let pairs: Vec<_> = basis.iter().flat_map(|a| basis.iter().map(move |b| (a, b))).collect();
    let outcomes: Vec<Option<String>> = pairs
        .par_iter()
        .flat_map_iter(|(a, b)| {
            let fa = LinComb::basis((*a).clone());
            let fb = LinComb::basis((*b).clone());
            let prod = m.mul(&fa, &fb);
            UqGen::ALL.into_iter().map(move |g| {
                let lhs = m.act_gen_elem(g, &prod);
                let rhs = act_on_factors(m, g, &[fa.clone(), fb.clone()]);
                (lhs != rhs).then(|| {
                    format!(
                        "{g}({} · {}): {} vs {}",
                        m.format_key(a),
                        m.format_key(b),
                        m.format(&lhs),
                        m.format(&rhs)
                    )
                })
            })
        })
        .collect();
    report.absorb(outcomes);
    report
}

/// `(ξ f)^* = S(ξ)^* f^*` on generators and basis elements.
pub fn star_compat_check<M: StarAlgebra>(m: &M, name: &str, degree_bound: usize) -> CheckReport {
    let mut report = CheckReport::new(format!("star_compat/{name}"), "(ξf)* = S(ξ)* f*", CheckMode::Exact);
    let twisted: Vec<(UqGen, UqElement)> = UqGen::ALL
        .iter()
        .map(|&g| (g, uqsl2::star_of_antipode(&g.element())))
        .collect();
    let basis = m.basis(degree_bound);
    let outcomes: Vec<Option<String>> = basis
        .par_iter()
        .flat_map_iter(|k| {
            let f = LinComb::basis(k.clone());
            let fs = m.star(&f);
            twisted.iter().map(move |(g, t)| {
                let lhs = m.star(&m.act_gen_elem(*g, &f));
                let rhs = m.act(t, &fs);
                (lhs != rhs).then(|| format!("{g}, f = {}: {} vs {}", m.format_key(k), m.format(&lhs), m.format(&rhs)))
            })
        })
        .collect();
    report.absorb(outcomes);
    report
}

/// `(ξη)·f = ξ·(η·f)` for generator pairs.
pub fn representation_check<M: ModuleAlgebra>(m: &M, name: &str, degree_bound: usize) -> CheckReport {
    let mut report = CheckReport::new(format!("representation/{name}"), "(ξη)f = ξ(ηf)", CheckMode::Exact);
    let basis = m.basis(degree_bound);
    let gen_pairs: Vec<(UqGen, UqGen, UqElement)> = UqGen::ALL
        .iter()
        .flat_map(|&a| UqGen::ALL.iter().map(move |&b| (a, b, uqsl2::multiply(&a.element(), &b.element()))))
        .collect();
    let outcomes: Vec<Option<String>> = basis
        .par_iter()
        .flat_map_iter(|k| {
            let f = LinComb::basis(k.clone());
            gen_pairs.iter().map(move |(a, b, ab)| {
                let lhs = m.act(ab, &f);
                let rhs = m.act_gen_elem(*a, &m.act_gen_elem(*b, &f));
                (lhs != rhs).then(|| format!("{a}{b} on {}", m.format_key(k)))
            })
        })
        .collect();
    report.absorb(outcomes);
    report
}

/// The action respects the defining relation: acting on any word in `z, z^*`
/// letter by letter (through the coproduct) agrees with acting on its normal form.
pub fn relation_ideal_check(pol: &PolCq, max_len: usize) -> CheckReport {
    let mut report = CheckReport::new(
        "relation_ideal/pol",
        "ξ(z*z − q²zz* − (1−q²)) = 0 in Pol(C)_q",
        CheckMode::Exact,
    );
    for len in 0..=max_len {
        for bits in 0..(1u32 << len) {
            let letters: Vec<(u32, u32)> = (0..len)
                .map(|i| if bits >> i & 1 == 1 { (0, 1) } else { (1, 0) })
                .collect();
            let factors: Vec<_> = letters.iter().map(|k| LinComb::basis(*k)).collect();
            let nf = pol.product(&factors);
            for g in UqGen::ALL {
                let lhs = act_on_factors(pol, g, &factors);
                let rhs = pol.act_gen_elem(g, &nf);
                report.record(lhs == rhs, || format!("{g} on word {:?}", letters));
            }
        }
    }
    report
}

/// `K key = q^weight(key) key` on every basis key, plus the sign conventions
/// of the holomorphic and antiholomorphic carriers.
pub fn weight_check(degree_bound: usize) -> CheckReport {
    let mut report = CheckReport::new(
        "weights",
        "weights of C[z] are ≥ 0, of C[z*] ≤ 0; weight 0 of C[z] is one-dimensional",
        CheckMode::Exact,
    );
    fn diagonal<M: ModuleAlgebra>(m: &M, bound: usize, report: &mut CheckReport) {
        for k in m.basis(bound) {
            let f = LinComb::basis(k.clone());
            let kf = m.act_gen_elem(UqGen::K, &f);
            report.record(kf == f.scale(&q(m.weight(&k))), || {
                format!("K {} is not q^{} times itself", m.format_key(&k), m.weight(&k))
            });
        }
    }
    diagonal(&HoloPoly, degree_bound, &mut report);
    diagonal(&LaurentPoly, degree_bound, &mut report);
    diagonal(&AntiHolo::new(), degree_bound, &mut report);
    diagonal(&PolCq::new(), degree_bound.min(4), &mut report);
    diagonal(&ExtendedFinite::new(), degree_bound.min(3), &mut report);
    for n in HoloPoly.basis(degree_bound) {
        report.record(HoloPoly.weight(&n) >= 0, || format!("z^{n} has negative weight"));
    }
    for n in AntiHolo::new().basis(degree_bound) {
        report.record(AntiHolo::new().weight(&n) <= 0, || format!("z*^{n} has positive weight"));
    }
    let zero: Vec<_> = HoloPoly.basis(degree_bound).into_iter().filter(|n| HoloPoly.weight(n) == 0).collect();
    report.record(zero == vec![0], || format!("weight-0 part of C[z] spanned by {zero:?}"));
    report
}

/// `z` is the lowest vector characterized by `K^±1 z = q^±2 z`, `F z = q^(1/2)`.
pub fn z_low_check() -> CheckReport {
    let mut report = CheckReport::new("z_low", "K^±1 z = q^±2 z, F z = q^(1/2)", CheckMode::Exact);
    let z = LinComb::basis(1i64);
    report.record(HoloPoly.act_gen_elem(UqGen::K, &z) == z.scale(&q(2)), || "K z".into());
    report.record(HoloPoly.act_gen_elem(UqGen::KInv, &z) == z.scale(&q(-2)), || "K^-1 z".into());
    report.record(HoloPoly.act_gen_elem(UqGen::F, &z) == LinComb::term(0, qh(1)), || "F z".into());
    report
}

/// `f0 ψ = 0` and `ψ^* f0 = 0` for `ψ = z^n`, `n >= 1`; `f0^2 = f0`; `f0^* = f0`.
pub fn vacuum_projection_check(degree_bound: usize) -> CheckReport {
    let ext = ExtendedFinite::new();
    let mut report = CheckReport::new(
        "f0_relations",
        "f0² = f0, f0* = f0, f0 ψ = ψ* f0 = 0",
        CheckMode::Exact,
    );
    let f0 = ExtendedElement::basis(ExtKey::Fin(0, 0));
    report.record(ext.mul(&f0, &f0) == f0, || "f0^2".into());
    report.record(ext.star(&f0) == f0, || "f0^*".into());
    for n in 1..=degree_bound as u32 {
        let psi = ExtendedElement::basis(ExtKey::Pol(n, 0));
        let psi_star = ext.star(&psi);
        report.record(ext.mul(&f0, &psi).is_zero(), || format!("f0 z^{n}"));
        report.record(ext.mul(&psi_star, &f0).is_zero(), || format!("z*^{n} f0"));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: i64) -> LinComb<i64> {
        LinComb::basis(n)
    }

    #[test]
    fn holomorphic_examples() {
        assert_eq!(HoloPoly.act_gen_elem(UqGen::K, &z(3)), z(3).scale(&q(6)));
        assert_eq!(HoloPoly.act_gen_elem(UqGen::F, &z(1)), z(0).scale(&qh(1)));
        assert_eq!(HoloPoly.act_gen_elem(UqGen::E, &z(1)), z(2).scale(&-qh(1)));
        assert!(HoloPoly.act_gen_elem(UqGen::F, &z(0)).is_zero());
        assert!(HoloPoly.act_gen_elem(UqGen::E, &z(0)).is_zero());
    }

    #[test]
    fn laurent_e_on_inverse() {
        assert_eq!(LaurentPoly.act_gen_elem(UqGen::E, &z(-1)), z(0).scale(&qh(-3)));
    }

    #[test]
    fn antiholomorphic_examples() {
        let anti = AntiHolo::new();
        let zs = LinComb::basis(1u32);
        assert_eq!(anti.act_gen_elem(UqGen::E, &zs), LinComb::term(0u32, qh(-3)));
        assert_eq!(anti.act_gen_elem(UqGen::K, &zs), zs.scale(&q(-2)));
        assert_eq!(anti.act_gen_elem(UqGen::F, &zs), LinComb::term(2u32, -qh(5)));
    }

    #[test]
    fn f0_rules() {
        let ext = ExtendedFinite::new();
        let f0 = ExtendedElement::basis(ExtKey::Fin(0, 0));
        assert_eq!(
            ext.act_gen_elem(UqGen::E, &f0),
            ExtendedElement::term(ExtKey::Fin(1, 0), -qh(1).try_div(&(int(1) - q(2))).unwrap())
        );
        assert_eq!(ext.act_gen_elem(UqGen::K, &f0), f0);
        assert_eq!(f0_f_coefficient(), -qh(5).try_div(&(int(1) - q(2))).unwrap());
    }

    #[test]
    fn products_through_f0() {
        let ext = ExtendedFinite::new();
        let a = ExtendedElement::basis(ExtKey::Fin(0, 1));
        let b = ExtendedElement::basis(ExtKey::Fin(1, 0));
        assert_eq!(ext.mul(&a, &b), ExtendedElement::term(ExtKey::Fin(0, 0), int(1) - q(2)));
        assert_eq!(ext.mul(&b, &a), ExtendedElement::basis(ExtKey::Fin(1, 1)));
    }

    #[test]
    fn star_compat_k_on_z() {
        let pol = PolCq::new();
        let zk = LinComb::basis((1u32, 0u32));
        let lhs = pol.star(&pol.act_gen_elem(UqGen::K, &zk));
        assert_eq!(lhs, LinComb::term((0, 1), q(2)));
        let rhs = pol.act(&uqsl2::star_of_antipode(&uqsl2::k_pow(1)), &pol.star(&zk));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn small_checks_pass() {
        let pol = PolCq::new();
        for r in [
            module_algebra_check(&pol, "pol", 2),
            star_compat_check(&pol, "pol", 2),
            representation_check(&pol, "pol", 2),
            relation_ideal_check(&pol, 3),
            module_algebra_check(&HoloPoly, "holo", 3),
            module_algebra_check(&LaurentPoly, "laurent", 3),
            module_algebra_check(&AntiHolo::new(), "antiholo", 3),
            weight_check(4),
            z_low_check(),
            vacuum_projection_check(3),
        ] {
            assert!(r.passed(), "{}: {:?}", r.name, r.failures);
        }
    }

    #[test]
    fn extended_small_checks_pass() {
        let ext = ExtendedFinite::new();
        for r in [module_algebra_check(&ext, "ext", 2), star_compat_check(&ext, "ext", 2)] {
            assert!(r.passed(), "{}: {:?}", r.name, r.failures);
        }
    }

    #[test]
    fn weights_split() {
        let pol = PolCq::new();
        let f = LinComb::basis((1u32, 0u32)).add(&LinComb::basis((1, 1)));
        let w = weights(&pol, &f);
        assert_eq!(w.len(), 2);
        assert_eq!(w[&2], LinComb::basis((1, 0)));
    }
}
