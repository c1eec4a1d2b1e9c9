//! Chevalley basis, PBW normal ordering in U(g), the transpose
//! antiautomorphism, the projection U(g) → U(h) and the Casimir element.
//!
//! Basis layout (`d = 2m + l`):
//!
//! | index            | element                              |
//! |------------------|--------------------------------------|
//! | `0 .. m`         | `y_{β_m}, …, y_{β_1}` (descending)    |
//! | `m .. m+l`       | `h_1, …, h_l`                        |
//! | `m+l .. d`       | `x_{β_1}, …, x_{β_m}` (ascending)     |
//!
//! where `β_1 < … < β_m` is the root order of [`RootSystem::positive_roots`].
//! A PBW monomial is an exponent vector over this ordered basis, so every
//! normal-ordered monomial reads `n⁻ · h · n`.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::Poly;
use crate::rational::{self, q, Q};
use crate::rootdata::{RootSystem, Weight};

/// Products `monomial · b_k` are memoized only while every exponent stays below this.
pub const MEMO_EXPONENT_BOUND: u32 = 8;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Self { exps }
    }

    pub fn one(d: usize) -> Self {
        Self { exps: vec![0; d] }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    fn last_factor(&self) -> Option<usize> {
        self.exps.iter().rposition(|&e| e > 0)
    }

    fn with_delta(&self, k: usize, delta: i32) -> Monomial {
        let mut exps = self.exps.clone();
        exps[k] = (exps[k] as i32 + delta) as u32;
        Monomial { exps }
    }
}

/// Degree first, then lexicographic on exponents.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A normal-ordered element of U(g).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UEAElement {
    dim: usize,
    terms: BTreeMap<Monomial, Q>,
}

impl UEAElement {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(dim: usize) -> Self {
        Self::monomial(Monomial::one(dim), Q::one())
    }

    pub fn monomial(m: Monomial, c: Q) -> Self {
        let mut out = Self::zero(m.exps.len());
        out.add_term(m, c);
        out
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        Self::monomial(Monomial::one(dim).with_delta(i, 1), Q::one())
    }

    pub fn dim(&self) -> usize {
        self.dim
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

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &UEAElement, c: &Q) {
        for (m, x) in &other.terms {
            self.add_term(m.clone(), x * c);
        }
    }

    pub fn add(&self, other: &UEAElement) -> UEAElement {
        let mut out = self.clone();
        out.add_scaled(other, &Q::one());
        out
    }

    pub fn sub(&self, other: &UEAElement) -> UEAElement {
        let mut out = self.clone();
        out.add_scaled(other, &-Q::one());
        out
    }

    pub fn scale(&self, c: &Q) -> UEAElement {
        let mut out = UEAElement::zero(self.dim);
        out.add_scaled(self, c);
        out
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exps: Vec<u32>,
    #[serde(with = "rational::serde_q")]
    coef: Q,
}

impl Serialize for UEAElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<TermRepr> = self
            .terms
            .iter()
            .map(|(m, c)| TermRepr {
                exps: m.exps.clone(),
                coef: c.clone(),
            })
            .collect();
        v.serialize(s)
    }
}

/// The empty array carries no dimension and reads back as a zero of `dim` 0.
impl<'de> Deserialize<'de> for UEAElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<TermRepr>::deserialize(d)?;
        let dim = v.first().map_or(0, |t| t.exps.len());
        let mut out = UEAElement::zero(dim);
        for t in v {
            if t.exps.len() != dim {
                return Err(D::Error::custom("terms of differing length"));
            }
            out.add_term(Monomial::new(t.exps), t.coef);
        }
        Ok(out)
    }
}

/// An element of g as a sparse combination of basis vectors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LieElement(pub BTreeMap<usize, Q>);

impl LieElement {
    pub fn basis(i: usize) -> Self {
        Self(BTreeMap::from([(i, Q::one())]))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn add_term(&mut self, i: usize, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry(i).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&i);
        }
    }
}

/// Role of a basis index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisKind {
    /// `y_{β_k}` for the k-th positive root.
    Y(usize),
    /// `h_{i+1}`.
    H(usize),
    /// `x_{β_k}`.
    X(usize),
}

type Memo = RwLock<HashMap<(Monomial, usize), Arc<UEAElement>>>;

pub struct LieAlgebra {
    rs: Arc<RootSystem>,
    m: usize,
    l: usize,
    table: BracketTable,
    memo: Memo,
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LieAlgebra")
            .field("label", &self.rs.label())
            .field("dim", &self.dim())
            .finish()
    }
}

impl LieAlgebra {
    /// Builds the Chevalley basis and verifies it (Jacobi for all triples).
    pub fn new(rs: Arc<RootSystem>) -> Result<LieAlgebra> {
        let table = chevalley_table(&rs)?;
        let alg = LieAlgebra {
            m: rs.num_positive(),
            l: rs.rank(),
            rs,
            table,
            memo: RwLock::new(HashMap::new()),
        };
        alg.verify_jacobi()?;
        Ok(alg)
    }

    pub fn from_label(label: &str) -> Result<LieAlgebra> {
        LieAlgebra::new(Arc::new(RootSystem::from_label(label)?))
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn root_system_arc(&self) -> Arc<RootSystem> {
        Arc::clone(&self.rs)
    }

    pub fn dim(&self) -> usize {
        2 * self.m + self.l
    }

    pub fn num_positive(&self) -> usize {
        self.m
    }

    pub fn rank(&self) -> usize {
        self.l
    }

    pub fn y_index(&self, k: usize) -> usize {
        self.m - 1 - k
    }

    pub fn h_index(&self, i: usize) -> usize {
        self.m + i
    }

    pub fn x_index(&self, k: usize) -> usize {
        self.m + self.l + k
    }

    pub fn kind(&self, idx: usize) -> BasisKind {
        if idx < self.m {
            BasisKind::Y(self.m - 1 - idx)
        } else if idx < self.m + self.l {
            BasisKind::H(idx - self.m)
        } else {
            BasisKind::X(idx - self.m - self.l)
        }
    }

    pub fn basis_name(&self, idx: usize) -> String {
        let root = |k: usize| -> String {
            let r = &self.rs.positive_roots()[k];
            r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("")
        };
        match self.kind(idx) {
            BasisKind::Y(k) => format!("y[{}]", root(k)),
            BasisKind::H(i) => format!("h{}", i + 1),
            BasisKind::X(k) => format!("x[{}]", root(k)),
        }
    }

    /// Structure constants `[b_i, b_j] = Σ c_k b_k` as `(k, c_k)` pairs.
    pub fn structure_constants(&self, i: usize, j: usize) -> &[(usize, i64)] {
        &self.table[i][j]
    }

    pub fn bracket(&self, a: &LieElement, b: &LieElement) -> LieElement {
        let mut out = LieElement::default();
        for (&i, ci) in &a.0 {
            for (&j, cj) in &b.0 {
                for &(k, c) in &self.table[i][j] {
                    out.add_term(k, ci * cj * q(c));
                }
            }
        }
        out
    }

    fn verify_jacobi(&self) -> Result<()> {
        let d = self.dim();
        let failure = (0..d).into_par_iter().find_map_any(|i| {
            for j in 0..d {
                for k in 0..d {
                    let (a, b, c) = (LieElement::basis(i), LieElement::basis(j), LieElement::basis(k));
                    let mut sum = self.bracket(&a, &self.bracket(&b, &c));
                    for (key, v) in self.bracket(&b, &self.bracket(&c, &a)).0 {
                        sum.add_term(key, v);
                    }
                    for (key, v) in self.bracket(&c, &self.bracket(&a, &b)).0 {
                        sum.add_term(key, v);
                    }
                    if !sum.is_zero() {
                        return Some((i, j, k));
                    }
                }
            }
            None
        });
        match failure {
            Some((i, j, k)) => Err(Error::Consistency(format!(
                "Jacobi identity fails for basis triple ({}, {}, {})",
                self.basis_name(i),
                self.basis_name(j),
                self.basis_name(k)
            ))),
            None => Ok(()),
        }
    }

    /// Weight of a PBW monomial in simple-root coordinates.
    pub fn monomial_weight(&self, m: &Monomial) -> Vec<i64> {
        let mut w = vec![0i64; self.l];
        for (idx, &e) in m.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let (k, sign) = match self.kind(idx) {
                BasisKind::Y(k) => (k, -1),
                BasisKind::X(k) => (k, 1),
                BasisKind::H(_) => continue,
            };
            for (wi, &r) in w.iter_mut().zip(&self.rs.positive_roots()[k]) {
                *wi += sign * e as i64 * r;
            }
        }
        w
    }

    /// Weight of `u` if all its monomials share one.
    pub fn homogeneous_weight(&self, u: &UEAElement) -> Option<Vec<i64>> {
        let mut weights = u.terms().map(|(m, _)| self.monomial_weight(m));
        let first = weights.next().unwrap_or_else(|| vec![0; self.l]);
        weights.all(|w| w == first).then_some(first)
    }

    pub fn is_weight_zero(&self, u: &UEAElement) -> bool {
        u.terms().all(|(m, _)| self.monomial_weight(m).iter().all(|&x| x == 0))
    }

    /// `m · b_k`, normal ordered.
    fn monomial_times_generator(&self, m: &Monomial, k: usize) -> Arc<UEAElement> {
        let d = self.dim();
        let j = match m.last_factor() {
            Some(j) if j > k => j,
            _ => return Arc::new(UEAElement::monomial(m.with_delta(k, 1), Q::one())),
        };
        let cacheable = m.exps.iter().all(|&e| e < MEMO_EXPONENT_BOUND);
        let key = (m.clone(), k);
        if cacheable {
            if let Some(hit) = self.memo.read().expect("memo poisoned").get(&key) {
                return Arc::clone(hit);
            }
        }
        // m = m' b_j with j > k:  m' b_j b_k = (m' b_k) b_j + m' [b_j, b_k]
        let rest = m.with_delta(j, -1);
        let mut out = UEAElement::zero(d);
        let left = self.monomial_times_generator(&rest, k);
        for (t, c) in left.terms() {
            out.add_scaled(&self.monomial_times_generator(t, j), c);
        }
        for &(i, c) in &self.table[j][k] {
            out.add_scaled(&self.monomial_times_generator(&rest, i), &q(c));
        }
        let out = Arc::new(out);
        if cacheable {
            self.memo
                .write()
                .expect("memo poisoned")
                .insert(key, Arc::clone(&out));
        }
        out
    }

    fn times_generator(&self, u: &UEAElement, k: usize) -> UEAElement {
        let mut out = UEAElement::zero(self.dim());
        for (m, c) in u.terms() {
            out.add_scaled(&self.monomial_times_generator(m, k), c);
        }
        out
    }

    /// Product in U(g), returned normal ordered.
    pub fn multiply(&self, u: &UEAElement, v: &UEAElement) -> UEAElement {
        let d = self.dim();
        let mut out = UEAElement::zero(d);
        for (mv, cv) in v.terms() {
            let mut acc = u.clone();
            for (k, &e) in mv.exps.iter().enumerate() {
                for _ in 0..e {
                    acc = self.times_generator(&acc, k);
                }
            }
            out.add_scaled(&acc, cv);
        }
        out
    }

    pub fn commutator(&self, u: &UEAElement, v: &UEAElement) -> UEAElement {
        self.multiply(u, v).sub(&self.multiply(v, u))
    }

    /// Element of U(g) given by a product of basis indices in any order.
    pub fn word(&self, factors: &[usize]) -> UEAElement {
        factors
            .iter()
            .fold(UEAElement::one(self.dim()), |acc, &k| self.times_generator(&acc, k))
    }

    fn transpose_index(&self, idx: usize) -> usize {
        match self.kind(idx) {
            BasisKind::H(_) => idx,
            _ => self.dim() - 1 - idx,
        }
    }

    /// The antiautomorphism with `x_α ↔ y_α`, `h ↦ h`.
    pub fn transpose(&self, u: &UEAElement) -> UEAElement {
        let d = self.dim();
        let mut out = UEAElement::zero(d);
        for (m, c) in u.terms() {
            let mut acc = UEAElement::one(d);
            for idx in (0..d).rev() {
                for _ in 0..m.exps[idx] {
                    acc = self.times_generator(&acc, self.transpose_index(idx));
                }
            }
            out.add_scaled(&acc, c);
        }
        out
    }

    /// U(h)-component of `u` with respect to `U(g) = U(h) ⊕ (n⁻U(g) + U(g)n)`.
    pub fn hc_project(&self, u: &UEAElement) -> Poly {
        let (m, l) = (self.m, self.l);
        let mut p = Poly::zero(l);
        for (mono, c) in u.terms() {
            let e = &mono.exps;
            if e[..m].iter().all(|&x| x == 0) && e[m + l..].iter().all(|&x| x == 0) {
                p.add_term(e[m..m + l].to_vec(), c.clone());
            }
        }
        p
    }

    /// Embeds a polynomial in the `h_i` as an element of U(h) ⊂ U(g).
    pub fn from_poly(&self, p: &Poly) -> UEAElement {
        let d = self.dim();
        let mut out = UEAElement::zero(d);
        for (e, c) in p.terms() {
            let mut exps = vec![0; d];
            exps[self.m..self.m + self.l].copy_from_slice(e);
            out.add_term(Monomial::new(exps), c.clone());
        }
        out
    }

    /// True iff `[z, b] = 0` for every basis vector `b`.
    pub fn is_central(&self, z: &UEAElement) -> bool {
        self.first_noncommuting(z).is_none()
    }

    pub(crate) fn first_noncommuting(&self, z: &UEAElement) -> Option<usize> {
        (0..self.dim()).find(|&i| {
            let b = UEAElement::basis(self.dim(), i);
            !self.commutator(z, &b).is_zero()
        })
    }

    /// Gram matrix of the Killing form on the ordered basis.
    pub fn killing_form(&self) -> Vec<Vec<Q>> {
        let d = self.dim();
        let ad: Vec<Vec<Vec<i64>>> = (0..d)
            .map(|i| {
                let mut mat = vec![vec![0i64; d]; d];
                for j in 0..d {
                    for &(k, c) in &self.table[i][j] {
                        mat[k][j] += c;
                    }
                }
                mat
            })
            .collect();
        (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let mut tr = 0i64;
                        for a in 0..d {
                            for b in 0..d {
                                tr += ad[i][a][b] * ad[j][b][a];
                            }
                        }
                        q(tr)
                    })
                    .collect()
            })
            .collect()
    }

    /// Casimir element `Σ κ^{ab} b_a b_b` of the Killing form, normal ordered
    /// and checked to be central.
    pub fn casimir(&self) -> Result<UEAElement> {
        let d = self.dim();
        let kinv = linalg::inverse(&self.killing_form()).ok_or(Error::DegenerateKilling)?;
        let mut omega = UEAElement::zero(d);
        for (a, row) in kinv.iter().enumerate() {
            for (b, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    omega.add_scaled(&self.word(&[a, b]), c);
                }
            }
        }
        if let Some(i) = self.first_noncommuting(&omega) {
            return Err(Error::Consistency(format!(
                "Casimir fails to commute with {}",
                self.basis_name(i)
            )));
        }
        Ok(omega)
    }

    pub fn format_element(&self, u: &UEAElement) -> String {
        if u.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = u
            .terms()
            .rev()
            .map(|(m, c)| {
                let factors: Vec<String> = m
                    .exps
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| {
                        if e == 1 {
                            self.basis_name(i)
                        } else {
                            format!("{}^{e}", self.basis_name(i))
                        }
                    })
                    .collect();
                if factors.is_empty() {
                    rational::fmt_q(c)
                } else {
                    format!("({})*{}", rational::fmt_q(c), factors.join("*"))
                }
            })
            .collect();
        parts.join(" + ")
    }
}

/// Evaluates a polynomial in the `h_i` at `λ`, i.e. `h_i ↦ λ(h_i)`.
pub fn evaluate_at(p: &Poly, lambda: &Weight) -> Q {
    p.evaluate(&lambda.coords)
}

/// Structure constants `N_{α,β}` for `[x_α, x_β] = N_{α,β} x_{α+β}`, with
/// `x_{-α} = y_α`, `[x_α, y_α] = h_α` and `N_{-α,-β} = -N_{α,β}`.
///
/// Extraspecial pairs get sign `+`; every other constant follows from the
/// standard quadratic relations, solved recursively on the height of `α+β`.
struct StructureConstants<'a> {
    rs: &'a RootSystem,
    special: HashMap<(usize, usize), Q>,
}

impl<'a> StructureConstants<'a> {
    fn new(rs: &'a RootSystem) -> Self {
        Self {
            rs,
            special: HashMap::new(),
        }
    }

    fn neg(a: &[i64]) -> Vec<i64> {
        a.iter().map(|x| -x).collect()
    }

    fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    fn is_positive(a: &[i64]) -> bool {
        a.iter().all(|&x| x >= 0)
    }

    /// Largest `p` with `β − pα` a root.
    fn string_p(&self, alpha: &[i64], beta: &[i64]) -> i64 {
        let mut p = 0;
        let mut cur = beta.to_vec();
        loop {
            cur = cur.iter().zip(alpha).map(|(x, y)| x - y).collect();
            if !self.rs.is_root(&cur) {
                return p;
            }
            p += 1;
        }
    }

    fn n(&mut self, a: &[i64], b: &[i64]) -> Q {
        let s = Self::add(a, b);
        if !self.rs.is_root(&s) {
            return Q::zero();
        }
        let (pa, pb) = (Self::is_positive(a), Self::is_positive(b));
        match (pa, pb) {
            (true, true) => {
                let ia = self.rs.root_index(a).unwrap();
                let ib = self.rs.root_index(b).unwrap();
                if ia < ib {
                    self.special_pair(ia, ib)
                } else {
                    -self.special_pair(ib, ia)
                }
            }
            (false, false) => -self.n(&Self::neg(a), &Self::neg(b)),
            (false, true) => -self.n(b, a),
            (true, false) => {
                // a + b + c = 0: N_{a,b}/(c,c) = N_{b,c}/(a,a) = N_{c,a}/(b,b)
                let c = Self::neg(&s);
                let cc = self.rs.inner(&c, &c);
                if Self::is_positive(&s) {
                    cc / self.rs.inner(a, a) * self.n(b, &c)
                } else {
                    cc / self.rs.inner(b, b) * self.n(&c, a)
                }
            }
        }
    }

    fn special_pair(&mut self, ia: usize, ib: usize) -> Q {
        if let Some(v) = self.special.get(&(ia, ib)) {
            return v.clone();
        }
        let roots = self.rs.positive_roots();
        let (alpha, beta) = (roots[ia].clone(), roots[ib].clone());
        let xi = Self::add(&alpha, &beta);
        let ig = (0..roots.len())
            .find(|&g| {
                let rest: Vec<i64> = xi.iter().zip(&roots[g]).map(|(x, y)| x - y).collect();
                self.rs.root_index(&rest).is_some()
            })
            .expect("a non-simple positive root has a decomposition");
        let gamma = roots[ig].clone();
        let delta: Vec<i64> = xi.iter().zip(&gamma).map(|(x, y)| x - y).collect();
        let n_extra = q(self.string_p(&gamma, &delta) + 1);
        let value = if gamma == alpha {
            n_extra
        } else {
            // (α, β, −γ, −δ) sum to zero; the four-root relation gives N_{α,β}.
            let (mg, md) = (Self::neg(&gamma), Self::neg(&delta));
            let mut acc = Q::zero();
            let bg = Self::add(&beta, &mg);
            if self.rs.is_root(&bg) {
                acc += self.n(&beta, &mg) * self.n(&alpha, &md) / self.rs.inner(&bg, &bg);
            }
            let ag = Self::add(&alpha, &mg);
            if self.rs.is_root(&ag) {
                acc += self.n(&mg, &alpha) * self.n(&beta, &md) / self.rs.inner(&ag, &ag);
            }
            self.rs.inner(&xi, &xi) * acc / n_extra
        };
        self.special.insert((ia, ib), value.clone());
        value
    }
}

/// `table[i][j]` lists `[b_i, b_j]` as `(k, c_k)` pairs.
type BracketTable = Vec<Vec<Vec<(usize, i64)>>>;

fn chevalley_table(rs: &RootSystem) -> Result<BracketTable> {
    let m = rs.num_positive();
    let l = rs.rank();
    let d = 2 * m + l;
    let cartan = rs.cartan();
    let y_idx = |k: usize| m - 1 - k;
    let x_idx = |k: usize| m + l + k;

    // signed root for each basis index (None for h)
    let root_of = |idx: usize| -> Option<Vec<i64>> {
        if idx < m {
            Some(StructureConstants::neg(&rs.positive_roots()[m - 1 - idx]))
        } else if idx >= m + l {
            Some(rs.positive_roots()[idx - m - l].clone())
        } else {
            None
        }
    };
    let index_of_root = |r: &[i64]| -> usize {
        match rs.root_index(r) {
            Some(k) => x_idx(k),
            None => y_idx(rs.root_index(&StructureConstants::neg(r)).expect("root")),
        }
    };

    let mut sc = StructureConstants::new(rs);
    let mut table = vec![vec![Vec::new(); d]; d];
    for i in 0..d {
        for j in 0..d {
            let entry: Vec<(usize, i64)> = match (root_of(i), root_of(j)) {
                (None, None) => vec![],
                (None, Some(b)) => {
                    let hi = i - m;
                    let c: i64 = (0..l).map(|t| b[t] * cartan[hi][t]).sum();
                    if c == 0 { vec![] } else { vec![(j, c)] }
                }
                (Some(a), None) => {
                    let hj = j - m;
                    let c: i64 = (0..l).map(|t| a[t] * cartan[hj][t]).sum();
                    if c == 0 { vec![] } else { vec![(i, -c)] }
                }
                (Some(a), Some(b)) => {
                    let s = StructureConstants::add(&a, &b);
                    if s.iter().all(|&x| x == 0) {
                        let (k, sign) = match rs.root_index(&a) {
                            Some(k) => (k, 1),
                            None => (rs.root_index(&b).unwrap(), -1),
                        };
                        rs.coroot(k)
                            .iter()
                            .enumerate()
                            .filter(|(_, &c)| c != 0)
                            .map(|(t, &c)| (m + t, sign * c))
                            .collect()
                    } else if rs.is_root(&s) {
                        let n = sc.n(&a, &b);
                        let n = rational::to_i64(&n).ok_or_else(|| {
                            Error::Consistency(format!("non-integral structure constant N({a:?},{b:?}) = {n}"))
                        })?;
                        let p = sc.string_p(&a, &b);
                        if n.abs() != p + 1 {
                            return Err(Error::Consistency(format!(
                                "|N({a:?},{b:?})| = {} but the root string gives {}",
                                n.abs(),
                                p + 1
                            )));
                        }
                        vec![(index_of_root(&s), n)]
                    } else {
                        vec![]
                    }
                }
            };
            table[i][j] = entry;
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn a1() -> LieAlgebra {
        LieAlgebra::from_label("A1").unwrap()
    }

    // A1 layout: 0 = y, 1 = h, 2 = x
    #[test]
    fn sl2_brackets() {
        let g = a1();
        assert_eq!(g.structure_constants(2, 0), &[(1, 1)]);
        assert_eq!(g.structure_constants(1, 2), &[(2, 2)]);
        assert_eq!(g.structure_constants(1, 0), &[(0, -2)]);
        let x = LieElement::basis(2);
        assert!(g.bracket(&x, &x).is_zero());
    }

    #[test]
    fn sl3_brackets() {
        let g = LieAlgebra::from_label("A2").unwrap();
        // x indices: 5 = x_{α1}, 6 = x_{α2}, 7 = x_{α1+α2}
        let c = g.structure_constants(5, 6);
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].0, 7);
        assert_eq!(c[0].1.abs(), 1);
        assert_eq!(g.structure_constants(3, 7), &[(7, 1)]);
        for i in 0..2 {
            for j in 0..2 {
                assert!(g.structure_constants(3 + i, 3 + j).is_empty());
            }
        }
    }

    #[test]
    fn all_types_build() {
        for label in ["A1", "A2", "A3", "B2", "B3", "C3", "G2", "D4"] {
            LieAlgebra::from_label(label).unwrap_or_else(|e| panic!("{label}: {e}"));
        }
    }

    #[test]
    fn sl2_products() {
        let g = a1();
        let (y, h, x) = (0, 1, 2);
        let xy = g.word(&[x, y]);
        let expected = g.word(&[y, x]).add(&g.word(&[h]));
        assert_eq!(xy, expected);

        let xyy = g.word(&[x, y, y]);
        let expected = g
            .word(&[y, y, x])
            .add(&g.word(&[y, h]).scale(&q(2)))
            .sub(&g.word(&[y]).scale(&q(2)));
        assert_eq!(xyy, expected);

        let u = g.word(&[h, x, y, x]);
        assert_eq!(g.multiply(&UEAElement::one(3), &u), u);
        assert_eq!(g.multiply(&u, &UEAElement::one(3)), u);
    }

    #[test]
    fn transpose_examples() {
        let g = a1();
        assert_eq!(g.transpose(&UEAElement::basis(3, 2)), UEAElement::basis(3, 0));
        let xy = g.word(&[2, 1, 0]);
        assert_eq!(g.transpose(&g.transpose(&xy)), xy);
        // σ(x y) = σ(y) σ(x) = x y
        let xy = g.word(&[2, 0]);
        assert_eq!(g.transpose(&xy), xy);
    }

    #[test]
    fn projection_examples() {
        let g = a1();
        let h = Poly::var(1, 0);
        assert_eq!(g.hc_project(&g.word(&[2, 0])), h);
        assert!(g.hc_project(&g.word(&[0, 2])).is_zero());
        let p = h.mul(&h).add(&Poly::one(1));
        assert_eq!(g.hc_project(&g.from_poly(&p)), p);
        let two_h = h.mul(&h).add(&h.scale(&q(2)));
        assert_eq!(evaluate_at(&two_h, &Weight::from_ints(&[3])), q(15));
    }

    #[test]
    fn sl2_casimir() {
        let g = a1();
        let omega = g.casimir().unwrap();
        let normalized = g
            .word(&[1, 1])
            .add(&g.word(&[1]).scale(&q(2)))
            .add(&g.word(&[0, 2]).scale(&q(4)));
        assert_eq!(omega.scale(&q(8)), normalized);
        assert!(g.is_weight_zero(&omega));
    }

    #[test]
    fn casimirs_are_central() {
        for label in ["A2", "B2", "G2"] {
            let g = LieAlgebra::from_label(label).unwrap();
            let omega = g.casimir().unwrap();
            assert!(g.is_central(&omega), "{label}");
            assert!(g.is_weight_zero(&omega), "{label}");
        }
    }

    #[test]
    fn non_central_detected() {
        let g = a1();
        assert!(!g.is_central(&UEAElement::basis(3, 1)));
    }

    #[test]
    fn serialization_layout() {
        let g = a1();
        let u = g.word(&[2, 0]);
        let json = serde_json::to_string(&u).unwrap();
        assert_eq!(json, r#"[{"exps":[0,1,0],"coef":"1"},{"exps":[1,0,1],"coef":"1"}]"#);
        let back: UEAElement = serde_json::from_str(&json).unwrap();
        assert_eq!(back, u);
    }
}
