//! Truncated Verma modules, the Shapovalov form, and per-block
//! decomposition, standard-filtration and Cartan matrices.
//!
//! Every weight space of `M(λ)` has the PBW basis `y^A v_λ` with `A`
//! ranging over exponent vectors on the negative root vectors, so all
//! multiplicity data is finite linear algebra over ℚ.
//! `dim L(λ)_{λ−ν}` is the rank of the contravariant form on `M(λ)_{λ−ν}`,
//! whose Gram entries are `φ(σ(y^A) y^B)` evaluated at λ.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg;
use crate::liealg::{evaluate_at, LieAlgebra, Monomial, UEAElement};
use crate::poly::Poly;
use crate::rational::Q;
use crate::rootdata::{Convention, RootSystem, Weight};

/// Exponents over the positive roots `β_1, …, β_m`; stands for `Π y_β^{A_β} v_λ`.
pub type YExponents = Vec<u32>;

/// All `A` with `Σ A_k β_k = ν`, in a fixed recursive order.
pub fn y_basis(rs: &RootSystem, nu: &[i64]) -> Vec<YExponents> {
    fn go(roots: &[Vec<i64>], k: usize, rest: &mut Vec<i64>, cur: &mut YExponents, out: &mut Vec<YExponents>) {
        if k == roots.len() {
            if rest.iter().all(|&x| x == 0) {
                out.push(cur.clone());
            }
            return;
        }
        let root = &roots[k];
        let mut taken = 0u32;
        loop {
            go(roots, k + 1, rest, cur, out);
            if rest.iter().zip(root).any(|(&r, &b)| r < b) {
                break;
            }
            rest.iter_mut().zip(root).for_each(|(r, &b)| *r -= b);
            taken += 1;
            cur[k] = taken;
        }
        rest.iter_mut().zip(root).for_each(|(r, &b)| *r += b * i64::from(taken));
        cur[k] = 0;
    }
    if nu.iter().any(|&x| x < 0) {
        return vec![];
    }
    let mut out = Vec::new();
    let roots = rs.positive_roots();
    go(roots, 0, &mut nu.to_vec(), &mut vec![0; roots.len()], &mut out);
    out
}

/// Nonnegative integer vectors of height at most `max_height`, by height then lexicographically.
pub fn lattice_points(rank: usize, max_height: usize) -> Vec<Vec<i64>> {
    fn go(rank: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == rank {
            out.push(cur.clone());
            return;
        }
        for x in 0..=left {
            cur.push(x);
            go(rank, left - x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(rank, max_height as i64, &mut Vec::new(), &mut out);
    out.sort_by_key(|v| (v.iter().sum::<i64>(), v.clone()));
    out
}

fn height(nu: &[i64]) -> i64 {
    nu.iter().sum()
}

/// A vector of `M(λ)` as a combination of PBW basis vectors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VermaVector(pub BTreeMap<YExponents, Q>);

impl VermaVector {
    pub fn highest(m: usize) -> Self {
        Self(BTreeMap::from([(vec![0; m], Q::one())]))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn add_term(&mut self, a: YExponents, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry(a.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&a);
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::default();
        for (a, x) in &self.0 {
            out.add_term(a.clone(), x * c);
        }
        out
    }
}

/// `M(λ)` up to depth `N`: the weight spaces `λ − ν` with `height(ν) ≤ N`.
#[derive(Clone, Debug)]
pub struct VermaSlice {
    pub highest_weight: Weight,
    pub depth: usize,
    pub spaces: BTreeMap<Vec<i64>, Vec<YExponents>>,
}

impl VermaSlice {
    pub fn dim(&self, nu: &[i64]) -> usize {
        self.spaces.get(nu).map_or(0, Vec::len)
    }
}

/// Gram matrix of the contravariant form on one weight space, as
/// polynomials in the `h_i` (entries depend on λ only through evaluation).
#[derive(Debug)]
pub struct ShapovalovForm {
    pub basis: Vec<YExponents>,
    pub entries: Vec<Vec<Poly>>,
}

impl ShapovalovForm {
    pub fn at(&self, lambda: &Weight) -> Vec<Vec<Q>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|p| evaluate_at(p, lambda)).collect())
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditEntry {
    pub nu: Vec<i64>,
    pub rank: usize,
    pub dim: usize,
}

/// Verdict plus the depth-bounded nondegeneracy audit behind it.
#[derive(Clone, Debug, Serialize)]
pub struct SimplicityReport {
    pub simple: bool,
    pub depth: usize,
    /// Whether the form is nondegenerate at every audited depth.
    pub nondegenerate: bool,
    pub first_degenerate: Option<Vec<i64>>,
    pub audit: Vec<AuditEntry>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionMatrix {
    /// Linkage class in block order; indexes rows and columns.
    pub class: Vec<Weight>,
    /// `entries[i][j] = [M(λ_i) : L(λ_j)]`.
    pub entries: Vec<Vec<i64>>,
    pub depth: usize,
    /// `verma_dims[i][j] = dim M(λ_i)_{λ_j}`.
    pub verma_dims: Vec<Vec<u128>>,
    /// `simple_dims[k][j] = dim L(λ_k)_{λ_j}`.
    pub simple_dims: Vec<Vec<u128>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SimpleModuleTable {
    pub highest_weight: Weight,
    /// `dim L_{λ_j}` for each class member `λ_j`, in block order.
    pub class_weight_dims: Vec<u128>,
    pub finite_dimensional: bool,
    pub weyl_dimension: Option<u128>,
    /// Sum of form ranks over the full support; equals `weyl_dimension`.
    pub rank_dimension: Option<u128>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockReport {
    pub root_system: Option<String>,
    pub representative: Weight,
    #[serde(with = "crate::rational::serde_q")]
    pub casimir_value: Q,
    pub class: Vec<Weight>,
    pub depth: usize,
    /// Rows `M(λ_i)`, columns `L(λ_j)`.
    pub decomposition: Vec<Vec<i64>>,
    /// Rows `P(μ)`, columns `M(λ)`; obtained from the reciprocity theorem.
    pub projective_filtration: Vec<Vec<i64>>,
    pub cartan: Vec<Vec<i64>>,
    pub simples: Vec<SimpleModuleTable>,
}

/// Category-O computations over a fixed Lie algebra, with a cache of
/// contravariant-form Gram matrices keyed by `ν`.
pub struct Category {
    alg: Arc<LieAlgebra>,
    forms: RwLock<HashMap<Vec<i64>, Arc<ShapovalovForm>>>,
}

impl Category {
    pub fn new(alg: Arc<LieAlgebra>) -> Self {
        Self {
            alg,
            forms: RwLock::new(HashMap::new()),
        }
    }

    pub fn from_label(label: &str) -> Result<Self> {
        Ok(Self::new(Arc::new(LieAlgebra::from_label(label)?)))
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.alg
    }

    pub fn root_system(&self) -> &RootSystem {
        self.alg.root_system()
    }

    fn y_element(&self, a: &[u32]) -> UEAElement {
        let d = self.alg.dim();
        let mut exps = vec![0u32; d];
        for (k, &e) in a.iter().enumerate() {
            exps[self.alg.y_index(k)] = e;
        }
        UEAElement::monomial(Monomial::new(exps), Q::one())
    }

    pub fn verma_slice(&self, lambda: &Weight, depth: usize) -> Result<VermaSlice> {
        let rs = self.root_system();
        rs.check_weight(lambda)?;
        let spaces = lattice_points(rs.rank(), depth)
            .into_iter()
            .map(|nu| {
                let b = y_basis(rs, &nu);
                (nu, b)
            })
            .collect();
        Ok(VermaSlice {
            highest_weight: lambda.clone(),
            depth,
            spaces,
        })
    }

    /// `u · y^A v_λ` with no depth limit.
    fn act_on_basis(&self, u: &UEAElement, a: &[u32], lambda: &Weight) -> VermaVector {
        let (m, l) = (self.alg.num_positive(), self.alg.rank());
        let prod = self.alg.multiply(u, &self.y_element(a));
        let mut out = VermaVector::default();
        for (mono, c) in prod.terms() {
            let e = mono.exps();
            if e[m + l..].iter().any(|&x| x > 0) {
                continue;
            }
            let mut coef = c.clone();
            for (i, &k) in e[m..m + l].iter().enumerate() {
                coef *= num_traits::pow(lambda.coords[i].clone(), k as usize);
            }
            let ya: YExponents = (0..m).map(|k| e[self.alg.y_index(k)]).collect();
            out.add_term(ya, coef);
        }
        out
    }

    fn depth_of(&self, a: &[u32]) -> i64 {
        let roots = self.root_system().positive_roots();
        a.iter()
            .zip(roots)
            .map(|(&e, r)| i64::from(e) * height(r))
            .sum()
    }

    /// Action of U(g) on a vector of the slice.
    pub fn act(&self, slice: &VermaSlice, u: &UEAElement, v: &VermaVector) -> Result<VermaVector> {
        let mut out = VermaVector::default();
        for (a, c) in &v.0 {
            let depth = self.depth_of(a);
            if depth > slice.depth as i64 {
                return Err(Error::DepthOverflow {
                    depth,
                    limit: slice.depth,
                });
            }
            for (b, x) in self.act_on_basis(u, a, &slice.highest_weight).0 {
                let depth = self.depth_of(&b);
                if depth > slice.depth as i64 {
                    return Err(Error::DepthOverflow {
                        depth,
                        limit: slice.depth,
                    });
                }
                out.add_term(b, x * c);
            }
        }
        Ok(out)
    }

    /// Vectors of `M(λ)_{λ−ν}` killed by every `x_{α_i}`.
    pub fn maximal_vectors(&self, lambda: &Weight, nu: &[i64]) -> Result<Vec<VermaVector>> {
        let rs = self.root_system();
        rs.check_weight(lambda)?;
        let basis = y_basis(rs, nu);
        if basis.is_empty() {
            return Ok(vec![]);
        }
        let mut rows: Vec<Vec<Q>> = Vec::new();
        for i in 0..rs.rank() {
            let mut target = nu.to_vec();
            target[i] -= 1;
            let tb = y_basis(rs, &target);
            if tb.is_empty() {
                continue;
            }
            let x = UEAElement::basis(self.alg.dim(), self.alg.x_index(i));
            let images: Vec<VermaVector> = basis.iter().map(|a| self.act_on_basis(&x, a, lambda)).collect();
            for t in &tb {
                rows.push(images.iter().map(|img| img.0.get(t).cloned().unwrap_or_else(Q::zero)).collect());
            }
        }
        let ker = linalg::kernel(&rows, basis.len());
        Ok(ker
            .into_iter()
            .map(|v| {
                let mut out = VermaVector::default();
                for (a, c) in basis.iter().zip(v) {
                    out.add_term(a.clone(), c);
                }
                out
            })
            .collect())
    }

    /// Gram matrix of the contravariant form on the weight space `ν`, symbolic in λ.
    pub fn shapovalov_form(&self, nu: &[i64]) -> Arc<ShapovalovForm> {
        if let Some(f) = self.forms.read().expect("form cache poisoned").get(nu) {
            return Arc::clone(f);
        }
        let basis = y_basis(self.root_system(), nu);
        let n = basis.len();
        let lifted: Vec<UEAElement> = basis.iter().map(|a| self.y_element(a)).collect();
        let transposed: Vec<UEAElement> = lifted.iter().map(|y| self.alg.transpose(y)).collect();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        let values: Vec<Poly> = pairs
            .par_iter()
            .map(|&(i, j)| self.alg.hc_project(&self.alg.multiply(&transposed[i], &lifted[j])))
            .collect();
        let mut entries = vec![vec![Poly::zero(self.alg.rank()); n]; n];
        for (&(i, j), p) in pairs.iter().zip(values) {
            entries[j][i] = p.clone();
            entries[i][j] = p;
        }
        let form = Arc::new(ShapovalovForm { basis, entries });
        self.forms
            .write()
            .expect("form cache poisoned")
            .insert(nu.to_vec(), Arc::clone(&form));
        form
    }

    pub fn shapovalov_matrix(&self, lambda: &Weight, nu: &[i64]) -> Result<Vec<Vec<Q>>> {
        self.root_system().check_weight(lambda)?;
        Ok(self.shapovalov_form(nu).at(lambda))
    }

    /// `dim L(λ)_{λ−ν}` as the rank of the contravariant form.
    pub fn simple_weight_mult(&self, lambda: &Weight, nu: &[i64]) -> Result<usize> {
        self.root_system().check_weight(lambda)?;
        if nu.iter().any(|&x| x < 0) {
            return Ok(0);
        }
        Ok(linalg::rank(&self.shapovalov_form(nu).at(lambda)))
    }

    pub fn verma_is_simple(&self, lambda: &Weight, depth: usize) -> Result<SimplicityReport> {
        let rs = self.root_system();
        rs.check_weight(lambda)?;
        let simple = rs.is_antidominant(lambda, Convention::Strict);
        let points = lattice_points(rs.rank(), depth);
        let audit: Vec<AuditEntry> = points
            .par_iter()
            .map(|nu| {
                let form = self.shapovalov_form(nu);
                AuditEntry {
                    nu: nu.clone(),
                    rank: linalg::rank(&form.at(lambda)),
                    dim: form.basis.len(),
                }
            })
            .collect();
        let first_degenerate = audit.iter().find(|e| e.rank < e.dim).map(|e| e.nu.clone());
        let nondegenerate = first_degenerate.is_none();
        if simple && !nondegenerate {
            return Err(Error::Consistency(format!(
                "{lambda} is antidominant but the form degenerates at ν = {:?}",
                first_degenerate.unwrap()
            )));
        }
        Ok(SimplicityReport {
            simple,
            depth,
            nondegenerate,
            first_degenerate,
            audit,
        })
    }

    /// `dim L(λ)` as the sum of form ranks over the full support; λ dominant integral.
    pub fn simple_dimension_by_ranks(&self, lambda: &Weight) -> Result<u128> {
        let rs = self.root_system();
        rs.check_weight(lambda)?;
        if !lambda.is_dominant_integral() {
            return Err(Error::NotDominantIntegral(lambda.to_string()));
        }
        let w0 = rs
            .try_weyl_group()?
            .iter()
            .max_by_key(|w| w.length())
            .expect("nonempty Weyl group");
        let top = rs
            .difference_in_root_lattice(lambda, &w0.apply(lambda))
            .ok_or_else(|| Error::Consistency("λ − w0λ outside the root lattice".into()))?;
        let points: Vec<Vec<i64>> = lattice_points(rs.rank(), height(&top) as usize)
            .into_iter()
            .filter(|nu| nu.iter().zip(&top).all(|(a, b)| a <= b))
            .collect();
        let ranks: Vec<usize> = points
            .par_iter()
            .map(|nu| self.simple_weight_mult(lambda, nu))
            .collect::<Result<_>>()?;
        Ok(ranks.into_iter().map(|r| r as u128).sum())
    }

    pub fn decomposition_matrix(&self, lambda: &Weight) -> Result<DecompositionMatrix> {
        let rs = self.root_system();
        rs.check_weight(lambda)?;
        if !lambda.is_integral() {
            return Err(Error::NonIntegralWeight(lambda.to_string()));
        }
        rs.try_weyl_group()?;
        let class = rs.dot_orbit(lambda);
        let n = class.len();
        let diff = |i: usize, j: usize| -> Option<Vec<i64>> {
            rs.difference_in_root_lattice(&class[i], &class[j])
                .filter(|v| v.iter().all(|&x| x >= 0))
        };
        let depth = diff(0, n - 1)
            .map(|v| height(&v) as usize)
            .ok_or_else(|| Error::Consistency("lowest class member is not below the highest".into()))?;

        let verma_dims: Vec<Vec<u128>> = (0..n)
            .map(|i| (0..n).map(|j| diff(i, j).map_or(0, |nu| rs.kostant(&nu))).collect())
            .collect();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|k| (0..n).map(move |j| (k, j))).collect();
        let simple_flat: Vec<u128> = pairs
            .par_iter()
            .map(|&(k, j)| match diff(k, j) {
                Some(nu) => self.simple_weight_mult(&class[k], &nu).map(|r| r as u128),
                None => Ok(0),
            })
            .collect::<Result<_>>()?;
        let simple_dims: Vec<Vec<u128>> = simple_flat.chunks(n).map(<[u128]>::to_vec).collect();
        for k in 0..n {
            if simple_dims[k][k] != 1 {
                return Err(Error::Consistency(format!("dim L({})_top = {}", class[k], simple_dims[k][k])));
            }
        }

        // verma_dims[i][j] = Σ_k D[i][k] simple_dims[k][j], with simple_dims upper unitriangular.
        let mut entries = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut v = verma_dims[i][j] as i128;
                for k in 0..j {
                    v -= entries[i][k] as i128 * simple_dims[k][j] as i128;
                }
                entries[i][j] = i64::try_from(v)
                    .map_err(|_| Error::Consistency("decomposition entry overflow".into()))?;
            }
        }
        let dm = DecompositionMatrix {
            class,
            entries,
            depth,
            verma_dims,
            simple_dims,
        };
        self.check_decomposition(&dm)?;
        Ok(dm)
    }

    fn check_decomposition(&self, dm: &DecompositionMatrix) -> Result<()> {
        let rs = self.root_system();
        let n = dm.class.len();
        for i in 0..n {
            for j in 0..n {
                let e = dm.entries[i][j];
                if e < 0 {
                    return Err(Error::Consistency(format!("negative multiplicity D[{i}][{j}] = {e}")));
                }
                if i == j && e != 1 {
                    return Err(Error::Consistency(format!("D[{i}][{i}] = {e}")));
                }
                if e != 0 && !rs.leq(&dm.class[j], &dm.class[i]) {
                    return Err(Error::Consistency(format!("D[{i}][{j}] ≠ 0 but λ_{j} ≰ λ_{i}")));
                }
                let recomposed: i128 = (0..n)
                    .map(|k| dm.entries[i][k] as i128 * dm.simple_dims[k][j] as i128)
                    .sum();
                if recomposed != dm.verma_dims[i][j] as i128 {
                    return Err(Error::Consistency(format!("character identity fails at ({i},{j})")));
                }
            }
        }
        Ok(())
    }

    pub fn block_report(&self, lambda: &Weight) -> Result<BlockReport> {
        let rs = self.root_system();
        let dm = self.decomposition_matrix(lambda)?;
        let projective_filtration = projective_filtration_matrix(rs, &dm)?;
        let cartan = cartan_matrix(&dm)?;
        let omega = self.alg.casimir()?;
        let casimir_value = evaluate_at(&self.alg.hc_project(&omega), lambda);
        let simples = dm
            .class
            .iter()
            .enumerate()
            .map(|(k, mu)| {
                let finite = mu.is_dominant_integral();
                let (weyl, ranks) = if finite {
                    let w = rs.weyl_dimension(mu)?;
                    let r = self.simple_dimension_by_ranks(mu)?;
                    if w != r {
                        return Err(Error::Consistency(format!(
                            "dim L({mu}): Weyl formula {w}, form ranks {r}"
                        )));
                    }
                    (Some(w), Some(r))
                } else {
                    (None, None)
                };
                Ok(SimpleModuleTable {
                    highest_weight: mu.clone(),
                    class_weight_dims: dm.simple_dims[k].clone(),
                    finite_dimensional: finite,
                    weyl_dimension: weyl,
                    rank_dimension: ranks,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BlockReport {
            root_system: rs.label().map(str::to_string),
            representative: lambda.clone(),
            casimir_value,
            class: dm.class.clone(),
            depth: dm.depth,
            decomposition: dm.entries.clone(),
            projective_filtration,
            cartan,
            simples,
        })
    }
}

/// `(M_{n,μ} : M(λ)) = P(λ − μ)`, valid while `height(λ − μ) < n`.
pub fn standard_filtration_mult(rs: &RootSystem, length: usize, mu: &Weight, lambda: &Weight) -> Result<u128> {
    rs.check_weight(mu)?;
    rs.check_weight(lambda)?;
    let Some(nu) = rs
        .difference_in_root_lattice(lambda, mu)
        .filter(|v| v.iter().all(|&x| x >= 0))
    else {
        return Ok(0);
    };
    let h = height(&nu);
    if h >= length as i64 {
        return Err(Error::FiltrationLength { height: h, length });
    }
    Ok(rs.kostant(&nu))
}

/// `(P(μ) : M(λ)) = [M(λ) : L(μ)]`; rows `μ`, columns `λ`.
pub fn projective_filtration_matrix(rs: &RootSystem, dm: &DecompositionMatrix) -> Result<Vec<Vec<i64>>> {
    let n = dm.class.len();
    let pf: Vec<Vec<i64>> = (0..n).map(|mu| (0..n).map(|la| dm.entries[la][mu]).collect()).collect();
    for mu in 0..n {
        if pf[mu][mu] != 1 {
            return Err(Error::Consistency(format!("(P:M) diagonal entry {mu} is {}", pf[mu][mu])));
        }
        for la in 0..n {
            if pf[mu][la] != 0 && !rs.leq(&dm.class[mu], &dm.class[la]) {
                return Err(Error::Consistency(format!("(P(μ_{mu}) : M(λ_{la})) ≠ 0 with μ ≰ λ")));
            }
        }
    }
    Ok(pf)
}

/// `C = DᵀD`, i.e. `[P(μ) : L(ν)] = Σ_λ (P(μ) : M(λ)) [M(λ) : L(ν)]`.
pub fn cartan_matrix(dm: &DecompositionMatrix) -> Result<Vec<Vec<i64>>> {
    let d = &dm.entries;
    let n = d.len();
    let c: Vec<Vec<i64>> = (0..n)
        .map(|mu| (0..n).map(|nu| (0..n).map(|la| d[la][mu] * d[la][nu]).sum()).collect())
        .collect();
    for i in 0..n {
        if c[i][i] <= 0 {
            return Err(Error::Consistency(format!("Cartan diagonal entry {i} is {}", c[i][i])));
        }
        for j in 0..n {
            if c[i][j] != c[j][i] {
                return Err(Error::Consistency("Cartan matrix is not symmetric".into()));
            }
        }
    }
    Ok(c)
}

/// Weight `λ − ν` of a weight-homogeneous vector.
pub fn vector_weight(rs: &RootSystem, lambda: &Weight, v: &VermaVector) -> Option<Weight> {
    let mut weights = v.0.keys().map(|a| {
        let mut nu = vec![0i64; rs.rank()];
        for (e, r) in a.iter().zip(rs.positive_roots()) {
            for (x, &b) in nu.iter_mut().zip(r) {
                *x += i64::from(*e) * b;
            }
        }
        lambda.sub(&rs.root_to_weight(&nu))
    });
    let first = weights.next()?;
    weights.all(|w| w == first).then_some(first)
}
