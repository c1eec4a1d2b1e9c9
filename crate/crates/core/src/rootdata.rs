//! Root systems, Weyl groups and the combinatorics of weights.
//!
//! Pairing convention: `cartan[i][j] = α_j(h_i)`, where `h_i` is the simple
//! coroot of `α_i`. Roots are stored in simple-root coordinates, weights in
//! H-coordinates `λ(h_1), …, λ(h_l)`. Every conversion between the two goes
//! through this matrix.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{self, q, Q};

/// Bound on root height during reflection closure.
pub const HEIGHT_BOUND: i64 = 1000;

/// Hard cap on enumerated Weyl group elements.
pub const WEYL_ORDER_LIMIT: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartanMatrixInput {
    pub cartan: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl CartanMatrixInput {
    pub fn new(cartan: Vec<Vec<i64>>) -> Self {
        Self {
            cartan,
            label: None,
        }
    }

    /// Builds the Cartan matrix of a series label such as `"A2"`, `"B3"`, `"G2"`.
    ///
    /// Bourbaki numbering: `B_n` has `α_n` short, `C_n` has `α_n` long,
    /// `F4` has `α_3, α_4` short and `G2` has `α_1` short.
    pub fn from_label(label: &str) -> Result<Self> {
        let bad = || Error::UnknownLabel(label.to_string());
        let label_up = label.trim().to_ascii_uppercase();
        let (series, rank) = label_up.split_at(1);
        let n: usize = rank.parse().map_err(|_| bad())?;
        let mut c = vec![vec![0i64; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize, cij: i64, cji: i64| {
            c[i][j] = cij;
            c[j][i] = cji;
        };
        match (series, n) {
            ("A", n) if n >= 1 => (1..n).for_each(|i| link(i - 1, i, -1, -1)),
            ("B", n) if n >= 2 => {
                (1..n - 1).for_each(|i| link(i - 1, i, -1, -1));
                link(n - 2, n - 1, -1, -2);
            }
            ("C", n) if n >= 2 => {
                (1..n - 1).for_each(|i| link(i - 1, i, -1, -1));
                link(n - 2, n - 1, -2, -1);
            }
            ("D", n) if n >= 4 => {
                (1..n - 1).for_each(|i| link(i - 1, i, -1, -1));
                link(n - 3, n - 1, -1, -1);
            }
            ("E", n) if (6..=8).contains(&n) => {
                link(0, 2, -1, -1);
                link(1, 3, -1, -1);
                (3..n).for_each(|i| link(i - 1, i, -1, -1));
            }
            ("F", 4) => {
                link(0, 1, -1, -1);
                link(1, 2, -1, -2);
                link(2, 3, -1, -1);
            }
            ("G", 2) => link(0, 1, -3, -1),
            _ => return Err(bad()),
        }
        Ok(Self {
            cartan: c,
            label: Some(label_up),
        })
    }

    /// Shape and sign checks. Finite type is established later by closure.
    pub fn validate(&self) -> Result<()> {
        let c = &self.cartan;
        let l = c.len();
        if l == 0 {
            return Err(Error::InvalidCartan("empty matrix".into()));
        }
        for (i, row) in c.iter().enumerate() {
            if row.len() != l {
                return Err(Error::InvalidCartan(format!("row {i} has length {}", row.len())));
            }
            for (j, &x) in row.iter().enumerate() {
                if i == j && x != 2 {
                    return Err(Error::InvalidCartan(format!("diagonal entry ({i},{i}) is {x}")));
                }
                if i != j && x > 0 {
                    return Err(Error::InvalidCartan(format!("positive off-diagonal entry ({i},{j})")));
                }
                if i != j && (x == 0) != (c[j][i] == 0) {
                    return Err(Error::InvalidCartan(format!(
                        "entries ({i},{j}) and ({j},{i}) must vanish together"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// A point of h* in H-coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight {
    #[serde(with = "rational::serde_q::vec")]
    pub coords: Vec<Q>,
}

impl Weight {
    pub fn new(coords: Vec<Q>) -> Self {
        Self { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Self::new(coords.iter().map(|&x| q(x)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        Self::new(vec![Q::zero(); rank])
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|x| x.is_integer())
    }

    pub fn is_dominant_integral(&self) -> bool {
        self.coords.iter().all(rational::is_nonneg_integer)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect())
    }

    /// Parses comma-separated rationals, e.g. `"1,-1/2"`.
    pub fn parse(s: &str) -> Result<Weight> {
        s.split(',')
            .map(rational::parse_q)
            .collect::<Result<Vec<_>>>()
            .map(Weight::new)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(rational::fmt_q).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// An element of W as a reduced word plus its matrix on H-coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    pub word: Vec<usize>,
    pub matrix: Vec<Vec<i64>>,
}

impl WeylElement {
    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn apply(&self, lambda: &Weight) -> Weight {
        Weight::new(
            self.matrix
                .iter()
                .map(|row| row.iter().zip(&lambda.coords).map(|(&a, x)| q(a) * x).sum())
                .collect(),
        )
    }
}

/// Antidominance convention.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// `⟨λ+ρ, α̌⟩ ∉ ℤ_{>0}` for all positive α.
    #[default]
    Strict,
    /// `⟨λ+ρ, α̌⟩ ∉ ℤ_{≥0}`; also rejects singular weights such as `−ρ`.
    Paper,
}

#[derive(Debug)]
pub struct RootSystem {
    label: Option<String>,
    cartan: Vec<Vec<i64>>,
    cartan_inv: Vec<Vec<Q>>,
    /// `(α_i, α_i) / 2`, so `(α_i, α_j) = sym[i] * cartan[i][j]`.
    sym: Vec<Q>,
    positive: Vec<Vec<i64>>,
    coroots: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
    weyl: OnceLock<Vec<WeylElement>>,
}

impl RootSystem {
    /// Reflection closure of the simple roots.
    pub fn build(input: &CartanMatrixInput) -> Result<RootSystem> {
        input.validate()?;
        let c = &input.cartan;
        let l = c.len();
        let sym = symmetrizer(c)?;

        let unit = |i: usize| -> Vec<i64> { (0..l).map(|k| i64::from(k == i)).collect() };
        let mut seen: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
        let mut queue = VecDeque::new();
        for i in 0..l {
            seen.insert(unit(i), unit(i));
            queue.push_back(unit(i));
        }
        while let Some(beta) = queue.pop_front() {
            let cobeta = seen[&beta].clone();
            for i in 0..l {
                // s_i β = β - β(h_i) α_i and s_i h_β = h_β - α_i(h_β) h_i
                let b_hi: i64 = (0..l).map(|j| beta[j] * c[i][j]).sum();
                let ai_hb: i64 = (0..l).map(|j| cobeta[j] * c[j][i]).sum();
                let mut r = beta.clone();
                r[i] -= b_hi;
                let mut cr = cobeta.clone();
                cr[i] -= ai_hb;
                if r.iter().any(|x| x.abs() > HEIGHT_BOUND) {
                    return Err(Error::NotFiniteType(HEIGHT_BOUND));
                }
                if !seen.contains_key(&r) {
                    seen.insert(r.clone(), cr);
                    queue.push_back(r);
                }
            }
        }

        let mut positive: Vec<Vec<i64>> = seen
            .keys()
            .filter(|r| r.iter().all(|&x| x >= 0))
            .cloned()
            .collect();
        for r in seen.keys() {
            let pos = r.iter().all(|&x| x >= 0);
            let neg = r.iter().all(|&x| x <= 0);
            if !(pos || neg) {
                return Err(Error::InvalidCartan(format!("mixed-sign root {r:?}")));
            }
            let negated: Vec<i64> = r.iter().map(|x| -x).collect();
            if !seen.contains_key(&negated) {
                return Err(Error::InvalidCartan(format!("root {r:?} without its negative")));
            }
        }
        positive.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let coroots: Vec<Vec<i64>> = positive.iter().map(|r| seen[r].clone()).collect();
        let index = positive
            .iter()
            .enumerate()
            .map(|(k, r)| (r.clone(), k))
            .collect();

        let cq: Vec<Vec<Q>> = c.iter().map(|row| row.iter().map(|&x| q(x)).collect()).collect();
        let cartan_inv = linalg::inverse(&cq)
            .ok_or_else(|| Error::InvalidCartan("singular Cartan matrix".into()))?;

        let rs = RootSystem {
            label: input.label.clone(),
            cartan: c.clone(),
            cartan_inv,
            sym,
            positive,
            coroots,
            index,
            weyl: OnceLock::new(),
        };
        for (k, alpha) in rs.positive.iter().enumerate() {
            let pairing: i64 = (0..l)
                .map(|i| rs.coroots[k][i] * (0..l).map(|j| alpha[j] * c[i][j]).sum::<i64>())
                .sum();
            if pairing != 2 {
                return Err(Error::Consistency(format!("α(h_α) = {pairing} for α = {alpha:?}")));
            }
        }
        Ok(rs)
    }

    pub fn from_label(label: &str) -> Result<RootSystem> {
        RootSystem::build(&CartanMatrixInput::from_label(label)?)
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Positive roots in simple-root coordinates, ordered by height then
    /// reverse-lexicographically (so `α_1` precedes `α_2`).
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive
    }

    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    /// Coroot `h_α` of the k-th positive root in the basis `h_1, …, h_l`.
    pub fn coroot(&self, k: usize) -> &[i64] {
        &self.coroots[k]
    }

    pub fn root_index(&self, alpha: &[i64]) -> Option<usize> {
        self.index.get(alpha).copied()
    }

    pub fn is_root(&self, alpha: &[i64]) -> bool {
        if self.index.contains_key(alpha) {
            return true;
        }
        let neg: Vec<i64> = alpha.iter().map(|x| -x).collect();
        self.index.contains_key(&neg)
    }

    pub fn highest_root(&self) -> &[i64] {
        self.positive.last().expect("nonempty root system")
    }

    /// `(α, β)` for the W-invariant form normalized by the symmetrizer.
    pub fn inner(&self, a: &[i64], b: &[i64]) -> Q {
        let l = self.rank();
        let mut s = Q::zero();
        for i in 0..l {
            if a[i] == 0 {
                continue;
            }
            for j in 0..l {
                if b[j] != 0 {
                    s += &self.sym[i] * q(a[i] * b[j] * self.cartan[i][j]);
                }
            }
        }
        s
    }

    /// Converts a root-lattice vector in simple-root coordinates to a weight.
    pub fn root_to_weight(&self, alpha: &[i64]) -> Weight {
        let l = self.rank();
        Weight::new(
            (0..l)
                .map(|i| q((0..l).map(|j| alpha[j] * self.cartan[i][j]).sum()))
                .collect(),
        )
    }

    /// Simple-root coordinates of a weight (rational in general).
    pub fn weight_to_root_coords(&self, lambda: &Weight) -> Vec<Q> {
        linalg::mat_vec(&self.cartan_inv, &lambda.coords)
    }

    /// Integer simple-root coordinates of `λ - μ`, if it lies in the root lattice.
    pub fn difference_in_root_lattice(&self, lambda: &Weight, mu: &Weight) -> Option<Vec<i64>> {
        self.weight_to_root_coords(&lambda.sub(mu))
            .iter()
            .map(rational::to_i64)
            .collect()
    }

    pub fn check_weight(&self, lambda: &Weight) -> Result<()> {
        if lambda.rank() != self.rank() {
            return Err(Error::Dimension {
                expected: self.rank(),
                got: lambda.rank(),
            });
        }
        Ok(())
    }

    pub fn rho(&self) -> Weight {
        let l = self.rank();
        let mut sum = vec![0i64; l];
        for r in &self.positive {
            for i in 0..l {
                sum[i] += r[i];
            }
        }
        let two_rho = self.root_to_weight(&sum);
        Weight::new(two_rho.coords.iter().map(|x| x / q(2)).collect())
    }

    /// `⟨λ, α̌⟩ = λ(h_α)` for any root α (positive or negative).
    pub fn pairing(&self, lambda: &Weight, alpha: &[i64]) -> Result<Q> {
        let (k, sign) = match self.root_index(alpha) {
            Some(k) => (k, 1),
            None => {
                let neg: Vec<i64> = alpha.iter().map(|x| -x).collect();
                match self.root_index(&neg) {
                    Some(k) => (k, -1),
                    None => return Err(Error::NotARoot(alpha.to_vec())),
                }
            }
        };
        Ok(self.pairing_positive(lambda, k) * q(sign))
    }

    pub(crate) fn pairing_positive(&self, lambda: &Weight, k: usize) -> Q {
        self.coroots[k]
            .iter()
            .zip(&lambda.coords)
            .map(|(&c, x)| q(c) * x)
            .sum()
    }

    fn simple_reflection_matrix(&self, i: usize) -> Vec<Vec<i64>> {
        let l = self.rank();
        let mut m: Vec<Vec<i64>> = (0..l).map(|r| (0..l).map(|c| i64::from(r == c)).collect()).collect();
        // (s_i λ)_k = λ_k - λ_i C_{ki}
        for (k, row) in m.iter_mut().enumerate() {
            row[i] -= self.cartan[k][i];
        }
        m
    }

    pub fn simple_reflection(&self, i: usize) -> WeylElement {
        WeylElement {
            word: vec![i],
            matrix: self.simple_reflection_matrix(i),
        }
    }

    pub fn identity(&self) -> WeylElement {
        let l = self.rank();
        WeylElement {
            word: vec![],
            matrix: (0..l).map(|r| (0..l).map(|c| i64::from(r == c)).collect()).collect(),
        }
    }

    /// Product of simple reflections `s_{w[0]} s_{w[1]} ⋯`.
    pub fn element_from_word(&self, word: &[usize]) -> WeylElement {
        let mut m = self.identity().matrix;
        for &i in word {
            m = mat_mul(&m, &self.simple_reflection_matrix(i));
        }
        WeylElement {
            word: word.to_vec(),
            matrix: m,
        }
    }

    pub fn inverse(&self, w: &WeylElement) -> WeylElement {
        let rev: Vec<usize> = w.word.iter().rev().copied().collect();
        self.element_from_word(&rev)
    }

    /// All elements of W with shortest words, in breadth-first (length) order.
    ///
    /// Panics past `WEYL_ORDER_LIMIT` elements; `try_weyl_group` checks first.
    pub fn weyl_group(&self) -> &[WeylElement] {
        self.weyl.get_or_init(|| {
            let l = self.rank();
            let gens: Vec<Vec<Vec<i64>>> = (0..l).map(|i| self.simple_reflection_matrix(i)).collect();
            let id = self.identity();
            let mut seen: HashSet<Vec<Vec<i64>>> = HashSet::from([id.matrix.clone()]);
            let mut out = vec![id];
            let mut head = 0;
            while head < out.len() {
                let w = out[head].clone();
                head += 1;
                for (i, g) in gens.iter().enumerate() {
                    let m = mat_mul(&w.matrix, g);
                    if seen.insert(m.clone()) {
                        let mut word = w.word.clone();
                        word.push(i);
                        out.push(WeylElement { word, matrix: m });
                        assert!(out.len() <= WEYL_ORDER_LIMIT, "Weyl group too large to enumerate");
                    }
                }
            }
            out
        })
    }

    /// `|W|` as the product of the degrees, read off from the root heights
    /// (the number of exponents `≥ k` equals the number of roots of height `k`).
    pub fn weyl_order(&self) -> u128 {
        let mut counts: Vec<u128> = Vec::new();
        for r in &self.positive {
            let h = r.iter().sum::<i64>() as usize;
            if counts.len() < h {
                counts.resize(h, 0);
            }
            counts[h - 1] += 1;
        }
        let mut order = 1u128;
        for k in 0..counts.len() {
            let next = counts.get(k + 1).copied().unwrap_or(0);
            order *= ((k + 2) as u128).pow((counts[k] - next) as u32);
        }
        order
    }

    /// `weyl_group` with a size check instead of a panic.
    pub fn try_weyl_group(&self) -> Result<&[WeylElement]> {
        let order = self.weyl_order();
        if order > WEYL_ORDER_LIMIT as u128 {
            return Err(Error::WeylGroupTooLarge(order));
        }
        Ok(self.weyl_group())
    }

    /// `w·λ = w(λ+ρ) − ρ`.
    pub fn dot_action(&self, w: &WeylElement, lambda: &Weight) -> Weight {
        let rho = self.rho();
        w.apply(&lambda.add(&rho)).sub(&rho)
    }

    /// The dot orbit of λ, deduplicated and in block ordering.
    pub fn dot_orbit(&self, lambda: &Weight) -> Vec<Weight> {
        let set: BTreeSet<Weight> = self
            .weyl_group()
            .iter()
            .map(|w| self.dot_action(w, lambda))
            .collect();
        self.block_ordering(set.into_iter().collect())
    }

    /// `μ ≤ λ` iff `λ − μ` is a nonnegative integer combination of simple roots.
    pub fn leq(&self, mu: &Weight, lambda: &Weight) -> bool {
        self.weight_to_root_coords(&lambda.sub(mu))
            .iter()
            .all(rational::is_nonneg_integer)
    }

    /// Height of `λ − μ` (sum of its simple-root coordinates), possibly non-integral.
    pub fn height_of_difference(&self, lambda: &Weight, mu: &Weight) -> Q {
        self.weight_to_root_coords(&lambda.sub(mu)).into_iter().sum()
    }

    /// Total order refining the reverse of `≤`: higher weights first, ties
    /// broken lexicographically on H-coordinates.
    pub fn block_ordering(&self, mut weights: Vec<Weight>) -> Vec<Weight> {
        let key = |w: &Weight| -> Q { self.weight_to_root_coords(w).into_iter().sum() };
        weights.sort_by(|a, b| key(b).cmp(&key(a)).then_with(|| a.cmp(b)));
        weights.dedup();
        weights
    }

    pub fn is_antidominant(&self, lambda: &Weight, convention: Convention) -> bool {
        let shifted = lambda.add(&self.rho());
        (0..self.num_positive()).all(|k| {
            let p = self.pairing_positive(&shifted, k);
            match convention {
                Convention::Strict => !rational::is_positive_integer(&p),
                Convention::Paper => !rational::is_nonneg_integer(&p),
            }
        })
    }

    /// Kostant partition function by coin-change dynamic programming over
    /// the positive roots.
    pub fn kostant(&self, nu: &[i64]) -> u128 {
        if nu.iter().any(|&x| x < 0) {
            return 0;
        }
        let dims: Vec<usize> = nu.iter().map(|&x| x as usize + 1).collect();
        let size: usize = dims.iter().product();
        let mut strides = vec![1usize; dims.len()];
        for i in (0..dims.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * dims[i + 1];
        }
        let mut ways = vec![0u128; size];
        ways[0] = 1;
        for root in &self.positive {
            if root.iter().zip(nu).any(|(&r, &n)| r > n) {
                continue;
            }
            let shift: usize = root.iter().zip(&strides).map(|(&r, &s)| r as usize * s).sum();
            let mut coord = vec![0usize; dims.len()];
            for flat in 0..size {
                if flat > 0 {
                    // odometer increment in row-major order
                    let mut k = dims.len() - 1;
                    loop {
                        coord[k] += 1;
                        if coord[k] < dims[k] {
                            break;
                        }
                        coord[k] = 0;
                        k -= 1;
                    }
                }
                if coord.iter().zip(root).all(|(&c, &r)| c as i64 >= r) {
                    let add = ways[flat - shift];
                    ways[flat] = ways[flat].checked_add(add).expect("Kostant count overflows u128");
                }
            }
        }
        ways[size - 1]
    }

    /// Weyl dimension formula for dominant integral λ.
    pub fn weyl_dimension(&self, lambda: &Weight) -> Result<u128> {
        self.check_weight(lambda)?;
        if !lambda.is_dominant_integral() {
            return Err(Error::NotDominantIntegral(lambda.to_string()));
        }
        let rho = self.rho();
        let shifted = lambda.add(&rho);
        let mut num = q(1);
        for k in 0..self.num_positive() {
            num *= self.pairing_positive(&shifted, k) / self.pairing_positive(&rho, k);
        }
        if !num.is_integer() || num.is_negative() {
            return Err(Error::Consistency(format!("Weyl dimension {num} not a natural number")));
        }
        u128::try_from(num.to_integer())
            .map_err(|_| Error::Consistency("Weyl dimension overflow".into()))
    }
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

/// Solves `d_i C_ij = d_j C_ji` along a spanning forest of the Dynkin graph.
fn symmetrizer(c: &[Vec<i64>]) -> Result<Vec<Q>> {
    let l = c.len();
    let mut d: Vec<Option<Q>> = vec![None; l];
    for start in 0..l {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(q(1));
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..l {
                if i == j || c[i][j] == 0 {
                    continue;
                }
                let dj = d[i].clone().unwrap() * q(c[i][j]) / q(c[j][i]);
                match &d[j] {
                    None => {
                        d[j] = Some(dj);
                        stack.push(j);
                    }
                    Some(existing) if *existing != dj => {
                        return Err(Error::InvalidCartan("matrix is not symmetrizable".into()));
                    }
                    _ => {}
                }
            }
        }
    }
    Ok(d.into_iter().map(Option::unwrap).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q_frac;

    fn a1() -> RootSystem {
        RootSystem::from_label("A1").unwrap()
    }
    fn a2() -> RootSystem {
        RootSystem::from_label("A2").unwrap()
    }

    #[test]
    fn root_counts() {
        assert_eq!(a1().positive_roots(), &[vec![1]]);
        assert_eq!(a2().positive_roots(), &[vec![1, 0], vec![0, 1], vec![1, 1]]);
        let g2 = RootSystem::from_label("G2").unwrap();
        assert_eq!(g2.num_positive(), 6);
        assert_eq!(g2.highest_root(), &[3, 2]);
        for (label, m) in [("B2", 4), ("C3", 9), ("D4", 12), ("F4", 24), ("E6", 36), ("A4", 10)] {
            assert_eq!(RootSystem::from_label(label).unwrap().num_positive(), m, "{label}");
        }
    }

    #[test]
    fn g2_short_root_is_alpha1() {
        let g2 = RootSystem::from_label("G2").unwrap();
        assert_eq!(g2.inner(&[1, 0], &[1, 0]) * q(3), g2.inner(&[0, 1], &[0, 1]));
    }

    #[test]
    fn rejects_bad_matrices() {
        let affine = CartanMatrixInput::new(vec![vec![2, -2], vec![-2, 2]]);
        assert_eq!(RootSystem::build(&affine).unwrap_err(), Error::NotFiniteType(HEIGHT_BOUND));
        let hyper = CartanMatrixInput::new(vec![vec![2, -3], vec![-3, 2]]);
        assert!(matches!(RootSystem::build(&hyper), Err(Error::NotFiniteType(_))));
        let bad_diag = CartanMatrixInput::new(vec![vec![1, 0], vec![0, 2]]);
        assert!(matches!(RootSystem::build(&bad_diag), Err(Error::InvalidCartan(_))));
        let asym = CartanMatrixInput::new(vec![vec![2, -1], vec![0, 2]]);
        assert!(matches!(RootSystem::build(&asym), Err(Error::InvalidCartan(_))));
        assert!(matches!(CartanMatrixInput::from_label("Q3"), Err(Error::UnknownLabel(_))));
        assert!(matches!(CartanMatrixInput::from_label("D3"), Err(Error::UnknownLabel(_))));
    }

    #[test]
    fn product_type_is_accepted() {
        let a1a1 = RootSystem::build(&CartanMatrixInput::new(vec![vec![2, 0], vec![0, 2]])).unwrap();
        assert_eq!(a1a1.num_positive(), 2);
        assert_eq!(a1a1.weyl_order(), 4);
    }

    #[test]
    fn rho_is_all_ones() {
        for label in ["A1", "A2", "B2", "G2", "C3", "F4"] {
            let rs = RootSystem::from_label(label).unwrap();
            assert_eq!(rs.rho(), Weight::from_ints(&vec![1; rs.rank()]), "{label}");
        }
    }

    #[test]
    fn pairing_examples() {
        let rs = a2();
        let rho = rs.rho();
        assert_eq!(rs.pairing(&rho, &[1, 0]).unwrap(), q(1));
        assert_eq!(rs.pairing(&rho, &[1, 1]).unwrap(), q(2));
        assert_eq!(rs.pairing(&rho, &[-1, -1]).unwrap(), q(-2));
        assert_eq!(rs.pairing(&Weight::zero(2), &[0, 1]).unwrap(), q(0));
        assert_eq!(rs.pairing(&rho, &[2, 0]), Err(Error::NotARoot(vec![2, 0])));
    }

    #[test]
    fn dot_action_examples() {
        let rs = a1();
        let s = rs.simple_reflection(0);
        assert_eq!(rs.dot_action(&rs.identity(), &Weight::from_ints(&[7])), Weight::from_ints(&[7]));
        assert_eq!(rs.dot_action(&s, &Weight::from_ints(&[3])), Weight::from_ints(&[-5]));
        assert_eq!(rs.dot_action(&s, &Weight::from_ints(&[-1])), Weight::from_ints(&[-1]));
    }

    #[test]
    fn orbits() {
        let rs = a1();
        assert_eq!(rs.dot_orbit(&Weight::from_ints(&[0])), vec![Weight::from_ints(&[0]), Weight::from_ints(&[-2])]);
        assert_eq!(rs.dot_orbit(&Weight::from_ints(&[-1])), vec![Weight::from_ints(&[-1])]);
        let rs = a2();
        let orbit = rs.dot_orbit(&Weight::zero(2));
        assert_eq!(orbit.len(), 6);
        assert_eq!(orbit[0], Weight::zero(2));
        assert_eq!(orbit[5], Weight::from_ints(&[-2, -2]));
        let minus_rho = Weight::from_ints(&[-1, -1]);
        assert_eq!(rs.dot_orbit(&minus_rho), vec![minus_rho]);
    }

    #[test]
    fn order_examples() {
        let rs = a1();
        assert!(rs.leq(&Weight::from_ints(&[-5]), &Weight::from_ints(&[3])));
        assert!(!rs.leq(&Weight::from_ints(&[-4]), &Weight::from_ints(&[3])));
        let rs = a2();
        let l = Weight::from_ints(&[2, -1]);
        assert!(rs.leq(&l, &l));
        assert!(!rs.leq(&Weight::from_ints(&[1, -1]), &Weight::zero(2)));
        let half = Weight::new(vec![q_frac(1, 2), q(0)]);
        assert!(!rs.leq(&Weight::zero(2), &half));
    }

    #[test]
    fn antidominance_conventions() {
        let rs = a1();
        let m1 = Weight::from_ints(&[-1]);
        assert!(rs.is_antidominant(&m1, Convention::Strict));
        assert!(!rs.is_antidominant(&m1, Convention::Paper));
        let m5 = Weight::from_ints(&[-5]);
        assert!(rs.is_antidominant(&m5, Convention::Strict));
        assert!(rs.is_antidominant(&m5, Convention::Paper));
        assert!(!rs.is_antidominant(&Weight::zero(1), Convention::Strict));
        assert!(rs.is_antidominant(&Weight::new(vec![q_frac(1, 2)]), Convention::Strict));
    }

    #[test]
    fn kostant_examples() {
        let rs = a2();
        assert_eq!(rs.kostant(&[0, 0]), 1);
        assert_eq!(rs.kostant(&[1, 1]), 2);
        assert_eq!(rs.kostant(&[2, 2]), 3);
        assert_eq!(rs.kostant(&[2, 0]), 1);
        assert_eq!(rs.kostant(&[-1, 2]), 0);
        assert_eq!(a1().kostant(&[5]), 1);
        // B2: ν = α1 + 2α2 from {α1,α2,α1+α2,α1+2α2}
        let b2 = RootSystem::from_label("B2").unwrap();
        assert_eq!(b2.kostant(&[1, 2]), 3);
    }

    #[test]
    fn weyl_dimension_examples() {
        assert_eq!(a1().weyl_dimension(&Weight::zero(1)).unwrap(), 1);
        assert_eq!(a1().weyl_dimension(&Weight::from_ints(&[3])).unwrap(), 4);
        assert_eq!(a2().weyl_dimension(&Weight::from_ints(&[1, 1])).unwrap(), 8);
        let g2 = RootSystem::from_label("G2").unwrap();
        assert_eq!(g2.weyl_dimension(&Weight::from_ints(&[1, 0])).unwrap(), 7);
        assert_eq!(g2.weyl_dimension(&Weight::from_ints(&[0, 1])).unwrap(), 14);
        assert!(matches!(a1().weyl_dimension(&Weight::from_ints(&[-1])), Err(Error::NotDominantIntegral(_))));
    }

    #[test]
    fn weyl_group_orders() {
        for (label, n) in [("A1", 2), ("A2", 6), ("B2", 8), ("G2", 12), ("A3", 24), ("B3", 48)] {
            assert_eq!(RootSystem::from_label(label).unwrap().weyl_order(), n, "{label}");
        }
    }

    #[test]
    fn simple_reflections_permute_roots() {
        for label in ["A2", "B2", "G2", "C3"] {
            let rs = RootSystem::from_label(label).unwrap();
            let l = rs.rank();
            for i in 0..l {
                for (k, beta) in rs.positive_roots().iter().enumerate() {
                    let b_hi: i64 = (0..l).map(|j| beta[j] * rs.cartan()[i][j]).sum();
                    let mut image = beta.clone();
                    image[i] -= b_hi;
                    let is_simple_i = beta.iter().enumerate().all(|(j, &x)| x == i64::from(j == i));
                    if is_simple_i {
                        assert!(image.iter().all(|&x| x <= 0), "{label}: s_i α_i");
                        assert_eq!(image[i], -1);
                    } else {
                        assert!(rs.root_index(&image).is_some(), "{label}: s_{i} β_{k} not positive");
                    }
                }
            }
        }
    }
}
