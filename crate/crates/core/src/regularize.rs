//! Regularizing decomposition `A = A_reg ⊕ A_1 ⊕ ... ⊕ A_r`.
//!
//! The regular part lives on the stable images `Â_i^z V_i` of the
//! once-around operators, the singular summands are chains, and their
//! multiplicities `n_{lj}` are read off the kernel-dimension table
//!
//! ```text
//! k_{ij} = dim Ker(A_{[i+j]} ... A_{[i+1]} A_i)
//! n_{lj} = k_{[l-j],j} - k_{[l-j],j-1} - k_{[l-j-1],j+1} + k_{[l-j-1],j}
//! ```
//!
//! Kernels of the path composites are never formed from explicit products.
//! The row space of `A_{[v+h-1]}⋯A_v` equals the row space of
//! `R([v+1], h-1) · A_v` where `R` is a row basis of the shorter composite,
//! so every level is built from canonical (reduced) row bases and entries
//! stay small.

use std::collections::BTreeMap;

use crate::cycle::{wrap, ChainSummand, Cycle, TransformationSystem};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;

/// `k_{ij}` for `i in 1..=t`, `j in 0..=jmax`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantTable {
    t: usize,
    jmax: usize,
    /// `k[i - 1][j]`
    k: Vec<Vec<usize>>,
}

impl InvariantTable {
    /// Panics unless every row has `jmax + 1` entries.
    pub fn from_rows(k: Vec<Vec<usize>>) -> Self {
        let t = k.len();
        let jmax = k.first().map_or(0, |r| r.len().saturating_sub(1));
        assert!(k.iter().all(|r| r.len() == jmax + 1), "ragged invariant table");
        InvariantTable { t, jmax, k }
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn jmax(&self) -> usize {
        self.jmax
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.k
    }

    /// `k_{ij}` with `k_{i,-1} = 0`; `i` is taken modulo `t`. Panics for `j > jmax`.
    pub fn k(&self, i: i64, j: i64) -> usize {
        if j < 0 {
            return 0;
        }
        self.k[wrap(i, self.t) - 1][j as usize]
    }

    pub fn k_mut(&mut self, i: usize, j: usize) -> &mut usize {
        &mut self.k[i - 1][j]
    }

    /// `σ_{lj} = k_{[l-j],j} - k_{[l-j],j-1}`: chains of length `>= j` ending in `V_l`.
    pub fn sigma(&self, l: usize, j: usize) -> i64 {
        let i = l as i64 - j as i64;
        self.k(i, j as i64) as i64 - self.k(i, j as i64 - 1) as i64
    }

    /// `n_{lj}` by the four-term formula; needs `j + 1 <= jmax`.
    pub fn n(&self, l: usize, j: usize) -> i64 {
        let (l, j) = (l as i64, j as i64);
        self.k(l - j, j) as i64 - self.k(l - j, j - 1) as i64 - self.k(l - j - 1, j + 1) as i64
            + self.k(l - j - 1, j) as i64
    }

    /// `k_{i,jmax} = k_{i,jmax-1}` for every vertex.
    pub fn is_stabilized(&self) -> bool {
        self.jmax >= 1 && self.k.iter().all(|r| r[self.jmax] == r[self.jmax - 1])
    }
}

/// `Â_i = A_{[i+t-1]} ⋯ A_{[i+1]} A_i`, the once-around operator on `V_i`.
pub fn hat_operator<F: Field>(c: &Cycle<F>, vertex: usize) -> Matrix<F> {
    c.path_composite(vertex, c.len())
}

/// Per vertex: canonical bases of the stable image `Â^z V` and of the
/// stable kernel, plus the first exponent at which the rank stops dropping.
struct StableSpaces<F> {
    images: Vec<Matrix<F>>,
    kernels: Vec<Matrix<F>>,
    exponents: Vec<usize>,
}

fn stable_spaces<F: Field>(c: &Cycle<F>) -> StableSpaces<F> {
    let t = c.len();
    let mut out = StableSpaces {
        images: Vec::with_capacity(t),
        kernels: Vec::with_capacity(t),
        exponents: Vec::with_capacity(t),
    };
    for v in 1..=t {
        let hat = hat_operator(c, v);
        let m = c.dim(v);
        let mut image = Matrix::identity(m);
        let mut rows = Matrix::identity(m);
        let mut k = 0;
        loop {
            let next_image = (&hat * &image).column_space();
            let next_rows = (&rows * &hat).row_basis();
            let stable = next_image.ncols() == image.ncols();
            image = next_image;
            rows = next_rows;
            k += 1;
            if stable {
                break;
            }
        }
        // `image`, `rows` are now at exponent k, and rank(Â^{k-1}) = rank(Â^k).
        out.exponents.push((k - 1).max(1));
        out.kernels.push(rows.kernel_basis());
        out.images.push(image);
    }
    out
}

/// Minimal `z >= 1` with `rank Â_i^z = rank Â_i^{z+1}` for every vertex.
pub fn stabilization_exponent<F: Field>(c: &Cycle<F>) -> usize {
    stable_spaces(c).exponents.into_iter().max().unwrap_or(1)
}

/// The splitting `V_i = Â_i^z V_i ⊕ Ker Â_i^z` into invariant sub-cycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FittingSplit<F> {
    /// Restriction to the stable images; every map is invertible.
    pub regular: Cycle<F>,
    /// Columns embed the regular part's spaces into `V_i`.
    pub regular_basis: Vec<Matrix<F>>,
    /// Restriction to the stable kernels; every `Â_i` is nilpotent.
    pub nilpotent: Cycle<F>,
    pub nilpotent_basis: Vec<Matrix<F>>,
    pub z: usize,
}

impl<F: Field> FittingSplit<F> {
    /// `[regular_basis | nilpotent_basis]` per vertex: transforms
    /// `regular ⊕ nilpotent` into the original cycle.
    pub fn witness(&self) -> Result<TransformationSystem<F>> {
        let phis = self
            .regular_basis
            .iter()
            .zip(&self.nilpotent_basis)
            .map(|(r, n)| Matrix::hstack(r.nrows(), &[r, n]))
            .collect::<Result<_>>()?;
        Ok(TransformationSystem::new(phis))
    }
}

pub fn fitting_split<F: Field>(c: &Cycle<F>) -> Result<FittingSplit<F>> {
    c.validate()?;
    let spaces = stable_spaces(c);
    for v in 1..=c.len() {
        let joined = Matrix::hstack(c.dim(v), &[&spaces.images[v - 1], &spaces.kernels[v - 1]])?;
        if joined.ncols() != c.dim(v) || !joined.is_invertible() {
            return Err(Error::Internal(format!("image and kernel do not split V_{v}")));
        }
    }
    let regular = c.restrict(&spaces.images)?;
    if let Some(v) = regular.first_singular_vertex() {
        return Err(Error::Internal(format!("regular part has a singular map at vertex {v}")));
    }
    let nilpotent = c.restrict(&spaces.kernels)?;
    Ok(FittingSplit {
        regular,
        regular_basis: spaces.images,
        nilpotent,
        nilpotent_basis: spaces.kernels,
        z: spaces.exponents.into_iter().max().unwrap_or(1),
    })
}

/// The regular part, on the stable images.
pub fn regular_part<F: Field>(c: &Cycle<F>) -> Result<Cycle<F>> {
    Ok(fitting_split(c)?.regular)
}

/// Row bases `R(v, h)` of the path composites from `v` with `h` steps.
struct PathRowSpaces<F> {
    /// `levels[h][v - 1]`; the last level repeats forever.
    levels: Vec<Vec<Matrix<F>>>,
}

impl<F: Field> PathRowSpaces<F> {
    /// Builds levels until nothing changes for a whole level, or `max_level`.
    fn new(c: &Cycle<F>, max_level: usize) -> Self {
        let t = c.len();
        let mut levels = vec![(1..=t).map(|v| Matrix::identity(c.dim(v))).collect::<Vec<_>>()];
        for _ in 1..=max_level {
            let prev = levels.last().expect("level 0 exists");
            let next: Vec<Matrix<F>> = (1..=t)
                .map(|v| (&prev[c.next(v) - 1] * c.map(v)).row_basis())
                .collect();
            let unchanged = next.iter().zip(prev).all(|(a, b)| a.nrows() == b.nrows());
            levels.push(next);
            if unchanged {
                break;
            }
        }
        PathRowSpaces { levels }
    }

    fn rows(&self, vertex: usize, h: usize) -> &Matrix<F> {
        let level = h.min(self.levels.len() - 1);
        &self.levels[level][vertex - 1]
    }

    fn rank(&self, vertex: usize, h: usize) -> usize {
        self.rows(vertex, h).nrows()
    }

    fn kernel(&self, vertex: usize, h: usize) -> Matrix<F> {
        self.rows(vertex, h).kernel_basis()
    }

    /// Last level that differs from its predecessor.
    fn depth(&self) -> usize {
        self.levels.len() - 1
    }
}

fn default_jmax<F: Field>(c: &Cycle<F>) -> usize {
    c.total_dim().max(1)
}

fn table_from_paths<F: Field>(c: &Cycle<F>, paths: &PathRowSpaces<F>, jmax: usize) -> InvariantTable {
    let k = (1..=c.len())
        .map(|i| (0..=jmax).map(|j| c.dim(i) - paths.rank(i, j + 1)).collect())
        .collect();
    InvariantTable { t: c.len(), jmax, k }
}

/// The exact table `k_{ij}` for `j in 0..=jmax`; `None` uses `jmax = Σ m_i`,
/// beyond which no chain can reach.
pub fn kernel_dim_table<F: Field>(c: &Cycle<F>, jmax: Option<usize>) -> InvariantTable {
    let jmax = jmax.unwrap_or_else(|| default_jmax(c));
    let paths = PathRowSpaces::new(c, jmax + 1);
    table_from_paths(c, &paths, jmax)
}

/// All `(l, j)` with `n_{lj} > 0`, sorted by end vertex then length.
pub fn singular_counts(table: &InvariantTable) -> Result<Vec<ChainSummand>> {
    if !table.is_stabilized() {
        return Err(Error::NotStabilized(table.jmax));
    }
    let mut out = Vec::new();
    for l in 1..=table.t {
        for j in 0..table.jmax {
            let n = table.n(l, j);
            if n < 0 {
                return Err(Error::NegativeCount { l, j, value: n });
            }
            if n > 0 {
                out.push(ChainSummand::new(l, j, n as usize));
            }
        }
    }
    Ok(out)
}

/// Merges equal `(end_vertex, length)` entries and sorts.
pub fn normalize_chains(chains: &[ChainSummand]) -> Vec<ChainSummand> {
    let mut merged: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for c in chains {
        if c.multiplicity > 0 {
            *merged.entry((c.end_vertex, c.length)).or_default() += c.multiplicity;
        }
    }
    merged
        .into_iter()
        .map(|((l, j), n)| ChainSummand::new(l, j, n))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularizingDecomposition<F> {
    pub regular_part: Cycle<F>,
    /// Sorted by end vertex, then length.
    pub chains: Vec<ChainSummand>,
    /// Transforms [`RegularizingDecomposition::canonical_cycle`] into the
    /// decomposed cycle.
    pub witness: TransformationSystem<F>,
    pub z: usize,
}

impl<F: Field> RegularizingDecomposition<F> {
    pub fn t(&self) -> usize {
        self.regular_part.len()
    }

    /// `A_reg ⊕ chain ⊕ ... ⊕ chain`, chains in order, each repeated by multiplicity.
    pub fn canonical_cycle(&self) -> Result<Cycle<F>> {
        let mut out = self.regular_part.clone();
        for c in &self.chains {
            let piece = Cycle::chain(self.t(), c.end_vertex, c.length)?;
            for _ in 0..c.multiplicity {
                out = out.direct_sum(&piece)?;
            }
        }
        Ok(out)
    }

    /// Common dimension of the regular part's spaces.
    pub fn regular_dim(&self) -> usize {
        self.regular_part.dim(1)
    }

    pub fn chain_count(&self) -> usize {
        self.chains.iter().map(|c| c.multiplicity).sum()
    }
}

/// One chain found in the cycle: start vertex and its vectors `x, A x, ...`.
struct FoundChain<F> {
    start: usize,
    vectors: Vec<Matrix<F>>,
}

impl<F> FoundChain<F> {
    fn summand(&self, t: usize) -> (usize, usize) {
        let len = self.vectors.len() - 1;
        (wrap((self.start + len) as i64, t), len)
    }
}

/// Jordan-chain peeling, longest chains first. Chain tops with `h` vectors
/// starting at `v` span a complement of `K(v,h-1) + A_{[v-1]} K([v-1],h+1)`
/// in `K(v,h)`, where `K(v,h)` is the kernel of the `h`-step composite from `v`.
fn peel_chains<F: Field>(c: &Cycle<F>, paths: &PathRowSpaces<F>) -> Result<Vec<FoundChain<F>>> {
    let t = c.len();
    let mut found = Vec::new();
    for h in (1..=paths.depth()).rev() {
        for v in 1..=t {
            let kernel = paths.kernel(v, h);
            let shorter = paths.kernel(v, h - 1);
            let u = c.prev(v);
            let from_prev = c.map(u) * &paths.kernel(u, h + 1);
            let span = Matrix::hstack(c.dim(v), &[&shorter, &from_prev])?;
            for col in Matrix::extension_columns(&span, &kernel)? {
                let mut vectors = Vec::with_capacity(h);
                let mut x = kernel.column(col);
                let mut w = v;
                for _ in 0..h {
                    let next = c.map(w) * &x;
                    vectors.push(x);
                    x = next;
                    w = c.next(w);
                }
                if !x.is_zero() {
                    return Err(Error::Internal(format!("chain from V_{v} does not die after {h} steps")));
                }
                found.push(FoundChain { start: v, vectors });
            }
        }
    }
    Ok(found)
}

/// The regularizing decomposition with a checked witness from the canonical
/// direct sum to `c`.
pub fn regularizing_decomposition<F: Field>(c: &Cycle<F>) -> Result<RegularizingDecomposition<F>> {
    let split = fitting_split(c)?;
    let t = c.len();
    let jmax = default_jmax(c);
    let paths = PathRowSpaces::new(c, jmax + 1);
    let table = table_from_paths(c, &paths, jmax);
    let chains = singular_counts(&table)?;

    let found = peel_chains(c, &paths)?;
    let mut grouped: BTreeMap<(usize, usize), Vec<FoundChain<F>>> = BTreeMap::new();
    for ch in found {
        grouped.entry(ch.summand(t)).or_default().push(ch);
    }
    let peeled: Vec<ChainSummand> = grouped
        .iter()
        .map(|(&(l, j), v)| ChainSummand::new(l, j, v.len()))
        .collect();
    if peeled != chains {
        return Err(Error::Internal(format!(
            "peeled chains {peeled:?} disagree with the kernel table {chains:?}"
        )));
    }

    let mut columns: Vec<Vec<Matrix<F>>> = (0..t).map(|_| Vec::new()).collect();
    for chain in grouped.values().flatten() {
        let mut w = chain.start;
        for x in &chain.vectors {
            columns[w - 1].push(x.clone());
            w = c.next(w);
        }
    }
    let phis = (1..=t)
        .map(|v| {
            let mut parts = vec![&split.regular_basis[v - 1]];
            parts.extend(columns[v - 1].iter());
            Matrix::hstack(c.dim(v), &parts)
        })
        .collect::<Result<_>>()?;

    let decomposition = RegularizingDecomposition {
        regular_part: split.regular,
        chains,
        witness: TransformationSystem::new(phis),
        z: split.z,
    };
    let canonical = decomposition.canonical_cycle()?;
    canonical
        .check_commutes(c, &decomposition.witness)
        .map_err(|e| Error::Internal(format!("decomposition witness rejected: {e}")))?;
    Ok(decomposition)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    type M = Matrix<Rational>;
    type C = Cycle<Rational>;

    fn reg23() -> C {
        C::new(vec![1, 1], vec![M::from_i64(1, 1, &[2]), M::from_i64(1, 1, &[3])]).unwrap()
    }

    #[test]
    fn hat_operator_examples() {
        assert_eq!(hat_operator(&reg23(), 1), M::from_i64(1, 1, &[6]));
        let id = C::identity_form(3, &M::identity(2)).unwrap();
        assert_eq!(hat_operator(&id, 2), M::identity(2));
        let chain = C::chain(5, 2, 8).unwrap();
        // e_8 -> e_9 -> e_10 -> e_11 -> e_12 -> 0
        assert_eq!(hat_operator(&chain, 3), M::zeros(1, 1));
    }

    #[test]
    fn stabilization_examples() {
        assert_eq!(stabilization_exponent(&reg23()), 1);
        for n in 1..=5 {
            assert_eq!(stabilization_exponent(&C::chain(1, 1, n - 1).unwrap()), n);
        }
        // Each vertex of the worked chain holds at most two chain vectors.
        assert_eq!(stabilization_exponent(&C::chain(5, 2, 8).unwrap()), 2);
        assert_eq!(stabilization_exponent(&C::zero(vec![0, 0]).unwrap()), 1);
    }

    #[test]
    fn fitting_split_examples() {
        let s = fitting_split(&reg23()).unwrap();
        assert_eq!(s.regular.dims(), &[1, 1]);
        assert_eq!(s.nilpotent.dims(), &[0, 0]);

        let chain = C::chain(4, 3, 5).unwrap();
        let s = fitting_split(&chain).unwrap();
        assert_eq!(s.regular.dims(), &[0, 0, 0, 0]);
        assert_eq!(s.nilpotent.dims(), chain.dims());

        let mixed = reg23().direct_sum(&C::chain(2, 1, 0).unwrap()).unwrap();
        let s = fitting_split(&mixed).unwrap();
        assert_eq!(s.regular.dims(), &[1, 1]);
        assert_eq!(s.nilpotent.dims(), &[1, 0]);
        let sum = s.regular.direct_sum(&s.nilpotent).unwrap();
        assert!(sum.commutes(&mixed, &s.witness().unwrap()));
    }

    #[test]
    fn worked_example_table() {
        let c = C::chain(5, 2, 8).unwrap();
        let table = kernel_dim_table(&c, None);
        assert_eq!(table.jmax(), 9);
        assert_eq!(table.k(2, 0), 1);
        assert_eq!(table.k(3, 0), 0);
        assert_eq!(table.k(4, 8), 2);
        assert_eq!(table.k(4, 7), 1);
        assert_eq!(table.k(3, 9), 1);
        assert_eq!(table.k(3, 8), 1);
        // l = 2, j = 8: [l-j] = 4, [l-j-1] = 3.
        assert_eq!(table.n(2, 8), 2 - 1 - 1 + 1);
        assert_eq!(singular_counts(&table).unwrap(), vec![ChainSummand::new(2, 8, 1)]);
    }

    #[test]
    fn counts_examples() {
        assert!(singular_counts(&kernel_dim_table(&reg23(), None)).unwrap().is_empty());
        let c = C::chain(3, 1, 2).unwrap();
        let two = c.direct_sum(&c).unwrap();
        assert_eq!(
            singular_counts(&kernel_dim_table(&two, None)).unwrap(),
            vec![ChainSummand::new(1, 2, 2)]
        );
    }

    #[test]
    fn unstabilized_and_negative_tables_are_errors() {
        let c = C::chain(1, 1, 4).unwrap();
        let short = kernel_dim_table(&c, Some(2));
        assert_eq!(singular_counts(&short), Err(Error::NotStabilized(2)));

        let mut bad = kernel_dim_table(&C::chain(2, 1, 1).unwrap(), None);
        *bad.k_mut(1, 0) += 1;
        assert!(matches!(singular_counts(&bad), Err(Error::NegativeCount { .. })));
    }

    #[test]
    fn decomposition_of_worked_example() {
        let c = C::chain(5, 2, 8).unwrap();
        let d = regularizing_decomposition(&c).unwrap();
        assert_eq!(d.regular_part.dims(), &[0; 5]);
        assert_eq!(d.chains, vec![ChainSummand::new(2, 8, 1)]);
        assert!(d.canonical_cycle().unwrap().commutes(&c, &d.witness));
    }

    #[test]
    fn decomposition_of_mixed_cycle() {
        let c = reg23()
            .direct_sum(&C::chain(2, 2, 3).unwrap())
            .unwrap()
            .direct_sum(&C::chain(2, 1, 0).unwrap())
            .unwrap()
            .direct_sum(&C::chain(2, 2, 3).unwrap())
            .unwrap();
        let d = regularizing_decomposition(&c).unwrap();
        assert_eq!(d.regular_part.dims(), &[1, 1]);
        assert_eq!(hat_operator(&d.regular_part, 1), M::from_i64(1, 1, &[6]));
        assert_eq!(d.chains, vec![ChainSummand::new(1, 0, 1), ChainSummand::new(2, 3, 2)]);
        assert_eq!(d.z, 2);
    }

    #[test]
    fn empty_cycle() {
        let c = C::zero(vec![0, 0, 0]).unwrap();
        let d = regularizing_decomposition(&c).unwrap();
        assert!(d.chains.is_empty());
        assert_eq!(d.regular_part.dims(), &[0, 0, 0]);
    }
}
