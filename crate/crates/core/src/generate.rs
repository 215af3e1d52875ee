//! Seeded random instances with known decompositions.
//!
//! An instance is the canonical direct sum `identity_form(P) ⊕ chains`,
//! conjugated by a random [`TransformationSystem`]; that system is the
//! ground-truth witness.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cycle::{ChainSummand, Cycle, TransformationSystem};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::regularize::{normalize_chains, RegularizingDecomposition};

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSpec<F> {
    pub t: usize,
    pub chains: Vec<ChainSummand>,
    /// Product operator of the regular part; must be invertible.
    pub regular_product: Option<Matrix<F>>,
}

impl<F: Field> GeneratorSpec<F> {
    pub fn new(t: usize, chains: Vec<ChainSummand>, regular_product: Option<Matrix<F>>) -> Self {
        GeneratorSpec {
            t,
            chains,
            regular_product,
        }
    }

    pub fn regular_size(&self) -> usize {
        self.regular_product.as_ref().map_or(0, Matrix::nrows)
    }

    pub fn validate(&self) -> Result<()> {
        if self.t == 0 {
            return Err(Error::InvalidSpec("t must be at least 1".into()));
        }
        for c in &self.chains {
            if c.end_vertex == 0 || c.end_vertex > self.t {
                return Err(Error::InvalidSpec(format!("end vertex {} outside 1..={}", c.end_vertex, self.t)));
            }
            if c.multiplicity == 0 {
                return Err(Error::InvalidSpec(format!("chain ({}, {}) has multiplicity 0", c.end_vertex, c.length)));
            }
        }
        if let Some(p) = &self.regular_product {
            if !p.is_invertible() {
                return Err(Error::InvalidSpec("regular product must be invertible".into()));
            }
        }
        Ok(())
    }

    /// Dimension vector of every instance of this spec.
    pub fn dims(&self) -> Vec<usize> {
        let mut dims = vec![self.regular_size(); self.t];
        for c in &self.chains {
            for (d, add) in dims.iter_mut().zip(c.dims(self.t)) {
                *d += add * c.multiplicity;
            }
        }
        dims
    }

    /// Minimal stabilization exponent: the largest number of vectors one chain
    /// places in a single space, and at least 1.
    pub fn expected_z(&self) -> usize {
        self.chains
            .iter()
            .flat_map(|c| c.dims(self.t))
            .max()
            .unwrap_or(0)
            .max(1)
    }

    /// The canonical decomposition with the identity as witness.
    pub fn canonical(&self) -> Result<RegularizingDecomposition<F>> {
        self.validate()?;
        let regular_part = match &self.regular_product {
            Some(p) => Cycle::identity_form(self.t, p)?,
            None => Cycle::zero(vec![0; self.t])?,
        };
        Ok(RegularizingDecomposition {
            regular_part,
            chains: normalize_chains(&self.chains),
            witness: TransformationSystem::identity(&self.dims()),
            z: self.expected_z(),
        })
    }
}

/// Unit lower triangular times unit upper triangular, off-diagonal entries in
/// `-1..=1`: determinant 1.
pub fn random_unimodular<F: Field, R: Rng + ?Sized>(n: usize, rng: &mut R) -> Matrix<F> {
    let mut lower = Matrix::identity(n);
    let mut upper = Matrix::identity(n);
    for r in 0..n {
        for c in 0..r {
            lower[(r, c)] = F::sample_small(rng, 1);
            upper[(c, r)] = F::sample_small(rng, 1);
        }
    }
    &lower * &upper
}

pub fn random_transformation<F: Field, R: Rng + ?Sized>(dims: &[usize], rng: &mut R) -> TransformationSystem<F> {
    TransformationSystem::new(dims.iter().map(|&m| random_unimodular(m, rng)).collect())
}

/// A random invertible `n x n` matrix with entries in `-bound..=bound`.
pub fn random_invertible<F: Field, R: Rng + ?Sized>(n: usize, bound: i64, rng: &mut R) -> Matrix<F> {
    loop {
        let m = Matrix::from_fn(n, n, |_, _| F::sample_small(rng, bound));
        if m.is_invertible() {
            return m;
        }
    }
}

/// A random invertible product with repeated eigenvalues more often than a
/// uniformly random matrix would have them: a conjugated block-triangular
/// matrix built from small Jordan-like blocks.
pub fn random_structured_invertible<F: Field, R: Rng + ?Sized>(n: usize, rng: &mut R) -> Matrix<F> {
    if n == 0 || rng.gen_bool(0.4) {
        return random_invertible(n, 2, rng);
    }
    let eigen: Vec<i64> = vec![-2, -1, 1, 2, 3];
    let mut m = Matrix::zeros(n, n);
    let mut r = 0;
    while r < n {
        let size = rng.gen_range(1..=(n - r).min(3));
        let lambda = *eigen.choose(rng).expect("nonempty");
        for k in 0..size {
            m[(r + k, r + k)] = F::from_i64(lambda);
            if k + 1 < size {
                m[(r + k, r + k + 1)] = F::from_i64(rng.gen_range(0..=1));
            }
        }
        r += size;
    }
    let p: Matrix<F> = random_unimodular(n, rng);
    &(&p * &m) * &p.inverse().expect("unimodular")
}

/// The conjugated canonical instance of `spec`, with ground truth. Same
/// `(spec, seed)`, same output.
pub fn random_cycle<F: Field>(spec: &GeneratorSpec<F>, seed: u64) -> Result<(Cycle<F>, RegularizingDecomposition<F>)> {
    let mut truth = spec.canonical()?;
    let canonical = truth.canonical_cycle()?;
    let mut rng = rng(seed);
    let phis = random_transformation(canonical.dims(), &mut rng);
    let cycle = canonical.apply_transformation(&phis)?;
    truth.witness = phis;
    Ok((cycle, truth))
}

/// A random spec with total dimension at most `budget`.
pub fn random_spec<F: Field, R: Rng + ?Sized>(t: usize, budget: usize, rng: &mut R) -> GeneratorSpec<F> {
    let max_regular = (budget / t).min(3);
    let regular = rng.gen_range(0..=max_regular);
    let mut left = budget - regular * t;
    let mut chains = Vec::new();
    while left > 0 && rng.gen_bool(0.8) {
        let length = rng.gen_range(0..left);
        chains.push(ChainSummand::new(rng.gen_range(1..=t), length, 1));
        left -= length + 1;
    }
    let regular_product = (regular > 0).then(|| random_structured_invertible(regular, rng));
    GeneratorSpec::new(t, normalize_chains(&chains), regular_product)
}

/// A random spec whose every space has dimension exactly `m`, with a regular
/// part of size `regular`.
pub fn uniform_spec<F: Field, R: Rng + ?Sized>(t: usize, m: usize, regular: usize, rng: &mut R) -> Result<GeneratorSpec<F>> {
    if regular > m {
        return Err(Error::InvalidSpec(format!("regular size {regular} exceeds dimension {m}")));
    }
    let mut left = vec![m - regular; t];
    let mut chains = Vec::new();
    while left.iter().any(|&x| x > 0) {
        let open: Vec<usize> = (0..t).filter(|&v| left[v] > 0).collect();
        let mut v = *open.choose(rng).expect("some space still has room");
        let mut length = 0;
        left[v] -= 1;
        loop {
            let next = (v + 1) % t;
            if left[next] == 0 || rng.gen_bool(0.15) {
                break;
            }
            left[next] -= 1;
            v = next;
            length += 1;
        }
        chains.push(ChainSummand::new(v + 1, length, 1));
    }
    let product = (regular > 0).then(|| random_structured_invertible(regular, rng));
    Ok(GeneratorSpec::new(t, normalize_chains(&chains), product))
}
