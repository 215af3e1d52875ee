//! Oriented cycles of linear mappings
//!
//! ```text
//! V_1 --A_1--> V_2 --A_2--> ... --A_{t-1}--> V_t --A_t--> V_1
//! ```
//!
//! with `V_i = F^{m_i}`. Vertices are numbered `1..=t` throughout the public
//! API, matching the document format; `A_i` has shape `m_{[i+1]} x m_i`.

use std::fmt;

use crate::error::{Error, Result, ShapeViolation};
use crate::field::Field;
use crate::matrix::Matrix;

/// The representative `[c]` of `c` modulo `t` in `1..=t`.
pub fn index_mod(c: i64, t: usize) -> Result<usize> {
    if t == 0 {
        return Err(Error::InvalidLength);
    }
    let r = c.rem_euclid(t as i64);
    Ok(if r == 0 { t } else { r as usize })
}

/// `[c]` for callers that already hold a valid length.
pub(crate) fn wrap(c: i64, t: usize) -> usize {
    index_mod(c, t).expect("cycle length is positive")
}

#[derive(Clone, PartialEq, Eq)]
pub struct Cycle<F> {
    dims: Vec<usize>,
    maps: Vec<Matrix<F>>,
}

/// An indecomposable singular summand: the chain `e_p -> ... -> e_q -> 0`
/// with `q - p = length`, ending in `V_{end_vertex}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChainSummand {
    pub end_vertex: usize,
    pub length: usize,
    pub multiplicity: usize,
}

impl ChainSummand {
    pub fn new(end_vertex: usize, length: usize, multiplicity: usize) -> Self {
        ChainSummand {
            end_vertex,
            length,
            multiplicity,
        }
    }

    /// Number of chain vectors in each space `V_1..V_t` for one copy.
    pub fn dims(&self, t: usize) -> Vec<usize> {
        let mut dims = vec![0; t];
        let start = self.end_vertex as i64 - self.length as i64;
        for k in 0..=self.length as i64 {
            dims[wrap(start + k, t) - 1] += 1;
        }
        dims
    }
}

impl fmt::Display for ChainSummand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(end {}, length {}) x{}", self.end_vertex, self.length, self.multiplicity)
    }
}

/// Invertible `phi_i : V_i -> W_i`, one per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformationSystem<F> {
    pub phis: Vec<Matrix<F>>,
}

impl<F: Field> TransformationSystem<F> {
    pub fn new(phis: Vec<Matrix<F>>) -> Self {
        TransformationSystem { phis }
    }

    pub fn identity(dims: &[usize]) -> Self {
        Self::new(dims.iter().map(|&m| Matrix::identity(m)).collect())
    }

    pub fn len(&self) -> usize {
        self.phis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phis.is_empty()
    }

    /// `phi_v` for a 1-based vertex.
    pub fn phi(&self, vertex: usize) -> &Matrix<F> {
        &self.phis[vertex - 1]
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch(self.len(), other.len()));
        }
        let phis = self
            .phis
            .iter()
            .zip(&other.phis)
            .map(|(a, b)| a.matmul(b))
            .collect::<Result<_>>()?;
        Ok(Self::new(phis))
    }

    pub fn inverse(&self) -> Result<Self> {
        let phis = self
            .phis
            .iter()
            .enumerate()
            .map(|(i, p)| p.inverse().map_err(|_| Error::SingularTransformation(i + 1)))
            .collect::<Result<_>>()?;
        Ok(Self::new(phis))
    }

    pub fn block_diag(&self, other: &Self) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch(self.len(), other.len()));
        }
        Ok(Self::new(
            self.phis
                .iter()
                .zip(&other.phis)
                .map(|(a, b)| Matrix::block_diag(&[a, b]))
                .collect(),
        ))
    }
}

/// Why a proposed witness fails to transform one cycle into another.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessFailure {
    LengthMismatch { a: usize, b: usize, phis: usize },
    /// `phi_vertex` does not have shape `n_vertex x m_vertex`.
    Shape { vertex: usize, expected: (usize, usize), found: (usize, usize) },
    Singular { vertex: usize },
    /// `phi_{[i+1]} A_i != B_i phi_i` for the square starting at `vertex`.
    Square { vertex: usize },
}

impl fmt::Display for WitnessFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessFailure::LengthMismatch { a, b, phis } => {
                write!(f, "lengths differ: cycles {a} and {b}, witness {phis}")
            }
            WitnessFailure::Shape { vertex, expected, found } => write!(
                f,
                "phi_{vertex} has shape {}x{}, expected {}x{}",
                found.0, found.1, expected.0, expected.1
            ),
            WitnessFailure::Singular { vertex } => write!(f, "phi_{vertex} is not invertible"),
            WitnessFailure::Square { vertex } => {
                write!(f, "square {vertex} does not commute: phi_[{vertex}+1] A_{vertex} != B_{vertex} phi_{vertex}")
            }
        }
    }
}

impl<F: Field> Cycle<F> {
    /// Builds and validates a cycle.
    pub fn new(dims: Vec<usize>, maps: Vec<Matrix<F>>) -> Result<Self> {
        let c = Cycle { dims, maps };
        c.validate()?;
        Ok(c)
    }

    /// Builds without validation; [`Cycle::validate`] reports the problems.
    pub fn new_unchecked(dims: Vec<usize>, maps: Vec<Matrix<F>>) -> Self {
        Cycle { dims, maps }
    }

    /// All-zero maps on the given dimensions.
    pub fn zero(dims: Vec<usize>) -> Result<Self> {
        let t = dims.len();
        if t == 0 {
            return Err(Error::InvalidLength);
        }
        let maps = (0..t).map(|i| Matrix::zeros(dims[(i + 1) % t], dims[i])).collect();
        Self::new(dims, maps)
    }

    /// The regular cycle `F^n -1-> F^n -1-> ... -> F^n -product-> F^n`.
    pub fn identity_form(t: usize, product: &Matrix<F>) -> Result<Self> {
        if t == 0 {
            return Err(Error::InvalidLength);
        }
        if !product.is_square() {
            return Err(Error::NotSquare(product.shape()));
        }
        let n = product.nrows();
        let mut maps = vec![Matrix::identity(n); t];
        maps[t - 1] = product.clone();
        Self::new(vec![n; t], maps)
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    /// Always false for a valid cycle (`t >= 1`).
    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// `m_v` for a 1-based vertex.
    pub fn dim(&self, vertex: usize) -> usize {
        self.dims[vertex - 1]
    }

    pub fn maps(&self) -> &[Matrix<F>] {
        &self.maps
    }

    /// `A_v` for a 1-based vertex.
    pub fn map(&self, vertex: usize) -> &Matrix<F> {
        &self.maps[vertex - 1]
    }

    pub fn into_parts(self) -> (Vec<usize>, Vec<Matrix<F>>) {
        (self.dims, self.maps)
    }

    pub(crate) fn next(&self, vertex: usize) -> usize {
        vertex % self.len() + 1
    }

    pub(crate) fn prev(&self, vertex: usize) -> usize {
        wrap(vertex as i64 - 1, self.len())
    }

    /// Confirms `A_i` is `m_{[i+1]} x m_i` for every `i`, reporting every
    /// violation.
    pub fn validate(&self) -> Result<()> {
        let t = self.dims.len();
        if t == 0 {
            return Err(Error::InvalidLength);
        }
        if self.maps.len() != t {
            return Err(Error::LengthMismatch(t, self.maps.len()));
        }
        let violations: Vec<ShapeViolation> = (0..t)
            .filter_map(|i| {
                let expected = (self.dims[(i + 1) % t], self.dims[i]);
                let found = self.maps[i].shape();
                (expected != found).then_some(ShapeViolation {
                    vertex: i + 1,
                    expected,
                    found,
                })
            })
            .collect();
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Error::Shape(violations))
        }
    }

    /// Regular: every map is a bijection.
    pub fn is_regular(&self) -> bool {
        self.maps.iter().all(Matrix::is_invertible)
    }

    /// First vertex whose map is not a bijection.
    pub fn first_singular_vertex(&self) -> Option<usize> {
        self.maps.iter().position(|m| !m.is_invertible()).map(|i| i + 1)
    }

    /// `A_{[v+steps-1]} ... A_{[v+1]} A_v`, the identity on `V_v` for zero steps.
    pub fn path_composite(&self, vertex: usize, steps: usize) -> Matrix<F> {
        let mut out = Matrix::identity(self.dim(vertex));
        let mut v = vertex;
        for _ in 0..steps {
            out = self.map(v) * &out;
            v = self.next(v);
        }
        out
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch(self.len(), other.len()));
        }
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(a, b)| Matrix::block_diag(&[a, b]))
            .collect();
        Ok(Cycle { dims, maps })
    }

    /// The indecomposable singular cycle given by the chain of the given
    /// length ending in `V_end_vertex`.
    ///
    /// The chain is `e_p -> ... -> e_q -> 0` with `p` the smallest positive
    /// index congruent to `end_vertex - chain_length` and `q = p + chain_length`.
    /// `V_v` has basis `{e_i : [i] = v}` in ascending `i`; every map entry is 0 or 1.
    pub fn chain(t: usize, end_vertex: usize, chain_length: usize) -> Result<Self> {
        if t == 0 {
            return Err(Error::InvalidLength);
        }
        if end_vertex == 0 || end_vertex > t {
            return Err(Error::VertexOutOfRange { vertex: end_vertex, t });
        }
        let p = wrap(end_vertex as i64 - chain_length as i64, t) as i64;
        let q = p + chain_length as i64;
        // Position of each e_i inside its space.
        let mut dims = vec![0usize; t];
        let mut slot = Vec::with_capacity(chain_length + 1);
        for i in p..=q {
            let v = wrap(i, t) - 1;
            slot.push(dims[v]);
            dims[v] += 1;
        }
        let mut maps: Vec<Matrix<F>> = (0..t).map(|i| Matrix::zeros(dims[(i + 1) % t], dims[i])).collect();
        for i in p..q {
            let k = (i - p) as usize;
            let v = wrap(i, t) - 1;
            maps[v][(slot[k + 1], slot[k])] = F::one();
        }
        Self::new(dims, maps)
    }

    /// The cycle `B` with `B_i = phi_{[i+1]} A_i phi_i^{-1}`; `phis`
    /// transforms `self` into it.
    pub fn apply_transformation(&self, phis: &TransformationSystem<F>) -> Result<Self> {
        let t = self.len();
        if phis.len() != t {
            return Err(Error::LengthMismatch(t, phis.len()));
        }
        let mut inverses = Vec::with_capacity(t);
        for (i, p) in phis.phis.iter().enumerate() {
            if p.ncols() != self.dims[i] {
                return Err(Error::DimensionMismatch {
                    op: "apply_transformation",
                    left: (self.dims[i], self.dims[i]),
                    right: p.shape(),
                });
            }
            inverses.push(p.inverse().map_err(|_| Error::SingularTransformation(i + 1))?);
        }
        let dims: Vec<usize> = phis.phis.iter().map(Matrix::nrows).collect();
        let maps = (0..t)
            .map(|i| phis.phis[(i + 1) % t].matmul(&self.maps[i])?.matmul(&inverses[i]))
            .collect::<Result<_>>()?;
        Self::new(dims, maps)
    }

    /// Checks that `phis` transforms `self` into `other`: every `phi_i` is
    /// invertible and `phi_{[i+1]} A_i = B_i phi_i` exactly for every square.
    pub fn check_commutes(&self, other: &Self, phis: &TransformationSystem<F>) -> Result<(), WitnessFailure> {
        let t = self.len();
        if other.len() != t || phis.len() != t {
            return Err(WitnessFailure::LengthMismatch {
                a: t,
                b: other.len(),
                phis: phis.len(),
            });
        }
        for v in 1..=t {
            let expected = (other.dim(v), self.dim(v));
            let found = phis.phi(v).shape();
            if expected != found {
                return Err(WitnessFailure::Shape { vertex: v, expected, found });
            }
            if !phis.phi(v).is_invertible() {
                return Err(WitnessFailure::Singular { vertex: v });
            }
        }
        for v in 1..=t {
            let lhs = phis.phi(self.next(v)) * self.map(v);
            let rhs = other.map(v) * phis.phi(v);
            if lhs != rhs {
                return Err(WitnessFailure::Square { vertex: v });
            }
        }
        Ok(())
    }

    pub fn commutes(&self, other: &Self, phis: &TransformationSystem<F>) -> bool {
        self.check_commutes(other, phis).is_ok()
    }

    /// The restriction of the cycle to subspaces `U_v = span(bases[v])` with
    /// `A_v U_v ⊆ U_{[v+1]}`, in the given bases.
    pub fn restrict(&self, bases: &[Matrix<F>]) -> Result<Self> {
        let t = self.len();
        let dims: Vec<usize> = bases.iter().map(Matrix::ncols).collect();
        let mut maps = Vec::with_capacity(t);
        for v in 0..t {
            let image = self.maps[v].matmul(&bases[v])?;
            let m = bases[(v + 1) % t]
                .solve(&image)?
                .ok_or_else(|| Error::Internal(format!("subspace at vertex {} is not mapped into its successor", v + 1)))?;
            maps.push(m);
        }
        Self::new(dims, maps)
    }
}

impl<F: fmt::Debug> fmt::Debug for Cycle<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Cycle")
            .field("dims", &self.dims)
            .field("maps", &self.maps)
            .finish()
    }
}

impl<F: Field> fmt::Display for Cycle<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "cycle of length {} with dims {:?}", self.len(), self.dims)?;
        for (i, m) in self.maps.iter().enumerate() {
            writeln!(f, "A_{}:", i + 1)?;
            writeln!(f, "{m}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    type M = Matrix<Rational>;
    type C = Cycle<Rational>;

    #[test]
    fn index_mod_examples() {
        assert_eq!(index_mod(12, 5).unwrap(), 2);
        assert_eq!(index_mod(5, 5).unwrap(), 5);
        assert_eq!(index_mod(-6, 5).unwrap(), 4);
        assert_eq!(index_mod(0, 1).unwrap(), 1);
        assert_eq!(index_mod(3, 0), Err(Error::InvalidLength));
    }

    #[test]
    fn validate_examples() {
        let ok = C::new(vec![1, 1], vec![M::from_i64(1, 1, &[2]), M::from_i64(1, 1, &[3])]);
        assert!(ok.is_ok());
        let bad = C::new_unchecked(vec![1, 2], vec![M::zeros(1, 1), M::zeros(1, 2)]);
        let Err(Error::Shape(v)) = bad.validate() else {
            panic!("expected a shape error");
        };
        assert_eq!(
            v,
            vec![ShapeViolation {
                vertex: 1,
                expected: (2, 1),
                found: (1, 1)
            }]
        );
        assert!(C::chain(5, 2, 8).unwrap().validate().is_ok());
    }

    #[test]
    fn worked_chain_example() {
        // e_4 -> ... -> e_12 -> 0 on five spaces.
        let c = C::chain(5, 2, 8).unwrap();
        assert_eq!(c.dims(), &[2, 2, 1, 2, 2]);
        // V_1 = <e_6, e_11>, V_2 = <e_7, e_12>: A_1 sends e_6 -> e_7, e_11 -> e_12.
        assert_eq!(c.map(1), &M::identity(2));
        // A_2: e_7 -> e_8, e_12 -> 0.
        assert_eq!(c.map(2), &M::from_i64(1, 2, &[1, 0]));
        // A_5: e_5 -> e_6, e_10 -> e_11.
        assert_eq!(c.map(5), &M::identity(2));
        assert!(c.maps().iter().flat_map(|m| m.entries()).all(|x| x.is_zero() || x.is_one()));
    }

    #[test]
    fn chain_examples() {
        let c = C::chain(2, 1, 0).unwrap();
        assert_eq!(c.dims(), &[1, 0]);
        assert_eq!(c.map(1).shape(), (0, 1));
        assert_eq!(c.map(2).shape(), (1, 0));
        let j = C::chain(1, 1, 3).unwrap();
        assert_eq!(j.map(1), &M::from_i64(4, 4, &[0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0]));
        assert_eq!(C::chain(3, 4, 1), Err(Error::VertexOutOfRange { vertex: 4, t: 3 }));
        assert_eq!(C::chain(3, 0, 1), Err(Error::VertexOutOfRange { vertex: 0, t: 3 }));
    }

    #[test]
    fn direct_sum_examples() {
        let a = C::new(vec![1, 1], vec![M::from_i64(1, 1, &[2]), M::from_i64(1, 1, &[3])]).unwrap();
        assert_eq!(a.direct_sum(&C::zero(vec![0, 0]).unwrap()).unwrap(), a);
        let b = C::zero(vec![2, 0]).unwrap();
        assert_eq!(a.direct_sum(&b).unwrap().dims(), &[3, 1]);
        let s = C::chain(5, 2, 8).unwrap().direct_sum(&C::chain(5, 1, 0).unwrap()).unwrap();
        assert_eq!(s.dims(), &[3, 2, 1, 2, 2]);
        assert!(matches!(a.direct_sum(&C::zero(vec![1]).unwrap()), Err(Error::LengthMismatch(2, 1))));
    }

    #[test]
    fn apply_transformation_examples() {
        let c = C::chain(5, 2, 8).unwrap();
        let id = TransformationSystem::identity(c.dims());
        assert_eq!(c.apply_transformation(&id).unwrap(), c);

        let j = C::new(vec![2], vec![M::from_i64(2, 2, &[0, 1, 0, 0])]).unwrap();
        let swap = TransformationSystem::new(vec![M::from_i64(2, 2, &[0, 1, 1, 0])]);
        let b = j.apply_transformation(&swap).unwrap();
        assert_eq!(b.map(1), &M::from_i64(2, 2, &[0, 0, 1, 0]));

        let reg = C::new(vec![1, 1], vec![M::from_i64(1, 1, &[2]), M::from_i64(1, 1, &[3])]).unwrap();
        let twice = TransformationSystem::new(vec![M::scalar(1, Rational::from(2)); 2]);
        assert_eq!(reg.apply_transformation(&twice).unwrap(), reg);

        let singular = TransformationSystem::new(vec![M::zeros(2, 2)]);
        assert_eq!(j.apply_transformation(&singular), Err(Error::SingularTransformation(1)));
    }

    #[test]
    fn check_commutes_examples() {
        let c = C::chain(3, 1, 4).unwrap();
        let id = TransformationSystem::identity(c.dims());
        assert!(c.commutes(&c, &id));
        let phis = TransformationSystem::new(
            c.dims()
                .iter()
                .map(|&m| M::from_fn(m, m, |r, k| Rational::from(if r >= k { 1 + (r + k) as i64 } else { 0 })))
                .collect(),
        );
        let b = c.apply_transformation(&phis).unwrap();
        assert!(c.commutes(&b, &phis));
        assert!(!c.commutes(&b, &id) || b == c);

        let a = C::chain(2, 1, 0).unwrap();
        let b = C::chain(2, 2, 0).unwrap();
        let phis = TransformationSystem::identity(a.dims());
        assert!(matches!(a.check_commutes(&b, &phis), Err(WitnessFailure::Shape { vertex: 1, .. })));
    }

    #[test]
    fn chain_dims_match_residue_counts() {
        for t in 1..=6 {
            for l in 1..=t {
                for j in 0..=12 {
                    let c = C::chain(t, l, j).unwrap();
                    assert_eq!(c.total_dim(), j + 1);
                    assert_eq!(c.dims(), ChainSummand::new(l, j, 1).dims(t).as_slice());
                }
            }
        }
    }
}
