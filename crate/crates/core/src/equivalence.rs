//! Isomorphism of cycles, reduction of regular cycles to their product
//! operator, and the comparison of two cycles up to base change.
//!
//! Two cycles of the same length are isomorphic exactly when they have the
//! same dimension vector, the same chain summands, and similar product
//! operators on their regular parts.

use std::fmt;

use crate::cycle::{ChainSummand, Cycle, TransformationSystem};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::regularize::{hat_operator, kernel_dim_table, regular_part, regularizing_decomposition, singular_counts};
use crate::similarity::{are_similar, similarity_witness};

/// `A_t ⋯ A_1` on `V_1`.
pub fn product_operator<F: Field>(c: &Cycle<F>) -> Matrix<F> {
    hat_operator(c, 1)
}

/// For a regular cycle, the identity form `(I, ..., I, P)` with
/// `P = A_t ⋯ A_1`, and the system `(I, A_1, A_2 A_1, ...)` transforming it
/// into `c`.
pub fn identity_form_witness<F: Field>(c: &Cycle<F>) -> Result<(Cycle<F>, TransformationSystem<F>)> {
    c.validate()?;
    if let Some(v) = c.first_singular_vertex() {
        return Err(Error::NotRegular(v));
    }
    let t = c.len();
    let form = Cycle::identity_form(t, &product_operator(c))?;
    let mut phis = Vec::with_capacity(t);
    phis.push(Matrix::identity(c.dim(1)));
    for v in 1..t {
        let next = c.map(v) * &phis[v - 1];
        phis.push(next);
    }
    Ok((form, TransformationSystem::new(phis)))
}

/// Chain summands and regular product of one cycle.
fn invariants<F: Field>(c: &Cycle<F>) -> Result<(Vec<ChainSummand>, Matrix<F>)> {
    c.validate()?;
    let chains = singular_counts(&kernel_dim_table(c, None))?;
    let product = product_operator(&regular_part(c)?);
    Ok((chains, product))
}

pub fn is_isomorphic<F: Field>(a: &Cycle<F>, b: &Cycle<F>) -> Result<bool> {
    if a.len() != b.len() || a.dims() != b.dims() {
        a.validate()?;
        b.validate()?;
        return Ok(false);
    }
    let (chains_a, p) = invariants(a)?;
    let (chains_b, q) = invariants(b)?;
    Ok(chains_a == chains_b && are_similar(&p, &q)?)
}

/// A system transforming `a` into `b`, checked square by square before it is
/// returned. Fails with [`Error::NotIsomorphic`] when there is none.
pub fn isomorphism_witness<F: Field>(a: &Cycle<F>, b: &Cycle<F>) -> Result<TransformationSystem<F>> {
    if !is_isomorphic(a, b)? {
        return Err(Error::NotIsomorphic);
    }
    let da = regularizing_decomposition(a)?;
    let db = regularizing_decomposition(b)?;

    // Regular parts: reg_a -> identity form -> identity form of b -> reg_b.
    let (_, eps) = identity_form_witness(&da.regular_part)?;
    let (_, delta) = identity_form_witness(&db.regular_part)?;
    let x = similarity_witness(&product_operator(&da.regular_part), &product_operator(&db.regular_part))?
        .ok_or_else(|| Error::Internal("regular products are not similar".into()))?;
    let t = a.len();
    let xs = TransformationSystem::new(vec![x; t]);
    let regular_map = delta.compose(&xs)?.compose(&eps.inverse()?)?;

    let chain_dims: Vec<usize> = (1..=t).map(|v| a.dim(v) - da.regular_dim()).collect();
    let canonical_map = regular_map.block_diag(&TransformationSystem::identity(&chain_dims))?;
    let witness = db.witness.compose(&canonical_map)?.compose(&da.witness.inverse()?)?;
    a.check_commutes(b, &witness)
        .map_err(|e| Error::Internal(format!("assembled isomorphism fails: {e}")))?;
    Ok(witness)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NotEquivalentReason {
    LengthMismatch { a: usize, b: usize },
    DimensionMismatch,
    SingularMismatch,
}

impl fmt::Display for NotEquivalentReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotEquivalentReason::LengthMismatch { a, b } => write!(f, "cycle lengths differ ({a} vs {b})"),
            NotEquivalentReason::DimensionMismatch => write!(f, "dimension vectors differ"),
            NotEquivalentReason::SingularMismatch => write!(f, "chain summands differ"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<F> {
    NotEquivalent(NotEquivalentReason),
    Equivalent { witness: TransformationSystem<F> },
    /// Same dimensions and chains, but the regular products `p` and `q` are
    /// not similar: deciding equivalence comes down to this operator pair.
    ReducedToOperatorPair { p: Matrix<F>, q: Matrix<F> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionReport<F> {
    pub dims_match: bool,
    pub singular_chains_a: Vec<ChainSummand>,
    pub singular_chains_b: Vec<ChainSummand>,
    pub singular_match: bool,
    pub product_a: Matrix<F>,
    pub product_b: Matrix<F>,
    pub verdict: Verdict<F>,
}

/// Splits the comparison of `a` and `b` into the chain data, which is
/// compared directly, and the regular products.
pub fn topological_reduction<F: Field>(a: &Cycle<F>, b: &Cycle<F>) -> Result<ReductionReport<F>> {
    let (singular_chains_a, product_a) = invariants(a)?;
    let (singular_chains_b, product_b) = invariants(b)?;
    let dims_match = a.dims() == b.dims();
    let singular_match = singular_chains_a == singular_chains_b;
    let verdict = if a.len() != b.len() {
        Verdict::NotEquivalent(NotEquivalentReason::LengthMismatch { a: a.len(), b: b.len() })
    } else if !dims_match {
        Verdict::NotEquivalent(NotEquivalentReason::DimensionMismatch)
    } else if !singular_match {
        Verdict::NotEquivalent(NotEquivalentReason::SingularMismatch)
    } else if are_similar(&product_a, &product_b)? {
        Verdict::Equivalent { witness: isomorphism_witness(a, b)? }
    } else {
        Verdict::ReducedToOperatorPair { p: product_a.clone(), q: product_b.clone() }
    };
    Ok(ReductionReport {
        dims_match,
        singular_chains_a,
        singular_chains_b,
        singular_match,
        product_a,
        product_b,
        verdict,
    })
}
