//! Similarity of square matrices over the base field.
//!
//! Two routes to the invariant factors of an operator:
//!
//! * [`poly_smith`] diagonalizes the characteristic matrix `xI - A` by
//!   polynomial row and column operations (minimal-degree pivoting);
//! * [`frobenius_form`] builds a cyclic-decomposition basis in which `A` is
//!   block-diagonal with companion blocks. The change of basis doubles as a
//!   similarity witness, see [`similarity_witness`].
//!
//! [`are_similar`] is decided by the first route.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::poly::Poly;

/// Nontrivial invariant factors, monic, each dividing the next.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InvariantFactors<F> {
    pub factors: Vec<Poly<F>>,
}

impl<F: Field> InvariantFactors<F> {
    pub fn degree_sum(&self) -> usize {
        self.factors.iter().filter_map(Poly::degree).sum()
    }

    /// The product of all factors: the characteristic polynomial.
    pub fn product(&self) -> Poly<F> {
        self.factors.iter().fold(Poly::one(), |acc, f| acc.mul(f))
    }

    /// The last factor: the minimal polynomial.
    pub fn minimal_polynomial(&self) -> Poly<F> {
        self.factors.last().cloned().unwrap_or_else(Poly::one)
    }

    pub fn is_divisibility_chain(&self) -> bool {
        self.factors.iter().all(Poly::is_monic)
            && self.factors.iter().all(|f| !f.is_constant())
            && self.factors.windows(2).all(|w| w[0].divides(&w[1]))
    }
}

type PolyMatrix<F> = Vec<Vec<Poly<F>>>;

/// Invariant factors of `xI - a` via Smith normal form over `F[x]`.
pub fn poly_smith<F: Field>(a: &Matrix<F>) -> Result<InvariantFactors<F>> {
    if !a.is_square() {
        return Err(Error::NotSquare(a.shape()));
    }
    let n = a.nrows();
    let mut m: PolyMatrix<F> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    let entry = Poly::constant(a[(r, c)].neg_ref());
                    if r == c {
                        entry.add(&Poly::x())
                    } else {
                        entry
                    }
                })
                .collect()
        })
        .collect();

    let mut diagonal = Vec::with_capacity(n);
    for k in 0..n {
        loop {
            let Some((pi, pj)) = min_degree_entry(&m, k) else {
                // Cannot happen for a characteristic matrix (det = char poly != 0).
                return Err(Error::Internal("characteristic matrix lost rank".into()));
            };
            m.swap(k, pi);
            for row in m.iter_mut() {
                row.swap(k, pj);
            }

            let pivot = m[k][k].clone();
            let mut dirty = false;
            for i in k + 1..n {
                if m[i][k].is_zero() {
                    continue;
                }
                let (q, r) = m[i][k].div_rem(&pivot);
                for j in k..n {
                    let t = q.mul(&m[k][j]);
                    m[i][j] = m[i][j].sub(&t);
                }
                debug_assert_eq!(m[i][k], r);
                dirty |= !r.is_zero();
            }
            for j in k + 1..n {
                if m[k][j].is_zero() {
                    continue;
                }
                let (q, r) = m[k][j].div_rem(&pivot);
                for row in m.iter_mut().skip(k) {
                    let t = q.mul(&row[k]);
                    row[j] = row[j].sub(&t);
                }
                dirty |= !r.is_zero();
            }
            if dirty {
                continue;
            }
            // Pivot row and column are clear; enforce divisibility of the rest.
            let offender = (k + 1..n).find(|&i| (k + 1..n).any(|j| !pivot.divides(&m[i][j])));
            match offender {
                Some(i) => {
                    for j in k..n {
                        let t = m[i][j].clone();
                        m[k][j] = m[k][j].add(&t);
                    }
                }
                None => break,
            }
        }
        diagonal.push(m[k][k].monic());
    }

    let factors: Vec<Poly<F>> = diagonal.into_iter().filter(|d| !d.is_constant()).collect();
    Ok(InvariantFactors { factors })
}

fn min_degree_entry<F: Field>(m: &PolyMatrix<F>, k: usize) -> Option<(usize, usize)> {
    let n = m.len();
    let mut best: Option<(usize, usize, usize)> = None;
    for i in k..n {
        for j in k..n {
            if let Some(d) = m[i][j].degree() {
                if best.is_none_or(|(bd, _, _)| d < bd) {
                    best = Some((d, i, j));
                }
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Similarity over the base field: same size and same invariant factors.
pub fn are_similar<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Result<bool> {
    if !a.is_square() {
        return Err(Error::NotSquare(a.shape()));
    }
    if !b.is_square() {
        return Err(Error::NotSquare(b.shape()));
    }
    if a.nrows() != b.nrows() {
        return Ok(false);
    }
    Ok(poly_smith(a)? == poly_smith(b)?)
}

/// A rational canonical basis: `basis⁻¹ · A · basis = ⊕ companion(factors[i])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusForm<F> {
    /// Ascending divisibility order, matching the block order of `basis`.
    pub factors: InvariantFactors<F>,
    pub basis: Matrix<F>,
}

impl<F: Field> FrobeniusForm<F> {
    /// The block-diagonal companion matrix.
    pub fn canonical_matrix(&self) -> Matrix<F> {
        let blocks: Vec<Matrix<F>> = self.factors.factors.iter().map(Poly::companion).collect();
        let refs: Vec<&Matrix<F>> = blocks.iter().collect();
        Matrix::block_diag(&refs)
    }
}

/// Minimal polynomial of `v` under `a` (monic), from the first linear
/// dependency in the Krylov sequence `v, av, a²v, ...`.
pub fn local_minimal_polynomial<F: Field>(a: &Matrix<F>, v: &Matrix<F>) -> Poly<F> {
    let n = a.nrows();
    let mut krylov = Matrix::zeros(n, 0);
    let mut w = v.clone();
    loop {
        if let Some(c) = krylov.solve(&w).expect("shapes agree") {
            let k = krylov.ncols();
            let mut coeffs: Vec<F> = (0..k).map(|i| c[(i, 0)].neg_ref()).collect();
            coeffs.push(F::one());
            return Poly::new(coeffs);
        }
        krylov = Matrix::hstack(n, &[&krylov, &w]).expect("shapes agree");
        w = a * &w;
    }
}

/// Given `u` with minimal polynomial `mu` and `w` with `mw`, a vector whose
/// minimal polynomial is `lcm(mu, mw)`.
fn combine_orders<F: Field>(
    a: &Matrix<F>,
    (u, mu): (Matrix<F>, Poly<F>),
    (w, mw): (Matrix<F>, Poly<F>),
) -> (Matrix<F>, Poly<F>) {
    if mw.divides(&mu) {
        return (u, mu);
    }
    if mu.divides(&mw) {
        return (w, mw);
    }
    // Split lcm = a_part * b_part with coprime parts, a_part | mu, b_part | mw:
    // b_part collects the primes whose exponent in mw exceeds that in mu.
    let excess = mw.exact_div(&mu.gcd(&mw)).expect("gcd divides");
    let strip = |p: &Poly<F>, by: &Poly<F>| {
        let mut r = p.clone();
        loop {
            let h = r.gcd(by);
            if h.is_constant() {
                return r;
            }
            r = r.exact_div(&h).expect("gcd divides");
        }
    };
    let b_part = mw.exact_div(&strip(&mw, &excess)).expect("divides");
    let a_part = strip(&mu, &b_part);
    let u2 = mu.exact_div(&a_part).expect("divides").apply(a, &u);
    let w2 = mw.exact_div(&b_part).expect("divides").apply(a, &w);
    let v = u2.add(&w2).expect("shapes agree");
    (v, a_part.mul(&b_part).monic())
}

/// Rational canonical form with its basis.
pub fn frobenius_form<F: Field>(a: &Matrix<F>) -> Result<FrobeniusForm<F>> {
    if !a.is_square() {
        return Err(Error::NotSquare(a.shape()));
    }
    let (basis, mut factors) = cyclic_decomposition(a)?;
    // Largest factor first from the recursion; present ascending.
    factors.reverse();
    let mut cols = Vec::with_capacity(basis.ncols());
    let mut offsets = Vec::new();
    let mut start = 0;
    for f in factors.iter().rev() {
        offsets.push(start);
        start += f.degree().unwrap_or(0);
    }
    offsets.reverse();
    for (f, &off) in factors.iter().zip(&offsets) {
        cols.extend(off..off + f.degree().unwrap_or(0));
    }
    Ok(FrobeniusForm {
        factors: InvariantFactors { factors },
        basis: basis.select_columns(&cols),
    })
}

/// Returns `(basis, factors)` with factors largest first and the basis
/// blocks in the same order.
fn cyclic_decomposition<F: Field>(a: &Matrix<F>) -> Result<(Matrix<F>, Vec<Poly<F>>)> {
    let n = a.nrows();
    if n == 0 {
        return Ok((Matrix::zeros(0, 0), Vec::new()));
    }
    // A vector whose minimal polynomial is the minimal polynomial of `a`.
    let mut best = {
        let e = Matrix::identity(n).column(0);
        let m = local_minimal_polynomial(a, &e);
        (e, m)
    };
    for i in 1..n {
        let e = Matrix::identity(n).column(i);
        let m = local_minimal_polynomial(a, &e);
        best = combine_orders(a, best, (e, m));
    }
    let (v, minpoly) = best;
    let k = minpoly.degree().unwrap_or(0);

    let mut krylov_cols = Vec::with_capacity(k);
    let mut w = v;
    for _ in 0..k {
        let next = a * &w;
        krylov_cols.push(w);
        w = next;
    }
    let refs: Vec<&Matrix<F>> = krylov_cols.iter().collect();
    let krylov = Matrix::hstack(n, &refs)?;

    // f(A^i v) = [i == k-1]; the common kernel of f, fA, ..., fA^{k-1} is an
    // invariant complement of the cyclic subspace.
    let mut target = Matrix::zeros(k, 1);
    target[(k - 1, 0)] = F::one();
    let functional = krylov
        .transpose()
        .solve(&target)?
        .ok_or_else(|| Error::Internal("Krylov basis is not independent".into()))?
        .transpose();
    let mut rows = Vec::with_capacity(k);
    let mut f = functional;
    for _ in 0..k {
        let next = &f * a;
        rows.push(f);
        f = next;
    }
    let row_refs: Vec<&Matrix<F>> = rows.iter().collect();
    let complement = Matrix::vstack(n, &row_refs)?.kernel_basis();
    if complement.ncols() + k != n {
        return Err(Error::Internal("cyclic complement has the wrong dimension".into()));
    }
    let restricted = complement
        .solve(&(a * &complement))?
        .ok_or_else(|| Error::Internal("complement is not invariant".into()))?;
    let (sub_basis, mut sub_factors) = cyclic_decomposition(&restricted)?;
    let lifted = &complement * &sub_basis;
    let basis = Matrix::hstack(n, &[&krylov, &lifted])?;
    let mut factors = vec![minpoly];
    factors.append(&mut sub_factors);
    Ok((basis, factors))
}

/// An invertible `x` with `x · a · x⁻¹ = b`, or `None` if not similar.
pub fn similarity_witness<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Result<Option<Matrix<F>>> {
    if !a.is_square() || !b.is_square() {
        return Err(Error::NotSquare(if a.is_square() { b.shape() } else { a.shape() }));
    }
    if a.nrows() != b.nrows() {
        return Ok(None);
    }
    let fa = frobenius_form(a)?;
    let fb = frobenius_form(b)?;
    if fa.factors != fb.factors {
        return Ok(None);
    }
    Ok(Some(&fb.basis * &fa.basis.inverse()?))
}
