//! Brute-force verifiers that share no code path with the kernel-table
//! formulas in [`crate::regularize`].
//!
//! * [`peel_chains_bruteforce`] finds the chain summands by repeatedly taking
//!   a basis vector of maximal life and passing to the quotient by its chain.
//! * [`verify_sigma_identity`] rebuilds a kernel table from chain counts.
//! * [`brute_force_isomorphism`] searches the space of all linear maps making
//!   every square commute for an invertible one.

use rand::Rng;

use crate::cycle::{wrap, ChainSummand, Cycle, TransformationSystem};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::generate::rng;
use crate::matrix::Matrix;
use crate::regularize::{normalize_chains, InvariantTable};

pub const DEFAULT_BOUND: usize = 10;

/// Steps until `x` (living in `V_vertex`) is sent to zero, or `None` if it
/// survives `limit` steps.
fn life<F: Field>(c: &Cycle<F>, vertex: usize, x: &Matrix<F>, limit: usize) -> Option<usize> {
    let mut x = x.clone();
    let mut v = vertex;
    for steps in 0..=limit {
        if x.is_zero() {
            return Some(steps);
        }
        x = c.map(v) * &x;
        v = c.next(v);
    }
    None
}

/// The quotient of `c` by the invariant subspaces spanned by the columns of
/// `sub[v]`. Each quotient space gets the standard basis vectors that extend
/// `sub[v]` as its basis.
fn quotient<F: Field>(c: &Cycle<F>, sub: &[Matrix<F>]) -> Result<Cycle<F>> {
    let t = c.len();
    let mut inclusions = Vec::with_capacity(t);
    let mut projections = Vec::with_capacity(t);
    for v in 1..=t {
        let m = c.dim(v);
        let s = &sub[v - 1];
        let extra = Matrix::extension_columns(s, &Matrix::identity(m))?;
        let complement = Matrix::identity(m).select_columns(&extra);
        let full = Matrix::hstack(m, &[s, &complement])?.inverse()?;
        let keep: Vec<usize> = (s.ncols()..m).collect();
        projections.push(full.select_rows(&keep));
        inclusions.push(complement);
    }
    let dims = inclusions.iter().map(Matrix::ncols).collect();
    let maps = (0..t)
        .map(|v| &(&projections[(v + 1) % t] * &c.maps()[v]) * &inclusions[v])
        .collect();
    Cycle::new(dims, maps)
}

/// Chain summands found by direct search. Requires `Σ m_i <= bound`.
///
/// The regular part is removed first by restricting to the vectors that die
/// within `Σ m_i` steps. Among the remaining basis vectors, one of maximal
/// life is chosen (lowest vertex, then lowest index, on ties); its chain is a
/// summand, and the search continues in the quotient by that chain.
pub fn peel_chains_bruteforce<F: Field>(c: &Cycle<F>, bound: usize) -> Result<Vec<ChainSummand>> {
    c.validate()?;
    let total = c.total_dim();
    if total > bound {
        return Err(Error::OracleBound { total, bound });
    }
    let t = c.len();
    let nilpotent_bases: Vec<Matrix<F>> = (1..=t).map(|v| c.path_composite(v, total).kernel_basis()).collect();
    let mut current = c.restrict(&nilpotent_bases)?;

    let mut found = Vec::new();
    while current.total_dim() > 0 {
        let mut best: Option<(usize, usize, usize)> = None;
        for v in 1..=t {
            let m = current.dim(v);
            for b in 0..m {
                let e = Matrix::identity(m).column(b);
                let h = life(&current, v, &e, total)
                    .ok_or_else(|| Error::Internal("vector of the nilpotent part never dies".into()))?;
                if best.is_none_or(|(bh, _, _)| h > bh) {
                    best = Some((h, v, b));
                }
            }
        }
        let (h, v, b) = best.expect("a nonzero space has basis vectors");
        found.push(ChainSummand::new(wrap((v + h - 1) as i64, t), h - 1, 1));

        let mut spans: Vec<Matrix<F>> = (1..=t).map(|w| Matrix::zeros(current.dim(w), 0)).collect();
        let mut x = Matrix::identity(current.dim(v)).column(b);
        let mut w = v;
        for _ in 0..h {
            spans[w - 1] = Matrix::hstack(current.dim(w), &[&spans[w - 1], &x])?;
            x = current.map(w) * &x;
            w = current.next(w);
        }
        current = quotient(&current, &spans)?;
    }
    Ok(normalize_chains(&found))
}

/// `σ_{lj}`: number of chains of length at least `j` ending in `V_l`.
pub fn sigma_from_chains(chains: &[ChainSummand], l: usize, j: usize) -> usize {
    chains
        .iter()
        .filter(|c| c.end_vertex == l && c.length >= j)
        .map(|c| c.multiplicity)
        .sum()
}

/// Checks `k_{ij} = σ_{i,0} + σ_{[i+1],1} + ... + σ_{[i+j],j}` for every
/// entry of `table`, with `σ` counted from `chains`.
pub fn verify_sigma_identity(table: &InvariantTable, chains: &[ChainSummand]) -> bool {
    let t = table.t();
    (1..=t).all(|i| {
        let mut acc = 0;
        (0..=table.jmax()).all(|j| {
            acc += sigma_from_chains(chains, wrap((i + j) as i64, t), j);
            table.k(i as i64, j as i64) == acc
        })
    })
}

/// Basis of all systems `(phi_v)` with `phi_{[v+1]} A_v = B_v phi_v`, each
/// flattened row-major per vertex.
fn hom_space<F: Field>(a: &Cycle<F>, b: &Cycle<F>) -> Result<(Vec<usize>, Matrix<F>)> {
    let t = a.len();
    let mut offsets = Vec::with_capacity(t);
    let mut unknowns = 0;
    for v in 1..=t {
        offsets.push(unknowns);
        unknowns += b.dim(v) * a.dim(v);
    }
    let mut rows: Vec<Vec<F>> = Vec::new();
    for v in 1..=t {
        let w = a.next(v);
        let (av, bv) = (a.map(v), b.map(v));
        // Entry (r, c) of the square at v.
        for r in 0..b.dim(w) {
            for c in 0..a.dim(v) {
                let mut eq = vec![F::zero(); unknowns];
                for k in 0..a.dim(w) {
                    let idx = offsets[w - 1] + r * a.dim(w) + k;
                    eq[idx] = eq[idx].add_ref(&av[(k, c)]);
                }
                for k in 0..b.dim(v) {
                    let idx = offsets[v - 1] + k * a.dim(v) + c;
                    eq[idx] = eq[idx].sub_ref(&bv[(r, k)]);
                }
                rows.push(eq);
            }
        }
    }
    let system = Matrix::from_rows(rows, unknowns).expect("rows have equal length");
    Ok((offsets, system.kernel_basis()))
}

/// Searches for an isomorphism among random integer combinations of a basis
/// of the commuting systems. A nonzero determinant polynomial vanishes on a
/// random point of `[-50, 50]^d` with probability at most `Σ m_i / 101`, so
/// `tries` failures make non-isomorphism overwhelmingly likely.
pub fn brute_force_isomorphism<F: Field>(
    a: &Cycle<F>,
    b: &Cycle<F>,
    seed: u64,
    tries: usize,
) -> Result<Option<TransformationSystem<F>>> {
    if a.len() != b.len() || a.dims() != b.dims() {
        return Ok(None);
    }
    let (offsets, basis) = hom_space(a, b)?;
    if basis.ncols() == 0 {
        return Ok(if a.total_dim() == 0 { Some(TransformationSystem::identity(a.dims())) } else { None });
    }
    let mut rng = rng(seed);
    for _ in 0..tries {
        let coeffs = Matrix::from_fn(basis.ncols(), 1, |_, _| F::from_i64(rng.gen_range(-50..=50)));
        let flat = &basis * &coeffs;
        let phis: Vec<Matrix<F>> = (1..=a.len())
            .map(|v| {
                let (n, m) = (b.dim(v), a.dim(v));
                Matrix::from_fn(n, m, |r, c| flat[(offsets[v - 1] + r * m + c, 0)].clone())
            })
            .collect();
        if phis.iter().all(Matrix::is_invertible) {
            return Ok(Some(TransformationSystem::new(phis)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use crate::regularize::kernel_dim_table;

    type M = Matrix<Rational>;
    type C = Cycle<Rational>;

    #[test]
    fn worked_example() {
        let c = C::chain(5, 2, 8).unwrap();
        assert_eq!(peel_chains_bruteforce(&c, 10).unwrap(), vec![ChainSummand::new(2, 8, 1)]);
    }

    #[test]
    fn zero_maps() {
        let c = C::zero(vec![1, 1]).unwrap();
        assert_eq!(
            peel_chains_bruteforce(&c, 10).unwrap(),
            vec![ChainSummand::new(1, 0, 1), ChainSummand::new(2, 0, 1)]
        );
    }

    #[test]
    fn disjoint_copies() {
        let c = C::chain(3, 1, 2).unwrap();
        let two = c.direct_sum(&c).unwrap();
        assert_eq!(peel_chains_bruteforce(&two, 10).unwrap(), vec![ChainSummand::new(1, 2, 2)]);
    }

    #[test]
    fn regular_part_is_skipped() {
        let reg = C::new(vec![1, 1], vec![M::from_i64(1, 1, &[2]), M::from_i64(1, 1, &[3])]).unwrap();
        let c = reg.direct_sum(&C::chain(2, 2, 2).unwrap()).unwrap();
        assert_eq!(peel_chains_bruteforce(&c, 10).unwrap(), vec![ChainSummand::new(2, 2, 1)]);
    }

    #[test]
    fn bound_is_enforced() {
        let c = C::chain(2, 1, 11).unwrap();
        assert_eq!(peel_chains_bruteforce(&c, 10), Err(Error::OracleBound { total: 12, bound: 10 }));
    }

    #[test]
    fn sigma_identity() {
        let reg = C::identity_form(2, &M::identity(2)).unwrap();
        assert!(verify_sigma_identity(&kernel_dim_table(&reg, None), &[]));

        let c = C::chain(5, 2, 8).unwrap();
        let table = kernel_dim_table(&c, None);
        let chains = [ChainSummand::new(2, 8, 1)];
        assert!(verify_sigma_identity(&table, &chains));
        let mut bumped = table.clone();
        *bumped.k_mut(3, 4) += 1;
        assert!(!verify_sigma_identity(&bumped, &chains));
        assert!(!verify_sigma_identity(&table, &[ChainSummand::new(2, 7, 1)]));
    }

    #[test]
    fn hom_search() {
        let a = C::chain(3, 2, 4).unwrap();
        let phis = TransformationSystem::new(
            a.dims().iter().map(|&m| M::from_fn(m, m, |r, c| Rational::from(if r <= c { 1 } else { 0 }))).collect(),
        );
        let b = a.apply_transformation(&phis).unwrap();
        let w = brute_force_isomorphism(&a, &b, 0, 20).unwrap().unwrap();
        assert!(a.commutes(&b, &w));
        let other = C::chain(3, 3, 4).unwrap();
        assert!(brute_force_isomorphism(&a, &other, 0, 20).unwrap().is_none());
        let r1 = C::identity_form(1, &M::from_i64(1, 1, &[5])).unwrap();
        let r2 = C::identity_form(1, &M::from_i64(1, 1, &[6])).unwrap();
        assert!(brute_force_isomorphism(&r1, &r2, 0, 20).unwrap().is_none());
    }
}
