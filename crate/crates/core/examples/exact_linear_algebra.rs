//! Exact elimination over Q and Q(i).

use oriented_cycles::{Field, GaussianRational, Matrix, Rational};

fn main() -> oriented_cycles::Result<()> {
    let a = Matrix::<Rational>::from_i64(3, 4, &[1, 2, 3, 4, 2, 4, 6, 9, 1, 2, 4, 5]);
    println!("A =\n{a}");
    let r = a.rref();
    println!("rref =\n{}\npivot columns {:?}, rank {}", r.reduced, r.pivot_cols, a.rank());
    let k = a.kernel_basis();
    println!("kernel basis =\n{k}");
    assert!((&a * &k).is_zero());

    let h = Matrix::<Rational>::from_fn(4, 4, |r, c| Rational::new(1, (r + c + 1) as i64));
    let inv = h.inverse()?;
    println!("inverse of the 4x4 Hilbert matrix =\n{inv}");
    assert!((&h * &inv).is_identity());

    let i = GaussianRational::i();
    let g = Matrix::from_rows(
        vec![vec![GaussianRational::one(), i.clone()], vec![i.clone(), GaussianRational::from(-1)]],
        2,
    )
    .expect("rectangular");
    println!("over Q(i):\n{g}\nrank {}, kernel\n{}", g.rank(), g.kernel_basis());
    let rhs = Matrix::column_vector(vec![GaussianRational::from(2), i.mul_ref(&GaussianRational::from(2))]);
    let x = g.solve(&rhs)?.expect("consistent system");
    println!("a solution of g x = (2, 2i):\n{x}");
    assert_eq!(&g * &x, rhs);
    Ok(())
}
