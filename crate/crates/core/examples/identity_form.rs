//! A regular cycle is isomorphic to (I, ..., I, P) with P the product
//! operator.

use oriented_cycles::equivalence::{identity_form_witness, product_operator};
use oriented_cycles::{Cycle, Matrix, Rational};

fn main() -> oriented_cycles::Result<()> {
    let c = Cycle::new(
        vec![2, 2, 2],
        vec![
            Matrix::<Rational>::from_i64(2, 2, &[1, 2, 0, 1]),
            Matrix::from_i64(2, 2, &[0, 1, 1, 0]),
            Matrix::from_i64(2, 2, &[3, 0, 1, 1]),
        ],
    )?;
    println!("P = A_3 A_2 A_1 =\n{}", product_operator(&c));
    let (form, phis) = identity_form_witness(&c)?;
    println!("identity form:\n{form}");
    for v in 1..=3 {
        println!("phi_{v} =\n{}", phis.phi(v));
    }
    form.check_commutes(&c, &phis).expect("every square commutes");

    let singular = Cycle::new(vec![1, 1], vec![Matrix::<Rational>::from_i64(1, 1, &[2]), Matrix::zeros(1, 1)])?;
    println!("singular cycle: {}", identity_form_witness(&singular).unwrap_err());
    Ok(())
}
