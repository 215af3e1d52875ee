//! Invariant factors, the rational canonical form, and similarity witnesses.

use oriented_cycles::similarity::{are_similar, frobenius_form, poly_smith, similarity_witness};
use oriented_cycles::{Matrix, Rational};

fn main() -> oriented_cycles::Result<()> {
    let a = Matrix::<Rational>::from_i64(3, 3, &[2, 0, 0, 0, 2, 0, 0, 0, 3]);
    let b = Matrix::<Rational>::from_i64(3, 3, &[2, 1, 0, 0, 2, 0, 0, 0, 3]);
    for (name, m) in [("diag(2,2,3)", &a), ("J_2(2) + (3)", &b)] {
        let f = poly_smith(m)?;
        let text: Vec<String> = f.factors.iter().map(ToString::to_string).collect();
        println!("{name}: invariant factors [{}], minimal polynomial {}", text.join(", "), f.minimal_polynomial());
    }
    println!("similar: {}", are_similar(&a, &b)?);

    let p = Matrix::<Rational>::from_i64(3, 3, &[1, 1, 0, 0, 1, 1, 1, 0, 1]);
    let c = &(&p * &b) * &p.inverse()?;
    println!("C = P B P^-1 =\n{c}");
    let x = similarity_witness(&b, &c)?.expect("similar by construction");
    println!("X with X B = C X =\n{x}");
    assert_eq!(&x * &b, &c * &x);

    let form = frobenius_form(&c)?;
    println!("rational canonical form of C =\n{}", form.canonical_matrix());
    Ok(())
}
