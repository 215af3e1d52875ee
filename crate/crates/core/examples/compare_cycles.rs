//! Isomorphism with witnesses, and the reduction of topological
//! equivalence to a pair of regular products.

use oriented_cycles::equivalence::{is_isomorphic, isomorphism_witness, topological_reduction, Verdict};
use oriented_cycles::generate::{random_cycle, GeneratorSpec};
use oriented_cycles::{ChainSummand, Cycle, Matrix, Rational};

fn describe(v: &Verdict<Rational>) -> String {
    match v {
        Verdict::NotEquivalent(reason) => format!("not equivalent: {reason}"),
        Verdict::Equivalent { .. } => "equivalent, with a linear witness".into(),
        Verdict::ReducedToOperatorPair { p, q } => format!("reduced to the operator pair\n{p}\nand\n{q}"),
    }
}

fn main() -> oriented_cycles::Result<()> {
    let chains = vec![ChainSummand::new(2, 3, 1)];
    let spec = GeneratorSpec::new(2, chains.clone(), Some(Matrix::<Rational>::from_i64(2, 2, &[2, 1, 0, 2])));
    let (a, _) = random_cycle(&spec, 1)?;
    let (b, _) = random_cycle(&spec, 2)?;
    println!("a and b isomorphic: {}", is_isomorphic(&a, &b)?);
    let w = isomorphism_witness(&a, &b)?;
    a.check_commutes(&b, &w).expect("witness is checked");
    println!("witness phi_1 =\n{}", w.phi(1));

    let other = GeneratorSpec::new(2, chains, Some(Matrix::from_i64(2, 2, &[2, 0, 0, 2])));
    let (c, _) = random_cycle(&other, 3)?;
    println!("a and c isomorphic: {}", is_isomorphic(&a, &c)?);
    println!("a vs c: {}", describe(&topological_reduction(&a, &c)?.verdict));
    println!("a vs b: {}", describe(&topological_reduction(&a, &b)?.verdict));

    let x = Cycle::<Rational>::chain(2, 1, 1)?.direct_sum(&Cycle::chain(2, 2, 1)?)?;
    let y = Cycle::<Rational>::chain(2, 1, 3)?;
    println!("two short chains vs one long chain: {}", describe(&topological_reduction(&x, &y)?.verdict));
    Ok(())
}
