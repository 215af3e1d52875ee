//! Split a random cycle into its regular part and chain summands, and check
//! the returned witness.

use oriented_cycles::generate::{random_cycle, GeneratorSpec};
use oriented_cycles::regularize::{fitting_split, kernel_dim_table, regularizing_decomposition, stabilization_exponent};
use oriented_cycles::{ChainSummand, Matrix, Rational};

fn main() -> oriented_cycles::Result<()> {
    let spec = GeneratorSpec::new(
        3,
        vec![ChainSummand::new(1, 4, 1), ChainSummand::new(3, 0, 2)],
        Some(Matrix::<Rational>::from_i64(2, 2, &[1, 1, -1, 0])),
    );
    let (c, truth) = random_cycle(&spec, 42)?;
    println!("input cycle:\n{c}");

    let split = fitting_split(&c)?;
    println!("stable images: {:?}, stable kernels: {:?}", split.regular.dims(), split.nilpotent.dims());
    println!("stabilization exponent z = {}", stabilization_exponent(&c));
    println!("kernel table rows (j = 0..6):");
    let table = kernel_dim_table(&c, None);
    for row in table.rows() {
        println!("  {:?}", &row[..7]);
    }

    let d = regularizing_decomposition(&c)?;
    println!("regular part:\n{}", d.regular_part);
    for chain in &d.chains {
        println!("chain {chain}");
    }
    assert_eq!(d.chains, truth.chains);
    assert!(d.canonical_cycle()?.commutes(&c, &d.witness));
    println!("witness transforms the canonical sum into the input");
    Ok(())
}
