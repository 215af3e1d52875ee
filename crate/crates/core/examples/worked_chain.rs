//! The chain e_0 -> e_1 -> ... -> e_8 -> 0 wound around a cycle of length 5,
//! ending in V_2.

use oriented_cycles::regularize::{kernel_dim_table, regularizing_decomposition, singular_counts};
use oriented_cycles::{Cycle, Rational};

fn main() -> oriented_cycles::Result<()> {
    let c = Cycle::<Rational>::chain(5, 2, 8)?;
    println!("{c}");
    println!("dims: {:?}", c.dims());

    let table = kernel_dim_table(&c, None);
    println!("k_(i,j) = dim Ker(A_[i+j] ... A_i), first columns:");
    for i in 1..=5 {
        let row: Vec<usize> = (0..=9).map(|j| table.k(i, j)).collect();
        println!("  i = {i}: {row:?}");
    }
    for chain in singular_counts(&table)? {
        println!("chain summand {chain}");
    }

    let d = regularizing_decomposition(&c)?;
    println!("regular part dims {:?}, z = {}", d.regular_part.dims(), d.z);
    Ok(())
}
