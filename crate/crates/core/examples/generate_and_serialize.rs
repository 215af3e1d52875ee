//! Seeded instances with known decompositions, written as JSON documents.

use oriented_cycles::document::{to_json, AnyCycle, CycleDocument};
use oriented_cycles::generate::{random_cycle, random_spec, rng, GeneratorSpec};
use oriented_cycles::{GaussianRational, Rational};

fn main() -> oriented_cycles::Result<()> {
    let mut r = rng(5);
    let spec: GeneratorSpec<Rational> = random_spec(3, 7, &mut r);
    println!("spec: t = {}, chains {:?}, regular size {}", spec.t, spec.chains, spec.regular_size());
    let (c, truth) = random_cycle(&spec, 5)?;
    let text = to_json(&CycleDocument::from_cycle(&c));
    println!("{text}");
    assert_eq!(AnyCycle::parse(&text)?, AnyCycle::Rational(c));
    println!("ground truth z = {}, {} chain summands", truth.z, truth.chain_count());

    let gspec: GeneratorSpec<GaussianRational> = random_spec(2, 4, &mut r);
    let (g, _) = random_cycle(&gspec, 6)?;
    println!("{}", to_json(&CycleDocument::from_cycle(&g)));
    Ok(())
}
