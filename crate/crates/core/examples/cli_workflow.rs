//! The command layer behind the `oricycle` binary: generate, validate,
//! decompose, compare and check a witness, all through files.

use oriented_cycles::commands::{
    cmd_check_witness, cmd_compare, cmd_decompose, cmd_gen, cmd_validate, CompareMode, CompareOptions,
    DecomposeOptions, GenOptions,
};

fn main() {
    let dir = tempfile::tempdir().expect("temporary directory");
    let path = |name: &str| dir.path().join(name);

    let gen = |seed, out: &str| {
        cmd_gen(&GenOptions {
            t: 4,
            chains: "2:5:1,4:0:2".into(),
            regular_size: 2,
            seed,
            out: Some(path(out)),
            ..Default::default()
        })
    };
    print!("{}", gen(7, "a.json").stdout);
    print!("{}", gen(8, "b.json").stdout);
    print!("{}", cmd_validate(&path("a.json")).stdout);

    let out = cmd_decompose(
        &path("a.json"),
        &DecomposeOptions {
            out: Some(path("report.json")),
            canonical_out: Some(path("canonical.json")),
            witness_out: Some(path("w.json")),
            jmax: None,
            verify: true,
        },
    );
    print!("{}", out.stdout);
    let check = cmd_check_witness(&path("canonical.json"), &path("a.json"), &path("w.json"));
    println!("check-witness canonical -> a: exit {}", check.code);

    let iso = cmd_compare(
        &path("a.json"),
        &path("canonical.json"),
        &CompareOptions { witness_out: Some(path("ac.json")), ..Default::default() },
    );
    print!("compare a canonical --mode iso (exit {}): {}", iso.code, iso.stdout);
    let check = cmd_check_witness(&path("a.json"), &path("canonical.json"), &path("ac.json"));
    println!("check-witness a -> canonical: exit {}", check.code);

    // Different seeds draw different regular products.
    let iso = cmd_compare(&path("a.json"), &path("b.json"), &CompareOptions::default());
    print!("compare a b --mode iso (exit {}): {}", iso.code, iso.stdout);

    let topo = cmd_compare(&path("a.json"), &path("b.json"), &CompareOptions { mode: CompareMode::Topo, ..Default::default() });
    print!("compare a b --mode topo (exit {}):\n{}", topo.code, topo.stdout);
}
