//! The `oricycle` subcommands as library functions. Each returns an
//! [`Outcome`]: an exit code, a human-readable summary for standard output,
//! and diagnostics for standard error. Structured reports go to the files
//! named by the options.
//!
//! Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | ok, valid, isomorphic, equivalent, witness commutes |
//! | 1 | not isomorphic, not equivalent, witness fails |
//! | 2 | invalid input (unreadable file, parse or shape error, bad options) |
//! | 3 | internal invariant violation |
//! | 4 | undecided: reduced to a pair of non-similar regular products |

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::cycle::{ChainSummand, Cycle, TransformationSystem};
use crate::document::{
    encode_matrix, read_text, to_json, write_text, AnyCycle, ChainEntry, CycleDocument, CyclePair, MatrixRows,
    WitnessDocument, FORMAT_VERSION,
};
use crate::equivalence::{is_isomorphic, isomorphism_witness, product_operator, topological_reduction, Verdict};
use crate::error::{Error, Result};
use crate::field::{Field, GaussianRational, Rational};
use crate::generate::{random_cycle, random_structured_invertible, rng, GeneratorSpec};
use crate::oracle::{peel_chains_bruteforce, verify_sigma_identity, DEFAULT_BOUND};
use crate::regularize::{
    kernel_dim_table, normalize_chains, regularizing_decomposition, singular_counts, InvariantTable,
};
use crate::similarity::{are_similar, poly_smith};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;
pub const EXIT_UNDECIDED: i32 = 4;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(code: i32, stdout: String) -> Self {
        Outcome { code, stdout, stderr: String::new() }
    }
}

impl From<Error> for Outcome {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::Internal(_)) { EXIT_INTERNAL } else { EXIT_INVALID };
        let stderr = match &e {
            Error::Shape(violations) => {
                let mut s = String::from("error: invalid cycle shape\n");
                for v in violations {
                    let _ = writeln!(s, "  vertex {}: {v}", v.vertex);
                }
                s
            }
            other => format!("error: {other}\n"),
        };
        Outcome { code, stdout: String::new(), stderr }
    }
}

fn run(f: impl FnOnce() -> Result<Outcome>) -> Outcome {
    f().unwrap_or_else(Outcome::from)
}

fn write_if(path: &Option<PathBuf>, text: impl FnOnce() -> String) -> Result<()> {
    match path {
        Some(p) => write_text(p, &text()),
        None => Ok(()),
    }
}

fn chain_list(chains: &[ChainSummand]) -> String {
    if chains.is_empty() {
        return "none".into();
    }
    chains.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

pub fn cmd_validate(path: &Path) -> Outcome {
    run(|| {
        let c = AnyCycle::load(path)?;
        let doc = c.to_document();
        Ok(Outcome::ok(
            EXIT_OK,
            format!("valid: field {}, t = {}, dims {:?}\n", doc.field, doc.t, doc.dims),
        ))
    })
}

#[derive(Clone, Debug, Default)]
pub struct DecomposeOptions {
    /// Depth of the reported kernel table; the default is `max(Σ m_i, 1)`.
    pub jmax: Option<usize>,
    pub out: Option<PathBuf>,
    pub canonical_out: Option<PathBuf>,
    pub witness_out: Option<PathBuf>,
    /// Also peel chains by brute force (total dimension at most
    /// [`DEFAULT_BOUND`]) and compare.
    pub verify: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionDocument {
    pub format_version: String,
    pub field: String,
    pub t: usize,
    pub dims: Vec<usize>,
    pub regular_dims: Vec<usize>,
    pub z: usize,
    pub product_operator: MatrixRows,
    /// Non-constant invariant factors of the regular part's product operator.
    pub invariant_factors: Vec<String>,
    pub chains: Vec<ChainEntry>,
    /// `kernel_table[i-1][j] = dim Ker(A_{[i+j]} ⋯ A_i)`.
    pub kernel_table: Vec<Vec<usize>>,
    /// The canonical direct sum `regular part ⊕ chains`.
    pub canonical: CycleDocument,
    /// Transforms `canonical` into the input cycle.
    pub witness: WitnessDocument,
}

pub fn decompose_cycle<F: Field>(c: &Cycle<F>, jmax: Option<usize>) -> Result<DecompositionDocument> {
    let d = regularizing_decomposition(c)?;
    let table = kernel_dim_table(c, jmax);
    let from_table = singular_counts(&table)?;
    if from_table != d.chains {
        return Err(Error::Internal(format!(
            "kernel table gives chains [{}] but the decomposition found [{}]",
            chain_list(&from_table),
            chain_list(&d.chains)
        )));
    }
    let canonical = d.canonical_cycle()?;
    canonical
        .check_commutes(c, &d.witness)
        .map_err(|e| Error::Internal(format!("decomposition witness fails: {e}")))?;
    let product = product_operator(&d.regular_part);
    let factors = poly_smith(&product)?;
    Ok(DecompositionDocument {
        format_version: FORMAT_VERSION.into(),
        field: F::TAG.into(),
        t: c.len(),
        dims: c.dims().to_vec(),
        regular_dims: d.regular_part.dims().to_vec(),
        z: d.z,
        product_operator: encode_matrix(&product),
        invariant_factors: factors.factors.iter().map(ToString::to_string).collect(),
        chains: d.chains.iter().map(ChainEntry::from).collect(),
        kernel_table: table.rows().to_vec(),
        canonical: CycleDocument::from_cycle(&canonical),
        witness: WitnessDocument::from_system(&d.witness),
    })
}

fn decomposition_summary(doc: &DecompositionDocument) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "field {}, t = {}, dims {:?}", doc.field, doc.t, doc.dims);
    let _ = writeln!(s, "regular dims: {:?}", doc.regular_dims);
    let factors = if doc.invariant_factors.is_empty() { "none".to_string() } else { doc.invariant_factors.join(", ") };
    let _ = writeln!(s, "invariant factors of the product operator: {factors}");
    let chains: Vec<ChainSummand> = doc.chains.iter().map(ChainSummand::from).collect();
    let _ = writeln!(s, "chains (end, length, multiplicity): {}", chain_list(&chains));
    let _ = writeln!(s, "stabilization exponent z = {}", doc.z);
    s
}

/// Compares `doc` against brute-force chain peeling of `c`.
fn verify_with_oracle<F: Field>(c: &Cycle<F>, doc: &DecompositionDocument) -> Result<String> {
    let total = c.total_dim();
    if total > DEFAULT_BOUND {
        return Ok(format!("oracle: skipped, total dimension {total} exceeds {DEFAULT_BOUND}\n"));
    }
    let peeled = peel_chains_bruteforce(c, DEFAULT_BOUND)?;
    let reported: Vec<ChainSummand> = doc.chains.iter().map(ChainSummand::from).collect();
    let table = InvariantTable::from_rows(doc.kernel_table.clone());
    if peeled != reported || !verify_sigma_identity(&table, &peeled) {
        return Err(Error::Internal(format!(
            "brute-force peeling gives [{}], the kernel table gives [{}]",
            chain_list(&peeled),
            chain_list(&reported)
        )));
    }
    Ok("oracle: brute-force peeling agrees\n".into())
}

pub fn cmd_decompose(path: &Path, opts: &DecomposeOptions) -> Outcome {
    run(|| {
        let (doc, oracle) = match AnyCycle::load(path)? {
            AnyCycle::Rational(c) => {
                let doc = decompose_cycle(&c, opts.jmax)?;
                let oracle = if opts.verify { verify_with_oracle(&c, &doc)? } else { String::new() };
                (doc, oracle)
            }
            AnyCycle::Gaussian(c) => {
                let doc = decompose_cycle(&c, opts.jmax)?;
                let oracle = if opts.verify { verify_with_oracle(&c, &doc)? } else { String::new() };
                (doc, oracle)
            }
        };
        write_if(&opts.out, || to_json(&doc))?;
        write_if(&opts.canonical_out, || to_json(&doc.canonical))?;
        write_if(&opts.witness_out, || to_json(&doc.witness))?;
        Ok(Outcome::ok(EXIT_OK, decomposition_summary(&doc) + &oracle))
    })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CompareMode {
    #[default]
    Iso,
    Topo,
}

#[derive(Clone, Debug, Default)]
pub struct CompareOptions {
    pub mode: CompareMode,
    pub out: Option<PathBuf>,
    pub witness_out: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum VerdictDocument {
    NotEquivalent { reason: String },
    Equivalent { witness: WitnessDocument },
    ReducedToOperatorPair { p: MatrixRows, q: MatrixRows },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionDocument {
    pub dims_match: bool,
    pub singular_chains_a: Vec<ChainEntry>,
    pub singular_chains_b: Vec<ChainEntry>,
    pub singular_match: bool,
    pub product_a: MatrixRows,
    pub product_b: MatrixRows,
    pub verdict: VerdictDocument,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompareDocument {
    pub format_version: String,
    pub mode: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub isomorphic: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<WitnessDocument>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reduction: Option<ReductionDocument>,
}

fn compare_cycles<F: Field>(a: &Cycle<F>, b: &Cycle<F>, mode: CompareMode) -> Result<(CompareDocument, i32, String)> {
    match mode {
        CompareMode::Iso => {
            let iso = is_isomorphic(a, b)?;
            let witness = if iso { Some(WitnessDocument::from_system(&isomorphism_witness(a, b)?)) } else { None };
            let doc = CompareDocument {
                format_version: FORMAT_VERSION.into(),
                mode: "iso".into(),
                isomorphic: Some(iso),
                witness,
                reduction: None,
            };
            let code = if iso { EXIT_OK } else { EXIT_FALSE };
            Ok((doc, code, format!("isomorphic: {iso}\n")))
        }
        CompareMode::Topo => {
            let r = topological_reduction(a, b)?;
            let (verdict, code, line) = match &r.verdict {
                Verdict::NotEquivalent(reason) => (
                    VerdictDocument::NotEquivalent { reason: reason.to_string() },
                    EXIT_FALSE,
                    format!("not equivalent: {reason}"),
                ),
                Verdict::Equivalent { witness } => (
                    VerdictDocument::Equivalent { witness: WitnessDocument::from_system(witness) },
                    EXIT_OK,
                    "equivalent (linear witness found)".to_string(),
                ),
                Verdict::ReducedToOperatorPair { p, q } => (
                    VerdictDocument::ReducedToOperatorPair { p: encode_matrix(p), q: encode_matrix(q) },
                    EXIT_UNDECIDED,
                    format!("reduced to the operator pair of size {}: products are not similar", p.nrows()),
                ),
            };
            let witness = match &verdict {
                VerdictDocument::Equivalent { witness } => Some(witness.clone()),
                _ => None,
            };
            let mut summary = String::new();
            let _ = writeln!(summary, "dims match: {}", r.dims_match);
            let _ = writeln!(summary, "chains a: {}", chain_list(&r.singular_chains_a));
            let _ = writeln!(summary, "chains b: {}", chain_list(&r.singular_chains_b));
            let _ = writeln!(summary, "verdict: {line}");
            let doc = CompareDocument {
                format_version: FORMAT_VERSION.into(),
                mode: "topo".into(),
                isomorphic: None,
                witness,
                reduction: Some(ReductionDocument {
                    dims_match: r.dims_match,
                    singular_chains_a: r.singular_chains_a.iter().map(ChainEntry::from).collect(),
                    singular_chains_b: r.singular_chains_b.iter().map(ChainEntry::from).collect(),
                    singular_match: r.singular_match,
                    product_a: encode_matrix(&r.product_a),
                    product_b: encode_matrix(&r.product_b),
                    verdict,
                }),
            };
            Ok((doc, code, summary))
        }
    }
}

pub fn cmd_compare(path_a: &Path, path_b: &Path, opts: &CompareOptions) -> Outcome {
    run(|| {
        let pair = CyclePair::new(AnyCycle::load(path_a)?, AnyCycle::load(path_b)?);
        let (doc, code, summary) = match pair {
            CyclePair::Rational(a, b) => compare_cycles(&a, &b, opts.mode)?,
            CyclePair::Gaussian(a, b) => compare_cycles(&a, &b, opts.mode)?,
        };
        write_if(&opts.out, || to_json(&doc))?;
        if let Some(w) = &doc.witness {
            write_if(&opts.witness_out, || to_json(w))?;
        }
        Ok(Outcome::ok(code, summary))
    })
}

#[derive(Clone, Debug)]
pub struct GenOptions {
    pub t: usize,
    /// `"l:j:mult,..."`: chains ending at `V_l` of length `j`, `mult` copies.
    pub chains: String,
    pub regular_size: usize,
    pub seed: u64,
    /// `"Q"` or `"Q(i)"`.
    pub field: String,
    pub out: Option<PathBuf>,
}

impl Default for GenOptions {
    fn default() -> Self {
        GenOptions {
            t: 1,
            chains: String::new(),
            regular_size: 0,
            seed: 0,
            field: Rational::TAG.into(),
            out: None,
        }
    }
}

/// Parses `"l:j:mult,..."`; whitespace around items is ignored.
pub fn parse_chain_list(s: &str) -> Result<Vec<ChainSummand>> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
        let parts: Vec<&str> = item.split(':').map(str::trim).collect();
        let nums: Option<Vec<usize>> = parts.iter().map(|p| p.parse().ok()).collect();
        match nums.as_deref() {
            Some([l, j, mult]) => out.push(ChainSummand::new(*l, *j, *mult)),
            _ => return Err(Error::InvalidSpec(format!("chain {item:?} is not of the form l:j:mult"))),
        }
    }
    Ok(out)
}

/// Generates the instance for `opts` and checks that decomposing it
/// recovers the requested chains and regular product.
pub fn generate_cycle<F: Field>(opts: &GenOptions) -> Result<Cycle<F>> {
    let chains = parse_chain_list(&opts.chains)?;
    let mut r = rng(opts.seed);
    let product = (opts.regular_size > 0).then(|| random_structured_invertible::<F, _>(opts.regular_size, &mut r));
    let spec = GeneratorSpec::new(opts.t, chains, product);
    let (cycle, truth) = random_cycle(&spec, opts.seed)?;

    truth
        .canonical_cycle()?
        .check_commutes(&cycle, &truth.witness)
        .map_err(|e| Error::Internal(format!("generator witness fails: {e}")))?;
    let found = regularizing_decomposition(&cycle)?;
    if found.chains != normalize_chains(&spec.chains) || found.regular_dim() != spec.regular_size() {
        return Err(Error::Internal("generated cycle does not decompose to its spec".into()));
    }
    if let Some(p) = &spec.regular_product {
        if !are_similar(&product_operator(&found.regular_part), p)? {
            return Err(Error::Internal("generated regular part has the wrong product".into()));
        }
    }
    Ok(cycle)
}

pub fn cmd_gen(opts: &GenOptions) -> Outcome {
    run(|| {
        let doc = match opts.field.as_str() {
            "Q" => CycleDocument::from_cycle(&generate_cycle::<Rational>(opts)?),
            "Q(i)" => CycleDocument::from_cycle(&generate_cycle::<GaussianRational>(opts)?),
            other => return Err(Error::InvalidSpec(format!("unknown field {other:?}, expected Q or Q(i)"))),
        };
        let text = to_json(&doc);
        match &opts.out {
            Some(p) => {
                write_text(p, &text)?;
                Ok(Outcome::ok(EXIT_OK, format!("wrote {}: t = {}, dims {:?}\n", p.display(), doc.t, doc.dims)))
            }
            None => Ok(Outcome::ok(EXIT_OK, text)),
        }
    })
}

fn check_cycles<F: Field>(a: &Cycle<F>, b: &Cycle<F>, w: &WitnessDocument) -> Result<Outcome> {
    let phis: TransformationSystem<F> = w.to_system()?;
    Ok(match a.check_commutes(b, &phis) {
        Ok(()) => Outcome::ok(EXIT_OK, "witness ok: every square commutes\n".into()),
        Err(failure) => Outcome {
            code: EXIT_FALSE,
            stdout: String::new(),
            stderr: format!("witness fails: {failure}\n"),
        },
    })
}

pub fn cmd_check_witness(path_a: &Path, path_b: &Path, witness_path: &Path) -> Outcome {
    run(|| {
        let a = AnyCycle::load(path_a)?;
        let b = AnyCycle::load(path_b)?;
        let w = WitnessDocument::parse(&read_text(witness_path)?)?;
        let pair = if w.field == GaussianRational::TAG {
            CyclePair::Gaussian(a.into_gaussian(), b.into_gaussian())
        } else {
            CyclePair::new(a, b)
        };
        match pair {
            CyclePair::Rational(a, b) => check_cycles(&a, &b, &w),
            CyclePair::Gaussian(a, b) => check_cycles(&a, &b, &w),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Matrix;
    use tempfile::TempDir;

    fn write_cycle<F: Field>(dir: &TempDir, name: &str, c: &Cycle<F>) -> PathBuf {
        let p = dir.path().join(name);
        write_text(&p, &to_json(&CycleDocument::from_cycle(c))).unwrap();
        p
    }

    #[test]
    fn validate_reports_shape_by_vertex() {
        let dir = TempDir::new().unwrap();
        let good = write_cycle(&dir, "good.json", &Cycle::<Rational>::chain(5, 2, 8).unwrap());
        assert_eq!(cmd_validate(&good).code, EXIT_OK);

        let bad = dir.path().join("bad.json");
        write_text(&bad, r#"{"format_version":"1","field":"Q","t":2,"dims":[1,2],"maps":[[[1],[0]],[[1,0,0]]]}"#).unwrap();
        let out = cmd_validate(&bad);
        assert_eq!(out.code, EXIT_INVALID);
        assert!(out.stderr.contains("vertex 2"), "{}", out.stderr);

        let malformed = dir.path().join("malformed.json");
        write_text(&malformed, r#"{"format_version":"1","field":"Q","t":1,"dims":[1],"maps":[[["1/0"]]]}"#).unwrap();
        let out = cmd_validate(&malformed);
        assert_eq!(out.code, EXIT_INVALID);
        assert!(out.stderr.contains("zero denominator"));

        assert_eq!(cmd_validate(&dir.path().join("missing.json")).code, EXIT_INVALID);
    }

    #[test]
    fn decompose_worked_example() {
        let dir = TempDir::new().unwrap();
        let p = write_cycle(&dir, "c.json", &Cycle::<Rational>::chain(5, 2, 8).unwrap());
        let opts = DecomposeOptions {
            out: Some(dir.path().join("d.json")),
            canonical_out: Some(dir.path().join("canon.json")),
            witness_out: Some(dir.path().join("w.json")),
            ..Default::default()
        };
        let out = cmd_decompose(&p, &opts);
        assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
        let doc: DecompositionDocument = serde_json::from_str(&read_text(&dir.path().join("d.json")).unwrap()).unwrap();
        assert_eq!(doc.chains, vec![ChainEntry { end: 2, len: 8, mult: 1 }]);
        assert_eq!(doc.regular_dims, vec![0; 5]);
        let check = cmd_check_witness(&dir.path().join("canon.json"), &p, &dir.path().join("w.json"));
        assert_eq!(check.code, EXIT_OK, "{}", check.stderr);

        let verified = cmd_decompose(&p, &DecomposeOptions { verify: true, ..Default::default() });
        assert!(verified.stdout.contains("oracle: brute-force peeling agrees"), "{}", verified.stdout);

        let small = DecomposeOptions { jmax: Some(3), ..Default::default() };
        assert_eq!(cmd_decompose(&p, &small).code, EXIT_INVALID);
    }

    #[test]
    fn decompose_regular_and_empty() {
        let dir = TempDir::new().unwrap();
        let reg = Cycle::identity_form(2, &Matrix::<Rational>::from_i64(2, 2, &[2, 1, 0, 2])).unwrap();
        let out = cmd_decompose(&write_cycle(&dir, "r.json", &reg), &DecomposeOptions::default());
        assert_eq!(out.code, EXIT_OK);
        assert!(out.stdout.contains("x^2 - 4*x + 4"), "{}", out.stdout);
        assert!(out.stdout.contains("chains (end, length, multiplicity): none"));

        let empty = Cycle::<Rational>::zero(vec![0, 0, 0]).unwrap();
        assert_eq!(cmd_decompose(&write_cycle(&dir, "e.json", &empty), &DecomposeOptions::default()).code, EXIT_OK);
    }

    #[test]
    fn compare_modes() {
        let dir = TempDir::new().unwrap();
        let gen = |seed, chains: &str| {
            let opts = GenOptions { t: 3, chains: chains.into(), regular_size: 2, seed, ..Default::default() };
            generate_cycle::<Rational>(&opts).unwrap()
        };
        let a = write_cycle(&dir, "a.json", &gen(1, "1:2:1"));
        let b = write_cycle(&dir, "b.json", &gen(1, "1:2:1"));
        let c = write_cycle(&dir, "c.json", &gen(1, "1:0:1, 2:0:1, 3:0:1"));
        let w = dir.path().join("w.json");
        let opts = CompareOptions { witness_out: Some(w.clone()), ..Default::default() };
        assert_eq!(cmd_compare(&a, &b, &opts).code, EXIT_OK);
        assert_eq!(cmd_check_witness(&a, &b, &w).code, EXIT_OK);
        assert_eq!(cmd_compare(&a, &c, &opts).code, EXIT_FALSE);

        let topo = CompareOptions { mode: CompareMode::Topo, ..Default::default() };
        let out = cmd_compare(&a, &c, &topo);
        assert_eq!(out.code, EXIT_FALSE);
        assert!(out.stdout.contains("chain summands differ"));

        let p = write_cycle(&dir, "p.json", &Cycle::identity_form(1, &Matrix::<Rational>::from_i64(2, 2, &[2, 0, 0, 2])).unwrap());
        let q = write_cycle(&dir, "q.json", &Cycle::identity_form(1, &Matrix::<Rational>::from_i64(2, 2, &[2, 1, 0, 2])).unwrap());
        let report = dir.path().join("report.json");
        let out = cmd_compare(&p, &q, &CompareOptions { mode: CompareMode::Topo, out: Some(report.clone()), ..Default::default() });
        assert_eq!(out.code, EXIT_UNDECIDED);
        let doc: CompareDocument = serde_json::from_str(&read_text(&report).unwrap()).unwrap();
        assert!(matches!(doc.reduction.unwrap().verdict, VerdictDocument::ReducedToOperatorPair { .. }));
    }

    #[test]
    fn gen_is_deterministic_and_checked() {
        let opts = GenOptions { t: 5, chains: "2:8:1".into(), seed: 7, ..Default::default() };
        let first = cmd_gen(&opts);
        assert_eq!(first.code, EXIT_OK);
        assert_eq!(first, cmd_gen(&opts));
        let c = AnyCycle::parse(&first.stdout).unwrap();
        assert_eq!(c.to_document().dims, vec![2, 2, 1, 2, 2]);

        let opts = GenOptions { t: 1, regular_size: 2, field: "Q(i)".into(), ..Default::default() };
        let AnyCycle::Gaussian(c) = AnyCycle::parse(&cmd_gen(&opts).stdout).unwrap() else { panic!() };
        assert!(c.is_regular());

        assert_eq!(cmd_gen(&GenOptions { chains: "1:2".into(), ..Default::default() }).code, EXIT_INVALID);
        assert_eq!(cmd_gen(&GenOptions { chains: "2:0:1".into(), ..Default::default() }).code, EXIT_INVALID);
    }

    #[test]
    fn perturbed_witness_names_square() {
        let dir = TempDir::new().unwrap();
        let c = Cycle::<Rational>::chain(3, 2, 4).unwrap();
        let a = write_cycle(&dir, "a.json", &c);
        let mut phis: Vec<Matrix<Rational>> = c.dims().iter().map(|&m| Matrix::identity(m)).collect();
        let w = dir.path().join("w.json");
        write_text(&w, &to_json(&WitnessDocument::from_system(&TransformationSystem::new(phis.clone())))).unwrap();
        assert_eq!(cmd_check_witness(&a, &a, &w).code, EXIT_OK);
        phis[1][(0, 1)] = Rational::from(1);
        write_text(&w, &to_json(&WitnessDocument::from_system(&TransformationSystem::new(phis)))).unwrap();
        let out = cmd_check_witness(&a, &a, &w);
        assert_eq!(out.code, EXIT_FALSE);
        assert!(out.stderr.contains("square"), "{}", out.stderr);
    }
}
