//! Batch classifier for symmetric pairs at the root-datum level.
//!
//! Exponent profiles are user data describing representation exponents;
//! the engine never derives them. Exit codes: 0 success, 2 input error,
//! 3 internal-consistency failure (a cross-checked identity failed, which
//! indicates a bug, never bad input).

mod descriptor;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use descriptor::{load_descriptor, load_profile, DescriptorDoc, LoadedPair, ProfileDoc};
use report::*;
use sympair_core::conelattice::{convergence_oracle, dual_generators, verify_cover};
use sympair_core::criteria::{
    classify_pair, h_integrability_with, theta_parabolics, ExponentProfile,
};
use sympair_core::sympair::{
    build_descendent, coset_transversal, theta_minus_permutation, CosetReps, DescendentSystem,
};
use sympair_core::Error;

#[derive(Parser)]
#[command(
    name = "sympair",
    version,
    about = "Exact classifier for symmetric-pair integrability criteria"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Tree,
    Table,
}

#[derive(Subcommand)]
enum Cmd {
    /// Full pipeline: descendent system, transversal, test characters,
    /// parabolic lattice and the pair classification.
    Analyze {
        descriptor: PathBuf,
        #[arg(long, value_enum, default_value = "tree")]
        format: Format,
    },
    /// Evaluate the integrability criterion on an exponent profile.
    CheckExponents {
        descriptor: PathBuf,
        profile: PathBuf,
        /// Use the closed-cone (nonnegative) variant of the criterion.
        #[arg(long, conflicts_with = "strict")]
        weak: bool,
        /// Use the open-cone (positive) variant; the default.
        #[arg(long)]
        strict: bool,
        #[arg(long, value_enum, default_value = "tree")]
        format: Format,
    },
    /// Cone decomposition, exact series exponents and convergence verdicts,
    /// cross-checked against the criterion (exit 3 on disagreement).
    Oracle {
        descriptor: PathBuf,
        profile: PathBuf,
        /// Residue field cardinality for the illustrative partial sums.
        #[arg(long, default_value_t = 2)]
        q: u64,
        /// Truncation depth of the partial sums.
        #[arg(long, default_value_t = 10)]
        depth: usize,
        /// Box radius for the disjoint-cover verification.
        #[arg(long = "box", default_value_t = 4)]
        box_bound: i64,
        #[arg(long, value_enum, default_value = "tree")]
        format: Format,
    },
    /// List the built-in families and their parameters.
    Families,
    /// Parse and validate documents without running the engine.
    Validate {
        descriptor: PathBuf,
        profile: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let (kind, internal) = match &err {
                CliError::Engine(e) => (e.kind(), e.is_internal()),
                CliError::Io(_) => ("Io", false),
                CliError::Json(_) => ("Json", false),
                CliError::Consistency(_) => ("OracleDisagreement", true),
            };
            let doc = serde_json::json!({
                "error": { "kind": kind, "message": err.to_string() }
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            if internal {
                ExitCode::from(3)
            } else {
                ExitCode::from(2)
            }
        }
    }
}

enum CliError {
    Engine(Error),
    Io(String),
    Json(String),
    Consistency(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Engine(e) => write!(f, "{e}"),
            CliError::Io(m) | CliError::Json(m) | CliError::Consistency(m) => write!(f, "{m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Engine(e)
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Json(format!("cannot parse {}: {e}", path.display())))
}

struct Pipeline {
    pair: LoadedPair,
    ds: DescendentSystem,
    reps: CosetReps,
}

fn pipeline(path: &Path) -> Result<Pipeline, CliError> {
    let doc: DescriptorDoc = read_json(path)?;
    let pair = load_descriptor(&doc)?;
    let ds = build_descendent(&pair.datum, &pair.involution)?;
    let reps = coset_transversal(&ds)?;
    Ok(Pipeline { pair, ds, reps })
}

fn input_echo(pair: &LoadedPair) -> InputEcho {
    InputEcho {
        family: pair.family.as_ref().map(|(n, _)| n.clone()),
        params: pair.family.as_ref().map(|(_, p)| p.clone()),
        raw: pair.family.is_none(),
    }
}

fn emit<T: Serialize>(doc: &T, format: Format, table: impl FnOnce(&T) -> String) {
    match format {
        Format::Tree => println!("{}", serde_json::to_string_pretty(doc).unwrap()),
        Format::Table => print!("{}", table(doc)),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.cmd {
        Cmd::Analyze { descriptor, format } => {
            let p = pipeline(&descriptor)?;
            let pars = theta_parabolics(&p.ds)?;
            let classification = classify_pair(&p.ds, &p.reps)?;
            let perm = theta_minus_permutation(&p.pair.datum, &p.pair.involution)?;
            let datum = &p.pair.datum;
            let fixed_root_count = (0..datum.num_roots())
                .filter(|&i| p.pair.involution.is_fixed_root(i))
                .count();
            let rep = AnalyzeReport {
                input: input_echo(&p.pair),
                ambient: AmbientSummary {
                    rank: datum.rank(),
                    num_roots: datum.num_roots(),
                    simple_roots: (0..datum.num_simple())
                        .map(|pos| vec_str(datum.simple_root(pos)))
                        .collect(),
                    negated_simple_positions: p.ds.delta_minus_positions().to_vec(),
                    fixed_root_count,
                    simple_permutation: perm.iter().map(|&(a, b)| [a, b]).collect(),
                },
                descendent: descendent_summary(&p.ds),
                weyl: WeylSummary {
                    restricted_order: p.reps.wgh.order(),
                    subgroup_order: p.reps.wh.order(),
                    transversal_size: p.reps.transversal.len(),
                },
                transversal: transversal_entries(&p.ds, &p.reps),
                parabolics: parabolic_entries(&pars),
                verdict: classification_doc(&classification),
                warnings: vec![],
            };
            emit(&rep, format, analyze_table);
            Ok(())
        }
        Cmd::CheckExponents {
            descriptor,
            profile,
            weak,
            strict: _,
            format,
        } => {
            let p = pipeline(&descriptor)?;
            let pars = theta_parabolics(&p.ds)?;
            let doc: ProfileDoc = read_json(&profile)?;
            let prof: ExponentProfile = load_profile(&doc, &p.ds)?;
            let strict = !weak;
            let result = h_integrability_with(&p.ds, &p.reps, &pars, &prof, strict)?;
            let rep = CheckReport {
                input: input_echo(&p.pair),
                mode: if strict { "strict".into() } else { "weak".into() },
                verdict: integrability_doc(&result),
                rows: result.rows.iter().map(RowDoc::from).collect(),
                warnings: profile_warnings(&prof, &result.missing_subsets),
            };
            emit(&rep, format, check_table);
            Ok(())
        }
        Cmd::Oracle {
            descriptor,
            profile,
            q,
            depth,
            box_bound,
            format,
        } => {
            let p = pipeline(&descriptor)?;
            let pars = theta_parabolics(&p.ds)?;
            let doc: ProfileDoc = read_json(&profile)?;
            let prof: ExponentProfile = load_profile(&doc, &p.ds)?;
            let decomp = dual_generators(&p.ds)?;
            let cover = verify_cover(&decomp, box_bound)?;
            let oracle = convergence_oracle(&p.ds, &p.reps, &pars, &prof, &decomp, q, depth)?;
            let hrep = h_integrability_with(&p.ds, &p.reps, &pars, &prof, true)?;
            let mut warnings = profile_warnings(&prof, &oracle.missing_subsets);
            let boundary = oracle
                .rows
                .iter()
                .filter(|r| r.exponents.iter().any(|(_, e)| rat_str(e) == "0"))
                .count();
            if boundary > 0 {
                warnings.push(format!(
                    "{boundary} row(s) pair to exactly zero in some direction: divergent \
                     (constant or polynomial growth; polynomial factors are not simulated)"
                ));
            }
            let rep = OracleReport {
                input: input_echo(&p.pair),
                q,
                depth,
                box_bound,
                cone: cone_doc(&decomp),
                cover: cover_doc(&cover),
                rows: oracle_rows(&oracle),
                agreement: oracle.all_agree,
                verdict: integrability_doc(&hrep),
                warnings,
            };
            emit(&rep, format, oracle_table);
            if !cover.ok {
                return Err(CliError::Consistency(
                    "disjoint cover verification failed".into(),
                ));
            }
            if !oracle.all_agree {
                return Err(CliError::Consistency(
                    "series oracle disagrees with the positivity criterion".into(),
                ));
            }
            Ok(())
        }
        Cmd::Families => {
            let doc = serde_json::json!({
                "families": [
                    {
                        "name": "galois_doubling",
                        "params": {"htype": "A|B|C|D|G2", "rank": "usize"},
                        "constraints": "rank >= 1 (A), >= 2 (B, C, D), = 2 (G2)",
                        "description": "base change of a split group along a quadratic extension: doubled multiplicities, zero traces"
                    },
                    {
                        "name": "gl_orthogonal",
                        "params": {"n": "usize", "r": "usize"},
                        "constraints": "n >= 2, 1 <= r <= n/2",
                        "description": "general linear group with the orthogonal involution of Witt index r"
                    },
                    {
                        "name": "unitary_orthogonal",
                        "params": {"n": "usize", "r": "usize"},
                        "constraints": "n >= 2, 1 <= r <= n/2",
                        "description": "quasi-split unitary ambient group over the orthogonal subgroup, encoded in restricted coordinates"
                    },
                    {
                        "name": "gl2n_gln_E",
                        "params": {"n": "usize"},
                        "constraints": "n >= 2",
                        "description": "GL(2n) over GL(n) of a quadratic extension: four-element fibers, no fixed roots"
                    },
                    {
                        "name": "sp_unitary",
                        "params": {"n": "usize", "quasi_split": "bool (default true)"},
                        "constraints": "n >= 2 (quasi-split), even n >= 4 (otherwise)",
                        "description": "symplectic group over a unitary subgroup"
                    },
                    {
                        "name": "sp_gln",
                        "params": {"n": "usize"},
                        "constraints": "n >= 1",
                        "description": "split analogue of sp_unitary: ambient type C, trace -1 on long roots"
                    },
                    {
                        "name": "gl_linear",
                        "params": {"n1": "usize", "n2": "usize"},
                        "constraints": "1 <= n1 <= n2",
                        "description": "general linear group over a product of two linear blocks"
                    }
                ]
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            Ok(())
        }
        Cmd::Validate {
            descriptor,
            profile,
        } => {
            let doc: DescriptorDoc = read_json(&descriptor)?;
            match (&doc.family, &doc.raw) {
                (Some(_), None) | (None, Some(_)) => {}
                _ => {
                    return Err(CliError::Engine(Error::BadParameters(
                        "descriptor must have exactly one of `family` or `raw`".into(),
                    )))
                }
            }
            if let Some(raw) = &doc.raw {
                if raw.mult.len() != raw.roots.len() {
                    return Err(CliError::Engine(Error::BadParameters(
                        "mult length differs from roots length".into(),
                    )));
                }
                if raw.theta.len() != raw.rank || raw.theta.iter().any(|r| r.len() != raw.rank) {
                    return Err(CliError::Engine(Error::BadParameters(
                        "theta matrix shape differs from rank".into(),
                    )));
                }
                if raw.roots.iter().any(|r| r.len() != raw.rank) {
                    return Err(CliError::Engine(Error::BadParameters(
                        "a root has the wrong dimension".into(),
                    )));
                }
            }
            let mut profile_state = serde_json::Value::Null;
            if let Some(ppath) = profile {
                let pdoc: ProfileDoc = read_json(&ppath)?;
                let entries = match &pdoc {
                    ProfileDoc::List(e) => e,
                    ProfileDoc::Tagged { entries, .. } => entries,
                };
                for e in entries {
                    for v in &e.exponents {
                        for cell in v {
                            descriptor::rational_cell_ok(cell).map_err(CliError::Engine)?;
                        }
                    }
                }
                profile_state = serde_json::json!("valid");
            }
            let doc = serde_json::json!({
                "ok": true,
                "descriptor": "valid",
                "profile": profile_state,
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            Ok(())
        }
    }
}
