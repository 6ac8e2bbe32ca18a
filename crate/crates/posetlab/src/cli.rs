//! The `posetlab` command line: validation, conversion between the
//! cryptomorphic views, counting, convexity certification, and DOT export.
//!
//! Inputs are file paths, `-` for stdin, or inline JSON (anything starting
//! with `{` or `[`). Exit codes: 0 for success or an affirmative verdict,
//! 1 for a negative verdict, 2 for an input error. Output is deterministic
//! byte-for-byte given identical input and flags.

use std::io::Read;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::convexity::{
    encode_interval, interval_extensions, is_geodetically_convex, poset_dimension,
    reconstruct_poset, ConvexityReport,
};
use crate::dot;
use crate::enumerations::Enumeration;
use crate::extensions::{linear_extensions, EnumSet};
use crate::geometry::{cone_of, conic_decomposition, evaluate_decomposition, ConeSampler};
use crate::json;
use crate::relations::{Poset, Relation};
use crate::topology::{count_extensions, down_sets, specialization_preposet, width};

/// Largest base size the list/graph commands accept without `--force`.
const FACTORIAL_GUARD: usize = 8;

#[derive(Parser)]
#[command(
    name = "posetlab",
    version,
    about = "Finite posets as relations, extension sets, down-set topologies, interval codes, and braid cones",
    max_term_width = 100
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a relation and report poset statistics
    Check(CheckArgs),
    /// Print the directed Hasse diagram of a poset
    Hasse(HasseArgs),
    /// Count or list the linear extensions of a relation
    Extensions(ExtensionsArgs),
    /// Decide geodetic convexity of an enumeration set
    Convex(ConvexArgs),
    /// Encode a poset as an interval against a reference enumeration
    Encode(EncodeArgs),
    /// Print the induced permutohedral subgraph of an enumeration set
    Graph(GraphArgs),
    /// Convert between the cryptomorphic views
    Convert(ConvertArgs),
    /// Compute the order dimension of a poset
    Dim(DimArgs),
}

#[derive(Args)]
struct CheckArgs {
    /// Relation JSON (path, inline, or -)
    input: String,
    /// Sample this many cone members and verify their conic decompositions
    /// (seeded by POSETLAB_SEED, default 0)
    #[arg(long, value_name = "COUNT")]
    sample: Option<usize>,
}

#[derive(Args)]
struct HasseArgs {
    /// Relation JSON (path, inline, or -)
    input: String,
    /// Emit DOT instead of plain arrow lines
    #[arg(long)]
    dot: bool,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ExtensionsMode {
    /// Count extensions through the down-set dynamic program (never enumerates)
    #[arg(long)]
    count: bool,
    /// List extensions lexicographically, one record per line
    #[arg(long)]
    list: bool,
}

#[derive(Args)]
struct ExtensionsArgs {
    /// Relation JSON (path, inline, or -)
    input: String,
    #[command(flatten)]
    mode: ExtensionsMode,
    /// Allow listing for bases larger than 8 elements
    #[arg(long)]
    force: bool,
}

#[derive(Args)]
struct ConvexArgs {
    /// Enumeration-set JSON (path, inline, or -)
    input: String,
}

#[derive(Args)]
struct EncodeArgs {
    /// Relation JSON (path, inline, or -)
    input: String,
    /// Reference enumeration as a JSON array (defaults to lexicographic)
    #[arg(long = "ref", value_name = "ENUMERATION")]
    reference: Option<String>,
}

#[derive(Args)]
struct GraphArgs {
    /// Enumeration-set JSON (path, inline, or -)
    #[arg(long, value_name = "ENUMSET")]
    induced: String,
    /// Emit DOT instead of plain edge lines
    #[arg(long)]
    dot: bool,
    /// Allow bases larger than 8 elements
    #[arg(long)]
    force: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum View {
    Relation,
    Extensions,
    Downsets,
    IntervalCode,
    ConeConstraints,
}

#[derive(Args)]
struct ConvertArgs {
    /// Source view
    #[arg(long, value_enum)]
    from: View,
    /// Target view
    #[arg(long, value_enum)]
    to: View,
    /// Reference enumeration for --to interval-code (defaults to lexicographic)
    #[arg(long = "ref", value_name = "ENUMERATION")]
    reference: Option<String>,
    /// Input in the source view's JSON format (path, inline, or -)
    input: String,
}

#[derive(Args)]
struct DimArgs {
    /// Relation JSON (path, inline, or -)
    input: String,
    /// Largest realizer size to try (defaults to max(2, n/2))
    #[arg(long, value_name = "K")]
    max_k: Option<usize>,
}

/// What a finished invocation wants the process to do.
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn negative(stdout: String, stderr: String) -> Self {
        Outcome {
            code: 1,
            stdout,
            stderr,
        }
    }

    fn input_error(message: String) -> Self {
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

/// Parses and executes a full argument vector (including the binary name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome::ok(rendered),
                _ => Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: rendered,
                },
            };
        }
    };
    let result = match cli.command {
        Command::Check(args) => cmd_check(args),
        Command::Hasse(args) => cmd_hasse(args),
        Command::Extensions(args) => cmd_extensions(args),
        Command::Convex(args) => cmd_convex(args),
        Command::Encode(args) => cmd_encode(args),
        Command::Graph(args) => cmd_graph(args),
        Command::Convert(args) => cmd_convert(args),
        Command::Dim(args) => cmd_dim(args),
    };
    result.unwrap_or_else(Outcome::input_error)
}

type CmdResult = Result<Outcome, String>;

fn read_input(source: &str) -> Result<String, String> {
    if source == "-" {
        let mut buffer = String::new();
        std::io::stdin()
            .read_to_string(&mut buffer)
            .map_err(|e| format!("cannot read stdin: {e}"))?;
        return Ok(buffer);
    }
    if source.trim_start().starts_with(['{', '[']) {
        return Ok(source.to_string());
    }
    std::fs::read_to_string(source).map_err(|e| format!("cannot read {source}: {e}"))
}

fn load_relation(source: &str) -> Result<Relation, String> {
    let text = read_input(source)?;
    json::relation_from_str(&text).map_err(|e| e.to_string())
}

fn load_enum_set(source: &str) -> Result<Option<EnumSet>, String> {
    let text = read_input(source)?;
    json::enum_set_from_str(&text).map_err(|e| e.to_string())
}

fn load_poset(source: &str) -> Result<Poset, String> {
    let relation = load_relation(source)?;
    relation
        .validate_poset()
        .map_err(|defect| format!("not a poset: {defect}"))
}

fn reference_for(relation_base: &crate::relations::ElementSet, supplied: &Option<String>) -> Result<Enumeration, String> {
    match supplied {
        Some(text) => {
            let names: Vec<String> =
                serde_json::from_str(text).map_err(|e| format!("invalid reference: {e}"))?;
            json::enumeration_from_value(relation_base, &names).map_err(|e| e.to_string())
        }
        None => Ok(Enumeration::identity(relation_base.clone())),
    }
}

fn seed_from_env() -> u64 {
    std::env::var("POSETLAB_SEED")
        .ok()
        .and_then(|raw| raw.trim().parse().ok())
        .unwrap_or(0)
}

fn cmd_check(args: CheckArgs) -> CmdResult {
    let relation = load_relation(&args.input)?;
    let mut out = String::new();
    match relation.validate_poset() {
        Ok(poset) => {
            out.push_str(&format!(
                "poset, strict={}, width={}, extensions={}\n",
                poset.strict_pair_count(),
                width(&poset),
                count_extensions(&poset)
            ));
        }
        Err(_) => match relation.validate_preposet() {
            Ok(preposet) => {
                out.push_str(&format!(
                    "preposet, classes={}\n",
                    preposet.quotient().classes().len()
                ));
            }
            Err(_) => {
                if relation.strict_part().is_acyclic() {
                    out.push_str("acyclic-only\n");
                } else {
                    out.push_str("general (cyclic)\n");
                }
            }
        },
    }
    if let Some(samples) = args.sample {
        let preposet = crate::relations::Preposet::closure_of(&relation);
        let cone = cone_of(&relation);
        let sampler = ConeSampler::new(&cone).map_err(|e| e.to_string())?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed_from_env());
        for i in 0..samples {
            let x = sampler.sample(&mut rng);
            let terms = conic_decomposition(&x, &preposet)
                .map_err(|e| format!("sample {i}: {e}"))?;
            let rebuilt =
                evaluate_decomposition(relation.base(), &terms).map_err(|e| e.to_string())?;
            if rebuilt != x {
                return Ok(Outcome::negative(
                    out,
                    format!("error: sample {i} did not reconstruct exactly\n"),
                ));
            }
        }
        out.push_str(&format!("cone-samples: {samples} ok\n"));
    }
    Ok(Outcome::ok(out))
}

fn cmd_hasse(args: HasseArgs) -> CmdResult {
    let poset = load_poset(&args.input)?;
    let out = if args.dot {
        dot::hasse_dot(&poset)
    } else {
        dot::hasse_edges(&poset)
    };
    Ok(Outcome::ok(out))
}

fn cmd_extensions(args: ExtensionsArgs) -> CmdResult {
    let relation = load_relation(&args.input)?;
    if args.mode.count {
        // the closure has the same extensions, and a cyclic relation has none
        let count = match crate::extensions::relation_closure(&relation).validate_poset() {
            Ok(poset) => count_extensions(&poset),
            Err(_) => num::BigUint::ZERO,
        };
        return Ok(Outcome::ok(format!("{count}\n")));
    }
    let n = relation.base().n();
    if n > FACTORIAL_GUARD && !args.force {
        return Err(format!(
            "refusing to list extensions over {n} elements without --force"
        ));
    }
    let mut out = String::new();
    for e in linear_extensions(&relation).iter() {
        out.push_str(&e.record());
        out.push('\n');
    }
    Ok(Outcome::ok(out))
}

fn cmd_convex(args: ConvexArgs) -> CmdResult {
    let Some(set) = load_enum_set(&args.input)? else {
        return Ok(Outcome::ok("convex (empty)\n".to_string()));
    };
    match is_geodetically_convex(&set) {
        ConvexityReport::ConvexEmpty => Ok(Outcome::ok("convex (empty)\n".to_string())),
        ConvexityReport::Convex(poset) => Ok(Outcome::ok(format!(
            "{}\n",
            json::relation_to_string(&poset.full_relation())
        ))),
        ConvexityReport::NotConvex(triple) => {
            let doc = serde_json::json!({
                "left": triple.left.iter().collect::<Vec<_>>(),
                "witness": triple.witness.iter().collect::<Vec<_>>(),
                "right": triple.right.iter().collect::<Vec<_>>(),
            });
            Ok(Outcome::negative(
                format!("{doc}\n"),
                "not convex\n".to_string(),
            ))
        }
    }
}

fn cmd_encode(args: EncodeArgs) -> CmdResult {
    let poset = load_poset(&args.input)?;
    let reference = reference_for(poset.base(), &args.reference)?;
    let code = encode_interval(&poset, &reference);
    Ok(Outcome::ok(format!("{}\n", json::interval_code_to_string(&code))))
}

fn cmd_graph(args: GraphArgs) -> CmdResult {
    let Some(set) = load_enum_set(&args.induced)? else {
        return Ok(Outcome::ok(if args.dot {
            "graph permutohedral {\n}\n".to_string()
        } else {
            String::new()
        }));
    };
    let n = set.base().n();
    if n > FACTORIAL_GUARD && !args.force {
        return Err(format!(
            "refusing to draw a graph over {n} elements without --force"
        ));
    }
    let out = if args.dot {
        dot::induced_graph_dot(&set)
    } else {
        dot::induced_graph_edges(&set)
    };
    Ok(Outcome::ok(out))
}

fn cmd_convert(args: ConvertArgs) -> CmdResult {
    let text = read_input(&args.input)?;
    // every source view funnels through the relation view
    let relation: Relation = match args.from {
        View::Relation | View::ConeConstraints => {
            json::relation_from_str(&text).map_err(|e| e.to_string())?
        }
        View::Extensions => {
            let Some(set) = json::enum_set_from_str(&text).map_err(|e| e.to_string())? else {
                return Ok(Outcome::negative(
                    String::new(),
                    "error: the empty extension set describes no poset\n".to_string(),
                ));
            };
            match reconstruct_poset(&set) {
                Ok(poset) => poset.full_relation(),
                Err(e) => {
                    return Ok(Outcome::negative(String::new(), format!("error: {e}\n")))
                }
            }
        }
        View::Downsets => {
            let family = json::set_family_from_str(&text).map_err(|e| e.to_string())?;
            match specialization_preposet(&family) {
                Ok(preposet) => preposet.as_relation(),
                Err(e) => {
                    return Ok(Outcome::negative(String::new(), format!("error: {e}\n")))
                }
            }
        }
        View::IntervalCode => {
            let code = json::interval_code_from_str(&text).map_err(|e| e.to_string())?;
            let set = interval_extensions(&code);
            match reconstruct_poset(&set) {
                Ok(poset) => poset.full_relation(),
                Err(e) => {
                    return Ok(Outcome::negative(String::new(), format!("error: {e}\n")))
                }
            }
        }
    };
    let out = match args.to {
        View::Relation => json::relation_to_string(&relation),
        View::ConeConstraints => {
            json::relation_to_string(&cone_of(&relation).generator().as_relation())
        }
        View::Extensions => json::enum_set_to_string(&linear_extensions(&relation)),
        View::Downsets => {
            let family = down_sets(&relation).map_err(|e| e.to_string())?;
            json::set_family_to_string(&family)
        }
        View::IntervalCode => {
            let poset = relation
                .validate_poset()
                .map_err(|defect| format!("--to interval-code needs a poset: {defect}"))?;
            let reference = reference_for(poset.base(), &args.reference)?;
            json::interval_code_to_string(&encode_interval(&poset, &reference))
        }
    };
    Ok(Outcome::ok(format!("{out}\n")))
}

fn cmd_dim(args: DimArgs) -> CmdResult {
    let poset = load_poset(&args.input)?;
    let n = poset.base().n();
    let max_k = args.max_k.unwrap_or_else(|| (n / 2).max(2));
    if max_k == 0 {
        return Err("--max-k must be at least 1".to_string());
    }
    match poset_dimension(&poset, max_k) {
        Some(k) => Ok(Outcome::ok(format!("{k}\n"))),
        None => Ok(Outcome::negative(
            format!("exceeds-max ({max_k})\n"),
            String::new(),
        )),
    }
}
