use std::collections::BTreeSet;
use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ncstab::comp_ops::{append_part, box_remove, jdt_op, v_chain};
use ncstab::jdt_srct::{mu, mu_skew, phi};
use ncstab::jdt_srt::{backward_slide, forward_slide, horizontal_movers, truncated_slide};
use ncstab::nsym::{default_cache_dir, right_pieri, Basis, Nsym, NsymElement, PieriKind};
use ncstab::poset::{chain_to_srct, count_maximal_chains, inner_shape_after_slides, ChainWord};
use ncstab::rho::{rho_inv, rho_map};
use ncstab::rs::{evacuate, insert_variant, rectify, rectify_srt, standardize, Permutation, Word};
use ncstab::tableau::AnyTableau;
use ncstab::verify::{run_suite_with, Suite, VerifyConfig, DEFAULT_SAMPLES, DEFAULT_SEED};
use ncstab::{Composition, Error, Result, Ssrct, Ssrt};

#[derive(Parser)]
#[command(name = "ncstab", version, about = "Jeu de taquin on composition tableaux, jdt operators and the right Pieri rule")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    output: Output,
    /// Bound on sizes for every enumeration (tableaux, d-matrices, suites).
    #[arg(long, global = true, default_value_t = 8)]
    max_size: usize,
    /// Seed for randomized verification suites.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Pretty,
}

#[derive(Subcommand)]
enum Command {
    /// Operators on compositions.
    Op {
        #[arg(value_enum)]
        operator: Operator,
        #[arg(long)]
        alpha: Composition,
        /// Operator index (box-remove, append, jdt).
        #[arg(long)]
        i: Option<usize>,
        /// Comma-separated index set (v-chain).
        #[arg(long)]
        set: Option<String>,
    },
    /// Slides on reverse tableaux (srt) or reverse composition tableaux (srct).
    #[command(subcommand)]
    Slide(SlideCommand),
    /// The column-sorting bijection between the two tableau kinds.
    Rho {
        /// Map a reverse tableau to a composition tableau.
        #[arg(long)]
        inverse: bool,
        #[arg(long)]
        tableau: String,
        /// Inner composition for the inverse map.
        #[arg(long, default_value = "()")]
        alpha: Composition,
    },
    /// Insertion, evacuation, rectification and standardization.
    #[command(subcommand)]
    Rs(RsCommand),
    /// Maximal chains in the poset generated by the jdt operators.
    #[command(subcommand)]
    Chains(ChainsCommand),
    /// Terms of s_alpha · s_(n) (row) or s_alpha · s_(1^n) (col).
    Pieri {
        #[arg(long)]
        alpha: Composition,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "row")]
        kind: PieriKind,
    },
    /// Exact arithmetic in the H, ribbon and S bases.
    #[command(subcommand)]
    Nsym(NsymCommand),
    /// The coefficient of s_gamma in s_alpha · s_beta.
    Lr {
        #[arg(long)]
        alpha: Composition,
        #[arg(long)]
        beta: Composition,
        #[arg(long)]
        gamma: Composition,
    },
    /// Run an invariant suite (or `all`).
    Verify {
        #[arg(long)]
        suite: String,
        /// Random instances for randomized suites.
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Operator {
    BoxRemove,
    VChain,
    Append,
    Jdt,
}

#[derive(Args)]
struct TableauArg {
    /// Path to a tableau JSON file, or `-` for standard input.
    #[arg(long)]
    tableau: String,
}

#[derive(Subcommand)]
enum SlideCommand {
    Srt {
        #[command(flatten)]
        input: TableauArg,
        #[arg(long)]
        col: usize,
        /// Forward slide out of the inner corner in this column.
        #[arg(long)]
        forward: bool,
        /// Fill the vacated corner with max + 1.
        #[arg(long)]
        corner_fill: bool,
    },
    Srct {
        #[command(flatten)]
        input: TableauArg,
        #[arg(long)]
        col: usize,
        /// Apply the single column step from column `col` instead of the full slide.
        #[arg(long)]
        phi: bool,
        #[arg(long)]
        corner_fill: bool,
    },
}

#[derive(Subcommand)]
enum RsCommand {
    Insert {
        #[arg(long)]
        perm: Permutation,
    },
    Evacuate {
        #[command(flatten)]
        input: TableauArg,
    },
    Rectify {
        #[command(flatten)]
        input: TableauArg,
    },
    Std {
        #[arg(long)]
        word: Word,
    },
}

#[derive(Subcommand)]
enum ChainsCommand {
    Count {
        #[arg(long, default_value = "()")]
        from: Composition,
        #[arg(long)]
        to: Composition,
    },
    /// The tableau of a chain from the empty composition (columns in application order).
    Srct {
        #[arg(long)]
        word: ChainWord,
    },
    /// Outer and inner shapes after sliding a tableau of shape alpha along a chain.
    Inner {
        #[arg(long)]
        alpha: Composition,
        #[arg(long)]
        word: ChainWord,
    },
}

#[derive(Subcommand)]
enum NsymCommand {
    Convert {
        #[arg(long)]
        from: Basis,
        #[arg(long)]
        to: Basis,
        #[arg(long)]
        expr: String,
    },
    /// Product of two expressions, returned in the S basis.
    Multiply {
        #[arg(long, default_value = "s")]
        basis: Basis,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    DMatrix {
        #[arg(long)]
        n: usize,
    },
}

struct Reply {
    json: Value,
    pretty: String,
    code: u8,
}

impl Reply {
    fn new(json: Value, pretty: impl Into<String>) -> Self {
        Reply { json, pretty: pretty.into(), code: 0 }
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("library types serialize")
}

fn read_tableau(path: &str) -> Result<AnyTableau> {
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Parse(format!("reading stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("reading {path}: {e}")))?
    };
    AnyTableau::from_json_str(&text)
}

fn read_srt(path: &str) -> Result<Ssrt> {
    match read_tableau(path)? {
        AnyTableau::Reverse(t) => Ok(t),
        AnyTableau::Composition(_) => Err(Error::Parse("expected a french (reverse) tableau".into())),
    }
}

fn read_srct(path: &str) -> Result<Ssrct> {
    match read_tableau(path)? {
        AnyTableau::Composition(t) => Ok(t),
        AnyTableau::Reverse(_) => Err(Error::Parse("expected an english (composition) tableau".into())),
    }
}

fn composition_value(c: &Option<Composition>) -> Reply {
    Reply::new(json!({ "value": c }), c.as_ref().map_or("0".into(), |c| c.to_string()))
}

fn big_value(n: &num_bigint::BigUint) -> Value {
    u64::try_from(n).map_or_else(|_| Value::String(n.to_string()), Value::from)
}

fn nsym_engine(cli: &Cli) -> Nsym {
    match default_cache_dir() {
        Some(dir) => Nsym::with_cache_dir(cli.max_size, dir),
        None => Nsym::new(cli.max_size),
    }
}

fn require_index(i: Option<usize>, op: &str) -> Result<usize> {
    i.ok_or_else(|| Error::Parse(format!("{op} needs --i")))
}

fn run(cli: &Cli) -> Result<Reply> {
    match &cli.command {
        Command::Op { operator, alpha, i, set } => {
            let value = match operator {
                Operator::BoxRemove => box_remove(alpha, require_index(*i, "box-remove")?),
                Operator::Append => Some(append_part(alpha, require_index(*i, "append")?)),
                Operator::Jdt => jdt_op(alpha, require_index(*i, "jdt")?),
                Operator::VChain => {
                    let text = set.as_deref().ok_or_else(|| Error::Parse("v-chain needs --set".into()))?;
                    let set = text
                        .split(',')
                        .map(|x| x.trim().parse::<usize>().map_err(|e| Error::Parse(format!("bad index {x:?}: {e}"))))
                        .collect::<Result<BTreeSet<usize>>>()?;
                    if set.is_empty() || set.contains(&0) {
                        return Err(Error::Parse("--set needs positive indices".into()));
                    }
                    v_chain(alpha, &set)
                }
            };
            Ok(composition_value(&value))
        }
        Command::Slide(SlideCommand::Srt { input, col, forward, corner_fill }) => {
            let t = read_srt(&input.tableau)?;
            if *forward {
                if *corner_fill {
                    return Err(Error::Parse("--corner-fill applies to backward slides only".into()));
                }
                let r = forward_slide(&t, *col)?;
                return Ok(Reply::new(to_value(&r), r.tableau.render()));
            }
            let r = backward_slide(&t, *col, *corner_fill)?;
            let movers = horizontal_movers(&t, *col)?;
            let first_mover = if t.is_straight() && *col >= 2 { truncated_slide(&t, *col)?.1.first_mover } else { None };
            let mut value = to_value(&r);
            value["movers"] = json!(movers);
            value["first_mover"] = json!(first_mover);
            let pretty = format!("{}movers: {:?}\n", r.tableau.render(), movers);
            Ok(Reply::new(value, pretty))
        }
        Command::Slide(SlideCommand::Srct { input, col, phi: single, corner_fill }) => {
            let tau = read_srct(&input.tableau)?;
            let r = if *single {
                phi(&tau, *col)?
            } else if tau.is_straight() {
                mu(&tau, *col, *corner_fill)?
            } else if *corner_fill {
                return Err(Error::Parse("--corner-fill needs a straight tableau".into()));
            } else {
                mu_skew(&tau, *col)?
            };
            let pretty = format!("{}exited: {:?}\n", r.tableau.render(), r.exited);
            Ok(Reply::new(to_value(&r), pretty))
        }
        Command::Rho { inverse, tableau, alpha } => {
            if *inverse {
                let tau = rho_inv(&read_srt(tableau)?, alpha)?;
                Ok(Reply::new(to_value(&tau), tau.render()))
            } else {
                let t = rho_map(&read_srct(tableau)?)?;
                Ok(Reply::new(to_value(&t), t.render()))
            }
        }
        Command::Rs(RsCommand::Insert { perm }) => {
            let (p, q) = insert_variant(perm)?;
            let pretty = format!("P:\n{}Q:\n{}", p.render(), q.render());
            Ok(Reply::new(json!({ "p": p, "q": q }), pretty))
        }
        Command::Rs(RsCommand::Evacuate { input }) => {
            let e = evacuate(&read_srt(&input.tableau)?)?;
            Ok(Reply::new(to_value(&e), e.render()))
        }
        Command::Rs(RsCommand::Rectify { input }) => match read_tableau(&input.tableau)? {
            AnyTableau::Reverse(t) => {
                let r = rectify_srt(&t)?;
                Ok(Reply::new(to_value(&r), r.render()))
            }
            AnyTableau::Composition(tau) => {
                let r = rectify(&tau)?;
                Ok(Reply::new(to_value(&r), r.render()))
            }
        },
        Command::Rs(RsCommand::Std { word }) => {
            let sigma = standardize(word);
            Ok(Reply::new(json!({ "value": sigma }), sigma.to_string()))
        }
        Command::Chains(ChainsCommand::Count { from, to }) => {
            let n = count_maximal_chains(from, to);
            Ok(Reply::new(json!({ "value": big_value(&n) }), n.to_string()))
        }
        Command::Chains(ChainsCommand::Srct { word }) => {
            if word.len() > cli.max_size {
                return Err(Error::LimitExceeded { size: word.len(), limit: cli.max_size });
            }
            let tau = chain_to_srct(word)?;
            Ok(Reply::new(to_value(&tau), tau.render()))
        }
        Command::Chains(ChainsCommand::Inner { alpha, word }) => {
            let (outer, inner) = inner_shape_after_slides(alpha, word)?;
            let pretty = format!("{outer}//{inner}");
            Ok(Reply::new(json!({ "outer": outer, "inner": inner }), pretty))
        }
        Command::Pieri { alpha, n, kind } => {
            if *n == 0 {
                return Err(Error::Parse("--n must be positive".into()));
            }
            let terms = right_pieri(alpha, *n, *kind)?;
            let pretty: Vec<String> = terms.iter().map(|c| c.to_string()).collect();
            Ok(Reply::new(json!({ "value": terms }), pretty.join("\n")))
        }
        Command::Nsym(NsymCommand::Convert { from, to, expr }) => {
            let x = NsymElement::parse(*from, expr)?;
            let y = nsym_engine(cli).convert(&x, *to)?;
            Ok(Reply::new(to_value(&y), y.to_string()))
        }
        Command::Nsym(NsymCommand::Multiply { basis, left, right }) => {
            let x = NsymElement::parse(*basis, left)?;
            let y = NsymElement::parse(*basis, right)?;
            let p = nsym_engine(cli).multiply(&x, &y)?;
            Ok(Reply::new(to_value(&p), p.to_string()))
        }
        Command::Nsym(NsymCommand::DMatrix { n }) => {
            if *n == 0 {
                return Err(Error::Parse("--n must be positive".into()));
            }
            let d = nsym_engine(cli).d_matrix(*n)?;
            let mut pretty = String::new();
            for (c, row) in d.compositions.iter().zip(&d.entries) {
                let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                pretty.push_str(&format!("{c}: {}\n", cells.join(" ")));
            }
            Ok(Reply::new(to_value(&d), pretty))
        }
        Command::Lr { alpha, beta, gamma } => {
            let c = nsym_engine(cli).lr_coefficient(alpha, beta, gamma)?;
            Ok(Reply::new(json!({ "value": c }), c.to_string()))
        }
        Command::Verify { suite, samples } => {
            let suites: Vec<Suite> =
                if suite == "all" { Suite::ALL.to_vec() } else { vec![suite.parse()?] };
            let config = VerifyConfig { max_size: cli.max_size, seed: cli.seed, samples: *samples };
            let nsym = nsym_engine(cli);
            let reports: Vec<_> = suites.iter().map(|s| run_suite_with(*s, &config, &nsym)).collect();
            let failed = reports.iter().any(|r| !r.ok());
            let pretty: String = reports.iter().map(|r| r.to_string()).collect();
            let json = if reports.len() == 1 { to_value(&reports[0]) } else { to_value(&reports) };
            let mut reply = Reply::new(json, pretty);
            if failed {
                reply.code = 2;
            }
            Ok(reply)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(reply) => {
            match cli.output {
                Output::Json => println!("{}", reply.json),
                Output::Pretty => println!("{}", reply.pretty.trim_end()),
            }
            ExitCode::from(reply.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_internal() { 2 } else { 1 })
        }
    }
}
