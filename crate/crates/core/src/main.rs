use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use freesub::format::{self, GraphRecord};
use freesub::properties::PropertyPredicate;
use freesub::whitehead::{self, parse_moves};
use freesub::{algext, explore, lattice, properties, Error, Index, Result, StallingsGraph, SubgroupSet, Word};

#[derive(Parser)]
#[command(name = "freesub", version, about = "Finitely generated subgroups of free groups via Stallings graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// The subgroup `H`: generators via `--gens` or `--file`, or a graph record via `--graph`.
#[derive(Args, Clone)]
struct Input {
    /// Number of free generators of the ambient group.
    #[arg(long)]
    rank: Option<usize>,
    /// Comma separated generators, e.g. "ab,acba" (uppercase = inverse).
    #[arg(long, allow_hyphen_values = true)]
    gens: Option<String>,
    /// File with one generator per line; `#` starts a comment.
    #[arg(long)]
    file: Option<PathBuf>,
    /// JSON graph record.
    #[arg(long)]
    graph: Option<PathBuf>,
}

/// A second subgroup `K`.
#[derive(Args, Clone)]
struct Other {
    #[arg(long = "other-gens", allow_hyphen_values = true)]
    other_gens: Option<String>,
    #[arg(long = "other-file")]
    other_file: Option<PathBuf>,
    #[arg(long = "other-graph")]
    other_graph: Option<PathBuf>,
}

#[derive(Args, Clone, Copy)]
struct Output {
    /// Emit JSON graph records instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Fold the generators into the Stallings graph.
    Fold {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
    },
    /// Membership of a word (exit 0 if member, 1 otherwise).
    Member {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        word: String,
    },
    /// Rank of H.
    Rank {
        #[command(flatten)]
        input: Input,
    },
    /// Free basis read off the breadth-first spanning tree.
    Basis {
        #[command(flatten)]
        input: Input,
    },
    /// Rewrite a member as a word in the basis (letter i = basis element i).
    Express {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        word: String,
    },
    /// Index of H: a number, or infinite.
    Index {
        #[command(flatten)]
        input: Input,
    },
    /// Whether H ≤ K (exit 0 if so, 1 otherwise).
    Leq {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        other: Other,
    },
    /// Intersection H ∩ K.
    Intersect {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        other: Other,
        #[command(flatten)]
        out: Output,
    },
    /// Subgroup generated by H and K.
    Join {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        other: Other,
        #[command(flatten)]
        out: Output,
    },
    /// Principal overgroups of H.
    Fringe {
        #[command(flatten)]
        input: Input,
        /// Whitehead moves defining the basis φ(A), e.g. "a/.L.,A/..R".
        #[arg(long, allow_hyphen_values = true)]
        moves: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// The image of the graph of H in the graph of K.
    Takahasi {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        other: Other,
        #[command(flatten)]
        out: Output,
    },
    /// Algebraic extensions of H.
    Ae {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
    },
    /// Algebraic closure of H in K.
    Algclosure {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        other: Other,
        #[command(flatten)]
        out: Output,
    },
    /// Closure with respect to pure | p-pure:<p> | malnormal | ealg.
    Closure {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        prop: String,
        /// For pure and p-pure: adjoin roots one at a time instead.
        #[arg(long)]
        iterative: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Test pure | p-pure:<p> | malnormal | compressed | ealg-closed |
    /// free-factor | primitive | algebraic (exit 0 if true, 1 if false).
    Is {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        prop: String,
        #[command(flatten)]
        other: Other,
        /// The word for `primitive`.
        #[arg(long)]
        word: Option<String>,
    },
    /// Intersect fringes over random bases and compare with AE(H).
    ConjectureExplore {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[arg(long, default_value_t = 3)]
        move_length: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Extra move sequence to include; repeatable.
        #[arg(long = "moves", allow_hyphen_values = true)]
        moves: Vec<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Graphviz rendering of the Stallings graph.
    Dot {
        #[command(flatten)]
        input: Input,
    },
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn subgroup(
    rank: Option<usize>,
    gens: &Option<String>,
    file: &Option<PathBuf>,
    graph: &Option<PathBuf>,
    what: &str,
) -> Result<StallingsGraph> {
    let need_rank = || rank.ok_or_else(|| Error::Parse("--rank is required with generator input".into()));
    let h = match (gens, file, graph) {
        (Some(g), None, None) => StallingsGraph::build(need_rank()?, &freesub::words::parse_word_list(g, need_rank()?)?)?,
        (None, Some(f), None) => {
            let r = need_rank()?;
            StallingsGraph::build(r, &format::parse_generator_file(&read(f)?, r)?)?
        }
        (None, None, Some(p)) => format::from_json(&read(p)?)?,
        _ => return Err(Error::Parse(format!("give exactly one input for {what}"))),
    };
    if let Some(r) = rank {
        if r != h.alphabet_rank() {
            return Err(Error::RankMismatch { expected: r, found: h.alphabet_rank() });
        }
    }
    Ok(h)
}

impl Input {
    fn load(&self) -> Result<StallingsGraph> {
        subgroup(self.rank, &self.gens, &self.file, &self.graph, "H")
    }
}

impl Other {
    fn load(&self, h: &StallingsGraph) -> Result<StallingsGraph> {
        subgroup(Some(h.alphabet_rank()), &self.other_gens, &self.other_file, &self.other_graph, "K")
    }
}

fn emit_graph(h: &StallingsGraph, out: Output) {
    if out.json {
        println!("{}", format::to_json(h));
    } else {
        print!("{}", format::describe(h));
    }
}

fn emit_set(set: &SubgroupSet, out: Output) {
    if out.json {
        println!("{}", format::set_to_json(set));
    } else {
        print!("{}", format::table(set));
    }
}

fn verdict(b: bool) -> u8 {
    println!("{b}");
    if b {
        0
    } else {
        1
    }
}

fn word_in(h: &StallingsGraph, text: &str) -> Result<Word> {
    Word::parse_in_rank(text, h.alphabet_rank())
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Fold { input, out } => emit_graph(&input.load()?, out),
        Command::Member { input, word } => {
            let h = input.load()?;
            return Ok(verdict(h.contains(&word_in(&h, &word)?)));
        }
        Command::Rank { input } => println!("{}", input.load()?.rank()),
        Command::Basis { input } => {
            for w in input.load()?.basis() {
                println!("{w}");
            }
        }
        Command::Express { input, word } => {
            let h = input.load()?;
            println!("{}", h.express(&word_in(&h, &word)?)?);
        }
        Command::Index { input } => match input.load()?.index() {
            Index::Finite(n) => println!("{n}"),
            Index::Infinite => println!("infinite"),
        },
        Command::Leq { input, other } => {
            let h = input.load()?;
            let k = other.load(&h)?;
            return Ok(verdict(h.is_subgroup_of(&k)));
        }
        Command::Intersect { input, other, out } => {
            let h = input.load()?;
            emit_graph(&lattice::intersect(&h, &other.load(&h)?)?, out);
        }
        Command::Join { input, other, out } => {
            let h = input.load()?;
            emit_graph(&lattice::join(&h, &other.load(&h)?)?, out);
        }
        Command::Fringe { input, moves, out } => {
            let h = input.load()?;
            let set = match moves {
                Some(m) => lattice::fringe_in_basis(&h, &parse_moves(&m, h.alphabet_rank())?)?,
                None => lattice::fringe(&h),
            };
            emit_set(&set, out);
        }
        Command::Takahasi { input, other, out } => {
            let h = input.load()?;
            emit_graph(&lattice::takahasi_factor(&h, &other.load(&h)?)?, out);
        }
        Command::Ae { input, out } => emit_set(&algext::algebraic_extensions(&input.load()?)?, out),
        Command::Algclosure { input, other, out } => {
            let h = input.load()?;
            emit_graph(&algext::algebraic_closure(&h, &other.load(&h)?)?, out);
        }
        Command::Closure { input, prop, iterative, out } => {
            let h = input.load()?;
            let p: PropertyPredicate = prop.parse()?;
            let closure = match (iterative, p) {
                (false, _) => properties::property_closure(&h, p)?,
                (true, PropertyPredicate::Pure) => properties::pure_closure_iterative(&h, None)?.0,
                (true, PropertyPredicate::PPure(q)) => properties::pure_closure_iterative(&h, Some(q))?.0,
                (true, _) => return Err(Error::Parse("--iterative applies to pure and p-pure".into())),
            };
            emit_graph(&closure, out);
        }
        Command::Is { input, prop, other, word } => {
            let h = input.load()?;
            let answer = match prop.as_str() {
                "compressed" => algext::is_compressed(&h)?,
                "free-factor" => whitehead::is_free_factor(&h, &other.load(&h)?)?,
                "algebraic" => algext::is_algebraic(&h, &other.load(&h)?)?,
                "primitive" => {
                    let w = word.ok_or_else(|| Error::Parse("--word is required for primitive".into()))?;
                    whitehead::is_primitive(&word_in(&h, &w)?, &h)?
                }
                other_prop => other_prop.parse::<PropertyPredicate>()?.holds(&h)?,
            };
            return Ok(verdict(answer));
        }
        Command::ConjectureExplore { input, samples, move_length, seed, moves, out } => {
            let h = input.load()?;
            let rank = h.alphabet_rank();
            let mut sequences = moves.iter().map(|m| parse_moves(m, rank)).collect::<Result<Vec<_>>>()?;
            sequences.extend(explore::random_sequences(rank, samples, move_length, seed));
            let report = explore::explore_sequences(&h, sequences)?;
            print_report(&report, out);
            if !report.inclusion_holds {
                return Err(Error::InternalInconsistency("AE(H) is not inside the fringe intersection".into()));
            }
        }
        Command::Dot { input } => print!("{}", format::to_dot(&input.load()?)),
    }
    Ok(0)
}

fn print_report(report: &explore::ExploreReport, out: Output) {
    let sequences: Vec<String> = report
        .sequences
        .iter()
        .map(|s| s.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
        .collect();
    if out.json {
        let records = |set: &SubgroupSet| set.iter().map(GraphRecord::from_graph).collect::<Vec<_>>();
        let value = json!({
            "sequences": sequences,
            "intersection": records(&report.intersection),
            "algebraic_extensions": records(&report.algebraic_extensions),
            "inclusion_holds": report.inclusion_holds,
            "proper": report.proper,
        });
        println!("{value}");
        return;
    }
    println!("bases sampled: {}", sequences.len());
    for (i, s) in sequences.iter().enumerate() {
        println!("  {i}: {}", if s.is_empty() { "(identity)" } else { s });
    }
    print!("fringe intersection: {}", format::table(&report.intersection));
    print!("algebraic extensions: {}", format::table(&report.algebraic_extensions));
    println!("AE contained in intersection: {}", report.inclusion_holds);
    println!("intersection strictly larger: {}", report.proper);
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if matches!(e, Error::InternalInconsistency(_)) { 3 } else { 2 })
        }
    }
}
