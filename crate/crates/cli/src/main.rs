use std::fmt::Display;
use std::process::ExitCode;

use affine_gs::affine::AffineError;
use affine_gs::partition::{connected_to_marked, BasicPartition};
use affine_gs::{
    affine_a, basic_to_block, classify, complete, count_reduced, decompose, enumerate_arranged, enumerate_marked,
    finite_a, interreduce, oplus, q_binomial, r0free_enumerate, rebuild, verify_explicit_basis, Alphabet, BoxPartition,
    ClassError, CompletionLimits, ConnectedSeq, Presentation, RuleSet, Word,
};
use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "affine-gs", version, about = "Gröbner–Shirshov bases and reduced words of affine Weyl groups")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Tsv, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Builtin {
    AffineA,
    FiniteA,
}

#[derive(Args)]
struct Source {
    /// Built-in presentation (default affine-a)
    #[arg(long, value_enum, conflicts_with = "file")]
    builtin: Option<Builtin>,
    /// Presentation file (`generators:` and `rel:` lines)
    #[arg(long)]
    file: Option<std::path::PathBuf>,
    #[arg(long, required_unless_present = "file")]
    n: Option<usize>,
}

#[derive(Args)]
struct Limits {
    #[arg(long, default_value_t = 100_000)]
    max_rules: usize,
    #[arg(long, default_value_t = 64)]
    max_degree: usize,
}

impl From<&Limits> for CompletionLimits {
    fn from(l: &Limits) -> Self {
        CompletionLimits { max_rules: l.max_rules, max_degree: l.max_degree }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Complete a presentation to a reduced Gröbner–Shirshov basis
    Complete {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        limits: Limits,
    },
    /// Normal form of a word
    Reduce {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        limits: Limits,
        #[arg(long)]
        word: String,
    },
    /// Compare the completed basis of Ã_n with the explicit families
    Verify {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        limits: Limits,
    },
    /// Number of reduced words of each length
    Growth {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        limits: Limits,
        #[arg(long, default_value_t = 10)]
        max_len: usize,
    },
    /// Split a reduced word of Ã_n into its r0-free prefix and arranged word
    Classify {
        #[arg(long)]
        word: String,
        #[arg(long)]
        n: usize,
    },
    /// List r0-free words, arranged words or marked sequences
    Enumerate {
        #[arg(value_enum)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 10)]
        max_len: usize,
    },
    /// Coefficients of the Gaussian binomial [m choose r]_q
    Qbinom {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        r: usize,
    },
    /// Box partitions and connected sequences of basic partitions
    Bijection {
        #[arg(value_enum)]
        direction: Direction,
        #[arg(long)]
        n: usize,
        /// `3,3,2,0` to encode; `3,1,1,0;2,1,0,0` to decode
        #[arg(long)]
        input: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    R0free,
    Arranged,
    Marked,
}

#[derive(Clone, Copy, ValueEnum)]
enum Direction {
    Encode,
    Decode,
}

enum Failure {
    Usage(anyhow::Error),
    Domain(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Domain(e)
    }
}

fn usage(e: impl Into<anyhow::Error>) -> Failure {
    Failure::Usage(e.into())
}

type Rows = Vec<Vec<String>>;

/// Output as TSV rows plus the equivalent JSON value.
struct Output {
    rows: Rows,
    json: Value,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(out) => {
            match cli.format {
                Format::Tsv => {
                    for row in out.rows {
                        println!("{}", row.join("\t"));
                    }
                }
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable")),
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            eprintln!("usage: affine-gs <COMMAND> [OPTIONS]; see --help");
            ExitCode::from(2)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn load(source: &Source) -> Result<Presentation, Failure> {
    if let Some(path) = &source.file {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display())).map_err(usage)?;
        return Presentation::parse(&text).map_err(usage);
    }
    let n = source.n.ok_or_else(|| usage(anyhow!("--n is required for built-in presentations")))?;
    match source.builtin.unwrap_or(Builtin::AffineA) {
        Builtin::AffineA => affine_a(n),
        Builtin::FiniteA => finite_a(n),
    }
    .map_err(usage)
}

fn basis(p: &Presentation, limits: &Limits) -> Result<RuleSet, Failure> {
    Ok(interreduce(&complete(&p.rule_set(), limits.into()).map_err(anyhow::Error::from)?))
}

fn count_value(c: &BigInt) -> Value {
    u64::try_from(c).map(Value::from).unwrap_or_else(|_| Value::from(c.to_string()))
}

fn row<T: Display>(cells: impl IntoIterator<Item = T>) -> Vec<String> {
    cells.into_iter().map(|c| c.to_string()).collect()
}

fn affine_alphabet(n: usize) -> Alphabet {
    Alphabet::standard(n)
}

fn run(command: &Command) -> Result<Output, Failure> {
    match command {
        Command::Complete { source, limits } => {
            let p = load(source)?;
            let rs = basis(&p, limits)?;
            let a = p.alphabet();
            let rules: Vec<(String, String)> =
                rs.rules().iter().map(|r| (a.format(&r.lhs), a.format(&r.rhs))).collect();
            Ok(Output {
                rows: rules.iter().map(|(l, r)| row([l, r])).collect(),
                json: json!({
                    "generators": a.names(),
                    "rules": rules.iter().map(|(l, r)| json!({"lhs": l, "rhs": r})).collect::<Vec<_>>(),
                }),
            })
        }
        Command::Reduce { source, limits, word } => {
            let p = load(source)?;
            let w = p.alphabet().parse_word(word).map_err(usage)?;
            let nf = basis(&p, limits)?.normal_form(&w);
            let text = p.alphabet().format(&nf);
            Ok(Output {
                rows: vec![vec![text.clone()]],
                json: json!({"word": p.alphabet().format(&w), "normal_form": text}),
            })
        }
        Command::Verify { n, limits } => {
            let report = verify_explicit_basis(*n, limits.into()).map_err(|e| match e {
                AffineError::InvalidRank(_) => usage(e),
                other => Failure::Domain(other.into()),
            })?;
            if !report.matches {
                let a = affine_alphabet(*n);
                let show = |rs: &[affine_gs::Rule]| {
                    rs.iter()
                        .map(|r| format!("{} -> {}", a.format(&r.lhs), a.format(&r.rhs)))
                        .collect::<Vec<_>>()
                        .join("; ")
                };
                return Err(Failure::Domain(anyhow!(
                    "MISMATCH: produced but not expected: [{}]; expected but not produced: [{}]",
                    show(&report.missing),
                    show(&report.extra)
                )));
            }
            Ok(Output {
                rows: vec![row(["MATCH".to_string(), report.computed_rules.to_string()])],
                json: json!({"n": n, "result": "MATCH", "rules": report.computed_rules}),
            })
        }
        Command::Growth { source, limits, max_len } => {
            let p = load(source)?;
            let series = count_reduced(&basis(&p, limits)?, *max_len);
            Ok(Output {
                rows: series.coeffs().iter().enumerate().map(|(d, c)| row([d.to_string(), c.to_string()])).collect(),
                json: json!({
                    "series": series.coeffs().iter().enumerate()
                        .map(|(d, c)| json!({"degree": d, "count": count_value(c)}))
                        .collect::<Vec<_>>(),
                }),
            })
        }
        Command::Classify { word, n } => {
            let a = affine_alphabet(*n);
            let w = a.parse_word(word).map_err(usage)?;
            let c = classify(&w, *n).map_err(|e| match e {
                ClassError::NotReduced { factor, position, rule } => anyhow!(
                    "not reduced: factor {} at position {position} is the leading word of {} -> {}",
                    a.format(&factor),
                    a.format(&rule.lhs),
                    a.format(&rule.rhs)
                ),
                other => anyhow!(other),
            })?;
            let r = a.format(&c.r0free);
            let blocks: Vec<String> = c.arranged.blocks().iter().map(|b| b.to_string()).collect();
            Ok(Output {
                rows: vec![
                    row(["r0free".to_string(), r.clone()]),
                    row(["arranged".to_string(), c.arranged.to_string()]),
                    row(["arranged_word".to_string(), a.format(&c.arranged.expand())]),
                ],
                json: json!({
                    "r0free": r,
                    "arranged": c.arranged.to_string(),
                    "arranged_word": a.format(&c.arranged.expand()),
                    "blocks": blocks,
                    "exponents": c.arranged.exponents(),
                }),
            })
        }
        Command::Enumerate { kind, n, max_len } => {
            let a = affine_alphabet(*n);
            let items: Vec<(usize, Word, String)> = match kind {
                Kind::R0free => {
                    r0free_enumerate(*n, *max_len).into_iter().map(|w| (w.len(), w, String::new())).collect()
                }
                Kind::Arranged => enumerate_arranged(*n, *max_len)
                    .map_err(usage)?
                    .into_iter()
                    .map(|x| (x.len(), x.expand(), x.to_string()))
                    .collect(),
                Kind::Marked => enumerate_marked(*n, *max_len)
                    .map_err(usage)?
                    .into_iter()
                    .map(|m| {
                        let desc = m.blocks().iter().map(|b| b.to_string()).collect::<Vec<_>>().join(" ");
                        (m.len(), m.expand(), desc)
                    })
                    .collect(),
            };
            let with_desc = !matches!(kind, Kind::R0free);
            Ok(Output {
                rows: items
                    .iter()
                    .map(|(len, w, d)| {
                        let mut r = row([len.to_string(), a.format(w)]);
                        if with_desc {
                            r.push(if d.is_empty() { "1".into() } else { d.clone() });
                        }
                        r
                    })
                    .collect(),
                json: Value::from(
                    items
                        .iter()
                        .map(|(len, w, d)| json!({"length": len, "word": a.format(w), "structure": d}))
                        .collect::<Vec<_>>(),
                ),
            })
        }
        Command::Qbinom { m, r } => {
            let q = q_binomial(*m, *r).map_err(usage)?;
            Ok(Output {
                rows: q.coeffs().iter().enumerate().map(|(d, c)| row([d.to_string(), c.to_string()])).collect(),
                json: json!({"m": m, "r": r, "coefficients": q.coeffs().iter().map(count_value).collect::<Vec<_>>()}),
            })
        }
        Command::Bijection { direction, n, input } => bijection(*direction, *n, input),
    }
}

fn parse_tuple(s: &str) -> Result<Vec<usize>, Failure> {
    s.trim()
        .trim_start_matches('(')
        .trim_end_matches(')')
        .split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| usage(anyhow!("cannot parse tuple `{s}`")))
}

fn parse_basic(n: usize, s: &str) -> Result<BasicPartition, Failure> {
    let t = parse_tuple(s)?;
    let l = t.iter().skip(1).take_while(|&&v| v == 1).count();
    let shape_ok = t.len() == n && !t.is_empty() && t[1 + l..].iter().all(|&v| v == 0);
    if !shape_ok {
        return Err(usage(anyhow!("`{s}` is not a basic partition of length {n}")));
    }
    BasicPartition::new(n, t[0], l).map_err(usage)
}

fn bijection(direction: Direction, n: usize, input: &str) -> Result<Output, Failure> {
    let (seq, partition) = match direction {
        Direction::Encode => {
            let p: BoxPartition = input.parse().map_err(usage)?;
            if p.n() != n {
                return Err(usage(anyhow!("partition has {} parts, expected {n}", p.n())));
            }
            (decompose(&p), p)
        }
        Direction::Decode => {
            let parts = input
                .split(';')
                .filter(|s| !s.trim().is_empty())
                .map(|s| parse_basic(n, s))
                .collect::<Result<Vec<_>, _>>()?;
            let seq = ConnectedSeq::new(n, parts).map_err(|e| Failure::Domain(e.into()))?;
            let p = oplus(&seq);
            (seq, p)
        }
    };
    let tuples: Vec<String> = seq.parts().iter().map(|b| b.to_string()).collect();
    let size = partition.size();
    let mut rows =
        vec![row(["partition".to_string(), partition.to_string()]), row(["size".to_string(), size.to_string()])];
    rows.push(row(["sequence".to_string(), tuples.join(";")]));
    let mut json = json!({"partition": partition.parts(), "size": size, "sequence": tuples});
    // words exist for n >= 2 only
    if n >= 2 {
        let a = affine_alphabet(n);
        let marked = connected_to_marked(&seq).map_err(|e| Failure::Domain(e.into()))?;
        let blocks: Vec<String> = seq
            .parts()
            .iter()
            .map(|&b| basic_to_block(b).map(|b| b.to_string()))
            .collect::<Result<_, _>>()
            .map_err(|e| Failure::Domain(e.into()))?;
        let arranged = rebuild(&marked).map_err(|e| Failure::Domain(e.into()))?;
        rows.push(row(["blocks".to_string(), blocks.join(" ")]));
        rows.push(row(["marked_word".to_string(), a.format(&marked.expand())]));
        rows.push(row(["arranged_word".to_string(), a.format(&arranged.expand())]));
        json["blocks"] = Value::from(blocks);
        json["marked_word"] = Value::from(a.format(&marked.expand()));
        json["arranged_word"] = Value::from(a.format(&arranged.expand()));
    }
    Ok(Output { rows, json })
}
