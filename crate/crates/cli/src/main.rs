mod error;
mod output;
mod workspace;

use std::process::ExitCode;

use bisetkit_analysis::{
    approx_kernel, conj_classes_bounded, equivalent_upto, level_action_jobs, Budget, Certificate, EquivalenceVerdict,
    Evidence, Invariant, LevelSummary,
};
use bisetkit_dynamics::{identity_piece, mating, tuning, validate_bundle, Polynomial, TuningPiece};
use bisetkit_gob::{format_gob, ObjectBiset};
use clap::{Parser, Subcommand};
use serde::Serialize;

use error::{CliError, INVALID, OK};
use output::*;
use workspace::{as_biset, as_bundle, as_gob, as_gog, as_wr, fundamental, load_path, resolve, Entry, Workspace};

/// Bisets, graphs of bisets and Hubbard trees.
///
/// Entries are files (`.gog`, `.gob`, `.htree`, `.wr`), `-` for standard
/// input, or fixture names; append `_fb` to a graph of bisets or bundle to
/// use its fundamental biset. Exit codes: 0 success, 1 validation failure,
/// 2 parse error, 3 budget exceeded. BISETKIT_BUDGET overrides the search
/// budgets, e.g. `depth=10,points=100000`.
#[derive(Parser)]
#[command(name = "bisetkit", version)]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for level actions.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Load files into one workspace.
    Parse {
        paths: Vec<String>,
        /// Print each entry re-serialized.
        #[arg(long)]
        emit: bool,
    },
    /// Check an entry; exits 1 when invalid.
    Validate { entry: String },
    /// Presentation of the fundamental group.
    Pi1 {
        entry: String,
        #[arg(long)]
        base: Option<String>,
    },
    /// Wreath recursion of the fundamental biset.
    FundBiset {
        entry: String,
        /// Base vertex of the left graph.
        #[arg(long)]
        dagger: Option<String>,
        /// Base vertex of the right graph.
        #[arg(long)]
        star: Option<String>,
    },
    /// Graph of bisets of a Hubbard bundle.
    Hubbard2gob { entry: String },
    /// Mating of two polynomial bisets with peripheral words.
    Mate { first: String, second: String },
    /// Tuning along a cycle of carrier vertices.
    Tune {
        entry: String,
        /// Carrier vertices, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        cycle: Vec<String>,
        /// One polynomial biset per cycle vertex.
        #[arg(long)]
        piece: Vec<String>,
        /// Use pieces that change nothing.
        #[arg(long, conflicts_with = "piece")]
        identity: bool,
    },
    /// Tensor product of two wreath recursions.
    Tensor { first: String, second: String },
    /// Lift of the conjugacy class of a word.
    Lift { entry: String, word: String },
    /// Thurston endomorphism on the classes of the given words.
    Endo {
        entry: String,
        #[arg(required = true)]
        words: Vec<String>,
    },
    /// Cycle types and orbit counts on every level.
    Levels {
        entry: String,
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
    /// Words of bounded length acting trivially on a level.
    Kernel {
        entry: String,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long, default_value_t = 2)]
        wordlen: usize,
    },
    /// Conjugacy classes of biset elements within a ball.
    Classes {
        entry: String,
        #[arg(long, default_value_t = 1)]
        wordlen: usize,
    },
    /// Bounded combinatorial equivalence test.
    Equiv {
        first: String,
        second: String,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long, default_value_t = 2)]
        wordlen: usize,
    },
}

fn print<T: Serialize>(json: bool, value: &T, text: impl FnOnce(&T) -> String) -> Result<u8, CliError> {
    if json {
        println!("{}", serde_json::to_string_pretty(value)?);
    } else {
        print!("{}", text(value));
    }
    Ok(OK)
}

fn polynomial(spec: &str) -> Result<Polynomial, CliError> {
    let w = as_wr(resolve(spec)?)?;
    let p = w.peripheral.ok_or_else(|| CliError::invalid(format!("`{spec}` has no peripheral word")))?;
    Ok(Polynomial::new(w.biset, p))
}

fn gob_text(json: bool, g: &bisetkit_gob::GraphOfBisets) -> Result<u8, CliError> {
    print(json, &TextOut { kind: "gob", text: format_gob(g) }, |t| t.text.clone())
}

fn levels_text(s: &LevelSummary) -> String {
    let mut out = String::new();
    for k in 0..=s.depth {
        out.push_str(&format!("level {k}: {} orbit(s)", s.orbit_counts[k]));
        for g in &s.generators {
            let ct: Vec<String> = g.cycle_types[k].iter().map(usize::to_string).collect();
            out.push_str(&format!(", {} ({})", g.name, ct.join(" ")));
        }
        out.push('\n');
    }
    out
}

fn invariant_text(i: &Invariant) -> String {
    match i {
        Invariant::Order { source, target } => format!("order {source} vs {target}"),
        Invariant::CycleType { source, target } => format!("cycle type {source:?} vs {target:?}"),
        Invariant::Orbits { source, target } => format!("{source} vs {target} orbits"),
    }
}

fn certificate_text(c: &Certificate) -> String {
    let mut out = format!("distinguished (depth {}, word length {})\n", c.depth, c.wordlen);
    for e in &c.evidence {
        match e {
            Evidence::Degree { first, second } => out.push_str(&format!("  degrees {first} and {second}\n")),
            Evidence::Groups { first, second } => {
                out.push_str(&format!("  factor orders [{}] and [{}]\n", first.join(", "), second.join(", ")))
            }
            Evidence::NoMatching(s) => {
                out.push_str(&format!(
                    "  no matching {}: {} candidates per generator, {} rejected, {} matchings refuted\n",
                    match s.direction { bisetkit_analysis::Direction::FirstToSecond => "from the first to the second", bisetkit_analysis::Direction::SecondToFirst => "from the second to the first" },
                    s.ball,
                    s.rejected.len(),
                    s.matchings.len()
                ));
                for r in &s.rejected {
                    out.push_str(&format!(
                        "    {} -> {}: level {}, {}\n",
                        s.generators[r.generator],
                        r.image,
                        r.witness.level,
                        invariant_text(&r.witness.invariant)
                    ));
                }
                for m in &s.matchings {
                    out.push_str(&format!(
                        "    [{}]: {} at level {}, {}\n",
                        m.images.join(", "),
                        m.witness.test,
                        m.witness.level,
                        invariant_text(&m.witness.invariant)
                    ));
                }
            }
        }
    }
    out
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let json = cli.json;
    let budget = || Budget::from_env().map_err(CliError::from);
    match cli.cmd {
        Cmd::Parse { paths, emit } => {
            let mut ws = Workspace::default();
            for p in &paths {
                let (name, e) = load_path(p)?;
                ws.insert(name, e)?;
            }
            if emit {
                let out: Vec<TextOut> = ws.entries.values().map(|e| TextOut { kind: e.kind(), text: e.emit() }).collect();
                return print(json, &out, |v| v.iter().map(|t| t.text.clone()).collect::<Vec<_>>().join("\n"));
            }
            let out = ParseOut {
                entries: ws.entries.iter().map(|(n, e)| EntryOut { name: n.clone(), kind: e.kind() }).collect(),
            };
            print(json, &out, |o| o.entries.iter().map(|e| format!("{}: {}\n", e.name, e.kind)).collect())
        }
        Cmd::Validate { entry } => {
            let e = resolve(&entry)?;
            let out = match &e {
                Entry::Gog(g) => ValidateOut::new("gog", &g.validate()),
                Entry::Gob(g) => {
                    let mut r = g.validate();
                    if r.is_ok() {
                        if let bisetkit_gob::Fibrancy::NotFibrant { vertex, reason, .. } = g.is_left_fibrant()? {
                            r.push(g.carrier.name(vertex), format!("not left-fibrant: {reason}"));
                        }
                    }
                    ValidateOut::new("gob", &r)
                }
                Entry::Bundle(b) => ValidateOut::new("htree", &validate_bundle(b).report),
                Entry::Biset(w) => ValidateOut::new("wr", &w.biset.validate()),
            };
            let code = if out.ok { OK } else { INVALID };
            print(json, &out, |o| {
                if o.ok {
                    format!("valid {}\n", o.kind)
                } else {
                    o.issues.iter().map(|i| format!("{}: {}\n", i.context, i.message)).collect()
                }
            })?;
            Ok(code)
        }
        Cmd::Pi1 { entry, base } => {
            let gog = as_gog(resolve(&entry)?)?;
            let v = match base {
                Some(n) => gog
                    .graph
                    .index_of(&n)
                    .filter(|&v| gog.graph.is_vertex(v))
                    .ok_or_else(|| CliError::invalid(format!("no vertex `{n}`")))?,
                None => gog.graph.vertices().next().ok_or_else(|| CliError::invalid("empty graph"))?,
            };
            let p = gog.pi1_presentation(v, None)?;
            print(json, &Pi1Out::new(&gog, v, &p), Pi1Out::text)
        }
        Cmd::FundBiset { entry, dagger, star } => {
            let g = as_gob(resolve(&entry)?)?;
            let fb = fundamental(&g, dagger.as_deref(), star.as_deref())?;
            print(json, &BisetOut::new(&fb.biset), |_| fb.biset.fmt_table())
        }
        Cmd::Hubbard2gob { entry } => {
            let b = as_bundle(resolve(&entry)?)?;
            gob_text(json, &bisetkit_dynamics::hubbard_to_gob(&b)?)
        }
        Cmd::Mate { first, second } => {
            let (p, q) = (polynomial(&first)?, polynomial(&second)?);
            let d = p.biset.degree;
            gob_text(json, &mating(&p, &q, d)?)
        }
        Cmd::Tune { entry, cycle, piece, identity } => {
            let g = as_gob(resolve(&entry)?)?;
            let zs = cycle
                .iter()
                .map(|n| g.carrier.index_of(n).ok_or_else(|| CliError::invalid(format!("no carrier object `{n}`"))))
                .collect::<Result<Vec<_>, _>>()?;
            let pieces = if identity {
                zs.iter()
                    .map(|&z| {
                        let ObjectBiset::Cyclic(c) = &g.bisets[z] else {
                            return Err(CliError::invalid(format!("`{}` does not carry a cyclic biset", g.carrier.name(z))));
                        };
                        let (l, r) = (&g.left.groups[g.lambda.apply(z)], &g.right.groups[g.rho.apply(z)]);
                        Ok(identity_piece(l, r, c.d)?)
                    })
                    .collect::<Result<Vec<_>, _>>()?
            } else {
                piece
                    .iter()
                    .map(|s| polynomial(s).map(|p| TuningPiece::new(p.biset, p.peripheral)))
                    .collect::<Result<Vec<_>, _>>()?
            };
            gob_text(json, &tuning(&g, &zs, &pieces)?)
        }
        Cmd::Tensor { first, second } => {
            let t = as_biset(resolve(&first)?)?.tensor(&as_biset(resolve(&second)?)?)?;
            print(json, &BisetOut::new(&t), |_| t.fmt_table())
        }
        Cmd::Lift { entry, word } => {
            let b = as_biset(resolve(&entry)?)?;
            let w = b.right.parse_word(&word)?;
            let c = b.right.conj_canonical(&w);
            let out = LiftOut {
                class: b.right.fmt_class(&c),
                lifts: b
                    .lift_conjugacy(&c)
                    .iter()
                    .map(|(d, k)| LiftTermOut { degree: *d, class: b.left.fmt_class(k) })
                    .collect(),
            };
            print(json, &out, |o| {
                let mut s = format!("lift of [{}]\n", o.class);
                for t in &o.lifts {
                    s.push_str(&format!("  degree {}: [{}]\n", t.degree, t.class));
                }
                s
            })
        }
        Cmd::Endo { entry, words } => {
            let b = as_biset(resolve(&entry)?)?;
            if !b.is_self_biset() {
                return Err(CliError::invalid("the Thurston endomorphism needs a self-biset"));
            }
            let classes = words
                .iter()
                .map(|w| Ok(b.right.conj_canonical(&b.right.parse_word(w)?)))
                .collect::<Result<Vec<_>, CliError>>()?;
            let m = b.thurston_endomorphism(&classes);
            let out = EndoOut {
                classes: m.classes.iter().map(|c| b.right.fmt_class(c)).collect(),
                matrix: m.entries.iter().map(|row| row.iter().map(|x| x.to_string()).collect()).collect(),
                outside: m
                    .outside
                    .iter()
                    .map(|(col, c, w)| OutsideOut { column: *col, class: b.left.fmt_class(c), weight: w.to_string() })
                    .collect(),
            };
            print(json, &out, |o| {
                let mut s = format!("classes: {}\n", o.classes.iter().map(|c| format!("[{c}]")).collect::<Vec<_>>().join(" "));
                for row in &o.matrix {
                    s.push_str(&format!("  {}\n", row.join(" ")));
                }
                for x in &o.outside {
                    s.push_str(&format!("  column {} also lifts to [{}] with weight {}\n", x.column + 1, x.class, x.weight));
                }
                s
            })
        }
        Cmd::Levels { entry, depth } => {
            let b = as_biset(resolve(&entry)?)?;
            let s = level_action_jobs(&b, depth, &budget()?, cli.jobs)?.summary();
            print(json, &s, levels_text)
        }
        Cmd::Kernel { entry, depth, wordlen } => {
            let b = as_biset(resolve(&entry)?)?;
            let k = approx_kernel(&b, depth, wordlen, &budget()?)?;
            let out = KernelOut { depth, wordlen, words: k.iter().map(|w| b.right.fmt_word(w)).collect() };
            print(json, &out, |o| o.words.iter().map(|w| format!("{w}\n")).collect())
        }
        Cmd::Classes { entry, wordlen } => {
            let b = as_biset(resolve(&entry)?)?;
            let c = conj_classes_bounded(&b, wordlen, &budget()?)?;
            print(json, &c.summary(&b.left), |s| {
                let mut out = format!("{} class(es) with decorations of length <= {}\n", s.count, s.bound);
                for k in &s.classes {
                    out.push_str(&format!("  {}\n", k.join(" ")));
                }
                out.push_str(&format!("note: {}\n", s.note));
                out
            })
        }
        Cmd::Equiv { first, second, depth, wordlen } => {
            let (b, c) = (as_biset(resolve(&first)?)?, as_biset(resolve(&second)?)?);
            let v = equivalent_upto(&b, &c, depth, wordlen, &budget()?)?;
            print(json, &v, |v| match v {
                EquivalenceVerdict::ConsistentUpTo { depth, wordlen, forward, backward } => {
                    let gens = |g: &bisetkit_algebra::FpGroup| -> Vec<String> {
                        g.factors().iter().map(|f| f.name.clone()).collect()
                    };
                    let arrows = |from: Vec<String>, to: &[String]| -> String {
                        from.iter().zip(to).map(|(a, b)| format!("{a} -> {b}")).collect::<Vec<_>>().join(", ")
                    };
                    format!(
                        "consistent up to depth {depth}, word length {wordlen}\n  {}\n  {}\n",
                        arrows(gens(&b.right), forward),
                        arrows(gens(&c.right), backward)
                    )
                }
                EquivalenceVerdict::Distinguished(cert) => certificate_text(cert),
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}
