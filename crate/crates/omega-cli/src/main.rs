//! Command line front end: parses the text formats, dispatches each
//! subcommand to one library operation and reports results in a
//! shell-friendly way.
//!
//! Conventions:
//! - boolean queries print `true` or `false`, followed by a witness on its
//!   own line when the operation produced one; exit code 0 for `true`,
//!   1 for `false`
//! - artifact-valued commands write the shared text format to standard
//!   output or to `--out <path>`; `--dot` switches to graphviz text
//! - malformed input, violated preconditions and unknown commands exit
//!   with code 2 and a one-line diagnostic on standard error

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use omega_core::text::{
    parse_automaton, parse_instance, parse_lasso, parse_transducer, render_automaton,
    render_dot_automaton, render_dot_transducer, render_transducer,
};
use omega_core::{
    AnyTransducer, Automaton, Dba, Equivalence, Inclusion, LassoWord, Nba, PcpInstance,
    SyncTransducer,
};

/// Subcommand name paired with the library operation it dispatches to.
/// The registry test checks this table against the actual command set and
/// against the operation inventory, keeping the mapping one-to-one.
#[cfg(test)]
const REGISTRY: &[(&str, &str)] = &[
    ("trim", "trim"),
    ("empty", "emptiness with witness"),
    ("member", "lasso membership"),
    ("intersect", "Nba::intersect"),
    ("union", "Nba::union"),
    ("complement", "complement"),
    ("included", "Nba::included_in"),
    ("equiv", "Nba::lang_equiv"),
    ("closure", "Nba::closure"),
    ("dense-in", "prefix::dense_in_witness"),
    ("isolated", "isolated_points"),
    ("dom", "BuchiTransducer::dom"),
    ("im", "BuchiTransducer::im"),
    ("eval", "BuchiTransducer::evaluate"),
    ("functional", "functionality check"),
    ("disc-auto", "SyncTransducer::discontinuity_automaton"),
    ("cont-set", "SyncTransducer::continuity_set"),
    ("is-cont", "SyncTransducer::is_continuous"),
    ("is-cont-at", "SyncTransducer::is_continuous_at"),
    ("pi2-witness", "constructions::pi2_witness"),
    ("dense-partition", "constructions::dense_partition"),
    ("domain-witness", "constructions::witness_on_domain"),
    ("globalize", "constructions::globalize_pi2"),
    ("pcp-solve", "PcpInstance::solve_bounded"),
    ("pcp-build", "PcpInstance::transducer"),
    ("pcp-build-nested", "PcpInstance::nested_transducer"),
    ("pcp-point", "PcpInstance::point_continuity"),
    ("pcp-falsify", "PcpInstance::discontinuity_falsifier"),
];

#[derive(Parser)]
#[command(
    name = "omega",
    version,
    about = "Automata over infinite words, transducers and continuity analysis"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Remove useless states from an automaton or transducer
    Trim {
        file: PathBuf,
        #[arg(long)]
        dot: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide language emptiness; a member lasso witnesses `false`
    Empty { file: PathBuf },
    /// Decide whether the automaton accepts the lasso
    Member { file: PathBuf, lasso: String },
    /// Intersection of two acceptors
    Intersect {
        left: PathBuf,
        right: PathBuf,
        #[arg(long)]
        dot: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Union of two acceptors
    Union {
        left: PathBuf,
        right: PathBuf,
        #[arg(long)]
        dot: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Complement of an acceptor
    Complement {
        file: PathBuf,
        #[arg(long)]
        dot: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide language inclusion; a separating lasso witnesses `false`
    Included { left: PathBuf, right: PathBuf },
    /// Decide language equality; a separating lasso witnesses `false`
    Equiv { left: PathBuf, right: PathBuf },
    /// Topological closure of the language
    Closure {
        file: PathBuf,
        #[arg(long)]
        dot: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether the first language is dense in the second; an
    /// unextendable finite prefix witnesses `false`
    DenseIn { left: PathBuf, right: PathBuf },
    /// Automaton of the isolated points (deterministic input only)
    Isolated {
        file: PathBuf,
        #[arg(long)]
        dot: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Input projection of a transducer
    Dom {
        file: PathBuf,
        #[arg(long)]
        dot: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Output projection of a transducer
    Im {
        file: PathBuf,
        #[arg(long)]
        dot: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// All outputs the transducer pairs with the lasso, one per line
    Eval {
        file: PathBuf,
        lasso: String,
        /// Fail when the input has more outputs than this
        #[arg(long, default_value_t = 8)]
        bound: usize,
    },
    /// Decide functionality: exactly for a synchronous transducer, by
    /// bounded search otherwise; input and both outputs witness `false`
    Functional {
        file: PathBuf,
        /// Lasso size cap for the bounded search on general transducers
        #[arg(long, default_value_t = 6)]
        max: usize,
    },
    /// Acceptor of the discontinuity points of a synchronous function
    DiscAuto {
        file: PathBuf,
        #[arg(long)]
        dot: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Acceptor of the continuity set of a synchronous function
    ContSet {
        file: PathBuf,
        #[arg(long)]
        dot: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether the synchronous function is continuous everywhere
    IsCont { file: PathBuf },
    /// Decide whether the synchronous function is continuous at the lasso
    IsContAt { file: PathBuf, lasso: String },
    /// Total letter-to-letter map whose continuity set is the given
    /// deterministic language; `marker` names the input letter reused for
    /// dead-run tails
    Pi2Witness {
        file: PathBuf,
        marker: String,
        #[arg(long)]
        dot: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Split a Muller language into two disjoint halves, each dense in the
    /// whole; the parts are emitted separated by a `---` line
    DensePartition {
        file: PathBuf,
        #[arg(long)]
        dot: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Letter-to-letter map on domain D (Muller) whose continuity set is
    /// the part of D the second acceptor accepts
    DomainWitness {
        domain: PathBuf,
        subset: PathBuf,
        #[arg(long)]
        dot: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Extend a subset of a domain to the whole space without changing its
    /// part inside the domain
    Globalize {
        subset: PathBuf,
        domain: PathBuf,
        #[arg(long)]
        dot: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// All solutions of the correspondence instance up to the length cap,
    /// one index sequence per line
    PcpSolve {
        file: PathBuf,
        #[arg(long, default_value_t = 9)]
        max: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Transducer whose continuity points encode solutions
    PcpBuild {
        file: PathBuf,
        #[arg(long)]
        dot: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Doubly nested variant over an inner fixed instance
    PcpBuildNested {
        file: PathBuf,
        #[arg(long)]
        dot: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide continuity of the built map at the point selected by the
    /// index sequence
    PcpPoint {
        file: PathBuf,
        #[arg(required = true)]
        indices: Vec<usize>,
    },
    /// Metric evidence against continuity at the selected point: one
    /// approximant per depth up to the cap, or `none`
    PcpFalsify {
        file: PathBuf,
        #[arg(required = true)]
        indices: Vec<usize>,
        #[arg(long, default_value_t = 8)]
        max: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(2);
        }
    };
    match run(cli.cmd) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

type Fallible<T> = Result<T, String>;

fn read(path: &Path) -> Fallible<String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_automaton(path: &Path) -> Fallible<Automaton> {
    parse_automaton(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_nba(path: &Path) -> Fallible<Nba> {
    Ok(load_automaton(path)?.to_nba())
}

fn load_transducer(path: &Path) -> Fallible<AnyTransducer> {
    parse_transducer(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_sync(path: &Path) -> Fallible<SyncTransducer> {
    load_transducer(path)?
        .into_sync()
        .map_err(|e| format!("{}: {e}", path.display()))
}

fn load_instance(path: &Path) -> Fallible<PcpInstance> {
    parse_instance(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

/// Deterministic acceptor required: a dba file, or an nba file that
/// happens to be deterministic.
fn load_dba(path: &Path) -> Fallible<Dba> {
    match load_automaton(path)? {
        Automaton::Dba(d) => Ok(d),
        Automaton::Nba(n) => Dba::new(n).map_err(|e| format!("{}: {e}", path.display())),
        Automaton::Muller(_) => Err(format!(
            "{}: expected a deterministic acceptor, found a muller table file",
            path.display()
        )),
    }
}

/// Value of the first `kind:` line, deciding the parser to dispatch to.
fn file_kind(src: &str) -> Option<String> {
    for line in src.lines() {
        let body = line.split('#').next().unwrap_or("").trim();
        if let Some(v) = body.strip_prefix("kind:") {
            return Some(v.trim().to_string());
        }
    }
    None
}

fn write_out(text: String, out: Option<&Path>) -> Fallible<ExitCode> {
    match out {
        None => print!("{text}"),
        Some(p) => fs::write(p, text).map_err(|e| format!("{}: {e}", p.display()))?,
    }
    Ok(ExitCode::SUCCESS)
}

fn emit_automaton(a: Automaton, dot: bool, out: Option<&Path>) -> Fallible<ExitCode> {
    let text = if dot {
        render_dot_automaton(&a)
    } else {
        render_automaton(&a)
    };
    write_out(text, out)
}

fn emit_transducer(t: AnyTransducer, dot: bool, out: Option<&Path>) -> Fallible<ExitCode> {
    let text = if dot {
        render_dot_transducer(&t)
    } else {
        render_transducer(&t)
    };
    write_out(text, out)
}

fn verdict(yes: bool, witness: Option<String>) -> ExitCode {
    println!("{yes}");
    if let Some(w) = witness {
        println!("{w}");
    }
    if yes {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn point(src: &str, alpha: &omega_core::Alphabet) -> Fallible<LassoWord> {
    parse_lasso(src, alpha).map_err(|e| format!("lasso `{src}`: {e}"))
}

fn lib<T>(r: omega_core::Result<T>) -> Fallible<T> {
    r.map_err(|e| e.to_string())
}

fn run(cmd: Cmd) -> Fallible<ExitCode> {
    match cmd {
        Cmd::Trim { file, dot, out } => {
            let src = read(&file)?;
            let kind = file_kind(&src).unwrap_or_default();
            if kind == "transducer" || kind == "sync-transducer" {
                let t = match parse_transducer(&src)
                    .map_err(|e| format!("{}: {e}", file.display()))?
                {
                    AnyTransducer::Buchi(t) => AnyTransducer::Buchi(t.trim()),
                    AnyTransducer::Sync(t) => AnyTransducer::Sync(t.trim()),
                };
                emit_transducer(t, dot, out.as_deref())
            } else {
                let a = match parse_automaton(&src)
                    .map_err(|e| format!("{}: {e}", file.display()))?
                {
                    Automaton::Nba(a) => Automaton::Nba(a.trim()),
                    Automaton::Dba(d) => Automaton::Dba(d.trim()),
                    Automaton::Muller(m) => Automaton::Muller(m.trim()),
                };
                emit_automaton(a, dot, out.as_deref())
            }
        }
        Cmd::Empty { file } => {
            let a = load_automaton(&file)?;
            let alpha = a.alphabet().clone();
            let w = match &a {
                Automaton::Muller(m) => m.nonempty_witness(),
                other => other.to_nba().nonempty_witness(),
            };
            Ok(verdict(w.is_none(), w.map(|w| w.render(&alpha))))
        }
        Cmd::Member { file, lasso } => {
            let a = load_automaton(&file)?;
            let x = point(&lasso, a.alphabet())?;
            let yes = match &a {
                Automaton::Muller(m) => lib(m.contains(&x))?,
                other => lib(other.to_nba().contains(&x))?,
            };
            Ok(verdict(yes, None))
        }
        Cmd::Intersect {
            left,
            right,
            dot,
            out,
        } => {
            let a = lib(load_nba(&left)?.intersect(&load_nba(&right)?))?;
            emit_automaton(Automaton::Nba(a), dot, out.as_deref())
        }
        Cmd::Union {
            left,
            right,
            dot,
            out,
        } => {
            let a = lib(load_nba(&left)?.union(&load_nba(&right)?))?;
            emit_automaton(Automaton::Nba(a), dot, out.as_deref())
        }
        Cmd::Complement { file, dot, out } => {
            let a = match load_automaton(&file)? {
                Automaton::Muller(m) => Automaton::Muller(lib(m.complement())?),
                other => Automaton::Nba(lib(other.to_nba().complement())?),
            };
            emit_automaton(a, dot, out.as_deref())
        }
        Cmd::Included { left, right } => {
            let l = load_nba(&left)?;
            let alpha = l.alphabet().clone();
            Ok(match lib(l.included_in(&load_nba(&right)?))? {
                Inclusion::Included => verdict(true, None),
                Inclusion::Counterexample(w) => verdict(false, Some(w.render(&alpha))),
            })
        }
        Cmd::Equiv { left, right } => {
            let l = load_nba(&left)?;
            let alpha = l.alphabet().clone();
            Ok(match lib(l.lang_equiv(&load_nba(&right)?))? {
                Equivalence::Equivalent => verdict(true, None),
                Equivalence::OnlyLeft(w) | Equivalence::OnlyRight(w) => {
                    verdict(false, Some(w.render(&alpha)))
                }
            })
        }
        Cmd::Closure { file, dot, out } => {
            let a = lib(load_nba(&file)?.closure())?;
            emit_automaton(Automaton::Nba(a), dot, out.as_deref())
        }
        Cmd::DenseIn { left, right } => {
            let l = load_nba(&left)?;
            let alpha = l.alphabet().clone();
            let w = lib(omega_core::prefix::dense_in_witness(
                &l,
                &load_nba(&right)?,
            ))?;
            Ok(verdict(w.is_none(), w.map(|p| alpha.render_word(&p))))
        }
        Cmd::Isolated { file, dot, out } => {
            let a = match load_automaton(&file)? {
                Automaton::Muller(m) => m.isolated_points(),
                Automaton::Dba(d) => d.isolated_points(),
                Automaton::Nba(n) => {
                    let d = Dba::new(n).map_err(|e| format!("{}: {e}", file.display()))?;
                    d.isolated_points()
                }
            };
            emit_automaton(Automaton::Nba(a), dot, out.as_deref())
        }
        Cmd::Dom { file, dot, out } => {
            let t = load_transducer(&file)?;
            emit_automaton(Automaton::Nba(t.as_buchi().dom()), dot, out.as_deref())
        }
        Cmd::Im { file, dot, out } => {
            let t = load_transducer(&file)?;
            emit_automaton(Automaton::Nba(t.as_buchi().im()), dot, out.as_deref())
        }
        Cmd::Eval { file, lasso, bound } => {
            let t = load_transducer(&file)?;
            let b = t.as_buchi();
            let x = point(&lasso, b.input_alphabet())?;
            let outs = lib(b.evaluate(&x, bound))?;
            for y in outs {
                println!("{}", y.render(b.output_alphabet()));
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Functional { file, max } => {
            let t = load_transducer(&file)?;
            let witness = match &t {
                AnyTransducer::Sync(s) => match s.functionality() {
                    omega_core::Functionality::Functional => None,
                    omega_core::Functionality::Counterexample { input, out1, out2 } => {
                        Some((input, out1, out2))
                    }
                },
                AnyTransducer::Buchi(b) => b.nonfunctional_witness_bounded(max),
            };
            let b = t.as_buchi();
            Ok(match witness {
                None => verdict(true, None),
                Some((x, y1, y2)) => {
                    let code = verdict(false, Some(x.render(b.input_alphabet())));
                    println!("{}", y1.render(b.output_alphabet()));
                    println!("{}", y2.render(b.output_alphabet()));
                    code
                }
            })
        }
        Cmd::DiscAuto { file, dot, out } => {
            let a = lib(load_sync(&file)?.discontinuity_automaton())?;
            emit_automaton(Automaton::Nba(a), dot, out.as_deref())
        }
        Cmd::ContSet { file, dot, out } => {
            let a = lib(load_sync(&file)?.continuity_set())?;
            emit_automaton(Automaton::Nba(a), dot, out.as_deref())
        }
        Cmd::IsCont { file } => {
            let yes = lib(load_sync(&file)?.is_continuous())?;
            Ok(verdict(yes, None))
        }
        Cmd::IsContAt { file, lasso } => {
            let t = load_sync(&file)?;
            let x = point(&lasso, t.as_buchi().input_alphabet())?;
            let yes = lib(t.is_continuous_at(&x))?;
            Ok(verdict(yes, None))
        }
        Cmd::Pi2Witness {
            file,
            marker,
            dot,
            out,
        } => {
            let d = load_dba(&file)?;
            let sym = lib(d.alphabet().index_or_err(&marker))?;
            let t = lib(omega_core::constructions::pi2_witness(&d, sym))?;
            emit_transducer(AnyTransducer::Sync(t), dot, out.as_deref())
        }
        Cmd::DensePartition { file, dot, out } => {
            let m = match load_automaton(&file)? {
                Automaton::Muller(m) => m,
                _ => {
                    return Err(format!(
                        "{}: dense partition expects a muller table file",
                        file.display()
                    ))
                }
            };
            let (one, two) = lib(omega_core::constructions::dense_partition(&m))?;
            let (one, two) = (Automaton::Muller(one), Automaton::Muller(two));
            let text = if dot {
                format!(
                    "{}---\n{}",
                    render_dot_automaton(&one),
                    render_dot_automaton(&two)
                )
            } else {
                format!("{}---\n{}", render_automaton(&one), render_automaton(&two))
            };
            write_out(text, out.as_deref())
        }
        Cmd::DomainWitness {
            domain,
            subset,
            dot,
            out,
        } => {
            let d = match load_automaton(&domain)? {
                Automaton::Muller(m) => m,
                _ => {
                    return Err(format!(
                        "{}: the domain must be a muller table file",
                        domain.display()
                    ))
                }
            };
            let x = load_dba(&subset)?;
            let t = lib(omega_core::constructions::witness_on_domain(&d, &x))?;
            emit_transducer(AnyTransducer::Sync(t), dot, out.as_deref())
        }
        Cmd::Globalize {
            subset,
            domain,
            dot,
            out,
        } => {
            let x = load_nba(&subset)?;
            let d = load_nba(&domain)?;
            let a = lib(omega_core::constructions::globalize_pi2(&x, &d))?;
            emit_automaton(Automaton::Nba(a), dot, out.as_deref())
        }
        Cmd::PcpSolve { file, max, out } => {
            let inst = load_instance(&file)?;
            let mut text = String::new();
            for s in inst.solve_bounded(max) {
                let line: Vec<String> = s.iter().map(usize::to_string).collect();
                text.push_str(&line.join(" "));
                text.push('\n');
            }
            write_out(text, out.as_deref())
        }
        Cmd::PcpBuild { file, dot, out } => {
            let t = load_instance(&file)?.transducer();
            emit_transducer(AnyTransducer::Buchi(t), dot, out.as_deref())
        }
        Cmd::PcpBuildNested { file, dot, out } => {
            let t = load_instance(&file)?.nested_transducer();
            emit_transducer(AnyTransducer::Buchi(t), dot, out.as_deref())
        }
        Cmd::PcpPoint { file, indices } => {
            let yes = lib(load_instance(&file)?.point_continuity(&indices))?;
            Ok(verdict(yes, None))
        }
        Cmd::PcpFalsify { file, indices, max } => {
            let inst = load_instance(&file)?;
            match lib(inst.discontinuity_falsifier(&indices, max))? {
                None => {
                    println!("none");
                    Ok(ExitCode::from(1))
                }
                Some(f) => {
                    // approximants live on the tapes of the built transducer
                    let t = inst.transducer();
                    let ia = t.input_alphabet();
                    let oa = t.output_alphabet();
                    println!("point: {}", f.point.render(ia));
                    println!("value: {}", f.value.render(oa));
                    for a in &f.approximants {
                        println!(
                            "depth {}: input {} agrees {}, value {} agrees {}",
                            a.depth,
                            a.input.render(ia),
                            a.input_agreement,
                            a.value.render(oa),
                            a.value_agreement
                        );
                    }
                    Ok(ExitCode::SUCCESS)
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;
    use std::collections::BTreeSet;

    /// One subcommand per library operation and vice versa.
    #[test]
    fn registry_matches_the_command_set() {
        let cmd = Cli::command();
        let declared: BTreeSet<&str> = cmd
            .get_subcommands()
            .map(|c| c.get_name())
            .filter(|n| *n != "help")
            .collect();
        let registered: BTreeSet<&str> = REGISTRY.iter().map(|&(name, _)| name).collect();
        assert_eq!(declared, registered);
        assert_eq!(REGISTRY.len(), registered.len(), "duplicate subcommand");
        let ops: BTreeSet<&str> = REGISTRY.iter().map(|&(_, op)| op).collect();
        assert_eq!(ops.len(), REGISTRY.len(), "operation reached twice");
    }

    #[test]
    fn command_line_is_well_formed() {
        Cli::command().debug_assert();
    }
}
