//! Subcommands of the `profinite` binary.

use std::fmt::Write as _;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use fixedbitset::FixedBitSet;
use profinite::json::{IdealThreadJson, LatticeMapJson, MapJson, PosetJson, PosetSpec, SystemJson, TernaryJson};
use profinite::lattice::{
    all_down_sets, birkhoff_eta, canonical_decomposition, principal, principal_embedding, FiniteLattice,
};
use profinite::limit::{
    find_atom_below, ideal_inf, ideal_inf_lookahead, ideal_sup, induced_limit_quotient, is_isolated, naive_thread,
    principal_decomposition, solve_thread, symbolic_compare, thread_order, IdealSystem, IdealThread, InverseSystem,
    SetSystem, SymbolicPoint, Thread,
};
use profinite::poset::{is_isomorphic, validate};
use profinite::quotient::{amalgamate, induce_lazy, meet_preservation_criterion, sticks_cover};
use profinite::ternary::{psi, psi_inverse, q_step, quotient_isomorphism_criterion, verify_square};
use profinite::universal::{
    build_universal_quotient, factor_through_level, lift_through_quotient, parse_word, solve_extension,
    triangle_commutes, truncate, witness_u, word_string,
};
use profinite::verify::{run, VerifyConfig};
use profinite::{classify, ComponentIndex, DownSet, FinitePoset, PosetMap, UniversalSequence};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

/// Settings shared by every subcommand.
#[derive(Debug, Clone, Copy)]
pub struct RunConfig {
    pub depth: usize,
    pub samples: usize,
    pub seed: u64,
    pub format: Format,
}

#[derive(Debug, Parser)]
#[command(name = "profinite", version, about = "Finite posets, down-set lattices and the universal quotient sequence")]
pub struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Deepest level of the universal sequence that may be built.
    #[arg(long, global = true, default_value_t = profinite::universal::DEFAULT_DEPTH)]
    pub depth: usize,
    /// Sample count for sampled checks.
    #[arg(long, global = true, default_value_t = 100_000)]
    pub samples: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Shorthand for `--format json`.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Construction {
    Point,
    Chain,
    Antichain,
    Sum,
    Union,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the partial order axioms on a poset file.
    Validate { file: PathBuf },
    /// Build a chain, antichain or point, or combine two poset files.
    Construct {
        kind: Construction,
        /// A size, or two poset files for `sum` and `union`.
        operands: Vec<String>,
    },
    /// Maximal (or minimal) members of a subset.
    Maximal {
        file: PathBuf,
        members: Vec<String>,
        #[arg(long)]
        minimal: bool,
    },
    /// Two-components, or the literal predicate on one pair.
    Components {
        file: PathBuf,
        #[arg(long, num_args = 2, value_names = ["X", "Y"])]
        literal: Option<Vec<String>>,
    },
    /// Hasse diagram in DOT.
    Dot { file: PathBuf },
    /// Every down-set.
    Ideals {
        file: PathBuf,
        #[arg(long)]
        count: bool,
    },
    /// The principal down-set of one element.
    Principal { file: PathBuf, element: String },
    /// Canonical decomposition of a down-set.
    Decompose { file: PathBuf, members: Vec<String> },
    /// Birkhoff representation of the down-set lattice, or of a lattice
    /// given as a poset with `--lattice`.
    Birkhoff {
        file: PathBuf,
        #[arg(long)]
        lattice: bool,
    },
    /// Atoms and join-irreducibles.
    Atoms {
        file: PathBuf,
        #[arg(long)]
        lattice: bool,
    },
    /// The embedding x -> ↓x.
    Embed { file: PathBuf },
    /// Homomorphism, onto and quotient tests for a map.
    Classify { map: PathBuf },
    /// The cover of a poset by 2-chains.
    Sticks { file: PathBuf },
    /// Complete a span of quotients to a commuting square.
    Amalgamate { f: PathBuf, g: PathBuf },
    /// The induced map on down-sets.
    Induce { map: PathBuf },
    /// Whether the induced map preserves meets.
    MeetCriterion { map: PathBuf },
    /// Level `n` of the universal sequence.
    Level { n: usize },
    /// Truncate a word of `P_n` to `P_k`.
    Project { n: usize, k: usize, word: String },
    /// Factor a projection through a quotient onto `P_k`.
    SolveExtension {
        map: PathBuf,
        #[arg(long)]
        k: Option<usize>,
    },
    /// A quotient from some level onto a poset.
    WitnessU { file: PathBuf },
    /// Recover a map on `P_i` from a cylindrical table on `P_j`.
    Factor {
        table: PathBuf,
        j: usize,
        i: usize,
        target: PathBuf,
    },
    /// Quotient level maps from the universal sequence onto a system.
    Universal { system: PathBuf },
    /// Lift `t: P_i -> A` through a quotient `g: B -> A`.
    Lift { t: PathBuf, i: usize, g: PathBuf },
    /// A thread through a system of finite sets.
    ThreadSolve { system: PathBuf },
    /// Compare two threads of a system, given as comma-separated elements.
    ThreadOrder { system: PathBuf, x: String, y: String },
    /// Compare two points of the limit, written like `01(2)`.
    Compare { x: String, y: String },
    /// Whether a point is isolated, or an isolated point in a cylinder.
    Isolated {
        point: Option<String>,
        #[arg(long, value_name = "PREFIX")]
        witness: Option<String>,
    },
    /// Supremum of two down-set threads.
    IdealSup { a: PathBuf, b: PathBuf },
    /// Infimum of two down-set threads.
    IdealInf {
        a: PathBuf,
        b: PathBuf,
        /// Also compare against infima computed at deeper depths.
        #[arg(long, value_name = "N")]
        lookahead: Option<usize>,
    },
    /// An atom below a nonzero down-set thread.
    AtomBelow { a: PathBuf },
    /// Principal threads whose supremum is the given thread.
    DecomposeThread { a: PathBuf },
    /// Push a down-set thread onto a target system.
    LimitQuotient { system: PathBuf, a: PathBuf },
    /// Ternary encoding of a down-set of `P_n`.
    Encode {
        n: usize,
        file: PathBuf,
        #[arg(long)]
        decode: bool,
    },
    /// The map from `T_n` functions to `T_{n-1}` functions.
    QStep { n: usize, file: PathBuf },
    /// The square between the encoding and the induced projection.
    VerifySquare { n: usize },
    /// The isomorphism criterion for a lattice map.
    IsoCriterion { file: PathBuf },
    /// The acceptance suite.
    VerifyAll {
        #[arg(long, value_name = "ID")]
        only: Vec<u8>,
    },
}

/// Subcommand and the library operation it exposes.
pub const OPERATIONS: &[(&str, &str)] = &[
    ("validate", "poset::validate"),
    ("construct", "FinitePoset::{point, chain, antichain, linear_sum, disjoint_union}"),
    ("maximal", "FinitePoset::{maximal_elements, minimal_elements}"),
    ("components", "FinitePoset::{two_components, is_two_component}"),
    ("dot", "FinitePoset::to_dot"),
    ("ideals", "lattice::all_down_sets"),
    ("principal", "lattice::principal"),
    ("decompose", "lattice::canonical_decomposition"),
    ("birkhoff", "lattice::birkhoff_eta"),
    ("atoms", "FiniteLattice::{atoms, join_irreducibles}"),
    ("embed", "lattice::principal_embedding"),
    ("classify", "quotient::classify"),
    ("sticks", "quotient::sticks_cover"),
    ("amalgamate", "quotient::amalgamate"),
    ("induce", "quotient::induce"),
    ("meet-criterion", "quotient::meet_preservation_criterion"),
    ("level", "UniversalSequence::level"),
    ("project", "UniversalSequence::projection"),
    ("solve-extension", "universal::solve_extension"),
    ("witness-u", "universal::witness_u"),
    ("factor", "universal::factor_through_level"),
    ("universal", "universal::build_universal_quotient"),
    ("lift", "universal::lift_through_quotient"),
    ("thread-solve", "limit::solve_thread"),
    ("thread-order", "limit::thread_order"),
    ("compare", "limit::symbolic_compare"),
    ("isolated", "limit::{is_isolated, SymbolicPoint::isolated_witness}"),
    ("ideal-sup", "limit::ideal_sup"),
    ("ideal-inf", "limit::{ideal_inf, ideal_inf_lookahead}"),
    ("atom-below", "limit::find_atom_below"),
    ("decompose-thread", "limit::principal_decomposition"),
    ("limit-quotient", "limit::induced_limit_quotient"),
    ("encode", "ternary::{psi, psi_inverse}"),
    ("q-step", "ternary::q_step"),
    ("verify-square", "ternary::verify_square"),
    ("iso-criterion", "ternary::quotient_isomorphism_criterion"),
    ("verify-all", "verify::run"),
];

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}:{line}:{column}: {message}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Library(#[from] profinite::Error),
}

impl CliError {
    pub fn status(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 3,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// What a subcommand produced; `failed` marks a check that ran and did not
/// hold.
#[derive(Debug, Clone)]
pub struct Report {
    pub text: String,
    pub json: Value,
    pub dot: Option<String>,
    pub failed: bool,
}

impl Report {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Report {
            text: text.into(),
            json,
            dot: None,
            failed: false,
        }
    }

    fn failed_if(mut self, failed: bool) -> Self {
        self.failed = failed;
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Json => serde_json::to_string_pretty(&self.json).expect("values serialize"),
            Format::Dot => self.dot.clone().unwrap_or_else(|| self.text.clone()),
        }
    }

    pub fn status(&self) -> u8 {
        self.failed as u8
    }
}

/// Parses `args`, runs the subcommand, writes its output, and returns the
/// exit status.
pub fn main_with(args: impl IntoIterator<Item = String>, out: &mut impl std::io::Write, err: &mut impl std::io::Write) -> u8 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    let cfg = RunConfig {
        depth: cli.depth,
        samples: cli.samples,
        seed: cli.seed,
        format: if cli.json { Format::Json } else { cli.format },
    };
    match dispatch(&cli.command, &cfg) {
        Ok(report) => {
            let _ = writeln!(out, "{}", report.render(cfg.format).trim_end());
            report.status()
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.status()
        }
    }
}

pub fn dispatch(command: &Command, cfg: &RunConfig) -> CliResult<Report> {
    let seq = || UniversalSequence::new(cfg.depth).map_err(CliError::from);
    match command {
        Command::Validate { file } => cmd_validate(file),
        Command::Construct { kind, operands } => cmd_construct(*kind, operands, &seq()?),
        Command::Maximal { file, members, minimal } => {
            let p = load_poset(file, &seq()?)?;
            let set = members_of(&p, members)?;
            let m = if *minimal { p.minimal_elements(&set)? } else { p.maximal_elements(&set)? };
            Ok(label_set_report(&p, &m))
        }
        Command::Components { file, literal } => {
            let p = load_poset(file, &seq()?)?;
            match literal {
                Some(pair) => {
                    let (x, y) = (element(&p, &pair[0])?, element(&p, &pair[1])?);
                    let v = p.is_two_component(x, y)?;
                    Ok(Report::new(v.to_string(), json!(v)))
                }
                None => {
                    let comps = p.two_components();
                    let text = comps.iter().map(|&(a, b)| format!("{} < {}", p.label(a), p.label(b))).collect::<Vec<_>>();
                    Ok(Report::new(text.join("\n"), json!(comps)))
                }
            }
        }
        Command::Dot { file } => {
            let p = load_poset(file, &seq()?)?;
            let dot = p.to_dot();
            Ok(Report::new(dot.clone(), json!(dot)))
        }
        Command::Ideals { file, count } => {
            let p = Arc::new(load_poset(file, &seq()?)?);
            let lat = all_down_sets(p.clone())?;
            if *count {
                return Ok(Report::new(lat.len().to_string(), json!(lat.len())));
            }
            let sets: Vec<Vec<&str>> = lat.ideals().iter().map(|a| labels(&p, a)).collect();
            let text = sets.iter().map(|s| format!("{{{}}}", s.join(","))).collect::<Vec<_>>();
            Ok(Report::new(text.join("\n"), json!(sets)))
        }
        Command::Principal { file, element: e } => {
            let p = load_poset(file, &seq()?)?;
            let d = principal(&p, element(&p, e)?)?;
            Ok(label_set_report(&p, &d))
        }
        Command::Decompose { file, members } => {
            let p = load_poset(file, &seq()?)?;
            let q = DownSet::new(&p, members_of(&p, members)?)?;
            let parts: Vec<Vec<&str>> = canonical_decomposition(&p, &q)?.iter().map(|a| labels(&p, a)).collect();
            let text = parts.iter().map(|s| format!("{{{}}}", s.join(","))).collect::<Vec<_>>();
            Ok(Report::new(text.join(" ∪ "), json!(parts)))
        }
        Command::Birkhoff { file, lattice } => cmd_birkhoff(file, *lattice, &seq()?),
        Command::Atoms { file, lattice } => {
            let l = load_lattice(file, *lattice, &seq()?)?;
            let carrier = l.carrier();
            let names = |v: Vec<usize>| v.into_iter().map(|x| carrier.label(x).to_string()).collect::<Vec<_>>();
            let (atoms, irr) = (names(l.atoms()), names(l.join_irreducibles()));
            Ok(Report::new(
                format!("atoms: {}\njoin-irreducible: {}\natomic: {}", atoms.join(" "), irr.join(" "), l.is_atomic()),
                json!({"atoms": atoms, "join_irreducibles": irr, "atomic": l.is_atomic()}),
            ))
        }
        Command::Embed { file } => {
            let p = Arc::new(load_poset(file, &seq()?)?);
            let lat = all_down_sets(p.clone())?;
            let e = principal_embedding(&lat);
            let reflects = (0..p.len()).all(|x| (0..p.len()).all(|y| p.le(x, y) == e.codomain().le(e.apply(x), e.apply(y))));
            let rows: Vec<(String, Vec<&str>)> = (0..p.len())
                .map(|x| (p.label(x).to_string(), labels(&p, lat.ideal(e.apply(x)))))
                .collect();
            let mut text = String::new();
            for (x, d) in &rows {
                let _ = writeln!(text, "{x} -> {{{}}}", d.join(","));
            }
            let _ = write!(text, "order embedding: {reflects}");
            Ok(Report::new(text, json!({"images": rows, "order_embedding": reflects})).failed_if(!reflects))
        }
        Command::Classify { map } => {
            let f = load_map(map, &seq()?)?;
            let c = classify(&f);
            let text = format!(
                "homomorphism: {}\nonto: {}\nquotient: {}{}",
                c.is_homomorphism,
                c.is_onto,
                c.is_quotient,
                c.witness.as_ref().map(|w| format!("\nwitness: {w:?}")).unwrap_or_default()
            );
            Ok(Report::new(text, to_json(&c)))
        }
        Command::Sticks { file } => {
            let p = Arc::new(load_poset(file, &seq()?)?);
            let cover = sticks_cover(p)?;
            Ok(map_report(format!("{} components", cover.count), &cover.map))
        }
        Command::Amalgamate { f, g } => {
            let seq = seq()?;
            let (f, g) = (load_map(f, &seq)?, load_map(g, &seq)?);
            let am = amalgamate(&f, &g)?;
            let commutes = am.commutes(&f, &g);
            let arrows = json!({
                "d": PosetJson::from_poset(&am.d),
                "q": MapJson::from_map(&am.q),
                "p": MapJson::from_map(&am.p),
                "f_prime": MapJson::from_map(&am.f_prime),
                "g_prime": MapJson::from_map(&am.g_prime),
                "commutes": commutes,
            });
            let text = format!(
                "|D| = {}\nq: {:?}\np: {:?}\nf': {:?}\ng': {:?}\ncommutes: {commutes}",
                am.d.len(),
                am.q.assignment(),
                am.p.assignment(),
                am.f_prime.assignment(),
                am.g_prime.assignment()
            );
            Ok(Report::new(text, arrows).failed_if(!commutes))
        }
        Command::Induce { map } => {
            let f = load_map(map, &seq()?)?;
            let hat = induce_lazy(&f)?;
            let q = f.domain().clone();
            let lat = all_down_sets(q.clone())?;
            let p = f.codomain();
            let rows: Vec<(Vec<&str>, Vec<&str>)> = lat.ideals().iter().map(|a| (labels(&q, a), labels(p, &hat.apply(a)))).collect();
            let text = rows
                .iter()
                .map(|(a, b)| format!("{{{}}} -> {{{}}}", a.join(","), b.join(",")))
                .collect::<Vec<_>>();
            Ok(Report::new(text.join("\n"), json!(rows)))
        }
        Command::MeetCriterion { map } => {
            let f = load_map(map, &seq()?)?;
            let w = meet_preservation_criterion(&f)?;
            let text = match &w {
                None => "meets preserved".to_string(),
                Some(w) => format!("fails at t={}, x={}, y={}", f.codomain().label(w.t), f.domain().label(w.x), f.domain().label(w.y)),
            };
            Ok(Report::new(text, json!({"holds": w.is_none(), "witness": w})))
        }
        Command::Level { n } => {
            let p = seq()?.level(*n)?;
            Ok(poset_report(&p))
        }
        Command::Project { n, k, word } => {
            let (x, len) = parse_word(word)?;
            if len != *n || *k == 0 || k > n {
                return Err(CliError::Input(format!("need a word of length {n} and 1 <= k <= {n}")));
            }
            let seq = seq()?;
            let y = seq.projection(*n, *k)?.apply(x);
            debug_assert_eq!(y, truncate(x, *n, *k));
            let w = word_string(y, *k);
            Ok(Report::new(w.clone(), json!(w)))
        }
        Command::SolveExtension { map, k } => {
            let seq = seq()?;
            let spec: MapJson = read_json(map)?;
            let k = k.or(spec.codomain.level()).ok_or_else(|| CliError::Input("codomain must be {\"level\": k} or --k given".into()))?;
            let p = spec.to_map(&seq)?;
            let ext = solve_extension(&seq, &p, k)?;
            let proj = seq.projection(ext.m, k)?;
            let ok = (0..ext.g.domain().len()).all(|x| p.apply(ext.g.apply(x)) == proj.apply(x));
            Ok(extension_report(ext.m, &ext.g, ok))
        }
        Command::WitnessU { file } => {
            let p = Arc::new(load_poset(file, &seq()?)?);
            let ext = witness_u(&seq()?, p)?;
            let ok = classify(&ext.g).is_quotient;
            Ok(extension_report(ext.m, &ext.g, ok))
        }
        Command::Factor { table, j, i, target } => {
            let seq = seq()?;
            let values: Vec<usize> = read_json(table)?;
            let target = Arc::new(load_poset(target, &seq)?);
            let h = factor_through_level(&seq, &values, *j, *i, target)?;
            Ok(map_report(format!("h: P_{i} -> target"), &h))
        }
        Command::Universal { system } => {
            let seq = seq()?;
            let sys = load_system(system, &seq)?;
            let fam = build_universal_quotient(&seq, &sys)?;
            let ok = fam.check(&seq, &sys).is_ok();
            let mut text = String::new();
            for (f, i) in fam.maps.iter().zip(&fam.indices) {
                let _ = writeln!(text, "P_{i}: {:?}", f.assignment());
            }
            let _ = write!(text, "squares commute: {ok}");
            let maps: Vec<Value> = fam
                .maps
                .iter()
                .zip(&fam.indices)
                .map(|(f, i)| json!({"level": i, "assignment": f.assignment()}))
                .collect();
            Ok(Report::new(text, json!({"maps": maps, "commutes": ok})).failed_if(!ok))
        }
        Command::Lift { t, i, g } => {
            let seq = seq()?;
            let (t, g) = (load_map(t, &seq)?, load_map(g, &seq)?);
            let l = lift_through_quotient(&seq, &t, *i, &g)?;
            let ok = triangle_commutes(&seq, &l, &g, &t, *i);
            Ok(extension_report(l.m, &l.g, ok))
        }
        Command::ThreadSolve { system } => {
            let sys: SetSystem = read_json(system)?;
            let t = solve_thread(&sys)?;
            let naive = naive_thread(&sys)?;
            let text = format!(
                "thread: {:?}\nfirst-fit: {}",
                t.entries,
                naive.as_ref().map_or("dead end".to_string(), |n| format!("{:?}", n.entries))
            );
            Ok(Report::new(text, json!({"thread": t.entries, "first_fit": naive.map(|n| n.entries)})))
        }
        Command::ThreadOrder { system, x, y } => {
            let sys = load_system(system, &seq()?)?;
            let (x, y) = (thread(&sys, x)?, thread(&sys, y)?);
            let o = thread_order(&sys, &x, &y)?;
            Ok(order_report(o))
        }
        Command::Compare { x, y } => {
            let (x, y): (SymbolicPoint, SymbolicPoint) = (x.parse()?, y.parse()?);
            Ok(order_report(symbolic_compare(&x, &y)))
        }
        Command::Isolated { point, witness } => match (point, witness) {
            (Some(p), None) => {
                let x: SymbolicPoint = p.parse()?;
                let v = is_isolated(&x);
                Ok(Report::new(v.to_string(), json!(v)))
            }
            (None, Some(prefix)) => {
                let digits = digits_of(prefix)?;
                let x = SymbolicPoint::isolated_witness(&digits)?;
                Ok(Report::new(x.to_string(), json!(x.to_string())))
            }
            _ => Err(CliError::Usage("give either a point or --witness PREFIX".into())),
        },
        Command::IdealSup { a, b } => {
            let (_, a, b) = thread_pair(a, b, cfg)?;
            Ok(ideal_thread_report(&ideal_sup(&a, &b)?))
        }
        Command::IdealInf { a, b, lookahead } => {
            let (sys, a, b) = thread_pair(a, b, cfg)?;
            match lookahead {
                None => Ok(ideal_thread_report(&ideal_inf(&sys, &a, &b)?)),
                Some(n) => {
                    let r = ideal_inf_lookahead(&sys, &a, &b, *n)?;
                    let results: Vec<IdealThreadJson> = r.results.iter().map(IdealThreadJson::from_thread).collect();
                    let text = format!(
                        "{}\nstable: {}",
                        results.iter().map(|t| format!("{:?}", t.levels)).collect::<Vec<_>>().join("\n"),
                        r.stable
                    );
                    Ok(Report::new(text, json!({"results": results, "stable": r.stable})))
                }
            }
        }
        Command::AtomBelow { a } => {
            let (sys, a) = load_ideal_thread(a, cfg)?;
            Ok(ideal_thread_report(&find_atom_below(&sys, &a)?))
        }
        Command::DecomposeThread { a } => {
            let (sys, a) = load_ideal_thread(a, cfg)?;
            let parts: Vec<IdealThreadJson> = principal_decomposition(&sys, &a)?.iter().map(IdealThreadJson::from_thread).collect();
            let text = parts.iter().map(|t| format!("{:?}", t.levels)).collect::<Vec<_>>();
            Ok(Report::new(text.join("\n"), json!(parts)))
        }
        Command::LimitQuotient { system, a } => {
            let seq = seq()?;
            let target = load_system(system, &seq)?;
            let fam = build_universal_quotient(&seq, &target)?;
            let thread: IdealThreadJson = read_json(a)?;
            let psys = IdealSystem::new(InverseSystem::universal(&seq, thread.levels.len())?);
            let a = thread.to_thread(&psys)?;
            let q = induced_limit_quotient(&fam, &IdealSystem::new(target), &a)?;
            let j = IdealThreadJson::from_thread(&q);
            Ok(Report::new(format!("{:?}", j.levels), to_json(&j)))
        }
        Command::Encode { n, file, decode } => {
            let seq = seq()?;
            let index = ComponentIndex::new(*n)?;
            let p = seq.level(*n)?;
            if *decode {
                let f: TernaryJson = read_json(file)?;
                let a = psi_inverse(&index, &f.to_function(&index)?);
                Ok(label_set_report(&p, &a))
            } else {
                let members: Vec<Value> = read_json(file)?;
                let tokens = members
                    .iter()
                    .map(|v| match v {
                        Value::String(s) => Ok(s.clone()),
                        Value::Number(n) => Ok(n.to_string()),
                        other => Err(CliError::Input(format!("expected element label or index, got {other}"))),
                    })
                    .collect::<CliResult<Vec<_>>>()?;
                let a = DownSet::new(&p, members_of(&p, &tokens)?)?;
                let f = TernaryJson::from_function(&index, &psi(&index, &a));
                Ok(ternary_report(&f))
            }
        }
        Command::QStep { n, file } => {
            let f: TernaryJson = read_json(file)?;
            if f.n != *n {
                return Err(CliError::Input(format!("function is on T_{}, expected T_{n}", f.n)));
            }
            let g = q_step(&f.to_function(&ComponentIndex::new(*n)?)?)?;
            let out = TernaryJson::from_function(&ComponentIndex::new(n - 1)?, &g);
            Ok(ternary_report(&out))
        }
        Command::VerifySquare { n } => {
            let r = verify_square(&seq()?, *n, cfg.samples, cfg.seed)?;
            let ok = r.mismatch.is_none();
            let text = format!(
                "{} down-sets of P_{} checked ({}): {}",
                r.checked,
                n + 1,
                if r.exhaustive { "exhaustive" } else { "sampled" },
                if ok { "square commutes" } else { "mismatch" }
            );
            let mismatch = r.mismatch.as_ref().map(|a| a.ones().collect::<Vec<_>>());
            Ok(Report::new(text, json!({"checked": r.checked, "exhaustive": r.exhaustive, "mismatch": mismatch})).failed_if(!ok))
        }
        Command::IsoCriterion { file } => {
            let spec: LatticeMapJson = read_json(file)?;
            let l = FiniteLattice::from_poset(Arc::new(spec.source.to_poset()?))?;
            let t = FiniteLattice::from_poset(Arc::new(spec.target.to_poset()?))?;
            let r = quotient_isomorphism_criterion(&l, &t, &spec.table)?;
            let text = format!(
                "restriction quotient: {}\nirreducibles onto: {}\njoin quotient: {}\nsquare commutes: {}\nholds: {}",
                r.restriction_quotient,
                r.irreducibles_onto,
                r.join_quotient,
                r.square_commutes.map_or("not checked".into(), |b| b.to_string()),
                r.holds()
            );
            Ok(Report::new(text, to_json(&r)))
        }
        Command::VerifyAll { only } => {
            let vc = VerifyConfig {
                seed: cfg.seed,
                samples: cfg.samples,
                depth: cfg.depth,
            };
            let ids: Vec<u8> = if only.is_empty() { (1..=11).collect() } else { only.clone() };
            if let Some(bad) = ids.iter().find(|&&i| !(1..=11).contains(&i)) {
                return Err(CliError::Usage(format!("no criterion {bad}; criteria are 1 to 11")));
            }
            let checks: Vec<_> = ids.iter().map(|&i| run(i, &vc)).collect();
            let failed = checks.iter().any(|c| !c.passed);
            let text = checks.iter().map(|c| c.to_string()).collect::<Vec<_>>().join("\n");
            Ok(Report::new(text, to_json(&checks)).failed_if(failed))
        }
    }
}

fn cmd_validate(file: &Path) -> CliResult<Report> {
    let p: PosetJson = read_json(file)?;
    let mut relation: Vec<(usize, usize)> = (0..p.elements.len()).map(|i| (i, i)).collect();
    relation.extend(p.le.iter().map(|&[a, b]| (a, b)));
    let report = validate(&p.elements, &relation);
    let text = match &report {
        profinite::poset::ValidationReport::Ok => "ok".to_string(),
        profinite::poset::ValidationReport::Violated(v) => format!("violated: {v}"),
    };
    let failed = !report.is_ok();
    Ok(Report::new(text, to_json(&report)).failed_if(failed))
}

fn cmd_construct(kind: Construction, operands: &[String], seq: &UniversalSequence) -> CliResult<Report> {
    let size = || -> CliResult<usize> {
        match operands {
            [n] => n.parse().map_err(|_| CliError::Usage(format!("expected a size, got {n:?}"))),
            _ => Err(CliError::Usage("expected one size operand".into())),
        }
    };
    let pair = || -> CliResult<(FinitePoset, FinitePoset)> {
        match operands {
            [a, b] => Ok((load_poset(Path::new(a), seq)?, load_poset(Path::new(b), seq)?)),
            _ => Err(CliError::Usage("expected two poset files".into())),
        }
    };
    let p = match kind {
        Construction::Point => FinitePoset::point(),
        Construction::Chain => FinitePoset::chain(size()?)?,
        Construction::Antichain => FinitePoset::antichain(size()?)?,
        Construction::Sum => {
            let (a, b) = pair()?;
            FinitePoset::linear_sum(&a, &b)
        }
        Construction::Union => {
            let (a, b) = pair()?;
            FinitePoset::disjoint_union(&a, &b)
        }
    };
    Ok(poset_report(&p))
}

fn cmd_birkhoff(file: &Path, lattice: bool, seq: &UniversalSequence) -> CliResult<Report> {
    let l = load_lattice(file, lattice, seq)?;
    if let Err(e) = l.check_distributive() {
        return Ok(Report::new(format!("rejected: {e}"), json!({"distributive": false, "reason": e.to_string()})).failed_if(true));
    }
    let b = birkhoff_eta(&l)?;
    let iso = b.is_isomorphism(&l);
    let j = l.carrier().restrict(&b.irreducibles)?;
    let names: Vec<&str> = b.irreducibles.iter().map(|&x| l.carrier().label(x)).collect();
    let mut json = json!({
        "distributive": true,
        "join_irreducibles": names,
        "eta_isomorphism": iso,
    });
    let mut text = format!("join-irreducibles: {}\neta is an isomorphism: {iso}", names.join(" "));
    let mut ok = iso;
    if !lattice {
        let p = load_poset(file, seq)?;
        let recovers = is_isomorphic(&j, &p)?;
        ok &= recovers;
        json["recovers_poset"] = json!(recovers);
        let _ = write!(text, "\nJ(O(P)) isomorphic to P: {recovers}");
    }
    Ok(Report::new(text, json).failed_if(!ok))
}

// ---- input

pub fn read_text(path: &Path) -> CliResult<String> {
    let name = path.display().to_string();
    if name == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|source| CliError::Io { path: name, source })?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: name, source })
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = read_text(path)?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse {
        path: path.display().to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn load_poset(path: &Path, seq: &UniversalSequence) -> CliResult<FinitePoset> {
    let spec: PosetSpec = read_json(path)?;
    Ok((*spec.resolve(seq)?).clone())
}

fn load_lattice(path: &Path, as_lattice: bool, seq: &UniversalSequence) -> CliResult<FiniteLattice> {
    let p = Arc::new(load_poset(path, seq)?);
    Ok(if as_lattice { FiniteLattice::from_poset(p)? } else { FiniteLattice::of_ideals(p)? })
}

fn load_map(path: &Path, seq: &UniversalSequence) -> CliResult<PosetMap> {
    let m: MapJson = read_json(path)?;
    Ok(m.to_map(seq)?)
}

fn load_system(path: &Path, seq: &UniversalSequence) -> CliResult<InverseSystem> {
    let s: SystemJson = read_json(path)?;
    Ok(s.to_system(seq)?)
}

fn load_ideal_thread(path: &Path, cfg: &RunConfig) -> CliResult<(IdealSystem, IdealThread)> {
    let j: IdealThreadJson = read_json(path)?;
    let seq = UniversalSequence::new(cfg.depth.max(j.levels.len()))?;
    let sys = IdealSystem::new(InverseSystem::universal(&seq, j.levels.len().max(1))?);
    let t = j.to_thread(&sys)?;
    Ok((sys, t))
}

fn thread_pair(a: &Path, b: &Path, cfg: &RunConfig) -> CliResult<(IdealSystem, IdealThread, IdealThread)> {
    let (sys, a) = load_ideal_thread(a, cfg)?;
    let j: IdealThreadJson = read_json(b)?;
    let b = j.to_thread(&sys)?;
    Ok((sys, a, b))
}

fn element(p: &FinitePoset, token: &str) -> CliResult<usize> {
    if let Some(i) = p.index_of(token) {
        return Ok(i);
    }
    match token.parse::<usize>() {
        Ok(i) if i < p.len() => Ok(i),
        _ => Err(CliError::Input(format!("{token:?} is neither a label nor an index"))),
    }
}

fn members_of(p: &FinitePoset, tokens: &[String]) -> CliResult<FixedBitSet> {
    let mut bits = p.empty_set();
    for t in tokens.iter().flat_map(|t| t.split(',')).filter(|t| !t.is_empty()) {
        bits.insert(element(p, t)?);
    }
    Ok(bits)
}

fn thread(sys: &InverseSystem, text: &str) -> CliResult<Thread> {
    let entries = text
        .split(',')
        .enumerate()
        .map(|(k, t)| {
            if k >= sys.depth() {
                return Err(CliError::Input(format!("thread {text:?} is longer than the system")));
            }
            element(sys.level(k), t)
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(Thread::new(sys, entries)?)
}

fn digits_of(word: &str) -> CliResult<Vec<u8>> {
    word.chars()
        .map(|c| match c {
            '0'..='3' => Ok(c as u8 - b'0'),
            _ => Err(CliError::Input(format!("{word:?} is not a word over 0..3"))),
        })
        .collect()
}

// ---- output

fn to_json(v: &impl Serialize) -> Value {
    serde_json::to_value(v).expect("values serialize")
}

fn labels<'a>(p: &'a FinitePoset, set: &FixedBitSet) -> Vec<&'a str> {
    set.ones().map(|x| p.label(x)).collect()
}

fn label_set_report(p: &FinitePoset, set: &FixedBitSet) -> Report {
    let l = labels(p, set);
    Report::new(format!("{{{}}}", l.join(",")), json!(l))
}

fn poset_report(p: &FinitePoset) -> Report {
    let pairs = p.strict_pairs().map(|(a, b)| format!("{} < {}", p.label(a), p.label(b))).collect::<Vec<_>>();
    let text = format!("{} elements: {}\n{}", p.len(), p.labels().join(" "), pairs.join("\n"));
    let mut r = Report::new(text, to_json(&PosetJson::from_poset(p)));
    r.dot = Some(p.to_dot());
    r
}

fn map_report(title: String, f: &PosetMap) -> Report {
    let text = format!("{title}\n{:?}", f.assignment());
    Report::new(text, to_json(&MapJson::from_map(f)))
}

fn extension_report(m: usize, g: &PosetMap, ok: bool) -> Report {
    let text = format!("m = {m}\n{:?}\ncommutes: {ok}", g.assignment());
    Report::new(text, json!({"m": m, "assignment": g.assignment(), "commutes": ok})).failed_if(!ok)
}

fn order_report(o: Option<std::cmp::Ordering>) -> Report {
    let s = match o {
        Some(std::cmp::Ordering::Less) => "<",
        Some(std::cmp::Ordering::Equal) => "=",
        Some(std::cmp::Ordering::Greater) => ">",
        None => "incomparable",
    };
    Report::new(s, json!(s))
}

fn ideal_thread_report(t: &IdealThread) -> Report {
    let j = IdealThreadJson::from_thread(t);
    Report::new(format!("{:?}", j.levels), to_json(&j))
}

fn ternary_report(f: &TernaryJson) -> Report {
    let text = f.values.iter().map(|(c, v)| format!("{c}: {v}")).collect::<Vec<_>>();
    let text = if text.is_empty() { "0".to_string() } else { text.join("\n") };
    Report::new(text, to_json(f))
}
