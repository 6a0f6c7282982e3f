//! The `monocrystal` command line.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::cartan::{canonical_shift, fundamental_seed, make_shift, shift_for_pair, AffineType, CartanData, Shift};
use crate::crystal::{
    decompose_i0, export_graph, generate_component, generate_quotient, load_graph, CrystalError, CrystalGraph, Format,
    DEFAULT_BOUND,
};
use crate::embed::verify_strict;
use crate::monomial::{Admissibility, Monomial};
use crate::verify::{check_fixture, fixture_dir, fixture_names, load_fixture};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_BOUND: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "monocrystal", version, about = "Monomial crystals of level-zero fundamental weights")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Component of a seed, bounded or modulo a grade shift
    Generate(GraphArgs),
    /// Component modulo `tau_period` (the period is required)
    Quotient(GraphArgs),
    /// I_0-components of the generated graph
    Decompose(GraphArgs),
    /// Check fixtures from the corpus
    Verify {
        /// Fixture name, or `all`
        #[arg(long, default_value = "all")]
        fixture: String,
    },
    /// Re-export a JSON graph
    Export {
        /// JSON graph written by `generate`
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = OutFormat::Dot)]
        format: OutFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Strictness of the tensor embedding on a ball around the seed
    EmbedCheck {
        #[arg(long = "type")]
        ty: String,
        #[arg(long)]
        seed: String,
        #[arg(long, default_value_t = 5)]
        depth: usize,
    },
}

#[derive(Args, Debug, Clone)]
struct GraphArgs {
    #[arg(long = "type")]
    ty: String,
    /// Monomial text, or `fundamental:<l>` / `fundamental:<l>:<p>,<p0>`
    #[arg(long)]
    seed: String,
    /// `all`, `I0`, or a comma list of nodes
    #[arg(long, default_value = "all")]
    ops: String,
    #[arg(long)]
    period: Option<i32>,
    #[arg(long, default_value_t = DEFAULT_BOUND)]
    bound: usize,
    #[arg(long, value_enum, default_value_t = OutFormat::Json)]
    format: OutFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum OutFormat {
    Dot,
    Json,
}

impl From<OutFormat> for Format {
    fn from(f: OutFormat) -> Format {
        match f {
            OutFormat::Dot => Format::Dot,
            OutFormat::Json => Format::Json,
        }
    }
}

/// A validated configuration for graph commands.
#[derive(Clone, Debug)]
pub struct Config {
    pub cartan: CartanData,
    pub seed: Monomial,
    pub shift: Shift,
    pub ops: Vec<usize>,
    pub period: Option<i32>,
    pub bound: usize,
}

/// Parses `fundamental:<l>[:<p>,<p0>]` or a literal monomial, returning the
/// seed with a shift its grades follow.
pub fn parse_seed(c: &CartanData, text: &str) -> Result<(Monomial, Shift), String> {
    if let Some(rest) = text.trim().strip_prefix("fundamental:") {
        let (ell, pair) = match rest.split_once(':') {
            Some((a, b)) => (a, Some(b)),
            None => (rest, None),
        };
        let ell: usize = ell.trim().parse().map_err(|_| format!("bad node in seed {text:?}"))?;
        let shift = match pair {
            None => canonical_shift(c),
            Some(p) => {
                let (l, lp) = p.split_once(',').ok_or_else(|| format!("expected <p>,<p0> in {text:?}"))?;
                let l: i32 = l.trim().parse().map_err(|_| format!("bad grade in {text:?}"))?;
                let lp: i32 = lp.trim().parse().map_err(|_| format!("bad grade in {text:?}"))?;
                shift_for_pair(c, ell, l, lp).map_err(|e| e.to_string())?
            }
        };
        let seed = fundamental_seed(c, ell, &shift).map_err(|e| e.to_string())?;
        return Ok((seed, shift));
    }
    let seed: Monomial = text.parse().map_err(|e| format!("seed {text:?}: {e}"))?;
    if let Some(bad) = seed.max_node().filter(|&i| i > c.n()) {
        return Err(format!("node {bad} is not in {}", c.ty));
    }
    let shift = match seed.admissibility(&c.s) {
        Admissibility::Mixed => return Err(format!("seed {text:?} mixes both parity classes")),
        Admissibility::Uniform(p) if p != canonical_shift(c).parity(c) => {
            let phi: Vec<i32> = c.s.iter().map(|&x| 1 - x as i32).collect();
            make_shift(c, &phi).map_err(|e| e.to_string())?
        }
        _ => canonical_shift(c),
    };
    Ok((seed, shift))
}

/// `all`, `I0`, or a comma list.
pub fn parse_ops(c: &CartanData, text: &str) -> Result<Vec<usize>, String> {
    match text.trim() {
        "all" => Ok(c.all_nodes()),
        "I0" => Ok(c.i0()),
        list => {
            let mut ops = Vec::new();
            for part in list.split(',') {
                let i: usize = part.trim().parse().map_err(|_| format!("bad operator {part:?}"))?;
                if i > c.n() {
                    return Err(format!("node {i} is not in {}", c.ty));
                }
                if !ops.contains(&i) {
                    ops.push(i);
                }
            }
            ops.sort_unstable();
            Ok(ops)
        }
    }
}

fn cartan(ty: &str) -> Result<CartanData, String> {
    let t: AffineType = ty.parse().map_err(|e| format!("{e}"))?;
    CartanData::new(t).map_err(|e| e.to_string())
}

fn config(a: &GraphArgs) -> Result<Config, String> {
    let c = cartan(&a.ty)?;
    let (seed, shift) = parse_seed(&c, &a.seed)?;
    let ops = parse_ops(&c, &a.ops)?;
    if a.period.is_some() && ops.len() != c.n() + 1 {
        return Err("a quotient uses every operator; drop --ops or --period".into());
    }
    Ok(Config { cartan: c, seed, shift, ops, period: a.period, bound: a.bound })
}

/// Builds the graph; `Err` carries the partial graph when the bound is hit.
pub fn build(cfg: &Config) -> Result<CrystalGraph, CrystalError> {
    match cfg.period {
        Some(p) => generate_quotient(&cfg.cartan, &cfg.seed, p, cfg.bound),
        None => generate_component(&cfg.cartan, &cfg.seed, &cfg.ops, cfg.bound),
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            match stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.to_string()),
                _ => Ok(()),
            }
        }
    }
}

fn graph_or_partial(cfg: &Config) -> Result<(CrystalGraph, bool), (i32, String)> {
    match build(cfg) {
        Ok(g) => Ok((g, false)),
        Err(CrystalError::BoundExceeded { bound, mut partial }) => {
            partial.partial = true;
            eprintln!("node bound {bound} exceeded; output is partial");
            Ok((*partial, true))
        }
        Err(e) => Err((EXIT_USAGE, e.to_string())),
    }
}

fn cmd_generate(a: &GraphArgs) -> Result<i32, (i32, String)> {
    let cfg = config(a).map_err(|e| (EXIT_USAGE, e))?;
    let (g, partial) = graph_or_partial(&cfg)?;
    emit(&export_graph(&g, a.format.into()), a.out.as_ref()).map_err(|e| (EXIT_USAGE, e))?;
    Ok(if partial { EXIT_BOUND } else { EXIT_OK })
}

fn cmd_decompose(a: &GraphArgs) -> Result<i32, (i32, String)> {
    let cfg = config(a).map_err(|e| (EXIT_USAGE, e))?;
    let (g, partial) = graph_or_partial(&cfg)?;
    if partial {
        return Ok(EXIT_BOUND);
    }
    let reports = decompose_i0(&cfg.cartan, &g).map_err(|e| (EXIT_VERIFY, e.to_string()))?;
    let mut s = String::new();
    let _ = writeln!(s, "{} nodes, {} components", g.len(), reports.len());
    for r in &reports {
        let label: Vec<String> = r.label.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(s, "{}\t{}\t[{}]", r.size(), r.highest_monomial, label.join(","));
    }
    emit(&s, a.out.as_ref()).map_err(|e| (EXIT_USAGE, e))?;
    Ok(EXIT_OK)
}

fn cmd_verify(fixture: &str) -> Result<i32, (i32, String)> {
    let dir = fixture_dir();
    let names = if fixture == "all" {
        fixture_names(&dir).map_err(|e| (EXIT_USAGE, e.to_string()))?
    } else {
        vec![fixture.to_string()]
    };
    if names.is_empty() {
        return Err((EXIT_USAGE, format!("no fixtures in {}", dir.display())));
    }
    let mut ok = true;
    for name in names {
        let f = load_fixture(&dir, &name).map_err(|e| (EXIT_USAGE, e.to_string()))?;
        let report = check_fixture(&f);
        emit(&report.to_string(), None).map_err(|e| (EXIT_USAGE, e))?;
        ok &= report.passed();
    }
    Ok(if ok { EXIT_OK } else { EXIT_VERIFY })
}

fn cmd_export(input: &PathBuf, format: OutFormat, out: Option<&PathBuf>) -> Result<i32, (i32, String)> {
    let text = std::fs::read_to_string(input).map_err(|e| (EXIT_USAGE, format!("{}: {e}", input.display())))?;
    let g = load_graph(&text).map_err(|e| (EXIT_USAGE, e.to_string()))?;
    emit(&export_graph(&g, format.into()), out).map_err(|e| (EXIT_USAGE, e))?;
    Ok(EXIT_OK)
}

fn cmd_embed_check(ty: &str, seed: &str, depth: usize) -> Result<i32, (i32, String)> {
    let c = cartan(ty).map_err(|e| (EXIT_USAGE, e))?;
    let (seed, shift) = parse_seed(&c, seed).map_err(|e| (EXIT_USAGE, e))?;
    let report = verify_strict(&c, &seed, &shift, depth);
    println!("{ty} seed {seed} depth {depth}: {report}");
    Ok(if report.passed() { EXIT_OK } else { EXIT_VERIFY })
}

/// Runs the command line and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let result = match &cli.cmd {
        Cmd::Generate(a) => cmd_generate(a),
        Cmd::Quotient(a) => {
            if a.period.is_none() {
                Err((EXIT_USAGE, "quotient needs --period".to_string()))
            } else {
                cmd_generate(a)
            }
        }
        Cmd::Decompose(a) => cmd_decompose(a),
        Cmd::Verify { fixture } => cmd_verify(fixture),
        Cmd::Export { input, format, out } => cmd_export(input, *format, out.as_ref()),
        Cmd::EmbedCheck { ty, seed, depth } => cmd_embed_check(ty, seed, *depth),
    };
    match result {
        Ok(code) => code,
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(args: &[&str]) -> i32 {
        run(std::iter::once("monocrystal").chain(args.iter().copied()))
    }

    #[test]
    fn seeds_parse() {
        let c = CartanData::parse("D1~4").unwrap();
        let (m, _) = parse_seed(&c, "fundamental:1").unwrap();
        assert_eq!(m.u_total(1), 1);
        assert_eq!(m.u_total(0), -1);
        assert!(parse_seed(&c, "fundamental:9").is_err());
        assert!(parse_seed(&c, "7_0").is_err());
        assert!(parse_seed(&c, "1_0 2_0").is_err());
        let (_, shift) = parse_seed(&c, "1_1 0_1^-1").unwrap();
        assert_eq!((shift.phi[1] - 1).rem_euclid(2), 0);
    }

    #[test]
    fn ops_parse() {
        let c = CartanData::parse("C1~3").unwrap();
        assert_eq!(parse_ops(&c, "I0").unwrap(), vec![1, 2, 3]);
        assert_eq!(parse_ops(&c, "all").unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(parse_ops(&c, "2,0,2").unwrap(), vec![0, 2]);
        assert!(parse_ops(&c, "4").is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(code(&["generate", "--type", "D1~4", "--seed", "fundamental:1", "--ops", "I0", "--out", "/dev/null"]), 0);
        assert_eq!(code(&["generate", "--type", "D1~4", "--seed", "1_0 0_", "--out", "/dev/null"]), 1);
        assert_eq!(code(&["generate", "--type", "X1~4", "--seed", "1_0"]), 1);
        assert_eq!(code(&["quotient", "--type", "D1~4", "--seed", "fundamental:1"]), 1);
        assert_eq!(code(&["generate", "--type", "D1~4", "--seed", "fundamental:2", "--ops", "I0", "--bound", "5", "--out", "/dev/null"]), 2);
        assert_eq!(code(&["embed-check", "--type", "A1~3", "--seed", "fundamental:1", "--depth", "0"]), 0);
        assert_eq!(code(&["frobnicate"]), 1);
    }

    #[test]
    fn quotient_sizes() {
        let a = GraphArgs {
            ty: "G1~2".into(),
            seed: "2_0 0_2^-1".into(),
            ops: "all".into(),
            period: Some(4),
            bound: 1000,
            format: OutFormat::Json,
            out: None,
        };
        assert_eq!(build(&config(&a).unwrap()).unwrap().len(), 7);
        let b = GraphArgs { ty: "D1~4".into(), seed: "fundamental:1".into(), ops: "I0".into(), period: None, ..a };
        assert_eq!(build(&config(&b).unwrap()).unwrap().len(), 8);
    }
}
