//! Command-line front end. `run` returns the process exit code: 0 on
//! success, 1 when a check fails, 2 on usage or input errors.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::alexander::{alexander_poly, closed_scalar, compose_diagram, normalize, oracle_state_sum, PipelineSpec};
use crate::crosscheck::{run_suite, Suite};
use crate::diagram::{parse_diagram, Event, Sign, TangleDiagram};
use crate::gradedring::QExp;
use crate::oszdecat::{enumerate_crossing_states, Grading};
use crate::quiverlab::{family_counts, omega_homology, ranks_stable};
use crate::statespace::{BasisKind, Framework, Side};

#[derive(Parser, Debug)]
#[command(name = "tanglecat", version, about = "Decategorified tangle invariants")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FwArg {
    Rt,
    Viro,
    Osz,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BasisArg {
    Native,
    Dual,
    ModifiedRight,
    ModifiedLeft,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SideArg {
    Right,
    Left,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GradingArg {
    Single,
    Multi,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SuiteArg {
    Crossings,
    Extrema,
    Relations,
    All,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Compose a diagram and print its matrix as JSON.
    Eval {
        #[arg(long, value_enum, default_value = "osz")]
        framework: FwArg,
        /// Defaults to the modified basis on the truncation side; ignored by osz.
        #[arg(long, value_enum)]
        basis: Option<BasisArg>,
        #[arg(long, value_enum, default_value = "right")]
        trunc: SideArg,
        #[arg(long, value_enum, default_value = "single")]
        grading: GradingArg,
        file: PathBuf,
    },
    /// Exhaustive elementary checks.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        #[arg(long, default_value_t = 4)]
        max_n: usize,
    },
    /// Partial Kauffman states of every crossing in a diagram.
    States {
        #[arg(long, value_enum, default_value = "right")]
        trunc: SideArg,
        file: PathBuf,
    },
    /// Alexander polynomial of a closed diagram.
    Alexander {
        /// Also evaluate the global state-sum oracle.
        #[arg(long)]
        oracle: bool,
        file: PathBuf,
    },
    /// Basis counts and homology of the quiver lab.
    Quiverlab {
        /// Window half-width in quarter-units of intrinsic degree.
        #[arg(long, default_value_t = 12)]
        cutoff: i64,
    },
}

enum Fail {
    Check(String),
    Usage(String),
}

fn usage<E: std::fmt::Display>(e: E) -> Fail {
    Fail::Usage(e.to_string())
}

fn side(s: SideArg) -> Side {
    match s {
        SideArg::Right => Side::Right,
        SideArg::Left => Side::Left,
    }
}

fn grading(g: GradingArg) -> Grading {
    match g {
        GradingArg::Single => Grading::Single,
        GradingArg::Multi => Grading::Multi,
    }
}

fn load(path: &PathBuf) -> Result<TangleDiagram, Fail> {
    let text = std::fs::read_to_string(path).map_err(|e| Fail::Usage(format!("{}: {e}", path.display())))?;
    parse_diagram(&text).map_err(|e| Fail::Usage(format!("{}: {e}", path.display())))
}

/// Parse `args` (program name first) and run, writing to `out` and `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let w: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(w, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.cmd, out) {
        Ok(()) => 0,
        Err(Fail::Check(m)) => {
            let _ = writeln!(err, "check failed: {m}");
            1
        }
        Err(Fail::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
    }
}

fn dispatch(cmd: Cmd, out: &mut dyn Write) -> Result<(), Fail> {
    match cmd {
        Cmd::Eval { framework, basis, trunc, grading: g, file } => {
            let d = load(&file)?;
            if d.has_terminal() && !d.is_closed() {
                return Err(Fail::Usage("the terminal minimum needs a diagram with no top boundary".into()));
            }
            let trunc = side(trunc);
            let fw = match framework {
                FwArg::Rt => Framework::Rt,
                FwArg::Viro => Framework::Viro,
                FwArg::Osz => Framework::Osz,
            };
            let basis = match (fw, basis) {
                (Framework::Osz, _) => BasisKind::Idempotent(trunc),
                (_, None) => BasisKind::Modified(trunc),
                (_, Some(BasisArg::Native)) => BasisKind::Native,
                (_, Some(BasisArg::Dual)) => BasisKind::Dual,
                (_, Some(BasisArg::ModifiedRight)) => BasisKind::Modified(Side::Right),
                (_, Some(BasisArg::ModifiedLeft)) => BasisKind::Modified(Side::Left),
            };
            let spec = PipelineSpec { framework: fw, basis, trunc, grading: grading(g) };
            let m = compose_diagram(&d, &spec).map_err(usage)?;
            let _ = writeln!(out, "{}", m.to_json());
            Ok(())
        }
        Cmd::Verify { suite, max_n } => {
            let suite = match suite {
                SuiteArg::Crossings => Suite::Crossings,
                SuiteArg::Extrema => Suite::Extrema,
                SuiteArg::Relations => Suite::Relations,
                SuiteArg::All => Suite::All,
            };
            if max_n > 8 {
                return Err(Fail::Usage("--max-n is limited to 8".into()));
            }
            let mut failed = 0;
            for (name, r) in run_suite(suite, max_n) {
                let _ = writeln!(out, "{name}: {r}");
                failed += r.failures.len();
            }
            if failed > 0 {
                return Err(Fail::Check(format!("{failed} checks failed")));
            }
            Ok(())
        }
        Cmd::States { trunc, file } => {
            let d = load(&file)?;
            for (k, e) in d.events.iter().enumerate() {
                let (i, sign) = match *e {
                    Event::PosCross(i) => (i, Sign::Pos),
                    Event::NegCross(i) => (i, Sign::Neg),
                    _ => continue,
                };
                let above = d.levels[k];
                let _ = writeln!(out, "# event {} {e} on {above}", k + 1);
                for s in enumerate_crossing_states(&above, i, sign, side(trunc)).map_err(usage)? {
                    let _ = writeln!(out, "{s}");
                }
            }
            Ok(())
        }
        Cmd::Alexander { oracle, file } => {
            let d = load(&file)?;
            if !d.is_closed() {
                return Err(Fail::Usage("alexander needs a closed diagram ending in `term`".into()));
            }
            let raw = closed_scalar(&d, &PipelineSpec::osz(Side::Right, Grading::Single)).map_err(usage)?;
            let delta = alexander_poly(&d).map_err(usage)?;
            let _ = writeln!(out, "raw: {}", raw.pretty_single());
            let _ = writeln!(out, "{}", delta.pretty_single());
            if oracle {
                let s = oracle_state_sum(&d).map_err(usage)?;
                let _ = writeln!(out, "oracle: {} ({} states)", s.value.pretty_single(), s.states);
                if normalize(&s.value).map_err(usage)? != delta {
                    return Err(Fail::Check("state sum disagrees with the pipeline".into()));
                }
            }
            Ok(())
        }
        Cmd::Quiverlab { cutoff } => {
            for (f, c) in family_counts(QExp(cutoff.max(0))) {
                let _ = writeln!(out, "{f}: {c}");
            }
            let h = omega_homology(QExp(cutoff)).map_err(usage)?;
            let _ = writeln!(out, "{h}");
            let stable = ranks_stable(QExp(cutoff), 2).map_err(usage)?;
            let _ = writeln!(out, "stable under +2: {stable}");
            if h.total() != 1 || !stable {
                return Err(Fail::Check("homology is not concentrated in one class".into()));
            }
            Ok(())
        }
    }
}
