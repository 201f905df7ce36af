//! Command-line front end.
//!
//! Exit codes: 0 when every check passes, 1 for a verified violation, 2 for
//! input errors, 3 when the simplex budget stops a construction.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use crate::cache::{SymCache, CACHE_DIR_ENV};
use crate::error::{Error, Result};
use crate::homology::Homology;
use crate::simplicial::{load_complex_file, Budget, SimplicialSet, DEFAULT_SIMPLEX_BUDGET};
use crate::verify::{self, CsvReport, Direct, SymSource};
use crate::zeta::{self, RationalZeta};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "symstab", version, about = "Symmetric powers, stabilization checks and zeta identities")]
pub struct RunConfig {
    /// Cap on nondegenerate simplices in any constructed set.
    #[arg(long, global = true, default_value_t = DEFAULT_SIMPLEX_BUDGET as u64, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
    /// Directory caching symmetric powers.
    #[arg(long, global = true, env = CACHE_DIR_ENV)]
    pub cache_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build Sym^n X and print its simplex counts.
    Sym {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        max_dim: Option<usize>,
    },
    /// Homology groups of X, or of Sym^n X with --n.
    Homology {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        max_dim: Option<usize>,
    },
    /// Stabilization range of H_k(α_n).
    Stability {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n_max: u64,
        /// Defaults to n-max.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        k_max: Option<u64>,
    },
    /// Connectivity of Sym^n S^k / Sym^(n-1) S^k.
    Lemma24 {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
    },
    /// H_1(Sym^n X) against H_1(X).
    H1ab {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
        n_max: u64,
    },
    /// Euler characteristics of Sym^n X against (1 - t)^(-χ).
    Eulergen {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long, default_value_t = 3)]
        n_max: usize,
    },
    /// Zeta-function identities.
    #[command(subcommand)]
    Zeta(ZetaCommand),
    /// gcd of binom(n, i) for 1 <= i <= n-1.
    GcdBinom {
        n: u64,
    },
    /// val_p(p^k!) against (p^k - 1)/(p - 1).
    Valp {
        p: u64,
        k: u32,
    },
}

#[derive(Debug, Args)]
pub struct ZetaInput {
    /// Zeta document (JSON).
    #[arg(long, conflicts_with_all = ["num", "den"])]
    pub file: Option<PathBuf>,
    /// Numerator coefficients, ascending, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    pub num: Option<String>,
    /// Denominator coefficients, ascending, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    pub den: Option<String>,
    #[arg(long)]
    pub q: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum ZetaCommand {
    /// Coefficients c_0..c_(terms-1) of ζ.
    Expand {
        #[command(flatten)]
        input: ZetaInput,
        #[arg(long, default_value_t = 8)]
        terms: usize,
    },
    /// Symmetric-power counts from point counts N_1, N_2, ...
    FromCounts {
        #[arg(long, allow_hyphen_values = true)]
        counts: String,
        #[arg(long)]
        q: Option<u64>,
        /// Defaults to one more than the number of counts.
        #[arg(long)]
        terms: Option<usize>,
    },
    /// Point counts from symmetric-power counts c_0, c_1, ...
    ToCounts {
        #[arg(long, allow_hyphen_values = true)]
        sym_counts: String,
        #[arg(long)]
        q: Option<u64>,
    },
    /// (1 - t)ζ in lowest terms, with its coefficients checked.
    Diff {
        #[command(flatten)]
        input: ZetaInput,
        #[arg(long, default_value_t = 8)]
        terms: usize,
    },
    /// Multiplicity of (1 - t) in the denominator.
    Connected {
        #[command(flatten)]
        input: ZetaInput,
    },
    /// Certified bound |c_n - c_(n-1)| <= C β^n.
    Bound {
        #[command(flatten)]
        input: ZetaInput,
        #[arg(long, default_value_t = 10)]
        terms: usize,
    },
}

/// Parses `argv` (program name first), runs, and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(rendered.as_bytes()) } else { out.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match execute(&config, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::Invariant(_) => EXIT_VIOLATION,
        _ => EXIT_INPUT,
    }
}

fn verdict(pass: bool, complete: bool) -> i32 {
    match (pass, complete) {
        (false, _) => EXIT_VIOLATION,
        (true, false) => EXIT_BUDGET,
        (true, true) => EXIT_PASS,
    }
}

fn budget(config: &RunConfig, max_dim: Option<usize>) -> Budget {
    Budget { max_simplices: usize::try_from(config.budget).unwrap_or(usize::MAX), max_dim }
}

fn source(config: &RunConfig) -> Result<Box<dyn SymSource>> {
    Ok(match &config.cache_dir {
        Some(dir) => Box::new(SymCache::new(dir)?),
        None => Box::new(Direct),
    })
}

fn load(path: &Path) -> Result<SimplicialSet> {
    load_complex_file(path)
}

fn emit_csv<R: CsvReport>(report: &R, out: &mut dyn Write) -> Result<()> {
    report.write_csv(out)
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn parse_list(text: &str, flag: &str) -> Result<Vec<i64>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<i64>()
                .map_err(|e| Error::InvalidInput(format!("--{flag}: `{}` is not an integer ({e})", s.trim())))
        })
        .collect()
}

fn parse_big_list(text: &str, flag: &str) -> Result<Vec<BigInt>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<BigInt>()
                .map_err(|e| Error::InvalidInput(format!("--{flag}: `{}` is not an integer ({e})", s.trim())))
        })
        .collect()
}

fn zeta_input(input: &ZetaInput) -> Result<(RationalZeta, Option<zeta::EigenvalueData>)> {
    if let Some(path) = &input.file {
        let doc = zeta::load_zeta_file(path)?;
        let name = path.display().to_string();
        let z = doc.zeta().map_err(|e| Error::malformed(&name, e.to_string()))?;
        let eig = doc.eigenvalue_data().map_err(|e| Error::malformed(&name, e.to_string()))?;
        let z = match input.q {
            Some(q) => RationalZeta::new(Some(q), z.numerator().to_vec(), z.denominator().to_vec())?,
            None => z,
        };
        return Ok((z, eig));
    }
    let (Some(num), Some(den)) = (&input.num, &input.den) else {
        return Err(Error::InvalidInput("give --file, or both --num and --den".into()));
    };
    let z = RationalZeta::from_i64(input.q, &parse_list(num, "num")?, &parse_list(den, "den")?)?;
    Ok((z, None))
}

fn execute(config: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    match &config.command {
        Command::Sym { complex, n, max_dim } => {
            let x = load(complex)?;
            let s = source(config)?.sym_power(&x, *n, budget(config, *max_dim))?;
            s.check_identities()?;
            match config.format {
                Format::Csv => {
                    let rows: Vec<Vec<String>> = s
                        .counts()
                        .iter()
                        .enumerate()
                        .map(|(d, c)| vec![s.name().to_string(), d.to_string(), c.to_string()])
                        .collect();
                    verify::write_records(out, &["space", "dimension", "count"], &rows)?;
                }
                Format::Text => {
                    writeln!(out, "{}: counts {} total {}", s.name(), join(&s.counts()), s.total())?;
                    if let Some(top) = s.skeleton() {
                        writeln!(out, "skeleton truncated at dimension {top}")?;
                    }
                }
            }
            Ok(EXIT_PASS)
        }
        Command::Homology { complex, n, max_dim } => {
            let x = load(complex)?;
            let s = match n {
                Some(n) => source(config)?.sym_power(&x, *n, budget(config, *max_dim))?,
                None => match max_dim {
                    Some(d) => x.truncate(*d),
                    None => x,
                },
            };
            let h = Homology::of_set(&s)?;
            let groups = h.groups();
            match config.format {
                Format::Csv => {
                    let rows: Vec<Vec<String>> = groups
                        .iter()
                        .map(|g| vec![s.name().to_string(), g.degree.to_string(), g.betti.to_string(), g.torsion_string()])
                        .collect();
                    verify::write_records(out, &["space", "degree", "betti", "torsion"], &rows)?;
                }
                Format::Text => {
                    for g in &groups {
                        writeln!(out, "H_{}({}) = {g}", g.degree, s.name())?;
                    }
                }
            }
            Ok(EXIT_PASS)
        }
        Command::Stability { complex, n_max, k_max } => {
            let x = load(complex)?;
            let (n_max, k_max) = (*n_max as usize, k_max.unwrap_or(*n_max) as usize);
            let r = verify::check_stability(&x, n_max, k_max, budget(config, None), source(config)?.as_mut())?;
            match config.format {
                Format::Csv => emit_csv(&r, out)?,
                Format::Text => {
                    for v in &r.verdicts {
                        writeln!(
                            out,
                            "H_{}(α_{}): {} -> {}  iso={} surj={}  expected {:?}: {}",
                            v.k,
                            v.n,
                            v.map.source,
                            v.map.target,
                            v.map.is_isomorphism,
                            v.map.is_surjective,
                            v.expected,
                            if v.pass { "pass" } else { "FAIL" }
                        )?;
                    }
                }
            }
            if let Some(n) = r.budget_stop {
                writeln!(out, "# budget exceeded building Sym^{} X; completed through n = {}", n + 1, r.completed_n)?;
            }
            Ok(verdict(r.pass(), r.complete()))
        }
        Command::Lemma24 { n, k } => {
            let r = verify::check_lemma24(*n as usize, *k as usize, budget(config, None), source(config)?.as_mut())?;
            match config.format {
                Format::Csv => emit_csv(&r, out)?,
                Format::Text => {
                    for g in &r.reduced {
                        writeln!(out, "reduced H_{} = {g}", g.degree)?;
                    }
                    writeln!(out, "{}", if r.pass { "pass" } else { "FAIL" })?;
                }
            }
            Ok(verdict(r.pass, true))
        }
        Command::H1ab { complex, n_max } => {
            let x = load(complex)?;
            let r =
                verify::check_h1_abelianization(&x, *n_max as usize, budget(config, None), source(config)?.as_mut())?;
            match config.format {
                Format::Csv => emit_csv(&r, out)?,
                Format::Text => {
                    writeln!(out, "H_1({}) = {}", r.space, r.h1_x)?;
                    for row in &r.rows {
                        writeln!(out, "H_1(Sym^{}) = {}  {}", row.n, row.h1, if row.pass { "pass" } else { "FAIL" })?;
                    }
                }
            }
            if let Some(n) = r.budget_stop {
                writeln!(out, "# budget exceeded building Sym^{n} X")?;
            }
            Ok(verdict(r.pass(), r.complete()))
        }
        Command::Eulergen { complex, n_max } => {
            let x = load(complex)?;
            let r = verify::euler_generating_check(&x, *n_max, budget(config, None), source(config)?.as_mut())?;
            match config.format {
                Format::Csv => emit_csv(&r, out)?,
                Format::Text => {
                    writeln!(out, "chi = {}", r.chi)?;
                    writeln!(out, "chi(Sym^n): {}", join(&r.sym_chi))?;
                    writeln!(out, "(1-t)^(-chi): {}", join(&r.expected))?;
                }
            }
            if let Some(n) = r.budget_stop {
                writeln!(out, "# budget exceeded building Sym^{n} X")?;
            }
            Ok(verdict(r.pass(), r.complete()))
        }
        Command::Zeta(z) => zeta_command(z, config.format, out),
        Command::GcdBinom { n } => {
            let r = zeta::gcd_binomials(*n)?;
            match config.format {
                Format::Csv => writeln!(out, "{}", r.gcd)?,
                Format::Text => writeln!(
                    out,
                    "gcd binom({n}, i), 1 <= i <= {}: {}  (prime power: {})",
                    n - 1,
                    r.gcd,
                    r.prime_power.map_or("no".to_string(), |(p, k)| format!("{p}^{k}"))
                )?,
            }
            Ok(verdict(r.dichotomy_holds, true))
        }
        Command::Valp { p, k } => {
            let r = zeta::valp_prime_power_factorial(*p, *k)?;
            match config.format {
                Format::Csv => writeln!(out, "{}", r.valuation)?,
                Format::Text => writeln!(
                    out,
                    "val_{p}({p}^{k}!) = {} ; (p^k - 1)/(p - 1) = {} ; cofactor prime to p: {}",
                    r.valuation,
                    r.closed_form,
                    r.cofactor_coprime.map_or("n/a".to_string(), |b| b.to_string())
                )?,
            }
            Ok(verdict(r.holds, true))
        }
    }
}

fn zeta_command(cmd: &ZetaCommand, format: Format, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        ZetaCommand::Expand { input, terms } => {
            if *terms == 0 {
                return Err(Error::InvalidInput("--terms must be at least 1".into()));
            }
            let (z, eig) = zeta_input(input)?;
            let s = zeta::expand_zeta(&z, terms - 1)?;
            writeln!(out, "{s}")?;
            if let Some(e) = eig {
                // trace-formula counts must reproduce the same expansion
                let counts = zeta::lefschetz_counts(&e, z.q, terms - 1)?;
                let c = zeta::sym_counts_from_counts(&counts, terms - 1)?;
                let agree = s.integer_coeffs().as_deref() == Some(&c[..]) && e.zeta(z.q)? == z;
                if format == Format::Text {
                    writeln!(out, "eigenvalue data: N = {}; agrees: {agree}", join(counts.counts()))?;
                }
                if !agree {
                    return Ok(EXIT_VIOLATION);
                }
            }
            Ok(EXIT_PASS)
        }
        ZetaCommand::FromCounts { counts, q, terms } => {
            let p = zeta::PointCounts::new(*q, parse_big_list(counts, "counts")?)?;
            let n = terms.map_or(p.len(), |t| t.saturating_sub(1));
            writeln!(out, "{}", join(&zeta::sym_counts_from_counts(&p, n)?))?;
            Ok(EXIT_PASS)
        }
        ZetaCommand::ToCounts { sym_counts, q } => {
            let p = zeta::counts_from_sym_counts(&parse_big_list(sym_counts, "sym-counts")?, *q)?;
            writeln!(out, "{}", join(p.counts()))?;
            Ok(EXIT_PASS)
        }
        ZetaCommand::Diff { input, terms } => {
            let (z, _) = zeta_input(input)?;
            let n = terms.saturating_sub(1);
            let f = zeta::finite_difference_series(&z, n)?;
            match format {
                Format::Csv => {
                    let c = zeta::expand_zeta(&z, n)?;
                    let d = zeta::expand_zeta(&f, n)?;
                    let rows: Vec<Vec<String>> =
                        (0..=n).map(|i| vec![i.to_string(), c.coeff(i).to_string(), d.coeff(i).to_string()]).collect();
                    verify::write_records(out, &["n", "c_n", "delta_c_n"], &rows)?;
                }
                Format::Text => {
                    writeln!(out, "numerator: {}", join(f.numerator()))?;
                    writeln!(out, "denominator: {}", join(f.denominator()))?;
                }
            }
            Ok(EXIT_PASS)
        }
        ZetaCommand::Connected { input } => {
            let (z, _) = zeta_input(input)?;
            let c = zeta::connectedness_check(&z);
            match format {
                Format::Csv => {
                    verify::write_records(out, &["multiplicity", "connected"], &[vec![
                        c.multiplicity.to_string(),
                        c.connected.to_string(),
                    ]])?;
                }
                Format::Text => writeln!(out, "multiplicity of (1 - t): {}; connected: {}", c.multiplicity, c.connected)?,
            }
            Ok(EXIT_PASS)
        }
        ZetaCommand::Bound { input, terms } => {
            let (z, _) = zeta_input(input)?;
            let b = zeta::second_pole_bound(&z, *terms)?;
            match format {
                Format::Csv => {
                    let rows: Vec<Vec<String>> = b
                        .rows
                        .iter()
                        .map(|r| vec![r.n.to_string(), r.c_n.to_string(), r.delta.to_string(), r.bound.to_string()])
                        .collect();
                    verify::write_records(out, &["n", "c_n", "delta_c_n", "bound_C_beta_n"], &rows)?;
                }
                Format::Text => {
                    if b.beta_is_exact() {
                        writeln!(out, "beta = {}", b.beta_upper)?;
                    } else {
                        writeln!(out, "beta in [{}, {}]", b.beta_lower, b.beta_upper)?;
                    }
                    writeln!(out, "C = {}", b.constant)?;
                    for r in &b.rows {
                        writeln!(out, "n={} |delta|={} bound={} {}", r.n, r.delta, r.bound, if r.holds { "ok" } else { "FAIL" })?;
                    }
                }
            }
            Ok(verdict(b.holds, true))
        }
    }
}
