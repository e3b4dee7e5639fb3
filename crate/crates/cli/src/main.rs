use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand};
use num_rational::BigRational;
use toric_mirror::fan::classify_semi_fano;
use toric_mirror::jacobian::{psi_divisors, verify_surface};
use toric_mirror::potential::{bulk_superpotential, hori_vafa, superpotential};
use toric_mirror::quantum::quantum_sr_relations;
use toric_mirror::surface_file::parse_surface;
use toric_mirror::{bundled, par, Execution, Surface};

/// Mirror superpotentials and quantum cohomology of semi-Fano toric surfaces.
///
/// Exit status: 0 on success, 1 when a verification fails, 2 on bad input.
#[derive(Parser)]
#[command(name = "toric-mirror", version)]
struct Cli {
    /// Run everything on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rays, self-intersections, semi-Fano verdict and (-2)-chains.
    Check { file: PathBuf },
    /// The superpotential W in canonical form.
    Superpotential {
        file: PathBuf,
        /// Bulk divisor coefficients m1,...,md (integers or fractions).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        bulk_divisor: Option<Vec<String>>,
        /// Coefficient of the unit class in the bulk deformation.
        #[arg(long, allow_hyphen_values = true)]
        bulk_constant: Option<String>,
        /// Coefficient of the point class (only 0 is supported).
        #[arg(long, allow_hyphen_values = true)]
        bulk_point: Option<String>,
        /// Only the leading Hori-Vafa part W0.
        #[arg(long, conflicts_with_all = ["bulk_divisor", "bulk_constant", "bulk_point"])]
        hori_vafa: bool,
    },
    /// psi(D_i) for every toric divisor.
    Psi { file: PathBuf },
    /// Quantum products D_i * D_j for every primitive pair.
    Qh { file: PathBuf },
    /// Check that psi is a ring isomorphism QH* -> Jac(W).
    Verify {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Kähler parameter sample q1,...,qk (fractions in (0, 1)).
        #[arg(long, value_delimiter = ',')]
        q: Option<Vec<String>>,
    },
    /// Semi-Fano toric surfaces up to isomorphism.
    Classify {
        #[arg(long, default_value_t = 9)]
        max_rays: usize,
    },
    /// Superpotentials of the bundled X1..X11, one `NAME<TAB>W` line each.
    Table,
}

/// An error that maps to exit status 2.
struct InputError(anyhow::Error);

impl<E: Into<anyhow::Error>> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.into())
    }
}

fn load(path: &Path) -> Result<Surface> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_surface(&text).map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn rational(s: &str) -> Result<BigRational> {
    s.trim()
        .parse::<BigRational>()
        .map_err(|_| anyhow!("not a rational number: {s:?}"))
}

fn rationals(v: &[String]) -> Result<Vec<BigRational>> {
    v.iter().map(|s| rational(s)).collect()
}

fn check(s: &Surface) -> Result<String> {
    let fan = s.fan();
    let mut out = String::new();
    writeln!(out, "surface {}", s.name)?;
    writeln!(out, "rays {}", fan.len())?;
    for (i, (v, d2)) in fan.rays().iter().zip(fan.self_intersections()).enumerate() {
        writeln!(
            out,
            "D{} ray ({}, {}) self-intersection {d2}",
            i + 1,
            v.0,
            v.1
        )?;
    }
    writeln!(
        out,
        "semi-fano {}",
        if fan.is_semi_fano() { "yes" } else { "no" }
    )?;
    writeln!(out, "fano {}", if fan.is_fano() { "yes" } else { "no" })?;
    match fan.minus_two_chains() {
        Ok(chains) if chains.is_empty() => writeln!(out, "chains none")?,
        Ok(chains) => {
            for c in chains {
                let labels: Vec<String> = c.indices.iter().map(|k| format!("D{}", k + 1)).collect();
                writeln!(out, "chain {}", labels.join(" "))?;
            }
        }
        Err(e) => writeln!(out, "chains {e}")?,
    }
    Ok(out)
}

fn run(cli: Cli) -> std::result::Result<u8, InputError> {
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    match cli.command {
        Command::Check { file } => print!("{}", check(&load(&file)?)?),
        Command::Superpotential {
            file,
            bulk_divisor,
            bulk_constant,
            bulk_point,
            hori_vafa: w0,
        } => {
            let s = load(&file)?;
            if w0 {
                println!("{}", hori_vafa(&s.spec).canonical_string());
            } else if bulk_divisor.is_some() || bulk_constant.is_some() || bulk_point.is_some() {
                let d = s.fan().len();
                let divisor = match bulk_divisor {
                    Some(v) => rationals(&v)?,
                    None => vec![rational("0")?; d],
                };
                let a = rational(bulk_constant.as_deref().unwrap_or("0"))?;
                let p = rational(bulk_point.as_deref().unwrap_or("0"))?;
                println!(
                    "{}",
                    bulk_superpotential(&s.spec, &a, &divisor, &p)?.canonical_string()
                );
            } else {
                println!("{}", superpotential(&s.spec)?.w.canonical_string());
            }
        }
        Command::Psi { file } => {
            let s = load(&file)?;
            for (k, p) in psi_divisors(&s.spec)?.iter().enumerate() {
                println!("D{}\t{}", k + 1, p.canonical_string());
            }
        }
        Command::Qh { file } => {
            let s = load(&file)?;
            if s.fan().is_p2() {
                let msg = "P2 has no primitive pairs; its quantum ring Q[H]/(H^3 - q1) is not computed here";
                return Err(anyhow!("{}: {msg}", s.name).into());
            }
            for ((i, j), p) in quantum_sr_relations(&s.spec, exec)? {
                println!("D{}*D{}\t{}", i + 1, j + 1, p.render());
            }
        }
        Command::Verify { files, q } => {
            let q = q.as_deref().map(rationals).transpose()?;
            let surfaces = files.iter().map(|f| load(f)).collect::<Result<Vec<_>>>()?;
            // one file per task; each report is printed whole
            let reports = par::map(exec, &surfaces, |s| {
                verify_surface(s, q.as_deref(), Execution::Sequential)
            });
            let mut all_pass = true;
            for (s, r) in surfaces.iter().zip(reports) {
                let r = r.map_err(|e| anyhow!("{}: {e}", s.name))?;
                all_pass &= r.pass;
                println!("{r}");
            }
            return Ok(if all_pass { 0 } else { 1 });
        }
        Command::Classify { max_rays } => {
            if max_rays < 3 {
                return Err(anyhow!("--max-rays must be at least 3").into());
            }
            let classes = classify_semi_fano(max_rays, exec);
            let known = bundled::all();
            for f in &classes {
                let rays: Vec<String> = f
                    .rays()
                    .iter()
                    .map(|v| format!("({},{})", v.0, v.1))
                    .collect();
                let name = known
                    .iter()
                    .find(|s| s.fan().is_isomorphic(f))
                    .map_or("-", |s| s.name.as_str());
                let tag = if f.is_fano() { "fano" } else { "non-fano" };
                println!("{}\t{tag}\t{name}\t{}", f.len(), rays.join(" "));
            }
            let fano = classes.iter().filter(|f| f.is_fano()).count();
            println!("classes {} fano {fano}", classes.len());
        }
        Command::Table => {
            for name in bundled::NON_FANO {
                let s = bundled::surface(name).expect("bundled");
                println!("{name}\t{}", superpotential(&s.spec)?.w.canonical_string());
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(InputError(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
