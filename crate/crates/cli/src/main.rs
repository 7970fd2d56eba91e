use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use torusknot::artifact::{export_csv, export_svg, verify_curve_file, CurveFile, VerifyReport};
use torusknot::exactpoly::{format_rational, parse_rational, Poly, Rational};
use torusknot::knotforge::{synthesize, CnBasis, NodeSet, SynthOptions};
use torusknot::pade::pade;
use torusknot::stieltjes::PhiSeries;
use torusknot::Error;

#[derive(Parser)]
#[command(
    name = "torusknot",
    version,
    about = "Polynomial torus knots K(2,N) with exact certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize and certify a curve with N crossings.
    Gen(GenArgs),
    /// Re-verify a stored curve file.
    Verify { file: PathBuf },
    /// Print C_0..C_K in monomial and W form.
    CnTable {
        #[arg(long, default_value_t = 5)]
        max: usize,
    },
    /// Print φ_1..φ_K.
    Phi {
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
    /// Print the [K/L] Padé approximant of φ.
    Pade {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
    },
    /// Sample a stored curve as SVG (projection) or CSV.
    Export(ExportArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Odd number of crossings.
    #[arg(long)]
    n: usize,
    /// Starting ε of the halving loop, as p/q.
    #[arg(long, conflicts_with = "nodes")]
    epsilon: Option<String>,
    /// Explicit positive nodes δ_1 < ... < δ_n, comma separated; used without retry.
    #[arg(long, value_delimiter = ',')]
    nodes: Option<Vec<String>>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
}

#[derive(Args)]
#[command(group = ArgGroup::new("kind").required(true))]
struct ExportArgs {
    #[arg(long, group = "kind")]
    svg: bool,
    #[arg(long, group = "kind")]
    csv: bool,
    #[arg(long, default_value_t = 2000)]
    samples: usize,
    file: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// An error with its exit code: 1 for usage, parse and I/O, 2 for certificates.
struct Failure {
    code: u8,
    msg: String,
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        msg: msg.into(),
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidArgument(_) | Error::ParseRational(_) | Error::DomainError { .. } => 1,
            _ => 2,
        };
        Failure {
            code,
            msg: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn run(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Gen(a) => gen(a),
        Command::Verify { file } => {
            let curve = load(&file)?;
            let report = verify_curve_file(&curve)?;
            print!("{}", describe(&report));
            Ok(())
        }
        Command::CnTable { max } => {
            let basis = CnBasis::build(max)?;
            for k in 0..=max {
                println!("{}", cn_line(&basis, k));
            }
            Ok(())
        }
        Command::Phi { count } => {
            let s = PhiSeries::new();
            for c in s.coeffs(count).iter().skip(1) {
                println!("{}", format_rational(c));
            }
            Ok(())
        }
        Command::Pade { k, l } => {
            let s = PhiSeries::new();
            let a = pade(|i| s.coeff(i), k, l)?;
            println!("P = {}", coeff_list(&a.p, k + 1));
            println!("Q = {}", coeff_list(&a.q, l + 1));
            Ok(())
        }
        Command::Export(a) => {
            let curve = load(&a.file)?;
            let text = if a.svg {
                export_svg(&curve, a.samples)?
            } else {
                export_csv(&curve, a.samples)?
            };
            emit(a.out.as_deref(), &text)
        }
    }
}

fn gen(a: GenArgs) -> Result<(), Failure> {
    let Format::Json = a.format;
    if a.n % 2 == 0 {
        return Err(usage(format!("--n must be odd and positive, got {}", a.n)));
    }
    let epsilon = a.epsilon.as_deref().map(parse_rational).transpose()?;
    let nodes = match a.nodes {
        Some(v) => Some(NodeSet::try_from(v)?),
        None => None,
    };
    let s = synthesize(a.n, &SynthOptions { epsilon, nodes })?;
    let text = CurveFile::from_synthesis(a.n, &s).to_json();
    emit(a.out.as_deref(), &text)
}

fn load(path: &Path) -> Result<CurveFile, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    CurveFile::from_json(&text).map_err(|e| usage(format!("cannot parse {}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => {
            fs::write(p, text).map_err(|e| usage(format!("cannot write {}: {e}", p.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn describe(v: &VerifyReport) -> String {
    let mut s = String::new();
    let r = &v.report;
    let dz = v.degrees.2.map_or("-".to_string(), |d| d.to_string());
    s += &format!(
        "N = {}, degrees ({}, {}, {dz})\n",
        v.n, v.degrees.0, v.degrees.1
    );
    s += &format!(
        "crossings: {} certified by Sturm count\n",
        r.crossings.len()
    );
    for (i, c) in r.crossings.iter().enumerate() {
        let sign = if v.signs_checked {
            format!("{:+}", c.sign)
        } else {
            "?".into()
        };
        s += &format!(
            "  {:>2}  u = {:+.12}  s = {:+.12}  t = {:+.12}  sign {sign}\n",
            i + 1,
            torusknot::exactpoly::to_f64(&c.u_value),
            c.s,
            c.t
        );
    }
    s += &format!("ordering: ok, min gap {:.3e}\n", r.min_ordering_gap);
    s += &format!(
        "coincidence: ok, max error {:.3e}\n",
        r.max_coincidence_error
    );
    if v.signs_checked {
        s += &format!(
            "signs: alternate, min |z(t) - z(s)| {:.3e}\n",
            r.min_sign_margin
        );
    } else {
        s += "signs: no height function stored\n";
    }
    if v.exact_nodes {
        s += "planted nodes: exact checks passed\n";
    }
    s += "verified\n";
    s
}

fn coeff_list(p: &Poly, len: usize) -> String {
    let c: Vec<String> = (0..len).map(|k| format_rational(&p.coeff(k))).collect();
    format!("[{}]", c.join(", "))
}

fn power(var: &str, k: usize) -> String {
    match k {
        0 => "1".into(),
        1 => var.into(),
        k => format!("{var}^{k}"),
    }
}

/// Signed terms, highest key first, as `a + b - c`.
fn join_terms(terms: &[(Rational, String)]) -> String {
    let mut out = String::new();
    for (c, name) in terms {
        if c == &Rational::from_integer(0.into()) {
            continue;
        }
        let neg = *c < Rational::from_integer(0.into());
        let mag = format_rational(&if neg { -c.clone() } else { c.clone() });
        let body = match (mag.as_str(), name.as_str()) {
            (m, "1") => m.to_string(),
            ("1", n) => n.to_string(),
            (m, n) => format!("{m} {n}"),
        };
        if out.is_empty() {
            out = if neg { format!("-{body}") } else { body };
        } else {
            out += if neg { " - " } else { " + " };
            out += &body;
        }
    }
    out
}

fn cn_line(basis: &CnBasis, k: usize) -> String {
    let f = basis.cofactor(k);
    let order = basis.cn[k].degree().unwrap() - f.degree().unwrap();
    let mono = if f.degree() == Some(0) {
        power("t", order)
    } else {
        let terms: Vec<(Rational, String)> = (0..=f.degree().unwrap())
            .rev()
            .map(|j| (f.coeff(j), power("t", j)))
            .collect();
        format!("{} ({})", power("t", order), join_terms(&terms))
    };
    let w: Vec<(Rational, String)> = basis.cn_w[k]
        .iter()
        .enumerate()
        .rev()
        .map(|(j, c)| (c.clone(), format!("W_{j}")))
        .collect();
    format!("C_{k} = {mono} = {}", join_terms(&w))
}
