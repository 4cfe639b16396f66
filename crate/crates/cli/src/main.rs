use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use relbrauer::burnside::{default_label, BurnsideElement};
use relbrauer::group::GroupSpec;
use relbrauer::lattice::LatticeIndex;
use relbrauer::linalg::{Int, Lattice};
use relbrauer::relations::{
    decompose_relation, kahn_labels, kahn_report, kernel_absolute, verify_report, Analysis, Certificate,
    VerificationReport,
};
use relbrauer::Error;

#[derive(Parser)]
#[command(
    name = "relbrauer",
    version,
    about = "Brauer relations of abelian p-groups and their products with C_p"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format; not every command supports every format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// The subgroup lattice of a group.
    Subgroups {
        #[arg(long)]
        group: String,
    },
    /// Rank and HNF basis of the Brauer relations of a group, or with
    /// `--relative` of the relative relations for `G × C_p`.
    Kernel {
        #[arg(long)]
        group: String,
        #[arg(long)]
        relative: bool,
    },
    /// Every identity for one group.
    Verify {
        #[arg(long)]
        group: String,
    },
    /// Every identity for every abelian p-group up to an order bound.
    Sweep {
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        max_order: u64,
        /// Also write the rank table as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Also decompose every basis vector of the relative kernel.
        #[arg(long)]
        certificates: bool,
    },
    /// A certificate for a relative relation read from a JSON file.
    Decompose {
        #[arg(long)]
        element: PathBuf,
    },
    /// The worked example for `C_2 × C_2`.
    ExampleKahn,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dot,
    Pretty,
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotARelation(_) | Error::VerificationFailure(_) => 1,
            Error::NoCertificate(_) | Error::Linalg(_) => 3,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn require(format: Format, allowed: &[Format], command: &str) -> Result<(), Failure> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        Err(input_error(format!("{command} does not support that --format")))
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

/// Names for Γ-indices; the `e1 … e16` table when `G = C_2 × C_2`.
fn gamma_labels(g: &GroupSpec, gamma: &LatticeIndex) -> Vec<String> {
    if g.p() == 2 && g.exponents() == [1, 1] {
        if let Ok(labels) = kahn_labels(gamma) {
            let mut names = vec![String::new(); gamma.len()];
            for (e, &i) in labels.iter().enumerate() {
                names[i] = format!("e{}", e + 1);
            }
            return names;
        }
    }
    let f = default_label(gamma);
    (0..gamma.len()).map(f).collect()
}

fn subgroups(group: &str, format: Format) -> Result<(String, u8), Failure> {
    let g = GroupSpec::parse(group)?;
    let idx = LatticeIndex::of_group(&g)?;
    let text = match format {
        Format::Json => json(&idx),
        Format::Dot => idx.to_dot(),
        Format::Csv => {
            let mut out = String::from("index,order,cyclic,generators\n");
            for i in 0..idx.len() {
                let _ = writeln!(out, "{i},{},{},\"{}\"", idx.order(i), idx.is_cyclic(i), idx.get(i));
            }
            out
        }
        Format::Pretty => {
            let mut out = format!("{g}: {} subgroups, {} cyclic\n", idx.len(), idx.cyclic_count());
            for i in 0..idx.len() {
                let above: Vec<String> = idx.covers_above(i).iter().map(|j| format!("#{j}")).collect();
                let _ = writeln!(
                    out,
                    "#{i:<4} order {:<6} {}  < {}",
                    idx.order(i),
                    idx.get(i),
                    above.join(" ")
                );
            }
            out
        }
    };
    Ok((text, 0))
}

#[derive(Serialize)]
struct BasisVector {
    coefficients: BurnsideElement,
    pretty: String,
}

#[derive(Serialize)]
struct KernelReport {
    group: String,
    ambient: String,
    relative: bool,
    rank: usize,
    basis: Vec<BasisVector>,
}

fn kernel(group: &str, relative: bool, format: Format) -> Result<(String, u8), Failure> {
    require(format, &[Format::Json, Format::Pretty], "kernel")?;
    let g = GroupSpec::parse(group)?;
    let (ambient, lattice, labels): (LatticeIndex, Lattice, Vec<String>) = if relative {
        let an = Analysis::new(&g)?;
        let gamma = an.gamma_lattice().gamma().clone();
        let labels = gamma_labels(&g, &gamma);
        (gamma, an.kernel_relative().clone(), labels)
    } else {
        let idx = LatticeIndex::of_group(&g)?;
        let k = kernel_absolute(&idx);
        let labels = (0..idx.len()).map(default_label(&idx)).collect();
        (idx, k, labels)
    };
    let basis = lattice
        .rows()
        .iter()
        .map(|r| {
            let e = BurnsideElement::from_sparse(&ambient, r)?;
            let pretty = e.pretty(&|i| labels[i].clone());
            Ok(BasisVector {
                coefficients: e,
                pretty,
            })
        })
        .collect::<relbrauer::Result<Vec<_>>>()?;
    let report = KernelReport {
        group: g.to_string(),
        ambient: ambient.spec().to_string(),
        relative,
        rank: lattice.rank(),
        basis,
    };
    let text = match format {
        Format::Pretty => {
            let mut out = format!("rank {}\n", report.rank);
            for b in &report.basis {
                let _ = writeln!(out, "{}", b.pretty);
            }
            out
        }
        _ => json(&report),
    };
    Ok((text, 0))
}

fn pretty_report(r: &VerificationReport) -> String {
    let mut out = format!(
        "{}: rank K(Γ) {}, rank K(G,C_p) {}, rank B(G) {}, cyclic subgroups of Γ {}\n",
        r.group, r.ranks.k_gamma, r.ranks.k_rel, r.ranks.b_g, r.ranks.cyclic_gamma
    );
    for c in &r.checks {
        let _ = writeln!(
            out,
            "  {} {} {}",
            if c.passed { "ok  " } else { "FAIL" },
            c.name,
            c.detail
        );
    }
    out
}

fn verify(group: &str, format: Format) -> Result<(String, u8), Failure> {
    require(format, &[Format::Json, Format::Pretty], "verify")?;
    let g = GroupSpec::parse(group)?;
    let report = verify_report(&Analysis::new(&g)?)?;
    let code = if report.passed() { 0 } else { 1 };
    let text = match format {
        Format::Pretty => pretty_report(&report),
        _ => json(&report),
    };
    Ok((text, code))
}

#[derive(Serialize)]
struct CertificateSummary {
    basis_vectors: usize,
    certified: usize,
    failures: Vec<String>,
}

#[derive(Serialize)]
struct SweepEntry {
    #[serde(flatten)]
    report: VerificationReport,
    gamma_order: u64,
    subgroup_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificates: Option<CertificateSummary>,
}

#[derive(Serialize)]
struct SweepReport {
    prime: u64,
    max_order: u64,
    group_count: usize,
    passed: bool,
    groups: Vec<SweepEntry>,
}

fn certify_all(an: &Analysis) -> Result<CertificateSummary, Failure> {
    let gamma = an.gamma_lattice().gamma();
    let rows = an.kernel_relative().rows();
    let mut certified = 0;
    let mut failures = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        let x = BurnsideElement::from_sparse(gamma, r)?;
        match decompose_relation(an, &x) {
            Ok(c) if c.is_valid() => certified += 1,
            Ok(_) => failures.push(format!("basis vector {i}: certificate does not re-expand")),
            Err(e @ (Error::NoCertificate(_) | Error::NotARelation(_))) => {
                failures.push(format!("basis vector {i}: {e}"))
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(CertificateSummary {
        basis_vectors: rows.len(),
        certified,
        failures,
    })
}

fn sweep_csv(s: &SweepReport) -> String {
    let mut out =
        String::from("group,gamma_order,subgroups,cyclic,rank_k_gamma,rank_k_rel,generation_equal,selection_index\n");
    for e in &s.groups {
        let r = &e.report;
        let index = r.selection.index.as_ref().map_or_else(String::new, Int::to_string);
        let _ = writeln!(
            out,
            "\"{}\",{},{},{},{},{},{},{}",
            r.group,
            e.gamma_order,
            e.subgroup_count,
            r.ranks.cyclic_gamma,
            r.ranks.k_gamma,
            r.ranks.k_rel,
            r.generation.equal,
            index
        );
    }
    out
}

fn sweep(
    prime: u64,
    max_order: u64,
    csv: Option<&Path>,
    certificates: bool,
    format: Format,
) -> Result<(String, u8), Failure> {
    require(format, &[Format::Json, Format::Csv, Format::Pretty], "sweep")?;
    let family = GroupSpec::family(prime, max_order)?;
    let mut groups = Vec::with_capacity(family.len());
    let mut code = 0;
    for g in &family {
        let an = Analysis::new(g)?;
        let report = verify_report(&an)?;
        if !report.passed() {
            code = code.max(1);
        }
        let certificates = if certificates {
            let c = certify_all(&an)?;
            if !c.failures.is_empty() {
                code = 3;
            }
            Some(c)
        } else {
            None
        };
        let gamma = an.gamma_lattice().gamma();
        groups.push(SweepEntry {
            gamma_order: gamma.spec().order(),
            subgroup_count: gamma.len(),
            report,
            certificates,
        });
    }
    let report = SweepReport {
        prime,
        max_order,
        group_count: groups.len(),
        passed: code == 0,
        groups,
    };
    if let Some(path) = csv {
        fs::write(path, sweep_csv(&report)).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    }
    let text = match format {
        Format::Csv => sweep_csv(&report),
        Format::Pretty => report.groups.iter().map(|e| pretty_report(&e.report)).collect(),
        _ => json(&report),
    };
    Ok((text, code))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ElementFile {
    group: String,
    /// Γ-index to coefficient.
    coefficients: BTreeMap<usize, Int>,
}

#[derive(Serialize)]
struct CertificateOutput<'a> {
    group: String,
    valid: bool,
    target_pretty: String,
    #[serde(flatten)]
    certificate: &'a Certificate,
}

fn decompose(path: &Path, format: Format) -> Result<(String, u8), Failure> {
    require(format, &[Format::Json, Format::Pretty], "decompose")?;
    let text = fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    let file: ElementFile = serde_json::from_str(&text).map_err(|e| input_error(format!("bad element file: {e}")))?;
    let g = GroupSpec::parse(&file.group)?;
    let an = Analysis::new(&g)?;
    let gamma = an.gamma_lattice().gamma();
    let x = BurnsideElement::from_sparse(gamma, &relbrauer::linalg::SparseVec::from_pairs(file.coefficients))
        .map_err(|e| input_error(format!("bad element: {e}")))?;
    let cert = decompose_relation(&an, &x)?;
    let labels = gamma_labels(&g, gamma);
    let name = |i: usize| labels[i].clone();
    let out = CertificateOutput {
        group: g.to_string(),
        valid: cert.is_valid(),
        target_pretty: x.pretty(&name),
        certificate: &cert,
    };
    let text = match format {
        Format::Pretty => {
            let mut s = format!("{} =\n", out.target_pretty);
            for t in &cert.terms {
                let _ = writeln!(s, "  {} · ({})", t.coefficient, t.record.element.pretty(&name));
            }
            let _ = writeln!(
                s,
                "{} of {} indufted generators are essential",
                cert.generators_essential, cert.generators_available
            );
            s
        }
        _ => json(&out),
    };
    Ok((text, 0))
}

fn example_kahn(format: Format) -> Result<(String, u8), Failure> {
    require(format, &[Format::Json, Format::Pretty], "example-kahn")?;
    let r = kahn_report()?;
    let text = match format {
        Format::Pretty => {
            let mut s = format!(
                "{}: {} subgroups of Γ, rank K(Γ) {}, rank K(G,C_2) {}\n",
                r.group, r.subgroup_count, r.rank_k_gamma, r.rank_k_rel
            );
            for l in &r.labels {
                let _ = writeln!(s, "  {:<4} {}", l.label, l.subgroup);
            }
            for (title, list) in [
                ("generators", &r.generators),
                ("table basis", &r.table_basis),
                ("four-element basis", &r.four_element_basis),
            ] {
                let _ = writeln!(s, "{title}:");
                for e in list {
                    let _ = writeln!(s, "  {} = {}", e.label, e.pretty);
                }
            }
            for n in &r.notes {
                let _ = writeln!(s, "  note: {n}");
            }
            for c in &r.checks {
                let _ = writeln!(s, "  {} {}", if c.passed { "ok  " } else { "FAIL" }, c.name);
            }
            s
        }
        _ => json(&r),
    };
    Ok((text, 0))
}

fn run(cli: Cli) -> Result<(String, u8), Failure> {
    match &cli.command {
        Command::Subgroups { group } => subgroups(group, cli.format),
        Command::Kernel { group, relative } => kernel(group, *relative, cli.format),
        Command::Verify { group } => verify(group, cli.format),
        Command::Sweep {
            prime,
            max_order,
            csv,
            certificates,
        } => sweep(*prime, *max_order, csv.as_deref(), *certificates, cli.format),
        Command::Decompose { element } => decompose(element, cli.format),
        Command::ExampleKahn => example_kahn(cli.format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = cli.output.clone();
    match run(cli) {
        Ok((text, code)) => {
            let written = match &output {
                Some(path) => fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            match written {
                Ok(()) => ExitCode::from(code),
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
