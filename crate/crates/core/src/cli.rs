//! The `qgkit` command line.
//!
//! Exit codes: 0 on success or a true verdict, 1 when a `check` (or
//! `isotopy-check`) verdict is false, 2 on usage and input errors.
//! Reports that accompany a machine-readable output on stdout are written
//! as `#` comment lines, so stdout always parses as the named format.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::battery::{idempotence_violations, lf_extension_violations};
use crate::bruck::{decompose_endo, is_idempotent_via_decomposition, BruckSystem};
use crate::census::{census, property_line, CensusOptions, Predicate};
use crate::constructions::{build_adl_system, build_dl_system, build_lf_extension, Group, GroupSpec};
use crate::enumerate::{enumerate_endomorphisms, enumerate_homomorphisms, threads_from_env};
use crate::error::Error;
use crate::io::{load_bruck, load_qg, load_qmap, write_bruck, write_qg, write_qmap};
use crate::map::QMap;
use crate::quasigroup::Quasigroup;
use crate::varieties::{check_adl_system, check_dl_system, left_deviation};

#[derive(Debug, Parser)]
#[command(name = "qgkit", version, about = "Finite quasigroup toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check that a .qg file holds a Latin square.
    Validate { file: PathBuf },
    /// Print the flag line `loop group idempotent Dl aDl LF LIP`.
    Props { file: PathBuf },
    /// Print the left deviation x ↦ x\x as a qmap, with verdicts.
    Deviation { file: PathBuf },
    /// Decompose a quasigroup along one of its endomorphisms.
    Decompose(DecomposeArgs),
    /// Compose a Bruck system into a quasigroup.
    Compose(ComposeArgs),
    /// Build one of the example families.
    #[command(subcommand)]
    Construct(Construct),
    /// Run a verification battery; exit 1 if it fails.
    #[command(subcommand)]
    Check(Check),
    /// Count labeled quasigroups of one order satisfying each predicate.
    Census(CensusArgs),
    /// Verify the isotopism of an LF extension onto T × E.
    IsotopyCheck(FamilyArgs),
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("endo").required(true).args(["endo_file", "deviation"]))]
struct DecomposeArgs {
    file: PathBuf,
    #[arg(long)]
    endo_file: Option<PathBuf>,
    /// Use the left deviation as the endomorphism.
    #[arg(long)]
    deviation: bool,
    /// Write the .bruck here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the relabeling Q → T×E (as a qmap) here.
    #[arg(long)]
    labeling_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ComposeArgs {
    file: PathBuf,
    /// Write the .qg here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the canonical projection onto the base (as a qmap) here.
    #[arg(long)]
    proj_out: Option<PathBuf>,
    /// Transport the result back along a labeling written by `decompose`.
    #[arg(long)]
    relabel: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Construct {
    /// Blocks T1 on (a, a\a), T2 on deviation pairs (u, v) with v ≠ u\u.
    Example1 {
        #[arg(long)]
        base: String,
        #[arg(long)]
        t1: String,
        #[arg(long)]
        t2: String,
        #[arg(long)]
        filler: Option<String>,
        #[command(flatten)]
        out: ConstructOut,
    },
    /// Group base with twisted blocks (α/ε(a))∘β in column 1.
    Example2 {
        #[arg(long)]
        e: String,
        #[arg(long)]
        t: String,
        #[arg(long)]
        eps: String,
        #[arg(long)]
        filler: Option<String>,
        #[command(flatten)]
        out: ConstructOut,
    },
    /// LF extension (α,a)(β,b) = (α·ε(a)⁻¹·β, ab) of two groups.
    Example3 {
        #[command(flatten)]
        family: FamilyArgs,
        /// Write the .qg here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct ConstructOut {
    /// Write the .bruck here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the composed quasigroup.
    #[arg(long)]
    compose_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct FamilyArgs {
    /// Group E: cyclic:<n>, prod:<spec>x<spec> or file:<path.qg>.
    #[arg(long)]
    e: String,
    /// Group T, same syntax as --e.
    #[arg(long)]
    t: String,
    /// id, const:<elem>, file:<path.qmap> or all.
    #[arg(long, default_value = "all")]
    eps: String,
}

#[derive(Debug, Subcommand)]
enum Check {
    /// Right units of ∇_{a,a\a} and the embedding a ↦ (ε(a), a\a).
    Theorem2 { file: PathBuf },
    /// Group base, right units of ∇_{a,1} and ε a homomorphism.
    Theorem3 { file: PathBuf },
    /// η∘η = η ⟺ g∘g = g ∧ γ∘g = γ, over every endomorphism or one given.
    Prop1 {
        file: PathBuf,
        #[arg(long)]
        endo_file: Option<PathBuf>,
    },
    /// LF extension battery over E, T and the chosen homomorphisms.
    Theorem4(FamilyArgs),
}

#[derive(Debug, Args)]
struct CensusArgs {
    #[arg(long)]
    order: usize,
    /// Comma-separated subset of loop,group,idempotent,Dl,aDl,LF,LIP.
    #[arg(long, value_delimiter = ',')]
    predicates: Option<Vec<String>>,
    /// Count isomorphism classes (orders ≤ 4).
    #[arg(long)]
    up_to_iso: bool,
    #[arg(long)]
    allow_order_six: bool,
}

/// Failure that maps to exit code 2.
#[derive(Debug)]
struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = std::result::Result<i32, Failure>;

/// Runs the CLI on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure(message)) => {
            let _ = writeln!(err, "error: {message}");
            2
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Validate { file } => {
            let q = load_qg(&file)?;
            writeln!(out, "ok: Latin square of order {}", q.order())?;
            Ok(0)
        }
        Command::Props { file } => {
            writeln!(out, "{}", property_line(&load_qg(&file)?)?)?;
            Ok(0)
        }
        Command::Deviation { file } => {
            let r = left_deviation(&load_qg(&file)?);
            write!(out, "{}", write_qmap(&r.deviation))?;
            writeln!(out, "# endomorphism={} image_group={}", u8::from(r.is_endomorphism), u8::from(r.image_is_group))?;
            Ok(0)
        }
        Command::Decompose(args) => decompose(args, out),
        Command::Compose(args) => compose(args, out),
        Command::Construct(c) => construct(c, out),
        Command::Check(c) => check(c, out),
        Command::Census(args) => run_census(args, out),
        Command::IsotopyCheck(family) => isotopy_check(&family, out),
    }
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text),
        None => out.write_all(text.as_bytes()),
    }
}

fn join(values: impl IntoIterator<Item = usize>) -> String {
    values.into_iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn decompose(args: DecomposeArgs, out: &mut dyn Write) -> Outcome {
    let q = load_qg(&args.file)?;
    let eta = match &args.endo_file {
        Some(path) => load_qmap(path)?,
        None => left_deviation(&q).deviation,
    };
    let d = decompose_endo(&q, &eta)?;
    emit(out, args.out.as_deref(), &write_bruck(&d.system))?;
    if let Some(path) = &args.labeling_out {
        std::fs::write(path, write_qmap(&d.labeling.to_composed()))?;
    }
    let pairs: Vec<String> = d.labeling.pairs().iter().map(|(t, a)| format!("({t},{a})")).collect();
    let mut report = String::new();
    let _ = writeln!(report, "# labeling {}", pairs.join(" "));
    let _ = writeln!(report, "# gamma {}", join(d.gamma.iter().copied()));
    let _ = writeln!(report, "# g {}", join(d.g.values().iter().copied()));
    let _ = writeln!(report, "# idempotent={}", u8::from(is_idempotent_via_decomposition(&d)?));
    out.write_all(report.as_bytes())?;
    Ok(0)
}

fn compose(args: ComposeArgs, out: &mut dyn Write) -> Outcome {
    let b = load_bruck(&args.file)?;
    let c = b.compose();
    let (q, projection) = match &args.relabel {
        None => (c.quasigroup, c.projection),
        Some(path) => {
            let to = load_qmap(path)?;
            let n = c.quasigroup.order();
            if to.domain_order() != n || to.codomain_order() != n || !to.is_injective() {
                return Err(Failure(format!("labeling in {} is not a permutation of {n} elements", path.display())));
            }
            let mut back = vec![0; n];
            for x in 0..n {
                back[to.apply(x)] = x;
            }
            let projection = QMap::new(b.base_order(), (0..n).map(|x| c.projection.apply(to.apply(x))).collect())?;
            (c.quasigroup.relabel(&back), projection)
        }
    };
    emit(out, args.out.as_deref(), &write_qg(&q))?;
    match &args.proj_out {
        Some(path) => std::fs::write(path, write_qmap(&projection))?,
        None => writeln!(out, "# projection {}", join(projection.values().iter().copied()))?,
    }
    Ok(0)
}

/// `cyclic:<n>`, `prod:<A>x<B>` or `file:<path.qg>`.
fn parse_group_spec(s: &str) -> Result<GroupSpec, Failure> {
    if let Some(n) = s.strip_prefix("cyclic:") {
        let n = n.parse().map_err(|_| Failure(format!("bad cyclic order in {s:?}")))?;
        if n == 0 {
            return Err(Failure("cyclic:0 is not a group".into()));
        }
        return Ok(GroupSpec::Cyclic(n));
    }
    if let Some(rest) = s.strip_prefix("prod:") {
        // First split whose halves both parse, so nested products work.
        for (i, _) in rest.match_indices('x') {
            if let (Ok(a), Ok(b)) = (parse_group_spec(&rest[..i]), parse_group_spec(&rest[i + 1..])) {
                return Ok(GroupSpec::product(a, b));
            }
        }
        return Err(Failure(format!("cannot split product {s:?}")));
    }
    if let Some(path) = s.strip_prefix("file:") {
        return Ok(GroupSpec::Table(load_qg(path)?));
    }
    Err(Failure(format!("unknown group spec {s:?}: use cyclic:<n>, prod:<A>x<B> or file:<path.qg>")))
}

fn parse_group(s: &str) -> Result<Group, Failure> {
    Ok(parse_group_spec(s)?.resolve()?)
}

/// A group spec or, for `file:`, any quasigroup.
fn parse_quasigroup(s: &str) -> Result<Quasigroup, Failure> {
    match s.strip_prefix("file:") {
        Some(path) => Ok(load_qg(path)?),
        None => Ok(parse_group(s)?.quasigroup().clone()),
    }
}

/// `id`, `const:<elem>`, `file:<path.qmap>` or `all`.
fn parse_homs(s: &str, e: &Quasigroup, t: &Quasigroup) -> Result<Vec<QMap>, Failure> {
    let (n, m) = (e.order(), t.order());
    let f = match s {
        "all" => return Ok(enumerate_homomorphisms(e, t)),
        "id" if n == m => QMap::identity(n),
        "id" => return Err(Failure(format!("id needs equal orders, got {n} and {m}"))),
        _ => {
            if let Some(v) = s.strip_prefix("const:") {
                let v = v.parse().map_err(|_| Failure(format!("bad constant in {s:?}")))?;
                QMap::constant(n, m, v)?
            } else if let Some(path) = s.strip_prefix("file:") {
                load_qmap(path)?
            } else {
                return Err(Failure(format!("unknown map spec {s:?}: use id, const:<e>, file:<path.qmap> or all")));
            }
        }
    };
    if f.domain_order() != n || f.codomain_order() != m {
        return Err(Failure(format!(
            "map has shape {} → {}, expected {n} → {m}",
            f.domain_order(),
            f.codomain_order()
        )));
    }
    Ok(vec![f])
}

fn single(mut homs: Vec<QMap>) -> Result<QMap, Failure> {
    match homs.len() {
        1 => Ok(homs.remove(0)),
        0 => Err(Failure("no homomorphism selected".into())),
        _ => Err(Failure("this command needs a single map, not `all`".into())),
    }
}

fn write_system(b: &BruckSystem, o: &ConstructOut, out: &mut dyn Write) -> Outcome {
    emit(out, o.out.as_deref(), &write_bruck(b))?;
    if let Some(path) = &o.compose_out {
        std::fs::write(path, write_qg(&b.compose().quasigroup))?;
    }
    Ok(0)
}

fn construct(c: Construct, out: &mut dyn Write) -> Outcome {
    match c {
        Construct::Example1 { base, t1, t2, filler, out: o } => {
            let filler = filler.as_deref().map(parse_quasigroup).transpose()?;
            let b = build_dl_system(
                &parse_quasigroup(&base)?,
                &parse_quasigroup(&t1)?,
                &parse_quasigroup(&t2)?,
                filler.as_ref(),
            )?;
            write_system(&b, &o, out)
        }
        Construct::Example2 { e, t, eps, filler, out: o } => {
            let e = parse_group(&e)?;
            let t = parse_quasigroup(&t)?;
            let eps = single(parse_homs(&eps, e.quasigroup(), &t)?)?;
            let filler = filler.as_deref().map(parse_quasigroup).transpose()?;
            let b = build_adl_system(e.quasigroup(), &t, &eps, filler.as_ref())?;
            write_system(&b, &o, out)
        }
        Construct::Example3 { family, out: path } => {
            let (e, t) = (parse_group(&family.e)?, parse_group(&family.t)?);
            let homs = parse_homs(&family.eps, e.quasigroup(), t.quasigroup())?;
            if path.is_some() {
                let ext = build_lf_extension(&e, &t, &single(homs)?)?;
                emit(out, path.as_deref(), &write_qg(ext.quasigroup()))?;
                return Ok(0);
            }
            for eps in homs {
                let ext = build_lf_extension(&e, &t, &eps)?;
                writeln!(out, "# eps {}", join(eps.values().iter().copied()))?;
                out.write_all(write_qg(ext.quasigroup()).as_bytes())?;
            }
            Ok(0)
        }
    }
}

fn verdict(out: &mut dyn Write, ok: bool) -> Outcome {
    writeln!(out, "{}", if ok { "PASS" } else { "FAIL" })?;
    Ok(if ok { 0 } else { 1 })
}

fn check(c: Check, out: &mut dyn Write) -> Outcome {
    match c {
        Check::Theorem2 { file } => {
            let r = check_dl_system(&load_bruck(&file)?)?;
            writeln!(out, "right_units={}", u8::from(r.has_right_units))?;
            if let Some(eps) = &r.epsilon {
                writeln!(out, "epsilon {}", join(eps.iter().copied()))?;
            }
            writeln!(out, "embedding_homomorphism={}", u8::from(r.embedding_is_homomorphism))?;
            verdict(out, r.holds())
        }
        Check::Theorem3 { file } => {
            let r = check_adl_system(&load_bruck(&file)?)?;
            writeln!(out, "base_group={}", u8::from(r.base_is_group))?;
            writeln!(out, "right_units={}", u8::from(r.has_right_units))?;
            if let Some(eps) = &r.epsilon {
                writeln!(out, "epsilon {}", join(eps.iter().copied()))?;
            }
            writeln!(out, "epsilon_homomorphism={}", u8::from(r.epsilon_is_homomorphism))?;
            verdict(out, r.holds())
        }
        Check::Prop1 { file, endo_file } => {
            let q = load_qg(&file)?;
            let (checked, violations) = match endo_file {
                None => (enumerate_endomorphisms(&q)?.len(), idempotence_violations(&q)?),
                Some(path) => {
                    let eta = load_qmap(&path)?;
                    let d = decompose_endo(&q, &eta)?;
                    let direct = eta.then(&eta)? == eta;
                    let via = is_idempotent_via_decomposition(&d)?;
                    writeln!(out, "idempotent={} via_decomposition={}", u8::from(direct), u8::from(via))?;
                    let v = if direct == via { Vec::new() } else { vec!["verdicts disagree".to_string()] };
                    (1, v)
                }
            };
            report(out, checked, &violations)
        }
        Check::Theorem4(family) => {
            let (e, t) = (parse_group(&family.e)?, parse_group(&family.t)?);
            let homs = parse_homs(&family.eps, e.quasigroup(), t.quasigroup())?;
            let mut violations = Vec::new();
            for eps in &homs {
                if !crate::map::is_homomorphism(eps, e.quasigroup(), t.quasigroup())? {
                    return Err(Error::NotHomomorphism.into());
                }
                let ext = build_lf_extension(&e, &t, eps)?;
                let label = join(eps.values().iter().copied());
                violations.extend(lf_extension_violations(&ext).into_iter().map(|v| format!("eps {label}: {v}")));
            }
            report(out, homs.len(), &violations)
        }
    }
}

fn report(out: &mut dyn Write, checked: usize, violations: &[String]) -> Outcome {
    writeln!(out, "instances={checked} violations={}", violations.len())?;
    for v in violations {
        writeln!(out, "  {v}")?;
    }
    verdict(out, violations.is_empty())
}

fn run_census(args: CensusArgs, out: &mut dyn Write) -> Outcome {
    let predicates = match &args.predicates {
        None => Predicate::ALL.to_vec(),
        Some(names) => names.iter().map(|s| s.parse()).collect::<Result<Vec<Predicate>, _>>()?,
    };
    let opts = CensusOptions {
        threads: threads_from_env()?,
        up_to_iso: args.up_to_iso,
        allow_order_six: args.allow_order_six,
    };
    let row = census(args.order, &predicates, opts)?;
    writeln!(out, "{row}")?;
    Ok(0)
}

fn isotopy_check(family: &FamilyArgs, out: &mut dyn Write) -> Outcome {
    let (e, t) = (parse_group(&family.e)?, parse_group(&family.t)?);
    let mut ok = true;
    for eps in parse_homs(&family.eps, e.quasigroup(), t.quasigroup())? {
        let ext = build_lf_extension(&e, &t, &eps)?;
        let holds = match ext.isotopy_to_direct_product() {
            Ok(v) => v,
            Err(Error::IsotopyFailed(..)) => false,
            Err(other) => return Err(other.into()),
        };
        ok &= holds;
        writeln!(
            out,
            "eps {} phi {} isotopic={}",
            join(eps.values().iter().copied()),
            join(ext.isotopism().values().iter().copied()),
            u8::from(holds)
        )?;
    }
    verdict(out, ok)
}
