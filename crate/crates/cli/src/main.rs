mod output;

use std::ffi::OsStr;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use output::{Doc, Format, Rows};
use sheafcalc::cohomology::{CohomTable, DimEntry};
use sheafcalc::dist::{self, ComponentCount, DistributionProfile, Sing1F};
use sheafcalc::modulispec;
use sheafcalc::sheafdsl::{self, Env, NamedDecl};
use sheafcalc::{ChernData, Error, ThreefoldData};

const MAX_TWIST_WIDTH: i64 = 200;
const PRESETS_ENV: &str = "SHEAFCALC_PRESETS";

#[derive(Parser)]
#[command(
    name = "sheafcalc",
    version,
    about = "Numerical invariants of distributions and reflexive sheaves on threefolds"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Chern data, singular length and stability of a distribution's tangent sheaf
    Invariants(InvariantsArgs),
    /// Moduli component, curve family and resolution for a degree-d distribution on P^3
    Moduli {
        #[arg(long, allow_negative_numbers = true)]
        degree: i64,
    },
    /// Cohomology table of a sheaf expression over a range of twists
    Cohomology(CohomologyArgs),
    /// Stable spectrum point for the parameter r
    Spectrum {
        #[arg(long)]
        threefold: String,
        #[arg(long, allow_negative_numbers = true)]
        r: i64,
        /// Also report the twist-orbit representative with c1 in {-1, 0}
        #[arg(long)]
        normalize: bool,
    },
    /// Numerical shadow of a rank-one subfoliation
    Subfoliation(SubfoliationArgs),
    /// Number of connected components of the curve part of the singular scheme
    Conncomp(ConncompArgs),
    /// Threefold presets
    Presets {
        #[command(subcommand)]
        action: PresetsAction,
    },
    /// Cohomology tables for every expression in a file, one per line
    Batch {
        /// `-` reads standard input
        #[arg(long)]
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_twists)]
        twists: (i64, i64),
        #[arg(long, default_value = "p3")]
        threefold: String,
        #[arg(long = "declare", value_name = "ID=RANK,C1,C2,C3")]
        declare: Vec<String>,
    },
}

#[derive(Subcommand)]
enum PresetsAction {
    List,
}

#[derive(Args)]
struct DistributionArgs {
    #[arg(long)]
    threefold: String,
    /// c1 of the tangent sheaf
    #[arg(
        long,
        allow_negative_numbers = true,
        conflicts_with = "degree",
        required_unless_present = "degree"
    )]
    c1: Option<i64>,
    /// Degree on P^3, i.e. c1 = 2 - degree
    #[arg(long, allow_negative_numbers = true)]
    degree: Option<i64>,
}

#[derive(Args)]
struct InvariantsArgs {
    #[command(flatten)]
    dist: DistributionArgs,
    /// The singular scheme is empty or zero-dimensional
    #[arg(long)]
    generic: bool,
}

#[derive(Args)]
struct CohomologyArgs {
    #[arg(long)]
    sheaf: String,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_twists)]
    twists: (i64, i64),
    #[arg(long, default_value = "p3")]
    threefold: String,
    #[arg(long = "declare", value_name = "ID=RANK,C1,C2,C3")]
    declare: Vec<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Sing1Arg {
    Empty,
    Irred,
    Other,
}

#[derive(Args)]
struct SubfoliationArgs {
    #[command(flatten)]
    dist: DistributionArgs,
    #[arg(long, allow_negative_numbers = true)]
    tg: i64,
    #[arg(long, value_enum)]
    sing1f: Sing1Arg,
    /// c2(T_F)·H, when known; otherwise the generic-case value is used
    #[arg(long, allow_negative_numbers = true)]
    c2: Option<i64>,
    #[arg(long)]
    generic: bool,
}

#[derive(Args)]
struct ConncompArgs {
    #[command(flatten)]
    dist: DistributionArgs,
    /// h^2(T_F ⊗ L_F^∨)
    #[arg(long, conflicts_with = "generic", required_unless_present = "generic")]
    h2: Option<u64>,
    /// Use the generic-case value of h^2 on P^3
    #[arg(long)]
    generic: bool,
    /// c3(T_F)
    #[arg(long)]
    c3: u64,
    /// Off P^3: h^1(TX ⊗ L_F^∨) = 0 is known
    #[arg(long)]
    tx_h1_vanishes: bool,
    /// Off P^3: h^2(TX ⊗ L_F^∨) = 0 is known
    #[arg(long)]
    tx_h2_vanishes: bool,
}

enum Failure {
    Usage(String),
    Engine(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

type Outcome<T> = Result<T, Failure>;

fn parse_twists(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (lo.trim(), hi.trim()),
        None => (s.trim(), s.trim()),
    };
    let num = |t: &str| {
        t.parse::<i64>()
            .map_err(|_| format!("`{s}` is not a range lo..hi"))
    };
    let (lo, hi) = (num(lo)?, num(hi)?);
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok((lo, hi))
}

/// A threefold and where its data came from.
struct Loaded {
    x: ThreefoldData,
    from: String,
}

fn load_threefold(arg: &str) -> Outcome<Loaded> {
    if let Some(x) = ThreefoldData::preset(arg) {
        return Ok(Loaded {
            x,
            from: format!("preset {arg}"),
        });
    }
    if let Some(dir) = std::env::var_os(PRESETS_ENV) {
        let mut files: Vec<PathBuf> = std::fs::read_dir(&dir)
            .map_err(|e| {
                Failure::Usage(format!("{PRESETS_ENV}: {}: {e}", Path::new(&dir).display()))
            })?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension() == Some(OsStr::new("json")))
            .collect();
        files.sort();
        for path in files {
            let x = ThreefoldData::from_path(&path)?;
            if x.name == arg {
                return Ok(Loaded {
                    x,
                    from: format!("file {}", path.display()),
                });
            }
        }
    }
    let path = Path::new(arg);
    if path.is_file() {
        return Ok(Loaded {
            x: ThreefoldData::from_path(path)?,
            from: format!("file {arg}"),
        });
    }
    Err(Failure::Usage(format!(
        "--threefold: `{arg}` is neither a preset nor a readable file"
    )))
}

fn profile(args: &DistributionArgs, generic: bool) -> Outcome<(Loaded, DistributionProfile)> {
    let loaded = load_threefold(&args.threefold)?;
    let f = match (args.c1, args.degree) {
        (Some(f), _) => f,
        (None, Some(d)) => {
            if !loaded.x.is_p3() {
                return Err(Failure::Usage(
                    "--degree is only meaningful on p3; use --c1".into(),
                ));
            }
            2 - d
        }
        (None, None) => unreachable!("clap requires one of --c1, --degree"),
    };
    let p = DistributionProfile::new(loaded.x.clone(), f, generic);
    Ok((loaded, p))
}

fn triple(c: &ChernData) -> Value {
    json!(c.triple())
}

fn dim(e: DimEntry) -> Value {
    match e {
        DimEntry::Known(n) => json!(n),
        DimEntry::Bounded(lo, hi) => json!([lo, hi]),
        DimEntry::Unknown => Value::Null,
    }
}

fn threefold_hypotheses(doc: &mut Doc, loaded: &Loaded, keys: &[&str]) {
    let record = serde_json::to_value(&loaded.x).expect("threefold serializes");
    for &k in keys {
        doc.hypothesis(k, record[k].clone(), &loaded.from);
    }
}

fn invariants(args: &InvariantsArgs) -> Outcome<Doc> {
    let (loaded, p) = profile(&args.dist, args.generic)?;
    let mut doc = Doc::new("invariants");
    doc.input("threefold", loaded.x.name.as_str())
        .input("c1", p.f);
    if let Some(d) = p.degree() {
        doc.input("degree", d);
    }
    doc.field("kappa", p.kappa(), "cX - c1");
    let chern = dist::dist_chern(&p)?;
    doc.field("chern", triple(&chern), "thmD");
    doc.field(
        "chern_via_sequence",
        triple(&dist::dist_chern_via_sequence(&p)?),
        "idealSequence",
    );
    doc.field("singular_length", dist::singular_length(&p)?, "c3Length");
    match dist::stability_classify(&p) {
        Ok(v) => {
            doc.field("stability", format!("{:?}", v.status), "thmA");
            doc.field("stability_reason", format!("{:?}", v.reason), "thmA");
        }
        Err(e @ (Error::MissingInvariant(_) | Error::HypothesisError(_))) => {
            doc.field("stability", Value::Null, "thmA");
            doc.field("stability_reason", e.name(), "thmA");
        }
        Err(e) => return Err(e.into()),
    }
    doc.hypothesis("generic", args.generic, "flag --generic");
    threefold_hypotheses(
        &mut doc,
        &loaded,
        &["rhoX", "tx_stable", "h1_line_vanishing"],
    );
    Ok(doc)
}

fn moduli(d: i64) -> Outcome<Doc> {
    let r = modulispec::moduli_report(d)?;
    let mut doc = Doc::new("moduli");
    let route = if d == 2 { "remarkD2" } else { "thmC" };
    doc.input("degree", d)
        .field("chern", triple(&r.chern), "thmD")
        .field("normalized", triple(&r.normalized), "picAction")
        .field("dim_component", r.dim_component, route)
        .field("ext1", r.ext1, "extCount")
        .field("ext2", r.ext2, "eqKey")
        .field("smooth_point", r.smooth_point, route)
        .field("rational", json!(r.rational), route)
        .field("family_dim", r.family_dim, route);
    let res = modulispec::global_gen_resolution(d)?;
    doc.field(
        "resolution_kernel",
        res.kernel.to_string(),
        "globalGenLemma",
    )
    .field("resolution_middle_rank", res.middle_rank, "globalGenLemma")
    .field("h0_Fd", res.h0_fd, "lemmaCohomology")
    .field("chern_Fd", triple(&res.cokernel_chern), "globalGenLemma");
    if d >= 1 {
        let c = modulispec::curve_family(d)?;
        doc.field("curve_degree", c.degree, "curveProp")
            .field("curve_genus", c.genus, "curveProp")
            .field("curve_points", c.points, "curveProp")
            .field("curve_family_dim", c.family_dim, "curveProp");
    }
    doc.hypothesis("generic", true, "degree-d distributions are taken generic");
    Ok(doc)
}

fn parse_declaration(s: &str) -> Outcome<NamedDecl> {
    let bad = || Failure::Usage(format!("--declare: `{s}` is not ID=RANK,C1,C2,C3"));
    let (id, nums) = s.split_once('=').ok_or_else(bad)?;
    let nums: Vec<i64> = nums
        .split(',')
        .map(|n| n.trim().parse())
        .collect::<Result<_, _>>()
        .map_err(|_| bad())?;
    let [rank, c1, n2, n3] = nums[..] else {
        return Err(bad());
    };
    let rank = u32::try_from(rank).map_err(|_| bad())?;
    Ok(NamedDecl::new(id.trim(), ChernData::new(rank, c1, n2, n3))?)
}

fn environment(decls: &[String]) -> Outcome<Env> {
    decls
        .iter()
        .try_fold(Env::new(), |env, s| Ok(env.declare(parse_declaration(s)?)))
}

const COHOM_COLUMNS: [&str; 6] = ["twist", "h0", "h1", "h2", "h3", "chi"];

fn cohom_rows(table: &CohomTable, lo: i64, hi: i64) -> Vec<Vec<Value>> {
    (lo..=hi)
        .map(|t| {
            let mut row = vec![json!(t)];
            row.extend(table.column(t).map(dim));
            row.push(json!(table.chi(t)));
            row
        })
        .collect()
}

fn cohomology(args: &CohomologyArgs) -> Outcome<Doc> {
    let (lo, hi) = args.twists;
    if hi - lo + 1 > MAX_TWIST_WIDTH {
        return Err(Failure::Usage(format!(
            "--twists: {} twists requested, at most {MAX_TWIST_WIDTH} (use batch for more)",
            hi - lo + 1
        )));
    }
    let loaded = load_threefold(&args.threefold)?;
    let env = environment(&args.declare)?;
    let expr = sheafdsl::parse(&args.sheaf)?;
    let table = sheafdsl::cohom_of(&expr, &loaded.x, &env, lo, hi)?;
    let mut doc = Doc::new("cohomology");
    doc.input("sheaf", expr.to_string())
        .input("threefold", loaded.x.name.as_str());
    doc.field(
        "chern",
        json!(table.chern().map(|c| json!([c.rank, c.c1, c.n2, c.n3]))),
        "chernCalculus",
    );
    let open: Vec<i64> = sheafdsl::undetermined_twists(&table, lo, hi)
        .into_iter()
        .collect();
    doc.field("undetermined_twists", json!(open), "lesChase");
    doc.rows(
        Rows {
            key: "table",
            columns: COHOM_COLUMNS.to_vec(),
            data: cohom_rows(&table, lo, hi),
        },
        "bott+lesChase; chi by hrr",
    );
    for (i, s) in args.declare.iter().enumerate() {
        doc.hypothesis(&format!("declare{}", i + 1), s.as_str(), "flag --declare");
    }
    Ok(doc)
}

fn spectrum(threefold: &str, r: i64, normalize: bool) -> Outcome<Doc> {
    let loaded = load_threefold(threefold)?;
    let point = modulispec::spectrum_point(&loaded.x, r)?;
    let mut doc = Doc::new("spectrum");
    doc.input("threefold", loaded.x.name.as_str())
        .input("r", r)
        .field("triple", triple(&point.triple), "thmD");
    if normalize {
        let n = modulispec::normalize(&point)?;
        doc.field("normalized", triple(&n.triple), "picAction");
    }
    threefold_hypotheses(&mut doc, &loaded, &["rhoX", "gammaX", "h1_line_vanishing"]);
    Ok(doc)
}

fn subfoliation(args: &SubfoliationArgs) -> Outcome<Doc> {
    let (loaded, p) = profile(&args.dist, args.generic)?;
    let sing1f = match args.sing1f {
        Sing1Arg::Empty => Sing1F::Empty,
        Sing1Arg::Irred => Sing1F::IrreducibleReduced,
        Sing1Arg::Other => Sing1F::Other,
    };
    let given = args.c2.map(|n2| ChernData::new(2, p.f, n2, 0));
    let r = dist::subfoliation_analyze(&p, args.tg, sing1f, given)?;
    let mut doc = Doc::new("subfoliation");
    doc.input("threefold", loaded.x.name.as_str())
        .input("c1", p.f)
        .input("tG", r.t_g)
        .field("lfg_degree", r.lfg_degree, "propSub")
        .field(
            "y_class",
            r.y_class,
            if given.is_some() { "flag --c2" } else { "thmD" },
        )
        .field("split", format!("{:?}", r.split), "thmB")
        .field(
            "split_obstruction_degree",
            r.split_obstruction_degree,
            "thmB",
        )
        .field("alt_obstruction_degree", r.alt_obstruction_degree, "thmB")
        .field(
            "sing_structure",
            format!("{:?}", r.sing_structure),
            "propSub",
        )
        .field("branches", json!(r.branches), "propSub")
        .field("diagnostics", json!(r.diagnostics), "checks");
    doc.hypothesis("generic", args.generic, "flag --generic");
    doc.hypothesis("sing1F", format!("{sing1f:?}"), "flag --sing1f");
    threefold_hypotheses(&mut doc, &loaded, &["h1_line_vanishing"]);
    Ok(doc)
}

fn conncomp(args: &ConncompArgs) -> Outcome<Doc> {
    let (loaded, p) = profile(&args.dist, false)?;
    let (h2, h2_route) = match args.h2 {
        Some(n) => (DimEntry::Known(n), "flag --h2"),
        None => {
            let d = p.degree().ok_or_else(|| {
                Error::NotComputable(format!("generic-case h2 on {}", loaded.x.name))
            })?;
            (
                dist::generic_h2_suggestion(d)?,
                "generic-case, lemmaCohomology",
            )
        }
    };
    let flags = (args.tx_h1_vanishes || args.tx_h2_vanishes)
        .then_some((args.tx_h1_vanishes, args.tx_h2_vanishes));
    let r = dist::conn_components(&p, h2, args.c3, flags)?;
    let mut doc = Doc::new("conncomp");
    doc.input("threefold", loaded.x.name.as_str())
        .input("c1", p.f)
        .input("c3", args.c3)
        .field("h2", dim(h2), h2_route);
    match r.count {
        ComponentCount::Exact(n) => doc.field("components", n, "thmE"),
        ComponentCount::Interval(lo, hi) => doc.field("components", json!([lo, hi]), "thmE"),
    };
    let tx_from = if loaded.x.is_p3() {
        "computed by bott"
    } else {
        "flags --tx-h1-vanishes, --tx-h2-vanishes"
    };
    doc.hypothesis(
        "h1_TX_LFdual_vanishes",
        r.hypotheses_checked.h1_tx_vanishes,
        tx_from,
    );
    doc.hypothesis(
        "h2_TX_LFdual_vanishes",
        r.hypotheses_checked.h2_tx_vanishes,
        tx_from,
    );
    doc.hypothesis(
        "h1_O_vanishes",
        r.hypotheses_checked.h1_o_vanishes,
        &loaded.from,
    );
    Ok(doc)
}

fn presets() -> Outcome<Doc> {
    let mut records: Vec<(ThreefoldData, String)> = ThreefoldData::presets()
        .into_iter()
        .map(|x| (x, "builtin".to_string()))
        .collect();
    if let Some(dir) = std::env::var_os(PRESETS_ENV) {
        let mut files: Vec<PathBuf> = std::fs::read_dir(&dir)
            .map_err(|e| Failure::Usage(format!("{PRESETS_ENV}: {e}")))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension() == Some(OsStr::new("json")))
            .collect();
        files.sort();
        for path in files {
            records.push((ThreefoldData::from_path(&path)?, path.display().to_string()));
        }
    }
    let columns = vec![
        "name",
        "h3",
        "cX",
        "c2TX_H",
        "c3TX",
        "rhoX",
        "gammaX",
        "tx_stable",
        "h1_line_vanishing",
        "origin",
    ];
    let data = records
        .iter()
        .map(|(x, origin)| {
            let v = serde_json::to_value(x).expect("threefold serializes");
            let mut row: Vec<Value> = columns[..9].iter().map(|c| v[*c].clone()).collect();
            row.push(json!(origin));
            row
        })
        .collect();
    let mut doc = Doc::new("presets");
    doc.rows(
        Rows {
            key: "presets",
            columns,
            data,
        },
        "presets",
    );
    Ok(doc)
}

fn batch(
    file: &Path,
    (lo, hi): (i64, i64),
    threefold: &str,
    declare: &[String],
) -> Outcome<(Doc, bool)> {
    let src = if file == Path::new("-") {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(file)
    }
    .map_err(|e| Failure::Usage(format!("--file: {}: {e}", file.display())))?;
    let loaded = load_threefold(threefold)?;
    let env = environment(declare)?;
    let mut data = Vec::new();
    let mut all_ok = true;
    for (line, parsed) in sheafdsl::parse_batch(&src) {
        let result = parsed.and_then(|e| Ok((sheafdsl::cohom_of(&e, &loaded.x, &env, lo, hi)?, e)));
        match result {
            Ok((table, e)) => {
                for mut row in cohom_rows(&table, lo, hi) {
                    row.insert(0, json!(e.to_string()));
                    row.insert(0, json!(line));
                    row.push(Value::Null);
                    data.push(row);
                }
            }
            Err(err) => {
                all_ok = false;
                let mut row = vec![json!(line), Value::Null];
                row.extend(std::iter::repeat_n(Value::Null, 6));
                row.push(json!(format!("{}: {err}", err.name())));
                data.push(row);
            }
        }
    }
    let mut columns = vec!["line", "sheaf"];
    columns.extend(COHOM_COLUMNS);
    columns.push("error");
    let mut doc = Doc::new("batch");
    doc.input("threefold", loaded.x.name.as_str());
    doc.rows(
        Rows {
            key: "rows",
            columns,
            data,
        },
        "bott+lesChase; chi by hrr",
    );
    Ok((doc, all_ok))
}

fn run(cli: &Cli) -> Outcome<(Doc, bool)> {
    let doc = match &cli.command {
        Command::Invariants(a) => invariants(a)?,
        Command::Moduli { degree } => moduli(*degree)?,
        Command::Cohomology(a) => cohomology(a)?,
        Command::Spectrum {
            threefold,
            r,
            normalize,
        } => spectrum(threefold, *r, *normalize)?,
        Command::Subfoliation(a) => subfoliation(a)?,
        Command::Conncomp(a) => conncomp(a)?,
        Command::Presets {
            action: PresetsAction::List,
        } => presets()?,
        Command::Batch {
            file,
            twists,
            threefold,
            declare,
        } => {
            return batch(file, *twists, threefold, declare);
        }
    };
    Ok((doc, true))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((doc, ok)) => {
            print!("{}", doc.render(cli.format));
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Engine(e)) => {
            eprintln!("{}: {e}", e.name());
            ExitCode::from(3)
        }
    }
}
