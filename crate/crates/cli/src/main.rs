use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use galcount::catalog::{catalog_group, group_catalog};
use galcount::census::corpus::{corpus_to_csv, corpus_to_json};
use galcount::census::fit::ExponentFit;
use galcount::census::{
    census, classify, exponent_fit, generate_corpus, mu_oracle, records_from_csv, records_to_csv, records_to_json,
    verify_lemmas, ActionCatalog, CensusOptions, Classifier, Suite, VerifyParams,
};
use galcount::families::{family_builder, minimal_faithful_degree, FamilyInput};
use galcount::families::FamilyBundle;
use galcount::galois::compute::{galois_group, GaloisResult, DEFAULT_MAX_DEGREE};
use galcount::iso::action_isomorphism;
use galcount::galois::resolvent::splitting_factorization;
use galcount::poly::{BoxMode, IntPoly};
use galcount::Error;

#[derive(Parser)]
#[command(name = "galcount", version, about = "Galois group censuses over boxes of monic integer polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Out {
    Csv,
    Json,
}

#[derive(Args)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value = "csv")]
    out: Out,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest polynomial degree handed to the Galois engine.
    #[arg(long, default_value_t = DEFAULT_MAX_DEGREE)]
    degree_cap: usize,
    /// Action catalog file; defaults to the transitive groups of degree n.
    #[arg(long)]
    catalog: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Count B_n(H) by Galois action for each height.
    Census {
        #[arg(long)]
        n: usize,
        #[arg(long = "height", required = true)]
        heights: Vec<f64>,
        /// `exhaustive` or `sample:COUNT`.
        #[arg(long, default_value = "exhaustive")]
        mode: String,
        /// Largest number of polynomials to visit per height.
        #[arg(long, default_value_t = 50_000_000)]
        budget: u128,
        #[arg(long)]
        threads: Option<usize>,
        /// Write runtime_ms as 0 so repeated runs are byte-identical.
        #[arg(long)]
        no_timing: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Classify one polynomial, e.g. `x^3-2`.
    Classify {
        poly: String,
        /// Also print the splitting-field fingerprint.
        #[arg(long)]
        with_field: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Factor the splitting field of a polynomial through a stable family.
    Factorize {
        poly: String,
        /// Family builder: homogeneous, tuple, primitive or regular.
        #[arg(long, default_value = "homogeneous")]
        family: String,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Run invariant suites: wreath, fields, families or all.
    VerifyLemmas {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 20)]
        cubics: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Minimal faithful permutation degree of catalog groups.
    Mindeg {
        /// Group name such as C6 or Q8; every catalog group when absent.
        #[arg(long)]
        group: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Fit log count against log H for each label of a census CSV.
    Fit {
        input: PathBuf,
        #[arg(long)]
        label: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Generate polynomials realizing action templates and check each.
    Generate {
        /// Template such as tuple(3,2), subset(4,2), primitive(2,2,1), regular(C3).
        #[arg(long = "template", required = true)]
        templates: Vec<String>,
        /// Instances per template and seed height.
        #[arg(long, default_value_t = 4)]
        count: usize,
        /// Seed heights.
        #[arg(long = "height", default_values_t = vec![10.0])]
        heights: Vec<f64>,
        #[command(flatten)]
        common: Common,
    },
}

enum Failure {
    Verification(String),
    Usage(String),
    Limit(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } | Error::DegreeTooLarge { .. } => Failure::Limit(e.to_string()),
            Error::Parse(_) | Error::InvalidParameters(_) | Error::Unknown { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Verification(e.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn parse_mode(text: &str, seed: u64) -> Result<BoxMode, Failure> {
    if text == "exhaustive" {
        return Ok(BoxMode::Exhaustive);
    }
    text.strip_prefix("sample:")
        .and_then(|c| c.parse().ok())
        .map(|count| BoxMode::Sample { count, seed })
        .ok_or_else(|| Failure::Usage(format!("mode must be `exhaustive` or `sample:COUNT`, got `{text}`")))
}

fn load_catalog(common: &Common, n: usize) -> Result<ActionCatalog, Failure> {
    match &common.catalog {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            Ok(ActionCatalog::parse(&text)?)
        }
        None if (1..=8).contains(&n) => Ok(ActionCatalog::transitive(n)?),
        None => Ok(ActionCatalog::default()),
    }
}

fn parse_poly(text: &str) -> Result<IntPoly, Failure> {
    let f = IntPoly::parse(text)?;
    if !f.is_monic() || f.degree() == 0 {
        return Err(Failure::Usage(format!("`{text}` is not monic of positive degree")));
    }
    Ok(f)
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("json value") + "\n"
}

fn fits_to_csv(fits: &[ExponentFit]) -> String {
    let mut out = String::from("label,slope,stderr,intercept,h_min,h_max,points\n");
    for f in fits {
        out.push_str(&format!(
            "{},{:.6},{:.6},{:.6},{},{},{}\n",
            f.label, f.slope, f.stderr, f.intercept, f.h_range.0, f.h_range.1, f.points
        ));
    }
    out
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Census { n, heights, mode, budget, threads, no_timing, common } => {
            let mode = parse_mode(&mode, common.seed)?;
            let catalog = load_catalog(&common, n)?;
            let mut opts = CensusOptions { budget, timing: !no_timing, degree_cap: common.degree_cap, ..Default::default() };
            if let Some(t) = threads {
                opts.threads = t.max(1);
            }
            let records = census(n, &heights, mode, &catalog, &opts)?;
            Ok(match common.out {
                Out::Csv => records_to_csv(&records)?,
                Out::Json => records_to_json(&records)? + "\n",
            })
        }
        Command::Classify { poly, with_field, common } => {
            let f = parse_poly(&poly)?;
            let catalog = load_catalog(&common, f.degree())?;
            let c = if with_field {
                classify(&f, &catalog, true)?
            } else {
                Classifier::new(&catalog, common.degree_cap).classify(&f)?
            };
            let field = c.fingerprint.as_ref().map(|p| p.to_string()).unwrap_or_default();
            let order = c.group_order.map(|o| o.to_string()).unwrap_or_default();
            Ok(match common.out {
                Out::Csv => format!("poly,label,group_order,field\n{f},{},{order},{field}\n", c.label),
                Out::Json => pretty(&json!({"poly": f.to_string(), "label": c.label, "group_order": c.group_order, "field": c.fingerprint})),
            })
        }
        Command::Factorize { poly, family, k, common } => {
            let f = parse_poly(&poly)?;
            let res = galois_group(&f, common.degree_cap)?;
            let bundle = factor_bundle(&res, &family, k)?;
            let cert = splitting_factorization(&res, &bundle)?;
            let text = match common.out {
                Out::Json => pretty(&cert.to_json()),
                Out::Csv => {
                    let mut s = String::from("orbit,nu,q,degree_ok,galois_ok,ratio\n");
                    for c in &cert.factors {
                        s.push_str(&format!("{},{},{},{},{},{:.6e}\n", c.orbit, c.nu, c.q, c.degree_ok, c.galois_ok, c.measured_ratio));
                    }
                    s
                }
            };
            if cert.all_ok() {
                Ok(text)
            } else {
                print!("{text}");
                Err(Failure::Verification("certificate check failed".into()))
            }
        }
        Command::VerifyLemmas { suite, cubics, common } => {
            let suite = Suite::parse(&suite)?;
            let params = VerifyParams { seed: common.seed.max(1), cubics, ..Default::default() };
            let report = verify_lemmas(suite, &params);
            let text = match common.out {
                Out::Json => pretty(&serde_json::to_value(&report).expect("report serializes")),
                Out::Csv => report.to_string(),
            };
            if report.passed() {
                Ok(text)
            } else {
                print!("{text}");
                Err(Failure::Verification(format!("{} checks failed", report.failures().len())))
            }
        }
        Command::Mindeg { group, common } => {
            let groups = match group {
                Some(name) => vec![catalog_group(&name)?],
                None => group_catalog(),
            };
            let mut rows = Vec::new();
            let mut mismatch = false;
            for g in groups {
                let m = minimal_faithful_degree(&g.group)?;
                let oracle = mu_oracle(&g.group)?;
                mismatch |= oracle != m.degree;
                let indices: Vec<usize> = m.subgroups.iter().map(|h| g.group.order() / h.order()).collect();
                rows.push(json!({"group": g.name, "order": g.group.order(), "mu": m.degree, "oracle": oracle, "indices": indices}));
            }
            let text = match common.out {
                Out::Json => pretty(&json!(rows)),
                Out::Csv => {
                    let mut s = String::from("group,order,mu,oracle,indices\n");
                    for r in &rows {
                        let idx: Vec<String> = r["indices"].as_array().unwrap().iter().map(|v| v.to_string()).collect();
                        s.push_str(&format!("{},{},{},{},{}\n", r["group"].as_str().unwrap(), r["order"], r["mu"], r["oracle"], idx.join(";")));
                    }
                    s
                }
            };
            if mismatch {
                print!("{text}");
                return Err(Failure::Verification("search and oracle disagree".into()));
            }
            Ok(text)
        }
        Command::Fit { input, label, common } => {
            let text = std::fs::read_to_string(&input)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", input.display())))?;
            let records = records_from_csv(&text)?;
            let mut labels: Vec<String> = Vec::new();
            for r in &records {
                if !labels.contains(&r.label) && label.as_ref().map_or(true, |l| *l == r.label) {
                    labels.push(r.label.clone());
                }
            }
            if labels.is_empty() {
                return Err(Failure::Usage("no matching records".into()));
            }
            let mut fits = Vec::new();
            for l in &labels {
                let rs: Vec<_> = records.iter().filter(|r| &r.label == l).cloned().collect();
                match exponent_fit(&rs) {
                    Ok(f) => fits.push(f),
                    Err(Error::InsufficientData) if label.is_none() => continue,
                    Err(e) => return Err(e.into()),
                }
            }
            Ok(match common.out {
                Out::Csv => fits_to_csv(&fits),
                Out::Json => pretty(&json!(fits
                    .iter()
                    .map(|f| json!({"label": f.label, "slope": f.slope, "stderr": f.stderr, "intercept": f.intercept, "h_range": [f.h_range.0, f.h_range.1], "points": f.points}))
                    .collect::<Vec<_>>())),
            })
        }
        Command::Generate { templates, count, heights, common } => {
            let refs: Vec<&str> = templates.iter().map(|s| s.as_str()).collect();
            let entries = generate_corpus(&refs, count, &heights, common.seed)?;
            let text = match common.out {
                Out::Csv => corpus_to_csv(&entries)?,
                Out::Json => corpus_to_json(&entries)? + "\n",
            };
            if entries.iter().all(|e| e.ok()) {
                Ok(text)
            } else {
                print!("{text}");
                Err(Failure::Verification("some generated instances failed their checks".into()))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Limit(msg)) => {
            eprintln!("limit exceeded: {msg}");
            ExitCode::from(3)
        }
    }
}

/// A bundle whose base action is the Galois action of `res`. For subsets and
/// tuples with `k > 1` the acting group on `[m]` is searched among the
/// transitive groups of each degree.
fn factor_bundle(res: &GaloisResult, family: &str, k: usize) -> Result<FamilyBundle, Failure> {
    let builder = family_builder(family)?;
    if k == 1 || !matches!(family, "homogeneous" | "tuple") {
        return Ok(builder.build(&FamilyInput::new(Arc::clone(res.perm_group()), k))?);
    }
    let order = res.perm_group().order();
    let points = |m: usize| -> usize {
        let falling: usize = (m + 1 - k..=m).product();
        if family == "tuple" {
            falling
        } else {
            falling / (1..=k).product::<usize>()
        }
    };
    for m in (k.max(2)..=8).filter(|&m| points(m) == res.poly.degree()) {
        for entry in ActionCatalog::transitive(m)?.entries {
            if entry.group.order() != order {
                continue;
            }
            let Ok(bundle) = builder.build(&FamilyInput::new(entry.group, k)) else { continue };
            if action_isomorphism(&bundle.base_action, &res.group).is_some() {
                return Ok(bundle);
            }
        }
    }
    Err(Error::MismatchedAction(format!("no transitive group acts on {k}-{} as the Galois group does", if family == "tuple" { "tuples" } else { "subsets" })).into())
}
