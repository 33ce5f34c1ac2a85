use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Value};

use jordan_kit::constants::{constants_report, StructureProfile};
use jordan_kit::group::{direct_product, Group, GroupDefinition, Subgroup, DEFAULT_CAP};
use jordan_kit::lab::{
    center, chermak_delgado_lattice, minimal_index_normal_abelian, sylow, ENUMERATION_LIMIT,
};
use jordan_kit::primitives::GroupElement;
use jordan_kit::survey::{
    fit_families, outcome, parse, profile_checks, render, run_survey, Catalog, Format, Outcome,
    PrimeChoice, SurveyOptions,
};
use jordan_kit::witness::{
    complement_by_cocycle, complement_by_search, conjugate_intersection_witness,
    quotient_witness_general, quotient_witness_pprime, schur_zassenhaus, ExtensionInstance,
    Witness, WitnessReport, SEARCH_BUDGET,
};

/// Exit status for a falsified bound.
const FALSIFIED: u8 = 2;

#[derive(Parser)]
#[command(name = "jordan-kit", version, about = "Finite-group witnesses for Jordan-type index bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Closure cap on group orders; overrides a group file's own cap.
    #[arg(long)]
    cap: Option<usize>,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed for randomized choices and sampled homomorphism checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Close a generator set and print order and digest.
    Closure {
        /// Group definition file.
        group: PathBuf,
        /// Also list every element.
        #[arg(long)]
        elements: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Oracle, Sylow and Chermak–Delgado analysis of one group.
    Analyze {
        group: PathBuf,
        #[arg(long, default_value_t = 0)]
        p: u64,
        /// Largest order the subgroup enumeration accepts.
        #[arg(long, default_value_t = ENUMERATION_LIMIT)]
        limit: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Build a witness and print its report.
    Witness {
        #[command(subcommand)]
        kind: WitnessKind,
    },
    /// Evaluate the constant formulas for a profile.
    Constants {
        /// Profile file.
        profile: PathBuf,
        /// Base constant J(n).
        #[arg(long = "jn")]
        j_n: BigUint,
        /// Base constant J'(n).
        #[arg(long = "jpn")]
        jp_n: BigUint,
        #[command(flatten)]
        common: Common,
    },
    /// Run the oracle and witnesses over a catalog.
    Survey {
        /// Catalog file; the bundled catalog when omitted.
        #[arg(long)]
        catalog: Option<PathBuf>,
        /// Comma-separated primes, or "entry" for each entry's own prime.
        #[arg(long, default_value = "entry", value_delimiter = ',')]
        p: Vec<String>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = RecordFormat::Jsonl)]
        format: RecordFormat,
        /// Groups larger than this get witnesses only.
        #[arg(long, default_value_t = ENUMERATION_LIMIT)]
        limit: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Fit the smallest family constant from survey records.
    Fit {
        records: PathBuf,
        /// Input format; guessed from the extension when omitted.
        #[arg(long, value_enum)]
        format: Option<RecordFormat>,
        /// Catalog whose profiles are checked against the fitted constants.
        #[arg(long)]
        catalog: Option<PathBuf>,
        /// Use the bundled catalog for profile checks.
        #[arg(long, conflicts_with = "catalog")]
        builtin: bool,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum RecordFormat {
    Jsonl,
    Csv,
}

impl From<RecordFormat> for Format {
    fn from(f: RecordFormat) -> Format {
        match f {
            RecordFormat::Jsonl => Format::Jsonl,
            RecordFormat::Csv => Format::Csv,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum GammaChoice {
    Full,
    Diagonal,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum Route {
    Auto,
    Pprime,
    General,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Auto,
    Cocycle,
    Search,
}

#[derive(Subcommand)]
enum WitnessKind {
    /// Witness for a subgroup of a direct product.
    Product {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        #[arg(long, value_enum, default_value_t = GammaChoice::Full)]
        gamma: GammaChoice,
        /// Random generators drawn for `--gamma random`.
        #[arg(long, default_value_t = 2)]
        gens: usize,
        #[arg(long, default_value_t = 0)]
        p: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Witness for the quotient of a group by a normal subgroup.
    Quotient {
        group: PathBuf,
        /// "center", "trivial", a JSON array of element literals, or a file holding one.
        #[arg(long)]
        kernel: String,
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value_t = Route::Auto)]
        route: Route,
        /// Bound for the p' route; defaults to the oracle index of the group.
        #[arg(long)]
        base_bound: Option<u64>,
        /// `J',e` to evaluate the decomposition bound on the general route.
        #[arg(long, value_delimiter = ',', num_args = 2)]
        decomposition: Option<Vec<u64>>,
        #[command(flatten)]
        common: Common,
    },
    /// Complement of a normal Hall subgroup.
    Sz {
        group: PathBuf,
        #[arg(long)]
        kernel: String,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        #[command(flatten)]
        common: Common,
    },
    /// Intersection of conjugates of a witness for a normal subgroup.
    ConjIntersect {
        group: PathBuf,
        /// The normal subgroup, in the same forms as `--kernel`.
        #[arg(long)]
        inner: String,
        /// Witness inside the inner subgroup; the inner oracle optimum when omitted.
        #[arg(long)]
        witness: Option<String>,
        #[arg(long, default_value_t = 0)]
        p: u64,
        #[command(flatten)]
        common: Common,
    },
}

impl Common {
    fn cap(&self) -> usize {
        self.cap.unwrap_or(DEFAULT_CAP)
    }
}

fn write_out(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_json(out: &Option<PathBuf>, value: &Value) -> Result<()> {
    write_out(out, &(serde_json::to_string_pretty(value)? + "\n"))
}

fn load_group(path: &Path, cap: Option<usize>) -> Result<Group> {
    let def = GroupDefinition::load(path)?;
    Ok(def.build(cap)?)
}

/// Resolves a subgroup argument.
fn subgroup_arg(g: &Group, arg: &str) -> Result<Subgroup> {
    let text = match arg {
        "center" => return Ok(center(g)),
        "trivial" => return Ok(Subgroup::trivial(g)),
        "whole" => return Ok(Subgroup::whole(g)),
        s if s.trim_start().starts_with('[') => s.to_string(),
        path => std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?,
    };
    let gens: Vec<GroupElement> = serde_json::from_str(&text).context("subgroup generators")?;
    Ok(Subgroup::from_elements(g, &gens)?)
}

fn report_exit(reports: &[&WitnessReport]) -> ExitCode {
    if reports.iter().any(|r| r.falsified()) {
        ExitCode::from(FALSIFIED)
    } else {
        ExitCode::SUCCESS
    }
}

/// Oracle optimum of `s` viewed as a group, as a subgroup of `s`'s parent.
fn oracle_inside(s: &Subgroup, p: u64) -> Result<Subgroup> {
    let (h, inclusion) = s.to_group();
    let best = minimal_index_normal_abelian(&h, p, h.order())?;
    Ok(inclusion.image_of_subgroup(&best.subgroup)?)
}

fn closure_cmd(group: &Path, elements: bool, c: &Common) -> Result<ExitCode> {
    let g = load_group(group, c.cap)?;
    let mut v = json!({
        "name": g.name(),
        "order": g.order(),
        "digest": g.digest(),
        "abelian": g.is_abelian(),
        "exponent": g.exponent(),
    });
    if elements {
        v["elements"] = serde_json::to_value(g.elements())?;
    }
    write_json(&c.out, &v)?;
    Ok(ExitCode::SUCCESS)
}

fn analyze_cmd(group: &Path, p: u64, limit: usize, c: &Common) -> Result<ExitCode> {
    let g = load_group(group, c.cap)?;
    let oracle = minimal_index_normal_abelian(&g, p, limit)?;
    let syl = sylow(&g, p);
    let (measure, lattice) = chermak_delgado_lattice(&g, limit)?;
    let m = lattice
        .iter()
        .skip(1)
        .try_fold(lattice[0].clone(), |acc, h| acc.intersect(h))?;
    let v = json!({
        "oracle": oracle.report(),
        "sylow": {"order": syl.subgroup.order(), "is_normal": syl.is_normal},
        "chermak_delgado": {
            "order": m.order(),
            "index": m.index(),
            "measure": measure,
            "lattice_size": lattice.len(),
            "generators": m.generator_elements(),
        },
    });
    write_json(&c.out, &v)?;
    Ok(ExitCode::SUCCESS)
}

fn witness_cmd(kind: &WitnessKind) -> Result<ExitCode> {
    match kind {
        WitnessKind::Product {
            left,
            right,
            gamma,
            gens,
            p,
            common,
        } => {
            let g1 = load_group(left, common.cap)?;
            let g2 = load_group(right, common.cap)?;
            let prod = direct_product(&g1, &g2, common.cap())?;
            let gamma = match gamma {
                GammaChoice::Full => Subgroup::whole(&prod.group),
                GammaChoice::Diagonal => prod.diagonal()?,
                GammaChoice::Random => Subgroup::random(&prod.group, *gens, common.seed),
            };
            let image1 = prod.proj_left.image_of_subgroup(&gamma)?;
            let image2 = prod.proj_right.image_of_subgroup(&gamma)?;
            let a1 = oracle_inside(&image1, *p)?;
            let a2 = oracle_inside(&image2, *p)?;
            let w = jordan_kit::witness::product_witness(&prod, &gamma, &a1, &a2, *p)?;
            finish(&common.out, &[w])
        }
        WitnessKind::Quotient {
            group,
            kernel,
            p,
            route,
            base_bound,
            decomposition,
            common,
        } => {
            let h = load_group(group, common.cap)?;
            let ext = ExtensionInstance::new(&h, subgroup_arg(&h, kernel)?)?;
            let best = minimal_index_normal_abelian(&h, *p, h.order())?;
            let base_bound = base_bound.unwrap_or(best.index);
            let decomposition = match decomposition.as_deref() {
                Some([j, e]) => Some((*j, u32::try_from(*e).context("decomposition exponent")?)),
                Some(_) => bail!("--decomposition takes J',e"),
                None => None,
            };
            let general = || quotient_witness_general(&ext, *p, &best.subgroup, decomposition);
            let witnesses = match route {
                Route::Pprime => vec![quotient_witness_pprime(&ext, *p, base_bound)?],
                Route::General => vec![general()?],
                Route::Auto => {
                    let mut ws = vec![general()?];
                    if let Ok(w) = quotient_witness_pprime(&ext, *p, base_bound) {
                        ws.push(w);
                    }
                    ws
                }
            };
            finish(&common.out, &witnesses)
        }
        WitnessKind::Sz {
            group,
            kernel,
            method,
            common,
        } => {
            let h = load_group(group, common.cap)?;
            let n = subgroup_arg(&h, kernel)?;
            let c = match method {
                Method::Auto => schur_zassenhaus(&h, &n)?,
                Method::Cocycle => complement_by_cocycle(&h, &n)?,
                Method::Search => complement_by_search(&h, &n, SEARCH_BUDGET)?,
            };
            let v = json!({
                "group_digest": h.digest(),
                "order": h.order(),
                "kernel_order": n.order(),
                "complement_order": c.order(),
                "meets_kernel_trivially": c.intersect(&n)?.is_trivial(),
                "generators": c.generator_elements(),
            });
            write_json(&common.out, &v)?;
            Ok(ExitCode::SUCCESS)
        }
        WitnessKind::ConjIntersect {
            group,
            inner,
            witness,
            p,
            common,
        } => {
            let g = load_group(group, common.cap)?;
            let inner = subgroup_arg(&g, inner)?;
            let a0 = match witness {
                Some(arg) => subgroup_arg(&g, arg)?,
                None => oracle_inside(&inner, *p)?,
            };
            let w = conjugate_intersection_witness(&g, &inner, &a0, *p)?;
            finish(&common.out, &[w])
        }
    }
}

fn finish(out: &Option<PathBuf>, witnesses: &[Witness]) -> Result<ExitCode> {
    let reports: Vec<&WitnessReport> = witnesses.iter().map(|w| &w.report).collect();
    let value = if reports.len() == 1 {
        serde_json::to_value(reports[0])?
    } else {
        serde_json::to_value(&reports)?
    };
    write_json(out, &value)?;
    Ok(report_exit(&reports))
}

fn load_catalog(path: &Option<PathBuf>, cap: usize) -> Result<Catalog> {
    Ok(match path {
        Some(p) => Catalog::load(p, cap)?,
        None => Catalog::builtin(cap)?,
    })
}

fn run() -> Result<ExitCode> {
    let cli = Cli::parse();
    match &cli.command {
        Command::Closure {
            group,
            elements,
            common,
        } => closure_cmd(group, *elements, common),
        Command::Analyze {
            group,
            p,
            limit,
            common,
        } => analyze_cmd(group, *p, *limit, common),
        Command::Witness { kind } => witness_cmd(kind),
        Command::Constants {
            profile,
            j_n,
            jp_n,
            common,
        } => {
            let text = std::fs::read_to_string(profile)
                .with_context(|| format!("reading {}", profile.display()))?;
            let profile = StructureProfile::from_json(&text)?;
            let report = constants_report(&profile, j_n, jp_n)?;
            write_json(&common.out, &serde_json::to_value(&report)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Survey {
            catalog,
            p,
            jobs,
            format,
            limit,
            common,
        } => {
            let catalog = load_catalog(catalog, common.cap())?;
            let primes = p
                .iter()
                .map(|s| s.parse::<PrimeChoice>())
                .collect::<Result<Vec<_>, _>>()?;
            let options = SurveyOptions {
                primes,
                jobs: *jobs,
                oracle_limit: *limit,
            };
            let records = run_survey(&catalog, &options)?;
            write_out(&common.out, &render(&records, (*format).into())?)?;
            Ok(match outcome(&records) {
                Outcome::Clean => ExitCode::SUCCESS,
                Outcome::EntryErrors => {
                    for r in records.iter().filter(|r| r.error.is_some()) {
                        eprintln!("{} (p = {}): {}", r.name, r.p, r.error.as_deref().unwrap_or(""));
                    }
                    ExitCode::FAILURE
                }
                Outcome::Falsified => ExitCode::from(FALSIFIED),
            })
        }
        Command::Fit {
            records,
            format,
            catalog,
            builtin,
            common,
        } => {
            let text = std::fs::read_to_string(records)
                .with_context(|| format!("reading {}", records.display()))?;
            let format = match format {
                Some(f) => (*f).into(),
                None if records.extension().is_some_and(|e| e == "csv") => Format::Csv,
                None => Format::Jsonl,
            };
            let records = parse(&text, format)?;
            let fits = fit_families(&records);
            if fits.is_empty() {
                return Err(anyhow!("no family has a record with an exact optimum"));
            }
            let mut v = json!({ "families": fits });
            let mut ok = true;
            let catalog = match (catalog, builtin) {
                (Some(_), _) => Some(load_catalog(catalog, common.cap())?),
                (None, true) => Some(load_catalog(&None, common.cap())?),
                (None, false) => None,
            };
            if let Some(catalog) = catalog {
                let checks = profile_checks(&catalog, &records, &fits);
                ok = checks.iter().all(|c| c.holds);
                v["profile_checks"] = serde_json::to_value(&checks)?;
            }
            write_json(&common.out, &v)?;
            Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(FALSIFIED)
            })
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
