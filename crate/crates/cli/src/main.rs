use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use lattice_pip::constructions::{ConstructionSpec, REFLEXIVE_COUNT};
use lattice_pip::ehrhart::is_pseudointegral;
use lattice_pip::verify::{run_suite, VerifyOptions, SUITES};
use lattice_pip::vieta::{enumerate_reduced, family, is_vieta_reduced, jump_forest, VietaSolution};
use lattice_pip::{count_report, RationalPolygon};
use num_bigint::BigInt;
use serde_json::{json, Value};

mod svg;

const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "lattice-pip", version, about = "Exact lattice-point geometry of rational polygons")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a polygon's Ehrhart function is a polynomial.
    /// Exit status: 0 polynomial, 1 not polynomial, 2 bad input.
    Certify {
        /// Polygon JSON file: {"vertices": [["p/q", "r/s"], ...]}
        file: PathBuf,
    },
    /// Count lattice points in a dilate of a polygon.
    Count {
        file: PathBuf,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        t: u64,
    },
    /// Solutions of (x+y+z)² = b·xyz.
    Vieta(VietaArgs),
    /// Build a polygon from one of the explicit families.
    Construct(ConstructArgs),
    /// Run a named verification suite.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct VietaArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=9))]
    b: u64,
    /// List the reduced solutions (the default).
    #[arg(long, conflicts_with_all = ["forest", "family"])]
    reduced: bool,
    /// All solutions with largest entry at most --max-z, linked by single jumps.
    #[arg(long, requires = "max_z", conflicts_with = "family")]
    forest: bool,
    #[arg(long)]
    max_z: Option<BigInt>,
    /// Reduced seed "x,y,z"; repeatedly jumps the middle entry.
    #[arg(long, value_name = "X,Y,Z")]
    family: Option<String>,
    #[arg(long, default_value_t = 4)]
    depth: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ConstructArgs {
    /// reflexive, example-b1, example-b2, t-xyz, fibonacci, scott-grid, p3, p4, p10
    #[arg(long)]
    family: String,
    /// Comma-separated integers; reflexive also accepts a range "a..b".
    #[arg(long, allow_hyphen_values = true)]
    params: String,
    /// Write an SVG picture to this path.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Write <name>.json and <name>.svg for each polygon into this directory.
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name, or "all".
    #[arg(long)]
    suite: String,
    #[arg(long)]
    bound: Option<u64>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    depth: Option<usize>,
    #[arg(long)]
    instances: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let started = Instant::now();
    let result = match cli.command {
        Command::Certify { file } => certify(&file),
        Command::Count { file, t } => count(&file, t),
        Command::Vieta(args) => vieta(&args),
        Command::Construct(args) => construct(&args),
        Command::Verify(args) => verify(&args),
    };
    log::info!("finished in {:.3?}", started.elapsed());
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn print_json(v: &Value) -> anyhow::Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, v)?;
    writeln!(out)?;
    Ok(())
}

fn read_polygon(file: &Path) -> anyhow::Result<RationalPolygon> {
    let text = fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    if text.trim().is_empty() {
        bail!("{} is empty", file.display());
    }
    RationalPolygon::from_json_str(&text).with_context(|| format!("parsing {}", file.display()))
}

fn certify(file: &Path) -> anyhow::Result<u8> {
    let p = read_polygon(file)?;
    let cert = is_pseudointegral(&p)?;
    let mut v = cert.to_json();
    v["vertices"] = serde_json::to_value(p.to_json())?["vertices"].clone();
    v["area"] = json!(lattice_pip::exact::rat_to_string(p.area()));
    v["denominator"] = json!(p.denominator().to_string());
    print_json(&v)?;
    Ok(if cert.is_pip { 0 } else { 1 })
}

fn count(file: &Path, t: u64) -> anyhow::Result<u8> {
    let p = read_polygon(file)?;
    print_json(&serde_json::to_value(count_report(&p, t))?)?;
    Ok(0)
}

fn parse_ints(s: &str) -> anyhow::Result<Vec<i64>> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| anyhow!("invalid integer {t:?} in {s:?}")))
        .collect()
}

fn solutions_table(rows: &[VietaSolution]) -> String {
    let mut out = format!("{:>3} {:>8} {:>8} {:>8}\n", "b", "x", "y", "z");
    for s in rows {
        out.push_str(&format!("{:>3} {:>8} {:>8} {:>8}\n", s.b, s.x, s.y, s.z));
    }
    out
}

fn vieta(args: &VietaArgs) -> anyhow::Result<u8> {
    if args.forest {
        let max_z = args.max_z.as_ref().expect("required by clap");
        let f = jump_forest(args.b, max_z)?;
        if args.json {
            print_json(&f.to_json())?;
        } else {
            println!("{} nodes, {} edges, {} roots", f.nodes.len(), f.edge_count(), f.roots.len());
            for (n, nbrs) in &f.adjacency {
                let keys: Vec<String> = nbrs.iter().map(VietaSolution::key).collect();
                println!("{:>20} -> {}", n.key(), keys.join("  "));
            }
        }
        return Ok(0);
    }
    if let Some(seed) = &args.family {
        let e = parse_ints(seed)?;
        if e.len() != 3 {
            bail!("--family expects x,y,z, got {seed:?}");
        }
        let s = VietaSolution::new(e[0], e[1], e[2])?;
        if s.b != BigInt::from(args.b) {
            bail!("seed {seed} has b = {}, not {}", s.b, args.b);
        }
        if !is_vieta_reduced(&s) {
            bail!("seed {seed} is not reduced (needs x ≤ y ≤ z ≤ x + y)");
        }
        let states = family(&s, args.depth)?;
        if args.json {
            print_json(&Value::Array(states.iter().map(|st| st.solution().to_json()).collect()))?;
        } else {
            println!("{:>3} {:>12} {:>12} {:>12}", "j", "x", "y_j", "z_j");
            for st in &states {
                println!("{:>3} {:>12} {:>12} {:>12}", st.j, st.x, st.y, st.z);
            }
        }
        return Ok(0);
    }
    let rows = enumerate_reduced(args.b)?;
    if args.json {
        print_json(&Value::Array(rows.iter().map(VietaSolution::to_json).collect()))?;
    } else {
        print!("{}", solutions_table(&rows));
    }
    Ok(0)
}

fn construct(args: &ConstructArgs) -> anyhow::Result<u8> {
    let specs: Vec<ConstructionSpec> = match args.params.split_once("..") {
        Some((a, b)) if args.family == "reflexive" => {
            let (a, b): (usize, usize) = (a.trim().parse()?, b.trim().parse()?);
            if a > b || b >= REFLEXIVE_COUNT {
                bail!("reflexive range {a}..{b} must satisfy 0 ≤ a ≤ b ≤ {}", REFLEXIVE_COUNT - 1);
            }
            (a..=b).map(ConstructionSpec::Reflexive).collect()
        }
        _ => vec![ConstructionSpec::parse(&args.family, &parse_ints(&args.params)?)?],
    };
    if specs.len() > 1 && args.out_dir.is_none() {
        bail!("a parameter range needs --out-dir");
    }
    let mut polygons = Vec::with_capacity(specs.len());
    for spec in &specs {
        polygons.push((spec.to_string(), spec.build()?));
    }
    if let Some(dir) = &args.out_dir {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for (name, p) in &polygons {
            let json = serde_json::to_string_pretty(&p.to_json())?;
            fs::write(dir.join(format!("{name}.json")), json + "\n")?;
            fs::write(dir.join(format!("{name}.svg")), svg::polygon_svg(p))?;
        }
        println!("wrote {} polygon(s) to {}", polygons.len(), dir.display());
    } else {
        print_json(&serde_json::to_value(polygons[0].1.to_json())?)?;
    }
    if let Some(path) = &args.svg {
        fs::write(path, svg::polygon_svg(&polygons[0].1)).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(0)
}

fn verify(args: &VerifyArgs) -> anyhow::Result<u8> {
    let opts = VerifyOptions {
        bound: args.bound,
        n: args.n,
        depth: args.depth,
        instances: args.instances,
        seed: args.seed,
    };
    let names: Vec<&str> = if args.suite == "all" { SUITES.to_vec() } else { vec![args.suite.as_str()] };
    let mut all_passed = true;
    let mut reports = Vec::new();
    for name in names {
        let rep = run_suite(name, &opts)?;
        all_passed &= rep.passed();
        if args.json {
            reports.push(rep.to_json());
        } else {
            println!("{rep}");
        }
    }
    if args.json {
        print_json(&Value::Array(reports))?;
    }
    Ok(if all_passed { 0 } else { 1 })
}
