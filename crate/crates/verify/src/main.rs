use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dlat_decomp::{check_property, Property};
use dlat_ground::build_structure;
use dlat_poset::io::PosetDocument;
use dlat_topology::Ring;
use dlat_verify::{
    build_object, compute_stat, export_object, homology_string, parse_params, run_identity, run_suite, IdentityReport,
    Limits, ObjectKind, Part, Result, Scope, Stat, StatReport, StatValue, VerifyError, CONVENTION, REGISTRY,
};

#[derive(Parser)]
#[command(name = "dlat", version, about = "Decomposition posets of finite lattices and formed spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScopeArg {
    All,
    Fast,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(clap::Args)]
struct PartArgs {
    /// Remove the minimum and the maximum.
    #[arg(long, conflicts_with = "redm")]
    proper: bool,
    /// Remove the maximum.
    #[arg(long)]
    redm: bool,
}

impl PartArgs {
    fn part(&self) -> Part {
        if self.proper {
            Part::Proper
        } else if self.redm {
            Part::Redm
        } else {
            Part::Whole
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build a ground structure and print a summary.
    Build {
        spec: String,
        /// Write the underlying poset as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute the Euler characteristic, homology or Möbius number of an object.
    Compute {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        object: String,
        #[arg(long)]
        stat: String,
        #[arg(long, default_value = "Z")]
        ring: String,
        #[command(flatten)]
        part: PartArgs,
    },
    /// Check LI, EX, CM, E1E2 or UNIQUE.
    Check {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        property: String,
    },
    /// Run a named identity with key=value parameters.
    Verify {
        identity: Option<String>,
        params: Vec<String>,
        /// List the registry.
        #[arg(long)]
        list: bool,
    },
    /// Run the acceptance matrix.
    Suite {
        #[arg(long, value_enum, default_value = "all")]
        scope: ScopeArg,
    },
    /// Write an object (or its homology) as JSON or a Hasse diagram in DOT.
    Export {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        object: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Export the homology of the object instead of the object.
        #[arg(long)]
        homology: bool,
        #[arg(long, default_value = "Z")]
        ring: String,
        #[command(flatten)]
        part: PartArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn write_out(path: &Option<PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| VerifyError::Io {
            path: p.display().to_string(),
            reason: e.to_string(),
        }),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn json_line(value: &impl serde::Serialize) {
    println!("{}", serde_json::to_string(value).expect("reports serialize"));
}

fn ring(s: &str) -> Result<Ring> {
    s.parse().map_err(VerifyError::Usage)
}

fn print_identity(r: &IdentityReport) {
    println!("{:<22} {}", "identity", r.identity);
    let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    println!("{:<22} {}", "parameters", params.join(" "));
    for (k, v) in &r.computed {
        let f = r.formula.get(k).map(String::as_str).unwrap_or("-");
        println!("  {k:<30} computed {v:<24} formula {f}");
    }
    for (k, f) in r.formula.iter().filter(|(k, _)| !r.computed.contains_key(*k)) {
        println!("  {k:<30} computed {:<24} formula {f}", "-");
    }
    println!("{:<22} {} ({} ms)", "verdict", if r.pass { "pass" } else { "FAIL" }, r.elapsed_ms);
    println!("{}", r.to_json());
}

fn run(cli: Cli) -> Result<bool> {
    let limits = Limits::from_env();
    match cli.command {
        Command::Build { spec, out } => {
            let gs = build_structure(&spec)?;
            println!("{:<12} {}", "structure", gs.name());
            println!("{:<12} {}", "kind", gs.kind());
            println!("{:<12} {}", "elements", gs.len());
            println!("{:<12} {}", "rank", gs.rank());
            println!("{:<12} {}", "atoms", gs.atoms().len());
            println!("{:<12} {}", "bases", gs.atom_bases().is_some());
            json_line(&serde_json::json!({
                "structure": gs.name(),
                "kind": gs.kind(),
                "elements": gs.len(),
                "rank": gs.rank(),
                "atoms": gs.atoms().len(),
                "metadata": gs.metadata(),
            }));
            if let Some(path) = out {
                let doc = PosetDocument::from_poset(gs.name(), gs.poset());
                write_out(&Some(path), &doc.to_json())?;
            }
            Ok(true)
        }
        Command::Compute {
            spec,
            object,
            stat,
            ring: r,
            part,
        } => {
            let gs = build_structure(&spec)?;
            let kind: ObjectKind = object.parse()?;
            let stat: Stat = stat.parse()?;
            let r = ring(&r)?;
            let built = build_object(&gs, kind, &limits.budget(), limits.faces)?;
            let (size, value) = compute_stat(&built, part.part(), stat, r, limits.faces)?;
            let mut report = StatReport {
                structure: gs.name().to_string(),
                object: kind.to_string(),
                part: format!("{:?}", part.part()).to_lowercase(),
                size,
                euler: None,
                mobius: None,
                homology: None,
                convention: CONVENTION,
            };
            println!("{:<12} {}{}", "object", kind, part.part().suffix());
            println!("{:<12} {}", "structure", gs.name());
            println!("{:<12} {}", "size", size);
            match value {
                StatValue::Euler(e) => {
                    println!("{:<12} {e}", "euler");
                    report.euler = Some(e);
                }
                StatValue::Mobius(m) => {
                    println!("{:<12} {m}", "mobius");
                    report.mobius = Some(m);
                }
                StatValue::Homology(h) => {
                    println!("{:<12} {} over {}", "homology", homology_string(&h), h.ring);
                    println!("{:<12} {}", "euler", h.euler);
                    report.homology = Some(h);
                }
            }
            json_line(&report);
            Ok(true)
        }
        Command::Check { spec, property } => {
            let gs = build_structure(&spec)?;
            let property: Property = property
                .parse()
                .map_err(|_| VerifyError::Usage(format!("unknown property {property:?}")))?;
            let report = check_property(&gs, property, &limits.budget())?;
            println!("{:<12} {}", "structure", report.structure);
            println!("{:<12} {}", "property", property.as_str());
            println!("{:<12} {}", "holds", report.holds);
            println!("{:<12} {}", "instances", report.instances);
            if let Some(w) = &report.witness {
                println!("{:<12} {w}", "witness");
            }
            println!("{}", report.to_json());
            Ok(true)
        }
        Command::Verify { identity, params, list } => {
            if list {
                for i in REGISTRY {
                    let defaults: Vec<String> = i.defaults.iter().map(|(k, v)| format!("{k}={v}")).collect();
                    println!("{:<22} [{}] {}", i.name, defaults.join(" "), i.summary);
                }
                return Ok(true);
            }
            let name = identity.ok_or_else(|| VerifyError::Usage("missing identity name".into()))?;
            let params: BTreeMap<String, String> = parse_params(&params)?;
            let report = run_identity(&name, &params, &limits)?;
            print_identity(&report);
            Ok(report.pass)
        }
        Command::Suite { scope } => {
            let scope = match scope {
                ScopeArg::All => Scope::All,
                ScopeArg::Fast => Scope::Fast,
            };
            let report = run_suite(scope, &limits);
            for c in &report.criteria {
                for k in &c.cases {
                    println!("  [{}] {:<4} {} ({} ms): {}", c.id, if k.pass { "ok" } else { "FAIL" }, k.case, k.elapsed_ms, k.detail);
                }
                println!("{:<4} criterion {:<12} {} ({} ms)", if c.pass { "PASS" } else { "FAIL" }, c.id, c.title, c.elapsed_ms);
            }
            for c in &report.criteria {
                for k in &c.cases {
                    json_line(k);
                }
            }
            json_line(&serde_json::json!({ "scope": report.scope, "pass": report.pass }));
            Ok(report.pass)
        }
        Command::Export {
            spec,
            object,
            format,
            homology,
            ring: r,
            part,
            out,
        } => {
            let gs = build_structure(&spec)?;
            let kind: ObjectKind = object.parse()?;
            let built = build_object(&gs, kind, &limits.budget(), limits.faces)?;
            let text = if homology {
                if matches!(format, Format::Dot) {
                    return Err(VerifyError::Usage("homology is exported as JSON only".into()));
                }
                match compute_stat(&built, part.part(), Stat::Homology, ring(&r)?, limits.faces)?.1 {
                    StatValue::Homology(h) => h.to_json(),
                    _ => unreachable!("homology requested"),
                }
            } else {
                export_object(&gs, kind, &built, part.part(), matches!(format, Format::Dot), limits.faces)?
            };
            write_out(&out, text.trim_end())?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_usage() { 2 } else { 1 })
        }
    }
}
