//! `mpp`: exact computations on marked poset polyhedra.

mod error;
mod sweep;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use mpp_core::degeneration::{degeneration_map, hibi_li_check, DegenerationPair};
use mpp_core::family::{
    eliminate_redundancy, hrep_chain_order, hrep_general, is_tame, project, Parameter, Partition,
};
use mpp_core::geometry::{
    ehrhart, lattice_points, vertices, vertices_bruteforce, FaceLattice, HRep,
};
use mpp_core::io::{read_parameter, read_partition, read_poset, to_json, PosetFile};
use mpp_core::rational::int;
use mpp_core::tropical::{generic_vertices, ideal_chain_cells, tropical_subdivision};
use mpp_core::MarkedPoset;

use error::CliError;

#[derive(Parser)]
#[command(
    name = "mpp",
    version,
    about = "Exact computations on marked poset polyhedra"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inequality description of a member of the family.
    Hrep {
        #[command(flatten)]
        target: Target,
        /// Remove redundant inequalities and detect implicit equations.
        #[arg(long)]
        irredundant: bool,
        /// Drop the marked coordinates.
        #[arg(long)]
        projected: bool,
    },
    /// Vertices in the coordinates of the unmarked elements.
    Vertices {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum, default_value_t = Method::Dd)]
        method: Method,
    },
    /// f-vector and face lattice summary.
    Fvector {
        #[command(flatten)]
        target: Target,
    },
    /// Lattice-point counts of dilates and the interpolated Ehrhart polynomial.
    Ehrhart {
        #[command(flatten)]
        target: Target,
        /// Largest dilation factor (defaults to the dimension).
        #[arg(long)]
        dilations: Option<u32>,
    },
    /// Lattice points of a dilate.
    LatticePoints {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 1)]
        dilation: u32,
    },
    /// Tropical subdivision of the marked order polytope.
    Subdivision {
        poset: PathBuf,
        /// Also list the cells of the subdivision by chains of order ideals.
        #[arg(long)]
        ideal_chains: bool,
    },
    /// Face map between two members of the family.
    Degenerate {
        poset: PathBuf,
        /// Source parameter: a JSON file or one of generic, zero, one.
        #[arg(long)]
        from: String,
        /// Target parameter: a JSON file or one of generic, zero, one.
        #[arg(long)]
        to: String,
    },
    /// Consolidated checks over the parameter cube.
    Sweep {
        poset: PathBuf,
        #[arg(long, value_enum, required = true, num_args = 1..)]
        check: Vec<sweep::Check>,
        /// Largest dilation for the Ehrhart check.
        #[arg(long, default_value_t = 4)]
        dilations: u32,
    },
    /// Contract constant intervals and remove redundant covers.
    Regularize { poset: PathBuf },
    /// Whether every chain-order description is facet-defining.
    Tame { poset: PathBuf },
    /// Compare the f-vectors of two chain-order polytopes with nested chain sets.
    HibiLi {
        poset: PathBuf,
        /// Partition with the smaller chain set.
        #[arg(long)]
        from: PathBuf,
        /// Partition with the larger chain set.
        #[arg(long)]
        to: PathBuf,
    },
}

#[derive(Args)]
struct Target {
    poset: PathBuf,
    /// Parameter: a JSON file or one of generic, zero, one. Defaults to zero.
    #[arg(long, conflicts_with = "partition")]
    t: Option<String>,
    /// Partition file selecting a chain-order polytope.
    #[arg(long)]
    partition: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Dd,
    Tropical,
    Bruteforce,
}

/// A loaded poset with the selected member of the family.
struct Instance {
    poset: MarkedPoset,
    parameter: Parameter,
    partition: Option<Partition>,
}

impl Instance {
    fn load(target: &Target) -> Result<Instance, CliError> {
        let poset = read_poset(&target.poset)?;
        if let Some(path) = &target.partition {
            let part = read_partition(path, &poset)?;
            return Ok(Instance {
                parameter: part.parameter(),
                partition: Some(part),
                poset,
            });
        }
        let parameter = parse_parameter(target.t.as_deref().unwrap_or("zero"), &poset)?;
        Ok(Instance {
            poset,
            parameter,
            partition: None,
        })
    }

    fn full_hrep(&self) -> Result<HRep, CliError> {
        Ok(match &self.partition {
            Some(part) => hrep_chain_order(&self.poset, part)?,
            None => hrep_general(&self.poset, &self.parameter),
        })
    }

    fn projected_hrep(&self) -> Result<HRep, CliError> {
        Ok(project(&self.poset, &self.full_hrep()?)?)
    }

    fn coords(&self) -> Vec<String> {
        self.poset.names(&self.poset.unmarked())
    }

    fn header(&self) -> Value {
        let mut h = json!({ "parameter": self.parameter, "coords": self.coords() });
        if let Some(part) = &self.partition {
            h["partition"] = json!(part);
        }
        h
    }
}

pub(crate) fn parse_parameter(spec: &str, poset: &MarkedPoset) -> Result<Parameter, CliError> {
    Ok(match spec {
        "generic" => Parameter::generic(poset),
        "zero" => Parameter::zero(poset),
        "one" => Parameter::one(poset),
        path => read_parameter(Path::new(path), poset)?,
    })
}

fn merge(mut header: Value, body: Value) -> Value {
    if let (Some(h), Value::Object(b)) = (header.as_object_mut(), body) {
        h.extend(b);
    }
    header
}

fn cmd_hrep(target: &Target, irredundant: bool, projected: bool) -> Result<Value, CliError> {
    let inst = Instance::load(target)?;
    let mut h = if projected {
        inst.projected_hrep()?
    } else {
        inst.full_hrep()?
    };
    if irredundant {
        h = eliminate_redundancy(&h)?;
    }
    eprintln!(
        "{} equations, {} inequalities",
        h.equations().count(),
        h.inequality_count()
    );
    Ok(merge(inst.header(), json!({ "hrep": h })))
}

fn cmd_vertices(target: &Target, method: Method) -> Result<Value, CliError> {
    let inst = Instance::load(target)?;
    let (verts, rays) = match method {
        Method::Tropical => (generic_vertices(&inst.poset, &inst.parameter)?, Vec::new()),
        Method::Dd => {
            let v = vertices(&inst.projected_hrep()?)?.sorted();
            (v.vertices, v.rays)
        }
        Method::Bruteforce => {
            let v = vertices_bruteforce(&inst.projected_hrep()?)?.sorted();
            (v.vertices, v.rays)
        }
    };
    eprintln!("{} vertices, {} rays", verts.len(), rays.len());
    let v = mpp_core::geometry::VRep {
        vertices: verts,
        rays,
    };
    Ok(merge(
        inst.header(),
        json!({ "count": v.vertices.len(), "vrep": v }),
    ))
}

fn lattice_of(h: &HRep) -> Result<FaceLattice, CliError> {
    Ok(FaceLattice::build(h, &vertices(h)?)?)
}

fn cmd_fvector(target: &Target) -> Result<Value, CliError> {
    let inst = Instance::load(target)?;
    let l = lattice_of(&inst.projected_hrep()?)?;
    eprintln!("dim {}, f-vector {:?}", l.dim(), l.f_vector());
    Ok(merge(
        inst.header(),
        json!({ "dim": l.dim(), "f_vector": l.f_vector(), "faces": l.summaries(), "vertices": vertex_strings(&l.vertices) }),
    ))
}

pub(crate) fn vertex_strings(points: &[Vec<mpp_core::Rat>]) -> Vec<Vec<String>> {
    points
        .iter()
        .map(|p| p.iter().map(mpp_core::rational::format_rat).collect())
        .collect()
}

fn cmd_ehrhart(target: &Target, dilations: Option<u32>) -> Result<Value, CliError> {
    let inst = Instance::load(target)?;
    let h = inst.projected_hrep()?;
    let dim = lattice_of(&h)?.dim().max(0) as u32;
    let e = ehrhart(&h, dilations.unwrap_or(dim))?;
    eprintln!("counts {:?}", e.counts);
    Ok(merge(inst.header(), json!({ "ehrhart": e })))
}

fn cmd_lattice_points(target: &Target, dilation: u32) -> Result<Value, CliError> {
    let inst = Instance::load(target)?;
    let h = inst.projected_hrep()?.dilate(&int(dilation as i64));
    let pts = lattice_points(&h)?;
    eprintln!("{} lattice points", pts.len());
    Ok(merge(
        inst.header(),
        json!({ "dilation": dilation, "count": pts.len(), "points": vertex_strings(&pts) }),
    ))
}

fn cmd_subdivision(path: &Path, ideal: bool) -> Result<Value, CliError> {
    let poset = read_poset(path)?;
    let sub = tropical_subdivision(&poset)?;
    eprintln!("{} cells, {} vertices", sub.cells.len(), sub.vertices.len());
    let mut out = json!({ "subdivision": sub, "hyperplanes": sub.arrangement.hyperplanes.iter().map(|h| {
        json!({ "label": h.label, "support": poset.names(&h.support) })
    }).collect::<Vec<_>>() });
    if ideal {
        out["ideal_chain_cells"] = json!(ideal_chain_cells(&poset)?);
    }
    Ok(out)
}

fn cmd_degenerate(path: &Path, from: &str, to: &str) -> Result<Value, CliError> {
    let poset = read_poset(path)?;
    let pair = DegenerationPair::new(
        &poset,
        parse_parameter(from, &poset)?,
        parse_parameter(to, &poset)?,
    )?;
    let m = degeneration_map(&poset, &pair)?;
    let check = m.check();
    eprintln!(
        "f-vectors {:?} -> {:?}: {}",
        m.source.f_vector(),
        m.target.f_vector(),
        if check.passed() { "PASS" } else { "FAIL" }
    );
    Ok(json!({
        "pair": pair,
        "coords": poset.names(&poset.unmarked()),
        "source": { "f_vector": m.source.f_vector(), "faces": m.source.summaries(), "vertices": vertex_strings(&m.source.vertices) },
        "target": { "f_vector": m.target.f_vector(), "faces": m.target.summaries(), "vertices": vertex_strings(&m.target.vertices) },
        "map": m.pairs(),
        "check": check,
        "status": if check.passed() { "PASS" } else { "FAIL" },
    }))
}

fn cmd_regularize(path: &Path) -> Result<Value, CliError> {
    let poset = read_poset(path)?;
    let (reg, map) = poset.regularize()?;
    eprintln!(
        "{} -> {} elements, {} -> {} covers",
        poset.len(),
        reg.len(),
        poset.cover_count(),
        reg.cover_count()
    );
    Ok(json!({ "poset": PosetFile::from_poset(&reg), "map": map }))
}

fn cmd_tame(path: &Path) -> Result<Value, CliError> {
    let poset = read_poset(path)?;
    let tame = is_tame(&poset)?;
    eprintln!("tame: {tame}");
    Ok(json!({
        "tame": tame,
        "ranked": poset.is_ranked(),
        "regular": poset.is_regular(),
        "status": if tame { "PASS" } else { "FAIL" },
    }))
}

fn cmd_hibi_li(path: &Path, from: &Path, to: &Path) -> Result<Value, CliError> {
    let poset = read_poset(path)?;
    let a = read_partition(from, &poset)?;
    let b = read_partition(to, &poset)?;
    let r = hibi_li_check(&poset, &a, &b)?;
    eprintln!("{:?} vs {:?}", r.f_smaller, r.f_larger);
    Ok(json!({ "report": r, "status": if r.dominated { "PASS" } else { "FAIL" } }))
}

fn run(cli: Cli) -> Result<Value, CliError> {
    match &cli.command {
        Command::Hrep {
            target,
            irredundant,
            projected,
        } => cmd_hrep(target, *irredundant, *projected),
        Command::Vertices { target, method } => cmd_vertices(target, *method),
        Command::Fvector { target } => cmd_fvector(target),
        Command::Ehrhart { target, dilations } => cmd_ehrhart(target, *dilations),
        Command::LatticePoints { target, dilation } => cmd_lattice_points(target, *dilation),
        Command::Subdivision {
            poset,
            ideal_chains,
        } => cmd_subdivision(poset, *ideal_chains),
        Command::Degenerate { poset, from, to } => cmd_degenerate(poset, from, to),
        Command::Sweep {
            poset,
            check,
            dilations,
        } => sweep::run(poset, check, *dilations),
        Command::Regularize { poset } => cmd_regularize(poset),
        Command::Tame { poset } => cmd_tame(poset),
        Command::HibiLi { poset, from, to } => cmd_hibi_li(poset, from, to),
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("MPP_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
    {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global();
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    match run(cli) {
        Ok(v) => {
            print!("{}", to_json(&v));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            if let Some(partial) = e.partial() {
                print!("{}", to_json(partial));
            } else {
                print!("{}", to_json(&e.diagnostics()));
            }
            ExitCode::from(e.code())
        }
    }
}
