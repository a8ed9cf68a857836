//! `mpp sweep`: checks over all members of the family indexed by the cube.

use std::collections::BTreeMap;
use std::path::Path;

use clap::ValueEnum;
use rayon::prelude::*;
use serde_json::{json, Value};

use mpp_core::degeneration::{
    check_fvector_domination, combinatorial_type_sweep, degeneration_map, hibi_li_check, CubeFace,
    DegenerationPair,
};
use mpp_core::family::{is_tame, projected_chain_order, Parameter, Partition};
use mpp_core::geometry::count_lattice_points;
use mpp_core::io::read_poset;
use mpp_core::rational::int;
use mpp_core::tropical::check_vertex_degeneration_conjecture;
use mpp_core::MarkedPoset;

use crate::error::CliError;

const MAX_SWEEP_UNMARKED: usize = 12;
/// Above this many unmarked elements the type sweep visits only the
/// interior and the facets of the cube.
const ALL_FACES_LIMIT: usize = 4;
const TYPE_SAMPLES: usize = 3;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Check {
    Ehrhart,
    Types,
    Domination,
    Tame,
    HibiLi,
    Conjecture5,
}

impl Check {
    fn name(self) -> &'static str {
        match self {
            Check::Ehrhart => "ehrhart",
            Check::Types => "types",
            Check::Domination => "domination",
            Check::Tame => "tame",
            Check::HibiLi => "hibi-li",
            Check::Conjecture5 => "conjecture5",
        }
    }
}

fn status(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn ehrhart_check(poset: &MarkedPoset, dilations: u32) -> Result<Value, CliError> {
    let rows: Result<Vec<(Partition, Vec<u64>)>, CliError> = Partition::all(poset)
        .into_par_iter()
        .map(|part| {
            let h = projected_chain_order(poset, &part)?;
            let counts = (1..=dilations)
                .map(|k| count_lattice_points(&h.dilate(&int(k as i64))))
                .collect::<Result<Vec<u64>, _>>()?;
            Ok((part, counts))
        })
        .collect();
    let rows = rows?;
    let equal = rows.windows(2).all(|w| w[0].1 == w[1].1);
    let table: Vec<Value> = rows
        .iter()
        .map(|(p, c)| json!({ "partition": p, "counts": c }))
        .collect();
    Ok(
        json!({ "dilations": dilations, "polytopes": table, "equal": equal, "status": status(equal) }),
    )
}

fn cube_faces(poset: &MarkedPoset) -> Vec<CubeFace> {
    let names = poset.names(&poset.unmarked());
    let n = names.len();
    let mut faces = Vec::new();
    if n <= ALL_FACES_LIMIT {
        for code in 0..3usize.pow(n as u32) {
            let mut fixed = BTreeMap::new();
            let mut c = code;
            for name in &names {
                match c % 3 {
                    1 => {
                        fixed.insert(name.clone(), int(0));
                    }
                    2 => {
                        fixed.insert(name.clone(), int(1));
                    }
                    _ => {}
                }
                c /= 3;
            }
            faces.push(CubeFace { fixed });
        }
    } else {
        faces.push(CubeFace::interior());
        for name in &names {
            for v in [int(0), int(1)] {
                faces.push(CubeFace {
                    fixed: [(name.clone(), v)].into(),
                });
            }
        }
    }
    faces
}

fn types_check(poset: &MarkedPoset) -> Result<Value, CliError> {
    let reports: Result<Vec<_>, CliError> = cube_faces(poset)
        .into_par_iter()
        .map(|f| Ok(combinatorial_type_sweep(poset, &f, TYPE_SAMPLES)?))
        .collect();
    let reports = reports?;
    let constant = reports.iter().all(|r| r.constant);
    Ok(json!({ "faces": reports, "constant": constant, "status": status(constant) }))
}

fn domination_check(poset: &MarkedPoset) -> Result<Value, CliError> {
    let t = Parameter::generic(poset);
    let rows: Result<Vec<Value>, CliError> = Parameter::hypercube_vertices(poset)
        .into_par_iter()
        .map(|u| {
            let pair = DegenerationPair::new(poset, t.clone(), u)?;
            let dom = check_fvector_domination(poset, &pair)?;
            let check = degeneration_map(poset, &pair)?.check();
            let ok = dom.dominated && check.passed();
            Ok(json!({ "target": pair.target, "domination": dom, "face_map": check, "status": status(ok) }))
        })
        .collect();
    let rows = rows?;
    let ok = rows.iter().all(|r| r["status"] == "PASS");
    Ok(json!({ "source": t, "targets": rows, "status": status(ok) }))
}

fn tame_check(poset: &MarkedPoset) -> Result<Value, CliError> {
    let tame = is_tame(poset)?;
    let (ranked, regular) = (poset.is_ranked(), poset.is_regular());
    Ok(json!({ "tame": tame, "ranked": ranked, "regular": regular, "status": status(tame) }))
}

fn hibi_li_table(poset: &MarkedPoset) -> Result<Value, CliError> {
    let moves: Vec<(Partition, Partition)> = Partition::all(poset)
        .into_iter()
        .flat_map(|a| {
            a.o.iter()
                .map(|q| (a.clone(), a.move_to_chain(q)))
                .collect::<Vec<_>>()
        })
        .collect();
    let rows: Result<Vec<_>, CliError> = moves
        .par_iter()
        .map(|(a, b)| Ok(hibi_li_check(poset, a, b)?))
        .collect();
    let rows = rows?;
    let ok = rows
        .iter()
        .all(|r| r.dominated && r.facet_delta.as_ref().is_none_or(|d| d.agrees()));
    Ok(json!({ "moves": rows, "status": status(ok) }))
}

fn conjecture_check(poset: &MarkedPoset) -> Result<Value, CliError> {
    let r = check_vertex_degeneration_conjecture(poset, &Parameter::generic(poset))?;
    let ok = r.all_witnessed();
    Ok(json!({ "report": r, "status": status(ok) }))
}

pub fn run(path: &Path, checks: &[Check], dilations: u32) -> Result<Value, CliError> {
    let poset = read_poset(path)?;
    let n = poset.unmarked().len();
    if n > MAX_SWEEP_UNMARKED {
        return Err(CliError::input(format!(
            "sweep supports at most {MAX_SWEEP_UNMARKED} unmarked elements, got {n}"
        )));
    }
    let mut checks = checks.to_vec();
    checks.sort();
    checks.dedup();
    let mut results = serde_json::Map::new();
    let mut failed: Vec<String> = Vec::new();
    for c in checks {
        let out = match c {
            Check::Ehrhart => ehrhart_check(&poset, dilations),
            Check::Types => types_check(&poset),
            Check::Domination => domination_check(&poset),
            Check::Tame => tame_check(&poset),
            Check::HibiLi => hibi_li_table(&poset),
            Check::Conjecture5 => conjecture_check(&poset),
        };
        let v = match out {
            Ok(v) => {
                eprintln!("{}: {}", c.name(), v["status"].as_str().unwrap_or("?"));
                v
            }
            Err(e @ CliError::Input { .. }) => return Err(e),
            Err(e) => {
                eprintln!("{}: ERROR {e}", c.name());
                failed.push(c.name().to_string());
                json!({ "status": "ERROR", "error": e.to_string() })
            }
        };
        results.insert(c.name().to_string(), v);
    }
    let ok = results.values().all(|v| v["status"] == "PASS");
    let report = json!({ "coords": poset.names(&poset.unmarked()), "checks": results, "status": status(ok) });
    if failed.is_empty() {
        Ok(report)
    } else {
        Err(CliError::Compute {
            message: format!("checks failed to complete: {}", failed.join(", ")),
            partial: Some(report),
        })
    }
}
