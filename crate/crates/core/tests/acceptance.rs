//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line per
//! criterion and exits non-zero if any of them fails.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rand::Rng;

use mpp_core::degeneration::{
    check_fvector_domination, composition_law, degeneration_map, pentagon_face_map,
    DegenerationPair,
};
use mpp_core::family::{
    eliminate_redundancy, facet_count_delta, hrep_chain_order, hrep_general, is_tame, project,
    projected_chain_order, transfer_phi, transfer_psi, transfer_psi_closed, Parameter, Partition,
};
use mpp_core::fixtures::{example_poset, non_idp_simplex, pentagon_hrep};
use mpp_core::geometry::{
    count_lattice_points, is_integrally_closed, vertices, vertices_bruteforce, Constraint, HRep,
    Polytope, VRep,
};
use mpp_core::rational::{int, rat};
use mpp_core::tropical::{
    generic_vertices, kernel_vertices, subdivision_vertices, verify_generic_vertices,
};
use mpp_core::{MarkedPoset, Rat};

use common::{bounded_posets, random_closed, random_interior, random_poset, rng, GenOptions};

type Outcome = Result<String, String>;
type Criterion = fn() -> Outcome;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

fn example_reproduction() -> Outcome {
    let start = Instant::now();
    let p = example_poset();
    let order = Polytope::new(project(&p, &hrep_general(&p, &Parameter::zero(&p))).map_err(err)?)
        .map_err(err)?;
    let sub = subdivision_vertices(&p).map_err(err)?;
    // t_p and t_q are irrelevant for this poset; only t_r matters.
    let mut t = Parameter::generic(&p);
    t.t.insert("r".to_string(), rat(1, 2));
    let generic = generic_vertices(&p, &t).map_err(err)?;
    let kernel = kernel_vertices(&p, &t).map_err(err)?;
    let elapsed = start.elapsed();
    let counts = (order.vrep.vertices.len(), sub.len(), generic.len());
    ensure(counts == (11, 14, 14), || {
        format!("vertex counts {counts:?}, expected (11, 14, 14)")
    })?;
    ensure(generic == kernel, || {
        "tropical and kernel vertices differ at t_r = 1/2".into()
    })?;
    ensure(elapsed < Duration::from_secs(5), || {
        format!("took {}", secs(elapsed))
    })?;
    Ok(format!("11 / 14 / 14 vertices in {}", secs(elapsed)))
}

fn transfer_bijectivity() -> Outcome {
    let start = Instant::now();
    let mut r = rng(2);
    let opts = GenOptions {
        max_unmarked: 5,
        max_elements: 8,
        bounded: false,
        strict: false,
        ranked: false,
    };
    let mut triples = 0;
    while triples < 1200 {
        let p = random_poset(&mut r, opts);
        ensure(p.len() <= 8, || {
            format!("generated poset has {} elements", p.len())
        })?;
        for _ in 0..12 {
            let t = random_closed(&mut r, &p);
            let x: Vec<Rat> = (0..p.len())
                .map(|i| {
                    p.marking(i)
                        .cloned()
                        .unwrap_or_else(|| common::random_rat(&mut r, -4, 8, 5))
                })
                .collect();
            let y = transfer_phi(&p, &t, &x);
            ensure(transfer_psi(&p, &t, &y) == x, || {
                format!("psi(phi(x)) != x on {:?}", p.elements())
            })?;
            ensure(transfer_phi(&p, &t, &transfer_psi(&p, &t, &x)) == x, || {
                "phi(psi(x)) != x".into()
            })?;
            ensure(
                transfer_psi_closed(&p, &t, &x) == transfer_psi(&p, &t, &x),
                || "closed-form psi differs".into(),
            )?;
            triples += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(30), || {
        format!("took {}", secs(elapsed))
    })?;
    Ok(format!("{triples} triples in {}", secs(elapsed)))
}

fn sorted_vrep(h: &HRep) -> Result<VRep, String> {
    let v = vertices(&eliminate_redundancy(h).map_err(err)?).map_err(err)?;
    let mut rays = v.rays;
    rays.sort();
    let mut verts = v.vertices;
    verts.sort();
    Ok(VRep {
        vertices: verts,
        rays,
    })
}

fn hypercube_consistency() -> Outcome {
    let mut r = rng(3);
    let (mut posets, mut unbounded, mut checks) = (0, 0, 0);
    while posets < 24 {
        let bounded = posets % 2 == 0;
        let opts = GenOptions {
            max_unmarked: 5,
            max_elements: 8,
            bounded,
            strict: false,
            ranked: false,
        };
        let p = random_poset(&mut r, opts);
        let mut had_rays = false;
        for part in Partition::all(&p) {
            let t = part.parameter();
            let general = sorted_vrep(&project(&p, &hrep_general(&p, &t)).map_err(err)?)?;
            let chain = sorted_vrep(
                &project(&p, &hrep_chain_order(&p, &part).map_err(err)?).map_err(err)?,
            )?;
            ensure(general == chain, || {
                format!(
                    "descriptions differ at C = {:?} on {:?}",
                    part.c,
                    p.elements()
                )
            })?;
            had_rays |= !general.rays.is_empty();
            checks += 1;
        }
        unbounded += usize::from(had_rays);
        posets += 1;
    }
    Ok(format!(
        "{posets} posets ({unbounded} unbounded), {checks} cube vertices"
    ))
}

fn ehrhart_equivalence() -> Outcome {
    let posets = bounded_posets(4, 12, GenOptions::bounded(4), |p| {
        p.all_extremal_marked() && p.is_integrally_marked()
    });
    for p in &posets {
        let mut reference: Option<Vec<u64>> = None;
        for part in Partition::all(p) {
            let h = projected_chain_order(p, &part).map_err(err)?;
            let counts = (1..=4)
                .map(|k| count_lattice_points(&h.dilate(&int(k))))
                .collect::<Result<Vec<u64>, _>>()
                .map_err(err)?;
            match &reference {
                None => reference = Some(counts),
                Some(c) => ensure(*c == counts, || {
                    format!(
                        "counts {counts:?} vs {c:?} at C = {:?} on {:?}",
                        part.c,
                        p.elements()
                    )
                })?,
            }
        }
    }
    Ok(format!("{} posets, dilations 1..4", posets.len()))
}

fn generic_vertices_match_kernel() -> Outcome {
    let posets = bounded_posets(5, 22, GenOptions::bounded(5), |_| true);
    let mut r = rng(55);
    let mut cases = 0;
    for p in &posets {
        for _ in 0..3 {
            let t = random_interior(&mut r, p);
            ensure(verify_generic_vertices(p, &t).map_err(err)?, || {
                format!(
                    "tropical vertices differ from kernel at {:?} on {:?}",
                    t.t,
                    p.elements()
                )
            })?;
            cases += 1;
        }
    }
    Ok(format!("{} posets, {cases} parameters", posets.len()))
}

fn degeneration_properties() -> Outcome {
    let mut posets = vec![example_poset()];
    posets.extend(bounded_posets(6, 10, GenOptions::bounded(3), |_| true));
    let mut r = rng(66);
    let (mut maps, mut chains) = (0, 0);
    for p in &posets {
        let u = random_interior(&mut r, p);
        for v in Parameter::hypercube_vertices(p) {
            let pair = DegenerationPair::new(p, u.clone(), v.clone()).map_err(err)?;
            let check = degeneration_map(p, &pair).map_err(err)?.check();
            ensure(check.passed(), || {
                format!(
                    "face map check {check:?} for {:?} on {:?}",
                    v.t,
                    p.elements()
                )
            })?;
            let dom = check_fvector_domination(p, &pair).map_err(err)?;
            ensure(dom.dominated, || {
                format!(
                    "f-vector {:?} not dominated by {:?}",
                    dom.target, dom.source
                )
            })?;
            maps += 1;
        }
        for _ in 0..3 {
            let mid: BTreeMap<String, Rat> =
                u.t.iter()
                    .map(|(k, x)| {
                        let y = match r.gen_range(0..3) {
                            0 => int(0),
                            1 => int(1),
                            _ => x.clone(),
                        };
                        (k.clone(), y)
                    })
                    .collect();
            let end: BTreeMap<String, Rat> = mid
                .iter()
                .map(|(k, x)| {
                    let y = if x.is_zero() || x.is_one() {
                        x.clone()
                    } else {
                        int(r.gen_range(0..2))
                    };
                    (k.clone(), y)
                })
                .collect();
            let (u1, u2) = (Parameter { t: mid }, Parameter { t: end });
            ensure(composition_law(p, &u, &u1, &u2).map_err(err)?, || {
                format!(
                    "composition fails for {:?} -> {:?} -> {:?}",
                    u.t, u1.t, u2.t
                )
            })?;
            chains += 1;
        }
    }
    Ok(format!(
        "{} posets, {maps} face maps, {chains} composition chains",
        posets.len()
    ))
}

fn pentagon_fixture() -> Outcome {
    let t = rat(1, 1);
    let before = Polytope::new(pentagon_hrep(&Rat::zero()))
        .map_err(err)?
        .f_vector();
    let after = Polytope::new(pentagon_hrep(&t)).map_err(err)?.f_vector();
    ensure(before[..2] == [5, 5] && after[..2] == [4, 4], || {
        format!("f-vectors {before:?} -> {after:?}")
    })?;
    let fm = pentagon_face_map(&t).map_err(err)?;
    ensure(fm.check().passed(), || {
        format!("face map check {:?}", fm.check())
    })?;
    let edges: Vec<usize> = (0..fm.source.len())
        .filter(|&i| fm.source.faces[i].dim == 1)
        .collect();
    let mut by_image: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &e in &edges {
        by_image.entry(fm.image(e)).or_default().push(e);
    }
    let merged: Vec<&Vec<usize>> = by_image.values().filter(|v| v.len() > 1).collect();
    let apex = vec![int(1), int(2)];
    let touches_apex = |e: usize| {
        fm.source.faces[e]
            .vertices
            .iter()
            .any(|v| fm.source.vertices[v] == apex)
    };
    ensure(
        merged.len() == 1 && merged[0].len() == 2 && merged[0].iter().all(|&e| touches_apex(e)),
        || format!("edges sharing an image: {merged:?}"),
    )?;
    let others_injective = edges
        .iter()
        .filter(|&&e| !touches_apex(e))
        .all(|&e| fm.target.faces[fm.image(e)].dim == 1);
    ensure(others_injective, || "a lower edge is collapsed".into())?;
    Ok("(5, 5) -> (4, 4), two top edges collapse".into())
}

/// `a < p1, p2 < q < r1, r2 < b`: `q` is a star element once its
/// neighbours are order elements.
fn double_diamond() -> MarkedPoset {
    let names = ["a", "p1", "p2", "q", "r1", "r2", "b"];
    let covers = [
        ("a", "p1"),
        ("a", "p2"),
        ("p1", "q"),
        ("p2", "q"),
        ("q", "r1"),
        ("q", "r2"),
        ("r1", "b"),
        ("r2", "b"),
    ];
    let marking = BTreeMap::from([("a".to_string(), int(0)), ("b".to_string(), int(4))]);
    MarkedPoset::new(&names, &covers, &marking).expect("valid fixture")
}

fn tame_and_facets() -> Outcome {
    let ranked = GenOptions {
        max_unmarked: 5,
        max_elements: 8,
        bounded: true,
        strict: true,
        ranked: true,
    };
    let mut regular_ranked = bounded_posets(8, 15, ranked, |p| p.is_regular() && p.is_ranked());
    regular_ranked.push(double_diamond());
    for p in &regular_ranked {
        ensure(is_tame(p).map_err(err)?, || {
            format!("regular ranked poset {:?} is not tame", p.elements())
        })?;
    }
    let mut tame = vec![example_poset()];
    tame.extend(regular_ranked.iter().cloned());
    let mut r = rng(88);
    let mut extra = 0;
    while extra < 10 {
        let p = random_poset(&mut r, GenOptions::bounded(4));
        if is_tame(&p).map_err(err)? {
            tame.push(p);
            extra += 1;
        }
    }
    let (mut cases, mut nonzero) = (0, 0);
    for p in &tame {
        for part in Partition::all(p) {
            for q in part.o.clone() {
                let d = facet_count_delta(p, &part, &q).map_err(err)?;
                ensure(d.agrees(), || {
                    format!("{d:?} at C = {:?} on {:?}", part.c, p.elements())
                })?;
                nonzero += usize::from(d.formula != 0);
                cases += 1;
            }
        }
    }
    ensure(cases >= 50, || format!("only {cases} cases"))?;
    ensure(nonzero > 0, || "no case with a nonzero facet delta".into())?;
    Ok(format!(
        "{} regular ranked posets tame, {cases} facet deltas ({nonzero} nonzero)",
        regular_ranked.len()
    ))
}

fn integral_closure() -> Outcome {
    let mut posets = bounded_posets(9, 6, GenOptions::bounded(3), |p| p.is_integrally_marked());
    posets.push(example_poset());
    let mut polytopes = 0;
    for p in &posets {
        for part in Partition::all(p) {
            let h = projected_chain_order(p, &part).map_err(err)?;
            ensure(is_integrally_closed(&h).map_err(err)?, || {
                format!(
                    "not integrally closed at C = {:?} on {:?}",
                    part.c,
                    p.elements()
                )
            })?;
            polytopes += 1;
        }
    }
    ensure(
        !is_integrally_closed(&non_idp_simplex()).map_err(err)?,
        || "non-IDP simplex passes".into(),
    )?;
    Ok(format!(
        "{} posets, {polytopes} polytopes; simplex rejected",
        posets.len()
    ))
}

fn random_hrep(r: &mut rand_chacha::ChaCha8Rng) -> HRep {
    let d = r.gen_range(1..=5);
    let mut h = HRep::new((0..d).map(|i| format!("x{i}")).collect());
    for i in 0..d {
        let mut e = vec![Rat::zero(); d];
        e[i] = Rat::one();
        h.push(Constraint::le(
            e.clone(),
            int(r.gen_range(1..=4)),
            format!("x{i}<="),
        ));
        e[i] = -Rat::one();
        h.push(Constraint::le(
            e,
            int(r.gen_range(0..=4)),
            format!("x{i}>="),
        ));
    }
    for j in 0..r.gen_range(0..=6) {
        let a: Vec<Rat> = (0..d).map(|_| int(r.gen_range(-3..=3))).collect();
        h.push(Constraint::le(
            a,
            int(r.gen_range(-2..=6)),
            format!("cut{j}"),
        ));
    }
    if d > 1 && r.gen_bool(0.15) {
        let a: Vec<Rat> = (0..d).map(|_| int(r.gen_range(-2..=2))).collect();
        h.push(Constraint::eq(a, Rat::zero(), "eq"));
    }
    h
}

fn kernel_oracle() -> Outcome {
    let mut r = rng(10);
    let (mut compared, mut empty) = (0, 0);
    while compared < 150 {
        let h = random_hrep(&mut r);
        let dd = vertices(&h);
        let bf = vertices_bruteforce(&h);
        match (dd, bf) {
            (Ok(a), Ok(b)) => {
                ensure(a.vertices == b.vertices && a.rays.is_empty(), || {
                    format!("vertex sets differ on {h:?}")
                })?;
                compared += 1;
            }
            (Err(a), Err(b)) => {
                ensure(a == b, || format!("errors differ: {a} vs {b}"))?;
                empty += 1;
            }
            (a, b) => return Err(format!("one method failed: {a:?} vs {b:?}")),
        }
    }
    Ok(format!(
        "{compared} polytopes agree ({empty} empty inputs also agree)"
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 10] = [
        ("example reproduction", example_reproduction),
        ("transfer bijectivity", transfer_bijectivity),
        ("hypercube-vertex consistency", hypercube_consistency),
        ("Ehrhart equivalence", ehrhart_equivalence),
        ("generic vertices", generic_vertices_match_kernel),
        ("degeneration properties", degeneration_properties),
        ("pentagon fixture", pentagon_fixture),
        ("tameness and facet counts", tame_and_facets),
        ("integral closure", integral_closure),
        ("kernel oracle equivalence", kernel_oracle),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let took = secs(start.elapsed());
        match outcome {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail}; {took})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({why}; {took})", i + 1);
            }
        }
    }
    println!(
        "acceptance: {}/{} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
