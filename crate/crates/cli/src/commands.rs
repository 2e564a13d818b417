use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use dimer_algebra::{AngleQuiver, Jacobi, PathQ};
use dimer_core::{from_int, print_dimer, Dimer, Homology, Point, Q};
use dimer_matching::{enumerate_matchings, matching_polygon, perfect_matchings, PerfectMatching};
use dimer_mf::{format_element, mf_arrow, mf_band, rep_bands, Garland, MatrixFactorizationQ};
use dimer_reduce::{cell_polygon_check, reduce_dimer, Reduction};
use dimer_tropical::{theta, tropical_model, TropicalModelQ};
use dimer_zigzag::{is_consistent, zigzag_cycles};
use serde_json::{json, Value};

use crate::{acceptance, invalid, svg, Cli, CliError, Command, Inputs, MfCommand, Report};

fn pt(p: Point) -> String {
    format!("({},{})", p[0], p[1])
}

fn ids(arrows: &[usize]) -> Vec<usize> {
    arrows.iter().map(|a| a + 1).collect()
}

fn joined<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn homology(d: &Dimer) -> Result<Homology, CliError> {
    Homology::new(d).map_err(invalid)
}

fn report(command: &str, results: Value, text: String) -> Report {
    Report { command: command.into(), inputs: Vec::new(), results, warnings: Vec::new(), text, ok: true }
}

/// Lattice points shifted so that the seed matching sits at the origin.
fn seed_offset(cli: &Cli, pm: &[PerfectMatching]) -> Result<Point, CliError> {
    match cli.seed_matching {
        None => Ok([0, 0]),
        Some(k) => pm
            .get(k.wrapping_sub(1))
            .map(|m| m.point)
            .ok_or_else(|| CliError::Usage(format!("--seed-matching {k}: there are {} matchings", pm.len()))),
    }
}

fn shift(p: Point, o: Point) -> Point {
    [p[0] - o[0], p[1] - o[1]]
}

fn jacobi(cli: &Cli, d: &Dimer) -> Result<Jacobi, CliError> {
    match cli.seed_matching {
        None => Jacobi::new(d).map_err(invalid),
        Some(k) => Jacobi::with_reference(d, k.wrapping_sub(1)).map_err(|e| CliError::Usage(e.to_string())),
    }
}

pub(crate) fn execute(cli: &Cli, inp: &mut Inputs) -> Result<Report, CliError> {
    match &cli.command {
        Command::Validate { dimer } => validate(&inp.dimer(dimer)?),
        Command::Mirror { dimer } => {
            let text = print_dimer(&inp.dimer(dimer)?.mirror().normalized());
            Ok(report("mirror", json!({ "dtf": text }), text))
        }
        Command::Matchings { dimer } => matchings(cli, &inp.dimer(dimer)?),
        Command::Polygon { dimer, svg } => polygon(cli, &inp.dimer(dimer)?, svg.as_deref()),
        Command::Consistent { dimer } => consistent(&inp.dimer(dimer)?),
        Command::Path { dimer, word } => path(cli, &inp.dimer(dimer)?, word),
        Command::Gtl { dimer } => gtl(&inp.dimer(dimer)?),
        Command::Mf { kind } => match kind {
            MfCommand::Arrow { dimer, arrow } => {
                let d = inp.dimer(dimer)?;
                let a = d.find_arrow(arrow).ok_or_else(|| CliError::Usage(format!("no arrow '{arrow}'")))?;
                let j = jacobi(cli, &d)?;
                factorization("mf arrow", &j, mf_arrow(&j, a))
            }
            MfCommand::Band { dimer, entries } => {
                let d = inp.dimer(dimer)?;
                let g = garland(&d, entries)?;
                let j = jacobi(cli, &d)?;
                let m = mf_band(&j, &g, &[vec![from_int(1)]]).map_err(invalid)?;
                factorization("mf band", &j, m)
            }
            MfCommand::Rep { dimer, rep } => {
                let d = inp.dimer(dimer)?;
                let rho = inp.rep(rep, &d)?;
                mf_rep(&d, &rho)
            }
        },
        Command::Tropical { dimer, weights, svg } => {
            let d = inp.dimer(dimer)?;
            let w = inp.weights(weights, &d)?;
            tropical(&d, &w, svg.as_deref())
        }
        Command::Stable { dimer, weights } => {
            let d = inp.dimer(dimer)?;
            let w = inp.weights(weights, &d)?;
            stable(cli, &d, &w)
        }
        Command::Reduce { dimer, rep, node, weights } => {
            let d = inp.dimer(dimer)?;
            match (rep, node, weights) {
                (Some(rep), None, _) => {
                    let rho = inp.rep(rep, &d)?;
                    reduce(&d, &rho)
                }
                (None, Some(k), Some(w)) => {
                    let w = inp.weights(w, &d)?;
                    reduce_node(&d, &w, *k)
                }
                _ => Err(CliError::Usage("reduce needs --rep FILE or --node K --weights FILE".into())),
            }
        }
        Command::Strebel { dimer, weights, widths } => {
            let d = inp.dimer(dimer)?;
            let w = inp.weights(weights, &d)?;
            let b = match widths {
                Some(p) => inp.weights(p, &d)?,
                None => vec![from_int(1); d.arrow_count()],
            };
            strebel(&d, &w, &b)
        }
        Command::Corpus => Ok(corpus()),
    }
}

fn validate(d: &Dimer) -> Result<Report, CliError> {
    let h = homology(d)?;
    let torus = h.is_torus();
    let matchings = enumerate_matchings(d).len();
    let results = json!({
        "name": d.name(),
        "vertices": d.vertex_count(),
        "arrows": d.arrow_count(),
        "faces": d.face_count(),
        "euler_characteristic": d.euler_characteristic(),
        "genus": d.genus(),
        "connected": d.is_connected(),
        "torus": torus,
        "matchings": matchings,
    });
    let text = format!(
        "dimer {}: V={} E={} F={} chi={} genus={} torus={} matchings={}\nvalid\n",
        d.name(),
        d.vertex_count(),
        d.arrow_count(),
        d.face_count(),
        d.euler_characteristic(),
        d.genus(),
        torus,
        matchings
    );
    Ok(report("validate", results, text))
}

fn matchings(cli: &Cli, d: &Dimer) -> Result<Report, CliError> {
    let h = homology(d)?;
    let mut warnings = Vec::new();
    let (rows, text): (Vec<Value>, String) = if h.is_torus() {
        let pm = perfect_matchings(d, &h).map_err(invalid)?;
        let o = seed_offset(cli, &pm)?;
        let rows = pm.iter().map(|m| json!({"arrows": ids(&m.arrows), "point": shift(m.point, o)})).collect();
        let text = pm.iter().map(|m| format!("{}  {}\n", joined(&ids(&m.arrows)), pt(shift(m.point, o)))).collect();
        (rows, text)
    } else {
        warnings.push("surface is not a torus: no lattice points".to_string());
        let ms = enumerate_matchings(d);
        let rows = ms.iter().map(|m| json!({"arrows": ids(m)})).collect();
        let text = ms.iter().map(|m| format!("{}\n", joined(&ids(m)))).collect();
        (rows, text)
    };
    let mut r = report("matchings", json!({ "count": rows.len(), "matchings": rows }), text);
    r.warnings = warnings;
    Ok(r)
}

fn polygon(cli: &Cli, d: &Dimer, svg_path: Option<&Path>) -> Result<Report, CliError> {
    let h = homology(d)?;
    let pm = perfect_matchings(d, &h).map_err(invalid)?;
    let o = seed_offset(cli, &pm)?;
    let poly = matching_polygon(&pm).map_err(invalid)?;
    let inv = poly.invariants();
    let corners: Vec<Point> = poly.hull.iter().map(|&p| shift(p, o)).collect();
    let mut text = format!("corners {}\n", corners.iter().map(|&p| pt(p)).collect::<Vec<_>>().join(" "));
    writeln!(text, "boundary={} interior={} corners={}", poly.boundary_count, poly.interior_count, poly.hull.len()).unwrap();
    let mut points = Vec::new();
    for (p, ms) in &poly.points {
        let kind = if poly.is_corner(*p) { "corner" } else { "" };
        writeln!(text, "point {} matchings={} {}", pt(shift(*p, o)), ms.len(), kind).unwrap();
        points.push(json!({"point": shift(*p, o), "matchings": ids(ms), "corner": poly.is_corner(*p)}));
    }
    let normals: Vec<Value> = poly.edge_normals.iter().map(|(n, l)| json!({"normal": n, "length": l})).collect();
    writeln!(
        text,
        "normals {}",
        poly.edge_normals.iter().map(|(n, l)| format!("{}x{l}", pt(*n))).collect::<Vec<_>>().join(" ")
    )
    .unwrap();
    writeln!(text, "normal_form {}", inv.normal_form.iter().map(|&p| pt(p)).collect::<Vec<_>>().join(" ")).unwrap();
    if let Some(path) = svg_path {
        let pts: Vec<(Point, usize)> = poly.points.iter().map(|(p, ms)| (shift(*p, o), ms.len())).collect();
        write_file(path, &svg::polygon(&corners, &pts))?;
    }
    let results = json!({
        "corners": corners,
        "boundary": poly.boundary_count,
        "interior": poly.interior_count,
        "corner_count": poly.hull.len(),
        "twice_area": inv.twice_area,
        "points": points,
        "edge_normals": normals,
        "normal_form": inv.normal_form,
    });
    Ok(report("polygon", results, text))
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn consistent(d: &Dimer) -> Result<Report, CliError> {
    let h = homology(d)?;
    let r = is_consistent(d, &h);
    let cycles = zigzag_cycles(d, &h);
    let mut text = format!(
        "consistent={} well_ordered={} ray_check={} zigzags={}\n",
        r.consistent,
        r.well_ordered.map_or("n/a".to_string(), |b| b.to_string()),
        r.ray_check,
        cycles.len()
    );
    for f in &r.order_failures {
        let turns: Vec<String> = f.turns.iter().map(|(a, c, k)| format!("{}@z{}{}", d.arrow_name(*a), c + 1, pt(*k))).collect();
        writeln!(text, "order failure in face {}: {}", f.face + 1, turns.join(" ")).unwrap();
    }
    for o in &r.ray_overlaps {
        writeln!(text, "zig and zag rays of {} share {}", d.arrow_name(o.arrow), d.arrow_name(o.shared)).unwrap();
    }
    for &c in &r.zero_class {
        writeln!(text, "zigzag z{} is null-homologous", c + 1).unwrap();
    }
    for &(c, f) in &r.double_turns {
        writeln!(text, "zigzag z{} turns twice in face {}", c + 1, f + 1).unwrap();
    }
    let results = json!({
        "consistent": r.consistent,
        "well_ordered": r.well_ordered,
        "ray_check": r.ray_check,
        "zigzags": cycles.iter().map(|c| json!({"arrows": ids(&c.arrows), "class": c.hclass})).collect::<Vec<_>>(),
        "order_failures": r.order_failures.iter().map(|f| json!({
            "face": f.face + 1,
            "turns": f.turns.iter().map(|(a, c, k)| json!([a + 1, c + 1, k])).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "ray_overlaps": r.ray_overlaps.iter().map(|o| json!([o.arrow + 1, o.shared + 1])).collect::<Vec<_>>(),
        "zero_class": ids(&r.zero_class),
        "double_turns": r.double_turns.iter().map(|(c, f)| json!([c + 1, f + 1])).collect::<Vec<_>>(),
    });
    let mut rep = report("consistent", results, text);
    rep.ok = r.consistent;
    Ok(rep)
}

/// Tokens `a`, `a^-1` or `a'`, separated by spaces, `*` or `.`.
fn parse_word(d: &Dimer, word: &[String]) -> Result<Vec<(usize, i64)>, CliError> {
    let mut out = Vec::new();
    for tok in word.iter().flat_map(|w| w.split(['*', '.', ' '])).filter(|t| !t.is_empty()) {
        let (name, exp) = if let Some(n) = tok.strip_suffix("^-1") {
            (n, -1)
        } else if let Some(n) = tok.strip_suffix('\'') {
            (n, -1)
        } else {
            (tok, 1)
        };
        let a = d.find_arrow(name).ok_or_else(|| CliError::Usage(format!("no arrow '{name}'")))?;
        out.push((a, exp));
    }
    if out.is_empty() {
        return Err(CliError::Usage("empty word".into()));
    }
    Ok(out)
}

fn path(cli: &Cli, d: &Dimer, word: &[String]) -> Result<Report, CliError> {
    let w = parse_word(d, word)?;
    let j = jacobi(cli, d)?;
    let e: PathQ = j.path_element(&w).map_err(invalid)?;
    let degrees: Vec<i64> = (0..j.matchings().len()).map(|m| j.degree(m, &e)).collect();
    let member = j.in_jacobi(&e);
    let text = format!(
        "{}\nhead={} tail={} class={:?} refdeg={} reference={}\ndegrees {}\nin_jacobi={}\n",
        format_element(&e),
        e.head + 1,
        e.tail + 1,
        e.hclass,
        e.refdeg,
        j.reference() + 1,
        joined(&degrees),
        member
    );
    let results = json!({
        "element": format_element(&e),
        "head": e.head + 1,
        "tail": e.tail + 1,
        "class": e.hclass,
        "refdeg": e.refdeg,
        "reference_matching": j.reference() + 1,
        "degrees": degrees,
        "in_jacobi": member,
    });
    Ok(report("path", results, text))
}

fn gtl(d: &Dimer) -> Result<Report, CliError> {
    let q = AngleQuiver::new(d);
    let mut text = format!("angles {}\n", q.len());
    let mut angles = Vec::new();
    for i in 0..q.len() {
        let x = q.angle(i);
        let (from_v, to_v) = (d.tail(x.from), d.tail(x.to));
        writeln!(text, "{} {} : vertex {} -> {}", i + 1, q.angle_name(i), from_v + 1, to_v + 1).unwrap();
        angles.push(json!({"id": i + 1, "name": q.angle_name(i), "face": x.face + 1, "sign": x.sign.symbol().to_string(),
            "from_arrow": x.from + 1, "to_arrow": x.to + 1}));
    }
    let relations = q.relations();
    writeln!(text, "relations {}", relations.len()).unwrap();
    for &(a, b) in &relations {
        writeln!(text, "{}*{} = 0", q.angle_name(a), q.angle_name(b)).unwrap();
    }
    let results = json!({
        "angles": angles,
        "relations": relations.iter().map(|(a, b)| json!([a + 1, b + 1])).collect::<Vec<_>>(),
    });
    Ok(report("gtl", results, text))
}

fn garland(d: &Dimer, entries: &[String]) -> Result<Garland, CliError> {
    let mut out = Vec::new();
    for (i, tok) in entries.iter().enumerate() {
        let x = if i % 2 == 0 {
            d.find_arrow(tok).ok_or_else(|| CliError::Usage(format!("no arrow '{tok}'")))?
        } else {
            tok.parse::<usize>()
                .ok()
                .filter(|&f| f >= 1 && f <= d.face_count())
                .ok_or_else(|| CliError::Usage(format!("no face '{tok}'")))?
                - 1
        };
        out.push(x);
    }
    Garland::new(d, out).map_err(invalid)
}

fn factorization(command: &str, j: &Jacobi, m: MatrixFactorizationQ) -> Result<Report, CliError> {
    let check = m.check(j);
    let mut text = m.to_string();
    writeln!(text, "d^2 = l: {}", check.is_ok()).unwrap();
    let results = json!({
        "summands": m.summands.iter().map(|s| json!({"vertex": s.vertex + 1, "parity": s.parity, "shift": s.shift})).collect::<Vec<_>>(),
        "entries": m.entries().iter().flat_map(|(r, c, p)| p.terms().into_iter().map(move |e| json!({
            "row": r + 1, "col": c + 1, "term": format_element(&e),
        }))).collect::<Vec<_>>(),
        "check": check.as_ref().map_or_else(|e| e.to_string(), |_| "ok".to_string()),
    });
    let mut r = report(command, results, text);
    r.ok = check.is_ok();
    Ok(r)
}

fn garland_text(d: &Dimer, g: &Garland) -> String {
    g.entries
        .iter()
        .enumerate()
        .map(|(i, &x)| if i % 2 == 0 { d.arrow_name(x) } else { format!("{}{}", d.face(x).sign.symbol(), x + 1) })
        .collect::<Vec<_>>()
        .join(" ")
}

fn mf_rep(d: &Dimer, rho: &[Q]) -> Result<Report, CliError> {
    let h = homology(d)?;
    let r = rep_bands(d, &h, rho).map_err(invalid)?;
    let mut text = format!("bands {} oriented={} dropped={}\n", r.bands.len(), r.oriented, r.dropped);
    let mut warnings = Vec::new();
    for (i, b) in r.bands.iter().enumerate() {
        let dec: Vec<String> = b.decoration.iter().flatten().map(Q::to_string).collect();
        writeln!(text, "band {}: {} | decoration {} | class {:?}", i + 1, garland_text(d, &b.garland), dec.join(","), b.hclass).unwrap();
        if b.warning {
            warnings.push(format!("band {} is null-homologous", i + 1));
        }
    }
    let results = json!({
        "matchings": r.matchings.iter().map(|m| ids(m)).collect::<Vec<_>>(),
        "oriented": r.oriented,
        "dropped": r.dropped,
        "bands": r.bands.iter().map(|b| json!({
            "garland": b.garland.entries.iter().map(|x| x + 1).collect::<Vec<_>>(),
            "decoration": b.decoration.iter().map(|row| row.iter().map(Q::to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "class": b.hclass,
            "warning": b.warning,
        })).collect::<Vec<_>>(),
    });
    let mut rep = report("mf rep", results, text);
    rep.warnings = warnings;
    Ok(rep)
}

fn model(d: &Dimer, w: &[Q]) -> Result<TropicalModelQ, CliError> {
    let h = homology(d)?;
    tropical_model(d, &h, w).map_err(invalid)
}

fn tropical(d: &Dimer, w: &[Q], svg_path: Option<&Path>) -> Result<Report, CliError> {
    let m = model(d, w)?;
    let th = theta(d, w).map_err(invalid)?;
    let deg = m.degeneracy(d).map_err(invalid)?;
    let s = &m.subdivision;
    let mut text = format!("theta {}\n", joined(&th));
    writeln!(
        text,
        "nondegenerate={} generic={} generic_character={}",
        deg.nondegenerate,
        deg.generic,
        deg.generic_character.map_or("n/a".into(), |b| b.to_string())
    )
    .unwrap();
    for t in &m.poly.terms {
        writeln!(text, "term {} c={} matchings {}", pt(t.point), t.c, joined(&ids(&t.owners))).unwrap();
    }
    for (i, c) in s.cells.iter().enumerate() {
        let corners: Vec<String> = c.corners.iter().map(|&t| pt(s.points[t])).collect();
        writeln!(
            text,
            "cell {}: {} interior={} twice_area={} node=({},{})",
            i + 1,
            corners.join(" "),
            c.interior,
            c.twice_area,
            c.node[0],
            c.node[1]
        )
        .unwrap();
    }
    for e in &m.curve.edges {
        writeln!(
            text,
            "edge nodes {} {} multiplicity={} length={} direction={}",
            e.nodes[0] + 1,
            e.nodes[1] + 1,
            e.multiplicity,
            e.length,
            pt(e.direction)
        )
        .unwrap();
    }
    for l in &m.curve.legs {
        writeln!(text, "leg node {} multiplicity={} direction={}", l.node + 1, l.multiplicity, pt(l.direction)).unwrap();
    }
    writeln!(
        text,
        "spider nodes={} edges={} legs={} genus={} node_genera {}",
        m.spider.nodes.len(),
        m.spider.edges.len(),
        m.spider.legs.len(),
        m.spider.genus(),
        joined(&m.spider.nodes.iter().map(|n| n.genus).collect::<Vec<_>>())
    )
    .unwrap();
    if let Some(path) = svg_path {
        write_file(path, &svg::tropical(&m))?;
    }
    let results = json!({
        "theta": th.iter().map(Q::to_string).collect::<Vec<_>>(),
        "nondegenerate": deg.nondegenerate,
        "generic": deg.generic,
        "generic_character": deg.generic_character,
        "terms": m.poly.terms.iter().map(|t| json!({"point": t.point, "c": t.c.to_string(), "matchings": ids(&t.owners)})).collect::<Vec<_>>(),
        "cells": s.cells.iter().map(|c| json!({
            "corners": c.corners.iter().map(|&t| s.points[t]).collect::<Vec<_>>(),
            "interior": c.interior,
            "twice_area": c.twice_area,
            "node": [c.node[0].to_string(), c.node[1].to_string()],
        })).collect::<Vec<_>>(),
        "edges": m.curve.edges.iter().map(|e| json!({
            "nodes": [e.nodes[0] + 1, e.nodes[1] + 1],
            "multiplicity": e.multiplicity,
            "length": e.length.to_string(),
            "direction": e.direction,
        })).collect::<Vec<_>>(),
        "legs": m.curve.legs.iter().map(|l| json!({"node": l.node + 1, "multiplicity": l.multiplicity, "direction": l.direction})).collect::<Vec<_>>(),
        "spider": {
            "genus": m.spider.genus(),
            "nodes": m.spider.nodes.iter().map(|n| json!({"cell": n.cell + 1, "genus": n.genus})).collect::<Vec<_>>(),
            "edges": m.spider.edges.iter().map(|e| json!({"nodes": [e.nodes[0] + 1, e.nodes[1] + 1], "weight": e.weight.to_string()})).collect::<Vec<_>>(),
            "legs": m.spider.legs.iter().map(|l| l.node + 1).collect::<Vec<_>>(),
        },
    });
    Ok(report("tropical", results, text))
}

fn stable(cli: &Cli, d: &Dimer, w: &[Q]) -> Result<Report, CliError> {
    let m = model(d, w)?;
    let o = seed_offset(cli, &m.matchings)?;
    let status = m.classify();
    let deg = m.degeneracy(d).map_err(invalid)?;
    let stable: Vec<usize> = m.stable_matchings();
    let semistable = status.iter().filter(|s| s.semistable).count();
    let mut text = format!("stable matchings {}\n", stable.len());
    for &i in &stable {
        let pm = &m.matchings[i];
        writeln!(text, "{}  {}", joined(&ids(&pm.arrows)), pt(shift(pm.point, o))).unwrap();
    }
    writeln!(text, "semistable={} nondegenerate={} generic={}", semistable, deg.nondegenerate, deg.generic).unwrap();
    let results = json!({
        "stable": stable.iter().map(|&i| json!({"matching": i + 1, "arrows": ids(&m.matchings[i].arrows), "point": shift(m.matchings[i].point, o)})).collect::<Vec<_>>(),
        "semistable": semistable,
        "nondegenerate": deg.nondegenerate,
        "generic": deg.generic,
    });
    Ok(report("stable", results, text))
}

fn reduction_log(d: &Dimer, r: &Reduction) -> (String, Value) {
    let mut text = format!("orbit {:?}: {}\n", r.orbit, r.orbit.morita_label());
    writeln!(text, "zero set: {} matchings", r.matchings.len()).unwrap();
    writeln!(text, "contracted arrows {}", joined(&ids(&r.nonzero_arrows))).unwrap();
    for c in &r.vertex_classes {
        writeln!(text, "vertex class {}", joined(&ids(c))).unwrap();
    }
    writeln!(text, "removed loops {}", joined(&ids(&r.removed_loops))).unwrap();
    for p in &r.removed_digons {
        writeln!(text, "removed 2-cycle {} {}", d.arrow_name(p[0]), d.arrow_name(p[1])).unwrap();
    }
    if let Some(q) = &r.result {
        writeln!(
            text,
            "reduced: V={} E={} F={} chi={} well_ordered={}",
            q.vertex_count(),
            q.arrow_count(),
            q.face_count(),
            q.euler_characteristic(),
            r.well_ordered.map_or("n/a".into(), |b| b.to_string())
        )
        .unwrap();
        text.push_str(&print_dimer(q));
    }
    let results = json!({
        "orbit": format!("{:?}", r.orbit),
        "morita": r.orbit.morita_label(),
        "matchings": r.matchings.iter().map(|m| ids(m)).collect::<Vec<_>>(),
        "contracted": ids(&r.nonzero_arrows),
        "vertex_classes": r.vertex_classes.iter().map(|c| ids(c)).collect::<Vec<_>>(),
        "removed_loops": ids(&r.removed_loops),
        "removed_digons": r.removed_digons.iter().map(|p| ids(p)).collect::<Vec<_>>(),
        "kept": ids(&r.kept),
        "well_ordered": r.well_ordered,
        "dtf": r.result.as_ref().map(print_dimer),
    });
    (text, results)
}

fn reduce(d: &Dimer, rho: &[Q]) -> Result<Report, CliError> {
    let h = homology(d)?;
    let r = reduce_dimer(d, &h, rho).map_err(invalid)?;
    let (text, results) = reduction_log(d, &r);
    Ok(report("reduce", results, text))
}

fn reduce_node(d: &Dimer, w: &[Q], k: usize) -> Result<Report, CliError> {
    let h = homology(d)?;
    let m = model(d, w)?;
    let cells = m.subdivision.cells.len();
    if k == 0 || k > cells {
        return Err(CliError::Usage(format!("--node {k}: there are {cells} nodes")));
    }
    let chk = cell_polygon_check(d, &h, &m, k - 1).map_err(invalid)?;
    let (mut text, mut results) = reduction_log(d, &chk.reduction);
    writeln!(text, "cell polygon matches reduced polygon: {}", chk.matches).unwrap();
    results["cell_matches"] = json!(chk.matches);
    results["cell_normal_form"] = json!(chk.cell_invariants.normal_form);
    let mut r = report("reduce", results, text);
    r.ok = chk.matches;
    Ok(r)
}

fn strebel(d: &Dimer, w: &[Q], b: &[Q]) -> Result<Report, CliError> {
    let m = model(d, w)?;
    let sc = m.strebel(d, b).map_err(invalid)?;
    let mir = d.mirror();
    let (g, n) = (mir.genus(), mir.vertex_count() as i64);
    let mut text = format!("strips {} gluings {} zeros {}\n", sc.strips.len(), sc.gluings.len(), sc.zeros.len());
    for s in &sc.strips {
        let width = s.width.as_ref().map_or("inf".to_string(), Q::to_string);
        writeln!(text, "strip arrow {} edge {} width={} height={}", d.arrow_name(s.arrow), s.edge + 1, width, s.height).unwrap();
    }
    for z in &sc.zeros {
        writeln!(text, "zero face {} node {} order {}", z.face + 1, z.cell + 1, z.order).unwrap();
    }
    writeln!(text, "zero order sum {} = 4g-4+2n with g={g} n={n}: {}", sc.zero_order_sum(), 4 * g - 4 + 2 * n).unwrap();
    writeln!(text, "area {}", sc.area()).unwrap();
    let results = json!({
        "strips": sc.strips.iter().map(|s| json!({
            "arrow": s.arrow + 1, "edge": s.edge + 1,
            "width": s.width.as_ref().map(Q::to_string), "height": s.height.to_string(),
        })).collect::<Vec<_>>(),
        "gluings": sc.gluings.iter().map(|x| json!({"face": x.face + 1, "edge": x.edge + 1, "strips": [x.strips[0] + 1, x.strips[1] + 1]})).collect::<Vec<_>>(),
        "zeros": sc.zeros.iter().map(|z| json!({"face": z.face + 1, "node": z.cell + 1, "order": z.order})).collect::<Vec<_>>(),
        "zero_order_sum": sc.zero_order_sum(),
        "mirror_genus": g,
        "punctures": n,
        "area": sc.area().to_string(),
    });
    let mut r = report("strebel", results, text);
    r.ok = sc.zero_order_sum() == 4 * g - 4 + 2 * n;
    Ok(r)
}

fn corpus() -> Report {
    let outcomes = acceptance::run_all();
    let mut text = String::new();
    for o in &outcomes {
        writeln!(text, "{}", o.line()).unwrap();
    }
    let passed = outcomes.iter().filter(|o| o.passed()).count();
    writeln!(text, "{passed}/{} criteria pass", outcomes.len()).unwrap();
    let results = json!({
        "criteria": outcomes.iter().map(|o| json!({
            "id": o.id, "title": o.title, "pass": o.passed(),
            "detail": match &o.result { Ok(s) | Err(s) => s },
        })).collect::<Vec<_>>(),
        "passed": passed,
    });
    let mut r = report("corpus", results, text);
    r.ok = passed == outcomes.len();
    r
}
