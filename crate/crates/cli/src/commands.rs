//! One handler per subcommand; each returns a text and a JSON rendering.

use std::fmt::Write as _;
use std::io::Write;

use num_bigint::BigUint;
use serde_json::{json, Value};

use fusioncat_core::catalog::{build_named, build_pointed, build_psu2, build_ty, ring_isomorphism, standard_entries};
use fusioncat_core::center::{
    anomaly_verdict, antisymmetric_bicharacters, boundary_count_group, center_of_pointed, enumerate_lagrangians,
    lagrangian_from_pair, orbit_fixed_point_forced, ty_duality_auto, AnomalyVerdict, Lagrangian, MetricGroup,
    Subgroup,
};
use fusioncat_core::channels::SymmetryHypergroup;
use fusioncat_core::fusion_ring::{fp_dimensions, is_integral, regular_object, tensor_multiplicities, verify_ring};
use fusioncat_core::lsm::{
    duality_gapless_verdict, fiber_functor_verdict, lsm_verdict, realizability_report, vacua_count, StateVerdict,
};
use fusioncat_core::spin_chain::{chain_dims_sum, embedding_dim_check, pauli_kw_check, regular_bigraded};
use fusioncat_core::temperley_lieb::{
    jones_projection, jones_wenzl, kw_shift_check, loop_parameter, semisimple_dims, tl_dim, RELATION_TOL,
};
use fusioncat_core::{ChannelCombo, FusionRing, TLElement};

use crate::format::{big_int, real};
use crate::parse;
use crate::{CatalogCmd, CenterCmd, ChainCmd, ChannelsCmd, CliError, Command, LsmCmd, Report, RingCmd, TlCmd};

type Out = Result<Report, CliError>;

pub fn dispatch(cmd: &Command, diag: &mut dyn Write) -> Out {
    match cmd {
        Command::Ring(c) => ring(c),
        Command::Catalog(c) => catalog(c),
        Command::Center(c) => center(c),
        Command::Channels(c) => channels(c),
        Command::Chain(c) => chain(c, diag),
        Command::Tl(c) => tl(c),
        Command::Lsm(c) => lsm(c),
    }
}

fn report(text: String, result: Value) -> Out {
    Ok(Report { text, result })
}

fn big(x: &BigUint) -> Value {
    big_int(&x.to_string())
}

/// Left-aligned columns separated by two spaces.
fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (i, (cell, w)) in cells.iter().zip(&widths).enumerate() {
            if i + 1 == cells.len() {
                s.push_str(cell);
            } else {
                let pad = w - cell.chars().count();
                write!(s, "{cell}{}  ", " ".repeat(pad)).unwrap();
            }
        }
        s.push('\n');
        s
    };
    let mut out = line(header.to_vec());
    for row in rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    out
}

/// `a X + b Y` with zero terms dropped.
fn linear_combination(ring: &FusionRing, mult: &[u64]) -> String {
    let terms: Vec<String> = mult
        .iter()
        .enumerate()
        .filter(|(_, &n)| n > 0)
        .map(|(z, &n)| {
            if n == 1 {
                ring.label(z).to_string()
            } else {
                format!("{n}{}", ring.label(z))
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

// ---------------------------------------------------------------- ring

fn ring(cmd: &RingCmd) -> Out {
    match cmd {
        RingCmd::Verify(a) => {
            let ring = parse::raw_ring(&a.ring)?;
            let rep = verify_ring(&ring);
            let text = match &rep.violation {
                None => format!("{}: all axioms hold\n", ring.name()),
                Some(v) => {
                    let w: Vec<&str> = v.witness.iter().map(|&x| ring.label(x)).collect();
                    format!("{}: {} fails at ({}): {}\n", ring.name(), v.axiom, w.join(", "), v.detail)
                }
            };
            report(text, serde_json::to_value(&rep).expect("report serializes"))
        }
        RingCmd::Dims(a) => {
            let ring = parse::ring_entry(&a.ring)?.ring;
            let dims = fp_dimensions(&ring)?;
            let rows: Vec<Vec<String>> = ring
                .labels()
                .iter()
                .zip(&dims.values)
                .map(|(l, &d)| vec![l.clone(), real(d)])
                .collect();
            let mut text = table(&["label", "d"], &rows);
            writeln!(text, "global dimension: {}", real(dims.global_dimension())).unwrap();
            report(
                text,
                json!({
                    "labels": ring.labels(),
                    "dims": dims.values,
                    "exact_integers": dims.exact_integers,
                    "global_dimension": dims.global_dimension(),
                }),
            )
        }
        RingCmd::Integral(a) => {
            let ring = parse::ring_entry(&a.ring)?.ring;
            let v = is_integral(&ring)?;
            let mut text = format!("integral: {}\n", v.integral);
            for &(x, d) in &v.non_integral {
                writeln!(text, "  d_{} = {}", ring.label(x), real(d)).unwrap();
            }
            let non: Vec<Value> = v
                .non_integral
                .iter()
                .map(|&(x, d)| json!({"label": ring.label(x), "dim": d}))
                .collect();
            report(text, json!({"integral": v.integral, "non_integral": non, "integers": v.integers}))
        }
        RingCmd::Tensor(a) => {
            let ring = parse::ring_entry(&a.ring)?.ring;
            let word = parse::word(&ring, &a.word)?;
            let mult = tensor_multiplicities(&ring, &word)?;
            let lhs: Vec<&str> = word.iter().map(|&x| ring.label(x)).collect();
            let text = format!("{} = {}\n", lhs.join(" ⊗ "), linear_combination(&ring, &mult));
            report(text, json!({"labels": ring.labels(), "multiplicities": mult}))
        }
        RingCmd::Regular(a) => {
            let ring = parse::ring_entry(&a.ring)?.ring;
            let mult = regular_object(&ring)?;
            let text = format!("R = {}\n", linear_combination(&ring, &mult));
            report(text, json!({"labels": ring.labels(), "multiplicities": mult}))
        }
        RingCmd::Show(a) => {
            let ring = parse::raw_ring(&a.ring)?;
            let text = ring.to_text();
            report(text.clone(), json!({"name": ring.name(), "text": text}))
        }
        RingCmd::Iso(a) => {
            let (x, y) = (parse::raw_ring(&a.ring)?, parse::raw_ring(&a.other)?);
            let iso = ring_isomorphism(&x, &y);
            let text = match &iso {
                None => format!("{} and {} are not isomorphic\n", x.name(), y.name()),
                Some(p) => {
                    let pairs: Vec<String> =
                        p.iter().enumerate().map(|(i, &j)| format!("{} ↦ {}", x.label(i), y.label(j))).collect();
                    format!("isomorphic: {}\n", pairs.join(", "))
                }
            };
            report(text, json!({"isomorphic": iso.is_some(), "permutation": iso}))
        }
    }
}

// ---------------------------------------------------------------- catalog

fn show_ring(ring: FusionRing, notes: Option<&str>) -> Out {
    let mut text = String::new();
    if let Some(n) = notes {
        writeln!(text, "# {n}").unwrap();
    }
    text.push_str(&ring.to_text());
    report(
        text,
        json!({"name": ring.name(), "rank": ring.rank(), "labels": ring.labels(), "notes": notes, "text": ring.to_text()}),
    )
}

fn catalog(cmd: &CatalogCmd) -> Out {
    match cmd {
        CatalogCmd::List => {
            let entries = standard_entries()?;
            let mut rows = Vec::new();
            let mut items = Vec::new();
            for e in &entries {
                let dims = fp_dimensions(&e.ring)?;
                rows.push(vec![
                    e.name.clone(),
                    e.ring.rank().to_string(),
                    real(dims.global_dimension()),
                    e.fiber_functor_flag.to_string(),
                ]);
                items.push(json!({
                    "name": e.name,
                    "rank": e.ring.rank(),
                    "global_dimension": dims.global_dimension(),
                    "fiber_functor": e.fiber_functor_flag,
                }));
            }
            report(table(&["name", "rank", "global dim", "fiber functor"], &rows), json!(items))
        }
        CatalogCmd::Show(a) => {
            let e = build_named(&a.name)?;
            show_ring(e.ring, Some(&e.notes))
        }
        CatalogCmd::Pointed(a) => show_ring(build_pointed(&parse::factors(&a.factors)?)?, None),
        CatalogCmd::Ty(a) => show_ring(build_ty(&parse::factors(&a.factors)?, a.s)?, None),
        CatalogCmd::Psu2(a) => show_ring(build_psu2(a.k)?, None),
    }
}

// ---------------------------------------------------------------- center

fn pointed_center(spec: &str) -> Result<MetricGroup, CliError> {
    Ok(center_of_pointed(&parse::abelian_group(spec)?))
}

fn lagrangian_json(m: &MetricGroup, l: &Lagrangian) -> Value {
    let elems: Vec<String> = l.elements().iter().map(|&x| m.element_name(x)).collect();
    json!({"name": l.display(m), "order": l.order, "elements": elems})
}

fn anomaly_json(m: &MetricGroup, v: &AnomalyVerdict) -> Value {
    let names: Vec<String> = v.lagrangians.iter().map(|l| l.display(m)).collect();
    json!({
        "lagrangians": names,
        "orbits": v.orbits,
        "fixed": v.fixed,
        "anomalous": v.anomalous,
    })
}

fn anomaly_text(m: &MetricGroup, v: &AnomalyVerdict) -> String {
    let mut text = String::new();
    for (i, orbit) in v.orbits.iter().enumerate() {
        let names: Vec<String> = orbit.iter().map(|&j| v.lagrangians[j].display(m)).collect();
        writeln!(text, "orbit {}: {}", i + 1, names.join(" ↔ ")).unwrap();
    }
    let fixed: Vec<String> = v.fixed.iter().map(|&j| v.lagrangians[j].display(m)).collect();
    writeln!(text, "fixed: {}", if fixed.is_empty() { "none".into() } else { fixed.join(", ") }).unwrap();
    writeln!(text, "anomalous: {}", v.anomalous).unwrap();
    text
}

fn center(cmd: &CenterCmd) -> Out {
    match cmd {
        CenterCmd::Lagrangians(a) => {
            let m = pointed_center(&a.group)?;
            let ls = enumerate_lagrangians(&m)?;
            let rows: Vec<Vec<String>> = ls
                .iter()
                .enumerate()
                .map(|(i, l)| vec![(i + 1).to_string(), l.display(&m), l.order.to_string()])
                .collect();
            let mut text = table(&["#", "lagrangian", "order"], &rows);
            writeln!(text, "count: {}", ls.len()).unwrap();
            let items: Vec<Value> = ls.iter().map(|l| lagrangian_json(&m, l)).collect();
            report(text, json!({"center": m.to_string(), "lagrangians": items, "count": ls.len()}))
        }
        CenterCmd::Metric(a) => {
            let m = pointed_center(&a.group)?;
            let mut rows = Vec::new();
            let mut items = Vec::new();
            for x in 0..m.order() {
                let (num, den) = m.q_fraction(x);
                let q = if num == 0 { "0".to_string() } else { format!("{num}/{den}") };
                rows.push(vec![m.element_name(x), q.clone()]);
                items.push(json!({"element": m.element_name(x), "q": q}));
            }
            let mut text = format!("{} of order {}\n", m, m.order());
            text.push_str(&table(&["element", "q"], &rows));
            report(text, json!({"center": m.to_string(), "order": m.order(), "elements": items}))
        }
        CenterCmd::Pairs(a) => {
            let g = parse::abelian_group(&a.group)?;
            let m = center_of_pointed(&g);
            let mut rows = Vec::new();
            let mut items = Vec::new();
            for elems in g.subgroups() {
                let h = Subgroup::from_elements(&g, elems)?;
                let hname: Vec<String> = h.elements.iter().map(|&x| g.format_element(x)).collect();
                let hname = format!("{{{}}}", hname.join(","));
                for (i, b) in antisymmetric_bicharacters(&g, &h)?.iter().enumerate() {
                    let l = lagrangian_from_pair(&m, &h, b)?;
                    rows.push(vec![hname.clone(), i.to_string(), l.display(&m)]);
                    items.push(json!({"subgroup": hname, "bicharacter": i, "lagrangian": lagrangian_json(&m, &l)}));
                }
            }
            let mut text = table(&["H", "b", "lagrangian"], &rows);
            writeln!(text, "count: {}", items.len()).unwrap();
            report(text, json!({"center": m.to_string(), "pairs": items, "count": items.len()}))
        }
        CenterCmd::Anomaly(a) => {
            let m = pointed_center(&a.group)?;
            let phi = ty_duality_auto(&m, a.s)?;
            let v = anomaly_verdict(&m, &phi)?;
            report(anomaly_text(&m, &v), anomaly_json(&m, &v))
        }
        CenterCmd::Boundaries(a) => {
            let g = parse::finite_group(&a.group)?;
            let c = boundary_count_group(&g)?;
            let rows: Vec<Vec<String>> = c
                .classes
                .iter()
                .map(|k| {
                    vec![k.name.clone(), k.order.to_string(), k.class_size.to_string(), k.multiplier.to_string()]
                })
                .collect();
            let mut text = table(&["subgroup", "order", "conjugates", "multiplier"], &rows);
            writeln!(text, "total: {}", c.total).unwrap();
            report(text, serde_json::to_value(&c).expect("count serializes"))
        }
        CenterCmd::Forced(a) => {
            let forced = orbit_fixed_point_forced(a.count, a.order)?;
            let text = format!("fixed point forced: {forced}\n");
            report(text, json!({"forced": forced}))
        }
    }
}

// ---------------------------------------------------------------- channels

fn combo_text(h: &SymmetryHypergroup, c: &ChannelCombo) -> String {
    let ring = h.ring();
    let terms: Vec<String> = c
        .support()
        .into_iter()
        .map(|z| {
            let coeff = match c.exact() {
                Some(e) => e[z].to_string(),
                None => real(c.coefficient(z)),
            };
            format!("{coeff} λ_{}", ring.label(z))
        })
        .collect();
    terms.join(" + ")
}

fn combo_json(c: &ChannelCombo) -> Value {
    let exact = c.exact().map(|e| e.iter().map(|q| q.to_string()).collect::<Vec<_>>());
    json!({"coefficients": c.coefficients(), "exact": exact})
}

fn channels(cmd: &ChannelsCmd) -> Out {
    match cmd {
        ChannelsCmd::Table(a) => {
            let ring = parse::ring_entry(&a.ring)?.ring;
            let h = SymmetryHypergroup::new(&ring)?;
            let mut text = String::new();
            let mut items = Vec::new();
            for x in 0..ring.rank() {
                for y in 0..ring.rank() {
                    let c = h.lambda_compose(x, y)?;
                    writeln!(text, "λ_{} λ_{} = {}", ring.label(x), ring.label(y), combo_text(&h, &c)).unwrap();
                    items.push(json!({"left": ring.label(x), "right": ring.label(y), "combo": combo_json(&c)}));
                }
            }
            let e = h.conditional_expectation();
            writeln!(text, "E = {}", combo_text(&h, &e)).unwrap();
            report(
                text,
                json!({"labels": ring.labels(), "exact": h.is_exact(), "table": items, "expectation": combo_json(&e)}),
            )
        }
        ChannelsCmd::Compose(a) => {
            let ring = parse::ring_entry(&a.ring)?.ring;
            let h = SymmetryHypergroup::new(&ring)?;
            let left = h.combo_exact(parse::combo(&ring, &a.left)?)?;
            let right = h.combo_exact(parse::combo(&ring, &a.right)?)?;
            let c = h.combo_compose(&left, &right)?;
            let text = format!("{}\n", combo_text(&h, &c));
            report(text, json!({"labels": ring.labels(), "combo": combo_json(&c)}))
        }
        ChannelsCmd::Expectation(a) => {
            let ring = parse::ring_entry(&a.ring)?.ring;
            let h = SymmetryHypergroup::new(&ring)?;
            let e = h.conditional_expectation();
            let ee = h.combo_compose(&e, &e)?;
            let tol = fusioncat_core::channels::CHANNEL_TOL;
            let idempotent = ee.equals(&e, tol);
            let mut absorbs = true;
            for x in 0..ring.rank() {
                let l = h.lambda(x)?;
                absorbs &= h.combo_compose(&e, &l)?.equals(&e, tol) && h.combo_compose(&l, &e)?.equals(&e, tol);
            }
            let text = format!("E = {}\nE∘E = E: {idempotent}\nE∘λ = λ∘E = E: {absorbs}\n", combo_text(&h, &e));
            report(
                text,
                json!({"labels": ring.labels(), "expectation": combo_json(&e), "idempotent": idempotent, "absorbs": absorbs}),
            )
        }
    }
}

// ---------------------------------------------------------------- chain

fn chain(cmd: &ChainCmd, diag: &mut dyn Write) -> Out {
    match cmd {
        ChainCmd::Dims(a) => {
            let ring = parse::ring_entry(&a.ring)?.ring;
            let obj = parse::object(&ring, &a.object)?;
            let mut duals: Vec<usize> = obj.iter().map(|&x| ring.dual(x)).collect();
            let mut sorted = obj.clone();
            duals.sort_unstable();
            sorted.sort_unstable();
            if duals != sorted {
                let _ = writeln!(diag, "warning: {} is not self-dual", a.object);
            }
            let dims = chain_dims_sum(&ring, &obj, a.n)?;
            let rows: Vec<Vec<String>> =
                dims.iter().enumerate().map(|(i, d)| vec![(i + 1).to_string(), d.to_string()]).collect();
            let text = table(&["k", "dim End(X^k)"], &rows);
            report(text, json!({"dims": dims.iter().map(big).collect::<Vec<_>>()}))
        }
        ChainCmd::Bigraded(a) => {
            let ring = parse::ring_entry(&a.ring)?.ring;
            let b = regular_bigraded(&ring)?;
            let mut header = vec![""];
            header.extend(b.labels.iter().map(String::as_str));
            let rows: Vec<Vec<String>> = b
                .labels
                .iter()
                .zip(&b.dims)
                .map(|(l, row)| std::iter::once(l.clone()).chain(row.iter().map(u64::to_string)).collect())
                .collect();
            let mut text = table(&header, &rows);
            writeln!(text, "onsite dimension: {}", b.onsite_dim).unwrap();
            writeln!(text, "rank one (d_X d_Y): {}", b.is_rank_one()).unwrap();
            let mut v = serde_json::to_value(&b).expect("dims serialize");
            v["rank_one"] = json!(b.is_rank_one());
            report(text, v)
        }
        ChainCmd::Embed(a) => {
            let ring = parse::ring_entry(&a.ring)?.ring;
            let r = embedding_dim_check(&ring, a.k)?;
            let text = format!(
                "k = {}, d = {}\nentries d_X d_Y d^(k-1): {}\nimage dim {} ≤ target dim {}\npassed: {}\n",
                r.k, r.onsite_dim, r.entries_match, r.image_dim, r.target_dim, r.passed
            );
            let power: Vec<Vec<Value>> = r.power.iter().map(|row| row.iter().map(big).collect()).collect();
            report(
                text,
                json!({
                    "k": r.k,
                    "onsite_dim": r.onsite_dim,
                    "power": power,
                    "entries_match": r.entries_match,
                    "image_dim": big(&r.image_dim),
                    "target_dim": big(&r.target_dim),
                    "passed": r.passed,
                }),
            )
        }
        ChainCmd::KwPauli(a) => {
            let r = pauli_kw_check(a.n)?;
            let mut text = format!(
                "n = {}: {} generators, {} surviving, {} pairs checked\n",
                r.n, r.generators, r.surviving, r.pairs_checked
            );
            for (g, h) in &r.violations {
                writeln!(text, "  violation: {g}, {h}").unwrap();
            }
            writeln!(text, "passed: {}", r.passed).unwrap();
            report(text, serde_json::to_value(&r).expect("report serializes"))
        }
    }
}

// ---------------------------------------------------------------- tl

fn element_text(e: &TLElement<f64>) -> String {
    let mut text = String::new();
    for (d, c) in e.terms() {
        writeln!(text, "{:>20}  {d}", real(*c)).unwrap();
    }
    text
}

fn tl(cmd: &TlCmd) -> Out {
    match cmd {
        TlCmd::Dim(a) => {
            let d = tl_dim(a.m)?;
            report(format!("{d}\n"), json!({"dim": d}))
        }
        TlCmd::Semisimple(a) => {
            let d = semisimple_dims(a.k, a.m)?;
            report(format!("{d}\n"), json!({"dim": big(&d)}))
        }
        TlCmd::Jw(a) => {
            let delta = loop_parameter(a.k)?;
            let p = jones_wenzl(a.p, delta)?;
            let pp = p.multiply(&p)?;
            let idem = pp.distance(&p)?;
            let mut annihilation: f64 = 0.0;
            for i in 1..a.p {
                let e = jones_projection(i, a.p, delta)?;
                annihilation = annihilation.max(e.multiply(&p)?.max_abs_coeff());
                annihilation = annihilation.max(p.multiply(&e)?.max_abs_coeff());
            }
            let mut text = format!("JW_{} at δ = {} ({} terms)\n", a.p, real(delta), p.len());
            text.push_str(&element_text(&p));
            writeln!(text, "idempotence residual: {}", real(idem)).unwrap();
            writeln!(text, "annihilation residual: {}", real(annihilation)).unwrap();
            writeln!(text, "trace: {}", real(p.trace())).unwrap();
            let terms: Vec<Value> =
                p.terms().iter().map(|(d, c)| json!({"diagram": d.to_string(), "coefficient": c})).collect();
            report(
                text,
                json!({
                    "p": a.p,
                    "delta": delta,
                    "terms": terms,
                    "idempotence_residual": idem,
                    "annihilation_residual": annihilation,
                    "trace": p.trace(),
                }),
            )
        }
        TlCmd::KwCheck(a) => {
            let r = kw_shift_check(a.k, a.m)?;
            let mut text = format!(
                "k = {}, m = {}, δ = {}\nrelations: {} checked, residual {}, ok {}\n",
                r.k,
                r.m,
                real(r.delta),
                r.relations_checked,
                real(r.relation_residual),
                r.relations_ok
            );
            if let Some(jw) = &r.jw {
                writeln!(
                    text,
                    "JW_{} shift: idempotence {}, annihilation {}, trace {}, ok {}",
                    jw.p,
                    real(jw.idempotence_residual),
                    real(jw.annihilation_residual),
                    real(jw.trace),
                    jw.passed
                )
                .unwrap();
                if let (Some(w), Some(s)) = (jw.words, jw.symbolic_residual) {
                    writeln!(text, "  word expansion: {w} words, residual {}", real(s)).unwrap();
                }
            }
            writeln!(
                text,
                "Hamiltonian exchange: symbolic {}, residual {}",
                r.hamiltonian_symbolic_ok,
                real(r.hamiltonian_residual)
            )
            .unwrap();
            for n in &r.notes {
                writeln!(text, "note: {n}").unwrap();
            }
            writeln!(text, "passed: {}", r.passed).unwrap();
            report(text, serde_json::to_value(&r).expect("report serializes"))
        }
        TlCmd::Relations(a) => {
            let delta = loop_parameter(a.k)?;
            let m = a.m;
            let es: Vec<TLElement<f64>> =
                (1..m).map(|i| jones_projection(i, m, delta)).collect::<Result<_, _>>()?;
            let inv_d2 = 1.0 / (delta * delta);
            let (mut idem, mut adj, mut far, mut checked): (f64, f64, f64, usize) = (0.0, 0.0, 0.0, 0);
            for (i, e) in es.iter().enumerate() {
                idem = idem.max(e.multiply(e)?.distance(e)?);
                checked += 1;
                for (j, f) in es.iter().enumerate() {
                    if i.abs_diff(j) == 1 {
                        adj = adj.max(e.multiply(f)?.multiply(e)?.distance(&e.scale(&inv_d2))?);
                        checked += 1;
                    } else if i.abs_diff(j) > 1 {
                        far = far.max(e.multiply(f)?.distance(&f.multiply(e)?)?);
                        checked += 1;
                    }
                }
            }
            let ok = idem.max(adj).max(far) <= RELATION_TOL;
            let text = format!(
                "m = {m}, δ = {}: {checked} relations\ne_i² = e_i: {}\ne_i e_j e_i = δ⁻² e_i (|i-j| = 1): {}\ne_i e_j = e_j e_i (|i-j| > 1): {}\npassed: {ok}\n",
                real(delta),
                real(idem),
                real(adj),
                real(far)
            );
            report(
                text,
                json!({
                    "m": m,
                    "delta": delta,
                    "relations_checked": checked,
                    "idempotent_residual": idem,
                    "adjacent_residual": adj,
                    "commuting_residual": far,
                    "passed": ok,
                }),
            )
        }
    }
}

// ---------------------------------------------------------------- lsm

fn verdict_json(v: &StateVerdict) -> Value {
    let mut out = serde_json::to_value(&v.kind).expect("kind serializes");
    out["reason"] = json!(v.reason);
    out["text"] = json!(v.to_string());
    out
}

fn lsm(cmd: &LsmCmd) -> Out {
    match cmd {
        LsmCmd::Verdict(a) => {
            let e = parse::ring_entry(&a.ring)?;
            let v = lsm_verdict(&e);
            report(format!("{v}\n"), verdict_json(&v))
        }
        LsmCmd::Vacua(a) => {
            let m = pointed_center(&a.group)?;
            let state = Lagrangian::new(&m, parse::subgroup_spec(&m, &a.state)?)?;
            let ext = Lagrangian::new(&m, parse::subgroup_spec(&m, &a.ext)?)?;
            let n = vacua_count(&state, &ext)?;
            let text = format!("vacua({}, {}) = {n}\n", state.display(&m), ext.display(&m));
            report(text, json!({"state": state.display(&m), "ext": ext.display(&m), "vacua": n}))
        }
        LsmCmd::Duality(a) => {
            let m = pointed_center(&a.group)?;
            let phi = ty_duality_auto(&m, a.s)?;
            let v = duality_gapless_verdict(&m, &phi)?;
            let mut text = format!("{}\n", v.verdict);
            text.push_str(&anomaly_text(&m, &v.anomaly));
            report(text, json!({"verdict": verdict_json(&v.verdict), "anomaly": anomaly_json(&m, &v.anomaly)}))
        }
        LsmCmd::Realize(a) => {
            let e = parse::ring_entry(&a.ring)?;
            let r = realizability_report(&e);
            let text = format!(
                "{}\nanyon chain: {}\ntensor-product chain: {}\nonsite tensor-product chain: {}\n",
                r.ring, r.anyon_chain, r.tensor_product, r.onsite_tensor_product
            );
            report(text, serde_json::to_value(&r).expect("report serializes"))
        }
        LsmCmd::Fiber(a) => {
            let e = parse::ring_entry(&a.ring)?;
            let v = fiber_functor_verdict(&e);
            report(format!("{v}\n"), serde_json::to_value(&v).expect("verdict serializes"))
        }
    }
}
