use serde::Serialize;
use serde_json::json;

use medcons_core::benzenoid::{build_benzenoid, parse_cells, tree_embedding, verify_benzenoid_lemmas, write_cells, Benzenoid, BenzenoidError};
use medcons_core::classify::classify;
use medcons_core::consensus::l6::{hexagon, tabulate_l6};
use medcons_core::consensus::{
    check_axiom, check_xinl, compare_functions, l6_eval, tabulate_median, verify_l6_is_abc, Axiom, C6Profile,
    TabulatedConsensus, DEFAULT_TABLE_CAP,
};
use medcons_core::graph::generators::{bhat, bn};
use medcons_core::graph::io::write_graph;
use medcons_core::hypergraph::{build_counterexample, incidence_graph, CounterexampleKind, Hypergraph};
use medcons_core::median::{check_unimodal_equals_connected, median_set, total_distances};
use medcons_core::pairing::local::{local_graph, matching_stable_set_check, Variant};
use medcons_core::pairing::polytope::{double_pairing_property, PolytopeOptions};
use medcons_core::pairing::{has_perfect_pairing, maximum_pairing, pairing_property_bounded_search};
use medcons_core::{Graph, Profile, ProfileBudget};

use crate::args::*;
use crate::{CliError, Context, Verdict};

type Res = Result<Verdict, CliError>;

#[derive(Serialize)]
struct BudgetEcho {
    max_support: usize,
    max_mult: u32,
    cap: u128,
    profiles: u128,
}

fn budget_of(ctx: &Context, b: &BudgetArgs, n: usize) -> (ProfileBudget, BudgetEcho) {
    let mut budget = ProfileBudget::new(b.support, b.mult).with_exec(ctx.exec);
    budget.cap = b.cap;
    let echo = BudgetEcho { max_support: b.support, max_mult: b.mult, cap: b.cap, profiles: budget.count(n) };
    (budget, echo)
}

fn profile(g: &Graph, text: &str) -> Result<Profile, CliError> {
    Ok(Profile::parse(text, g.vertex_count())?)
}

fn write_out(ctx: &Context, out: &Option<String>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => ctx.write(p, text),
        None => Ok(()),
    }
}

pub(crate) fn dispatch(ctx: &Context, verb: &Verb) -> Res {
    match verb {
        Verb::Classify { graph } => {
            let g = ctx.graph(graph)?;
            let r = classify(&g, ctx.exec);
            let flags = [
                ("bipartite", r.bipartite),
                ("modular", r.modular),
                ("median", r.median),
                ("helly", r.helly),
                ("bipartite_helly", r.bipartite_helly),
                ("meshed", r.meshed),
            ];
            let on: Vec<&str> = flags.iter().filter(|f| f.1).map(|f| f.0).collect();
            let summary = format!("{}", if on.is_empty() { "no class".into() } else { on.join(", ") });
            Ok(Verdict::new(r.respects_hierarchy(), &r, summary).on(&g))
        }
        Verb::Median { graph, profile: p } => {
            let g = ctx.graph(graph)?;
            let pi = profile(&g, p)?;
            let med = median_set(&g, &pi);
            let f = total_distances(&g, &pi);
            let summary = format!("Med = {:?}", med.to_vec());
            Ok(Verdict::new(true, json!({ "profile": pi, "median_set": med, "total_distances": f }), summary).on(&g))
        }
        Verb::VerifyConnectedMedians { graph, power, budget } => {
            let g = ctx.graph(graph)?;
            if *power == 0 {
                return Err(CliError("--power must be at least 1".into()));
            }
            let (b, echo) = budget_of(ctx, budget, g.vertex_count());
            let r = check_unimodal_equals_connected(&g, *power, &b)?;
            let summary = format!("{} profiles, {} failures", r.profiles_checked, r.failures.len());
            Ok(Verdict::new(r.passed(), &r, summary).on(&g).budget(echo))
        }
        Verb::Pairing(p) => pairing(ctx, p),
        Verb::Construct(c) => construct(ctx, c),
        Verb::Consensus(c) => consensus(ctx, c),
        Verb::Benzenoid(b) => benzenoid(ctx, b),
        Verb::Corpus { .. } => unreachable!("handled by the runner"),
    }
}

fn pairing(ctx: &Context, verb: &PairingVerb) -> Res {
    match verb {
        PairingVerb::Check { graph, profile: p } => {
            let g = ctx.graph(graph)?;
            let pi = profile(&g, p)?;
            let min_f = total_distances(&g, &pi).into_iter().min().unwrap_or(0);
            match has_perfect_pairing(&g, &pi)? {
                Some((pairing, median)) => {
                    let summary = format!("perfect pairing of cost {min_f} certified at {median}");
                    let r = json!({ "profile": pi, "perfect": true, "pairing": pairing, "median": median, "min_total_distance": min_f });
                    Ok(Verdict::new(true, r, summary).on(&g))
                }
                None => {
                    let (best, cost) = maximum_pairing(&g, &pi)?;
                    let summary = format!("no perfect pairing: best pairing {cost} < min F {min_f}");
                    let r = json!({
                        "profile": pi,
                        "perfect": false,
                        "witness": { "best_pairing": best, "best_cost": cost, "min_total_distance": min_f },
                    });
                    Ok(Verdict::new(false, r, summary).on(&g))
                }
            }
        }
        PairingVerb::Search { graph, budget } => {
            let g = ctx.graph(graph)?;
            let (b, echo) = budget_of(ctx, budget, g.vertex_count());
            let w = pairing_property_bounded_search(&g, &b)?;
            let summary = match &w {
                Some(p) => format!("profile {p} has no perfect pairing"),
                None => "every even profile in the budget has a perfect pairing".into(),
            };
            let r = json!({ "holds": w.is_none(), "witness": w, "scope": "verified within budget" });
            Ok(Verdict::new(w.is_none(), r, summary).on(&g).budget(echo))
        }
        PairingVerb::Double { graph, stable_cap } => {
            let g = ctx.graph(graph)?;
            let opts = PolytopeOptions { stable_cap: *stable_cap, exec: ctx.exec };
            let r = double_pairing_property(&g, opts)?;
            let summary = match &r.witness {
                Some(w) => format!("fails at {}: doubled {} has no perfect pairing", w.violation.base, w.profile),
                None => format!("holds at all {} vertices", r.vertices_checked),
            };
            Ok(Verdict::new(r.holds, &r, summary).on(&g))
        }
        PairingVerb::Local { graph, vertex, variant, budget, stable_cap } => {
            let g = ctx.graph(graph)?;
            if *vertex >= g.vertex_count() {
                return Err(CliError(format!("vertex {vertex} out of range for {} vertices", g.vertex_count())));
            }
            let b = local_graph(&g, *vertex);
            let v = match variant {
                VariantArg::Single => Variant::Single,
                VariantArg::Double => Variant::Double,
            };
            let (bud, echo) = budget_of(ctx, budget, b.graph.vertex_count());
            let r = matching_stable_set_check(&b.graph, v, &bud, *stable_cap)?;
            let witness = r.witness.as_ref().map(|w| {
                let pairs: Vec<(usize, u32)> = w.profile.canonical().into_iter().map(|(x, k)| (b.map[x], k)).collect();
                json!({
                    "stable_set": b.to_host(&w.stable_set),
                    "profile": Profile::from_pairs(g.vertex_count(), &pairs),
                })
            });
            let summary = match &witness {
                Some(w) => format!("B_{vertex} fails with {}", w["profile"]),
                None => format!("B_{vertex} passes ({})", r.scope),
            };
            let report = json!({
                "center": vertex,
                "ball": b.map,
                "local_graph": write_graph(&b.graph),
                "variant": r.variant,
                "holds": r.holds,
                "scope": r.scope,
                "witness": witness,
            });
            let verdict = Verdict::new(r.holds, report, summary).on(&g);
            Ok(if v == Variant::Single { verdict.budget(echo) } else { verdict })
        }
    }
}

fn construct(ctx: &Context, verb: &ConstructVerb) -> Res {
    match verb {
        ConstructVerb::Bn { n, out } | ConstructVerb::Bhat { n, out } => {
            let g = if matches!(verb, ConstructVerb::Bn { .. }) { bn(*n)? } else { bhat(*n)? };
            let text = write_graph(&g);
            write_out(ctx, out, &text)?;
            let summary = format!("{} vertices, {} edges", g.vertex_count(), g.edge_count());
            Ok(Verdict::new(true, json!({ "graph": text }), summary).on(&g))
        }
        ConstructVerb::Incidence { hypergraph, out } => {
            let h = Hypergraph::parse(&ctx.read(hypergraph)?)?;
            let (g, layout) = incidence_graph(&h)?;
            let text = write_graph(&g);
            write_out(ctx, out, &text)?;
            let labels: Vec<String> = g.vertices().map(|v| layout.label(v)).collect();
            let summary = format!("{} vertices, hub {}", g.vertex_count(), layout.hub);
            Ok(Verdict::new(true, json!({ "graph": text, "layout": layout, "labels": labels }), summary).on(&g))
        }
        ConstructVerb::Counterexample { kind, out } => {
            let kind = match kind {
                KindArg::Pairing => CounterexampleKind::Pairing,
                KindArg::Double => CounterexampleKind::DoublePairing,
            };
            let cx = build_counterexample(kind)?;
            let text = write_graph(&cx.graph);
            write_out(ctx, out, &text)?;
            let labels: Vec<String> = cx.graph.vertices().map(|v| cx.layout.label(v)).collect();
            let summary = format!("{} vertices, profile {}", cx.graph.vertex_count(), cx.profile);
            let r = json!({
                "kind": cx.kind,
                "m": cx.m,
                "base_graph": write_graph_simple(&cx.c),
                "hypergraph": cx.hypergraph.to_text(),
                "graph": text,
                "layout": cx.layout,
                "labels": labels,
                "profile": cx.profile,
            });
            Ok(Verdict::new(true, r, summary).on(&cx.graph))
        }
    }
}

fn write_graph_simple(g: &medcons_core::SimpleGraph) -> String {
    let mut s = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

/// A table file, or `med` / `l6` tabulated up to `max_len`.
fn table(ctx: &Context, g: &Graph, which: &str, max_len: usize) -> Result<TabulatedConsensus, CliError> {
    match which {
        "med" => Ok(tabulate_median(g, max_len, DEFAULT_TABLE_CAP, ctx.exec)?),
        "l6" => {
            if *g != hexagon() {
                return Err(CliError("l6 is defined on the hexagon cycle:6 only".into()));
            }
            Ok(tabulate_l6(max_len, ctx.exec)?)
        }
        file => Ok(TabulatedConsensus::parse(g, &ctx.read(file)?)?),
    }
}

fn consensus(ctx: &Context, verb: &ConsensusVerb) -> Res {
    match verb {
        ConsensusVerb::TabulateMed { graph, max_len, out } => {
            let g = ctx.graph(graph)?;
            let t = tabulate_median(&g, *max_len, DEFAULT_TABLE_CAP, ctx.exec)?;
            let text = t.to_text();
            write_out(ctx, out, &text)?;
            let summary = format!("{} profiles", t.len());
            Ok(Verdict::new(true, json!({ "max_len": max_len, "profiles": t.len(), "table": text }), summary)
                .on(&g)
                .budget(json!({ "max_len": max_len })))
        }
        ConsensusVerb::Check { graph, axiom, max_len, table: file } => {
            let g = ctx.graph(graph)?;
            let t = table(ctx, &g, file.as_deref().unwrap_or("med"), *max_len)?;
            let budget = json!({ "max_len": t.max_len() });
            if axiom.eq_ignore_ascii_case("xinl") {
                let r = check_xinl(&t, ctx.exec);
                let summary = format!("{} instances, {}", r.checked, if r.holds { "holds" } else { "violated" });
                return Ok(Verdict::new(r.holds, &r, summary).on(&g).budget(budget));
            }
            let ax: Axiom = axiom.parse()?;
            let r = check_axiom(&t, ax, ctx.exec)?;
            let summary = format!("axiom {ax}: {} instances, {}", r.checked, if r.holds { "holds" } else { "violated" });
            Ok(Verdict::new(r.holds, &r, summary).on(&g).budget(budget))
        }
        ConsensusVerb::L6 { profile: Some(p), .. } => {
            let g = hexagon();
            let pi = C6Profile::from_profile(&profile(&g, p)?)?;
            let value = l6_eval(&pi)?;
            let med = median_set(&g, &pi.to_profile());
            let summary = format!("L6 = {:?}, Med = {:?}", value.to_vec(), med.to_vec());
            let r = json!({
                "profile": pi.to_profile(),
                "reduced": pi.reduced().to_profile(),
                "alternate": pi.is_alternate(),
                "value": value,
                "median_set": med,
            });
            Ok(Verdict::new(true, r, summary).on(&g))
        }
        ConsensusVerb::L6 { profile: None, max_len } => {
            let r = verify_l6_is_abc(*max_len, ctx.exec)?;
            let summary = format!("{} profiles, {} divergences from Med", r.entries, r.divergences);
            Ok(Verdict::new(r.passed(), &r, summary).on(&hexagon()).budget(json!({ "max_len": max_len })))
        }
        ConsensusVerb::Compare { graph, left, right, max_len } => {
            let g = ctx.graph(graph)?;
            // a file fixes the length bound for keyword sides
            let file_len = [left, right]
                .into_iter()
                .find(|s| !matches!(s.as_str(), "med" | "l6"))
                .map(|f| table(ctx, &g, f, 0).map(|t| t.max_len()))
                .transpose()?;
            let len = file_len.unwrap_or(*max_len);
            let a = table(ctx, &g, left, len)?;
            let b = table(ctx, &g, right, len)?;
            let div = compare_functions(&a, &b)?;
            let summary = format!("{} of {} profiles differ", div.len(), a.len());
            let r = json!({ "profiles": a.len(), "divergences": div.len(), "first": div.first(), "all": div });
            Ok(Verdict::new(div.is_empty(), r, summary).on(&g).budget(json!({ "max_len": len })))
        }
    }
}

fn load_benzenoid(ctx: &Context, file: &str) -> Result<Benzenoid, CliError> {
    Ok(build_benzenoid(&parse_cells(&ctx.read(file)?)?)?)
}

fn benzenoid(ctx: &Context, verb: &BenzenoidVerb) -> Res {
    match verb {
        BenzenoidVerb::Build { cells, out } => {
            let b = load_benzenoid(ctx, cells)?;
            let g = b.graph();
            let text = write_graph(g);
            write_out(ctx, out, &text)?;
            let classes: Vec<[usize; 3]> = b.classified_edges().into_iter().map(|(u, v, c)| [u, v, c as usize]).collect();
            let summary = format!("{} cells, {} vertices, {} edges", b.cells().len(), g.vertex_count(), g.edge_count());
            let r = json!({
                "cells": write_cells(b.cells()),
                "graph": text,
                "points": b.points(),
                "edge_classes": classes,
                "hexagons": b.hexagons(),
                "incomplete_hexagons": b.incomplete_hexagons(),
            });
            Ok(Verdict::new(true, r, summary).on(g))
        }
        BenzenoidVerb::Embed { cells } => {
            let b = load_benzenoid(ctx, cells)?;
            match tree_embedding(&b) {
                Ok(e) => {
                    let summary = format!("trees of sizes {:?}, {} pairs isometric", e.tree_sizes, e.pairs_checked);
                    Ok(Verdict::new(true, &e, summary).on(b.graph()))
                }
                Err(BenzenoidError::Embedding(msg)) => {
                    Ok(Verdict::new(false, json!({ "witness": msg }), format!("embedding fails: {msg}")).on(b.graph()))
                }
                Err(e) => Err(e.into()),
            }
        }
        BenzenoidVerb::Verify { cells, budget } => {
            let b = load_benzenoid(ctx, cells)?;
            let (bud, echo) = budget_of(ctx, budget, b.graph().vertex_count());
            let r = verify_benzenoid_lemmas(&b, &bud)?;
            let summary = format!(
                "{} hexagons, {} incomplete hexagons, {} profiles, {}",
                r.hexagons,
                r.incomplete_hexagons,
                r.profiles_checked,
                if r.passed() { "all lemmas hold" } else { "violation found" }
            );
            Ok(Verdict::new(r.passed(), &r, summary).on(b.graph()).budget(echo))
        }
    }
}
