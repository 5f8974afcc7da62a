//! Command-line front end: parse group specs and G-set expressions, run the
//! library computations, and emit text or versioned JSON reports.
//!
//! Exit codes: 0 success, 1 verification-negative (a check that ran and came
//! out false), 2 usage or semantic errors.

mod expr;
mod spec;

use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use burnside::error::Error;
use burnside::group::{construct, Group, GroupSpec};
use burnside::gset::{linearly_equivalent, perm_character, GSet};
use burnside::kernel::{
    character_matrix, is_unbalanced, kernel_basis, sunada_pairs, to_reduced_pair, BurnsideElement,
};
use burnside::pairs::{find_unbalanced_pair, Provenance};
use burnside::spectral::{
    char_poly, hecke_check, random_inverse_closed_multiset, schreier_adjacency,
    symmetrize_multiset, QForm,
};
use burnside::subgroup::subgroup_classes;

use expr::{parse_gset_expr, GSetExpr};
use spec::parse_group_spec;

const SCHEMA_VERSION: u64 = 1;

#[derive(Parser, Debug)]
#[command(
    name = "burnside",
    version,
    about = "Linearly equivalent G-sets, Burnside kernels, and exact cospectrality checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Emit a machine-readable JSON report instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Seed for randomized harnesses
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand, Debug, PartialEq)]
enum Command {
    /// Group overview: order, degree, conjugacy classes
    Info { spec: String },
    /// Conjugacy classes of subgroups (the Burnside basis)
    Subgroups { spec: String },
    /// Quasiregular character matrix and the kernel lattice basis
    Kernel { spec: String },
    /// Reduced pairs for each kernel basis vector, with unbalanced flags
    Pairs { spec: String },
    /// Construct an unbalanced pair, or report that the group is cyclic
    FindUnbalanced { spec: String },
    /// Non-conjugate subgroup classes with equal quasiregular characters
    Sunada { spec: String },
    /// Check two G-set expressions for linear equivalence
    Verify {
        spec: String,
        /// Left G-set, e.g. "coset(1) + coset(8)"
        #[arg(long)]
        x: String,
        /// Right G-set
        #[arg(long)]
        y: String,
    },
    /// Compare Schreier-graph characteristic polynomials of a pair
    Schreier {
        spec: String,
        /// "kernel:<i>" or "<expr>~<expr>"
        #[arg(long)]
        pair: String,
        /// "random:<k>", "random:<k>:<seed>", or element indices "1,3,5"
        #[arg(long)]
        gens: String,
    },
    /// Flat-torus representation-number comparison at level p
    Tori {
        #[arg(long)]
        p: usize,
        #[arg(long, default_value_t = 10000)]
        bound: u64,
    },
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
}

fn run(cli: &Cli) -> Result<i32, Error> {
    let (report, human, code) = match &cli.command {
        Command::Info { spec } => cmd_info(spec)?,
        Command::Subgroups { spec } => cmd_subgroups(spec)?,
        Command::Kernel { spec } => cmd_kernel(spec)?,
        Command::Pairs { spec } => cmd_pairs(spec)?,
        Command::FindUnbalanced { spec } => cmd_find_unbalanced(spec)?,
        Command::Sunada { spec } => cmd_sunada(spec)?,
        Command::Verify { spec, x, y } => cmd_verify(spec, x, y)?,
        Command::Schreier { spec, pair, gens } => cmd_schreier(spec, pair, gens, cli.seed)?,
        Command::Tori { p, bound } => cmd_tori(*p, *bound)?,
    };
    if cli.json {
        let mut full = report;
        full["schema_version"] = json!(SCHEMA_VERSION);
        full["seed"] = json!(cli.seed);
        println!("{}", serde_json::to_string_pretty(&full).expect("valid JSON"));
    } else {
        for line in human {
            println!("{line}");
        }
    }
    Ok(code)
}

fn build(text: &str) -> Result<(GroupSpec, Arc<Group>), Error> {
    let gspec = parse_group_spec(text)?;
    let g = construct(&gspec)?;
    Ok((gspec, g))
}

fn group_block(gspec: &GroupSpec, g: &Arc<Group>) -> Value {
    json!({
        "spec": gspec.canonical(),
        "order": g.order(),
        "degree": g.degree(),
        "abelian": g.is_abelian(),
        "cyclic": g.is_cyclic(),
    })
}

fn class_block(g: &Arc<Group>) -> Value {
    let classes = subgroup_classes(g);
    Value::Array(
        classes
            .iter()
            .map(|c| {
                let gens: Vec<String> = c
                    .representative
                    .generator_indices()
                    .iter()
                    .map(|&i| g.perm(i).to_string())
                    .collect();
                json!({
                    "index": c.index_in_basis,
                    "order": c.representative.order(),
                    "class_size": c.class_size,
                    "generators": gens,
                })
            })
            .collect(),
    )
}

fn coeffs_json(v: &BurnsideElement) -> Result<Value, Error> {
    let ints: Result<Vec<i64>, _> = v.coeffs().iter().map(i64::try_from).collect();
    ints.map(|v| json!(v)).map_err(|_| {
        Error::VerificationFailed("kernel coefficient exceeds i64 range".into())
    })
}

fn orbit_sizes(x: &GSet) -> Vec<usize> {
    let mut v: Vec<usize> = x.orbits().iter().map(|o| o.len()).collect();
    v.sort_unstable();
    v
}

fn cmd_info(spec_text: &str) -> Result<(Value, Vec<String>, i32), Error> {
    let (gspec, g) = build(spec_text)?;
    let classes: Vec<Value> = g
        .conjugacy_classes()
        .iter()
        .map(|c| {
            json!({
                "representative": g.perm(c.representative).to_string(),
                "size": c.size,
                "element_order": g.element_order(c.representative),
            })
        })
        .collect();
    let sizes: Vec<String> = g
        .conjugacy_classes()
        .iter()
        .map(|c| c.size.to_string())
        .collect();
    let human = vec![
        format!("group {}", gspec.canonical()),
        format!(
            "order {}, degree {}, abelian: {}, cyclic: {}",
            g.order(),
            g.degree(),
            g.is_abelian(),
            g.is_cyclic()
        ),
        format!(
            "{} conjugacy classes (sizes {})",
            g.conjugacy_classes().len(),
            sizes.join(",")
        ),
    ];
    let report = json!({
        "command": format!("info {}", gspec.canonical()),
        "group": group_block(&gspec, &g),
        "conjugacy_classes": classes,
    });
    Ok((report, human, 0))
}

fn cmd_subgroups(spec_text: &str) -> Result<(Value, Vec<String>, i32), Error> {
    let (gspec, g) = build(spec_text)?;
    let classes = subgroup_classes(&g);
    let mut human = vec![format!(
        "{}: {} subgroup classes",
        gspec.canonical(),
        classes.len()
    )];
    for c in &classes {
        let gens: Vec<String> = c
            .representative
            .generator_indices()
            .iter()
            .map(|&i| g.perm(i).to_string())
            .collect();
        human.push(format!(
            "  class {}: order {}, {} conjugate(s), generated by {}",
            c.index_in_basis,
            c.representative.order(),
            c.class_size,
            if gens.is_empty() { "()".to_string() } else { gens.join(" ") },
        ));
    }
    let report = json!({
        "command": format!("subgroups {}", gspec.canonical()),
        "group": group_block(&gspec, &g),
        "classes": class_block(&g),
    });
    Ok((report, human, 0))
}

fn cmd_kernel(spec_text: &str) -> Result<(Value, Vec<String>, i32), Error> {
    let (gspec, g) = build(spec_text)?;
    let matrix = character_matrix(&g);
    let basis = kernel_basis(&g);
    let basis_json: Result<Vec<Value>, Error> = basis.iter().map(coeffs_json).collect();
    let mut human = vec![
        format!(
            "{}: character matrix {}x{}, kernel rank {}",
            gspec.canonical(),
            matrix.rows(),
            matrix.cols(),
            basis.len()
        ),
    ];
    for (i, v) in basis.iter().enumerate() {
        human.push(format!("  basis[{i}] = {v:?}"));
    }
    let report = json!({
        "command": format!("kernel {}", gspec.canonical()),
        "group": group_block(&gspec, &g),
        "classes": class_block(&g),
        "character_matrix": matrix.entries(),
        "kernel_rank": basis.len(),
        "kernel_basis": basis_json?,
    });
    Ok((report, human, 0))
}

fn pair_json(g: &Arc<Group>, x: &GSet, y: &GSet) -> Value {
    json!({
        "x": GSetExpr::for_gset(x).canonical(),
        "y": GSetExpr::for_gset(y).canonical(),
        "x_orbit_sizes": orbit_sizes(x),
        "y_orbit_sizes": orbit_sizes(y),
        "size": x.size(),
        "group_order": g.order(),
    })
}

fn cmd_pairs(spec_text: &str) -> Result<(Value, Vec<String>, i32), Error> {
    let (gspec, g) = build(spec_text)?;
    let basis = kernel_basis(&g);
    let mut rows = Vec::new();
    let mut human = vec![format!(
        "{}: {} reduced pair(s) from the kernel basis",
        gspec.canonical(),
        basis.len()
    )];
    for (i, v) in basis.iter().enumerate() {
        let pair = to_reduced_pair(&g, v)?;
        let unbalanced = is_unbalanced(&g, v)?;
        let xe = GSetExpr::for_gset(&pair.x).canonical();
        let ye = GSetExpr::for_gset(&pair.y).canonical();
        human.push(format!(
            "  pair {i}: {xe}  ~  {ye}   sizes {:?} vs {:?}{}",
            orbit_sizes(&pair.x),
            orbit_sizes(&pair.y),
            if unbalanced { "  [unbalanced]" } else { "" }
        ));
        let mut entry = pair_json(&g, &pair.x, &pair.y);
        entry["id"] = json!(i);
        entry["vector"] = coeffs_json(v)?;
        entry["unbalanced"] = json!(unbalanced);
        rows.push(entry);
    }
    let report = json!({
        "command": format!("pairs {}", gspec.canonical()),
        "group": group_block(&gspec, &g),
        "pairs": rows,
    });
    Ok((report, human, 0))
}

fn provenance_string(p: &Provenance) -> String {
    match p {
        Provenance::ElementaryAbelian { p } => format!("elementary-abelian(p={p})"),
        Provenance::Metacyclic { p, q } => format!("metacyclic(p={p},q={q})"),
        Provenance::InducedFrom(h) => format!("induced-from(subgroup of order {})", h.order()),
        Provenance::InflatedFrom(n) => format!("inflated-from(kernel of order {})", n.order()),
        Provenance::KernelSearch => "kernel-search".into(),
    }
}

fn cmd_find_unbalanced(spec_text: &str) -> Result<(Value, Vec<String>, i32), Error> {
    let (gspec, g) = build(spec_text)?;
    match find_unbalanced_pair(&g)? {
        None => {
            let human = vec![format!("{}: none (group is cyclic)", gspec.canonical())];
            let report = json!({
                "command": format!("find-unbalanced {}", gspec.canonical()),
                "group": group_block(&gspec, &g),
                "result": "none",
                "reason": "group is cyclic",
            });
            Ok((report, human, 0))
        }
        Some(pair) => {
            let xe = GSetExpr::for_gset(&pair.x).canonical();
            let ye = GSetExpr::for_gset(&pair.y).canonical();
            let human = vec![
                format!("{}: unbalanced pair found", gspec.canonical()),
                format!("  X = {xe}   orbit sizes {:?}", orbit_sizes(&pair.x)),
                format!("  Y = {ye}   orbit sizes {:?}", orbit_sizes(&pair.y)),
                format!("  via {}", provenance_string(&pair.provenance)),
            ];
            let mut pj = pair_json(&g, &pair.x, &pair.y);
            pj["provenance"] = json!(provenance_string(&pair.provenance));
            let report = json!({
                "command": format!("find-unbalanced {}", gspec.canonical()),
                "group": group_block(&gspec, &g),
                "result": "pair",
                "pair": pj,
            });
            Ok((report, human, 0))
        }
    }
}

fn cmd_sunada(spec_text: &str) -> Result<(Value, Vec<String>, i32), Error> {
    let (gspec, g) = build(spec_text)?;
    let pairs = sunada_pairs(&g);
    let mut human = vec![format!(
        "{}: {} Sunada pair(s)",
        gspec.canonical(),
        pairs.len()
    )];
    let rows: Vec<Value> = pairs
        .iter()
        .map(|(a, b)| {
            let gens =
                |s: &burnside::subgroup::Subgroup| -> Vec<String> {
                    s.generator_indices()
                        .iter()
                        .map(|&i| g.perm(i).to_string())
                        .collect()
                };
            human.push(format!(
                "  classes {} and {} (order {})",
                a.index_in_basis,
                b.index_in_basis,
                a.representative.order()
            ));
            json!({
                "class_a": a.index_in_basis,
                "class_b": b.index_in_basis,
                "order": a.representative.order(),
                "generators_a": gens(&a.representative),
                "generators_b": gens(&b.representative),
            })
        })
        .collect();
    let report = json!({
        "command": format!("sunada {}", gspec.canonical()),
        "group": group_block(&gspec, &g),
        "pairs": rows,
    });
    Ok((report, human, 0))
}

fn cmd_verify(spec_text: &str, x_text: &str, y_text: &str) -> Result<(Value, Vec<String>, i32), Error> {
    let (gspec, g) = build(spec_text)?;
    let xe = parse_gset_expr(x_text)?;
    let ye = parse_gset_expr(y_text)?;
    let x = xe.evaluate(&g)?;
    let y = ye.evaluate(&g)?;
    let equivalent = linearly_equivalent(&x, &y)?;
    let (cx, cy) = (perm_character(&x), perm_character(&y));
    let human = vec![
        format!(
            "{}: X = {}, Y = {}",
            gspec.canonical(),
            xe.canonical(),
            ye.canonical()
        ),
        format!("  character X = {:?}", cx.values()),
        format!("  character Y = {:?}", cy.values()),
        format!("  linearly equivalent: {equivalent}"),
    ];
    let report = json!({
        "command": format!(
            "verify {} --x {} --y {}",
            gspec.canonical(),
            xe.canonical(),
            ye.canonical()
        ),
        "group": group_block(&gspec, &g),
        "x": xe.canonical(),
        "y": ye.canonical(),
        "character_x": cx.values(),
        "character_y": cy.values(),
        "linearly_equivalent": equivalent,
    });
    Ok((report, human, if equivalent { 0 } else { 1 }))
}

fn resolve_pair(g: &Arc<Group>, pair_text: &str) -> Result<(String, GSet, GSet), Error> {
    if let Some(index_text) = pair_text.strip_prefix("kernel:") {
        let index: usize = index_text.parse().map_err(|_| Error::Parse {
            offset: 0,
            message: format!("invalid kernel index '{index_text}'"),
        })?;
        let basis = kernel_basis(g);
        if index >= basis.len() {
            return Err(Error::Parse {
                offset: 0,
                message: format!("kernel index {index} out of range (rank {})", basis.len()),
            });
        }
        let pair = to_reduced_pair(g, &basis[index])?;
        Ok((format!("kernel:{index}"), pair.x, pair.y))
    } else if let Some((xt, yt)) = pair_text.split_once('~') {
        let xe = parse_gset_expr(xt.trim())?;
        let ye = parse_gset_expr(yt.trim())?;
        let x = xe.evaluate(g)?;
        let y = ye.evaluate(g)?;
        Ok((format!("{}~{}", xe.canonical(), ye.canonical()), x, y))
    } else {
        Err(Error::Parse {
            offset: 0,
            message: "expected 'kernel:<i>' or '<expr>~<expr>'".into(),
        })
    }
}

fn resolve_gens(g: &Arc<Group>, gens_text: &str, seed: u64) -> Result<(Vec<usize>, u64), Error> {
    if let Some(rest) = gens_text.strip_prefix("random:") {
        let mut parts = rest.split(':');
        let k: usize = parts
            .next()
            .unwrap_or_default()
            .parse()
            .map_err(|_| Error::Parse {
                offset: 0,
                message: "expected random:<k> or random:<k>:<seed>".into(),
            })?;
        let used_seed = match parts.next() {
            Some(s) => s.parse().map_err(|_| Error::Parse {
                offset: 0,
                message: "invalid seed".into(),
            })?,
            None => seed,
        };
        Ok((
            random_inverse_closed_multiset(g, k, used_seed, true),
            used_seed,
        ))
    } else {
        let indices: Result<Vec<usize>, _> = gens_text
            .split(',')
            .map(|s| s.trim().parse::<usize>())
            .collect();
        let indices = indices.map_err(|_| Error::Parse {
            offset: 0,
            message: "expected comma-separated element indices".into(),
        })?;
        Ok((symmetrize_multiset(g, &indices)?, seed))
    }
}

fn cmd_schreier(
    spec_text: &str,
    pair_text: &str,
    gens_text: &str,
    seed: u64,
) -> Result<(Value, Vec<String>, i32), Error> {
    let (gspec, g) = build(spec_text)?;
    let (pair_id, x, y) = resolve_pair(&g, pair_text)?;
    let (multiset, used_seed) = resolve_gens(&g, gens_text, seed)?;
    let ax = schreier_adjacency(&x, &multiset)?;
    let ay = schreier_adjacency(&y, &multiset)?;
    let (px, py) = (char_poly(&ax), char_poly(&ay));
    let cospectral = px == py;
    let coeff_strings =
        |p: &burnside::spectral::IntPolynomial| -> Vec<String> {
            p.coeffs().iter().map(|c| c.to_string()).collect()
        };
    let human = vec![
        format!("{}: pair {}", gspec.canonical(), pair_id),
        format!("  multiset ({} elements): {:?}", multiset.len(), multiset),
        format!("  char poly X: {:?}", coeff_strings(&px)),
        format!("  char poly Y: {:?}", coeff_strings(&py)),
        format!("  cospectral: {cospectral}"),
    ];
    let report = json!({
        "command": format!(
            "schreier {} --pair {} --gens {}",
            gspec.canonical(),
            pair_id,
            gens_text
        ),
        "group": group_block(&gspec, &g),
        "pair": {
            "id": pair_id,
            "x": GSetExpr::for_gset(&x).canonical(),
            "y": GSetExpr::for_gset(&y).canonical(),
        },
        "multiset": multiset,
        "multiset_seed": used_seed,
        "char_poly_x": coeff_strings(&px),
        "char_poly_y": coeff_strings(&py),
        "cospectral": cospectral,
    });
    Ok((report, human, if cospectral { 0 } else { 1 }))
}

fn form_json(f: &QForm) -> Value {
    let (a, b, c) = f.coefficients();
    json!({
        "a": a.to_string(),
        "b": b.to_string(),
        "c": c.to_string(),
        "provenance": f.provenance(),
    })
}

fn cmd_tori(p: usize, bound: u64) -> Result<(Value, Vec<String>, i32), Error> {
    let outcome = hecke_check(p, bound)?;
    let mut human = vec![format!(
        "p = {p}, bound = {bound}: representation counts {}",
        if outcome.equal { "EQUAL" } else { "UNEQUAL" }
    )];
    let witness_json = match &outcome.witness {
        Some(w) => {
            human.push(format!(
                "  first discrepancy at value {}: {} (lines) vs {} (quotients)",
                w.value, w.x_count, w.y_count
            ));
            json!({
                "value": w.value.to_string(),
                "x_count": w.x_count,
                "y_count": w.y_count,
            })
        }
        None => Value::Null,
    };
    let report = json!({
        "command": format!("tori --p {p} --bound {bound}"),
        "p": p,
        "bound": bound,
        "x_forms": outcome.x_forms.iter().map(form_json).collect::<Vec<_>>(),
        "y_forms": outcome.y_forms.iter().map(form_json).collect::<Vec<_>>(),
        "equal": outcome.equal,
        "witness": witness_json,
    });
    Ok((report, human, if outcome.equal { 0 } else { 1 }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn command_round_trips_through_its_canonical_form() {
        let cli = Cli::try_parse_from(["burnside", "kernel", "D( 6 )", "--json"]).unwrap();
        let Command::Kernel { spec } = &cli.command else {
            panic!("wrong subcommand");
        };
        let parsed = parse_group_spec(spec).unwrap();
        let again = Cli::try_parse_from(["burnside", "kernel", &parsed.canonical(), "--json"])
            .unwrap();
        let Command::Kernel { spec: spec2 } = &again.command else {
            panic!("wrong subcommand");
        };
        assert_eq!(parse_group_spec(spec2).unwrap(), parsed);
        assert_eq!(cli.json, again.json);
        assert_eq!(cli.seed, again.seed);
    }

    #[test]
    fn verify_agrees_with_the_library() {
        let (_, human, code) = cmd_verify("P(C(2),C(2))", "coset(1)+coset(2)+coset(3)", "coset(0)+2*coset(4)").unwrap();
        assert_eq!(code, 0, "{human:?}");
        let (_, _, code) = cmd_verify("D(6)", "coset(0)", "coset(1)").unwrap();
        assert_eq!(code, 1);
    }

    #[test]
    fn schreier_kernel_pair_is_cospectral() {
        let (report, _, code) = cmd_schreier("D(6)", "kernel:0", "random:3", 5).unwrap();
        assert_eq!(code, 0);
        assert_eq!(report["cospectral"], json!(true));
    }

    #[test]
    fn tori_exit_codes() {
        let (_, _, code) = cmd_tori(2, 500).unwrap();
        assert_eq!(code, 0);
        let (report, _, code) = cmd_tori(4, 500).unwrap();
        assert_eq!(code, 1);
        assert_eq!(report["witness"]["value"], json!("4"));
    }
}
