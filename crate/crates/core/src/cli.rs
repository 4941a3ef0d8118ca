//! The `plab` command line. Exit code 0 on success, 1 when a verification
//! fails, 2 on usage or input errors.

use std::ffi::OsString;
use std::io::Write;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::classify::{
    catalan, classify_with, compare_with_reference, compose_from_rows, verify_catalan, verify_cconstant_tables,
    verify_tree_cycle_theorems, Catalog, ClassificationRow, ClassifyOptions, REFERENCE_PRODUCTS,
};
use crate::collections::tiling;
use crate::cyclic::KSet;
use crate::error::{PlabError, Result};
use crate::graphs::{canonical_certificate, exchange_graph_with_budget, filter_containing, shape, DEFAULT_VERTEX_BUDGET};
use crate::io::{
    collection_tooltip, emit_csv, emit_dot, emit_svg, parse_necklace_json, Cache, GraphDoc, NecklaceDoc,
};
use crate::positroid::{DecoratedPermutation, GrassmannNecklace};
use crate::symmetry::{decomposition_set, is_prime, orbit};

#[derive(Parser, Debug)]
#[command(name = "plab", version, about = "Exchange graphs of weakly separated collections over positroids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Grassmann necklace of a permutation, as JSON.
    Necklace { perm: String },
    /// Permutation of a necklace given as JSON (literal text or a file path).
    Perm { necklace: String },
    /// Exchange graph of a permutation.
    Enumerate {
        perm: String,
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = DEFAULT_VERTEX_BUDGET)]
        budget: usize,
        /// Skip the on-disk cache.
        #[arg(long)]
        no_cache: bool,
    },
    /// Plabic tiling of one maximal collection.
    Tiling {
        perm: String,
        /// Index into the exchange graph's canonical vertex order.
        #[arg(long, default_value_t = 0)]
        collection: usize,
        #[arg(long)]
        svg: Option<std::path::PathBuf>,
    },
    /// Equivalence class of a permutation, as JSON.
    Equiv { perm: String },
    /// Decomposition of the necklace into parts.
    Decompose { perm: String },
    /// Prime very-mutation-friendly classes of one interior size.
    Classify {
        #[arg(long)]
        interior: usize,
        /// Required for interior size 4 and above.
        #[arg(long)]
        full_sweep: bool,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        max_n: Option<usize>,
        /// Keep non-prime and non-friendly classes too.
        #[arg(long)]
        all: bool,
        #[arg(long)]
        csv: bool,
    },
    /// C-constant graph obtained by dropping sets from one collection.
    Cconstant {
        perm: String,
        /// Interior sets to drop, comma separated (`1246,1269`).
        #[arg(long, value_delimiter = ',')]
        drop: Vec<String>,
        #[arg(long, default_value_t = 0)]
        collection: usize,
    },
    /// Run a verification report.
    Verify {
        #[arg(value_enum)]
        what: VerifyTarget,
        #[arg(long, default_value_t = 3)]
        interior_max: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VerifyTarget {
    Tables,
    Catalan,
    Theorems,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn necklace_arg(perm: &str) -> Result<Arc<GrassmannNecklace>> {
    let pi = DecoratedPermutation::parse(perm)?;
    Ok(Arc::new(GrassmannNecklace::from_permutation(&pi)?))
}

fn print_json(out: &mut dyn Write, value: &impl Serialize) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn execute(command: Command, out: &mut dyn Write) -> Result<bool> {
    match command {
        Command::Necklace { perm } => {
            let necklace = necklace_arg(&perm)?;
            print_json(out, &NecklaceDoc::from_necklace(&necklace))?;
        }
        Command::Perm { necklace } => {
            let text = match std::fs::read_to_string(&necklace) {
                Ok(t) => t,
                Err(_) => necklace,
            };
            writeln!(out, "{}", parse_necklace_json(&text)?.permutation())?;
        }
        Command::Enumerate {
            perm,
            dot,
            json,
            budget,
            no_cache,
        } => {
            let necklace = necklace_arg(&perm)?;
            if dot {
                let g = exchange_graph_with_budget(&necklace, budget)?;
                write!(out, "{}", emit_dot(&g, collection_tooltip))?;
                return Ok(true);
            }
            let doc = graph_doc(&necklace, budget, !no_cache)?;
            if json {
                print_json(out, &doc)?;
            } else {
                let name = Catalog::standard()?.name_of(&doc.certificate).unwrap_or("-").to_string();
                writeln!(out, "permutation {}  n={} k={}", doc.permutation, doc.n, doc.k)?;
                writeln!(out, "order {}  size {}  shape {:?}  graph {name}", doc.order, doc.size, doc.shape)?;
                writeln!(out, "certificate {}", doc.certificate)?;
            }
        }
        Command::Tiling { perm, collection, svg } => {
            let necklace = necklace_arg(&perm)?;
            let g = exchange_graph_with_budget(&necklace, DEFAULT_VERTEX_BUDGET)?;
            let coll = g.vertices().get(collection).ok_or_else(|| {
                PlabError::invalid(format!("collection index {collection} out of range 0..{}", g.order()))
            })?;
            let t = tiling(coll);
            writeln!(
                out,
                "vertices {}  white faces {}  black faces {}",
                t.vertices.len(),
                t.white_faces.len(),
                t.black_faces.len()
            )?;
            if let Some(path) = svg {
                std::fs::write(&path, emit_svg(&t))?;
                writeln!(out, "wrote {}", path.display())?;
            }
        }
        Command::Equiv { perm } => {
            print_json(out, &orbit(&DecoratedPermutation::parse(&perm)?))?;
        }
        Command::Decompose { perm } => {
            let necklace = necklace_arg(&perm)?;
            let d = decomposition_set(&necklace);
            let parts: Vec<Vec<String>> =
                (0..d.len()).map(|j| d.part_sets(j).iter().map(|s| format!("{s:?}")).collect()).collect();
            let doc = serde_json::json!({
                "permutation": necklace.permutation(),
                "prime": is_prime(&necklace),
                "positions": d.parts,
                "chords": d.chords,
                "parts": parts,
            });
            print_json(out, &doc)?;
        }
        Command::Classify {
            interior,
            full_sweep,
            jobs,
            max_n,
            all,
            csv,
        } => {
            if interior >= 4 && !full_sweep {
                return Err(PlabError::invalid(format!("interior size {interior} needs --full-sweep")));
            }
            return classify_command(interior, jobs, max_n, all, csv, out);
        }
        Command::Cconstant { perm, drop, collection } => {
            let necklace = necklace_arg(&perm)?;
            let full = exchange_graph_with_budget(&necklace, DEFAULT_VERTEX_BUDGET)?;
            let v = full.vertices().get(collection).ok_or_else(|| {
                PlabError::invalid(format!("collection index {collection} out of range 0..{}", full.order()))
            })?;
            let dropped = drop.iter().map(|s| KSet::parse(necklace.n(), s)).collect::<Result<Vec<_>>>()?;
            let interior = v.interior();
            if let Some(s) = dropped.iter().find(|s| !interior.contains(s)) {
                return Err(PlabError::invalid(format!("{s:?} is not an interior set of collection {collection}")));
            }
            let kept: Vec<KSet> = v.sets().into_iter().filter(|s| !dropped.contains(s)).collect();
            let g = filter_containing(&full, &kept);
            let cert = canonical_certificate(&g);
            let doc = serde_json::json!({
                "permutation": necklace.permutation(),
                "codimension": v.len() - kept.len(),
                "order": g.order(),
                "size": g.size(),
                "shape": shape(&g),
                "connected": g.is_connected(),
                "certificate": cert,
                "catalogName": Catalog::standard()?.name_of(&cert),
            });
            print_json(out, &doc)?;
        }
        Command::Verify { what, interior_max } => return verify_command(what, interior_max, out),
    }
    Ok(true)
}

fn graph_doc(necklace: &Arc<GrassmannNecklace>, budget: usize, use_cache: bool) -> Result<GraphDoc> {
    let key = necklace.permutation().to_string();
    let cache = Cache::from_env();
    if use_cache {
        if let Some(doc) = cache.get(&key).and_then(|e| serde_json::from_value::<GraphDoc>(e.value["graph"].clone()).ok())
        {
            return Ok(doc);
        }
    }
    let start = Instant::now();
    let g = exchange_graph_with_budget(necklace, budget)?;
    let doc = GraphDoc::from_exchange_graph(&g, necklace);
    if use_cache {
        let value = serde_json::json!({
            "graph": doc,
            "certificate": doc.certificate,
            "elapsedMs": start.elapsed().as_secs_f64() * 1e3,
        });
        // A failed write only loses the cache entry.
        let _ = cache.put(&key, value);
    }
    Ok(doc)
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ClassifyReport<'a> {
    interior: usize,
    classes: &'a [ClassificationRow],
    catalan_max: usize,
    pass: bool,
}

fn classify_command(
    interior: usize,
    jobs: Option<usize>,
    max_n: Option<usize>,
    all: bool,
    csv: bool,
    out: &mut dyn Write,
) -> Result<bool> {
    let opts = ClassifyOptions {
        max_n,
        jobs,
        all_classes: all,
        ..Default::default()
    };
    let rows = classify_with(interior, &opts)?;
    if csv {
        write!(out, "{}", emit_csv(&rows))?;
        return Ok(true);
    }
    let mut primes = Vec::new();
    for j in 0..interior {
        primes.extend(classify_with(j, &ClassifyOptions { jobs, ..Default::default() })?);
    }
    primes.extend(rows.iter().filter(|r| r.prime && r.very_mutation_friendly).cloned());
    let catalan_max = compose_from_rows(interior, &primes).iter().map(|g| g.order).max().unwrap_or(0);
    let mut pass = catalan_max as u64 == catalan(interior + 1);
    if interior < REFERENCE_PRODUCTS.len() && !all && max_n.is_none() {
        pass &= compare_with_reference(interior, &rows)?.pass();
    }
    print_json(
        out,
        &ClassifyReport {
            interior,
            classes: &rows,
            catalan_max,
            pass,
        },
    )?;
    Ok(pass)
}

fn verify_command(what: VerifyTarget, interior_max: usize, out: &mut dyn Write) -> Result<bool> {
    match what {
        VerifyTarget::Catalan => {
            let r = verify_catalan(interior_max)?;
            for row in &r.rows {
                writeln!(
                    out,
                    "interior {}: max order {}  C_{} = {}  {} has {}  {}",
                    row.interior,
                    row.max_order,
                    row.interior + 1,
                    row.catalan,
                    row.triangulation,
                    row.triangulation_order,
                    if row.pass() { "pass" } else { "FAIL" }
                )?;
            }
            Ok(r.pass())
        }
        VerifyTarget::Tables => {
            let mut ok = true;
            let mut primes = Vec::new();
            for i in 0..=interior_max.min(REFERENCE_PRODUCTS.len() - 1) {
                primes.extend(crate::classify::classify_prime_vmf(i)?);
                let mut orders: Vec<usize> = compose_from_rows(i, &primes).iter().map(|g| g.order).collect();
                orders.dedup();
                let expected = REFERENCE_PRODUCTS[i].1;
                let pass = orders == expected;
                ok &= pass;
                writeln!(out, "composition {i}: orders {orders:?}  {}", if pass { "pass" } else { "FAIL" })?;
            }
            let cc = verify_cconstant_tables()?;
            for s in &cc.by_codimension {
                writeln!(
                    out,
                    "co-dimension {}: {} graphs, names {:?}, outside {}, disconnected {}",
                    s.codimension,
                    s.checked,
                    s.names,
                    s.outside.len(),
                    s.disconnected
                )?;
            }
            ok &= cc.pass();
            writeln!(out, "{}", if ok { "pass" } else { "FAIL" })?;
            Ok(ok)
        }
        VerifyTarget::Theorems => {
            let r = verify_tree_cycle_theorems(interior_max)?;
            writeln!(out, "classes checked {}", r.classes_checked)?;
            writeln!(out, "trees that are not paths {}", r.trees_not_paths.len())?;
            for (i, p) in &r.path_classes {
                writeln!(out, "path class at interior {i}: {p}")?;
            }
            for c in r.prime_cycle_classes.iter().chain(&r.nonprime_cycle_classes) {
                writeln!(
                    out,
                    "cycle class {} order {}{}",
                    c.permutation,
                    c.order,
                    if c.has_empty_part { " (empty part)" } else { "" }
                )?;
            }
            let ok = r.tree_statement_holds() && r.cycle_statement_holds();
            writeln!(out, "{}", if ok { "pass" } else { "FAIL" })?;
            Ok(ok)
        }
    }
}
