//! Checks of the composition table, the Catalan bound, C-constant graphs and
//! the tree/cycle statements against computed data.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::sync::Arc;

use rayon::prelude::*;

use super::{classify_prime_vmf, classify_with, reference_classes, Catalog, ClassificationRow, ClassifyOptions};
use super::REFERENCE_PRODUCTS;
use crate::error::{PlabError, Result};
use crate::graphs::{canonical_certificate, cartesian_product, exchange_graph, filter_containing, CanonicalCertificate};
use crate::graphs::{LabeledGraph, Shape};
use crate::positroid::{connected_permutations, DecoratedPermutation, GrassmannNecklace};
use crate::symmetry::{canonical_rep, decomposition_set};

/// Path-shaped prime classes for interior sizes 1 to 4.
pub const PATH_FAMILY: [&str; 4] = ["3412", "365124", "38761254", "3(10)98712654"];

#[derive(Clone, Debug, serde::Serialize)]
pub struct ComposedGraph {
    /// Factor names joined by `□`; a single name for prime graphs.
    pub name: String,
    pub order: usize,
    /// Sum of the factors' interior sizes.
    pub interior: usize,
    pub certificate: CanonicalCertificate,
}

/// All exchange graphs of interior size at most `i`, as products of prime
/// very-mutation-friendly graphs.
pub fn compose_table_mainchare(i: usize) -> Result<Vec<ComposedGraph>> {
    let mut primes = Vec::new();
    for j in 0..=i {
        primes.extend(classify_prime_vmf(j)?);
    }
    Ok(compose_from_rows(i, &primes))
}

struct Factor {
    name: String,
    interior: usize,
    graph: LabeledGraph<usize>,
}

/// Products of the graphs in `rows` whose interior sizes sum to at most `i`,
/// deduplicated by certificate and sorted by order then name. The empty
/// product is `A`.
pub fn compose_from_rows(i: usize, rows: &[ClassificationRow]) -> Vec<ComposedGraph> {
    let mut by_cert: BTreeMap<&CanonicalCertificate, (usize, String)> = BTreeMap::new();
    for r in rows.iter().filter(|r| r.interior_size >= 1 && r.interior_size <= i) {
        let name = r.catalog_name.clone().unwrap_or_else(|| r.canonical_permutation.to_string());
        let e = by_cert.entry(&r.certificate).or_insert((r.interior_size, name.clone()));
        if (r.interior_size, &name) < (e.0, &e.1) {
            *e = (r.interior_size, name);
        }
    }
    let mut factors: Vec<Factor> = by_cert
        .into_iter()
        .map(|(c, (interior, name))| Factor {
            name,
            interior,
            graph: c.graph(),
        })
        .collect();
    factors.sort_by(|a, b| (a.interior, &a.name).cmp(&(b.interior, &b.name)));

    let mut out: BTreeMap<CanonicalCertificate, ComposedGraph> = BTreeMap::new();
    let unit = LabeledGraph::from_edges(1, &[]);
    insert_composed(&mut out, &unit, &[], 0);
    extend_products(&factors, 0, i, &unit, &mut Vec::new(), 0, &mut out);
    let mut list: Vec<ComposedGraph> = out.into_values().collect();
    list.sort_by(|a, b| (a.order, &a.name).cmp(&(b.order, &b.name)));
    list
}

fn extend_products(
    factors: &[Factor],
    start: usize,
    budget: usize,
    acc: &LabeledGraph<usize>,
    names: &mut Vec<String>,
    interior: usize,
    out: &mut BTreeMap<CanonicalCertificate, ComposedGraph>,
) {
    for (idx, f) in factors.iter().enumerate().skip(start) {
        if f.interior > budget {
            continue;
        }
        let g = cartesian_product(acc, &f.graph).unlabeled();
        names.push(f.name.clone());
        insert_composed(out, &g, names, interior + f.interior);
        extend_products(factors, idx, budget - f.interior, &g, names, interior + f.interior, out);
        names.pop();
    }
}

fn insert_composed(
    out: &mut BTreeMap<CanonicalCertificate, ComposedGraph>,
    g: &LabeledGraph<usize>,
    names: &[String],
    interior: usize,
) {
    let certificate = canonical_certificate(g);
    let name = if names.is_empty() { "A".to_string() } else { names.join("□") };
    let candidate = ComposedGraph {
        name,
        order: g.order(),
        interior,
        certificate: certificate.clone(),
    };
    match out.get(&certificate) {
        Some(old) if (old.interior, names_len(&old.name)) <= (interior, names.len()) => {}
        _ => {
            out.insert(certificate, candidate);
        }
    }
}

fn names_len(name: &str) -> usize {
    if name == "A" {
        0
    } else {
        name.split('□').count()
    }
}

pub fn catalan(m: usize) -> u64 {
    // C_m = binom(2m, m) / (m + 1), computed incrementally.
    let mut c: u64 = 1;
    for j in 0..m as u64 {
        c = c * 2 * (2 * j + 1) / (j + 2);
    }
    c
}

/// `π(j) = j + 2` on `[i + 3]`, whose collections are the triangulations of
/// an `(i + 3)`-gon.
pub fn triangulation_permutation(i: usize) -> DecoratedPermutation {
    let n = i + 3;
    let images = (1..=n).map(|j| ((j + 1) % n + 1) as u8).collect();
    DecoratedPermutation::new(images).expect("rotation by two is a permutation")
}

#[derive(Clone, Debug, serde::Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CatalanRow {
    pub interior: usize,
    pub max_order: usize,
    pub catalan: u64,
    pub triangulation: DecoratedPermutation,
    pub triangulation_order: usize,
}

impl CatalanRow {
    pub fn pass(&self) -> bool {
        self.max_order as u64 == self.catalan && self.triangulation_order as u64 == self.catalan
    }
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct CatalanReport {
    pub rows: Vec<CatalanRow>,
}

impl CatalanReport {
    pub fn pass(&self) -> bool {
        self.rows.iter().all(CatalanRow::pass)
    }
}

pub fn verify_catalan(i_max: usize) -> Result<CatalanReport> {
    let mut primes = Vec::new();
    let mut rows = Vec::new();
    for i in 0..=i_max {
        primes.extend(classify_prime_vmf(i)?);
        let max_order = compose_from_rows(i, &primes).iter().map(|g| g.order).max().unwrap_or(0);
        let triangulation = triangulation_permutation(i);
        let necklace = Arc::new(GrassmannNecklace::from_permutation(&triangulation)?);
        rows.push(CatalanRow {
            interior: i,
            max_order,
            catalan: catalan(i + 1),
            triangulation_order: exchange_graph(&necklace)?.order(),
            triangulation,
        });
    }
    Ok(CatalanReport { rows })
}

#[derive(Clone, Debug, serde::Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CodimensionSummary {
    pub codimension: usize,
    /// Distinct `(π, C)` pairs examined.
    pub checked: usize,
    /// Catalog names of the graphs that occurred.
    pub names: Vec<String>,
    /// `π: C` descriptions of graphs outside the allowed list.
    pub outside: Vec<String>,
    pub disconnected: usize,
}

#[derive(Clone, Debug, serde::Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CConstantReport {
    pub max_n: usize,
    pub permutations: usize,
    pub by_codimension: Vec<CodimensionSummary>,
}

impl CConstantReport {
    pub fn pass(&self) -> bool {
        self.by_codimension.iter().all(|c| c.outside.is_empty() && c.disconnected == 0)
    }
}

/// Every C-constant graph obtained by dropping at most three interior sets
/// from a maximal collection, over all connected permutations with `n ≤ 6`.
pub fn verify_cconstant_tables() -> Result<CConstantReport> {
    verify_cconstant_tables_with(6, 3)
}

pub fn verify_cconstant_tables_with(max_n: usize, max_codim: usize) -> Result<CConstantReport> {
    if max_codim >= REFERENCE_PRODUCTS.len() {
        return Err(PlabError::invalid(format!("no reference graphs for co-dimension {max_codim}")));
    }
    let catalog = Catalog::standard()?;
    let mut allowed: Vec<BTreeMap<CanonicalCertificate, String>> = Vec::new();
    for (_, _, names) in REFERENCE_PRODUCTS.iter().take(max_codim + 1) {
        let mut m = BTreeMap::new();
        for name in names.iter() {
            m.insert(canonical_certificate(&catalog.resolve(name)?), name.to_string());
        }
        allowed.push(m);
    }
    let perms: Vec<DecoratedPermutation> = (3..=max_n).flat_map(connected_permutations).collect();
    let per_perm: Vec<Vec<(usize, Option<String>, bool, String)>> = perms
        .par_iter()
        .map(|pi| cconstant_samples(pi, max_codim, &allowed))
        .collect::<Result<_>>()?;

    let mut by_codimension: Vec<CodimensionSummary> = (0..=max_codim)
        .map(|c| CodimensionSummary {
            codimension: c,
            checked: 0,
            names: Vec::new(),
            outside: Vec::new(),
            disconnected: 0,
        })
        .collect();
    let mut names: Vec<BTreeSet<String>> = vec![BTreeSet::new(); max_codim + 1];
    for (c, name, connected, label) in per_perm.into_iter().flatten() {
        let s = &mut by_codimension[c];
        s.checked += 1;
        if !connected {
            s.disconnected += 1;
        }
        match name {
            Some(name) => {
                names[c].insert(name);
            }
            None => s.outside.push(label),
        }
    }
    for (s, n) in by_codimension.iter_mut().zip(names) {
        s.names = n.into_iter().collect();
    }
    Ok(CConstantReport {
        max_n,
        permutations: perms.len(),
        by_codimension,
    })
}

fn cconstant_samples(
    pi: &DecoratedPermutation,
    max_codim: usize,
    allowed: &[BTreeMap<CanonicalCertificate, String>],
) -> Result<Vec<(usize, Option<String>, bool, String)>> {
    let necklace = Arc::new(GrassmannNecklace::from_permutation(pi)?);
    let full = exchange_graph(&necklace)?;
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut out = Vec::new();
    for v in full.vertices() {
        let interior = v.interior();
        for c in 0..=max_codim.min(interior.len()) {
            for drop in subsets(interior.len(), c) {
                let sets: Vec<_> = v.sets().into_iter().filter(|s| !drop.iter().any(|&d| interior[d] == *s)).collect();
                if !seen.insert(sets.iter().map(|s| s.bits()).collect()) {
                    continue;
                }
                let g = filter_containing(&full, &sets).unlabeled();
                let cert = canonical_certificate(&g);
                let label = format!("{pi}: {sets:?}");
                out.push((c, allowed[c].get(&cert).cloned(), g.is_connected(), label));
            }
        }
    }
    Ok(out)
}

fn subsets(n: usize, c: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, c: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == c {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            rec(x + 1, n, c, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, c, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Debug, serde::Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CycleClass {
    pub permutation: DecoratedPermutation,
    pub order: usize,
    /// Some part of the decomposition encloses no interior set.
    pub has_empty_part: bool,
}

#[derive(Clone, Debug, serde::Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TheoremReport {
    pub max_interior: usize,
    pub classes_checked: usize,
    pub trees_not_paths: Vec<DecoratedPermutation>,
    /// Prime classes whose graph is a path with at least two vertices.
    pub path_classes: Vec<(usize, DecoratedPermutation)>,
    /// Prime classes whose graph is a cycle, counting `K₁` and `K₂`.
    pub prime_cycle_classes: Vec<CycleClass>,
    pub nonprime_cycle_classes: Vec<CycleClass>,
}

impl TheoremReport {
    pub fn tree_statement_holds(&self) -> bool {
        let expected: BTreeSet<(usize, DecoratedPermutation)> = (1..=self.max_interior.min(PATH_FAMILY.len()))
            .map(|i| (i, canonical_rep(&DecoratedPermutation::parse(PATH_FAMILY[i - 1]).expect("family literal"))))
            .collect();
        let found: BTreeSet<(usize, DecoratedPermutation)> = self.path_classes.iter().cloned().collect();
        self.trees_not_paths.is_empty() && found == expected
    }

    /// Prime cycles are the classes of 312, 3412 and 34512; non-prime cycles
    /// are the class of 351624 or carry an empty part.
    pub fn cycle_statement_holds(&self) -> bool {
        let canon = |p: &str| canonical_rep(&DecoratedPermutation::parse(p).expect("literal"));
        let expected: BTreeSet<DecoratedPermutation> = ["312", "3412", "34512"]
            .iter()
            .take(self.max_interior + 1)
            .map(|p| canon(p))
            .collect();
        let prime: BTreeSet<DecoratedPermutation> =
            self.prime_cycle_classes.iter().map(|c| c.permutation.clone()).collect();
        let square = canon("351624");
        prime == expected
            && self.prime_cycle_classes.iter().all(|c| matches!(c.order, 1 | 2 | 4 | 5))
            && self
                .nonprime_cycle_classes
                .iter()
                .all(|c| c.has_empty_part || (c.permutation == square && c.order == 4))
    }

    /// Non-prime cycles without an empty part, other than 351624.
    pub fn strict_nonprime_cycle_exceptions(&self) -> Vec<&CycleClass> {
        let square = canonical_rep(&DecoratedPermutation::parse("351624").expect("literal"));
        self.nonprime_cycle_classes.iter().filter(|c| c.permutation != square).collect()
    }
}

/// Scans every very-mutation-friendly class of interior size at most
/// `i_max` for tree- and cycle-shaped exchange graphs.
pub fn verify_tree_cycle_theorems(i_max: usize) -> Result<TheoremReport> {
    let opts = ClassifyOptions {
        all_classes: true,
        ..Default::default()
    };
    let mut report = TheoremReport {
        max_interior: i_max,
        classes_checked: 0,
        trees_not_paths: Vec::new(),
        path_classes: Vec::new(),
        prime_cycle_classes: Vec::new(),
        nonprime_cycle_classes: Vec::new(),
    };
    for i in 0..=i_max {
        for r in classify_with(i, &opts)?.into_iter().filter(|r| r.very_mutation_friendly) {
            report.classes_checked += 1;
            let cycle_like = r.graph_order <= 2 || matches!(r.shape, Shape::Cycle(_));
            match r.shape {
                Shape::Tree => report.trees_not_paths.push(r.canonical_permutation.clone()),
                Shape::Path(m) if m >= 2 && r.prime => report.path_classes.push((i, r.canonical_permutation.clone())),
                _ => {}
            }
            if cycle_like {
                let necklace = GrassmannNecklace::from_permutation(&r.canonical_permutation)?;
                let d = decomposition_set(&necklace);
                let class = CycleClass {
                    permutation: r.canonical_permutation.clone(),
                    order: r.graph_order,
                    has_empty_part: d.proper_part_count() < d.len(),
                };
                if r.prime {
                    report.prime_cycle_classes.push(class);
                } else {
                    report.nonprime_cycle_classes.push(class);
                }
            }
        }
    }
    Ok(report)
}

/// Comparison of computed prime very-mutation-friendly rows with the
/// reference block of one interior size. Reference rows are grouped by
/// equivalence class before comparing.
#[derive(Clone, Debug, serde::Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ReferenceComparison {
    pub interior: usize,
    pub reference_rows: usize,
    pub reference_classes: usize,
    pub computed_classes: usize,
    /// Reference classes absent from the computed rows, with their names.
    pub missing: Vec<(DecoratedPermutation, String)>,
    pub extra: Vec<DecoratedPermutation>,
    /// `(class, reference order, computed order)`.
    pub order_mismatches: Vec<(DecoratedPermutation, usize, usize)>,
    /// Names carried by non-isomorphic graphs, and graphs carrying several
    /// names.
    pub name_conflicts: Vec<String>,
    /// Names with an explicit adjacency list matched by no computed row.
    pub explicit_unmatched: Vec<String>,
    pub reference_orders: Vec<usize>,
    pub computed_orders: Vec<usize>,
}

impl ReferenceComparison {
    pub fn pass(&self) -> bool {
        self.missing.is_empty()
            && self.extra.is_empty()
            && self.order_mismatches.is_empty()
            && self.name_conflicts.is_empty()
            && self.explicit_unmatched.is_empty()
    }
}

pub fn compare_with_reference(i: usize, rows: &[ClassificationRow]) -> Result<ReferenceComparison> {
    let catalog = Catalog::standard()?;
    let block: Vec<_> = reference_classes().into_iter().filter(|r| r.interior == i).collect();
    let mut classes: BTreeMap<DecoratedPermutation, Vec<(usize, String)>> = BTreeMap::new();
    for r in &block {
        classes.entry(canonical_rep(&r.permutation)).or_default().push((r.order, r.name.clone()));
    }
    let computed: BTreeMap<&DecoratedPermutation, &ClassificationRow> =
        rows.iter().map(|r| (&r.canonical_permutation, r)).collect();

    let mut missing = Vec::new();
    let mut order_mismatches = Vec::new();
    let mut name_certs: BTreeMap<String, BTreeSet<CanonicalCertificate>> = BTreeMap::new();
    let mut cert_names: BTreeMap<CanonicalCertificate, BTreeSet<String>> = BTreeMap::new();
    for (canon, entries) in &classes {
        let cert = match computed.get(canon) {
            Some(row) => {
                for (order, _) in entries {
                    if *order != row.graph_order {
                        order_mismatches.push((canon.clone(), *order, row.graph_order));
                    }
                }
                row.certificate.clone()
            }
            None => {
                missing.push((canon.clone(), entries[0].1.clone()));
                let necklace = Arc::new(GrassmannNecklace::from_permutation(canon)?);
                canonical_certificate(&exchange_graph(&necklace)?.unlabeled())
            }
        };
        for (_, name) in entries {
            name_certs.entry(name.clone()).or_default().insert(cert.clone());
            cert_names.entry(cert.clone()).or_default().insert(name.clone());
        }
    }
    let mut name_conflicts: Vec<String> = name_certs
        .iter()
        .filter(|(_, c)| c.len() > 1)
        .map(|(n, c)| format!("{n} names {} non-isomorphic graphs", c.len()))
        .collect();
    name_conflicts.extend(
        cert_names
            .values()
            .filter(|n| n.len() > 1)
            .map(|n| format!("one graph named {}", n.iter().cloned().collect::<Vec<_>>().join(", "))),
    );
    let explicit_unmatched = name_certs
        .keys()
        .filter_map(|n| catalog.get(n))
        .filter(|e| e.explicit && !rows.iter().any(|r| r.certificate == e.certificate))
        .map(|e| e.name.clone())
        .collect();

    let extra = rows
        .iter()
        .filter(|r| !classes.contains_key(&r.canonical_permutation))
        .map(|r| r.canonical_permutation.clone())
        .collect();
    let mut reference_orders: Vec<usize> = classes.values().map(|e| e[0].0).collect();
    reference_orders.sort_unstable();
    let mut computed_orders: Vec<usize> = rows.iter().map(|r| r.graph_order).collect();
    computed_orders.sort_unstable();
    Ok(ReferenceComparison {
        interior: i,
        reference_rows: block.len(),
        reference_classes: classes.len(),
        computed_classes: rows.len(),
        missing,
        extra,
        order_mismatches,
        name_conflicts,
        explicit_unmatched,
        reference_orders,
        computed_orders,
    })
}
