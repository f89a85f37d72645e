use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use sidigraph::analysis::{bounds_report, enumerate_signed_walks, is_cycle_balanced, signed_walk_matrix, zero_energy_class};
use sidigraph::charpoly::{charpoly_enumerate, charpoly_trace};
use sidigraph::corpus::CorpusConfig;
use sidigraph::energy::{coulson_energy_with, energy_with, is_cospectral, spectrum_with};
use sidigraph::format::to_text;
use sidigraph::products::{neps, NepsBasis};
use sidigraph::graph::{direct_sum, symmetric_double, Sign, SignedDigraph};

use crate::output::{print_json, read_graph, Format};
use crate::{Failure, GlobalOpts};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    /// Energy below the McClelland bound and the arc count, exact equality
    /// case, and sum of squared eigenvalue moduli below the arc count.
    Bounds,
    /// Energy is additive over strong components and direct sums.
    Additivity,
    /// Coulson integral agrees with the algebraic energy.
    Coulson,
    /// Cycle balance holds exactly when the graph is cospectral with its
    /// unsigned version; witnesses verify.
    Balance,
    /// Walk matrix powers match explicit walk enumeration; traces match
    /// eigenvalue power sums.
    Walks,
    /// Both characteristic polynomial algorithms agree.
    Charpoly,
    /// Zero-energy class agrees with the computed energy.
    ZeroEnergy,
}

impl Property {
    fn name(self) -> &'static str {
        match self {
            Property::Bounds => "bounds",
            Property::Additivity => "additivity",
            Property::Coulson => "coulson",
            Property::Balance => "balance",
            Property::Walks => "walks",
            Property::Charpoly => "charpoly",
            Property::ZeroEnergy => "zero-energy",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Every ordered pair gets an arc with the configured density.
    Random,
    /// Disjoint symmetric digons with random signs on an even vertex count.
    SymmetricK2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Search {
    /// Record graphs whose energy equals their order.
    EnergyEqualsN,
    /// Pair graph i with graph i+1 under one of the covering two-factor
    /// bases; record balanced products with a cycle and an unbalanced factor.
    NepsConverse,
}

/// The five bases of arity 2 that cover both coordinates.
const TWO_FACTOR_BASES: [&[&str]; 5] = [&["11"], &["10", "01"], &["10", "11"], &["01", "11"], &["10", "01", "11"]];

#[derive(Debug, Clone, Args)]
pub struct CorpusArgs {
    #[arg(long, default_value_t = 1000)]
    pub count: usize,
    #[arg(long, default_value_t = 2)]
    pub n_min: usize,
    #[arg(long, default_value_t = 8)]
    pub n_max: usize,
    #[arg(long, default_value_t = 0.3)]
    pub density: f64,
    #[arg(long, default_value_t = 0.5)]
    pub negative_fraction: f64,
    #[arg(long, value_enum, default_value_t = Family::Random)]
    pub family: Family,
    /// Properties to evaluate.
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [Property::Bounds, Property::Additivity, Property::Coulson, Property::Balance, Property::Walks])]
    pub properties: Vec<Property>,
    #[arg(long, value_enum)]
    pub search: Option<Search>,
    /// Write each violating graph here as a graph file.
    #[arg(long)]
    pub dump_dir: Option<PathBuf>,
    /// Evaluate the properties on this graph file instead of a corpus.
    #[arg(long)]
    pub replay: Option<PathBuf>,
}

#[derive(Debug, Clone, Serialize)]
struct Violation {
    index: usize,
    property: &'static str,
    detail: String,
    graph: String,
}

#[derive(Debug, Clone, Serialize)]
struct Hit {
    index: usize,
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    energy: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    basis: Option<&'static [&'static str]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    partner: Option<String>,
    graph: String,
}

#[derive(Debug, Default, Clone, Copy, Serialize)]
struct Tally {
    checked: usize,
    violations: usize,
}

#[derive(Debug, Serialize)]
struct Summary {
    config: CorpusConfig,
    family: Family,
    properties: Vec<Property>,
    graphs: usize,
    per_property: BTreeMap<&'static str, Tally>,
    violations: Vec<Violation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    search: Option<SearchSummary>,
}

#[derive(Debug, Serialize)]
struct SearchSummary {
    mode: Search,
    hits: Vec<Hit>,
    orders_with_hits: Vec<usize>,
}

const COULSON_TOLERANCE: f64 = 1e-4;
const ENERGY_TOLERANCE: f64 = 1e-9;
const SEARCH_TOLERANCE: f64 = 1e-6;
const MAX_WALK_LENGTH: u32 = 4;

/// Evaluates one property; `Err` carries the violation detail.
fn check(g: &SignedDigraph, p: Property, opts: &GlobalOpts) -> Result<(), String> {
    let ro = opts.root_options();
    let energy_of = |h: &SignedDigraph| energy_with(h, &ro).map(|r| r.energy).map_err(|e| e.to_string());
    match p {
        Property::Bounds => {
            let v = bounds_report(g).map_err(|e| e.to_string())?.violations();
            if v.is_empty() {
                Ok(())
            } else {
                Err(v.join("; "))
            }
        }
        Property::Additivity => {
            let e = energy_of(g)?;
            let parts: f64 = g.strong_components().iter().map(energy_of).sum::<Result<f64, _>>()?;
            if (e - parts).abs() > ENERGY_TOLERANCE * (1.0 + e) {
                return Err(format!("energy {e} but strong components sum to {parts}"));
            }
            let doubled = energy_of(&direct_sum(&[g.clone(), g.clone()]).map_err(|e| e.to_string())?)?;
            if (doubled - 2.0 * e).abs() > ENERGY_TOLERANCE * (1.0 + e) {
                return Err(format!("energy {e} but direct sum with itself has {doubled}"));
            }
            Ok(())
        }
        Property::Coulson => {
            let a = energy_of(g)?;
            let c = coulson_energy_with(g, &ro).map_err(|e| e.to_string())?.energy;
            if (a - c).abs() > COULSON_TOLERANCE {
                return Err(format!("algebraic {a} vs Coulson {c}"));
            }
            Ok(())
        }
        Property::Balance => {
            let w = is_cycle_balanced(g);
            if !w.verify(g) {
                return Err("balance witness does not verify".into());
            }
            let cospectral = is_cospectral(g, &g.unsigned()).map_err(|e| e.to_string())?;
            if w.balanced != cospectral {
                return Err(format!("balanced = {} but cospectral with unsigned = {cospectral}", w.balanced));
            }
            Ok(())
        }
        Property::Walks => {
            let spec = spectrum_with(g, &ro).map_err(|e| e.to_string())?;
            for l in 1..=MAX_WALK_LENGTH {
                let m = signed_walk_matrix(g, l).map_err(|e| e.to_string())?;
                let (pos, neg) = enumerate_signed_walks(g, l);
                let expected = pos.iter().zip(&neg).map(|(p, n)| (*p as i128 - *n as i128).to_string());
                if !m.rows().flatten().map(|c| c.to_string()).eq(expected) {
                    return Err(format!("A^{l} differs from enumerated signed walk counts"));
                }
                let trace: f64 = m.trace().to_string().parse().expect("integer");
                let sum = spec.power_sum(l);
                if (sum - trace).norm() > 1e-7 * (1.0 + trace.abs()) {
                    return Err(format!("sum z^{l} = {sum} but trace(A^{l}) = {trace}"));
                }
            }
            Ok(())
        }
        Property::Charpoly => {
            if g.order() > opts.cap {
                return Ok(());
            }
            let e = charpoly_enumerate(g, opts.cap).map_err(|e| e.to_string())?;
            let t = charpoly_trace(g);
            if e != t {
                return Err(format!("enumeration gives {e}, trace recurrence gives {t}"));
            }
            Ok(())
        }
        Property::ZeroEnergy => {
            let e = energy_of(g)?;
            let class = zero_energy_class(g).map_err(|e| e.to_string())?;
            if class.has_zero_energy() != (e <= ENERGY_TOLERANCE) {
                return Err(format!("class {class:?} but energy {e}"));
            }
            Ok(())
        }
    }
}

fn symmetric_k2(rng: &mut ChaCha8Rng, cfg: &CorpusConfig) -> SignedDigraph {
    let n = rng.gen_range(cfg.n_min.max(2)..=cfg.n_max.max(2)) / 2 * 2;
    let edges: Vec<(usize, usize, Sign)> = (0..n / 2)
        .map(|k| {
            let s = if rng.gen_bool(cfg.negative_fraction) { Sign::Negative } else { Sign::Positive };
            (2 * k, 2 * k + 1, s)
        })
        .collect();
    symmetric_double(n, &edges).expect("disjoint edges")
}

fn generate(cfg: &CorpusConfig, family: Family) -> Result<Vec<SignedDigraph>, Failure> {
    match family {
        Family::Random => Ok(cfg.graphs().map_err(|e| Failure::Usage(e.to_string()))?.collect()),
        Family::SymmetricK2 => {
            cfg.validate().map_err(|e| Failure::Usage(e.to_string()))?;
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            Ok((0..cfg.count).map(|_| symmetric_k2(&mut rng, cfg)).collect())
        }
    }
}

struct Evaluated {
    failures: Vec<(Property, String)>,
    hit: Option<Hit>,
}

fn search_hit(mode: Search, graphs: &[SignedDigraph], index: usize, opts: &GlobalOpts) -> Option<Hit> {
    let graph = &graphs[index];
    match mode {
        Search::EnergyEqualsN => {
            let e = energy_with(graph, &opts.root_options()).ok()?.energy;
            ((e - graph.order() as f64).abs() < SEARCH_TOLERANCE).then(|| Hit {
                index,
                n: graph.order(),
                energy: Some(e),
                basis: None,
                partner: None,
                graph: to_text(graph),
            })
        }
        Search::NepsConverse => {
            let partner = &graphs[(index + 1) % graphs.len()];
            let tuples = TWO_FACTOR_BASES[index % TWO_FACTOR_BASES.len()];
            let basis = NepsBasis::from_bit_strings(tuples).expect("fixed bases are valid");
            let factors = [graph.clone(), partner.clone()];
            let unbalanced_factor = factors.iter().any(|f| !is_cycle_balanced(f).balanced);
            let product = neps(&factors, &basis).expect("arity matches");
            (unbalanced_factor && !product.is_acyclic() && is_cycle_balanced(&product).balanced).then(|| Hit {
                index,
                n: graph.order(),
                energy: None,
                basis: Some(tuples),
                partner: Some(to_text(partner)),
                graph: to_text(graph),
            })
        }
    }
}

/// Writes each offending graph as `violation-{index}-{property}.txt`.
fn dump(dir: &Path, violations: &[Violation]) -> Result<(), Failure> {
    fs::create_dir_all(dir).map_err(|e| Failure::Usage(format!("cannot create {}: {e}", dir.display())))?;
    for v in violations {
        let path = dir.join(format!("violation-{}-{}.txt", v.index, v.property));
        fs::write(&path, &v.graph).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

pub fn run(g: &GlobalOpts, args: &CorpusArgs) -> Result<(), Failure> {
    let cfg = CorpusConfig {
        seed: g.seed,
        count: args.count,
        n_min: args.n_min,
        n_max: args.n_max,
        arc_density: args.density,
        negative_fraction: args.negative_fraction,
    };
    let graphs = match &args.replay {
        Some(path) => vec![read_graph(path)?],
        None => generate(&cfg, args.family)?,
    };
    let mut properties = args.properties.clone();
    properties.sort();
    properties.dedup();

    let evaluated: Vec<Evaluated> = (0..graphs.len())
        .into_par_iter()
        .map(|index| {
            let graph = &graphs[index];
            let failures = properties.iter().filter_map(|&p| check(graph, p, g).err().map(|d| (p, d))).collect();
            let hit = args.search.and_then(|mode| search_hit(mode, &graphs, index, g));
            Evaluated { failures, hit }
        })
        .collect();

    let mut per_property: BTreeMap<&'static str, Tally> = BTreeMap::new();
    for p in &properties {
        per_property.insert(p.name(), Tally { checked: graphs.len(), violations: 0 });
    }
    let mut violations = Vec::new();
    let mut hits = Vec::new();
    for (index, (graph, ev)) in graphs.iter().zip(evaluated).enumerate() {
        for (p, detail) in &ev.failures {
            per_property.get_mut(p.name()).expect("tallied").violations += 1;
            violations.push(Violation { index, property: p.name(), detail: detail.clone(), graph: to_text(graph) });
        }
        hits.extend(ev.hit);
    }

    if let Some(dir) = &args.dump_dir {
        dump(dir, &violations)?;
    }

    let search = args.search.map(|mode| {
        let mut orders: Vec<usize> = hits.iter().map(|h| h.n).collect();
        orders.sort_unstable();
        orders.dedup();
        SearchSummary { mode, hits, orders_with_hits: orders }
    });
    let summary = Summary { config: cfg, family: args.family, properties, graphs: graphs.len(), per_property, violations, search };

    match g.format {
        Format::Json => print_json(&summary),
        Format::Text => {
            println!("graphs: {}", summary.graphs);
            for (name, t) in &summary.per_property {
                println!("{name:<12} checked {:>6}  violations {:>4}", t.checked, t.violations);
            }
            for v in &summary.violations {
                println!("violation: graph {} [{}] {}", v.index, v.property, v.detail);
            }
            if let Some(s) = &summary.search {
                println!("search hits: {} (orders {:?})", s.hits.len(), s.orders_with_hits);
            }
        }
    }
    if summary.violations.is_empty() {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use sidigraph::format::parse;
    use sidigraph::graph::{cycle, Sign};

    #[test]
    fn dumped_violation_reparses() {
        let g = cycle_with_chord();
        let v = Violation { index: 7, property: Property::Coulson.name(), detail: "synthetic".into(), graph: to_text(&g) };
        let dir = tempfile::tempdir().unwrap();
        dump(dir.path(), &[v]).unwrap();
        let text = fs::read_to_string(dir.path().join("violation-7-coulson.txt")).unwrap();
        assert_eq!(parse(&text).unwrap(), g);
    }

    fn cycle_with_chord() -> SignedDigraph {
        let c = cycle(4, Sign::Negative).unwrap();
        let mut arcs: Vec<_> = c.arcs().collect();
        arcs.push(sidigraph::graph::Arc::new(0, 2, Sign::Positive));
        SignedDigraph::from_arcs(4, arcs).unwrap()
    }

    #[test]
    fn every_property_passes_on_small_graphs() {
        let opts = GlobalOpts { format: Format::Json, seed: 42, cap: 12, tol: 1e-8 };
        for g in (1..=3).flat_map(sidigraph::corpus::exhaustive) {
            for p in Property::value_variants() {
                assert_eq!(check(&g, *p, &opts), Ok(()), "{p:?} on {}", to_text(&g));
            }
        }
    }
}
