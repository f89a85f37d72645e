use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Map, Value};
use sidigraph::analysis::{
    bounds_report, closed_walk_balance, equienergetic_pair, is_cycle_balanced, kron_skew_pair, zero_energy_class, PairKind,
};
use sidigraph::charpoly::{charpoly_enumerate, charpoly_trace, linear_type_census};
use sidigraph::energy::{coulson_energy_with, coulson_log_energy_with, energy_with, EnergyReport, SpectralError};
use sidigraph::format::to_text;
use sidigraph::graph::{cycle, Sign, SignedDigraph};
use sidigraph::products::{neps as neps_product, NepsBasis};
use sidigraph::roots::{roots_with, RootOptions};

use crate::output::{fmt_f64, print_json, read_graph, Format};
use crate::{CharpolyMethodArg, EnergyMethodArg, Failure, GlobalOpts};

fn method_name(m: EnergyMethodArg) -> &'static str {
    match m {
        EnergyMethodArg::Algebraic => "algebraic",
        EnergyMethodArg::Coulson => "coulson",
        EnergyMethodArg::CoulsonLog => "coulson-log",
    }
}

fn run_method(g: &SignedDigraph, m: EnergyMethodArg, opts: &RootOptions) -> Result<EnergyReport, SpectralError> {
    match m {
        EnergyMethodArg::Algebraic => energy_with(g, opts),
        EnergyMethodArg::Coulson => coulson_energy_with(g, opts),
        EnergyMethodArg::CoulsonLog => coulson_log_energy_with(g, opts),
    }
}

/// Integers as JSON numbers when they fit in `i64`, else decimal strings.
fn int_json(value: impl ToString) -> Value {
    let s = value.to_string();
    s.parse::<i64>().map(Value::from).unwrap_or(Value::String(s))
}

pub fn analyze(g: &GlobalOpts, file: &Path, methods: &[EnergyMethodArg], walk_length: u32) -> Result<(), Failure> {
    let graph = read_graph(file)?;
    let opts = g.root_options();
    let phi = charpoly_trace(&graph);
    let mut errors: Vec<String> = Vec::new();

    let spec = roots_with(&phi, &opts).map_err(|e| errors.push(format!("spectrum: {e}"))).ok();
    let mut energies = Map::new();
    for &m in methods {
        let value = match run_method(&graph, m, &opts) {
            Ok(r) => serde_json::to_value(r).expect("reports serialize"),
            Err(e) => {
                errors.push(format!("{}: {e}", method_name(m)));
                json!({ "error": e.to_string() })
            }
        };
        energies.insert(method_name(m).to_string(), value);
    }
    let balance = is_cycle_balanced(&graph);
    let class = zero_energy_class(&graph).map_err(|e| errors.push(format!("zero-energy class: {e}"))).ok();
    let bounds = bounds_report(&graph).map_err(|e| errors.push(format!("bounds: {e}"))).ok();
    if let Some(b) = &bounds {
        errors.extend(b.violations().into_iter().map(|v| format!("bounds: {v}")));
    }
    let census = if graph.order() <= g.cap { linear_type_census(&graph, g.cap).ok() } else { None };

    let mut closed = Vec::new();
    let mut power_sums = Vec::new();
    for m in 1..=walk_length {
        closed.push(int_json(closed_walk_balance(&graph, m).expect("walk length is positive")));
        if let Some(s) = &spec {
            let z = s.power_sum(m);
            power_sums.push(json!({ "re": z.re, "im": z.im }));
        }
    }

    let report = json!({
        "n": graph.order(),
        "arc_count": graph.arc_count(),
        "charpoly": phi,
        "charpoly_text": phi.to_string(),
        "census": census,
        "spectrum": spec,
        "energy": energies,
        "balance": balance,
        "zero_energy_class": class,
        "bounds": bounds,
        "walks": { "closed_walk_balance": closed, "power_sums": power_sums },
        "strong_components": graph.strong_component_sets(),
        "errors": errors,
    });

    match g.format {
        Format::Json => print_json(&report),
        Format::Text => {
            println!("vertices: {}  arcs: {}", graph.order(), graph.arc_count());
            println!("charpoly: {phi}");
            if let Some(s) = &spec {
                println!("spectrum:");
                for v in s.eigenvalues() {
                    println!("  {:+.10} {:+.10}i  x{}", v.re, v.im, v.multiplicity);
                }
            }
            for (name, v) in &energies {
                match v.get("energy").and_then(Value::as_f64) {
                    Some(e) => println!("energy ({name}): {}", fmt_f64(e)),
                    None => println!("energy ({name}): failed"),
                }
            }
            print_balance_text(&balance);
            if let Some(c) = class {
                println!("zero-energy class: {c:?}");
            }
            if let Some(b) = &bounds {
                println!(
                    "bounds: McClelland {}  arcs {} (attained: {})  sum |z|^2 {}",
                    fmt_f64(b.mcclelland),
                    b.arc_bound.bound,
                    b.arc_bound.attained,
                    fmt_f64(b.squared_modulus_sum)
                );
            }
            let closed: Vec<String> = closed.iter().map(Value::to_string).collect();
            println!("trace(A^m), m=1..{walk_length}: {}", closed.join(" "));
            for e in &errors {
                println!("error: {e}");
            }
        }
    }
    if errors.is_empty() {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn print_balance_text(w: &sidigraph::analysis::BalanceWitness) {
    match (&w.potential, &w.negative_cycle) {
        (Some(p), _) => {
            let s: String = p.iter().map(|s| s.symbol()).collect();
            println!("balanced: yes (potential {s})");
        }
        (_, Some(c)) => {
            let mut c: Vec<String> = c.iter().map(usize::to_string).collect();
            c.push(c[0].clone());
            println!("balanced: no (negative cycle {})", c.join(" -> "));
        }
        _ => println!("balanced: {}", w.balanced),
    }
}

pub fn energy(g: &GlobalOpts, file: &Path, method: EnergyMethodArg) -> Result<(), Failure> {
    let graph = read_graph(file)?;
    match run_method(&graph, method, &g.root_options()) {
        Ok(r) => {
            match g.format {
                Format::Json => print_json(&r),
                Format::Text => println!("{} ({})", fmt_f64(r.energy), method_name(method)),
            }
            Ok(())
        }
        Err(e) => {
            eprintln!("error: {}: {e}", method_name(method));
            Err(Failure::Check)
        }
    }
}

pub fn charpoly(g: &GlobalOpts, file: &Path, method: CharpolyMethodArg, census: bool) -> Result<(), Failure> {
    let graph = read_graph(file)?;
    let fail = |e: sidigraph::charpoly::CharpolyError| {
        eprintln!("error: {e}");
        Failure::Check
    };
    let phi = match method {
        CharpolyMethodArg::Trace => charpoly_trace(&graph),
        CharpolyMethodArg::Enumerate => charpoly_enumerate(&graph, g.cap).map_err(fail)?,
    };
    let census = if census { Some(linear_type_census(&graph, g.cap).map_err(fail)?) } else { None };
    match g.format {
        Format::Json => print_json(&json!({ "charpoly": phi, "text": phi.to_string(), "census": census })),
        Format::Text => {
            println!("{phi}");
            if let Some(c) = census {
                for (i, t) in c.iter() {
                    println!("order {i}: a={} b={} c={} d={} -> c_{i} = {}", t.a, t.b, t.c, t.d, t.coefficient());
                }
            }
        }
    }
    Ok(())
}

pub fn balance(g: &GlobalOpts, file: &Path) -> Result<(), Failure> {
    let graph = read_graph(file)?;
    let w = is_cycle_balanced(&graph);
    match g.format {
        Format::Json => print_json(&w),
        Format::Text => print_balance_text(&w),
    }
    Ok(())
}

pub fn neps(g: &GlobalOpts, basis: &str, files: &[PathBuf]) -> Result<(), Failure> {
    let tuples: Vec<&str> = basis.split(',').map(str::trim).collect();
    let basis = NepsBasis::from_bit_strings(&tuples).map_err(|e| Failure::Usage(e.to_string()))?;
    let factors = files.iter().map(|f| read_graph(f)).collect::<Result<Vec<_>, _>>()?;
    let product = neps_product(&factors, &basis).map_err(|e| Failure::Usage(e.to_string()))?;
    match g.format {
        Format::Json => print_json(&json!({
            "basis": tuples,
            "order": product.order(),
            "arc_count": product.arc_count(),
            "balanced": is_cycle_balanced(&product).balanced,
            "graph": product,
        })),
        Format::Text => print!("{}", to_text(&product)),
    }
    Ok(())
}

pub fn pair(
    g: &GlobalOpts,
    kind: PairKind,
    n: usize,
    base: Option<&Path>,
    m: usize,
    emit_dir: Option<&Path>,
) -> Result<(), Failure> {
    let built = match (kind, base) {
        (PairKind::KronSkew, Some(path)) => kron_skew_pair(&read_graph(path)?, m),
        (PairKind::KronSkew, None) => {
            let base = cycle(n, Sign::Positive).map_err(|e| Failure::Usage(e.to_string()))?;
            kron_skew_pair(&base, m)
        }
        (_, Some(_)) => return Err(Failure::Usage("--base applies to kron-skew only".into())),
        _ => equienergetic_pair(n, kind),
    };
    let p = built.map_err(|e| Failure::Usage(e.to_string()))?;
    if let Some(dir) = emit_dir {
        fs::create_dir_all(dir).map_err(|e| Failure::Usage(format!("cannot create {}: {e}", dir.display())))?;
        for (name, graph) in [("first.txt", &p.first), ("second.txt", &p.second)] {
            let path = dir.join(name);
            fs::write(&path, to_text(graph)).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
        }
    }
    let r = &p.report;
    match g.format {
        Format::Json => print_json(&json!({ "report": r, "passed": r.passed() })),
        Format::Text => {
            println!("{} n={} order={}", r.kind, r.n, r.order);
            println!("energies: {} {} (expected {})", fmt_f64(r.energies[0]), fmt_f64(r.energies[1]), fmt_f64(r.expected_energy));
            println!("charpolys: {} | {}", r.charpolys[0], r.charpolys[1]);
            println!("cospectral: {}  balanced: {:?}", r.cospectral, r.balanced);
            for note in &r.notes {
                println!("note: {note}");
            }
            println!("{}", if r.passed() { "PASS" } else { "FAIL" });
        }
    }
    if r.passed() {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}
