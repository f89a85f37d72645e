//! Acceptance suite: one line per criterion, nonzero exit on any failure.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sidigraph::analysis::{
    bounds_report, composed_neps_spectrum, cycle_energy_closed_form, equienergetic_pair, is_cycle_balanced,
    neps_balance_check, quasi_order_compare, signed_walk_matrix, PairKind, Relation,
};
use sidigraph::charpoly::{charpoly_enumerate, charpoly_trace, DEFAULT_ENUMERATION_CAP};
use sidigraph::corpus::{exhaustive, random_sidigraph, CorpusConfig};
use sidigraph::energy::{coulson_energy, energy, is_cospectral, spectrum};
use sidigraph::graph::{cycle, cycle_with_tail, digon_union, skew_symmetric_star, symmetric_double, Sign, SignedDigraph};
use sidigraph::polynomial::IntPolynomial;
use sidigraph::products::{kronecker_product, neps, NepsBasis};
use sidigraph::roots::multiset_close;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn small_graphs() -> impl Iterator<Item = SignedDigraph> {
    (1..=3).flat_map(exhaustive)
}

fn golden_values() -> Outcome {
    let c4 = energy(&cycle(4, Sign::Negative).unwrap()).map_err(|e| e.to_string())?.energy;
    ensure((c4 - 8f64.sqrt()).abs() <= 1e-9, || format!("E(C4-) = {c4}"))?;
    let g = cycle_with_tail(10, 3, Sign::Negative).unwrap();
    let phi = charpoly_trace(&g);
    let mut expected = vec![0i64; 11];
    expected[10] = 1;
    expected[7] = 1;
    ensure(phi == IntPolynomial::from_i64(&expected), || format!("charpoly {phi}"))?;
    let e = energy(&g).map_err(|e| e.to_string())?.energy;
    ensure((e - 2.0).abs() <= 1e-9, || format!("E(x^10 + x^7 graph) = {e}"))?;
    for n in 2..=20 {
        let e = energy(&skew_symmetric_star(n).unwrap()).map_err(|e| e.to_string())?.energy;
        ensure(e.abs() <= 1e-9, || format!("E(skew star {n}) = {e}"))?;
    }
    Ok(format!("E(C4-) = {c4:.12}, E(x^10+x^7) = {e:.12}, skew stars n=2..20 all 0"))
}

fn closed_form_table() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in 2..=50 {
        for s in [Sign::Positive, Sign::Negative] {
            let closed = cycle_energy_closed_form(n, s).unwrap();
            let numeric = energy(&cycle(n, s).unwrap()).map_err(|e| format!("n={n}: {e}"))?.energy;
            worst = worst.max((closed - numeric).abs());
            ensure((closed - numeric).abs() <= 1e-8, || format!("n={n} {s}: closed {closed} vs numeric {numeric}"))?;
        }
    }
    for s in [Sign::Positive, Sign::Negative] {
        let e3 = energy(&cycle(3, s).unwrap()).unwrap().energy;
        let with_factor_two = 2.0 / (PI / 6.0).sin();
        ensure((e3 - 2.0).abs() <= 1e-9 && (e3 - with_factor_two).abs() > 1.0, || format!("E(C3{s}) = {e3}"))?;
    }
    Ok(format!("n=2..50 both signs, max deviation {worst:.1e}; E(C3) = 2 = csc(pi/6)"))
}

fn coulson_agreement() -> Outcome {
    let mut graphs = vec![cycle(4, Sign::Negative).unwrap(), cycle(3, Sign::Positive).unwrap(), cycle(2, Sign::Negative).unwrap()];
    let cfg = CorpusConfig { seed: 3, count: 200, n_min: 1, n_max: 8, arc_density: 0.35, negative_fraction: 0.5 };
    graphs.extend(cfg.graphs().unwrap());
    let mut worst: f64 = 0.0;
    let mut poles = 0;
    for (k, g) in graphs.iter().enumerate() {
        let alg = energy(g).map_err(|e| format!("graph {k}: {e}"))?.energy;
        let c = coulson_energy(g).map_err(|e| format!("graph {k}: {e}"))?.energy;
        worst = worst.max((alg - c).abs());
        ensure((alg - c).abs() <= 1e-4, || format!("graph {k}: algebraic {alg} vs Coulson {c}"))?;
        if spectrum(g).unwrap().eigenvalues().iter().any(|v| v.re.abs() < 1e-9 && v.im.abs() > 1e-8) {
            poles += 1;
        }
    }
    Ok(format!("{} graphs ({poles} with imaginary-axis poles), max deviation {worst:.1e}", graphs.len()))
}

fn charpoly_oracles() -> Outcome {
    let mut count = 0;
    for g in small_graphs() {
        let a = charpoly_enumerate(&g, DEFAULT_ENUMERATION_CAP).map_err(|e| e.to_string())?;
        ensure(a == charpoly_trace(&g), || format!("mismatch on {g:?}"))?;
        count += 1;
    }
    let cfg = CorpusConfig { seed: 4, count: 500, n_min: 1, n_max: 10, arc_density: 0.3, negative_fraction: 0.5 };
    for g in cfg.graphs().unwrap() {
        let a = charpoly_enumerate(&g, DEFAULT_ENUMERATION_CAP).map_err(|e| e.to_string())?;
        ensure(a == charpoly_trace(&g), || format!("mismatch on {g:?}"))?;
        count += 1;
    }
    Ok(format!("{count} graphs (exhaustive n<=3 plus 500 random n<=10), exact equality"))
}

fn random_basis(rng: &mut ChaCha8Rng, arity: usize) -> NepsBasis {
    let all: Vec<Vec<bool>> =
        (1..1usize << arity).map(|mask| (0..arity).map(|i| mask >> (arity - 1 - i) & 1 == 1).collect()).collect();
    loop {
        let chosen: Vec<Vec<bool>> = all.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect();
        if let Ok(b) = NepsBasis::new(arity, chosen) {
            return b;
        }
    }
}

fn neps_spectra() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut trials = 0;
    let mut max_order = 0;
    for arity in [2usize, 2, 3] {
        for _ in 0..40 {
            let factors: Vec<SignedDigraph> =
                (0..arity)
                    .map(|_| {
                        let n = rng.gen_range(1..=4);
                        random_sidigraph(&mut rng, n, 0.5, 0.5)
                    })
                    .collect();
            let basis = random_basis(&mut rng, arity);
            let product = neps(&factors, &basis).map_err(|e| e.to_string())?;
            max_order = max_order.max(product.order());
            let direct = spectrum(&product).map_err(|e| format!("product spectrum: {e}"))?.expanded();
            let parts: Vec<Vec<Complex64>> = factors.iter().map(|f| spectrum(f).unwrap().expanded()).collect();
            let composed = composed_neps_spectrum(&parts, &basis);
            ensure(multiset_close(&direct, &composed, 1e-7), || {
                format!("basis {:?} factors {factors:?}: {direct:?} vs {composed:?}", basis.tuples())
            })?;
            trials += 1;
        }
    }
    Ok(format!("{trials} random products (pairs and triples, factor orders <= 4, up to {max_order} vertices)"))
}

fn balance_equivalences() -> Outcome {
    let mut count = 0;
    for g in small_graphs() {
        let w = is_cycle_balanced(&g);
        let cospectral = is_cospectral(&g, &g.unsigned()).unwrap();
        ensure(w.balanced == cospectral, || format!("balance {} but cospectral {cospectral}: {g:?}", w.balanced))?;
        ensure(w.verify(&g), || format!("witness fails verification: {g:?}"))?;
        count += 1;
    }
    // Balanced factors: random signings switched from all-positive graphs.
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut products = 0;
    for _ in 0..60 {
        let arity = rng.gen_range(2..=3);
        let factors: Vec<SignedDigraph> = (0..arity)
            .map(|_| {
                let n = rng.gen_range(1..=4);
                let base = random_sidigraph(&mut rng, n, 0.5, 0.0);
                let flip: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
                let arcs = base.arcs().map(|a| {
                    let s = if flip[a.tail] != flip[a.head] { -a.sign } else { a.sign };
                    sidigraph::graph::Arc::new(a.tail, a.head, s)
                });
                SignedDigraph::from_arcs(n, arcs.collect::<Vec<_>>()).unwrap()
            })
            .collect();
        let basis = random_basis(&mut rng, arity);
        let balanced = neps_balance_check(&factors, &basis).map_err(|e| e.to_string())?;
        ensure(balanced, || format!("unbalanced product of balanced factors, basis {:?}", basis.tuples()))?;
        products += 1;
    }
    let minus_c3 = cycle(3, Sign::Positive).unwrap().negated();
    let minus_k2 = cycle(2, Sign::Positive).unwrap().negated();
    ensure(!is_cycle_balanced(&minus_c3).balanced, || "-C3 should be unbalanced".into())?;
    let counter = kronecker_product(&minus_c3, &minus_k2);
    ensure(is_cycle_balanced(&counter).balanced, || "(-C3) x (-K2) Kronecker product should be balanced".into())?;
    ensure(counter.arcs().all(|a| a.sign.is_positive()), || "Kronecker counterexample should be all positive".into())?;
    Ok(format!("{count} exhaustive graphs, {products} balanced-factor products, Kronecker counterexample balanced"))
}

fn bounds() -> Outcome {
    let cfg = CorpusConfig { seed: 7, count: 1000, n_min: 1, n_max: 8, arc_density: 0.35, negative_fraction: 0.5 };
    let mut count = 0;
    let mut attained = 0;
    for g in small_graphs().chain(cfg.graphs().unwrap()) {
        let r = bounds_report(&g).map_err(|e| e.to_string())?;
        let v = r.violations();
        ensure(v.is_empty(), || format!("{g:?}: {v:?}"))?;
        attained += usize::from(r.arc_bound.attained);
        count += 1;
    }
    for k in 1..=10 {
        for s in [Sign::Positive, Sign::Negative] {
            let g = digon_union(k, s).unwrap();
            let r = bounds_report(&g).map_err(|e| e.to_string())?;
            let n = (2 * k) as f64;
            ensure((r.energy - n).abs() <= 1e-9 && (r.mcclelland - n).abs() <= 1e-9 && r.arc_bound.attained, || {
                format!("{k} digons ({s}): {r:?}")
            })?;
        }
    }
    for n in 2..=12 {
        let r = bounds_report(&skew_symmetric_star(n).unwrap()).map_err(|e| e.to_string())?;
        ensure(r.energy.abs() <= 1e-9 && r.mcclelland == 0.0, || format!("skew star {n}: {r:?}"))?;
    }
    Ok(format!("{count} graphs ({attained} attain E = a), digon unions and skew stars attain McClelland"))
}

fn equienergetic_families() -> Outcome {
    let mut checked = 0;
    let runs = (2..=10)
        .map(|n| (n, PairKind::CycleK2))
        .chain((5..=10).map(|n| (n, PairKind::PlnK2)))
        .chain([3, 5, 7, 9].map(|n| (n, PairKind::OddCycles)));
    for (n, kind) in runs {
        let p = equienergetic_pair(n, kind).map_err(|e| format!("{kind} n={n}: {e}"))?;
        ensure(p.report.passed(), || format!("{kind} n={n}: {:?}", p.report))?;
        if kind != PairKind::OddCycles {
            ensure((p.report.energies[0] - 2.0 * n as f64).abs() <= 1e-9, || format!("{kind} n={n}: E != 2n"))?;
        }
        if kind == PairKind::PlnK2 {
            ensure(p.report.multiplicity_of_one == [n - 3, n - 4], || format!("pln-k2 n={n}: {:?}", p.report.multiplicity_of_one))?;
        }
        checked += 1;
    }
    Ok(format!("{checked} pairs: equal energies, distinct integer polynomials"))
}

/// Brute force over every vertex sequence of length `l + 1`.
fn walk_oracle(g: &SignedDigraph, l: u32) -> Vec<i64> {
    let n = g.order();
    let mut out = vec![0i64; n * n];
    let total = n.pow(l + 1);
    for code in 0..total {
        let mut seq = Vec::with_capacity(l as usize + 1);
        let mut c = code;
        for _ in 0..=l {
            seq.push(c % n);
            c /= n;
        }
        let mut sign = 1i64;
        let mut ok = true;
        for w in seq.windows(2) {
            match g.sign(w[0], w[1]) {
                Some(s) => sign *= i64::from(s.to_i8()),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            out[seq[0] * n + seq[l as usize]] += sign;
        }
    }
    out
}

fn walk_counting() -> Outcome {
    let cfg = CorpusConfig { seed: 9, count: 100, n_min: 1, n_max: 5, arc_density: 0.5, negative_fraction: 0.5 };
    let mut worst: f64 = 0.0;
    for (k, g) in cfg.graphs().unwrap().enumerate() {
        let spec = spectrum(&g).map_err(|e| e.to_string())?;
        for l in 1..=6 {
            let m = signed_walk_matrix(&g, l).unwrap();
            let got: Vec<BigInt> = m.rows().flatten().cloned().collect();
            let want: Vec<BigInt> = walk_oracle(&g, l).into_iter().map(BigInt::from).collect();
            ensure(got == want, || format!("graph {k}, l={l}: walk matrix mismatch"))?;
            let trace: f64 = m.trace().to_string().parse().unwrap();
            let power_sum = spec.power_sum(l);
            worst = worst.max((power_sum - trace).norm());
            ensure((power_sum - trace).norm() <= 1e-7, || format!("graph {k}, m={l}: sum z^m = {power_sum} vs trace {trace}"))?;
        }
    }
    Ok(format!("100 random graphs n<=5, l=1..6; trace identity max deviation {worst:.1e}"))
}

/// Symmetric double of a random forest on `n` vertices with random edge
/// signs, plus the same forest with one more edge joining two trees.
fn forest_pair(rng: &mut ChaCha8Rng, n: usize) -> Option<(SignedDigraph, SignedDigraph)> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut root: Vec<usize> = (0..n).collect();
    fn find(root: &mut [usize], v: usize) -> usize {
        let mut r = v;
        while root[r] != r {
            r = root[r];
        }
        root[v] = r;
        r
    }
    let sign = |rng: &mut ChaCha8Rng| if rng.gen_bool(0.5) { Sign::Negative } else { Sign::Positive };
    let mut edges = Vec::new();
    for k in 1..n {
        if rng.gen_bool(0.7) {
            let v = order[k];
            let u = order[rng.gen_range(0..k)];
            let (ru, rv) = (find(&mut root, u), find(&mut root, v));
            if ru != rv {
                root[rv] = ru;
                edges.push((u, v, sign(rng)));
            }
        }
    }
    let tree: Vec<usize> = (0..n).map(|v| find(&mut root, v)).collect();
    let candidates: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| tree[u] != tree[v]).collect();
    let &(u, v) = candidates.choose(rng)?;
    let smaller = symmetric_double(n, &edges).unwrap();
    edges.push((u, v, sign(rng)));
    Some((smaller, symmetric_double(n, &edges).unwrap()))
}

fn quasi_order() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut pairs = 0;
    let mut min_gap = f64::INFINITY;
    while pairs < 50 {
        let n = rng.gen_range(4..=12);
        let Some((s1, s2)) = forest_pair(&mut rng, n) else { continue };
        let r = quasi_order_compare(&s1, &s2, 2).map_err(|e| format!("pair {pairs}: {e}"))?;
        ensure(r.relation == Relation::Less, || format!("pair {pairs}: relation {:?}", r.relation))?;
        let (e1, e2) = r.energies.ok_or("energies not computed")?;
        ensure(e1 < e2, || format!("pair {pairs}: {e1} !< {e2}"))?;
        min_gap = min_gap.min(e2 - e1);
        pairs += 1;
    }
    Ok(format!("{pairs} forest-double pairs, strict dominance, smallest energy gap {min_gap:.3e}"))
}

struct Criterion {
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { name: "golden energy values", limit: Duration::from_secs(1), run: golden_values },
        Criterion { name: "cycle closed-form table", limit: Duration::from_secs(10), run: closed_form_table },
        Criterion { name: "Coulson integral agreement", limit: Duration::from_secs(60), run: coulson_agreement },
        Criterion { name: "charpoly oracle equivalence", limit: Duration::from_secs(60), run: charpoly_oracles },
        Criterion { name: "NEPS spectrum formula", limit: Duration::from_secs(30), run: neps_spectra },
        Criterion { name: "balance equivalences", limit: Duration::from_secs(60), run: balance_equivalences },
        Criterion { name: "energy bounds", limit: Duration::from_secs(60), run: bounds },
        Criterion { name: "equienergetic families", limit: Duration::from_secs(60), run: equienergetic_families },
        Criterion { name: "signed walk counting", limit: Duration::from_secs(60), run: walk_counting },
        Criterion { name: "quasi-order monotonicity", limit: Duration::from_secs(60), run: quasi_order },
    ];
    let mut failed = 0;
    for (k, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > c.limit => Err(format!("exceeded {:?}: {detail}", c.limit)),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {} ({:.2}s): {detail}", k + 1, c.name, elapsed.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {} ({:.2}s): {why}", k + 1, c.name, elapsed.as_secs_f64());
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
