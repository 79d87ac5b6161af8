//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Run with `cargo test -p dchain --test acceptance`.

use std::cell::RefCell;
use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::Instant;

use dchain::dchain_core;
use dchain::{archive_scan_samples, run_sweep, sweep_grid};
use dchain_core::coloring::{
    class_kinds, construct_double_chain_coloring, remove_star_apices, thrackle_edge_bound_ok, thrackle_sizes,
    verify_coloring,
};
use dchain_core::disjointness::{all_segments, build_graph, convex_hull};
use dchain_core::formulas::{f_closed_form, f_of, f_step, g_of, theorem_value};
use dchain_core::geometry::{
    gen_convex, gen_double_chain, is_general_position, orientation, segments_disjoint, validate_double_chain,
};
use dchain_core::solver::{
    chromatic_number_exact, dsatur_upper, prop4_check, random_general_position, ExactProvider, ScanMode, ScanReport,
    ScanSample,
};
use dchain_core::{BitGraph, Budget, ClassKind, Coloring, Orientation, Point, PointSet, SegmentId};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn(&mut Collected) -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

/// Proper colorings of convex point sets seen anywhere in the suite.
#[derive(Default)]
struct Collected {
    convex: Vec<(PointSet, Coloring)>,
    prop4_bound_failures: u64,
    prop4_colorings: u64,
}

fn chi(g: &BitGraph) -> (usize, Coloring) {
    let r = chromatic_number_exact(g, Budget::UNLIMITED).exact().expect("unlimited budget");
    (r.chi, r.witness)
}

fn chi_of_points(ps: &PointSet) -> usize {
    if ps.len() < 2 {
        return 0;
    }
    chi(build_graph(ps).unwrap().graph()).0
}

fn is_convex_position(ps: &PointSet) -> bool {
    ps.len() >= 3 && convex_hull(ps).unwrap().len() == ps.len()
}

fn sweep(_: &mut Collected) -> Outcome {
    let rows = run_sweep(9, None).map_err(|e| e.to_string())?.map_err(|e| format!("{e:?}"))?;
    ensure!(rows.len() == 17, "expected 17 grid cells, got {}", rows.len());
    for r in &rows {
        ensure!(r.chi == r.expected, "C_{{{},{}}}: chi = {}, k + f(l) = {}", r.k, r.l, r.chi, r.expected);
    }
    Ok(format!("{} double chains with k + l <= 9, chi = k + f(l) on every one", rows.len()))
}

fn convex(c: &mut Collected) -> Outcome {
    let mut values = Vec::new();
    for n in 4..=10usize {
        let ps = gen_convex(n).unwrap();
        let g = build_graph(&ps).unwrap();
        let (x, witness) = chi(g.graph());
        // n - floor(sqrt(2n + 1/4) - 1/2) in integers.
        let expected = n - ((8 * n + 1).isqrt() - 1) / 2;
        ensure!(x == expected, "n = {n}: chi = {x}, formula = {expected}");
        ensure!(verify_coloring(g.graph(), &witness).unwrap().is_proper(), "n = {n}: witness not proper");
        c.convex.push((ps.clone(), witness));
        c.convex.push((ps, dsatur_upper(g.graph())));
        values.push(x);
    }
    Ok(format!("chi(D(C_n)) for n = 4..=10 is {values:?}, equal to the closed form"))
}

fn construction(c: &mut Collected) -> Outcome {
    let provided = RefCell::new(Vec::new());
    let provider = |ps: &PointSet| {
        let col = dchain_core::coloring::ConvexProvider::color_convex(&ExactProvider::default(), ps)?;
        provided.borrow_mut().push((ps.clone(), col.clone()));
        Ok(col)
    };
    let grid = sweep_grid(9);
    for &(k, l) in &grid {
        let (ps, col) = construct_double_chain_coloring(k, l, &provider).map_err(|e| format!("C_{{{k},{l}}}: {e}"))?;
        let g = build_graph(&ps).unwrap();
        let verdict = verify_coloring(g.graph(), &col).unwrap();
        ensure!(verdict.is_proper(), "C_{{{k},{l}}}: {} violations", verdict.violations.len());
        let want = theorem_value(k as u64, l as u64).unwrap() as usize;
        ensure!(col.color_count() == want, "C_{{{k},{l}}}: {} colors, k + f(l) = {want}", col.color_count());
    }
    c.convex.extend(provided.into_inner());
    Ok(format!("{} constructed colorings proper with exactly k + f(l) colors", grid.len()))
}

fn singletons(c: &mut Collected) -> Outcome {
    let mut parts = Vec::new();
    for n in 4..=6 {
        let r = prop4_check(n).map_err(|e| e.to_string())?;
        ensure!(r.holds(), "n = {n}: {} optimal colorings with two or more singleton classes", r.offending);
        ensure!(r.colorings > 0, "n = {n}: no optimal coloring enumerated");
        c.prop4_bound_failures += r.thrackle_bound_failures;
        c.prop4_colorings += r.colorings;
        parts.push(format!("n={n}: {} colorings, max {}", r.colorings, r.max_singleton_classes));
    }
    Ok(format!("at most one singleton class ({})", parts.join("; ")))
}

fn increments(_: &mut Collected) -> Outcome {
    const LIMIT: u64 = 1_000_000;
    // C(i, 2) - 1 by direct enumeration, and g(n) by walking n upward.
    let flat: BTreeSet<u64> = (2u64..).map(|i| i * (i - 1) / 2 - 1).take_while(|&m| m <= LIMIT).collect();
    let mut g = 1u64;
    for n in 1..=LIMIT {
        while (g + 1) * g / 2 <= n {
            g += 1;
        }
        let f = f_closed_form(n).unwrap();
        ensure!(f == n + 1 - g, "n = {n}: closed form {f}, n - g(n) + 1 = {}", n + 1 - g);
        ensure!(g_of(n).unwrap() == g, "n = {n}: g = {}, enumeration gives {g}", g_of(n).unwrap());
        let step = f_step(n).unwrap();
        ensure!(step <= 1, "n = {n}: step {step}");
        ensure!((step == 0) == flat.contains(&n), "n = {n}: step {step}, C(i,2) - 1 = {}", flat.contains(&n));
    }
    Ok(format!("n <= {LIMIT}: steps in {{0, 1}}, {} zero steps all at C(i,2) - 1", flat.len()))
}

fn star_instances() -> Vec<PointSet> {
    let mut out: Vec<PointSet> = (3..=8).map(|n| gen_convex(n).unwrap()).collect();
    for k in 1..=4 {
        for l in k..=8 - k {
            out.push(gen_double_chain(k, l).unwrap());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for n in 4..=8 {
        for _ in 0..40 {
            out.push(random_general_position(n, &mut rng).unwrap());
        }
    }
    out
}

fn star_removal(c: &mut Collected) -> Outcome {
    let instances = star_instances();
    let (mut with_stars, mut max_r) = (0, 0);
    for ps in &instances {
        let g = build_graph(ps).unwrap();
        let (x, witness) = chi(g.graph());
        if is_convex_position(ps) {
            c.convex.push((ps.clone(), witness.clone()));
        }
        let apices: Vec<usize> = class_kinds(ps.len(), &witness)
            .into_iter()
            .filter_map(|k| match k {
                ClassKind::Star { apex } => Some(apex),
                ClassKind::Thrackle => None,
            })
            .collect();
        if apices.is_empty() {
            continue;
        }
        let (reduced, induced) = remove_star_apices(ps, &witness, &apices).map_err(|e| format!("{:?}: {e}", ps.points()))?;
        if reduced.len() >= 2 {
            let h = build_graph(&reduced).unwrap();
            ensure!(verify_coloring(h.graph(), &induced).unwrap().is_proper(), "induced coloring not proper");
        }
        let after = chi_of_points(&reduced);
        ensure!(
            after + apices.len() == x,
            "{:?}: chi = {x}, {} stars, chi after deletion = {after}",
            ps.points(),
            apices.len()
        );
        with_stars += 1;
        max_r = max_r.max(apices.len());
    }
    ensure!(with_stars > 0, "no instance had a star class");
    Ok(format!("{with_stars} of {} instances had stars (up to {max_r}); chi dropped by exactly r each time", instances.len()))
}

fn thrackle_bound(c: &mut Collected) -> Outcome {
    ensure!(c.prop4_bound_failures == 0, "{} enumerated colorings break the bound", c.prop4_bound_failures);
    for (ps, col) in &c.convex {
        let n = ps.len();
        ensure!(is_convex_position(ps), "collected set not in convex position");
        let g = build_graph(ps).unwrap();
        ensure!(verify_coloring(g.graph(), col).unwrap().is_proper(), "collected coloring not proper");
        let sizes = thrackle_sizes(n, col);
        ensure!(thrackle_edge_bound_ok(n, &sizes), "n = {n}: thrackle sizes {sizes:?}");
    }
    Ok(format!("{} enumerated and {} other convex colorings within k*n - C(k,2)", c.prop4_colorings, c.convex.len()))
}

/// Orientation of every ordered triple, indexed `[p][q][r]`.
struct Orient {
    n: usize,
    table: Vec<Orientation>,
}

impl Orient {
    fn new(ps: &PointSet) -> Self {
        let n = ps.len();
        let mut table = Vec::with_capacity(n * n * n);
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    table.push(orientation(ps.point(p), ps.point(q), ps.point(r)));
                }
            }
        }
        Self { n, table }
    }

    fn at(&self, p: usize, q: usize, r: usize) -> Orientation {
        self.table[(p * self.n + q) * self.n + r]
    }

    /// Segments without common endpoint, points in general position.
    fn cross(&self, a: SegmentId, b: SegmentId) -> bool {
        self.at(a.i(), a.j(), b.i()) != self.at(a.i(), a.j(), b.j())
            && self.at(b.i(), b.j(), a.i()) != self.at(b.i(), b.j(), a.j())
    }
}

fn sorted_by_x(ps: &PointSet, idx: &[usize]) -> Vec<usize> {
    let mut v = idx.to_vec();
    v.sort_by_key(|&i| ps.point(i).x);
    v
}

/// Every condition checked over all triples rather than consecutive ones.
fn conditions_oracle(ps: &PointSet, o: &Orient) -> Result<(), String> {
    let part = ps.partition().unwrap();
    let (u, l) = (sorted_by_x(ps, &part.upper), sorted_by_x(ps, &part.lower));
    let n = ps.len();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                ensure!(o.at(a, b, c) != Orientation::Collinear, "collinear {a} {b} {c}");
            }
        }
    }
    for (chain, want) in [(&u, Orientation::CounterClockwise), (&l, Orientation::Clockwise)] {
        for a in 0..chain.len() {
            for b in a + 1..chain.len() {
                for c in b + 1..chain.len() {
                    ensure!(o.at(chain[a], chain[b], chain[c]) == want, "chain triple {a} {b} {c} not convex");
                }
            }
        }
    }
    for (chain, others, want) in [(&u, &l, Orientation::Clockwise), (&l, &u, Orientation::CounterClockwise)] {
        for a in 0..chain.len() {
            for b in a + 1..chain.len() {
                for &r in others {
                    ensure!(o.at(chain[a], chain[b], r) == want, "{r} on the wrong side of {}-{}", chain[a], chain[b]);
                }
            }
        }
    }
    Ok(())
}

fn hull_edges_of_chain(sorted: &[usize]) -> Vec<SegmentId> {
    let mut e: Vec<_> = sorted.windows(2).map(|w| SegmentId::new(w[0], w[1])).collect();
    if sorted.len() >= 3 {
        e.push(SegmentId::new(sorted[0], sorted[sorted.len() - 1]));
    }
    e
}

fn geometry(_: &mut Collected) -> Outcome {
    let mut instances = 0;
    for k in 1..=50 {
        for l in k..=50 {
            let ps = gen_double_chain(k, l).map_err(|e| format!("C_{{{k},{l}}}: {e}"))?;
            let report = validate_double_chain(&ps).unwrap();
            ensure!(report.is_valid(), "C_{{{k},{l}}}: {report:?}");
            ensure!((report.k, report.l) == (k, l), "C_{{{k},{l}}}: sizes {:?}", (report.k, report.l));
            let o = Orient::new(&ps);
            conditions_oracle(&ps, &o).map_err(|e| format!("C_{{{k},{l}}}: {e}"))?;

            let part = ps.partition().unwrap();
            let upper: BTreeSet<usize> = part.upper.iter().copied().collect();
            let (cross, inside): (Vec<SegmentId>, Vec<SegmentId>) =
                all_segments(ps.len()).partition(|s| upper.contains(&s.i()) != upper.contains(&s.j()));
            for &g in &cross {
                for &f in &inside {
                    ensure!(g.shares_endpoint(f) || !o.cross(g, f), "C_{{{k},{l}}}: {g} crosses {f}");
                }
            }
            if k + l <= 10 {
                let segs: Vec<_> = all_segments(ps.len()).collect();
                for chain in [&part.upper, &part.lower] {
                    for e in hull_edges_of_chain(&sorted_by_x(&ps, chain)) {
                        for &s in &segs {
                            ensure!(
                                s == e || s.shares_endpoint(e) || !o.cross(s, e),
                                "C_{{{k},{l}}}: {s} crosses hull edge {e}"
                            );
                        }
                    }
                }
            }
            instances += 1;
        }
    }
    let mut deletions = 0u64;
    for (k, l) in (1..=8).flat_map(|k| (k..=9 - k).map(move |l| (k, l))) {
        let ps = gen_double_chain(k, l).unwrap();
        let part = ps.partition().unwrap().clone();
        for um in 0u32..(1 << k) - 1 {
            for lm in 0u32..(1 << l) - 1 {
                let remove: Vec<usize> = (0..k)
                    .filter(|a| um >> a & 1 == 1)
                    .map(|a| part.upper[a])
                    .chain((0..l).filter(|b| lm >> b & 1 == 1).map(|b| part.lower[b]))
                    .collect();
                let sub = ps.remove_points(&remove).unwrap();
                ensure!(validate_double_chain(&sub).unwrap().is_valid(), "C_{{{k},{l}}} minus {remove:?}");
                conditions_oracle(&sub, &Orient::new(&sub)).map_err(|e| format!("C_{{{k},{l}}} minus {remove:?}: {e}"))?;
                deletions += 1;
            }
        }
    }
    Ok(format!("{instances} double chains with k <= l <= 50 valid; {deletions} deletions stay double chains"))
}

/// Smallest `k` admitting a proper assignment among all `k^m`.
fn naive_chi(g: &BitGraph) -> usize {
    let m = g.vertex_count();
    let edges: Vec<_> = g.edges().collect();
    (1..=m.max(1))
        .find(|&k| {
            let mut labels = vec![0usize; m];
            loop {
                if edges.iter().all(|&(u, v)| labels[u] != labels[v]) {
                    return true;
                }
                let Some(i) = (0..m).find(|&i| labels[i] + 1 < k) else {
                    return false;
                };
                labels[i] += 1;
                labels[..i].fill(0);
            }
        })
        .map_or(0, |k| if m == 0 { 0 } else { k })
}

fn grid_configurations() -> Vec<PointSet> {
    let grid: Vec<Point> = (0..4).flat_map(|x| (0..4).map(move |y| Point::new(x, y))).collect();
    (0u32..1 << grid.len())
        .filter(|m| (4..=5).contains(&m.count_ones()))
        .filter_map(|m| {
            let pts = (0..grid.len()).filter(|&i| m >> i & 1 == 1).map(|i| grid[i]).collect();
            let ps = PointSet::new(pts, None).unwrap();
            is_general_position(&ps).then_some(ps)
        })
        .collect()
}

fn oracles(c: &mut Collected) -> Outcome {
    let mut graphs = BTreeSet::new();
    for ps in grid_configurations() {
        let g = build_graph(&ps).unwrap();
        if graphs.insert((g.vertex_count(), g.edges().collect::<Vec<_>>())) && is_convex_position(&ps) {
            c.convex.push((ps.clone(), chi(g.graph()).1));
        }
    }
    // Every induced subgraph of every distinct graph, deduplicated by edge list.
    let mut subgraphs = BTreeSet::new();
    let mut solved = 0;
    for (m, edges) in &graphs {
        let m = *m;
        let g = BitGraph::from_edges(m, edges.iter().copied()).unwrap();
        for keep in 1u32..1 << m {
            let vs: Vec<usize> = (0..m).filter(|&v| keep >> v & 1 == 1).collect();
            let h = g.induced(&vs);
            if !subgraphs.insert((vs.len(), h.edges().collect::<Vec<_>>())) {
                continue;
            }
            let (x, w) = chi(&h);
            let naive = naive_chi(&h);
            ensure!(x == naive, "exact {x} vs naive {naive} on {:?}", h.edges().collect::<Vec<_>>());
            ensure!(verify_coloring(&h, &w).unwrap().is_proper(), "witness not proper");
            solved += 1;
        }
    }

    let mut sets: Vec<PointSet> = (2..=9).map(|n| gen_convex(n).unwrap()).collect();
    sets.extend((1..=4).flat_map(|k| (k..=9 - k).map(move |l| gen_double_chain(k, l).unwrap())));
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for n in 2..=9 {
        sets.extend((0..20).map(|_| random_general_position(n, &mut rng).unwrap()));
    }
    let mut pairs = 0u64;
    for ps in &sets {
        let g = build_graph(ps).unwrap();
        for u in 0..g.vertex_count() {
            ensure!(!g.adjacent(u, u), "loop at {u}");
            for v in u + 1..g.vertex_count() {
                let want = segments_disjoint(g.segment(u), g.segment(v), ps).unwrap();
                ensure!(g.adjacent(u, v) == want && g.adjacent(v, u) == want, "{} / {}", g.segment(u), g.segment(v));
                pairs += 1;
            }
        }
    }
    Ok(format!(
        "{} graphs from 4-5 point sets, {solved} distinct induced subgraphs agree with brute force; {pairs} segment pairs on {} sets agree",
        graphs.len(),
        sets.len()
    ))
}

fn conjecture(_: &mut Collected) -> Outcome {
    let dir = tempfile::TempDir::new().map_err(|e| e.to_string())?;
    let archive = dir.path().join("archive");
    let mut summary = Vec::new();
    for n in 4..=8usize {
        let out = Command::new(env!("CARGO_BIN_EXE_dchain"))
            .args(["conjecture", "--n", &n.to_string(), "--trials", "200", "--seed", &(1000 + n).to_string()])
            .arg("--archive-dir")
            .arg(&archive)
            .output()
            .map_err(|e| e.to_string())?;
        let v: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| format!("n = {n}: {e}"))?;
        ensure!(
            out.status.code() == Some(0),
            "n = {n}: exit {:?}, {} counterexamples, archived {}",
            out.status.code(),
            v["counterexamples"],
            v["archived"]
        );
        ensure!(v["solved"] == 200, "n = {n}: only {} samples solved", v["solved"]);
        let f = f_of(n as u64).unwrap();
        ensure!(v["min_chi"].as_u64() >= Some(f), "n = {n}: min chi {} < f(n) = {f}", v["min_chi"]);
        summary.push(format!("n={n}: min {}", v["min_chi"]));
    }

    // The archive path for a violation, exercised with a planted sample.
    let planted = gen_convex(5).unwrap();
    let report = ScanReport {
        n: 5,
        mode: ScanMode::Random,
        seed: 1,
        trials: 1,
        f_n: 3,
        expected: None,
        solved: 1,
        min_chi: Some(2),
        max_chi: Some(2),
        counterexamples: vec![ScanSample { trial: 0, points: planted.clone(), chi: 2 }],
        mismatches: Vec::new(),
        indeterminate: 0,
        sampling_failures: 0,
    };
    let written = archive_scan_samples(&report, &dir.path().join("planted")).map_err(|e| e.to_string())?;
    ensure!(written.len() == 1, "planted counterexample not archived");
    let back = dchain::formats::read_points(std::fs::File::open(&written[0]).unwrap()).unwrap();
    ensure!(back == planted, "archived point set differs");
    ensure!(!report.confirmed(), "planted counterexample not flagged");
    Ok(format!("200 seeded sets each, no chi < f(n) ({})", summary.join(", ")))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("double-chain sweep", sweep),
        ("convex formula", convex),
        ("constructive coloring", construction),
        ("singleton classes", singletons),
        ("f increments", increments),
        ("star deletion", star_removal),
        ("thrackle edge bound", thrackle_bound),
        ("double-chain geometry", geometry),
        ("oracle equivalence", oracles),
        ("conjecture scan", conjecture),
    ];
    let mut collected = Collected::default();
    let mut failed = 0;
    for (i, (name, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(|| check(&mut collected)))
            .unwrap_or_else(|p| Err(format!("panicked: {}", panic_message(&p))));
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail} ({ms} ms)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why} ({ms} ms)", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn panic_message(p: &Box<dyn std::any::Any + Send>) -> String {
    p.downcast_ref::<String>()
        .cloned()
        .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
        .unwrap_or_default()
}
