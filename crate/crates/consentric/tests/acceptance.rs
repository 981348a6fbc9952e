//! End-to-end checks of the toolkit's headline guarantees. Every test
//! prints one pass/fail summary line (visible with `--nocapture`) and
//! re-raises any failure so the harness still reports it.

use std::collections::{BTreeMap, VecDeque};
use std::panic::{catch_unwind, resume_unwind, UnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use consentric::centrality::{
    betweenness_centrality, cd_vector_all, closeness_centrality, d2cd_vector_all, dcd_vector_all,
    degree_centrality, eigenvector_centrality, CumulativeParams, PairCounting,
};
use consentric::compare::{convergence_profile, weights_for_scheme, ProfileOptions};
use consentric::consensus::{
    convergence_rate, directed_consensus_weights, metropolis_weights, max_degree_weights,
    run_consensus, run_scheduled_consensus, vicsek_weights, ActivationSchedule, Scheme,
    WeightMatrix,
};
use consentric::gas::{run_coordination, CoordinationOptions, GasNetwork};
use consentric::graph::{
    bucky, complete, cycle, erdos_renyi, load_edge_list, path, star, watts_strogatz, Graph,
};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(label: &str, body: impl FnOnce() + UnwindSafe) {
    let outcome = catch_unwind(body);
    println!("acceptance: {label}: {}", if outcome.is_ok() { "pass" } else { "FAIL" });
    if let Err(panic) = outcome {
        resume_unwind(panic);
    }
}

fn random_state(seed: u64, n: usize, span: f64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.gen_range(0.0..span)).collect()
}

fn is_bipartite(g: &Graph) -> bool {
    let mut color: Vec<Option<bool>> = vec![None; g.node_count()];
    for s in g.nodes() {
        if color[s].is_some() {
            continue;
        }
        color[s] = Some(false);
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            let cv = color[v].unwrap();
            for &u in g.neighbors(v).unwrap() {
                match color[u] {
                    None => {
                        color[u] = Some(!cv);
                        queue.push_back(u);
                    }
                    Some(cu) if cu == cv => return false,
                    Some(_) => {}
                }
            }
        }
    }
    true
}

#[test]
fn deep_walk_scores_track_eigenvector_centrality() {
    report("lazy walk scores land within 1% of eigenvector centrality", || {
        let start = Instant::now();
        let g = erdos_renyi(30, 0.15, 42).unwrap();
        assert!(g.is_connected(), "sample graph must be connected");
        assert!(!is_bipartite(&g), "sample graph must not be bipartite");

        let profile =
            convergence_profile(&g, "er:30:0.15:42", 200, &ProfileOptions::default()).unwrap();
        let first = profile.first_n_below[0].1.expect("error should dip under 0.01");
        assert!(first <= 200, "first depth under 0.01 was {first}");
        for n in first..=200 {
            let err = profile.error_at(n).unwrap();
            assert!(err < 0.01, "error climbed back to {err} at depth {n}");
        }
        assert!(start.elapsed() < Duration::from_secs(1), "took {:?}", start.elapsed());
    });
}

#[test]
fn regular_graph_centralities_are_uniform() {
    report("every score on the bucky ball is uniform", || {
        let g = bucky();
        let exactly_uniform = |scores: &[f64], what: &str| {
            assert!(
                scores.windows(2).all(|w| w[0].to_bits() == w[1].to_bits()),
                "{what} not exactly uniform: {:?}",
                &scores[..4]
            );
        };

        let eig = eigenvector_centrality(&g, 1e-12, 100_000).unwrap();
        let spread = eig.scores.iter().cloned().fold(f64::MIN, f64::max)
            - eig.scores.iter().cloned().fold(f64::MAX, f64::min);
        assert!(spread <= 1e-10, "eigenvector spread {spread}");

        exactly_uniform(&degree_centrality(&g).unwrap().scores, "degree");
        exactly_uniform(&closeness_centrality(&g, false).scores, "closeness");
        exactly_uniform(&closeness_centrality(&g, true).scores, "inverse closeness");
        exactly_uniform(&betweenness_centrality(&g, PairCounting::Unordered).scores, "betweenness");
        exactly_uniform(&betweenness_centrality(&g, PairCounting::Ordered).scores, "betweenness");

        for n in 1..=4 {
            let walk = cd_vector_all(&g, &CumulativeParams::walk(n)).unwrap();
            exactly_uniform(&walk.scores, "walk cumulative degree");
            let lazy = cd_vector_all(&g, &CumulativeParams::lazy_walk(n)).unwrap();
            exactly_uniform(&lazy.scores, "lazy walk cumulative degree");
        }
        for n in 1..=3 {
            let tree = cd_vector_all(&g, &CumulativeParams::tree(n)).unwrap();
            exactly_uniform(&tree.scores, "tree cumulative degree");
            let with_self =
                cd_vector_all(&g, &CumulativeParams::tree(n).with_include_self(true)).unwrap();
            exactly_uniform(&with_self.scores, "tree cumulative degree with self");
        }
        let full = dcd_vector_all(&g, &CumulativeParams::tree(1)).unwrap();
        exactly_uniform(&full.scores, "full-tree cumulative degree");
        let discounted = d2cd_vector_all(
            &g,
            &CumulativeParams::walk(3).with_discounts(vec![1.0, 0.5, 0.25]),
        )
        .unwrap();
        exactly_uniform(&discounted.scores, "discounted walk cumulative degree");
        let discounted_tree = d2cd_vector_all(
            &g,
            &CumulativeParams::tree(2).with_discounts(vec![1.0, 0.5]),
        )
        .unwrap();
        exactly_uniform(&discounted_tree.scores, "discounted tree cumulative degree");
    });
}

/// Breadth-first hop distances from `s`, written for this test alone so
/// the comparison does not lean on the library's traversal.
fn oracle_distances(g: &Graph, s: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.node_count()];
    dist[s] = Some(0);
    let mut queue = VecDeque::from([s]);
    while let Some(v) = queue.pop_front() {
        let dv = dist[v].unwrap();
        for &u in g.neighbors(v).unwrap() {
            if dist[u].is_none() {
                dist[u] = Some(dv + 1);
                queue.push_back(u);
            }
        }
    }
    dist
}

/// Every shortest path from `s` to `t` as an explicit node sequence,
/// found by walking the distance labels backwards from `t`.
fn all_shortest_paths(
    g: &Graph,
    s: usize,
    t: usize,
    dist: &[Option<usize>],
) -> Vec<Vec<usize>> {
    fn descend(
        g: &Graph,
        s: usize,
        dist: &[Option<usize>],
        stack: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let v = *stack.last().unwrap();
        if v == s {
            let mut p = stack.clone();
            p.reverse();
            out.push(p);
            return;
        }
        let dv = dist[v].unwrap();
        for &u in g.neighbors(v).unwrap() {
            if dist[u] == Some(dv - 1) {
                stack.push(u);
                descend(g, s, dist, stack, out);
                stack.pop();
            }
        }
    }
    let mut out = Vec::new();
    descend(g, s, dist, &mut vec![t], &mut out);
    out
}

/// Betweenness from literally enumerated shortest paths: every path of
/// a pair is listed as a full node sequence, interior visits are
/// counted, and each pair contributes its visit fraction. Sums run in
/// value order at both levels, the convention the library documents,
/// so agreement is expected down to the last bit.
fn enumerated_betweenness(g: &Graph) -> Vec<f64> {
    fn sorted_fold(mut terms: Vec<f64>) -> f64 {
        terms.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
        terms.iter().fold(0.0, |acc, x| acc + x)
    }

    let n = g.node_count();
    let mut columns: Vec<Vec<f64>> = vec![Vec::new(); n];
    for s in 0..n {
        let dist = oracle_distances(g, s);
        let mut fractions: Vec<Vec<f64>> = vec![Vec::new(); n];
        for t in 0..n {
            if t == s || dist[t].is_none() {
                continue;
            }
            let paths = all_shortest_paths(g, s, t, &dist);
            assert!(!paths.is_empty(), "reachable pair must have a path");
            let mut through = vec![0u64; n];
            for p in &paths {
                for &v in &p[1..p.len() - 1] {
                    through[v] += 1;
                }
            }
            for v in 0..n {
                if through[v] > 0 {
                    fractions[v].push(through[v] as f64 / paths.len() as f64);
                }
            }
        }
        for (v, terms) in fractions.into_iter().enumerate() {
            if v != s && dist[v].is_some() {
                columns[v].push(sorted_fold(terms));
            }
        }
    }
    columns.into_iter().map(|c| sorted_fold(c) / 2.0).collect()
}

#[test]
fn betweenness_matches_literal_path_enumeration() {
    report("betweenness equals brute-force path enumeration on 100 graphs", || {
        let start = Instant::now();
        for i in 0..100u64 {
            let n = 4 + (i % 5) as usize;
            let p = [0.35, 0.55, 0.75][(i % 3) as usize];
            let g = erdos_renyi(n, p, 1000 + i).unwrap();
            let got = betweenness_centrality(&g, PairCounting::Unordered);
            let want = enumerated_betweenness(&g);
            for (v, (a, b)) in got.scores.iter().zip(&want).enumerate() {
                assert!(
                    a.to_bits() == b.to_bits(),
                    "graph {i} node {v}: library {a:.17e} vs enumeration {b:.17e}"
                );
            }
        }
        assert!(start.elapsed() < Duration::from_secs(5), "took {:?}", start.elapsed());
    });
}

/// Counts walks of exactly `steps` edges from `v` by taking every step.
fn count_strict_walks(g: &Graph, v: usize, steps: usize) -> u64 {
    if steps == 0 {
        return 1;
    }
    let mut total = 0;
    for &u in g.neighbors(v).unwrap() {
        total += count_strict_walks(g, u, steps - 1);
    }
    total
}

/// Counts sequences of `lazy_steps` stay-or-move steps followed by one
/// real move, again by taking every branch.
fn count_lazy_walks(g: &Graph, v: usize, lazy_steps: usize) -> u64 {
    if lazy_steps == 0 {
        let mut total = 0;
        for _ in g.neighbors(v).unwrap() {
            total += 1;
        }
        return total;
    }
    let mut total = count_lazy_walks(g, v, lazy_steps - 1);
    for &u in g.neighbors(v).unwrap() {
        total += count_lazy_walks(g, u, lazy_steps - 1);
    }
    total
}

#[test]
fn walk_scores_match_literal_walk_enumeration() {
    report("walk cumulative degrees equal literal walk counts", || {
        let mut graphs: Vec<Graph> = Vec::new();
        for n in 2..=7 {
            for seed in 0..5 {
                graphs.push(erdos_renyi(n, 0.5, seed).unwrap());
            }
        }
        for n in 3..=7 {
            graphs.push(path(n));
            graphs.push(cycle(n));
            graphs.push(complete(n));
        }
        graphs.push(star(4));
        graphs.push(star(7));

        for g in &graphs {
            for depth in 1..=4 {
                let walk = cd_vector_all(g, &CumulativeParams::walk(depth)).unwrap();
                let lazy = cd_vector_all(g, &CumulativeParams::lazy_walk(depth)).unwrap();
                for m in g.nodes() {
                    let strict = count_strict_walks(g, m, depth + 1);
                    assert!(walk.scores[m].fract() == 0.0);
                    assert_eq!(walk.scores[m], strict as f64, "node {m} depth {depth}");
                    let lazy_count = count_lazy_walks(g, m, depth);
                    assert!(lazy.scores[m].fract() == 0.0);
                    assert_eq!(lazy.scores[m], lazy_count as f64, "lazy node {m} depth {depth}");
                }
            }
        }
    });
}

#[test]
fn doubly_stochastic_limits_hit_the_average() {
    report("metropolis and max-degree limits equal the initial average", || {
        for seed in [1, 3, 4, 5, 6] {
            let g = erdos_renyi(20, 0.25, seed).unwrap();
            assert!(g.is_connected(), "seed {seed} sample must be connected");
            let x0 = random_state(100 + seed, g.node_count(), 10.0);
            let mean = x0.iter().sum::<f64>() / x0.len() as f64;
            for w in [metropolis_weights(&g), max_degree_weights(&g)] {
                let trace = run_consensus(&w, &x0, 1e-10, 10_000).unwrap();
                assert!(trace.converged, "seed {seed} did not settle in 10^4 steps");
                let drift = (trace.limit() - mean).abs();
                assert!(drift <= 1e-8, "seed {seed} limit drifted {drift:.3e}");
            }
        }

        // A star's hub dominates the uneven neighbor counting, so the
        // limit lands on 0.4 instead of the plain average 0.25.
        let w = vicsek_weights(&star(4));
        let trace = run_consensus(&w, &[1.0, 0.0, 0.0, 0.0], 1e-9, 10_000).unwrap();
        assert!(trace.converged);
        assert!((trace.limit() - 0.25).abs() > 1e-3, "limit {:.6}", trace.limit());
        assert!((trace.limit() - 0.4).abs() < 1e-6, "limit {:.6}", trace.limit());
    });
}

fn corpus() -> Vec<(String, Graph)> {
    let mut graphs: Vec<(String, Graph)> = [
        ("path-2", path(2)),
        ("path-5", path(5)),
        ("path-8", path(8)),
        ("cycle-6", cycle(6)),
        ("cycle-9", cycle(9)),
        ("star-5", star(5)),
        ("star-8", star(8)),
        ("complete-3", complete(3)),
        ("complete-6", complete(6)),
        ("bucky", bucky()),
    ]
    .into_iter()
    .map(|(name, g)| (name.to_string(), g))
    .collect();
    for (n, p, seed) in [(10, 0.4, 1), (12, 0.4, 3), (20, 0.25, 7), (30, 0.15, 42)] {
        graphs.push((format!("er-{n}-{seed}"), erdos_renyi(n, p, seed).unwrap()));
    }
    for (n, k, beta, seed) in [(16, 4, 0.1, 5), (24, 4, 0.2, 3)] {
        graphs.push((format!("ws-{n}-{seed}"), watts_strogatz(n, k, beta, seed).unwrap()));
    }
    let sample = concat!(env!("CARGO_MANIFEST_DIR"), "/data/sample_sparse.txt");
    graphs.push(("ring-with-chords".to_string(), load_edge_list(sample).unwrap()));
    graphs
}

fn assert_stochastic_with_floor(w: &WeightMatrix, name: &str) {
    for i in 0..w.n() {
        let diag = w.diag(i);
        assert!(diag >= 0.05, "{name} row {i} self-weight {diag}");
        let sum: f64 = diag + w.row(i).iter().map(|&(_, v)| v).sum::<f64>();
        assert!((sum - 1.0).abs() <= 1e-12, "{name} row {i} sums to {sum}");
        assert!(w.row(i).iter().all(|&(_, v)| v >= 0.0), "{name} row {i} negative");
    }
}

#[test]
fn score_directed_weights_are_stochastic_and_contracting() {
    report("directed weights stay row-stochastic and never widen the spread", || {
        for (k, (name, g)) in corpus().into_iter().enumerate() {
            assert!(g.is_connected(), "{name} must be connected");
            let mut matrices = vec![weights_for_scheme(&g, Scheme::Directed).unwrap()];
            for depth in [1, 3] {
                let scores = cd_vector_all(&g, &CumulativeParams::walk(depth)).unwrap();
                matrices.push(directed_consensus_weights(&g, &scores).unwrap());
            }
            for w in &matrices {
                assert_stochastic_with_floor(w, &name);
                let x0 = random_state(300 + k as u64, g.node_count(), 1.0);
                let trace = run_consensus(w, &x0, 1e-12, 3_000).unwrap();
                for (step, pair) in trace.disagreements.windows(2).enumerate() {
                    assert!(
                        pair[1] <= pair[0],
                        "{name} step {step}: spread rose from {} to {}",
                        pair[0],
                        pair[1]
                    );
                }
            }
        }
    });
}

#[test]
fn unit_period_schedule_replays_synchronous_runs() {
    report("a unit-period schedule reproduces synchronous runs bit for bit", || {
        let cases: Vec<(Graph, Scheme)> = vec![
            (erdos_renyi(8, 0.4, 50).unwrap(), Scheme::Vicsek),
            (erdos_renyi(9, 0.4, 51).unwrap(), Scheme::Metropolis),
            (erdos_renyi(10, 0.4, 52).unwrap(), Scheme::MaxDegree),
            (erdos_renyi(12, 0.4, 54).unwrap(), Scheme::Directed),
            (erdos_renyi(13, 0.4, 55).unwrap(), Scheme::Vicsek),
            (erdos_renyi(14, 0.4, 56).unwrap(), Scheme::Metropolis),
            (watts_strogatz(10, 4, 0.2, 9).unwrap(), Scheme::MaxDegree),
            (watts_strogatz(12, 4, 0.2, 9).unwrap(), Scheme::Directed),
            (cycle(9), Scheme::Metropolis),
            (star(7), Scheme::Vicsek),
        ];
        for (k, (g, scheme)) in cases.into_iter().enumerate() {
            let w = weights_for_scheme(&g, scheme).unwrap();
            let x0 = random_state(200 + k as u64, g.node_count(), 1.0);
            let synchronous = run_consensus(&w, &x0, 1e-10, 2_000).unwrap();

            let mut periods = BTreeMap::new();
            for i in 0..w.n() {
                for &(j, _) in w.row(i) {
                    periods.insert((i, j), 1u64);
                }
            }
            let sched = ActivationSchedule { periods, horizon: 1 };
            let replay = run_scheduled_consensus(&w, &sched, &x0, 1e-10, 2_000).unwrap();
            assert_eq!(synchronous.states, replay.states, "case {k} states differ");
            assert_eq!(synchronous.disagreements, replay.disagreements, "case {k}");
            assert_eq!(synchronous.converged, replay.converged, "case {k}");
        }
    });
}

/// Second-largest eigenvalue modulus straight from a dense eigensolver:
/// drop the eigenvalue closest to 1, keep the largest remaining modulus.
/// Symmetric matrices go through the tridiagonal solver and the rest
/// through a bounded Schur iteration, because the unbounded QR can
/// stall forever on exactly tied spectra.
fn dense_slem(w: &WeightMatrix) -> f64 {
    let n = w.n();
    let dense = DMatrix::from_fn(n, n, |i, j| w.entry(i, j));
    let symmetric = (0..n).all(|i| (0..n).all(|j| dense[(i, j)] == dense[(j, i)]));
    let eigenvalues: Vec<nalgebra::Complex<f64>> = if symmetric {
        dense
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .map(|&x| nalgebra::Complex::new(x, 0.0))
            .collect()
    } else {
        nalgebra::Schur::try_new(dense, 1e-13, 100_000)
            .expect("QR iteration should settle on an asymmetric weight matrix")
            .complex_eigenvalues()
            .iter()
            .copied()
            .collect()
    };
    let mut moduli: Vec<(f64, f64)> =
        eigenvalues.iter().map(|z| ((z - 1.0).norm(), z.norm())).collect();
    let lead = moduli
        .iter()
        .enumerate()
        .min_by(|a, b| a.1 .0.partial_cmp(&b.1 .0).unwrap())
        .unwrap()
        .0;
    moduli.remove(lead);
    moduli.into_iter().map(|(_, m)| m).fold(0.0, f64::max)
}

#[test]
fn convergence_rate_matches_dense_eigensolver() {
    report("estimated convergence rates match a dense eigensolver", || {
        let graphs: Vec<(String, Graph)> = vec![
            ("path-3".into(), path(3)),
            ("path-7".into(), path(7)),
            ("cycle-4".into(), cycle(4)),
            ("cycle-9".into(), cycle(9)),
            ("star-5".into(), star(5)),
            ("star-12".into(), star(12)),
            ("complete-4".into(), complete(4)),
            ("complete-8".into(), complete(8)),
            ("er-8-2".into(), erdos_renyi(8, 0.5, 2).unwrap()),
            ("er-10-1".into(), erdos_renyi(10, 0.4, 1).unwrap()),
            ("er-12-3".into(), erdos_renyi(12, 0.4, 3).unwrap()),
            ("ws-12-9".into(), watts_strogatz(12, 4, 0.2, 9).unwrap()),
        ];
        for (name, g) in &graphs {
            assert!(g.is_connected(), "{name} must be connected");
            for scheme in Scheme::ALL {
                let w = weights_for_scheme(g, scheme).unwrap();
                let estimated = convergence_rate(&w).unwrap();
                let dense = dense_slem(&w);
                assert!(
                    (estimated - dense).abs() <= 1e-8,
                    "{name}/{}: estimated {estimated} vs dense {dense}",
                    scheme.name()
                );
            }
        }
    });
}

#[test]
fn pipeline_coordination_converges_and_recovers() {
    report("pipeline pressures coordinate, pin under huge beta, and recover", || {
        let start = Instant::now();
        let net = GasNetwork::bundled();
        let desired: Vec<f64> = net.desired_pressures().values().copied().collect();
        assert_eq!(desired, vec![650.0, 812.0, 750.0, 640.0, 695.0, 730.0]);

        let nominal = run_coordination(&net, &CoordinationOptions::default()).unwrap();
        assert!(nominal.trace.converged, "nominal run must converge");
        assert!(nominal.trace.final_disagreement() < 1e-6);
        for (&consumer, &pressure) in &nominal.achieved {
            assert!(
                (640.0..=812.0).contains(&pressure),
                "consumer {consumer} settled at {pressure} psi"
            );
        }

        // Hard anchoring drifts about a millionth of the demand gap per
        // step, so it is judged over the nominal horizon.
        let pinned = run_coordination(
            &net,
            &CoordinationOptions {
                beta: Some(1e6),
                max_iter: nominal.trace.iterations,
                ..CoordinationOptions::default()
            },
        )
        .unwrap();
        assert!(pinned.gap < 1.0, "gap {} psi under beta 1e6", pinned.gap);

        let broken = net.inject_fault(&"pipe:6-7=break".parse().unwrap()).unwrap();
        let refit = run_coordination(&broken, &CoordinationOptions::default()).unwrap();
        assert!(refit.trace.converged, "post-break run must converge");
        assert!(
            refit.trace.iterations <= 2 * nominal.trace.iterations,
            "recovery took {} steps vs nominal {}",
            refit.trace.iterations,
            nominal.trace.iterations
        );
        assert!(start.elapsed() < Duration::from_secs(2), "took {:?}", start.elapsed());
    });
}

fn snapshot(dir: &std::path::Path) -> BTreeMap<String, Vec<u8>> {
    let mut files = BTreeMap::new();
    for entry in std::fs::read_dir(dir).unwrap() {
        let entry = entry.unwrap();
        files.insert(
            entry.file_name().to_string_lossy().into_owned(),
            std::fs::read(entry.path()).unwrap(),
        );
    }
    files
}

#[test]
fn cli_runs_are_byte_reproducible() {
    report("every CLI command reproduces its outputs byte for byte", || {
        let bin = env!("CARGO_BIN_EXE_consentric");
        let cases: Vec<(&str, Vec<&str>)> = vec![
            (
                "centrality",
                vec!["centrality", "--gen", "er:12:0.3", "--seed", "4", "--measure", "cdn",
                     "--n", "3", "--format", "csv"],
            ),
            (
                "consensus",
                vec!["consensus", "--gen", "ws:10:4:0.2", "--seed", "9", "--scheme", "directed",
                     "--format", "json"],
            ),
            (
                "compare",
                vec!["compare", "--gen", "er:10:0.4", "--seed", "7", "--max-n", "40"],
            ),
            (
                "gas",
                vec!["gas", "--fault", "pipe:6-7=leak", "--seed", "11"],
            ),
        ];
        for (label, args) in cases {
            let dir = tempfile::tempdir().unwrap();
            let out = dir.path().join("result.dat");
            let mut full = args.clone();
            full.push("--out");
            let out_str = out.to_str().unwrap().to_string();
            full.push(&out_str);

            let first = Command::new(bin).args(&full).output().unwrap();
            assert!(first.status.success(), "{label} failed: {:?}", first);
            let files_first = snapshot(dir.path());
            assert!(!files_first.is_empty(), "{label} wrote nothing");

            for name in files_first.keys() {
                std::fs::remove_file(dir.path().join(name)).unwrap();
            }
            let second = Command::new(bin).args(&full).output().unwrap();
            assert!(second.status.success(), "{label} rerun failed");
            let files_second = snapshot(dir.path());

            assert_eq!(
                files_first.keys().collect::<Vec<_>>(),
                files_second.keys().collect::<Vec<_>>(),
                "{label} file sets differ"
            );
            for (name, bytes) in &files_first {
                assert_eq!(bytes, &files_second[name], "{label} file {name} differs");
            }
            assert_eq!(first.stdout, second.stdout, "{label} stdout differs");
        }
    });
}
