//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Expected values are recomputed here from first principles
//! rather than taken from the library.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::process::ExitCode;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use portexplore::advice::{
    decode_size_bound, encode_hamiltonian_advice, encode_size_advice, encode_spanning_tree,
    BitString, OracleKind, SizeAdviceParams,
};
use portexplore::adversary::{
    build_ghat, build_ghat_z, build_gtilde, build_gx, build_gx_prime, build_hx,
    canonical_nontree_edges, decompose_blocks, gadget_indices, hamiltonian_path_tree,
    lower_bound_witness, make_non_repetitive, reconcatenate, solve_crossing_vector, CopyTag,
    CrossingVector,
};
use portexplore::explore::{
    certified_uxs, verify_uxs, CapPolicy, HamiltonianExplorer, InstanceTreeExplorer,
    MapTreeExplorer, PolyExplorer, UxsStore,
};
use portexplore::graph::{
    bipartite_hamiltonian_order, gen_complete_bipartite, gen_oriented_ring, gen_random_connected,
    validate_graph, NodeId, Port, PortGraph,
};
use portexplore::harness::{build_instance, find_advice_collision, pigeonhole_demo, Family, RingLadder};
use portexplore::sim::{run_strategy, RunOptions, Strategy};

type Check = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Check + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ceil_log2(n: usize) -> usize {
    let mut w = 0;
    while (1usize << w) < n {
        w += 1;
    }
    w
}

/// Node positions along a port walk, stopping at the first missing port.
fn replay(g: &PortGraph, start: NodeId, ports: &[Port]) -> Vec<NodeId> {
    let mut at = start;
    let mut out = vec![at];
    for &p in ports {
        match g.ports(at).get(p) {
            Some(&(next, _)) => at = next,
            None => break,
        }
        out.push(at);
    }
    out
}

fn distinct(nodes: &[NodeId]) -> usize {
    nodes.iter().collect::<HashSet<_>>().len()
}

fn traced_run<S: Strategy + ?Sized>(
    g: &PortGraph,
    start: NodeId,
    s: &mut S,
) -> Result<(usize, bool, Vec<NodeId>), String> {
    let out = run_strategy(g, start, s, RunOptions::traced()).map_err(|e| e.to_string())?;
    let ports: Vec<Port> = out
        .trace
        .as_ref()
        .expect("traced")
        .iter()
        .map(|t| t.out_port)
        .collect();
    Ok((out.steps_used, out.completed, replay(g, start, &ports)))
}

fn bfs_tree(g: &PortGraph, root: NodeId) -> Vec<(NodeId, NodeId)> {
    let mut seen = vec![false; g.node_count()];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    let mut tree = Vec::new();
    while let Some(u) = queue.pop_front() {
        for &(v, _) in g.ports(u) {
            if !seen[v] {
                seen[v] = true;
                tree.push((u, v));
                queue.push_back(v);
            }
        }
    }
    tree
}

fn is_hamiltonian_cycle(g: &PortGraph, cycle: &[NodeId]) -> bool {
    let n = g.node_count();
    cycle.len() == n
        && distinct(cycle) == n
        && (0..n).all(|i| n == 1 || g.is_adjacent(cycle[i], cycle[(i + 1) % n]))
}

struct Corpus {
    graphs: Vec<PortGraph>,
}

fn corpus() -> Corpus {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE);
    let graphs = (0..50)
        .map(|i| {
            let n = 8 * (1 + i % 32);
            let density = rng.gen_range(0.02..0.5);
            gen_random_connected(n, density, i as u64).expect("corpus graph")
        })
        .collect();
    Corpus { graphs }
}

fn sample_starts(n: usize, rng: &mut ChaCha8Rng) -> Vec<NodeId> {
    let mut all: Vec<NodeId> = (0..n).collect();
    all.shuffle(rng);
    all.truncate(10);
    all
}

fn criterion_1(c: &Corpus) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut runs = 0;
    for g in &c.graphs {
        let n = g.node_count();
        for start in sample_starts(n, &mut rng) {
            let advice = encode_spanning_tree(g, &bfs_tree(g, start), start, OracleKind::Instance)
                .map_err(|e| e.to_string())?
                .to_bits();
            let mut explorer = InstanceTreeExplorer::new(&advice).map_err(|e| e.to_string())?;
            let (steps, completed, walk) = traced_run(g, start, &mut explorer)?;
            ensure(steps == 2 * n - 2, || format!("n={n} start={start}: {steps} steps"))?;
            ensure(completed && distinct(&walk) == n, || {
                format!("n={n} start={start}: visited {} of {n}", distinct(&walk))
            })?;
            runs += 1;
        }
    }
    Ok(format!("{runs} runs, all exactly 2n-2 steps"))
}

fn criterion_2(c: &Corpus) -> Check {
    let mut runs = 0;
    let mut worst: f64 = 0.0;
    for g in c.graphs.iter().filter(|g| g.node_count() <= 64) {
        let n = g.node_count();
        let advice = encode_spanning_tree(g, &bfs_tree(g, 0), 0, OracleKind::Map)
            .map_err(|e| e.to_string())?
            .to_bits();
        for start in 0..n {
            let mut explorer = MapTreeExplorer::new(&advice).map_err(|e| e.to_string())?;
            let (steps, completed, walk) = traced_run(g, start, &mut explorer)?;
            let bound = 8 * n * (n - 1);
            ensure(steps <= bound, || format!("n={n} start={start}: {steps} > {bound}"))?;
            ensure(completed && distinct(&walk) == n, || {
                format!("n={n} start={start}: incomplete")
            })?;
            for tour in explorer.tour_log() {
                ensure(walk[tour.first_step] == start, || {
                    format!("n={n} start={start}: tour {} begins away from start", tour.hypothesis)
                })?;
                if tour.aborted {
                    ensure(walk[tour.end_step] == start, || {
                        format!("n={n} start={start}: not home after aborted tour {}", tour.hypothesis)
                    })?;
                }
            }
            worst = worst.max(steps as f64 / bound as f64);
            runs += 1;
        }
    }
    Ok(format!("{runs} runs, max steps/8n(n-1) = {worst:.3}"))
}

fn criterion_3(c: &Corpus) -> Check {
    let tree_bound = |n: usize| 32 + 2 * (n - 1) + 4 * (n - 1) * ceil_log2(n);
    let mut checked = 0;
    for g in &c.graphs {
        let n = g.node_count();
        for oracle in [OracleKind::Instance, OracleKind::Map] {
            let len = encode_spanning_tree(g, &bfs_tree(g, 0), 0, oracle)
                .map_err(|e| e.to_string())?
                .to_bits()
                .len();
            ensure(len <= tree_bound(n), || format!("tree advice n={n}: {len} bits"))?;
            checked += 1;
        }
    }
    let mut hams: Vec<(PortGraph, Vec<NodeId>)> = Vec::new();
    for k in 2..=8 {
        hams.push((
            gen_complete_bipartite(k).map_err(|e| e.to_string())?,
            bipartite_hamiltonian_order(k),
        ));
    }
    for n in 3..=40 {
        hams.push((gen_oriented_ring(n).map_err(|e| e.to_string())?, (0..n).collect()));
    }
    for (g, cycle) in &hams {
        let n = g.node_count();
        for start in [0, n / 2, n - 1] {
            let len = encode_hamiltonian_advice(g, cycle, start)
                .map_err(|e| e.to_string())?
                .to_bits()
                .len();
            let expected = 32 + (n - 1) * ceil_log2(n);
            ensure(len == expected, || format!("ham advice n={n}: {len} != {expected}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} advice strings within their sizes"))
}

fn criterion_4() -> Check {
    let ilog = |x: u64| x.ilog2() as u64;
    for c in 0..=2u32 {
        let params = SizeAdviceParams { c };
        let k = 1u64 << (1u64 << (c + 1));
        for n in 4..=(1u64 << 20) {
            let s = encode_size_advice(n, params).map_err(|e| e.to_string())?;
            let limit = ilog(ilog(ilog(n))).saturating_sub(u64::from(c));
            ensure(s.len() as u64 <= limit, || format!("n={n} c={c}: {} bits", s.len()))?;
            // pad with c+1 ones and read as binary
            let mut n1 = 0u64;
            for &b in s.bits().iter().chain(std::iter::repeat_n(&true, c as usize + 1)) {
                n1 = 2 * n1 + u64::from(b);
            }
            let bound = decode_size_bound(&s, params);
            ensure(bound.n1() == n1, || format!("n={n} c={c}: n1 {} != {n1}", bound.n1()))?;
            // N = 2^(2^(n1+1)) >= n  iff  2^(n1+1) >= ceil(log2 n)
            let log2_n_ceil = ceil_log2(n as usize) as u64;
            let log2_big_n = 1u64 << (n1 + 1);
            ensure(log2_big_n >= log2_n_ceil, || format!("n={n} c={c}: N < n"))?;
            // N <= n^k  iff  2^(n1+1) <= k log2 n
            ensure(log2_big_n as f64 <= k as f64 * (n as f64).log2(), || {
                format!("n={n} c={c}: N exceeds n^{k}")
            })?;
        }
    }
    Ok("n in 4..=2^20, c in 0..=2".into())
}

fn permutation(items: &[NodeId], mut index: usize) -> Vec<NodeId> {
    let mut pool = items.to_vec();
    let mut out = Vec::with_capacity(pool.len());
    while !pool.is_empty() {
        let f: usize = (1..pool.len()).product();
        out.push(pool.remove(index / f));
        index %= f;
    }
    out
}

/// Every connected port-numbered simple graph on `n` labeled nodes.
fn port_graphs(n: usize) -> Vec<PortGraph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut out = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        let mut nbrs = vec![Vec::new(); n];
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if mask & (1 << i) != 0 {
                nbrs[u].push(v);
                nbrs[v].push(u);
            }
        }
        let mut reach = vec![false; n];
        let mut stack = vec![0];
        reach[0] = true;
        while let Some(u) = stack.pop() {
            for &v in &nbrs[u] {
                if !reach[v] {
                    reach[v] = true;
                    stack.push(v);
                }
            }
        }
        if reach.contains(&false) {
            continue;
        }
        let radix: Vec<usize> = nbrs.iter().map(|l| (1..=l.len()).product()).collect();
        let total: usize = radix.iter().product();
        for code in 0..total {
            let mut rest = code;
            let order: Vec<Vec<NodeId>> = nbrs
                .iter()
                .zip(&radix)
                .map(|(l, &r)| {
                    let p = permutation(l, rest % r);
                    rest /= r;
                    p
                })
                .collect();
            let adjacency = (0..n)
                .map(|u| {
                    order[u]
                        .iter()
                        .map(|&v| (v, order[v].iter().position(|&w| w == u).unwrap()))
                        .collect()
                })
                .collect();
            out.push(PortGraph::from_adjacency(adjacency).expect("valid port graph"));
        }
    }
    out
}

fn uxs_covers(g: &PortGraph, start: NodeId, offsets: &[usize]) -> bool {
    let mut at = start;
    let mut entry = 0;
    let mut seen = vec![false; g.node_count()];
    seen[at] = true;
    for &x in offsets {
        let d = g.degree(at);
        if d == 0 {
            break;
        }
        let (next, back) = g.ports(at)[(entry + x) % d];
        at = next;
        entry = back;
        seen[at] = true;
    }
    !seen.contains(&false)
}

fn criterion_5() -> Check {
    let store = UxsStore::new(4);
    let cert = certified_uxs(4, &store).map_err(|e| e.to_string())?;
    let graphs: Vec<PortGraph> = (1..=4).flat_map(port_graphs).collect();
    ensure(cert.verified_graph_count == graphs.len() as u64, || {
        format!(
            "library verified {} graphs, enumeration here has {}",
            cert.verified_graph_count,
            graphs.len()
        )
    })?;
    ensure(verify_uxs(4, &cert.offsets).is_ok(), || "library verifier rejects".into())?;
    let mut runs = 0;
    for g in &graphs {
        let n = g.node_count();
        let advice = if n < 2 {
            BitString::new()
        } else {
            encode_size_advice(n as u64, SizeAdviceParams::default()).map_err(|e| e.to_string())?
        };
        for start in 0..n {
            ensure(uxs_covers(g, start, &cert.offsets), || {
                format!("offsets {:?} miss a node of {:?} from {start}", cert.offsets, g.edges())
            })?;
            let mut poly = PolyExplorer::new(
                &advice,
                SizeAdviceParams::default(),
                &store,
                CapPolicy::ClampToCap,
            )
            .map_err(|e| e.to_string())?;
            let (_, completed, walk) = traced_run(g, start, &mut poly)?;
            ensure(completed && distinct(&walk) == n, || {
                format!("poly_explore incomplete on {:?} from {start}", g.edges())
            })?;
            runs += 1;
        }
    }
    Ok(format!(
        "uxs(4) = {:?} over {} graphs, {runs} poly runs",
        cert.offsets,
        graphs.len()
    ))
}

fn ham_runs(g: &PortGraph, cycle: &[NodeId], starts: &[NodeId]) -> Result<usize, String> {
    let n = g.node_count();
    ensure(is_hamiltonian_cycle(g, cycle), || format!("n={n}: not a hamiltonian cycle"))?;
    for &start in starts {
        let advice = encode_hamiltonian_advice(g, cycle, start)
            .map_err(|e| e.to_string())?
            .to_bits();
        let mut explorer = HamiltonianExplorer::new(&advice).map_err(|e| e.to_string())?;
        let (steps, completed, walk) = traced_run(g, start, &mut explorer)?;
        ensure(steps == n - 1, || format!("n={n} start={start}: {steps} steps"))?;
        ensure(completed && distinct(&walk) == n, || {
            format!("n={n} start={start}: incomplete")
        })?;
    }
    Ok(starts.len())
}

fn criterion_6() -> Check {
    let mut runs = 0;
    for k in 2..=8 {
        let g = gen_complete_bipartite(k).map_err(|e| e.to_string())?;
        let all: Vec<NodeId> = (0..2 * k).collect();
        runs += ham_runs(&g, &bipartite_hamiltonian_order(k), &all)?;
    }
    for n in [8, 12, 16, 20, 24] {
        for seed in 0..4 {
            let inst = build_instance(&Family::GxPrime { n, x_seed: seed }).map_err(|e| e.to_string())?;
            let all: Vec<NodeId> = (0..n).collect();
            runs += ham_runs(&inst.graph, inst.hamiltonian_cycle.as_ref().unwrap(), &all)?;
        }
    }
    let inst = build_instance(&Family::Gtilde { m: 4 }).map_err(|e| e.to_string())?;
    ensure(inst.graph.node_count() == 108, || {
        format!("G~ for m=4 has {} nodes", inst.graph.node_count())
    })?;
    let all: Vec<NodeId> = (0..108).collect();
    runs += ham_runs(&inst.graph, inst.hamiltonian_cycle.as_ref().unwrap(), &all)?;
    Ok(format!("{runs} runs, all exactly n-1 steps"))
}

fn revalidate(g: &PortGraph, what: &str) -> Result<(), String> {
    validate_graph(&g.edges(), g.node_count())
        .map(|_| ())
        .map_err(|e| format!("{what}: {e}"))
}

fn random_x(s: usize, rng: &mut ChaCha8Rng) -> CrossingVector {
    loop {
        let x = CrossingVector((0..s).map(|_| rng.gen_bool(0.5)).collect());
        if !x.is_zero() {
            return x;
        }
    }
}

fn criterion_7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut built = 0;
    for m in [4, 6, 8] {
        let h = gen_complete_bipartite(m / 2).map_err(|e| e.to_string())?;
        let t = hamiltonian_path_tree(m);
        let s = h.edge_count() - (m - 1);
        ensure(s == m * m / 4 - m + 1, || format!("m={m}: s={s}"))?;
        ensure(canonical_nontree_edges(&h, &t).len() == s, || format!("m={m}: non-tree edges"))?;
        for _ in 0..3 {
            let xmap: Vec<CrossingVector> = (0..m).map(|_| random_x(s, &mut rng)).collect();
            let ghat = build_ghat(&h, &t, &xmap).map_err(|e| e.to_string())?;
            let n = ghat.graph.node_count();
            ensure(n == 2 * m * m + m, || format!("m={m}: |Ĝ| = {n}"))?;
            revalidate(&ghat.graph, "Ĝ")?;
            let gtilde = build_gtilde(&ghat.graph).map_err(|e| e.to_string())?;
            ensure(gtilde.node_count() == 3 * n, || format!("m={m}: |G~| = {}", gtilde.node_count()))?;
            revalidate(&gtilde, "G~")?;
            let hx = build_hx(&h, &t, &xmap[0]).map_err(|e| e.to_string())?;
            ensure(hx.graph.node_count() == 2 * m, || format!("m={m}: |H_x|"))?;
            revalidate(&hx.graph, "H_x")?;
            for p in [1, 2, 3, 5] {
                let z: Vec<usize> = (0..p).map(|_| rng.gen_range(0..m)).collect();
                let gz = build_ghat_z(&h, &t, &z, &xmap).map_err(|e| e.to_string())?;
                ensure(gz.graph.node_count() == 2 * m * p + p, || {
                    format!("m={m} p={p}: |Ĝ_Z| = {}", gz.graph.node_count())
                })?;
                revalidate(&gz.graph, "Ĝ_Z")?;
            }
            let x: Vec<Port> = (0..m).map(|_| rng.gen_range(0..m / 2)).collect();
            let gx = build_gx(&h, &x).map_err(|e| e.to_string())?;
            ensure(gx.node_count() == 2 * m, || format!("m={m}: |G_x|"))?;
            revalidate(&gx, "G_x")?;
            let gxp = build_gx_prime(&h, &x).map_err(|e| e.to_string())?;
            ensure(gxp.node_count() == 2 * m, || format!("m={m}: |G'_x|"))?;
            revalidate(&gxp, "G'_x")?;
            built += 1;
        }
    }
    Ok(format!("{built} family sets for m in {{4,6,8}}"))
}

fn random_walk(g: &PortGraph, start: NodeId, len: usize, rng: &mut ChaCha8Rng) -> Vec<Port> {
    let mut at = start;
    (0..len)
        .map(|_| {
            let p = rng.gen_range(0..g.degree(at));
            at = g.ports(at)[p].0;
            p
        })
        .collect()
}

fn criterion_8() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let h = gen_complete_bipartite(4).map_err(|e| e.to_string())?;
    let t = hamiltonian_path_tree(8);
    let s = 8 * 8 / 4 - 8 + 1;
    let mut solved = 0;
    while solved < 200 {
        let len = rng.gen_range(0..=60);
        let w = random_walk(&h, 0, len, &mut rng);
        let walk = replay(&h, 0, &w);
        let light: Vec<NodeId> = (0..8)
            .filter(|v| walk.iter().filter(|&u| u == v).count() <= s)
            .collect();
        let Some(&v) = light.choose(&mut rng) else {
            continue;
        };
        let (x, copy) = solve_crossing_vector(&w, v, &h, &t)
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("no vector for target {v} of {w:?}"))?;
        ensure(!x.is_zero(), || "zero crossing vector".into())?;
        let hx = build_hx(&h, &t, &x).map_err(|e| e.to_string())?;
        let start = hx.gadget_node(0, CopyTag::Prime, 0);
        let hidden = hx.gadget_node(0, copy, v);
        let walk = replay(&hx.graph, start, &w);
        ensure(walk.len() == w.len() + 1, || "W infeasible on H_x".into())?;
        ensure(!walk.contains(&hidden), || format!("copy {copy:?} of {v} visited by {w:?}"))?;
        solved += 1;
    }

    let h = gen_complete_bipartite(2).map_err(|e| e.to_string())?;
    let t = hamiltonian_path_tree(4);
    let s4 = 1;
    let limit = (s4 + 1) * 16;
    let base = build_ghat(&h, &t, &vec![CrossingVector::ones(s4); 4]).map_err(|e| e.to_string())?;
    let mut witnesses = 0;
    let mut from_blocks = 0;
    while witnesses < 50 {
        let len = rng.gen_range(1..limit);
        let u = random_walk(&base.graph, 0, len, &mut rng);
        let d = decompose_blocks(&u, 4).map_err(|e| e.to_string())?;
        let u = reconcatenate(&make_non_repetitive(&d, &gadget_indices(&d, 0)));
        ensure(u.len() < limit, || "rewrite grew U".into())?;
        let w = lower_bound_witness(&u, 4, &h, &t)
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("no witness for {u:?}"))?;
        let g = build_ghat(&h, &t, &w.xmap).map_err(|e| e.to_string())?;
        ensure(w.start < 4 && w.unvisited < g.graph.node_count(), || "witness out of range".into())?;
        let walk = replay(&g.graph, w.start, &u);
        ensure(!walk.contains(&w.unvisited), || {
            format!("{u:?} from y_{} reaches {}", w.start, w.unvisited)
        })?;
        from_blocks += usize::from(w.block.is_some());
        witnesses += 1;
    }
    Ok(format!(
        "{solved} crossing vectors and {witnesses} witnesses ({from_blocks} from blocks) verified"
    ))
}

fn criterion_9() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let m = 4;
    let h = gen_complete_bipartite(m / 2).map_err(|e| e.to_string())?;
    let t = hamiltonian_path_tree(m);
    let g = build_ghat(&h, &t, &vec![CrossingVector::ones(1); m]).map_err(|e| e.to_string())?.graph;
    // gadget of a node, from the layout: cycle 0..m, then 2m nodes per gadget
    let gadget_of = |v: NodeId| (v >= m).then(|| (v - m) / (2 * m));
    let entries = |walk: &[NodeId]| -> Vec<usize> {
        walk.windows(2)
            .filter(|w| w[0] < m && w[1] >= m)
            .map(|w| gadget_of(w[1]).unwrap())
            .collect()
    };
    for _ in 0..100 {
        let len = rng.gen_range(0..=200);
        let u = random_walk(&g, 0, len, &mut rng);
        let d = decompose_blocks(&u, m).map_err(|e| e.to_string())?;
        let rewritten = reconcatenate(&make_non_repetitive(&d, &gadget_indices(&d, 0)));
        ensure(rewritten.len() <= u.len(), || format!("{} > {}", rewritten.len(), u.len()))?;
        let walk = replay(&g, 0, &rewritten);
        ensure(walk.len() == rewritten.len() + 1, || "rewrite infeasible on Ĝ".into())?;
        let after = entries(&walk);
        ensure(distinct(&after) == after.len(), || format!("gadget re-entered: {after:?}"))?;
        let before: BTreeSet<usize> = entries(&replay(&g, 0, &u)).into_iter().collect();
        ensure(before == after.iter().copied().collect(), || "gadget set changed".into())?;
    }
    Ok("100 sequences".into())
}

fn criterion_10() -> Check {
    let report = pigeonhole_demo(2).map_err(|e| e.to_string())?;
    ensure(report.sizes.len() == 5 && distinct(&report.sizes) == 5, || {
        format!("sizes {:?}", report.sizes)
    })?;
    let (i, j) = report.pair.ok_or("no collision")?;
    let oracle = RingLadder::new(2);
    ensure(oracle.advice(report.sizes[i]) == oracle.advice(report.sizes[j]), || {
        "pair advice differs".into()
    })?;
    ensure(
        find_advice_collision(|&n| oracle.advice(n), &report.sizes) == Some((i, j)),
        || "collision search disagrees".into(),
    )?;
    let (small, large) = (report.sizes[i].min(report.sizes[j]), report.sizes[i].max(report.sizes[j]));
    // the walker goes clockwise; it covers the ring iff it takes at least n-1 steps
    let steps = report.larger.as_ref().ok_or("no replay")?.steps_used;
    ensure(steps + 1 >= small && steps + 1 < large, || {
        format!("{steps} steps do not separate {small} and {large}")
    })?;
    ensure(report.demonstrates_failure(), || "replay did not fail on the larger ring".into())?;
    Ok(format!("rings {small} and {large} share advice {}", report.advice.unwrap()))
}

fn main() -> ExitCode {
    let corpus = corpus();
    let criteria: Vec<Criterion> = vec![
        ("instance-oracle linear exploration", Box::new(|| criterion_1(&corpus))),
        ("map-oracle quadratic exploration", Box::new(|| criterion_2(&corpus))),
        ("advice sizes", Box::new(|| criterion_3(&corpus))),
        ("size-advice correctness", Box::new(criterion_4)),
        ("uxs certification", Box::new(criterion_5)),
        ("hamiltonian optimality", Box::new(criterion_6)),
        ("construction identities", Box::new(criterion_7)),
        ("adversary soundness", Box::new(criterion_8)),
        ("non-repetitive rewrite", Box::new(criterion_9)),
        ("pigeonhole demonstration", Box::new(criterion_10)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let clock = Instant::now();
        let result = check();
        let secs = clock.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{secs:.2}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{secs:.2}s]", i + 1);
            }
        }
    }
    if failed > 0 {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
