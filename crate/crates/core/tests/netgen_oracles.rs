mod common;

use std::collections::BTreeSet;

use common::*;
use spatialgen::geometry::segments_properly_intersect;
use spatialgen::graph::is_connected;
use spatialgen::netgen::*;
use spatialgen::{Node, Point, RngStream, SpatialNetwork, Window};

/// Strictly-inside circumcircle test in plain floating point.
fn in_circumcircle(a: Point, b: Point, c: Point, d: Point) -> bool {
    let (ax, ay) = (a.x - d.x, a.y - d.y);
    let (bx, by) = (b.x - d.x, b.y - d.y);
    let (cx, cy) = (c.x - d.x, c.y - d.y);
    let det = (ax * ax + ay * ay) * (bx * cy - cx * by) - (bx * bx + by * by) * (ax * cy - cx * ay)
        + (cx * cx + cy * cy) * (ax * by - bx * ay);
    let orient = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    det * orient.signum() > 1e-12
}

/// All triples whose circumcircle holds no other point.
fn brute_force_delaunay(pts: &[Point]) -> BTreeSet<[usize; 3]> {
    let n = pts.len();
    let mut out = BTreeSet::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let o = (pts[j].x - pts[i].x) * (pts[k].y - pts[i].y) - (pts[j].y - pts[i].y) * (pts[k].x - pts[i].x);
                if o.abs() < 1e-14 {
                    continue;
                }
                if (0..n).all(|m| m == i || m == j || m == k || !in_circumcircle(pts[i], pts[j], pts[k], pts[m])) {
                    out.insert([i, j, k]);
                }
            }
        }
    }
    out
}

fn no_proper_crossings(net: &SpatialNetwork) -> bool {
    let pos = net.positions();
    let segs: Vec<(usize, usize)> = (0..net.edge_count()).map(|k| net.endpoints(k)).collect();
    for (x, &(a, b)) in segs.iter().enumerate() {
        for &(c, d) in &segs[x + 1..] {
            if segments_properly_intersect(pos[a], pos[b], pos[c], pos[d]) {
                return false;
            }
        }
    }
    true
}

fn pair_set(pairs: &[(usize, usize)]) -> BTreeSet<(usize, usize)> {
    pairs.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect()
}

fn index_pairs(net: &SpatialNetwork) -> BTreeSet<(usize, usize)> {
    pair_set(&(0..net.edge_count()).map(|k| net.endpoints(k)).collect::<Vec<_>>())
}

#[test]
fn delaunay_matches_circumcircle_enumeration() {
    let mut rng = RngStream::new(21);
    for _ in 0..10 {
        let n = 4 + rng.below(47);
        let pts = random_points(n, &mut rng);
        let mut tris: BTreeSet<[usize; 3]> = BTreeSet::new();
        for t in delaunay_triangles(&pts).unwrap() {
            let mut t = t;
            t.sort();
            tris.insert(t);
        }
        let mut violations = 0;
        for t in &tris {
            for (m, &p) in pts.iter().enumerate() {
                if !t.contains(&m) && in_circumcircle(pts[t[0]], pts[t[1]], pts[t[2]], p) {
                    violations += 1;
                }
            }
        }
        assert_eq!(violations, 0);
        assert_eq!(tris, brute_force_delaunay(&pts));
        let edges = delaunay(&pts).unwrap();
        assert!(edges.len() <= 3 * n - 6);
    }
}

#[test]
fn delaunay_small_cases() {
    let tri = [Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(0.0, 1.0)];
    assert_eq!(delaunay(&tri).unwrap().len(), 3);
    let square = [Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(1.0, 1.0), Point::new(0.0, 1.0)];
    assert_eq!(delaunay(&square).unwrap().len(), 5);
    let line = [Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(2.0, 0.0)];
    assert!(delaunay(&line).unwrap_err().to_string().starts_with("degenerate point set"));
    assert!(delaunay(&tri[..2]).is_err());
    let dup = [Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(0.0, 1.0), Point::new(1.0, 0.0)];
    assert!(delaunay(&dup).is_err());
}

#[test]
fn tree_network_matches_kruskal_oracle() {
    let mut rng = RngStream::new(22);
    for _ in 0..5 {
        let net = generate_tree_network(30, &Window::unit(), &mut rng).unwrap();
        let pts = net.positions();
        let mut all = Vec::new();
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                all.push((i, j, pts[i].distance(pts[j])));
            }
        }
        let (w, count) = kruskal_weight(pts.len(), all);
        assert_eq!(net.edge_count(), 29);
        assert_eq!(count, 29);
        assert!((net.total_length() - w).abs() < 1e-9);
        assert!(is_connected(&net));
    }
}

#[test]
fn tree_small_cases() {
    let one = generate_tree_network(1, &Window::unit(), &mut RngStream::new(0)).unwrap();
    assert_eq!(one.edge_count(), 0);
    let line = tree_network_from_positions(&[Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(2.0, 0.0)]).unwrap();
    assert_eq!(index_pairs(&line), BTreeSet::from([(0, 1), (1, 2)]));
    assert!((line.total_length() - 2.0).abs() < 1e-15);
}

#[test]
fn random_planar_between_mst_and_delaunay() {
    let mut rng = RngStream::new(23);
    let pts = random_points(40, &mut rng);
    let del = pair_set(&delaunay(&pts).unwrap());
    let mst = pair_set(&euclidean_mst(&pts));
    let half = random_planar_from_positions(&pts, 0.5, &mut rng).unwrap();
    let edges = index_pairs(&half);
    assert!(mst.is_subset(&edges) && edges.is_subset(&del));
    assert!(is_connected(&half));
    assert!(no_proper_crossings(&half));
    assert_eq!(index_pairs(&random_planar_from_positions(&pts, 1.0, &mut rng).unwrap()), del);
    assert_eq!(index_pairs(&random_planar_from_positions(&pts, 0.0, &mut rng).unwrap()), mst);
}

fn weighted_nodes(n: usize, rng: &mut RngStream) -> Vec<Node> {
    (0..n).map(|i| Node::weighted(i as i64, rng.uniform(), rng.uniform(), rng.uniform_range(0.5, 2.0))).collect()
}

#[test]
fn gravity_adds_top_scores() {
    let mut rng = RngStream::new(24);
    let nodes = weighted_nodes(20, &mut rng);
    let pts: Vec<Point> = nodes.iter().map(Node::position).collect();
    let p = GravityParams { gamma: 1.0, interaction_range: 0.3, extra_edges: 5 };
    let (net, added) = gravity_network_with_trace(&nodes, &p).unwrap();
    let mst = pair_set(&euclidean_mst(&pts));
    let mut scored: Vec<(f64, (usize, usize))> = pair_set(&delaunay(&pts).unwrap())
        .difference(&mst)
        .map(|&(i, j)| {
            let d = pts[i].distance(pts[j]);
            ((nodes[i].weight * nodes[j].weight) * (-d / 0.3).exp() / d, (i, j))
        })
        .collect();
    scored.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    let expected: Vec<(usize, usize)> = scored[..5].iter().map(|s| s.1).collect();
    assert_eq!(pair_set(&added), pair_set(&expected));
    assert_eq!(net.edge_count(), 19 + 5);
    assert!(mst.is_subset(&index_pairs(&net)));
    assert!(no_proper_crossings(&net));
}

#[test]
fn gravity_extremes() {
    let mut rng = RngStream::new(25);
    let nodes = weighted_nodes(15, &mut rng);
    let pts: Vec<Point> = nodes.iter().map(Node::position).collect();
    let none = generate_gravity_network(&nodes, &GravityParams { gamma: 1.0, interaction_range: 1.0, extra_edges: 0 }).unwrap();
    assert_eq!(index_pairs(&none), pair_set(&euclidean_mst(&pts)));
    let all = generate_gravity_network(&nodes, &GravityParams { gamma: 1.0, interaction_range: 1.0, extra_edges: 1000 }).unwrap();
    assert_eq!(index_pairs(&all), pair_set(&delaunay(&pts).unwrap()));
}

#[test]
fn cost_benefit_greedy_replay() {
    let mut rng = RngStream::new(26);
    let nodes = weighted_nodes(20, &mut rng);
    let pts: Vec<Point> = nodes.iter().map(Node::position).collect();
    let (lambda, gamma) = (0.5, 1.0);
    let (net, trace) = cost_benefit_network_with_trace(&nodes, &CostBenefitParams { lambda, gamma }).unwrap();
    let mut pool: Vec<(usize, usize)> =
        pair_set(&delaunay(&pts).unwrap()).difference(&pair_set(&euclidean_mst(&pts))).copied().collect();
    let mut replay = Vec::new();
    loop {
        let mut best: Option<(f64, (usize, usize))> = None;
        for &(i, j) in &pool {
            let b = (nodes[i].weight * nodes[j].weight).powf(gamma) - lambda * pts[i].distance(pts[j]);
            if best.is_none_or(|(bb, e)| b > bb || (b == bb && (i, j) < e)) {
                best = Some((b, (i, j)));
            }
        }
        match best {
            Some((b, e)) if b > 0.0 => {
                replay.push(e);
                pool.retain(|&x| x != e);
            }
            _ => break,
        }
    }
    let trace: Vec<(usize, usize)> = trace.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    assert_eq!(trace, replay);
    assert!(!trace.is_empty());
    assert!(no_proper_crossings(&net));
}

#[test]
fn cost_benefit_extremes() {
    let mut rng = RngStream::new(27);
    let nodes: Vec<Node> = (0..12).map(|i| Node::new(i, rng.uniform(), rng.uniform())).collect();
    let pts: Vec<Point> = nodes.iter().map(Node::position).collect();
    let huge = generate_cost_benefit_network(&nodes, &CostBenefitParams { lambda: 1e12, gamma: 1.0 }).unwrap();
    assert_eq!(index_pairs(&huge), pair_set(&euclidean_mst(&pts)));
    let free = generate_cost_benefit_network(&nodes, &CostBenefitParams { lambda: 0.0, gamma: 1.0 }).unwrap();
    assert_eq!(index_pairs(&free), pair_set(&delaunay(&pts).unwrap()));
}

#[test]
fn city_system_contracts() {
    let w = Window::new(0.0, 0.0, 100.0, 100.0).unwrap();
    let base = CitySystemParams {
        n_cities: 5,
        largest_population: 100.0,
        zipf_exponent: 1.0,
        min_separation: 5.0,
        network_kind: CityNetworkKind::Complete,
    };
    let net = generate_city_system(&base, &w, &mut RngStream::new(1)).unwrap();
    let weights: Vec<f64> = net.nodes().iter().map(|n| n.weight).collect();
    let expected = [100.0, 50.0, 100.0 / 3.0, 25.0, 20.0];
    for (a, b) in weights.iter().zip(expected) {
        assert!((a - b).abs() < 1e-12);
    }
    let pts = net.positions();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            assert!(pts[i].distance(pts[j]) >= 5.0);
        }
    }
    let four = generate_city_system(&CitySystemParams { n_cities: 4, ..base.clone() }, &w, &mut RngStream::new(2)).unwrap();
    assert_eq!(four.edge_count(), 6);
    let tree = generate_city_system(
        &CitySystemParams { n_cities: 25, network_kind: CityNetworkKind::Tree, ..base.clone() },
        &w,
        &mut RngStream::new(3),
    )
    .unwrap();
    assert_eq!(tree.edge_count(), 24);
    assert!(is_connected(&tree));
    let gravity = generate_city_system(
        &CitySystemParams { n_cities: 25, network_kind: CityNetworkKind::Gravity, ..base.clone() },
        &w,
        &mut RngStream::new(3),
    )
    .unwrap();
    assert!(is_connected(&gravity) && no_proper_crossings(&gravity));
    let crowded = CitySystemParams { n_cities: 50, min_separation: 60.0, ..base };
    let err = generate_city_system(&crowded, &w, &mut RngStream::new(4)).unwrap_err();
    assert!(err.to_string().starts_with("cannot place cities"));
}

fn slime(terminals: Vec<i64>, iterations: usize) -> SlimeMouldParams {
    SlimeMouldParams {
        iterations,
        flow_amplification: 1.8,
        decay: 0.5,
        time_step: 0.1,
        input_flow: 2.0,
        keep_threshold: 0.05,
        terminals,
    }
}

#[test]
fn slime_single_edge_fixed_point() {
    let net = SpatialNetwork::from_positions(&[Point::new(0.0, 0.0), Point::new(1.0, 0.0)], None, &[(0, 1)]).unwrap();
    let p = slime(vec![0, 1], 2000);
    let mut sim = SlimeMould::new(&net, p.clone()).unwrap();
    let mut rng = RngStream::new(5);
    sim.run(&mut rng).unwrap();
    let d_star = (1.0 / p.decay) * p.input_flow.powf(p.flow_amplification) / (1.0 + p.input_flow.powf(p.flow_amplification));
    assert!((sim.conductivity()[0] - d_star).abs() < 1e-6);
    assert!((p.fixed_point(p.input_flow) - d_star).abs() < 1e-15);
}

#[test]
fn slime_series_and_parallel_conservation() {
    let pts = [Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(2.0, 0.0)];
    let series = SpatialNetwork::from_positions(&pts, None, &[(0, 1), (1, 2)]).unwrap();
    let sol = kirchhoff_flows(&series, &[1.0, 0.5], 0, 2, 3.0).unwrap();
    assert!((sol.flows[0] - 3.0).abs() < 1e-9 && (sol.flows[1] - 3.0).abs() < 1e-9);

    let diamond = SpatialNetwork::from_positions(
        &[Point::new(0.0, 0.0), Point::new(1.0, 1.0), Point::new(2.0, 0.0), Point::new(1.0, -1.0)],
        None,
        &[(0, 1), (1, 2), (0, 3), (3, 2)],
    )
    .unwrap();
    let mut sim = SlimeMould::new(&diamond, slime(vec![0, 2], 50)).unwrap();
    for _ in 0..50 {
        let sol = sim.step_with(0, 2).unwrap();
        // interior nodes 1 and 3: inflow equals outflow
        assert!((sol.flows[0] - sol.flows[1]).abs() <= 1e-9);
        assert!((sol.flows[2] - sol.flows[3]).abs() <= 1e-9);
        assert!((sol.flows[0] + sol.flows[2] - 2.0).abs() <= 1e-9);
        let d = sim.conductivity();
        assert!((d[0] - d[2]).abs() < 1e-12, "symmetry lost");
        assert!(d.iter().all(|&x| x > 0.0));
    }
}

#[test]
fn slime_outputs_connected() {
    let mut rng = RngStream::new(28);
    let sub = generate_random_planar(30, 1.0, &Window::unit(), &mut rng).unwrap();
    let p = SlimeMouldParams { keep_threshold: 0.3, ..slime(vec![0, 5, 10, 15, 20], 200) };
    let out = generate_slime_mould(&sub, &p, &mut rng).unwrap();
    assert!(is_connected(&out));
    assert!(index_pairs(&out).is_subset(&index_pairs(&sub)));
    let split = SpatialNetwork::from_positions(
        &[Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(5.0, 5.0), Point::new(6.0, 5.0)],
        None,
        &[(0, 1), (2, 3)],
    )
    .unwrap();
    let err = generate_slime_mould(&split, &slime(vec![0, 3], 5), &mut rng).unwrap_err();
    assert_eq!(err.to_string(), "substrate not connected");
}
