//! Deterministic synthetic graphs.

use hmls_core::{CostVector, Edge, Graph, GraphError};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random spanning arborescence rooted at a random vertex, plus
/// `m - (n - 1)` uniformly drawn extra arcs. Costs are uniform in
/// `[1, max_cost]`, no self-loops. Parallel arcs may occur.
pub fn generate_random_graph(
    n: usize,
    m: usize,
    q: usize,
    max_cost: u64,
    seed: u64,
) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::Inconsistent("cannot generate a graph with zero vertices".into()));
    }
    if max_cost == 0 {
        return Err(GraphError::Inconsistent("max_cost must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cost = |rng: &mut ChaCha8Rng| {
        let v: Vec<u64> = (0..q).map(|_| rng.gen_range(1..=max_cost)).collect();
        CostVector::from_slice(&v)
    };

    let mut order: Vec<u32> = (0..n as u32).collect();
    order.shuffle(&mut rng);
    let mut edges = Vec::with_capacity(m.max(n - 1));
    for i in 1..n {
        let parent = order[rng.gen_range(0..i)];
        let c = cost(&mut rng);
        edges.push(Edge { from: parent, to: order[i], cost: c });
    }
    if n > 1 {
        while edges.len() < m {
            let u = rng.gen_range(0..n as u32);
            let v = rng.gen_range(0..n as u32);
            if u != v {
                let c = cost(&mut rng);
                edges.push(Edge { from: u, to: v, cost: c });
            }
        }
    }
    Graph::new(n, q, edges)
}

/// Road-like network on a `width * height` lattice of junctions.
///
/// About 15% of lattice links are dropped (the lattice keeps a spanning
/// tree so the result stays strongly connected); every kept link becomes a
/// two-way road subdivided into a chain of 1 to 3 segments, giving the many
/// degree-2 vertices of real road graphs. Criterion 0 is length, criterion
/// 1 travel time = length * class factor, where every fifth row / column is
/// a fast road and the rest are slow: the criteria correlate but conflict
/// on detours over fast roads.
pub fn generate_grid(width: usize, height: usize, jitter: u64, seed: u64) -> Result<Graph, GraphError> {
    if width == 0 || height == 0 {
        return Err(GraphError::Inconsistent("grid dimensions must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let id = |x: usize, y: usize| (y * width + x) as u32;
    let mut links = Vec::new();
    for y in 0..height {
        for x in 0..width {
            if x + 1 < width {
                links.push((id(x, y), id(x + 1, y), y % 5 == 0));
            }
            if y + 1 < height {
                links.push((id(x, y), id(x, y + 1), x % 5 == 0));
            }
        }
    }
    links.shuffle(&mut rng);
    // union-find keeps a spanning tree, extra links survive with p = 0.8
    let mut parent: Vec<u32> = (0..(width * height) as u32).collect();
    fn find(p: &mut [u32], mut v: u32) -> u32 {
        while p[v as usize] != v {
            p[v as usize] = p[p[v as usize] as usize];
            v = p[v as usize];
        }
        v
    }
    let mut vertices = width * height;
    let mut edges = Vec::new();
    for (a, b, fast) in links {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb && rng.gen_bool(0.2) {
            continue;
        }
        parent[ra as usize] = rb;
        let segments = rng.gen_range(1..=3);
        let mut prev = a;
        for i in 0..segments {
            let next = if i + 1 == segments {
                b
            } else {
                vertices += 1;
                (vertices - 1) as u32
            };
            let len = 10 + rng.gen_range(0..=jitter);
            let time = if fast { len * 6 / 10 } else { len * 3 / 2 };
            for (u, v) in [(prev, next), (next, prev)] {
                edges.push(Edge { from: u, to: v, cost: CostVector::from_slice(&[len, time]) });
            }
            prev = next;
        }
    }
    Graph::new(vertices, 2, edges)
}
