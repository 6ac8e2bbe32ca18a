//! Brute-force oracles shared by the integration suites.
//!
//! Everything here recomputes results from first principles — pair-set
//! algebra, explicit graph searches, full filters — independently of the
//! library's bitset and recursion paths, so the two sides can check each
//! other.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rand::Rng;

use posetlab::enumerations::{all_enumerations, Enumeration};
use posetlab::extensions::{EnumSet, OrderedPartition};
use posetlab::relations::{ElementSet, Poset, Preposet, Relation};

pub fn base(names: &[&str]) -> ElementSet {
    ElementSet::new(names.iter().copied()).unwrap()
}

pub fn base_n(n: usize) -> ElementSet {
    let letters = ["a", "b", "c", "d", "e", "f", "g", "h"];
    base(&letters[..n])
}

/// Pair set of a relation, in index form.
pub fn pair_set(r: &Relation) -> BTreeSet<(usize, usize)> {
    let b = r.base();
    let mut out = BTreeSet::new();
    for u in 0..b.n() {
        for v in 0..b.n() {
            if r.contains_ix(u, v) {
                out.insert((u, v));
            }
        }
    }
    out
}

/// Transitive closure by repeated relational squaring over plain pair sets.
pub fn closure_oracle(pairs: &BTreeSet<(usize, usize)>) -> BTreeSet<(usize, usize)> {
    let mut current = pairs.clone();
    loop {
        let mut next = current.clone();
        for &(a, b) in &current {
            for &(c, d) in &current {
                if b == c {
                    next.insert((a, d));
                }
            }
        }
        if next == current {
            return current;
        }
        current = next;
    }
}

/// Cycle detection by searching for a walk that revisits its start.
pub fn cyclic_oracle(n: usize, pairs: &BTreeSet<(usize, usize)>) -> bool {
    for start in 0..n {
        let mut reached = vec![false; n];
        let mut queue: VecDeque<usize> = pairs
            .iter()
            .filter(|&&(a, _)| a == start)
            .map(|&(_, b)| b)
            .collect();
        while let Some(v) = queue.pop_front() {
            if v == start {
                return true;
            }
            if !reached[v] {
                reached[v] = true;
                for &(a, b) in pairs {
                    if a == v {
                        queue.push_back(b);
                    }
                }
            }
        }
    }
    false
}

/// Linear extensions by filtering every enumeration against the raw pairs.
pub fn filter_extensions_oracle(r: &Relation) -> EnumSet {
    let pairs = pair_set(r);
    let members: Vec<Enumeration> = all_enumerations(r.base())
        .filter(|e| {
            pairs.iter().all(|&(u, v)| {
                e.position(r.base().name(u)).unwrap() <= e.position(r.base().name(v)).unwrap()
            })
        })
        .collect();
    EnumSet::new(r.base().clone(), members).unwrap()
}

/// All relations over the base: every subset of N × N. 2^(n²) items, so keep
/// n ≤ 3.
pub fn all_relations(b: &ElementSet) -> Vec<Relation> {
    let n = b.n();
    let cells: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (0..n).map(move |v| (u, v)))
        .collect();
    let mut out = Vec::with_capacity(1 << cells.len());
    for mask in 0u32..(1 << cells.len()) {
        let mut pairs = Vec::new();
        for (bit, &(u, v)) in cells.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                pairs.push((b.name(u), b.name(v)));
            }
        }
        out.push(Relation::from_pairs(b.clone(), pairs).unwrap());
    }
    out
}

fn off_diagonal_cells(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|u| (0..n).map(move |v| (u, v)))
        .filter(|&(u, v)| u != v)
        .collect()
}

/// All labeled posets over the base, found by brute force over every strict
/// relation. 2^(n²−n) candidates, so keep n ≤ 4.
pub fn all_posets(b: &ElementSet) -> Vec<Poset> {
    let cells = off_diagonal_cells(b.n());
    let mut out = Vec::new();
    for mask in 0u32..(1 << cells.len()) {
        let mut relation = Relation::diagonal(b.clone());
        for (bit, &(u, v)) in cells.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                relation = add_pair(relation, u, v);
            }
        }
        if let Ok(p) = relation.validate_poset() {
            out.push(p);
        }
    }
    out
}

/// All labeled preposets over the base, same brute force. Keep n ≤ 4.
pub fn all_preposets(b: &ElementSet) -> Vec<Preposet> {
    let cells = off_diagonal_cells(b.n());
    let mut out = Vec::new();
    for mask in 0u32..(1 << cells.len()) {
        let mut relation = Relation::diagonal(b.clone());
        for (bit, &(u, v)) in cells.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                relation = add_pair(relation, u, v);
            }
        }
        if let Ok(q) = relation.validate_preposet() {
            out.push(q);
        }
    }
    out
}

fn add_pair(r: Relation, u: usize, v: usize) -> Relation {
    let b = r.base().clone();
    let mut pairs: Vec<(String, String)> = r
        .pairs()
        .iter()
        .map(|(x, y)| (x.to_string(), y.to_string()))
        .collect();
    pairs.push((b.name(u).to_string(), b.name(v).to_string()));
    let named: Vec<(&str, &str)> = pairs.iter().map(|(x, y)| (x.as_str(), y.as_str())).collect();
    Relation::from_pairs(b, named).unwrap()
}

/// A seeded random poset: a random permutation orders the elements, each
/// consonant pair joins with the given density, and the result is closed.
pub fn random_poset<R: Rng>(b: &ElementSet, rng: &mut R, density: f64) -> Poset {
    let n = b.n();
    let mut shuffled: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        shuffled.swap(i, rng.gen_range(0..=i));
    }
    let mut strict = Relation::empty(b.clone());
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_bool(density) {
                strict = add_pair(strict, shuffled[i], shuffled[j]);
            }
        }
    }
    strict
        .transitive_closure()
        .with_diagonal()
        .validate_poset()
        .expect("closure of an order-consonant relation is a poset")
}

/// A seeded random preposet: a sparse random relation, closed reflexively and
/// transitively.
pub fn random_preposet<R: Rng>(b: &ElementSet, rng: &mut R, density: f64) -> Preposet {
    let n = b.n();
    let mut seed = Relation::empty(b.clone());
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(density) {
                seed = add_pair(seed, u, v);
            }
        }
    }
    Preposet::closure_of(&seed)
}

/// The explicit permutohedral graph, for BFS-side answers. n! nodes, so keep
/// n ≤ 5.
pub struct PermGraph {
    pub nodes: Vec<Enumeration>,
    pub index: BTreeMap<Enumeration, usize>,
    pub adj: Vec<Vec<usize>>,
}

impl PermGraph {
    pub fn new(b: &ElementSet) -> Self {
        let nodes: Vec<Enumeration> = all_enumerations(b).collect();
        let index: BTreeMap<Enumeration, usize> = nodes
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, e)| (e, i))
            .collect();
        let adj = nodes
            .iter()
            .map(|e| {
                (1..b.n())
                    .map(|i| index[&e.swap_at(i)])
                    .collect::<Vec<usize>>()
            })
            .collect();
        PermGraph { nodes, index, adj }
    }

    pub fn bfs(&self, from: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.nodes.len()];
        dist[from] = 0;
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn dist_matrix(&self) -> Vec<Vec<usize>> {
        (0..self.nodes.len()).map(|u| self.bfs(u)).collect()
    }

    /// One shortest path between two nodes, as node indices.
    pub fn shortest_path(&self, from: usize, to: usize) -> Vec<usize> {
        let dist = self.bfs(to);
        let mut path = vec![from];
        let mut current = from;
        while current != to {
            let next = self.adj[current]
                .iter()
                .copied()
                .find(|&v| dist[v] + 1 == dist[current])
                .expect("the graph is connected");
            path.push(next);
            current = next;
        }
        path
    }

    /// Geodetic convexity straight from the definition, using BFS distances.
    pub fn convex_oracle(&self, s: &EnumSet, dist: &[Vec<usize>]) -> bool {
        let members: Vec<usize> = s.iter().map(|e| self.index[e]).collect();
        for &a in &members {
            for &b in &members {
                for mid in 0..self.nodes.len() {
                    if dist[a][mid] + dist[mid][b] == dist[a][b] && !s.contains(&self.nodes[mid]) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// All ordered partitions of the base.
pub fn all_ordered_partitions(b: &ElementSet) -> Vec<OrderedPartition> {
    let names: Vec<&str> = b.names().collect();
    let mut out = Vec::new();
    let mut blocks: Vec<Vec<&str>> = Vec::new();
    distribute(b, &names, 0, &mut blocks, &mut out);
    out
}

fn distribute<'a>(
    b: &ElementSet,
    names: &[&'a str],
    next: usize,
    blocks: &mut Vec<Vec<&'a str>>,
    out: &mut Vec<OrderedPartition>,
) {
    if next == names.len() {
        if !blocks.is_empty() {
            out.push(OrderedPartition::new(b.clone(), blocks.clone()).unwrap());
        }
        return;
    }
    // the new element joins any existing block, or founds a singleton block
    // at any position — block order matters
    for i in 0..blocks.len() {
        blocks[i].push(names[next]);
        distribute(b, names, next + 1, blocks, out);
        blocks[i].pop();
    }
    for at in 0..=blocks.len() {
        blocks.insert(at, vec![names[next]]);
        distribute(b, names, next + 1, blocks, out);
        blocks.remove(at);
    }
}

/// Every subset of the enumerations of the base. 2^(n!) sets, so n ≤ 3 only.
pub fn all_enum_subsets(b: &ElementSet) -> Vec<EnumSet> {
    let nodes: Vec<Enumeration> = all_enumerations(b).collect();
    let mut out = Vec::with_capacity(1 << nodes.len());
    for mask in 0u32..(1 << nodes.len()) {
        let members = nodes
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, e)| e.clone());
        out.push(EnumSet::new(b.clone(), members).unwrap());
    }
    out
}

/// The running six-element example poset.
pub fn example_poset() -> Poset {
    posetlab::convexity::example_dim3()
}
