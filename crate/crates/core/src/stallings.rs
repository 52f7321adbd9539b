//! Stallings automata over `{p, q}` with relator capture.
//!
//! A flower automaton has one petal per generator word. Every edge carries a
//! value in the free group on the petal letters `x1, ..., xn`, maintained so
//! that for each closed path at the basepoint, substituting the generators
//! into the product of edge values gives the path label. The last edge of
//! petal `i` starts with value `xi` and every other edge with the empty word.
//!
//! An open folding merges two vertices. It first conjugates the values around
//! the vertex being removed so the two folded edges carry equal values.
//! A closed folding (both edges already parallel) drops one edge and emits the
//! relator `val(e1) val(e2)^-1`. Open foldings preserve rank and each closed
//! folding lowers it by one, so `n` generators of a rank `r` subgroup yield
//! exactly `n - r` relators, and these normally generate all relations.

use std::collections::VecDeque;
use std::fmt;

use crate::free_group::{FreeWord, Letter, P, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub src: usize,
    pub label: usize,
    pub dst: usize,
    /// Value over the petal letters.
    pub value: FreeWord,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StallingsAutomaton {
    pub vertex_count: usize,
    pub edges: Vec<Edge>,
    pub basepoint: usize,
    /// Number of petal letters `x1, ..., xn` the edge values range over.
    pub petal_count: usize,
    /// Petals whose word was empty. Each stands for the relator `xi`.
    pub degenerate_petals: Vec<usize>,
}

/// Which foldable pair is processed next.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum FoldOrder {
    /// Vertices in breadth-first order from the basepoint, label `p` before
    /// `q`, outgoing pairs before incoming, lowest edge ids first.
    #[default]
    BreadthFirst,
    /// Highest vertex id first, label `q` before `p`, incoming before
    /// outgoing, highest edge ids first. Only useful for confluence checks.
    Reversed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoldStep {
    pub label: usize,
    pub closed: bool,
    /// Values of the two folded edges, read away from their shared endpoint.
    pub values: (FreeWord, FreeWord),
    /// Relator emitted by a closed folding.
    pub relator: Option<FreeWord>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FoldingLog {
    pub steps: Vec<FoldStep>,
}

impl FoldingLog {
    pub fn closed_count(&self) -> usize {
        self.steps.iter().filter(|s| s.closed).count()
    }

    pub fn relators(&self) -> impl Iterator<Item = &FreeWord> {
        self.steps.iter().filter_map(|s| s.relator.as_ref())
    }
}

/// Flower automaton with one petal per word.
pub fn build_flower(words: &[FreeWord]) -> StallingsAutomaton {
    let mut edges = Vec::new();
    let mut vertex_count = 1;
    let mut degenerate = Vec::new();
    for (i, w) in words.iter().enumerate() {
        if w.is_empty() {
            degenerate.push(i);
            continue;
        }
        let n = w.len();
        let mut from = 0;
        for (k, l) in w.letters().iter().enumerate() {
            let to = if k + 1 == n {
                0
            } else {
                vertex_count += 1;
                vertex_count - 1
            };
            let step_value = if k + 1 == n { FreeWord::generator(i) } else { FreeWord::empty() };
            edges.push(if l.inv {
                Edge { src: to, label: l.gen, dst: from, value: step_value.inverse() }
            } else {
                Edge { src: from, label: l.gen, dst: to, value: step_value }
            });
            from = to;
        }
    }
    StallingsAutomaton { vertex_count, edges, basepoint: 0, petal_count: words.len(), degenerate_petals: degenerate }
}

pub fn fold(aut: &StallingsAutomaton) -> (StallingsAutomaton, FoldingLog) {
    fold_with_order(aut, FoldOrder::BreadthFirst)
}

pub fn fold_with_order(aut: &StallingsAutomaton, order: FoldOrder) -> (StallingsAutomaton, FoldingLog) {
    let mut edges: Vec<Option<Edge>> = aut.edges.iter().cloned().map(Some).collect();
    let base = aut.basepoint;
    let mut log = FoldingLog::default();

    while let Some(pair) = next_pair(&edges, aut.vertex_count, base, order) {
        let FoldPair { label, outgoing, first, second } = pair;
        let (mut h1, mut h2) = (half_edge(&edges, first, outgoing), half_edge(&edges, second, outgoing));
        let mut e2 = second;
        let values = (h1.value.clone(), h2.value.clone());

        if h1.far == h2.far {
            let relator = h1.value.concat(&h2.value.inverse()).cyclically_reduced();
            debug_assert!(!relator.is_empty(), "closed folding produced a trivial relator");
            edges[e2] = None;
            log.steps.push(FoldStep { label, closed: true, values, relator: Some(relator) });
            continue;
        }

        // the vertex removed must not be the basepoint
        if h2.far == base {
            std::mem::swap(&mut h1, &mut h2);
            e2 = first;
        }
        let z = h2.far;
        let c = h1.value.inverse().concat(&h2.value);
        if !c.is_empty() {
            let c_inv = c.inverse();
            for e in edges.iter_mut().flatten() {
                if e.src == z {
                    e.value = c.concat(&e.value);
                }
                if e.dst == z {
                    e.value = e.value.concat(&c_inv);
                }
            }
        }
        edges[e2] = None;
        for e in edges.iter_mut().flatten() {
            if e.src == z {
                e.src = h1.far;
            }
            if e.dst == z {
                e.dst = h1.far;
            }
        }
        log.steps.push(FoldStep { label, closed: false, values, relator: None });
    }

    (renumber(aut, edges), log)
}

struct FoldPair {
    label: usize,
    outgoing: bool,
    first: usize,
    second: usize,
}

struct HalfEdge {
    far: usize,
    value: FreeWord,
}

// Edge `id` read away from the shared endpoint: forwards for an outgoing
// pair, backwards for an incoming one.
fn half_edge(edges: &[Option<Edge>], id: usize, outgoing: bool) -> HalfEdge {
    let e = edges[id].as_ref().expect("live edge");
    if outgoing {
        HalfEdge { far: e.dst, value: e.value.clone() }
    } else {
        HalfEdge { far: e.src, value: e.value.inverse() }
    }
}

fn next_pair(edges: &[Option<Edge>], vertex_count: usize, base: usize, order: FoldOrder) -> Option<FoldPair> {
    let mut out_by: Vec<[Vec<usize>; 2]> = vec![[Vec::new(), Vec::new()]; vertex_count];
    let mut in_by: Vec<[Vec<usize>; 2]> = vec![[Vec::new(), Vec::new()]; vertex_count];
    for (id, e) in edges.iter().enumerate() {
        if let Some(e) = e {
            out_by[e.src][e.label].push(id);
            in_by[e.dst][e.label].push(id);
        }
    }
    match order {
        FoldOrder::BreadthFirst => {
            for v in bfs_order(edges, vertex_count, base) {
                for label in [P, Q] {
                    for (outgoing, group) in [(true, &out_by[v][label]), (false, &in_by[v][label])] {
                        if group.len() >= 2 {
                            return Some(FoldPair { label, outgoing, first: group[0], second: group[1] });
                        }
                    }
                }
            }
            None
        }
        FoldOrder::Reversed => {
            for v in (0..vertex_count).rev() {
                for label in [Q, P] {
                    for (outgoing, group) in [(false, &in_by[v][label]), (true, &out_by[v][label])] {
                        let n = group.len();
                        if n >= 2 {
                            return Some(FoldPair { label, outgoing, first: group[n - 1], second: group[n - 2] });
                        }
                    }
                }
            }
            None
        }
    }
}

fn bfs_order(edges: &[Option<Edge>], vertex_count: usize, base: usize) -> Vec<usize> {
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); vertex_count];
    for e in edges.iter().flatten() {
        adj[e.src].push(e.dst);
        adj[e.dst].push(e.src);
    }
    let mut seen = vec![false; vertex_count];
    let mut order = Vec::new();
    let mut queue = VecDeque::from([base]);
    seen[base] = true;
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &u in &adj[v] {
            if !seen[u] {
                seen[u] = true;
                queue.push_back(u);
            }
        }
    }
    order
}

// Drops merged vertices and numbers the rest in BFS order from the basepoint.
fn renumber(aut: &StallingsAutomaton, edges: Vec<Option<Edge>>) -> StallingsAutomaton {
    let order = bfs_order(&edges, aut.vertex_count, aut.basepoint);
    let mut new_id = vec![usize::MAX; aut.vertex_count];
    for (i, &v) in order.iter().enumerate() {
        new_id[v] = i;
    }
    let edges: Vec<Edge> = edges
        .into_iter()
        .flatten()
        .map(|e| Edge { src: new_id[e.src], label: e.label, dst: new_id[e.dst], value: e.value })
        .collect();
    StallingsAutomaton {
        vertex_count: order.len(),
        edges,
        basepoint: 0,
        petal_count: aut.petal_count,
        degenerate_petals: aut.degenerate_petals.clone(),
    }
}

impl StallingsAutomaton {
    /// `E - V + 1`, the rank of the subgroup once folded.
    pub fn rank(&self) -> usize {
        self.edges.len() + 1 - self.vertex_count
    }

    pub fn is_folded(&self) -> bool {
        let mut seen_out = std::collections::HashSet::new();
        let mut seen_in = std::collections::HashSet::new();
        self.edges.iter().all(|e| seen_out.insert((e.src, e.label)) && seen_in.insert((e.dst, e.label)))
    }

    /// Follows `w` from `v`; `None` if some letter cannot be read.
    pub fn read(&self, v: usize, w: &FreeWord) -> Option<usize> {
        w.letters().iter().try_fold(v, |at, l| {
            self.edges.iter().find_map(|e| match l.inv {
                false if e.src == at && e.label == l.gen => Some(e.dst),
                true if e.dst == at && e.label == l.gen => Some(e.src),
                _ => None,
            })
        })
    }

    /// Spanning tree by BFS from the basepoint: `(tree edge ids, path from
    /// basepoint to each vertex as {p,q} word, same path as edge-value word)`.
    fn spanning_tree(&self) -> (Vec<bool>, Vec<FreeWord>, Vec<FreeWord>) {
        let n = self.vertex_count;
        let mut in_tree = vec![false; self.edges.len()];
        let mut label_path = vec![FreeWord::empty(); n];
        let mut value_path = vec![FreeWord::empty(); n];
        let mut seen = vec![false; n];
        seen[self.basepoint] = true;
        let mut queue = VecDeque::from([self.basepoint]);
        while let Some(v) = queue.pop_front() {
            for (id, e) in self.edges.iter().enumerate() {
                let (next, letter, value) = if e.src == v && !seen[e.dst] {
                    (e.dst, Letter::pos(e.label), e.value.clone())
                } else if e.dst == v && !seen[e.src] {
                    (e.src, Letter::neg(e.label), e.value.inverse())
                } else {
                    continue;
                };
                seen[next] = true;
                in_tree[id] = true;
                label_path[next] = label_path[v].concat(&FreeWord::from_letters([letter]));
                value_path[next] = value_path[v].concat(&value);
                queue.push_back(next);
            }
        }
        (in_tree, label_path, value_path)
    }

    /// Free basis of the subgroup: one word per non-tree edge.
    pub fn basis(&self) -> Vec<FreeWord> {
        self.basis_with_values().into_iter().map(|(w, _)| w).collect()
    }

    /// Basis words paired with the corresponding words in the petal letters.
    pub fn basis_with_values(&self) -> Vec<(FreeWord, FreeWord)> {
        let (in_tree, label_path, value_path) = self.spanning_tree();
        self.edges
            .iter()
            .enumerate()
            .filter(|(id, _)| !in_tree[*id])
            .map(|(_, e)| {
                let word = label_path[e.src].concat(&FreeWord::generator(e.label)).concat(&label_path[e.dst].inverse());
                let value = value_path[e.src].concat(&e.value).concat(&value_path[e.dst].inverse());
                (word, value)
            })
            .collect()
    }
}

/// `w` labels a closed path at the basepoint of a folded automaton.
pub fn stallings_membership(aut: &StallingsAutomaton, w: &FreeWord) -> bool {
    aut.read(aut.basepoint, w) == Some(aut.basepoint)
}

/// Dump with one line per edge, `src --label--> dst`, basepoint marked `*`.
impl fmt::Display for StallingsAutomaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = |v: usize| if v == self.basepoint { format!("{v}*") } else { v.to_string() };
        let mut lines: Vec<(usize, usize, usize)> = self.edges.iter().map(|e| (e.src, e.label, e.dst)).collect();
        lines.sort();
        for (s, l, d) in lines {
            let label = if l == P { "p" } else { "q" };
            writeln!(f, "{} --{label}--> {}", name(s), name(d))?;
        }
        Ok(())
    }
}

/// Presentation of `<gens>` on the given generators.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct PresentationOnGenerators {
    pub generator_count: usize,
    pub rank: usize,
    #[serde(with = "crate::pipeline::serde_pq_list")]
    pub basis: Vec<FreeWord>,
    /// Words over `x1, ..., x(generator_count)`.
    #[serde(with = "crate::pipeline::serde_x_list")]
    pub relators: Vec<FreeWord>,
}

pub fn subgroup_presentation(gens: &[FreeWord]) -> PresentationOnGenerators {
    subgroup_presentation_with_order(gens, FoldOrder::BreadthFirst)
}

pub fn subgroup_presentation_with_order(gens: &[FreeWord], order: FoldOrder) -> PresentationOnGenerators {
    let flower = build_flower(gens);
    let (folded, log) = fold_with_order(&flower, order);
    let mut relators: Vec<FreeWord> = flower.degenerate_petals.iter().map(|&i| FreeWord::generator(i)).collect();
    relators.extend(log.relators().cloned());
    PresentationOnGenerators { generator_count: gens.len(), rank: folded.rank(), basis: folded.basis(), relators }
}
