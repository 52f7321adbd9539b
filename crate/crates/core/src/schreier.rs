//! Schreier graphs of finite index subgroups known through a membership
//! oracle.
//!
//! The graph is grown ball by ball from the base coset. The target of the
//! edge `(v, l)` is the existing coset `u` with `rep(v) l rep(u)^-1` in the
//! subgroup, or a new coset with representative `rep(v) l`. The first edge
//! reaching each coset is a tree edge, so representatives form a Schreier
//! transversal and the non-tree edges give subgroup generators.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::free_group::{FreeWord, Letter};

/// Letter names of the ambient group's generators, each with a formal inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleAlphabet {
    names: Vec<String>,
}

impl OracleAlphabet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::Parse("alphabet must be nonempty".into()));
        }
        let distinct: HashSet<&String> = names.iter().collect();
        if distinct.len() != names.len() {
            return Err(Error::Parse(format!("alphabet names must be distinct: {names:?}")));
        }
        Ok(Self { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn render(&self, w: &FreeWord) -> String {
        w.render(|g| self.names[g].clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchreierGraph {
    pub alphabet: OracleAlphabet,
    /// Representative word of each coset; vertex 0 is the subgroup itself.
    pub reps: Vec<FreeWord>,
    /// `next[v][l] = [target of l, target of l^-1]`.
    next: Vec<Vec<[usize; 2]>>,
    /// Positive edges `(source, letter)` in the spanning tree.
    tree: HashSet<(usize, usize)>,
}

pub const BASEPOINT: usize = 0;

/// Grows the Schreier graph breadth first, trying at each vertex the letters
/// in the order `l1, l1^-1, l2, l2^-1, ...`.
pub fn build_schreier<F>(alphabet: &OracleAlphabet, mut oracle: F, index_cap: usize) -> Result<SchreierGraph>
where
    F: FnMut(&FreeWord) -> bool,
{
    let n = alphabet.len();
    let mut reps = vec![FreeWord::empty()];
    let mut next: Vec<Vec<[Option<usize>; 2]>> = vec![vec![[None; 2]; n]];
    let mut tree = HashSet::new();
    if index_cap == 0 {
        return Err(Error::IndexCapExceeded { cap: 0 });
    }

    let mut v = 0;
    while v < reps.len() {
        for letter in 0..n {
            for side in 0..2 {
                if next[v][letter][side].is_some() {
                    continue;
                }
                let step = Letter::new(letter, side == 1);
                let candidate = reps[v].concat(&FreeWord::from_letters([step]));
                let found = (0..reps.len()).find(|&u| oracle(&candidate.concat(&reps[u].inverse())));
                let target = match found {
                    Some(u) => u,
                    None => {
                        if reps.len() >= index_cap {
                            return Err(Error::IndexCapExceeded { cap: index_cap });
                        }
                        reps.push(candidate);
                        next.push(vec![[None; 2]; n]);
                        let u = reps.len() - 1;
                        tree.insert(if side == 0 { (v, letter) } else { (u, letter) });
                        u
                    }
                };
                next[v][letter][side] = Some(target);
                let back = &mut next[target][letter][1 - side];
                assert!(
                    back.is_none_or(|b| b == v),
                    "membership oracle is not a subgroup: inconsistent {} edge",
                    alphabet.names[letter]
                );
                *back = Some(v);
            }
        }
        v += 1;
    }

    let next = next
        .into_iter()
        .map(|row| row.into_iter().map(|[a, b]| [a.expect("complete"), b.expect("complete")]).collect())
        .collect();
    Ok(SchreierGraph { alphabet: alphabet.clone(), reps, next, tree })
}

impl SchreierGraph {
    pub fn vertex_count(&self) -> usize {
        self.reps.len()
    }

    pub fn target(&self, v: usize, l: Letter) -> usize {
        self.next[v][l.gen][l.inv as usize]
    }

    pub fn is_tree_edge(&self, v: usize, letter: usize) -> bool {
        self.tree.contains(&(v, letter))
    }

    /// Positive edges `(source, letter, target)`, by source then letter.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        (0..self.vertex_count()).flat_map(move |v| (0..self.alphabet.len()).map(move |l| (v, l, self.next[v][l][0])))
    }

    /// Endpoint of the path labelled `w` from the base coset.
    pub fn coset_of(&self, w: &FreeWord) -> usize {
        w.letters().iter().fold(BASEPOINT, |v, &l| self.target(v, l))
    }

    /// One generator per non-tree edge `e`: tree path to its source, the edge
    /// label, tree path back from its target. Ordered by source vertex, then
    /// letter.
    pub fn subgroup_generators(&self) -> Vec<FreeWord> {
        self.edges()
            .filter(|&(v, l, _)| !self.is_tree_edge(v, l))
            .map(|(v, l, t)| self.reps[v].concat(&FreeWord::generator(l)).concat(&self.reps[t].inverse()))
            .collect()
    }

    fn vertex_label(&self, v: usize) -> String {
        if self.reps[v].is_empty() {
            "1".to_string()
        } else {
            self.alphabet.render(&self.reps[v])
        }
    }

    /// DOT text with representative words as labels and tree edges in bold.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph schreier {\n");
        for v in 0..self.vertex_count() {
            let shape = if v == BASEPOINT { ", shape=doublecircle" } else { "" };
            let _ = writeln!(out, "  {v} [label=\"{}\"{shape}];", self.vertex_label(v));
        }
        for (v, l, t) in self.edges() {
            let style = if self.is_tree_edge(v, l) { ", style=bold" } else { "" };
            let _ = writeln!(out, "  {v} -> {t} [label=\"{}\"{style}];", self.alphabet.names[l]);
        }
        out.push_str("}\n");
        out
    }
}
