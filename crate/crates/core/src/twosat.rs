//! A small 2-SAT engine whose variables read "vertex ∈ H".
//!
//! Satisfiability is decided on the implication graph with Tarjan's
//! strongly-connected-components algorithm. Variable `x` is set true iff the
//! component of `x` comes after the component of `¬x` in topological order,
//! which with Tarjan numbering (sinks first) means a smaller component index.

use std::fmt::{self, Write as _};

use crate::vertex_set::VertexSet;

/// `x ∈ H` when `positive`, `x ∉ H` otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit {
    pub var: usize,
    pub positive: bool,
}

impl Lit {
    pub fn pos(var: usize) -> Self {
        Self { var, positive: true }
    }

    pub fn neg(var: usize) -> Self {
        Self { var, positive: false }
    }

    pub fn negate(self) -> Self {
        Self { var: self.var, positive: !self.positive }
    }

    pub fn holds(self, assignment: &VertexSet) -> bool {
        assignment.contains(self.var) == self.positive
    }

    fn node(self) -> usize {
        2 * self.var + usize::from(self.positive)
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.positive { "" } else { "-" };
        write!(f, "{sign}{}", self.var + 1)
    }
}

/// Which constraint family produced a clause.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClauseOrigin {
    Triangle,
    Conv,
    Components,
    PathU3,
    PathV3,
    PathU4,
    PathV4,
    BorderU,
    BorderV,
    Sample,
    Free,
}

impl ClauseOrigin {
    /// The nine structural families, in a fixed order.
    pub const FAMILIES: [ClauseOrigin; 9] = [
        ClauseOrigin::Triangle,
        ClauseOrigin::Conv,
        ClauseOrigin::Components,
        ClauseOrigin::PathU3,
        ClauseOrigin::PathV3,
        ClauseOrigin::PathU4,
        ClauseOrigin::PathV4,
        ClauseOrigin::BorderU,
        ClauseOrigin::BorderV,
    ];

    pub fn label(self) -> &'static str {
        match self {
            ClauseOrigin::Triangle => "triangle",
            ClauseOrigin::Conv => "conv",
            ClauseOrigin::Components => "components",
            ClauseOrigin::PathU3 => "path-u3",
            ClauseOrigin::PathV3 => "path-v3",
            ClauseOrigin::PathU4 => "path-u4",
            ClauseOrigin::PathV4 => "path-v4",
            ClauseOrigin::BorderU => "border-u",
            ClauseOrigin::BorderV => "border-v",
            ClauseOrigin::Sample => "sample",
            ClauseOrigin::Free => "free",
        }
    }
}

/// A disjunction of two literals. Unit clauses repeat their literal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Clause {
    pub lits: [Lit; 2],
    pub origin: ClauseOrigin,
}

impl Clause {
    pub fn holds(&self, assignment: &VertexSet) -> bool {
        self.lits[0].holds(assignment) || self.lits[1].holds(assignment)
    }

    pub fn is_unit(&self) -> bool {
        self.lits[0] == self.lits[1]
    }
}

#[derive(Clone, Debug, Default)]
pub struct Formula2 {
    num_vars: usize,
    clauses: Vec<Clause>,
}

impl Formula2 {
    pub fn new(num_vars: usize) -> Self {
        Self { num_vars, clauses: Vec::new() }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn add(&mut self, a: Lit, b: Lit, origin: ClauseOrigin) {
        assert!(a.var < self.num_vars && b.var < self.num_vars, "literal out of range");
        self.clauses.push(Clause { lits: [a, b], origin });
    }

    pub fn add_unit(&mut self, a: Lit, origin: ClauseOrigin) {
        self.add(a, a, origin);
    }

    /// Adds `a ↔ b`.
    pub fn add_equiv(&mut self, a: usize, b: usize, origin: ClauseOrigin) {
        self.add(Lit::pos(a), Lit::neg(b), origin);
        self.add(Lit::neg(a), Lit::pos(b), origin);
    }

    pub fn extend_from(&mut self, other: &Formula2) {
        assert_eq!(self.num_vars, other.num_vars);
        self.clauses.extend_from_slice(&other.clauses);
    }

    /// Clauses of one origin.
    pub fn clauses_of(&self, origin: ClauseOrigin) -> impl Iterator<Item = &Clause> {
        self.clauses.iter().filter(move |c| c.origin == origin)
    }

    pub fn holds(&self, assignment: &VertexSet) -> bool {
        self.clauses.iter().all(|c| c.holds(assignment))
    }

    /// A satisfying assignment as the set of true variables, or `None`.
    pub fn solve(&self) -> Option<VertexSet> {
        let nodes = 2 * self.num_vars;
        let mut out_edges: Vec<Vec<usize>> = vec![Vec::new(); nodes];
        for c in &self.clauses {
            let [a, b] = c.lits;
            out_edges[a.negate().node()].push(b.node());
            out_edges[b.negate().node()].push(a.node());
        }
        let comp = tarjan(&out_edges);
        let mut assignment = VertexSet::empty(self.num_vars);
        for x in 0..self.num_vars {
            let (t, f) = (comp[Lit::pos(x).node()], comp[Lit::neg(x).node()]);
            if t == f {
                return None;
            }
            if t < f {
                assignment.insert(x);
            }
        }
        debug_assert!(self.holds(&assignment), "2-SAT assignment violates a clause");
        Some(assignment)
    }

    /// DIMACS CNF text, one comment line per clause naming its origin.
    pub fn to_dimacs(&self) -> String {
        let mut s = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            let [a, b] = c.lits;
            if c.is_unit() {
                let _ = writeln!(s, "c {}\n{a} 0", c.origin.label());
            } else {
                let _ = writeln!(s, "c {}\n{a} {b} 0", c.origin.label());
            }
        }
        s
    }
}

/// Iterative Tarjan; returns the component index of every node, numbered in
/// reverse topological order.
fn tarjan(out_edges: &[Vec<usize>]) -> Vec<usize> {
    const UNSEEN: usize = usize::MAX;
    let n = out_edges.len();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut comp = vec![UNSEEN; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut call: Vec<(usize, usize)> = Vec::new();
    let mut counter = 0;
    let mut n_comp = 0;

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        while let Some(&(v, next)) = call.last() {
            if next == 0 {
                index[v] = counter;
                low[v] = counter;
                counter += 1;
                stack.push(v);
                on_stack[v] = true;
            }
            if next < out_edges[v].len() {
                let w = out_edges[v][next];
                call.last_mut().unwrap().1 += 1;
                if index[w] == UNSEEN {
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().unwrap();
                    on_stack[w] = false;
                    comp[w] = n_comp;
                    if w == v {
                        break;
                    }
                }
                n_comp += 1;
            }
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
        }
    }
    comp
}
