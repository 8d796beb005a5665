//! Deterministic partition of a graph's vertices into equal-size cliques.
//!
//! Backtracking exact cover: the smallest uncovered vertex is the pivot and
//! must be covered by a clique drawn from its uncovered neighbours; cliques
//! are tried in lexicographic order.

const WORDS: usize = 4;

/// Largest number of vertices the search supports.
pub const MAX_VERTICES: usize = 64 * WORDS;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
struct Bits([u64; WORDS]);

impl Bits {
    fn full(n: usize) -> Self {
        let mut b = Bits::default();
        for i in 0..n {
            b.insert(i);
        }
        b
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn remove(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    fn and(self, other: Bits) -> Bits {
        let mut out = self;
        for (w, o) in out.0.iter_mut().zip(other.0) {
            *w &= o;
        }
        out
    }

    fn without(self, other: Bits) -> Bits {
        let mut out = self;
        for (w, o) in out.0.iter_mut().zip(other.0) {
            *w &= !o;
        }
        out
    }

    fn count(self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn first(self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| 64 * i + w.trailing_zeros() as usize)
    }

    fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self;
        std::iter::from_fn(move || {
            let i = rest.first()?;
            rest.remove(i);
            Some(i)
        })
    }
}

/// Outcome of [`clique_partition`]: either a full partition, or the
/// deepest partial partition met first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub classes: Vec<Vec<usize>>,
    pub complete: bool,
    pub nodes: u64,
}

struct Search<'a> {
    adjacency: &'a [Bits],
    size: usize,
    stack: Vec<Vec<usize>>,
    best: Vec<Vec<usize>>,
    nodes: u64,
}

impl Search<'_> {
    fn run(&mut self, uncovered: Bits) -> bool {
        self.nodes += 1;
        let Some(pivot) = uncovered.first() else {
            return true;
        };
        if self.stack.len() > self.best.len() {
            self.best = self.stack.clone();
        }
        let candidates = self.adjacency[pivot].and(uncovered);
        let mut clique = vec![pivot];
        self.extend(&mut clique, candidates, uncovered)
    }

    fn extend(&mut self, clique: &mut Vec<usize>, candidates: Bits, uncovered: Bits) -> bool {
        if clique.len() == self.size {
            let mut used = Bits::default();
            for &v in clique.iter() {
                used.insert(v);
            }
            self.stack.push(clique.clone());
            if self.run(uncovered.without(used)) {
                return true;
            }
            self.stack.pop();
            return false;
        }
        if candidates.count() + clique.len() < self.size {
            return false;
        }
        let mut rest = candidates;
        for v in candidates.iter() {
            rest.remove(v);
            clique.push(v);
            let next = rest.and(self.adjacency[v]);
            if self.extend(clique, next, uncovered) {
                return true;
            }
            clique.pop();
        }
        false
    }
}

/// Partitions vertices `0..n` into cliques of `size` under `adjacent`.
///
/// `adjacent` must be symmetric; it is never called on `(v, v)`.
pub fn clique_partition(n: usize, size: usize, adjacent: impl Fn(usize, usize) -> bool) -> SearchOutcome {
    assert!(n <= MAX_VERTICES, "at most {MAX_VERTICES} vertices");
    assert!(size >= 1, "cliques must be non-empty");
    let mut adjacency = vec![Bits::default(); n];
    for u in 0..n {
        for v in u + 1..n {
            if adjacent(u, v) {
                adjacency[u].insert(v);
                adjacency[v].insert(u);
            }
        }
    }
    let mut search = Search {
        adjacency: &adjacency,
        size,
        stack: Vec::new(),
        best: Vec::new(),
        nodes: 0,
    };
    let complete = search.run(Bits::full(n));
    let classes = if complete { search.stack } else { search.best };
    SearchOutcome {
        classes,
        complete,
        nodes: search.nodes,
    }
}

/// Largest number of pairwise disjoint cliques of `size`, by exhaustive
/// enumeration; meant for small graphs.
pub fn max_clique_packing(n: usize, size: usize, adjacent: impl Fn(usize, usize) -> bool) -> (usize, Vec<Vec<usize>>) {
    fn cliques(
        adjacent: &dyn Fn(usize, usize) -> bool,
        n: usize,
        size: usize,
        current: &mut Vec<usize>,
        start: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if current.len() == size {
            out.push(current.clone());
            return;
        }
        for v in start..n {
            if current.iter().all(|&u| adjacent(u, v)) {
                current.push(v);
                cliques(adjacent, n, size, current, v + 1, out);
                current.pop();
            }
        }
    }

    fn pack(all: &[Vec<usize>], from: usize, used: &mut Vec<bool>, count: usize) -> usize {
        let mut best = count;
        for i in from..all.len() {
            if all[i].iter().all(|&v| !used[v]) {
                all[i].iter().for_each(|&v| used[v] = true);
                best = best.max(pack(all, i + 1, used, count + 1));
                all[i].iter().for_each(|&v| used[v] = false);
            }
        }
        best
    }

    let mut all = Vec::new();
    cliques(&adjacent, n, size, &mut Vec::new(), 0, &mut all);
    let best = pack(&all, 0, &mut vec![false; n], 0);
    (best, all)
}
