//! Bitset branch-and-bound kernels for maximum independent sets.
//!
//! Both searches return the lexicographically smallest maximum set (compared
//! as ascending index sequences), so results never depend on branching order.

/// Maximum number of vertices a bitset search can address.
pub const MAX_BITSET_VERTICES: usize = 64;

#[inline]
fn bit(v: usize) -> u64 {
    1u64 << v
}

/// Bits strictly above `v`.
fn higher_than(v: usize) -> u64 {
    if v >= 63 {
        0
    } else {
        !(bit(v + 1) - 1)
    }
}

fn members(mut mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    while mask != 0 {
        out.push(mask.trailing_zeros() as usize);
        mask &= mask - 1;
    }
    out
}

/// Lowest-index-first greedy independent set in a conflict graph.
///
/// `conflicts[v]` is the bitmask of vertices adjacent to `v`.
pub fn greedy_independent_set(conflicts: &[u64]) -> Vec<usize> {
    members(greedy_mask(conflicts, full_mask(conflicts.len())))
}

fn full_mask(n: usize) -> u64 {
    assert!(n <= MAX_BITSET_VERTICES, "bitset search supports at most 64 vertices");
    if n == 64 {
        u64::MAX
    } else {
        bit(n) - 1
    }
}

fn greedy_mask(conflicts: &[u64], mut cand: u64) -> u64 {
    let mut chosen = 0;
    while cand != 0 {
        let v = cand.trailing_zeros() as usize;
        chosen |= bit(v);
        cand &= !bit(v) & !conflicts[v];
    }
    chosen
}

/// Upper bound on the independence number of `cand`: the size of a greedy
/// clique cover (an independent set meets each clique at most once).
fn clique_cover_bound(conflicts: &[u64], mut cand: u64) -> u32 {
    let mut cliques = 0;
    while cand != 0 {
        let v = cand.trailing_zeros() as usize;
        cand &= !bit(v);
        let mut common = cand & conflicts[v];
        while common != 0 {
            let u = common.trailing_zeros() as usize;
            cand &= !bit(u);
            common &= !bit(u) & conflicts[u];
        }
        cliques += 1;
    }
    cliques
}

/// Exact maximum independent set of a conflict graph on at most 64 vertices.
pub fn max_independent_set(conflicts: &[u64]) -> Vec<usize> {
    let all = full_mask(conflicts.len());
    // Lowest-index greedy is the lexicographically smallest set of its size,
    // so it is a valid incumbent that only a strictly larger set replaces.
    let seed = greedy_mask(conflicts, all);
    let mut best = (seed.count_ones(), seed);
    mis_dfs(conflicts, 0, all, &mut best);
    members(best.1)
}

fn mis_dfs(conflicts: &[u64], chosen: u64, cand: u64, best: &mut (u32, u64)) {
    if cand == 0 {
        if chosen.count_ones() > best.0 {
            *best = (chosen.count_ones(), chosen);
        }
        return;
    }
    if chosen.count_ones() + clique_cover_bound(conflicts, cand) <= best.0 {
        return;
    }
    let v = cand.trailing_zeros() as usize;
    mis_dfs(conflicts, chosen | bit(v), cand & !bit(v) & !conflicts[v], best);
    mis_dfs(conflicts, chosen, cand & !bit(v), best);
}

/// A 3-uniform hypergraph of "forbidden" triples on at most 64 vertices.
///
/// `pair(a, b)` holds every `c` such that `{a, b, c}` is forbidden.
#[derive(Debug, Clone)]
pub struct TripleHypergraph {
    n: usize,
    pair: Vec<u64>,
    edges: usize,
}

impl TripleHypergraph {
    /// Materializes the hypergraph by testing every unordered triple once.
    pub fn new(n: usize, mut forbidden: impl FnMut(usize, usize, usize) -> bool) -> Self {
        assert!(n <= MAX_BITSET_VERTICES, "bitset search supports at most 64 vertices");
        let mut pair = vec![0u64; n * n];
        let mut edges = 0;
        for a in 0..n {
            for b in (a + 1)..n {
                for c in (b + 1)..n {
                    if forbidden(a, b, c) {
                        edges += 1;
                        pair[a * n + b] |= bit(c);
                        pair[b * n + a] |= bit(c);
                        pair[a * n + c] |= bit(b);
                        pair[c * n + a] |= bit(b);
                        pair[b * n + c] |= bit(a);
                        pair[c * n + b] |= bit(a);
                    }
                }
            }
        }
        Self { n, pair, edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    #[inline]
    fn pair(&self, a: usize, b: usize) -> u64 {
        self.pair[a * self.n + b]
    }

    /// Candidates that stay admissible after adding `v` to `chosen`.
    fn restrict(&self, chosen: u64, cand: u64, v: usize) -> u64 {
        let mut blocked = bit(v);
        let mut s = chosen;
        while s != 0 {
            let a = s.trailing_zeros() as usize;
            s &= s - 1;
            blocked |= self.pair(a, v);
        }
        cand & !blocked
    }

    /// Lowest-index-first insertion; every prefix stays independent.
    pub fn greedy(&self) -> Vec<usize> {
        members(self.greedy_mask())
    }

    fn greedy_mask(&self) -> u64 {
        let mut chosen = 0u64;
        let mut cand = full_mask(self.n);
        while cand != 0 {
            let v = cand.trailing_zeros() as usize;
            cand = self.restrict(chosen, cand, v);
            chosen |= bit(v);
        }
        chosen
    }

    /// Vertex of `cand` lying in the most forbidden triples inside `pool`,
    /// lowest index on ties; `None` when `pool` spans no forbidden triple.
    fn branching_vertex(&self, cand: u64, pool: u64) -> Option<usize> {
        let mut best: Option<(u32, usize)> = None;
        let mut c = cand;
        while c != 0 {
            let v = c.trailing_zeros() as usize;
            c &= c - 1;
            let mut degree = 0;
            let mut others = pool & !bit(v);
            while others != 0 {
                let a = others.trailing_zeros() as usize;
                others &= others - 1;
                degree += (self.pair(a, v) & pool).count_ones();
            }
            if degree > 0 && best.is_none_or(|(d, _)| degree > d) {
                best = Some((degree, v));
            }
        }
        best.map(|(_, v)| v)
    }

    /// Size of the largest independent set containing `chosen` and drawn
    /// from `cand`, or `floor` if no such set is larger than `floor`.
    fn best_size(&self, chosen: u64, cand: u64, floor: u32) -> u32 {
        let size = chosen.count_ones();
        if size + cand.count_ones() <= floor {
            return floor;
        }
        let Some(v) = self.branching_vertex(cand, chosen | cand) else {
            return size + cand.count_ones();
        };
        let with_v = self.best_size(chosen | bit(v), self.restrict(chosen, cand, v), floor);
        self.best_size(chosen, cand & !bit(v), floor.max(with_v))
    }

    /// Exact maximum independent set, lexicographically smallest among maxima.
    pub fn maximum(&self) -> Vec<usize> {
        let all = full_mask(self.n);
        let seed = self.greedy_mask();
        let target = self.best_size(0, all, seed.count_ones());
        if target == seed.count_ones() {
            // Greedy already has maximum size, and it is the lex-smallest set
            // of that size.
            return members(seed);
        }
        let mut chosen = 0u64;
        let mut cand = all;
        while chosen.count_ones() < target {
            debug_assert!(cand != 0, "target size must be reachable");
            let v = cand.trailing_zeros() as usize;
            let next = self.restrict(chosen, cand, v);
            // Vertices below v that were skipped stay excluded.
            let above = next & higher_than(v);
            if self.best_size(chosen | bit(v), above, target - 1) >= target {
                chosen |= bit(v);
                cand = above;
            } else {
                cand &= !bit(v);
            }
        }
        members(chosen)
    }

    /// Whether no forbidden triple lies inside `set`.
    pub fn is_independent(&self, set: &[usize]) -> bool {
        let mask = set.iter().fold(0u64, |m, &v| m | bit(v));
        set.iter().enumerate().all(|(i, &a)| set[i + 1..].iter().all(|&b| self.pair(a, b) & mask == 0))
    }
}
