//! Graph reachability, random attractor, and the classical iterative
//! algorithm for the almost-sure Büchi winning set.

use crate::error::{Error, Result};
use crate::mdp::{Mdp, VertexKind};

/// Outcome of one run of [`classical_buchi`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    /// The almost-sure winning set, sorted.
    pub winning: Vec<usize>,
    /// Number of reachability computations performed. When the removals
    /// empty the graph, the final reachability check over the empty graph
    /// still counts as an iteration.
    pub iterations: usize,
    /// One sorted removal set per continuing iteration (always nonempty);
    /// the final iteration removes nothing and records no entry.
    pub removals: Vec<Vec<usize>>,
    /// Adjacency entries touched across all reachability and attractor
    /// passes. Bounded by `iterations * edge_count`.
    pub work: u64,
}

fn check_vertices(ids: &[usize], n: usize, what: &str) -> Result<()> {
    for &v in ids {
        if v >= n {
            return Err(Error::input(format!(
                "{what} vertex {v} out of range (n = {n})"
            )));
        }
    }
    Ok(())
}

fn mask_of(ids: &[usize], n: usize) -> Vec<bool> {
    let mut mask = vec![false; n];
    for &v in ids {
        mask[v] = true;
    }
    mask
}

fn build_reverse(mdp: &Mdp) -> Vec<Vec<usize>> {
    let mut rev = vec![Vec::new(); mdp.n()];
    for v in 0..mdp.n() {
        for &w in mdp.successors(v) {
            rev[w].push(v);
        }
    }
    rev
}

/// All vertices of `alive` with a directed path inside `alive` to some
/// target, computed by backward breadth-first traversal. Targets themselves
/// are always included.
pub fn reverse_reachable(mdp: &Mdp, targets: &[usize], alive: &[usize]) -> Result<Vec<usize>> {
    let n = mdp.n();
    check_vertices(targets, n, "target")?;
    check_vertices(alive, n, "alive")?;
    let alive_mask = mask_of(alive, n);
    for &t in targets {
        if !alive_mask[t] {
            return Err(Error::input(format!("target vertex {t} is not alive")));
        }
    }
    let rev = build_reverse(mdp);
    let mut in_set = vec![false; n];
    let mut queue = Vec::new();
    for &t in targets {
        if !in_set[t] {
            in_set[t] = true;
            queue.push(t);
        }
    }
    let mut head = 0;
    while head < queue.len() {
        let v = queue[head];
        head += 1;
        for &u in &rev[v] {
            if alive_mask[u] && !in_set[u] {
                in_set[u] = true;
                queue.push(u);
            }
        }
    }
    queue.sort_unstable();
    Ok(queue)
}

/// Least set containing `seeds` and closed under adding random vertices with
/// an edge into the set and player-1 vertices with every (alive) successor
/// in the set. Edges are restricted to `alive`; a player-1 vertex whose
/// alive successor set is empty joins vacuously.
pub fn random_attractor(mdp: &Mdp, seeds: &[usize], alive: &[usize]) -> Result<Vec<usize>> {
    let n = mdp.n();
    check_vertices(seeds, n, "seed")?;
    check_vertices(alive, n, "alive")?;
    let alive_mask = mask_of(alive, n);
    for &s in seeds {
        if !alive_mask[s] {
            return Err(Error::input(format!("seed vertex {s} is not alive")));
        }
    }
    let rev = build_reverse(mdp);
    let mut pending: Vec<usize> = (0..n)
        .map(|v| mdp.successors(v).iter().filter(|&&w| alive_mask[w]).count())
        .collect();
    let mut in_x = vec![false; n];
    let mut queue = Vec::new();
    for &s in seeds {
        if !in_x[s] {
            in_x[s] = true;
            queue.push(s);
        }
    }
    for v in 0..n {
        if alive_mask[v] && !in_x[v] && mdp.kind(v) == VertexKind::Player1 && pending[v] == 0 {
            in_x[v] = true;
            queue.push(v);
        }
    }
    let mut head = 0;
    while head < queue.len() {
        let w = queue[head];
        head += 1;
        for &u in &rev[w] {
            if !alive_mask[u] || in_x[u] {
                continue;
            }
            match mdp.kind(u) {
                VertexKind::Random => {
                    in_x[u] = true;
                    queue.push(u);
                }
                VertexKind::Player1 => {
                    pending[u] -= 1;
                    if pending[u] == 0 {
                        in_x[u] = true;
                        queue.push(u);
                    }
                }
            }
        }
    }
    queue.sort_unstable();
    Ok(queue)
}

/// The classical algorithm: repeatedly compute the set `Z` of alive vertices
/// that can reach an alive Büchi vertex; if the complement `U` is empty,
/// output `Z`, otherwise delete the random attractor of `U` and continue.
pub fn classical_buchi(mdp: &Mdp) -> SolveResult {
    let n = mdp.n();
    let rev = build_reverse(mdp);

    let mut alive = vec![true; n];
    let mut alive_count = n;
    // Out-degree restricted to alive vertices, maintained incrementally:
    // each edge is decremented exactly once, when its head joins an
    // attractor.
    let mut alive_outdeg: Vec<usize> = (0..n).map(|v| mdp.successors(v).len()).collect();

    let mut in_z = vec![false; n];
    let mut in_x = vec![false; n];
    let mut z_queue: Vec<usize> = Vec::with_capacity(n);
    let mut x_queue: Vec<usize> = Vec::with_capacity(n);

    let mut work: u64 = 0;
    let mut iterations = 0usize;
    let mut removals: Vec<Vec<usize>> = Vec::new();

    loop {
        iterations += 1;

        // Z = reverse reachable set of the alive Büchi vertices.
        z_queue.clear();
        for v in 0..n {
            if alive[v] && mdp.is_buchi(v) {
                in_z[v] = true;
                z_queue.push(v);
            }
        }
        let mut head = 0;
        while head < z_queue.len() {
            let v = z_queue[head];
            head += 1;
            work += rev[v].len() as u64;
            for &u in &rev[v] {
                if alive[u] && !in_z[u] {
                    in_z[u] = true;
                    z_queue.push(u);
                }
            }
        }

        if z_queue.len() == alive_count {
            for &v in &z_queue {
                in_z[v] = false;
            }
            let mut winning: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
            winning.sort_unstable();
            return SolveResult {
                winning,
                iterations,
                removals,
                work,
            };
        }

        // Attractor of U = alive \ Z.
        x_queue.clear();
        for v in 0..n {
            if alive[v] && !in_z[v] {
                in_x[v] = true;
                x_queue.push(v);
            }
        }
        let mut head = 0;
        while head < x_queue.len() {
            let w = x_queue[head];
            head += 1;
            work += rev[w].len() as u64;
            for &u in &rev[w] {
                if !alive[u] {
                    continue;
                }
                match mdp.kind(u) {
                    VertexKind::Random => {
                        if !in_x[u] {
                            in_x[u] = true;
                            x_queue.push(u);
                        }
                    }
                    VertexKind::Player1 => {
                        alive_outdeg[u] -= 1;
                        if alive_outdeg[u] == 0 && !in_x[u] {
                            in_x[u] = true;
                            x_queue.push(u);
                        }
                    }
                }
            }
        }

        debug_assert!(!x_queue.is_empty());
        for &w in &x_queue {
            alive[w] = false;
            in_x[w] = false;
        }
        for &v in &z_queue {
            in_z[v] = false;
        }
        alive_count -= x_queue.len();
        let mut removed = x_queue.clone();
        removed.sort_unstable();
        removals.push(removed);
    }
}
