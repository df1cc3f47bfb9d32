//! Independent oracle for the almost-sure winning set: enumerate all pure
//! memoryless strategies and analyze the bottom strongly-connected
//! components of each induced chain.

use crate::error::{Error, Result};
use crate::mdp::{Mdp, VertexKind};

const STRATEGY_GUARD: u64 = 10_000_000;

/// Strongly-connected components with no outgoing edges, over the subgraph
/// induced by `alive`. Components are sorted internally and listed by their
/// smallest vertex.
pub fn bsccs(edges: &[Vec<usize>], alive: &[usize]) -> Vec<Vec<usize>> {
    let n = edges.len();
    let mut alive_mask = vec![false; n];
    for &v in alive {
        assert!(v < n, "alive vertex {v} out of range");
        alive_mask[v] = true;
    }
    let comps = tarjan_scc(|v| edges[v].iter().copied(), &alive_mask);
    let mut comp_of = vec![usize::MAX; n];
    for (ci, comp) in comps.iter().enumerate() {
        for &v in comp {
            comp_of[v] = ci;
        }
    }
    let mut out = Vec::new();
    'comp: for comp in &comps {
        for &v in comp {
            for &w in &edges[v] {
                if alive_mask[w] && comp_of[w] != comp_of[v] {
                    continue 'comp;
                }
            }
        }
        let mut c = comp.clone();
        c.sort_unstable();
        out.push(c);
    }
    out.sort();
    out
}

/// Iterative Tarjan over the vertices enabled in `alive_mask`. Successors
/// outside the mask are ignored.
fn tarjan_scc<F, I>(succ: F, alive_mask: &[bool]) -> Vec<Vec<usize>>
where
    F: Fn(usize) -> I,
    I: Iterator<Item = usize>,
{
    let n = alive_mask.len();
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut next_index = 0usize;
    let mut comps: Vec<Vec<usize>> = Vec::new();
    // DFS frames: (vertex, remaining successors, cursor).
    let mut frames: Vec<(usize, Vec<usize>, usize)> = Vec::new();

    let discover = |v: usize,
                    next_index: &mut usize,
                    index: &mut Vec<usize>,
                    low: &mut Vec<usize>,
                    stack: &mut Vec<usize>,
                    on_stack: &mut Vec<bool>|
     -> (usize, Vec<usize>, usize) {
        index[v] = *next_index;
        low[v] = *next_index;
        *next_index += 1;
        stack.push(v);
        on_stack[v] = true;
        let succs: Vec<usize> = succ(v).filter(|&w| alive_mask[w]).collect();
        (v, succs, 0)
    };

    for root in 0..n {
        if !alive_mask[root] || index[root] != UNSEEN {
            continue;
        }
        frames.push(discover(
            root,
            &mut next_index,
            &mut index,
            &mut low,
            &mut stack,
            &mut on_stack,
        ));
        while let Some(frame) = frames.last_mut() {
            let v = frame.0;
            if frame.2 < frame.1.len() {
                let w = frame.1[frame.2];
                frame.2 += 1;
                if index[w] == UNSEEN {
                    let new_frame = discover(
                        w,
                        &mut next_index,
                        &mut index,
                        &mut low,
                        &mut stack,
                        &mut on_stack,
                    );
                    frames.push(new_frame);
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                frames.pop();
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comps.push(comp);
                }
                if let Some(parent) = frames.last() {
                    let p = parent.0;
                    low[p] = low[p].min(low[v]);
                }
            }
        }
    }
    comps
}

/// Marks the vertices that lose under the fixed strategy `chosen` (player-1
/// vertex v moves to `chosen[v]`, random vertices keep all edges): a vertex
/// loses iff it can reach a bottom SCC of the induced chain that avoids the
/// Büchi set.
fn strategy_losers(mdp: &Mdp, chosen: &[usize], bad: &mut [bool]) {
    let n = mdp.n();
    let succs = |v: usize| -> &[usize] {
        match mdp.kind(v) {
            VertexKind::Player1 => std::slice::from_ref(&chosen[v]),
            VertexKind::Random => mdp.successors(v),
        }
    };
    let alive_mask = vec![true; n];
    let comps = tarjan_scc(|v| succs(v).iter().copied(), &alive_mask);
    let mut comp_of = vec![usize::MAX; n];
    for (ci, comp) in comps.iter().enumerate() {
        for &v in comp {
            comp_of[v] = ci;
        }
    }
    let mut bottom = vec![true; comps.len()];
    for v in 0..n {
        for &w in succs(v) {
            if comp_of[w] != comp_of[v] {
                bottom[comp_of[v]] = false;
            }
        }
    }
    // Seed with members of Büchi-free bottom SCCs, then pull in everything
    // that can reach them (backward closure by naive rounds; the chains here
    // are tiny).
    for v in 0..n {
        let c = comp_of[v];
        bad[v] = bottom[c] && !comps[c].iter().any(|&u| mdp.is_buchi(u));
    }
    let mut changed = true;
    while changed {
        changed = false;
        for v in 0..n {
            if !bad[v] && succs(v).iter().any(|&w| bad[w]) {
                bad[v] = true;
                changed = true;
            }
        }
    }
}

/// Almost-sure winning set by brute force: enumerate every pure memoryless
/// player-1 strategy in lexicographic order (by vertex id, then neighbor
/// rank); a vertex is winning iff some strategy wins from it.
///
/// Guarded: the product of player-1 out-degrees must not exceed 10^7.
pub fn oracle_almost_sure(mdp: &Mdp) -> Result<Vec<usize>> {
    let n = mdp.n();
    let p1: Vec<usize> = (0..n)
        .filter(|&v| mdp.kind(v) == VertexKind::Player1)
        .collect();
    let mut strategies: u64 = 1;
    for &v in &p1 {
        strategies = strategies.saturating_mul(mdp.successors(v).len() as u64);
        if strategies > STRATEGY_GUARD {
            return Err(Error::capacity(format!(
                "strategy enumeration exceeds {STRATEGY_GUARD}"
            )));
        }
    }

    let mut winning = vec![false; n];
    let mut choice = vec![0usize; n];
    let mut chosen: Vec<usize> = (0..n).map(|v| mdp.successors(v)[0]).collect();
    let mut bad = vec![false; n];

    loop {
        strategy_losers(mdp, &chosen, &mut bad);
        for v in 0..n {
            if !bad[v] {
                winning[v] = true;
            }
        }

        // Advance the strategy odometer (rightmost vertex fastest).
        let mut pos = p1.len();
        loop {
            if pos == 0 {
                return Ok((0..n).filter(|&v| winning[v]).collect());
            }
            pos -= 1;
            let v = p1[pos];
            if choice[v] + 1 < mdp.successors(v).len() {
                choice[v] += 1;
                chosen[v] = mdp.successors(v)[choice[v]];
                break;
            }
            choice[v] = 0;
            chosen[v] = mdp.successors(v)[0];
        }
    }
}
