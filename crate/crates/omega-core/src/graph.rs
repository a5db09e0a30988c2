//! Plain digraph helpers shared by the automaton code: strongly connected
//! components, reachability, and generalized Buchi emptiness with
//! deterministic lasso witnesses.

/// Tarjan's algorithm, iterative. Returns `(comp, members)` where `comp[v]`
/// is the component id of node `v` and `members[c]` lists the nodes of
/// component `c` in increasing order. Component ids come out in reverse
/// topological order: if c1 reaches c2 and c1 != c2 then comp id of c2 is
/// smaller.
pub(crate) fn sccs(adj: &[Vec<usize>]) -> (Vec<usize>, Vec<Vec<usize>>) {
    let n = adj.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut comp = vec![usize::MAX; n];
    let mut members: Vec<Vec<usize>> = Vec::new();
    let mut next = 0usize;

    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        while let Some(frame) = call.last_mut() {
            let v = frame.0;
            if frame.1 < adj[v].len() {
                let w = adj[v][frame.1];
                frame.1 += 1;
                if index[w] == usize::MAX {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(parent) = call.last() {
                    let p = parent.0;
                    low[p] = low[p].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut ms = Vec::new();
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        comp[w] = members.len();
                        ms.push(w);
                        if w == v {
                            break;
                        }
                    }
                    ms.sort_unstable();
                    members.push(ms);
                }
            }
        }
    }
    (comp, members)
}

pub(crate) fn reachable(adj: &[Vec<usize>], inits: &[usize]) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    let mut queue: Vec<usize> = Vec::new();
    for &i in inits {
        if !seen[i] {
            seen[i] = true;
            queue.push(i);
        }
    }
    while let Some(v) = queue.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                queue.push(w);
            }
        }
    }
    seen
}

pub(crate) fn reverse(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut rev = vec![Vec::new(); adj.len()];
    for (v, succs) in adj.iter().enumerate() {
        for &w in succs {
            rev[w].push(v);
        }
    }
    rev
}

/// An edge of a witness path: (source node, label, target node).
pub(crate) type Edge = (usize, usize, usize);

/// Searches a labeled graph for a lasso from `init` whose cycle meets every
/// set in `sets`. Returns `(stem, cycle)` edge lists with the cycle
/// non-empty, or `None` when no such lasso exists (generalized Buchi
/// emptiness). With `sets` empty any reachable cycle qualifies.
///
/// Deterministic: adjacency is sorted internally, the anchor component is
/// the qualifying one with the least member, and all path legs are shortest
/// with first-found tie-breaking over the sorted order.
pub(crate) fn gen_buchi_witness(
    adj: &[Vec<(usize, usize)>],
    init: usize,
    sets: &[Vec<bool>],
) -> Option<(Vec<Edge>, Vec<Edge>)> {
    let n = adj.len();
    let mut sorted: Vec<Vec<(usize, usize)>> = adj.to_vec();
    for row in &mut sorted {
        row.sort_unstable();
        row.dedup();
    }
    let plain: Vec<Vec<usize>> = sorted
        .iter()
        .map(|row| {
            let mut dsts: Vec<usize> = row.iter().map(|&(_, d)| d).collect();
            dsts.sort_unstable();
            dsts.dedup();
            dsts
        })
        .collect();

    let reach = reachable(&plain, &[init]);
    let (comp, members) = sccs(&plain);

    let mut best: Option<usize> = None;
    for (c, ms) in members.iter().enumerate() {
        let anchor = ms[0];
        if !reach[anchor] {
            continue;
        }
        let nontrivial = ms.len() > 1 || plain[anchor].contains(&anchor);
        if !nontrivial {
            continue;
        }
        if !sets
            .iter()
            .all(|set| ms.iter().any(|&v| set[v]))
        {
            continue;
        }
        match best {
            Some(b) if members[b][0] <= anchor => {}
            _ => best = Some(c),
        }
    }
    let c = best?;
    let anchor = members[c][0];
    let in_c: Vec<bool> = (0..n).map(|v| comp[v] == c).collect();

    let stem = bfs_path(&sorted, None, init, &single(n, anchor), false)
        .expect("anchor is reachable");

    // Cycle: visit each still-missing set in order, then return to anchor.
    let mut cycle: Vec<Edge> = Vec::new();
    let mut cur = anchor;
    for set in sets {
        // nodes on the cycle so far: anchor plus every edge target
        if set[anchor] || cycle.iter().any(|&(_, _, d)| set[d]) {
            continue;
        }
        let mut targets = vec![false; n];
        for &v in &members[c] {
            targets[v] = set[v];
        }
        let leg = bfs_path(&sorted, Some(&in_c), cur, &targets, false)
            .expect("component intersects every set");
        cur = leg.last().map(|&(_, _, d)| d).unwrap_or(cur);
        cycle.extend(leg);
    }
    if cur != anchor {
        let leg = bfs_path(&sorted, Some(&in_c), cur, &single(n, anchor), false)
            .expect("component is strongly connected");
        cycle.extend(leg);
    } else if cycle.is_empty() {
        let leg = bfs_path(&sorted, Some(&in_c), anchor, &single(n, anchor), true)
            .expect("component is nontrivial");
        cycle.extend(leg);
    }
    Some((stem, cycle))
}

fn single(n: usize, v: usize) -> Vec<bool> {
    let mut s = vec![false; n];
    s[v] = true;
    s
}

/// Shortest path from `from` to any node in `targets`, restricted to
/// `allowed` nodes when given. With `nonempty` the path must use at least
/// one edge (for closing a cycle at `from` itself). Returns edge list,
/// possibly empty when `from` is already a target.
fn bfs_path(
    adj: &[Vec<(usize, usize)>],
    allowed: Option<&[bool]>,
    from: usize,
    targets: &[bool],
    nonempty: bool,
) -> Option<Vec<Edge>> {
    let ok = |v: usize| allowed.map_or(true, |a| a[v]);
    if !nonempty && targets[from] {
        return Some(Vec::new());
    }
    let n = adj.len();
    let mut parent: Vec<Option<Edge>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut queue = std::collections::VecDeque::new();

    // Seed with the edges out of `from` so that a later return to `from`
    // itself is possible.
    for &(lab, dst) in &adj[from] {
        if !ok(dst) {
            continue;
        }
        if targets[dst] {
            return Some(vec![(from, lab, dst)]);
        }
        if !seen[dst] && dst != from {
            seen[dst] = true;
            parent[dst] = Some((from, lab, dst));
            queue.push_back(dst);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &(lab, dst) in &adj[v] {
            if !ok(dst) {
                continue;
            }
            if targets[dst] {
                let mut edges = vec![(v, lab, dst)];
                let mut cur = v;
                while cur != from {
                    let e = parent[cur].unwrap();
                    edges.push(e);
                    cur = e.0;
                }
                edges.reverse();
                return Some(edges);
            }
            if !seen[dst] && dst != from {
                seen[dst] = true;
                parent[dst] = Some((v, lab, dst));
                queue.push_back(dst);
            }
        }
    }
    None
}
