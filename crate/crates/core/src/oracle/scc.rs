//! Strongly connected components and small path searches on explicit graphs.

use std::collections::VecDeque;

/// Tarjan's algorithm restricted to the nodes with `active[v]`, iterative.
/// Returns the component index of every node (`usize::MAX` for inactive
/// nodes) and the components in reverse topological order.
pub fn tarjan(adj: &[Vec<usize>], active: &[bool]) -> (Vec<usize>, Vec<Vec<usize>>) {
    let n = adj.len();
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comp_of = vec![UNSEEN; n];
    let mut comps = Vec::new();
    let mut counter = 0;
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if !active[root] || index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(top) = call.last_mut() {
            let v = top.0;
            if top.1 < adj[v].len() {
                let w = adj[v][top.1];
                top.1 += 1;
                if !active[w] {
                    continue;
                }
                if index[w] == UNSEEN {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    comp_of[w] = comps.len();
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                comps.push(comp);
            }
        }
    }
    (comp_of, comps)
}

/// Shortest path (as node list) from any of `sources` to a node satisfying
/// `target`, moving only through nodes with `allowed[v]`.
pub fn bfs_path(
    adj: &[Vec<usize>],
    sources: &[usize],
    allowed: &[bool],
    target: impl Fn(usize) -> bool,
) -> Option<Vec<usize>> {
    let mut parent = vec![usize::MAX; adj.len()];
    let mut seen = vec![false; adj.len()];
    let mut queue = VecDeque::new();
    for &s in sources {
        if allowed[s] && !seen[s] {
            seen[s] = true;
            queue.push_back(s);
        }
    }
    while let Some(v) = queue.pop_front() {
        if target(v) {
            let mut path = vec![v];
            let mut cur = v;
            while parent[cur] != usize::MAX {
                cur = parent[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for &w in &adj[v] {
            if allowed[w] && !seen[w] {
                seen[w] = true;
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    None
}

/// A cycle through `v` inside `allowed`, as the node list starting at `v`
/// (the closing edge back to `v` is implicit).
pub fn cycle_through(adj: &[Vec<usize>], v: usize, allowed: &[bool]) -> Option<Vec<usize>> {
    if adj[v].contains(&v) {
        return Some(vec![v]);
    }
    let starts: Vec<usize> = adj[v].iter().copied().filter(|&w| allowed[w]).collect();
    let path = bfs_path(adj, &starts, allowed, |w| adj[w].contains(&v))?;
    let mut cycle = vec![v];
    cycle.extend(path);
    Some(cycle)
}

/// Nodes reachable from `sources` through `allowed` nodes.
pub fn reachable(adj: &[Vec<usize>], sources: &[usize], allowed: &[bool]) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    let mut stack: Vec<usize> = Vec::new();
    for &s in sources {
        if allowed[s] && !seen[s] {
            seen[s] = true;
            stack.push(s);
        }
    }
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if allowed[w] && !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen
}
