//! Independent brute-force oracles. They use plain adjacency masks and share
//! no code with the library beyond converting a `Graph` into masks.

#![allow(dead_code)]

use std::collections::HashMap;

use regext_core::Graph;

pub fn masks(g: &Graph) -> Vec<u32> {
    let n = g.order();
    assert!(n <= 32);
    (0..n)
        .map(|u| (0..n).filter(|&v| g.has_edge(u, v)).fold(0u32, |m, v| m | 1 << v))
        .collect()
}

fn pm_rec(adj: &[u32], left: u32, memo: &mut HashMap<u32, bool>) -> bool {
    if left == 0 {
        return true;
    }
    if let Some(&b) = memo.get(&left) {
        return b;
    }
    let v = left.trailing_zeros();
    let rest = left & !(1 << v);
    let mut cand = adj[v as usize] & rest;
    let mut found = false;
    while cand != 0 {
        let u = cand.trailing_zeros();
        cand &= cand - 1;
        if pm_rec(adj, rest & !(1 << u), memo) {
            found = true;
            break;
        }
    }
    memo.insert(left, found);
    found
}

/// Does a perfect matching exist? Memoized search over unmatched sets.
pub fn has_perfect_matching(g: &Graph) -> bool {
    let adj = masks(g);
    let all = if adj.len() == 32 { u32::MAX } else { (1u32 << adj.len()) - 1 };
    adj.len().is_multiple_of(2) && pm_rec(&adj, all, &mut HashMap::new())
}

fn mm_rec(adj: &[u32], left: u32, memo: &mut HashMap<u32, usize>) -> usize {
    if left == 0 {
        return 0;
    }
    if let Some(&b) = memo.get(&left) {
        return b;
    }
    let v = left.trailing_zeros();
    let rest = left & !(1 << v);
    let mut best = mm_rec(adj, rest, memo);
    let mut cand = adj[v as usize] & rest;
    while cand != 0 {
        let u = cand.trailing_zeros();
        cand &= cand - 1;
        best = best.max(1 + mm_rec(adj, rest & !(1 << u), memo));
    }
    memo.insert(left, best);
    best
}

pub fn max_matching_size(g: &Graph) -> usize {
    let adj = masks(g);
    mm_rec(&adj, (1u32 << adj.len()) - 1, &mut HashMap::new())
}

/// Every labeled r-regular graph on n vertices, edge by edge over pairs in
/// lexicographic order.
pub fn labeled_regular(n: usize, r: usize) -> Vec<Vec<u32>> {
    fn rec(n: usize, r: usize, u: usize, v: usize, adj: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if u == n {
            out.push(adj.clone());
            return;
        }
        if v == n {
            if adj[u].count_ones() as usize == r {
                rec(n, r, u + 1, u + 2, adj, out);
            }
            return;
        }
        // skip the pair
        let need = r - adj[u].count_ones() as usize;
        if n - v > need {
            rec(n, r, u, v + 1, adj, out);
        }
        if need > 0 && (adj[v].count_ones() as usize) < r {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
            rec(n, r, u, v + 1, adj, out);
            adj[u] &= !(1 << v);
            adj[v] &= !(1 << u);
        }
    }
    let mut out = Vec::new();
    if r < n && (n * r).is_multiple_of(2) {
        rec(n, r, 0, 1, &mut vec![0; n], &mut out);
    }
    out
}

/// Backtracking search for a bijection mapping `a` onto `b`.
pub fn isomorphic(a: &[u32], b: &[u32]) -> bool {
    fn rec(a: &[u32], b: &[u32], i: usize, map: &mut Vec<usize>, used: u32) -> bool {
        let n = a.len();
        if i == n {
            return true;
        }
        for j in 0..n {
            if used & (1 << j) != 0 || a[i].count_ones() != b[j].count_ones() {
                continue;
            }
            let ok = (0..i).all(|k| ((a[i] >> k) & 1) == ((b[j] >> map[k]) & 1));
            if ok {
                map[i] = j;
                if rec(a, b, i + 1, map, used | 1 << j) {
                    return true;
                }
            }
        }
        false
    }
    a.len() == b.len() && rec(a, b, 0, &mut vec![0; a.len()], 0)
}

/// Isomorphism classes of r-regular graphs on n vertices, by pairwise testing.
pub fn count_classes(n: usize, r: usize) -> usize {
    let mut reps: Vec<Vec<u32>> = Vec::new();
    for g in labeled_regular(n, r) {
        if !reps.iter().any(|h| isomorphic(h, &g)) {
            reps.push(g);
        }
    }
    reps.len()
}

pub fn from_masks(adj: &[u32]) -> Graph {
    let n = adj.len();
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).filter(move |&v| adj[u] >> v & 1 == 1).map(move |v| (u, v)))
        .collect();
    Graph::build(n, &edges).unwrap()
}

/// Smallest |S| with odd(G-S) > |S|, by trying every subset. Returns None
/// when the Tutte condition holds.
pub fn tutte_oracle(g: &Graph) -> Option<usize> {
    let adj = masks(g);
    let n = adj.len();
    let all = (1u32 << n) - 1;
    let mut best: Option<usize> = None;
    for s in 0..=all {
        let size = s.count_ones() as usize;
        if best.is_some_and(|b| b <= size) {
            continue;
        }
        let mut left = all & !s;
        let mut odd = 0;
        while left != 0 {
            let start = left.trailing_zeros();
            let mut comp = 1u32 << start;
            let mut frontier = comp;
            while frontier != 0 {
                let v = frontier.trailing_zeros();
                frontier &= frontier - 1;
                let new = adj[v as usize] & !s & !comp;
                comp |= new;
                frontier |= new;
            }
            left &= !comp;
            odd += (comp.count_ones() % 2) as usize;
        }
        if odd > size {
            best = Some(size);
        }
    }
    best
}
