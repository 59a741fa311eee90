//! Exhaustive ground-truth searches: Hamilton cycles, Euler trails, clique,
//! chromatic number, diameter, matching, isomorphism, and the search for a
//! generating pair of an unlabeled graph.
//!
//! These walkers read adjacency bits only and share no code with the series
//! or formula layers; agreement between the two sides is what the test
//! suite is for. Every search is exact; anything over budget is refused,
//! never approximated.

use crate::error::{Error, Result};
use crate::graph::{enumerate_labeled, Graph, RiordanGraphSpec};
use std::time::{Duration, Instant};

#[derive(Clone, Debug)]
pub struct OracleBudget {
    pub hamilton: usize,
    pub clique: usize,
    pub chromatic: usize,
    pub isomorphism: usize,
    pub unlabeled: usize,
    pub matching: usize,
    pub diameter: usize,
    pub time_limit: Option<Duration>,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            hamilton: 20,
            clique: 32,
            chromatic: 16,
            isomorphism: 8,
            unlabeled: 7,
            matching: 20,
            diameter: 1024,
            time_limit: None,
        }
    }
}

impl OracleBudget {
    /// Defaults overridden by `RIORDAN_BUDGET_<NAME>` environment variables
    /// (HAMILTON, CLIQUE, CHROMATIC, ISOMORPHISM, UNLABELED, MATCHING,
    /// DIAMETER, TIME_LIMIT_MS).
    pub fn from_env() -> Self {
        let mut b = OracleBudget::default();
        let read = |name: &str| -> Option<usize> {
            std::env::var(format!("RIORDAN_BUDGET_{name}"))
                .ok()
                .and_then(|v| v.parse().ok())
        };
        if let Some(v) = read("HAMILTON") {
            b.hamilton = v;
        }
        if let Some(v) = read("CLIQUE") {
            b.clique = v;
        }
        if let Some(v) = read("CHROMATIC") {
            b.chromatic = v;
        }
        if let Some(v) = read("ISOMORPHISM") {
            b.isomorphism = v;
        }
        if let Some(v) = read("UNLABELED") {
            b.unlabeled = v;
        }
        if let Some(v) = read("MATCHING") {
            b.matching = v;
        }
        if let Some(v) = read("DIAMETER") {
            b.diameter = v;
        }
        if let Some(ms) = read("TIME_LIMIT_MS") {
            b.time_limit = Some(Duration::from_millis(ms as u64));
        }
        b
    }

    fn check(&self, what: &str, n: usize, max: usize) -> Result<()> {
        if n > max {
            Err(Error::Budget(format!(
                "{what} limited to n <= {max}, got {n} \
                 (override with RIORDAN_BUDGET_* if intended)"
            )))
        } else {
            Ok(())
        }
    }
}

struct Deadline {
    start: Instant,
    limit: Option<Duration>,
}

impl Deadline {
    fn new(budget: &OracleBudget) -> Self {
        Deadline {
            start: Instant::now(),
            limit: budget.time_limit,
        }
    }

    fn check(&self, what: &str) -> Result<()> {
        if let Some(lim) = self.limit {
            if self.start.elapsed() > lim {
                return Err(Error::Budget(format!("{what} exceeded the time limit")));
            }
        }
        Ok(())
    }
}

/// Adjacency as one u64 mask per vertex (0-based), for n <= 64.
fn mask_adjacency(g: &Graph) -> Vec<u64> {
    let n = g.n();
    assert!(n <= 64);
    (1..=n)
        .map(|v| {
            let mut m = 0u64;
            for w in g.neighbors(v) {
                m |= 1 << (w - 1);
            }
            m
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Hamilton
// ---------------------------------------------------------------------------

/// Exhaustive Hamiltonian cycle search by dynamic programming over vertex
/// subsets. `Ok(Some(cycle))` returns the cycle as 1-based vertices in
/// order; `Ok(None)` is a proof of absence.
pub fn hamilton_search(g: &Graph, budget: &OracleBudget) -> Result<Option<Vec<usize>>> {
    let n = g.n();
    budget.check("hamilton search", n, budget.hamilton.min(24))?;
    if n < 3 {
        return Ok(None);
    }
    let deadline = Deadline::new(budget);
    let adj = mask_adjacency(g);
    if adj.iter().any(|&m| m.count_ones() < 2) {
        return Ok(None); // a cycle needs degree >= 2 everywhere
    }
    let full: usize = (1 << n) - 1;
    // dp[mask] = endpoint set of paths that start at 0 and cover mask.
    let mut dp = vec![0u32; 1 << n];
    dp[1] = 1;
    for mask in 1..=full {
        if mask & 1 == 0 || dp[mask] == 0 {
            continue;
        }
        if mask % 8192 == 0 {
            deadline.check("hamilton search")?;
        }
        let mut ends = dp[mask];
        while ends != 0 {
            let v = ends.trailing_zeros() as usize;
            ends &= ends - 1;
            let mut ext = adj[v] & !(mask as u64);
            while ext != 0 {
                let u = ext.trailing_zeros() as usize;
                ext &= ext - 1;
                dp[mask | (1 << u)] |= 1 << u;
            }
        }
    }
    let closers = dp[full] & (adj[0] as u32);
    if closers == 0 {
        return Ok(None);
    }
    // Reconstruct one cycle backwards from any endpoint adjacent to 0.
    let mut cycle = Vec::with_capacity(n);
    let mut cur = closers.trailing_zeros() as usize;
    let mut mask = full;
    while mask != 1 {
        cycle.push(cur + 1);
        let prev_mask = mask & !(1 << cur);
        let cands = dp[prev_mask] & (adj[cur] as u32);
        debug_assert!(cands != 0, "dp table is inconsistent");
        cur = cands.trailing_zeros() as usize;
        mask = prev_mask;
    }
    cycle.push(1);
    cycle.reverse();
    Ok(Some(cycle))
}

/// Check that a vertex sequence is a Hamiltonian cycle of `g`.
pub fn is_hamiltonian_cycle(g: &Graph, cycle: &[usize]) -> bool {
    let n = g.n();
    if cycle.len() != n || n < 3 {
        return false;
    }
    let mut seen = vec![false; n + 1];
    for &v in cycle {
        if v < 1 || v > n || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    cycle.windows(2).all(|w| g.has_edge(w[0], w[1])) && g.has_edge(cycle[n - 1], cycle[0])
}

// ---------------------------------------------------------------------------
// Euler
// ---------------------------------------------------------------------------

/// Hierholzer's algorithm. Returns the trail as 1-based vertices when every
/// edge lies in one component and the odd-degree count is 0 or 2.
pub fn euler_trail(g: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    let m = g.edge_count();
    if m == 0 {
        return None;
    }
    let odd: Vec<usize> = (1..=n).filter(|&v| g.degree(v) % 2 == 1).collect();
    if !(odd.is_empty() || odd.len() == 2) {
        return None;
    }
    // all edges in one component?
    let non_isolated: Vec<usize> = (1..=n).filter(|&v| g.degree(v) > 0).collect();
    let start = *odd.first().unwrap_or(&non_isolated[0]);
    let mut reach = vec![false; n + 1];
    let mut queue = std::collections::VecDeque::from([start]);
    reach[start] = true;
    while let Some(v) = queue.pop_front() {
        for w in g.neighbors(v) {
            if !reach[w] {
                reach[w] = true;
                queue.push_back(w);
            }
        }
    }
    if non_isolated.iter().any(|&v| !reach[v]) {
        return None;
    }
    // Hierholzer over a mutable copy of the neighbor lists.
    let mut rem: Vec<std::collections::BTreeSet<usize>> = (0..=n)
        .map(|v| {
            if v == 0 {
                Default::default()
            } else {
                g.neighbors(v).into_iter().collect()
            }
        })
        .collect();
    let mut stack = vec![start];
    let mut trail = Vec::with_capacity(m + 1);
    while let Some(&v) = stack.last() {
        if let Some(&u) = rem[v].iter().next() {
            rem[v].remove(&u);
            rem[u].remove(&v);
            stack.push(u);
        } else {
            trail.push(v);
            stack.pop();
        }
    }
    if trail.len() == m + 1 {
        trail.reverse();
        Some(trail)
    } else {
        None
    }
}

pub fn is_connected(g: &Graph) -> bool {
    let n = g.n();
    if n == 0 {
        return true;
    }
    let mut reach = vec![false; n + 1];
    let mut queue = std::collections::VecDeque::from([1usize]);
    reach[1] = true;
    let mut count = 1;
    while let Some(v) = queue.pop_front() {
        for w in g.neighbors(v) {
            if !reach[w] {
                reach[w] = true;
                count += 1;
                queue.push_back(w);
            }
        }
    }
    count == n
}

// ---------------------------------------------------------------------------
// Clique / chromatic / diameter / matching
// ---------------------------------------------------------------------------

pub fn clique_number(g: &Graph, budget: &OracleBudget) -> Result<usize> {
    let n = g.n();
    budget.check("clique search", n, budget.clique.min(64))?;
    if n == 0 {
        return Ok(0);
    }
    let adj = mask_adjacency(g);
    let mut best = 0usize;
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    fn go(cand: u64, size: usize, adj: &[u64], best: &mut usize) {
        if cand == 0 {
            *best = (*best).max(size);
            return;
        }
        let mut c = cand;
        while c != 0 {
            if size + c.count_ones() as usize <= *best {
                return;
            }
            let v = c.trailing_zeros() as usize;
            c &= c - 1;
            go(c & adj[v], size + 1, adj, best);
        }
        *best = (*best).max(size);
    }
    go(full, 0, &adj, &mut best);
    Ok(best)
}

pub fn chromatic_number(g: &Graph, budget: &OracleBudget) -> Result<usize> {
    let n = g.n();
    budget.check("chromatic search", n, budget.chromatic.min(64))?;
    if n == 0 {
        return Ok(0);
    }
    if g.is_edgeless() {
        return Ok(1);
    }
    let deadline = Deadline::new(budget);
    // vertices in degree-descending order
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v + 1)));
    let adj = mask_adjacency(g);

    fn colorable(
        idx: usize,
        order: &[usize],
        adj: &[u64],
        colors: &mut [usize],
        k: usize,
        used: usize,
        deadline: &Deadline,
    ) -> Result<bool> {
        if idx == order.len() {
            return Ok(true);
        }
        deadline.check("chromatic search")?;
        let v = order[idx];
        let mut forbidden = vec![false; k];
        for (j, &w) in order.iter().enumerate().take(idx) {
            if adj[v] >> w & 1 == 1 {
                forbidden[colors[j]] = true;
            }
        }
        for (c, &blocked) in forbidden.iter().enumerate().take(k.min(used + 1)) {
            if blocked {
                continue;
            }
            colors[idx] = c;
            if colorable(idx + 1, order, adj, colors, k, used.max(c + 1), deadline)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    for k in 2..=n {
        let mut colors = vec![0usize; n];
        if colorable(0, &order, &adj, &mut colors, k, 0, &deadline)? {
            return Ok(k);
        }
    }
    Ok(n)
}

/// All-pairs BFS; `None` when the graph is disconnected.
pub fn diameter(g: &Graph, budget: &OracleBudget) -> Result<Option<usize>> {
    let n = g.n();
    budget.check("diameter", n, budget.diameter)?;
    if n == 0 {
        return Ok(Some(0));
    }
    let mut diam = 0usize;
    let mut dist = vec![usize::MAX; n + 1];
    let mut queue = std::collections::VecDeque::new();
    for s in 1..=n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[s] = 0;
        queue.clear();
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            for w in g.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        for &d in &dist[1..=n] {
            if d == usize::MAX {
                return Ok(None);
            }
            diam = diam.max(d);
        }
    }
    Ok(Some(diam))
}

/// Exact maximum matching by subset dynamic programming.
pub fn max_matching(g: &Graph, budget: &OracleBudget) -> Result<usize> {
    let n = g.n();
    budget.check("matching", n, budget.matching.min(24))?;
    if n == 0 {
        return Ok(0);
    }
    let adj = mask_adjacency(g);
    let mut memo = vec![u8::MAX; 1 << n];
    fn solve(mask: u64, adj: &[u64], memo: &mut [u8]) -> u8 {
        if mask == 0 {
            return 0;
        }
        let idx = mask as usize;
        if memo[idx] != u8::MAX {
            return memo[idx];
        }
        let v = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << v);
        // v stays unmatched
        let mut best = solve(rest, adj, memo);
        // or v pairs with a neighbor still present
        let mut cand = adj[v] & rest;
        while cand != 0 {
            let u = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            let b = 1 + solve(rest & !(1 << u), adj, memo);
            best = best.max(b);
        }
        memo[idx] = best;
        best
    }
    let full = (1u64 << n) - 1;
    Ok(solve(full, &adj, &mut memo) as usize)
}

// ---------------------------------------------------------------------------
// Isomorphism and the unlabeled search
// ---------------------------------------------------------------------------

pub fn isomorphic(g: &Graph, h: &Graph, budget: &OracleBudget) -> Result<bool> {
    let n = g.n();
    budget.check("isomorphism", n.max(h.n()), budget.isomorphism.min(16))?;
    if n != h.n() {
        return Ok(false);
    }
    if g.edge_count() != h.edge_count() {
        return Ok(false);
    }
    let mut dg = g.degrees();
    let mut dh = h.degrees();
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return Ok(false);
    }
    if n == 0 {
        return Ok(true);
    }
    // Backtracking vertex assignment with degree and adjacency pruning.
    let deg_g: Vec<usize> = (1..=n).map(|v| g.degree(v)).collect();
    let deg_h: Vec<usize> = (1..=n).map(|v| h.degree(v)).collect();
    let mut mapping = vec![usize::MAX; n]; // g-vertex (0-based) -> h-vertex
    let mut used = vec![false; n];

    #[allow(clippy::too_many_arguments)]
    fn assign(
        v: usize,
        n: usize,
        g: &Graph,
        h: &Graph,
        deg_g: &[usize],
        deg_h: &[usize],
        mapping: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if v == n {
            return true;
        }
        for c in 0..n {
            if used[c] || deg_h[c] != deg_g[v] {
                continue;
            }
            let ok = (0..v).all(|w| g.has_edge(v + 1, w + 1) == h.has_edge(c + 1, mapping[w] + 1));
            if ok {
                mapping[v] = c;
                used[c] = true;
                if assign(v + 1, n, g, h, deg_g, deg_h, mapping, used) {
                    return true;
                }
                used[c] = false;
                mapping[v] = usize::MAX;
            }
        }
        false
    }

    Ok(assign(0, n, g, h, &deg_g, &deg_h, &mut mapping, &mut used))
}

/// Search the labeled census for a generating pair of the unlabeled graph.
pub fn is_riordan_unlabeled(g: &Graph, budget: &OracleBudget) -> Result<Option<RiordanGraphSpec>> {
    let n = g.n();
    budget.check("unlabeled search", n, budget.unlabeled.min(8))?;
    let census = enumerate_labeled(n)?;
    let deadline = Deadline::new(budget);
    for (spec, candidate) in &census.graphs {
        deadline.check("unlabeled search")?;
        if isomorphic(g, candidate, budget)? {
            return Ok(Some(spec.clone()));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, FamilyId};
    use crate::spec_lang::{parse_series_spec, SeriesSpec};

    fn b() -> OracleBudget {
        OracleBudget::default()
    }

    #[test]
    fn hamilton_on_small_graphs() {
        let k4 = build_graph(&FamilyId::Complete.spec(4)).unwrap();
        let cyc = hamilton_search(&k4, &b()).unwrap().unwrap();
        assert!(is_hamiltonian_cycle(&k4, &cyc));

        let cg9 = build_graph(&FamilyId::Catalan.spec(9)).unwrap();
        let cyc = hamilton_search(&cg9, &b()).unwrap().unwrap();
        assert!(is_hamiltonian_cycle(&cg9, &cyc));

        // G6(1/(1-t), t^2) has no Hamiltonian cycle
        let spec = crate::graph::RiordanGraphSpec::new(
            parse_series_spec("rat:(1)/(1+t)").unwrap(),
            SeriesSpec::polynomial(&[2]),
            6,
        );
        let g = build_graph(&spec).unwrap();
        assert!(hamilton_search(&g, &b()).unwrap().is_none());

        // path graph has none either
        let p5 = build_graph(&FamilyId::Path.spec(5)).unwrap();
        assert!(hamilton_search(&p5, &b()).unwrap().is_none());
    }

    #[test]
    fn hamilton_budget_refusal() {
        let g = Graph::empty(25);
        assert!(matches!(hamilton_search(&g, &b()), Err(Error::Budget(_))));
    }

    #[test]
    fn euler_trails() {
        // triangle: Eulerian cycle
        let k3 = build_graph(&FamilyId::Complete.spec(3)).unwrap();
        let t = euler_trail(&k3).unwrap();
        assert_eq!(t.len(), 4);
        assert_eq!(t[0], t[3]);
        // path: trail with the two endpoints odd
        let p4 = build_graph(&FamilyId::Path.spec(4)).unwrap();
        let t = euler_trail(&p4).unwrap();
        assert_eq!(t.len(), 4);
        // K4: four odd vertices, no trail
        let k4 = build_graph(&FamilyId::Complete.spec(4)).unwrap();
        assert!(euler_trail(&k4).is_none());
        // null graph
        assert!(euler_trail(&Graph::empty(3)).is_none());
    }

    #[test]
    fn clique_chromatic_diameter_matching() {
        let k5 = build_graph(&FamilyId::Complete.spec(5)).unwrap();
        assert_eq!(clique_number(&k5, &b()).unwrap(), 5);
        assert_eq!(chromatic_number(&k5, &b()).unwrap(), 5);
        assert_eq!(diameter(&k5, &b()).unwrap(), Some(1));
        assert_eq!(max_matching(&k5, &b()).unwrap(), 2);

        let p5 = build_graph(&FamilyId::Path.spec(5)).unwrap();
        assert_eq!(diameter(&p5, &b()).unwrap(), Some(4));
        assert_eq!(chromatic_number(&p5, &b()).unwrap(), 2);
        assert_eq!(max_matching(&p5, &b()).unwrap(), 2);

        let pg16 = build_graph(&FamilyId::Pascal.spec(16)).unwrap();
        assert_eq!(clique_number(&pg16, &b()).unwrap(), 5);

        let star = build_graph(&FamilyId::Star.spec(6)).unwrap();
        assert_eq!(max_matching(&star, &b()).unwrap(), 1);
        assert!(!is_connected(&Graph::empty(2)));
    }

    #[test]
    fn isomorphism_examples() {
        let g = build_graph(&FamilyId::Pascal.spec(6)).unwrap();
        assert!(isomorphic(&g, &g, &b()).unwrap());
        let p3 = build_graph(&FamilyId::Path.spec(3)).unwrap();
        let k3 = build_graph(&FamilyId::Complete.spec(3)).unwrap();
        assert!(!isomorphic(&p3, &k3, &b()).unwrap());
        // the prism admits the Toeplitz labeling with distances {2,3,4}
        let mut prism = Graph::empty(6);
        for (u, v) in [
            (1, 2),
            (2, 3),
            (3, 1),
            (4, 5),
            (5, 6),
            (6, 4),
            (1, 4),
            (2, 5),
            (3, 6),
        ] {
            prism.add_edge(u, v);
        }
        let labeled = build_graph(
            &FamilyId::Toeplitz(crate::spec_lang::BitPoly::from_support(&[1, 2, 3])).spec(6),
        )
        .unwrap();
        assert!(isomorphic(&prism, &labeled, &b()).unwrap());
    }

    #[test]
    fn unlabeled_search_finds_null_spec() {
        let n5 = Graph::empty(5);
        let found = is_riordan_unlabeled(&n5, &b()).unwrap().unwrap();
        let g = build_graph(&found).unwrap();
        assert!(g.is_edgeless());
    }

    #[test]
    fn unlabeled_search_rejects_k4_plus_isolated() {
        let mut g = Graph::empty(5);
        for u in 1..=4 {
            for v in u + 1..=4 {
                g.add_edge(u, v);
            }
        }
        assert!(is_riordan_unlabeled(&g, &b()).unwrap().is_none());
    }

    #[test]
    fn env_overrides() {
        // not setting anything keeps defaults
        let d = OracleBudget::from_env();
        assert_eq!(d.hamilton, OracleBudget::default().hamilton);
    }
}
