//! Riordan graphs: construction from (g, f, n), named families, basic
//! invariants, subgroup classification, and labeled enumeration.
//!
//! Vertices are labeled 1..=n throughout; the series/matrix layer stays
//! 0-based, and the index shift `a_{ij} = [t^{i-2}] g f^{j-1}` is confined
//! to [`build_graph_series`].

use crate::bits::BitBuf;
use crate::error::{Error, Result};
use crate::matrix::{self, BinaryRiordanMatrix};
use crate::series::BitSeries;
use crate::spec_lang::{BitPoly, NamedSeries, SeriesSpec};
use crate::working_trunc;
use serde_json::json;

/// Simple graph on vertices `1..=n` as a symmetric zero-diagonal bit matrix.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Graph {
    n: usize,
    rows: Vec<BitBuf>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            rows: vec![BitBuf::zeros(n); n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// 1-based vertex labels.
    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        assert!(u >= 1 && u <= self.n && v >= 1 && v <= self.n);
        u != v && self.rows[u - 1].get(v - 1)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u >= 1 && u <= self.n && v >= 1 && v <= self.n && u != v);
        self.rows[u - 1].set(v - 1, true);
        self.rows[v - 1].set(u - 1, true);
    }

    pub fn degree(&self, v: usize) -> usize {
        assert!(v >= 1 && v <= self.n);
        self.rows[v - 1].count_ones()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (1..=self.n).map(|v| self.degree(v)).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones()).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 1..=self.n {
            for w in self.rows[u - 1].ones() {
                let v = w + 1;
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        assert!(v >= 1 && v <= self.n);
        self.rows[v - 1].ones().into_iter().map(|w| w + 1).collect()
    }

    /// Neighbor row as packed bits (0-based columns). The oracle layer walks
    /// these directly so it shares no formula code with the builders.
    pub fn row_bits(&self, v: usize) -> &BitBuf {
        &self.rows[v - 1]
    }

    /// Induced subgraph on the given 1-based vertices, relabeled 1..=k in
    /// the order given.
    pub fn induced(&self, verts: &[usize]) -> Graph {
        let k = verts.len();
        let mut g = Graph::empty(k);
        for a in 0..k {
            for b in a + 1..k {
                if self.has_edge(verts[a], verts[b]) {
                    g.add_edge(a + 1, b + 1);
                }
            }
        }
        g
    }

    /// Relabel every vertex `i` as `n+1-i`.
    pub fn reversed(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.add_edge(self.n + 1 - u, self.n + 1 - v);
        }
        g
    }

    pub fn is_edgeless(&self) -> bool {
        self.rows.iter().all(|r| r.is_zero())
    }

    /// DOT output; edge lines are sorted lexicographically for stable diffs.
    pub fn to_dot(&self) -> String {
        let mut lines: Vec<String> = self
            .edges()
            .iter()
            .map(|(u, v)| format!("  {u} -- {v};"))
            .collect();
        lines.sort();
        let mut out = String::from("graph riordan {\n");
        for v in 1..=self.n {
            out.push_str(&format!("  {v};\n"));
        }
        for l in lines {
            out.push_str(&l);
            out.push('\n');
        }
        out.push_str("}\n");
        out
    }

    /// CSV edge list, `u,v` per line with `u < v`.
    pub fn to_edge_csv(&self) -> String {
        let mut out = String::new();
        for (u, v) in self.edges() {
            out.push_str(&format!("{u},{v}\n"));
        }
        out
    }

    /// Full adjacency as 0/1 rows.
    pub fn to_adjacency_text(&self) -> String {
        let mut out = String::new();
        for u in 1..=self.n {
            let row: Vec<&str> = (1..=self.n)
                .map(|v| {
                    if u != v && self.has_edge(u, v) {
                        "1"
                    } else {
                        "0"
                    }
                })
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Generative description of one Riordan graph.
#[derive(Clone, PartialEq, Debug)]
pub struct RiordanGraphSpec {
    pub g: SeriesSpec,
    pub f: SeriesSpec,
    pub n: usize,
}

impl RiordanGraphSpec {
    pub fn new(g: SeriesSpec, f: SeriesSpec, n: usize) -> Self {
        RiordanGraphSpec { g, f, n }
    }

    /// Expand both series at the working precision for order `n`,
    /// checking the `f(0) = 0` invariant.
    pub fn expand(&self) -> Result<(BitSeries, BitSeries)> {
        let t = working_trunc(self.n);
        let g = self.g.expand(t)?;
        let f = self.f.expand(t)?;
        if f.coeff(0) {
            return Err(Error::InvalidSpec("graph spec requires f(0) = 0".into()));
        }
        Ok((g, f))
    }

    pub fn is_proper(&self) -> Result<bool> {
        let (g, f) = self.expand()?;
        Ok(matrix::is_proper(&g, &f))
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "g": self.g.to_string(),
            "f": self.f.to_string(),
            "n": self.n,
        })
    }
}

impl std::fmt::Display for RiordanGraphSpec {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(fm, "G_{}({}, {})", self.n, self.g, self.f)
    }
}

/// Build the graph of `(g, f)` of order `n` from already-expanded series.
pub fn build_graph_series(g: &BitSeries, f: &BitSeries, n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidSpec("graph order must be >= 1".into()));
    }
    let mut gr = Graph::empty(n);
    if n == 1 {
        return Ok(gr);
    }
    let m = BinaryRiordanMatrix::build(g, f, n - 1)?;
    for i in 2..=n {
        for j in 1..i {
            if m.get(i - 2, j - 1) {
                gr.add_edge(i, j);
            }
        }
    }
    Ok(gr)
}

pub fn build_graph(spec: &RiordanGraphSpec) -> Result<Graph> {
    let (g, f) = spec.expand()?;
    build_graph_series(&g, &f, spec.n)
}

/// Named graph families.
#[derive(Clone, PartialEq, Debug)]
pub enum FamilyId {
    Pascal,
    Catalan,
    Motzkin,
    Toeplitz(BitPoly),
    Fibonacci,
    Path,
    Complete,
    CompleteBipartite,
    Null,
    Star,
    KaryTree(u32),
}

impl FamilyId {
    pub fn spec(&self, n: usize) -> RiordanGraphSpec {
        use crate::spec_lang::parse_series_spec as parse;
        use SeriesSpec as S;
        let (g, f) = match self {
            FamilyId::Pascal => (
                S::Named(NamedSeries::PascalG),
                S::Named(NamedSeries::PascalF),
            ),
            // C = 1 + tC^2 gives tC = t + (tC)^2.
            FamilyId::Catalan => (
                S::Named(NamedSeries::Catalan),
                parse("fix:X=t+X^2").expect("constant spec"),
            ),
            // M = 1 + tM + t^2 M^2 gives tM = t + t(tM) + t(tM)^2.
            FamilyId::Motzkin => (
                S::Named(NamedSeries::Motzkin),
                parse("fix:X=t+t*X+t*X^2").expect("constant spec"),
            ),
            FamilyId::Toeplitz(p) => (S::Polynomial(p.clone()), S::Named(NamedSeries::T)),
            FamilyId::Fibonacci => (
                S::Named(NamedSeries::One),
                S::Named(NamedSeries::FibonacciF),
            ),
            FamilyId::Path => (S::Named(NamedSeries::One), S::Named(NamedSeries::T)),
            FamilyId::Complete => (S::Named(NamedSeries::Geometric), S::Named(NamedSeries::T)),
            FamilyId::CompleteBipartite => (
                S::Rational {
                    num: BitPoly::from_support(&[0]),
                    den: BitPoly::from_support(&[0, 2]),
                },
                S::Named(NamedSeries::T),
            ),
            FamilyId::Null => (S::zero(), S::Named(NamedSeries::T)),
            FamilyId::Star => (S::Named(NamedSeries::Geometric), S::zero()),
            FamilyId::KaryTree(k) => (
                S::Polynomial(BitPoly::from_support(&(0..*k as usize).collect::<Vec<_>>())),
                S::Polynomial(BitPoly::from_support(&[*k as usize])),
            ),
        };
        RiordanGraphSpec::new(g, f, n)
    }

    pub fn parse(name: &str) -> Result<FamilyId> {
        Ok(match name {
            "pascal" => FamilyId::Pascal,
            "catalan" => FamilyId::Catalan,
            "motzkin" => FamilyId::Motzkin,
            "fibonacci" => FamilyId::Fibonacci,
            "path" => FamilyId::Path,
            "complete" => FamilyId::Complete,
            "complete_bipartite" => FamilyId::CompleteBipartite,
            "null" => FamilyId::Null,
            "star" => FamilyId::Star,
            other => {
                if let Some(rest) = other.strip_prefix("toeplitz:") {
                    let spec = crate::spec_lang::parse_series_spec(&format!("poly:{rest}"))?;
                    match spec {
                        SeriesSpec::Polynomial(p) => FamilyId::Toeplitz(p),
                        _ => unreachable!(),
                    }
                } else if let Some(rest) = other.strip_prefix("kary_tree:") {
                    let k: u32 = rest
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad arity `{rest}`")))?;
                    if k < 2 {
                        return Err(Error::Parse("k-ary tree needs k >= 2".into()));
                    }
                    FamilyId::KaryTree(k)
                } else {
                    return Err(Error::Parse(format!(
                        "unknown family `{other}` (pascal, catalan, motzkin, toeplitz:<poly>, \
                         fibonacci, path, complete, complete_bipartite, null, star, \
                         kary_tree:<k>)"
                    )));
                }
            }
        })
    }
}

/// Basic invariants computed two ways where the column formulas apply.
#[derive(Clone, Debug)]
pub struct BasicStats {
    pub degrees: Vec<usize>,
    pub edge_count: usize,
    /// `floor(n/2)` for proper specs, None otherwise.
    pub matching_number: Option<usize>,
    pub has_consecutive_ham_path: bool,
}

/// Degrees and edge count, computed from the built graph and re-derived
/// from the column polynomials of `B(g,f)_{n-1}`; the two must agree.
pub fn basic_stats(spec: &RiordanGraphSpec) -> Result<BasicStats> {
    let (g, f) = spec.expand()?;
    let n = spec.n;
    let graph = build_graph_series(&g, &f, n)?;
    let degrees = graph.degrees();
    let edge_count = graph.edge_count();

    if n >= 2 {
        // Column polynomials of B(g,f)_{n-1}: column j is g*f^j truncated to
        // degree n-2. Degree of vertex k is (ones in column k-1) plus (ones
        // in row k-2), the two halves of the symmetric adjacency matrix.
        let w = n - 1;
        let mut cols: Vec<BitSeries> = Vec::with_capacity(w);
        let mut col = g.restrict(w);
        for j in 0..w {
            if j > 0 {
                col = col.mul(&f.restrict(w));
            }
            cols.push(col.clone());
        }
        let col_ones =
            |j: usize| -> usize { cols[j].support().into_iter().filter(|&i| i >= j).count() };
        let row_ones =
            |i: usize| -> usize { (0..=i.min(w - 1)).filter(|&j| cols[j].coeff(i)).count() };
        let mut formula_deg = vec![0usize; n];
        for (k, d) in formula_deg.iter_mut().enumerate().take(n) {
            let k1 = k + 1; // 1-based vertex
            let mut s = 0;
            if k1 < n {
                s += col_ones(k1 - 1);
            }
            if k1 >= 2 {
                s += row_ones(k1 - 2);
            }
            *d = s;
        }
        assert_eq!(
            formula_deg, degrees,
            "column-polynomial degrees disagree with adjacency row sums"
        );
        let formula_edges: usize = (0..w).map(col_ones).sum();
        assert_eq!(formula_edges, edge_count);
    }

    let proper = matrix::is_proper(&g, &f);
    Ok(BasicStats {
        degrees,
        edge_count,
        matching_number: proper.then_some(n / 2),
        has_consecutive_ham_path: proper,
    })
}

/// The three possible subdiagonal patterns of a Riordan graph adjacency
/// matrix, decided by `(g_0, f_1)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SubdiagonalPattern {
    /// No edge `i(i+1)` at all.
    None,
    /// Only `12` is an edge.
    FirstOnly,
    /// Every `i(i+1)` is an edge: the path `1 -> 2 -> ... -> n` exists.
    Full,
}

pub fn subdiagonal_pattern(spec: &RiordanGraphSpec) -> Result<SubdiagonalPattern> {
    let (g, f) = spec.expand()?;
    let g0 = g.coeff(0);
    let f1 = f.trunc() >= 2 && f.coeff(1);
    Ok(match (g0, f1) {
        (false, _) => SubdiagonalPattern::None,
        (true, false) => SubdiagonalPattern::FirstOnly,
        (true, true) => SubdiagonalPattern::Full,
    })
}

/// Membership in the classes cut out by the classical subgroups, decided on
/// the coefficient window `0..n`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct SubgroupMemberships {
    pub appell: bool,
    pub bell: bool,
    pub lagrange: bool,
    pub checkerboard: bool,
    pub derivative: bool,
    pub hitting_time: bool,
}

impl SubgroupMemberships {
    pub fn names(&self) -> Vec<&'static str> {
        let mut v = Vec::new();
        if self.appell {
            v.push("appell");
        }
        if self.bell {
            v.push("bell");
        }
        if self.lagrange {
            v.push("lagrange");
        }
        if self.checkerboard {
            v.push("checkerboard");
        }
        if self.derivative {
            v.push("derivative");
        }
        if self.hitting_time {
            v.push("hitting_time");
        }
        v
    }
}

pub fn classify_subgroup(spec: &RiordanGraphSpec) -> Result<SubgroupMemberships> {
    let (g, f) = spec.expand()?;
    let w = spec.n.min(g.trunc()).min(f.trunc());
    let t = BitSeries::t(w);
    let tg = g.shift_up(1);
    let fp = f.derivative();
    let wp = w.min(fp.trunc());
    let f1 = f.trunc() >= 2 && f.coeff(1);
    Ok(SubgroupMemberships {
        appell: f.eq_window(&t, w),
        bell: f.eq_window(&tg, w),
        lagrange: g.eq_window(&BitSeries::one(w), w),
        checkerboard: g.support().iter().all(|&i| i >= w || i % 2 == 0)
            && f.support().iter().all(|&i| i >= w || i % 2 == 1),
        derivative: g.eq_window(&fp, wp),
        // hitting time (t f'/f, f) with f'(0)=1, cross-multiplied: t f' = g f
        hitting_time: f1 && fp.shift_up(1).eq_window(&g.mul(&f), wp),
    })
}

/// Result of enumerating all labeled Riordan graphs of one order.
pub struct LabeledCensus {
    pub count: usize,
    pub graphs: Vec<(RiordanGraphSpec, Graph)>,
    /// Normal-form pairs that produced an adjacency matrix already seen.
    pub collisions: Vec<(RiordanGraphSpec, RiordanGraphSpec)>,
}

/// Enumerate labeled Riordan graphs of order `n` via the normal forms
/// `g = t^i + sum_{k>i} g_k t^k` (degree <= n-2), `f` of degree <= n-i-2,
/// plus the null graph. The count must equal `(4^{n-1}+2)/3`.
pub fn enumerate_labeled(n: usize) -> Result<LabeledCensus> {
    if n == 0 {
        return Err(Error::InvalidSpec("order must be >= 1".into()));
    }
    if n > 8 {
        return Err(Error::Budget(format!(
            "labeled enumeration is limited to order 8 (got {n})"
        )));
    }
    let mut seen: std::collections::HashMap<Vec<BitBuf>, usize> = std::collections::HashMap::new();
    let mut graphs: Vec<(RiordanGraphSpec, Graph)> = Vec::new();
    let mut collisions = Vec::new();

    let null = RiordanGraphSpec::new(SeriesSpec::zero(), SeriesSpec::polynomial(&[1]), n);
    let g0 = build_graph(&null)?;
    seen.insert(g0.rows.clone(), 0);
    graphs.push((null, g0));

    for i in 0..n.saturating_sub(1) {
        let free_g = n.saturating_sub(2) - i; // bits g_{i+1}..g_{n-2}
        let free_f = n.saturating_sub(2) - i; // bits f_1..f_{n-i-2}
        for gm in 0u64..(1 << free_g) {
            let mut gsup = vec![i];
            for (b, k) in (i + 1..=n - 2).enumerate() {
                if (gm >> b) & 1 == 1 {
                    gsup.push(k);
                }
            }
            for fm in 0u64..(1 << free_f) {
                let mut fsup = Vec::new();
                for (b, k) in (1..=n - i - 2).enumerate() {
                    if (fm >> b) & 1 == 1 {
                        fsup.push(k);
                    }
                }
                let spec = RiordanGraphSpec::new(
                    SeriesSpec::polynomial(&gsup),
                    SeriesSpec::polynomial(&fsup),
                    n,
                );
                let gr = build_graph(&spec)?;
                if let Some(&prev) = seen.get(&gr.rows) {
                    collisions.push((graphs[prev].0.clone(), spec));
                } else {
                    seen.insert(gr.rows.clone(), graphs.len());
                    graphs.push((spec, gr));
                }
            }
        }
    }
    Ok(LabeledCensus {
        count: graphs.len(),
        graphs,
        collisions,
    })
}

/// Expected number of labeled Riordan graphs of order n: `(4^(n-1) + 2)/3`.
pub fn labeled_count_formula(n: usize) -> u64 {
    4u64.pow(n as u32 - 1).div_ceil(3)
}

/// Complement within the Appell class: `(g + 1/(1-t), t)`. The complement of
/// a general Riordan graph need not be Riordan, so anything else is refused.
pub fn complement_appell(spec: &RiordanGraphSpec) -> Result<RiordanGraphSpec> {
    let (g, f) = spec.expand()?;
    let n = spec.n;
    let w = n.min(f.trunc());
    if !f.eq_window(&BitSeries::t(w), w) {
        return Err(Error::Unsupported(
            "complement is only closed for Appell specs (f = t)".into(),
        ));
    }
    let t = working_trunc(n);
    let geom = SeriesSpec::Named(NamedSeries::Geometric).expand(t)?;
    let cg = g.add(&geom);
    let window: Vec<usize> = cg.support().into_iter().filter(|&i| i + 2 <= n).collect();
    let out = RiordanGraphSpec::new(
        SeriesSpec::polynomial(&window),
        SeriesSpec::Named(NamedSeries::T),
        n,
    );
    // Complementation must hold literally off the diagonal.
    let a = build_graph(spec)?;
    let b = build_graph(&out)?;
    for u in 1..=n {
        for v in 1..=n {
            if u != v {
                assert_ne!(
                    a.has_edge(u, v),
                    b.has_edge(u, v),
                    "complement mismatch at ({u},{v})"
                );
            }
        }
    }
    Ok(out)
}

/// JSON report for one spec.
pub fn graph_report_json(spec: &RiordanGraphSpec) -> Result<serde_json::Value> {
    let graph = build_graph(spec)?;
    let stats = basic_stats(spec)?;
    let classes = classify_subgroup(spec)?;
    Ok(json!({
        "schema_version": "1",
        "spec": spec.to_json(),
        "n": spec.n,
        "edges": graph.edges(),
        "degrees": stats.degrees,
        "edge_count": stats.edge_count,
        "matching_number": stats.matching_number,
        "has_consecutive_ham_path": stats.has_consecutive_ham_path,
        "classifications": classes.names(),
    }))
}
