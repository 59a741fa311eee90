//! The verification suites: every structural claim the library implements,
//! re-checked against reference data and the exhaustive oracle layer, with
//! one pass/fail report per criterion.

use crate::decomp::{self, decompose, io_check};
use crate::error::Result;
use crate::fractal;
use crate::graph::{
    build_graph, enumerate_labeled, labeled_count_formula, Graph, RiordanGraphSpec,
};
use crate::matrix::{self, BinaryRiordanMatrix};
use crate::ops;
use crate::oracle::{self, OracleBudget};
use crate::rng::SplitMix64;
use crate::series::BitSeries;
use crate::spec_lang::SeriesSpec;
use crate::traversal::{self, EulerianStatus, HamiltonStatus};
use crate::{graph::FamilyId, working_trunc};
use std::time::Instant;

/// Reference adjacency matrices used by the figure-reproduction criterion.
pub mod figures {
    use crate::graph::Graph;

    pub const PASCAL_6: [&str; 6] = ["011111", "101010", "110110", "101010", "111101", "100010"];
    pub const TOEPLITZ_6: [&str; 6] = ["010101", "101010", "010101", "101010", "010101", "101010"];
    pub const CATALAN_6: [&str; 6] = ["011010", "101010", "110111", "001010", "111101", "001010"];
    pub const PRISM_6: [&str; 6] = ["001110", "000111", "100011", "110001", "111000", "011100"];
    pub const IE_9_ORIGINAL: [&str; 9] = [
        "010101010",
        "101100110",
        "010100010",
        "111011110",
        "000101010",
        "100110110",
        "010101010",
        "111111101",
        "000000010",
    ];

    pub fn graph_from_rows(rows: &[&str]) -> Graph {
        let n = rows.len();
        let mut g = Graph::empty(n);
        for (i, row) in rows.iter().enumerate() {
            let bits: Vec<char> = row.chars().filter(|c| !c.is_whitespace()).collect();
            assert_eq!(bits.len(), n, "bad reference row");
            for (j, &c) in bits.iter().enumerate() {
                if c == '1' && j > i {
                    g.add_edge(i + 1, j + 1);
                }
            }
        }
        g
    }
}

#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub id: usize,
    pub name: String,
    pub passed: bool,
    pub millis: u128,
    pub details: Vec<String>,
}

impl CriterionReport {
    pub fn line(&self) -> String {
        format!(
            "criterion {:02} {:<22} {} ({} ms)",
            self.id,
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.millis
        )
    }
}

fn run_criterion(
    id: usize,
    name: &str,
    body: impl FnOnce() -> Result<Vec<String>>,
) -> CriterionReport {
    let start = Instant::now();
    let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(body));
    let millis = start.elapsed().as_millis();
    match outcome {
        Ok(Ok(details)) => CriterionReport {
            id,
            name: name.into(),
            passed: true,
            millis,
            details,
        },
        Ok(Err(e)) => CriterionReport {
            id,
            name: name.into(),
            passed: false,
            millis,
            details: vec![format!("error: {e}")],
        },
        Err(panic) => {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            CriterionReport {
                id,
                name: name.into(),
                passed: false,
                millis,
                details: vec![format!("assertion failed: {msg}")],
            }
        }
    }
}

fn check(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(crate::Error::NotApplicable(format!("check failed: {what}")))
    }
}

// --------------------------------------------------------------------------
// random spec generators
// --------------------------------------------------------------------------

fn random_poly(rng: &mut SplitMix64, max_deg: usize, force: &[(usize, bool)]) -> Vec<usize> {
    let mut bits: Vec<bool> = (0..=max_deg).map(|_| rng.bit()).collect();
    for &(i, v) in force {
        if i <= max_deg {
            bits[i] = v;
        }
    }
    bits.iter()
        .enumerate()
        .filter_map(|(i, &b)| b.then_some(i))
        .collect()
}

fn random_proper_spec(rng: &mut SplitMix64, n: usize) -> RiordanGraphSpec {
    let deg = n.saturating_sub(2).max(1);
    let g = random_poly(rng, deg, &[(0, true)]);
    let f = random_poly(rng, deg + 1, &[(0, false), (1, true)]);
    RiordanGraphSpec::new(SeriesSpec::polynomial(&g), SeriesSpec::polynomial(&f), n)
}

fn random_any_spec(rng: &mut SplitMix64, n: usize) -> RiordanGraphSpec {
    let deg = n.saturating_sub(2).max(1);
    let g = random_poly(rng, deg, &[]);
    let f = random_poly(rng, deg + 1, &[(0, false)]);
    RiordanGraphSpec::new(SeriesSpec::polynomial(&g), SeriesSpec::polynomial(&f), n)
}

/// Random io-decomposable Bell spec: even-index bits of g are free and the
/// odd ones follow from `[t^j] g = [t^(2j+1)] g`.
fn random_io_bell_spec(rng: &mut SplitMix64, n: usize) -> RiordanGraphSpec {
    let deg = n.saturating_sub(2).max(1);
    let mut bits = vec![false; deg + 1];
    bits[0] = true;
    for j in 1..=deg {
        if j % 2 == 0 {
            bits[j] = rng.bit();
        } else {
            bits[j] = bits[(j - 1) / 2];
        }
    }
    let g: Vec<usize> = bits
        .iter()
        .enumerate()
        .filter_map(|(i, &b)| b.then_some(i))
        .collect();
    let f: Vec<usize> = g.iter().map(|&i| i + 1).collect();
    RiordanGraphSpec::new(SeriesSpec::polynomial(&g), SeriesSpec::polynomial(&f), n)
}

// --------------------------------------------------------------------------
// criteria
// --------------------------------------------------------------------------

fn crit_01_figures() -> Result<Vec<String>> {
    use figures::*;
    let cases: [(&str, RiordanGraphSpec, &[&str; 6]); 4] = [
        ("pascal PG6", FamilyId::Pascal.spec(6), &PASCAL_6),
        (
            "toeplitz TG6<1,3,5>",
            FamilyId::Toeplitz(crate::spec_lang::BitPoly::from_support(&[0, 2, 4])).spec(6),
            &TOEPLITZ_6,
        ),
        ("catalan CG6", FamilyId::Catalan.spec(6), &CATALAN_6),
        (
            "prism labeling",
            FamilyId::Toeplitz(crate::spec_lang::BitPoly::from_support(&[1, 2, 3])).spec(6),
            &PRISM_6,
        ),
    ];
    let mut details = Vec::new();
    for (name, spec, expect) in cases {
        let got = build_graph(&spec)?;
        check(got == graph_from_rows(expect.as_slice()), name)?;
        details.push(format!("{name}: adjacency matches bit-for-bit"));
    }
    Ok(details)
}

fn crit_02_counting() -> Result<Vec<String>> {
    let expect = [1u64, 2, 6, 22, 86, 342, 1366];
    let mut details = Vec::new();
    for (i, &want) in expect.iter().enumerate() {
        let n = i + 1;
        let census = enumerate_labeled(n)?;
        check(census.count as u64 == want, "census count")?;
        check(census.count as u64 == labeled_count_formula(n), "formula")?;
        check(census.collisions.is_empty(), "no adjacency collisions")?;
        details.push(format!(
            "order {n}: {} labeled graphs, no collisions",
            census.count
        ));
    }
    Ok(details)
}

fn crit_03_order3_census() -> Result<Vec<String>> {
    let census = matrix::enumerate_order_n(3)?;
    check(census.total == 22, "22 matrices of order 3")?;
    check(census.invertible == 8, "8 invertible")?;
    let units: Vec<&BinaryRiordanMatrix> = census
        .matrices
        .iter()
        .filter(|m| m.is_invertible())
        .collect();
    let id = BinaryRiordanMatrix::identity(3);
    check(units.iter().any(|m| **m == id), "identity present")?;
    for a in &units {
        for b in &units {
            let p = a.multiply(b);
            check(units.iter().any(|u| **u == p), "closure")?;
        }
        check(
            units.iter().any(|b| a.multiply(b) == id),
            "every element has an inverse",
        )?;
    }
    let mut orders: Vec<usize> = units
        .iter()
        .map(|m| {
            let mut p = (*m).clone();
            let mut k = 1;
            while p != id {
                p = p.multiply(m);
                k += 1;
            }
            k
        })
        .collect();
    orders.sort_unstable();
    check(
        orders == vec![1, 2, 2, 2, 2, 2, 4, 4],
        "dihedral order profile",
    )?;
    Ok(vec![
        "22 matrices, 8 invertible".into(),
        "invertible set is a group with element orders {1,2,2,2,2,2,4,4}".into(),
    ])
}

fn crit_04_sequences(seed: u64) -> Result<Vec<String>> {
    let mut details = Vec::new();
    let named = |s: SeriesSpec, n: usize| s.expand(working_trunc(n));
    // Pascal
    let g = named(
        SeriesSpec::Named(crate::spec_lang::NamedSeries::PascalG),
        10,
    )?;
    let f = named(
        SeriesSpec::Named(crate::spec_lang::NamedSeries::PascalF),
        10,
    )?;
    let sp = BinaryRiordanMatrix::build(&g, &f, 10)?.sequences()?;
    check(sp.a.support() == vec![0, 1], "pascal A = (1,1,0,...)")?;
    check(sp.z.support() == vec![0], "pascal Z = (1,0,...)")?;
    details.push("pascal: A=(1,1,0,...), Z=(1,0,...)".into());
    // Catalan
    let (g, f) = FamilyId::Catalan.spec(10).expand()?;
    let sp = BinaryRiordanMatrix::build(&g, &f, 10)?.sequences()?;
    check(
        sp.a.support() == (0..9).collect::<Vec<_>>(),
        "catalan A all ones",
    )?;
    details.push("catalan: A all ones".into());
    // Motzkin
    let (g, f) = FamilyId::Motzkin.spec(10).expand()?;
    let sp = BinaryRiordanMatrix::build(&g, &f, 10)?.sequences()?;
    check(sp.a.support() == vec![0, 1, 2], "motzkin A = 1+t+t^2")?;
    details.push("motzkin: A = 1+t+t^2".into());

    // 500 random proper specs, n <= 32: the A-recurrence is validated
    // inside sequences(); additionally rebuild from (A,Z).
    let mut rng = SplitMix64::new(seed ^ 4);
    for _ in 0..500 {
        let n = 2 + rng.below(31);
        let spec = random_proper_spec(&mut rng, n);
        let (g, f) = spec.expand()?;
        let m = BinaryRiordanMatrix::build(&g, &f, n)?;
        let sp = m.sequences()?;
        let rebuilt = BinaryRiordanMatrix::rebuild_from_sequences(&sp, n);
        check(rebuilt.rows() == m.rows(), "A/Z rebuild")?;
    }
    details
        .push("500 random proper specs: analytic and recurrence A agree, A/Z rebuild exact".into());
    Ok(details)
}

fn crit_05_decomposition(seed: u64) -> Result<Vec<String>> {
    let mut rng = SplitMix64::new(seed ^ 5);
    // 200 seeded random specs, n <= 128: the reassembly identity is
    // asserted inside decompose.
    for _ in 0..200 {
        let n = 1 + rng.below(128);
        let spec = random_any_spec(&mut rng, n);
        decompose(&spec)?;
    }
    // Bell specs yield an empty even part.
    for _ in 0..50 {
        let n = 2 + rng.below(63);
        let deg = n.saturating_sub(2).max(1);
        let g = random_poly(&mut rng, deg, &[]);
        let f: Vec<usize> = g.iter().map(|&i| i + 1).collect();
        let spec = RiordanGraphSpec::new(SeriesSpec::polynomial(&g), SeriesSpec::polynomial(&f), n);
        let blocks = decompose(&spec)?;
        check(blocks.y_graph.is_edgeless(), "Bell spec with nonempty Y")?;
    }
    // Derivative specs yield an empty odd part.
    for _ in 0..50 {
        let n = 2 + rng.below(63);
        let deg = n.saturating_sub(1).max(1);
        let f = random_poly(&mut rng, deg, &[(0, false)]);
        let fs = SeriesSpec::polynomial(&f).expand(working_trunc(n))?;
        let gp: Vec<usize> = fs.derivative().support();
        let spec =
            RiordanGraphSpec::new(SeriesSpec::polynomial(&gp), SeriesSpec::polynomial(&f), n);
        let blocks = decompose(&spec)?;
        check(
            blocks.x_graph.is_edgeless(),
            "derivative spec with nonempty X",
        )?;
    }
    Ok(vec![
        "200 random specs (n <= 128): block reassembly identity holds".into(),
        "50 random Bell specs: even part always empty".into(),
        "50 random derivative specs: odd part always empty".into(),
    ])
}

fn crit_06_io_ie() -> Result<Vec<String>> {
    let mut details = Vec::new();
    check(io_check(&FamilyId::Pascal.spec(12))?.holds, "pascal io")?;
    check(io_check(&FamilyId::Catalan.spec(12))?.holds, "catalan io")?;
    check(
        !io_check(&FamilyId::Motzkin.spec(12))?.holds,
        "motzkin not io",
    )?;
    details.push("pascal io, catalan io, motzkin not io".into());

    // the derivative-type example with its 9x9 permuted block matrix
    let s = RiordanGraphSpec::new(
        crate::parse_series_spec("rat:(1)/(1+t^2)")?,
        crate::parse_series_spec("rat:(t)/(1+t)")?,
        9,
    );
    check(decomp::ie_check(&s)?.holds, "derivative example ie")?;
    let original = build_graph(&s)?;
    check(
        original == figures::graph_from_rows(&figures::IE_9_ORIGINAL),
        "9x9 adjacency matches",
    )?;
    let blocks = decompose(&s)?;
    check(blocks.x_graph.is_edgeless(), "9x9 X block empty")?;
    let bridge_expect: [[u8; 4]; 5] = [
        [1, 1, 1, 1],
        [1, 1, 0, 1],
        [0, 1, 1, 1],
        [1, 1, 1, 1],
        [0, 0, 0, 1],
    ];
    for (r, row) in bridge_expect.iter().enumerate() {
        for (c, &b) in row.iter().enumerate() {
            check(blocks.bridge[r].get(c) == (b == 1), "9x9 bridge entry")?;
        }
    }
    details.push("ie example (1/(1+t^2), t/(1+t)) at n=9: block matrix reproduced exactly".into());

    // exhaustive Bell windows n <= 14: congruence and structural routes
    // agree; io count per order is 2^(floor(n/2)-1)
    for n in 2..=14usize {
        let free = n.saturating_sub(2);
        let mut io_count = 0u64;
        for mask in 0u64..(1 << free) {
            let mut sup = vec![0usize];
            for b in 0..free {
                if (mask >> b) & 1 == 1 {
                    sup.push(b + 1);
                }
            }
            let f: Vec<usize> = sup.iter().map(|&i| i + 1).collect();
            let spec =
                RiordanGraphSpec::new(SeriesSpec::polynomial(&sup), SeriesSpec::polynomial(&f), n);
            let rc = io_check(&spec)?;
            check(rc.congruence == rc.structural, "io route agreement")?;
            check(rc.a_form.is_some(), "Bell spec exposes its A form")?;
            check(rc.a_form == Some(rc.holds), "A-form iff io for Bell specs")?;
            if rc.holds {
                io_count += 1;
            }
        }
        check(
            io_count == 1 << (n / 2 - 1),
            "io Bell count 2^(floor(n/2)-1)",
        )?;
    }
    details.push("all Bell windows n <= 14: routes agree; io count = 2^(floor(n/2)-1)".into());
    Ok(details)
}

fn crit_07_edge_counts(seed: u64) -> Result<Vec<String>> {
    let pow3 = |k: u32| 3usize.pow(k);
    for k in 1..=6u32 {
        let n = 1usize << k;
        let pg = decomp::bell_edge_count(&FamilyId::Pascal.spec(n))?;
        check(pg.m == pow3(k) - (1 << k), "m(PG_2^k) = 3^k - 2^k")?;
        check(pg.recursion_check, "pascal recursion")?;
        let pg = decomp::bell_edge_count(&FamilyId::Pascal.spec(n + 1))?;
        check(pg.m == pow3(k), "m(PG_2^k+1) = 3^k")?;
        let cg = decomp::bell_edge_count(&FamilyId::Catalan.spec(n))?;
        check(cg.m == (pow3(k) - 1) / 2, "m(CG_2^k) = (3^k-1)/2")?;
        let cg = decomp::bell_edge_count(&FamilyId::Catalan.spec(n + 1))?;
        check(cg.m == (pow3(k) - 1) / 2 + (1 << k), "m(CG_2^k+1)")?;
    }
    // recursion equals direct count across orders
    for n in 1..=256usize {
        for fam in [FamilyId::Pascal, FamilyId::Catalan] {
            let ec = decomp::bell_edge_count(&fam.spec(n))?;
            check(ec.recursion_check, "recursion = direct count")?;
        }
    }
    let mut rng = SplitMix64::new(seed ^ 7);
    for _ in 0..20 {
        let n = 2 + rng.below(255);
        let spec = random_io_bell_spec(&mut rng, n);
        let ec = decomp::bell_edge_count(&spec)?;
        check(ec.recursion_check, "random io Bell recursion")?;
    }
    Ok(vec![
        "closed forms for Pascal and Catalan edge counts, k <= 6".into(),
        "recursion = direct count for Pascal/Catalan n <= 256 and 20 random io Bell specs".into(),
    ])
}

fn crit_08_partition_clique_chromatic(budget: &OracleBudget) -> Result<Vec<String>> {
    let mut k5_from = None;
    for fam in [FamilyId::Pascal, FamilyId::Catalan] {
        for n in 2..=32usize {
            let spec = fam.spec(n);
            // part independence and clique completeness asserted in-op
            let lp = decomp::log_partition(&spec)?;
            let expect = decomp::ceil_log2(n) + 1;
            check(lp.parts.len() == expect, "partition size")?;
            if n >= 9 && lp.clique.len() >= 5 && k5_from.is_none() {
                k5_from = Some(n);
            }
            let graph = build_graph(&spec)?;
            let omega = oracle::clique_number(&graph, budget)?;
            check(omega == expect, "clique number = ceil(log2 n) + 1")?;
            if n <= budget.chromatic {
                let chi = oracle::chromatic_number(&graph, budget)?;
                check(chi == expect, "chromatic number = ceil(log2 n) + 1")?;
            }
        }
    }
    Ok(vec![
        "pascal/catalan n <= 32: partition parts independent, oracle clique = ceil(log2 n)+1"
            .into(),
        "chromatic verified up to the n <= 16 budget".into(),
        format!(
            "explicit clique reaches K5 from n = {} on, so these graphs are non-planar for n >= 9",
            k5_from.unwrap_or(9)
        ),
    ])
}

fn crit_09_diameter(seed: u64, budget: &OracleBudget) -> Result<Vec<String>> {
    let mut details = Vec::new();
    for fam in [FamilyId::Pascal, FamilyId::Catalan] {
        for n in 2..=128usize {
            let spec = fam.spec(n);
            let db = decomp::diameter_bound(&spec)?;
            let graph = build_graph(&spec)?;
            let d = oracle::diameter(&graph, budget)?.expect("proper specs are connected");
            check(d <= db.bound, "diameter within bound")?;
            if db.exact_two {
                check(d == 2, "diameter exactly two")?;
            }
        }
    }
    let mut rng = SplitMix64::new(seed ^ 9);
    for _ in 0..20 {
        let n = 2 + rng.below(127);
        let spec = random_io_bell_spec(&mut rng, n);
        let db = decomp::diameter_bound(&spec)?;
        let graph = build_graph(&spec)?;
        let d = oracle::diameter(&graph, budget)?.expect("connected");
        check(d <= db.bound, "random io Bell diameter within bound")?;
    }
    details.push(
        "diam <= floor(log2 n) for io Bell specs n <= 128; = 2 at n = 2^k+2, 2^(k+1)+1".into(),
    );
    for k in 1..=5u32 {
        let n = 1usize << k;
        let graph = build_graph(&FamilyId::Catalan.spec(n))?;
        let d = oracle::diameter(&graph, budget)?.unwrap();
        details.push(format!(
            "conjecture data: diam(CG_{n}) = {d} (k = {k}, no assertion)"
        ));
    }
    Ok(details)
}

fn crit_10_fractal() -> Result<Vec<String>> {
    // exercise the public op on the reference examples
    let fam9 = fractal::cognate_pairs(&FamilyId::Catalan.spec(9), 1, 5)?;
    check(
        fam9.pairs == vec![(1, 5), (5, 9)],
        "catalan n=9 cognates of (1,5)",
    )?;
    let fam15 = fractal::cognate_pairs(&FamilyId::Catalan.spec(15), 1, 5)?;
    check(
        fam15.pairs == vec![(1, 5), (5, 9), (9, 13)],
        "catalan n=15 cognates of (1,5)",
    )?;
    for m in [1i64, 2] {
        check(
            fractal::fractal_isomorphism_check(&FamilyId::Catalan.spec(15), 5, 1, m)?,
            "catalan n=15 window isomorphism",
        )?;
    }

    // exhaustive shift-family verification for Pascal and Catalan, n <= 64:
    // recompute ell and s directly and compare adjacency along every shift.
    for fam in [FamilyId::Pascal, FamilyId::Catalan] {
        for n in 4..=64usize {
            let spec = fam.spec(n);
            let (_, f) = spec.expand()?;
            let a = f.comp_inverse()?.div_t(1)?.recip()?;
            let w = a.trunc().min(n.saturating_sub(2));
            let ell = match (1..w).find(|&k| a.coeff(k)) {
                Some(k) => k - 1,
                None => continue,
            };
            let graph = build_graph(&spec)?;
            for j in 1..=n {
                for i in j + 1..=n {
                    let mut s = 0u32;
                    while ((1usize << s) * (ell + 1)) < i - j {
                        s += 1;
                    }
                    let step = 1usize << s;
                    let base = graph.has_edge(i, j);
                    let mut a2 = i + step;
                    let mut b2 = j + step;
                    while a2 <= n {
                        check(
                            graph.has_edge(a2, b2) == base,
                            "shift cognate adjacency equality",
                        )?;
                        a2 += step;
                        b2 += step;
                    }
                    let (mut a2, mut b2) = (i, j);
                    while b2 > step {
                        a2 -= step;
                        b2 -= step;
                        check(
                            graph.has_edge(a2, b2) == base,
                            "shift cognate adjacency equality (left)",
                        )?;
                    }
                }
            }
        }
    }
    Ok(vec![
        "catalan (1,5) cognates and window isomorphisms match".into(),
        "all shift-family cognate pairs verified for Pascal and Catalan, n <= 64".into(),
    ])
}

fn crit_11_reverse(seed: u64) -> Result<Vec<String>> {
    let mut rng = SplitMix64::new(seed ^ 11);
    // the reversed-adjacency identity is asserted inside reverse_relabel
    for _ in 0..200 {
        let n = 2 + rng.below(63);
        let spec = random_proper_spec(&mut rng, n);
        fractal::reverse_relabel(&spec)?;
    }
    // Catalan at n = 2^j - 1 reverses to (1+t, t+t^2), whose product with
    // (C, tC) is the identity pair (1, t).
    for j in 2..=5u32 {
        let n = (1usize << j) - 1;
        let rev = fractal::reverse_relabel(&FamilyId::Catalan.spec(n))?;
        let expect = RiordanGraphSpec::new(
            SeriesSpec::polynomial(&[0, 1]),
            SeriesSpec::polynomial(&[1, 2]),
            n,
        );
        check(
            build_graph(&rev)? == build_graph(&expect)?,
            "catalan reversal is (1+t, t+t^2)",
        )?;
        let (c, tc) = FamilyId::Catalan.spec(n).expand()?;
        let (rg, rf) = expect.expand()?;
        let (pg, pf) = matrix::riordan_multiply(&c, &tc, &rg, &rf)?;
        check(
            pg.support() == vec![0] && pf.support() == vec![1],
            "group inverse",
        )?;
    }
    Ok(vec![
        "200 random proper specs: reversal spec reproduces E*A*E".into(),
        "catalan at n = 2^j - 1 reverses to (1+t, t+t^2), the group inverse of (C, tC)".into(),
    ])
}

fn crit_12_euler_hamilton(budget: &OracleBudget) -> Result<Vec<String>> {
    let mut details = Vec::new();
    // Pascal trails
    for k in 2..=6u32 {
        let n = (1usize << k) + 1;
        let status = traversal::eulerian_check(&FamilyId::Pascal.spec(n))?;
        check(
            status == EulerianStatus::Trail(2, 1 << k),
            "PG_(2^k+1) trail endpoints {2, 2^k}",
        )?;
        if k <= 4 {
            let trail = oracle::euler_trail(&build_graph(&FamilyId::Pascal.spec(n))?)
                .expect("oracle trail");
            let ends = [trail[0], *trail.last().unwrap()];
            check(
                ends.contains(&2) && ends.contains(&(1 << k)),
                "oracle trail endpoints",
            )?;
        }
    }
    for k in 3..=6u32 {
        let n = 1usize << k;
        let status = traversal::eulerian_check(&FamilyId::Pascal.spec(n))?;
        check(status == EulerianStatus::NoTrail, "PG_(2^k) has no trail")?;
        if k <= 4 {
            check(
                oracle::euler_trail(&build_graph(&FamilyId::Pascal.spec(n))?).is_none(),
                "oracle agrees: no trail",
            )?;
        }
    }
    details
        .push("PG_(2^k+1): trail between 2 and 2^k (k <= 6); PG_(2^k): none (3 <= k <= 6)".into());

    // Catalan Hamiltonicity at n = 2^k + 1
    for k in 1..=6u32 {
        let n = (1usize << k) + 1;
        let v = traversal::hamiltonian_sufficient(&FamilyId::Catalan.spec(n))?;
        let HamiltonStatus::Guaranteed(cycle) = v.status else {
            return check(false, "catalan 2^k+1 guaranteed").map(|_| vec![]);
        };
        let graph = build_graph(&FamilyId::Catalan.spec(n))?;
        check(
            oracle::is_hamiltonian_cycle(&graph, &cycle),
            "witness validates",
        )?;
        if k <= 4 {
            check(
                oracle::hamilton_search(&graph, budget)?.is_some(),
                "oracle finds a cycle",
            )?;
        }
    }
    details.push(
        "catalan n = 2^k+1 Hamiltonian with validated witness (oracle-confirmed k <= 4)".into(),
    );

    // Motzkin rule vs oracle for n <= 18: wherever n != 4^i(2j-1) the rule
    // promises a cycle; at exceptional orders the rule is silent, but the
    // generic certificate scan may still fire (e.g. n = 12 via i = 5), and
    // any Guaranteed verdict must agree with the oracle.
    let is_exception = |n: usize| {
        let v = n.trailing_zeros();
        v >= 2 && v.is_multiple_of(2) && n > 0
    };
    for n in 3..=18usize {
        let v = traversal::hamiltonian_sufficient(&FamilyId::Motzkin.spec(n))?;
        let graph = build_graph(&FamilyId::Motzkin.spec(n))?;
        if !is_exception(n) {
            let HamiltonStatus::Guaranteed(cycle) = v.status else {
                return check(false, "motzkin rule promises a cycle").map(|_| vec![]);
            };
            check(
                oracle::is_hamiltonian_cycle(&graph, &cycle),
                "motzkin witness",
            )?;
            check(
                oracle::hamilton_search(&graph, budget)?.is_some(),
                "oracle agrees",
            )?;
        } else {
            let found = oracle::hamilton_search(&graph, budget)?;
            match &v.status {
                HamiltonStatus::Guaranteed(cycle) => {
                    check(
                        oracle::is_hamiltonian_cycle(&graph, cycle),
                        "motzkin witness",
                    )?;
                    check(found.is_some(), "oracle agrees with certificate")?;
                }
                HamiltonStatus::Unknown => {}
                HamiltonStatus::Impossible(_) => {
                    check(found.is_none(), "oracle agrees with obstruction")?;
                }
            }
            details.push(format!(
                "motzkin n={n} (= 4^i(2j-1)): rule silent; certificate {}, oracle says {}",
                match &v.status {
                    HamiltonStatus::Guaranteed(_) => "found",
                    _ => "absent",
                },
                if found.is_some() {
                    "hamiltonian"
                } else {
                    "not hamiltonian"
                }
            ));
        }
    }
    check(
        matches!(
            traversal::hamiltonian_sufficient(&FamilyId::Motzkin.spec(4))?.status,
            HamiltonStatus::Unknown
        ),
        "motzkin n=4 stays unknown",
    )?;

    // obstruction verdicts, oracle-confirmed exhaustively for n <= 14
    for n in 3..=14usize {
        let s = RiordanGraphSpec::new(
            crate::parse_series_spec("rat:(1)/(1+t)")?,
            SeriesSpec::polynomial(&[2]),
            n,
        );
        let v = traversal::hamiltonian_obstruction(&s)?;
        check(
            matches!(v.status, HamiltonStatus::Impossible(_)),
            "f1=0 obstruction fires",
        )?;
        check(
            oracle::hamilton_search(&build_graph(&s)?, budget)?.is_none(),
            "oracle confirms absence (f1=0)",
        )?;
        if n % 2 == 1 {
            let kb = FamilyId::CompleteBipartite.spec(n);
            let v = traversal::hamiltonian_obstruction(&kb)?;
            check(
                matches!(v.status, HamiltonStatus::Impossible(_)),
                "odd checkerboard obstruction",
            )?;
            check(
                oracle::hamilton_search(&build_graph(&kb)?, budget)?.is_none(),
                "oracle confirms absence (checkerboard)",
            )?;
            let ds = RiordanGraphSpec::new(
                crate::parse_series_spec("rat:(1)/(1+t^2)")?,
                crate::parse_series_spec("rat:(t)/(1+t)")?,
                n,
            );
            let v = traversal::hamiltonian_obstruction(&ds)?;
            check(
                matches!(v.status, HamiltonStatus::Impossible(_)),
                "odd e-decomposable obstruction",
            )?;
            check(
                oracle::hamilton_search(&build_graph(&ds)?, budget)?.is_none(),
                "oracle confirms absence (e-decomposable)",
            )?;
        }
    }
    details.push("all three obstruction families oracle-confirmed for n <= 14".into());
    Ok(details)
}

fn crit_13_rproduct_rgb(seed: u64) -> Result<Vec<String>> {
    // the reference walk matrix
    let g = FamilyId::Pascal.spec(6);
    let h = RiordanGraphSpec::new(
        crate::parse_series_spec("rat:(1)/(1+t^2)")?,
        SeriesSpec::polynomial(&[2]),
        6,
    );
    let d = ops::rgb_walk_matrix(&g, &h)?;
    let expect: [[u64; 6]; 6] = [
        [0, 0, 0, 0, 0, 0],
        [1, 0, 0, 0, 0, 0],
        [1, 0, 0, 0, 0, 0],
        [2, 1, 0, 0, 0, 0],
        [2, 1, 0, 0, 0, 0],
        [2, 1, 1, 0, 0, 0],
    ];
    for i in 1..=6 {
        for j in 1..=6 {
            check(d.count(i, j) == expect[i - 1][j - 1], "walk count")?;
        }
    }
    check(d.count(5, 1) == 2, "omega_51 = 2")?;
    let prod = ops::r_product(&g, &h)?;
    let adj = build_graph(&prod)?;
    let sym = d.symmetrized_parity();
    for i in 1..=6usize {
        for j in 1..=6usize {
            check(
                (sym[i - 1][j - 1] == 1) == (i != j && adj.has_edge(i, j)),
                "walk parity = product adjacency",
            )?;
        }
    }

    // 200 random pairs, n <= 32
    let mut rng = SplitMix64::new(seed ^ 13);
    for _ in 0..200 {
        let n = 2 + rng.below(31);
        let a = random_any_spec(&mut rng, n);
        let b = random_any_spec(&mut rng, n);
        let d = ops::rgb_walk_matrix(&a, &b)?;
        let prod = ops::r_product(&a, &b)?;
        let adj = build_graph(&prod)?;
        let sym = d.symmetrized_parity();
        for i in 1..=n {
            for j in 1..=n {
                check(
                    (sym[i - 1][j - 1] == 1) == (i != j && adj.has_edge(i, j)),
                    "random walk parity = product adjacency",
                )?;
            }
        }
    }
    Ok(vec![
        "reference walk matrix D and D+D^T reproduced; omega_51 = 2".into(),
        "200 random pairs (n <= 32): symmetrized walk parity = R-product adjacency".into(),
    ])
}

fn crit_14_unlabeled(budget: &OracleBudget) -> Result<Vec<String>> {
    // all unlabeled graphs on at most 4 vertices
    let mut reps: Vec<Graph> = Vec::new();
    for n in 1..=4usize {
        let pairs: Vec<(usize, usize)> = (1..=n)
            .flat_map(|u| ((u + 1)..=n).map(move |v| (u, v)))
            .collect();
        let mut local: Vec<Graph> = Vec::new();
        for mask in 0u32..(1 << pairs.len()) {
            let mut g = Graph::empty(n);
            for (b, &(u, v)) in pairs.iter().enumerate() {
                if (mask >> b) & 1 == 1 {
                    g.add_edge(u, v);
                }
            }
            if !local
                .iter()
                .map(|h| oracle::isomorphic(&g, h, budget))
                .collect::<Result<Vec<bool>>>()?
                .iter()
                .any(|&b| b)
            {
                local.push(g);
            }
        }
        reps.extend(local);
    }
    check(reps.len() == 18, "18 unlabeled graphs on <= 4 vertices")?;
    for g in &reps {
        let found = oracle::is_riordan_unlabeled(g, budget)?;
        check(
            found.is_some(),
            "every small graph admits a generating pair",
        )?;
        let spec = found.unwrap();
        check(
            oracle::isomorphic(g, &build_graph(&spec)?, budget)?,
            "witness spec builds an isomorphic graph",
        )?;
    }

    // K4 plus an isolated vertex is not Riordan
    let mut k4x = Graph::empty(5);
    for u in 1..=4usize {
        for v in u + 1..=4 {
            k4x.add_edge(u, v);
        }
    }
    check(
        oracle::is_riordan_unlabeled(&k4x, budget)?.is_none(),
        "K4 + K1 rejected by exhaustive search",
    )?;
    Ok(vec![
        "all 18 unlabeled graphs on <= 4 vertices certified with witnessing specs".into(),
        "K4 u K1 certified non-representable over the 86 order-5 graphs".into(),
    ])
}

fn crit_15_algebra(seed: u64) -> Result<Vec<String>> {
    let mut rng = SplitMix64::new(seed ^ 15);
    let trunc = 26usize;
    let mut series_count = 0u64;
    for _ in 0..10_000 {
        let g = BitSeries::from_support(trunc, &random_poly(&mut rng, 12, &[]));
        let f =
            BitSeries::from_support(trunc, &random_poly(&mut rng, 12, &[(0, false), (1, true)]));
        let h = BitSeries::from_support(trunc, &random_poly(&mut rng, 12, &[]));
        series_count += 3;

        // Frobenius: (g o f)^2 = g o f^2
        let lhs = g.compose(&f)?.square();
        let rhs = g.compose(&f.square())?;
        let w = lhs.trunc().min(rhs.trunc());
        check(lhs.eq_window(&rhs, w), "Frobenius composition identity")?;

        // compositional inverse round trips
        let fbar = f.comp_inverse()?;
        let t = BitSeries::t(trunc);
        check(f.compose(&fbar)? == t, "f(fbar) = t")?;
        check(fbar.compose(&f)? == t, "fbar(f) = t")?;

        // Leibniz rule
        let left = g.mul(&h).derivative();
        let right = g.derivative().mul(&h).add(&g.mul(&h.derivative()));
        let w = left.trunc().min(right.trunc());
        check(left.eq_window(&right, w), "Leibniz rule")?;

        // ring laws and the substitution form of squaring
        check(g.mul(&h) == h.mul(&g), "mul commutes")?;
        check(g.add(&h).add(&h) == g, "add is an involution")?;
        let t2 = BitSeries::from_support(2 * trunc, &[2]);
        let sq = g.compose(&t2.restrict(trunc))?;
        let w = sq.trunc().min(g.square().trunc());
        check(sq.eq_window(&g.square(), w), "g(t)^2 = g(t^2)")?;
    }
    Ok(vec![format!(
        "{series_count} random series over 10000 rounds: Frobenius, inverse round-trip, \
         Leibniz, ring laws all exact"
    )])
}

/// Findings for the concluding conjectures; informational only.
pub fn conjecture_findings(budget: &OracleBudget) -> Vec<String> {
    let mut out = Vec::new();
    for k in 1..=5u32 {
        let n = 1usize << k;
        let spec = FamilyId::Catalan.spec(n);
        match build_graph(&spec).and_then(|g| oracle::diameter(&g, budget)) {
            Ok(Some(d)) => out.push(format!(
                "diam(CG_{n}) = {d} vs conjectured {k} -> {}",
                if d == k as usize {
                    "consistent"
                } else {
                    "NOT consistent"
                }
            )),
            _ => out.push(format!("diam(CG_{n}) unavailable")),
        }
    }
    // diameter comparison against the Pascal graph (first conjecture's
    // shape; known to fail in general, reported without assertion)
    let mut rng = SplitMix64::new(0xC0FFEE);
    for n in [8usize, 12, 16, 24, 32] {
        let pg = build_graph(&FamilyId::Pascal.spec(n)).unwrap();
        let dp = oracle::diameter(&pg, budget).unwrap().unwrap();
        let mut min_d = usize::MAX;
        let mut max_d = 0;
        for _ in 0..20 {
            let spec = random_io_bell_spec(&mut rng, n);
            if let Ok(Some(d)) = build_graph(&spec).and_then(|g| oracle::diameter(&g, budget)) {
                min_d = min_d.min(d);
                max_d = max_d.max(d);
            }
        }
        out.push(format!(
            "n={n}: diam(PG_n)={dp}; random io Bell diameters span [{min_d},{max_d}]"
        ));
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Suite {
    All,
    Figures,
    Theorems,
    Conjectures,
}

impl Suite {
    pub fn parse(s: &str) -> Option<Suite> {
        Some(match s {
            "all" => Suite::All,
            "figures" => Suite::Figures,
            "theorems" => Suite::Theorems,
            "conjectures" => Suite::Conjectures,
            _ => return None,
        })
    }
}

pub fn criterion(id: usize, seed: u64, budget: &OracleBudget) -> CriterionReport {
    match id {
        1 => run_criterion(1, "figure-reproduction", crit_01_figures),
        2 => run_criterion(2, "labeled-counting", crit_02_counting),
        3 => run_criterion(3, "order-3-census", crit_03_order3_census),
        4 => run_criterion(4, "a-z-sequences", || crit_04_sequences(seed)),
        5 => run_criterion(5, "decomposition", || crit_05_decomposition(seed)),
        6 => run_criterion(6, "io-ie-checks", crit_06_io_ie),
        7 => run_criterion(7, "edge-closed-forms", || crit_07_edge_counts(seed)),
        8 => run_criterion(8, "partition-clique-chi", || {
            crit_08_partition_clique_chromatic(budget)
        }),
        9 => run_criterion(9, "diameter-bounds", || crit_09_diameter(seed, budget)),
        10 => run_criterion(10, "fractal-cognates", crit_10_fractal),
        11 => run_criterion(11, "reverse-relabeling", || crit_11_reverse(seed)),
        12 => run_criterion(12, "euler-hamilton", || crit_12_euler_hamilton(budget)),
        13 => run_criterion(13, "r-product-walks", || crit_13_rproduct_rgb(seed)),
        14 => run_criterion(14, "unlabeled-small", || crit_14_unlabeled(budget)),
        15 => run_criterion(15, "series-algebra", || crit_15_algebra(seed)),
        _ => panic!("criterion ids run from 1 to 15"),
    }
}

pub struct SuiteOutcome {
    pub reports: Vec<CriterionReport>,
    pub findings: Vec<String>,
}

pub fn run_suite(suite: Suite, seed: u64, budget: &OracleBudget) -> SuiteOutcome {
    let ids: Vec<usize> = match suite {
        Suite::Figures => vec![1],
        Suite::Theorems => (2..=15).collect(),
        Suite::All => (1..=15).collect(),
        Suite::Conjectures => vec![],
    };
    let reports = ids
        .into_iter()
        .map(|id| criterion(id, seed, budget))
        .collect();
    let findings = if matches!(suite, Suite::All | Suite::Conjectures) {
        conjecture_findings(budget)
    } else {
        Vec::new()
    };
    SuiteOutcome { reports, findings }
}
