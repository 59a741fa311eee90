//! Ring sum, R-product, and the walk combinatorics connecting Riordan
//! matrix multiplication to length-3 colored walks.

use crate::error::{Error, Result};
use crate::graph::{build_graph, RiordanGraphSpec};
use crate::matrix::BinaryRiordanMatrix;
use crate::series::BitSeries;
use crate::spec_lang::SeriesSpec;
use serde_json::json;

pub(crate) fn window_poly_spec(s: &BitSeries, max_deg: usize) -> SeriesSpec {
    let sup: Vec<usize> = s.support().into_iter().filter(|&i| i <= max_deg).collect();
    SeriesSpec::polynomial(&sup)
}

/// Ring sum `G_n(g,f) (+) G_n(h,f) = G_n(g+h,f)`; edge sets combine by
/// symmetric difference, which is re-checked literally on the built graphs.
pub fn ring_sum(a: &RiordanGraphSpec, b: &RiordanGraphSpec) -> Result<RiordanGraphSpec> {
    if a.n != b.n {
        return Err(Error::IncompatibleOperands(format!(
            "ring sum needs equal orders, got {} and {}",
            a.n, b.n
        )));
    }
    let n = a.n;
    let (ga, fa) = a.expand()?;
    let (gb, fb) = b.expand()?;
    let w = n.min(fa.trunc()).min(fb.trunc());
    if !fa.eq_window(&fb, w) {
        return Err(Error::IncompatibleOperands(
            "ring sum needs a common f".into(),
        ));
    }
    let sum = ga.add(&gb);
    let out = RiordanGraphSpec::new(window_poly_spec(&sum, n), a.f.clone(), n);

    let left = build_graph(a)?;
    let right = build_graph(b)?;
    let got = build_graph(&out)?;
    for u in 1..=n {
        for v in u + 1..=n {
            assert_eq!(
                got.has_edge(u, v),
                left.has_edge(u, v) ^ right.has_edge(u, v),
                "ring sum is not the symmetric difference at ({u},{v})"
            );
        }
    }
    Ok(out)
}

/// R-product `G_n(g,f) (x) G_n(h,l) = G_n(g h(f), l(f))`.
pub fn r_product(a: &RiordanGraphSpec, b: &RiordanGraphSpec) -> Result<RiordanGraphSpec> {
    if a.n != b.n {
        return Err(Error::IncompatibleOperands(format!(
            "R-product needs equal orders, got {} and {}",
            a.n, b.n
        )));
    }
    let n = a.n;
    let (ga, fa) = a.expand()?;
    let (gb, fb) = b.expand()?;
    let hg = ga.mul(&gb.compose(&fa)?);
    let lf = fb.compose(&fa)?;
    Ok(RiordanGraphSpec::new(
        window_poly_spec(&hg, n),
        window_poly_spec(&lf, n),
        n,
    ))
}

/// Counts of red-green-blue walks between vertex pairs: the integer matrix
/// `D = B1 B2 B3` with `B1 = B(tg,f)_n`, `B2 = B(t,t)_n^T`, `B3 = B(th,l)_n`.
/// Entry `(i,j)` for `i > j` is the number of length-3 walks whose arcs come
/// from B1, B2, B3 in that order; its parity decides adjacency in the
/// R-product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkMatrix {
    n: usize,
    entries: Vec<Vec<u64>>,
}

impl WalkMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    /// 1-based walk count from `i` to `j`.
    pub fn count(&self, i: usize, j: usize) -> u64 {
        self.entries[i - 1][j - 1]
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "schema_version": "1",
            "n": self.n,
            "entries": self.entries,
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// `D + D^T` reduced mod 2, as a dense 0/1 matrix.
    pub fn symmetrized_parity(&self) -> Vec<Vec<u8>> {
        let n = self.n;
        let mut m = vec![vec![0u8; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = ((self.entries[i][j] + self.entries[j][i]) % 2) as u8;
            }
        }
        m
    }
}

fn matrix_as_rows(m: &BinaryRiordanMatrix) -> Vec<Vec<u64>> {
    let n = m.order();
    (0..n)
        .map(|i| (0..n).map(|j| u64::from(m.get(i, j))).collect())
        .collect()
}

fn int_product(a: &[Vec<u64>], b: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let n = a.len();
    let mut c = vec![vec![0u64; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == 0 {
                continue;
            }
            let aik = a[i][k];
            for j in 0..n {
                c[i][j] += aik * b[k][j];
            }
        }
    }
    c
}

pub fn rgb_walk_matrix(a: &RiordanGraphSpec, b: &RiordanGraphSpec) -> Result<WalkMatrix> {
    if a.n != b.n {
        return Err(Error::IncompatibleOperands(format!(
            "walk counting needs equal orders, got {} and {}",
            a.n, b.n
        )));
    }
    let n = a.n;
    let (ga, fa) = a.expand()?;
    let (gb, fb) = b.expand()?;
    let b1 = BinaryRiordanMatrix::build(&ga.shift_up(1), &fa, n)?;
    let b3 = BinaryRiordanMatrix::build(&gb.shift_up(1), &fb, n)?;
    // B2 = B(t,t)^T has ones exactly on the superdiagonal.
    let mut b2 = vec![vec![0u64; n]; n];
    for k in 0..n.saturating_sub(1) {
        b2[k][k + 1] = 1;
    }
    let d = int_product(
        &int_product(&matrix_as_rows(&b1), &b2),
        &matrix_as_rows(&b3),
    );
    // walks are only counted downwards: diagonal and upper triangle stay 0
    for (i, row) in d.iter().enumerate() {
        for (j, &c) in row.iter().enumerate() {
            assert!(j < i || c == 0, "unexpected walk count above the diagonal");
        }
    }
    Ok(WalkMatrix { n, entries: d })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::FamilyId;
    use crate::spec_lang::{parse_series_spec, BitPoly};

    fn spec(g: &str, f: &str, n: usize) -> RiordanGraphSpec {
        RiordanGraphSpec::new(
            parse_series_spec(g).unwrap(),
            parse_series_spec(f).unwrap(),
            n,
        )
    }

    #[test]
    fn ring_sum_examples() {
        // G (+) G is the null graph
        let g = FamilyId::Pascal.spec(8);
        let z = ring_sum(&g, &g).unwrap();
        assert!(build_graph(&z).unwrap().is_edgeless());
        // G (+) null = G
        let null = RiordanGraphSpec::new(SeriesSpec::zero(), FamilyId::Pascal.spec(8).f, 8);
        let same = ring_sum(&g, &null).unwrap();
        assert_eq!(build_graph(&same).unwrap(), build_graph(&g).unwrap());
        // Bell plus its derivative companion: (g,tg) (+) ((tg)',tg) = (tg',tg)
        let n = 10;
        let cat = FamilyId::Catalan.spec(n);
        let (cg, cf) = cat.expand().unwrap();
        let deriv = RiordanGraphSpec::new(
            super::window_poly_spec(&cf.derivative(), n),
            cat.f.clone(),
            n,
        );
        let sum = ring_sum(&cat, &deriv).unwrap();
        let tgp = cg.derivative().shift_up(1);
        let expect = RiordanGraphSpec::new(super::window_poly_spec(&tgp, n), cat.f.clone(), n);
        assert_eq!(build_graph(&sum).unwrap(), build_graph(&expect).unwrap());
    }

    #[test]
    fn ring_sum_rejects_mismatched_f() {
        let a = FamilyId::Pascal.spec(6);
        let b = FamilyId::Catalan.spec(6);
        assert!(matches!(
            ring_sum(&a, &b),
            Err(Error::IncompatibleOperands(_))
        ));
    }

    #[test]
    fn r_product_identity_and_fibonacci_example() {
        let n = 9;
        let g = FamilyId::Catalan.spec(n);
        let path = FamilyId::Path.spec(n);
        let same = r_product(&g, &path).unwrap();
        assert_eq!(build_graph(&same).unwrap(), build_graph(&g).unwrap());

        // Fibonacci (x) Pascal = G(1/(1-t-t^2), (t+t^2)/(1-t-t^2))
        let fib = FamilyId::Fibonacci.spec(n);
        let pas = FamilyId::Pascal.spec(n);
        let prod = r_product(&fib, &pas).unwrap();
        let expect = spec("rat:(1)/(1+t+t^2)", "rat:(t+t^2)/(1+t+t^2)", n);
        assert_eq!(build_graph(&prod).unwrap(), build_graph(&expect).unwrap());
    }

    #[test]
    fn walk_matrix_reference_example() {
        let n = 6;
        let g = FamilyId::Pascal.spec(n);
        let h = spec("rat:(1)/(1+t^2)", "poly:t^2", n);
        let d = rgb_walk_matrix(&g, &h).unwrap();
        let expect: [[u64; 6]; 6] = [
            [0, 0, 0, 0, 0, 0],
            [1, 0, 0, 0, 0, 0],
            [1, 0, 0, 0, 0, 0],
            [2, 1, 0, 0, 0, 0],
            [2, 1, 0, 0, 0, 0],
            [2, 1, 1, 0, 0, 0],
        ];
        for i in 1..=n {
            for j in 1..=n {
                assert_eq!(d.count(i, j), expect[i - 1][j - 1], "entry ({i},{j})");
            }
        }
        assert_eq!(d.count(5, 1), 2, "two walks from 5 to 1");

        // D + D^T mod 2 equals the adjacency of the R-product.
        let prod = r_product(&g, &h).unwrap();
        let adj = build_graph(&prod).unwrap();
        let sym = d.symmetrized_parity();
        let printed: [[u8; 6]; 6] = [
            [0, 1, 1, 0, 0, 0],
            [1, 0, 0, 1, 1, 1],
            [1, 0, 0, 0, 0, 1],
            [0, 1, 0, 0, 0, 0],
            [0, 1, 0, 0, 0, 0],
            [0, 1, 1, 0, 0, 0],
        ];
        for i in 1..=n {
            for j in 1..=n {
                assert_eq!(sym[i - 1][j - 1], printed[i - 1][j - 1]);
                assert_eq!(
                    sym[i - 1][j - 1] == 1,
                    i != j && adj.has_edge(i, j),
                    "walk parity vs product adjacency at ({i},{j})"
                );
            }
        }
    }

    #[test]
    fn zero_first_operand_gives_zero_walks() {
        let n = 6;
        let a = RiordanGraphSpec::new(SeriesSpec::zero(), SeriesSpec::polynomial(&[1]), n);
        let b = FamilyId::Pascal.spec(n);
        let d = rgb_walk_matrix(&a, &b).unwrap();
        for i in 1..=n {
            for j in 1..=n {
                assert_eq!(d.count(i, j), 0);
            }
        }
    }

    #[test]
    fn appell_class_is_closed_under_both_operations() {
        use crate::graph::classify_subgroup;
        let n = 10;
        let a = FamilyId::Toeplitz(BitPoly::from_support(&[0, 2, 4])).spec(n);
        let b = FamilyId::Toeplitz(BitPoly::from_support(&[1, 2])).spec(n);
        let sum = ring_sum(&a, &b).unwrap();
        let prod = r_product(&a, &b).unwrap();
        assert!(classify_subgroup(&sum).unwrap().appell);
        assert!(classify_subgroup(&prod).unwrap().appell);
    }
}
