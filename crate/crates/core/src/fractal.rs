//! Cognate vertex pairs, fractal window isomorphisms, reverse relabeling,
//! and binomial parity support.

use crate::error::{Error, Result};
use crate::graph::{build_graph, build_graph_series, RiordanGraphSpec};
use crate::matrix::is_proper;
use crate::ops::window_poly_spec;
use crate::series::BitSeries;
use serde_json::json;

/// The shift family of cognate pairs of `(i, j)`: all `(i + m 2^s, j + m 2^s)`
/// sharing the label distance and adjacency status of `(i, j)`.
#[derive(Clone, Debug)]
pub struct CognateFamily {
    pub i: usize,
    pub j: usize,
    /// Least `s >= 0` with `2^s >= (i - j) / (ell + 1)`.
    pub s: u32,
    /// Zero-run length after the leading 1 of the binary A-sequence.
    pub ell: usize,
    pub m_lo: i64,
    pub m_hi: i64,
    pub pairs: Vec<(usize, usize)>,
}

impl CognateFamily {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "schema_version": "1",
            "pair": [self.j, self.i],
            "s": self.s,
            "ell": self.ell,
            "m_range": [self.m_lo, self.m_hi],
            "cognates": self.pairs,
            "verified": true,
        })
    }
}

fn a_sequence_of(f: &BitSeries) -> Result<BitSeries> {
    f.comp_inverse()?.div_t(1)?.recip()
}

/// Zero-run length of the A-sequence after its leading 1, within the window
/// relevant at order n. `None` means the window looks like the Appell
/// A-sequence (no later 1 at all).
fn gap_ell(a: &BitSeries, n: usize) -> Option<usize> {
    let w = a.trunc().min(n.saturating_sub(2).max(1));
    (1..w).find(|&k| a.coeff(k)).map(|k| k - 1)
}

fn shift_params(spec: &RiordanGraphSpec, i: usize, j: usize) -> Result<(usize, usize, u32)> {
    let (g, f) = spec.expand()?;
    if !is_proper(&g, &f) {
        return Err(Error::Improper("cognate shifts need a proper spec".into()));
    }
    let n = spec.n;
    if i == j || i < 1 || j < 1 || i > n || j > n {
        return Err(Error::NotApplicable(format!(
            "vertex pair ({i},{j}) out of range for order {n}"
        )));
    }
    let (hi, lo) = if i > j { (i, j) } else { (j, i) };
    let w = n.min(f.trunc());
    if f.eq_window(&BitSeries::t(w), w) {
        return Err(Error::NotApplicable(
            "the shift family needs f distinct from t (Appell specs are \
             Toeplitz and shift-invariant outright)"
                .into(),
        ));
    }
    let a = a_sequence_of(&f)?;
    let ell = gap_ell(&a, n).ok_or_else(|| {
        Error::NotApplicable("A-sequence has no second 1 inside the window".into())
    })?;
    // least s with 2^s >= (hi - lo) / (ell + 1), as reals
    let mut s = 0u32;
    while ((1usize << s) * (ell + 1)) < hi - lo {
        s += 1;
    }
    Ok((hi, lo, s))
}

/// All cognate pairs of `(i, j)` of the shift form, each verified against
/// the built adjacency. Only the shift family is produced; other cognate
/// pairs can exist and are not searched for.
pub fn cognate_pairs(spec: &RiordanGraphSpec, i: usize, j: usize) -> Result<CognateFamily> {
    let (hi, lo, s) = shift_params(spec, i, j)?;
    let n = spec.n;
    let step = 1i64 << s;
    let m_lo = (1 - lo as i64).div_euclid(step) + i64::from((1 - lo as i64).rem_euclid(step) != 0);
    let m_hi = (n as i64 - hi as i64).div_euclid(step);
    let graph = build_graph(spec)?;
    let base = graph.has_edge(lo, hi);
    let mut pairs = Vec::new();
    let mut m = m_lo;
    while m <= m_hi {
        let a = (lo as i64 + m * step) as usize;
        let b = (hi as i64 + m * step) as usize;
        assert_eq!(
            graph.has_edge(a, b),
            base,
            "shift cognate ({a},{b}) disagrees with ({lo},{hi})"
        );
        pairs.push((a, b));
        m += 1;
    }
    let (_, f) = spec.expand()?;
    let a = a_sequence_of(&f)?;
    Ok(CognateFamily {
        i: hi,
        j: lo,
        s,
        ell: gap_ell(&a, n).unwrap(),
        m_lo,
        m_hi,
        pairs,
    })
}

/// Window self-similarity: the induced subgraphs on `{j..=i}` and on the
/// shifted window `{j+m*2^s ..= i+m*2^s}` are compared edge by edge under
/// the explicit shift map (no isomorphism search).
pub fn fractal_isomorphism_check(
    spec: &RiordanGraphSpec,
    i: usize,
    j: usize,
    m: i64,
) -> Result<bool> {
    let (hi, lo, s) = shift_params(spec, i, j)?;
    let n = spec.n;
    let step = 1i64 << s;
    let lo2 = lo as i64 + m * step;
    let hi2 = hi as i64 + m * step;
    if lo2 < 1 || hi2 > n as i64 {
        return Err(Error::NotApplicable(format!(
            "shifted window ({lo2},{hi2}) leaves 1..={n}"
        )));
    }
    let graph = build_graph(spec)?;
    for a in lo..=hi {
        for b in a + 1..=hi {
            let a2 = (a as i64 + m * step) as usize;
            let b2 = (b as i64 + m * step) as usize;
            if graph.has_edge(a, b) != graph.has_edge(a2, b2) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Relabel every vertex `i` as `n+1-i`: the result is again a Riordan graph,
/// generated by `(g(fbar) fbar' (t/fbar)^(n-1), fbar)`. The returned spec's
/// adjacency is asserted equal to the index-reversed adjacency.
pub fn reverse_relabel(spec: &RiordanGraphSpec) -> Result<RiordanGraphSpec> {
    let (g, f) = spec.expand()?;
    let n = spec.n;
    if f.trunc() < 2 || !f.coeff(1) {
        return Err(Error::NotInvertible);
    }
    let fbar = f.comp_inverse()?;
    let a = fbar.div_t(1)?.recip()?; // t/fbar
    let an = a.pow(n.saturating_sub(1), a.trunc())?;
    let rg = g.compose(&fbar)?.mul(&fbar.derivative()).mul(&an);
    let out = RiordanGraphSpec::new(window_poly_spec(&rg, n), window_poly_spec(&fbar, n), n);
    let direct = build_graph_series(&g, &f, n)?.reversed();
    let via_spec = build_graph(&out)?;
    assert_eq!(
        via_spec, direct,
        "reverse relabeling spec does not reproduce the reversed adjacency"
    );
    Ok(out)
}

/// Binomial coefficient parity via the digit-domination rule:
/// `C(m, k)` is odd iff every base-2 digit of `k` is at most the
/// corresponding digit of `m`, i.e. `k AND m == k`.
pub fn lucas_binomial(m: u64, k: u64) -> u8 {
    u8::from(k & m == k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::FamilyId;
    use crate::matrix::riordan_multiply;
    use crate::spec_lang::parse_series_spec;

    #[test]
    fn catalan_cognates_of_1_5() {
        let fam = cognate_pairs(&FamilyId::Catalan.spec(9), 1, 5).unwrap();
        assert_eq!(fam.ell, 0);
        assert_eq!(fam.s, 2);
        assert_eq!(fam.pairs, vec![(1, 5), (5, 9)]);

        let fam = cognate_pairs(&FamilyId::Catalan.spec(15), 1, 5).unwrap();
        assert_eq!(fam.pairs, vec![(1, 5), (5, 9), (9, 13)]);
    }

    #[test]
    fn zero_shift_is_reflexive() {
        let fam = cognate_pairs(&FamilyId::Pascal.spec(10), 4, 2).unwrap();
        assert!(fam.pairs.contains(&(2, 4)));
        assert!(fractal_isomorphism_check(&FamilyId::Pascal.spec(10), 4, 2, 0).unwrap());
    }

    #[test]
    fn appell_specs_are_refused() {
        assert!(matches!(
            cognate_pairs(&FamilyId::Complete.spec(8), 1, 3),
            Err(Error::NotApplicable(_))
        ));
    }

    #[test]
    fn catalan_window_isomorphisms_at_15() {
        let spec = FamilyId::Catalan.spec(15);
        for m in [1, 2] {
            assert!(fractal_isomorphism_check(&spec, 5, 1, m).unwrap());
        }
        assert!(matches!(
            fractal_isomorphism_check(&spec, 5, 1, 3),
            Err(Error::NotApplicable(_))
        ));
    }

    #[test]
    fn pascal_window_isomorphism_at_17() {
        assert!(fractal_isomorphism_check(&FamilyId::Pascal.spec(17), 5, 1, 1).unwrap());
    }

    #[test]
    fn reverse_relabel_examples() {
        // path is reversal-symmetric
        let p = reverse_relabel(&FamilyId::Path.spec(7)).unwrap();
        assert_eq!(
            crate::graph::build_graph(&p).unwrap(),
            crate::graph::build_graph(&FamilyId::Path.spec(7)).unwrap()
        );
        // Catalan at n = 2^j - 1 reverses to (1+t, t+t^2)
        let r = reverse_relabel(&FamilyId::Catalan.spec(7)).unwrap();
        let expect = RiordanGraphSpec::new(
            parse_series_spec("poly:1+t").unwrap(),
            parse_series_spec("poly:t+t^2").unwrap(),
            7,
        );
        assert_eq!(
            crate::graph::build_graph(&r).unwrap(),
            crate::graph::build_graph(&expect).unwrap()
        );
        // and (1+t, t+t^2) is the group inverse of (C, tC)
        let (c, tc) = {
            let (g, f) = FamilyId::Catalan.spec(7).expand().unwrap();
            (g, f)
        };
        let (rg, rf) = {
            let (g, f) = expect.expand().unwrap();
            (g, f)
        };
        let (pg, pf) = riordan_multiply(&c, &tc, &rg, &rf).unwrap();
        assert_eq!(pg.support(), vec![0]);
        assert_eq!(pf.support(), vec![1]);
    }

    #[test]
    fn reverse_relabel_is_involution() {
        let spec = RiordanGraphSpec::new(
            parse_series_spec("poly:1+t+t^4").unwrap(),
            parse_series_spec("poly:t+t^2+t^3").unwrap(),
            10,
        );
        let once = reverse_relabel(&spec).unwrap();
        let twice = reverse_relabel(&once).unwrap();
        assert_eq!(
            crate::graph::build_graph(&twice).unwrap(),
            crate::graph::build_graph(&spec).unwrap()
        );
    }

    #[test]
    fn binomial_parity() {
        assert_eq!(lucas_binomial(5, 0), 1);
        assert_eq!(lucas_binomial(5, 5), 1);
        assert_eq!(lucas_binomial(5, 2), 0); // C(5,2) = 10
                                             // C(2^j + k - 2, k) even for 2 <= k <= 2^j - 3, j = 4
        let j = 4u64;
        for k in 2..=(1 << j) - 3 {
            assert_eq!(lucas_binomial((1 << j) + k - 2, k), 0, "k={k}");
        }
        // exhaustive against additive Pascal recurrence
        let mut row = vec![1u64];
        for m in 0..=64u64 {
            for (k, &parity) in row.iter().enumerate() {
                assert_eq!(lucas_binomial(m, k as u64), (parity % 2) as u8);
            }
            let mut next = vec![1u64];
            for w in row.windows(2) {
                next.push((w[0] + w[1]) % 2);
            }
            next.push(1);
            row = next;
        }
    }
}
