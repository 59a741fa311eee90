//! Finite binary Riordan matrices, their A/Z-sequence characterizations,
//! group operations, and small-order enumeration.

use crate::bits::BitBuf;
use crate::error::{Error, Result};
use crate::series::BitSeries;
use serde_json::json;

/// An n-by-n lower triangular (0,1) matrix with entry `(i,j) = [t^i] g f^j`
/// mod 2 when a generator is attached.
///
/// Equality and hashing look at the entries only; the generator is a
/// back-reference, not part of the value.
#[derive(Clone, Debug)]
pub struct BinaryRiordanMatrix {
    order: usize,
    rows: Vec<BitBuf>,
    generator: Option<(BitSeries, BitSeries)>,
}

impl PartialEq for BinaryRiordanMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.rows == other.rows
    }
}

impl Eq for BinaryRiordanMatrix {}

impl std::hash::Hash for BinaryRiordanMatrix {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.order.hash(state);
        self.rows.hash(state);
    }
}

/// The pair of sequences that rebuild a proper matrix row by row:
/// `A(t) = t / fbar` and `g = 1/(1 - t Z(f))`.
#[derive(Clone, Debug)]
pub struct SequencePair {
    pub a: BitSeries,
    pub z: BitSeries,
    /// Length of the zero run following `a_0` (None when no later 1 exists
    /// inside the window, i.e. the matrix behaves like an Appell matrix).
    pub gap_ell: Option<usize>,
}

impl BinaryRiordanMatrix {
    /// Leading principal submatrix of order `n` of `B(g,f)`; column `j+1` is
    /// built from column `j` by one carry-less multiplication with `f`.
    pub fn build(g: &BitSeries, f: &BitSeries, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSpec("matrix order must be >= 1".into()));
        }
        let have = g.trunc().min(f.trunc());
        if have < n {
            return Err(Error::Precision { need: n, have });
        }
        if f.coeff(0) {
            return Err(Error::InvalidSpec(
                "matrix generator f must satisfy f(0)=0".into(),
            ));
        }
        let mut rows = vec![BitBuf::zeros(n); n];
        let mut col = g.restrict(n);
        let fr = f.restrict(n);
        for j in 0..n {
            if j > 0 {
                col = col.mul(&fr);
            }
            for i in col.support() {
                if i >= j {
                    rows[i].set(j, true);
                }
            }
            if col.is_zero() {
                break;
            }
        }
        Ok(BinaryRiordanMatrix {
            order: n,
            rows,
            generator: Some((g.clone(), f.clone())),
        })
    }

    /// Wrap raw rows (used by enumeration tests and the text format).
    pub fn from_rows(rows: Vec<BitBuf>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidSpec("matrix order must be >= 1".into()));
        }
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::InvalidSpec("ragged matrix rows".into()));
            }
            if r.ones().into_iter().any(|j| j > i) {
                return Err(Error::InvalidSpec("matrix must be lower triangular".into()));
            }
        }
        Ok(BinaryRiordanMatrix {
            order: n,
            rows,
            generator: None,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn rows(&self) -> &[BitBuf] {
        &self.rows
    }

    pub fn generator(&self) -> Option<&(BitSeries, BitSeries)> {
        self.generator.as_ref()
    }

    pub fn count_ones(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones()).sum()
    }

    /// Invertible over GF(2) iff every diagonal entry is 1, which for a
    /// generated matrix means g(0)=1, f(0)=0, f'(0)=1.
    pub fn is_invertible(&self) -> bool {
        (0..self.order).all(|i| self.rows[i].get(i))
    }

    /// Matrix product mod 2.
    pub fn multiply(&self, other: &BinaryRiordanMatrix) -> BinaryRiordanMatrix {
        assert_eq!(self.order, other.order, "order mismatch");
        let n = self.order;
        let mut rows = vec![BitBuf::zeros(n); n];
        for (out, mine) in rows.iter_mut().zip(&self.rows) {
            for k in mine.ones() {
                out.xor_assign(&other.rows[k]);
            }
        }
        BinaryRiordanMatrix {
            order: n,
            rows,
            generator: None,
        }
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n).map(|i| BitBuf::from_indices(n, &[i])).collect();
        BinaryRiordanMatrix {
            order: n,
            rows,
            generator: None,
        }
    }

    /// `E * M^T * E` where `E` is the backward identity.
    pub fn flip_transpose_matrix(&self) -> BinaryRiordanMatrix {
        let n = self.order;
        let mut rows = vec![BitBuf::zeros(n); n];
        for i in 0..n {
            for j in self.rows[i].ones() {
                // transpose: (j,i); flip both indices: (n-1-j, n-1-i)
                rows[n - 1 - j].set(n - 1 - i, true);
            }
        }
        BinaryRiordanMatrix {
            order: n,
            rows,
            generator: None,
        }
    }

    /// Recover the generating pair (to the order window) from the entries:
    /// `g` is column 0 and `f = col_1 / g` once the matrix is proper.
    pub fn window_generator(&self) -> Result<(BitSeries, BitSeries)> {
        if let Some((g, f)) = &self.generator {
            return Ok((g.restrict(self.order), f.restrict(self.order)));
        }
        if !self.is_invertible() {
            return Err(Error::Improper(
                "cannot recover (g,f) from a non-invertible matrix".into(),
            ));
        }
        let n = self.order;
        let col = |j: usize| {
            let ones: Vec<usize> = (j..n).filter(|&i| self.rows[i].get(j)).collect();
            BitSeries::from_support(n, &ones)
        };
        let g = col(0);
        if n == 1 {
            return Ok((g, BitSeries::zero(1)));
        }
        let f = col(1).div(&g)?;
        Ok((g, f))
    }

    /// A- and Z-sequences of a proper matrix. The A-sequence is computed
    /// analytically as `t / fbar` and independently validated against the
    /// row recurrence on every entry; disagreement is a bug, not a domain
    /// error, and panics.
    pub fn sequences(&self) -> Result<SequencePair> {
        if !self.is_invertible() {
            return Err(Error::Improper(
                "A/Z-sequences exist only for proper matrices".into(),
            ));
        }
        if self.order < 2 {
            return Err(Error::NotApplicable("A/Z-sequences need order >= 2".into()));
        }
        let n = self.order;
        let (_, f) = self.window_generator()?;
        let fbar = f.comp_inverse()?;
        let a = fbar.div_t(1)?.recip()?; // t/fbar, window n-1

        // Validate against b_{i+1,j+1} = sum_k a_k b_{i,j+k} on every entry.
        for i in 0..n - 1 {
            for j in 0..=i {
                let mut s = false;
                for k in j..=i {
                    if self.rows[i].get(k) && a.coeff(k - j) {
                        s = !s;
                    }
                }
                assert_eq!(
                    self.rows[i + 1].get(j + 1),
                    s,
                    "A-sequence recurrence mismatch at ({},{})",
                    i + 1,
                    j + 1
                );
            }
        }

        // Z from the triangular system b_{i+1,0} = sum_k z_k b_{i,k}.
        let mut z = BitBuf::zeros(n - 1);
        for m in 0..n - 1 {
            let mut s = self.rows[m + 1].get(0);
            for k in 0..m {
                if z.get(k) && self.rows[m].get(k) {
                    s = !s;
                }
            }
            // coefficient of z_m is b_{m,m} = 1
            if s {
                z.set(m, true);
            }
        }
        let z = BitSeries::from_bitbuf(z);

        let gap_ell = a.support().into_iter().find(|&k| k >= 1).map(|k| k - 1);
        Ok(SequencePair { a, z, gap_ell })
    }

    /// Rebuild a matrix of the same order from `(a, z)` starting from the
    /// top-left 1. Used to check the reconstruction invariant.
    pub fn rebuild_from_sequences(pair: &SequencePair, n: usize) -> Self {
        let mut rows = vec![BitBuf::zeros(n); n];
        rows[0].set(0, true);
        for i in 0..n - 1 {
            // column 0 from Z
            let mut s = false;
            for k in 0..=i {
                if rows[i].get(k) && k < pair.z.trunc() && pair.z.coeff(k) {
                    s = !s;
                }
            }
            rows[i + 1].set(0, s);
            // later columns from A
            for j in 0..=i {
                let mut s = false;
                for k in j..=i {
                    if rows[i].get(k) && pair.a.coeff(k - j) {
                        s = !s;
                    }
                }
                rows[i + 1].set(j + 1, s);
            }
        }
        BinaryRiordanMatrix {
            order: n,
            rows,
            generator: None,
        }
    }

    /// Text format: one row per line, space-separated bits, lower triangle.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for i in 0..self.order {
            let row: Vec<&str> = (0..=i)
                .map(|j| if self.rows[i].get(j) { "1" } else { "0" })
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut rows_bits: Vec<Vec<bool>> = Vec::new();
        for (i, line) in text.lines().filter(|l| !l.trim().is_empty()).enumerate() {
            let bits: Result<Vec<bool>> = line
                .split_whitespace()
                .map(|tok| match tok {
                    "0" => Ok(false),
                    "1" => Ok(true),
                    _ => Err(Error::Parse(format!("bad bit `{tok}` in matrix text"))),
                })
                .collect();
            let bits = bits?;
            if bits.len() != i + 1 {
                return Err(Error::Parse(format!(
                    "row {} must hold {} bits, found {}",
                    i + 1,
                    i + 1,
                    bits.len()
                )));
            }
            rows_bits.push(bits);
        }
        let n = rows_bits.len();
        if n == 0 {
            return Err(Error::Parse("empty matrix text".into()));
        }
        let rows = rows_bits
            .into_iter()
            .map(|bits| {
                let ones: Vec<usize> = bits
                    .iter()
                    .enumerate()
                    .filter_map(|(j, &b)| b.then_some(j))
                    .collect();
                BitBuf::from_indices(n, &ones)
            })
            .collect();
        Self::from_rows(rows)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<Vec<u8>> = (0..self.order)
            .map(|i| (0..=i).map(|j| u8::from(self.rows[i].get(j))).collect())
            .collect();
        let seqs = self.sequences().ok();
        let bits =
            |s: &BitSeries| -> Vec<u8> { (0..s.trunc()).map(|k| u8::from(s.coeff(k))).collect() };
        json!({
            "schema_version": "1",
            "order": self.order,
            "rows": rows,
            "a_seq": seqs.as_ref().map(|s| bits(&s.a)),
            "z_seq": seqs.as_ref().map(|s| bits(&s.z)),
        })
    }
}

/// Proper over GF(2): g(0)=1, f(0)=0, f'(0)=1.
pub fn is_proper(g: &BitSeries, f: &BitSeries) -> bool {
    g.coeff(0) && !f.coeff(0) && f.trunc() >= 2 && f.coeff(1)
}

/// Riordan multiplication `(g,f) * (h,l) = (g h(f), l(f))` at series level.
pub fn riordan_multiply(
    g: &BitSeries,
    f: &BitSeries,
    h: &BitSeries,
    l: &BitSeries,
) -> Result<(BitSeries, BitSeries)> {
    let hf = h.compose(f)?;
    let lf = l.compose(f)?;
    Ok((g.mul(&hf), lf))
}

/// Generating pair of the flip-transpose `E M^T E` of the order-n matrix of
/// a proper pair: `(g(fbar) * fbar' * (t/fbar)^n, fbar)`.
pub fn flip_transpose(g: &BitSeries, f: &BitSeries, n: usize) -> Result<(BitSeries, BitSeries)> {
    if !is_proper(g, f) {
        return Err(Error::Improper(
            "flip-transpose needs a proper (g,f)".into(),
        ));
    }
    let fbar = f.comp_inverse()?;
    let a = fbar.div_t(1)?.recip()?; // t/fbar
    let t = a.trunc();
    let an = a.pow(n, t)?;
    let gf = g.compose(&fbar)?;
    let res_g = gf.mul(&fbar.derivative()).mul(&an);
    Ok((res_g, fbar))
}

/// Census of all distinct binary Riordan matrices of order `n`.
pub struct MatrixCensus {
    pub total: usize,
    pub invertible: usize,
    pub matrices: Vec<BinaryRiordanMatrix>,
}

/// Enumerate all order-n binary Riordan matrices by iterating coefficient
/// windows of g (degree < n) and f (degree < n, f(0)=0), deduplicating by
/// the packed rows.
pub fn enumerate_order_n(n: usize) -> Result<MatrixCensus> {
    if n == 0 {
        return Err(Error::InvalidSpec("order must be >= 1".into()));
    }
    if n > 6 {
        return Err(Error::Budget(format!(
            "matrix enumeration is limited to order 6 (got {n}); \
             the window count grows as 4^n"
        )));
    }
    let mut seen = std::collections::HashSet::new();
    let mut matrices = Vec::new();
    for gbits in 0u64..(1 << n) {
        let g = BitSeries::from_support(
            n,
            &(0..n).filter(|k| (gbits >> k) & 1 == 1).collect::<Vec<_>>(),
        );
        for fbits in 0u64..(1 << (n - 1)) {
            let f = BitSeries::from_support(
                n,
                &(1..n)
                    .filter(|k| (fbits >> (k - 1)) & 1 == 1)
                    .collect::<Vec<_>>(),
            );
            let m = BinaryRiordanMatrix::build(&g, &f, n)?;
            if seen.insert(m.rows.clone()) {
                matrices.push(m);
            }
        }
    }
    let invertible = matrices.iter().filter(|m| m.is_invertible()).count();
    Ok(MatrixCensus {
        total: matrices.len(),
        invertible,
        matrices,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec_lang::{NamedSeries, SeriesSpec};

    fn named(n: NamedSeries, trunc: usize) -> BitSeries {
        SeriesSpec::Named(n).expand(trunc).unwrap()
    }

    fn pascal_pair(trunc: usize) -> (BitSeries, BitSeries) {
        (
            named(NamedSeries::PascalG, trunc),
            named(NamedSeries::PascalF, trunc),
        )
    }

    fn catalan_pair(trunc: usize) -> (BitSeries, BitSeries) {
        let c = named(NamedSeries::Catalan, trunc);
        (c.clone(), c.shift_up(1).restrict(trunc))
    }

    #[test]
    fn pascal_mod2_rows() {
        let (g, f) = pascal_pair(8);
        let m = BinaryRiordanMatrix::build(&g, &f, 5).unwrap();
        let expect = [
            vec![1],
            vec![1, 1],
            vec![1, 0, 1],
            vec![1, 1, 1, 1],
            vec![1, 0, 0, 0, 1],
        ];
        for (i, row) in expect.iter().enumerate() {
            for (j, &b) in row.iter().enumerate() {
                assert_eq!(m.get(i, j), b == 1, "entry ({i},{j})");
            }
        }
    }

    #[test]
    fn identity_and_zero_matrices() {
        let one = BitSeries::one(6);
        let t = BitSeries::t(6);
        let m = BinaryRiordanMatrix::build(&one, &t, 4).unwrap();
        assert_eq!(m, BinaryRiordanMatrix::identity(4));
        let z = BitSeries::zero(6);
        let zm = BinaryRiordanMatrix::build(&z, &t, 4).unwrap();
        assert_eq!(zm.count_ones(), 0);
    }

    #[test]
    fn properness() {
        let (g, f) = catalan_pair(10);
        assert!(is_proper(&g, &f));
        // (1, t^2): f'(0)=0
        assert!(!is_proper(
            &BitSeries::one(6),
            &BitSeries::from_support(6, &[2])
        ));
        // (1/(1-t), 0)
        assert!(!is_proper(
            &named(NamedSeries::Geometric, 6),
            &BitSeries::zero(6)
        ));
    }

    #[test]
    fn pascal_sequences() {
        let (g, f) = pascal_pair(10);
        let m = BinaryRiordanMatrix::build(&g, &f, 8).unwrap();
        let sp = m.sequences().unwrap();
        assert_eq!(sp.a.support(), vec![0, 1], "A = (1,1,0,...)");
        assert_eq!(sp.z.support(), vec![0], "Z = (1,0,...)");
        assert_eq!(sp.gap_ell, Some(0));
        let rebuilt = BinaryRiordanMatrix::rebuild_from_sequences(&sp, 8);
        assert_eq!(rebuilt.rows(), m.rows());
    }

    #[test]
    fn catalan_and_motzkin_sequences() {
        let (g, f) = catalan_pair(12);
        let m = BinaryRiordanMatrix::build(&g, &f, 10).unwrap();
        let sp = m.sequences().unwrap();
        assert_eq!(sp.a.support(), (0..9).collect::<Vec<_>>(), "A all ones");
        assert_eq!(sp.z.support(), (0..9).collect::<Vec<_>>(), "Z all ones");

        let mo = named(NamedSeries::Motzkin, 12);
        let mf = mo.shift_up(1).restrict(12);
        let m = BinaryRiordanMatrix::build(&mo, &mf, 10).unwrap();
        let sp = m.sequences().unwrap();
        assert_eq!(sp.a.support(), vec![0, 1, 2], "A = 1+t+t^2");
    }

    #[test]
    fn identity_matrix_z_sequence_is_zero() {
        let m = BinaryRiordanMatrix::build(&BitSeries::one(8), &BitSeries::t(8), 6).unwrap();
        let sp = m.sequences().unwrap();
        assert!(sp.z.is_zero(), "first column e_0 forces Z = 0");
        assert_eq!(sp.a.support(), vec![0]);
        assert_eq!(sp.gap_ell, None);
    }

    #[test]
    fn sequences_need_proper_matrix() {
        let g = BitSeries::from_support(6, &[1]);
        let m = BinaryRiordanMatrix::build(&g, &BitSeries::t(6), 4).unwrap();
        assert!(matches!(m.sequences(), Err(Error::Improper(_))));
    }

    #[test]
    fn riordan_multiply_examples() {
        let t8 = 8;
        let (gp, fp) = pascal_pair(t8);
        // (g,t)*(1,f) = (g,f)
        let (rg, rf) = riordan_multiply(&gp, &BitSeries::t(t8), &BitSeries::one(t8), &fp).unwrap();
        assert!(rg.eq_window(&gp, t8));
        assert!(rf.eq_window(&fp, t8));
        // (g,f)*(1,t) = (g,f)
        let (rg, rf) = riordan_multiply(&gp, &fp, &BitSeries::one(t8), &BitSeries::t(t8)).unwrap();
        assert!(rg.eq_window(&gp, t8));
        assert!(rf.eq_window(&fp, t8));
        // (C,tC) * (1+t, t+t^2) = (1,t)
        let (c, tc) = catalan_pair(t8);
        let (rg, rf) = riordan_multiply(
            &c,
            &tc,
            &BitSeries::from_support(t8, &[0, 1]),
            &BitSeries::from_support(t8, &[1, 2]),
        )
        .unwrap();
        assert_eq!(rg.support(), vec![0]);
        assert_eq!(rf.support(), vec![1]);
    }

    #[test]
    fn multiply_homomorphism() {
        let n = 7;
        let (gp, fp) = pascal_pair(16);
        let (gc, fc) = catalan_pair(16);
        let (rg, rf) = riordan_multiply(&gp, &fp, &gc, &fc).unwrap();
        let lhs = BinaryRiordanMatrix::build(&rg, &rf, n).unwrap();
        let rhs = BinaryRiordanMatrix::build(&gp, &fp, n)
            .unwrap()
            .multiply(&BinaryRiordanMatrix::build(&gc, &fc, n).unwrap());
        assert_eq!(lhs.rows(), rhs.rows());
    }

    #[test]
    fn flip_transpose_matches_matrix_flip() {
        let n = 10;
        let (g, f) = catalan_pair(16);
        let (rg, rf) = flip_transpose(&g, &f, n).unwrap();
        let direct = BinaryRiordanMatrix::build(&g, &f, n)
            .unwrap()
            .flip_transpose_matrix();
        let via_series = BinaryRiordanMatrix::build(&rg, &rf, n).unwrap();
        assert_eq!(direct.rows(), via_series.rows());
        // identity is symmetric under flip-transpose
        let (ig, if_) = flip_transpose(&BitSeries::one(8), &BitSeries::t(8), 5).unwrap();
        assert_eq!(ig.support(), vec![0]);
        assert_eq!(if_.support(), vec![1]);
    }

    #[test]
    fn catalan_flip_at_order_seven() {
        // E B(C,tC)_7^T E = B((1/(1+t))^8 window, t+t^2)_7, and the window
        // of (1/(1+t))^8 = 1/(1+t^8) below degree 7 is just 1
        let (g, f) = catalan_pair(16);
        let (rg, rf) = flip_transpose(&g, &f, 7).unwrap();
        assert!(rg.eq_window(&BitSeries::one(7), 7));
        assert_eq!(rf.support(), vec![1, 2]);
        let direct = BinaryRiordanMatrix::build(&g, &f, 7)
            .unwrap()
            .flip_transpose_matrix();
        let closed =
            BinaryRiordanMatrix::build(&BitSeries::one(8), &BitSeries::from_support(8, &[1, 2]), 7)
                .unwrap();
        assert_eq!(direct.rows(), closed.rows());
    }

    #[test]
    fn flip_transpose_is_involution() {
        let n = 9;
        let g = BitSeries::from_support(16, &[0, 2, 3]);
        let f = BitSeries::from_support(16, &[1, 3, 4]);
        let (rg, rf) = flip_transpose(&g, &f, n).unwrap();
        let (bg, bf) = flip_transpose(&rg, &rf, n).unwrap();
        let orig = BinaryRiordanMatrix::build(&g, &f, n).unwrap();
        let back = BinaryRiordanMatrix::build(&bg, &bf, n).unwrap();
        assert_eq!(orig.rows(), back.rows());
    }

    #[test]
    fn census_order_3() {
        let census = enumerate_order_n(3).unwrap();
        assert_eq!(census.total, 22);
        assert_eq!(census.invertible, 8);
    }

    #[test]
    fn census_order_1_and_guard() {
        let census = enumerate_order_n(1).unwrap();
        assert_eq!(census.total, 2);
        assert!(matches!(enumerate_order_n(7), Err(Error::Budget(_))));
    }

    #[test]
    fn census_group_structure_is_dihedral() {
        let census = enumerate_order_n(3).unwrap();
        let units: Vec<_> = census
            .matrices
            .iter()
            .filter(|m| m.is_invertible())
            .collect();
        assert_eq!(units.len(), 8);
        let id = BinaryRiordanMatrix::identity(3);
        // closure
        for a in &units {
            for b in &units {
                let p = a.multiply(b);
                assert!(units.iter().any(|u| u.rows() == p.rows()));
            }
        }
        // element orders: {1,2,2,2,2,2,4,4}
        let mut orders: Vec<usize> = units
            .iter()
            .map(|m| {
                let mut p = (*m).clone();
                let mut k = 1;
                while p.rows() != id.rows() {
                    p = p.multiply(m);
                    k += 1;
                    assert!(k <= 8);
                }
                k
            })
            .collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![1, 2, 2, 2, 2, 2, 4, 4]);
        // every element has an inverse
        for a in &units {
            assert!(units.iter().any(|b| a.multiply(b).rows() == id.rows()));
        }
    }

    #[test]
    fn text_roundtrip() {
        let (g, f) = pascal_pair(8);
        let m = BinaryRiordanMatrix::build(&g, &f, 5).unwrap();
        let txt = m.to_text();
        let back = BinaryRiordanMatrix::from_text(&txt).unwrap();
        assert_eq!(m.rows(), back.rows());
    }

    #[test]
    fn precision_guard() {
        let g = BitSeries::one(3);
        let f = BitSeries::t(3);
        assert!(matches!(
            BinaryRiordanMatrix::build(&g, &f, 5),
            Err(Error::Precision { need: 5, have: 3 })
        ));
    }
}
