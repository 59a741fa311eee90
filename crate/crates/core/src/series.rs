//! Truncated formal power series over GF(2).
//!
//! A [`BitSeries`] stores coefficients as packed bits together with an
//! explicit truncation order: coefficients are known exactly for indices
//! `0..trunc` and *unknown* (not zero) beyond. Every operation returns the
//! tightest truncation it can certify, and coefficient queries past the
//! truncation are a panic, never a silent zero.

use crate::bits::BitBuf;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitSeries {
    coeffs: BitBuf,
}

impl BitSeries {
    /// The zero series, exact to `trunc` coefficients.
    pub fn zero(trunc: usize) -> Self {
        assert!(trunc >= 1, "truncation order must be at least 1");
        BitSeries {
            coeffs: BitBuf::zeros(trunc),
        }
    }

    pub fn one(trunc: usize) -> Self {
        Self::from_support(trunc, &[0])
    }

    /// The series `t`.
    pub fn t(trunc: usize) -> Self {
        if trunc > 1 {
            Self::from_support(trunc, &[1])
        } else {
            Self::zero(trunc)
        }
    }

    /// Build from the list of indices with coefficient 1. Indices at or
    /// beyond `trunc` are dropped.
    pub fn from_support(trunc: usize, ones: &[usize]) -> Self {
        assert!(trunc >= 1, "truncation order must be at least 1");
        let kept: Vec<usize> = ones.iter().copied().filter(|&i| i < trunc).collect();
        BitSeries {
            coeffs: BitBuf::from_indices(trunc, &kept),
        }
    }

    pub fn from_bitbuf(coeffs: BitBuf) -> Self {
        assert!(!coeffs.is_empty(), "truncation order must be at least 1");
        BitSeries { coeffs }
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of `t^k`. Panics for `k >= trunc`: coefficients beyond
    /// the certified window are unknown, not zero.
    #[inline]
    pub fn coeff(&self, k: usize) -> bool {
        assert!(
            k < self.trunc(),
            "coefficient query at t^{k} beyond truncation {}",
            self.trunc()
        );
        self.coeffs.get(k)
    }

    pub fn try_coeff(&self, k: usize) -> Result<bool> {
        if k < self.trunc() {
            Ok(self.coeffs.get(k))
        } else {
            Err(Error::Precision {
                need: k + 1,
                have: self.trunc(),
            })
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    /// Lowest index with a set coefficient within the window.
    pub fn min_degree(&self) -> Option<usize> {
        self.coeffs.first_one()
    }

    pub fn support(&self) -> Vec<usize> {
        self.coeffs.ones()
    }

    pub fn bits(&self) -> &BitBuf {
        &self.coeffs
    }

    /// Restrict to a smaller truncation window.
    pub fn restrict(&self, trunc: usize) -> BitSeries {
        assert!(trunc >= 1 && trunc <= self.trunc());
        BitSeries {
            coeffs: self.coeffs.resized(trunc),
        }
    }

    /// Coefficientwise XOR; the result is certified to the smaller window.
    pub fn add(&self, other: &BitSeries) -> BitSeries {
        let t = self.trunc().min(other.trunc());
        let mut c = self.coeffs.resized(t);
        c.xor_assign(&other.coeffs.resized(t));
        BitSeries { coeffs: c }
    }

    /// Carry-less (XOR) convolution, truncated at the smaller window.
    pub fn mul(&self, other: &BitSeries) -> BitSeries {
        let t = self.trunc().min(other.trunc());
        if self == other {
            return self.square().restrict(t);
        }
        let mut acc = BitBuf::zeros(t);
        let rhs = other.coeffs.resized(t);
        for a in self.coeffs.ones() {
            if a >= t {
                break;
            }
            acc.xor_shifted(&rhs, a);
        }
        BitSeries { coeffs: acc }
    }

    /// Frobenius square: over GF(2), `g(t)^2 = g(t^2)`, so squaring spreads
    /// the coefficient indices and certifies a *wider* window.
    pub fn square(&self) -> BitSeries {
        let t = 2 * self.trunc() - 1;
        let mut c = BitBuf::zeros(t);
        for i in self.coeffs.ones() {
            c.set(2 * i, true);
        }
        BitSeries { coeffs: c }
    }

    /// Multiply by `t^k`; gains `k` certified coefficients.
    pub fn shift_up(&self, k: usize) -> BitSeries {
        let t = self.trunc() + k;
        let mut c = BitBuf::zeros(t);
        c.xor_shifted(&self.coeffs, k);
        BitSeries { coeffs: c }
    }

    /// Divide by `t^k`; all coefficients below `t^k` must be zero.
    pub fn div_t(&self, k: usize) -> Result<BitSeries> {
        if k == 0 {
            return Ok(self.clone());
        }
        if self.trunc() <= k {
            return Err(Error::Precision {
                need: k + 1,
                have: self.trunc(),
            });
        }
        if let Some(m) = self.min_degree() {
            if m < k {
                return Err(Error::NotApplicable(format!(
                    "division by t^{k} of a series with a t^{m} term"
                )));
            }
        }
        let t = self.trunc() - k;
        let mut c = BitBuf::zeros(t);
        for i in self.coeffs.ones() {
            c.set(i - k, true);
        }
        Ok(BitSeries { coeffs: c })
    }

    /// `self / den` by long division; `den` must have constant term 1.
    pub fn div(&self, den: &BitSeries) -> Result<BitSeries> {
        if !den.coeff(0) {
            return Err(Error::InvalidSpec(
                "division needs a denominator with constant term 1".into(),
            ));
        }
        let t = self.trunc().min(den.trunc());
        let d = den.coeffs.resized(t);
        let mut rem = self.coeffs.resized(t);
        let mut q = BitBuf::zeros(t);
        for k in 0..t {
            if rem.get(k) {
                q.set(k, true);
                rem.xor_shifted(&d, k);
            }
        }
        Ok(BitSeries { coeffs: q })
    }

    /// `1 / self`; requires constant term 1.
    pub fn recip(&self) -> Result<BitSeries> {
        BitSeries::one(self.trunc()).div(self)
    }

    /// `self^e` by square-and-multiply, working at window `trunc`.
    /// Requires the base to be certified at least that far.
    pub fn pow(&self, e: usize, trunc: usize) -> Result<BitSeries> {
        if self.trunc() < trunc {
            return Err(Error::Precision {
                need: trunc,
                have: self.trunc(),
            });
        }
        let mut base = self.restrict(trunc);
        let mut acc = BitSeries::one(trunc);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square().restrict(trunc);
            }
        }
        Ok(acc)
    }

    /// Composition `self(f)` by Horner's rule; `f` must have zero constant
    /// term so that each coefficient of the result is a finite XOR.
    pub fn compose(&self, f: &BitSeries) -> Result<BitSeries> {
        if f.coeff(0) {
            return Err(Error::CompositionDomain);
        }
        let t = self.trunc().min(f.trunc());
        let fr = f.restrict(t);
        let mut acc = BitSeries::zero(t);
        for k in (0..t).rev() {
            acc = acc.mul(&fr);
            if self.coeff(k) {
                acc.coeffs.flip(0);
            }
        }
        Ok(acc)
    }

    /// Compositional inverse: the unique `h` with `self(h) = h(self) = t`.
    /// Needs `f(0) = 0` and `[t^1]f = 1`; solved degree by degree from the
    /// triangular system `sum_k h_k f^k = t`.
    pub fn comp_inverse(&self) -> Result<BitSeries> {
        if self.coeff(0) {
            return Err(Error::CompositionDomain);
        }
        if self.trunc() < 2 || !self.coeff(1) {
            return Err(Error::NotInvertible);
        }
        let t = self.trunc();
        let mut inv = BitBuf::zeros(t);
        inv.set(1, true);
        // Solve sum_{k>=1} h_k f^k = t degree by degree; [t^m]f^m = 1 makes
        // the system triangular. Powers of f are built incrementally.
        let mut powers: Vec<BitBuf> = Vec::with_capacity(t);
        powers.push(BitBuf::zeros(t)); // f^0 slot, never read (k >= 1)
        powers.push(self.coeffs.resized(t));
        let mut fpow = self.clone();
        for _ in 2..t {
            fpow = fpow.mul(self);
            powers.push(fpow.coeffs.resized(t));
        }
        for m in 2..t {
            let mut s = false;
            for (k, p) in powers.iter().enumerate().take(m).skip(1) {
                if inv.get(k) && p.get(m) {
                    s = !s;
                }
            }
            if s {
                inv.set(m, true);
            }
        }
        Ok(BitSeries { coeffs: inv })
    }

    /// Formal derivative over GF(2): only odd-index coefficients survive,
    /// shifted down one place; one certified coefficient is lost.
    pub fn derivative(&self) -> BitSeries {
        assert!(
            self.trunc() >= 2,
            "derivative needs at least two certified coefficients"
        );
        let t = self.trunc() - 1;
        let mut c = BitBuf::zeros(t);
        for i in self.coeffs.ones() {
            if i % 2 == 1 {
                c.set(i - 1, true);
            }
        }
        BitSeries { coeffs: c }
    }

    /// Substitute `t -> sqrt(t)`: index halving. The input must be supported
    /// on even indices only (true of any derivative over GF(2)).
    pub fn sqrt_substitute(&self) -> Result<BitSeries> {
        if let Some(i) = self.coeffs.ones().into_iter().find(|i| i % 2 == 1) {
            return Err(Error::SqrtDomain { index: i });
        }
        let t = self.trunc().div_ceil(2);
        let mut c = BitBuf::zeros(t);
        for i in self.coeffs.ones() {
            c.set(i / 2, true);
        }
        Ok(BitSeries { coeffs: c })
    }

    /// Equality of the first `w` coefficients.
    pub fn eq_window(&self, other: &BitSeries, w: usize) -> bool {
        assert!(
            w <= self.trunc() && w <= other.trunc(),
            "window {w} exceeds truncation ({}, {})",
            self.trunc(),
            other.trunc()
        );
        self.coeffs.eq_prefix(&other.coeffs, w)
    }
}

impl std::fmt::Debug for BitSeries {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(fm, "{} (mod t^{})", self, self.trunc())
    }
}

impl std::fmt::Display for BitSeries {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let ones = self.support();
        if ones.is_empty() {
            return write!(fm, "0");
        }
        let terms: Vec<String> = ones
            .iter()
            .map(|&i| match i {
                0 => "1".to_string(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            })
            .collect();
        write!(fm, "{}", terms.join("+"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(trunc: usize, ones: &[usize]) -> BitSeries {
        BitSeries::from_support(trunc, ones)
    }

    #[test]
    fn add_is_xor_with_min_trunc() {
        // (1+t) + (1+t) = 0
        let a = s(8, &[0, 1]);
        assert!(a.add(&a).is_zero());
        // (1+t^2) + (t+t^2) = 1+t
        let x = s(8, &[0, 2]).add(&s(6, &[1, 2]));
        assert_eq!(x.support(), vec![0, 1]);
        assert_eq!(x.trunc(), 6);
        // g + 0 = g
        let g = s(5, &[0, 3]);
        assert_eq!(g.add(&BitSeries::zero(5)), g);
    }

    #[test]
    fn mul_examples() {
        // (1+t)^2 = 1+t^2 (Frobenius)
        let a = s(8, &[0, 1]);
        assert_eq!(a.mul(&a).support(), vec![0, 2]);
        // (1/(1-t)) * (1+t) = 1 over GF(2)
        let geom = BitSeries::from_support(8, &(0..8).collect::<Vec<_>>());
        let p = geom.mul(&s(8, &[0, 1]));
        assert_eq!(p.support(), vec![0]);
        // (1+t+t^3)(t+t^2) = t+t^3+t^4+t^5
        let p = s(8, &[0, 1, 3]).mul(&s(8, &[1, 2]));
        assert_eq!(p.support(), vec![1, 3, 4, 5]);
    }

    #[test]
    fn square_widens_window() {
        let a = s(4, &[0, 1, 3]);
        let sq = a.square();
        assert_eq!(sq.trunc(), 7);
        assert_eq!(sq.support(), vec![0, 2, 6]);
    }

    #[test]
    fn compose_identity_and_catalan() {
        let g = s(10, &[0, 2, 5]);
        let id = BitSeries::t(10);
        assert_eq!(g.compose(&id).unwrap(), g);
        // C(t+t^2) = 1/(1-t): catalan support {0,1,3,7,...}
        let catalan = s(16, &[0, 1, 3, 7, 15]);
        let f = s(16, &[1, 2]);
        let c = catalan.compose(&f).unwrap();
        assert_eq!(c.support(), (0..16).collect::<Vec<_>>());
    }

    #[test]
    fn compose_rejects_nonzero_constant() {
        let g = s(4, &[0]);
        let f = s(4, &[0, 1]);
        assert!(matches!(g.compose(&f), Err(Error::CompositionDomain)));
    }

    #[test]
    fn comp_inverse_examples() {
        // inverse of tC is t+t^2
        let tc = s(16, &[1, 2, 4, 8]); // t*C = t+t^2+t^4+t^8 from catalan support
        let inv = tc.comp_inverse().unwrap();
        assert_eq!(inv.support(), vec![1, 2]);
        // identity
        assert_eq!(BitSeries::t(8).comp_inverse().unwrap(), BitSeries::t(8));
        // t/(1-t) <-> t/(1+t): both are t+t^2+t^3+... vs t+t^2? over GF(2)
        // t/(1-t) = t+t^2+t^3+..., inverse is t/(1+t) = t+t^2+t^3+... as well?
        // No: t/(1+t) = t(1+t+t^2+...) with signs collapsing: t+t^2+t^3+...
        // Over GF(2) both expand identically, and f(f) = t indeed holds.
        let f = BitSeries::from_support(12, &(1..12).collect::<Vec<_>>());
        let fb = f.comp_inverse().unwrap();
        assert_eq!(f.compose(&fb).unwrap().support(), vec![1]);
        assert_eq!(fb.compose(&f).unwrap().support(), vec![1]);
    }

    #[test]
    fn comp_inverse_requires_unit_linear_term() {
        assert!(matches!(
            s(6, &[2]).comp_inverse(),
            Err(Error::NotInvertible)
        ));
    }

    #[test]
    fn derivative_examples() {
        // d/dt of t/(1-t) = 1/(1-t^2)
        let f = BitSeries::from_support(12, &(1..12).collect::<Vec<_>>());
        let d = f.derivative();
        assert_eq!(d.support(), vec![0, 2, 4, 6, 8, 10]);
        assert_eq!(d.trunc(), 11);
        // derivative of an even series vanishes
        let even = s(9, &[0, 2, 6]);
        assert!(even.derivative().is_zero());
        // d/dt (tC) = 1
        let tc = s(16, &[1, 2, 4, 8]);
        assert_eq!(tc.derivative().support(), vec![0]);
    }

    #[test]
    fn sqrt_substitute_examples() {
        let a = s(6, &[0, 2, 4]);
        let r = a.sqrt_substitute().unwrap();
        assert_eq!(r.support(), vec![0, 1, 2]);
        assert_eq!(r.trunc(), 3);
        assert!(BitSeries::zero(5).sqrt_substitute().unwrap().is_zero());
        // 1/(1-t^2) -> 1/(1-t)
        let e = s(10, &[0, 2, 4, 6, 8]);
        assert_eq!(e.sqrt_substitute().unwrap().support(), vec![0, 1, 2, 3, 4]);
        assert!(matches!(
            s(6, &[1]).sqrt_substitute(),
            Err(Error::SqrtDomain { index: 1 })
        ));
    }

    #[test]
    fn division_roundtrip() {
        let den = s(12, &[0, 1, 3]);
        let num = s(12, &[0, 2]);
        let q = num.div(&den).unwrap();
        assert_eq!(q.mul(&den), num);
        assert!(s(4, &[1]).recip().is_err());
    }

    #[test]
    #[should_panic(expected = "beyond truncation")]
    fn coeff_beyond_trunc_panics() {
        let a = s(4, &[0]);
        let _ = a.coeff(4);
    }
}
