//! Eulerian and Hamiltonian criteria with materialized witnesses.

use crate::decomp::decompose;
use crate::error::{Error, Result};
use crate::graph::{build_graph_series, RiordanGraphSpec};
use crate::matrix::is_proper;
use crate::oracle;
use crate::series::BitSeries;
use serde_json::json;

/// Degree parities from the two boundary generating functions:
/// `phi_j = [t^j] tg/(1-f)` counts row ones mod 2 and
/// `psi_j = [t^j] t g(fbar) fbar' (t/fbar)^(n-1) / (1-fbar)` counts column
/// ones of the flipped matrix; vertex `i` has odd degree iff
/// `phi_(i-1) + psi_(n-i)` is odd.
#[derive(Clone, Debug)]
pub struct DegreeParity {
    pub phi: Vec<bool>,
    pub psi: Vec<bool>,
    pub parity: Vec<bool>,
}

pub fn degree_parity(spec: &RiordanGraphSpec) -> Result<DegreeParity> {
    let (g, f) = spec.expand()?;
    let n = spec.n;
    if f.trunc() < 2 || !f.coeff(1) {
        return Err(Error::NotApplicable(
            "the parity formulas need f'(0) = 1; fall back to direct degrees".into(),
        ));
    }
    let one = BitSeries::one(f.trunc());
    let phi_gen = g.shift_up(1).div(&one.add(&f))?;
    let fbar = f.comp_inverse()?;
    let a = fbar.div_t(1)?.recip()?; // t/fbar
    let an = a.pow(n.saturating_sub(1), a.trunc())?;
    let rev_g = g.compose(&fbar)?.mul(&fbar.derivative()).mul(&an);
    let one_b = BitSeries::one(rev_g.trunc().min(fbar.trunc()));
    let psi_gen = rev_g
        .shift_up(1)
        .div(&one_b.add(&fbar.restrict(one_b.trunc())))?;

    let phi: Vec<bool> = (0..n).map(|j| phi_gen.coeff(j)).collect();
    let psi: Vec<bool> = (0..n).map(|j| psi_gen.coeff(j)).collect();
    let parity: Vec<bool> = (1..=n).map(|i| phi[i - 1] ^ psi[n - i]).collect();

    // the formula must agree with literal degrees
    let graph = build_graph_series(&g, &f, n)?;
    for v in 1..=n {
        assert_eq!(
            parity[v - 1],
            graph.degree(v) % 2 == 1,
            "degree parity formula disagrees at vertex {v}"
        );
    }
    Ok(DegreeParity { phi, psi, parity })
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum EulerianStatus {
    Cycle,
    Trail(usize, usize),
    NoTrail,
}

/// Eulerian classification. Proper specs are connected, so the parity
/// vector decides; improper specs fall back to literal degrees plus an
/// explicit connectivity check of the non-isolated part.
pub fn eulerian_check(spec: &RiordanGraphSpec) -> Result<EulerianStatus> {
    let (g, f) = spec.expand()?;
    let n = spec.n;
    let graph = build_graph_series(&g, &f, n)?;
    if graph.edge_count() == 0 {
        return Ok(EulerianStatus::NoTrail);
    }

    let odd: Vec<usize> = if is_proper(&g, &f) {
        let dp = degree_parity(spec)?;
        (1..=n).filter(|&v| dp.parity[v - 1]).collect()
    } else {
        (1..=n).filter(|&v| graph.degree(v) % 2 == 1).collect()
    };

    // all edges must lie in one component
    let non_isolated: Vec<usize> = (1..=n).filter(|&v| graph.degree(v) > 0).collect();
    let sub = graph.induced(&non_isolated);
    if !oracle::is_connected(&sub) {
        return Ok(EulerianStatus::NoTrail);
    }

    let status = match odd.len() {
        0 => EulerianStatus::Cycle,
        2 => EulerianStatus::Trail(odd[0], odd[1]),
        _ => EulerianStatus::NoTrail,
    };

    // Palindromic Appell shortcut: g palindromic of degree n-2 with an even
    // number of ones forces an Eulerian cycle. Kept as a cross-check.
    let w = n.min(f.trunc());
    if f.eq_window(&BitSeries::t(w), w) && n >= 3 {
        let coeffs: Vec<bool> = (0..=n - 2).map(|k| g.coeff(k)).collect();
        let palindromic = (0..coeffs.len()).all(|k| coeffs[k] == coeffs[coeffs.len() - 1 - k]);
        let even_weight = coeffs.iter().filter(|&&b| b).count() % 2 == 0;
        if palindromic && even_weight && graph.edge_count() > 0 && is_proper(&g, &f) {
            assert_eq!(
                status,
                EulerianStatus::Cycle,
                "palindromic Appell spec must be Eulerian"
            );
        }
    }
    Ok(status)
}

/// Reasons a spec is provably not Hamiltonian.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ObstructionReason {
    ImproperF1Zero,
    CheckerboardOddN,
    EDecomposableOddN,
    SplitGraphBound,
}

impl ObstructionReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            ObstructionReason::ImproperF1Zero => "improper_f1_zero",
            ObstructionReason::CheckerboardOddN => "checkerboard_odd_n",
            ObstructionReason::EDecomposableOddN => "e_decomposable_odd_n",
            ObstructionReason::SplitGraphBound => "split_graph_bound",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum HamiltonStatus {
    Guaranteed(Vec<usize>),
    Impossible(ObstructionReason),
    Unknown,
}

#[derive(Clone, Debug)]
pub struct HamiltonVerdict {
    pub status: HamiltonStatus,
    pub oracle_confirmed: Option<bool>,
}

impl HamiltonVerdict {
    pub fn to_json(&self) -> serde_json::Value {
        let (status, witness, reason) = match &self.status {
            HamiltonStatus::Guaranteed(w) => ("guaranteed", Some(w.clone()), None),
            HamiltonStatus::Impossible(r) => ("impossible", None, Some(r.as_str())),
            HamiltonStatus::Unknown => ("unknown", None, None),
        };
        json!({
            "schema_version": "1",
            "status": status,
            "witness": witness,
            "reason": reason,
            "oracle_confirmed": self.oracle_confirmed,
        })
    }
}

/// Sufficient Hamiltonicity conditions for proper specs, with the witness
/// cycle materialized and validated edge by edge:
///
/// * some `i` in `2..n` has `[t^(i-1)] g = 1` and `[t^(n-2)] g f^(i-1) = 1`,
///   giving `1 -> ... -> i -> n -> n-1 -> ... -> i+1 -> 1`;
/// * `[t] g = 1` and `[t^2] f = 0`, giving the odd-then-even zigzag.
pub fn hamiltonian_sufficient(spec: &RiordanGraphSpec) -> Result<HamiltonVerdict> {
    let (g, f) = spec.expand()?;
    let n = spec.n;
    if !is_proper(&g, &f) {
        return Err(Error::Improper(
            "the sufficiency conditions assume a proper spec".into(),
        ));
    }
    if n < 3 {
        return Ok(HamiltonVerdict {
            status: HamiltonStatus::Unknown,
            oracle_confirmed: None,
        });
    }
    let graph = build_graph_series(&g, &f, n)?;

    // case (i): scan i ascending
    for i in 2..n {
        if g.coeff(i - 1) {
            let gfi = g.mul(&f.pow(i - 1, f.trunc())?);
            if gfi.coeff(n - 2) {
                let mut cycle: Vec<usize> = (1..=i).collect();
                cycle.extend((i + 1..=n).rev());
                assert!(
                    oracle::is_hamiltonian_cycle(&graph, &cycle),
                    "witness cycle for i={i} is invalid"
                );
                return Ok(HamiltonVerdict {
                    status: HamiltonStatus::Guaranteed(cycle),
                    oracle_confirmed: None,
                });
            }
        }
    }

    // case (ii): odd zigzag 1 -> 3 -> ... -> 2*ceil(n/2)-1 -> 2*floor(n/2) -> ... -> 2 -> 1
    if g.coeff(1) && !f.coeff(2) {
        let mut cycle: Vec<usize> = (1..=n).step_by(2).collect();
        let mut evens: Vec<usize> = (2..=n).step_by(2).collect();
        evens.reverse();
        cycle.extend(evens);
        assert!(
            oracle::is_hamiltonian_cycle(&graph, &cycle),
            "odd-even zigzag witness is invalid"
        );
        return Ok(HamiltonVerdict {
            status: HamiltonStatus::Guaranteed(cycle),
            oracle_confirmed: None,
        });
    }

    Ok(HamiltonVerdict {
        status: HamiltonStatus::Unknown,
        oracle_confirmed: None,
    })
}

/// Proven non-Hamiltonicity: `[t]f = 0` on an improper graph (split-graph
/// argument), checkerboard type of odd order, e-decomposable of odd order.
pub fn hamiltonian_obstruction(spec: &RiordanGraphSpec) -> Result<HamiltonVerdict> {
    let (g, f) = spec.expand()?;
    let n = spec.n;
    let verdict = |r| {
        Ok(HamiltonVerdict {
            status: HamiltonStatus::Impossible(r),
            oracle_confirmed: None,
        })
    };
    if n < 3 {
        // a cycle needs three vertices
        return verdict(ObstructionReason::SplitGraphBound);
    }
    let f1 = f.trunc() >= 2 && f.coeff(1);
    if !f1 {
        return verdict(ObstructionReason::ImproperF1Zero);
    }
    if n % 2 == 1 {
        let w = n.min(g.trunc());
        let checkerboard = g.support().iter().all(|&i| i >= w || i % 2 == 0)
            && f.support().iter().all(|&i| i >= w || i % 2 == 1);
        if checkerboard {
            return verdict(ObstructionReason::CheckerboardOddN);
        }
        let blocks = decompose(spec)?;
        if blocks.x_graph.is_edgeless() {
            return verdict(ObstructionReason::EDecomposableOddN);
        }
    }
    Ok(HamiltonVerdict {
        status: HamiltonStatus::Unknown,
        oracle_confirmed: None,
    })
}

/// Combined verdict: sufficiency first (proper specs), then obstructions.
pub fn hamiltonian_verdict(spec: &RiordanGraphSpec) -> Result<HamiltonVerdict> {
    let (g, f) = spec.expand()?;
    if is_proper(&g, &f) {
        let v = hamiltonian_sufficient(spec)?;
        if !matches!(v.status, HamiltonStatus::Unknown) {
            return Ok(v);
        }
    }
    hamiltonian_obstruction(spec)
}

/// Parity of the k-th Motzkin number: even iff `k+2` or `k+1` is of the
/// form `4^i * odd` with `i >= 1`, i.e. has even 2-adic valuation >= 2.
pub fn motzkin_parity(k: u64) -> u8 {
    let in_family = |x: u64| {
        let v = x.trailing_zeros();
        v >= 2 && v.is_multiple_of(2)
    };
    if in_family(k + 2) || in_family(k + 1) {
        0
    } else {
        1
    }
}
