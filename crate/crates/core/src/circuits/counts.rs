use std::fmt::Write as _;
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use super::{Circuit, GateKind};
use crate::weyl::check_dim;
use crate::{Error, Result};

/// One- and two-qudit gate counts for the encryption (`E`) and decryption
/// (`D`) circuits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateCounts {
    pub d: usize,
    pub n: usize,
    pub ne1q: u64,
    pub ne2q: u64,
    pub nd1q: u64,
    pub nd2q: u64,
}

/// Closed-form counts:
/// `N_E2Q = 4n`, `N_E1Q = 2n + 2(d-1)`, `N_D1Q = 2 + (2n-1) d² (d-1)`,
/// `N_D2Q = 9 + 8(2n-1)(d³ - d² - d + 1)`.
pub fn gate_counts(d: usize, n: usize) -> Result<GateCounts> {
    check_dim(d)?;
    if n == 0 {
        return Err(Error::InvalidParameter("party count n must be at least 1".into()));
    }
    let (dd, nn) = (d as u64, n as u64);
    Ok(GateCounts {
        d,
        n,
        ne1q: 2 * nn + 2 * (dd - 1),
        ne2q: 4 * nn,
        nd1q: 2 + (2 * nn - 1) * dd * dd * (dd - 1),
        nd2q: 9 + 8 * (2 * nn - 1) * (dd * dd * dd - dd * dd - dd + 1),
    })
}

pub const DEFAULT_D_RANGE: RangeInclusive<usize> = 2..=10;
pub const DEFAULT_N_SET: [usize; 3] = [2, 5, 10];

/// One row per `(d, n)`, `d` outermost.
pub fn counts_table(d_range: RangeInclusive<usize>, n_set: &[usize]) -> Result<Vec<GateCounts>> {
    d_range.flat_map(|d| n_set.iter().map(move |&n| gate_counts(d, n))).collect()
}

pub const COUNTS_CSV_HEADER: &str = "d,n,NE1Q,NE2Q,ND1Q,ND2Q";

pub fn counts_csv(rows: &[GateCounts]) -> String {
    let mut out = format!("{COUNTS_CSV_HEADER}\n");
    for r in rows {
        writeln!(out, "{},{},{},{},{},{}", r.d, r.n, r.ne1q, r.ne2q, r.nd1q, r.nd2q).expect("writing to a String");
    }
    out
}

/// Gate tally of a circuit under the cost model's accounting: a diagonal
/// phase on one qudit counts as `d - 1` single-qudit rotations, every other
/// one-wire gate as one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Tally {
    pub single: u64,
    pub two: u64,
    pub wider: u64,
}

pub fn tally(circuits: &[&Circuit]) -> Tally {
    let mut t = Tally::default();
    for c in circuits {
        let d = c.register().d() as u64;
        for op in c.ops() {
            match op.arity() {
                1 if matches!(op.kind, GateKind::DiagonalPhase { .. }) => t.single += d - 1,
                0 | 1 => t.single += 1,
                2 => t.two += 1,
                _ => t.wider += 1,
            }
        }
    }
    t
}
