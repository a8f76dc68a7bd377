//! Boomerang analysis: pair-count tables, spectra, the quadrant split of
//! solution pairs, and the closed-form predictors.
//!
//! `beta(a, b)` counts pairs `(x, y)` solving the system
//! `F(x) - F(y) = b`, `F(x+a) - F(y+a) = b`. Rows again reduce to `a = 1`;
//! the uniformity maximizes over `b != 0` only, since `b = 0` always picks
//! up the diagonal `x = y`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::charsum::gamma;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::funcs::{FunctionKind, FunctionTable};

/// Row-1 boomerang spectrum over `b != 0`: `counts[i]` = number of `b` with
/// exactly `i` solution pairs, zero tallies omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoomSpectrum {
    pub counts: BTreeMap<u64, u64>,
    pub uniformity: u64,
}

/// `beta(a, b)`: pairs `(x, y)` with `F(x) - F(y) = F(x+a) - F(y+a) = b`.
/// Needs `a != 0`; `b = 0` is allowed as a diagnostic but is excluded from
/// spectra and uniformities.
pub fn beta(f: &FunctionTable, a: FieldElement, b: FieldElement) -> Result<u64> {
    let fld = f.field();
    let a = fld.check(a)?;
    let b = fld.check(b)?;
    if a == 0 {
        return Err(Error::InvalidArgument("beta needs a != 0"));
    }
    Ok(bct_row_idx(f, a)[b as usize])
}

/// All of row `a` at once: `row[b] = beta(a, b)`.
pub fn bct_row(f: &FunctionTable, a: FieldElement) -> Result<Vec<u64>> {
    let fld = f.field();
    let a = fld.check(a)?;
    if a == 0 {
        return Err(Error::InvalidArgument("bct_row needs a != 0"));
    }
    Ok(bct_row_idx(f, a))
}

fn bct_row_idx(f: &FunctionTable, a: u32) -> Vec<u64> {
    let fld = f.field();
    let q = fld.q() as u32;
    // Precompute both component maps so the pair loop is four lookups.
    let shifted: Vec<u32> = (0..q).map(|x| f.eval_idx(fld.add_idx(x, a))).collect();
    let mut row = vec![0u64; q as usize];
    for x in 0..q {
        let fx = f.eval_idx(x);
        let gx = shifted[x as usize];
        for y in 0..q {
            let b = fld.sub_idx(fx, f.eval_idx(y));
            if fld.sub_idx(gx, shifted[y as usize]) == b {
                row[b as usize] += 1;
            }
        }
    }
    row
}

/// Full boomerang uniformity: max of `beta(a, b)` over `a != 0`, `b != 0`.
/// This walks all `q - 1` rows, so it is capped; lift the cap consciously.
pub fn boomerang_uniformity(f: &FunctionTable, cap: u64) -> Result<u64> {
    let q = f.field().q();
    if q > cap {
        return Err(Error::FullTableCap { q, cap });
    }
    let mut best = 0u64;
    for a in 1..q as u32 {
        let row = bct_row_idx(f, a);
        let m = row[1..].iter().copied().max().unwrap_or(0);
        best = best.max(m);
    }
    Ok(best)
}

/// Checks that row `a` is row 1 reshuffled by `beta(a, b) = beta(1, b / c)`
/// with `c = a^r` when `chi(a) = 1` and `c = (-1)^r a^r` when `chi(a) = -1`
/// (power map `x^d`: `c = a^d`). Note the sign differs from the difference
/// count reduction: the pair system is invariant under negating both sides.
pub fn verify_boom_row_reduction(f: &FunctionTable, a: FieldElement) -> Result<bool> {
    let fld = f.field();
    let a = fld.check(a)?;
    if a == 0 {
        return Err(Error::InvalidArgument("row reduction needs a != 0"));
    }
    let c = match *f.kind() {
        FunctionKind::Binomial { r, .. } => {
            let ar = fld.pow_idx(a, r);
            if fld.chi_idx(a) == -1 && r % 2 == 1 {
                fld.neg_idx(ar)
            } else {
                ar
            }
        }
        FunctionKind::Power { d } => fld.pow_idx(a, d),
    };
    let c_inv = fld.inv_idx(c);
    let row_a = bct_row_idx(f, a);
    let row_1 = bct_row_idx(f, 1);
    for b in 0..fld.q() as u32 {
        if row_a[b as usize] != row_1[fld.mul_idx(b, c_inv) as usize] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Row-1 spectrum over `b != 0`. The counting identity
/// `sum nu_i = q - 1` is rechecked; a violation is an error.
pub fn boom_spectrum(f: &FunctionTable) -> Result<BoomSpectrum> {
    let q = f.field().q();
    let row = bct_row_idx(f, 1);
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    for &v in &row[1..] {
        *counts.entry(v).or_insert(0) += 1;
    }
    let total: u64 = counts.values().sum();
    if total != q - 1 {
        return Err(Error::IdentityViolation(format!(
            "row-1 pair spectrum of {} sums to {}, expected {}",
            f.label(),
            total,
            q - 1
        )));
    }
    let uniformity = counts.keys().next_back().copied().unwrap_or(0);
    Ok(BoomSpectrum { counts, uniformity })
}

/// Pair counts of the row-1 system split by the sign classes of `x` and
/// `y`: `counts[i][j]` is the number of solutions with `x` in class `i`
/// and `y` in class `j` (0 = S00, 1 = S01, 2 = S10, 3 = S11). Pairs where
/// `x` or `y` is `0` or `-1` land in `boundary`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoomQuadrantCounts {
    pub b: u32,
    pub counts: [[u64; 4]; 4],
    pub boundary: u64,
}

impl BoomQuadrantCounts {
    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum::<u64>() + self.boundary
    }
}

/// Brute-force quadrant split for one `b != 0`.
pub fn boom_quadrant_counts(f: &FunctionTable, b: FieldElement) -> Result<BoomQuadrantCounts> {
    let fld = f.field();
    let b = fld.check(b)?;
    if b == 0 {
        return Err(Error::InvalidArgument(
            "quadrant split of the pair system needs b != 0",
        ));
    }
    Ok(boom_quadrant_profile(f).swap_remove(b as usize))
}

/// `boom_quadrant_counts` for every `b` at once, one pass over all pairs.
/// Entry `i` is the split for `b` of canonical index `i`; entry 0 is the
/// diagnostic `b = 0` split.
pub fn boom_quadrant_profile(f: &FunctionTable) -> Vec<BoomQuadrantCounts> {
    let fld = f.field();
    let q = fld.q() as u32;
    let neg1 = fld.neg_idx(1);
    let class = |x: u32| -> Option<usize> {
        if x == 0 || x == neg1 {
            return None;
        }
        Some(match (fld.chi_idx(x), fld.chi_idx(fld.add_idx(x, 1))) {
            (1, 1) => 0,
            (1, -1) => 1,
            (-1, 1) => 2,
            _ => 3,
        })
    };
    let classes: Vec<Option<usize>> = (0..q).map(class).collect();
    let shifted: Vec<u32> = (0..q).map(|x| f.eval_idx(fld.add_idx(x, 1))).collect();
    let mut out: Vec<BoomQuadrantCounts> = (0..q)
        .map(|b| BoomQuadrantCounts {
            b,
            counts: [[0; 4]; 4],
            boundary: 0,
        })
        .collect();
    for x in 0..q {
        let fx = f.eval_idx(x);
        let gx = shifted[x as usize];
        for y in 0..q {
            let b = fld.sub_idx(fx, f.eval_idx(y));
            if fld.sub_idx(gx, shifted[y as usize]) != b {
                continue;
            }
            let slot = &mut out[b as usize];
            match (classes[x as usize], classes[y as usize]) {
                (Some(cx), Some(cy)) => slot.counts[cx][cy] += 1,
                _ => slot.boundary += 1,
            }
        }
    }
    out
}

/// Closed-form pair counts for `u = 1`, `q = 7 (mod 8)`, `b != 0`: the four
/// possibly-inhabited sign classes, their two aggregates, and their total
/// `beta(1, b)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoomPairPrediction {
    pub b: u32,
    /// Count with x in S00, y in S01.
    pub b0001: u64,
    /// Count with x in S01, y in S00.
    pub b0100: u64,
    /// Count with x in S00, y in S10.
    pub b0010: u64,
    /// Count with x in S10, y in S00.
    pub b1000: u64,
    /// `b0001 + b0100`, from its own aggregate criterion.
    pub c01: u64,
    /// `b0010 + b1000`, from its own aggregate criterion.
    pub c10: u64,
}

impl BoomPairPrediction {
    pub fn beta(&self) -> u64 {
        self.c01 + self.c10
    }
}

/// Evaluates the sign-class criteria for the `u = 1` pair system. Each of
/// the four classes holds at most one solution; all other classes are empty
/// for `b != 0`, so `beta(1, b) = c01 + c10`.
pub fn predict_boom_pair_counts(fld: &Field, b: FieldElement) -> Result<BoomPairPrediction> {
    if fld.q() % 8 != 7 {
        return Err(Error::ResidueMismatch {
            q: fld.q(),
            needed: "7 (mod 8)",
        });
    }
    let r = fld.r().expect("q = 7 (mod 8) implies q = 3 (mod 4)");
    let b = fld.check(b)?;
    if b == 0 {
        return Err(Error::InvalidArgument("pair prediction needs b != 0"));
    }
    let two = fld.add_idx(1, 1);
    let four = fld.mul_idx(two, two);
    let b2 = fld.mul_idx(b, b);
    let chi_b = fld.chi_idx(b);

    let bm = fld.sub_idx(b2, four); // b^2 - 4
    let bp = fld.add_idx(b2, four); // b^2 + 4
    let root_m = fld.pow_idx(bm, r);
    let root_p = fld.pow_idx(bp, r);

    let mut b0001 = 0;
    let mut b0100 = 0;
    if fld.chi_idx(bm) == 1 {
        if chi_b == 1 && fld.chi_idx(fld.sub_idx(b, root_m)) == -1 {
            b0001 = 1;
        }
        if chi_b == -1 && fld.chi_idx(fld.add_idx(b, root_m)) == 1 {
            b0100 = 1;
        }
    }
    let mut b0010 = 0;
    let mut b1000 = 0;
    if fld.chi_idx(bp) == 1 {
        if chi_b == 1 && fld.chi_idx(fld.sub_idx(b, root_p)) == -1 {
            b0010 = 1;
        }
        if chi_b == -1 && fld.chi_idx(fld.add_idx(b, root_p)) == 1 {
            b1000 = 1;
        }
    }

    // Aggregates from their own criteria, not from the fine splits.
    let c01 = u64::from(
        fld.chi_idx(bm) == 1
            && fld.chi_idx(fld.add_idx(b2, fld.mul_idx(two, b))) == -1,
    );
    let c10 = u64::from(
        fld.chi_idx(bp) == 1 && fld.chi_idx(fld.add_idx(two, root_p)) == 1,
    );

    Ok(BoomPairPrediction {
        b,
        b0001,
        b0100,
        b0010,
        b1000,
        c01,
        c10,
    })
}

/// Closed-form row-1 pair spectrum for `u = 1` (either sign of `u`, the
/// spectra coincide). `q = 3 (mod 8)` gives the flat spectrum; for
/// `q = 7 (mod 8)` the three tallies are driven by the correction term.
pub fn predict_boom_spectrum(fld: &Field) -> Result<BoomSpectrum> {
    let q = fld.q();
    if q % 4 != 3 {
        return Err(Error::ResidueMismatch {
            q,
            needed: "3 (mod 4)",
        });
    }
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    if q % 8 == 3 {
        counts.insert(0, q - 1);
        return Ok(BoomSpectrum {
            counts,
            uniformity: 0,
        });
    }
    let g = gamma(fld)?;
    let q = q as i64;
    let entries = [
        (0u64, (9 * (q + 1) + 4 * g) / 16),
        (1, (3 * q - 13 - 4 * g) / 8),
        (2, (q + 1 + 4 * g) / 16),
    ];
    // The three numerators are divisible exactly; recheck rather than trust.
    let total: i64 = entries.iter().map(|(_, c)| c).sum();
    if 16 * entries[0].1 != 9 * (q + 1) + 4 * g
        || 8 * entries[1].1 != 3 * q - 13 - 4 * g
        || 16 * entries[2].1 != q + 1 + 4 * g
        || total != q - 1
        || entries.iter().any(|&(_, c)| c < 0)
    {
        return Err(Error::IdentityViolation(format!(
            "pair spectrum closed form degenerates at q={q}, gamma={g}"
        )));
    }
    for (i, c) in entries {
        if c > 0 {
            counts.insert(i, c as u64);
        }
    }
    let uniformity = counts.keys().next_back().copied().unwrap_or(0);
    Ok(BoomSpectrum { counts, uniformity })
}
