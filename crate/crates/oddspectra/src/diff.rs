//! Differential analysis: difference-count tables, spectra, locality labels,
//! and the quadrant-resolved solution counts with their closed-form
//! predictors.
//!
//! `delta(a, b)` counts solutions of `F(x+a) - F(x) = b`. For the binomial
//! family every row reduces to row `a = 1`, so the spectrum of that row
//! carries all the information; `verify_row_reduction` checks the reduction
//! itself. Solutions of the row-1 equation with `x` outside `{0, -1}` are
//! split by the quadrant of `(chi(x), chi(x+1))`, and the `predict_*`
//! functions evaluate the closed forms for those per-quadrant counts.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::funcs::{FunctionKind, FunctionTable};

/// Row-1 differential spectrum: `counts[i]` = number of `b` with exactly
/// `i` solutions, zero tallies omitted. `uniformity` is the largest
/// occurring `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiffSpectrum {
    pub counts: BTreeMap<u64, u64>,
    pub uniformity: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LocalityMode {
    /// Test `b` outside the prime subfield (vacuous on prime fields).
    Strict,
    /// Test all `b != 0`.
    Punctured,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Locality {
    LocallyPn,
    LocallyApn,
    Neither,
}

impl std::fmt::Display for Locality {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Locality::LocallyPn => "locally-PN",
            Locality::LocallyApn => "locally-APN",
            Locality::Neither => "neither",
        };
        f.write_str(s)
    }
}

/// Solution counts of `F(x+1) - F(x) = b` split by the quadrant of
/// `(chi(x), chi(x+1))`; the boundary points `x = 0` and `x = -1` are
/// reported as flags.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadrantCounts {
    pub b: u32,
    pub d00: u64,
    pub d01: u64,
    pub d10: u64,
    pub d11: u64,
    pub sol_at_0: bool,
    pub sol_at_neg1: bool,
}

impl QuadrantCounts {
    pub fn total(&self) -> u64 {
        self.d00
            + self.d01
            + self.d10
            + self.d11
            + u64::from(self.sol_at_0)
            + u64::from(self.sol_at_neg1)
    }
}

/// Closed-form prediction of `QuadrantCounts`, with witness solutions and
/// the intermediate roots `R1 = (b^2 + 2(1+u^2))^r`, `R2 = (b^2 - 2(1+u^2))^r`
/// kept for diagnostics (general-`u` predictor only).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadrantPrediction {
    pub b: u32,
    pub d00: u64,
    pub d01: u64,
    pub d10: u64,
    pub d11: u64,
    pub sol_at_0: bool,
    pub sol_at_neg1: bool,
    /// Predicted solutions x per quadrant: [S00, S01, S10, S11].
    pub witnesses: [Vec<u32>; 4],
    pub r1: Option<u32>,
    pub r2: Option<u32>,
}

impl QuadrantPrediction {
    pub fn counts(&self) -> (u64, u64, u64, u64) {
        (self.d00, self.d01, self.d10, self.d11)
    }

    pub fn matches(&self, c: &QuadrantCounts) -> bool {
        self.b == c.b
            && self.d00 == c.d00
            && self.d01 == c.d01
            && self.d10 == c.d10
            && self.d11 == c.d11
            && self.sol_at_0 == c.sol_at_0
            && self.sol_at_neg1 == c.sol_at_neg1
    }
}

/// `delta(a, b)`: number of `x` with `F(x+a) - F(x) = b`. Needs `a != 0`.
pub fn delta(f: &FunctionTable, a: FieldElement, b: FieldElement) -> Result<u64> {
    let fld = f.field();
    let a = fld.check(a)?;
    let b = fld.check(b)?;
    if a == 0 {
        return Err(Error::InvalidArgument("delta needs a != 0"));
    }
    let mut count = 0u64;
    for x in 0..fld.q() as u32 {
        let xa = fld.add_idx(x, a);
        if fld.sub_idx(f.eval_idx(xa), f.eval_idx(x)) == b {
            count += 1;
        }
    }
    Ok(count)
}

/// All of row `a` at once: `row[b] = delta(a, b)`.
pub fn ddt_row(f: &FunctionTable, a: FieldElement) -> Result<Vec<u64>> {
    let fld = f.field();
    let a = fld.check(a)?;
    if a == 0 {
        return Err(Error::InvalidArgument("ddt_row needs a != 0"));
    }
    Ok(ddt_row_idx(f, a))
}

fn ddt_row_idx(f: &FunctionTable, a: u32) -> Vec<u64> {
    let fld = f.field();
    let mut row = vec![0u64; fld.q() as usize];
    for x in 0..fld.q() as u32 {
        let xa = fld.add_idx(x, a);
        let b = fld.sub_idx(f.eval_idx(xa), f.eval_idx(x));
        row[b as usize] += 1;
    }
    row
}

/// Full differential uniformity: max of `delta(a, b)` over `a != 0`, all `b`.
pub fn differential_uniformity(f: &FunctionTable) -> u64 {
    let q = f.field().q() as u32;
    let mut best = 0u64;
    for a in 1..q {
        let m = ddt_row_idx(f, a).into_iter().max().unwrap_or(0);
        best = best.max(m);
    }
    best
}

/// Checks that row `a` is row 1 reshuffled by the scaling the family
/// admits: `delta(a, b) = delta(1, b / c)` with `c = a^r` when `chi(a) = 1`
/// and `c = (-1)^(r+1) a^r` when `chi(a) = -1` (for a power map `x^d`,
/// `c = a^d` unconditionally).
pub fn verify_row_reduction(f: &FunctionTable, a: FieldElement) -> Result<bool> {
    let fld = f.field();
    let a = fld.check(a)?;
    if a == 0 {
        return Err(Error::InvalidArgument("row reduction needs a != 0"));
    }
    let c = match *f.kind() {
        FunctionKind::Binomial { r, .. } => {
            let ar = fld.pow_idx(a, r);
            if fld.chi_idx(a) == -1 && r % 2 == 0 {
                fld.neg_idx(ar)
            } else {
                ar
            }
        }
        FunctionKind::Power { d } => fld.pow_idx(a, d),
    };
    let c_inv = fld.inv_idx(c);
    let row_a = ddt_row_idx(f, a);
    let row_1 = ddt_row_idx(f, 1);
    for b in 0..fld.q() as u32 {
        if row_a[b as usize] != row_1[fld.mul_idx(b, c_inv) as usize] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Row-1 spectrum over all `b` (including `b = 0`). The two counting
/// identities `sum w_i = q` and `sum i*w_i = q` are rechecked and a
/// violation is an error, since everything downstream leans on them.
pub fn diff_spectrum(f: &FunctionTable) -> Result<DiffSpectrum> {
    let q = f.field().q();
    let row = ddt_row_idx(f, 1);
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    for &v in &row {
        *counts.entry(v).or_insert(0) += 1;
    }
    let total: u64 = counts.values().sum();
    let weighted: u64 = counts.iter().map(|(i, w)| i * w).sum();
    if total != q || weighted != q {
        return Err(Error::IdentityViolation(format!(
            "row-1 spectrum of {} sums to ({}, {}), expected ({q}, {q})",
            f.label(),
            total,
            weighted
        )));
    }
    let uniformity = counts.keys().next_back().copied().unwrap_or(0);
    Ok(DiffSpectrum { counts, uniformity })
}

/// Classifies row-1 behavior: locally-PN if `delta(1, b) <= 1` on the tested
/// range, locally-APN if `<= 2`, otherwise neither. The strongest label wins.
pub fn classify_locality(f: &FunctionTable, mode: LocalityMode) -> Locality {
    let fld = f.field();
    let row = ddt_row_idx(f, 1);
    let skip_below = match mode {
        LocalityMode::Strict => fld.p(),
        LocalityMode::Punctured => 1,
    };
    let max = row
        .iter()
        .enumerate()
        .filter(|(b, _)| *b as u64 >= skip_below)
        .map(|(_, &v)| v)
        .max()
        .unwrap_or(0);
    match max {
        0 | 1 => Locality::LocallyPn,
        2 => Locality::LocallyApn,
        _ => Locality::Neither,
    }
}

/// Brute-force quadrant split of the solutions of `F(x+1) - F(x) = b`.
pub fn quadrant_counts(f: &FunctionTable, b: FieldElement) -> Result<QuadrantCounts> {
    let fld = f.field();
    let b = fld.check(b)?;
    Ok(quadrant_profile(f).swap_remove(b as usize))
}

/// `quadrant_counts` for every `b` at once, in one sweep over `x`.
/// Entry `i` is the split for `b` of canonical index `i`.
pub fn quadrant_profile(f: &FunctionTable) -> Vec<QuadrantCounts> {
    let fld = f.field();
    let q = fld.q() as u32;
    let neg1 = fld.neg_idx(1);
    let mut out: Vec<QuadrantCounts> = (0..q)
        .map(|b| QuadrantCounts {
            b,
            d00: 0,
            d01: 0,
            d10: 0,
            d11: 0,
            sol_at_0: false,
            sol_at_neg1: false,
        })
        .collect();
    for x in 0..q {
        let x1 = fld.add_idx(x, 1);
        let b = fld.sub_idx(f.eval_idx(x1), f.eval_idx(x));
        let slot = &mut out[b as usize];
        if x == 0 {
            slot.sol_at_0 = true;
        } else if x == neg1 {
            slot.sol_at_neg1 = true;
        } else {
            match (fld.chi_idx(x), fld.chi_idx(x1)) {
                (1, 1) => slot.d00 += 1,
                (1, -1) => slot.d01 += 1,
                (-1, 1) => slot.d10 += 1,
                (-1, -1) => slot.d11 += 1,
                _ => unreachable!("chi vanishes only at 0 and -1"),
            }
        }
    }
    out
}

fn require_r(fld: &Field) -> Result<u64> {
    fld.r().ok_or(Error::ResidueMismatch {
        q: fld.q(),
        needed: "3 (mod 4)",
    })
}

/// Closed-form quadrant counts for `u = 1`, `r = (q+1)/4`, `b != 0`.
///
/// With `u = 1` the map vanishes on non-squares, so `d11 = 0` and each of
/// the other quadrants holds at most one solution, pinned down by chi
/// conditions on `b(b^2 +- 4)`.
pub fn predict_quadrants_u1(fld: &Field, b: FieldElement) -> Result<QuadrantPrediction> {
    require_r(fld)?;
    let b = fld.check(b)?;
    if b == 0 {
        return Err(Error::InvalidArgument("u = 1 prediction needs b != 0"));
    }
    let two = fld.add_idx(1, 1);
    let four = fld.mul_idx(two, two);
    let b2 = fld.mul_idx(b, b);
    let bp = fld.add_idx(b2, four); // b^2 + 4
    let bm = fld.sub_idx(b2, four); // b^2 - 4
    let chi2 = fld.chi_idx(two);

    let mut w: [Vec<u32>; 4] = Default::default();
    let mut d00 = 0;
    if fld.chi_idx(fld.mul_idx(b, bp)) == 1 && fld.chi_idx(fld.mul_idx(b, bm)) == -1 {
        d00 = 1;
        // x = (4 - b^2)^2 / (16 b^2)
        let num = fld.sub_idx(four, b2);
        let den = fld.mul_idx(fld.mul_idx(four, four), b2);
        w[0].push(fld.mul_idx(fld.mul_idx(num, num), fld.inv_idx(den)));
    }
    let mut d01 = 0;
    if fld.chi_idx(b) == -chi2 && fld.chi_idx(bp) == -1 {
        d01 = 1;
        w[1].push(fld.mul_idx(b2, fld.inv_idx(four)));
    }
    let mut d10 = 0;
    if fld.chi_idx(b) == chi2 && fld.chi_idx(bm) == -1 {
        d10 = 1;
        w[2].push(fld.mul_idx(bm, fld.inv_idx(four)));
    }
    Ok(QuadrantPrediction {
        b,
        d00,
        d01,
        d10,
        d11: 0,
        sol_at_0: b == two,   // b = 1 + u
        sol_at_neg1: false,   // b = (-1)^(r+1) (1 - u) = 0 is excluded here
        witnesses: w,
        r1: None,
        r2: None,
    })
}

/// Closed-form quadrant counts for general `u` outside `{0, 1, -1}`,
/// `r = (q+1)/4`, `b != 0`.
pub fn predict_quadrants_general(
    fld: &Field,
    u: FieldElement,
    b: FieldElement,
) -> Result<QuadrantPrediction> {
    let r = require_r(fld)?;
    let u = fld.check(u)?;
    let b = fld.check(b)?;
    if b == 0 {
        return Err(Error::InvalidArgument("general-u prediction needs b != 0"));
    }
    if u == 0 || u == 1 || u == fld.neg_idx(1) {
        return Err(Error::InvalidArgument(
            "general-u prediction needs u outside {0, 1, -1}",
        ));
    }
    let sign_r: i32 = if r % 2 == 0 { 1 } else { -1 };
    let two = fld.add_idx(1, 1);
    let opu = fld.add_idx(1, u); // 1 + u
    let omu = fld.sub_idx(1, u); // 1 - u
    let s = fld.add_idx(1, fld.mul_idx(u, u)); // 1 + u^2, nonzero since chi(-1) = -1
    let two_s = fld.mul_idx(two, s);
    let chi_2s = fld.chi_idx(two_s);
    let inv_2s = fld.inv_idx(two_s);
    let b2 = fld.mul_idx(b, b);

    let mut w: [Vec<u32>; 4] = Default::default();

    // S00: one solution iff chi((1+u)^2 + b^2) = chi((1+u)^2 - b^2) = chi(2b(1+u)).
    let opu2 = fld.mul_idx(opu, opu);
    let mut d00 = 0;
    {
        let target = fld.chi_idx(fld.mul_idx(fld.mul_idx(two, b), opu));
        let diff = fld.sub_idx(opu2, b2);
        if fld.chi_idx(fld.add_idx(opu2, b2)) == target && fld.chi_idx(diff) == target {
            d00 = 1;
            // x = ((1+u)^2 - b^2)^2 / (4 b^2 (1+u)^2)
            let den = fld.mul_idx(fld.mul_idx(fld.mul_idx(two, two), b2), opu2);
            w[0].push(fld.mul_idx(fld.mul_idx(diff, diff), fld.inv_idx(den)));
        }
    }

    // S11: mirror of S00 with 1-u and an extra sign from chi(x) = chi(x+1) = -1.
    let omu2 = fld.mul_idx(omu, omu);
    let mut d11 = 0;
    {
        let target = -fld.chi_idx(fld.mul_idx(b, omu));
        let sum = fld.add_idx(omu2, b2);
        if fld.chi_idx(sum) == target && fld.chi_idx(fld.sub_idx(omu2, b2)) == target {
            d11 = 1;
            // x = -((1-u)^2 + b^2)^2 / (4 b^2 (1-u)^2); the difference in
            // place of the sum gives x + 1.
            let den = fld.mul_idx(fld.mul_idx(fld.mul_idx(two, two), b2), omu2);
            w[3].push(fld.neg_idx(fld.mul_idx(fld.mul_idx(sum, sum), fld.inv_idx(den))));
        }
    }

    // S01: candidates are indexed by a sign eps on R1 = (b^2 + 2(1+u^2))^r.
    // Writing Q = b(1+u) + eps(1-u)R1 and N = b(1-u) - eps(1+u)R1, the
    // candidate x = (Q/(2s))^2 solves the equation iff chi(N/(2s)) = (-1)^r
    // and chi(Q/(2s)) = -1; Q = 0 or N = 0 lands on a boundary point.
    let t1 = fld.add_idx(b2, two_s);
    let mut d01 = 0;
    let mut r1 = None;
    if t1 == 0 || fld.chi_idx(t1) == -1 {
        let root = fld.pow_idx(t1, r);
        r1 = Some(root);
        let eps_set: &[bool] = if t1 == 0 { &[false] } else { &[false, true] };
        for &neg_eps in eps_set {
            let re = if neg_eps { fld.neg_idx(root) } else { root };
            let q_num = fld.add_idx(fld.mul_idx(b, opu), fld.mul_idx(omu, re));
            let n_num = fld.sub_idx(fld.mul_idx(b, omu), fld.mul_idx(opu, re));
            if q_num == 0 || n_num == 0 {
                continue;
            }
            if fld.chi_idx(n_num) * chi_2s == sign_r && fld.chi_idx(q_num) * chi_2s == -1 {
                d01 += 1;
                let half = fld.mul_idx(q_num, inv_2s);
                w[1].push(fld.mul_idx(half, half));
            }
        }
    }

    // S10: same scheme on R2 = (b^2 - 2(1+u^2))^r with M = b(1-u) - eps(1+u)R2,
    // P = b(1+u) + eps(1-u)R2 and x = -(M/(2s))^2. Four sign classes arise;
    // two decide outright, the two exceptional ones additionally need
    // b(1-u) = eps(1+u)R2 resp. b(1+u) = -eps(1-u)R2, which forces
    // b^2 = (1+u)^2 resp. b^2 = (1-u)^2.
    let t2 = fld.sub_idx(b2, two_s);
    let mut d10 = 0;
    let mut r2 = None;
    if t2 == 0 || fld.chi_idx(t2) == -1 {
        let root = fld.pow_idx(t2, r);
        r2 = Some(root);
        let eps_set: &[bool] = if t2 == 0 { &[false] } else { &[false, true] };
        for &neg_eps in eps_set {
            let re = if neg_eps { fld.neg_idx(root) } else { root };
            let m_num = fld.sub_idx(fld.mul_idx(b, omu), fld.mul_idx(opu, re));
            let p_num = fld.add_idx(fld.mul_idx(b, opu), fld.mul_idx(omu, re));
            if m_num == 0 || p_num == 0 {
                continue;
            }
            let sig_p = fld.chi_idx(p_num) * chi_2s;
            let sig_m = fld.chi_idx(m_num) * chi_2s;
            let accept = if sig_p == 1 && sig_m == -sign_r {
                true
            } else if sig_p == 1 && sig_m == sign_r {
                fld.mul_idx(omu, b) == fld.mul_idx(opu, re)
            } else if sig_p == -1 && sig_m == -sign_r {
                fld.mul_idx(opu, b) == fld.neg_idx(fld.mul_idx(omu, re))
            } else {
                false
            };
            if accept {
                d10 += 1;
                let half = fld.mul_idx(m_num, inv_2s);
                w[2].push(fld.neg_idx(fld.mul_idx(half, half)));
            }
        }
    }

    let sol_at_neg1_b = if r % 2 == 1 { omu } else { fld.neg_idx(omu) };
    Ok(QuadrantPrediction {
        b,
        d00,
        d01,
        d10,
        d11,
        sol_at_0: b == opu,
        sol_at_neg1: b == sol_at_neg1_b,
        witnesses: w,
        r1,
        r2,
    })
}

/// Closed-form row-1 spectrum for `u = 1`: three entries when
/// `q = 3 (mod 8)`, four when `q = 7 (mod 8)`, with colliding indices
/// merged additively and zero tallies dropped.
pub fn predict_diff_spectrum_u1(fld: &Field) -> Result<DiffSpectrum> {
    let r = require_r(fld)?;
    let q = fld.q();
    let entries: Vec<(u64, u64)> = if q % 8 == 3 {
        vec![(0, (q - 3) / 4), (1, (3 * q - 1) / 4), (r, 1)]
    } else {
        vec![
            (0, (q - 3) / 2),
            (1, (q + 5) / 4),
            (2, (q - 3) / 4),
            (r, 1),
        ]
    };
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    for (i, c) in entries {
        if c > 0 {
            *counts.entry(i).or_insert(0) += c;
        }
    }
    let uniformity = counts.keys().next_back().copied().unwrap_or(0);
    Ok(DiffSpectrum { counts, uniformity })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcs::{build_binomial, build_power, predict_permutation};
    use std::sync::Arc;

    fn f(p: u64, n: u32) -> Arc<Field> {
        Arc::new(Field::new(p, n).unwrap())
    }

    fn spectrum(pairs: &[(u64, u64)]) -> BTreeMap<u64, u64> {
        pairs.iter().copied().collect()
    }

    #[test]
    fn identity_map_ddt() {
        let f7 = f(7, 1);
        let id = build_power(&f7, 1).unwrap();
        for a in 1..7u64 {
            let a = f7.element(a).unwrap();
            for b in 0..7u64 {
                let b = f7.element(b).unwrap();
                let expect = if a == b { 7 } else { 0 };
                assert_eq!(delta(&id, a, b).unwrap(), expect);
            }
        }
        assert_eq!(differential_uniformity(&id), 7);
        assert!(delta(&id, f7.zero(), f7.one()).is_err());
    }

    #[test]
    fn f7_u1_row_oracle() {
        // Output table [0,2,1,0,4,0,0] gives row 1 = {b=0: 2, 2: 1, 3: 1, 4: 1, 6: 2}.
        let f7 = f(7, 1);
        let g = build_binomial(&f7, None, f7.one()).unwrap();
        let row = ddt_row(&g, f7.one()).unwrap();
        assert_eq!(row, vec![2, 0, 1, 1, 1, 0, 2]);
        assert_eq!(delta(&g, f7.one(), f7.zero()).unwrap(), 2); // (q+1)/4
        assert_eq!(differential_uniformity(&g), 2);

        let sp = diff_spectrum(&g).unwrap();
        assert_eq!(sp.counts, spectrum(&[(0, 2), (1, 3), (2, 2)]));
        assert_eq!(sp.uniformity, 2);
    }

    #[test]
    fn u1_spectra_match_frozen_tables() {
        // Spot rows of the published u = 1 spectra, both brute force and
        // closed form.
        let cases: &[(u64, u32, &[(u64, u64)])] = &[
            (3, 1, &[(1, 3)]),
            (7, 1, &[(0, 2), (1, 3), (2, 2)]),
            (11, 1, &[(0, 2), (1, 8), (3, 1)]),
            (23, 1, &[(0, 10), (1, 7), (2, 5), (6, 1)]),
            (3, 3, &[(0, 6), (1, 20), (7, 1)]),
            (31, 1, &[(0, 14), (1, 9), (2, 7), (8, 1)]),
        ];
        for &(p, n, expect) in cases {
            let fld = f(p, n);
            let g = build_binomial(&fld, None, fld.one()).unwrap();
            let sp = diff_spectrum(&g).unwrap();
            assert_eq!(sp.counts, spectrum(expect), "computed, q={}", fld.q());
            let pred = predict_diff_spectrum_u1(&fld).unwrap();
            assert_eq!(pred.counts, spectrum(expect), "predicted, q={}", fld.q());
            assert_eq!(pred.uniformity, sp.uniformity);
        }
    }

    #[test]
    fn row_reduction_holds_for_every_row() {
        for &(p, n) in &[(7u64, 1u32), (11, 1), (19, 1), (3, 3)] {
            let fld = f(p, n);
            for u_idx in [0u64, 1, 2, 5] {
                if u_idx >= fld.q() {
                    continue;
                }
                let u = fld.element(u_idx).unwrap();
                let g = build_binomial(&fld, None, u).unwrap();
                for a in 1..fld.q() {
                    let a = fld.element(a).unwrap();
                    assert!(verify_row_reduction(&g, a).unwrap());
                }
            }
            let sq = build_power(&fld, 2).unwrap();
            for a in 1..fld.q() {
                let a = fld.element(a).unwrap();
                assert!(verify_row_reduction(&sq, a).unwrap());
            }
        }
    }

    #[test]
    fn locality_labels() {
        let f11 = f(11, 1);
        let g11 = build_binomial(&f11, None, f11.one()).unwrap();
        assert_eq!(
            classify_locality(&g11, LocalityMode::Punctured),
            Locality::LocallyPn
        );
        // Strict mode has nothing to test on a prime field.
        assert_eq!(
            classify_locality(&g11, LocalityMode::Strict),
            Locality::LocallyPn
        );

        let f7 = f(7, 1);
        let g7 = build_binomial(&f7, None, f7.one()).unwrap();
        assert_eq!(
            classify_locality(&g7, LocalityMode::Punctured),
            Locality::LocallyApn
        );

        let f27 = f(3, 3);
        let g27 = build_binomial(&f27, None, f27.one()).unwrap();
        assert_eq!(
            classify_locality(&g27, LocalityMode::Strict),
            Locality::LocallyPn
        );
        assert_eq!(
            classify_locality(&g27, LocalityMode::Punctured),
            Locality::LocallyPn
        );

        // u = 2 over F_11 has a row-1 value of 3 away from b = 0.
        let g = build_binomial(&f11, None, f11.embed(2)).unwrap();
        assert_eq!(
            classify_locality(&g, LocalityMode::Punctured),
            Locality::Neither
        );
    }

    #[test]
    fn quadrant_profile_totals_row() {
        let f11 = f(11, 1);
        let g = build_binomial(&f11, None, f11.embed(3)).unwrap();
        let row = ddt_row(&g, f11.one()).unwrap();
        let prof = quadrant_profile(&g);
        for (b, counts) in prof.iter().enumerate() {
            assert_eq!(counts.total(), row[b], "b={}", b);
        }
        let qc = quadrant_counts(&g, f11.embed(2)).unwrap();
        assert_eq!(qc, prof[2].clone());
    }

    #[test]
    fn u1_predictions_match_bruteforce() {
        for &(p, n) in &[(7u64, 1u32), (11, 1), (19, 1), (23, 1), (31, 1), (3, 3)] {
            let fld = f(p, n);
            let g = build_binomial(&fld, None, fld.one()).unwrap();
            let prof = quadrant_profile(&g);
            for b_idx in 1..fld.q() {
                let b = fld.element(b_idx).unwrap();
                let pred = predict_quadrants_u1(&fld, b).unwrap();
                let brute = &prof[b_idx as usize];
                assert!(pred.matches(brute), "q={} b={}: {:?} vs {:?}", fld.q(), b_idx, pred, brute);
                assert!(pred.d01 + pred.d10 <= 1, "q={} b={}", fld.q(), b_idx);
                check_witnesses(&fld, &g, &pred);
            }
            // b = 0 is the S11 row: (q-3)/4 interior solutions plus x = -1.
            let zero_row = &prof[0];
            assert_eq!(zero_row.d11, (fld.q() - 3) / 4);
            assert!(zero_row.sol_at_neg1);
            assert!(!zero_row.sol_at_0);
            assert_eq!(zero_row.d00 + zero_row.d01 + zero_row.d10, 0);
            assert!(predict_quadrants_u1(&fld, fld.zero()).is_err());
        }
    }

    fn check_witnesses(fld: &Field, g: &FunctionTable, pred: &QuadrantPrediction) {
        let expected_signs = [(1, 1), (1, -1), (-1, 1), (-1, -1)];
        for (quad, ws) in pred.witnesses.iter().enumerate() {
            for &x in ws {
                let x1 = fld.add_idx(x, 1);
                let got = fld.sub_idx(g.eval_idx(x1), g.eval_idx(x));
                assert_eq!(got, pred.b, "witness x={} solves nothing", x);
                assert_eq!(
                    (fld.chi_idx(x), fld.chi_idx(x1)),
                    expected_signs[quad],
                    "witness x={} sits in the wrong quadrant",
                    x
                );
            }
            assert_eq!(
                ws.len() as u64,
                [pred.d00, pred.d01, pred.d10, pred.d11][quad],
                "witness count disagrees with predicted count"
            );
        }
    }

    #[test]
    fn general_u_predictions_match_bruteforce() {
        for &(p, n) in &[(11u64, 1u32), (19, 1), (23, 1), (3, 3)] {
            let fld = f(p, n);
            let neg1 = fld.neg_idx(1);
            for u_idx in 2..fld.q() as u32 {
                if u_idx == neg1 {
                    continue;
                }
                let u = fld.element(u_idx as u64).unwrap();
                let g = build_binomial(&fld, None, u).unwrap();
                let prof = quadrant_profile(&g);
                for b_idx in 1..fld.q() {
                    let b = fld.element(b_idx).unwrap();
                    let pred = predict_quadrants_general(&fld, u, b).unwrap();
                    let brute = &prof[b_idx as usize];
                    assert!(
                        pred.matches(brute),
                        "q={} u={} b={}: {:?} vs {:?}",
                        fld.q(),
                        u_idx,
                        b_idx,
                        pred,
                        brute
                    );
                    check_witnesses(&fld, &g, &pred);
                }
            }
        }
    }

    #[test]
    fn general_u_frozen_example() {
        // F_11, u = 3, b = 2: one solution in each of S00, S01, S10.
        let f11 = f(11, 1);
        let u = f11.embed(3);
        let pred = predict_quadrants_general(&f11, u, f11.embed(2)).unwrap();
        assert_eq!(pred.counts(), (1, 1, 1, 0));
        assert_eq!(pred.witnesses[0], vec![4]);
        assert_eq!(pred.witnesses[1], vec![1]);
        assert_eq!(pred.witnesses[2], vec![8]);
        assert!(pred.witnesses[3].is_empty());
        assert!(!pred.sol_at_0 && !pred.sol_at_neg1);
        // b = 1 + u hits the boundary solution x = 0 instead.
        let pred4 = predict_quadrants_general(&f11, u, f11.embed(4)).unwrap();
        assert!(pred4.sol_at_0);
        assert_eq!(pred4.counts(), (0, 0, 0, 0));

        assert!(predict_quadrants_general(&f11, f11.one(), f11.embed(2)).is_err());
        assert!(predict_quadrants_general(&f11, f11.zero(), f11.embed(2)).is_err());
        assert!(predict_quadrants_general(&f11, u, f11.zero()).is_err());
    }

    #[test]
    fn stacked_counts_stay_bounded() {
        // Two anti-stacking facts keep the row-1 total at 4 or 5:
        // away from the boundary b values, d00 = 1 and d01 = 2 force
        // d10 <= 1; and when chi(1+u) = (-1)^r chi(1-u), d00 = d11 = 1
        // forces d01 <= 1 and d10 <= 1.
        for &(p, n) in &[(11u64, 1u32), (19, 1), (23, 1), (31, 1), (3, 3)] {
            let fld = f(p, n);
            let r = fld.r().unwrap();
            let sign_r: i32 = if r % 2 == 0 { 1 } else { -1 };
            let neg1 = fld.neg_idx(1);
            for u_idx in 2..fld.q() as u32 {
                if u_idx == neg1 {
                    continue;
                }
                let u = fld.element(u_idx as u64).unwrap();
                let g = build_binomial(&fld, None, u).unwrap();
                let prof = quadrant_profile(&g);
                let opu = fld.add_idx(1, u_idx);
                let omu = fld.sub_idx(1, u_idx);
                let b_r = if r % 2 == 0 { omu } else { fld.neg_idx(omu) }; // (-1)^r (1-u)
                let balanced =
                    fld.chi_idx(opu) == sign_r * fld.chi_idx(omu);
                for c in prof.iter().skip(1) {
                    if c.b != opu && c.b != b_r && c.d00 == 1 && c.d01 == 2 {
                        assert!(c.d10 <= 1, "q={} u={} b={}", fld.q(), u_idx, c.b);
                    }
                    if balanced && c.d00 == 1 && c.d11 == 1 {
                        assert!(
                            c.d01 <= 1 && c.d10 <= 1,
                            "q={} u={} b={}",
                            fld.q(),
                            u_idx,
                            c.b
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn uniformity_bounds_small_fields() {
        // delta <= 4 when chi(1+u) = (-1)^r chi(1-u), else delta <= 5 and
        // the map permutes the field.
        for &(p, n) in &[(11u64, 1u32), (19, 1), (23, 1), (3, 3)] {
            let fld = f(p, n);
            let r = fld.r().unwrap();
            let sign_r: i32 = if r % 2 == 0 { 1 } else { -1 };
            let neg1 = fld.neg_idx(1);
            for u_idx in 2..fld.q() as u32 {
                if u_idx == neg1 {
                    continue;
                }
                let u = fld.element(u_idx as u64).unwrap();
                let g = build_binomial(&fld, None, u).unwrap();
                let delta_f = differential_uniformity(&g);
                let balanced = fld.chi_idx(fld.add_idx(1, u_idx))
                    == sign_r * fld.chi_idx(fld.sub_idx(1, u_idx));
                if balanced {
                    assert!(delta_f <= 4, "q={} u={}", fld.q(), u_idx);
                } else {
                    assert!(delta_f <= 5, "q={} u={}", fld.q(), u_idx);
                    assert!(g.is_permutation(), "q={} u={}", fld.q(), u_idx);
                }
                assert_eq!(
                    predict_permutation(&fld, None, u).unwrap(),
                    g.is_permutation()
                );
            }
        }
    }
}
