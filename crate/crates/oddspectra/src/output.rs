//! Output documents and their renderings. Every command produces a typed,
//! serializable document first; JSON, CSV, and markdown views are derived
//! from the document, never assembled ad hoc, so parsing a JSON output and
//! re-serializing it is idempotent.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::boom;
use crate::charsum::{self, IdentityResult};
use crate::diff::{self, Locality, LocalityMode, QuadrantCounts};
use crate::error::Result;
use crate::field::Field;
use crate::funcs;
use crate::verify::{ScanConfig, Theorem, VerificationReport};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    Markdown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldInfoDoc {
    pub schema_version: u32,
    pub p: u64,
    pub n: u32,
    pub q: u64,
    pub r: Option<u64>,
    pub modulus: String,
    /// Constant term first.
    pub modulus_coeffs: Vec<u64>,
    pub generator: String,
    pub generator_index: u64,
    /// Sizes of the four sign classes of (chi(x), chi(x+1)).
    pub quadrant_sizes: [u64; 4],
}

pub fn build_field_info_doc(fld: &Field) -> FieldInfoDoc {
    FieldInfoDoc {
        schema_version: SCHEMA_VERSION,
        p: fld.p(),
        n: fld.n(),
        q: fld.q(),
        r: fld.r(),
        modulus: fld.modulus_string(),
        modulus_coeffs: fld.modulus().to_vec(),
        generator: fld.fmt_element(fld.generator()),
        generator_index: fld.generator().index(),
        quadrant_sizes: charsum::quadrant_sizes(fld),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiffSection {
    pub spectrum: BTreeMap<u64, u64>,
    pub row1_uniformity: u64,
    /// Max over all rows, not just row 1.
    pub full_uniformity: u64,
    pub locality: Locality,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoomSection {
    pub spectrum: BTreeMap<u64, u64>,
    pub row1_uniformity: u64,
    /// Absent when q is above the full-table cap.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub full_uniformity: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalyzeDoc {
    pub schema_version: u32,
    pub p: u64,
    pub n: u32,
    pub q: u64,
    pub label: String,
    pub r: u64,
    pub u_index: u64,
    pub u_display: String,
    pub is_permutation: bool,
    /// Absent when the criterion does not speak about this u.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub predicted_permutation: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diff: Option<DiffSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boom: Option<BoomSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quadrants: Option<Vec<QuadrantCounts>>,
}

pub struct AnalyzeRequest {
    pub r: Option<u64>,
    pub u_index: u64,
    pub diff: bool,
    pub boom: bool,
    pub quadrants: bool,
    /// Quadrant rows to emit; empty means every b.
    pub b_indices: Vec<u64>,
    pub full_bct_cap: u64,
}

pub fn build_analyze_doc(fld: &Arc<Field>, req: &AnalyzeRequest) -> Result<AnalyzeDoc> {
    let u = fld.element(req.u_index)?;
    let table = funcs::build_binomial(fld, req.r, u)?;
    let r = match table.kind() {
        funcs::FunctionKind::Binomial { r, .. } => *r,
        funcs::FunctionKind::Power { d } => *d,
    };
    let diff_section = if req.diff {
        let sp = diff::diff_spectrum(&table)?;
        Some(DiffSection {
            row1_uniformity: sp.uniformity,
            spectrum: sp.counts,
            full_uniformity: diff::differential_uniformity(&table),
            locality: diff::classify_locality(&table, LocalityMode::Punctured),
        })
    } else {
        None
    };
    let boom_section = if req.boom {
        let sp = boom::boom_spectrum(&table)?;
        let full = if fld.q() <= req.full_bct_cap {
            Some(boom::boomerang_uniformity(&table, req.full_bct_cap)?)
        } else {
            None
        };
        Some(BoomSection {
            row1_uniformity: sp.uniformity,
            spectrum: sp.counts,
            full_uniformity: full,
        })
    } else {
        None
    };
    let quadrants = if req.quadrants {
        let prof = diff::quadrant_profile(&table);
        let rows = if req.b_indices.is_empty() {
            prof
        } else {
            let mut rows = Vec::with_capacity(req.b_indices.len());
            for &b in &req.b_indices {
                fld.element(b)?;
                rows.push(prof[b as usize].clone());
            }
            rows
        };
        Some(rows)
    } else {
        None
    };
    Ok(AnalyzeDoc {
        schema_version: SCHEMA_VERSION,
        p: fld.p(),
        n: fld.n(),
        q: fld.q(),
        label: table.label().to_string(),
        r,
        u_index: req.u_index,
        u_display: fld.fmt_element(u),
        is_permutation: table.is_permutation(),
        predicted_permutation: funcs::predict_permutation(fld, req.r, u).ok(),
        diff: diff_section,
        boom: boom_section,
        quadrants,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanDoc {
    pub schema_version: u32,
    pub config: ScanConfig,
    pub all_matched: bool,
    pub reports: Vec<VerificationReport>,
}

pub fn build_scan_doc(config: ScanConfig, reports: Vec<VerificationReport>) -> ScanDoc {
    ScanDoc {
        schema_version: SCHEMA_VERSION,
        all_matched: reports.iter().all(|r| r.matched),
        config,
        reports,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaSection {
    pub direct: i64,
    pub s1: i64,
    pub s2: i64,
    pub split: i64,
    pub matched: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolySection {
    /// Canonical indices, constant term first, as evaluated.
    pub coeffs: Vec<u64>,
    pub polynomial: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<u64>,
    pub sum: i64,
    /// Closed form, present for honest quadratics.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closed_quadratic: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharsumDoc {
    pub schema_version: u32,
    pub p: u64,
    pub n: u32,
    pub q: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<GammaSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poly: Option<PolySection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub suite: Option<Vec<IdentityResult>>,
    pub all_matched: bool,
}

pub enum CharsumMode {
    Suite { seed: u64 },
    Gamma,
    Poly { coeffs: Vec<u32> },
}

pub fn build_charsum_doc(fld: &Field, mode: &CharsumMode) -> Result<CharsumDoc> {
    let mut doc = CharsumDoc {
        schema_version: SCHEMA_VERSION,
        p: fld.p(),
        n: fld.n(),
        q: fld.q(),
        gamma: None,
        poly: None,
        suite: None,
        all_matched: true,
    };
    match mode {
        CharsumMode::Suite { seed } => {
            let rows = charsum::identity_suite(fld, *seed);
            doc.all_matched = rows.iter().all(|r| r.matched);
            doc.suite = Some(rows);
        }
        CharsumMode::Gamma => {
            let direct = charsum::gamma(fld)?;
            let (s1, s2, split) = charsum::gamma_split(fld)?;
            doc.all_matched = direct == split;
            doc.gamma = Some(GammaSection {
                direct,
                s1,
                s2,
                split,
                matched: direct == split,
            });
        }
        CharsumMode::Poly { coeffs } => {
            let sum = charsum::char_sum(fld, coeffs);
            let degree = coeffs
                .iter()
                .rposition(|&c| c != 0)
                .map(|d| d as u64);
            let closed = if degree == Some(2) {
                Some(charsum::quad_char_sum_closed(
                    fld,
                    fld.element(coeffs[2] as u64)?,
                    fld.element(coeffs[1] as u64)?,
                    fld.element(coeffs[0] as u64)?,
                )?)
            } else {
                None
            };
            if let Some(c) = closed {
                doc.all_matched = c == sum;
            }
            doc.poly = Some(PolySection {
                coeffs: coeffs.iter().map(|&c| c as u64).collect(),
                polynomial: poly_string(fld, coeffs),
                degree,
                sum,
                closed_quadratic: closed,
            });
        }
    }
    Ok(doc)
}

/// Human form of a coefficient list, highest power first.
fn poly_string(fld: &Field, coeffs: &[u32]) -> String {
    let mut parts = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let coeff = fld.fmt_element_idx(c);
        let part = match i {
            0 => coeff,
            1 if c == 1 => "x".to_string(),
            1 => format!("({})*x", coeff),
            _ if c == 1 => format!("x^{}", i),
            _ => format!("({})*x^{}", coeff, i),
        };
        parts.push(part);
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

// --- rendering ---

fn json_of<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents always serialize");
    s.push('\n');
    s
}

fn csv_escape(field: &str) -> String {
    if field.contains(',') || field.contains('"') || field.contains('\n') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

fn csv_line(fields: &[String]) -> String {
    fields
        .iter()
        .map(|f| csv_escape(f))
        .collect::<Vec<_>>()
        .join(",")
}

/// `i:count` pairs joined by `;`, ascending in `i`.
pub fn spectrum_compact(counts: &BTreeMap<u64, u64>) -> String {
    counts
        .iter()
        .map(|(i, c)| format!("{}:{}", i, c))
        .collect::<Vec<_>>()
        .join(";")
}

/// `{ letter_0 = c0, letter_1 = c1, ... }`, mirroring the published tables.
pub fn spectrum_pretty(counts: &BTreeMap<u64, u64>, letter: &str) -> String {
    let inner = counts
        .iter()
        .map(|(i, c)| format!("{}_{} = {}", letter, i, c))
        .collect::<Vec<_>>()
        .join(", ");
    format!("{{ {} }}", inner)
}

pub fn render_scan(doc: &ScanDoc, fmt: OutputFormat) -> String {
    match fmt {
        OutputFormat::Json => json_of(doc),
        OutputFormat::Csv => {
            let mut out = String::from("q,p,n,theorem,match,spectrum,gamma,elapsed_ms\n");
            for r in &doc.reports {
                let spectrum = r
                    .computed_spectrum
                    .as_ref()
                    .map(spectrum_compact)
                    .unwrap_or_default();
                let gamma = r.gamma.map(|g| g.to_string()).unwrap_or_default();
                let line = csv_line(&[
                    r.q.to_string(),
                    r.p.to_string(),
                    r.n.to_string(),
                    r.theorem.id().to_string(),
                    r.matched.to_string(),
                    spectrum,
                    gamma,
                    r.elapsed_ms.to_string(),
                ]);
                out.push_str(&line);
                out.push('\n');
            }
            out
        }
        OutputFormat::Markdown => render_scan_markdown(doc),
    }
}

fn render_scan_markdown(doc: &ScanDoc) -> String {
    let mut out = String::new();
    let theorem = doc.config.theorem;
    let _ = writeln!(out, "## {} scan, q <= {}", theorem.id(), doc.config.q_max);
    out.push('\n');
    if doc.reports.is_empty() {
        out.push_str("no applicable fields in range\n");
        return out;
    }
    match theorem {
        Theorem::Ds => {
            out.push_str("| p^n | differential spectrum |\n|---:|---|\n");
            for r in &doc.reports {
                let cell = r
                    .computed_spectrum
                    .as_ref()
                    .map(|c| spectrum_pretty(c, "omega"))
                    .unwrap_or_default();
                let _ = writeln!(out, "| {} | {} |", r.q, cell);
            }
        }
        Theorem::Bs => {
            out.push_str("| p^n | Gamma | boomerang spectrum |\n|---:|---:|---|\n");
            for r in &doc.reports {
                let cell = r
                    .computed_spectrum
                    .as_ref()
                    .map(|c| spectrum_pretty(c, "nu"))
                    .unwrap_or_default();
                let gamma = r.gamma.map(|g| g.to_string()).unwrap_or_default();
                let _ = writeln!(out, "| {} | {} | {} |", r.q, gamma, cell);
            }
        }
        _ => {
            out.push_str("| p^n | matched | elapsed_ms |\n|---:|:---:|---:|\n");
            for r in &doc.reports {
                let _ = writeln!(
                    out,
                    "| {} | {} | {} |",
                    r.q,
                    if r.matched { "yes" } else { "NO" },
                    r.elapsed_ms
                );
            }
        }
    }
    out.push('\n');
    let mismatched: Vec<&VerificationReport> =
        doc.reports.iter().filter(|r| !r.matched).collect();
    if mismatched.is_empty() {
        let _ = writeln!(out, "all {} fields matched", doc.reports.len());
    } else {
        let _ = writeln!(
            out,
            "MISMATCH in {} of {} fields",
            mismatched.len(),
            doc.reports.len()
        );
        for r in mismatched {
            for f in &r.failures {
                let _ = writeln!(out, "- q={}: {}", r.q, f);
            }
        }
    }
    out
}

pub fn render_field_info(doc: &FieldInfoDoc, fmt: OutputFormat) -> String {
    match fmt {
        OutputFormat::Json => json_of(doc),
        OutputFormat::Csv => {
            let mut out = String::from("key,value\n");
            let coeffs = doc
                .modulus_coeffs
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            let rows = [
                ("p", doc.p.to_string()),
                ("n", doc.n.to_string()),
                ("q", doc.q.to_string()),
                (
                    "r",
                    doc.r.map(|r| r.to_string()).unwrap_or_default(),
                ),
                ("modulus", doc.modulus.clone()),
                ("modulus_coeffs", coeffs),
                ("generator", doc.generator.clone()),
                ("generator_index", doc.generator_index.to_string()),
                ("s00", doc.quadrant_sizes[0].to_string()),
                ("s01", doc.quadrant_sizes[1].to_string()),
                ("s10", doc.quadrant_sizes[2].to_string()),
                ("s11", doc.quadrant_sizes[3].to_string()),
            ];
            for (k, v) in rows {
                out.push_str(&csv_line(&[k.to_string(), v]));
                out.push('\n');
            }
            out
        }
        OutputFormat::Markdown => {
            let mut out = String::new();
            let _ = writeln!(out, "# F_{}", doc.q);
            out.push('\n');
            let _ = writeln!(out, "- q: {} (p = {}, n = {})", doc.q, doc.p, doc.n);
            match doc.r {
                Some(r) => {
                    let _ = writeln!(out, "- r = (q+1)/4: {}", r);
                }
                None => {
                    let _ = writeln!(out, "- r = (q+1)/4: undefined (q = 1 mod 4)");
                }
            }
            let _ = writeln!(
                out,
                "- modulus: {} (coefficients, constant first: {:?})",
                doc.modulus, doc.modulus_coeffs
            );
            let _ = writeln!(
                out,
                "- generator: {} (index {})",
                doc.generator, doc.generator_index
            );
            let s = &doc.quadrant_sizes;
            let _ = writeln!(
                out,
                "- sign classes (S00, S01, S10, S11): {}, {}, {}, {}",
                s[0], s[1], s[2], s[3]
            );
            out
        }
    }
}

pub fn render_analyze(doc: &AnalyzeDoc, fmt: OutputFormat) -> String {
    match fmt {
        OutputFormat::Json => json_of(doc),
        OutputFormat::Csv => {
            let mut out = String::from("key,value\n");
            let mut push = |k: &str, v: String| {
                out.push_str(&csv_line(&[k.to_string(), v]));
                out.push('\n');
            };
            push("label", doc.label.clone());
            push("q", doc.q.to_string());
            push("r", doc.r.to_string());
            push("u_index", doc.u_index.to_string());
            push("is_permutation", doc.is_permutation.to_string());
            if let Some(p) = doc.predicted_permutation {
                push("predicted_permutation", p.to_string());
            }
            if let Some(d) = &doc.diff {
                push("diff_spectrum", spectrum_compact(&d.spectrum));
                push("diff_row1_uniformity", d.row1_uniformity.to_string());
                push("diff_full_uniformity", d.full_uniformity.to_string());
                push("locality", d.locality.to_string());
            }
            if let Some(b) = &doc.boom {
                push("boom_spectrum", spectrum_compact(&b.spectrum));
                push("boom_row1_uniformity", b.row1_uniformity.to_string());
                if let Some(f) = b.full_uniformity {
                    push("boom_full_uniformity", f.to_string());
                }
            }
            if let Some(rows) = &doc.quadrants {
                for qc in rows {
                    push(
                        &format!("quadrants_b_{}", qc.b),
                        format!(
                            "d00={};d01={};d10={};d11={};at0={};atneg1={}",
                            qc.d00, qc.d01, qc.d10, qc.d11, qc.sol_at_0, qc.sol_at_neg1
                        ),
                    );
                }
            }
            out
        }
        OutputFormat::Markdown => {
            let mut out = String::new();
            let _ = writeln!(out, "# {}", doc.label);
            out.push('\n');
            let _ = writeln!(out, "- q: {} (p = {}, n = {})", doc.q, doc.p, doc.n);
            let _ = writeln!(out, "- r: {}, u: {} (index {})", doc.r, doc.u_display, doc.u_index);
            let predicted = match doc.predicted_permutation {
                Some(true) => " (criterion: yes)",
                Some(false) => " (criterion: no)",
                None => "",
            };
            let _ = writeln!(
                out,
                "- permutation: {}{}",
                if doc.is_permutation { "yes" } else { "no" },
                predicted
            );
            if let Some(d) = &doc.diff {
                let _ = writeln!(
                    out,
                    "- differential: row-1 spectrum {}, uniformity {} (row 1: {}), {}",
                    spectrum_pretty(&d.spectrum, "omega"),
                    d.full_uniformity,
                    d.row1_uniformity,
                    d.locality
                );
            }
            if let Some(b) = &doc.boom {
                let full = match b.full_uniformity {
                    Some(f) => format!("uniformity {}", f),
                    None => "full table above cap".to_string(),
                };
                let _ = writeln!(
                    out,
                    "- pairs: row-1 spectrum {}, {} (row 1: {})",
                    spectrum_pretty(&b.spectrum, "nu"),
                    full,
                    b.row1_uniformity
                );
            }
            if let Some(rows) = &doc.quadrants {
                out.push('\n');
                out.push_str("## quadrant rows\n\n");
                out.push_str(
                    "| b | d00 | d01 | d10 | d11 | at x=0 | at x=-1 | total |\n\
                     |---:|---:|---:|---:|---:|:---:|:---:|---:|\n",
                );
                for qc in rows {
                    let _ = writeln!(
                        out,
                        "| {} | {} | {} | {} | {} | {} | {} | {} |",
                        qc.b,
                        qc.d00,
                        qc.d01,
                        qc.d10,
                        qc.d11,
                        if qc.sol_at_0 { "x" } else { "" },
                        if qc.sol_at_neg1 { "x" } else { "" },
                        qc.total()
                    );
                }
            }
            out
        }
    }
}

pub fn render_charsums(doc: &CharsumDoc, fmt: OutputFormat) -> String {
    match fmt {
        OutputFormat::Json => json_of(doc),
        OutputFormat::Csv => {
            if let Some(rows) = &doc.suite {
                let mut out = String::from("name,q,applicable,computed,expected,matched\n");
                for r in rows {
                    out.push_str(&csv_line(&[
                        r.name.clone(),
                        r.q.to_string(),
                        r.applicable.to_string(),
                        r.computed.to_string(),
                        r.expected.to_string(),
                        r.matched.to_string(),
                    ]));
                    out.push('\n');
                }
                return out;
            }
            let mut out = String::from("key,value\n");
            let mut push = |k: &str, v: String| {
                out.push_str(&csv_line(&[k.to_string(), v]));
                out.push('\n');
            };
            push("q", doc.q.to_string());
            if let Some(g) = &doc.gamma {
                push("gamma", g.direct.to_string());
                push("gamma_split", g.split.to_string());
                push("s1", g.s1.to_string());
                push("s2", g.s2.to_string());
                push("matched", g.matched.to_string());
            }
            if let Some(p) = &doc.poly {
                push("polynomial", p.polynomial.clone());
                push(
                    "degree",
                    p.degree.map(|d| d.to_string()).unwrap_or_default(),
                );
                push("sum", p.sum.to_string());
                if let Some(c) = p.closed_quadratic {
                    push("closed_quadratic", c.to_string());
                }
            }
            out
        }
        OutputFormat::Markdown => {
            let mut out = String::new();
            let _ = writeln!(out, "# character sums over F_{}", doc.q);
            out.push('\n');
            if let Some(g) = &doc.gamma {
                let _ = writeln!(out, "- Gamma: {}", g.direct);
                let _ = writeln!(
                    out,
                    "- split route: ({} - {} - 1)/2 = {} ({})",
                    g.s1,
                    g.s2,
                    g.split,
                    if g.matched { "agrees" } else { "DISAGREES" }
                );
            }
            if let Some(p) = &doc.poly {
                let _ = writeln!(out, "- polynomial: {}", p.polynomial);
                let _ = writeln!(out, "- sum chi(f(x)): {}", p.sum);
                if let Some(c) = p.closed_quadratic {
                    let _ = writeln!(
                        out,
                        "- quadratic closed form: {} ({})",
                        c,
                        if doc.all_matched { "agrees" } else { "DISAGREES" }
                    );
                }
            }
            if let Some(rows) = &doc.suite {
                out.push_str("| identity | computed | expected | matched |\n|---|---:|---:|:---:|\n");
                for r in rows {
                    let _ = writeln!(
                        out,
                        "| {} | {} | {} | {} |",
                        r.name,
                        if r.applicable {
                            r.computed.to_string()
                        } else {
                            "n/a".to_string()
                        },
                        if r.applicable {
                            r.expected.to_string()
                        } else {
                            "n/a".to_string()
                        },
                        if r.matched { "yes" } else { "NO" }
                    );
                }
                out.push('\n');
                let _ = writeln!(
                    out,
                    "{}",
                    if doc.all_matched {
                        "all applicable identities matched"
                    } else {
                        "MISMATCH in the identity suite"
                    }
                );
            }
            out
        }
    }
}
