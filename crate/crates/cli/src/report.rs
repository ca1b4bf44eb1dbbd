//! Report documents: deterministic field order, rationals rendered "p/q".

use serde::Serialize;
use serde_json::Value;

use sympair_core::conelattice::{ConeDecomposition, ConvergenceReport, CoverReport};
use sympair_core::criteria::{
    EvalRow, ExponentProfile, IntegrabilityReport, PairClassification, ThetaParabolic, Verdict,
    Witness,
};
use sympair_core::linalg::rat_to_string;
use sympair_core::sympair::{CosetReps, DescendentSystem};
use sympair_core::{Int, QMat, Rat, RatVec};

pub fn rat_str(r: &Rat) -> String {
    rat_to_string(r)
}

pub fn vec_str(v: &RatVec) -> Vec<String> {
    v.coords().iter().map(rat_str).collect()
}

pub fn int_vec_str(v: &[Int]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

pub fn mat_str(m: &QMat) -> Vec<Vec<String>> {
    m.rows()
        .iter()
        .map(|row| row.iter().map(rat_str).collect())
        .collect()
}

#[derive(Serialize)]
pub struct InputEcho {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<Value>,
    pub raw: bool,
}

#[derive(Serialize)]
pub struct WitnessDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w: Option<usize>,
    pub subset: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coefficient: Option<String>,
    pub reason: String,
}

impl WitnessDoc {
    fn from(w: &Witness) -> Self {
        WitnessDoc {
            w: w.w,
            subset: w.subset.clone(),
            chi: w.chi,
            generator: w.generator,
            coefficient: w.coefficient.as_ref().map(rat_str),
            reason: w.reason.name().into(),
        }
    }
}

#[derive(Serialize)]
pub struct VerdictDoc {
    pub kind: String,
    pub witnesses: Vec<WitnessDoc>,
}

impl VerdictDoc {
    pub fn from(v: &Verdict) -> Self {
        VerdictDoc {
            kind: v.kind.name().into(),
            witnesses: v.witnesses.iter().map(WitnessDoc::from).collect(),
        }
    }
}

#[derive(Serialize)]
pub struct AmbientSummary {
    pub rank: usize,
    pub num_roots: usize,
    pub simple_roots: Vec<Vec<String>>,
    pub negated_simple_positions: Vec<usize>,
    pub fixed_root_count: usize,
    /// Involutive pairing of the non-negated ambient simple positions.
    pub simple_permutation: Vec<[usize; 2]>,
}

#[derive(Serialize)]
pub struct RestrictedRootDoc {
    pub vector: Vec<String>,
    pub positive: bool,
    pub mg: u32,
    pub mh: u32,
    pub m_theta: i64,
    pub fiber_size: usize,
}

#[derive(Serialize)]
pub struct DescendentSummary {
    pub rank: usize,
    pub roots: Vec<RestrictedRootDoc>,
    /// Indices into `roots` of the simple restricted roots; profile subsets
    /// index into this list.
    pub simple_positions: Vec<usize>,
    pub simple_roots: Vec<Vec<String>>,
    pub subgroup_num_roots: usize,
    pub subgroup_simple_roots: Vec<Vec<String>>,
}

#[derive(Serialize)]
pub struct WeylSummary {
    pub restricted_order: usize,
    pub subgroup_order: usize,
    pub transversal_size: usize,
}

#[derive(Serialize)]
pub struct TransversalEntry {
    pub index: usize,
    pub matrix: Vec<Vec<String>>,
    pub test_character: Vec<String>,
    /// Expansion of the test character over the simple restricted roots.
    pub coefficients: Vec<String>,
}

#[derive(Serialize)]
pub struct ParabolicEntry {
    pub subset: Vec<usize>,
    pub ambient_subset: Vec<usize>,
    pub face_generator_count: usize,
}

#[derive(Serialize)]
pub struct AnalyzeReport {
    pub input: InputEcho,
    pub ambient: AmbientSummary,
    pub descendent: DescendentSummary,
    pub weyl: WeylSummary,
    pub transversal: Vec<TransversalEntry>,
    pub parabolics: Vec<ParabolicEntry>,
    pub verdict: VerdictDoc,
    pub warnings: Vec<String>,
}

pub fn descendent_summary(ds: &DescendentSystem) -> DescendentSummary {
    let rs = ds.restricted();
    DescendentSummary {
        rank: ds.delta_gh().len(),
        roots: (0..rs.num_roots())
            .map(|i| RestrictedRootDoc {
                vector: vec_str(rs.root(i)),
                positive: rs.is_positive(i),
                mg: ds.mg(i),
                mh: ds.mh(i),
                m_theta: ds.m_theta(i),
                fiber_size: ds.fiber(i).len(),
            })
            .collect(),
        simple_positions: ds.delta_gh().to_vec(),
        simple_roots: ds.delta_gh_roots().iter().map(vec_str).collect(),
        subgroup_num_roots: ds.sigma_h().num_roots(),
        subgroup_simple_roots: ds.delta_h().iter().map(vec_str).collect(),
    }
}

pub fn transversal_entries(ds: &DescendentSystem, reps: &CosetReps) -> Vec<TransversalEntry> {
    let delta = ds.delta_gh_roots();
    reps.rho
        .iter()
        .enumerate()
        .map(|(k, rho)| {
            let coeffs = sympair_core::linalg::solve_in_span(rho, &delta)
                .ok()
                .flatten()
                .map(|cs| cs.iter().map(rat_str).collect())
                .unwrap_or_default();
            TransversalEntry {
                index: k,
                matrix: mat_str(&reps.transversal_matrices[k]),
                test_character: vec_str(rho),
                coefficients: coeffs,
            }
        })
        .collect()
}

pub fn parabolic_entries(pars: &[ThetaParabolic]) -> Vec<ParabolicEntry> {
    pars.iter()
        .map(|p| ParabolicEntry {
            subset: p.subset.clone(),
            ambient_subset: p.ambient_subset.clone(),
            face_generator_count: p.generator_positions().len(),
        })
        .collect()
}

#[derive(Serialize)]
pub struct CoefficientDoc {
    pub generator: usize,
    pub value: String,
}

#[derive(Serialize)]
pub struct RowDoc {
    pub subset: Vec<usize>,
    pub chi: usize,
    pub w: usize,
    pub in_span: bool,
    pub ok: bool,
    pub coefficients: Vec<CoefficientDoc>,
}

impl RowDoc {
    pub fn from(row: &EvalRow) -> Self {
        RowDoc {
            subset: row.subset.clone(),
            chi: row.chi,
            w: row.w,
            in_span: row.report.in_span,
            ok: row.report.ok,
            coefficients: row
                .report
                .coefficients
                .iter()
                .map(|(g, c)| CoefficientDoc {
                    generator: *g,
                    value: rat_str(c),
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct CheckReport {
    pub input: InputEcho,
    pub mode: String,
    pub verdict: VerdictDoc,
    pub rows: Vec<RowDoc>,
    pub warnings: Vec<String>,
}

pub fn profile_warnings(profile: &ExponentProfile, missing: &[Vec<usize>]) -> Vec<String> {
    let mut warnings = Vec::new();
    if !missing.is_empty() {
        warnings.push(format!(
            "WARNING: no exponents supplied for {} of the parabolic subsets {:?}; \
             the criterion quantifies over all of them, these passed vacuously",
            missing.len(),
            missing
        ));
    }
    for (subset, idx, part) in &profile.discarded {
        warnings.push(format!(
            "exponent {idx} at subset {subset:?} had a nonzero anti-invariant component \
             {part:?} (discarded by projection)"
        ));
    }
    warnings
}

#[derive(Serialize)]
pub struct GeneratorDoc {
    pub position: usize,
    pub ambient: Vec<String>,
    pub quotient: Vec<String>,
    pub self_pairing: String,
}

#[derive(Serialize)]
pub struct ConeDoc {
    pub quotient_rank: usize,
    pub index: String,
    pub generators: Vec<GeneratorDoc>,
    pub transversal: Vec<Vec<String>>,
    pub pairing_table: Vec<Vec<String>>,
    pub central_rank: usize,
}

pub fn cone_doc(d: &ConeDecomposition) -> ConeDoc {
    ConeDoc {
        quotient_rank: d.quot_rank,
        index: d.quotient.index.to_string(),
        generators: (0..d.quot_rank)
            .map(|i| GeneratorDoc {
                position: i,
                ambient: int_vec_str(&d.y_ambient[i]),
                quotient: int_vec_str(&d.y_quot[i]),
                self_pairing: d.c_alpha[i].to_string(),
            })
            .collect(),
        transversal: d.transversal.iter().map(|e| int_vec_str(e)).collect(),
        pairing_table: d
            .pairing_rows
            .iter()
            .map(|row| int_vec_str(row))
            .collect(),
        central_rank: d.central_basis.len(),
    }
}

#[derive(Serialize)]
pub struct CoverDoc {
    pub box_bound: i64,
    pub points: usize,
    pub dominant_points: usize,
    pub ok: bool,
}

pub fn cover_doc(c: &CoverReport) -> CoverDoc {
    CoverDoc {
        box_bound: c.box_bound,
        points: c.points,
        dominant_points: c.dominant_points,
        ok: c.ok,
    }
}

#[derive(Serialize)]
pub struct ExponentDoc {
    pub generator: usize,
    pub value: String,
}

#[derive(Serialize)]
pub struct PartialSumDoc {
    pub generator: usize,
    pub sums: Vec<f64>,
}

#[derive(Serialize)]
pub struct OracleRowDoc {
    pub subset: Vec<usize>,
    pub chi: usize,
    pub w: usize,
    pub exponents: Vec<ExponentDoc>,
    pub central: Vec<String>,
    pub converges: bool,
    pub criterion_ok: bool,
    pub agree: bool,
    pub partial_sums: Vec<PartialSumDoc>,
}

#[derive(Serialize)]
pub struct OracleReport {
    pub input: InputEcho,
    pub q: u64,
    pub depth: usize,
    pub box_bound: i64,
    pub cone: ConeDoc,
    pub cover: CoverDoc,
    pub rows: Vec<OracleRowDoc>,
    pub agreement: bool,
    pub verdict: VerdictDoc,
    pub warnings: Vec<String>,
}

pub fn oracle_rows(rep: &ConvergenceReport) -> Vec<OracleRowDoc> {
    rep.rows
        .iter()
        .map(|r| OracleRowDoc {
            subset: r.subset.clone(),
            chi: r.chi,
            w: r.w,
            exponents: r
                .exponents
                .iter()
                .map(|(g, e)| ExponentDoc {
                    generator: *g,
                    value: rat_str(e),
                })
                .collect(),
            central: r.central.iter().map(rat_str).collect(),
            converges: r.converges,
            criterion_ok: r.criterion_ok,
            agree: r.converges == r.criterion_ok,
            partial_sums: r
                .partial_sums
                .iter()
                .map(|(g, sums)| PartialSumDoc {
                    generator: *g,
                    sums: sums.clone(),
                })
                .collect(),
        })
        .collect()
}

pub fn classification_doc(c: &PairClassification) -> VerdictDoc {
    VerdictDoc::from(&c.verdict)
}

pub fn integrability_doc(r: &IntegrabilityReport) -> VerdictDoc {
    VerdictDoc::from(&r.verdict)
}

// ---------------------------------------------------------------------
// Plain-text table rendering.

fn format_table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    let line = |cells: &[String], widths: &[usize]| -> String {
        let mut s = String::new();
        for (i, c) in cells.iter().enumerate() {
            s.push_str(&format!("{:<w$}  ", c, w = widths[i]));
        }
        s.trim_end().to_string()
    };
    out.push_str(&line(
        &headers.iter().map(|h| h.to_string()).collect::<Vec<_>>(),
        &widths,
    ));
    out.push('\n');
    for row in rows {
        out.push_str(&line(row, &widths));
        out.push('\n');
    }
    out
}

pub fn analyze_table(rep: &AnalyzeReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "ambient: rank {}, {} roots, {} simple\n",
        rep.ambient.rank,
        rep.ambient.num_roots,
        rep.ambient.simple_roots.len()
    ));
    out.push_str(&format!(
        "descendent: rank {}, {} restricted roots, subgroup {} roots\n\n",
        rep.descendent.rank,
        rep.descendent.roots.len(),
        rep.descendent.subgroup_num_roots
    ));
    let rows: Vec<Vec<String>> = rep
        .descendent
        .roots
        .iter()
        .filter(|r| r.positive)
        .map(|r| {
            vec![
                format!("({})", r.vector.join(", ")),
                r.mg.to_string(),
                r.mh.to_string(),
                r.m_theta.to_string(),
                r.fiber_size.to_string(),
            ]
        })
        .collect();
    out.push_str(&format_table(
        &["positive restricted root", "MG", "MH", "m_theta", "fiber"],
        &rows,
    ));
    out.push_str(&format!(
        "\nWeyl orders: restricted {}, subgroup {}, transversal {}\n\n",
        rep.weyl.restricted_order, rep.weyl.subgroup_order, rep.weyl.transversal_size
    ));
    let rows: Vec<Vec<String>> = rep
        .transversal
        .iter()
        .map(|t| {
            vec![
                t.index.to_string(),
                format!("({})", t.test_character.join(", ")),
                format!("[{}]", t.coefficients.join(", ")),
            ]
        })
        .collect();
    out.push_str(&format_table(&["w", "test character", "coefficients"], &rows));
    out.push_str(&format!("\nverdict: {}\n", rep.verdict.kind));
    for w in &rep.verdict.witnesses {
        out.push_str(&format!(
            "  witness: w={:?} subset={:?} generator={:?} coefficient={:?} reason={}\n",
            w.w, w.subset, w.generator, w.coefficient, w.reason
        ));
    }
    for warning in &rep.warnings {
        out.push_str(&format!("note: {warning}\n"));
    }
    out
}

pub fn check_table(rep: &CheckReport) -> String {
    let mut out = String::new();
    let rows: Vec<Vec<String>> = rep
        .rows
        .iter()
        .map(|r| {
            vec![
                format!("{:?}", r.subset),
                r.chi.to_string(),
                r.w.to_string(),
                r.ok.to_string(),
                r.coefficients
                    .iter()
                    .map(|c| format!("{}:{}", c.generator, c.value))
                    .collect::<Vec<_>>()
                    .join(" "),
            ]
        })
        .collect();
    out.push_str(&format_table(&["subset", "chi", "w", "ok", "coefficients"], &rows));
    out.push_str(&format!("\nverdict: {} ({})\n", rep.verdict.kind, rep.mode));
    for warning in &rep.warnings {
        out.push_str(&format!("warning: {warning}\n"));
    }
    out
}

pub fn oracle_table(rep: &OracleReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "cone: quotient rank {}, index {}, {} representatives; cover box {} ok={}\n\n",
        rep.cone.quotient_rank,
        rep.cone.index,
        rep.cone.transversal.len(),
        rep.cover.box_bound,
        rep.cover.ok
    ));
    let rows: Vec<Vec<String>> = rep
        .rows
        .iter()
        .map(|r| {
            vec![
                format!("{:?}", r.subset),
                r.chi.to_string(),
                r.w.to_string(),
                r.exponents
                    .iter()
                    .map(|e| format!("{}:{}", e.generator, e.value))
                    .collect::<Vec<_>>()
                    .join(" "),
                r.converges.to_string(),
                r.agree.to_string(),
            ]
        })
        .collect();
    out.push_str(&format_table(
        &["subset", "chi", "w", "exponents", "converges", "agree"],
        &rows,
    ));
    out.push_str(&format!(
        "\nagreement: {}\nverdict: {}\n",
        rep.agreement, rep.verdict.kind
    ));
    for warning in &rep.warnings {
        out.push_str(&format!("warning: {warning}\n"));
    }
    out
}
