//! From input matrices to the ideal of equations satisfied by `g`.
//!
//! The ideal `I_H(g;F)` of equations sent into `F` has finite index in
//! `H * <x>`, so its Schreier graph comes from the abelianization oracle.
//! Evaluating its generators `w_i` at `g` gives words `v_i` in `F`, the
//! relators among the `v_i` come out of Stallings foldings, and substituting
//! the `w_i` back into the relators normally generates `I_H(g)`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::ab_word::{decompose, quotient_subgroup, C2xC3};
use crate::error::Result;
use crate::free_group::{pq_to_matrix, rewrite_kernel, FreeWord, Letter};
use crate::hstar::{evaluate, evaluate_word, reduce_equation, substitute, EqLetter, EqWord, HContext, HEquation};
use crate::matrix::ProjMat2;
use crate::schreier::{build_schreier, OracleAlphabet, SchreierGraph};
use crate::stallings::{subgroup_presentation, PresentationOnGenerators};

/// Enough for any subgroup of `C2 x C3`.
pub const DEFAULT_INDEX_CAP: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Algebraic,
    Transcendental,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::Algebraic => "ALGEBRAIC",
            Verdict::Transcendental => "TRANSCENDENTAL",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientImages {
    pub h: Vec<C2xC3>,
    pub g: C2xC3,
}

/// A generator of `I_H(g;F)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WEntry {
    #[serde(with = "crate::hstar::eq_single")]
    pub word: EqWord,
    pub equation: HEquation,
    pub trivial: bool,
}

/// `v = w(g)` as a word in `p, q` and as a matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VEntry {
    #[serde(with = "serde_pq")]
    pub word: FreeWord,
    pub matrix: ProjMat2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CandidateSource {
    /// Index into the presentation's relators.
    Relator(usize),
    /// Index into `w_list` of a generator with `v` empty.
    EmptyV(usize),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdealCandidate {
    pub source: CandidateSource,
    #[serde(with = "crate::hstar::eq_single")]
    pub word: EqWord,
    pub equation: HEquation,
    pub trivial: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub context: HContext,
    pub quotient_images: QuotientImages,
    /// `[H * <x> : I_H(g;F)]`.
    pub index: usize,
    pub w_list: Vec<WEntry>,
    pub v_list: Vec<VEntry>,
    /// Presentation of `V` on the nonempty `v` words.
    pub presentation: PresentationOnGenerators,
    /// `w_list` index of each presentation generator.
    pub generator_indices: Vec<usize>,
    pub ideal_candidates: Vec<IdealCandidate>,
    /// The nontrivial candidates.
    pub ideal_generators: Vec<HEquation>,
    pub verdict: Verdict,
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

pub fn analyze(h_raw: &[ProjMat2], g_raw: &ProjMat2) -> Result<AnalysisReport> {
    analyze_with_cap(h_raw, g_raw, DEFAULT_INDEX_CAP)
}

pub fn analyze_with_cap(h_raw: &[ProjMat2], g_raw: &ProjMat2, index_cap: usize) -> Result<AnalysisReport> {
    let ctx = HContext::new(h_raw.to_vec(), g_raw.clone());
    let quotient_images = QuotientImages { h: ctx.h_images(), g: ctx.g_image() };

    let graph = equation_schreier(&ctx, index_cap)?;
    let s = ctx.generator_count();
    let w_list: Vec<WEntry> = graph
        .subgroup_generators()
        .iter()
        .map(|w| {
            let word = to_eq_word(w, s);
            let equation = reduce_equation(&word, &ctx);
            let trivial = equation.is_trivial();
            WEntry { word, equation, trivial }
        })
        .collect();

    let v_list = w_list
        .iter()
        .map(|w| {
            let matrix = evaluate_word(&w.word, &ctx);
            let word = rewrite_kernel(&decompose(&matrix))?;
            debug_assert_eq!(pq_to_matrix(&word), matrix);
            Ok(VEntry { word, matrix })
        })
        .collect::<Result<Vec<_>>>()?;

    let generator_indices: Vec<usize> = (0..v_list.len()).filter(|&i| !v_list[i].word.is_empty()).collect();
    let gens: Vec<FreeWord> = generator_indices.iter().map(|&i| v_list[i].word.clone()).collect();
    let presentation = subgroup_presentation(&gens);

    let mut ideal_candidates = Vec::new();
    let relator_ws: Vec<EqWord> = generator_indices.iter().map(|&i| w_list[i].word.clone()).collect();
    for (j, r) in presentation.relators.iter().enumerate() {
        let word = substitute(r, &relator_ws)?;
        ideal_candidates.push(candidate(CandidateSource::Relator(j), word, &ctx));
    }
    for (i, v) in v_list.iter().enumerate() {
        if v.word.is_empty() {
            ideal_candidates.push(candidate(CandidateSource::EmptyV(i), w_list[i].word.clone(), &ctx));
        }
    }
    for c in &ideal_candidates {
        assert!(evaluate(&c.equation, &ctx.g_mat).is_identity(), "ideal candidate {} does not vanish at g", c.word);
    }
    let ideal_generators: Vec<HEquation> =
        ideal_candidates.iter().filter(|c| !c.trivial).map(|c| c.equation.clone()).collect();
    let verdict = if ideal_generators.is_empty() { Verdict::Transcendental } else { Verdict::Algebraic };

    Ok(AnalysisReport {
        index: graph.vertex_count(),
        context: ctx,
        quotient_images,
        w_list,
        v_list,
        presentation,
        generator_indices,
        ideal_candidates,
        ideal_generators,
        verdict,
    })
}

fn candidate(source: CandidateSource, word: EqWord, ctx: &HContext) -> IdealCandidate {
    let equation = reduce_equation(&word, ctx);
    let trivial = equation.is_trivial();
    IdealCandidate { source, word, equation, trivial }
}

/// Alphabet `h1, ..., hs, x`.
pub fn equation_alphabet(s: usize) -> OracleAlphabet {
    let names = (1..=s).map(|i| format!("h{i}")).chain(["x".to_string()]);
    OracleAlphabet::new(names).expect("distinct nonempty names")
}

/// Schreier graph of `I_H(g;F)` in `H * <x>`. Membership is decided on
/// abelianization images, letter by letter.
pub fn equation_schreier(ctx: &HContext, index_cap: usize) -> Result<SchreierGraph> {
    let mut images = ctx.h_images();
    images.push(ctx.g_image());
    let oracle = |w: &FreeWord| {
        w.letters()
            .iter()
            .fold(C2xC3::zero(), |acc, l| if l.inv { acc - images[l.gen] } else { acc + images[l.gen] })
            .is_zero()
    };
    build_schreier(&equation_alphabet(ctx.generator_count()), oracle, index_cap)
}

/// Reads a word over `h1, ..., hs, x` (generator `s` is `x`) as an equation word.
pub fn to_eq_word(w: &FreeWord, s: usize) -> EqWord {
    EqWord::new(
        w.letters()
            .iter()
            .map(|l| if l.gen == s { EqLetter::X { inv: l.inv } } else { EqLetter::H { index: l.gen, inv: l.inv } })
            .collect(),
    )
}

/// Inverse of [`to_eq_word`].
pub fn from_eq_word(w: &EqWord, s: usize) -> FreeWord {
    FreeWord::from_letters(w.letters.iter().map(|l| match *l {
        EqLetter::H { index, inv } => Letter::new(index, inv),
        EqLetter::X { inv } => Letter::new(s, inv),
    }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationResult {
    pub checks: Vec<CheckOutcome>,
}

impl VerificationResult {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn outcome(name: &str, failures: Vec<String>) -> CheckOutcome {
    CheckOutcome {
        name: name.to_string(),
        passed: failures.is_empty(),
        detail: if failures.is_empty() { "ok".to_string() } else { failures.join("; ") },
    }
}

fn h_indices_ok(w: &EqWord, s: usize) -> bool {
    w.max_h_index().is_none_or(|i| i < s)
}

fn equation_indices_ok(e: &HEquation, s: usize) -> bool {
    e.coefficients.iter().all(|c| h_indices_ok(&c.letters, s))
}

/// Re-checks a report from its own data.
pub fn verify(report: &AnalysisReport) -> VerificationResult {
    let ctx = &report.context;
    let s = ctx.generator_count();
    let g = &ctx.g_mat;

    let mut failures = Vec::new();
    if !ctx.is_consistent() {
        failures.push("stored words do not evaluate to the stored matrices".to_string());
    }
    if report.quotient_images.h != ctx.h_images() || report.quotient_images.g != ctx.g_image() {
        failures.push("quotient images disagree with the context".to_string());
    }
    let mut images = ctx.h_images();
    images.push(ctx.g_image());
    let expected_index = quotient_subgroup(images).len();
    if report.index != expected_index {
        failures.push(format!("index {} but the quotient image has order {expected_index}", report.index));
    }
    let rank_count = report.w_list.len() as i64 - report.index as i64 * s as i64 - 1;
    if rank_count != 0 {
        failures.push(format!("{} generators for index {}", report.w_list.len(), report.index));
    }
    for (i, w) in report.w_list.iter().enumerate() {
        if !h_indices_ok(&w.word, s) {
            failures.push(format!("w{} uses an undefined h", i + 1));
        } else if reduce_equation(&w.word, ctx) != w.equation || w.trivial != w.equation.is_trivial() {
            failures.push(format!("w{} equation does not match its word", i + 1));
        }
    }
    let context_ok = failures.is_empty();
    let mut checks = vec![outcome("context", failures)];

    // (a)
    let mut failures = Vec::new();
    for (j, e) in report.ideal_generators.iter().enumerate() {
        if !equation_indices_ok(e, s) {
            failures.push(format!("equation {} uses an undefined h", j + 1));
        } else if !evaluate(e, g).is_identity() {
            failures.push(format!("equation {} evaluates to {}", j + 1, evaluate(e, g)));
        }
    }
    checks.push(outcome("a_equations_vanish", failures));

    // (b)
    let mut failures = Vec::new();
    let gens: Option<Vec<FreeWord>> =
        report.generator_indices.iter().map(|&i| report.v_list.get(i).map(|v| v.word.clone())).collect();
    match gens {
        None => failures.push("generator index out of range".to_string()),
        Some(gens) => {
            let p = &report.presentation;
            if p.generator_count != gens.len() {
                failures.push(format!("{} generators recorded, {} used", p.generator_count, gens.len()));
            }
            if p.relators.len() + p.rank != p.generator_count {
                failures.push(format!(
                    "{} relators for {} generators of rank {}",
                    p.relators.len(),
                    p.generator_count,
                    p.rank
                ));
            }
            for (j, r) in p.relators.iter().enumerate() {
                match r.substitute(&gens) {
                    Ok(w) if w.is_empty() => {}
                    Ok(w) => failures.push(format!("relator {} gives {}", j + 1, w.pq_string())),
                    Err(e) => failures.push(format!("relator {}: {e}", j + 1)),
                }
            }
        }
    }
    checks.push(outcome("b_relators_vanish", failures));

    // (c)
    let mut failures = Vec::new();
    if report.v_list.len() != report.w_list.len() {
        failures.push(format!("{} v words for {} w words", report.v_list.len(), report.w_list.len()));
    }
    for (i, (w, v)) in report.w_list.iter().zip(&report.v_list).enumerate() {
        if !equation_indices_ok(&w.equation, s) {
            continue;
        }
        let value = evaluate(&w.equation, g);
        if pq_to_matrix(&v.word) != value || v.matrix != value {
            failures.push(format!("v{} does not equal w{}(g) = {value}", i + 1, i + 1));
        }
    }
    checks.push(outcome("c_v_values", failures));

    // (d)
    let failures = report
        .w_list
        .iter()
        .enumerate()
        .filter(|(_, w)| !h_indices_ok(&w.word, s) || !ctx.abelian_image(&w.word).is_zero())
        .map(|(i, w)| format!("w{} = {} is not sent into F", i + 1, w.word))
        .collect();
    checks.push(outcome("d_w_in_kernel", failures));

    // (e)
    let mut failures = Vec::new();
    let nontrivial: Vec<&HEquation> =
        report.ideal_candidates.iter().filter(|c| !c.trivial).map(|c| &c.equation).collect();
    if nontrivial.len() != report.ideal_generators.len()
        || nontrivial.iter().zip(&report.ideal_generators).any(|(a, b)| *a != b)
    {
        failures.push("ideal generators are not the nontrivial candidates".to_string());
    }
    if report.ideal_generators.iter().any(HEquation::is_trivial) {
        failures.push("a trivial equation is listed as an ideal generator".to_string());
    }
    let expected = if report.ideal_generators.is_empty() { Verdict::Transcendental } else { Verdict::Algebraic };
    if report.verdict != expected {
        failures.push(format!("verdict {} but expected {}", report.verdict.label(), expected.label()));
    }
    if context_ok {
        let relator_ws: Vec<EqWord> =
            report.generator_indices.iter().filter_map(|&i| report.w_list.get(i).map(|w| w.word.clone())).collect();
        for (k, c) in report.ideal_candidates.iter().enumerate() {
            let word = match c.source {
                CandidateSource::Relator(j) => {
                    report.presentation.relators.get(j).and_then(|r| substitute(r, &relator_ws).ok())
                }
                CandidateSource::EmptyV(i) => report
                    .w_list
                    .get(i)
                    .filter(|_| report.v_list.get(i).is_some_and(|v| v.word.is_empty()))
                    .map(|w| w.word.clone()),
            };
            if word.as_ref() != Some(&c.word)
                || reduce_equation(&c.word, ctx) != c.equation
                || c.trivial != c.equation.is_trivial()
            {
                failures.push(format!("candidate {} does not follow from its source", k + 1));
            }
        }
        let relator_count =
            report.ideal_candidates.iter().filter(|c| matches!(c.source, CandidateSource::Relator(_))).count();
        let empty_count = report.v_list.iter().filter(|v| v.word.is_empty()).count();
        if relator_count != report.presentation.relators.len()
            || relator_count + empty_count != report.ideal_candidates.len()
        {
            failures.push("candidate list is incomplete".to_string());
        }
    } else {
        failures.push("skipped derivation checks on an inconsistent context".to_string());
    }
    checks.push(outcome("e_verdict", failures));

    VerificationResult { checks }
}

fn relator_string(r: &FreeWord, generator_indices: &[usize]) -> String {
    r.render(|i| match generator_indices.get(i) {
        Some(w) => format!("v{}", w + 1),
        None => format!("?{}", i + 1),
    })
}

/// Human-readable report. The first line is the verdict.
pub fn render_text(report: &AnalysisReport, show_matrices: bool) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", report.verdict.label());
    let images: Vec<String> =
        report.quotient_images.h.iter().enumerate().map(|(i, c)| format!("h{}={c}", i + 1)).collect();
    let _ = writeln!(
        out,
        "images: {}{}g={}",
        images.join(" "),
        if images.is_empty() { "" } else { " " },
        report.quotient_images.g
    );
    let _ = writeln!(out, "index: {}", report.index);
    let trivial = report.w_list.iter().filter(|w| w.trivial).count();
    let _ = writeln!(out, "generators: {} ({trivial} trivial)", report.w_list.len());
    for (i, (w, v)) in report.w_list.iter().zip(&report.v_list).enumerate() {
        let mark = if w.trivial { "  [trivial]" } else { "" };
        let _ = writeln!(out, "  w{0} = {1}    v{0} = {2}{mark}", i + 1, w.word, v.word.pq_string());
    }
    let p = &report.presentation;
    let _ = writeln!(out, "rank: {}", p.rank);
    let _ = writeln!(out, "relators: {}", p.relators.len());
    for (j, r) in p.relators.iter().enumerate() {
        let _ = writeln!(out, "  r{} = {}", j + 1, relator_string(r, &report.generator_indices));
    }
    let _ = writeln!(out, "equations: {}", report.ideal_generators.len());
    for (j, e) in report.ideal_generators.iter().enumerate() {
        let _ = writeln!(out, "  e{} = {e}", j + 1);
        if show_matrices {
            let _ = writeln!(out, "       {}", e.matrix_string());
        }
    }
    out
}

pub(crate) mod serde_pq {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(w: &FreeWord, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&w.pq_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<FreeWord, D::Error> {
        FreeWord::parse_pq(&String::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

pub(crate) mod serde_pq_list {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(ws: &[FreeWord], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(ws.iter().map(FreeWord::pq_string))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<FreeWord>, D::Error> {
        Vec::<String>::deserialize(d)?.iter().map(|s| FreeWord::parse_pq(s).map_err(serde::de::Error::custom)).collect()
    }
}

pub(crate) mod serde_x_list {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(ws: &[FreeWord], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(ws.iter().map(FreeWord::x_string))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<FreeWord>, D::Error> {
        Vec::<String>::deserialize(d)?.iter().map(|s| FreeWord::parse_x(s).map_err(serde::de::Error::custom)).collect()
    }
}
