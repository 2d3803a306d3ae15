//! Deterministic report builders behind the command-line front end.
//!
//! Every command resolves its input, runs the exact pipeline, and packs
//! the outcome into a [`ReportEnvelope`]: the command name, a content
//! digest of the input, a machine-readable JSON payload, and a rendered
//! text summary. Identical inputs produce byte-identical envelopes.
//!
//! ```
//! use hkinv::report::{cmd_structure, StructureSource};
//!
//! let out = cmd_structure(&StructureSource::Pattern("++".into())).unwrap();
//! assert!(out.ok);
//! assert_eq!(out.envelope.payload["orientations"], serde_json::json!([1, 1]));
//! ```

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::cartan::{
    c2_reference_check, chevalley_basis_cn, complexify, p_intertwiner_check, root_decomposition,
};
use crate::error::{Error, Result};
use crate::invariance::{finite_r_of_lambda, lemma5_basis, solve_invariance};
use crate::lie::{
    is_compact_form, is_ideal, is_semisimple, killing_of_presentation, structure_constants,
};
use crate::linalg::SpanSolver;
use crate::matrix::ExactMatrix;
use crate::reduction::{big_q, conjugate_algebra, Conjugator};
use crate::scalar::Scalar;
use crate::structures::{block_orientation, build_structure, check_quaternionic, levi_civita,
    HKStructure};

/// A finished command report.
#[derive(Clone, Debug, Serialize)]
pub struct ReportEnvelope {
    /// Subcommand name.
    pub command: String,
    /// SHA-256 hex digest of the raw input bytes.
    pub input_digest: String,
    /// Command-specific JSON payload; matrices use the exact string
    /// serialization throughout.
    pub payload: Value,
    /// Rendered text summary.
    pub text: String,
}

/// An envelope plus the verification verdict deciding the exit status.
#[derive(Clone, Debug)]
pub struct CommandOutcome {
    /// The report.
    pub envelope: ReportEnvelope,
    /// True iff every verification the command ran passed.
    pub ok: bool,
}

/// SHA-256 hex digest of raw input bytes.
pub fn digest(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    format!("{:x}", hasher.finalize())
}

/// Parses a sign pattern such as `"++-"`.
pub fn parse_pattern(s: &str) -> Result<Vec<i8>> {
    if s.is_empty() {
        return Err(Error::ParseError("empty sign pattern".into()));
    }
    s.chars()
        .map(|c| match c {
            '+' => Ok(1),
            '-' => Ok(-1),
            other => Err(Error::ParseError(format!(
                "invalid pattern character {other:?}, expected '+' or '-'"
            ))),
        })
        .collect()
}

/// Structure input: a sign pattern or raw JSON bytes.
#[derive(Clone, Debug)]
pub enum StructureSource {
    /// Build the standard structure for this pattern.
    Pattern(String),
    /// Parse a serialized structure.
    Json(Vec<u8>),
}

impl StructureSource {
    /// The bytes fed into the input digest.
    pub fn digest_bytes(&self) -> &[u8] {
        match self {
            StructureSource::Pattern(s) => s.as_bytes(),
            StructureSource::Json(b) => b,
        }
    }

    /// Builds or parses the structure.
    pub fn resolve(&self) -> Result<HKStructure> {
        match self {
            StructureSource::Pattern(s) => build_structure(&parse_pattern(s)?),
            StructureSource::Json(bytes) => serde_json::from_slice(bytes)
                .map_err(|e| Error::ParseError(format!("invalid structure JSON: {e}"))),
        }
    }
}

fn matrix_value(m: &ExactMatrix) -> Value {
    serde_json::to_value(m).expect("matrix serialization is infallible")
}

fn envelope(command: &str, input: &[u8], payload: Value, text: String) -> ReportEnvelope {
    ReportEnvelope {
        command: command.to_string(),
        input_digest: digest(input),
        payload,
        text,
    }
}

fn pattern_display(j: &HKStructure) -> String {
    match &j.pattern {
        Some(p) => p
            .iter()
            .map(|&s| if s > 0 { '+' } else { '-' })
            .collect(),
        None => "none".to_string(),
    }
}

struct Verdict {
    valid: bool,
    violation: Option<(usize, usize)>,
    error: Option<String>,
    orientations: Option<Vec<i8>>,
}

fn structure_verdict(j: &HKStructure) -> Verdict {
    match check_quaternionic(&j.j) {
        Ok(()) => {
            let orientations: Option<Vec<i8>> =
                (0..j.n).map(|b| block_orientation(j, b).ok()).collect();
            Verdict {
                valid: true,
                violation: None,
                error: None,
                orientations,
            }
        }
        Err(Error::InvalidStructure(a, b)) => Verdict {
            valid: false,
            violation: Some((a, b)),
            error: None,
            orientations: None,
        },
        Err(e) => Verdict {
            valid: false,
            violation: None,
            error: Some(e.to_string()),
            orientations: None,
        },
    }
}

fn verdict_value(v: &Verdict) -> (Value, Value, Value) {
    let violation = match v.violation {
        Some((a, b)) => json!([a, b]),
        None => Value::Null,
    };
    let error = match &v.error {
        Some(e) => json!(e),
        None => Value::Null,
    };
    let orientations = match &v.orientations {
        Some(o) => json!(o),
        None => Value::Null,
    };
    (violation, error, orientations)
}

fn verdict_text(v: &Verdict) -> Vec<String> {
    let mut lines = vec![format!("valid: {}", v.valid)];
    if let Some((a, b)) = v.violation {
        lines.push(format!("violation: ({a},{b})"));
    }
    if let Some(e) = &v.error {
        lines.push(format!("error: {e}"));
    }
    if let Some(o) = &v.orientations {
        lines.push(format!("orientations: {o:?}"));
    }
    lines
}

fn render(lines: Vec<String>) -> String {
    let mut text = lines.join("\n");
    text.push('\n');
    text
}

/// Builds or loads a structure, validates it, and reports per-block
/// orientations.
pub fn cmd_structure(source: &StructureSource) -> Result<CommandOutcome> {
    let structure = source.resolve()?;
    let verdict = structure_verdict(&structure);
    let (violation, error, orientations) = verdict_value(&verdict);
    let payload = json!({
        "structure": serde_json::to_value(&structure).expect("serializable"),
        "valid": verdict.valid,
        "violation": violation,
        "error": error,
        "orientations": orientations,
    });
    let mut lines = vec![format!(
        "structure: n={} pattern={}",
        structure.n,
        pattern_display(&structure)
    )];
    lines.extend(verdict_text(&verdict));
    let ok = verdict.valid;
    Ok(CommandOutcome {
        envelope: envelope("structure", source.digest_bytes(), payload, render(lines)),
        ok,
    })
}

/// Validates the quaternionic relations of a structure without echoing
/// it back.
pub fn cmd_check(source: &StructureSource) -> Result<CommandOutcome> {
    let structure = source.resolve()?;
    let verdict = structure_verdict(&structure);
    let (violation, error, orientations) = verdict_value(&verdict);
    let payload = json!({
        "valid": verdict.valid,
        "violation": violation,
        "error": error,
        "orientations": orientations,
    });
    let mut lines = vec![format!(
        "check: n={} pattern={}",
        structure.n,
        pattern_display(&structure)
    )];
    lines.extend(verdict_text(&verdict));
    let ok = verdict.valid;
    Ok(CommandOutcome {
        envelope: envelope("check", source.digest_bytes(), payload, render(lines)),
        ok,
    })
}

/// Solves the infinitesimal invariance equation and reports the basis
/// with its `M` matrices and the su(2)/strong split.
pub fn cmd_invariance(source: &StructureSource) -> Result<CommandOutcome> {
    let structure = source.resolve()?;
    let solution = solve_invariance(&structure)?;
    let n = structure.n;
    let dim = solution.full_basis.len();
    let expected = n * (2 * n + 1) + 3;
    let pairs = |list: &[(ExactMatrix, ExactMatrix)]| -> Value {
        Value::Array(
            list.iter()
                .map(|(x, m)| json!({"X": matrix_value(x), "M": matrix_value(m)}))
                .collect(),
        )
    };
    let payload = json!({
        "dim": dim,
        "n": n,
        "basis": pairs(&solution.full_basis),
        "su2": pairs(&solution.su2_part),
        "strong": pairs(&solution.strong_part),
    });
    let ok = dim == expected;
    let lines = vec![
        format!(
            "invariance: n={} pattern={}",
            n,
            pattern_display(&structure)
        ),
        format!("dim: {dim} (expected n(2n+1)+3 = {expected})"),
        format!("su2: {}  strong: {}", solution.su2_part.len(), solution.strong_part.len()),
    ];
    Ok(CommandOutcome {
        envelope: envelope("invariance", source.digest_bytes(), payload, render(lines)),
        ok,
    })
}

/// Basis input for `analyze`: a pattern (whose solved invariance algebra
/// is analyzed) or a JSON array of matrices.
#[derive(Clone, Debug)]
pub enum BasisSource {
    /// Analyze the invariance algebra of this pattern's structure.
    Pattern(String),
    /// Analyze the matrices listed in this JSON document.
    Json(Vec<u8>),
}

impl BasisSource {
    /// The bytes fed into the input digest.
    pub fn digest_bytes(&self) -> &[u8] {
        match self {
            BasisSource::Pattern(s) => s.as_bytes(),
            BasisSource::Json(b) => b,
        }
    }

    /// Resolves the basis list.
    pub fn resolve(&self) -> Result<Vec<ExactMatrix>> {
        match self {
            BasisSource::Pattern(s) => {
                let structure = build_structure(&parse_pattern(s)?)?;
                let solution = solve_invariance(&structure)?;
                Ok(solution.full_basis.into_iter().map(|(x, _)| x).collect())
            }
            BasisSource::Json(bytes) => serde_json::from_slice(bytes)
                .map_err(|e| Error::ParseError(format!("invalid basis JSON: {e}"))),
        }
    }
}

/// Expands structure constants, computes the Killing form, and decides
/// semisimplicity and compactness for a basis.
pub fn cmd_analyze(source: &BasisSource) -> Result<CommandOutcome> {
    let basis = source.resolve()?;
    let presentation = structure_constants(&basis)?;
    let killing = killing_of_presentation(&presentation);
    let semisimple = is_semisimple(&killing);
    let compact = is_compact_form(&killing)?;
    let table: Vec<Value> = presentation
        .sparse_table()
        .into_iter()
        .map(|(i, j, k, c)| json!([i, j, k, c.to_string()]))
        .collect();
    let payload = json!({
        "dim": presentation.dim(),
        "killing": matrix_value(&killing.b),
        "semisimple": semisimple,
        "compact": compact,
        "table": table,
    });
    let lines = vec![
        format!("analyze: dim {}", presentation.dim()),
        format!("semisimple: {semisimple}"),
        format!("compact: {compact}"),
        format!("nonzero constants: {}", payload["table"].as_array().expect("array").len()),
    ];
    Ok(CommandOutcome {
        envelope: envelope("analyze", source.digest_bytes(), payload, render(lines)),
        ok: true,
    })
}

fn derived_pattern(structure: &HKStructure) -> Result<Vec<i8>> {
    if let Some(p) = &structure.pattern {
        return Ok(p.clone());
    }
    (0..structure.n)
        .map(|b| block_orientation(structure, b))
        .collect::<Result<Vec<i8>>>()
        .map_err(|_| {
            Error::StructureError(
                "classification needs a block pattern: supply one or use a block-diagonal \
                 structure with derivable orientations"
                    .into(),
            )
        })
}

/// Runs the full chain: solve, split off the su(2) ideal, take the
/// strong part in its reference order, complexify, decompose against
/// the conjugated Cartan candidate, and label the type.
pub fn cmd_classify(source: &StructureSource) -> Result<CommandOutcome> {
    let structure = source.resolve()?;
    let solution = solve_invariance(&structure)?;
    let n = structure.n;
    let dim = solution.full_basis.len();
    let pattern = derived_pattern(&structure)?;
    let all_positive = pattern.iter().all(|&s| s == 1);

    let su2: Vec<ExactMatrix> = solution.su2_part.iter().map(|(x, _)| x.clone()).collect();
    let full: Vec<ExactMatrix> = solution.full_basis.iter().map(|(x, _)| x.clone()).collect();
    let su2_presentation = structure_constants(&su2)?;
    let mut su2_ok = su2_presentation.dim() == 3;
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                let expected = Scalar::from_int(2 * levi_civita(i + 1, j + 1, k + 1));
                su2_ok &= su2_presentation.constants[i][j][k] == expected;
            }
        }
    }
    su2_ok &= killing_of_presentation(&su2_presentation).b
        == ExactMatrix::identity(3).scale(&Scalar::from_int(-8));
    let ideal_ok = is_ideal(&su2, &full)?;

    let positive_strong: Vec<ExactMatrix> = lemma5_basis(n)
        .into_iter()
        .skip(3)
        .map(|(x, _)| x)
        .collect();
    let conjugator = Conjugator::new(big_q(&pattern))?;
    let strong_ref = if all_positive {
        positive_strong
    } else {
        conjugate_algebra(&positive_strong, &conjugator)?
    };
    let strong_solver: Vec<Vec<Scalar>> = solution
        .strong_part
        .iter()
        .map(|(x, _)| x.entries().to_vec())
        .collect();
    let span = SpanSolver::new(&strong_solver);
    let span_ok = strong_ref.len() == solution.strong_part.len()
        && strong_ref.iter().all(|m| span.contains(m.entries()));

    let killing_strong = killing_of_presentation(&structure_constants(&strong_ref)?);
    let semisimple = is_semisimple(&killing_strong);
    let compact = is_compact_form(&killing_strong)?;

    let ch = chevalley_basis_cn(n);
    let cartan: Vec<ExactMatrix> = if all_positive {
        ch.h_list
    } else {
        conjugate_algebra(&ch.h_list, &conjugator)?
    };
    let rd = root_decomposition(&complexify(&strong_ref), &cartan)?.classified()?;
    let long_count = rd
        .roots
        .iter()
        .filter(|r| r.iter().any(|&x| x.abs() == 2))
        .count();
    let counts_ok = rd.roots.len() == 2 * n * n && long_count == 2 * n;

    let ok = su2_ok && ideal_ok && span_ok && semisimple && compact && counts_ok;
    let payload = json!({
        "dim": dim,
        "rank": rd.rank,
        "roots": rd.roots,
        "cartan_matrix": rd.cartan_matrix,
        "type": rd.type_label,
        "su2": su2_ok,
        "compact": compact,
        "killing_strong": matrix_value(&killing_strong.b),
        "checks": {
            "su2": su2_ok,
            "ideal": ideal_ok,
            "strong_span_matches": span_ok,
            "semisimple": semisimple,
            "compact": compact,
            "root_counts": counts_ok,
        },
    });
    let type_line = if rd.rank == 2 {
        format!("type: {} (isomorphic to B2)", rd.type_label)
    } else {
        format!("type: {}", rd.type_label)
    };
    let lines = vec![
        format!(
            "classify: n={} pattern={}",
            n,
            pattern
                .iter()
                .map(|&s| if s > 0 { '+' } else { '-' })
                .collect::<String>()
        ),
        format!("dim: {dim}"),
        format!("su2 ideal: {}", su2_ok && ideal_ok),
        type_line,
        format!("compact: {compact}"),
        format!("roots: {} ({} long, {} short)", rd.roots.len(), long_count,
            rd.roots.len() - long_count),
    ];
    Ok(CommandOutcome {
        envelope: envelope("classify", source.digest_bytes(), payload, render(lines)),
        ok,
    })
}

/// Extracts the finite rotation induced by an orthogonal map on a
/// structure and verifies it.
pub fn cmd_finite_map(lambda_bytes: &[u8], source: &StructureSource) -> Result<CommandOutcome> {
    let lambda: ExactMatrix = serde_json::from_slice(lambda_bytes)
        .map_err(|e| Error::ParseError(format!("invalid matrix JSON: {e}")))?;
    let structure = source.resolve()?;
    let r = finite_r_of_lambda(&lambda, &structure)?;
    let orthogonal = r.is_orthogonal();
    let det_one = r.det()? == Scalar::one();
    let ok = orthogonal && det_one;
    let payload = json!({
        "R": matrix_value(&r),
        "orthogonal": orthogonal,
        "det_one": det_one,
    });
    let mut digest_input = lambda_bytes.to_vec();
    digest_input.push(b'\n');
    digest_input.extend_from_slice(source.digest_bytes());
    let lines = vec![
        format!(
            "finite-map: n={} pattern={}",
            structure.n,
            pattern_display(&structure)
        ),
        format!("R: {r:?}"),
        format!("orthogonal: {orthogonal}  det=1: {det_one}"),
    ];
    Ok(CommandOutcome {
        envelope: envelope("finite-map", &digest_input, payload, render(lines)),
        ok,
    })
}

/// Runs both built-in reference comparisons.
pub fn cmd_reference_check() -> Result<CommandOutcome> {
    let c2 = c2_reference_check();
    let intertwiner = p_intertwiner_check();
    let c2_ok = c2.symplectic_ok && c2.meets_threshold() && c2.q_table_matches_x_table;
    let ok = c2_ok && intertwiner.all_ok();
    let payload = json!({
        "c2": serde_json::to_value(&c2).expect("serializable"),
        "intertwiner": serde_json::to_value(&intertwiner).expect("serializable"),
    });
    let lines = vec![
        "reference-check".to_string(),
        format!("symplectic condition: {}", c2.symplectic_ok),
        format!(
            "commutation table: {}/{} cells match, {} mismatches",
            c2.table_matches,
            c2.table_cells,
            c2.mismatches.len()
        ),
        format!("quaternionic table equals fundamental table: {}", c2.q_table_matches_x_table),
        format!("intertwiner block-diagonalization: {}", intertwiner.all_ok()),
    ];
    Ok(CommandOutcome {
        envelope: envelope("reference-check", &[], payload, render(lines)),
        ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_is_stable() {
        assert_eq!(
            digest(b""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
        assert_eq!(digest(b"++"), digest(b"++"));
        assert_ne!(digest(b"++"), digest(b"+-"));
    }

    #[test]
    fn pattern_parser() {
        assert_eq!(parse_pattern("++-").unwrap(), vec![1, 1, -1]);
        assert!(parse_pattern("").is_err());
        assert!(parse_pattern("+x").is_err());
    }

    #[test]
    fn structure_command_reports_orientations() {
        let out = cmd_structure(&StructureSource::Pattern("+-".into())).unwrap();
        assert!(out.ok);
        assert_eq!(out.envelope.command, "structure");
        assert_eq!(out.envelope.payload["valid"], json!(true));
        assert_eq!(out.envelope.payload["orientations"], json!([1, -1]));
    }

    #[test]
    fn tampered_structure_reports_violation() {
        let structure = build_structure(&[1]).unwrap();
        let mut value = serde_json::to_value(&structure).unwrap();
        // Negate J₃ by flipping every entry sign in its serialization.
        let j3 = value["J"][2].clone();
        let negated: Value = match j3 {
            Value::Array(rows) => Value::Array(
                rows.into_iter()
                    .map(|row| match row {
                        Value::Array(cells) => Value::Array(
                            cells
                                .into_iter()
                                .map(|c| {
                                    let s = c.as_str().unwrap();
                                    let flipped: Scalar = s.parse::<Scalar>().unwrap();
                                    json!((-&flipped).to_string())
                                })
                                .collect(),
                        ),
                        _ => unreachable!(),
                    })
                    .collect(),
            ),
            _ => unreachable!(),
        };
        value["J"][2] = negated;
        let bytes = serde_json::to_vec(&value).unwrap();
        let out = cmd_check(&StructureSource::Json(bytes)).unwrap();
        assert!(!out.ok);
        assert_eq!(out.envelope.payload["valid"], json!(false));
        assert_eq!(out.envelope.payload["violation"], json!([1, 2]));
    }

    #[test]
    fn invariance_command_counts() {
        let out = cmd_invariance(&StructureSource::Pattern("+".into())).unwrap();
        assert!(out.ok);
        assert_eq!(out.envelope.payload["dim"], json!(6));
        assert_eq!(out.envelope.payload["basis"].as_array().unwrap().len(), 6);
        assert_eq!(out.envelope.payload["su2"].as_array().unwrap().len(), 3);
        assert_eq!(out.envelope.payload["strong"].as_array().unwrap().len(), 3);
    }

    #[test]
    fn analyze_command_on_pattern() {
        let out = cmd_analyze(&BasisSource::Pattern("+".into())).unwrap();
        assert!(out.ok);
        assert_eq!(out.envelope.payload["dim"], json!(6));
        assert_eq!(out.envelope.payload["semisimple"], json!(true));
        assert_eq!(out.envelope.payload["compact"], json!(true));
    }

    #[test]
    fn analyze_command_on_explicit_basis() {
        let basis: Vec<ExactMatrix> =
            (1..=3).map(|a| crate::structures::standard_block(a, -1)).collect();
        let bytes = serde_json::to_vec(&basis).unwrap();
        let out = cmd_analyze(&BasisSource::Json(bytes)).unwrap();
        assert!(out.ok);
        let killing: ExactMatrix =
            serde_json::from_value(out.envelope.payload["killing"].clone()).unwrap();
        assert_eq!(killing, ExactMatrix::identity(3).scale(&Scalar::from_int(-8)));
    }

    #[test]
    fn classify_command_labels() {
        let out = cmd_classify(&StructureSource::Pattern("+".into())).unwrap();
        assert!(out.ok);
        assert_eq!(out.envelope.payload["dim"], json!(6));
        assert_eq!(out.envelope.payload["type"], json!("C1=A1"));
        assert_eq!(out.envelope.payload["su2"], json!(true));
        assert_eq!(out.envelope.payload["compact"], json!(true));

        let out = cmd_classify(&StructureSource::Pattern("++".into())).unwrap();
        assert!(out.ok);
        assert_eq!(out.envelope.payload["dim"], json!(13));
        assert_eq!(out.envelope.payload["type"], json!("C2"));
        let killing: ExactMatrix =
            serde_json::from_value(out.envelope.payload["killing_strong"].clone()).unwrap();
        let expected = ExactMatrix::block_diag(&[
            ExactMatrix::identity(6).scale(&Scalar::from_int(-12)),
            ExactMatrix::identity(4).scale(&Scalar::from_int(-24)),
        ])
        .unwrap();
        assert_eq!(killing, expected);
    }

    #[test]
    fn classify_mixed_pattern_matches_positive() {
        let positive = cmd_classify(&StructureSource::Pattern("++".into())).unwrap();
        let mixed = cmd_classify(&StructureSource::Pattern("+-".into())).unwrap();
        assert!(mixed.ok);
        assert_eq!(
            positive.envelope.payload["roots"],
            mixed.envelope.payload["roots"]
        );
        assert_eq!(
            positive.envelope.payload["killing_strong"],
            mixed.envelope.payload["killing_strong"]
        );
        assert_eq!(positive.envelope.payload["type"], mixed.envelope.payload["type"]);
    }

    #[test]
    fn finite_map_command() {
        let lambda = crate::invariance::rotation_lambda_quarters(1, 1);
        let bytes = serde_json::to_vec(&lambda).unwrap();
        let out = cmd_finite_map(&bytes, &StructureSource::Pattern("+".into())).unwrap();
        assert!(out.ok);
        let r: ExactMatrix = serde_json::from_value(out.envelope.payload["R"].clone()).unwrap();
        assert_eq!(r, crate::invariance::axis1_rotation_quarters(2));
    }

    #[test]
    fn reference_check_command() {
        let out = cmd_reference_check().unwrap();
        assert!(out.ok);
        assert_eq!(out.envelope.payload["c2"]["table_matches"], json!(100));
    }

    #[test]
    fn envelopes_are_deterministic() {
        let a = cmd_classify(&StructureSource::Pattern("++".into())).unwrap();
        let b = cmd_classify(&StructureSource::Pattern("++".into())).unwrap();
        assert_eq!(
            serde_json::to_string(&a.envelope).unwrap(),
            serde_json::to_string(&b.envelope).unwrap()
        );
    }
}
