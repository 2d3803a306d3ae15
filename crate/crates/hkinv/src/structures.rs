//! Quaternionic (hyperkähler) structures on R^{4n}: standard blocks,
//! block-diagonal assembly, relation checking, symplectic forms, orientation.
//!
//! A structure is an ordered triple `(J₁,J₂,J₃)` of skew matrices satisfying
//! the quaternionic relations `J_α J_β = ε_{αβγ} J_γ − δ_{αβ} I`. On each
//! R⁴ block the triple is one of two standard families: the positively
//! oriented `Y_α` (Pfaffian +1) or the negatively oriented `Ŷ_α`
//! (Pfaffian −1).
//!
//! ```
//! use hkinv::structures::{build_structure, block_orientation, check_quaternionic};
//!
//! let j = build_structure(&[1, -1]).unwrap();
//! assert!(check_quaternionic(&j.j).is_ok());
//! assert_eq!(block_orientation(&j, 1).unwrap(), -1);
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::scalar::Scalar;

/// Totally antisymmetric symbol on 1-based indices; `ε₁₂₃ = +1`.
pub fn levi_civita(a: usize, b: usize, c: usize) -> i64 {
    match (a, b, c) {
        (1, 2, 3) | (2, 3, 1) | (3, 1, 2) => 1,
        (1, 3, 2) | (3, 2, 1) | (2, 1, 3) => -1,
        _ => 0,
    }
}

/// For distinct `a ≠ b` in {1,2,3}, the remaining index.
fn third_index(a: usize, b: usize) -> usize {
    6 - a - b
}

/// Standard 4×4 block: `Y_α` for `sign = +1`, `Ŷ_α` for `sign = −1`.
///
/// The six matrices are fixed constants; `pfaffian4` is `sign` for each.
pub fn standard_block(alpha: usize, sign: i8) -> ExactMatrix {
    assert!((1..=3).contains(&alpha), "alpha must be 1, 2, or 3");
    assert!(sign == 1 || sign == -1, "sign must be +1 or -1");
    let rows: [&[i64]; 4] = match (alpha, sign) {
        (1, 1) => [&[0, 1, 0, 0], &[-1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, -1, 0]],
        (2, 1) => [&[0, 0, 0, 1], &[0, 0, 1, 0], &[0, -1, 0, 0], &[-1, 0, 0, 0]],
        (3, 1) => [&[0, 0, 1, 0], &[0, 0, 0, -1], &[-1, 0, 0, 0], &[0, 1, 0, 0]],
        (1, -1) => [&[0, 0, 1, 0], &[0, 0, 0, 1], &[-1, 0, 0, 0], &[0, -1, 0, 0]],
        (2, -1) => [&[0, 0, 0, -1], &[0, 0, 1, 0], &[0, -1, 0, 0], &[1, 0, 0, 0]],
        (3, -1) => [&[0, -1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, -1, 0]],
        _ => unreachable!(),
    };
    ExactMatrix::from_int_rows(&rows).expect("fixed shape")
}

/// A hyperkähler structure: the triple with its block orientation pattern,
/// or `pattern = None` for structures received from outside.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct HKStructure {
    /// Number of 4×4 blocks; matrices are `4n`×`4n`.
    pub n: usize,
    /// Block orientation signs, when the structure was built from a pattern.
    pub pattern: Option<Vec<i8>>,
    /// The ordered triple `(J₁, J₂, J₃)`.
    #[serde(rename = "J")]
    pub j: [ExactMatrix; 3],
}

impl HKStructure {
    /// Wraps a triple after shape validation; relation checking is separate
    /// (see [`check_quaternionic`]) so invalid triples can still be reported.
    pub fn new(n: usize, pattern: Option<Vec<i8>>, j: [ExactMatrix; 3]) -> Result<Self> {
        if n == 0 {
            return Err(Error::ShapeError("n must be positive".into()));
        }
        let size = 4 * n;
        if j.iter().any(|m| m.rows() != size || m.cols() != size) {
            return Err(Error::ShapeError(format!(
                "structure matrices must be {size}x{size}"
            )));
        }
        if let Some(p) = &pattern {
            if p.len() != n || p.iter().any(|&s| s != 1 && s != -1) {
                return Err(Error::ShapeError(
                    "pattern must hold n entries from {+1,-1}".into(),
                ));
            }
        }
        Ok(HKStructure { n, pattern, j })
    }

    /// Matrix size `4n`.
    pub fn size(&self) -> usize {
        4 * self.n
    }
}

impl<'de> Deserialize<'de> for HKStructure {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            n: usize,
            #[serde(default)]
            pattern: Option<Vec<i8>>,
            #[serde(rename = "J")]
            j: [ExactMatrix; 3],
        }
        let raw = Raw::deserialize(deserializer)?;
        HKStructure::new(raw.n, raw.pattern, raw.j).map_err(serde::de::Error::custom)
    }
}

/// Builds the block-diagonal structure `J_α = Σᵢ E_ii ⊗ J^{(i)}_α` with
/// block `i` equal to `Y_α` or `Ŷ_α` per the pattern sign.
pub fn build_structure(pattern: &[i8]) -> Result<HKStructure> {
    if pattern.is_empty() {
        return Err(Error::ShapeError("pattern must be nonempty".into()));
    }
    if pattern.iter().any(|&s| s != 1 && s != -1) {
        return Err(Error::ShapeError(
            "pattern must hold entries from {+1,-1}".into(),
        ));
    }
    let j = [1, 2, 3].map(|alpha| {
        let blocks: Vec<ExactMatrix> = pattern
            .iter()
            .map(|&sign| standard_block(alpha, sign))
            .collect();
        ExactMatrix::block_diag(&blocks).expect("square blocks")
    });
    HKStructure::new(pattern.len(), Some(pattern.to_vec()), j)
}

/// Checks the quaternionic relations `J_α J_β = ε_{αβγ} J_γ − δ_{αβ} I` and
/// skewness of each `J_α`.
///
/// On failure reports the first violated pair `(α, β)` (1-based, row-major
/// order); skewness failures report `J_α` by name.
pub fn check_quaternionic(j: &[ExactMatrix; 3]) -> Result<()> {
    let size = j[0].rows();
    if !size.is_multiple_of(4) || size == 0 {
        return Err(Error::ShapeError("matrix size must be a multiple of 4".into()));
    }
    if j.iter().any(|m| m.rows() != size || m.cols() != size) {
        return Err(Error::ShapeError("triple must be square of equal size".into()));
    }
    for (idx, m) in j.iter().enumerate() {
        if !m.is_skew() {
            return Err(Error::StructureError(format!(
                "J_{} is not skew-symmetric",
                idx + 1
            )));
        }
    }
    let identity = ExactMatrix::identity(size);
    for alpha in 1..=3 {
        for beta in 1..=3 {
            let product = j[alpha - 1].mat_mul(&j[beta - 1])?;
            let expected = if alpha == beta {
                identity.neg()
            } else {
                let gamma = third_index(alpha, beta);
                j[gamma - 1].scale(&Scalar::from_int(levi_civita(alpha, beta, gamma)))
            };
            if product != expected {
                return Err(Error::InvalidStructure(alpha, beta));
            }
        }
    }
    Ok(())
}

/// The symplectic triple `K_α = g·J_α` for the Euclidean metric `g = I`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymplecticTriple {
    /// The ordered triple `(K₁, K₂, K₃)`.
    pub k: [ExactMatrix; 3],
}

/// Forms `K_α = g·J_α` and verifies the symplectic version of the
/// quaternionic relations, `K_α g⁻¹ K_β = ε_{αβγ} K_γ − δ_{αβ} I`.
pub fn symplectic_triple(j: &HKStructure) -> Result<SymplecticTriple> {
    let g = ExactMatrix::identity(j.size());
    let g_inv = g.inverse().expect("identity is invertible");
    let k = [0, 1, 2].map(|idx| g.mat_mul(&j.j[idx]).expect("sizes match"));
    for alpha in 1..=3 {
        for beta in 1..=3 {
            let product = k[alpha - 1].mat_mul(&g_inv)?.mat_mul(&k[beta - 1])?;
            let expected = if alpha == beta {
                ExactMatrix::identity(j.size()).neg()
            } else {
                let gamma = third_index(alpha, beta);
                k[gamma - 1].scale(&Scalar::from_int(levi_civita(alpha, beta, gamma)))
            };
            if product != expected {
                return Err(Error::InvalidStructure(alpha, beta));
            }
        }
    }
    Ok(SymplecticTriple { k })
}

/// Orientation of 4×4 block `i` (0-based): the Pfaffian of that block of
/// `K₁`, which is `+1` on `Y` blocks and `−1` on `Ŷ` blocks.
///
/// All three `K_α` must give the same sign; a disagreement between `K_α`
/// and `K_β` is reported as the pair `(α, β)`.
pub fn block_orientation(j: &HKStructure, block: usize) -> Result<i8> {
    if block >= j.n {
        return Err(Error::ShapeError(format!(
            "block index {block} out of range for n = {}",
            j.n
        )));
    }
    if j.j.iter().any(|m| !m.is_block_diagonal(4)) {
        return Err(Error::StructureError(
            "structure is not 4x4-block-diagonal".into(),
        ));
    }
    let triple = symplectic_triple(j)?;
    let mut signs = Vec::new();
    for k in &triple.k {
        let pf = k.block(block, block, 4)?.pfaffian4()?;
        let sign = if pf == Scalar::from_int(1) {
            1
        } else if pf == Scalar::from_int(-1) {
            -1
        } else {
            return Err(Error::StructureError(format!(
                "block {block} Pfaffian {pf} is not \u{b1}1"
            )));
        };
        signs.push(sign);
    }
    for alpha in 1..3 {
        if signs[alpha] != signs[0] {
            return Err(Error::InvalidStructure(1, alpha + 1));
        }
    }
    Ok(signs[0])
}
