//! Structure constants, adjoint representation, Killing form, and
//! structural predicates for a matrix Lie algebra given by a basis.
//!
//! ```
//! use hkinv::lie::{killing_form, is_semisimple, is_compact_form};
//! use hkinv::structures::standard_block;
//!
//! let basis: Vec<_> = (1..=3).map(|a| standard_block(a, -1)).collect();
//! let b = killing_form(&basis).unwrap();
//! assert!(is_semisimple(&b));
//! assert!(is_compact_form(&b).unwrap());
//! ```

use num::Signed;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::SpanSolver;
use crate::matrix::ExactMatrix;
use crate::scalar::Scalar;

/// A Lie algebra presented by a matrix basis with its structure constants
/// `[bᵢ, bⱼ] = Σₖ cᵢⱼᵏ bₖ`.
#[derive(Clone, Debug)]
pub struct LieAlgebraPresentation {
    /// The basis matrices.
    pub basis: Vec<ExactMatrix>,
    /// Dense tensor `constants[i][j][k] = cᵢⱼᵏ`.
    pub constants: Vec<Vec<Vec<Scalar>>>,
}

impl LieAlgebraPresentation {
    /// Basis size.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The adjoint matrix of basis element `i`: column `j` holds the
    /// coordinates of `[bᵢ, bⱼ]`.
    pub fn ad(&self, i: usize) -> ExactMatrix {
        let d = self.dim();
        ExactMatrix::from_fn(d, d, |k, j| self.constants[i][j][k].clone())
    }

    /// The adjoint matrix of the element with the given basis coordinates.
    pub fn ad_of_coords(&self, coords: &[Scalar]) -> ExactMatrix {
        let d = self.dim();
        let mut out = ExactMatrix::zero(d, d);
        for (i, lambda) in coords.iter().enumerate() {
            if !lambda.is_zero() {
                out = out.add(&self.ad(i).scale(lambda)).expect("sizes match");
            }
        }
        out
    }

    /// Nonzero constants as `(i, j, k, c)` with `i < j`, sorted.
    pub fn sparse_table(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let d = self.dim();
        let mut out = Vec::new();
        for i in 0..d {
            for j in i + 1..d {
                for k in 0..d {
                    let c = &self.constants[i][j][k];
                    if !c.is_zero() {
                        out.push((i, j, k, c.clone()));
                    }
                }
            }
        }
        out
    }
}

/// Expands every bracket `[bᵢ, bⱼ]` in the basis.
///
/// Fails with `DependentBasis` if the basis is linearly dependent and with
/// `NotASubalgebra` naming the first pair whose bracket leaves the span.
/// Expansion residuals are exactly zero by construction of the
/// coordinates.
pub fn structure_constants(basis: &[ExactMatrix]) -> Result<LieAlgebraPresentation> {
    let d = basis.len();
    let vectors: Vec<Vec<Scalar>> = basis.iter().map(|b| b.entries().to_vec()).collect();
    let solver = SpanSolver::new(&vectors);
    if !solver.is_independent(d) {
        return Err(Error::DependentBasis);
    }
    let pairs: Vec<(usize, usize)> = (0..d)
        .flat_map(|i| (i + 1..d).map(move |j| (i, j)))
        .collect();
    type Expansion = ((usize, usize), Result<Vec<Scalar>>);
    let expanded: Vec<Expansion> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let bracket = basis[i].commutator(&basis[j]).expect("square basis");
            let coords = solver
                .coordinates(bracket.entries())
                .ok_or(Error::NotASubalgebra(i, j));
            ((i, j), coords)
        })
        .collect();
    let mut constants = vec![vec![vec![Scalar::zero(); d]; d]; d];
    for ((i, j), coords) in expanded {
        let coords = coords?;
        for (k, c) in coords.into_iter().enumerate() {
            if !c.is_zero() {
                constants[j][i][k] = -&c;
                constants[i][j][k] = c;
            }
        }
    }
    Ok(LieAlgebraPresentation {
        basis: basis.to_vec(),
        constants,
    })
}

/// The Killing form `B_{ij} = tr(ad_i · ad_j)` of a basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KillingForm {
    /// The symmetric Gram matrix in the given basis order.
    pub b: ExactMatrix,
}

impl KillingForm {
    /// Evaluates `B(x, y)` on coordinate vectors.
    pub fn eval(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let d = self.b.rows();
        let mut acc = Scalar::zero();
        for (i, xi) in x[..d].iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y[..d].iter().enumerate() {
                if !yj.is_zero() {
                    acc = &acc + &(&(xi * &self.b[(i, j)]) * yj);
                }
            }
        }
        acc
    }
}

/// Computes the Killing form from the structure constants of `basis`.
pub fn killing_form(basis: &[ExactMatrix]) -> Result<KillingForm> {
    Ok(killing_of_presentation(&structure_constants(basis)?))
}

/// Killing form of an already-expanded presentation.
pub fn killing_of_presentation(p: &LieAlgebraPresentation) -> KillingForm {
    let d = p.dim();
    // tr(ad_i ad_j) = Σ_{p,q} c[i][q][p]·c[j][p][q].
    let entries: Vec<Scalar> = (0..d * d)
        .into_par_iter()
        .map(|idx| {
            let (i, j) = (idx / d, idx % d);
            let mut acc = Scalar::zero();
            for r in 0..d {
                for q in 0..d {
                    let x = &p.constants[i][q][r];
                    if x.is_zero() {
                        continue;
                    }
                    let y = &p.constants[j][r][q];
                    if !y.is_zero() {
                        acc = &acc + &(x * y);
                    }
                }
            }
            acc
        })
        .collect();
    KillingForm {
        b: ExactMatrix::from_flat(d, d, entries).expect("shape by construction"),
    }
}

/// Semisimplicity test: the Killing form is nondegenerate.
pub fn is_semisimple(b: &KillingForm) -> bool {
    !b.b.det().expect("Killing matrix is square").is_zero()
}

/// Compact-form test: the Killing form is negative definite, decided
/// exactly via the signs of the leading principal minors
/// (`(−1)^k·minor_k > 0`). Requires rational entries.
pub fn is_compact_form(b: &KillingForm) -> Result<bool> {
    let d = b.b.rows();
    for entry in b.b.entries() {
        if !entry.is_rational() {
            return Err(Error::UnsupportedField(format!(
                "definiteness needs rational Killing entries, found {entry}"
            )));
        }
    }
    for k in 1..=d {
        let minor = b.b.block(0, 0, k)?.det()?.as_rational()?;
        let expected_positive = if k % 2 == 1 { -minor.clone() } else { minor.clone() };
        if !expected_positive.is_positive() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff `[s, w] ∈ span(sub)` for every pair of sub and whole basis
/// elements. Containment of the sub span in the whole span is checked
/// first and its violation is an error, not `false`.
pub fn is_ideal(sub_basis: &[ExactMatrix], whole_basis: &[ExactMatrix]) -> Result<bool> {
    let whole_vectors: Vec<Vec<Scalar>> =
        whole_basis.iter().map(|b| b.entries().to_vec()).collect();
    let whole = SpanSolver::new(&whole_vectors);
    let sub_vectors: Vec<Vec<Scalar>> = sub_basis.iter().map(|b| b.entries().to_vec()).collect();
    for (idx, v) in sub_vectors.iter().enumerate() {
        if !whole.contains(v) {
            return Err(Error::NotASubspace(idx));
        }
    }
    let sub = SpanSolver::new(&sub_vectors);
    for s in sub_basis {
        for w in whole_basis {
            let bracket = s.commutator(w)?;
            if !sub.contains(bracket.entries()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
