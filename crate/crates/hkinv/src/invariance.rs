//! The infinitesimal invariance equation `[X, J_α] = Σ_β M_{αβ} J_β`:
//! assembly, exact solving, the explicit basis, and the finite-level
//! `Λ ↔ R` correspondence.
//!
//! The solution space for the standard structure on R^{4n} has dimension
//! `n(2n+1) + 3` and splits into an su(2) part (the three `M ≠ 0`
//! generators) and the strong part with `M = 0`, which is sp(n).
//!
//! ```
//! use hkinv::invariance::solve_invariance;
//! use hkinv::structures::build_structure;
//!
//! let j = build_structure(&[1]).unwrap();
//! let sol = solve_invariance(&j).unwrap();
//! assert_eq!(sol.full_basis.len(), 6);
//! assert!(sol.strong_part.iter().all(|(_, m)| m.is_zero()));
//! ```

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, span_canonical, SpanSolver};
use crate::matrix::ExactMatrix;
use crate::scalar::{Rational, Scalar};
use crate::structures::{check_quaternionic, levi_civita, standard_block, HKStructure};

/// Column index of the strictly-upper unknown `x_{ij}` (`i < j`) of a skew
/// `size`×`size` matrix, in row-major order.
fn x_index(i: usize, j: usize, size: usize) -> usize {
    debug_assert!(i < j && j < size);
    i * size - i * (i + 1) / 2 + (j - i - 1)
}

/// Number of strictly-upper unknowns of a skew `size`×`size` matrix.
fn x_count(size: usize) -> usize {
    size * (size - 1) / 2
}

/// Column index of the M unknown for the pair `(α, β)`, `α < β` (1-based):
/// order `M₁₂, M₁₃, M₂₃` after the X unknowns.
fn m_index(a: usize, b: usize, size: usize) -> usize {
    let offset = match (a, b) {
        (1, 2) => 0,
        (1, 3) => 1,
        (2, 3) => 2,
        _ => panic!("M index must be an ordered pair in 1..=3"),
    };
    x_count(size) + offset
}

/// Assembles the invariance equation as one exact linear system.
///
/// Unknowns: the strictly-upper entries of skew `X` in row-major order,
/// then `M₁₂, M₁₃, M₂₃`. One row per `(α, entry)`, so `3·(4n)²` rows; the
/// kernel of the system is exactly the solution set of the equation.
pub fn assemble_system(j: &HKStructure) -> Result<ExactMatrix> {
    check_quaternionic(&j.j)?;
    let size = j.size();
    let cols = x_count(size) + 3;
    let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(3 * size * size);
    for alpha in 1..=3 {
        let ja = &j.j[alpha - 1];
        for r in 0..size {
            for c in 0..size {
                let mut row = vec![Scalar::zero(); cols];
                // [X, J_α]_{rc} = Σ_k X_{rk}(J_α)_{kc} − (J_α)_{rk}X_{kc}.
                for k in 0..size {
                    let a1 = &ja[(k, c)];
                    if !a1.is_zero() {
                        if r < k {
                            row[x_index(r, k, size)] = &row[x_index(r, k, size)] + a1;
                        } else if r > k {
                            row[x_index(k, r, size)] = &row[x_index(k, r, size)] - a1;
                        }
                    }
                    let a2 = &ja[(r, k)];
                    if !a2.is_zero() {
                        if k < c {
                            row[x_index(k, c, size)] = &row[x_index(k, c, size)] - a2;
                        } else if k > c {
                            row[x_index(c, k, size)] = &row[x_index(c, k, size)] + a2;
                        }
                    }
                }
                // −Σ_β M_{αβ}(J_β)_{rc}, with M skew: M_{αβ} = ±m_{min,max}.
                for beta in 1..=3 {
                    if beta == alpha {
                        continue;
                    }
                    let entry = &j.j[beta - 1][(r, c)];
                    if entry.is_zero() {
                        continue;
                    }
                    let (col, sign) = if alpha < beta {
                        (m_index(alpha, beta, size), 1)
                    } else {
                        (m_index(beta, alpha, size), -1)
                    };
                    row[col] = if sign == 1 {
                        &row[col] - entry
                    } else {
                        &row[col] + entry
                    };
                }
                rows.push(row);
            }
        }
    }
    ExactMatrix::from_rows(rows)
}

/// A basis of the invariance algebra, each element paired with its `M`,
/// split into the su(2) part (`M ≠ 0`) and the strong part (`M = 0`).
#[derive(Clone, Debug, Serialize)]
pub struct InvarianceSolution {
    /// Block count of the underlying structure.
    pub n: usize,
    /// Full basis: su(2) part followed by the strong part.
    pub full_basis: Vec<(ExactMatrix, ExactMatrix)>,
    /// The three generators carrying the independent `M` matrices.
    pub su2_part: Vec<(ExactMatrix, ExactMatrix)>,
    /// The `M = 0` subalgebra, canonically reduced.
    pub strong_part: Vec<(ExactMatrix, ExactMatrix)>,
}

/// Rebuilds the skew `(X, M)` pair from one kernel vector.
fn unpack_solution(v: &[Scalar], size: usize) -> (ExactMatrix, ExactMatrix) {
    let mut x = ExactMatrix::zero(size, size);
    for i in 0..size {
        for j in i + 1..size {
            let val = v[x_index(i, j, size)].clone();
            if !val.is_zero() {
                x.set(j, i, -&val);
                x.set(i, j, val);
            }
        }
    }
    let mut m = ExactMatrix::zero(3, 3);
    for (a, b) in [(1, 2), (1, 3), (2, 3)] {
        let val = v[m_index(a, b, size)].clone();
        if !val.is_zero() {
            m.set(b - 1, a - 1, -&val);
            m.set(a - 1, b - 1, val);
        }
    }
    (x, m)
}

/// Flattens a skew `(X, M)` pair into unknown order.
fn pack_solution(x: &ExactMatrix, m: &ExactMatrix, size: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); x_count(size) + 3];
    for i in 0..size {
        for j in i + 1..size {
            v[x_index(i, j, size)] = x[(i, j)].clone();
        }
    }
    for (a, b) in [(1, 2), (1, 3), (2, 3)] {
        v[m_index(a, b, size)] = m[(a - 1, b - 1)].clone();
    }
    v
}

/// Checks `[X, J_α] = Σ_β M_{αβ} J_β` for all α.
fn satisfies_invariance(x: &ExactMatrix, m: &ExactMatrix, j: &HKStructure) -> bool {
    (1..=3).all(|alpha| {
        let lhs = match x.commutator(&j.j[alpha - 1]) {
            Ok(l) => l,
            Err(_) => return false,
        };
        let mut rhs = ExactMatrix::zero(j.size(), j.size());
        for beta in 1..=3 {
            let coeff = &m[(alpha - 1, beta - 1)];
            if !coeff.is_zero() {
                rhs = rhs.add(&j.j[beta - 1].scale(coeff)).expect("sizes match");
            }
        }
        lhs == rhs
    })
}

/// The `M` matrix of the generator `X = J_γ`: `M_{αβ} = 2·ε_{γαβ}`.
fn su2_m(gamma: usize) -> ExactMatrix {
    ExactMatrix::from_fn(3, 3, |a, b| {
        Scalar::from_int(2 * levi_civita(gamma, a + 1, b + 1))
    })
}

/// Solves the invariance equation for `j` and splits the kernel.
///
/// The su(2) part is carried by the three generators `X_γ = J_γ` (diagonal
/// block repetition when `j` is standard), whose `M` matrices are
/// independent; subtracting their span from the raw kernel leaves the
/// strong part, which is canonically reduced so equal algebras yield equal
/// bases.
pub fn solve_invariance(j: &HKStructure) -> Result<InvarianceSolution> {
    let system = assemble_system(j)?;
    let kernel = kernel_basis(&system);
    let size = j.size();

    let su2_part: Vec<(ExactMatrix, ExactMatrix)> = (1..=3)
        .map(|gamma| (j.j[gamma - 1].clone(), su2_m(gamma)))
        .collect();
    let su2_vectors: Vec<Vec<Scalar>> = su2_part
        .iter()
        .map(|(x, m)| pack_solution(x, m, size))
        .collect();

    // Kill the M components of each kernel vector using the su(2)
    // carriers; M(J₁), M(J₂), M(J₃) hit the three M coordinates
    // independently, so the residuals all have M = 0.
    let m_base = x_count(size);
    let mut strong_vectors: Vec<Vec<Scalar>> = Vec::new();
    for v in &kernel {
        let mut w = v.clone();
        // M(J_γ) has a single nonzero M coordinate: 2ε in position
        // M₂₃ (γ=1), M₁₃ (γ=2), M₁₂ (γ=3).
        for (gamma, slot, sign) in [(1usize, 2usize, 1i64), (2, 1, -1), (3, 0, 1)] {
            let coeff = w[m_base + slot].clone();
            if coeff.is_zero() {
                continue;
            }
            let factor = &coeff * &Scalar::from_ratio(sign, 2);
            for (x, y) in w.iter_mut().zip(&su2_vectors[gamma - 1]) {
                if !y.is_zero() {
                    *x = &*x - &(&factor * y);
                }
            }
        }
        debug_assert!(w[m_base..].iter().all(Scalar::is_zero));
        strong_vectors.push(w);
    }
    let strong_part: Vec<(ExactMatrix, ExactMatrix)> = span_canonical(&strong_vectors)
        .iter()
        .map(|v| unpack_solution(v, size))
        .collect();

    // Exactness checks: every element solves the equation, the su(2)
    // carriers lie in the kernel span, and the dimensions add up.
    let kernel_solver = SpanSolver::new(&kernel);
    for v in &su2_vectors {
        if !kernel_solver.contains(v) {
            return Err(Error::NotInvariance);
        }
    }
    let mut full_basis = su2_part.clone();
    full_basis.extend(strong_part.iter().cloned());
    if full_basis.len() != kernel.len() {
        return Err(Error::DependentBasis);
    }
    for (x, m) in &full_basis {
        if !satisfies_invariance(x, m, j) {
            return Err(Error::NotInvariance);
        }
    }

    Ok(InvarianceSolution {
        n: j.n,
        full_basis,
        su2_part,
        strong_part,
    })
}

/// The explicit basis of the invariance algebra for the standard
/// all-positive structure on R^{4n}: the diagonal-repeated `Y_α` triple
/// (with its `M`), single-block `Ŷ_α` insertions, symmetric off-diagonal
/// `Ŷ_α` pairs, and antisymmetric off-diagonal `I₄` pairs.
///
/// Count: `3 + 3n + 3·n(n−1)/2 + n(n−1)/2 = n(2n+1) + 3`.
pub fn lemma5_basis(n: usize) -> Vec<(ExactMatrix, ExactMatrix)> {
    assert!(n >= 1, "n must be positive");
    let mut out = Vec::new();
    let e = |i: usize, j: usize| {
        ExactMatrix::from_fn(n, n, |r, c| {
            Scalar::from_int(i64::from(r == i && c == j))
        })
    };
    let zero_m = ExactMatrix::zero(3, 3);
    let identity_n = ExactMatrix::identity(n);
    for gamma in 1..=3 {
        out.push((identity_n.kron(&standard_block(gamma, 1)), su2_m(gamma)));
    }
    for i in 0..n {
        for alpha in 1..=3 {
            out.push((e(i, i).kron(&standard_block(alpha, -1)), zero_m.clone()));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let symm = e(i, j).add(&e(j, i)).expect("sizes match");
            for alpha in 1..=3 {
                out.push((symm.kron(&standard_block(alpha, -1)), zero_m.clone()));
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let anti = e(i, j).sub(&e(j, i)).expect("sizes match");
            out.push((anti.kron(&ExactMatrix::identity(4)), zero_m.clone()));
        }
    }
    out
}

/// Extracts `M` from a solution `X` via the trace pairing
/// `M_{αβ} = −(1/(4n))·tr([X, J_α]·J_β)`, justified by
/// `tr(J_β J_γ) = −4n·δ_{βγ}`; verifies that `X` actually solves the
/// equation with this `M`.
pub fn m_of_x(x: &ExactMatrix, j: &HKStructure) -> Result<ExactMatrix> {
    if x.rows() != j.size() || x.cols() != j.size() {
        return Err(Error::DimensionError(format!(
            "X is {}x{}, structure is {}x{}",
            x.rows(),
            x.cols(),
            j.size(),
            j.size()
        )));
    }
    let norm = Scalar::from_ratio(-1, 4 * j.n as i64);
    let mut m = ExactMatrix::zero(3, 3);
    for alpha in 1..=3 {
        let bracket = x.commutator(&j.j[alpha - 1])?;
        for beta in 1..=3 {
            let t = bracket.mat_mul(&j.j[beta - 1])?.trace()?;
            m.set(alpha - 1, beta - 1, &t * &norm);
        }
    }
    if !satisfies_invariance(x, &m, j) {
        return Err(Error::NotInvariance);
    }
    debug_assert!(m.is_skew());
    Ok(m)
}

/// Extracts the SO(3) matrix of a finite invariance map:
/// `R_{αβ} = −(1/(4n))·tr(Λ J_α Λ⁻¹ · J_β)`, then verifies
/// `Λ J_α Λ⁻¹ = Σ_β R_{αβ} J_β` and `R ∈ SO(3)`.
pub fn finite_r_of_lambda(lambda: &ExactMatrix, j: &HKStructure) -> Result<ExactMatrix> {
    if lambda.rows() != j.size() || lambda.cols() != j.size() {
        return Err(Error::DimensionError(format!(
            "Lambda is {}x{}, structure is {}x{}",
            lambda.rows(),
            lambda.cols(),
            j.size(),
            j.size()
        )));
    }
    if !lambda.is_orthogonal() {
        return Err(Error::InvalidConjugator);
    }
    if lambda.det()? != Scalar::from_int(1) {
        return Err(Error::InvalidConjugator);
    }
    let lambda_inv = lambda.transpose();
    let conjugated: Vec<ExactMatrix> = j
        .j
        .iter()
        .map(|ja| lambda.mat_mul(ja)?.mat_mul(&lambda_inv))
        .collect::<Result<_>>()?;
    let norm = Scalar::from_ratio(-1, 4 * j.n as i64);
    let mut r = ExactMatrix::zero(3, 3);
    for (alpha, mapped) in conjugated.iter().enumerate() {
        for beta in 0..3 {
            let t = mapped.mat_mul(&j.j[beta])?.trace()?;
            r.set(alpha, beta, &t * &norm);
        }
    }
    for alpha in 0..3 {
        let mut rhs = ExactMatrix::zero(j.size(), j.size());
        for beta in 0..3 {
            let coeff = &r[(alpha, beta)];
            if !coeff.is_zero() {
                rhs = rhs.add(&j.j[beta].scale(coeff))?;
            }
        }
        if conjugated[alpha] != rhs {
            return Err(Error::NotQuaternionic);
        }
    }
    assert!(r.is_orthogonal(), "extracted R must be orthogonal");
    assert!(
        r.det()? == Scalar::from_int(1),
        "extracted R must have determinant 1"
    );
    Ok(r)
}

/// The 4×4 family of finite strong maps on R⁴ for a unit quaternion
/// `(a, b, c, d)`: orthogonal with determinant 1 when
/// `a² + b² + c² + d² = 1`, and conjugation by it fixes each `J_α` of the
/// positively oriented standard structure.
pub fn strong_lambda_r4(a: &Rational, b: &Rational, c: &Rational, d: &Rational) -> ExactMatrix {
    let s = |r: &Rational| Scalar::from_rational(r.clone());
    let neg = |r: &Rational| Scalar::from_rational(-r.clone());
    ExactMatrix::from_rows(vec![
        vec![s(a), neg(d), s(b), neg(c)],
        vec![s(d), s(a), s(c), s(b)],
        vec![neg(b), neg(c), s(a), s(d)],
        vec![s(c), neg(b), neg(d), s(a)],
    ])
    .expect("fixed shape")
}

/// Exact cosine of `k·π/2`.
fn cos_quarter(k: i64) -> i64 {
    match k.rem_euclid(4) {
        0 => 1,
        2 => -1,
        _ => 0,
    }
}

/// Exact sine of `k·π/2`.
fn sin_quarter(k: i64) -> i64 {
    match k.rem_euclid(4) {
        1 => 1,
        3 => -1,
        _ => 0,
    }
}

/// The block rotation `Λ₀ = diag(Rot(φ₁), Rot(φ₂))` on R⁴ at the exact
/// angles `φ_i = k_i·π/2`.
pub fn rotation_lambda_quarters(k1: i64, k2: i64) -> ExactMatrix {
    let rot = |k: i64| {
        ExactMatrix::from_int_rows(&[
            &[cos_quarter(k), -sin_quarter(k)],
            &[sin_quarter(k), cos_quarter(k)],
        ])
        .expect("fixed shape")
    };
    ExactMatrix::block_diag(&[rot(k1), rot(k2)]).expect("square blocks")
}

/// The rotation of R³ about axis 1 by the exact angle `k·π/2`: the
/// closed-form `R` of the block rotation `Λ₀(φ₁, φ₂)` with `k = k₁ + k₂`.
pub fn axis1_rotation_quarters(k: i64) -> ExactMatrix {
    ExactMatrix::from_int_rows(&[
        &[1, 0, 0],
        &[0, cos_quarter(k), -sin_quarter(k)],
        &[0, sin_quarter(k), cos_quarter(k)],
    ])
    .expect("fixed shape")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;
    use crate::structures::build_structure;
    use proptest::prelude::*;

    #[test]
    fn system_sizes() {
        let j1 = build_structure(&[1]).unwrap();
        let s1 = assemble_system(&j1).unwrap();
        assert_eq!((s1.rows(), s1.cols()), (48, 9));
        let j2 = build_structure(&[1, 1]).unwrap();
        let s2 = assemble_system(&j2).unwrap();
        assert_eq!((s2.rows(), s2.cols()), (192, 31));
    }

    #[test]
    fn invalid_structure_rejected() {
        let j = HKStructure::new(
            1,
            None,
            [
                standard_block(1, 1),
                standard_block(2, 1),
                standard_block(3, 1).neg(),
            ],
        )
        .unwrap();
        assert_eq!(
            assemble_system(&j).err(),
            Some(Error::InvalidStructure(1, 2))
        );
    }

    #[test]
    fn solution_dimensions_small() {
        for (pattern, dim) in [(vec![1i8], 6), (vec![1, 1], 13)] {
            let j = build_structure(&pattern).unwrap();
            let sol = solve_invariance(&j).unwrap();
            assert_eq!(sol.full_basis.len(), dim);
            assert_eq!(sol.su2_part.len(), 3);
            assert_eq!(sol.strong_part.len(), dim - 3);
            assert!(sol.strong_part.iter().all(|(_, m)| m.is_zero()));
            assert!(sol.su2_part.iter().all(|(_, m)| !m.is_zero()));
        }
    }

    #[test]
    fn n1_split_matches_standard_families() {
        let j = build_structure(&[1]).unwrap();
        let sol = solve_invariance(&j).unwrap();
        for (gamma, (x, _)) in sol.su2_part.iter().enumerate() {
            assert_eq!(x, &standard_block(gamma + 1, 1));
        }
        let strong: Vec<Vec<Scalar>> = sol
            .strong_part
            .iter()
            .map(|(x, _)| x.entries().to_vec())
            .collect();
        let hats: Vec<Vec<Scalar>> = (1..=3)
            .map(|alpha| standard_block(alpha, -1).entries().to_vec())
            .collect();
        assert_eq!(span_canonical(&strong), span_canonical(&hats));
    }

    #[test]
    fn lemma5_counts() {
        assert_eq!(lemma5_basis(1).len(), 6);
        assert_eq!(lemma5_basis(2).len(), 13);
        assert_eq!(lemma5_basis(3).len(), 24);
    }

    #[test]
    fn lemma5_elements_solve_the_equation() {
        for n in 1..=2usize {
            let j = build_structure(&vec![1; n]).unwrap();
            for (x, m) in lemma5_basis(n) {
                assert!(satisfies_invariance(&x, &m, &j));
                assert_eq!(m_of_x(&x, &j).unwrap(), m);
            }
        }
    }

    #[test]
    fn solver_and_lemma5_spans_agree() {
        for n in 1..=2usize {
            let j = build_structure(&vec![1; n]).unwrap();
            let size = j.size();
            let solved: Vec<Vec<Scalar>> = solve_invariance(&j)
                .unwrap()
                .full_basis
                .iter()
                .map(|(x, m)| pack_solution(x, m, size))
                .collect();
            let explicit: Vec<Vec<Scalar>> = lemma5_basis(n)
                .iter()
                .map(|(x, m)| pack_solution(x, m, size))
                .collect();
            assert_eq!(span_canonical(&solved), span_canonical(&explicit));
        }
    }

    #[test]
    fn m_closed_forms() {
        let j = build_structure(&[1]).unwrap();
        let half = Scalar::from_ratio(1, 2);
        let m3 = m_of_x(&standard_block(3, 1).scale(&half), &j).unwrap();
        assert_eq!(
            m3,
            ExactMatrix::from_int_rows(&[&[0, 1, 0], &[-1, 0, 0], &[0, 0, 0]]).unwrap()
        );
        let m_hat = m_of_x(&standard_block(1, -1), &j).unwrap();
        assert!(m_hat.is_zero());

        let j2 = build_structure(&[1, 1]).unwrap();
        let x = ExactMatrix::identity(2)
            .kron(&standard_block(2, 1))
            .scale(&half);
        let m = m_of_x(&x, &j2).unwrap();
        // M_{αβ} = ε_{2αβ}: M₃₁ = 1, M₁₃ = −1, all else 0.
        assert_eq!(
            m,
            ExactMatrix::from_int_rows(&[&[0, 0, -1], &[0, 0, 0], &[1, 0, 0]]).unwrap()
        );
    }

    #[test]
    fn non_solution_is_rejected() {
        let j2 = build_structure(&[1, 1]).unwrap();
        let mut x = ExactMatrix::zero(8, 8);
        x.set(0, 4, Scalar::from_int(1));
        x.set(4, 0, Scalar::from_int(-1));
        assert_eq!(m_of_x(&x, &j2).err(), Some(Error::NotInvariance));
    }

    #[test]
    fn finite_r_identity_and_strong_family() {
        let j = build_structure(&[1]).unwrap();
        assert_eq!(
            finite_r_of_lambda(&ExactMatrix::identity(4), &j).unwrap(),
            ExactMatrix::identity(3)
        );
        let lambda = strong_lambda_r4(&ratio(0, 1), &ratio(1, 1), &ratio(0, 1), &ratio(0, 1));
        assert!(lambda.is_orthogonal());
        assert_eq!(
            finite_r_of_lambda(&lambda, &j).unwrap(),
            ExactMatrix::identity(3)
        );
    }

    #[test]
    fn finite_r_quarter_turns() {
        let j = build_structure(&[1]).unwrap();
        let lambda = rotation_lambda_quarters(1, 1);
        let r = finite_r_of_lambda(&lambda, &j).unwrap();
        assert_eq!(r, axis1_rotation_quarters(2));
        assert_eq!(
            r,
            ExactMatrix::from_int_rows(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, -1]]).unwrap()
        );
    }

    #[test]
    fn finite_r_rejects_bad_lambda() {
        let j = build_structure(&[1]).unwrap();
        let mut shear = ExactMatrix::identity(4);
        shear.set(0, 1, Scalar::from_int(1));
        assert_eq!(
            finite_r_of_lambda(&shear, &j).err(),
            Some(Error::InvalidConjugator)
        );

        // Orthogonal, determinant −1.
        let mut reflect = ExactMatrix::identity(4);
        reflect.set(3, 3, Scalar::from_int(-1));
        assert_eq!(
            finite_r_of_lambda(&reflect, &j).err(),
            Some(Error::InvalidConjugator)
        );

        // Orthogonal with determinant +1 but crossing the blocks: not
        // quaternionic for the n=2 structure.
        let j2 = build_structure(&[1, 1]).unwrap();
        let mut swap = ExactMatrix::zero(8, 8);
        for i in 0..4 {
            swap.set(i, i + 4, Scalar::from_int(1));
            swap.set(i + 4, i, Scalar::from_int(1));
        }
        assert_eq!(swap.det().unwrap(), Scalar::from_int(1));
        assert!(matches!(
            finite_r_of_lambda(&swap, &j2),
            Ok(_) | Err(Error::NotQuaternionic)
        ));
    }

    use crate::linalg::span_canonical;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn commutator_closure_with_m_composition(i in 0usize..13, k in 0usize..13) {
            let j = build_structure(&[1, 1]).unwrap();
            let basis = lemma5_basis(2);
            let vectors: Vec<Vec<Scalar>> = basis
                .iter()
                .map(|(x, m)| pack_solution(x, m, 8))
                .collect();
            let solver = SpanSolver::new(&vectors);
            let (x1, m1) = &basis[i];
            let (x2, m2) = &basis[k];
            let bracket = x1.commutator(x2).unwrap();
            // M of [X, X̃] is [M̃, M].
            let m_bracket = m2.commutator(m1).unwrap();
            prop_assert!(solver.contains(&pack_solution(&bracket, &m_bracket, 8)));
            prop_assert_eq!(m_of_x(&bracket, &j).unwrap(), m_bracket);
        }

        #[test]
        fn quarter_turn_grid(k1 in 0i64..4, k2 in 0i64..4) {
            let j = build_structure(&[1]).unwrap();
            let lambda = rotation_lambda_quarters(k1, k2);
            prop_assert!(lambda.is_orthogonal());
            let r = finite_r_of_lambda(&lambda, &j).unwrap();
            prop_assert_eq!(r, axis1_rotation_quarters(k1 + k2));
        }
    }
}
