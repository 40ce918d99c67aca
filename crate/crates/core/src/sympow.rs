//! Symmetric tensor powers ("bar" matrices), the multinomial diagonal `B`,
//! and the Lie-algebra map `Γ`.
//!
//! For a square `A` of extent `d + 1`, the degree-`N` induced matrix has
//! entries defined by `(Ax)^m = Σ_n Ā_{mn} x^n`, with rows and columns
//! labelled by the multi-indices of degree `N` in dictionary order. The map
//! is multiplicative but not linear. `Γ(g)` is its derivative at the
//! identity, with the closed form `Γ(g)_{mn} = m_i g_{ij}` when
//! `n = m - e_i + e_j`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::multiindex::{multinomial, IndexTable, DEFAULT_GUARD};
use crate::scalar::Ring;

/// Which conjugation the transpose identity is applied with.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Conjugation {
    Transpose,
    Adjoint,
}

/// `d` for a square matrix of extent `d + 1`.
pub fn dimension_of<T: Ring>(a: &Matrix<T>) -> Result<usize> {
    if !a.is_square() || a.rows() == 0 {
        return Err(Error::Shape(format!(
            "expected a non-empty square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    Ok(a.rows() - 1)
}

/// Degree-`N` symmetric power of `A`, guarded by [`DEFAULT_GUARD`].
pub fn bar<T: Ring>(a: &Matrix<T>, degree: u32) -> Result<Matrix<T>> {
    bar_guarded(a, degree, DEFAULT_GUARD)
}

/// Degree-`N` symmetric power of `A`, built level by level with the
/// recurrence of [`bar_incremental`].
pub fn bar_guarded<T: Ring>(a: &Matrix<T>, degree: u32, guard: usize) -> Result<Matrix<T>> {
    let d = dimension_of(a)?;
    // fail fast before building intermediate levels
    let mut table = IndexTable::with_guard(d, degree, guard)?;
    if degree == 0 {
        return Ok(Matrix::identity(1));
    }
    let mut prev_table = IndexTable::with_guard(d, 1, guard)?;
    let mut current = a.clone();
    for level in 2..=degree {
        table = IndexTable::with_guard(d, level, guard)?;
        current = step(a, &current, &prev_table, &table);
        prev_table = table.clone();
    }
    debug_assert_eq!(current.rows(), table.len());
    Ok(current)
}

/// Degree-`N` power from the degree-`(N-1)` power `prev`.
///
/// For each column label `n'` take its first positive coordinate `j` and
/// `n = n' - e_j`; then
/// `n'_j · Ā^{(N)}_{m,n'} = Σ_k m_k Ā^{(N-1)}_{m-e_k,n} A_{kj}`.
pub fn bar_incremental<T: Ring>(a: &Matrix<T>, prev: &Matrix<T>, degree: u32) -> Result<Matrix<T>> {
    let d = dimension_of(a)?;
    if degree == 0 {
        return Err(Error::Shape("incremental step needs degree >= 1".into()));
    }
    let prev_table = IndexTable::new(d, degree - 1)?;
    let table = IndexTable::new(d, degree)?;
    if prev.rows() != prev_table.len() || prev.cols() != prev_table.len() {
        return Err(Error::Shape(format!(
            "previous level is {}x{}, expected {n}x{n}",
            prev.rows(),
            prev.cols(),
            n = prev_table.len()
        )));
    }
    Ok(step(a, prev, &prev_table, &table))
}

fn step<T: Ring>(a: &Matrix<T>, prev: &Matrix<T>, prev_table: &IndexTable, table: &IndexTable) -> Matrix<T> {
    let nu = table.len();
    let d = table.dim();
    // per target column: (j, rank of n' - e_j in the previous table, n'_j)
    let columns: Vec<(usize, usize, BigUint)> = table
        .iter()
        .map(|col| {
            let j = col.first_positive().expect("degree >= 1");
            let base = col.lower(j).expect("positive coordinate");
            (
                j,
                prev_table.rank(&base).expect("degree N-1 label"),
                BigUint::from(col.get(j)),
            )
        })
        .collect();
    let mut out = Matrix::zeros(nu, nu);
    for (r, m) in table.iter().enumerate() {
        let lowered: Vec<Option<(usize, T)>> = (0..=d)
            .map(|k| {
                m.lower(k).map(|mk| {
                    (
                        prev_table.rank(&mk).expect("degree N-1 label"),
                        T::from_i64(i64::from(m.get(k))),
                    )
                })
            })
            .collect();
        for (c, (j, base, divisor)) in columns.iter().enumerate() {
            let mut acc = T::zero();
            for (k, lk) in lowered.iter().enumerate() {
                let Some((row, mult)) = lk else { continue };
                let p = prev.get(*row, *base);
                let akj = a.get(k, *j);
                if p.is_zero() || akj.is_zero() {
                    continue;
                }
                acc = acc.add_ref(&mult.mul_ref(&p.mul_ref(akj)));
            }
            if !acc.is_zero() {
                out.set(r, c, acc.div_int(divisor));
            }
        }
    }
    out
}

/// Degree-`N` power by direct expansion of each `(Ax)^m` as a dense
/// homogeneous polynomial, one linear factor at a time.
pub fn bar_direct<T: Ring>(a: &Matrix<T>, degree: u32, guard: usize) -> Result<Matrix<T>> {
    let d = dimension_of(a)?;
    let table = IndexTable::with_guard(d, degree, guard)?;
    let tables: Vec<IndexTable> = (0..=degree)
        .map(|k| IndexTable::with_guard(d, k, guard))
        .collect::<Result<_>>()?;
    let nu = table.len();
    let mut out = Matrix::zeros(nu, nu);
    for (r, m) in table.iter().enumerate() {
        let mut poly = vec![T::one()];
        let mut level = 0usize;
        for i in 0..=d {
            for _ in 0..m.get(i) {
                let next_table = &tables[level + 1];
                let mut next = vec![T::zero(); next_table.len()];
                for (k, c) in poly.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let mono = tables[level].unrank(k).expect("rank in range");
                    for j in 0..=d {
                        let aij = a.get(i, j);
                        if aij.is_zero() {
                            continue;
                        }
                        let t = next_table.rank(&mono.raise(j)).expect("degree level+1");
                        next[t] = next[t].add_ref(&c.mul_ref(aij));
                    }
                }
                poly = next;
                level += 1;
            }
        }
        for (c, x) in poly.into_iter().enumerate() {
            out.set(r, c, x);
        }
    }
    Ok(out)
}

/// Diagonal matrix of multinomial coefficients `N!/m!` in dictionary order.
pub fn multinomial_diag<T: Ring>(dim: usize, degree: u32) -> Result<Matrix<T>> {
    multinomial_diag_guarded(dim, degree, DEFAULT_GUARD)
}

pub fn multinomial_diag_guarded<T: Ring>(dim: usize, degree: u32, guard: usize) -> Result<Matrix<T>> {
    let table = IndexTable::with_guard(dim, degree, guard)?;
    Ok(Matrix::diagonal(
        table
            .iter()
            .map(|m| T::from_integer(&BigInt::from(multinomial(m))))
            .collect(),
    ))
}

/// `Γ(g)` at degree `N`.
pub fn gamma<T: Ring>(g: &Matrix<T>, degree: u32) -> Result<Matrix<T>> {
    gamma_guarded(g, degree, DEFAULT_GUARD)
}

pub fn gamma_guarded<T: Ring>(g: &Matrix<T>, degree: u32, guard: usize) -> Result<Matrix<T>> {
    let d = dimension_of(g)?;
    let table = IndexTable::with_guard(d, degree, guard)?;
    let nu = table.len();
    let mut out: Matrix<T> = Matrix::zeros(nu, nu);
    for (r, m) in table.iter().enumerate() {
        for i in 0..=d {
            let mi = m.get(i);
            if mi == 0 {
                continue;
            }
            let mult = T::from_i64(i64::from(mi));
            for j in 0..=d {
                let gij = g.get(i, j);
                if gij.is_zero() {
                    continue;
                }
                let n = m.neighbor(i, j).expect("m_i > 0");
                let c = table.rank(&n).expect("same degree");
                let entry = out.get(r, c).add_ref(&mult.mul_ref(gij));
                out.set(r, c, entry);
            }
        }
    }
    Ok(out)
}

/// Trace of the degree-`N` symmetric power.
pub fn sym_trace<T: Ring>(a: &Matrix<T>, degree: u32) -> Result<T> {
    Ok(bar(a, degree)?.trace())
}

/// `B⁻¹ Āᵀ B` (or `B⁻¹ Ā* B`), which equals the power of `Aᵀ` (or `A*`).
pub fn transpose_conjugate_induced<T: Ring>(a: &Matrix<T>, degree: u32, mode: Conjugation) -> Result<Matrix<T>> {
    let d = dimension_of(a)?;
    let table = IndexTable::new(d, degree)?;
    let power = bar(a, degree)?;
    let flipped = match mode {
        Conjugation::Transpose => power.transpose(),
        Conjugation::Adjoint => power.adjoint(),
    };
    let weights: Vec<BigUint> = table.iter().map(multinomial).collect();
    Ok(Matrix::from_fn(table.len(), table.len(), |r, c| {
        flipped
            .get(r, c)
            .mul_ref(&T::from_integer(&BigInt::from(weights[c].clone())))
            .div_int(&weights[r])
    }))
}

/// The diagonal matrices `Λ_j = diag(column j of A)`, `j = 0..=d`.
pub fn column_diagonals<T: Ring>(a: &Matrix<T>) -> Result<Vec<Matrix<T>>> {
    dimension_of(a)?;
    Ok((0..a.cols()).map(|j| Matrix::diagonal(a.column(j))).collect())
}

/// A degree-`N` power together with its labels and multinomial diagonal.
#[derive(Clone, Debug)]
pub struct InducedDegree<T> {
    pub degree: u32,
    pub table: IndexTable,
    pub power: Matrix<T>,
    pub b: Matrix<T>,
}

impl<T: Ring> InducedDegree<T> {
    pub fn new(a: &Matrix<T>, degree: u32, guard: usize) -> Result<Self> {
        let d = dimension_of(a)?;
        let table = IndexTable::with_guard(d, degree, guard)?;
        Ok(Self {
            degree,
            power: bar_guarded(a, degree, guard)?,
            b: multinomial_diag_guarded(d, degree, guard)?,
            table,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::ExactMatrix;
    use crate::scalar::{GaussianRational, UniPoly};
    use crate::test_support::{random_matrix, rng};

    fn m(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_ints(rows)
    }

    #[test]
    fn bar_of_small_example() {
        let a = m(&[&[1, 3], &[2, 4]]);
        let expected = m(&[&[1, 6, 9], &[2, 10, 12], &[4, 16, 16]]);
        assert_eq!(bar(&a, 2).unwrap(), expected);
        assert_eq!(bar_direct(&a, 2, DEFAULT_GUARD).unwrap(), expected);
        assert_eq!(bar_incremental(&a, &a, 2).unwrap(), expected);
    }

    #[test]
    fn bar_low_degrees() {
        let a = m(&[&[1, 3], &[2, 4]]);
        assert_eq!(bar(&a, 0).unwrap(), ExactMatrix::identity(1));
        assert_eq!(bar(&a, 1).unwrap(), a);
        assert_eq!(bar_direct(&a, 0, DEFAULT_GUARD).unwrap(), ExactMatrix::identity(1));
        for d in 0..=3 {
            let nu = IndexTable::new(d, 3).unwrap().len();
            assert_eq!(
                bar(&ExactMatrix::identity(d + 1), 3).unwrap(),
                ExactMatrix::identity(nu)
            );
        }
    }

    #[test]
    fn incremental_chain_matches_direct() {
        let mut r = rng(7);
        for _ in 0..20 {
            let a = random_matrix(&mut r, 2, 5);
            let mut level = a.clone();
            for n in 2..=4 {
                level = bar_incremental(&a, &level, n).unwrap();
            }
            assert_eq!(level, bar_direct(&a, 4, DEFAULT_GUARD).unwrap());
        }
        let a = ExactMatrix::identity(2);
        assert_eq!(
            bar_incremental(&a, &ExactMatrix::identity(3), 3).unwrap(),
            ExactMatrix::identity(4)
        );
        assert!(bar_incremental(&a, &ExactMatrix::identity(2), 3).is_err());
    }

    #[test]
    fn multinomial_diagonals() {
        let b: ExactMatrix = multinomial_diag(1, 4).unwrap();
        assert_eq!(
            b,
            ExactMatrix::diagonal([1, 4, 6, 4, 1].map(GaussianRational::from).to_vec())
        );
        let b: ExactMatrix = multinomial_diag(2, 2).unwrap();
        assert_eq!(
            b.diagonal_entries(),
            [1, 2, 2, 1, 2, 1].map(GaussianRational::from).to_vec()
        );
        let b: ExactMatrix = multinomial_diag(5, 0).unwrap();
        assert_eq!(b, ExactMatrix::identity(1));
    }

    #[test]
    fn gamma_examples() {
        let x1 = m(&[&[0, -12], &[1, 7]]);
        assert_eq!(gamma(&x1, 2).unwrap(), m(&[&[0, -24, 0], &[1, 7, -12], &[0, 2, 14]]));
        assert!(gamma(&ExactMatrix::zeros(3, 3), 2).unwrap().is_zero());
        let v = m(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 3]]);
        assert_eq!(
            gamma(&v, 2).unwrap(),
            ExactMatrix::diagonal([2, 3, 4, 4, 5, 6].map(GaussianRational::from).to_vec())
        );
    }

    // Γ(V) for V = diag(v0, v1, v2) with v_k encoded as distinct powers of
    // one formal variable: v0 = 1, v1 = v, v2 = v^2.
    #[test]
    fn gamma_of_symbolic_diagonal() {
        let p = |c: &[i64]| UniPoly::from_ints(c);
        let v = Matrix::diagonal(vec![p(&[1]), p(&[0, 1]), p(&[0, 0, 1])]);
        let expected = Matrix::diagonal(vec![
            p(&[2]),
            p(&[1, 1]),
            p(&[1, 0, 1]),
            p(&[0, 2]),
            p(&[0, 1, 1]),
            p(&[0, 0, 2]),
        ]);
        assert_eq!(gamma(&v, 2).unwrap(), expected);
    }

    #[test]
    fn symmetric_trace_examples() {
        let v = m(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 3]]);
        assert_eq!(sym_trace(&v, 2).unwrap(), GaussianRational::from(25));
        assert_eq!(
            sym_trace(&ExactMatrix::identity(3), 2).unwrap(),
            GaussianRational::from(6)
        );
        assert_eq!(sym_trace(&m(&[&[5, 7], &[1, 2]]), 0).unwrap(), GaussianRational::one());
    }

    #[test]
    fn transpose_lemma_examples() {
        let a = m(&[&[1, 3], &[2, 4]]);
        let rhs = transpose_conjugate_induced(&a, 2, Conjugation::Transpose).unwrap();
        assert_eq!(rhs, bar(&a.transpose(), 2).unwrap());
        let s = m(&[&[2, 5], &[5, -1]]);
        assert_eq!(
            transpose_conjugate_induced(&s, 3, Conjugation::Transpose).unwrap(),
            bar(&s, 3).unwrap()
        );
        let g = |s: &str| s.parse::<GaussianRational>().unwrap();
        let c = ExactMatrix::from_rows(vec![vec![g("1"), g("8i")], vec![g("1"), g("-9/2i")]]).unwrap();
        assert_eq!(
            transpose_conjugate_induced(&c, 3, Conjugation::Adjoint).unwrap(),
            bar(&c.adjoint(), 3).unwrap()
        );
    }

    #[test]
    fn shape_and_capacity_errors() {
        let rect = ExactMatrix::zeros(2, 3);
        assert!(matches!(bar(&rect, 2), Err(Error::Shape(_))));
        assert!(matches!(gamma(&rect, 2), Err(Error::Shape(_))));
        let a = ExactMatrix::identity(3);
        // binom(4+2, 2) = 15
        assert!(bar_guarded(&a, 4, 15).is_ok());
        assert!(matches!(bar_guarded(&a, 4, 14), Err(Error::Capacity { .. })));
        assert!(matches!(gamma_guarded(&a, 4, 14), Err(Error::Capacity { .. })));
    }

    #[test]
    fn non_linearity_witness() {
        let x = m(&[&[1, 2], &[3, 4]]);
        let two = GaussianRational::from(2);
        let doubled = bar(&x.scale(&two), 2).unwrap();
        let barx = bar(&x, 2).unwrap();
        assert_eq!(doubled, barx.scale(&GaussianRational::from(4)));
        assert_ne!(doubled, barx.scale(&two));
    }
}
