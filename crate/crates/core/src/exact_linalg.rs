//! Exact integer and rational linear algebra.
//!
//! Matrices are generic over the integer scalar through [`num_integer::Integer`],
//! so the same code runs on machine words in tests and on [`crate::Int`] in
//! production paths. Provides Smith normal form with transformation matrices,
//! abelian quotients `Z^n / <relations>`, and an exact Fourier-Motzkin
//! feasibility solver used as a pointedness certificate for monomial counting.

use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::{Int, Rat};

/// Scalar bound for exact integer matrices.
pub trait MatScalar: num_integer::Integer + Signed + Clone + fmt::Debug {}
impl<T: num_integer::Integer + Signed + Clone + fmt::Debug> MatScalar for T {}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: expected vectors of length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("feasibility solver supports at most 8 variables, got {0}")]
    TooManyVariables(usize),
    #[error("matrix must be nonempty")]
    EmptyMatrix,
}

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix<T> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<T>,
}

impl<T: MatScalar> IntMatrix<T> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        assert!(!rows.is_empty(), "matrix must have at least one row");
        let cols = rows[0].len();
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "multiplication dimensions disagree");
        Self::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                acc = acc + self[(i, k)].clone() * other[(k, j)].clone();
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "multiplication dimensions disagree");
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for k in 0..self.cols {
                    acc = acc + self[(i, k)].clone() * v[k].clone();
                }
                acc
            })
            .collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            let ia = a * self.cols + j;
            let ib = b * self.cols + j;
            self.data.swap(ia, ib);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            let ia = i * self.cols + a;
            let ib = i * self.cols + b;
            self.data.swap(ia, ib);
        }
    }

    /// row[dst] += q * row[src]
    fn add_row_mul(&mut self, dst: usize, src: usize, q: &T) {
        for j in 0..self.cols {
            let v = self[(src, j)].clone() * q.clone();
            self[(dst, j)] = self[(dst, j)].clone() + v;
        }
    }

    fn add_col_mul(&mut self, dst: usize, src: usize, q: &T) {
        for i in 0..self.rows {
            let v = self[(i, src)].clone() * q.clone();
            self[(i, dst)] = self[(i, dst)].clone() + v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            self[(i, j)] = T::zero() - self[(i, j)].clone();
        }
    }
}

impl<T> std::ops::Index<(usize, usize)> for IntMatrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for IntMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Debug> fmt::Debug for IntMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| format!("{:?}", self.data[i * self.cols + j]))
                .collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Smith normal form `U * A * V = D` with `U`, `V` unimodular and `D`
/// diagonal with nonnegative entries satisfying `d1 | d2 | ...`.
#[derive(Clone, Debug)]
pub struct SnfResult<T> {
    pub u: IntMatrix<T>,
    pub d: IntMatrix<T>,
    pub v: IntMatrix<T>,
}

impl<T: MatScalar> SnfResult<T> {
    pub fn diagonal(&self) -> Vec<T> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

/// Computes the Smith normal form of a nonempty matrix.
///
/// Pivot choice is the minimal-absolute-value nonzero entry with ties
/// broken by lowest `(row, col)`, which makes the output deterministic.
pub fn snf<T: MatScalar>(a: &IntMatrix<T>) -> SnfResult<T> {
    assert!(a.rows > 0 && a.cols > 0, "snf requires a nonempty matrix");
    let mut d = a.clone();
    let mut u = IntMatrix::identity(a.rows);
    let mut v = IntMatrix::identity(a.cols);
    let t_max = d.rows.min(d.cols);

    for t in 0..t_max {
        'outer: loop {
            // minimal-|.|-value nonzero pivot in the trailing block
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..d.rows {
                for j in t..d.cols {
                    if !d[(i, j)].is_zero() {
                        let better = match &pivot {
                            None => true,
                            Some((pi, pj)) => d[(i, j)].abs() < d[(*pi, *pj)].abs(),
                        };
                        if better {
                            pivot = Some((i, j));
                        }
                    }
                }
            }
            let (pi, pj) = match pivot {
                Some(p) => p,
                None => return finish(u, d, v, t),
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            // clear column t below the pivot
            let mut dirty = false;
            for i in t + 1..d.rows {
                if !d[(i, t)].is_zero() {
                    let q = T::zero() - d[(i, t)].div_floor(&d[(t, t)]);
                    d.add_row_mul(i, t, &q);
                    u.add_row_mul(i, t, &q);
                    if !d[(i, t)].is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue 'outer;
            }
            // clear row t right of the pivot
            for j in t + 1..d.cols {
                if !d[(t, j)].is_zero() {
                    let q = T::zero() - d[(t, j)].div_floor(&d[(t, t)]);
                    d.add_col_mul(j, t, &q);
                    v.add_col_mul(j, t, &q);
                    if !d[(t, j)].is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue 'outer;
            }
            // enforce the divisibility chain: the pivot must divide every
            // entry of the trailing block
            for i in t + 1..d.rows {
                for j in t + 1..d.cols {
                    if !d[(i, j)].mod_floor(&d[(t, t)]).is_zero() {
                        let one = T::one();
                        d.add_row_mul(t, i, &one);
                        u.add_row_mul(t, i, &one);
                        continue 'outer;
                    }
                }
            }
            break;
        }
    }
    finish(u, d, v, t_max)
}

fn finish<T: MatScalar>(
    mut u: IntMatrix<T>,
    mut d: IntMatrix<T>,
    v: IntMatrix<T>,
    _done: usize,
) -> SnfResult<T> {
    for t in 0..d.rows.min(d.cols) {
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SnfResult { u, d, v }
}

/// Invariants of a finitely generated abelian group: free rank plus the
/// nontrivial torsion coefficients in divisibility order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupInvariants {
    pub rank: usize,
    pub torsion: Vec<Int>,
}

impl fmt::Display for GroupInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for _ in 0..self.rank {
            parts.push("Z".into());
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}Z"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Invariants of `Z^ambient_rank` modulo the subgroup generated by the
/// given relation vectors.
pub fn abelian_quotient(
    ambient_rank: usize,
    relations: &[Vec<Int>],
) -> Result<GroupInvariants, LinalgError> {
    assert!(ambient_rank > 0);
    for r in relations {
        if r.len() != ambient_rank {
            return Err(LinalgError::DimensionMismatch {
                expected: ambient_rank,
                got: r.len(),
            });
        }
    }
    if relations.is_empty() {
        return Ok(GroupInvariants {
            rank: ambient_rank,
            torsion: vec![],
        });
    }
    let m = IntMatrix::from_rows(relations.to_vec());
    let s = snf(&m);
    let diag = s.diagonal();
    let rel_rank = diag.iter().filter(|d| !d.is_zero()).count();
    let torsion: Vec<Int> = diag
        .into_iter()
        .filter(|d| !d.is_zero() && !d.is_one())
        .collect();
    Ok(GroupInvariants {
        rank: ambient_rank - rel_rank,
        torsion,
    })
}

// ---------------------------------------------------------------------------
// Exact rational elimination helpers shared with the cone machinery.
// ---------------------------------------------------------------------------

pub mod ratlin {
    //! Small exact linear algebra over the rationals: reduced row echelon
    //! form, rank, kernels, and linear solves. Sizes here are tiny (ambient
    //! dimension 4), so plain Gaussian elimination is the right tool.

    use num_traits::Zero;

    use crate::{Int, Rat};

    /// Reduced row echelon form; returns the reduced rows and pivot columns.
    pub fn rref(rows: &[Vec<Rat>]) -> (Vec<Vec<Rat>>, Vec<usize>) {
        let mut m: Vec<Vec<Rat>> = rows.to_vec();
        let ncols = m.first().map_or(0, |r| r.len());
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..ncols {
            let Some(p) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else {
                continue;
            };
            m.swap(row, p);
            let inv = m[row][col].recip();
            for x in m[row].iter_mut() {
                *x = &*x * &inv;
            }
            let pivot_row = m[row].clone();
            for (i, other) in m.iter_mut().enumerate() {
                if i != row && !other[col].is_zero() {
                    let f = other[col].clone();
                    for (x, p) in other.iter_mut().zip(&pivot_row) {
                        let sub = p * &f;
                        *x = &*x - &sub;
                    }
                }
            }
            pivots.push(col);
            row += 1;
            if row == m.len() {
                break;
            }
        }
        m.truncate(row);
        (m, pivots)
    }

    pub fn rank(rows: &[Vec<Rat>]) -> usize {
        rref(rows).1.len()
    }

    pub fn rank_int(rows: &[Vec<Int>]) -> usize {
        rank(&rows.iter().map(|r| to_rat(r)).collect::<Vec<_>>())
    }

    pub fn to_rat(v: &[Int]) -> Vec<Rat> {
        v.iter().map(|x| Rat::from(x.clone())).collect()
    }

    /// Basis of the right kernel `{x : rows * x = 0}`.
    pub fn kernel_basis(rows: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
        let (r, pivots) = rref(rows);
        let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::new();
        for &f in &free {
            let mut v = vec![Rat::zero(); ncols];
            v[f] = Rat::from(Int::from(1));
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r[i][f].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Is `v` in the row span of `rows`?
    pub fn in_span(rows: &[Vec<Rat>], v: &[Rat]) -> bool {
        let base = rank(rows);
        let mut ext = rows.to_vec();
        ext.push(v.to_vec());
        rank(&ext) == base
    }

    /// One exact solution of `A x = b` (free variables set to zero), if any.
    pub fn solve(a_rows: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
        let ncols = a_rows.first().map_or(0, |r| r.len());
        let aug: Vec<Vec<Rat>> = a_rows
            .iter()
            .zip(b)
            .map(|(r, bi)| {
                let mut row = r.clone();
                row.push(bi.clone());
                row
            })
            .collect();
        let (r, pivots) = rref(&aug);
        // inconsistent if a pivot lands in the augmented column
        if pivots.contains(&ncols) {
            return None;
        }
        let mut x = vec![Rat::zero(); ncols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r[i][ncols].clone();
        }
        Some(x)
    }
}

// ---------------------------------------------------------------------------
// Strict feasibility by exact Fourier-Motzkin elimination.
// ---------------------------------------------------------------------------

/// A linear constraint `coeffs . x >= rhs`.
#[derive(Clone, Debug)]
struct Constraint {
    coeffs: Vec<Rat>,
    rhs: Rat,
}

/// Finds a rational `phi` with `phi . v > 0` for every input vector, or
/// `None` when no such functional exists. Exact throughout; rejects more
/// than 8 variables.
pub fn strict_positive_functional(
    vectors: &[Vec<Int>],
) -> Result<Option<Vec<Rat>>, LinalgError> {
    let Some(first) = vectors.first() else {
        return Ok(Some(vec![]));
    };
    let dim = first.len();
    if dim > 8 {
        return Err(LinalgError::TooManyVariables(dim));
    }
    for v in vectors {
        if v.len() != dim {
            return Err(LinalgError::DimensionMismatch {
                expected: dim,
                got: v.len(),
            });
        }
    }
    if vectors.iter().any(|v| v.iter().all(|x| x.is_zero())) {
        return Ok(None); // the zero vector admits no strict functional
    }
    // By homogeneity, phi.v > 0 for all v is equivalent to phi.v >= 1.
    let one = Rat::from(Int::from(1));
    let initial: Vec<Constraint> = vectors
        .iter()
        .map(|v| Constraint {
            coeffs: ratlin::to_rat(v),
            rhs: one.clone(),
        })
        .collect();

    // stages[k] involves only variables 0..=k
    let mut stages: Vec<Vec<Constraint>> = Vec::with_capacity(dim);
    let mut current = initial;
    let mut ground: Vec<Constraint> = Vec::new();
    for k in (0..dim).rev() {
        stages.push(current.clone());
        let next = eliminate(&current, k);
        if k == 0 {
            ground = next;
        } else {
            current = next;
        }
    }
    stages.reverse(); // stages[k] now involves variables 0..=k

    // feasible iff every variable-free constraint reads 0 >= rhs with rhs <= 0
    if ground.iter().any(|c| c.rhs > Rat::zero()) {
        return Ok(None);
    }

    let mut phi = vec![Rat::zero(); dim];
    for k in 0..dim {
        let (mut lower, mut upper): (Option<Rat>, Option<Rat>) = (None, None);
        for c in &stages[k] {
            if c.coeffs[k].is_zero() {
                continue;
            }
            let mut rest = c.rhs.clone();
            for (cj, pj) in c.coeffs.iter().zip(&phi).take(k) {
                let t = cj * pj;
                rest = &rest - &t;
            }
            let bound = &rest / &c.coeffs[k];
            if c.coeffs[k] > Rat::zero() {
                lower = Some(match lower {
                    Some(l) if l >= bound => l,
                    _ => bound,
                });
            } else {
                upper = Some(match upper {
                    Some(u) if u <= bound => u,
                    _ => bound,
                });
            }
        }
        phi[k] = match (lower, upper) {
            (Some(l), Some(u)) => (&l + &u) / Rat::from(Int::from(2)),
            (Some(l), None) => &l + &one,
            (None, Some(u)) => &u - &one,
            (None, None) => Rat::zero(),
        };
    }
    debug_assert!(vectors.iter().all(|v| {
        let mut acc = Rat::zero();
        for (p, x) in phi.iter().zip(v) {
            acc = &acc + &(p * &Rat::from(x.clone()));
        }
        acc > Rat::zero()
    }));
    Ok(Some(phi))
}

/// Fourier-Motzkin elimination of variable `k`.
fn eliminate(constraints: &[Constraint], k: usize) -> Vec<Constraint> {
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    let mut out = Vec::new();
    for c in constraints {
        if c.coeffs[k] > Rat::zero() {
            pos.push(c);
        } else if c.coeffs[k] < Rat::zero() {
            neg.push(c);
        } else {
            out.push(c.clone());
        }
    }
    for p in &pos {
        for n in &neg {
            // scale so the k-coefficients cancel
            let a = p.coeffs[k].clone();
            let b = -n.coeffs[k].clone();
            let coeffs: Vec<Rat> = p
                .coeffs
                .iter()
                .zip(&n.coeffs)
                .map(|(pc, nc)| &(pc * &b) + &(nc * &a))
                .collect();
            let rhs = &(&p.rhs * &b) + &(&n.rhs * &a);
            out.push(Constraint { coeffs, rhs });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int;
    use num_integer::Integer as _;

    fn imat(rows: &[&[i64]]) -> IntMatrix<Int> {
        IntMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect(),
        )
    }

    fn check_contract(a: &IntMatrix<Int>) {
        let s = snf(a);
        // U A V = D
        assert_eq!(s.u.mul(a).mul(&s.v), s.d, "UAV != D");
        // D diagonal, nonnegative, divisibility chain
        for i in 0..s.d.rows {
            for j in 0..s.d.cols {
                if i != j {
                    assert!(s.d[(i, j)].is_zero(), "off-diagonal entry");
                }
            }
        }
        let diag = s.diagonal();
        for w in diag.windows(2) {
            assert!(!w[0].is_negative());
            if !w[0].is_zero() {
                assert!(w[1].mod_floor(&w[0]).is_zero(), "divisibility broken");
            } else {
                assert!(w[1].is_zero(), "zero before nonzero in diagonal");
            }
        }
        // unimodularity
        assert!(det(&s.u).abs().is_one(), "U not unimodular");
        assert!(det(&s.v).abs().is_one(), "V not unimodular");
    }

    /// Cofactor-expansion determinant; test-only oracle.
    fn det(m: &IntMatrix<Int>) -> Int {
        assert_eq!(m.rows, m.cols);
        if m.rows == 1 {
            return m[(0, 0)].clone();
        }
        let mut acc = Int::from(0);
        for j in 0..m.cols {
            if m[(0, j)].is_zero() {
                continue;
            }
            let minor = IntMatrix::from_fn(m.rows - 1, m.cols - 1, |i, jj| {
                m[(i + 1, if jj < j { jj } else { jj + 1 })].clone()
            });
            let term = m[(0, j)].clone() * det(&minor);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    #[test]
    fn snf_identity() {
        let a = IntMatrix::<Int>::identity(3);
        let s = snf(&a);
        assert_eq!(s.d, a);
        assert_eq!(s.u, a);
        assert_eq!(s.v, a);
    }

    #[test]
    fn snf_diag_4_6() {
        let a = imat(&[&[4, 0], &[0, 6]]);
        let s = snf(&a);
        assert_eq!(s.diagonal(), vec![int(2), int(12)]);
        check_contract(&a);
    }

    #[test]
    fn snf_xs2_relations() {
        // |det| = 2 by cofactor expansion; the Z/2Z entry of the catalog
        let a = imat(&[
            &[1, -1, -1, -1],
            &[0, 0, 0, 1],
            &[1, -3, 0, 0],
            &[0, 0, 1, -1],
        ]);
        let s = snf(&a);
        assert_eq!(s.diagonal(), vec![int(1), int(1), int(1), int(2)]);
        check_contract(&a);
    }

    #[test]
    fn quotient_rank_two() {
        let g = abelian_quotient(
            4,
            &[
                vec![int(1), int(-1), int(-1), int(-1)],
                vec![int(0), int(0), int(0), int(1)],
            ],
        )
        .unwrap();
        assert_eq!(g.rank, 2);
        assert!(g.torsion.is_empty());
    }

    #[test]
    fn quotient_no_relations() {
        let g = abelian_quotient(4, &[]).unwrap();
        assert_eq!(g.rank, 4);
    }

    #[test]
    fn quotient_z3() {
        let g = abelian_quotient(
            4,
            &[
                vec![int(1), int(-1), int(-1), int(-1)],
                vec![int(0), int(0), int(0), int(1)],
                vec![int(1), int(-3), int(0), int(0)],
                vec![int(1), int(0), int(-3), int(0)],
            ],
        )
        .unwrap();
        assert_eq!(g.rank, 0);
        assert_eq!(g.torsion, vec![int(3)]);
    }

    #[test]
    fn quotient_dimension_mismatch() {
        let err = abelian_quotient(4, &[vec![int(1), int(2)]]);
        assert!(err.is_err());
    }

    #[test]
    fn quotient_invariant_under_row_ops() {
        let rels = vec![
            vec![int(1), int(-1), int(-1), int(-1)],
            vec![int(0), int(0), int(0), int(1)],
            vec![int(1), int(-3), int(0), int(0)],
        ];
        let base = abelian_quotient(4, &rels).unwrap();
        // append an integer combination of existing relations
        let combo: Vec<Int> = (0..4)
            .map(|j| rels[0][j].clone() * int(2) - rels[2][j].clone() * int(5))
            .collect();
        let mut ext = rels.clone();
        ext.push(combo);
        assert_eq!(abelian_quotient(4, &ext).unwrap(), base);
        // swap and negate rows
        let mut swapped = rels.clone();
        swapped.swap(0, 2);
        swapped[1] = swapped[1].iter().map(|x| -x.clone()).collect();
        assert_eq!(abelian_quotient(4, &swapped).unwrap(), base);
    }

    #[test]
    fn functional_simple() {
        let phi = strict_positive_functional(&[
            vec![int(1), int(0)],
            vec![int(0), int(1)],
        ])
        .unwrap()
        .expect("feasible");
        assert!(phi[0] > Rat::zero() && phi[1] > Rat::zero());
    }

    #[test]
    fn functional_opposite_vectors() {
        let r = strict_positive_functional(&[
            vec![int(1), int(0)],
            vec![int(-1), int(0)],
        ])
        .unwrap();
        assert!(r.is_none());
    }

    #[test]
    fn functional_rejects_many_variables() {
        let v = vec![vec![int(1); 9]];
        assert_eq!(
            strict_positive_functional(&v),
            Err(LinalgError::TooManyVariables(9))
        );
    }

    /// Brute-force oracle in dimension <= 3: a strict functional exists iff
    /// 0 is not a convex combination of the inputs (Caratheodory: subsets of
    /// size <= dim + 1 suffice).
    fn zero_in_hull(vectors: &[Vec<Int>]) -> bool {
        use super::ratlin;
        let dim = vectors[0].len();
        let n = vectors.len();
        let idx: Vec<usize> = (0..n).collect();
        for size in 1..=(dim + 1).min(n) {
            for subset in combinations(&idx, size) {
                // solve sum l_i v_i = 0, sum l_i = 1, l_i >= 0
                let mut rows: Vec<Vec<Rat>> = (0..dim)
                    .map(|d| {
                        subset
                            .iter()
                            .map(|&i| Rat::from(vectors[i][d].clone()))
                            .collect()
                    })
                    .collect();
                rows.push(vec![Rat::from(int(1)); size]);
                let mut b = vec![Rat::zero(); dim];
                b.push(Rat::from(int(1)));
                if let Some(sol) = ratlin::solve(&rows, &b) {
                    if sol.iter().all(|l| *l >= Rat::zero()) {
                        return true;
                    }
                }
            }
        }
        false
    }

    fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for (i, &x) in items.iter().enumerate() {
            for mut rest in combinations(&items[i + 1..], k - 1) {
                rest.insert(0, x);
                out.push(rest);
            }
        }
        out
    }

    #[test]
    fn functional_matches_hull_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for dim in 2..=3usize {
            for _ in 0..200 {
                let n = rng.gen_range(1..=5);
                let vectors: Vec<Vec<Int>> = (0..n)
                    .map(|_| (0..dim).map(|_| int(rng.gen_range(-3..=3))).collect())
                    .collect();
                if vectors.iter().any(|v| v.iter().all(|x| x.is_zero())) {
                    continue; // zero vector: functional impossible, hull trivially contains 0
                }
                let feasible = strict_positive_functional(&vectors).unwrap().is_some();
                assert_eq!(
                    feasible,
                    !zero_in_hull(&vectors),
                    "disagreement on {vectors:?}"
                );
            }
        }
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(1000))]
        #[test]
        fn snf_contract_random(
            rows in 1usize..5,
            cols in 1usize..5,
            seed in proptest::prelude::any::<u64>(),
        ) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let a = IntMatrix::from_fn(rows, cols, |_, _| int(rng.gen_range(-9..=9)));
            check_contract(&a);
        }
    }
}
