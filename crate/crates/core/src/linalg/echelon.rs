//! Gauss–Jordan elimination and everything built directly on it: rank,
//! kernels, images, inverses, canonical subspaces and coordinates.

use num_rational::BigRational;

use crate::scalar::{GaussInt, GaussScalar, ScaledInts};

use super::mat::{axpy, is_zero_vec, unit_vec, zero_vec, Mat, Vector};

/// Reduced row echelon form together with the pivot columns.
pub fn rref(m: &Mat) -> (Mat, Vec<usize>) {
    let mut rows = m.row_vecs();
    let pivots = rref_rows(&mut rows, m.cols());
    let reduced = if rows.is_empty() {
        Mat::zeros(0, m.cols())
    } else {
        Mat::from_rows(rows)
    };
    (reduced, pivots)
}

/// In-place Gauss–Jordan on a list of rows of width `cols`. Returns the
/// pivot columns; rows past the rank are left zero in the first `cols`
/// entries.
fn rref_rows(rows: &mut [Vector], cols: usize) -> Vec<usize> {
    let mut ints: Vec<Vec<GaussInt>> = rows.iter().map(|r| integer_row(r)).collect();
    let ff = fraction_free(&mut ints, cols);
    let (d_re, d_im) = (&ff.last_pivot.re, &ff.last_pivot.im);
    let norm = ff.last_pivot.norm();
    for (row, int_row) in rows.iter_mut().zip(ints) {
        for (x, z) in row.iter_mut().zip(int_row) {
            *x = if z.is_zero() {
                GaussScalar::zero()
            } else {
                // z / d = z·conj(d) / |d|²
                let re = &z.re * d_re + &z.im * d_im;
                let im = &z.im * d_re - &z.re * d_im;
                GaussScalar::new(
                    BigRational::new(re, norm.clone()),
                    BigRational::new(im, norm.clone()),
                )
            };
        }
    }
    ff.pivots
}

fn integer_row(row: &[GaussScalar]) -> Vec<GaussInt> {
    ScaledInts::new(row).ints
}

struct FractionFree {
    pivots: Vec<usize>,
    last_pivot: GaussInt,
    swaps: usize,
}

/// Fraction-free Gauss–Jordan over Z[i]. Every surviving entry is a minor of
/// the input, so each division by the previous pivot is exact; on return
/// all pivot entries equal `last_pivot`.
fn fraction_free(rows: &mut [Vec<GaussInt>], cols: usize) -> FractionFree {
    let mut pivots = Vec::new();
    let mut prev = GaussInt::one();
    let mut swaps = 0;
    let mut r = 0;
    let one = GaussInt::one();
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            rows.swap(r, p);
            swaps += 1;
        }
        let piv = rows[r][c].clone();
        let (head, tail) = rows.split_at_mut(r);
        let (pivot_row, below) = tail.split_first_mut().expect("row r exists");
        for row in head.iter_mut().chain(below.iter_mut()) {
            let a = row[c].clone();
            for (x, y) in row.iter_mut().zip(pivot_row.iter()) {
                if x.is_zero() && (a.is_zero() || y.is_zero()) {
                    continue;
                }
                let mut v = piv.mul(x);
                if !a.is_zero() && !y.is_zero() {
                    let t = a.mul(y);
                    v = GaussInt::new(&v.re - &t.re, &v.im - &t.im);
                }
                *x = if prev == one {
                    v
                } else {
                    v.div_exact(&prev).expect("fraction-free division is exact")
                };
            }
        }
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    FractionFree {
        pivots,
        last_pivot: prev,
        swaps,
    }
}

/// Rank, kernel basis and image basis of a matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelImage {
    pub rank: usize,
    /// Canonical kernel basis: one vector per free column.
    pub kernel: Vec<Vector>,
    /// Reduced echelon basis of the column space.
    pub image: Vec<Vector>,
}

pub fn rank_kernel_image(m: &Mat) -> KernelImage {
    let (reduced, pivots) = rref(m);
    let kernel = kernel_from_rref(&reduced, &pivots, m.cols());
    let image = echelon_basis(m.rows(), &m.col_vecs());
    debug_assert_eq!(image.len(), pivots.len());
    KernelImage {
        rank: pivots.len(),
        kernel,
        image,
    }
}

pub fn rank(m: &Mat) -> usize {
    rref(m).1.len()
}

pub fn kernel(m: &Mat) -> Vec<Vector> {
    let (reduced, pivots) = rref(m);
    kernel_from_rref(&reduced, &pivots, m.cols())
}

fn kernel_from_rref(reduced: &Mat, pivots: &[usize], cols: usize) -> Vec<Vector> {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = unit_vec(cols, f);
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -reduced[(r, f)].clone();
            }
            v
        })
        .collect()
}

/// Ranks of `m^0, m^1, …` up to the first repeat, with the kernel and
/// image of the stable power.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerChain {
    pub ranks: Vec<usize>,
    pub stable_kernel: Vec<Vector>,
    pub stable_image: Vec<Vector>,
}

/// Walks the row spaces and column spaces of the powers of a square matrix,
/// re-reducing at each step instead of forming the powers.
pub fn power_chain(m: &Mat) -> PowerChain {
    assert!(m.is_square());
    let n = m.rows();
    let mt = m.transpose();
    let mut rows: Vec<Vector> = (0..n).map(|i| unit_vec(n, i)).collect();
    let mut cols = rows.clone();
    let mut ranks = vec![n];
    while !rows.is_empty() {
        let next = echelon_basis(n, &rows.iter().map(|r| mt.mul_vec(r)).collect::<Vec<_>>());
        if next.len() == rows.len() {
            break;
        }
        cols = echelon_basis(n, &cols.iter().map(|c| m.mul_vec(c)).collect::<Vec<_>>());
        rows = next;
        ranks.push(rows.len());
    }
    let stable_kernel = if rows.is_empty() {
        (0..n).map(|i| unit_vec(n, i)).collect()
    } else {
        kernel(&Mat::from_rows(rows))
    };
    PowerChain {
        ranks,
        stable_kernel,
        stable_image: cols,
    }
}

/// Reduced echelon basis of the span of `vectors` (all of length `n`).
pub fn echelon_basis(n: usize, vectors: &[Vector]) -> Vec<Vector> {
    let mut rows: Vec<Vector> = vectors
        .iter()
        .filter(|v| !is_zero_vec(v))
        .cloned()
        .collect();
    let rank = rref_rows(&mut rows, n).len();
    rows.truncate(rank);
    rows
}

pub fn inverse(m: &Mat) -> Option<Mat> {
    if !m.is_square() {
        return None;
    }
    let n = m.rows();
    let mut rows: Vec<Vector> = (0..n)
        .map(|i| {
            let mut r = m.row(i).to_vec();
            r.extend(unit_vec(n, i));
            r
        })
        .collect();
    let pivots = rref_rows(&mut rows, n);
    if pivots.len() < n {
        return None;
    }
    Some(Mat::from_rows(
        rows.into_iter().map(|r| r[n..].to_vec()).collect(),
    ))
}

/// Determinant by fraction-free elimination.
pub fn det(m: &Mat) -> GaussScalar {
    assert!(m.is_square());
    let n = m.rows();
    if n == 0 {
        return GaussScalar::one();
    }
    let mut scale = GaussScalar::one();
    let mut ints = Vec::with_capacity(n);
    for row in m.row_vecs() {
        let int_row = integer_row(&row);
        let k = row.iter().position(|x| !x.is_zero());
        if let Some(k) = k {
            // integer_row multiplied the row by int_row[k] / row[k].
            let z = &int_row[k];
            scale = &scale * &(&row[k] / &GaussScalar::from_gauss_int(z));
        }
        ints.push(int_row);
    }
    let ff = fraction_free(&mut ints, n);
    if ff.pivots.len() < n {
        return GaussScalar::zero();
    }
    let d = &GaussScalar::from_gauss_int(&ff.last_pivot) * &scale;
    if ff.swaps % 2 == 1 {
        -d
    } else {
        d
    }
}

/// A subspace of `Q(i)^n` stored by its reduced echelon basis, so derived
/// equality is subspace equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>,
}

impl Subspace {
    pub fn span(ambient: usize, vectors: &[Vector]) -> Self {
        Subspace {
            ambient,
            basis: echelon_basis(ambient, vectors),
        }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: (0..ambient).map(|k| unit_vec(ambient, k)).collect(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn contains(&self, v: &[GaussScalar]) -> bool {
        let mut all = self.basis.clone();
        all.push(v.to_vec());
        echelon_basis(self.ambient, &all).len() == self.basis.len()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        self.sum(other).dim() == self.dim()
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient, &all)
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        // Solve Σ aᵢ uᵢ = Σ bⱼ wⱼ.
        let (p, q) = (self.dim(), other.dim());
        if p == 0 || q == 0 {
            return Subspace::zero(self.ambient);
        }
        let mut cols = self.basis.clone();
        cols.extend(
            other
                .basis
                .iter()
                .map(|w| w.iter().map(|x| -x.clone()).collect()),
        );
        let m = Mat::from_cols(self.ambient, &cols);
        let vecs: Vec<Vector> = kernel(&m)
            .into_iter()
            .map(|k| {
                let mut v = zero_vec(self.ambient);
                for (a, u) in k[..p].iter().zip(&self.basis) {
                    axpy(&mut v, a, u);
                }
                v
            })
            .collect();
        Subspace::span(self.ambient, &vecs)
    }
}

/// Coordinates with respect to a fixed linearly independent family.
#[derive(Debug, Clone)]
pub struct Coordinates {
    basis: Vec<Vector>,
    pivot_rows: Vec<usize>,
    inverse: Mat,
}

impl Coordinates {
    /// Returns `None` if the family is linearly dependent.
    pub fn new(ambient: usize, basis: &[Vector]) -> Option<Self> {
        let m = basis.len();
        if m == 0 {
            return Some(Coordinates {
                basis: Vec::new(),
                pivot_rows: Vec::new(),
                inverse: Mat::zeros(0, 0),
            });
        }
        let cols = Mat::from_cols(ambient, basis);
        // Independent rows of `cols` are the pivot columns of its transpose.
        let (_, pivot_rows) = rref(&cols.transpose());
        if pivot_rows.len() < m {
            return None;
        }
        let all_cols: Vec<usize> = (0..m).collect();
        let inverse = inverse(&cols.select(&pivot_rows, &all_cols))?;
        Some(Coordinates {
            basis: basis.to_vec(),
            pivot_rows,
            inverse,
        })
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Coordinates of `v`, or `None` when `v` is outside the span.
    pub fn coords(&self, v: &[GaussScalar]) -> Option<Vector> {
        let sub: Vector = self.pivot_rows.iter().map(|&i| v[i].clone()).collect();
        let c = self.inverse.mul_vec(&sub);
        let mut back = zero_vec(v.len());
        for (a, b) in c.iter().zip(&self.basis) {
            axpy(&mut back, a, b);
        }
        (back.as_slice() == v).then_some(c)
    }
}

/// Row reduction fed one equation at a time; keeps only independent rows,
/// fully reduced, so the final kernel is cheap even for thousands of
/// redundant equations.
#[derive(Debug, Clone)]
pub struct IncrementalEchelon {
    cols: usize,
    rows: Vec<(usize, Vector)>,
}

impl IncrementalEchelon {
    pub fn new(cols: usize) -> Self {
        IncrementalEchelon {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds an equation; returns whether it raised the rank.
    pub fn push(&mut self, mut row: Vector) -> bool {
        assert_eq!(row.len(), self.cols);
        for (p, r) in &self.rows {
            if !row[*p].is_zero() {
                let f = -row[*p].clone();
                axpy(&mut row, &f, r);
            }
        }
        let Some(p) = row.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = row[p].inv().expect("nonzero");
        for x in row.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        for (_, r) in self.rows.iter_mut() {
            if !r[p].is_zero() {
                let f = -r[p].clone();
                axpy(r, &f, &row);
            }
        }
        self.rows.push((p, row));
        true
    }

    pub fn kernel(&self) -> Vec<Vector> {
        let mut sorted = self.rows.clone();
        sorted.sort_by_key(|(p, _)| *p);
        let pivots: Vec<usize> = sorted.iter().map(|(p, _)| *p).collect();
        let reduced = if sorted.is_empty() {
            Mat::zeros(0, self.cols)
        } else {
            Mat::from_rows(sorted.into_iter().map(|(_, r)| r).collect())
        };
        kernel_from_rref(&reduced, &pivots, self.cols)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn jordan(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for k in 0..n - 1 {
            m[(k, k + 1)] = GaussScalar::one();
        }
        m
    }

    #[test]
    fn identity_rank() {
        let ki = rank_kernel_image(&Mat::identity(2));
        assert_eq!(ki.rank, 2);
        assert!(ki.kernel.is_empty());
        assert_eq!(ki.image, vec![unit_vec(2, 0), unit_vec(2, 1)]);
    }

    #[test]
    fn jordan_block_rank() {
        let ki = rank_kernel_image(&jordan(3));
        assert_eq!(ki.rank, 2);
        assert_eq!(ki.kernel, vec![unit_vec(3, 0)]);
    }

    #[test]
    fn zero_matrix_rank() {
        let ki = rank_kernel_image(&Mat::zeros(3, 3));
        assert_eq!(ki.rank, 0);
        assert_eq!(ki.kernel.len(), 3);
        assert!(ki.image.is_empty());
    }

    #[test]
    fn inverse_and_det() {
        let m = Mat::from_ints(&[&[2, 1], &[7, 4]]);
        let inv = inverse(&m).unwrap();
        assert_eq!(m.mul(&inv), Mat::identity(2));
        assert_eq!(det(&m), GaussScalar::one());
        assert!(inverse(&jordan(3)).is_none());
    }

    #[test]
    fn subspace_ops() {
        let a = Subspace::span(3, &[unit_vec(3, 0), unit_vec(3, 1)]);
        let b = Subspace::span(3, &[unit_vec(3, 1), unit_vec(3, 2)]);
        assert_eq!(a.intersect(&b), Subspace::span(3, &[unit_vec(3, 1)]));
        assert_eq!(a.sum(&b), Subspace::full(3));
        assert!(a.contains(&unit_vec(3, 0)));
        assert!(!a.contains(&unit_vec(3, 2)));
    }

    #[test]
    fn coordinates_in_isotropic_basis() {
        let i = GaussScalar::i();
        let one = GaussScalar::one();
        let v1 = vec![one.clone(), i.clone(), GaussScalar::zero()];
        let v2 = vec![GaussScalar::zero(), one.clone(), one.clone()];
        let c = Coordinates::new(3, &[v1.clone(), v2.clone()]).unwrap();
        let target: Vector = v1
            .iter()
            .zip(&v2)
            .map(|(a, b)| &(a * &GaussScalar::from_int(3)) - b)
            .collect();
        assert_eq!(
            c.coords(&target).unwrap(),
            vec![GaussScalar::from_int(3), GaussScalar::from_int(-1)]
        );
        assert!(c.coords(&unit_vec(3, 2)).is_none());
    }

    #[test]
    fn incremental_matches_batch() {
        let m = Mat::from_ints(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0], &[1, 3, 4, 4]]);
        let mut inc = IncrementalEchelon::new(4);
        for r in m.row_vecs() {
            inc.push(r);
        }
        assert_eq!(inc.rank(), rank(&m));
        assert_eq!(
            Subspace::span(4, &inc.kernel()),
            Subspace::span(4, &kernel(&m))
        );
    }
}
