//! Dense exact linear algebra over F_{p^k}: row reduction, kernels, solving,
//! subspace calculus, and characteristic polynomials.

use crate::field::{Field, FieldElement};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zero(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn from_fn(
        field: &Field,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> FieldElement,
    ) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<FieldElement>>) -> Matrix {
        let nr = rows.len();
        let nc = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(nr * nc);
        for r in rows {
            assert_eq!(r.len(), nc, "ragged rows");
            data.extend(r);
        }
        Matrix {
            field: field.clone(),
            rows: nr,
            cols: nc,
            data,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    if r == c {
                        self[(r, c)].is_one()
                    } else {
                        self[(r, c)].is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.field, self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zero(&self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if b.is_zero() {
                        continue;
                    }
                    out[(r, c)] = &out[(r, c)] + &(a * b);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(&self.field, self.rows, self.cols, |r, c| {
            &self[(r, c)] + &other[(r, c)]
        })
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(&self.field, self.rows, self.cols, |r, c| {
            &self[(r, c)] - &other[(r, c)]
        })
    }

    pub fn scale(&self, s: &FieldElement) -> Matrix {
        Matrix::from_fn(&self.field, self.rows, self.cols, |r, c| &self[(r, c)] * s)
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        assert_eq!(self.rows, self.cols);
        let mut result = Matrix::identity(&self.field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        result
    }

    pub fn apply(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        let mut out = vec![self.field.zero(); self.rows];
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for r in 0..self.rows {
                let a = &self[(r, c)];
                if !a.is_zero() {
                    out[r] = &out[r] + &(a * x);
                }
            }
        }
        out
    }

    pub fn trace(&self) -> FieldElement {
        assert_eq!(self.rows, self.cols);
        let mut t = self.field.zero();
        for i in 0..self.rows {
            t = &t + &self[(i, i)];
        }
        t
    }

    /// Reduced row echelon form with pivot column list.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row >= m.rows {
                break;
            }
            let pivot_row = (row..m.rows).find(|&r| !m[(r, col)].is_zero());
            let Some(pr) = pivot_row else { continue };
            m.swap_rows(row, pr);
            let inv = m[(row, col)].inv().expect("pivot nonzero");
            for c in col..m.cols {
                m[(row, c)] = &m[(row, c)] * &inv;
            }
            for r in 0..m.rows {
                if r != row && !m[(r, col)].is_zero() {
                    let factor = m[(r, col)].clone();
                    for c in col..m.cols {
                        let sub = &m[(row, c)] * &factor;
                        m[(r, c)] = &m[(r, c)] - &sub;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Kernel {v : Mv = 0} as an echelonized subspace of the column space.
    pub fn kernel(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::new();
        for &fc in &free {
            let mut v = vec![self.field.zero(); self.cols];
            v[fc] = self.field.one();
            for (prow, &pcol) in pivots.iter().enumerate() {
                v[pcol] = -&r[(prow, fc)];
            }
            basis.push(v);
        }
        Subspace::from_spanning(&self.field, self.cols, basis)
    }

    /// One solution of Mx = b, or None when inconsistent.
    pub fn solve(&self, b: &[FieldElement]) -> Option<Vec<FieldElement>> {
        assert_eq!(b.len(), self.rows, "dimension mismatch in solve");
        let mut aug = Matrix::zero(&self.field, self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, self.cols)] = b[r].clone();
        }
        let (red, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // pivot in the constant column
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (prow, &pcol) in pivots.iter().enumerate() {
            x[pcol] = red[(prow, self.cols)].clone();
        }
        Some(x)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Characteristic polynomial det(tI - M), low-to-high coefficients,
    /// via Hessenberg reduction (division-safe over any field).
    pub fn char_poly(&self) -> Vec<FieldElement> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let f = &self.field;
        if n == 0 {
            return vec![f.one()];
        }
        let mut h = self.clone();
        // reduce to upper Hessenberg by similarity transformations
        for col in 0..n.saturating_sub(2) {
            let pivot = (col + 1..n).find(|&r| !h[(r, col)].is_zero());
            let Some(pr) = pivot else { continue };
            if pr != col + 1 {
                h.swap_rows(col + 1, pr);
                h.swap_cols(col + 1, pr);
            }
            let inv = h[(col + 1, col)].inv().unwrap();
            for r in col + 2..n {
                if h[(r, col)].is_zero() {
                    continue;
                }
                let factor = &h[(r, col)] * &inv;
                // row_r -= factor * row_{col+1}
                for c in 0..n {
                    let sub = &h[(col + 1, c)] * &factor;
                    h[(r, c)] = &h[(r, c)] - &sub;
                }
                // col_{col+1} += factor * col_r  (inverse similarity)
                for rr in 0..n {
                    let add = &h[(rr, r)] * &factor;
                    h[(rr, col + 1)] = &h[(rr, col + 1)] + &add;
                }
            }
        }
        // p_m(t) = (t - h[m][m]) p_{m-1}(t) - sum_k h[k][m] (prod subdiag) p_{k-1}(t)
        let mut polys: Vec<Vec<FieldElement>> = vec![vec![f.one()]];
        for m in 0..n {
            let prev = &polys[m];
            let mut pm = vec![f.zero(); m + 2];
            // t * p_{m-1}
            for (i, c) in prev.iter().enumerate() {
                pm[i + 1] = &pm[i + 1] + c;
            }
            // - h[m][m] * p_{m-1}
            for (i, c) in prev.iter().enumerate() {
                pm[i] = &pm[i] - &(c * &h[(m, m)]);
            }
            let mut subdiag = f.one();
            for k in (0..m).rev() {
                subdiag = &subdiag * &h[(k + 1, k)];
                if subdiag.is_zero() {
                    break;
                }
                let coeff = &h[(k, m)] * &subdiag;
                if coeff.is_zero() {
                    continue;
                }
                for (i, c) in polys[k].iter().enumerate() {
                    pm[i] = &pm[i] - &(c * &coeff);
                }
            }
            polys.push(pm);
        }
        polys.pop().unwrap()
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = FieldElement;
    fn index(&self, (r, c): (usize, usize)) -> &FieldElement {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}
impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut FieldElement {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

/// An echelonized subspace of a coordinate space.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    basis: Matrix, // rref rows, full row rank
    pivots: Vec<usize>,
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subspace(dim {} of {})", self.dim(), self.ambient)
    }
}

impl Subspace {
    pub fn zero(field: &Field, ambient: usize) -> Subspace {
        Subspace {
            field: field.clone(),
            ambient,
            basis: Matrix::zero(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &Field, ambient: usize) -> Subspace {
        Subspace {
            field: field.clone(),
            ambient,
            basis: Matrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn from_spanning(field: &Field, ambient: usize, rows: Vec<Vec<FieldElement>>) -> Subspace {
        if rows.is_empty() {
            return Subspace::zero(field, ambient);
        }
        let m = Matrix::from_rows(field, rows);
        assert_eq!(m.cols(), ambient);
        let (r, pivots) = m.rref();
        let rank = pivots.len();
        let basis = Matrix::from_fn(field, rank, ambient, |i, j| r[(i, j)].clone());
        Subspace {
            field: field.clone(),
            ambient,
            basis,
            pivots,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }
    pub fn basis_row(&self, i: usize) -> &[FieldElement] {
        self.basis.row(i)
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduce v against the echelon basis; the remainder is 0 iff v is a member.
    pub fn reduce(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(v.len(), self.ambient);
        let mut w = v.to_vec();
        for (i, &pc) in self.pivots.iter().enumerate() {
            if !w[pc].is_zero() {
                let factor = w[pc].clone();
                for j in 0..self.ambient {
                    let sub = &self.basis[(i, j)] * &factor;
                    w[j] = &w[j] - &sub;
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[FieldElement]) -> bool {
        self.reduce(v).iter().all(|e| e.is_zero())
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        (0..other.dim()).all(|i| self.contains(other.basis_row(i)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient != other.ambient {
            return Err(Error::InvalidInput("ambient mismatch in sum".into()));
        }
        let mut rows = Vec::new();
        for i in 0..self.dim() {
            rows.push(self.basis_row(i).to_vec());
        }
        for i in 0..other.dim() {
            rows.push(other.basis_row(i).to_vec());
        }
        Ok(Subspace::from_spanning(&self.field, self.ambient, rows))
    }

    /// Zassenhaus intersection.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient != other.ambient {
            return Err(Error::InvalidInput("ambient mismatch in intersect".into()));
        }
        let n = self.ambient;
        let f = &self.field;
        let mut rows = Vec::new();
        for i in 0..self.dim() {
            let mut row = self.basis_row(i).to_vec();
            row.extend_from_slice(self.basis_row(i));
            rows.push(row);
        }
        for i in 0..other.dim() {
            let mut row = other.basis_row(i).to_vec();
            row.extend(vec![f.zero(); n]);
            rows.push(row);
        }
        if rows.is_empty() {
            return Ok(Subspace::zero(f, n));
        }
        let m = Matrix::from_rows(f, rows);
        let (r, pivots) = m.rref();
        // rows whose pivot lies in the right half carry the intersection
        let mut basis = Vec::new();
        for (i, &p) in pivots.iter().enumerate() {
            if p >= n {
                basis.push(r.row(i)[n..].to_vec());
            }
        }
        Ok(Subspace::from_spanning(f, n, basis))
    }

    /// {v : Tv in self}, where T maps the ambient of the result into ours.
    pub fn preimage(&self, t: &Matrix) -> Result<Subspace> {
        if t.rows() != self.ambient {
            return Err(Error::InvalidInput("ambient mismatch in preimage".into()));
        }
        // v in preimage iff reduce(Tv) = 0; the reduction is linear in v
        let cols = t.cols();
        let mut red_cols = Vec::with_capacity(cols);
        for c in 0..cols {
            let col: Vec<FieldElement> = (0..t.rows()).map(|r| t[(r, c)].clone()).collect();
            red_cols.push(self.reduce(&col));
        }
        let sys = Matrix::from_fn(&self.field, self.ambient, cols, |r, c| red_cols[c][r].clone());
        Ok(sys.kernel())
    }

    /// Indices of the standard basis vectors completing this subspace
    /// (the non-pivot coordinates).
    pub fn complement_coords(&self) -> Vec<usize> {
        (0..self.ambient).filter(|c| !self.pivots.contains(c)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn random_matrix(f: &Field, rows: usize, cols: usize, rng: &mut impl rand::Rng) -> Matrix {
        Matrix::from_fn(f, rows, cols, |_, _| f.random(rng))
    }

    #[test]
    fn identity_and_zero_ranks() {
        let f5 = make_field(5, 1).unwrap();
        let id = Matrix::identity(&f5, 3);
        assert_eq!(id.rank(), 3);
        assert_eq!(id.kernel().dim(), 0);

        let f2 = make_field(2, 1).unwrap();
        let z = Matrix::zero(&f2, 2, 3);
        assert_eq!(z.rank(), 0);
        assert_eq!(z.kernel().dim(), 3);
    }

    #[test]
    fn solve_over_f2_matches_enumeration() {
        let f2 = make_field(2, 1).unwrap();
        let m = Matrix::from_fn(&f2, 2, 2, |_, _| f2.one());
        let b = vec![f2.one(), f2.one()];
        let x = m.solve(&b).unwrap();
        // oracle: enumerate all of F_2^2
        let mut sols = Vec::new();
        for a0 in 0..2u64 {
            for a1 in 0..2u64 {
                let v = vec![f2.from_u64(a0), f2.from_u64(a1)];
                if m.apply(&v) == b {
                    sols.push(v);
                }
            }
        }
        assert!(sols.contains(&x));
        assert_eq!(x, vec![f2.one(), f2.zero()]);
        let ker = m.kernel();
        assert_eq!(ker.dim(), 1);
        assert!(ker.contains(&[f2.one(), f2.one()]));
    }

    #[test]
    fn rank_nullity_randomized() {
        for (p, k) in [(2, 1), (3, 1), (5, 1), (2, 2)] {
            let f = make_field(p, k).unwrap();
            let mut rng = ChaCha12Rng::seed_from_u64(42 + p);
            for _ in 0..50 {
                let rows = 1 + (rng.gen::<usize>() % 6);
                let cols = 1 + (rng.gen::<usize>() % 6);
                let m = random_matrix(&f, rows, cols, &mut rng);
                assert_eq!(m.rank() + m.kernel().dim(), cols);
                // rref idempotent
                let (r, _) = m.rref();
                let (rr, _) = r.rref();
                assert_eq!(r, rr);
            }
        }
    }

    #[test]
    fn subspace_dimension_formula() {
        let f3 = make_field(3, 1).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(9);
        for _ in 0..50 {
            let n = 4;
            let u = random_matrix(&f3, 2, n, &mut rng).kernel();
            let w = random_matrix(&f3, 2, n, &mut rng).kernel();
            let s = u.sum(&w).unwrap();
            let i = u.intersect(&w).unwrap();
            assert_eq!(s.dim() + i.dim(), u.dim() + w.dim());
            assert!(s.contains_subspace(&u));
            assert!(u.contains_subspace(&i));
        }
    }

    #[test]
    fn complementary_lines_in_f3_squared() {
        let f3 = make_field(3, 1).unwrap();
        let u = Subspace::from_spanning(&f3, 2, vec![vec![f3.one(), f3.zero()]]);
        let w = Subspace::from_spanning(&f3, 2, vec![vec![f3.zero(), f3.one()]]);
        assert_eq!(u.sum(&w).unwrap().dim(), 2);
        assert_eq!(u.intersect(&w).unwrap().dim(), 0);
        let same = u.sum(&u).unwrap();
        assert_eq!(same, u.intersect(&u).unwrap());
        assert_eq!(same, u);
    }

    #[test]
    fn preimage_of_zero_is_kernel() {
        let f5 = make_field(5, 1).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(3);
        let m = random_matrix(&f5, 3, 4, &mut rng);
        let z = Subspace::zero(&f5, 3);
        assert_eq!(z.preimage(&m).unwrap(), m.kernel());
    }

    #[test]
    fn char_poly_matches_cayley_hamilton() {
        for p in [2u64, 3, 5] {
            let f = make_field(p, 1).unwrap();
            let mut rng = ChaCha12Rng::seed_from_u64(p);
            for _ in 0..30 {
                let n = 1 + (rng.gen::<usize>() % 5);
                let m = random_matrix(&f, n, n, &mut rng);
                let cp = m.char_poly();
                assert_eq!(cp.len(), n + 1);
                assert!(cp[n].is_one());
                // evaluate at M
                let mut acc = Matrix::zero(&f, n, n);
                let mut mp = Matrix::identity(&f, n);
                for c in cp.iter() {
                    acc = acc.add(&mp.scale(c));
                    mp = mp.mul(&m);
                }
                assert!(acc.is_zero(), "Cayley-Hamilton failed");
            }
        }
    }

    #[test]
    fn char_poly_2x2_oracle() {
        let f5 = make_field(5, 1).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(77);
        for _ in 0..40 {
            let m = random_matrix(&f5, 2, 2, &mut rng);
            let cp = m.char_poly();
            // det(tI - M) = t^2 - tr t + det
            let tr = m.trace();
            let det = &(&m[(0, 0)] * &m[(1, 1)]) - &(&m[(0, 1)] * &m[(1, 0)]);
            assert_eq!(cp[2], f5.one());
            assert_eq!(cp[1], -&tr);
            assert_eq!(cp[0], det);
        }
    }
}
