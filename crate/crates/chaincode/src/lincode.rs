//! Generic S-linear code machinery over a chain ring: generator matrices,
//! the standard form and type of a code, membership, sum and intersection,
//! the Euclidean dual, and the shift matrices D_a / E_b attached to an
//! associate vector.
//!
//! Standard form is computed by θ-adic Gaussian elimination: pick the entry
//! of minimal θ-valuation (ties: first column, then first row), scale its
//! row by the inverse of the unit part, clear the column, and reduce the
//! rows of earlier pivots modulo θ^t. The Euclidean dual comes from a Smith
//! decomposition with tracked right transform.

use std::fmt;

use crate::chainring::{Elem, Ring};
use crate::error::{Error, Result};
use crate::polyring::{period, Poly};

// ---------------------------------------------------------------------------
// Matrix
// ---------------------------------------------------------------------------

/// Rectangular matrix with entries in a fixed ring, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Matrix {
    pub fn from_rows(ring: &Ring, rows: Vec<Vec<Elem>>, cols: usize) -> Result<Matrix> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let nrows = rows.len();
        for row in rows {
            if row.len() != cols {
                return Err(Error::SizeMismatch);
            }
            for e in &row {
                if e.ring() != ring {
                    return Err(Error::RingMismatch);
                }
            }
            data.extend(row);
        }
        Ok(Matrix { ring: ring.clone(), rows: nrows, cols, data })
    }

    pub fn zeros(ring: &Ring, rows: usize, cols: usize) -> Matrix {
        Matrix {
            ring: ring.clone(),
            rows,
            cols,
            data: vec![ring.zero(); rows * cols],
        }
    }

    pub fn identity(ring: &Ring, n: usize) -> Matrix {
        let mut m = Matrix::zeros(ring, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = ring.one();
        }
        m
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }
    pub fn nrows(&self) -> usize {
        self.rows
    }
    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Elem {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Elem {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(&self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        out
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows || self.ring != other.ring {
            return Err(Error::SizeMismatch);
        }
        let mut out = Matrix::zeros(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = &*out.at(i, j) + &(a * other.at(k, j));
                    *out.at_mut(i, j) = v;
                }
            }
        }
        Ok(out)
    }

    pub fn map<F: Fn(&Elem) -> Elem>(&self, f: F) -> Matrix {
        Matrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// v·M for a row vector v.
pub fn row_times_matrix(v: &[Elem], m: &Matrix) -> Result<Vec<Elem>> {
    if v.len() != m.nrows() {
        return Err(Error::SizeMismatch);
    }
    let mut out = vec![m.ring().zero(); m.ncols()];
    for (k, a) in v.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, o) in out.iter_mut().enumerate() {
            *o = &*o + &(a * m.at(k, j));
        }
    }
    Ok(out)
}

/// ⟨x, y⟩ = Σ x_i·y_i.
pub fn dot(x: &[Elem], y: &[Elem]) -> Elem {
    assert_eq!(x.len(), y.len(), "LengthMismatch");
    let ring = x[0].ring().clone();
    let mut acc = ring.zero();
    for (a, b) in x.iter().zip(y) {
        acc = &acc + &(a * b);
    }
    acc
}

// ---------------------------------------------------------------------------
// standard form
// ---------------------------------------------------------------------------

/// Result of θ-adic elimination: the reduced pivot rows (original column
/// order), the pivot positions with their θ-levels, the column permutation
/// that exhibits the block shape, and the type tuple (k_0, …, k_{s−1}).
#[derive(Clone, Debug)]
pub struct StandardForm {
    ring: Ring,
    cols: usize,
    /// reduced pivot rows, one per pivot, in pivot order
    pub rows: Vec<Vec<Elem>>,
    /// (column, θ-level) per pivot, levels non-decreasing
    pub pivots: Vec<(usize, u32)>,
    /// pivot columns first (in pivot order), then the rest ascending
    pub permutation: Vec<usize>,
    /// k_t = number of pivots at θ-level t
    pub type_tuple: Vec<usize>,
}

impl StandardForm {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// |C| = Π_t p^{m(s−t)k_t}.
    pub fn cardinality(&self) -> u128 {
        let p = self.ring.prime() as u128;
        let m = self.ring.degree();
        let s = self.ring.nilpotency();
        let mut acc: u128 = 1;
        for (t, &k) in self.type_tuple.iter().enumerate() {
            let e = (m as u128) * ((s as usize - t) as u128) * k as u128;
            acc = acc.checked_mul(p.checked_pow(e as u32).expect("desk scale"))
                .expect("desk scale");
        }
        acc
    }

    /// The matrix in the block shape of the standard form: pivot columns
    /// moved to the front in pivot order.
    pub fn block_matrix(&self) -> Matrix {
        let rows = self
            .rows
            .iter()
            .map(|r| self.permutation.iter().map(|&j| r[j].clone()).collect())
            .collect();
        Matrix::from_rows(&self.ring, rows, self.cols).expect("consistent")
    }
}

/// θ-adic Gaussian elimination with global minimal-valuation pivoting.
pub fn standard_form(g: &Matrix) -> StandardForm {
    let ring = g.ring().clone();
    let s = ring.nilpotency();
    let n = g.ncols();
    let mut rows = g.row_vecs();
    let mut pivots: Vec<(usize, u32)> = Vec::new();
    let mut is_pivot_col = vec![false; n];
    let mut next = 0usize;
    loop {
        // minimal (valuation, column, row) among unprocessed rows / free columns
        let mut best: Option<(u32, usize, usize)> = None;
        for j in 0..n {
            if is_pivot_col[j] {
                continue;
            }
            for (i, row) in rows.iter().enumerate().skip(next) {
                let v = row[j].valuation();
                if v == s {
                    continue;
                }
                let cand = (v, j, i);
                if best.map_or(true, |b| cand < b) {
                    best = Some(cand);
                }
            }
        }
        let Some((t, col, row_idx)) = best else { break };
        rows.swap(next, row_idx);
        // scale so the pivot entry becomes exactly θ^t
        let unit = rows[next][col].div_theta(t);
        let unit_inv = unit.inv().expect("unit part");
        for e in rows[next].iter_mut() {
            *e = &*e * &unit_inv;
        }
        debug_assert_eq!(rows[next][col], ring.theta().pow(t as u64));
        // clear the column below, reduce it above (mod θ^t)
        let pivot_row = rows[next].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == next {
                continue;
            }
            let w = coordinate_quotient(&row[col], t);
            if w.is_zero() {
                continue;
            }
            for (e, p) in row.iter_mut().zip(&pivot_row) {
                *e = &*e - &(&w * p);
            }
        }
        is_pivot_col[col] = true;
        pivots.push((col, t));
        next += 1;
    }
    rows.truncate(pivots.len());
    let mut type_tuple = vec![0usize; s as usize];
    for &(_, t) in &pivots {
        type_tuple[t as usize] += 1;
    }
    let mut permutation: Vec<usize> = pivots.iter().map(|&(c, _)| c).collect();
    for j in 0..n {
        if !is_pivot_col[j] {
            permutation.push(j);
        }
    }
    StandardForm { ring, cols: n, rows, pivots, permutation, type_tuple }
}

/// Coordinate-wise quotient by p^t; x − quotient·θ^t reduces every
/// coordinate of x mod p^t (and is exact when val(x) ≥ t).
fn coordinate_quotient(x: &Elem, t: u32) -> Elem {
    let p = x.ring().prime();
    let q = p.pow(t);
    x.ring()
        .from_coords(&x.coords().iter().map(|c| c / q).collect::<Vec<_>>())
        .expect("same length")
}

// ---------------------------------------------------------------------------
// Smith decomposition (for kernels / duals)
// ---------------------------------------------------------------------------

/// Diagonalize A over the chain ring: returns the diagonal θ-levels padded
/// to length n (level s for unconstrained positions) and the accumulated
/// right transform V with A·(col ops) = U·A_orig·V.
fn smith_right(a: &Matrix) -> (Vec<u32>, Matrix) {
    let ring = a.ring().clone();
    let s = ring.nilpotency();
    let (k, n) = (a.nrows(), a.ncols());
    let mut m = a.clone();
    let mut v = Matrix::identity(&ring, n);
    let mut diag = vec![s; n];
    let steps = k.min(n);
    for step in 0..steps {
        // minimal valuation in the active submatrix
        let mut best: Option<(u32, usize, usize)> = None;
        for i in step..k {
            for j in step..n {
                let val = m.at(i, j).valuation();
                if val == s {
                    continue;
                }
                let cand = (val, j, i);
                if best.map_or(true, |b| cand < b) {
                    best = Some(cand);
                }
            }
        }
        let Some((t, col, row)) = best else { break };
        // move to (step, step)
        if row != step {
            for j in 0..n {
                let (x, y) = (m.at(step, j).clone(), m.at(row, j).clone());
                *m.at_mut(step, j) = y;
                *m.at_mut(row, j) = x;
            }
        }
        if col != step {
            for i in 0..k {
                let (x, y) = (m.at(i, step).clone(), m.at(i, col).clone());
                *m.at_mut(i, step) = y;
                *m.at_mut(i, col) = x;
            }
            for i in 0..n {
                let (x, y) = (v.at(i, step).clone(), v.at(i, col).clone());
                *v.at_mut(i, step) = y;
                *v.at_mut(i, col) = x;
            }
        }
        // normalize pivot to θ^t
        let unit_inv = m.at(step, step).div_theta(t).inv().expect("unit part");
        for j in 0..n {
            let val = m.at(step, j) * &unit_inv;
            *m.at_mut(step, j) = val;
        }
        // clear the pivot column with row ops (exact: valuations ≥ t)
        for i in step + 1..k {
            let w = m.at(i, step).div_theta(t);
            if w.is_zero() {
                continue;
            }
            for j in 0..n {
                let val = &*m.at(i, j) - &(&w * m.at(step, j));
                *m.at_mut(i, j) = val;
            }
        }
        // clear the pivot row with column ops, mirrored into V
        for j in step + 1..n {
            let w = m.at(step, j).div_theta(t);
            if w.is_zero() {
                continue;
            }
            for i in 0..k {
                let val = &*m.at(i, j) - &(&w * m.at(i, step));
                *m.at_mut(i, j) = val;
            }
            for i in 0..n {
                let val = &*v.at(i, j) - &(&w * v.at(i, step));
                *v.at_mut(i, j) = val;
            }
        }
        diag[step] = t;
    }
    (diag, v)
}

// ---------------------------------------------------------------------------
// LinearCode
// ---------------------------------------------------------------------------

/// An S-linear code held as a generator matrix with its standard form
/// computed eagerly at construction (values are immutable afterwards).
#[derive(Clone)]
pub struct LinearCode {
    ring: Ring,
    n: usize,
    gens: Matrix,
    sf: StandardForm,
}

impl LinearCode {
    pub fn new(gens: Matrix) -> LinearCode {
        let sf = standard_form(&gens);
        LinearCode { ring: gens.ring().clone(), n: gens.ncols(), gens, sf }
    }

    pub fn from_rows(ring: &Ring, n: usize, rows: Vec<Vec<Elem>>) -> Result<LinearCode> {
        for r in &rows {
            if r.len() != n {
                return Err(Error::LengthMismatch);
            }
        }
        Ok(LinearCode::new(Matrix::from_rows(ring, rows, n)?))
    }

    pub fn zero(ring: &Ring, n: usize) -> LinearCode {
        LinearCode::new(Matrix::zeros(ring, 0, n))
    }

    pub fn full(ring: &Ring, n: usize) -> LinearCode {
        LinearCode::new(Matrix::identity(ring, n))
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }
    pub fn len(&self) -> usize {
        self.n
    }
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }
    pub fn generators(&self) -> &Matrix {
        &self.gens
    }
    pub fn standard(&self) -> &StandardForm {
        &self.sf
    }
    pub fn type_tuple(&self) -> &[usize] {
        &self.sf.type_tuple
    }
    pub fn rank(&self) -> usize {
        self.sf.rank()
    }
    pub fn cardinality(&self) -> u128 {
        self.sf.cardinality()
    }
    pub fn is_zero_code(&self) -> bool {
        self.sf.rank() == 0
    }

    /// Free iff the type is concentrated at θ-level 0.
    pub fn is_free(&self) -> bool {
        self.sf.type_tuple[1..].iter().all(|&k| k == 0)
    }

    /// Solve x·(reduced rows) = v by θ-adic back-substitution.
    pub fn solve(&self, v: &[Elem]) -> Option<Vec<Elem>> {
        assert_eq!(v.len(), self.n, "LengthMismatch");
        let s = self.ring.nilpotency();
        let mut rest = v.to_vec();
        let mut coeffs = Vec::with_capacity(self.sf.rank());
        for (row, &(col, t)) in self.sf.rows.iter().zip(&self.sf.pivots) {
            let entry = &rest[col];
            if entry.valuation() < t {
                return None;
            }
            let x = if entry.is_zero() && t == s {
                self.ring.zero()
            } else {
                coordinate_quotient(entry, t)
            };
            if !x.is_zero() {
                for (e, r) in rest.iter_mut().zip(row) {
                    *e = &*e - &(&x * r);
                }
            }
            coeffs.push(x);
        }
        if rest.iter().all(Elem::is_zero) {
            Some(coeffs)
        } else {
            None
        }
    }

    pub fn member(&self, v: &[Elem]) -> bool {
        self.solve(v).is_some()
    }

    /// Module equality via mutual membership of generators.
    pub fn eq_code(&self, other: &LinearCode) -> bool {
        if self.ring != other.ring || self.n != other.n {
            return false;
        }
        if self.sf.type_tuple != other.sf.type_tuple {
            return false;
        }
        self.sf.rows.iter().all(|r| other.member(r))
            && other.sf.rows.iter().all(|r| self.member(r))
    }

    pub fn sum(&self, other: &LinearCode) -> Result<LinearCode> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        if self.n != other.n {
            return Err(Error::LengthMismatch);
        }
        let mut rows = self.sf.rows.clone();
        rows.extend(other.sf.rows.iter().cloned());
        LinearCode::from_rows(&self.ring, self.n, rows)
    }

    /// C₁ ∩ C₂ = (C₁⊥ + C₂⊥)⊥, valid because (C⊥)⊥ = C over a chain ring.
    pub fn intersect(&self, other: &LinearCode) -> Result<LinearCode> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        if self.n != other.n {
            return Err(Error::LengthMismatch);
        }
        Ok(self.euclidean_dual().sum(&other.euclidean_dual())?.euclidean_dual())
    }

    /// C⊥ = {y : ⟨y, c⟩ = 0 for all c ∈ C}, from a Smith decomposition of
    /// the reduced generator matrix. The cardinality identity
    /// |C|·|C⊥| = |S|^n is asserted in debug builds on every call.
    pub fn euclidean_dual(&self) -> LinearCode {
        let s = self.ring.nilpotency();
        let reduced = Matrix::from_rows(&self.ring, self.sf.rows.clone(), self.n)
            .expect("reduced rows are consistent");
        let (diag, v) = smith_right(&reduced);
        let mut rows = Vec::new();
        let theta = self.ring.theta();
        for (i, &t) in diag.iter().enumerate() {
            if t == 0 {
                continue;
            }
            let scale = theta.pow((s - t) as u64);
            rows.push((0..self.n).map(|r| &scale * v.at(r, i)).collect());
        }
        let dual = LinearCode::from_rows(&self.ring, self.n, rows).expect("consistent");
        debug_assert_eq!(
            dual.cardinality() * self.cardinality(),
            self.ring.size().pow(self.n as u32),
            "dual cardinality identity"
        );
        dual
    }

    /// The image code C·M.
    pub fn mul_matrix(&self, m: &Matrix) -> Result<LinearCode> {
        if m.nrows() != self.n {
            return Err(Error::SizeMismatch);
        }
        let rows = self
            .sf
            .rows
            .iter()
            .map(|r| row_times_matrix(r, m))
            .collect::<Result<Vec<_>>>()?;
        LinearCode::from_rows(&self.ring, m.ncols(), rows)
    }

    /// True iff C·M = C (containment of generator images plus equal
    /// cardinality, which is sufficient even for non-invertible M).
    pub fn is_invariant(&self, m: &Matrix) -> Result<bool> {
        if m.nrows() != self.n || m.ncols() != self.n {
            return Err(Error::SizeMismatch);
        }
        let image = self.mul_matrix(m)?;
        Ok(image.cardinality() == self.cardinality()
            && image.sf.rows.iter().all(|r| self.member(r)))
    }

    /// Entrywise map of the generators (e.g. a Frobenius power).
    pub fn map_entries<F: Fn(&Elem) -> Elem>(&self, f: F) -> LinearCode {
        LinearCode::new(self.gens.map(f))
    }
}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "LinearCode(n={}, type={:?}, |C|={})",
            self.n,
            self.type_tuple(),
            self.cardinality()
        )
    }
}

// ---------------------------------------------------------------------------
// associate vectors and shift matrices
// ---------------------------------------------------------------------------

/// a = (a_0, …, a_{n−1}) ∈ S^× × S^{n−1}: the defining datum of the shift
/// matrix D_a and of the quotient ambient X^n − Ψ(a).
#[derive(Clone, PartialEq, Eq)]
pub struct AssociateVector {
    entries: Vec<Elem>,
}

impl AssociateVector {
    pub fn new(entries: Vec<Elem>) -> Result<AssociateVector> {
        if entries.is_empty() || !entries[0].is_unit() {
            return Err(Error::NonUnitA0);
        }
        Ok(AssociateVector { entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }
    pub fn ring(&self) -> &Ring {
        self.entries[0].ring()
    }

    /// Ψ(a) = a_0 + a_1X + … + a_{n−1}X^{n−1}.
    pub fn psi(&self) -> Poly {
        Poly::from_coeffs(self.ring(), self.entries.clone())
    }

    /// X^n − Ψ(a).
    pub fn ambient(&self) -> Poly {
        &Poly::x_pow(self.ring(), self.len()) - &self.psi()
    }

    /// ℓ_a, the order of X modulo the residue ambient.
    pub fn period(&self, cap: u64) -> Result<u64> {
        period(self.len(), &self.psi(), cap)
    }

    pub fn frobenius(&self, k: u32) -> AssociateVector {
        AssociateVector {
            entries: self.entries.iter().map(|e| e.frobenius(k)).collect(),
        }
    }

    /// D_a: rows 0..n−1 shift, last row is a.
    pub fn d_matrix(&self) -> Matrix {
        let ring = self.ring();
        let n = self.len();
        let mut m = Matrix::zeros(ring, n, n);
        for i in 0..n - 1 {
            *m.at_mut(i, i + 1) = ring.one();
        }
        for j in 0..n {
            *m.at_mut(n - 1, j) = self.entries[j].clone();
        }
        m
    }

    /// (E_b, b) with b_j = −a_{j+1}a_0^{−1} for j < n−1 and b_{n−1} = a_0^{−1};
    /// a right a-cyclic code is left b-cyclic. b need not start with a unit.
    pub fn e_matrix(&self) -> (Matrix, Vec<Elem>) {
        let ring = self.ring().clone();
        let n = self.len();
        let a0_inv = self.entries[0].inv().expect("a_0 is a unit");
        let mut b = Vec::with_capacity(n);
        for j in 0..n - 1 {
            b.push(-&(&self.entries[j + 1] * &a0_inv));
        }
        b.push(a0_inv);
        let mut m = Matrix::zeros(&ring, n, n);
        for j in 0..n {
            *m.at_mut(0, j) = b[j].clone();
        }
        for i in 1..n {
            *m.at_mut(i, i - 1) = ring.one();
        }
        (m, b)
    }
}

impl fmt::Debug for AssociateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a = (")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// The pair of shift matrices of Eq-style polycyclic/sequential actions.
pub fn shift_matrices(a: &AssociateVector) -> (Matrix, Matrix, Vec<Elem>) {
    let d = a.d_matrix();
    let (e, b) = a.e_matrix();
    (d, e, b)
}

// ---------------------------------------------------------------------------
// tests
// ---------------------------------------------------------------------------
