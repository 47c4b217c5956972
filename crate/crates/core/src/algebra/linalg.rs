//! Dense exact matrices over the rationals, subspaces in reduced echelon form,
//! and quotient maps with lowest-index-pivot complements.

use std::fmt;

use super::rational::Rat;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, data: vec![Rat::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::ONE);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>, cols: usize) -> Mat {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix");
            data.extend(row);
        }
        Mat { rows: r, cols, data }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Mat {
        let cols = rows.first().map_or(0, |r| r.len());
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&x| Rat::int(x)).collect()).collect(), cols)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<Rat>], rows: usize) -> Mat {
        let mut m = Mat::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, x) in c.iter().enumerate() {
                if !x.is_zero() {
                    m.set(i, j, x.clone());
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: Rat) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = self.get(i, j);
                if !x.is_zero() {
                    t.set(j, i, x.clone());
                }
            }
        }
        t
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows, "dimension mismatch in product");
        let mut r = Mat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * r.cols + j;
                    r.data[idx] = &r.data[idx] + &(a * b);
                }
            }
        }
        r
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut s = Rat::ZERO;
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        s += &(a * b);
                    }
                }
                s
            })
            .collect()
    }

    pub fn add(&self, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn hstack(&self, o: &Mat) -> Mat {
        assert_eq!(self.rows, o.rows);
        let mut m = Mat::zeros(self.rows, self.cols + o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..o.cols {
                m.set(i, self.cols + j, o.get(i, j).clone());
            }
        }
        m
    }

    pub fn vstack(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&o.data);
        Mat { rows: self.rows + o.rows, cols: self.cols, data }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        Mat { rows: idx.len(), cols: self.cols, data }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Mat {
        let mut m = Mat::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (jj, &j) in idx.iter().enumerate() {
                m.set(i, jj, self.get(i, j).clone());
            }
        }
        m
    }

    /// Copies `block` into this matrix with its top-left corner at `(r0, c0)`.
    pub fn put(&mut self, r0: usize, c0: usize, block: &Mat) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                let x = block.get(i, j);
                if !x.is_zero() {
                    self.set(r0 + i, c0 + j, x.clone());
                }
            }
        }
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = self.get(r, c).recip();
            if !inv.is_one() {
                for j in c..self.cols {
                    let idx = r * self.cols + j;
                    if !self.data[idx].is_zero() {
                        self.data[idx] = &self.data[idx] * &inv;
                    }
                }
            }
            let nz: Vec<usize> = (c..self.cols).filter(|&j| !self.get(r, j).is_zero()).collect();
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for &j in &nz {
                    let idx = i * self.cols + j;
                    let t = &f * self.get(r, j);
                    self.data[idx] = &self.data[idx] - &t;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let p = m.rref_in_place();
        (m, p)
    }

    pub fn rank(&self) -> usize {
        if self.rows <= self.cols {
            self.rref().1.len()
        } else {
            self.transpose().rref().1.len()
        }
    }

    /// Kernel basis as columns; column `j` has a 1 in the `j`-th free
    /// coordinate and zeros in the other free coordinates.
    pub fn kernel(&self) -> Subspace {
        let (r, piv) = self.rref();
        let mut is_piv = vec![false; self.cols];
        for &p in &piv {
            is_piv[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_piv[c]).collect();
        let mut basis = Mat::zeros(self.cols, free.len());
        for (j, &f) in free.iter().enumerate() {
            basis.set(f, j, Rat::ONE);
            for (i, &p) in piv.iter().enumerate() {
                let x = r.get(i, f);
                if !x.is_zero() {
                    basis.set(p, j, -x);
                }
            }
        }
        Subspace { ambient: self.cols, basis, pivots: free }
    }

    /// Solves `self * x = b`; returns a particular solution and the kernel,
    /// or `None` when the system is infeasible.
    pub fn solve(&self, b: &[Rat]) -> Option<(Vec<Rat>, Subspace)> {
        assert_eq!(b.len(), self.rows);
        let aug = self.hstack(&Mat::from_cols(&[b.to_vec()], self.rows));
        let (r, piv) = aug.rref();
        if piv.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rat::ZERO; self.cols];
        for (i, &p) in piv.iter().enumerate() {
            x[p] = r.get(i, self.cols).clone();
        }
        Some((x, self.kernel()))
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<Mat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let (r, piv) = self.hstack(&Mat::identity(n)).rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return if n == 0 { Some(Mat::zeros(0, 0)) } else { None };
        }
        let idx: Vec<usize> = (n..2 * n).collect();
        Some(r.select_cols(&idx))
    }

    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rat::ONE;
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Rat::ZERO;
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det = &det * &piv;
            let inv = piv.recip();
            for i in c + 1..n {
                let f = m.get(i, c) * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let t = &f * m.get(c, j);
                    let idx = i * n + j;
                    m.data[idx] = &m.data[idx] - &t;
                }
            }
        }
        det
    }
}

/// A linear subspace of `Q^ambient` held as a basis matrix (as columns) in
/// column echelon form: the rows listed in `pivots` form an identity block,
/// so the coordinates of a member are its entries at those rows.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Mat,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(n: usize) -> Subspace {
        Subspace { ambient: n, basis: Mat::zeros(n, 0), pivots: vec![] }
    }

    pub fn full(n: usize) -> Subspace {
        Subspace { ambient: n, basis: Mat::identity(n), pivots: (0..n).collect() }
    }

    /// Span of the columns of `m`, reduced with lowest-index pivots.
    pub fn span(m: &Mat) -> Subspace {
        let n = m.rows();
        if m.cols() == 0 {
            return Subspace::zero(n);
        }
        let (r, piv) = m.transpose().rref();
        let idx: Vec<usize> = (0..piv.len()).collect();
        Subspace { ambient: n, basis: r.select_rows(&idx).transpose(), pivots: piv }
    }

    pub fn span_vecs(vs: &[Vec<Rat>], n: usize) -> Subspace {
        Subspace::span(&Mat::from_cols(vs, n))
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn vector(&self, j: usize) -> Vec<Rat> {
        self.basis.col(j)
    }

    /// Coordinates of `v` in the basis; `v` must lie in the subspace.
    pub fn coords(&self, v: &[Rat]) -> Vec<Rat> {
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }

    /// Matrix sending ambient vectors of the subspace to their coordinates.
    pub fn coord_map(&self) -> Mat {
        let mut m = Mat::zeros(self.dim(), self.ambient);
        for (i, &p) in self.pivots.iter().enumerate() {
            m.set(i, p, Rat::ONE);
        }
        m
    }

    /// `v` minus its component along the basis at the pivot rows.
    pub fn residual(&self, v: &[Rat]) -> Vec<Rat> {
        let c = self.coords(v);
        let mut r = v.to_vec();
        for (j, cj) in c.iter().enumerate() {
            if cj.is_zero() {
                continue;
            }
            for i in 0..self.ambient {
                let b = self.basis.get(i, j);
                if !b.is_zero() {
                    r[i] = &r[i] - &(cj * b);
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.residual(v).iter().all(|x| x.is_zero())
    }

    pub fn contains_space(&self, o: &Subspace) -> bool {
        (0..o.dim()).all(|j| self.contains(&o.vector(j)))
    }

    /// Rows whose common kernel is exactly this subspace.
    pub fn annihilator(&self) -> Mat {
        let mut is_piv = vec![false; self.ambient];
        for &p in &self.pivots {
            is_piv[p] = true;
        }
        let non: Vec<usize> = (0..self.ambient).filter(|&i| !is_piv[i]).collect();
        let mut q = Mat::zeros(non.len(), self.ambient);
        for (r, &i) in non.iter().enumerate() {
            q.set(r, i, Rat::ONE);
            for (j, &p) in self.pivots.iter().enumerate() {
                let b = self.basis.get(i, j);
                if !b.is_zero() {
                    q.set(r, p, -b);
                }
            }
        }
        q
    }

    pub fn sum(&self, o: &Subspace) -> Subspace {
        assert_eq!(self.ambient, o.ambient);
        if self.dim() == 0 || o.is_full() {
            return o.clone();
        }
        if o.dim() == 0 || self.is_full() {
            return self.clone();
        }
        Subspace::span(&self.basis.hstack(&o.basis))
    }

    pub fn intersect(&self, o: &Subspace) -> Subspace {
        assert_eq!(self.ambient, o.ambient);
        if o.is_full() || self.dim() == 0 {
            return self.clone();
        }
        if self.is_full() || o.dim() == 0 {
            return o.clone();
        }
        let k = o.annihilator().mul(&self.basis).kernel();
        Subspace::span(&self.basis.mul(k.basis()))
    }

    /// Image of the subspace under `a`.
    pub fn image(&self, a: &Mat) -> Subspace {
        assert_eq!(a.cols(), self.ambient);
        Subspace::span(&a.mul(&self.basis))
    }

    /// Preimage of this subspace under `a`.
    pub fn preimage(&self, a: &Mat) -> Subspace {
        assert_eq!(a.rows(), self.ambient);
        if self.is_full() {
            return Subspace::full(a.cols());
        }
        self.annihilator().mul(a).kernel()
    }

    /// Re-expresses a subspace of this space's coordinate space in ambient
    /// coordinates.
    pub fn embed(&self, inner: &Subspace) -> Subspace {
        assert_eq!(inner.ambient, self.dim());
        Subspace::span(&self.basis.mul(&inner.basis))
    }
}

/// Quotient of `Q^n` by a subspace; the complement is spanned by the unit
/// vectors at the non-pivot coordinates, so lifts are deterministic.
#[derive(Clone, Debug)]
pub struct Quotient {
    sub: Subspace,
    keep: Vec<usize>,
}

impl Quotient {
    pub fn new(sub: Subspace) -> Quotient {
        let mut is_piv = vec![false; sub.ambient];
        for &p in &sub.pivots {
            is_piv[p] = true;
        }
        let keep = (0..sub.ambient).filter(|&i| !is_piv[i]).collect();
        Quotient { sub, keep }
    }

    pub fn dim(&self) -> usize {
        self.keep.len()
    }

    pub fn ambient(&self) -> usize {
        self.sub.ambient
    }

    /// Ambient coordinates whose unit vectors lift the quotient basis.
    pub fn lift_indices(&self) -> &[usize] {
        &self.keep
    }

    pub fn project(&self, v: &[Rat]) -> Vec<Rat> {
        let r = self.sub.residual(v);
        self.keep.iter().map(|&i| r[i].clone()).collect()
    }

    /// The projection as a `dim x ambient` matrix.
    pub fn matrix(&self) -> Mat {
        self.sub.annihilator()
    }
}
