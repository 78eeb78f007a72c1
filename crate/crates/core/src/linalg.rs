//! Sparse exact matrices and rank/kernel computations.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Immutable sparse matrix over [`Scalar`], stored by columns.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    // each column sorted by row index, no zeros stored
    columns: Vec<Vec<(usize, Scalar)>>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, columns: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        let columns = (0..n).map(|i| vec![(i, Scalar::one())]).collect();
        SparseMatrix { rows: n, cols: n, columns }
    }

    /// Build from `(row, col, value)` triplets; duplicates are summed.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Result<Self> {
        let mut acc: Vec<BTreeMap<usize, Scalar>> = vec![BTreeMap::new(); cols];
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(Error::Index(format!("({r}, {c}) in {rows}x{cols}")));
            }
            *acc[c].entry(r).or_default() += &v;
        }
        let columns = acc
            .into_iter()
            .map(|m| m.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        Ok(SparseMatrix { rows, cols, columns })
    }

    /// Build from column vectors given as row-indexed maps.
    pub fn from_columns(rows: usize, columns: Vec<BTreeMap<usize, Scalar>>) -> Result<Self> {
        let cols = columns.len();
        let mut out = Vec::with_capacity(cols);
        for col in columns {
            let mut v = Vec::with_capacity(col.len());
            for (r, x) in col {
                if r >= rows {
                    return Err(Error::Index(format!("row {r} >= {rows}")));
                }
                if !x.is_zero() {
                    v.push((r, x));
                }
            }
            out.push(v);
        }
        Ok(SparseMatrix { rows, cols, columns: out })
    }

    pub fn from_dense(rows: &[Vec<Scalar>]) -> Self {
        let nr = rows.len();
        let nc = rows.first().map_or(0, Vec::len);
        let trip = rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, v)| (i, j, v.clone())));
        Self::from_triplets(nr, nc, trip).expect("in bounds")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn column(&self, c: usize) -> &[(usize, Scalar)] {
        &self.columns[c]
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.columns[c]
            .binary_search_by_key(&r, |(i, _)| *i)
            .map(|k| self.columns[c][k].1.clone())
            .unwrap_or_default()
    }

    /// Entries in column-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.columns.iter().enumerate().flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, v)))
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn transpose(&self) -> Self {
        let trip = self.entries().map(|(r, c, v)| (c, r, v.clone()));
        Self::from_triplets(self.cols, self.rows, trip).expect("in bounds")
    }

    pub fn mul(&self, rhs: &SparseMatrix) -> Result<SparseMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let columns = rhs.columns.iter().map(|col| self.apply_sparse(col)).collect();
        SparseMatrix::from_columns(self.rows, columns)
    }

    fn apply_sparse(&self, v: &[(usize, Scalar)]) -> BTreeMap<usize, Scalar> {
        let mut out: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (k, x) in v {
            for (r, a) in &self.columns[*k] {
                *out.entry(*r).or_default() += &(a * x);
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Matrix-vector product with a dense vector.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            if v[c].is_zero() {
                continue;
            }
            for (r, a) in col {
                out[*r] += &(a * &v[c]);
            }
        }
        out
    }

    /// Stack blocks `[[A, B], [C, D]]`-style; `blocks[i][j]` may be `None` for zero.
    pub fn block(row_dims: &[usize], col_dims: &[usize], blocks: &[Vec<Option<&SparseMatrix>>]) -> Result<Self> {
        let rows: usize = row_dims.iter().sum();
        let cols: usize = col_dims.iter().sum();
        let mut trip = Vec::new();
        let mut r0 = 0;
        for (i, rd) in row_dims.iter().enumerate() {
            let mut c0 = 0;
            for (j, cd) in col_dims.iter().enumerate() {
                if let Some(m) = blocks[i][j] {
                    if m.rows != *rd || m.cols != *cd {
                        return Err(Error::Dimension(format!(
                            "block ({i},{j}) is {}x{}, expected {rd}x{cd}",
                            m.rows, m.cols
                        )));
                    }
                    trip.extend(m.entries().map(|(r, c, v)| (r + r0, c + c0, v.clone())));
                }
                c0 += cd;
            }
            r0 += rd;
        }
        Self::from_triplets(rows, cols, trip)
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }

    /// Coordinate text format: `rows cols nnz` header, then `row col value` lines
    /// with rational values written as `p/q`.
    pub fn to_coordinate_text(&self) -> String {
        let mut s = format!("{} {} {}\n", self.rows, self.cols, self.nnz());
        let mut trip: Vec<_> = self.entries().collect();
        trip.sort_by_key(|(r, c, _)| (*r, *c));
        for (r, c, v) in trip {
            match v.as_rational() {
                Some(q) => s.push_str(&format!("{r} {c} {}/{}\n", q.numer(), q.denom())),
                None => s.push_str(&format!("{r} {c} {v}\n")),
            }
        }
        s
    }
}

/// Rank over the fraction field.
///
/// Rational matrices are eliminated fraction-free over the integers with
/// primitive-row normalization; cyclotomic matrices use field elimination.
pub fn rank(m: &SparseMatrix) -> usize {
    let rational = m.entries().all(|(_, _, v)| v.as_rational().is_some());
    if rational {
        integer_rank(m)
    } else {
        field_rank(m)
    }
}

type IntRow = Vec<(usize, BigInt)>;

fn primitive_integer_column(col: &[(usize, Scalar)]) -> IntRow {
    let mut den = BigInt::one();
    for (_, v) in col {
        den = den.lcm(v.as_rational().unwrap().denom());
    }
    let mut row: IntRow = col
        .iter()
        .map(|(r, v)| {
            let q = v.as_rational().unwrap();
            (*r, q.numer() * (&den / q.denom()))
        })
        .collect();
    make_primitive(&mut row);
    row
}

fn make_primitive(row: &mut IntRow) {
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() {
        return;
    }
    if row[0].1.is_negative() {
        g = -g;
    }
    for (_, v) in row.iter_mut() {
        *v = &*v / &g;
    }
}

fn integer_rank(m: &SparseMatrix) -> usize {
    // pivots keyed by leading index
    let mut pivots: BTreeMap<usize, IntRow> = BTreeMap::new();
    let mut vectors: Vec<IntRow> =
        m.columns.iter().filter(|c| !c.is_empty()).map(|c| primitive_integer_column(c)).collect();
    // sparse vectors first keeps fill-in low
    vectors.sort_by_key(Vec::len);
    for mut v in vectors {
        loop {
            let Some(&(lead, _)) = v.first() else { break };
            match pivots.get(&lead) {
                None => {
                    pivots.insert(lead, v);
                    break;
                }
                Some(p) => {
                    v = combine_int(&v, p);
                    make_primitive(&mut v);
                }
            }
        }
    }
    pivots.len()
}

/// `p_lead * v - v_lead * p`, which cancels the common leading entry.
fn combine_int(v: &IntRow, p: &IntRow) -> IntRow {
    let a = &v[0].1;
    let b = &p[0].1;
    let g = a.gcd(b);
    let (fa, fb) = (b / &g, a / &g);
    let mut out = Vec::with_capacity(v.len() + p.len());
    let (mut i, mut j) = (1, 1);
    while i < v.len() || j < p.len() {
        let take_v = j >= p.len() || (i < v.len() && v[i].0 < p[j].0);
        let take_p = i >= v.len() || (j < p.len() && p[j].0 < v[i].0);
        if take_v {
            out.push((v[i].0, &v[i].1 * &fa));
            i += 1;
        } else if take_p {
            out.push((p[j].0, -(&p[j].1 * &fb)));
            j += 1;
        } else {
            let x = &v[i].1 * &fa - &p[j].1 * &fb;
            if !x.is_zero() {
                out.push((v[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

type FieldRow = Vec<(usize, Scalar)>;

fn field_rank(m: &SparseMatrix) -> usize {
    let mut pivots: BTreeMap<usize, FieldRow> = BTreeMap::new();
    let mut vectors: Vec<FieldRow> = m.columns.iter().filter(|c| !c.is_empty()).cloned().collect();
    vectors.sort_by_key(Vec::len);
    for mut v in vectors {
        loop {
            let Some((lead, _)) = v.first().cloned() else { break };
            match pivots.get(&lead) {
                None => {
                    let inv = v[0].1.inv().expect("nonzero lead");
                    for (_, x) in v.iter_mut() {
                        *x = &*x * &inv;
                    }
                    pivots.insert(lead, v);
                    break;
                }
                Some(p) => {
                    let a = v[0].1.clone();
                    v = axpy_field(&v, p, &a);
                }
            }
        }
    }
    pivots.len()
}

/// `v - a * p` with `p` monic at the shared leading index.
fn axpy_field(v: &FieldRow, p: &FieldRow, a: &Scalar) -> FieldRow {
    let mut acc: BTreeMap<usize, Scalar> = v.iter().skip(1).cloned().collect();
    for (k, x) in p.iter().skip(1) {
        *acc.entry(*k).or_default() -= &(a * x);
    }
    acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
}

/// Basis of the null space, as dense coordinate vectors of length `m.cols()`.
pub fn kernel_basis(m: &SparseMatrix) -> Vec<Vec<Scalar>> {
    let (rref, pivot_cols) = reduced_row_echelon(m);
    let n = m.cols();
    let is_pivot: Vec<Option<usize>> = {
        let mut v = vec![None; n];
        for (i, c) in pivot_cols.iter().enumerate() {
            v[*c] = Some(i);
        }
        v
    };
    let mut out = Vec::new();
    for free in 0..n {
        if is_pivot[free].is_some() {
            continue;
        }
        let mut v = vec![Scalar::zero(); n];
        v[free] = Scalar::one();
        for (i, pc) in pivot_cols.iter().enumerate() {
            if let Some(x) = rref[i].get(&free) {
                v[*pc] = -x;
            }
        }
        out.push(v);
    }
    out
}

/// Sparse RREF by rows; returns the nonzero rows and their pivot columns.
fn reduced_row_echelon(m: &SparseMatrix) -> (Vec<BTreeMap<usize, Scalar>>, Vec<usize>) {
    let mut rows: Vec<BTreeMap<usize, Scalar>> = vec![BTreeMap::new(); m.rows()];
    for (r, c, v) in m.entries() {
        rows[r].insert(c, v.clone());
    }
    rows.retain(|r| !r.is_empty());
    let mut done: Vec<BTreeMap<usize, Scalar>> = Vec::new();
    let mut pivot_cols: Vec<usize> = Vec::new();
    for mut row in rows {
        // reduce against existing pivots
        for (p, pc) in done.iter().zip(&pivot_cols) {
            if let Some(a) = row.get(pc).cloned() {
                for (k, x) in p {
                    let e = row.entry(*k).or_default();
                    *e -= &(&a * x);
                }
                row.retain(|_, x| !x.is_zero());
            }
        }
        let Some((&lead, a)) = row.iter().next() else { continue };
        let inv = a.inv().expect("nonzero");
        for x in row.values_mut() {
            *x = &*x * &inv;
        }
        // back-substitute into earlier rows
        for p in done.iter_mut() {
            if let Some(b) = p.get(&lead).cloned() {
                for (k, x) in &row {
                    let e = p.entry(*k).or_default();
                    *e -= &(&b * x);
                }
                p.retain(|_, x| !x.is_zero());
            }
        }
        done.push(row);
        pivot_cols.push(lead);
    }
    (done, pivot_cols)
}

/// `dim ker(outgoing) - rank(incoming)` at the middle space of
/// `incoming -> V -> outgoing`, after checking that the composite vanishes.
pub fn homology_dim(outgoing: &SparseMatrix, incoming: &SparseMatrix) -> Result<usize> {
    if outgoing.cols() != incoming.rows() {
        return Err(Error::Dimension(format!(
            "outgoing has {} columns, incoming has {} rows",
            outgoing.cols(),
            incoming.rows()
        )));
    }
    for c in 0..incoming.cols() {
        if !outgoing.apply_sparse(incoming.column(c)).is_empty() {
            return Err(Error::NotAComplex { witness: c });
        }
    }
    let ro = outgoing.rank();
    let ri = incoming.rank();
    Ok(outgoing.cols() - ro - ri)
}

/// Inverse of a small dense square matrix (rows of entries) by
/// Gauss–Jordan elimination.
pub fn invert_dense(m: &[Vec<Scalar>]) -> Result<Vec<Vec<Scalar>>> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension("matrix is not square".into()));
    }
    let mut a: Vec<Vec<Scalar>> = m.to_vec();
    let mut inv: Vec<Vec<Scalar>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect()).collect();
    for col in 0..n {
        let piv = (col..n).find(|r| !a[*r][col].is_zero()).ok_or(Error::DivisionByZero)?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let f = a[col][col].inv()?;
        for j in 0..n {
            a[col][j] = &a[col][j] * &f;
            inv[col][j] = &inv[col][j] * &f;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let c = a[r][col].clone();
            for j in 0..n {
                let (x, y) = (&a[col][j] * &c, &inv[col][j] * &c);
                a[r][j] -= &x;
                inv[r][j] -= &y;
            }
        }
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> SparseMatrix {
        let dense: Vec<Vec<Scalar>> =
            rows.iter().map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect();
        SparseMatrix::from_dense(&dense)
    }

    #[test]
    fn ranks() {
        assert_eq!(SparseMatrix::zero(3, 3).rank(), 0);
        assert_eq!(SparseMatrix::identity(4).rank(), 4);
        assert_eq!(m(&[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn cyclotomic_rank() {
        let z = Scalar::root_of_unity(3, 1);
        let z2 = &z * &z;
        // rows (1, z) and (z, z^2) are dependent
        let a = SparseMatrix::from_dense(&[vec![Scalar::one(), z.clone()], vec![z.clone(), z2]]);
        assert_eq!(a.rank(), 1);
        let b = SparseMatrix::from_dense(&[vec![Scalar::one(), z.clone()], vec![z, Scalar::one()]]);
        assert_eq!(b.rank(), 2);
    }

    #[test]
    fn kernels() {
        assert!(kernel_basis(&SparseMatrix::identity(2)).is_empty());
        assert_eq!(kernel_basis(&SparseMatrix::zero(1, 3)).len(), 3);
        let a = m(&[&[1, 1, 0]]);
        let k = kernel_basis(&a);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(a.apply(v).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn homology_dims() {
        let z = SparseMatrix::zero(5, 5);
        assert_eq!(homology_dim(&z, &z).unwrap(), 5);
        // Q --(1,1)--> Q^2 --(1,-1)--> Q, exact in the middle
        let inc = m(&[&[1], &[1]]);
        let out = m(&[&[1, -1]]);
        assert_eq!(homology_dim(&out, &inc).unwrap(), 0);
        let bad = m(&[&[1, 0]]);
        assert!(matches!(homology_dim(&bad, &inc), Err(Error::NotAComplex { witness: 0 })));
    }

    #[test]
    fn coordinate_export() {
        let a = SparseMatrix::from_dense(&[vec![Scalar::from_frac(1, 2), Scalar::zero()]]);
        assert_eq!(a.to_coordinate_text(), "1 2 1\n0 0 1/2\n");
    }
}
