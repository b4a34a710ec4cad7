//! Sparse integer matrices and unit-pivot elimination.
//!
//! Boundary matrices of order complexes are large, have `±1` entries, and
//! eliminate almost entirely with unit pivots. Pivoting on a unit keeps the
//! elementary divisors unchanged (the Schur complement carries the rest), so
//! only the leftover block without unit entries goes through dense Smith
//! normal form. Coefficients start as checked `i64`; an overflow restarts the
//! computation over `BigInt`.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};
use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::linalg::{invariant_factors, smith_normal_form_full, IntegerMatrix};

/// Column-compressed integer matrix; each column sorted by row index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: Vec<Vec<(u32, i64)>>,
}

impl SparseMatrix {
    pub fn new(rows: usize) -> Self {
        SparseMatrix { rows, cols: Vec::new() }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols: vec![Vec::new(); cols] }
    }

    pub fn push_column(&mut self, mut entries: Vec<(u32, i64)>) {
        entries.sort_unstable_by_key(|e| e.0);
        let mut merged: Vec<(u32, i64)> = Vec::with_capacity(entries.len());
        for (r, v) in entries {
            assert!((r as usize) < self.rows, "row {r} out of range");
            match merged.last_mut() {
                Some(last) if last.0 == r => last.1 += v,
                _ => merged.push((r, v)),
            }
        }
        merged.retain(|e| e.1 != 0);
        self.cols.push(merged);
    }

    pub fn from_dense(m: &IntegerMatrix) -> Self {
        let mut s = SparseMatrix::new(m.rows());
        for j in 0..m.cols() {
            let col = (0..m.rows())
                .filter(|&i| !m[(i, j)].is_zero())
                .map(|i| (i as u32, m[(i, j)].to_i64().expect("entry fits in i64")))
                .collect();
            s.push_column(col);
        }
        s
    }

    pub fn to_dense(&self) -> IntegerMatrix {
        let mut m = IntegerMatrix::zeros(self.rows, self.cols.len());
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, v) in col {
                m[(i as usize, j)] = BigInt::from(v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &[(u32, i64)] {
        &self.cols[j]
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut by_row: Vec<Vec<(u32, i64)>> = vec![Vec::new(); self.rows];
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, v) in col {
                by_row[i as usize].push((j as u32, v));
            }
        }
        SparseMatrix { rows: self.cols.len(), cols: by_row }
    }

    /// Product `self · other`.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols(), other.rows, "dimension mismatch in product");
        let mut out = SparseMatrix::new(self.rows);
        for col in &other.cols {
            let mut acc: HashMap<u32, i64> = HashMap::new();
            for &(k, b) in col {
                for &(i, a) in &self.cols[k as usize] {
                    *acc.entry(i).or_default() += a * b;
                }
            }
            out.push_column(acc.into_iter().collect());
        }
        out
    }

    /// Rank and elementary divisors greater than one.
    pub fn elementary_divisors(&self) -> EliminationSummary {
        match eliminate::<i64>(self) {
            Some(s) => s,
            None => eliminate::<BigInt>(self).expect("big integers never overflow"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationSummary {
    pub rank: usize,
    /// Elementary divisors `> 1`, in divisibility order.
    pub torsion: Vec<BigInt>,
    /// Size of the block left for dense Smith normal form.
    pub residual: (usize, usize),
}

pub(crate) trait Coeff: Clone + Debug + PartialEq {
    fn c_zero() -> Self;
    fn from_i64(x: i64) -> Self;
    fn c_is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    /// `self - k·x`, `None` on overflow.
    fn sub_mul(&self, k: &Self, x: &Self) -> Option<Self>;
    fn mul(&self, x: &Self) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl Coeff for i64 {
    fn c_zero() -> Self {
        0
    }
    fn from_i64(x: i64) -> Self {
        x
    }
    fn c_is_zero(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn sub_mul(&self, k: &Self, x: &Self) -> Option<Self> {
        self.checked_sub(k.checked_mul(*x)?)
    }
    fn mul(&self, x: &Self) -> Option<Self> {
        self.checked_mul(*x)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Coeff for BigInt {
    fn c_zero() -> Self {
        Zero::zero()
    }
    fn from_i64(x: i64) -> Self {
        BigInt::from(x)
    }
    fn c_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn sub_mul(&self, k: &Self, x: &Self) -> Option<Self> {
        Some(self - k * x)
    }
    fn mul(&self, x: &Self) -> Option<Self> {
        Some(self * x)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

type Row<T> = Vec<(u32, T)>;

/// `target - k·pivot_row`, merging sorted rows.
fn row_sub<T: Coeff>(target: &Row<T>, k: &T, pivot: &Row<T>) -> Option<Row<T>> {
    let mut out = Vec::with_capacity(target.len() + pivot.len());
    let (mut a, mut b) = (0, 0);
    while a < target.len() || b < pivot.len() {
        let ca = target.get(a).map(|e| e.0);
        let cb = pivot.get(b).map(|e| e.0);
        match (ca, cb) {
            (Some(x), Some(y)) if x == y => {
                let v = target[a].1.sub_mul(k, &pivot[b].1)?;
                if !v.c_is_zero() {
                    out.push((x, v));
                }
                a += 1;
                b += 1;
            }
            (Some(x), Some(y)) if x < y => {
                out.push(target[a].clone());
                a += 1;
            }
            (Some(_), None) => {
                out.push(target[a].clone());
                a += 1;
            }
            _ => {
                let v = T::c_zero().sub_mul(k, &pivot[b].1)?;
                out.push((pivot[b].0, v));
                b += 1;
            }
        }
    }
    Some(out)
}

fn eliminate<T: Coeff>(m: &SparseMatrix) -> Option<EliminationSummary> {
    let nrows = m.rows;
    let ncols = m.cols();
    let mut rows: Vec<Row<T>> = vec![Vec::new(); nrows];
    let mut cols: Vec<Vec<u32>> = vec![Vec::new(); ncols];
    for (j, col) in m.cols.iter().enumerate() {
        for &(i, v) in col {
            rows[i as usize].push((j as u32, T::from_i64(v)));
            cols[j].push(i);
        }
    }
    let mut done = vec![false; ncols];
    let mut heap: BinaryHeap<Reverse<(u32, u32)>> =
        (0..ncols).map(|j| Reverse((cols[j].len() as u32, j as u32))).collect();
    let mut rank = 0usize;
    let mut touched: Vec<u32> = Vec::new();

    while let Some(Reverse((count, j))) = heap.pop() {
        let j = j as usize;
        if done[j] || cols[j].len() as u32 != count {
            continue;
        }
        if count == 0 {
            done[j] = true;
            continue;
        }
        let pivot_row = cols[j]
            .iter()
            .copied()
            .filter(|&r| {
                let row = &rows[r as usize];
                let pos = row.binary_search_by_key(&(j as u32), |e| e.0).expect("column index consistent");
                row[pos].1.is_unit()
            })
            .min_by_key(|&r| rows[r as usize].len());
        let Some(p) = pivot_row else {
            continue;
        };
        let prow = std::mem::take(&mut rows[p as usize]);
        let pval = prow[prow.binary_search_by_key(&(j as u32), |e| e.0).unwrap()].1.clone();
        let others: Vec<u32> = cols[j].iter().copied().filter(|&r| r != p).collect();
        touched.clear();
        for r in others {
            let row = &rows[r as usize];
            let a = &row[row.binary_search_by_key(&(j as u32), |e| e.0).unwrap()].1;
            // pivot is ±1, its inverse is itself
            let k = a.mul(&pval)?;
            let new_row = row_sub(row, &k, &prow)?;
            // keep column membership in sync with the new sparsity pattern
            let old = std::mem::replace(&mut rows[r as usize], new_row);
            sync_columns(&old, &rows[r as usize], r, &mut cols, &mut touched);
        }
        for &(c, _) in &prow {
            let list = &mut cols[c as usize];
            if let Some(pos) = list.iter().position(|&x| x == p) {
                list.swap_remove(pos);
            }
            touched.push(c);
        }
        done[j] = true;
        rank += 1;
        touched.sort_unstable();
        touched.dedup();
        for &c in &touched {
            if !done[c as usize] {
                heap.push(Reverse((cols[c as usize].len() as u32, c)));
            }
        }
    }

    let rest_cols: Vec<usize> = (0..ncols).filter(|&j| !done[j] && !cols[j].is_empty()).collect();
    let mut rest_rows: Vec<u32> = rest_cols.iter().flat_map(|&j| cols[j].iter().copied()).collect();
    rest_rows.sort_unstable();
    rest_rows.dedup();
    let col_pos: HashMap<u32, usize> = rest_cols.iter().enumerate().map(|(k, &j)| (j as u32, k)).collect();
    let mut dense = IntegerMatrix::zeros(rest_rows.len(), rest_cols.len());
    for (ri, &r) in rest_rows.iter().enumerate() {
        for (c, v) in &rows[r as usize] {
            if let Some(&ci) = col_pos.get(c) {
                dense[(ri, ci)] = v.to_big();
            }
        }
    }
    let factors = invariant_factors(&dense);
    Some(EliminationSummary {
        rank: rank + factors.len(),
        torsion: factors.into_iter().filter(|d| !d.is_one()).collect(),
        residual: (rest_rows.len(), rest_cols.len()),
    })
}

fn sync_columns<T>(old: &Row<T>, new: &Row<T>, r: u32, cols: &mut [Vec<u32>], touched: &mut Vec<u32>) {
    let (mut a, mut b) = (0, 0);
    loop {
        let ca = old.get(a).map(|e| e.0);
        let cb = new.get(b).map(|e| e.0);
        match (ca, cb) {
            (None, None) => break,
            (Some(x), Some(y)) if x == y => {
                a += 1;
                b += 1;
            }
            (Some(x), Some(y)) if x < y => {
                remove_from(&mut cols[x as usize], r);
                touched.push(x);
                a += 1;
            }
            (Some(x), None) => {
                remove_from(&mut cols[x as usize], r);
                touched.push(x);
                a += 1;
            }
            (_, Some(y)) => {
                cols[y as usize].push(r);
                touched.push(y);
                b += 1;
            }
        }
    }
}

fn remove_from(list: &mut Vec<u32>, r: u32) {
    if let Some(pos) = list.iter().position(|&x| x == r) {
        list.swap_remove(pos);
    }
}

/// Normal forms in the quotient `Z^dim / L` of a lattice given by generators.
///
/// Generators are reduced incrementally; a reduced generator with a unit
/// entry becomes a new pivot, anything else is set aside and handled by a
/// dense Smith form at the end. Coordinates of a vector are its reduced free
/// (non-pivot) part, pushed through that Smith form.
#[derive(Clone, Debug)]
pub struct LatticeQuotient {
    dim: usize,
    pivot_of: Vec<Option<u32>>,
    basis: Vec<(u32, HashMap<u32, BigInt>)>,
    leftovers: Vec<HashMap<u32, BigInt>>,
    free_coords: Vec<u32>,
    /// Row transform of the leftover Smith form, restricted to the free part.
    transform: Option<IntegerMatrix>,
    /// Representatives of the free summands, as dense vectors.
    representatives: Vec<Vec<BigInt>>,
    torsion: Vec<BigInt>,
    skip: usize,
}

impl LatticeQuotient {
    pub fn new<I>(dim: usize, generators: I) -> Self
    where
        I: IntoIterator<Item = Vec<(u32, i64)>>,
    {
        let mut q = LatticeQuotient {
            dim,
            pivot_of: vec![None; dim],
            basis: Vec::new(),
            leftovers: Vec::new(),
            free_coords: Vec::new(),
            transform: None,
            representatives: Vec::new(),
            torsion: Vec::new(),
            skip: 0,
        };
        for g in generators {
            let v: HashMap<u32, BigInt> = g.into_iter().filter(|e| e.1 != 0).map(|(i, x)| (i, BigInt::from(x))).collect();
            q.insert(v);
        }
        q.finish();
        q
    }

    fn reduce_vec(&self, mut v: HashMap<u32, BigInt>) -> HashMap<u32, BigInt> {
        let mut heap: BinaryHeap<Reverse<u32>> =
            v.keys().filter_map(|&c| self.pivot_of[c as usize]).map(Reverse).collect();
        while let Some(Reverse(b)) = heap.pop() {
            let (p, ref vec) = self.basis[b as usize];
            let Some(k) = v.get(&p).cloned() else { continue };
            if k.is_zero() {
                v.remove(&p);
                continue;
            }
            // basis pivots are ±1
            let k = &k * &vec[&p];
            for (c, x) in vec {
                let slot = v.entry(*c).or_default();
                let was_zero = slot.is_zero();
                *slot -= &k * x;
                if slot.is_zero() {
                    v.remove(c);
                } else if was_zero {
                    if let Some(b2) = self.pivot_of[*c as usize] {
                        heap.push(Reverse(b2));
                    }
                }
            }
        }
        v
    }

    fn insert(&mut self, v: HashMap<u32, BigInt>) {
        let v = self.reduce_vec(v);
        if v.is_empty() {
            return;
        }
        match v.iter().filter(|(_, x)| x.abs().is_one()).map(|(c, _)| *c).min() {
            Some(p) => {
                self.pivot_of[p as usize] = Some(self.basis.len() as u32);
                self.basis.push((p, v));
            }
            None => self.leftovers.push(v),
        }
    }

    fn finish(&mut self) {
        let leftovers = std::mem::take(&mut self.leftovers);
        let reduced: Vec<HashMap<u32, BigInt>> =
            leftovers.into_iter().map(|v| self.reduce_vec(v)).filter(|v| !v.is_empty()).collect();
        self.free_coords = (0..self.dim as u32).filter(|&c| self.pivot_of[c as usize].is_none()).collect();
        let f = self.free_coords.len();
        let pos: HashMap<u32, usize> = self.free_coords.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        if reduced.is_empty() {
            self.representatives = self
                .free_coords
                .iter()
                .map(|&c| {
                    let mut v = vec![BigInt::zero(); self.dim];
                    v[c as usize] = BigInt::one();
                    v
                })
                .collect();
            return;
        }
        let mut r = IntegerMatrix::zeros(f, reduced.len());
        for (j, v) in reduced.iter().enumerate() {
            for (c, x) in v {
                r[(pos[c], j)] = x.clone();
            }
        }
        let snf = smith_normal_form_full(&r);
        self.skip = snf.rank;
        self.torsion = snf.torsion();
        for k in snf.rank..f {
            let mut v = vec![BigInt::zero(); self.dim];
            for (i, &c) in self.free_coords.iter().enumerate() {
                v[c as usize] = snf.u_inv[(i, k)].clone();
            }
            self.representatives.push(v);
        }
        self.transform = Some(snf.u);
        self.leftovers = reduced;
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Rank of the free part of the quotient.
    pub fn free_rank(&self) -> usize {
        self.free_coords.len() - self.skip
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    /// Whether every generator was eliminated by a unit pivot.
    pub fn is_unit_triangular(&self) -> bool {
        self.leftovers.is_empty()
    }

    /// Vectors whose classes form a basis of the free part.
    pub fn representatives(&self) -> &[Vec<BigInt>] {
        &self.representatives
    }

    /// Coordinates of the class of a sparse vector in the free part.
    pub fn coordinates(&self, v: &[(u32, BigInt)]) -> Vec<BigInt> {
        let map: HashMap<u32, BigInt> = v.iter().filter(|e| !e.1.is_zero()).cloned().collect();
        let reduced = self.reduce_vec(map);
        let free: Vec<BigInt> =
            self.free_coords.iter().map(|c| reduced.get(c).cloned().unwrap_or_default()).collect();
        match &self.transform {
            None => free,
            Some(u) => u.mul_vec(&free).into_iter().skip(self.skip).collect(),
        }
    }

    pub fn coordinates_dense(&self, v: &[BigInt]) -> Vec<BigInt> {
        let sparse: Vec<(u32, BigInt)> =
            v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i as u32, x.clone())).collect();
        self.coordinates(&sparse)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::smith_normal_form;

    fn sparse(rows: &[Vec<i64>]) -> SparseMatrix {
        SparseMatrix::from_dense(&IntegerMatrix::from_i64_rows(rows))
    }

    #[test]
    fn divisors_match_dense() {
        let a = sparse(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let s = a.elementary_divisors();
        assert_eq!(s.rank, 3);
        assert_eq!(s.torsion, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        let b = sparse(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]);
        let s = b.elementary_divisors();
        assert_eq!((s.rank, s.torsion.clone()), (3, vec![BigInt::from(2)]));
        let (d, _, _) = smith_normal_form(&b.to_dense());
        assert_eq!(d.diagonal()[2], BigInt::from(2));
    }

    #[test]
    fn product_and_transpose() {
        let a = sparse(&[vec![1, -1, 0], vec![0, 1, -1]]);
        let b = sparse(&[vec![1], vec![1], vec![1]]);
        assert!(a.mul(&b).is_zero());
        assert_eq!(a.transpose().to_dense(), a.to_dense().transpose());
    }

    #[test]
    fn quotient_of_plane_by_diagonal() {
        // Z^3 / <(1,1,1)>
        let q = LatticeQuotient::new(3, vec![vec![(0, 1), (1, 1), (2, 1)]]);
        assert_eq!(q.free_rank(), 2);
        assert!(q.torsion().is_empty());
        let c = q.coordinates(&[(0, BigInt::one())]);
        let d = q.coordinates(&[(1, BigInt::from(-1)), (2, BigInt::from(-1))]);
        assert_eq!(c, d);
    }

    #[test]
    fn quotient_with_torsion() {
        // Z^2 / <(2,0)> = Z/2 ⊕ Z
        let q = LatticeQuotient::new(2, vec![vec![(0, 2)]]);
        assert_eq!(q.free_rank(), 1);
        assert_eq!(q.torsion(), &[BigInt::from(2)]);
        assert!(!q.is_unit_triangular());
        assert_eq!(q.coordinates(&[(1, BigInt::one())]).len(), 1);
        assert!(q.coordinates(&[(0, BigInt::from(2))]).iter().all(|x| x.is_zero()));
    }
}
