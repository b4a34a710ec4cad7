//! Integer chain complexes, their (co)homology, and induced maps on cohomology.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{smith_normal_form_full, IntegerMatrix};
use crate::sparse::{LatticeQuotient, SparseMatrix};

/// Chain groups `C_k = Z^{dims[k - min_degree]}` with boundaries `∂_k: C_k → C_{k-1}`.
///
/// The boundary out of the lowest degree is zero. An augmented complex puts
/// `Z` in degree `-1`, which makes its homology the reduced homology.
#[derive(Clone, Debug)]
pub struct IntegerChainComplex {
    min_degree: i32,
    dims: Vec<usize>,
    /// `boundaries[i]` is `∂_{min_degree + i + 1}`.
    boundaries: Vec<SparseMatrix>,
    augmented: bool,
}

impl IntegerChainComplex {
    /// `boundaries[i]` must map degree `min_degree + i + 1` to `min_degree + i`.
    pub fn new(min_degree: i32, dims: Vec<usize>, boundaries: Vec<SparseMatrix>, augmented: bool) -> Result<Self> {
        if boundaries.len() + 1 != dims.len().max(1) {
            return Err(Error::InvalidInput(format!(
                "{} chain groups need {} boundary maps, got {}",
                dims.len(),
                dims.len().saturating_sub(1),
                boundaries.len()
            )));
        }
        for (i, b) in boundaries.iter().enumerate() {
            if b.rows() != dims[i] || b.cols() != dims[i + 1] {
                return Err(Error::InvalidInput(format!(
                    "boundary in degree {} has shape {}x{}, expected {}x{}",
                    min_degree + i as i32 + 1,
                    b.rows(),
                    b.cols(),
                    dims[i],
                    dims[i + 1]
                )));
            }
        }
        let c = IntegerChainComplex { min_degree, dims, boundaries, augmented };
        c.check_square_zero()?;
        Ok(c)
    }

    /// The augmented complex of the empty simplicial complex: only `Z` in degree -1.
    pub fn empty_augmented() -> Self {
        IntegerChainComplex { min_degree: -1, dims: vec![1], boundaries: Vec::new(), augmented: true }
    }

    fn check_square_zero(&self) -> Result<()> {
        for i in 1..self.boundaries.len() {
            if !self.boundaries[i - 1].mul(&self.boundaries[i]).is_zero() {
                return Err(Error::NotAComplex(self.min_degree + i as i32 + 1));
            }
        }
        Ok(())
    }

    pub fn min_degree(&self) -> i32 {
        self.min_degree
    }

    pub fn max_degree(&self) -> i32 {
        self.min_degree + self.dims.len() as i32 - 1
    }

    pub fn is_augmented(&self) -> bool {
        self.augmented
    }

    pub fn dim(&self, k: i32) -> usize {
        if k < self.min_degree || k > self.max_degree() {
            0
        } else {
            self.dims[(k - self.min_degree) as usize]
        }
    }

    /// `∂_k`, or `None` when it is the zero map out of/into a zero group.
    pub fn boundary(&self, k: i32) -> Option<&SparseMatrix> {
        let i = k - self.min_degree - 1;
        if i < 0 {
            None
        } else {
            self.boundaries.get(i as usize)
        }
    }

    fn boundary_or_zero(&self, k: i32) -> SparseMatrix {
        self.boundary(k).cloned().unwrap_or_else(|| SparseMatrix::zeros(self.dim(k - 1), self.dim(k)))
    }

    pub fn euler_characteristic(&self) -> i64 {
        (self.min_degree..=self.max_degree())
            .map(|k| if k.rem_euclid(2) == 0 { self.dim(k) as i64 } else { -(self.dim(k) as i64) })
            .sum()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub rank: usize,
    #[serde(serialize_with = "serialize_bigints")]
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

fn serialize_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

/// Free rank and torsion coefficients in every degree of a complex.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HomologySummary {
    pub groups: BTreeMap<i32, HomologyGroup>,
}

impl HomologySummary {
    pub fn group(&self, k: i32) -> HomologyGroup {
        self.groups.get(&k).cloned().unwrap_or_default()
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (i32, &HomologyGroup)> {
        self.groups.iter().filter(|(_, g)| !g.is_zero()).map(|(k, g)| (*k, g))
    }

    pub fn is_torsion_free(&self) -> bool {
        self.groups.values().all(|g| g.torsion.is_empty())
    }
}

/// `H_k = ker ∂_k / im ∂_{k+1}` in every degree.
pub fn homology(c: &IntegerChainComplex) -> HomologySummary {
    let degrees: Vec<i32> = (c.min_degree..=c.max_degree()).collect();
    // rank and divisors of ∂_k for every k that has one
    let elim: BTreeMap<i32, (usize, Vec<BigInt>)> = degrees
        .par_iter()
        .filter_map(|&k| c.boundary(k).map(|b| (k, b.elementary_divisors())))
        .map(|(k, s)| (k, (s.rank, s.torsion)))
        .collect();
    let rank = |k: i32| elim.get(&k).map_or(0, |e| e.0);
    let mut groups = BTreeMap::new();
    for &k in &degrees {
        let free = c.dim(k) - rank(k) - rank(k + 1);
        let torsion = elim.get(&(k + 1)).map(|e| e.1.clone()).unwrap_or_default();
        groups.insert(k, HomologyGroup { rank: free, torsion });
    }
    HomologySummary { groups }
}

/// Cohomology ranks and torsion, via universal coefficients.
pub fn cohomology(c: &IntegerChainComplex) -> HomologySummary {
    let h = homology(c);
    let groups = h
        .groups
        .keys()
        .map(|&k| (k, HomologyGroup { rank: h.group(k).rank, torsion: h.group(k - 1).torsion }))
        .collect();
    HomologySummary { groups }
}

/// A chosen basis for the free part of `H^k`, with a coordinate map for cocycles.
#[derive(Clone, Debug)]
pub struct CohomologyBasis {
    degree: i32,
    dim: usize,
    inner: BasisRepr,
}

#[derive(Clone, Debug)]
enum BasisRepr {
    /// `k` has no outgoing coboundary: `H^k = C^k / im δ_{k-1}`.
    Top(LatticeQuotient),
    Dense {
        /// Rows `r..` of `V⁻¹` from the Smith form of `δ_k`.
        kernel_coords: IntegerMatrix,
        /// Row transform of the Smith form of the coboundaries in kernel coordinates.
        u: IntegerMatrix,
        skip: usize,
        reps: Vec<Vec<BigInt>>,
        delta: IntegerMatrix,
        torsion: Vec<BigInt>,
    },
}

impl CohomologyBasis {
    pub fn compute(c: &IntegerChainComplex, k: i32) -> Self {
        let dim = c.dim(k);
        let into = c.boundary(k);
        let out_of = c.boundary(k + 1);
        let generators = |m: Option<&SparseMatrix>| -> Vec<Vec<(u32, i64)>> {
            // columns of δ_{k-1} = rows of ∂_k
            m.map(|b| b.transpose()).map_or_else(Vec::new, |t| (0..t.cols()).map(|j| t.column(j).to_vec()).collect())
        };
        if out_of.is_none_or(|b| b.is_zero()) {
            return CohomologyBasis { degree: k, dim, inner: BasisRepr::Top(LatticeQuotient::new(dim, generators(into))) };
        }
        let delta = out_of.expect("checked").transpose().to_dense();
        let snf = smith_normal_form_full(&delta);
        let r = snf.rank;
        let kernel_coords = snf.v_inv.row_range(r..dim);
        let kernel = snf.v.columns(r..dim);
        let cob = into.map(|b| b.transpose().to_dense()).unwrap_or_else(|| IntegerMatrix::zeros(dim, 0));
        let y = kernel_coords.mul(&cob);
        let inner_snf = smith_normal_form_full(&y);
        let skip = inner_snf.rank;
        let reps_m = kernel.mul(&inner_snf.u_inv.columns(skip..y.rows()));
        let reps = (0..reps_m.cols()).map(|j| reps_m.column(j)).collect();
        let torsion = inner_snf.torsion();
        CohomologyBasis {
            degree: k,
            dim,
            inner: BasisRepr::Dense { kernel_coords, u: inner_snf.u, skip, reps, delta, torsion },
        }
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn rank(&self) -> usize {
        match &self.inner {
            BasisRepr::Top(q) => q.free_rank(),
            BasisRepr::Dense { reps, .. } => reps.len(),
        }
    }

    pub fn torsion(&self) -> Vec<BigInt> {
        match &self.inner {
            BasisRepr::Top(q) => q.torsion().to_vec(),
            BasisRepr::Dense { torsion, .. } => torsion.clone(),
        }
    }

    /// Cocycles whose classes form the chosen basis of the free part.
    pub fn representatives(&self) -> Vec<Vec<BigInt>> {
        match &self.inner {
            BasisRepr::Top(q) => q.representatives().to_vec(),
            BasisRepr::Dense { reps, .. } => reps.clone(),
        }
    }

    /// Coordinates of `[z]` in the chosen basis (torsion components dropped).
    pub fn coordinates(&self, z: &[BigInt]) -> Result<Vec<BigInt>> {
        if z.len() != self.dim {
            return Err(Error::InvalidInput(format!("cochain of length {} in degree of rank {}", z.len(), self.dim)));
        }
        match &self.inner {
            BasisRepr::Top(q) => Ok(q.coordinates_dense(z)),
            BasisRepr::Dense { kernel_coords, u, skip, delta, .. } => {
                if delta.mul_vec(z).iter().any(|x| !x.is_zero()) {
                    return Err(Error::InvalidInput(format!("cochain is not a cocycle in degree {}", self.degree)));
                }
                let y = kernel_coords.mul_vec(z);
                Ok(u.mul_vec(&y).into_iter().skip(*skip).collect())
            }
        }
    }
}

/// Degreewise maps `f_k: C_k → D_k`, stored over `[min_degree, max_degree]`.
#[derive(Clone, Debug)]
pub struct ChainMap {
    min_degree: i32,
    maps: Vec<SparseMatrix>,
}

impl ChainMap {
    pub fn new(min_degree: i32, maps: Vec<SparseMatrix>) -> Self {
        ChainMap { min_degree, maps }
    }

    pub fn identity(c: &IntegerChainComplex) -> Self {
        let maps = (c.min_degree()..=c.max_degree())
            .map(|k| {
                let n = c.dim(k);
                let mut m = SparseMatrix::new(n);
                for i in 0..n {
                    m.push_column(vec![(i as u32, 1)]);
                }
                m
            })
            .collect();
        ChainMap { min_degree: c.min_degree(), maps }
    }

    pub fn map(&self, k: i32) -> Option<&SparseMatrix> {
        let i = k - self.min_degree;
        if i < 0 {
            None
        } else {
            self.maps.get(i as usize)
        }
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &ChainMap) -> ChainMap {
        assert_eq!(self.min_degree, g.min_degree);
        ChainMap { min_degree: self.min_degree, maps: self.maps.iter().zip(&g.maps).map(|(f, g)| g.mul(f)).collect() }
    }

    /// Checks `∂^D f_k = f_{k-1} ∂^C` in every degree.
    pub fn check(&self, source: &IntegerChainComplex, target: &IntegerChainComplex) -> Result<()> {
        for k in source.min_degree()..=source.max_degree() {
            let f = self.map_or_zero(k, source, target);
            if f.rows() != target.dim(k) || f.cols() != source.dim(k) {
                return Err(Error::NotChainMap(k));
            }
            let lhs = target.boundary_or_zero(k).mul(&f);
            let rhs = self.map_or_zero(k - 1, source, target).mul(&source.boundary_or_zero(k));
            if lhs.to_dense() != rhs.to_dense() {
                return Err(Error::NotChainMap(k));
            }
        }
        Ok(())
    }

    fn map_or_zero(&self, k: i32, source: &IntegerChainComplex, target: &IntegerChainComplex) -> SparseMatrix {
        self.map(k).cloned().unwrap_or_else(|| SparseMatrix::zeros(target.dim(k), source.dim(k)))
    }
}

/// Matrix of `f^*: H^k(D) → H^k(C)` for a chain map `f: C → D`, in the bases
/// chosen by [`CohomologyBasis::compute`]. Column `j` is the image of the
/// `j`-th basis class of `H^k(D)`.
pub fn induced_map_on_cohomology(
    f: &ChainMap,
    source: &IntegerChainComplex,
    target: &IntegerChainComplex,
    k: i32,
) -> Result<IntegerMatrix> {
    f.check(source, target)?;
    let bc = CohomologyBasis::compute(source, k);
    let bd = CohomologyBasis::compute(target, k);
    induced_map_with_bases(f, &bc, &bd, source, target, k)
}

/// As [`induced_map_on_cohomology`], reusing precomputed bases and skipping the chain-map check.
pub fn induced_map_with_bases(
    f: &ChainMap,
    source_basis: &CohomologyBasis,
    target_basis: &CohomologyBasis,
    source: &IntegerChainComplex,
    target: &IntegerChainComplex,
    k: i32,
) -> Result<IntegerMatrix> {
    let fk = f.map_or_zero(k, source, target);
    let reps = target_basis.representatives();
    let mut columns = Vec::with_capacity(reps.len());
    for z in &reps {
        // (f^T z)_s = Σ_t f_{t s} z_t
        let pulled: Vec<BigInt> = (0..fk.cols())
            .map(|s| fk.column(s).iter().map(|&(t, v)| &z[t as usize] * v).sum())
            .collect();
        columns.push(source_basis.coordinates(&pulled)?);
    }
    Ok(IntegerMatrix::from_columns(source_basis.rank(), &columns))
}
