//! Finite-dimensional ℤ-graded spaces, homogeneous block maps, direct sums
//! and flags.
//!
//! Bases are ordered by ascending degree. In a direct sum, basis vectors of
//! equal degree are further ordered by block index.

mod matrix;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::NumError;

pub use matrix::QMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GradedError {
    #[error("graded space must have positive total dimension and no empty degree")]
    EmptySpace,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("block index {index} out of range for a sum of {len} spaces")]
    BlockIndex { index: usize, len: usize },
    #[error("entry ({row},{col}) does not have internal degree {deg}")]
    Inhomogeneous { row: usize, col: usize, deg: i32 },
    #[error("flag is not a partition of the basis: {0}")]
    BadFlag(String),
    #[error(transparent)]
    Num(#[from] NumError),
}

/// `V = ⊕ V^k`, stored as degree → dimension.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedSpace {
    dims: BTreeMap<i32, usize>,
}

impl GradedSpace {
    pub fn new(dims: impl IntoIterator<Item = (i32, usize)>) -> Result<Self, GradedError> {
        let mut map = BTreeMap::new();
        for (k, d) in dims {
            if d == 0 {
                return Err(GradedError::EmptySpace);
            }
            *map.entry(k).or_insert(0) += d;
        }
        if map.is_empty() {
            return Err(GradedError::EmptySpace);
        }
        Ok(Self { dims: map })
    }

    /// `dim` copies of the ground field in degree `k`.
    pub fn concentrated(k: i32, dim: usize) -> Self {
        Self::new([(k, dim)]).expect("positive dimension")
    }

    pub fn dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn dim_of(&self, k: i32) -> usize {
        self.dims.get(&k).copied().unwrap_or(0)
    }

    pub fn degrees(&self) -> impl Iterator<Item = (i32, usize)> + '_ {
        self.dims.iter().map(|(k, d)| (*k, *d))
    }

    /// Degree of each basis vector, in basis order.
    pub fn basis_degrees(&self) -> Vec<i32> {
        self.dims
            .iter()
            .flat_map(|(k, d)| std::iter::repeat_n(*k, *d))
            .collect()
    }

    /// Index of the first basis vector of degree `k`.
    pub fn offset(&self, k: i32) -> usize {
        self.dims.range(..k).map(|(_, d)| d).sum()
    }

    pub fn to_serial(&self) -> SpaceSerial {
        SpaceSerial {
            degrees: self.degrees().map(|(k, dim)| DegreeDim { k, dim }).collect(),
        }
    }

    pub fn from_serial(s: &SpaceSerial) -> Result<Self, GradedError> {
        Self::new(s.degrees.iter().map(|d| (d.k, d.dim)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeDim {
    pub k: i32,
    pub dim: usize,
}

/// `{degrees: [{k, dim}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceSerial {
    pub degrees: Vec<DegreeDim>,
}

impl Serialize for GradedSpace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_serial().serialize(s)
    }
}

impl<'de> Deserialize<'de> for GradedSpace {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = SpaceSerial::deserialize(d)?;
        Self::from_serial(&s).map_err(serde::de::Error::custom)
    }
}

/// A linear map `V → W` raising degree by `deg`, stored as one matrix over
/// the full bases whose nonzero entries all sit in `W^{k+deg} × V^k` blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedHom {
    source: GradedSpace,
    target: GradedSpace,
    deg: i32,
    matrix: QMatrix,
}

impl GradedHom {
    pub fn new(source: GradedSpace, target: GradedSpace, deg: i32, matrix: QMatrix) -> Result<Self, GradedError> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(GradedError::Shape(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim(),
                source.dim()
            )));
        }
        let sd = source.basis_degrees();
        let td = target.basis_degrees();
        for (r, c, _) in matrix.nonzeros() {
            if td[r] - sd[c] != deg {
                return Err(GradedError::Inhomogeneous { row: r, col: c, deg });
            }
        }
        Ok(Self {
            source,
            target,
            deg,
            matrix,
        })
    }

    pub fn zero(source: GradedSpace, target: GradedSpace, deg: i32) -> Self {
        let m = QMatrix::zeros(target.dim(), source.dim());
        Self {
            source,
            target,
            deg,
            matrix: m,
        }
    }

    pub fn identity(space: &GradedSpace) -> Self {
        Self {
            source: space.clone(),
            target: space.clone(),
            deg: 0,
            matrix: QMatrix::identity(space.dim()),
        }
    }

    pub fn source(&self) -> &GradedSpace {
        &self.source
    }

    pub fn target(&self) -> &GradedSpace {
        &self.target
    }

    pub fn degree(&self) -> i32 {
        self.deg
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// The block `W^{k+deg} × V^k`.
    pub fn block(&self, k: i32) -> QMatrix {
        let rows = self.target.dim_of(k + self.deg);
        let cols = self.source.dim_of(k);
        let r0 = self.target.offset(k + self.deg);
        let c0 = self.source.offset(k);
        let mut b = QMatrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                b.set(r, c, self.matrix.get(r0 + r, c0 + c).clone());
            }
        }
        b
    }

    pub fn to_serial(&self) -> HomSerial {
        let blocks = self
            .source
            .degrees()
            .filter(|(k, _)| self.target.dim_of(k + self.deg) > 0)
            .map(|(k, _)| BlockSerial {
                src_deg: k,
                matrix: self.block(k).to_strings(),
            })
            .collect();
        HomSerial { deg: self.deg, blocks }
    }

    pub fn from_serial(source: GradedSpace, target: GradedSpace, s: &HomSerial) -> Result<Self, GradedError> {
        let mut m = QMatrix::zeros(target.dim(), source.dim());
        for b in &s.blocks {
            let blk = QMatrix::from_strings(&b.matrix)?;
            let rows = target.dim_of(b.src_deg + s.deg);
            let cols = source.dim_of(b.src_deg);
            if rows == 0 || cols == 0 {
                return Err(GradedError::Shape(format!("block at degree {} has no room", b.src_deg)));
            }
            if blk.rows() != rows || blk.cols() != cols {
                return Err(GradedError::Shape(format!("block at degree {} has wrong shape", b.src_deg)));
            }
            let r0 = target.offset(b.src_deg + s.deg);
            let c0 = source.offset(b.src_deg);
            for (r, c, v) in blk.nonzeros() {
                m.set(r0 + r, c0 + c, v.clone());
            }
        }
        Self::new(source, target, s.deg, m)
    }
}

/// `{deg, blocks: [{src_deg, matrix}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomSerial {
    pub deg: i32,
    pub blocks: Vec<BlockSerial>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockSerial {
    pub src_deg: i32,
    pub matrix: Vec<Vec<String>>,
}

/// `f ∘ g`.
pub fn hom_compose(f: &GradedHom, g: &GradedHom) -> Result<GradedHom, GradedError> {
    if f.source != g.target {
        return Err(GradedError::Shape("source of f differs from target of g".into()));
    }
    Ok(GradedHom {
        source: g.source.clone(),
        target: f.target.clone(),
        deg: f.deg + g.deg,
        matrix: f.matrix.matmul(&g.matrix),
    })
}

/// `⊕ V_i` with the global index of every block-local basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectSum {
    blocks: Vec<GradedSpace>,
    total: GradedSpace,
    index: Vec<Vec<usize>>,
}

impl DirectSum {
    pub fn new(spaces: &[GradedSpace]) -> Result<Self, GradedError> {
        if spaces.is_empty() {
            return Err(GradedError::EmptySpace);
        }
        let total = GradedSpace::new(spaces.iter().flat_map(|s| s.degrees()))?;
        let mut index: Vec<Vec<usize>> = spaces.iter().map(|s| vec![0; s.dim()]).collect();
        let mut next = 0;
        for (k, _) in total.degrees() {
            for (b, s) in spaces.iter().enumerate() {
                let off = s.offset(k);
                for j in 0..s.dim_of(k) {
                    index[b][off + j] = next;
                    next += 1;
                }
            }
        }
        Ok(Self {
            blocks: spaces.to_vec(),
            total,
            index,
        })
    }

    pub fn total(&self) -> &GradedSpace {
        &self.total
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn block(&self, i: usize) -> &GradedSpace {
        &self.blocks[i]
    }

    /// Global indices of block `i`'s basis, in block-local order.
    pub fn indices(&self, i: usize) -> &[usize] {
        &self.index[i]
    }

    fn check(&self, i: usize) -> Result<(), GradedError> {
        if i >= self.blocks.len() {
            return Err(GradedError::BlockIndex {
                index: i,
                len: self.blocks.len(),
            });
        }
        Ok(())
    }

    /// Places `f: V_col → V_row` into an endomorphism of the sum.
    pub fn embed(&self, f: &GradedHom, row: usize, col: usize) -> Result<GradedHom, GradedError> {
        self.check(row)?;
        self.check(col)?;
        if f.source != self.blocks[col] || f.target != self.blocks[row] {
            return Err(GradedError::Shape("map does not match the chosen blocks".into()));
        }
        let mut m = QMatrix::zeros(self.total.dim(), self.total.dim());
        for (r, c, v) in f.matrix.nonzeros() {
            m.set(self.index[row][r], self.index[col][c], v.clone());
        }
        Ok(GradedHom {
            source: self.total.clone(),
            target: self.total.clone(),
            deg: f.deg,
            matrix: m,
        })
    }

    /// The component `V_col → V_row` of an endomorphism of the sum.
    pub fn block_extract(&self, f: &GradedHom, row: usize, col: usize) -> Result<GradedHom, GradedError> {
        self.check(row)?;
        self.check(col)?;
        if f.source != self.total || f.target != self.total {
            return Err(GradedError::Shape("map is not an endomorphism of the sum".into()));
        }
        let (rs, cs) = (&self.index[row], &self.index[col]);
        let mut m = QMatrix::zeros(rs.len(), cs.len());
        for (r, gr) in rs.iter().enumerate() {
            for (c, gc) in cs.iter().enumerate() {
                m.set(r, c, f.matrix.get(*gr, *gc).clone());
            }
        }
        Ok(GradedHom {
            source: self.blocks[col].clone(),
            target: self.blocks[row].clone(),
            deg: f.deg,
            matrix: m,
        })
    }

    /// Flag on the sum whose lowest layers are block `order[0]`'s layers,
    /// then block `order[1]`'s, and so on.
    pub fn stacked_flag(&self, flags: &[Flag], order: &[usize]) -> Result<Flag, GradedError> {
        if flags.len() != self.blocks.len() {
            return Err(GradedError::BadFlag("one flag per block required".into()));
        }
        let mut layers = Vec::new();
        for b in order {
            self.check(*b)?;
            for layer in &flags[*b].layers {
                layers.push(layer.iter().map(|i| self.index[*b][*i]).collect());
            }
        }
        Flag::new(self.total.dim(), layers)
    }
}

/// Ordered partition of the basis into layers `F₁ ⊂ … ⊂ F_ν` (stored as the
/// successive differences).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Flag {
    dim: usize,
    layers: Vec<Vec<usize>>,
    level: Vec<usize>,
}

impl Flag {
    pub fn new(dim: usize, layers: Vec<Vec<usize>>) -> Result<Self, GradedError> {
        if layers.is_empty() || layers.iter().any(Vec::is_empty) {
            return Err(GradedError::BadFlag("empty layer or no layers".into()));
        }
        let mut level = vec![usize::MAX; dim];
        for (l, layer) in layers.iter().enumerate() {
            for i in layer {
                if *i >= dim {
                    return Err(GradedError::BadFlag(format!("index {i} out of range")));
                }
                if level[*i] != usize::MAX {
                    return Err(GradedError::BadFlag(format!("index {i} repeated")));
                }
                level[*i] = l;
            }
        }
        if level.contains(&usize::MAX) {
            return Err(GradedError::BadFlag("layers do not cover the basis".into()));
        }
        Ok(Self { dim, layers, level })
    }

    /// One basis vector per layer, in basis order.
    pub fn complete(dim: usize) -> Self {
        Self::new(dim, (0..dim).map(|i| vec![i]).collect()).expect("valid complete flag")
    }

    pub fn single_layer(dim: usize) -> Self {
        Self::new(dim, vec![(0..dim).collect()]).expect("valid single-layer flag")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.layers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    pub fn layers(&self) -> &[Vec<usize>] {
        &self.layers
    }

    /// Zero-based layer of basis vector `i`.
    pub fn level(&self, i: usize) -> usize {
        self.level[i]
    }

    /// Whether a nonzero entry at `(row, col)` is allowed in a strictly
    /// lowering map.
    pub fn lowers(&self, row: usize, col: usize) -> bool {
        self.level[row] < self.level[col]
    }
}

impl Serialize for Flag {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.layers.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Flag {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let layers = Vec::<Vec<usize>>::deserialize(d)?;
        let dim = layers.iter().map(Vec::len).sum();
        Flag::new(dim, layers).map_err(serde::de::Error::custom)
    }
}

/// True iff `f` maps each layer into the span of strictly lower layers.
pub fn is_strictly_flag_lowering(f: &GradedHom, flag: &Flag) -> Result<bool, GradedError> {
    if f.source != f.target || flag.dim != f.source.dim() {
        return Err(GradedError::Shape("flag does not live on the map's space".into()));
    }
    Ok(f.matrix.nonzeros().all(|(r, c, _)| flag.lowers(r, c)))
}
