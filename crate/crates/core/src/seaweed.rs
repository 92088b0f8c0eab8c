//! Standard seaweeds `q ⊆ gl_n` given by two compositions of `n`.
//!
//! The first composition gives the upper flag `V_i = ⟨e_1..e_{A_i}⟩`, the
//! second the lower flag `V'_j = ⟨e_{n−B_j+1}..e_n⟩`, with `A`, `B` the
//! cumulative sums. Coordinates are 0-based internally.

use std::fmt;
use std::str::FromStr;

use num::Zero;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::builder::build_M;
use crate::diagram::ArrowDiagram;
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, rat, Rational, RationalMatrix, SparseSystem};
use crate::quiver::{Arrow, Edge, TypeAQuiver};
use crate::rep::{DeltaVector, Frame, Label, Representation};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Composition(Vec<usize>);

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Composition("no parts".into()));
        }
        if parts.contains(&0) {
            return Err(Error::Composition("parts must be positive".into()));
        }
        Ok(Composition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.iter().sum()
    }

    /// `0 = C_0 < C_1 < … < C_k = n`.
    pub fn cumulative(&self) -> Vec<usize> {
        let mut out = vec![0];
        for p in &self.0 {
            out.push(out.last().unwrap() + p);
        }
        out
    }

    /// All `2^{n−1}` compositions of `n ≥ 1`, ordered by the bitmask of cuts.
    pub fn all(n: usize) -> Vec<Composition> {
        assert!(n >= 1, "compositions of zero are not supported");
        (0..1u64 << (n - 1))
            .map(|mask| {
                let mut parts = Vec::new();
                let mut run = 1;
                for k in 0..n - 1 {
                    if mask >> k & 1 == 1 {
                        parts.push(run);
                        run = 1;
                    } else {
                        run += 1;
                    }
                }
                parts.push(run);
                Composition(parts)
            })
            .collect()
    }
}

impl TryFrom<Vec<usize>> for Composition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Composition::new(v)
    }
}

impl From<Composition> for Vec<usize> {
    fn from(c: Composition) -> Self {
        c.0
    }
}

impl FromStr for Composition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Composition(format!("bad part {p:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Composition::new(parts)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(usize::to_string).collect();
        f.write_str(&s.join(","))
    }
}

/// Block decomposition `gl_n = ⊕ Hom(E_t, E_s)` adapted to both flags.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockData {
    pub n: usize,
    /// `0 = m_0 < m_1 < … < m_l = n`
    pub breakpoints: Vec<usize>,
    /// `e_s = m_s − m_{s−1}`
    pub sizes: Vec<usize>,
    /// smallest `i` with `A_i ≥ m_s`
    pub u: Vec<usize>,
    /// smallest `j` with `B_j ≥ n − m_{s−1}`
    pub l: Vec<usize>,
    /// `Y_s = E_p ⊕ … ⊕ E_q` as 0-based block indices `(p, q)`
    pub y: Vec<(usize, usize)>,
}

impl BlockData {
    pub fn new(a: &Composition, b: &Composition) -> Result<Self> {
        let n = a.n();
        if b.n() != n {
            return Err(Error::SumMismatch(n, b.n()));
        }
        let ca = a.cumulative();
        let cb = b.cumulative();
        let mut breakpoints: Vec<usize> = ca.iter().copied().chain(cb.iter().map(|&x| n - x)).collect();
        breakpoints.sort_unstable();
        breakpoints.dedup();
        let blocks = breakpoints.len() - 1;
        let sizes: Vec<usize> = breakpoints.windows(2).map(|w| w[1] - w[0]).collect();
        let mut u = Vec::with_capacity(blocks);
        let mut l = Vec::with_capacity(blocks);
        let mut y = Vec::with_capacity(blocks);
        for s in 1..=blocks {
            let us = ca.iter().position(|&x| x >= breakpoints[s]).unwrap();
            let ls = cb.iter().position(|&x| x >= n - breakpoints[s - 1]).unwrap();
            let (lo, hi) = (n - cb[ls], ca[us]);
            let p = breakpoints.iter().position(|&x| x == lo).unwrap();
            let q = breakpoints.iter().position(|&x| x == hi).unwrap() - 1;
            u.push(us);
            l.push(ls);
            y.push((p, q));
        }
        Ok(BlockData {
            n,
            breakpoints,
            sizes,
            u,
            l,
            y,
        })
    }

    pub fn block_count(&self) -> usize {
        self.sizes.len()
    }

    pub fn block_of(&self, coord: usize) -> usize {
        self.breakpoints.partition_point(|&m| m <= coord) - 1
    }

    /// Global coordinate of frame label `(t, c)`.
    pub fn coordinate(&self, label: Label) -> usize {
        self.breakpoints[label.0] + label.1
    }

    pub fn y_dim(&self, s: usize) -> usize {
        let (p, q) = self.y[s];
        self.breakpoints[q + 1] - self.breakpoints[p]
    }
}

/// Report for one composition pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeaweedReport {
    pub n: usize,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub orientation: String,
    pub e: Vec<usize>,
    pub d: Vec<usize>,
    pub dim_q: usize,
    pub dim_l: usize,
    pub dim_n: usize,
    pub ad_rank: usize,
    pub verified: bool,
    pub richardson: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seaweed {
    pub a: Composition,
    pub b: Composition,
    pub blocks: BlockData,
    quiver: TypeAQuiver,
}

impl Seaweed {
    pub fn new(a: Composition, b: Composition) -> Result<Self> {
        let blocks = BlockData::new(&a, &b)?;
        let edges = (0..blocks.block_count().saturating_sub(1))
            .map(|s| {
                if blocks.l[s] == blocks.l[s + 1] {
                    Edge::Right
                } else if blocks.u[s] == blocks.u[s + 1] {
                    Edge::Left
                } else {
                    Edge::Absent
                }
            })
            .collect();
        let quiver = TypeAQuiver::new(edges);
        let sw = Seaweed { a, b, blocks, quiver };
        // the R^α frame of e must list exactly the blocks of each Y_s
        let frame = Frame::new(&sw.quiver, &sw.blocks.sizes);
        for (v, &(p, q)) in sw.blocks.y.iter().enumerate() {
            let mut blocks: Vec<usize> = frame.labels(v).iter().map(|l| l.0).collect();
            blocks.dedup();
            blocks.sort_unstable();
            blocks.dedup();
            if blocks != (p..=q).filter(|&t| sw.blocks.sizes[t] > 0).collect::<Vec<_>>()
                || frame.labels(v).len() != sw.blocks.y_dim(v)
            {
                return Err(Error::Shape(format!("frame at vertex {} does not match Y", v + 1)));
            }
        }
        Ok(sw)
    }

    pub fn from_parts(a: &[usize], b: &[usize]) -> Result<Self> {
        Seaweed::new(Composition::new(a.to_vec())?, Composition::new(b.to_vec())?)
    }

    pub fn n(&self) -> usize {
        self.blocks.n
    }

    pub fn quiver(&self) -> &TypeAQuiver {
        &self.quiver
    }

    pub fn e(&self) -> DeltaVector {
        self.blocks.sizes.clone()
    }

    pub fn d(&self) -> Vec<usize> {
        (0..self.blocks.block_count()).map(|s| self.blocks.y_dim(s)).collect()
    }

    /// `(dim q, dim l, dim n)`.
    pub fn dims(&self) -> (usize, usize, usize) {
        let e = self.e();
        let d = self.d();
        let q: usize = e.iter().zip(&d).map(|(a, b)| a * b).sum();
        let l: usize = e.iter().map(|x| x * x).sum();
        (q, l, q - l)
    }

    /// Matrix unit `E_{rc}` lies in `q`: the row block is inside `Y` of the column block.
    pub fn in_q(&self, r: usize, c: usize) -> bool {
        let (p, q) = self.blocks.y[self.blocks.block_of(c)];
        (p..=q).contains(&self.blocks.block_of(r))
    }

    pub fn in_n(&self, r: usize, c: usize) -> bool {
        self.in_q(r, c) && self.blocks.block_of(r) != self.blocks.block_of(c)
    }

    /// Matrix units of `q`: blocks in (row block, column block) order, row-major inside.
    pub fn q_basis(&self) -> Vec<(usize, usize)> {
        let bp = &self.blocks.breakpoints;
        let k = self.blocks.block_count();
        let mut out = Vec::new();
        for rb in 0..k {
            for cb in 0..k {
                let (p, q) = self.blocks.y[cb];
                if !(p..=q).contains(&rb) {
                    continue;
                }
                for r in bp[rb]..bp[rb + 1] {
                    for c in bp[cb]..bp[cb + 1] {
                        out.push((r, c));
                    }
                }
            }
        }
        out
    }

    pub fn n_basis(&self) -> Vec<(usize, usize)> {
        self.q_basis()
            .into_iter()
            .filter(|&(r, c)| self.blocks.block_of(r) != self.blocks.block_of(c))
            .collect()
    }

    fn check_square(&self, x: &RationalMatrix) -> Result<()> {
        if x.shape() != (self.n(), self.n()) {
            return Err(Error::Shape(format!("expected a {0}x{0} matrix", self.n())));
        }
        Ok(())
    }

    pub fn is_in_nilradical(&self, x: &RationalMatrix) -> bool {
        if x.shape() != (self.n(), self.n()) {
            return false;
        }
        (0..self.n()).all(|r| (0..self.n()).all(|c| x[(r, c)].is_zero() || self.in_n(r, c)))
    }

    /// Rank of `z ↦ [x, z]` on `q`, images in matrix-unit coordinates of `gl_n`.
    fn ad_map_rank(&self, x: &RationalMatrix) -> usize {
        let n = self.n();
        let mut sys = SparseSystem::new(n * n);
        for (u, v) in self.q_basis() {
            // [x, E_uv] = Σ_k x_ku E_kv − Σ_k x_vk E_uk
            let mut row = Vec::new();
            for k in 0..n {
                if !x[(k, u)].is_zero() {
                    row.push((k * n + v, x[(k, u)].clone()));
                }
                if !x[(v, k)].is_zero() {
                    row.push((u * n + k, -x[(v, k)].clone()));
                }
            }
            sys.push_row(row);
        }
        sys.rank()
    }

    pub fn ad_rank(&self, x: &RationalMatrix) -> Result<usize> {
        self.check_square(x)?;
        if !self.is_in_nilradical(x) {
            return Err(Error::NotInNilradical);
        }
        Ok(self.ad_map_rank(x))
    }

    /// `dim q^x`, the centraliser of `x` in `q`.
    pub fn stabilizer_dim(&self, x: &RationalMatrix) -> Result<usize> {
        self.check_square(x)?;
        Ok(self.dims().0 - self.ad_map_rank(x))
    }

    pub fn arrow_diagram(&self) -> Result<ArrowDiagram> {
        Ok(ArrowDiagram::from_decomposition(&build_M(&self.quiver, &self.e())?))
    }

    pub fn richardson_matrix(&self) -> Result<Vec<Vec<i64>>> {
        Ok(self.arrow_diagram()?.richardson())
    }

    pub fn verify(&self) -> Result<SeaweedReport> {
        let x = self.richardson_matrix()?;
        let (dim_q, dim_l, dim_n) = self.dims();
        let xm = RationalMatrix::from_i64_rows(&x);
        let (ad_rank, verified) = if self.is_in_nilradical(&xm) {
            let r = self.ad_map_rank(&xm);
            (r, r == dim_n)
        } else {
            (self.ad_map_rank(&xm), false)
        };
        Ok(SeaweedReport {
            n: self.n(),
            a: self.a.parts().to_vec(),
            b: self.b.parts().to_vec(),
            orientation: self.quiver.orientation_string(),
            e: self.e(),
            d: self.d(),
            dim_q,
            dim_l,
            dim_n,
            ad_rank,
            verified,
            richardson: x,
        })
    }

    /// Φ: the R^α representation whose `β` is `x` restricted to `Y_t` and
    /// projected onto `Y_s`, for each α from `s` to `t`.
    pub fn rep_from_nilpotent(&self, x: &RationalMatrix) -> Result<Representation> {
        self.check_square(x)?;
        if !self.is_in_nilradical(x) {
            return Err(Error::NotInNilradical);
        }
        let b = &self.blocks;
        Ok(Frame::assemble(&self.quiver, &b.sizes, |_, row, col| {
            x[(b.coordinate(row), b.coordinate(col))].clone()
        }))
    }

    /// Φ⁻¹: column `v ∈ E_i` of `x` is the sum of the β's leaving `i` applied to `v`.
    pub fn nilpotent_from_rep(&self, m: &Representation) -> Result<RationalMatrix> {
        if m.quiver() != &self.quiver {
            return Err(Error::Shape("representation over a different quiver".into()));
        }
        let frame = m.r_alpha_frame().ok_or(Error::NotRAlpha)?;
        if frame.dims() != self.d() || m.raw_delta_dim().as_deref() != Some(&self.blocks.sizes[..]) {
            return Err(Error::NotRAlpha);
        }
        let b = &self.blocks;
        let mut x = RationalMatrix::zeros(self.n(), self.n());
        for e in 0..self.quiver.edges().len() {
            let Some((s, t)) = self.quiver.alpha_ends(e) else { continue };
            let beta = m.map(Arrow::Beta(e));
            for (j, col) in frame.labels(t).iter().enumerate() {
                if col.0 != t {
                    continue;
                }
                for (i, row) in frame.labels(s).iter().enumerate() {
                    let (r, c) = (b.coordinate(*row), b.coordinate(*col));
                    let v = &x[(r, c)] + &beta[(i, j)];
                    x[(r, c)] = v;
                }
            }
        }
        Ok(x)
    }

    /// Integer point of `n` with entries drawn from `-bound..=bound`.
    pub fn random_nilradical<R: Rng + ?Sized>(&self, rng: &mut R, bound: i64) -> RationalMatrix {
        let n = self.n();
        let mut x = RationalMatrix::zeros(n, n);
        for (r, c) in self.n_basis() {
            x[(r, c)] = rat(rng.gen_range(-bound..=bound));
        }
        x
    }

    /// Random Δ-filtered point of `R^α` with Δ-dimension `e`.
    pub fn random_rep<R: Rng + ?Sized>(&self, rng: &mut R, bound: i64) -> Representation {
        random_r_alpha(&self.quiver, &self.blocks.sizes, rng, bound)
    }
}

pub fn block_data(a: &Composition, b: &Composition) -> Result<BlockData> {
    BlockData::new(a, b)
}

pub fn verify_richardson(a: &Composition, b: &Composition) -> Result<SeaweedReport> {
    Seaweed::new(a.clone(), b.clone())?.verify()
}

/// Random integer combination of a basis of the relation-satisfying β's on
/// the R^α frame of `d`.
pub fn random_r_alpha<R: Rng + ?Sized>(q: &TypeAQuiver, d: &[usize], rng: &mut R, bound: i64) -> Representation {
    let frame = Frame::new(q, d);
    // unknowns: every β entry, edge by edge, row-major
    let mut slots: Vec<(usize, Label, Label)> = Vec::new();
    for e in 0..q.edges().len() {
        let Some((s, t)) = q.alpha_ends(e) else { continue };
        for &r in frame.labels(s) {
            for &c in frame.labels(t) {
                slots.push((e, r, c));
            }
        }
    }
    let relations = q.relations();
    let columns: Vec<Vec<Rational>> = slots
        .iter()
        .map(|&slot| {
            let m = Frame::assemble(q, d, |e, r, c| {
                if (e, r, c) == slot {
                    rat(1)
                } else {
                    rat(0)
                }
            });
            let mut out = Vec::new();
            for rel in &relations {
                let v = m.evaluate(rel);
                for i in 0..v.rows() {
                    out.extend(v.row(i).iter().cloned());
                }
            }
            out
        })
        .collect();
    let rows = columns.first().map_or(0, Vec::len);
    let a = RationalMatrix::from_fn(rows, slots.len(), |i, j| columns[j][i].clone());
    let k = kernel_basis(&a);
    let coeffs: Vec<Rational> = (0..k.cols()).map(|_| rat(rng.gen_range(-bound..=bound))).collect();
    let values: Vec<Rational> = (0..slots.len())
        .map(|i| (0..k.cols()).fold(Rational::zero(), |acc, j| acc + &k[(i, j)] * &coeffs[j]))
        .collect();
    Frame::assemble(q, d, |e, r, c| {
        let i = slots.iter().position(|&x| x == (e, r, c)).unwrap();
        values[i].clone()
    })
}
