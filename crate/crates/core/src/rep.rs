//! Representations of the double quiver and the R^α normal form.

use std::collections::HashMap;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{image_intersection_dim, rank, solve, Rational, RationalMatrix};
use crate::quiver::{Arrow, Relation, TypeAQuiver};

pub type DeltaVector = Vec<usize>;

/// A basis vector of an R^α representation: the `copy`-th Δ(`origin`) factor.
pub type Label = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    quiver: TypeAQuiver,
    dims: Vec<usize>,
    alpha: Vec<Option<RationalMatrix>>,
    beta: Vec<Option<RationalMatrix>>,
}

impl Representation {
    /// Validates that every matrix matches the dimensions at its endpoints.
    pub fn new(
        quiver: TypeAQuiver,
        dims: Vec<usize>,
        alpha: Vec<Option<RationalMatrix>>,
        beta: Vec<Option<RationalMatrix>>,
    ) -> Result<Self> {
        let n = quiver.vertex_count();
        if dims.len() != n {
            return Err(Error::Length { expected: n, got: dims.len() });
        }
        if alpha.len() != n - 1 || beta.len() != n - 1 {
            return Err(Error::Shape(format!("expected {} maps per family", n - 1)));
        }
        for e in 0..n - 1 {
            match (quiver.alpha_ends(e), &alpha[e], &beta[e]) {
                (None, None, None) => {}
                (Some((s, t)), Some(a), Some(b)) => {
                    if a.shape() != (dims[t], dims[s]) || b.shape() != (dims[s], dims[t]) {
                        return Err(Error::Shape(format!("maps on edge {} do not match dims", e + 1)));
                    }
                }
                _ => return Err(Error::Shape(format!("edge {} maps inconsistent with orientation", e + 1))),
            }
        }
        Ok(Representation { quiver, dims, alpha, beta })
    }

    /// All maps zero.
    pub fn zero(quiver: TypeAQuiver, dims: Vec<usize>) -> Self {
        let n = quiver.vertex_count();
        assert_eq!(dims.len(), n);
        let mut alpha = Vec::with_capacity(n - 1);
        let mut beta = Vec::with_capacity(n - 1);
        for e in 0..n - 1 {
            match quiver.alpha_ends(e) {
                None => {
                    alpha.push(None);
                    beta.push(None);
                }
                Some((s, t)) => {
                    alpha.push(Some(RationalMatrix::zeros(dims[t], dims[s])));
                    beta.push(Some(RationalMatrix::zeros(dims[s], dims[t])));
                }
            }
        }
        Representation { quiver, dims, alpha, beta }
    }

    pub fn quiver(&self) -> &TypeAQuiver {
        &self.quiver
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn alpha(&self, e: usize) -> Option<&RationalMatrix> {
        self.alpha[e].as_ref()
    }

    pub fn beta(&self, e: usize) -> Option<&RationalMatrix> {
        self.beta[e].as_ref()
    }

    /// Panics for arrows on absent edges.
    pub fn map(&self, a: Arrow) -> &RationalMatrix {
        match a {
            Arrow::Alpha(e) => self.alpha[e].as_ref(),
            Arrow::Beta(e) => self.beta[e].as_ref(),
        }
        .expect("arrow on an absent edge")
    }

    pub fn set_map(&mut self, a: Arrow, m: RationalMatrix) {
        let (s, t) = self.quiver.arrow_ends(a).expect("arrow on an absent edge");
        assert_eq!(m.shape(), (self.dims[t], self.dims[s]), "shape mismatch for {a}");
        match a {
            Arrow::Alpha(e) => self.alpha[e] = Some(m),
            Arrow::Beta(e) => self.beta[e] = Some(m),
        }
    }

    pub fn evaluate(&self, r: &Relation) -> RationalMatrix {
        let mut acc = RationalMatrix::zeros(self.dims[r.target], self.dims[r.source]);
        for t in &r.terms {
            let p = self.map(t.second).mul(self.map(t.first));
            acc = if t.sign > 0 { acc.add(&p) } else { acc.sub(&p) };
        }
        acc
    }

    pub fn check_relations(&self) -> bool {
        self.quiver.relations().iter().all(|r| self.evaluate(r).is_zero())
    }

    /// α's injective with independent images; relation failures are errors.
    pub fn is_delta_filtered(&self) -> Result<bool> {
        if !self.check_relations() {
            return Err(Error::RelationsViolated);
        }
        Ok(self.alpha_condition())
    }

    fn alpha_condition(&self) -> bool {
        for e in 0..self.alpha.len() {
            if let Some(a) = &self.alpha[e] {
                if rank(a) != a.cols() {
                    return false;
                }
            }
        }
        for v in 0..self.dims.len() {
            let inc = self.quiver.incoming_alpha(v);
            if inc.len() == 2 {
                let a = self.map(Arrow::Alpha(inc[0]));
                let b = self.map(Arrow::Alpha(inc[1]));
                if image_intersection_dim(a, b) != 0 {
                    return false;
                }
            }
        }
        true
    }

    pub fn delta_dim(&self) -> Result<DeltaVector> {
        if !self.is_delta_filtered()? {
            return Err(Error::NotDeltaFiltered);
        }
        self.raw_delta_dim().ok_or(Error::NotDeltaFiltered)
    }

    /// `dims_v − Σ dims` over α-sources into `v`, without any checks.
    pub fn raw_delta_dim(&self) -> Option<DeltaVector> {
        (0..self.dims.len())
            .map(|v| {
                let inc: usize = self.quiver.predecessors(v).iter().map(|&u| self.dims[u]).sum();
                self.dims[v].checked_sub(inc)
            })
            .collect()
    }

    /// Conjugate by invertible `g_v` (columns = new basis in old coordinates).
    pub fn base_change(&self, g: &[RationalMatrix]) -> Result<Representation> {
        let inv: Vec<RationalMatrix> = g
            .iter()
            .map(|m| m.inverse().ok_or_else(|| Error::Shape("base change not invertible".into())))
            .collect::<Result<_>>()?;
        let mut out = self.clone();
        for a in self.quiver.arrows() {
            let (s, t) = self.quiver.arrow_ends(a).unwrap();
            out.set_map(a, inv[t].mul(self.map(a)).mul(&g[s]));
        }
        Ok(out)
    }

    /// The frame of the Δ-dimension vector, or `None` when some α is not the
    /// standard inclusion of that frame.
    pub fn r_alpha_frame(&self) -> Option<Frame> {
        let d = self.raw_delta_dim()?;
        let frame = Frame::new(&self.quiver, &d);
        for e in 0..self.alpha.len() {
            if let Some(a) = &self.alpha[e] {
                if *a != frame.inclusion(&self.quiver, e) {
                    return None;
                }
            }
        }
        Some(frame)
    }

    pub fn is_r_alpha(&self) -> bool {
        self.r_alpha_frame().is_some()
    }

    /// Base-change a Δ-filtered representation into R^α form.
    pub fn to_r_alpha(&self) -> Result<Representation> {
        if self.is_r_alpha() {
            return Ok(self.clone());
        }
        self.delta_dim()?;
        let q = &self.quiver;
        let mut g: Vec<Option<RationalMatrix>> = vec![None; self.dims.len()];
        for v in q.alpha_order() {
            let mut cols = RationalMatrix::zeros(self.dims[v], 0);
            for e in q.incoming_alpha(v) {
                let u = q.alpha_ends(e).unwrap().0;
                let img = self.map(Arrow::Alpha(e)).mul(g[u].as_ref().unwrap());
                cols = cols.hstack(&img);
            }
            g[v] = Some(complete_basis(cols));
        }
        let g: Vec<RationalMatrix> = g.into_iter().map(Option::unwrap).collect();
        self.base_change(&g)
    }

    /// Restriction to subspaces given by column bases; `None` if not a subrepresentation.
    pub fn subrepresentation(&self, bases: &[RationalMatrix]) -> Option<Representation> {
        let q = self.quiver.clone();
        let dims: Vec<usize> = bases.iter().map(RationalMatrix::cols).collect();
        let mut out = Representation::zero(q.clone(), dims);
        for a in q.arrows() {
            let (s, t) = q.arrow_ends(a).unwrap();
            let img = self.map(a).mul(&bases[s]);
            out.set_map(a, solve(&bases[t], &img)?);
        }
        Some(out)
    }

    /// Quotient by a subrepresentation given by column bases.
    pub fn quotient(&self, bases: &[RationalMatrix]) -> Representation {
        let q = self.quiver.clone();
        let full: Vec<RationalMatrix> = bases.iter().map(|b| complete_basis(b.clone())).collect();
        let dims: Vec<usize> = bases
            .iter()
            .zip(&self.dims)
            .map(|(b, &n)| n - b.cols())
            .collect();
        let mut out = Representation::zero(q.clone(), dims.clone());
        for a in q.arrows() {
            let (s, t) = q.arrow_ends(a).unwrap();
            let ks = bases[s].cols();
            let kt = bases[t].cols();
            let comp: Vec<usize> = (ks..self.dims[s]).collect();
            let img = self.map(a).mul(&full[s].select_columns(&comp));
            let coords = solve(&full[t], &img).expect("complete basis spans");
            let rows: Vec<usize> = (kt..self.dims[t]).collect();
            out.set_map(a, coords.select_rows(&rows));
        }
        out
    }

    /// Smallest subrepresentation containing the given vectors at each vertex.
    pub fn generated_subspaces(&self, generators: &[RationalMatrix]) -> Vec<RationalMatrix> {
        let q = &self.quiver;
        let mut spans: Vec<RationalMatrix> = generators.iter().map(column_basis).collect();
        loop {
            let mut changed = false;
            for a in q.arrows() {
                let (s, t) = q.arrow_ends(a).unwrap();
                if spans[s].cols() == 0 {
                    continue;
                }
                let img = self.map(a).mul(&spans[s]);
                let joined = column_basis(&spans[t].hstack(&img));
                if joined.cols() > spans[t].cols() {
                    spans[t] = joined;
                    changed = true;
                }
            }
            if !changed {
                return spans;
            }
        }
    }

    /// Direct sum, in R^α form when both summands are.
    pub fn direct_sum(&self, other: &Representation) -> Result<Representation> {
        if self.quiver != other.quiver {
            return Err(Error::Shape("direct sum over different quivers".into()));
        }
        let a = self.to_r_alpha()?;
        let b = other.to_r_alpha()?;
        let da = a.raw_delta_dim().unwrap();
        let db = b.raw_delta_dim().unwrap();
        let d: DeltaVector = da.iter().zip(&db).map(|(x, y)| x + y).collect();
        let pa = LabelIndex::new(&a);
        let pb = LabelIndex::new(&b);
        Ok(Frame::assemble(&self.quiver, &d, |e, row, col| {
            let (ka, ca) = row;
            let (kb, cb) = col;
            let in_a = ca < da[ka];
            if in_a != (cb < da[kb]) {
                return Rational::zero();
            }
            if in_a {
                pa.beta_entry(&a, e, row, col)
            } else {
                pb.beta_entry(&b, e, (ka, ca - da[ka]), (kb, cb - da[kb]))
            }
        }))
    }

    pub fn direct_sum_all(parts: &[Representation], quiver: &TypeAQuiver) -> Result<Representation> {
        let mut acc = Representation::zero(quiver.clone(), vec![0; quiver.vertex_count()]);
        for p in parts {
            acc = acc.direct_sum(p)?;
        }
        Ok(acc)
    }
}

/// A basis of the column space, as columns.
pub fn column_basis(m: &RationalMatrix) -> RationalMatrix {
    let mut keep = Vec::new();
    let mut acc = RationalMatrix::zeros(m.rows(), 0);
    for j in 0..m.cols() {
        let cand = acc.hstack(&m.select_columns(&[j]));
        if rank(&cand) > acc.cols() {
            acc = cand;
            keep.push(j);
        }
    }
    acc
}

/// Extend independent columns to a basis with standard unit vectors.
pub fn complete_basis(cols: RationalMatrix) -> RationalMatrix {
    let n = cols.rows();
    let mut acc = cols;
    for k in 0..n {
        if acc.cols() == n {
            break;
        }
        let unit = RationalMatrix::from_fn(n, 1, |i, _| {
            if i == k {
                Rational::one()
            } else {
                Rational::zero()
            }
        });
        let cand = acc.hstack(&unit);
        if rank(&cand) == cand.cols() {
            acc = cand;
        }
    }
    assert_eq!(acc.cols(), n, "columns were not independent");
    acc
}

/// Coordinate labels of the R^α normal form for a Δ-dimension vector.
///
/// At `v` the coordinates are the labels of each α-predecessor (ordered by
/// vertex), followed by `d_v` fresh labels `(v, 0..d_v)`. With this layout
/// every α is a coordinate inclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    labels: Vec<Vec<Label>>,
}

impl Frame {
    pub fn new(q: &TypeAQuiver, d: &[usize]) -> Self {
        assert_eq!(d.len(), q.vertex_count());
        let mut labels: Vec<Vec<Label>> = vec![Vec::new(); d.len()];
        for v in q.alpha_order() {
            let mut l = Vec::new();
            for u in q.predecessors(v) {
                l.extend(labels[u].iter().copied());
            }
            l.extend((0..d[v]).map(|c| (v, c)));
            labels[v] = l;
        }
        Frame { labels }
    }

    pub fn labels(&self, v: usize) -> &[Label] {
        &self.labels[v]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.labels.iter().map(Vec::len).collect()
    }

    pub fn position(&self, v: usize, l: Label) -> Option<usize> {
        self.labels[v].iter().position(|&x| x == l)
    }

    /// The standard inclusion realising `α_e`.
    pub fn inclusion(&self, q: &TypeAQuiver, e: usize) -> RationalMatrix {
        let (s, t) = q.alpha_ends(e).expect("present edge");
        let mut m = RationalMatrix::zeros(self.labels[t].len(), self.labels[s].len());
        for (j, l) in self.labels[s].iter().enumerate() {
            let i = self.position(t, *l).expect("predecessor labels are included");
            m[(i, j)] = Rational::one();
        }
        m
    }

    /// R^α representation whose `β_e` entry at (row label, column label) is
    /// given by `beta`. Rows live at the α-source, columns at the α-target.
    pub fn assemble(
        q: &TypeAQuiver,
        d: &[usize],
        mut beta: impl FnMut(usize, Label, Label) -> Rational,
    ) -> Representation {
        let frame = Frame::new(q, d);
        let mut rep = Representation::zero(q.clone(), frame.dims());
        for e in 0..q.vertex_count() - 1 {
            let Some((s, t)) = q.alpha_ends(e) else { continue };
            rep.set_map(Arrow::Alpha(e), frame.inclusion(q, e));
            let b = RationalMatrix::from_fn(frame.labels[s].len(), frame.labels[t].len(), |i, j| {
                beta(e, frame.labels[s][i], frame.labels[t][j])
            });
            rep.set_map(Arrow::Beta(e), b);
        }
        rep
    }
}

/// Label → coordinate lookup for an R^α representation.
pub struct LabelIndex {
    pos: Vec<HashMap<Label, usize>>,
}

impl LabelIndex {
    pub fn new(m: &Representation) -> Self {
        let frame = m.r_alpha_frame().expect("R^alpha representation");
        let pos = frame
            .labels
            .iter()
            .map(|l| l.iter().enumerate().map(|(i, &x)| (x, i)).collect())
            .collect();
        LabelIndex { pos }
    }

    pub fn position(&self, v: usize, l: Label) -> Option<usize> {
        self.pos[v].get(&l).copied()
    }

    /// `β_e` entry of `m` at the given labels, zero when a label is absent.
    pub fn beta_entry(&self, m: &Representation, e: usize, row: Label, col: Label) -> Rational {
        let (s, t) = m.quiver().alpha_ends(e).expect("present edge");
        match (self.position(s, row), self.position(t, col)) {
            (Some(i), Some(j)) => m.map(Arrow::Beta(e))[(i, j)].clone(),
            _ => Rational::zero(),
        }
    }
}

/// Δ(i): one dimension on every vertex α-reachable from `i`, β's zero.
pub fn verma(q: &TypeAQuiver, i: usize) -> Representation {
    let mut d = vec![0; q.vertex_count()];
    d[i] = 1;
    Frame::assemble(q, &d, |_, _, _| Rational::zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn example() -> TypeAQuiver {
        "<,>,>,<".parse().unwrap()
    }

    #[test]
    fn verma_examples() {
        let q = example();
        assert_eq!(verma(&q, 1).dims(), &[1, 1, 1, 1, 0]);
        assert_eq!(verma(&q, 4).dims(), &[0, 0, 0, 1, 1]);
        assert_eq!(verma(&q, 3).dims(), &[0, 0, 0, 1, 0]);
        for i in 0..5 {
            let m = verma(&q, i);
            assert!(m.check_relations());
            assert!(m.is_delta_filtered().unwrap());
            let mut unit = vec![0; 5];
            unit[i] = 1;
            assert_eq!(m.delta_dim().unwrap(), unit);
        }
    }

    #[test]
    fn zero_alpha_is_not_filtered() {
        let q = TypeAQuiver::linear(2, crate::quiver::Edge::Right);
        let m = Representation::zero(q, vec![1, 1]);
        assert!(m.check_relations());
        assert!(!m.is_delta_filtered().unwrap());
    }

    #[test]
    fn relation_failure_is_distinct() {
        let q = TypeAQuiver::linear(2, crate::quiver::Edge::Right);
        let mut m = verma(&q, 0);
        m.set_map(Arrow::Beta(0), RationalMatrix::from_i64_rows(&[vec![1]]));
        assert_eq!(m.is_delta_filtered(), Err(Error::RelationsViolated));
    }

    #[test]
    fn base_change_then_normalize() {
        let q = example();
        let m = verma(&q, 1).direct_sum(&verma(&q, 2)).unwrap();
        assert_eq!(m.dims(), &[1, 1, 2, 2, 0]);
        let g: Vec<RationalMatrix> = m
            .dims()
            .iter()
            .map(|&n| RationalMatrix::from_fn(n, n, |i, j| rat(if i <= j { 1 + (i + 2 * j) as i64 } else { 0 })))
            .collect();
        let moved = m.base_change(&g).unwrap();
        assert!(moved.is_delta_filtered().unwrap());
        assert!(!moved.is_r_alpha() || moved == m);
        let back = moved.to_r_alpha().unwrap();
        assert!(back.is_r_alpha());
        assert_eq!(back.delta_dim().unwrap(), vec![0, 1, 1, 0, 0]);
    }

    #[test]
    fn frame_layout() {
        let q = example();
        let f = Frame::new(&q, &[1, 2, 1, 3, 2]);
        assert_eq!(f.dims(), vec![3, 2, 3, 8, 2]);
        assert_eq!(f.labels(3)[..3], [(1, 0), (1, 1), (2, 0)]);
    }
}
