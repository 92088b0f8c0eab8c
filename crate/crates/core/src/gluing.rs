//! Gluing at sources and sinks, splitting, and the orders `≥_i`.

use std::fmt;

use num::One;
use serde::{Deserialize, Serialize};

use crate::builder::Segment;
use crate::error::{Error, Result};
use crate::homology::{hom_basis, top_dims};
use crate::linalg::{rank, Rational, RationalMatrix};
use crate::quiver::TypeAQuiver;
use crate::rep::{DeltaVector, Frame, LabelIndex, Representation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GlueKind {
    /// pushout along `Δ(i)^c`
    SourceGlue,
    /// pullback over `Δ(i)^c`
    SinkGlue,
}

/// The gluing kind an admissible vertex supports; isolated vertices count as sources.
pub fn glue_kind(q: &TypeAQuiver, i: usize) -> Option<GlueKind> {
    if q.is_source(i) {
        Some(GlueKind::SourceGlue)
    } else if q.is_sink(i) {
        Some(GlueKind::SinkGlue)
    } else {
        None
    }
}

fn kind_matches(q: &TypeAQuiver, i: usize, kind: GlueKind) -> bool {
    match kind {
        GlueKind::SourceGlue => q.is_source(i),
        GlueKind::SinkGlue => q.is_sink(i),
    }
}

/// Sorted vertex set (0-based); displays 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SupportSet(Vec<usize>);

impl SupportSet {
    pub fn new(mut v: Vec<usize>) -> Self {
        v.sort_unstable();
        v.dedup();
        SupportSet(v)
    }

    /// From 1-based vertex labels.
    pub fn from_labels(labels: &[usize]) -> Self {
        SupportSet::new(labels.iter().map(|&x| x - 1).collect())
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn labels(&self) -> Vec<usize> {
        self.0.iter().map(|v| v + 1).collect()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_subset(&self, other: &SupportSet) -> bool {
        self.0.iter().all(|v| other.contains(*v))
    }

    pub fn union(&self, other: &SupportSet) -> SupportSet {
        SupportSet::new(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn indicator(&self, n: usize) -> DeltaVector {
        let mut d = vec![0; n];
        for &v in &self.0 {
            d[v] = 1;
        }
        d
    }
}

impl fmt::Display for SupportSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l: Vec<String> = self.labels().iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", l.join(","))
    }
}

impl Serialize for SupportSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.labels().serialize(s)
    }
}

impl<'de> Deserialize<'de> for SupportSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let labels = Vec::<usize>::deserialize(d)?;
        if labels.contains(&0) {
            return Err(serde::de::Error::custom("vertex labels start at 1"));
        }
        Ok(SupportSet::from_labels(&labels))
    }
}

/// The segment pieces a glued summand was assembled from, by segment index.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SummandHistory {
    pub pieces: Vec<(usize, SupportSet)>,
}

impl SummandHistory {
    pub fn single(segment: usize, j: SupportSet) -> Self {
        SummandHistory {
            pieces: vec![(segment, j)],
        }
    }

    pub fn piece(&self, segment: usize) -> Option<&SupportSet> {
        self.pieces.iter().find(|(s, _)| *s == segment).map(|(_, j)| j)
    }

    pub fn support(&self) -> SupportSet {
        self.pieces
            .iter()
            .fold(SupportSet::default(), |acc, (_, j)| acc.union(j))
    }

    pub fn extended(&self, segment: usize, j: SupportSet) -> Self {
        let mut out = self.clone();
        out.pieces.push((segment, j));
        out
    }
}

fn check_support(d: &[usize], allowed: impl Fn(usize) -> bool, what: &str) -> Result<()> {
    match d.iter().enumerate().find(|&(v, &x)| x > 0 && !allowed(v)) {
        Some((v, _)) => Err(Error::Support(format!("{what} has Delta support at vertex {}", v + 1))),
        None => Ok(()),
    }
}

/// Glue `m1` (Δ-support in `{..=i}`) and `m2` (Δ-support in `{i..}`) at `i`.
///
/// Both are brought to R^α form first. In the label layout the pushout at a
/// source and the pullback at a sink reduce to taking every β on edges left of
/// `i` from `m1` and every β right of `i` from `m2`; at a sink the free labels
/// `(i, c)` are shared and each side's β ignores the other side's block.
pub fn glue_at(m1: &Representation, m2: &Representation, i: usize, kind: GlueKind) -> Result<Representation> {
    let q = m1.quiver().clone();
    if m2.quiver() != &q {
        return Err(Error::Shape("gluing representations over different quivers".into()));
    }
    q.check_vertex(i)?;
    if !kind_matches(&q, i, kind) {
        return Err(Error::NotAdmissible(i));
    }
    let a = m1.to_r_alpha()?;
    let b = m2.to_r_alpha()?;
    let da = a.raw_delta_dim().unwrap();
    let db = b.raw_delta_dim().unwrap();
    check_support(&da, |v| v <= i, "left module")?;
    check_support(&db, |v| v >= i, "right module")?;
    if da[i] != db[i] || da[i] == 0 {
        return Err(Error::Multiplicity {
            vertex: i,
            left: da[i],
            right: db[i],
        });
    }
    let c = da[i];
    let mut d: DeltaVector = da.iter().zip(&db).map(|(x, y)| x + y).collect();
    d[i] -= c;
    let ia = LabelIndex::new(&a);
    let ib = LabelIndex::new(&b);
    Ok(Frame::assemble(&q, &d, |e, row, col| {
        if e < i {
            ia.beta_entry(&a, e, row, col)
        } else {
            ib.beta_entry(&b, e, row, col)
        }
    }))
}

fn unit_columns(n: usize, cols: impl Iterator<Item = usize>) -> RationalMatrix {
    let cols: Vec<usize> = cols.collect();
    let mut m = RationalMatrix::zeros(n, cols.len());
    for (j, &c) in cols.iter().enumerate() {
        m[(c, j)] = Rational::one();
    }
    m
}

/// Split `m` at an admissible vertex into pieces supported left and right of `i`.
pub fn split_at(m: &Representation, i: usize) -> Result<(Representation, Representation)> {
    let q = m.quiver().clone();
    q.check_vertex(i)?;
    let kind = glue_kind(&q, i).ok_or(Error::NotAdmissible(i))?;
    let d = m.delta_dim()?;
    if d[i] == 0 {
        return Err(Error::Multiplicity {
            vertex: i,
            left: 0,
            right: 0,
        });
    }
    let m = m.to_r_alpha()?;
    let n = q.vertex_count();
    let dims = m.dims().to_vec();
    let (left, right) = match kind {
        GlueKind::SourceGlue => {
            // Δ(i)^{d_i} is the submodule generated by M_i
            let gens: Vec<RationalMatrix> = (0..n)
                .map(|v| {
                    if v == i {
                        RationalMatrix::identity(dims[v])
                    } else {
                        RationalMatrix::zeros(dims[v], 0)
                    }
                })
                .collect();
            let s = m.generated_subspaces(&gens);
            let pre = |keep: &dyn Fn(usize) -> bool| -> Vec<RationalMatrix> {
                (0..n)
                    .map(|v| if keep(v) { RationalMatrix::identity(dims[v]) } else { s[v].clone() })
                    .collect()
            };
            let l = m
                .subrepresentation(&pre(&|v| v < i))
                .ok_or_else(|| Error::Shape("left preimage is not a submodule".into()))?;
            let r = m
                .subrepresentation(&pre(&|v| v > i))
                .ok_or_else(|| Error::Shape("right preimage is not a submodule".into()))?;
            (l, r)
        }
        GlueKind::SinkGlue => {
            let side = |keep: &dyn Fn(usize) -> bool| -> Vec<RationalMatrix> {
                let gens: Vec<RationalMatrix> = (0..n)
                    .map(|v| {
                        if keep(v) {
                            unit_columns(dims[v], 0..dims[v])
                        } else {
                            RationalMatrix::zeros(dims[v], 0)
                        }
                    })
                    .collect();
                m.generated_subspaces(&gens)
            };
            let l = m.quotient(&side(&|v| v > i));
            let r = m.quotient(&side(&|v| v < i));
            (l, r)
        }
    };
    Ok((left.to_r_alpha()?, right.to_r_alpha()?))
}

/// Elements sorted by distance from `i`, failing unless all lie on one side of `i`.
fn from_endpoint(j: &SupportSet, i: usize) -> Result<(Vec<usize>, Option<bool>)> {
    if !j.contains(i) {
        return Err(Error::Support(format!("{j} does not contain vertex {}", i + 1)));
    }
    let side = match (j.vertices().first(), j.vertices().last()) {
        (Some(&lo), Some(&hi)) if lo < i && hi > i => {
            return Err(Error::Support(format!("vertex {} is not an endpoint of {j}", i + 1)))
        }
        (Some(&lo), _) if lo < i => Some(false),
        (_, Some(&hi)) if hi > i => Some(true),
        _ => None,
    };
    let mut v = j.vertices().to_vec();
    v.sort_by_key(|&x| x.abs_diff(i));
    Ok((v, side))
}

/// The order `≥_i` between two summands supported on one linear segment ending at `i`.
pub fn linear_order_geq(q: &TypeAQuiver, j: &SupportSet, j2: &SupportSet, i: usize, kind: GlueKind) -> Result<bool> {
    let (a, sa) = from_endpoint(j, i)?;
    let (b, sb) = from_endpoint(j2, i)?;
    if let (Some(x), Some(y)) = (sa, sb) {
        if x != y {
            return Err(Error::Support(format!("{j} and {j2} lie on different sides of vertex {}", i + 1)));
        }
    }
    let dominated = |r: usize| q.geq(b[r], a[r]);
    Ok(match kind {
        GlueKind::SourceGlue => a.len() <= b.len() && (0..a.len()).all(dominated),
        GlueKind::SinkGlue => a.len() >= b.len() && (0..b.len()).all(dominated),
    })
}

/// The order `≥_{i_u}` between two glued summands, decided at the rightmost
/// segment where their histories differ.
pub fn general_order_geq(
    q: &TypeAQuiver,
    segments: &[Segment],
    k: &SummandHistory,
    k2: &SummandHistory,
    u: usize,
) -> Result<bool> {
    for l in (0..=u).rev() {
        let (a, b) = (k.piece(l), k2.piece(l));
        if a == b {
            continue;
        }
        let (Some(a), Some(b)) = (a, b) else {
            return Err(Error::Incomparable(format!("histories diverge in length at segment {}", l + 1)));
        };
        if !a.is_subset(b) && !b.is_subset(a) {
            return Err(Error::Incomparable(format!("{a} and {b} are not nested")));
        }
        let i = segments[l].end;
        let kind = glue_kind(q, i).ok_or(Error::NotAdmissible(i))?;
        return linear_order_geq(q, a, b, i, kind);
    }
    Ok(true)
}

/// `m ≥_i n` from the definition via homomorphisms.
///
/// Source: every map `Δ(i) → n` extends along `Δ(i) ⊂ m`. Sink: every map
/// `m → Δ(i)` factors through `n`.
pub fn order_geq_semantic(m: &Representation, n: &Representation, i: usize) -> Result<bool> {
    let q = m.quiver().clone();
    let kind = glue_kind(&q, i).ok_or(Error::NotAdmissible(i))?;
    let m = m.to_r_alpha()?;
    let n = n.to_r_alpha()?;
    let dm = m.raw_delta_dim().unwrap();
    let dn = n.raw_delta_dim().unwrap();
    if dm[i] != 1 || dn[i] != 1 {
        return Err(Error::Multiplicity {
            vertex: i,
            left: dm[i],
            right: dn[i],
        });
    }
    let basis = hom_basis(&m, &n)?;
    let (images, target) = match kind {
        GlueKind::SourceGlue => {
            // M_i is spanned by the generator of Δ(i) ⊂ m
            let mut cols = RationalMatrix::zeros(n.dims()[i], 0);
            for f in &basis {
                cols = cols.hstack(&f[i]);
            }
            (cols, n.dims()[i])
        }
        GlueKind::SinkGlue => {
            // the free coordinate of n_i spans the top Δ(i)
            let last = n.dims()[i] - 1;
            let mut rows = RationalMatrix::zeros(0, m.dims()[i]);
            for f in &basis {
                rows = rows.vstack(&f[i].select_rows(&[last]));
            }
            (rows, top_dims(&m)[i])
        }
    };
    let r = if images.rows() == 0 || images.cols() == 0 { 0 } else { rank(&images) };
    debug_assert!(r <= target);
    Ok(r == target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::{ext1_dim, hom_dim};
    use crate::rep::verma;

    fn example() -> TypeAQuiver {
        "<,>,>,<".parse().unwrap()
    }

    fn s(labels: &[usize]) -> SupportSet {
        SupportSet::from_labels(labels)
    }

    #[test]
    fn worked_example_linear_orders() {
        let q = example();
        use GlueKind::*;
        assert!(linear_order_geq(&q, &s(&[2]), &s(&[1, 2]), 1, SourceGlue).unwrap());
        assert!(!linear_order_geq(&q, &s(&[1, 2]), &s(&[2]), 1, SourceGlue).unwrap());
        assert!(linear_order_geq(&q, &s(&[2, 4]), &s(&[2, 3, 4]), 1, SourceGlue).unwrap());
        assert!(!linear_order_geq(&q, &s(&[2, 3, 4]), &s(&[2, 4]), 1, SourceGlue).unwrap());
        assert!(linear_order_geq(&q, &s(&[4, 5]), &s(&[4]), 3, SinkGlue).unwrap());
        assert!(!linear_order_geq(&q, &s(&[4]), &s(&[4, 5]), 3, SinkGlue).unwrap());
        assert!(linear_order_geq(&q, &s(&[4, 5]), &s(&[4, 5]), 3, SinkGlue).unwrap());
        assert!(linear_order_geq(&q, &s(&[1]), &s(&[2]), 0, SinkGlue).is_err());
    }

    #[test]
    fn glue_with_verma_is_identity() {
        let q = example();
        for i in [1, 3] {
            let kind = glue_kind(&q, i).unwrap();
            let g = glue_at(&verma(&q, i), &verma(&q, i), i, kind).unwrap();
            assert_eq!(g, verma(&q, i));
        }
    }

    #[test]
    fn split_verma() {
        let q = example();
        for i in [1, 3] {
            let (l, r) = split_at(&verma(&q, i), i).unwrap();
            assert_eq!(l, verma(&q, i));
            assert_eq!(r, verma(&q, i));
        }
    }

    #[test]
    fn glue_errors() {
        let q = example();
        assert_eq!(
            glue_at(&verma(&q, 2), &verma(&q, 2), 2, GlueKind::SinkGlue),
            Err(Error::NotAdmissible(2))
        );
        assert!(matches!(
            glue_at(&verma(&q, 4), &verma(&q, 3), 3, GlueKind::SinkGlue),
            Err(Error::Support(_))
        ));
        assert!(matches!(
            glue_at(&verma(&q, 0), &verma(&q, 4), 3, GlueKind::SinkGlue),
            Err(Error::Multiplicity { .. })
        ));
    }

    #[test]
    fn sink_glue_of_projective_quotients() {
        // P(4) = glue of P(4)/P(3) and P(4)/P(5); both quotients have Δ(4) on top
        let q = example();
        let left = crate::builder::segment_summand_rep(&q, &s(&[2, 3, 4])).unwrap();
        let right = crate::builder::segment_summand_rep(&q, &s(&[4, 5])).unwrap();
        let p4 = glue_at(&left, &right, 3, GlueKind::SinkGlue).unwrap();
        assert_eq!(p4.total_dim(), 9);
        assert!(p4.is_delta_filtered().unwrap());
        assert_eq!(crate::homology::top_dims(&p4), [0, 0, 0, 1, 0]);
        assert_eq!(ext1_dim(&p4, &p4).unwrap(), 0);
        let (l, r) = split_at(&p4, 3).unwrap();
        assert_eq!(hom_dim(&l, &left).unwrap(), hom_dim(&left, &left).unwrap());
        assert_eq!(hom_dim(&left, &l).unwrap(), hom_dim(&left, &left).unwrap());
        assert_eq!(r.delta_dim().unwrap(), right.delta_dim().unwrap());
    }
}
