//! The exceptional Δ-filtered module `M(d)`.
//!
//! The quiver is cut at its interior sources and sinks into linearly oriented
//! segments. Each segment's part of `d` is peeled into nested support sets,
//! each realised by a staircase module, and the pieces are glued across the
//! cut vertices in the order given by `≥_i`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gluing::{general_order_geq, glue_at, glue_kind, linear_order_geq, SummandHistory, SupportSet};
use crate::linalg::Rational;
use crate::quiver::TypeAQuiver;
use crate::rep::{DeltaVector, Frame, Representation};

/// A maximal linearly oriented stretch `[start, end]` between cut vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub index: usize,
    pub start: usize,
    pub end: usize,
}

impl Segment {
    pub fn contains(&self, v: usize) -> bool {
        self.start <= v && v <= self.end
    }
}

pub fn interior_admissible(q: &TypeAQuiver) -> Vec<usize> {
    q.interior_admissible()
}

/// Segments of every component, left to right.
pub fn segments(q: &TypeAQuiver) -> Vec<Segment> {
    let cuts = q.interior_admissible();
    let mut out = Vec::new();
    for comp in q.components() {
        let mut start = comp.start;
        for &c in cuts.iter().filter(|c| comp.contains(c)) {
            out.push(Segment {
                index: out.len(),
                start,
                end: c,
            });
            start = c;
        }
        out.push(Segment {
            index: out.len(),
            start,
            end: comp.end - 1,
        });
    }
    out
}

/// `d` restricted to each segment; consecutive vectors overlap at cut vertices.
pub fn segment_vectors(q: &TypeAQuiver, d: &[usize]) -> Result<Vec<DeltaVector>> {
    check_len(q, d)?;
    Ok(segments(q)
        .iter()
        .map(|s| {
            d.iter()
                .enumerate()
                .map(|(v, &x)| if s.contains(v) { x } else { 0 })
                .collect()
        })
        .collect())
}

fn check_len(q: &TypeAQuiver, d: &[usize]) -> Result<()> {
    if d.len() != q.vertex_count() {
        return Err(Error::Length {
            expected: q.vertex_count(),
            got: d.len(),
        });
    }
    Ok(())
}

/// Repeatedly take the support and subtract its indicator.
pub fn bhrr_peel(d: &[usize]) -> Vec<SupportSet> {
    let mut d = d.to_vec();
    let mut out = Vec::new();
    loop {
        let supp: Vec<usize> = (0..d.len()).filter(|&v| d[v] > 0).collect();
        if supp.is_empty() {
            return out;
        }
        for &v in &supp {
            d[v] -= 1;
        }
        out.push(SupportSet::new(supp));
    }
}

/// Next larger element of `set` above `k` in `⪰`.
fn successor(q: &TypeAQuiver, set: &SupportSet, k: usize) -> Option<usize> {
    let above: Vec<usize> = set.vertices().iter().copied().filter(|&x| q.gt(x, k)).collect();
    above
        .iter()
        .copied()
        .find(|&x| above.iter().all(|&y| y == x || q.gt(y, x)))
}

/// The indecomposable exceptional module with Δ-support `set` inside one segment.
///
/// The basis at `v` is `{k ∈ set : k ⪰ v}`; α is inclusion of index sets and β
/// sends the `k` layer to the layer of the next larger element of `set`. When
/// the top of the segment is an interior source, Δ of that vertex runs past the
/// cut with identity α's and zero β's, which the same rule produces.
pub fn segment_summand_rep(q: &TypeAQuiver, set: &SupportSet) -> Result<Representation> {
    if set.is_empty() {
        return Err(Error::Support("empty support set".into()));
    }
    for &v in set.vertices() {
        q.check_vertex(v)?;
    }
    if !segments(q).iter().any(|s| set.vertices().iter().all(|&v| s.contains(v))) {
        return Err(Error::Support(format!("{set} is not inside a single segment")));
    }
    let d = set.indicator(q.vertex_count());
    let m = Frame::assemble(q, &d, |_, row, col| {
        if successor(q, set, col.0) == Some(row.0) {
            Rational::from_integer(1.into())
        } else {
            Rational::from_integer(0.into())
        }
    });
    if m.delta_dim()? != d {
        return Err(Error::NotDeltaFiltered);
    }
    Ok(m)
}

/// One gluing step, recorded for inspection and testing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlueStep {
    pub vertex: usize,
    /// index of the segment ending at `vertex`
    pub segment: usize,
    /// summands containing `vertex`, sorted descending by `≥_vertex`
    pub left: Vec<SummandHistory>,
    /// next-segment pieces containing `vertex`, sorted descending
    pub right: Vec<SupportSet>,
}

/// Summand histories of `M(d)` in construction order, plus the gluing steps.
pub fn plan_summands(q: &TypeAQuiver, d: &[usize]) -> Result<(Vec<SummandHistory>, Vec<GlueStep>)> {
    check_len(q, d)?;
    let segs = segments(q);
    let vectors = segment_vectors(q, d)?;
    let mut done: Vec<SummandHistory> = Vec::new();
    let mut steps = Vec::new();
    let mut current: Vec<SummandHistory> = Vec::new();
    for s in &segs {
        let pieces = bhrr_peel(&vectors[s.index]);
        let joined = s.index > 0 && segs[s.index - 1].end == s.start;
        if !joined {
            done.append(&mut current);
            current = pieces.into_iter().map(|j| SummandHistory::single(s.index, j)).collect();
            continue;
        }
        let i = s.start;
        let kind = glue_kind(q, i).ok_or(Error::NotAdmissible(i))?;
        let (mut left, rest): (Vec<_>, Vec<_>) = current.into_iter().partition(|h| h.support().contains(i));
        let (mut right, fresh): (Vec<_>, Vec<_>) = pieces.into_iter().partition(|j| j.contains(i));
        sort_desc(&mut left, |a, b| general_order_geq(q, &segs, a, b, s.index - 1))?;
        sort_desc(&mut right, |a, b| linear_order_geq(q, a, b, i, kind))?;
        if left.len() != right.len() {
            return Err(Error::Multiplicity {
                vertex: i,
                left: left.len(),
                right: right.len(),
            });
        }
        steps.push(GlueStep {
            vertex: i,
            segment: s.index - 1,
            left: left.clone(),
            right: right.clone(),
        });
        let n = left.len();
        let mut next: Vec<SummandHistory> = left
            .iter()
            .enumerate()
            .map(|(l, h)| h.extended(s.index, right[n - 1 - l].clone()))
            .collect();
        next.extend(rest);
        next.extend(fresh.into_iter().map(|j| SummandHistory::single(s.index, j)));
        current = next;
    }
    done.append(&mut current);
    Ok((done, steps))
}

/// Stable descending sort under a total preorder given as `geq`.
fn sort_desc<T: Clone>(v: &mut Vec<T>, geq: impl Fn(&T, &T) -> Result<bool>) -> Result<()> {
    // insertion sort keeps ties in their original order and surfaces comparison errors
    let mut out: Vec<T> = Vec::with_capacity(v.len());
    for x in v.drain(..) {
        let mut pos = out.len();
        while pos > 0 {
            let prev = &out[pos - 1];
            let before = geq(prev, &x)?;
            let after = geq(&x, prev)?;
            if !before && !after {
                return Err(Error::Incomparable("order is not total on these summands".into()));
            }
            if before {
                break;
            }
            pos -= 1;
        }
        out.insert(pos, x);
    }
    *v = out;
    Ok(())
}

#[derive(Clone, Debug)]
pub struct Summand {
    pub support: SupportSet,
    pub history: SummandHistory,
    pub rep: Representation,
}

#[derive(Clone, Debug)]
pub struct SummandDecomposition {
    pub quiver: TypeAQuiver,
    pub delta: DeltaVector,
    pub summands: Vec<Summand>,
    pub steps: Vec<GlueStep>,
    pub rep: Representation,
}

impl SummandDecomposition {
    pub fn supports(&self) -> Vec<SupportSet> {
        self.summands.iter().map(|s| s.support.clone()).collect()
    }

    /// Distinct supports with multiplicities, sorted.
    pub fn multiplicities(&self) -> Vec<(SupportSet, usize)> {
        let mut v = self.supports();
        v.sort();
        let mut out: Vec<(SupportSet, usize)> = Vec::new();
        for k in v {
            match out.last_mut() {
                Some((last, c)) if *last == k => *c += 1,
                _ => out.push((k, 1)),
            }
        }
        out
    }
}

/// Representation of one planned summand: its pieces glued left to right.
pub fn summand_rep(q: &TypeAQuiver, history: &SummandHistory) -> Result<Representation> {
    let segs = segments(q);
    let mut pieces = history.pieces.iter();
    let (_, first) = pieces.next().ok_or_else(|| Error::Support("empty history".into()))?;
    let mut rep = segment_summand_rep(q, first)?;
    for (s, j) in pieces {
        let i = segs[*s].start;
        let kind = glue_kind(q, i).ok_or(Error::NotAdmissible(i))?;
        rep = glue_at(&rep, &segment_summand_rep(q, j)?, i, kind)?;
    }
    Ok(rep)
}

#[allow(non_snake_case)]
pub fn build_M(q: &TypeAQuiver, d: &[usize]) -> Result<SummandDecomposition> {
    let (histories, steps) = plan_summands(q, d)?;
    let mut summands = Vec::with_capacity(histories.len());
    for h in histories {
        let rep = summand_rep(q, &h)?;
        summands.push(Summand {
            support: h.support(),
            history: h,
            rep,
        });
    }
    let parts: Vec<Representation> = summands.iter().map(|s| s.rep.clone()).collect();
    let rep = Representation::direct_sum_all(&parts, q)?;
    debug_assert_eq!(rep.raw_delta_dim().as_deref(), Some(d));
    Ok(SummandDecomposition {
        quiver: q.clone(),
        delta: d.to_vec(),
        summands,
        steps,
        rep,
    })
}

/// Closure conditions satisfied by Δ-supports of indecomposable summands:
/// common lower bounds and common upper bounds of non-comparable elements
/// must lie in the set.
pub fn indecomposable_support_check(q: &TypeAQuiver, k: &SupportSet) -> bool {
    let n = q.vertex_count();
    let vs = k.vertices();
    for &a in vs {
        for &b in vs {
            if q.geq(a, b) || q.geq(b, a) {
                continue;
            }
            for i in 0..n {
                let below = q.geq(a, i) && q.geq(b, i);
                let above = q.geq(i, a) && q.geq(i, b);
                if (below || above) && !k.contains(i) {
                    return false;
                }
            }
        }
    }
    true
}
