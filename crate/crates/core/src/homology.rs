//! Hom spaces, projective dimension vectors and Ext¹ for Δ-filtered modules.

use num::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{rank, rat, solve, Rational, RationalMatrix, SparseSystem};
use crate::quiver::{Arrow, TypeAQuiver};
use crate::rep::{verma, Representation};

/// A vertex-indexed family of linear maps `M_v -> N_v`.
pub type Morphism = Vec<RationalMatrix>;

/// Offsets of the blocks `Hom(M_v, N_v)` inside one unknown vector (row-major).
struct HomLayout {
    offsets: Vec<usize>,
    total: usize,
}

impl HomLayout {
    fn new(m: &[usize], n: &[usize]) -> Self {
        let mut offsets = Vec::with_capacity(m.len());
        let mut total = 0;
        for (a, b) in m.iter().zip(n) {
            offsets.push(total);
            total += a * b;
        }
        HomLayout { offsets, total }
    }
}

fn same_quiver(m: &Representation, n: &Representation) -> Result<()> {
    if m.quiver() != n.quiver() {
        return Err(Error::Shape("representations over different quivers".into()));
    }
    Ok(())
}

/// Rows of `N_γ f_s − f_t M_γ = 0` over all arrows γ, unknowns `f_v ∈ Hom(M_v, N_v)`.
fn hom_system(m: &Representation, n: &Representation) -> (SparseSystem, HomLayout) {
    let q = m.quiver();
    let layout = HomLayout::new(m.dims(), n.dims());
    let mut sys = SparseSystem::new(layout.total);
    let var = |v: usize, a: usize, b: usize| layout.offsets[v] + a * m.dims()[v] + b;
    for g in q.arrows() {
        let (s, t) = q.arrow_ends(g).unwrap();
        let mg = m.map(g);
        let ng = n.map(g);
        for a in 0..n.dims()[t] {
            for b in 0..m.dims()[s] {
                let mut row = Vec::new();
                for k in 0..n.dims()[s] {
                    let c = &ng[(a, k)];
                    if !c.is_zero() {
                        row.push((var(s, k, b), c.clone()));
                    }
                }
                for k in 0..m.dims()[t] {
                    let c = &mg[(k, b)];
                    if !c.is_zero() {
                        row.push((var(t, a, k), -c.clone()));
                    }
                }
                sys.push_row(row);
            }
        }
    }
    (sys, layout)
}

pub fn hom_dim(m: &Representation, n: &Representation) -> Result<usize> {
    same_quiver(m, n)?;
    Ok(hom_system(m, n).0.nullity())
}

pub fn hom_basis(m: &Representation, n: &Representation) -> Result<Vec<Morphism>> {
    same_quiver(m, n)?;
    let (sys, layout) = hom_system(m, n);
    let k = sys.kernel_basis();
    Ok((0..k.cols())
        .map(|j| {
            (0..m.dims().len())
                .map(|v| {
                    let (rows, cols) = (n.dims()[v], m.dims()[v]);
                    RationalMatrix::from_fn(rows, cols, |a, b| k[(layout.offsets[v] + a * cols + b, j)].clone())
                })
                .collect()
        })
        .collect())
}

/// Whether `End(m)` is local, tested on a generic endomorphism: it must be a
/// scalar plus a nilpotent map.
pub fn is_indecomposable(m: &Representation) -> Result<bool> {
    let total = m.total_dim();
    if total == 0 {
        return Ok(false);
    }
    let basis = hom_basis(m, m)?;
    // distinct, unstructured coefficients make an accidental split unlikely
    let coeff = |k: usize| rat(((k as i64 + 3) * 7919) % 1009 + 1);
    let f: Morphism = (0..m.dims().len())
        .map(|v| {
            basis.iter().enumerate().fold(
                RationalMatrix::zeros(m.dims()[v], m.dims()[v]),
                |acc, (k, g)| acc.add(&g[v].scale(&coeff(k))),
            )
        })
        .collect();
    let trace: Rational = f
        .iter()
        .flat_map(|x| (0..x.rows()).map(move |i| x[(i, i)].clone()))
        .sum();
    let lambda = trace / rat(total as i64);
    Ok(f.iter().all(|x| {
        let n = x.rows();
        let shifted = x.sub(&RationalMatrix::identity(n).scale(&lambda));
        let mut p = RationalMatrix::identity(n);
        for _ in 0..n {
            p = p.mul(&shifted);
        }
        p.is_zero()
    }))
}

/// Dimension vector of the indecomposable projective P(i):
/// `dimvec Δ(i) + Σ_{j predecessor of i} dimvec P(j)`.
pub fn proj_dimvec(q: &TypeAQuiver, i: usize) -> Vec<usize> {
    let mut memo: Vec<Option<Vec<usize>>> = vec![None; q.vertex_count()];
    proj_rec(q, i, &mut memo)
}

fn proj_rec(q: &TypeAQuiver, i: usize, memo: &mut Vec<Option<Vec<usize>>>) -> Vec<usize> {
    if let Some(v) = &memo[i] {
        return v.clone();
    }
    let mut out: Vec<usize> = verma(q, i).dims().to_vec();
    for j in q.predecessors(i) {
        for (o, x) in out.iter_mut().zip(proj_rec(q, j, memo)) {
            *o += x;
        }
    }
    memo[i] = Some(out.clone());
    out
}

/// Multiplicities of the simple tops of `m`: `dims_v` minus the rank of all
/// arrows (α and β) ending at `v`.
pub fn top_dims(m: &Representation) -> Vec<usize> {
    let q = m.quiver();
    (0..q.vertex_count())
        .map(|v| {
            let mut juxt = RationalMatrix::zeros(m.dims()[v], 0);
            for a in q.arrows() {
                if q.arrow_ends(a).unwrap().1 == v {
                    juxt = juxt.hstack(m.map(a));
                }
            }
            m.dims()[v] - rank(&juxt)
        })
        .collect()
}

/// Ext¹ via a minimal projective presentation `0 → P₁ → P₀ → m → 0`.
pub fn ext1_dim(m: &Representation, n: &Representation) -> Result<usize> {
    same_quiver(m, n)?;
    if !m.is_delta_filtered()? {
        return Err(Error::NotDeltaFiltered);
    }
    let q = m.quiver();
    let l = q.vertex_count();
    let p0 = top_dims(m);
    let proj: Vec<Vec<usize>> = (0..l).map(|i| proj_dimvec(q, i)).collect();
    // columns are dimvec P(i)
    let a = RationalMatrix::from_fn(l, l, |j, i| rat(proj[i][j] as i64));
    let w = RationalMatrix::from_fn(l, 1, |j, _| {
        let total: usize = (0..l).map(|i| p0[i] * proj[i][j]).sum();
        rat(total as i64 - m.dims()[j] as i64)
    });
    let x = solve(&a, &w).ok_or(Error::NotDeltaFiltered)?;
    let mut p1 = Vec::with_capacity(l);
    for i in 0..l {
        let v = &x[(i, 0)];
        match (v.is_integer(), v.numer().to_i64()) {
            (true, Some(k)) if k >= 0 => p1.push(k),
            _ => return Err(Error::NotDeltaFiltered),
        }
    }
    let hom = hom_dim(m, n)? as i64;
    let correction: i64 = (0..l)
        .map(|i| (p0[i] as i64 - p1[i]) * n.dims()[i] as i64)
        .sum();
    let ext = hom - correction;
    usize::try_from(ext).map_err(|_| Error::NotDeltaFiltered)
}

/// Ext¹ as cohomology of `⊕ Hom(M_v,N_v) → ⊕_γ Hom(M_sγ,N_tγ) → ⊕_r Hom(M_sr,N_tr)`.
pub fn ext1_dim_oracle(m: &Representation, n: &Representation) -> Result<usize> {
    same_quiver(m, n)?;
    let q = m.quiver();
    let arrows = q.arrows();
    // unknown offsets for f_γ ∈ Hom(M_sγ, N_tγ)
    let mut off = Vec::with_capacity(arrows.len());
    let mut total = 0;
    for &g in &arrows {
        let (s, t) = q.arrow_ends(g).unwrap();
        off.push(total);
        total += n.dims()[t] * m.dims()[s];
    }
    let idx = |g: Arrow| arrows.iter().position(|&x| x == g).unwrap();
    let fvar = |g: Arrow, a: usize, b: usize| {
        let s = q.arrow_ends(g).unwrap().0;
        off[idx(g)] + a * m.dims()[s] + b
    };

    // δ: rows are coordinates of ⊕_γ Hom, columns the g unknowns
    let (hom_sys, _) = hom_system(m, n);
    let rank_delta = hom_sys.rank();

    let mut rho = SparseSystem::new(total);
    for r in q.relations() {
        for a in 0..n.dims()[r.target] {
            for b in 0..m.dims()[r.source] {
                let mut row: Vec<(usize, Rational)> = Vec::new();
                for t in &r.terms {
                    let sign = rat(t.sign as i64);
                    let (gamma, delta) = (t.second, t.first);
                    let td = q.arrow_ends(delta).unwrap().1;
                    let ng = n.map(gamma);
                    let md = m.map(delta);
                    // N_γ f_δ
                    for k in 0..n.dims()[td] {
                        let c = &ng[(a, k)];
                        if !c.is_zero() {
                            row.push((fvar(delta, k, b), &sign * c));
                        }
                    }
                    // f_γ M_δ
                    for k in 0..m.dims()[td] {
                        let c = &md[(k, b)];
                        if !c.is_zero() {
                            row.push((fvar(gamma, a, k), &sign * c));
                        }
                    }
                }
                rho.push_row(row);
            }
        }
    }
    let kernel = rho.nullity();
    kernel
        .checked_sub(rank_delta)
        .ok_or_else(|| Error::Shape("image of δ exceeds kernel of ρ".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Edge;

    fn example() -> TypeAQuiver {
        "<,>,>,<".parse().unwrap()
    }

    #[test]
    fn projective_dims() {
        let q = example();
        let totals: Vec<usize> = (0..5).map(|i| proj_dimvec(&q, i).iter().sum()).collect();
        assert_eq!(totals, [5, 4, 6, 9, 2]);
        assert_eq!(proj_dimvec(&q, 0), [2, 1, 1, 1, 0]);
        assert_eq!(proj_dimvec(&q, 1), verma(&q, 1).dims());
        assert_eq!(proj_dimvec(&q, 4), verma(&q, 4).dims());
    }

    #[test]
    fn verma_homs() {
        let q = example();
        for i in 0..5 {
            assert_eq!(hom_dim(&verma(&q, i), &verma(&q, i)).unwrap(), 1);
        }
        // 1 and 3 are not comparable
        assert_eq!(hom_dim(&verma(&q, 0), &verma(&q, 2)).unwrap(), 0);
        assert_eq!(hom_dim(&verma(&q, 2), &verma(&q, 0)).unwrap(), 0);
    }

    #[test]
    fn verma_ext() {
        let q = example();
        for i in 0..5 {
            for j in 0..5 {
                let (a, b) = (verma(&q, i), verma(&q, j));
                let e = ext1_dim(&a, &b).unwrap();
                assert_eq!(e, ext1_dim_oracle(&a, &b).unwrap(), "pair {i} {j}");
                if q.is_source(i) || q.is_sink(j) {
                    assert_eq!(e, 0);
                }
            }
        }
        assert_eq!(ext1_dim_oracle(&verma(&q, 3), &verma(&q, 3)).unwrap(), 0);
        let single = TypeAQuiver::linear(2, Edge::Right);
        assert_eq!(ext1_dim_oracle(&verma(&single, 0), &verma(&single, 0)).unwrap(), 0);
    }

    #[test]
    fn indecomposable_detection() {
        let q = example();
        for i in 0..5 {
            assert!(is_indecomposable(&verma(&q, i)).unwrap());
        }
        let m = verma(&q, 1).direct_sum(&verma(&q, 1)).unwrap();
        assert!(!is_indecomposable(&m).unwrap());
        let m = verma(&q, 1).direct_sum(&verma(&q, 2)).unwrap();
        assert!(!is_indecomposable(&m).unwrap());
    }

    #[test]
    fn hom_basis_commutes() {
        let q = example();
        let m = verma(&q, 1).direct_sum(&verma(&q, 2)).unwrap();
        let basis = hom_basis(&m, &m).unwrap();
        assert_eq!(basis.len(), hom_dim(&m, &m).unwrap());
        for f in &basis {
            for a in q.arrows() {
                let (s, t) = q.arrow_ends(a).unwrap();
                assert_eq!(m.map(a).mul(&f[s]), f[t].mul(m.map(a)));
            }
        }
    }
}
