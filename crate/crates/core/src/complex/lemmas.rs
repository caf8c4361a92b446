use num_traits::Zero;

use super::{BaseRing, ChainMap, CollapsibleSummand, ComplexError, FreeComplex};
use crate::arith::{Poly, PolyMatrix};

/// Result of [`make_epimorphic`]: `B' = B + K` with `K` a sum of
/// collapsible complexes, and `phi' : B' -> F` onto in every degree.
#[derive(Clone, Debug)]
pub struct EpimorphicExtension {
    pub summands: Vec<CollapsibleSummand>,
    pub extended: FreeComplex,
    pub phi_prime: ChainMap,
    pub inclusion: ChainMap,
    pub projection: ChainMap,
    /// Per degree, the sizes of the blocks `(B_r, F_r, F_{r+1})` of `B'_r`:
    /// the top of the summand on `F_r` and the bottom of the one on
    /// `F_{r+1}`.
    pub layout: Vec<(usize, usize, usize)>,
}

/// Extends `phi : B -> F` by `mu : K -> F`, where `K` has one collapsible
/// summand on `F_k` for every `k >= 1`, mapping by the identity in degree
/// `k` and by `d_k` in degree `k - 1`.
pub fn make_epimorphic(phi: &ChainMap) -> Result<EpimorphicExtension, ComplexError> {
    phi.require_valid()?;
    let ring = phi.ring();
    let (b, f) = (phi.source(), phi.target());
    let h0 = phi.map(0).hstack(&f.boundary(1)).expect("same rows");
    if !ring.is_surjective(&h0) {
        return Err(ComplexError::H0NotEpimorphic);
    }

    let d = f.top();
    let top = b.top().max(d);
    let layout: Vec<(usize, usize, usize)> = (0..=top)
        .map(|r| {
            let t = if r >= 1 { f.rank(r) } else { 0 };
            (b.rank(r), t, f.rank(r + 1))
        })
        .collect();
    let size = |r: usize| layout.get(r).map_or(0, |(x, y, z)| x + y + z);
    let ranks: Vec<usize> = (0..=top).map(size).collect();

    let boundaries = (1..=top)
        .map(|r| {
            let mut m = PolyMatrix::zeros(ranks[r - 1], ranks[r]);
            m.paste(0, 0, &b.boundary(r));
            let (b_prev, t_prev, _) = layout[r - 1];
            let (b_cur, t_cur, _) = layout[r];
            m.paste(b_prev + t_prev, b_cur, &PolyMatrix::identity(t_cur));
            m
        })
        .collect();
    let extended = FreeComplex::new(ring, ranks.clone(), boundaries)?;

    let phi_maps = (0..=top)
        .map(|r| {
            let (bs, ts, ls) = layout[r];
            let mut m = PolyMatrix::zeros(f.rank(r), ranks[r]);
            m.paste(0, 0, &phi.map(r));
            m.paste(0, bs, &PolyMatrix::identity(ts));
            m.paste(0, bs + ts, &f.boundary(r + 1));
            debug_assert_eq!(ls, f.rank(r + 1));
            m
        })
        .collect();
    let phi_prime = ChainMap::new(extended.clone(), f.clone(), phi_maps)?;

    let inclusion = ChainMap::new(
        b.clone(),
        extended.clone(),
        (0..=top)
            .map(|r| {
                let mut m = PolyMatrix::zeros(ranks[r], b.rank(r));
                m.paste(0, 0, &PolyMatrix::identity(b.rank(r)));
                m
            })
            .collect(),
    )?;
    let projection = ChainMap::new(
        extended.clone(),
        b.clone(),
        (0..=top)
            .map(|r| {
                let mut m = PolyMatrix::zeros(b.rank(r), ranks[r]);
                m.paste(0, 0, &PolyMatrix::identity(b.rank(r)));
                m
            })
            .collect(),
    )?;

    let summands = (1..=d)
        .filter(|&k| f.rank(k) > 0)
        .map(|k| CollapsibleSummand {
            degree: k,
            rank: f.rank(k),
        })
        .collect();

    debug_assert!(extended.validate() && phi_prime.validate());
    Ok(EpimorphicExtension {
        summands,
        extended,
        phi_prime,
        inclusion,
        projection,
        layout,
    })
}

fn sub_vec(ring: BaseRing, a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    a.iter()
        .zip(b)
        .map(|(x, y)| ring.reduce(&(x.clone() - y.clone())))
        .collect()
}

/// A chain map `xi : A -> E` with `gamma o xi = alpha`, for `gamma` onto
/// in every degree and a homology equivalence.
///
/// Built degree by degree: for a basis element `e` of `A_r` pick `y` with
/// `gamma(y) = alpha(e)`, then subtract `nu` in the kernel of `gamma` with
/// `d nu = d y - xi(d e)`. The right side is a cycle of the kernel, which
/// is acyclic, so `nu` exists.
pub fn lift_through(alpha: &ChainMap, gamma: &ChainMap) -> Result<ChainMap, ComplexError> {
    if alpha.ring() != gamma.ring() {
        return Err(ComplexError::RingMismatch);
    }
    if alpha.target() != gamma.target() {
        return Err(ComplexError::Shape(
            "alpha and gamma have different targets".into(),
        ));
    }
    alpha.require_valid()?;
    gamma.require_valid()?;
    if !gamma.is_epimorphic() {
        return Err(ComplexError::PreconditionFailed(
            "gamma is not onto in every degree".into(),
        ));
    }
    if !gamma.is_homology_equivalence() {
        return Err(ComplexError::PreconditionFailed(
            "gamma is not a homology equivalence".into(),
        ));
    }

    let ring = alpha.ring();
    let (a, e) = (alpha.source(), gamma.source());
    let f = gamma.target();
    let mut xi: Vec<PolyMatrix> = Vec::new();
    for r in 0..=a.top() {
        let g = gamma.map(r);
        let de = e.boundary(r);
        let stacked = g.vstack(&de).expect("same columns");
        let lower = if r >= 1 {
            ring.mul(&xi[r - 1], &a.boundary(r))
        } else {
            PolyMatrix::zeros(0, a.rank(0))
        };
        let mut columns = Vec::with_capacity(a.rank(r));
        for j in 0..a.rank(r) {
            let target = alpha.map(r).column(j);
            let y = ring.solve(&g, &target).ok_or(ComplexError::NoSolution(r))?;
            let column = if r >= 1 {
                let dy = de.mul_vec(&y).expect("shape");
                let z = sub_vec(ring, &dy, &lower.column(j));
                let mut rhs = vec![Poly::zero(); f.rank(r)];
                rhs.extend(z);
                let nu = ring
                    .solve(&stacked, &rhs)
                    .ok_or(ComplexError::NoSolution(r))?;
                sub_vec(ring, &y, &nu)
            } else {
                y
            };
            columns.push(column);
        }
        let m = if columns.is_empty() {
            PolyMatrix::zeros(e.rank(r), 0)
        } else {
            ring.reduce_matrix(&PolyMatrix::from_columns(&columns, e.rank(r)).expect("shape"))
        };
        xi.push(m);
    }
    let xi = ChainMap::new(a.clone(), e.clone(), xi)?;
    if !xi.validate() || gamma.compose(&xi)? != *alpha {
        return Err(ComplexError::NoSolution(a.top()));
    }
    Ok(xi)
}

/// Output of [`compose_triangle`]: `gamma : A -> B` with
/// `alpha - beta o gamma = d h + h d`.
#[derive(Clone, Debug)]
pub struct Triangle {
    pub gamma: ChainMap,
    /// `homotopy[r] : A_r -> D_{r+1}`.
    pub homotopy: Vec<PolyMatrix>,
    /// The lift `gamma' : A -> B + K` with `beta' o gamma' = alpha`.
    pub gamma_prime: ChainMap,
    pub extension: EpimorphicExtension,
}

/// Given homology equivalences `alpha : A -> D` and `beta : B -> D`, finds
/// `gamma : A -> B` with `beta o gamma` homotopic to `alpha`.
///
/// `beta` is first made onto by adding collapsible summands `K`, `alpha`
/// is lifted through the extension, and the result is projected back to
/// `B`. The discarded part lands in `K`, whose map to `D` is null-homotopic
/// via the identity from the bottom of each summand into `D`.
pub fn compose_triangle(alpha: &ChainMap, beta: &ChainMap) -> Result<Triangle, ComplexError> {
    if alpha.target() != beta.target() {
        return Err(ComplexError::Shape(
            "alpha and beta have different targets".into(),
        ));
    }
    alpha.require_valid()?;
    beta.require_valid()?;
    for (name, m) in [("alpha", alpha), ("beta", beta)] {
        if !m.is_homology_equivalence() {
            return Err(ComplexError::PreconditionFailed(format!(
                "{name} is not a homology equivalence"
            )));
        }
    }
    let extension = make_epimorphic(beta)?;
    let gamma_prime = lift_through(alpha, &extension.phi_prime)?;
    let gamma = extension.projection.compose(&gamma_prime)?;
    let d = alpha.target();
    let homotopy: Vec<PolyMatrix> = (0..=alpha.source().top())
        .map(|r| {
            let (bs, ts, ls) = extension.layout.get(r).copied().unwrap_or((0, 0, 0));
            let g = gamma_prime.map(r);
            let h = g.submatrix(bs + ts..bs + ts + ls, 0..g.cols());
            debug_assert_eq!(h.rows(), d.rank(r + 1));
            h
        })
        .collect();
    let composite = beta.compose(&gamma)?;
    if !alpha.homotopic_via(&composite, &homotopy) {
        return Err(ComplexError::PreconditionFailed(
            "homotopy witness failed to verify".into(),
        ));
    }
    Ok(Triangle {
        gamma,
        homotopy,
        gamma_prime,
        extension,
    })
}
