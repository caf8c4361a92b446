#![allow(dead_code)]

use novikov_core::arith::{IntMatrix, Integer, Poly, PolyMatrix, Rational};
use novikov_core::complex::{invert_over, BaseRing, ChainMap, CollapsibleSummand, FreeComplex};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Nonzero polynomial of degree at most `max_deg`, small coefficients.
pub fn random_poly(rng: &mut impl Rng, max_deg: usize) -> Poly {
    loop {
        let deg = rng.gen_range(0..=max_deg);
        let coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-2..=2)).collect();
        let p = Poly::from_ints(&coeffs);
        if !num_traits::Zero::is_zero(&p) {
            return p;
        }
    }
}

pub fn constant_matrix(m: &IntMatrix) -> PolyMatrix {
    m.map(|x| Poly::constant(Rational::from_integer(x.clone())))
}

/// A random integer unimodular matrix and its inverse.
pub fn unimodular_pair(rng: &mut impl Rng, n: usize) -> (PolyMatrix, PolyMatrix) {
    let mut u = IntMatrix::identity(n);
    if n > 1 {
        for _ in 0..2 * n {
            let i = rng.gen_range(0..n);
            let j = rng.gen_range(0..n);
            if i != j {
                let c: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
                u.add_row_multiple(i, j, &Integer::from(c));
            }
        }
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        u.swap_rows(a, b);
    }
    if n > 0 && rng.gen_bool(0.3) {
        u.scale_row(rng.gen_range(0..n), &Integer::from(-1));
    }
    let u = constant_matrix(&u);
    let inv = invert_over(BaseRing::Polynomials, &u).expect("unimodular");
    (u, inv)
}

/// A complex in standard form (each basis vector is free, the source of
/// one boundary entry, or its target), conjugated by integer unimodular
/// changes of basis. Keeps the data needed for exact homology oracles.
#[derive(Clone, Debug)]
pub struct RandomComplex {
    pub complex: FreeComplex,
    /// Per degree, the number of basis vectors in no pair.
    pub free: Vec<usize>,
    /// `(r, p)`: a generator of degree `r` with boundary `p` times a
    /// generator of degree `r - 1`.
    pub pairs: Vec<(usize, Poly)>,
}

impl RandomComplex {
    /// `(R_k, S_k, Q_k)` over `Q[t]`.
    pub fn pitcher(&self) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
        let top = self.complex.top();
        let q = self.free.clone();
        let mut s = vec![0; top + 1];
        for (r, p) in &self.pairs {
            if p.t_adic_valuation().unwrap_or(0) > 0 {
                s[r - 1] += 1;
            }
        }
        let r = q.iter().zip(&s).map(|(a, c)| a + c).collect();
        (r, s, q)
    }

    /// `dim_Q H_k(C / tC)`, from the pairs that vanish at zero.
    pub fn relative_betti(&self) -> Vec<usize> {
        let mut beta = self.free.clone();
        for (r, p) in &self.pairs {
            if p.coeff(0) == Rational::from_integer(0.into()) {
                beta[*r] += 1;
                beta[r - 1] += 1;
            }
        }
        beta
    }

    /// `Q`-dimensions of homology over `Q` or `Q[t]/(t^n)`.
    pub fn homology_dims(&self) -> Vec<usize> {
        let n = match self.complex.ring() {
            BaseRing::Rationals => 1,
            BaseRing::Truncated(n) => n as usize,
            BaseRing::Polynomials => panic!("infinite dimensional"),
        };
        let mut dims: Vec<usize> = self.free.iter().map(|f| f * n).collect();
        for (r, p) in &self.pairs {
            let j = p.t_adic_valuation().expect("nonzero").min(n);
            dims[*r] += j;
            dims[r - 1] += j;
        }
        dims
    }
}

pub fn random_complex(
    rng: &mut impl Rng,
    ring: BaseRing,
    max_top: usize,
    max_rank: usize,
    max_deg: usize,
) -> RandomComplex {
    let top = rng.gen_range(1..=max_top);
    let ranks: Vec<usize> = (0..=top).map(|_| rng.gen_range(0..=max_rank)).collect();
    let mut used: Vec<Vec<bool>> = ranks.iter().map(|&n| vec![false; n]).collect();
    let mut standard: Vec<PolyMatrix> = Vec::new();
    let mut pairs = Vec::new();
    for r in 1..=top {
        let mut d = PolyMatrix::zeros(ranks[r - 1], ranks[r]);
        let mut sources: Vec<usize> = (0..ranks[r]).filter(|&i| !used[r][i]).collect();
        let mut targets: Vec<usize> = (0..ranks[r - 1]).filter(|&i| !used[r - 1][i]).collect();
        sources.shuffle(rng);
        targets.shuffle(rng);
        let m = rng.gen_range(0..=sources.len().min(targets.len()));
        for (&s, &t) in sources.iter().zip(&targets).take(m) {
            let mut p = ring.reduce(&random_poly(rng, max_deg));
            if num_traits::Zero::is_zero(&p) {
                p = Poly::from_ints(&[1]);
            }
            d.set(t, s, p.clone());
            used[r][s] = true;
            used[r - 1][t] = true;
            pairs.push((r, p));
        }
        standard.push(d);
    }
    let bases: Vec<(PolyMatrix, PolyMatrix)> =
        ranks.iter().map(|&n| unimodular_pair(rng, n)).collect();
    let boundaries = (1..=top)
        .map(|r| {
            let m = bases[r - 1]
                .0
                .mul(&standard[r - 1])
                .unwrap()
                .mul(&bases[r].1)
                .unwrap();
            ring.reduce_matrix(&m)
        })
        .collect();
    let complex = FreeComplex::new(ring, ranks, boundaries).expect("well formed");
    let free = used
        .iter()
        .map(|u| u.iter().filter(|x| !**x).count())
        .collect();
    RandomComplex {
        complex,
        free,
        pairs,
    }
}

/// `c'` with `d'_r = U_{r-1}^{-1} d_r U_r` and the isomorphism `U : c' -> c`.
pub fn conjugated(rng: &mut impl Rng, c: &FreeComplex) -> (FreeComplex, ChainMap) {
    let ring = c.ring();
    let bases: Vec<(PolyMatrix, PolyMatrix)> =
        c.ranks().iter().map(|&n| unimodular_pair(rng, n)).collect();
    let boundaries = (1..=c.top())
        .map(|r| {
            let m = bases[r - 1]
                .1
                .mul(&c.boundary(r))
                .unwrap()
                .mul(&bases[r].0)
                .unwrap();
            ring.reduce_matrix(&m)
        })
        .collect();
    let c2 = FreeComplex::new(ring, c.ranks().to_vec(), boundaries).expect("well formed");
    let iso = ChainMap::new(
        c2.clone(),
        c.clone(),
        bases.into_iter().map(|b| b.0).collect(),
    )
    .expect("shapes agree");
    (c2, iso)
}

/// `d h + h d` for a random `h : A_r -> B_{r+1}`.
pub fn null_homotopic(
    rng: &mut impl Rng,
    a: &FreeComplex,
    b: &FreeComplex,
    max_deg: usize,
) -> ChainMap {
    let ring = a.ring();
    let top = a.top().max(b.top());
    let h: Vec<PolyMatrix> = (0..=top)
        .map(|r| {
            let mut m = PolyMatrix::zeros(b.rank(r + 1), a.rank(r));
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    if rng.gen_bool(0.4) {
                        m.set(i, j, ring.reduce(&random_poly(rng, max_deg)));
                    }
                }
            }
            m
        })
        .collect();
    let maps = (0..=top)
        .map(|r| {
            let dh = b.boundary(r + 1).mul(&h[r]).unwrap();
            let hd = if r == 0 {
                PolyMatrix::zeros(b.rank(0), a.rank(0))
            } else {
                h[r - 1].mul(&a.boundary(r)).unwrap()
            };
            ring.reduce_matrix(&dh.add(&hd).unwrap())
        })
        .collect();
    ChainMap::new(a.clone(), b.clone(), maps).expect("shapes agree")
}

pub fn add_maps(f: &ChainMap, g: &ChainMap) -> ChainMap {
    let ring = f.ring();
    let maps = (0..=f.top())
        .map(|r| ring.reduce_matrix(&f.map(r).add(&g.map(r)).unwrap()))
        .collect();
    ChainMap::new(f.source().clone(), f.target().clone(), maps).expect("shapes agree")
}

/// The projection `c + k -> c` onto the first summand.
pub fn projection(sum: &FreeComplex, c: &FreeComplex) -> ChainMap {
    let maps = (0..=sum.top())
        .map(|r| {
            let mut m = PolyMatrix::zeros(c.rank(r), sum.rank(r));
            m.paste(0, 0, &PolyMatrix::identity(c.rank(r)));
            m
        })
        .collect();
    ChainMap::new(sum.clone(), c.clone(), maps).expect("shapes agree")
}

fn collapsible_padding(
    rng: &mut impl Rng,
    ring: BaseRing,
    top: usize,
    count: usize,
) -> FreeComplex {
    let mut k = FreeComplex::zero(ring, vec![0]).expect("well formed");
    for _ in 0..count {
        let s = CollapsibleSummand {
            degree: rng.gen_range(1..=top + 1),
            rank: rng.gen_range(1..=2),
        };
        k = k.direct_sum(&s.complex(ring)).expect("same ring");
    }
    k
}

/// A random homology equivalence `A -> d`: `A` is `d` plus collapsible
/// summands in a scrambled basis, the map is the projection plus a
/// null-homotopic perturbation.
pub fn homology_equivalence_into(rng: &mut impl Rng, d: &FreeComplex) -> ChainMap {
    let count = rng.gen_range(0..=2);
    let k = collapsible_padding(rng, d.ring(), d.top(), count);
    let e = d.direct_sum(&k).expect("same ring");
    let (a, iso) = conjugated(rng, &e);
    let base = projection(&e, d).compose(&iso).expect("composable");
    add_maps(&base, &null_homotopic(rng, &a, d, 1))
}

/// `gamma : E -> f`, onto in every degree, with kernel a single rank one
/// collapsible summand.
pub fn epi_with_acyclic_kernel(rng: &mut impl Rng, f: &FreeComplex) -> ChainMap {
    let s = CollapsibleSummand {
        degree: rng.gen_range(1..=f.top() + 1),
        rank: 1,
    };
    let e = f.direct_sum(&s.complex(f.ring())).expect("same ring");
    let (_, iso) = conjugated(rng, &e);
    projection(&e, f).compose(&iso).expect("composable")
}

/// A random chain map into `f`, from a scrambled `f + g` or from a random
/// complex by a null-homotopic map.
pub fn random_chain_map_into(rng: &mut impl Rng, f: &FreeComplex) -> ChainMap {
    let g = random_complex(rng, f.ring(), 3, 2, 1).complex;
    if rng.gen_bool(0.5) {
        let e = f.direct_sum(&g).expect("same ring");
        let (a, iso) = conjugated(rng, &e);
        let base = projection(&e, f).compose(&iso).expect("composable");
        add_maps(&base, &null_homotopic(rng, &a, f, 1))
    } else {
        null_homotopic(rng, &g, f, 1)
    }
}
