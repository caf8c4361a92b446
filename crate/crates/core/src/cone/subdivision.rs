use num_traits::{One, Signed, Zero};

use super::{ConeError, SimplicialBasis, TargetDirection};
use crate::arith::{
    int, rat_from_int, sin2_between, smith_normal_form, IntVector, Integer, RatVector, Rational,
};

/// One stage of a subdivision: the current basis, its `|det|`, and (for
/// every stage but the last) the lattice point inserted and the index of
/// the basis vector it replaced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub basis: SimplicialBasis,
    pub abs_det: Integer,
    pub point: Option<IntVector>,
    pub replaced: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SubdivisionTrace {
    pub steps: Vec<TraceStep>,
}

impl SubdivisionTrace {
    pub fn dets(&self) -> Vec<Integer> {
        self.steps.iter().map(|s| s.abs_det.clone()).collect()
    }

    pub fn is_strictly_decreasing(&self) -> bool {
        self.steps.windows(2).all(|w| w[1].abs_det < w[0].abs_det)
    }
}

/// Output of [`regular_family`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularFamily {
    pub basis: SimplicialBasis,
    /// Coordinates of the target in `basis`; all strictly positive.
    pub coefficients: RatVector,
    pub trace: SubdivisionTrace,
    /// Height `N` of the hyperplane `x_1 = N` carrying the initial simplex.
    pub height: Integer,
}

/// All nonzero lattice points of the semi-open parallelotope
/// `{sum b_i u_i : 0 <= b_i < 1}`, each with its coordinates `b`.
///
/// The quotient `Z^k / B Z^k` is enumerated through the Smith form of `B`
/// (`|det B|` cosets) and each representative is reduced into the
/// parallelotope.
pub fn semiopen_lattice_points(basis: &SimplicialBasis) -> Vec<(IntVector, RatVector)> {
    let b = basis.matrix();
    let k = basis.dim();
    let snf = smith_normal_form(&b);
    let moduli: Vec<Integer> = (0..k).map(|i| snf.d.get(i, i).clone()).collect();
    let b_inv = b.to_rational().inverse().expect("basis is nondegenerate");

    let mut out = Vec::new();
    let mut y: Vec<Integer> = vec![Integer::zero(); k];
    loop {
        // x = U^{-1} y represents the coset of y in Z^k / D Z^k
        let x = snf.u_inv.mul_vec(&y).expect("dimensions agree");
        let xr: RatVector = x.iter().map(rat_from_int).collect();
        let beta = b_inv.mul_vec(&xr).expect("dimensions agree");
        let floors: IntVector = beta.iter().map(|c| c.floor().to_integer()).collect();
        let shift = b.mul_vec(&floors).expect("dimensions agree");
        let q: IntVector = x.iter().zip(&shift).map(|(a, s)| a - s).collect();
        if q.iter().any(|c| !c.is_zero()) {
            let frac: RatVector = beta
                .iter()
                .zip(&floors)
                .map(|(c, f)| c - rat_from_int(f))
                .collect();
            out.push((q, frac));
        }
        // odometer over prod [0, d_i)
        let mut i = 0;
        loop {
            if i == k {
                return out;
            }
            y[i] += 1;
            if y[i] < moduli[i] {
                break;
            }
            y[i] = Integer::zero();
            i += 1;
        }
    }
}

/// A nonzero lattice point of the semi-open parallelotope, or `None` iff
/// the basis is unimodular. Among several, the one with the smallest
/// coordinate sum (ties broken lexicographically) is returned.
pub fn lattice_point_in_semiopen(basis: &SimplicialBasis) -> Option<IntVector> {
    semiopen_lattice_points(basis)
        .into_iter()
        .min_by(|(qa, ba), (qb, bb)| {
            let sa: Rational = ba.iter().sum();
            let sb: Rational = bb.iter().sum();
            sa.cmp(&sb).then_with(|| qa.cmp(qb))
        })
        .map(|(q, _)| q)
}

fn check_semiopen(basis: &SimplicialBasis, q: &[Integer]) -> Result<RatVector, ConeError> {
    if q.iter().all(Zero::is_zero) {
        return Err(ConeError::NotInSemiopen);
    }
    let beta = basis.coordinates_int(q)?;
    if beta
        .iter()
        .any(|b| b.is_negative() || *b >= Rational::one())
    {
        return Err(ConeError::NotInSemiopen);
    }
    Ok(beta)
}

/// The subcones obtained by replacing each `u_j` with `b_j > 0` by `q`.
/// Together they cover the cone of `basis`.
pub fn subdivision_children(
    basis: &SimplicialBasis,
    q: &[Integer],
) -> Result<Vec<(usize, SimplicialBasis)>, ConeError> {
    let beta = check_semiopen(basis, q)?;
    Ok(beta
        .iter()
        .enumerate()
        .filter(|(_, b)| b.is_positive())
        .map(|(j, _)| (j, basis.replaced(j, q.to_vec())))
        .collect())
}

/// Replaces one basis vector by `q` so that the target stays strictly
/// inside the new cone; returns the new basis and the replaced index.
///
/// With `v = sum a_i u_i` and `q = sum b_i u_i`, replacing `u_j` keeps every
/// coordinate of `v` positive exactly when `j` minimizes `a_i / b_i` over
/// `b_i > 0` strictly. If `q` lies on an edge there is a single candidate.
pub(crate) fn subdivide_step_indexed(
    basis: &SimplicialBasis,
    q: &[Integer],
    v: &[Rational],
) -> Result<(SimplicialBasis, usize), ConeError> {
    let beta = check_semiopen(basis, q)?;
    let alpha = basis.coordinates(v)?;
    if alpha.iter().any(|a| !a.is_positive()) {
        return Err(ConeError::TargetOutsideCone);
    }
    let mut best: Option<(Rational, usize)> = None;
    let mut tied = false;
    for (j, b) in beta.iter().enumerate() {
        if !b.is_positive() {
            continue;
        }
        let ratio = &alpha[j] / b;
        match &best {
            Some((r, _)) if ratio == *r => tied = true,
            Some((r, _)) if ratio > *r => {}
            _ => {
                best = Some((ratio, j));
                tied = false;
            }
        }
    }
    let (_, j) = best.ok_or(ConeError::NotInSemiopen)?;
    if tied {
        return Err(ConeError::RayOnWall);
    }
    Ok((basis.replaced(j, q.to_vec()), j))
}

pub fn subdivide_step(
    basis: &SimplicialBasis,
    q: &[Integer],
    v: &[Rational],
) -> Result<SimplicialBasis, ConeError> {
    subdivide_step_indexed(basis, q, v).map(|(b, _)| b)
}

fn collinear(q: &[Integer], v: &[Rational]) -> bool {
    let qr: RatVector = q.iter().map(rat_from_int).collect();
    (0..q.len()).all(|i| (i + 1..q.len()).all(|j| &qr[i] * &v[j] == &qr[j] * &v[i]))
}

/// Smallest `N >= 1` with `N^2 * tol > diam2`.
fn min_height(tol: &Rational, diam2: usize) -> Integer {
    let target = Rational::from_integer(int(diam2 as i64));
    let mut n = Integer::one();
    // doubling then bisection on the integer N
    while Rational::from_integer(&n * &n) * tol <= target {
        n *= 2;
    }
    let mut lo = &n / 2;
    let mut hi = n;
    while &hi - &lo > Integer::one() {
        let mid: Integer = (&lo + &hi) / 2;
        if Rational::from_integer(&mid * &mid) * tol > target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi.max(Integer::one())
}

/// Lattice simplex on the hyperplane `x_1 = n` whose relative interior
/// contains the point where the target ray meets the hyperplane.
fn initial_simplex(v: &[Rational], n: &Integer) -> SimplicialBasis {
    let k = v.len();
    let m = k - 1;
    let p: RatVector = v[1..].iter().map(|x| x * rat_from_int(n) / &v[0]).collect();
    let base: IntVector = p.iter().map(|x| x.floor().to_integer()).collect();
    let frac: RatVector = p
        .iter()
        .zip(&base)
        .map(|(x, c)| x - rat_from_int(c))
        .collect();

    let distinct_nonzero =
        frac.iter().all(|f| !f.is_zero()) && (0..m).all(|i| (i + 1..m).all(|j| frac[i] != frac[j]));

    let lift = |h: IntVector| -> IntVector {
        let mut out = Vec::with_capacity(k);
        out.push(n.clone());
        out.extend(h);
        out
    };

    let vertices: Vec<IntVector> = if distinct_nonzero {
        // Kuhn simplex of the unit cube at `base`: walk the axes in order of
        // decreasing fractional part. Diameter sqrt(k-1), |det| = N.
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by(|&a, &b| frac[b].cmp(&frac[a]));
        let mut cur = base.clone();
        let mut vs = vec![lift(cur.clone())];
        for &axis in &order {
            cur[axis] += 1;
            vs.push(lift(cur.clone()));
        }
        vs
    } else {
        // The point sits on a face of every Kuhn simplex. Use the corner
        // simplex {y_i > base_i - 1, sum (y_i - base_i + 1) < 2m}, which
        // contains it in its interior.
        let corner: IntVector = base.iter().map(|c| c - 1).collect();
        let mut vs = vec![lift(corner.clone())];
        for axis in 0..m {
            let mut c = corner.clone();
            c[axis] += int(2 * m as i64);
            vs.push(lift(c));
        }
        vs
    };
    SimplicialBasis::new(vertices).expect("simplex on a hyperplane off the origin is nondegenerate")
}

/// Builds a unimodular basis `u_1..u_k` of `Z^k` with the target strictly
/// inside its cone, every `u_i` within the squared-sine tolerance of the
/// target, and every first coordinate positive.
///
/// Starts from a lattice simplex on the hyperplane `x_1 = N` around the
/// target ray (with `N` large enough for the angular bound) and, while
/// `|det| > 1`, inserts a lattice point of the semi-open parallelotope,
/// keeping the subcone that contains the ray. Among the available points
/// the one giving the smallest next `|det|` is taken.
pub fn regular_family(target: &TargetDirection) -> Result<RegularFamily, ConeError> {
    let v = target.v();
    let tol = target.tol_sin2();
    let k = v.len();

    if k == 1 {
        let basis = SimplicialBasis::new(vec![vec![Integer::one()]])?;
        return Ok(RegularFamily {
            coefficients: vec![v[0].clone()],
            trace: SubdivisionTrace {
                steps: vec![TraceStep {
                    basis: basis.clone(),
                    abs_det: Integer::one(),
                    point: None,
                    replaced: None,
                }],
            },
            basis,
            height: Integer::one(),
        });
    }

    let mut n = min_height(tol, k - 1);
    let mut basis = loop {
        let s = initial_simplex(v, &n);
        let mut ok = true;
        for u in s.vectors() {
            if sin2_between(v, u)? >= *tol {
                ok = false;
                break;
            }
        }
        if ok {
            break s;
        }
        n += 1;
    };

    let mut steps = Vec::new();
    while !basis.is_unimodular() {
        let abs_det = basis.abs_det();
        let mut best: Option<(Integer, Rational, IntVector, SimplicialBasis, usize)> = None;
        let mut saw_collinear = false;
        for (q, beta) in semiopen_lattice_points(&basis) {
            match subdivide_step_indexed(&basis, &q, v) {
                Ok((child, j)) => {
                    // |det(child)| = b_j |det(parent)|
                    let next = (rat_from_int(&abs_det) * &beta[j]).to_integer();
                    let sum: Rational = beta.iter().sum();
                    let better = match &best {
                        None => true,
                        Some((d, s, bq, _, _)) => (&next, &sum, &q) < (d, s, bq),
                    };
                    if better {
                        best = Some((next, sum, q, child, j));
                    }
                }
                Err(ConeError::RayOnWall) => saw_collinear |= collinear(&q, v),
                Err(e) => return Err(e),
            }
        }
        let Some((_, _, q, child, j)) = best else {
            return Err(if saw_collinear {
                ConeError::RayIsLattice
            } else {
                ConeError::RayOnWall
            });
        };
        steps.push(TraceStep {
            basis: basis.clone(),
            abs_det,
            point: Some(q),
            replaced: Some(j),
        });
        basis = child;
    }
    steps.push(TraceStep {
        abs_det: basis.abs_det(),
        basis: basis.clone(),
        point: None,
        replaced: None,
    });

    let coefficients = basis.coordinates(v)?;
    debug_assert!(coefficients.iter().all(Signed::is_positive));
    Ok(RegularFamily {
        basis,
        coefficients,
        trace: SubdivisionTrace { steps },
        height: n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, sin2_between};
    use crate::cone::{check_xi_regular, forms_of};

    fn ivec(xs: &[i64]) -> IntVector {
        xs.iter().map(|&x| int(x)).collect()
    }

    fn rvec(xs: &[i64]) -> RatVector {
        xs.iter().map(|&x| rat(x, 1)).collect()
    }

    #[test]
    fn semiopen_examples() {
        let id = SimplicialBasis::from_i64(&[&[1, 0], &[0, 1]]).unwrap();
        assert_eq!(lattice_point_in_semiopen(&id), None);
        let b = SimplicialBasis::from_i64(&[&[2, 0], &[0, 1]]).unwrap();
        assert_eq!(lattice_point_in_semiopen(&b), Some(ivec(&[1, 0])));
        let b = SimplicialBasis::from_i64(&[&[2, 1], &[1, 2]]).unwrap();
        assert_eq!(lattice_point_in_semiopen(&b), Some(ivec(&[1, 1])));
        let pts = semiopen_lattice_points(&b);
        assert_eq!(pts.len(), 2);
        let (_, beta) = pts.iter().find(|(q, _)| *q == ivec(&[1, 1])).unwrap();
        assert_eq!(beta, &vec![rat(1, 3), rat(1, 3)]);
    }

    /// Brute force over a box: the semi-open parallelotope holds exactly
    /// |det| lattice points (including 0).
    #[test]
    fn coset_enumeration_matches_box_search() {
        let b = SimplicialBasis::from_i64(&[&[3, 1, 0], &[1, 4, 1], &[0, 2, 5]]).unwrap();
        let det = b.abs_det();
        let mut found = Vec::new();
        for x in -2i64..=8 {
            for y in -2i64..=8 {
                for z in -2i64..=8 {
                    let p = ivec(&[x, y, z]);
                    let c = b.coordinates_int(&p).unwrap();
                    if c.iter().all(|t| !t.is_negative() && *t < rat(1, 1))
                        && p.iter().any(|t| !t.is_zero())
                    {
                        found.push(p);
                    }
                }
            }
        }
        found.sort();
        let mut pts: Vec<IntVector> = semiopen_lattice_points(&b)
            .into_iter()
            .map(|(q, _)| q)
            .collect();
        pts.sort();
        assert_eq!(pts, found);
        assert_eq!(Integer::from(pts.len() + 1), det);
    }

    #[test]
    fn subdivide_examples() {
        let b = SimplicialBasis::from_i64(&[&[2, 1], &[1, 2]]).unwrap();
        let out = subdivide_step(&b, &ivec(&[1, 1]), &rvec(&[3, 2])).unwrap();
        assert_eq!(out.vectors(), &[ivec(&[2, 1]), ivec(&[1, 1])]);

        let b = SimplicialBasis::from_i64(&[&[2, 0], &[0, 1]]).unwrap();
        let out = subdivide_step(&b, &ivec(&[1, 0]), &rvec(&[3, 1])).unwrap();
        assert_eq!(out.vectors(), &[ivec(&[1, 0]), ivec(&[0, 1])]);

        let b = SimplicialBasis::from_i64(&[&[2, 1], &[1, 2]]).unwrap();
        assert_eq!(
            subdivide_step(&b, &ivec(&[1, 1]), &rvec(&[1, 1])),
            Err(ConeError::RayOnWall)
        );
    }

    #[test]
    fn subdivide_rejects_bad_inputs() {
        let b = SimplicialBasis::from_i64(&[&[2, 1], &[1, 2]]).unwrap();
        assert_eq!(
            subdivide_step(&b, &ivec(&[2, 1]), &rvec(&[3, 2])),
            Err(ConeError::NotInSemiopen)
        );
        assert_eq!(
            subdivide_step(&b, &ivec(&[1, 1]), &rvec(&[1, 0])),
            Err(ConeError::TargetOutsideCone)
        );
    }

    #[test]
    fn dimension_one() {
        let t = TargetDirection::new(rvec(&[5]), rat(1, 3)).unwrap();
        let r = regular_family(&t).unwrap();
        assert_eq!(r.basis.vectors(), &[ivec(&[1])]);
        assert_eq!(r.coefficients, rvec(&[5]));
    }

    fn assert_regular(t: &TargetDirection, r: &RegularFamily) {
        assert!(r.basis.is_unimodular());
        assert!(r.coefficients.iter().all(Signed::is_positive));
        for u in r.basis.vectors() {
            assert!(sin2_between(t.v(), u).unwrap() < *t.tol_sin2());
            assert!(u[0].is_positive());
        }
        assert!(r.trace.is_strictly_decreasing());
        assert_eq!(r.trace.steps.last().unwrap().abs_det, Integer::one());
        assert!(check_xi_regular(&forms_of(&r.basis), t.v()).unwrap());
    }

    #[test]
    fn fibonacci_direction() {
        let t = TargetDirection::new(rvec(&[610, 987]), rat(1, 1000)).unwrap();
        let r = regular_family(&t).unwrap();
        assert_regular(&t, &r);
        // every stage keeps the ray strictly inside
        for s in &r.trace.steps {
            assert!(s
                .basis
                .coordinates(t.v())
                .unwrap()
                .iter()
                .all(Signed::is_positive));
        }
    }

    #[test]
    fn lattice_ray_with_tight_tolerance() {
        let t = TargetDirection::new(rvec(&[1, 1]), rat(1, 100)).unwrap();
        assert_eq!(regular_family(&t), Err(ConeError::RayIsLattice));
    }

    #[test]
    fn three_dimensional_targets() {
        for v in [[7i64, 3, 11], [13, -5, 2], [1, 1, 2], [100, 37, 61]] {
            let t =
                TargetDirection::new(v.iter().map(|&x| rat(x, 1)).collect(), rat(1, 200)).unwrap();
            match regular_family(&t) {
                Ok(r) => assert_regular(&t, &r),
                Err(ConeError::RayIsLattice | ConeError::RayOnWall) => {
                    let r = regular_family(&t.perturbed()).unwrap();
                    assert_regular(&t.perturbed(), &r);
                }
                Err(e) => panic!("{e}"),
            }
        }
    }

    #[test]
    fn min_height_is_smallest() {
        let n = min_height(&rat(1, 1000), 1);
        assert_eq!(n, int(32)); // 31^2 = 961 <= 1000 < 1024
        assert_eq!(min_height(&rat(1, 2), 1), int(2));
    }

    /// Every ray of the parent with coordinates in (1/10) Z lies in one of
    /// the children.
    #[test]
    fn children_cover_parent() {
        let parents = [
            SimplicialBasis::from_i64(&[&[2, 1], &[1, 2]]).unwrap(),
            SimplicialBasis::from_i64(&[&[3, 1], &[1, 2]]).unwrap(),
            SimplicialBasis::from_i64(&[&[2, 0, 0], &[0, 1, 1], &[1, 0, 3]]).unwrap(),
            SimplicialBasis::from_i64(&[&[1, 1, 0], &[1, -1, 0], &[0, 1, 3]]).unwrap(),
        ];
        for parent in &parents {
            let k = parent.dim();
            assert!(parent.abs_det() <= int(6));
            for (q, _) in semiopen_lattice_points(parent) {
                let children = subdivision_children(parent, &q).unwrap();
                for child in children.iter().map(|(_, c)| c) {
                    assert!(child.abs_det() < parent.abs_det());
                }
                let mut lam = vec![0i64; k];
                loop {
                    if lam.iter().any(|&l| l != 0) {
                        let x: RatVector = (0..k)
                            .map(|r| {
                                (0..k).fold(rat(0, 1), |acc, i| {
                                    acc + rat(lam[i], 10) * rat_from_int(&parent.vectors()[i][r])
                                })
                            })
                            .collect();
                        let covered = children.iter().any(|(_, c)| {
                            c.coordinates(&x).unwrap().iter().all(|t| !t.is_negative())
                        });
                        assert!(covered, "{x:?} not covered for q = {q:?}");
                    }
                    let mut i = 0;
                    while i < k {
                        lam[i] += 1;
                        if lam[i] <= 10 {
                            break;
                        }
                        lam[i] = 0;
                        i += 1;
                    }
                    if i == k {
                        break;
                    }
                }
            }
        }
    }
}
