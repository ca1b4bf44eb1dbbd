//! Cone decompositions of the dominant lattice and the convergence oracle.
//!
//! The dominant cone of the invariant cocharacter lattice (modulo its
//! central sublattice) is covered, disjointly, by finitely many shifted
//! copies of the free monoid on scaled dual generators. Summing a
//! character over the cone then reduces to geometric series, one per
//! generator direction, and convergence is decided by the exact sign of
//! the exponent in each direction. Verdicts never depend on the truncated
//! numeric sums, which are demonstration output only.

use num::{BigInt, Integer, One, Signed, ToPrimitive, Zero};

use crate::criteria::{relative_positivity, ExponentProfile, ThetaParabolic};
use crate::error::{Error, Result};
use crate::linalg::{integer_kernel, lattice_quotient, smith, solve_in_span, Int, LatticeQuotient, QMat, Rat, RatVec};
use crate::sympair::{CosetReps, DescendentSystem};

fn int_vec_to_rat(v: &[Int]) -> RatVec {
    RatVec::new(v.iter().map(|x| Rat::from_integer(x.clone())).collect())
}

/// Coordinates on the invariant cocharacter lattice modulo the central
/// sublattice (the common kernel of the restricted simple roots).
struct QuotientCoords {
    ambient_dim: usize,
    /// Basis of the invariant lattice, as ambient integer vectors.
    fixed_basis: Vec<Vec<Int>>,
    /// Rank of the central sublattice inside the invariant lattice.
    central_rank: usize,
    quot_rank: usize,
    u: Vec<Vec<Int>>,
    u_inv: Vec<Vec<Int>>,
}

impl QuotientCoords {
    fn lift(&self, q: &[Int]) -> Vec<Int> {
        assert_eq!(q.len(), self.quot_rank);
        let p = self.fixed_basis.len();
        let mut full = vec![Int::zero(); p];
        for (k, val) in q.iter().enumerate() {
            full[self.central_rank + k] = val.clone();
        }
        let coords: Vec<Int> = (0..p)
            .map(|i| self.u_inv[i].iter().zip(&full).map(|(a, b)| a * b).sum())
            .collect();
        let mut x = vec![Int::zero(); self.ambient_dim];
        for (j, c) in coords.iter().enumerate() {
            for (d, xv) in x.iter_mut().enumerate() {
                *xv += c * &self.fixed_basis[j][d];
            }
        }
        x
    }

    fn to_quot(&self, x: &[Int]) -> Result<Vec<Int>> {
        let cols: Vec<RatVec> = self.fixed_basis.iter().map(|b| int_vec_to_rat(b)).collect();
        let target = int_vec_to_rat(x);
        let coeffs = solve_in_span(&target, &cols)?
            .ok_or_else(|| Error::Internal("vector outside the invariant lattice".into()))?;
        let coords: Vec<Int> = coeffs
            .iter()
            .map(|c| {
                if c.denom().is_one() {
                    Ok(c.numer().clone())
                } else {
                    Err(Error::Internal("non-integral lattice coordinates".into()))
                }
            })
            .collect::<Result<_>>()?;
        Ok((0..self.quot_rank)
            .map(|k| {
                self.u[self.central_rank + k]
                    .iter()
                    .zip(&coords)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }
}

/// Scaled dual generators of the dominant cone, the finite-index monoid
/// lattice they generate, and the adjusted coset transversal covering the
/// dominant lattice points.
pub struct ConeDecomposition {
    pub quot_rank: usize,
    /// Per restricted simple position: the scaled dual generator as an
    /// ambient integer vector.
    pub y_ambient: Vec<Vec<Int>>,
    /// The same generators in quotient coordinates.
    pub y_quot: Vec<Vec<Int>>,
    /// Pairing of each simple root with its own generator (positive).
    pub c_alpha: Vec<Int>,
    /// Pairing of simple root i with the quotient basis vector j.
    pub pairing_rows: Vec<Vec<Int>>,
    pub quotient: LatticeQuotient,
    /// Coset representatives adjusted into the dominant cone.
    pub transversal: Vec<Vec<Int>>,
    /// Ambient integer basis of the central sublattice.
    pub central_basis: Vec<Vec<Int>>,
    coords: QuotientCoords,
}

impl ConeDecomposition {
    pub fn pairing_quot(&self, simple_pos: usize, x: &[Int]) -> Int {
        self.pairing_rows[simple_pos]
            .iter()
            .zip(x)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn is_dominant_quot(&self, x: &[Int]) -> bool {
        (0..self.quot_rank).all(|i| !self.pairing_quot(i, x).is_negative())
    }

    pub fn lift(&self, x: &[Int]) -> Vec<Int> {
        self.coords.lift(x)
    }

    /// Membership of a quotient point in `e + (nonnegative span of the
    /// generators)`: the transversal index and the coefficients.
    pub fn cone_member(&self, x: &[Int]) -> Result<Option<(usize, Vec<Int>)>> {
        let gens: Vec<RatVec> = self.y_quot.iter().map(|y| int_vec_to_rat(y)).collect();
        for (e_idx, e) in self.transversal.iter().enumerate() {
            let diff: Vec<Int> = x.iter().zip(e).map(|(a, b)| a - b).collect();
            let coeffs = solve_in_span(&int_vec_to_rat(&diff), &gens)?;
            if let Some(coeffs) = coeffs {
                if coeffs.iter().all(|c| c.denom().is_one() && !c.is_negative()) {
                    return Ok(Some((
                        e_idx,
                        coeffs.into_iter().map(|c| c.numer().clone()).collect(),
                    )));
                }
            }
        }
        Ok(None)
    }
}

/// Build the cone decomposition: solve for dual generators inside the span
/// of the restricted simple roots, scale them into the lattice by minimal
/// positive integers, and adjust a coset transversal of the quotient into
/// the dominant cone.
pub fn dual_generators(ds: &DescendentSystem) -> Result<ConeDecomposition> {
    let delta = ds.delta_gh_roots();
    let t = delta.len();
    if t == 0 {
        return Err(Error::EmptySimpleSet);
    }
    let n = ds.rank();
    let theta = ds.theta();
    // Invariant integer lattice: kernel of (theta - id) over the integers.
    let theta_minus_id: Vec<Vec<Int>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut e = theta.entry(i, j).clone();
                    if i == j {
                        e -= 1;
                    }
                    e
                })
                .collect()
        })
        .collect();
    let fixed_basis = integer_kernel(&theta_minus_id);
    let p = fixed_basis.len();
    if p < t {
        return Err(Error::Internal(
            "invariant lattice rank below the number of simple roots".into(),
        ));
    }
    // Pairings of the simple roots with the invariant basis are integral.
    let mut pairing_fixed: Vec<Vec<Int>> = Vec::with_capacity(t);
    for a in &delta {
        let mut row = Vec::with_capacity(p);
        for b in &fixed_basis {
            let v = a.dot(&int_vec_to_rat(b));
            if !v.denom().is_one() {
                return Err(Error::Internal(
                    "simple root pairs non-integrally with the invariant lattice".into(),
                ));
            }
            row.push(v.numer().clone());
        }
        pairing_fixed.push(row);
    }
    // Central sublattice: common kernel of the simple roots.
    let central_coords = integer_kernel(&pairing_fixed);
    let z = central_coords.len();
    if p - z != t {
        return Err(Error::Internal(format!(
            "quotient rank {} differs from the number of simple roots {t}",
            p - z
        )));
    }
    let (u, u_inv) = if z == 0 {
        let id: Vec<Vec<Int>> = (0..p)
            .map(|i| {
                (0..p)
                    .map(|j| if i == j { Int::one() } else { Int::zero() })
                    .collect()
            })
            .collect();
        (id.clone(), id)
    } else {
        // Columns are the central coordinate vectors.
        let c_mat: Vec<Vec<Int>> = (0..p)
            .map(|i| central_coords.iter().map(|c| c[i].clone()).collect())
            .collect();
        let sf = smith(&c_mat);
        if sf.diag[..z.min(sf.diag.len())].iter().any(|d| !d.is_one()) {
            return Err(Error::Internal("central sublattice is not saturated".into()));
        }
        (sf.u, sf.u_inv)
    };
    let coords = QuotientCoords {
        ambient_dim: n,
        fixed_basis: fixed_basis.clone(),
        central_rank: z,
        quot_rank: t,
        u,
        u_inv,
    };
    let central_basis: Vec<Vec<Int>> = central_coords
        .iter()
        .map(|c| {
            let mut x = vec![Int::zero(); n];
            for (j, cj) in c.iter().enumerate() {
                for (d, xv) in x.iter_mut().enumerate() {
                    *xv += cj * &fixed_basis[j][d];
                }
            }
            x
        })
        .collect();
    // Pairing of each simple root with the quotient basis vectors.
    let mut pairing_rows = vec![vec![Int::zero(); t]; t];
    for j in 0..t {
        let mut e = vec![Int::zero(); t];
        e[j] = Int::one();
        let lifted = coords.lift(&e);
        for (i, a) in delta.iter().enumerate() {
            let v = a.dot(&int_vec_to_rat(&lifted));
            if !v.denom().is_one() {
                return Err(Error::Internal("non-integral quotient pairing".into()));
            }
            pairing_rows[i][j] = v.numer().clone();
        }
    }
    // Dual generators inside the span of the simple roots: invert the Gram
    // matrix and scale each solution into the lattice.
    let gram = QMat::new(
        delta
            .iter()
            .map(|a| delta.iter().map(|b| a.dot(b)).collect())
            .collect(),
    );
    let gram_inv = gram
        .inverse()
        .ok_or_else(|| Error::Internal("Gram matrix of simple roots is singular".into()))?;
    let mut y_ambient = Vec::with_capacity(t);
    let mut y_quot = Vec::with_capacity(t);
    let mut c_alpha = Vec::with_capacity(t);
    for b in 0..t {
        // Rational dual vector: sum_j (gram^-1)_{jb} alpha_j.
        let mut y = RatVec::zeros(n);
        for (j, a) in delta.iter().enumerate() {
            let coef = gram_inv.rows()[j][b].clone();
            if !coef.is_zero() {
                y = y.add(&a.scale(&coef));
            }
        }
        let k = y.denominator_lcm();
        let scaled = y.scale(&Rat::from_integer(k.clone()));
        let y_int = scaled
            .to_int_vec()
            .ok_or_else(|| Error::Internal("scaled dual generator not integral".into()))?;
        // <alpha_b, y_b> equals the scale factor; positive by construction.
        let check = delta[b].dot(&int_vec_to_rat(&y_int));
        if !check.denom().is_one() || check.numer() != &k || !k.is_positive() {
            return Err(Error::Internal("dual generator normalization failed".into()));
        }
        y_quot.push(coords.to_quot(&y_int)?);
        y_ambient.push(y_int);
        c_alpha.push(k);
    }
    // Orthogonality across distinct generators.
    for (i, a) in delta.iter().enumerate() {
        for (j, y) in y_ambient.iter().enumerate() {
            let v = a.dot(&int_vec_to_rat(y));
            if i == j {
                if !v.is_positive() {
                    return Err(Error::Internal("diagonal pairing not positive".into()));
                }
            } else if !v.is_zero() {
                return Err(Error::Internal("off-diagonal pairing not zero".into()));
            }
        }
    }
    let quotient = lattice_quotient(t, &y_quot)?;
    // Shift every representative into the dominant cone, minimally.
    let mut transversal = Vec::with_capacity(quotient.transversal.len());
    for e0 in &quotient.transversal {
        let mut e = e0.clone();
        for (a, (ya, ca)) in y_quot.iter().zip(&c_alpha).enumerate() {
            let v: Int = pairing_rows[a].iter().zip(&e).map(|(r, x)| r * x).sum();
            let shift = -v.div_floor(ca);
            if !shift.is_zero() {
                for (d, yd) in ya.iter().enumerate() {
                    e[d] += &shift * yd;
                }
            }
        }
        transversal.push(e);
    }
    let decomp = ConeDecomposition {
        quot_rank: t,
        y_ambient,
        y_quot,
        c_alpha,
        pairing_rows,
        quotient,
        transversal,
        central_basis,
        coords,
    };
    for e in &decomp.transversal {
        if !decomp.is_dominant_quot(e) {
            return Err(Error::Internal("adjusted representative not dominant".into()));
        }
    }
    Ok(decomp)
}

/// Exhaustive check of the disjoint covering on a coordinate box: every
/// dominant lattice point lies in exactly one shifted cone, every
/// non-dominant point in none.
#[derive(Clone, Debug)]
pub struct CoverReport {
    pub box_bound: i64,
    pub points: usize,
    pub dominant_points: usize,
    pub ok: bool,
    pub failures: Vec<Vec<i64>>,
}

pub fn verify_cover(decomp: &ConeDecomposition, box_bound: i64) -> Result<CoverReport> {
    let t = decomp.quot_rank;
    let mut point = vec![-box_bound; t];
    let mut report = CoverReport {
        box_bound,
        points: 0,
        dominant_points: 0,
        ok: true,
        failures: vec![],
    };
    loop {
        let x: Vec<Int> = point.iter().map(|&v| Int::from(v)).collect();
        report.points += 1;
        let dominant = decomp.is_dominant_quot(&x);
        let mut members = 0;
        let gens: Vec<RatVec> = decomp.y_quot.iter().map(|y| int_vec_to_rat(y)).collect();
        for e in &decomp.transversal {
            let diff: Vec<Int> = x.iter().zip(e).map(|(a, b)| a - b).collect();
            if let Some(coeffs) = solve_in_span(&int_vec_to_rat(&diff), &gens)? {
                if coeffs.iter().all(|c| c.denom().is_one() && !c.is_negative()) {
                    members += 1;
                }
            }
        }
        let expected = usize::from(dominant);
        if dominant {
            report.dominant_points += 1;
        }
        if members != expected {
            report.ok = false;
            if report.failures.len() < 16 {
                report.failures.push(point.clone());
            }
        }
        // odometer
        let mut pos = t;
        while pos > 0 {
            pos -= 1;
            point[pos] += 1;
            if point[pos] <= box_bound {
                break;
            }
            point[pos] = -box_bound;
            if pos == 0 {
                return Ok(report);
            }
        }
        if t == 0 {
            return Ok(report);
        }
    }
}

/// One oracle evaluation: exact exponents in every free generator
/// direction, the exact central obstruction, the convergence verdict, the
/// matching criterion verdict, and illustrative truncated sums.
#[derive(Clone, Debug)]
pub struct OracleRow {
    pub subset: Vec<usize>,
    pub chi: usize,
    pub w: usize,
    /// (restricted simple position, exact exponent).
    pub exponents: Vec<(usize, Rat)>,
    /// Pairings with the central lattice basis; the weight descends to the
    /// summation cone only when these vanish.
    pub central: Vec<Rat>,
    pub converges: bool,
    pub criterion_ok: bool,
    /// Truncated sums per direction (floating point, report only).
    pub partial_sums: Vec<(usize, Vec<f64>)>,
}

#[derive(Clone, Debug)]
pub struct ConvergenceReport {
    pub q: u64,
    pub depth: usize,
    pub rows: Vec<OracleRow>,
    pub all_agree: bool,
    pub missing_subsets: Vec<Vec<usize>>,
}

/// Series oracle: for each supplied (subset, exponent) and each transversal
/// representative, pair the shifted exponent with the dual generators. The
/// series converges iff every free-direction exponent is strictly positive
/// and the central pairings vanish. The verdict is compared against the
/// cone-membership criterion on every row; they are dual formulations and
/// must agree.
pub fn convergence_oracle(
    ds: &DescendentSystem,
    reps: &CosetReps,
    pars: &[ThetaParabolic],
    profile: &ExponentProfile,
    decomp: &ConeDecomposition,
    q: u64,
    depth: usize,
) -> Result<ConvergenceReport> {
    if q < 2 {
        return Err(Error::BadParameters("residue cardinality q must be >= 2".into()));
    }
    let _ = ds;
    let by_subset: std::collections::BTreeMap<Vec<usize>, &ThetaParabolic> =
        pars.iter().map(|p| (p.subset.clone(), p)).collect();
    let y_rat: Vec<RatVec> = decomp.y_ambient.iter().map(|y| int_vec_to_rat(y)).collect();
    let central_rat: Vec<RatVec> = decomp
        .central_basis
        .iter()
        .map(|zv| int_vec_to_rat(zv))
        .collect();
    let mut rows = Vec::new();
    let mut all_agree = true;
    for (subset, vecs) in &profile.entries {
        let par = by_subset
            .get(subset)
            .ok_or_else(|| Error::BadParameters(format!("no face for subset {subset:?}")))?;
        let free: Vec<usize> = (0..decomp.quot_rank)
            .filter(|p| !subset.contains(p))
            .collect();
        for (chi_idx, chi) in vecs.iter().enumerate() {
            for (w_idx, rho) in reps.rho.iter().enumerate() {
                let lambda = rho.add(chi);
                let exponents: Vec<(usize, Rat)> = free
                    .iter()
                    .map(|&p| (p, lambda.dot(&y_rat[p])))
                    .collect();
                let central: Vec<Rat> = central_rat.iter().map(|zv| lambda.dot(zv)).collect();
                let converges = exponents.iter().all(|(_, e)| e.is_positive())
                    && central.iter().all(|c| c.is_zero());
                let criterion_ok = relative_positivity(par, &lambda, true)?.ok;
                if converges != criterion_ok {
                    all_agree = false;
                }
                let partial_sums: Vec<(usize, Vec<f64>)> = exponents
                    .iter()
                    .map(|(p, e)| {
                        let ef = e.to_f64().unwrap_or(f64::NAN);
                        let qf = q as f64;
                        let mut acc = 0.0;
                        let sums: Vec<f64> = (0..=depth)
                            .map(|k| {
                                acc += qf.powf(-(k as f64) * ef);
                                acc
                            })
                            .collect();
                        (*p, sums)
                    })
                    .collect();
                rows.push(OracleRow {
                    subset: subset.clone(),
                    chi: chi_idx,
                    w: w_idx,
                    exponents,
                    central,
                    converges,
                    criterion_ok,
                    partial_sums,
                });
            }
        }
    }
    let missing_subsets: Vec<Vec<usize>> = pars
        .iter()
        .map(|p| p.subset.clone())
        .filter(|s| !profile.entries.contains_key(s))
        .collect();
    Ok(ConvergenceReport {
        q,
        depth,
        rows,
        all_agree,
        missing_subsets,
    })
}

/// Exact truncated sum of `q^{-<weight, x>}` over the dominant lattice
/// points with quotient coordinates bounded by `box_bound`, enumerated
/// through the disjoint cone decomposition. The weight must vanish on the
/// central lattice and pair integrally with every enumerated point.
pub fn weighted_cone_sum(
    decomp: &ConeDecomposition,
    weight: &RatVec,
    q: u64,
    box_bound: i64,
) -> Result<Rat> {
    if q < 2 {
        return Err(Error::BadParameters("residue cardinality q must be >= 2".into()));
    }
    if box_bound < 0 {
        return Err(Error::BadParameters("box bound must be nonnegative".into()));
    }
    for z in &decomp.central_basis {
        if !weight.dot(&int_vec_to_rat(z)).is_zero() {
            return Err(Error::BadParameters(
                "weight exponent does not vanish on the central lattice".into(),
            ));
        }
    }
    let t = decomp.quot_rank;
    let qr = Rat::from_integer(BigInt::from(q));
    let mut total = Rat::zero();
    // Per-direction bound: <alpha, x> <= box * sum |pairing row| on the box,
    // and <alpha, e + sum n y> >= n_alpha * c_alpha.
    let bounds: Vec<i64> = (0..t)
        .map(|a| {
            let r: Int = decomp.pairing_rows[a]
                .iter()
                .map(|v| v.abs())
                .sum::<Int>()
                * Int::from(box_bound);
            (r / &decomp.c_alpha[a]).to_i64().unwrap_or(i64::MAX)
        })
        .collect();
    for e in &decomp.transversal {
        let mut n = vec![0i64; t];
        'points: loop {
            // x = e + sum n_a y_a
            let mut x = e.clone();
            for (a, &na) in n.iter().enumerate() {
                if na != 0 {
                    for (d, yd) in decomp.y_quot[a].iter().enumerate() {
                        x[d] += yd * Int::from(na);
                    }
                }
            }
            if x.iter().all(|v| v.abs() <= Int::from(box_bound)) {
                let lifted = decomp.lift(&x);
                let a = weight.dot(&int_vec_to_rat(&lifted));
                if !a.denom().is_one() {
                    return Err(Error::NonIntegralExponent(format!(
                        "weight pairs to {a} at lattice point {x:?}"
                    )));
                }
                let exp = a
                    .numer()
                    .to_i32()
                    .ok_or_else(|| Error::NonIntegralExponent("exponent overflow".into()))?;
                total += qr.pow(-exp);
            }
            // odometer over n within bounds
            let mut pos = t;
            while pos > 0 {
                pos -= 1;
                n[pos] += 1;
                if n[pos] <= bounds[pos] {
                    continue 'points;
                }
                n[pos] = 0;
            }
            break;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{self, FamilySpec};
    use crate::linalg::rat;
    use crate::sympair::{build_descendent, coset_transversal};

    fn decomp_for(spec: &FamilySpec) -> (crate::sympair::DescendentSystem, ConeDecomposition) {
        let (datum, inv) = families::instantiate(spec).unwrap();
        let ds = build_descendent(&datum, &inv).unwrap();
        let d = dual_generators(&ds).unwrap();
        (ds, d)
    }

    #[test]
    fn rank_one_cover() {
        // BC_1 from the rank-three orthogonal pair: one generator, the
        // dominant half-line covered disjointly.
        let (_, d) = decomp_for(&FamilySpec::GlOrthogonal { n: 3, r: 1 });
        assert_eq!(d.quot_rank, 1);
        let report = verify_cover(&d, 12).unwrap();
        assert!(report.ok, "failures: {:?}", report.failures);
    }

    #[test]
    fn dual_pairings_are_diagonal() {
        let (ds, d) = decomp_for(&FamilySpec::GlOrthogonal { n: 4, r: 2 });
        let delta = ds.delta_gh_roots();
        for (i, a) in delta.iter().enumerate() {
            for (j, y) in d.y_ambient.iter().enumerate() {
                let v = a.dot(&int_vec_to_rat(y));
                if i == j {
                    assert!(v.is_positive());
                    assert_eq!(v, Rat::from_integer(d.c_alpha[i].clone()));
                } else {
                    assert!(v.is_zero());
                }
            }
        }
        let report = verify_cover(&d, 6).unwrap();
        assert!(report.ok);
    }

    #[test]
    fn cover_with_nontrivial_center() {
        // The torus pair has a one-dimensional invariant center.
        let (_, d) = decomp_for(&FamilySpec::GlLinear { n1: 1, n2: 1 });
        assert_eq!(d.quot_rank, 1);
        assert_eq!(d.central_basis.len(), 1);
        let report = verify_cover(&d, 8).unwrap();
        assert!(report.ok);
    }

    #[test]
    fn trivial_and_index_two_half_line() {
        // Synthetic rank-one: generator twice a basis vector gives an
        // index-two cover of the half-line with representatives {0, 1}.
        let q = lattice_quotient(1, &[vec![Int::from(2)]]).unwrap();
        assert_eq!(q.index, Int::from(2));
        let mut reps: Vec<Int> = q.transversal.iter().map(|v| v[0].mod_floor(&Int::from(2))).collect();
        reps.sort();
        assert_eq!(reps, vec![Int::zero(), Int::one()]);
    }

    #[test]
    fn weighted_sum_examples() {
        let (ds, d) = decomp_for(&FamilySpec::GlOrthogonal { n: 3, r: 1 });
        // weight pairing to 1 on the single generator: 1 + 1/2 + 1/4 + 1/8
        let eta = ds.delta_gh_roots()[0].clone();
        let c = Rat::from_integer(d.c_alpha[0].clone());
        let weight = eta.scale(&(Rat::from_integer(1.into()) / c));
        let s = weighted_cone_sum(&d, &weight, 2, 3).unwrap();
        assert_eq!(s, rat(15, 8));
        // zero weight counts lattice points: 4 on the half-line of length 3
        let zero = RatVec::zeros(ds.rank());
        let s = weighted_cone_sum(&d, &zero, 2, 3).unwrap();
        assert_eq!(s, rat(4, 1));
    }

    #[test]
    fn oracle_agrees_with_criterion_on_simple_inputs() {
        let (datum, inv) =
            families::instantiate(&FamilySpec::GlOrthogonal { n: 3, r: 1 }).unwrap();
        let ds = build_descendent(&datum, &inv).unwrap();
        let reps = coset_transversal(&ds).unwrap();
        let pars = crate::criteria::theta_parabolics(&ds).unwrap();
        let d = dual_generators(&ds).unwrap();
        // zero exponent at the minimal face: converges since the test
        // character is strictly positive
        let profile = crate::criteria::ExponentProfile::new(
            &ds,
            &[(vec![], vec![RatVec::zeros(3)])],
            crate::criteria::CoordsMode::Full,
        )
        .unwrap();
        let rep = convergence_oracle(&ds, &reps, &pars, &profile, &d, 3, 12).unwrap();
        assert!(rep.all_agree);
        assert!(rep.rows.iter().all(|r| r.converges));
        // partial sums approach 3/2 for exponent 1 at q = 3
        let row = &rep.rows[0];
        let (_, sums) = &row.partial_sums[0];
        assert!((sums.last().unwrap() - 1.5).abs() < 1e-4);
        // a deliberately negative exponent diverges with criterion agreement
        let bad = reps.rho[0].scale(&rat(-3, 1));
        let profile = crate::criteria::ExponentProfile::new(
            &ds,
            &[(vec![], vec![bad])],
            crate::criteria::CoordsMode::Full,
        )
        .unwrap();
        let rep = convergence_oracle(&ds, &reps, &pars, &profile, &d, 3, 12).unwrap();
        assert!(rep.all_agree);
        assert!(rep.rows.iter().all(|r| !r.converges));
    }

    #[test]
    fn non_descending_weights_are_rejected() {
        // half pairing: exact rational power would be irrational
        let (ds, d) = decomp_for(&FamilySpec::GlOrthogonal { n: 3, r: 1 });
        let eta = ds.delta_gh_roots()[0].clone();
        let c = Rat::from_integer(d.c_alpha[0].clone());
        let weight = eta.scale(&(rat(1, 2) / c));
        let err = weighted_cone_sum(&d, &weight, 2, 3).unwrap_err();
        assert!(matches!(err, Error::NonIntegralExponent(_)));
        // a weight with a central component does not descend
        let (ds, d) = decomp_for(&FamilySpec::GlLinear { n1: 1, n2: 1 });
        let central = RatVec::from_ints(&[1, 1]);
        let err = weighted_cone_sum(&d, &central, 2, 3).unwrap_err();
        assert!(matches!(err, Error::BadParameters(_)));
        let _ = ds;
    }

    #[test]
    fn q_only_scales_partial_sums() {
        let (datum, inv) =
            families::instantiate(&FamilySpec::GlOrthogonal { n: 3, r: 1 }).unwrap();
        let ds = build_descendent(&datum, &inv).unwrap();
        let reps = coset_transversal(&ds).unwrap();
        let pars = crate::criteria::theta_parabolics(&ds).unwrap();
        let d = dual_generators(&ds).unwrap();
        let profile = crate::criteria::ExponentProfile::new(
            &ds,
            &[(vec![], vec![RatVec::zeros(3)])],
            crate::criteria::CoordsMode::Full,
        )
        .unwrap();
        let r2 = convergence_oracle(&ds, &reps, &pars, &profile, &d, 2, 8).unwrap();
        let r5 = convergence_oracle(&ds, &reps, &pars, &profile, &d, 5, 8).unwrap();
        for (a, b) in r2.rows.iter().zip(&r5.rows) {
            assert_eq!(a.converges, b.converges);
            assert_eq!(a.exponents, b.exponents);
        }
    }
}
