//! Descendent root systems of symmetric pairs.
//!
//! From an ambient root datum with an involution this module derives the
//! restricted (descendent) root system with its three multiplicity layers,
//! the subgroup root system, the distinguished coset transversal of the two
//! Weyl groups, and the relative test characters attached to each coset
//! representative. The test characters are always computed by two
//! independent formulas and cross-checked; a mismatch is a hard error.

use std::collections::{BTreeMap, HashMap};

use num::{Integer, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{eigenprojection, rat, solve_in_span, IntMat, QMat, Rat, RatVec};
use crate::rootsys::{simple_roots_of, weyl_closure_in, RootSystem, WeylGroup, DEFAULT_WEYL_CAP};

/// Ambient root datum: roots as integer vectors in the character lattice,
/// a distinguished simple basis, and a multiplicity (root space dimension)
/// per root.
#[derive(Clone, Debug)]
pub struct RootDatumG {
    rank: usize,
    roots: Vec<RatVec>,
    simple: Vec<usize>,
    mult: Vec<u32>,
    positive: Vec<bool>,
    index: HashMap<RatVec, usize>,
}

impl RootDatumG {
    pub fn new(
        rank: usize,
        roots: Vec<RatVec>,
        simple_indices: Vec<usize>,
        mult: Vec<u32>,
    ) -> Result<Self> {
        if mult.len() != roots.len() {
            return Err(Error::InvalidRootDatum(
                "multiplicity list length differs from root list".into(),
            ));
        }
        let mut index = HashMap::new();
        for (i, r) in roots.iter().enumerate() {
            if r.dim() != rank {
                return Err(Error::InvalidRootDatum(format!(
                    "root {r:?} does not have dimension {rank}"
                )));
            }
            if r.is_zero() {
                return Err(Error::InvalidRootDatum("zero vector listed as root".into()));
            }
            if !r.is_integral() {
                return Err(Error::InvalidRootDatum(format!(
                    "root {r:?} is not an integer vector"
                )));
            }
            if mult[i] == 0 {
                return Err(Error::InvalidRootDatum("zero multiplicity".into()));
            }
            if index.insert(r.clone(), i).is_some() {
                return Err(Error::InvalidRootDatum(format!("duplicate root {r:?}")));
            }
        }
        for (i, r) in roots.iter().enumerate() {
            let Some(&j) = index.get(&r.neg()) else {
                return Err(Error::InvalidRootDatum(format!(
                    "root set not closed under negation at {r:?}"
                )));
            };
            if mult[i] != mult[j] {
                return Err(Error::InvalidRootDatum(format!(
                    "multiplicities of {r:?} and its negative differ"
                )));
            }
        }
        let mut seen = std::collections::HashSet::new();
        for &s in &simple_indices {
            if s >= roots.len() || !seen.insert(s) {
                return Err(Error::InvalidRootDatum("bad simple root index".into()));
            }
        }
        let simple_vecs: Vec<RatVec> = simple_indices.iter().map(|&i| roots[i].clone()).collect();
        if crate::linalg::rank_of(&simple_vecs) != simple_vecs.len() {
            return Err(Error::InvalidRootDatum(
                "simple roots are linearly dependent".into(),
            ));
        }
        // Positivity from the expansion over the simple basis.
        let mut positive = vec![false; roots.len()];
        for (i, r) in roots.iter().enumerate() {
            let Some(coeffs) = solve_in_span(r, &simple_vecs)? else {
                return Err(Error::InvalidRootDatum(format!(
                    "root {r:?} is outside the span of the simple roots"
                )));
            };
            let ok_int = coeffs.iter().all(|c| c.denom().is_one());
            let all_nonneg = coeffs.iter().all(|c| !c.is_negative());
            let all_nonpos = coeffs.iter().all(|c| !c.is_positive());
            if !ok_int || !(all_nonneg || all_nonpos) {
                return Err(Error::InvalidRootDatum(format!(
                    "root {r:?} is not an integer combination of simples with uniform sign"
                )));
            }
            positive[i] = all_nonneg;
        }
        // Cartan gate and reflection closure.
        for a in &roots {
            let aa = a.dot(a);
            for b in &roots {
                let c = b.dot(a) * rat(2, 1) / aa.clone();
                if !c.denom().is_one() {
                    return Err(Error::NotARootSystem(format!(
                        "ambient Cartan integer for ({b:?},{a:?}) not integral"
                    )));
                }
                if !index.contains_key(&crate::rootsys::reflect(b, a)) {
                    return Err(Error::NotARootSystem(format!(
                        "ambient root set not closed under reflection of {b:?} in {a:?}"
                    )));
                }
            }
        }
        // The given simples must be the indecomposables of the derived
        // positive system.
        let pos_vecs: Vec<RatVec> = roots
            .iter()
            .enumerate()
            .filter(|(i, _)| positive[*i])
            .map(|(_, r)| r.clone())
            .collect();
        let mut derived = simple_roots_of(&pos_vecs)?;
        let mut given = simple_vecs.clone();
        derived.sort();
        given.sort();
        if derived != given {
            return Err(Error::InvalidRootDatum(
                "simple roots are not the indecomposable positive roots".into(),
            ));
        }
        Ok(RootDatumG {
            rank,
            roots,
            simple: simple_indices,
            mult,
            positive,
            index,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn roots(&self) -> &[RatVec] {
        &self.roots
    }

    pub fn root(&self, i: usize) -> &RatVec {
        &self.roots[i]
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn mult(&self, i: usize) -> u32 {
        self.mult[i]
    }

    pub fn is_positive(&self, i: usize) -> bool {
        self.positive[i]
    }

    pub fn simple_indices(&self) -> &[usize] {
        &self.simple
    }

    pub fn simple_root(&self, pos: usize) -> &RatVec {
        &self.roots[self.simple[pos]]
    }

    pub fn num_simple(&self) -> usize {
        self.simple.len()
    }

    pub fn index_of(&self, v: &RatVec) -> Option<usize> {
        self.index.get(v).copied()
    }
}

/// An involution of the character lattice preserving the root datum,
/// together with the trace of the involution on the root space of every
/// fixed root. The traces are genuinely extra data: they cannot be deduced
/// from the root datum alone.
#[derive(Clone, Debug)]
pub struct InvolutionData {
    theta: IntMat,
    fixed_trace: BTreeMap<usize, i64>,
    root_perm: Vec<usize>,
}

impl InvolutionData {
    pub fn new(
        datum: &RootDatumG,
        theta: IntMat,
        fixed_trace: BTreeMap<usize, i64>,
    ) -> Result<Self> {
        if theta.dim() != datum.rank() {
            return Err(Error::DimensionMismatch(format!(
                "involution is {}x{} but the datum has rank {}",
                theta.dim(),
                theta.dim(),
                datum.rank()
            )));
        }
        if !theta.is_involution() {
            return Err(Error::InvolutionInvalid("matrix squared is not the identity".into()));
        }
        if !theta.is_symmetric() {
            // With the standard dot product as the invariant pairing, an
            // involution must be orthogonal, hence symmetric.
            return Err(Error::InvolutionInvalid(
                "matrix is not symmetric; it cannot preserve the standard pairing".into(),
            ));
        }
        let mut root_perm = Vec::with_capacity(datum.num_roots());
        for (i, r) in datum.roots().iter().enumerate() {
            let img = theta.apply(r);
            let Some(j) = datum.index_of(&img) else {
                return Err(Error::InvolutionInvalid(format!(
                    "image of root {r:?} is not a root"
                )));
            };
            if datum.mult(i) != datum.mult(j) {
                return Err(Error::InvolutionInvalid(format!(
                    "multiplicity not preserved at root {r:?}"
                )));
            }
            root_perm.push(j);
        }
        // Positivity compatibility: a positive root with nonzero restriction
        // must map to a positive root. This is exactly the condition that
        // the restricted positive roots form a positive system.
        for (i, r) in datum.roots().iter().enumerate() {
            if !datum.is_positive(i) {
                continue;
            }
            let restriction = eigenprojection(r, &theta, 1)?;
            if !restriction.is_zero() && !datum.is_positive(root_perm[i]) {
                return Err(Error::InvolutionInvalid(format!(
                    "positive root {r:?} with nonzero restriction maps to a negative root; \
                     the simple basis is not compatible with the involution"
                )));
            }
        }
        // Traces: exactly one per fixed root, with the parity and bound of
        // a +/-1 eigenvalue count, symmetric under negation.
        for (i, _) in datum.roots().iter().enumerate() {
            let fixed = root_perm[i] == i;
            match (fixed, fixed_trace.get(&i)) {
                (true, None) => {
                    return Err(Error::InvolutionInvalid(format!(
                        "missing trace for fixed root {:?} (index {i})",
                        datum.root(i)
                    )))
                }
                (false, Some(_)) => {
                    return Err(Error::InvolutionInvalid(format!(
                        "trace given for non-fixed root index {i}"
                    )))
                }
                (true, Some(&t)) => {
                    let m = datum.mult(i) as i64;
                    if t.abs() > m {
                        return Err(Error::InvolutionInvalid(format!(
                            "trace {t} at root index {i} exceeds multiplicity {m}"
                        )));
                    }
                    if (t - m).rem_euclid(2) != 0 {
                        return Err(Error::ParityViolation(format!(
                            "trace {t} at root index {i} has wrong parity for multiplicity {m}"
                        )));
                    }
                    let ni = datum.index_of(&datum.root(i).neg()).unwrap();
                    if let Some(&tn) = fixed_trace.get(&ni) {
                        if tn != t {
                            return Err(Error::InvolutionInvalid(format!(
                                "traces at root index {i} and its negative disagree"
                            )));
                        }
                    }
                }
                (false, None) => {}
            }
        }
        Ok(InvolutionData {
            theta,
            fixed_trace,
            root_perm,
        })
    }

    pub fn theta(&self) -> &IntMat {
        &self.theta
    }

    pub fn root_image(&self, i: usize) -> usize {
        self.root_perm[i]
    }

    pub fn is_fixed_root(&self, i: usize) -> bool {
        self.root_perm[i] == i
    }

    pub fn trace(&self, i: usize) -> Option<i64> {
        self.fixed_trace.get(&i).copied()
    }
}

/// The restricted root system of a symmetric pair with its multiplicity
/// layers, the subgroup system, and the half-sum data feeding the test
/// characters.
#[derive(Debug)]
pub struct DescendentSystem {
    datum: RootDatumG,
    theta: IntMat,
    /// Restricted roots with ambient multiplicities as `mult`.
    restricted: RootSystem,
    /// Ambient root indices restricting to each restricted root.
    fibers: Vec<Vec<usize>>,
    mg: Vec<u32>,
    mh: Vec<u32>,
    m_theta: Vec<i64>,
    /// Positions (into the restricted root list) of the simple roots.
    delta_gh: Vec<usize>,
    sigma_h: RootSystem,
    delta_h: Vec<RatVec>,
    /// Positions in the ambient simple list on which theta acts by -1.
    delta_minus: Vec<usize>,
    /// Per ambient simple position: restricted simple position, when the
    /// restriction is nonzero.
    restriction_of_simple: Vec<Option<usize>>,
    rho_g_plus: RatVec,
    rho_h: RatVec,
}

/// Construct the descendent system. The restricted roots are the distinct
/// nonzero symmetrized images of the ambient roots; multiplicities are
/// fiber sums, traces sum over the fixed part of each fiber, and the
/// subgroup multiplicity is the +1-eigenvalue count.
pub fn build_descendent(datum: &RootDatumG, inv: &InvolutionData) -> Result<DescendentSystem> {
    let n = datum.rank();
    let theta = inv.theta().clone();

    let mut restrictions: Vec<RatVec> = Vec::with_capacity(datum.num_roots());
    for r in datum.roots() {
        restrictions.push(eigenprojection(r, &theta, 1)?);
    }
    // Group ambient roots by restriction.
    let mut by_restriction: BTreeMap<RatVec, Vec<usize>> = BTreeMap::new();
    for (i, res) in restrictions.iter().enumerate() {
        if !res.is_zero() {
            by_restriction.entry(res.clone()).or_default().push(i);
        }
    }
    if by_restriction.is_empty() {
        return Err(Error::EmptySimpleSet);
    }
    // Positive restricted roots are restrictions of ambient positives.
    let mut positives: Vec<(RatVec, u32)> = Vec::new();
    let mut data: BTreeMap<RatVec, (u32, i64)> = BTreeMap::new();
    for (res, fiber) in &by_restriction {
        let pos = datum.is_positive(fiber[0]);
        if fiber.iter().any(|&i| datum.is_positive(i) != pos) {
            return Err(Error::InvolutionInvalid(
                "a restricted root has both positive and negative ambient roots in its fiber"
                    .into(),
            ));
        }
        let mg: u32 = fiber.iter().map(|&i| datum.mult(i)).sum();
        let mt: i64 = fiber
            .iter()
            .filter(|&&i| inv.is_fixed_root(i))
            .map(|&i| inv.trace(i).expect("validated fixed trace"))
            .sum();
        let mh2 = mg as i64 + mt;
        if mh2 < 0 || mh2 % 2 != 0 {
            return Err(Error::ParityViolation(format!(
                "restricted root {res:?} has ambient multiplicity {mg} and trace {mt}"
            )));
        }
        data.insert(res.clone(), (mg, mt));
        if pos {
            positives.push((res.clone(), mg));
        }
    }
    let restricted = RootSystem::from_positive(n, &positives)
        .map_err(|e| Error::NotARootSystem(format!("restricted system: {e}")))?;

    // Per restricted index tables.
    let nr = restricted.num_roots();
    let mut fibers = vec![Vec::new(); nr];
    for (i, res) in restrictions.iter().enumerate() {
        if !res.is_zero() {
            let idx = restricted
                .index_of(res)
                .ok_or_else(|| Error::Internal("restriction missing from system".into()))?;
            fibers[idx].push(i);
        }
    }
    let mut mg = vec![0u32; nr];
    let mut m_theta = vec![0i64; nr];
    let mut mh = vec![0u32; nr];
    for (i, root) in restricted.roots().iter().enumerate() {
        let (g, t) = data[root];
        mg[i] = g;
        m_theta[i] = t;
        mh[i] = ((g as i64 + t) / 2) as u32;
    }

    // Simple restricted roots must be the nonzero restrictions of the
    // ambient simple roots.
    let mut simple_restrictions: Vec<RatVec> = datum
        .simple_indices()
        .iter()
        .map(|&i| restrictions[i].clone())
        .filter(|v| !v.is_zero())
        .collect();
    simple_restrictions.sort();
    simple_restrictions.dedup();
    let mut derived = restricted.simple_roots();
    derived.sort();
    if simple_restrictions != derived {
        return Err(Error::NotARootSystem(
            "nonzero restrictions of the ambient simple roots do not form the simple basis"
                .into(),
        ));
    }
    let delta_gh: Vec<usize> = restricted.simple_indices().to_vec();

    // Subgroup system.
    let h_positives: Vec<(RatVec, u32)> = restricted
        .positive_indices()
        .filter(|&i| mh[i] > 0)
        .map(|i| (restricted.root(i).clone(), mh[i]))
        .collect();
    let sigma_h = RootSystem::from_positive(n, &h_positives)
        .map_err(|e| Error::NotARootSystem(format!("subgroup system: {e}")))?;
    let delta_h = sigma_h.simple_roots();

    // Ambient simple roots on which the involution acts by -1, and the
    // restriction map on the rest.
    let mut delta_minus = Vec::new();
    let mut restriction_of_simple = Vec::with_capacity(datum.num_simple());
    for (pos, &si) in datum.simple_indices().iter().enumerate() {
        if restrictions[si].is_zero() {
            delta_minus.push(pos);
            restriction_of_simple.push(None);
        } else {
            let ridx = restricted.index_of(&restrictions[si]).unwrap();
            let dpos = delta_gh
                .iter()
                .position(|&d| d == ridx)
                .ok_or_else(|| Error::Internal("simple restriction is not simple".into()))?;
            restriction_of_simple.push(Some(dpos));
        }
    }
    // acts by -1 exactly when the restriction vanishes
    for &pos in &delta_minus {
        let si = datum.simple_indices()[pos];
        let img = inv.root_image(si);
        if datum.root(img) != &datum.root(si).neg() {
            return Err(Error::Internal(
                "zero restriction without sign flip on a simple root".into(),
            ));
        }
    }

    let mut rho_g_plus = RatVec::zeros(n);
    let mut rho_h = RatVec::zeros(n);
    for i in restricted.positive_indices() {
        let root = restricted.root(i);
        if mg[i] > 0 {
            rho_g_plus = rho_g_plus.add(&root.scale(&rat(mg[i] as i64, 2)));
        }
        if mh[i] > 0 {
            rho_h = rho_h.add(&root.scale(&rat(mh[i] as i64, 2)));
        }
    }

    Ok(DescendentSystem {
        datum: datum.clone(),
        theta,
        restricted,
        fibers,
        mg,
        mh,
        m_theta,
        delta_gh,
        sigma_h,
        delta_h,
        delta_minus,
        restriction_of_simple,
        rho_g_plus,
        rho_h,
    })
}

impl DescendentSystem {
    pub fn datum(&self) -> &RootDatumG {
        &self.datum
    }

    pub fn theta(&self) -> &IntMat {
        &self.theta
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn restricted(&self) -> &RootSystem {
        &self.restricted
    }

    pub fn fiber(&self, restricted_idx: usize) -> &[usize] {
        &self.fibers[restricted_idx]
    }

    pub fn mg(&self, i: usize) -> u32 {
        self.mg[i]
    }

    pub fn mh(&self, i: usize) -> u32 {
        self.mh[i]
    }

    pub fn m_theta(&self, i: usize) -> i64 {
        self.m_theta[i]
    }

    /// Restricted-root indices of the simple restricted roots, in the
    /// canonical (sorted-vector) order. Subset keys index into this list.
    pub fn delta_gh(&self) -> &[usize] {
        &self.delta_gh
    }

    pub fn delta_gh_roots(&self) -> Vec<RatVec> {
        self.delta_gh
            .iter()
            .map(|&i| self.restricted.root(i).clone())
            .collect()
    }

    pub fn sigma_h(&self) -> &RootSystem {
        &self.sigma_h
    }

    pub fn delta_h(&self) -> &[RatVec] {
        &self.delta_h
    }

    /// Positions in the ambient simple list where the involution negates.
    pub fn delta_minus_positions(&self) -> &[usize] {
        &self.delta_minus
    }

    /// Restricted simple position for each ambient simple position, when
    /// the restriction is nonzero.
    pub fn restriction_of_simple(&self) -> &[Option<usize>] {
        &self.restriction_of_simple
    }

    /// Half-sum of positive restricted roots weighted by ambient
    /// multiplicities (the invariant part of the ambient half-sum).
    pub fn rho_g_plus(&self) -> &RatVec {
        &self.rho_g_plus
    }

    /// Half-sum of positive roots of the subgroup system, weighted by its
    /// multiplicities.
    pub fn rho_h(&self) -> &RatVec {
        &self.rho_h
    }
}

/// The induced permutation of the ambient simple roots not negated by the
/// involution: each maps to the unique one congruent to its image modulo
/// the span of the negated simples.
pub fn theta_minus_permutation(
    datum: &RootDatumG,
    inv: &InvolutionData,
) -> Result<Vec<(usize, usize)>> {
    let simple_vecs: Vec<RatVec> = datum
        .simple_indices()
        .iter()
        .map(|&i| datum.root(i).clone())
        .collect();
    // negated exactly when the restriction vanishes
    let minus: std::collections::HashSet<usize> = datum
        .simple_indices()
        .iter()
        .enumerate()
        .filter(|(_, &si)| inv.root_image(si) == datum.index_of(&datum.root(si).neg()).unwrap())
        .map(|(pos, _)| pos)
        .collect();
    let mut pairs = Vec::new();
    for (pos, &si) in datum.simple_indices().iter().enumerate() {
        if minus.contains(&pos) {
            continue;
        }
        let img = inv.theta().apply(datum.root(si));
        let coeffs = solve_in_span(&img, &simple_vecs)?
            .ok_or_else(|| Error::NoSolution("involution image outside simple span".into()))?;
        let mut target = None;
        for (j, c) in coeffs.iter().enumerate() {
            if minus.contains(&j) {
                continue;
            }
            if c.is_zero() {
                continue;
            }
            if !c.is_one() || target.is_some() {
                return Err(Error::NoSolution(format!(
                    "image of simple root position {pos} is not congruent to a unique \
                     non-negated simple root"
                )));
            }
            target = Some(j);
        }
        let Some(t) = target else {
            return Err(Error::NoSolution(format!(
                "image of simple root position {pos} lies in the negated span"
            )));
        };
        pairs.push((pos, t));
    }
    // The map must be an involutive permutation.
    let map: BTreeMap<usize, usize> = pairs.iter().copied().collect();
    for &(a, b) in &pairs {
        if map.get(&b) != Some(&a) {
            return Err(Error::NoSolution(
                "induced map on simple roots is not an involution".into(),
            ));
        }
    }
    Ok(pairs)
}

/// The two Weyl groups with the distinguished coset transversal and the
/// relative test character of each representative.
pub struct CosetReps {
    pub wgh: WeylGroup,
    pub wh: WeylGroup,
    /// Element ids in `wgh`, sorted by matrix.
    pub transversal: Vec<usize>,
    pub transversal_matrices: Vec<QMat>,
    /// Relative test character per transversal entry.
    pub rho: Vec<RatVec>,
}

fn scaled_pairing_table(rows: &[RatVec], cols: &[RatVec]) -> Result<Vec<Vec<i64>>> {
    let mut denom = num::BigInt::one();
    let mut raw: Vec<Vec<Rat>> = Vec::with_capacity(rows.len());
    for r in rows {
        let mut line = Vec::with_capacity(cols.len());
        for c in cols {
            let p = r.dot(c);
            denom = denom.lcm(p.denom());
            line.push(p);
        }
        raw.push(line);
    }
    let scale = Rat::from_integer(denom);
    raw.into_iter()
        .map(|line| {
            line.into_iter()
                .map(|p| {
                    (p * scale.clone())
                        .to_integer()
                        .to_i64()
                        .ok_or_else(|| Error::Internal("pairing overflow".into()))
                })
                .collect()
        })
        .collect()
}

/// Relative test character for transversal element `id`, computed by both
/// the half-sum difference and the trace-weighted root sum.
fn test_character(ds: &DescendentSystem, wgh: &WeylGroup, id: usize) -> Result<RatVec> {
    let rs = ds.restricted();
    let n = ds.rank();
    // rho_g_plus - 2 w(rho_h), with w(rho_h) summed over root images.
    let mut w_rho_h = RatVec::zeros(n);
    for i in rs.positive_indices() {
        let m = ds.mh(i);
        if m > 0 {
            let img = rs.root(wgh.apply_root(id, i));
            w_rho_h = w_rho_h.add(&img.scale(&rat(m as i64, 2)));
        }
    }
    let via_half_sums = ds.rho_g_plus().sub(&w_rho_h.scale(&rat(2, 1)));
    // -(1/2) sum over positive restricted roots of m(w^{-1} a) * a.
    let inv_id = wgh.inverse(id);
    let mut via_traces = RatVec::zeros(n);
    for i in rs.positive_indices() {
        let m = ds.m_theta(wgh.apply_root(inv_id, i));
        if m != 0 {
            via_traces = via_traces.add(&rs.root(i).scale(&rat(-m, 2)));
        }
    }
    if via_half_sums != via_traces {
        return Err(Error::FormulaMismatch(format!(
            "transversal element {id}: half-sum route {via_half_sums:?} vs trace route {via_traces:?}"
        )));
    }
    Ok(via_half_sums)
}

/// Enumerate both Weyl groups and the distinguished transversal: the
/// elements whose inverse maps the open dominant cone of the restricted
/// simples into the open dominant cone of the subgroup simples.
pub fn coset_transversal(ds: &DescendentSystem) -> Result<CosetReps> {
    coset_transversal_capped(ds, DEFAULT_WEYL_CAP)
}

pub fn coset_transversal_capped(ds: &DescendentSystem, cap: usize) -> Result<CosetReps> {
    let rs = ds.restricted();
    let universe = rs.roots();
    let wgh = weyl_closure_in(universe, &ds.delta_gh_roots(), cap)?;
    let wh = weyl_closure_in(universe, ds.delta_h(), cap)?;
    // Subgroup containment.
    for id in 0..wh.order() {
        if wgh.lookup_perm(wh.perm(id)).is_none() {
            return Err(Error::Internal(
                "subgroup Weyl element missing from the full group".into(),
            ));
        }
    }
    // Transversal filter: pairings of every subgroup simple root with
    // w^{-1}(probe), probe = sum of positive restricted roots.
    let pos_idx: Vec<usize> = rs.positive_indices().collect();
    let table = scaled_pairing_table(ds.delta_h(), universe)?;
    let mut transversal = Vec::new();
    for id in 0..wgh.order() {
        let ip = wgh.perm(wgh.inverse(id));
        let mut ok = true;
        for row in &table {
            let mut acc: i64 = 0;
            for &i in &pos_idx {
                acc += row[ip[i] as usize];
            }
            if acc <= 0 {
                ok = false;
                break;
            }
        }
        if ok {
            transversal.push(id);
        }
    }
    if transversal.len() * wh.order() != wgh.order() {
        return Err(Error::CountMismatch(format!(
            "|transversal| * |W_H| = {} * {} != |W| = {}",
            transversal.len(),
            wh.order(),
            wgh.order()
        )));
    }
    if !transversal.contains(&wgh.identity_id()) {
        return Err(Error::CountMismatch("identity not in transversal".into()));
    }
    // Pairwise distinct cosets.
    for (a, &wa) in transversal.iter().enumerate() {
        for &wb in &transversal[a + 1..] {
            let cmp = wgh.compose(wgh.inverse(wa), wb);
            if wh.lookup_perm(&cmp).is_some() {
                return Err(Error::CountMismatch(
                    "two transversal elements share a coset".into(),
                ));
            }
        }
    }
    // Deterministic order: lexicographic on matrices.
    let mut with_matrices: Vec<(QMat, usize)> = transversal
        .into_iter()
        .map(|id| (wgh.matrix(id), id))
        .collect();
    with_matrices.sort();
    let transversal: Vec<usize> = with_matrices.iter().map(|(_, id)| *id).collect();
    let transversal_matrices: Vec<QMat> = with_matrices.into_iter().map(|(m, _)| m).collect();
    let rho = transversal
        .iter()
        .map(|&id| test_character(ds, &wgh, id))
        .collect::<Result<Vec<_>>>()?;
    Ok(CosetReps {
        wgh,
        wh,
        transversal,
        transversal_matrices,
        rho,
    })
}

/// Recompute the relative test characters (both formulas, cross-checked)
/// and verify they match the ones stored on the transversal.
pub fn relative_test_characters(ds: &DescendentSystem, reps: &CosetReps) -> Result<Vec<RatVec>> {
    let rho: Vec<RatVec> = reps
        .transversal
        .iter()
        .map(|&id| test_character(ds, &reps.wgh, id))
        .collect::<Result<_>>()?;
    if rho != reps.rho {
        return Err(Error::FormulaMismatch(
            "stored test characters disagree with recomputation".into(),
        ));
    }
    Ok(rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::linalg::rat_int;

    fn rv(v: &[i64]) -> RatVec {
        RatVec::from_ints(v)
    }

    /// GL_3 with the orthogonal involution at Witt index 1: the classic
    /// non-reduced rank-one restricted system.
    fn gl3_orthogonal() -> (RootDatumG, InvolutionData) {
        families::instantiate(&families::FamilySpec::GlOrthogonal { n: 3, r: 1 }).unwrap()
    }

    #[test]
    fn gl3_descendent_multiplicities() {
        let (datum, inv) = gl3_orthogonal();
        let ds = build_descendent(&datum, &inv).unwrap();
        let rs = ds.restricted();
        // eta_1 = (1,0,-1)/2, roots {±eta, ±2eta}
        assert_eq!(rs.num_roots(), 4);
        let eta = RatVec::new(vec![rat(1, 2), rat(0, 1), rat(-1, 2)]);
        let two_eta = rv(&[1, 0, -1]);
        let ie = rs.index_of(&eta).unwrap();
        let i2 = rs.index_of(&two_eta).unwrap();
        assert_eq!(ds.mg(ie), 2);
        assert_eq!(ds.mh(ie), 1);
        assert_eq!(ds.mg(i2), 1);
        assert_eq!(ds.mh(i2), 0);
        assert_eq!(ds.m_theta(i2), -1);
        assert_eq!(ds.delta_gh_roots(), vec![eta]);
        assert_eq!(ds.fiber(ie).len(), 2);
    }

    #[test]
    fn gl3_transversal_is_trivial() {
        let (datum, inv) = gl3_orthogonal();
        let ds = build_descendent(&datum, &inv).unwrap();
        let reps = coset_transversal(&ds).unwrap();
        // W_H = W of the full restricted system here
        assert_eq!(reps.wgh.order(), 2);
        assert_eq!(reps.wh.order(), 2);
        assert_eq!(reps.transversal.len(), 1);
        // test character: eta_1
        let eta = RatVec::new(vec![rat(1, 2), rat_int(0), rat(-1, 2)]);
        assert_eq!(reps.rho, vec![eta]);
    }

    #[test]
    fn gl4_split_orthogonal_transversal() {
        let (datum, inv) =
            families::instantiate(&families::FamilySpec::GlOrthogonal { n: 4, r: 2 }).unwrap();
        let ds = build_descendent(&datum, &inv).unwrap();
        let reps = coset_transversal(&ds).unwrap();
        assert_eq!(reps.wgh.order(), 8);
        assert_eq!(reps.wh.order(), 4);
        assert_eq!(reps.transversal.len(), 2);
        // One element is the identity, the other the reflection in the long
        // simple restricted root 2*eta_2 = e2 - e3.
        let long = rv(&[0, 1, -1, 0]);
        let mut found_identity = false;
        let mut found_reflection = false;
        for (k, &id) in reps.transversal.iter().enumerate() {
            let m = &reps.transversal_matrices[k];
            if m.is_identity() {
                found_identity = true;
            } else {
                let refl_ok = ds
                    .restricted()
                    .roots()
                    .iter()
                    .enumerate()
                    .all(|(i, r)| {
                        ds.restricted().root(reps.wgh.apply_root(id, i))
                            == &crate::rootsys::reflect(r, &long)
                    });
                found_reflection = refl_ok;
            }
        }
        assert!(found_identity && found_reflection);
        // Both test characters equal eta_1 + eta_2.
        let expect = RatVec::new(vec![rat(1, 2), rat(1, 2), rat(-1, 2), rat(-1, 2)]);
        assert_eq!(reps.rho, vec![expect.clone(), expect]);
    }

    #[test]
    fn theta_permutation_flips_outer_simples() {
        // Split orthogonal case in rank 4: the induced map swaps the outer
        // simple roots and fixes the middle one; on restricted classes it
        // is the identity.
        let (datum, inv) =
            families::instantiate(&families::FamilySpec::GlOrthogonal { n: 4, r: 2 }).unwrap();
        let ds = build_descendent(&datum, &inv).unwrap();
        let pairs = theta_minus_permutation(&datum, &inv).unwrap();
        let map: BTreeMap<usize, usize> = pairs.iter().copied().collect();
        assert_eq!(map.len(), 3);
        assert_eq!(map[&0], 2);
        assert_eq!(map[&1], 1);
        assert_eq!(map[&2], 0);
        // induced map on restricted simple classes is the identity
        let p = ds.restriction_of_simple();
        for &(a, b) in &pairs {
            assert_eq!(p[a], p[b]);
        }
    }

    #[test]
    fn gl2n_gln_e_has_identity_permutation_and_zero_character() {
        let (datum, inv) =
            families::instantiate(&families::FamilySpec::Gl2nGlnE { n: 2 }).unwrap();
        let ds = build_descendent(&datum, &inv).unwrap();
        // Fibers of size 4, no fixed roots, zero traces.
        for i in 0..ds.restricted().num_roots() {
            assert_eq!(ds.fiber(i).len(), 4);
            assert_eq!(ds.m_theta(i), 0);
            assert_eq!(ds.mg(i), 4);
            assert_eq!(ds.mh(i), 2);
        }
        let pairs = theta_minus_permutation(&datum, &inv).unwrap();
        for &(a, b) in &pairs {
            assert_eq!(a, b);
        }
        let reps = coset_transversal(&ds).unwrap();
        assert_eq!(reps.transversal.len(), 1);
        assert!(reps.rho[0].is_zero());
    }

    #[test]
    fn galois_doubling_degenerates_to_subgroup_data() {
        let (datum, inv) = families::instantiate(&families::FamilySpec::GaloisDoubling {
            htype: families::SplitType::C,
            rank: 2,
        })
        .unwrap();
        let ds = build_descendent(&datum, &inv).unwrap();
        for i in 0..ds.restricted().num_roots() {
            assert_eq!(ds.mg(i), 2 * ds.mh(i));
            assert_eq!(ds.m_theta(i), 0);
        }
        assert_eq!(ds.sigma_h().num_roots(), ds.restricted().num_roots());
        let reps = coset_transversal(&ds).unwrap();
        assert_eq!(reps.transversal.len(), 1);
        assert!(reps.rho[0].is_zero());
        // the induced simple permutation is the identity
        let pairs = theta_minus_permutation(&datum, &inv).unwrap();
        assert!(pairs.iter().all(|&(a, b)| a == b));
        assert_eq!(pairs.len(), datum.num_simple());
    }

    #[test]
    fn doubled_pair_degenerates_to_group_case() {
        let h = families::split_datum(families::SplitType::A, 2).unwrap();
        let (datum, inv) = families::doubled_pair(&h).unwrap();
        let ds = build_descendent(&datum, &inv).unwrap();
        assert_eq!(ds.restricted().num_roots(), h.num_roots());
        for i in 0..ds.restricted().num_roots() {
            assert_eq!(ds.mg(i), 2);
            assert_eq!(ds.mh(i), 1);
            assert_eq!(ds.m_theta(i), 0);
        }
        let reps = coset_transversal(&ds).unwrap();
        assert_eq!(reps.transversal.len(), 1);
        assert!(reps.rho[0].is_zero());
    }

    #[test]
    fn malformed_involution_is_rejected() {
        let (datum, _) = gl3_orthogonal();
        // not an involution
        let bad = IntMat::from_rows_i64(&[vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert!(matches!(
            InvolutionData::new(&datum, bad, BTreeMap::new()),
            Err(Error::InvolutionInvalid(_))
        ));
        // involution that does not preserve the root set
        let bad2 = IntMat::from_rows_i64(&[vec![1, 0, 0], vec![0, -1, 0], vec![0, 0, 1]]).unwrap();
        assert!(InvolutionData::new(&datum, bad2, BTreeMap::new()).is_err());
    }

    #[test]
    fn missing_trace_is_rejected() {
        let (datum, _) = gl3_orthogonal();
        // theta fixing e1 - e3 but no trace supplied
        let theta =
            IntMat::from_rows_i64(&[vec![0, 0, -1], vec![0, -1, 0], vec![-1, 0, 0]]).unwrap();
        let err = InvolutionData::new(&datum, theta, BTreeMap::new()).unwrap_err();
        assert!(matches!(err, Error::InvolutionInvalid(_)));
        assert!(err.to_string().contains("missing trace"));
    }

    #[test]
    fn incompatible_simple_basis_is_rejected() {
        // Same roots and involution as the rank-three orthogonal pair, but
        // with a simple basis whose positive system is not stable: a
        // positive root with nonzero restriction maps to a negative one.
        let roots: Vec<RatVec> = [
            [1, -1, 0], [-1, 1, 0], [0, 1, -1], [0, -1, 1], [1, 0, -1], [-1, 0, 1],
        ]
        .iter()
        .map(|v| RatVec::from_ints(v))
        .collect();
        // simple basis {e2 - e1, e1 - e3}
        let simple = vec![
            roots.iter().position(|r| r == &rv(&[-1, 1, 0])).unwrap(),
            roots.iter().position(|r| r == &rv(&[1, 0, -1])).unwrap(),
        ];
        let datum = RootDatumG::new(3, roots, simple, vec![1; 6]).unwrap();
        let theta =
            IntMat::from_rows_i64(&[vec![0, 0, -1], vec![0, -1, 0], vec![-1, 0, 0]]).unwrap();
        let mut traces = BTreeMap::new();
        traces.insert(datum.index_of(&rv(&[1, 0, -1])).unwrap(), -1);
        traces.insert(datum.index_of(&rv(&[-1, 0, 1])).unwrap(), -1);
        let err = InvolutionData::new(&datum, theta, traces).unwrap_err();
        assert!(matches!(err, Error::InvolutionInvalid(_)));
        assert!(err.to_string().contains("not compatible"));
    }

    #[test]
    fn non_indecomposable_simple_set_is_rejected() {
        // {e1-e2, e1-e3} is independent but e2-e3 is indecomposable too.
        let roots: Vec<RatVec> = [
            [1, -1, 0], [-1, 1, 0], [0, 1, -1], [0, -1, 1], [1, 0, -1], [-1, 0, 1],
        ]
        .iter()
        .map(|v| RatVec::from_ints(v))
        .collect();
        let simple = vec![0usize, 4];
        let err = RootDatumG::new(3, roots, simple, vec![1; 6]).unwrap_err();
        assert!(matches!(err, Error::InvalidRootDatum(_)));
    }

    #[test]
    fn closure_cap_is_enforced() {
        let (datum, inv) =
            families::instantiate(&families::FamilySpec::GlOrthogonal { n: 4, r: 2 }).unwrap();
        let ds = build_descendent(&datum, &inv).unwrap();
        match coset_transversal_capped(&ds, 4) {
            Err(Error::SizeCapExceeded(4)) => {}
            other => panic!("expected cap error, got {:?}", other.map(|_| ())),
        }
    }
}
