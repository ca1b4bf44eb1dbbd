//! Root systems (possibly non-reduced) and their Weyl groups.
//!
//! Weyl groups are enumerated by breadth-first closure of the simple
//! reflections. Elements are stored as permutations of the root set; the
//! linear action on arbitrary vectors is recovered on demand, since a
//! reflection group is determined by what it does to the roots and fixes
//! the orthogonal complement of their span pointwise.

use std::collections::HashMap;
use std::sync::OnceLock;

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, rank_of, QMat, Rat, RatVec};

pub const DEFAULT_WEYL_CAP: usize = 10_000_000;

/// Reflection of `v` in the hyperplane orthogonal to `alpha`.
pub fn reflect(v: &RatVec, alpha: &RatVec) -> RatVec {
    let num = v.dot(alpha);
    if num.is_zero() {
        return v.clone();
    }
    let c = num * Rat::new(2.into(), 1.into()) / alpha.dot(alpha);
    v.sub(&alpha.scale(&c))
}

/// The positive roots not expressible as a sum of two positive roots.
pub fn simple_roots_of(positive_roots: &[RatVec]) -> Result<Vec<RatVec>> {
    let set: std::collections::HashSet<&RatVec> = positive_roots.iter().collect();
    for p in positive_roots {
        if p.is_zero() {
            return Err(Error::NotPositiveSystem("zero vector among roots".into()));
        }
        if set.contains(&p.neg()) {
            return Err(Error::NotPositiveSystem(format!(
                "contains both {p:?} and its negation"
            )));
        }
    }
    let mut simple: Vec<RatVec> = positive_roots
        .iter()
        .filter(|p| {
            !positive_roots.iter().any(|a| {
                let b = p.sub(a);
                !b.is_zero() && set.contains(&b)
            })
        })
        .cloned()
        .collect();
    simple.sort();
    simple.dedup();
    Ok(simple)
}

/// A finite, crystallographic root system with multiplicities.
///
/// Non-reduced systems are allowed: a root and its double may both be
/// present. Validation checks the Cartan integrality gate, closure under
/// the reflections the system defines, and that every positive root is a
/// nonnegative integer combination of the simple roots.
#[derive(Clone, Debug)]
pub struct RootSystem {
    dim: usize,
    roots: Vec<RatVec>,
    index: HashMap<RatVec, usize>,
    positive: Vec<bool>,
    neg_of: Vec<usize>,
    simple: Vec<usize>,
    mult: Vec<u32>,
}

impl RootSystem {
    /// Build from the positive roots (with multiplicities); negatives are
    /// adjoined and the simple roots derived by indecomposability.
    pub fn from_positive(dim: usize, positives: &[(RatVec, u32)]) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for (v, m) in positives {
            if v.dim() != dim {
                return Err(Error::DimensionMismatch("root dimension mismatch".into()));
            }
            if *m == 0 {
                return Err(Error::NotARootSystem("zero multiplicity".into()));
            }
            if !seen.insert(v.clone()) {
                return Err(Error::NotARootSystem(format!("duplicate root {v:?}")));
            }
        }
        let pos_vecs: Vec<RatVec> = positives.iter().map(|(v, _)| v.clone()).collect();
        let simple_vecs = simple_roots_of(&pos_vecs)?;

        let mut roots: Vec<(RatVec, bool, u32)> = Vec::with_capacity(2 * positives.len());
        for (v, m) in positives {
            roots.push((v.clone(), true, *m));
            roots.push((v.neg(), false, *m));
        }
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        let index: HashMap<RatVec, usize> = roots
            .iter()
            .enumerate()
            .map(|(i, (v, _, _))| (v.clone(), i))
            .collect();
        let neg_of: Vec<usize> = roots.iter().map(|(v, _, _)| index[&v.neg()]).collect();
        let simple: Vec<usize> = simple_vecs.iter().map(|v| index[v]).collect();

        let sys = RootSystem {
            dim,
            positive: roots.iter().map(|(_, p, _)| *p).collect(),
            mult: roots.iter().map(|(_, _, m)| *m).collect(),
            roots: roots.into_iter().map(|(v, _, _)| v).collect(),
            index,
            neg_of,
            simple,
        };
        sys.validate()?;
        Ok(sys)
    }

    fn validate(&self) -> Result<()> {
        // Cartan integrality gate.
        for a in &self.roots {
            let aa = a.dot(a);
            for b in &self.roots {
                let c = b.dot(a) * Rat::new(2.into(), 1.into()) / aa.clone();
                if !c.denom().is_one() {
                    return Err(Error::NotARootSystem(format!(
                        "Cartan integer 2<{b:?},{a:?}>/<{a:?},{a:?}> = {c} is not integral"
                    )));
                }
            }
        }
        // Closure under the reflections the system defines.
        for a in &self.roots {
            for b in &self.roots {
                let r = reflect(b, a);
                if !self.index.contains_key(&r) {
                    return Err(Error::NotARootSystem(format!(
                        "reflection of {b:?} in {a:?} leaves the root set"
                    )));
                }
            }
        }
        // Simple roots linearly independent.
        let simple_vecs: Vec<RatVec> = self.simple.iter().map(|&i| self.roots[i].clone()).collect();
        if rank_of(&simple_vecs) != simple_vecs.len() {
            return Err(Error::NotARootSystem(
                "simple roots are linearly dependent".into(),
            ));
        }
        // Every positive root is a nonnegative integer combination of simples.
        for (i, r) in self.roots.iter().enumerate() {
            if !self.positive[i] {
                continue;
            }
            let coeffs = crate::linalg::solve_in_span(r, &simple_vecs)?;
            let Some(coeffs) = coeffs else {
                return Err(Error::NotARootSystem(format!(
                    "positive root {r:?} is outside the span of the simple roots"
                )));
            };
            if coeffs.iter().any(|c| !c.denom().is_one() || c.is_negative()) {
                return Err(Error::NotARootSystem(format!(
                    "positive root {r:?} is not a nonnegative integer combination of simples"
                )));
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn roots(&self) -> &[RatVec] {
        &self.roots
    }

    pub fn root(&self, i: usize) -> &RatVec {
        &self.roots[i]
    }

    pub fn index_of(&self, v: &RatVec) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn is_positive(&self, i: usize) -> bool {
        self.positive[i]
    }

    pub fn neg_of(&self, i: usize) -> usize {
        self.neg_of[i]
    }

    pub fn mult(&self, i: usize) -> u32 {
        self.mult[i]
    }

    pub fn positive_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.roots.len()).filter(|&i| self.positive[i])
    }

    pub fn simple_indices(&self) -> &[usize] {
        &self.simple
    }

    pub fn simple_roots(&self) -> Vec<RatVec> {
        self.simple.iter().map(|&i| self.roots[i].clone()).collect()
    }

    /// Sum of the positive roots; strictly dominant and regular for the
    /// system and every subsystem of it.
    pub fn dominance_probe(&self) -> RatVec {
        let mut acc = RatVec::zeros(self.dim);
        for i in self.positive_indices() {
            acc = acc.add(&self.roots[i]);
        }
        acc
    }
}

struct MatrixCtx {
    basis_idx: Vec<usize>,
    complement: Vec<RatVec>,
    bn_inv: QMat,
}

/// A finite reflection group presented as permutations of a root universe.
pub struct WeylGroup {
    dim: usize,
    universe: Vec<RatVec>,
    simple: Vec<RatVec>,
    simple_universe_idx: Vec<u16>,
    perms: Vec<Vec<u16>>,
    inv: Vec<u32>,
    key_index: HashMap<Vec<u16>, u32>,
    matrix_ctx: OnceLock<MatrixCtx>,
}

fn perm_key(perm: &[u16], positions: &[u16]) -> Vec<u16> {
    positions.iter().map(|&p| perm[p as usize]).collect()
}

impl WeylGroup {
    pub fn order(&self) -> usize {
        self.perms.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn universe(&self) -> &[RatVec] {
        &self.universe
    }

    pub fn simple_roots(&self) -> &[RatVec] {
        &self.simple
    }

    pub fn identity_id(&self) -> usize {
        0
    }

    pub fn perm(&self, id: usize) -> &[u16] {
        &self.perms[id]
    }

    pub fn inverse(&self, id: usize) -> usize {
        self.inv[id] as usize
    }

    /// Image index of universe root `ridx` under element `id`.
    pub fn apply_root(&self, id: usize, ridx: usize) -> usize {
        self.perms[id][ridx] as usize
    }

    /// Locate an element by its full permutation of the universe.
    pub fn lookup_perm(&self, perm: &[u16]) -> Option<usize> {
        let key = perm_key(perm, &self.simple_universe_idx);
        let id = *self.key_index.get(&key)? as usize;
        (self.perms[id] == perm).then_some(id)
    }

    pub fn compose(&self, a: usize, b: usize) -> Vec<u16> {
        let (pa, pb) = (&self.perms[a], &self.perms[b]);
        pb.iter().map(|&i| pa[i as usize]).collect()
    }

    fn matrix_ctx(&self) -> &MatrixCtx {
        self.matrix_ctx.get_or_init(|| {
            // Greedy independent subset of the universe.
            let mut basis_idx = Vec::new();
            let mut picked: Vec<RatVec> = Vec::new();
            for (i, r) in self.universe.iter().enumerate() {
                picked.push(r.clone());
                if rank_of(&picked) == picked.len() {
                    basis_idx.push(i);
                } else {
                    picked.pop();
                }
            }
            let complement = kernel_basis(&picked, self.dim);
            let n = self.dim;
            let mut cols: Vec<RatVec> = picked;
            cols.extend(complement.iter().cloned());
            let bn = QMat::new(
                (0..n)
                    .map(|r| cols.iter().map(|c| c.coord(r).clone()).collect())
                    .collect(),
            );
            let bn_inv = bn.inverse().expect("basis + complement is invertible");
            MatrixCtx {
                basis_idx,
                complement,
                bn_inv,
            }
        })
    }

    /// The element's matrix on the ambient space (identity on the
    /// orthogonal complement of the root span).
    pub fn matrix(&self, id: usize) -> QMat {
        let ctx = self.matrix_ctx();
        let n = self.dim;
        let mut cols: Vec<RatVec> = ctx
            .basis_idx
            .iter()
            .map(|&bi| self.universe[self.perms[id][bi] as usize].clone())
            .collect();
        cols.extend(ctx.complement.iter().cloned());
        let wbn = QMat::new(
            (0..n)
                .map(|r| cols.iter().map(|c| c.coord(r).clone()).collect())
                .collect(),
        );
        wbn.mul(&ctx.bn_inv)
    }

    /// Apply the element to an arbitrary vector.
    pub fn apply_vec(&self, id: usize, v: &RatVec) -> RatVec {
        self.matrix(id).apply(v)
    }
}

/// Closure of the simple reflections as permutations of `universe`.
/// The universe must be stable under each simple reflection.
pub fn weyl_closure_in(universe: &[RatVec], simple: &[RatVec], cap: usize) -> Result<WeylGroup> {
    if universe.len() > u16::MAX as usize {
        return Err(Error::SizeCapExceeded(u16::MAX as usize));
    }
    let dim = universe.first().map(|v| v.dim()).unwrap_or(0);
    let index: HashMap<&RatVec, usize> = universe.iter().enumerate().map(|(i, v)| (v, i)).collect();
    if simple.iter().any(|s| s.dim() != dim) || universe.iter().any(|v| v.dim() != dim) {
        return Err(Error::DimensionMismatch("mixed dimensions in root set".into()));
    }
    if !simple.is_empty() && rank_of(simple) != simple.len() {
        return Err(Error::NotARootSystem(
            "simple roots are linearly dependent".into(),
        ));
    }
    // Generator permutations; the two reflections of a root and its double
    // coincide, so dedupe.
    let mut gen_perms: Vec<Vec<u16>> = Vec::new();
    for s in simple {
        let mut p = Vec::with_capacity(universe.len());
        for v in universe {
            let img = reflect(v, s);
            let Some(&j) = index.get(&img) else {
                return Err(Error::NotARootSystem(format!(
                    "reflection in {s:?} does not stabilize the root set"
                )));
            };
            p.push(j as u16);
        }
        if !gen_perms.contains(&p) {
            gen_perms.push(p);
        }
    }

    let simple_universe_idx: Vec<u16> = simple
        .iter()
        .map(|s| {
            index
                .get(s)
                .map(|&i| i as u16)
                .ok_or_else(|| Error::NotARootSystem("simple root not in universe".into()))
        })
        .collect::<Result<_>>()?;

    let ident: Vec<u16> = (0..universe.len() as u16).collect();
    let mut perms: Vec<Vec<u16>> = vec![ident.clone()];
    let mut key_index: HashMap<Vec<u16>, u32> = HashMap::new();
    key_index.insert(perm_key(&ident, &simple_universe_idx), 0);
    let mut frontier: Vec<u32> = vec![0];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &wid in &frontier {
            for g in &gen_perms {
                let w = &perms[wid as usize];
                let composed: Vec<u16> = w.iter().map(|&i| g[i as usize]).collect();
                let key = perm_key(&composed, &simple_universe_idx);
                if let std::collections::hash_map::Entry::Vacant(slot) = key_index.entry(key) {
                    let id = perms.len() as u32;
                    if perms.len() >= cap {
                        return Err(Error::SizeCapExceeded(cap));
                    }
                    slot.insert(id);
                    perms.push(composed);
                    next.push(id);
                }
            }
        }
        frontier = next;
    }

    let mut inv = vec![0u32; perms.len()];
    for (id, p) in perms.iter().enumerate() {
        let mut q = vec![0u16; p.len()];
        for (i, &j) in p.iter().enumerate() {
            q[j as usize] = i as u16;
        }
        let key = perm_key(&q, &simple_universe_idx);
        let iid = *key_index
            .get(&key)
            .ok_or_else(|| Error::Internal("inverse not found in closure".into()))?;
        if perms[iid as usize] != q {
            return Err(Error::Internal("inverse lookup collision".into()));
        }
        inv[id] = iid;
    }

    Ok(WeylGroup {
        dim,
        universe: universe.to_vec(),
        simple: simple.to_vec(),
        simple_universe_idx,
        perms,
        inv,
        key_index,
        matrix_ctx: OnceLock::new(),
    })
}

/// Generate the root closure of the simple roots, then enumerate the group.
pub fn weyl_closure(simple: &[RatVec], cap: usize) -> Result<WeylGroup> {
    if simple.is_empty() {
        return Err(Error::NotARootSystem("no simple roots given".into()));
    }
    if rank_of(simple) != simple.len() {
        return Err(Error::NotARootSystem(
            "simple roots are linearly dependent".into(),
        ));
    }
    // Crystallographic gate on the simple roots.
    for a in simple {
        let aa = a.dot(a);
        for b in simple {
            let c = b.dot(a) * Rat::new(2.into(), 1.into()) / aa.clone();
            if !c.denom().is_one() {
                return Err(Error::NotARootSystem(format!(
                    "Cartan integer for pair ({b:?},{a:?}) is not integral"
                )));
            }
        }
    }
    let root_cap = cap.min(100_000);
    let mut set: std::collections::BTreeSet<RatVec> = simple.iter().cloned().collect();
    loop {
        let mut added = false;
        let snapshot: Vec<RatVec> = set.iter().cloned().collect();
        for s in simple {
            for v in &snapshot {
                let img = reflect(v, s);
                if set.insert(img) {
                    added = true;
                }
            }
        }
        if set.len() > root_cap {
            return Err(Error::SizeCapExceeded(root_cap));
        }
        if !added {
            break;
        }
    }
    let universe: Vec<RatVec> = set.into_iter().collect();
    weyl_closure_in(&universe, simple, cap)
}

/// True when every pairing `<alpha, w(probe)>` over the given simple roots
/// is positive (nonnegative when `strict` is off).
pub fn chamber_test(w: &QMat, probe: &RatVec, simple_roots: &[RatVec], strict: bool) -> bool {
    let moved = w.apply(probe);
    simple_roots.iter().all(|a| {
        let p = a.dot(&moved);
        if strict {
            p.is_positive()
        } else {
            !p.is_negative()
        }
    })
}
