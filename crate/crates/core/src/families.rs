//! Built-in constructors for the classified families of symmetric pairs.
//!
//! Each family is encoded at the root-datum level: an ambient root system
//! in explicit lattice coordinates, the involution matrix on the character
//! lattice, and the traces of the involution on the fixed root spaces.
//! Matrix models of the groups appear only in the documentation mapping
//! parameters to data.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{IntMat, RatVec};
use crate::sympair::{InvolutionData, RootDatumG};

/// Split root system type for the doubling constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplitType {
    A,
    B,
    C,
    D,
    G2,
}

impl SplitType {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "A" => Ok(SplitType::A),
            "B" => Ok(SplitType::B),
            "C" => Ok(SplitType::C),
            "D" => Ok(SplitType::D),
            "G2" | "G" => Ok(SplitType::G2),
            other => Err(Error::BadParameters(format!("unknown split type {other:?}"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SplitType::A => "A",
            SplitType::B => "B",
            SplitType::C => "C",
            SplitType::D => "D",
            SplitType::G2 => "G2",
        }
    }
}

/// A built-in symmetric pair with validated parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    /// Base change of a split group along a quadratic extension:
    /// multiplicities double, all traces vanish.
    GaloisDoubling { htype: SplitType, rank: usize },
    /// General linear group with an orthogonal involution of Witt index r.
    GlOrthogonal { n: usize, r: usize },
    /// Quasi-split unitary ambient group over the same orthogonal subgroup,
    /// encoded directly in restricted coordinates.
    UnitaryOrthogonal { n: usize, r: usize },
    /// Even general linear group over the multiplicative group of a
    /// quadratic extension.
    Gl2nGlnE { n: usize },
    /// Symplectic group over a unitary subgroup (quasi-split or not).
    SpUnitary { n: usize, quasi_split: bool },
    /// Split analogue of the symplectic/unitary pair: ambient type C with
    /// trace -1 on the long roots and +1 on the short roots.
    SpGln { n: usize },
    /// General linear group over a product of two linear blocks.
    GlLinear { n1: usize, n2: usize },
}

fn basis_vec(dim: usize, entries: &[(usize, i64)]) -> RatVec {
    let mut v = vec![0i64; dim];
    for &(i, c) in entries {
        v[i] = c;
    }
    RatVec::from_ints(&v)
}

struct DatumBuilder {
    dim: usize,
    roots: Vec<RatVec>,
    mult: Vec<u32>,
}

impl DatumBuilder {
    fn new(dim: usize) -> Self {
        DatumBuilder {
            dim,
            roots: Vec::new(),
            mult: Vec::new(),
        }
    }

    /// Push the root and its negative.
    fn pair(&mut self, entries: &[(usize, i64)], mult: u32) {
        let v = basis_vec(self.dim, entries);
        self.roots.push(v.neg());
        self.roots.push(v);
        self.mult.push(mult);
        self.mult.push(mult);
    }

    fn finish(self, simple_vecs: &[RatVec]) -> Result<RootDatumG> {
        let simple_idx: Vec<usize> = simple_vecs
            .iter()
            .map(|s| {
                self.roots
                    .iter()
                    .position(|r| r == s)
                    .ok_or_else(|| Error::Internal("simple root not in generated set".into()))
            })
            .collect::<Result<_>>()?;
        RootDatumG::new(self.dim, self.roots, simple_idx, self.mult)
    }
}

/// Split root datum of the given type and rank, all multiplicities one.
pub fn split_datum(t: SplitType, rank: usize) -> Result<RootDatumG> {
    split_datum_mult(t, rank, 1)
}

fn split_datum_mult(t: SplitType, rank: usize, mult: u32) -> Result<RootDatumG> {
    match t {
        SplitType::A => {
            if rank < 1 {
                return Err(Error::BadParameters("type A needs rank >= 1".into()));
            }
            let dim = rank + 1;
            let mut b = DatumBuilder::new(dim);
            for i in 0..dim {
                for j in i + 1..dim {
                    b.pair(&[(i, 1), (j, -1)], mult);
                }
            }
            let simples: Vec<RatVec> = (0..rank)
                .map(|i| basis_vec(dim, &[(i, 1), (i + 1, -1)]))
                .collect();
            b.finish(&simples)
        }
        SplitType::B => {
            if rank < 2 {
                return Err(Error::BadParameters("type B needs rank >= 2".into()));
            }
            let mut b = DatumBuilder::new(rank);
            for i in 0..rank {
                for j in i + 1..rank {
                    b.pair(&[(i, 1), (j, -1)], mult);
                    b.pair(&[(i, 1), (j, 1)], mult);
                }
                b.pair(&[(i, 1)], mult);
            }
            let mut simples: Vec<RatVec> = (0..rank - 1)
                .map(|i| basis_vec(rank, &[(i, 1), (i + 1, -1)]))
                .collect();
            simples.push(basis_vec(rank, &[(rank - 1, 1)]));
            b.finish(&simples)
        }
        SplitType::C => {
            if rank < 1 {
                return Err(Error::BadParameters("type C needs rank >= 1".into()));
            }
            let mut b = DatumBuilder::new(rank);
            for i in 0..rank {
                for j in i + 1..rank {
                    b.pair(&[(i, 1), (j, -1)], mult);
                    b.pair(&[(i, 1), (j, 1)], mult);
                }
                b.pair(&[(i, 2)], mult);
            }
            let mut simples: Vec<RatVec> = (0..rank - 1)
                .map(|i| basis_vec(rank, &[(i, 1), (i + 1, -1)]))
                .collect();
            simples.push(basis_vec(rank, &[(rank - 1, 2)]));
            b.finish(&simples)
        }
        SplitType::D => {
            if rank < 2 {
                return Err(Error::BadParameters("type D needs rank >= 2".into()));
            }
            let mut b = DatumBuilder::new(rank);
            for i in 0..rank {
                for j in i + 1..rank {
                    b.pair(&[(i, 1), (j, -1)], mult);
                    b.pair(&[(i, 1), (j, 1)], mult);
                }
            }
            let mut simples: Vec<RatVec> = (0..rank - 1)
                .map(|i| basis_vec(rank, &[(i, 1), (i + 1, -1)]))
                .collect();
            simples.push(basis_vec(rank, &[(rank - 2, 1), (rank - 1, 1)]));
            b.finish(&simples)
        }
        SplitType::G2 => {
            if rank != 2 {
                return Err(Error::BadParameters("type G2 has rank 2".into()));
            }
            let mut b = DatumBuilder::new(3);
            // short roots
            b.pair(&[(0, 1), (1, -1)], mult);
            b.pair(&[(0, 1), (2, -1)], mult);
            b.pair(&[(1, 1), (2, -1)], mult);
            // long roots
            b.pair(&[(0, 2), (1, -1), (2, -1)], mult);
            b.pair(&[(0, -1), (1, 2), (2, -1)], mult);
            b.pair(&[(0, -1), (1, -1), (2, 2)], mult);
            let simples = vec![
                basis_vec(3, &[(0, 1), (1, -1)]),
                basis_vec(3, &[(0, -2), (1, 1), (2, 1)]),
            ];
            b.finish(&simples)
        }
    }
}

/// The doubled pair: two copies of a datum with the swap involution.
/// Used by the group-case reduction.
pub fn doubled_pair(h: &RootDatumG) -> Result<(RootDatumG, InvolutionData)> {
    let d = h.rank();
    let dim = 2 * d;
    let mut roots = Vec::with_capacity(2 * h.num_roots());
    let mut mult = Vec::with_capacity(2 * h.num_roots());
    let zero = num::BigRational::from_integer(0.into());
    for (i, r) in h.roots().iter().enumerate() {
        let mut left = r.coords().to_vec();
        left.resize(dim, zero.clone());
        roots.push(RatVec::new(left));
        let mut right = vec![zero.clone(); d];
        right.extend(r.coords().iter().cloned());
        roots.push(RatVec::new(right));
        mult.push(h.mult(i));
        mult.push(h.mult(i));
    }
    let mut simple_idx = Vec::new();
    for &si in h.simple_indices() {
        simple_idx.push(2 * si);
        simple_idx.push(2 * si + 1);
    }
    let datum = RootDatumG::new(dim, roots, simple_idx, mult)?;
    let mut theta_rows = vec![vec![0i64; dim]; dim];
    for i in 0..d {
        theta_rows[i][d + i] = 1;
        theta_rows[d + i][i] = 1;
    }
    let theta = IntMat::from_rows_i64(&theta_rows)?;
    let inv = InvolutionData::new(&datum, theta, BTreeMap::new())?;
    Ok((datum, inv))
}

fn traces_for(datum: &RootDatumG, entries: &[(RatVec, i64)]) -> Result<BTreeMap<usize, i64>> {
    let mut map = BTreeMap::new();
    for (v, t) in entries {
        for w in [v.clone(), v.neg()] {
            let idx = datum
                .index_of(&w)
                .ok_or_else(|| Error::Internal(format!("trace target {w:?} is not a root")))?;
            map.insert(idx, *t);
        }
    }
    Ok(map)
}

/// Instantiate a built-in family as (root datum, involution data).
pub fn instantiate(spec: &FamilySpec) -> Result<(RootDatumG, InvolutionData)> {
    match *spec {
        FamilySpec::GaloisDoubling { htype, rank } => {
            let datum = split_datum_mult(htype, rank, 2)?;
            let theta = IntMat::identity(datum.rank());
            let traces: Vec<(RatVec, i64)> = datum
                .roots()
                .iter()
                .map(|r| (r.clone(), 0i64))
                .collect();
            let tr = traces_for(&datum, &traces)?;
            let inv = InvolutionData::new(&datum, theta, tr)?;
            Ok((datum, inv))
        }
        FamilySpec::GlOrthogonal { n, r } => {
            if n < 2 || r == 0 || 2 * r > n {
                return Err(Error::BadParameters(format!(
                    "gl_orthogonal requires n >= 2 and 1 <= r <= n/2, got n={n} r={r}"
                )));
            }
            let datum = split_datum(SplitType::A, n - 1)?;
            // theta(e_j) = -e_{n-1-j} on the outer band, -e_j in the middle.
            let mut rows = vec![vec![0i64; n]; n];
            for j in 0..n {
                let target = if j < r || j >= n - r { n - 1 - j } else { j };
                rows[target][j] = -1;
            }
            let theta = IntMat::from_rows_i64(&rows)?;
            let traces: Vec<(RatVec, i64)> = (0..r)
                .map(|i| (basis_vec(n, &[(i, 1), (n - 1 - i, -1)]), -1))
                .collect();
            let tr = traces_for(&datum, &traces)?;
            let inv = InvolutionData::new(&datum, theta, tr)?;
            Ok((datum, inv))
        }
        FamilySpec::UnitaryOrthogonal { n, r } => {
            if n < 2 || r == 0 || 2 * r > n {
                return Err(Error::BadParameters(format!(
                    "unitary_orthogonal requires n >= 2 and 1 <= r <= n/2, got n={n} r={r}"
                )));
            }
            // Encoded directly in restricted coordinates of rank r: doubled
            // weight spaces carry multiplicity 2 with trace 0, the doubled
            // lines multiplicity 1 with trace -1.
            let mut b = DatumBuilder::new(r);
            let mut traces: Vec<(RatVec, i64)> = Vec::new();
            for i in 0..r {
                for j in i + 1..r {
                    b.pair(&[(i, 1), (j, -1)], 2);
                    traces.push((basis_vec(r, &[(i, 1), (j, -1)]), 0));
                    b.pair(&[(i, 1), (j, 1)], 2);
                    traces.push((basis_vec(r, &[(i, 1), (j, 1)]), 0));
                }
                if 2 * r < n {
                    b.pair(&[(i, 1)], 2 * (n - 2 * r) as u32);
                    traces.push((basis_vec(r, &[(i, 1)]), 0));
                }
                b.pair(&[(i, 2)], 1);
                traces.push((basis_vec(r, &[(i, 2)]), -1));
            }
            let mut simples: Vec<RatVec> = (0..r.saturating_sub(1))
                .map(|i| basis_vec(r, &[(i, 1), (i + 1, -1)]))
                .collect();
            if 2 * r < n {
                simples.push(basis_vec(r, &[(r - 1, 1)]));
            } else {
                simples.push(basis_vec(r, &[(r - 1, 2)]));
            }
            let datum = b.finish(&simples)?;
            let theta = IntMat::identity(r);
            let tr = traces_for(&datum, &traces)?;
            let inv = InvolutionData::new(&datum, theta, tr)?;
            Ok((datum, inv))
        }
        FamilySpec::Gl2nGlnE { n } => {
            if n < 2 {
                return Err(Error::BadParameters(
                    "gl2n_gln_E requires n >= 2 (the rank-one case is anisotropic)".into(),
                ));
            }
            let datum = split_datum(SplitType::A, 2 * n - 1)?;
            let dim = 2 * n;
            let mut rows = vec![vec![0i64; dim]; dim];
            for k in 0..n {
                rows[2 * k][2 * k + 1] = 1;
                rows[2 * k + 1][2 * k] = 1;
            }
            let theta = IntMat::from_rows_i64(&rows)?;
            let inv = InvolutionData::new(&datum, theta, BTreeMap::new())?;
            Ok((datum, inv))
        }
        FamilySpec::SpUnitary { n, quasi_split } => {
            let r = if quasi_split {
                if n < 2 {
                    return Err(Error::BadParameters(
                        "sp_unitary quasi-split requires n >= 2".into(),
                    ));
                }
                n / 2
            } else {
                if n < 4 || n % 2 != 0 {
                    return Err(Error::BadParameters(
                        "sp_unitary non-quasi-split requires even n >= 4".into(),
                    ));
                }
                n / 2 - 1
            };
            let datum = split_datum(SplitType::C, n)?;
            let mut rows = vec![vec![0i64; n]; n];
            for k in 0..r {
                rows[2 * k][2 * k + 1] = 1;
                rows[2 * k + 1][2 * k] = 1;
            }
            for j in 2 * r..n {
                rows[j][j] = -1;
            }
            // quasi-split odd n: one leftover coordinate negated; quasi-split
            // even n: none; non-quasi-split: two.
            let theta = IntMat::from_rows_i64(&rows)?;
            let traces: Vec<(RatVec, i64)> = (0..r)
                .map(|k| (basis_vec(n, &[(2 * k, 1), (2 * k + 1, 1)]), -1))
                .collect();
            let tr = traces_for(&datum, &traces)?;
            let inv = InvolutionData::new(&datum, theta, tr)?;
            Ok((datum, inv))
        }
        FamilySpec::SpGln { n } => {
            if n < 1 {
                return Err(Error::BadParameters("sp_gln requires n >= 1".into()));
            }
            let datum = split_datum(SplitType::C, n)?;
            let theta = IntMat::identity(n);
            let mut traces: Vec<(RatVec, i64)> = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    traces.push((basis_vec(n, &[(i, 1), (j, -1)]), 1));
                    traces.push((basis_vec(n, &[(i, 1), (j, 1)]), 1));
                }
                traces.push((basis_vec(n, &[(i, 2)]), -1));
            }
            let tr = traces_for(&datum, &traces)?;
            let inv = InvolutionData::new(&datum, theta, tr)?;
            Ok((datum, inv))
        }
        FamilySpec::GlLinear { n1, n2 } => {
            if n1 == 0 || n2 == 0 || n1 > n2 {
                return Err(Error::BadParameters(format!(
                    "gl_linear requires 1 <= n1 <= n2, got n1={n1} n2={n2}"
                )));
            }
            let n = n1 + n2;
            let datum = split_datum(SplitType::A, n - 1)?;
            let theta = IntMat::identity(n);
            let mut traces: Vec<(RatVec, i64)> = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    let same_block = (i < n1) == (j < n1);
                    traces.push((
                        basis_vec(n, &[(i, 1), (j, -1)]),
                        if same_block { 1 } else { -1 },
                    ));
                }
            }
            let tr = traces_for(&datum, &traces)?;
            let inv = InvolutionData::new(&datum, theta, tr)?;
            Ok((datum, inv))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;
    use crate::sympair::build_descendent;

    #[test]
    fn split_data_have_expected_sizes() {
        assert_eq!(split_datum(SplitType::A, 2).unwrap().num_roots(), 6);
        assert_eq!(split_datum(SplitType::B, 2).unwrap().num_roots(), 8);
        assert_eq!(split_datum(SplitType::C, 3).unwrap().num_roots(), 18);
        assert_eq!(split_datum(SplitType::D, 3).unwrap().num_roots(), 12);
        assert_eq!(split_datum(SplitType::G2, 2).unwrap().num_roots(), 12);
    }

    #[test]
    fn gl_orthogonal_restricted_types() {
        // 2r = n: type C_r
        let (datum, inv) = instantiate(&FamilySpec::GlOrthogonal { n: 4, r: 2 }).unwrap();
        let ds = build_descendent(&datum, &inv).unwrap();
        assert_eq!(ds.restricted().num_roots(), 8);
        assert_eq!(ds.delta_gh().len(), 2);
        // 2r < n: type BC_r (both eta and 2 eta present)
        let (datum, inv) = instantiate(&FamilySpec::GlOrthogonal { n: 3, r: 1 }).unwrap();
        let ds = build_descendent(&datum, &inv).unwrap();
        assert_eq!(ds.restricted().num_roots(), 4);
        let eta = RatVec::new(vec![rat(1, 2), rat(0, 1), rat(-1, 2)]);
        assert!(ds.restricted().index_of(&eta).is_some());
        assert!(ds.restricted().index_of(&eta.scale(&rat(2, 1))).is_some());
    }

    #[test]
    fn bad_parameters_are_rejected() {
        assert!(instantiate(&FamilySpec::GlOrthogonal { n: 3, r: 2 }).is_err());
        assert!(instantiate(&FamilySpec::GlOrthogonal { n: 4, r: 0 }).is_err());
        assert!(instantiate(&FamilySpec::Gl2nGlnE { n: 1 }).is_err());
        assert!(instantiate(&FamilySpec::SpUnitary { n: 3, quasi_split: false }).is_err());
        assert!(instantiate(&FamilySpec::SpUnitary { n: 2, quasi_split: false }).is_err());
        assert!(instantiate(&FamilySpec::GlLinear { n1: 2, n2: 1 }).is_err());
        assert!(split_datum(SplitType::G2, 3).is_err());
    }

    #[test]
    fn every_family_instance_builds() {
        let mut specs = vec![
            FamilySpec::GaloisDoubling { htype: SplitType::A, rank: 1 },
            FamilySpec::GaloisDoubling { htype: SplitType::B, rank: 3 },
            FamilySpec::GaloisDoubling { htype: SplitType::G2, rank: 2 },
            FamilySpec::Gl2nGlnE { n: 2 },
            FamilySpec::Gl2nGlnE { n: 3 },
            FamilySpec::SpUnitary { n: 2, quasi_split: true },
            FamilySpec::SpUnitary { n: 3, quasi_split: true },
            FamilySpec::SpUnitary { n: 4, quasi_split: true },
            FamilySpec::SpUnitary { n: 4, quasi_split: false },
            FamilySpec::SpGln { n: 1 },
            FamilySpec::SpGln { n: 2 },
            FamilySpec::SpGln { n: 3 },
            FamilySpec::GlLinear { n1: 1, n2: 1 },
            FamilySpec::GlLinear { n1: 2, n2: 3 },
        ];
        for n in 2..=5 {
            for r in 1..=n / 2 {
                specs.push(FamilySpec::GlOrthogonal { n, r });
                specs.push(FamilySpec::UnitaryOrthogonal { n, r });
            }
        }
        for spec in specs {
            let (datum, inv) = instantiate(&spec).unwrap();
            build_descendent(&datum, &inv)
                .unwrap_or_else(|e| panic!("{spec:?} failed to build: {e}"));
        }
    }

    #[test]
    fn sp_unitary_fixed_lines() {
        let (datum, inv) = instantiate(&FamilySpec::SpUnitary { n: 3, quasi_split: true }).unwrap();
        let ds = build_descendent(&datum, &inv).unwrap();
        // r = 1: restricted BC_1 with eta fiber of four roots, none fixed.
        let eta = RatVec::new(vec![rat(1, 2), rat(1, 2), rat(0, 1)]);
        let ie = ds.restricted().index_of(&eta).unwrap();
        assert_eq!(ds.mg(ie), 4);
        assert_eq!(ds.m_theta(ie), 0);
        assert_eq!(ds.mh(ie), 2);
        let i2 = ds.restricted().index_of(&eta.scale(&rat(2, 1))).unwrap();
        assert_eq!(ds.mg(i2), 3);
        assert_eq!(ds.m_theta(i2), -1);
        assert_eq!(ds.mh(i2), 1);
    }
}
