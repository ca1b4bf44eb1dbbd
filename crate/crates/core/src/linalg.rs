//! Exact rational and integer linear algebra.
//!
//! Everything that feeds a verdict is computed over `BigRational`; floating
//! point never enters this module. Integer lattice work (finite-index
//! quotients, kernels) goes through a Smith-style unimodular reduction.

use std::fmt;

use num::{BigInt, BigRational, FromPrimitive, Integer, One, Signed, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

/// Parse "p/q" or "p".
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let make_err = || Error::BadParameters(format!("cannot parse rational {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: Int = p.trim().parse().map_err(|_| make_err())?;
        let q: Int = q.trim().parse().map_err(|_| make_err())?;
        if q.is_zero() {
            return Err(make_err());
        }
        Ok(Rat::new(p, q))
    } else {
        let p: Int = s.parse().map_err(|_| make_err())?;
        Ok(Rat::from_integer(p))
    }
}

/// Canonical rendering: "p" when the denominator is one, "p/q" otherwise.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A fixed-dimension vector of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatVec {
    coords: Vec<Rat>,
}

impl fmt::Debug for RatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", rat_to_string(c))?;
        }
        write!(f, ")")
    }
}

impl RatVec {
    pub fn new(coords: Vec<Rat>) -> Self {
        RatVec { coords }
    }

    pub fn zeros(dim: usize) -> Self {
        RatVec {
            coords: vec![Rat::zero(); dim],
        }
    }

    pub fn from_ints(v: &[i64]) -> Self {
        RatVec {
            coords: v.iter().map(|&x| rat_int(x)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &Rat {
        &self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.denom().is_one())
    }

    pub fn to_int_vec(&self) -> Option<Vec<Int>> {
        if self.is_integral() {
            Some(self.coords.iter().map(|c| c.numer().clone()).collect())
        } else {
            None
        }
    }

    pub fn dot(&self, other: &RatVec) -> Rat {
        assert_eq!(self.dim(), other.dim(), "dot of mismatched dimensions");
        let mut acc = Rat::zero();
        for (a, b) in self.coords.iter().zip(&other.coords) {
            if !a.is_zero() && !b.is_zero() {
                acc += a * b;
            }
        }
        acc
    }

    pub fn add(&self, other: &RatVec) -> RatVec {
        assert_eq!(self.dim(), other.dim());
        RatVec::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &RatVec) -> RatVec {
        assert_eq!(self.dim(), other.dim());
        RatVec::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn neg(&self) -> RatVec {
        RatVec::new(self.coords.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, c: &Rat) -> RatVec {
        RatVec::new(self.coords.iter().map(|a| a * c).collect())
    }

    /// Smallest positive integer k with k*self integral.
    pub fn denominator_lcm(&self) -> Int {
        let mut l = Int::one();
        for c in &self.coords {
            l = l.lcm(c.denom());
        }
        l
    }
}

/// Square integer matrix acting on column vectors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMat {
    n: usize,
    rows: Vec<Vec<Int>>,
}

impl IntMat {
    pub fn new(rows: Vec<Vec<Int>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("matrix is not square".into()));
        }
        Ok(IntMat { n, rows })
    }

    pub fn from_rows_i64(rows: &[Vec<i64>]) -> Result<Self> {
        IntMat::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| Int::from(x)).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Int::one() } else { Int::zero() })
                    .collect()
            })
            .collect();
        IntMat { n, rows }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &Int {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<Int>] {
        &self.rows
    }

    pub fn apply(&self, v: &RatVec) -> RatVec {
        assert_eq!(self.n, v.dim(), "matrix/vector dimension mismatch");
        RatVec::new(
            self.rows
                .iter()
                .map(|row| {
                    let mut acc = Rat::zero();
                    for (a, x) in row.iter().zip(v.coords()) {
                        if !a.is_zero() && !x.is_zero() {
                            acc += Rat::from_integer(a.clone()) * x;
                        }
                    }
                    acc
                })
                .collect(),
        )
    }

    pub fn apply_int(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(self.n, v.len());
        self.rows
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, x)| a * x).sum())
            .collect()
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.n, other.n);
        let rows = (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| (0..self.n).map(|k| &self.rows[i][k] * &other.rows[k][j]).sum())
                    .collect()
            })
            .collect();
        IntMat { n: self.n, rows }
    }

    pub fn is_identity(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, row)| {
            row.iter()
                .enumerate()
                .all(|(j, e)| if i == j { e.is_one() } else { e.is_zero() })
        })
    }

    pub fn is_involution(&self) -> bool {
        self.mul(self).is_identity()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.rows[i][j] == self.rows[j][i]))
    }
}

/// Square rational matrix; used for Weyl group elements.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct QMat {
    n: usize,
    rows: Vec<Vec<Rat>>,
}

impl QMat {
    pub fn new(rows: Vec<Vec<Rat>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "QMat must be square");
        QMat { n, rows }
    }

    pub fn identity(n: usize) -> Self {
        QMat::new(
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                        .collect()
                })
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<Rat>] {
        &self.rows
    }

    pub fn apply(&self, v: &RatVec) -> RatVec {
        assert_eq!(self.n, v.dim());
        RatVec::new(
            self.rows
                .iter()
                .map(|row| {
                    let mut acc = Rat::zero();
                    for (a, x) in row.iter().zip(v.coords()) {
                        if !a.is_zero() && !x.is_zero() {
                            acc += a * x;
                        }
                    }
                    acc
                })
                .collect(),
        )
    }

    pub fn mul(&self, other: &QMat) -> QMat {
        assert_eq!(self.n, other.n);
        QMat::new(
            (0..self.n)
                .map(|i| {
                    (0..self.n)
                        .map(|j| {
                            let mut acc = Rat::zero();
                            for k in 0..self.n {
                                if !self.rows[i][k].is_zero() && !other.rows[k][j].is_zero() {
                                    acc += &self.rows[i][k] * &other.rows[k][j];
                                }
                            }
                            acc
                        })
                        .collect()
                })
                .collect(),
        )
    }

    pub fn transpose(&self) -> QMat {
        QMat::new(
            (0..self.n)
                .map(|i| (0..self.n).map(|j| self.rows[j][i].clone()).collect())
                .collect(),
        )
    }

    pub fn is_identity(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, row)| {
            row.iter()
                .enumerate()
                .all(|(j, e)| if i == j { e.is_one() } else { e.is_zero() })
        })
    }

    /// Exact inverse via Gauss-Jordan; None when singular.
    pub fn inverse(&self) -> Option<QMat> {
        let n = self.n;
        let mut aug: Vec<Vec<Rat>> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut r = row.clone();
                r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
                r
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !aug[r][col].is_zero())?;
            aug.swap(col, pivot);
            let pv = aug[col][col].clone();
            for e in aug[col].iter_mut() {
                *e = &*e / &pv;
            }
            for r in 0..n {
                if r != col && !aug[r][col].is_zero() {
                    let f = aug[r][col].clone();
                    for c in 0..2 * n {
                        let delta = &f * &aug[col][c];
                        aug[r][c] = &aug[r][c] - &delta;
                    }
                }
            }
        }
        Some(QMat::new(
            aug.into_iter().map(|row| row[n..].to_vec()).collect(),
        ))
    }
}

/// Reduced row echelon form in place. Returns pivot column indices.
pub fn rref(rows: &mut [Vec<Rat>]) -> Vec<usize> {
    let nrows = rows.len();
    if nrows == 0 {
        return vec![];
    }
    let ncols = rows[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(pr) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let pv = rows[r][c].clone();
        for e in rows[r].iter_mut() {
            *e = &*e / &pv;
        }
        for i in 0..nrows {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for k in c..ncols {
                    let delta = &f * &rows[r][k];
                    rows[i][k] = &rows[i][k] - &delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank_of(vectors: &[RatVec]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let mut rows: Vec<Vec<Rat>> = vectors.iter().map(|v| v.coords().to_vec()).collect();
    rref(&mut rows).len()
}

/// Solve `target = sum c_i * generators_i` with linearly independent
/// generators. `Ok(None)` when the target is outside the span.
pub fn solve_in_span(target: &RatVec, generators: &[RatVec]) -> Result<Option<Vec<Rat>>> {
    let dim = target.dim();
    for g in generators {
        if g.dim() != dim {
            return Err(Error::DimensionMismatch(
                "generator dimension differs from target".into(),
            ));
        }
    }
    if generators.is_empty() {
        return Ok(if target.is_zero() { Some(vec![]) } else { None });
    }
    if rank_of(generators) < generators.len() {
        return Err(Error::DependentGenerators);
    }
    // Columns are the generators, last column the target.
    let k = generators.len();
    let mut rows: Vec<Vec<Rat>> = (0..dim)
        .map(|d| {
            let mut row: Vec<Rat> = generators.iter().map(|g| g.coord(d).clone()).collect();
            row.push(target.coord(d).clone());
            row
        })
        .collect();
    let pivots = rref(&mut rows);
    if pivots.contains(&k) {
        return Ok(None); // inconsistent
    }
    let mut coeffs = vec![Rat::zero(); k];
    for (r, &c) in pivots.iter().enumerate() {
        coeffs[c] = rows[r][k].clone();
    }
    Ok(Some(coeffs))
}

/// Deterministic basis of `{x : <row, x> = 0 for all rows}`.
pub fn kernel_basis(rows_in: &[RatVec], dim: usize) -> Vec<RatVec> {
    let mut rows: Vec<Vec<Rat>> = rows_in.iter().map(|v| v.coords().to_vec()).collect();
    let pivots = rref(&mut rows);
    let pivot_set: Vec<usize> = pivots.clone();
    let mut basis = Vec::new();
    for free in 0..dim {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![Rat::zero(); dim];
        v[free] = Rat::one();
        for (r, &p) in pivot_set.iter().enumerate() {
            v[p] = -rows[r][free].clone();
        }
        basis.push(RatVec::new(v));
    }
    basis
}

/// Eigenspace projection (v + sign*theta(v))/2 for an involution theta.
pub fn eigenprojection(v: &RatVec, theta: &IntMat, sign: i8) -> Result<RatVec> {
    if theta.dim() != v.dim() {
        return Err(Error::DimensionMismatch(format!(
            "involution is {}x{} but vector has dimension {}",
            theta.dim(),
            theta.dim(),
            v.dim()
        )));
    }
    debug_assert!(theta.is_involution());
    let tv = theta.apply(v);
    let s = if sign >= 0 { v.add(&tv) } else { v.sub(&tv) };
    Ok(s.scale(&rat(1, 2)))
}

/// Smith-style diagonalization: u * a * v = d with u, v unimodular.
pub struct SmithForm {
    pub nrows: usize,
    pub ncols: usize,
    /// Diagonal entries, length min(nrows, ncols), nonnegative.
    pub diag: Vec<Int>,
    pub u: Vec<Vec<Int>>,
    pub u_inv: Vec<Vec<Int>>,
    pub v: Vec<Vec<Int>>,
    pub v_inv: Vec<Vec<Int>>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|d| !d.is_zero()).count()
    }
}

fn ident(n: usize) -> Vec<Vec<Int>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Int::one() } else { Int::zero() })
                .collect()
        })
        .collect()
}

/// Computes the Smith normal form with all four transform matrices.
pub fn smith(a_in: &[Vec<Int>]) -> SmithForm {
    let nrows = a_in.len();
    let ncols = if nrows == 0 { 0 } else { a_in[0].len() };
    let mut a: Vec<Vec<Int>> = a_in.to_vec();
    let mut u = ident(nrows);
    let mut u_inv = ident(nrows);
    let mut v = ident(ncols);
    let mut v_inv = ident(ncols);

    // Row op: row_i += q * row_j on a and u; inverse col op on u_inv.
    macro_rules! row_add {
        ($i:expr, $j:expr, $q:expr) => {{
            let (i, j, q) = ($i, $j, $q);
            for c in 0..ncols {
                let d = &q * &a[j][c];
                a[i][c] = &a[i][c] + &d;
            }
            for c in 0..nrows {
                let d = &q * &u[j][c];
                u[i][c] = &u[i][c] + &d;
            }
            for r in 0..nrows {
                let d = &q * &u_inv[r][i];
                u_inv[r][j] = &u_inv[r][j] - &d;
            }
        }};
    }
    macro_rules! col_add {
        ($i:expr, $j:expr, $q:expr) => {{
            let (i, j, q) = ($i, $j, $q);
            for r in 0..nrows {
                let d = &q * &a[r][j];
                a[r][i] = &a[r][i] + &d;
            }
            for r in 0..ncols {
                let d = &q * &v[r][j];
                v[r][i] = &v[r][i] + &d;
            }
            for c in 0..ncols {
                let d = &q * &v_inv[i][c];
                v_inv[j][c] = &v_inv[j][c] - &d;
            }
        }};
    }
    macro_rules! row_swap {
        ($i:expr, $j:expr) => {{
            let (i, j) = ($i, $j);
            if i != j {
                a.swap(i, j);
                u.swap(i, j);
                for r in 0..nrows {
                    u_inv[r].swap(i, j);
                }
            }
        }};
    }
    macro_rules! col_swap {
        ($i:expr, $j:expr) => {{
            let (i, j) = ($i, $j);
            if i != j {
                for r in 0..nrows {
                    a[r].swap(i, j);
                }
                for r in 0..ncols {
                    v[r].swap(i, j);
                }
                v_inv.swap(i, j);
            }
        }};
    }
    macro_rules! row_negate {
        ($i:expr) => {{
            let i = $i;
            for c in 0..ncols {
                a[i][c] = -a[i][c].clone();
            }
            for c in 0..nrows {
                u[i][c] = -u[i][c].clone();
            }
            for r in 0..nrows {
                u_inv[r][i] = -u_inv[r][i].clone();
            }
        }};
    }

    let m = nrows.min(ncols);
    for k in 0..m {
        loop {
            // Find the entry of smallest nonzero absolute value in the block.
            let mut best: Option<(usize, usize)> = None;
            for i in k..nrows {
                for j in k..ncols {
                    if !a[i][j].is_zero()
                        && best
                            .map(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                            .unwrap_or(true)
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            row_swap!(k, bi);
            col_swap!(k, bj);
            let mut dirty = false;
            for i in k + 1..nrows {
                if !a[i][k].is_zero() {
                    let q = -a[i][k].div_floor(&a[k][k]);
                    row_add!(i, k, q);
                    if !a[i][k].is_zero() {
                        dirty = true;
                    }
                }
            }
            for j in k + 1..ncols {
                if !a[k][j].is_zero() {
                    let q = -a[k][j].div_floor(&a[k][k]);
                    col_add!(j, k, q);
                    if !a[k][j].is_zero() {
                        dirty = true;
                    }
                }
            }
            if !dirty
                && (k + 1..nrows).all(|i| a[i][k].is_zero())
                && (k + 1..ncols).all(|j| a[k][j].is_zero())
            {
                break;
            }
        }
        if a[k][k].is_negative() {
            row_negate!(k);
        }
    }
    // Enforce the divisibility chain d_k | d_{k+1}.
    loop {
        let mut fixed = true;
        for k in 0..m.saturating_sub(1) {
            let (dk, dn) = (a[k][k].clone(), a[k + 1][k + 1].clone());
            if !dk.is_zero() && !dn.is_zero() && !(&dn % &dk).is_zero() {
                fixed = false;
                // Fold row k+1 into the k-block and re-reduce the 2x2 corner.
                col_add!(k, k + 1, Int::one());
                loop {
                    if a[k + 1][k].is_zero() && a[k][k + 1].is_zero() {
                        break;
                    }
                    if !a[k + 1][k].is_zero() {
                        if a[k][k].is_zero() {
                            row_swap!(k, k + 1);
                        } else {
                            let q = -a[k + 1][k].div_floor(&a[k][k]);
                            row_add!(k + 1, k, q);
                            if !a[k + 1][k].is_zero() {
                                row_swap!(k, k + 1);
                            }
                        }
                    }
                    if !a[k][k + 1].is_zero() {
                        if a[k][k].is_zero() {
                            col_swap!(k, k + 1);
                        } else {
                            let q = -a[k][k + 1].div_floor(&a[k][k]);
                            col_add!(k + 1, k, q);
                            if !a[k][k + 1].is_zero() {
                                col_swap!(k, k + 1);
                            }
                        }
                    }
                }
                if a[k][k].is_negative() {
                    row_negate!(k);
                }
                if a[k + 1][k + 1].is_negative() {
                    row_negate!(k + 1);
                }
            }
        }
        if fixed {
            break;
        }
    }
    let diag = (0..m).map(|k| a[k][k].clone()).collect();
    SmithForm {
        nrows,
        ncols,
        diag,
        u,
        u_inv,
        v,
        v_inv,
    }
}

/// Integer kernel basis of an integer matrix (columns act on Z^ncols).
pub fn integer_kernel(a: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let nrows = a.len();
    let ncols = if nrows == 0 { 0 } else { a[0].len() };
    if ncols == 0 {
        return vec![];
    }
    let sf = smith(a);
    let rank = sf.rank();
    // Kernel = V * (columns with zero diagonal), i.e. columns rank..ncols of V.
    (rank..ncols)
        .map(|j| (0..ncols).map(|i| sf.v[i][j].clone()).collect())
        .collect()
}

const TRANSVERSAL_CAP: usize = 2_000_000;

/// Quotient of Z^rank by a finite-index sublattice, with an explicit
/// coset transversal produced from the diagonalized form.
pub struct LatticeQuotient {
    pub ambient_rank: usize,
    pub generators: Vec<Vec<Int>>,
    pub index: Int,
    pub transversal: Vec<Vec<Int>>,
    diag: Vec<Int>,
    u: Vec<Vec<Int>>,
}

impl LatticeQuotient {
    /// Canonical residue of x: (u*x mod diag) per coordinate.
    pub fn residue(&self, x: &[Int]) -> Vec<Int> {
        assert_eq!(x.len(), self.ambient_rank);
        (0..self.ambient_rank)
            .map(|i| {
                let y: Int = self.u[i].iter().zip(x).map(|(a, b)| a * b).sum();
                y.mod_floor(&self.diag[i])
            })
            .collect()
    }

    /// True when x and y lie in the same coset of the sublattice.
    pub fn same_coset(&self, x: &[Int], y: &[Int]) -> bool {
        self.residue(x) == self.residue(y)
    }
}

pub fn lattice_quotient(ambient_rank: usize, sublattice_gens: &[Vec<Int>]) -> Result<LatticeQuotient> {
    for g in sublattice_gens {
        if g.len() != ambient_rank {
            return Err(Error::DimensionMismatch(
                "sublattice generator has wrong dimension".into(),
            ));
        }
    }
    // Matrix with the generators as columns.
    let a: Vec<Vec<Int>> = (0..ambient_rank)
        .map(|i| sublattice_gens.iter().map(|g| g[i].clone()).collect())
        .collect();
    let sf = smith(&a);
    if sf.rank() < ambient_rank {
        return Err(Error::InfiniteIndex(format!(
            "sublattice rank {} < ambient rank {}",
            sf.rank(),
            ambient_rank
        )));
    }
    let diag: Vec<Int> = sf.diag[..ambient_rank].to_vec();
    let mut index = Int::one();
    for d in &diag {
        index *= d;
    }
    if index > Int::from_usize(TRANSVERSAL_CAP).unwrap() {
        return Err(Error::SizeCapExceeded(TRANSVERSAL_CAP));
    }
    // Transversal: u_inv * y for y in the box prod [0, d_i).
    let mut transversal = Vec::new();
    let mut y = vec![Int::zero(); ambient_rank];
    loop {
        let x: Vec<Int> = (0..ambient_rank)
            .map(|i| sf.u_inv[i].iter().zip(&y).map(|(a, b)| a * b).sum())
            .collect();
        transversal.push(x);
        // odometer increment
        let mut pos = ambient_rank;
        while pos > 0 {
            pos -= 1;
            y[pos] += 1;
            if y[pos] < diag[pos] {
                break;
            }
            y[pos] = Int::zero();
            if pos == 0 {
                pos = usize::MAX;
                break;
            }
        }
        if pos == usize::MAX || ambient_rank == 0 {
            break;
        }
    }
    Ok(LatticeQuotient {
        ambient_rank,
        generators: sublattice_gens.to_vec(),
        index,
        transversal,
        diag,
        u: sf.u,
    })
}
