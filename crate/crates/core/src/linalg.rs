//! Exact integer and rational kernels: Smith normal form, Fourier–Motzkin
//! feasibility and brute-force facet enumeration for low-dimensional
//! polyhedra.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest ambient dimension accepted by the polyhedral routines.
pub const MAX_POLYHEDRAL_DIM: usize = 5;

/// Dense matrix of arbitrary-precision integers, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from equal-length rows. `cols` is needed for the
    /// zero-row case.
    pub fn from_rows<T: Into<BigInt> + Copy>(rows: &[Vec<T>], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix row");
            for (j, &x) in row.iter().enumerate() {
                m.data[i * cols + j] = x.into();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] += a * other.get(k, j);
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] += factor * row[source]
    fn add_row(&mut self, target: usize, source: usize, factor: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(source, j) * factor;
            self.data[target * self.cols + j] += v;
        }
    }

    fn add_col(&mut self, target: usize, source: usize, factor: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, source) * factor;
            self.data[i * self.cols + target] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }

    /// Converts to `i64` rows, failing on overflow.
    pub fn to_i64_rows(&self) -> Result<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_i64().ok_or(Error::Overflow)).collect())
            .collect()
    }
}

/// Inverse of a square integer matrix with determinant `±1`.
pub fn unimodular_inverse(m: &IntMatrix) -> Result<IntMatrix> {
    let n = m.rows;
    if m.cols != n {
        return Err(Error::DegenerateInput("inverse of a non-square matrix".into()));
    }
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..2 * n)
                .map(|j| {
                    let v = if j < n {
                        m.get(i, j).clone()
                    } else if j - n == i {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    };
                    BigRational::from_integer(v)
                })
                .collect()
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero()).ok_or_else(|| Error::DegenerateInput("singular matrix".into()))?;
        a.swap(c, p);
        let pivot = a[c][c].clone();
        for x in a[c].iter_mut() {
            *x = &*x / &pivot;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for j in 0..2 * n {
                    let t = &a[c][j] * &f;
                    a[r][j] -= t;
                }
            }
        }
    }
    let mut out = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let x = &a[i][n + j];
            if !x.is_integer() {
                return Err(Error::DegenerateInput("matrix is not unimodular".into()));
            }
            out.set(i, j, x.to_integer());
        }
    }
    Ok(out)
}

/// Invariant factors of an integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// `d_1 | d_2 | ... | d_rank`, all positive. Unit factors are kept.
    pub factors: Vec<BigInt>,
    pub rank: usize,
}

impl SmithForm {
    /// Non-unit invariant factors, i.e. the torsion part of the cokernel.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.factors.iter().filter(|f| !f.is_one()).cloned().collect()
    }
}

/// `left * m * right = diag(factors, 0...)` with `left`, `right` unimodular.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub left: IntMatrix,
    pub right: IntMatrix,
    pub factors: Vec<BigInt>,
    pub rank: usize,
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let dec = smith_decomposition(m);
    SmithForm { factors: dec.factors, rank: dec.rank }
}

pub fn smith_decomposition(m: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut left = IntMatrix::identity(rows);
    let mut right = IntMatrix::identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let v = a.get(i, j);
                if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < a.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap_rows(t, pi);
        left.swap_rows(t, pi);
        a.swap_cols(t, pj);
        right.swap_cols(t, pj);

        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = -a.get(i, t).div_floor(a.get(t, t));
                a.add_row(i, t, &q);
                left.add_row(i, t, &q);
                if !a.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = -a.get(t, j).div_floor(a.get(t, t));
                a.add_col(j, t, &q);
                right.add_col(j, t, &q);
                if !a.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // A smaller remainder appeared in row or column t; move it to the pivot.
                let mut best = (t, t);
                for i in t + 1..rows {
                    let v = a.get(i, t);
                    if !v.is_zero() && v.abs() < a.get(best.0, best.1).abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    let v = a.get(t, j);
                    if !v.is_zero() && v.abs() < a.get(best.0, best.1).abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    a.swap_rows(t, best.0);
                    left.swap_rows(t, best.0);
                } else if best.1 != t {
                    a.swap_cols(t, best.1);
                    right.swap_cols(t, best.1);
                }
                continue;
            }
            // Pivot must divide the whole trailing block.
            let p = a.get(t, t).clone();
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a.get(i, j).is_multiple_of(&p)));
            match offender {
                Some(i) => {
                    a.add_row(t, i, &BigInt::one());
                    left.add_row(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            left.negate_row(t);
        }
        t += 1;
    }
    let factors = (0..t).map(|i| a.get(i, i).clone()).collect();
    SmithDecomposition { left, right, factors, rank: t }
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &IntMatrix) -> BigInt {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    let n = m.rows;
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a.get(k, k).is_zero() {
            match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                Some(i) => {
                    a.swap_rows(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                a.set(i, j, v);
            }
        }
        prev = a.get(k, k).clone();
    }
    sign * a.get(n - 1, n - 1)
}

/// Rank over the rationals of a set of integer vectors of length `dim`.
pub fn rank_of(vectors: &[Vec<i64>], dim: usize) -> usize {
    let mut rows: Vec<Vec<BigInt>> = vectors
        .iter()
        .filter(|v| v.iter().any(|&x| x != 0))
        .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut rank = 0;
    for col in 0..dim {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(rank, p);
        let pivot_row = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for j in 0..dim {
                row[j] = &row[j] * &pivot_row[col] - &f * &pivot_row[j];
            }
            let g = row.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
            if !g.is_zero() && !g.is_one() {
                for x in row.iter_mut() {
                    *x /= &g;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

pub fn gcd_of(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

/// Divides by the gcd of the entries; the zero vector is returned unchanged.
pub fn primitive(v: &[i64]) -> Vec<i64> {
    let g = gcd_of(v);
    if g <= 1 {
        v.to_vec()
    } else {
        v.iter().map(|x| x / g).collect()
    }
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

// ---------------------------------------------------------------------------
// Fourier–Motzkin feasibility
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

/// `coeffs · x  (relation)  rhs`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<BigRational>,
    pub relation: Relation,
    pub rhs: BigRational,
}

impl Constraint {
    pub fn from_ints(coeffs: &[i64], relation: Relation, rhs: i64) -> Self {
        Constraint {
            coeffs: coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect(),
            relation,
            rhs: BigRational::from_integer(rhs.into()),
        }
    }

    pub fn holds(&self, x: &[BigRational]) -> bool {
        let lhs: BigRational = self.coeffs.iter().zip(x).map(|(a, b)| a * b).sum();
        match self.relation {
            Relation::Le => lhs <= self.rhs,
            Relation::Ge => lhs >= self.rhs,
            Relation::Eq => lhs == self.rhs,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(Vec<BigRational>),
    Infeasible,
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }
}

/// Internal normalized form `a · x <= b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Halfspace {
    a: Vec<BigRational>,
    b: BigRational,
}

impl Halfspace {
    fn normalized(mut self) -> Self {
        let scale = self.a.iter().map(|x| x.abs()).max().filter(|m| !m.is_zero());
        if let Some(s) = scale {
            for x in self.a.iter_mut() {
                *x /= &s;
            }
            self.b /= &s;
        }
        self
    }
}

/// Decides feasibility of a finite system of linear constraints over the
/// rationals by Fourier–Motzkin elimination, returning a witness when one
/// exists.
pub fn rational_feasible(num_vars: usize, constraints: &[Constraint]) -> Feasibility {
    let mut system: Vec<Halfspace> = Vec::new();
    for c in constraints {
        assert_eq!(c.coeffs.len(), num_vars, "constraint arity mismatch");
        let le = Halfspace { a: c.coeffs.clone(), b: c.rhs.clone() };
        let ge = Halfspace { a: c.coeffs.iter().map(|x| -x).collect(), b: -&c.rhs };
        match c.relation {
            Relation::Le => system.push(le),
            Relation::Ge => system.push(ge),
            Relation::Eq => {
                system.push(le);
                system.push(ge);
            }
        }
    }

    // history[k] is the system in which variables 0..k have been eliminated.
    let mut history: Vec<Vec<Halfspace>> = Vec::with_capacity(num_vars + 1);
    let mut current = dedup(system);
    for k in 0..num_vars {
        if current.iter().any(|h| h.a.iter().all(Zero::is_zero) && h.b.is_negative()) {
            return Feasibility::Infeasible;
        }
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for h in &current {
            if h.a[k].is_positive() {
                pos.push(h);
            } else if h.a[k].is_negative() {
                neg.push(h);
            } else {
                rest.push(h.clone());
            }
        }
        for p in &pos {
            for n in &neg {
                let sp = &p.a[k];
                let sn = -&n.a[k];
                let a: Vec<BigRational> = p.a.iter().zip(&n.a).map(|(x, y)| x / sp + y / &sn).collect();
                let b = &p.b / sp + &n.b / &sn;
                rest.push(Halfspace { a, b }.normalized());
            }
        }
        history.push(std::mem::replace(&mut current, dedup(rest)));
    }
    if current.iter().any(|h| h.b.is_negative()) {
        return Feasibility::Infeasible;
    }

    let mut x = vec![BigRational::zero(); num_vars];
    for k in (0..num_vars).rev() {
        let mut lower: Option<BigRational> = None;
        let mut upper: Option<BigRational> = None;
        for h in &history[k] {
            if h.a[k].is_zero() {
                continue;
            }
            let rest: BigRational = (k + 1..num_vars).map(|j| &h.a[j] * &x[j]).sum();
            let bound = (&h.b - rest) / &h.a[k];
            if h.a[k].is_positive() {
                upper = Some(upper.map_or(bound.clone(), |u| u.min(bound)));
            } else {
                lower = Some(lower.map_or(bound.clone(), |l| l.max(bound)));
            }
        }
        x[k] = upper.or(lower).unwrap_or_else(BigRational::zero);
    }
    debug_assert!(constraints.iter().all(|c| c.holds(&x)));
    Feasibility::Feasible(x)
}

fn dedup(system: Vec<Halfspace>) -> Vec<Halfspace> {
    let mut seen = HashSet::new();
    system
        .into_iter()
        .map(Halfspace::normalized)
        .filter(|h| !(h.a.iter().all(Zero::is_zero) && !h.b.is_negative()))
        .filter(|h| seen.insert(h.clone()))
        .collect()
}

/// Constraint system "`point` dominates a convex combination of `gens`",
/// i.e. membership of `point` in `conv(gens) + R^d_{>=0}`. Variables are the
/// convex weights.
pub fn np_membership_system(gens: &[Vec<i64>], point: &[i64]) -> (usize, Vec<Constraint>) {
    let n = gens.len();
    let mut cs = Vec::with_capacity(n + point.len() + 1);
    for i in 0..n {
        let mut e = vec![0i64; n];
        e[i] = 1;
        cs.push(Constraint::from_ints(&e, Relation::Ge, 0));
    }
    cs.push(Constraint::from_ints(&vec![1; n], Relation::Eq, 1));
    for (coord, &p) in point.iter().enumerate() {
        let row: Vec<i64> = gens.iter().map(|g| g[coord]).collect();
        cs.push(Constraint::from_ints(&row, Relation::Le, p));
    }
    (n, cs)
}

// ---------------------------------------------------------------------------
// Facet enumeration
// ---------------------------------------------------------------------------

/// `conv(points) + cone(rays)` in `Z^dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polyhedron {
    pub dim: usize,
    pub points: Vec<Vec<i64>>,
    pub rays: Vec<Vec<i64>>,
}

impl Polyhedron {
    /// Newton polyhedron `conv(points) + R^dim_{>=0}`.
    pub fn newton(dim: usize, points: Vec<Vec<i64>>) -> Self {
        let rays = (0..dim).map(|i| unit(dim, i)).collect();
        Polyhedron { dim, points, rays }
    }
}

/// Facet halfspace `normal · a >= offset`, normal primitive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: i64,
}

impl Facet {
    /// Bounded facets of a Newton polyhedron have strictly positive normals.
    pub fn is_compact(&self) -> bool {
        self.normal.iter().all(|&x| x > 0)
    }

    pub fn contains(&self, a: &[i64]) -> bool {
        dot(&self.normal, a) >= self.offset
    }
}

pub fn unit(dim: usize, i: usize) -> Vec<i64> {
    let mut e = vec![0; dim];
    e[i] = 1;
    e
}

pub fn polyhedron_facets(p: &Polyhedron) -> Result<Vec<Facet>> {
    if p.points.is_empty() {
        return Err(Error::DegenerateInput("polyhedron has no points".into()));
    }
    if p.dim > MAX_POLYHEDRAL_DIM {
        return Err(Error::DimensionTooLarge(p.dim));
    }
    let base = &p.points[0];
    let mut dirs: Vec<Vec<i64>> = p.points[1..].iter().map(|q| sub(q, base)).collect();
    dirs.extend(p.rays.iter().cloned());
    if rank_of(&dirs, p.dim) < p.dim {
        return Err(Error::DegenerateInput("polyhedron is not full-dimensional".into()));
    }
    facets_of(p.dim, &p.points, &p.rays)
}

/// Inward primitive facet normals of `cone(rays)` (full-dimensional or not
/// pointed; the whole space has none).
pub fn cone_facets(dim: usize, rays: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let origin = vec![vec![0; dim]];
    Ok(facets_of(dim, &origin, rays)?.into_iter().map(|f| f.normal).collect())
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn facets_of(dim: usize, points: &[Vec<i64>], rays: &[Vec<i64>]) -> Result<Vec<Facet>> {
    if dim == 0 {
        return Ok(Vec::new());
    }
    let np = points.len();
    let elems: Vec<&Vec<i64>> = points.iter().chain(rays.iter()).collect();
    let mut found: HashSet<Facet> = HashSet::new();
    let mut idx: Vec<usize> = (0..dim).collect();
    if elems.len() < dim {
        return Ok(Vec::new());
    }
    loop {
        // First index is the base point; it must be a point.
        if idx[0] < np {
            let base = elems[idx[0]];
            let dirs: Vec<Vec<i64>> =
                idx[1..].iter().map(|&i| if i < np { sub(elems[i], base) } else { elems[i].clone() }).collect();
            if let Some(n) = normal_to(&dirs, dim)? {
                for cand in [n.clone(), n.iter().map(|x| -x).collect::<Vec<_>>()] {
                    let off = dot(&cand, base);
                    let ok = rays.iter().all(|r| dot(&cand, r) >= 0) && points.iter().all(|q| dot(&cand, q) >= off);
                    if ok {
                        found.insert(Facet { normal: cand, offset: off });
                    }
                }
            }
        }
        if !next_combination(&mut idx, elems.len()) {
            break;
        }
    }
    let mut out: Vec<Facet> = found.into_iter().collect();
    out.sort();
    Ok(out)
}

/// Advances a sorted index combination; false when exhausted.
pub(crate) fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Primitive generator of the orthogonal complement of `dim - 1` vectors,
/// or `None` when they are dependent.
fn normal_to(vectors: &[Vec<i64>], dim: usize) -> Result<Option<Vec<i64>>> {
    debug_assert_eq!(vectors.len() + 1, dim);
    let mut n = Vec::with_capacity(dim);
    for skip in 0..dim {
        let minor: Vec<Vec<i128>> =
            vectors.iter().map(|v| (0..dim).filter(|&j| j != skip).map(|j| v[j] as i128).collect()).collect();
        let det = match det_i128(minor.clone()) {
            Some(d) => d,
            None => {
                let rows: Vec<Vec<BigInt>> =
                    minor.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
                let m = IntMatrix { rows: rows.len(), cols: rows.len(), data: rows.into_iter().flatten().collect() };
                let d = determinant(&m);
                d.to_i128().ok_or(Error::Overflow)?
            }
        };
        n.push(if skip % 2 == 0 { det } else { -det });
    }
    if n.iter().all(|&x| x == 0) {
        return Ok(None);
    }
    let g = n.iter().fold(0i128, |g, &x| g.gcd(&x));
    n.into_iter().map(|x| i64::try_from(x / g).map_err(|_| Error::Overflow)).collect::<Result<Vec<_>>>().map(Some)
}

pub(crate) fn det_i128(mut a: Vec<Vec<i128>>) -> Option<i128> {
    let n = a.len();
    if n == 0 {
        return Some(1);
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(i) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return Some(0);
            };
            a.swap(k, i);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j].checked_mul(a[k][k])?.checked_sub(a[i][k].checked_mul(a[k][j])?)?;
                a[i][j] = v / prev;
            }
        }
        prev = a[k][k];
    }
    a[n - 1][n - 1].checked_mul(sign)
}

// ---------------------------------------------------------------------------
// Quotient lattices
// ---------------------------------------------------------------------------

/// Canonical coordinates on `Z^dim / L` for a sublattice `L`, via the Smith
/// decomposition of a generator matrix of `L`.
#[derive(Clone, Debug)]
pub struct LatticeQuotient {
    dim: usize,
    change: Vec<Vec<i64>>,
    moduli: Vec<i64>,
}

impl LatticeQuotient {
    pub fn new(dim: usize, generators: &[Vec<i64>]) -> Result<Self> {
        if generators.is_empty() {
            let change = (0..dim).map(|i| unit(dim, i)).collect();
            return Ok(LatticeQuotient { dim, change, moduli: Vec::new() });
        }
        let m = IntMatrix::from_rows(generators, dim);
        let dec = smith_decomposition(&m);
        let change = dec.right.to_i64_rows()?;
        let moduli = dec.factors.iter().map(|f| f.to_i64().ok_or(Error::Overflow)).collect::<Result<_>>()?;
        Ok(LatticeQuotient { dim, change, moduli })
    }

    /// Class key of a vector; two vectors agree iff their difference lies in `L`.
    pub fn key(&self, v: &[i64]) -> Vec<i64> {
        let mut y = vec![0i64; self.dim];
        for (i, &vi) in v.iter().enumerate() {
            if vi == 0 {
                continue;
            }
            for j in 0..self.dim {
                y[j] += vi * self.change[i][j];
            }
        }
        for (yj, &m) in y.iter_mut().zip(&self.moduli) {
            *yj = yj.rem_euclid(m);
        }
        y
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.key(v).iter().all(|&x| x == 0)
    }

    /// True when the sublattice is all of `Z^dim`.
    pub fn is_trivial(&self) -> bool {
        self.moduli.len() == self.dim && self.moduli.iter().all(|&m| m == 1)
    }
}
